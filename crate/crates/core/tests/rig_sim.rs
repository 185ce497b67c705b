mod common;

use std::f64::consts::PI;

use common::{sdof, unclipped};
use ema_core::demo;
use ema_core::frf::{contiguous_ranges, summed_autospectrum};
use ema_core::modal::{mass_shift_estimate, pick_peaks};
use ema_core::pipeline::{analyze_run, AnalysisSettings};
use ema_core::rig::{
    eigen_modes, hit_schedule, inject_noise, modal_sweep_response, simulate_impact, simulate_impacts, HammerSpec,
    HitEvent, NoiseSpec, SensorSpec, SweepSpec, Tip, Tone,
};
use ema_core::signal::{dft_forward, Band};

const FS: f64 = 4096.0;

fn light_hammer() -> HammerSpec {
    HammerSpec::new(Tip::MediumHard).with_peak_force(10.0)
}

#[test]
fn free_decay_matches_log_decrement() {
    let rig = sdof(10.0, 0.02, 1.0);
    let run =
        simulate_impacts(&rig, &light_hammer(), "1:z".parse().unwrap(), &unclipped(), FS, 4.0, &[HitEvent::clean(0.1)])
            .unwrap();
    let a = run.responses[0].series.samples();
    let start = ((0.1 + 0.01) * FS) as usize;
    let peaks: Vec<(usize, f64)> = (start + 1..a.len() - 1)
        .filter(|&i| a[i] > a[i - 1] && a[i] >= a[i + 1] && a[i] > 0.0)
        .map(|i| (i, a[i]))
        .collect();
    // Ten cycles apart.
    let delta = (peaks[0].1 / peaks[10].1).ln() / 10.0;
    let zeta = delta / (4.0 * PI * PI + delta * delta).sqrt();
    assert!((zeta - 0.02).abs() < 0.1 * 0.02, "{zeta}");
    let period = (peaks[10].0 - peaks[0].0) as f64 / FS / 10.0;
    let f_d = 10.0 * (1.0f64 - 0.02 * 0.02).sqrt();
    assert!((1.0 / period - f_d).abs() < 0.25, "{}", 1.0 / period);
}

#[test]
fn zero_force_gives_zero_response() {
    let rig = demo::rig_12dof().unwrap();
    let hammer = HammerSpec::new(Tip::Medium).with_peak_force(0.0);
    let run = simulate_impact(&rig, &hammer, "13:z".parse().unwrap(), &SensorSpec::default(), FS, 2.0, 3).unwrap();
    assert!(run.responses.iter().all(|c| c.series.samples().iter().all(|v| *v == 0.0)));
}

#[test]
fn clipping_flagged_at_twice_range() {
    let rig = demo::rig_12dof().unwrap();
    let drive = "13:z".parse().unwrap();
    let hits = [HitEvent::clean(0.2)];
    let unit = HammerSpec::new(Tip::MediumHard).with_peak_force(1.0);
    let probe = simulate_impacts(&rig, &unit, drive, &unclipped(), FS, 2.0, &hits).unwrap();
    let (idx, peak_per_newton) = probe
        .responses
        .iter()
        .enumerate()
        .map(|(i, c)| (i, c.series.peak_abs()))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    let sensors = SensorSpec::default();
    // Linearity: this force drives the most responsive channel to twice the range.
    let hammer = unit.with_peak_force(2.0 * sensors.range_pk / peak_per_newton);
    let run = simulate_impacts(&rig, &hammer, drive, &sensors, FS, 2.0, &hits).unwrap();
    let point = run.responses[idx].point;
    assert!(run.clipped(point));
    assert!((run.responses[idx].series.peak_abs() - sensors.range_pk).abs() < 1e-9);
}

#[test]
fn slow_sweep_below_resonance_is_quasi_static() {
    let rig = sdof(10.0, 0.05, 1.0);
    let k = (2.0 * PI * 10.0f64).powi(2);
    let sweep = SweepSpec { f_start_hz: 0.1, f_end_hz: 1.0, rate_hz_per_s: 0.05, amplitude_n: 1.0 };
    let force = sweep.force_samples(1024.0).unwrap();
    let resp = modal_sweep_response(&rig, 0, &force, 1024.0).unwrap();
    let peak = resp.displacement[0].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!((peak - 1.0 / k).abs() < 0.05 / k, "{peak} vs {}", 1.0 / k);
}

#[test]
fn slow_sweep_through_resonance_reaches_steady_state_peak() {
    let (zeta, fs) = (0.05, 1024.0);
    let rig = sdof(10.0, zeta, 1.0);
    let k = (2.0 * PI * 10.0f64).powi(2);
    let sweep = SweepSpec { f_start_hz: 5.0, f_end_hz: 15.0, rate_hz_per_s: 0.1, amplitude_n: 1.0 };
    let force = sweep.force_samples(fs).unwrap();
    let resp = modal_sweep_response(&rig, 0, &force, fs).unwrap();
    let peak = resp.displacement[0].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let oracle = 1.0 / (2.0 * zeta * k);
    assert!((peak - oracle).abs() < 0.2 * oracle, "{peak} vs {oracle}");
}

#[test]
fn zero_amplitude_sweep_is_silent() {
    let rig = demo::rig_12dof().unwrap();
    let sweep = SweepSpec { f_start_hz: 5.0, f_end_hz: 50.0, rate_hz_per_s: 20.0, amplitude_n: 0.0 };
    let run =
        ema_core::rig::simulate_sweep(&rig, "13:z".parse().unwrap(), &sweep, &SensorSpec::default(), 1024.0).unwrap();
    assert!(run.responses.iter().all(|c| c.series.samples().iter().all(|v| *v == 0.0)));
}

fn quiet_run() -> ema_core::rig::RawRun {
    simulate_impacts(
        &demo::rig_12dof().unwrap(),
        &light_hammer(),
        "13:z".parse().unwrap(),
        &SensorSpec::default(),
        1024.0,
        8.0,
        &[],
    )
    .unwrap()
}

#[test]
fn empty_noise_is_identity() {
    let run = simulate_impact(
        &demo::rig_12dof().unwrap(),
        &light_hammer(),
        "13:z".parse().unwrap(),
        &SensorSpec::default(),
        FS,
        2.0,
        1,
    )
    .unwrap();
    assert_eq!(inject_noise(&run, &NoiseSpec::default()).unwrap(), run);
}

#[test]
fn tone_is_spectral_maximum() {
    let noise =
        NoiseSpec { tones: vec![Tone { frequency_hz: 120.0, amplitude_mps2: 1.0 }], broadband_rms_mps2: 0.0, seed: 5 };
    let run = inject_noise(&quiet_run(), &noise).unwrap();
    for ch in &run.responses {
        let mag = dft_forward(&ch.series).unwrap().magnitude();
        let imax = (0..mag.len()).max_by(|a, b| mag.values[*a].total_cmp(&mag.values[*b])).unwrap();
        assert_eq!(mag.frequency(imax), 120.0);
    }
    assert!(run.force.as_ref().unwrap().samples().iter().all(|v| *v == 0.0));
}

#[test]
fn three_tones_give_three_ambient_peaks() {
    let tones = [20.0, 30.0, 40.0].map(|f| Tone { frequency_hz: f, amplitude_mps2: 0.2 }).to_vec();
    let noise = NoiseSpec { tones, broadband_rms_mps2: 0.002, seed: 9 };
    let run = inject_noise(&quiet_run(), &noise).unwrap();
    let series: Vec<_> = run.responses.iter().map(|c| c.series.clone()).collect();
    let band = Band::new(0.0, 200.0).unwrap();
    let ambient = summed_autospectrum(&series, &contiguous_ranges(run.n_samples(), 512), band).unwrap();
    let peaks = pick_peaks(&ambient, band, 10.0).unwrap();
    let freqs: Vec<f64> = peaks.iter().map(|p| p.frequency_hz).collect();
    assert_eq!(freqs.len(), 3, "{freqs:?}");
    for (got, want) in freqs.iter().zip([20.0, 30.0, 40.0]) {
        assert!((got - want).abs() <= 2.0);
    }
}

#[test]
fn doubling_force_doubles_response() {
    let rig = demo::rig_12dof().unwrap();
    let drive = "1:z".parse().unwrap();
    let hits = hit_schedule(2, 4.0, 3).unwrap();
    let h = HammerSpec::new(Tip::Hard);
    let a = simulate_impacts(&rig, &h, drive, &unclipped(), FS, 4.0, &hits).unwrap();
    let b =
        simulate_impacts(&rig, &h.with_peak_force(2.0 * h.peak_force_n), drive, &unclipped(), FS, 4.0, &hits).unwrap();
    for (ca, cb) in a.responses.iter().zip(&b.responses) {
        let scale = ca.series.peak_abs();
        for (x, y) in ca.series.samples().iter().zip(cb.series.samples()) {
            assert!((2.0 * x - y).abs() <= 1e-9 * scale);
        }
    }
}

#[test]
fn noise_free_frfs_are_reciprocal() {
    let rig = demo::rig_12dof().unwrap();
    let hits = hit_schedule(3, 15.0, 4).unwrap();
    let h = HammerSpec::new(Tip::MediumHard);
    let run_at = |p: &str| simulate_impacts(&rig, &h, p.parse().unwrap(), &unclipped(), FS, 15.0, &hits).unwrap();
    let settings = AnalysisSettings::default();
    let a = analyze_run(&run_at("13:z"), &settings).unwrap();
    let b = analyze_run(&run_at("1:z"), &settings).unwrap();
    let h_ab = a.frfs.iter().find(|f| f.response == "1:z".parse().unwrap()).unwrap();
    let h_ba = b.frfs.iter().find(|f| f.response == "13:z".parse().unwrap()).unwrap();
    for (x, y) in h_ab.h.bins.iter().zip(&h_ba.h.bins).skip(1) {
        assert!((x - y).norm() <= 0.01 * x.norm(), "{x} vs {y}");
    }
}

#[test]
fn identical_seeds_give_identical_runs() {
    let rig = demo::rig_12dof().unwrap();
    let make = || {
        let hits = hit_schedule(3, 6.0, 42).unwrap();
        let run = simulate_impacts(
            &rig,
            &HammerSpec::new(Tip::Medium),
            "13:z".parse().unwrap(),
            &SensorSpec::default(),
            2048.0,
            6.0,
            &hits,
        )
        .unwrap();
        inject_noise(&run, &demo::noise_pumps().unwrap()).unwrap()
    };
    assert_eq!(make(), make());
}

#[test]
fn co_located_points_are_identical() {
    let run = simulate_impact(
        &demo::rig_12dof().unwrap(),
        &HammerSpec::new(Tip::Medium),
        "1:z".parse().unwrap(),
        &SensorSpec::default(),
        FS,
        2.0,
        8,
    )
    .unwrap();
    for (a, b) in [("13:z", "46:z"), ("13:z", "48:z"), ("29:z", "47:z"), ("29:z", "49:z")] {
        let sa = run.response(a.parse().unwrap()).unwrap().samples();
        let sb = run.response(b.parse().unwrap()).unwrap().samples();
        assert_eq!(sa, sb, "{a} vs {b}");
    }
}

#[test]
fn eigenfrequencies_survive_uniform_scaling() {
    let rig = demo::rig_12dof().unwrap();
    let base = eigen_modes(&rig).unwrap();
    let scaled = eigen_modes(&rig.scaled(4.0).unwrap()).unwrap();
    for (a, b) in base.iter().zip(&scaled) {
        assert!((a.frequency_hz - b.frequency_hz).abs() <= 1e-9 * a.frequency_hz);
    }
}

#[test]
fn added_mass_lowers_modes_it_dominates() {
    let rig = demo::rig_12dof().unwrap();
    let base = eigen_modes(&rig).unwrap();
    let mut checked = 0;
    for dof in 0..rig.n_dof() {
        let dm = 0.1 * rig.masses()[dof];
        let shifted = eigen_modes(&rig.with_added_mass(dof, dm).unwrap()).unwrap();
        for (mode, new) in base.iter().zip(&shifted) {
            // Kinetic-energy share of each DOF in this mode.
            let share: Vec<f64> = mode.shape.iter().zip(rig.masses()).map(|(p, m)| m * p * p).collect();
            let dominant = (0..share.len()).max_by(|a, b| share[*a].total_cmp(&share[*b])).unwrap();
            if dominant != dof {
                continue;
            }
            let predicted = mass_shift_estimate(mode.frequency_hz, rig.masses()[dof], dm).unwrap();
            assert_eq!(
                (new.frequency_hz - mode.frequency_hz).signum(),
                (predicted - mode.frequency_hz).signum(),
                "dof {dof}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 6);
}
