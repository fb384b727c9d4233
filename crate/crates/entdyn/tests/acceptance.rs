//! End-to-end acceptance checks for the released behavior, one criterion
//! per test. Every test prints exactly one `criterion NN: PASS/FAIL` line
//! (visible under `--nocapture`, and always shown for failures) with the
//! measured figures, then asserts. Tolerances are pinned here, next to the
//! assertions they govern.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::time::Instant;

use entdyn::analysis::{
    detect_events, extrema_alignment, stationary_concurrence, stationary_notes,
    zero_condition_check,
};
use entdyn::laplace::{partial_fractions, talbot_invert_complex};
use entdyn::measures::{
    concurrence_x, entropy, entropy_closed_form, entropy_dense, BellFamily,
};
use entdyn::model::{construct_initial, radiant_coords, to_dense, InitialStateSpec};
use entdyn::oracle::{gen_states, wootters_bruteforce, RandomStateGen, StateFamily};
use entdyn::solutions::{
    ewl_psi_solution_uncorrected, propagate, reconstruct, solution_for,
};
use entdyn::ReservoirParams;

/// Prints the single status line for a criterion, then enforces it.
fn verdict(number: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("criterion {number}: {status} — {detail}");
    assert!(pass, "criterion {number} failed — {detail}");
}

fn default_params() -> ReservoirParams {
    ReservoirParams::from_coupling_ratio(5.0).unwrap()
}

fn grid(tmax: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|i| tmax * i as f64 / steps as f64).collect()
}

const R_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const ALPHA2_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const THETA_GRID: [f64; 4] = [0.0, PI / 2.0, PI, 3.0 * PI / 2.0];

/// Both mixed-superposition families over the full parameter grid.
fn family_grid() -> Vec<InitialStateSpec> {
    let mut specs = Vec::new();
    for &r in &R_GRID {
        for &alpha2 in &ALPHA2_GRID {
            for &theta in &THETA_GRID {
                specs.push(InitialStateSpec::EwlPhi { r, alpha2, theta });
                specs.push(InitialStateSpec::EwlPsi { r, alpha2, theta });
            }
        }
    }
    specs
}

/// Criterion 1: the encoded solutions reproduce every grid member exactly
/// at t = 0 and preserve trace along the evolution; the documented
/// transcription corrections are load-bearing (the literal variant loses
/// exactly the antisymmetric share of the mixture).
#[test]
fn criterion_01_construction_audit() {
    let clock = Instant::now();
    let params = default_params();
    let times = grid(20.0, 199);
    let mut worst_recon: f64 = 0.0;
    let mut worst_trace: f64 = 0.0;
    for spec in family_grid() {
        let init = construct_initial(&spec).unwrap();
        let ev = solution_for(&spec, &params).unwrap().invert().unwrap();
        let s0 = ev.state(0.0).unwrap();
        for (x, y) in [
            (s0.a, init.a),
            (s0.b, init.b),
            (s0.c, init.c),
            (s0.d, init.d),
            ((s0.w - init.w).norm(), 0.0),
            ((s0.z - init.z).norm(), 0.0),
        ] {
            worst_recon = worst_recon.max((x - y).abs());
        }
        for &t in &times {
            worst_trace = worst_trace.max((ev.state(t).unwrap().trace() - 1.0).abs());
        }
    }

    // The literal (uncorrected) two-excitation mixed-family transcription
    // must lose exactly (1-r)/4 of the trace at t = 0 and fail state
    // reconstruction for every r < 1.
    let mut worst_deficit_err: f64 = 0.0;
    let mut uncorrected_fails = true;
    for &r in &R_GRID {
        let sol = ewl_psi_solution_uncorrected(r, 0.3, 1.0, &params).unwrap();
        let at_zero: HashMap<&str, f64> = sol
            .labels()
            .into_iter()
            .map(|(name, transform)| {
                let v = partial_fractions(&transform)
                    .unwrap()
                    .eval_complex(0.0)
                    .unwrap();
                (name, v.re)
            })
            .collect();
        let trace0 = at_zero["aa"]
            + at_zero["bb"]
            + at_zero["cc"]
            + at_zero["dd"]
            + at_zero["ee"]
            + at_zero["ff"]
            + at_zero["mm"];
        let deficit = 1.0 - trace0;
        worst_deficit_err = worst_deficit_err.max((deficit - (1.0 - r) / 4.0).abs());
        if r < 1.0 {
            uncorrected_fails &= reconstruct(&sol, 0.0).is_err();
        }
    }

    let elapsed = clock.elapsed().as_secs_f64();
    let pass = worst_recon < 1e-8
        && worst_trace < 1e-8
        && worst_deficit_err < 1e-8
        && uncorrected_fails
        && elapsed < 10.0;
    verdict(
        "01",
        pass,
        &format!(
            "5x5x4 grid, both families: worst t=0 reconstruction residual {worst_recon:.2e} \
             (tol 1e-8), worst trace deviation {worst_trace:.2e} over 200 times (tol 1e-8); \
             uncorrected variant: trace deficit matches (1-r)/4 within {worst_deficit_err:.2e} \
             and reconstruction fails for r < 1: {uncorrected_fails}; {elapsed:.1}s (budget 10s)"
        ),
    );
}

/// Criterion 2: the pole/residue inversion and the independent contour
/// inversion agree on every encoded transform across three reservoir
/// regimes.
#[test]
fn criterion_02_dual_inversion() {
    let clock = Instant::now();
    let specs = [
        InitialStateSpec::EwlPhi {
            r: 0.7,
            alpha2: 0.3,
            theta: PI / 3.0,
        },
        InitialStateSpec::EwlPsi {
            r: 0.6,
            alpha2: 0.35,
            theta: 0.4 * PI,
        },
    ];
    let times: Vec<f64> = (0..50)
        .map(|i| 0.01 * (2000.0_f64).powf(i as f64 / 49.0))
        .collect();
    let mut worst: f64 = 0.0;
    for ratio in [0.2, 1.0, 5.0] {
        let params = ReservoirParams::from_coupling_ratio(ratio).unwrap();
        for spec in &specs {
            for (_, transform) in solution_for(spec, &params).unwrap().labels() {
                let sum = partial_fractions(&transform).unwrap();
                for &t in &times {
                    let pf = sum.eval_complex(t).unwrap();
                    let tb = talbot_invert_complex(&transform, t).unwrap();
                    // Relative agreement, floored at 1% of the unit scale of
                    // these matrix elements so zero crossings stay testable.
                    let scale = pf.norm().max(tb.norm()).max(1e-2);
                    worst = worst.max((pf - tb).norm() / scale);
                }
            }
        }
    }
    let elapsed = clock.elapsed().as_secs_f64();
    let pass = worst < 1e-6 && elapsed < 10.0;
    verdict(
        "02",
        pass,
        &format!(
            "pole/residue vs contour inversion on all transforms, 3 regimes, 50 times: \
             worst relative deviation {worst:.2e} (tol 1e-6); {elapsed:.1}s (budget 10s)"
        ),
    );
}

/// Criterion 3: the antisymmetric collective population is a constant of
/// motion on the whole grid, and equals its closed form for the
/// one-excitation mixed family.
#[test]
fn criterion_03_subradiant_invariance() {
    let params = default_params();
    let times = grid(20.0, 199);
    let mut worst_drift: f64 = 0.0;
    let mut worst_formula: f64 = 0.0;
    for spec in family_grid() {
        let ev = solution_for(&spec, &params).unwrap().invert().unwrap();
        let mm0 = ev.collective(0.0).unwrap().rho_mm;
        for &t in &times {
            worst_drift = worst_drift.max((ev.collective(t).unwrap().rho_mm - mm0).abs());
        }
        if let InitialStateSpec::EwlPhi { r, alpha2, theta } = spec {
            let ab = alpha2.sqrt() * (1.0 - alpha2).sqrt();
            let expected = r * (1.0 - 2.0 * ab * theta.cos()) / 2.0 + (1.0 - r) / 4.0;
            worst_formula = worst_formula.max((mm0 - expected).abs());
        }
    }
    let pass = worst_drift < 1e-9 && worst_formula < 1e-12;
    verdict(
        "03",
        pass,
        &format!(
            "antisymmetric population drift {worst_drift:.2e} over the grid (tol 1e-9); \
             one-excitation closed-form residual {worst_formula:.2e} (tol 1e-12)"
        ),
    );
}

/// Criterion 4: stationary concurrence values — (1+3r)/4 for the
/// one-excitation mixed family at theta = pi, zero for the balanced
/// two-excitation superposition, and the conserved (1-r)/4 (with its
/// caveat note) for the two-excitation mixed family.
#[test]
fn criterion_04_stationary_values() {
    let params = default_params();
    let mut worst: f64 = 0.0;
    for &r in &[0.4, 0.7, 1.0] {
        let c = stationary_concurrence(
            &InitialStateSpec::EwlPhi {
                r,
                alpha2: 0.5,
                theta: PI,
            },
            &params,
        )
        .unwrap();
        worst = worst.max((c - (1.0 + 3.0 * r) / 4.0).abs());
    }
    let balanced = stationary_concurrence(
        &InitialStateSpec::BellPsi {
            alpha2: 0.5,
            theta: 0.0,
        },
        &params,
    )
    .unwrap();
    let psi_spec = InitialStateSpec::EwlPsi {
        r: 0.2,
        alpha2: 0.5,
        theta: 0.0,
    };
    let psi_value = stationary_concurrence(&psi_spec, &params).unwrap();
    let notes = stationary_notes(&psi_spec);
    let noted = notes.iter().any(|n| n.contains("(1-r)/4") && n.contains("r/4"));
    let pass = worst < 1e-6 && balanced.abs() < 1e-6 && (psi_value - 0.2).abs() < 1e-6 && noted;
    verdict(
        "04",
        pass,
        &format!(
            "(1+3r)/4 residual {worst:.2e} for r in {{0.4, 0.7, 1.0}} (tol 1e-6); balanced \
             two-excitation stationary value {balanced:.2e} (tol 1e-6); two-excitation mixed \
             family r=0.2 gives {psi_value:.9} vs (1-r)/4 = 0.2 with caveat note emitted: {noted}"
        ),
    );
}

/// Criterion 5: the full-purity antisymmetric state is decoupled — unit
/// concurrence and zero entropy at every sampled time.
#[test]
fn criterion_05_decoupled_singlet() {
    let params = default_params();
    let traj = propagate(
        &InitialStateSpec::EwlPhi {
            r: 1.0,
            alpha2: 0.5,
            theta: PI,
        },
        &params,
        &grid(20.0, 199),
    )
    .unwrap();
    let mut worst_c: f64 = 0.0;
    let mut worst_s: f64 = 0.0;
    for s in &traj.states {
        worst_c = worst_c.max((concurrence_x(s) - 1.0).abs());
        worst_s = worst_s.max(entropy(s).unwrap().abs());
    }
    let pass = worst_c < 1e-9 && worst_s < 1e-9;
    verdict(
        "05",
        pass,
        &format!(
            "singlet trajectory: |C - 1| <= {worst_c:.2e}, |S| <= {worst_s:.2e} \
             at 200 times (tol 1e-9)"
        ),
    );
}

/// Criterion 6: death/revival phenomenology in the strong-coupling regime
/// (pseudomode five times faster than its decay): the heavily unbalanced
/// two-excitation superposition dies and revives, the balanced one never
/// dies, and the factorized mixture is born late and dies again.
#[test]
fn criterion_06_esd_esb_phenomenology() {
    let clock = Instant::now();
    let params = default_params();
    let times = grid(100.0, 10_000);
    let zero_tol = 1e-6;

    let unbalanced = detect_events(
        &propagate(
            &InitialStateSpec::BellPsi {
                alpha2: 0.05,
                theta: 0.0,
            },
            &params,
            &times,
        )
        .unwrap(),
        zero_tol,
    )
    .unwrap();
    let t_end = *times.last().unwrap();
    let finite_darks = unbalanced
        .dark_periods
        .iter()
        .filter(|p| p[1] < t_end && p[1] > p[0])
        .count();

    let balanced = detect_events(
        &propagate(
            &InitialStateSpec::BellPsi {
                alpha2: 0.5,
                theta: 0.0,
            },
            &params,
            &times,
        )
        .unwrap(),
        zero_tol,
    )
    .unwrap();

    let factorized = detect_events(
        &propagate(
            &InitialStateSpec::FactorizedMixed { alpha2: 0.75 },
            &params,
            &times,
        )
        .unwrap(),
        zero_tol,
    )
    .unwrap();
    let birth = factorized.birth_time.unwrap_or(-1.0);

    let elapsed = clock.elapsed().as_secs_f64();
    let pass = finite_darks >= 1
        && unbalanced.revivals >= 1
        && balanced.dark_periods.is_empty()
        && birth > 0.0
        && factorized.dark_periods.len() >= 2
        && elapsed < 5.0;
    verdict(
        "06",
        pass,
        &format!(
            "alpha2=0.05: {} finite dark period(s), {} revival(s); alpha2=0.5: {} dark \
             period(s); factorized mixture: birth at {birth:.3}, {} dark period(s) total; \
             {elapsed:.1}s (budget 5s)",
            finite_darks,
            unbalanced.revivals,
            balanced.dark_periods.len(),
            factorized.dark_periods.len()
        ),
    );
}

/// Criterion 7: one-excitation states never lose entanglement over a
/// finite interval — every detected dark period on 100 random members has
/// zero measure.
#[test]
fn criterion_07_single_excitation_theorem() {
    let params = default_params();
    let times = grid(60.0, 3_000);
    let gen = RandomStateGen {
        seed: 0x1_ecc,
        family: StateFamily::SingleExcitation,
    };
    let mut max_measure: f64 = 0.0;
    let mut total_darks = 0usize;
    for dense in gen_states(&gen, 100) {
        let spec = InitialStateSpec::SingleExcitation {
            a: dense.get(0, 0).re,
            b: dense.get(1, 1).re,
            c: dense.get(2, 2).re,
            j: dense.get(1, 0),
            k: dense.get(2, 0),
            z: dense.get(1, 2),
        };
        let traj = propagate(&spec, &params, &times).unwrap();
        let events = detect_events(&traj, 1e-6).unwrap();
        for p in &events.dark_periods {
            total_darks += 1;
            max_measure = max_measure.max(p[1] - p[0]);
        }
    }
    let pass = max_measure == 0.0;
    verdict(
        "07",
        pass,
        &format!(
            "100 random one-excitation states: {total_darks} dark period(s) detected, \
             largest measure {max_measure:.2e} (must be exactly 0: isolated zeros only)"
        ),
    );
}

/// Criterion 8: the fast measures agree with the independent oracles —
/// closed-form X concurrence vs the brute-force spin-flip spectrum, and
/// closed-form entropy vs dense eigen-decomposition along superposition
/// trajectories.
#[test]
fn criterion_08_oracle_equivalences() {
    let gen = RandomStateGen {
        seed: 0xacce_97,
        family: StateFamily::GeneralX,
    };
    let mut worst_c: f64 = 0.0;
    for dense in gen_states(&gen, 10_000) {
        let x = entdyn::model::extract_x(&dense).unwrap();
        worst_c = worst_c.max((concurrence_x(&x) - wootters_bruteforce(&dense).unwrap()).abs());
    }

    let params = default_params();
    let times = grid(20.0, 199);
    let mut worst_s: f64 = 0.0;
    for (spec, family) in [
        (
            InitialStateSpec::BellPsi {
                alpha2: 0.05,
                theta: 0.0,
            },
            BellFamily::Psi,
        ),
        (
            InitialStateSpec::BellPsi {
                alpha2: 0.5,
                theta: PI / 3.0,
            },
            BellFamily::Psi,
        ),
        (
            InitialStateSpec::BellPhi {
                alpha2: 0.2,
                theta: 0.0,
            },
            BellFamily::Phi,
        ),
        (
            InitialStateSpec::BellPhi {
                alpha2: 0.5,
                theta: PI / 2.0,
            },
            BellFamily::Phi,
        ),
    ] {
        for s in &propagate(&spec, &params, &times).unwrap().states {
            let closed = entropy_closed_form(s, family).unwrap();
            let eigen = entropy_dense(&to_dense(s)).unwrap();
            worst_s = worst_s.max((closed - eigen).abs());
        }
    }

    let pass = worst_c < 1e-8 && worst_s < 1e-10;
    verdict(
        "08",
        pass,
        &format!(
            "concurrence vs brute-force spin-flip on 10^4 X states: worst {worst_c:.2e} \
             (tol 1e-8); closed-form vs eigen entropy on 4 superposition trajectories: \
             worst {worst_s:.2e} (tol 1e-10)"
        ),
    );
}

/// Criterion 9: entropy extrema track the enhanced-population extrema for
/// the unbalanced two-excitation superposition (window 0.1 scaled time),
/// and at every concurrence zero of the unbalanced one-excitation
/// superposition the three collective quantities coincide.
#[test]
fn criterion_09_entropy_population_correlation() {
    let params = default_params();

    // (a) Extrema alignment between S(t) and the enhanced population.
    let traj = propagate(
        &InitialStateSpec::BellPsi {
            alpha2: 0.05,
            theta: 0.0,
        },
        &params,
        &grid(20.0, 2_000),
    )
    .unwrap();
    let s_series: Vec<f64> = traj.states.iter().map(|s| entropy(s).unwrap()).collect();
    let pp_series: Vec<f64> = traj.states.iter().map(|s| radiant_coords(s).rho_pp).collect();
    let report = extrema_alignment(&traj.times, &s_series, &pp_series, 0.1).unwrap();
    // Distance from each entropy extremum to the nearest population
    // extremum, for the failure diagnostics.
    let worst_nearest = report
        .extrema_a
        .iter()
        .map(|ta| {
            report
                .extrema_b
                .iter()
                .map(|tb| (ta - tb).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    let align_ok = !report.extrema_a.is_empty() && report.unmatched_a == 0;

    // (b) Equal collective values at every refined concurrence zero.
    let zero_traj = propagate(
        &InitialStateSpec::BellPhi {
            alpha2: 0.2,
            theta: 0.0,
        },
        &params,
        &grid(100.0, 10_000),
    )
    .unwrap();
    let zeros = zero_condition_check(&zero_traj).unwrap();
    let worst_gap = zeros
        .zeros
        .iter()
        .map(|z| z.pp_mm_gap.max(z.pp_pm_gap))
        .fold(0.0, f64::max);
    let zeros_ok = !zeros.zeros.is_empty() && worst_gap < 1e-4;

    let pass = align_ok && zeros_ok;
    verdict(
        "09",
        pass,
        &format!(
            "entropy/population extrema: {} of {} entropy extrema matched within 0.1, worst \
             nearest-extremum distance {worst_nearest:.3} (every one must match); \
             equal-value condition at {} concurrence zeros: worst gap {worst_gap:.2e} (tol 1e-4)",
            report.matched.len(),
            report.extrema_a.len(),
            zeros.zeros.len()
        ),
    );
}

/// Criterion 10: at t = 0 the balanced-weight mixed families carry
/// concurrence max{0, (3r-1)/2} — exactly zero up to and including
/// r = 1/3.
#[test]
fn criterion_10_separability_boundary() {
    let mut worst: f64 = 0.0;
    let mut exact_zero = true;
    let mut rs: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    rs.push(1.0 / 3.0);
    for &r in &rs {
        for &theta in &[0.0, PI / 2.0, PI] {
            for spec in [
                InitialStateSpec::EwlPhi {
                    r,
                    alpha2: 0.5,
                    theta,
                },
                InitialStateSpec::EwlPsi {
                    r,
                    alpha2: 0.5,
                    theta,
                },
            ] {
                let c = concurrence_x(&construct_initial(&spec).unwrap());
                let expected = (0.0_f64).max((3.0 * r - 1.0) / 2.0);
                worst = worst.max((c - expected).abs());
                if r <= 1.0 / 3.0 {
                    exact_zero &= c == 0.0;
                }
            }
        }
    }
    let pass = worst < 1e-12 && exact_zero;
    verdict(
        "10",
        pass,
        &format!(
            "t=0 concurrence vs max{{0, (3r-1)/2}} on 22 r values x 3 phases x 2 families: \
             worst residual {worst:.2e} (tol 1e-12); exactly zero for r <= 1/3: {exact_zero}"
        ),
    );
}
