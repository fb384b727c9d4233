//! Trajectory-level phenomenology: detection of entanglement dark periods
//! (sudden death), delayed birth and revivals, correlation of entropy
//! extrema with the enhanced-population signal, the separability-point
//! condition for one-excitation states, and parameter sweeps producing
//! concurrence maps over a family axis and scaled time.
//!
//! Grid sampling alone cannot certify that concurrence vanishes on an
//! interval, so every detected boundary is refined by bisection on the
//! *continuous* closed-form evaluator rebuilt from the trajectory's
//! specification; the sampled grid only brackets the events.

use crate::error::{Error, Result};
use crate::measures::concurrence_x;
use crate::model::{radiant_coords, InitialStateSpec, ReservoirParams};
use crate::solutions::{solution_for, stationary_state, SolutionEvaluator, Trajectory};
use crate::tol;

/// Entanglement event structure of one trajectory.
///
/// A *dark period* is a maximal closed interval on which the concurrence
/// stays at zero (below the detection tolerance). Interior intervals
/// narrower than [`tol::ISOLATED_ZERO_WIDTH`] are collapsed to degenerate
/// `[t, t]` touches: across the studied parameter regimes genuine dark
/// periods last several scaled-time units while transversal touches refine
/// to widths below ~0.04, so the two populations are cleanly separable.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementEvents {
    /// Disjoint, increasing closed intervals `[t_on, t_off]` of vanishing
    /// concurrence; degenerate intervals mark isolated touches.
    pub dark_periods: Vec<[f64; 2]>,
    /// First time the concurrence becomes positive when it starts at zero
    /// (`None` when the trajectory starts entangled, or never wakes up
    /// inside the window).
    pub birth_time: Option<f64>,
    /// Number of dark-period exits inside the window: every dark period
    /// that ends before the final sample counts, including the initial one
    /// when the state is born late (its exit is both the birth and the
    /// first exit).
    pub revivals: usize,
    /// Concurrence of the `t -> infinity` state.
    pub stationary_concurrence: f64,
}

/// One refined separability point of a one-excitation trajectory, with the
/// collective-coordinate equalities that hold there and the resulting
/// product form of the state.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroRecord {
    /// Refined time of the concurrence zero.
    pub time: f64,
    /// `|rho_pp - rho_mm|` at the zero (analytically zero there).
    pub pp_mm_gap: f64,
    /// `|rho_pp - |rho_pm||` at the zero (analytically zero there).
    pub pp_pm_gap: f64,
    /// Which single-qubit excitation survives: the state is
    /// `(1-k)|00><00| + k|01><01|` when `b` vanishes, or the `|10>`
    /// variant when `c` does.
    pub surviving_ket: SurvivingKet,
    /// Mixing weight `k = 2 rho_mm` of the surviving excited component.
    pub weight: f64,
}

/// Classification of the product state at a separability point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurvivingKet {
    /// Population `b` (of `|10>`) vanished; the excitation sits on `|01>`.
    Ket01,
    /// Population `c` (of `|01>`) vanished; the excitation sits on `|10>`.
    Ket10,
    /// Neither population fell below the classification threshold.
    Unresolved,
}

/// Separability-point report for a one-excitation trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroConditionReport {
    /// One record per refined concurrence zero, in time order.
    pub zeros: Vec<ZeroRecord>,
}

/// Matched local extrema of two signals sampled on a common time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremaReport {
    /// Interior extremum times of the first series, parabolic-refined.
    pub extrema_a: Vec<f64>,
    /// Interior extremum times of the second series.
    pub extrema_b: Vec<f64>,
    /// One-to-one pairs `(t_a, t_b)` with `|t_a - t_b| <= window`.
    pub matched: Vec<(f64, f64)>,
    /// Extrema of the first series left unmatched.
    pub unmatched_a: usize,
    /// Extrema of the second series left unmatched.
    pub unmatched_b: usize,
    /// The matching window used, in scaled time.
    pub window: f64,
}

/// Concurrence over a family-parameter axis and scaled time.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    /// Which family parameter the rows vary.
    pub axis_name: &'static str,
    /// Axis values, one per row.
    pub axis_values: Vec<f64>,
    /// The common time grid.
    pub times: Vec<f64>,
    /// `concurrence[row][col]` for `axis_values[row]`, `times[col]`.
    pub concurrence: Vec<Vec<f64>>,
    /// Reservoir parameters shared by all rows.
    pub params: ReservoirParams,
    /// The family template the axis value was substituted into.
    pub template: InitialStateSpec,
}

/// The sweepable family parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Mixing weight `r`.
    R,
    /// Excitation weight `alpha^2`.
    Alpha2,
    /// Coherence phase `theta`.
    Theta,
}

impl SweepAxis {
    /// Human-readable axis label.
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::R => "r",
            SweepAxis::Alpha2 => "alpha2",
            SweepAxis::Theta => "theta",
        }
    }
}

/// Rebuilds the continuous evaluator a trajectory was computed from.
fn evaluator_for(traj: &Trajectory) -> Result<SolutionEvaluator> {
    solution_for(&traj.spec, &traj.params)?.invert()
}

/// Concurrence as a continuous function of time via an evaluator.
fn concurrence_at(ev: &SolutionEvaluator, t: f64) -> Result<f64> {
    Ok(concurrence_x(&ev.state(t)?))
}

/// Bisects the crossing of `concurrence = zero_tol` inside `[lo, hi]`,
/// where exactly one endpoint is at-or-below the tolerance, to
/// [`tol::EVENT_TIME_TOL`] in time.
fn refine_crossing(
    ev: &SolutionEvaluator,
    mut lo: f64,
    mut hi: f64,
    zero_tol: f64,
    dark_on_hi: bool,
) -> Result<f64> {
    for _ in 0..80 {
        if hi - lo <= tol::EVENT_TIME_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let dark = concurrence_at(ev, mid)? <= zero_tol;
        if dark == dark_on_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Detects dark periods, delayed birth, and revivals on a sampled
/// trajectory, refining every interval boundary on the continuous
/// evaluator.
///
/// # Errors
///
/// [`Error::Resolution`] when the concurrence changes by more than
/// [`tol::MAX_CONCURRENCE_JUMP`] between adjacent samples (the grid is too
/// coarse to bracket events reliably); [`Error::Domain`] for an empty
/// trajectory; propagated solution errors.
///
/// # Examples
///
/// ```
/// use entdyn::{analysis::detect_events, model::InitialStateSpec,
///              solutions::propagate, ReservoirParams};
/// let params = ReservoirParams::from_coupling_ratio(5.0).unwrap();
/// let times: Vec<f64> = (0..=2000).map(|i| 0.01 * i as f64).collect();
/// let traj = propagate(
///     &InitialStateSpec::EwlPhi { r: 1.0, alpha2: 0.5, theta: std::f64::consts::PI },
///     &params, &times).unwrap();
/// let ev = detect_events(&traj, 1e-6).unwrap();
/// assert!(ev.dark_periods.is_empty()); // the singlet never disentangles
/// assert_eq!(ev.stationary_concurrence, 1.0);
/// ```
pub fn detect_events(traj: &Trajectory, zero_tol: f64) -> Result<EntanglementEvents> {
    if traj.times.is_empty() {
        return Err(Error::Domain("empty trajectory".into()));
    }
    let c: Vec<f64> = traj.states.iter().map(concurrence_x).collect();
    let max_jump = c
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(0.0, f64::max);
    if max_jump > tol::MAX_CONCURRENCE_JUMP {
        return Err(Error::Resolution { max_jump });
    }

    // Maximal index runs of concurrence at-or-below the tolerance.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut start: Option<usize> = None;
    for (i, &ci) in c.iter().enumerate() {
        match (ci <= zero_tol, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                runs.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push((s, c.len() - 1));
    }

    let ev = evaluator_for(traj)?;
    let last = c.len() - 1;
    let t_end = traj.times[last];
    let mut dark_periods = Vec::with_capacity(runs.len());
    let mut birth_time = None;
    let mut revivals = 0;
    for &(i0, i1) in &runs {
        let t_on = if i0 == 0 {
            traj.times[0]
        } else {
            refine_crossing(&ev, traj.times[i0 - 1], traj.times[i0], zero_tol, true)?
        };
        let t_off = if i1 == last {
            t_end
        } else {
            refine_crossing(&ev, traj.times[i1], traj.times[i1 + 1], zero_tol, false)?
        };
        let interior = i0 > 0 && i1 < last;
        let interval = if interior && t_off - t_on < tol::ISOLATED_ZERO_WIDTH {
            let mid = 0.5 * (t_on + t_off);
            [mid, mid]
        } else {
            [t_on, t_off]
        };
        if i0 == 0 && i1 < last {
            birth_time = Some(t_off);
        }
        if i1 < last {
            revivals += 1;
        }
        dark_periods.push(interval);
    }

    let stationary = stationary_state(&traj.spec, &traj.params)?;
    Ok(EntanglementEvents {
        dark_periods,
        birth_time,
        revivals,
        stationary_concurrence: concurrence_x(&stationary),
    })
}

/// Concurrence of the stationary state of a family member: what survives
/// the decay is exactly the decoupled antisymmetric population.
///
/// # Errors
///
/// As [`stationary_state`].
///
/// # Examples
///
/// ```
/// use entdyn::{analysis::stationary_concurrence, model::InitialStateSpec, ReservoirParams};
/// let params = ReservoirParams::from_coupling_ratio(5.0).unwrap();
/// let spec = InitialStateSpec::EwlPhi { r: 0.6, alpha2: 0.5, theta: std::f64::consts::PI };
/// // (1 + 3r)/4 at r = 0.6.
/// assert!((stationary_concurrence(&spec, &params).unwrap() - 0.7).abs() < 1e-9);
/// ```
pub fn stationary_concurrence(spec: &InitialStateSpec, params: &ReservoirParams) -> Result<f64> {
    Ok(concurrence_x(&stationary_state(spec, params)?))
}

/// Caveats that should accompany a stationary-value report for the given
/// family; empty for families without known points of confusion.
///
/// For the two-excitation mixed family the stationary concurrence equals
/// the conserved antisymmetric population `(1-r)/4` — an `r/4` value
/// sometimes attributed to this family is inconsistent with that
/// conservation law, so reports carry an explicit note.
pub fn stationary_notes(spec: &InitialStateSpec) -> Vec<String> {
    match spec {
        InitialStateSpec::EwlPsi { r, .. } => vec![format!(
            "stationary concurrence {} is the conserved antisymmetric population (1-r)/4 at r = {r}; \
             the value r/4 sometimes quoted for this family contradicts that conservation law",
            (1.0 - r) / 4.0
        )],
        _ => Vec::new(),
    }
}

/// Interior local extrema of a sampled series by the three-point test,
/// refined by parabolic interpolation through the bracketing samples.
fn local_extrema(times: &[f64], values: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 1..values.len().saturating_sub(1) {
        let (y0, y1, y2) = (values[i - 1], values[i], values[i + 1]);
        let is_max = y1 > y0 && y1 >= y2;
        let is_min = y1 < y0 && y1 <= y2;
        if !(is_max || is_min) {
            continue;
        }
        let (t0, t1, t2) = (times[i - 1], times[i], times[i + 1]);
        // Vertex of the parabola through the three samples; degenerate
        // (flat) configurations fall back to the grid point.
        let d10 = t1 - t0;
        let d12 = t1 - t2;
        let denom = d10 * (y1 - y2) - d12 * (y1 - y0);
        let vertex = if denom.abs() > 1e-300 {
            t1 - 0.5 * (d10 * d10 * (y1 - y2) - d12 * d12 * (y1 - y0)) / denom
        } else {
            t1
        };
        out.push(vertex.clamp(t0, t2));
    }
    out
}

/// Finds interior local extrema of two signals on a common time grid and
/// matches them greedily (earliest first, nearest partner) within the
/// window.
///
/// # Errors
///
/// [`Error::Domain`] for empty input or mismatched lengths.
pub fn extrema_alignment(
    times: &[f64],
    series_a: &[f64],
    series_b: &[f64],
    window: f64,
) -> Result<ExtremaReport> {
    if times.is_empty() || series_a.is_empty() || series_b.is_empty() {
        return Err(Error::Domain("empty series".into()));
    }
    if times.len() != series_a.len() || times.len() != series_b.len() {
        return Err(Error::Domain(format!(
            "series lengths {} / {} do not match the grid length {}",
            series_a.len(),
            series_b.len(),
            times.len()
        )));
    }
    let extrema_a = local_extrema(times, series_a);
    let extrema_b = local_extrema(times, series_b);
    let mut taken = vec![false; extrema_b.len()];
    let mut matched = Vec::new();
    for &ta in &extrema_a {
        let mut best: Option<(usize, f64)> = None;
        for (j, &tb) in extrema_b.iter().enumerate() {
            if taken[j] {
                continue;
            }
            let d = (ta - tb).abs();
            if d <= window && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        if let Some((j, _)) = best {
            taken[j] = true;
            matched.push((ta, extrema_b[j]));
        }
    }
    let unmatched_a = extrema_a.len() - matched.len();
    let unmatched_b = taken.iter().filter(|&&t| !t).count();
    Ok(ExtremaReport {
        extrema_a,
        extrema_b,
        matched,
        unmatched_a,
        unmatched_b,
        window,
    })
}

/// Ternary search for the minimizer of a unimodal function on `[lo, hi]`.
fn ternary_min(
    ev: &SolutionEvaluator,
    f: impl Fn(&SolutionEvaluator, f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
) -> Result<f64> {
    while hi - lo > tol::EXTREMUM_TIME_TOL {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(ev, m1)? <= f(ev, m2)? {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Checks the separability-point condition along a one-excitation
/// trajectory: at every zero of the concurrence the three collective
/// quantities `rho_pp`, `rho_mm`, `|rho_pm|` coincide and the state is a
/// mixture of `|00>` with a single locally excited ket.
///
/// Zeros are located as grid minima of `|z|^2` refined by ternary search
/// (the one-excitation concurrence is `2|z|`, and its zeros are isolated,
/// so minima-hunting finds exactly the touches), then accepted when the
/// refined concurrence falls below [`tol::DEFAULT_ZERO_TOL`].
///
/// # Errors
///
/// [`Error::Domain`] when the trajectory has support outside the
/// one-excitation sector (`d` or `|w|` beyond 1e-10).
pub fn zero_condition_check(traj: &Trajectory) -> Result<ZeroConditionReport> {
    for s in &traj.states {
        if s.d.abs() > 1e-10 || s.w.norm() > 1e-10 {
            return Err(Error::Domain(
                "separability-point check requires a one-excitation trajectory".into(),
            ));
        }
    }
    let ev = evaluator_for(traj)?;
    let z2 = |ev: &SolutionEvaluator, t: f64| -> Result<f64> { Ok(ev.state(t)?.z.norm_sqr()) };
    let mut zeros = Vec::new();
    let vals: Vec<f64> = traj
        .states
        .iter()
        .map(|s| s.z.norm_sqr())
        .collect();
    for i in 1..vals.len().saturating_sub(1) {
        if !(vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1]) {
            continue;
        }
        let t_star = ternary_min(&ev, z2, traj.times[i - 1], traj.times[i + 1])?;
        let state = ev.state(t_star)?;
        if 2.0 * state.z.norm() > tol::DEFAULT_ZERO_TOL {
            continue;
        }
        let rc = radiant_coords(&state);
        let surviving_ket = if state.b < 1e-4 && state.b <= state.c {
            SurvivingKet::Ket01
        } else if state.c < 1e-4 {
            SurvivingKet::Ket10
        } else {
            SurvivingKet::Unresolved
        };
        zeros.push(ZeroRecord {
            time: t_star,
            pp_mm_gap: (rc.rho_pp - rc.rho_mm).abs(),
            pp_pm_gap: (rc.rho_pp - rc.rho_pm.norm()).abs(),
            surviving_ket,
            weight: 2.0 * rc.rho_mm,
        });
    }
    // Distinct grid minima can refine into the same zero; deduplicate.
    zeros.dedup_by(|a, b| (a.time - b.time).abs() < 10.0 * tol::EXTREMUM_TIME_TOL);
    Ok(ZeroConditionReport { zeros })
}

/// Propagates one trajectory per axis value and collects the concurrence
/// into a dense grid.
///
/// # Errors
///
/// [`Error::Domain`] when the template family does not carry the requested
/// axis parameter; propagated construction and propagation errors.
pub fn sweep(
    template: &InitialStateSpec,
    axis: SweepAxis,
    values: &[f64],
    params: &ReservoirParams,
    times: &[f64],
) -> Result<SweepGrid> {
    let mut concurrence = Vec::with_capacity(values.len());
    for &v in values {
        let spec = substitute(template, axis, v)?;
        let traj = crate::solutions::propagate(&spec, params, times)?;
        concurrence.push(traj.states.iter().map(concurrence_x).collect());
    }
    Ok(SweepGrid {
        axis_name: axis.name(),
        axis_values: values.to_vec(),
        times: times.to_vec(),
        concurrence,
        params: *params,
        template: *template,
    })
}

/// Replaces the swept parameter inside a family template.
fn substitute(
    template: &InitialStateSpec,
    axis: SweepAxis,
    v: f64,
) -> Result<InitialStateSpec> {
    use InitialStateSpec::*;
    let mut spec = *template;
    let missing = |what: &str| {
        Err(Error::Domain(format!(
            "family {template:?} has no {what} parameter to sweep"
        )))
    };
    match (&mut spec, axis) {
        (EwlPhi { r, .. } | EwlPsi { r, .. } | Werner { r } | WernerLike { r, .. }, SweepAxis::R) => {
            *r = v
        }
        (
            BellPhi { alpha2, .. }
            | BellPsi { alpha2, .. }
            | EwlPhi { alpha2, .. }
            | EwlPsi { alpha2, .. }
            | FactorizedMixed { alpha2 },
            SweepAxis::Alpha2,
        ) => *alpha2 = v,
        (
            BellPhi { theta, .. } | BellPsi { theta, .. } | EwlPhi { theta, .. }
            | EwlPsi { theta, .. },
            SweepAxis::Theta,
        ) => *theta = v,
        (_, SweepAxis::R) => return missing("r"),
        (_, SweepAxis::Alpha2) => return missing("alpha2"),
        (_, SweepAxis::Theta) => return missing("theta"),
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solutions::propagate;
    use approx::assert_abs_diff_eq;

    fn regime5() -> ReservoirParams {
        ReservoirParams::from_coupling_ratio(5.0).unwrap()
    }

    fn grid(tmax: f64, steps: usize) -> Vec<f64> {
        (0..=steps).map(|i| tmax * i as f64 / steps as f64).collect()
    }

    #[test]
    fn dark_periods_and_revivals_strong_coupling() {
        // Heavily unbalanced two-excitation superposition: repeated death
        // and revival. First dark interval pinned by high-precision root
        // finding on the closed forms.
        let traj = propagate(
            &InitialStateSpec::BellPsi {
                alpha2: 0.05,
                theta: 0.0,
            },
            &regime5(),
            &grid(100.0, 10_000),
        )
        .unwrap();
        let ev = detect_events(&traj, tol::DEFAULT_ZERO_TOL).unwrap();
        assert!(ev.dark_periods.len() >= 2);
        assert!(ev.revivals >= 1);
        assert_eq!(ev.birth_time, None);
        let first = ev.dark_periods[0];
        assert_abs_diff_eq!(first[0], 11.803631693946448, epsilon = 1e-5);
        assert_abs_diff_eq!(first[1], 18.413434857671937, epsilon = 1e-5);
        assert_abs_diff_eq!(ev.stationary_concurrence, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn balanced_superposition_never_dies() {
        let traj = propagate(
            &InitialStateSpec::BellPsi {
                alpha2: 0.5,
                theta: 0.0,
            },
            &regime5(),
            &grid(100.0, 10_000),
        )
        .unwrap();
        let ev = detect_events(&traj, tol::DEFAULT_ZERO_TOL).unwrap();
        assert!(ev.dark_periods.is_empty());
        assert_eq!(ev.revivals, 0);
        assert_eq!(ev.birth_time, None);
    }

    #[test]
    fn delayed_birth_from_factorized_state() {
        let traj = propagate(
            &InitialStateSpec::FactorizedMixed { alpha2: 0.75 },
            &regime5(),
            &grid(100.0, 10_000),
        )
        .unwrap();
        let ev = detect_events(&traj, tol::DEFAULT_ZERO_TOL).unwrap();
        let birth = ev.birth_time.expect("entanglement is born late");
        assert_abs_diff_eq!(birth, 20.791591715503703, epsilon = 1e-5);
        // A further finite dark period follows the birth.
        assert!(ev.dark_periods.len() >= 2);
        assert!(ev.dark_periods[1][1] > ev.dark_periods[1][0] + 1.0);
    }

    #[test]
    fn refinement_invariance_of_boundaries() {
        let spec = InitialStateSpec::BellPsi {
            alpha2: 0.05,
            theta: 0.0,
        };
        let coarse = detect_events(
            &propagate(&spec, &regime5(), &grid(100.0, 5_000)).unwrap(),
            tol::DEFAULT_ZERO_TOL,
        )
        .unwrap();
        let fine = detect_events(
            &propagate(&spec, &regime5(), &grid(100.0, 10_000)).unwrap(),
            tol::DEFAULT_ZERO_TOL,
        )
        .unwrap();
        assert_eq!(coarse.dark_periods.len(), fine.dark_periods.len());
        for (a, b) in coarse.dark_periods.iter().zip(fine.dark_periods.iter()) {
            assert!((a[0] - b[0]).abs() < 2e-6);
            assert!((a[1] - b[1]).abs() < 2e-6);
        }
    }

    #[test]
    fn coarse_grid_rejected() {
        let traj = propagate(
            &InitialStateSpec::BellPsi {
                alpha2: 0.05,
                theta: 0.0,
            },
            &regime5(),
            &grid(100.0, 40),
        )
        .unwrap();
        assert!(matches!(
            detect_events(&traj, tol::DEFAULT_ZERO_TOL),
            Err(Error::Resolution { max_jump }) if max_jump > tol::MAX_CONCURRENCE_JUMP
        ));
    }

    #[test]
    fn stationary_concurrence_formula() {
        let params = regime5();
        for &r in &[0.4, 0.7, 1.0] {
            let c = stationary_concurrence(
                &InitialStateSpec::EwlPhi {
                    r,
                    alpha2: 0.5,
                    theta: std::f64::consts::PI,
                },
                &params,
            )
            .unwrap();
            assert_abs_diff_eq!(c, (1.0 + 3.0 * r) / 4.0, epsilon = 1e-9);
        }
        assert_abs_diff_eq!(
            stationary_concurrence(
                &InitialStateSpec::BellPsi {
                    alpha2: 0.5,
                    theta: 0.0
                },
                &params
            )
            .unwrap(),
            0.0,
            epsilon = 1e-12
        );
        // The two-excitation mixed family keeps its constant antisymmetric
        // share (1-r)/4 — this is what survives, not r/4.
        assert_abs_diff_eq!(
            stationary_concurrence(&InitialStateSpec::EwlPsi {
                r: 0.2,
                alpha2: 0.5,
                theta: 0.0
            }, &params)
            .unwrap(),
            0.2,
            epsilon = 1e-9
        );
    }

    #[test]
    fn extrema_self_match() {
        let times = grid(20.0, 400);
        let series: Vec<f64> = times.iter().map(|t| (0.9 * t).sin() * (-0.1 * t).exp()).collect();
        let rep = extrema_alignment(&times, &series, &series, 0.1).unwrap();
        assert!(!rep.extrema_a.is_empty());
        assert_eq!(rep.extrema_a.len(), rep.matched.len());
        assert_eq!(rep.unmatched_a, 0);
        assert_eq!(rep.unmatched_b, 0);
        for (a, b) in &rep.matched {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn extrema_rejects_bad_input() {
        assert!(extrema_alignment(&[], &[], &[], 0.1).is_err());
        assert!(extrema_alignment(&[0.0, 1.0], &[0.0], &[0.0, 1.0], 0.1).is_err());
    }

    #[test]
    fn separability_points_one_excitation() {
        // Unbalanced one-excitation superposition: at every concurrence
        // zero the three collective quantities coincide and one qubit's
        // excited population vanishes.
        let traj = propagate(
            &InitialStateSpec::BellPhi {
                alpha2: 0.2,
                theta: 0.0,
            },
            &regime5(),
            &grid(100.0, 10_000),
        )
        .unwrap();
        let rep = zero_condition_check(&traj).unwrap();
        assert!(rep.zeros.len() >= 4);
        assert_abs_diff_eq!(rep.zeros[0].time, 17.696029929287091, epsilon = 1e-4);
        for z in &rep.zeros {
            assert!(z.pp_mm_gap < 1e-4, "pp/mm gap {:.3e}", z.pp_mm_gap);
            assert!(z.pp_pm_gap < 1e-4, "pp/pm gap {:.3e}", z.pp_pm_gap);
            assert!(z.surviving_ket != SurvivingKet::Unresolved);
            assert!((0.0..=1.0).contains(&z.weight));
        }
    }

    #[test]
    fn separability_empty_for_singlet() {
        let traj = propagate(
            &InitialStateSpec::Werner { r: 1.0 },
            &regime5(),
            &grid(50.0, 2_000),
        )
        .unwrap();
        let rep = zero_condition_check(&traj).unwrap();
        assert!(rep.zeros.is_empty());
    }

    #[test]
    fn separability_requires_one_excitation() {
        let traj = propagate(
            &InitialStateSpec::BellPsi {
                alpha2: 0.3,
                theta: 0.0,
            },
            &regime5(),
            &grid(10.0, 500),
        )
        .unwrap();
        assert!(zero_condition_check(&traj).is_err());
    }

    #[test]
    fn sweep_r_axis_boundary_values() {
        let params = regime5();
        let values = [0.0, 0.2, 1.0 / 3.0, 0.6, 1.0];
        let times = grid(10.0, 200);
        let g = sweep(
            &InitialStateSpec::EwlPsi {
                r: 0.0,
                alpha2: 0.5,
                theta: 0.0,
            },
            SweepAxis::R,
            &values,
            &params,
            &times,
        )
        .unwrap();
        assert_eq!(g.concurrence.len(), values.len());
        assert_eq!(g.concurrence[0].len(), times.len());
        // At t = 0 the r-axis profile is max{0, (3r-1)/2}, increasing.
        let mut prev = -1.0;
        for (row, &r) in g.concurrence.iter().zip(values.iter()) {
            let expected = (0.0_f64).max((3.0 * r - 1.0) / 2.0);
            assert_abs_diff_eq!(row[0], expected, epsilon = 1e-10);
            assert!(row[0] >= prev);
            prev = row[0];
            for &c in row {
                assert!((0.0..=1.0).contains(&c));
            }
        }
    }

    #[test]
    fn sweep_rejects_missing_axis() {
        let params = regime5();
        let times = grid(1.0, 10);
        assert!(sweep(
            &InitialStateSpec::FactorizedMixed { alpha2: 0.5 },
            SweepAxis::Theta,
            &[0.0, 1.0],
            &params,
            &times,
        )
        .is_err());
        assert!(sweep(
            &InitialStateSpec::BellPhi {
                alpha2: 0.5,
                theta: 0.0
            },
            SweepAxis::R,
            &[0.5],
            &params,
            &times,
        )
        .is_err());
    }
}
