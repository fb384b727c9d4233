//! Numerical tolerances and contour constants used throughout the crate.
//!
//! Every magic number lives here with a rationale, so that accuracy contracts
//! are auditable in one place. Constants fall into three groups: algebraic
//! cleanup thresholds, iterative-solver targets, and the calibrated contour
//! parameters of the numerical inverse Laplace transform.

/// Trailing polynomial coefficients smaller than this fraction of the largest
/// coefficient magnitude are treated as zero when computing the degree.
/// Products and sums of exactly representable inputs accumulate relative
/// rounding of order 1e-16 per operation; 1e-14 absorbs a short chain of such
/// operations without swallowing genuinely small leading terms.
pub const POLY_TRIM_REL: f64 = 1e-14;

/// Root-residual acceptance for the polynomial solver: a root `z` of `p` is
/// accepted when `|p(z)| <= POLY_ROOT_RESIDUAL_REL * max|coeff| * max(1, |z|)^deg`.
/// The growth factor accounts for the intrinsic conditioning of evaluating a
/// polynomial far from the origin; the 1e-8 base leaves three orders of
/// headroom over f64 noise for the degree-at-most-12 denominators built here.
pub const POLY_ROOT_RESIDUAL_REL: f64 = 1e-8;

/// Maximum simultaneous-iteration sweeps for the polynomial solver. Distinct
/// roots converge cubically (a handful of sweeps); roots of multiplicity two
/// converge linearly and need on the order of fifty sweeps to stagnate at
/// machine level, so 300 is generous without risking an unbounded loop.
pub const POLY_ROOT_MAX_ITERS: usize = 300;

/// Relative distance below which two computed denominator roots are merged
/// into one pole of higher multiplicity. The physical denominators used here
/// keep distinct poles separated by at least ~1.7e-3 relative, while a solver
/// pair straddling a true double root lands ~1e-8 apart, so 1e-6 cleanly
/// separates the two situations with three orders of margin each way.
pub const POLE_CLUSTER_REL: f64 = 1e-6;

/// Imaginary parts of roots of real-coefficient polynomials below this
/// relative threshold are snapped to the real axis before conjugate pairing.
/// Genuine oscillatory poles of the models treated here have imaginary parts
/// of order 1e-2 and larger; spurious imaginary dust from the solver is at
/// rounding level.
pub const REAL_ROOT_SNAP_REL: f64 = 1e-10;

/// Partial-fraction reconstruction must reproduce the numerator with at most
/// this relative residual when the expansion is resummed; beyond it the
/// residue extraction is declared failed.
pub const RESIDUE_RECONSTRUCT_REL: f64 = 1e-8;

/// Additional allowance in the reconstruction audit proportional to the sum
/// of individual term magnitudes at the probe point. When a function is small
/// because large residues cancel (or represents pure rounding noise), the
/// achievable resummation accuracy is limited by cancellation at roughly
/// machine epsilon times the term-magnitude sum; this guard sits ~500x above
/// that floor while still rejecting expansions whose terms are inflated by
/// orders of magnitude relative to the function they represent.
pub const RESIDUE_CANCEL_GUARD: f64 = 1e-13;

/// Safety multiplier on the a-posteriori residue/pole error budget in the
/// partial-fraction reconstruction audit. The budget propagates first-order
/// sensitivities (Newton-step root error through the residue formula), which
/// under-counts by small constant factors when several error sources align;
/// a single-digit multiplier absorbs that without masking genuine failures,
/// which overshoot by orders of magnitude.
pub const RESIDUE_ERROR_SAFETY: f64 = 4.0;

/// Initial-state scalars below this magnitude are treated as exact zeros when
/// transforms are assembled. Trigonometric construction of the state families
/// leaves rounding dust of order 1e-16 in data that is exactly zero on paper
/// (e.g. the collective population of the singlet); folding that dust into a
/// numerator produces a near-zero rational whose residues are pure noise.
/// Physically meaningful small data stays well above this cutoff, which sits
/// four orders below the state-validation tolerances.
pub const INITIAL_DATA_SNAP_ABS: f64 = 1e-14;

/// A time-domain signal obtained from a real-coefficient transfer function
/// must be real up to this absolute imaginary leakage; larger leakage means
/// the pole set lost its conjugate symmetry.
pub const EXP_SUM_IMAG_WARN: f64 = 1e-9;

/// Imaginary leakage beyond this level is a hard error rather than a warning.
pub const EXP_SUM_IMAG_ERR: f64 = 1e-6;

/// Number of contour nodes for the fixed-contour numerical inverse Laplace
/// transform. Calibrated together with [`TALBOT_RADIUS_C1`] against
/// closed-form inversions over all three damping regimes and times in
/// `[0.01, 20]`; the worst observed error at `M = 64` is 3.3e-10, comfortably
/// inside the 1e-8 accuracy target.
pub const TALBOT_NODES: usize = 64;

/// Base contour radius scaling: the radius is at least `TALBOT_RADIUS_C1 / t`.
/// The textbook choice `2 M / (5 t)` makes `exp(r t)` of order 1e11, which
/// amplifies rounding in the node summation to ~1e-5; shrinking to `12 / t`
/// keeps the amplification at `exp(12) ~ 1.6e5` while still enclosing all
/// poles relevant at time `t`.
pub const TALBOT_RADIUS_C1: f64 = 12.0;

/// The contour must also enclose every relevant pole: the radius is raised to
/// `TALBOT_POLE_SAFETY * (2 / pi) * max |Im p|` over poles `p` that are not
/// negligibly damped at the evaluation time. The 10% safety factor keeps the
/// contour clear of poles that sit exactly on its boundary.
pub const TALBOT_POLE_SAFETY: f64 = 1.1;

/// A pole `p` is ignored for contour sizing when `Re(p) * t < TALBOT_POLE_CUTOFF`,
/// i.e. when its contribution at the evaluation time is below `exp(-40) ~ 4e-18`.
pub const TALBOT_POLE_CUTOFF: f64 = -40.0;

/// Agreement target between pole-residue inversion and contour inversion in
/// cross-verification, relative to the larger of 1 and the signal magnitude.
pub const DUAL_INVERSION_REL: f64 = 1e-6;

/// Populations and coherence magnitudes may dip this far below zero (or above
/// their algebraic bound) before a state is rejected as unphysical; this is
/// the accumulated rounding of the closed-form evaluation pipeline.
pub const STATE_PHYSICALITY_ABS: f64 = 1e-9;

/// Eigenvalues of a nominal density matrix may be negative by at most this
/// amount before validation fails; smaller negatives are clamped to zero.
pub const DENSITY_EIG_NEG_ABS: f64 = 1e-9;

/// Hermiticity slack when ingesting a dense matrix: conjugate-transpose
/// mismatch above this is a contract violation rather than rounding.
pub const HERMITICITY_ABS: f64 = 1e-12;

/// Off-diagonal magnitude below which a dense matrix still counts as an
/// X-form matrix (all entries outside the two 2x2 blocks effectively zero).
pub const X_FORM_ABS: f64 = 1e-10;

/// Relative distance below which eigenvalues of the spin-flip spectrum are
/// treated as one degenerate group. Roots of a characteristic polynomial
/// scatter around an m-fold eigenvalue by roughly (1e-16)^(1/m) — up to
/// ~1e-4 for a fourfold root — so the threshold must sit above that.
/// Merging genuinely distinct close values costs nothing: every group is
/// re-resolved through its deflated local factor, whose coefficients stay
/// accurate relative to their own size, so separations far below the
/// clustering radius are still recovered exactly.
pub const SPECTRUM_CLUSTER_REL: f64 = 1e-3;

/// Convergence threshold for the Jacobi eigensolver: off-diagonal Frobenius
/// mass below this fraction of the matrix norm terminates the sweep loop.
pub const JACOBI_OFF_REL: f64 = 1e-14;

/// Maximum Jacobi sweeps; 4x4 Hermitian matrices converge in well under ten.
pub const JACOBI_MAX_SWEEPS: usize = 60;

/// Default threshold under which a concurrence sample counts as zero when
/// locating separable intervals. Matches the front-end default.
pub const DEFAULT_ZERO_TOL: f64 = 1e-6;

/// Width separating a measure-zero touch of zero from a genuine separable
/// interval, in scaled time. Calibrated from the model phenomenology: grid-
/// refined widths of transversal touches come out below 0.035, while the
/// shortest genuine dark period observed across the studied regimes exceeds
/// 6; the midpoint decade 0.5 is insensitive to either side by more than an
/// order of magnitude.
pub const ISOLATED_ZERO_WIDTH: f64 = 0.5;

/// Bisection refinement target for event boundaries, in scaled time.
pub const EVENT_TIME_TOL: f64 = 1e-6;

/// Step-to-step concurrence change above which the sampling grid is declared
/// too coarse for reliable interval detection.
pub const MAX_CONCURRENCE_JUMP: f64 = 0.05;

/// Interior extrema of sampled signals are refined to this time resolution.
pub const EXTREMUM_TIME_TOL: f64 = 1e-8;

/// Overall sign convention relating the two-qubit coherence to the
/// symmetric/antisymmetric coherence in collective coordinates:
/// `rho_{+-} = (b - c)/2 + RHO_PM_SIGN * i * Im z`. The choice `-1` is the
/// one that reproduces the published pattern of which qubit's population
/// vanishes at successive separability points; see the collective-coordinate
/// transform for the derivation hook.
pub const RHO_PM_SIGN: f64 = -1.0;
