//! Parameter and state types: the reservoir, the two-qubit X state, the
//! initial-state families, and the collective (symmetric/antisymmetric)
//! coordinate transform.
//!
//! Everything here is immutable value types plus pure constructors; the
//! dynamics live in [`crate::solutions`]. The X form — nonzero entries only
//! on the diagonal and the two anti-diagonal corners `(|00><11|, |10><01|)` —
//! is preserved by the common-reservoir evolution, which is why it is the
//! native state representation of the whole crate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// Lorentzian reservoir parameters: spectral width `gamma` (Γ) and collective
/// coupling strength `omega` (Ω), both in inverse time units.
///
/// The derived spontaneous-decay scale `gamma0` (γ₀ = 4Ω²/Γ) is the natural
/// time unit of the dynamics; constructors in scaled units fix γ₀ = 1.
///
/// # Examples
///
/// ```
/// use entdyn::ReservoirParams;
/// // Strong-coupling regime Ω = 5Γ in units where γ₀ = 1.
/// let p = ReservoirParams::from_coupling_ratio(5.0).unwrap();
/// assert!((p.gamma0() - 1.0).abs() < 1e-15);
/// assert!((p.omega() / p.gamma() - 5.0).abs() < 1e-15);
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReservoirParams {
    gamma: f64,
    omega: f64,
}

impl ReservoirParams {
    /// Builds reservoir parameters from the Lorentzian width and coupling.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] unless both rates are finite and strictly positive.
    pub fn new(gamma: f64, omega: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::Domain(format!(
                "reservoir width gamma must be positive and finite, got {gamma}"
            )));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::Domain(format!(
                "coupling strength omega must be positive and finite, got {omega}"
            )));
        }
        Ok(ReservoirParams { gamma, omega })
    }

    /// Parameters in scaled units (γ₀ = 1) for a given coupling ratio
    /// `Ω/Γ`: Γ = 1/(4 ratio²), Ω = 1/(4 ratio).
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] for non-positive or non-finite ratio.
    pub fn from_coupling_ratio(ratio: f64) -> Result<Self> {
        if !(ratio.is_finite() && ratio > 0.0) {
            return Err(Error::Domain(format!(
                "coupling ratio omega/gamma must be positive and finite, got {ratio}"
            )));
        }
        Self::new(1.0 / (4.0 * ratio * ratio), 1.0 / (4.0 * ratio))
    }

    /// Lorentzian width Γ.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Collective coupling strength Ω.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Spontaneous-decay scale γ₀ = 4Ω²/Γ.
    pub fn gamma0(&self) -> f64 {
        4.0 * self.omega * self.omega / self.gamma
    }
}

/// Two-qubit X-form density matrix in the product basis
/// `{|00>, |10>, |01>, |11>}`.
///
/// Populations `a, b, c, d` sit on the diagonal in that order; `w` is the
/// coherence between `|00>` and `|11>` (two-excitation sector) and `z` the
/// coherence between `|10>` and `|01>` (one-excitation sector). Physical
/// states satisfy unit trace and positivity of the two 2x2 blocks
/// (`|w|^2 <= a d`, `|z|^2 <= b c`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XState {
    /// Population of `|00>`.
    pub a: f64,
    /// Population of `|10>`.
    pub b: f64,
    /// Population of `|01>`.
    pub c: f64,
    /// Population of `|11>`.
    pub d: f64,
    /// Coherence `<00| rho |11>`.
    pub w: Complex64,
    /// Coherence `<10| rho |01>`.
    pub z: Complex64,
}

impl XState {
    /// Convenience constructor.
    pub fn new(a: f64, b: f64, c: f64, d: f64, w: Complex64, z: Complex64) -> Self {
        XState { a, b, c, d, w, z }
    }

    /// Diagonal state with no coherences.
    pub fn diagonal(a: f64, b: f64, c: f64, d: f64) -> Self {
        XState::new(a, b, c, d, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// Trace of the density matrix.
    pub fn trace(&self) -> f64 {
        self.a + self.b + self.c + self.d
    }

    /// Checks the physicality invariants: unit trace within 1e-10,
    /// populations inside `[-1e-10, 1 + 1e-10]`, and block positivity
    /// `|w|^2 <= a d + 1e-10`, `|z|^2 <= b c + 1e-10`.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] naming the violated condition.
    pub fn validate(&self) -> Result<()> {
        const TOL: f64 = 1e-10;
        if (self.trace() - 1.0).abs() > TOL {
            return Err(Error::Domain(format!(
                "trace {} deviates from 1 beyond {TOL:e}",
                self.trace()
            )));
        }
        for (name, p) in [("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d)] {
            if !(-TOL..=1.0 + TOL).contains(&p) {
                return Err(Error::Domain(format!(
                    "population {name} = {p} outside [0, 1]"
                )));
            }
        }
        if self.w.norm_sqr() > self.a * self.d + TOL {
            return Err(Error::Domain(format!(
                "|w|^2 = {} exceeds a*d = {}",
                self.w.norm_sqr(),
                self.a * self.d
            )));
        }
        if self.z.norm_sqr() > self.b * self.c + TOL {
            return Err(Error::Domain(format!(
                "|z|^2 = {} exceeds b*c = {}",
                self.z.norm_sqr(),
                self.b * self.c
            )));
        }
        Ok(())
    }

    /// The eight real components `(a, b, c, d, Re w, Im w, Re z, Im z)` as a
    /// flat vector — the coordinates used for superposition/decomposition.
    pub fn as_vec8(&self) -> [f64; 8] {
        [
            self.a, self.b, self.c, self.d, self.w.re, self.w.im, self.z.re, self.z.im,
        ]
    }

    /// Inverse of [`XState::as_vec8`].
    pub fn from_vec8(v: [f64; 8]) -> Self {
        XState::new(
            v[0],
            v[1],
            v[2],
            v[3],
            Complex64::new(v[4], v[5]),
            Complex64::new(v[6], v[7]),
        )
    }
}

/// Dense 4x4 density matrix in the basis `{|00>, |10>, |01>, |11>}`; the
/// carrier for general-state reference computations (spin-flip concurrence,
/// dense eigensolver) that audit the X-form fast paths.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4 {
    entries: [[Complex64; 4]; 4],
}

impl DensityMatrix4 {
    /// Builds and fully validates a density matrix: Hermitian within 1e-12,
    /// unit trace within 1e-10, eigenvalues above −1e-9.
    ///
    /// # Errors
    ///
    /// [`Error::Contract`] for non-Hermitian input, [`Error::Domain`] for
    /// trace or positivity violations.
    pub fn new(entries: [[Complex64; 4]; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                if (entries[i][j] - entries[j][i].conj()).norm() > tol::HERMITICITY_ABS {
                    return Err(Error::Contract(format!(
                        "matrix is not Hermitian at entry ({i}, {j})"
                    )));
                }
            }
        }
        let trace: Complex64 = (0..4).map(|i| entries[i][i]).sum();
        if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
            return Err(Error::Domain(format!("trace {trace} deviates from 1")));
        }
        let m = DensityMatrix4 { entries };
        let eigs = crate::oracle::eig_hermitian4(&m)?;
        if let Some(&min) = eigs
            .iter()
            .min_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"))
        {
            if min < -tol::DENSITY_EIG_NEG_ABS {
                return Err(Error::Domain(format!(
                    "negative eigenvalue {min:.3e} below the physicality threshold"
                )));
            }
        }
        Ok(m)
    }

    /// Internal constructor for matrices already known valid (X states that
    /// passed their own validation).
    pub(crate) fn from_valid(entries: [[Complex64; 4]; 4]) -> Self {
        DensityMatrix4 { entries }
    }

    /// Entry accessor.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    /// Raw entries.
    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.entries
    }

    /// Trace (real part; imaginary part is zero for Hermitian input).
    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.entries[i][i].re).sum()
    }
}

/// Dense representation of an X state: diagonal `(a, b, c, d)`, corners
/// `w = <00|rho|11>` and `z = <10|rho|01>` with conjugates mirrored.
pub fn to_dense(state: &XState) -> DensityMatrix4 {
    let o = Complex64::new(0.0, 0.0);
    let re = |x: f64| Complex64::new(x, 0.0);
    DensityMatrix4::from_valid([
        [re(state.a), o, o, state.w],
        [o, re(state.b), state.z, o],
        [o, state.z.conj(), re(state.c), o],
        [state.w.conj(), o, o, re(state.d)],
    ])
}

/// Reads an X state back out of a dense matrix.
///
/// # Errors
///
/// [`Error::Contract`] when any entry outside the X sparsity pattern exceeds
/// [`tol::X_FORM_ABS`] or a diagonal entry has a non-negligible imaginary
/// part.
pub fn extract_x(m: &DensityMatrix4) -> Result<XState> {
    let x_positions = [
        (0, 0),
        (1, 1),
        (2, 2),
        (3, 3),
        (0, 3),
        (3, 0),
        (1, 2),
        (2, 1),
    ];
    for i in 0..4 {
        for j in 0..4 {
            if !x_positions.contains(&(i, j)) && m.get(i, j).norm() > tol::X_FORM_ABS {
                return Err(Error::Contract(format!(
                    "entry ({i}, {j}) = {} breaks the X sparsity pattern",
                    m.get(i, j)
                )));
            }
        }
    }
    for i in 0..4 {
        if m.get(i, i).im.abs() > tol::X_FORM_ABS {
            return Err(Error::Contract(format!(
                "diagonal entry {i} has imaginary part {}",
                m.get(i, i).im
            )));
        }
    }
    Ok(XState::new(
        m.get(0, 0).re,
        m.get(1, 1).re,
        m.get(2, 2).re,
        m.get(3, 3).re,
        m.get(0, 3),
        m.get(1, 2),
    ))
}

/// Populations and coherence of the one-excitation sector in the collective
/// basis: symmetric `|+> = (|10> + |01>)/sqrt(2)` and antisymmetric
/// `|-> = (|10> - |01>)/sqrt(2)` combinations. The antisymmetric state is
/// decoupled from the reservoir, which makes `rho_mm` a conserved quantity
/// of the dynamics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiantCoords {
    /// Population of the collectively enhanced (symmetric) state `|+>`.
    pub rho_pp: f64,
    /// Population of the decoupled (antisymmetric) state `|->`.
    pub rho_mm: f64,
    /// Coherence `<+| rho |->`.
    pub rho_pm: Complex64,
}

impl RadiantCoords {
    /// Inverse transform back to the product-basis components `(b, c, z)`.
    pub fn bcz(&self) -> (f64, f64, Complex64) {
        let b = 0.5 * (self.rho_pp + self.rho_mm) + self.rho_pm.re;
        let c = 0.5 * (self.rho_pp + self.rho_mm) - self.rho_pm.re;
        let z = Complex64::new(
            0.5 * (self.rho_pp - self.rho_mm),
            tol::RHO_PM_SIGN * self.rho_pm.im,
        );
        (b, c, z)
    }
}

/// Transforms the one-excitation sector of an X state into collective
/// coordinates:
///
/// ```text
/// rho_pp = (b + c)/2 + Re z
/// rho_mm = (b + c)/2 - Re z
/// rho_pm = (b - c)/2 + sign * i * Im z     (sign = RHO_PM_SIGN)
/// ```
///
/// The overall sign convention on the imaginary part is pinned in
/// [`tol::RHO_PM_SIGN`]; [`RadiantCoords::bcz`] inverts the map exactly.
///
/// # Examples
///
/// ```
/// use entdyn::{model, XState};
/// use num_complex::Complex64;
/// // The singlet lives entirely in the antisymmetric state.
/// let s = XState::new(0.0, 0.5, 0.5, 0.0,
///     Complex64::new(0.0, 0.0), Complex64::new(-0.5, 0.0));
/// let rc = model::radiant_coords(&s);
/// assert!((rc.rho_mm - 1.0).abs() < 1e-15 && rc.rho_pp.abs() < 1e-15);
/// ```
pub fn radiant_coords(state: &XState) -> RadiantCoords {
    RadiantCoords {
        rho_pp: 0.5 * (state.b + state.c) + state.z.re,
        rho_mm: 0.5 * (state.b + state.c) - state.z.re,
        rho_pm: Complex64::new(
            0.5 * (state.b - state.c),
            tol::RHO_PM_SIGN * state.z.im,
        ),
    }
}

/// The supported initial-state families.
///
/// `BellPhi`/`BellPsi` are the pure maximally general one-/two-excitation
/// superpositions `alpha |10> + e^{i theta} sqrt(1 - alpha^2) |01>` and
/// `alpha |00> + e^{i theta} sqrt(1 - alpha^2) |11>`; the `Ewl*` variants mix
/// them with the maximally mixed state with purity parameter `r` (the
/// extended Werner-like construction, reducing to the Bell-like case at
/// `r = 1`). `Werner` is the singlet-based special case, `WernerLike`
/// generalizes it to any of the four maximally entangled basis states,
/// `FactorizedMixed` is the product of identical single-qubit mixtures,
/// `SingleExcitation` is a generic mixed state with at most one excitation,
/// and `RawX` passes an explicit X state through unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum InitialStateSpec {
    /// Pure one-excitation superposition, weight `alpha2` on `|10>`.
    BellPhi { alpha2: f64, theta: f64 },
    /// Pure two-excitation superposition, weight `alpha2` on `|00>`.
    BellPsi { alpha2: f64, theta: f64 },
    /// One-excitation superposition mixed with identity, purity `r`.
    EwlPhi { r: f64, alpha2: f64, theta: f64 },
    /// Two-excitation superposition mixed with identity, purity `r`.
    EwlPsi { r: f64, alpha2: f64, theta: f64 },
    /// Singlet mixed with identity, purity `r`.
    Werner { r: f64 },
    /// Any of the four maximally entangled basis states (index 0-3) mixed
    /// with identity: 0 = symmetric one-excitation, 1 = singlet,
    /// 2 = `(|00> + |11>)/sqrt(2)`, 3 = `(|00> - |11>)/sqrt(2)`.
    WernerLike { r: f64, bell_index: usize },
    /// Product state of two identical single-qubit mixtures with excited
    /// population `alpha2` each.
    FactorizedMixed { alpha2: f64 },
    /// Generic mixed state with at most one excitation: populations
    /// `a, b, c` of `|00>, |10>, |01>` and coherences `j = <10|rho|00>`,
    /// `k = <01|rho|00>`, `z = <10|rho|01>`. The ground-state coherences
    /// `j, k` are validated for positivity but do not enter the X-sector
    /// dynamics or the concurrence, which is `2|z|` for this family.
    SingleExcitation {
        a: f64,
        b: f64,
        c: f64,
        j: Complex64,
        k: Complex64,
        z: Complex64,
    },
    /// Explicit X state, validated and passed through.
    RawX { state: XState },
}

fn check_unit_interval(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
        return Err(Error::Domain(format!("{name} = {v} outside [0, 1]")));
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if !theta.is_finite() {
        return Err(Error::Domain(format!("theta = {theta} is not finite")));
    }
    Ok(())
}

/// Density-matrix elements of the one-excitation superposition family mixed
/// with identity (`r = 1` gives the pure state).
fn ewl_phi_state(r: f64, alpha2: f64, theta: f64) -> XState {
    let alpha = alpha2.sqrt();
    let beta = (1.0 - alpha2).sqrt();
    let bg = (1.0 - r) / 4.0;
    XState::new(
        bg,
        r * alpha2 + bg,
        r * (1.0 - alpha2) + bg,
        bg,
        Complex64::new(0.0, 0.0),
        r * alpha * beta * Complex64::new(0.0, theta).exp(),
    )
}

/// Density-matrix elements of the two-excitation superposition family mixed
/// with identity.
fn ewl_psi_state(r: f64, alpha2: f64, theta: f64) -> XState {
    let alpha = alpha2.sqrt();
    let beta = (1.0 - alpha2).sqrt();
    let bg = (1.0 - r) / 4.0;
    XState::new(
        r * alpha2 + bg,
        bg,
        bg,
        r * (1.0 - alpha2) + bg,
        r * alpha * beta * Complex64::new(0.0, theta).exp(),
        Complex64::new(0.0, 0.0),
    )
}

/// Builds the exact density-matrix elements of an initial-state family
/// member.
///
/// # Errors
///
/// [`Error::Domain`] naming the offending parameter when it lies outside its
/// declared range, or when a `SingleExcitation`/`RawX` specification is not a
/// positive unit-trace state.
///
/// # Examples
///
/// ```
/// use entdyn::model::{construct_initial, InitialStateSpec};
/// // The pure singlet: Werner state at full purity.
/// let s = construct_initial(&InitialStateSpec::Werner { r: 1.0 }).unwrap();
/// assert_eq!((s.a, s.d), (0.0, 0.0));
/// assert_eq!((s.b, s.c), (0.5, 0.5));
/// assert_eq!(s.z.re, -0.5);
/// ```
pub fn construct_initial(spec: &InitialStateSpec) -> Result<XState> {
    let state = match *spec {
        InitialStateSpec::BellPhi { alpha2, theta } => {
            check_unit_interval("alpha2", alpha2)?;
            check_theta(theta)?;
            ewl_phi_state(1.0, alpha2, theta)
        }
        InitialStateSpec::BellPsi { alpha2, theta } => {
            check_unit_interval("alpha2", alpha2)?;
            check_theta(theta)?;
            ewl_psi_state(1.0, alpha2, theta)
        }
        InitialStateSpec::EwlPhi { r, alpha2, theta } => {
            check_unit_interval("r", r)?;
            check_unit_interval("alpha2", alpha2)?;
            check_theta(theta)?;
            ewl_phi_state(r, alpha2, theta)
        }
        InitialStateSpec::EwlPsi { r, alpha2, theta } => {
            check_unit_interval("r", r)?;
            check_unit_interval("alpha2", alpha2)?;
            check_theta(theta)?;
            ewl_psi_state(r, alpha2, theta)
        }
        InitialStateSpec::Werner { r } => {
            check_unit_interval("r", r)?;
            // Singlet mixed with identity = one-excitation family at
            // alpha^2 = 1/2, theta = pi; built directly to keep z exact.
            let bg = (1.0 - r) / 4.0;
            XState::new(
                bg,
                0.5 * r + bg,
                0.5 * r + bg,
                bg,
                Complex64::new(0.0, 0.0),
                Complex64::new(-0.5 * r, 0.0),
            )
        }
        InitialStateSpec::WernerLike { r, bell_index } => {
            check_unit_interval("r", r)?;
            let bg = (1.0 - r) / 4.0;
            let half = Complex64::new(0.5 * r, 0.0);
            match bell_index {
                0 => XState::new(
                    bg,
                    0.5 * r + bg,
                    0.5 * r + bg,
                    bg,
                    Complex64::new(0.0, 0.0),
                    half,
                ),
                1 => XState::new(
                    bg,
                    0.5 * r + bg,
                    0.5 * r + bg,
                    bg,
                    Complex64::new(0.0, 0.0),
                    -half,
                ),
                2 => XState::new(
                    0.5 * r + bg,
                    bg,
                    bg,
                    0.5 * r + bg,
                    half,
                    Complex64::new(0.0, 0.0),
                ),
                3 => XState::new(
                    0.5 * r + bg,
                    bg,
                    bg,
                    0.5 * r + bg,
                    -half,
                    Complex64::new(0.0, 0.0),
                ),
                _ => {
                    return Err(Error::Domain(format!(
                        "bell_index = {bell_index} outside 0..=3"
                    )))
                }
            }
        }
        InitialStateSpec::FactorizedMixed { alpha2 } => {
            check_unit_interval("alpha2", alpha2)?;
            let p = alpha2;
            let q = 1.0 - alpha2;
            XState::diagonal(p * p, p * q, p * q, q * q)
        }
        InitialStateSpec::SingleExcitation { a, b, c, j, k, z } => {
            for (name, v) in [("a", a), ("b", b), ("c", c)] {
                check_unit_interval(name, v)?;
            }
            if (a + b + c - 1.0).abs() > 1e-10 {
                return Err(Error::Domain(format!(
                    "single-excitation populations sum to {}, not 1",
                    a + b + c
                )));
            }
            // Positivity of the 3x3 one-excitation block: all principal
            // minors nonnegative.
            let tol2 = 1e-10;
            if j.norm_sqr() > a * b + tol2 {
                return Err(Error::Domain("coherence j violates |j|^2 <= a*b".into()));
            }
            if k.norm_sqr() > a * c + tol2 {
                return Err(Error::Domain("coherence k violates |k|^2 <= a*c".into()));
            }
            if z.norm_sqr() > b * c + tol2 {
                return Err(Error::Domain("coherence z violates |z|^2 <= b*c".into()));
            }
            let det = a * (b * c - z.norm_sqr()) - c * j.norm_sqr() - b * k.norm_sqr()
                + 2.0 * (j * z.conj() * k.conj()).re;
            if det < -tol2 {
                return Err(Error::Domain(format!(
                    "one-excitation block determinant {det:.3e} is negative"
                )));
            }
            XState::new(a, b, c, 0.0, Complex64::new(0.0, 0.0), z)
        }
        InitialStateSpec::RawX { state } => state,
    };
    state.validate()?;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reservoir_params_and_scaled_units() {
        let p = ReservoirParams::new(1.0, 1.0).unwrap();
        assert_abs_diff_eq!(p.gamma0(), 4.0, epsilon = 1e-15);
        assert!(ReservoirParams::new(0.0, 1.0).is_err());
        assert!(ReservoirParams::new(1.0, -2.0).is_err());

        for ratio in [5.0, 1.0, 0.2] {
            let s = ReservoirParams::from_coupling_ratio(ratio).unwrap();
            assert_abs_diff_eq!(s.gamma0(), 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(s.omega() / s.gamma(), ratio, epsilon = 1e-12);
        }
        // The three standard regimes in scaled units.
        let strong = ReservoirParams::from_coupling_ratio(5.0).unwrap();
        assert_abs_diff_eq!(strong.gamma(), 0.01, epsilon = 1e-15);
        assert_abs_diff_eq!(strong.omega(), 0.05, epsilon = 1e-15);
    }

    #[test]
    fn werner_full_purity_is_singlet() {
        let s = construct_initial(&InitialStateSpec::Werner { r: 1.0 }).unwrap();
        assert_eq!((s.a, s.b, s.c, s.d), (0.0, 0.5, 0.5, 0.0));
        assert_eq!(s.w, c64(0.0, 0.0));
        assert_eq!(s.z, c64(-0.5, 0.0));
        // Identical to the one-excitation family at alpha2 = 1/2, theta = pi.
        let e = construct_initial(&InitialStateSpec::EwlPhi {
            r: 1.0,
            alpha2: 0.5,
            theta: std::f64::consts::PI,
        })
        .unwrap();
        assert_abs_diff_eq!(e.z.re, s.z.re, epsilon = 1e-15);
        assert!(e.z.im.abs() < 1e-15);
        assert_eq!((e.a, e.b, e.c, e.d), (s.a, s.b, s.c, s.d));
    }

    #[test]
    fn identity_mixture_limit() {
        let s = construct_initial(&InitialStateSpec::EwlPsi {
            r: 0.0,
            alpha2: 0.3,
            theta: 1.0,
        })
        .unwrap();
        assert_eq!((s.a, s.b, s.c, s.d), (0.25, 0.25, 0.25, 0.25));
        assert_eq!(s.w, c64(0.0, 0.0));
        assert_eq!(s.z, c64(0.0, 0.0));
    }

    #[test]
    fn two_excitation_family_elements() {
        let (r, alpha2, theta) = (0.8, 0.3, 0.7);
        let s = construct_initial(&InitialStateSpec::EwlPsi { r, alpha2, theta }).unwrap();
        let bg = (1.0 - r) / 4.0;
        assert_abs_diff_eq!(s.a, r * alpha2 + bg, epsilon = 1e-15);
        assert_abs_diff_eq!(s.b, bg, epsilon = 1e-15);
        assert_abs_diff_eq!(s.c, bg, epsilon = 1e-15);
        assert_abs_diff_eq!(s.d, r * (1.0 - alpha2) + bg, epsilon = 1e-15);
        let mag = r * alpha2.sqrt() * (1.0 - alpha2).sqrt();
        assert_abs_diff_eq!(s.w.norm(), mag, epsilon = 1e-15);
        assert_abs_diff_eq!(s.w.arg(), theta, epsilon = 1e-15);
        assert_eq!(s.z, c64(0.0, 0.0));
        s.validate().unwrap();
    }

    #[test]
    fn factorized_product_state() {
        let s = construct_initial(&InitialStateSpec::FactorizedMixed { alpha2: 0.75 }).unwrap();
        assert_abs_diff_eq!(s.a, 0.5625, epsilon = 1e-15);
        assert_abs_diff_eq!(s.b, 0.1875, epsilon = 1e-15);
        assert_abs_diff_eq!(s.c, 0.1875, epsilon = 1e-15);
        assert_abs_diff_eq!(s.d, 0.0625, epsilon = 1e-15);
        assert_eq!(s.w, c64(0.0, 0.0));
        assert_eq!(s.z, c64(0.0, 0.0));
    }

    #[test]
    fn parameter_range_checks() {
        assert!(construct_initial(&InitialStateSpec::Werner { r: 1.2 }).is_err());
        assert!(construct_initial(&InitialStateSpec::BellPhi {
            alpha2: -0.1,
            theta: 0.0
        })
        .is_err());
        assert!(construct_initial(&InitialStateSpec::WernerLike {
            r: 0.5,
            bell_index: 4
        })
        .is_err());
        // Unphysical raw X state: coherence exceeding its block bound.
        let bad = XState::new(0.5, 0.0, 0.0, 0.5, c64(0.9, 0.0), c64(0.0, 0.0));
        assert!(construct_initial(&InitialStateSpec::RawX { state: bad }).is_err());
    }

    #[test]
    fn single_excitation_positivity() {
        let ok = InitialStateSpec::SingleExcitation {
            a: 0.2,
            b: 0.5,
            c: 0.3,
            j: c64(0.1, 0.05),
            k: c64(0.0, -0.1),
            z: c64(0.2, 0.1),
        };
        let s = construct_initial(&ok).unwrap();
        assert_eq!(s.d, 0.0);
        assert_eq!(s.w, c64(0.0, 0.0));
        assert_eq!(s.z, c64(0.2, 0.1));

        let bad = InitialStateSpec::SingleExcitation {
            a: 0.2,
            b: 0.5,
            c: 0.3,
            j: c64(0.4, 0.0), // |j|^2 > a*b
            k: c64(0.0, 0.0),
            z: c64(0.0, 0.0),
        };
        assert!(construct_initial(&bad).is_err());
    }

    #[test]
    fn dense_round_trip() {
        let s = construct_initial(&InitialStateSpec::EwlPsi {
            r: 0.6,
            alpha2: 0.35,
            theta: 2.0,
        })
        .unwrap();
        let m = to_dense(&s);
        assert_abs_diff_eq!(m.trace(), 1.0, epsilon = 1e-12);
        assert_eq!(m.get(0, 3), s.w);
        assert_eq!(m.get(3, 0), s.w.conj());
        let back = extract_x(&m).unwrap();
        assert_eq!(back, s);

        // Dense singlet matrix has the documented entries.
        let singlet = construct_initial(&InitialStateSpec::Werner { r: 1.0 }).unwrap();
        let ms = to_dense(&singlet);
        assert_eq!(ms.get(1, 1), c64(0.5, 0.0));
        assert_eq!(ms.get(2, 2), c64(0.5, 0.0));
        assert_eq!(ms.get(1, 2), c64(-0.5, 0.0));
        assert_eq!(ms.get(0, 0), c64(0.0, 0.0));
    }

    #[test]
    fn collective_coordinate_limits() {
        // Singlet: all weight on the decoupled antisymmetric state.
        let singlet = XState::new(0.0, 0.5, 0.5, 0.0, c64(0.0, 0.0), c64(-0.5, 0.0));
        let rc = radiant_coords(&singlet);
        assert_abs_diff_eq!(rc.rho_mm, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rc.rho_pp, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rc.rho_pm.norm(), 0.0, epsilon = 1e-15);

        // Symmetric combination: all weight on the enhanced state.
        let sym = XState::new(0.0, 0.5, 0.5, 0.0, c64(0.0, 0.0), c64(0.5, 0.0));
        let rc = radiant_coords(&sym);
        assert_abs_diff_eq!(rc.rho_pp, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rc.rho_mm, 0.0, epsilon = 1e-15);

        // Bare |10>: equal collective populations, half-unit coherence.
        let ten = XState::diagonal(0.0, 1.0, 0.0, 0.0);
        let rc = radiant_coords(&ten);
        assert_abs_diff_eq!(rc.rho_pp, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rc.rho_mm, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rc.rho_pm.norm(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn collective_round_trip() {
        let s = XState::new(0.1, 0.3, 0.25, 0.35, c64(0.0, 0.0), c64(0.11, -0.17));
        let (b, c, z) = radiant_coords(&s).bcz();
        assert_abs_diff_eq!(b, s.b, epsilon = 1e-15);
        assert_abs_diff_eq!(c, s.c, epsilon = 1e-15);
        assert_abs_diff_eq!((z - s.z).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn antisymmetric_population_formula() {
        // rho_mm for the one-excitation family matches its closed form
        // r(1 - 2 alpha sqrt(1-alpha^2) cos theta)/2 + (1-r)/4 exactly.
        for &(r, alpha2, theta) in &[(0.7, 0.3, 0.9), (1.0, 0.5, 0.0), (0.25, 0.8, 4.0)] {
            let s = construct_initial(&InitialStateSpec::EwlPhi { r, alpha2, theta }).unwrap();
            let rc = radiant_coords(&s);
            let alpha = alpha2.sqrt();
            let beta = (1.0 - alpha2).sqrt();
            let want = r * (1.0 - 2.0 * alpha * beta * theta.cos()) / 2.0 + (1.0 - r) / 4.0;
            assert_abs_diff_eq!(rc.rho_mm, want, epsilon = 1e-14);
        }
    }
}
