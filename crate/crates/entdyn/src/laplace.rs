//! Rational Laplace-domain algebra and exact inversion to the time domain.
//!
//! The dynamical solutions in this crate arrive as proper rational functions
//! of the Laplace variable `s`. This module supplies everything needed to
//! turn such a function into a directly evaluable time-domain signal:
//!
//! * [`Polynomial`] — dense univariate polynomials over `Complex64`,
//! * [`poly_roots`] — simultaneous-iteration root finding with a residual
//!   acceptance contract,
//! * [`partial_fractions`] — pole/residue expansion (multiplicities handled
//!   by local series division) producing an [`ExponentialSum`],
//! * [`initial_value`] / [`final_value`] — the Abelian/Tauberian limits with
//!   validity checks,
//! * [`talbot_invert`] — an independent fixed-contour numerical inversion
//!   used to cross-audit the pole/residue route.
//!
//! Two independent inversion paths exist on purpose: agreement between them
//! is a runtime verification tool, not just a test-time one.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense univariate polynomial with complex coefficients in **ascending**
/// order: `coeffs[k]` multiplies `s^k`. Trailing near-zero coefficients are
/// trimmed on construction so that `degree` reflects the numerically
/// meaningful degree.
///
/// # Examples
///
/// ```
/// use entdyn::laplace::Polynomial;
/// let p = Polynomial::from_real(&[1.0, 2.0, 1.0]); // 1 + 2s + s^2
/// assert_eq!(p.degree(), 2);
/// assert_eq!(p.eval((1.0).into()).re, 4.0);
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending complex coefficients, trimming
    /// trailing coefficients below [`tol::POLY_TRIM_REL`] of the largest
    /// magnitude. An empty or all-zero input yields the zero polynomial.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    /// Builds a polynomial from ascending real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial { coeffs: vec![ZERO] }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Polynomial { coeffs: vec![ONE] }
    }

    /// Monic polynomial with the given roots: `prod_k (s - r_k)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Polynomial::one();
        for &r in roots {
            p = p.mul(&Polynomial::new(vec![-r, ONE]));
        }
        p
    }

    fn trim(&mut self) {
        let mag = self.max_coeff_mag();
        let cut = tol::POLY_TRIM_REL * mag;
        while self.coeffs.len() > 1 && self.coeffs.last().map_or(false, |c| c.norm() <= cut) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(ZERO);
        }
        if self.coeffs.len() == 1 && self.coeffs[0].norm() <= cut {
            self.coeffs[0] = ZERO;
        }
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn max_coeff_mag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Degree after trimming. The zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == ZERO
    }

    /// Ascending coefficient slice.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Leading (highest-order) coefficient.
    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().expect("coeffs never empty")
    }

    /// Horner evaluation at `s`.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::zero();
        }
        let d: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * (k as f64))
            .collect();
        Polynomial::new(d)
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Sum of two polynomials.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i] += a;
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            out[i] += b;
        }
        Polynomial::new(out)
    }

    /// Polynomial scaled by a complex constant.
    pub fn scale(&self, k: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    /// Taylor shift: coefficients of `p(center + u)` as a polynomial in `u`.
    /// Used to expand numerator and reduced denominator around a multiple
    /// pole when extracting higher-order residues.
    pub fn shifted(&self, center: Complex64) -> Polynomial {
        let n = self.coeffs.len() - 1;
        let mut a = self.coeffs.clone();
        for i in 0..n {
            for j in (i..n).rev() {
                let t = a[j + 1];
                a[j] += center * t;
            }
        }
        // Shifting can produce exact cancellations (e.g. at a root); keep the
        // raw coefficients so callers see the true local series, trimming only
        // the global tail.
        Polynomial::new(a)
    }

    /// Synthetic division by `(s - root)`: returns the quotient and the
    /// remainder `p(root)`.
    pub fn deflate(&self, root: Complex64) -> (Polynomial, Complex64) {
        let n = self.coeffs.len();
        if n == 1 {
            return (Polynomial::zero(), self.coeffs[0]);
        }
        let mut q = vec![ZERO; n - 1];
        let mut carry = self.coeffs[n - 1];
        for k in (0..n - 1).rev() {
            q[k] = carry;
            carry = self.coeffs[k] + root * carry;
        }
        (Polynomial { coeffs: q }, carry)
    }

    /// Whether every coefficient is real to within trimming tolerance.
    pub fn is_real(&self) -> bool {
        let cut = tol::POLY_TRIM_REL * self.max_coeff_mag();
        self.coeffs.iter().all(|c| c.im.abs() <= cut)
    }
}

/// A rational function of the Laplace variable, `num(s) / den(s)`, restricted
/// at construction to the proper case `deg num <= deg den` (everything this
/// crate produces is strictly proper; the boundary case is admitted so that
/// an impulse component can be *detected* rather than silently built).
#[derive(Debug, Clone)]
pub struct RationalLaplace {
    num: Polynomial,
    den: Polynomial,
}

impl RationalLaplace {
    /// Builds `num/den`.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if `den` is the zero polynomial and
    /// [`Error::Contract`] if `deg num > deg den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if !num.is_zero() && num.degree() > den.degree() {
            return Err(Error::Contract(format!(
                "improper transfer function: numerator degree {} exceeds denominator degree {}",
                num.degree(),
                den.degree()
            )));
        }
        Ok(RationalLaplace { num, den })
    }

    /// Numerator polynomial.
    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    /// Denominator polynomial.
    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// Pointwise evaluation `num(s)/den(s)`.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.num.eval(s) / self.den.eval(s)
    }
}

/// One term of an [`ExponentialSum`]: `coeff * t^(order-1) * exp(pole t) / (order-1)!`.
#[derive(Debug, Clone, Copy)]
pub struct ExpTerm {
    /// Pole location in the complex `s` plane.
    pub pole: Complex64,
    /// Pole order (1 for a simple pole).
    pub order: usize,
    /// Partial-fraction coefficient of `1/(s - pole)^order`.
    pub coeff: Complex64,
}

/// Closed-form time-domain signal `sum_k coeff_k t^(m_k - 1) e^(p_k t) / (m_k - 1)!`,
/// the inverse transform of a strictly proper rational function.
#[derive(Debug, Clone)]
pub struct ExponentialSum {
    terms: Vec<ExpTerm>,
}

impl ExponentialSum {
    /// The identically-zero signal.
    pub fn empty() -> Self {
        ExponentialSum { terms: Vec::new() }
    }

    /// Term list, sorted by pole (real part, then imaginary part, then order).
    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    /// Complex-valued evaluation at `t >= 0`. Use this for signals that are
    /// genuinely complex (coherences); real signals should go through
    /// [`eval_exp_sum`] to benefit from the conjugate-cancellation audit.
    pub fn eval_complex(&self, t: f64) -> Result<Complex64> {
        if t < 0.0 {
            return Err(Error::Domain(format!("evaluation at negative time t = {t}")));
        }
        let mut acc = ZERO;
        for term in &self.terms {
            let mut factorial = 1.0;
            for k in 1..term.order {
                factorial *= k as f64;
            }
            let tpow = t.powi(term.order as i32 - 1);
            acc += term.coeff * tpow / factorial * (term.pole * t).exp();
        }
        Ok(acc)
    }
}

/// Evaluates an exponential sum that is expected to be a **real** signal
/// (poles closed under conjugation with conjugate coefficients).
///
/// The imaginary residue after summation measures how well conjugate pairs
/// cancelled; leakage beyond [`tol::EXP_SUM_IMAG_ERR`] is a hard error, and
/// debug builds additionally assert the tighter [`tol::EXP_SUM_IMAG_WARN`].
///
/// # Errors
///
/// [`Error::Domain`] for `t < 0`; [`Error::Numerics`] when the imaginary
/// leakage shows the term set is not conjugate-closed.
pub fn eval_exp_sum(sum: &ExponentialSum, t: f64) -> Result<f64> {
    let v = sum.eval_complex(t)?;
    let scale = 1.0_f64.max(v.re.abs());
    if v.im.abs() > tol::EXP_SUM_IMAG_ERR * scale {
        return Err(Error::Numerics(format!(
            "imaginary leakage {:.3e} in a nominally real signal at t = {t}",
            v.im
        )));
    }
    debug_assert!(
        v.im.abs() <= tol::EXP_SUM_IMAG_WARN * scale,
        "imaginary leakage {:.3e} above warning level at t = {t}",
        v.im
    );
    Ok(v.re)
}

/// Finds all complex roots of `p`.
///
/// Degrees one and two use closed forms; higher degrees run Aberth–Ehrlich
/// simultaneous iteration from a scattered circle of initial guesses. Roots of
/// real-coefficient polynomials are snapped to the real axis / symmetrized
/// into exact conjugate pairs, and the result is sorted by (real, imaginary)
/// part for determinism.
///
/// Every returned root satisfies the residual contract
/// `|p(root)| <= POLY_ROOT_RESIDUAL_REL * max|coeff| * max(1, |root|)^deg`.
///
/// # Errors
///
/// [`Error::Domain`] for the zero polynomial; [`Error::Numerics`] if the
/// iteration stagnates without meeting the residual contract.
pub fn poly_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    if p.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }

    // Work on the monic version for iteration stability.
    let lead = p.leading();
    let monic: Vec<Complex64> = p.coeffs().iter().map(|&c| c / lead).collect();

    let mut roots = match n {
        1 => vec![-monic[0]],
        2 => quadratic_roots(monic[0], monic[1]),
        _ => aberth(&monic)?,
    };

    if p.is_real() {
        realign_real_poly_roots(&mut roots);
    }
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });

    // Residual acceptance contract against the *original* coefficients.
    let mag = p.max_coeff_mag();
    for &r in &roots {
        let bound = tol::POLY_ROOT_RESIDUAL_REL * mag * 1.0_f64.max(r.norm()).powi(n as i32);
        let res = p.eval(r).norm();
        if res > bound {
            return Err(Error::Numerics(format!(
                "root residual {res:.3e} exceeds contract bound {bound:.3e} at root {r}"
            )));
        }
    }
    Ok(roots)
}

/// Roots of the monic quadratic `s^2 + b s + c`, using the product-form
/// second root to avoid cancellation.
fn quadratic_roots(c: Complex64, b: Complex64) -> Vec<Complex64> {
    let disc = (b * b - 4.0 * c).sqrt();
    // Choose the sign that grows |b + sign*disc| (stable summation).
    let q = if (b.conj() * disc).re >= 0.0 {
        -(b + disc) * 0.5
    } else {
        -(b - disc) * 0.5
    };
    if q.norm() == 0.0 {
        vec![Complex64::new(0.0, 0.0), -b]
    } else {
        vec![q, c / q]
    }
}

/// Aberth–Ehrlich simultaneous iteration on a monic polynomial given by
/// ascending coefficients (implicit leading 1 **included** in `monic`).
fn aberth(monic: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = monic.len() - 1;
    let p = Polynomial {
        coeffs: monic.to_vec(),
    };
    let dp = p.derivative();

    // Cauchy-style inclusion radius and a scattered ring of initial guesses;
    // the 0.4 rad offset breaks real-axis symmetry that can stall iteration.
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let frac = (j as f64 + 1.0) / n as f64;
            let r = radius * (0.35 + 0.55 * frac);
            let th = 2.0 * std::f64::consts::PI * j as f64 / n as f64 + 0.4;
            Complex64::from_polar(r, th)
        })
        .collect();

    for _ in 0..tol::POLY_ROOT_MAX_ITERS {
        let mut max_step = 0.0_f64;
        for j in 0..n {
            let pv = p.eval(z[j]);
            let mut dv = dp.eval(z[j]);
            if dv.norm() < 1e-300 {
                dv = Complex64::new(1e-300, 0.0);
            }
            let w = pv / dv;
            let mut s = ZERO;
            for k in 0..n {
                if k != j {
                    let diff = z[j] - z[k];
                    if diff.norm() > 1e-300 {
                        s += diff.inv();
                    }
                }
            }
            let denom = ONE - w * s;
            let step = if denom.norm() < 1e-300 { w } else { w / denom };
            z[j] -= step;
            let rel = step.norm() / 1.0_f64.max(z[j].norm());
            max_step = max_step.max(rel);
        }
        if max_step < 1e-15 {
            break;
        }
    }
    Ok(z)
}

/// Snaps near-real roots of a real-coefficient polynomial onto the axis and
/// replaces approximate conjugate pairs by exact ones, so that downstream
/// residues cancel imaginary parts to machine precision.
fn realign_real_poly_roots(roots: &mut [Complex64]) {
    for r in roots.iter_mut() {
        if r.im.abs() <= tol::REAL_ROOT_SNAP_REL * 1.0_f64.max(r.norm()) {
            *r = Complex64::new(r.re, 0.0);
        }
    }
    let idx_pos: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].im > 0.0).collect();
    let mut idx_neg: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].im < 0.0).collect();
    for &i in &idx_pos {
        // Nearest unmatched lower-half root, compared through conjugation.
        let mut best: Option<(usize, f64)> = None;
        for (slot, &j) in idx_neg.iter().enumerate() {
            let d = (roots[i] - roots[j].conj()).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((slot, d));
            }
        }
        if let Some((slot, _)) = best {
            let j = idx_neg.remove(slot);
            let avg = 0.5 * (roots[i] + roots[j].conj());
            roots[i] = avg;
            roots[j] = avg.conj();
        }
    }
}

/// A pole cluster after merging: location, multiplicity.
#[derive(Debug, Clone, Copy)]
struct PoleGroup {
    pole: Complex64,
    mult: usize,
}

/// Merges sorted roots into pole groups using the relative separation
/// threshold [`tol::POLE_CLUSTER_REL`].
fn cluster_roots(roots: &[Complex64]) -> Vec<PoleGroup> {
    let mut groups: Vec<PoleGroup> = Vec::new();
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut members = vec![roots[i]];
        used[i] = true;
        for j in (i + 1)..roots.len() {
            if used[j] {
                continue;
            }
            let scale = 1.0_f64.max(roots[i].norm());
            if (roots[j] - roots[i]).norm() <= tol::POLE_CLUSTER_REL * scale {
                members.push(roots[j]);
                used[j] = true;
            }
        }
        let mean = members.iter().sum::<Complex64>() / members.len() as f64;
        // Keep exact-real clusters exactly real.
        let mean = if members.iter().all(|m| m.im == 0.0) {
            Complex64::new(mean.re, 0.0)
        } else {
            mean
        };
        groups.push(PoleGroup {
            pole: mean,
            mult: members.len(),
        });
    }
    groups
}

/// Expands a strictly proper rational function into pole/residue form and
/// returns it as a directly evaluable [`ExponentialSum`].
///
/// Multiple poles (root clusters within [`tol::POLE_CLUSTER_REL`]) are
/// resolved by deflating the denominator at the cluster mean and dividing the
/// local Taylor series of numerator and reduced denominator. The finished
/// expansion is audited by resumming it at probe points off the pole set and
/// comparing against the original function to [`tol::RESIDUE_RECONSTRUCT_REL`].
///
/// # Errors
///
/// * [`Error::Contract`] — impulse component above 1e-12 (numerator and
///   denominator degrees equal).
/// * [`Error::ClusteredPoles`] — a root cluster was detected but deflation
///   or the reconstruction audit shows it could not be resolved.
/// * [`Error::Numerics`] — root finding failed or the audit fails without a
///   cluster being involved.
pub fn partial_fractions(f: &RationalLaplace) -> Result<ExponentialSum> {
    let mut num = f.num().clone();
    let den = f.den();
    if num.is_zero() {
        return Ok(ExponentialSum::empty());
    }
    if num.degree() == den.degree() {
        let impulse = num.leading() / den.leading();
        if impulse.norm() > 1e-12 {
            return Err(Error::Contract(format!(
                "impulse component of weight {impulse} is outside the strictly proper domain"
            )));
        }
        // Degenerate leading coefficient: drop it and continue.
        let mut c = num.coeffs().to_vec();
        c.pop();
        num = Polynomial::new(c);
        if num.is_zero() {
            return Ok(ExponentialSum::empty());
        }
    }

    let roots = poly_roots(den)?;
    let mut groups = cluster_roots(&roots);
    if den.is_real() {
        // A real denominator can only have real poles or conjugate pairs.
        // Multiple-root scatter sometimes lands entirely in one half plane,
        // leaving the cluster mean a scatter-distance off the axis; an
        // off-axis multiple pole without a conjugate partner would poison
        // the expansion (complex residues with no cancellation), so snap
        // scatter-level imaginary parts to zero.
        for g in &mut groups {
            if g.pole.im != 0.0
                && g.pole.im.abs() <= tol::POLE_CLUSTER_REL * 1.0_f64.max(g.pole.norm())
            {
                g.pole = Complex64::new(g.pole.re, 0.0);
            }
        }
    }
    let had_cluster = groups.iter().any(|g| g.mult > 1);
    let cluster_members = || {
        groups
            .iter()
            .filter(|g| g.mult > 1)
            .map(|g| g.pole)
            .collect::<Vec<_>>()
    };

    let den_mag = den.max_coeff_mag();
    let num_d = num.derivative();
    let den_d = den.derivative();
    let den_dd = den_d.derivative();
    // Magnitude of the evaluation noise floor of `p` at `s`: rounding in
    // Horner is proportional to the sum of absolute term magnitudes.
    let eval_noise = |p: &Polynomial, s: Complex64| -> f64 {
        let r = s.norm();
        f64::EPSILON
            * p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c.norm() * r.powi(i as i32))
                .sum::<f64>()
    };
    let mut terms: Vec<ExpTerm> = Vec::new();
    // Per-term a-posteriori error estimates feeding the audit budget:
    // (coefficient error, pole-position error).
    let mut term_errs: Vec<(f64, f64)> = Vec::new();
    for g in &groups {
        if g.mult == 1 {
            // A small |den'| at a well-separated root is normal (it is a
            // product of many small pole distances), so no magnitude
            // threshold here: only an exactly vanishing derivative or a
            // non-finite residue indicates an unresolved multiple pole. The
            // reconstruction audit below certifies residue quality.
            let d1 = den.derivative().eval(g.pole);
            let coeff = num.eval(g.pole) / d1;
            if d1.norm() == 0.0 || !coeff.re.is_finite() || !coeff.im.is_finite() {
                return Err(Error::ClusteredPoles {
                    cluster: vec![g.pole],
                });
            }
            // Newton-step length bounds how far the computed root sits from
            // the true one; the polynomial value at the root is itself
            // noise-limited, so floor it at the evaluation noise level.
            let delta = den.eval(g.pole).norm().max(eval_noise(den, g.pole)) / d1.norm();
            // First-order sensitivity of num(p)/den'(p) to the root error,
            // plus the evaluation noise of the numerator itself.
            let coeff_err = (num_d.eval(g.pole).norm() * delta
                + coeff.norm() * den_dd.eval(g.pole).norm() * delta
                + eval_noise(&num, g.pole))
                / d1.norm();
            terms.push(ExpTerm {
                pole: g.pole,
                order: 1,
                coeff,
            });
            term_errs.push((coeff_err, delta));
        } else {
            // Deflate den m times at the cluster mean; large remainders mean
            // the cluster is not actually a multiple root.
            let mut reduced = den.clone();
            for _ in 0..g.mult {
                let (q, rem) = reduced.deflate(g.pole);
                let scale = den_mag * 1.0_f64.max(g.pole.norm()).powi(den.degree() as i32);
                if rem.norm() > 1e-6 * scale {
                    return Err(Error::ClusteredPoles {
                        cluster: cluster_members(),
                    });
                }
                reduced = q;
            }
            // Local series of num/reduced about the pole, to order mult-1.
            let a = num.shifted(g.pole);
            let b = reduced.shifted(g.pole);
            // As in the simple-pole case, smallness of reduced(pole) is not
            // by itself a failure; only division blow-up is.
            let b0 = b.coeffs()[0];
            if b0.norm() == 0.0 {
                return Err(Error::ClusteredPoles {
                    cluster: cluster_members(),
                });
            }
            let get = |p: &Polynomial, k: usize| p.coeffs().get(k).copied().unwrap_or(ZERO);
            let mut c = vec![ZERO; g.mult];
            for k in 0..g.mult {
                let mut acc = get(&a, k);
                for i in 1..=k {
                    acc -= get(&b, i) * c[k - i];
                }
                c[k] = acc / b0;
                if !c[k].re.is_finite() || !c[k].im.is_finite() {
                    return Err(Error::ClusteredPoles {
                        cluster: cluster_members(),
                    });
                }
            }
            // Multiplicity-m scatter: a residual r at the cluster mean maps
            // to a root displacement ~ (r / |den^(m)/m!|)^(1/m), with b0
            // playing the role of the scaled m-th derivative.
            let resid = den.eval(g.pole).norm().max(eval_noise(den, g.pole));
            let delta = (resid / b0.norm()).powf(1.0 / g.mult as f64);
            // f ~ sum_j c_j u^(j - m)  =>  coefficient of 1/(s-p)^(m-j) is c_j.
            for (j, &cj) in c.iter().enumerate() {
                terms.push(ExpTerm {
                    pole: g.pole,
                    order: g.mult - j,
                    coeff: cj,
                });
                // Coarse series-coefficient sensitivity: relative error grows
                // with the multiplicity.
                term_errs.push((cj.norm() * g.mult as f64 * delta, delta));
            }
        }
    }

    let mut paired: Vec<(ExpTerm, (f64, f64))> =
        terms.into_iter().zip(term_errs.into_iter()).collect();
    paired.sort_by(|(x, _), (y, _)| {
        x.pole
            .re
            .partial_cmp(&y.pole.re)
            .unwrap()
            .then(x.pole.im.partial_cmp(&y.pole.im).unwrap())
            .then(x.order.cmp(&y.order))
    });
    let (terms, term_errs): (Vec<ExpTerm>, Vec<(f64, f64)>) = paired.into_iter().unzip();
    let sum = ExponentialSum { terms };

    // Reconstruction audit at probe points far from every pole.
    let probe_r = 2.0 * (1.0 + roots.iter().map(|r| r.norm()).fold(0.0, f64::max));
    for k in 0..4 {
        let th = std::f64::consts::PI * (0.27 + 0.5 * k as f64);
        let s = Complex64::from_polar(probe_r, th);
        let direct = f.eval(s);
        let mut resummed = ZERO;
        let mut term_sum = 0.0;
        // Forward error bound on the resummation from the per-term
        // coefficient and pole-position uncertainties.
        let mut err_budget = 0.0;
        for (t, &(coeff_err, pole_err)) in sum.terms().iter().zip(term_errs.iter()) {
            let contrib = t.coeff / (s - t.pole).powi(t.order as i32);
            resummed += contrib;
            term_sum += contrib.norm();
            let dist = (s - t.pole).norm();
            err_budget += coeff_err / dist.powi(t.order as i32)
                + t.coeff.norm() * t.order as f64 * pole_err / dist.powi(t.order as i32 + 1);
        }
        let scale = direct.norm().max(num.max_coeff_mag() / den_mag);
        let allowed = tol::RESIDUE_RECONSTRUCT_REL * scale.max(1e-300)
            + tol::RESIDUE_CANCEL_GUARD * term_sum
            + tol::RESIDUE_ERROR_SAFETY * err_budget;
        if (direct - resummed).norm() > allowed {
            return if had_cluster {
                Err(Error::ClusteredPoles {
                    cluster: cluster_members(),
                })
            } else {
                Err(Error::Numerics(format!(
                    "partial-fraction resummation mismatch {:.3e} at probe {s}",
                    (direct - resummed).norm()
                )))
            };
        }
    }
    Ok(sum)
}

/// Initial value `f(0+) = lim_{s -> inf} s F(s)` of a proper rational
/// transform, read off the leading coefficients.
///
/// # Errors
///
/// [`Error::Contract`] when numerator and denominator degrees are equal with
/// a non-negligible leading ratio (impulse at the origin; no finite initial
/// value exists).
pub fn initial_value(f: &RationalLaplace) -> Result<Complex64> {
    let num = f.num();
    let den = f.den();
    if num.is_zero() {
        return Ok(ZERO);
    }
    let (dn, dd) = (num.degree(), den.degree());
    if dn + 1 == dd {
        Ok(num.leading() / den.leading())
    } else if dn + 1 < dd {
        Ok(ZERO)
    } else {
        let impulse = num.leading() / den.leading();
        if impulse.norm() <= 1e-12 {
            // Degenerate leading coefficient survived trimming; retry without it.
            let mut c = num.coeffs().to_vec();
            c.pop();
            let reduced = RationalLaplace::new(Polynomial::new(c), den.clone())?;
            initial_value(&reduced)
        } else {
            Err(Error::Contract(
                "impulse component: no finite initial value".into(),
            ))
        }
    }
}

/// Stationary value `lim_{t -> inf} f(t) = lim_{s -> 0} s F(s)`, valid only
/// when every denominator root lies strictly in the open left half plane,
/// except possibly a *simple* root at the origin.
///
/// # Errors
///
/// [`Error::NoStationaryValue`] when a pole sits in the closed right half
/// plane (beyond the allowed simple origin pole), including a repeated origin
/// pole.
pub fn final_value(f: &RationalLaplace) -> Result<Complex64> {
    let num = f.num();
    let den = f.den();
    if num.is_zero() {
        return Ok(ZERO);
    }
    let den_mag = den.max_coeff_mag();
    let origin_pole = den.coeffs()[0].norm() <= tol::POLY_TRIM_REL * den_mag;
    let reduced = if origin_pole {
        let mut c = den.coeffs().to_vec();
        c.remove(0);
        Polynomial::new(c)
    } else {
        den.clone()
    };
    if !reduced.is_zero() && reduced.degree() > 0 {
        for r in poly_roots(&reduced)? {
            if r.re >= -1e-12 * 1.0_f64.max(r.norm()) {
                return Err(Error::NoStationaryValue(format!(
                    "pole at {r} lies in the closed right half plane"
                )));
            }
        }
    } else if origin_pole && reduced.is_zero() {
        return Err(Error::NoStationaryValue(
            "denominator is a pure power of s".into(),
        ));
    }
    if origin_pole {
        Ok(num.eval(ZERO) / reduced.eval(ZERO))
    } else {
        Ok(ZERO)
    }
}

/// Numerically inverts a proper rational transform at time `t > 0` on a
/// fixed deformed contour, independent of the pole/residue route.
///
/// The contour uses [`tol::TALBOT_NODES`] nodes and an adaptive radius
/// `max(TALBOT_RADIUS_C1 / t, TALBOT_POLE_SAFETY * (2/pi) * max |Im p|)` over
/// the poles still relevant at `t` (see [`tol::TALBOT_POLE_CUTOFF`]); the
/// calibration notes on those constants document the measured worst-case
/// error of 3.3e-10 across the damping regimes treated here.
///
/// The denominator must be real-coefficient (every transform this crate
/// builds has a real denominator); complex numerators are handled by
/// inverting real and imaginary parts separately — see
/// [`talbot_invert_complex`]. This entry point asserts the result is real.
///
/// # Errors
///
/// [`Error::Domain`] for `t <= 0`; [`Error::Contract`] for a complex-
/// coefficient denominator; [`Error::Numerics`] when the nominally real
/// signal shows imaginary leakage.
pub fn talbot_invert(f: &RationalLaplace, t: f64) -> Result<f64> {
    let v = talbot_invert_complex(f, t)?;
    let scale = 1.0_f64.max(v.re.abs());
    if v.im.abs() > tol::EXP_SUM_IMAG_ERR * scale {
        return Err(Error::Numerics(format!(
            "imaginary leakage {:.3e} inverting a nominally real transform at t = {t}",
            v.im
        )));
    }
    Ok(v.re)
}

/// Contour inversion returning the full complex signal: real and imaginary
/// numerator parts are inverted as two independent real transforms over the
/// shared real denominator.
///
/// # Errors
///
/// As [`talbot_invert`], minus the realness audit.
pub fn talbot_invert_complex(f: &RationalLaplace, t: f64) -> Result<Complex64> {
    if t <= 0.0 {
        return Err(Error::Domain(format!(
            "contour inversion requires t > 0, got {t}"
        )));
    }
    if !f.den().is_real() {
        return Err(Error::Contract(
            "contour inversion requires a real-coefficient denominator".into(),
        ));
    }
    if f.num().is_zero() {
        return Ok(ZERO);
    }

    let poles = poly_roots(f.den())?;
    let mut max_im = 0.0_f64;
    for p in &poles {
        if p.re * t >= tol::TALBOT_POLE_CUTOFF {
            max_im = max_im.max(p.im.abs());
        }
    }
    let radius = (tol::TALBOT_RADIUS_C1 / t)
        .max(tol::TALBOT_POLE_SAFETY * (2.0 / std::f64::consts::PI) * max_im);

    let re_num: Vec<f64> = f.num().coeffs().iter().map(|c| c.re).collect();
    let im_num: Vec<f64> = f.num().coeffs().iter().map(|c| c.im).collect();
    let re_part = talbot_real(&Polynomial::from_real(&re_num), f.den(), t, radius);
    let im_part = if im_num.iter().all(|&c| c == 0.0) {
        0.0
    } else {
        talbot_real(&Polynomial::from_real(&im_num), f.den(), t, radius)
    };
    Ok(Complex64::new(re_part, im_part))
}

/// Fixed-contour summation for a real transform `num/den` at time `t` with
/// contour radius `r`: nodes `s(theta) = r theta (cot theta + i)` at
/// `theta_k = k pi / M`.
fn talbot_real(num: &Polynomial, den: &Polynomial, t: f64, r: f64) -> f64 {
    let m = tol::TALBOT_NODES;
    let fval = |s: Complex64| num.eval(s) / den.eval(s);

    let mut acc = 0.5 * (fval(Complex64::new(r, 0.0)) * (r * t).exp()).re;
    for k in 1..m {
        let theta = k as f64 * std::f64::consts::PI / m as f64;
        let cot = theta.cos() / theta.sin();
        let s = Complex64::new(r * theta * cot, r * theta);
        let sigma = theta + (theta * cot - 1.0) * cot;
        let w = Complex64::new(1.0, sigma);
        acc += ((s * t).exp() * fval(s) * w).re;
    }
    r / m as f64 * acc
}
