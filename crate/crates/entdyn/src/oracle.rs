//! Independent reference implementations used as ground truth.
//!
//! Nothing here is on the fast path: these routines exist so that every
//! closed-form shortcut in [`crate::measures`] and [`crate::solutions`] can
//! be audited against a structurally different computation. The trusted base
//! is deliberately small — a cyclic Jacobi eigensolver for Hermitian 4x4
//! matrices, a characteristic-polynomial route (reusing
//! [`crate::laplace::poly_roots`]) for the non-Hermitian spin-flip product,
//! and seeded random-state generators that guarantee physicality by
//! construction (convex mixtures of pure states) rather than by projection.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::laplace::{poly_roots, Polynomial};
use crate::model::DensityMatrix4;
use crate::tol;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

type Mat4 = [[Complex64; 4]; 4];

fn mat_mul(x: &Mat4, y: &Mat4) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = ZERO;
            for k in 0..4 {
                acc += x[i][k] * y[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

fn frobenius(x: &Mat4) -> f64 {
    x.iter()
        .flatten()
        .map(|e| e.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Eigenvalues of a Hermitian 4x4 density matrix, sorted descending.
///
/// Cyclic Jacobi with complex rotations: unconditionally convergent at this
/// size, no external linear algebra. The eigenvalue sum reproduces the trace
/// to 1e-12 by construction (rotations are trace-preserving).
///
/// # Errors
///
/// [`Error::Domain`] if the matrix is not Hermitian within
/// [`tol::HERMITICITY_ABS`]; [`Error::Numerics`] if the sweep limit is hit
/// before the off-diagonal mass vanishes (not observed for valid input).
pub fn eig_hermitian4(m: &DensityMatrix4) -> Result<[f64; 4]> {
    Ok(eig_hermitian4_vectors(m)?.0)
}

/// As [`eig_hermitian4`], additionally returning the unitary of column
/// eigenvectors `V` with `m = V diag(lambda) V^dagger` to 1e-10.
pub fn eig_hermitian4_vectors(m: &DensityMatrix4) -> Result<([f64; 4], Mat4)> {
    let entries = m.entries();
    for i in 0..4 {
        for j in 0..4 {
            if (entries[i][j] - entries[j][i].conj()).norm() > tol::HERMITICITY_ABS {
                return Err(Error::Domain(format!(
                    "matrix is not Hermitian at entry ({i}, {j})"
                )));
            }
        }
    }

    let mut a = *entries;
    let mut v: Mat4 = [[ZERO; 4]; 4];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    let norm = frobenius(&a).max(1e-300);

    let mut converged = false;
    for _ in 0..tol::JACOBI_MAX_SWEEPS {
        let off: f64 = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= tol::JACOBI_OFF_REL * norm {
            converged = true;
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let tau = (a[p][p].re - a[q][q].re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (tau * tau + 1.0).sqrt())
                } else {
                    -1.0 / (-tau + (tau * tau + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let sp = s * phase;

                // Row update A <- G^dagger A, rows p and q.
                for k in 0..4 {
                    let (rp, rq) = (a[p][k], a[q][k]);
                    a[p][k] = c * rp + sp * rq;
                    a[q][k] = -sp.conj() * rp + c * rq;
                }
                // Column update A <- A G, and accumulate V <- V G.
                for k in 0..4 {
                    let (cp, cq) = (a[k][p], a[k][q]);
                    a[k][p] = c * cp + sp.conj() * cq;
                    a[k][q] = -sp * cp + c * cq;
                    let (vp, vq) = (v[k][p], v[k][q]);
                    v[k][p] = c * vp + sp.conj() * vq;
                    v[k][q] = -sp * vp + c * vq;
                }
            }
        }
    }
    if !converged {
        let off: f64 = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off > tol::JACOBI_OFF_REL * norm * 10.0 {
            return Err(Error::Numerics(format!(
                "Jacobi sweeps exhausted with off-diagonal mass {off:.3e}"
            )));
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[j][j].re.partial_cmp(&a[i][i].re).expect("finite"));
    let mut eigs = [0.0; 4];
    let mut vecs: Mat4 = [[ZERO; 4]; 4];
    for (slot, &i) in order.iter().enumerate() {
        eigs[slot] = a[i][i].re;
        for k in 0..4 {
            vecs[k][slot] = v[k][i];
        }
    }
    Ok((eigs, vecs))
}

/// Concurrence by the general spin-flip construction, with no X-form
/// shortcut: builds `R = rho (Y ⊗ Y) rho* (Y ⊗ Y)` explicitly, extracts its
/// eigenvalues through the characteristic polynomial (Faddeev–LeVerrier
/// coefficients, roots from [`poly_roots`]), and applies
/// `C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))`.
///
/// The coefficient recursion runs in compensated double-double arithmetic.
/// That is what makes the route viable as an oracle: spin-flip spectra are
/// routinely near-singular (every saturated X-state block pins an
/// eigenvalue near zero), so the low coefficients are tiny differences of
/// order-one products. Plain f64 accumulation leaves them with *absolute*
/// errors near machine epsilon, which the square root in Wootters' formula
/// amplifies to ~1e-4 concurrence errors; double-double keeps every
/// coefficient accurate *relative to its own magnitude*, after which the
/// tiny eigenvalues are recoverable to full working precision. Degenerate
/// root clusters are then re-resolved by [`resolve_real_spectrum`].
/// Agreement with the closed X-state form is below 1e-8 across random
/// state families; the remaining residual comes from forming `R` itself
/// in plain f64, whose entry rounding genuinely perturbs near-zero
/// eigenvalues by order epsilon before any polynomial work begins.
///
/// # Errors
///
/// [`Error::Numerics`] when an eigenvalue of `R` has imaginary part above
/// 1e-8 or a real part below −1e-8 (both impossible for a valid state and
/// indicating numerical breakdown); smaller negatives are clamped to zero.
pub fn wootters_bruteforce(rho: &DensityMatrix4) -> Result<f64> {
    // Y ⊗ Y in the product basis {|00>, |10>, |01>, |11>}: the anti-diagonal
    // (-1, 1, 1, -1).
    let mut yy: Mat4 = [[ZERO; 4]; 4];
    yy[0][3] = Complex64::new(-1.0, 0.0);
    yy[1][2] = Complex64::new(1.0, 0.0);
    yy[2][1] = Complex64::new(1.0, 0.0);
    yy[3][0] = Complex64::new(-1.0, 0.0);

    let mut conj_rho: Mat4 = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            conj_rho[i][j] = rho.get(i, j).conj();
        }
    }
    let rho_m = *rho.entries();
    let r = mat_mul(&mat_mul(&rho_m, &yy), &mat_mul(&conj_rho, &yy));

    // Characteristic polynomial lambda^4 + c3 l^3 + c2 l^2 + c1 l + c0 by
    // Faddeev–LeVerrier, carried in double-double precision.
    let rdd: [[Cdd; 4]; 4] = {
        let mut out = [[Cdd::ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = Cdd::from_c(r[i][j]);
            }
        }
        out
    };
    let trace = |m: &[[Cdd; 4]; 4]| {
        let mut t = Cdd::ZERO;
        for i in 0..4 {
            t = cdd_add(t, m[i][i]);
        }
        t
    };
    let add_diag = |m: &[[Cdd; 4]; 4], k: Cdd| {
        let mut out = *m;
        for (i, row) in out.iter_mut().enumerate() {
            row[i] = cdd_add(row[i], k);
        }
        out
    };
    let mul_r = |b: &[[Cdd; 4]; 4]| {
        let mut out = [[Cdd::ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Cdd::ZERO;
                for k in 0..4 {
                    acc = cdd_add(acc, cdd_mul(rdd[i][k], b[k][j]));
                }
                out[i][j] = acc;
            }
        }
        out
    };
    let m1 = rdd;
    let c3 = cdd_neg(trace(&m1));
    let m2 = mul_r(&add_diag(&m1, c3));
    let c2 = cdd_scale(cdd_neg(trace(&m2)), 0.5);
    let m3 = mul_r(&add_diag(&m2, c2));
    let c1 = cdd_div_f64(cdd_neg(trace(&m3)), 3.0);
    let m4 = mul_r(&add_diag(&m3, c1));
    let c0 = cdd_scale(cdd_neg(trace(&m4)), 0.25);
    let pc = [c0, c1, c2, c3, Cdd::ONE];

    let char_poly = Polynomial::new(vec![
        c0.to_c(),
        c1.to_c(),
        c2.to_c(),
        c3.to_c(),
        Complex64::new(1.0, 0.0),
    ]);

    // Absolute noise floor of the coefficient recursion: every intermediate
    // product is bounded by a power of the matrix norm, and each
    // double-double operation contributes relative rounding of order
    // epsilon^2. A coefficient at or below this floor carries no
    // information beyond "zero".
    let row_norm: f64 = (0..4)
        .map(|i| (0..4).map(|j| r[i][j].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let coeff_floor = 1024.0 * f64::EPSILON * f64::EPSILON * 1.0_f64.max(row_norm).powi(4);

    let raw = poly_roots(&char_poly)?;
    let eigs = resolve_real_spectrum(&raw, &pc, coeff_floor)?;

    let mut sqrts: Vec<f64> = Vec::with_capacity(4);
    for lam in eigs {
        if lam < -1e-8 {
            return Err(Error::Numerics(format!(
                "spin-flip spectrum eigenvalue {lam} is negative beyond tolerance"
            )));
        }
        sqrts.push(lam.max(0.0).sqrt());
    }
    sqrts.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
    Ok((sqrts[0] - sqrts[1] - sqrts[2] - sqrts[3]).max(0.0))
}

/// Turns the computed roots of a characteristic polynomial with a
/// theoretically real, non-negative spectrum into real eigenvalues.
///
/// An m-fold true eigenvalue makes the polynomial roots scatter into a
/// cluster of radius ~(coefficient noise)^(1/m), and the split is real
/// about as often as it is conjugate, so neither rejecting imaginary parts
/// nor trusting raw positions works for degenerate spectra. Every root is
/// first polished by double-double Newton iteration against the exact
/// coefficients: simple roots — however tiny — converge to working
/// precision, and only genuine degeneracies keep their scatter. Groups
/// within [`tol::SPECTRUM_CLUSTER_REL`] of each other (complete single
/// linkage, so chains merge) are then handed to [`resolve_local_factor`]
/// through their monic local factor: the polished outside roots are
/// deflated away by synthetic division in double-double, leaving
/// coefficients accurate relative to their own size however tiny the
/// cluster. A degenerate-at-zero pair (an X state with an empty
/// anti-diagonal block, say) thus yields a local quadratic with dust-sized
/// coefficients whose roots are the state's true near-zero eigenvalues
/// rather than epsilon-scale artifacts of the full quartic.
///
/// `coeff_floor` is the absolute noise floor of the coefficient
/// arithmetic; local coefficients at or below it are treated as exact
/// zeros. Eigenvalues with imaginary part beyond 1e-8 are a hard error:
/// after polishing and local re-resolution that pattern indicates
/// breakdown, not degeneracy.
fn resolve_real_spectrum(
    roots: &[Complex64],
    pc: &[Cdd; 5],
    coeff_floor: f64,
) -> Result<Vec<f64>> {
    let n = roots.len();
    let polished: Vec<Cdd> = roots.iter().map(|&r| polish_root(pc, r)).collect();
    let pol: Vec<Complex64> = polished.iter().map(|c| c.to_c()).collect();

    let mut out = Vec::with_capacity(n);
    for cluster in &cluster_roots(&pol, 1.0) {
        let m = cluster.len();
        if m == 1 {
            let lam = pol[cluster[0]];
            if lam.im.abs() > 1e-8 * 1.0_f64.max(lam.norm()) {
                return Err(Error::Numerics(format!(
                    "spin-flip spectrum eigenvalue {lam} has non-real part beyond tolerance"
                )));
            }
            out.push(lam.re);
            continue;
        }

        // Deflate every outside root to obtain the cluster's monic local
        // factor with coefficients accurate relative to their own size.
        let mut q: Vec<Cdd> = pc.to_vec();
        for idx in 0..n {
            if !cluster.contains(&idx) {
                q = deflate_root(&q, polished[idx]);
            }
        }
        let mut vals: Vec<Complex64> = Vec::with_capacity(m);
        resolve_local_factor(&q, coeff_floor, 0, &mut vals)?;
        debug_assert_eq!(vals.len(), m);
        for lam in vals {
            if lam.im.abs() > 1e-8 * 1.0_f64.max(lam.norm()) {
                return Err(Error::Numerics(format!(
                    "spin-flip spectrum eigenvalue {lam} has non-real part beyond tolerance"
                )));
            }
            out.push(lam.re);
        }
    }
    Ok(out)
}

/// Complete single-linkage clustering of root positions: labels merge until
/// no two groups hold members within [`tol::SPECTRUM_CLUSTER_REL`] times
/// the magnitude unit (`unit_floor`, or the members' own norms if larger),
/// so chained near-values end up together no matter which member seeded
/// the group. Returns the groups as index lists.
fn cluster_roots(points: &[Complex64], unit_floor: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in (i + 1)..n {
                if label[i] == label[j] {
                    continue;
                }
                let unit = unit_floor.max(points[i].norm()).max(points[j].norm());
                if (points[i] - points[j]).norm() <= tol::SPECTRUM_CLUSTER_REL * unit {
                    let (keep, drop) = (label[i].min(label[j]), label[i].max(label[j]));
                    for l in label.iter_mut() {
                        if *l == drop {
                            *l = keep;
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for lbl in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| label[i] == lbl).collect();
        if !members.is_empty() {
            clusters.push(members);
        }
    }
    clusters
}

/// Resolves the monic local factor `q` (double-double, ascending
/// coefficients) of one root cluster into eigenvalue estimates, recursing
/// through three reductions until only simple roots remain:
///
/// 1. *Trailing strip*: trailing coefficients at or below `coeff_floor` —
///    the absolute noise floor of the coefficient arithmetic — are
///    indistinguishable from zero and correspond to exact zero
///    eigenvalues. They must be stripped, not re-rooted: an m-fold zero
///    whose constant term is pure noise `eta` would otherwise scatter
///    roots at radius `eta^(1/m)` (around 1e-11 for a cubic), far above
///    the true eigenvalues, and the outer square root would turn that
///    into a visible concurrence error.
/// 2. *Split*: the factor is re-rooted at its own power-of-two scale and
///    the polished roots are re-clustered relative to that scale — the
///    ambient unit is gone, so a gap counts as soon as it beats this
///    factor's own scatter radius. Subclusters are resolved recursively
///    through their deflated factors; singletons are accepted as polished.
/// 3. *Centroid shift*: if the roots still form a single cluster, the
///    factor is Taylor-shifted to the root centroid `-q[m-1]/m`, exact to
///    working accuracy because the root sum is a single coefficient. A
///    genuine m-fold eigenvalue (a maximally mixed state's fourfold 1/16,
///    say) becomes an m-fold zero of the shifted factor, which the
///    trailing strip then recognizes; a near-degenerate cluster re-centres
///    at its own spread scale, where the next level's clustering can tell
///    its members apart.
///
/// After a shift the roots sum to zero, so they cannot re-form a single
/// off-origin cluster: every level either lowers the degree or precedes
/// one that does, and the depth bound is generous. Exhausting it means
/// the cluster structure is not self-consistent, and resolution fails
/// loudly rather than guess.
fn resolve_local_factor(
    q: &[Cdd],
    coeff_floor: f64,
    depth: usize,
    out: &mut Vec<Complex64>,
) -> Result<()> {
    let m = q.len() - 1;
    if m == 0 {
        return Ok(());
    }
    if depth > 8 {
        return Err(Error::Numerics(
            "degenerate spin-flip root cluster failed to resolve".into(),
        ));
    }

    let lc: Vec<Complex64> = q.iter().map(|c| c.to_c()).collect();
    let mut zeros = 0;
    while zeros < m && lc[zeros].norm() <= coeff_floor {
        zeros += 1;
    }
    if zeros > 0 {
        out.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(zeros));
        return resolve_local_factor(&q[zeros..], coeff_floor, depth, out);
    }
    if m == 1 {
        out.push(-lc[0]);
        return Ok(());
    }

    // Re-root at the factor's own magnitude scale. The scale factor is a
    // power of two, so the substitution is exact; without it a cluster far
    // below one would start the root iteration hopelessly far away and
    // the residual acceptance contract would be meaningless.
    let mut scale = 0.0_f64;
    for (i, c) in lc.iter().enumerate().take(m) {
        if c.norm() > 0.0 {
            scale = scale.max(c.norm().powf(1.0 / (m - i) as f64));
        }
    }
    let s = 2.0_f64.powi(scale.log2().round() as i32);
    let mut scaled = lc.clone();
    for (i, c) in scaled.iter_mut().enumerate().take(m) {
        for _ in 0..(m - i) {
            *c /= s;
        }
    }
    let local: Vec<Cdd> = poly_roots(&Polynomial::new(scaled))?
        .into_iter()
        .map(|r| polish_root(q, r * s))
        .collect();
    let pos: Vec<Complex64> = local.iter().map(|c| c.to_c()).collect();

    let groups = cluster_roots(&pos, s);
    if groups.len() == 1 {
        let mu = cdd_div_f64(cdd_neg(q[m - 1]), m as f64);
        let mut b = q.to_vec();
        for i in 0..m {
            for j in (i..m).rev() {
                b[j] = cdd_add(b[j], cdd_mul(mu, b[j + 1]));
            }
        }
        let base = out.len();
        resolve_local_factor(&b, coeff_floor, depth + 1, out)?;
        let shift = mu.to_c();
        for v in &mut out[base..] {
            *v += shift;
        }
        return Ok(());
    }
    for group in &groups {
        if group.len() == 1 {
            out.push(pos[group[0]]);
            continue;
        }
        let mut sub = q.to_vec();
        for idx in 0..m {
            if !group.contains(&idx) {
                sub = deflate_root(&sub, local[idx]);
            }
        }
        resolve_local_factor(&sub, coeff_floor, depth + 1, out)?;
    }
    Ok(())
}

/// Newton-polishes one root of the monic polynomial `pc` (double-double,
/// ascending coefficients), returning the best iterate by residual. Simple
/// roots — at any magnitude — converge to ~1e-30 relative accuracy;
/// members of a degenerate cluster merely stay near their scatter radius,
/// which is harmless because those are re-resolved through deflation of
/// the *other* roots, not used directly.
fn polish_root(pc: &[Cdd], start: Complex64) -> Cdd {
    let deg = pc.len() - 1;
    let eval = |x: Cdd| -> (Cdd, Cdd) {
        let mut p = pc[deg];
        let mut dp = Cdd::ZERO;
        for i in (0..deg).rev() {
            dp = cdd_add(cdd_mul(dp, x), p);
            p = cdd_add(cdd_mul(p, x), pc[i]);
        }
        (p, dp)
    };
    let mut x = Cdd::from_c(start);
    let mut best = x;
    let mut best_res = f64::INFINITY;
    for _ in 0..16 {
        let (p, dp) = eval(x);
        let res = p.to_c().norm();
        if res < best_res {
            best = x;
            best_res = res;
        }
        if res == 0.0 || dp.to_c().norm() == 0.0 {
            break;
        }
        let step = cdd_div(p, dp);
        x = cdd_sub(x, step);
        if step.to_c().norm() <= 1e-30 * x.to_c().norm() {
            break;
        }
    }
    let (p, _) = eval(x);
    if p.to_c().norm() < best_res {
        best = x;
    }
    best
}

/// Synthetic division of a monic double-double polynomial by `(x - s)`:
/// returns the monic quotient, discarding the remainder (the polynomial's
/// value at `s`, which is negligible for a polished root).
fn deflate_root(q: &[Cdd], s: Cdd) -> Vec<Cdd> {
    let deg = q.len() - 1;
    let mut out = vec![Cdd::ZERO; deg];
    let mut carry = q[deg];
    for i in (0..deg).rev() {
        out[i] = carry;
        carry = cdd_add(q[i], cdd_mul(carry, s));
    }
    out
}

// ---------------------------------------------------------------------------
// Minimal double-double arithmetic (error-free transformations), used only
// by the brute-force spin-flip oracle above. The characteristic polynomial
// of a near-singular matrix has low coefficients that are tiny differences
// of order-one products; keeping them accurate relative to their own
// magnitude needs roughly twice f64 precision, which these compensated
// primitives provide without an external dependency. Products use the
// Dekker split rather than FMA so results are identical across targets.
// ---------------------------------------------------------------------------

/// Unevaluated sum `hi + lo` with `|lo|` at most half an ulp of `hi`.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Exact float sum as a double-double; requires `|a| >= |b|` or `a == 0`.
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

/// Exact float sum as a double-double (Knuth, no magnitude assumption).
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd {
        hi: s,
        lo: (a - (s - bb)) + (b - bb),
    }
}

/// Dekker split into high and low halves of the mantissa.
fn split(a: f64) -> (f64, f64) {
    let c = 134_217_729.0 * a; // 2^27 + 1
    let hi = c - (c - a);
    (hi, a - hi)
}

/// Exact float product as a double-double.
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    Dd { hi: p, lo: err }
}

fn dd_add(a: Dd, b: Dd) -> Dd {
    let s = two_sum(a.hi, b.hi);
    let t = two_sum(a.lo, b.lo);
    let u = quick_two_sum(s.hi, s.lo + t.hi);
    quick_two_sum(u.hi, u.lo + t.lo)
}

fn dd_neg(a: Dd) -> Dd {
    Dd {
        hi: -a.hi,
        lo: -a.lo,
    }
}

fn dd_sub(a: Dd, b: Dd) -> Dd {
    dd_add(a, dd_neg(b))
}

fn dd_mul(a: Dd, b: Dd) -> Dd {
    let p = two_prod(a.hi, b.hi);
    quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi)
}

/// Double-double division with two refinement steps.
fn dd_div(a: Dd, b: Dd) -> Dd {
    let q0 = a.hi / b.hi;
    let r = dd_sub(a, dd_mul(Dd::from_f64(q0), b));
    let q1 = (r.hi + r.lo) / b.hi;
    let r2 = dd_sub(r, dd_mul(Dd::from_f64(q1), b));
    let q2 = (r2.hi + r2.lo) / b.hi;
    dd_add(quick_two_sum(q0, q1), Dd::from_f64(q2))
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy)]
struct Cdd {
    re: Dd,
    im: Dd,
}

impl Cdd {
    const ZERO: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    const ONE: Cdd = Cdd {
        re: Dd { hi: 1.0, lo: 0.0 },
        im: Dd::ZERO,
    };

    fn from_c(z: Complex64) -> Cdd {
        Cdd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    fn to_c(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

fn cdd_add(a: Cdd, b: Cdd) -> Cdd {
    Cdd {
        re: dd_add(a.re, b.re),
        im: dd_add(a.im, b.im),
    }
}

fn cdd_sub(a: Cdd, b: Cdd) -> Cdd {
    Cdd {
        re: dd_sub(a.re, b.re),
        im: dd_sub(a.im, b.im),
    }
}

fn cdd_neg(a: Cdd) -> Cdd {
    Cdd {
        re: dd_neg(a.re),
        im: dd_neg(a.im),
    }
}

fn cdd_mul(a: Cdd, b: Cdd) -> Cdd {
    Cdd {
        re: dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
        im: dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re)),
    }
}

/// Scale by a power of two (exact on both components).
fn cdd_scale(a: Cdd, s: f64) -> Cdd {
    Cdd {
        re: Dd {
            hi: a.re.hi * s,
            lo: a.re.lo * s,
        },
        im: Dd {
            hi: a.im.hi * s,
            lo: a.im.lo * s,
        },
    }
}

/// Componentwise division by a plain float.
fn cdd_div_f64(a: Cdd, b: f64) -> Cdd {
    Cdd {
        re: dd_div(a.re, Dd::from_f64(b)),
        im: dd_div(a.im, Dd::from_f64(b)),
    }
}

/// Complex double-double division via `a * conj(b) / |b|^2`.
fn cdd_div(a: Cdd, b: Cdd) -> Cdd {
    let den = dd_add(dd_mul(b.re, b.re), dd_mul(b.im, b.im));
    let nre = dd_add(dd_mul(a.re, b.re), dd_mul(a.im, b.im));
    let nim = dd_sub(dd_mul(a.im, b.re), dd_mul(a.re, b.im));
    Cdd {
        re: dd_div(nre, den),
        im: dd_div(nim, den),
    }
}

/// Which family of random states to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateFamily {
    /// X-form states: mixtures of pure states confined to the
    /// `{|00>, |11>}` or `{|10>, |01>}` planes.
    GeneralX,
    /// States with at most one excitation: mixtures of pure states in
    /// `span{|00>, |10>, |01>}` (population of `|11>` and both of its
    /// coherences identically zero).
    SingleExcitation,
    /// Unconstrained physical states: mixtures of Haar-like pure states on
    /// the full four-dimensional space.
    PhysicalDense,
}

/// Seeded random-state generator specification.
#[derive(Debug, Clone, Copy)]
pub struct RandomStateGen {
    /// Stream seed; identical seeds give identical sequences.
    pub seed: u64,
    /// Target family.
    pub family: StateFamily,
}

/// Standard normal via Box–Muller on the generator's uniforms.
fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Normalized Haar-like pure state supported on the given basis indices.
fn random_pure(rng: &mut ChaCha8Rng, support: &[usize]) -> [Complex64; 4] {
    let mut v = [ZERO; 4];
    loop {
        let mut norm2 = 0.0;
        for &i in support {
            v[i] = Complex64::new(normal(rng), normal(rng));
            norm2 += v[i].norm_sqr();
        }
        if norm2 > 1e-12 {
            let n = norm2.sqrt();
            for &i in support {
                v[i] /= n;
            }
            return v;
        }
    }
}

/// Deterministic sequence of `n` random density matrices from the requested
/// family. Physicality holds by construction: each state is a convex mixture
/// of one to four normalized pure states with exponential-spacing weights,
/// so positivity and unit trace are exact rather than enforced by
/// projection.
pub fn gen_states(gen: &RandomStateGen, n: usize) -> Vec<DensityMatrix4> {
    let mut rng = ChaCha8Rng::seed_from_u64(gen.seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let components = rng.gen_range(1..=4usize);
        let mut weights: Vec<f64> = (0..components)
            .map(|_| -f64::ln(rng.gen_range(f64::MIN_POSITIVE..1.0)))
            .collect();
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }

        let mut entries: Mat4 = [[ZERO; 4]; 4];
        for &w in &weights {
            let psi = match gen.family {
                StateFamily::GeneralX => {
                    if rng.gen::<bool>() {
                        random_pure(&mut rng, &[0, 3])
                    } else {
                        random_pure(&mut rng, &[1, 2])
                    }
                }
                StateFamily::SingleExcitation => random_pure(&mut rng, &[0, 1, 2]),
                StateFamily::PhysicalDense => random_pure(&mut rng, &[0, 1, 2, 3]),
            };
            for i in 0..4 {
                for j in 0..4 {
                    entries[i][j] += w * psi[i] * psi[j].conj();
                }
            }
        }
        out.push(
            DensityMatrix4::new(entries)
                .expect("mixtures of pure states are valid density matrices"),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{construct_initial, extract_x, to_dense, InitialStateSpec};
    use approx::assert_abs_diff_eq;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag_density(d: [f64; 4]) -> DensityMatrix4 {
        let mut entries = [[ZERO; 4]; 4];
        for i in 0..4 {
            entries[i][i] = Complex64::new(d[i], 0.0);
        }
        DensityMatrix4::new(entries).unwrap()
    }

    #[test]
    fn eig_diagonal_matrix() {
        let m = diag_density([0.4, 0.3, 0.2, 0.1]);
        let e = eig_hermitian4(&m).unwrap();
        for (got, want) in e.iter().zip([0.4, 0.3, 0.2, 0.1]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
        }
    }

    #[test]
    fn eig_singlet_is_pure() {
        let s = construct_initial(&InitialStateSpec::Werner { r: 1.0 }).unwrap();
        let e = eig_hermitian4(&to_dense(&s)).unwrap();
        assert_abs_diff_eq!(e[0], 1.0, epsilon = 1e-12);
        for &v in &e[1..] {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn eig_werner_spectrum() {
        // Half-purity singlet mixture: spectrum {(1+3r)/4, (1-r)/4 x3}.
        let s = construct_initial(&InitialStateSpec::Werner { r: 0.5 }).unwrap();
        let e = eig_hermitian4(&to_dense(&s)).unwrap();
        assert_abs_diff_eq!(e[0], 0.625, epsilon = 1e-12);
        for &v in &e[1..] {
            assert_abs_diff_eq!(v, 0.125, epsilon = 1e-12);
        }
    }

    #[test]
    fn eig_reconstruction() {
        let gen = RandomStateGen {
            seed: 7,
            family: StateFamily::PhysicalDense,
        };
        for m in gen_states(&gen, 20) {
            let (eigs, v) = eig_hermitian4_vectors(&m).unwrap();
            assert_abs_diff_eq!(eigs.iter().sum::<f64>(), m.trace(), epsilon = 1e-12);
            let mut recon = [[ZERO; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        recon[i][j] += v[i][k] * eigs[k] * v[j][k].conj();
                    }
                }
            }
            let mut resid = 0.0_f64;
            for i in 0..4 {
                for j in 0..4 {
                    resid = resid.max((recon[i][j] - m.get(i, j)).norm());
                }
            }
            assert!(resid < 1e-10, "reconstruction residual {resid:.2e}");
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        // Bypass the validated constructor to hit the Hermiticity check.
        let mut entries = [[ZERO; 4]; 4];
        entries[0][0] = c64(1.0, 0.0);
        entries[0][1] = c64(0.2, 0.0);
        entries[1][0] = c64(0.0, 0.3);
        let m = DensityMatrix4::from_valid(entries);
        assert!(matches!(eig_hermitian4(&m), Err(Error::Domain(_))));
    }

    #[test]
    fn spin_flip_bell_state() {
        let bell = construct_initial(&InitialStateSpec::BellPsi {
            alpha2: 0.5,
            theta: 0.0,
        })
        .unwrap();
        let c = wootters_bruteforce(&to_dense(&bell)).unwrap();
        // Triple-degenerate zero eigenvalue: sqrt of machine-level noise
        // bounds the achievable accuracy near 1e-8.
        assert_abs_diff_eq!(c, 1.0, epsilon = 5e-8);
    }

    #[test]
    fn spin_flip_maximally_mixed() {
        let m = diag_density([0.25; 4]);
        assert_abs_diff_eq!(wootters_bruteforce(&m).unwrap(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn spin_flip_werner_family() {
        // Werner concurrence is max(0, (3r-1)/2).
        for &r in &[0.0, 0.2, 1.0 / 3.0, 0.6, 1.0] {
            let s = construct_initial(&InitialStateSpec::Werner { r }).unwrap();
            let c = wootters_bruteforce(&to_dense(&s)).unwrap();
            let want = (0.0_f64).max((3.0 * r - 1.0) / 2.0);
            // r = 1 is the pure singlet with the degenerate-at-zero spectrum.
            assert_abs_diff_eq!(c, want, epsilon = 5e-8);
        }
    }

    #[test]
    fn generator_is_deterministic() {
        let gen = RandomStateGen {
            seed: 42,
            family: StateFamily::GeneralX,
        };
        let first = gen_states(&gen, 5);
        let second = gen_states(&gen, 5);
        for (x, y) in first.iter().zip(second.iter()) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn generator_family_invariants() {
        let x_states = gen_states(
            &RandomStateGen {
                seed: 3,
                family: StateFamily::GeneralX,
            },
            50,
        );
        for m in &x_states {
            let s = extract_x(m).expect("generated state must be X-form");
            s.validate().unwrap();
        }
        let one_exc = gen_states(
            &RandomStateGen {
                seed: 4,
                family: StateFamily::SingleExcitation,
            },
            50,
        );
        for m in &one_exc {
            assert_abs_diff_eq!(m.get(3, 3).norm(), 0.0, epsilon = 1e-15);
            for k in 0..3 {
                assert_abs_diff_eq!(m.get(k, 3).norm(), 0.0, epsilon = 1e-15);
            }
        }
        let dense = gen_states(
            &RandomStateGen {
                seed: 5,
                family: StateFamily::PhysicalDense,
            },
            50,
        );
        for m in &dense {
            // Constructor already validates; confirm spectra are nonnegative.
            let e = eig_hermitian4(m).unwrap();
            assert!(e[3] > -1e-12);
        }
    }
}
