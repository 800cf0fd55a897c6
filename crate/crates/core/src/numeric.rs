//! Dense complex linear algebra and univariate root finding at the sizes
//! the genus-9 experiments need (degree 4, a handful of unknowns).
#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

type C = Complex64;

const QR_MAX_SWEEPS: usize = 500;

/// Evaluates `Σ coeffs[k] x^k` and its derivative by Horner's rule.
pub fn horner(coeffs: &[C], x: C) -> (C, C) {
    let mut p = C::zero();
    let mut dp = C::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// All complex roots of `Σ coeffs[k] x^k`, via eigenvalues of the companion
/// matrix followed by Newton polishing. Trailing (leading-power) zero
/// coefficients lower the degree.
pub fn poly_roots(coeffs: &[C]) -> Result<Vec<C>> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::SolverFailure);
    }
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].norm() <= scale * 1e-14 {
        deg -= 1;
    }
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    // companion matrix in upper Hessenberg form: first row -c_{n-1-j}/c_n
    let mut h = vec![vec![C::zero(); deg]; deg];
    for j in 0..deg {
        h[0][j] = -coeffs[deg - 1 - j] / lead;
    }
    for i in 1..deg {
        h[i][i - 1] = C::new(1.0, 0.0);
    }
    let mut roots = hessenberg_eigenvalues(h)?;
    for r in roots.iter_mut() {
        *r = newton_polish(&coeffs[..=deg], *r, 4);
    }
    Ok(roots)
}

/// Newton iteration on a univariate polynomial, stopping early when a step
/// would increase the residual.
pub fn newton_polish(coeffs: &[C], mut x: C, steps: usize) -> C {
    for _ in 0..steps {
        let (p, dp) = horner(coeffs, x);
        if dp.norm() == 0.0 {
            break;
        }
        let next = x - p / dp;
        if horner(coeffs, next).0.norm() >= p.norm() {
            break;
        }
        x = next;
    }
    x
}

/// Shifted QR on an upper Hessenberg matrix with Givens rotations,
/// Wilkinson shifts and deflation from the bottom.
fn hessenberg_eigenvalues(mut h: Vec<Vec<C>>) -> Result<Vec<C>> {
    let n = h.len();
    let mut out = Vec::with_capacity(n);
    let mut hi = n;
    let mut sweeps = 0;
    while hi > 0 {
        if hi == 1 {
            out.push(h[0][0]);
            break;
        }
        let k = hi - 1;
        let small = 1e-15 * (h[k][k].norm() + h[k - 1][k - 1].norm()).max(1e-300);
        if h[k][k - 1].norm() <= small {
            out.push(h[k][k]);
            hi -= 1;
            sweeps = 0;
            continue;
        }
        sweeps += 1;
        if sweeps > QR_MAX_SWEEPS {
            return Err(Error::SolverFailure);
        }
        // find the start of the unreduced block
        let mut lo = k - 1;
        while lo > 0 {
            let s = 1e-15 * (h[lo][lo].norm() + h[lo - 1][lo - 1].norm());
            if h[lo][lo - 1].norm() <= s {
                h[lo][lo - 1] = C::zero();
                break;
            }
            lo -= 1;
        }
        let mu = if sweeps % 11 == 0 {
            // exceptional shift to break cycles
            h[k][k] + C::new(h[k][k - 1].norm(), 0.0)
        } else {
            wilkinson_shift(h[k - 1][k - 1], h[k - 1][k], h[k][k - 1], h[k][k])
        };
        qr_sweep(&mut h, lo, hi, mu);
    }
    Ok(out)
}

fn wilkinson_shift(a: C, b: C, c: C, d: C) -> C {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det * 4.0).sqrt();
    let l1 = (tr + disc) / 2.0;
    let l2 = (tr - disc) / 2.0;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit shifted QR step `H - μI = QR`, `H <- RQ + μI` on rows/cols `lo..hi`.
fn qr_sweep(h: &mut [Vec<C>], lo: usize, hi: usize, mu: C) {
    let n = h.len();
    for i in lo..hi {
        h[i][i] -= mu;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi - 1 {
        let (x, y) = (h[k][k], h[k + 1][k]);
        let r = libm::sqrt(x.norm_sqr() + y.norm_sqr());
        let (c, s) = if r == 0.0 { (C::new(1.0, 0.0), C::zero()) } else { (x / r, y / r) };
        // G = [[c*, s*], [-s, c]] applied to rows k, k+1
        for j in k..n {
            let (a, b) = (h[k][j], h[k + 1][j]);
            h[k][j] = c.conj() * a + s.conj() * b;
            h[k + 1][j] = -s * a + c * b;
        }
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = lo + idx;
        // right-multiply by G^H on columns k, k+1
        for i in 0..=(k + 1).min(hi - 1) {
            let (a, b) = (h[i][k], h[i][k + 1]);
            h[i][k] = a * c + b * s;
            h[i][k + 1] = -a * s.conj() + b * c.conj();
        }
    }
    for i in lo..hi {
        h[i][i] += mu;
    }
}

/// Solves the square system `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve(mut a: Vec<Vec<C>>, mut b: Vec<C>) -> Result<Vec<C>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: a.len() });
    }
    let scale = a.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm())).expect("nonempty range");
        if a[piv][col].norm() <= scale * 1e-14 {
            return Err(Error::SolverFailure);
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in (col + 1)..n {
            let f = a[r][col] / a[col][col];
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let v = a[col][c];
                a[r][c] -= f * v;
            }
            let v = b[col];
            b[r] -= f * v;
        }
    }
    let mut x = vec![C::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r];
        for c in (r + 1)..n {
            acc -= a[r][c] * x[c];
        }
        x[r] = acc / a[r][r];
    }
    Ok(x)
}

/// Minimum-norm Gauss-Newton step for `m <= n` equations:
/// `dx = J^H (J J^H)^{-1} (-f)`.
pub fn min_norm_step(jac: &[Vec<C>], f: &[C]) -> Result<Vec<C>> {
    let m = f.len();
    let n = jac.first().map_or(0, Vec::len);
    let mut gram = vec![vec![C::zero(); m]; m];
    for i in 0..m {
        for j in 0..m {
            gram[i][j] = (0..n).map(|k| jac[i][k] * jac[j][k].conj()).sum();
        }
    }
    let y = solve(gram, f.iter().map(|v| -v).collect())?;
    Ok((0..n).map(|k| (0..m).map(|i| jac[i][k].conj() * y[i]).sum()).collect())
}

/// Gauss-Newton on `f(x) = 0` with analytic Jacobian, renormalizing `x` to
/// unit max-magnitude in blocks of `block` coordinates after each step.
/// Returns the final point and the largest residual magnitude.
pub fn gauss_newton<Fun>(mut x: Vec<C>, block: usize, iters: usize, tol: f64, mut system: Fun) -> Result<(Vec<C>, f64)>
where
    Fun: FnMut(&[C]) -> (Vec<C>, Vec<Vec<C>>),
{
    normalize_blocks(&mut x, block)?;
    let mut res = f64::INFINITY;
    for _ in 0..iters {
        let (f, j) = system(&x);
        res = f.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if !res.is_finite() {
            return Err(Error::SolverFailure);
        }
        if res < tol {
            break;
        }
        let dx = min_norm_step(&j, &f)?;
        for (xi, d) in x.iter_mut().zip(dx) {
            *xi += d;
        }
        normalize_blocks(&mut x, block)?;
    }
    let (f, _) = system(&x);
    res = res.min(f.iter().map(|v| v.norm()).fold(0.0, f64::max));
    Ok((x, res))
}

fn normalize_blocks(x: &mut [C], block: usize) -> Result<()> {
    for chunk in x.chunks_mut(block) {
        let piv = chunk.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or_default();
        if piv.norm() == 0.0 || !piv.norm().is_finite() {
            return Err(Error::SolverFailure);
        }
        for c in chunk.iter_mut() {
            *c /= piv;
        }
    }
    Ok(())
}
