//! Dense complex eigenvalues: diagonal balancing, Householder reduction to
//! upper Hessenberg form, and single-shift implicit QR with deflation.
//!
//! Only eigenvalues are computed, so every rotation is restricted to the
//! active diagonal block.

use num_complex::Complex64;

use super::EigenError;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);

#[inline]
fn abs1(c: C) -> f64 {
    c.re.abs() + c.im.abs()
}

/// Scales rows and columns by powers of two so their off-diagonal norms are
/// comparable. Similarity transform; keeps Hessenberg structure.
pub(crate) fn balance(a: &mut [C], n: usize) {
    const RADIX: f64 = 2.0;
    const SQRDX: f64 = RADIX * RADIX;
    for _ in 0..100 {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += abs1(a[j * n + i]);
                    r += abs1(a[i * n + j]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g && f < 1e100 {
                f *= RADIX;
                c *= SQRDX;
            }
            g = r * RADIX;
            while c >= g && f > 1e-100 {
                f /= RADIX;
                c /= SQRDX;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    a[i * n + j] *= inv;
                    a[j * n + i] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Householder reduction to upper Hessenberg form, in place.
pub(crate) fn hessenberg(a: &mut [C], n: usize) {
    let mut v = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let phase = if x0 == ZERO { C::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        for i in k + 1..n {
            v[i] = a[i * n + k];
        }
        v[k + 1] -= alpha;
        let vnorm2: f64 = (k + 1..n).map(|i| v[i].norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        for j in k..n {
            let s: C = (k + 1..n).map(|i| v[i].conj() * a[i * n + j]).sum::<C>() * beta;
            for i in k + 1..n {
                a[i * n + j] -= v[i] * s;
            }
        }
        for i in 0..n {
            let s: C = (k + 1..n).map(|j| a[i * n + j] * v[j]).sum::<C>() * beta;
            for j in k + 1..n {
                a[i * n + j] -= s * v[j].conj();
            }
        }
        a[(k + 1) * n + k] = alpha;
        for i in k + 2..n {
            a[i * n + k] = ZERO;
        }
    }
}

/// Rotation `[c s; -conj(s) c]` mapping `(x, y)` to `(r, 0)`.
#[inline]
fn givens(x: C, y: C) -> (f64, C) {
    if y == ZERO {
        return (1.0, ZERO);
    }
    if x == ZERO {
        return (0.0, y.conj() / y.norm());
    }
    let xn = x.norm();
    let nrm = xn.hypot(y.norm());
    let c = xn / nrm;
    let s = (x / xn) * y.conj() / nrm;
    (c, s)
}

/// Eigenvalues of `[[a, b], [c, d]]`, the first being the one closer to `d`.
#[inline]
fn eig2(a: C, b: C, c: C, d: C) -> (C, C) {
    let scale = abs1(a) + abs1(b) + abs1(c) + abs1(d);
    if scale == 0.0 {
        return (ZERO, ZERO);
    }
    let (a, b, c, d) = (a / scale, b / scale, c / scale, d / scale);
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let l1 = mid + disc;
    let l2 = mid - disc;
    // recover the small eigenvalue from the determinant to avoid cancellation
    let (big, small) = if l1.norm() >= l2.norm() { (l1, l2) } else { (l2, l1) };
    let small = if big != ZERO { (a * d - b * c) / big } else { small };
    let (big, small) = (big * scale, small * scale);
    let d = d * scale;
    if (big - d).norm() <= (small - d).norm() {
        (big, small)
    } else {
        (small, big)
    }
}

/// Eigenvalues of an upper Hessenberg matrix (destroyed). `max_sweeps`
/// bounds the total number of QR sweeps.
pub(crate) fn hessenberg_qr(h: &mut [C], n: usize, max_sweeps: usize, out: &mut Vec<C>) -> Result<(), EigenError> {
    out.clear();
    out.resize(n, ZERO);
    if n == 0 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    let safe_min = f64::MIN_POSITIVE / eps;
    let mut hi = n - 1;
    let mut its = 0usize;
    let mut sweeps = 0usize;
    loop {
        // locate the start of the active unreduced block
        let mut l = hi;
        while l > 0 {
            let sub = abs1(h[l * n + l - 1]);
            if sub <= safe_min {
                h[l * n + l - 1] = ZERO;
                break;
            }
            let mut tst = abs1(h[(l - 1) * n + l - 1]) + abs1(h[l * n + l]);
            if tst == 0.0 {
                if l >= 2 {
                    tst += abs1(h[(l - 1) * n + l - 2]);
                }
                if l < hi {
                    tst += abs1(h[(l + 1) * n + l]);
                }
            }
            if sub <= eps * tst {
                h[l * n + l - 1] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            out[hi] = h[hi * n + hi];
            its = 0;
            if hi == 0 {
                return Ok(());
            }
            hi -= 1;
            continue;
        }
        if l + 1 == hi {
            let (e1, e2) = eig2(h[l * n + l], h[l * n + hi], h[hi * n + l], h[hi * n + hi]);
            out[hi] = e1;
            out[l] = e2;
            its = 0;
            if l == 0 {
                return Ok(());
            }
            hi = l - 1;
            continue;
        }
        sweeps += 1;
        if sweeps > max_sweeps {
            return Err(EigenError::NoConvergence { dim: n, sweeps: max_sweeps });
        }
        its += 1;
        let shift = if its.is_multiple_of(10) {
            // exceptional shift to break cycles
            h[hi * n + hi] + C::new(0.75 * h[hi * n + hi - 1].re.abs(), 0.0)
        } else {
            eig2(h[(hi - 1) * n + hi - 1], h[(hi - 1) * n + hi], h[hi * n + hi - 1], h[hi * n + hi]).0
        };
        let mut x = h[l * n + l] - shift;
        let mut y = h[(l + 1) * n + l];
        for k in l..hi {
            if k > l {
                x = h[k * n + k - 1];
                y = h[(k + 1) * n + k - 1];
            }
            let (c, s) = givens(x, y);
            let col0 = if k > l { k - 1 } else { l };
            for j in col0..=hi {
                let a = h[k * n + j];
                let b = h[(k + 1) * n + j];
                h[k * n + j] = a * c + s * b;
                h[(k + 1) * n + j] = -s.conj() * a + b * c;
            }
            if k > l {
                h[(k + 1) * n + k - 1] = ZERO;
            }
            let row1 = (k + 2).min(hi);
            for i in l..=row1 {
                let a = h[i * n + k];
                let b = h[i * n + k + 1];
                h[i * n + k] = a * c + b * s.conj();
                h[i * n + k + 1] = -s * a + b * c;
            }
        }
    }
}

/// Balancing, Hessenberg reduction and QR on a scratch copy.
pub(crate) fn dense_eigenvalues(a: &[C], n: usize, out: &mut Vec<C>) -> Result<(), EigenError> {
    let mut work = a.to_vec();
    balance(&mut work, n);
    hessenberg(&mut work, n);
    hessenberg_qr(&mut work, n, 100 * n.max(1), out)
}
