//! Independent numerical oracles shared by the integration tests.
#![allow(dead_code)]

pub mod schema;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use specgraph::graph::{GraphEdge, GraphNode, SpectralMultigraph};

pub type C = Complex64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_c(rng: &mut ChaCha8Rng) -> C {
    C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Coefficients (ascending) of `lead * prod (z - r_k)`.
pub fn expand_roots(roots: &[C], lead: C) -> Vec<C> {
    let mut c = vec![lead];
    for &r in roots {
        let mut next = vec![C::new(0.0, 0.0); c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        c = next;
    }
    c
}

/// Largest distance in a greedy nearest-neighbour pairing of two multisets,
/// each distance scaled by `max(1, |a|)`.
pub fn multiset_distance(a: &[C], b: &[C]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for &x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d / x.norm().max(1.0));
    }
    worst
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn lu_solve(a: &[C], n: usize, b: &[C]) -> Vec<C> {
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| m[i * n + k].norm().total_cmp(&m[j * n + k].norm())).unwrap();
        if piv != k {
            for c in 0..n {
                m.swap(k * n + c, piv * n + c);
            }
            x.swap(k, piv);
        }
        let d = m[k * n + k];
        let d = if d.norm() == 0.0 { C::new(1e-300, 0.0) } else { d };
        for i in k + 1..n {
            let f = m[i * n + k] / d;
            for c in k..n {
                let v = m[k * n + c];
                m[i * n + c] -= f * v;
            }
            let v = x[k];
            x[i] -= f * v;
        }
    }
    for k in (0..n).rev() {
        let s: C = (k + 1..n).map(|c| m[k * n + c] * x[c]).sum();
        let d = m[k * n + k];
        let d = if d.norm() == 0.0 { C::new(1e-300, 0.0) } else { d };
        x[k] = (x[k] - s) / d;
    }
    x
}

/// `min_x |(a - lambda I) x| / (|a|_F |x|)` estimated by two steps of
/// inverse iteration.
pub fn eigen_backward_error(a: &[C], n: usize, lambda: C) -> f64 {
    let fro = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let mut shifted = a.to_vec();
    for i in 0..n {
        shifted[i * n + i] -= lambda;
    }
    let mut x: Vec<C> = (0..n).map(|i| C::new(1.0, 0.3 * i as f64)).collect();
    for _ in 0..2 {
        x = lu_solve(&shifted, n, &x);
        let norm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for v in &mut x {
            *v /= norm;
        }
    }
    let r: f64 = (0..n).map(|i| (0..n).map(|j| shifted[i * n + j] * x[j]).sum::<C>().norm_sqr()).sum::<f64>().sqrt();
    r / fro
}

/// Eigenvalues of a Hermitian tridiagonal chain with hopping 1:
/// `2 cos(k pi / (n + 1))`.
pub fn chain_eigenvalues(n: usize) -> Vec<f64> {
    (1..=n).map(|k| 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos()).collect()
}

/// Row-major blob on an `n`-grid: random disks and bars, minus a few
/// small disks so that holes appear.
pub fn random_blob(rng: &mut ChaCha8Rng, n: usize) -> Vec<bool> {
    let mut bits = vec![false; n * n];
    let nf = n as f64;
    let disk = |bits: &mut Vec<bool>, cr: f64, cc: f64, rad: f64, v: bool| {
        for r in 0..n {
            for c in 0..n {
                if (r as f64 - cr).hypot(c as f64 - cc) <= rad {
                    bits[r * n + c] = v;
                }
            }
        }
    };
    for _ in 0..rng.gen_range(1..5) {
        let (cr, cc) = (rng.gen_range(3.0..nf - 3.0), rng.gen_range(3.0..nf - 3.0));
        disk(&mut bits, cr, cc, rng.gen_range(2.0..nf / 4.0), true);
    }
    for _ in 0..rng.gen_range(0..3) {
        let (r0, c0) = (rng.gen_range(2..n - 2), rng.gen_range(2..n - 2));
        let (len, thick) = (rng.gen_range(3..n / 2), rng.gen_range(1..4));
        let horizontal = rng.gen_bool(0.5);
        for a in 0..len {
            for t in 0..thick {
                let (r, c) = if horizontal { (r0 + t, c0 + a) } else { (r0 + a, c0 + t) };
                if r < n - 1 && c < n - 1 && r > 0 && c > 0 {
                    bits[r * n + c] = true;
                }
            }
        }
    }
    for _ in 0..rng.gen_range(0..4) {
        let (cr, cc) = (rng.gen_range(3.0..nf - 3.0), rng.gen_range(3.0..nf - 3.0));
        disk(&mut bits, cr, cc, rng.gen_range(0.8..3.0), false);
    }
    bits
}

/// Euler number for 8-connected foreground from 2x2 bit-quad counts
/// (Gray 1971): (Q1 - Q3 - 2 QD) / 4.
pub fn bitquad_euler8(bits: &[bool], n: usize) -> i64 {
    let at = |r: isize, c: isize| {
        r >= 0 && c >= 0 && (r as usize) < n && (c as usize) < n && bits[r as usize * n + c as usize]
    };
    let (mut q1, mut q3, mut qd) = (0i64, 0i64, 0i64);
    for r in -1..n as isize {
        for c in -1..n as isize {
            let q = [at(r, c), at(r, c + 1), at(r + 1, c), at(r + 1, c + 1)];
            match q.iter().filter(|b| **b).count() {
                1 => q1 += 1,
                3 => q3 += 1,
                2 if q[0] == q[3] => qd += 1,
                _ => {}
            }
        }
    }
    (q1 - q3 - 2 * qd) / 4
}

/// Topology of the skeleton multigraph computed without walking trails:
/// contract connected junction clusters, suppress degree-2 pixels, and give
/// each junction-free cycle one anchor. Returns (nodes, edges, sorted degrees).
pub fn reference_topology(bits: &[bool], n: usize) -> (usize, usize, Vec<usize>) {
    let set = |r: isize, c: isize| {
        r >= 0 && c >= 0 && (r as usize) < n && (c as usize) < n && bits[r as usize * n + c as usize]
    };
    // linked adjacency: diagonal steps only when no shared orthogonal pixel is set
    let adj = |i: usize| -> Vec<usize> {
        let (r, c) = ((i / n) as isize, (i % n) as isize);
        let mut out = Vec::new();
        for dr in -1..=1isize {
            for dc in -1..=1isize {
                if (dr, dc) == (0, 0) || !set(r + dr, c + dc) {
                    continue;
                }
                if dr != 0 && dc != 0 && (set(r + dr, c) || set(r, c + dc)) {
                    continue;
                }
                out.push(((r + dr) as usize) * n + (c + dc) as usize);
            }
        }
        out
    };
    let pix: Vec<usize> = (0..n * n).filter(|&i| bits[i]).collect();
    let deg: Vec<usize> = (0..n * n).map(|i| if bits[i] { adj(i).len() } else { 0 }).collect();
    // junction clusters
    let mut cluster = vec![usize::MAX; n * n];
    let mut clusters = 0;
    for &i in &pix {
        if deg[i] >= 3 && cluster[i] == usize::MAX {
            let mut stack = vec![i];
            cluster[i] = clusters;
            while let Some(j) = stack.pop() {
                for k in adj(j) {
                    if deg[k] >= 3 && cluster[k] == usize::MAX {
                        cluster[k] = clusters;
                        stack.push(k);
                    }
                }
            }
            clusters += 1;
        }
    }
    // components consisting only of degree-2 pixels are bare cycles
    let mut comp = vec![usize::MAX; n * n];
    let mut cycles = 0;
    for &i in &pix {
        if comp[i] != usize::MAX {
            continue;
        }
        let mut stack = vec![i];
        comp[i] = i;
        let mut only_path = true;
        while let Some(j) = stack.pop() {
            only_path &= deg[j] == 2;
            for k in adj(j) {
                if comp[k] == usize::MAX {
                    comp[k] = i;
                    stack.push(k);
                }
            }
        }
        cycles += only_path as usize;
    }
    let mut cluster_deg = vec![0usize; clusters];
    let mut pixel_edges = 0usize;
    let mut degrees = Vec::new();
    for &i in &pix {
        for k in adj(i) {
            if i < k && !(cluster[i] != usize::MAX && cluster[i] == cluster[k]) {
                pixel_edges += 1;
            }
            if cluster[i] != usize::MAX && cluster[k] != cluster[i] {
                cluster_deg[cluster[i]] += 1;
            }
        }
        match deg[i] {
            0 | 1 => degrees.push(deg[i]),
            _ => {}
        }
    }
    let path_pixels = pix.iter().filter(|&&i| deg[i] == 2).count();
    degrees.extend(cluster_deg);
    degrees.extend(std::iter::repeat_n(2, cycles));
    degrees.sort_unstable();
    let nodes = degrees.len();
    (nodes, pixel_edges - path_pixels + cycles, degrees)
}

/// Eigenvalues of a dense row-major complex matrix by Householder
/// reduction to Hessenberg form and Wilkinson-shifted Givens QR.
/// Textbook and unbalanced, kept separate from the library solver.
pub fn qr_eigenvalues(a: &[C], n: usize) -> Vec<C> {
    let mut h = a.to_vec();
    let at = |r: usize, c: usize| r * n + c;
    for k in 0..n.saturating_sub(2) {
        let alpha: f64 = (k + 1..n).map(|r| h[at(r, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let x0 = h[at(k + 1, k)];
        let phase = if x0.norm() == 0.0 { C::new(1.0, 0.0) } else { x0 / x0.norm() };
        let mut v: Vec<C> = (k + 1..n).map(|r| h[at(r, k)]).collect();
        v[0] += phase * alpha;
        let vn: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>();
        if vn == 0.0 {
            continue;
        }
        // H <- (I - 2vv*/v*v) H (I - 2vv*/v*v)
        for c in 0..n {
            let s: C = (0..v.len()).map(|i| v[i].conj() * h[at(k + 1 + i, c)]).sum::<C>() * (2.0 / vn);
            for i in 0..v.len() {
                h[at(k + 1 + i, c)] -= v[i] * s;
            }
        }
        for r in 0..n {
            let s: C = (0..v.len()).map(|i| h[at(r, k + 1 + i)] * v[i]).sum::<C>() * (2.0 / vn);
            for i in 0..v.len() {
                h[at(r, k + 1 + i)] -= s * v[i].conj();
            }
        }
        for r in k + 2..n {
            h[at(r, k)] = C::new(0.0, 0.0);
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut hi = n;
    let mut iters = 0;
    while hi > 0 {
        if hi == 1 {
            out.push(h[at(0, 0)]);
            break;
        }
        let mut lo = hi - 1;
        while lo > 0 {
            let s = h[at(lo - 1, lo - 1)].norm() + h[at(lo, lo)].norm();
            if h[at(lo, lo - 1)].norm() <= f64::EPSILON * s.max(f64::MIN_POSITIVE) {
                h[at(lo, lo - 1)] = C::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            out.push(h[at(hi - 1, hi - 1)]);
            hi -= 1;
            iters = 0;
            continue;
        }
        iters += 1;
        assert!(iters < 1000, "QR failed to converge");
        let (p, q, r, s) = (h[at(hi - 2, hi - 2)], h[at(hi - 2, hi - 1)], h[at(hi - 1, hi - 2)], h[at(hi - 1, hi - 1)]);
        let tr = p + s;
        let disc = ((p - s) * (p - s) * 0.25 + q * r).sqrt();
        let (m1, m2) = (tr * 0.5 + disc, tr * 0.5 - disc);
        let mut mu = if (m1 - s).norm() < (m2 - s).norm() { m1 } else { m2 };
        if iters % 11 == 0 {
            mu += C::new(h[at(hi - 1, hi - 2)].norm(), 0.0);
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            h[at(i, i)] -= mu;
        }
        for k in lo..hi - 1 {
            let (x, y) = (h[at(k, k)], h[at(k + 1, k)]);
            let nrm = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (cs, sn) = if nrm == 0.0 { (C::new(1.0, 0.0), C::new(0.0, 0.0)) } else { (x / nrm, y / nrm) };
            for c in k..n {
                let (u, w) = (h[at(k, c)], h[at(k + 1, c)]);
                h[at(k, c)] = cs.conj() * u + sn.conj() * w;
                h[at(k + 1, c)] = -sn * u + cs * w;
            }
            rots.push((cs, sn));
        }
        for (j, (cs, sn)) in rots.into_iter().enumerate() {
            let k = lo + j;
            for r in 0..(k + 2).min(n) {
                let (u, w) = (h[at(r, k)], h[at(r, k + 1)]);
                h[at(r, k)] = u * cs + w * sn;
                h[at(r, k + 1)] = -u * sn.conj() + w * cs.conj();
            }
        }
        for i in lo..hi {
            h[at(i, i)] += mu;
        }
    }
    out
}

/// Open-chain Toeplitz matrix with hopping `t[n]` on diagonal offset `n`.
pub fn toeplitz_chain(hops: &[(i32, C)], cells: usize) -> Vec<C> {
    let mut m = vec![C::new(0.0, 0.0); cells * cells];
    for &(off, t) in hops {
        for i in 0..cells {
            let j = i as i64 + off as i64;
            if (0..cells as i64).contains(&j) {
                m[i * cells + j as usize] += t;
            }
        }
    }
    m
}

fn random_value(rng: &mut ChaCha8Rng) -> f64 {
    match rng.gen_range(0..20) {
        0 => f64::NAN,
        1 => 0.0,
        2 => rng.gen_range(-1e-300..1e-300),
        3 => rng.gen_range(-1e12..1e12),
        _ => rng.gen_range(-5.0..5.0),
    }
}

/// Random multigraph with parallel edges, self-loops and non-finite attributes.
pub fn random_graph(rng: &mut ChaCha8Rng) -> SpectralMultigraph {
    let n = rng.gen_range(0..12);
    let nodes: Vec<GraphNode> = (0..n)
        .map(|id| GraphNode {
            id,
            pos: [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
            dos: random_value(rng),
            potential: random_value(rng),
        })
        .collect();
    let mut edges = Vec::new();
    if n > 0 {
        for _ in 0..rng.gen_range(0..3 * n) {
            let u = rng.gen_range(0..n);
            let v = if rng.gen_bool(0.15) { u } else { rng.gen_range(0..n) };
            let mut pts = vec![nodes[u].pos];
            for _ in 0..rng.gen_range(0..6) {
                pts.push([rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)]);
            }
            pts.push(nodes[v].pos);
            let weight = specgraph::graph::arc_length(&pts);
            edges.push(GraphEdge { u, v, weight, pts, avg_dos: random_value(rng), avg_potential: random_value(rng) });
            if rng.gen_bool(0.2) {
                edges.push(edges.last().unwrap().clone());
            }
        }
    }
    SpectralMultigraph { nodes, edges }
}
