//! Binary images: mean thresholding, 2x2 dilation and topology-preserving
//! thinning (foreground 8-connected, background 4-connected).

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::field::{EnergyWindow, FieldKind, ScalarField};

/// Row-major binary grid sharing the geometry of a [`ScalarField`].
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryImage {
    pub window: EnergyWindow,
    pub bits: Vec<bool>,
}

impl BinaryImage {
    pub fn empty(window: EnergyWindow) -> Self {
        let n = window.resolution * window.resolution;
        Self { window, bits: vec![false; n] }
    }

    pub fn from_bits(window: EnergyWindow, bits: Vec<bool>) -> Self {
        assert_eq!(bits.len(), window.resolution * window.resolution, "bit grid does not match window");
        Self { window, bits }
    }

    #[inline]
    pub fn res(&self) -> usize {
        self.window.resolution
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.res() + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let n = self.res();
        self.bits[r * n + c] = v;
    }

    /// Out-of-range coordinates read as background.
    #[inline]
    pub fn get_signed(&self, r: isize, c: isize) -> bool {
        let n = self.res() as isize;
        r >= 0 && c >= 0 && r < n && c < n && self.bits[(r * n + c) as usize]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|b| *b)
    }

    pub fn is_subset_of(&self, other: &BinaryImage) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| !*a || *b)
    }

    pub fn to_field(&self) -> ScalarField {
        ScalarField {
            window: self.window,
            values: self.bits.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect(),
            kind: FieldKind::Binary,
        }
    }

    /// Set neighbours in the 8-neighbourhood.
    pub fn neighbor_count(&self, r: usize, c: usize) -> u32 {
        neighborhood(self, r, c).count_ones()
    }
}

/// Bit `k` holds the neighbour in direction `k`, counter-clockwise from east:
/// E, NE, N, NW, W, SW, S, SE (north = row - 1).
pub(crate) const DIRS: [(isize, isize); 8] = [(0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1)];

#[inline]
pub(crate) fn neighborhood(img: &BinaryImage, r: usize, c: usize) -> u8 {
    let (r, c) = (r as isize, c as isize);
    let mut m = 0u8;
    for (k, (dr, dc)) in DIRS.iter().enumerate() {
        if img.get_signed(r + dr, c + dc) {
            m |= 1 << k;
        }
    }
    m
}

/// Bit set iff value > mean over `support` (all pixels when `None`).
/// Pixels outside the support are never set.
pub fn binarize_mean_on(field: &ScalarField, support: Option<&[bool]>) -> BinaryImage {
    let (sum, n) = match support {
        None => (field.values.iter().sum::<f64>(), field.values.len()),
        Some(mask) => {
            field.values.iter().zip(mask).filter(|(_, m)| **m).fold((0.0, 0usize), |(s, n), (v, _)| (s + v, n + 1))
        }
    };
    if n == 0 {
        return BinaryImage::empty(field.window);
    }
    let mean = sum / n as f64;
    let bits = match support {
        None => field.values.iter().map(|&v| v > mean).collect(),
        Some(mask) => field.values.iter().zip(mask).map(|(&v, &m)| m && v > mean).collect(),
    };
    BinaryImage { window: field.window, bits }
}

pub fn binarize_mean(field: &ScalarField) -> BinaryImage {
    binarize_mean_on(field, None)
}

/// Dilation by a 2x2 square anchored at its top-left cell: each set pixel
/// also sets its east, south and south-east neighbours.
pub fn dilate_disk2(img: &BinaryImage) -> BinaryImage {
    let n = img.res();
    let mut out = img.clone();
    for r in 0..n {
        for c in 0..n {
            if img.get(r, c) {
                if c + 1 < n {
                    out.set(r, c + 1, true);
                }
                if r + 1 < n {
                    out.set(r + 1, c, true);
                    if c + 1 < n {
                        out.set(r + 1, c + 1, true);
                    }
                }
            }
        }
    }
    out
}

/// Whether removing the centre of a 3x3 neighbourhood `m` (see [`DIRS`])
/// preserves topology: exactly one 8-component of foreground neighbours and
/// exactly one 4-component of background neighbours touching a 4-neighbour.
pub fn is_simple(m: u8) -> bool {
    simple_table()[m as usize]
}

fn simple_table() -> &'static [bool; 256] {
    static TABLE: OnceLock<[bool; 256]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [false; 256];
        for (m, slot) in t.iter_mut().enumerate() {
            *slot = fg_components(m as u8) == 1 && bg_components(m as u8) == 1;
        }
        t
    })
}

fn ring_components(
    members: impl Fn(usize) -> bool,
    adjacent: impl Fn(usize, usize) -> bool,
    seeds: impl Fn(usize) -> bool,
) -> usize {
    let mut seen = [false; 8];
    let mut count = 0;
    for start in 0..8 {
        if !members(start) || seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut touches = seeds(start);
        while let Some(a) = stack.pop() {
            for b in 0..8 {
                if members(b) && !seen[b] && adjacent(a, b) {
                    seen[b] = true;
                    touches |= seeds(b);
                    stack.push(b);
                }
            }
        }
        if touches {
            count += 1;
        }
    }
    count
}

fn chebyshev(a: usize, b: usize) -> usize {
    let (ra, ca) = DIRS[a];
    let (rb, cb) = DIRS[b];
    (ra - rb).unsigned_abs().max((ca - cb).unsigned_abs())
}

fn manhattan(a: usize, b: usize) -> usize {
    let (ra, ca) = DIRS[a];
    let (rb, cb) = DIRS[b];
    (ra - rb).unsigned_abs() + (ca - cb).unsigned_abs()
}

fn fg_components(m: u8) -> usize {
    ring_components(|k| m >> k & 1 == 1, |a, b| chebyshev(a, b) == 1, |_| true)
}

fn bg_components(m: u8) -> usize {
    ring_components(|k| m >> k & 1 == 0, |a, b| manhattan(a, b) == 1, |k| k % 2 == 0)
}

/// Guo-Hall deletion test for one subiteration, with neighbours named
/// p2..p9 clockwise from north.
fn guo_hall_candidate(m: u8, odd: bool) -> bool {
    let b = |k: usize| (m >> k & 1) as u32;
    let (p2, p3, p4, p5, p6, p7, p8, p9) = (b(2), b(1), b(0), b(7), b(6), b(5), b(4), b(3));
    let c = ((1 - p2) & (p3 | p4)) + ((1 - p4) & (p5 | p6)) + ((1 - p6) & (p7 | p8)) + ((1 - p8) & (p9 | p2));
    let n1 = (p9 | p2) + (p3 | p4) + (p5 | p6) + (p7 | p8);
    let n2 = (p2 | p3) + (p4 | p5) + (p6 | p7) + (p8 | p9);
    let n = n1.min(n2);
    let side = if odd { (p6 | p7 | (1 - p9)) & p8 } else { (p2 | p3 | (1 - p5)) & p4 };
    c == 1 && (2..=3).contains(&n) && side == 0
}

fn is_endpoint(m: u8) -> bool {
    m.count_ones() <= 1
}

/// One thinning subiteration: candidates are marked in parallel, then each is
/// confirmed sequentially (raster order) against the partially thinned image.
fn thinning_pass(img: &mut BinaryImage, odd: bool) -> bool {
    let n = img.res();
    let snapshot = &*img;
    let candidates: Vec<usize> = (0..n)
        .into_par_iter()
        .flat_map_iter(|r| {
            (0..n).filter_map(move |c| {
                if !snapshot.get(r, c) {
                    return None;
                }
                let m = neighborhood(snapshot, r, c);
                (guo_hall_candidate(m, odd) && !is_endpoint(m)).then_some(r * n + c)
            })
        })
        .collect();
    let mut changed = false;
    for idx in candidates {
        let (r, c) = (idx / n, idx % n);
        let m = neighborhood(img, r, c);
        if is_simple(m) && !is_endpoint(m) {
            img.bits[idx] = false;
            changed = true;
        }
    }
    changed
}

/// Removes simple non-end pixels sitting on a 4-connected corner, so
/// diagonal runs become strictly 8-connected lines.
fn staircase_pass(img: &mut BinaryImage) -> bool {
    let n = img.res();
    let mut changed = false;
    for r in 0..n {
        for c in 0..n {
            if !img.get(r, c) {
                continue;
            }
            let m = neighborhood(img, r, c);
            let (e, no, w, s) = (m & 1 != 0, m & 4 != 0, m & 16 != 0, m & 64 != 0);
            let corner = (no && e) || (e && s) || (s && w) || (w && no);
            if corner && m.count_ones() >= 2 && is_simple(m) {
                img.set(r, c, false);
                changed = true;
            }
        }
    }
    changed
}

/// Thins to a one-pixel-wide skeleton; iterates to a fixed point.
pub fn skeletonize(img: &BinaryImage) -> BinaryImage {
    let mut out = img.clone();
    loop {
        let mut changed = false;
        loop {
            let a = thinning_pass(&mut out, true);
            let b = thinning_pass(&mut out, false);
            if !(a || b) {
                break;
            }
            changed = true;
        }
        changed |= staircase_pass(&mut out);
        if !changed {
            return out;
        }
    }
}

/// Labels 8-connected foreground components; returns (labels, count) with
/// `usize::MAX` for background.
pub fn label_components(img: &BinaryImage) -> (Vec<usize>, usize) {
    let n = img.res();
    let mut labels = vec![usize::MAX; n * n];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..n * n {
        if !img.bits[start] || labels[start] != usize::MAX {
            continue;
        }
        labels[start] = count;
        stack.push(start);
        while let Some(idx) = stack.pop() {
            let (r, c) = ((idx / n) as isize, (idx % n) as isize);
            for (dr, dc) in DIRS {
                let (rr, cc) = (r + dr, c + dc);
                if img.get_signed(rr, cc) {
                    let j = rr as usize * n + cc as usize;
                    if labels[j] == usize::MAX {
                        labels[j] = count;
                        stack.push(j);
                    }
                }
            }
        }
        count += 1;
    }
    (labels, count)
}

/// Number of 4-connected background components not touching the border
/// (holes under the 8/4 convention).
pub fn count_holes(img: &BinaryImage) -> usize {
    let n = img.res();
    let mut seen = vec![false; n * n];
    let mut holes = 0;
    let mut stack = Vec::new();
    for start in 0..n * n {
        if img.bits[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut border = false;
        while let Some(idx) = stack.pop() {
            let (r, c) = (idx / n, idx % n);
            if r == 0 || c == 0 || r + 1 == n || c + 1 == n {
                border = true;
            }
            for (dr, dc) in [(0isize, 1isize), (0, -1), (1, 0), (-1, 0)] {
                let (rr, cc) = (r as isize + dr, c as isize + dc);
                if rr < 0 || cc < 0 || rr >= n as isize || cc >= n as isize {
                    continue;
                }
                let j = rr as usize * n + cc as usize;
                if !img.bits[j] && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        if !border {
            holes += 1;
        }
    }
    holes
}

/// Components minus holes.
pub fn euler_characteristic(img: &BinaryImage) -> i64 {
    label_components(img).1 as i64 - count_holes(img) as i64
}
