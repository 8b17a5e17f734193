//! Skeleton pixels to an attributed spatial multigraph in energy coordinates.

mod extract;
mod postprocess;

use serde::{Deserialize, Serialize};

use crate::field::{EnergyWindow, ScalarField};
use crate::morphology::{neighborhood, BinaryImage, DIRS};

pub use extract::{extract, spectral_graph, ExtractError, Extraction, ExtractionConfig, Stage};
pub use postprocess::{merge_nearby_nodes, PostProcess};

/// Role of a skeleton pixel, from its linked-neighbour count alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PixelRole {
    Junction,
    Leaf,
    Path,
    Isolated,
}

impl PixelRole {
    pub fn from_neighbors(k: u32) -> Self {
        match k {
            0 => PixelRole::Isolated,
            1 => PixelRole::Leaf,
            2 => PixelRole::Path,
            _ => PixelRole::Junction,
        }
    }

    fn is_node(self) -> bool {
        self != PixelRole::Path
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PixelRoles {
    pub res: usize,
    pub roles: Vec<Option<PixelRole>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RoleCounts {
    pub junction: usize,
    pub leaf: usize,
    pub path: usize,
    pub isolated: usize,
}

impl RoleCounts {
    pub fn total(&self) -> usize {
        self.junction + self.leaf + self.path + self.isolated
    }
}

impl PixelRoles {
    pub fn get(&self, r: usize, c: usize) -> Option<PixelRole> {
        self.roles[r * self.res + c]
    }

    pub fn counts(&self) -> RoleCounts {
        let mut out = RoleCounts::default();
        for role in self.roles.iter().flatten() {
            match role {
                PixelRole::Junction => out.junction += 1,
                PixelRole::Leaf => out.leaf += 1,
                PixelRole::Path => out.path += 1,
                PixelRole::Isolated => out.isolated += 1,
            }
        }
        out
    }
}

/// Drops diagonal neighbours already reached through a set orthogonal
/// neighbour, so staircase corners and compact crosses are not miscounted.
pub fn linked_neighbors(m: u8) -> u8 {
    let mut out = m;
    for k in (1..8).step_by(2) {
        let (a, b) = (k - 1, (k + 1) % 8);
        if m & (1 << a) != 0 || m & (1 << b) != 0 {
            out &= !(1 << k);
        }
    }
    out
}

pub fn classify_pixels(skel: &BinaryImage) -> PixelRoles {
    let n = skel.res();
    let roles = (0..n * n)
        .map(|i| {
            let (r, c) = (i / n, i % n);
            skel.bits[i].then(|| PixelRole::from_neighbors(linked_neighbors(neighborhood(skel, r, c)).count_ones()))
        })
        .collect();
    PixelRoles { res: n, roles }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Junction,
    Leaf,
    Isolated,
    /// Anchor of a junction-free cycle.
    Loop,
}

/// A node in pixel space: its pixels and their centroid `(row, col)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PixelNode {
    pub kind: NodeKind,
    pub pixels: Vec<(usize, usize)>,
    pub centroid: (f64, f64),
}

/// An edge in pixel space. Open trails run from a pixel of node `u` through
/// path pixels to a pixel of node `v`; closed trails list every pixel of a
/// junction-free cycle once, starting at the anchor.
#[derive(Clone, Debug, PartialEq)]
pub struct PixelEdge {
    pub u: usize,
    pub v: usize,
    pub trail: Vec<(usize, usize)>,
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PixelGraph {
    pub res: usize,
    pub nodes: Vec<PixelNode>,
    pub edges: Vec<PixelEdge>,
}

impl PixelGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }
}

fn neighbors_of(skel: &BinaryImage, r: usize, c: usize) -> impl Iterator<Item = (usize, usize)> {
    let m = linked_neighbors(neighborhood(skel, r, c));
    DIRS.iter()
        .enumerate()
        .filter(move |(k, _)| m & (1 << k) != 0)
        .map(move |(_, &(dr, dc))| ((r as isize + dr) as usize, (c as isize + dc) as usize))
}

/// Clusters junction pixels into nodes, walks every path-pixel run between
/// node pixels into an edge and turns junction-free cycles into self-loops
/// anchored at their lexicographically smallest pixel.
pub fn trace_edges(skel: &BinaryImage, roles: &PixelRoles) -> PixelGraph {
    let n = skel.res();
    let mut node_of = vec![usize::MAX; n * n];
    let mut nodes: Vec<PixelNode> = Vec::new();

    for start in 0..n * n {
        let Some(role) = roles.roles[start] else { continue };
        if !role.is_node() || node_of[start] != usize::MAX {
            continue;
        }
        let id = nodes.len();
        let mut pixels = vec![(start / n, start % n)];
        node_of[start] = id;
        if role == PixelRole::Junction {
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for (rr, cc) in neighbors_of(skel, i / n, i % n) {
                    let j = rr * n + cc;
                    if roles.roles[j] == Some(PixelRole::Junction) && node_of[j] == usize::MAX {
                        node_of[j] = id;
                        pixels.push((rr, cc));
                        stack.push(j);
                    }
                }
            }
            pixels.sort_unstable();
        }
        let kind = match role {
            PixelRole::Junction => NodeKind::Junction,
            PixelRole::Leaf => NodeKind::Leaf,
            _ => NodeKind::Isolated,
        };
        let k = pixels.len() as f64;
        let centroid =
            (pixels.iter().map(|p| p.0 as f64).sum::<f64>() / k, pixels.iter().map(|p| p.1 as f64).sum::<f64>() / k);
        nodes.push(PixelNode { kind, pixels, centroid });
    }

    let mut visited = vec![false; n * n];
    let mut edges = Vec::new();
    for id in 0..nodes.len() {
        for pi in 0..nodes[id].pixels.len() {
            let (r, c) = nodes[id].pixels[pi];
            let here = r * n + c;
            for (rr, cc) in neighbors_of(skel, r, c) {
                let j = rr * n + cc;
                let other = node_of[j];
                if other != usize::MAX {
                    // direct node-to-node contact, emitted once per pixel pair
                    if other != id && here < j {
                        edges.push(PixelEdge { u: id, v: other, trail: vec![(r, c), (rr, cc)], closed: false });
                    }
                    continue;
                }
                if visited[j] {
                    continue;
                }
                let mut trail = vec![(r, c), (rr, cc)];
                visited[j] = true;
                let (mut prev, mut cur) = (here, j);
                let end = loop {
                    let next = neighbors_of(skel, cur / n, cur % n)
                        .map(|(a, b)| a * n + b)
                        .find(|&k| k != prev && (node_of[k] != usize::MAX || !visited[k]));
                    match next {
                        Some(k) if node_of[k] != usize::MAX => {
                            trail.push((k / n, k % n));
                            break Some(node_of[k]);
                        }
                        Some(k) => {
                            visited[k] = true;
                            trail.push((k / n, k % n));
                            prev = cur;
                            cur = k;
                        }
                        None => break None,
                    }
                };
                if let Some(v) = end {
                    edges.push(PixelEdge { u: id, v, trail, closed: false });
                }
            }
        }
    }

    // junction-free cycles: every remaining path pixel
    for start in 0..n * n {
        if roles.roles[start] != Some(PixelRole::Path) || visited[start] {
            continue;
        }
        let id = nodes.len();
        let anchor = (start / n, start % n);
        nodes.push(PixelNode {
            kind: NodeKind::Loop,
            pixels: vec![anchor],
            centroid: (anchor.0 as f64, anchor.1 as f64),
        });
        visited[start] = true;
        let mut trail = vec![anchor];
        let mut cur = start;
        while let Some(k) = neighbors_of(skel, cur / n, cur % n).map(|(a, b)| a * n + b).find(|&k| !visited[k]) {
            visited[k] = true;
            trail.push((k / n, k % n));
            cur = k;
        }
        edges.push(PixelEdge { u: id, v: id, trail, closed: true });
    }

    PixelGraph { res: n, nodes, edges }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: usize,
    /// `(Re E, Im E)`.
    pub pos: [f64; 2],
    #[serde(deserialize_with = "crate::io::f64_or_nan")]
    pub dos: f64,
    #[serde(deserialize_with = "crate::io::f64_or_nan")]
    pub potential: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub u: usize,
    pub v: usize,
    /// Arc length of `pts` in energy units.
    pub weight: f64,
    pub pts: Vec<[f64; 2]>,
    #[serde(deserialize_with = "crate::io::f64_or_nan")]
    pub avg_dos: f64,
    #[serde(deserialize_with = "crate::io::f64_or_nan")]
    pub avg_potential: f64,
}

/// Nodes and parallel/self-loop-capable edges embedded in the energy plane.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SpectralMultigraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

pub fn arc_length(pts: &[[f64; 2]]) -> f64 {
    pts.windows(2).map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1])).sum()
}

impl SpectralMultigraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degrees with self-loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.nodes.len();
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    /// No cycles, self-loops or parallel edges.
    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.component_count() == self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.degrees().iter().filter(|&&d| d == 1).count()
    }

    pub fn junction_count(&self) -> usize {
        self.degrees().iter().filter(|&&d| d >= 3).count()
    }
}

/// Maps pixel geometry to energy coordinates and samples the fields.
pub fn to_energy_coords(g: &PixelGraph, phi: &ScalarField, dos: &ScalarField) -> SpectralMultigraph {
    let w = phi.window;
    assert_eq!(w.resolution, g.res, "field and skeleton resolutions differ");
    let pos = |(r, c): (f64, f64)| -> [f64; 2] {
        let h = w.pitch();
        [w.re_min + (c + 0.5) * h, w.im_min + (r + 0.5) * h]
    };
    let sample = |f: &ScalarField, (r, c): (f64, f64)| {
        let n = f.res() as f64 - 1.0;
        f.get(r.round().clamp(0.0, n) as usize, c.round().clamp(0.0, n) as usize)
    };
    let nodes = g
        .nodes
        .iter()
        .enumerate()
        .map(|(id, nd)| GraphNode {
            id,
            pos: pos(nd.centroid),
            dos: sample(dos, nd.centroid),
            potential: sample(phi, nd.centroid),
        })
        .collect::<Vec<_>>();
    let edges = g
        .edges
        .iter()
        .map(|e| {
            let px = |&(r, c): &(usize, usize)| pos((r as f64, c as f64));
            let inner: &[(usize, usize)] = if e.closed { &e.trail[1..] } else { &e.trail[1..e.trail.len() - 1] };
            let mut pts = Vec::with_capacity(inner.len() + 2);
            pts.push(nodes[e.u].pos);
            pts.extend(inner.iter().map(px));
            pts.push(nodes[e.v].pos);
            let k = e.trail.len() as f64;
            let avg = |f: &ScalarField| e.trail.iter().map(|&(r, c)| f.get(r, c)).sum::<f64>() / k;
            GraphEdge { u: e.u, v: e.v, weight: arc_length(&pts), pts, avg_dos: avg(dos), avg_potential: avg(phi) }
        })
        .collect();
    SpectralMultigraph { nodes, edges }
}

/// Pixel-space positions of a graph's nodes.
pub fn node_pixels(g: &SpectralMultigraph, window: &EnergyWindow) -> Vec<(f64, f64)> {
    g.nodes.iter().map(|n| window.to_pixel(num_complex::Complex64::new(n.pos[0], n.pos[1]))).collect()
}
