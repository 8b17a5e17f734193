//! Node merging, short-edge contraction and isolated-node removal.

use serde::{Deserialize, Serialize};

use super::{arc_length, GraphEdge, GraphNode, SpectralMultigraph};

/// Post-processing thresholds in pixel units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PostProcess {
    pub merge_tol_px: f64,
    pub short_edge_px: f64,
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn snap_endpoints(e: &mut GraphEdge, nodes: &[GraphNode]) {
    if let Some(first) = e.pts.first_mut() {
        *first = nodes[e.u].pos;
    }
    if let Some(last) = e.pts.last_mut() {
        *last = nodes[e.v].pos;
    }
    e.weight = arc_length(&e.pts);
}

/// Single-linkage merge of nodes closer than `merge_tol_px`, contraction of
/// edges shorter than `short_edge_px`, then removal of isolated nodes.
/// Self-loops shorter than the active threshold are dropped along the way.
/// `pitch` converts pixels to energy units.
pub fn merge_nearby_nodes(g: &SpectralMultigraph, post: PostProcess, pitch: f64) -> SpectralMultigraph {
    let mut nodes = g.nodes.clone();
    let mut edges = g.edges.clone();

    let tol = post.merge_tol_px * pitch;
    if tol > 0.0 && nodes.len() > 1 {
        let mut parent: Vec<usize> = (0..nodes.len()).collect();
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if dist(nodes[i].pos, nodes[j].pos) <= tol {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..nodes.len()).map(|i| find(&mut parent, i)).collect();
        let mut merged: Vec<GraphNode> = Vec::new();
        let mut new_id = vec![usize::MAX; nodes.len()];
        for i in 0..nodes.len() {
            if roots[i] != i {
                continue;
            }
            let members: Vec<usize> = (0..nodes.len()).filter(|&j| roots[j] == i).collect();
            let k = members.len() as f64;
            let mean = |f: &dyn Fn(&GraphNode) -> f64| members.iter().map(|&j| f(&nodes[j])).sum::<f64>() / k;
            let node = GraphNode {
                id: merged.len(),
                pos: [mean(&|n| n.pos[0]), mean(&|n| n.pos[1])],
                dos: mean(&|n| n.dos),
                potential: mean(&|n| n.potential),
            };
            for &j in &members {
                new_id[j] = merged.len();
            }
            merged.push(node);
        }
        let mut kept = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.u = new_id[e.u];
            e.v = new_id[e.v];
            snap_endpoints(&mut e, &merged);
            // collapsed excursions and pixel-scale rings
            if e.u == e.v && e.weight <= 2.0 * tol {
                continue;
            }
            kept.push(e);
        }
        nodes = merged;
        edges = kept;
    }

    let short = post.short_edge_px * pitch;
    if short > 0.0 {
        while let Some(idx) = edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.u != e.v && e.weight < short)
            .min_by(|a, b| a.1.weight.total_cmp(&b.1.weight).then(a.0.cmp(&b.0)))
            .map(|(i, _)| i)
        {
            let e = edges.remove(idx);
            let mut deg = vec![0usize; nodes.len()];
            for x in &edges {
                deg[x.u] += 1;
                deg[x.v] += 1;
            }
            // keep the better-connected endpoint; the other is absorbed
            let (keep, gone, path) = if deg[e.v] > deg[e.u] {
                (e.v, e.u, e.pts.clone())
            } else {
                let mut p = e.pts.clone();
                p.reverse();
                (e.u, e.v, p)
            };
            // `path` runs from `keep` to `gone`
            for x in edges.iter_mut() {
                if x.u == gone {
                    let mut pts = path.clone();
                    pts.extend_from_slice(&x.pts[1..]);
                    x.pts = pts;
                    x.u = keep;
                }
                if x.v == gone {
                    let mut rev: Vec<[f64; 2]> = path.iter().rev().copied().collect();
                    let mut pts = x.pts[..x.pts.len() - 1].to_vec();
                    pts.append(&mut rev);
                    x.pts = pts;
                    x.v = keep;
                }
                x.weight = arc_length(&x.pts);
            }
            nodes[gone].id = usize::MAX;
            edges.retain(|x| x.u != x.v || x.weight >= short);
        }
    }

    // drop absorbed and isolated nodes, renumber in order
    let mut deg = vec![0usize; nodes.len()];
    for e in &edges {
        deg[e.u] += 1;
        deg[e.v] += 1;
    }
    let mut new_id = vec![usize::MAX; nodes.len()];
    let mut out_nodes = Vec::new();
    for (i, n) in nodes.into_iter().enumerate() {
        if n.id == usize::MAX || deg[i] == 0 {
            continue;
        }
        new_id[i] = out_nodes.len();
        out_nodes.push(GraphNode { id: out_nodes.len(), ..n });
    }
    for e in &mut edges {
        e.u = new_id[e.u];
        e.v = new_id[e.v];
    }
    SpectralMultigraph { nodes: out_nodes, edges }
}
