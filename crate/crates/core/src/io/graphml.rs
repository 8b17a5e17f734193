use std::fmt::Write;

use crate::graph::SpectralMultigraph;

const NODE_KEYS: [&str; 4] = ["pos_re", "pos_im", "dos", "potential"];
const EDGE_KEYS: [&str; 4] = ["weight", "avg_dos", "avg_potential", "point_count"];

/// GraphML with one `<edge>` per multigraph edge (ids `e0`, `e1`, ...).
/// With `include_pts` the edge polyline is stored as `re,im;re,im;...`.
pub fn export_graphml(g: &SpectralMultigraph, include_pts: bool) -> String {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    for k in NODE_KEYS {
        let _ = writeln!(s, "  <key id=\"{k}\" for=\"node\" attr.name=\"{k}\" attr.type=\"double\"/>");
    }
    for k in EDGE_KEYS {
        let ty = if k == "point_count" { "int" } else { "double" };
        let _ = writeln!(s, "  <key id=\"{k}\" for=\"edge\" attr.name=\"{k}\" attr.type=\"{ty}\"/>");
    }
    if include_pts {
        s.push_str("  <key id=\"pts\" for=\"edge\" attr.name=\"pts\" attr.type=\"string\"/>\n");
    }
    s.push_str("  <graph id=\"G\" edgedefault=\"undirected\">\n");
    for n in &g.nodes {
        let _ = writeln!(s, "    <node id=\"n{}\">", n.id);
        for (k, v) in NODE_KEYS.iter().zip([n.pos[0], n.pos[1], n.dos, n.potential]) {
            let _ = writeln!(s, "      <data key=\"{k}\">{v}</data>");
        }
        s.push_str("    </node>\n");
    }
    for (i, e) in g.edges.iter().enumerate() {
        let _ = writeln!(s, "    <edge id=\"e{i}\" source=\"n{}\" target=\"n{}\">", e.u, e.v);
        for (k, v) in EDGE_KEYS.iter().zip([e.weight, e.avg_dos, e.avg_potential]) {
            let _ = writeln!(s, "      <data key=\"{k}\">{v}</data>");
        }
        let _ = writeln!(s, "      <data key=\"point_count\">{}</data>", e.pts.len());
        if include_pts {
            let pts: Vec<String> = e.pts.iter().map(|p| format!("{},{}", p[0], p[1])).collect();
            let _ = writeln!(s, "      <data key=\"pts\">{}</data>", pts.join(";"));
        }
        s.push_str("    </edge>\n");
    }
    s.push_str("  </graph>\n</graphml>\n");
    s
}
