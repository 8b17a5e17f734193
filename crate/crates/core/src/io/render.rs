use std::str::FromStr;

use super::IoError;
use crate::field::ScalarField;
use crate::graph::SpectralMultigraph;
use crate::morphology::BinaryImage;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Potential,
    Dos,
    Binary,
    Graph,
}

impl FromStr for Style {
    type Err = IoError;

    fn from_str(s: &str) -> Result<Self, IoError> {
        match s {
            "potential" => Ok(Style::Potential),
            "dos" => Ok(Style::Dos),
            "binary" => Ok(Style::Binary),
            "graph" => Ok(Style::Graph),
            _ => Err(IoError::UnknownStyle(s.to_string())),
        }
    }
}

const RAMP: [[f64; 3]; 5] =
    [[68.0, 1.0, 84.0], [59.0, 82.0, 139.0], [33.0, 145.0, 140.0], [94.0, 201.0, 98.0], [253.0, 231.0, 37.0]];

fn ramp(t: f64) -> [u8; 3] {
    if !t.is_finite() {
        return [0, 0, 0];
    }
    let x = t.clamp(0.0, 1.0) * (RAMP.len() - 1) as f64;
    let i = (x.floor() as usize).min(RAMP.len() - 2);
    let f = x - i as f64;
    let mut out = [0u8; 3];
    for (k, o) in out.iter_mut().enumerate() {
        *o = (RAMP[i][k] + f * (RAMP[i + 1][k] - RAMP[i][k])).round() as u8;
    }
    out
}

fn encode(
    width: usize,
    height: usize,
    color: png::ColorType,
    depth: png::BitDepth,
    data: &[u8],
) -> Result<Vec<u8>, IoError> {
    let mut out = Vec::new();
    {
        let mut enc = png::Encoder::new(&mut out, width as u32, height as u32);
        enc.set_color(color);
        enc.set_depth(depth);
        let mut w = enc.write_header()?;
        w.write_image_data(data)?;
    }
    Ok(out)
}

/// Scalar values in `[0, 1]` per pixel, finite range only.
fn normalized(field: &ScalarField, style: Style) -> Vec<f64> {
    let finite = || field.values.iter().copied().filter(|v| v.is_finite());
    let lo = finite().fold(f64::INFINITY, f64::min);
    let hi = finite().fold(f64::NEG_INFINITY, f64::max);
    field
        .values
        .iter()
        .map(|&v| match style {
            Style::Dos => {
                if hi > 0.0 {
                    (1.0 + 99.0 * v.max(0.0) / hi).log10() / 2.0
                } else {
                    0.0
                }
            }
            _ if hi > lo => (v - lo) / (hi - lo),
            _ if v.is_finite() => 0.0,
            _ => f64::NAN,
        })
        .collect()
}

/// Heatmap of a field, imaginary axis pointing up. `Binary` marks positive
/// pixels and writes a 1-bit image.
pub fn render_field(field: &ScalarField, style: Style) -> Result<Vec<u8>, IoError> {
    let n = field.res();
    match style {
        Style::Binary => {
            let bits = field.values.iter().map(|v| *v > 0.0).collect();
            render_binary(&BinaryImage::from_bits(field.window, bits))
        }
        Style::Potential | Style::Dos => {
            let t = normalized(field, style);
            let mut data = Vec::with_capacity(3 * n * n);
            for y in 0..n {
                let r = n - 1 - y;
                for c in 0..n {
                    data.extend_from_slice(&ramp(t[r * n + c]));
                }
            }
            encode(n, n, png::ColorType::Rgb, png::BitDepth::Eight, &data)
        }
        Style::Graph => Err(IoError::UnknownStyle("graph (needs a graph; use render_graph)".into())),
    }
}

/// Set pixels white on black, 1 bit per pixel.
pub fn render_binary(img: &BinaryImage) -> Result<Vec<u8>, IoError> {
    let n = img.res();
    let stride = n.div_ceil(8);
    let mut data = vec![0u8; stride * n];
    for y in 0..n {
        let r = n - 1 - y;
        for c in 0..n {
            if img.get(r, c) {
                data[y * stride + c / 8] |= 0x80 >> (c % 8);
            }
        }
    }
    encode(n, n, png::ColorType::Grayscale, png::BitDepth::One, &data)
}

/// Density of states in grey with edges drawn along their polylines and
/// nodes as 3x3 squares.
pub fn render_graph(g: &SpectralMultigraph, background: &ScalarField) -> Result<Vec<u8>, IoError> {
    let n = background.res();
    let w = background.window;
    let t = normalized(background, Style::Dos);
    let mut rgb = vec![0u8; 3 * n * n];
    for r in 0..n {
        for c in 0..n {
            let v = (t[r * n + c].clamp(0.0, 1.0) * 90.0) as u8;
            let y = n - 1 - r;
            rgb[3 * (y * n + c)..3 * (y * n + c) + 3].copy_from_slice(&[v, v, v]);
        }
    }
    let to_px = |p: [f64; 2]| {
        let (r, c) = w.to_pixel(num_complex::Complex64::new(p[0], p[1]));
        (r.round() as i64, c.round() as i64)
    };
    let mut put = |r: i64, c: i64, color: [u8; 3]| {
        if r >= 0 && c >= 0 && (r as usize) < n && (c as usize) < n {
            let y = n - 1 - r as usize;
            let i = 3 * (y * n + c as usize);
            rgb[i..i + 3].copy_from_slice(&color);
        }
    };
    for e in &g.edges {
        for seg in e.pts.windows(2) {
            let (a, b) = (to_px(seg[0]), to_px(seg[1]));
            let steps = (b.0 - a.0).abs().max((b.1 - a.1).abs()).max(1);
            for s in 0..=steps {
                let f = s as f64 / steps as f64;
                let r = a.0 as f64 + f * (b.0 - a.0) as f64;
                let c = a.1 as f64 + f * (b.1 - a.1) as f64;
                put(r.round() as i64, c.round() as i64, [255, 160, 40]);
            }
        }
    }
    for node in &g.nodes {
        let (r, c) = to_px(node.pos);
        for dr in -1..=1 {
            for dc in -1..=1 {
                put(r + dr, c + dc, [220, 40, 40]);
            }
        }
    }
    encode(n, n, png::ColorType::Rgb, png::BitDepth::Eight, &rgb)
}
