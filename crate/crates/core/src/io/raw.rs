use num_complex::Complex64;

use super::IoError;
use crate::field::{EnergyWindow, FieldKind, ScalarField};

/// File signature of a raw field dump.
pub const FIELD_MAGIC: &[u8; 8] = b"SGFIELD1";

/// Little-endian layout: magic, kind code (u32), resolution (u32),
/// re_min, re_max, im_min, im_max (f64), then resolution² values (f64,
/// row-major, row 0 at im_min).
pub fn write_field_dump(field: &ScalarField) -> Vec<u8> {
    let w = &field.window;
    let mut out = Vec::with_capacity(48 + 8 * field.values.len());
    out.extend_from_slice(FIELD_MAGIC);
    out.extend_from_slice(&field.kind.code().to_le_bytes());
    out.extend_from_slice(&(w.resolution as u32).to_le_bytes());
    for v in [w.re_min, w.re_max, w.im_min, w.im_max] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for v in &field.values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn read_field_dump(bytes: &[u8]) -> Result<ScalarField, IoError> {
    let bad = |m: &str| IoError::Format(m.to_string());
    if bytes.len() < 48 || &bytes[..8] != FIELD_MAGIC {
        return Err(bad("missing header"));
    }
    let u32_at = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap());
    let f64_at = |i: usize| f64::from_le_bytes(bytes[i..i + 8].try_into().unwrap());
    let kind = FieldKind::from_code(u32_at(8)).ok_or_else(|| bad("unknown field kind"))?;
    let n = u32_at(12) as usize;
    if bytes.len() != 48 + 8 * n * n {
        return Err(bad("length does not match resolution"));
    }
    let window = EnergyWindow::new(f64_at(16), f64_at(24), f64_at(32), f64_at(40), n)
        .map_err(|e| IoError::Format(e.to_string()))?;
    let values = (0..n * n).map(|k| f64_at(48 + 8 * k)).collect();
    Ok(ScalarField::new(window, values, kind))
}

/// `re,im` rows sorted by real then imaginary part.
pub fn spectrum_csv(eigenvalues: &[Complex64]) -> Result<String, IoError> {
    let mut sorted = eigenvalues.to_vec();
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["re", "im"])?;
    for z in sorted {
        w.write_record([z.re.to_string(), z.im.to_string()])?;
    }
    let bytes = w.into_inner().map_err(|e| IoError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}
