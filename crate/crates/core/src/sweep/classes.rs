use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ParamPolyTemplate, SweepError};
use crate::poly::{ClassSignature, LaurentCharPoly};

const FREE_NAMES: [&str; 8] = ["a", "b", "c", "d", "f", "g", "h", "k"];

/// What makes two enumerated polynomials the same class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DedupKey {
    /// The z-presence class signature, up to z -> 1/z.
    #[default]
    ZPresence,
    /// The full set of (z, E) monomials, up to z -> 1/z.
    Monomials,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClassEnumSpec {
    pub bands: u32,
    /// Allowed values of p + q.
    pub ranges: Vec<u32>,
    /// Number of free coefficients, capped by the available slots.
    pub free_coefficients: usize,
    /// Whether a free coefficient may sit on a monomial that carries E.
    pub free_on_energy_slots: bool,
    pub dedup: DedupKey,
}

impl Default for ClassEnumSpec {
    fn default() -> Self {
        Self {
            bands: 1,
            ranges: vec![4, 5, 6],
            free_coefficients: 2,
            free_on_energy_slots: true,
            dedup: DedupKey::ZPresence,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnumeratedClass {
    pub key: String,
    pub signature: ClassSignature,
    #[serde(serialize_with = "template_text")]
    pub template: ParamPolyTemplate,
}

fn template_text<S: serde::Serializer>(t: &ParamPolyTemplate, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(t.text())
}

fn monomial(coef: Option<&str>, z: i32, e: u32) -> String {
    let mut parts: Vec<String> = coef.map(|c| vec![c.to_string()]).unwrap_or_default();
    match e {
        0 => {}
        1 => parts.push("E".into()),
        e => parts.push(format!("E**{e}")),
    }
    match z {
        0 => {}
        1 => parts.push("z".into()),
        z => parts.push(format!("z**{z}")),
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn monomial_key(poly: &LaurentCharPoly) -> String {
    let set: BTreeSet<(i32, u32)> = poly.to_bilaurent().terms().map(|(m, _)| m).collect();
    let fmt = |s: &BTreeSet<(i32, u32)>| s.iter().map(|(z, e)| format!("{z}:{e}")).collect::<Vec<_>>().join(",");
    let mirrored: BTreeSet<(i32, u32)> = set.iter().map(|&(z, e)| (-z, e)).collect();
    let (a, b) = (fmt(&set), fmt(&mirrored));
    if a <= b {
        a
    } else {
        b
    }
}

fn combinations(items: &[i32], k: usize) -> Vec<Vec<i32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Starts from `-E^s + z^-p + z^q` for every `p, q >= 1` with `p + q` in
/// `ranges`, gives each interior `z^i` an E-degree in `0..s` (degree 0
/// leaves the slot empty unless it holds a free coefficient), places the
/// free coefficients on distinct interior slots other than `z^0`, and keeps
/// the first polynomial of each class.
pub fn enumerate_classes(spec: &ClassEnumSpec) -> Result<Vec<EnumeratedClass>, SweepError> {
    if spec.bands == 0 {
        return Err(SweepError::Config("bands must be at least 1".into()));
    }
    if spec.ranges.is_empty() || spec.ranges.iter().any(|&r| r < 2) {
        return Err(SweepError::Config("hopping ranges must be at least 2".into()));
    }
    if spec.free_coefficients > FREE_NAMES.len() {
        return Err(SweepError::Config(format!("at most {} free coefficients", FREE_NAMES.len())));
    }
    let s = spec.bands;
    let mut ranges = spec.ranges.clone();
    ranges.sort_unstable();
    ranges.dedup();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for range in ranges {
        for p in 1..range as i32 {
            let q = range as i32 - p;
            let interior: Vec<i32> = (-p + 1..q).collect();
            let slots: Vec<i32> = interior.iter().copied().filter(|&i| i != 0).collect();
            let nfree = spec.free_coefficients.min(slots.len());
            let free_sets = combinations(&slots, nfree);
            let assignments = (s as usize).pow(interior.len() as u32);
            for code in 0..assignments {
                let mut c = code;
                let degree: BTreeMap<i32, u32> = interior
                    .iter()
                    .map(|&i| {
                        let k = (c % s as usize) as u32;
                        c /= s as usize;
                        (i, k)
                    })
                    .collect();
                for free in &free_sets {
                    if !spec.free_on_energy_slots && free.iter().any(|i| degree[i] > 0) {
                        continue;
                    }
                    let mut terms = vec![monomial(Some("-1"), 0, s), monomial(None, -p, 0), monomial(None, q, 0)];
                    for &i in &interior {
                        let k = degree[&i];
                        match free.iter().position(|&f| f == i) {
                            Some(slot) => terms.push(monomial(Some(FREE_NAMES[slot]), i, k)),
                            None if k > 0 => terms.push(monomial(None, i, k)),
                            None => {}
                        }
                    }
                    let template = ParamPolyTemplate::parse(&terms.join(" + "))?;
                    let ones = template.params().iter().map(|n| (n.clone(), Complex64::new(1.0, 0.0))).collect();
                    let poly = template.bind(&ones)?;
                    let signature = poly.class_signature();
                    let key = match spec.dedup {
                        DedupKey::ZPresence => signature.canonical_key.clone(),
                        DedupKey::Monomials => monomial_key(&poly),
                    };
                    if seen.insert(key.clone()) {
                        out.push(EnumeratedClass { key, signature, template });
                    }
                }
            }
        }
    }
    Ok(out)
}
