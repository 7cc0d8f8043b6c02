use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ambient::{Ambient, Combinations};
use super::cochain::{b_of_cochain, beta_of_set, Cochain};
use super::minimal::to_facet_set;
use super::sets::b_of_set;
use super::weight::{weight, Caps};
use crate::error::{Error, Result};
use crate::zlinalg::FieldSpec;

/// One audited cochain. `b_set` is filled in only for full-weight cochains.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub support: Vec<usize>,
    pub values: Vec<u64>,
    pub beta: usize,
    pub b_set: Option<usize>,
    pub b_min_cochain: usize,
    pub weight: usize,
    pub full_weight: bool,
    pub bound: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoisoReport {
    pub n: usize,
    pub d: usize,
    pub field: FieldSpec,
    pub support_cap: usize,
    pub caps: Caps,
    /// Every nonzero cochain with support within the cap.
    pub checked: usize,
    /// Checked cochains that a coboundary can shorten.
    pub shortened: usize,
    pub violations: usize,
    pub records: Vec<AuditRecord>,
}

impl CoisoReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r)?;
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Exhaustive check of the coisoperimetric inequality `b(phi) >= n w / (d+1)`
/// over every nonzero cochain on at most `support_cap` facets over `Z/q`.
///
/// Each full-weight cochain also has `beta(X) <= b(X, Z/q) <= b(phi)`
/// checked for its support `X`, with `b(X, Z/q)` held to the same bound.
pub fn coiso_audit(n: usize, d: usize, field: FieldSpec, support_cap: usize, caps: &Caps) -> Result<CoisoReport> {
    let FieldSpec::Prime(q) = field.validate()? else {
        return Err(Error::InvalidParameter("the coisoperimetric audit enumerates cochains over Z/q only".into()));
    };
    Cochain::zero(n, d, field)?;
    let amb = Ambient::get(n, d);
    let supports: Vec<Vec<usize>> =
        (1..=support_cap.min(amb.num_facets())).flat_map(|k| Combinations::new(amb.num_facets(), k)).collect();
    let per_support: Vec<Vec<AuditRecord>> =
        supports.par_iter().map(|idx| audit_support(&amb, field, q, idx, caps)).collect::<Result<_>>()?;

    let mut report = CoisoReport {
        n,
        d,
        field,
        support_cap,
        caps: *caps,
        checked: 0,
        shortened: 0,
        violations: 0,
        records: Vec::new(),
    };
    for records in per_support {
        report.shortened += records.iter().filter(|r| !r.full_weight).count();
        report.checked += records.len();
        report.violations += records.iter().filter(|r| !r.ok).count();
        report.records.extend(records);
    }
    Ok(report)
}

fn audit_support(amb: &Ambient, field: FieldSpec, q: u64, idx: &[usize], caps: &Caps) -> Result<Vec<AuditRecord>> {
    let (n, d, k) = (amb.n, amb.d, idx.len());
    let x = to_facet_set(amb, idx);
    let beta = beta_of_set(&x);
    let mut b_set: Option<Option<usize>> = None;
    let mut records = Vec::new();
    let mut values = vec![1u64; k];
    loop {
        let phi =
            Cochain::from_ints(n, d, field, idx.iter().zip(&values).map(|(&f, &v)| (amb.facets[f].clone(), v as i64)))?;
        let w = weight(&phi, caps)?;
        let b_phi = b_of_cochain(&phi);
        let coiso = b_phi * (d + 1) >= n * w;
        let full_weight = w == k;
        let (b_x, chain) = if full_weight {
            let b_x = match b_set {
                Some(b) => b,
                None => *b_set.insert(b_of_set(&x, &[field], caps)?),
            };
            (b_x, b_x.is_some_and(|b| beta <= b && b <= b_phi && b * (d + 1) >= n * k))
        } else {
            (None, true)
        };
        records.push(AuditRecord {
            support: idx.to_vec(),
            values: values.clone(),
            beta,
            b_set: b_x,
            b_min_cochain: b_phi,
            weight: w,
            full_weight,
            bound: (n * w) as f64 / (d + 1) as f64,
            ok: coiso && chain,
        });
        // next assignment of nonzero values
        let mut i = 0;
        while i < k && values[i] == q - 1 {
            values[i] = 1;
            i += 1;
        }
        if i == k {
            break;
        }
        values[i] += 1;
    }
    Ok(records)
}
