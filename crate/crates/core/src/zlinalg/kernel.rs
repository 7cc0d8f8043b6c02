use std::collections::HashMap;

use super::field::{Field, FieldSpec, Fp, Rationals};
use crate::error::Result;
use crate::simplex::{Face, FacetSet};

/// Incrementally maintained kernel of a coboundary matrix restricted to the
/// columns of a fixed facet set `X`.
///
/// Rows are `d`-faces; pushing one appends the row of signed incidences
/// between that face and the members of `X`. The row space is kept in
/// reduced row echelon form, so each push costs `O(|X|^2)` field operations.
#[derive(Clone, Debug)]
pub struct KernelTracker<F: Field> {
    field: F,
    columns: Vec<Face>,
    index: HashMap<Face, usize>,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> KernelTracker<F> {
    pub fn new(field: F, x: &FacetSet) -> Self {
        let columns = x.to_vec();
        let index = columns.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        KernelTracker { field, columns, index, basis: Vec::new(), pivots: Vec::new() }
    }

    /// Tracked facets, in colex order; column `i` of every row refers to `columns()[i]`.
    pub fn columns(&self) -> &[Face] {
        &self.columns
    }

    pub fn dim(&self) -> usize {
        self.columns.len() - self.basis.len()
    }

    /// Appends a row given as `(column, coefficient)` pairs and returns the
    /// new kernel dimension.
    pub fn push_row(&mut self, entries: &[(usize, i64)]) -> usize {
        let f = &self.field;
        let mut v = vec![f.zero(); self.columns.len()];
        for &(c, x) in entries {
            v[c] = f.add(&v[c], &f.embed_i64(x));
        }
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if !f.is_zero(&v[pc]) {
                let coef = v[pc].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = f.sub(x, &f.mul(&coef, r));
                }
            }
        }
        let Some(lead) = v.iter().position(|x| !f.is_zero(x)) else {
            return self.dim();
        };
        let inv = f.inv(&v[lead]);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.basis.iter_mut() {
            if !f.is_zero(&row[lead]) {
                let coef = row[lead].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = f.sub(x, &f.mul(&coef, r));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(at, lead);
        self.basis.insert(at, v);
        self.dim()
    }

    /// Appends the row of the `d`-face `sigma`.
    pub fn push_face(&mut self, sigma: &Face) -> usize {
        let entries: Vec<(usize, i64)> =
            sigma.boundary().filter_map(|(sign, g)| self.index.get(&g).map(|&c| (c, sign))).collect();
        self.push_row(&entries)
    }

    /// Basis of the current kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let k = self.columns.len();
        let mut is_pivot = vec![false; k];
        self.pivots.iter().for_each(|&c| is_pivot[c] = true);
        (0..k)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); k];
                v[free] = f.one();
                for (row, &pc) in self.basis.iter().zip(&self.pivots) {
                    v[pc] = f.neg(&row[free]);
                }
                v
            })
            .collect()
    }
}

/// [`KernelTracker`] over a field chosen at run time.
#[derive(Clone, Debug)]
pub enum AnyKernelTracker {
    Prime(KernelTracker<Fp>),
    Rational(KernelTracker<Rationals>),
}

impl AnyKernelTracker {
    pub fn new(field: FieldSpec, x: &FacetSet) -> Result<Self> {
        Ok(match field {
            FieldSpec::Prime(q) => AnyKernelTracker::Prime(KernelTracker::new(Fp::new(q)?, x)),
            FieldSpec::Rational => AnyKernelTracker::Rational(KernelTracker::new(Rationals, x)),
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyKernelTracker::Prime(t) => t.dim(),
            AnyKernelTracker::Rational(t) => t.dim(),
        }
    }

    pub fn push_row(&mut self, entries: &[(usize, i64)]) -> usize {
        match self {
            AnyKernelTracker::Prime(t) => t.push_row(entries),
            AnyKernelTracker::Rational(t) => t.push_row(entries),
        }
    }

    pub fn push_face(&mut self, sigma: &Face) -> usize {
        match self {
            AnyKernelTracker::Prime(t) => t.push_face(sigma),
            AnyKernelTracker::Rational(t) => t.push_face(sigma),
        }
    }
}
