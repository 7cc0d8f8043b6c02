//! Smith normal form by sparse elimination over the integers.
//!
//! Pivots are chosen with minimal absolute value; among equal values the one
//! with the smallest product of row length and column count wins. A pivot
//! whose column and row cannot be cleared exactly leaves behind a smaller
//! remainder, which becomes the next pivot. Once every pivot is isolated the
//! diagonal is brought into divisibility order with 2x2 gcd/lcm moves.

use log::trace;

use super::sparse::SparseIntMatrix;
use crate::int::Int;

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries `s_1 | s_2 | ... | s_r`, all positive.
    pub invariant_factors: Vec<Int>,
    pub rank: usize,
    pub transforms: Option<Transforms>,
}

/// Unimodular `u` (rows x rows) and `v` (cols x cols) with `u * m * v`
/// diagonal.
#[derive(Clone, Debug)]
pub struct Transforms {
    pub u: SparseIntMatrix,
    pub v: SparseIntMatrix,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<Int> {
        self.invariant_factors.iter().filter(|s| !s.is_one()).cloned().collect()
    }

    /// Diagonal matrix with the invariant factors, shaped like the input.
    pub fn diagonal(&self, rows: usize, cols: usize) -> SparseIntMatrix {
        let triplets = self.invariant_factors.iter().enumerate().map(|(i, s)| (i, i, s.clone()));
        SparseIntMatrix::from_triplets(rows, cols, triplets).expect("rank bounded by shape")
    }
}

type Row = Vec<(usize, Int)>;

/// `dst += f * src`, reporting columns that appear (`true`) or cancel (`false`).
fn axpy(dst: &mut Row, f: &Int, src: &[(usize, Int)], mut changed: impl FnMut(usize, bool)) {
    if f.is_zero() {
        return;
    }
    let old = std::mem::take(dst);
    let mut out = Vec::with_capacity(old.len() + src.len());
    let (mut a, mut b) = (old.into_iter().peekable(), src.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((ca, _)), Some((cb, _))) if ca < cb => out.push(a.next().unwrap()),
            (Some((ca, _)), Some((cb, _))) if ca > cb => {
                let (c, v) = b.next().unwrap();
                out.push((*c, f * v));
                changed(*c, true);
            }
            (Some(_), Some(_)) => {
                let (c, x) = a.next().unwrap();
                let (_, y) = b.next().unwrap();
                let s = &x + &(f * y);
                if s.is_zero() {
                    changed(c, false);
                } else {
                    out.push((c, s));
                }
            }
            (Some(_), None) => out.push(a.next().unwrap()),
            (None, Some(_)) => {
                let (c, v) = b.next().unwrap();
                out.push((*c, f * v));
                changed(*c, true);
            }
            (None, None) => break,
        }
    }
    *dst = out;
}

fn lookup(row: &Row, c: usize) -> Option<&Int> {
    row.binary_search_by_key(&c, |e| e.0).ok().map(|p| &row[p].1)
}

struct Eliminator {
    rows: Vec<Row>,
    col_rows: Vec<Vec<usize>>,
    col_active: Vec<bool>,
    u: Option<Vec<Row>>,
    vt: Option<Vec<Row>>,
    pivots: Vec<(usize, usize, Int)>,
}

fn remove_from(list: &mut Vec<usize>, x: usize) {
    if let Some(p) = list.iter().position(|&y| y == x) {
        list.swap_remove(p);
    }
}

fn identity_rows(n: usize) -> Vec<Row> {
    (0..n).map(|i| vec![(i, Int::ONE)]).collect()
}

impl Eliminator {
    fn new(m: &SparseIntMatrix, keep_transforms: bool) -> Self {
        let (nr, nc) = (m.rows(), m.cols());
        let rows = m.clone().into_rows();
        let mut col_rows = vec![Vec::new(); nc];
        for (r, row) in rows.iter().enumerate() {
            for (c, _) in row {
                col_rows[*c].push(r);
            }
        }
        Eliminator {
            rows,
            col_rows,
            col_active: vec![true; nc],
            u: keep_transforms.then(|| identity_rows(nr)),
            vt: keep_transforms.then(|| identity_rows(nc)),
            pivots: Vec::new(),
        }
    }

    fn value(&self, r: usize, c: usize) -> Int {
        lookup(&self.rows[r], c).cloned().unwrap_or(Int::ZERO)
    }

    /// row `r` += f * row `i`
    fn add_row_multiple(&mut self, r: usize, i: usize, f: &Int) {
        let src = std::mem::take(&mut self.rows[i]);
        let col_rows = &mut self.col_rows;
        axpy(&mut self.rows[r], f, &src, |c, created| {
            if created {
                col_rows[c].push(r);
            } else {
                remove_from(&mut col_rows[c], r);
            }
        });
        self.rows[i] = src;
        if let Some(u) = &mut self.u {
            let src = std::mem::take(&mut u[i]);
            axpy(&mut u[r], f, &src, |_, _| {});
            u[i] = src;
        }
    }

    /// column `c` += f * column `j`
    fn add_col_multiple(&mut self, c: usize, j: usize, f: &Int) {
        let touched: Vec<usize> = self.col_rows[j].clone();
        for r in touched {
            let delta = f * &self.value(r, j);
            let row = &mut self.rows[r];
            match row.binary_search_by_key(&c, |e| e.0) {
                Ok(p) => {
                    let s = &row[p].1 + &delta;
                    if s.is_zero() {
                        row.remove(p);
                        remove_from(&mut self.col_rows[c], r);
                    } else {
                        row[p].1 = s;
                    }
                }
                Err(p) => {
                    row.insert(p, (c, delta));
                    self.col_rows[c].push(r);
                }
            }
        }
        if let Some(vt) = &mut self.vt {
            let src = std::mem::take(&mut vt[j]);
            axpy(&mut vt[c], f, &src, |_, _| {});
            vt[j] = src;
        }
    }

    fn select_pivot(&self) -> Option<(usize, usize)> {
        let mut cols: Vec<(usize, usize)> = self
            .col_rows
            .iter()
            .enumerate()
            .filter(|(c, rs)| self.col_active[*c] && !rs.is_empty())
            .map(|(c, rs)| (rs.len(), c))
            .collect();
        if cols.is_empty() {
            return None;
        }
        cols.sort_unstable();
        let min_row_len =
            cols.iter().flat_map(|&(_, c)| self.col_rows[c].iter()).map(|&r| self.rows[r].len()).min().unwrap_or(1);
        let mut best: Option<(Int, usize, usize, usize)> = None;
        for &(count, c) in &cols {
            if let Some((abs, cost, _, _)) = &best {
                if abs.is_one() && count * min_row_len >= *cost {
                    break;
                }
            }
            for &r in &self.col_rows[c] {
                let v = lookup(&self.rows[r], c).expect("column index consistent").abs();
                let cost = self.rows[r].len() * count;
                let better = match &best {
                    None => true,
                    Some((babs, bcost, _, _)) => match v.cmp(babs) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Equal => cost < *bcost,
                        std::cmp::Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((v, cost, r, c));
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    fn finalize(&mut self, i: usize, j: usize, a: Int) {
        for (c, _) in std::mem::take(&mut self.rows[i]) {
            remove_from(&mut self.col_rows[c], i);
        }
        self.col_active[j] = false;
        self.pivots.push((i, j, a));
    }

    fn run(&mut self) {
        while let Some((i, j)) = self.select_pivot() {
            let a = self.value(i, j);
            trace!("pivot ({i}, {j}) = {a}");
            let others: Vec<usize> = self.col_rows[j].iter().copied().filter(|&r| r != i).collect();
            for r in others {
                let q = self.value(r, j).div_trunc(&a);
                if !q.is_zero() {
                    self.add_row_multiple(r, i, &-q);
                }
            }
            if self.col_rows[j].len() > 1 {
                continue;
            }
            // With column j reduced to the pivot, column operations against
            // it touch row i only; without transforms they can be skipped.
            if self.vt.is_none() && a.is_unit() {
                self.finalize(i, j, a);
                continue;
            }
            let others: Vec<(usize, Int)> = self.rows[i].iter().filter(|(c, _)| *c != j).cloned().collect();
            for (c, v) in others {
                let q = v.div_trunc(&a);
                if !q.is_zero() {
                    self.add_col_multiple(c, j, &-q);
                }
            }
            if self.rows[i].len() > 1 {
                continue;
            }
            self.finalize(i, j, a);
        }
    }
}

/// Turns a list of positive diagonal entries into a divisibility chain.
fn normalize_values(values: &mut [Int]) {
    for s in 0..values.len() {
        for t in s + 1..values.len() {
            if values[t].rem_trunc(&values[s]).is_zero() {
                continue;
            }
            let g = values[s].gcd(&values[t]);
            let l = &values[s].div_exact(&g) * &values[t];
            values[s] = g;
            values[t] = l;
        }
    }
}

fn scale_row(row: &Row, f: &Int) -> Row {
    if f.is_zero() {
        return Row::new();
    }
    row.iter().map(|(c, v)| (*c, f * v)).collect()
}

fn combine(a: &Row, fa: &Int, b: &Row, fb: &Int) -> Row {
    let mut out = scale_row(a, fa);
    axpy(&mut out, fb, b, |_, _| {});
    out
}

pub fn smith_normal_form(m: &SparseIntMatrix, keep_transforms: bool) -> SmithForm {
    let mut elim = Eliminator::new(m, keep_transforms);
    elim.run();
    let rank = elim.pivots.len();

    if !keep_transforms {
        let mut units = 0;
        let mut rest: Vec<Int> = Vec::new();
        for (_, _, a) in &elim.pivots {
            if a.is_unit() {
                units += 1;
            } else {
                rest.push(a.abs());
            }
        }
        rest.sort();
        normalize_values(&mut rest);
        let mut factors = vec![Int::ONE; units];
        factors.extend(rest);
        return SmithForm { invariant_factors: factors, rank, transforms: None };
    }

    let (nr, nc) = (m.rows(), m.cols());
    let u_old = elim.u.take().expect("transforms kept");
    let vt_old = elim.vt.take().expect("transforms kept");

    // move pivot (i_t, j_t) to (t, t)
    let mut row_order: Vec<usize> = elim.pivots.iter().map(|p| p.0).collect();
    let mut col_order: Vec<usize> = elim.pivots.iter().map(|p| p.1).collect();
    let mut used_r = vec![false; nr];
    let mut used_c = vec![false; nc];
    row_order.iter().for_each(|&r| used_r[r] = true);
    col_order.iter().for_each(|&c| used_c[c] = true);
    row_order.extend((0..nr).filter(|&r| !used_r[r]));
    col_order.extend((0..nc).filter(|&c| !used_c[c]));
    let mut u: Vec<Row> = row_order.iter().map(|&r| u_old[r].clone()).collect();
    let mut vt: Vec<Row> = col_order.iter().map(|&c| vt_old[c].clone()).collect();

    let mut diag: Vec<Int> = elim.pivots.iter().map(|p| p.2.clone()).collect();
    for (t, d) in diag.iter_mut().enumerate() {
        if d.is_negative() {
            u[t] = scale_row(&u[t], &Int::from(-1));
            *d = -&*d;
        }
    }

    for s in 0..rank {
        for t in s + 1..rank {
            let (a, b) = (diag[s].clone(), diag[t].clone());
            if b.rem_trunc(&a).is_zero() {
                continue;
            }
            let (g, x, y) = Int::extended_gcd(&a, &b);
            let (ag, bg) = (a.div_exact(&g), b.div_exact(&g));
            let new_us = combine(&u[s], &x, &u[t], &y);
            let new_ut = combine(&u[s], &-&bg, &u[t], &ag);
            u[s] = new_us;
            u[t] = new_ut;
            let ybg = &y * &bg;
            let new_vs = combine(&vt[s], &Int::ONE, &vt[t], &Int::ONE);
            let new_vt = combine(&vt[s], &-&ybg, &vt[t], &(&Int::ONE - &ybg));
            vt[s] = new_vs;
            vt[t] = new_vt;
            diag[s] = g;
            diag[t] = &ag * &b;
        }
    }

    let u = SparseIntMatrix::from_sorted_rows(nr, nr, u);
    let v = SparseIntMatrix::from_sorted_rows(nc, nc, vt).transpose();
    SmithForm { invariant_factors: diag, rank, transforms: Some(Transforms { u, v }) }
}
