//! Sparse exact Gaussian elimination over ℚ.
//!
//! Columns are plain indices; the caller encodes its monomial order by how it
//! numbers unknowns (smaller index = earlier pivot).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Adds `factor · src` into `dst`, dropping cancelled entries.
fn axpy(dst: &mut SparseRow, factor: &Rational, src: &SparseRow) {
    for (col, v) in src {
        let entry = dst.entry(*col).or_insert_with(Rational::zero);
        *entry += factor * v;
        if entry.is_zero() {
            dst.remove(col);
        }
    }
}

/// Reduced row echelon form. Rows come back sorted by pivot column with unit
/// pivots; zero rows are dropped.
pub fn rref(rows: impl IntoIterator<Item = SparseRow>) -> Vec<SparseRow> {
    // pivot column -> row whose first nonzero entry is that column
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        row.retain(|_, v| !v.is_zero());
        // Eliminating with a pivot row only touches columns right of its pivot,
        // so a left-to-right sweep sees every pivot column once.
        let mut cursor = 0usize;
        loop {
            let next = row
                .range(cursor..)
                .map(|(c, _)| *c)
                .find(|c| pivots.contains_key(c));
            let Some(col) = next else { break };
            let factor = -row[&col].clone();
            axpy(&mut row, &factor, &pivots[&col]);
            cursor = col + 1;
        }
        if let Some((&lead, v)) = row.iter().next() {
            let inv = v.recip();
            for val in row.values_mut() {
                *val *= &inv;
            }
            pivots.insert(lead, row);
        }
    }
    // Back substitution, largest pivot first.
    let cols: Vec<usize> = pivots.keys().rev().copied().collect();
    for &p in &cols {
        let mut row = pivots.remove(&p).expect("pivot present");
        let targets: Vec<usize> = row
            .keys()
            .filter(|c| **c > p && pivots.contains_key(c))
            .copied()
            .collect();
        for q in targets {
            if let Some(factor) = row.get(&q).map(|v| -v.clone()) {
                axpy(&mut row, &factor, &pivots[&q]);
            }
        }
        pivots.insert(p, row);
    }
    pivots.into_values().collect()
}

/// Basis of `{v : A v = 0}` for `A` with `ncols` columns, returned in reduced
/// echelon form so the basis is canonical.
pub fn nullspace(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> Vec<SparseRow> {
    let reduced = rref(rows);
    let pivot_of: BTreeMap<usize, &SparseRow> =
        reduced.iter().map(|r| (*r.keys().next().expect("nonzero"), r)).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_of.contains_key(c)) {
        let mut v = SparseRow::new();
        v.insert(free, Rational::one());
        for (&p, row) in &pivot_of {
            if let Some(a) = row.get(&free) {
                v.insert(p, -a.clone());
            }
        }
        basis.push(v);
    }
    rref(basis)
}

/// `A · v` for a sparse row-major matrix.
pub fn mat_vec(rows: &[SparseRow], v: &SparseRow) -> Vec<Rational> {
    rows.iter()
        .map(|r| {
            r.iter()
                .filter_map(|(c, a)| v.get(c).map(|b| a * b))
                .fold(Rational::zero(), |acc, x| acc + x)
        })
        .collect()
}
