//! Exact sparse Gauss-Jordan elimination over `Q(i)`.

use std::collections::BTreeMap;

use super::{ExactMatrix, Scalar};

type SparseRow = Vec<(usize, Scalar)>;

/// Reduced row echelon form: `rows[t]` has a 1 in column `pivots[t]` and a 0
/// in every other pivot column.
#[derive(Clone, Debug)]
pub struct Rref {
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseRow>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical kernel basis: one vector per free column `f`, with a 1 at
    /// `f` and 0 at the other free columns.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (t, row) in self.rows.iter().enumerate() {
                if let Ok(pos) = row.binary_search_by_key(&f, |(c, _)| *c) {
                    v[self.pivots[t]] = -&row[pos].1;
                }
            }
            out.push(v);
        }
        out
    }
}

/// `v + a * w` for sorted sparse rows.
fn axpy(v: &SparseRow, a: &Scalar, w: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let ci = v.get(i).map_or(usize::MAX, |e| e.0);
        let cj = w.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(v[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, a * &w[j].1));
            j += 1;
        } else {
            let s = &v[i].1 + &(a * &w[j].1);
            if !s.is_zero() {
                out.push((ci, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry(row: &SparseRow, c: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&c, |(col, _)| *col).ok().map(|p| &row[p].1)
}

/// Span of rows kept in fully reduced echelon form, grown one row at a time.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    basis: BTreeMap<usize, SparseRow>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace { cols, basis: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Inserts a sparse row (sorted by column); `true` iff the span grew.
    pub fn insert(&mut self, row: &[(usize, Scalar)]) -> bool {
        let mut v: SparseRow = row.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        let hits: Vec<usize> = v.iter().map(|(c, _)| *c).filter(|c| self.basis.contains_key(c)).collect();
        for c in hits {
            if let Some(a) = entry(&v, c).cloned() {
                v = axpy(&v, &(-a), &self.basis[&c]);
            }
        }
        if v.is_empty() {
            return false;
        }
        let (pc, lead) = v[0].clone();
        let inv = lead.inv().expect("nonzero lead");
        let v: SparseRow = v.into_iter().map(|(c, x)| (c, &x * &inv)).collect();
        for row in self.basis.values_mut() {
            if let Some(a) = entry(row, pc).cloned() {
                *row = axpy(row, &(-a), &v);
            }
        }
        self.basis.insert(pc, v);
        true
    }

    /// Inserts a dense row; `true` iff the span grew.
    pub fn insert_dense(&mut self, row: &[Scalar]) -> bool {
        let sparse: SparseRow = row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect();
        self.insert(&sparse)
    }

    pub fn into_rref(self) -> Rref {
        let (pivots, rows) = self.basis.into_iter().unzip();
        Rref { cols: self.cols, pivots, rows }
    }
}

/// Incremental Gauss-Jordan: rows are inserted one at a time into a fully
/// reduced pivot set.
pub fn rref(m: &ExactMatrix) -> Rref {
    let mut space = RowSpace::new(m.cols());
    for r in 0..m.rows() {
        space.insert(m.row(r));
    }
    space.into_rref()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_dependent_rows() {
        let m = ExactMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let r = rref(&m);
        assert_eq!(r.pivots, vec![0, 1]);
        let k = r.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![Scalar::from_int(-1), Scalar::from_int(-1), Scalar::one()]);
    }

    #[test]
    fn gaussian_pivot() {
        let m = ExactMatrix::from_rows(vec![
            vec![Scalar::one(), Scalar::i()],
            vec![Scalar::i(), Scalar::from_int(-1)],
        ])
        .unwrap();
        assert_eq!(rref(&m).rank(), 1);
    }
}
