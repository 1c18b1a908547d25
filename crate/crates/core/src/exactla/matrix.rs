use std::collections::BTreeMap;
use std::fmt;

use super::Scalar;
use crate::Error;

/// A `rows x cols` matrix over the Gaussian rationals.
///
/// Storage is row-wise sparse: each row keeps its nonzero entries sorted by
/// column. The observable behaviour is that of a dense row-major array.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Scalar)>>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, Scalar::one())]).collect();
        ExactMatrix { rows: n, cols: n, data }
    }

    /// Builds from a dense row-major entry array. Fails unless
    /// `entries.len() == rows * cols`.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let mut m = ExactMatrix::zeros(rows, cols);
        for (idx, v) in entries.into_iter().enumerate() {
            if !v.is_zero() {
                m.data[idx / cols.max(1)].push((idx % cols, v));
            }
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        ExactMatrix::from_entries(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer convenience constructor, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r: Vec<Vec<Scalar>> = rows.iter().map(|row| row.iter().map(|&v| Scalar::from_int(v)).collect()).collect();
        ExactMatrix::from_rows(r).expect("rectangular input")
    }

    /// Sums duplicate positions; zero results are dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            if v.is_zero() {
                continue;
            }
            let slot = acc[r].entry(c).or_insert_with(Scalar::zero);
            *slot += &v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        ExactMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[Vec<Scalar>]) -> Self {
        let trip = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().enumerate().map(move |(r, v)| (r, c, v.clone())));
        ExactMatrix::from_triplets(nrows, columns.len(), trip)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(pos) => self.data[r][pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// Nonzero entries of row `r` as `(col, value)`, sorted by column.
    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn row_dense(&self, r: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.cols];
        for (c, v) in &self.data[r] {
            out[*c] = v.clone();
        }
        out
    }

    /// Dense row-major entries.
    pub fn entries(&self) -> Vec<Scalar> {
        (0..self.rows).flat_map(|r| self.row_dense(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let trip = self
            .data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (*c, r, v.clone())));
        ExactMatrix::from_triplets(self.cols, self.rows, trip)
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, Error> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &rhs.data[*k] {
                    let slot = acc.entry(*c).or_insert_with(Scalar::zero);
                    *slot += &(a * b);
                }
            }
            data.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Ok(ExactMatrix { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                let mut acc = Scalar::zero();
                for (c, a) in row {
                    if !v[*c].is_zero() {
                        acc += &(a * &v[*c]);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        if s.is_zero() {
            return ExactMatrix::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|row| row.iter().map(|(c, v)| (*c, v * s)).collect()).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, Error> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension("matrix sum of different shapes".into()));
        }
        let trip = self.triplets().chain(rhs.triplets());
        Ok(ExactMatrix::from_triplets(self.rows, self.cols, trip))
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, Error> {
        self.add(&rhs.scale(&Scalar::from_int(-1)))
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c.to_owned(), v.clone())))
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix, Error> {
        if self.cols != other.cols {
            return Err(Error::Dimension("vstack with different column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(ExactMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Submatrix on the given row and column index lists (in that order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (j, &c) in cols.iter().enumerate() {
            pos[c] = j;
        }
        let data = rows
            .iter()
            .map(|&r| {
                let mut row: Vec<(usize, Scalar)> = self.data[r]
                    .iter()
                    .filter(|(c, _)| pos[*c] != usize::MAX)
                    .map(|(c, v)| (pos[*c], v.clone()))
                    .collect();
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect();
        ExactMatrix { rows: rows.len(), cols: cols.len(), data }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} ({} nonzero)", self.rows, self.cols, self.nnz())?;
        if self.rows * self.cols <= 400 {
            for r in 0..self.rows {
                let row: Vec<String> = self.row_dense(r).iter().map(ToString::to_string).collect();
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        }
        Ok(())
    }
}
