//! Compatibility operators of constant-coefficient systems as syzygies of
//! the symbol, and homogeneous-degree checks of the resulting complex.
//!
//! A row operator `Q = sum_b q_b d^b` of order `d` satisfies `Q o D = 0`
//! iff `Q(xi) sigma_D(xi) = 0`. Its unknowns are the entries of the rows
//! `q_b`, laid out as `mono_index * width + t` over the graded-lex degree-`d`
//! monomials.

mod discover;
mod equivariance;
mod exactness;

pub use discover::{assemble_operator, predicted_new, DegreeRecord, OperatorStack, Stage, SyzygySearch};
pub use equivariance::{act_on_row, equivariance_closure, g0_basis, EquivarianceReport, G0Element};
pub use exactness::{solution_dims, solution_dims_with, verify_exactness, verify_exactness_with, Direct, ExactnessRecord, MatrixSource, SolutionRecord};

use std::collections::{BTreeMap, HashMap};

use crate::dirac::GradedOperator;
use crate::exactla::{ExactMatrix, Scalar};
use crate::polydiff::{Exp, Space};
use crate::{Error, Result};

/// `sigma(xi) = sum_e xi^e M_e` for a homogeneous constant-coefficient
/// operator on `U`; every `e` has total degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolMatrix {
    pub space: Space,
    pub rows: usize,
    pub cols: usize,
    pub degree: usize,
    pub terms: BTreeMap<Exp, ExactMatrix>,
}

impl SymbolMatrix {
    pub fn from_operator(d: &GradedOperator) -> Result<Self> {
        let degree = d
            .op
            .homogeneous_order()
            .ok_or_else(|| Error::InvalidArgument(format!("{} is not a homogeneous constant-coefficient operator", d.name)))?;
        let mut terms = BTreeMap::new();
        for ((_, der), m) in d.op.terms() {
            if d.space.has_y(der) {
                return Err(Error::InvalidArgument(format!("{} differentiates in y", d.name)));
            }
            terms.insert(der.clone(), m.clone());
        }
        Ok(SymbolMatrix { space: d.space, rows: d.target_dim(), cols: d.source_dim(), degree, terms })
    }

    /// Entry `(t, s)` as a polynomial in `xi`.
    pub fn entry(&self, t: usize, s: usize) -> BTreeMap<Exp, Scalar> {
        self.terms
            .iter()
            .filter_map(|(e, m)| {
                let v = m.get(t, s);
                (!v.is_zero()).then(|| (e.clone(), v))
            })
            .collect()
    }

    /// Matrix of `Q -> Q sigma` from degree-`d` rows (columns of the result)
    /// to the coefficients of the degree-`(d + degree)` product (rows).
    pub fn constraint_matrix(&self, d: usize) -> ExactMatrix {
        let (td, sd) = (self.rows, self.cols);
        let unknowns = self.space.monomials(d, false);
        let products = self.space.monomials(d + self.degree, false);
        let index: HashMap<&Exp, usize> = products.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut trip = Vec::new();
        for (bi, b) in unknowns.iter().enumerate() {
            for (e, m) in &self.terms {
                let c: Exp = b.iter().zip(e).map(|(x, y)| x + y).collect();
                let ci = index[&c];
                for (t, s, v) in m.triplets() {
                    trip.push((ci * sd + s, bi * td + t, v));
                }
            }
        }
        ExactMatrix::from_triplets(products.len() * sd, unknowns.len() * td, trip)
    }
}

/// Row operator `Q = sum_b q_b d^b`, homogeneous of order `degree`, acting
/// on `width`-dimensional values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowOperator {
    pub degree: usize,
    pub width: usize,
    pub coeffs: BTreeMap<Exp, Vec<Scalar>>,
}

impl RowOperator {
    pub fn from_vector(space: &Space, degree: usize, width: usize, v: &[Scalar]) -> Self {
        let mut coeffs = BTreeMap::new();
        for (bi, b) in space.monomials(degree, false).into_iter().enumerate() {
            let row = v[bi * width..(bi + 1) * width].to_vec();
            if row.iter().any(|x| !x.is_zero()) {
                coeffs.insert(b, row);
            }
        }
        RowOperator { degree, width, coeffs }
    }

    pub fn to_vector(&self, space: &Space) -> Vec<Scalar> {
        let basis = space.monomials(self.degree, false);
        let mut out = vec![Scalar::zero(); basis.len() * self.width];
        for (bi, b) in basis.iter().enumerate() {
            if let Some(row) = self.coeffs.get(b) {
                out[bi * self.width..(bi + 1) * self.width].clone_from_slice(row);
            }
        }
        out
    }

    /// `xi^m Q` as a sparse row over the degree-`(degree + |m|)` unknowns.
    pub fn shifted_sparse(&self, m: &[u32], index: &HashMap<&Exp, usize>) -> Vec<(usize, Scalar)> {
        let mut out = Vec::new();
        for (b, row) in &self.coeffs {
            let c: Exp = b.iter().zip(m).map(|(x, y)| x + y).collect();
            let ci = index[&c];
            for (t, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out.push((ci * self.width + t, v.clone()));
                }
            }
        }
        out.sort_by_key(|e| e.0);
        out
    }
}
