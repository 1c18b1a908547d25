use rayon::prelude::*;
use serde::Serialize;

use super::OperatorStack;
use crate::dirac::{gr_matrix, GradedOperator};
use crate::exactla::{rank, rank_lower_bound, ExactMatrix};
use crate::{Error, Result};

/// Exactness of `V_{j-1} -> V_j -> V_{j+1}` in one homogeneous degree of
/// `V_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessRecord {
    pub k: usize,
    pub n: usize,
    pub spot: usize,
    pub degree: usize,
    /// Rank of `D_{j-1}` into the degree-`degree` slice of `V_j`.
    pub rank: usize,
    /// Kernel dimension of `D_j` on that slice.
    pub kernel_dim: usize,
    /// Exactness predicts `kernel_dim == rank`.
    pub predicted: usize,
    pub pass: bool,
    pub method: &'static str,
}

/// Source of `gr` matrices: `(operator, source degree) -> matrix`. The
/// default is [`gr_matrix`] on flat slices; the CLI puts a cache in front.
pub trait MatrixSource: Sync {
    fn matrix(&self, op: &GradedOperator, degree: usize) -> Result<ExactMatrix>;
}

/// Builds every matrix from scratch.
pub struct Direct;

impl MatrixSource for Direct {
    fn matrix(&self, op: &GradedOperator, degree: usize) -> Result<ExactMatrix> {
        gr_matrix(op, degree, false)
    }
}

fn one_degree<S: MatrixSource>(src: &S, k: usize, n: usize, prev: &GradedOperator, cur: &GradedOperator, spot: usize, d: usize) -> Result<ExactnessRecord> {
    let into = src.matrix(prev, d + prev.order)?;
    let out = src.matrix(cur, d)?;
    let cols = out.cols();
    let (li, lo) = rayon::join(|| rank_lower_bound(&into), || rank_lower_bound(&out));
    // Composite zero gives rank(into) + rank(out) <= cols; lower bounds
    // meeting it pin both ranks.
    let (r_in, r_out, method) = if li + lo == cols {
        (li, lo, "sandwich")
    } else {
        let (a, b) = rayon::join(|| rank(&into), || rank(&out));
        (a, b, "exact")
    };
    let kernel_dim = cols - r_out;
    Ok(ExactnessRecord { k, n, spot, degree: d, rank: r_in, kernel_dim, predicted: r_in, pass: kernel_dim == r_in, method })
}

/// Checks exactness at `V_spot` (between `D_{spot-1}` and `D_spot`) in the
/// given degrees. The sandwich shortcut relies on `D_spot o D_{spot-1} = 0`,
/// which is checked symbolically first.
pub fn verify_exactness(stack: &OperatorStack, spot: usize, degrees: &[usize]) -> Result<Vec<ExactnessRecord>> {
    verify_exactness_with(&Direct, stack, spot, degrees)
}

pub fn verify_exactness_with<S: MatrixSource>(src: &S, stack: &OperatorStack, spot: usize, degrees: &[usize]) -> Result<Vec<ExactnessRecord>> {
    if spot == 0 || spot >= stack.ops.len() {
        return Err(Error::InvalidArgument(format!(
            "spot {spot} needs operators D_{} and D_{spot}; the stack has {}",
            spot.wrapping_sub(1),
            stack.ops.len()
        )));
    }
    let (prev, cur) = (&stack.ops[spot - 1], &stack.ops[spot]);
    if !cur.op.compose(&prev.op)?.is_zero() {
        return Err(Error::InvalidArgument(format!("D_{spot} o D_{} is not zero", spot - 1)));
    }
    degrees.par_iter().map(|&d| one_degree(src, stack.k, stack.n, prev, cur, spot, d)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionRecord {
    pub degree: usize,
    pub source_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
}

/// Dimensions of homogeneous polynomial solutions of `d0`, degree by degree.
pub fn solution_dims(d0: &GradedOperator, degrees: &[usize]) -> Result<Vec<SolutionRecord>> {
    solution_dims_with(&Direct, d0, degrees)
}

pub fn solution_dims_with<S: MatrixSource>(src: &S, d0: &GradedOperator, degrees: &[usize]) -> Result<Vec<SolutionRecord>> {
    degrees
        .par_iter()
        .map(|&d| {
            let m = src.matrix(d0, d)?;
            let r = rank(&m);
            Ok(SolutionRecord { degree: d, source_dim: m.cols(), rank: r, kernel_dim: m.cols() - r })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::build_d0_flat;

    #[test]
    fn monogenic_low_degrees() {
        let d0 = build_d0_flat(2, 2).unwrap();
        let dims = solution_dims(&d0, &[0, 1]).unwrap();
        assert_eq!(dims[0].kernel_dim, 4);
        assert_eq!(dims[1].kernel_dim, 24);
    }

    #[test]
    fn spot_bounds() {
        let st = OperatorStack::new(2, 2).unwrap();
        assert!(verify_exactness(&st, 1, &[1]).is_err());
        assert!(verify_exactness(&st, 0, &[1]).is_err());
    }
}
