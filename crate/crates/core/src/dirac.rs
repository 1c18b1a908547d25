//! The k-Dirac operator on `G_-` and on `U`, the descending map, and the
//! matrices of operators between graded polynomial slices.
//!
//! `C^k (x) S` is laid out as `k` consecutive blocks of `2^n` coordinates.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::clifford::SpinorSpace;
use crate::exactla::{ExactMatrix, Scalar};
use crate::liealg::BasisLabel;
use crate::polydiff::{falling, left_invariant_field, pullback_q, DiffOp, Exp, Polynomial, Space};
use crate::{Check, Error, Result};

#[derive(Clone, Debug)]
pub struct GradedOperator {
    pub name: String,
    pub space: Space,
    pub op: DiffOp,
    /// Weighted order on `G_-`, ordinary order on `U`.
    pub order: usize,
    /// `true` for operators on `G_-` (weighted slices).
    pub weighted: bool,
    /// `q(a)` of the source and target summands when they are single modules.
    pub shifts: Option<(usize, usize)>,
}

impl GradedOperator {
    pub fn source_dim(&self) -> usize {
        self.op.source_dim()
    }

    pub fn target_dim(&self) -> usize {
        self.op.target_dim()
    }
}

/// `E_i (x) gamma_alpha`: `S -> C^k (x) S`.
fn component_matrix(k: usize, spinors: &SpinorSpace, i: usize, alpha: usize) -> ExactMatrix {
    let dim = spinors.dim();
    let trip = spinors.gamma(alpha).triplets().map(|(r, c, v)| (i * dim + r, c, v));
    ExactMatrix::from_triplets(k * dim, dim, trip)
}

fn check_range(k: usize, n: usize) -> Result<()> {
    if k < 2 || n < 1 {
        return Err(Error::InvalidArgument(format!("need k >= 2 and n >= 1, got k={k}, n={n}")));
    }
    Ok(())
}

/// `D_0 f = sum_alpha (eps_alpha . L_{e^1 (x) eps_alpha} f, ..., eps_alpha . L_{e^k (x) eps_alpha} f)`.
pub fn build_d0_affine(k: usize, n: usize) -> Result<GradedOperator> {
    check_range(k, n)?;
    let space = Space::new(k, n);
    let spinors = SpinorSpace::build(n)?;
    let mut op = DiffOp::zero(space.nvars(), k * spinors.dim(), spinors.dim());
    for alpha in 0..2 * n {
        for i in 0..k {
            let l = left_invariant_field(&space, &BasisLabel::LowerTensor { i, alpha })?;
            op = op.add(&l.kron(&component_matrix(k, &spinors, i, alpha))?)?;
        }
    }
    Ok(GradedOperator { name: "D0".into(), space, op, order: 1, weighted: true, shifts: Some((0, 0)) })
}

/// `psi -> sum_alpha (eps_alpha . d_{x_{alpha 1}} psi, ..., eps_alpha . d_{x_{alpha k}} psi)`.
pub fn build_d0_flat(k: usize, n: usize) -> Result<GradedOperator> {
    check_range(k, n)?;
    let space = Space::new(k, n);
    let spinors = SpinorSpace::build(n)?;
    let mut op = DiffOp::zero(space.nvars(), k * spinors.dim(), spinors.dim());
    for alpha in 0..2 * n {
        for i in 0..k {
            let d = DiffOp::derivative(&space, space.x(alpha, i));
            op = op.add(&d.kron(&component_matrix(k, &spinors, i, alpha))?)?;
        }
    }
    Ok(GradedOperator { name: "D0".into(), space, op, order: 1, weighted: false, shifts: Some((0, 0)) })
}

/// The constant-coefficient operator `D'` on `U` with `D(q* h) = q*(D' h)`.
///
/// Terms with a `y`-derivative vanish on pullbacks; whatever remains must
/// have constant coefficients.
pub fn descend(d: &GradedOperator) -> Result<GradedOperator> {
    let space = d.space;
    let mut op = DiffOp::zero(space.nvars(), d.target_dim(), d.source_dim());
    for ((c, der), m) in d.op.terms() {
        if space.has_y(der) {
            continue;
        }
        if c.iter().any(|&a| a > 0) {
            return Err(Error::InvalidArgument(format!(
                "term x^{c:?} d^{der:?} survives on pullbacks with a nonconstant coefficient"
            )));
        }
        op = op.add(&DiffOp::term(c.clone(), der.clone(), m.clone()))?;
    }
    if let Some(r) = op.homogeneous_order() {
        if r != d.order {
            return Err(Error::InvalidArgument(format!("descended order {r} differs from weighted order {}", d.order)));
        }
    }
    Ok(GradedOperator { name: d.name.clone(), space, op, order: d.order, weighted: false, shifts: d.shifts })
}

/// Matrix of `d` from the degree-`degree` slice to the degree-`(degree - r)`
/// slice. Column `mono * source_dim + s` is `x^mono (x) unit_s`; rows
/// likewise. Weighted slices live on `G_-`, unweighted ones on `U`.
pub fn gr_matrix(d: &GradedOperator, degree: usize, weighted: bool) -> Result<ExactMatrix> {
    let space = d.space;
    let (sd, td) = (d.source_dim(), d.target_dim());
    let src = space.monomials(degree, weighted);
    if degree < d.order {
        return Ok(ExactMatrix::zeros(0, src.len() * sd));
    }
    let tgt = space.monomials(degree - d.order, weighted);
    let index: HashMap<&Exp, usize> = tgt.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let terms: Vec<(&(Exp, Exp), &ExactMatrix)> = d.op.terms().iter().collect();
    let cols: Vec<Result<Vec<(usize, usize, Scalar)>>> = src
        .par_iter()
        .enumerate()
        .map(|(ci, e)| {
            let mut trip = Vec::new();
            for ((c, der), m) in &terms {
                let Some(ff) = falling(e, der) else { continue };
                let ne: Exp = e.iter().zip(der).zip(c).map(|((a, b), x)| a - b + x).collect();
                if weighted || !space.has_y(&ne) {
                    let Some(&ri) = index.get(&ne) else {
                        return Err(Error::InvalidArgument(format!("{} is not homogeneous of order {}", d.name, d.order)));
                    };
                    let f = Scalar::from_int(ff);
                    for (t, s, v) in m.triplets() {
                        trip.push((ri * td + t, ci * sd + s, &v * &f));
                    }
                }
            }
            Ok(trip)
        })
        .collect();
    let mut all = Vec::new();
    for c in cols {
        all.extend(c?);
    }
    Ok(ExactMatrix::from_triplets(tgt.len() * td, src.len() * sd, all))
}

/// Positions of the `x`-only monomials of a weighted slice inside it.
pub fn flat_positions(space: &Space, degree: usize) -> Vec<usize> {
    let weighted = space.monomials(degree, true);
    let index: HashMap<&Exp, usize> = weighted.iter().enumerate().map(|(i, e)| (e, i)).collect();
    space.monomials(degree, false).iter().map(|e| index[e]).collect()
}

fn as_graded(space: Space, op: DiffOp, order: usize) -> GradedOperator {
    GradedOperator { name: "L".into(), space, op, order, weighted: true, shifts: None }
}

/// `D0_affine(q* h) = q*(D0_flat h)` on every `x^e (x) unit_s` with
/// `|e| <= max_degree`, and the descent of fields and their products.
pub fn descend_suite(k: usize, n: usize, max_degree: usize) -> Result<Vec<Check>> {
    let aff = build_d0_affine(k, n)?;
    let flat = build_d0_flat(k, n)?;
    let space = aff.space;
    let mut checks = Vec::new();

    let (mut count, mut bad) = (0, 0);
    for deg in 0..=max_degree {
        for e in space.monomials(deg, false) {
            for s in 0..flat.source_dim() {
                count += 1;
                let h = Polynomial::basis_element(e.clone(), flat.source_dim(), s);
                let lhs = aff.op.apply(&pullback_q(&space, &h)?)?;
                let rhs = pullback_q(&space, &flat.op.apply(&h)?)?;
                bad += usize::from(lhs != rhs);
            }
        }
    }
    checks.push(Check::new("d0_commutes_with_pullback", bad == 0, format!("{count} inputs up to degree {max_degree}, {bad} mismatches")));

    let desc = descend(&aff)?;
    checks.push(Check::new("descend_d0", desc.op == flat.op, "descend(D0 on G_-) against D0 on U"));

    let lower: Vec<BasisLabel> = (0..2 * n)
        .flat_map(|alpha| (0..k).map(move |i| BasisLabel::LowerTensor { i, alpha }))
        .collect();
    let mut field_bad = 0;
    for l in &lower {
        let BasisLabel::LowerTensor { i, alpha } = *l else { unreachable!() };
        let d = descend(&as_graded(space, left_invariant_field(&space, l)?, 1))?;
        field_bad += usize::from(d.op != DiffOp::derivative(&space, space.x(alpha, i)));
    }
    let mut wedge_bad = 0;
    for r in 0..k {
        for s in r + 1..k {
            let d = descend(&as_graded(space, left_invariant_field(&space, &BasisLabel::LowerWedge(r, s))?, 2))?;
            wedge_bad += usize::from(!d.op.is_zero());
        }
    }
    checks.push(Check::new("descend_lower_tensor", field_bad == 0, format!("{} fields descend to d/dx", lower.len())));
    checks.push(Check::new("descend_lower_wedge", wedge_bad == 0, "fields of g_-2 descend to 0"));

    let mut comp_bad = 0;
    for a in &lower {
        for b in &lower {
            let (la, lb) = (left_invariant_field(&space, a)?, left_invariant_field(&space, b)?);
            let whole = descend(&as_graded(space, la.compose(&lb)?, 2))?;
            let parts = descend(&as_graded(space, la, 1))?.op.compose(&descend(&as_graded(space, lb, 1))?.op)?;
            comp_bad += usize::from(whole.op != parts);
        }
    }
    checks.push(Check::new(
        "descend_composition",
        comp_bad == 0,
        format!("{} pairs of g_-1 fields, {comp_bad} mismatches", lower.len() * lower.len()),
    ));
    Ok(checks)
}
