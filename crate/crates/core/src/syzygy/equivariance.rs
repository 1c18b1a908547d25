use std::collections::BTreeMap;

use serde::Serialize;

use super::RowOperator;
use crate::clifford::SpinorSpace;
use crate::exactla::{ExactMatrix, RowSpace, Scalar};
use crate::polydiff::{Exp, Space};
use crate::Result;

/// `(a, omega)` in `gl(k) + so(2n)`.
#[derive(Clone, Debug)]
pub struct G0Element {
    pub name: String,
    pub a: ExactMatrix,
    pub omega: ExactMatrix,
}

/// `E_ij` in `gl(k)` and `E_ab - E_ba` in `so(2n)`.
pub fn g0_basis(k: usize, n: usize) -> Vec<G0Element> {
    let m = 2 * n;
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            out.push(G0Element {
                name: format!("E{}{}", i + 1, j + 1),
                a: ExactMatrix::from_triplets(k, k, [(i, j, Scalar::one())]),
                omega: ExactMatrix::zeros(m, m),
            });
        }
    }
    for a in 0..m {
        for b in a + 1..m {
            out.push(G0Element {
                name: format!("W{}{}", a + 1, b + 1),
                a: ExactMatrix::zeros(k, k),
                omega: ExactMatrix::from_triplets(m, m, [(a, b, Scalar::one()), (b, a, Scalar::from_int(-1))]),
            });
        }
    }
    out
}

/// Action on a row operator over `C^k (x) S`:
///
/// ```text
/// (X.Q)(Xi) = d_{dXi} Q + Q rho(X),   dXi = omega Xi - Xi a,
/// rho(X) = -a^T (x) 1 + 1 (x) s(omega)
/// ```
///
/// where `Xi` is the `2n x k` matrix of symbol variables. If `Q sigma = 0`
/// then `(X.Q) sigma = 0`.
pub fn act_on_row(space: &Space, spinors: &SpinorSpace, x: &G0Element, q: &RowOperator) -> RowOperator {
    let (k, m, dim) = (space.k, 2 * space.n, spinors.dim());
    let mut out: BTreeMap<Exp, Vec<Scalar>> = BTreeMap::new();
    let mut push = |e: Exp, row: Vec<Scalar>| {
        let slot = out.entry(e).or_insert_with(|| vec![Scalar::zero(); q.width]);
        for (a, b) in slot.iter_mut().zip(&row) {
            *a += b;
        }
    };
    let rho_s = spinors.spin_action(&x.omega);
    for (b, row) in &q.coeffs {
        // d_{dXi}: each xi_{alpha i} in b is replaced by (dXi)_{alpha i}
        for alpha in 0..m {
            for i in 0..k {
                let v = space.x(alpha, i);
                if b[v] == 0 {
                    continue;
                }
                let mult = Scalar::from_int(b[v] as i64);
                let mut lowered = b.clone();
                lowered[v] -= 1;
                for beta in 0..m {
                    let w = x.omega.get(alpha, beta);
                    if !w.is_zero() {
                        let mut e = lowered.clone();
                        e[space.x(beta, i)] += 1;
                        let f = &w * &mult;
                        push(e, row.iter().map(|r| r * &f).collect());
                    }
                }
                for j in 0..k {
                    let w = x.a.get(j, i);
                    if !w.is_zero() {
                        let mut e = lowered.clone();
                        e[space.x(alpha, j)] += 1;
                        let f = -(&w * &mult);
                        push(e, row.iter().map(|r| r * &f).collect());
                    }
                }
            }
        }
        // Q rho(X)
        let mut res = vec![Scalar::zero(); q.width];
        for i in 0..k {
            for s in 0..dim {
                let qv = &row[i * dim + s];
                if qv.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let w = x.a.get(j, i);
                    if !w.is_zero() {
                        res[j * dim + s] -= &(qv * &w);
                    }
                }
                for (c, w) in rho_s.row(s) {
                    res[i * dim + c] += &(qv * w);
                }
            }
        }
        push(b.clone(), res);
    }
    out.retain(|_, r| r.iter().any(|x| !x.is_zero()));
    RowOperator { degree: q.degree, width: q.width, coeffs: out }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    pub k: usize,
    pub n: usize,
    pub degree: usize,
    pub span_dim: usize,
    pub closure_dim: usize,
    pub invariant: bool,
}

/// Whether the span of `gens` (rows over `C^k (x) S`, one common degree) is
/// stable under `gl(k) + so(2n)`.
pub fn equivariance_closure(gens: &[RowOperator], k: usize, n: usize) -> Result<EquivarianceReport> {
    let space = Space::new(k, n);
    let spinors = SpinorSpace::build(n)?;
    let degree = gens.first().map_or(0, |g| g.degree);
    let unknowns = space.monomials(degree, false).len() * k * spinors.dim();
    let mut span = RowSpace::new(unknowns);
    for g in gens {
        span.insert_dense(&g.to_vector(&space));
    }
    let span_dim = span.rank();
    for x in g0_basis(k, n) {
        for g in gens {
            span.insert_dense(&act_on_row(&space, &spinors, &x, g).to_vector(&space));
        }
    }
    let closure_dim = span.rank();
    Ok(EquivarianceReport { k, n, degree, span_dim, closure_dim, invariant: span_dim == closure_dim })
}
