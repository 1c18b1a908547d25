use super::{DiffOp, Exp, Polynomial, Space};
use crate::exactla::{ExactMatrix, Scalar};
use crate::liealg::{bracket, graded_basis, BasisLabel};
use crate::{Check, Error, Result};

/// The constant `c` in `[L_X, L_Y] = c L_{[X,Y]}` for the matrix realization
/// of `liealg`; checked by [`field_bracket_suite`].
pub const FIELD_BRACKET_CONSTANT: i64 = 1;

/// Left-invariant field of a `g_-` basis vector:
///
/// ```text
/// L_{e^i (x) eps_a} = d_{x_{a i}} - 1/2 sum_j x_{a j} d_{y_{i j}}
/// L_{e^r ^ e^s}     = d_{y_{r s}}
/// ```
///
/// with `d_{y_{ji}} = -d_{y_{ij}}` and `d_{y_{ii}} = 0`.
pub fn left_invariant_field(space: &Space, label: &BasisLabel) -> Result<DiffOp> {
    match *label {
        BasisLabel::LowerTensor { i, alpha } => {
            let mut op = DiffOp::derivative(space, space.x(alpha, i));
            for j in 0..space.k {
                let (yv, sign) = match i.cmp(&j) {
                    std::cmp::Ordering::Less => (space.y(i, j), -1),
                    std::cmp::Ordering::Greater => (space.y(j, i), 1),
                    std::cmp::Ordering::Equal => continue,
                };
                let t = DiffOp::derivative(space, yv).mul_monomial(&space.unit(space.x(alpha, j)), &Scalar::ratio(sign, 2));
                op = op.add(&t)?;
            }
            Ok(op)
        }
        BasisLabel::LowerWedge(r, s) => Ok(DiffOp::derivative(space, space.y(r, s))),
        other => Err(Error::InvalidArgument(format!("{other:?} is not in g_-"))),
    }
}

/// Label of the field attached to variable `v` (same index layout).
fn field_label(space: &Space, v: usize) -> BasisLabel {
    if v < space.nx() {
        BasisLabel::LowerTensor { i: v % space.k, alpha: v / space.k }
    } else {
        let mut idx = v - space.nx();
        for r in 0..space.k {
            let row = space.k - r - 1;
            if idx < row {
                return BasisLabel::LowerWedge(r, r + 1 + idx);
            }
            idx -= row;
        }
        unreachable!("variable index out of range")
    }
}

/// `(D f)(e)`: apply and evaluate at the origin.
pub fn pairing(d: &DiffOp, f: &Polynomial) -> Result<Scalar> {
    if d.source_dim() != 1 || d.target_dim() != 1 {
        return Err(Error::Dimension("pairing needs a scalar operator".into()));
    }
    Ok(d.apply(f)?.eval_at_zero().swap_remove(0))
}

/// `q*`: a polynomial on `U` viewed on `G_-`.
pub fn pullback_q(space: &Space, h: &Polynomial) -> Result<Polynomial> {
    if h.nvars() != space.nvars() {
        return Err(Error::Dimension("polynomial over the wrong variable set".into()));
    }
    if h.has_y(space) {
        return Err(Error::InvalidArgument("polynomials on U have no y-variables".into()));
    }
    Ok(h.clone())
}

/// PBW monomial `L_0^{a_0} L_1^{a_1} ...` in the field order `x` then `y`.
#[derive(Clone, Debug)]
pub struct PbwMonomial {
    pub exp: Exp,
    pub op: DiffOp,
}

/// Basis of `U_r(g_-)`: PBW monomials of total weight `r`, `g_{-2}`
/// factors last.
pub fn pbw_basis(space: &Space, r: usize) -> Result<Vec<PbwMonomial>> {
    let fields: Vec<DiffOp> = (0..space.nvars())
        .map(|v| left_invariant_field(space, &field_label(space, v)))
        .collect::<Result<_>>()?;
    space
        .monomials(r, true)
        .into_iter()
        .map(|exp| {
            let mut op = DiffOp::identity(space.nvars(), 1);
            for (v, &a) in exp.iter().enumerate() {
                for _ in 0..a {
                    op = op.compose(&fields[v])?;
                }
            }
            Ok(PbwMonomial { exp, op })
        })
        .collect()
}

/// Pairing matrix between the PBW basis of `U_r` (rows) and the monomial
/// basis of the weighted slice of degree `s` (columns).
pub fn duality_matrix(space: &Space, r: usize, s: usize) -> Result<ExactMatrix> {
    let rows = pbw_basis(space, r)?;
    let cols = space.monomials(s, true);
    let mut trip = Vec::new();
    for (i, u) in rows.iter().enumerate() {
        for (j, e) in cols.iter().enumerate() {
            let v = pairing(&u.op, &Polynomial::scalar_monomial(e.clone(), Scalar::one()))?;
            if !v.is_zero() {
                trip.push((i, j, v));
            }
        }
    }
    Ok(ExactMatrix::from_triplets(rows.len(), cols.len(), trip))
}

/// Field of an arbitrary element of `g_-`, by linearity in its coordinates.
fn field_of(space: &Space, e: &crate::liealg::BlockElement) -> Result<DiffOp> {
    let mut op = DiffOp::zero(space.nvars(), 1, 1);
    let labels = graded_basis(space.k, space.n, -2).into_iter().chain(graded_basis(space.k, space.n, -1));
    for b in labels {
        let c = match b.label {
            BasisLabel::LowerWedge(r, s) => e.y.get(r, s).clone(),
            BasisLabel::LowerTensor { i, alpha } => e.x.get(alpha, i).clone(),
            _ => unreachable!("graded_basis(-1|-2) yields g_- labels"),
        };
        if !c.is_zero() {
            op = op.add(&left_invariant_field(space, &b.label)?.scale(&c))?;
        }
    }
    Ok(op)
}

/// Compares `[L_X, L_Y]` with `L_{[X,Y]}` for all pairs of `g_-` basis
/// vectors. Returns the checks and the observed constant.
pub fn field_bracket_suite(k: usize, n: usize) -> Result<(Vec<Check>, Option<Scalar>)> {
    let space = Space::new(k, n);
    let basis: Vec<_> = graded_basis(k, n, -1).into_iter().chain(graded_basis(k, n, -2)).collect();
    let fields: Vec<DiffOp> = basis.iter().map(|b| left_invariant_field(&space, &b.label)).collect::<Result<_>>()?;
    let mut constant: Option<Scalar> = None;
    let (mut pairs, mut bad) = (0, 0);
    for (a, xa) in basis.iter().enumerate() {
        for (b, xb) in basis.iter().enumerate() {
            pairs += 1;
            let comm = fields[a].commutator(&fields[b])?;
            let target = field_of(&space, &bracket(&xa.element, &xb.element)?)?;
            if target.is_zero() {
                bad += usize::from(!comm.is_zero());
                continue;
            }
            let (key, m) = target.terms().iter().next().unwrap();
            let c = match comm.terms().get(key) {
                Some(cm) => &cm.get(0, 0) / &m.get(0, 0),
                None => Scalar::zero(),
            };
            if comm != target.scale(&c) || constant.as_ref().is_some_and(|prev| *prev != c) {
                bad += 1;
            }
            constant.get_or_insert(c);
        }
    }
    let expected = Scalar::from_int(FIELD_BRACKET_CONSTANT);
    let checks = vec![
        Check::new("field_bracket", bad == 0, format!("{pairs} pairs, {bad} mismatches")),
        Check::new(
            "normalization_constant",
            constant.as_ref() == Some(&expected),
            format!("[L_X, L_Y] = c L_[X,Y] with c = {}", constant.as_ref().map_or("undetermined".into(), ToString::to_string)),
        ),
    ];
    Ok((checks, constant))
}

/// One block of the duality pairing between `U_r` and the weighted slice
/// of degree `s`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DualityRecord {
    pub r: usize,
    pub s: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub pass: bool,
}

/// `r == s`: square and invertible; `r != s`: zero.
pub fn duality_suite(k: usize, n: usize, max_r: usize) -> Result<Vec<DualityRecord>> {
    let space = Space::new(k, n);
    let mut out = Vec::new();
    for r in 0..=max_r {
        for s in 0..=max_r {
            let m = duality_matrix(&space, r, s)?;
            let rank = crate::exactla::rank(&m);
            let pass = if r == s { m.rows() == m.cols() && rank == m.rows() } else { m.is_zero() };
            out.push(DualityRecord { r, s, rows: m.rows(), cols: m.cols(), rank, pass });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lt(i: usize, alpha: usize) -> BasisLabel {
        BasisLabel::LowerTensor { i, alpha }
    }

    #[test]
    fn field_values() {
        let s = Space::new(2, 2);
        let l = left_invariant_field(&s, &lt(0, 0)).unwrap();
        let one = Polynomial::constant(s.nvars(), vec![Scalar::one()]);
        let x11 = Polynomial::scalar_monomial(s.unit(s.x(0, 0)), Scalar::one());
        assert_eq!(l.apply(&x11).unwrap(), one);
        let y12 = Polynomial::scalar_monomial(s.unit(s.y(0, 1)), Scalar::one());
        let expect = Polynomial::scalar_monomial(s.unit(s.x(0, 1)), Scalar::ratio(-1, 2));
        assert_eq!(l.apply(&y12).unwrap(), expect);
        let ly = left_invariant_field(&s, &BasisLabel::LowerWedge(0, 1)).unwrap();
        assert_eq!(ly.apply(&y12).unwrap(), one);
        assert!(left_invariant_field(&s, &BasisLabel::GlK(0, 0)).is_err());
    }

    #[test]
    fn fields_on_pullbacks() {
        let s = Space::new(2, 2);
        let mut e = s.zero_exp();
        e[s.x(0, 0)] = 2;
        let h = pullback_q(&s, &Polynomial::scalar_monomial(e, Scalar::one())).unwrap();
        let l = left_invariant_field(&s, &lt(0, 0)).unwrap();
        let expect = Polynomial::scalar_monomial(s.unit(s.x(0, 0)), Scalar::from_int(2));
        assert_eq!(l.apply(&h).unwrap(), expect);
        let ly = left_invariant_field(&s, &BasisLabel::LowerWedge(0, 1)).unwrap();
        assert!(ly.apply(&h).unwrap().is_zero());
        let y = Polynomial::scalar_monomial(s.unit(s.y(0, 1)), Scalar::one());
        assert!(pullback_q(&s, &y).is_err());
    }

    #[test]
    fn pairing_examples() {
        let s = Space::new(2, 2);
        let ly = left_invariant_field(&s, &BasisLabel::LowerWedge(0, 1)).unwrap();
        let y12 = Polynomial::scalar_monomial(s.unit(s.y(0, 1)), Scalar::one());
        assert_eq!(pairing(&ly, &y12).unwrap(), Scalar::one());
        let one = Polynomial::constant(s.nvars(), vec![Scalar::one()]);
        assert_eq!(pairing(&DiffOp::identity(s.nvars(), 1), &one).unwrap(), Scalar::one());
    }

    #[test]
    fn bracket_compatibility_small() {
        let (checks, c) = field_bracket_suite(2, 2).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        assert_eq!(c, Some(Scalar::one()));
    }

    #[test]
    fn small_duality() {
        let s = Space::new(2, 1);
        for r in 0..=3 {
            let m = duality_matrix(&s, r, r).unwrap();
            assert_eq!(m.rows(), m.cols());
            assert_eq!(crate::exactla::rank(&m), m.rows());
            if r > 0 {
                assert!(duality_matrix(&s, r, r - 1).unwrap().is_zero());
            }
        }
    }
}
