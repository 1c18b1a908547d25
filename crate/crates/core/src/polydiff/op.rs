use std::collections::BTreeMap;
use std::fmt;

use super::{falling, Exp, Polynomial, Space};
use crate::exactla::{ExactMatrix, Scalar};
use crate::{Error, Result};

/// Differential operator in normal form `sum x^c M_{c,d} d^d`: coefficient
/// monomials to the left of derivative monomials, matrices
/// `target_dim x source_dim`. Stored matrices are nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    nvars: usize,
    source_dim: usize,
    target_dim: usize,
    terms: BTreeMap<(Exp, Exp), ExactMatrix>,
}

fn binom(n: u32, r: u32) -> i64 {
    (0..r).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64)
}

impl DiffOp {
    pub fn zero(nvars: usize, target_dim: usize, source_dim: usize) -> Self {
        DiffOp { nvars, source_dim, target_dim, terms: BTreeMap::new() }
    }

    pub fn identity(nvars: usize, dim: usize) -> Self {
        DiffOp::term(vec![0; nvars], vec![0; nvars], ExactMatrix::identity(dim))
    }

    /// The single term `x^coeff M d^deriv`.
    pub fn term(coeff: Exp, deriv: Exp, m: ExactMatrix) -> Self {
        let mut op = DiffOp::zero(coeff.len(), m.rows(), m.cols());
        op.add_term(coeff, deriv, m);
        op
    }

    /// Scalar `d/dv`.
    pub fn derivative(space: &Space, v: usize) -> Self {
        DiffOp::term(space.zero_exp(), space.unit(v), ExactMatrix::identity(1))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// Terms keyed by `(coefficient exponent, derivative exponent)`.
    pub fn terms(&self) -> &BTreeMap<(Exp, Exp), ExactMatrix> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, coeff: Exp, deriv: Exp, m: ExactMatrix) {
        debug_assert_eq!((m.rows(), m.cols()), (self.target_dim, self.source_dim));
        if m.is_zero() {
            return;
        }
        let key = (coeff, deriv);
        match self.terms.remove(&key) {
            Some(old) => {
                let s = old.add(&m).unwrap();
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                self.terms.insert(key, m);
            }
        }
    }

    fn check_same(&self, o: &DiffOp) -> Result<()> {
        if (self.nvars, self.source_dim, self.target_dim) != (o.nvars, o.source_dim, o.target_dim) {
            return Err(Error::Dimension("operators of different shapes".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &DiffOp) -> Result<DiffOp> {
        self.check_same(o)?;
        let mut out = self.clone();
        for ((c, d), m) in &o.terms {
            out.add_term(c.clone(), d.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &DiffOp) -> Result<DiffOp> {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> DiffOp {
        let mut out = DiffOp::zero(self.nvars, self.target_dim, self.source_dim);
        for ((c, d), m) in &self.terms {
            out.add_term(c.clone(), d.clone(), m.scale(s));
        }
        out
    }

    /// Multiplies on the left by the scalar monomial `c x^e`.
    pub fn mul_monomial(&self, e: &[u32], c: &Scalar) -> DiffOp {
        let mut out = DiffOp::zero(self.nvars, self.target_dim, self.source_dim);
        for ((ce, d), m) in &self.terms {
            let ne: Exp = ce.iter().zip(e).map(|(a, b)| a + b).collect();
            out.add_term(ne, d.clone(), m.scale(c));
        }
        out
    }

    /// `self (x) m` for a scalar operator: every `1x1` coefficient `c`
    /// becomes `c m`.
    pub fn kron(&self, m: &ExactMatrix) -> Result<DiffOp> {
        if self.source_dim != 1 || self.target_dim != 1 {
            return Err(Error::Dimension("kron needs a scalar operator".into()));
        }
        let mut out = DiffOp::zero(self.nvars, m.rows(), m.cols());
        for ((c, d), s) in &self.terms {
            out.add_term(c.clone(), d.clone(), m.scale(&s.get(0, 0)));
        }
        Ok(out)
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.nvars() != self.nvars || f.dim() != self.source_dim {
            return Err(Error::Dimension(format!(
                "operator on {}-dimensional values applied to {}-dimensional values",
                self.source_dim,
                f.dim()
            )));
        }
        let mut out = Polynomial::zero(self.nvars, self.target_dim);
        for ((c, d), m) in &self.terms {
            for (e, v) in f.terms() {
                let Some(ff) = falling(e, d) else { continue };
                let ne: Exp = e.iter().zip(d).zip(c).map(|((a, b), x)| a - b + x).collect();
                let w = m.mul_vec(v)?;
                let k = Scalar::from_int(ff);
                out.add_term(ne, w.iter().map(|x| x * &k).collect());
            }
        }
        Ok(out)
    }

    /// `self o inner`, normal-ordered by Leibniz:
    /// `d^a x^c = sum_{b <= a} C(a, b) (d^b x^c) d^{a-b}`.
    pub fn compose(&self, inner: &DiffOp) -> Result<DiffOp> {
        if self.nvars != inner.nvars || self.source_dim != inner.target_dim {
            return Err(Error::Dimension(format!(
                "cannot compose: outer source {} vs inner target {}",
                self.source_dim, inner.target_dim
            )));
        }
        let mut out = DiffOp::zero(self.nvars, self.target_dim, inner.source_dim);
        for ((c2, d2), m2) in &self.terms {
            for ((c1, d1), m1) in &inner.terms {
                let m = m2.mul(m1)?;
                if m.is_zero() {
                    continue;
                }
                let bounds: Vec<u32> = d2.iter().zip(c1).map(|(a, b)| *a.min(b)).collect();
                let mut beta = vec![0u32; self.nvars];
                loop {
                    let mut coef: i64 = 1;
                    for v in 0..self.nvars {
                        coef *= binom(d2[v], beta[v]);
                    }
                    coef *= falling(c1, &beta).unwrap();
                    let nc: Exp = (0..self.nvars).map(|v| c2[v] + c1[v] - beta[v]).collect();
                    let nd: Exp = (0..self.nvars).map(|v| d2[v] - beta[v] + d1[v]).collect();
                    out.add_term(nc, nd, m.scale(&Scalar::from_int(coef)));
                    // odometer over beta <= bounds
                    let mut v = 0;
                    while v < self.nvars && beta[v] == bounds[v] {
                        beta[v] = 0;
                        v += 1;
                    }
                    if v == self.nvars {
                        break;
                    }
                    beta[v] += 1;
                }
            }
        }
        Ok(out)
    }

    /// Commutator `self o o - o o self`.
    pub fn commutator(&self, o: &DiffOp) -> Result<DiffOp> {
        self.compose(o)?.sub(&o.compose(self)?)
    }

    pub fn is_constant_coefficient(&self) -> bool {
        self.terms.keys().all(|(c, _)| c.iter().all(|&a| a == 0))
    }

    /// Ordinary order: the largest total derivative degree.
    pub fn order(&self) -> usize {
        self.terms.keys().map(|(_, d)| d.iter().sum::<u32>() as usize).max().unwrap_or(0)
    }

    /// `Some(r)` when every term lowers the weighted degree by exactly `r`.
    pub fn weighted_shift(&self, space: &Space) -> Option<i64> {
        let mut shifts = self.terms.keys().map(|(c, d)| space.wdeg(d) as i64 - space.wdeg(c) as i64);
        let first = shifts.next()?;
        shifts.all(|s| s == first).then_some(first)
    }

    /// `Some(r)` when every term has derivative degree `r` and constant
    /// coefficient.
    pub fn homogeneous_order(&self) -> Option<usize> {
        if !self.is_constant_coefficient() {
            return None;
        }
        let mut orders = self.terms.keys().map(|(_, d)| d.iter().sum::<u32>() as usize);
        let first = orders.next()?;
        orders.all(|s| s == first).then_some(first)
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DiffOp({}x{}, {} terms)", self.target_dim, self.source_dim, self.terms.len())?;
        for ((c, d), m) in &self.terms {
            writeln!(f, "  x^{c:?} d^{d:?}: {m:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leibniz_on_constant() {
        let s = Space::new(2, 1);
        let dx = DiffOp::derivative(&s, 0);
        let x = DiffOp::identity(s.nvars(), 1).mul_monomial(&s.unit(0), &Scalar::one());
        let one = Polynomial::constant(s.nvars(), vec![Scalar::one()]);
        let c = dx.compose(&x).unwrap();
        assert_eq!(c.apply(&one).unwrap(), one);
        // d x = x d + 1
        let expect = x.compose(&dx).unwrap().add(&DiffOp::identity(s.nvars(), 1)).unwrap();
        assert_eq!(c, expect);
    }

    #[test]
    fn composition_matches_sequential_application() {
        let s = Space::new(2, 1);
        let a = DiffOp::derivative(&s, 0).mul_monomial(&s.unit(1), &Scalar::ratio(1, 2));
        let b = DiffOp::derivative(&s, 1).compose(&DiffOp::derivative(&s, 0)).unwrap()
            .mul_monomial(&s.unit(0), &Scalar::i());
        let ab = a.compose(&b).unwrap();
        for e in s.monomials(3, true) {
            let f = Polynomial::scalar_monomial(e, Scalar::one());
            assert_eq!(ab.apply(&f).unwrap(), a.apply(&b.apply(&f).unwrap()).unwrap());
        }
    }

    #[test]
    fn identity_is_neutral() {
        let s = Space::new(2, 1);
        let d = DiffOp::derivative(&s, 2).mul_monomial(&s.unit(0), &Scalar::from_int(5));
        let id = DiffOp::identity(s.nvars(), 1);
        assert_eq!(d.compose(&id).unwrap(), d);
        assert_eq!(id.compose(&d).unwrap(), d);
    }

    #[test]
    fn shape_errors() {
        let s = Space::new(2, 1);
        let d = DiffOp::derivative(&s, 0);
        let wide = d.kron(&ExactMatrix::zeros(3, 2)).unwrap();
        assert!(wide.compose(&d).is_err());
        assert!(wide.apply(&Polynomial::constant(s.nvars(), vec![Scalar::one()])).is_err());
    }
}
