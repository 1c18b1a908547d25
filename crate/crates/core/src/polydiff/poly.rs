use std::collections::BTreeMap;
use std::fmt;

use super::{Exp, Space};
use crate::exactla::Scalar;
use crate::{Error, Result};

/// Sparse polynomial with values in a module of dimension `dim`.
/// Stored coefficient vectors are never entirely zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    dim: usize,
    terms: BTreeMap<Exp, Vec<Scalar>>,
}

impl Polynomial {
    pub fn zero(nvars: usize, dim: usize) -> Self {
        Polynomial { nvars, dim, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn monomial(exp: Exp, value: Vec<Scalar>) -> Self {
        let mut p = Polynomial::zero(exp.len(), value.len());
        p.add_term(exp, value);
        p
    }

    /// Scalar monomial `c x^e`.
    pub fn scalar_monomial(exp: Exp, c: Scalar) -> Self {
        Polynomial::monomial(exp, vec![c])
    }

    pub fn constant(nvars: usize, value: Vec<Scalar>) -> Self {
        Polynomial::monomial(vec![0; nvars], value)
    }

    /// `x^e (x) unit_s`.
    pub fn basis_element(exp: Exp, dim: usize, s: usize) -> Self {
        let mut v = vec![Scalar::zero(); dim];
        v[s] = Scalar::one();
        Polynomial::monomial(exp, v)
    }

    pub fn terms(&self) -> &BTreeMap<Exp, Vec<Scalar>> {
        &self.terms
    }

    pub fn coefficient(&self, exp: &[u32]) -> Vec<Scalar> {
        self.terms.get(exp).cloned().unwrap_or_else(|| vec![Scalar::zero(); self.dim])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, exp: Exp, value: Vec<Scalar>) {
        debug_assert_eq!(value.len(), self.dim);
        if value.iter().all(Scalar::is_zero) {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                for (a, b) in v.iter_mut().zip(&value) {
                    *a += b;
                }
                if v.iter().all(Scalar::is_zero) {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, value);
            }
        }
    }

    fn check(&self, o: &Polynomial) -> Result<()> {
        if self.nvars != o.nvars || self.dim != o.dim {
            return Err(Error::Dimension(format!(
                "polynomials over {}/{} and {}/{} variables/components",
                self.nvars, self.dim, o.nvars, o.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check(o)?;
        let mut out = self.clone();
        for (e, v) in &o.terms {
            out.add_term(e.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars, self.dim);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.iter().map(|x| x * c).collect());
        }
        out
    }

    /// Product with a scalar-valued polynomial.
    pub fn mul_scalar_poly(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.dim != 1 || f.nvars != self.nvars {
            return Err(Error::Dimension("multiplier must be scalar-valued on the same variables".into()));
        }
        let mut out = Polynomial::zero(self.nvars, self.dim);
        for (ea, c) in &f.terms {
            for (eb, v) in &self.terms {
                let e: Exp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, v.iter().map(|x| x * &c[0]).collect());
            }
        }
        Ok(out)
    }

    /// Weighted-degree-`r` component.
    pub fn wgrade_slice(&self, space: &Space, r: u32) -> Polynomial {
        let terms = self.terms.iter().filter(|(e, _)| space.wdeg(e) == r).map(|(e, v)| (e.clone(), v.clone())).collect();
        Polynomial { nvars: self.nvars, dim: self.dim, terms }
    }

    /// Weighted degrees that occur, ascending.
    pub fn wdegrees(&self, space: &Space) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| space.wdeg(e)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn eval_at_zero(&self) -> Vec<Scalar> {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn has_y(&self, space: &Space) -> bool {
        self.terms.keys().any(|e| space.has_y(e))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, v)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a > 0)
                    .map(|(i, &a)| if a == 1 { format!("v{i}") } else { format!("v{i}^{a}") })
                    .collect();
                let vals: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("[{}]*{}", vals.join(","), if mono.is_empty() { "1".into() } else { mono.join("*") })
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
