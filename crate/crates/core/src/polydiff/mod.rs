//! Polynomials on `G_-` and on `U`, and polynomial-coefficient differential
//! operators.
//!
//! Variables are `x_{alpha i}` (weight 1) followed by `y_rs`, `r < s`
//! (weight 2). `x` is `alpha`-major: `x_{alpha i}` sits at `alpha * k + i`.
//! Polynomials on `U` are the ones with no `y`; the pullback `q*` is the
//! identity on coordinates.

mod fields;
mod op;
mod poly;

pub use fields::{
    duality_matrix, duality_suite, field_bracket_suite, left_invariant_field, pairing, pbw_basis, pullback_q,
    DualityRecord, PbwMonomial, FIELD_BRACKET_CONSTANT,
};
pub use op::DiffOp;
pub use poly::Polynomial;

use crate::partitions::{binomial, monomial_count};

/// Exponent vector over all variables of a [`Space`].
pub type Exp = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    pub k: usize,
    pub n: usize,
}

impl Space {
    pub fn new(k: usize, n: usize) -> Self {
        Space { k, n }
    }

    /// Number of `x` variables, `2nk`.
    pub fn nx(&self) -> usize {
        2 * self.n * self.k
    }

    /// Number of `y` variables, `k(k-1)/2`.
    pub fn ny(&self) -> usize {
        self.k * (self.k - 1) / 2
    }

    pub fn nvars(&self) -> usize {
        self.nx() + self.ny()
    }

    /// 0-based `alpha < 2n`, `i < k`.
    pub fn x(&self, alpha: usize, i: usize) -> usize {
        alpha * self.k + i
    }

    /// 0-based `r < s < k`.
    pub fn y(&self, r: usize, s: usize) -> usize {
        debug_assert!(r < s && s < self.k);
        self.nx() + r * (2 * self.k - r - 1) / 2 + (s - r - 1)
    }

    pub fn is_y(&self, v: usize) -> bool {
        v >= self.nx()
    }

    pub fn weight(&self, v: usize) -> u32 {
        if self.is_y(v) {
            2
        } else {
            1
        }
    }

    pub fn var_name(&self, v: usize) -> String {
        if v < self.nx() {
            format!("x{}{}", v / self.k + 1, v % self.k + 1)
        } else {
            let mut idx = v - self.nx();
            for r in 0..self.k {
                let row = self.k - r - 1;
                if idx < row {
                    return format!("y{}{}", r + 1, r + idx + 2);
                }
                idx -= row;
            }
            unreachable!("variable index out of range")
        }
    }

    pub fn unit(&self, v: usize) -> Exp {
        let mut e = vec![0; self.nvars()];
        e[v] = 1;
        e
    }

    pub fn zero_exp(&self) -> Exp {
        vec![0; self.nvars()]
    }

    pub fn wdeg(&self, e: &[u32]) -> u32 {
        e.iter().enumerate().map(|(v, &a)| a * self.weight(v)).sum()
    }

    pub fn has_y(&self, e: &[u32]) -> bool {
        e[self.nx()..].iter().any(|&a| a > 0)
    }

    /// Monomial basis of a slice, graded-lex: descending lexicographic order
    /// of exponent vectors. `weighted` gives the weighted-degree slice on
    /// `G_-`; otherwise the ordinary degree slice of `x`-only monomials.
    pub fn monomials(&self, degree: usize, weighted: bool) -> Vec<Exp> {
        let nv = if weighted { self.nvars() } else { self.nx() };
        let mut out = Vec::new();
        let mut cur = self.zero_exp();
        self.fill(0, nv, degree as u32, &mut cur, &mut out);
        out
    }

    fn fill(&self, v: usize, nv: usize, left: u32, cur: &mut Exp, out: &mut Vec<Exp>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if v == nv {
            return;
        }
        let w = self.weight(v);
        for a in (0..=left / w).rev() {
            cur[v] = a;
            self.fill(v + 1, nv, left - a * w, cur, out);
        }
        cur[v] = 0;
    }

    /// `sum_l dim S^l g_2 * dim S^{r-2l} g_1`.
    pub fn weighted_slice_dim(&self, r: usize) -> u128 {
        (0..=r / 2)
            .map(|l| monomial_count(self.ny() as u64, l as u64) * monomial_count(self.nx() as u64, (r - 2 * l) as u64))
            .sum()
    }

    /// Dimension of the degree-`r` `x`-only slice, `C(2nk + r - 1, r)`.
    pub fn flat_slice_dim(&self, r: usize) -> u128 {
        if r == 0 {
            return 1;
        }
        binomial((self.nx() + r - 1) as u64, r as u64)
    }
}

/// `prod e_v! / (e_v - d_v)!`; `None` unless `d <= e` componentwise.
pub fn falling(e: &[u32], d: &[u32]) -> Option<i64> {
    let mut acc: i64 = 1;
    for (&a, &b) in e.iter().zip(d) {
        if b > a {
            return None;
        }
        for t in 0..b {
            acc *= (a - t) as i64;
        }
    }
    Some(acc)
}

/// `prod e_v!`.
pub fn factorial(e: &[u32]) -> i64 {
    e.iter().map(|&a| (1..=a as i64).product::<i64>()).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_layout() {
        let s = Space::new(3, 2);
        assert_eq!(s.nx(), 12);
        assert_eq!(s.ny(), 3);
        assert_eq!(s.y(0, 1), 12);
        assert_eq!(s.y(0, 2), 13);
        assert_eq!(s.y(1, 2), 14);
        assert_eq!(s.var_name(s.x(1, 2)), "x23");
        assert_eq!(s.var_name(14), "y23");
    }

    #[test]
    fn slice_dims_match_enumeration() {
        for (k, n) in [(2, 2), (3, 3)] {
            let s = Space::new(k, n);
            for r in 0..=6 {
                assert_eq!(s.monomials(r, true).len() as u128, s.weighted_slice_dim(r));
                assert_eq!(s.monomials(r, false).len() as u128, s.flat_slice_dim(r));
            }
        }
        assert_eq!(Space::new(2, 2).weighted_slice_dim(2), 37);
        assert_eq!(Space::new(2, 2).monomials(1, true).len(), 8);
    }

    #[test]
    fn graded_lex_order() {
        let s = Space::new(2, 1);
        let m = s.monomials(2, false);
        assert_eq!(m[0], vec![2, 0, 0, 0, 0]);
        assert_eq!(m[1], vec![1, 1, 0, 0, 0]);
        assert_eq!(m.last().unwrap(), &vec![0, 0, 0, 2, 0]);
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling(&[3, 1], &[2, 0]), Some(6));
        assert_eq!(falling(&[1, 1], &[2, 0]), None);
        assert_eq!(factorial(&[3, 2]), 12);
    }
}
