//! Spinors for the complexified Clifford algebra of `R^{2n}`.
//!
//! Fock model: the basis of `S` is indexed by subsets of `{1..n}`, encoded
//! as bitmasks. With the Jordan-Wigner sign `(-1)^{#{l in S : l < j}}`,
//!
//! ```text
//! gamma_{2j-1} = a_j^+ - a_j,    gamma_{2j} = i (a_j^+ + a_j)
//! ```
//!
//! so `gamma_a gamma_b + gamma_b gamma_a = -2 delta_ab`. Entries lie in
//! `{0, +-1, +-i}`.

use crate::exactla::{ExactMatrix, Scalar};
use crate::{Error, Result};

/// The Clifford sign written into reports: `v.v = -B(v, v)`.
pub const CLIFFORD_SIGN: &str = "gamma_a^2 = -1";

#[derive(Clone, Debug)]
pub struct SpinorSpace {
    n: usize,
    gammas: Vec<ExactMatrix>,
    even: Vec<usize>,
    odd: Vec<usize>,
}

fn jw_sign(mask: usize, j: usize) -> i64 {
    if (mask & ((1 << j) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl SpinorSpace {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("spinors need n >= 1".into()));
        }
        let dim = 1usize << n;
        let mut gammas = Vec::with_capacity(2 * n);
        for j in 0..n {
            let (mut odd_g, mut even_g) = (Vec::new(), Vec::new());
            for mask in 0..dim {
                let s = jw_sign(mask, j);
                let target = mask ^ (1 << j);
                if mask & (1 << j) == 0 {
                    // a_j^+ |S> = s |S + j>
                    odd_g.push((target, mask, Scalar::from_int(s)));
                    even_g.push((target, mask, Scalar::gaussian(0, s)));
                } else {
                    // a_j |S> = s |S - j>
                    odd_g.push((target, mask, Scalar::from_int(-s)));
                    even_g.push((target, mask, Scalar::gaussian(0, s)));
                }
            }
            gammas.push(ExactMatrix::from_triplets(dim, dim, odd_g));
            gammas.push(ExactMatrix::from_triplets(dim, dim, even_g));
        }
        let (even, odd) = (0..dim).partition(|m: &usize| m.count_ones().is_multiple_of(2));
        Ok(SpinorSpace { n, gammas, even, odd })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// `gamma_alpha` for 0-based `alpha < 2n`.
    pub fn gamma(&self, alpha: usize) -> &ExactMatrix {
        &self.gammas[alpha]
    }

    pub fn gammas(&self) -> &[ExactMatrix] {
        &self.gammas
    }

    /// Basis indices of `S_+` (even subsets).
    pub fn even(&self) -> &[usize] {
        &self.even
    }

    /// Basis indices of `S_-` (odd subsets).
    pub fn odd(&self) -> &[usize] {
        &self.odd
    }

    /// `gamma_alpha psi`, 0-based `alpha`.
    pub fn act(&self, alpha: usize, psi: &[Scalar]) -> Result<Vec<Scalar>> {
        let g = self
            .gammas
            .get(alpha)
            .ok_or_else(|| Error::InvalidArgument(format!("gamma index {alpha} out of range 0..{}", 2 * self.n)))?;
        g.mul_vec(psi)
    }

    /// Spin action of `E_ab - E_ba` in `so(2n)`: `-1/2 gamma_a gamma_b`, so
    /// that `[s(w), gamma(v)] = gamma(w v)`.
    pub fn spin_generator(&self, a: usize, b: usize) -> ExactMatrix {
        self.gammas[a].mul(&self.gammas[b]).unwrap().scale(&Scalar::ratio(-1, 2))
    }

    /// Spin action of an antisymmetric `2n x 2n` matrix.
    pub fn spin_action(&self, omega: &ExactMatrix) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.dim(), self.dim());
        for a in 0..2 * self.n {
            for b in a + 1..2 * self.n {
                let w = omega.get(a, b);
                if !w.is_zero() {
                    out = out.add(&self.spin_generator(a, b).scale(&w)).unwrap();
                }
            }
        }
        out
    }
}
