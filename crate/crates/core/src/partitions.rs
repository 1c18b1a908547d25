//! Young-diagram combinatorics of the symmetric partitions `S^k`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::{Error, Result};

/// A weakly decreasing tuple `n >= a_1 >= ... >= a_k >= 0`, stored padded to
/// length `k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramStats {
    /// Boxes strictly above the main diagonal.
    pub q: usize,
    /// Boxes on the main diagonal.
    pub d: usize,
    pub r: usize,
}

impl Partition {
    /// Validates membership in `N^{k,n}_{++}`; `parts` may be shorter than `k`.
    pub fn new(parts: &[usize], k: usize, n: usize) -> Result<Self> {
        if parts.len() > k && parts[k..].iter().any(|&p| p != 0) {
            return Err(Error::InvalidArgument(format!("{parts:?} has more than {k} parts")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("{parts:?} is not weakly decreasing")));
        }
        if parts.first().is_some_and(|&a| a > n) {
            return Err(Error::InvalidArgument(format!("{parts:?} has a first part above {n}")));
        }
        let mut padded: Vec<usize> = parts.iter().copied().take(k).collect();
        padded.resize(k, 0);
        Ok(Partition { parts: padded, n })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Nonzero parts only.
    pub fn nonzero_parts(&self) -> Vec<usize> {
        self.parts.iter().copied().take_while(|&p| p > 0).collect()
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The transposed diagram (as a plain list of nonzero parts).
    pub fn conjugate(&self) -> Vec<usize> {
        let len = self.parts.first().copied().unwrap_or(0);
        (0..len).map(|j| self.parts.iter().filter(|&&a| a > j).count()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.conjugate() == self.nonzero_parts()
    }

    pub fn stats(&self) -> DiagramStats {
        let mut q = 0;
        let mut d = 0;
        for (i, &a) in self.parts.iter().enumerate() {
            if a > i {
                d += 1;
                q += a - i - 1;
            }
        }
        DiagramStats { q, d, r: q + d }
    }

    /// `a < a'`: different and componentwise `<=`.
    pub fn lt(&self, other: &Partition) -> bool {
        self != other && self.parts.len() == other.parts.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz = self.nonzero_parts();
        let body: Vec<String> = nz.iter().map(ToString::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All symmetric partitions in `N^{k,n}_{++}`, graded by `r(a)`.
///
/// A symmetric diagram has `a_1` equal to its number of rows, so it lives in
/// a `min(k, n)` square; when `n < k` the set is the truncated one.
pub fn enumerate_sk(k: usize, n: usize) -> BTreeMap<usize, Vec<Partition>> {
    let side = k.min(n);
    let mut out: BTreeMap<usize, Vec<Partition>> = BTreeMap::new();
    let mut current = Vec::new();
    fn rec(k: usize, n: usize, side: usize, max: usize, current: &mut Vec<usize>, out: &mut BTreeMap<usize, Vec<Partition>>) {
        let p = Partition::new(current, k, n).expect("generated partitions are valid");
        if p.is_symmetric() {
            out.entry(p.stats().r).or_default().push(p);
        }
        if current.len() == side {
            return;
        }
        for next in 1..=max {
            current.push(next);
            rec(k, n, side, next, current, out);
            current.pop();
        }
    }
    rec(k, n, side, side, &mut current, &mut out);
    for level in out.values_mut() {
        // Larger first part first, so (2,2) precedes (3,1,1).
        level.sort_by(|a, b| a.parts.cmp(&b.parts));
    }
    out
}

/// Flat list of `S^k` ordered by `(r, parts)`.
pub fn sk_list(k: usize, n: usize) -> Vec<Partition> {
    enumerate_sk(k, n).into_values().flatten().collect()
}

fn require_stable_range(k: usize, n: usize) -> Result<()> {
    if k < 2 || n < k {
        return Err(Error::InvalidArgument(format!("need n >= k >= 2, got k={k}, n={n}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPair {
    pub source: Partition,
    pub target: Partition,
    /// `|a'| - |a|`.
    pub order: usize,
}

/// All `a in S_j`, `a' in S_{j+1}` with `a < a'`.
pub fn cover_pairs(k: usize, n: usize) -> Result<Vec<CoverPair>> {
    require_stable_range(k, n)?;
    let sk = enumerate_sk(k, n);
    let mut out = Vec::new();
    for (j, level) in &sk {
        let Some(next) = sk.get(&(j + 1)) else { continue };
        for a in level {
            for b in next {
                if a.lt(b) {
                    out.push(CoverPair { source: a.clone(), target: b.clone(), order: b.size() - a.size() });
                }
            }
        }
    }
    Ok(out)
}

/// Dimension of the irreducible `GL(k)` module indexed by `a`, by the hook
/// content formula `prod (k + j - i) / hook(i, j)`.
pub fn dim_w(parts: &[usize], k: usize) -> Result<u128> {
    let nz: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
    if nz.len() > k {
        return Err(Error::InvalidArgument(format!("{parts:?} has more than {k} nonzero parts")));
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument(format!("{parts:?} is not weakly decreasing")));
    }
    let conj: Vec<usize> = (0..nz.first().copied().unwrap_or(0)).map(|j| nz.iter().filter(|&&a| a > j).count()).collect();
    let mut num = Ratio::from_integer(1u128);
    for (i, &row) in nz.iter().enumerate() {
        for (j, &col) in conj.iter().enumerate().take(row) {
            let content = k as i64 + j as i64 - i as i64;
            let hook = (row - j - 1) + (col - i - 1) + 1;
            num *= Ratio::new(content as u128, hook as u128);
        }
    }
    debug_assert!(num.is_integer());
    Ok(num.to_integer())
}

/// `C(m, r)` as u128.
pub fn binomial(m: u64, r: u64) -> u128 {
    if r > m {
        return 0;
    }
    let r = r.min(m - r);
    let mut acc: u128 = 1;
    for t in 0..r {
        acc = acc * (m - t) as u128 / (t + 1) as u128;
    }
    acc
}

/// Dimension of homogeneous polynomials of degree `deg` in `vars` variables.
pub fn monomial_count(vars: u64, deg: u64) -> u128 {
    if vars == 0 {
        return u128::from(deg == 0);
    }
    binomial(vars + deg - 1, deg)
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleRow {
    pub partition: String,
    pub j: usize,
    pub size: usize,
    pub q: usize,
    pub d: usize,
    pub dim_w: u128,
    pub dim_v: u128,
    /// Grading-element eigenvalue `k(n-1)/2 + |a|`, as a reduced fraction.
    pub eigenvalue: String,
    /// `dim gr^i V_a[shifted]` for `i = 0..=max_degree`.
    pub shifted_jet_dims: Vec<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimsTable {
    pub k: usize,
    pub n: usize,
    pub max_degree: usize,
    pub spinor_dim: u128,
    pub modules: Vec<ModuleRow>,
    /// `dim V_j` indexed by `j`.
    pub level_dims: Vec<u128>,
}

pub fn eigenvalue(k: usize, n: usize, a: &Partition) -> Ratio<i64> {
    Ratio::new((k * (n - 1)) as i64, 2) + Ratio::from_integer(a.size() as i64)
}

/// Module dimensions, grading eigenvalues and shifted flat-jet dimensions
/// `C(2nk + (i - q) - 1, i - q) * dim V_a`.
pub fn dims_table(k: usize, n: usize, max_degree: usize) -> Result<DimsTable> {
    require_stable_range(k, n)?;
    let spinor_dim = 1u128 << n;
    let vars = (2 * n * k) as u64;
    let sk = enumerate_sk(k, n);
    let mut modules = Vec::new();
    let mut level_dims = Vec::new();
    for (j, level) in &sk {
        let mut level_dim = 0;
        for a in level {
            let st = a.stats();
            let dw = dim_w(a.parts(), k)?;
            let dv = dw * spinor_dim;
            level_dim += dv;
            let shifted = (0..=max_degree)
                .map(|i| if i < st.q { 0 } else { monomial_count(vars, (i - st.q) as u64) * dv })
                .collect();
            modules.push(ModuleRow {
                partition: a.to_string(),
                j: *j,
                size: a.size(),
                q: st.q,
                d: st.d,
                dim_w: dw,
                dim_v: dv,
                eigenvalue: eigenvalue(k, n, a).to_string(),
                shifted_jet_dims: shifted,
            });
        }
        level_dims.push(level_dim);
    }
    Ok(DimsTable { k, n, max_degree, spinor_dim, modules, level_dims })
}

/// `dim V_j` for `j` in `S^k`; zero past the end.
pub fn level_dim(k: usize, n: usize, j: usize) -> Result<u128> {
    let t = dims_table(k, n, 0)?;
    Ok(t.level_dims.get(j).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize], k: usize, n: usize) -> Partition {
        Partition::new(parts, k, n).unwrap()
    }

    #[test]
    fn symmetric_examples() {
        assert!(!p(&[4, 2, 0], 3, 4).is_symmetric());
        assert!(p(&[3, 2, 1, 0], 4, 6).is_symmetric());
        assert!(p(&[], 2, 2).is_symmetric());
    }

    #[test]
    fn stats_examples() {
        let s = p(&[4, 2, 0], 3, 4).stats();
        assert_eq!((s.q, s.d), (3, 2));
        let s = p(&[3, 2, 1, 0], 4, 6).stats();
        assert_eq!((s.q, s.d), (2, 2));
        let s = p(&[1], 2, 2).stats();
        assert_eq!((s.q, s.d, s.r), (0, 1, 1));
    }

    #[test]
    fn invalid_partitions() {
        assert!(Partition::new(&[1, 2], 2, 2).is_err());
        assert!(Partition::new(&[3], 2, 2).is_err());
        assert!(Partition::new(&[1, 1, 1], 2, 2).is_err());
        assert!(Partition::new(&[1, 1, 0], 2, 2).is_ok());
    }

    #[test]
    fn dim_w_examples() {
        assert_eq!(dim_w(&[1], 2).unwrap(), 2);
        assert_eq!(dim_w(&[2, 1], 2).unwrap(), 2);
        assert_eq!(dim_w(&[2, 2], 2).unwrap(), 1);
        assert_eq!(dim_w(&[1, 1, 1], 2).unwrap_err(), Error::InvalidArgument("[1, 1, 1] has more than 2 nonzero parts".into()));
        assert_eq!(dim_w(&[], 5).unwrap(), 1);
    }

    #[test]
    fn dims_table_22() {
        let t = dims_table(2, 2, 3).unwrap();
        assert_eq!(t.level_dims, vec![4, 8, 8, 4]);
        let row = t.modules.iter().find(|m| m.partition == "(2,1)").unwrap();
        assert_eq!(row.shifted_jet_dims[1], 8);
        assert_eq!(row.shifted_jet_dims[0], 0);
        assert_eq!(t.modules[0].eigenvalue, "1");
        assert_eq!(row.eigenvalue, "4");
    }

    #[test]
    fn unstable_range_rejected() {
        assert!(cover_pairs(3, 2).is_err());
        assert!(dims_table(1, 1, 0).is_err());
    }
}
