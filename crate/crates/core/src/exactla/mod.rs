//! Exact scalars and exact linear algebra over the Gaussian rationals.
//!
//! `rank` and `kernel_basis` split a matrix into the connected components of
//! its row/column incidence graph and treat each block separately. Large
//! blocks go through a modular pre-filter whose answer is accepted only after
//! an exact check; everything else uses exact Gauss-Jordan elimination.

mod elim;
mod matrix;
pub mod modular;
mod scalar;

use rayon::prelude::*;

pub use elim::{rref, RowSpace, Rref};
pub use matrix::ExactMatrix;
pub use scalar::Scalar;

/// Blocks with at most this many entries are eliminated exactly right away.
const EXACT_BLOCK_LIMIT: usize = 2_500;

/// A block of a matrix: row and column index lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components of the bipartite graph rows <-> cols of nonzero
/// entries. Zero rows and zero columns form singleton blocks. Blocks are
/// ordered by their first column (row-only blocks last).
pub fn blocks(m: &ExactMatrix) -> Vec<Block> {
    let (nr, nc) = (m.rows(), m.cols());
    let mut parent: Vec<usize> = (0..nr + nc).collect();
    for r in 0..nr {
        for (c, _) in m.row(r) {
            let (a, b) = (find(&mut parent, r), find(&mut parent, nr + c));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, Block> = std::collections::BTreeMap::new();
    for x in 0..nr + nc {
        let root = find(&mut parent, x);
        let b = by_root.entry(root).or_insert_with(|| Block { rows: Vec::new(), cols: Vec::new() });
        if x < nr {
            b.rows.push(x);
        } else {
            b.cols.push(x - nr);
        }
    }
    let mut out: Vec<Block> = by_root.into_values().collect();
    out.sort_by_key(|b| (b.cols.first().copied().unwrap_or(usize::MAX), b.rows.first().copied()));
    out
}

fn block_rank(sub: &ExactMatrix) -> usize {
    if sub.rows() == 0 || sub.cols() == 0 {
        return 0;
    }
    if sub.rows() * sub.cols() <= EXACT_BLOCK_LIMIT {
        return rref(sub).rank();
    }
    let lower = modular::rank_mod_any(sub);
    if lower == sub.rows().min(sub.cols()) {
        return lower;
    }
    match modular::kernel_certified(sub) {
        Some((rank, _)) => rank,
        None => rref(sub).rank(),
    }
}

fn block_kernel(sub: &ExactMatrix) -> Vec<Vec<Scalar>> {
    if sub.rows() == 0 {
        return (0..sub.cols())
            .map(|c| {
                let mut v = vec![Scalar::zero(); sub.cols()];
                v[c] = Scalar::one();
                v
            })
            .collect();
    }
    if sub.rows() * sub.cols() <= EXACT_BLOCK_LIMIT {
        return rref(sub).kernel();
    }
    if modular::rank_mod_any(sub) == sub.cols() {
        return Vec::new();
    }
    match modular::kernel_certified(sub) {
        Some((_, k)) => k,
        None => rref(sub).kernel(),
    }
}

/// Exact rank over `Q(i)`.
pub fn rank(m: &ExactMatrix) -> usize {
    blocks(m)
        .par_iter()
        .map(|b| block_rank(&m.select(&b.rows, &b.cols)))
        .sum()
}

/// Basis of the right null space; `M v = 0` holds exactly for each vector.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    let parts: Vec<(Vec<usize>, Vec<Vec<Scalar>>)> = blocks(m)
        .par_iter()
        .map(|b| (b.cols.clone(), block_kernel(&m.select(&b.rows, &b.cols))))
        .collect();
    let mut out = Vec::new();
    for (cols, kernel) in parts {
        for local in kernel {
            let mut v = vec![Scalar::zero(); m.cols()];
            for (j, x) in local.into_iter().enumerate() {
                v[cols[j]] = x;
            }
            out.push(v);
        }
    }
    out
}

/// Rank modulo a large prime: a proven lower bound for `rank(m)`, computed
/// without any exact arithmetic beyond the reduction of entries.
pub fn rank_lower_bound(m: &ExactMatrix) -> usize {
    blocks(m)
        .par_iter()
        .map(|b| {
            let sub = m.select(&b.rows, &b.cols);
            modular::rank_mod_any(&sub)
        })
        .sum()
}

/// Rank by exact elimination only, with no modular step. Used as an
/// independent route in tests.
pub fn rank_by_elimination(m: &ExactMatrix) -> usize {
    rref(m).rank()
}
