use std::collections::HashMap;

use serde::Serialize;

use super::{RowOperator, SymbolMatrix};
use crate::dirac::{build_d0_flat, GradedOperator};
use crate::exactla::{kernel_basis, rank_lower_bound, ExactMatrix, RowSpace};
use crate::partitions::{dim_w, enumerate_sk};
use crate::polydiff::{DiffOp, Exp};
use crate::{Error, Result};

/// Outcome of the syzygy computation in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub degree: usize,
    /// Coefficients of a degree-`degree` row operator.
    pub unknowns: usize,
    /// Rows of the constraint matrix: monomials of the truncation degree
    /// times the source dimension.
    pub constraints: usize,
    pub truncation_degree: usize,
    /// Rank of the constraint matrix.
    pub rank: usize,
    pub syzygy_dim: usize,
    /// Dimension of the part generated by lower-degree generators.
    pub generated_dim: usize,
    pub new_count: usize,
    /// `"sandwich"` when modular lower bounds meet the exact containment
    /// `generated <= syzygies`, `"exact"` otherwise.
    pub method: &'static str,
}

/// Degree-by-degree search for the minimal generators of the syzygies of
/// one operator.
#[derive(Clone, Debug)]
pub struct SyzygySearch {
    symbol: SymbolMatrix,
    generators: Vec<RowOperator>,
    records: Vec<DegreeRecord>,
}

impl SyzygySearch {
    pub fn new(d: &GradedOperator) -> Result<Self> {
        Ok(SyzygySearch { symbol: SymbolMatrix::from_operator(d)?, generators: Vec::new(), records: Vec::new() })
    }

    pub fn generators(&self) -> &[RowOperator] {
        &self.generators
    }

    pub fn records(&self) -> &[DegreeRecord] {
        &self.records
    }

    /// Generators found in exactly this degree.
    pub fn generators_of_degree(&self, d: usize) -> Vec<RowOperator> {
        self.generators.iter().filter(|g| g.degree == d).cloned().collect()
    }

    /// Processes every degree up to `d`; lower degrees are done first since
    /// the generated part depends on them.
    pub fn run_to(&mut self, d: usize) -> Result<&[DegreeRecord]> {
        while self.records.len() <= d {
            let rec = self.step(self.records.len())?;
            self.records.push(rec);
        }
        Ok(&self.records[..=d])
    }

    fn generated_rows(&self, d: usize) -> ExactMatrix {
        let space = self.symbol.space;
        let basis = space.monomials(d, false);
        let index: HashMap<&Exp, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut trip = Vec::new();
        let mut r = 0;
        for g in &self.generators {
            for m in space.monomials(d - g.degree, false) {
                for (c, v) in g.shifted_sparse(&m, &index) {
                    trip.push((r, c, v));
                }
                r += 1;
            }
        }
        ExactMatrix::from_triplets(r, basis.len() * self.symbol.rows, trip)
    }

    fn step(&mut self, d: usize) -> Result<DegreeRecord> {
        let space = self.symbol.space;
        let m = self.symbol.constraint_matrix(d);
        let generated = self.generated_rows(d);
        let unknowns = m.cols();
        let (lr, lg) = rayon::join(|| rank_lower_bound(&m), || rank_lower_bound(&generated));
        let base = DegreeRecord {
            degree: d,
            unknowns,
            constraints: m.rows(),
            truncation_degree: d + self.symbol.degree,
            rank: lr,
            syzygy_dim: unknowns - lr,
            generated_dim: lg,
            new_count: 0,
            method: "sandwich",
        };
        // generated <= syzygies gives lg <= rank(gen) <= unknowns - rank(m) <= unknowns - lr
        if lr + lg == unknowns {
            return Ok(base);
        }
        let kernel = kernel_basis(&m);
        let mut span = RowSpace::new(unknowns);
        for r in 0..generated.rows() {
            span.insert(generated.row(r));
        }
        let generated_dim = span.rank();
        let mut new_count = 0;
        for v in &kernel {
            if span.insert_dense(v) {
                self.generators.push(RowOperator::from_vector(&space, d, self.symbol.rows, v));
                new_count += 1;
            }
        }
        Ok(DegreeRecord {
            rank: unknowns - kernel.len(),
            syzygy_dim: kernel.len(),
            generated_dim,
            new_count,
            method: "exact",
            ..base
        })
    }
}

/// Stacks generator rows into one constant-coefficient operator. All rows
/// must have the same order and width.
pub fn assemble_operator(name: &str, source: &GradedOperator, gens: &[RowOperator]) -> Result<GradedOperator> {
    let first = gens.first().ok_or_else(|| Error::InvalidArgument("no generators to assemble".into()))?;
    if gens.iter().any(|g| g.degree != first.degree || g.width != first.width) {
        return Err(Error::InvalidArgument("generators of mixed order or width".into()));
    }
    if first.width != source.target_dim() {
        return Err(Error::Dimension(format!("rows of width {} after an operator into {}", first.width, source.target_dim())));
    }
    let space = source.space;
    let mut op = DiffOp::zero(space.nvars(), gens.len(), first.width);
    for (gi, g) in gens.iter().enumerate() {
        for (b, row) in &g.coeffs {
            let trip = row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(t, v)| (gi, t, v.clone()));
            op = op.add(&DiffOp::term(space.zero_exp(), b.clone(), ExactMatrix::from_triplets(gens.len(), first.width, trip)))?;
        }
    }
    Ok(GradedOperator { name: name.into(), space, op, order: first.degree, weighted: false, shifts: None })
}

/// Predicted number of new generators in degree `d` for the syzygies of
/// `D_j`. Defined when the source of `D_{j+1}` is a single module `V_a`:
/// then it is the total dimension of the `V_{a'}` at level `j + 2` with
/// `|a'| - |a| = d`.
pub fn predicted_new(k: usize, n: usize, j: usize, d: usize) -> Option<usize> {
    let levels = enumerate_sk(k, n);
    let src = levels.get(&(j + 1))?;
    let [a] = src.as_slice() else { return None };
    let spinor = 1usize << n;
    let total = levels
        .get(&(j + 2))
        .map(|next| {
            next.iter()
                .filter(|b| b.size() == a.size() + d)
                .map(|b| dim_w(b.parts(), k).unwrap() as usize * spinor)
                .sum()
        })
        .unwrap_or(0);
    Some(total)
}

/// One discovery round: the search on the last operator of the stack.
#[derive(Clone, Debug)]
pub struct Stage {
    /// Index `j` of the operator whose syzygies were computed.
    pub j: usize,
    pub search: SyzygySearch,
}

/// The descended complex `D_0, D_1, ...` built so far.
#[derive(Clone, Debug)]
pub struct OperatorStack {
    pub k: usize,
    pub n: usize,
    pub ops: Vec<GradedOperator>,
    pub stages: Vec<Stage>,
}

impl OperatorStack {
    /// Stack holding only `D_0` on `U`.
    pub fn new(k: usize, n: usize) -> Result<Self> {
        Ok(OperatorStack { k, n, ops: vec![build_d0_flat(k, n)?], stages: Vec::new() })
    }

    /// Computes syzygies of the last operator up to `max_degree` and, when
    /// the new generators share one order, appends their operator.
    pub fn discover_next(&mut self, max_degree: usize) -> Result<&Stage> {
        let j = self.ops.len() - 1;
        let mut search = SyzygySearch::new(&self.ops[j])?;
        search.run_to(max_degree)?;
        let gens = search.generators().to_vec();
        if !gens.is_empty() && gens.iter().all(|g| g.degree == gens[0].degree) {
            let next = assemble_operator(&format!("D{}", j + 1), &self.ops[j], &gens)?;
            self.ops.push(next);
        }
        self.stages.push(Stage { j, search });
        Ok(self.stages.last().unwrap())
    }

    /// `D_{j+1} o D_j == 0` for each consecutive pair, symbolically.
    pub fn composite_zero(&self) -> Result<Vec<(usize, bool)>> {
        self.ops
            .windows(2)
            .enumerate()
            .map(|(j, w)| Ok((j, w[1].op.compose(&w[0].op)?.is_zero())))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predictions_k2() {
        assert_eq!(predicted_new(2, 2, 0, 2), Some(8));
        assert_eq!(predicted_new(2, 2, 0, 1), Some(0));
        assert_eq!(predicted_new(2, 2, 1, 1), Some(4));
        assert_eq!(predicted_new(2, 2, 2, 1), Some(0));
        assert_eq!(predicted_new(3, 3, 0, 2), Some(64));
        // (2,1) -> (2,2) has order 1, dim W = 6; (2,1) -> (3,1,1) has order 2, dim W = 6
        assert_eq!(predicted_new(3, 3, 1, 1), Some(48));
        assert_eq!(predicted_new(3, 3, 1, 2), Some(48));
        // level 3 of S^3 has two summands
        assert_eq!(predicted_new(3, 3, 2, 1), None);
    }

    #[test]
    fn k2n2_first_stage() {
        let mut st = OperatorStack::new(2, 2).unwrap();
        let stage = st.discover_next(3).unwrap();
        let counts: Vec<usize> = stage.search.records().iter().map(|r| r.new_count).collect();
        let expect: Vec<usize> = (0..=3).map(|d| predicted_new(2, 2, 0, d).unwrap()).collect();
        assert_eq!(counts, expect);
        assert!(st.composite_zero().unwrap().iter().all(|(_, z)| *z));
    }

    #[test]
    fn assemble_errors() {
        let d0 = build_d0_flat(2, 1).unwrap();
        assert!(assemble_operator("D1", &d0, &[]).is_err());
    }
}
