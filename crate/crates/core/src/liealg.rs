//! The graded Lie algebra `so(k, 2n+k)` in block form.
//!
//! With the basis `(e_1..e_k, eps_1..eps_2n, e^1..e^k)` an element is
//!
//! ```text
//! | A   Z^T   W   |
//! | X   B     Z   |
//! | Y   X^T  -A^T |
//! ```
//!
//! with `B, Y, W` antisymmetric. This is the pattern of `so(h)` for
//! `h(e_i, e^j) = delta_ij`, `h(eps_a, eps_b) = -delta_ab`. Grades: `Y` is -2, `X` is -1, `A, B` are 0,
//! `Z` is 1 and `W` is 2.

use std::fmt;

use crate::exactla::{ExactMatrix, Scalar};
use crate::{Check, Error, Result};

/// Dense square matrix of scalars; small helper for block bookkeeping.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Block {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Block { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn unit(rows: usize, cols: usize, r: usize, c: usize) -> Self {
        let mut b = Block::zeros(rows, cols);
        b.data[r * cols + c] = Scalar::one();
        b
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| *self.get(r, c) == -self.get(c, r)))
    }
}

/// Grade labels `-2..=2`.
pub type Grade = i8;

#[derive(Clone, PartialEq, Eq)]
pub struct BlockElement {
    k: usize,
    n: usize,
    pub a: Block,
    pub b: Block,
    pub x: Block,
    pub y: Block,
    pub z: Block,
    pub w: Block,
}

impl fmt::Debug for BlockElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.coords().iter().map(ToString::to_string).collect();
        write!(f, "BlockElement(k={}, n={}, [{}])", self.k, self.n, coords.join(", "))
    }
}

impl BlockElement {
    pub fn zero(k: usize, n: usize) -> Self {
        let m = 2 * n;
        BlockElement {
            k,
            n,
            a: Block::zeros(k, k),
            b: Block::zeros(m, m),
            x: Block::zeros(m, k),
            y: Block::zeros(k, k),
            z: Block::zeros(m, k),
            w: Block::zeros(k, k),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Side of the assembled square matrix, `2k + 2n`.
    pub fn side(&self) -> usize {
        2 * self.k + 2 * self.n
    }

    pub fn is_valid(&self) -> bool {
        self.b.is_antisymmetric() && self.y.is_antisymmetric() && self.w.is_antisymmetric()
    }

    /// The `(2k+2n)`-square matrix of the element.
    pub fn to_matrix(&self) -> ExactMatrix {
        let (k, m) = (self.k, 2 * self.n);
        let mut trip = Vec::new();
        let mut put = |r: usize, c: usize, v: Scalar| {
            if !v.is_zero() {
                trip.push((r, c, v));
            }
        };
        for i in 0..k {
            for j in 0..k {
                put(i, j, self.a.get(i, j).clone());
                put(i, k + m + j, self.w.get(i, j).clone());
                put(k + m + i, j, self.y.get(i, j).clone());
                put(k + m + i, k + m + j, -self.a.get(j, i));
            }
            for al in 0..m {
                put(i, k + al, self.z.get(al, i).clone());
                put(k + m + i, k + al, self.x.get(al, i).clone());
            }
        }
        for al in 0..m {
            for i in 0..k {
                put(k + al, i, self.x.get(al, i).clone());
                put(k + al, k + m + i, self.z.get(al, i).clone());
            }
            for be in 0..m {
                put(k + al, k + be, self.b.get(al, be).clone());
            }
        }
        ExactMatrix::from_triplets(self.side(), self.side(), trip)
    }

    /// Reads the blocks back from a full matrix; fails if the matrix does
    /// not have the block pattern of `so(h)`.
    pub fn from_matrix(k: usize, n: usize, mat: &ExactMatrix) -> Result<Self> {
        let mut e = BlockElement::zero(k, n);
        let m = 2 * n;
        if mat.rows() != e.side() || mat.cols() != e.side() {
            return Err(Error::Dimension(format!("expected a {0}x{0} matrix", e.side())));
        }
        for i in 0..k {
            for j in 0..k {
                e.a.set(i, j, mat.get(i, j));
                e.w.set(i, j, mat.get(i, k + m + j));
                e.y.set(i, j, mat.get(k + m + i, j));
            }
        }
        for al in 0..m {
            for i in 0..k {
                e.x.set(al, i, mat.get(k + al, i));
                e.z.set(al, i, mat.get(i, k + al));
            }
            for be in 0..m {
                e.b.set(al, be, mat.get(k + al, k + be));
            }
        }
        if e.to_matrix() != *mat || !e.is_valid() {
            return Err(Error::InvalidArgument("matrix is not in so(h) block form".into()));
        }
        Ok(e)
    }

    /// Component of grade `g`.
    pub fn component(&self, g: Grade) -> BlockElement {
        let mut out = BlockElement::zero(self.k, self.n);
        match g {
            -2 => out.y = self.y.clone(),
            -1 => out.x = self.x.clone(),
            0 => {
                out.a = self.a.clone();
                out.b = self.b.clone();
            }
            1 => out.z = self.z.clone(),
            2 => out.w = self.w.clone(),
            _ => {}
        }
        out
    }

    /// `Some(g)` when the element is nonzero and lies in `g_g`.
    pub fn homogeneous_grade(&self) -> Option<Grade> {
        let nonzero: Vec<Grade> = (-2..=2).filter(|&g| !self.component(g).is_zero()).collect();
        match nonzero.as_slice() {
            [g] => Some(*g),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        [&self.a, &self.b, &self.x, &self.y, &self.z, &self.w].iter().all(|b| b.is_zero())
    }

    pub fn scale(&self, s: &Scalar) -> BlockElement {
        let sc = |b: &Block| Block { rows: b.rows, cols: b.cols, data: b.data.iter().map(|v| v * s).collect() };
        BlockElement {
            k: self.k,
            n: self.n,
            a: sc(&self.a),
            b: sc(&self.b),
            x: sc(&self.x),
            y: sc(&self.y),
            z: sc(&self.z),
            w: sc(&self.w),
        }
    }

    pub fn add(&self, o: &BlockElement) -> BlockElement {
        let ad = |p: &Block, q: &Block| Block {
            rows: p.rows,
            cols: p.cols,
            data: p.data.iter().zip(&q.data).map(|(u, v)| u + v).collect(),
        };
        BlockElement {
            k: self.k,
            n: self.n,
            a: ad(&self.a, &o.a),
            b: ad(&self.b, &o.b),
            x: ad(&self.x, &o.x),
            y: ad(&self.y, &o.y),
            z: ad(&self.z, &o.z),
            w: ad(&self.w, &o.w),
        }
    }

    /// Coordinates in the basis returned by [`basis`], in the same order.
    pub fn coords(&self) -> Vec<Scalar> {
        let (k, m) = (self.k, 2 * self.n);
        let mut out = Vec::new();
        for r in 0..k {
            for s in r + 1..k {
                out.push(self.y.get(r, s).clone());
            }
        }
        for al in 0..m {
            for i in 0..k {
                out.push(self.x.get(al, i).clone());
            }
        }
        for i in 0..k {
            for j in 0..k {
                out.push(self.a.get(i, j).clone());
            }
        }
        for al in 0..m {
            for be in al + 1..m {
                out.push(self.b.get(al, be).clone());
            }
        }
        for al in 0..m {
            for i in 0..k {
                out.push(self.z.get(al, i).clone());
            }
        }
        for r in 0..k {
            for s in r + 1..k {
                out.push(self.w.get(r, s).clone());
            }
        }
        out
    }
}

fn check_same_algebra(x: &BlockElement, y: &BlockElement) -> Result<()> {
    if x.k != y.k || x.n != y.n {
        return Err(Error::Dimension(format!(
            "so({},{}) vs so({},{})",
            x.k,
            2 * x.n + x.k,
            y.k,
            2 * y.n + y.k
        )));
    }
    Ok(())
}

/// Matrix commutator `xy - yx`, read back into block form.
pub fn bracket(x: &BlockElement, y: &BlockElement) -> Result<BlockElement> {
    check_same_algebra(x, y)?;
    let (mx, my) = (x.to_matrix(), y.to_matrix());
    let c = mx.mul(&my)?.sub(&my.mul(&mx)?)?;
    BlockElement::from_matrix(x.k, x.n, &c)
}

/// `E`: `A = 1_k`, all other blocks zero.
pub fn grading_element(k: usize, n: usize) -> BlockElement {
    let mut e = BlockElement::zero(k, n);
    for i in 0..k {
        e.a.set(i, i, Scalar::one());
    }
    e
}

/// Names of the distinguished basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// `e^r ^ e^s` in `g_{-2}` (0-based `r < s`).
    LowerWedge(usize, usize),
    /// `e^i (x) eps_alpha` in `g_{-1}` (0-based `i`, `alpha`).
    LowerTensor { i: usize, alpha: usize },
    /// `E_ij` in the `gl(k)` part of `g_0`.
    GlK(usize, usize),
    /// `E_ab - E_ba` in the `so(2n)` part of `g_0`.
    So2n(usize, usize),
    /// `e_i (x) eps_alpha` in `g_1`.
    UpperTensor { i: usize, alpha: usize },
    /// `e_r ^ e_s` in `g_2`.
    UpperWedge(usize, usize),
}

impl BasisLabel {
    pub fn grade(&self) -> Grade {
        match self {
            BasisLabel::LowerWedge(..) => -2,
            BasisLabel::LowerTensor { .. } => -1,
            BasisLabel::GlK(..) | BasisLabel::So2n(..) => 0,
            BasisLabel::UpperTensor { .. } => 1,
            BasisLabel::UpperWedge(..) => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BasisVector {
    pub label: BasisLabel,
    pub element: BlockElement,
}

impl BasisVector {
    pub fn grade(&self) -> Grade {
        self.label.grade()
    }
}

fn antisym_unit(k: usize, r: usize, s: usize) -> Block {
    let mut b = Block::zeros(k, k);
    b.set(r, s, Scalar::one());
    b.set(s, r, Scalar::from_int(-1));
    b
}

/// `e^i (x) eps_alpha`: `X = E_{alpha i}`.
pub fn lower_tensor(k: usize, n: usize, i: usize, alpha: usize) -> BlockElement {
    let mut e = BlockElement::zero(k, n);
    e.x = Block::unit(2 * n, k, alpha, i);
    e
}

/// `e^r ^ e^s`: `Y = E_rs - E_sr`.
pub fn lower_wedge(k: usize, n: usize, r: usize, s: usize) -> BlockElement {
    let mut e = BlockElement::zero(k, n);
    e.y = antisym_unit(k, r, s);
    e
}

pub fn upper_tensor(k: usize, n: usize, i: usize, alpha: usize) -> BlockElement {
    let mut e = BlockElement::zero(k, n);
    e.z = Block::unit(2 * n, k, alpha, i);
    e
}

pub fn upper_wedge(k: usize, n: usize, r: usize, s: usize) -> BlockElement {
    let mut e = BlockElement::zero(k, n);
    e.w = antisym_unit(k, r, s);
    e
}

/// The full basis, grade by grade from -2 to 2. The order matches
/// [`BlockElement::coords`]; `g_{-1}` is ordered `alpha`-major, like the
/// coordinates `x_{alpha i}`.
pub fn basis(k: usize, n: usize) -> Vec<BasisVector> {
    let m = 2 * n;
    let mut out = Vec::new();
    for r in 0..k {
        for s in r + 1..k {
            out.push(BasisVector { label: BasisLabel::LowerWedge(r, s), element: lower_wedge(k, n, r, s) });
        }
    }
    for alpha in 0..m {
        for i in 0..k {
            out.push(BasisVector { label: BasisLabel::LowerTensor { i, alpha }, element: lower_tensor(k, n, i, alpha) });
        }
    }
    for i in 0..k {
        for j in 0..k {
            let mut e = BlockElement::zero(k, n);
            e.a = Block::unit(k, k, i, j);
            out.push(BasisVector { label: BasisLabel::GlK(i, j), element: e });
        }
    }
    for al in 0..m {
        for be in al + 1..m {
            let mut e = BlockElement::zero(k, n);
            e.b = antisym_unit(m, al, be);
            out.push(BasisVector { label: BasisLabel::So2n(al, be), element: e });
        }
    }
    for alpha in 0..m {
        for i in 0..k {
            out.push(BasisVector { label: BasisLabel::UpperTensor { i, alpha }, element: upper_tensor(k, n, i, alpha) });
        }
    }
    for r in 0..k {
        for s in r + 1..k {
            out.push(BasisVector { label: BasisLabel::UpperWedge(r, s), element: upper_wedge(k, n, r, s) });
        }
    }
    out
}

/// Basis vectors of a single grade.
pub fn graded_basis(k: usize, n: usize, g: Grade) -> Vec<BasisVector> {
    basis(k, n).into_iter().filter(|b| b.grade() == g).collect()
}

/// Trace form `tr(xy)`, proportional to the Killing form. Both arguments
/// must be homogeneous of opposite grades.
pub fn killing_pair(x: &BlockElement, y: &BlockElement) -> Result<Scalar> {
    check_same_algebra(x, y)?;
    let (gx, gy) = match (x.homogeneous_grade(), y.homogeneous_grade()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InvalidArgument("killing_pair needs homogeneous nonzero arguments".into())),
    };
    if gx + gy != 0 {
        return Err(Error::InvalidArgument(format!("grades {gx} and {gy} are not opposite")));
    }
    let p = x.to_matrix().mul(&y.to_matrix())?;
    Ok((0..p.rows()).map(|i| p.get(i, i)).sum())
}

/// Bilinear form of the algebra: `h(e_i, e^j) = delta`, `h(eps, eps) = -1`.
pub fn gram_matrix(k: usize, n: usize) -> ExactMatrix {
    let m = 2 * n;
    let mut trip = Vec::new();
    for i in 0..k {
        trip.push((i, k + m + i, Scalar::one()));
        trip.push((k + m + i, i, Scalar::one()));
    }
    for al in 0..m {
        trip.push((k + al, k + al, Scalar::from_int(-1)));
    }
    ExactMatrix::from_triplets(2 * k + m, 2 * k + m, trip)
}

/// `M^T h + h M = 0`.
pub fn preserves_form(e: &BlockElement) -> bool {
    let h = gram_matrix(e.k, e.n);
    let m = e.to_matrix();
    let lhs = m.transpose().mul(&h).unwrap().add(&h.mul(&m).unwrap()).unwrap();
    lhs.is_zero()
}

/// `table[a][b]` is the sparse coordinate vector of `[basis_a, basis_b]`.
pub type StructureTable = Vec<Vec<Vec<(usize, Scalar)>>>;

pub fn structure_constants(k: usize, n: usize) -> Result<StructureTable> {
    let bs = basis(k, n);
    let mut table = Vec::with_capacity(bs.len());
    for a in &bs {
        let mut row = Vec::with_capacity(bs.len());
        for b in &bs {
            let c = bracket(&a.element, &b.element)?;
            row.push(c.coords().into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect());
        }
        table.push(row);
    }
    Ok(table)
}


fn coords_rank(vectors: &[Vec<Scalar>], len: usize) -> usize {
    let mut span = crate::exactla::RowSpace::new(len);
    for v in vectors {
        span.insert_dense(v);
    }
    span.rank()
}

/// Structural checks on the bracket table: grading, Jacobi, grading
/// element, generation of `g_{-2}`, nondegeneracy of `L^2 g_{-1} -> g_{-2}`
/// and of the trace pairings.
pub fn verify_suite(k: usize, n: usize) -> Result<Vec<Check>> {
    let bs = basis(k, n);
    let dim = bs.len();
    let table = structure_constants(k, n)?;
    let grade_of: Vec<Grade> = bs.iter().map(BasisVector::grade).collect();
    let mut checks = Vec::new();

    let mut bad = 0;
    for a in 0..dim {
        for b in 0..dim {
            let g = grade_of[a] + grade_of[b];
            if table[a][b].iter().any(|(e, _)| grade_of[*e] != g) {
                bad += 1;
            }
        }
    }
    checks.push(Check::new("grading", bad == 0, format!("{} pairs, {bad} violate [g_i, g_j] in g_(i+j)", dim * dim)));

    let bracket_vec = |a: usize, v: &[(usize, Scalar)]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); dim];
        for (e, c) in v {
            for (f, d) in &table[a][*e] {
                out[*f] += &(c * d);
            }
        }
        out
    };
    let mut jacobi_bad = 0;
    let mut triples = 0;
    for a in 0..dim {
        for b in a + 1..dim {
            for c in b + 1..dim {
                triples += 1;
                let t1 = bracket_vec(a, &table[b][c]);
                let t2 = bracket_vec(b, &table[c][a]);
                let t3 = bracket_vec(c, &table[a][b]);
                if t1.iter().zip(&t2).zip(&t3).any(|((x, y), z)| !(&(x + y) + z).is_zero()) {
                    jacobi_bad += 1;
                }
            }
        }
    }
    checks.push(Check::new("jacobi", jacobi_bad == 0, format!("{triples} triples, {jacobi_bad} failures")));

    let e = grading_element(k, n);
    let mut eig_bad = 0;
    for b in &bs {
        let expect = b.element.scale(&Scalar::from_int(b.grade() as i64));
        if bracket(&e, &b.element)? != expect {
            eig_bad += 1;
        }
    }
    checks.push(Check::new("grading_element", eig_bad == 0, format!("[E, b] = grade(b) b for {dim} basis vectors")));

    let lower: Vec<usize> = (0..dim).filter(|&i| grade_of[i] == -1).collect();
    let m2: Vec<usize> = (0..dim).filter(|&i| grade_of[i] == -2).collect();
    let mut products = Vec::new();
    for &a in &lower {
        for &b in &lower {
            let mut v = vec![Scalar::zero(); dim];
            for (f, c) in &table[a][b] {
                v[*f] = c.clone();
            }
            products.push(v);
        }
    }
    let gen_rank = coords_rank(&products, dim);
    checks.push(Check::new(
        "g_minus_1_generates",
        gen_rank == m2.len(),
        format!("brackets of g_-1 span {gen_rank} of dim g_-2 = {}", m2.len()),
    ));

    // x -> ([x, y_j])_j on g_-1 is injective
    let mut cols = Vec::new();
    for &a in &lower {
        let mut v = Vec::new();
        for &b in &lower {
            let mut part = vec![Scalar::zero(); m2.len()];
            for (f, c) in &table[a][b] {
                if let Some(pos) = m2.iter().position(|g| g == f) {
                    part[pos] = c.clone();
                }
            }
            v.extend(part);
        }
        cols.push(v);
    }
    let inj = coords_rank(&cols, lower.len() * m2.len());
    checks.push(Check::new(
        "bracket_nondegenerate",
        inj == lower.len() && gen_rank == m2.len(),
        format!("rank {inj} of {} on g_-1, image dim {gen_rank}", lower.len()),
    ));

    for g in 0..=2 {
        let xs = graded_basis(k, n, -g);
        let ys = graded_basis(k, n, g);
        let mut rows = Vec::new();
        for x in &xs {
            let mut row = Vec::new();
            for y in &ys {
                row.push(killing_pair(&x.element, &y.element)?);
            }
            rows.push(row);
        }
        let r = coords_rank(&rows, ys.len());
        checks.push(Check::new(
            format!("trace_pairing_g{}", g),
            xs.len() == ys.len() && r == xs.len(),
            format!("{}x{} pairing matrix of rank {r}", xs.len(), ys.len()),
        ));
    }
    Ok(checks)
}
