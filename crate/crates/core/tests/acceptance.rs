//! Acceptance criteria, one line each. Every count is compared with an
//! oracle computed here by a different route than the library's.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kdirac::dirac::{descend_suite, gr_matrix, GradedOperator};
use kdirac::exactla::{rank_by_elimination, ExactMatrix, Scalar};
use kdirac::liealg::{graded_basis, verify_suite};
use kdirac::partitions::{cover_pairs, dim_w, enumerate_sk};
use kdirac::polydiff::{duality_suite, factorial, field_bracket_suite, Space};
use kdirac::syzygy::{predicted_new, solution_dims, verify_exactness, OperatorStack, RowOperator, SyzygySearch};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Semistandard tableaux of shape `parts` with entries in `1..=k`, counted
/// by filling boxes row by row.
fn ssyt_count(parts: &[usize], k: usize) -> u64 {
    let cells: Vec<(usize, usize)> = parts.iter().enumerate().flat_map(|(i, &a)| (0..a).map(move |j| (i, j))).collect();
    fn fill(cells: &[(usize, usize)], at: usize, k: usize, t: &mut BTreeMap<(usize, usize), usize>) -> u64 {
        let Some(&(i, j)) = cells.get(at) else { return 1 };
        let left = if j > 0 { t[&(i, j - 1)] } else { 1 };
        let above = if i > 0 { t[&(i - 1, j)] + 1 } else { 1 };
        let mut total = 0;
        for v in left.max(above)..=k {
            t.insert((i, j), v);
            total += fill(cells, at + 1, k, t);
        }
        t.remove(&(i, j));
        total
    }
    fill(&cells, 0, k, &mut BTreeMap::new())
}

/// Coefficient of `t^r` in `(1 - t)^(-2nk) (1 - t^2)^(-k(k-1)/2)`.
fn weighted_count(k: usize, n: usize, r: usize) -> u128 {
    let mut c = vec![0u128; r + 1];
    c[0] = 1;
    let mut mul = |w: usize, times: usize| {
        for _ in 0..times {
            for d in w..=r {
                c[d] += c[d - w];
            }
        }
    };
    mul(1, 2 * n * k);
    mul(2, k * (k - 1) / 2);
    c[r]
}

/// Constraint matrix of `Q o D = 0` from applying `D` to every monomial of
/// degree `deg + order`.
fn constraints_by_application(d: &GradedOperator, deg: usize) -> ExactMatrix {
    let g = gr_matrix(d, deg + d.order, false).unwrap();
    let b = d.space.monomials(deg, false);
    let c = d.space.monomials(deg + d.order, false);
    let (td, sd) = (d.target_dim(), d.source_dim());
    let trip: Vec<_> = g
        .triplets()
        .map(|(row, col, v)| {
            let f = Scalar::ratio(factorial(&b[row / td]), factorial(&c[col / sd]));
            (col, row, &v * &f)
        })
        .collect();
    ExactMatrix::from_triplets(g.cols(), g.rows(), trip)
}

/// Rank of `{ xi^m g : |m| = deg - |g| }` inside degree-`deg` rows.
fn generated_rank(space: &Space, gens: &[RowOperator], deg: usize) -> usize {
    let mut rows = Vec::new();
    for g in gens.iter().filter(|g| g.degree <= deg) {
        for m in space.monomials(deg - g.degree, false) {
            let coeffs = g.coeffs.iter().map(|(b, row)| (b.iter().zip(&m).map(|(x, y)| x + y).collect(), row.clone())).collect();
            rows.push(RowOperator { degree: deg, width: g.width, coeffs }.to_vector(space));
        }
    }
    if rows.is_empty() {
        return 0;
    }
    rank_by_elimination(&ExactMatrix::from_rows(rows).unwrap())
}

/// New generators in degree `deg` by exact elimination on the second route.
fn oracle_new(d: &GradedOperator, gens: &[RowOperator], deg: usize) -> usize {
    let m = constraints_by_application(d, deg);
    let syz = m.cols() - rank_by_elimination(&m);
    let lower: Vec<RowOperator> = gens.iter().filter(|g| g.degree < deg).cloned().collect();
    syz - generated_rank(&d.space, &lower, deg)
}

fn liealg_suite() -> Outcome {
    let mut checks = 0;
    for k in 2..=3 {
        for n in 2..=3 {
            for c in lib(verify_suite(k, n))? {
                ensure(c.pass, || format!("k={k} n={n} {}: {}", c.name, c.detail))?;
                checks += 1;
            }
            let dims: Vec<usize> = (-2..=2).map(|g| graded_basis(k, n, g).len()).collect();
            let want = [k * (k - 1) / 2, 2 * n * k, k * k + n * (2 * n - 1), 2 * n * k, k * (k - 1) / 2];
            ensure(dims == want, || format!("k={k} n={n} graded dims {dims:?}, expected {want:?}"))?;
            let m = 2 * n + 2 * k;
            ensure(dims.iter().sum::<usize>() == m * (m - 1) / 2, || "total dimension is not dim so(2n+2k)".into())?;
        }
    }
    Ok(format!("{checks} checks over k,n in {{2,3}}"))
}

fn field_brackets() -> Outcome {
    let mut shapes = 0;
    for k in 2..=3 {
        for n in 1..=3 {
            let (checks, c) = lib(field_bracket_suite(k, n))?;
            for ch in &checks {
                ensure(ch.pass, || format!("k={k} n={n} {}: {}", ch.name, ch.detail))?;
            }
            ensure(c == Some(Scalar::one()), || format!("k={k} n={n}: constant {c:?}"))?;
            shapes += 1;
        }
    }
    Ok(format!("{shapes} shapes, c = 1 throughout"))
}

fn partition_tables() -> Outcome {
    // transcribed from the worked example: levels, then the order relations drawn
    let s2: &[&[&str]] = &[&["()"], &["(1)"], &["(2,1)"], &["(2,2)"]];
    let s3: &[&[&str]] =
        &[&["()"], &["(1)"], &["(2,1)"], &["(2,2)", "(3,1,1)"], &["(3,2,1)"], &["(3,3,2)"], &["(3,3,3)"]];
    let e2 = [("()", "(1)"), ("(1)", "(2,1)"), ("(2,1)", "(2,2)")];
    let e3 = [
        ("()", "(1)"),
        ("(1)", "(2,1)"),
        ("(2,1)", "(2,2)"),
        ("(2,1)", "(3,1,1)"),
        ("(2,2)", "(3,2,1)"),
        ("(3,1,1)", "(3,2,1)"),
        ("(3,2,1)", "(3,3,2)"),
        ("(3,3,2)", "(3,3,3)"),
    ];
    for (k, levels, edges) in [(2, s2, &e2[..]), (3, s3, &e3[..])] {
        let got: Vec<Vec<String>> = enumerate_sk(k, k).into_values().map(|l| l.iter().map(ToString::to_string).collect()).collect();
        let want: Vec<Vec<String>> = levels.iter().map(|l| l.iter().map(|s| s.to_string()).collect()).collect();
        ensure(got == want, || format!("S^{k}: {got:?}"))?;
        let mut pairs: Vec<(String, String)> =
            lib(cover_pairs(k, k))?.iter().map(|p| (p.source.to_string(), p.target.to_string())).collect();
        let mut want: Vec<(String, String)> = edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        pairs.sort();
        want.sort();
        ensure(pairs == want, || format!("S^{k} order relations {pairs:?}"))?;
    }
    let mut total = 0;
    for k in 2..=4 {
        for p in lib(cover_pairs(k, k))? {
            ensure((1..=2).contains(&p.order), || format!("{} < {} has order {}", p.source, p.target, p.order))?;
            total += 1;
        }
    }
    Ok(format!("S^2, S^3 as printed; {total} cover pairs for k <= 4 all of order 1 or 2"))
}

fn descending() -> Outcome {
    let mut n_checks = 0;
    for (k, n) in [(2, 2), (3, 2)] {
        for c in lib(descend_suite(k, n, 4))? {
            ensure(c.pass, || format!("k={k} n={n} {}: {}", c.name, c.detail))?;
            n_checks += 1;
        }
    }
    Ok(format!("{n_checks} checks at (2,2) and (3,2) through degree 4"))
}

fn duality() -> Outcome {
    let recs = lib(duality_suite(2, 2, 4))?;
    for r in &recs {
        ensure(r.pass, || format!("r={} s={}: {}x{} rank {}", r.r, r.s, r.rows, r.cols, r.rank))?;
        ensure(r.rows as u128 == weighted_count(2, 2, r.r) && r.cols as u128 == weighted_count(2, 2, r.s), || {
            format!("r={} s={}: sizes {}x{}", r.r, r.s, r.rows, r.cols)
        })?;
    }
    let diag: Vec<usize> = recs.iter().filter(|r| r.r == r.s).map(|r| r.rank).collect();
    Ok(format!("invertible blocks of size {diag:?}, {} cross blocks zero", recs.len() - diag.len()))
}

fn shape_discovery() -> Outcome {
    let (k, n) = (2, 2);
    let spinor = 1u64 << n;
    let v2 = ssyt_count(&[2, 1], k) * spinor;
    let v3 = ssyt_count(&[2, 2], k) * spinor;
    ensure(v2 == 8 && v3 == 4, || format!("tableau counts give {v2}, {v3}"))?;
    ensure(dim_w(&[2, 1], k) == Ok(2) && dim_w(&[2, 2], k) == Ok(1), || "hook content disagrees with tableaux".into())?;

    let mut stack = lib(OperatorStack::new(k, n))?;
    // last predicted generator after D0 is in degree 2, after D1 in degree 1
    let windows = [5, 4, 3];
    let mut found = Vec::new();
    for (j, &top) in windows.iter().enumerate() {
        ensure(stack.ops.len() > j, || format!("D{j} was not assembled"))?;
        let stage = lib(stack.discover_next(top))?;
        let counts: Vec<usize> = stage.search.records().iter().map(|r| r.new_count).collect();
        let predicted: Vec<usize> = (0..=top).map(|d| predicted_new(k, n, j, d).unwrap()).collect();
        ensure(counts == predicted, || format!("D{j}: found {counts:?}, partitions predict {predicted:?}"))?;
        found.push(counts);
    }
    ensure(found[0][2] as u64 == v2 && found[1][1] as u64 == v3, || format!("counts {found:?} against {v2}, {v3}"))?;
    ensure(stack.ops.len() == 3, || format!("{} operators assembled", stack.ops.len()))?;
    ensure(stack.ops[1].order == 2 && stack.ops[2].order == 1, || "orders of D1, D2".into())?;

    // exact elimination on the application route in the low degrees
    let checks = [(0usize, 0..=3usize), (1, 0..=2), (2, 0..=2)];
    for (j, degrees) in checks {
        let gens = stack.stages[j].search.generators();
        for d in degrees {
            let o = oracle_new(&stack.ops[j], gens, d);
            ensure(o == found[j][d], || format!("D{j} degree {d}: oracle {o}, search {}", found[j][d]))?;
        }
    }
    Ok(format!("new generators {found:?}; V2 = {v2}, V3 = {v3}"))
}

fn exactness() -> Outcome {
    let mut stack = lib(OperatorStack::new(2, 2))?;
    lib(stack.discover_next(3))?;
    lib(stack.discover_next(2))?;
    ensure(stack.ops.len() == 3, || "D2 missing".into())?;
    for (j, zero) in lib(stack.composite_zero())? {
        ensure(zero, || format!("D{} o D{j} != 0", j + 1))?;
    }
    let spot1 = lib(verify_exactness(&stack, 1, &[2, 3, 4, 5]))?;
    let spot2 = lib(verify_exactness(&stack, 2, &[1, 2, 3, 4]))?;
    for r in spot1.iter().chain(&spot2) {
        ensure(r.pass, || format!("spot {} degree {}: rank {} kernel {}", r.spot, r.degree, r.rank, r.kernel_dim))?;
    }
    for r in spot1.iter().chain(&spot2).filter(|r| r.degree <= 3) {
        let (prev, cur) = (&stack.ops[r.spot - 1], &stack.ops[r.spot]);
        let into = rank_by_elimination(&gr_matrix(prev, r.degree + prev.order, false).unwrap());
        let out = gr_matrix(cur, r.degree, false).unwrap();
        let kernel = out.cols() - rank_by_elimination(&out);
        ensure(into == r.rank && kernel == r.kernel_dim, || format!("spot {} degree {}: elimination {into}/{kernel}", r.spot, r.degree))?;
    }
    let ranks: Vec<usize> = spot1.iter().chain(&spot2).map(|r| r.rank).collect();
    Ok(format!("spot 1 degrees 2..5, spot 2 degrees 1..4 exact; ranks {ranks:?}"))
}

fn dimensions() -> Outcome {
    let s = Space::new(2, 2);
    ensure(s.weighted_slice_dim(2) == 37 && s.monomials(2, true).len() == 37, || "weighted slice 2 is not 37".into())?;
    for (k, n) in [(2, 2), (3, 3)] {
        let sp = Space::new(k, n);
        for r in 0..=6 {
            let (f, e, g) = (sp.weighted_slice_dim(r), sp.monomials(r, true).len() as u128, weighted_count(k, n, r));
            ensure(f == e && e == g, || format!("k={k} n={n} r={r}: formula {f}, enumeration {e}, series {g}"))?;
        }
    }
    let d0 = lib(kdirac::dirac::build_d0_flat(2, 2))?;
    let dims = lib(solution_dims(&d0, &[0, 1]))?;
    let ker: Vec<usize> = dims.iter().map(|r| r.kernel_dim).collect();
    ensure(ker == [4, 24], || format!("monogenic dims {ker:?}"))?;
    for r in &dims {
        let m = gr_matrix(&d0, r.degree, false).unwrap();
        ensure(m.cols() - rank_by_elimination(&m) == r.kernel_dim, || "rank-nullity oracle disagrees".into())?;
    }
    Ok("37; formula = enumeration = series for r <= 6; monogenic 4, 24".into())
}

fn stretch() -> Outcome {
    let (k, n) = (3, 3);
    let target = ssyt_count(&[2, 1], k) as usize * 8;
    ensure(dim_w(&[2, 1], k) == Ok(8) && target == 64, || format!("target {target}"))?;
    let d0 = lib(kdirac::dirac::build_d0_flat(k, n))?;
    let mut search = lib(SyzygySearch::new(&d0))?;
    let recs = lib(search.run_to(2))?.to_vec();
    let counts: Vec<usize> = recs.iter().map(|r| r.new_count).collect();
    ensure(counts == [0, 0, target], || format!("new generators {counts:?}, target {target}"))?;
    Ok(format!("64 degree-2 generators ({} unknowns, rank {})", recs[2].unknowns, recs[2].rank))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 lie algebra suite", Duration::from_secs(5), liealg_suite),
        ("2 field brackets", Duration::from_secs(10), field_brackets),
        ("3 partition tables", Duration::from_secs(1), partition_tables),
        ("4 descending", Duration::from_secs(30), descending),
        ("5 duality", Duration::from_secs(60), duality),
        ("6 shape discovery (2,2)", Duration::from_secs(600), shape_discovery),
        ("7 exactness (2,2)", Duration::from_secs(900), exactness),
        ("8 dimensions", Duration::from_secs(60), dimensions),
        ("9 shape discovery (3,3)", Duration::from_secs(3600), stretch),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if t <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {limit:?} limit")),
            Err(e) => (false, e),
        };
        failed += usize::from(!pass);
        println!("{} criterion {name}: {detail} [{:.2}s]", if pass { "PASS" } else { "FAIL" }, t.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
