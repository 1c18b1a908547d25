//! Arithmetic over `F_p` with `p = 1 mod 4`, used as a fast pre-filter.
//!
//! Reduction `Z[i] -> F_p` (`i -> iota`) is a ring map, so a nonzero minor mod
//! `p` is a nonzero minor over `Q(i)`: the rank mod `p` is a lower bound for
//! the exact rank. Upper bounds always come from exactly verified kernel
//! vectors or from exact identities supplied by the caller.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{inv_mod, mul_mod, pow_mod};
use super::{ExactMatrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModPrime {
    pub p: u64,
    /// A square root of `-1` mod `p`.
    pub iota: u64,
}

const PRIME_COUNT: usize = 6;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Deterministic list of primes `p = 1 mod 4` just below `2^31`.
pub fn primes() -> &'static [ModPrime] {
    static PRIMES: OnceLock<Vec<ModPrime>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < PRIME_COUNT {
            if n % 4 == 1 && is_prime(n) {
                let g = (2..).find(|&g| pow_mod(g, (n - 1) / 2, n) == n - 1).unwrap();
                out.push(ModPrime { p: n, iota: pow_mod(g, (n - 1) / 4, n) });
            }
            n -= 1;
        }
        out
    })
}

/// Dense image of a block under `i -> iota` (or `i -> -iota` when `conj`).
fn reduce_block(m: &ExactMatrix, prime: ModPrime, conj: bool) -> Option<Vec<Vec<u64>>> {
    let iota = if conj { prime.p - prime.iota } else { prime.iota };
    let mut out = vec![vec![0u64; m.cols()]; m.rows()];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, v) in m.row(r) {
            row[*c] = v.to_mod(prime.p, iota)?;
        }
    }
    Some(out)
}

/// In-place Gauss(-Jordan) elimination; returns the pivot columns. With
/// `full` the pivot rows end up normalized and fully reduced, occupying the
/// first `rank` rows.
fn eliminate(rows: &mut [Vec<u64>], p: u64, full: bool) -> Vec<usize> {
    let nr = rows.len();
    let nc = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..nc {
        if rank == nr {
            break;
        }
        let Some(pr) = (rank..nr).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pr);
        let inv = inv_mod(rows[rank][c], p).expect("nonzero pivot");
        if full {
            for x in rows[rank][c..].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
        }
        let nz: Vec<usize> = (c..nc).filter(|&t| rows[rank][t] != 0).collect();
        let (head, tail) = rows.split_at_mut(rank + 1);
        let (above, pivot) = head.split_at_mut(rank);
        let pivot = &pivot[0];
        let scale = if full { 1 } else { inv_mod(pivot[c], p).unwrap() };
        let above: &mut [Vec<u64>] = if full { above } else { &mut [] };
        for row in tail.iter_mut().chain(above.iter_mut()) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let f = mul_mod(f, scale, p);
            let neg = p - f;
            for &t in &nz {
                row[t] = (row[t] + neg * pivot[t]) % p;
            }
        }
        pivots.push(c);
        rank += 1;
    }
    pivots
}

/// Rank of a block mod the given prime, or `None` if some denominator
/// vanishes mod `p`.
pub fn rank_mod(m: &ExactMatrix, prime: ModPrime) -> Option<usize> {
    if m.rows() == 0 || m.cols() == 0 {
        return Some(0);
    }
    let mut rows = reduce_block(m, prime, false)?;
    Some(eliminate(&mut rows, prime.p, false).len())
}

/// Rank mod the first prime that admits a reduction.
pub fn rank_mod_any(m: &ExactMatrix) -> usize {
    primes()
        .iter()
        .find_map(|&pr| rank_mod(m, pr))
        .expect("no prime admits a reduction of the matrix")
}

fn rational_reconstruct(u: &BigInt, modulus: &BigInt) -> Option<BigRational> {
    // Wang's algorithm with the symmetric bound sqrt(m/2).
    let bound = (modulus / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), u.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Kernel of a block by multi-modular RREF, rational reconstruction and an
/// exact check `M v = 0` for every candidate. Returns `(rank, kernel)`; the
/// rank is certified because the rank mod `p` bounds it below and the
/// verified kernel bounds it above.
pub fn kernel_certified(m: &ExactMatrix) -> Option<(usize, Vec<Vec<Scalar>>)> {
    let nc = m.cols();
    let mut acc_pivots: Option<Vec<usize>> = None;
    let mut modulus = BigInt::one();
    // Residues of re/im of the reduced entries R[t][f], row-major over (t, free).
    let mut re_res: Vec<BigInt> = Vec::new();
    let mut im_res: Vec<BigInt> = Vec::new();
    for &prime in primes() {
        let p = prime.p;
        let (Some(mut a), Some(mut b)) = (reduce_block(m, prime, false), reduce_block(m, prime, true)) else {
            continue;
        };
        let pa = eliminate(&mut a, p, true);
        let pb = eliminate(&mut b, p, true);
        if pa != pb {
            continue;
        }
        match &acc_pivots {
            Some(prev) if prev.len() > pa.len() => continue,
            Some(prev) if prev == &pa => {}
            _ => {
                acc_pivots = Some(pa.clone());
                modulus = BigInt::one();
                re_res.clear();
                im_res.clear();
            }
        }
        let mut is_pivot = vec![false; nc];
        for &c in &pa {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..nc).filter(|&c| !is_pivot[c]).collect();
        let half = inv_mod(2, p).unwrap();
        let inv_2iota = inv_mod(mul_mod(2, prime.iota, p), p).unwrap();
        let mut new_re = Vec::with_capacity(pa.len() * free.len());
        let mut new_im = Vec::with_capacity(pa.len() * free.len());
        for t in 0..pa.len() {
            for &f in &free {
                let (x, y) = (a[t][f], b[t][f]);
                new_re.push(mul_mod((x + y) % p, half, p));
                new_im.push(mul_mod((x + p - y) % p, inv_2iota, p));
            }
        }
        let bp = BigInt::from(p);
        if re_res.is_empty() {
            re_res = new_re.into_iter().map(BigInt::from).collect();
            im_res = new_im.into_iter().map(BigInt::from).collect();
        } else {
            // CRT: x = r + M * ((v - r) * M^{-1} mod p)
            let m_inv = BigInt::from(inv_mod((&modulus % &bp).try_into().unwrap(), p).unwrap());
            for (acc, v) in re_res.iter_mut().zip(new_re).chain(im_res.iter_mut().zip(new_im)) {
                let delta = ((BigInt::from(v) - &*acc) * &m_inv).mod_floor(&bp);
                *acc += &modulus * delta;
            }
        }
        modulus *= &bp;

        let recon = |res: &[BigInt]| -> Option<Vec<BigRational>> {
            res.iter().map(|u| rational_reconstruct(u, &modulus)).collect()
        };
        let (Some(re), Some(im)) = (recon(&re_res), recon(&im_res)) else { continue };
        let mut kernel = Vec::with_capacity(free.len());
        for (fi, &f) in free.iter().enumerate() {
            let mut v = vec![Scalar::zero(); nc];
            v[f] = Scalar::one();
            for (t, &pc) in pa.iter().enumerate() {
                let idx = t * free.len() + fi;
                v[pc] = -Scalar::from_parts(re[idx].clone(), im[idx].clone());
            }
            kernel.push(v);
        }
        let ok = kernel.iter().all(|v| m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        if ok {
            return Some((pa.len(), kernel));
        }
    }
    None
}
