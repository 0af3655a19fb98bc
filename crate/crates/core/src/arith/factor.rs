//! Factorization of univariate polynomials over the rationals.
//!
//! Squarefree decomposition (Yun) followed by big-prime Zassenhaus:
//! factor modulo a prime larger than twice the coefficient bound with
//! Cantor–Zassenhaus, then recombine modular factors by trial division
//! over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{lcm_of_denominators, Rational};
use super::upoly::UniPoly;

type ZPoly = Vec<BigInt>;

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// by coefficients.
pub fn factor_rational(p: &UniPoly<Rational>) -> Vec<(UniPoly<Rational>, usize)> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(p) {
        for g in factor_squarefree_z(&to_primitive_z(&part)) {
            let q = UniPoly::new(g.into_iter().map(Rational::from_integer).collect());
            out.push((q.monic().unwrap(), mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| match a.0.degree() {
                Some(1) => b.0.coeff(0).cmp(&a.0.coeff(0)),
                _ => cmp_coeffs(a.0.coeffs(), b.0.coeffs()),
            })
    });
    out
}

fn cmp_coeffs(a: &[Rational], b: &[Rational]) -> std::cmp::Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Rational roots with multiplicity, ascending.
pub fn rational_roots(p: &UniPoly<Rational>) -> Vec<(Rational, usize)> {
    let mut roots: Vec<_> = factor_rational(p)
        .into_iter()
        .filter(|(q, _)| q.degree() == Some(1))
        .map(|(q, m)| (-q.coeff(0), m))
        .collect();
    roots.sort();
    roots
}

/// Yun's algorithm: `p = c * prod_i a_i^i` with the `a_i` monic, squarefree
/// and pairwise coprime. Constant parts are dropped.
pub fn squarefree_decomposition(p: &UniPoly<Rational>) -> Vec<(UniPoly<Rational>, usize)> {
    let Some(a) = p.monic() else { return vec![] };
    if a.degree() == Some(0) {
        return vec![];
    }
    let b = a.derivative();
    let c = a.gcd(&b);
    let mut w = a.div_rem(&c).0;
    let mut y = b.div_rem(&c).0;
    let mut z = y.clone() - &w.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let g = w.gcd(&z);
        w = w.div_rem(&g).0;
        y = z.div_rem(&g).0;
        z = y.clone() - &w.derivative();
        if g.degree().unwrap_or(0) > 0 {
            out.push((g, i));
        }
        i += 1;
    }
    out
}

fn to_primitive_z(p: &UniPoly<Rational>) -> ZPoly {
    let l = lcm_of_denominators(p.coeffs());
    let mut z: ZPoly = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let content = z.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !content.is_zero() {
        for c in &mut z {
            *c /= &content;
        }
    }
    if z.last().is_some_and(|c| c.is_negative()) {
        for c in &mut z {
            *c = -c.clone();
        }
    }
    z
}

fn primitive(mut z: ZPoly) -> ZPoly {
    ztrim(&mut z);
    let content = z.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if content.is_zero() {
        return z;
    }
    let sign = if z.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    let d = content * sign;
    z.into_iter().map(|c| c / &d).collect()
}

fn ztrim(z: &mut ZPoly) {
    while z.last().is_some_and(|c| c.is_zero()) {
        z.pop();
    }
}

/// Exact division over the integers, `None` if `b` does not divide `a`.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.len() - 1;
    let mut r = a.clone();
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(q)
    } else {
        None
    }
}

fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    // x divides f: peel it off so the modular image stays squarefree.
    if f[0].is_zero() {
        let rest = f[1..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_z(&rest));
        return out;
    }
    let lc = f[n].clone();
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm1;
    let mut p = next_prime(&bound);
    loop {
        if !(&lc % &p).is_zero() {
            let fp = pm_from_z(f, &p);
            let dfp = pm_derivative(&fp, &p);
            if pm_gcd(&fp, &dfp, &p).len() == 1 {
                break;
            }
        }
        p = next_prime(&(p + 1u32));
    }

    let fp = pm_monic(&pm_from_z(f, &p), &p);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut modular = Vec::new();
    for (g, d) in ddf(&fp, &p) {
        edf(&g, d, &p, &mut rng, &mut modular);
    }

    let mut result = Vec::new();
    let mut current = f.clone();
    let mut s = 1;
    while 2 * s <= modular.len() {
        let mut hit = None;
        for subset in combinations(modular.len(), s) {
            let lc_cur = current.last().unwrap().clone();
            let mut g = vec![lc_cur.mod_floor(&p)];
            for &i in &subset {
                g = pm_mul(&g, &modular[i], &p);
            }
            let g = primitive(symmetric(&g, &p));
            if let Some(q) = zdiv_exact(&current, &g) {
                hit = Some((subset, g, q));
                break;
            }
        }
        match hit {
            Some((subset, g, q)) => {
                result.push(g);
                current = q;
                let mut idx = 0;
                modular.retain(|_| {
                    let keep = !subset.contains(&idx);
                    idx += 1;
                    keep
                });
            }
            None => s += 1,
        }
    }
    if current.len() > 1 {
        result.push(primitive(current));
    }
    result
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn symmetric(g: &ZPoly, p: &BigInt) -> ZPoly {
    let half = p >> 1;
    g.iter()
        .map(|c| if *c > half { c - p } else { c.clone() })
        .collect()
}

fn is_probable_prime(n: &BigInt) -> bool {
    const BASES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    if *n < BigInt::from(2) {
        return false;
    }
    for b in BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut r = 0u32;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    'witness: for b in BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..r {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn next_prime(from: &BigInt) -> BigInt {
    let mut c = from + 1u32;
    if c.is_even() {
        c += 1u32;
    }
    while !is_probable_prime(&c) {
        c += 2u32;
    }
    c
}

// Polynomials modulo a prime, coefficients in [0, p), low to high.

fn pm_trim(mut a: ZPoly) -> ZPoly {
    ztrim(&mut a);
    a
}

fn pm_from_z(a: &ZPoly, p: &BigInt) -> ZPoly {
    pm_trim(a.iter().map(|c| c.mod_floor(p)).collect())
}

fn pm_inv(a: &BigInt, p: &BigInt) -> BigInt {
    a.modpow(&(p - 2u32), p)
}

fn pm_monic(a: &ZPoly, p: &BigInt) -> ZPoly {
    let inv = pm_inv(a.last().unwrap(), p);
    a.iter().map(|c| (c * &inv) % p).collect()
}

fn pm_sub(a: &ZPoly, b: &ZPoly, p: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    pm_trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(p))
            .collect(),
    )
}

fn pm_mul(a: &ZPoly, b: &ZPoly, p: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    pm_trim(out.into_iter().map(|c| c % p).collect())
}

fn pm_divrem(a: &ZPoly, b: &ZPoly, p: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (vec![], a.clone());
    }
    let inv = pm_inv(&b[db], p);
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = (&r[k + db] * &inv) % p;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * bj).mod_floor(p);
        }
        q[k] = c;
    }
    r.truncate(db);
    (pm_trim(q), pm_trim(r))
}

fn pm_gcd(a: &ZPoly, b: &ZPoly, p: &BigInt) -> ZPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = pm_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        pm_monic(&a, p)
    }
}

fn pm_derivative(a: &ZPoly, p: &BigInt) -> ZPoly {
    pm_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (c * BigInt::from(i)) % p)
            .collect(),
    )
}

fn pm_powmod(base: &ZPoly, e: &BigInt, m: &ZPoly, p: &BigInt) -> ZPoly {
    let mut result = vec![BigInt::one()];
    let mut b = pm_divrem(base, m, p).1;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            result = pm_divrem(&pm_mul(&result, &b, p), m, p).1;
        }
        if i + 1 < bits {
            b = pm_divrem(&pm_mul(&b, &b, p), m, p).1;
        }
    }
    result
}

fn ddf(f: &ZPoly, p: &BigInt) -> Vec<(ZPoly, usize)> {
    let x = vec![BigInt::zero(), BigInt::one()];
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while f.len() - 1 >= 2 * i {
        h = pm_powmod(&h, p, &f, p);
        let g = pm_gcd(&f, &pm_sub(&h, &x, p), p);
        if g.len() > 1 {
            f = pm_divrem(&f, &g, p).0;
            h = pm_divrem(&h, &f, p).1;
            out.push((g, i));
        }
        i += 1;
    }
    if f.len() > 1 {
        let d = f.len() - 1;
        out.push((f, d));
    }
    out
}

fn edf(g: &ZPoly, d: usize, p: &BigInt, rng: &mut ChaCha8Rng, out: &mut Vec<ZPoly>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.clone());
        return;
    }
    let e = (p.pow(d as u32) - 1u32) >> 1;
    let nbytes = (p.bits() as usize).div_ceil(8) + 8;
    loop {
        let a: ZPoly = pm_trim(
            (0..n)
                .map(|_| {
                    let bytes: Vec<u8> = (0..nbytes).map(|_| rng.gen()).collect();
                    BigInt::from_bytes_le(num_bigint::Sign::Plus, &bytes).mod_floor(p)
                })
                .collect(),
        );
        if a.len() < 2 {
            continue;
        }
        let b = pm_sub(&pm_powmod(&a, &e, g, p), &[BigInt::one()].to_vec(), p);
        let h = pm_gcd(g, &b, p);
        if h.len() > 1 && h.len() < g.len() {
            let q = pm_monic(&pm_divrem(g, &h, p).0, p);
            edf(&h, d, p, rng, out);
            edf(&q, d, p, rng, out);
            return;
        }
    }
}
