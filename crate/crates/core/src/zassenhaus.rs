//! Exact factorization of univariate polynomials over the rationals.
//!
//! The pipeline is classical: Yun squarefree decomposition, reduction to a
//! monic integer polynomial, factorization modulo the smallest admissible
//! prime >= 3, linear multifactor Hensel lifting up to the Landau-Mignotte
//! coefficient bound, then subset recombination with trial division.

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::modp::{factor_squarefree_modp, is_prime_u64, FpPoly};
use crate::poly::QPoly;
use crate::rat::{int_sqrt_ceil, Rat};

/// Result of `factor_over_q`: `input = constant * prod factor_i^mult_i`
/// with every factor monic irreducible.
#[derive(Clone, Debug, PartialEq)]
pub struct QFactorization {
    pub constant: Rat,
    pub factors: Vec<(QPoly, usize)>,
}

impl QFactorization {
    pub fn expand(&self) -> QPoly {
        let mut acc = QPoly::constant(self.constant.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }
}

/// Factors a nonzero rational polynomial into monic irreducibles.
pub fn factor_over_q(f: &QPoly) -> QFactorization {
    assert!(!f.is_zero(), "factor_over_q: zero polynomial");
    let constant = f.leading().unwrap().clone();
    if f.deg0() == 0 {
        return QFactorization {
            constant,
            factors: vec![],
        };
    }
    let mut factors: Vec<(QPoly, usize)> = Vec::new();
    for (sf, mult) in crate::poly::squarefree_decomposition(f) {
        for g in factor_squarefree_q(&sf) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    QFactorization { constant, factors }
}

/// True iff `f` (degree >= 1) is irreducible over the rationals.
pub fn is_irreducible_q(f: &QPoly) -> bool {
    f.deg0() >= 1 && {
        let fac = factor_over_q(f);
        fac.factors.len() == 1 && fac.factors[0].1 == 1
    }
}

fn cmp_poly(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    a.deg0()
        .cmp(&b.deg0())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Zassenhaus on a monic squarefree rational polynomial.
fn factor_squarefree_q(f: &QPoly) -> Vec<QPoly> {
    let n = f.deg0();
    if n == 1 {
        return vec![f.monic()];
    }
    // Clear denominators, then force a monic integer polynomial via
    // x -> x / lc scaling so Hensel lifting never tracks leading coefficients.
    let (zpoly, _den) = to_integer(f);
    let lc = zpoly.last().unwrap().clone();
    let monic_z: Vec<BigInt> = {
        let n = zpoly.len() - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    BigInt::one()
                } else {
                    &zpoly[i] * lc.pow((n - 1 - i) as u32)
                }
            })
            .collect()
    };
    let monic_factors = zassenhaus_monic(&monic_z);
    // Undo the scaling: a factor H(x) of the scaled poly maps to monic(H(lc*x)).
    monic_factors
        .into_iter()
        .map(|h| {
            let q = QPoly::new(
                h.iter()
                    .enumerate()
                    .map(|(i, c)| Rat::new(c * lc.pow(i as u32), BigInt::one()))
                    .collect(),
            );
            q.monic()
        })
        .collect()
}

/// Writes `f` as `(1/den) * F` with `F` an integer polynomial.
fn to_integer(f: &QPoly) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (ints, den)
}

/// Smallest prime >= 3 not dividing the leading coefficient such that
/// `f mod p` stays squarefree.
fn admissible_prime(f: &[BigInt]) -> u64 {
    let lc = f.last().unwrap();
    let mut p = 3u64;
    loop {
        if is_prime_u64(p) && !(lc % BigInt::from(p)).is_zero() {
            let fp = FpPoly::from_bigint_coeffs(f, p);
            if fp.deg0() == f.len() - 1 && fp.is_squarefree(p) {
                return p;
            }
        }
        p += 2;
    }
}

/// Landau-Mignotte bound on |coefficient| of any monic factor of monic `f`.
fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    (BigInt::one() << n) * (int_sqrt_ceil(&norm_sq) + 1)
}

/// Full Zassenhaus for a monic squarefree integer polynomial;
/// returns monic integer irreducible factors.
fn zassenhaus_monic(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let p = admissible_prime(f);
    let fp = FpPoly::from_bigint_coeffs(f, p);
    let modular = factor_squarefree_modp(&fp, p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let bound = mignotte_bound(f);
    let target = &bound * 2 + 1;
    let mut modulus = BigInt::from(p);
    let mut k = 1u32;
    while modulus < target {
        modulus *= BigInt::from(p);
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k);
    recombine(f.to_vec(), lifted, &modulus)
}

// --- integer polynomial helpers (lowest degree first, trimmed) ---

fn zp_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zp_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zp_trim(out)
}

fn zp_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out[i] = x - y;
    }
    zp_trim(out)
}

fn zp_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    zp_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Symmetric representative in (-m/2, m/2].
fn zp_symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    zp_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn fp_to_big(f: &FpPoly) -> Vec<BigInt> {
    f.coeffs.iter().map(|&c| BigInt::from(c)).collect()
}

/// Linear multifactor Hensel lifting of a monic factorization mod p
/// to a factorization mod p^k.
fn hensel_lift(f: &[BigInt], modular: &[FpPoly], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let pb = BigInt::from(p);
    // Bezout cofactors: h_i * prod_{j != i} g_j = 1 (mod g_i, p).
    let cofactors: Vec<FpPoly> = modular
        .iter()
        .enumerate()
        .map(|(i, gi)| {
            let mut prod = FpPoly::one();
            for (j, gj) in modular.iter().enumerate() {
                if j != i {
                    prod = prod.mul(gj, p).rem(gi, p);
                }
            }
            // Invert prod mod g_i via extended Euclid in F_p[x].
            fp_inverse_mod(&prod, gi, p)
        })
        .collect();

    let mut factors: Vec<Vec<BigInt>> = modular.iter().map(fp_to_big).collect();
    let mut modulus = pb.clone();
    for _ in 1..k {
        let next = &modulus * &pb;
        // error = (f - prod factors) / modulus, reduced mod p
        let mut prod = vec![BigInt::one()];
        for g in &factors {
            prod = zp_mul(&prod, g);
        }
        let diff = zp_sub(f, &prod);
        let err: Vec<BigInt> = diff.iter().map(|c| c / &modulus).collect();
        let err_p = FpPoly::from_bigint_coeffs(&err, p);
        for (i, g) in factors.iter_mut().enumerate() {
            let gi_p = FpPoly::from_bigint_coeffs(g, p);
            let delta = err_p.mul(&cofactors[i], p).rem(&gi_p, p);
            let mut gnew = g.clone();
            for (idx, &dc) in delta.coeffs.iter().enumerate() {
                if idx >= gnew.len() {
                    gnew.resize(idx + 1, BigInt::zero());
                }
                gnew[idx] = (&gnew[idx] + &modulus * BigInt::from(dc)).mod_floor(&next);
            }
            *g = zp_mod(&gnew, &next);
        }
        modulus = next;
    }
    factors
}

fn fp_inverse_mod(a: &FpPoly, m: &FpPoly, p: u64) -> FpPoly {
    // extended Euclid: s*a + t*m = 1
    let (mut r0, mut r1) = (m.clone(), a.rem(m, p));
    let (mut t0, mut t1) = (FpPoly::zero(), FpPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1, p);
        let t = t0.sub(&q.mul(&t1, p), p);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    assert_eq!(r0.deg0(), 0, "factors are coprime mod p");
    let inv = crate::modp::invm(r0.leading(), p);
    t0.scale(inv, p)
}

/// Subset recombination: finds the true monic integer factors from the
/// lifted modular ones.
fn recombine(mut f: Vec<BigInt>, mut lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut s = 1usize;
    'outer: while 2 * s <= lifted.len() {
        let idxs: Vec<usize> = (0..lifted.len()).collect();
        let mut subset = init_combination(s);
        loop {
            let candidate = {
                let mut c = vec![BigInt::one()];
                for &i in &subset {
                    c = zp_mul(&c, &lifted[idxs[i]]);
                    c = zp_mod(&c, modulus);
                }
                zp_symmetric(&c, modulus)
            };
            if trial_factor(&f, &candidate) {
                let q = exact_div_check(&f, &candidate).unwrap();
                out.push(candidate);
                f = q;
                let remove: Vec<usize> = subset.iter().map(|&i| idxs[i]).collect();
                let mut keep = Vec::new();
                for (i, g) in lifted.into_iter().enumerate() {
                    if !remove.contains(&i) {
                        keep.push(g);
                    }
                }
                lifted = keep;
                continue 'outer;
            }
            if !next_combination(&mut subset, lifted.len()) {
                break;
            }
        }
        s += 1;
    }
    if f.len() > 1 {
        out.push(f);
    }
    out.sort_by(|a, b| (a.len(), &a[..]).cmp(&(b.len(), &b[..])));
    out
}

fn init_combination(s: usize) -> Vec<usize> {
    (0..s).collect()
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let s = c.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if c[i] < n - s + i {
            c[i] += 1;
            for j in i + 1..s {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Quick constant-term divisibility test, then exact trial division.
fn trial_factor(f: &[BigInt], cand: &[BigInt]) -> bool {
    if cand.len() < 2 || cand.len() > f.len() {
        return false;
    }
    let f0 = &f[0];
    let c0 = &cand[0];
    if !f0.is_zero() {
        if c0.is_zero() || !(f0 % c0).is_zero() {
            return false;
        }
    }
    exact_div_check(f, cand).is_some()
}

/// Exact integer polynomial division by a monic divisor; None if inexact.
fn exact_div_check(f: &[BigInt], divisor: &[BigInt]) -> Option<Vec<BigInt>> {
    if divisor.last().map_or(true, |c| !c.is_one()) {
        return None;
    }
    let d = divisor.len() - 1;
    if f.len() < divisor.len() {
        return None;
    }
    let mut rem = f.to_vec();
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for i in (d..rem.len()).rev() {
        let q = rem[i].clone();
        if q.is_zero() {
            continue;
        }
        for j in 0..d {
            rem[i - d + j] -= &q * &divisor[j];
        }
        rem[i] = BigInt::zero();
        quot[i - d] = q;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(zp_trim(quot))
    } else {
        None
    }
}

/// Discriminant of a rational polynomial (degree >= 1).
pub fn discriminant_q(f: &QPoly) -> Rat {
    let n = f.deg0();
    assert!(n >= 1);
    let res = crate::trager::resultant(f, &f.derivative());
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let lc = f.leading().unwrap();
    BigRational::from_integer(sign.into()) * res / lc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_i64(cs)
    }

    fn check_soundness(f: &QPoly) {
        let fac = factor_over_q(f);
        assert_eq!(&fac.expand(), f, "factorization must re-expand exactly");
        for (g, _) in &fac.factors {
            assert!(g.is_monic());
        }
    }

    #[test]
    fn factor_x4_minus_1() {
        // x^4 - 1 = (x-1)(x+1)(x^2+1)
        let f = p(&[-1, 0, 0, 0, 1]);
        let fac = factor_over_q(&f);
        let expect: Vec<QPoly> = vec![p(&[-1, 1]), p(&[1, 1]), p(&[1, 0, 1])];
        assert_eq!(
            fac.factors.iter().map(|(g, m)| (g.clone(), *m)).collect::<Vec<_>>(),
            expect.into_iter().map(|g| (g, 1usize)).collect::<Vec<_>>()
        );
        check_soundness(&f);
    }

    #[test]
    fn factor_x3_minus_2_irreducible() {
        let f = p(&[-2, 0, 0, 1]);
        assert!(is_irreducible_q(&f));
        check_soundness(&f);
    }

    #[test]
    fn factor_x4_plus_1_irreducible() {
        // Independent oracle: exhaustive search for integer factorizations
        // within the coefficient bound confirms no proper factor exists.
        let f = p(&[1, 0, 0, 0, 1]);
        assert!(no_integer_factor_by_search(&[1, 0, 0, 0, 1]));
        assert!(is_irreducible_q(&f));
        check_soundness(&f);
    }

    /// Brute-force oracle: a monic quartic with constant term 1 factors over
    /// Z iff it has a monic linear or quadratic factor with coefficients
    /// bounded by the Mignotte bound. Searches that whole box.
    fn no_integer_factor_by_search(coeffs: &[i64]) -> bool {
        let f: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let bound = mignotte_bound(&f);
        let b = bound.to_string().parse::<i64>().unwrap_or(64).min(64);
        // linear: x + a
        for a in -b..=b {
            let cand = vec![BigInt::from(a), BigInt::one()];
            if a != 0 && exact_div_check(&f, &cand).is_some() {
                return false;
            }
        }
        // quadratic: x^2 + a x + c
        for a in -b..=b {
            for c in -b..=b {
                if c == 0 {
                    continue;
                }
                let cand = vec![BigInt::from(c), BigInt::from(a), BigInt::one()];
                if exact_div_check(&f, &cand).is_some() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn multiplicities_and_content() {
        // 3 * (x-1)^2 * (x^2+x+1)
        let f = p(&[-1, 1]).pow(2).mul(&p(&[1, 1, 1])).scale(&rat_i(3));
        let fac = factor_over_q(&f);
        assert_eq!(fac.constant, rat_i(3));
        assert_eq!(fac.factors.len(), 2);
        check_soundness(&f);
    }

    fn rat_i(n: i64) -> Rat {
        Rat::from_i64(n).unwrap()
    }

    #[test]
    fn rational_coefficients() {
        // (x - 1/2)(x + 3) scaled by 2
        let f = QPoly::new(vec![rat_q(-3, 2), rat_q(5, 2), rat_q(1, 1)]);
        check_soundness(&f);
        let fac = factor_over_q(&f);
        assert_eq!(fac.factors.len(), 2);
    }

    fn rat_q(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn larger_degrees() {
        // product of two irreducible cubics
        let f = p(&[-2, 0, 0, 1]).mul(&p(&[-3, 0, 0, 1]));
        let fac = factor_over_q(&f);
        assert_eq!(fac.factors.len(), 2);
        check_soundness(&f);
        // cyclotomic-ish degree 6
        let f = p(&[1, 1, 1, 1, 1, 1, 1]); // (x^7-1)/(x-1) irreducible
        assert!(is_irreducible_q(&f));
        // x^6 - 1 factors into 4 cyclotomics
        let f = p(&[-1, 0, 0, 0, 0, 0, 1]);
        let fac = factor_over_q(&f);
        assert_eq!(fac.factors.len(), 4);
        check_soundness(&f);
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant_q(&p(&[-2, 0, 1])), rat_i(8)); // x^2-2
        assert_eq!(discriminant_q(&p(&[-2, 0, 0, 1])), rat_i(-108)); // x^3-2
        assert_eq!(discriminant_q(&p(&[1, 1, 1])), rat_i(-3)); // x^2+x+1
    }

    #[test]
    fn yun_decomposition() {
        let f = p(&[-1, 1]).pow(3).mul(&p(&[2, 1])).monic();
        let dec = crate::poly::squarefree_decomposition(&f);
        assert_eq!(dec, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 3)]);
    }
}
