//! Polynomial arithmetic and factorization over prime fields F_p.
//!
//! Used by the rational factorization kernel (factor mod p, then Hensel
//! lift) and by the Frobenius module (residue fields F_p[t]/(g)). Primes
//! here are small machine integers; coefficients are kept in `[0, p)`.

use num::{BigInt, Integer, Signed};

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for d in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == d {
            return true;
        }
        if n % d == 0 {
            return false;
        }
    }
    let mut i = 37u64;
    while i.saturating_mul(i) <= n {
        if n % i == 0 || n % (i + 2) == 0 {
            return false;
        }
        i += 6;
    }
    true
}

fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

pub fn big_mod_p(n: &BigInt, p: u64) -> u64 {
    let m = n.mod_floor(&BigInt::from(p));
    let (_, digits) = m.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Dense polynomial over F_p, lowest degree first, trimmed.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct FpPoly {
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { coeffs }
    }

    pub fn zero() -> Self {
        FpPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        FpPoly { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        FpPoly { coeffs: vec![0, 1] }
    }

    pub fn constant(c: u64, p: u64) -> Self {
        Self::new(vec![c], p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    /// Reduces a rational-integer polynomial mod p.
    pub fn from_bigint_coeffs(coeffs: &[BigInt], p: u64) -> Self {
        Self::new(coeffs.iter().map(|c| big_mod_p(c, p)).collect(), p)
    }

    pub fn add(&self, rhs: &Self, p: u64) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            out[i] = addm(a, b, p);
        }
        Self::new(out, p)
    }

    pub fn sub(&self, rhs: &Self, p: u64) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            out[i] = subm(a, b, p);
        }
        Self::new(out, p)
    }

    pub fn mul(&self, rhs: &Self, p: u64) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = addm(out[i + j], mulm(a, b, p), p);
            }
        }
        Self::new(out, p)
    }

    pub fn scale(&self, k: u64, p: u64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| mulm(c, k, p)).collect(), p)
    }

    pub fn divmod(&self, rhs: &Self, p: u64) -> (Self, Self) {
        let d = rhs.degree().expect("division by zero polynomial");
        if self.coeffs.len() < rhs.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let linv = invm(rhs.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let q = mulm(rem[i], linv, p);
            for j in 0..d {
                rem[i - d + j] = subm(rem[i - d + j], mulm(q, rhs.coeffs[j], p), p);
            }
            rem[i] = 0;
            quot[i - d] = q;
        }
        rem.truncate(d);
        (Self::new(quot, p), Self::new(rem, p))
    }

    pub fn rem(&self, rhs: &Self, p: u64) -> Self {
        self.divmod(rhs, p).1
    }

    pub fn monic(&self, p: u64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(invm(self.leading(), p), p)
    }

    pub fn gcd(&self, rhs: &Self, p: u64) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    pub fn derivative(&self, p: u64) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, (i as u64) % p, p))
            .collect();
        Self::new(out, p)
    }

    pub fn eval(&self, x: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = addm(mulm(acc, x, p), c, p);
        }
        acc
    }

    pub fn is_squarefree(&self, p: u64) -> bool {
        !self.is_zero() && self.gcd(&self.derivative(p), p).deg0() == 0
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigInt, m: &Self, p: u64) -> Self {
        let mut result = Self::one();
        let mut base = self.rem(m, p);
        let mut e = e.clone();
        let two = BigInt::from(2);
        while e.is_positive() {
            if e.is_odd() {
                result = result.mul(&base, p).rem(m, p);
            }
            base = base.mul(&base, p).rem(m, p);
            e /= &two;
        }
        result
    }
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// returns `(product of all irreducible factors of degree d, d)` pairs.
fn distinct_degree(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = FpPoly::x(); // x^(p^d) mod f, iterated
    let mut d = 0usize;
    while f.deg0() >= 1 {
        d += 1;
        if 2 * d > f.deg0() {
            // What remains is irreducible.
            out.push((f.clone(), f.deg0()));
            break;
        }
        h = h.powmod(&BigInt::from(p), &f, p);
        let g = h.sub(&FpPoly::x(), p).gcd(&f, p);
        if g.deg0() >= 1 {
            out.push((g.clone(), d));
            f = f.divmod(&g, p).0.monic(p);
            h = h.rem(&f, p);
        }
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus, odd p) with a deterministic
/// candidate sequence so repeated runs agree exactly.
fn equal_degree(f: &FpPoly, d: usize, p: u64) -> Vec<FpPoly> {
    let n = f.deg0();
    if n == d {
        return vec![f.monic(p)];
    }
    let exp = (BigInt::from(p).pow(d as u32) - 1) / 2;
    // Deterministic candidates: x+1, x+2, ..., then quadratics, etc.
    let mut counter = 0u64;
    loop {
        counter += 1;
        let a = deterministic_candidate(counter, n, p);
        if a.deg0() == 0 {
            continue;
        }
        let g = a.gcd(f, p);
        if g.deg0() >= 1 && g.deg0() < n {
            let mut out = equal_degree(&g, d, p);
            out.extend(equal_degree(&f.divmod(&g, p).0.monic(p), d, p));
            return out;
        }
        let b = a.powmod(&exp, f, p).sub(&FpPoly::one(), p);
        let g = b.gcd(f, p);
        if g.deg0() >= 1 && g.deg0() < n {
            let mut out = equal_degree(&g, d, p);
            out.extend(equal_degree(&f.divmod(&g, p).0.monic(p), d, p));
            return out;
        }
        assert!(counter < 10_000_000, "equal-degree split failed to terminate");
    }
}

/// Enumerates nonconstant monic-ish polynomials of bounded degree in a fixed
/// order: counter written base p gives the coefficient sequence.
fn deterministic_candidate(counter: u64, max_deg: usize, p: u64) -> FpPoly {
    let mut c = counter;
    let mut coeffs = Vec::new();
    while c > 0 {
        coeffs.push(c % p);
        c /= p;
        if coeffs.len() > 2 * max_deg {
            break;
        }
    }
    coeffs.push(1); // keep it nonconstant and monic
    FpPoly::new(coeffs, p)
}

/// Full factorization of a squarefree monic polynomial over F_p,
/// sorted canonically (degree, then coefficient sequence).
pub fn factor_squarefree_modp(f: &FpPoly, p: u64) -> Vec<FpPoly> {
    assert!(p >= 3, "factorization kernel requires an odd prime");
    let mut out = Vec::new();
    for (block, d) in distinct_degree(&f.monic(p), p) {
        out.extend(equal_degree(&block, d, p));
    }
    out.sort_by(|a, b| (a.coeffs.len(), &a.coeffs).cmp(&(b.coeffs.len(), &b.coeffs)));
    out
}

/// Degrees of the irreducible factors of `f` mod p (with multiplicity),
/// for not-necessarily-squarefree `f`.
pub fn factor_degrees_modp(f: &FpPoly, p: u64) -> Vec<usize> {
    let mut degrees = Vec::new();
    let mut f = f.monic(p);
    if f.deg0() == 0 {
        return degrees;
    }
    let fd = f.derivative(p);
    if fd.is_zero() {
        // f = h(x^p) = h(x)^p: every multiplicity of h is scaled by p.
        let mut h = Vec::new();
        let mut i = 0;
        while i < f.coeffs.len() {
            h.push(f.coeffs[i]);
            i += p as usize;
        }
        for d in factor_degrees_modp(&FpPoly::new(h, p), p) {
            degrees.extend(std::iter::repeat(d).take(p as usize));
        }
        degrees.sort_unstable();
        return degrees;
    }
    let sf_part = {
        let g = f.gcd(&fd, p);
        if g.deg0() == 0 {
            f.clone()
        } else {
            f.divmod(&g, p).0.monic(p)
        }
    };
    for factor in factor_squarefree_modp(&sf_part, p) {
        // Count multiplicity by repeated division.
        loop {
            let (q, r) = f.divmod(&factor, p);
            if !r.is_zero() {
                break;
            }
            degrees.push(factor.deg0());
            f = q;
        }
    }
    // Factors whose multiplicity is divisible by p are invisible in the
    // squarefree part; whatever remains is handled recursively.
    if f.deg0() >= 1 {
        degrees.extend(factor_degrees_modp(&f, p));
    }
    degrees.sort_unstable();
    degrees
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(cs: &[u64], p: u64) -> FpPoly {
        FpPoly::new(cs.to_vec(), p)
    }

    #[test]
    fn basic_arith() {
        let p = 7;
        let f = fp(&[5, 0, 1], p); // x^2 + 5 = x^2 - 2
        let g = fp(&[3, 1], p); // x + 3
        let (q, r) = f.divmod(&g, p);
        assert_eq!(q.mul(&g, p).add(&r, p), f);
        assert_eq!(powm(3, 6, 7), 1);
        assert_eq!(mulm(invm(3, 7), 3, 7), 1);
    }

    #[test]
    fn factor_x3_minus_2() {
        // x^3 - 2 mod 5 = (x - 3)(x^2 + 3x + 4): degrees {1, 2}
        let p = 5;
        let f = fp(&[3, 0, 0, 1], p);
        let factors = factor_squarefree_modp(&f, p);
        let degs: Vec<usize> = factors.iter().map(|g| g.deg0()).collect();
        assert_eq!(degs, vec![1, 2]);
        let prod = factors.iter().fold(FpPoly::one(), |a, b| a.mul(b, p));
        assert_eq!(prod, f);

        // mod 7: irreducible (2 is not a cube mod 7)
        let f7 = fp(&[5, 0, 0, 1], 7);
        assert_eq!(factor_degrees_modp(&f7, 7), vec![3]);

        // mod 31: splits completely (4^3 = 64 = 2 mod 31)
        let f31 = fp(&[29, 0, 0, 1], 31);
        assert_eq!(factor_degrees_modp(&f31, 31), vec![1, 1, 1]);
    }

    #[test]
    fn multiplicity_degrees() {
        // (x-1)^2 (x^2+1) mod 3: x^2+1 is irreducible mod 3
        let p = 3;
        let f = fp(&[2, 1], p); // x - 1
        let f = f.mul(&f, p).mul(&fp(&[1, 0, 1], p), p);
        assert_eq!(factor_degrees_modp(&f, p), vec![1, 1, 2]);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }
}
