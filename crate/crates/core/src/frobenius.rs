//! Frobenius automorphisms at unramified primes and their canonical
//! algebraic points.
//!
//! The Frobenius at p is computed by reduction: pick the canonical
//! irreducible factor g of the modulus mod p, and find the unique
//! automorphism acting as x -> x^p on F_p[t]/(g). The associated point of
//! the coordinate ring evaluates every basis function at that element; two
//! exact certificates replace the p-adic statement: all values are fixed by
//! the Frobenius (decomposition-field containment), and conjugating the
//! Frobenius transports the values by the conjugating automorphism, so the
//! point does not depend on the chosen prime above p.

use std::sync::Arc;

use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::galois::{fixed_field, FixedFieldBasis, Subgroup};
use crate::modp::{factor_squarefree_modp, is_prime_u64, FpPoly};
use crate::numfield::NFElement;
use crate::poly::{real_root_count, QPoly};
use crate::rat::{int_val_at, rat_is_p_unit, Rat};
use crate::ring::{AlgebraPoint, CoordinateRing};
use crate::splitting::AmbientGaloisField;
use crate::zassenhaus::discriminant_q;

/// Reduction data at an unramified rational prime.
pub struct PrimeContext {
    ambient: Arc<AmbientGaloisField>,
    p: u64,
    factor_g: FpPoly,
    all_factors: Vec<FpPoly>,
}

impl std::fmt::Debug for PrimeContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PrimeContext(p = {}, residue degree {})",
            self.p,
            self.residue_degree()
        )
    }
}

impl PrimeContext {
    /// Validates that `p` is a good prime: it divides neither the
    /// discriminant of the modulus nor any stored denominator.
    pub fn new(ambient: Arc<AmbientGaloisField>, p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        let modulus = ambient.field().modulus();
        for c in modulus.coeffs() {
            if int_val_at(c.denom(), p) != 0 {
                return Err(Error::RamifiedOrBadPrime(p));
            }
        }
        let disc = discriminant_q(modulus);
        if !rat_is_p_unit(&disc, p) {
            return Err(Error::RamifiedOrBadPrime(p));
        }
        for i in 0..ambient.group_order() {
            for c in ambient.auto_image(i).coords() {
                if int_val_at(c.denom(), p) != 0 {
                    return Err(Error::RamifiedOrBadPrime(p));
                }
            }
        }
        let fp = poly_mod_p(modulus, p);
        let all_factors = factor_squarefree_modp(&fp, p);
        // Canonical choice: factors are sorted by (degree, coefficients);
        // in the Galois case all degrees agree, so this is the
        // lexicographically least coefficient sequence.
        let factor_g = all_factors[0].clone();
        Ok(PrimeContext {
            ambient,
            p,
            factor_g,
            all_factors,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn residue_degree(&self) -> usize {
        self.factor_g.deg0()
    }

    pub fn chosen_factor(&self) -> &FpPoly {
        &self.factor_g
    }

    pub fn modulus_factors(&self) -> &[FpPoly] {
        &self.all_factors
    }

    /// Image of a p-integral element in the residue field F_p[t]/(g).
    pub fn reduce(&self, x: &NFElement) -> Result<FpPoly> {
        self.reduce_mod(x, &self.factor_g)
    }

    fn reduce_mod(&self, x: &NFElement, g: &FpPoly) -> Result<FpPoly> {
        let p = self.p;
        let mut coeffs = Vec::with_capacity(x.coords().len());
        for c in x.coords() {
            if int_val_at(c.denom(), p) != 0 {
                return Err(Error::RamifiedOrBadPrime(p));
            }
            let num = crate::modp::big_mod_p(c.numer(), p);
            let den = crate::modp::big_mod_p(c.denom(), p);
            coeffs.push(crate::modp::powm(den, p - 2, p).wrapping_mul(num) % p);
        }
        Ok(FpPoly::new(coeffs, p).rem(g, p))
    }

    /// The Frobenius with respect to an arbitrary irreducible factor of the
    /// modulus mod p: the unique automorphism reducing to x -> x^p.
    pub fn frobenius_for_factor(&self, g: &FpPoly) -> Result<usize> {
        let p = self.p;
        let theta_p = FpPoly::x().powmod(&BigInt::from(p), g, p);
        let mut found = None;
        for s in 0..self.ambient.group_order() {
            let img = self.reduce_mod(self.ambient.auto_image(s), g)?;
            if img == theta_p {
                if found.is_some() {
                    return Err(Error::InconsistentDescent("Frobenius is not unique"));
                }
                found = Some(s);
            }
        }
        found.ok_or(Error::InconsistentDescent("Frobenius not found"))
    }
}

fn poly_mod_p(f: &QPoly, p: u64) -> FpPoly {
    let coeffs: Vec<u64> = f
        .coeffs()
        .iter()
        .map(|c| {
            let num = crate::modp::big_mod_p(c.numer(), p);
            let den = crate::modp::big_mod_p(c.denom(), p);
            crate::modp::powm(den, p - 2, p).wrapping_mul(num) % p
        })
        .collect();
    FpPoly::new(coeffs, p)
}

/// The Frobenius automorphism of N at p, via the canonical factor choice.
pub fn frobenius_element(
    ambient: &Arc<AmbientGaloisField>,
    p: u64,
) -> Result<(PrimeContext, usize)> {
    let ctx = PrimeContext::new(Arc::clone(ambient), p)?;
    let sigma = ctx.frobenius_for_factor(&ctx.factor_g.clone())?;
    Ok((ctx, sigma))
}

/// Residue degrees of `f` mod p (f must be p-integral with unit leading
/// coefficient and p-unit discriminant).
pub fn splitting_type(f: &QPoly, p: u64) -> Result<Vec<usize>> {
    if !is_prime_u64(p) {
        return Err(Error::Parse(format!("{p} is not prime")));
    }
    for c in f.coeffs() {
        if int_val_at(c.denom(), p) != 0 {
            return Err(Error::RamifiedOrBadPrime(p));
        }
    }
    if !rat_is_p_unit(f.leading().unwrap(), p) {
        return Err(Error::RamifiedOrBadPrime(p));
    }
    if !rat_is_p_unit(&discriminant_q(f), p) {
        return Err(Error::RamifiedOrBadPrime(p));
    }
    let fp = poly_mod_p(f, p);
    Ok(crate::modp::factor_degrees_modp(&fp, p))
}

/// Cycle type of automorphism `sigma` on the stored roots of defining
/// polynomial `idx` (sorted ascending, to compare with `splitting_type`).
pub fn cycle_type_on_roots(
    ambient: &AmbientGaloisField,
    sigma: usize,
    idx: usize,
) -> Vec<usize> {
    let roots = ambient.roots_of(idx);
    let perm: Vec<usize> = roots
        .iter()
        .map(|r| {
            let img = ambient.apply(sigma, r);
            roots
                .iter()
                .position(|s| *s == img)
                .expect("automorphism permutes the roots")
        })
        .collect();
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = perm[cur];
            len += 1;
        }
        cycles.push(len);
    }
    cycles.sort_unstable();
    cycles
}

/// The algebraic Frobenius point of A(L/Q) at p, with its two exact
/// certificates.
pub struct FrobeniusData {
    pub context: PrimeContext,
    /// Frobenius automorphism index at the ambient level.
    pub sigma: usize,
    /// Multiplicative order of sigma (equals the residue degree).
    pub order: usize,
    /// Conjugacy class id of sigma at the ambient level.
    pub class: usize,
    /// Coset of sigma in Gal(L/Q).
    pub coset: usize,
    /// Values of the coordinate-ring basis at the Frobenius.
    pub values: Vec<NFElement>,
    /// Fixed field of <H, sigma>: the decomposition field inside L.
    pub decomposition_field: FixedFieldBasis,
    /// Certificate 1: every value is fixed by the Frobenius.
    pub fixed_certificate: bool,
    /// Certificate 2: conjugating the Frobenius transports the values.
    pub transport_certificate: bool,
}

impl FrobeniusData {
    pub fn decomposition_degree(&self) -> usize {
        self.decomposition_field.dim()
    }

    /// The point itself: evaluation of A(L/Q) at the Frobenius coset.
    pub fn point(&self, ring: &CoordinateRing) -> AlgebraPoint {
        ring.galois_to_point(self.coset)
    }
}

/// Builds the algebraic Frobenius for a coordinate ring with base field Q.
pub fn algebraic_frobenius(ring: &CoordinateRing, p: u64) -> Result<FrobeniusData> {
    algebraic_frobenius_for(ring, p, None)
}

/// Same, but with an explicit factor of the modulus mod p (used to verify
/// independence of the factor choice). `None` takes the canonical factor.
pub fn algebraic_frobenius_for(
    ring: &CoordinateRing,
    p: u64,
    factor: Option<&FpPoly>,
) -> Result<FrobeniusData> {
    let ext = ring.ext();
    if ext.outer().order() != ext.ambient().group_order() {
        return Err(Error::NotAnEmbedding); // base field must be Q
    }
    let ambient = ext.ambient();
    let ctx = PrimeContext::new(Arc::clone(ambient), p)?;
    let g = factor.unwrap_or(&ctx.factor_g).clone();
    let sigma = ctx.frobenius_for_factor(&g)?;
    let coset = ext.coset_of(sigma).expect("outer group is everything");
    let m = ext.group_size();
    let values: Vec<NFElement> = (0..ring.dim()).map(|i| ring.basis_values(i)[coset].clone()).collect();
    // Certificate 1: phi(f(phi)) = f(phi) -- values lie in the
    // decomposition field.
    let fixed_certificate = values.iter().all(|v| ext.act(coset, v) == *v);
    // Certificate 2: f(s phi s^-1) = s(f(phi)) for every s.
    let mut transport_certificate = true;
    for s in 0..m {
        let conj = ext.qcompose(ext.qcompose(s, coset), ext.qinv(s));
        for i in 0..ring.dim() {
            if ring.basis_values(i)[conj] != ext.act(s, &values[i]) {
                transport_certificate = false;
            }
        }
    }
    // Decomposition field inside L: fixed field of <H, sigma>.
    let mut gens: Vec<usize> = ext.inner().members().to_vec();
    gens.push(sigma);
    let dec_group = Subgroup::generated(Arc::clone(ambient), &gens);
    let decomposition_field = fixed_field(&dec_group);
    Ok(FrobeniusData {
        order: ambient.order_of(sigma),
        class: ambient.class_of(sigma),
        context: ctx,
        sigma,
        coset,
        values,
        decomposition_field,
        fixed_certificate,
        transport_certificate,
    })
}

/// Frobenius at the infinite place: defined exactly when L is totally
/// real, and then it is the identity point.
pub fn frobenius_at_infinity(ring: &CoordinateRing) -> Result<AlgebraPoint> {
    let ext = ring.ext();
    if ext.outer().order() != ext.ambient().group_order() {
        return Err(Error::NotAnEmbedding);
    }
    let mp = ext.l_field().min_poly();
    if real_root_count(mp) != mp.deg0() {
        return Err(Error::RamifiedInfinitePlace);
    }
    Ok(ring.counit_point())
}

/// Image of an ambient-level automorphism in Gal(L/Q).
pub fn frobenius_in_quotient(
    ring: &CoordinateRing,
    sigma: usize,
) -> Result<usize> {
    ring.ext()
        .coset_of(sigma)
        .ok_or(Error::NotAnEmbedding)
}

/// Class statistics of Frobenius elements over the primes below `limit`.
pub struct ChebotarevSweep {
    /// (class id, class size, hit count)
    pub per_class: Vec<(usize, usize, usize)>,
    pub good_primes: usize,
    pub skipped: Vec<u64>,
}

impl ChebotarevSweep {
    /// |observed frequency - size/|G|| for each class, as exact rationals.
    pub fn deviations(&self, group_order: usize) -> Vec<Rat> {
        self.per_class
            .iter()
            .map(|&(_, size, hits)| {
                let observed = Rat::new(BigInt::from(hits), BigInt::from(self.good_primes.max(1)));
                let expected = Rat::new(BigInt::from(size), BigInt::from(group_order));
                let d = observed - expected;
                if d < Rat::zero() {
                    -d
                } else {
                    d
                }
            })
            .collect()
    }
}

pub fn chebotarev_sweep(
    ambient: &Arc<AmbientGaloisField>,
    lo: u64,
    hi: u64,
) -> ChebotarevSweep {
    let classes = ambient.conjugacy_classes();
    let mut hits = vec![0usize; classes.len()];
    let mut good = 0usize;
    let mut skipped = Vec::new();
    for p in lo..hi {
        if !is_prime_u64(p) {
            continue;
        }
        match frobenius_element(ambient, p) {
            Ok((_, sigma)) => {
                hits[ambient.class_of(sigma)] += 1;
                good += 1;
            }
            Err(_) => skipped.push(p),
        }
    }
    ChebotarevSweep {
        per_class: classes
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.len(), hits[i]))
            .collect(),
        good_primes: good,
        skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::ring::ring_of_splitting_field;
    use crate::splitting::{splitting_field, DEFAULT_DEGREE_CAP};

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_i64(cs)
    }

    fn s3() -> Arc<AmbientGaloisField> {
        Arc::new(splitting_field(&[p(&[-2, 0, 0, 1])], DEFAULT_DEGREE_CAP).unwrap())
    }

    #[test]
    fn frobenius_orders_for_x3_minus_2() {
        let a = s3();
        // p = 5: degrees (1,2) -> transposition; p = 7: (3) -> 3-cycle;
        // p = 31: (1,1,1) -> identity.
        let (_, s5) = frobenius_element(&a, 5).unwrap();
        assert_eq!(a.order_of(s5), 2);
        let (_, s7) = frobenius_element(&a, 7).unwrap();
        assert_eq!(a.order_of(s7), 3);
        let (_, s31) = frobenius_element(&a, 31).unwrap();
        assert_eq!(s31, a.identity());
    }

    #[test]
    fn splitting_types_for_x3_minus_2() {
        assert_eq!(splitting_type(&p(&[-2, 0, 0, 1]), 5).unwrap(), vec![1, 2]);
        assert_eq!(splitting_type(&p(&[-2, 0, 0, 1]), 7).unwrap(), vec![3]);
        assert_eq!(splitting_type(&p(&[-2, 0, 0, 1]), 31).unwrap(), vec![1, 1, 1]);
        // ramified primes are rejected: disc(x^3-2) = -108 = -2^2 3^3
        assert!(matches!(
            splitting_type(&p(&[-2, 0, 0, 1]), 3),
            Err(Error::RamifiedOrBadPrime(3))
        ));
        assert!(splitting_type(&p(&[-2, 0, 0, 1]), 6).is_err());
    }

    #[test]
    fn dedekind_consistency() {
        let a = s3();
        for prime in [5u64, 7, 11, 13, 31, 37, 41] {
            let (_, sigma) = frobenius_element(&a, prime).unwrap();
            assert_eq!(
                cycle_type_on_roots(&a, sigma, 0),
                splitting_type(&p(&[-2, 0, 0, 1]), prime).unwrap(),
                "cycle type vs mod-{prime} factorization"
            );
        }
    }

    #[test]
    fn order_equals_residue_degree() {
        let a = s3();
        for prime in [5u64, 7, 11, 13, 31] {
            let (ctx, sigma) = frobenius_element(&a, prime).unwrap();
            assert_eq!(a.order_of(sigma), ctx.residue_degree());
        }
    }

    #[test]
    fn algebraic_frobenius_certificates() {
        let (_a, ring) = ring_of_splitting_field(&[p(&[-2, 0, 0, 1])], DEFAULT_DEGREE_CAP).unwrap();
        for prime in [5u64, 7, 11, 13, 31] {
            let data = algebraic_frobenius(&ring, prime).unwrap();
            assert!(data.fixed_certificate, "p = {prime}");
            assert!(data.transport_certificate, "p = {prime}");
            // order = residue degree; decomposition degree = index of <sigma>
            assert_eq!(data.order, data.context.residue_degree());
            assert_eq!(data.decomposition_degree() * data.order, 6);
        }
        // p = 31: identity Frobenius, point is the counit, values rational.
        let data = algebraic_frobenius(&ring, 31).unwrap();
        assert_eq!(data.sigma, 0);
        assert_eq!(data.point(&ring), ring.counit_point());
        for v in &data.values {
            assert!(v.is_rational());
        }
        // p = 7: 3-cycle, values lie in the quadratic decomposition field.
        let data = algebraic_frobenius(&ring, 7).unwrap();
        assert_eq!(data.order, 3);
        assert_eq!(data.decomposition_degree(), 2);
        for v in &data.values {
            assert!(data.decomposition_field.contains(v));
        }
    }

    #[test]
    fn factor_choice_independence() {
        let (_a, ring) = ring_of_splitting_field(&[p(&[-2, 0, 0, 1])], DEFAULT_DEGREE_CAP).unwrap();
        for prime in [5u64, 7, 11, 13, 31] {
            let base = algebraic_frobenius(&ring, prime).unwrap();
            let ctx = PrimeContext::new(Arc::clone(ring.ambient()), prime).unwrap();
            for g in ctx.modulus_factors() {
                let alt = algebraic_frobenius_for(&ring, prime, Some(g)).unwrap();
                assert!(alt.fixed_certificate && alt.transport_certificate);
                // conjugacy of the two Frobenius elements
                assert_eq!(base.class, alt.class);
                // transport identity: some s carries base values to alt values
                let ext = ring.ext();
                let m = ext.group_size();
                let witness = (0..m).find(|&s| {
                    ext.qcompose(ext.qcompose(s, base.coset), ext.qinv(s)) == alt.coset
                });
                let s = witness.expect("conjugate cosets");
                for i in 0..ring.dim() {
                    assert_eq!(ext.act(s, &base.values[i]), alt.values[i]);
                }
            }
        }
    }

    #[test]
    fn quotient_compatibility() {
        // N = N6, L = quadratic subfield: Frobenius mod p restricts to the
        // quadratic-residue behavior of -3.
        let a = s3();
        let a3 = crate::galois::all_subgroups(&a)
            .into_iter()
            .find(|s| s.order() == 3)
            .unwrap();
        let ext = Arc::new(
            crate::galois::GaloisSubextension::new(a3, Subgroup::whole(Arc::clone(&a))).unwrap(),
        );
        let ring = crate::ring::build_coordinate_ring(ext).unwrap();
        // p = 7: 7 = 1 mod 3 splits in Q(sqrt(-3)): identity.
        let (_, s7) = frobenius_element(&a, 7).unwrap();
        assert_eq!(frobenius_in_quotient(&ring, s7).unwrap(), 0);
        // p = 5: 5 = 2 mod 3 is inert: the nontrivial element.
        let (_, s5) = frobenius_element(&a, 5).unwrap();
        assert_eq!(frobenius_in_quotient(&ring, s5).unwrap(), 1);
    }

    #[test]
    fn infinite_place() {
        let (_a, r1) = ring_of_splitting_field(&[p(&[-2, 0, 1])], DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(frobenius_at_infinity(&r1).unwrap(), r1.counit_point());
        let (_a, r2) = ring_of_splitting_field(&[p(&[-2, 0, 0, 1])], DEFAULT_DEGREE_CAP).unwrap();
        assert!(matches!(
            frobenius_at_infinity(&r2),
            Err(Error::RamifiedInfinitePlace)
        ));
        // x^4 - 5x^2 + 5: totally real cyclic quartic.
        let (a, r3) = ring_of_splitting_field(&[p(&[5, 0, -5, 0, 1])], DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(a.degree(), 4);
        // cyclic: one subgroup per divisor; order 4 cyclic group has exactly
        // one element of order 2.
        assert_eq!((0..4).filter(|&s| a.order_of(s) == 2).count(), 1);
        assert_eq!(frobenius_at_infinity(&r3).unwrap(), r3.counit_point());
    }

    #[test]
    fn chebotarev_sanity_x3_minus_2() {
        let a = s3();
        let sweep = chebotarev_sweep(&a, 2, 500);
        assert!(sweep.good_primes > 80);
        let devs = sweep.deviations(6);
        let bound = rat(3, 20); // 0.15
        for d in devs {
            assert!(d <= bound, "class frequency deviates by {d}");
        }
    }
}
