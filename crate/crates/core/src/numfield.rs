//! Number fields Q[x]/(m) and their elements.
//!
//! A `NumberField` owns a monic irreducible modulus; elements carry an
//! `Arc` to their field and a coordinate vector in the power basis of the
//! generator. Degree 1 is allowed (the rationals themselves), which keeps
//! splitting-tower code uniform.

use std::fmt;
use std::sync::Arc;

use num::{One, Zero};

use crate::linalg::{ColumnSolver, Mat};
use crate::poly::{FieldElem, Polynomial, QPoly};
use crate::rat::{rat_str, Rat};
use crate::zassenhaus::is_irreducible_q;

pub struct NumberField {
    modulus: QPoly,
    degree: usize,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.modulus.to_text())
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || self.modulus == other.modulus
    }
}

impl NumberField {
    /// Builds the field, certifying that the modulus is monic irreducible.
    pub fn new(modulus: QPoly) -> Arc<Self> {
        assert!(modulus.is_monic(), "modulus must be monic");
        assert!(
            is_irreducible_q(&modulus),
            "modulus must be irreducible over Q"
        );
        Self::new_certified(modulus)
    }

    /// Builds the field from a modulus already proven irreducible
    /// (splitting towers prove this structurally via squarefree norms).
    pub(crate) fn new_certified(modulus: QPoly) -> Arc<Self> {
        assert!(modulus.is_monic());
        let degree = modulus.deg0();
        assert!(degree >= 1);
        Arc::new(NumberField { modulus, degree })
    }

    /// The rationals as a degree-1 field (modulus x).
    pub fn rationals() -> Arc<Self> {
        Self::new_certified(QPoly::new(vec![Rat::zero(), Rat::one()]))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> NFElement {
        NFElement {
            owner: Arc::clone(self),
            coords: vec![Rat::zero(); self.degree],
        }
    }

    pub fn one(self: &Arc<Self>) -> NFElement {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(self: &Arc<Self>, r: Rat) -> NFElement {
        let mut coords = vec![Rat::zero(); self.degree];
        coords[0] = r;
        NFElement {
            owner: Arc::clone(self),
            coords,
        }
    }

    pub fn generator(self: &Arc<Self>) -> NFElement {
        let mut coords = vec![Rat::zero(); self.degree];
        if self.degree >= 2 {
            coords[1] = Rat::one();
        }
        // degree 1: the generator is the root of x, i.e. 0.
        NFElement {
            owner: Arc::clone(self),
            coords,
        }
    }

    pub fn element(self: &Arc<Self>, coords: Vec<Rat>) -> NFElement {
        assert_eq!(coords.len(), self.degree, "coordinate length mismatch");
        NFElement {
            owner: Arc::clone(self),
            coords,
        }
    }

    /// Element from a polynomial in the generator (reduced mod the modulus).
    pub fn from_poly(self: &Arc<Self>, p: &QPoly) -> NFElement {
        let r = p.rem(&self.modulus);
        let mut coords = r.coeffs().to_vec();
        coords.resize(self.degree, Rat::zero());
        NFElement {
            owner: Arc::clone(self),
            coords,
        }
    }
}

#[derive(Clone)]
pub struct NFElement {
    owner: Arc<NumberField>,
    coords: Vec<Rat>,
}

impl PartialEq for NFElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.owner, &other.owner) || self.owner == other.owner)
            && self.coords == other.coords
    }
}

impl Eq for NFElement {}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => rat_str(c),
                1 => format!("{}a", rat_str(c)),
                _ => format!("{}a^{}", rat_str(c), i),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl NFElement {
    pub fn owner(&self) -> &Arc<NumberField> {
        &self.owner
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    /// The rational value, if this element lies in Q.
    pub fn to_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn as_qpoly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }

    fn same_field(&self, rhs: &Self) {
        assert!(
            Arc::ptr_eq(&self.owner, &rhs.owner) || self.owner == rhs.owner,
            "elements of different number fields"
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(a, b)| a + b)
            .collect();
        NFElement {
            owner: Arc::clone(&self.owner),
            coords,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(a, b)| a - b)
            .collect();
        NFElement {
            owner: Arc::clone(&self.owner),
            coords,
        }
    }

    pub fn neg(&self) -> Self {
        NFElement {
            owner: Arc::clone(&self.owner),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        let prod = self.as_qpoly().mul(&rhs.as_qpoly());
        self.owner.from_poly(&prod)
    }

    pub fn mul_rat(&self, k: &Rat) -> Self {
        NFElement {
            owner: Arc::clone(&self.owner),
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = self.as_qpoly().extended_gcd(self.owner.modulus());
        assert!(g.is_one(), "modulus is irreducible, gcd must be 1");
        Some(self.owner.from_poly(&s))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.owner.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Minimal polynomial over Q: monic, found as the first linear
    /// dependence among the powers of the element.
    pub fn min_poly(&self) -> QPoly {
        let n = self.owner.degree();
        let mut powers: Vec<NFElement> = vec![self.owner.one()];
        for _ in 0..n {
            powers.push(powers.last().unwrap().mul(self));
        }
        for k in 1..=n {
            let cols: Vec<Vec<Rat>> = (0..k).map(|i| powers[i].coords.clone()).collect();
            let a = Mat::from_rows(cols).transpose();
            let solver = ColumnSolver::new(&a);
            if let Some(sol) = solver.solve(&powers[k].coords) {
                // x^k - sum sol_i x^i
                let mut cs: Vec<Rat> = sol.iter().map(|c| -c).collect();
                cs.push(Rat::one());
                return QPoly::new(cs);
            }
        }
        unreachable!("element of degree-n field has degree <= n")
    }
}

impl FieldElem for NFElement {
    fn zero_like(&self) -> Self {
        self.owner.zero()
    }
    fn one_like(&self) -> Self {
        self.owner.one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn inv_ref(&self) -> Option<Self> {
        self.inv()
    }
}

pub type NFPoly = Polynomial<NFElement>;

/// Lifts a rational polynomial into F[x].
pub fn qpoly_to_nf(f: &QPoly, field: &Arc<NumberField>) -> NFPoly {
    f.map_coeffs(|c| field.from_rat(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn sqrt2_field() -> Arc<NumberField> {
        NumberField::new(QPoly::from_i64(&[-2, 0, 1]))
    }

    #[test]
    fn arithmetic_in_sqrt2() {
        let f = sqrt2_field();
        let s = f.generator();
        assert_eq!(s.mul(&s), f.from_rat(rat_int(2)));
        let x = f.element(vec![rat_int(1), rat_int(1)]); // 1 + sqrt2
        let inv = x.inv().unwrap();
        assert_eq!(x.mul(&inv), f.one());
        assert_eq!(inv, f.element(vec![rat_int(-1), rat_int(1)]));
    }

    #[test]
    fn rationals_as_degree_one() {
        let q = NumberField::rationals();
        let two = q.from_rat(rat_int(2));
        assert_eq!(two.mul(&two), q.from_rat(rat_int(4)));
        assert_eq!(two.inv().unwrap(), q.from_rat(rat(1, 2)));
        assert_eq!(q.generator(), q.zero());
    }

    #[test]
    fn min_poly_of_generator_and_sums() {
        let f = NumberField::new(QPoly::from_i64(&[-2, 0, 0, 1])); // Q(cbrt2)
        let t = f.generator();
        assert_eq!(t.min_poly(), QPoly::from_i64(&[-2, 0, 0, 1]));
        let sq = t.mul(&t);
        assert_eq!(sq.min_poly(), QPoly::from_i64(&[-4, 0, 0, 1])); // (t^2)^3 = 4
        assert_eq!(f.from_rat(rat_int(5)).min_poly(), QPoly::from_i64(&[-5, 1]));
    }

    #[test]
    fn nf_polynomials() {
        let f = sqrt2_field();
        let s = f.generator();
        // (x - sqrt2)(x + sqrt2) = x^2 - 2
        let a = NFPoly::x_minus(&s);
        let b = NFPoly::x_minus(&s.neg());
        let prod = a.mul(&b);
        assert_eq!(prod, qpoly_to_nf(&QPoly::from_i64(&[-2, 0, 1]), &f));
    }
}
