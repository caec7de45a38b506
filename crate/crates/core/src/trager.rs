//! Resultants, norms, and factorization over number fields.
//!
//! Factoring over an extension reduces to the rational kernel by the norm
//! trick: shift by an integer multiple of the generator until the norm is
//! squarefree, factor the norm over Q, and pull factors back with gcds over
//! the field. Norms are computed exactly by evaluation and Lagrange
//! interpolation, never by expanding a symbolic Sylvester matrix.

use std::sync::Arc;

use num::Zero;

use crate::numfield::{qpoly_to_nf, NFElement, NFPoly, NumberField};
use crate::poly::{squarefree_decomposition, FieldElem, Polynomial, QPoly};
use crate::rat::{rat_int, Rat};
use crate::zassenhaus::factor_over_q;

/// Resultant of two polynomials over any exact field, via the Euclidean
/// recursion. Agrees with the Sylvester-matrix determinant.
pub fn resultant<C: FieldElem>(f: &Polynomial<C>, g: &Polynomial<C>) -> C {
    let sample = f
        .coeffs()
        .first()
        .or_else(|| g.coeffs().first())
        .expect("resultant of two zero polynomials");
    let one = sample.one_like();
    if f.is_zero() || g.is_zero() {
        return sample.zero_like();
    }
    let mut f = f.clone();
    let mut g = g.clone();
    let mut acc = one;
    loop {
        let m = f.degree().unwrap();
        let n = g.degree().unwrap();
        if m == 0 {
            // res(c, g) = c^deg(g)
            let c = f.leading().unwrap().clone();
            return acc.mul_ref(&pow_elem(&c, n));
        }
        if n == 0 {
            let c = g.leading().unwrap().clone();
            return acc.mul_ref(&pow_elem(&c, m));
        }
        if m < n {
            if m * n % 2 == 1 {
                acc = acc.neg_ref();
            }
            std::mem::swap(&mut f, &mut g);
            continue;
        }
        // deg f >= deg g >= 1: replace f by f mod g.
        let r = f.rem(&g);
        if r.is_zero() {
            return sample.zero_like();
        }
        let d = r.degree().unwrap();
        // res(f, g) = (-1)^{mn} lc(g)^{m-d} res(g, r)
        if m * n % 2 == 1 {
            acc = acc.neg_ref();
        }
        acc = acc.mul_ref(&pow_elem(g.leading().unwrap(), m - d));
        f = g;
        g = r;
    }
}

fn pow_elem<C: FieldElem>(c: &C, mut e: usize) -> C {
    let mut acc = c.one_like();
    let mut base = c.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_ref(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul_ref(&base);
        }
    }
    acc
}

/// Norm of `f(x - s*theta)` down to Q: the rational polynomial
/// `prod_sigma f^sigma(x - s*sigma(theta))`, degree `[F:Q] * deg f`.
///
/// Computed pointwise as `Res_y(m(y), f_y(x0 - s*y))` at `deg+1` rational
/// points, then interpolated.
pub fn norm_shifted(field: &Arc<NumberField>, f: &NFPoly, s: i64) -> QPoly {
    let d = field.degree();
    let n = f.degree().expect("norm of zero polynomial");
    let target_deg = d * n;
    // Coefficients of f as rational polynomials in the generator.
    let coeff_polys: Vec<QPoly> = f
        .coeffs()
        .iter()
        .map(|c| QPoly::new(c.coords().to_vec()))
        .collect();
    let m = field.modulus();
    let mut xs = Vec::with_capacity(target_deg + 1);
    let mut ys = Vec::with_capacity(target_deg + 1);
    let mut k: i64 = 0;
    while xs.len() <= target_deg {
        let x0 = rat_int(k);
        // P(y) = f_y(x0 - s*y) by Horner in (x0 - s*y).
        let lin = QPoly::new(vec![x0.clone(), rat_int(-s)]);
        let mut p = QPoly::zero();
        for c in coeff_polys.iter().rev() {
            p = p.mul(&lin).add(c);
        }
        ys.push(resultant(m, &p));
        xs.push(x0);
        k = if k > 0 { -k } else { -k + 1 };
    }
    lagrange_interpolate(&xs, &ys)
}

/// Exact Lagrange interpolation through distinct rational points.
pub fn lagrange_interpolate(xs: &[Rat], ys: &[Rat]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, yi) in ys.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut term = QPoly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let inv = (&xs[i] - xj).recip();
            term = term.mul(&QPoly::new(vec![xj * &inv * rat_int(-1), inv]));
        }
        acc = acc.add(&term);
    }
    acc
}

/// `input = unit * prod factor_i^mult_i`, factors monic irreducible over F.
#[derive(Clone, Debug)]
pub struct NFFactorization {
    pub unit: NFElement,
    pub factors: Vec<(NFPoly, usize)>,
}

impl NFFactorization {
    pub fn expand(&self) -> NFPoly {
        let mut acc = NFPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }
}

/// Factors a nonzero polynomial into monic irreducibles over the field.
pub fn factor_over_nf(f: &NFPoly, field: &Arc<NumberField>) -> NFFactorization {
    assert!(!f.is_zero(), "factor_over_nf: zero polynomial");
    let unit = f.leading().unwrap().clone();
    if f.deg0() == 0 {
        return NFFactorization {
            unit,
            factors: vec![],
        };
    }
    // Degree-1 base field: delegate to the rational kernel.
    if field.degree() == 1 {
        let q = f.map_coeffs(|c| c.to_rat().unwrap());
        let fac = factor_over_q(&q);
        return NFFactorization {
            unit,
            factors: fac
                .factors
                .into_iter()
                .map(|(g, m)| (qpoly_to_nf(&g, field), m))
                .collect(),
        };
    }
    let mut factors: Vec<(NFPoly, usize)> = Vec::new();
    for (sf, mult) in squarefree_decomposition(f) {
        for g in trager_squarefree(&sf, field) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| cmp_nf_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    NFFactorization { unit, factors }
}

fn cmp_nf_poly(a: &NFPoly, b: &NFPoly) -> std::cmp::Ordering {
    let key = |p: &NFPoly| -> Vec<Vec<Rat>> {
        p.coeffs().iter().map(|c| c.coords().to_vec()).collect()
    };
    a.deg0().cmp(&b.deg0()).then_with(|| key(a).cmp(&key(b)))
}

/// Trager's algorithm on a monic squarefree polynomial of degree >= 1.
fn trager_squarefree(f: &NFPoly, field: &Arc<NumberField>) -> Vec<NFPoly> {
    if f.deg0() == 1 {
        return vec![f.clone()];
    }
    // Least shift s >= 0 making the norm squarefree.
    let mut s = 0i64;
    let norm = loop {
        let n = norm_shifted(field, f, s);
        if n.is_squarefree() {
            break n;
        }
        s += 1;
    };
    let norm_factors = factor_over_q(&norm);
    if norm_factors.factors.len() == 1 {
        return vec![f.monic()];
    }
    let theta = field.generator();
    // x + s*theta
    let shift = NFPoly::new(vec![theta.mul_rat(&rat_int(s)), field.one()]);
    let mut out = Vec::new();
    for (h, _) in &norm_factors.factors {
        let h_shifted = qpoly_to_nf(h, field).compose(&shift);
        let g = f.gcd(&h_shifted);
        if g.deg0() >= 1 {
            out.push(g.monic());
        }
    }
    let product = out.iter().fold(NFPoly::constant(field.one()), |a, b| a.mul(b));
    assert_eq!(product, f.monic(), "Trager factors must multiply back");
    out.sort_by(cmp_nf_poly);
    out
}

/// All roots of `f` lying in the field (from its linear factors).
pub fn roots_over_nf(f: &NFPoly, field: &Arc<NumberField>) -> Vec<NFElement> {
    let mut roots = Vec::new();
    for (g, _) in factor_over_nf(f, field).factors {
        if g.deg0() == 1 {
            roots.push(g.coeffs()[0].neg());
        }
    }
    roots.sort_by(|a, b| a.coords().cmp(b.coords()));
    roots
}

/// Roots in the field of a rational polynomial.
pub fn roots_of_qpoly_in(f: &QPoly, field: &Arc<NumberField>) -> Vec<NFElement> {
    roots_over_nf(&qpoly_to_nf(f, field), field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::rat::rat;
    use num::One;

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_i64(cs)
    }

    /// Independent oracle: Sylvester matrix determinant.
    fn sylvester_resultant(f: &QPoly, g: &QPoly) -> Rat {
        let m = f.deg0();
        let n = g.deg0();
        if m + n == 0 {
            return Rat::one();
        }
        let size = m + n;
        let mut mat = Mat::zeros(size, size, &Rat::zero());
        for row in 0..n {
            for (i, c) in f.coeffs().iter().enumerate() {
                *mat.at_mut(row, row + (m - i)) = c.clone();
            }
        }
        for row in 0..m {
            for (i, c) in g.coeffs().iter().enumerate() {
                *mat.at_mut(n + row, row + (n - i)) = c.clone();
            }
        }
        mat.det()
    }

    #[test]
    fn resultant_matches_sylvester() {
        let cases = [
            (p(&[-2, 0, 1]), p(&[-3, 0, 1])),
            (p(&[3, -5, 1]), p(&[-5, 2])),
            (p(&[1, 2, 3, 4]), p(&[-1, 0, 2])),
            (p(&[5, 0, -1, 0, 1]), p(&[7, 1, 1])),
        ];
        for (f, g) in cases {
            assert_eq!(resultant(&f, &g), sylvester_resultant(&f, &g));
            assert_eq!(resultant(&g, &f), sylvester_resultant(&g, &f));
        }
    }

    #[test]
    fn resultant_spec_examples() {
        // disjoint quadratics
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])), rat_int(1));
        // linear case: res(x - a, g) = g(a)
        let g = p(&[1, 2, 3]);
        let a = rat(5, 2);
        let f = QPoly::new(vec![-a.clone(), Rat::one()]);
        assert_eq!(resultant(&f, &g), g.eval(&a));
        // shared root
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[1, 0, 1])), rat_int(0));
    }

    #[test]
    fn resultant_antisymmetry() {
        let f = p(&[1, 2, 0, 1]);
        let g = p(&[-4, 1, 1]);
        let sign = if f.deg0() * g.deg0() % 2 == 1 { -1 } else { 1 };
        assert_eq!(resultant(&f, &g), resultant(&g, &f).mul_ref(&rat_int(sign)));
    }

    #[test]
    fn factor_x2_minus_2_over_sqrt2() {
        let field = NumberField::new(p(&[-2, 0, 1]));
        let f = qpoly_to_nf(&p(&[-2, 0, 1]), &field);
        let fac = factor_over_nf(&f, &field);
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(g, _)| g.deg0() == 1));
        assert_eq!(fac.expand(), f);
        let roots = roots_over_nf(&f, &field);
        let s = field.generator();
        assert_eq!(roots, vec![s.neg(), s.clone()]);
    }

    #[test]
    fn cyclotomic_irreducible_over_cbrt2() {
        // x^2 + x + 1 stays irreducible over Q(cbrt2): no element of a small
        // search grid squares to -3 (the discriminant), and the factorization
        // kernel agrees.
        let field = NumberField::new(p(&[-2, 0, 0, 1]));
        let minus3 = field.from_rat(rat_int(-3));
        let grid: Vec<Rat> = (-6..=6)
            .flat_map(|n| [rat_int(n), rat(n, 2), rat(n, 3)])
            .collect();
        for a in &grid {
            for b in &grid {
                for c in &grid {
                    let y = field.element(vec![a.clone(), b.clone(), c.clone()]);
                    assert_ne!(y.mul(&y), minus3, "-3 must not be a square");
                }
            }
        }
        let f = qpoly_to_nf(&p(&[1, 1, 1]), &field);
        let fac = factor_over_nf(&f, &field);
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].0.deg0(), 2);
    }

    #[test]
    fn field_generated_by_root_has_linear_factor() {
        for poly in [p(&[-2, 0, 0, 1]), p(&[-2, 0, 1]), p(&[1, 0, 0, 0, 1])] {
            let field = NumberField::new(poly.clone());
            let f = qpoly_to_nf(&poly, &field);
            let fac = factor_over_nf(&f, &field);
            assert!(
                fac.factors.iter().any(|(g, _)| g.deg0() == 1),
                "field generated by a root must expose a linear factor"
            );
        }
    }

    #[test]
    fn cbrt2_partial_split() {
        // Over Q(cbrt2), x^3 - 2 = (x - t)(x^2 + t x + t^2)
        let field = NumberField::new(p(&[-2, 0, 0, 1]));
        let f = qpoly_to_nf(&p(&[-2, 0, 0, 1]), &field);
        let fac = factor_over_nf(&f, &field);
        let degs: Vec<usize> = fac.factors.iter().map(|(g, _)| g.deg0()).collect();
        assert_eq!(degs, vec![1, 2]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn norm_of_linear_is_minpoly_style() {
        // norm of (x - theta) over Q(sqrt2) is x^2 - 2
        let field = NumberField::new(p(&[-2, 0, 1]));
        let f = NFPoly::x_minus(&field.generator());
        assert_eq!(norm_shifted(&field, &f, 0), p(&[-2, 0, 1]));
    }

    #[test]
    fn interpolation_round_trip() {
        let f = p(&[1, -3, 0, 2]);
        let xs: Vec<Rat> = (0..4).map(rat_int).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(lagrange_interpolate(&xs, &ys), f);
    }
}
