//! Subgroups, fixed fields, and relative Galois extensions inside an
//! ambient field.
//!
//! Everything relative is reduced to finite group theory: a base field K is
//! the fixed field of a subgroup H', an extension L/K is a pair H <= H' with
//! H normal in H', and Gal(L/K) is the quotient H'/H acting through coset
//! representatives.

use std::sync::Arc;

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{ColumnSolver, Mat};
use crate::numfield::{NFElement, NumberField};
use crate::poly::QPoly;
use crate::rat::{rat_int, Rat};
use crate::splitting::AmbientGaloisField;

/// A subgroup of the ambient automorphism group, stored as a sorted,
/// closure-verified index set.
#[derive(Clone)]
pub struct Subgroup {
    ambient: Arc<AmbientGaloisField>,
    members: Vec<usize>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Subgroup {
    pub fn new(ambient: Arc<AmbientGaloisField>, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if !members.contains(&ambient.identity()) {
            return Err(Error::InconsistentDescent("subgroup must contain identity"));
        }
        for &a in &members {
            if a >= ambient.group_order() {
                return Err(Error::InconsistentDescent("subgroup index out of range"));
            }
            if !members.contains(&ambient.inv(a)) {
                return Err(Error::InconsistentDescent("subgroup not closed under inverse"));
            }
            for &b in &members {
                if !members.contains(&ambient.compose(a, b)) {
                    return Err(Error::InconsistentDescent("subgroup not closed under product"));
                }
            }
        }
        Ok(Subgroup { ambient, members })
    }

    pub fn generated(ambient: Arc<AmbientGaloisField>, gens: &[usize]) -> Self {
        let mut members = vec![ambient.identity()];
        let mut frontier = vec![ambient.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [ambient.compose(x, g), ambient.compose(g, x)] {
                    if !members.contains(&y) {
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        members.sort_unstable();
        Subgroup { ambient, members }
    }

    pub fn trivial(ambient: Arc<AmbientGaloisField>) -> Self {
        let id = ambient.identity();
        Subgroup {
            ambient,
            members: vec![id],
        }
    }

    pub fn whole(ambient: Arc<AmbientGaloisField>) -> Self {
        let members = (0..ambient.group_order()).collect();
        Subgroup { ambient, members }
    }

    /// Stabilizer of a set of elements: all automorphisms fixing each one.
    pub fn fixing(ambient: Arc<AmbientGaloisField>, elements: &[NFElement]) -> Self {
        let members = (0..ambient.group_order())
            .filter(|&s| elements.iter().all(|x| ambient.apply(s, x) == *x))
            .collect();
        Subgroup { ambient, members }
    }

    pub fn ambient(&self) -> &Arc<AmbientGaloisField> {
        &self.ambient
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.ambient.group_order() / self.order()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn is_normal_in(&self, other: &Subgroup) -> bool {
        other.members.iter().all(|&g| {
            self.members
                .iter()
                .all(|&h| self.contains(self.ambient.compose(self.ambient.compose(g, h), self.ambient.inv(g))))
        })
    }

    /// Center of the ambient group.
    pub fn center(ambient: Arc<AmbientGaloisField>) -> Self {
        let n = ambient.group_order();
        let members = (0..n)
            .filter(|&z| (0..n).all(|g| ambient.compose(z, g) == ambient.compose(g, z)))
            .collect();
        Subgroup { ambient, members }
    }

    pub fn centralizer_of(ambient: Arc<AmbientGaloisField>, t: usize) -> Self {
        let n = ambient.group_order();
        let members = (0..n)
            .filter(|&g| ambient.compose(g, t) == ambient.compose(t, g))
            .collect();
        Subgroup { ambient, members }
    }
}

/// Brute-force enumeration of all subgroups (workable for |G| <= 24).
pub fn all_subgroups(ambient: &Arc<AmbientGaloisField>) -> Vec<Subgroup> {
    let mut found: Vec<Vec<usize>> = vec![vec![ambient.identity()]];
    let mut frontier = found.clone();
    while let Some(base) = frontier.pop() {
        for g in 0..ambient.group_order() {
            if base.contains(&g) {
                continue;
            }
            let mut gens = base.clone();
            gens.push(g);
            let sub = Subgroup::generated(Arc::clone(ambient), &gens);
            if !found.contains(&sub.members) {
                found.push(sub.members.clone());
                frontier.push(sub.members);
            }
        }
    }
    found.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    found
        .into_iter()
        .map(|members| Subgroup {
            ambient: Arc::clone(ambient),
            members,
        })
        .collect()
}

/// A Q-basis of the subfield fixed by a subgroup, with a primitive element.
#[derive(Clone)]
pub struct FixedFieldBasis {
    subgroup: Subgroup,
    basis: Vec<NFElement>,
    primitive: NFElement,
    min_poly: QPoly,
    abstract_solver: Arc<ColumnSolver<Rat>>,
}

impl std::fmt::Debug for FixedFieldBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FixedFieldBasis(dim {}, min_poly {})",
            self.basis.len(),
            self.min_poly.to_text()
        )
    }
}

impl FixedFieldBasis {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn ambient(&self) -> &Arc<AmbientGaloisField> {
        self.subgroup.ambient()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[NFElement] {
        &self.basis
    }

    pub fn primitive(&self) -> &NFElement {
        &self.primitive
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.min_poly
    }

    /// True when `x` lies in this subfield.
    pub fn contains(&self, x: &NFElement) -> bool {
        self.subgroup
            .members()
            .iter()
            .all(|&s| self.ambient().apply(s, x) == *x)
    }

    /// Coordinates of `x` in the power basis of the primitive element
    /// (rational coefficients); None when `x` is outside the subfield.
    pub fn power_coords(&self, x: &NFElement) -> Option<Vec<Rat>> {
        self.abstract_solver.solve(x.coords())
    }

    /// The same subfield as a standalone number field Q[y]/(min_poly).
    pub fn abstract_field(&self) -> Arc<NumberField> {
        NumberField::new(self.min_poly.clone())
    }

    /// Moves `x` into the abstract copy of the subfield.
    pub fn to_abstract(&self, x: &NFElement, abstract_field: &Arc<NumberField>) -> Option<NFElement> {
        self.power_coords(x).map(|cs| {
            let mut coords = cs;
            coords.resize(abstract_field.degree(), Rat::zero());
            abstract_field.element(coords)
        })
    }
}

/// Computes the fixed field of a subgroup: an exact kernel solve for the
/// basis, then a deterministic search for a primitive element.
pub fn fixed_field(subgroup: &Subgroup) -> FixedFieldBasis {
    let ambient = subgroup.ambient();
    let n = ambient.degree();
    let field = ambient.field();
    let dim = subgroup.index();

    let basis: Vec<NFElement> = if subgroup.order() == 1 {
        (0..n)
            .map(|i| {
                let mut c = vec![Rat::zero(); n];
                c[i] = num::One::one();
                field.element(c)
            })
            .collect()
    } else {
        // Kernel of stacked (M_sigma - I) over Q.
        let rows_per = n;
        let sigmas: Vec<usize> = subgroup.members().iter().copied().filter(|&s| s != 0).collect();
        let mut m = Mat::zeros(rows_per * sigmas.len(), n, &Rat::zero());
        for (bi, &s) in sigmas.iter().enumerate() {
            for c in 0..n {
                let mut e = vec![Rat::zero(); n];
                e[c] = num::One::one();
                let img = ambient.apply(s, &field.element(e));
                for r in 0..n {
                    let mut v = img.coords()[r].clone();
                    if r == c {
                        v = v - rat_int(1);
                    }
                    *m.at_mut(bi * rows_per + r, c) = v;
                }
            }
        }
        m.kernel_basis()
            .into_iter()
            .map(|v| field.element(v))
            .collect()
    };
    assert_eq!(basis.len(), dim, "fixed field dimension must equal the index");

    // Deterministic primitive element search: small non-negative integer
    // combinations of the basis, accepted when the orbit has full size.
    let orbit_size = |x: &NFElement| -> usize {
        let mut imgs: Vec<Vec<Rat>> = (0..ambient.group_order())
            .map(|s| ambient.apply(s, x).coords().to_vec())
            .collect();
        imgs.sort();
        imgs.dedup();
        imgs.len()
    };
    let mut primitive = None;
    'search: for bound in 1i64..=8 {
        let mut weights = vec![0i64; dim];
        loop {
            if weights.iter().any(|&w| w == bound) {
                let cand = basis.iter().zip(&weights).fold(field.zero(), |acc, (b, &w)| {
                    acc.add(&b.mul_rat(&rat_int(w)))
                });
                if orbit_size(&cand) == dim {
                    primitive = Some(cand);
                    break 'search;
                }
            }
            // odometer over [0, bound]^dim
            let mut i = 0;
            loop {
                if i == dim {
                    break;
                }
                weights[i] += 1;
                if weights[i] > bound {
                    weights[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            if i == dim {
                break;
            }
        }
    }
    let primitive = primitive.expect("a primitive element exists in a small integer box");
    let min_poly = primitive.min_poly();
    assert_eq!(min_poly.deg0(), dim);

    // Solver expressing ambient elements in the primitive power basis.
    let mut cols = Vec::with_capacity(dim);
    let mut acc = field.one();
    for _ in 0..dim {
        cols.push(acc.coords().to_vec());
        acc = acc.mul(&primitive);
    }
    let a = Mat::from_rows(cols).transpose();
    let abstract_solver = Arc::new(ColumnSolver::new(&a));

    FixedFieldBasis {
        subgroup: subgroup.clone(),
        basis,
        primitive,
        min_poly,
        abstract_solver,
    }
}

/// A pair of nested subgroups H normal in H' presenting L = N^H over
/// K = N^H', with Gal(L/K) = H'/H via least-index coset representatives.
pub struct GaloisSubextension {
    inner: Subgroup,
    outer: Subgroup,
    coset_reps: Vec<usize>,
    coset_index: Vec<Option<usize>>,
    l_field: FixedFieldBasis,
    k_field: FixedFieldBasis,
    k_abs: Arc<NumberField>,
    k_basis_abstract: Vec<NFElement>,
    rel: RelativeBasis,
}

impl std::fmt::Debug for GaloisSubextension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GaloisSubextension([L:K] = {}, H order {}, H' order {})",
            self.coset_reps.len(),
            self.inner.order(),
            self.outer.order()
        )
    }
}

impl GaloisSubextension {
    pub fn new(inner: Subgroup, outer: Subgroup) -> Result<Self> {
        if !Arc::ptr_eq(inner.ambient(), outer.ambient()) {
            return Err(Error::AmbientMismatch);
        }
        if !inner.is_subgroup_of(&outer) {
            return Err(Error::InconsistentDescent("H must be contained in H'"));
        }
        if !inner.is_normal_in(&outer) {
            return Err(Error::InconsistentDescent("H must be normal in H'"));
        }
        let ambient = Arc::clone(inner.ambient());
        let n = ambient.group_order();
        let mut coset_reps = Vec::new();
        let mut coset_index = vec![None; n];
        for &s in outer.members() {
            if coset_index[s].is_some() {
                continue;
            }
            let rep_pos = coset_reps.len();
            coset_reps.push(s);
            for &h in inner.members() {
                coset_index[ambient.compose(s, h)] = Some(rep_pos);
            }
        }
        let l_field = fixed_field(&inner);
        let k_field = fixed_field(&outer);
        assert_eq!(coset_reps.len() * k_field.dim(), l_field.dim());
        let k_abs = k_field.abstract_field();
        let k_basis_abstract = k_field
            .basis()
            .iter()
            .map(|b| k_field.to_abstract(b, &k_abs).unwrap())
            .collect();
        let rel = RelativeBasis::new(&l_field, &k_field);
        Ok(GaloisSubextension {
            inner,
            outer,
            coset_reps,
            coset_index,
            l_field,
            k_field,
            k_abs,
            k_basis_abstract,
            rel,
        })
    }

    /// The full extension N/Q of an ambient field.
    pub fn whole(ambient: &Arc<AmbientGaloisField>) -> Self {
        Self::new(
            Subgroup::trivial(Arc::clone(ambient)),
            Subgroup::whole(Arc::clone(ambient)),
        )
        .unwrap()
    }

    pub fn ambient(&self) -> &Arc<AmbientGaloisField> {
        self.inner.ambient()
    }

    pub fn inner(&self) -> &Subgroup {
        &self.inner
    }

    pub fn outer(&self) -> &Subgroup {
        &self.outer
    }

    pub fn l_field(&self) -> &FixedFieldBasis {
        &self.l_field
    }

    pub fn k_field(&self) -> &FixedFieldBasis {
        &self.k_field
    }

    /// Order of the relative group Gal(L/K) = [L:K].
    pub fn group_size(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.coset_reps
    }

    /// Coset of a global automorphism (None when outside H').
    pub fn coset_of(&self, sigma: usize) -> Option<usize> {
        self.coset_index[sigma]
    }

    /// Quotient-group composition on coset indices.
    pub fn qcompose(&self, i: usize, j: usize) -> usize {
        let s = self
            .ambient()
            .compose(self.coset_reps[i], self.coset_reps[j]);
        self.coset_index[s].expect("H' is closed")
    }

    pub fn qinv(&self, i: usize) -> usize {
        let s = self.ambient().inv(self.coset_reps[i]);
        self.coset_index[s].expect("H' is closed")
    }

    pub fn qidentity(&self) -> usize {
        0
    }

    /// Applies coset `i` to an element of L (well-defined since H fixes L).
    pub fn act(&self, i: usize, x: &NFElement) -> NFElement {
        debug_assert!(self.l_field.contains(x));
        self.ambient().apply(self.coset_reps[i], x)
    }

    /// Coordinates of `x` in the K-power basis of L's primitive element.
    pub fn rel_coords(&self, x: &NFElement) -> Option<Vec<NFElement>> {
        self.rel.rel_coords(x)
    }

    pub fn rel_degree(&self) -> usize {
        self.rel.rel_deg
    }

    /// The base field K as a standalone number field.
    pub fn k_abs(&self) -> &Arc<NumberField> {
        &self.k_abs
    }

    /// Same as `rel_coords`, but coefficients land in the standalone copy
    /// of K (fast scalars: degree [K:Q] instead of [N:Q]).
    pub fn rel_coords_abstract(&self, x: &NFElement) -> Option<Vec<NFElement>> {
        let z = self.rel.solver.solve(x.coords())?;
        let k_dim = self.k_field.dim();
        let mut out = Vec::with_capacity(self.rel.rel_deg);
        for t in 0..self.rel.rel_deg {
            let mut c = self.k_abs.zero();
            for u in 0..k_dim {
                c = c.add(&self.k_basis_abstract[u].mul_rat(&z[t * k_dim + u]));
            }
            out.push(c);
        }
        Some(out)
    }

    /// Moves a K-element (inside N) to the standalone copy of K.
    pub fn k_to_abstract(&self, x: &NFElement) -> Option<NFElement> {
        self.k_field.to_abstract(x, &self.k_abs)
    }

    /// Moves an element of the standalone K back into the ambient field.
    pub fn k_from_abstract(&self, x: &NFElement) -> NFElement {
        let field = self.ambient().field();
        let mut acc = field.zero();
        let mut pw = field.one();
        for c in x.coords() {
            acc = acc.add(&pw.mul_rat(c));
            pw = pw.mul(self.k_field.primitive());
        }
        acc
    }

    /// A small generating set of the relative group, as coset indices.
    pub fn quotient_generators(&self) -> Vec<usize> {
        let m = self.group_size();
        let mut gens: Vec<usize> = Vec::new();
        let mut span = vec![false; m];
        span[0] = true;
        let mut span_count = 1;
        for cand in 1..m {
            if span[cand] {
                continue;
            }
            gens.push(cand);
            // close the span under the new generator
            let mut changed = true;
            while changed {
                changed = false;
                for a in 0..m {
                    if !span[a] {
                        continue;
                    }
                    for &g in &gens {
                        for b in [self.qcompose(a, g), self.qcompose(g, a)] {
                            if !span[b] {
                                span[b] = true;
                                span_count += 1;
                                changed = true;
                            }
                        }
                    }
                }
            }
            if span_count == m {
                break;
            }
        }
        gens
    }

    /// Conjugacy classes of the relative group (coset indices).
    pub fn quotient_classes(&self) -> Vec<Vec<usize>> {
        let m = self.group_size();
        let mut seen = vec![false; m];
        let mut classes = Vec::new();
        for i in 0..m {
            if seen[i] {
                continue;
            }
            let mut class: Vec<usize> = (0..m)
                .map(|g| self.qcompose(self.qcompose(g, i), self.qinv(g)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes.sort_by_key(|c| c[0]);
        classes
    }

    /// Center of the relative group (coset indices).
    pub fn quotient_center(&self) -> Vec<usize> {
        let m = self.group_size();
        (0..m)
            .filter(|&z| (0..m).all(|g| self.qcompose(z, g) == self.qcompose(g, z)))
            .collect()
    }

    pub fn quotient_is_abelian(&self) -> bool {
        self.quotient_center().len() == self.group_size()
    }

    /// All K-embeddings of L into the ambient field (one per coset).
    pub fn embeddings(&self) -> Vec<SubfieldEmbedding> {
        (0..self.group_size())
            .map(|i| SubfieldEmbedding::new(self, self.act(i, self.l_field.primitive())))
            .collect()
    }

    /// The unique coset `sigma` of Gal(L/K) with `phi . sigma = tau . phi`
    /// on L (tau a global automorphism index fixing K).
    pub fn restrict_automorphism(&self, tau: usize, phi: &SubfieldEmbedding) -> Result<usize> {
        if !self.outer.contains(tau) {
            return Err(Error::NotAnEmbedding);
        }
        let target = self.ambient().apply(tau, phi.primitive_image());
        let mut answer = None;
        for i in 0..self.group_size() {
            let moved = phi.apply(self, &self.act(i, self.l_field.primitive()));
            if moved == target {
                if answer.is_some() {
                    return Err(Error::InconsistentDescent("restriction is not unique"));
                }
                answer = Some(i);
            }
        }
        answer.ok_or(Error::InconsistentDescent("restriction does not exist"))
    }
}

/// A K-embedding of L into the ambient field, determined by the image of
/// L's primitive element (a conjugate of it).
#[derive(Clone, Debug)]
pub struct SubfieldEmbedding {
    powers: Vec<NFElement>,
}

impl SubfieldEmbedding {
    pub fn new(ext: &GaloisSubextension, image: NFElement) -> Self {
        let mut powers = Vec::with_capacity(ext.rel_degree());
        let mut acc = image.owner().one();
        for _ in 0..ext.rel_degree() {
            powers.push(acc.clone());
            acc = acc.mul(&image);
        }
        SubfieldEmbedding { powers }
    }

    pub fn primitive_image(&self) -> &NFElement {
        if self.powers.len() >= 2 {
            &self.powers[1]
        } else {
            &self.powers[0]
        }
    }

    /// Applies the embedding to `x in L`: write `x = sum c_t p^t` with
    /// `c_t in K` fixed by the embedding, and substitute the image of p.
    pub fn apply(&self, ext: &GaloisSubextension, x: &NFElement) -> NFElement {
        let coords = ext.rel_coords(x).expect("element must lie in L");
        let mut acc = x.owner().zero();
        for (c, pw) in coords.iter().zip(&self.powers) {
            acc = acc.add(&c.mul(pw));
        }
        acc
    }
}

/// Writes elements of L in the K-power basis of L's primitive element.
struct RelativeBasis {
    rel_deg: usize,
    solver: ColumnSolver<Rat>,
    k_basis_products: Vec<NFElement>,
}

impl RelativeBasis {
    fn new(l: &FixedFieldBasis, k: &FixedFieldBasis) -> Self {
        let field = l.ambient().field();
        let rel_deg = l.dim() / k.dim();
        // Columns (t major, k-basis minor): coords(k_u * p^t).
        let mut cols = Vec::with_capacity(rel_deg * k.dim());
        let mut products = Vec::with_capacity(rel_deg * k.dim());
        let mut p_power = field.one();
        for _ in 0..rel_deg {
            for ku in k.basis() {
                let prod = ku.mul(&p_power);
                cols.push(prod.coords().to_vec());
                products.push(prod);
            }
            p_power = p_power.mul(l.primitive());
        }
        let a = Mat::from_rows(cols).transpose();
        RelativeBasis {
            rel_deg,
            solver: ColumnSolver::new(&a),
            k_basis_products: products,
        }
    }

    fn rel_coords(&self, x: &NFElement) -> Option<Vec<NFElement>> {
        let z = self.solver.solve(x.coords())?;
        let k_dim = self.k_basis_products.len() / self.rel_deg;
        let field = x.owner();
        let mut out = Vec::with_capacity(self.rel_deg);
        for t in 0..self.rel_deg {
            let mut c = field.zero();
            for u in 0..k_dim {
                // k_basis_products[t * k_dim + u] = k_u * p^t; we need the
                // bare k_u part, which is products at t = 0.
                let ku = &self.k_basis_products[u];
                c = c.add(&ku.mul_rat(&z[t * k_dim + u]));
            }
            out.push(c);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitting::{splitting_field, DEFAULT_DEGREE_CAP};

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_i64(cs)
    }

    fn s3_ambient() -> Arc<AmbientGaloisField> {
        Arc::new(splitting_field(&[p(&[-2, 0, 0, 1])], DEFAULT_DEGREE_CAP).unwrap())
    }

    #[test]
    fn fixed_field_extremes() {
        let a = s3_ambient();
        let whole = fixed_field(&Subgroup::whole(Arc::clone(&a)));
        assert_eq!(whole.dim(), 1);
        assert!(whole.primitive().is_rational());
        let triv = fixed_field(&Subgroup::trivial(Arc::clone(&a)));
        assert_eq!(triv.dim(), 6);
        assert_eq!(triv.min_poly().deg0(), 6);
    }

    #[test]
    fn a3_fixed_field_is_quadratic_disc_minus3() {
        let a = s3_ambient();
        // A3 = unique subgroup of order 3.
        let a3 = all_subgroups(&a)
            .into_iter()
            .find(|s| s.order() == 3)
            .unwrap();
        let ff = fixed_field(&a3);
        assert_eq!(ff.dim(), 2);
        let mp = ff.min_poly();
        assert_eq!(mp.deg0(), 2);
        // The quadratic subfield of the x^3-2 splitting field is Q(sqrt(-3)):
        // the discriminant of the minimal polynomial is -3 times a square.
        let disc = crate::zassenhaus::discriminant_q(mp);
        let ratio = disc / rat_int(-3);
        // ratio must be a square of a rational
        let num_sqrt = ratio.numer().sqrt();
        let den_sqrt = ratio.denom().sqrt();
        assert_eq!(&(&num_sqrt * &num_sqrt), ratio.numer());
        assert_eq!(&(&den_sqrt * &den_sqrt), ratio.denom());
    }

    #[test]
    fn galois_correspondence_all_subgroups() {
        let a = s3_ambient();
        for h in all_subgroups(&a) {
            let ff = fixed_field(&h);
            assert_eq!(ff.dim(), h.index());
            assert_eq!(ff.min_poly().deg0(), h.index());
            // Stabilizer of the fixed field is H itself.
            let stab = Subgroup::fixing(Arc::clone(&a), ff.basis());
            assert_eq!(stab.members(), h.members());
        }
    }

    #[test]
    fn subgroup_count_s3() {
        let a = s3_ambient();
        // S3 has 6 subgroups: 1, three C2, A3, S3.
        let subs = all_subgroups(&a);
        assert_eq!(subs.len(), 6);
        let mut orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        // Center of S3 is trivial.
        assert_eq!(Subgroup::center(Arc::clone(&a)).order(), 1);
    }

    #[test]
    fn subextension_and_cosets() {
        let a = s3_ambient();
        let a3 = all_subgroups(&a).into_iter().find(|s| s.order() == 3).unwrap();
        // L = N (H = 1), K = quadratic field (H' = A3): Gal(L/K) = A3.
        let ext = GaloisSubextension::new(Subgroup::trivial(Arc::clone(&a)), a3).unwrap();
        assert_eq!(ext.group_size(), 3);
        // Quotient ops agree with the table.
        for i in 0..3 {
            assert_eq!(ext.qcompose(i, ext.qinv(i)), 0);
        }
        // Non-normal pair is rejected: a C2 inside S3 is not normal.
        let c2 = all_subgroups(&a).into_iter().find(|s| s.order() == 2).unwrap();
        assert!(GaloisSubextension::new(c2, Subgroup::whole(Arc::clone(&a))).is_err());
    }

    #[test]
    fn rel_coords_round_trip() {
        let a = s3_ambient();
        let a3 = all_subgroups(&a).into_iter().find(|s| s.order() == 3).unwrap();
        let ext = GaloisSubextension::new(Subgroup::trivial(Arc::clone(&a)), a3).unwrap();
        let x = a.field().generator();
        let coords = ext.rel_coords(&x).unwrap();
        assert_eq!(coords.len(), 3);
        // Reassemble: x = sum c_t p^t.
        let p0 = ext.l_field().primitive();
        let mut acc = a.field().zero();
        let mut pw = a.field().one();
        for c in &coords {
            acc = acc.add(&c.mul(&pw));
            pw = pw.mul(p0);
        }
        assert_eq!(acc, x);
        // Coefficients lie in K.
        for c in &coords {
            assert!(ext.k_field().contains(c));
        }
    }

    #[test]
    fn restriction_of_automorphisms() {
        let a = s3_ambient();
        // L1 = quadratic subfield over Q.
        let a3 = all_subgroups(&a).into_iter().find(|s| s.order() == 3).unwrap();
        let ext = GaloisSubextension::new(a3, Subgroup::whole(Arc::clone(&a))).unwrap();
        assert_eq!(ext.group_size(), 2);
        let embs = ext.embeddings();
        assert_eq!(embs.len(), 2);
        let identity_emb = &embs[0];
        // identity restricts to identity
        assert_eq!(ext.restrict_automorphism(0, identity_emb).unwrap(), 0);
        // A 3-cycle lies in A3, which fixes the quadratic field: restriction
        // is the identity of Gal(L1/Q).
        let three_cycle = (0..6).find(|&s| a.order_of(s) == 3).unwrap();
        assert_eq!(ext.restrict_automorphism(three_cycle, identity_emb).unwrap(), 0);
        // A transposition restricts to the nontrivial element.
        let transposition = (0..6).find(|&s| a.order_of(s) == 2).unwrap();
        assert_eq!(ext.restrict_automorphism(transposition, identity_emb).unwrap(), 1);
    }

    #[test]
    fn whole_extension_self_embeddings() {
        let a = s3_ambient();
        let ext = GaloisSubextension::whole(&a);
        assert_eq!(ext.group_size(), 6);
        let embs = ext.embeddings();
        assert_eq!(embs.len(), 6);
        // Each embedding agrees with the corresponding automorphism on theta.
        let theta = a.field().generator();
        for (i, e) in embs.iter().enumerate() {
            assert_eq!(e.apply(&ext, &theta), a.apply(ext.coset_reps()[i], &theta));
        }
    }
}
