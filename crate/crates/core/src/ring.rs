//! Coordinate rings of algebraic Galois groups.
//!
//! For a relative extension L/K with group G = Gal(L/K), the ring A(L/K)
//! consists of the functions f: G -> L with sigma(f(sigma^-1 tau sigma)) =
//! f(tau). It is a K-Hopf algebra; its spectrum is a twisted form of the
//! constant group scheme on G, its L-points recover G itself, and
//! homomorphisms of extensions induce restriction maps that do not depend
//! on the chosen homomorphism.
//!
//! The basis is the kernel of the equivariance constraints, canonicalized
//! by reduced echelon form over K. All Hopf structure is obtained by exact
//! descent through the base-change isomorphism A (x)_K L = Map(G, L): the
//! value matrix B of the basis is invertible over L, and every
//! decomposition is a multiplication by B^-1 whose output is checked to
//! land in K.

use std::sync::Arc;

use num::Zero;

use crate::error::{Error, Result};
use crate::etale::CommAlgebra;
use crate::galois::{FixedFieldBasis, GaloisSubextension, Subgroup, SubfieldEmbedding};
use crate::linalg::Mat;
use crate::numfield::{NFElement, NFPoly};
use crate::poly::{FieldElem, QPoly};
use crate::rat::Rat;
use crate::splitting::{splitting_field, AmbientGaloisField};
use crate::trager::factor_over_nf;

/// The coordinate ring A(L/K) with its Hopf structure.
///
/// Structure constants live in a standalone copy of K; basis function
/// values live in L inside the ambient field.
pub struct CoordinateRing {
    ext: Arc<GaloisSubextension>,
    /// basis[i][t] = value of basis function i at coset representative t.
    basis: Vec<Vec<NFElement>>,
    /// Inverse of the value matrix B[t][i] = basis[i][t], over L.
    b_inv: Mat<NFElement>,
    /// mult[i][j] = coordinates of basis_i * basis_j (in K_abs).
    mult: Vec<Vec<Vec<NFElement>>>,
    unit: Vec<NFElement>,
    counit: Vec<NFElement>,
    /// antipode[i] = coordinates of S(basis_i).
    antipode: Vec<Vec<NFElement>>,
    /// delta[k][i][j]: Delta(basis_k) = sum d[k][i][j] basis_i (x) basis_j.
    delta: Vec<Vec<Vec<NFElement>>>,
}

impl std::fmt::Debug for CoordinateRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CoordinateRing(dim {})", self.dim())
    }
}

/// A K-algebra homomorphism A(L/K) -> M, recorded by the images of the
/// basis elements (values inside the ambient field).
#[derive(Clone, Debug)]
pub struct AlgebraPoint {
    target: Arc<FixedFieldBasis>,
    images: Vec<NFElement>,
}

impl PartialEq for AlgebraPoint {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}
impl Eq for AlgebraPoint {}

impl AlgebraPoint {
    pub fn images(&self) -> &[NFElement] {
        &self.images
    }

    pub fn target(&self) -> &FixedFieldBasis {
        &self.target
    }
}

/// Builds A(L/K) for a relative Galois extension.
pub fn build_coordinate_ring(ext: Arc<GaloisSubextension>) -> Result<CoordinateRing> {
    let m = ext.group_size();
    let ambient = ext.ambient();
    let field = ambient.field();
    let n = ambient.degree();
    let l_dim = ext.l_field().dim();
    let l_basis = ext.l_field().basis();

    // Kernel of the equivariance constraints over Q. Unknowns: u[tau][b]
    // with value(tau) = sum_b u[tau][b] l_basis[b]; constraints for a
    // generating set of the relative group (conjugation composes).
    let gens = ext.quotient_generators();
    let raw: Vec<Vec<NFElement>> = if gens.is_empty() {
        // Trivial group: no constraints, A = L = K.
        l_basis.iter().map(|b| vec![b.clone()]).collect()
    } else {
        let cols = m * l_dim;
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(gens.len() * m * n);
        for &s in &gens {
            let s_inv = ext.qinv(s);
            for tau in 0..m {
                let src = ext.qcompose(ext.qcompose(s_inv, tau), s);
                // act(s, value(src)) - value(tau) = 0
                let mut row_block = vec![vec![Rat::zero(); cols]; n];
                for (b, lb) in l_basis.iter().enumerate() {
                    let moved = ext.act(s, lb);
                    for r in 0..n {
                        row_block[r][src * l_dim + b] =
                            row_block[r][src * l_dim + b].clone() + moved.coords()[r].clone();
                        row_block[r][tau * l_dim + b] =
                            row_block[r][tau * l_dim + b].clone() - lb.coords()[r].clone();
                    }
                }
                rows.extend(row_block);
            }
        }
        let kernel = Mat::from_rows(rows).kernel_basis();
        kernel
            .into_iter()
            .map(|u| {
                (0..m)
                    .map(|tau| {
                        let mut v = field.zero();
                        for (b, lb) in l_basis.iter().enumerate() {
                            v = v.add(&lb.mul_rat(&u[tau * l_dim + b]));
                        }
                        v
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    };
    let k_dim = ext.k_field().dim();
    if raw.len() != m * k_dim {
        return Err(Error::InconsistentDescent(
            "equivariant function space has wrong dimension",
        ));
    }

    // Greedy selection of m functions that are L-independent as value
    // vectors (then they are a K-basis of A by dimension count).
    let mut chosen: Vec<Vec<NFElement>> = Vec::with_capacity(m);
    let mut elim: Vec<Vec<NFElement>> = Vec::new(); // row echelon workspace over L
    'cand: for cand in &raw {
        if chosen.len() == m {
            break;
        }
        let mut v = cand.clone();
        for row in &elim {
            let lead = row.iter().position(|x| !x.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let f = v[lead].mul(&row[lead].inv().unwrap());
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = vi.sub(&f.mul(ri));
                }
            }
        }
        if v.iter().all(NFElement::is_zero) {
            continue 'cand;
        }
        elim.push(v);
        chosen.push(cand.clone());
    }
    if chosen.len() != m {
        return Err(Error::InconsistentDescent(
            "could not extract a K-basis from the equivariant kernel",
        ));
    }

    // Canonicalize: reduced echelon form over K_abs in the flattened
    // coordinates (coset index major, L-power-basis coordinate minor).
    let rel = ext.rel_degree();
    let k_abs = ext.k_abs();
    let flatten = |values: &[NFElement]| -> Option<Vec<NFElement>> {
        let mut flat = Vec::with_capacity(m * rel);
        for v in values {
            flat.extend(ext.rel_coords_abstract(v)?);
        }
        Some(flat)
    };
    let mut flat_mat = Mat::from_rows(
        chosen
            .iter()
            .map(|f| flatten(f).ok_or(Error::InconsistentDescent("values outside L")))
            .collect::<Result<Vec<_>>>()?,
    );
    let pivots = flat_mat.rref();
    if pivots.len() != m {
        return Err(Error::InconsistentDescent("basis candidates were dependent"));
    }
    let p_l = ext.l_field().primitive();
    let basis: Vec<Vec<NFElement>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|tau| {
                    let mut acc = field.zero();
                    let mut pw = field.one();
                    for t in 0..rel {
                        let c = ext.k_from_abstract(flat_mat.at(i, tau * rel + t));
                        acc = acc.add(&c.mul(&pw));
                        pw = pw.mul(p_l);
                    }
                    acc
                })
                .collect()
        })
        .collect();

    // Value matrix and its inverse over L (base-change isomorphism).
    let mut b = Mat::zeros(m, m, &field.zero());
    for t in 0..m {
        for i in 0..m {
            *b.at_mut(t, i) = basis[i][t].clone();
        }
    }
    let b_inv = b
        .inverse()
        .ok_or(Error::InconsistentDescent("value matrix is singular"))?;

    let ring_shell = |values: &[Vec<NFElement>]| -> Result<Vec<Vec<NFElement>>> {
        values.iter().map(|v| decompose_k(&ext, &b_inv, v)).collect()
    };

    // Pointwise products.
    let mut mult = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        for j in i..m {
            let prod: Vec<NFElement> = (0..m).map(|t| basis[i][t].mul(&basis[j][t])).collect();
            let coords = decompose_k(&ext, &b_inv, &prod)?;
            mult[i][j] = coords.clone();
            mult[j][i] = coords;
        }
    }
    let unit = {
        let ones: Vec<NFElement> = (0..m).map(|_| field.one()).collect();
        decompose_k(&ext, &b_inv, &ones)?
    };
    // Counit: evaluation at the identity coset lands in K.
    let counit = basis
        .iter()
        .map(|f| {
            ext.k_to_abstract(&f[0])
                .ok_or(Error::InconsistentDescent("counit value outside K"))
        })
        .collect::<Result<Vec<_>>>()?;
    // Antipode: S(f)(tau) = f(tau^-1).
    let antipode = ring_shell(
        &(0..m)
            .map(|i| (0..m).map(|t| basis[i][ext.qinv(t)].clone()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )?;
    // Comultiplication by descent: for each k solve
    // sum_{ij} E_ij f_i(s) f_j(t) = f_k(st) as E = B^-1 T (B^-1)^T.
    let mut delta = Vec::with_capacity(m);
    for k in 0..m {
        let mut t_mat = Mat::zeros(m, m, &field.zero());
        for s in 0..m {
            for t in 0..m {
                *t_mat.at_mut(s, t) = basis[k][ext.qcompose(s, t)].clone();
            }
        }
        let e = b_inv.mul_mat(&t_mat).mul_mat(&b_inv.transpose());
        let mut dk = vec![vec![k_abs.zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                dk[i][j] = ext
                    .k_to_abstract(e.at(i, j))
                    .ok_or(Error::InconsistentDescent("comultiplication outside K"))?;
            }
        }
        delta.push(dk);
    }

    Ok(CoordinateRing {
        ext,
        basis,
        b_inv,
        mult,
        unit,
        counit,
        antipode,
        delta,
    })
}

/// Decomposes a value vector in the basis, checking coefficients lie in K;
/// output in the standalone copy of K.
fn decompose_k(
    ext: &GaloisSubextension,
    b_inv: &Mat<NFElement>,
    values: &[NFElement],
) -> Result<Vec<NFElement>> {
    let coords = b_inv.mul_vec(values);
    coords
        .iter()
        .map(|c| {
            ext.k_to_abstract(c)
                .ok_or(Error::InconsistentDescent("decomposition outside K"))
        })
        .collect()
}

impl CoordinateRing {
    pub fn ext(&self) -> &Arc<GaloisSubextension> {
        &self.ext
    }

    pub fn ambient(&self) -> &Arc<AmbientGaloisField> {
        self.ext.ambient()
    }

    /// dim_K A(L/K) = [L:K].
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_values(&self, i: usize) -> &[NFElement] {
        &self.basis[i]
    }

    pub fn unit_coords(&self) -> &[NFElement] {
        &self.unit
    }

    pub fn counit_coords(&self) -> &[NFElement] {
        &self.counit
    }

    pub fn antipode_matrix(&self) -> &[Vec<NFElement>] {
        &self.antipode
    }

    pub fn delta_tensor(&self) -> &[Vec<Vec<NFElement>>] {
        &self.delta
    }

    pub fn mult_tensor(&self) -> &[Vec<Vec<NFElement>>] {
        &self.mult
    }

    /// Exhaustive equivariance check of every basis element at every
    /// (sigma, tau) pair.
    pub fn verify_equivariance(&self) -> bool {
        let m = self.dim();
        for f in &self.basis {
            for s in 0..m {
                let s_inv = self.ext.qinv(s);
                for tau in 0..m {
                    let src = self.ext.qcompose(self.ext.qcompose(s_inv, tau), s);
                    if self.ext.act(s, &f[src]) != f[tau] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The multiplication table as an abstract commutative algebra over K.
    pub fn as_algebra(&self) -> CommAlgebra<NFElement> {
        CommAlgebra::new(self.unit.clone(), self.mult.clone())
    }

    /// Degrees of the field factors of A over K, sorted.
    pub fn etale_degrees(&self) -> Vec<usize> {
        let k_abs = Arc::clone(self.ext.k_abs());
        let algebra = self.as_algebra();
        let factor = move |f: &NFPoly| -> Vec<NFPoly> {
            factor_over_nf(f, &k_abs)
                .factors
                .into_iter()
                .map(|(g, _)| g)
                .collect()
        };
        algebra.split_etale(&factor).degrees
    }

    /// Hopf axioms, checked exactly on the structure constants:
    /// evaluation law of Delta, coassociativity, counit law, antipode law.
    pub fn verify_hopf(&self) -> bool {
        let m = self.dim();
        let ka = self.ext.k_abs();
        let field = self.ambient().field();
        // (1) Delta evaluation at every (s, t): as the matrix identity
        // B E_k B^T = T_k with B the value matrix and T_k[s][t] = f_k(st).
        let mut b = Mat::zeros(m, m, &field.zero());
        for t in 0..m {
            for i in 0..m {
                *b.at_mut(t, i) = self.basis[i][t].clone();
            }
        }
        let bt = b.transpose();
        for k in 0..m {
            let mut e = Mat::zeros(m, m, &field.zero());
            for i in 0..m {
                for j in 0..m {
                    *e.at_mut(i, j) = self.ext.k_from_abstract(&self.delta[k][i][j]);
                }
            }
            let lhs = b.mul_mat(&e).mul_mat(&bt);
            for s in 0..m {
                for t in 0..m {
                    if lhs.at(s, t) != &self.basis[k][self.ext.qcompose(s, t)] {
                        return false;
                    }
                }
            }
        }
        // (2) Coassociativity on coefficients.
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    for c in 0..m {
                        let mut left = ka.zero();
                        let mut right = ka.zero();
                        for a in 0..m {
                            left = left.add(&self.delta[k][a][c].mul(&self.delta[a][i][j]));
                            right = right.add(&self.delta[k][i][a].mul(&self.delta[a][j][c]));
                        }
                        if left != right {
                            return false;
                        }
                    }
                }
            }
        }
        // (3) Counit laws: (eps (x) id) Delta = id = (id (x) eps) Delta.
        for k in 0..m {
            for j in 0..m {
                let mut acc = ka.zero();
                let mut acc2 = ka.zero();
                for i in 0..m {
                    acc = acc.add(&self.delta[k][i][j].mul(&self.counit[i]));
                    acc2 = acc2.add(&self.delta[k][j][i].mul(&self.counit[i]));
                }
                let expect = if j == k { ka.one() } else { ka.zero() };
                if acc != expect || acc2 != expect {
                    return false;
                }
            }
        }
        // (4) Antipode law: m (S (x) id) Delta = unit . eps.
        for k in 0..m {
            let mut acc = vec![ka.zero(); m];
            for i in 0..m {
                for j in 0..m {
                    let d = &self.delta[k][i][j];
                    if d.is_zero() {
                        continue;
                    }
                    // S(f_i) * f_j = sum_a antipode[i][a] * mult[a][j]
                    for a in 0..m {
                        let s = &self.antipode[i][a];
                        if s.is_zero() {
                            continue;
                        }
                        let w = d.mul(s);
                        for (b, mlt) in self.mult[a][j].iter().enumerate() {
                            acc[b] = acc[b].add(&w.mul(mlt));
                        }
                    }
                }
            }
            for (b, v) in acc.iter().enumerate() {
                let expect = self.counit[k].mul(&self.unit[b]);
                if *v != expect {
                    return false;
                }
            }
        }
        true
    }

    /// The base-change map A (x)_K L -> Map(G, L) is an isomorphism: the
    /// value matrix of the basis is invertible over L (checked at build
    /// time; repeated here as a cheap rank recomputation).
    pub fn verify_base_change(&self) -> bool {
        let m = self.dim();
        let field = self.ambient().field();
        let mut b = Mat::zeros(m, m, &field.zero());
        for t in 0..m {
            for i in 0..m {
                *b.at_mut(t, i) = self.basis[i][t].clone();
            }
        }
        b.inverse().is_some()
    }

    /// Evaluation point at a group element: f |-> f(sigma). Its target is L.
    pub fn galois_to_point(&self, sigma: usize) -> AlgebraPoint {
        let images = self.basis.iter().map(|f| f[sigma].clone()).collect();
        AlgebraPoint {
            target: Arc::new(self.ext.l_field().clone()),
            images,
        }
    }

    /// The counit point (identity of the point group), over K.
    pub fn counit_point(&self) -> AlgebraPoint {
        let images = self
            .counit
            .iter()
            .map(|c| self.ext.k_from_abstract(c))
            .collect();
        AlgebraPoint {
            target: Arc::new(self.ext.k_field().clone()),
            images,
        }
    }

    /// Complete duplicate-free enumeration of the K-algebra homomorphisms
    /// A -> M, for K <= M <= N given by its fixed-field data.
    pub fn points(&self, m_field: &FixedFieldBasis) -> Vec<AlgebraPoint> {
        let m = self.dim();
        let embeddings = self.ext.embeddings();
        let mut all: Vec<Vec<NFElement>> = Vec::new();
        for tau in 0..m {
            for emb in &embeddings {
                let images: Vec<NFElement> = self
                    .basis
                    .iter()
                    .map(|f| emb.apply(&self.ext, &f[tau]))
                    .collect();
                all.push(images);
            }
        }
        let key = |imgs: &Vec<NFElement>| -> Vec<Vec<Rat>> {
            imgs.iter().map(|e| e.coords().to_vec()).collect()
        };
        all.sort_by(|a, b| key(a).cmp(&key(b)));
        all.dedup();
        // Completeness: over N there are exactly dim-many points.
        assert_eq!(all.len(), m, "point enumeration must find exactly dim points");
        let target = Arc::new(m_field.clone());
        all.into_iter()
            .filter(|imgs| imgs.iter().all(|v| m_field.contains(v)))
            .map(|images| AlgebraPoint {
                target: Arc::clone(&target),
                images,
            })
            .collect()
    }

    /// True when the images form a unital K-algebra homomorphism on the
    /// structure constants.
    pub fn verify_point(&self, p: &AlgebraPoint) -> bool {
        let m = self.dim();
        let field = self.ambient().field();
        // unit: sum unit_b p(f_b) = 1
        let mut u = field.zero();
        for (b, c) in self.unit.iter().enumerate() {
            u = u.add(&self.ext.k_from_abstract(c).mul(&p.images[b]));
        }
        if u != field.one() {
            return false;
        }
        for i in 0..m {
            for j in 0..m {
                let lhs = p.images[i].mul(&p.images[j]);
                let mut rhs = field.zero();
                for (b, c) in self.mult[i][j].iter().enumerate() {
                    rhs = rhs.add(&self.ext.k_from_abstract(c).mul(&p.images[b]));
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Convolution product of points through Delta.
    pub fn point_mul(&self, x: &AlgebraPoint, y: &AlgebraPoint) -> AlgebraPoint {
        let m = self.dim();
        let field = self.ambient().field();
        let images = (0..m)
            .map(|k| {
                let mut acc = field.zero();
                for i in 0..m {
                    if x.images[i].is_zero() {
                        continue;
                    }
                    for j in 0..m {
                        let d = &self.delta[k][i][j];
                        if d.is_zero() || y.images[j].is_zero() {
                            continue;
                        }
                        acc = acc.add(
                            &self
                                .ext
                                .k_from_abstract(d)
                                .mul(&x.images[i])
                                .mul(&y.images[j]),
                        );
                    }
                }
                acc
            })
            .collect();
        AlgebraPoint {
            target: Arc::clone(&x.target),
            images,
        }
    }

    /// Inverse of a point: precomposition with the antipode.
    pub fn point_inv(&self, x: &AlgebraPoint) -> AlgebraPoint {
        let m = self.dim();
        let field = self.ambient().field();
        let images = (0..m)
            .map(|k| {
                let mut acc = field.zero();
                for (j, s) in self.antipode[k].iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.ext.k_from_abstract(s).mul(&x.images[j]));
                }
                acc
            })
            .collect();
        AlgebraPoint {
            target: Arc::clone(&x.target),
            images,
        }
    }

    /// Applies a relative group element to every image of a point
    /// (post-composition with the field automorphism).
    pub fn point_conjugate(&self, phi: usize, p: &AlgebraPoint) -> AlgebraPoint {
        let images = p.images.iter().map(|v| self.ext.act(phi, v)).collect();
        AlgebraPoint {
            target: Arc::clone(&p.target),
            images,
        }
    }

    /// Checks `phi . point(sigma) = point(phi sigma phi^-1)` (commuting
    /// square of the Galois-to-point identification with conjugation).
    pub fn conjugation_diagram_check(&self, phi: usize, sigma: usize) -> bool {
        let lhs = self.point_conjugate(phi, &self.galois_to_point(sigma));
        let conj = self
            .ext
            .qcompose(self.ext.qcompose(phi, sigma), self.ext.qinv(phi));
        lhs == self.galois_to_point(conj)
    }
}

/// A K-algebra homomorphism A(L1/K) -> A(L2/K) induced by an embedding
/// L1 -> L2 over K; stored as the K_abs matrix taking source basis
/// coordinates to destination basis coordinates.
#[derive(Clone, Debug)]
pub struct RestrictionMap {
    /// columns[i] = coordinates of the image of source basis element i.
    columns: Vec<Vec<NFElement>>,
}

impl PartialEq for RestrictionMap {
    fn eq(&self, other: &Self) -> bool {
        self.columns == other.columns
    }
}

impl RestrictionMap {
    pub fn columns(&self) -> &[Vec<NFElement>] {
        &self.columns
    }

    pub fn source_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn dest_dim(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn apply(&self, coords: &[NFElement]) -> Vec<NFElement> {
        let m2 = self.dest_dim();
        let zero = self.columns[0][0].zero_like();
        let mut out = vec![zero; m2];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero_elem() {
                continue;
            }
            for (r, v) in self.columns[i].iter().enumerate() {
                out[r] = out[r].add_ref(&c.mul_ref(v));
            }
        }
        out
    }

    pub fn is_injective(&self) -> bool {
        let rows: Vec<Vec<NFElement>> = self.columns.clone();
        Mat::from_rows(rows).rank() == self.source_dim()
    }

    /// Composition: `self` then `next`.
    pub fn then(&self, next: &RestrictionMap) -> RestrictionMap {
        RestrictionMap {
            columns: self.columns.iter().map(|c| next.apply(c)).collect(),
        }
    }
}

/// The map `phi_* f(tau) = phi(f(tau|_{phi,L1}))` on coordinate rings, for
/// an embedding `phi: L1 -> L2` over the common base K.
pub fn restriction(
    source: &CoordinateRing,
    dest: &CoordinateRing,
    phi: &SubfieldEmbedding,
) -> Result<RestrictionMap> {
    if !Arc::ptr_eq(source.ambient(), dest.ambient()) {
        return Err(Error::AmbientMismatch);
    }
    if source.ext.outer().members() != dest.ext.outer().members() {
        return Err(Error::NotAnEmbedding);
    }
    // phi must map L1 into L2.
    let image_prim = phi.primitive_image();
    if !dest.ext.l_field().contains(image_prim) {
        return Err(Error::NoEmbedding);
    }
    let m2 = dest.dim();
    let mut columns = Vec::with_capacity(source.dim());
    // Precompute the restriction tau|_{phi,L1} for each coset of G2.
    let mut restricted = Vec::with_capacity(m2);
    for t2 in 0..m2 {
        let global = dest.ext.coset_reps()[t2];
        restricted.push(source.ext.restrict_automorphism(global, phi)?);
    }
    for f in &source.basis {
        let values: Vec<NFElement> = (0..m2)
            .map(|t2| phi.apply(&source.ext, &f[restricted[t2]]))
            .collect();
        columns.push(decompose_k(&dest.ext, &dest.b_inv, &values)?);
    }
    Ok(RestrictionMap { columns })
}

/// Verifies that a restriction map is a K-algebra homomorphism on the
/// structure constants.
pub fn verify_algebra_hom(
    map: &RestrictionMap,
    source: &CoordinateRing,
    dest: &CoordinateRing,
) -> bool {
    let ka = source.ext.k_abs();
    let m1 = source.dim();
    // unit
    if map.apply(&source.unit) != dest.unit {
        return false;
    }
    for i in 0..m1 {
        for j in 0..m1 {
            let lhs = map.apply(&source.mult[i][j]);
            // product of images, in dest coordinates
            let ci = &map.columns[i];
            let cj = &map.columns[j];
            let m2 = dest.dim();
            let mut rhs = vec![ka.zero(); m2];
            for a in 0..m2 {
                if ci[a].is_zero() {
                    continue;
                }
                for b in 0..m2 {
                    if cj[b].is_zero() {
                        continue;
                    }
                    let w = ci[a].mul(&cj[b]);
                    for (t, c) in dest.mult[a][b].iter().enumerate() {
                        rhs[t] = rhs[t].add(&w.mul(c));
                    }
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Verifies that a restriction map commutes with the Hopf structure.
pub fn verify_hopf_hom(
    map: &RestrictionMap,
    source: &CoordinateRing,
    dest: &CoordinateRing,
) -> bool {
    let ka = source.ext.k_abs();
    let m1 = source.dim();
    let m2 = dest.dim();
    // counit: eps_2(phi_* f) = eps_1(f)
    for i in 0..m1 {
        let mut acc = ka.zero();
        for (a, c) in map.columns[i].iter().enumerate() {
            acc = acc.add(&c.mul(&dest.counit[a]));
        }
        if acc != source.counit[i] {
            return false;
        }
    }
    // antipode: phi_* S_1 = S_2 phi_*
    for i in 0..m1 {
        let lhs = map.apply(&source.antipode[i]);
        let mut rhs = vec![ka.zero(); m2];
        for (a, c) in map.columns[i].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, s) in dest.antipode[a].iter().enumerate() {
                rhs[t] = rhs[t].add(&c.mul(s));
            }
        }
        if lhs != rhs {
            return false;
        }
    }
    // comultiplication: (phi_* (x) phi_*) Delta_1 = Delta_2 phi_*
    for k in 0..m1 {
        let mut lhs = vec![vec![ka.zero(); m2]; m2];
        for i in 0..m1 {
            for j in 0..m1 {
                let d = &source.delta[k][i][j];
                if d.is_zero() {
                    continue;
                }
                for (a, ca) in map.columns[i].iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (b, cb) in map.columns[j].iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        lhs[a][b] = lhs[a][b].add(&d.mul(ca).mul(cb));
                    }
                }
            }
        }
        let mut rhs = vec![vec![ka.zero(); m2]; m2];
        for (t, c) in map.columns[k].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for a in 0..m2 {
                for b in 0..m2 {
                    rhs[a][b] = rhs[a][b].add(&c.mul(&dest.delta[t][a][b]));
                }
            }
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// A finite truncation of the absolute algebraic Galois group: a tower of
/// coordinate rings linked by injective restriction maps.
pub struct TruncatedAbsoluteGroup {
    ambient: Arc<AmbientGaloisField>,
    levels: Vec<Arc<CoordinateRing>>,
    /// maps[i][j - i - 1]: A(L_i/Q) -> A(L_j/Q) for i < j.
    maps: Vec<Vec<RestrictionMap>>,
}

impl TruncatedAbsoluteGroup {
    pub fn ambient(&self) -> &Arc<AmbientGaloisField> {
        &self.ambient
    }

    pub fn levels(&self) -> &[Arc<CoordinateRing>] {
        &self.levels
    }

    pub fn map(&self, i: usize, j: usize) -> &RestrictionMap {
        &self.maps[i][j - i - 1]
    }

    /// All composites agree with the direct maps.
    pub fn verify_functorial(&self) -> bool {
        let n = self.levels.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if &self.map(i, j).then(self.map(j, k)) != self.map(i, k) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Builds the tower Q = L_0 <= L_1 <= ... inside the splitting field of all
/// inputs, where L_i is the splitting subfield of the first i polynomials,
/// with coordinate rings and restriction maps between consecutive levels.
pub fn truncated_absolute_group(polys: &[QPoly], cap: usize) -> Result<TruncatedAbsoluteGroup> {
    let ambient = Arc::new(splitting_field(polys, cap)?);
    let whole = Subgroup::whole(Arc::clone(&ambient));
    let mut levels = Vec::new();
    let mut exts: Vec<Arc<GaloisSubextension>> = Vec::new();
    let mut prev_inner: Option<Vec<usize>> = None;
    for i in 0..=polys.len() {
        // Stabilizer of all roots of the first i polynomials.
        let mut fixed_elems: Vec<NFElement> = Vec::new();
        for p in 0..i {
            fixed_elems.extend(ambient.roots_of(p).iter().cloned());
        }
        let h = Subgroup::fixing(Arc::clone(&ambient), &fixed_elems);
        if let Some(prev) = &prev_inner {
            if prev == h.members() {
                continue; // no growth at this level; skip duplicates
            }
        }
        prev_inner = Some(h.members().to_vec());
        if !h.is_normal_in(&whole) {
            return Err(Error::InconsistentDescent(
                "splitting subfield must be Galois over Q",
            ));
        }
        let ext = Arc::new(GaloisSubextension::new(h, whole.clone())?);
        exts.push(Arc::clone(&ext));
        levels.push(Arc::new(build_coordinate_ring(ext)?));
    }
    let mut maps: Vec<Vec<RestrictionMap>> = Vec::new();
    for i in 0..levels.len() {
        let mut row = Vec::new();
        for j in i + 1..levels.len() {
            // The inclusion embedding: primitive of L_i maps to itself.
            let phi = SubfieldEmbedding::new(&exts[i], exts[i].l_field().primitive().clone());
            let map = restriction(&levels[i], &levels[j], &phi)?;
            if !map.is_injective() {
                return Err(Error::InconsistentDescent("tower map must be injective"));
            }
            row.push(map);
        }
        maps.push(row);
    }
    Ok(TruncatedAbsoluteGroup {
        ambient,
        levels,
        maps,
    })
}

/// Convenience: A(N/Q) for the splitting field of the given polynomials.
pub fn ring_of_splitting_field(polys: &[QPoly], cap: usize) -> Result<(Arc<AmbientGaloisField>, CoordinateRing)> {
    let ambient = Arc::new(splitting_field(polys, cap)?);
    let ext = Arc::new(GaloisSubextension::whole(&ambient));
    let ring = build_coordinate_ring(ext)?;
    Ok((ambient, ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::all_subgroups;
    use crate::splitting::DEFAULT_DEGREE_CAP;

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_i64(cs)
    }

    fn s3_ring() -> (Arc<AmbientGaloisField>, CoordinateRing) {
        ring_of_splitting_field(&[p(&[-2, 0, 0, 1])], DEFAULT_DEGREE_CAP).unwrap()
    }

    #[test]
    fn sqrt2_ring_is_q_times_q() {
        let (_a, ring) = ring_of_splitting_field(&[p(&[-2, 0, 1])], DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(ring.dim(), 2);
        assert!(ring.verify_equivariance());
        // Abelian relative group: all values rational.
        for i in 0..2 {
            for v in ring.basis_values(i) {
                assert!(v.is_rational());
            }
        }
        assert_eq!(ring.etale_degrees(), vec![1, 1]);
        assert!(ring.verify_hopf());
    }

    #[test]
    fn s3_ring_structure() {
        let (_a, ring) = s3_ring();
        assert_eq!(ring.dim(), 6);
        assert!(ring.verify_equivariance());
        assert!(ring.verify_base_change());
        // Etale factor degrees match conjugacy class sizes {1, 2, 3}.
        assert_eq!(ring.etale_degrees(), vec![1, 2, 3]);
        assert!(ring.verify_hopf());
    }

    #[test]
    fn s3_points_and_group_law() {
        let (_a, ring) = s3_ring();
        let ext = ring.ext();
        // L-points recover the group.
        let l_points = ring.points(ext.l_field());
        assert_eq!(l_points.len(), 6);
        for pt in &l_points {
            assert!(ring.verify_point(pt));
        }
        // K-points count the center (trivial for S3).
        let k_points = ring.points(ext.k_field());
        assert_eq!(k_points.len(), 1);
        assert_eq!(k_points[0], ring.counit_point());
        // galois_to_point is a group isomorphism onto the L-points.
        let m = ring.dim();
        for s in 0..m {
            for t in 0..m {
                let prod = ring.point_mul(&ring.galois_to_point(s), &ring.galois_to_point(t));
                assert_eq!(prod, ring.galois_to_point(ext.qcompose(s, t)));
            }
            assert_eq!(
                ring.point_inv(&ring.galois_to_point(s)),
                ring.galois_to_point(ext.qinv(s))
            );
            // identity/counit laws
            let e = ring.counit_point();
            let x = ring.galois_to_point(s);
            assert_eq!(ring.point_mul(&x, &e), x);
            assert_eq!(ring.point_mul(&e, &x), x);
            assert_eq!(ring.point_mul(&x, &ring.point_inv(&x)), e);
        }
        // distinct group elements give distinct points
        let mut images: Vec<_> = (0..m).map(|s| ring.galois_to_point(s)).collect();
        images.dedup();
        assert_eq!(images.len(), m);
        // conjugation diagram commutes for all 36 pairs
        for phi in 0..m {
            for sigma in 0..m {
                assert!(ring.conjugation_diagram_check(phi, sigma));
            }
        }
    }

    #[test]
    fn relative_ring_over_quadratic_is_split() {
        // L = N6 over K = quadratic subfield: relative group A3 abelian,
        // so A = K^3 and every basis value lies in K... in L? Values lie
        // in L; the abelian collapse puts them in K.
        let a = Arc::new(
            crate::splitting::splitting_field(&[p(&[-2, 0, 0, 1])], DEFAULT_DEGREE_CAP).unwrap(),
        );
        let a3 = all_subgroups(&a).into_iter().find(|s| s.order() == 3).unwrap();
        let ext = Arc::new(
            GaloisSubextension::new(Subgroup::trivial(Arc::clone(&a)), a3).unwrap(),
        );
        let ring = build_coordinate_ring(ext).unwrap();
        assert_eq!(ring.dim(), 3);
        assert!(ring.verify_equivariance());
        assert!(ring.verify_hopf());
        assert_eq!(ring.etale_degrees(), vec![1, 1, 1]);
        for i in 0..3 {
            for v in ring.basis_values(i) {
                assert!(ring.ext().k_field().contains(v), "abelian case collapses to K");
            }
        }
        // K-points = |Z(A3)| = 3.
        assert_eq!(ring.points(ring.ext().k_field()).len(), 3);
    }

    #[test]
    fn self_embeddings_induce_identity() {
        let (_a, ring) = s3_ring();
        let embs = ring.ext().embeddings();
        assert_eq!(embs.len(), 6);
        let mut maps = Vec::new();
        for phi in &embs {
            let map = restriction(&ring, &ring, phi).unwrap();
            assert!(verify_algebra_hom(&map, &ring, &ring));
            assert!(verify_hopf_hom(&map, &ring, &ring));
            maps.push(map);
        }
        // All equal, and equal to the identity matrix.
        let ka = ring.ext().k_abs();
        for map in &maps {
            assert_eq!(map, &maps[0]);
            for (i, col) in map.columns().iter().enumerate() {
                for (j, v) in col.iter().enumerate() {
                    let expect = if i == j { ka.one() } else { ka.zero() };
                    assert_eq!(*v, expect);
                }
            }
        }
    }

    #[test]
    fn tower_of_rings() {
        let tower =
            truncated_absolute_group(&[p(&[-2, 0, 0, 1]), p(&[-2, 0, 1])], DEFAULT_DEGREE_CAP)
                .unwrap();
        let dims: Vec<usize> = tower.levels().iter().map(|r| r.dim()).collect();
        assert_eq!(dims, vec![1, 6, 12]);
        assert!(tower.verify_functorial());
        for i in 0..dims.len() {
            for j in i + 1..dims.len() {
                assert!(tower.map(i, j).is_injective());
            }
        }
    }

    #[test]
    fn trivial_tower() {
        let tower = truncated_absolute_group(&[], DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(tower.levels().len(), 1);
        assert_eq!(tower.levels()[0].dim(), 1);
    }
}
