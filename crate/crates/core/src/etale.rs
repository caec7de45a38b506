//! Decomposition of commutative etale algebras into field factors.
//!
//! An etale algebra over a characteristic-zero field always has a primitive
//! element; we search a deterministic integer box for one, factor its
//! minimal polynomial, and read off the primitive idempotents by CRT. The
//! multiset of factor degrees is the main output (it is the oracle for the
//! class-equation structure of coordinate rings).

use crate::linalg::{ColumnSolver, Mat};
use crate::poly::{FieldElem, Polynomial};

/// A finite-dimensional commutative algebra given by structure constants.
pub struct CommAlgebra<C> {
    dim: usize,
    unit: Vec<C>,
    /// mult[i][j] = coordinates of basis_i * basis_j.
    mult: Vec<Vec<Vec<C>>>,
}

pub struct EtaleSplit<C> {
    /// Primitive idempotents, as coordinate vectors.
    pub idempotents: Vec<Vec<C>>,
    /// Field factor degrees over the base field, sorted ascending.
    pub degrees: Vec<usize>,
}

impl<C: FieldElem> CommAlgebra<C> {
    pub fn new(unit: Vec<C>, mult: Vec<Vec<Vec<C>>>) -> Self {
        let dim = unit.len();
        assert!(dim >= 1);
        assert_eq!(mult.len(), dim);
        assert!(mult.iter().all(|r| r.len() == dim && r.iter().all(|v| v.len() == dim)));
        CommAlgebra { dim, unit, mult }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[C] {
        &self.unit
    }

    pub fn mul(&self, x: &[C], y: &[C]) -> Vec<C> {
        let zero = self.unit[0].zero_like();
        let mut out = vec![zero; self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero_elem() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero_elem() {
                    continue;
                }
                let c = xi.mul_ref(yj);
                for (k, m) in self.mult[i][j].iter().enumerate() {
                    out[k] = out[k].add_ref(&c.mul_ref(m));
                }
            }
        }
        out
    }

    pub fn eval_poly(&self, f: &Polynomial<C>, x: &[C]) -> Vec<C> {
        let zero = self.unit[0].zero_like();
        let mut acc = vec![zero; self.dim];
        for c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            for (a, u) in acc.iter_mut().zip(&self.unit) {
                *a = a.add_ref(&u.mul_ref(c));
            }
        }
        acc
    }

    /// Minimal polynomial of an element: first linear dependence among its
    /// powers.
    pub fn min_poly_of(&self, x: &[C]) -> Polynomial<C> {
        let mut powers: Vec<Vec<C>> = vec![self.unit.clone()];
        for _ in 0..self.dim {
            powers.push(self.mul(powers.last().unwrap(), x));
        }
        for k in 1..=self.dim {
            let a = Mat::from_rows(powers[..k].to_vec()).transpose();
            let solver = ColumnSolver::new(&a);
            if let Some(sol) = solver.solve(&powers[k]) {
                let mut cs: Vec<C> = sol.iter().map(|c| c.neg_ref()).collect();
                cs.push(self.unit[0].one_like());
                return Polynomial::new(cs);
            }
        }
        unreachable!("dimension bounds the degree")
    }

    /// Verifies commutativity, associativity, and the unit law exhaustively.
    pub fn verify_axioms(&self) -> bool {
        let basis: Vec<Vec<C>> = (0..self.dim)
            .map(|i| {
                let mut v = vec![self.unit[0].zero_like(); self.dim];
                v[i] = self.unit[0].one_like();
                v
            })
            .collect();
        for i in 0..self.dim {
            if self.mul(&self.unit, &basis[i]) != basis[i] {
                return false;
            }
            for j in 0..self.dim {
                if self.mul(&basis[i], &basis[j]) != self.mul(&basis[j], &basis[i]) {
                    return false;
                }
                for k in 0..self.dim {
                    let left = self.mul(&self.mul(&basis[i], &basis[j]), &basis[k]);
                    let right = self.mul(&basis[i], &self.mul(&basis[j], &basis[k]));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Minimal polynomial of `x` relative to a sub-identity `e` (the
    /// minimal polynomial of `ex` in the unital algebra `(eA, e)`).
    fn min_poly_rel(&self, e: &[C], x: &[C]) -> Polynomial<C> {
        let ex = self.mul(e, x);
        let mut powers: Vec<Vec<C>> = vec![e.to_vec()];
        for _ in 0..self.dim {
            powers.push(self.mul(powers.last().unwrap(), &ex));
        }
        for k in 1..=self.dim {
            let a = Mat::from_rows(powers[..k].to_vec()).transpose();
            let solver = ColumnSolver::new(&a);
            if let Some(sol) = solver.solve(&powers[k]) {
                let mut cs: Vec<C> = sol.iter().map(|c| c.neg_ref()).collect();
                cs.push(self.unit[0].one_like());
                return Polynomial::new(cs);
            }
        }
        unreachable!("dimension bounds the degree")
    }

    /// Evaluates a polynomial at `x` with `e` as the identity.
    fn eval_poly_rel(&self, f: &Polynomial<C>, x: &[C], e: &[C]) -> Vec<C> {
        let zero = self.unit[0].zero_like();
        let mut acc = vec![zero; self.dim];
        for c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            for (a, u) in acc.iter_mut().zip(e) {
                *a = a.add_ref(&u.mul_ref(c));
            }
        }
        acc
    }

    /// Dimension of the sub-algebra cut out by an idempotent.
    fn sub_dim(&self, e: &[C]) -> usize {
        let rows: Vec<Vec<C>> = (0..self.dim)
            .map(|j| {
                let mut basis = vec![self.unit[0].zero_like(); self.dim];
                basis[j] = self.unit[0].one_like();
                self.mul(e, &basis)
            })
            .collect();
        Mat::from_rows(rows).rank()
    }

    /// Splits an idempotent along an element: factor its relative minimal
    /// polynomial and CRT the factors into orthogonal sub-idempotents.
    /// Returns None when the polynomial is irreducible (no split).
    fn split_by(
        &self,
        e: &[C],
        x: &[C],
        factor: &dyn Fn(&Polynomial<C>) -> Vec<Polynomial<C>>,
    ) -> Option<Vec<Vec<C>>> {
        let mu = self.min_poly_rel(e, x);
        if mu.deg0() <= 1 {
            return None;
        }
        let factors = factor(&mu);
        assert_eq!(
            factors.iter().map(|f| f.deg0()).sum::<usize>(),
            mu.deg0(),
            "minimal polynomial in an etale algebra must be squarefree"
        );
        if factors.len() == 1 {
            return None;
        }
        let ex = self.mul(e, x);
        let mut parts = Vec::with_capacity(factors.len());
        for mi in &factors {
            let nu = mu.div_exact(mi);
            let (g, w, _) = nu.extended_gcd(mi);
            assert!(g.is_one(), "factors of a squarefree polynomial are coprime");
            parts.push(self.eval_poly_rel(&nu.mul(&w), &ex, e));
        }
        Some(parts)
    }

    /// Splits the algebra into field factors. `factor` must return the
    /// monic irreducible factors of a squarefree polynomial over the base
    /// field. Panics if the algebra is not etale.
    pub fn split_etale(&self, factor: &dyn Fn(&Polynomial<C>) -> Vec<Polynomial<C>>) -> EtaleSplit<C> {
        let zero = self.unit[0].zero_like();
        let one = self.unit[0].one_like();
        let basis_vec = |i: usize| -> Vec<C> {
            let mut v = vec![zero.clone(); self.dim];
            v[i] = one.clone();
            v
        };
        // Phase 1: split along basis elements (small minimal polynomials).
        let mut idems = vec![self.unit.clone()];
        let mut changed = true;
        while changed {
            changed = false;
            let mut next = Vec::new();
            'parts: for e in idems {
                for i in 0..self.dim {
                    if let Some(parts) = self.split_by(&e, &basis_vec(i), factor) {
                        next.extend(parts);
                        changed = true;
                        continue 'parts;
                    }
                }
                next.push(e);
            }
            idems = next;
        }
        // Phase 2: certify each remaining part is a field by exhibiting a
        // primitive element of the (now small) subalgebra; split further if
        // the certification finds a reducible minimal polynomial instead.
        let mut final_idems = Vec::new();
        let mut queue = idems;
        while let Some(e) = queue.pop() {
            let d = self.sub_dim(&e);
            if d == 1 {
                final_idems.push(e);
                continue;
            }
            // Deterministic search over small combinations of basis images.
            let mut certified = false;
            'search: for bound in 1u32..=8 {
                let mut weights = vec![0u32; self.dim];
                loop {
                    if weights.iter().any(|&w| w == bound) {
                        let mut cand = vec![zero.clone(); self.dim];
                        for (i, &w) in weights.iter().enumerate() {
                            let mut scalar = zero.clone();
                            for _ in 0..w {
                                scalar = scalar.add_ref(&one);
                            }
                            cand[i] = scalar;
                        }
                        let mu = self.min_poly_rel(&e, &cand);
                        if mu.deg0() == d {
                            let factors = factor(&mu);
                            if factors.len() == 1 {
                                certified = true; // eA = K[t]/(mu), a field
                            } else if let Some(parts) = self.split_by(&e, &cand, factor) {
                                queue.extend(parts);
                            } else {
                                unreachable!("reducible minimal polynomial must split");
                            }
                            break 'search;
                        }
                    }
                    let mut i = 0;
                    loop {
                        if i == self.dim {
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
                    if i == self.dim {
                        break;
                    }
                }
            }
            if certified {
                final_idems.push(e);
            } else if !certified && self.sub_dim(&e) == d {
                // No primitive element found in the box and no split: only
                // possible for a non-etale algebra at desk scale.
                panic!("no primitive element found; algebra is unexpectedly degenerate");
            }
        }
        let mut idempotents = final_idems;
        // Deterministic order (stable sort over a deterministic insertion
        // order) and exact sanity: orthogonal idempotents sum to 1.
        idempotents.sort_by_key(|e| self.sub_dim(e));
        let zero_vec = vec![zero.clone(); self.dim];
        let mut total = zero_vec.clone();
        for (i, e) in idempotents.iter().enumerate() {
            assert_eq!(self.mul(e, e), *e, "idempotent law");
            for f in idempotents.iter().skip(i + 1) {
                assert_eq!(self.mul(e, f), zero_vec, "orthogonality");
            }
            for (t, v) in total.iter_mut().zip(e) {
                *t = t.add_ref(v);
            }
        }
        assert_eq!(total, self.unit, "idempotents must sum to 1");
        let degrees: Vec<usize> = {
            let mut d: Vec<usize> = idempotents.iter().map(|e| self.sub_dim(e)).collect();
            d.sort_unstable();
            d
        };
        EtaleSplit {
            idempotents,
            degrees,
        }
    }
}
