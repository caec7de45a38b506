//! Splitting fields over Q as ambient Galois number fields.
//!
//! A splitting field is built by iterated root adjunction: factor the
//! remaining part of each input polynomial over the current field, adjoin a
//! root of a nonlinear factor through a primitive element `gamma = beta +
//! c*theta` (least c >= 0 with a squarefree characteristic polynomial, via
//! the shifted norm), and re-express everything in the new field. Once all
//! inputs split, the automorphisms are enumerated exactly: the generator is
//! an integer combination of stored roots, so its conjugates are found among
//! the same combinations of other root choices.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::numfield::{qpoly_to_nf, NFElement, NFPoly, NumberField};
use crate::poly::{FieldElem, QPoly};
use crate::rat::{parse_rat, rat_int, rat_str, Rat};
use crate::trager::{factor_over_nf, norm_shifted};

/// Evaluates a rational polynomial at a number-field element.
pub fn eval_qpoly_at(f: &QPoly, x: &NFElement) -> NFElement {
    let field = x.owner();
    let mut acc = field.zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(x).add(&field.from_rat(c.clone()));
    }
    acc
}

/// A field homomorphism out of a number field, stored as the powers of the
/// generator's image.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    powers: Vec<NFElement>,
}

impl FieldEmbedding {
    /// `image` must be a root of the source modulus in the target field.
    pub fn new(source: &Arc<NumberField>, image: NFElement) -> Self {
        debug_assert!(eval_qpoly_at(source.modulus(), &image).is_zero());
        let mut powers = Vec::with_capacity(source.degree());
        let mut acc = image.owner().one();
        for _ in 0..source.degree() {
            powers.push(acc.clone());
            acc = acc.mul(&image);
        }
        FieldEmbedding { powers }
    }

    pub fn apply(&self, x: &NFElement) -> NFElement {
        let mut acc = self.powers[0].zero_like();
        for (c, p) in x.coords().iter().zip(&self.powers) {
            if !c.is_zero() {
                acc = acc.add(&p.mul_rat(c));
            }
        }
        acc
    }

    pub fn apply_poly(&self, f: &NFPoly) -> NFPoly {
        f.map_coeffs(|c| self.apply(c))
    }
}

#[derive(Clone, Debug)]
struct Automorphism {
    image: NFElement,
    matrix: Mat<Rat>,
}

/// A Galois number field N/Q with its full automorphism group, composition
/// table, and the exact roots of every defining polynomial.
pub struct AmbientGaloisField {
    field: Arc<NumberField>,
    defining: Vec<QPoly>,
    roots: Vec<Vec<NFElement>>,
    autos: Vec<Automorphism>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    recipe: Vec<(usize, Rat)>,
}

impl std::fmt::Debug for AmbientGaloisField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "AmbientGaloisField(degree {}, {} defining polys)",
            self.degree(),
            self.defining.len()
        )
    }
}

pub const DEFAULT_DEGREE_CAP: usize = 24;

impl AmbientGaloisField {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn group_order(&self) -> usize {
        self.autos.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Monic squarefree versions of the input polynomials.
    pub fn defining_polys(&self) -> &[QPoly] {
        &self.defining
    }

    /// All roots in N of defining polynomial `i`, sorted canonically.
    pub fn roots_of(&self, i: usize) -> &[NFElement] {
        &self.roots[i]
    }

    pub fn auto_image(&self, i: usize) -> &NFElement {
        &self.autos[i].image
    }

    /// Applies automorphism `i` to an element of N.
    pub fn apply(&self, i: usize, x: &NFElement) -> NFElement {
        let coords = self.autos[i].matrix.mul_vec(x.coords());
        self.field.element(coords)
    }

    /// Composition: `compose(i, j)` is "apply j, then i".
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn order_of(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.compose(cur, i);
            k += 1;
        }
        k
    }

    /// Conjugacy classes, sorted by least member; members sorted.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.group_order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut class: Vec<usize> = (0..n)
                .map(|g| self.compose(self.compose(g, i), self.inverse[g]))
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

    pub fn class_of(&self, i: usize) -> usize {
        self.conjugacy_classes()
            .iter()
            .position(|c| c.contains(&i))
            .unwrap()
    }

    /// Exhaustive group-axiom verification of the composition table.
    pub fn verify_group_axioms(&self) -> bool {
        let n = self.group_order();
        for i in 0..n {
            if self.compose(0, i) != i || self.compose(i, 0) != i {
                return false;
            }
            if self.compose(i, self.inverse[i]) != 0 || self.compose(self.inverse[i], i) != 0 {
                return false;
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.compose(self.compose(i, j), k) != self.compose(i, self.compose(j, k)) {
                        return false;
                    }
                }
            }
        }
        for i in 0..n {
            let mut row = self.table[i].clone();
            let mut col: Vec<usize> = (0..n).map(|j| self.table[j][i]).collect();
            row.sort_unstable();
            col.sort_unstable();
            let expect: Vec<usize> = (0..n).collect();
            if row != expect || col != expect {
                return false;
            }
        }
        true
    }

    /// JSON form: `{degree, modulus, autos, table, defining, roots, recipe}`.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{json, Value};
        let coords = |e: &NFElement| -> Value {
            Value::Array(e.coords().iter().map(|c| Value::String(rat_str(c))).collect())
        };
        json!({
            "degree": self.degree(),
            "modulus": self.field.modulus().coeff_strings(),
            "autos": self.autos.iter().map(|a| coords(&a.image)).collect::<Vec<_>>(),
            "table": self.table,
            "defining": self.defining.iter().map(|f| f.coeff_strings()).collect::<Vec<_>>(),
            "roots": self
                .roots
                .iter()
                .map(|rs| rs.iter().map(coords).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "recipe": self
                .recipe
                .iter()
                .map(|(i, w)| json!([i, rat_str(w)]))
                .collect::<Vec<_>>(),
        })
    }

    /// Rebuilds from the JSON form, re-verifying every structural invariant
    /// (used by the cache; any failure means the file is corrupt).
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("ambient JSON: {m}"));
        let degree = v
            .get("degree")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| bad("missing degree"))? as usize;
        let parse_coeffs = |val: &serde_json::Value| -> Result<Vec<Rat>> {
            val.as_array()
                .ok_or_else(|| bad("expected array"))?
                .iter()
                .map(|c| {
                    c.as_str()
                        .ok_or_else(|| bad("expected string coeff"))
                        .and_then(parse_rat)
                })
                .collect()
        };
        let modulus =
            QPoly::new(parse_coeffs(v.get("modulus").ok_or_else(|| bad("missing modulus"))?)?);
        if modulus.deg0() != degree || !modulus.is_monic() {
            return Err(bad("modulus/degree mismatch"));
        }
        let field = NumberField::new(modulus);
        let elem = |val: &serde_json::Value| -> Result<NFElement> {
            let cs = parse_coeffs(val)?;
            if cs.len() != degree {
                return Err(bad("coordinate length mismatch"));
            }
            Ok(field.element(cs))
        };
        let autos_v = v
            .get("autos")
            .and_then(|a| a.as_array())
            .ok_or_else(|| bad("missing autos"))?;
        let images: Vec<NFElement> = autos_v.iter().map(elem).collect::<Result<_>>()?;
        let table_v = v
            .get("table")
            .and_then(|t| t.as_array())
            .ok_or_else(|| bad("missing table"))?;
        let table: Vec<Vec<usize>> = table_v
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("table row"))?
                    .iter()
                    .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| bad("table entry")))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let defining: Vec<QPoly> = v
            .get("defining")
            .and_then(|d| d.as_array())
            .ok_or_else(|| bad("missing defining"))?
            .iter()
            .map(|f| parse_coeffs(f).map(QPoly::new))
            .collect::<Result<_>>()?;
        let roots: Vec<Vec<NFElement>> = v
            .get("roots")
            .and_then(|r| r.as_array())
            .ok_or_else(|| bad("missing roots"))?
            .iter()
            .map(|rs| {
                rs.as_array()
                    .ok_or_else(|| bad("roots row"))?
                    .iter()
                    .map(elem)
                    .collect()
            })
            .collect::<Result<_>>()?;
        let recipe: Vec<(usize, Rat)> = v
            .get("recipe")
            .and_then(|r| r.as_array())
            .ok_or_else(|| bad("missing recipe"))?
            .iter()
            .map(|e| {
                let pair = e
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| bad("recipe entry"))?;
                let i = pair[0].as_u64().ok_or_else(|| bad("recipe index"))? as usize;
                let w = parse_rat(pair[1].as_str().ok_or_else(|| bad("recipe weight"))?)?;
                Ok((i, w))
            })
            .collect::<Result<_>>()?;
        let ambient = Self::assemble(field, defining, roots, images, recipe)?;
        if ambient.table != table {
            return Err(bad("composition table mismatch"));
        }
        Ok(ambient)
    }

    /// Builds automorphism matrices and the table from generator images,
    /// verifying all structural invariants.
    fn assemble(
        field: Arc<NumberField>,
        defining: Vec<QPoly>,
        roots: Vec<Vec<NFElement>>,
        images: Vec<NFElement>,
        recipe: Vec<(usize, Rat)>,
    ) -> Result<Self> {
        let n = field.degree();
        let bad = |m: &'static str| Error::InconsistentDescent(m);
        if images.len() != n || roots.len() != defining.len() {
            return Err(bad("wrong automorphism or root count"));
        }
        for (f, rs) in defining.iter().zip(&roots) {
            if rs.len() != f.deg0() {
                return Err(bad("missing roots"));
            }
            for r in rs {
                if !eval_qpoly_at(f, r).is_zero() {
                    return Err(bad("stored root is not a root"));
                }
            }
        }
        let mut autos = Vec::with_capacity(n);
        for img in &images {
            if !eval_qpoly_at(field.modulus(), img).is_zero() {
                return Err(bad("automorphism image is not a root of the modulus"));
            }
            autos.push(Automorphism {
                image: img.clone(),
                matrix: power_matrix(img),
            });
        }
        if autos[0].image != field.generator() {
            return Err(bad("identity must come first"));
        }
        let index_of: BTreeMap<Vec<Rat>, usize> = images
            .iter()
            .enumerate()
            .map(|(i, e)| (e.coords().to_vec(), i))
            .collect();
        if index_of.len() != n {
            return Err(bad("duplicate automorphism images"));
        }
        let mut table = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let composed = field.element(autos[i].matrix.mul_vec(autos[j].image.coords()));
                let idx = index_of
                    .get(composed.coords())
                    .copied()
                    .ok_or_else(|| bad("composition escapes the group"))?;
                table[i][j] = idx;
            }
        }
        let mut inverse = vec![0usize; n];
        for i in 0..n {
            inverse[i] = (0..n)
                .find(|&j| table[i][j] == 0)
                .ok_or_else(|| bad("missing inverse"))?;
        }
        let ambient = AmbientGaloisField {
            field,
            defining,
            roots,
            autos,
            table,
            inverse,
            recipe,
        };
        if !ambient.verify_group_axioms() {
            return Err(bad("group axioms fail"));
        }
        Ok(ambient)
    }
}

fn power_matrix(image: &NFElement) -> Mat<Rat> {
    let n = image.owner().degree();
    let mut m = Mat::zeros(n, n, &Rat::zero());
    let mut acc = image.owner().one();
    for c in 0..n {
        for r in 0..n {
            *m.at_mut(r, c) = acc.coords()[r].clone();
        }
        acc = acc.mul(image);
    }
    m
}

/// Constructs the splitting field of the given polynomials over Q.
pub fn splitting_field(polys: &[QPoly], cap: usize) -> Result<AmbientGaloisField> {
    // Squarefree monic normalization; constants are rejected.
    let mut defining = Vec::with_capacity(polys.len());
    for f in polys {
        if f.deg0() == 0 {
            return Err(Error::Parse("cannot split a constant polynomial".into()));
        }
        defining.push(f.squarefree_part());
    }

    let mut field = NumberField::rationals();
    let mut recipe: Vec<(usize, Rat)> = Vec::new();
    let mut found: Vec<Vec<NFElement>> = vec![Vec::new(); defining.len()];
    let mut remaining: Vec<NFPoly> = defining.iter().map(|f| qpoly_to_nf(f, &field)).collect();

    loop {
        // Linear leftovers give roots directly.
        for i in 0..remaining.len() {
            while remaining[i].deg0() == 1 {
                let root = remaining[i].monic().coeffs()[0].neg();
                remaining[i] = remaining[i].div_exact(&NFPoly::x_minus(&root));
                found[i].push(root);
            }
        }
        let Some(target) = remaining.iter().position(|r| r.deg0() >= 2) else {
            break;
        };
        let fac = factor_over_nf(&remaining[target], &field);
        let mut nonlinear: Option<NFPoly> = None;
        for (g, mult) in &fac.factors {
            if g.deg0() == 1 {
                for _ in 0..*mult {
                    found[target].push(g.coeffs()[0].neg());
                    remaining[target] = remaining[target].div_exact(g);
                }
            } else if nonlinear.is_none() {
                nonlinear = Some(g.clone());
            }
        }
        let Some(g) = nonlinear else { continue };
        let new_degree = field.degree() * g.deg0();
        if new_degree > cap {
            return Err(Error::DegreeCapExceeded {
                needed: new_degree,
                cap,
            });
        }
        // Least shift c >= 0 with a squarefree characteristic polynomial.
        let mut c = 0i64;
        let char_poly = loop {
            let n = norm_shifted(&field, &g, c);
            if n.deg0() == new_degree && n.is_squarefree() {
                break n;
            }
            c += 1;
        };
        let new_field = NumberField::new(char_poly.monic());
        let gamma = new_field.generator();
        // Recover the old generator inside the new field: alpha is the unique
        // common root of m_old(x) and ghat(x)(gamma - c*x).
        let alpha = {
            let u = qpoly_to_nf(field.modulus(), &new_field);
            let lin = NFPoly::new(vec![gamma.clone(), new_field.from_rat(rat_int(-c))]);
            let mut v = NFPoly::zero();
            for coeff in g.coeffs().iter().rev() {
                let coeff_poly = qpoly_to_nf(&coeff.as_qpoly(), &new_field);
                v = v.mul(&lin).add(&coeff_poly);
            }
            let d = u.gcd(&v);
            if d.deg0() != 1 {
                return Err(Error::InconsistentDescent(
                    "primitive element gcd is not linear",
                ));
            }
            d.monic().coeffs()[0].neg()
        };
        let embed = FieldEmbedding::new(&field, alpha.clone());
        let beta = gamma.sub(&alpha.mul_rat(&rat_int(c)));
        // Map all state through the embedding.
        for rs in &mut found {
            for r in rs.iter_mut() {
                *r = embed.apply(r);
            }
        }
        for r in &mut remaining {
            *r = embed.apply_poly(r);
        }
        // theta_new = beta + c * theta_old.
        let c_rat = rat_int(c);
        recipe = recipe
            .into_iter()
            .map(|(i, w)| (i, w * &c_rat))
            .filter(|(_, w)| !w.is_zero())
            .collect();
        recipe.push((target, rat_int(1)));
        found[target].push(beta.clone());
        remaining[target] = remaining[target].div_exact(&NFPoly::x_minus(&beta));
        field = new_field;
    }

    for rs in &mut found {
        rs.sort_by(|a, b| a.coords().cmp(b.coords()));
    }

    let images = automorphism_images(&field, &found, &recipe)?;
    AmbientGaloisField::assemble(field, defining, found, images, recipe)
}

/// Enumerates the conjugates of the generator: it is a weighted sum of
/// stored roots, and automorphisms permute each root list, so every
/// conjugate is the same weighted sum over other root choices.
fn automorphism_images(
    field: &Arc<NumberField>,
    roots: &[Vec<NFElement>],
    recipe: &[(usize, Rat)],
) -> Result<Vec<NFElement>> {
    let n = field.degree();
    let mut candidates: Vec<NFElement> = vec![field.zero()];
    for (poly_idx, w) in recipe {
        let mut next = Vec::with_capacity(candidates.len() * roots[*poly_idx].len());
        for base in &candidates {
            for r in &roots[*poly_idx] {
                next.push(base.add(&r.mul_rat(w)));
            }
        }
        candidates = next;
    }
    let modulus = field.modulus();
    let mut images: Vec<NFElement> = candidates
        .into_iter()
        .filter(|v| eval_qpoly_at(modulus, v).is_zero())
        .collect();
    images.sort_by(|a, b| a.coords().cmp(b.coords()));
    images.dedup_by(|a, b| a == b);
    if images.len() != n {
        return Err(Error::InconsistentDescent(
            "automorphism count does not match field degree",
        ));
    }
    // Identity first, the rest stay in lexicographic order.
    let gen = field.generator();
    let pos = images
        .iter()
        .position(|v| *v == gen)
        .ok_or(Error::InconsistentDescent("identity automorphism missing"))?;
    let id = images.remove(pos);
    images.insert(0, id);
    Ok(images)
}

/// Extends an ambient field so that `f` also splits, returning the new
/// ambient, the embedding of the old one, and the quotient map on
/// automorphism indices (`pi[new_sigma] = old_sigma`).
pub fn extend_ambient(
    ambient: &AmbientGaloisField,
    f: &QPoly,
    cap: usize,
) -> Result<(AmbientGaloisField, FieldEmbedding, Vec<usize>)> {
    let mut polys = ambient.defining.clone();
    polys.push(f.clone());
    let new = splitting_field(&polys, cap)?;
    // The old generator is a weighted sum of roots of the defining
    // polynomials; its images are the same weighted sums of roots in the
    // new ambient. Take the least valid one as the canonical embedding.
    let mut candidates: Vec<NFElement> = vec![new.field.zero()];
    for (poly_idx, w) in &ambient.recipe {
        let mut next = Vec::new();
        for base in &candidates {
            for r in &new.roots[*poly_idx] {
                next.push(base.add(&r.mul_rat(w)));
            }
        }
        candidates = next;
    }
    let m_old = ambient.field.modulus();
    let mut valid: Vec<NFElement> = candidates
        .into_iter()
        .filter(|v| eval_qpoly_at(m_old, v).is_zero())
        .collect();
    valid.sort_by(|a, b| a.coords().cmp(b.coords()));
    valid.dedup_by(|a, b| a == b);
    let image = valid.into_iter().next().ok_or(Error::NoEmbedding)?;
    let iota = FieldEmbedding::new(&ambient.field, image);

    // pi: restriction of each new automorphism to the old field.
    let embedded_images: BTreeMap<Vec<Rat>, usize> = (0..ambient.group_order())
        .map(|i| (iota.apply(ambient.auto_image(i)).coords().to_vec(), i))
        .collect();
    let old_gen_embedded = iota.apply(&ambient.field.generator());
    let mut pi = Vec::with_capacity(new.group_order());
    for s in 0..new.group_order() {
        let moved = new.apply(s, &old_gen_embedded);
        let idx = embedded_images
            .get(moved.coords())
            .copied()
            .ok_or(Error::InconsistentDescent("restriction escapes the group"))?;
        pi.push(idx);
    }
    // pi must be surjective (it is automatically a homomorphism on images).
    let mut seen = pi.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != ambient.group_order() {
        return Err(Error::InconsistentDescent(
            "restriction map is not surjective",
        ));
    }
    Ok((new, iota, pi))
}
