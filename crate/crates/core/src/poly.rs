//! Dense univariate polynomials over an exact field.
//!
//! Coefficients are stored lowest degree first; the zero polynomial is the
//! empty sequence and a nonzero polynomial never has a zero leading
//! coefficient. The coefficient domain is anything implementing
//! [`FieldElem`], which carries its own context (a number-field element
//! knows its field), so constructors never need an external ring handle.

use std::fmt;

use crate::error::{Error, Result};
use crate::rat::{parse_rat, rat_str, Rat};

/// Exact field element with enough context to mint 0 and 1 of its own field.
pub trait FieldElem: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// None exactly for zero.
    fn inv_ref(&self) -> Option<Self>;

    fn div_ref(&self, rhs: &Self) -> Self {
        self.mul_ref(&rhs.inv_ref().expect("division by zero"))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

impl<C: FieldElem> Polynomial<C> {
    /// Builds from raw coefficients (lowest degree first), trimming zeros.
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero_elem()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`, with context taken from `sample`.
    pub fn x(sample: &C) -> Self {
        Polynomial {
            coeffs: vec![sample.zero_like(), sample.one_like()],
        }
    }

    /// `x - r`.
    pub fn x_minus(r: &C) -> Self {
        Polynomial {
            coeffs: vec![r.neg_ref(), r.one_like()],
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with zero treated as 0 (handy for bounds).
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i`, or a zero of the right field.
    pub fn coeff(&self, i: usize, sample: &C) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(|| sample.zero_like())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.coeffs[0].one_like()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |l| *l == l.one_like())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let v = match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(v);
        }
        Self::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero_elem() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|c| c.mul_ref(k)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: usize) -> Self {
        if e == 0 {
            let one = self
                .coeffs
                .first()
                .map(|c| c.one_like())
                .expect("pow of zero polynomial needs a context");
            return Self::constant(one);
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.mul(&base),
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap()
    }

    /// Euclidean division: `self = q*rhs + r`, `deg r < deg rhs`.
    pub fn divmod(&self, rhs: &Self) -> (Self, Self) {
        let d = rhs.degree().expect("division by zero polynomial");
        if self.is_zero() || self.coeffs.len() < rhs.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let lead_inv = rhs.leading().unwrap().inv_ref().unwrap();
        let zero = self.coeffs[0].zero_like();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![zero; rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i].is_zero_elem() {
                continue;
            }
            let q = rem[i].mul_ref(&lead_inv);
            for (j, b) in rhs.coeffs.iter().enumerate().take(d) {
                rem[i - d + j] = rem[i - d + j].sub_ref(&q.mul_ref(b));
            }
            rem[i] = rem[i].zero_like();
            quot[i - d] = q;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, rhs: &Self) -> Self {
        self.divmod(rhs).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, rhs: &Self) -> Self {
        let (q, r) = self.divmod(rhs);
        assert!(r.is_zero(), "non-exact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv_ref().unwrap()),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `g = s*self + t*rhs`, `g` monic.
    pub fn extended_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let sample = self
            .coeffs
            .first()
            .or_else(|| rhs.coeffs.first())
            .expect("extended_gcd of two zero polynomials");
        let one = Self::constant(sample.one_like());
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (one.clone(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if let Some(l) = r0.leading() {
            let li = l.inv_ref().unwrap();
            (r0.scale(&li), s0.scale(&li), t0.scale(&li))
        } else {
            (r0, s0, t0)
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            // i * c by repeated addition is wasteful; scale by small int.
            let mut k = c.zero_like();
            let one = c.one_like();
            for _ in 0..i {
                k = k.add_ref(&one);
            }
            out.push(c.mul_ref(&k));
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    /// Composition `self(g)` for arbitrary `g` (Horner on polynomials).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Squarefree part over a characteristic-zero field: `self / gcd(self, self')`.
    pub fn squarefree_part(&self) -> Self {
        if self.deg0() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).deg0() == 0
    }

    /// Maps coefficients into another field (or through an embedding).
    pub fn map_coeffs<D: FieldElem>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

/// Yun's squarefree decomposition over a characteristic-zero field:
/// pairwise-coprime monic squarefree parts with their multiplicities.
pub fn squarefree_decomposition<C: FieldElem>(f: &Polynomial<C>) -> Vec<(Polynomial<C>, usize)> {
    let mut out = Vec::new();
    let f = f.monic();
    if f.deg0() == 0 {
        return out;
    }
    let df = f.derivative();
    let u = f.gcd(&df);
    let mut v = f.div_exact(&u);
    let mut w = df.div_exact(&u);
    let mut i = 1usize;
    while v.deg0() >= 1 {
        let z = w.sub(&v.derivative());
        let h = if z.is_zero() { v.clone() } else { v.gcd(&z) };
        if h.deg0() >= 1 {
            out.push((h.monic(), i));
        }
        v = v.div_exact(&h);
        w = if z.is_zero() {
            Polynomial::zero()
        } else {
            z.div_exact(&h)
        };
        i += 1;
    }
    out
}

pub type QPoly = Polynomial<Rat>;

impl QPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    /// Parses `x^3 - 2`, `2*x^4 + x - 3/2`, `-x`, `7`, or the JSON form
    /// `{"coeffs": ["-2","0","0","1"]}` (lowest degree first).
    pub fn parse(input: &str) -> Result<Self> {
        let s = input.trim();
        if s.starts_with('{') {
            return Self::parse_json(s);
        }
        Self::parse_expr(s)
    }

    fn parse_json(s: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad JSON polynomial: {e}")))?;
        let arr = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Parse("JSON polynomial needs a \"coeffs\" array".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for c in arr {
            let s = c
                .as_str()
                .map(str::to_owned)
                .or_else(|| c.as_i64().map(|n| n.to_string()))
                .ok_or_else(|| Error::Parse("coeffs entries must be strings".into()))?;
            coeffs.push(parse_rat(&s)?);
        }
        Ok(Self::new(coeffs))
    }

    fn parse_expr(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // Split into signed terms at top level (no parentheses in the format).
        let chars: Vec<char> = s.chars().collect();
        let mut terms: Vec<(i8, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign: i8 = 1;
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if (c == '+' || c == '-') && !prev_is_operand_break(&cur) {
                if !cur.trim().is_empty() {
                    terms.push((sign, cur.trim().to_string()));
                    cur = String::new();
                    sign = 1;
                }
                if c == '-' {
                    sign = -sign;
                }
            } else {
                cur.push(c);
            }
            i += 1;
        }
        if !cur.trim().is_empty() {
            terms.push((sign, cur.trim().to_string()));
        }
        if terms.is_empty() {
            return Err(Error::Parse(format!("cannot parse polynomial `{s}`")));
        }
        let mut coeffs: Vec<Rat> = Vec::new();
        for (sg, term) in terms {
            let (mut c, e) = parse_term(&term)?;
            if sg < 0 {
                c = -c;
            }
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rat::from_integer(0.into()));
            }
            coeffs[e] = &coeffs[e] + c;
        }
        Ok(Self::new(coeffs))
    }

    /// Canonical text form, matching what `parse` accepts.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            use num::Signed;
            if c.is_zero_elem() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let is_unit = mag == Rat::from_integer(1.into());
            match i {
                0 => out.push_str(&rat_str(&mag)),
                _ => {
                    if !is_unit {
                        out.push_str(&rat_str(&mag));
                        out.push('*');
                    }
                    out.push('x');
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }

    /// Coefficients as canonical decimal strings, lowest degree first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_str).collect()
    }
}

/// True when the tail of the current term ends in `^` or `*` or is mid-token
/// (so a following '-' is part of an exponent, not a term separator).
fn prev_is_operand_break(cur: &str) -> bool {
    matches!(cur.trim_end().chars().last(), Some('^') | Some('*') | Some('/'))
}

fn parse_term(term: &str) -> Result<(Rat, usize)> {
    let t = term.replace(' ', "");
    if t.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    if let Some(xpos) = t.find('x') {
        let coeff_part = &t[..xpos];
        let rest = &t[xpos + 1..];
        let coeff = if coeff_part.is_empty() {
            Rat::from_integer(1.into())
        } else {
            let cp = coeff_part.strip_suffix('*').unwrap_or(coeff_part);
            if cp.is_empty() {
                Rat::from_integer(1.into())
            } else {
                parse_rat(cp)?
            }
        };
        let exp = if rest.is_empty() {
            1usize
        } else if let Some(e) = rest.strip_prefix('^') {
            e.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?
        } else {
            return Err(Error::Parse(format!("cannot parse term `{term}`")));
        };
        Ok((coeff, exp))
    } else {
        Ok((parse_rat(&t)?, 0))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<C: FieldElem> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

/// Number of distinct real roots of a squarefree rational polynomial,
/// by Sturm's theorem (exact sign-variation count at -inf and +inf).
pub fn real_root_count(f: &QPoly) -> usize {
    use num::Signed;
    let f = f.squarefree_part();
    if f.deg0() == 0 {
        return 0;
    }
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    let sign_at_inf = |p: &QPoly, plus: bool| -> i8 {
        let d = p.degree().unwrap();
        let l = p.leading().unwrap();
        let mut s: i8 = if l.is_positive() { 1 } else { -1 };
        if !plus && d % 2 == 1 {
            s = -s;
        }
        s
    };
    let variations = |plus: bool| -> usize {
        let mut count = 0;
        let mut last: Option<i8> = None;
        for p in &chain {
            if p.is_zero() {
                continue;
            }
            let s = sign_at_inf(p, plus);
            if let Some(prev) = last {
                if prev != s {
                    count += 1;
                }
            }
            last = Some(s);
        }
        count
    };
    variations(false) - variations(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_i64(cs)
    }

    #[test]
    fn parse_text_forms() {
        assert_eq!(QPoly::parse("x^3 - 2").unwrap(), p(&[-2, 0, 0, 1]));
        assert_eq!(QPoly::parse("2*x^4 + x - 3/2").unwrap(), {
            QPoly::new(vec![rat(-3, 2), rat_int(1), rat_int(0), rat_int(0), rat_int(2)])
        });
        assert_eq!(QPoly::parse("-x").unwrap(), p(&[0, -1]));
        assert_eq!(QPoly::parse("7").unwrap(), p(&[7]));
        assert_eq!(QPoly::parse("x^2+-3").unwrap(), p(&[-3, 0, 1]));
        assert_eq!(
            QPoly::parse(r#"{"coeffs": ["-2","0","0","1"]}"#).unwrap(),
            p(&[-2, 0, 0, 1])
        );
        assert!(QPoly::parse("x^").is_err());
        assert!(QPoly::parse("").is_err());
    }

    #[test]
    fn text_round_trip() {
        for cs in [&[-2i64, 0, 0, 1][..], &[1, 2], &[0], &[-1, -1, -1], &[5]] {
            let f = p(cs);
            assert_eq!(QPoly::parse(&f.to_text()).unwrap(), f);
        }
    }

    #[test]
    fn divmod_basics() {
        let f = p(&[-1, 0, 1]); // x^2 - 1
        let g = p(&[-1, 1]); // x - 1
        let (q, r) = f.divmod(&g);
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&g), g.monic());
    }

    #[test]
    fn extended_gcd_bezout() {
        let f = p(&[1, 0, 1]);
        let g = p(&[-1, 1]);
        let (d, s, t) = f.extended_gcd(&g);
        assert!(d.is_one());
        assert_eq!(s.mul(&f).add(&t.mul(&g)), d);
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        let f = p(&[-1, 1]).pow(3).mul(&p(&[1, 1]));
        assert_eq!(f.squarefree_part(), p(&[-1, 1]).mul(&p(&[1, 1])).monic());
        assert!(!f.is_squarefree());
        assert!(p(&[-2, 0, 0, 1]).is_squarefree());
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(real_root_count(&p(&[-2, 0, 1])), 2); // x^2-2
        assert_eq!(real_root_count(&p(&[2, 0, 1])), 0); // x^2+2
        assert_eq!(real_root_count(&p(&[-2, 0, 0, 1])), 1); // x^3-2
        assert_eq!(real_root_count(&p(&[5, 0, -5, 0, 1])), 4); // x^4-5x^2+5
    }

    proptest! {
        #[test]
        fn divmod_round_trip(fc in prop::collection::vec(-9i64..=9, 0..7),
                             gc in prop::collection::vec(-9i64..=9, 1..7)) {
            let f = p(&fc);
            let g = p(&gc);
            prop_assume!(!g.is_zero());
            let (q, r) = f.divmod(&g);
            prop_assert_eq!(q.mul(&g).add(&r), f);
            prop_assert!(r.is_zero() || r.degree().unwrap() < g.degree().unwrap());
        }
    }
}
