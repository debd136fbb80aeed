//! The mixed tensor space `W = ⊕ U_{b_i}^{t_i}`, its coordinate variables, and the
//! ε-commutative polynomial ring `S(W*)` in normal-ordered form.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cyclo::{CycloRational, RootOfUnity};
use crate::error::{Error, Result};
use crate::group::{Bicharacter, GroupElement};
use crate::lambda::{format_coefficient, split_top_level};
use crate::perm::Permutation;
use crate::tensor::GradedSpace;

/// Largest word length accepted by the explicit symmetrizer.
pub const MAX_SYMMETRIZER_DEGREE: usize = 6;

#[derive(Debug)]
struct ShapeInner {
    space: GradedSpace,
    summands: Vec<(usize, usize)>,
}

/// Summand list `(b_i, t_i)` over a base space.
#[derive(Debug, Clone)]
pub struct MixedShape(Arc<ShapeInner>);

impl PartialEq for MixedShape {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.space == other.0.space && self.0.summands == other.0.summands)
    }
}

impl Eq for MixedShape {}

impl MixedShape {
    pub fn new(space: GradedSpace, summands: Vec<(usize, usize)>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::Structure(
                "a mixed shape needs at least one summand".into(),
            ));
        }
        if space.dim() > u8::MAX as usize {
            return Err(Error::Resource(format!(
                "dimension {} too large",
                space.dim()
            )));
        }
        Ok(MixedShape(Arc::new(ShapeInner { space, summands })))
    }

    pub fn space(&self) -> &GradedSpace {
        &self.0.space
    }

    pub fn chi(&self) -> &Bicharacter {
        self.0.space.chi()
    }

    pub fn summands(&self) -> &[(usize, usize)] {
        &self.0.summands
    }

    pub fn s(&self) -> usize {
        self.0.summands.len()
    }

    /// `T(i)_{lower}^{upper}`, 0-based summand and indices.
    pub fn variable(
        &self,
        summand: usize,
        lower: &[usize],
        upper: &[usize],
    ) -> Result<SymVariable> {
        let &(b, t) = self
            .0
            .summands
            .get(summand)
            .ok_or_else(|| Error::ShapeMismatch(format!("no summand {}", summand + 1)))?;
        if lower.len() != b || upper.len() != t {
            return Err(Error::ShapeMismatch(format!(
                "summand {} takes {b} lower and {t} upper indices",
                summand + 1
            )));
        }
        let d = self.space().dim();
        if let Some(&i) = lower.iter().chain(upper).find(|&&i| i >= d) {
            return Err(Error::ShapeMismatch(format!(
                "index {} exceeds dimension {d}",
                i + 1
            )));
        }
        let chi = self.chi();
        let g = chi.group();
        let up = g.sum(upper.iter().map(|&u| self.space().degree(u)));
        let degree = g.sub(g.sum(lower.iter().map(|&l| self.space().degree(l))), up);
        Ok(SymVariable {
            rank: chi.order_rank(degree),
            summand: summand as u16,
            lower: lower.iter().map(|&i| i as u8).collect(),
            upper: upper.iter().map(|&i| i as u8).collect(),
            degree,
            odd: chi.is_odd(degree),
        })
    }

    fn check_variable(&self, v: &SymVariable) -> Result<()> {
        let w = self.variable(v.summand(), &v.lower(), &v.upper())?;
        if &w != v {
            return Err(Error::ShapeMismatch(format!(
                "variable {v} does not belong to this shape"
            )));
        }
        Ok(())
    }

    /// All coordinate variables of summand `i`, in canonical order.
    pub fn summand_variables(&self, i: usize) -> Vec<SymVariable> {
        let (b, t) = self.0.summands[i];
        let d = self.space().dim();
        let mut out = Vec::new();
        for idx in tuples(d, b + t) {
            out.push(self.variable(i, &idx[..b], &idx[b..]).expect("in range"));
        }
        out.sort();
        out
    }

    /// Every coordinate variable, in canonical order.
    pub fn variables(&self) -> Vec<SymVariable> {
        let mut out: Vec<SymVariable> = (0..self.s())
            .flat_map(|i| self.summand_variables(i))
            .collect();
        out.sort();
        out
    }

    /// Parses `T(i)[l1,…]^[u1,…]` (1-based).
    pub fn parse_variable(&self, text: &str) -> Result<SymVariable> {
        let bad = || Error::Parse(format!("bad variable {text:?}"));
        let text = text.trim();
        let rest = text.strip_prefix("T(").ok_or_else(bad)?;
        let (i, rest) = rest.split_once(')').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let rest = rest.strip_prefix('[').ok_or_else(bad)?;
        let (lower, rest) = rest.split_once(']').ok_or_else(bad)?;
        let upper = rest
            .strip_prefix("^[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let list = |s: &str| -> Result<Vec<usize>> {
            s.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| {
                    x.parse::<usize>()
                        .ok()
                        .filter(|&n| n >= 1)
                        .map(|n| n - 1)
                        .ok_or_else(bad)
                })
                .collect()
        };
        if i == 0 {
            return Err(bad());
        }
        self.variable(i - 1, &list(lower)?, &list(upper)?)
    }
}

/// All tuples in `[0, d)^len`, lexicographic.
pub(crate) fn tuples(d: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// `T(i)_{l_1…l_b}^{u_1…u_t}`, the coordinate dual to `e_{l} ⊗ e_{u}*` in summand `i`.
/// Field order gives the canonical order: degree position, summand, then indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymVariable {
    rank: u32,
    summand: u16,
    lower: Vec<u8>,
    upper: Vec<u8>,
    degree: GroupElement,
    odd: bool,
}

impl SymVariable {
    pub fn summand(&self) -> usize {
        self.summand as usize
    }

    pub fn lower(&self) -> Vec<usize> {
        self.lower.iter().map(|&i| i as usize).collect()
    }

    pub fn upper(&self) -> Vec<usize> {
        self.upper.iter().map(|&i| i as usize).collect()
    }

    /// `Σ |e_l| - Σ |e_u|`.
    pub fn degree(&self) -> GroupElement {
        self.degree
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }
}

impl fmt::Display for SymVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u8]| {
            v.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "T({})[{}]^[{}]",
            self.summand + 1,
            list(&self.lower),
            list(&self.upper)
        )
    }
}

/// A canonical monomial: variables in canonical order with exponents, odd exponents 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SymMonomial(Vec<(SymVariable, u32)>);

impl SymMonomial {
    pub fn one() -> Self {
        SymMonomial(Vec::new())
    }

    pub fn factors(&self) -> &[(SymVariable, u32)] {
        &self.0
    }

    /// Variables with repetition, in canonical order.
    pub fn expanded(&self) -> Vec<SymVariable> {
        self.0
            .iter()
            .flat_map(|(v, e)| std::iter::repeat_n(v.clone(), *e as usize))
            .collect()
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|(_, e)| *e as usize).sum()
    }

    /// Number of variables from each summand.
    pub fn multidegree(&self, s: usize) -> Vec<usize> {
        let mut out = vec![0; s];
        for (v, e) in &self.0 {
            out[v.summand()] += *e as usize;
        }
        out
    }

    pub fn degree(&self, chi: &Bicharacter) -> GroupElement {
        let g = chi.group();
        g.sum(
            self.0
                .iter()
                .flat_map(|(v, e)| std::iter::repeat_n(v.degree, *e as usize)),
        )
    }
}

impl fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.expanded().iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" * "))
    }
}

/// Sorts a variable sequence into canonical order, collecting `ε(|a|, |b|)` for every
/// swap of an adjacent pair `a b`. `None` when an odd variable repeats.
pub fn sym_normalize(
    shape: &MixedShape,
    seq: &[SymVariable],
) -> Result<Option<(RootOfUnity, SymMonomial)>> {
    for v in seq {
        shape.check_variable(v)?;
    }
    Ok(normalize_unchecked(shape.chi(), seq.to_vec()))
}

pub(crate) fn normalize_unchecked(
    chi: &Bicharacter,
    mut w: Vec<SymVariable>,
) -> Option<(RootOfUnity, SymMonomial)> {
    let mut sign = RootOfUnity::one(chi.modulus());
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            sign *= chi.epsilon(w[j - 1].degree, w[j].degree);
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    let mut factors: Vec<(SymVariable, u32)> = Vec::new();
    for v in w {
        match factors.last_mut() {
            Some((last, e)) if *last == v => {
                if v.odd {
                    return None;
                }
                *e += 1;
            }
            _ => factors.push((v, 1)),
        }
    }
    Some((sign, SymMonomial(factors)))
}

/// An element of `S(W*)` with cyclotomic coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPolynomial {
    shape: MixedShape,
    terms: BTreeMap<SymMonomial, CycloRational>,
}

impl SymPolynomial {
    pub fn zero(shape: &MixedShape) -> Self {
        SymPolynomial {
            shape: shape.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(shape: &MixedShape) -> Self {
        let mut p = Self::zero(shape);
        p.add_term(SymMonomial::one(), CycloRational::one());
        p
    }

    pub fn from_variable(shape: &MixedShape, v: &SymVariable) -> Result<Self> {
        shape.check_variable(v)?;
        let mut p = Self::zero(shape);
        p.add_term(SymMonomial(vec![(v.clone(), 1)]), CycloRational::one());
        Ok(p)
    }

    pub fn from_monomial(shape: &MixedShape, m: SymMonomial, c: CycloRational) -> Self {
        let mut p = Self::zero(shape);
        p.add_term(m, c);
        p
    }

    pub fn shape(&self) -> &MixedShape {
        &self.shape
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymMonomial, &CycloRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &SymMonomial) -> CycloRational {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(CycloRational::zero)
    }

    pub fn add_term(&mut self, m: SymMonomial, c: CycloRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c` times the normal form of an arbitrary variable sequence.
    pub fn add_sequence(&mut self, seq: &[SymVariable], c: &CycloRational) -> Result<()> {
        if let Some((s, m)) = sym_normalize(&self.shape, seq)? {
            self.add_term(m, c.mul_root(s));
        }
        Ok(())
    }

    /// The common total degree, `None` for zero; errors on mixed degrees.
    pub fn total_degree(&self) -> Result<Option<usize>> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.total_degree();
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => {
                    return Err(Error::Inhomogeneous(format!(
                        "polynomial mixes degrees {prev} and {d}"
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn multidegrees(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .terms
            .keys()
            .map(|m| m.multidegree(self.shape.s()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn check(&self, other: &SymPolynomial) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(
                "polynomials over different shapes".into(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SymPolynomial) -> Result<SymPolynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SymPolynomial) -> Result<SymPolynomial> {
        self.checked_add(&other.scale(&CycloRational::from_integer(-1)))
    }

    pub fn scale(&self, c: &CycloRational) -> SymPolynomial {
        let mut out = Self::zero(&self.shape);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn multiply(&self, other: &SymPolynomial) -> Result<SymPolynomial> {
        self.check(other)?;
        let chi = self.shape.chi();
        let mut out = Self::zero(&self.shape);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut seq = m1.expanded();
                seq.extend(m2.expanded());
                if let Some((s, m)) = normalize_unchecked(chi, seq) {
                    out.add_term(m, (c1 * c2).mul_root(s));
                }
            }
        }
        Ok(out)
    }

    /// G-degree of a homogeneous polynomial.
    pub fn degree(&self) -> Result<Option<GroupElement>> {
        let chi = self.shape.chi();
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.degree(chi);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => {
                    return Err(Error::Inhomogeneous("mixed G-degrees".into()))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Parses the output of `Display` (one `coeff * var * …` term per line or per ` + `).
    pub fn parse(shape: &MixedShape, text: &str) -> Result<SymPolynomial> {
        let m = shape.chi().modulus();
        let mut out = Self::zero(shape);
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("z =") || line == "0" {
                continue;
            }
            for term in split_top_level(line, " + ") {
                let parts = split_top_level(term.trim(), " * ");
                let (coef, vars) = if parts[0].trim_start().starts_with("T(") {
                    (CycloRational::one(), &parts[..])
                } else {
                    (CycloRational::parse(parts[0], m)?, &parts[1..])
                };
                let seq = vars
                    .iter()
                    .map(|v| shape.parse_variable(v))
                    .collect::<Result<Vec<_>>>()?;
                out.add_sequence(&seq, &coef)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SymPolynomial {
    /// One term per line, `coeff * var * var`, in monomial order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let m = self.shape.chi().modulus();
        let lines: Vec<String> = self
            .terms
            .iter()
            .map(|(mono, c)| {
                let c = format_coefficient(c, m);
                if mono.0.is_empty() {
                    c
                } else {
                    format!("{c} * {mono}")
                }
            })
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

/// All canonical monomials of total degree `r`, optionally of one multidegree.
pub fn enumerate_sym_basis(
    shape: &MixedShape,
    r: usize,
    multidegree: Option<&[usize]>,
) -> Vec<SymMonomial> {
    let vars = shape.variables();
    let s = shape.s();
    let mut out = Vec::new();
    let mut cur: Vec<(SymVariable, u32)> = Vec::new();
    let mut budget = multidegree.map(|m| m.to_vec());
    fn rec(
        vars: &[SymVariable],
        start: usize,
        left: usize,
        cur: &mut Vec<(SymVariable, u32)>,
        budget: &mut Option<Vec<usize>>,
        out: &mut Vec<SymMonomial>,
    ) {
        if left == 0 {
            if budget.as_ref().is_none_or(|b| b.iter().all(|&x| x == 0)) {
                out.push(SymMonomial(cur.clone()));
            }
            return;
        }
        for i in start..vars.len() {
            let v = &vars[i];
            let max = if v.odd { 1 } else { left };
            let room = budget.as_ref().map_or(max, |b| b[v.summand()].min(max));
            for e in 1..=room {
                if let Some(b) = budget.as_mut() {
                    b[v.summand()] -= e;
                }
                cur.push((v.clone(), e as u32));
                rec(vars, i + 1, left - e, cur, budget, out);
                cur.pop();
                if let Some(b) = budget.as_mut() {
                    b[v.summand()] += e;
                }
            }
        }
    }
    if let Some(m) = multidegree {
        if m.len() != s || m.iter().sum::<usize>() != r {
            return out;
        }
    }
    rec(&vars, 0, r, &mut cur, &mut budget, &mut out);
    out
}

/// An element of `T^r(W*)`: words of variables with cyclotomic coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTensor {
    shape: MixedShape,
    terms: BTreeMap<Vec<SymVariable>, CycloRational>,
}

impl SymTensor {
    pub fn zero(shape: &MixedShape) -> Self {
        SymTensor {
            shape: shape.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn word(shape: &MixedShape, word: Vec<SymVariable>, c: CycloRational) -> Result<Self> {
        for v in &word {
            shape.check_variable(v)?;
        }
        let mut t = Self::zero(shape);
        t.add_term(word, c);
        Ok(t)
    }

    pub fn shape(&self) -> &MixedShape {
        &self.shape
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<SymVariable>, &CycloRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Vec<SymVariable>, c: CycloRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(CycloRational::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn checked_add(&self, other: &SymTensor) -> Result<SymTensor> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch("tensors over different shapes".into()));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// `e(r) = (1/r!) Σ_σ σ` with the signed permutation action on each word.
    pub fn symmetrizer(&self) -> Result<SymTensor> {
        let chi = self.shape.chi();
        let mut out = Self::zero(&self.shape);
        for (w, c) in &self.terms {
            let r = w.len();
            if r > MAX_SYMMETRIZER_DEGREE {
                return Err(Error::Resource(format!(
                    "symmetrizer on degree {r} exceeds {MAX_SYMMETRIZER_DEGREE}"
                )));
            }
            let perms = Permutation::all(r);
            let norm = CycloRational::from_fraction(1, perms.len() as i64)?;
            let degs: Vec<GroupElement> = w.iter().map(|v| v.degree).collect();
            for sigma in &perms {
                let mut sign = RootOfUnity::one(chi.modulus());
                for (i, j) in sigma.inversions() {
                    sign *= chi.epsilon(degs[i], degs[j]);
                }
                out.add_term(sigma.permute(w), (c * &norm).mul_root(sign));
            }
        }
        Ok(out)
    }

    /// `ϖ_r`: the image in `S^r(W*)`.
    pub fn project(&self) -> SymPolynomial {
        let chi = self.shape.chi();
        let mut out = SymPolynomial::zero(&self.shape);
        for (w, c) in &self.terms {
            if let Some((s, m)) = normalize_unchecked(chi, w.clone()) {
                out.add_term(m, c.mul_root(s));
            }
        }
        out
    }
}

/// `ϖ_r(e(r) · word)` for a single word of length `r`.
pub fn symmetrize(shape: &MixedShape, word: &[SymVariable], r: usize) -> Result<SymPolynomial> {
    if word.len() != r {
        return Err(Error::Structure(format!(
            "word of length {} is not of degree {r}",
            word.len()
        )));
    }
    if r > MAX_SYMMETRIZER_DEGREE {
        return Err(Error::Resource(format!(
            "symmetrizer on degree {r} exceeds {MAX_SYMMETRIZER_DEGREE}"
        )));
    }
    Ok(SymTensor::word(shape, word.to_vec(), CycloRational::one())?
        .symmetrizer()?
        .project())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteAbelianGroup;
    use proptest::prelude::*;

    fn super11() -> MixedShape {
        let space = GradedSpace::from_residues(Bicharacter::super_sign(), &["0", "1"]).unwrap();
        MixedShape::new(space, vec![(1, 1)]).unwrap()
    }

    fn klein_shape() -> MixedShape {
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let chi = Bicharacter::new(g, vec![vec![1, 1], vec![1, 1]]).unwrap();
        let space = GradedSpace::from_residues(chi, &["0,0", "0,1", "1,0"]).unwrap();
        MixedShape::new(space, vec![(1, 0), (1, 1)]).unwrap()
    }

    fn z3_shape() -> MixedShape {
        let g = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        let chi = Bicharacter::new(g, vec![vec![0, 1], vec![2, 0]]).unwrap();
        let space = GradedSpace::from_residues(chi, &["0,0", "0,1", "1,0"]).unwrap();
        MixedShape::new(space, vec![(1, 1), (0, 1)]).unwrap()
    }

    /// Coefficient of `t^r` in `(1-t)^{-E} (1+t)^O`.
    fn gf_dim(even: usize, odd: usize, r: usize) -> usize {
        let binom = |n: usize, k: usize| -> usize {
            if k > n {
                return 0;
            }
            (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
        };
        (0..=r.min(odd))
            .map(|j| {
                let rest = r - j;
                let sym = if even == 0 {
                    (rest == 0) as usize
                } else {
                    binom(even + rest - 1, rest)
                };
                sym * binom(odd, j)
            })
            .sum()
    }

    #[test]
    fn variable_degrees_and_text() {
        let shape = super11();
        let v = shape.variable(0, &[0], &[1]).unwrap();
        assert!(v.is_odd());
        assert_eq!(v.to_string(), "T(1)[1]^[2]");
        assert_eq!(shape.parse_variable("T(1)[1]^[2]").unwrap(), v);
        assert!(shape.parse_variable("T(2)[1]^[2]").is_err());
        assert!(shape.variable(0, &[0, 1], &[1]).is_err());
    }

    #[test]
    fn normalize_examples() {
        let shape = super11();
        let a = shape.variable(0, &[0], &[1]).unwrap();
        let b = shape.variable(0, &[1], &[0]).unwrap();
        let even = shape.variable(0, &[0], &[0]).unwrap();
        let (s, _) = sym_normalize(&shape, &[even.clone(), even.clone()])
            .unwrap()
            .unwrap();
        assert!(s.is_one());
        let (s1, m1) = sym_normalize(&shape, &[a.clone(), b.clone()])
            .unwrap()
            .unwrap();
        let (s2, m2) = sym_normalize(&shape, &[b.clone(), a.clone()])
            .unwrap()
            .unwrap();
        assert_eq!(m1, m2);
        assert!((s1 * s2.inverse()).is_minus_one());
        assert!(sym_normalize(&shape, &[a.clone(), a]).unwrap().is_none());
    }

    #[test]
    fn basis_counts() {
        let shape = super11();
        assert_eq!(enumerate_sym_basis(&shape, 0, None).len(), 1);
        assert_eq!(enumerate_sym_basis(&shape, 1, None).len(), 4);
        for r in 0..5 {
            assert_eq!(
                enumerate_sym_basis(&shape, r, None).len(),
                gf_dim(2, 2, r),
                "r = {r}"
            );
        }
        // purely odd variables: the exterior square
        let space =
            GradedSpace::from_residues(Bicharacter::super_sign(), &["1", "1", "1"]).unwrap();
        let odd = MixedShape::new(space, vec![(1, 0)]).unwrap();
        assert_eq!(enumerate_sym_basis(&odd, 2, None).len(), 3);
    }

    #[test]
    fn basis_splits_by_multidegree() {
        let shape = klein_shape();
        let vars = shape.variables();
        let odd = vars.iter().filter(|v| v.is_odd()).count();
        for r in 0..4 {
            let all = enumerate_sym_basis(&shape, r, None);
            assert_eq!(all.len(), gf_dim(vars.len() - odd, odd, r));
            let split: usize = (0..=r)
                .map(|a| enumerate_sym_basis(&shape, r, Some(&[a, r - a])).len())
                .sum();
            assert_eq!(split, all.len());
            // direct sum: convolution of the summand dimensions
            let dims = |i: usize, k: usize| {
                let vs = shape.summand_variables(i);
                let o = vs.iter().filter(|v| v.is_odd()).count();
                gf_dim(vs.len() - o, o, k)
            };
            let conv: usize = (0..=r).map(|a| dims(0, a) * dims(1, r - a)).sum();
            assert_eq!(conv, all.len());
        }
    }

    #[test]
    fn symmetrize_examples() {
        let shape = super11();
        let a = shape.variable(0, &[0], &[1]).unwrap();
        let p = symmetrize(&shape, std::slice::from_ref(&a), 1).unwrap();
        assert_eq!(p, SymPolynomial::from_variable(&shape, &a).unwrap());
        assert!(symmetrize(&shape, &[a.clone(), a.clone()], 2)
            .unwrap()
            .is_zero());
        assert!(matches!(
            symmetrize(&shape, &vec![a; 7], 7),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let shape = z3_shape();
        let vars = shape.variables();
        let mut p = SymPolynomial::zero(&shape);
        p.add_sequence(
            &[vars[3].clone(), vars[1].clone()],
            &CycloRational::parse("1 + 2*z", 3).unwrap(),
        )
        .unwrap();
        p.add_sequence(&[vars[5].clone()], &CycloRational::from_integer(-2))
            .unwrap();
        assert_eq!(SymPolynomial::parse(&shape, &p.to_string()).unwrap(), p);
    }

    fn arb_word(
        shape: MixedShape,
        len: std::ops::Range<usize>,
    ) -> impl Strategy<Value = Vec<SymVariable>> {
        let vars = shape.variables();
        prop::collection::vec(prop::sample::select(vars), len)
    }

    fn arb_poly(shape: MixedShape) -> impl Strategy<Value = SymPolynomial> {
        let s2 = shape.clone();
        prop::collection::vec((arb_word(shape, 0..3), -3i64..4), 0..4).prop_map(move |terms| {
            let mut p = SymPolynomial::zero(&s2);
            for (w, c) in terms {
                p.add_sequence(&w, &CycloRational::from_integer(c)).unwrap();
            }
            p
        })
    }

    proptest! {
        #[test]
        fn symmetrizer_idempotent(w in arb_word(z3_shape(), 0..4)) {
            let shape = z3_shape();
            let t = SymTensor::word(&shape, w.clone(), CycloRational::one()).unwrap();
            let once = t.symmetrizer().unwrap();
            prop_assert_eq!(once.symmetrizer().unwrap(), once.clone());
            prop_assert_eq!(once.project(), t.project());
        }

        #[test]
        fn normalize_idempotent(w in arb_word(klein_shape(), 0..5)) {
            let shape = klein_shape();
            if let Some((_, m)) = sym_normalize(&shape, &w).unwrap() {
                let (s, again) = sym_normalize(&shape, &m.expanded()).unwrap().unwrap();
                prop_assert!(s.is_one());
                prop_assert_eq!(again, m);
            }
        }

        #[test]
        fn multiply_axioms(p in arb_poly(z3_shape()), q in arb_poly(z3_shape()), r in arb_poly(z3_shape())) {
            let one = SymPolynomial::one(&z3_shape());
            prop_assert_eq!(one.multiply(&q).unwrap(), q.clone());
            let pq_r = p.multiply(&q).unwrap().multiply(&r).unwrap();
            let p_qr = p.multiply(&q.multiply(&r).unwrap()).unwrap();
            prop_assert_eq!(pq_r, p_qr);
        }

        #[test]
        fn eps_commutative(w1 in arb_word(z3_shape(), 1..3), w2 in arb_word(z3_shape(), 1..3)) {
            let shape = z3_shape();
            let mut p = SymPolynomial::zero(&shape);
            p.add_sequence(&w1, &CycloRational::one()).unwrap();
            let mut q = SymPolynomial::zero(&shape);
            q.add_sequence(&w2, &CycloRational::one()).unwrap();
            if let (Some(dp), Some(dq)) = (p.degree().unwrap(), q.degree().unwrap()) {
                let e = shape.chi().value(dp, dq);
                let pq = p.multiply(&q).unwrap();
                prop_assert_eq!(pq.clone(), q.multiply(&p).unwrap().scale(&e));
                let mut md = p.multidegrees()[0].clone();
                for (a, b) in md.iter_mut().zip(&q.multidegrees()[0]) {
                    *a += b;
                }
                if !pq.is_zero() {
                    prop_assert_eq!(pq.multidegrees(), vec![md]);
                }
            }
        }
    }
}
