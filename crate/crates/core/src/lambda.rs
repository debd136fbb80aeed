//! Truncated ε-commutative algebras `Λ_ε` on homogeneous generators.
//!
//! Generators `x_i` carry arbitrary degrees and obey `x_i x_j = ε(|x_i|, |x_j|) x_j x_i`;
//! odd generators square to zero. Words longer than the truncation bound are dropped,
//! which keeps every computation finite while leaving all low-degree identities intact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::cyclo::{CycloRational, RootOfUnity};
use crate::error::{Error, Result};
use crate::group::{Bicharacter, GroupElement};

/// Largest truncation accepted; words above a few letters make every product explode.
pub const MAX_TRUNCATION: usize = 12;

#[derive(Debug)]
struct AlgebraInner {
    chi: Bicharacter,
    degrees: Vec<GroupElement>,
    odd: Vec<bool>,
    truncation: usize,
}

/// Generator set plus truncation bound. Cheap to clone.
#[derive(Debug, Clone)]
pub struct EpsAlgebra(Arc<AlgebraInner>);

impl PartialEq for EpsAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.chi == other.0.chi
                && self.0.degrees == other.0.degrees
                && self.0.truncation == other.0.truncation)
    }
}

impl Eq for EpsAlgebra {}

impl EpsAlgebra {
    pub fn new(chi: Bicharacter, degrees: Vec<GroupElement>, truncation: usize) -> Result<Self> {
        if truncation > MAX_TRUNCATION {
            return Err(Error::Resource(format!(
                "truncation {truncation} exceeds {MAX_TRUNCATION}"
            )));
        }
        if let Some(g) = degrees.iter().find(|g| g.code() >= chi.group().order()) {
            return Err(Error::Structure(format!(
                "generator degree code {} not in the group",
                g.code()
            )));
        }
        let odd = degrees.iter().map(|&g| chi.is_odd(g)).collect();
        Ok(EpsAlgebra(Arc::new(AlgebraInner {
            chi,
            degrees,
            odd,
            truncation,
        })))
    }

    /// `per_degree` generators of every degree, laid out in rounds so that each
    /// filtration level `Λ(N)` for `N` a multiple of `|G|` sees all degrees equally.
    pub fn with_pools(chi: Bicharacter, per_degree: usize, truncation: usize) -> Result<Self> {
        let mut order: Vec<GroupElement> = chi.group().elements().collect();
        order.sort_by_key(|&g| chi.order_rank(g));
        let degrees = (0..per_degree)
            .flat_map(|_| order.iter().copied())
            .collect();
        Self::new(chi, degrees, truncation)
    }

    /// Same generators followed by `extra`, with a new truncation.
    pub fn extend(&self, extra: &[GroupElement], truncation: usize) -> Result<Self> {
        let mut degrees = self.0.degrees.clone();
        degrees.extend_from_slice(extra);
        Self::new(self.0.chi.clone(), degrees, truncation)
    }

    pub fn chi(&self) -> &Bicharacter {
        &self.0.chi
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.0.degrees
    }

    pub fn num_generators(&self) -> usize {
        self.0.degrees.len()
    }

    pub fn truncation(&self) -> usize {
        self.0.truncation
    }

    pub fn degree_of(&self, i: usize) -> Result<GroupElement> {
        self.0
            .degrees
            .get(i)
            .copied()
            .ok_or(Error::UnknownGenerator(i))
    }

    pub fn word_degree(&self, word: &EpsWord) -> GroupElement {
        let g = self.0.chi.group();
        g.sum(word.0.iter().map(|&i| self.0.degrees[i as usize]))
    }

    /// First generator of the given degree with index above `after`.
    pub fn fresh_generator(&self, degree: GroupElement, after: Option<usize>) -> Option<usize> {
        let start = after.map_or(0, |a| a + 1);
        (start..self.num_generators()).find(|&i| self.0.degrees[i] == degree)
    }

    pub fn zero(&self) -> EpsElement {
        EpsElement {
            alg: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: CycloRational) -> EpsElement {
        let mut e = self.zero();
        if !c.is_zero() {
            e.terms.insert(EpsWord::empty(), c);
        }
        e
    }

    pub fn one(&self) -> EpsElement {
        self.constant(CycloRational::one())
    }

    pub fn generator(&self, i: usize) -> Result<EpsElement> {
        self.degree_of(i)?;
        let mut e = self.zero();
        if self.truncation() >= 1 {
            e.terms
                .insert(EpsWord(vec![i as u32]), CycloRational::one());
        }
        Ok(e)
    }

    /// Normal form of a product of generators: the sign collected by sorting,
    /// or `None` when the word vanishes (odd repeat or above the truncation).
    pub fn normal_order(&self, word: &[usize]) -> Result<Option<(RootOfUnity, EpsWord)>> {
        if let Some(&bad) = word.iter().find(|&&i| i >= self.num_generators()) {
            return Err(Error::UnknownGenerator(bad));
        }
        if word.len() > self.truncation() {
            return Ok(None);
        }
        let mut w: Vec<u32> = word.iter().map(|&i| i as u32).collect();
        let mut sign = RootOfUnity::one(self.0.chi.modulus());
        for i in 1..w.len() {
            let mut j = i;
            while j > 0 && w[j - 1] > w[j] {
                let (a, b) = (w[j - 1] as usize, w[j] as usize);
                sign *= self.0.chi.epsilon(self.0.degrees[a], self.0.degrees[b]);
                w.swap(j - 1, j);
                j -= 1;
            }
        }
        if w.windows(2)
            .any(|p| p[0] == p[1] && self.0.odd[p[0] as usize])
        {
            return Ok(None);
        }
        Ok(Some((sign, EpsWord(w))))
    }

    /// Product of two normal-ordered words: merge sign, or `None` if it vanishes.
    fn merge(&self, u: &EpsWord, v: &EpsWord) -> Option<(RootOfUnity, EpsWord)> {
        if u.len() + v.len() > self.truncation() {
            return None;
        }
        if u.is_empty() {
            return Some((RootOfUnity::one(self.0.chi.modulus()), v.clone()));
        }
        if v.is_empty() {
            return Some((RootOfUnity::one(self.0.chi.modulus()), u.clone()));
        }
        let mut sign = RootOfUnity::one(self.0.chi.modulus());
        for &b in &v.0 {
            for &a in &u.0 {
                if a > b {
                    sign *= self
                        .0
                        .chi
                        .epsilon(self.0.degrees[a as usize], self.0.degrees[b as usize]);
                } else if a == b && self.0.odd[a as usize] {
                    return None;
                }
            }
        }
        let mut w = Vec::with_capacity(u.len() + v.len());
        let (mut i, mut j) = (0, 0);
        while i < u.len() || j < v.len() {
            if j == v.len() || (i < u.len() && u.0[i] <= v.0[j]) {
                w.push(u.0[i]);
                i += 1;
            } else {
                w.push(v.0[j]);
                j += 1;
            }
        }
        Some((sign, EpsWord(w)))
    }

    /// Parses `c * x1.x3 + (1 + z) * x2 + c` with `z = ζ_m`, `m` the bicharacter modulus.
    pub fn parse_element(&self, text: &str) -> Result<EpsElement> {
        let mut out = self.zero();
        let text = text.trim();
        if text == "0" {
            return Ok(out);
        }
        for term in split_top_level(text, " + ") {
            let term = term.trim();
            let (coef, word) = match rsplit_top_level(term, " * ") {
                Some((c, w)) if w.trim_start().starts_with('x') => (c, Some(w)),
                _ if term.starts_with('x') => ("1", Some(term)),
                _ => (term, None),
            };
            let c = CycloRational::parse(coef, self.chi().modulus())?;
            let gens = match word {
                None => Vec::new(),
                Some(w) => w
                    .trim()
                    .split('.')
                    .map(|x| {
                        x.strip_prefix('x')
                            .and_then(|n| n.parse::<usize>().ok())
                            .filter(|&n| n >= 1)
                            .map(|n| n - 1)
                            .ok_or_else(|| Error::Parse(format!("bad generator {x:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            if let Some((s, w)) = self.normal_order(&gens)? {
                out.add_term(w, c.mul_root(s));
            }
        }
        Ok(out)
    }
}

pub(crate) fn split_top_level<'a>(text: &'a str, sep: &str) -> Vec<&'a str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && text[i..].starts_with(sep) {
            parts.push(&text[start..i]);
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    parts.push(&text[start..]);
    parts
}

fn rsplit_top_level<'a>(text: &'a str, sep: &str) -> Option<(&'a str, &'a str)> {
    let parts = split_top_level(text, sep);
    if parts.len() < 2 {
        return None;
    }
    let head_len: usize = parts[..parts.len() - 1]
        .iter()
        .map(|p| p.len())
        .sum::<usize>()
        + sep.len() * (parts.len() - 2);
    Some((&text[..head_len], parts[parts.len() - 1]))
}

/// A normal-ordered word: generator indices in nondecreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EpsWord(Vec<u32>);

impl EpsWord {
    pub fn empty() -> Self {
        EpsWord(Vec::new())
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for EpsWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.0.iter().map(|i| format!("x{}", i + 1)).collect();
        f.write_str(&names.join("."))
    }
}

/// Degree information of an [`EpsElement`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(GroupElement),
    Inhomogeneous,
}

/// A finite combination of normal-ordered words with cyclotomic coefficients.
#[derive(Debug, Clone)]
pub struct EpsElement {
    alg: EpsAlgebra,
    terms: BTreeMap<EpsWord, CycloRational>,
}

impl PartialEq for EpsElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.terms == other.terms
    }
}

impl Eq for EpsElement {}

impl EpsElement {
    pub fn algebra(&self) -> &EpsAlgebra {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&EpsWord, &CycloRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &EpsWord) -> CycloRational {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(CycloRational::zero)
    }

    pub fn constant_term(&self) -> CycloRational {
        self.coefficient(&EpsWord::empty())
    }

    pub(crate) fn add_term(&mut self, word: EpsWord, c: CycloRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
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

    pub fn degree(&self) -> Homogeneity {
        let mut deg = None;
        for w in self.terms.keys() {
            let d = self.alg.word_degree(w);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return Homogeneity::Inhomogeneous,
                _ => {}
            }
        }
        deg.map_or(Homogeneity::Zero, Homogeneity::Homogeneous)
    }

    /// Degree of a nonzero homogeneous element; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<GroupElement>> {
        match self.degree() {
            Homogeneity::Zero => Ok(None),
            Homogeneity::Homogeneous(g) => Ok(Some(g)),
            Homogeneity::Inhomogeneous => Err(Error::Inhomogeneous(self.to_string())),
        }
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<GroupElement, EpsElement> {
        let mut out: BTreeMap<GroupElement, EpsElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            let d = self.alg.word_degree(w);
            out.entry(d)
                .or_insert_with(|| self.alg.zero())
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// True when only generators with index below `n` occur.
    pub fn filtration_member(&self, n: usize) -> bool {
        self.terms.keys().all(|w| w.indices().all(|i| i < n))
    }

    /// One more than the largest generator index used, 0 for constants.
    pub fn generator_bound(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|w| w.indices())
            .map(|i| i + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &CycloRational) -> EpsElement {
        let mut out = self.alg.zero();
        if c.is_zero() {
            return out;
        }
        for (w, x) in &self.terms {
            out.terms.insert(w.clone(), x * c);
        }
        out
    }

    pub fn mul_root(&self, r: RootOfUnity) -> EpsElement {
        if r.is_one() {
            return self.clone();
        }
        let mut out = self.alg.zero();
        for (w, x) in &self.terms {
            out.terms.insert(w.clone(), x.mul_root(r));
        }
        out
    }

    fn check(&self, other: &EpsElement) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &EpsElement) -> Result<EpsElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &EpsElement) -> Result<EpsElement> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &EpsElement) -> Result<EpsElement> {
        self.check(other)?;
        let mut out = self.alg.zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if let Some((s, w)) = self.alg.merge(u, v) {
                    out.add_term(w, (a * b).mul_root(s));
                }
            }
        }
        Ok(out)
    }

    /// Re-embeds into an algebra whose generators extend this one's.
    pub fn embed(&self, target: &EpsAlgebra) -> Result<EpsElement> {
        let n = self.alg.num_generators();
        if target.chi() != self.alg.chi() || target.degrees().get(..n) != Some(self.alg.degrees()) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = target.zero();
        for (w, c) in &self.terms {
            if w.len() <= target.truncation() {
                out.terms.insert(w.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Same text as `Display`, with an explicit `z = zeta(m)` header line.
    pub fn to_text_with_header(&self) -> String {
        format!("z = zeta({})\n{}", self.alg.chi().modulus(), self)
    }
}

pub(crate) fn format_coefficient(c: &CycloRational, modulus: u32) -> String {
    let c = c.lift_to(modulus).unwrap_or_else(|_| c.clone());
    let text = c.to_string();
    if c.coeffs()
        .iter()
        .filter(|x| !num_traits::Zero::is_zero(*x))
        .count()
        > 1
    {
        format!("({text})")
    } else {
        text
    }
}

impl fmt::Display for EpsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let m = self.alg.chi().modulus();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let c = format_coefficient(c, m);
                if w.is_empty() {
                    c
                } else {
                    format!("{c} * {w}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Neg for &EpsElement {
    type Output = EpsElement;

    fn neg(self) -> EpsElement {
        let mut out = self.alg.zero();
        for (w, c) in &self.terms {
            out.terms.insert(w.clone(), -c);
        }
        out
    }
}

impl Neg for EpsElement {
    type Output = EpsElement;

    fn neg(self) -> EpsElement {
        -&self
    }
}

macro_rules! checked_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        /// Panics when the operands belong to different algebras; use the checked
        /// variant to get an error instead.
        impl<'a> $tr<&'a EpsElement> for &'a EpsElement {
            type Output = EpsElement;
            fn $m(self, rhs: &EpsElement) -> EpsElement {
                self.$checked(rhs).expect("operands in the same algebra")
            }
        }
        impl $tr for EpsElement {
            type Output = EpsElement;
            fn $m(self, rhs: EpsElement) -> EpsElement {
                self.$checked(&rhs).expect("operands in the same algebra")
            }
        }
    };
}

checked_binop!(Add, add, checked_add);
checked_binop!(Sub, sub, checked_sub);
checked_binop!(Mul, mul, checked_mul);
