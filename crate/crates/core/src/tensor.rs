//! Graded spaces, mixed tensors with `Λ_ε` coefficients, and the actions on them.
//!
//! A tensor term is stored in canonical form: a word of basis letters followed by a
//! single `Λ_ε` coefficient on the right. Moving a coefficient `λ` to the right past
//! a letter of degree `h` costs `ε(|λ|, h)`; dual letters `e_i*` have degree `-|e_i|`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cyclo::{CycloRational, RootOfUnity};
use crate::error::{Error, Result};
use crate::group::{Bicharacter, GroupElement};
use crate::lambda::{EpsAlgebra, EpsElement};
use crate::operator::GradedOperator;
use crate::perm::Permutation;

#[derive(Debug)]
struct SpaceInner {
    chi: Bicharacter,
    degrees: Vec<GroupElement>,
    even: usize,
}

/// `V` with a homogeneous basis whose degrees follow the fixed order of `G`.
#[derive(Debug, Clone)]
pub struct GradedSpace(Arc<SpaceInner>);

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.chi == other.0.chi && self.0.degrees == other.0.degrees)
    }
}

impl Eq for GradedSpace {}

impl GradedSpace {
    pub fn new(chi: Bicharacter, degrees: Vec<GroupElement>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::Structure(
                "graded space must have positive dimension".into(),
            ));
        }
        if let Some(g) = degrees.iter().find(|g| g.code() >= chi.group().order()) {
            return Err(Error::Structure(format!(
                "basis degree code {} not in the group",
                g.code()
            )));
        }
        if let Some(i) = (1..degrees.len())
            .find(|&i| chi.order_rank(degrees[i - 1]) > chi.order_rank(degrees[i]))
        {
            let g = chi.group();
            return Err(Error::Structure(format!(
                "basis degrees must list even before odd in the fixed group order: {} precedes {}",
                g.format_element(degrees[i - 1]),
                g.format_element(degrees[i])
            )));
        }
        let even = degrees.iter().filter(|&&g| !chi.is_odd(g)).count();
        Ok(GradedSpace(Arc::new(SpaceInner { chi, degrees, even })))
    }

    /// Parses residue strings such as `["0,0", "1,0"]`.
    pub fn from_residues(chi: Bicharacter, degrees: &[&str]) -> Result<Self> {
        let degs = degrees
            .iter()
            .map(|d| chi.group().parse_element(d))
            .collect::<Result<Vec<_>>>()?;
        Self::new(chi, degs)
    }

    pub fn chi(&self) -> &Bicharacter {
        &self.0.chi
    }

    pub fn dim(&self) -> usize {
        self.0.degrees.len()
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.0.degrees
    }

    pub fn degree(&self, i: usize) -> GroupElement {
        self.0.degrees[i]
    }

    /// Number of even basis vectors.
    pub fn m(&self) -> usize {
        self.0.even
    }

    /// Number of odd basis vectors.
    pub fn n(&self) -> usize {
        self.dim() - self.0.even
    }

    pub fn letter_degree(&self, letter: Letter) -> GroupElement {
        let h = self.0.degrees[letter.index];
        match letter.variance {
            Variance::Primal => h,
            Variance::Dual => self.0.chi.group().neg(h),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variance {
    /// A factor of `U`.
    Primal,
    /// A factor of `U*`.
    Dual,
}

impl Variance {
    pub fn symbol(self) -> &'static str {
        match self {
            Variance::Primal => "∘",
            Variance::Dual => "*",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub variance: Variance,
}

impl Letter {
    pub fn primal(index: usize) -> Self {
        Letter {
            index,
            variance: Variance::Primal,
        }
    }

    pub fn dual(index: usize) -> Self {
        Letter {
            index,
            variance: Variance::Dual,
        }
    }
}

/// `γ(I, σ) = ∏ ε(I_i, I_j)` over the inversions `i < j`, `σ(i) > σ(j)`.
pub fn gamma(
    chi: &Bicharacter,
    degrees: &[GroupElement],
    sigma: &Permutation,
) -> Result<RootOfUnity> {
    if degrees.len() != sigma.len() {
        return Err(Error::Structure(format!(
            "degree tuple of length {} for a permutation of {}",
            degrees.len(),
            sigma.len()
        )));
    }
    let mut r = RootOfUnity::one(chi.modulus());
    for (i, j) in sigma.inversions() {
        r *= chi.epsilon(degrees[i], degrees[j]);
    }
    Ok(r)
}

/// A homogeneous-variance tensor: a sum of basis words with right `Λ_ε` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedTensor {
    space: GradedSpace,
    alg: EpsAlgebra,
    signature: Vec<Variance>,
    terms: BTreeMap<Vec<usize>, EpsElement>,
}

impl GradedTensor {
    pub fn zero(space: &GradedSpace, alg: &EpsAlgebra, signature: Vec<Variance>) -> Self {
        GradedTensor {
            space: space.clone(),
            alg: alg.clone(),
            signature,
            terms: BTreeMap::new(),
        }
    }

    fn check_alg(space: &GradedSpace, alg: &EpsAlgebra) -> Result<()> {
        if space.chi() != alg.chi() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// `e_{i_1} ⊗ … ⊗ e_{i_k} · λ` with the given variances.
    pub fn basis_word(
        space: &GradedSpace,
        alg: &EpsAlgebra,
        signature: Vec<Variance>,
        indices: Vec<usize>,
        coeff: EpsElement,
    ) -> Result<Self> {
        Self::check_alg(space, alg)?;
        if indices.len() != signature.len() {
            return Err(Error::Structure(
                "index tuple and variance signature differ in length".into(),
            ));
        }
        if let Some(&i) = indices.iter().find(|&&i| i >= space.dim()) {
            return Err(Error::Structure(format!(
                "basis index {} out of range",
                i + 1
            )));
        }
        if coeff.algebra() != alg {
            return Err(Error::AlgebraMismatch);
        }
        let mut t = Self::zero(space, alg, signature);
        t.add_term(indices, coeff);
        Ok(t)
    }

    /// `Σ_i e_i λ_i` from right coordinates.
    pub fn vector(space: &GradedSpace, alg: &EpsAlgebra, coords: &[EpsElement]) -> Result<Self> {
        Self::check_alg(space, alg)?;
        if coords.len() != space.dim() {
            return Err(Error::Structure(format!(
                "vector needs {} coordinates",
                space.dim()
            )));
        }
        let mut t = Self::zero(space, alg, vec![Variance::Primal]);
        for (i, c) in coords.iter().enumerate() {
            t.add_term(vec![i], c.clone());
        }
        Ok(t)
    }

    /// The functional `α` with `α(e_j) = a_j`, from its left coordinates.
    pub fn covector(space: &GradedSpace, alg: &EpsAlgebra, left: &[EpsElement]) -> Result<Self> {
        Self::check_alg(space, alg)?;
        if left.len() != space.dim() {
            return Err(Error::Structure(format!(
                "covector needs {} coordinates",
                space.dim()
            )));
        }
        let chi = space.chi();
        let mut t = Self::zero(space, alg, vec![Variance::Dual]);
        for (j, a) in left.iter().enumerate() {
            let dual_deg = space.letter_degree(Letter::dual(j));
            for (deg, part) in a.components() {
                t.add_term(vec![j], part.mul_root(chi.epsilon(deg, dual_deg)));
            }
        }
        Ok(t)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn algebra(&self) -> &EpsAlgebra {
        &self.alg
    }

    pub fn signature(&self) -> &[Variance] {
        &self.signature
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &EpsElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[usize]) -> EpsElement {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(|| self.alg.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, word: Vec<usize>, c: EpsElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn letters<'a>(&'a self, word: &'a [usize]) -> impl Iterator<Item = Letter> + 'a {
        word.iter()
            .zip(&self.signature)
            .map(|(&index, &variance)| Letter { index, variance })
    }

    pub fn word_degrees(&self, word: &[usize]) -> Vec<GroupElement> {
        self.letters(word)
            .map(|l| self.space.letter_degree(l))
            .collect()
    }

    /// Total degree of a homogeneous tensor; `Ok(None)` for zero.
    pub fn degree(&self) -> Result<Option<GroupElement>> {
        let g = self.space.chi().group();
        let mut deg = None;
        for (w, c) in &self.terms {
            let cd = c
                .homogeneous_degree()?
                .expect("stored coefficients are nonzero");
            let d = g.add(g.sum(self.word_degrees(w)), cd);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return Err(Error::Inhomogeneous(self.to_string())),
                _ => {}
            }
        }
        Ok(deg)
    }

    fn same_kind(&self, other: &GradedTensor) -> Result<()> {
        if self.space != other.space || self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        if self.signature != other.signature {
            return Err(Error::Variance(
                "tensors have different variance signatures".into(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &GradedTensor) -> Result<GradedTensor> {
        self.same_kind(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &GradedTensor) -> Result<GradedTensor> {
        self.checked_add(&other.scale(&CycloRational::from_integer(-1)))
    }

    pub fn scale(&self, c: &CycloRational) -> GradedTensor {
        let mut out = Self::zero(&self.space, &self.alg, self.signature.clone());
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.scale(c));
        }
        out
    }

    /// Right multiplication by `μ ∈ Λ_ε`.
    pub fn mul_right(&self, mu: &EpsElement) -> Result<GradedTensor> {
        let mut out = Self::zero(&self.space, &self.alg, self.signature.clone());
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.checked_mul(mu)?);
        }
        Ok(out)
    }

    /// `(w λ) ⊗ (w' λ') = ε(|λ|, |w'|) w w' λ λ'`.
    pub fn tensor_product(&self, other: &GradedTensor) -> Result<GradedTensor> {
        if self.space != other.space || self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        let chi = self.space.chi();
        let g = chi.group();
        let mut signature = self.signature.clone();
        signature.extend_from_slice(&other.signature);
        let mut out = Self::zero(&self.space, &self.alg, signature);
        for (w2, c2) in &other.terms {
            let d2 = g.sum(other.word_degrees(w2));
            for (w1, c1) in &self.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                for (deg, part) in c1.components() {
                    let moved = part.mul_root(chi.epsilon(deg, d2));
                    out.add_term(w.clone(), moved.checked_mul(c2)?);
                }
            }
        }
        Ok(out)
    }

    /// Canonical form of `(a_1 c_1) ⊗ … ⊗ (a_k c_k) · λ` for single letters `a_p` with
    /// right coefficients `c_p`.
    fn assemble(
        &self,
        signature: &[Variance],
        factors: &[(usize, EpsElement)],
        tail: &EpsElement,
    ) -> Result<Option<(Vec<usize>, EpsElement)>> {
        let chi = self.space.chi();
        let g = chi.group();
        let degs: Vec<GroupElement> = factors
            .iter()
            .zip(signature)
            .map(|(&(i, _), &variance)| self.space.letter_degree(Letter { index: i, variance }))
            .collect();
        let mut coeff = self.alg.one();
        for (p, (_, c)) in factors.iter().enumerate() {
            let after = g.sum(degs[p + 1..].iter().copied());
            let mut moved = self.alg.zero();
            for (deg, part) in c.components() {
                moved = &moved + &part.mul_root(chi.epsilon(deg, after));
            }
            coeff = coeff.checked_mul(&moved)?;
            if coeff.is_zero() {
                return Ok(None);
            }
        }
        let coeff = coeff.checked_mul(tail)?;
        if coeff.is_zero() {
            return Ok(None);
        }
        Ok(Some((factors.iter().map(|(i, _)| *i).collect(), coeff)))
    }

    /// `T` on primal factors and `α ↦ α ∘ T⁻¹` on dual factors.
    pub fn act_gl(&self, t: &GradedOperator, t_inv: &GradedOperator) -> Result<GradedTensor> {
        if t.space() != &self.space || t_inv.space() != &self.space || t.algebra() != &self.alg {
            return Err(Error::AlgebraMismatch);
        }
        let chi = self.space.chi();
        let d = self.space.dim();
        // Images of single letters as lists of (letter, right coefficient).
        let mut primal_img: Vec<Vec<(usize, EpsElement)>> = Vec::with_capacity(d);
        let mut dual_img: Vec<Vec<(usize, EpsElement)>> = Vec::with_capacity(d);
        for j in 0..d {
            primal_img.push(
                (0..d)
                    .map(|i| (i, t.entry(i, j).clone()))
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            );
            let mut img = Vec::new();
            for k in 0..d {
                let a = t_inv.entry(j, k);
                if a.is_zero() {
                    continue;
                }
                let dual_deg = self.space.letter_degree(Letter::dual(k));
                let mut right = self.alg.zero();
                for (deg, part) in a.components() {
                    right = &right + &part.mul_root(chi.epsilon(deg, dual_deg));
                }
                img.push((k, right));
            }
            dual_img.push(img);
        }
        let mut out = Self::zero(&self.space, &self.alg, self.signature.clone());
        for (w, lam) in &self.terms {
            let choices: Vec<&Vec<(usize, EpsElement)>> = self
                .letters(w)
                .map(|l| match l.variance {
                    Variance::Primal => &primal_img[l.index],
                    Variance::Dual => &dual_img[l.index],
                })
                .collect();
            let mut idx = vec![0usize; choices.len()];
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            'odometer: loop {
                let factors: Vec<(usize, EpsElement)> = idx
                    .iter()
                    .zip(&choices)
                    .map(|(&k, c)| c[k].clone())
                    .collect();
                if let Some((word, c)) = self.assemble(&self.signature, &factors, lam)? {
                    out.add_term(word, c);
                }
                let mut p = idx.len();
                loop {
                    if p == 0 {
                        break 'odometer;
                    }
                    p -= 1;
                    idx[p] += 1;
                    if idx[p] < choices[p].len() {
                        break;
                    }
                    idx[p] = 0;
                }
            }
        }
        Ok(out)
    }

    /// Contracts adjacent `(e_i*, e_j)` pairs with `δ_ij`; the signature must alternate `*, ∘`.
    pub fn contract_adjacent(&self) -> Result<EpsElement> {
        if !self.signature.len().is_multiple_of(2)
            || self
                .signature
                .chunks(2)
                .any(|p| p != [Variance::Dual, Variance::Primal])
        {
            return Err(Error::Variance(
                "contraction needs alternating (*, ∘) pairs".into(),
            ));
        }
        let mut out = self.alg.zero();
        for (w, c) in &self.terms {
            if w.chunks(2).all(|p| p[0] == p[1]) {
                out = &out + c;
            }
        }
        Ok(out)
    }

    /// Applies `τ` to `(α_1 … α_k, w_1 … w_k)` and contracts the pairs.
    pub fn ev_pair(&self) -> Result<EpsElement> {
        let k = self.signature.len() / 2;
        let expected: Vec<Variance> = std::iter::repeat_n(Variance::Dual, k)
            .chain(std::iter::repeat_n(Variance::Primal, k))
            .collect();
        if self.signature != expected {
            return Err(Error::Variance(
                "ev expects k dual factors followed by k primal factors".into(),
            ));
        }
        act_perm(&tau(k), self)?.contract_adjacent()
    }
}

/// `τ ∈ S_{2k}` with `(τ(1), …, τ(2k)) = (1, 3, …, 2k-1, 2, 4, …, 2k)`.
pub fn tau(k: usize) -> Permutation {
    let images = (0..2 * k)
        .map(|i| if i < k { 2 * i } else { 2 * (i - k) + 1 })
        .collect();
    Permutation::from_images(images).expect("tau is a permutation")
}

/// Swaps `2p` and `2p+1` for every pair.
pub fn nu(k: usize) -> Permutation {
    Permutation::from_images((0..2 * k).map(|i| i ^ 1).collect()).expect("nu is a permutation")
}

/// The Koszul action: slot `i` moves to slot `σ(i)`, with sign `γ(deg t, σ)`.
pub fn act_perm(sigma: &Permutation, t: &GradedTensor) -> Result<GradedTensor> {
    if sigma.len() != t.signature.len() {
        return Err(Error::Structure(format!(
            "permutation of {} acting on a tensor of length {}",
            sigma.len(),
            t.signature.len()
        )));
    }
    let chi = t.space.chi();
    let mut out = GradedTensor::zero(&t.space, &t.alg, sigma.permute(&t.signature));
    for (w, c) in &t.terms {
        let sign = gamma(chi, &t.word_degrees(w), sigma)?;
        out.add_term(sigma.permute(w), c.mul_root(sign));
    }
    Ok(out)
}

/// `g.(v_1 ⊗ … ⊗ v_k) = ∏ ε(g, g_i) (v_1 ⊗ … ⊗ v_k)` on the letters of each term.
pub fn eta_action(g: GroupElement, t: &GradedTensor) -> GradedTensor {
    let chi = t.space.chi();
    let mut out = GradedTensor::zero(&t.space, &t.alg, t.signature.clone());
    for (w, c) in &t.terms {
        let r = chi.epsilon_sum(g, t.word_degrees(w));
        out.add_term(w.clone(), c.mul_root(r));
    }
    out
}

/// The twisted-derivation action of a homogeneous `x` on a primal word.
pub fn psi_derivation(x: &GradedOperator, t: &GradedTensor) -> Result<GradedTensor> {
    if x.space() != &t.space || x.algebra() != &t.alg {
        return Err(Error::AlgebraMismatch);
    }
    if t.signature.iter().any(|&v| v != Variance::Primal) {
        return Err(Error::Variance(
            "the derivation action expects a primal word".into(),
        ));
    }
    let Some(alpha) = x.degree()? else {
        return Ok(GradedTensor::zero(&t.space, &t.alg, t.signature.clone()));
    };
    let chi = t.space.chi();
    let g = chi.group();
    let mut out = GradedTensor::zero(&t.space, &t.alg, t.signature.clone());
    for (w, lam) in &t.terms {
        let degs = t.word_degrees(w);
        for i in 0..w.len() {
            let before = chi.epsilon_sum(alpha, degs[..i].iter().copied());
            let after = g.sum(degs[i + 1..].iter().copied());
            for a in 0..t.space.dim() {
                let entry = x.entry(a, w[i]);
                if entry.is_zero() {
                    continue;
                }
                let mut moved = t.alg.zero();
                for (deg, part) in entry.components() {
                    moved = &moved + &part.mul_root(chi.epsilon(deg, after));
                }
                let mut word = w.clone();
                word[i] = a;
                out.add_term(word, moved.checked_mul(lam)?.mul_root(before));
            }
        }
    }
    Ok(out)
}

impl fmt::Display for GradedTensor {
    /// One term per line: `(λ) * e1 ⊗ e2* ⊗ …`, in word order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let lines: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let letters: Vec<String> = self
                    .letters(w)
                    .map(|l| match l.variance {
                        Variance::Primal => format!("e{}", l.index + 1),
                        Variance::Dual => format!("e{}*", l.index + 1),
                    })
                    .collect();
                format!("({c}) * {}", letters.join(" ⊗ "))
            })
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteAbelianGroup;

    fn super_space() -> GradedSpace {
        GradedSpace::from_residues(Bicharacter::super_sign(), &["0", "1"]).unwrap()
    }

    fn alg(space: &GradedSpace) -> EpsAlgebra {
        EpsAlgebra::with_pools(space.chi().clone(), 2, 3).unwrap()
    }

    #[test]
    fn space_ordering_checked() {
        let chi = Bicharacter::super_sign();
        assert!(GradedSpace::from_residues(chi.clone(), &["1", "0"]).is_err());
        let s = GradedSpace::from_residues(chi, &["0", "0", "1"]).unwrap();
        assert_eq!((s.m(), s.n()), (2, 1));
    }

    #[test]
    fn gamma_examples() {
        let chi = Bicharacter::super_sign();
        let odd = chi.group().element(&[1]).unwrap();
        let swap = Permutation::parse("(1 2)", None).unwrap();
        assert!(gamma(&chi, &[odd, odd], &swap).unwrap().is_minus_one());
        assert!(gamma(&chi, &[odd, odd], &Permutation::identity(2))
            .unwrap()
            .is_one());
        assert!(gamma(&chi, &[odd], &swap).is_err());
    }

    #[test]
    fn transposition_of_odd_vectors() {
        let s = super_space();
        let a = alg(&s);
        let t = GradedTensor::basis_word(&s, &a, vec![Variance::Primal; 2], vec![1, 1], a.one())
            .unwrap();
        let swapped = act_perm(&Permutation::parse("(1 2)", None).unwrap(), &t).unwrap();
        assert_eq!(swapped, t.scale(&CycloRational::from_integer(-1)));
        let g = s.chi().group().element(&[1]).unwrap();
        assert_eq!(eta_action(g, &t), t);
    }

    #[test]
    fn tau_and_nu() {
        assert_eq!(tau(3).to_string(), "[1,3,5,2,4,6]");
        assert_eq!(nu(2).to_string(), "[2,1,4,3]");
    }

    #[test]
    fn ev_on_basis() {
        let s = super_space();
        let a = alg(&s);
        for i in 0..2 {
            for j in 0..2 {
                let t = GradedTensor::basis_word(
                    &s,
                    &a,
                    vec![Variance::Dual, Variance::Primal],
                    vec![i, j],
                    a.one(),
                )
                .unwrap();
                let v = t.ev_pair().unwrap();
                assert_eq!(v, if i == j { a.one() } else { a.zero() });
            }
        }
    }

    #[test]
    fn covector_pairs_with_left_coordinates() {
        let g = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        let chi = Bicharacter::new(g, vec![vec![0, 1], vec![2, 0]]).unwrap();
        let s = GradedSpace::from_residues(chi.clone(), &["0,0", "1,0"]).unwrap();
        let a = EpsAlgebra::with_pools(chi, 1, 4).unwrap();
        let x = |i| a.generator(i).unwrap();
        // α(e_1) = x2, α(e_2) = x5; u = e_1 x4 + e_2 x7
        let alpha = GradedTensor::covector(&s, &a, &[x(1), x(4)]).unwrap();
        let u = GradedTensor::vector(&s, &a, &[x(3), x(6)]).unwrap();
        let v = alpha
            .tensor_product(&u)
            .unwrap()
            .contract_adjacent()
            .unwrap();
        assert_eq!(v, &(&x(1) * &x(3)) + &(&x(4) * &x(6)));
    }
}
