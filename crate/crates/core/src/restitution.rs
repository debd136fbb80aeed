//! Restitution `F^r: S^r(W*) → (W_0 → Λ_ε)` and its injectivity certificate.
//!
//! A degree-`r` word `w_1 ⋯ w_r` of coordinate functions restitutes at `u ∈ W_0` to the
//! product `c_{w_1} ⋯ c_{w_r}` of the right coefficients of `u`. Every coordinate of `u` has
//! Λ_ε-degree opposite to its basis word, so the evaluation pairing carries no sign.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::cyclo::CycloRational;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::lambda::{EpsAlgebra, EpsElement};
use crate::operator::GradedOperator;
use crate::picture::PictureShape;
use crate::sym::{MixedShape, SymPolynomial, SymTensor, SymVariable};
use crate::tensor::{act_perm, GradedTensor, Variance};

/// A point of `W_0 = ⊕_i (U_{b_i}^{t_i})_0`, stored by coordinate variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct W0Point {
    shape: MixedShape,
    alg: EpsAlgebra,
    coords: BTreeMap<SymVariable, EpsElement>,
}

impl W0Point {
    pub fn zero(shape: &MixedShape, alg: &EpsAlgebra) -> Result<Self> {
        if shape.chi() != alg.chi() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(W0Point {
            shape: shape.clone(),
            alg: alg.clone(),
            coords: BTreeMap::new(),
        })
    }

    pub fn new(
        shape: &MixedShape,
        alg: &EpsAlgebra,
        coords: BTreeMap<SymVariable, EpsElement>,
    ) -> Result<Self> {
        let mut p = Self::zero(shape, alg)?;
        for (v, c) in coords {
            p.set(v, c)?;
        }
        Ok(p)
    }

    /// Sets the right coefficient of the basis word behind `v`.
    pub fn set(&mut self, v: SymVariable, c: EpsElement) -> Result<()> {
        if self
            .shape
            .variable(v.summand(), &v.lower(), &v.upper())
            .ok()
            .as_ref()
            != Some(&v)
        {
            return Err(Error::ShapeMismatch(format!(
                "variable {v} does not belong to this shape"
            )));
        }
        if c.algebra() != &self.alg {
            return Err(Error::AlgebraMismatch);
        }
        let want = self.shape.chi().group().neg(v.degree());
        if c.components().keys().any(|&g| g != want) {
            return Err(Error::NotInIdentityComponent(format!(
                "coefficient of {v} must have degree {}",
                self.shape.chi().group().format_element(want)
            )));
        }
        if c.is_zero() {
            self.coords.remove(&v);
        } else {
            self.coords.insert(v, c);
        }
        Ok(())
    }

    pub fn shape(&self) -> &MixedShape {
        &self.shape
    }

    pub fn algebra(&self) -> &EpsAlgebra {
        &self.alg
    }

    pub fn coordinate(&self, v: &SymVariable) -> EpsElement {
        self.coords
            .get(v)
            .cloned()
            .unwrap_or_else(|| self.alg.zero())
    }

    pub fn coordinates(&self) -> impl Iterator<Item = (&SymVariable, &EpsElement)> {
        self.coords.iter()
    }

    /// The summand-`i` component as a tensor with signature `∘^b *^t`.
    pub fn summand_tensor(&self, i: usize) -> Result<GradedTensor> {
        let &(b, t) = self
            .shape
            .summands()
            .get(i)
            .ok_or_else(|| Error::ShapeMismatch(format!("no summand {}", i + 1)))?;
        let signature: Vec<Variance> = std::iter::repeat_n(Variance::Primal, b)
            .chain(std::iter::repeat_n(Variance::Dual, t))
            .collect();
        let space = self.shape.space();
        let mut out = GradedTensor::zero(space, &self.alg, signature.clone());
        for (v, c) in self.coords.iter().filter(|(v, _)| v.summand() == i) {
            let mut word = v.lower();
            word.extend(v.upper());
            let term =
                GradedTensor::basis_word(space, &self.alg, signature.clone(), word, c.clone())?;
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Reads summand components back from tensors; fails off `W_0`.
    pub fn from_tensors(shape: &MixedShape, tensors: &[GradedTensor]) -> Result<Self> {
        if tensors.len() != shape.s() {
            return Err(Error::ShapeMismatch(format!(
                "{} tensors for {} summands",
                tensors.len(),
                shape.s()
            )));
        }
        let alg = tensors.first().map(|t| t.algebra().clone());
        let Some(alg) = alg else {
            return Self::zero(shape, &EpsAlgebra::new(shape.chi().clone(), vec![], 0)?);
        };
        let mut p = Self::zero(shape, &alg)?;
        for (i, t) in tensors.iter().enumerate() {
            let (b, tt) = shape.summands()[i];
            let expected: Vec<Variance> = std::iter::repeat_n(Variance::Primal, b)
                .chain(std::iter::repeat_n(Variance::Dual, tt))
                .collect();
            if t.signature() != expected.as_slice() {
                return Err(Error::Variance(format!(
                    "summand {} needs {b} primal then {tt} dual factors",
                    i + 1
                )));
            }
            if t.space() != shape.space() {
                return Err(Error::AlgebraMismatch);
            }
            for (w, c) in t.terms() {
                let v = shape.variable(i, &w[..b], &w[b..])?;
                p.set(v, c.clone())?;
            }
        }
        Ok(p)
    }

    /// `T.u` for `T ∈ GL_ε`, given with its inverse.
    pub fn act_gl(&self, t: &GradedOperator, t_inv: &GradedOperator) -> Result<W0Point> {
        let moved: Vec<GradedTensor> = (0..self.shape.s())
            .map(|i| self.summand_tensor(i)?.act_gl(t, t_inv))
            .collect::<Result<_>>()?;
        Self::from_tensors(&self.shape, &moved)
    }

    /// Random point: each coordinate mixes a scalar (degree ◦ only) with up to two
    /// generators of the required degree, small integer coefficients.
    pub fn random<R: Rng>(shape: &MixedShape, alg: &EpsAlgebra, rng: &mut R) -> Result<Self> {
        let mut p = Self::zero(shape, alg)?;
        let g = shape.chi().group();
        for v in shape.variables() {
            let want = g.neg(v.degree());
            let mut c = alg.zero();
            if want.is_identity() && rng.random_bool(0.7) {
                c = &c + &alg.constant(CycloRational::from_integer(rng.random_range(-3..=3)));
            }
            let pool: Vec<usize> = (0..alg.num_generators())
                .filter(|&x| alg.degrees()[x] == want)
                .collect();
            for &x in pool.choose_multiple(rng, 2) {
                if rng.random_bool(0.8) && alg.truncation() >= 1 {
                    let k = CycloRational::from_integer(rng.random_range(-3..=3));
                    c = &c + &alg.generator(x)?.scale(&k);
                }
            }
            p.set(v, c)?;
        }
        Ok(p)
    }

    /// `u_1^{⊗m_1} ⊗ ⋯ ⊗ u_s^{⊗m_s}` rearranged by `μ` into `U^{⊗N} ⊗ (U*)^{⊗N}`.
    pub fn picture_word(&self, p: &PictureShape) -> Result<GradedTensor> {
        if p.shape() != &self.shape {
            return Err(Error::ShapeMismatch(
                "picture shape differs from the point's shape".into(),
            ));
        }
        let parts: Vec<GradedTensor> = (0..self.shape.s())
            .map(|i| self.summand_tensor(i))
            .collect::<Result<_>>()?;
        let mut x = GradedTensor::basis_word(
            self.shape.space(),
            &self.alg,
            vec![],
            vec![],
            self.alg.one(),
        )?;
        for &i in p.copies() {
            x = x.tensor_product(&parts[i])?;
        }
        act_perm(&p.mu(), &x)
    }

    /// Parses a point file:
    ///
    /// ```text
    /// generators = 0 1 1
    /// truncation = 3
    /// T(1)[1]^[1] = 2 + x1.x2
    /// ```
    ///
    /// Generator degrees are group elements in residue notation; a `z = zeta(m)` line is accepted
    /// and must match the bicharacter modulus.
    pub fn parse(shape: &MixedShape, text: &str) -> Result<Self> {
        let chi = shape.chi();
        let mut degrees: Vec<GroupElement> = Vec::new();
        let mut truncation = 4;
        let mut entries = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse(format!("line {}: {msg}", no + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "z" => {
                    let m = value
                        .strip_prefix("zeta(")
                        .and_then(|r| r.strip_suffix(')'))
                        .and_then(|m| m.trim().parse::<u32>().ok())
                        .ok_or_else(|| err(format!("bad root of unity {value:?}")))?;
                    if m != chi.modulus() {
                        return Err(err(format!(
                            "z = zeta({m}) but the bicharacter needs zeta({})",
                            chi.modulus()
                        )));
                    }
                }
                "generators" => {
                    degrees = value
                        .split_whitespace()
                        .map(|g| chi.group().parse_element(g))
                        .collect::<Result<_>>()
                        .map_err(|e| err(e.to_string()))?;
                }
                "truncation" => {
                    truncation = value
                        .parse()
                        .map_err(|_| err(format!("bad truncation {value:?}")))?;
                }
                _ => entries.push((no + 1, key.to_string(), value.to_string())),
            }
        }
        let alg = EpsAlgebra::new(chi.clone(), degrees, truncation)?;
        let mut p = Self::zero(shape, &alg)?;
        for (no, key, value) in entries {
            let at = |e: Error| Error::Parse(format!("line {no}: {e}"));
            let v = shape.parse_variable(&key).map_err(at)?;
            let c = alg.parse_element(&value).map_err(at)?;
            p.set(v, c).map_err(at)?;
        }
        Ok(p)
    }
}

impl fmt::Display for W0Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chi = self.shape.chi();
        writeln!(f, "z = zeta({})", chi.modulus())?;
        let gens: Vec<String> = self
            .alg
            .degrees()
            .iter()
            .map(|&g| chi.group().format_element(g))
            .collect();
        writeln!(f, "generators = {}", gens.join(" "))?;
        writeln!(f, "truncation = {}", self.alg.truncation())?;
        for (v, c) in &self.coords {
            writeln!(f, "{v} = {c}")?;
        }
        Ok(())
    }
}

fn word_value(point: &W0Point, word: &[SymVariable]) -> Result<EpsElement> {
    let mut acc = point.alg.one();
    for v in word {
        let c = point.coords.get(v);
        let Some(c) = c else {
            return Ok(point.alg.zero());
        };
        acc = acc.checked_mul(c)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

fn check_shape(shape: &MixedShape, point: &W0Point) -> Result<()> {
    if shape != &point.shape {
        return Err(Error::ShapeMismatch(
            "polynomial and point live on different shapes".into(),
        ));
    }
    Ok(())
}

/// `F^r(f)(u)` for a homogeneous `f`.
pub fn restitute(f: &SymPolynomial, point: &W0Point) -> Result<EpsElement> {
    check_shape(f.shape(), point)?;
    f.total_degree()?;
    let mut out = point.alg.zero();
    for (m, c) in f.terms() {
        let value = word_value(point, &m.expanded())?;
        if !value.is_zero() {
            out = out.checked_add(&value.scale(c))?;
        }
    }
    Ok(out)
}

/// `F^r` on a tensor representative in `(W*)^{⊗r}`, without passing to `S(W*)`.
pub fn restitute_tensor(t: &SymTensor, point: &W0Point) -> Result<EpsElement> {
    check_shape(t.shape(), point)?;
    let mut out = point.alg.zero();
    let mut len = None;
    for (w, c) in t.terms() {
        if *len.get_or_insert(w.len()) != w.len() {
            return Err(Error::Inhomogeneous(
                "tensor representative mixes word lengths".into(),
            ));
        }
        let value = word_value(point, w)?;
        if !value.is_zero() {
            out = out.checked_add(&value.scale(c))?;
        }
    }
    Ok(out)
}

/// `F(α with places i, i+1 exchanged)(v) = ε(|α_{i+1}|, |α_i|) F(α)(v)` at `v ∈ W_0`.
pub fn transposition_sign_check(word: &[SymVariable], i: usize, point: &W0Point) -> Result<bool> {
    if i + 1 >= word.len() {
        return Ok(true);
    }
    let chi = point.shape.chi();
    let mut swapped = word.to_vec();
    swapped.swap(i, i + 1);
    let lhs = word_value(point, &swapped)?;
    let rhs =
        word_value(point, word)?.mul_root(chi.epsilon(word[i + 1].degree(), word[i].degree()));
    Ok(lhs == rhs)
}

/// A point at which `f` does not vanish, with the value found there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub point: W0Point,
    pub value: EpsElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeOutcome {
    Certificate(Box<Certificate>),
    Refuted,
}

/// Evaluates `f` at the staircase point whose `j`-th coordinate is a fresh generator of the
/// opposite degree, one new filtration level per coordinate.
pub fn injectivity_probe(f: &SymPolynomial, truncation: usize) -> Result<ProbeOutcome> {
    let shape = f.shape();
    let r = f.total_degree()?.unwrap_or(0);
    if r > truncation {
        return Err(Error::Resource(format!(
            "degree {r} needs truncation at least {r}, have {truncation}"
        )));
    }
    let vars = shape.variables();
    let g = shape.chi().group();
    let degrees: Vec<GroupElement> = vars.iter().map(|v| g.neg(v.degree())).collect();
    let alg = EpsAlgebra::new(shape.chi().clone(), degrees, r)?;
    let mut point = W0Point::zero(shape, &alg)?;
    for (j, v) in vars.into_iter().enumerate() {
        point.set(v, alg.generator(j)?)?;
    }
    let value = restitute(f, &point)?;
    if value.is_zero() {
        return Ok(ProbeOutcome::Refuted);
    }
    Ok(ProbeOutcome::Certificate(Box::new(Certificate {
        point,
        value,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Bicharacter;
    use crate::tensor::GradedSpace;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn super_shape(summands: Vec<(usize, usize)>) -> MixedShape {
        MixedShape::new(
            GradedSpace::from_residues(Bicharacter::super_sign(), &["0", "1"]).unwrap(),
            summands,
        )
        .unwrap()
    }

    #[test]
    fn pairing_and_unit() {
        let s = super_shape(vec![(1, 1)]);
        let alg = EpsAlgebra::with_pools(s.chi().clone(), 1, 2).unwrap();
        let v = s.variable(0, &[0], &[0]).unwrap();
        let mut coords = BTreeMap::new();
        coords.insert(v.clone(), alg.one());
        let u = W0Point::new(&s, &alg, coords).unwrap();
        assert_eq!(restitute(&SymPolynomial::one(&s), &u).unwrap(), alg.one());
        assert_eq!(
            restitute(&SymPolynomial::from_variable(&s, &v).unwrap(), &u).unwrap(),
            alg.one()
        );
    }

    #[test]
    fn rejects_points_off_identity_component() {
        let s = super_shape(vec![(1, 1)]);
        let alg = EpsAlgebra::with_pools(s.chi().clone(), 1, 2).unwrap();
        let mut u = W0Point::zero(&s, &alg).unwrap();
        let odd = s.variable(0, &[0], &[1]).unwrap();
        assert!(matches!(
            u.set(odd, alg.one()),
            Err(Error::NotInIdentityComponent(_))
        ));
    }

    #[test]
    fn algebra_map_and_transpositions() {
        let s = super_shape(vec![(1, 1), (2, 1)]);
        let alg = EpsAlgebra::with_pools(s.chi().clone(), 2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let vars = s.variables();
        for _ in 0..10 {
            let u = W0Point::random(&s, &alg, &mut rng).unwrap();
            let a = vars.choose(&mut rng).unwrap();
            let b = vars.choose(&mut rng).unwrap();
            let fa = SymPolynomial::from_variable(&s, a).unwrap();
            let fb = SymPolynomial::from_variable(&s, b).unwrap();
            let prod = restitute(&fa.multiply(&fb).unwrap(), &u).unwrap();
            let split = restitute(&fa, &u)
                .unwrap()
                .checked_mul(&restitute(&fb, &u).unwrap())
                .unwrap();
            assert_eq!(prod, split);
            let word = vec![a.clone(), b.clone(), vars.choose(&mut rng).unwrap().clone()];
            for i in 0..3 {
                assert!(transposition_sign_check(&word, i, &u).unwrap());
            }
        }
    }

    #[test]
    fn point_text_round_trip() {
        let s = super_shape(vec![(1, 1)]);
        let alg = EpsAlgebra::with_pools(s.chi().clone(), 2, 3).unwrap();
        let u = W0Point::random(&s, &alg, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(W0Point::parse(&s, &u.to_string()).unwrap(), u);
        assert!(matches!(
            W0Point::parse(&s, "z = zeta(3)"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn staircase_certificates() {
        let s = super_shape(vec![(1, 1)]);
        let v = s.variable(0, &[0], &[0]).unwrap();
        let f = SymPolynomial::from_variable(&s, &v).unwrap();
        assert!(matches!(
            injectivity_probe(&f, 4).unwrap(),
            ProbeOutcome::Certificate(_)
        ));
        assert_eq!(
            injectivity_probe(&SymPolynomial::zero(&s), 4).unwrap(),
            ProbeOutcome::Refuted
        );
        let sq = f.multiply(&f).unwrap();
        assert!(matches!(injectivity_probe(&sq, 1), Err(Error::Resource(_))));
    }

    #[test]
    fn tensor_round_trip() {
        let s = super_shape(vec![(2, 1), (0, 1)]);
        let alg = EpsAlgebra::with_pools(s.chi().clone(), 2, 3).unwrap();
        let u = W0Point::random(&s, &alg, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let ts: Vec<GradedTensor> = (0..2).map(|i| u.summand_tensor(i).unwrap()).collect();
        assert_eq!(W0Point::from_tensors(&s, &ts).unwrap(), u);
    }
}
