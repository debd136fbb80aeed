//! The algebra `U_1^1 = U ⊗ U*`, its trace, and trace monomials `tr_σ`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lambda::{EpsAlgebra, EpsElement};
use crate::perm::Permutation;
use crate::picture::{Bounds, PictureShape};
use crate::restitution::{restitute, W0Point};
use crate::tensor::{GradedSpace, Letter};

/// `Σ e_a ⊗ e_b* · c_ab` with right coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct U11Element {
    space: GradedSpace,
    alg: EpsAlgebra,
    terms: BTreeMap<(usize, usize), EpsElement>,
}

impl U11Element {
    pub fn zero(space: &GradedSpace, alg: &EpsAlgebra) -> Result<Self> {
        if space.chi() != alg.chi() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(U11Element {
            space: space.clone(),
            alg: alg.clone(),
            terms: BTreeMap::new(),
        })
    }

    /// `Σ_i e_i ⊗ e_i*`.
    pub fn identity(space: &GradedSpace, alg: &EpsAlgebra) -> Result<Self> {
        let mut out = Self::zero(space, alg)?;
        for i in 0..space.dim() {
            out.add_term(i, i, alg.one())?;
        }
        Ok(out)
    }

    /// `e_a ⊗ e_b* · c`, 0-based.
    pub fn unit(
        space: &GradedSpace,
        alg: &EpsAlgebra,
        a: usize,
        b: usize,
        c: EpsElement,
    ) -> Result<Self> {
        let mut out = Self::zero(space, alg)?;
        out.add_term(a, b, c)?;
        Ok(out)
    }

    /// Summand `i` of a matrix-shaped point.
    pub fn from_point(point: &W0Point, i: usize) -> Result<Self> {
        let shape = point.shape();
        if shape.summands().get(i) != Some(&(1, 1)) {
            return Err(Error::ShapeMismatch(format!(
                "summand {} is not of type (1,1)",
                i + 1
            )));
        }
        let mut out = Self::zero(shape.space(), point.algebra())?;
        for (v, c) in point.coordinates().filter(|(v, _)| v.summand() == i) {
            out.add_term(v.lower()[0], v.upper()[0], c.clone())?;
        }
        Ok(out)
    }

    pub fn add_term(&mut self, a: usize, b: usize, c: EpsElement) -> Result<()> {
        let d = self.space.dim();
        if a >= d || b >= d {
            return Err(Error::Structure(format!(
                "index out of range for dimension {d}"
            )));
        }
        if c.algebra() != &self.alg {
            return Err(Error::AlgebraMismatch);
        }
        let sum = self
            .terms
            .get(&(a, b))
            .map_or(Ok(c.clone()), |x| x.checked_add(&c))?;
        if sum.is_zero() {
            self.terms.remove(&(a, b));
        } else {
            self.terms.insert((a, b), sum);
        }
        Ok(())
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn entry(&self, a: usize, b: usize) -> EpsElement {
        self.terms
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| self.alg.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &EpsElement)> {
        self.terms.iter()
    }

    fn check_same(&self, other: &U11Element) -> Result<()> {
        if self.space != other.space || self.alg != other.alg {
            return Err(Error::ShapeMismatch(
                "elements of U_1^1 over different spaces".into(),
            ));
        }
        Ok(())
    }

    /// `(v ⊗ α).(w ⊗ β) = v α(w) ⊗ β`, extended over right coefficients.
    pub fn compose(&self, other: &U11Element) -> Result<U11Element> {
        self.check_same(other)?;
        let chi = self.space.chi();
        let g = chi.group();
        let mut out = Self::zero(&self.space, &self.alg)?;
        for (&(a, b), c) in &self.terms {
            for (&(a2, b2), c2) in self.terms_from(other, b) {
                let past = g.sub(self.space.degree(a2), self.space.degree(b2));
                let mut moved = self.alg.zero();
                for (deg, part) in c.components() {
                    moved = moved.checked_add(&part.mul_root(chi.epsilon(deg, past)))?;
                }
                out.add_term(a, b2, moved.checked_mul(c2)?)?;
            }
        }
        Ok(out)
    }

    fn terms_from<'a>(
        &self,
        other: &'a U11Element,
        row: usize,
    ) -> impl Iterator<Item = (&'a (usize, usize), &'a EpsElement)> {
        other.terms.range((row, 0)..(row + 1, 0))
    }

    /// `tr(v ⊗ α) = ε(|v|, |α|) α(v)`.
    pub fn trace(&self) -> Result<EpsElement> {
        let chi = self.space.chi();
        let mut out = self.alg.zero();
        for (&(a, b), c) in &self.terms {
            if a == b {
                let r = chi.epsilon(
                    self.space.degree(a),
                    self.space.letter_degree(Letter::dual(a)),
                );
                out = out.checked_add(&c.mul_root(r))?;
            }
        }
        Ok(out)
    }

    /// Matrix entries `M_aj = ε(|c_aj|, h_j) c_aj`, the left-coefficient form of the operator.
    pub fn to_matrix(&self) -> Vec<Vec<EpsElement>> {
        let chi = self.space.chi();
        let d = self.space.dim();
        let mut m = vec![vec![self.alg.zero(); d]; d];
        for (&(a, j), c) in &self.terms {
            let h = self.space.degree(j);
            let mut x = self.alg.zero();
            for (deg, part) in c.components() {
                x = &x + &part.mul_root(chi.epsilon(deg, h));
            }
            m[a][j] = x;
        }
        m
    }
}

impl fmt::Display for U11Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (&(a, b), c) in &self.terms {
            writeln!(f, "({c}) * e{} ⊗ e{}*", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// `Σ_i θ(i) a_ii`, with `θ = -1` on odd basis vectors.
pub fn supertrace(space: &GradedSpace, matrix: &[Vec<EpsElement>]) -> Result<EpsElement> {
    let d = space.dim();
    if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
        return Err(Error::ShapeMismatch(format!(
            "supertrace needs a {d}×{d} matrix"
        )));
    }
    let mut out = matrix
        .first()
        .and_then(|r| r.first())
        .map(|x| x.algebra().zero())
        .ok_or_else(|| Error::ShapeMismatch("empty matrix".into()))?;
    for (i, row) in matrix.iter().enumerate() {
        out = if space.chi().is_odd(space.degree(i)) {
            out.checked_sub(&row[i])?
        } else {
            out.checked_add(&row[i])?
        };
    }
    Ok(out)
}

/// `∏_cycles tr(A_{f(i_1)} ⋯ A_{f(i_r)})` over an explicit cycle list (0-based positions).
pub fn trace_monomial(
    cycles: &[Vec<usize>],
    f: &[usize],
    mats: &[U11Element],
) -> Result<EpsElement> {
    let first = mats
        .first()
        .ok_or_else(|| Error::Structure("no operators given".into()))?;
    let mut out = first.alg.one();
    for cycle in cycles {
        let mut chain: Option<U11Element> = None;
        for &pos in cycle {
            let idx = *f.get(pos).ok_or_else(|| {
                Error::Structure(format!("position {} has no assignment", pos + 1))
            })?;
            let a = mats
                .get(idx)
                .ok_or_else(|| Error::Structure(format!("no operator A_{}", idx + 1)))?;
            chain = Some(match chain {
                None => a.clone(),
                Some(p) => p.compose(a)?,
            });
        }
        if let Some(p) = chain {
            out = out.checked_mul(&p.trace()?)?;
        }
    }
    Ok(out)
}

/// Compares `F(φ_σ)(u)` with `tr` over the cycles of `σ⁻¹` on a matrix-shaped point.
pub fn trace_match(
    p: &PictureShape,
    sigma: &Permutation,
    point: &W0Point,
    bounds: &Bounds,
) -> Result<bool> {
    if p.shape().summands().iter().any(|&bt| bt != (1, 1)) {
        return Err(Error::ShapeMismatch(
            "trace_match needs every summand of type (1,1)".into(),
        ));
    }
    let phi = p.build_phi(sigma, bounds)?;
    let lhs = restitute(&phi.polynomial, point)?;
    let mats: Vec<U11Element> = (0..p.shape().s())
        .map(|i| U11Element::from_point(point, i))
        .collect::<Result<_>>()?;
    let rhs = trace_monomial(&sigma.inverse().cycles(), p.copies(), &mats)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloRational;
    use crate::group::Bicharacter;
    use crate::sym::MixedShape;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn super_space(degs: &[&str]) -> GradedSpace {
        GradedSpace::from_residues(Bicharacter::super_sign(), degs).unwrap()
    }

    #[test]
    fn identity_supertrace() {
        let v = super_space(&["0", "0", "1"]);
        let alg = EpsAlgebra::with_pools(v.chi().clone(), 1, 2).unwrap();
        let id = U11Element::identity(&v, &alg).unwrap();
        let one = alg.constant(CycloRational::one());
        assert_eq!(id.trace().unwrap(), one);
        assert_eq!(supertrace(&v, &id.to_matrix()).unwrap(), one);
    }

    #[test]
    fn units_compose() {
        let v = super_space(&["0", "0", "1"]);
        let alg = EpsAlgebra::with_pools(v.chi().clone(), 1, 2).unwrap();
        let a = U11Element::unit(&v, &alg, 0, 1, alg.one()).unwrap();
        let b = U11Element::unit(&v, &alg, 1, 2, alg.one()).unwrap();
        assert_eq!(
            a.compose(&b).unwrap(),
            U11Element::unit(&v, &alg, 0, 2, alg.one()).unwrap()
        );
        assert!(b.compose(&a).unwrap().terms().next().is_none());
    }

    #[test]
    fn cyclic_on_degree_zero() {
        let v = super_space(&["0", "1"]);
        let shape = MixedShape::new(v.clone(), vec![(1, 1), (1, 1)]).unwrap();
        let alg = EpsAlgebra::with_pools(v.chi().clone(), 2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let u = W0Point::random(&shape, &alg, &mut rng).unwrap();
            let a = U11Element::from_point(&u, 0).unwrap();
            let b = U11Element::from_point(&u, 1).unwrap();
            assert_eq!(
                a.compose(&b).unwrap().trace().unwrap(),
                b.compose(&a).unwrap().trace().unwrap()
            );
            assert_eq!(a.trace().unwrap(), supertrace(&v, &a.to_matrix()).unwrap());
        }
    }

    #[test]
    fn monomials_and_match() {
        let v = super_space(&["0", "1"]);
        let alg = EpsAlgebra::with_pools(v.chi().clone(), 2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let one = MixedShape::new(v.clone(), vec![(1, 1)]).unwrap();
        let u = W0Point::random(&one, &alg, &mut rng).unwrap();
        let a = U11Element::from_point(&u, 0).unwrap();
        let t = a.trace().unwrap();
        assert_eq!(
            trace_monomial(&[vec![0], vec![1]], &[0, 0], std::slice::from_ref(&a)).unwrap(),
            t.checked_mul(&t).unwrap()
        );
        assert_eq!(
            trace_monomial(&[vec![0, 1]], &[0, 0], std::slice::from_ref(&a)).unwrap(),
            a.compose(&a).unwrap().trace().unwrap()
        );
        for mult in [vec![2], vec![3]] {
            let p = PictureShape::new(one.clone(), mult).unwrap();
            for sigma in Permutation::all(p.n()) {
                assert!(trace_match(&p, &sigma, &u, &Bounds::default()).unwrap());
            }
        }
        let non_matrix = MixedShape::new(v, vec![(2, 1), (0, 1)]).unwrap();
        let p = PictureShape::new(non_matrix.clone(), vec![1, 1]).unwrap();
        let z = W0Point::zero(&non_matrix, &alg).unwrap();
        assert!(trace_match(&p, &Permutation::identity(2), &z, &Bounds::default()).is_err());
    }
}
