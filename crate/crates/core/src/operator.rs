//! Operators on `U = V ⊗ Λ_ε` as matrices with `Λ_ε` entries.
//!
//! `T(e_j) = Σ_i e_i T_ij`, coordinates on the right, so composition is the plain
//! matrix product.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::CycloRational;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::lambda::{EpsAlgebra, EpsElement, Homogeneity};
use crate::linalg;
use crate::tensor::GradedSpace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedOperator {
    space: GradedSpace,
    alg: EpsAlgebra,
    entries: Vec<Vec<EpsElement>>,
}

impl GradedOperator {
    pub fn zero(space: &GradedSpace, alg: &EpsAlgebra) -> Self {
        let d = space.dim();
        GradedOperator {
            space: space.clone(),
            alg: alg.clone(),
            entries: vec![vec![alg.zero(); d]; d],
        }
    }

    pub fn identity(space: &GradedSpace, alg: &EpsAlgebra) -> Self {
        let mut t = Self::zero(space, alg);
        for i in 0..space.dim() {
            t.entries[i][i] = alg.one();
        }
        t
    }

    /// `E_ij`: sends `e_j` to `e_i`.
    pub fn matrix_unit(space: &GradedSpace, alg: &EpsAlgebra, i: usize, j: usize) -> Result<Self> {
        if i >= space.dim() || j >= space.dim() {
            return Err(Error::Structure(format!(
                "matrix unit ({}, {}) out of range",
                i + 1,
                j + 1
            )));
        }
        let mut t = Self::zero(space, alg);
        t.entries[i][j] = alg.one();
        Ok(t)
    }

    pub fn from_entries(
        space: &GradedSpace,
        alg: &EpsAlgebra,
        entries: Vec<Vec<EpsElement>>,
    ) -> Result<Self> {
        let d = space.dim();
        if entries.len() != d || entries.iter().any(|r| r.len() != d) {
            return Err(Error::Structure(format!("operator matrix must be {d}x{d}")));
        }
        if entries.iter().flatten().any(|e| e.algebra() != alg) || space.chi() != alg.chi() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(GradedOperator {
            space: space.clone(),
            alg: alg.clone(),
            entries,
        })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn algebra(&self) -> &EpsAlgebra {
        &self.alg
    }

    pub fn entry(&self, i: usize, j: usize) -> &EpsElement {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<EpsElement>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    /// Degree `α` with `|T_ij| = α + |e_j| - |e_i|` for every nonzero entry.
    pub fn degree(&self) -> Result<Option<GroupElement>> {
        let g = self.space.chi().group();
        let mut alpha = None;
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let d = match e.degree() {
                    Homogeneity::Zero => continue,
                    Homogeneity::Homogeneous(d) => d,
                    Homogeneity::Inhomogeneous => {
                        return Err(Error::Inhomogeneous(format!(
                            "entry ({}, {}) = {e}",
                            i + 1,
                            j + 1
                        )))
                    }
                };
                let a = g.add(g.sub(d, self.space.degree(j)), self.space.degree(i));
                match alpha {
                    None => alpha = Some(a),
                    Some(prev) if prev != a => {
                        return Err(Error::Inhomogeneous(format!(
                            "entry ({}, {}) has the wrong degree",
                            i + 1,
                            j + 1
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(alpha)
    }

    /// Member of `M_ε(U)`: every nonzero entry has degree `|e_j| - |e_i|`.
    pub fn is_degree_preserving(&self) -> bool {
        matches!(self.degree(), Ok(None)) || matches!(self.degree(), Ok(Some(a)) if a.is_identity())
    }

    fn check(&self, other: &GradedOperator) -> Result<()> {
        if self.space != other.space || self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &GradedOperator) -> Result<GradedOperator> {
        self.check(other)?;
        let mut out = self.clone();
        for (row, orow) in out.entries.iter_mut().zip(&other.entries) {
            for (x, y) in row.iter_mut().zip(orow) {
                *x = &*x + y;
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &GradedOperator) -> Result<GradedOperator> {
        self.checked_add(&other.scale(&CycloRational::from_integer(-1)))
    }

    pub fn scale(&self, c: &CycloRational) -> GradedOperator {
        let mut out = self.clone();
        for x in out.entries.iter_mut().flatten() {
            *x = x.scale(c);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedOperator) -> Result<GradedOperator> {
        self.check(other)?;
        let d = self.space.dim();
        let mut out = Self::zero(&self.space, &self.alg);
        for i in 0..d {
            for j in 0..d {
                let mut acc = self.alg.zero();
                for k in 0..d {
                    if self.entries[i][k].is_zero() || other.entries[k][j].is_zero() {
                        continue;
                    }
                    acc = &acc + &self.entries[i][k].checked_mul(&other.entries[k][j])?;
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    /// `T(Σ_j e_j v_j)` as right coordinates.
    pub fn apply(&self, coords: &[EpsElement]) -> Result<Vec<EpsElement>> {
        if coords.len() != self.space.dim() {
            return Err(Error::Structure(
                "coordinate vector has the wrong length".into(),
            ));
        }
        let mut out = Vec::with_capacity(coords.len());
        for row in &self.entries {
            let mut acc = self.alg.zero();
            for (t, v) in row.iter().zip(coords) {
                acc = &acc + &t.checked_mul(v)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Constant part of each entry.
    pub fn constant_part(&self) -> Vec<Vec<CycloRational>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.constant_term()).collect())
            .collect()
    }

    /// `T⁻¹ = D⁻¹ Σ_j (-N D⁻¹)^j` with `D` the constant part; the series stops because
    /// `N` has no constant terms and words above the truncation vanish.
    pub fn invert(&self) -> Result<GradedOperator> {
        if !self.is_degree_preserving() {
            return Err(Error::NotDegreePreserving(
                "only operators in M_eps(U) are inverted".into(),
            ));
        }
        let dc = self.constant_part();
        let dinv = linalg::invert(&dc)
            .ok_or_else(|| Error::Singular("constant part is not invertible".into()))?;
        let lift = |m: &Vec<Vec<CycloRational>>| -> GradedOperator {
            let entries = m
                .iter()
                .map(|row| row.iter().map(|c| self.alg.constant(c.clone())).collect())
                .collect();
            GradedOperator {
                space: self.space.clone(),
                alg: self.alg.clone(),
                entries,
            }
        };
        let d = lift(&dc);
        let dinv = lift(&dinv);
        let n = self.checked_sub(&d)?;
        let x = n.compose(&dinv)?.scale(&CycloRational::from_integer(-1));
        let mut sum = Self::identity(&self.space, &self.alg);
        let mut power = sum.clone();
        for _ in 0..=self.alg.truncation() {
            power = power.compose(&x)?;
            if power.is_zero() {
                break;
            }
            sum = sum.checked_add(&power)?;
        }
        let inv = dinv.compose(&sum)?;
        if self.compose(&inv)? != Self::identity(&self.space, &self.alg) {
            return Err(Error::Contract(
                "Neumann series did not produce an inverse".into(),
            ));
        }
        Ok(inv)
    }
}

/// `[x, y]_ε = xy - ε(α, β) yx` for homogeneous `x`, `y` of degrees `α`, `β`.
pub fn color_bracket(x: &GradedOperator, y: &GradedOperator) -> Result<GradedOperator> {
    let (Some(a), Some(b)) = (x.degree()?, y.degree()?) else {
        return Ok(GradedOperator::zero(&x.space, &x.alg));
    };
    let e = x.space.chi().epsilon(a, b).to_cyclo();
    x.compose(y)?.checked_sub(&y.compose(x)?.scale(&e))
}

/// Random element of `GL_ε(U)`: an invertible block-diagonal rational part plus
/// single-generator entries of the matching degrees.
pub fn random_gl_epsilon(
    space: &GradedSpace,
    alg: &EpsAlgebra,
    seed: u64,
) -> Result<GradedOperator> {
    random_gl_epsilon_with(space, alg, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_gl_epsilon_with<R: Rng>(
    space: &GradedSpace,
    alg: &EpsAlgebra,
    rng: &mut R,
) -> Result<GradedOperator> {
    if space.chi() != alg.chi() {
        return Err(Error::AlgebraMismatch);
    }
    let d = space.dim();
    let g = space.chi().group();
    let mut t = GradedOperator::zero(space, alg);
    // Blocks of equal degree are contiguous because degrees follow the fixed order.
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && space.degree(end) == space.degree(start) {
            end += 1;
        }
        let size = end - start;
        // L·U with L unit lower triangular and U upper triangular with nonzero diagonal.
        let mut lower = vec![vec![0i64; size]; size];
        let mut upper = vec![vec![0i64; size]; size];
        for i in 0..size {
            lower[i][i] = 1;
            for j in 0..i {
                lower[i][j] = rng.random_range(-2..=2);
            }
            upper[i][i] = *[1, -1, 2, -2, 3]
                .get(rng.random_range(0..5))
                .expect("in range");
            for j in i + 1..size {
                upper[i][j] = rng.random_range(-2..=2);
            }
        }
        for i in 0..size {
            for j in 0..size {
                let v: i64 = (0..size).map(|k| lower[i][k] * upper[k][j]).sum();
                t.entries[start + i][start + j] = alg.constant(CycloRational::from_integer(v));
            }
        }
        start = end;
    }
    for i in 0..d {
        for j in 0..d {
            let need = g.sub(space.degree(j), space.degree(i));
            for k in 0..alg.num_generators() {
                if alg.degrees()[k] != need || !rng.random_bool(0.5) {
                    continue;
                }
                let c = *[1i64, -1, 2, -2]
                    .get(rng.random_range(0..4))
                    .expect("in range");
                let term = alg.generator(k)?.scale(&CycloRational::from_integer(c));
                t.entries[i][j] = &t.entries[i][j] + &term;
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Bicharacter, FiniteAbelianGroup};

    fn setup() -> (GradedSpace, EpsAlgebra) {
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let chi = Bicharacter::new(g, vec![vec![1, 1], vec![1, 1]]).unwrap();
        let space = GradedSpace::from_residues(chi.clone(), &["0,0", "0,1", "1,0"]).unwrap();
        let alg = EpsAlgebra::with_pools(chi, 2, 3).unwrap();
        (space, alg)
    }

    #[test]
    fn identity_inverse() {
        let (s, a) = setup();
        let id = GradedOperator::identity(&s, &a);
        assert_eq!(id.invert().unwrap(), id);
    }

    #[test]
    fn diagonal_inverse_is_reciprocal() {
        let (s, a) = setup();
        let mut t = GradedOperator::identity(&s, &a);
        t.entries[1][1] = a.constant(CycloRational::from_integer(4));
        let inv = t.invert().unwrap();
        assert_eq!(
            inv.entry(1, 1),
            &a.constant(CycloRational::from_fraction(1, 4).unwrap())
        );
    }

    #[test]
    fn random_elements_invert() {
        let (s, a) = setup();
        for seed in 0..5 {
            let t = random_gl_epsilon(&s, &a, seed).unwrap();
            assert!(t.is_degree_preserving());
            let inv = t.invert().unwrap();
            assert_eq!(inv.compose(&t).unwrap(), GradedOperator::identity(&s, &a));
        }
    }

    #[test]
    fn non_degree_preserving_rejected() {
        let (s, a) = setup();
        let e = GradedOperator::matrix_unit(&s, &a, 0, 1).unwrap();
        assert!(matches!(e.invert(), Err(Error::NotDegreePreserving(_))));
    }

    #[test]
    fn bracket_axioms_on_matrix_units() {
        let (s, a) = setup();
        let chi = s.chi().clone();
        let units: Vec<GradedOperator> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| GradedOperator::matrix_unit(&s, &a, i, j).unwrap())
            .collect();
        for x in &units {
            for y in &units {
                let (dx, dy) = (x.degree().unwrap().unwrap(), y.degree().unwrap().unwrap());
                let lhs = color_bracket(x, y).unwrap();
                let rhs = color_bracket(y, x).unwrap().scale(&-chi.value(dx, dy));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
