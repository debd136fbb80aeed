//! Graded picture invariants `φ_σ`, built in closed form and through the composed maps.
//!
//! The closed form sums over upper-index tuples `r ∈ [d]^N`; copy `(i, j)` receives the
//! variable `T(i)` whose lower indices are the matching block of `r′ = r ∘ σ` and whose
//! upper indices are the matching block of `r`. Each term carries the coefficient
//! `γ(deg X, ν τ σ̂ μ) · p_ε(reversed w-degrees)` where `X` is the interleaved word of the
//! copies. The oracle path applies `μ`, `σ̂`, `τ`, `ν` as signed permutation actions to an
//! actual tensor and contracts.

use std::fmt;

use rayon::prelude::*;

use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};
use crate::group::{Bicharacter, GroupElement};
use crate::lambda::EpsElement;
use crate::perm::Permutation;
use crate::sym::{
    normalize_unchecked, tuples, MixedShape, SymMonomial, SymPolynomial, SymVariable,
};
use crate::tensor::{act_perm, gamma, nu, tau, GradedTensor, Variance};

/// Size limits for invariant construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_n: usize,
    pub max_dim: usize,
    pub truncation: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_n: 5,
            max_dim: 4,
            truncation: 4,
        }
    }
}

/// A mixed shape with multiplicities `(m_1, …, m_s)`; always balanced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PictureShape {
    shape: MixedShape,
    mult: Vec<usize>,
    n: usize,
    copies: Vec<usize>,
}

impl PictureShape {
    pub fn new(shape: MixedShape, mult: Vec<usize>) -> Result<Self> {
        if mult.len() != shape.s() {
            return Err(Error::ShapeMismatch(format!(
                "{} multiplicities for {} summands",
                mult.len(),
                shape.s()
            )));
        }
        let primal: usize = shape
            .summands()
            .iter()
            .zip(&mult)
            .map(|(&(b, _), &m)| m * b)
            .sum();
        let dual: usize = shape
            .summands()
            .iter()
            .zip(&mult)
            .map(|(&(_, t), &m)| m * t)
            .sum();
        if primal != dual {
            return Err(Error::Unbalanced { primal, dual });
        }
        let copies = mult
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| std::iter::repeat_n(i, m))
            .collect();
        Ok(PictureShape {
            shape,
            mult,
            n: primal,
            copies,
        })
    }

    pub fn shape(&self) -> &MixedShape {
        &self.shape
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    /// `N = Σ m_i b_i = Σ m_i t_i`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `k = Σ m_i`, the polynomial degree.
    pub fn k(&self) -> usize {
        self.copies.len()
    }

    /// Summand index of each copy, in order.
    pub fn copies(&self) -> &[usize] {
        &self.copies
    }

    /// Interleaved (copy by copy) to blocked (all primal, then all dual).
    pub fn mu(&self) -> Permutation {
        let mut images = Vec::with_capacity(2 * self.n);
        let (mut primal, mut dual) = (0, self.n);
        for &i in &self.copies {
            let (b, t) = self.shape.summands()[i];
            for _ in 0..b {
                images.push(primal);
                primal += 1;
            }
            for _ in 0..t {
                images.push(dual);
                dual += 1;
            }
        }
        Permutation::from_images(images).expect("mu is a permutation")
    }

    fn check_sigma(&self, sigma: &Permutation) -> Result<()> {
        if sigma.len() != self.n {
            return Err(Error::Structure(format!(
                "sigma must lie in S_{}, got S_{}",
                self.n,
                sigma.len()
            )));
        }
        Ok(())
    }

    /// Copy variables for lower tuple `r′` and upper tuple `r`.
    fn copy_variables(&self, lower: &[usize], upper: &[usize]) -> Vec<SymVariable> {
        let (mut pl, mut pu) = (0, 0);
        let mut out = Vec::with_capacity(self.k());
        for &i in &self.copies {
            let (b, t) = self.shape.summands()[i];
            out.push(
                self.shape
                    .variable(i, &lower[pl..pl + b], &upper[pu..pu + t])
                    .expect("indices in range"),
            );
            pl += b;
            pu += t;
        }
        out
    }

    /// The copy variables `w_1, …, w_k` attached to the upper tuple `r`.
    pub fn words(&self, sigma: &Permutation, upper: &[usize]) -> Result<Vec<SymVariable>> {
        self.check_sigma(sigma)?;
        let lower: Vec<usize> = (0..self.n).map(|j| upper[sigma.apply(j)]).collect();
        Ok(self.copy_variables(&lower, upper))
    }

    /// `γ(deg X, ν τ σ̂ μ) · p_ε(|w_k|, …, |w_1|)` for the lower-index tuple `I = r′`.
    pub fn coefficient(&self, sigma: &Permutation, lower: &[usize]) -> Result<RootOfUnity> {
        self.check_sigma(sigma)?;
        let d = self.shape.space().dim();
        if lower.len() != self.n || lower.iter().any(|&i| i >= d) {
            return Err(Error::Structure("index tuple out of range".into()));
        }
        let sinv = sigma.inverse();
        let upper: Vec<usize> = (0..self.n).map(|p| lower[sinv.apply(p)]).collect();
        Ok(self.coefficient_parts(sigma, lower, &upper))
    }

    fn coefficient_parts(
        &self,
        sigma: &Permutation,
        lower: &[usize],
        upper: &[usize],
    ) -> RootOfUnity {
        let space = self.shape.space();
        let chi = space.chi();
        let g = chi.group();
        let mut degs: Vec<GroupElement> = Vec::with_capacity(2 * self.n);
        let mut wdegs: Vec<GroupElement> = Vec::with_capacity(self.k());
        let (mut pl, mut pu) = (0, 0);
        for &i in &self.copies {
            let (b, t) = self.shape.summands()[i];
            let start = degs.len();
            degs.extend(lower[pl..pl + b].iter().map(|&l| space.degree(l)));
            degs.extend(upper[pu..pu + t].iter().map(|&u| g.neg(space.degree(u))));
            wdegs.push(g.sum(degs[start..].iter().copied()));
            pl += b;
            pu += t;
        }
        let pi = self.scaffold(sigma);
        let gam = gamma(chi, &degs, &pi).expect("sizes agree");
        wdegs.reverse();
        gam * p_eps(chi, &wdegs)
    }

    /// `ν ∘ τ ∘ σ̂ ∘ μ`.
    fn scaffold(&self, sigma: &Permutation) -> Permutation {
        let sh = sigma_hat(sigma, self.n);
        let inner = sh.compose(&self.mu()).expect("sizes agree");
        nu(self.n)
            .compose(&tau(self.n).compose(&inner).expect("sizes agree"))
            .expect("sizes agree")
    }

    /// `φ_σ` from the closed form.
    pub fn build_phi(&self, sigma: &Permutation, bounds: &Bounds) -> Result<PictureInvariant> {
        self.check_sigma(sigma)?;
        let d = self.shape.space().dim();
        if self.n > bounds.max_n {
            return Err(Error::Resource(format!(
                "N = {} exceeds the bound {}",
                self.n, bounds.max_n
            )));
        }
        if d > bounds.max_dim {
            return Err(Error::Resource(format!(
                "dim V = {d} exceeds the bound {}",
                bounds.max_dim
            )));
        }
        let chi = self.shape.chi();
        let terms: Vec<(SymMonomial, RootOfUnity)> = tuples(d, self.n)
            .into_par_iter()
            .filter_map(|upper| {
                let lower: Vec<usize> = (0..self.n).map(|j| upper[sigma.apply(j)]).collect();
                let vars = self.copy_variables(&lower, &upper);
                if has_odd_repeat(&vars) {
                    return None;
                }
                let c = self.coefficient_parts(sigma, &lower, &upper);
                normalize_unchecked(chi, vars).map(|(s, m)| (m, c * s))
            })
            .collect();
        let mut polynomial = SymPolynomial::zero(&self.shape);
        for (m, c) in terms {
            polynomial.add_term(m, c.to_cyclo());
        }
        Ok(PictureInvariant {
            shape: self.clone(),
            sigma: sigma.clone(),
            polynomial,
        })
    }

    /// `Θ(σ)` at a blocked argument in `U^{⊗N} ⊗ (U*)^{⊗N}`: `σ̂`, then `τ`, then `ν`,
    /// each as a signed permutation action, then contraction of the `(e_i*, e_i)` pairs.
    pub fn t_sigma_eval(&self, sigma: &Permutation, arg: &GradedTensor) -> Result<EpsElement> {
        self.check_sigma(sigma)?;
        let expected: Vec<Variance> = std::iter::repeat_n(Variance::Primal, self.n)
            .chain(std::iter::repeat_n(Variance::Dual, self.n))
            .collect();
        if arg.signature() != expected.as_slice() {
            return Err(Error::Variance(format!(
                "T_sigma expects {} primal then {} dual factors",
                self.n, self.n
            )));
        }
        let t = act_perm(&sigma_hat(sigma, self.n), arg)?;
        let t = act_perm(&tau(self.n), &t)?;
        let t = act_perm(&nu(self.n), &t)?;
        t.contract_adjacent()
    }
}

/// Balanced multiplicity tuples with `1 ≤ Σ m_i ≤ max_k` and `N ≤ max_n`, by total degree then lexicographically.
pub fn balanced_multiplicities(shape: &MixedShape, max_k: usize, max_n: usize) -> Vec<Vec<usize>> {
    let s = shape.s();
    let mut out = Vec::new();
    for k in 1..=max_k {
        let mut stack = vec![(Vec::with_capacity(s), k)];
        while let Some((prefix, left)) = stack.pop() {
            if prefix.len() == s {
                if left == 0 {
                    out.push(prefix);
                }
                continue;
            }
            for m in (0..=left).rev() {
                let mut next = prefix.clone();
                next.push(m);
                stack.push((next, left - m));
            }
        }
    }
    out.retain(|m| {
        let primal: usize = shape
            .summands()
            .iter()
            .zip(m)
            .map(|(&(b, _), &x)| b * x)
            .sum();
        let dual: usize = shape
            .summands()
            .iter()
            .zip(m)
            .map(|(&(_, t), &x)| t * x)
            .sum();
        primal == dual && primal <= max_n
    });
    out.sort_by(|a, b| (a.iter().sum::<usize>(), a).cmp(&(b.iter().sum::<usize>(), b)));
    out
}

fn has_odd_repeat(vars: &[SymVariable]) -> bool {
    vars.iter()
        .enumerate()
        .any(|(a, v)| v.is_odd() && vars[a + 1..].contains(v))
}

/// `σ` on the first `N` of `2N` slots, identity on the rest.
pub fn sigma_hat(sigma: &Permutation, n: usize) -> Permutation {
    sigma.extend(2 * n)
}

/// `∏_{i ≤ j} ε(d_i, d_j)`, diagonal included.
pub fn p_eps(chi: &Bicharacter, degrees: &[GroupElement]) -> RootOfUnity {
    let mut r = RootOfUnity::one(chi.modulus());
    for i in 0..degrees.len() {
        for j in i..degrees.len() {
            r *= chi.epsilon(degrees[i], degrees[j]);
        }
    }
    r
}

/// `φ_σ` together with the data it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PictureInvariant {
    pub shape: PictureShape,
    pub sigma: Permutation,
    pub polynomial: SymPolynomial,
}

impl fmt::Display for PictureInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.shape.mult.iter().map(|x| x.to_string()).collect();
        writeln!(
            f,
            "# multiplicities {} sigma {}",
            m.join(","),
            self.sigma.cycle_string()
        )?;
        writeln!(f, "z = zeta({})", self.shape.shape.chi().modulus())?;
        write!(f, "{}", self.polynomial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloRational;
    use crate::tensor::GradedSpace;

    fn shape(chi: Bicharacter, degs: &[&str], summands: Vec<(usize, usize)>) -> MixedShape {
        MixedShape::new(GradedSpace::from_residues(chi, degs).unwrap(), summands).unwrap()
    }

    #[test]
    fn mu_examples() {
        let s = shape(Bicharacter::super_sign(), &["0", "1"], vec![(1, 1)]);
        assert!(PictureShape::new(s.clone(), vec![1])
            .unwrap()
            .mu()
            .is_identity());
        assert_eq!(
            PictureShape::new(s, vec![2]).unwrap().mu().to_string(),
            "[1,3,2,4]"
        );
        let s21 = shape(Bicharacter::super_sign(), &["0", "1"], vec![(2, 1), (0, 1)]);
        assert_eq!(
            PictureShape::new(s21.clone(), vec![1, 1])
                .unwrap()
                .mu()
                .to_string(),
            "[1,2,3,4]"
        );
        let single = shape(Bicharacter::super_sign(), &["0", "1"], vec![(2, 2)]);
        assert!(PictureShape::new(single, vec![1])
            .unwrap()
            .mu()
            .is_identity());
    }

    #[test]
    fn unbalanced_rejected() {
        let s = shape(Bicharacter::super_sign(), &["0", "1"], vec![(2, 1)]);
        assert_eq!(
            PictureShape::new(s, vec![1]),
            Err(Error::Unbalanced { primal: 2, dual: 1 })
        );
    }

    #[test]
    fn scaffold_permutations() {
        assert!(tau(1).is_identity());
        let s = Permutation::parse("(1 2)", None).unwrap();
        assert_eq!(sigma_hat(&s, 2).to_string(), "[2,1,3,4]");
    }

    #[test]
    fn p_eps_examples() {
        let chi = Bicharacter::super_sign();
        let (o, odd) = (chi.group().identity(), chi.group().element(&[1]).unwrap());
        assert!(p_eps(&chi, &[o, o, o]).is_one());
        assert!(p_eps(&chi, &[odd]).is_minus_one());
        assert!(p_eps(&chi, &[odd, o]).is_minus_one());
    }

    #[test]
    fn classical_trace_polynomial() {
        let s = shape(Bicharacter::trivial(), &["0", "0"], vec![(1, 1)]);
        let p = PictureShape::new(s.clone(), vec![1]).unwrap();
        let phi = p
            .build_phi(&Permutation::identity(1), &Bounds::default())
            .unwrap();
        let mut expected = SymPolynomial::zero(&s);
        for i in 0..2 {
            expected
                .add_sequence(&[s.variable(0, &[i], &[i]).unwrap()], &CycloRational::one())
                .unwrap();
        }
        assert_eq!(phi.polynomial, expected);
        for sigma in Permutation::all(2) {
            let p2 = PictureShape::new(s.clone(), vec![2]).unwrap();
            for lower in tuples(2, 2) {
                assert!(p2.coefficient(&sigma, &lower).unwrap().is_one());
            }
        }
    }

    #[test]
    fn bounds_enforced() {
        let s = shape(Bicharacter::trivial(), &["0", "0"], vec![(1, 1)]);
        let p = PictureShape::new(s, vec![6]).unwrap();
        assert!(matches!(
            p.build_phi(&Permutation::identity(6), &Bounds::default()),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn oracle_on_basis_word() {
        let s = shape(Bicharacter::super_sign(), &["0", "1"], vec![(1, 1)]);
        let p = PictureShape::new(s.clone(), vec![1]).unwrap();
        let alg = crate::lambda::EpsAlgebra::with_pools(s.chi().clone(), 1, 2).unwrap();
        let arg = GradedTensor::basis_word(
            s.space(),
            &alg,
            vec![Variance::Primal, Variance::Dual],
            vec![0, 0],
            alg.one(),
        )
        .unwrap();
        assert_eq!(
            p.t_sigma_eval(&Permutation::identity(1), &arg).unwrap(),
            alg.one()
        );
    }
}
