//! Finite abelian grading groups and skew-symmetric bicharacters.
//!
//! A bicharacter of a finite abelian group takes values in the roots of unity of
//! order dividing the group exponent `m`, so it is stored losslessly as an integer
//! exponent matrix `B`: `ε(g, h) = ζ_m^(gᵀ B h)`.

use std::fmt;
use std::sync::Arc;

use crate::cyclo::{CycloRational, RootOfUnity};
use crate::error::{Error, Result};

/// Upper bound on the group order accepted by the constructors. The library only
/// ever enumerates small groups; this keeps element codes inside `u32`.
pub const MAX_GROUP_ORDER: u64 = 1 << 20;

/// Largest group validated exhaustively by [`Bicharacter::validate`].
pub const EXHAUSTIVE_LIMIT: usize = 64;

/// An element of a [`FiniteAbelianGroup`], stored as a mixed-radix code of its
/// residue tuple (first factor most significant). Code order is lexicographic
/// residue order, and the identity has code 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(u32);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, PartialEq, Eq)]
struct GroupInner {
    factors: Vec<u32>,
    exponent: u32,
    order: u32,
}

/// `ℤ_{d_1} × … × ℤ_{d_k}`. Factors need not be in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup(Arc<GroupInner>);

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::Structure(
                "cyclic factor orders must be at least 1".into(),
            ));
        }
        let order: u64 = factors.iter().map(|&d| d as u64).product();
        if order > MAX_GROUP_ORDER {
            return Err(Error::Resource(format!(
                "group order {order} exceeds {MAX_GROUP_ORDER}"
            )));
        }
        let exponent = factors
            .iter()
            .fold(1u32, |acc, &d| num_integer::lcm(acc, d));
        Ok(FiniteAbelianGroup(Arc::new(GroupInner {
            factors,
            exponent,
            order: order as u32,
        })))
    }

    pub fn trivial() -> Self {
        Self::new(vec![]).expect("trivial group")
    }

    pub fn cyclic(d: u32) -> Result<Self> {
        Self::new(vec![d])
    }

    pub fn factors(&self) -> &[u32] {
        &self.0.factors
    }

    pub fn rank(&self) -> usize {
        self.0.factors.len()
    }

    /// Least common multiple of the cyclic factor orders.
    pub fn exponent(&self) -> u32 {
        self.0.exponent
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    /// Builds an element from a residue tuple; residues are reduced into `[0, d_j)`.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.rank() {
            return Err(Error::Structure(format!(
                "group element has {} residues, group has {} factors",
                residues.len(),
                self.rank()
            )));
        }
        let mut code = 0u32;
        for (&r, &d) in residues.iter().zip(self.factors()) {
            code = code * d + r.rem_euclid(d as i64) as u32;
        }
        Ok(GroupElement(code))
    }

    pub fn from_code(&self, code: u32) -> Result<GroupElement> {
        if code >= self.order() {
            return Err(Error::Structure(format!(
                "element code {code} out of range"
            )));
        }
        Ok(GroupElement(code))
    }

    pub fn residues(&self, g: GroupElement) -> Vec<u32> {
        let mut out = vec![0u32; self.rank()];
        let mut code = g.0;
        for (slot, &d) in out.iter_mut().zip(self.factors()).rev() {
            *slot = code % d;
            code /= d;
        }
        out
    }

    pub fn add(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let (a, b) = (self.residues(g), self.residues(h));
        let mut code = 0u32;
        for ((x, y), &d) in a.iter().zip(&b).zip(self.factors()) {
            code = code * d + (x + y) % d;
        }
        GroupElement(code)
    }

    pub fn neg(&self, g: GroupElement) -> GroupElement {
        let a = self.residues(g);
        let mut code = 0u32;
        for (x, &d) in a.iter().zip(self.factors()) {
            code = code * d + (d - x) % d;
        }
        GroupElement(code)
    }

    pub fn sub(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.add(g, self.neg(h))
    }

    pub fn sum<I: IntoIterator<Item = GroupElement>>(&self, items: I) -> GroupElement {
        items
            .into_iter()
            .fold(self.identity(), |acc, g| self.add(acc, g))
    }

    /// All elements in code (lexicographic residue) order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order()).map(GroupElement)
    }

    /// Comma-separated residues, e.g. `1,0`. The identity of the trivial group prints as `0`.
    pub fn format_element(&self, g: GroupElement) -> String {
        if self.rank() == 0 {
            return "0".into();
        }
        self.residues(g)
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let text = text.trim();
        if self.rank() == 0 {
            return match text {
                "0" | "" => Ok(self.identity()),
                _ => Err(Error::Parse(format!(
                    "trivial group element must be 0, got {text:?}"
                ))),
            };
        }
        let residues = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad residue {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(&residues)
    }
}

/// `even` iff `ε(g, g) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Addition in ℤ_2.
    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug)]
struct BicharacterInner {
    group: FiniteAbelianGroup,
    expmat: Vec<Vec<u32>>,
    /// Dense exponent table for small groups, indexed `g * |G| + h`.
    table: Option<Vec<u32>>,
    /// Ranks of elements in the fixed order of G: even elements first, then odd,
    /// each block in code order.
    order_rank: Vec<u32>,
}

/// Skew-symmetric bicharacter `ε(g, h) = ζ_m^(gᵀ B h)` on a finite abelian group.
#[derive(Debug, Clone)]
pub struct Bicharacter(Arc<BicharacterInner>);

impl PartialEq for Bicharacter {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.group == other.0.group && self.0.expmat == other.0.expmat)
    }
}

impl Eq for Bicharacter {}

const TABLE_LIMIT: u32 = 256;

impl Bicharacter {
    /// Entries are reduced mod the group exponent. Only the matrix dimension is
    /// checked here; run [`Bicharacter::validate`] for the axioms.
    pub fn new(group: FiniteAbelianGroup, expmat: Vec<Vec<i64>>) -> Result<Self> {
        let k = group.rank();
        if expmat.len() != k || expmat.iter().any(|row| row.len() != k) {
            return Err(Error::Structure(format!(
                "exponent matrix must be {k}x{k} for a group with {k} factors"
            )));
        }
        let m = group.exponent() as i64;
        let expmat: Vec<Vec<u32>> = expmat
            .iter()
            .map(|row| row.iter().map(|&b| b.rem_euclid(m) as u32).collect())
            .collect();
        let mut inner = BicharacterInner {
            group,
            expmat,
            table: None,
            order_rank: Vec::new(),
        };
        let order = inner.group.order();
        if order <= TABLE_LIMIT {
            let mut table = Vec::with_capacity((order * order) as usize);
            for g in inner.group.elements() {
                for h in inner.group.elements() {
                    table.push(raw_exponent(&inner.group, &inner.expmat, g, h));
                }
            }
            inner.table = Some(table);
        }
        let mut rank = vec![0u32; order as usize];
        let (even, odd): (Vec<_>, Vec<_>) = inner.group.elements().partition(|&g| {
            let e = raw_exponent(&inner.group, &inner.expmat, g, g);
            e == 0
        });
        for (r, g) in even.into_iter().chain(odd).enumerate() {
            rank[g.0 as usize] = r as u32;
        }
        inner.order_rank = rank;
        Ok(Bicharacter(Arc::new(inner)))
    }

    /// The trivial bicharacter on the trivial group: classical invariant theory.
    pub fn trivial() -> Self {
        Self::new(FiniteAbelianGroup::trivial(), vec![]).expect("trivial bicharacter")
    }

    /// `ℤ_2` with `ε(1, 1) = -1`: the super sign rule.
    pub fn super_sign() -> Self {
        Self::new(FiniteAbelianGroup::cyclic(2).expect("Z2"), vec![vec![1]]).expect("super")
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.0.group
    }

    pub fn expmat(&self) -> &[Vec<u32>] {
        &self.0.expmat
    }

    /// Order `m` of the roots of unity that ε takes values in.
    pub fn modulus(&self) -> u32 {
        self.0.group.exponent()
    }

    /// Exponent `e` with `ε(g, h) = ζ_m^e`.
    pub fn epsilon(&self, g: GroupElement, h: GroupElement) -> RootOfUnity {
        let order = self.0.group.order();
        let e = match &self.0.table {
            Some(table) => table[(g.0 * order + h.0) as usize],
            None => raw_exponent(&self.0.group, &self.0.expmat, g, h),
        };
        RootOfUnity::new(e as i64, self.modulus())
    }

    /// Residue-tuple form of [`Bicharacter::epsilon`].
    pub fn epsilon_residues(&self, g: &[i64], h: &[i64]) -> Result<RootOfUnity> {
        let g = self.group().element(g)?;
        let h = self.group().element(h)?;
        Ok(self.epsilon(g, h))
    }

    pub fn value(&self, g: GroupElement, h: GroupElement) -> CycloRational {
        self.epsilon(g, h).to_cyclo()
    }

    /// Product of `ε(g, h_i)` over a list.
    pub fn epsilon_sum<I: IntoIterator<Item = GroupElement>>(
        &self,
        g: GroupElement,
        hs: I,
    ) -> RootOfUnity {
        hs.into_iter()
            .fold(RootOfUnity::one(self.modulus()), |acc, h| {
                acc * self.epsilon(g, h)
            })
    }

    pub fn parity(&self, g: GroupElement) -> Parity {
        if self.epsilon(g, g).is_one() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(&self, g: GroupElement) -> bool {
        self.parity(g).is_odd()
    }

    /// Position of `g` in the fixed order of `G`: even elements (identity first)
    /// before odd ones, code order within each block.
    pub fn order_rank(&self, g: GroupElement) -> u32 {
        self.0.order_rank[g.0 as usize]
    }

    /// Exhaustive check of the bicharacter axioms for groups of order at most
    /// [`EXHAUSTIVE_LIMIT`], plus the exponent-matrix invariants.
    pub fn validate(&self) -> ValidationReport {
        let group = self.group();
        let m = self.modulus();
        let k = group.rank();
        let mut violations = Vec::new();
        let b = self.expmat();
        for i in 0..k {
            for j in 0..k {
                if !(b[i][j] + b[j][i]).is_multiple_of(m) {
                    violations.push(Violation::MatrixNotSkew { i: i + 1, j: j + 1 });
                }
                let (di, dj) = (group.factors()[i], group.factors()[j]);
                if !(di as u64 * b[i][j] as u64).is_multiple_of(m as u64)
                    || !(dj as u64 * b[i][j] as u64).is_multiple_of(m as u64)
                {
                    violations.push(Violation::IllDefined { i: i + 1, j: j + 1 });
                }
            }
        }
        let exhaustive = group.order() as usize <= EXHAUSTIVE_LIMIT;
        if exhaustive {
            let fmt = |g| group.format_element(g);
            let elems: Vec<_> = group.elements().collect();
            for &f in &elems {
                for &g in &elems {
                    for &h in &elems {
                        let gh = group.add(g, h);
                        if self.epsilon(f, gh) != self.epsilon(f, g) * self.epsilon(f, h) {
                            violations.push(Violation::LeftAdditivity {
                                f: fmt(f),
                                g: fmt(g),
                                h: fmt(h),
                            });
                        }
                        if self.epsilon(gh, f) != self.epsilon(g, f) * self.epsilon(h, f) {
                            violations.push(Violation::RightAdditivity {
                                f: fmt(f),
                                g: fmt(g),
                                h: fmt(h),
                            });
                        }
                    }
                    if !(self.epsilon(f, g) * self.epsilon(g, f)).is_one() {
                        violations.push(Violation::SkewSymmetry {
                            g: fmt(f),
                            h: fmt(g),
                        });
                    }
                }
            }
        }
        ValidationReport {
            violations,
            exhaustive,
        }
    }
}

fn raw_exponent(
    group: &FiniteAbelianGroup,
    expmat: &[Vec<u32>],
    g: GroupElement,
    h: GroupElement,
) -> u32 {
    let m = group.exponent() as u64;
    let (a, b) = (group.residues(g), group.residues(h));
    let mut e = 0u64;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            e += ai as u64 * expmat[i][j] as u64 * bj as u64;
        }
    }
    (e % m) as u32
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `(B + Bᵀ)_{ij} ≢ 0 (mod m)`.
    MatrixNotSkew {
        i: usize,
        j: usize,
    },
    /// `d_i B_{ij}` or `d_j B_{ij}` is nonzero mod `m`, so ε depends on residue representatives.
    IllDefined {
        i: usize,
        j: usize,
    },
    LeftAdditivity {
        f: String,
        g: String,
        h: String,
    },
    RightAdditivity {
        f: String,
        g: String,
        h: String,
    },
    SkewSymmetry {
        g: String,
        h: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MatrixNotSkew { i, j } => {
                write!(
                    f,
                    "exponent matrix not skew: B[{i}][{j}] + B[{j}][{i}] != 0 mod m"
                )
            }
            Violation::IllDefined { i, j } => {
                write!(
                    f,
                    "entry B[{i}][{j}] is not compatible with the factor orders"
                )
            }
            Violation::LeftAdditivity { f: a, g, h } => {
                write!(f, "eps({a}, {g}+{h}) != eps({a},{g}) eps({a},{h})")
            }
            Violation::RightAdditivity { f: a, g, h } => {
                write!(f, "eps({g}+{h}, {a}) != eps({g},{a}) eps({h},{a})")
            }
            Violation::SkewSymmetry { g, h } => write!(f, "eps({g},{h}) eps({h},{g}) != 1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// False when the group was too large for the exhaustive axiom sweep.
    pub exhaustive: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")?;
        } else {
            write!(f, "invalid ({} violations)", self.violations.len())?;
            for v in &self.violations {
                write!(f, "\n  {v}")?;
            }
        }
        if !self.exhaustive {
            write!(
                f,
                "\n  note: group too large for the exhaustive axiom sweep"
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> Bicharacter {
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        Bicharacter::new(g, vec![vec![1, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn super_sign_is_minus_one() {
        let chi = Bicharacter::super_sign();
        let e = chi.epsilon_residues(&[1], &[1]).unwrap();
        assert_eq!(e.exponent(), 1);
        assert_eq!(e.to_cyclo(), CycloRational::from_integer(-1));
    }

    #[test]
    fn identity_pairs_trivially() {
        for chi in [Bicharacter::super_sign(), klein()] {
            let o = chi.group().identity();
            for g in chi.group().elements() {
                assert!(chi.epsilon(o, g).is_one());
                assert!(chi.epsilon(g, o).is_one());
            }
            assert_eq!(chi.parity(o), Parity::Even);
        }
    }

    #[test]
    fn z4_raw_evaluation() {
        // B = [1] is not skew on Z4, but evaluation does not require validity.
        let chi = Bicharacter::new(FiniteAbelianGroup::cyclic(4).unwrap(), vec![vec![1]]).unwrap();
        let e = chi.epsilon_residues(&[2], &[3]).unwrap();
        assert_eq!(e.exponent(), 2);
        assert_eq!(e.to_cyclo(), CycloRational::from_integer(-1));
        // multiplicativity cross-check: ε(2,3) = ε(1,3)²
        let e13 = chi.epsilon_residues(&[1], &[3]).unwrap();
        assert_eq!(e13 * e13, e);
        let report = chi.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::MatrixNotSkew { .. })));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::SkewSymmetry { .. })));
    }

    #[test]
    fn validator_examples() {
        assert!(Bicharacter::super_sign().validate().is_valid());
        let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let zero = Bicharacter::new(z2.clone(), vec![vec![0]]).unwrap();
        assert!(zero.validate().is_valid());
        assert!(z2.elements().all(|g| zero.parity(g) == Parity::Even));
        assert!(klein().validate().is_valid());
        let z4 = Bicharacter::new(FiniteAbelianGroup::cyclic(4).unwrap(), vec![vec![2]]).unwrap();
        assert!(z4.validate().is_valid());
    }

    #[test]
    fn klein_parity() {
        let chi = klein();
        let g = chi.group().element(&[1, 0]).unwrap();
        assert_eq!(chi.parity(g), Parity::Odd);
        let h = chi.group().element(&[1, 1]).unwrap();
        assert_eq!(chi.parity(h), Parity::Even);
    }

    #[test]
    fn element_round_trip() {
        let g = FiniteAbelianGroup::new(vec![3, 4, 2]).unwrap();
        for e in g.elements() {
            let text = g.format_element(e);
            assert_eq!(g.parse_element(&text).unwrap(), e);
        }
        assert!(g.element(&[1, 2]).is_err());
        assert_eq!(
            g.element(&[-1, 5, 3]).unwrap(),
            g.element(&[2, 1, 1]).unwrap()
        );
    }

    #[test]
    fn fixed_order_puts_even_first() {
        let chi = klein();
        let ranks: Vec<_> = chi
            .group()
            .elements()
            .map(|g| (chi.order_rank(g), chi.parity(g)))
            .collect();
        for &(r, p) in &ranks {
            assert_eq!(p == Parity::Even, r < 2, "{ranks:?}");
        }
        assert_eq!(chi.order_rank(chi.group().identity()), 0);
    }
}
