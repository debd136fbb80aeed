//! Exact arithmetic in cyclotomic fields `ℚ(ζ_m)`.
//!
//! Elements are polynomials in `z = ζ_m` of degree below `φ(m)`, reduced modulo the
//! cyclotomic polynomial `Φ_m`. Operands of different orders are lifted to the lcm.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest root-of-unity order supported.
pub const MAX_ORDER: u32 = 1 << 12;

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the cyclotomic polynomial `Φ_m`, lowest degree first. Monic.
pub fn phi_m(m: u32) -> Arc<Vec<i64>> {
    assert!(
        (1..=MAX_ORDER).contains(&m),
        "cyclotomic order {m} out of range"
    );
    if let Some(p) = phi_cache().lock().expect("phi cache").get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if !m.is_multiple_of(d) {
            continue;
        }
        let div = phi_m(d);
        num = exact_divide(&num, &div);
    }
    let coeffs: Vec<i64> = num
        .iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient fits in i64"))
        .collect();
    let arc = Arc::new(coeffs);
    phi_cache()
        .lock()
        .expect("phi cache")
        .insert(m, arc.clone());
    arc
}

fn exact_divide(num: &[BigInt], den: &[i64]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// Euler totient via the degree of `Φ_m`.
pub fn totient(m: u32) -> usize {
    phi_m(m).len() - 1
}

/// `ζ_order^exponent`, kept symbolic so sign bookkeeping stays cheap.
#[derive(Debug, Clone, Copy)]
pub struct RootOfUnity {
    exponent: u32,
    order: u32,
}

impl RootOfUnity {
    pub fn new(exponent: i64, order: u32) -> Self {
        assert!(order >= 1, "root of unity order must be positive");
        RootOfUnity {
            exponent: exponent.rem_euclid(order as i64) as u32,
            order,
        }
    }

    pub fn one(order: u32) -> Self {
        RootOfUnity {
            exponent: 0,
            order: order.max(1),
        }
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn is_one(self) -> bool {
        self.exponent == 0
    }

    /// True for `-1`.
    pub fn is_minus_one(self) -> bool {
        2 * self.exponent == self.order
    }

    pub fn inverse(self) -> Self {
        RootOfUnity::new(-(self.exponent as i64), self.order)
    }

    pub fn pow(self, k: i64) -> Self {
        RootOfUnity::new(self.exponent as i64 * k, self.order)
    }

    pub fn to_cyclo(self) -> CycloRational {
        if self.is_one() {
            return CycloRational::one();
        }
        if self.is_minus_one() {
            return CycloRational::from_integer(-1);
        }
        CycloRational::root_power(self.order, self.exponent as i64)
    }
}

impl PartialEq for RootOfUnity {
    fn eq(&self, other: &Self) -> bool {
        self.exponent as u64 * other.order as u64 == other.exponent as u64 * self.order as u64
    }
}

impl Eq for RootOfUnity {}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        if self.order == rhs.order {
            return RootOfUnity::new((self.exponent + rhs.exponent) as i64, self.order);
        }
        let l = self.order.lcm(&rhs.order);
        let e = self.exponent as i64 * (l / self.order) as i64
            + rhs.exponent as i64 * (l / rhs.order) as i64;
        RootOfUnity::new(e, l)
    }
}

impl MulAssign for RootOfUnity {
    fn mul_assign(&mut self, rhs: RootOfUnity) {
        *self = *self * rhs;
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta({})^{}", self.order, self.exponent)
    }
}

/// An element of `ℚ(ζ_order)` in the power basis `1, z, …, z^(φ-1)`.
#[derive(Debug, Clone)]
pub struct CycloRational {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycloRational {
    pub fn zero() -> Self {
        CycloRational {
            order: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycloRational {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_fraction(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_rational(BigRational::new(p.into(), q.into())))
    }

    /// Canonical form of an arbitrary polynomial in `ζ_order`.
    pub fn from_poly(order: u32, poly: Vec<BigRational>) -> Self {
        let phi = phi_m(order);
        CycloRational {
            order,
            coeffs: reduce(poly, &phi),
        }
    }

    /// `ζ_m^e` in canonical form.
    pub fn root_power(m: u32, e: i64) -> Self {
        let e = e.rem_euclid(m as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::from_poly(m, poly)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients, lowest degree first; length `φ(order)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational number, when it lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the element in `ℚ(ζ_target)`; `order` must divide `target`.
    pub fn lift_to(&self, target: u32) -> Result<Self> {
        if target == self.order {
            return Ok(self.clone());
        }
        if target == 0 || !target.is_multiple_of(self.order) {
            return Err(Error::Structure(format!(
                "cannot lift an element of Q(zeta_{}) to Q(zeta_{target})",
                self.order
            )));
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::from_poly(target, poly))
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.order.lcm(&b.order);
        (
            a.lift_to(l).expect("lcm lift"),
            b.lift_to(l).expect("lcm lift"),
        )
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(CycloRational {
                order: self.order,
                coeffs: pad(vec![q.recip()], self.coeffs.len()),
            });
        }
        let phi: Vec<BigRational> = phi_m(self.order).iter().map(|&c| rat(c)).collect();
        let inverse = poly_inverse_mod(&self.coeffs, &phi);
        Ok(Self::from_poly(self.order, inverse))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn mul_root(&self, r: RootOfUnity) -> Self {
        if r.is_one() {
            return self.clone();
        }
        if r.is_minus_one() {
            return -self;
        }
        let l = self.order.lcm(&r.order());
        let base = self.lift_to(l).expect("lcm lift");
        let e = r.exponent() as usize * (l / r.order()) as usize;
        let phi = phi_m(l);
        let n = base.coeffs.len();
        let mut c = base.coeffs;
        for _ in 0..e {
            let top = c.pop().expect("nonempty");
            c.insert(0, BigRational::zero());
            if !top.is_zero() {
                for i in 0..n {
                    sub_scaled(&mut c[i], &top, phi[i]);
                }
            }
        }
        CycloRational {
            order: l,
            coeffs: c,
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = rat(k);
        CycloRational {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * &k).collect(),
        }
    }

    /// Parses `a_0 + a_1*z + a_2*z^2 …` with `z = ζ_order`. Powers at or above
    /// `φ(order)` are reduced; a fully parenthesized expression is accepted.
    pub fn parse(text: &str, order: u32) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::Parse(format!("root order {order} out of range")));
        }
        let mut s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        while s.starts_with('(') && s.ends_with(')') && balanced(&s[1..s.len() - 1]) {
            s = s[1..s.len() - 1].to_string();
        }
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-')
                && bytes[i - 1] != b'^'
                && bytes[i - 1] != b'*'
            {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut poly: Vec<BigRational> = Vec::new();
        for term in terms {
            let (neg, body) = match term.as_bytes()[0] {
                b'+' => (false, &term[1..]),
                b'-' => (true, &term[1..]),
                _ => (false, term),
            };
            let (coef_text, power) = split_power(body)?;
            let mut c = match coef_text {
                None => BigRational::one(),
                Some(t) => BigRational::from_str(t)
                    .map_err(|e| Error::Parse(format!("bad rational {t:?}: {e}")))?,
            };
            if neg {
                c = -c;
            }
            if poly.len() <= power {
                poly.resize(power + 1, BigRational::zero());
            }
            poly[power] += c;
        }
        Ok(Self::from_poly(order, poly))
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

fn split_power(body: &str) -> Result<(Option<&str>, usize)> {
    let (coef, zpart) = match body.find('z') {
        None => return Ok((Some(body), 0)),
        Some(0) => (None, body),
        Some(i) => {
            let c = body[..i]
                .strip_suffix('*')
                .ok_or_else(|| Error::Parse(format!("expected '*' before z in {body:?}")))?;
            (Some(c), &body[i..])
        }
    };
    let power = match zpart {
        "z" => 1,
        _ => zpart
            .strip_prefix("z^")
            .and_then(|p| p.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad power of z in {body:?}")))?,
    };
    if power > MAX_ORDER as usize * 4 {
        return Err(Error::Parse(format!("power {power} too large")));
    }
    Ok((coef, power))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pad(mut v: Vec<BigRational>, n: usize) -> Vec<BigRational> {
    v.resize(n, BigRational::zero());
    v
}

fn sub_scaled(target: &mut BigRational, c: &BigRational, k: i64) {
    match k {
        0 => {}
        1 => *target -= c,
        -1 => *target += c,
        _ => *target -= c * rat(k),
    }
}

/// Reduces `poly` modulo the monic `phi`, returning exactly `deg phi` coefficients.
fn reduce(mut poly: Vec<BigRational>, phi: &[i64]) -> Vec<BigRational> {
    let n = phi.len() - 1;
    while poly.len() > n {
        let top = poly.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let k = poly.len() - n;
        for i in 0..n {
            sub_scaled(&mut poly[k + i], &top, phi[i]);
        }
    }
    pad(poly, n)
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() <= db {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of a nonzero `a` modulo the irreducible `m` by the extended Euclidean algorithm.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let g = r0[0].clone();
    s0.iter().map(|c| c / &g).collect()
}

impl Default for CycloRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for CycloRational {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloRational {}

impl From<i64> for CycloRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<RootOfUnity> for CycloRational {
    fn from(r: RootOfUnity) -> Self {
        r.to_cyclo()
    }
}

impl<'a> Add<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;

    fn add(self, rhs: &CycloRational) -> CycloRational {
        if self.order != rhs.order {
            let (a, b) = CycloRational::common(self, rhs);
            return &a + &b;
        }
        CycloRational {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;

    fn sub(self, rhs: &CycloRational) -> CycloRational {
        if self.order != rhs.order {
            let (a, b) = CycloRational::common(self, rhs);
            return &a - &b;
        }
        CycloRational {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;

    fn mul(self, rhs: &CycloRational) -> CycloRational {
        if let Some(q) = rhs.as_rational() {
            return CycloRational {
                order: self.order,
                coeffs: self.coeffs.iter().map(|c| c * q).collect(),
            };
        }
        if let Some(q) = self.as_rational() {
            return CycloRational {
                order: rhs.order,
                coeffs: rhs.coeffs.iter().map(|c| c * q).collect(),
            };
        }
        if self.order != rhs.order {
            let (a, b) = CycloRational::common(self, rhs);
            return &a * &b;
        }
        CycloRational::from_poly(self.order, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &CycloRational {
    type Output = CycloRational;

    fn neg(self) -> CycloRational {
        CycloRational {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloRational {
    type Output = CycloRational;

    fn neg(self) -> CycloRational {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloRational {
            type Output = CycloRational;
            fn $m(self, rhs: CycloRational) -> CycloRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloRational> for CycloRational {
            type Output = CycloRational;
            fn $m(self, rhs: &CycloRational) -> CycloRational {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&CycloRational> for CycloRational {
    fn add_assign(&mut self, rhs: &CycloRational) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycloRational> for CycloRational {
    fn sub_assign(&mut self, rhs: &CycloRational) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycloRational> for CycloRational {
    fn mul_assign(&mut self, rhs: &CycloRational) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for CycloRational {
    /// Prints in `z = ζ_order`; callers lift to the ambient modulus first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let zpart = match i {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&zpart)?;
            } else {
                write!(f, "{mag}*{zpart}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*phi_m(1), vec![-1, 1]);
        assert_eq!(*phi_m(2), vec![1, 1]);
        assert_eq!(*phi_m(4), vec![1, 0, 1]);
        assert_eq!(*phi_m(6), vec![1, -1, 1]);
        assert_eq!(*phi_m(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(phi_m(105).iter().filter(|&&c| c == -2).count(), 2);
        assert_eq!(totient(9), 6);
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let z = CycloRational::root_power(4, 1);
        assert_eq!(&z * &z, CycloRational::from_integer(-1));
    }

    #[test]
    fn zeta3_relation() {
        let z = CycloRational::root_power(3, 1);
        let sum = &(&CycloRational::one() + &z) + &(&z * &z);
        assert!(sum.is_zero());
    }

    #[test]
    fn inverse_of_one_plus_zeta5() {
        let x = CycloRational::parse("1 + z", 5).unwrap();
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(CycloRational::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_orders_lift() {
        let i = CycloRational::root_power(4, 1);
        let w = CycloRational::root_power(3, 1);
        let p = &i * &w;
        assert_eq!(p.order(), 12);
        assert_eq!(p, CycloRational::root_power(12, 7));
        assert_eq!(
            CycloRational::root_power(2, 1),
            CycloRational::from_integer(-1)
        );
    }

    #[test]
    fn display_and_parse() {
        let x = CycloRational::parse("1/2 - 3*z + z^3", 6).unwrap();
        assert_eq!(x, CycloRational::parse("-1/2 - 3*z", 6).unwrap());
        assert_eq!(x.to_string(), "-1/2 - 3*z");
        assert_eq!(CycloRational::zero().to_string(), "0");
        assert_eq!(
            CycloRational::parse("(-z^2)", 4).unwrap(),
            CycloRational::one()
        );
        assert!(CycloRational::parse("1 +", 4).is_err());
    }

    #[test]
    fn roots_multiply() {
        let a = RootOfUnity::new(1, 4);
        let b = RootOfUnity::new(1, 6);
        assert_eq!((a * b).to_cyclo(), &a.to_cyclo() * &b.to_cyclo());
        assert_eq!(RootOfUnity::new(2, 4), RootOfUnity::new(1, 2));
        assert!(RootOfUnity::new(3, 6).is_minus_one());
        let x = CycloRational::parse("2 - z", 12).unwrap();
        assert_eq!(
            x.mul_root(RootOfUnity::new(5, 12)),
            &x * &CycloRational::root_power(12, 5)
        );
    }

    fn arb_cyclo() -> impl Strategy<Value = CycloRational> {
        (
            prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12]),
            prop::collection::vec(-5i64..6, 1..6),
        )
            .prop_map(|(m, c)| CycloRational::from_poly(m, c.into_iter().map(rat).collect()))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn normalization_idempotent(m in prop::sample::select(vec![1u32, 3, 4, 5, 9, 12]),
                                    c in prop::collection::vec(-9i64..10, 1..30)) {
            let x = CycloRational::from_poly(m, c.into_iter().map(rat).collect());
            let again = CycloRational::from_poly(m, x.coeffs().to_vec());
            prop_assert_eq!(&again, &x);
            prop_assert_eq!(x.coeffs().len(), totient(m));
            prop_assert_eq!(CycloRational::parse(&x.to_string(), m).unwrap(), x);
        }
    }
}
