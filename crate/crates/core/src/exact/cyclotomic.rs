use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// Euler's totient.
pub fn euler_phi(mut m: u32) -> u32 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m > 0);
    // x^m - 1
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_divide(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

// Divides integer polynomials where the divisor is monic and divides exactly.
fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Shared per-conductor data: the cyclotomic polynomial and reductions of
/// `x^k` modulo it.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    degree: usize,
    // x^k mod Phi_m for k in 0..powers.len(), each of length `degree`
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    fn build(m: u32) -> Self {
        let phi = cyclotomic_polynomial(m);
        let degree = phi.len() - 1;
        let count = (m as usize).max(2 * degree).max(1);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        if degree == 1 {
            // Phi_1 = x - 1, Phi_2 = x + 1: every power is +-1.
            for k in 0..count {
                let v = if m == 2 && k % 2 == 1 { -1 } else { 1 };
                powers.push(vec![v]);
            }
        } else {
            for _ in 0..count {
                powers.push(cur.clone());
                // multiply by x and reduce the overflow coefficient
                let top = cur[degree - 1];
                for j in (1..degree).rev() {
                    cur[j] = cur[j - 1];
                }
                cur[0] = 0;
                if top != 0 {
                    for j in 0..degree {
                        cur[j] -= top * phi[j];
                    }
                }
            }
        }
        CyclotomicField { conductor: m, degree, powers }
    }

    /// The process-wide shared field of conductor `m`.
    pub fn get(m: u32) -> Arc<CyclotomicField> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("cyclotomic field cache poisoned");
        guard
            .entry(m)
            .or_insert_with(|| Arc::new(CyclotomicField::build(m)))
            .clone()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// An element of `Q(ζ_m)`, stored as the canonical reduced residue modulo the
/// `m`-th cyclotomic polynomial: `coeffs[k]` is the coefficient of `ζ^k` for
/// `k < φ(m)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(m: u32) -> Self {
        let field = CyclotomicField::get(m);
        let coeffs = vec![Rational::zero(); field.degree];
        CyclotomicNumber { field, coeffs }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, Rational::one())
    }

    pub fn from_int(m: u32, n: i64) -> Self {
        Self::from_rational(m, Rational::from_int(n))
    }

    pub fn from_rational(m: u32, r: Rational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = r;
        z
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let field = CyclotomicField::get(m);
        let k = k.rem_euclid(m as i64) as usize;
        let coeffs = field.powers[k].iter().map(|&c| Rational::from_int(c)).collect();
        CyclotomicNumber { field, coeffs }
    }

    pub fn zeta(m: u32) -> Self {
        Self::zeta_pow(m, 1)
    }

    /// Builds `Σ c_k ζ^k` from an arbitrary-length coefficient list.
    pub fn from_power_coeffs(m: u32, coeffs: &[Rational]) -> Self {
        let field = CyclotomicField::get(m);
        let mut out = vec![Rational::zero(); field.degree];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let red = &field.powers[k % m as usize];
            for (o, &r) in out.iter_mut().zip(red) {
                if r != 0 {
                    *o = &*o + &(c * &Rational::from_int(r));
                }
            }
        }
        CyclotomicNumber { field, coeffs: out }
    }

    /// Builds from canonical coefficients; the length must be `φ(m)`.
    pub fn from_coeffs(m: u32, coeffs: Vec<Rational>) -> Result<Self> {
        let field = CyclotomicField::get(m);
        if coeffs.len() != field.degree {
            return Err(Error::ShapeMismatch(format!(
                "conductor {m} needs {} coefficients, got {}",
                field.degree,
                coeffs.len()
            )));
        }
        Ok(CyclotomicNumber { field, coeffs })
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Rational::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// True when every canonical coefficient is an integer. The power basis
    /// is an integral basis of `Z[ζ_m]`, so this is exactly algebraic
    /// integrality.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.conductor != other.field.conductor {
            Err(Error::ConductorMismatch(self.field.conductor, other.field.conductor))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CyclotomicNumber { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CyclotomicNumber { field: self.field.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.field.degree;
        if n == 1 {
            return Ok(CyclotomicNumber {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = &prod[i + j] + &(a * b);
            }
        }
        let mut out: Vec<Rational> = prod[..n].to_vec();
        for (k, c) in prod.iter().enumerate().skip(n) {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&self.field.powers[k]) {
                if r != 0 {
                    *o = &*o + &(c * &Rational::from_int(r));
                }
            }
        }
        Ok(CyclotomicNumber { field: self.field.clone(), coeffs: out })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse, by solving `a · y = 1` in the power basis.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.field.degree;
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(self.conductor(), r.recip().expect("nonzero")));
        }
        // Column j of the multiplication matrix is a * x^j.
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        let x = Self::zeta(self.conductor());
        for _ in 0..n {
            cols.push(cur.coeffs.clone());
            cur = &cur * &x;
        }
        // Augmented rows: [M | e_0]
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !rows[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
            rows.swap(c, p);
            let inv = rows[c][c].recip().expect("pivot is nonzero");
            for v in rows[c].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..n {
                if r != c && !rows[r][c].is_zero() {
                    let f = rows[r][c].clone();
                    for k in c..=n {
                        let t = &rows[c][k] * &f;
                        rows[r][k] = &rows[r][k] - &t;
                    }
                }
            }
        }
        let coeffs = rows.into_iter().map(|mut r| r.pop().expect("augmented")).collect();
        Ok(CyclotomicNumber { field: self.field.clone(), coeffs })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.conductor());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Applies the Galois automorphism `ζ ↦ ζ^k`; `k` must be coprime to the conductor.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let m = self.conductor() as i64;
        if gcd(k.rem_euclid(m) as u64, m as u64) != 1 {
            return Err(Error::InvalidInput(format!("{k} is not a unit modulo {m}")));
        }
        let mut spread = vec![Rational::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                spread[(j as i64 * k).rem_euclid(m) as usize] = c.clone();
            }
        }
        Ok(Self::from_power_coeffs(m as u32, &spread))
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always a unit")
    }

    /// Re-expresses the value in `Q(ζ_{m'})` for a multiple `m'` of the conductor.
    pub fn lift(&self, target: u32) -> Result<Self> {
        let m = self.conductor();
        if !target.is_multiple_of(m) {
            return Err(Error::ConductorMismatch(m, target));
        }
        let step = (target / m) as usize;
        let mut spread = vec![Rational::zero(); target as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            spread[(j * step) % target as usize] = c.clone();
        }
        Ok(Self::from_power_coeffs(target, &spread))
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl Hash for CyclotomicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl Ord for CyclotomicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .conductor
            .cmp(&other.field.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for CyclotomicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Operator forms panic on conductor mismatch; callers that mix conductors
// use the `try_*` methods.
impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        self.try_add(rhs).expect("conductor mismatch")
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        self.try_sub(rhs).expect("conductor mismatch")
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        self.try_mul(rhs).expect("conductor mismatch")
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.conductor();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{m}")?;
                    } else {
                        write!(f, "z{m}^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr { conductor: self.conductor(), coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CycloRepr::deserialize(d)?;
        if r.conductor == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        CyclotomicNumber::from_coeffs(r.conductor, r.coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(m: u32, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(m, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(15).len() - 1, 8);
        for m in 1..60 {
            assert_eq!(cyclotomic_polynomial(m).len() - 1, euler_phi(m) as usize);
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&z(4, 1) * &z(4, 1), CyclotomicNumber::from_int(4, -1));
    }

    #[test]
    fn cube_roots_sum() {
        assert_eq!(&z(3, 1) + &z(3, 2), CyclotomicNumber::from_int(3, -1));
    }

    #[test]
    fn sqrt_two_squared() {
        let s = &z(8, 1) + &z(8, -1);
        assert_eq!(&s * &s, CyclotomicNumber::from_int(8, 2));
    }

    #[test]
    fn zeta_powers_wrap() {
        for m in [1u32, 2, 3, 5, 8, 12, 24] {
            assert!(z(m, m as i64).is_one());
            assert_eq!(z(m, -1), z(m, m as i64 - 1));
            assert_eq!(&z(m, 1) * &z(m, -1), CyclotomicNumber::one(m));
        }
    }

    #[test]
    fn errors() {
        assert_eq!(CyclotomicNumber::zero(5).inv(), Err(Error::DivisionByZero));
        assert_eq!(z(3, 1).try_add(&z(4, 1)), Err(Error::ConductorMismatch(3, 4)));
    }

    #[test]
    fn lift_is_compatible() {
        let a = &z(4, 1) + &CyclotomicNumber::from_int(4, 3);
        let l = a.lift(12).unwrap();
        assert_eq!(l, &z(12, 3) + &CyclotomicNumber::from_int(12, 3));
    }

    #[test]
    fn galois_conjugation() {
        let w = z(3, 1);
        assert_eq!(w.conj(), z(3, 2));
        assert_eq!(z(8, 1).galois(3).unwrap(), z(8, 3));
        assert!(z(8, 1).galois(2).is_err());
    }

    #[test]
    fn display() {
        let a = &z(12, 5) + &CyclotomicNumber::from_rational(12, Rational::new(-3, 7));
        assert_eq!(a.to_string(), "-3/7 - z12 + z12^3");
    }

    fn arb_cyclo(m: u32) -> impl Strategy<Value = CyclotomicNumber> {
        let n = euler_phi(m) as usize;
        prop::collection::vec((-6i64..6, 1i64..5), n).prop_map(move |v| {
            CyclotomicNumber::from_coeffs(m, v.into_iter().map(|(a, b)| Rational::new(a, b)).collect())
                .unwrap()
        })
    }

    fn arb_conductor() -> impl Strategy<Value = u32> {
        prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 20, 24])
    }

    proptest! {
        #[test]
        fn inverse_is_exact((_m, a) in arb_conductor().prop_flat_map(|m| (Just(m), arb_cyclo(m)))) {
            prop_assume!(!a.is_zero());
            let inv = a.inv().unwrap();
            prop_assert!((&a * &inv).is_one());
        }

        #[test]
        fn lifting_commutes_with_arithmetic(
            (_m, a, b) in prop::sample::select(vec![3u32, 4, 8, 12])
                .prop_flat_map(|m| (Just(m), arb_cyclo(m), arb_cyclo(m)))
        ) {
            let target = 24;
            let sum_then_lift = (&a + &b).lift(target).unwrap();
            let lift_then_sum = &a.lift(target).unwrap() + &b.lift(target).unwrap();
            prop_assert_eq!(sum_then_lift, lift_then_sum);
            let prod_then_lift = (&a * &b).lift(target).unwrap();
            let lift_then_prod = &a.lift(target).unwrap() * &b.lift(target).unwrap();
            prop_assert_eq!(prod_then_lift, lift_then_prod);
        }

        #[test]
        fn galois_is_multiplicative(a in arb_cyclo(12), b in arb_cyclo(12), k in prop::sample::select(vec![1i64, 5, 7, 11])) {
            prop_assert_eq!((&a * &b).galois(k).unwrap(), &a.galois(k).unwrap() * &b.galois(k).unwrap());
        }
    }
}
