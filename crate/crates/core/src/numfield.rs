//! Exact arithmetic in a number field `K = Q[t]/(m(t))`.
//!
//! Elements are stored as rational coefficient vectors reduced modulo the
//! monic minimal polynomial `m`. Trailing zero coefficients are trimmed, so
//! equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldMode {
    Rationals,
    Cyclotomic(u32),
    /// Minimal polynomial given by coefficients from the constant term upward.
    Custom { minpoly: Vec<Rational>, trusted: bool },
}

#[derive(Debug, PartialEq, Eq)]
pub struct Field {
    mode: FieldMode,
    /// Monic, constant term first, length `degree + 1`.
    minpoly: Vec<Rational>,
}

pub type FieldRef = Arc<Field>;

impl Field {
    pub fn rationals() -> FieldRef {
        Arc::new(Field { mode: FieldMode::Rationals, minpoly: vec![int(0), int(1)] })
    }

    /// `Q(zeta_n)`, with the generator `t` a primitive n-th root of unity.
    pub fn cyclotomic(n: u32) -> Result<FieldRef> {
        if n == 0 {
            return Err(Error::InvalidField("cyclotomic order must be positive".into()));
        }
        let minpoly = cyclotomic_poly(n as u64).into_iter().map(Rational::from_integer).collect();
        Ok(Arc::new(Field { mode: FieldMode::Cyclotomic(n), minpoly }))
    }

    /// A field from an explicit minimal polynomial (constant term first).
    ///
    /// Untrusted polynomials must pass a rational-root check, which decides
    /// irreducibility for degree at most 3.
    pub fn custom(minpoly: Vec<Rational>, trusted: bool) -> Result<FieldRef> {
        let mut m = minpoly.clone();
        qpoly::trim(&mut m);
        if m.len() < 2 {
            return Err(Error::InvalidField("minimal polynomial must have degree at least 1".into()));
        }
        let lead = m.last().unwrap().clone();
        for c in &mut m {
            *c = &*c / &lead;
        }
        if !trusted && m.len() > 2 {
            if let Some(r) = qpoly::rational_root(&m) {
                return Err(Error::ReducibleModulus(format!("rational root {}", r)));
            }
        }
        Ok(Arc::new(Field { mode: FieldMode::Custom { minpoly, trusted }, minpoly: m }))
    }

    pub fn mode(&self) -> &FieldMode {
        &self.mode
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: Vec::new() }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.rational(int(1))
    }

    pub fn int(self: &Arc<Self>, n: i64) -> FieldElement {
        self.rational(int(n))
    }

    pub fn rational(self: &Arc<Self>, q: Rational) -> FieldElement {
        let coeffs = if q.is_zero() { Vec::new() } else { vec![q] };
        FieldElement { field: self.clone(), coeffs }
    }

    /// The class of `t`. In the rationals this is the root of `t`, i.e. zero.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        FieldElement::from_coeffs(self, vec![int(0), int(1)])
    }

    pub fn same(a: &FieldRef, b: &FieldRef) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

#[derive(Clone)]
pub struct FieldElement {
    field: FieldRef,
    coeffs: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic.
pub fn field_arith(lhs: &FieldElement, rhs: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if !Field::same(&lhs.field, &rhs.field) {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        ArithOp::Add => lhs + rhs,
        ArithOp::Sub => lhs - rhs,
        ArithOp::Mul => lhs * rhs,
        ArithOp::Div => lhs.checked_div(rhs)?,
    })
}

impl FieldElement {
    /// Builds an element from an arbitrary-length coefficient list, reducing
    /// modulo the minimal polynomial.
    pub fn from_coeffs(field: &FieldRef, mut coeffs: Vec<Rational>) -> Self {
        reduce(&mut coeffs, &field.minpoly);
        FieldElement { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    /// Trimmed coefficient vector, constant term first.
    pub(crate) fn raw_coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient vector padded to the field degree.
    pub fn coeffs(&self) -> Vec<Rational> {
        let mut v = self.coeffs.clone();
        v.resize(self.field.degree(), int(0));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(int(0)),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.rational(q.recip()));
        }
        match qpoly::inverse_mod(&self.coeffs, &self.field.minpoly) {
            Some(c) => Ok(FieldElement::from_coeffs(&self.field, c)),
            None => Err(Error::ReducibleModulus(format!("{} is a zero divisor", self))),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow_u(e as u64))
        } else {
            Ok(self.inv()?.pow_u(e.unsigned_abs()))
        }
    }

    /// Field norm down to the rationals: determinant of multiplication by `self`.
    pub fn norm(&self) -> Rational {
        let n = self.field.degree();
        if let Some(q) = self.as_rational() {
            return num_traits::pow(q, n);
        }
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut basis = self.field.one();
        let t = self.field.generator();
        for _ in 0..n {
            rows.push((self * &basis).coeffs());
            basis = &basis * &t;
        }
        qpoly::determinant(rows)
    }

    /// A square root inside the field, when one can be found.
    ///
    /// Complete for the rationals, for quadratic fields, and for rational
    /// radicands in cyclotomic fields. Other cases may return `None` even
    /// when a root exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let field = &self.field;
        if let Some(q) = self.as_rational() {
            if let Some(r) = rational_sqrt(&q) {
                return Some(field.rational(r));
            }
            for w in quadratic_surds(field) {
                let w2 = (&w * &w).as_rational()?;
                if let Some(r) = rational_sqrt(&(&q / &w2)) {
                    return Some(&w * &field.rational(r));
                }
            }
        }
        if field.degree() == 2 {
            return quadratic_field_sqrt(self);
        }
        None
    }

    /// Total bit length of numerators and denominators; a height proxy.
    pub fn bit_size(&self) -> u64 {
        self.coeffs.iter().map(|c| c.numer().bits() + c.denom().bits()).sum()
    }

    fn check_field(&self, other: &Self) {
        assert!(Field::same(&self.field, &other.field), "mixing elements of different fields");
    }
}

/// Multiplicative order of `u` if it is a root of unity.
pub fn root_of_unity_order(u: &FieldElement) -> Result<Option<u64>> {
    if u.is_zero() {
        return Err(Error::ZeroElement);
    }
    if let Some(q) = u.as_rational() {
        return Ok(if q.is_one() {
            Some(1)
        } else if q == int(-1) {
            Some(2)
        } else {
            None
        });
    }
    if !u.norm().abs().is_one() {
        return Ok(None);
    }
    let n = u.field.degree() as u64;
    // phi(k) >= sqrt(k / 2), so every admissible order is at most 2 n^2.
    let kmax = 2 * n * n + 2;
    let mut cur = u.clone();
    for k in 1..=kmax {
        if cur.is_one() {
            return Ok(if euler_phi(k) <= n { Some(k) } else { None });
        }
        cur = &cur * u;
    }
    Ok(None)
}

/// Result of a multiplicative dependence search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultDep {
    /// Least `(r1, r2)` with `r1 > 0`, `r2 != 0` and `a^r1 = b^r2`.
    pub exponents: Option<(u64, i64)>,
    /// False when the answer came from the bounded search.
    pub exhaustive: bool,
}

/// Least relation `a^r1 = b^r2`, searched exactly where possible.
pub fn multiplicative_dependence(a: &FieldElement, b: &FieldElement, bound: u64) -> Result<MultDep> {
    a.check_field(b);
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    if root_of_unity_order(a)?.is_some() || root_of_unity_order(b)?.is_some() {
        return Err(Error::RootOfUnityInput);
    }
    if let (Some(qa), Some(qb)) = (a.as_rational(), b.as_rational()) {
        return Ok(MultDep { exponents: rational_dependence(&qa, &qb), exhaustive: true });
    }
    let na = a.norm().abs();
    let nb = b.norm().abs();
    match (na.is_one(), nb.is_one()) {
        (false, false) => {
            let Some((p, q)) = log_ratio(&na, &nb) else {
                return Ok(MultDep { exponents: None, exhaustive: true });
            };
            // Any relation has (r1, r2) = k (q, p); it exists iff a^q b^-p is a root of unity.
            let w = &a.pow_u(q) * &b.pow(-p)?;
            let exponents = root_of_unity_order(&w)?.map(|k| (q * k, p * k as i64));
            Ok(MultDep { exponents, exhaustive: true })
        }
        (true, true) => {
            let mut a_pows = vec![a.field.one()];
            let mut b_pows = vec![b.field.one()];
            let b_inv = b.inv()?;
            let mut b_neg = vec![b.field.one()];
            for i in 1..=bound as usize {
                a_pows.push(&a_pows[i - 1] * a);
                b_pows.push(&b_pows[i - 1] * b);
                b_neg.push(&b_neg[i - 1] * &b_inv);
            }
            for r1 in 1..=bound as usize {
                for r2 in 1..=bound as usize {
                    if a_pows[r1] == b_pows[r2] {
                        return Ok(found(r1, r2 as i64));
                    }
                    if a_pows[r1] == b_neg[r2] {
                        return Ok(found(r1, -(r2 as i64)));
                    }
                }
            }
            Ok(MultDep { exponents: None, exhaustive: false })
        }
        _ => Ok(MultDep { exponents: None, exhaustive: true }),
    }
}

fn found(r1: usize, r2: i64) -> MultDep {
    MultDep { exponents: Some((r1 as u64, r2)), exhaustive: false }
}

/// Least `(r1, r2)` with `a^r1 = b^r2` for rationals that are not `0, 1, -1`.
fn rational_dependence(a: &Rational, b: &Rational) -> Option<(u64, i64)> {
    let (p, q) = log_ratio(&a.abs(), &b.abs())?;
    let sign_ok = |k: u64| {
        let lhs = a.is_negative() && (q * k) % 2 == 1;
        let rhs = b.is_negative() && (p * k as i64) % 2 != 0;
        lhs == rhs
    };
    let k = if sign_ok(1) { 1 } else { 2 };
    Some((q * k, p * k as i64))
}

/// For positive rationals `a, b != 1`, the reduced `(p, q)` with `q > 0` and
/// `log a / log b = p / q`, if the ratio is rational.
fn log_ratio(a: &Rational, b: &Rational) -> Option<(i64, u64)> {
    let values = vec![a.numer().clone(), a.denom().clone(), b.numer().clone(), b.denom().clone()];
    let base = coprime_base(values);
    let va = exponent_vector(a, &base);
    let vb = exponent_vector(b, &base);
    let pivot = vb.iter().position(|e| *e != 0)?;
    let lambda = Rational::new(BigInt::from(va[pivot]), BigInt::from(vb[pivot]));
    for (ea, eb) in va.iter().zip(&vb) {
        if Rational::from_integer(BigInt::from(*ea)) != &lambda * BigInt::from(*eb) {
            return None;
        }
    }
    if lambda.is_zero() {
        return None;
    }
    Some((lambda.numer().to_i64()?, lambda.denom().to_u64()?))
}

/// Pairwise coprime integers `> 1` generating the given values multiplicatively.
fn coprime_base(values: Vec<BigInt>) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = values.into_iter().map(|v| v.abs()).filter(|v| *v > BigInt::one()).collect();
    loop {
        base.sort();
        base.dedup();
        let mut split = None;
        'outer: for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    split = Some((i, j, g));
                    break 'outer;
                }
            }
        }
        let Some((i, j, g)) = split else { return base };
        let x = &base[i] / &g;
        let y = &base[j] / &g;
        base.remove(j);
        base.remove(i);
        for v in [x, y, g] {
            if v > BigInt::one() {
                base.push(v);
            }
        }
    }
}

fn exponent_vector(q: &Rational, base: &[BigInt]) -> Vec<i64> {
    let count = |n: &BigInt, e: &BigInt| {
        let mut n = n.abs();
        let mut k = 0i64;
        while (&n % e).is_zero() {
            n /= e;
            k += 1;
        }
        k
    };
    base.iter().map(|e| count(q.numer(), e) - count(q.denom(), e)).collect()
}

pub fn euler_phi(mut k: u64) -> u64 {
    let mut result = k;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            while k.is_multiple_of(p) {
                k /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if k > 1 {
        result -= result / k;
    }
    result
}

fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    // t^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_poly(d);
            num = qpoly::exact_int_div(&num, &den);
        }
    }
    num
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &n * &n == *q.numer() && &d * &d == *q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Elements with rational squares spanning the quadratic subfields of a
/// cyclotomic field, closed under products.
fn quadratic_surds(field: &FieldRef) -> Vec<FieldElement> {
    let FieldMode::Cyclotomic(n) = *field.mode() else { return Vec::new() };
    let n = n as u64;
    let t = field.generator();
    let zeta = |order: u64| t.pow_u(n / order);
    let mut gens = Vec::new();
    if n.is_multiple_of(4) {
        gens.push(zeta(4));
    }
    if n.is_multiple_of(8) {
        let z8 = zeta(8);
        gens.push(&z8 + &z8.pow_u(7));
    }
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            if p > 2 {
                // Quadratic Gauss sum: its square is (-1)^((p-1)/2) p.
                let zp = zeta(p);
                let mut g = field.zero();
                for a in 1..p {
                    let legendre = mod_pow(a, (p - 1) / 2, p);
                    let term = zp.pow_u(a);
                    g = if legendre == 1 { &g + &term } else { &g - &term };
                }
                gens.push(g);
            }
        }
        p += 1;
    }
    let mut all = vec![field.one()];
    for g in gens {
        let extra: Vec<_> = all.iter().map(|w| w * &g).collect();
        all.extend(extra);
    }
    all.remove(0);
    all
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn quadratic_field_sqrt(delta: &FieldElement) -> Option<FieldElement> {
    let field = &delta.field;
    let m = field.minpoly();
    let half_m1 = &m[1] / int(2);
    // s = t + m1/2 satisfies s^2 = disc.
    let disc = &half_m1 * &half_m1 - &m[0];
    let c = delta.coeffs();
    let e0 = &c[0] - &c[1] * &half_m1;
    let e1 = c[1].clone();
    let s = &field.generator() + &field.rational(half_m1.clone());
    let mut candidates: Vec<(Rational, Rational)> = Vec::new();
    if e1.is_zero() {
        if let Some(u) = rational_sqrt(&e0) {
            candidates.push((u, int(0)));
        }
        if let Some(v) = rational_sqrt(&(&e0 / &disc)) {
            candidates.push((int(0), v));
        }
    } else if let Some(r) = rational_sqrt(&(&e0 * &e0 - &e1 * &e1 * &disc)) {
        for u2 in [(&e0 + &r) / int(2), (&e0 - &r) / int(2)] {
            if let Some(u) = rational_sqrt(&u2) {
                if !u.is_zero() {
                    let v = &e1 / (int(2) * &u);
                    candidates.push((u, v));
                }
            }
        }
    }
    for (u, v) in candidates {
        let y = &field.rational(u) + &(&s * &field.rational(v));
        if &y * &y == *delta {
            return Some(y);
        }
    }
    None
}

fn reduce(coeffs: &mut Vec<Rational>, minpoly: &[Rational]) {
    let n = minpoly.len() - 1;
    if coeffs.len() > n {
        for k in (n..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                if !minpoly[i].is_zero() {
                    let delta = &c * &minpoly[i];
                    coeffs[k - n + i] -= delta;
                }
            }
        }
        coeffs.truncate(n);
    }
    qpoly::trim(coeffs);
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && Field::same(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// An arbitrary but fixed total order, used for canonical output.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs().cmp(&other.coeffs())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    /// Rationals print bare; other elements print as a parenthesized
    /// polynomial in `t`, highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", q);
        }
        write!(f, "(")?;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{}", a)?,
                (_, true) => write!(f, "t")?,
                (_, false) => write!(f, "{}*t", a)?,
            }
            if k > 1 {
                write!(f, "^{}", k)?;
            }
        }
        write!(f, ")")
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        qpoly::trim(&mut coeffs);
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.field.zero();
        }
        if self.coeffs.len() == 1 && rhs.coeffs.len() == 1 {
            return FieldElement { field: self.field.clone(), coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        let prod = qpoly::mul(&self.coeffs, &rhs.coeffs);
        FieldElement::from_coeffs(&self.field, prod)
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    /// Panics on a zero divisor; use [`FieldElement::checked_div`] otherwise.
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero in field arithmetic")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Dense univariate polynomials over the rationals, constant term first.
pub(crate) mod qpoly {
    use super::*;

    pub fn trim(v: &mut Vec<Rational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
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

    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead = &b[db];
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        for k in (db..r.len()).rev() {
            let c = &r[k] / lead;
            if c.is_zero() {
                continue;
            }
            for i in 0..=db {
                let delta = &c * &b[i];
                r[k - db + i] -= delta;
            }
            q[k - db] = c;
        }
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    /// Inverse of `a` modulo `m`, or `None` if they share a factor.
    pub fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
        // Invariant: s_i * a = r_i (mod m).
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        trim(&mut r1);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let qs = if q.is_empty() || s1.is_empty() { Vec::new() } else { mul(&q, &s1) };
            let mut s2 = s0.clone();
            if s2.len() < qs.len() {
                s2.resize(qs.len(), Rational::zero());
            }
            for (i, c) in qs.into_iter().enumerate() {
                s2[i] -= c;
            }
            trim(&mut s2);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip();
        Some(s0.into_iter().map(|x| x * &c).collect())
    }

    pub fn exact_int_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let mut q = vec![BigInt::zero(); r.len() - db];
        for k in (db..r.len()).rev() {
            let c = &r[k] / &b[db];
            for i in 0..=db {
                let delta = &c * &b[i];
                r[k - db + i] -= delta;
            }
            q[k - db] = c;
        }
        q
    }

    pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
        let n = m.len();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else { return Rational::zero() };
            if piv != col {
                m.swap(piv, col);
                det = -det;
            }
            let p = m[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &p;
                for c in col..n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
        det
    }

    /// Some rational root of `m`, found by the rational root theorem.
    /// Coefficients too large to enumerate divisors are skipped.
    pub fn rational_root(m: &[Rational]) -> Option<Rational> {
        if m[0].is_zero() {
            return Some(Rational::zero());
        }
        let lcm = m.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = m.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let ps = small_divisors(&ints[0])?;
        let qs = small_divisors(ints.last().unwrap())?;
        for p in &ps {
            for q in &qs {
                for sign in [1i64, -1] {
                    let cand = Rational::new(BigInt::from(*p as i64 * sign), BigInt::from(*q as i64));
                    let mut acc = Rational::zero();
                    for c in m.iter().rev() {
                        acc = acc * &cand + c;
                    }
                    if acc.is_zero() {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
        let n = n.abs().to_u64().filter(|v| *v <= 1 << 40)?;
        let mut out = Vec::new();
        let mut d = 1;
        while d * d <= n {
            if n % d == 0 {
                out.push(d);
                if d * d != n {
                    out.push(n / d);
                }
            }
            d += 1;
        }
        Some(out)
    }
}
