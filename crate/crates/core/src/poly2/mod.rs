//! Sparse bivariate and dense univariate polynomials over the working field.

mod kernel;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::numfield::{Field, FieldElement, FieldRef};

pub use text::{parse_pair, parse_poly};

/// Exponent pair `x^x * y^y`, ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.x).cmp(&(other.degree(), other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct BiPoly {
    field: FieldRef,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl BiPoly {
    pub fn zero(field: &FieldRef) -> Self {
        BiPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: FieldElement, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        let field = c.field().clone();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        BiPoly { field, terms }
    }

    pub fn x(field: &FieldRef) -> Self {
        Self::term(field.one(), Monomial::new(1, 0))
    }

    pub fn y(field: &FieldRef) -> Self {
        Self::term(field.one(), Monomial::new(0, 1))
    }

    pub fn from_terms(field: &FieldRef, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Self {
        let mut p = Self::zero(field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.degree())
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|m| m.y).max().unwrap_or(0)
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> FieldElement {
        self.terms.get(&m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(Monomial, &FieldElement)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// Homogeneous part of top degree.
    pub fn leading_form(&self) -> BiPoly {
        let d = self.degree();
        BiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Part of degree at most `d`.
    pub fn truncate(&self, d: u32) -> BiPoly {
        BiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= d).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> BiPoly {
        if c.is_zero() {
            return Self::zero(&self.field);
        }
        BiPoly { field: self.field.clone(), terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> BiPoly {
        match self.leading_term() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> BiPoly {
        let mut acc = Self::constant(self.field.one());
        let mut base = self.clone();
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

    pub fn checked_add(&self, rhs: &BiPoly) -> Result<BiPoly> {
        self.same_field(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(&self, rhs: &BiPoly) -> Result<BiPoly> {
        self.same_field(rhs)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(&self, rhs: &BiPoly) -> Result<BiPoly> {
        self.same_field(rhs)?;
        Ok(self * rhs)
    }

    fn same_field(&self, rhs: &BiPoly) -> Result<()> {
        if Field::same(&self.field, &rhs.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// `f(x_image, y_image)`, Horner in `x` with cached powers of `y_image`.
    pub fn substitute(&self, x_image: &BiPoly, y_image: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut by_x: BTreeMap<u32, Vec<(u32, &FieldElement)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_x.entry(m.x).or_default().push((m.y, c));
        }
        let mut y_pows = vec![Self::constant(self.field.one())];
        for _ in 0..self.deg_y() {
            let next = &y_pows[y_pows.len() - 1] * y_image;
            y_pows.push(next);
        }
        let mut acc = Self::zero(&self.field);
        let mut prev_x = None;
        for (&dx, row) in by_x.iter().rev() {
            if let Some(px) = prev_x {
                for _ in dx..px {
                    acc = &acc * x_image;
                }
            }
            let mut inner = Self::zero(&self.field);
            for (dy, c) in row {
                inner = &inner + &y_pows[*dy as usize].scale(c);
            }
            acc = &acc + &inner;
            prev_x = Some(dx);
        }
        for _ in 0..prev_x.unwrap_or(0) {
            acc = &acc * x_image;
        }
        acc
    }

    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut x_pows = vec![self.field.one()];
        let mut y_pows = vec![self.field.one()];
        for _ in 0..self.deg_x() {
            let next = &x_pows[x_pows.len() - 1] * x;
            x_pows.push(next);
        }
        for _ in 0..self.deg_y() {
            let next = &y_pows[y_pows.len() - 1] * y;
            y_pows.push(next);
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            acc = &acc + &(&(c * &x_pows[m.x as usize]) * &y_pows[m.y as usize]);
        }
        acc
    }

    pub fn derivative_x(&self) -> BiPoly {
        let f = &self.field;
        BiPoly::from_terms(
            f,
            self.terms.iter().filter(|(m, _)| m.x > 0).map(|(m, c)| (Monomial::new(m.x - 1, m.y), c * &f.int(m.x as i64))),
        )
    }

    pub fn derivative_y(&self) -> BiPoly {
        let f = &self.field;
        BiPoly::from_terms(
            f,
            self.terms.iter().filter(|(m, _)| m.y > 0).map(|(m, c)| (Monomial::new(m.x, m.y - 1), c * &f.int(m.y as i64))),
        )
    }

    /// The polynomial as a univariate in `y`, if it does not involve `x`.
    pub fn as_univariate_y(&self) -> Option<UniPoly> {
        if self.terms.keys().any(|m| m.x > 0) {
            return None;
        }
        let mut coeffs = vec![self.field.zero(); self.deg_y() as usize + 1];
        for (m, c) in &self.terms {
            coeffs[m.y as usize] = c.clone();
        }
        Some(UniPoly::new(&self.field, coeffs))
    }

    pub fn bit_size(&self) -> u64 {
        self.terms.values().map(|c| c.bit_size()).sum()
    }
}

/// `c` with `f = c * g`, if it exists.
pub fn proportional(f: &BiPoly, g: &BiPoly) -> Result<Option<FieldElement>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    f.same_field(g)?;
    if f.terms.len() != g.terms.len() {
        return Ok(None);
    }
    let (mf, cf) = f.leading_term().unwrap();
    let (mg, cg) = g.leading_term().unwrap();
    if mf != mg {
        return Ok(None);
    }
    let ratio = cf / cg;
    for ((m1, c1), (m2, c2)) in f.terms.iter().zip(&g.terms) {
        if m1 != m2 || *c1 != c2 * &ratio {
            return Ok(None);
        }
    }
    Ok(Some(ratio))
}

/// Nonzero `f` and `g` define the same curve iff they are proportional.
pub fn same_curve(f: &BiPoly, g: &BiPoly) -> bool {
    matches!(proportional(f, g), Ok(Some(_)))
}

/// Expresses each target as a linear combination of `basis` (and of the
/// constant 1 when `with_constant`). Row `i` of the answer holds the
/// coefficients of target `i`, the constant coefficient last.
pub fn solve_linear_coeffs(
    targets: &[BiPoly],
    basis: &[BiPoly],
    with_constant: bool,
) -> Option<Vec<Vec<FieldElement>>> {
    let field = basis.first().or(targets.first())?.field().clone();
    let mut cols: Vec<BiPoly> = basis.to_vec();
    if with_constant {
        cols.push(BiPoly::constant(field.one()));
    }
    let mut monos: Vec<Monomial> = cols.iter().chain(targets).flat_map(|p| p.terms.keys().copied()).collect();
    monos.sort();
    monos.dedup();
    let matrix: Vec<Vec<FieldElement>> = monos.iter().map(|m| cols.iter().map(|c| c.coeff(*m)).collect()).collect();
    targets
        .iter()
        .map(|t| {
            let rhs: Vec<FieldElement> = monos.iter().map(|m| t.coeff(*m)).collect();
            solve_system(&field, matrix.clone(), rhs)
        })
        .collect()
}

/// Solves `A v = b` exactly; free variables are set to zero.
pub(crate) fn solve_system(field: &FieldRef, mut a: Vec<Vec<FieldElement>>, mut b: Vec<FieldElement>) -> Option<Vec<FieldElement>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].inv().ok()?;
        for j in c..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let delta = &f * &a[r][j];
                    a[i][j] = &a[i][j] - &delta;
                }
                let delta = &f * &b[r];
                b[i] = &b[i] - &delta;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (i, c) in pivots.into_iter().enumerate() {
        x[c] = b[i].clone();
    }
    Some(x)
}

/// Basis of the coefficient vectors `c` with `Σ c_i polys[i] = 0`.
pub fn linear_relations(polys: &[BiPoly]) -> Vec<Vec<FieldElement>> {
    let Some(field) = polys.first().map(|p| p.field().clone()) else { return Vec::new() };
    let n = polys.len();
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms.keys().copied()).collect();
    monos.sort();
    monos.dedup();
    let mut a: Vec<Vec<FieldElement>> = monos.iter().map(|m| polys.iter().map(|p| p.coeff(*m)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in c..n {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..n {
                    let delta = &f * &a[r][j];
                    a[i][j] = &a[i][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![field.zero(); n];
            v[free] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row][free];
            }
            v
        })
        .collect()
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for BiPoly {}

impl Hash for BiPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl Ord for BiPoly {
    /// Compares term lists from the leading term down.
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.terms.iter().rev();
        let b = other.terms.iter().rev();
        for ((m1, c1), (m2, c2)) in a.zip(b) {
            let o = m1.cmp(m2).then_with(|| c1.cmp(c2));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for BiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let (mut acc, other) = if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &other.terms {
            acc.add_term(*m, c.clone());
        }
        acc
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut acc = self.clone();
        for (m, c) in &rhs.terms {
            acc.add_term(*m, -c);
        }
        acc
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { field: self.field.clone(), terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        assert!(Field::same(&self.field, &rhs.field), "mixing polynomials over different fields");
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let (small, large) = if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        if small.terms.len() == 1 {
            // Monomial times polynomial: shift and scale, no collisions.
            let (m0, c0) = small.terms.iter().next().unwrap();
            return BiPoly {
                field: self.field.clone(),
                terms: large.terms.iter().map(|(m, c)| (Monomial::new(m.x + m0.x, m.y + m0.y), c * c0)).collect(),
            };
        }
        if let Some(p) = kernel::mul_dense(small, large) {
            return p;
        }
        let mut acc: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let m = Monomial::new(m1.x + m2.x, m1.y + m2.y);
                let p = c1 * c2;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &p,
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        BiPoly { field: self.field.clone(), terms: acc }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// Dense polynomial in one variable, constant term first, trimmed.
#[derive(Clone)]
pub struct UniPoly {
    field: FieldRef,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: &FieldRef, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldRef) -> Self {
        UniPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn eval(&self, v: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * v) + c;
        }
        acc
    }

    /// `p(s + shift)` expanded in `s`.
    pub fn shift(&self, shift: &FieldElement) -> UniPoly {
        self.subst_linear(&self.field.one(), shift)
    }

    /// `p(scale*s + offset)` expanded in `s`.
    pub fn subst_linear(&self, scale: &FieldElement, offset: &FieldElement) -> UniPoly {
        let mut out = UniPoly::zero(&self.field);
        let lin = UniPoly::new(&self.field, vec![offset.clone(), scale.clone()]);
        for c in self.coeffs.iter().rev() {
            out = out.mul(&lin).add(&UniPoly::new(&self.field, vec![c.clone()]));
        }
        out
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(&self.field, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(&self.field, (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(&self.field, out)
    }

    pub fn scale(&self, c: &FieldElement) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|v| v * c).collect())
    }

    /// `p(var)` for a bivariate `var`.
    pub fn compose_bi(&self, var: &BiPoly) -> BiPoly {
        let mut acc = BiPoly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * var) + &BiPoly::constant(c.clone());
        }
        acc
    }

    /// The polynomial in the variable `y`.
    pub fn in_y(&self) -> BiPoly {
        BiPoly::from_terms(
            &self.field,
            self.coeffs.iter().enumerate().map(|(i, c)| (Monomial::new(0, i as u32), c.clone())),
        )
    }
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.in_y())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{rat, Field};
    use proptest::prelude::*;

    fn p(s: &str) -> BiPoly {
        parse_poly(s, &Field::rationals()).unwrap()
    }

    #[test]
    fn linear_relations_span_the_kernel() {
        let rels = linear_relations(&[p("x"), p("y"), p("x + y"), p("1")]);
        assert_eq!(rels.len(), 1);
        let v = &rels[0];
        let combo = [p("x"), p("y"), p("x + y"), p("1")]
            .iter()
            .zip(v)
            .fold(BiPoly::zero(&Field::rationals()), |acc, (f, c)| &acc + &f.scale(c));
        assert!(combo.is_zero());
        assert!(linear_relations(&[p("x"), p("y^2")]).is_empty());
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
        assert_eq!((&p("x^2*y") * &p("x*y^3")).degree(), 7);
        assert_eq!(&p("x + 1") - &p("x + 1"), BiPoly::zero(&Field::rationals()));
        let other = BiPoly::x(&Field::cyclotomic(3).unwrap());
        assert_eq!(p("x").checked_mul(&other), Err(Error::FieldMismatch));
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(p("x").substitute(&p("y"), &p("x")), p("y"));
        assert_eq!(p("x - y^2").substitute(&p("x + y^2"), &p("y")), p("x"));
        assert_eq!(p("x^2 + y").substitute(&p("2*x"), &p("3*y")), p("4*x^2 + 3*y"));
    }

    #[test]
    fn proportional_examples() {
        let f = Field::rationals();
        assert_eq!(proportional(&p("2*x - 2*y"), &p("x - y")).unwrap(), Some(f.int(2)));
        assert_eq!(proportional(&p("x"), &p("y")).unwrap(), None);
        assert_eq!(proportional(&p("3*x^2 - 3"), &p("x^2 - 1")).unwrap(), Some(f.int(3)));
        assert_eq!(proportional(&p("0"), &p("x")), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn linear_solve_examples() {
        let f = Field::rationals();
        let sol = solve_linear_coeffs(&[p("x + 1")], &[p("x")], true).unwrap();
        assert_eq!(sol, vec![vec![f.int(1), f.int(1)]]);
        let sol = solve_linear_coeffs(&[p("2*x")], &[p("x"), p("y")], false).unwrap();
        assert_eq!(sol, vec![vec![f.int(2), f.int(0)]]);
        assert!(solve_linear_coeffs(&[p("x^2")], &[p("x"), p("y")], false).is_none());
    }

    #[test]
    fn univariate_shift() {
        let f = Field::rationals();
        let q = UniPoly::new(&f, vec![f.int(0), f.int(0), f.int(1)]);
        // (s + 2)^2 = s^2 + 4 s + 4
        assert_eq!(q.shift(&f.int(2)).coeffs(), &[f.int(4), f.int(4), f.int(1)]);
        assert_eq!(q.eval(&f.rational(rat(1, 2))), f.rational(rat(1, 4)));
    }

    fn arb_poly() -> impl Strategy<Value = BiPoly> {
        proptest::collection::vec((0u32..4, 0u32..4, -5i64..5, 1i64..4), 0..6).prop_map(|ts| {
            let f = Field::rationals();
            BiPoly::from_terms(&f, ts.into_iter().map(|(a, b, n, d)| (Monomial::new(a, b), f.rational(rat(n, d)))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn identity_substitution(f in arb_poly()) {
            let field = Field::rationals();
            prop_assert_eq!(f.substitute(&BiPoly::x(&field), &BiPoly::y(&field)), f);
        }

        #[test]
        fn substitution_is_multiplicative(f in arb_poly(), g in arb_poly(), a in arb_poly(), b in arb_poly()) {
            let lhs = (&f * &g).substitute(&a, &b);
            let rhs = &f.substitute(&a, &b) * &g.substitute(&a, &b);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn proportional_reflexive_and_symmetric(f in arb_poly(), g in arb_poly()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert!(proportional(&f, &f).unwrap().unwrap().is_one());
            match (proportional(&f, &g).unwrap(), proportional(&g, &f).unwrap()) {
                (Some(c), Some(d)) => prop_assert!((&c * &d).is_one()),
                (None, None) => {}
                _ => prop_assert!(false, "asymmetric proportionality"),
            }
        }

        #[test]
        fn evaluation_commutes_with_substitution(f in arb_poly(), a in arb_poly(), b in arb_poly(),
                                                 u in -4i64..4, v in -4i64..4) {
            let field = Field::rationals();
            let (u, v) = (field.int(u), field.int(v));
            let lhs = f.substitute(&a, &b).eval(&u, &v);
            let rhs = f.eval(&a.eval(&u, &v), &b.eval(&u, &v));
            prop_assert_eq!(lhs, rhs);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn degree_is_additive(f in arb_poly(), g in arb_poly()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!((&f * &g).degree(), f.degree() + g.degree());
        }
    }
}
