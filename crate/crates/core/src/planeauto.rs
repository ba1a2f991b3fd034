//! Polynomial automorphisms of the affine plane.

use std::fmt;

use crate::amalgam;
use crate::error::{Error, Result};
use crate::numfield::{Field, FieldElement, FieldRef};
use crate::poly2::{parse_pair, BiPoly, Monomial, UniPoly};

/// `(x_image, y_image)`: the point `(u, v)` maps to `(x_image(u, v), y_image(u, v))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlaneAutomorphism {
    x_image: BiPoly,
    y_image: BiPoly,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePoint {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl PlanePoint {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        PlanePoint { x, y }
    }

    pub fn field(&self) -> &FieldRef {
        self.x.field()
    }

    pub fn bit_size(&self) -> u64 {
        self.x.bit_size() + self.y.bit_size()
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl PlaneAutomorphism {
    /// Builds and certifies an automorphism: Jacobian filter, then factorization.
    pub fn new(x_image: BiPoly, y_image: BiPoly) -> Result<Self> {
        if !Field::same(x_image.field(), y_image.field()) {
            return Err(Error::FieldMismatch);
        }
        let jac = jacobian(&x_image, &y_image);
        if !jac.is_constant() || jac.is_zero() {
            return Err(Error::NotAnAutomorphism(format!("Jacobian determinant {} is not a nonzero constant", jac)));
        }
        let phi = PlaneAutomorphism { x_image, y_image };
        amalgam::factorize(&phi)?;
        Ok(phi)
    }

    /// Parses `"(f, g)"` and certifies the result.
    pub fn parse(src: &str, field: &FieldRef) -> Result<Self> {
        let (f, g) = parse_pair(src, field)?;
        Self::new(f, g)
    }

    /// For components already known to form an automorphism.
    pub(crate) fn from_parts(x_image: BiPoly, y_image: BiPoly) -> Self {
        PlaneAutomorphism { x_image, y_image }
    }

    pub fn identity(field: &FieldRef) -> Self {
        PlaneAutomorphism { x_image: BiPoly::x(field), y_image: BiPoly::y(field) }
    }

    pub fn field(&self) -> &FieldRef {
        self.x_image.field()
    }

    pub fn x_image(&self) -> &BiPoly {
        &self.x_image
    }

    pub fn y_image(&self) -> &BiPoly {
        &self.y_image
    }

    pub fn components(&self) -> (&BiPoly, &BiPoly) {
        (&self.x_image, &self.y_image)
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.x_image.degree(), self.y_image.degree())
    }

    pub fn degree(&self) -> u32 {
        self.x_image.degree().max(self.y_image.degree())
    }

    pub fn is_identity(&self) -> bool {
        self.x_image == BiPoly::x(self.field()) && self.y_image == BiPoly::y(self.field())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PlaneAutomorphism) -> Result<PlaneAutomorphism> {
        if !Field::same(self.field(), inner.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(PlaneAutomorphism {
            x_image: self.x_image.substitute(&inner.x_image, &inner.y_image),
            y_image: self.y_image.substitute(&inner.x_image, &inner.y_image),
        })
    }

    pub fn invert(&self) -> Result<PlaneAutomorphism> {
        Ok(amalgam::factorize(self)?.inverse().to_automorphism())
    }

    /// `self^n` for `n >= 0`, by repeated composition through the normal form.
    pub fn power(&self, n: u64) -> Result<PlaneAutomorphism> {
        let w = amalgam::factorize(self)?;
        let mut acc = PlaneAutomorphism::identity(self.field());
        for _ in 0..n {
            acc = w.apply_to(&acc);
        }
        Ok(acc)
    }

    pub fn apply(&self, p: &PlanePoint) -> PlanePoint {
        PlanePoint { x: self.x_image.eval(&p.x, &p.y), y: self.y_image.eval(&p.x, &p.y) }
    }

    /// `f ∘ self`.
    pub fn pullback(&self, f: &BiPoly) -> BiPoly {
        f.substitute(&self.x_image, &self.y_image)
    }

    pub fn as_affine(&self) -> Option<AffineMap> {
        if self.degree() > 1 {
            return None;
        }
        let row = |f: &BiPoly| {
            [f.coeff(Monomial::new(1, 0)), f.coeff(Monomial::new(0, 1)), f.coeff(Monomial::ONE)]
        };
        let [p, q, e1] = row(&self.x_image);
        let [r, s, e2] = row(&self.y_image);
        Some(AffineMap { m: [[p, q], [r, s]], t: [e1, e2] })
    }

    /// `(a x + P(y), b y + c)` data when the map has that shape.
    pub fn as_triangular(&self) -> Option<Triangular> {
        let f = &self.x_image;
        let g = &self.y_image;
        if g.degree() > 1 || !g.coeff(Monomial::new(1, 0)).is_zero() {
            return None;
        }
        if f.terms().any(|(m, _)| m.x > 1 || (m.x == 1 && m.y > 0)) {
            return None;
        }
        let a = f.coeff(Monomial::new(1, 0));
        let p = (f - &BiPoly::term(a.clone(), Monomial::new(1, 0))).as_univariate_y()?;
        let b = g.coeff(Monomial::new(0, 1));
        let c = g.coeff(Monomial::ONE);
        if a.is_zero() || b.is_zero() {
            return None;
        }
        Some(Triangular { a, b, c, p })
    }

    pub fn is_affine(&self) -> bool {
        self.degree() <= 1
    }

    pub fn is_triangular(&self) -> bool {
        self.as_triangular().is_some()
    }
}

pub fn jacobian(f: &BiPoly, g: &BiPoly) -> BiPoly {
    &(&f.derivative_x() * &g.derivative_y()) - &(&f.derivative_y() * &g.derivative_x())
}

impl fmt::Display for PlaneAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x_image, self.y_image)
    }
}

impl fmt::Debug for PlaneAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `(m00 x + m01 y + t0, m10 x + m11 y + t1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    pub m: [[FieldElement; 2]; 2],
    pub t: [FieldElement; 2],
}

impl AffineMap {
    pub fn identity(field: &FieldRef) -> Self {
        AffineMap { m: [[field.one(), field.zero()], [field.zero(), field.one()]], t: [field.zero(), field.zero()] }
    }

    pub fn field(&self) -> &FieldRef {
        self.m[0][0].field()
    }

    pub fn det(&self) -> FieldElement {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }

    /// Upper-triangular: the y-component does not involve x.
    pub fn is_upper_triangular(&self) -> bool {
        self.m[1][0].is_zero()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        let (a, b) = (&self.m, &inner.m);
        let mm = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        let tt = |i: usize| &(&(&a[i][0] * &inner.t[0]) + &(&a[i][1] * &inner.t[1])) + &self.t[i];
        AffineMap { m: [[mm(0, 0), mm(0, 1)], [mm(1, 0), mm(1, 1)]], t: [tt(0), tt(1)] }
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let d = self.det().inv().map_err(|_| Error::NotAnAutomorphism("singular linear part".into()))?;
        let m = &self.m;
        let inv = [[&m[1][1] * &d, -&(&m[0][1] * &d)], [-&(&m[1][0] * &d), &m[0][0] * &d]];
        let t = [
            -&(&(&inv[0][0] * &self.t[0]) + &(&inv[0][1] * &self.t[1])),
            -&(&(&inv[1][0] * &self.t[0]) + &(&inv[1][1] * &self.t[1])),
        ];
        Ok(AffineMap { m: inv, t })
    }

    pub fn apply(&self, p: &PlanePoint) -> PlanePoint {
        let r = |i: usize| &(&(&self.m[i][0] * &p.x) + &(&self.m[i][1] * &p.y)) + &self.t[i];
        PlanePoint { x: r(0), y: r(1) }
    }

    /// `self ∘ (fx, fy)` on polynomial components.
    pub fn outer(&self, fx: &BiPoly, fy: &BiPoly) -> (BiPoly, BiPoly) {
        let r = |i: usize| {
            &(&fx.scale(&self.m[i][0]) + &fy.scale(&self.m[i][1])) + &BiPoly::constant(self.t[i].clone())
        };
        (r(0), r(1))
    }

    pub fn to_automorphism(&self) -> PlaneAutomorphism {
        let f = self.field();
        let (x, y) = self.outer(&BiPoly::x(f), &BiPoly::y(f));
        PlaneAutomorphism::from_parts(x, y)
    }

    /// Upper-triangular maps as triangular data.
    pub fn to_triangular(&self) -> Option<Triangular> {
        if !self.is_upper_triangular() {
            return None;
        }
        let f = self.field();
        Some(Triangular {
            a: self.m[0][0].clone(),
            b: self.m[1][1].clone(),
            c: self.t[1].clone(),
            p: UniPoly::new(f, vec![self.t[0].clone(), self.m[0][1].clone()]),
        })
    }
}

/// `(a x + P(y), b y + c)` with `a, b` nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Triangular {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub p: UniPoly,
}

impl Triangular {
    pub fn identity(field: &FieldRef) -> Self {
        Triangular { a: field.one(), b: field.one(), c: field.zero(), p: UniPoly::zero(field) }
    }

    pub fn field(&self) -> &FieldRef {
        self.a.field()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Triangular) -> Triangular {
        let p = inner.p.scale(&self.a).add(&self.p.subst_linear(&inner.b, &inner.c));
        Triangular {
            a: &self.a * &inner.a,
            b: &self.b * &inner.b,
            c: &(&self.b * &inner.c) + &self.c,
            p,
        }
    }

    pub fn inverse(&self) -> Triangular {
        let ai = self.a.inv().expect("nonzero scaling");
        let bi = self.b.inv().expect("nonzero scaling");
        let ci = -&(&bi * &self.c);
        let p = self.p.subst_linear(&bi, &ci).scale(&-&ai);
        Triangular { a: ai, b: bi, c: ci, p }
    }

    pub fn apply(&self, q: &PlanePoint) -> PlanePoint {
        PlanePoint { x: &(&self.a * &q.x) + &self.p.eval(&q.y), y: &(&self.b * &q.y) + &self.c }
    }

    /// `self ∘ (fx, fy)` on polynomial components.
    pub fn outer(&self, fx: &BiPoly, fy: &BiPoly) -> (BiPoly, BiPoly) {
        let x = &fx.scale(&self.a) + &self.p.compose_bi(fy);
        let y = &fy.scale(&self.b) + &BiPoly::constant(self.c.clone());
        (x, y)
    }

    pub fn to_automorphism(&self) -> PlaneAutomorphism {
        let f = self.field();
        let (x, y) = self.outer(&BiPoly::x(f), &BiPoly::y(f));
        PlaneAutomorphism::from_parts(x, y)
    }

    /// Degree of `P`, at least 1.
    pub fn degree(&self) -> u32 {
        self.p.degree().unwrap_or(0).max(1) as u32
    }

    pub fn to_affine(&self) -> Option<AffineMap> {
        if self.p.degree().unwrap_or(0) > 1 {
            return None;
        }
        let f = self.field();
        Some(AffineMap {
            m: [[self.a.clone(), self.p.coeff(1)], [f.zero(), self.b.clone()]],
            t: [self.p.coeff(0), self.c.clone()],
        })
    }
}
