//! Invariant-subvariety lattices of single algebraic automorphisms.
//!
//! A bounded automorphism is conjugate into one of the two factors, and
//! there it is either triangular `(ax + P(y), by + c)` or affine. Triangular
//! maps are put in diagonal form, affine ones are first moved to triangular
//! form through an eigenvector of the linear part. The classification then
//! reads off the invariant curves: fibers of an equivariant polynomial, fibers
//! of an equivariant pencil `[num : den]`, or a finite list of curves.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::amalgam::{cyclically_reduce, factorize};
use crate::error::{Error, Result};
use crate::numfield::{multiplicative_dependence, root_of_unity_order, FieldElement, FieldRef};
use crate::planeauto::{AffineMap, PlaneAutomorphism, PlanePoint, Triangular};
use crate::poly2::{linear_relations, solve_linear_coeffs, BiPoly, UniPoly};

pub type TriangularData = Triangular;

/// A closed subset of the plane: whole plane, or finitely many curves and
/// points. Curves are kept monic and sorted, points off the curves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subvariety {
    curves: Vec<BiPoly>,
    points: Vec<PlanePoint>,
    whole_plane: bool,
}

impl Subvariety {
    pub fn whole_plane() -> Self {
        Subvariety { curves: Vec::new(), points: Vec::new(), whole_plane: true }
    }

    pub fn empty() -> Self {
        Subvariety { curves: Vec::new(), points: Vec::new(), whole_plane: false }
    }

    /// Constant polynomials are dropped.
    pub fn new(curves: Vec<BiPoly>, points: Vec<PlanePoint>) -> Self {
        let mut curves: Vec<BiPoly> = curves.into_iter().filter(|c| !c.is_constant()).map(|c| c.monic()).collect();
        curves.sort();
        curves.dedup();
        let mut points: Vec<PlanePoint> =
            points.into_iter().filter(|p| !curves.iter().any(|c| c.eval(&p.x, &p.y).is_zero())).collect();
        points.sort();
        points.dedup();
        Subvariety { curves, points, whole_plane: false }
    }

    pub fn curves(&self) -> &[BiPoly] {
        &self.curves
    }

    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    pub fn is_whole_plane(&self) -> bool {
        self.whole_plane
    }

    pub fn is_empty(&self) -> bool {
        !self.whole_plane && self.curves.is_empty() && self.points.is_empty()
    }

    /// 2, 1 or 0; `None` when empty.
    pub fn dimension(&self) -> Option<u32> {
        if self.whole_plane {
            Some(2)
        } else if !self.curves.is_empty() {
            Some(1)
        } else if !self.points.is_empty() {
            Some(0)
        } else {
            None
        }
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.whole_plane || self.points.contains(p) || self.curves.iter().any(|c| c.eval(&p.x, &p.y).is_zero())
    }

    pub fn union(&self, other: &Subvariety) -> Subvariety {
        if self.whole_plane || other.whole_plane {
            return Subvariety::whole_plane();
        }
        Subvariety::new(
            self.curves.iter().chain(&other.curves).cloned().collect(),
            self.points.iter().chain(&other.points).cloned().collect(),
        )
    }

    /// Image under an automorphism, given the automorphism and its inverse.
    pub fn image(&self, phi: &PlaneAutomorphism, phi_inv: &PlaneAutomorphism) -> Subvariety {
        if self.whole_plane {
            return Subvariety::whole_plane();
        }
        Subvariety::new(
            self.curves.iter().map(|c| phi_inv.pullback(c)).collect(),
            self.points.iter().map(|p| phi.apply(p)).collect(),
        )
    }
}

impl fmt::Display for Subvariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.whole_plane {
            return write!(f, "plane");
        }
        let curves: Vec<String> = self.curves.iter().map(|c| c.to_string()).collect();
        let points: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "curves [{}] points [{}]", curves.join(", "), points.join(", "))
    }
}

/// Coordinates `(x̃, ỹ)` in which a triangular map reads
/// `(a x̃ + h1(ỹ), b ỹ)`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub x_tilde: BiPoly,
    pub y_tilde: BiPoly,
    /// `x̃ = x − h(ỹ)`.
    pub h: UniPoly,
    /// Resonant part, supported on exponents `i` with `a = b^i`.
    pub h1: UniPoly,
    /// `ỹ = y − center`.
    pub center: FieldElement,
    pub change_of_coords: PlaneAutomorphism,
}

pub fn diagonalize(t: &Triangular) -> Result<Diagonalization> {
    let f = t.field();
    let center = if t.b.is_one() {
        if !t.c.is_zero() {
            return Err(Error::PreconditionViolation("y-translation without y-scaling has no diagonal form".into()));
        }
        f.zero()
    } else {
        &t.c / &(&f.one() - &t.b)
    };
    let shifted = t.p.shift(&center);
    let mut h = Vec::new();
    let mut h1 = Vec::new();
    let mut bi = f.one();
    for ai in shifted.coeffs() {
        if bi == t.a {
            h.push(f.zero());
            h1.push(ai.clone());
        } else {
            h.push(ai / &(&bi - &t.a));
            h1.push(f.zero());
        }
        bi = &bi * &t.b;
    }
    let h = UniPoly::new(f, h);
    let h1 = UniPoly::new(f, h1);
    let y_tilde = &BiPoly::y(f) - &BiPoly::constant(center.clone());
    let x_tilde = &BiPoly::x(f) - &h.compose_bi(&y_tilde);
    let change_of_coords = PlaneAutomorphism::from_parts(x_tilde.clone(), y_tilde.clone());
    Ok(Diagonalization { x_tilde, y_tilde, h, h1, center, change_of_coords })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    FiniteOrder(u64),
    OrbitFibration,
    ProjectiveQuotient,
    NonFibration,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::FiniteOrder(n) => write!(f, "FiniteOrder({})", n),
            Kind::OrbitFibration => write!(f, "OrbitFibration"),
            Kind::ProjectiveQuotient => write!(f, "ProjectiveQuotient"),
            Kind::NonFibration => write!(f, "NonFibration"),
        }
    }
}

/// Shape of the lattice of invariant subvarieties of one automorphism, in
/// ambient coordinates.
#[derive(Clone, Debug)]
pub struct LatticeDescriptor {
    pub kind: Kind,
    /// `π` with `π∘φ = u π + v`.
    pub pi_affine: Option<BiPoly>,
    /// `(num, den)` spanning a pencil preserved by `φ`.
    pub pi_projective: Option<(BiPoly, BiPoly)>,
    /// Number of fibers permuted cyclically together.
    pub grouping_order: u64,
    pub transversal_curve: Option<BiPoly>,
    /// Every point of this zero set is torsion. May be reducible.
    pub torsion_locus: Option<BiPoly>,
    /// Fixed point or base point of the pencil.
    pub distinguished_point: Option<PlanePoint>,
    pub invariant_curves: Vec<BiPoly>,
    /// `u` for an orbit fibration, the pencil multiplier for a projective quotient.
    pub pi_scaling: Option<FieldElement>,
    /// Diagonal coordinates `(x̃, ỹ)` when the map has them.
    pub coordinates: Option<(BiPoly, BiPoly)>,
    /// `(s1, s2)` with `num/den = x̃^s1 / ỹ^s2`; `s2 < 0` puts both factors in `num`.
    pub exponents: Option<(u64, i64)>,
    pub caveats: Vec<String>,
}

impl LatticeDescriptor {
    fn new(kind: Kind) -> Self {
        LatticeDescriptor {
            kind,
            pi_affine: None,
            pi_projective: None,
            grouping_order: 1,
            transversal_curve: None,
            torsion_locus: None,
            distinguished_point: None,
            invariant_curves: Vec::new(),
            pi_scaling: None,
            coordinates: None,
            exponents: None,
            caveats: Vec::new(),
        }
    }

    pub fn is_fibration(&self) -> bool {
        matches!(self.kind, Kind::OrbitFibration | Kind::ProjectiveQuotient)
    }

    /// Curves every element of the lattice is built from, apart from fibers.
    pub fn special_curves(&self) -> Vec<BiPoly> {
        let mut out: Vec<BiPoly> = self.transversal_curve.iter().cloned().collect();
        out.extend(self.invariant_curves.iter().cloned());
        if self.kind == Kind::ProjectiveQuotient {
            if let Some((xt, yt)) = &self.coordinates {
                out.push(xt.clone());
                out.push(yt.clone());
            }
        }
        out
    }

    /// Bound on the degree of any irreducible curve in the lattice.
    pub fn max_curve_degree(&self) -> u32 {
        let mut d = self.special_curves().iter().map(|c| c.degree()).max().unwrap_or(0);
        if let Some(pi) = &self.pi_affine {
            d = d.max(pi.degree());
        }
        if let Some((n, m)) = &self.pi_projective {
            d = d.max(n.degree()).max(m.degree());
        }
        d
    }

    /// Value of the equivariant map at `p`: `(π(p), 1)` or `(num(p), den(p))`.
    pub fn value_at(&self, p: &PlanePoint) -> Option<(FieldElement, FieldElement)> {
        if let Some(pi) = &self.pi_affine {
            return Some((pi.eval(&p.x, &p.y), p.field().one()));
        }
        let (n, d) = self.pi_projective.as_ref()?;
        Some((n.eval(&p.x, &p.y), d.eval(&p.x, &p.y)))
    }

    /// Irreducible components of the fiber over `[alpha : beta]`.
    pub fn fiber_components(&self, alpha: &FieldElement, beta: &FieldElement) -> Vec<BiPoly> {
        if let Some(pi) = &self.pi_affine {
            if beta.is_zero() {
                return Vec::new();
            }
            return vec![pi - &BiPoly::constant(alpha / beta)];
        }
        let Some((num, den)) = &self.pi_projective else { return Vec::new() };
        let (xt, yt) = self.coordinates.as_ref().expect("pencil comes with coordinates");
        let den_constant = den.is_constant();
        if beta.is_zero() {
            if den_constant {
                Vec::new()
            } else {
                vec![yt.clone()]
            }
        } else if alpha.is_zero() {
            if den_constant {
                vec![xt.clone(), yt.clone()]
            } else {
                vec![xt.clone()]
            }
        } else {
            vec![&num.scale(beta) - &den.scale(alpha)]
        }
    }

    /// Rewrites curves and points through the coordinate change `alpha`:
    /// data computed for `α∘φ∘α⁻¹` becomes data for `φ`.
    fn pulled_back(self, alpha: &AffineMap) -> Result<Self> {
        let a = alpha.to_automorphism();
        let inv = alpha.inverse()?;
        let pb = |f: &BiPoly| a.pullback(f);
        Ok(LatticeDescriptor {
            kind: self.kind,
            pi_affine: self.pi_affine.as_ref().map(pb),
            pi_projective: self.pi_projective.as_ref().map(|(n, d)| (pb(n), pb(d))),
            grouping_order: self.grouping_order,
            transversal_curve: self.transversal_curve.as_ref().map(pb),
            torsion_locus: self.torsion_locus.as_ref().map(pb),
            distinguished_point: self.distinguished_point.as_ref().map(|q| inv.apply(q)),
            invariant_curves: self.invariant_curves.iter().map(pb).collect(),
            pi_scaling: self.pi_scaling,
            coordinates: self.coordinates.as_ref().map(|(x, y)| (pb(x), pb(y))),
            exponents: self.exponents,
            caveats: self.caveats,
        })
    }
}

fn monomial_y(field: &FieldRef, c: FieldElement, n: usize) -> UniPoly {
    let mut v = vec![field.zero(); n];
    v.push(c);
    UniPoly::new(field, v)
}

/// `g` with `g(y + c) − g(y) = p` and `g(0) = 0`, top degree down.
fn solve_translation(p: &UniPoly, c: &FieldElement) -> UniPoly {
    let f = p.field();
    let mut g = UniPoly::zero(f);
    let mut rest = p.clone();
    while let Some(n) = rest.degree() {
        let coef = &rest.coeff(n) / &(&f.int(n as i64 + 1) * c);
        let term = monomial_y(f, coef, n + 1);
        rest = rest.sub(&term.shift(c).sub(&term));
        g = g.add(&term);
    }
    g
}

/// `h` with `h(y + c) − a h(y) = p`, for `a ≠ 1`.
fn solve_twisted(p: &UniPoly, a: &FieldElement, c: &FieldElement) -> UniPoly {
    let f = p.field();
    let mut h = UniPoly::zero(f);
    let mut rest = p.clone();
    let denom = &f.one() - a;
    while let Some(n) = rest.degree() {
        let term = monomial_y(f, &rest.coeff(n) / &denom, n);
        rest = rest.sub(&term.shift(c).sub(&term.scale(a)));
        h = h.add(&term);
    }
    h
}

/// Classifies a triangular or affine map. Affine maps outside the triangular
/// subgroup need both eigenvalues of their linear part in the field.
pub fn classify(phi: &PlaneAutomorphism, multdep_bound: u64) -> Result<LatticeDescriptor> {
    if let Some(t) = phi.as_triangular() {
        return classify_triangular(&t, multdep_bound);
    }
    let Some(aff) = phi.as_affine() else {
        return Err(Error::PreconditionViolation(format!("{} is neither affine nor triangular", phi)));
    };
    let alpha = eigen_frame(&aff)?;
    let psi = alpha.compose(&aff).compose(&alpha.inverse()?);
    let t = psi
        .to_triangular()
        .ok_or_else(|| Error::InternalVerificationFailure("eigenvector frame did not triangularize".into()))?;
    classify_triangular(&t, multdep_bound)?.pulled_back(&alpha)
}

/// `α = (y, ℓ)` with `ℓ` a left eigenvector of the linear part, so that
/// `α∘φ∘α⁻¹` is upper triangular. Only called when `m10 ≠ 0`.
fn eigen_frame(aff: &AffineMap) -> Result<AffineMap> {
    let f = aff.field();
    let [[p, _], [r, s]] = &aff.m;
    let tr = p + s;
    let det = aff.det();
    let disc = &(&tr * &tr) - &(&f.int(4) * &det);
    let root = disc.sqrt().ok_or_else(|| Error::EigenvalueOutsideField {
        char_poly: format!("z^2 - ({})*z + ({})", tr, det),
    })?;
    let b = &(&tr + &root) / &f.int(2);
    Ok(AffineMap { m: [[f.zero(), f.one()], [r.clone(), &b - p]], t: [f.zero(), f.zero()] })
}

fn classify_triangular(t: &Triangular, multdep_bound: u64) -> Result<LatticeDescriptor> {
    let f = t.field();
    let x = BiPoly::x(f);
    let y = BiPoly::y(f);
    let ord_a = root_of_unity_order(&t.a)?;
    let ord_b = root_of_unity_order(&t.b)?;

    if t.b.is_one() && !t.c.is_zero() {
        if t.a.is_one() {
            let pi = &x - &solve_translation(&t.p, &t.c).in_y();
            let mut d = LatticeDescriptor::new(Kind::OrbitFibration);
            d.coordinates = Some((pi.clone(), y));
            d.pi_affine = Some(pi);
            d.pi_scaling = Some(f.one());
            return Ok(d);
        }
        let xbar = &x - &solve_twisted(&t.p, &t.a, &t.c).in_y();
        let mut d = match ord_a {
            Some(m) => {
                let mut d = LatticeDescriptor::new(Kind::OrbitFibration);
                d.pi_affine = Some(xbar.clone());
                d.pi_scaling = Some(t.a.clone());
                d.grouping_order = m;
                d
            }
            None => {
                let mut d = LatticeDescriptor::new(Kind::NonFibration);
                d.invariant_curves = vec![xbar.clone()];
                d
            }
        };
        d.coordinates = Some((xbar, y));
        return Ok(d);
    }

    let diag = diagonalize(t)?;
    let (xt, yt) = (diag.x_tilde.clone(), diag.y_tilde.clone());
    let origin = PlanePoint::new(diag.h.coeff(0), diag.center.clone());
    let resonant = !diag.h1.is_zero();
    let mut d = match (ord_a, ord_b) {
        (Some(m), Some(n)) if !resonant => LatticeDescriptor::new(Kind::FiniteOrder(m.lcm(&n))),
        (Some(_), Some(n)) => {
            let mut d = LatticeDescriptor::new(Kind::OrbitFibration);
            d.pi_affine = Some(yt.clone());
            d.pi_scaling = Some(t.b.clone());
            d.grouping_order = n;
            d.torsion_locus = Some(diag.h1.compose_bi(&yt));
            d
        }
        (None, Some(n)) => {
            let mut d = LatticeDescriptor::new(Kind::OrbitFibration);
            d.pi_affine = Some(yt.clone());
            d.pi_scaling = Some(t.b.clone());
            d.grouping_order = n;
            d.transversal_curve = Some(xt.clone());
            d.torsion_locus = Some(xt.clone());
            d
        }
        (Some(m), None) if !resonant => {
            let mut d = LatticeDescriptor::new(Kind::OrbitFibration);
            d.pi_affine = Some(xt.clone());
            d.pi_scaling = Some(t.a.clone());
            d.grouping_order = m;
            d.transversal_curve = Some(yt.clone());
            d.torsion_locus = Some(yt.clone());
            d
        }
        // a = 1 and P̃ has a constant term: (x̃ + ã0, b ỹ) only keeps ỹ = 0.
        (Some(_), None) => {
            let mut d = LatticeDescriptor::new(Kind::NonFibration);
            d.invariant_curves = vec![yt.clone()];
            d
        }
        (None, None) if resonant => {
            let mut d = LatticeDescriptor::new(Kind::NonFibration);
            d.invariant_curves = vec![yt.clone()];
            d.distinguished_point = Some(origin);
            d
        }
        (None, None) => {
            let dep = multiplicative_dependence(&t.a, &t.b, multdep_bound)?;
            match dep.exponents {
                Some((r1, r2)) => {
                    let g = r1.gcd(&r2.unsigned_abs());
                    let (s1, s2) = (r1 / g, r2 / g as i64);
                    let mut d = LatticeDescriptor::new(Kind::ProjectiveQuotient);
                    let xs = xt.pow(s1 as u32);
                    let ys = yt.pow(s2.unsigned_abs() as u32);
                    let zeta = &t.a.pow_u(s1) * &t.b.pow(-s2)?;
                    d.pi_projective = Some(if s2 > 0 { (xs, ys) } else { (&xs * &ys, BiPoly::constant(f.one())) });
                    d.grouping_order = root_of_unity_order(&zeta)?.ok_or_else(|| {
                        Error::InternalVerificationFailure("pencil multiplier is not a root of unity".into())
                    })?;
                    d.pi_scaling = Some(zeta);
                    d.exponents = Some((s1, s2));
                    d.distinguished_point = Some(origin);
                    d
                }
                None => {
                    let mut d = LatticeDescriptor::new(Kind::NonFibration);
                    d.invariant_curves = vec![xt.clone(), yt.clone()];
                    d.distinguished_point = Some(origin);
                    if !dep.exhaustive {
                        d.caveats.push(format!(
                            "multiplicative independence of {} and {} checked up to exponent {}",
                            t.a, t.b, multdep_bound
                        ));
                    }
                    d
                }
            }
        }
    };
    d.coordinates = Some((xt, yt));
    Ok(d)
}

/// Order of `phi` if it has finite order.
pub fn is_torsion(phi: &PlaneAutomorphism) -> Result<Option<u64>> {
    let w = factorize(phi)?;
    let (_, core) = cyclically_reduce(&w);
    if core.len() > 1 {
        return Ok(None);
    }
    let m = core.to_automorphism();
    if let Some(t) = m.as_triangular() {
        let Kind::FiniteOrder(n) = classify_triangular(&t, 1)?.kind else { return Ok(None) };
        if triangular_power(&t, n) != Triangular::identity(t.field()) {
            return Err(Error::InternalVerificationFailure(format!("{} does not have order {}", phi, n)));
        }
        return Ok(Some(n));
    }
    let a = m.as_affine().expect("length-one core is affine or triangular");
    Ok(affine_order(&a))
}

fn triangular_power(t: &Triangular, mut n: u64) -> Triangular {
    let mut acc = Triangular::identity(t.field());
    let mut base = t.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.compose(&base);
        }
        base = base.compose(&base);
        n >>= 1;
    }
    acc
}

/// A finite-order affine map has eigenvalues of order `k` with
/// `φ(k) ≤ 2 [K:Q]`, which bounds the search.
fn affine_order(a: &AffineMap) -> Option<u64> {
    let f = a.field();
    let limit = 2 * f.degree() as u64;
    let id = AffineMap::identity(f);
    let mut pw = a.clone();
    let kmax = 2 * limit * limit + 2;
    for k in 1..=kmax {
        if pw == id {
            return Some(k);
        }
        pw = pw.compose(a);
    }
    None
}

/// `(u, v)` with `π∘φ = u π + v`, `u ≠ 0`.
pub fn affine_equivariant(pi: &BiPoly, phi: &PlaneAutomorphism) -> Result<Option<(FieldElement, FieldElement)>> {
    if pi.is_constant() {
        return Err(Error::ConstantPi);
    }
    let image = phi.pullback(pi);
    Ok(solve_linear_coeffs(&[image], std::slice::from_ref(pi), true)
        .map(|rows| (rows[0][0].clone(), rows[0][1].clone()))
        .filter(|(u, _)| !u.is_zero()))
}

/// Invertible `[[a1, a2], [a3, a4]]` with `num∘φ = a1 num + a2 den` and
/// `den∘φ = a3 num + a4 den`.
pub fn projective_equivariant(
    num: &BiPoly,
    den: &BiPoly,
    phi: &PlaneAutomorphism,
) -> Result<Option<[[FieldElement; 2]; 2]>> {
    if num.is_zero() || den.is_zero() || crate::poly2::same_curve(num, den) {
        return Err(Error::DegeneratePair);
    }
    let images = [phi.pullback(num), phi.pullback(den)];
    let Some(rows) = solve_linear_coeffs(&images, &[num.clone(), den.clone()], false) else { return Ok(None) };
    let m = [[rows[0][0].clone(), rows[0][1].clone()], [rows[1][0].clone(), rows[1][1].clone()]];
    let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    Ok((!det.is_zero()).then_some(m))
}

/// `phi` permutes the curves and the points of `s`.
pub fn is_invariant(phi: &PlaneAutomorphism, s: &Subvariety) -> bool {
    if s.whole_plane {
        return true;
    }
    let curves: BTreeSet<&BiPoly> = s.curves.iter().collect();
    s.curves.iter().all(|c| curves.contains(&phi.pullback(c).monic()))
        && s.points.iter().all(|p| s.points.contains(&phi.apply(p)))
}

/// Same fibers (orbit fibrations) or same pencil (projective quotients).
pub fn equivalent_fibration(d1: &LatticeDescriptor, d2: &LatticeDescriptor) -> Result<bool> {
    match (d1.kind, d2.kind) {
        (Kind::OrbitFibration, Kind::OrbitFibration) => {
            let (p1, p2) = (d1.pi_affine.as_ref().unwrap(), d2.pi_affine.as_ref().unwrap());
            Ok(solve_linear_coeffs(std::slice::from_ref(p2), std::slice::from_ref(p1), true).is_some_and(|rows| !rows[0][0].is_zero()))
        }
        (Kind::ProjectiveQuotient, Kind::ProjectiveQuotient) => {
            let (n1, m1) = d1.pi_projective.as_ref().unwrap();
            let (n2, m2) = d2.pi_projective.as_ref().unwrap();
            Ok(solve_linear_coeffs(&[n2.clone(), m2.clone()], &[n1.clone(), m1.clone()], false).is_some_and(|r| {
                !(&(&r[0][0] * &r[1][1]) - &(&r[0][1] * &r[1][0])).is_zero()
            }))
        }
        (k1, k2) => Err(Error::KindMismatch(format!("{} vs {}", k1, k2))),
    }
}

/// The finite orbit of a periodic point.
fn periodic_orbit(phi: &PlaneAutomorphism, p: &PlanePoint) -> Result<Vec<PlanePoint>> {
    let mut out = vec![p.clone()];
    let mut q = phi.apply(p);
    while q != *p {
        if out.len() > 1 << 16 {
            return Err(Error::InternalVerificationFailure(format!("torsion point {} has no short orbit", p)));
        }
        out.push(q.clone());
        q = phi.apply(&q);
    }
    Ok(out)
}

/// Orbit of the value `[alpha : beta]` under `φ`, as normalized pairs.
fn value_orbit(
    d: &LatticeDescriptor,
    phi: &PlaneAutomorphism,
    start: (FieldElement, FieldElement),
) -> Result<Vec<(FieldElement, FieldElement)>> {
    let m = match (&d.pi_affine, &d.pi_projective) {
        (Some(pi), _) => {
            let (u, v) = affine_equivariant(pi, phi)?
                .ok_or_else(|| Error::InternalVerificationFailure("equivariance lost".into()))?;
            let f = pi.field();
            [[u, v], [f.zero(), f.one()]]
        }
        (None, Some((n, m))) => projective_equivariant(n, m, phi)?
            .ok_or_else(|| Error::InternalVerificationFailure("pencil equivariance lost".into()))?,
        _ => return Err(Error::PreconditionViolation("descriptor has no equivariant map".into())),
    };
    projective_orbit(&m, start, d.grouping_order as usize + 1)
        .ok_or_else(|| Error::InternalVerificationFailure("fiber orbit longer than the grouping order".into()))
}

fn normalize(v: (FieldElement, FieldElement)) -> (FieldElement, FieldElement) {
    if v.1.is_zero() {
        (v.0.field().one(), v.1)
    } else {
        (&v.0 / &v.1, v.1.field().one())
    }
}

/// Orbit of a point of the projective line under a 2×2 matrix, or `None`
/// when it does not close within `cap` steps.
pub(crate) fn projective_orbit(
    m: &[[FieldElement; 2]; 2],
    start: (FieldElement, FieldElement),
    cap: usize,
) -> Option<Vec<(FieldElement, FieldElement)>> {
    let start = normalize(start);
    let mut out = vec![start.clone()];
    let mut cur = start.clone();
    loop {
        cur = normalize((&(&m[0][0] * &cur.0) + &(&m[0][1] * &cur.1), &(&m[1][0] * &cur.0) + &(&m[1][1] * &cur.1)));
        if cur == start {
            return Some(out);
        }
        if out.len() >= cap {
            return None;
        }
        out.push(cur.clone());
    }
}

/// Orbit of the component through `p` under preimages by `maps`, if it
/// stays inside `components`.
fn component_orbit(components: &[BiPoly], maps: &[PlaneAutomorphism], p: &PlanePoint) -> Option<Vec<BiPoly>> {
    let set: BTreeSet<BiPoly> = components.iter().map(|c| c.monic()).collect();
    let start = set.iter().find(|c| c.eval(&p.x, &p.y).is_zero())?.clone();
    curve_orbit(&start, maps, |c| set.contains(c), set.len())
}

/// Closure of `{start}` under `c ↦ c∘g` for `g` in `maps`; `None` when a
/// curve fails `admissible` or the orbit outgrows `cap`.
pub(crate) fn curve_orbit(
    start: &BiPoly,
    maps: &[PlaneAutomorphism],
    admissible: impl Fn(&BiPoly) -> bool,
    cap: usize,
) -> Option<Vec<BiPoly>> {
    let start = start.monic();
    let mut seen: BTreeSet<BiPoly> = BTreeSet::new();
    let mut queue = vec![start.clone()];
    seen.insert(start);
    while let Some(c) = queue.pop() {
        for g in maps {
            let img = g.pullback(&c).monic();
            if seen.contains(&img) {
                continue;
            }
            if !admissible(&img) || seen.len() >= cap {
                return None;
            }
            seen.insert(img.clone());
            queue.push(img);
        }
    }
    Some(seen.into_iter().collect())
}

/// Smallest `φ`-invariant closed set through `p`.
pub fn minimal_invariant_through(d: &LatticeDescriptor, phi: &PlaneAutomorphism, p: &PlanePoint) -> Result<Subvariety> {
    let on = |c: &BiPoly| c.eval(&p.x, &p.y).is_zero();
    match d.kind {
        Kind::FiniteOrder(_) => Err(Error::PreconditionViolation("finite-order map has no curve lattice".into())),
        Kind::OrbitFibration => {
            if d.torsion_locus.as_ref().is_some_and(on) {
                return Ok(Subvariety::new(Vec::new(), periodic_orbit(phi, p)?));
            }
            if let Some(l) = d.transversal_curve.as_ref().filter(|l| on(l)) {
                return Ok(Subvariety::new(vec![l.clone()], Vec::new()));
            }
            let values = value_orbit(d, phi, d.value_at(p).unwrap())?;
            let curves = values.iter().flat_map(|(a, b)| d.fiber_components(a, b)).collect();
            Ok(Subvariety::new(curves, Vec::new()))
        }
        Kind::ProjectiveQuotient => {
            if d.distinguished_point.as_ref() == Some(p) {
                return Ok(Subvariety::new(Vec::new(), vec![p.clone()]));
            }
            let values = value_orbit(d, phi, d.value_at(p).unwrap())?;
            let comps: Vec<BiPoly> = values.iter().flat_map(|(a, b)| d.fiber_components(a, b)).collect();
            let orbit = component_orbit(&comps, std::slice::from_ref(phi), p)
                .ok_or_else(|| Error::InternalVerificationFailure("grouped fiber is not invariant".into()))?;
            Ok(Subvariety::new(orbit, Vec::new()))
        }
        Kind::NonFibration => {
            if d.distinguished_point.as_ref() == Some(p) {
                return Ok(Subvariety::new(Vec::new(), vec![p.clone()]));
            }
            match d.invariant_curves.iter().find(|c| on(c)) {
                Some(c) => Ok(Subvariety::new(vec![c.clone()], Vec::new())),
                None => Ok(Subvariety::whole_plane()),
            }
        }
    }
}

/// Basis of the equivariant map: `[π, 1]` or `[num, den]`.
fn fibration_basis(d: &LatticeDescriptor) -> Option<[BiPoly; 2]> {
    if let Some(pi) = &d.pi_affine {
        return Some([pi.clone(), BiPoly::constant(pi.field().one())]);
    }
    d.pi_projective.as_ref().map(|(n, m)| [n.clone(), m.clone()])
}

/// Fibers of `da` that are also fibers of `db`, found from the
/// intersection of the two spans.
pub(crate) fn shared_fibers(da: &LatticeDescriptor, db: &LatticeDescriptor) -> Vec<BiPoly> {
    let (Some(ba), Some(bb)) = (fibration_basis(da), fibration_basis(db)) else { return Vec::new() };
    let mut out = Vec::new();
    for rel in linear_relations(&[ba[0].clone(), ba[1].clone(), bb[0].clone(), bb[1].clone()]) {
        let combo = &ba[0].scale(&rel[0]) + &ba[1].scale(&rel[1]);
        if combo.is_constant() {
            continue;
        }
        // combo = λ0 b0 + λ1 b1 vanishes on the fiber over [−λ1 : λ0].
        out.extend(da.fiber_components(&-&rel[1], &rel[0]));
    }
    out
}

/// Union of the curves invariant under both maps.
pub fn support_intersection_dim1(
    da: &LatticeDescriptor,
    phi_a: &PlaneAutomorphism,
    db: &LatticeDescriptor,
    phi_b: &PlaneAutomorphism,
) -> Result<Subvariety> {
    if matches!(da.kind, Kind::FiniteOrder(_)) || matches!(db.kind, Kind::FiniteOrder(_)) {
        return Err(Error::PreconditionViolation("finite-order map has no curve lattice".into()));
    }
    if da.kind == db.kind && da.is_fibration() && equivalent_fibration(da, db)? {
        return Err(Error::KindMismatch("equivalent fibrations share every fiber".into()));
    }
    let mut candidates = da.special_curves();
    candidates.extend(db.special_curves());
    candidates.extend(shared_fibers(da, db));
    candidates.extend(shared_fibers(db, da));
    let max_degree = da.max_curve_degree().max(db.max_curve_degree());
    let maps = [phi_a.clone(), phi_b.clone()];
    let mut curves = Vec::new();
    for c in candidates {
        if c.is_constant() {
            continue;
        }
        if let Some(orbit) = curve_orbit(&c, &maps, |g| g.degree() <= max_degree, 4096) {
            curves.extend(orbit);
        }
    }
    Ok(Subvariety::new(curves, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{rat, Field};
    use crate::poly2::parse_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldRef {
        Field::rationals()
    }

    fn auto(s: &str) -> PlaneAutomorphism {
        PlaneAutomorphism::parse(s, &q()).unwrap()
    }

    fn poly(s: &str) -> BiPoly {
        parse_poly(s, &q()).unwrap()
    }

    fn pt(x: i64, y: i64) -> PlanePoint {
        let f = q();
        PlanePoint::new(f.int(x), f.int(y))
    }

    fn check_diagonal(t: &Triangular) {
        let d = diagonalize(t).unwrap();
        let phi = t.to_automorphism();
        let lhs = phi.pullback(&d.x_tilde);
        let rhs = &d.x_tilde.scale(&t.a) + &d.h1.compose_bi(&d.y_tilde);
        assert_eq!(lhs, rhs, "x-identity for {:?}", t);
        assert_eq!(phi.pullback(&d.y_tilde), d.y_tilde.scale(&t.b));
        let mut bi = t.field().one();
        for i in 0..=d.h1.degree().unwrap_or(0) {
            if !d.h1.coeff(i).is_zero() {
                assert_eq!(bi, t.a);
            }
            bi = &bi * &t.b;
        }
    }

    #[test]
    fn diagonalize_examples() {
        let d = diagonalize(&auto("(2x + y^2, 3y)").as_triangular().unwrap()).unwrap();
        assert_eq!(d.x_tilde, poly("x - 1/7*y^2"));
        assert_eq!(d.y_tilde, poly("y"));
        assert!(d.h1.is_zero());
        let d = diagonalize(&auto("(3x + y, 3y)").as_triangular().unwrap()).unwrap();
        assert_eq!(d.x_tilde, poly("x"));
        assert_eq!(d.h1.in_y(), poly("y"));
        let d = diagonalize(&Triangular::identity(&q())).unwrap();
        assert_eq!((d.x_tilde, d.y_tilde), (poly("x"), poly("y")));
        assert!(d.h1.is_zero());
        assert!(matches!(
            diagonalize(&auto("(x, y + 1)").as_triangular().unwrap()),
            Err(Error::PreconditionViolation(_))
        ));
        check_diagonal(&auto("(2x + y^3 - y + 4, -y + 5)").as_triangular().unwrap());
    }

    #[test]
    fn classify_examples() {
        let d = classify(&auto("(x, y + 1)"), 64).unwrap();
        assert_eq!(d.kind, Kind::OrbitFibration);
        assert_eq!(d.pi_affine, Some(poly("x")));
        assert_eq!(d.grouping_order, 1);

        let d = classify(&auto("(2x, 3y)"), 64).unwrap();
        assert_eq!(d.kind, Kind::NonFibration);
        assert_eq!(d.invariant_curves, vec![poly("x"), poly("y")]);
        assert_eq!(d.distinguished_point, Some(pt(0, 0)));

        let d = classify(&auto("(2x, 2y)"), 64).unwrap();
        assert_eq!(d.kind, Kind::ProjectiveQuotient);
        assert_eq!(d.pi_projective, Some((poly("x"), poly("y"))));
        assert_eq!(d.grouping_order, 1);
        assert_eq!(d.distinguished_point, Some(pt(0, 0)));

        assert_eq!(classify(&auto("(-x, -y)"), 64).unwrap().kind, Kind::FiniteOrder(2));
    }

    #[test]
    fn classify_translation_branches() {
        // a = 1: π = x − g(y) with g(y+1) − g(y) = y^2.
        let phi = auto("(x + y^2, y + 1)");
        let d = classify(&phi, 64).unwrap();
        assert_eq!(d.kind, Kind::OrbitFibration);
        let pi = d.pi_affine.unwrap();
        assert_eq!(phi.pullback(&pi), pi);

        let phi = auto("(-x + y, y + 1)");
        let d = classify(&phi, 64).unwrap();
        assert_eq!((d.kind, d.grouping_order), (Kind::OrbitFibration, 2));
        let pi = d.pi_affine.unwrap();
        assert_eq!(phi.pullback(&pi), pi.scale(&q().int(-1)));

        let d = classify(&auto("(2x + y^2, y + 1)"), 64).unwrap();
        assert_eq!(d.kind, Kind::NonFibration);
        assert_eq!(d.invariant_curves.len(), 1);
    }

    #[test]
    fn classify_diagonal_branches() {
        assert_eq!(classify(&auto("(-x + y^2, -y)"), 64).unwrap().kind, Kind::FiniteOrder(2));
        let d = classify(&auto("(-x + y, -y)"), 64).unwrap();
        assert_eq!(d.kind, Kind::OrbitFibration);
        assert_eq!(d.torsion_locus, Some(poly("y")));
        assert_eq!(d.grouping_order, 2);

        let d = classify(&auto("(2x, -y)"), 64).unwrap();
        assert_eq!(d.kind, Kind::OrbitFibration);
        assert_eq!(d.transversal_curve, Some(poly("x")));

        let d = classify(&auto("(x + 1, 2y)"), 64).unwrap();
        assert_eq!(d.kind, Kind::NonFibration);
        assert_eq!(d.invariant_curves, vec![poly("y")]);
        assert_eq!(d.distinguished_point, None);

        let d = classify(&auto("(4x + y^2, 2y)"), 64).unwrap();
        assert_eq!(d.kind, Kind::NonFibration);
        assert_eq!(d.invariant_curves, vec![poly("y")]);

        let d = classify(&auto("(4x, 2y)"), 64).unwrap();
        assert_eq!(d.kind, Kind::ProjectiveQuotient);
        assert_eq!(d.pi_projective, Some((poly("x"), poly("y^2"))));

        let d = classify(&auto("(2x, 1/2*y)"), 64).unwrap();
        assert_eq!(d.kind, Kind::ProjectiveQuotient);
        assert_eq!(d.exponents, Some((1, -1)));
        assert_eq!(d.pi_projective, Some((poly("x*y"), poly("1"))));

        let d = classify(&auto("(-4x, 2y)"), 64).unwrap();
        assert_eq!((d.kind, d.grouping_order), (Kind::ProjectiveQuotient, 2));
    }

    #[test]
    fn classify_affine_through_eigenvectors() {
        let phi = auto("(y, x)");
        assert_eq!(classify(&phi, 64).unwrap().kind, Kind::FiniteOrder(2));
        let phi = auto("(x + y, y)");
        assert_eq!(classify(&phi, 64).unwrap().kind, Kind::OrbitFibration);
        let phi = auto("(2y, 2x)");
        let d = classify(&phi, 64).unwrap();
        assert_eq!(d.kind, Kind::ProjectiveQuotient);
        let (n, m) = d.pi_projective.clone().unwrap();
        assert!(projective_equivariant(&n, &m, &phi).unwrap().is_some());
        let err = classify(&auto("(-y, x)"), 64).unwrap_err();
        assert!(matches!(err, Error::EigenvalueOutsideField { .. }));
        let k = Field::cyclotomic(4).unwrap();
        let phi = PlaneAutomorphism::parse("(-y, x)", &k).unwrap();
        assert_eq!(classify(&phi, 64).unwrap().kind, Kind::FiniteOrder(4));
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(is_torsion(&auto("(-x, -y)")).unwrap(), Some(2));
        assert_eq!(is_torsion(&auto("(x, y + 1)")).unwrap(), None);
        assert_eq!(is_torsion(&auto("(-y, x)")).unwrap(), Some(4));
        assert_eq!(is_torsion(&auto("(y, x + y^2)")).unwrap(), None);
        let sigma = auto("(x + y^2, y)").compose(&auto("(y, x + 1)")).unwrap();
        let conj = sigma.compose(&auto("(-x, -y)")).unwrap().compose(&sigma.invert().unwrap()).unwrap();
        assert_eq!(is_torsion(&conj).unwrap(), Some(2));
    }

    #[test]
    fn equivariant_examples() {
        let two = q().int(2);
        assert_eq!(affine_equivariant(&poly("x"), &auto("(2x, y + 1)")).unwrap(), Some((two.clone(), q().zero())));
        assert_eq!(
            affine_equivariant(&poly("x - y^2"), &auto("(x + 1, y)")).unwrap(),
            Some((q().one(), q().one()))
        );
        assert_eq!(affine_equivariant(&poly("x"), &auto("(y, x)")).unwrap(), None);
        assert!(matches!(affine_equivariant(&poly("3"), &auto("(y, x)")), Err(Error::ConstantPi)));

        let m = projective_equivariant(&poly("x"), &poly("y"), &auto("(2x, 3y)")).unwrap().unwrap();
        assert_eq!(m, [[two, q().zero()], [q().zero(), q().int(3)]]);
        let m = projective_equivariant(&poly("x"), &poly("y"), &auto("(y, x)")).unwrap().unwrap();
        assert_eq!(m, [[q().zero(), q().one()], [q().one(), q().zero()]]);
        assert_eq!(projective_equivariant(&poly("x"), &poly("y"), &auto("(x + 1, y)")).unwrap(), None);
        assert!(matches!(
            projective_equivariant(&poly("x"), &poly("2x"), &auto("(y, x)")),
            Err(Error::DegeneratePair)
        ));
    }

    #[test]
    fn invariance_examples() {
        assert!(is_invariant(&auto("(2x, 3y)"), &Subvariety::new(vec![poly("x")], vec![])));
        assert!(is_invariant(&auto("(y, x)"), &Subvariety::new(vec![poly("x"), poly("y")], vec![])));
        assert!(!is_invariant(&auto("(x + 1, y)"), &Subvariety::new(vec![poly("x")], vec![])));
        assert!(is_invariant(&auto("(y, x)"), &Subvariety::new(vec![], vec![pt(1, 2), pt(2, 1)])));
        assert!(!is_invariant(&auto("(y, x)"), &Subvariety::new(vec![], vec![pt(1, 2)])));
    }

    #[test]
    fn subvariety_normalizes() {
        let s = Subvariety::new(vec![poly("2y"), poly("y"), poly("x")], vec![pt(0, 0), pt(1, 1)]);
        assert_eq!(s.curves(), &[poly("y"), poly("x")]);
        assert_eq!(s.points(), &[pt(1, 1)]);
        assert_eq!(s.dimension(), Some(1));
    }

    #[test]
    fn fibration_equivalence() {
        let mut d1 = LatticeDescriptor::new(Kind::OrbitFibration);
        let mut d2 = LatticeDescriptor::new(Kind::OrbitFibration);
        d1.pi_affine = Some(poly("x"));
        d2.pi_affine = Some(poly("2x + 1"));
        assert!(equivalent_fibration(&d1, &d2).unwrap());
        d2.pi_affine = Some(poly("y"));
        assert!(!equivalent_fibration(&d1, &d2).unwrap());
        let mut p1 = LatticeDescriptor::new(Kind::ProjectiveQuotient);
        let mut p2 = LatticeDescriptor::new(Kind::ProjectiveQuotient);
        p1.pi_projective = Some((poly("x"), poly("y")));
        p2.pi_projective = Some((poly("x + y"), poly("y")));
        assert!(equivalent_fibration(&p1, &p2).unwrap());
        assert!(matches!(equivalent_fibration(&d1, &p1), Err(Error::KindMismatch(_))));
    }

    #[test]
    fn minimal_invariant_examples() {
        let phi = auto("(x, y + 1)");
        let d = classify(&phi, 64).unwrap();
        let s = minimal_invariant_through(&d, &phi, &pt(0, 0)).unwrap();
        assert_eq!(s.curves(), &[poly("x")]);

        let phi = auto("(2x, 2y)");
        let d = classify(&phi, 64).unwrap();
        let s = minimal_invariant_through(&d, &phi, &pt(1, 1)).unwrap();
        assert_eq!(s.curves(), &[poly("x - y")]);
        let s = minimal_invariant_through(&d, &phi, &pt(0, 0)).unwrap();
        assert_eq!(s.points(), &[pt(0, 0)]);

        let phi = auto("(2x, 3y)");
        let d = classify(&phi, 64).unwrap();
        assert!(minimal_invariant_through(&d, &phi, &pt(1, 1)).unwrap().is_whole_plane());
        assert_eq!(minimal_invariant_through(&d, &phi, &pt(0, 5)).unwrap().curves(), &[poly("x")]);

        // Grouped fibers: y ↦ −y pairs the lines y = ±2.
        let phi = auto("(2x, -y)");
        let d = classify(&phi, 64).unwrap();
        let s = minimal_invariant_through(&d, &phi, &pt(1, 2)).unwrap();
        assert_eq!(s.curves(), &[poly("y - 2"), poly("y + 2")]);
        let s = minimal_invariant_through(&d, &phi, &pt(0, 2)).unwrap();
        assert_eq!(s.points(), &[pt(0, -2), pt(0, 2)]);

        // The pencil x/y is negated, so the lines x = ±2y are exchanged.
        let phi = auto("(-2x, 2y)");
        let d = classify(&phi, 64).unwrap();
        let s = minimal_invariant_through(&d, &phi, &pt(2, 1)).unwrap();
        assert_eq!(s.curves(), &[poly("x - 2y"), poly("x + 2y")]);

        // Negative exponent: xy is invariant, the axes are not exchanged.
        let phi = auto("(2x, 1/2*y)");
        let d = classify(&phi, 64).unwrap();
        assert_eq!(minimal_invariant_through(&d, &phi, &pt(0, 3)).unwrap().curves(), &[poly("x")]);
        assert_eq!(minimal_invariant_through(&d, &phi, &pt(2, 3)).unwrap().curves(), &[poly("x*y - 6")]);
    }

    #[test]
    fn support_intersection_examples() {
        let (a, b) = (auto("(2x, 3y)"), auto("(3x, 2y)"));
        let (da, db) = (classify(&a, 64).unwrap(), classify(&b, 64).unwrap());
        let s = support_intersection_dim1(&da, &a, &db, &b).unwrap();
        assert_eq!(s.curves(), &[poly("y"), poly("x")]);

        let (a, b) = (auto("(x, y + 1)"), auto("(2x, 3y)"));
        let (da, db) = (classify(&a, 64).unwrap(), classify(&b, 64).unwrap());
        let s = support_intersection_dim1(&da, &a, &db, &b).unwrap();
        assert_eq!(s.curves(), &[poly("x")]);

        let (a, b) = (auto("(x, y + 1)"), auto("(x + 1, y)"));
        let (da, db) = (classify(&a, 64).unwrap(), classify(&b, 64).unwrap());
        assert!(support_intersection_dim1(&da, &a, &db, &b).unwrap().is_empty());

        // Pencils x/y and x/y^2 share the fibers over 0 and infinity.
        let (a, b) = (auto("(2x, 2y)"), auto("(4x, 2y)"));
        let (da, db) = (classify(&a, 64).unwrap(), classify(&b, 64).unwrap());
        let s = support_intersection_dim1(&da, &a, &db, &b).unwrap();
        assert_eq!(s.curves(), &[poly("y"), poly("x")]);

        let (a, b) = (auto("(x, y + 1)"), auto("(x, y + 2)"));
        let (da, db) = (classify(&a, 64).unwrap(), classify(&b, 64).unwrap());
        assert!(matches!(support_intersection_dim1(&da, &a, &db, &b), Err(Error::KindMismatch(_))));
    }

    fn random_element(rng: &mut ChaCha8Rng, f: &FieldRef, pool: &[FieldElement]) -> FieldElement {
        if rng.gen_bool(0.5) {
            pool[rng.gen_range(0..pool.len())].clone()
        } else {
            let n = rng.gen_range(1..4i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
            f.rational(rat(n, rng.gen_range(1..3)))
        }
    }

    fn random_triangular(rng: &mut ChaCha8Rng, f: &FieldRef) -> Triangular {
        let z = f.generator();
        let pool: Vec<FieldElement> = (0..12).map(|k| z.pow_u(k)).collect();
        let a = random_element(rng, f, &pool);
        let b = random_element(rng, f, &pool);
        let c = if rng.gen_bool(0.5) { f.zero() } else { f.int(rng.gen_range(-3..4)) };
        let deg = rng.gen_range(0..6);
        let p = UniPoly::new(f, (0..=deg).map(|_| f.int(rng.gen_range(-3..4))).collect());
        Triangular { a, b, c, p }
    }

    #[test]
    fn diagonalization_identities_random() {
        let f = Field::cyclotomic(12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 300 {
            let t = random_triangular(&mut rng, &f);
            if t.b.is_one() && !t.c.is_zero() {
                continue;
            }
            check_diagonal(&t);
            done += 1;
        }
    }

    #[test]
    fn power_law() {
        let f = Field::cyclotomic(12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let t = random_triangular(&mut rng, &f);
            if t.b.is_one() && !t.c.is_zero() {
                continue;
            }
            let d = diagonalize(&t).unwrap();
            let alpha = &d.change_of_coords;
            let alpha_inv = alpha.invert().unwrap();
            let tilde = alpha.compose(&t.to_automorphism()).unwrap().compose(&alpha_inv).unwrap();
            for n in [2u64, 3, 5] {
                let pw = tilde.power(n).unwrap();
                let an = t.a.pow_u(n);
                let coef = &f.int(n as i64) * &t.a.pow_u(n - 1);
                let expect_x = &BiPoly::x(&f).scale(&an) + &d.h1.compose_bi(&BiPoly::y(&f)).scale(&coef);
                assert_eq!(pw.x_image(), &expect_x);
                assert_eq!(pw.y_image(), &BiPoly::y(&f).scale(&t.b.pow_u(n)));
            }
        }
    }

    #[test]
    fn emitted_sets_are_invariant_and_contain_orbits() {
        let f = Field::cyclotomic(12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut checked = 0;
        while checked < 60 {
            let t = random_triangular(&mut rng, &f);
            let phi = t.to_automorphism();
            let d = classify(&phi, 16).unwrap();
            if matches!(d.kind, Kind::FiniteOrder(_)) {
                let n = is_torsion(&phi).unwrap().unwrap();
                assert!(phi.power(n).unwrap().is_identity());
                continue;
            }
            for c in d.special_curves() {
                assert!(is_invariant(&phi, &Subvariety::new(vec![c], vec![])));
            }
            let p = PlanePoint::new(f.int(rng.gen_range(-2..3)), f.int(rng.gen_range(-2..3)));
            let s = minimal_invariant_through(&d, &phi, &p).unwrap();
            assert!(s.contains(&p));
            assert!(is_invariant(&phi, &s), "{} not invariant under {}", s, phi);
            let mut cur = p.clone();
            for _ in 0..50 {
                cur = phi.apply(&cur);
                assert!(s.contains(&cur));
            }
            checked += 1;
        }
    }
}
