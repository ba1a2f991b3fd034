//! Normal forms in Aut(A²) = Aff ∗_B J, where B is the group of
//! upper-triangular affine maps.
//!
//! A word `h g1 ⋯ gr` has head `h` in B and letters drawn from fixed right
//! coset representatives: `(x, a x + y)` and `(y, x)` on the affine side,
//! `(x + p(y), y)` with `p` free of terms of degree ≤ 1 on the triangular side.
//! The leftmost letter is applied last.

use std::fmt;

use crate::error::{Error, Result};
use crate::numfield::{FieldElement, FieldRef};
use crate::planeauto::{AffineMap, PlaneAutomorphism, PlanePoint, Triangular};
use crate::poly2::{proportional, BiPoly, UniPoly};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Factor {
    Affine,
    Jonquieres,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Letter {
    /// `(x, a x + y)`, `a != 0`.
    Shear(FieldElement),
    /// `(y, x)`.
    Swap,
    /// `(x + p(y), y)`, `p` nonzero with no terms of degree ≤ 1.
    Triangular(UniPoly),
}

impl Letter {
    pub fn factor(&self) -> Factor {
        match self {
            Letter::Shear(_) | Letter::Swap => Factor::Affine,
            Letter::Triangular(_) => Factor::Jonquieres,
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Letter::Triangular(p) => p.degree().unwrap_or(1) as u32,
            _ => 1,
        }
    }

    pub fn inverse(&self) -> Letter {
        match self {
            Letter::Shear(a) => Letter::Shear(-a),
            Letter::Swap => Letter::Swap,
            Letter::Triangular(p) => Letter::Triangular(p.scale(&-&p.field().one())),
        }
    }

    /// `self ∘ (fx, fy)`.
    pub fn outer(&self, fx: &BiPoly, fy: &BiPoly) -> (BiPoly, BiPoly) {
        match self {
            Letter::Shear(a) => (fx.clone(), &fx.scale(a) + fy),
            Letter::Swap => (fy.clone(), fx.clone()),
            Letter::Triangular(p) => (fx + &p.compose_bi(fy), fy.clone()),
        }
    }

    pub fn apply(&self, q: &PlanePoint) -> PlanePoint {
        match self {
            Letter::Shear(a) => PlanePoint::new(q.x.clone(), &(a * &q.x) + &q.y),
            Letter::Swap => PlanePoint::new(q.y.clone(), q.x.clone()),
            Letter::Triangular(p) => PlanePoint::new(&q.x + &p.eval(&q.y), q.y.clone()),
        }
    }

    pub fn to_automorphism(&self, field: &FieldRef) -> PlaneAutomorphism {
        let (x, y) = self.outer(&BiPoly::x(field), &BiPoly::y(field));
        PlaneAutomorphism::from_parts(x, y)
    }

    fn element(&self, field: &FieldRef) -> Element {
        match self {
            Letter::Shear(a) => {
                let mut m = AffineMap::identity(field);
                m.m[1][0] = a.clone();
                Element::Affine(m)
            }
            Letter::Swap => {
                let mut m = AffineMap::identity(field);
                m.m = [[field.zero(), field.one()], [field.one(), field.zero()]];
                Element::Affine(m)
            }
            Letter::Triangular(p) => Element::Jonquieres(Triangular {
                a: field.one(),
                b: field.one(),
                c: field.zero(),
                p: p.clone(),
            }),
        }
    }
}

/// An element of one of the two factors.
#[derive(Clone, Debug)]
enum Element {
    Affine(AffineMap),
    Jonquieres(Triangular),
}

/// Splits an invertible affine map as `head ∘ rep` with `head` upper-triangular.
fn affine_split(g: &AffineMap) -> (AffineMap, Option<Letter>) {
    let [[p, q], [r, s]] = &g.m;
    let f = g.field();
    if !s.is_zero() {
        if r.is_zero() {
            return (g.clone(), None);
        }
        let ratio = r / s;
        let head = AffineMap {
            m: [[p - &(q * &ratio), q.clone()], [f.zero(), s.clone()]],
            t: g.t.clone(),
        };
        (head, Some(Letter::Shear(ratio)))
    } else {
        let head = AffineMap { m: [[q.clone(), p.clone()], [f.zero(), r.clone()]], t: g.t.clone() };
        (head, Some(Letter::Swap))
    }
}

/// Splits a triangular map as `head ∘ rep` with `head` affine.
fn jonquieres_split(t: &Triangular) -> (AffineMap, Option<Letter>) {
    let f = t.field();
    let (p0, p1) = (t.p.coeff(0), t.p.coeff(1));
    let head = AffineMap { m: [[t.a.clone(), p1.clone()], [f.zero(), t.b.clone()]], t: [p0.clone(), t.c.clone()] };
    let low = UniPoly::new(f, vec![p0, p1]);
    let rest = t.p.sub(&low);
    if rest.is_zero() {
        return (head, None);
    }
    let rest = rest.scale(&t.a.inv().expect("nonzero scaling"));
    (head, Some(Letter::Triangular(rest)))
}

/// Normal form `head ∘ letters[0] ∘ ⋯ ∘ letters[r-1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Word {
    head: AffineMap,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(field: &FieldRef) -> Self {
        Word { head: AffineMap::identity(field), letters: Vec::new() }
    }

    pub fn field(&self) -> &FieldRef {
        self.head.field()
    }

    pub fn head(&self) -> &AffineMap {
        &self.head
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty() && self.head == AffineMap::identity(self.field())
    }

    /// Builds a word from a head and letters that already form a normal form.
    pub fn from_normal_form(head: AffineMap, letters: Vec<Letter>) -> Result<Self> {
        if !head.is_upper_triangular() || head.det().is_zero() {
            return Err(Error::PreconditionViolation("head must be an invertible upper-triangular affine map".into()));
        }
        for (i, l) in letters.iter().enumerate() {
            let ok = match l {
                Letter::Shear(a) => !a.is_zero(),
                Letter::Swap => true,
                Letter::Triangular(p) => !p.is_zero() && p.coeff(0).is_zero() && p.coeff(1).is_zero(),
            };
            if !ok {
                return Err(Error::PreconditionViolation(format!("letter {} is not a coset representative", i)));
            }
            if i > 0 && letters[i - 1].factor() == l.factor() {
                return Err(Error::PreconditionViolation(format!("letters {} and {} share a factor", i - 1, i)));
            }
        }
        Ok(Word { head, letters })
    }

    fn left_mul(&mut self, e: Element) {
        let field = self.field().clone();
        let merge = |w: &mut Word, f: Factor| {
            if w.letters.first().is_some_and(|l| l.factor() == f) {
                Some(w.letters.remove(0).element(&field))
            } else {
                None
            }
        };
        let (head, rep) = match e {
            Element::Affine(a) => {
                let mut x = a.compose(&self.head);
                if let Some(Element::Affine(l)) = merge(self, Factor::Affine) {
                    x = x.compose(&l);
                }
                affine_split(&x)
            }
            Element::Jonquieres(t) => {
                let mut x = t.compose(&self.head.to_triangular().expect("head is upper-triangular"));
                if let Some(Element::Jonquieres(l)) = merge(self, Factor::Jonquieres) {
                    x = x.compose(&l);
                }
                jonquieres_split(&x)
            }
        };
        self.head = head;
        if let Some(r) = rep {
            self.letters.insert(0, r);
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Word) -> Word {
        let mut w = other.clone();
        let field = self.field().clone();
        for l in self.letters.iter().rev() {
            w.left_mul(l.element(&field));
        }
        w.head = self.head.compose(&w.head);
        w
    }

    pub fn inverse(&self) -> Word {
        let field = self.field().clone();
        let mut w = Word { head: self.head.inverse().expect("invertible head"), letters: Vec::new() };
        for l in &self.letters {
            w.left_mul(l.inverse().element(&field));
        }
        w
    }

    /// `self ∘ psi`, substituting into one letter at a time.
    pub fn apply_to(&self, psi: &PlaneAutomorphism) -> PlaneAutomorphism {
        let (mut fx, mut fy) = (psi.x_image().clone(), psi.y_image().clone());
        for l in self.letters.iter().rev() {
            (fx, fy) = l.outer(&fx, &fy);
        }
        let (fx, fy) = self.head.outer(&fx, &fy);
        PlaneAutomorphism::from_parts(fx, fy)
    }

    pub fn to_automorphism(&self) -> PlaneAutomorphism {
        self.apply_to(&PlaneAutomorphism::identity(self.field()))
    }

    pub fn apply_point(&self, p: &PlanePoint) -> PlanePoint {
        let mut q = p.clone();
        for l in self.letters.iter().rev() {
            q = l.apply(&q);
        }
        self.head.apply(&q)
    }

    /// `f ∘ self`.
    pub fn pullback(&self, f: &BiPoly) -> BiPoly {
        let m = self.to_automorphism();
        m.pullback(f)
    }

    /// Factor of a word of length ≤ 1; `None` for longer words.
    pub fn single_factor(&self) -> Option<Option<Factor>> {
        match self.letters.len() {
            0 => Some(None),
            1 => Some(Some(self.letters[0].factor())),
            _ => None,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.field();
        write!(f, "{}", self.head.to_automorphism())?;
        for l in &self.letters {
            write!(f, " . {}", l.to_automorphism(field))?;
        }
        Ok(())
    }
}

/// Normal form of an automorphism.
///
/// Peels leading forms off with elementary maps `(x - Q(y), y)` and swaps
/// until an affine map remains, then rebuilds the word from the left.
pub fn factorize(phi: &PlaneAutomorphism) -> Result<Word> {
    enum Peel {
        Sub(UniPoly),
        Swap,
    }
    let field = phi.field().clone();
    let bad = |msg: &str| Error::NotAnAutomorphism(msg.to_string());
    let (mut f, mut g) = (phi.x_image().clone(), phi.y_image().clone());
    let mut peels = Vec::new();
    loop {
        if f.is_zero() || g.is_zero() {
            return Err(bad("a component vanishes"));
        }
        let (d1, d2) = (f.degree(), g.degree());
        if d1 <= 1 && d2 <= 1 {
            break;
        }
        if d1 < d2 {
            std::mem::swap(&mut f, &mut g);
            peels.push(Peel::Swap);
            continue;
        }
        if d2 == 0 {
            return Err(bad("a component is constant"));
        }
        let mut powers = vec![BiPoly::constant(field.one()), g.clone()];
        let mut q = vec![field.zero(); (d1 / d2) as usize + 1];
        while !f.is_zero() && f.degree() >= d2.max(2) {
            let d = f.degree();
            if d % d2 != 0 {
                return Err(bad("component degrees do not divide"));
            }
            let k = (d / d2) as usize;
            while powers.len() <= k {
                let next = &powers[powers.len() - 1] * &g;
                powers.push(next);
            }
            let lambda = proportional(&f.leading_form(), &powers[k].leading_form())?
                .ok_or_else(|| bad("leading forms are not proportional"))?;
            f = &f - &powers[k].scale(&lambda);
            q[k] = &q[k] + &lambda;
        }
        peels.push(Peel::Sub(UniPoly::new(&field, q)));
    }
    let tail = PlaneAutomorphism::from_parts(f, g).as_affine().expect("degree at most one");
    if tail.det().is_zero() {
        return Err(bad("affine part is singular"));
    }
    let (head, rep) = affine_split(&tail);
    let mut w = Word { head, letters: rep.into_iter().collect() };
    for peel in peels.into_iter().rev() {
        let e = match peel {
            Peel::Sub(q) => Element::Jonquieres(Triangular { a: field.one(), b: field.one(), c: field.zero(), p: q }),
            Peel::Swap => Letter::Swap.element(&field),
        };
        w.left_mul(e);
    }
    Ok(w)
}

pub fn length(phi: &PlaneAutomorphism) -> Result<usize> {
    Ok(factorize(phi)?.len())
}

/// Returns `(conjugator, core)` with `conjugator ∘ core ∘ conjugator⁻¹ = w`
/// and `core` of length ≤ 1 or even.
pub fn cyclically_reduce(w: &Word) -> (Word, Word) {
    let field = w.field().clone();
    let mut core = w.clone();
    let mut conj = Word::identity(&field);
    while core.len() >= 3 && core.len() % 2 == 1 {
        let c = Word { head: core.head.clone(), letters: vec![core.letters[0].clone()] };
        let rest = Word { head: AffineMap::identity(&field), letters: core.letters[1..].to_vec() };
        core = rest.compose(&c);
        conj = conj.compose(&c);
    }
    (conj, core)
}

/// `deg(φ∘φ) ≤ deg φ`.
pub fn is_bounded(phi: &PlaneAutomorphism) -> Result<bool> {
    let square = factorize(phi)?.apply_to(phi);
    Ok(square.degree() <= phi.degree())
}

fn core_length(w: &Word) -> usize {
    cyclically_reduce(w).1.len()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    ConjugateIntoAffine,
    ConjugateIntoJonquieres,
    NotConjugate,
}

#[derive(Clone, Debug)]
pub struct ConjugacyResult {
    pub verdict: Verdict,
    /// `c` with every `c⁻¹ g c` in the named factor.
    pub conjugator: Option<Word>,
    pub conjugated_generators: Option<Vec<PlaneAutomorphism>>,
}

impl ConjugacyResult {
    fn not_conjugate() -> Self {
        ConjugacyResult { verdict: Verdict::NotConjugate, conjugator: None, conjugated_generators: None }
    }
}

/// Decides whether the generated group is conjugate into one factor.
///
/// Boundedness of single elements is read off the cyclically reduced core
/// (length ≤ 1), which avoids squaring high-degree maps.
pub fn conjugate_into_factor(generators: &[PlaneAutomorphism]) -> Result<ConjugacyResult> {
    let first = generators.first().ok_or_else(|| Error::PreconditionViolation("empty generator list".into()))?;
    let field = first.field().clone();
    let words = generators.iter().map(factorize).collect::<Result<Vec<_>>>()?;
    let live: Vec<usize> = (0..words.len()).filter(|&i| !words[i].is_identity()).collect();
    let mut best = None;
    for &i in &live {
        if best.is_none_or(|b: usize| words[i].len() > words[b].len()) {
            best = Some(i);
        }
    }
    let conjugator = match best {
        Some(b) if words[b].len() > 1 => {
            if live.iter().any(|&i| core_length(&words[i]) > 1) {
                return Ok(ConjugacyResult::not_conjugate());
            }
            if live.iter().any(|&j| j != b && core_length(&words[b].compose(&words[j])) > 1) {
                return Ok(ConjugacyResult::not_conjugate());
            }
            let w = &words[b];
            if w.len() % 2 == 0 {
                return Err(Error::InternalVerificationFailure(format!(
                    "bounded generator with even length {}",
                    w.len()
                )));
            }
            let s = (w.len() - 1) / 2;
            Word { head: w.head.clone(), letters: w.letters[..s].to_vec() }
        }
        _ => Word::identity(&field),
    };
    let inv = conjugator.inverse();
    let mut factor = None;
    let mut conjugated = Vec::new();
    for w in &words {
        let cw = inv.compose(w).compose(&conjugator);
        match cw.single_factor() {
            None if conjugator.is_identity() => return Ok(ConjugacyResult::not_conjugate()),
            None => {
                return Err(Error::InternalVerificationFailure(format!(
                    "conjugated generator still has length {}",
                    cw.len()
                )))
            }
            Some(None) => {}
            Some(Some(f)) => match factor {
                None => factor = Some(f),
                Some(g) if g == f => {}
                Some(_) if conjugator.is_identity() => return Ok(ConjugacyResult::not_conjugate()),
                Some(_) => {
                    return Err(Error::InternalVerificationFailure("conjugated generators land in both factors".into()))
                }
            },
        }
        let m = cw.to_automorphism();
        let ok = match factor {
            Some(Factor::Affine) => m.is_affine(),
            _ => m.is_triangular(),
        };
        if !ok {
            return Err(Error::InternalVerificationFailure(format!("conjugated generator {} has the wrong shape", m)));
        }
        conjugated.push(m);
    }
    let verdict = match factor {
        Some(Factor::Affine) => Verdict::ConjugateIntoAffine,
        _ => Verdict::ConjugateIntoJonquieres,
    };
    Ok(ConjugacyResult { verdict, conjugator: Some(conjugator), conjugated_generators: Some(conjugated) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn auto(s: &str) -> PlaneAutomorphism {
        PlaneAutomorphism::parse(s, &Field::rationals()).unwrap()
    }

    fn nonzero(rng: &mut ChaCha8Rng, f: &FieldRef) -> FieldElement {
        let v = rng.gen_range(1..4) * if rng.gen_bool(0.5) { 1 } else { -1 };
        f.int(v)
    }

    fn random_word(rng: &mut ChaCha8Rng, max_len: usize, max_deg: usize) -> Word {
        let f = Field::rationals();
        let head = AffineMap {
            m: [[nonzero(rng, &f), f.int(rng.gen_range(-2..3))], [f.zero(), nonzero(rng, &f)]],
            t: [f.int(rng.gen_range(-2..3)), f.int(rng.gen_range(-2..3))],
        };
        let len = rng.gen_range(0..=max_len);
        let mut jonq = rng.gen_bool(0.5);
        let mut letters = Vec::new();
        for _ in 0..len {
            letters.push(if jonq {
                let d = rng.gen_range(2..=max_deg);
                let mut c = vec![f.zero(), f.zero()];
                for _ in 2..d {
                    c.push(f.int(rng.gen_range(-2..3)));
                }
                c.push(nonzero(rng, &f));
                Letter::Triangular(UniPoly::new(&f, c))
            } else if rng.gen_bool(0.5) {
                Letter::Swap
            } else {
                Letter::Shear(nonzero(rng, &f))
            });
            jonq = !jonq;
        }
        Word::from_normal_form(head, letters).unwrap()
    }

    #[test]
    fn factorize_examples() {
        let q = Field::rationals();
        assert!(factorize(&PlaneAutomorphism::identity(&q)).unwrap().is_identity());
        let w = factorize(&auto("(y, x + y^2)")).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.to_automorphism(), auto("(y, x + y^2)"));
        let w = factorize(&auto("(y + (x + y^2)^2, x + y^2)")).unwrap();
        assert_eq!(w.len(), 3);
        let degs: Vec<u32> = w.letters().iter().filter(|l| l.factor() == Factor::Jonquieres).map(|l| l.degree()).collect();
        assert_eq!(degs, vec![2, 2]);
        let xy = PlaneAutomorphism::from_parts(crate::poly2::parse_poly("x*y", &q).unwrap(), BiPoly::y(&q));
        assert!(matches!(factorize(&xy), Err(Error::NotAnAutomorphism(_))));
    }

    #[test]
    fn length_examples() {
        assert_eq!(length(&auto("(2x + 1, 3y)")).unwrap(), 0);
        assert_eq!(length(&auto("(y, x)")).unwrap(), 1);
        assert_eq!(length(&auto("(y, x + y^2)")).unwrap(), 2);
    }

    #[test]
    fn cyclic_reduction_examples() {
        let q = Field::rationals();
        let w = factorize(&auto("(y, x + y^2)")).unwrap();
        let (c, core) = cyclically_reduce(&w);
        assert!(c.is_identity());
        assert_eq!(core, w);

        let sts = auto("(y, x)").compose(&auto("(x + y^2, y)")).unwrap().compose(&auto("(y, x)")).unwrap();
        let w = factorize(&sts).unwrap();
        let (c, core) = cyclically_reduce(&w);
        assert_eq!(core.len(), 1);
        assert_eq!(c.compose(&core).compose(&c.inverse()), w);
        assert_eq!(c.to_automorphism().apply(&PlanePoint::new(q.int(1), q.int(2))).x, q.int(2));

        let w = factorize(&auto("(2x, y - 1)")).unwrap();
        assert_eq!(cyclically_reduce(&w), (Word::identity(&q), w));
    }

    #[test]
    fn boundedness_examples() {
        assert!(is_bounded(&auto("(x + y^2, y)")).unwrap());
        assert!(!is_bounded(&auto("(y, x + y^2)")).unwrap());
        assert!(is_bounded(&auto("(2x, 3y)")).unwrap());
    }

    #[test]
    fn conjugacy_examples() {
        let sigma = auto("(y, x)");
        let tau = auto("(x + y^2, y)");
        let g = sigma.compose(&tau).unwrap().compose(&sigma).unwrap();
        let r = conjugate_into_factor(&[g]).unwrap();
        assert_eq!(r.verdict, Verdict::ConjugateIntoJonquieres);
        assert!(r.conjugated_generators.unwrap()[0].is_triangular());
        // The conjugator is the swap, up to an upper-triangular factor.
        let c = r.conjugator.unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.letters()[0], Letter::Swap);

        let r = conjugate_into_factor(&[sigma.clone(), auto("(x + y^3, y)")]).unwrap();
        assert_eq!(r.verdict, Verdict::NotConjugate);

        let r = conjugate_into_factor(&[auto("(2x, 3y)"), auto("(-x, -y)")]).unwrap();
        assert_eq!(r.verdict, Verdict::ConjugateIntoJonquieres);
        assert!(r.conjugator.unwrap().is_identity());
        let r = conjugate_into_factor(&[auto("(2y, 3x)"), auto("(-x, -y)")]).unwrap();
        assert_eq!(r.verdict, Verdict::ConjugateIntoAffine);
    }

    #[test]
    fn normal_form_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let w = random_word(&mut rng, 5, 3);
            let phi = w.to_automorphism();
            assert_eq!(factorize(&phi).unwrap(), w);
        }
    }

    #[test]
    fn word_algebra_matches_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..60 {
            let u = random_word(&mut rng, 3, 3);
            let v = random_word(&mut rng, 3, 3);
            let direct = u.to_automorphism().compose(&v.to_automorphism()).unwrap();
            assert_eq!(u.compose(&v).to_automorphism(), direct);
            assert!(u.compose(&u.inverse()).is_identity());
            let (c, core) = cyclically_reduce(&u);
            assert_eq!(c.compose(&core).compose(&c.inverse()), u);
            assert!(core.len() <= 1 || core.len() % 2 == 0);
        }
    }

    #[test]
    fn boundedness_matches_core_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..150 {
            let w = random_word(&mut rng, 4, 3);
            let phi = w.to_automorphism();
            assert_eq!(is_bounded(&phi).unwrap(), core_length(&w) <= 1, "{}", phi);
        }
    }

    #[test]
    fn conjugacy_recovers_triangular_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let f = Field::rationals();
        for _ in 0..30 {
            let g = random_word(&mut rng, 3, 2);
            let gi = g.inverse();
            let gens: Vec<PlaneAutomorphism> = (0..rng.gen_range(2..=3))
                .map(|_| {
                    let mut h = random_word(&mut rng, 1, 3);
                    if h.letters.first().is_some_and(|l| l.factor() == Factor::Affine) {
                        h.letters.clear();
                    }
                    g.compose(&h).compose(&gi).to_automorphism()
                })
                .collect();
            let r = conjugate_into_factor(&gens).unwrap();
            assert_ne!(r.verdict, Verdict::NotConjugate);
            let c = r.conjugator.unwrap().to_automorphism();
            let ci = c.invert().unwrap();
            for h in &gens {
                let m = ci.compose(h).unwrap().compose(&c).unwrap();
                assert!(m.is_affine() || m.is_triangular(), "{}", m);
            }
            let _ = &f;
        }
    }
}
