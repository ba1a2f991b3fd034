//! Zariski closure of a group orbit in the plane.
//!
//! The driver follows the decision procedure for finitely generated
//! subgroups of the plane automorphism group: finite orbits are found by
//! exploration, unbounded groups have dense orbits, and bounded groups are
//! conjugated into one factor where the invariant lattices of the generators
//! narrow the closure down to a finite union of curves.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::amalgam::{conjugate_into_factor, Verdict, Word};
use crate::error::{Error, Result};
use crate::lattice::{
    affine_equivariant, classify, curve_orbit, equivalent_fibration, is_invariant, is_torsion,
    projective_equivariant, support_intersection_dim1, Kind, LatticeDescriptor, Subvariety,
};
use crate::numfield::{Field, FieldElement};
use crate::planeauto::{PlaneAutomorphism, PlanePoint};
use crate::poly2::{linear_relations, BiPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureConfig {
    /// Distinct orbit points explored before an orbit counts as infinite.
    pub orbit_cap: usize,
    /// Longest word tried when looking for an element of infinite order.
    pub word_cap: usize,
    pub multdep_bound: u64,
    /// Exploration also stops once a point needs more bits than this.
    pub height_cap_bits: u64,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig { orbit_cap: 10_000, word_cap: 8, multdep_bound: 64, height_cap_bits: 4096 }
    }
}

/// How the answer was reached. Lattice data and candidate curves are in
/// the conjugated coordinates.
#[derive(Clone, Debug, Default)]
pub struct Certificate {
    /// Steps visited, the last one decided.
    pub steps: Vec<String>,
    pub orbit_points_explored: usize,
    pub verdict: Option<Verdict>,
    pub conjugator: Option<Word>,
    pub conjugated_generators: Vec<PlaneAutomorphism>,
    pub conjugated_point: Option<PlanePoint>,
    pub torsion_orders: Vec<Option<u64>>,
    pub added_generator: Option<PlaneAutomorphism>,
    /// Index into the conjugated generators (the added one last) and descriptor.
    pub descriptors: Vec<(usize, LatticeDescriptor)>,
    pub candidate_curves: Vec<BiPoly>,
}

impl Certificate {
    pub fn decided_at(&self) -> &str {
        self.steps.last().map_or("", |s| s.as_str())
    }

    fn step(&mut self, s: &str) {
        self.steps.push(s.to_string());
    }
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub closure: Subvariety,
    pub certificate: Certificate,
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Periodicity {
    Periodic(Vec<PlanePoint>),
    CapExceeded,
}

fn with_inverses(maps: &[PlaneAutomorphism]) -> Result<Vec<PlaneAutomorphism>> {
    let mut out = maps.to_vec();
    for m in maps {
        out.push(m.invert()?);
    }
    Ok(out)
}

struct Exploration {
    result: Periodicity,
    explored: usize,
    height_stop: bool,
}

/// Breadth-first orbit exploration under `maps` (inverses included by the caller).
fn explore(maps: &[PlaneAutomorphism], p: &PlanePoint, cap: usize, height_cap_bits: u64) -> Exploration {
    let mut seen: HashSet<PlanePoint> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(p.clone());
    queue.push_back(p.clone());
    while let Some(q) = queue.pop_front() {
        for g in maps {
            let r = g.apply(&q);
            if seen.contains(&r) {
                continue;
            }
            let height_stop = r.bit_size() > height_cap_bits;
            if seen.len() >= cap || height_stop {
                return Exploration { result: Periodicity::CapExceeded, explored: seen.len(), height_stop };
            }
            seen.insert(r.clone());
            queue.push_back(r);
        }
    }
    let explored = seen.len();
    let mut orbit: Vec<PlanePoint> = seen.into_iter().collect();
    orbit.sort();
    Exploration { result: Periodicity::Periodic(orbit), explored, height_stop: false }
}

/// Finite orbit of `p` under the group generated by `maps`, if exploration
/// closes within `cap` distinct points.
pub fn is_periodic(maps: &[PlaneAutomorphism], p: &PlanePoint, cap: usize) -> Result<Periodicity> {
    Ok(explore(&with_inverses(maps)?, p, cap, u64::MAX).result)
}

type Value = (FieldElement, FieldElement);
type Matrix = [[FieldElement; 2]; 2];

fn normalize(v: Value) -> Value {
    if v.1.is_zero() {
        (v.0.field().one(), v.1)
    } else {
        (&v.0 / &v.1, v.1.field().one())
    }
}

fn apply_matrix(m: &Matrix, v: &Value) -> Value {
    normalize((&(&m[0][0] * &v.0) + &(&m[0][1] * &v.1), &(&m[1][0] * &v.0) + &(&m[1][1] * &v.1)))
}

/// Orbit of a point of the projective line under matrices and their inverses.
fn explore_line(mats: &[Matrix], start: Value, cap: usize) -> Option<Vec<Value>> {
    let mut all: Vec<Matrix> = mats.to_vec();
    for m in mats {
        all.push([[m[1][1].clone(), -&m[0][1]], [-&m[1][0], m[0][0].clone()]]);
    }
    let start = normalize(start);
    let mut seen = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for m in &all {
            let w = apply_matrix(m, &v);
            if seen.contains(&w) {
                continue;
            }
            if seen.len() >= cap {
                return None;
            }
            seen.push(w.clone());
            queue.push_back(w);
        }
    }
    Some(seen)
}

/// Smallest invariant union of `components` through `p`, assuming the
/// orbit of `p` is infinite; `None` when no such union exists.
fn union_closure(components: &[BiPoly], maps: &[PlaneAutomorphism], p: &PlanePoint) -> Option<Subvariety> {
    let set: BTreeSet<BiPoly> = components.iter().filter(|c| !c.is_constant()).map(|c| c.monic()).collect();
    let mut best: Option<Vec<BiPoly>> = None;
    for c in set.iter().filter(|c| c.eval(&p.x, &p.y).is_zero()) {
        if let Some(orbit) = curve_orbit(c, maps, |g| set.contains(g), set.len()) {
            if best.as_ref().is_none_or(|b| orbit.len() < b.len()) {
                best = Some(orbit);
            }
        }
    }
    best.map(|curves| Subvariety::new(curves, Vec::new()))
}

/// Orbit closure of `p` inside a union of curves.
pub fn closure_in_union(
    components: &[BiPoly],
    gens: &[PlaneAutomorphism],
    p: &PlanePoint,
    cfg: &ClosureConfig,
) -> Result<Subvariety> {
    if !components.iter().any(|c| !c.is_constant() && c.eval(&p.x, &p.y).is_zero()) {
        return Err(Error::PointOffVariety);
    }
    let maps = with_inverses(gens)?;
    if let Periodicity::Periodic(orbit) = explore(&maps, p, cfg.orbit_cap, cfg.height_cap_bits).result {
        return Ok(Subvariety::new(Vec::new(), orbit));
    }
    Ok(union_closure(components, &maps, p).unwrap_or_else(Subvariety::whole_plane))
}

/// First element of infinite order among words of length at most
/// `word_cap` in `gens`.
pub fn find_infinite_order_word(gens: &[PlaneAutomorphism], word_cap: usize) -> Result<Option<PlaneAutomorphism>> {
    const ELEMENT_CAP: usize = 100_000;
    let Some(first) = gens.first() else { return Ok(None) };
    let mut seen: HashSet<PlaneAutomorphism> = HashSet::from([PlaneAutomorphism::identity(first.field())]);
    let mut layer = vec![PlaneAutomorphism::identity(first.field())];
    for _ in 0..word_cap {
        let mut next = Vec::new();
        for w in &layer {
            for g in gens {
                let e = w.compose(g)?;
                if !seen.insert(e.clone()) {
                    continue;
                }
                if is_torsion(&e)?.is_none() {
                    return Ok(Some(e));
                }
                if seen.len() > ELEMENT_CAP {
                    return Ok(None);
                }
                next.push(e);
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(None)
}

/// Zariski closure of the orbit of `p` under the group generated by `gens`.
pub fn orbit_closure(gens: &[PlaneAutomorphism], p: &PlanePoint, cfg: &ClosureConfig) -> Result<ClosureResult> {
    let first = gens.first().ok_or_else(|| Error::PreconditionViolation("empty generator list".into()))?;
    if gens.iter().any(|g| !Field::same(g.field(), first.field())) || !Field::same(p.field(), first.field()) {
        return Err(Error::FieldMismatch);
    }
    let mut cert = Certificate::default();
    let mut caveats = Vec::new();
    let done = |closure: Subvariety, cert: Certificate, caveats: Vec<String>| {
        Ok(ClosureResult { closure, certificate: cert, caveats })
    };

    cert.step("1");
    let maps = with_inverses(gens).map_err(|e| e.at("step 1"))?;
    let ex = explore(&maps, p, cfg.orbit_cap, cfg.height_cap_bits);
    cert.orbit_points_explored = ex.explored;
    match ex.result {
        Periodicity::Periodic(orbit) => return done(Subvariety::new(Vec::new(), orbit), cert, caveats),
        Periodicity::CapExceeded if ex.height_stop => caveats.push(format!(
            "orbit treated as infinite: a point exceeded {} bits after {} points",
            cfg.height_cap_bits, ex.explored
        )),
        Periodicity::CapExceeded => {
            caveats.push(format!("orbit treated as infinite: more than {} distinct points", cfg.orbit_cap))
        }
    }

    cert.step("2");
    let conj = conjugate_into_factor(gens).map_err(|e| e.at("step 2"))?;
    cert.verdict = Some(conj.verdict);
    if conj.verdict == Verdict::NotConjugate {
        return done(Subvariety::whole_plane(), cert, caveats);
    }
    let c = conj.conjugator.expect("conjugate verdict carries a conjugator");
    let hs = conj.conjugated_generators.expect("conjugate verdict carries generators");
    let c_map = c.to_automorphism();
    let c_inv = c.inverse().to_automorphism();
    let q = c_inv.apply(p);
    cert.conjugator = Some(c);
    cert.conjugated_generators = hs.clone();
    cert.conjugated_point = Some(q.clone());

    cert.step("3");
    let orders = hs.iter().map(is_torsion).collect::<Result<Vec<_>>>().map_err(|e| e.at("step 3"))?;
    cert.torsion_orders = orders.clone();
    let mut all = hs.clone();
    let mut nontorsion: Vec<usize> = (0..hs.len()).filter(|&i| orders[i].is_none()).collect();
    let torsion: Vec<usize> = (0..hs.len()).filter(|&i| orders[i].is_some()).collect();
    if nontorsion.is_empty() {
        match find_infinite_order_word(&hs, cfg.word_cap).map_err(|e| e.at("step 3"))? {
            Some(w) => {
                cert.added_generator = Some(w.clone());
                nontorsion.push(all.len());
                all.push(w);
            }
            None => {
                return Err(Error::Inconclusive(format!(
                    "every generator has finite order and no word of length ≤ {} has infinite order; {}",
                    cfg.word_cap,
                    caveats.join("; ")
                )))
            }
        }
    }
    let mut descs = Vec::new();
    for &i in &nontorsion {
        let d = classify(&all[i], cfg.multdep_bound).map_err(|e| e.at("step 3"))?;
        if matches!(d.kind, Kind::FiniteOrder(_)) {
            return Err(Error::InternalVerificationFailure(format!("{} classified as finite order", all[i])));
        }
        caveats.extend(d.caveats.iter().cloned());
        descs.push((i, d));
    }
    cert.descriptors = descs.clone();

    let group = with_inverses(&all).map_err(|e| e.at("step 3"))?;
    let ctx = Context { all: &all, group: &group, torsion: &torsion, descs: &descs, q: &q, cfg };
    let closure = ctx.decide(&mut cert, &mut caveats)?;

    let closure = if closure.is_whole_plane() {
        closure
    } else {
        Subvariety::new(
            closure.curves().iter().map(|f| c_inv.pullback(f)).collect(),
            closure.points().iter().map(|r| c_map.apply(r)).collect(),
        )
    };
    done(closure, cert, caveats)
}

struct Context<'a> {
    /// Conjugated generators, with the added infinite-order word if any.
    all: &'a [PlaneAutomorphism],
    /// `all` followed by the inverses.
    group: &'a [PlaneAutomorphism],
    torsion: &'a [usize],
    descs: &'a [(usize, LatticeDescriptor)],
    q: &'a PlanePoint,
    cfg: &'a ClosureConfig,
}

impl Context<'_> {
    fn decide(&self, cert: &mut Certificate, caveats: &mut Vec<String>) -> Result<Subvariety> {
        cert.step("4");
        if let Some((_, d)) = self.descs.iter().find(|(_, d)| d.kind == Kind::NonFibration) {
            return Ok(self.finish(d.invariant_curves.clone(), cert));
        }

        cert.step("5");
        for (a, (i, da)) in self.descs.iter().enumerate() {
            for (j, db) in &self.descs[a + 1..] {
                if da.kind != db.kind || !equivalent_fibration(da, db).map_err(|e| e.at("step 5"))? {
                    let s = support_intersection_dim1(da, &self.all[*i], db, &self.all[*j])
                        .map_err(|e| e.at("step 5"))?;
                    return Ok(self.finish(s.curves().to_vec(), cert));
                }
            }
        }

        let d0 = &self.descs[0].1;
        match d0.kind {
            Kind::OrbitFibration => self.fibration_step(d0, cert, caveats),
            Kind::ProjectiveQuotient => self.pencil_step(d0, cert, caveats),
            _ => Err(Error::InternalVerificationFailure("unexpected descriptor kind".into())),
        }
    }

    /// All non-torsion generators share the fibers of `π`.
    fn fibration_step(
        &self,
        d0: &LatticeDescriptor,
        cert: &mut Certificate,
        caveats: &mut Vec<String>,
    ) -> Result<Subvariety> {
        cert.step("6");
        let pi = d0.pi_affine.as_ref().expect("orbit fibration has π");
        let shared_l = d0.transversal_curve.as_ref().filter(|l| {
            self.descs.iter().all(|(_, d)| d.transversal_curve.as_ref().is_some_and(|m| crate::poly2::same_curve(l, m)))
        });
        let mut mats = Vec::new();
        for (i, g) in self.all.iter().enumerate() {
            match affine_equivariant(pi, g).map_err(|e| e.at("step 6"))? {
                Some((u, v)) => {
                    let f = u.field().clone();
                    mats.push([[u, v], [f.zero(), f.one()]]);
                }
                None if self.torsion.contains(&i) => {
                    cert.step("6-1");
                    let Some(l1) = &d0.transversal_curve else { return Ok(self.finish(Vec::new(), cert)) };
                    let image = g.invert()?.pullback(l1);
                    return Ok(self.finish(vec![l1.clone(), image], cert));
                }
                None => {
                    return Err(Error::InternalVerificationFailure(format!("{} does not preserve the fibers of {}", g, pi)))
                }
            }
        }
        cert.step("6-2");
        let start = d0.value_at(self.q).expect("fibration value");
        match explore_line(&mats, start, self.cfg.orbit_cap) {
            Some(values) => {
                let curves = values.iter().flat_map(|(a, b)| d0.fiber_components(a, b)).collect();
                Ok(self.finish(curves, cert))
            }
            None => {
                caveats.push(format!(
                    "fiber orbit treated as infinite: more than {} values of the invariant",
                    self.cfg.orbit_cap
                ));
                let invariant = shared_l.filter(|l| {
                    l.eval(&self.q.x, &self.q.y).is_zero()
                        && self.all.iter().all(|g| is_invariant(g, &Subvariety::new(vec![(*l).clone()], Vec::new())))
                });
                Ok(match invariant {
                    Some(l) => Subvariety::new(vec![l.clone()], Vec::new()),
                    None => Subvariety::whole_plane(),
                })
            }
        }
    }

    /// All non-torsion generators preserve the same pencil.
    fn pencil_step(
        &self,
        d0: &LatticeDescriptor,
        cert: &mut Certificate,
        caveats: &mut Vec<String>,
    ) -> Result<Subvariety> {
        cert.step("7");
        let (num, den) = d0.pi_projective.as_ref().expect("projective quotient has a pencil");
        let (xt, yt) = d0.coordinates.clone().expect("pencil comes with coordinates");
        let base = d0.distinguished_point.as_ref().filter(|_| !den.is_constant());
        if let Some(b) = base {
            for &j in self.torsion {
                let g = &self.all[j];
                if g.apply(b) == *b {
                    continue;
                }
                let mut orbit = Vec::new();
                let mut r = g.apply(b);
                while r != *b {
                    orbit.push(r.clone());
                    r = g.apply(&r);
                }
                let curves = orbit
                    .iter()
                    .flat_map(|r| {
                        let (a, bb) = d0.value_at(r).expect("pencil value");
                        d0.fiber_components(&a, &bb)
                    })
                    .collect();
                return Ok(self.finish(curves, cert));
            }
        }

        let mut mats = Vec::new();
        let mut exchanged = Vec::new();
        for (i, g) in self.all.iter().enumerate() {
            match projective_equivariant(num, den, g).map_err(|e| e.at("step 7"))? {
                Some(m) => mats.push(m),
                None if self.torsion.contains(&i) => {
                    let inv = g.invert()?;
                    let rels = linear_relations(&[inv.pullback(num), inv.pullback(den), num.clone(), den.clone()]);
                    for r in rels {
                        // (r0 num + r1 den)∘g⁻¹ = −(r2 num + r3 den): the fiber over
                        // [−r1 : r0] is carried onto the fiber over [−r3 : r2].
                        exchanged.extend(d0.fiber_components(&-&r[1], &r[0]));
                        exchanged.extend(d0.fiber_components(&-&r[3], &r[2]));
                    }
                    exchanged.push(xt.clone());
                    exchanged.push(yt.clone());
                }
                None => {
                    return Err(Error::InternalVerificationFailure(format!("{} does not preserve the pencil", g)))
                }
            }
        }
        if !exchanged.is_empty() {
            cert.step("7-1");
            return Ok(self.finish(exchanged, cert));
        }
        cert.step("7-2");
        let start = d0.value_at(self.q).expect("pencil value");
        match explore_line(&mats, start, self.cfg.orbit_cap) {
            Some(values) => {
                let curves = values.iter().flat_map(|(a, b)| d0.fiber_components(a, b)).collect();
                Ok(self.finish(curves, cert))
            }
            None => {
                caveats.push(format!(
                    "pencil orbit treated as infinite: more than {} values of the invariant",
                    self.cfg.orbit_cap
                ));
                Ok(Subvariety::whole_plane())
            }
        }
    }

    /// Step 8: orbit closure inside the candidate curves.
    fn finish(&self, candidates: Vec<BiPoly>, cert: &mut Certificate) -> Subvariety {
        cert.step("8");
        let candidates = Subvariety::new(candidates, Vec::new()).curves().to_vec();
        let closure = union_closure(&candidates, self.group, self.q).unwrap_or_else(Subvariety::whole_plane);
        cert.candidate_curves = candidates;
        closure
    }
}
