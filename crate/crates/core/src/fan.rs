//! Fans, subdivisions, star subdivisions, smooth resolution, Y-resolutions
//! and the construction of resolutions avoiding a prescribed ray.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::{fundamental_parallelepiped, Cone};
use crate::enumerate::LevelEnumerator;
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, Scalar};
use crate::nash::YFaceSet;

const REPAIR_LIMIT: usize = 10_000;

/// A fan stored by its maximal cones; faces are generated on demand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan<S> {
    ambient: usize,
    maximal: Vec<Cone<S>>,
}

#[allow(clippy::mutable_key_type)]
impl<S: Scalar> Fan<S> {
    /// Collects the given cones, dropping those that are faces of others.
    /// No compatibility check is made; see [`validate_fan`].
    pub fn new(ambient: usize, cones: Vec<Cone<S>>) -> Result<Self> {
        for c in &cones {
            if c.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: c.ambient_dim() });
            }
            if !c.is_pointed() {
                return Err(Error::NonPointed);
            }
        }
        let set: BTreeSet<Cone<S>> = cones.into_iter().collect();
        let all: Vec<Cone<S>> = set.into_iter().collect();
        let maximal = all
            .iter()
            .enumerate()
            .filter(|(i, c)| {
                !all.iter()
                    .enumerate()
                    .any(|(j, d)| *i != j && d.rays().len() > c.rays().len() && d.face_equal_to(c).is_some())
            })
            .map(|(_, c)| c.clone())
            .collect();
        Ok(Self { ambient, maximal })
    }

    /// The fan of all faces of one cone.
    pub fn from_cone(cone: Cone<S>) -> Self {
        Self { ambient: cone.ambient_dim(), maximal: vec![cone] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn maximal_cones(&self) -> &[Cone<S>] {
        &self.maximal
    }

    /// All rays, lex-sorted.
    pub fn rays(&self) -> Vec<LatticeVector<S>> {
        let set: BTreeSet<_> = self.maximal.iter().flat_map(|c| c.rays().iter().cloned()).collect();
        set.into_iter().collect()
    }

    pub fn has_ray(&self, v: &LatticeVector<S>) -> bool {
        self.maximal.iter().any(|c| c.rays().contains(v))
    }

    /// Every cone of the fan, ordered by ray count and then rays.
    pub fn cones(&self) -> Vec<Cone<S>> {
        let mut set = BTreeSet::new();
        for c in &self.maximal {
            for f in c.enumerate_faces().expect("fan cones are pointed") {
                set.insert(f.cone(self.ambient));
            }
        }
        let mut out: Vec<_> = set.into_iter().collect();
        out.sort_by(|a, b| (a.rays().len(), a.rays()).cmp(&(b.rays().len(), b.rays())));
        out
    }

    /// `v` lies in the support.
    pub fn contains(&self, v: &LatticeVector<S>) -> bool {
        self.maximal.iter().any(|c| c.contains(v))
    }

    pub fn is_simplicial(&self) -> bool {
        self.maximal.iter().all(|c| c.is_simplicial())
    }

    pub fn is_smooth(&self) -> bool {
        self.maximal.iter().all(|c| c.is_smooth().unwrap_or(false))
    }
}

/// Outcome of a structural check with human-readable diagnostics.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Validation {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

impl Validation {
    fn from_diagnostics(diagnostics: Vec<String>) -> Self {
        Self { valid: diagnostics.is_empty(), diagnostics }
    }
}

fn rays_string<S: Scalar>(c: &Cone<S>) -> String {
    let rays: Vec<String> = c.rays().iter().map(|r| r.to_string()).collect();
    format!("Cone[{}]", rays.join(", "))
}

/// Every pair of maximal cones meets in a common face.
pub fn validate_fan<S: Scalar>(fan: &Fan<S>) -> Validation {
    let mut diagnostics = Vec::new();
    let cones = fan.maximal_cones();
    for (i, a) in cones.iter().enumerate() {
        for b in &cones[i + 1..] {
            let meet = a.intersection(b);
            if a.face_equal_to(&meet).is_none() || b.face_equal_to(&meet).is_none() {
                diagnostics.push(format!(
                    "{} and {} meet in {}, which is not a common face",
                    rays_string(a),
                    rays_string(b),
                    rays_string(&meet)
                ));
            }
        }
    }
    Validation::from_diagnostics(diagnostics)
}

/// A refinement `refined` of `base` with the same support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision<S> {
    pub base: Fan<S>,
    pub refined: Fan<S>,
    pub added_rays: Vec<LatticeVector<S>>,
}

impl<S: Scalar> Subdivision<S> {
    pub fn new(base: Fan<S>, refined: Fan<S>) -> Self {
        let old: BTreeSet<_> = base.rays().into_iter().collect();
        let added_rays = refined.rays().into_iter().filter(|r| !old.contains(r)).collect();
        Self { base, refined, added_rays }
    }

    pub fn identity(base: Fan<S>) -> Self {
        Self::new(base.clone(), base)
    }

    pub fn rays(&self) -> Vec<LatticeVector<S>> {
        self.refined.rays()
    }

    /// Refinement containment, support equality, ray inclusion and fan validity.
    pub fn check(&self) -> Validation {
        let mut diagnostics = validate_fan(&self.refined).diagnostics;
        for c in self.refined.maximal_cones() {
            if !self.base.maximal_cones().iter().any(|b| b.contains_cone(c)) {
                diagnostics.push(format!("{} lies in no base cone", rays_string(c)));
            }
        }
        for b in self.base.maximal_cones() {
            if !covers(&self.refined, b) {
                diagnostics.push(format!("{} is not covered by the refinement", rays_string(b)));
            }
        }
        let new: BTreeSet<_> = self.refined.rays().into_iter().collect();
        for r in self.base.rays() {
            if !new.contains(&r) {
                diagnostics.push(format!("base ray {r} is missing"));
            }
        }
        Validation::from_diagnostics(diagnostics)
    }
}

/// The cones of `fan` inside `target` cover it.
///
/// Every full-dimensional piece must have each facet either on the boundary
/// of `target` or shared with exactly one other piece.
pub fn covers<S: Scalar>(fan: &Fan<S>, target: &Cone<S>) -> bool {
    let ambient = fan.ambient_dim();
    let dim = target.dim();
    if dim == 0 {
        return true;
    }
    let pieces: Vec<&Cone<S>> = fan
        .maximal_cones()
        .iter()
        .filter(|c| target.contains_cone(c) && c.dim() == dim)
        .collect();
    if pieces.is_empty() {
        return false;
    }
    let mut interior_facets: BTreeMap<Vec<LatticeVector<S>>, usize> = BTreeMap::new();
    for p in &pieces {
        for f in p.facet_faces() {
            let on_boundary = target
                .facet_normals()
                .iter()
                .any(|u| f.rays.iter().all(|r| u.dot(r).is_zero()));
            if !on_boundary {
                *interior_facets.entry(f.rays.clone()).or_default() += 1;
            }
        }
    }
    let _ = ambient;
    interior_facets.values().all(|&n| n == 2)
}

/// Replace every maximal cone containing `v` by the joins of `v` with its
/// facets avoiding `v`. Also used to pull an existing ray.
fn stellar<S: Scalar>(fan: &Fan<S>, v: &LatticeVector<S>) -> Fan<S> {
    let ambient = fan.ambient_dim();
    let mut cones = Vec::new();
    for c in fan.maximal_cones() {
        if !c.contains(v) {
            cones.push(c.clone());
            continue;
        }
        let facets = c.facet_faces();
        let normals = c.facet_normals();
        for (f, u) in facets.iter().zip(normals) {
            if u.dot(v).is_positive() {
                let mut gens = f.rays.clone();
                gens.push(v.clone());
                cones.push(Cone::new(ambient, gens).expect("same ambient"));
            }
        }
        if facets.is_empty() {
            cones.push(c.clone());
        }
    }
    Fan::new(ambient, cones).expect("stellar pieces are pointed")
}

/// Star subdivision at a primitive vector of the support.
pub fn star_subdivide<S: Scalar>(fan: &Fan<S>, v: &LatticeVector<S>) -> Result<Subdivision<S>> {
    if v.dim() != fan.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: fan.ambient_dim(), found: v.dim() });
    }
    if !v.is_primitive() {
        return Err(Error::NotPrimitive(v.to_string()));
    }
    if !fan.contains(v) {
        return Err(Error::NotInSupport(v.to_string()));
    }
    if fan.has_ray(v) {
        return Ok(Subdivision::identity(fan.clone()));
    }
    Ok(Subdivision::new(fan.clone(), stellar(fan, v)))
}

/// Order parameter along a two-dimensional cone: `u0(h) / u1(h)` where the
/// facet normal `u0` vanishes on the first ray.
fn angular_sort<S: Scalar>(cone: &Cone<S>, points: &mut [LatticeVector<S>]) {
    let normals = cone.facet_normals();
    let first = &cone.rays()[0];
    let (u0, u1) = if normals[0].dot(first).is_zero() {
        (&normals[0], &normals[1])
    } else {
        (&normals[1], &normals[0])
    };
    points.sort_by(|a, b| (u0.dot(a) * u1.dot(b)).cmp(&(u0.dot(b) * u1.dot(a))));
}

/// Coarsest smooth subdivision of a two-dimensional cone, obtained from the
/// consecutive elements of its Hilbert basis.
pub fn minimal_regular_subdivision_2d<S: Scalar>(cone: &Cone<S>) -> Result<Subdivision<S>> {
    if !cone.is_pointed() {
        return Err(Error::NonPointed);
    }
    if cone.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, found: cone.dim() });
    }
    let ambient = cone.ambient_dim();
    let mut basis = cone.hilbert_basis()?;
    angular_sort(cone, &mut basis);
    let pieces = basis
        .windows(2)
        .map(|w| Cone::new(ambient, w.to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Subdivision::new(Fan::from_cone(cone.clone()), Fan::new(ambient, pieces)?))
}

/// A ray of the cone over which it is not a pyramid, lex-first.
fn pull_candidate<S: Scalar>(cone: &Cone<S>) -> Option<LatticeVector<S>> {
    cone.rays().iter().enumerate().find_map(|(i, r)| {
        let opposite: Vec<_> = cone
            .facet_faces()
            .into_iter()
            .filter(|f| !f.indices.contains(&i))
            .collect();
        let pyramid = opposite.len() == 1 && opposite[0].indices.len() + 1 == cone.rays().len();
        (!pyramid).then(|| r.clone())
    })
}

fn simplicialize_fan<S: Scalar>(fan: &Fan<S>) -> Fan<S> {
    let mut current = fan.clone();
    while let Some(ray) = current
        .maximal_cones()
        .iter()
        .find(|c| !c.is_simplicial())
        .and_then(pull_candidate)
    {
        current = stellar(&current, &ray);
    }
    current
}

/// Simplicial refinement using existing rays only (pulling).
pub fn simplicialize<S: Scalar>(fan: &Fan<S>) -> Subdivision<S> {
    Subdivision::new(fan.clone(), simplicialize_fan(fan))
}

/// Tie-breaking policy: deterministic (first candidate) or seeded random.
pub(crate) struct Chooser {
    rng: Option<ChaCha8Rng>,
}

impl Chooser {
    pub(crate) fn deterministic() -> Self {
        Self { rng: None }
    }

    pub(crate) fn seeded(seed: u64) -> Self {
        if seed == 0 {
            Self::deterministic()
        } else {
            Self { rng: Some(ChaCha8Rng::seed_from_u64(seed)) }
        }
    }

    fn pick(&mut self, len: usize) -> usize {
        match &mut self.rng {
            Some(rng) if len > 1 => rng.gen_range(0..len),
            _ => 0,
        }
    }

    fn extra_blowups(&mut self) -> usize {
        match &mut self.rng {
            Some(rng) => rng.gen_range(1..=3),
            None => 0,
        }
    }
}

fn is_forbidden<S: Scalar>(forbidden: &BTreeSet<LatticeVector<S>>, v: &LatticeVector<S>) -> bool {
    forbidden.contains(v)
        || forbidden.iter().any(|f| f.primitive_part().map(|p| &p == v).unwrap_or(false))
}

/// Subdivision points of a simplicial cone: primitive nonzero points of the
/// half-open parallelepiped, by level and then lex.
fn subdivision_points<S: Scalar>(cone: &Cone<S>) -> Result<Vec<LatticeVector<S>>> {
    let ell = cone.positive_functional()?;
    let span = cone.span_lattice();
    let mut pts: Vec<_> = fundamental_parallelepiped(cone.rays(), &span)
        .into_iter()
        .filter(|p| p.numerators.iter().filter(|n| !n.is_zero()).count() >= 2)
        .map(|p| p.point)
        .filter(|p| p.is_primitive())
        .collect();
    pts.sort_by(|a, b| (ell.dot(a), a).cmp(&(ell.dot(b), b)));
    Ok(pts)
}

fn resolve_fan<S: Scalar>(
    fan: &Fan<S>,
    forbidden: &BTreeSet<LatticeVector<S>>,
    chooser: &mut Chooser,
) -> Result<Fan<S>> {
    let mut current = simplicialize_fan(fan);
    for _ in 0..REPAIR_LIMIT {
        let mut worst: Vec<(S, &Cone<S>)> = Vec::new();
        for c in current.maximal_cones() {
            let m = c.multiplicity()?;
            if m.is_one() {
                continue;
            }
            match worst.first() {
                Some((w, _)) if *w > m => {}
                Some((w, _)) if *w == m => worst.push((m, c)),
                _ => worst = vec![(m, c)],
            }
        }
        if worst.is_empty() {
            return Ok(current);
        }
        let cone = worst[chooser.pick(worst.len())].1.clone();
        let points: Vec<_> = subdivision_points(&cone)?
            .into_iter()
            .filter(|p| !is_forbidden(forbidden, p))
            .collect();
        if points.is_empty() {
            return Err(Error::ForbiddenBlocksResolution(rays_string(&cone)));
        }
        let m = points[chooser.pick(points.len())].clone();
        current = stellar(&current, &m);
    }
    Err(Error::Internal("smooth resolution did not terminate".into()))
}

/// Smooth refinement by repeated star subdivision of a cone of maximal
/// multiplicity, never adding a ray in `forbidden`.
pub fn resolve_smooth<S: Scalar>(
    fan: &Fan<S>,
    forbidden: &BTreeSet<LatticeVector<S>>,
) -> Result<Subdivision<S>> {
    let refined = resolve_fan(fan, forbidden, &mut Chooser::deterministic())?;
    Ok(Subdivision::new(fan.clone(), refined))
}

/// Cones whose relative interior lies in the region but which have no ray
/// there.
fn y_defects<S: Scalar>(fan: &Fan<S>, y: &YFaceSet<S>) -> Vec<Cone<S>> {
    fan.cones()
        .into_iter()
        .filter(|c| !c.rays().is_empty())
        .filter(|c| y.region_contains(&LatticeVector::sum(fan.ambient_dim(), c.rays())))
        .filter(|c| !c.rays().iter().any(|r| y.region_contains(r)))
        .collect()
}

/// Smooth, and every cone with relative interior in the region has a ray there.
pub fn is_y_resolution<S: Scalar>(sub: &Subdivision<S>, y: &YFaceSet<S>) -> Result<bool> {
    let sigma = y.sigma();
    let base_ok = sub.base.maximal_cones().len() == 1 && &sub.base.maximal_cones()[0] == sigma;
    let inside = sub.refined.maximal_cones().iter().all(|c| sigma.contains_cone(c));
    if !base_ok || !inside || !covers(&sub.refined, sigma) {
        return Err(Error::SupportMismatch(rays_string(sigma)));
    }
    Ok(sub.refined.is_smooth() && y_defects(&sub.refined, y).is_empty())
}

/// Lattice points `Σ a_i r_i` with every `a_i >= 1` of a smooth cone, up to
/// total excess `extra`, primitive and sorted by level then lex.
fn relint_points<S: Scalar>(
    cone: &Cone<S>,
    ell: &LatticeVector<S>,
    extra: usize,
) -> Vec<LatticeVector<S>> {
    let k = cone.rays().len();
    let base = LatticeVector::sum(cone.ambient_dim(), cone.rays());
    let mut out = vec![base.clone()];
    let mut frontier = vec![base];
    for _ in 0..extra {
        let mut next = BTreeSet::new();
        for p in &frontier {
            for r in cone.rays() {
                next.insert(p + r);
            }
        }
        frontier = next.into_iter().collect();
        out.extend(frontier.iter().cloned());
    }
    let _ = k;
    let mut out: Vec<_> = out.into_iter().filter(|p| p.is_primitive()).collect();
    out.sort_by(|a, b| (ell.dot(a), a).cmp(&(ell.dot(b), b)));
    out.dedup();
    out
}

fn complete_y_resolution<S: Scalar>(
    start: &Fan<S>,
    y: &YFaceSet<S>,
    forbidden: &BTreeSet<LatticeVector<S>>,
    chooser: &mut Chooser,
) -> Result<Fan<S>> {
    let ell = y.sigma().positive_functional()?;
    let mut current = resolve_fan(start, forbidden, chooser)?;

    for _ in 0..chooser.extra_blowups() {
        let candidates: Vec<_> = current.cones().into_iter().filter(|c| c.rays().len() >= 2).collect();
        if candidates.is_empty() {
            break;
        }
        let c = &candidates[chooser.pick(candidates.len())];
        let p = LatticeVector::sum(c.ambient_dim(), c.rays());
        if p.is_primitive() && !is_forbidden(forbidden, &p) {
            current = resolve_fan(&stellar(&current, &p), forbidden, chooser)?;
        }
    }

    for _ in 0..REPAIR_LIMIT {
        let mut defects = y_defects(&current, y);
        if defects.is_empty() {
            return Ok(current);
        }
        let top = defects.iter().map(|c| c.rays().len()).max().unwrap_or(0);
        defects.retain(|c| c.rays().len() == top);
        let gamma = defects[chooser.pick(defects.len())].clone();
        let point = relint_points(&gamma, &ell, 3)
            .into_iter()
            .find(|p| !is_forbidden(forbidden, p))
            .ok_or_else(|| Error::ForbiddenBlocksResolution(rays_string(&gamma)))?;
        current = resolve_fan(&stellar(&current, &point), forbidden, chooser)?;
    }
    Err(Error::Internal("Y-resolution repair did not terminate".into()))
}

/// A Y-resolution of the cone of `y` avoiding the `forbidden` rays.
pub fn make_y_resolution<S: Scalar>(
    y: &YFaceSet<S>,
    forbidden: &BTreeSet<LatticeVector<S>>,
) -> Result<Subdivision<S>> {
    make_y_resolution_seeded(y, forbidden, 0)
}

/// As [`make_y_resolution`], with tie-breaks and a few extra blowups drawn
/// from `seed`. Seed 0 is the deterministic construction.
pub fn make_y_resolution_seeded<S: Scalar>(
    y: &YFaceSet<S>,
    forbidden: &BTreeSet<LatticeVector<S>>,
    seed: u64,
) -> Result<Subdivision<S>> {
    let base = Fan::from_cone(y.sigma().clone());
    let refined = complete_y_resolution(&base, y, forbidden, &mut Chooser::seeded(seed))?;
    Ok(Subdivision::new(base, refined))
}

/// Decompositions `w = n1 + n2` with `n1` minimal in the region and `n2` a
/// nonzero lattice point of the cone, in order of discovery.
fn decompositions<S: Scalar>(
    y: &YFaceSet<S>,
    w: &LatticeVector<S>,
) -> Result<Vec<(LatticeVector<S>, LatticeVector<S>)>> {
    let sigma = y.sigma();
    let hilbert = sigma.hilbert_basis()?;
    let top = sigma.level(w)?;
    let mut enumerator = LevelEnumerator::new(sigma)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for level in 0..top {
        for u in enumerator.level(level).to_vec() {
            if !y.region_contains(&u) || !sigma.leq_sigma(&u, w) {
                continue;
            }
            let mut n1 = u;
            while let Some(next) = hilbert.iter().map(|h| &n1 - h).find(|d| y.region_contains(d)) {
                n1 = next;
            }
            if seen.insert(n1.clone()) {
                let n2 = w - &n1;
                out.push((n1, n2));
            }
        }
    }
    Ok(out)
}

fn avoid_with<S: Scalar>(
    y: &YFaceSet<S>,
    w: &LatticeVector<S>,
    n1: &LatticeVector<S>,
    n2: &LatticeVector<S>,
) -> Result<Fan<S>> {
    let ambient = w.dim();
    let plane = Cone::new(ambient, vec![n1.clone(), n2.clone()])?;
    let local = minimal_regular_subdivision_2d(&plane)?;
    let piece = local
        .refined
        .maximal_cones()
        .iter()
        .find(|c| c.contains_in_relint(w))
        .cloned()
        .ok_or_else(|| Error::Internal(format!("{w} lies on a ray of the local subdivision")))?;
    let mut fan = Fan::from_cone(y.sigma().clone());
    for r in piece.rays() {
        fan = star_subdivide(&fan, r)?.refined;
    }
    let forbidden = BTreeSet::from([w.clone()]);
    let result = complete_y_resolution(&fan, y, &forbidden, &mut Chooser::deterministic())?;
    if result.has_ray(w) {
        return Err(Error::Internal(format!("{w} reappeared as a ray")));
    }
    Ok(result)
}

/// A Y-resolution in which the non-minimal region point `w` is not a ray.
pub fn avoidance_resolution<S: Scalar>(y: &YFaceSet<S>, w: &LatticeVector<S>) -> Result<Subdivision<S>> {
    if !w.is_primitive() {
        return Err(Error::NotPrimitive(w.to_string()));
    }
    if y.is_minimal_in_region(w)? {
        return Err(Error::MinimalPoint(w.to_string()));
    }
    let candidates = decompositions(y, w)?;
    let attempts = candidates.len();
    for (n1, n2) in candidates {
        if let Ok(fan) = avoid_with(y, w, &n1, &n2) {
            let sub = Subdivision::new(Fan::from_cone(y.sigma().clone()), fan);
            if is_y_resolution(&sub, y)? {
                return Ok(sub);
            }
        }
    }
    Err(Error::ConstructionFailed { ray: w.to_string(), attempts })
}
