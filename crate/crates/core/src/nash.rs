//! Nash data of a toric pair: the faces of `Y`, the region `∪ τ°`, its
//! minimal points `W`, essential-divisor certificates, monomial valuations,
//! contact loci and the orbit-closure order.

use std::collections::BTreeSet;

use crate::cone::{Cone, Face};
use crate::enumerate::{minimal_level_bound, search_minimal, EnumerationOptions, LevelEnumerator, SearchOutcome};
use crate::error::{Error, Result};
use crate::fan::{avoidance_resolution, make_y_resolution_seeded, Fan, Subdivision};
use crate::lattice::{LatticeVector, Scalar, SpanLattice};

/// Upward-closed set of faces of `σ` whose orbits make up `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YFaceSet<S> {
    sigma: Cone<S>,
    faces: Vec<Face<S>>,
    keys: BTreeSet<Vec<usize>>,
}

/// Faces of `σ` that are not smooth cones. Upward closed.
pub fn singular_faces<S: Scalar>(sigma: &Cone<S>) -> Result<Vec<Face<S>>> {
    let ambient = sigma.ambient_dim();
    let mut out = Vec::new();
    for f in sigma.enumerate_faces()? {
        if !f.cone(ambient).is_smooth()? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Upward closure of `seed` together with the singular faces.
pub fn y_face_closure<S: Scalar>(sigma: &Cone<S>, seed: &[Face<S>]) -> Result<YFaceSet<S>> {
    if seed.iter().any(|f| f.is_zero_face()) {
        return Err(Error::NotProper);
    }
    let mut generators = singular_faces(sigma)?;
    generators.extend(seed.iter().cloned());
    let faces = sigma
        .enumerate_faces()?
        .into_iter()
        .filter(|f| generators.iter().any(|g| g.is_subface_of(f)))
        .collect();
    YFaceSet::new(sigma.clone(), faces)
}

impl<S: Scalar> YFaceSet<S> {
    /// Validates non-emptiness, properness, upward closure and that every
    /// singular face is present.
    pub fn new(sigma: Cone<S>, faces: Vec<Face<S>>) -> Result<Self> {
        if !sigma.is_pointed() {
            return Err(Error::NonPointed);
        }
        if faces.is_empty() {
            return Err(Error::EmptyY);
        }
        if faces.iter().any(|f| f.is_zero_face()) {
            return Err(Error::NotProper);
        }
        let keys: BTreeSet<Vec<usize>> = faces.iter().map(|f| f.indices.clone()).collect();
        let all = sigma.enumerate_faces()?;
        for f in &faces {
            if !all.iter().any(|g| g.indices == f.indices) {
                return Err(Error::InvalidYFaceSet(format!("ray indices {:?} do not form a face", f.indices)));
            }
            if let Some(g) = all.iter().find(|g| f.is_subface_of(g) && !keys.contains(&g.indices)) {
                return Err(Error::InvalidYFaceSet(format!(
                    "not upward closed: {:?} is missing above {:?}",
                    g.indices, f.indices
                )));
            }
        }
        if let Some(s) = singular_faces(&sigma)?.into_iter().find(|s| !keys.contains(&s.indices)) {
            return Err(Error::InvalidYFaceSet(format!("singular face {:?} is missing", s.indices)));
        }
        let faces = all.into_iter().filter(|g| keys.contains(&g.indices)).collect();
        Ok(Self { sigma, faces, keys })
    }

    /// Faces given by subsets of ray indices of `σ`, followed by upward closure.
    pub fn from_index_sets(sigma: &Cone<S>, sets: &[Vec<usize>]) -> Result<Self> {
        let seed = sets
            .iter()
            .map(|s| sigma.face_from_indices(s))
            .collect::<Result<Vec<_>>>()?;
        y_face_closure(sigma, &seed)
    }

    /// `Y = V(I)`: the faces on whose relative interior every generator is positive.
    pub fn from_ideal(ideal: &MonomialIdeal<S>) -> Result<Self> {
        let sigma = ideal.sigma();
        let faces = sigma
            .enumerate_faces()?
            .into_iter()
            .filter(|f| {
                let c = f.interior_point(sigma.ambient_dim());
                ideal.generators().iter().all(|g| g.dot(&c).is_positive())
            })
            .collect();
        Self::new(sigma.clone(), faces)
    }

    pub fn sigma(&self) -> &Cone<S> {
        &self.sigma
    }

    /// Faces ordered by ray count and then indices.
    pub fn faces(&self) -> &[Face<S>] {
        &self.faces
    }

    pub fn contains_face(&self, face: &Face<S>) -> bool {
        self.keys.contains(&face.indices)
    }

    /// `v` lies in `τ°` for some face `τ` of `Y`.
    pub fn region_contains(&self, v: &LatticeVector<S>) -> bool {
        match self.sigma.smallest_containing_face(v) {
            Ok(f) => self.keys.contains(&f.indices),
            Err(_) => false,
        }
    }

    fn require_region(&self, v: &LatticeVector<S>) -> Result<()> {
        if self.region_contains(v) {
            Ok(())
        } else {
            Err(Error::NotInRegion(v.to_string()))
        }
    }

    /// No Hilbert basis step down from `v` stays in the region. Exact because
    /// the region is stable under adding lattice points of `σ`.
    pub fn is_minimal_in_region(&self, v: &LatticeVector<S>) -> Result<bool> {
        self.require_region(v)?;
        Ok(self
            .sigma
            .hilbert_basis()?
            .iter()
            .all(|h| !self.region_contains(&(v - h))))
    }

    /// For each Hilbert basis element `h`, why `v - h` leaves the region.
    pub fn minimality_witnesses(&self, v: &LatticeVector<S>) -> Result<Vec<MinimalityWitness<S>>> {
        self.require_region(v)?;
        self.sigma
            .hilbert_basis()?
            .into_iter()
            .map(|h| {
                let difference = v - &h;
                let reason = match self.sigma.smallest_containing_face(&difference) {
                    Err(_) => WitnessReason::OutsideCone,
                    Ok(f) if !self.keys.contains(&f.indices) => WitnessReason::FaceNotInY(f.indices),
                    Ok(_) => {
                        return Err(Error::Internal(format!("{v} is not minimal: {difference} is in the region")))
                    }
                };
                Ok(MinimalityWitness { generator: h, difference, reason })
            })
            .collect()
    }
}

/// Why `v - h` is not a region point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessReason {
    OutsideCone,
    /// Lies in the relative interior of the face with these ray indices, which is not in `Y`.
    FaceNotInY(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityWitness<S> {
    pub generator: LatticeVector<S>,
    pub difference: LatticeVector<S>,
    pub reason: WitnessReason,
}

/// A monomial ideal of `k[σ^∨ ∩ M]` given by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal<S> {
    sigma: Cone<S>,
    generators: Vec<LatticeVector<S>>,
}

impl<S: Scalar> MonomialIdeal<S> {
    pub fn new(sigma: Cone<S>, generators: Vec<LatticeVector<S>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidIdeal("no generators".into()));
        }
        for g in &generators {
            if g.dim() != sigma.ambient_dim() {
                return Err(Error::DimensionMismatch { expected: sigma.ambient_dim(), found: g.dim() });
            }
            if g.is_zero() {
                return Err(Error::InvalidIdeal("zero exponent generates the unit ideal".into()));
            }
            if let Some(r) = sigma.rays().iter().find(|r| g.dot(r).is_negative()) {
                return Err(Error::InvalidIdeal(format!("exponent {g} pairs negatively with ray {r}")));
            }
        }
        let set: BTreeSet<_> = generators.into_iter().collect();
        Ok(Self { sigma, generators: set.into_iter().collect() })
    }

    pub fn sigma(&self) -> &Cone<S> {
        &self.sigma
    }

    pub fn generators(&self) -> &[LatticeVector<S>] {
        &self.generators
    }

    /// `min_u <v, u>` over the generators.
    pub fn order(&self, v: &LatticeVector<S>) -> S {
        self.generators
            .iter()
            .map(|g| g.dot(v))
            .min()
            .expect("ideal has generators")
    }
}

/// Minimal generators of `{u ∈ σ^∨ ∩ M : <u, c_τ> >= 1 for all τ in Y}`, where
/// `c_τ` is the sum of the rays of `τ`. Its order is positive exactly on the region.
pub fn faces_to_ideal<S: Scalar>(y: &YFaceSet<S>) -> Result<MonomialIdeal<S>> {
    let sigma = y.sigma();
    let ambient = sigma.ambient_dim();
    let span = SpanLattice::new(sigma.rays(), ambient);
    let local = |v: &LatticeVector<S>| span.coordinates(v).expect("cone point lies in its span");
    let local_cone = Cone::new(span.rank(), sigma.rays().iter().map(local).collect())?;
    let dual = local_cone.dual_cone();
    let constraints: Vec<_> = y
        .faces()
        .iter()
        .map(|f| (local(&f.interior_point(ambient)), S::one()))
        .collect();
    let member = |u: &LatticeVector<S>| {
        dual.contains(u) && constraints.iter().all(|(c, b)| c.dot(u) >= *b)
    };
    let hilbert = dual.hilbert_basis()?;
    let bound = minimal_level_bound(&dual, &constraints)?;
    let mut enumerator = LevelEnumerator::new(&dual)?;
    let options = EnumerationOptions { buffer: Some(0), level_cap: u64::MAX };
    let outcome = search_minimal(&mut enumerator, bound, options, member, |u| {
        hilbert.iter().all(|h| !member(&(u - h)))
    })?;
    let generators = outcome.points.iter().map(|u| span.lift_dual(u)).collect();
    MonomialIdeal::new(sigma.clone(), generators)
}

/// All `≤_σ`-minimal lattice points of the region.
///
/// The scan runs through the exact completeness bound and at least `buffer`
/// levels past the last new point.
pub fn compute_w<S: Scalar>(y: &YFaceSet<S>, options: EnumerationOptions) -> Result<SearchOutcome<S>> {
    let sigma = y.sigma();
    let ideal = faces_to_ideal(y)?;
    let constraints: Vec<_> = ideal.generators().iter().map(|g| (g.clone(), S::one())).collect();
    let bound = minimal_level_bound(sigma, &constraints)?;
    let hilbert = sigma.hilbert_basis()?;
    let mut enumerator = LevelEnumerator::new(sigma)?;
    search_minimal(
        &mut enumerator,
        bound,
        options,
        |v| y.region_contains(v),
        |v| hilbert.iter().all(|h| !y.region_contains(&(v - h))),
    )
}

/// Evidence that a point of `W` is an essential divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialCertificate<S> {
    pub point: LatticeVector<S>,
    pub minimality_witnesses: Vec<MinimalityWitness<S>>,
    /// Indices into the sample resolutions containing the ray of `point`.
    pub sample_resolutions: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleResolution<S> {
    pub seed: u64,
    pub subdivision: Subdivision<S>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificationFailure<S> {
    /// A point of `W` is not a ray of a sample resolution.
    Missing { point: LatticeVector<S>, sample: usize },
    /// A non-minimal region ray could not be avoided.
    NotAvoided { ray: LatticeVector<S>, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NashPairReport<S> {
    pub w: Vec<LatticeVector<S>>,
    pub levels_scanned: u64,
    pub completeness_bound: Option<u64>,
    pub certificates: Vec<EssentialCertificate<S>>,
    pub samples: Vec<SampleResolution<S>>,
    pub avoided: Vec<(LatticeVector<S>, Subdivision<S>)>,
    pub failures: Vec<CertificationFailure<S>>,
    pub bijective: bool,
}

/// Computes `W`, checks every point of `W` is a ray of `samples` distinct
/// Y-resolutions and that every other region ray of those samples can be avoided.
pub fn certify_essential<S: Scalar>(
    y: &YFaceSet<S>,
    samples: usize,
    options: EnumerationOptions,
) -> Result<NashPairReport<S>> {
    certify_essential_from(y, samples, 0, options)
}

/// As [`certify_essential`], drawing sample resolutions from seeds starting at `first_seed`.
pub fn certify_essential_from<S: Scalar>(
    y: &YFaceSet<S>,
    samples: usize,
    first_seed: u64,
    options: EnumerationOptions,
) -> Result<NashPairReport<S>> {
    let outcome = compute_w(y, options)?;
    let w = outcome.points;

    let none = BTreeSet::new();
    let mut resolutions: Vec<SampleResolution<S>> = Vec::new();
    let mut seed = first_seed;
    while resolutions.len() < samples && seed - first_seed < 4 * samples as u64 + 4 {
        let subdivision = make_y_resolution_seeded(y, &none, seed)?;
        if !resolutions.iter().any(|r| r.subdivision.refined == subdivision.refined) {
            resolutions.push(SampleResolution { seed, subdivision });
        }
        seed += 1;
    }

    let mut failures = Vec::new();
    let mut certificates = Vec::new();
    for p in &w {
        let mut present = Vec::new();
        for (i, r) in resolutions.iter().enumerate() {
            if r.subdivision.refined.has_ray(p) {
                present.push(i);
            } else {
                failures.push(CertificationFailure::Missing { point: p.clone(), sample: i });
            }
        }
        certificates.push(EssentialCertificate {
            point: p.clone(),
            minimality_witnesses: y.minimality_witnesses(p)?,
            sample_resolutions: present,
        });
    }

    let extra: BTreeSet<LatticeVector<S>> = resolutions
        .iter()
        .flat_map(|r| r.subdivision.refined.rays())
        .filter(|r| y.region_contains(r) && !w.contains(r))
        .collect();
    let mut avoided = Vec::new();
    for ray in extra {
        match avoidance_resolution(y, &ray) {
            Ok(sub) => avoided.push((ray, sub)),
            Err(e) => failures.push(CertificationFailure::NotAvoided { ray, reason: e.to_string() }),
        }
    }

    Ok(NashPairReport {
        w,
        levels_scanned: outcome.levels_scanned,
        completeness_bound: outcome.completeness_bound,
        certificates,
        samples: resolutions,
        avoided,
        bijective: failures.is_empty(),
        failures,
    })
}

/// `min <v, u>` over the exponents of the terms with nonzero coefficient.
pub fn monomial_valuation<S: Scalar>(v: &LatticeVector<S>, f: &[(S, LatticeVector<S>)]) -> Result<S> {
    f.iter()
        .filter(|(c, _)| !c.is_zero())
        .map(|(_, u)| u.dot(v))
        .min()
        .ok_or(Error::ZeroFunction)
}

/// `v` is `≤_σ`-minimal in `V(I, n) = {v : ord_I(v) = n}`, decided by
/// scanning the lattice points of `(v - σ) ∩ σ`.
pub fn is_minimal_in_contact_set<S: Scalar>(ideal: &MonomialIdeal<S>, n: &S, v: &LatticeVector<S>) -> Result<bool> {
    let sigma = ideal.sigma();
    if !sigma.contains(v) || ideal.order(v) != *n {
        return Ok(false);
    }
    let top = sigma.level(v)?;
    let mut enumerator = LevelEnumerator::new(sigma)?;
    for level in 0..top {
        for u in enumerator.level(level) {
            if sigma.leq_sigma(u, v) && ideal.order(u) == *n {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The `≤_σ`-minimal elements of `V(I, n)`.
///
/// They are exactly the minimal points of `{v : ord_I(v) >= n}` of order `n`,
/// which gives a one-step minimality test and an exact level bound.
pub fn contact_components<S: Scalar>(
    ideal: &MonomialIdeal<S>,
    n: u64,
    options: EnumerationOptions,
) -> Result<SearchOutcome<S>> {
    if n == 0 {
        return Err(Error::InvalidOrder);
    }
    let sigma = ideal.sigma();
    let n = S::from_u64(n).ok_or(Error::InvalidOrder)?;
    let constraints: Vec<_> = ideal.generators().iter().map(|g| (g.clone(), n.clone())).collect();
    let bound = minimal_level_bound(sigma, &constraints)?;
    let hilbert = sigma.hilbert_basis()?;
    let at_least = |v: &LatticeVector<S>| sigma.contains(v) && ideal.order(v) >= n;
    let mut enumerator = LevelEnumerator::new(sigma)?;
    search_minimal(
        &mut enumerator,
        bound,
        options,
        |v| ideal.order(v) == n,
        |v| hilbert.iter().all(|h| !at_least(&(v - h))),
    )
}

/// Result of comparing two orbit data `(τ, v)` and `(τ', v')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitComparison<S> {
    pub leq: bool,
    /// A cone `γ ⊇ τ'` with `p(v) <= v'` in the image of `γ`.
    pub witness: Option<Cone<S>>,
    pub reason: Option<String>,
}

/// `τ ≤ τ'` and some cone `γ ⊇ τ'` of the fan has `p(v) ≤_{γ'} v'`, with `p`
/// the projection to `N / span(τ')` and `γ'` the image of `γ`.
pub fn orbit_closure_leq<S: Scalar>(
    fan: &Fan<S>,
    tau: &Cone<S>,
    v: &LatticeVector<S>,
    tau2: &Cone<S>,
    v2: &LatticeVector<S>,
) -> Result<OrbitComparison<S>> {
    let cones = fan.cones();
    for t in [tau, tau2] {
        if !cones.contains(t) {
            return Err(Error::InvalidFace(t.rays().iter().map(|r| r.to_string()).collect()));
        }
    }
    if tau2.face_equal_to(tau).is_none() {
        return Ok(OrbitComparison {
            leq: false,
            witness: None,
            reason: Some("the first cone is not a face of the second".into()),
        });
    }
    let ambient = fan.ambient_dim();
    let span = SpanLattice::new(tau2.rays(), ambient);
    let project = |x: &LatticeVector<S>| {
        if tau2.rays().is_empty() {
            x.clone()
        } else {
            span.quotient(x)
        }
    };
    let target = &project(v2) - &project(v);
    for gamma in cones.iter().filter(|g| g.face_equal_to(tau2).is_some()) {
        let image_rays: Vec<_> = gamma.rays().iter().map(&project).filter(|r| !r.is_zero()).collect();
        let image = Cone::new(target.dim(), image_rays)?;
        if image.contains(&target) {
            return Ok(OrbitComparison { leq: true, witness: Some(gamma.clone()), reason: None });
        }
    }
    Ok(OrbitComparison {
        leq: false,
        witness: None,
        reason: Some("no cone containing the second face orders the projected points".into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{avoidance_resolution, is_y_resolution, make_y_resolution};
    use num_bigint::BigInt;

    type C = Cone<BigInt>;
    type V = LatticeVector<BigInt>;

    fn v(c: &[i64]) -> V {
        V::from_i64s(c)
    }

    fn quadrant() -> C {
        C::from_i64_rays(2, &[&[1, 0], &[0, 1]])
    }

    fn a_n(n: i64) -> C {
        C::from_i64_rays(2, &[&[1, 0], &[1, n + 1]])
    }

    fn full(c: &C) -> YFaceSet<BigInt> {
        YFaceSet::new(c.clone(), vec![c.full_face()]).unwrap()
    }

    fn x_ray_y() -> YFaceSet<BigInt> {
        let q = quadrant();
        let x = q.face_from_rays(&[v(&[1, 0])]).unwrap();
        y_face_closure(&q, &[x]).unwrap()
    }

    #[test]
    fn singular_face_examples() {
        assert_eq!(singular_faces(&a_n(1)).unwrap().len(), 1);
        assert!(singular_faces(&quadrant()).unwrap().is_empty());
        let quadric = C::from_i64_rays(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let s = singular_faces(&quadric).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].indices.len(), 4);
    }

    #[test]
    fn closure_examples() {
        assert_eq!(x_ray_y().faces().len(), 2);
        assert_eq!(y_face_closure(&quadrant(), &[]), Err(Error::EmptyY));
        assert_eq!(y_face_closure(&a_n(1), &[]).unwrap().faces().len(), 1);
        let zero = quadrant().enumerate_faces().unwrap()[0].clone();
        assert_eq!(y_face_closure(&quadrant(), &[zero]), Err(Error::NotProper));
    }

    #[test]
    fn region_and_minimality() {
        let y = full(&quadrant());
        assert!(y.region_contains(&v(&[1, 1])));
        assert!(!y.region_contains(&v(&[1, 0])));
        assert!(x_ray_y().region_contains(&v(&[1, 0])));
        assert!(y.is_minimal_in_region(&v(&[1, 1])).unwrap());
        assert!(!y.is_minimal_in_region(&v(&[2, 1])).unwrap());
        assert!(!x_ray_y().is_minimal_in_region(&v(&[1, 1])).unwrap());
        assert!(matches!(y.is_minimal_in_region(&v(&[1, 0])), Err(Error::NotInRegion(_))));
        assert_eq!(y.minimality_witnesses(&v(&[1, 1])).unwrap().len(), 2);
    }

    #[test]
    fn ideal_examples() {
        assert_eq!(faces_to_ideal(&full(&quadrant())).unwrap().generators(), &[v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(faces_to_ideal(&x_ray_y()).unwrap().generators(), &[v(&[1, 0])]);
        let y = full(&a_n(1));
        let ideal = faces_to_ideal(&y).unwrap();
        for a in 0..10 {
            for b in 0..10 {
                let p = v(&[a, b]);
                if a_n(1).contains(&p) {
                    assert_eq!(y.region_contains(&p), ideal.order(&p) >= BigInt::from(1));
                }
            }
        }
        assert_eq!(YFaceSet::from_ideal(&ideal).unwrap(), y);
    }

    #[test]
    fn w_examples() {
        let opts = EnumerationOptions::default();
        for n in 1..=5 {
            let y = y_face_closure(&a_n(n), &[]).unwrap();
            let expected: Vec<V> = (1..=n).map(|i| v(&[1, i])).collect();
            assert_eq!(compute_w(&y, opts).unwrap().points, expected);
        }
        assert_eq!(compute_w(&full(&quadrant()), opts).unwrap().points, vec![v(&[1, 1])]);
        assert_eq!(compute_w(&x_ray_y(), opts).unwrap().points, vec![v(&[1, 0])]);
    }

    #[test]
    fn y_resolutions() {
        let y = full(&quadrant());
        let r = make_y_resolution(&y, &BTreeSet::new()).unwrap();
        assert_eq!(r.added_rays, vec![v(&[1, 1])]);
        assert!(is_y_resolution(&r, &y).unwrap());
        let identity = Subdivision::identity(Fan::from_cone(quadrant()));
        assert!(!is_y_resolution(&identity, &y).unwrap());
        let a1 = full(&a_n(1));
        let r = make_y_resolution(&a1, &BTreeSet::new()).unwrap();
        assert_eq!(r.rays(), vec![v(&[1, 0]), v(&[1, 1]), v(&[1, 2])]);
        let unresolved = Subdivision::identity(Fan::from_cone(a_n(1)));
        assert!(!is_y_resolution(&unresolved, &a1).unwrap());
    }

    #[test]
    fn avoidance_examples() {
        let y = full(&quadrant());
        let r = avoidance_resolution(&y, &v(&[2, 1])).unwrap();
        assert_eq!(r.rays(), vec![v(&[0, 1]), v(&[1, 0]), v(&[1, 1])]);
        assert_eq!(avoidance_resolution(&y, &v(&[1, 1])), Err(Error::MinimalPoint("(1, 1)".into())));
        for w in [[1, 2], [3, 2]] {
            let r = avoidance_resolution(&y, &v(&w)).unwrap();
            assert!(!r.refined.has_ray(&v(&w)));
            assert!(is_y_resolution(&r, &y).unwrap());
        }
        let a1 = full(&a_n(1));
        assert!(matches!(avoidance_resolution(&a1, &v(&[2, 2])), Err(Error::NotPrimitive(_))));
        let r = avoidance_resolution(&a1, &v(&[2, 3])).unwrap();
        assert!(!r.refined.has_ray(&v(&[2, 3])));
    }

    #[test]
    fn certification() {
        let opts = EnumerationOptions::default();
        for (c, w) in [(a_n(1), vec![v(&[1, 1])]), (quadrant(), vec![v(&[1, 1])]), (a_n(2), vec![v(&[1, 1]), v(&[1, 2])])] {
            let report = certify_essential(&full(&c), 3, opts).unwrap();
            assert_eq!(report.w, w);
            assert!(report.bijective, "{:?}", report.failures);
            assert_eq!(report.samples.len(), 3);
        }
    }

    #[test]
    fn valuations() {
        let f = vec![(BigInt::from(1), v(&[2, 1])), (BigInt::from(1), v(&[0, 1]))];
        assert_eq!(monomial_valuation(&v(&[1, 1]), &f).unwrap(), BigInt::from(1));
        assert_eq!(monomial_valuation(&v(&[5, 7]), &[(BigInt::from(1), v(&[0, 0]))]).unwrap(), BigInt::from(0));
        assert_eq!(monomial_valuation(&v(&[2, 3]), &[(BigInt::from(1), v(&[1, 1]))]).unwrap(), BigInt::from(5));
        assert_eq!(monomial_valuation(&v(&[2, 3]), &[(BigInt::from(0), v(&[1, 1]))]), Err(Error::ZeroFunction));
    }

    #[test]
    fn contact_examples() {
        let opts = EnumerationOptions::default();
        let maximal = MonomialIdeal::new(quadrant(), vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(contact_components(&maximal, 2, opts).unwrap().points, vec![v(&[2, 2])]);
        let x = MonomialIdeal::new(quadrant(), vec![v(&[1, 0])]).unwrap();
        assert_eq!(contact_components(&x, 3, opts).unwrap().points, vec![v(&[3, 0])]);
        assert_eq!(contact_components(&x, 0, opts), Err(Error::InvalidOrder));
        assert!(is_minimal_in_contact_set(&maximal, &BigInt::from(2), &v(&[2, 2])).unwrap());
        assert!(!is_minimal_in_contact_set(&maximal, &BigInt::from(2), &v(&[2, 3])).unwrap());
    }

    #[test]
    fn orbit_order() {
        let fan = Fan::from_cone(quadrant());
        let zero = C::new(2, vec![]).unwrap();
        let x = C::from_i64_rays(2, &[&[1, 0]]);
        assert!(orbit_closure_leq(&fan, &zero, &v(&[1, 1]), &zero, &v(&[2, 1])).unwrap().leq);
        assert!(orbit_closure_leq(&fan, &zero, &v(&[1, 1]), &x, &v(&[0, 5])).unwrap().leq);
        let r = orbit_closure_leq(&fan, &x, &v(&[1, 1]), &zero, &v(&[0, 5])).unwrap();
        assert!(!r.leq && r.reason.is_some());
    }
}
