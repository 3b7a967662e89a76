//! Rational polyhedral cones in `Z^d`: duality, faces, smoothness,
//! multiplicity, Hilbert bases and the order `v <=_σ w`.

use std::collections::{BTreeSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lattice::{
    integer_kernel, rank, smith_normal_form, sublattice_index, unimodular_inverse, IntMatrix,
    LatticeVector, Scalar, SpanLattice,
};

/// Inequality description `{x : E x = 0, F x >= 0}` with every facet normal
/// chosen inside the linear span of the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep<S> {
    pub equations: Vec<LatticeVector<S>>,
    pub facets: Vec<LatticeVector<S>>,
}

fn primitive_directions<S: Scalar>(vectors: &[LatticeVector<S>]) -> Vec<LatticeVector<S>> {
    let set: BTreeSet<_> = vectors
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.primitive_part().expect("nonzero"))
        .collect();
    set.into_iter().collect()
}

/// Facets of `cone(gens)` by exhaustive search over `(k-1)`-subsets of the
/// generators, where `k` is the dimension of their span.
fn compute_hrep<S: Scalar>(gens: &[LatticeVector<S>], ambient: usize) -> HRep<S> {
    let gens = primitive_directions(gens);
    let equations = integer_kernel(&IntMatrix::from_vectors(&gens, ambient));
    let k = ambient - equations.len();
    if k == 0 {
        return HRep { equations, facets: Vec::new() };
    }
    let basis = integer_kernel(&IntMatrix::from_vectors(&equations, ambient));
    debug_assert_eq!(basis.len(), k);

    // pairings of every generator against the span basis
    let coords: Vec<Vec<S>> = gens
        .iter()
        .map(|g| basis.iter().map(|b| g.dot(b)).collect())
        .collect();

    let mut facets = BTreeSet::new();
    for subset in (0..gens.len()).combinations(k - 1) {
        let m = IntMatrix::from_rows(subset.iter().map(|&i| coords[i].clone()).collect(), k);
        let ker = integer_kernel(&m);
        if ker.len() != 1 {
            continue;
        }
        let c = &ker[0];
        let normal = basis
            .iter()
            .zip(c.coords())
            .fold(LatticeVector::zero(ambient), |acc, (b, x)| &acc + &b.scale(x));
        let normal = normal.primitive_part().expect("kernel vector is nonzero");
        let mut pos = false;
        let mut neg = false;
        for g in &gens {
            let p = normal.dot(g);
            pos |= p.is_positive();
            neg |= p.is_negative();
            if pos && neg {
                break;
            }
        }
        match (pos, neg) {
            (true, false) => {
                facets.insert(normal);
            }
            (false, true) => {
                facets.insert(-&normal);
            }
            _ => {}
        }
    }
    HRep { equations, facets: facets.into_iter().collect() }
}

/// A face of a cone, recorded by the indices of the parent rays it contains
/// and the parent facet normals vanishing on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face<S> {
    pub indices: Vec<usize>,
    pub rays: Vec<LatticeVector<S>>,
    pub zero_normals: Vec<LatticeVector<S>>,
}

impl<S: Scalar> Face<S> {
    pub fn is_zero_face(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn dim(&self, ambient: usize) -> usize {
        if self.rays.is_empty() {
            0
        } else {
            rank(&IntMatrix::from_vectors(&self.rays, ambient))
        }
    }

    /// The face as a cone in its own right.
    pub fn cone(&self, ambient: usize) -> Cone<S> {
        Cone::from_extreme_rays(ambient, self.rays.clone())
    }

    /// Sum of the ray generators, a lattice point of the relative interior.
    pub fn interior_point(&self, ambient: usize) -> LatticeVector<S> {
        LatticeVector::sum(ambient, &self.rays)
    }

    /// `self` is a face of `other` (both faces of the same parent).
    pub fn is_subface_of(&self, other: &Face<S>) -> bool {
        self.indices.iter().all(|i| other.indices.binary_search(i).is_ok())
    }
}

/// Strictly convex (or explicitly non-pointed) rational polyhedral cone.
///
/// Rays are primitive, lex-sorted and extreme. For a non-pointed cone the
/// lineality space is kept as a Hermite basis and rays are the primitive
/// representatives orthogonal to it.
#[derive(Clone, Debug)]
pub struct Cone<S> {
    ambient: usize,
    rays: Vec<LatticeVector<S>>,
    lineality: Vec<LatticeVector<S>>,
    hrep: OnceLock<HRep<S>>,
    hilbert: OnceLock<Vec<LatticeVector<S>>>,
    functional: OnceLock<LatticeVector<S>>,
}

impl<S: PartialEq> PartialEq for Cone<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rays == other.rays && self.lineality == other.lineality
    }
}

impl<S: Eq> Eq for Cone<S> {}

impl<S: Hash> Hash for Cone<S> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.rays.hash(state);
        self.lineality.hash(state);
    }
}

impl<S: Ord> PartialOrd for Cone<S> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Ord> Ord for Cone<S> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, &self.rays, &self.lineality).cmp(&(other.ambient, &other.rays, &other.lineality))
    }
}

fn check_dims<S: Scalar>(ambient: usize, vectors: &[LatticeVector<S>]) -> Result<()> {
    match vectors.iter().find(|v| v.dim() != ambient) {
        Some(v) => Err(Error::DimensionMismatch { expected: ambient, found: v.dim() }),
        None => Ok(()),
    }
}

impl<S: Scalar> Cone<S> {
    /// The cone generated by arbitrary lattice vectors.
    pub fn new(ambient: usize, generators: Vec<LatticeVector<S>>) -> Result<Self> {
        check_dims(ambient, &generators)?;
        let hrep = compute_hrep(&generators, ambient);
        let mut cone = Self::from_hrep_parts(ambient, &hrep.equations, &hrep.facets);
        cone.hrep = OnceLock::from(hrep);
        Ok(cone)
    }

    pub fn from_i64_rays(ambient: usize, rays: &[&[i64]]) -> Self {
        Self::new(ambient, rays.iter().map(|r| LatticeVector::from_i64s(r)).collect())
            .expect("consistent dimensions")
    }

    /// The cone `{x : E x = 0, F x >= 0}`.
    pub fn from_inequalities(
        ambient: usize,
        equations: &[LatticeVector<S>],
        inequalities: &[LatticeVector<S>],
    ) -> Result<Self> {
        check_dims(ambient, equations)?;
        check_dims(ambient, inequalities)?;
        Ok(Self::from_hrep_parts(ambient, equations, inequalities))
    }

    fn from_hrep_parts(
        ambient: usize,
        equations: &[LatticeVector<S>],
        inequalities: &[LatticeVector<S>],
    ) -> Self {
        let mut dual_gens: Vec<_> = inequalities.to_vec();
        dual_gens.extend(equations.iter().cloned());
        dual_gens.extend(equations.iter().map(|e| -e));
        let rays = compute_hrep(&dual_gens, ambient).facets;
        let mut all = equations.to_vec();
        all.extend(inequalities.iter().cloned());
        let lineality = integer_kernel(&IntMatrix::from_vectors(&all, ambient));
        Self::raw(ambient, rays, lineality)
    }

    /// Trusted constructor for rays already known to be extreme.
    pub(crate) fn from_extreme_rays(ambient: usize, rays: Vec<LatticeVector<S>>) -> Self {
        let mut rays = primitive_directions(&rays);
        rays.sort();
        Self::raw(ambient, rays, Vec::new())
    }

    fn raw(ambient: usize, mut rays: Vec<LatticeVector<S>>, lineality: Vec<LatticeVector<S>>) -> Self {
        rays.sort();
        Self {
            ambient,
            rays,
            lineality,
            hrep: OnceLock::new(),
            hilbert: OnceLock::new(),
            functional: OnceLock::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[LatticeVector<S>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticeVector<S>] {
        &self.lineality
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    fn require_pointed(&self) -> Result<()> {
        if self.is_pointed() {
            Ok(())
        } else {
            Err(Error::NonPointed)
        }
    }

    pub fn hrep(&self) -> &HRep<S> {
        self.hrep.get_or_init(|| {
            let mut gens = self.rays.clone();
            gens.extend(self.lineality.iter().cloned());
            gens.extend(self.lineality.iter().map(|l| -l));
            compute_hrep(&gens, self.ambient)
        })
    }

    pub fn equations(&self) -> &[LatticeVector<S>] {
        &self.hrep().equations
    }

    pub fn facet_normals(&self) -> &[LatticeVector<S>] {
        &self.hrep().facets
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.ambient - self.equations().len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations().is_empty()
    }

    pub fn contains(&self, v: &LatticeVector<S>) -> bool {
        v.dim() == self.ambient
            && self.equations().iter().all(|e| e.dot(v).is_zero())
            && self.facet_normals().iter().all(|u| !u.dot(v).is_negative())
    }

    /// `v` lies in the relative interior of the whole cone.
    pub fn contains_in_relint(&self, v: &LatticeVector<S>) -> bool {
        v.dim() == self.ambient
            && self.equations().iter().all(|e| e.dot(v).is_zero())
            && self.facet_normals().iter().all(|u| u.dot(v).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone<S>) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other.lineality.iter().all(|l| self.contains(l) && self.contains(&-l))
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.dim()
    }

    /// `{u : <u, v> >= 0 for all v in the cone}` in the dual lattice.
    pub fn dual_cone(&self) -> Cone<S> {
        let hrep = self.hrep();
        let mut gens = hrep.facets.clone();
        gens.extend(hrep.equations.iter().cloned());
        gens.extend(hrep.equations.iter().map(|e| -e));
        Cone::new(self.ambient, gens).expect("dual generators share the ambient dimension")
    }

    pub fn intersection(&self, other: &Cone<S>) -> Cone<S> {
        let mut eqs = self.equations().to_vec();
        eqs.extend(other.equations().iter().cloned());
        let mut ineqs = self.facet_normals().to_vec();
        ineqs.extend(other.facet_normals().iter().cloned());
        Self::from_hrep_parts(self.ambient, &eqs, &ineqs)
    }

    fn face_with_indices(&self, indices: Vec<usize>) -> Face<S> {
        let rays: Vec<_> = indices.iter().map(|&i| self.rays[i].clone()).collect();
        let zero_normals = self
            .facet_normals()
            .iter()
            .filter(|u| rays.iter().all(|r| u.dot(r).is_zero()))
            .cloned()
            .collect();
        Face { indices, rays, zero_normals }
    }

    /// All faces, from `{0}` up to the cone itself, ordered by ray count then indices.
    pub fn enumerate_faces(&self) -> Result<Vec<Face<S>>> {
        self.require_pointed()?;
        let zero_sets: Vec<BTreeSet<usize>> = self
            .facet_normals()
            .iter()
            .map(|u| {
                (0..self.rays.len())
                    .filter(|&i| u.dot(&self.rays[i]).is_zero())
                    .collect()
            })
            .collect();
        let top: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut seen = BTreeSet::from([top.clone()]);
        let mut queue = VecDeque::from([top]);
        while let Some(set) = queue.pop_front() {
            for zs in &zero_sets {
                let next: BTreeSet<usize> = set.intersection(zs).copied().collect();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut faces: Vec<Vec<usize>> = seen.into_iter().map(|s| s.into_iter().collect()).collect();
        faces.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(faces.into_iter().map(|ix| self.face_with_indices(ix)).collect())
    }

    /// Faces of codimension one, one per facet normal.
    pub fn facet_faces(&self) -> Vec<Face<S>> {
        self.facet_normals()
            .iter()
            .map(|u| {
                let ix = (0..self.rays.len())
                    .filter(|&i| u.dot(&self.rays[i]).is_zero())
                    .collect();
                self.face_with_indices(ix)
            })
            .collect()
    }

    /// The unique face containing `v` in its relative interior.
    pub fn smallest_containing_face(&self, v: &LatticeVector<S>) -> Result<Face<S>> {
        self.require_pointed()?;
        if !self.contains(v) {
            return Err(Error::NotInCone(v.to_string()));
        }
        let zero: Vec<_> = self
            .facet_normals()
            .iter()
            .filter(|u| u.dot(v).is_zero())
            .cloned()
            .collect();
        let indices: Vec<usize> = (0..self.rays.len())
            .filter(|&i| zero.iter().all(|u| u.dot(&self.rays[i]).is_zero()))
            .collect();
        let rays = self.rays_at(&indices);
        Ok(Face { indices, rays, zero_normals: zero })
    }

    fn rays_at(&self, indices: &[usize]) -> Vec<LatticeVector<S>> {
        indices.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// `v` lies in the relative interior of `face`.
    pub fn relint_contains(&self, face: &Face<S>, v: &LatticeVector<S>) -> bool {
        match self.smallest_containing_face(v) {
            Ok(f) => f.indices == face.indices,
            Err(_) => false,
        }
    }

    /// The face of `self` whose rays are exactly `rays`.
    pub fn face_from_rays(&self, rays: &[LatticeVector<S>]) -> Result<Face<S>> {
        let invalid = || Error::InvalidFace(rays.iter().map(|r| r.to_string()).collect());
        let mut indices = Vec::with_capacity(rays.len());
        for r in rays {
            let p = r.primitive_part().map_err(|_| invalid())?;
            indices.push(self.rays.binary_search(&p).map_err(|_| invalid())?);
        }
        indices.sort_unstable();
        indices.dedup();
        let point = LatticeVector::sum(self.ambient, &self.rays_at(&indices));
        let face = self.smallest_containing_face(&point)?;
        if face.indices == indices {
            Ok(face)
        } else {
            Err(invalid())
        }
    }

    pub fn face_from_indices(&self, indices: &[usize]) -> Result<Face<S>> {
        if let Some(&i) = indices.iter().find(|&&i| i >= self.rays.len()) {
            return Err(Error::InvalidFace(vec![format!("ray index {i}")]));
        }
        self.face_from_rays(&self.rays_at(indices))
    }

    /// The face of `self` equal to `other`, if `other` is a face.
    pub fn face_equal_to(&self, other: &Cone<S>) -> Option<Face<S>> {
        if !other.is_pointed() || !self.contains_cone(other) {
            return None;
        }
        self.face_from_rays(&other.rays).ok()
    }

    pub fn full_face(&self) -> Face<S> {
        self.face_with_indices((0..self.rays.len()).collect())
    }

    /// Rays extend to a basis of the lattice.
    pub fn is_smooth(&self) -> Result<bool> {
        self.require_pointed()?;
        Ok(self.is_simplicial() && self.multiplicity()?.is_one())
    }

    /// Index of the sublattice generated by the rays of a simplicial cone.
    pub fn multiplicity(&self) -> Result<S> {
        if !self.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
        sublattice_index(&self.rays, self.ambient)
    }

    pub fn span_lattice(&self) -> SpanLattice<S> {
        let mut gens = self.rays.clone();
        gens.extend(self.lineality.iter().cloned());
        SpanLattice::new(&gens, self.ambient)
    }

    /// Pulling triangulation using only the existing rays.
    pub fn triangulate(&self) -> Result<Vec<Vec<LatticeVector<S>>>> {
        self.require_pointed()?;
        if self.is_simplicial() {
            return Ok(vec![self.rays.clone()]);
        }
        let apex = self.rays[0].clone();
        let mut out = Vec::new();
        for facet in self.facet_faces() {
            if facet.indices.contains(&0) {
                continue;
            }
            for mut simplex in facet.cone(self.ambient).triangulate()? {
                simplex.push(apex.clone());
                simplex.sort();
                out.push(simplex);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Minimal generating set of the monoid of lattice points.
    pub fn hilbert_basis(&self) -> Result<Vec<LatticeVector<S>>> {
        self.require_pointed()?;
        if let Some(h) = self.hilbert.get() {
            return Ok(h.clone());
        }
        let basis = if self.rays.is_empty() {
            Vec::new()
        } else {
            let span = self.span_lattice();
            let mut candidates: BTreeSet<LatticeVector<S>> = self.rays.iter().cloned().collect();
            for simplex in self.triangulate()? {
                for p in fundamental_parallelepiped(&simplex, &span) {
                    if !p.point.is_zero() {
                        candidates.insert(p.point);
                    }
                }
            }
            let cands: Vec<_> = candidates.into_iter().collect();
            cands
                .iter()
                .filter(|x| {
                    !cands
                        .iter()
                        .any(|y| y != *x && self.contains(&(*x - y)))
                })
                .cloned()
                .collect()
        };
        Ok(self.hilbert.get_or_init(|| basis).clone())
    }

    /// `w - v` lies in the cone.
    pub fn leq_sigma(&self, v: &LatticeVector<S>, w: &LatticeVector<S>) -> bool {
        self.contains(&(w - v))
    }

    /// Primitive grading `ℓ` with `<ℓ, r> >= 1` for every ray: the primitive part
    /// of the sum of the dual cone's rays. Zero for the zero cone.
    pub fn positive_functional(&self) -> Result<LatticeVector<S>> {
        self.require_pointed()?;
        if let Some(l) = self.functional.get() {
            return Ok(l.clone());
        }
        let dual = self.dual_cone();
        let sum = LatticeVector::sum(self.ambient, dual.rays());
        let ell = if sum.is_zero() {
            if !self.rays.is_empty() {
                return Err(Error::Internal("dual rays sum to zero on a nonzero pointed cone".into()));
            }
            sum
        } else {
            sum.primitive_part()?
        };
        if let Some(r) = self.rays.iter().find(|r| ell.dot(r) < S::one()) {
            return Err(Error::Internal(format!("grading {ell} is not positive on ray {r}")));
        }
        Ok(self.functional.get_or_init(|| ell).clone())
    }

    /// Level of a point under the positive functional.
    pub fn level(&self, v: &LatticeVector<S>) -> Result<usize> {
        let ell = self.positive_functional()?;
        ell.dot(v)
            .to_usize()
            .ok_or_else(|| Error::NotInCone(v.to_string()))
    }

    /// Image of the cone under `x -> A x`, for an invertible integer matrix `A`.
    pub fn transform(&self, a: &IntMatrix<S>) -> Cone<S> {
        let gens: Vec<_> = self
            .rays
            .iter()
            .chain(&self.lineality)
            .map(|r| a.apply(r))
            .chain(self.lineality.iter().map(|l| -&a.apply(l)))
            .collect();
        Cone::new(self.ambient, gens).expect("square transform keeps the dimension")
    }
}

/// A lattice point `Σ (numerators_i / denominator) r_i` of a half-open
/// fundamental parallelepiped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelepipedPoint<S> {
    pub point: LatticeVector<S>,
    pub numerators: Vec<S>,
    pub denominator: S,
}

/// Lattice points of `{Σ λ_i r_i : 0 <= λ_i < 1}` for linearly independent
/// `rays`, enumerated through the Smith form of the ray coordinate matrix.
/// Includes the origin.
pub fn fundamental_parallelepiped<S: Scalar>(
    rays: &[LatticeVector<S>],
    span: &SpanLattice<S>,
) -> Vec<ParallelepipedPoint<S>> {
    let k = rays.len();
    let ambient = span.ambient();
    let origin = ParallelepipedPoint {
        point: LatticeVector::zero(ambient),
        numerators: vec![S::zero(); k],
        denominator: S::one(),
    };
    if k == 0 {
        return vec![origin];
    }
    let coords: Vec<LatticeVector<S>> = rays
        .iter()
        .map(|r| span.coordinates(r).expect("ray lies in the span lattice"))
        .collect();
    let t = IntMatrix::from_vectors(&coords, k);
    let det = t.determinant();
    assert!(!det.is_zero(), "parallelepiped rays must be independent");
    if det.abs().is_one() {
        return vec![origin];
    }
    let adj = t.adjugate();
    let (d, _, v) = smith_normal_form(&t);
    let v_inv = unimodular_inverse(&v).expect("Smith transform is unimodular");
    let moduli: Vec<S> = (0..k).map(|i| d.get(i, i).clone()).collect();
    let denom = det.abs();

    let mut out = Vec::new();
    let mut digits = vec![S::zero(); k];
    loop {
        let z = v_inv.left_apply(&LatticeVector::new(digits.clone()));
        let mut a = adj.left_apply(&z);
        if det.is_negative() {
            a = -&a;
        }
        let numerators: Vec<S> = a.coords().iter().map(|x| x.mod_floor(&denom)).collect();
        let scaled = rays
            .iter()
            .zip(&numerators)
            .fold(LatticeVector::zero(ambient), |acc, (r, c)| &acc + &r.scale(c));
        out.push(ParallelepipedPoint {
            point: scaled.div_exact(&denom),
            numerators,
            denominator: denom.clone(),
        });
        // mixed-radix increment
        let mut i = 0;
        loop {
            if i == k {
                out.sort_by(|a, b| a.point.cmp(&b.point));
                return out;
            }
            digits[i] = digits[i].clone() + S::one();
            if digits[i] < moduli[i] {
                break;
            }
            digits[i] = S::zero();
            i += 1;
        }
    }
}
