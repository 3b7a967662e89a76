//! Affine stable toric varieties as face-fitting complexes of cones.
//!
//! Component cones live in the character lattice `Λ`, so `X_σ = Spec k[σ ∩ Λ]`
//! and a glued face `τ` is the closed stratum `Spec k[τ ∩ Λ]`. Each component
//! is turned into a toric pair on the dual side: the lattice dual to the span
//! of `σ`, the dual cone, and `Y` generated by the dual faces of the glued
//! faces together with the singular faces.

use std::collections::BTreeSet;

use crate::cone::Cone;
use crate::enumerate::EnumerationOptions;
use crate::error::{Error, Result};
use crate::fan::Validation;
use crate::lattice::{IntMatrix, LatticeVector, Scalar, SpanLattice};
use crate::nash::{certify_essential, y_face_closure, NashPairReport, YFaceSet};

/// Identification of face `face_i` of component `i` with face `face_j` of
/// component `j` by the lattice automorphism `map` of `Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing<S> {
    pub i: usize,
    pub j: usize,
    /// Ray indices into the lex-sorted rays of component `i`.
    pub face_i: Vec<usize>,
    pub face_j: Vec<usize>,
    pub map: IntMatrix<S>,
}

impl<S: Scalar> Gluing<S> {
    /// Identity identification of two faces.
    pub fn identity(ambient: usize, i: usize, j: usize, face_i: Vec<usize>, face_j: Vec<usize>) -> Self {
        Self { i, j, face_i, face_j, map: IntMatrix::identity(ambient) }
    }

    /// The same identification read from `j` to `i`.
    pub fn transposed(&self) -> Option<Self> {
        let inverse = crate::lattice::unimodular_inverse(&self.map)?;
        Some(Self {
            i: self.j,
            j: self.i,
            face_i: self.face_j.clone(),
            face_j: self.face_i.clone(),
            map: inverse,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct STVComplex<S> {
    pub ambient: usize,
    pub components: Vec<Cone<S>>,
    pub gluings: Vec<Gluing<S>>,
}

impl<S: Scalar> STVComplex<S> {
    pub fn new(ambient: usize, components: Vec<Cone<S>>, gluings: Vec<Gluing<S>>) -> Self {
        Self { ambient, components, gluings }
    }
}

fn check_gluing<S: Scalar>(c: &STVComplex<S>, k: usize, g: &Gluing<S>, out: &mut Vec<String>) {
    let n = c.components.len();
    if g.i >= n || g.j >= n {
        out.push(format!("gluing {k}: component index out of range"));
        return;
    }
    if g.i == g.j {
        out.push(format!("gluing {k}: a component cannot be glued to itself"));
        return;
    }
    if g.map.rows() != c.ambient || g.map.cols() != c.ambient {
        out.push(format!("gluing {k}: identification matrix must be {0}x{0}", c.ambient));
        return;
    }
    if !g.map.determinant().abs().is_one() {
        out.push(format!("gluing {k}: identification matrix is not unimodular"));
        return;
    }
    let (ci, cj) = (&c.components[g.i], &c.components[g.j]);
    let (fi, fj) = match (ci.face_from_indices(&g.face_i), cj.face_from_indices(&g.face_j)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            out.push(format!("gluing {k}: declared ray indices do not form faces"));
            return;
        }
    };
    if fi.dim(c.ambient) != fj.dim(c.ambient) {
        out.push(format!("gluing {k}: glued faces have different dimensions"));
        return;
    }
    let image: BTreeSet<_> = fi.rays.iter().map(|r| g.map.apply(r)).collect();
    let target: BTreeSet<_> = fj.rays.iter().cloned().collect();
    if image != target {
        out.push(format!("gluing {k}: the map does not send the rays of one face onto the other"));
    }
    if fi.indices.len() == ci.rays().len() || fj.indices.len() == cj.rays().len() {
        out.push(format!("gluing {k}: a whole component cannot be a glued face"));
    }
}

/// Pointed components (trivial minimal face), well-formed unimodular gluings
/// between faces of equal dimension, and a connected complex.
pub fn validate_complex<S: Scalar>(c: &STVComplex<S>) -> Validation {
    let mut out = Vec::new();
    if c.components.is_empty() {
        out.push("complex has no components".to_string());
    }
    for (i, s) in c.components.iter().enumerate() {
        if s.ambient_dim() != c.ambient {
            out.push(format!("component {i}: ambient dimension {} differs from {}", s.ambient_dim(), c.ambient));
        } else if !s.is_pointed() {
            out.push(format!("component {i}: minimal face is not {{0}}; quotient by it first"));
        }
    }
    if !out.is_empty() {
        return Validation { valid: false, diagnostics: out };
    }
    for (k, g) in c.gluings.iter().enumerate() {
        check_gluing(c, k, g, &mut out);
    }
    let n = c.components.len();
    if n > 1 && out.is_empty() {
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for g in &c.gluings {
                if reached[g.i] != reached[g.j] {
                    reached[g.i] = true;
                    reached[g.j] = true;
                    changed = true;
                }
            }
        }
        if let Some(i) = reached.iter().position(|r| !r) {
            out.push(format!("component {i} is not connected to component 0"));
        }
    }
    Validation { valid: out.is_empty(), diagnostics: out }
}

/// All components have the same dimension.
pub fn is_equidimensional<S: Scalar>(c: &STVComplex<S>) -> bool {
    c.components.iter().map(|s| s.dim()).collect::<BTreeSet<_>>().len() <= 1
}

/// A component turned into a toric pair on the dual side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPair<S> {
    pub index: usize,
    /// The dual cone, in coordinates dual to a basis of the span of the component.
    pub cone: Cone<S>,
    /// `None` when the component is smooth and glued to nothing.
    pub y: Option<YFaceSet<S>>,
}

fn require_valid<S: Scalar>(c: &STVComplex<S>) -> Result<()> {
    let v = validate_complex(c);
    if v.valid {
        Ok(())
    } else {
        Err(Error::InvalidComplex(v.diagnostics.join("; ")))
    }
}

/// One toric pair per component, with `Y` the singular faces together with
/// the strata shared with other components.
pub fn component_pairs<S: Scalar>(c: &STVComplex<S>) -> Result<Vec<ComponentPair<S>>> {
    require_valid(c)?;
    let mut out = Vec::new();
    for (index, sigma) in c.components.iter().enumerate() {
        let wrap = |e: Error| Error::Component { index, source: Box::new(e) };
        let span = SpanLattice::new(sigma.rays(), c.ambient);
        let local = |v: &LatticeVector<S>| span.coordinates(v).expect("cone point lies in its span");
        let local_cone = Cone::new(span.rank(), sigma.rays().iter().map(local).collect()).map_err(wrap)?;
        let dual = local_cone.dual_cone();

        let mut glued: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in &c.gluings {
            if g.i == index {
                glued.insert(g.face_i.clone());
            }
            if g.j == index {
                glued.insert(g.face_j.clone());
            }
        }
        let mut seed = Vec::new();
        for face in glued {
            let rays: Vec<_> = face.iter().map(|&k| local(&sigma.rays()[k])).collect();
            let dual_rays: Vec<_> = dual
                .rays()
                .iter()
                .filter(|r| rays.iter().all(|t| r.dot(t).is_zero()))
                .cloned()
                .collect();
            seed.push(dual.face_from_rays(&dual_rays).map_err(wrap)?);
        }
        let y = match y_face_closure(&dual, &seed) {
            Ok(y) => Some(y),
            Err(Error::EmptyY) => None,
            Err(e) => return Err(wrap(e)),
        };
        out.push(ComponentPair { index, cone: dual, y });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport<S> {
    pub index: usize,
    pub dim: usize,
    /// `None` for a Nash-trivial component.
    pub report: Option<NashPairReport<S>>,
}

impl<S: Scalar> ComponentReport<S> {
    pub fn good_components(&self) -> usize {
        self.report.as_ref().map_or(0, |r| r.w.len())
    }

    /// Points of `W` that are rays of every sample resolution.
    pub fn essential_divisors(&self) -> usize {
        self.report.as_ref().map_or(0, |r| {
            r.certificates
                .iter()
                .filter(|c| c.sample_resolutions.len() == r.samples.len())
                .count()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct STVNashReport<S> {
    pub components: Vec<ComponentReport<S>>,
    pub good_components: usize,
    pub essential_divisors: usize,
    pub equidimensional: bool,
    pub bijective: bool,
}

/// Certifies every component pair and sums the counts.
pub fn stv_nash_report<S: Scalar>(
    c: &STVComplex<S>,
    samples: usize,
    options: EnumerationOptions,
) -> Result<STVNashReport<S>> {
    let mut components = Vec::new();
    for pair in component_pairs(c)? {
        let report = match &pair.y {
            Some(y) => Some(
                certify_essential(y, samples, options)
                    .map_err(|e| Error::Component { index: pair.index, source: Box::new(e) })?,
            ),
            None => None,
        };
        components.push(ComponentReport { index: pair.index, dim: pair.cone.dim(), report });
    }
    let good_components = components.iter().map(|c| c.good_components()).sum();
    let essential_divisors = components.iter().map(|c| c.essential_divisors()).sum();
    let bijective = good_components == essential_divisors
        && components
            .iter()
            .all(|c| c.report.as_ref().is_none_or(|r| r.bijective));
    Ok(STVNashReport {
        components,
        good_components,
        essential_divisors,
        equidimensional: is_equidimensional(c),
        bijective,
    })
}
