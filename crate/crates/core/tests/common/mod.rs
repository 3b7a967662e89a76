#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use toric_nash::oracle::box_points;
use toric_nash::{
    compute_w, covers, is_y_resolution, make_y_resolution_seeded, resolve_smooth, star_subdivide, validate_fan,
    BigInt, Cone, EnumerationOptions, Fan, IntMatrix, LatticeVector, YFaceSet,
};

pub fn v(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(c)
}

pub fn cone(rays: &[&[i64]]) -> Cone {
    Cone::from_i64_rays(rays[0].len(), rays)
}

/// `A_n` as the cone over `(1,0), (1,n+1)`.
pub fn a_n(n: i64) -> Cone {
    cone(&[&[1, 0], &[1, n + 1]])
}

pub fn quadric() -> Cone {
    cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]])
}

fn full_cone(dim: usize, gens: Vec<Vec<i64>>) -> Option<Cone> {
    let c = Cone::new(dim, gens.iter().map(|g| v(g)).collect()).ok()?;
    (c.is_pointed() && c.dim() == dim).then_some(c)
}

/// Full-dimensional pointed cones in the plane.
pub fn cone2(r: i64) -> impl Strategy<Value = Cone> {
    prop::collection::vec(prop::collection::vec(-r..=r, 2), 2).prop_filter_map("degenerate", |g| full_cone(2, g))
}

/// Full-dimensional pointed cones in space, generated over a positive last coordinate.
pub fn cone3(r: i64, h: i64, max_gens: usize) -> impl Strategy<Value = Cone> {
    prop::collection::vec((-r..=r, -r..=r, 1..=h), 3..=max_gens)
        .prop_filter_map("degenerate", |g| full_cone(3, g.into_iter().map(|(a, b, c)| vec![a, b, c]).collect()))
}

pub fn pointed_cone() -> impl Strategy<Value = Cone> {
    prop_oneof![cone2(5), cone3(3, 3, 5)]
}

/// Small cones suited to W computations.
pub fn small_cone() -> impl Strategy<Value = Cone> {
    prop_oneof![3 => cone2(4), 1 => cone3(2, 2, 4)]
}

/// A toric pair: Sing(σ) plus a random seed of nonzero faces.
pub fn pair() -> impl Strategy<Value = YFaceSet> {
    (small_cone(), prop::collection::vec(any::<prop::sample::Index>(), 0..3)).prop_filter_map("no pair", |(c, picks)| {
        let faces: Vec<_> = c.enumerate_faces().ok()?.into_iter().filter(|f| !f.is_zero_face()).collect();
        let seed: Vec<_> = picks.iter().map(|i| faces[i.index(faces.len())].clone()).collect();
        toric_nash::y_face_closure(&c, &seed).ok()
    })
}

/// Products of elementary integer matrices and sign changes.
pub fn unimodular(dim: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..dim, 0..dim, -2i64..=2, any::<bool>()), 1..6).prop_map(move |ops| {
        let mut m = IntMatrix::identity(dim);
        for (i, j, k, flip) in ops {
            if i != j {
                m.add_row_multiple(i, j, &BigInt::from(k));
            }
            if flip {
                m.negate_row(i);
            }
        }
        m
    })
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| fail(format!("{e:?}")))
}

pub fn dual_involution(c: &Cone) -> Result<(), TestCaseError> {
    let back = c.dual_cone().dual_cone();
    check(&back == c, || format!("dual of dual differs: {:?} vs {:?}", back.rays(), c.rays()))
}

pub fn face_relint_partition(c: &Cone) -> Result<(), TestCaseError> {
    let faces = ok(c.enumerate_faces())?;
    for p in ok(box_points(c, 4))? {
        let hits: Vec<_> = faces.iter().filter(|f| c.relint_contains(f, &p)).collect();
        check(hits.len() == 1, || format!("{p} lies in {} relative interiors", hits.len()))?;
        let smallest = ok(c.smallest_containing_face(&p))?;
        check(hits[0].indices == smallest.indices, || format!("{p}: smallest face disagrees"))?;
    }
    Ok(())
}

pub fn hilbert_basis(c: &Cone) -> Result<(), TestCaseError> {
    let hb = ok(c.hilbert_basis())?;
    for h in &hb {
        check(c.contains(h) && !h.is_zero(), || format!("{h} is not a nonzero cone point"))?;
        let reducible = hb.iter().any(|g| g != h && c.contains(&(h - g)));
        check(!reducible, || format!("{h} is reducible"))?;
    }
    for r in c.rays() {
        check(hb.contains(r), || format!("ray {r} missing from the basis"))?;
    }
    for p in ok(box_points(c, 5))? {
        let mut rest = p.clone();
        while !rest.is_zero() {
            match hb.iter().find(|h| c.contains(&(&rest - h))) {
                Some(h) => rest = &rest - h,
                None => return Err(fail(format!("{p} is not generated: stuck at {rest}"))),
            }
        }
    }
    Ok(())
}

pub fn sigma_stability(y: &YFaceSet) -> Result<(), TestCaseError> {
    let c = y.sigma();
    let hb = ok(c.hilbert_basis())?;
    for p in ok(box_points(c, 4))? {
        if y.region_contains(&p) {
            for s in &hb {
                let q = &p + s;
                check(y.region_contains(&q), || format!("{p} + {s} leaves the region"))?;
            }
        }
    }
    Ok(())
}

pub fn w_antichain_domination(y: &YFaceSet) -> Result<(), TestCaseError> {
    let c = y.sigma();
    let w = ok(compute_w(y, EnumerationOptions::default()))?.points;
    check(!w.is_empty(), || "W is empty".into())?;
    for a in &w {
        check(y.region_contains(a), || format!("{a} is outside the region"))?;
        for b in &w {
            check(a == b || !c.leq_sigma(a, b), || format!("{a} <= {b} inside W"))?;
        }
    }
    for p in ok(box_points(c, 6))? {
        if y.region_contains(&p) {
            check(w.iter().any(|a| c.leq_sigma(a, &p)), || format!("{p} is not dominated by W"))?;
        }
    }
    Ok(())
}

pub fn unimodular_equivariance(y: &YFaceSet, a: &IntMatrix) -> Result<(), TestCaseError> {
    let c = y.sigma();
    let image = c.transform(a);
    let faces = y
        .faces()
        .iter()
        .map(|f| {
            let rays: Vec<_> = f.rays.iter().map(|r| a.apply(r)).collect();
            image.face_from_rays(&rays)
        })
        .collect::<Result<Vec<_>, _>>();
    let y2 = ok(YFaceSet::new(image, ok(faces)?))?;
    let opts = EnumerationOptions::default();
    let mut mapped: Vec<_> = ok(compute_w(y, opts))?.points.iter().map(|p| a.apply(p)).collect();
    mapped.sort();
    let direct = ok(compute_w(&y2, opts))?.points;
    check(mapped == direct, || format!("A.W = {mapped:?} but W(A.y) = {direct:?}"))
}

pub fn subdivision_invariants(c: &Cone, pick: prop::sample::Index) -> Result<(), TestCaseError> {
    let fan = Fan::from_cone(c.clone());
    let mut candidates: Vec<_> = ok(box_points(c, 4))?.into_iter().filter(|p| !p.is_zero() && p.is_primitive()).collect();
    candidates.extend(ok(c.hilbert_basis())?);
    let p = &candidates[pick.index(candidates.len())];
    let star = ok(star_subdivide(&fan, p))?;
    let smooth = ok(resolve_smooth(&fan, &BTreeSet::new()))?;
    for (name, sub) in [("star", &star), ("resolution", &smooth)] {
        check(sub.check().valid, || format!("{name}: {:?}", sub.check().diagnostics))?;
        check(validate_fan(&sub.refined).valid, || format!("{name}: refined fan is invalid"))?;
        check(covers(&sub.refined, c), || format!("{name}: support changed"))?;
        for r in c.rays() {
            check(sub.refined.has_ray(r), || format!("{name}: lost ray {r}"))?;
        }
        for cell in sub.refined.maximal_cones() {
            check(c.contains_cone(cell), || format!("{name}: cell leaves the cone"))?;
        }
    }
    check(star.refined.has_ray(p), || format!("star at {p} lacks the ray"))?;
    check(smooth.refined.is_smooth(), || "resolution is not smooth".into())
}

pub fn y_resolution_outputs(y: &YFaceSet, seed: u64) -> Result<(), TestCaseError> {
    let sub = ok(make_y_resolution_seeded(y, &BTreeSet::new(), seed))?;
    check(ok(is_y_resolution(&sub, y))?, || format!("seed {seed}: output is not a Y-resolution"))?;
    check(sub.refined.is_smooth(), || format!("seed {seed}: output is not smooth"))
}
