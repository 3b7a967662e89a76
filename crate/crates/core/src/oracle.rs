//! Brute-force box oracles: every lattice point of `σ` up to a level cap is
//! found by scanning a coordinate box, and minimality is decided by pairwise
//! comparison. Independent of the Hilbert-basis machinery.

use crate::cone::Cone;
use crate::error::Result;
use crate::lattice::{LatticeVector, Scalar};
use crate::nash::{MonomialIdeal, YFaceSet};

/// Lattice points `v` of the cone with `ℓ(v) <= cap`, lex-sorted.
///
/// Any such point is a combination `Σ μ_j r_j` of rays with `Σ μ_j <= cap`,
/// so its coordinates are bounded by `cap` times the largest ray coordinate.
pub fn box_points<S: Scalar>(cone: &Cone<S>, cap: u64) -> Result<Vec<LatticeVector<S>>> {
    let ell = cone.positive_functional()?;
    let d = cone.ambient_dim();
    let largest = cone
        .rays()
        .iter()
        .flat_map(|r| r.coords().iter().map(|c| c.abs()))
        .max()
        .unwrap_or_else(S::zero);
    let cap_s = S::from_u64(cap).expect("cap fits the scalar");
    let bound = largest * cap_s.clone();
    let mut out = Vec::new();
    let mut coords = vec![-bound.clone(); d];
    if d == 0 {
        return Ok(vec![LatticeVector::zero(0)]);
    }
    loop {
        let v = LatticeVector::new(coords.clone());
        if cone.contains(&v) && ell.dot(&v) <= cap_s {
            out.push(v);
        }
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if coords[i] < bound {
                coords[i] = coords[i].clone() + S::one();
                break;
            }
            coords[i] = -bound.clone();
        }
    }
}

fn minimal_among<S: Scalar>(cone: &Cone<S>, set: &[LatticeVector<S>]) -> Vec<LatticeVector<S>> {
    set.iter()
        .filter(|v| !set.iter().any(|u| u != *v && cone.leq_sigma(u, v)))
        .cloned()
        .collect()
}

/// Minimal region points with `ℓ <= cap`.
pub fn oracle_w<S: Scalar>(y: &YFaceSet<S>, cap: u64) -> Result<Vec<LatticeVector<S>>> {
    let region: Vec<_> = box_points(y.sigma(), cap)?
        .into_iter()
        .filter(|v| y.region_contains(v))
        .collect();
    Ok(minimal_among(y.sigma(), &region))
}

/// Minimal points of `V(I, n)` with `ℓ <= cap`.
pub fn oracle_contact<S: Scalar>(ideal: &MonomialIdeal<S>, n: u64, cap: u64) -> Result<Vec<LatticeVector<S>>> {
    let n = S::from_u64(n).expect("order fits the scalar");
    let set: Vec<_> = box_points(ideal.sigma(), cap)?
        .into_iter()
        .filter(|v| ideal.order(v) == n)
        .collect();
    Ok(minimal_among(ideal.sigma(), &set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn quadrant_box() {
        let q = Cone::<BigInt>::from_i64_rays(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(box_points(&q, 3).unwrap().len(), 10);
        let y = YFaceSet::new(q.clone(), vec![q.full_face()]).unwrap();
        assert_eq!(oracle_w(&y, 6).unwrap(), vec![LatticeVector::from_i64s(&[1, 1])]);
    }
}
