//! Level-by-level enumeration of the lattice points of a pointed cone and
//! the search for minimal elements of cone-stable lattice sets.

use std::collections::BTreeSet;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, Scalar};

/// Enumerates `σ ∩ N` by the level `<ℓ, v>` of the positive functional.
///
/// Level `k` is the union of `level(k - ℓ(h)) + h` over the Hilbert basis,
/// which is complete because every lattice point is a sum of basis elements.
pub struct LevelEnumerator<'a, S> {
    cone: &'a Cone<S>,
    generators: Vec<(LatticeVector<S>, usize)>,
    levels: Vec<Vec<LatticeVector<S>>>,
}

impl<'a, S: Scalar> LevelEnumerator<'a, S> {
    pub fn new(cone: &'a Cone<S>) -> Result<Self> {
        let generators = cone
            .hilbert_basis()?
            .into_iter()
            .map(|h| {
                let l = cone.level(&h)?;
                Ok((h, l))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            cone,
            generators,
            levels: vec![vec![LatticeVector::zero(cone.ambient_dim())]],
        })
    }

    pub fn cone(&self) -> &Cone<S> {
        self.cone
    }

    /// Sum of the generator levels, the default termination buffer.
    pub fn generator_level_sum(&self) -> usize {
        self.generators.iter().map(|(_, l)| l).sum()
    }

    /// Lattice points of level exactly `k`, lex-sorted.
    pub fn level(&mut self, k: usize) -> &[LatticeVector<S>] {
        while self.levels.len() <= k {
            let next = self.levels.len();
            let mut set = BTreeSet::new();
            for (h, l) in &self.generators {
                if *l > next {
                    continue;
                }
                for p in &self.levels[next - l] {
                    set.insert(p + h);
                }
            }
            self.levels.push(set.into_iter().collect());
        }
        &self.levels[k]
    }
}

/// Levels at which a minimal-element search stops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Extra levels scanned past the last new minimal element. `None` uses
    /// the sum of the Hilbert basis levels.
    pub buffer: Option<u64>,
    /// Hard cap on the scanned level.
    pub level_cap: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self { buffer: None, level_cap: 1024 }
    }
}

/// Outcome of a minimal-element search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome<S> {
    pub points: Vec<LatticeVector<S>>,
    /// Highest level scanned.
    pub levels_scanned: u64,
    /// Level past which no minimal element can exist, `None` when the set is empty.
    pub completeness_bound: Option<u64>,
}

/// Upper bound on `ℓ(v)` for every `≤_σ`-minimal lattice point `v` of
/// `P = {x ∈ σ : <a_i, x> >= b_i}` with every `a_i` in the dual cone.
///
/// `P = conv(vertices) + σ`; a minimal point `q + Σ μ_j r_j` over a simplicial
/// subcone must have every `μ_j < 1`, so `ℓ(v) < max ℓ(vertex) + Σ ℓ(r)`.
/// Returns `None` when `P` is empty.
pub fn minimal_level_bound<S: Scalar>(
    cone: &Cone<S>,
    constraints: &[(LatticeVector<S>, S)],
) -> Result<Option<u64>> {
    let d = cone.ambient_dim();
    let ell = cone.positive_functional()?;
    let lift = |v: &LatticeVector<S>, t: S| {
        let mut c = v.coords().to_vec();
        c.push(t);
        LatticeVector::new(c)
    };
    let equations: Vec<_> = cone.equations().iter().map(|e| lift(e, S::zero())).collect();
    let mut inequalities: Vec<_> = cone.facet_normals().iter().map(|f| lift(f, S::zero())).collect();
    for (a, b) in constraints {
        inequalities.push(lift(a, -b.clone()));
    }
    inequalities.push(LatticeVector::unit(d + 1, d));
    let homogenized = Cone::from_inequalities(d + 1, &equations, &inequalities)?;

    // max of ℓ(x)/t over rays (x, t) with t > 0
    let mut best: Option<(S, S)> = None;
    for r in homogenized.rays() {
        let t = r[d].clone();
        if !t.is_positive() {
            continue;
        }
        let x = LatticeVector::new(r.coords()[..d].to_vec());
        let num = ell.dot(&x);
        let better = match &best {
            None => true,
            Some((bn, bt)) => num.clone() * bt.clone() > bn.clone() * t.clone(),
        };
        if better {
            best = Some((num, t));
        }
    }
    let Some((num, t)) = best else { return Ok(None) };
    let vertex_level = num.div_floor(&t);
    let ray_levels = cone
        .rays()
        .iter()
        .fold(S::zero(), |acc, r| acc + ell.dot(r));
    let bound = (vertex_level + ray_levels).max(S::zero());
    bound
        .to_u64()
        .map(Some)
        .ok_or_else(|| Error::Internal("level bound exceeds u64".into()))
}

/// Minimal elements of a σ-stable lattice set, scanning levels until both the
/// completeness bound and the buffer rule are satisfied.
pub(crate) fn search_minimal<S, M, N>(
    enumerator: &mut LevelEnumerator<'_, S>,
    bound: Option<u64>,
    options: EnumerationOptions,
    member: M,
    is_minimal: N,
) -> Result<SearchOutcome<S>>
where
    S: Scalar,
    M: Fn(&LatticeVector<S>) -> bool,
    N: Fn(&LatticeVector<S>) -> bool,
{
    let buffer = options
        .buffer
        .unwrap_or(enumerator.generator_level_sum() as u64);
    let Some(bound) = bound else {
        return Ok(SearchOutcome { points: Vec::new(), levels_scanned: 0, completeness_bound: None });
    };
    let mut found = Vec::new();
    let mut last_new: u64 = 0;
    let mut level: u64 = 0;
    loop {
        if level > options.level_cap {
            return Err(Error::BudgetExceeded {
                cap: options.level_cap,
                needed: bound.max(last_new + buffer),
            });
        }
        let points = enumerator.level(level as usize).to_vec();
        for p in points {
            if member(&p) && is_minimal(&p) {
                found.push(p);
                last_new = level;
            }
        }
        if level >= bound && level >= last_new + buffer {
            break;
        }
        level += 1;
    }
    found.sort();
    Ok(SearchOutcome { points: found, levels_scanned: level, completeness_bound: Some(bound) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type C = Cone<BigInt>;
    type V = LatticeVector<BigInt>;

    #[test]
    fn level_counts_in_quadrant() {
        let q = C::from_i64_rays(2, &[&[1, 0], &[0, 1]]);
        let mut e = LevelEnumerator::new(&q).unwrap();
        for k in 0..6 {
            assert_eq!(e.level(k).len(), k + 1);
        }
    }

    #[test]
    fn levels_skip_in_a_ray() {
        let ray = C::new(2, vec![V::from_i64s(&[1, 2])]).unwrap();
        let ell = ray.positive_functional().unwrap();
        assert_eq!(ell.dot(&V::from_i64s(&[1, 2])), BigInt::from(5));
        let mut e = LevelEnumerator::new(&ray).unwrap();
        assert!(e.level(3).is_empty());
        assert_eq!(e.level(10), &[V::from_i64s(&[2, 4])]);
    }

    #[test]
    fn bound_for_interior_of_quadrant() {
        // {x >= 1, y >= 1}: vertex (1,1) at level 2, rays add 2
        let q = C::from_i64_rays(2, &[&[1, 0], &[0, 1]]);
        let cons = vec![(V::from_i64s(&[1, 1]), BigInt::from(1)), (V::from_i64s(&[1, 0]), BigInt::from(1)), (V::from_i64s(&[0, 1]), BigInt::from(1))];
        assert_eq!(minimal_level_bound(&q, &cons).unwrap(), Some(4));
        let empty = vec![(V::from_i64s(&[0, 0]), BigInt::from(1))];
        assert_eq!(minimal_level_bound(&q, &empty).unwrap(), None);
    }
}
