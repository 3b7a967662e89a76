//! Hermite and Smith normal forms and the integer linear algebra built on them.

use super::matrix::IntMatrix;
use super::vector::{LatticeVector, Scalar};
use crate::error::{Error, Result};

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U` unimodular and `H = U * A` row-echelon, pivots
/// positive and entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form<S: Scalar>(a: &IntMatrix<S>) -> (IntMatrix<S>, IntMatrix<S>) {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut p = 0;
    for col in 0..n {
        if p == m {
            break;
        }
        for r in p + 1..m {
            if h.get(r, col).is_zero() {
                continue;
            }
            if h.get(p, col).is_zero() {
                h.swap_rows(p, r);
                u.swap_rows(p, r);
                continue;
            }
            let x = h.get(p, col).clone();
            let y = h.get(r, col).clone();
            if (y.clone() % x.clone()).is_zero() {
                let q = -(y / x);
                h.add_row_multiple(r, p, &q);
                u.add_row_multiple(r, p, &q);
            } else {
                let eg = x.extended_gcd(&y);
                let g = eg.gcd;
                let lower_a = -(y / g.clone());
                let lower_b = x / g;
                h.combine_rows(p, r, &eg.x, &eg.y, &lower_a, &lower_b);
                u.combine_rows(p, r, &eg.x, &eg.y, &lower_a, &lower_b);
            }
        }
        if h.get(p, col).is_zero() {
            continue;
        }
        if h.get(p, col).is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        let pivot = h.get(p, col).clone();
        for r in 0..p {
            let q = -h.get(r, col).div_floor(&pivot);
            h.add_row_multiple(r, p, &q);
            u.add_row_multiple(r, p, &q);
        }
        p += 1;
    }
    (h, u)
}

/// Smith normal form `D = U * A * V` with non-negative diagonal `d_i | d_{i+1}`.
pub fn smith_normal_form<S: Scalar>(
    a: &IntMatrix<S>,
) -> (IntMatrix<S>, IntMatrix<S>, IntMatrix<S>) {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let e = d.get(i, j);
                if e.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| e.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut best = (t, t);
            for i in t + 1..m {
                let e = d.get(i, t);
                if !e.is_zero() && e.abs() < d.get(best.0, best.1).abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..n {
                let e = d.get(t, j);
                if !e.is_zero() && e.abs() < d.get(best.0, best.1).abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
            }
            if best.1 != t {
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
            }

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = -(d.get(i, t).clone() / pivot.clone());
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = -(d.get(t, j).clone() / pivot.clone());
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(d.get(i, j).clone() % pivot.clone()).is_zero())
            });
            match offending {
                Some(i) => {
                    let one = S::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}

/// Number of linearly independent rows.
pub fn rank<S: Scalar>(a: &IntMatrix<S>) -> usize {
    let (h, _) = hermite_normal_form(a);
    (0..h.rows()).filter(|&i| !h.is_zero_row(i)).count()
}

/// Canonical (Hermite-reduced) basis of the row lattice spanned by `vectors`.
pub fn lattice_basis<S: Scalar>(vectors: &[LatticeVector<S>], dim: usize) -> Vec<LatticeVector<S>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (h, _) = hermite_normal_form(&IntMatrix::from_vectors(vectors, dim));
    (0..h.rows())
        .filter(|&i| !h.is_zero_row(i))
        .map(|i| h.row_vector(i))
        .collect()
}

/// Basis of the saturated lattice `{x in Z^n : A x = 0}`, in Hermite form.
pub fn integer_kernel<S: Scalar>(a: &IntMatrix<S>) -> Vec<LatticeVector<S>> {
    let (h, u) = hermite_normal_form(&a.transpose());
    let raw: Vec<_> = (0..h.rows())
        .filter(|&i| h.is_zero_row(i))
        .map(|i| u.row_vector(i))
        .collect();
    lattice_basis(&raw, a.cols())
}

/// Basis of `span(vectors) ∩ Z^dim`, in Hermite form.
pub fn saturated_basis<S: Scalar>(vectors: &[LatticeVector<S>], dim: usize) -> Vec<LatticeVector<S>> {
    let equations = integer_kernel(&IntMatrix::from_vectors(vectors, dim));
    integer_kernel(&IntMatrix::from_vectors(&equations, dim))
}

/// Coordinates `t` with `t * basis = v`, for a basis in row-echelon form.
pub fn coordinates_in_basis<S: Scalar>(
    basis: &[LatticeVector<S>],
    v: &LatticeVector<S>,
) -> Option<Vec<S>> {
    let mut residual = v.clone();
    let mut coords = Vec::with_capacity(basis.len());
    for b in basis {
        let pivot = b.coords().iter().position(|c| !c.is_zero())?;
        let (q, r) = residual[pivot].div_rem(&b[pivot]);
        if !r.is_zero() {
            return None;
        }
        residual = &residual - &b.scale(&q);
        coords.push(q);
    }
    residual.is_zero().then_some(coords)
}

/// Inverse of a unimodular matrix, or `None` if `u` is not unimodular.
pub fn unimodular_inverse<S: Scalar>(u: &IntMatrix<S>) -> Option<IntMatrix<S>> {
    if u.rows() != u.cols() {
        return None;
    }
    let (h, w) = hermite_normal_form(u);
    (h == IntMatrix::identity(u.rows())).then_some(w)
}

/// Index of the lattice spanned by independent `generators` inside its saturation.
pub fn sublattice_index<S: Scalar>(generators: &[LatticeVector<S>], dim: usize) -> Result<S> {
    if generators.is_empty() {
        return Ok(S::one());
    }
    let a = IntMatrix::from_vectors(generators, dim);
    if rank(&a) < generators.len() {
        return Err(Error::DependentGenerators);
    }
    let (d, _, _) = smith_normal_form(&a);
    Ok((0..generators.len()).fold(S::one(), |acc, i| acc * d.get(i, i).clone()))
}

/// The saturated sublattice `span ∩ Z^d` of a set of vectors together with a
/// unimodular completion, giving integer coordinates on the span, lifts of
/// dual coordinates, and the quotient map `Z^d -> Z^d / (span ∩ Z^d)`.
#[derive(Clone, Debug)]
pub struct SpanLattice<S> {
    ambient: usize,
    basis: Vec<LatticeVector<S>>,
    /// `d x k` matrix with `basis * right_inverse = I_k`.
    right_inverse: IntMatrix<S>,
    /// `x * completion` has zero trailing `d - k` coordinates iff `x` lies in the span.
    completion: IntMatrix<S>,
}

impl<S: Scalar> SpanLattice<S> {
    pub fn new(vectors: &[LatticeVector<S>], ambient: usize) -> Self {
        let basis = saturated_basis(vectors, ambient);
        let k = basis.len();
        if k == 0 {
            return Self {
                ambient,
                basis,
                right_inverse: IntMatrix::zeros(ambient, 0),
                completion: IntMatrix::identity(ambient),
            };
        }
        let b = IntMatrix::from_vectors(&basis, ambient);
        let (d, u, v) = smith_normal_form(&b);
        debug_assert!((0..k).all(|i| d.get(i, i).is_one()), "saturated basis has unit invariants");
        // right inverse: V * [I_k; 0] * U
        let mut v_top = IntMatrix::zeros(ambient, k);
        for i in 0..ambient {
            for j in 0..k {
                v_top.set(i, j, v.get(i, j).clone());
            }
        }
        let right_inverse = v_top.mul(&u);
        Self { ambient, basis, right_inverse, completion: v }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[LatticeVector<S>] {
        &self.basis
    }

    /// Integer coordinates of a lattice point of the span.
    pub fn coordinates(&self, v: &LatticeVector<S>) -> Option<LatticeVector<S>> {
        let t = self.right_inverse.left_apply(v);
        (self.embed(&t) == *v).then_some(t)
    }

    pub fn embed(&self, t: &LatticeVector<S>) -> LatticeVector<S> {
        self.basis
            .iter()
            .zip(t.coords())
            .fold(LatticeVector::zero(self.ambient), |acc, (b, c)| &acc + &b.scale(c))
    }

    /// A dual vector `u` on `Z^d` restricting to the functional `t -> <u', t>` on the span.
    pub fn lift_dual(&self, u: &LatticeVector<S>) -> LatticeVector<S> {
        self.right_inverse.apply(u)
    }

    /// Image in the quotient lattice `Z^d / (span ∩ Z^d) ≅ Z^(d-k)`.
    pub fn quotient(&self, v: &LatticeVector<S>) -> LatticeVector<S> {
        let y = self.completion.left_apply(v);
        LatticeVector::new(y.coords()[self.rank()..].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Signed;

    type M = IntMatrix<BigInt>;
    type V = LatticeVector<BigInt>;

    fn m(rows: &[&[i64]]) -> M {
        M::from_i64_rows(rows)
    }

    #[test]
    fn hnf_examples() {
        let a = m(&[&[2, 4], &[1, 3]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
        assert_eq!(u.mul(&a), h);
        assert_eq!(u.determinant().abs(), BigInt::from(1));

        let id = M::identity(3);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);

        let z = m(&[&[0, 0]]);
        assert_eq!(hermite_normal_form(&z).0, z);
    }

    type Rows<'a> = &'a [&'a [i64]];

    #[test]
    fn snf_examples() {
        let cases: [(Rows, Rows); 3] = [
            (&[&[2, 4], &[1, 3]], &[&[1, 0], &[0, 2]]),
            (&[&[6, 0], &[0, 4]], &[&[2, 0], &[0, 12]]),
            (&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 1]]),
        ];
        for (input, expected) in cases {
            let a = m(input);
            let (d, u, v) = smith_normal_form(&a);
            assert_eq!(d, m(expected));
            assert_eq!(u.mul(&a).mul(&v), d);
            assert_eq!(u.determinant().abs(), BigInt::from(1));
            assert_eq!(v.determinant().abs(), BigInt::from(1));
        }
    }

    #[test]
    fn index_examples() {
        let g = [V::from_i64s(&[1, 0]), V::from_i64s(&[1, 2])];
        assert_eq!(sublattice_index(&g, 2).unwrap(), BigInt::from(2));
        let e: Vec<V> = (0..3).map(|i| V::unit(3, i)).collect();
        assert_eq!(sublattice_index(&e, 3).unwrap(), BigInt::from(1));
        let dep = [V::from_i64s(&[1, 0]), V::from_i64s(&[2, 0])];
        assert_eq!(sublattice_index(&dep, 2), Err(Error::DependentGenerators));
    }

    #[test]
    fn kernel_and_saturation() {
        let a = m(&[&[1, 1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(a.apply(x).is_zero());
        }
        let sat = saturated_basis(&[V::from_i64s(&[2, 4, 0])], 3);
        assert_eq!(sat, vec![V::from_i64s(&[1, 2, 0])]);
    }

    #[test]
    fn span_lattice_round_trip() {
        let span = SpanLattice::new(&[V::from_i64s(&[1, 1, 0]), V::from_i64s(&[0, 1, 1])], 3);
        assert_eq!(span.rank(), 2);
        let p = V::from_i64s(&[2, 5, 3]);
        let t = span.coordinates(&p).unwrap();
        assert_eq!(span.embed(&t), p);
        assert!(span.coordinates(&V::from_i64s(&[1, 0, 0])).is_none());
        assert!(span.quotient(&p).is_zero());
        assert!(!span.quotient(&V::from_i64s(&[1, 0, 0])).is_zero());
        // lifted functional agrees with the coordinate functional
        let u = V::from_i64s(&[3, -1]);
        let lifted = span.lift_dual(&u);
        assert_eq!(lifted.dot(&p), u.dot(&t));
    }

    #[test]
    fn unimodular_inverse_works() {
        let u = m(&[&[2, 1], &[1, 1]]);
        let inv = unimodular_inverse(&u).unwrap();
        assert_eq!(u.mul(&inv), M::identity(2));
        assert!(unimodular_inverse(&m(&[&[2, 0], &[0, 1]])).is_none());
    }
}
