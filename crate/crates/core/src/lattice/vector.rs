use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Index, Neg, Sub};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Exact integer scalar used throughout the crate.
///
/// Implemented for every signed integer type with the usual number traits;
/// in practice `BigInt` (the default) and `i64`.
pub trait Scalar:
    Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type holds every i64")
    }
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// A point of the lattice `N = Z^d` (or of the dual lattice `M`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LatticeVector<S>(Vec<S>);

/// Points of the dual lattice share the representation of lattice points;
/// the pairing is the standard dot product.
pub type DualVector<S> = LatticeVector<S>;

impl<S: Scalar> LatticeVector<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Self(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| S::from_i64_exact(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![S::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = S::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<S> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &Self) -> S {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self(self.0.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Exact division of every coordinate; the caller guarantees divisibility.
    pub fn div_exact(&self, k: &S) -> Self {
        Self(
            self.0
                .iter()
                .map(|c| {
                    debug_assert!((c.clone() % k.clone()).is_zero());
                    c.clone() / k.clone()
                })
                .collect(),
        )
    }

    /// Non-negative gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> S {
        self.0.iter().fold(S::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// The primitive vector spanning the same ray.
    pub fn primitive_part(&self) -> Result<Self> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.div_exact(&g))
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.to_i64()).collect()
    }

    /// Sum of a non-empty or empty collection of vectors of dimension `dim`.
    pub fn sum<'a, I>(dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        vectors.into_iter().fold(Self::zero(dim), |acc, v| &acc + v)
    }
}

impl<S: Scalar> Index<usize> for LatticeVector<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S: Scalar> Add for &LatticeVector<S> {
    type Output = LatticeVector<S>;

    fn add(self, rhs: Self) -> LatticeVector<S> {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

impl<S: Scalar> Sub for &LatticeVector<S> {
    type Output = LatticeVector<S>;

    fn sub(self, rhs: Self) -> LatticeVector<S> {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

impl<S: Scalar> Neg for &LatticeVector<S> {
    type Output = LatticeVector<S>;

    fn neg(self) -> LatticeVector<S> {
        LatticeVector(self.0.iter().map(|c| -c.clone()).collect())
    }
}

impl<S: Scalar> fmt::Display for LatticeVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
