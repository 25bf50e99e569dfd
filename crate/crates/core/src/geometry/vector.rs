use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::rational::{format_decimal, Rational, Tuple};

/// Exact point of `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    /// `i`-th standard basis vector (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::from_integer(1.into());
        v
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self(values.iter().map(|&v| crate::rational::int(v)).collect())
    }

    /// Builds a vector from `(numerator, denominator)` pairs.
    pub fn from_fractions(values: &[(i64, i64)]) -> Self {
        Self(values.iter().map(|&(n, d)| crate::rational::rat(n, d)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Self) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot product of mismatched dimensions");
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_squared(&self) -> Rational {
        self.dot(self)
    }

    pub fn norm1(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, a| acc + a.abs())
    }

    pub fn norm_inf(&self) -> Rational {
        self.0.iter().map(Signed::abs).max().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Self(self.0.iter().map(|a| a * factor).collect())
    }

    /// Appends `extra` zero coordinates.
    pub fn padded(&self, extra: usize) -> Self {
        let mut coords = self.0.clone();
        coords.resize(self.dim() + extra, Rational::zero());
        Self(coords)
    }

    pub fn concat(&self, tail: &[Rational]) -> Self {
        let mut coords = self.0.clone();
        coords.extend_from_slice(tail);
        Self(coords)
    }

    /// `Σ coeffs_i · points_i`. All points must share a dimension.
    pub fn combination<P: AsRef<RationalVector>>(points: &[P], coeffs: &[Rational]) -> Self {
        assert_eq!(points.len(), coeffs.len());
        let dim = points.first().map_or(0, |p| p.as_ref().dim());
        let mut acc = vec![Rational::zero(); dim];
        for (p, c) in points.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            let p = p.as_ref();
            assert_eq!(p.dim(), dim, "combination of mismatched dimensions");
            for (slot, a) in acc.iter_mut().zip(&p.0) {
                *slot += a * c;
            }
        }
        Self(acc)
    }

    /// `theta · self + (1 − theta) · other`.
    pub fn lerp(&self, other: &Self, theta: &Rational) -> Self {
        let one_minus = Rational::from_integer(1.into()) - theta;
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a * theta + b * &one_minus)
                .collect(),
        )
    }

    pub fn decimal_strings(&self, places: usize) -> Vec<String> {
        self.0.iter().map(|c| format_decimal(c, places)).collect()
    }

    /// `(a, b, c)` with each coordinate rounded to `places` decimals.
    pub fn display_decimal(&self, places: usize) -> String {
        format!("({})", self.decimal_strings(places).join(", "))
    }
}

impl AsRef<RationalVector> for RationalVector {
    fn as_ref(&self) -> &RationalVector {
        self
    }
}

impl From<Vec<Rational>> for RationalVector {
    fn from(coords: Vec<Rational>) -> Self {
        Self(coords)
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Tuple(&self.0).fmt(f)
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;

    fn add(self, rhs: Self) -> RationalVector {
        assert_eq!(self.dim(), rhs.dim());
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;

    fn sub(self, rhs: Self) -> RationalVector {
        assert_eq!(self.dim(), rhs.dim());
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;

    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}
