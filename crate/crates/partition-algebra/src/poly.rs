//! Polynomials in `Z[z]`, the coefficient ring of the partition algebra.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Element of `Z[z]` as a dense coefficient vector, index = power of `z`.
///
/// Invariant: no trailing zero coefficient; the zero polynomial is the
/// empty vector. Two polynomials are equal iff their vectors are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial(Vec<BigInt>);

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            IntPolynomial(vec![c])
        }
    }

    /// The indeterminate `z`.
    pub fn z() -> Self {
        IntPolynomial(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial(coeffs);
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Multiplies by `z^s`.
    pub fn shifted(&self, s: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); s];
        coeffs.extend_from_slice(&self.0);
        IntPolynomial(coeffs)
    }

    /// Substitutes `z = n`.
    pub fn eval(&self, n: i64) -> BigInt {
        let n = BigInt::from(n);
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * &n + c;
        }
        acc
    }
}

impl Add<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.0.len() >= rhs.0.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.0.clone();
        for (i, c) in short.0.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        if self.0.len() < rhs.0.len() {
            self.0.resize(rhs.0.len(), BigInt::zero());
        }
        for (i, c) in rhs.0.iter().enumerate() {
            self.0[i] += c;
        }
        self.normalize();
    }
}

impl Sub<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (pow, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && pow > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match pow {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{pow}")?,
            }
        }
        Ok(())
    }
}

// JSON form: array of coefficients, constant term first. Values that fit
// in an i64 are emitted as numbers, anything larger as a decimal string.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            match i64::try_from(c.clone()) {
                Ok(v) => seq.serialize_element(&v)?,
                Err(_) => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(i64),
            Big(String),
        }
        let raw = Vec::<Coeff>::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(raw.len());
        for c in raw {
            coeffs.push(match c {
                Coeff::Int(v) => BigInt::from(v),
                Coeff::Big(s) => s
                    .parse::<BigInt>()
                    .map_err(|e| D::Error::custom(format!("bad coefficient {s:?}: {e}")))?,
            });
        }
        Ok(IntPolynomial::from_coeffs(coeffs))
    }
}
