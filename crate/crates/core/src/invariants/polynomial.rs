use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Integer polynomial, coefficients in ascending degree with no trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<i128>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn one() -> Self {
        IntPolynomial::new(vec![1])
    }

    pub fn monomial(degree: usize, c: i128) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        IntPolynomial::new(coeffs)
    }

    /// Histogram of `values` as a polynomial: coefficient `k` counts occurrences of `k`.
    pub fn census(values: impl IntoIterator<Item = usize>) -> Self {
        let mut coeffs = Vec::new();
        for v in values {
            if coeffs.len() <= v {
                coeffs.resize(v + 1, 0);
            }
            coeffs[v] += 1;
        }
        IntPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> i128 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPolynomial { coeffs }
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as i128 * c)
                .collect(),
        )
    }

    /// `p(x + shift)`, by Horner over polynomials.
    pub fn translate(&self, shift: i128) -> Self {
        let linear = IntPolynomial::new(vec![shift, 1]);
        self.coeffs
            .iter()
            .rev()
            .fold(IntPolynomial::zero(), |acc, &c| &(&acc * &linear) + &IntPolynomial::new(vec![c]))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{a}x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i128]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec())
    }

    #[test]
    fn trailing_zeros_are_dropped() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs(), &[1, 2]);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(p(&[0, 0, 3]).degree(), Some(2));
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        assert_eq!(&a * &a, p(&[1, 2, 1]));
        assert_eq!(&a - &a, IntPolynomial::zero());
        assert_eq!(a.shift(2), p(&[0, 0, 1, 1]));
        assert_eq!(p(&[1, 1, 2, 1]).eval(1), 5);
        assert_eq!(p(&[1, 1, 2, 1]).eval(-1), 1);
        assert_eq!(p(&[5, 5, 1]).derivative(), p(&[5, 2]));
        assert_eq!(p(&[1, 3, 1]).translate(1), p(&[5, 5, 1]));
        assert_eq!(IntPolynomial::census([0, 1, 2, 2, 3]), p(&[1, 1, 2, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 1, 3, 3, 1]).to_string(), "1 + x + 3x^2 + 3x^3 + x^4");
        assert_eq!(p(&[0, -2, 0, 1]).to_string(), "-2x + x^3");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn translate_matches_evaluation(c in prop::collection::vec(-50i128..50, 0..7), x in -6i128..6, s in -3i128..3) {
            let q = IntPolynomial::new(c);
            prop_assert_eq!(q.translate(s).eval(x), q.eval(x + s));
        }

        #[test]
        fn product_evaluates_pointwise(a in prop::collection::vec(-20i128..20, 0..6), b in prop::collection::vec(-20i128..20, 0..6), x in -5i128..5) {
            let (a, b) = (IntPolynomial::new(a), IntPolynomial::new(b));
            prop_assert_eq!((&a * &b).eval(x), a.eval(x) * b.eval(x));
            prop_assert_eq!((&a + &b).eval(x), a.eval(x) + b.eval(x));
        }
    }
}
