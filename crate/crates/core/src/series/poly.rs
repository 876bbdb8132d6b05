//! Dense polynomials over Q, just enough for the rational-function and
//! operator layer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct QPoly {
    /// coeffs[k] is the coefficient of t^k; no trailing zeros.
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        QPoly::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// The monomial t.
    pub fn t() -> Self {
        QPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// 1 − t.
    pub fn one_minus_t() -> Self {
        QPoly::from_i64(&[1, -1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// Multiplication by t^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        QPoly { coeffs }
    }

    pub fn divisible_by_t(&self) -> bool {
        !self.is_zero() && self.coeffs[0].is_zero()
    }

    /// Exact division by t; panics when the constant term is nonzero.
    pub fn div_t(&self) -> Self {
        assert!(self.divisible_by_t());
        QPoly {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn divisible_by_one_minus_t(&self) -> bool {
        !self.is_zero() && self.eval(&BigRational::one()).is_zero()
    }

    /// Exact division by (1 − t) via synthetic division; panics when the
    /// polynomial does not vanish at t = 1.
    pub fn div_one_minus_t(&self) -> Self {
        assert!(self.divisible_by_one_minus_t());
        // (1 - t)·q = f gives q_0 = c_0 and q_k = c_k + q_{k-1}
        let n = self.coeffs.len() - 1;
        let mut q = Vec::with_capacity(n);
        let mut run = BigRational::zero();
        for k in 0..n {
            run = run + self.coeff(k);
            q.push(run.clone());
        }
        debug_assert_eq!(QPoly::one_minus_t().mul(&QPoly::new(q.clone())), *self);
        QPoly::new(q)
    }

    /// t·d/dt applied to the polynomial.
    pub fn theta(&self) -> Self {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// d/dt.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k + 1)))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_by_one_minus_t() {
        // 1 - t^3 = (1 - t)(1 + t + t^2)
        let f = QPoly::from_i64(&[1, 0, 0, -1]);
        assert_eq!(f.div_one_minus_t(), QPoly::from_i64(&[1, 1, 1]));
        let g = QPoly::from_i64(&[2, -5, 3]); // (1-t)(2-3t)
        assert_eq!(g.div_one_minus_t(), QPoly::from_i64(&[2, -3]));
    }

    #[test]
    fn theta_and_eval() {
        let f = QPoly::from_i64(&[4, 0, 7]);
        assert_eq!(f.theta(), QPoly::from_i64(&[0, 0, 14]));
        assert_eq!(
            f.eval(&BigRational::from_integer(2.into())),
            BigRational::from_integer(32.into())
        );
    }
}
