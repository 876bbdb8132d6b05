//! Rational functions with denominators supported on t and (1 − t), the
//! coefficient field of the hypergeometric operator algebra.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::QPoly;
use super::{Coeff, TruncSeries};
use crate::error::{Error, Result};

/// num / (t^j (1−t)^k) in canonical form: num is divisible by neither t
/// nor (1−t) (negative exponents fold those factors into the numerator),
/// and the zero function is (0, 0, 0).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    num: QPoly,
    j: i64,
    k: i64,
}

impl RationalFunction {
    pub fn new(num: QPoly, j: i64, k: i64) -> Self {
        let mut rf = RationalFunction { num, j, k };
        rf.canonicalize();
        rf
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.j = 0;
            self.k = 0;
            return;
        }
        while self.num.divisible_by_t() {
            self.num = self.num.div_t();
            self.j -= 1;
        }
        while self.num.divisible_by_one_minus_t() {
            self.num = self.num.div_one_minus_t();
            self.k -= 1;
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: QPoly::zero(),
            j: 0,
            k: 0,
        }
    }

    pub fn one() -> Self {
        RationalFunction {
            num: QPoly::one(),
            j: 0,
            k: 0,
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        Self::new(p, 0, 0)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    /// c·t/(1−t), the building block of the Gauss–Manin coefficients.
    pub fn t_over_one_minus_t(c: BigRational) -> Self {
        Self::new(QPoly::constant(c), -1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn den_t_exponent(&self) -> i64 {
        self.j
    }

    pub fn den_one_minus_t_exponent(&self) -> i64 {
        self.k
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let j = self.j.max(rhs.j);
        let k = self.k.max(rhs.k);
        let lift = |rf: &Self| -> QPoly {
            let mut p = rf.num.clone();
            p = p.shift((j - rf.j) as usize);
            for _ in 0..(k - rf.k) {
                p = p.mul(&QPoly::one_minus_t());
            }
            p
        };
        Self::new(lift(self).add(&lift(rhs)), j, k)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            j: self.j,
            k: self.k,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.num.mul(&rhs.num), self.j + rhs.j, self.k + rhs.k)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            j: self.j,
            k: self.k,
        }
    }

    /// D = t·d/dt of the rational function:
    /// D(n/(t^j(1−t)^k)) = [(t·n′ − j·n)(1−t) + k·n·t] / (t^j (1−t)^{k+1}).
    pub fn theta(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let tn = self.num.derivative().shift(1);
        let a = tn
            .sub(&self.num.scale(&BigRational::from_integer(self.j.into())))
            .mul(&QPoly::one_minus_t());
        let b = self
            .num
            .scale(&BigRational::from_integer(self.k.into()))
            .shift(1);
        Self::new(a.add(&b), self.j, self.k + 1)
    }

    /// Expands to a truncated series. Fails when a genuine pole at t = 0
    /// remains (j > 0 after canonicalization).
    pub fn to_series<C: Coeff>(&self, proto: &C, t: usize) -> Result<TruncSeries<C>> {
        if self.is_zero() {
            return Ok(TruncSeries::zero(proto, t));
        }
        if self.j > 0 {
            return Err(Error::PoleAtOrigin { j: self.j });
        }
        let mut out = TruncSeries::zero(proto, t);
        // numerator · t^{-j}
        for (deg, c) in self.num.coeffs().iter().enumerate() {
            let d = deg + (-self.j) as usize;
            if d >= t {
                continue;
            }
            if c.is_zero() {
                continue;
            }
            let mut coeffs = vec![proto.zero_like(); t];
            coeffs[d] = proto.embed_rational(c)?;
            out = out.add(&TruncSeries::new(coeffs));
        }
        if self.k > 0 {
            // multiply by (1-t)^{-k} = geometric^k
            let geo = TruncSeries::<C>::one(proto, t)
                .sub(&TruncSeries::new({
                    let mut v = vec![proto.zero_like(); t];
                    if t > 1 {
                        v[1] = proto.one_like();
                    }
                    v
                }))
                .invert()?;
            for _ in 0..self.k {
                out = out.mul(&geo);
            }
        } else {
            for _ in 0..(-self.k) {
                let one_minus_t = TruncSeries::<C>::one(proto, t).sub(&{
                    let mut v = vec![proto.zero_like(); t];
                    if t > 1 {
                        v[1] = proto.one_like();
                    }
                    TruncSeries::new(v)
                });
                out = out.mul(&one_minus_t);
            }
        }
        Ok(out)
    }

    /// Evaluation at a rational point away from the poles.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut v = self.num.eval(x);
        if self.j != 0 {
            let tp = x.clone();
            v = v * pow_signed(&tp, -self.j);
        }
        if self.k != 0 {
            let omt = BigRational::one() - x;
            v = v * pow_signed(&omt, -self.k);
        }
        v
    }
}

fn pow_signed(x: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc * x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_form_strips_t_and_one_minus_t() {
        // (t - t^2) / (1-t)^2 = t/(1-t)
        let f = RationalFunction::new(QPoly::from_i64(&[0, 1, -1]), 0, 2);
        assert_eq!(f, RationalFunction::new(QPoly::one(), -1, 1));
        assert_eq!(f.den_t_exponent(), -1);
        assert_eq!(f.den_one_minus_t_exponent(), 1);
    }

    #[test]
    fn theta_of_t_over_one_minus_t() {
        // D(t/(1-t)) = t/(1-t)^2
        let f = RationalFunction::t_over_one_minus_t(BigRational::one());
        let d = f.theta();
        assert_eq!(d, RationalFunction::new(QPoly::one(), -1, 2));
        // spot check by series: t/(1-t) = t + t^2 + ..., theta = t + 2t^2 + ...
        let s = f.to_series(&BigRational::one(), 6).unwrap().theta();
        let ds = d.to_series(&BigRational::one(), 6).unwrap();
        assert_eq!(s, ds);
    }

    #[test]
    fn series_expansion_and_pole_detection() {
        let f = RationalFunction::new(QPoly::one(), 1, 0); // 1/t
        assert_eq!(
            f.to_series(&BigRational::one(), 4).unwrap_err(),
            Error::PoleAtOrigin { j: 1 }
        );
        let g = RationalFunction::t_over_one_minus_t(q(2, 1));
        let s = g.to_series(&BigRational::one(), 5).unwrap();
        for k in 1..5 {
            assert_eq!(s.coeff(k), &q(2, 1));
        }
    }

    #[test]
    fn addition_with_mixed_denominators() {
        // t/(1-t) + 1 = 1/(1-t)
        let f = RationalFunction::t_over_one_minus_t(BigRational::one());
        let s = f.add(&RationalFunction::one());
        assert_eq!(s, RationalFunction::new(QPoly::one(), 0, 1));
        assert_eq!(s.eval(&q(1, 2)), q(2, 1));
    }
}
