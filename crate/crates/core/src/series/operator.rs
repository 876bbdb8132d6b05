//! Differential operators Σ r_k ⋆ D^k with rational-function coefficients,
//! D = t·d/dt. Composition obeys the Ore rule D ⋆ r = r ⋆ D + D(r).

use num_rational::BigRational;

use super::ratfunc::RationalFunction;
use super::{Coeff, TruncSeries};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialOperator {
    /// coeffs[k] multiplies D^k; the top coefficient is nonzero unless the
    /// operator is zero.
    coeffs: Vec<RationalFunction>,
}

impl DifferentialOperator {
    pub fn new(mut coeffs: Vec<RationalFunction>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        DifferentialOperator { coeffs }
    }

    pub fn zero() -> Self {
        DifferentialOperator { coeffs: vec![] }
    }

    /// Order-zero operator: multiplication by a rational function.
    pub fn multiplier(r: RationalFunction) -> Self {
        Self::new(vec![r])
    }

    /// The operator D itself.
    pub fn d() -> Self {
        Self::new(vec![RationalFunction::zero(), RationalFunction::one()])
    }

    /// D + c for a rational constant c.
    pub fn d_plus(c: BigRational) -> Self {
        Self::new(vec![RationalFunction::constant(c), RationalFunction::one()])
    }

    pub fn order(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> RationalFunction {
        self.coeffs.get(k).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&BigRational::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|r| r.scale(c)).collect())
    }

    /// Left multiplication by a rational function (order-0 composition).
    pub fn premultiply(&self, r: &RationalFunction) -> Self {
        Self::new(self.coeffs.iter().map(|c| r.mul(c)).collect())
    }

    /// D ⋆ self = Σ (r_k ⋆ D^{k+1} + D(r_k) ⋆ D^k).
    fn d_compose(&self) -> Self {
        let mut out = vec![RationalFunction::zero(); self.coeffs.len() + 1];
        for (k, r) in self.coeffs.iter().enumerate() {
            out[k + 1] = out[k + 1].add(r);
            out[k] = out[k].add(&r.theta());
        }
        Self::new(out)
    }

    /// Operator composition: apply(self ⋆ rhs, f) = apply(self, apply(rhs, f)).
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut acc = Self::zero();
        // D^k ⋆ rhs, built up iteratively
        let mut dk_rhs = rhs.clone();
        for (k, r) in self.coeffs.iter().enumerate() {
            if k > 0 {
                dk_rhs = dk_rhs.d_compose();
            }
            if !r.is_zero() {
                acc = acc.add(&dk_rhs.premultiply(r));
            }
        }
        acc
    }

    /// Applies the operator to a truncated series. Coefficients must be
    /// regular at t = 0 (their canonical form has no t in the denominator).
    pub fn apply<C: Coeff>(&self, f: &TruncSeries<C>) -> Result<TruncSeries<C>> {
        let proto = f.coeff(0);
        let t = f.trunc();
        let mut acc = TruncSeries::zero(proto, t);
        let mut dk = f.clone();
        for (k, r) in self.coeffs.iter().enumerate() {
            if k > 0 {
                dk = dk.theta();
            }
            if r.is_zero() {
                continue;
            }
            let rs = r.to_series(proto, t)?;
            acc = acc.add(&rs.mul(&dk));
        }
        Ok(acc)
    }
}
