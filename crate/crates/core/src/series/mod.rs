//! Truncated power series over exact rationals or p-adic coefficients,
//! plus the rational-function / differential-operator layer used by the
//! hypergeometric machinery.
//!
//! The exact-rational domain is the reference oracle for formal identities;
//! the p-adic domain is for evaluation. Every arithmetic result carries the
//! minimum of the operand truncation orders, and p-adic coefficients track
//! their own absolute precision (division by k with p | k lowers that
//! coefficient's precision by ord_p(k)).

mod operator;
mod poly;
mod ratfunc;

pub use operator::DifferentialOperator;
pub use poly::QPoly;
pub use ratfunc::RationalFunction;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::padic::{self, PadicNumber, PRational};

/// Coefficient ring interface shared by `BigRational` and `PadicNumber`.
///
/// Ring constants are derived from an existing element (`zero_like`,
/// `one_like`) so that p-adic coefficients can carry their prime and
/// precision without a global context.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_el(&self) -> bool;
    fn add_c(&self, rhs: &Self) -> Self;
    fn sub_c(&self, rhs: &Self) -> Self;
    fn neg_c(&self) -> Self;
    fn mul_c(&self, rhs: &Self) -> Self;
    fn is_unit_el(&self) -> bool;
    fn inv_c(&self) -> Result<Self>;
    /// Division by a positive integer (tracks p-adic precision loss).
    fn div_int_c(&self, k: u64) -> Result<Self>;
    /// Embeds a rational constant into the ring of `self`.
    fn embed_rational(&self, q: &PRational) -> Result<Self>;
    /// Checks a Frobenius substitution constant: in the p-adic domain it
    /// must be ≡ 1 mod p; the exact-rational domain accepts any value.
    fn frobenius_constant_ok(&self) -> bool;

    fn mul_i64_c(&self, k: i64) -> Self {
        let q = BigRational::from_integer(k.into());
        self.embed_rational(&q)
            .expect("integers embed in any coefficient ring")
            .mul_c(self)
    }

    fn pow_u64(&self, e: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_c(&base);
            }
            base = base.mul_c(&base);
            e >>= 1;
        }
        acc
    }
}

impl Coeff for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_el(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_c(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn mul_c(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_unit_el(&self) -> bool {
        !self.is_zero()
    }
    fn inv_c(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(self.recip())
    }
    fn div_int_c(&self, k: u64) -> Result<Self> {
        Ok(self / BigRational::from_integer(k.into()))
    }
    fn embed_rational(&self, q: &PRational) -> Result<Self> {
        Ok(q.clone())
    }
    fn frobenius_constant_ok(&self) -> bool {
        true
    }
}

impl Coeff for PadicNumber {
    fn zero_like(&self) -> Self {
        PadicNumber::zero(self.prime(), self.precision())
    }
    fn one_like(&self) -> Self {
        PadicNumber::one(self.prime(), self.precision())
    }
    fn is_zero_el(&self) -> bool {
        self.is_zero_residue()
    }
    fn add_c(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_c(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn neg_c(&self) -> Self {
        self.neg()
    }
    fn mul_c(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn is_unit_el(&self) -> bool {
        self.is_unit()
    }
    fn inv_c(&self) -> Result<Self> {
        self.inv().map_err(|_| Error::NotInvertible)
    }
    fn div_int_c(&self, k: u64) -> Result<Self> {
        self.div_int(k)
    }
    fn embed_rational(&self, q: &PRational) -> Result<Self> {
        padic::reduce(q, self.prime(), self.precision())
    }
    fn frobenius_constant_ok(&self) -> bool {
        self.is_unit() && self.sub(&self.one_like()).div_pow_p(1).is_ok()
    }
}

/// A power series known modulo t^T. The coefficient vector always has
/// length exactly T ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "truncation order must be >= 1");
        TruncSeries { coeffs }
    }

    /// Constant series c + 0·t + … + O(t^T).
    pub fn constant(c: C, t: usize) -> Self {
        assert!(t >= 1);
        let z = c.zero_like();
        let mut coeffs = vec![z; t];
        coeffs[0] = c;
        TruncSeries { coeffs }
    }

    pub fn one(proto: &C, t: usize) -> Self {
        Self::constant(proto.one_like(), t)
    }

    pub fn zero(proto: &C, t: usize) -> Self {
        Self::constant(proto.zero_like(), t)
    }

    /// Truncation order T.
    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero_series(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero_el())
    }

    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero_el())
    }

    pub fn truncate(&self, t: usize) -> Self {
        assert!(t >= 1 && t <= self.trunc());
        TruncSeries {
            coeffs: self.coeffs[..t].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let t = self.trunc().min(rhs.trunc());
        TruncSeries {
            coeffs: (0..t)
                .map(|i| self.coeffs[i].add_c(&rhs.coeffs[i]))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let t = self.trunc().min(rhs.trunc());
        TruncSeries {
            coeffs: (0..t)
                .map(|i| self.coeffs[i].sub_c(&rhs.coeffs[i]))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c.neg_c()).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x.mul_c(c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &PRational) -> Result<Self> {
        let c = self.coeffs[0].embed_rational(q)?;
        Ok(self.scale(&c))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let t = self.trunc().min(rhs.trunc());
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; t];
        for (i, a) in self.coeffs.iter().take(t).enumerate() {
            if a.is_zero_el() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(t - i).enumerate() {
                if b.is_zero_el() {
                    continue;
                }
                out[i + j] = out[i + j].add_c(&a.mul_c(b));
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Multiplicative inverse: requires a unit constant term; satisfies
    /// f · invert(f) = 1 + O(t^T).
    pub fn invert(&self) -> Result<Self> {
        if !self.coeffs[0].is_unit_el() {
            return Err(Error::NotInvertible);
        }
        let t = self.trunc();
        let b0 = self.coeffs[0].inv_c()?;
        let zero = b0.zero_like();
        let mut out = vec![zero; t];
        out[0] = b0.clone();
        for n in 1..t {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=n {
                if self.coeffs[k].is_zero_el() {
                    continue;
                }
                acc = acc.add_c(&self.coeffs[k].mul_c(&out[n - k]));
            }
            out[n] = acc.mul_c(&b0).neg_c();
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// f(c·t^p): the coefficient of t^{pk} becomes c^k·f_k. In the p-adic
    /// domain c must be ≡ 1 mod p.
    pub fn frobenius_substitute(&self, c: &C, p: u64) -> Result<Self> {
        if !c.frobenius_constant_ok() {
            return Err(Error::BadFrobeniusConstant);
        }
        let t = self.trunc();
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; t];
        let mut cpow = c.one_like();
        let mut k = 0usize;
        while k * (p as usize) < t {
            out[k * p as usize] = cpow.mul_c(&self.coeffs[k]);
            cpow = cpow.mul_c(c);
            k += 1;
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// ∫₀ᵗ f dt/t: divides the k-th coefficient by k. Needs a zero
    /// constant term; in the p-adic domain coefficient k loses ord_p(k)
    /// digits of precision.
    pub fn dlog_integral(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero_el() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out = Vec::with_capacity(self.trunc());
        out.push(self.coeffs[0].zero_like());
        for k in 1..self.trunc() {
            out.push(self.coeffs[k].div_int_c(k as u64)?);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// D = t·d/dt: multiplies the k-th coefficient by k.
    pub fn theta(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.mul_i64_c(k as i64))
                .collect(),
        }
    }

    /// d/dt: shifts down one degree; the result is known to order T−1.
    pub fn derivative(&self) -> Self {
        if self.trunc() == 1 {
            return Self::zero(&self.coeffs[0], 1);
        }
        TruncSeries {
            coeffs: (1..self.trunc())
                .map(|k| self.coeffs[k].mul_i64_c(k as i64))
                .collect(),
        }
    }

    /// Multiplication by t (drops the top coefficient to keep order T).
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.trunc());
        coeffs.push(self.coeffs[0].zero_like());
        coeffs.extend_from_slice(&self.coeffs[..self.trunc() - 1]);
        TruncSeries { coeffs }
    }

    /// The truncated polynomial [f]_{<k} as a series prefix.
    pub fn truncate_below(&self, k: usize) -> Result<Self> {
        if k > self.trunc() {
            return Err(Error::TruncationExceeded {
                k,
                t: self.trunc(),
            });
        }
        assert!(k >= 1);
        Ok(self.truncate(k))
    }

    /// Horner evaluation of the stored prefix as a polynomial.
    pub fn eval_polynomial(&self, x: &C) -> C {
        let mut acc = self.coeffs[self.trunc() - 1].clone();
        for c in self.coeffs[..self.trunc() - 1].iter().rev() {
            acc = acc.mul_c(x).add_c(c);
        }
        acc
    }
}

impl TruncSeries<BigRational> {
    /// Geometric series 1/(1−t) = Σ t^k, the canonical invert() test case.
    pub fn geometric(t: usize) -> Self {
        TruncSeries::new(vec![BigRational::one(); t])
    }

    /// Reduces every coefficient mod p^prec.
    pub fn to_padic(&self, p: u64, prec: u32) -> Result<TruncSeries<PadicNumber>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|q| padic::reduce(q, p, prec))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncSeries::new(coeffs))
    }

    /// True when every coefficient is p-integral; returns the first
    /// offender otherwise.
    pub fn p_integral_witness(&self, p: u64) -> Option<(usize, BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !padic::is_p_integral(c, p))
            .map(|(i, c)| (i, c.clone()))
    }
}

impl TruncSeries<PadicNumber> {
    /// Uniform truncation of every coefficient to precision `prec`.
    pub fn reduce_precision(&self, prec: u32) -> Self {
        TruncSeries::new(
            self.coeffs
                .iter()
                .map(|c| c.reduce_precision(prec.min(c.precision())))
                .collect(),
        )
    }

    /// Least coefficient precision across the series.
    pub fn min_precision(&self) -> u32 {
        self.coeffs.iter().map(|c| c.precision()).min().unwrap()
    }
}

/// JSON per the series schema: rational coefficients as "num/den" strings,
/// p-adic ones as digit objects.
pub fn series_to_json_rational(f: &TruncSeries<BigRational>) -> Value {
    json!({
        "domain": "rational",
        "T": f.trunc(),
        "coeffs": f.coeffs().iter().map(padic::format_rational).collect::<Vec<_>>(),
    })
}

pub fn series_to_json_padic(f: &TruncSeries<PadicNumber>) -> Value {
    json!({
        "domain": "padic",
        "T": f.trunc(),
        "coeffs": f.coeffs().iter().map(|c| serde_json::to_value(c).unwrap()).collect::<Vec<_>>(),
    })
}
