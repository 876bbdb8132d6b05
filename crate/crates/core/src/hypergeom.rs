//! Hypergeometric series F_a, their truncation polynomials h_a, the Dwork
//! ratio F_a(t)/F_{a'}(t^σ), the logarithmic-type function G^{(σ)}/F_a and
//! point evaluation — all through truncation congruences, which are the
//! computable content of the two congruence theorems.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::padic::{
    self, dwork_orbit, dwork_prime, is_p_integral, iwasawa_log, psi_tilde, PadicNumber, PRational,
};
use crate::series::{DifferentialOperator, QPoly, RationalFunction, TruncSeries};

/// Parameter tuple a = (a_0, …, a_d) of p-integral rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct HGParams {
    a: Vec<PRational>,
}

impl HGParams {
    pub fn new(a: Vec<PRational>) -> Self {
        assert!(!a.is_empty());
        HGParams { a }
    }

    pub fn from_i64_pairs(pairs: &[(i64, i64)]) -> Self {
        Self::new(
            pairs
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    }

    /// Parameters of the eigenspace (i_0, …, i_d) of the scheme with
    /// exponents (n_0, …, n_d): a_k = 1 − i_k/n_k, requiring 0 < i_k < n_k.
    pub fn from_scheme(n: &[u32], i: &[u32]) -> Self {
        assert_eq!(n.len(), i.len());
        Self::new(
            n.iter()
                .zip(i)
                .map(|(&nk, &ik)| {
                    assert!(0 < ik && ik < nk);
                    BigRational::one()
                        - BigRational::new(BigInt::from(ik), BigInt::from(nk))
                })
                .collect(),
        )
    }

    /// d, where the tuple has d + 1 entries.
    pub fn d(&self) -> usize {
        self.a.len() - 1
    }

    pub fn entries(&self) -> &[PRational] {
        &self.a
    }

    /// Dual tuple ǎ = (1 − a_0, …, 1 − a_d).
    pub fn dual(&self) -> Self {
        HGParams {
            a: self.a.iter().map(|x| BigRational::one() - x).collect(),
        }
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.a.iter().all(|x| is_p_integral(x, p))
    }

    /// Dwork prime applied entrywise.
    pub fn dwork_prime(&self, p: u64) -> Result<Self> {
        Ok(HGParams {
            a: self
                .a
                .iter()
                .map(|x| dwork_prime(x, p))
                .collect::<Result<_>>()?,
        })
    }

    /// Full Dwork orbit and its minimal cycle length m.
    pub fn orbit(&self, p: u64) -> Result<(Vec<HGParams>, u32)> {
        let (orb, m) = dwork_orbit(&self.a, p)?;
        Ok((orb.into_iter().map(HGParams::new).collect(), m))
    }
}

/// How the Frobenius constant c of σ(t) = c·t^p is built. Rational forms
/// can be reduced at any working precision.
#[derive(Debug, Clone, PartialEq)]
enum FrobConstant {
    One,
    OnePlusP,
    /// c = α^{1−p} for the evaluation point α (a p-adic unit).
    PowerPoint(PRational),
    Rational(PRational),
    Unit(PadicNumber),
}

/// σ(t) = c·t^p with c ≡ 1 mod p.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSpec {
    p: u64,
    c: FrobConstant,
    description: String,
}

impl FrobeniusSpec {
    /// σ(t) = t^p.
    pub fn identity(p: u64) -> Self {
        FrobeniusSpec {
            p,
            c: FrobConstant::One,
            description: "c = 1".into(),
        }
    }

    /// σ(t) = (1+p)·t^p, the standard off-identity test constant.
    pub fn one_plus_p(p: u64) -> Self {
        FrobeniusSpec {
            p,
            c: FrobConstant::OnePlusP,
            description: "c = 1 + p".into(),
        }
    }

    /// σ(t) = α^{1−p}·t^p, the Frobenius fixing the fiber t = α.
    pub fn power_point(alpha: &PRational, p: u64) -> Result<Self> {
        if !is_p_integral(alpha, p) || (alpha.numer() % BigInt::from(p)).is_zero() {
            return Err(Error::BadFiber);
        }
        Ok(FrobeniusSpec {
            p,
            c: FrobConstant::PowerPoint(alpha.clone()),
            description: "c = alpha^(1-p)".into(),
        })
    }

    /// Arbitrary rational constant; must be a unit ≡ 1 mod p.
    pub fn rational(c: PRational, p: u64) -> Result<Self> {
        let diff = &c - BigRational::one();
        let ok = diff.is_zero()
            || (is_p_integral(&c, p)
                && padic::rational_valuation(&diff, p).map_or(false, |v| v >= 1));
        if !ok {
            return Err(Error::BadFrobeniusConstant);
        }
        Ok(FrobeniusSpec {
            p,
            c: FrobConstant::Rational(c),
            description: "custom".into(),
        })
    }

    /// A unit class known to fixed precision.
    pub fn unit(c: PadicNumber) -> Result<Self> {
        let one = PadicNumber::one(c.prime(), c.precision());
        if !c.is_unit() || c.sub(&one).div_pow_p(1).is_err() {
            return Err(Error::BadFrobeniusConstant);
        }
        Ok(FrobeniusSpec {
            p: c.prime(),
            description: "custom".into(),
            c: FrobConstant::Unit(c),
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// The constant at the requested working precision.
    pub fn constant(&self, prec: u32) -> Result<PadicNumber> {
        let p = self.p;
        match &self.c {
            FrobConstant::One => Ok(PadicNumber::one(p, prec)),
            FrobConstant::OnePlusP => Ok(PadicNumber::from_i64(p, prec, 1 + p as i64)),
            FrobConstant::PowerPoint(alpha) => {
                let a = padic::reduce(alpha, p, prec)?;
                a.pow(p - 1).inv()
            }
            FrobConstant::Rational(q) => padic::reduce(q, p, prec),
            FrobConstant::Unit(c) => {
                if prec > c.precision() {
                    // digits beyond the stored precision are not known
                    return Err(Error::BadFrobeniusConstant);
                }
                Ok(c.reduce_precision(prec))
            }
        }
    }

    /// Exact rational value when one exists (c = 1, 1+p or explicit).
    pub fn rational_constant(&self) -> Option<PRational> {
        match &self.c {
            FrobConstant::One => Some(BigRational::one()),
            FrobConstant::OnePlusP => {
                Some(BigRational::from_integer(BigInt::from(1 + self.p as i64)))
            }
            FrobConstant::Rational(q) => Some(q.clone()),
            _ => None,
        }
    }
}

/// Pochhammer symbol (α)_n = α(α+1)⋯(α+n−1).
pub fn pochhammer(alpha: &PRational, n: u64) -> PRational {
    let mut acc = BigRational::one();
    let mut term = alpha.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// The hypergeometric series Σ_n Π_k (a_k)_n / n! · t^n over Q, to order T.
pub fn hg_series(a: &HGParams, t: usize) -> TruncSeries<BigRational> {
    assert!(t >= 1);
    let mut coeffs = Vec::with_capacity(t);
    let mut c = BigRational::one();
    for n in 0..t {
        coeffs.push(c.clone());
        let mut num = BigRational::one();
        let nq = BigRational::from_integer(BigInt::from(n));
        for ak in a.entries() {
            num *= ak + &nq;
        }
        let den = BigRational::from_integer(BigInt::from(n + 1)).pow(a.entries().len() as i32);
        c = c * num / den;
    }
    TruncSeries::new(coeffs)
}

/// Coefficients of F_a mod p^prec to order T by the scaled recurrence:
/// the running coefficient is kept as p^e · (unit known mod p^prec), so no
/// relative precision is ever lost to the p-parts of the Pochhammer and
/// factorial factors.
pub fn hg_series_padic(
    a: &HGParams,
    p: u64,
    prec: u32,
    t: usize,
) -> Result<TruncSeries<PadicNumber>> {
    assert!(t >= 1);
    if !a.is_p_integral(p) {
        return Err(Error::NonIntegral { p });
    }
    let split = |n: &BigInt| -> (u32, BigInt) {
        let mut v = 0u32;
        let mut u = n.clone();
        let pb = BigInt::from(p);
        while !u.is_zero() && (&u % &pb).is_zero() {
            u /= &pb;
            v += 1;
        }
        (v, u)
    };
    let mut coeffs = Vec::with_capacity(t);
    // running coefficient = p^e · unit with e its exact valuation
    let mut e: i64 = 0;
    let mut unit = PadicNumber::one(p, prec);
    let pk_table: Vec<BigInt> = (0..prec).map(|k| BigInt::from(p).pow(k)).collect();
    for n in 0..t {
        debug_assert!(e >= 0, "hypergeometric coefficient left Z_p");
        let c = if e >= prec as i64 {
            PadicNumber::zero(p, prec)
        } else {
            PadicNumber::from_bigint(p, prec, &pk_table[e as usize]).mul(&unit)
        };
        coeffs.push(c);
        if n + 1 == t {
            break;
        }
        let nb = BigInt::from(n);
        for ak in a.entries() {
            // a_k + n = (num + n·den)/den with den a p-unit
            let top = ak.numer() + &nb * ak.denom();
            if top.is_zero() {
                // a factor of the Pochhammer product is 0 from here on:
                // the series terminates
                while coeffs.len() < t {
                    coeffs.push(PadicNumber::zero(p, prec));
                }
                return Ok(TruncSeries::new(coeffs));
            }
            let (v, u) = split(&top);
            e += v as i64;
            unit = unit
                .mul(&PadicNumber::from_bigint(p, prec, &u))
                .mul(&PadicNumber::from_bigint(p, prec, ak.denom()).inv()?);
        }
        let (v, u) = split(&BigInt::from(n + 1));
        e -= (v as i64) * a.entries().len() as i64;
        if !u.is_one() {
            let inv = PadicNumber::from_bigint(p, prec, &u).inv()?;
            unit = unit.mul(&inv.pow(a.entries().len() as u64));
        }
    }
    Ok(TruncSeries::new(coeffs))
}

/// [F_a]_{<p} reduced mod p, as plain residues.
pub fn hg_prefix_mod_p(a: &HGParams, p: u64) -> Result<Vec<u64>> {
    let s = hg_series_padic(a, p, 1, p as usize)?;
    Ok(s.coeffs()
        .iter()
        .map(|c| c.residue().to_u64().unwrap())
        .collect())
}

/// h_a(t) = Π_{i} [F_{a^{(i)}}]_{<p} mod p over one full Dwork orbit (the
/// distinct-reduction set stabilizes within a cycle, and the localized ring
/// does not depend on the choice).
pub fn h_polynomial(a: &HGParams, p: u64) -> Result<Vec<u64>> {
    let (orbit, _) = a.orbit(p)?;
    let mut acc = vec![1u64];
    for member in &orbit {
        let f = hg_prefix_mod_p(member, p)?;
        let mut out = vec![0u64; acc.len() + f.len() - 1];
        for (i, &x) in acc.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in f.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        acc = out;
    }
    while acc.last() == Some(&0) {
        acc.pop();
    }
    Ok(acc)
}

pub fn poly_eval_mod_p(poly: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in poly.iter().rev() {
        acc = (acc * (x % p) + c) % p;
    }
    acc
}

/// True when every orbit member's Hasse factor [F_{a^{(i)}}]_{<p} is a
/// unit at x mod p.
pub fn hasse_unit_at(a: &HGParams, p: u64, x: u64) -> Result<bool> {
    let (orbit, _) = a.orbit(p)?;
    for member in &orbit {
        let f = hg_prefix_mod_p(member, p)?;
        if poly_eval_mod_p(&f, x, p) == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The hypergeometric differential operator
/// P_{HG,a} = D^{d+1} − t(D + a_0)⋯(D + a_d).
pub fn hg_operator(a: &HGParams) -> DifferentialOperator {
    let mut prod = DifferentialOperator::multiplier(RationalFunction::one());
    for ak in a.entries() {
        prod = DifferentialOperator::d_plus(ak.clone()).compose(&prod);
    }
    let t_mult = RationalFunction::from_poly(QPoly::t());
    let d_power = {
        let mut c = vec![RationalFunction::zero(); a.entries().len() + 1];
        c[a.entries().len()] = RationalFunction::one();
        DifferentialOperator::new(c)
    };
    d_power.sub(&prod.premultiply(&t_mult))
}

fn pow_usize(p: u64, n: u32) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..n {
        acc = acc.checked_mul(p as usize)?;
    }
    Some(acc)
}

fn ilog_p(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n >= p {
        n /= p;
        e += 1;
    }
    e
}

/// The truncated substituted denominator [F_{a'}(c·t^p)]_{<p^n}, restricted
/// to degrees < T, with coefficients at precision `prec`.
fn substituted_denominator(
    a: &HGParams,
    fs: &FrobeniusSpec,
    prec: u32,
    t: usize,
) -> Result<TruncSeries<PadicNumber>> {
    let p = fs.prime();
    let ap = a.dwork_prime(p)?;
    let inner_len = (t - 1) / p as usize + 1;
    let inner = hg_series_padic(&ap, p, prec, inner_len)?;
    let c = fs.constant(prec)?;
    let mut coeffs = vec![PadicNumber::zero(p, prec); t];
    let mut cpow = PadicNumber::one(p, prec);
    for k in 0..inner_len {
        let deg = k * p as usize;
        if deg < t {
            coeffs[deg] = cpow.mul(inner.coeff(k));
        }
        cpow = cpow.mul(&c);
    }
    Ok(TruncSeries::new(coeffs))
}

/// Dwork's p-adic hypergeometric function as a congruence-level series:
/// [F_a]_{<p^n} / [F_{a'}(t^σ)]_{<p^n} mod p^n, on degrees < T ≤ p^n.
pub fn dwork_ratio(
    a: &HGParams,
    fs: &FrobeniusSpec,
    n: u32,
    t: usize,
) -> Result<TruncSeries<PadicNumber>> {
    assert!(n >= 1);
    let p = fs.prime();
    let window = pow_usize(p, n).unwrap_or(usize::MAX);
    if t > window {
        return Err(Error::PrecisionWindowExceeded { t, pn: window });
    }
    let num = hg_series_padic(a, p, n, t)?;
    let den = substituted_denominator(a, fs, n, t)?;
    Ok(num.mul(&den.invert()?))
}

/// G^{(σ)}_a = Σψ̃_p(a_i) − p⁻¹log(c) + ∫₀ᵗ(F_a − F_{a'}(t^σ)) dt/t,
/// to order T with every coefficient at full absolute precision `prec`
/// (the integrand is generated at padded precision so the dlog division
/// costs nothing).
pub fn g_sigma(
    a: &HGParams,
    fs: &FrobeniusSpec,
    prec: u32,
    t: usize,
) -> Result<TruncSeries<PadicNumber>> {
    let p = fs.prime();
    assert!(p >= 3);
    let pad = prec + ilog_p(t.max(1) as u64, p) + 1;
    let fa = hg_series_padic(a, p, pad, t)?;
    let sub = substituted_denominator(a, fs, pad, t)?;
    let integrand = fa.sub(&sub);
    let integral = integrand.dlog_integral()?;
    let constant = g_sigma_constant(a, fs, prec)?;
    let mut coeffs: Vec<PadicNumber> = integral
        .coeffs()
        .iter()
        .map(|c| c.reduce_precision(prec.min(c.precision())))
        .collect();
    coeffs[0] = constant;
    Ok(TruncSeries::new(coeffs))
}

/// The constant term Σψ̃_p(a_i) − p⁻¹·log(c).
pub fn g_sigma_constant(a: &HGParams, fs: &FrobeniusSpec, prec: u32) -> Result<PadicNumber> {
    let p = fs.prime();
    let mut acc = PadicNumber::zero(p, prec);
    for ak in a.entries() {
        acc = acc.add(&psi_tilde(ak, p, prec)?);
    }
    let c = fs.constant(prec + 1)?;
    let log_c = iwasawa_log(&c)?;
    let correction = log_c.div_pow_p(1)?;
    Ok(acc.sub(&correction))
}

/// The logarithmic-type function as a congruence-level series restricted
/// to degrees < T ≤ p^n: [G^{(σ)}]_{<p^n} / [F_a]_{<p^n} mod p^n. (Both
/// sides of the defining quotient G^{(σ)}/F_a are truncated at the same
/// level; the substituted series [F_{a'}(t^σ)] is the Dwork-ratio
/// denominator, not this one.)
pub fn log_hg_series(
    a: &HGParams,
    fs: &FrobeniusSpec,
    n: u32,
    t: usize,
) -> Result<TruncSeries<PadicNumber>> {
    assert!(n >= 1);
    let p = fs.prime();
    let window = pow_usize(p, n).unwrap_or(usize::MAX);
    if t > window {
        return Err(Error::PrecisionWindowExceeded { t, pn: window });
    }
    let g = g_sigma(a, fs, n, t)?;
    let den = hg_series_padic(a, p, n, t)?;
    Ok(g.mul(&den.invert()?))
}

/// The logarithmic-type function on its full level-n window (degree < p^n).
pub fn log_hg(a: &HGParams, fs: &FrobeniusSpec, n: u32) -> Result<TruncSeries<PadicNumber>> {
    let p = fs.prime();
    let t = pow_usize(p, n).ok_or(Error::PrecisionWindowExceeded {
        t: usize::MAX,
        pn: usize::MAX,
    })?;
    log_hg_series(a, fs, n, t)
}

/// Exact-rational Dwork quotient F_a(t)/F_{a'}(c·t^p) to order T, for a
/// rational Frobenius constant; the reference oracle for the congruence
/// route.
pub fn dwork_ratio_exact(
    a: &HGParams,
    c: &PRational,
    p: u64,
    t: usize,
) -> Result<TruncSeries<BigRational>> {
    let fa = hg_series(a, t);
    let inner = hg_series(&a.dwork_prime(p)?, t);
    let sub = inner.frobenius_substitute(c, p)?;
    Ok(fa.mul(&sub.invert()?))
}

/// Exact-rational dlog integral ∫₀ᵗ (F_a − F_{a'}(c·t^p)) dt/t to order T;
/// the non-constant part of G^{(σ)} over Q.
pub fn g_sigma_integral_exact(
    a: &HGParams,
    c: &PRational,
    p: u64,
    t: usize,
) -> Result<TruncSeries<BigRational>> {
    let fa = hg_series(a, t);
    let inner = hg_series(&a.dwork_prime(p)?, t);
    let sub = inner.frobenius_substitute(c, p)?;
    fa.sub(&sub).dlog_integral()
}

/// Shared evaluation core. `allow_unit_fiber` admits α ≡ 1 mod p, needed
/// for the σ(t) = t^p specialization at t = 1 where the function is still
/// defined on the h-localized ring.
pub(crate) fn eval_log_hg_inner(
    a: &HGParams,
    alpha: &PRational,
    p: u64,
    n: u32,
    allow_unit_fiber: bool,
) -> Result<PadicNumber> {
    assert!(n >= 1);
    if p <= (a.d() + 1) as u64 {
        return Err(Error::SmallPrime {
            p,
            bound: (a.d() + 1) as u64,
        });
    }
    if !is_p_integral(alpha, p) {
        return Err(Error::NonIntegral { p });
    }
    let alpha_mod = padic::reduce(alpha, p, 1)?
        .residue()
        .to_u64()
        .unwrap();
    if alpha_mod == 0 || (alpha_mod == 1 && !allow_unit_fiber) {
        return Err(Error::BadFiber);
    }
    if !hasse_unit_at(a, p, alpha_mod)? {
        return Err(Error::BadHasse);
    }
    let fs = if alpha_mod == 1 && alpha.is_one() {
        FrobeniusSpec::identity(p)
    } else {
        FrobeniusSpec::power_point(alpha, p)?
    };
    let t = pow_usize(p, n).ok_or(Error::PrecisionWindowExceeded {
        t: usize::MAX,
        pn: usize::MAX,
    })?;
    let g = g_sigma(a, &fs, n, t)?;
    let den = hg_series_padic(a, p, n, t)?;
    let x = padic::reduce(alpha, p, n)?;
    let gv = g.eval_polynomial(&x);
    let dv = den.eval_polynomial(&x);
    gv.div(&dv).map_err(|_| Error::BadHasse)
}

/// F^{(σ)}_a(α) with σ(t) = α^{1−p}·t^p, computed mod p^n by polynomial
/// evaluation of the level-n truncations. Requires p > d+1, a fiber away
/// from 0 and 1 mod p, and unit Hasse values along the Dwork orbit.
pub fn eval_log_hg(a: &HGParams, alpha: &PRational, p: u64, n: u32) -> Result<PadicNumber> {
    eval_log_hg_inner(a, alpha, p, n, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn rat(n: i64, d: i64) -> PRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn half3() -> HGParams {
        HGParams::from_i64_pairs(&[(1, 2), (1, 2), (1, 2)])
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(1, 1), 5), rat(120, 1));
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(pochhammer(&rat(-2, 1), 4), rat(0, 1));
    }

    #[test]
    fn hg_series_examples() {
        let ones = hg_series(&HGParams::from_i64_pairs(&[(1, 1)]), 6);
        assert_eq!(ones, TruncSeries::geometric(6));
        let g = hg_series(&HGParams::from_i64_pairs(&[(1, 2), (1, 2)]), 3);
        assert_eq!(g.coeff(0), &rat(1, 1));
        assert_eq!(g.coeff(1), &rat(1, 4));
        assert_eq!(g.coeff(2), &rat(9, 64));
        let h = hg_series(&half3(), 2);
        assert_eq!(h.coeff(1), &rat(1, 8));
    }

    #[test]
    fn scheme_parameters() {
        let a = HGParams::from_scheme(&[2, 2, 2], &[1, 1, 1]);
        assert_eq!(a, half3());
        let b = HGParams::from_scheme(&[3, 3], &[1, 2]);
        assert_eq!(b, HGParams::from_i64_pairs(&[(2, 3), (1, 3)]));
        assert_eq!(b.dual(), HGParams::from_i64_pairs(&[(1, 3), (2, 3)]));
    }

    #[test]
    fn padic_series_matches_exact_reduction() {
        for (a, p) in [
            (HGParams::from_i64_pairs(&[(1, 2), (1, 2)]), 5u64),
            (HGParams::from_i64_pairs(&[(1, 3), (2, 3)]), 7),
            (half3(), 13),
        ] {
            let exact = hg_series(&a, 60).to_padic(p, 4).unwrap();
            let fast = hg_series_padic(&a, p, 4, 60).unwrap();
            assert_eq!(exact, fast, "a={a:?} p={p}");
        }
    }

    #[test]
    fn terminating_series_handled() {
        // a = (-2): (−2)_n vanishes for n >= 3
        let a = HGParams::from_i64_pairs(&[(-2, 1)]);
        let exact = hg_series(&a, 8).to_padic(5, 3).unwrap();
        let fast = hg_series_padic(&a, 5, 3, 8).unwrap();
        assert_eq!(exact, fast);
    }

    #[test]
    fn h_polynomial_examples() {
        let h = h_polynomial(&HGParams::from_i64_pairs(&[(1, 2), (1, 2)]), 5).unwrap();
        assert_eq!(h, vec![1, 4, 1]);
        let ones = h_polynomial(&HGParams::from_i64_pairs(&[(1, 1)]), 7).unwrap();
        assert_eq!(ones, vec![1; 7]);
        // orbit length 2: product of two degree-<5 factors, and F is
        // symmetric under permuting the tuple
        let a = HGParams::from_i64_pairs(&[(1, 3), (2, 3)]);
        let h2 = h_polynomial(&a, 5).unwrap();
        let f = hg_prefix_mod_p(&a, 5).unwrap();
        let mut sq = vec![0u64; 2 * f.len() - 1];
        for (i, &x) in f.iter().enumerate() {
            for (j, &y) in f.iter().enumerate() {
                sq[i + j] = (sq[i + j] + x * y) % 5;
            }
        }
        while sq.last() == Some(&0) {
            sq.pop();
        }
        assert_eq!(h2, sq);
    }

    #[test]
    fn dwork_ratio_geometric_is_exact() {
        // a = (1), c = 1: [F]_{<p^n}/[F(t^p)]_{<p^n} = (1−t^p)/(1−t),
        // i.e. 1 + t + … + t^{p−1} on the nose at every level
        let a = HGParams::from_i64_pairs(&[(1, 1)]);
        for n in [1u32, 2] {
            let r = dwork_ratio(&a, &FrobeniusSpec::identity(5), n, 5usize.pow(n)).unwrap();
            for k in 0..r.trunc() {
                let want = if k < 5 { 1u64 } else { 0 };
                assert_eq!(r.coeff(k).residue(), &BigUint::from(want), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn dwork_ratio_half_half_level_one() {
        let a = HGParams::from_i64_pairs(&[(1, 2), (1, 2)]);
        let r = dwork_ratio(&a, &FrobeniusSpec::identity(5), 1, 5).unwrap();
        let digits: Vec<u64> = r
            .coeffs()
            .iter()
            .map(|c| c.residue().to_u64().unwrap())
            .collect();
        assert_eq!(digits, vec![1, 4, 1, 0, 0]);
    }

    #[test]
    fn dwork_ratio_window_enforced() {
        let a = HGParams::from_i64_pairs(&[(1, 2), (1, 2)]);
        assert!(matches!(
            dwork_ratio(&a, &FrobeniusSpec::identity(5), 1, 6),
            Err(Error::PrecisionWindowExceeded { .. })
        ));
    }

    #[test]
    fn g_sigma_unit_parameter() {
        // a = (1), c = 1: G = Σ_{p∤k} t^k/k with zero constant term
        let a = HGParams::from_i64_pairs(&[(1, 1)]);
        let g = g_sigma(&a, &FrobeniusSpec::identity(5), 3, 12).unwrap();
        assert!(g.coeff(0).is_zero_residue());
        for k in 1..12usize {
            // at multiples of p the integrand coefficient is 1 − c^{k/p} = 0
            let expect = if k % 5 == 0 {
                PadicNumber::zero(5, 3)
            } else {
                padic::reduce(&rat(1, k as i64), 5, 3).unwrap()
            };
            assert_eq!(g.coeff(k), &expect, "k={k}");
        }
    }

    #[test]
    fn g_sigma_constant_term_examples() {
        let g = g_sigma_constant(&half3(), &FrobeniusSpec::identity(7), 3).unwrap();
        let psi = psi_tilde(&rat(1, 2), 7, 3).unwrap();
        assert_eq!(g, psi.mul_i64(3));
    }

    #[test]
    fn log_hg_level_one_unit_parameter() {
        // [G]_{<5} = t + 3t² + 2t³ + 4t⁴ and [F]_{<5} = 1 + t + … + t⁴,
        // whose inverse mod t⁵ is 1 − t; the ratio is t + 2t² + 4t³ + 2t⁴
        let a = HGParams::from_i64_pairs(&[(1, 1)]);
        let f = log_hg(&a, &FrobeniusSpec::identity(5), 1).unwrap();
        let digits: Vec<u64> = f
            .coeffs()
            .iter()
            .map(|c| c.residue().to_u64().unwrap())
            .collect();
        assert_eq!(digits, vec![0, 1, 2, 4, 2]);
    }

    #[test]
    fn eval_log_hg_guards() {
        assert_eq!(
            eval_log_hg(&half3(), &rat(5, 1), 5, 2),
            Err(Error::BadFiber)
        );
        assert_eq!(
            eval_log_hg(&half3(), &rat(6, 1), 5, 2),
            Err(Error::BadFiber)
        );
        assert_eq!(
            eval_log_hg(&half3(), &rat(2, 1), 3, 2),
            Err(Error::SmallPrime { p: 3, bound: 3 })
        );
        // h(t) = (1+t)^2 mod 5 vanishes at −1: the supersingular fiber
        assert_eq!(
            eval_log_hg(&half3(), &rat(-1, 1), 5, 2),
            Err(Error::BadHasse)
        );
    }

    #[test]
    fn eval_log_hg_two_level_consistency() {
        // h_7 = 1 + t + 6t² + 6t³ has h(2) = 5, a good ordinary fiber
        let v2 = eval_log_hg(&half3(), &rat(2, 1), 7, 2).unwrap();
        let v3 = eval_log_hg(&half3(), &rat(2, 1), 7, 3).unwrap();
        assert_eq!(v3.reduce_precision(2), v2);
        let v2b = eval_log_hg(&half3(), &rat(-8, 1), 5, 2).unwrap();
        let v3b = eval_log_hg(&half3(), &rat(-8, 1), 5, 3).unwrap();
        assert_eq!(v3b.reduce_precision(2), v2b);
    }
}
