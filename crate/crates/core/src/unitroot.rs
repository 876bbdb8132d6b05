//! The unit-root vector attached to a hypergeometric parameter tuple: its
//! Gauss–Manin coefficients, the D-kernel property, p-integrality of the
//! normalized coordinates, and the unit Frobenius eigenvalue at Teichmüller
//! points computed through Dwork-ratio truncations.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypergeom::{
    hasse_unit_at, hg_operator, hg_series, hg_series_padic, HGParams,
};
use crate::padic::{self, teichmuller, PadicNumber};
use crate::series::{DifferentialOperator, QPoly, RationalFunction, TruncSeries};

/// Basis data for the connection on the eigenspace spanned by
/// ω, Dω, …, D^dω: the coefficients q_0, …, q_d with
/// (1−t)(D^{d+1} + q_d D^d + ⋯ + q_0) = P_{HG,a}.
#[derive(Debug, Clone)]
pub struct GaussManinModel {
    a: HGParams,
    q: Vec<RationalFunction>,
}

/// q_k = −s_{d+1−k}·t/(1−t) where (t+a_0)⋯(t+a_d) = t^{d+1} + s_1 t^d + ⋯ + s_{d+1}.
pub fn q_coeffs(a: &HGParams) -> Vec<RationalFunction> {
    let d = a.d();
    // elementary symmetric functions of the a_k
    let mut sym = vec![BigRational::zero(); d + 2];
    sym[0] = BigRational::one();
    for ak in a.entries() {
        for i in (1..sym.len()).rev() {
            let add = &sym[i - 1] * ak;
            sym[i] = &sym[i] + add;
        }
    }
    (0..=d)
        .map(|k| RationalFunction::t_over_one_minus_t(-&sym[d + 1 - k]))
        .collect()
}

impl GaussManinModel {
    pub fn new(a: HGParams) -> Self {
        let q = q_coeffs(&a);
        GaussManinModel { a, q }
    }

    pub fn params(&self) -> &HGParams {
        &self.a
    }

    pub fn q(&self) -> &[RationalFunction] {
        &self.q
    }

    /// The inner operator P' = D^{d+1} + q_d D^d + ⋯ + q_0.
    pub fn inner_operator(&self) -> DifferentialOperator {
        let d = self.a.d();
        let mut coeffs = self.q.clone();
        coeffs.push(RationalFunction::one());
        debug_assert_eq!(coeffs.len(), d + 2);
        DifferentialOperator::new(coeffs)
    }

    /// Checks (1−t)·P' = P_{HG,a} as operators.
    pub fn verify_factorization(&self) -> bool {
        let lhs = self
            .inner_operator()
            .premultiply(&RationalFunction::from_poly(QPoly::one_minus_t()));
        lhs == hg_operator(&self.a)
    }
}

/// The operator P = D^{d+1} + Σ_{j=0}^{d} (−1)^{d+1−j} D^j ⋆ q_j whose
/// kernel in the Laurent-series field is spanned by y_d = (1−t)·F_ǎ;
/// it satisfies P ⋆ (1−t) = P_{HG,ǎ}.
pub fn adjoint_operator(a: &HGParams) -> DifferentialOperator {
    let d = a.d();
    let q = q_coeffs(a);
    let mut acc = {
        let mut c = vec![RationalFunction::zero(); d + 2];
        c[d + 1] = RationalFunction::one();
        DifferentialOperator::new(c)
    };
    for (j, qj) in q.iter().enumerate() {
        let mut c = vec![RationalFunction::zero(); j + 1];
        c[j] = RationalFunction::one();
        let dj = DifferentialOperator::new(c);
        let term = dj.compose(&DifferentialOperator::multiplier(qj.clone()));
        let sign = if (d + 1 - j) % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        acc = acc.add(&term.scale(&sign));
    }
    acc
}

/// The coordinates y_0, …, y_d of the D-kernel vector ŷ = Σ y_k D^k ω,
/// over exact rationals. `normalized` marks the η-form (divided by F_ǎ).
#[derive(Debug, Clone)]
pub struct UnitRootVector {
    y: Vec<TruncSeries<BigRational>>,
    normalized: bool,
}

impl UnitRootVector {
    pub fn coords(&self) -> &[TruncSeries<BigRational>] {
        &self.y
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }
}

/// Solves the descending recursion y_d = (1−t)·F_ǎ(t),
/// y_i = q_{i+1}·y_d − D(y_{i+1}) over exact rationals to order T.
pub fn unit_root_vector(a: &HGParams, t: usize) -> Result<UnitRootVector> {
    assert!(t >= 2);
    let d = a.d();
    let q = q_coeffs(a);
    let dual = a.dual();
    let f_dual = hg_series(&dual, t);
    let one_minus_t = QPoly::one_minus_t();
    let one = BigRational::one();
    let omt_series = RationalFunction::from_poly(one_minus_t).to_series(&one, t)?;
    let y_d = omt_series.mul(&f_dual);
    let mut ys = vec![y_d.clone()];
    for i in (0..d).rev() {
        let prev = &ys[ys.len() - 1];
        // q_{i+1}·y_d: the (1−t) in y_d cancels the pole of q_{i+1}
        let qy = q[i + 1].to_series(&one, t)?.mul(&y_d);
        let yi = qy.sub(&prev.theta());
        ys.push(yi);
    }
    ys.reverse();
    Ok(UnitRootVector {
        y: ys,
        normalized: false,
    })
}

/// η-form: every coordinate divided by F_ǎ; the top coordinate becomes
/// exactly (1 − t).
pub fn normalize(a: &HGParams, v: &UnitRootVector) -> Result<UnitRootVector> {
    let t = v.y[0].trunc();
    let inv = hg_series(&a.dual(), t).invert()?;
    Ok(UnitRootVector {
        y: v.y.iter().map(|yi| yi.mul(&inv)).collect(),
        normalized: true,
    })
}

/// Outcome of the D-kernel verification: every coordinate identity
/// z_i + D(z_{i+1}) − q_{i+1} z_d (0 ≤ i < d) and D(z_0) − q_d z_d must
/// vanish to order T−1.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCheck {
    pub ok: bool,
    /// First failing (coordinate, degree).
    pub failure: Option<(usize, usize)>,
}

pub fn check_kernel(model: &GaussManinModel, v: &UnitRootVector, t: usize) -> Result<KernelCheck> {
    assert!(t >= 3);
    let d = model.a.d();
    assert_eq!(v.y.len(), d + 1);
    let one = BigRational::one();
    let order = t - 1;
    let zd = &v.y[d];
    let check = |expr: TruncSeries<BigRational>, coord: usize| -> Option<(usize, usize)> {
        for deg in 0..order.min(expr.trunc()) {
            if !expr.coeff(deg).is_zero() {
                return Some((coord, deg));
            }
        }
        None
    };
    for i in 0..d {
        let expr = v.y[i]
            .add(&v.y[i + 1].theta())
            .sub(&model.q[i + 1].to_series(&one, t)?.mul(zd));
        if let Some(f) = check(expr, i) {
            return Ok(KernelCheck {
                ok: false,
                failure: Some(f),
            });
        }
    }
    // coefficient of ω itself: D^{d+1}ω = −(q_d D^d + … + q_0)ω puts q_0
    // against the z_d D^{d+1} term, so the last identity is D(z_0) = q_0 z_d
    let last = v.y[0]
        .theta()
        .sub(&model.q[0].to_series(&one, t)?.mul(zd));
    if let Some(f) = check(last, d) {
        return Ok(KernelCheck {
            ok: false,
            failure: Some(f),
        });
    }
    Ok(KernelCheck {
        ok: true,
        failure: None,
    })
}

/// p-integrality report for the normalized coordinates y_i/F_ǎ.
#[derive(Debug, Clone)]
pub struct IntegralityReport {
    pub p: u64,
    pub order: usize,
    /// (coordinate, degree, offending coefficient) triples.
    pub violations: Vec<(usize, usize, BigRational)>,
}

impl IntegralityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Expands y_i/F_ǎ over exact rationals to order T ≤ p^n and records any
/// coefficient with negative p-valuation.
pub fn integrality_check(a: &HGParams, p: u64, n: u32, t: usize) -> Result<IntegralityReport> {
    let window = (p as usize).checked_pow(n).unwrap_or(usize::MAX);
    if t > window {
        return Err(Error::PrecisionWindowExceeded { t, pn: window });
    }
    let v = unit_root_vector(a, t)?;
    let eta = normalize(a, &v)?;
    let mut violations = Vec::new();
    for (i, yi) in eta.y.iter().enumerate() {
        for deg in 0..yi.trunc() {
            let c = yi.coeff(deg);
            if !padic::is_p_integral(c, p) {
                violations.push((i, deg, c.clone()));
            }
        }
    }
    Ok(IntegralityReport {
        p,
        order: t,
        violations,
    })
}

/// Unit eigenvalue of the p^m-th Frobenius at the Teichmüller point over
/// â: the telescoping product of Dwork ratios along the orbit, each factor
/// evaluated through its level-N truncations. At a Teichmüller point t the
/// substitution t ↦ t^p is the identity, so the i-th factor reduces to
/// [F_{a^{(i)}}]_{<p^N}(ω) / [F_{a^{(i+1)}}]_{<p^{N−1}}(ω).
pub fn frobenius_unit_eigenvalue(
    a: &HGParams,
    ahat: u64,
    p: u64,
    m: u32,
    prec: u32,
) -> Result<PadicNumber> {
    assert!(m >= 1 && prec >= 1);
    let (orbit, cycle) = a.orbit(p)?;
    if m % cycle != 0 {
        return Err(Error::OrbitMismatch { m });
    }
    if ahat % p == 0 || ahat % p == 1 {
        return Err(Error::BadFiber);
    }
    if !hasse_unit_at(a, p, ahat % p)? {
        return Err(Error::BadHasse);
    }
    let omega = teichmuller(ahat, p, prec)?;
    let t_full = (p as usize)
        .checked_pow(prec)
        .ok_or(Error::PrecisionWindowExceeded {
            t: usize::MAX,
            pn: usize::MAX,
        })?;
    let t_small = t_full / p as usize;
    let member = |i: u32| -> &HGParams { &orbit[(i % cycle) as usize] };
    let mut acc = PadicNumber::one(p, prec);
    for i in 0..m {
        let num = hg_series_padic(member(i), p, prec, t_full)?;
        let den = hg_series_padic(member(i + 1), p, prec, t_small.max(1))?;
        let nv = num.eval_polynomial(&omega);
        let dv = den.eval_polynomial(&omega);
        acc = acc.mul(&nv.div(&dv).map_err(|_| Error::BadHasse)?);
    }
    Ok(acc)
}

/// The same eigenvalue with the orbit rotated to start at a^{(r)}; the
/// product over a full cycle is rotation independent.
pub fn frobenius_unit_eigenvalue_rotated(
    a: &HGParams,
    rotation: u32,
    ahat: u64,
    p: u64,
    m: u32,
    prec: u32,
) -> Result<PadicNumber> {
    let (orbit, cycle) = a.orbit(p)?;
    let start = orbit[(rotation % cycle) as usize].clone();
    frobenius_unit_eigenvalue(&start, ahat, p, m, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn params(pairs: &[(i64, i64)]) -> HGParams {
        HGParams::from_i64_pairs(pairs)
    }

    #[test]
    fn q_coeffs_examples() {
        // a = (1/2, 1/2): s1 = 1, s2 = 1/4
        let q = q_coeffs(&params(&[(1, 2), (1, 2)]));
        assert_eq!(q[1], RationalFunction::t_over_one_minus_t(rat(-1, 1)));
        assert_eq!(q[0], RationalFunction::t_over_one_minus_t(rat(-1, 4)));
        let q = q_coeffs(&params(&[(1, 1)]));
        assert_eq!(q[0], RationalFunction::t_over_one_minus_t(rat(-1, 1)));
    }

    #[test]
    fn adjoint_factors_through_one_minus_t() {
        // P ⋆ (1−t) = P_{HG,ǎ}; a = (1/2,1/2) is self-dual
        for a in [
            params(&[(1, 2), (1, 2)]),
            params(&[(1, 3), (2, 3)]),
            params(&[(1, 2), (1, 2), (1, 2)]),
            params(&[(1, 6), (5, 6), (1, 2)]),
        ] {
            let p = adjoint_operator(&a);
            let omt = DifferentialOperator::multiplier(RationalFunction::from_poly(
                QPoly::one_minus_t(),
            ));
            assert_eq!(p.compose(&omt), crate::hypergeom::hg_operator(&a.dual()), "{a:?}");
        }
    }

    #[test]
    fn adjoint_annihilates_y_d() {
        let a = params(&[(1, 2), (1, 2)]);
        let p = adjoint_operator(&a);
        let v = unit_root_vector(&a, 60).unwrap();
        let out = p.apply(v.coords().last().unwrap()).unwrap();
        for deg in 0..58 {
            assert!(out.coeff(deg).is_zero(), "deg={deg}");
        }
    }

    #[test]
    fn factorization_identity() {
        for a in [
            params(&[(1, 1)]),
            params(&[(1, 2), (1, 2)]),
            params(&[(1, 2), (1, 2), (1, 2)]),
            params(&[(1, 3), (2, 3), (1, 2)]),
        ] {
            assert!(GaussManinModel::new(a.clone()).verify_factorization(), "{a:?}");
        }
    }

    #[test]
    fn unit_root_vector_degenerate_and_top_coeff() {
        // d = 0, a = (1): dual = (0), F_(0) = 1, y_0 = 1 − t
        let v = unit_root_vector(&params(&[(1, 1)]), 8).unwrap();
        assert_eq!(v.coords().len(), 1);
        let y0 = &v.coords()[0];
        assert_eq!(y0.coeff(0), &rat(1, 1));
        assert_eq!(y0.coeff(1), &rat(-1, 1));
        for k in 2..8 {
            assert!(y0.coeff(k).is_zero());
        }
        // y_d always has constant term 1
        for a in [params(&[(1, 2), (1, 2)]), params(&[(1, 2), (1, 2), (1, 2)])] {
            let v = unit_root_vector(&a, 6).unwrap();
            assert_eq!(v.coords().last().unwrap().coeff(0), &rat(1, 1));
        }
    }

    #[test]
    fn kernel_check_d0_and_d1() {
        let a0 = params(&[(1, 1)]);
        let m0 = GaussManinModel::new(a0.clone());
        let v0 = unit_root_vector(&a0, 30).unwrap();
        assert!(check_kernel(&m0, &v0, 30).unwrap().ok);

        let a1 = params(&[(1, 2), (1, 2)]);
        let m1 = GaussManinModel::new(a1.clone());
        let v1 = unit_root_vector(&a1, 100).unwrap();
        assert!(check_kernel(&m1, &v1, 100).unwrap().ok);
    }

    #[test]
    fn kernel_check_detects_perturbation() {
        let a = params(&[(1, 2), (1, 2)]);
        let m = GaussManinModel::new(a.clone());
        let mut v = unit_root_vector(&a, 20).unwrap();
        // add t to y_0
        let mut coeffs = v.y[0].coeffs().to_vec();
        coeffs[1] = &coeffs[1] + rat(1, 1);
        v.y[0] = TruncSeries::new(coeffs);
        let res = check_kernel(&m, &v, 20).unwrap();
        assert!(!res.ok);
        assert_eq!(res.failure, Some((0, 1)));
    }

    #[test]
    fn normalized_top_coordinate_is_one_minus_t() {
        let a = params(&[(1, 2), (1, 2)]);
        let v = unit_root_vector(&a, 40).unwrap();
        let eta = normalize(&a, &v).unwrap();
        let top = eta.coords().last().unwrap();
        assert_eq!(top.coeff(0), &rat(1, 1));
        assert_eq!(top.coeff(1), &rat(-1, 1));
        for k in 2..40 {
            assert!(top.coeff(k).is_zero(), "k={k}");
        }
    }

    #[test]
    fn integrality_examples() {
        let r = integrality_check(&params(&[(1, 1)]), 5, 2, 10).unwrap();
        assert!(r.ok());
        let r = integrality_check(&params(&[(1, 2), (1, 2)]), 5, 2, 25).unwrap();
        assert!(r.ok());
        let r = integrality_check(&params(&[(1, 3), (2, 3)]), 7, 2, 49).unwrap();
        assert!(r.ok());
        assert!(matches!(
            integrality_check(&params(&[(1, 2), (1, 2)]), 5, 1, 25),
            Err(Error::PrecisionWindowExceeded { .. })
        ));
    }

    #[test]
    fn eigenvalue_trivial_parameter() {
        // a = (1): F(t)/F(t^p) at a Teichmüller point is exactly 1
        let a = params(&[(1, 1)]);
        for ahat in [2u64, 3] {
            let e = frobenius_unit_eigenvalue(&a, ahat, 5, 1, 3).unwrap();
            assert!(e.residue().is_one(), "ahat={ahat}");
        }
    }

    #[test]
    fn eigenvalue_guards() {
        let a = params(&[(1, 2), (1, 2)]);
        assert_eq!(
            frobenius_unit_eigenvalue(&a, 5, 5, 1, 3),
            Err(Error::BadFiber)
        );
        assert_eq!(
            frobenius_unit_eigenvalue(&a, 6, 5, 1, 3),
            Err(Error::BadFiber)
        );
        let b = params(&[(1, 3), (2, 3)]);
        assert_eq!(
            frobenius_unit_eigenvalue(&b, 2, 5, 1, 3),
            Err(Error::OrbitMismatch { m: 1 })
        );
    }

    #[test]
    fn eigenvalue_rotation_independence() {
        let a = params(&[(1, 3), (2, 3)]);
        let e0 = frobenius_unit_eigenvalue_rotated(&a, 0, 2, 5, 2, 3).unwrap();
        let e1 = frobenius_unit_eigenvalue_rotated(&a, 1, 2, 5, 2, 3).unwrap();
        assert_eq!(e0, e1);
    }

    #[test]
    fn eigenvalue_cocycle_identity() {
        // eigen(2m) = eigen(m)^2 at a Teichmüller point, since the factor
        // set repeats and t ↦ t^{p^m} fixes ω
        let a = params(&[(1, 2), (1, 2)]);
        let e1 = frobenius_unit_eigenvalue(&a, 3, 7, 1, 3).unwrap();
        let e2 = frobenius_unit_eigenvalue(&a, 3, 7, 2, 3).unwrap();
        assert_eq!(e2, e1.mul(&e1));
    }
}
