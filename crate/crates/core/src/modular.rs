//! Integer q-expansions of the four weight-3 eta-product newforms, their
//! quadratic twists, Fourier coefficients at primes, and the weight-3
//! unit root. Expansions are exact integer polynomial products of sparse
//! pentagonal/Jacobi series; no modular-symbols machinery.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::padic::{hensel_quadratic, PadicNumber, PRational};

/// Maximum expansion length.
pub const T_BUDGET: usize = 100_000;

/// Coefficients of Π_{n≥1} (1 − q^n)^e up to (not including) q^T.
pub fn eta_power(e: u32, t: usize) -> Vec<i64> {
    assert!(e >= 1 && t <= T_BUDGET);
    // pentagonal-number series for e = 1, multiplied in e times
    let mut pent: Vec<(usize, i64)> = vec![(0, 1)];
    let mut k = 1i64;
    loop {
        let e1 = k * (3 * k - 1) / 2;
        let e2 = k * (3 * k + 1) / 2;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        if e1 as usize >= t && e2 as usize >= t {
            break;
        }
        if (e1 as usize) < t {
            pent.push((e1 as usize, sign));
        }
        if (e2 as usize) < t {
            pent.push((e2 as usize, sign));
        }
        k += 1;
    }
    let mut acc = vec![0i64; t];
    acc[0] = 1;
    for _ in 0..e {
        let mut next = vec![0i64; t];
        for (i, &c) in acc.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(j, s) in &pent {
                if i + j < t {
                    next[i + j] += c * s;
                }
            }
        }
        acc = next;
    }
    acc
}

/// Jacobi's formula for Π (1 − q^n)^3 = Σ_{k≥0} (−1)^k (2k+1) q^{k(k+1)/2};
/// the independent route to the cube used by the expansion cross checks.
pub fn jacobi_cube(t: usize) -> Vec<i64> {
    let mut out = vec![0i64; t];
    let mut k = 0i64;
    loop {
        let e = (k * (k + 1) / 2) as usize;
        if e >= t {
            break;
        }
        out[e] = if k % 2 == 0 { 2 * k + 1 } else { -(2 * k + 1) };
        k += 1;
    }
    out
}

/// An eta product Π_j η(m_j z)^{e_j}.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaProduct {
    /// (multiplier m_j, exponent e_j) pairs.
    pub factors: Vec<(u32, u32)>,
}

impl EtaProduct {
    pub fn new(factors: Vec<(u32, u32)>) -> Self {
        assert!(!factors.is_empty());
        EtaProduct { factors }
    }

    /// Prefactor exponent (Σ e_j·m_j)/24; must be integral.
    pub fn prefactor(&self) -> Result<u32> {
        let s: u32 = self.factors.iter().map(|&(m, e)| m * e).sum();
        if s % 24 != 0 {
            return Err(Error::NonIntegralPrefactor { num: s as u64 });
        }
        Ok(s / 24)
    }
}

/// Integer q-expansion Σ a_n q^n, stored with a_0 = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct QExpansion {
    coeffs: Vec<i64>,
}

impl QExpansion {
    pub fn new(coeffs: Vec<i64>) -> Self {
        QExpansion { coeffs }
    }

    /// a_n; zero beyond the stored range.
    pub fn a(&self, n: usize) -> i64 {
        self.coeffs.get(n).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }
}

/// q^{prefactor}·Π_j eta_power(e_j)(q^{m_j}) to order T.
pub fn eta_product_expansion(spec: &EtaProduct, t: usize) -> Result<QExpansion> {
    assert!(t >= 2 && t <= T_BUDGET);
    let pref = spec.prefactor()? as usize;
    let mut acc = vec![0i64; t];
    acc[0] = 1;
    for &(m, e) in &spec.factors {
        let inner_len = (t - 1) / (m as usize) + 1;
        let f = eta_power(e, inner_len);
        let mut next = vec![0i64; t];
        for (i, &c) in acc.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (k, &fk) in f.iter().enumerate() {
                if fk == 0 {
                    continue;
                }
                let deg = i + k * m as usize;
                if deg < t {
                    next[deg] += c * fk;
                }
            }
        }
        acc = next;
    }
    let mut out = vec![0i64; t];
    for (i, &c) in acc.iter().enumerate() {
        if i + pref < t {
            out[i + pref] = c;
        }
    }
    Ok(QExpansion::new(out))
}

/// Kronecker symbol (a | n), the fully extended quadratic character.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut res = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            res = -res;
        }
    }
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let am8 = a.rem_euclid(8);
        if am8 == 3 || am8 == 5 {
            res = -res;
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let nm8 = n.rem_euclid(8);
            if nm8 == 3 || nm8 == 5 {
                res = -res;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            res = -res;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        res
    } else {
        0
    }
}

/// χ_D-twist: a_n ↦ kronecker(D, n)·a_n.
pub fn twist(f: &QExpansion, d: i64) -> QExpansion {
    QExpansion::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(n, &a)| kronecker(d, n as i64) * a)
            .collect(),
    )
}

/// The four weight-3 eta-product newforms (levels 16, 8, 12, 7).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormName {
    A,
    B,
    C,
    D,
}

impl FormName {
    pub fn parse(s: &str) -> Option<FormName> {
        match s {
            "A" | "a" => Some(FormName::A),
            "B" | "b" => Some(FormName::B),
            "C" | "c" => Some(FormName::C),
            "D" | "d" => Some(FormName::D),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FormName::A => "A",
            FormName::B => "B",
            FormName::C => "C",
            FormName::D => "D",
        }
    }

    pub fn level(&self) -> u32 {
        match self {
            FormName::A => 16,
            FormName::B => 8,
            FormName::C => 12,
            FormName::D => 7,
        }
    }
}

/// A = η⁶(4z), B = η²(z)η(2z)η(4z)η²(8z), C = η³(2z)η³(6z), D = η³(z)η³(7z).
pub fn eta_product_for(name: FormName) -> EtaProduct {
    let factors = match name {
        FormName::A => vec![(4, 6)],
        FormName::B => vec![(1, 2), (2, 1), (4, 1), (8, 2)],
        FormName::C => vec![(2, 3), (6, 3)],
        FormName::D => vec![(1, 3), (7, 3)],
    };
    EtaProduct::new(factors)
}

pub fn form_expansion(name: FormName, t: usize) -> QExpansion {
    eta_product_expansion(&eta_product_for(name), t).expect("paper forms have integral prefactor")
}

/// A base form with an optional quadratic twist.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedForm {
    pub base: FormName,
    pub twist: Option<i64>,
}

impl TwistedForm {
    pub fn label(&self) -> String {
        match self.twist {
            None => self.base.label().to_string(),
            Some(d) => format!("{}(x){}", self.base.label(), format_chi(d)),
        }
    }

    pub fn expansion(&self, t: usize) -> QExpansion {
        let f = form_expansion(self.base, t);
        match self.twist {
            None => f,
            Some(d) => twist(&f, d),
        }
    }
}

fn format_chi(d: i64) -> String {
    format!("chi({d})")
}

/// The Hecke eigenform attached to the K3 parameter a, for a in the
/// modular list {−1, 4, 1/4, −8, −1/8, 64, 1/64}.
pub fn form_for_parameter(a: &PRational) -> Result<TwistedForm> {
    let table: [(i64, i64, FormName, Option<i64>); 7] = [
        (-1, 1, FormName::B, Some(-4)),
        (4, 1, FormName::C, None),
        (1, 4, FormName::C, Some(-4)),
        (-8, 1, FormName::A, None),
        (-1, 8, FormName::A, Some(8)),
        (64, 1, FormName::D, None),
        (1, 64, FormName::D, Some(-4)),
    ];
    for (n, d, base, tw) in table {
        if a == &PRational::new(BigInt::from(n), BigInt::from(d)) {
            return Ok(TwistedForm { base, twist: tw });
        }
    }
    Err(Error::NotModular {
        a: crate::padic::format_rational(a),
    })
}

/// Unit root α_p of T² − a_p·T + p², read off the expansion. Requires
/// ordinarity p ∤ a_p.
pub fn modular_unit_root(f: &QExpansion, p: u64, prec: u32) -> Result<PadicNumber> {
    let ap = f.a(p as usize);
    if ap.rem_euclid(p as i64) == 0 {
        return Err(Error::NotOrdinary);
    }
    let norm = BigInt::from(p) * BigInt::from(p);
    hensel_quadratic(&BigInt::from(ap), &norm, p, prec)
}

/// Fundamental discriminant of the square class of a nonzero rational.
pub fn fundamental_discriminant(x: &PRational) -> i64 {
    assert!(!x.is_zero());
    let n = (x.numer() * x.denom()).to_i64().expect("small parameter");
    let neg = n < 0;
    let mut m = n.unsigned_abs();
    let mut d = 2u64;
    while d * d <= m {
        while m % (d * d) == 0 {
            m /= d * d;
        }
        d += 1;
    }
    let sf = if neg { -(m as i64) } else { m as i64 };
    if sf.rem_euclid(4) == 1 {
        sf
    } else {
        4 * sf
    }
}

/// Registry JSON: { "form": name, "ap": { "5": a_5, … } }.
pub fn form_registry_json(form: &TwistedForm, bound: usize) -> Value {
    let f = form.expansion(bound + 1);
    let mut ap = serde_json::Map::new();
    for p in primes_below(bound as u64 + 1) {
        ap.insert(p.to_string(), json!(f.a(p as usize)));
    }
    json!({ "form": form.label(), "ap": Value::Object(ap) })
}

pub fn primes_below(n: u64) -> Vec<u64> {
    let mut out = vec![];
    'outer: for k in 2..n {
        for d in 2..k {
            if d * d > k {
                break;
            }
            if k % d == 0 {
                continue 'outer;
            }
        }
        out.push(k);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> PRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn eta_power_pentagonal_prefix() {
        assert_eq!(eta_power(1, 9), vec![1, -1, -1, 0, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn eta_power_jacobi_prefix() {
        assert_eq!(eta_power(3, 7), jacobi_cube(7));
        assert_eq!(jacobi_cube(7), vec![1, -3, 0, 5, 0, 0, -7]);
    }

    #[test]
    fn eta_power_six_two_routes() {
        // direct sixth power against the squared Jacobi cube
        let direct = eta_power(6, 7);
        assert_eq!(direct, vec![1, -6, 9, 10, -30, 0, 11]);
        let cube = jacobi_cube(7);
        let mut sq = vec![0i64; 7];
        for i in 0..7 {
            for j in 0..7 - i {
                sq[i + j] += cube[i] * cube[j];
            }
        }
        assert_eq!(direct, sq);
    }

    #[test]
    fn form_a_coefficients() {
        let a = form_expansion(FormName::A, 30);
        assert_eq!(a.a(1), 1);
        assert_eq!(a.a(5), -6);
        assert_eq!(a.a(9), 9);
        assert_eq!(a.a(13), 10);
        assert_eq!(a.a(17), -30);
        assert_eq!(a.a(29), 42);
    }

    #[test]
    fn prefactors() {
        assert_eq!(eta_product_for(FormName::A).prefactor().unwrap(), 1);
        assert_eq!(eta_product_for(FormName::B).prefactor().unwrap(), 1);
        assert_eq!(eta_product_for(FormName::C).prefactor().unwrap(), 1);
        assert_eq!(eta_product_for(FormName::D).prefactor().unwrap(), 1);
        assert_eq!(
            EtaProduct::new(vec![(5, 1)]).prefactor(),
            Err(Error::NonIntegralPrefactor { num: 5 })
        );
        for name in [FormName::A, FormName::B, FormName::C, FormName::D] {
            assert_eq!(form_expansion(name, 10).a(1), 1, "{name:?} normalized");
        }
    }

    #[test]
    fn twist_examples() {
        let a = form_expansion(FormName::A, 20);
        let t = twist(&a, -4);
        for n in (2..20).step_by(2) {
            assert_eq!(t.a(n), 0, "chi_-4 kills even indices");
        }
        let tt = twist(&t, -4);
        for n in (1..20).step_by(2) {
            assert_eq!(tt.a(n), a.a(n), "twisting twice fixes odd indices");
        }
        // chi_8(5) = -1
        assert_eq!(kronecker(8, 5), -1);
        let t8 = twist(&a, 8);
        assert_eq!(t8.a(5), 6);
    }

    #[test]
    fn kronecker_against_legendre() {
        for p in [3i64, 5, 7, 11, 13, 17] {
            for a in 1..p {
                // Euler criterion over F_p
                let mut e = 1i64;
                for _ in 0..(p - 1) / 2 {
                    e = e * a % p;
                }
                let legendre = if e == 1 { 1 } else { -1 };
                assert_eq!(kronecker(a, p), legendre, "a={a} p={p}");
            }
        }
        assert_eq!(kronecker(-4, 7), -1);
        assert_eq!(kronecker(-4, 5), 1);
    }

    #[test]
    fn parameter_table() {
        assert_eq!(
            form_for_parameter(&rat(-8, 1)).unwrap(),
            TwistedForm {
                base: FormName::A,
                twist: None
            }
        );
        assert_eq!(
            form_for_parameter(&rat(4, 1)).unwrap(),
            TwistedForm {
                base: FormName::C,
                twist: None
            }
        );
        assert!(matches!(
            form_for_parameter(&rat(2, 1)),
            Err(Error::NotModular { .. })
        ));
    }

    #[test]
    fn unit_root_examples() {
        let a = form_expansion(FormName::A, 20);
        let r = modular_unit_root(&a, 5, 2).unwrap();
        assert_eq!(r.residue().to_u64().unwrap(), 19);
        // CM vanishing at 7 ≡ 3 mod 4
        assert_eq!(modular_unit_root(&a, 7, 2), Err(Error::NotOrdinary));
        // Hensel contract alpha_p (a_p − alpha_p) = p^2
        let al = modular_unit_root(&a, 13, 4).unwrap();
        let ap = PadicNumber::from_i64(13, 4, a.a(13));
        let prod = al.mul(&ap.sub(&al));
        assert_eq!(prod, PadicNumber::from_i64(13, 4, 169));
    }

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(fundamental_discriminant(&rat(2, 1)), 8);
        assert_eq!(fundamental_discriminant(&rat(-3, 1)), -3);
        assert_eq!(fundamental_discriminant(&rat(3, 4)), 12);
        assert_eq!(fundamental_discriminant(&rat(9, 1)), 1);
        assert_eq!(fundamental_discriminant(&rat(9, 8)), 8);
        assert_eq!(fundamental_discriminant(&rat(-63, 1)), -7);
        assert_eq!(fundamental_discriminant(&rat(63, 64)), 28);
    }
}
