//! Brute-force point counts over small finite fields: hypergeometric-scheme
//! fibers, the Gauss-type curves, and the Weierstrass models feeding the
//! unit-root cross checks. Naive enumeration with value tables; no
//! character-sum acceleration.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::padic::{self, hensel_quadratic, PadicNumber, PRational};

/// Field size budget for the naive enumerations.
pub const Q_BUDGET: u64 = 1_000_000;
/// Budget for the d-fold product distribution of `count_hg_fiber`.
pub const FIBER_BUDGET: u64 = 100_000_000;

/// F_{p^m} with q = p^m within the brute-force budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteFieldSpec {
    pub p: u64,
    pub m: u32,
}

impl FiniteFieldSpec {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        assert!(m >= 1);
        let q = (p as u128).pow(m);
        if q > Q_BUDGET as u128 {
            return Err(Error::BudgetExceeded {
                q: q.min(u64::MAX as u128) as u64,
                budget: Q_BUDGET,
            });
        }
        Ok(FiniteFieldSpec { p, m })
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.m)
    }
}

/// Small finite field with discrete-log tables. Elements are indices in
/// [0, q): the base-p digits of an index are the coefficients of the
/// polynomial representative.
pub struct Fq {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    // f monic of degree m; result reduced to degree < m
    let m = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (k, &fk) in f.iter().enumerate().take(m) {
            let idx = d - m + k;
            prod[idx] = (prod[idx] + c * (p - fk % p)) % p;
        }
    }
    prod.truncate(m.max(1));
    prod
}

fn poly_pow_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let m = f.len() - 1;
    let mut acc = vec![0u64; m.max(1)];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, f, p);
        }
        b = poly_mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    // f monic of degree m: irreducible iff x^(p^m) = x mod f and
    // x^(p^(m/l)) differs from x for every prime l | m
    let m = (f.len() - 1) as u32;
    let x = vec![0u64, 1];
    let xq = poly_pow_mod(&x, p.pow(m), f, p);
    let mut xv = vec![0u64; (m as usize).max(1)];
    if m >= 2 {
        xv[1] = 1;
    } else {
        // degree 1 is always irreducible
        return true;
    }
    if xq != xv {
        return false;
    }
    let mut rem = m;
    let mut l = 2;
    let mut primes = vec![];
    while rem > 1 {
        if rem % l == 0 {
            primes.push(l);
            while rem % l == 0 {
                rem /= l;
            }
        }
        l += 1;
    }
    for l in primes {
        let e = p.pow(m / l);
        if poly_pow_mod(&x, e, f, p) == xv {
            return false;
        }
    }
    true
}

fn factor_u64(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Fq {
    pub fn new(spec: FiniteFieldSpec) -> Result<Fq> {
        let p = spec.p;
        let m = spec.m;
        let q = spec.q();
        // monic irreducible of degree m
        let modulus: Vec<u64> = if m == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            'outer: for tail in 0..q {
                let mut f = digits(tail, p, m as usize);
                f.push(1);
                if is_irreducible(&f, p) {
                    found = Some(f);
                    break 'outer;
                }
            }
            found.expect("an irreducible polynomial of each degree exists")
        };
        // find a generator and build exp/log tables
        let prime_factors = factor_u64(q - 1);
        let mlen = (m as usize).max(1);
        let idx = |poly: &[u64]| -> u64 {
            let mut acc = 0u64;
            for &c in poly.iter().rev() {
                acc = acc * p + c;
            }
            acc
        };
        let mut gen = 0u64;
        for cand in 2..q {
            let cpoly = digits(cand, p, mlen);
            let ok = prime_factors.iter().all(|&l| {
                idx(&poly_pow_mod(&cpoly, (q - 1) / l, &modulus, p)) != 1
            });
            if ok {
                gen = cand;
                break;
            }
        }
        assert!(gen != 0, "multiplicative group is cyclic");
        let gpoly = digits(gen, p, mlen);
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![0u64; mlen];
        cur[0] = 1;
        for k in 0..(q - 1) as usize {
            let i = idx(&cur);
            exp[k] = i as u32;
            log[i as usize] = k as u32;
            cur = poly_mul_mod(&cur, &gpoly, &modulus, p);
        }
        debug_assert_eq!(idx(&cur), 1, "generator order divides q-1");
        Ok(Fq { p, m, q, exp, log })
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    /// Embeds an integer via the prime subfield.
    pub fn embed(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let p = self.p;
        let mut a = a;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % (self.q - 1)) as usize] as u64
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "division by zero in F_q");
        let l = self.log[a as usize] as u64;
        self.exp[((self.q - 1 - l) % (self.q - 1)) as usize] as u64
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let l = self.log[a as usize] as u128;
        let s = (l * (e as u128 % (self.q as u128 - 1))) % (self.q as u128 - 1);
        self.exp[s as usize] as u64
    }
}

fn digits(mut n: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for d in out.iter_mut() {
        *d = n % p;
        n /= p;
    }
    out
}

/// Reduces a p-integral rational into the prime subfield.
pub fn reduce_to_fq(fq: &Fq, x: &PRational) -> Result<u64> {
    let p = fq.p;
    let pb = BigInt::from(p);
    if (x.denom() % &pb).is_zero() {
        return Err(Error::NonIntegral { p });
    }
    let num = x.numer().mod_floor_u64(p);
    let den = x.denom().mod_floor_u64(p);
    Ok(fq.mul(num, fq.inv(den)))
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        self.mod_floor(&BigInt::from(p)).to_u64().unwrap()
    }
}

/// Counts solutions of (1−x_0^{n_0})⋯(1−x_d^{n_d}) = α in F_q^{d+1} by
/// tabulating the product distribution of the first d coordinates and
/// finishing with a division lookup.
pub fn count_hg_fiber(n_list: &[u32], alpha: &PRational, spec: FiniteFieldSpec) -> Result<u64> {
    assert!(!n_list.is_empty());
    let d = n_list.len() - 1;
    let q = spec.q();
    let budget = (q as u128).pow(d.max(1) as u32);
    if budget > FIBER_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            q: budget.min(u64::MAX as u128) as u64,
            budget: FIBER_BUDGET,
        });
    }
    for &n in n_list {
        assert!(num_integer::gcd(spec.p, n as u64) == 1, "need gcd(q, n_0…n_d) = 1");
    }
    let fq = Fq::new(spec)?;
    let alpha = reduce_to_fq(&fq, alpha)?;
    // distribution of 1 − x^n per coordinate
    let value_dist = |n: u32| -> Vec<u64> {
        let mut dist = vec![0u64; q as usize];
        for x in 0..q {
            let v = fq.sub(1, fq.pow(x, n as u64));
            dist[v as usize] += 1;
        }
        dist
    };
    let mut acc = value_dist(n_list[0]);
    for &n in &n_list[1..d] {
        let next = value_dist(n);
        let mut merged = vec![0u64; q as usize];
        // zero products: either side vanishing forces the product to 0
        let mass_acc: u64 = acc.iter().sum();
        let mass_next: u64 = next.iter().sum();
        merged[0] = acc[0] * mass_next + next[0] * mass_acc - acc[0] * next[0];
        for (a, &ca) in acc.iter().enumerate().skip(1) {
            if ca == 0 {
                continue;
            }
            for (b, &cb) in next.iter().enumerate().skip(1) {
                if cb == 0 {
                    continue;
                }
                let prod = fq.mul(a as u64, b as u64);
                merged[prod as usize] += ca * cb;
            }
        }
        acc = merged;
    }
    let last = value_dist(n_list[d]);
    let mut count = 0u64;
    if alpha == 0 {
        // product vanishes iff some factor vanishes
        count += acc[0] * q;
        for (_, &cw) in acc.iter().enumerate().skip(1) {
            count += cw * last[0];
        }
    } else {
        for (w, &cw) in acc.iter().enumerate().skip(1) {
            if cw == 0 {
                continue;
            }
            let need = fq.div(alpha, w as u64);
            count += cw * last[need as usize];
        }
    }
    Ok(count)
}

/// Affine count of the Gauss-type curve
/// y^n = x^{n−i0}·(1−x)^{n−i1}·(1−(1−t)x)^{i1} over F_q.
pub fn count_gauss_curve(
    n: u32,
    i0: u32,
    i1: u32,
    t_val: &PRational,
    spec: FiniteFieldSpec,
) -> Result<u64> {
    assert!(0 < i0 && i0 < n && 0 < i1 && i1 < n);
    let q = spec.q();
    assert!(q % n as u64 != 0, "need gcd(q, n) = 1");
    let fq = Fq::new(spec)?;
    let t = reduce_to_fq(&fq, t_val)?;
    if t == 0 || t == 1 {
        return Err(Error::BadFiber);
    }
    // how many y solve y^n = c
    let mut root_count = vec![0u64; q as usize];
    for y in 0..q {
        root_count[fq.pow(y, n as u64) as usize] += 1;
    }
    let one_minus_t = fq.sub(1, t);
    let mut total = 0u64;
    for x in 0..q {
        let a = fq.pow(x, (n - i0) as u64);
        let b = fq.pow(fq.sub(1, x), (n - i1) as u64);
        let c = fq.pow(fq.sub(1, fq.mul(one_minus_t, x)), i1 as u64);
        let rhs = fq.mul(fq.mul(a, b), c);
        total += root_count[rhs as usize];
    }
    Ok(total)
}

/// Weierstrass-able models used by the cross checks.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveModel {
    /// E_a: y² = x(x² + 2x − a/(1−a)).
    EA { a: PRational },
    /// E′_a: (1−a)·y² = x(x² + 2x − a/(1−a)), the (1−a)-twist.
    EATwist { a: PRational },
    /// The n = 2 Gauss curve y² = x(1−x)(1−(1−t)x).
    Gauss2 { t: PRational },
}

impl CurveModel {
    pub fn id(&self) -> String {
        match self {
            CurveModel::EA { a } => format!("E_a(a={})", padic::format_rational(a)),
            CurveModel::EATwist { a } => format!("E'_a(a={})", padic::format_rational(a)),
            CurveModel::Gauss2 { t } => format!("gauss2(t={})", padic::format_rational(t)),
        }
    }
}

/// Point-count record for a completed curve over F_q.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveCountReport {
    pub curve: String,
    pub p: u64,
    pub q: u64,
    pub affine: u64,
    pub completed: u64,
    pub trace: i64,
    pub ordinary: bool,
}

impl CurveCountReport {
    pub fn to_json(&self) -> Value {
        json!({
            "curve": self.curve,
            "p": self.p,
            "count": self.completed,
            "a_p": self.trace,
            "ordinary": self.ordinary,
        })
    }
}

fn cubic_params_mod_p(a: &PRational, p: u64) -> Result<u64> {
    // b = a/(1−a) mod p; BadReduction when p divides a denominator, a ≡ 0
    // (node) or a ≡ 1 (b has a pole)
    let one = PRational::from_integer(1.into());
    let om = &one - a;
    let pb = BigInt::from(p);
    if (a.denom() % &pb).is_zero() || (om.numer() % &pb).is_zero() {
        return Err(Error::BadReduction { p });
    }
    let spec = FiniteFieldSpec::new(p, 1)?;
    let fq = Fq::new(spec)?;
    let av = reduce_to_fq(&fq, a)?;
    if av == 0 {
        return Err(Error::BadReduction { p });
    }
    let omv = fq.sub(1, av);
    Ok(fq.div(av, omv))
}

/// Frobenius trace by full enumeration over F_p; the point at infinity is
/// counted once on every model here.
pub fn elliptic_trace(model: &CurveModel, p: u64) -> Result<CurveCountReport> {
    assert!(p >= 3 && p % 2 == 1);
    let spec = FiniteFieldSpec::new(p, 1)?;
    let fq = Fq::new(spec)?;
    // square table
    let mut sq_count = vec![0u64; p as usize];
    for y in 0..p {
        sq_count[fq.mul(y, y) as usize] += 1;
    }
    let affine: u64 = match model {
        CurveModel::EA { a } | CurveModel::EATwist { a } => {
            let b = cubic_params_mod_p(a, p)?;
            let twist = match model {
                CurveModel::EATwist { .. } => {
                    let av = reduce_to_fq(&fq, a)?;
                    fq.sub(1, av)
                }
                _ => 1,
            };
            let twist_inv = fq.inv(twist);
            (0..p)
                .map(|x| {
                    let x2 = fq.mul(x, x);
                    let cubic = fq.mul(x, fq.sub(fq.add(x2, fq.mul(2 % p, x)), b));
                    sq_count[fq.mul(cubic, twist_inv) as usize]
                })
                .sum()
        }
        CurveModel::Gauss2 { t } => {
            let tv = reduce_to_fq(&fq, t)?;
            if tv == 0 || tv == 1 {
                return Err(Error::BadReduction { p });
            }
            let omt = fq.sub(1, tv);
            (0..p)
                .map(|x| {
                    let rhs = fq.mul(fq.mul(x, fq.sub(1, x)), fq.sub(1, fq.mul(omt, x)));
                    sq_count[rhs as usize]
                })
                .sum()
        }
    };
    let completed = affine + 1;
    let trace = p as i64 + 1 - completed as i64;
    // Weil bound for an elliptic curve
    assert!(
        (trace * trace) as u64 <= 4 * p,
        "trace {trace} violates the Weil bound at p={p}"
    );
    Ok(CurveCountReport {
        curve: model.id(),
        p,
        q: p,
        affine,
        completed,
        trace,
        ordinary: trace.rem_euclid(p as i64) != 0,
    })
}

/// Gauss-curve trace over an extension field F_{p^m} (n = 2 model keeps a
/// single point at infinity).
pub fn gauss2_trace_ext(t_val: &PRational, p: u64, m: u32) -> Result<(u64, i64)> {
    let spec = FiniteFieldSpec::new(p, m)?;
    let q = spec.q();
    let affine = count_gauss_curve(2, 1, 1, t_val, spec)?;
    let completed = affine + 1;
    Ok((completed, q as i64 + 1 - completed as i64))
}

/// Which motive the quadratic T² − a·T + norm describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitRootKind {
    /// Weight 2: norm p.
    EllipticCurve,
    /// Weight 3: norm p².
    Weight3,
}

/// Unit root of the Frobenius quadratic attached to a count report.
pub fn unit_root_from_counts(
    report: &CurveCountReport,
    kind: UnitRootKind,
    prec: u32,
) -> Result<PadicNumber> {
    if !report.ordinary {
        return Err(Error::NotOrdinary);
    }
    let p = report.p;
    let norm = match kind {
        UnitRootKind::EllipticCurve => BigInt::from(p),
        UnitRootKind::Weight3 => BigInt::from(p) * BigInt::from(p),
    };
    hensel_quadratic(&BigInt::from(report.trace), &norm, p, prec)
}
