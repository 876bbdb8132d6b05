use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The rational has `p` in its denominator.
    #[error("rational is not {p}-integral")]
    NonIntegral { p: u64 },
    /// The operand must be a p-adic unit.
    #[error("operand is not a unit (valuation > 0)")]
    UnitRequired,
    /// Exact division by a power of p would leave the ring of integers.
    #[error("division by p^{k} hits a residue of smaller valuation")]
    NegativeValuation { k: u32 },
    /// The doubling scheme for a p-adic limit failed to settle.
    #[error("limit did not stabilize (implementation bug)")]
    NoStabilization,
    /// p divides the Frobenius trace.
    #[error("p divides the trace: fiber is not ordinary")]
    NotOrdinary,
    /// Constant term of the series is not invertible.
    #[error("series is not invertible: constant term is not a unit")]
    NotInvertible,
    /// Frobenius constant must satisfy c ≡ 1 mod p.
    #[error("Frobenius constant must be ≡ 1 mod p")]
    BadFrobeniusConstant,
    /// dlog integration needs a zero constant term.
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    /// Requested prefix exceeds the stored truncation order.
    #[error("requested prefix {k} exceeds truncation order {t}")]
    TruncationExceeded { k: usize, t: usize },
    /// Requested series window is not covered by the congruence level.
    #[error("series window {t} exceeds p^n = {pn}")]
    PrecisionWindowExceeded { t: usize, pn: usize },
    /// The operator coefficient has a pole at t = 0.
    #[error("operator coefficient has a pole of order {j} at t = 0")]
    PoleAtOrigin { j: i64 },
    /// Evaluation point reduces to 0 or 1 mod p.
    #[error("evaluation point is ≡ 0 or 1 mod p: bad fiber")]
    BadFiber,
    /// Hasse polynomial vanishes at the evaluation point.
    #[error("Hasse polynomial vanishes mod p at the evaluation point")]
    BadHasse,
    /// Theorem hypotheses require p > d + 1.
    #[error("prime {p} too small: need p > {bound}")]
    SmallPrime { p: u64, bound: u64 },
    /// The Dwork orbit does not close up after the requested number of steps.
    #[error("a^({m}) differs from a: orbit length does not divide m")]
    OrbitMismatch { m: u32 },
    /// Enumeration budget exceeded.
    #[error("field size {q} exceeds the enumeration budget {budget}")]
    BudgetExceeded { q: u64, budget: u64 },
    /// The curve does not reduce to a smooth model at p.
    #[error("bad reduction at p = {p}")]
    BadReduction { p: u64 },
    /// Eta-product prefactor exponent is not an integer.
    #[error("eta product prefactor {num}/24 is not integral")]
    NonIntegralPrefactor { num: u64 },
    /// The K3 parameter is outside the modular list.
    #[error("parameter {a} is not in the modular list")]
    NotModular { a: String },
    /// Mixed-prime or mixed-modulus arithmetic.
    #[error("operands live over different primes")]
    PrimeMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
