use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    ZeroDenominator,
    #[error("pole at q = {0}: denominator vanishes")]
    Pole(String),
    #[error("essential pole at q=1")]
    EssentialPoleAtOne,
    #[error("not q-adically regular: denominator vanishes at q = 0")]
    NotRegularAtZero,
    #[error("insufficient truncation: M = {m} < K = {k}")]
    InsufficientTruncation { m: usize, k: usize },
    #[error("d must be odd, got {0}")]
    EvenModulus(u32),
    #[error("residue class a = {a} out of range [0, {d})")]
    ResidueOutOfRange { a: u32, d: u32 },
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),
    #[error("q0 = {0} does not satisfy v_p(1 - q0) >= 1")]
    BadPadicBase(i64),
    #[error("precision M must be >= 1")]
    ZeroPrecision,
    #[error("order r must be >= 1")]
    ZeroOrder,
    #[error("normalizer [p^N]_(-q) is not a p-adic unit")]
    NonUnitNormalizer,
    #[error("binomial integrand needs n < p, got n = {n}, p = {p}")]
    BinomDegreeTooLarge { n: u32, p: u64 },
    #[error("truncation budget exceeded: p^(r*N) = {size} > {budget}")]
    TruncationBudget { size: String, budget: u64 },
    #[error("target denominator is not a p-adic unit")]
    NonUnitTarget,
    #[error("stirling flip already installed")]
    FlipAlreadySet,
}

pub type Result<T> = std::result::Result<T, Error>;
