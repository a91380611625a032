//! Penalty metrics, torus diameters and covering-number lower bounds.
//!
//! Everything is computed twice where it matters: once exactly (big-integer
//! or big-rational radicands, square roots taken last) and once in the log
//! domain from `ln b` alone. The exact route is authoritative; the log route
//! is reported alongside as a cross-check and for sizes whose values
//! overflow `f64`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pauli::PauliWord;

// 36 correct decimals of pi, truncated and rounded up.
const PI_LOWER: &str = "3.141592653589793238462643383279502884";
const PI_UPPER: &str = "3.141592653589793238462643383279502885";

/// Parse a nonnegative decimal such as `4`, `2.5`, `0.125` or `1.5e3`
/// into an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let scale = exponent - frac_part.len() as i32 - 1;
    let ten = BigRational::from_integer(BigInt::from(10));
    Some(BigRational::from_integer(digits) * ten.pow(scale))
}

/// Penalty base, held exactly. Covering bounds need `b > 1`; curvature
/// also accepts `0 < b <= 1` (`b = 1` is the bi-invariant metric).
#[derive(Clone, PartialEq, Eq)]
pub struct Base {
    exact: BigRational,
}

impl Base {
    /// A penalty base `b > 1`.
    pub fn new(exact: BigRational) -> Result<Self> {
        if exact <= BigRational::one() {
            return Err(Error::out_of_range("b", &exact, "b > 1"));
        }
        Ok(Base { exact })
    }

    /// Any `b > 0`.
    pub fn positive(exact: BigRational) -> Result<Self> {
        if !exact.is_positive() {
            return Err(Error::out_of_range("b", &exact, "b > 0"));
        }
        Ok(Base { exact })
    }

    pub fn parse_positive(s: &str) -> Result<Self> {
        let exact = parse_decimal(s).ok_or_else(|| Error::Parse {
            what: "base b",
            input: s.to_string(),
        })?;
        Base::positive(exact)
    }

    pub fn is_penalty(&self) -> bool {
        self.exact > BigRational::one()
    }

    fn require_penalty(&self) -> Result<()> {
        if self.is_penalty() {
            Ok(())
        } else {
            Err(Error::out_of_range("b", &self.exact, "b > 1"))
        }
    }

    pub fn from_integer(b: u32) -> Result<Self> {
        Base::new(BigRational::from_integer(b.into()))
    }

    /// Exact value of the binary float.
    pub fn from_f64(b: f64) -> Result<Self> {
        let exact =
            BigRational::from_float(b).ok_or_else(|| Error::out_of_range("b", b, "finite"))?;
        Base::new(exact)
    }

    pub fn exact(&self) -> &BigRational {
        &self.exact
    }

    pub fn is_integer(&self) -> bool {
        self.exact.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.exact)
    }

    pub fn ln(&self) -> f64 {
        ln_ratio(&self.exact)
    }

    pub fn pow(&self, e: i32) -> BigRational {
        self.exact.pow(e)
    }
}

impl FromStr for Base {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let exact = parse_decimal(s).ok_or_else(|| Error::Parse {
            what: "base b",
            input: s.to_string(),
        })?;
        Base::new(exact)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exact)
    }
}

impl fmt::Debug for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Base({})", self.exact)
    }
}

/// Diagonal metric on `su(2^N)` giving word `I` the squared length
/// `b^{2 w(I)}` relative to the trace form `tr(A^dagger B) / 2^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PenaltyMetric {
    base: Base,
    n_qubits: usize,
}

impl PenaltyMetric {
    pub fn new(base: Base, n_qubits: usize) -> Self {
        PenaltyMetric { base, n_qubits }
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn squared_length(&self, word: &PauliWord) -> BigRational {
        self.base.pow(2 * word.weight() as i32)
    }

    pub fn squared_length_f64(&self, word: &PauliWord) -> f64 {
        (2.0 * word.weight() as f64 * self.base.ln()).exp()
    }
}

// ---------------------------------------------------------------------------
// big-number helpers

pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}

pub(crate) fn ln_ratio(x: &BigRational) -> f64 {
    ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude())
}

fn ratio_to_f64(x: &BigRational) -> f64 {
    match x.to_f64() {
        Some(v) if v.is_finite() && (v != 0.0 || x.is_zero()) => v,
        _ => ln_ratio(x).exp(),
    }
}

/// `sqrt(x)` for an exact nonnegative rational, correctly scaled even when
/// `x` itself overflows `f64`.
fn sqrt_ratio_f64(x: &BigRational) -> f64 {
    match x.to_f64() {
        Some(v) if v.is_finite() && v > 1e-300 => v.sqrt(),
        _ => (0.5 * ln_ratio(x)).exp(),
    }
}

fn check_k(n_qubits: usize, k: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(Error::out_of_range("N", n_qubits, "N >= 1"));
    }
    if k == 0 || k > n_qubits {
        return Err(Error::out_of_range(
            "k",
            k,
            format!("1 <= k <= N = {n_qubits}"),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// counting

/// Exact `binom(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 1..=k {
        acc *= n - k + j;
        acc /= j;
    }
    acc
}

/// `F(k, N) = sum_{i=1..k} binom(N, i)`, the dimension of the level-`k`
/// Cartan tower.
pub fn cumulative_binomial(k: usize, n_qubits: usize) -> Result<BigUint> {
    check_k(n_qubits, k)?;
    let mut total = BigUint::zero();
    let mut term = BigUint::one();
    for i in 1..=k {
        term = term * (n_qubits - i + 1) / i;
        total += &term;
    }
    Ok(total)
}

/// Lemma bound on the covering number of the level-`k` torus at scale
/// `b^k`: `binom(N, k)`.
pub fn lemma_bound(n_qubits: usize, k: usize) -> Result<BigUint> {
    check_k(n_qubits, k)?;
    Ok(binomial(n_qubits, k))
}

/// `ln binom(n, k)` summed term by term in `f64`.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (1..=k)
        .map(|j| ((n - k + j) as f64).ln() - (j as f64).ln())
        .sum()
}

// ---------------------------------------------------------------------------
// torus diameters

/// Exact radicand `sum_{i=1..k} binom(N, i) b^{2i}` of the level-`k` torus
/// diameter.
pub fn radicand(n_qubits: usize, k: usize, b: &Base) -> Result<BigRational> {
    check_k(n_qubits, k)?;
    b.require_penalty()?;
    // With b^2 = a / d, accumulate S_i = S_{i-1} d + binom(N, i) a^i so
    // that the radicand is S_k / d^k; one normalisation at the end.
    let b2 = b.pow(2);
    let (a, d) = (b2.numer().magnitude(), b2.denom().magnitude());
    let mut acc = BigUint::zero();
    let mut binom = BigUint::one();
    let mut power = BigUint::one();
    for i in 1..=k {
        binom = binom * (n_qubits - i + 1) / i;
        power *= a;
        acc = acc * d + &binom * &power;
    }
    let denom = d.pow(k as u32);
    Ok(BigRational::new(acc.into(), denom.into()))
}

/// Log-domain radicand: `ln sum_i exp(ln binom(N,i) + 2 i ln b)`.
pub fn ln_radicand(n_qubits: usize, k: usize, ln_b: f64) -> Result<f64> {
    check_k(n_qubits, k)?;
    if !(ln_b > 0.0) {
        return Err(Error::out_of_range("ln b", ln_b, "b > 1"));
    }
    let terms: Vec<f64> = (1..=k)
        .map(|i| ln_binomial(n_qubits, i) + 2.0 * i as f64 * ln_b)
        .collect();
    Ok(log_sum_exp(&terms))
}

pub(crate) fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// Diameter `e_k = pi sqrt(radicand)` of the level-`k` torus with its
/// exact radicand.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusDiameter {
    pub radicand: BigRational,
    pub value: f64,
    pub ln_value: f64,
}

pub fn torus_diameter(n_qubits: usize, k: usize, b: &Base) -> Result<TorusDiameter> {
    let radicand = radicand(n_qubits, k, b)?;
    let value = PI * sqrt_ratio_f64(&radicand);
    let ln_value = PI.ln() + 0.5 * ln_ratio(&radicand);
    Ok(TorusDiameter {
        radicand,
        value,
        ln_value,
    })
}

/// Log-domain `ln e_k`, from `ln b` only.
pub fn ln_torus_diameter(n_qubits: usize, k: usize, ln_b: f64) -> Result<f64> {
    Ok(PI.ln() + 0.5 * ln_radicand(n_qubits, k, ln_b)?)
}

/// `e_N`, the default stand-in for the critical diameter `d_c`.
pub fn diameter_proxy(n_qubits: usize, b: &Base) -> Result<TorusDiameter> {
    torus_diameter(n_qubits, n_qubits, b)
}

/// `C^t(d) = d_c / d`.
pub fn trivial_bound(d: f64, d_c: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::out_of_range("d", d, "d > 0"));
    }
    if !(d_c > 0.0) {
        return Err(Error::out_of_range("d_c", d_c, "d_c > 0"));
    }
    Ok(d_c / d)
}

// ---------------------------------------------------------------------------
// theorem bound

/// Which critical diameter a bound was computed against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriticalDiameter {
    /// `d_c = e_N`.
    Proxy,
    /// Caller-supplied `d_c >= 0`, exact.
    Given(BigRational),
}

impl CriticalDiameter {
    pub fn given(d_c: BigRational) -> Result<Self> {
        if d_c.is_negative() {
            return Err(Error::out_of_range("d_c", &d_c, "d_c >= 0"));
        }
        Ok(CriticalDiameter::Given(d_c))
    }

    pub fn from_f64(d_c: f64) -> Result<Self> {
        let exact = BigRational::from_float(d_c)
            .ok_or_else(|| Error::out_of_range("d_c", d_c, "finite"))?;
        CriticalDiameter::given(exact)
    }

    pub fn value(&self, n_qubits: usize, b: &Base) -> Result<f64> {
        match self {
            CriticalDiameter::Proxy => Ok(diameter_proxy(n_qubits, b)?.value),
            CriticalDiameter::Given(d) => Ok(ratio_to_f64(d)),
        }
    }

    fn ln_value(&self, n_qubits: usize, b: &Base) -> Result<f64> {
        match self {
            CriticalDiameter::Proxy => Ok(diameter_proxy(n_qubits, b)?.ln_value),
            CriticalDiameter::Given(d) => Ok(ln_ratio(d)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremBound {
    /// `floor(d_c / e_k)`, certified by exact comparison.
    pub floor_factor: BigUint,
    pub lemma_bound: BigUint,
    /// `floor_factor * lemma_bound`.
    pub bound: BigUint,
}

fn floor_sqrt_ratio(x: &BigRational) -> BigUint {
    let floor = x.floor().to_integer();
    floor.magnitude().sqrt()
}

/// `floor(d_c / e_k)` by exact comparison, never by float division.
///
/// For the proxy the factors of pi cancel and the floor is the largest `m`
/// with `m^2 R_k <= R_N`. For a given `d_c` the comparison
/// `m^2 R_k pi^2 <= d_c^2` is decided with rational bounds on pi; an
/// undecidable comparison is reported rather than guessed.
pub fn certified_floor(
    n_qubits: usize,
    k: usize,
    b: &Base,
    d_c: &CriticalDiameter,
) -> Result<BigUint> {
    let r_k = radicand(n_qubits, k, b)?;
    match d_c {
        CriticalDiameter::Proxy => {
            let r_n = radicand(n_qubits, n_qubits, b)?;
            let m = floor_sqrt_ratio(&(&r_n / &r_k));
            let m_q = BigRational::from_integer(BigInt::from(m.clone()));
            let m1 = &m_q + BigRational::one();
            if !(&m_q * &m_q * &r_k <= r_n && &m1 * &m1 * &r_k > r_n) {
                return Err(Error::Consistency(format!("floor {m} fails exact check")));
            }
            Ok(m)
        }
        CriticalDiameter::Given(d) => {
            let pi_lo = parse_decimal(PI_LOWER).expect("constant");
            let pi_hi = parse_decimal(PI_UPPER).expect("constant");
            let d2 = d * d;
            let fits = |m: &BigUint| -> Option<bool> {
                let m = BigRational::from_integer(BigInt::from(m.clone()));
                let base = &m * &m * &r_k;
                if &base * &pi_hi * &pi_hi <= d2 {
                    Some(true)
                } else if &base * &pi_lo * &pi_lo > d2 {
                    Some(false)
                } else {
                    None
                }
            };
            let mut m = floor_sqrt_ratio(&(&d2 / (&r_k * &pi_hi * &pi_hi)));
            loop {
                let next = &m + 1u32;
                match fits(&next) {
                    Some(true) => m = next,
                    Some(false) => break,
                    None => {
                        return Err(Error::Consistency(format!(
                            "d_c / e_k = {next} is within pi-bound precision; floor not certifiable"
                        )))
                    }
                }
            }
            Ok(m)
        }
    }
}

/// Covering bound for `SU(2^N)` at scale `b^k` under the criticality
/// ansatz: `floor(d_c / e_k) * binom(N, k)`.
pub fn theorem_bound(
    n_qubits: usize,
    k: usize,
    b: &Base,
    d_c: &CriticalDiameter,
) -> Result<TheoremBound> {
    let floor_factor = certified_floor(n_qubits, k, b, d_c)?;
    let lemma_bound = lemma_bound(n_qubits, k)?;
    let bound = &floor_factor * &lemma_bound;
    Ok(TheoremBound {
        floor_factor,
        lemma_bound,
        bound,
    })
}

// ---------------------------------------------------------------------------
// ratios

/// `C^top(b^k) / C^t(b^k) = (b^k / e_k) binom(N, k)`, keeping the pi of
/// the torus diameter.
pub fn bound_ratio_exact(n_qubits: usize, k: usize, b: &Base) -> Result<f64> {
    let squared = ratio_exact_squared_times_pi2(n_qubits, k, b)?;
    Ok(sqrt_ratio_f64(&squared) / PI)
}

// (b^k binom)^2 / R_k, the square of ratio * pi, exactly.
fn ratio_exact_squared_times_pi2(n_qubits: usize, k: usize, b: &Base) -> Result<BigRational> {
    let r_k = radicand(n_qubits, k, b)?;
    let binom = BigRational::from_integer(BigInt::from(binomial(n_qubits, k)));
    Ok(b.pow(2 * k as i32) * &binom * &binom / r_k)
}

/// Log-domain route for [`bound_ratio_exact`].
pub fn ln_bound_ratio(n_qubits: usize, k: usize, ln_b: f64) -> Result<f64> {
    Ok(k as f64 * ln_b + ln_binomial(n_qubits, k) - ln_torus_diameter(n_qubits, k, ln_b)?)
}

/// `sqrt(binom(N, k))`, the small-`k` approximation of the ratio with pi
/// dropped.
pub fn bound_ratio_approx(n_qubits: usize, k: usize) -> Result<f64> {
    if k > n_qubits {
        return Err(Error::out_of_range("k", k, format!("k <= N = {n_qubits}")));
    }
    let binom = binomial(n_qubits, k);
    Ok(sqrt_ratio_f64(&BigRational::from_integer(BigInt::from(
        binom,
    ))))
}

// ---------------------------------------------------------------------------
// report

#[derive(Clone, Debug, PartialEq)]
pub struct CoveringBoundReport {
    pub n_qubits: usize,
    pub k: usize,
    pub base: Base,
    /// Exact radicand of `e_k`.
    pub radicand_k: BigRational,
    pub e_k: f64,
    pub ln_e_k: f64,
    pub d_c: f64,
    pub ln_d_c: f64,
    pub d_c_source: CriticalDiameter,
    /// Scale `d` of the covering sets; `b^k`.
    pub scale: f64,
    /// `C^t(d) = d_c / d`.
    pub trivial_bound: f64,
    pub lemma_bound: BigUint,
    pub floor_factor: BigUint,
    pub theorem_bound: BigUint,
    pub ratio_exact: f64,
    /// `ratio_exact * pi`, comparable with `ratio_approx`.
    pub ratio_exact_pi: f64,
    pub ratio_approx: f64,
    /// True when some plain field overflowed `f64` and only the `ln_*`
    /// fields are meaningful.
    pub log_domain: bool,
    /// Largest relative disagreement between the exact and log-domain
    /// routes for `e_k`, `d_c` and `ratio_exact`.
    pub log_route_rel_err: f64,
}

pub fn covering_report(
    n_qubits: usize,
    k: usize,
    b: &Base,
    d_c: &CriticalDiameter,
) -> Result<CoveringBoundReport> {
    let e = torus_diameter(n_qubits, k, b)?;
    let d_c_value = d_c.value(n_qubits, b)?;
    let ln_d_c = d_c.ln_value(n_qubits, b)?;
    let scale = ratio_to_f64(&b.pow(k as i32));
    let tb = theorem_bound(n_qubits, k, b, d_c)?;
    let ratio_exact = bound_ratio_exact(n_qubits, k, b)?;
    let ratio_approx = bound_ratio_approx(n_qubits, k)?;

    let ln_b = b.ln();
    let ln_e_log = ln_torus_diameter(n_qubits, k, ln_b)?;
    let ln_ratio_log = ln_bound_ratio(n_qubits, k, ln_b)?;
    let ln_ratio_exact = 0.5 * ln_ratio(&ratio_exact_squared_times_pi2(n_qubits, k, b)?) - PI.ln();
    let mut rel_err = [(e.ln_value, ln_e_log), (ln_ratio_exact, ln_ratio_log)]
        .iter()
        .map(|(a, b)| (a - b).exp_m1().abs())
        .fold(0.0, f64::max);
    if *d_c == CriticalDiameter::Proxy {
        let ln_dc_log = ln_torus_diameter(n_qubits, n_qubits, ln_b)?;
        rel_err = rel_err.max((ln_d_c - ln_dc_log).exp_m1().abs());
    }

    let trivial = trivial_bound(scale, d_c_value).unwrap_or(f64::NAN);
    let log_domain = ![e.value, d_c_value, scale, trivial, ratio_exact]
        .iter()
        .all(|v| v.is_finite());
    Ok(CoveringBoundReport {
        n_qubits,
        k,
        base: b.clone(),
        radicand_k: e.radicand,
        e_k: e.value,
        ln_e_k: e.ln_value,
        d_c: d_c_value,
        ln_d_c,
        d_c_source: d_c.clone(),
        scale,
        trivial_bound: trivial,
        lemma_bound: tb.lemma_bound,
        floor_factor: tb.floor_factor,
        theorem_bound: tb.bound,
        ratio_exact,
        ratio_exact_pi: ratio_exact * PI,
        ratio_approx,
        log_domain,
        log_route_rel_err: rel_err,
    })
}
