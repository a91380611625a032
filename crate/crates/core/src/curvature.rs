//! Ricci curvature of the penalty metric on `SU(2^N)`.
//!
//! The orthonormal frame is `f_I = i P_I / b^{w(I)}` over the `4^N - 1`
//! non-identity words. Brackets of Pauli words are monomial, so the
//! structure constants `alpha_{IJK} = <[f_I, f_J], f_K>` are nonzero only for
//! anticommuting `I, J` with `K = I * J`, where
//! `|alpha| = 2 b^{w(K)} / (b^{w(I)} b^{w(J)})`.
//!
//! Levi-Civita coefficients come from the Koszul formula
//! `Gamma_{ijk} = (alpha_{ijk} - alpha_{jki} + alpha_{kij}) / 2`, the curvature
//! from `R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z` on
//! invariant fields, and Ricci by the trace `Ric(Y,Z) = sum_i <R(f_i,Y)Z, f_i>`.
//! Ricci is quadratic in `alpha`, so the left- and right-invariant
//! orientations (which differ by the sign of the bracket) give the same
//! tensor; the left-invariant one is used.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::metric::{self, Base, CriticalDiameter};
use crate::pauli::PauliWord;

/// Default qubit cap for structure constants and Ricci (`dim = 255`).
pub const MAX_QUBITS: usize = 4;

/// Off-diagonal Ricci entries must stay below this fraction of the largest
/// diagonal magnitude.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-10;

#[inline]
fn weight_of(n: usize, index: usize) -> u32 {
    let mask = (1usize << n) - 1;
    ((index & mask) | (index >> n)).count_ones()
}

#[inline]
fn anticommutes(n: usize, a: usize, b: usize) -> bool {
    let mask = (1usize << n) - 1;
    let (ax, az, bx, bz) = (a & mask, a >> n, b & mask, b >> n);
    ((ax & bz).count_ones() + (az & bx).count_ones()) % 2 == 1
}

// exponent s of P_a P_b = i^s P_{a^b}
#[inline]
fn product_phase(n: usize, a: usize, b: usize) -> u32 {
    let mask = (1usize << n) - 1;
    let y = |w: usize| ((w & mask) & (w >> n)).count_ones();
    let c = a ^ b;
    (y(a) + y(b) + 2 * ((a >> n) & (b & mask)).count_ones() + 4 * n as u32 - y(c)) % 4
}

fn check_cap(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(Error::out_of_range("N", 0, "N >= 1"));
    }
    if n_qubits > MAX_QUBITS {
        return Err(Error::Capacity(format!(
            "N = {n_qubits} exceeds the curvature cap N <= {MAX_QUBITS}"
        )));
    }
    Ok(())
}

/// One nonzero `alpha_{IJK} = sign * 2 * b^exponent`. Indices are packed
/// word indices `x | z << N` (see [`PauliWord::from_index`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub sign: i8,
    pub exponent: i32,
}

impl StructureConstant {
    pub fn value(&self, b: f64) -> f64 {
        f64::from(self.sign) * 2.0 * b.powi(self.exponent)
    }

    pub fn value_exact(&self, b: &Base) -> BigRational {
        BigRational::from_integer(BigInt::from(2 * i32::from(self.sign))) * b.pow(self.exponent)
    }
}

#[derive(Clone, Debug)]
pub struct StructureConstants {
    n_qubits: usize,
    base: Base,
    entries: Vec<StructureConstant>,
}

impl StructureConstants {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn dimension(&self) -> usize {
        (1 << (2 * self.n_qubits)) - 1
    }

    /// Entries sorted by `(i, j)`.
    pub fn entries(&self) -> &[StructureConstant] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&StructureConstant> {
        self.entries
            .binary_search_by(|e| (e.i, e.j).cmp(&(i, j)))
            .ok()
            .map(|p| &self.entries[p])
    }
}

/// All nonzero structure constants in the orthonormal penalty frame.
///
/// With `P_I P_J = i^s P_K` (s odd for anticommuting words),
/// `[i P_I, i P_J] = -2 i^{s-1} (i P_K)`, so for example
/// `[iX, iY] = -2 iZ`.
pub fn structure_constants(n_qubits: usize, b: &Base) -> Result<StructureConstants> {
    check_cap(n_qubits)?;
    let n = n_qubits;
    let dim = 1usize << (2 * n);
    let mut entries = Vec::new();
    for i in 1..dim {
        for j in 1..dim {
            if !anticommutes(n, i, j) {
                continue;
            }
            let k = i ^ j;
            let sign = if product_phase(n, i, j) == 1 { -1 } else { 1 };
            let exponent = weight_of(n, k) as i32 - weight_of(n, i) as i32 - weight_of(n, j) as i32;
            entries.push(StructureConstant {
                i,
                j,
                k,
                sign,
                exponent,
            });
        }
    }
    Ok(StructureConstants {
        n_qubits,
        base: b.clone(),
        entries,
    })
}

/// Ricci quadratic form in the orthonormal Pauli frame.
#[derive(Clone, Debug)]
pub struct RicciSpectrum {
    pub n_qubits: usize,
    pub base: Base,
    /// Words in frame order (packed index `1..4^N`).
    pub words: Vec<PauliWord>,
    pub diagonal: Vec<f64>,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Largest off-diagonal magnitude found during assembly.
    pub max_off_diagonal: f64,
}

impl RicciSpectrum {
    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }
}

type Triple = (usize, usize, usize, f64);

fn index_pairs<F>(entries: &[Triple], key: F) -> HashMap<(usize, usize), Vec<(usize, f64)>>
where
    F: Fn(&Triple) -> ((usize, usize), usize),
{
    let mut map: HashMap<(usize, usize), Vec<(usize, f64)>> = HashMap::new();
    for e in entries {
        let (k, rest) = key(e);
        map.entry(k).or_default().push((rest, e.3));
    }
    map
}

/// Full Ricci matrix (frame positions `index - 1`) by sparse contraction.
fn ricci_matrix(sc: &StructureConstants) -> Vec<Vec<f64>> {
    let dim = sc.dimension();
    let b = sc.base.to_f64();
    let alpha: HashMap<(usize, usize, usize), f64> = sc
        .entries
        .iter()
        .map(|e| ((e.i, e.j, e.k), e.value(b)))
        .collect();
    let a = |i, j, k| alpha.get(&(i, j, k)).copied().unwrap_or(0.0);

    // Gamma_{ijk} is supported on the same index triples as alpha
    let mut gamma: Vec<Triple> = Vec::new();
    for e in &sc.entries {
        let (i, j, k) = (e.i, e.j, e.k);
        for (p, q, r) in [
            (i, j, k),
            (j, k, i),
            (k, i, j),
            (i, k, j),
            (k, j, i),
            (j, i, k),
        ] {
            let g = 0.5 * (a(p, q, r) - a(q, r, p) + a(r, p, q));
            if g != 0.0 {
                gamma.push((p, q, r, g));
            }
        }
    }
    gamma.sort_by_key(|x| (x.0, x.1, x.2));
    gamma.dedup_by(|x, y| (x.0, x.1, x.2) == (y.0, y.1, y.2));

    let by_bc = index_pairs(&gamma, |e| ((e.1, e.2), e.0));
    let by_ac = index_pairs(&gamma, |e| ((e.0, e.2), e.1));

    let mut ric = vec![vec![0.0; dim]; dim];
    let at = |x: usize| x - 1;

    // sum_i sum_m Gamma_{jkm} Gamma_{imi}
    let mut trace = vec![0.0; dim + 1];
    for i in 1..=dim {
        if let Some(list) = by_ac.get(&(i, i)) {
            for &(m, v) in list {
                trace[m] += v;
            }
        }
    }
    for &(j, k, m, v) in &gamma {
        ric[at(j)][at(k)] += v * trace[m];
    }
    // - sum_i sum_m Gamma_{ikm} Gamma_{jmi}
    for &(i, k, m, v1) in &gamma {
        if let Some(list) = by_bc.get(&(m, i)) {
            for &(j, v2) in list {
                ric[at(j)][at(k)] -= v1 * v2;
            }
        }
    }
    // - sum_i sum_m alpha_{ijm} Gamma_{mki}
    for e in &sc.entries {
        let v1 = e.value(b);
        if let Some(list) = by_ac.get(&(e.k, e.i)) {
            for &(k, v2) in list {
                ric[at(e.j)][at(k)] -= v1 * v2;
            }
        }
    }
    ric
}

/// Ricci form of the penalty metric; the off-diagonal entries are checked
/// to vanish and the diagonal returned.
pub fn ricci_tensor(n_qubits: usize, b: &Base) -> Result<RicciSpectrum> {
    let sc = structure_constants(n_qubits, b)?;
    let ric = ricci_matrix(&sc);
    let dim = ric.len();
    let diagonal: Vec<f64> = (0..dim).map(|i| ric[i][i]).collect();
    let scale = diagonal.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut max_off = 0.0f64;
    for (i, row) in ric.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                max_off = max_off.max(v.abs());
            }
        }
    }
    if max_off > OFF_DIAGONAL_TOLERANCE * scale {
        return Err(Error::Consistency(format!(
            "Ricci off-diagonal {max_off:e} exceeds {OFF_DIAGONAL_TOLERANCE:e} x {scale:e}"
        )));
    }
    let lambda_min = diagonal.iter().copied().fold(f64::INFINITY, f64::min);
    let lambda_max = diagonal.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(RicciSpectrum {
        n_qubits,
        base: b.clone(),
        words: (1..=dim)
            .map(|i| PauliWord::from_index(n_qubits, i))
            .collect(),
        diagonal,
        lambda_min,
        lambda_max,
        max_off_diagonal: max_off,
    })
}

pub fn ricci_extremes(n_qubits: usize, b: &Base) -> Result<(f64, f64)> {
    let s = ricci_tensor(n_qubits, b)?;
    Ok((s.lambda_min, s.lambda_max))
}

// ---------------------------------------------------------------------------
// volumes

/// `sum_I w(I) = 3 N 4^{N-1}`: `vol(M)` scales as `b` to this power.
pub fn sum_of_weights(n_qubits: usize) -> u128 {
    3 * n_qubits as u128 * (1u128 << (2 * (n_qubits - 1)))
}

// ln Gamma(m / 2) for a positive integer m, exactly by recurrence.
fn ln_gamma_half(m: usize) -> f64 {
    let mut x = if m.is_multiple_of(2) { 1.0 } else { 0.5 };
    let mut acc = if m.is_multiple_of(2) {
        0.0
    } else {
        0.5 * PI.ln()
    };
    while 2.0 * x < m as f64 {
        acc += x.ln();
        x += 1.0;
    }
    acc
}

/// `ln vol(S^{m})` of the unit sphere.
fn ln_unit_sphere(m: usize) -> f64 {
    std::f64::consts::LN_2 + 0.5 * (m + 1) as f64 * PI.ln() - ln_gamma_half(m + 1)
}

/// Default `ln vol(SU(2^N))` at `b = 1` under `<A,B> = tr(A^dagger B) / 2^N`.
///
/// Starts from `vol(SU(n)) = sqrt(n) (2 pi)^{(n^2+n-2)/2} / prod_{k<n} k!`
/// for the form `tr(A^dagger B)` and rescales lengths by `1/sqrt(n)`.
pub fn default_ln_vol_reference(n_qubits: usize) -> f64 {
    let n = (1u64 << n_qubits) as f64;
    let dim = n * n - 1.0;
    let ln_factorials: f64 = (1..(1u64 << n_qubits))
        .map(|k| (1..=k).map(|j| (j as f64).ln()).sum::<f64>())
        .sum();
    0.5 * n.ln() + 0.5 * (n * n + n - 2.0) * (2.0 * PI).ln() - ln_factorials - 0.5 * dim * n.ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelSpace {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl ModelSpace {
    pub fn name(self) -> &'static str {
        match self {
            ModelSpace::Spherical => "spherical",
            ModelSpace::Euclidean => "euclidean",
            ModelSpace::Hyperbolic => "hyperbolic",
        }
    }
}

// ln of the composite Simpson rule for int_lo^hi exp(g(u)) du
fn ln_simpson(g: impl Fn(f64) -> f64, lo: f64, hi: f64, steps: usize) -> f64 {
    let steps = steps + steps % 2;
    let h = (hi - lo) / steps as f64;
    let terms: Vec<f64> = (0..=steps)
        .map(|s| {
            let w: f64 = if s == 0 || s == steps {
                1.0
            } else if s % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w.ln() + g(lo + s as f64 * h)
        })
        .filter(|t| t.is_finite())
        .collect();
    (h / 3.0).ln() + metric::log_sum_exp(&terms)
}

/// `ln` of the volume of a geodesic ball of radius `r` in the simply
/// connected `dim`-dimensional space of constant curvature `kappa`.
pub fn ln_ball_volume(dim: usize, kappa: f64, r: f64) -> f64 {
    let m = (dim - 1) as f64;
    let ln_area = ln_unit_sphere(dim - 1);
    if kappa == 0.0 {
        return ln_area + dim as f64 * r.ln() - (dim as f64).ln();
    }
    let a = kappa.abs().sqrt();
    // u = a t turns sn_kappa(t)^m dt into f(u)^m du / a^dim
    let ln_integral = if kappa > 0.0 {
        let top = (a * r).min(PI);
        ln_simpson(|u| m * u.sin().ln(), 0.0, top, 4000.max(40 * dim))
    } else {
        let top = a * r;
        // the integrand falls off at least like exp(-m (top - u))
        let lo = (top - 60.0 / m).max(0.0);
        let ln_sinh = |u: f64| {
            if u > 20.0 {
                u - std::f64::consts::LN_2
            } else {
                u.sinh().ln()
            }
        };
        ln_simpson(|u| m * ln_sinh(u), lo, top, 4000)
    };
    ln_area + ln_integral - dim as f64 * a.ln()
}

#[derive(Clone, Debug)]
pub struct BishopGromovReport {
    pub n_qubits: usize,
    pub base: Base,
    pub d: f64,
    pub dimension: usize,
    pub lambda_min: f64,
    /// Comparison curvature `lambda_min / (dim - 1)`.
    pub kappa: f64,
    pub model: ModelSpace,
    pub ln_vol_reference: f64,
    pub ln_vol_reference_is_default: bool,
    pub log_vol_m: f64,
    /// Model ball at radius `d` (= `2r` for sets of diameter `d`).
    pub log_vol_ball: f64,
    /// `log_vol_m - log_vol_ball`.
    pub log_bound: f64,
    /// `max(log_bound, 0)`: the covering bound is at least 1.
    pub log_bound_floored: f64,
}

/// Volume-comparison covering bound `vol(M) / vol_kappa(d)` from a given
/// lower Ricci eigenvalue.
pub fn bishop_gromov_with_lambda(
    n_qubits: usize,
    b: &Base,
    d: f64,
    lambda_min: f64,
    ln_vol_reference: Option<f64>,
) -> Result<BishopGromovReport> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::out_of_range("d", d, "0 < d < inf"));
    }
    if n_qubits == 0 || n_qubits > 31 {
        return Err(Error::out_of_range("N", n_qubits, "1 <= N <= 31"));
    }
    let dimension = (1usize << (2 * n_qubits)) - 1;
    let kappa = lambda_min / (dimension - 1) as f64;
    let model = if kappa > 0.0 {
        ModelSpace::Spherical
    } else if kappa < 0.0 {
        ModelSpace::Hyperbolic
    } else {
        ModelSpace::Euclidean
    };
    let ln_ref = ln_vol_reference.unwrap_or_else(|| default_ln_vol_reference(n_qubits));
    let log_vol_m = sum_of_weights(n_qubits) as f64 * b.ln() + ln_ref;
    let log_vol_ball = ln_ball_volume(dimension, kappa, d);
    let log_bound = log_vol_m - log_vol_ball;
    Ok(BishopGromovReport {
        n_qubits,
        base: b.clone(),
        d,
        dimension,
        lambda_min,
        kappa,
        model,
        ln_vol_reference: ln_ref,
        ln_vol_reference_is_default: ln_vol_reference.is_none(),
        log_vol_m,
        log_vol_ball,
        log_bound,
        log_bound_floored: log_bound.max(0.0),
    })
}

pub fn bishop_gromov_bound(
    n_qubits: usize,
    b: &Base,
    d: f64,
    ln_vol_reference: Option<f64>,
) -> Result<BishopGromovReport> {
    if !(d > 0.0) {
        return Err(Error::out_of_range("d", d, "d > 0"));
    }
    let (lambda_min, _) = ricci_extremes(n_qubits, b)?;
    bishop_gromov_with_lambda(n_qubits, b, d, lambda_min, ln_vol_reference)
}

/// Volume-comparison bound next to the topological covering bound at the
/// same scale `b^k`.
#[derive(Clone, Debug)]
pub struct SlacknessRow {
    pub k: usize,
    pub d: f64,
    pub ln_bishop_gromov: f64,
    pub ln_topological: f64,
    pub topological_bound: num_bigint::BigUint,
    /// `ln_topological - ln_bishop_gromov`; positive when the topological
    /// bound is the stronger one.
    pub ln_advantage: f64,
}

pub fn slackness_comparison(
    n_qubits: usize,
    b: &Base,
    d_c: &CriticalDiameter,
    ln_vol_reference: Option<f64>,
) -> Result<Vec<SlacknessRow>> {
    let (lambda_min, _) = ricci_extremes(n_qubits, b)?;
    (1..=n_qubits)
        .map(|k| {
            let d = b.to_f64().powi(k as i32);
            let bg = bishop_gromov_with_lambda(n_qubits, b, d, lambda_min, ln_vol_reference)?;
            let top = metric::theorem_bound(n_qubits, k, b, d_c)?.bound;
            let ln_top = metric::ln_biguint(&top);
            Ok(SlacknessRow {
                k,
                d,
                ln_bishop_gromov: bg.log_bound_floored,
                ln_topological: ln_top,
                topological_bound: top,
                ln_advantage: ln_top - bg.log_bound_floored,
            })
        })
        .collect()
}
