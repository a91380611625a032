//! Linear Majorana codes whose nonzero codewords pairwise anticommute.
//!
//! A code is a subspace of `F_2^{2n}`; each codeword names a monomial in the
//! `2n` Majorana operators. Two anticommutation predicates are offered:
//! [`Predicate::Paper`] is the sum-parity condition
//! `w(x) + w(y) - |x & y|` odd, and [`Predicate::Clifford`] is the product
//! rule `w(x) w(y) - |x & y|` odd that governs the actual operators. They
//! agree whenever both weights are even.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::MajoranaString;

/// Largest dimension for which codewords are enumerated.
pub const ENUMERATION_CAP: usize = 24;

/// Largest `n` accepted by [`search_exhaustive`].
pub const EXHAUSTIVE_MAX_MODES: usize = 4;

/// Above this blocklength greedy samples candidates instead of shuffling
/// the whole space.
const FULL_SHUFFLE_MAX_BITS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predicate {
    Paper,
    Clifford,
}

impl Predicate {
    pub fn name(self) -> &'static str {
        match self {
            Predicate::Paper => "paper",
            Predicate::Clifford => "clifford",
        }
    }

    pub fn holds(self, x: &MajoranaString, y: &MajoranaString) -> Result<bool> {
        match self {
            Predicate::Paper => anticommute_paper(x, y),
            Predicate::Clifford => anticommute_clifford(x, y),
        }
    }

    #[inline]
    fn holds_u64(self, x: u64, y: u64) -> bool {
        let (wx, wy, ov) = (x.count_ones(), y.count_ones(), (x & y).count_ones());
        match self {
            Predicate::Paper => (wx + wy - ov) % 2 == 1,
            Predicate::Clifford => (wx * wy - ov) % 2 == 1,
        }
    }
}

impl std::str::FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Predicate::Paper),
            "clifford" => Ok(Predicate::Clifford),
            _ => Err(Error::Parse {
                what: "predicate",
                input: s.to_string(),
            }),
        }
    }
}

/// `w(x) + w(y) - overlap(x, y)` is odd.
pub fn anticommute_paper(x: &MajoranaString, y: &MajoranaString) -> Result<bool> {
    let ov = x.overlap(y)?;
    Ok((x.weight() + y.weight() - ov) % 2 == 1)
}

/// `w(x) w(y) - overlap(x, y)` is odd: the monomials anticommute.
pub fn anticommute_clifford(x: &MajoranaString, y: &MajoranaString) -> Result<bool> {
    let ov = x.overlap(y)?;
    Ok((x.weight() * y.weight() + ov) % 2 == 1)
}

/// Subspace of `F_2^{2n}` given by independent generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    n_modes: usize,
    generators: Vec<MajoranaString>,
}

impl LinearCode {
    pub fn new(n_modes: usize, generators: Vec<MajoranaString>) -> Result<Self> {
        for g in &generators {
            Error::check_dims(2 * n_modes, g.len())?;
        }
        let code = LinearCode {
            n_modes,
            generators,
        };
        if code.rref().generators.len() != code.generators.len() {
            return Err(Error::out_of_range(
                "generators",
                code.generators.len(),
                "linearly independent over F2",
            ));
        }
        Ok(code)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Dimension of the code.
    pub fn k(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[MajoranaString] {
        &self.generators
    }

    /// `k / 2n`; `None` for `n = 0`.
    pub fn rate(&self) -> Option<Ratio<usize>> {
        (self.n_modes > 0).then(|| Ratio::new(self.k(), 2 * self.n_modes))
    }

    /// `k / n`, the rate normalised by the mode count.
    pub fn rate_paper(&self) -> Option<Ratio<usize>> {
        (self.n_modes > 0).then(|| Ratio::new(self.k(), self.n_modes))
    }

    /// Reduced row-echelon generators: each pivot is the leftmost set bit
    /// of its row and is clear in every other row; rows sorted by pivot.
    pub fn rref(&self) -> LinearCode {
        let mut rows: Vec<MajoranaString> = Vec::new();
        for g in &self.generators {
            let mut v = g.clone();
            for r in &rows {
                let p = r.first_one().expect("nonzero row");
                if v.get(p) {
                    v.xor_assign(r);
                }
            }
            if let Some(p) = v.first_one() {
                for r in rows.iter_mut() {
                    if r.get(p) {
                        r.xor_assign(&v);
                    }
                }
                rows.push(v);
            }
        }
        rows.sort_by_key(|r| r.first_one());
        LinearCode {
            n_modes: self.n_modes,
            generators: rows,
        }
    }

    /// All `2^k - 1` nonzero codewords in Gray-code order.
    pub fn nonzero_codewords(&self) -> Result<Vec<MajoranaString>> {
        if self.k() > ENUMERATION_CAP {
            return Err(Error::Capacity(format!(
                "k = {} exceeds the enumeration cap {ENUMERATION_CAP}",
                self.k()
            )));
        }
        let mut word = MajoranaString::zero(self.n_modes);
        let mut out = Vec::with_capacity((1usize << self.k()) - 1);
        for i in 1usize..(1 << self.k()) {
            word.xor_assign(&self.generators[i.trailing_zeros() as usize]);
            out.push(word.clone());
        }
        Ok(out)
    }
}

/// Every unordered pair of distinct nonzero codewords satisfies the
/// predicate. Self-pairs are exempt.
pub fn code_valid(code: &LinearCode, predicate: Predicate) -> Result<bool> {
    let words = code.nonzero_codewords()?;
    for (i, x) in words.iter().enumerate() {
        for y in &words[i + 1..] {
            if !predicate.holds(x, y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Minimum weight over the nonzero codewords, by a Gray-code sweep.
pub fn code_distance(code: &LinearCode) -> Result<usize> {
    if code.k() == 0 {
        return Err(Error::out_of_range("k", 0, "k >= 1"));
    }
    if code.k() > ENUMERATION_CAP {
        return Err(Error::Capacity(format!(
            "k = {} exceeds the enumeration cap {ENUMERATION_CAP}",
            code.k()
        )));
    }
    let mut word = MajoranaString::zero(code.n_modes);
    let mut best = usize::MAX;
    for i in 1usize..(1 << code.k()) {
        word.xor_assign(&code.generators[i.trailing_zeros() as usize]);
        best = best.min(word.weight());
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    Greedy,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::Greedy => "greedy",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSearchResult {
    /// Generators in reduced row-echelon form.
    pub code: LinearCode,
    pub predicate: Predicate,
    pub distance: usize,
    pub valid: bool,
    pub method: Method,
    pub seed: Option<u64>,
}

impl CodeSearchResult {
    fn new(
        code: LinearCode,
        predicate: Predicate,
        method: Method,
        seed: Option<u64>,
    ) -> Result<Self> {
        let code = code.rref();
        Ok(CodeSearchResult {
            distance: code_distance(&code)?,
            valid: code_valid(&code, predicate)?,
            code,
            predicate,
            method,
            seed,
        })
    }

    pub fn k(&self) -> usize {
        self.code.k()
    }

    pub fn rate(&self) -> Option<Ratio<usize>> {
        self.code.rate()
    }

    pub fn rate_paper(&self) -> Option<Ratio<usize>> {
        self.code.rate_paper()
    }
}

/// Best-first total order: larger `k`, then larger distance, then the
/// lexicographically smallest generator matrix.
pub fn rank_results(a: &CodeSearchResult, b: &CodeSearchResult) -> Ordering {
    b.k()
        .cmp(&a.k())
        .then(b.distance.cmp(&a.distance))
        .then_with(|| a.code.generators.cmp(&b.code.generators))
}

// ---------------------------------------------------------------------------
// exhaustive

fn rref_u64(rows: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for &g in rows {
        let mut v = g;
        for &r in &out {
            if v >> r.trailing_zeros() & 1 == 1 {
                v ^= r;
            }
        }
        if v != 0 {
            let p = v.trailing_zeros();
            for r in out.iter_mut() {
                if *r >> p & 1 == 1 {
                    *r ^= v;
                }
            }
            out.push(v);
        }
    }
    out.sort_by_key(|r| r.trailing_zeros());
    out
}

fn span_u64(rows: &[u64]) -> Vec<u64> {
    let mut words = vec![0u64];
    for &r in rows {
        let extra: Vec<u64> = words.iter().map(|w| w ^ r).collect();
        words.extend(extra);
    }
    words
}

/// Whether adding `v` to the code whose codewords (zero included) are
/// `words` keeps every pair of distinct nonzero codewords valid.
fn extends_u64(words: &[u64], v: u64, predicate: Predicate) -> bool {
    let fresh: Vec<u64> = words.iter().map(|w| w ^ v).collect();
    for (i, &x) in fresh.iter().enumerate() {
        if fresh[i + 1..].iter().any(|&y| !predicate.holds_u64(x, y)) {
            return false;
        }
        if words.iter().skip(1).any(|&y| !predicate.holds_u64(x, y)) {
            return false;
        }
    }
    true
}

/// All maximal valid codes for `n <= 4`, one per subspace, sorted by
/// [`rank_results`].
pub fn search_exhaustive(n_modes: usize, predicate: Predicate) -> Result<Vec<CodeSearchResult>> {
    if n_modes > EXHAUSTIVE_MAX_MODES {
        return Err(Error::Capacity(format!(
            "exhaustive search supports n <= {EXHAUSTIVE_MAX_MODES}; use the greedy method for n = {n_modes}"
        )));
    }
    if n_modes == 0 {
        return Ok(Vec::new());
    }
    let bits = 2 * n_modes;
    let mut level: BTreeSet<Vec<u64>> = (1..1u64 << bits).map(|v| vec![v]).collect();
    let mut maximal: Vec<Vec<u64>> = Vec::new();
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for rows in &level {
            let words = span_u64(rows);
            let pivots = rows
                .iter()
                .fold(0u64, |acc, r| acc | 1 << r.trailing_zeros());
            let mut extended = false;
            for v in 1..1u64 << bits {
                // one reduced representative per coset of the span
                if v & pivots != 0 {
                    continue;
                }
                if extends_u64(&words, v, predicate) {
                    extended = true;
                    let mut grown = rows.clone();
                    grown.push(v);
                    next.insert(rref_u64(&grown));
                }
            }
            if !extended {
                maximal.push(rows.clone());
            }
        }
        level = next;
    }
    let mut results = maximal
        .into_iter()
        .map(|rows| {
            let gens = rows
                .iter()
                .map(|&r| MajoranaString::from_u64(n_modes, r))
                .collect();
            CodeSearchResult::new(
                LinearCode::new(n_modes, gens)?,
                predicate,
                Method::Exhaustive,
                None,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    results.sort_by(rank_results);
    Ok(results)
}

// ---------------------------------------------------------------------------
// greedy

fn candidates(n_modes: usize, rng: &mut ChaCha8Rng) -> Vec<MajoranaString> {
    let bits = 2 * n_modes;
    if bits <= FULL_SHUFFLE_MAX_BITS {
        let mut all: Vec<u64> = (1..1u64 << bits).collect();
        all.shuffle(rng);
        return all
            .into_iter()
            .map(|v| MajoranaString::from_u64(n_modes, v))
            .collect();
    }
    (0..64 * bits)
        .map(|_| loop {
            let bools: Vec<bool> = (0..bits).map(|_| rng.random()).collect();
            let v = MajoranaString::from_bools(&bools).expect("even length");
            if !v.is_zero() {
                break v;
            }
        })
        .collect()
}

fn greedy_once(
    n_modes: usize,
    predicate: Predicate,
    seed: u64,
    iteration: u64,
) -> Result<LinearCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(iteration);
    let mut basis: Vec<MajoranaString> = Vec::new();
    let mut reduced: Vec<MajoranaString> = Vec::new();
    let mut words = vec![MajoranaString::zero(n_modes)];
    for v in candidates(n_modes, &mut rng) {
        if basis.len() == ENUMERATION_CAP {
            break;
        }
        let mut r = v.clone();
        for b in &reduced {
            if r.get(b.first_one().expect("nonzero")) {
                r.xor_assign(b);
            }
        }
        if r.is_zero() {
            continue;
        }
        let fresh: Vec<MajoranaString> = words.iter().map(|w| w.xor(&v)).collect();
        let mut ok = true;
        'check: for (i, x) in fresh.iter().enumerate() {
            for y in fresh[i + 1..].iter().chain(words.iter().skip(1)) {
                if !predicate.holds(x, y)? {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            words.extend(fresh);
            basis.push(v);
            reduced.push(r);
        }
    }
    LinearCode::new(n_modes, basis)
}

fn greedy_range(
    n_modes: usize,
    predicate: Predicate,
    seed: u64,
    iterations: std::ops::Range<u64>,
) -> Result<Option<CodeSearchResult>> {
    let mut best: Option<CodeSearchResult> = None;
    for it in iterations {
        let code = greedy_once(n_modes, predicate, seed, it)?;
        let result = CodeSearchResult::new(code, predicate, Method::Greedy, Some(seed))?;
        best = Some(match best {
            Some(b) if rank_results(&b, &result) != Ordering::Greater => b,
            _ => result,
        });
    }
    Ok(best)
}

/// Randomised greedy construction, best of `iterations` runs.
///
/// Run `i` draws its candidate order from the ChaCha stream `i` of `seed`,
/// so results are reproducible and independent of how runs are scheduled.
pub fn search_greedy(
    n_modes: usize,
    predicate: Predicate,
    seed: u64,
    iterations: u64,
) -> Result<CodeSearchResult> {
    validate_greedy(n_modes, iterations)?;
    Ok(greedy_range(n_modes, predicate, seed, 0..iterations)?.expect("iterations >= 1"))
}

/// [`search_greedy`] split into `shards` contiguous iteration ranges run in
/// parallel; the winner is identical to the serial one.
pub fn search_greedy_parallel(
    n_modes: usize,
    predicate: Predicate,
    seed: u64,
    iterations: u64,
    shards: usize,
) -> Result<CodeSearchResult> {
    validate_greedy(n_modes, iterations)?;
    let shards = shards.clamp(1, iterations as usize) as u64;
    let per = iterations.div_ceil(shards);
    let partial = (0..shards)
        .into_par_iter()
        .map(|s| {
            greedy_range(
                n_modes,
                predicate,
                seed,
                s * per..((s + 1) * per).min(iterations),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(partial
        .into_iter()
        .flatten()
        .min_by(rank_results)
        .expect("iterations >= 1"))
}

fn validate_greedy(n_modes: usize, iterations: u64) -> Result<()> {
    if n_modes == 0 {
        return Err(Error::out_of_range("n", 0, "n >= 1"));
    }
    if iterations == 0 {
        return Err(Error::out_of_range("iterations", 0, "iterations >= 1"));
    }
    Ok(())
}
