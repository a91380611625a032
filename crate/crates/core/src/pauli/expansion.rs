use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::metric::PenaltyMetric;

use super::phased::bracket;
use super::PauliWord;

/// Real linear combination of Pauli words standing for the element
/// `i * sum_I h_I P_I` of `su(2^N)`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct HermExpansion {
    n_qubits: usize,
    terms: BTreeMap<PauliWord, BigRational>,
}

impl HermExpansion {
    pub fn new(n_qubits: usize) -> Self {
        HermExpansion {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(n_qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliWord, BigRational)>,
    {
        let mut e = HermExpansion::new(n_qubits);
        for (word, c) in terms {
            e.add_term(word, c)?;
        }
        Ok(e)
    }

    /// Single word with coefficient 1.
    pub fn word(word: PauliWord) -> Self {
        let n = word.n_qubits();
        let mut e = HermExpansion::new(n);
        e.terms.insert(word, BigRational::from_integer(1.into()));
        e
    }

    /// Parse `"X1:1, YX:-3/2"`; a bare word means coefficient 1.
    pub fn parse(n_qubits: usize, s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "expansion",
            input: s.to_string(),
        };
        let mut e = HermExpansion::new(n_qubits);
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (word, coeff) = match part.split_once(':') {
                Some((w, c)) => (
                    w.trim(),
                    c.trim().parse::<BigRational>().map_err(|_| err())?,
                ),
                None => (part, BigRational::from_integer(1.into())),
            };
            e.add_term(word.parse()?, coeff)?;
        }
        Ok(e)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, word: &PauliWord) -> Option<&BigRational> {
        self.terms.get(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliWord, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, word: PauliWord, coefficient: BigRational) -> Result<()> {
        Error::check_dims(self.n_qubits, word.n_qubits())?;
        if coefficient.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(word).or_insert_with(BigRational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn add(&mut self, other: &HermExpansion) -> Result<()> {
        Error::check_dims(self.n_qubits, other.n_qubits)?;
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone())?;
        }
        Ok(())
    }
}

impl fmt::Debug for HermExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}: {c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for HermExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `[i h, i P_k]` expanded as an element of `su(2^N)`.
///
/// For anticommuting words `[P_I, P_J] = 2 i^s P_L` with `s` odd, hence
/// `[i P_I, i P_J] = -2 i^{s-1} (i P_L)`: the real coefficient is `-2` when
/// `s = 1` and `+2` when `s = 3`. This is the single sign convention used by
/// every bracket on expansions.
pub fn bracket_expand(h: &HermExpansion, k_word: &PauliWord) -> Result<HermExpansion> {
    Error::check_dims(h.n_qubits, k_word.n_qubits())?;
    let mut out = HermExpansion::new(h.n_qubits);
    for (word, c) in &h.terms {
        let b = bracket(word, k_word)?;
        if b.is_zero() {
            continue;
        }
        let sign = match b.phase_exp() {
            1 => -1,
            3 => 1,
            s => {
                return Err(Error::Consistency(format!(
                    "bracket of Hermitian words with real phase i^{s}"
                )))
            }
        };
        let factor = b.coefficient() * BigRational::from_integer(BigInt::from(sign));
        out.add_term(b.word().clone(), c * factor)?;
    }
    Ok(out)
}

/// Bilinear bracket `[h, k]` of two expansions.
pub fn bracket_expansions(h: &HermExpansion, k: &HermExpansion) -> Result<HermExpansion> {
    Error::check_dims(h.n_qubits, k.n_qubits)?;
    let mut out = HermExpansion::new(h.n_qubits);
    for (word, c) in &k.terms {
        let mut part = bracket_expand(h, word)?;
        for v in part.terms.values_mut() {
            *v *= c;
        }
        out.add(&part)?;
    }
    Ok(out)
}

/// Restriction to words built from `1` and `X` only.
pub fn xtype_component(e: &HermExpansion) -> HermExpansion {
    HermExpansion {
        n_qubits: e.n_qubits,
        terms: e
            .terms
            .iter()
            .filter(|(w, _)| w.is_x_type())
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect(),
    }
}

/// Right-hand side `<H, [H, K]>` of the geodesic equation for a
/// right-invariant metric, under the diagonal penalty metric.
///
/// The inner product is `tr(A^dagger B) / 2^N` weighted by `b^{2w}`, so
/// `<i P_I, i P_J> = delta_IJ b^{2 w(I)}`. The factor `i` of the Hermitian
/// form of the equation is absorbed by working with skew-Hermitian elements
/// and the bracket sign of [`bracket_expand`].
pub fn arnold_kheshin_rhs(
    h: &HermExpansion,
    k: &HermExpansion,
    metric: &PenaltyMetric,
) -> Result<BigRational> {
    Error::check_dims(h.n_qubits, k.n_qubits)?;
    Error::check_dims(h.n_qubits, metric.n_qubits())?;
    let hk = bracket_expansions(h, k)?;
    let mut total = BigRational::zero();
    for (word, c) in &hk.terms {
        if let Some(hc) = h.terms.get(word) {
            total += hc * c * metric.squared_length(word);
        }
    }
    Ok(total)
}
