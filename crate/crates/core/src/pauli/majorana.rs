use std::fmt;
use std::str::FromStr;

use crate::bits::Bits;
use crate::error::{Error, Result};

use super::{Letter, PauliWord, PhasedPauli};

/// Monomial `gamma_{j1} gamma_{j2} ...` (increasing indices) in `2n`
/// Majorana operators, stored as a bit string of length `2n`. Bit `j`
/// (0-based, leftmost in text form) selects `gamma_{j+1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MajoranaString {
    bits: Bits,
}

impl MajoranaString {
    pub fn zero(n_modes: usize) -> Self {
        MajoranaString {
            bits: Bits::zeros(2 * n_modes),
        }
    }

    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        if !bits.len().is_multiple_of(2) {
            return Err(Error::out_of_range(
                "length",
                bits.len(),
                "an even number 2n",
            ));
        }
        Ok(MajoranaString {
            bits: Bits::from_fn(bits.len(), |i| bits[i]),
        })
    }

    pub fn from_indices(n_modes: usize, ones: &[usize]) -> Result<Self> {
        let mut bits = Bits::zeros(2 * n_modes);
        for &i in ones {
            if i >= 2 * n_modes {
                return Err(Error::out_of_range(
                    "index",
                    i,
                    format!("< 2n = {}", 2 * n_modes),
                ));
            }
            bits.set(i, true);
        }
        Ok(MajoranaString { bits })
    }

    /// String whose bit `j` is bit `j` of `value` (`2n <= 64`).
    pub fn from_u64(n_modes: usize, value: u64) -> Self {
        debug_assert!(2 * n_modes <= 64);
        MajoranaString {
            bits: Bits::from_fn(2 * n_modes, |j| value >> j & 1 == 1),
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        if self.len() > 64 {
            return None;
        }
        Some(self.bits.ones().fold(0u64, |acc, j| acc | 1 << j))
    }

    pub fn n_modes(&self) -> usize {
        self.bits.len() / 2
    }

    /// Number of Majorana operators, `2n`.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.len() == 0
    }

    pub fn get(&self, j: usize) -> bool {
        self.bits.get(j)
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn overlap(&self, other: &MajoranaString) -> Result<usize> {
        Error::check_dims(self.len(), other.len())?;
        Ok(self.bits.and_count(&other.bits))
    }

    pub fn xor(&self, other: &MajoranaString) -> MajoranaString {
        MajoranaString {
            bits: self.bits.xor(&other.bits),
        }
    }

    pub fn xor_assign(&mut self, other: &MajoranaString) {
        self.bits.xor_assign(&other.bits);
    }

    pub(crate) fn first_one(&self) -> Option<usize> {
        self.bits.first_one()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }
}

impl fmt::Display for MajoranaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        (0..self.len()).try_for_each(|j| write!(f, "{}", if self.get(j) { '1' } else { '0' }))
    }
}

impl fmt::Debug for MajoranaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MajoranaString({self})")
    }
}

impl FromStr for MajoranaString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse {
                    what: "Majorana string",
                    input: s.to_string(),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        MajoranaString::from_bools(&bits)
    }
}

/// Image of a single Majorana operator `gamma_{j+1}` (0-based `j`):
/// `gamma_{2m-1} = Z..Z X 1..1`, `gamma_{2m} = Z..Z Y 1..1` with `m - 1`
/// leading `Z`s.
fn single_image(n_modes: usize, j: usize) -> PauliWord {
    let mode = j / 2;
    let letters: Vec<Letter> = (0..n_modes)
        .map(|q| match q.cmp(&mode) {
            std::cmp::Ordering::Less => Letter::Z,
            std::cmp::Ordering::Equal if j.is_multiple_of(2) => Letter::X,
            std::cmp::Ordering::Equal => Letter::Y,
            std::cmp::Ordering::Greater => Letter::I,
        })
        .collect();
    PauliWord::from_letters(&letters)
}

/// Jordan-Wigner image of the ordered monomial, as a phased Pauli word on
/// `n` qubits.
pub fn jordan_wigner(m: &MajoranaString) -> PhasedPauli {
    let n = m.n_modes();
    let mut acc = PhasedPauli::unit(PauliWord::identity(n), 0);
    for j in m.ones() {
        let factor = PhasedPauli::unit(single_image(n, j), 0);
        acc = (&acc * &factor).expect("images share the qubit count");
    }
    acc
}
