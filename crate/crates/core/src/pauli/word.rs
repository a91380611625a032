use std::fmt;
use std::str::FromStr;

use crate::bits::Bits;
use crate::error::{Error, Result};

use super::PhasedPauli;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    #[inline]
    pub fn from_xz(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    #[inline]
    pub fn xz(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::I => '1',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

/// An N-qubit Pauli word without phase.
///
/// Qubit 0 is the leftmost tensor factor. Text form uses `1` (or `I`) for
/// the identity letter, e.g. `"11ZX1Y"`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliWord {
    x: Bits,
    z: Bits,
}

impl PauliWord {
    pub fn identity(n_qubits: usize) -> Self {
        PauliWord {
            x: Bits::zeros(n_qubits),
            z: Bits::zeros(n_qubits),
        }
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        PauliWord {
            x: Bits::from_fn(letters.len(), |q| letters[q].xz().0),
            z: Bits::from_fn(letters.len(), |q| letters[q].xz().1),
        }
    }

    pub fn from_xz(x_bits: &[bool], z_bits: &[bool]) -> Result<Self> {
        Error::check_dims(x_bits.len(), z_bits.len())?;
        Ok(PauliWord {
            x: Bits::from_fn(x_bits.len(), |q| x_bits[q]),
            z: Bits::from_fn(z_bits.len(), |q| z_bits[q]),
        })
    }

    /// The X-type word with `X` on every listed qubit.
    pub fn x_type(n_qubits: usize, support: &[usize]) -> Self {
        let mut word = PauliWord::identity(n_qubits);
        for &q in support {
            word.x.set(q, true);
        }
        word
    }

    /// Word from the packed index `x | z << N` used by the curvature module.
    pub fn from_index(n_qubits: usize, index: usize) -> Self {
        PauliWord {
            x: Bits::from_fn(n_qubits, |q| index >> q & 1 == 1),
            z: Bits::from_fn(n_qubits, |q| index >> (n_qubits + q) & 1 == 1),
        }
    }

    /// Inverse of [`PauliWord::from_index`]; `None` when `2N` exceeds the
    /// pointer width.
    pub fn index(&self) -> Option<usize> {
        let n = self.n_qubits();
        if 2 * n >= usize::BITS as usize {
            return None;
        }
        let mut index = 0usize;
        for q in 0..n {
            index |= (self.x.get(q) as usize) << q;
            index |= (self.z.get(q) as usize) << (n + q);
        }
        Some(index)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_xz(self.x.get(qubit), self.z.get(qubit))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.n_qubits()).map(|q| self.letter(q))
    }

    pub fn x_bits(&self) -> Vec<bool> {
        (0..self.n_qubits()).map(|q| self.x.get(q)).collect()
    }

    pub fn z_bits(&self) -> Vec<bool> {
        (0..self.n_qubits()).map(|q| self.z.get(q)).collect()
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Words built from `1` and `X` only.
    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    fn y_count(&self) -> usize {
        self.x.and_count(&self.z)
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters().try_for_each(|l| write!(f, "{}", l.symbol()))
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliWord({self})")
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                '1' | 'I' => Ok(Letter::I),
                'X' => Ok(Letter::X),
                'Y' => Ok(Letter::Y),
                'Z' => Ok(Letter::Z),
                _ => Err(Error::Parse {
                    what: "Pauli word",
                    input: s.to_string(),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(Error::Parse {
                what: "Pauli word",
                input: s.to_string(),
            });
        }
        Ok(PauliWord::from_letters(&letters))
    }
}

pub fn weight(p: &PauliWord) -> usize {
    p.weight()
}

/// Symplectic commutation test: the words commute iff they anticommute on an
/// even number of qubits.
pub fn commutes(p: &PauliWord, q: &PauliWord) -> Result<bool> {
    Error::check_dims(p.n_qubits(), q.n_qubits())?;
    let count = p.x.and_count(&q.z) + p.z.and_count(&q.x);
    Ok(count.is_multiple_of(2))
}

/// Phase-tracked product `p * q = i^s * r`.
///
/// Writing each letter as `i^{xz} X^x Z^z`, the exponent is
/// `y(p) + y(q) + 2 |z_p & x_q| - y(r)` mod 4 where `y` counts `Y` letters.
pub fn product(p: &PauliWord, q: &PauliWord) -> Result<PhasedPauli> {
    Error::check_dims(p.n_qubits(), q.n_qubits())?;
    let word = PauliWord {
        x: p.x.xor(&q.x),
        z: p.z.xor(&q.z),
    };
    let s =
        p.y_count() + q.y_count() + 2 * p.z.and_count(&q.x) + 4 * word.n_qubits() - word.y_count();
    Ok(PhasedPauli::unit(word, (s % 4) as u8))
}
