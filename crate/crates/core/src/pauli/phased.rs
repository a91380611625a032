use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;

use super::word::{commutes, product};
use super::PauliWord;

/// `coefficient * i^phase_exp * word`, with an exact rational coefficient.
///
/// A zero coefficient is the canonical zero whatever the stored word, and
/// compares equal to every other zero of the same qubit count.
#[derive(Clone)]
pub struct PhasedPauli {
    word: PauliWord,
    phase_exp: u8,
    coefficient: BigRational,
}

impl PhasedPauli {
    pub fn new(word: PauliWord, phase_exp: u8, coefficient: BigRational) -> Self {
        let mut p = PhasedPauli {
            word,
            phase_exp: phase_exp % 4,
            coefficient,
        };
        p.normalize();
        p
    }

    pub fn unit(word: PauliWord, phase_exp: u8) -> Self {
        PhasedPauli::new(word, phase_exp, BigRational::one())
    }

    pub fn zero(n_qubits: usize) -> Self {
        PhasedPauli::new(PauliWord::identity(n_qubits), 0, BigRational::zero())
    }

    pub fn word(&self) -> &PauliWord {
        &self.word
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.coefficient
    }

    pub fn n_qubits(&self) -> usize {
        self.word.n_qubits()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    /// The scalar `coefficient * i^phase_exp` as exact (real, imaginary) parts.
    pub fn scalar(&self) -> (BigRational, BigRational) {
        let c = self.coefficient.clone();
        let zero = BigRational::zero();
        match self.phase_exp {
            0 => (c, zero),
            1 => (zero, c),
            2 => (-c, zero),
            _ => (zero, -c),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        PhasedPauli::new(
            self.word.clone(),
            self.phase_exp,
            &self.coefficient * factor,
        )
    }

    // Keep the coefficient nonnegative by moving its sign into the phase,
    // and collapse zeros onto the identity word.
    fn normalize(&mut self) {
        if self.coefficient.is_zero() {
            self.word = PauliWord::identity(self.word.n_qubits());
            self.phase_exp = 0;
        } else if self.coefficient.is_negative() {
            self.coefficient = -self.coefficient.clone();
            self.phase_exp = (self.phase_exp + 2) % 4;
        }
    }
}

impl PartialEq for PhasedPauli {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word
            && self.phase_exp == other.phase_exp
            && self.coefficient == other.coefficient
    }
}

impl Eq for PhasedPauli {}

impl fmt::Debug for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let phase = ["", "i*", "-", "-i*"][self.phase_exp as usize];
        if self.coefficient.is_one() {
            write!(f, "{phase}{}", self.word)
        } else {
            write!(f, "{phase}{}*{}", self.coefficient, self.word)
        }
    }
}

impl Neg for PhasedPauli {
    type Output = PhasedPauli;

    fn neg(self) -> PhasedPauli {
        PhasedPauli::new(self.word, self.phase_exp + 2, self.coefficient)
    }
}

impl Mul for &PhasedPauli {
    type Output = Result<PhasedPauli>;

    fn mul(self, rhs: &PhasedPauli) -> Result<PhasedPauli> {
        let p = product(&self.word, &rhs.word)?;
        Ok(PhasedPauli::new(
            p.word,
            self.phase_exp + rhs.phase_exp + p.phase_exp,
            &self.coefficient * &rhs.coefficient,
        ))
    }
}

/// Commutator `[p, q] = pq - qp` of two Hermitian Pauli words.
///
/// Zero when the words commute, otherwise `2 pq`, which always carries a
/// phase of `i` or `-i`.
pub fn bracket(p: &PauliWord, q: &PauliWord) -> Result<PhasedPauli> {
    if commutes(p, q)? {
        return Ok(PhasedPauli::zero(p.n_qubits()));
    }
    Ok(product(p, q)?.scale(&BigRational::from_integer(BigInt::from(2))))
}
