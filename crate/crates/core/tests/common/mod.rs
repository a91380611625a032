//! Dense-matrix oracles over the Gaussian integers. Independent of the
//! symplectic bit algebra: every word is built as an explicit Kronecker
//! product of 2x2 matrices.

#![allow(dead_code)]

use critgeo::pauli::{Letter, PauliWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gi(pub i64, pub i64);

impl std::ops::Add for Gi {
    type Output = Gi;
    fn add(self, o: Gi) -> Gi {
        Gi(self.0 + o.0, self.1 + o.1)
    }
}

impl std::ops::Sub for Gi {
    type Output = Gi;
    fn sub(self, o: Gi) -> Gi {
        Gi(self.0 - o.0, self.1 - o.1)
    }
}

impl std::ops::Mul for Gi {
    type Output = Gi;
    fn mul(self, o: Gi) -> Gi {
        Gi(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
}

pub const ZERO: Gi = Gi(0, 0);
pub const ONE: Gi = Gi(1, 0);
pub const I: Gi = Gi(0, 1);

/// i^s
pub fn phase(s: u8) -> Gi {
    [Gi(1, 0), Gi(0, 1), Gi(-1, 0), Gi(0, -1)][(s % 4) as usize]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<Gi>,
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        Mat {
            n,
            a: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: [[Gi; 2]; 2]) -> Self {
        Mat {
            n: 2,
            a: vec![rows[0][0], rows[0][1], rows[1][0], rows[1][1]],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> Gi {
        self.a[r * self.n + c]
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let n = self.n;
        let mut m = Mat::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let x = self.at(r, k);
                if x == ZERO {
                    continue;
                }
                for c in 0..n {
                    m.a[r * n + c] = m.a[r * n + c] + x * o.at(k, c);
                }
            }
        }
        m
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        let n = self.n * o.n;
        let mut m = Mat::zeros(n);
        for r1 in 0..self.n {
            for c1 in 0..self.n {
                for r2 in 0..o.n {
                    for c2 in 0..o.n {
                        m.a[(r1 * o.n + r2) * n + c1 * o.n + c2] = self.at(r1, c1) * o.at(r2, c2);
                    }
                }
            }
        }
        m
    }

    pub fn scale(&self, s: Gi) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(&x, &y)| x - y).collect(),
        }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        Mat {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(&x, &y)| x + y).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == ZERO)
    }

    /// tr(self^dagger o)
    pub fn inner(&self, o: &Mat) -> Gi {
        self.a
            .iter()
            .zip(&o.a)
            .fold(ZERO, |acc, (&x, &y)| acc + Gi(x.0, -x.1) * y)
    }
}

pub fn letter_matrix(l: Letter) -> Mat {
    match l {
        Letter::I => Mat::identity(2),
        Letter::X => Mat::from_rows([[ZERO, ONE], [ONE, ZERO]]),
        Letter::Y => Mat::from_rows([[ZERO, Gi(0, -1)], [I, ZERO]]),
        Letter::Z => Mat::from_rows([[ONE, ZERO], [ZERO, Gi(-1, 0)]]),
    }
}

pub fn word_matrix(w: &PauliWord) -> Mat {
    w.letters()
        .fold(Mat::identity(1), |acc, l| acc.kron(&letter_matrix(l)))
}

/// Every word on `n` qubits, in letter order 1, X, Y, Z per position.
pub fn all_words(n: usize) -> Vec<PauliWord> {
    let letters = [Letter::I, Letter::X, Letter::Y, Letter::Z];
    (0..4usize.pow(n as u32))
        .map(|mut i| {
            let ls: Vec<Letter> = (0..n)
                .map(|_| {
                    let l = letters[i % 4];
                    i /= 4;
                    l
                })
                .collect();
            PauliWord::from_letters(&ls)
        })
        .collect()
}

/// Express `m` as `c * word_matrix(w)` for some unit `c`; `None` if `m` is
/// not a scaled Pauli word (checked against every word).
pub fn decompose(m: &Mat, n: usize) -> Option<(PauliWord, Gi)> {
    let dim = m.n as i64;
    for w in all_words(n) {
        let p = word_matrix(&w);
        let c = p.inner(m);
        if c != ZERO {
            if c.0 % dim != 0 || c.1 % dim != 0 {
                return None;
            }
            let c = Gi(c.0 / dim, c.1 / dim);
            return (p.scale(c) == *m).then_some((w, c));
        }
    }
    None
}
