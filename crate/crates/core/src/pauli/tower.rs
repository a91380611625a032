use itertools::Itertools;

use crate::error::{Error, Result};

use super::word::commutes;
use super::PauliWord;

/// Basis of the Cartan subalgebra spanned by X-type words of weight `1..=k`.
///
/// Words are ordered by weight, then by their sorted support, so
/// `X11..1, 1X1..1, ..., XX1..1, X1X..1, ...`. The level `k - 1` basis is a
/// prefix of the level `k` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanTower {
    n_qubits: usize,
    level: usize,
    basis: Vec<PauliWord>,
}

impl CartanTower {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn basis(&self) -> &[PauliWord] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Words that are new at this level (weight exactly `k`).
    pub fn top_layer(&self) -> impl Iterator<Item = &PauliWord> {
        self.basis.iter().filter(move |w| w.weight() == self.level)
    }

    pub fn all_commute(&self) -> bool {
        self.basis
            .iter()
            .tuple_combinations()
            .all(|(p, q)| commutes(p, q).unwrap_or(false))
    }
}

/// Largest basis [`cartan_tower`] will materialise.
pub const TOWER_BASIS_CAP: u128 = 1 << 22;

pub fn cartan_tower(n_qubits: usize, k: usize) -> Result<CartanTower> {
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
    let size = crate::metric::cumulative_binomial(k, n_qubits)?;
    if size > TOWER_BASIS_CAP.into() {
        return Err(Error::Capacity(format!(
            "tower basis of size {size} exceeds {TOWER_BASIS_CAP} words"
        )));
    }
    let basis = (1..=k)
        .flat_map(|weight| (0..n_qubits).combinations(weight))
        .map(|support| PauliWord::x_type(n_qubits, &support))
        .collect();
    Ok(CartanTower {
        n_qubits,
        level: k,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(cartan_tower(4, 2).unwrap().dimension(), 10);
        assert_eq!(cartan_tower(4, 4).unwrap().dimension(), 15);
        let t = cartan_tower(1, 1).unwrap();
        assert_eq!(t.basis()[0].to_string(), "X");
    }

    #[test]
    fn ordering_and_nesting() {
        let t = cartan_tower(4, 2).unwrap();
        let text: Vec<String> = t.basis().iter().map(|w| w.to_string()).collect();
        assert_eq!(&text[..5], ["X111", "1X11", "11X1", "111X", "XX11"]);
        assert_eq!(text[9], "11XX");
        let lower = cartan_tower(4, 1).unwrap();
        assert!(t.basis().starts_with(lower.basis()));
        assert_eq!(t.top_layer().count(), 6);
    }

    #[test]
    fn range_errors() {
        assert!(cartan_tower(4, 0).is_err());
        assert!(cartan_tower(4, 5).is_err());
        assert!(cartan_tower(0, 0).is_err());
        assert!(matches!(cartan_tower(200, 10), Err(Error::Capacity(_))));
    }

    #[test]
    fn commuting_for_small_towers() {
        for n in 1..=6 {
            for k in 1..=n {
                let t = cartan_tower(n, k).unwrap();
                assert!(t.all_commute(), "N={n} k={k}");
                assert!(t.basis().iter().all(|w| w.is_x_type()));
            }
        }
    }
}
