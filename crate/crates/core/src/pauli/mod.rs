//! Exact algebra of N-qubit Pauli words and 2n-mode Majorana strings.
//!
//! Words use the two-bitvector symplectic encoding: per qubit the pair
//! `(x, z)` maps `00 -> 1`, `10 -> X`, `11 -> Y`, `01 -> Z`. Products carry an
//! exact `i^s` phase and all coefficients are exact rationals, so the
//! totally-geodesic checks hold with zero tolerance.
//!
//! Elements of `su(2^N)` are stored as [`HermExpansion`]s: real coefficients
//! `h_I` standing for the skew-Hermitian operator `i * sum_I h_I P_I`. Under
//! that convention the Lie bracket of two expansions is again a real
//! expansion; see [`bracket_expand`] for the sign.

mod expansion;
mod majorana;
mod phased;
mod tower;
mod word;

pub use expansion::{
    arnold_kheshin_rhs, bracket_expand, bracket_expansions, xtype_component, HermExpansion,
};
pub use majorana::{jordan_wigner, MajoranaString};
pub use phased::{bracket, PhasedPauli};
pub use tower::{cartan_tower, CartanTower};
pub use word::{commutes, product, weight, Letter, PauliWord};
