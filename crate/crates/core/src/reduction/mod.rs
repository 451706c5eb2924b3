//! Cut-vertex reductions on bunkbed graphs.
//!
//! For a split of `F̄` at `v` into sides `Ḡ` and `H̄`, with `F = BB(F̄)`,
//! `G = BB(Ḡ)`, `H = BB(H̄)` and `H₀ = H − v⁻v⁺`:
//!
//! * collapsing: connections inside `H` are unchanged if `G` is replaced by
//!   the single post `v⁻v⁺` with weight `P_G(v⁻ ∼ v⁺)`;
//! * crossing: for `x` in `G` and `y` in `H`,
//!   `P_F(x ∼ y) = g⁻h₀⁻ + g⁺h₀⁺ − g±h₀±`;
//! * zeroing the post at `v` turns `H` into `H₀` for connections from `v⁻`.
//!
//! [`two_point_probability`] chains these along the cut vertices.

mod collapse;
mod cross;
mod decompose;
mod split;

pub use collapse::{collapse_side, zero_post_weight, CollapsedSide};
pub use cross::{cross_side_probability, cross_side_terms, CrossSideTerms};
pub use decompose::{two_point_probability, two_point_probability_symmetric};
pub use split::{bunkbed_split, BunkbedSplit, Embedding};
