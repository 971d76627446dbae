//! The simplex category and simplicial modules: Dold–Kan in both directions,
//! shuffle products, homotopies and bisimplicial diagonals.

mod bisimplicial;
mod homotopy;
mod kan;
mod monotone;
mod shuffle;
mod simplicial;

pub use bisimplicial::{diagonal, double_kan_transform, BisimplicialModule, BisimplicialSlice};
pub use homotopy::{full_augmentation, step_map, SimplicialHomotopyData};
pub use kan::{kan_counit, kan_transform, KanLayout};
pub use monotone::{surjections, MonotoneMap};
pub use shuffle::{shuffle_product, shuffles, Shuffle, SimplicialAlgebra};
pub use simplicial::{normalize, normalized_complex, unnormalized_complex, Normalized, SimplicialModule, SimplicialSlice};
