//! Squarefree powers of facet ideals: simplicial complexes, matching numbers,
//! forests, squarefree powers, multigraded Betti numbers and regularity.

pub mod betti;
pub mod complex;
pub mod error;
pub mod families;
pub mod forest;
pub mod homology;
pub mod ideal;
pub mod limits;
pub mod linalg;
pub mod matching;
pub mod set;
pub mod verify;

pub use complex::{make_complex, Complex};
pub use error::{Error, Result};
pub use ideal::{facet_ideal, squarefree_power, Ideal, Monomial};
pub use limits::Limits;
pub use linalg::Field;
pub use set::VertexSet;
