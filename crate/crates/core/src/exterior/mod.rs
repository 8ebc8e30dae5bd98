//! Exterior algebra of left-invariant forms.

mod form;
mod tensor;
mod tower;

pub use form::Form;
pub use tensor::{
    antisymmetrizer, decode, encode, left_wedge_rep, monomial_rep, right_wedge_rep, TensorVector,
};
pub use tower::{
    EpsilonStats, FormTower, Level, Stop, TowerOptions, VolumeProperties, DEFAULT_DEGREE_CAP,
    DEFAULT_TERM_BUDGET,
};
