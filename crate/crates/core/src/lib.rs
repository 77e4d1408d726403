pub mod ehat;
pub mod error;
pub mod massey;
pub mod bp;
pub mod d0;
pub mod d1;
pub mod diagonal;
pub mod milnor;
pub mod series;
pub mod verify;

pub use error::{AlgebraError, Result};
