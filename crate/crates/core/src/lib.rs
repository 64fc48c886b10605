pub mod characters;
pub mod closedforms;
pub mod combinatorics;
pub mod error;
pub mod exactla;
pub mod homalg;
pub mod polymod;
pub mod schuralg;
pub mod verify;

pub use error::{Error, Result};
