pub mod abelian;
pub mod budget;
pub mod catalog;
pub mod cocycles;
pub mod cohomology2;
pub mod endo;
pub mod error;
pub mod examples;
pub mod extension;
pub mod group;
pub mod report;
pub mod verify;
pub mod ring;
pub mod zmod;

pub use budget::Budget;
pub use error::{Error, Result};
