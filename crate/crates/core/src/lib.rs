#![no_std]
extern crate alloc;

pub mod budget;
pub mod check;
pub mod error;
pub mod geometry;
pub mod gfp;
pub mod hyperspace;
pub mod incidence;
pub mod phi;
pub mod ring;
pub mod rng;
pub mod verify;

pub use budget::Budget;
pub use check::{Check, Relation};
pub use error::{Error, Result};
pub use gfp::MatGFp;
pub use ring::{Point, RingCtx, RingElem};
