//! Upper bounds on the rational points of W2 = C + C inside the Jacobian of a
//! genus 3 odd-degree hyperelliptic curve, from data reduced mod a prime.

pub mod bound;
pub mod curve;
pub mod disks;
pub mod dlocus;
pub mod error;
pub mod field;
pub mod job;
pub mod padic;
pub mod picard;
pub mod poly;
pub mod report;
pub mod verify;
pub mod wedge;

pub use error::{Error, Result};
pub use job::{JobSpec, Session};
pub use report::{run, Report};
pub use verify::verify;
