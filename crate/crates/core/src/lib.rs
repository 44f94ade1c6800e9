//! Static analysis of PV (semaphore) programs through their geometric
//! semantics.
//!
//! A program with `N` processes is modelled as a cubical area of
//! `[0,∞[ᴺ`: the points where no semaphore is over-subscribed. The area is
//! kept in a canonical form (the set of its maximal cubes) and factorized as
//! a product of irreducible areas. Each factor corresponds to a group of
//! processes that runs independently from all the others.
//!
//! ```
//! use pvsplit::{factor::factorize, pv::gen_sigma, semantics::state_space};
//!
//! let program = gen_sigma(&[2, 2], false).unwrap();
//! let area = state_space(&program);
//! let factors = factorize(&area).unwrap();
//! assert_eq!(factors.to_string(), "{1,3}{2,4}");
//! ```

pub mod exec;
pub mod factor;
pub mod geometry;
pub mod oracle;
pub mod pv;
pub mod report;
pub mod semantics;

pub use exec::Exec;
pub use factor::{factorize, Factor, Factorization};
pub use geometry::{Area, Bound, Cube, GeometryError, Interval, Permutation};
pub use pv::{Instruction, Op, Process, Program};
