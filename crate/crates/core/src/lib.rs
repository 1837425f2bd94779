//! Exact computation of the Goldman bracket and Turaev cobracket for free
//! homotopy classes of loops on a compact oriented surface with boundary.
//!
//! Classes are cyclically reduced cyclic words over the surface's gluing
//! alphabet, the surface itself is a [`surface::SurfaceSymbol`], crossings
//! between loops are enumerated combinatorially as linked pairs, and the
//! bracket and cobracket come out as integer formal sums. Everything is
//! exact integer arithmetic; there are no floats anywhere.
//!
//! ```
//! use ccurves_core::{bialgebra, CyclicWord, SurfaceSymbol};
//!
//! let genus2 = SurfaceSymbol::from_genus_boundary(2, 1).unwrap();
//! let v: CyclicWord = "a1.a2.a2.a3".parse().unwrap();
//! let w: CyclicWord = "A2.A2".parse().unwrap();
//! assert_eq!(bialgebra::bracket(&v, &w, &genus2).to_string(), "-2*a1.a3");
//!
//! let torus = SurfaceSymbol::from_genus_boundary(1, 1).unwrap();
//! let d: CyclicWord = "a1.a1.a2.a2".parse().unwrap();
//! assert!(bialgebra::cobracket(&d, &torus).is_zero());
//! ```

pub mod bialgebra;
pub mod linking;
pub mod sampling;
pub mod surface;
pub mod topology;
pub mod words;

pub use surface::{SurfaceError, SurfaceInvariants, SurfaceSymbol};
pub use words::{CyclicWord, HomologyVector, Letter, LinearWord, WordError};
