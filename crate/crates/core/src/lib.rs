//! Exact symbolic computations for binomial ideals attached to collections
//! of unit cells in the lattice plane.
//!
//! A collection of cells determines three nested binomial ideals in the
//! polynomial ring with one variable per vertex: the ideal of inner 2-minors,
//! the kernel of the recursive Laurent-monomial map on free vertices, and the
//! toric ideal of the bipartite row/column edge ring.  This crate builds all
//! three exactly (integer-only arithmetic, coefficients restricted to ±1),
//! decides equality and primality through reduced Gröbner bases, computes
//! Hilbert data from initial ideals, and carries the full stack-polyomino
//! analysis: distinguished vertical interval, minimal primes, class group
//! rank, canonical class vector and the Gorenstein test.
//!
//! Every symbolic result has an independent brute-force counterpart in
//! [`oracle`]: finite-field point scans, degree-bounded kernel enumeration
//! and integer-lattice membership via Hermite normal forms.
//!
//! The crate is `no_std` (with `alloc`); all operations are pure functions
//! over immutable values and are safe to use concurrently.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod cancel;
pub mod constructions;
pub mod grid;
pub mod hilbert;
pub(crate) mod intmat;
pub mod oracle;
pub mod stack;

pub use cancel::CancelToken;
pub use grid::{Cell, CellCollection, ClassificationReport, Interval, Vertex};
