//! Exact-arithmetic spectral theory of the (extended) ADE graphs.
//!
//! Everything here is computed over arbitrary-precision rationals: loop
//! counts at the distinguished vertex, Poincaré series as exact rational
//! functions, the associated Jones `Θ`- and `T`-series, spectral measures on
//! the unit circle written in the cyclotomic basis `d_n` / `α·d_n`, and the
//! linear-system decision procedure that decides whether a `T`-series lies
//! in the cyclotomic span. There are no tolerances anywhere; every identity
//! the crate claims is checked as exact equality, and the `verify` module
//! bundles those checks into a runnable suite.
//!
//! ```
//! use ade_spectra::graphs::{build_graph, loop_count, GraphName};
//! use ade_spectra::series::{factored_display, graph_t_series};
//! use ade_spectra::cyclotomic::decompose_graph;
//!
//! let e6: GraphName = "E6".parse().unwrap();
//! let g = build_graph(&e6).unwrap();
//! assert_eq!(loop_count(&g, 6).unwrap(), 6.into());
//!
//! let t = graph_t_series(&g);
//! assert_eq!(factored_display(&t), "(1-q^6)(1-q^8)/((1-q^3)(1-q^12))");
//!
//! // E6 decomposes in the cyclotomic basis; E7 does not.
//! assert!(decompose_graph(&e6).unwrap().decomposition.is_feasible());
//! assert!(!decompose_graph(&"E7".parse().unwrap())
//!     .unwrap()
//!     .decomposition
//!     .is_feasible());
//! ```

pub mod algebra;
pub mod cyclotomic;
pub mod display;
pub mod error;
pub mod graphs;
pub mod measures;
pub mod recursion;
pub mod report;
pub mod series;
pub mod verify;

pub use error::Error;
