//! Exact E2 pages of the Čech spectral sequence for spaces of smooth
//! embeddings `S¹ ↪ M`, computed from the rational (or integral, or mod-p)
//! cohomology ring of `M`.
//!
//! The pipeline has five layers:
//!
//! * [`exactla`] — sparse exact linear algebra over ℤ, ℚ and 𝔽ₚ, with
//!   homology and Smith normal forms;
//! * [`poincare`] — Poincaré duality algebras, their diagonal classes and
//!   the suspension used for manifolds with invertible Euler characteristic;
//! * [`graphs`] — graphs on labelled vertices and the index maps of the
//!   simplicial structure;
//! * [`cdba`] — the presented bigraded algebras on `n` vertices with
//!   their internal differential, faces, degeneracies and symmetric action;
//! * [`ss`] — the normalized E1 page, its total differential, the E2 page
//!   and the reports built on it.
//!
//! ```
//! use cechss::{Engine, PoincareAlgebra, Rationals};
//!
//! let sphere = PoincareAlgebra::builtin("sphere:5").unwrap();
//! let page = Engine::new(&sphere, Rationals).unwrap().e2_table(5).unwrap();
//! assert_eq!(page.get(-3, 5).free_rank, 1);
//! ```

pub mod exactla;
pub mod graphs;
pub mod poincare;
pub mod cdba;
pub mod ss;

pub use cdba::{Cdba, CdbaError, Element, Flavor, Monomial};
pub use exactla::{ExactError, ExactMatrix, GroupDescriptor, Integers, PrimeField, Rationals, Ring, RingSpec, RingVisitor};
pub use graphs::{Graph, GraphFilter, IndexMap};
pub use poincare::{BasisElement, Combination, PoincareAlgebra, PoincareError, Rational};
pub use ss::{
    four_manifold_report, select_flavor, stability_from_page, E1Slice, E2Page, Engine, FourManifoldReport,
    SignConvention, SsError, StabilityReport, TdMatrix,
};
