//! Finite commutative rings, amalgamated algebras along ideals, and the
//! zero-divisor graphs of those algebras.
//!
//! Rings are stored as dense operation tables over a carrier of handles
//! `0..n`, so every question asked of a ring is answered by enumeration.
//!
//! ```
//! use zda_core::{cross_check, ideal_generated, make_zn, natural_hom, poly_quotient, AmalgamSpec};
//!
//! let r = make_zn(4)?;
//! let s = poly_quotient(&r, &[r.zero(), r.zero(), r.zero(), r.one()], "x")?;
//! let f = natural_hom(&r, &s)?;
//! let j = ideal_generated(&s, &[s.find("x").unwrap()])?;
//! let report = cross_check(&AmalgamSpec::new(&r, &s, &f, &j)?)?;
//! assert_eq!(report.oracle_diameter, 2);
//! # Ok::<(), zda_core::ZdaError>(())
//! ```

pub mod catalog;
pub mod classify;
pub mod construct;
pub mod error;
pub mod graph;
pub mod hom;
pub mod ideal;
pub mod ring;
pub mod scenario;
pub mod spectrum;
pub mod sweep;

pub use classify::{cross_check, cross_check_realized, predict_diameter, ClassificationReport};
pub use construct::{
    amalgamation, duplication, idealization, n_trivial_extension, AmalgamRing, AmalgamSpec, Extension,
    ModuleData, Properties, TrivialExtSpec,
};
pub use error::{Result, ZdaError};
pub use graph::{Diameter, Girth, ZeroDivisorGraph};
pub use hom::{hom_from_rules, identity_hom, make_hom, natural_hom, preimage_ideal, RingHom};
pub use ideal::{all_ideals, ideal_generated, nonzero_proper_ideals, Ideal};
pub use ring::{direct_product, make_zn, poly_quotient, Element, ElementSet, FiniteRing, Shape};
pub use scenario::{parse_scenario, Instance, Scenario};
pub use spectrum::{prime_spectrum, SpectrumResult};
pub use sweep::{run_sweep, Family, SweepSummary};
