//! Analysis of finite choice functions exhibiting reactions to restricted
//! options: revealed reaction and similarity, axiom checks, synthesis and
//! certification of rationalizing structures, welfare and freedom measures,
//! and two applied models (news-source choice and cultural transmission).
//!
//! ```
//! use std::sync::Arc;
//! use rsc_core::{choice_from_order, check_exp, GroundSet, LinearOrder};
//!
//! let ground = Arc::new(GroundSet::new(["x", "y", "z"]).unwrap());
//! let cf = choice_from_order(ground, &LinearOrder::identity(3));
//! assert_eq!(cf.choice_named(&["y", "z"]), "y");
//! assert!(check_exp(&cf).holds);
//! ```

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

pub mod applications;
pub mod axioms;
pub mod choice;
pub mod error;
pub mod fixtures;
pub mod normative;
pub mod random;
pub mod revealed;
pub mod structure;

pub use axioms::{
    check_exp, check_iia, check_ir, check_nrs, check_spr, tsm_choice, Axiom, AxiomChecker, AxiomVerdict, TsmSpec,
    Violation,
};
pub use choice::{
    choice_from_order, enumerate_choice_functions, enumerate_menus, parse_choice_function, serialize_choice_function,
    ChoiceFormat, ChoiceFunction, GroundSet, LinearOrder, Menu, TypePartition,
};
pub use error::{Error, Result};
pub use revealed::{reveal_binary, reveal_reaction, similarity_classes, BinaryRelation, RevealedReport};
pub use structure::{
    certify_single_peaked, minimal_structure, synthesize_rs, RSStructure, SinglePeakedCertificate, SynthesisTrace,
};

/// Floating-point scalar used by the applied models.
pub trait Scalar: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

pub type MediaParams64 = applications::MediaParams<f64>;
pub type MediaOutcome64 = applications::MediaOutcome<f64>;
pub type CultureParams64 = applications::CultureParams<f64>;
pub type CultureOutcome64 = applications::CultureOutcome<f64>;
pub type ConsistencyReport64 = applications::ConsistencyReport<f64>;
