use thiserror::Error;

use crate::table::{Element, ValidationReport};

#[derive(Debug, Error)]
pub enum LoopError {
    #[error("element {element} out of range 1..={order}")]
    OutOfRange { element: usize, order: usize },

    #[error("table is not a loop: {0}")]
    NotALoop(ValidationReport),

    #[error("identity is element {identity}, not 1 (load with normalization to relabel)")]
    IdentityNotOne { identity: Element },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),

    #[error("catalog entry `{key}`: expected {property} = {expected}, computed {computed}")]
    ExpectationMismatch {
        key: String,
        property: String,
        expected: String,
        computed: String,
    },

    #[error("not a bijection on 1..={0}")]
    NotBijection(usize),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error(
        "half-property fails at ({x}, {y}): image of product {image}, \
         hom value {hom}, anti value {anti}"
    )]
    HalfProperty {
        x: Element,
        y: Element,
        image: Element,
        hom: Element,
        anti: Element,
    },

    #[error("subloop is not normal: {0}")]
    NotNormal(String),

    #[error("coset multiplication ill-defined: {0}")]
    CosetConflict(String),

    #[error("induced map is not well defined: {0}")]
    InducedMap(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("theorem violation on `{name}`: proper half-automorphism {map}")]
    TheoremViolation { name: String, map: String },

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, LoopError>;
