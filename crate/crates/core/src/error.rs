use thiserror::Error;

use crate::axioms::AxiomVerdict;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ground set: {0}")]
    InvalidGroundSet(String),
    #[error("ground set of {size} options exceeds the cap of {cap}")]
    GroundSetTooLarge { size: usize, cap: usize },
    #[error("no choice recorded for menu `{0}`")]
    MissingMenu(String),
    #[error("menu `{0}` appears more than once")]
    DuplicateMenu(String),
    #[error("choice `{choice}` is not a member of menu `{menu}`")]
    ChoiceOutsideMenu { menu: String, choice: String },
    #[error("unknown option `{0}`")]
    UnknownOption(String),
    #[error("malformed menu key `{0}`")]
    MalformedKey(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("axiom {} violated", .0.axiom)]
    AxiomViolation(Box<AxiomVerdict>),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("identification formula mismatch: {0}")]
    FormulaMismatch(String),
    #[error("choice function is not a single-peaked restriction-sensitive choice")]
    NotSinglePeakedRsc,
    #[error("shortlist maximum on menu `{0}` is not a single option")]
    NotSingleValued(String),
    #[error("rationale {0} is not transitive and asymmetric")]
    InvalidRationale(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("effort is at a corner at the reactance threshold (q = {0})")]
    NotInteriorAtGhat(f64),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable identifier, one per variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidGroundSet(_) => "invalid_ground_set",
            Error::GroundSetTooLarge { .. } => "ground_set_too_large",
            Error::MissingMenu(_) => "missing_menu",
            Error::DuplicateMenu(_) => "duplicate_menu",
            Error::ChoiceOutsideMenu { .. } => "choice_outside_menu",
            Error::UnknownOption(_) => "unknown_option",
            Error::MalformedKey(_) => "malformed_key",
            Error::Malformed(_) => "malformed_input",
            Error::AxiomViolation(_) => "axiom_violation",
            Error::InternalInconsistency(_) => "internal_inconsistency",
            Error::FormulaMismatch(_) => "formula_mismatch",
            Error::NotSinglePeakedRsc => "not_single_peaked_rsc",
            Error::NotSingleValued(_) => "not_single_valued",
            Error::InvalidRationale(_) => "invalid_rationale",
            Error::InvalidParams(_) => "invalid_params",
            Error::NotInteriorAtGhat(_) => "not_interior_at_ghat",
            Error::InvalidRange(_) => "invalid_range",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
            Error::Io(_) => "io",
        }
    }
}
