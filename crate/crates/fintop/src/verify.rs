//! Exhaustive comparison of direct predicate definitions with their
//! lifting-style characterizations over a census of finite spaces or maps.

use serde::Serialize;

use crate::census::{Census, CensusError};
use crate::canon::{map_key, space_key};
use crate::classify::{
    characterizations_for, CharSpec, Characterization, MapPredicate, SpacePredicate,
};
use crate::lifting::Square;
use crate::notation::{render_map, render_space};
use crate::orthogonal::{prepare, EvalError, Subject};

/// A lifting square rendered back to notation.
#[derive(Debug, Clone, Serialize)]
pub struct SquareReport {
    pub left: String,
    pub right: String,
    pub top: String,
    pub bottom: String,
}

impl SquareReport {
    pub fn from_square(square: &Square) -> Self {
        SquareReport {
            left: render_map(square.left()),
            right: render_map(square.right()),
            top: render_map(square.top()),
            bottom: render_map(square.bottom()),
        }
    }
}

/// One instance where the direct definition and the characterization differ.
#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    /// The instance in notation.
    pub expr: String,
    /// Canonical key of the instance, hex encoded.
    pub key: String,
    pub direct: bool,
    pub lifting: bool,
    /// Failing square when the characterization side is the false one.
    pub counterexample: Option<SquareReport>,
}

/// Outcome of verifying one characterization over a whole census.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub predicate: String,
    pub variant: String,
    /// Component predicates when the characterization is a conjunction.
    pub composite: Option<Vec<String>>,
    pub bound: usize,
    pub instances_checked: usize,
    pub mismatches: Vec<Mismatch>,
    /// Instances satisfying the characterization but not surjective;
    /// populated only for `final_topology`.
    pub extension: Vec<String>,
    /// Census bounds used by intermediate complement steps.
    pub bounds_chain: Vec<usize>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Checks one characterization against the direct definition for every
/// instance in the census up to `bound`. Intermediate complement classes
/// are computed once and shared across instances.
pub fn verify_characterization(
    entry: &'static Characterization,
    bound: usize,
) -> Result<VerificationReport, VerifyError> {
    let composite = match &entry.spec {
        CharSpec::Conjunction { of } => {
            Some(of.iter().map(|s| s.to_string()).collect())
        }
        CharSpec::Lifting { .. } => None,
    };
    let prepared = prepare(entry, bound)?;
    let mut mismatches = Vec::new();
    let mut extension = Vec::new();
    let mut instances_checked = 0;

    if let Some(pred) = MapPredicate::from_name(entry.name) {
        let maps = crate::census::shared_maps(bound)?;
        for m in maps.iter() {
            instances_checked += 1;
            let direct = pred.eval(m);
            let out = prepared.eval(Subject::Map(m))?;
            if direct != out.holds {
                mismatches.push(Mismatch {
                    expr: render_map(m),
                    key: map_key(m).to_string(),
                    direct,
                    lifting: out.holds,
                    counterexample: out.counterexample.as_ref().map(SquareReport::from_square),
                });
            }
            if pred == MapPredicate::FinalTopology
                && out.holds
                && !crate::classify::is_surjective(m)
            {
                extension.push(render_map(m));
            }
        }
    } else if let Some(pred) = SpacePredicate::from_name(entry.name) {
        let census = Census::up_to(bound)?;
        for s in census.spaces() {
            instances_checked += 1;
            let direct = pred.eval(s);
            let out = prepared.eval(Subject::Space(s))?;
            if direct != out.holds {
                mismatches.push(Mismatch {
                    expr: render_space(s),
                    key: space_key(s).to_string(),
                    direct,
                    lifting: out.holds,
                    counterexample: out.counterexample.as_ref().map(SquareReport::from_square),
                });
            }
        }
    } else {
        return Err(VerifyError::UnknownPredicate(entry.name.to_string()));
    }

    Ok(VerificationReport {
        predicate: entry.name.to_string(),
        variant: entry.variant.to_string(),
        composite,
        bound,
        instances_checked,
        mismatches,
        extension,
        bounds_chain: prepared.bounds_chain().to_vec(),
    })
}

/// Verifies every registered characterization of the named predicate.
pub fn verify_correspondence(
    name: &str,
    bound: usize,
) -> Result<Vec<VerificationReport>, VerifyError> {
    let entries = characterizations_for(name);
    if entries.is_empty() {
        return Err(VerifyError::UnknownPredicate(name.to_string()));
    }
    entries
        .into_iter()
        .map(|entry| verify_characterization(entry, bound))
        .collect()
}
