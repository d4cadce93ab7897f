//! Orthogonal-complement classes over finite censuses, and evaluation of
//! registered characterizations against concrete subjects.
//!
//! A complement step restricts attention to maps in the census up to a size
//! bound, so a single step is exact for every map within the bound, while
//! iterated steps can only over-approximate the ideal class: each report
//! carries the chain of bounds used so results are read with that caveat.

use crate::census::CensusError;
use crate::classify::{lifting_characterization, CharShape, CharSpec, Characterization};
use crate::lifting::{check_against_class, Square};
use crate::map::FinMap;
use crate::notation::{parse_map, ClassExpr};
use crate::space::FinSpace;
use crate::Side;

/// One complement step with the census bound it actually used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolvedStep {
    pub side: Side,
    pub bound: usize,
}

/// Maps in the census up to `bound` lying on the given side of every
/// generator: on the left they must lift against each generator, on the
/// right each generator must lift against them. Sorted by canonical key.
pub fn finite_orthogonal(
    generators: &[FinMap],
    side: Side,
    bound: usize,
) -> Result<Vec<FinMap>, CensusError> {
    let maps = crate::census::shared_maps(bound)?;
    Ok(maps
        .iter()
        .filter(|m| check_against_class(m, side, generators).holds)
        .cloned()
        .collect())
}

/// A fully evaluated class expression.
#[derive(Debug, Clone)]
pub struct ClassEval {
    pub maps: Vec<FinMap>,
    pub steps: Vec<ResolvedStep>,
}

/// Evaluates a class expression step by step. Steps without their own size
/// limit use `default_bound`.
pub fn eval_class_expr(
    expr: &ClassExpr,
    default_bound: usize,
) -> Result<ClassEval, CensusError> {
    let mut maps: Vec<FinMap> = expr.generators.clone();
    let mut steps = Vec::new();
    for step in &expr.steps {
        let bound = step.size_limit.unwrap_or(default_bound);
        maps = finite_orthogonal(&maps, step.side, bound)?;
        steps.push(ResolvedStep { side: step.side, bound });
    }
    Ok(ClassEval { maps, steps })
}

/// What a characterization is evaluated against.
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Map(&'a FinMap),
    Space(&'a FinSpace),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error("characterization `{name}` expects a {expected} subject")]
    WrongSubject { name: &'static str, expected: &'static str },
    #[error("characterization refers to unknown predicate `{0}`")]
    UnknownComponent(&'static str),
}

/// Result of evaluating one characterization on one subject.
#[derive(Debug, Clone)]
pub struct CharOutcome {
    pub holds: bool,
    pub counterexample: Option<Square>,
    /// Census bounds used for intermediate complement steps, in order;
    /// empty when the characterization tests directly against generators.
    pub bounds_chain: Vec<usize>,
}

fn point_inclusion(space: &FinSpace, i: usize) -> FinMap {
    FinMap::new(FinSpace::point("p"), space.clone(), vec![i])
        .expect("a single point maps monotonically")
}

fn pair_inclusion(space: &FinSpace, i: usize, j: usize) -> FinMap {
    FinMap::new(FinSpace::discrete(["p", "q"]), space.clone(), vec![i, j])
        .expect("a discrete pair maps monotonically")
}

fn tested_arrows(
    characterization: &Characterization,
    shape: CharShape,
    subject: Subject<'_>,
) -> Result<Vec<FinMap>, EvalError> {
    match (shape, subject) {
        (CharShape::MapArrow, Subject::Map(m)) => Ok(vec![m.clone()]),
        (CharShape::SpaceTerminal, Subject::Space(x)) => {
            Ok(vec![FinMap::to_point(x, "p")])
        }
        (CharShape::SpaceInitial, Subject::Space(x)) => Ok(vec![FinMap::from_empty(x)]),
        (CharShape::PointedAll, Subject::Space(x)) => {
            Ok((0..x.len()).map(|i| point_inclusion(x, i)).collect())
        }
        (CharShape::InjectivePairs, Subject::Space(x)) => {
            let mut out = Vec::new();
            for i in 0..x.len() {
                for j in i + 1..x.len() {
                    out.push(pair_inclusion(x, i, j));
                }
            }
            Ok(out)
        }
        (CharShape::MapArrow, Subject::Space(_)) => Err(EvalError::WrongSubject {
            name: characterization.name,
            expected: "map",
        }),
        (_, Subject::Map(_)) => Err(EvalError::WrongSubject {
            name: characterization.name,
            expected: "space",
        }),
    }
}

enum PreparedKind {
    Lifting { shape: CharShape, final_side: Side, class: Vec<FinMap> },
    Conjunction { parts: Vec<Prepared> },
}

/// A characterization with its intermediate complement classes already
/// computed, so it can be evaluated cheaply on many subjects.
pub struct Prepared {
    entry: &'static Characterization,
    kind: PreparedKind,
    bounds_chain: Vec<usize>,
}

/// Resolves a characterization's intermediate classes at the given census
/// bound. Characterizations whose final check goes directly against the
/// generators use no census and record an empty bounds chain.
pub fn prepare(
    entry: &'static Characterization,
    bound: usize,
) -> Result<Prepared, EvalError> {
    match &entry.spec {
        CharSpec::Conjunction { of } => {
            let mut parts = Vec::new();
            let mut bounds_chain = Vec::new();
            for part in *of {
                let sub = lifting_characterization(part)
                    .ok_or(EvalError::UnknownComponent(part))?;
                let prepared = prepare(sub, bound)?;
                bounds_chain.extend(prepared.bounds_chain.iter().copied());
                parts.push(prepared);
            }
            Ok(Prepared { entry, kind: PreparedKind::Conjunction { parts }, bounds_chain })
        }
        CharSpec::Lifting { shape, ops, generators } => {
            let mut class: Vec<FinMap> = generators
                .iter()
                .map(|g| parse_map(g).expect("registry generators parse"))
                .collect();
            let mut bounds_chain = Vec::new();
            for op in &ops[..ops.len() - 1] {
                class = finite_orthogonal(&class, *op, bound)?;
                bounds_chain.push(bound);
            }
            let final_side = *ops.last().expect("ops are nonempty");
            Ok(Prepared {
                entry,
                kind: PreparedKind::Lifting { shape: *shape, final_side, class },
                bounds_chain,
            })
        }
    }
}

impl Prepared {
    pub fn bounds_chain(&self) -> &[usize] {
        &self.bounds_chain
    }

    pub fn eval(&self, subject: Subject<'_>) -> Result<CharOutcome, EvalError> {
        match &self.kind {
            PreparedKind::Conjunction { parts } => {
                for part in parts {
                    let out = part.eval(subject)?;
                    if !out.holds {
                        return Ok(CharOutcome {
                            holds: false,
                            counterexample: out.counterexample,
                            bounds_chain: self.bounds_chain.clone(),
                        });
                    }
                }
                Ok(CharOutcome {
                    holds: true,
                    counterexample: None,
                    bounds_chain: self.bounds_chain.clone(),
                })
            }
            PreparedKind::Lifting { shape, final_side, class } => {
                for arrow in tested_arrows(self.entry, *shape, subject)? {
                    let check = check_against_class(&arrow, *final_side, class);
                    if !check.holds {
                        return Ok(CharOutcome {
                            holds: false,
                            counterexample: check.counterexample,
                            bounds_chain: self.bounds_chain.clone(),
                        });
                    }
                }
                Ok(CharOutcome {
                    holds: true,
                    counterexample: None,
                    bounds_chain: self.bounds_chain.clone(),
                })
            }
        }
    }
}

/// Evaluates a characterization on a subject. `bound` is the census bound
/// for intermediate complement steps; characterizations without such steps
/// ignore it. When evaluating one characterization on many subjects, call
/// [`prepare`] once and reuse it.
pub fn eval_characterization(
    characterization: &'static Characterization,
    subject: Subject<'_>,
    bound: usize,
) -> Result<CharOutcome, EvalError> {
    prepare(characterization, bound)?.eval(subject)
}
