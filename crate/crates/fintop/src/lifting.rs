//! Lifting problems and their exhaustive solution.
//!
//! A square consists of `left: A -> B`, `right: X -> Y`, `top: A -> X`, and
//! `bottom: B -> Y` with `right` after `top` equal to `bottom` after `left`.
//! A lift is a map `B -> X` commuting with both triangles. `left` has the
//! lifting property against `right` when every such square admits a lift.

use crate::map::{compose, for_each_monotone, monotone_maps, FinMap};
use crate::Side;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SquareError {
    #[error("the {0} corner spaces do not match")]
    CornerMismatch(&'static str),
    #[error("the square does not commute")]
    NotCommuting,
}

/// A commuting square, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    left: FinMap,
    right: FinMap,
    top: FinMap,
    bottom: FinMap,
}

impl Square {
    pub fn new(
        left: FinMap,
        right: FinMap,
        top: FinMap,
        bottom: FinMap,
    ) -> Result<Self, SquareError> {
        if top.dom() != left.dom() {
            return Err(SquareError::CornerMismatch("top-left"));
        }
        if top.cod() != right.dom() {
            return Err(SquareError::CornerMismatch("top-right"));
        }
        if bottom.dom() != left.cod() {
            return Err(SquareError::CornerMismatch("bottom-left"));
        }
        if bottom.cod() != right.cod() {
            return Err(SquareError::CornerMismatch("bottom-right"));
        }
        let via_right = compose(&top, &right).expect("corner spaces match");
        let via_bottom = compose(&left, &bottom).expect("corner spaces match");
        if via_right != via_bottom {
            return Err(SquareError::NotCommuting);
        }
        Ok(Square { left, right, top, bottom })
    }

    pub fn left(&self) -> &FinMap {
        &self.left
    }

    pub fn right(&self) -> &FinMap {
        &self.right
    }

    pub fn top(&self) -> &FinMap {
        &self.top
    }

    pub fn bottom(&self) -> &FinMap {
        &self.bottom
    }
}

/// Searches for a lift of the square, returning the first one in
/// lexicographic order of assignments over the points of the middle space.
///
/// Points hit by `left` are pinned to their forced value; the remaining
/// points range over the fiber of `right` above their image under `bottom`,
/// with monotonicity enforced incrementally during backtracking.
pub fn find_lift(square: &Square) -> Option<FinMap> {
    let i = square.left();
    let p = square.right();
    let f = square.top();
    let g = square.bottom();
    let b_space = i.cod();
    let x_space = p.dom();
    let nb = b_space.len();
    let mut pinned: Vec<Option<usize>> = vec![None; nb];
    for a in 0..i.dom().len() {
        let b = i.apply(a);
        let x = f.apply(a);
        match pinned[b] {
            None => pinned[b] = Some(x),
            Some(prev) if prev != x => return None,
            _ => {}
        }
    }
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(nb);
    for b in 0..nb {
        match pinned[b] {
            Some(x) => {
                debug_assert_eq!(p.apply(x), g.apply(b));
                candidates.push(vec![x]);
            }
            None => candidates.push(p.fiber(g.apply(b)).iter().collect()),
        }
    }
    let mut found: Option<Vec<usize>> = None;
    for_each_monotone(b_space, x_space, &candidates, &mut |assign| {
        found = Some(assign.to_vec());
        false
    });
    let assign = found?;
    let lift = FinMap::new(b_space.clone(), x_space.clone(), assign)
        .expect("the search only emits monotone assignments");
    debug_assert_eq!(compose(i, &lift).expect("domains match"), *f);
    debug_assert_eq!(compose(&lift, p).expect("domains match"), *g);
    Some(lift)
}

/// Outcome of checking one lifting property exhaustively.
#[derive(Debug, Clone)]
pub struct LiftVerdict {
    pub holds: bool,
    pub squares_checked: usize,
    pub counterexample: Option<Square>,
}

/// One commuting square together with its first lift, if any.
#[derive(Debug, Clone)]
pub struct SquareWitness {
    pub square: Square,
    pub lift: Option<FinMap>,
}

/// Enumerates every commuting square on `(left, right)` in lexicographic
/// order: top maps first, then bottom maps completing them. Each square is
/// passed to the visitor together with its first lift, if any; the visitor
/// returns `false` to stop. Returns the number of squares visited.
pub fn walk_squares(
    left: &FinMap,
    right: &FinMap,
    visit: &mut impl FnMut(Square, Option<FinMap>) -> bool,
) -> usize {
    let a_space = left.dom();
    let b_space = left.cod();
    let x_space = right.dom();
    let y_space = right.cod();
    let mut squares = 0usize;
    'tops: for f in monotone_maps(a_space, x_space) {
        let mut pinned: Vec<Option<usize>> = vec![None; b_space.len()];
        for a in 0..a_space.len() {
            let b = left.apply(a);
            let y = right.apply(f.apply(a));
            match pinned[b] {
                None => pinned[b] = Some(y),
                Some(prev) if prev != y => continue 'tops,
                _ => {}
            }
        }
        let candidates: Vec<Vec<usize>> = (0..b_space.len())
            .map(|b| match pinned[b] {
                Some(y) => vec![y],
                None => (0..y_space.len()).collect(),
            })
            .collect();
        let mut keep_going = true;
        for_each_monotone(b_space, y_space, &candidates, &mut |assign| {
            let g = FinMap::new(b_space.clone(), y_space.clone(), assign.to_vec())
                .expect("the search only emits monotone assignments");
            let square = Square::new(left.clone(), right.clone(), f.clone(), g)
                .expect("pinned bottom values make the square commute");
            squares += 1;
            let lift = find_lift(&square);
            keep_going = visit(square, lift);
            keep_going
        });
        if !keep_going {
            break;
        }
    }
    squares
}

/// Decides whether `left` has the lifting property against `right`, checking
/// every commuting square. On failure the first square without a lift is
/// reported, and enumeration order makes it deterministic.
pub fn check_lifting(left: &FinMap, right: &FinMap) -> LiftVerdict {
    let mut counterexample = None;
    let squares_checked = walk_squares(left, right, &mut |square, lift| {
        if lift.is_none() {
            counterexample = Some(square);
            return false;
        }
        true
    });
    LiftVerdict { holds: counterexample.is_none(), squares_checked, counterexample }
}

/// Like [`check_lifting`] but keeps every square with its lift.
pub fn check_lifting_with_witnesses(
    left: &FinMap,
    right: &FinMap,
) -> (LiftVerdict, Vec<SquareWitness>) {
    let mut witnesses = Vec::new();
    let squares_checked = walk_squares(left, right, &mut |square, lift| {
        witnesses.push(SquareWitness { square, lift });
        true
    });
    let counterexample = witnesses
        .iter()
        .find(|w| w.lift.is_none())
        .map(|w| w.square.clone());
    let verdict = LiftVerdict {
        holds: counterexample.is_none(),
        squares_checked,
        counterexample,
    };
    (verdict, witnesses)
}

/// Outcome of checking a map against every generator of a class.
#[derive(Debug, Clone)]
pub struct ClassCheck {
    pub holds: bool,
    pub squares_checked: usize,
    pub failing_generator: Option<usize>,
    pub counterexample: Option<Square>,
}

/// Checks `map` on the given side against each generator: on
/// [`Side::Left`] the map must lift against every generator, on
/// [`Side::Right`] every generator must lift against the map.
pub fn check_against_class(map: &FinMap, side: Side, generators: &[FinMap]) -> ClassCheck {
    let mut squares_checked = 0usize;
    for (idx, generator) in generators.iter().enumerate() {
        let verdict = match side {
            Side::Left => check_lifting(map, generator),
            Side::Right => check_lifting(generator, map),
        };
        squares_checked += verdict.squares_checked;
        if !verdict.holds {
            return ClassCheck {
                holds: false,
                squares_checked,
                failing_generator: Some(idx),
                counterexample: verdict.counterexample,
            };
        }
    }
    ClassCheck {
        holds: true,
        squares_checked,
        failing_generator: None,
        counterexample: None,
    }
}
