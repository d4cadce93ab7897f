//! Finite topological spaces, modelled as preorders on their points, together
//! with a parser/printer for arrow notation, a decision procedure for Quillen
//! lifting properties, predicate classification of spaces and maps, an
//! exhaustive census of small spaces, and a verification harness that compares
//! direct topological definitions against their lifting-property forms.
//!
//! A finite space is stored as its specialization relation: `leq(x, y)` holds
//! when `y` lies in the closure of `x`. A subset is closed exactly when it is
//! stable under following the relation forward, a map of finite spaces is
//! continuous exactly when it is monotone, and both directions are used
//! throughout without further comment.

pub mod canon;
pub mod census;
pub mod classify;
pub mod lifting;
pub mod map;
pub mod notation;
pub mod orthogonal;
pub mod space;
pub mod verify;

pub use canon::{map_key, space_key, CanonicalKey};
pub use census::Census;
pub use classify::{classify_map, classify_space, MapPredicate, SpacePredicate};
pub use lifting::{check_lifting, find_lift, LiftVerdict, Square};
pub use map::{compose, monotone_maps, pullback, FinMap};
pub use notation::{parse_class_expr, parse_map, parse_space, render_map, render_space};
pub use space::{FinSpace, PointLabel, PointSet};

/// Which side of a lifting square an arrow is tested on.
///
/// `Left` is the `i` position (top-left to bottom-left), `Right` is the `p`
/// position (top-right to bottom-right). Orthogonal operators use the same
/// letters: `^l` collects arrows that lift on the left against every member of
/// a class, `^r` on the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::Left => 'l',
            Side::Right => 'r',
        }
    }
}
