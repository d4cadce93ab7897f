//! Direct definitions of map and space predicates, and the registry of
//! their lifting-property characterizations.
//!
//! Every predicate has a direct combinatorial definition here, independent
//! of the lifting machinery. The registry records, for each predicate, an
//! equivalent formulation in terms of lifting properties: which arrow to
//! test, on which side, against which generator maps, possibly through
//! intermediate orthogonal-complement classes. The two routes are compared
//! exhaustively by the verification layer.

use crate::map::FinMap;
use crate::space::{FinSpace, PointSet};
use crate::Side;

/// Map predicates, in presentation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapPredicate {
    Surjective,
    Injective,
    Closed,
    Open,
    ProperFinite,
    InducedTopology,
    FinalTopology,
    Quotient,
    DenseImage,
    FibrewiseT1,
    OpenInclusion,
    ClosedInclusion,
    OpenInduced,
    ClosedInduced,
}

impl MapPredicate {
    pub const ALL: [MapPredicate; 14] = [
        MapPredicate::Surjective,
        MapPredicate::Injective,
        MapPredicate::Closed,
        MapPredicate::Open,
        MapPredicate::ProperFinite,
        MapPredicate::InducedTopology,
        MapPredicate::FinalTopology,
        MapPredicate::Quotient,
        MapPredicate::DenseImage,
        MapPredicate::FibrewiseT1,
        MapPredicate::OpenInclusion,
        MapPredicate::ClosedInclusion,
        MapPredicate::OpenInduced,
        MapPredicate::ClosedInduced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapPredicate::Surjective => "surjective",
            MapPredicate::Injective => "injective",
            MapPredicate::Closed => "closed",
            MapPredicate::Open => "open",
            MapPredicate::ProperFinite => "proper_finite",
            MapPredicate::InducedTopology => "induced_topology",
            MapPredicate::FinalTopology => "final_topology",
            MapPredicate::Quotient => "quotient",
            MapPredicate::DenseImage => "dense_image",
            MapPredicate::FibrewiseT1 => "fibrewise_T1",
            MapPredicate::OpenInclusion => "open_inclusion",
            MapPredicate::ClosedInclusion => "closed_inclusion",
            MapPredicate::OpenInduced => "open_induced",
            MapPredicate::ClosedInduced => "closed_induced",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn eval(self, map: &FinMap) -> bool {
        match self {
            MapPredicate::Surjective => is_surjective(map),
            MapPredicate::Injective => is_injective(map),
            MapPredicate::Closed => is_closed_map(map),
            MapPredicate::Open => is_open_map(map),
            MapPredicate::ProperFinite => is_proper_finite(map),
            MapPredicate::InducedTopology => is_induced(map),
            MapPredicate::FinalTopology => is_final(map),
            MapPredicate::Quotient => is_surjective(map) && is_final(map),
            MapPredicate::DenseImage => has_dense_image(map),
            MapPredicate::FibrewiseT1 => is_fibrewise_t1(map),
            MapPredicate::OpenInclusion => {
                is_injective(map) && is_induced(map) && map.cod().is_open_set(map.image())
            }
            MapPredicate::ClosedInclusion => {
                is_injective(map) && is_induced(map) && map.cod().is_closed_set(map.image())
            }
            MapPredicate::OpenInduced => is_open_map(map) && is_induced(map),
            MapPredicate::ClosedInduced => is_closed_map(map) && is_induced(map),
        }
    }
}

/// Space predicates, in presentation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpacePredicate {
    Empty,
    Nonempty,
    Connected,
    Discrete,
    Antidiscrete,
    T0,
    T1,
    Hausdorff,
    RegularT3,
    NormalT4,
    ExtremallyDisconnected,
}

impl SpacePredicate {
    pub const ALL: [SpacePredicate; 11] = [
        SpacePredicate::Empty,
        SpacePredicate::Nonempty,
        SpacePredicate::Connected,
        SpacePredicate::Discrete,
        SpacePredicate::Antidiscrete,
        SpacePredicate::T0,
        SpacePredicate::T1,
        SpacePredicate::Hausdorff,
        SpacePredicate::RegularT3,
        SpacePredicate::NormalT4,
        SpacePredicate::ExtremallyDisconnected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpacePredicate::Empty => "empty",
            SpacePredicate::Nonempty => "nonempty",
            SpacePredicate::Connected => "connected",
            SpacePredicate::Discrete => "discrete",
            SpacePredicate::Antidiscrete => "antidiscrete",
            SpacePredicate::T0 => "T0",
            SpacePredicate::T1 => "T1",
            SpacePredicate::Hausdorff => "hausdorff",
            SpacePredicate::RegularT3 => "regular_T3",
            SpacePredicate::NormalT4 => "normal_T4",
            SpacePredicate::ExtremallyDisconnected => "extremally_disconnected",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn eval(self, space: &FinSpace) -> bool {
        match self {
            SpacePredicate::Empty => space.is_empty(),
            SpacePredicate::Nonempty => !space.is_empty(),
            SpacePredicate::Connected => is_connected(space),
            SpacePredicate::Discrete => is_discrete(space),
            SpacePredicate::Antidiscrete => is_antidiscrete(space),
            SpacePredicate::T0 => is_t0(space),
            SpacePredicate::T1 => is_t1(space),
            SpacePredicate::Hausdorff => is_hausdorff(space),
            SpacePredicate::RegularT3 => is_regular_t3(space),
            SpacePredicate::NormalT4 => is_normal_t4(space),
            SpacePredicate::ExtremallyDisconnected => is_extremally_disconnected(space),
        }
    }
}

fn image_of(map: &FinMap, s: PointSet) -> PointSet {
    PointSet::from_indices(s.iter().map(|x| map.apply(x)))
}

pub fn is_surjective(map: &FinMap) -> bool {
    map.image() == map.cod().full_set()
}

pub fn is_injective(map: &FinMap) -> bool {
    let mut seen = vec![false; map.cod().len()];
    map.assign()
        .iter()
        .all(|&y| !std::mem::replace(&mut seen[y], true))
}

/// Closed map, via images of closed subsets.
pub fn is_closed_map(map: &FinMap) -> bool {
    map.dom()
        .closed_sets()
        .into_iter()
        .all(|c| map.cod().is_closed_set(image_of(map, c)))
}

/// Open map, via images of open subsets.
pub fn is_open_map(map: &FinMap) -> bool {
    map.dom()
        .open_sets()
        .into_iter()
        .all(|u| map.cod().is_open_set(image_of(map, u)))
}

/// Proper map of finite spaces, via the pointwise closure criterion: every
/// specialization of an image point is hit from the closure of its source.
pub fn is_proper_finite(map: &FinMap) -> bool {
    let dom = map.dom();
    let cod = map.cod();
    (0..dom.len()).all(|x| {
        (0..cod.len())
            .filter(|&y| cod.leq(map.apply(x), y))
            .all(|y| (0..dom.len()).any(|z| dom.leq(x, z) && map.apply(z) == y))
    })
}

/// The domain carries the topology induced from the codomain: two points
/// are related exactly when their images are.
pub fn is_induced(map: &FinMap) -> bool {
    let dom = map.dom();
    let cod = map.cod();
    (0..dom.len()).all(|x| {
        (0..dom.len()).all(|y| dom.leq(x, y) == cod.leq(map.apply(x), map.apply(y)))
    })
}

/// Same predicate through open sets: every open of the domain is the
/// preimage of an open of the codomain.
pub fn is_induced_via_opens(map: &FinMap) -> bool {
    let cod_opens = map.cod().open_sets();
    map.dom()
        .open_sets()
        .into_iter()
        .all(|u| cod_opens.iter().any(|&v| map.preimage(v) == u))
}

/// The codomain carries the final topology: subsets with open preimage are
/// open.
pub fn is_final(map: &FinMap) -> bool {
    map.cod()
        .subsets()
        .all(|v| !map.dom().is_open_set(map.preimage(v)) || map.cod().is_open_set(v))
}

pub fn has_dense_image(map: &FinMap) -> bool {
    map.cod().closure_unchecked(map.image()) == map.cod().full_set()
}

/// Every fiber is T1 in its subspace topology: no two distinct points of a
/// fiber are related.
pub fn is_fibrewise_t1(map: &FinMap) -> bool {
    let dom = map.dom();
    (0..dom.len()).all(|x| {
        (0..dom.len())
            .all(|y| !dom.strict(x, y) || map.apply(x) != map.apply(y))
    })
}

pub fn is_connected(space: &FinSpace) -> bool {
    let n = space.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for y in 0..n {
            if !seen[y] && (space.leq(x, y) || space.leq(y, x)) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Discrete, via the topology: every subset is open.
pub fn is_discrete(space: &FinSpace) -> bool {
    space.subsets().all(|s| space.is_open_set(s))
}

/// Antidiscrete: nonempty and any two points are related both ways.
pub fn is_antidiscrete(space: &FinSpace) -> bool {
    !space.is_empty()
        && (0..space.len()).all(|x| (0..space.len()).all(|y| space.leq(x, y)))
}

pub fn is_t0(space: &FinSpace) -> bool {
    (0..space.len())
        .all(|x| (0..space.len()).all(|y| x == y || !(space.leq(x, y) && space.leq(y, x))))
}

/// T1, via the order: the specialization relation is equality.
pub fn is_t1(space: &FinSpace) -> bool {
    (0..space.len()).all(|x| (0..space.len()).all(|y| space.leq(x, y) == (x == y)))
}

/// Hausdorff, via separation: any two distinct points have disjoint open
/// neighbourhoods, which happens exactly when their minimal opens are
/// disjoint.
pub fn is_hausdorff(space: &FinSpace) -> bool {
    let n = space.len();
    (0..n).all(|x| {
        (x + 1..n).all(|y| space.min_open(x).intersection(space.min_open(y)).is_empty())
    })
}

/// Smallest open set containing `s`.
fn open_hull(space: &FinSpace, s: PointSet) -> PointSet {
    let mut out = PointSet::EMPTY;
    for x in s.iter() {
        out = out.union(space.min_open(x));
    }
    out
}

/// Regularity: every point and every closed set avoiding it have disjoint
/// open neighbourhoods.
pub fn is_regular_t3(space: &FinSpace) -> bool {
    let closed = space.closed_sets();
    (0..space.len()).all(|x| {
        closed.iter().all(|&c| {
            c.contains(x) || space.min_open(x).intersection(open_hull(space, c)).is_empty()
        })
    })
}

/// Normality: any two disjoint closed sets have disjoint open
/// neighbourhoods.
pub fn is_normal_t4(space: &FinSpace) -> bool {
    let closed = space.closed_sets();
    closed.iter().all(|&c| {
        closed.iter().all(|&d| {
            !c.intersection(d).is_empty()
                || open_hull(space, c).intersection(open_hull(space, d)).is_empty()
        })
    })
}

/// Extremally disconnected: the closure of every open set is open.
pub fn is_extremally_disconnected(space: &FinSpace) -> bool {
    space
        .open_sets()
        .into_iter()
        .all(|u| space.is_open_set(space.closure_unchecked(u)))
}

/// Evaluates every map predicate on one map.
pub fn classify_map(map: &FinMap) -> Vec<(MapPredicate, bool)> {
    MapPredicate::ALL.iter().map(|&p| (p, p.eval(map))).collect()
}

/// Evaluates every space predicate on one space.
pub fn classify_space(space: &FinSpace) -> Vec<(SpacePredicate, bool)> {
    SpacePredicate::ALL.iter().map(|&p| (p, p.eval(space))).collect()
}

/// Which arrow a characterization tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharShape {
    /// The subject map itself.
    MapArrow,
    /// The unique map from the subject space to a point.
    SpaceTerminal,
    /// The unique map from the empty space to the subject space.
    SpaceInitial,
    /// One point inclusion per point of the subject space; all must pass.
    PointedAll,
    /// One two-point discrete inclusion per unordered pair of distinct
    /// points; all must pass.
    InjectivePairs,
}

/// Recipe for a characterization.
#[derive(Debug, Clone)]
pub enum CharSpec {
    /// Apply the complement operations to the generator class left to
    /// right; the final operation gives the side on which the tested arrow
    /// must lift. Operations before the last build intermediate classes by
    /// searching a census of maps up to a size bound.
    Lifting {
        shape: CharShape,
        ops: &'static [Side],
        generators: &'static [&'static str],
    },
    /// Conjunction of other predicates' primary characterizations.
    Conjunction { of: &'static [&'static str] },
}

/// A named characterization. The empty variant is the primary one; other
/// variants are alternative formulations verified alongside it.
#[derive(Debug, Clone)]
pub struct Characterization {
    pub name: &'static str,
    pub variant: &'static str,
    pub spec: CharSpec,
}

use CharShape::{InjectivePairs, MapArrow, PointedAll, SpaceInitial, SpaceTerminal};
use Side::{Left as L, Right as R};

macro_rules! lifting {
    ($name:literal, $variant:literal, $shape:expr, $ops:expr, $gens:expr) => {
        Characterization {
            name: $name,
            variant: $variant,
            spec: CharSpec::Lifting { shape: $shape, ops: $ops, generators: $gens },
        }
    };
}

static REGISTRY: &[Characterization] = &[
    lifting!("surjective", "", MapArrow, &[R], &["{}-->{o}"]),
    lifting!("surjective", "left", MapArrow, &[L], &["{a}-->{a<->b}"]),
    lifting!("injective", "", MapArrow, &[L], &["{a<->b}-->{a=b}"]),
    lifting!("closed", "", MapArrow, &[R], &["{o}-->{o->c}"]),
    lifting!("open", "", MapArrow, &[R], &["{c}-->{o->c}"]),
    Characterization {
        name: "proper_finite",
        variant: "",
        spec: CharSpec::Conjunction { of: &["closed"] },
    },
    lifting!("induced_topology", "", MapArrow, &[L], &["{o->c}-->{o=c}"]),
    lifting!("final_topology", "", MapArrow, &[L], &["{o->c}-->{o<->c}"]),
    Characterization {
        name: "quotient",
        variant: "",
        spec: CharSpec::Conjunction { of: &["surjective", "final_topology"] },
    },
    lifting!("dense_image", "", MapArrow, &[L], &["{c}-->{o->c}"]),
    lifting!("fibrewise_T1", "", MapArrow, &[R], &["{o->c}-->{o=c}"]),
    lifting!("open_inclusion", "", MapArrow, &[L], &["{z<->x<->y<-c}-->{z=x<->y=c}"]),
    lifting!("closed_inclusion", "", MapArrow, &[L], &["{z<->x<->y->c}-->{z=x<->y=c}"]),
    lifting!("open_induced", "", MapArrow, &[L], &["{a<->b<-c}-->{a<->b=c}"]),
    lifting!("closed_induced", "", MapArrow, &[L], &["{a<->b->c}-->{a<->b=c}"]),
    lifting!("empty", "", SpaceInitial, &[L, L], &["{}-->{o}"]),
    lifting!("nonempty", "", SpaceTerminal, &[L], &["{}-->{o}"]),
    lifting!("connected", "", SpaceTerminal, &[L], &["{a,b}-->{a=b}"]),
    lifting!("discrete", "", SpaceInitial, &[R, L], &["{}-->{o}"]),
    lifting!("antidiscrete", "", SpaceTerminal, &[L, R], &["{a<->b}-->{a=b}"]),
    lifting!("antidiscrete", "rr", SpaceTerminal, &[R, R], &["{a,b}-->{a=b}"]),
    lifting!("T0", "", SpaceTerminal, &[R], &["{a<->b}-->{a=b}"]),
    lifting!("T1", "", SpaceTerminal, &[R], &["{a->b}-->{a=b}"]),
    lifting!("hausdorff", "", InjectivePairs, &[L], &["{u->x<-v}-->{u=x=v}"]),
    lifting!("regular_T3", "", PointedAll, &[L], &["{v->a<-w->b}-->{v=a=w->b}"]),
    lifting!("normal_T4", "", SpaceInitial, &[L], &["{a<-v->x<-w->b}-->{a<-v=x=w->b}"]),
    lifting!(
        "extremally_disconnected",
        "",
        SpaceInitial,
        &[L],
        &["{u->a,b<-v}-->{u->a=b<-v}"]
    ),
];

/// The full characterization table.
pub fn registry() -> &'static [Characterization] {
    REGISTRY
}

/// Every characterization registered under a predicate name, primary first.
pub fn characterizations_for(name: &str) -> Vec<&'static Characterization> {
    let mut out: Vec<&'static Characterization> =
        REGISTRY.iter().filter(|c| c.name == name).collect();
    out.sort_by_key(|c| c.variant);
    out
}

/// The primary characterization of a predicate.
pub fn lifting_characterization(name: &str) -> Option<&'static Characterization> {
    REGISTRY.iter().find(|c| c.name == name && c.variant.is_empty())
}
