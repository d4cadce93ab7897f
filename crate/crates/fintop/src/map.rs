//! Monotone maps between finite spaces, composition, pullbacks, and
//! exhaustive enumeration of all monotone maps between two spaces.

use crate::space::{FinSpace, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("assignment has length {got}, domain has {points} points")]
    BadAssignLength { points: usize, got: usize },
    #[error("assignment sends point {point} to {target}, codomain has {size} points")]
    TargetOutOfRange { point: usize, target: usize, size: usize },
    #[error("assignment is not monotone on the pair {x} -> {y}")]
    NotMonotone { x: usize, y: usize },
    #[error("composition mismatch: codomain of the first map differs from domain of the second")]
    ComposeMismatch,
    #[error("pullback requires both maps to share a codomain")]
    CodomainMismatch,
}

/// A continuous (monotone) map of finite spaces. Owns copies of both spaces;
/// everything is immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinMap {
    dom: FinSpace,
    cod: FinSpace,
    assign: Vec<usize>,
}

impl FinMap {
    /// Validates totality, range, and monotonicity.
    pub fn new(dom: FinSpace, cod: FinSpace, assign: Vec<usize>) -> Result<Self, MapError> {
        if assign.len() != dom.len() {
            return Err(MapError::BadAssignLength { points: dom.len(), got: assign.len() });
        }
        for (point, &target) in assign.iter().enumerate() {
            if target >= cod.len() {
                return Err(MapError::TargetOutOfRange { point, target, size: cod.len() });
            }
        }
        for x in 0..dom.len() {
            for y in 0..dom.len() {
                if dom.leq(x, y) && !cod.leq(assign[x], assign[y]) {
                    return Err(MapError::NotMonotone { x, y });
                }
            }
        }
        Ok(FinMap { dom, cod, assign })
    }

    pub fn identity(space: &FinSpace) -> Self {
        FinMap {
            dom: space.clone(),
            cod: space.clone(),
            assign: (0..space.len()).collect(),
        }
    }

    /// The unique map from the empty space.
    pub fn from_empty(cod: &FinSpace) -> Self {
        FinMap { dom: FinSpace::empty(), cod: cod.clone(), assign: vec![] }
    }

    /// The unique map to a one-point space.
    pub fn to_point(dom: &FinSpace, label: impl Into<String>) -> Self {
        let cod = FinSpace::point(label);
        FinMap { dom: dom.clone(), cod, assign: vec![0; dom.len()] }
    }

    pub fn dom(&self) -> &FinSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FinSpace {
        &self.cod
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assign[x]
    }

    pub fn image(&self) -> PointSet {
        PointSet::from_indices(self.assign.iter().copied())
    }

    pub fn preimage(&self, s: PointSet) -> PointSet {
        PointSet::from_indices(
            (0..self.dom.len()).filter(|&x| s.contains(self.assign[x])),
        )
    }

    pub fn fiber(&self, y: usize) -> PointSet {
        self.preimage(PointSet::singleton(y))
    }
}

/// Diagrammatic composition: `first` then `second`.
pub fn compose(first: &FinMap, second: &FinMap) -> Result<FinMap, MapError> {
    if first.cod != second.dom {
        return Err(MapError::ComposeMismatch);
    }
    let assign = first.assign.iter().map(|&x| second.assign[x]).collect();
    Ok(FinMap { dom: first.dom.clone(), cod: second.cod.clone(), assign })
}

/// A pullback square: the limit space with its two projections.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub space: FinSpace,
    pub proj_left: FinMap,
    pub proj_right: FinMap,
}

/// Pullback of `f : X -> Z` and `g : Y -> Z`: the subspace of the product
/// `X x Y` where both legs agree, with the restricted projections.
pub fn pullback(f: &FinMap, g: &FinMap) -> Result<Pullback, MapError> {
    if f.cod != g.cod {
        return Err(MapError::CodomainMismatch);
    }
    let product = f.dom.product(&g.dom);
    let keep: Vec<usize> = (0..product.space.len())
        .filter(|&i| {
            f.assign[product.proj_left.apply(i)] == g.assign[product.proj_right.apply(i)]
        })
        .collect();
    let labels = keep.iter().map(|&i| product.space.label(i).clone()).collect();
    let mut leq = vec![vec![false; keep.len()]; keep.len()];
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            leq[a][b] = product.space.leq(i, j);
        }
    }
    let space = FinSpace::new(labels, leq).expect("pullback relation inherits preorder laws");
    let proj_left = FinMap::new(
        space.clone(),
        f.dom.clone(),
        keep.iter().map(|&i| product.proj_left.apply(i)).collect(),
    )
    .expect("pullback projection is monotone");
    let proj_right = FinMap::new(
        space.clone(),
        g.dom.clone(),
        keep.iter().map(|&i| product.proj_right.apply(i)).collect(),
    )
    .expect("pullback projection is monotone");
    Ok(Pullback { space, proj_left, proj_right })
}

/// All monotone maps from `dom` to `cod`, in lexicographic order of their
/// assignment vectors.
pub fn monotone_maps(dom: &FinSpace, cod: &FinSpace) -> Vec<FinMap> {
    let all: Vec<Vec<usize>> = (0..dom.len()).map(|_| (0..cod.len()).collect()).collect();
    let mut out = Vec::new();
    for_each_monotone(dom, cod, &all, &mut |assign| {
        out.push(FinMap {
            dom: dom.clone(),
            cod: cod.clone(),
            assign: assign.to_vec(),
        });
        true
    });
    out
}

/// Backtracking enumeration of monotone assignments with per-point candidate
/// lists, in lexicographic order. The visitor returns `false` to stop early.
/// Monotonicity against already-placed points is checked in both directions,
/// so every emitted prefix extends to the full monotone assignment emitted.
pub(crate) fn for_each_monotone(
    dom: &FinSpace,
    cod: &FinSpace,
    candidates: &[Vec<usize>],
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    debug_assert_eq!(candidates.len(), dom.len());
    let mut assign = vec![0usize; dom.len()];
    fn rec(
        dom: &FinSpace,
        cod: &FinSpace,
        candidates: &[Vec<usize>],
        assign: &mut Vec<usize>,
        k: usize,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if k == dom.len() {
            return visit(assign);
        }
        'next: for &v in &candidates[k] {
            for prev in 0..k {
                if dom.leq(prev, k) && !cod.leq(assign[prev], v) {
                    continue 'next;
                }
                if dom.leq(k, prev) && !cod.leq(v, assign[prev]) {
                    continue 'next;
                }
            }
            assign[k] = v;
            if !rec(dom, cod, candidates, assign, k + 1, visit) {
                return false;
            }
        }
        true
    }
    rec(dom, cod, candidates, &mut assign, 0, visit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::space_key;
    use crate::notation::{parse_map, parse_space};

    #[test]
    fn compose_identity_laws() {
        let m = parse_map("{a<->b}-->{a=b}").unwrap();
        let idl = FinMap::identity(m.dom());
        let idr = FinMap::identity(m.cod());
        assert_eq!(compose(&idl, &m).unwrap(), m);
        assert_eq!(compose(&m, &idr).unwrap(), m);
    }

    #[test]
    fn compose_collapses_chain() {
        let f = parse_map("{a,b}-->{a->b}").unwrap();
        let g = parse_map("{a->b}-->{a=b}").unwrap();
        let fg = compose(&f, &g).unwrap();
        assert_eq!(fg.assign(), &[0, 0]);
    }

    #[test]
    fn compose_rejects_mismatch() {
        let f = parse_map("{a}-->{a,b}").unwrap();
        let g = parse_map("{o->c}-->{o=c}").unwrap();
        assert!(matches!(compose(&f, &g), Err(MapError::ComposeMismatch)));
    }

    #[test]
    fn new_rejects_non_monotone() {
        let dom = parse_space("{a->b}").unwrap();
        let cod = parse_space("{x,y}").unwrap();
        assert!(matches!(
            FinMap::new(dom, cod, vec![0, 1]),
            Err(MapError::NotMonotone { .. })
        ));
    }

    #[test]
    fn monotone_maps_counts() {
        let point = parse_space("{o}").unwrap();
        let sier = parse_space("{o'->c}").unwrap();
        assert_eq!(monotone_maps(&point, &sier).len(), 2);
        let disc = parse_space("{a,b}").unwrap();
        assert_eq!(monotone_maps(&disc, &disc).len(), 4);
        let arrow = parse_space("{x->y}").unwrap();
        // Only the two constants are monotone from the arrow to the discrete pair.
        assert_eq!(monotone_maps(&arrow, &disc).len(), 2);
        assert_eq!(monotone_maps(&FinSpace::empty(), &disc).len(), 1);
        assert_eq!(monotone_maps(&disc, &FinSpace::empty()).len(), 0);
    }

    #[test]
    fn pullback_basechange_of_closed_point() {
        let f = parse_map("{c}-->{o->c}").unwrap();
        let arrow = parse_space("{a->b}").unwrap();
        let g = FinMap::new(arrow.clone(), f.cod().clone(), vec![0, 1]).unwrap();
        let pb = pullback(&f, &g).unwrap();
        assert_eq!(pb.space.len(), 1);
        let expected = parse_space("{b}").unwrap();
        assert_eq!(space_key(&pb.space), space_key(&expected));
        assert_eq!(pb.proj_right.apply(0), arrow.point_named("b").unwrap());
    }

    #[test]
    fn pullback_along_identity_recovers_domain() {
        let wedge = parse_space("{x->a<-y}").unwrap();
        let sier = parse_space("{o->c}").unwrap();
        let x = wedge.point_named("x").unwrap();
        let a = wedge.point_named("a").unwrap();
        let y = wedge.point_named("y").unwrap();
        let mut assign = vec![0; 3];
        assign[x] = 0;
        assign[a] = 1;
        assign[y] = 0;
        let f = FinMap::new(wedge, sier.clone(), assign).unwrap();
        let id = FinMap::identity(f.cod());
        let pb = pullback(&f, &id).unwrap();
        assert_eq!(space_key(&pb.space), space_key(f.dom()));
    }

    #[test]
    fn pullback_can_be_empty() {
        let f = parse_map("{c}-->{o->c}").unwrap();
        let g = parse_map("{o}-->{o->c}").unwrap();
        let pb = pullback(&f, &g).unwrap();
        assert!(pb.space.is_empty());
    }
}
