//! Finite topological spaces as preorders.
//!
//! `leq(x, y)` means `y` is in the closure of the point `x`. Closed subsets
//! are the forward-stable ones, open subsets are complements of closed ones,
//! and the minimal open neighbourhood of `x` is everything that reaches `x`.

use std::collections::BTreeSet;
use std::fmt;

use crate::map::FinMap;

/// The name of a point: one identifier token, or several glued together by `=`
/// in the arrow notation. Tokens are kept sorted so label display and
/// comparison are deterministic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointLabel {
    tokens: BTreeSet<String>,
}

impl PointLabel {
    pub fn new(token: impl Into<String>) -> Self {
        let mut tokens = BTreeSet::new();
        tokens.insert(token.into());
        PointLabel { tokens }
    }

    /// Builds a label from several tokens. Empty token sets are rejected.
    pub fn from_tokens<I, S>(iter: I) -> Result<Self, SpaceError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens: BTreeSet<String> = iter.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(SpaceError::EmptyLabel);
        }
        Ok(PointLabel { tokens })
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.tokens.contains(token)
    }

    /// The first token in sorted order; used when a single name is needed.
    pub fn primary(&self) -> &str {
        self.tokens.iter().next().map(String::as_str).unwrap()
    }

    pub fn merged_with(&self, other: &PointLabel) -> PointLabel {
        let mut tokens = self.tokens.clone();
        tokens.extend(other.tokens.iter().cloned());
        PointLabel { tokens }
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in &self.tokens {
            if !first {
                write!(f, "=")?;
            }
            write!(f, "{t}")?;
            first = false;
        }
        Ok(())
    }
}

/// A subset of the points of a space, as a bitmask over point indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(pub u32);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n == 0 {
            PointSet(0)
        } else {
            PointSet(u32::MAX >> (32 - n))
        }
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        PointSet(self.0 | (1 << i))
    }

    pub fn union(self, other: PointSet) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn difference(self, other: PointSet) -> Self {
        PointSet(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn subset_of(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| self.0 & (1 << i) != 0)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = PointSet::EMPTY;
        for i in iter {
            s = s.with(i);
        }
        s
    }
}

/// Openness/closedness summary of one subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetStatus {
    pub open: bool,
    pub closed: bool,
    pub clopen: bool,
    pub dense: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("relation matrix must be square over {points} points, got row of length {got}")]
    BadMatrixShape { points: usize, got: usize },
    #[error("relation is not reflexive at point {point}")]
    NotReflexive { point: usize },
    #[error("relation is not transitive: {x} -> {y} and {y} -> {z} but not {x} -> {z}")]
    NotTransitive { x: usize, y: usize, z: usize },
    #[error("label token `{token}` occurs in two distinct points")]
    DuplicateLabel { token: String },
    #[error("point labels must carry at least one token")]
    EmptyLabel,
    #[error("point index {index} out of range for a space with {size} points")]
    PointOutOfRange { index: usize, size: usize },
    #[error("subset mask has bits outside the {size} points of the space")]
    SubsetOutOfRange { size: usize },
    #[error("spaces of more than {max} points are not supported, got {got}")]
    TooLarge { max: usize, got: usize },
}

/// Largest supported space. Subset enumeration is exponential and the census
/// guards sit below this anyway.
pub const MAX_POINTS: usize = 16;

/// A finite topological space: labelled points plus the specialization
/// relation `leq`, stored reflexive and transitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSpace {
    labels: Vec<PointLabel>,
    leq: Vec<Vec<bool>>,
}

impl FinSpace {
    /// Validates shape, reflexivity, transitivity, and label disjointness.
    pub fn new(labels: Vec<PointLabel>, leq: Vec<Vec<bool>>) -> Result<Self, SpaceError> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(SpaceError::TooLarge { max: MAX_POINTS, got: n });
        }
        if leq.len() != n {
            return Err(SpaceError::BadMatrixShape { points: n, got: leq.len() });
        }
        for row in &leq {
            if row.len() != n {
                return Err(SpaceError::BadMatrixShape { points: n, got: row.len() });
            }
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(SpaceError::NotReflexive { point: x });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !leq[x][y] {
                    continue;
                }
                for z in 0..n {
                    if leq[y][z] && !leq[x][z] {
                        return Err(SpaceError::NotTransitive { x, y, z });
                    }
                }
            }
        }
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        for label in &labels {
            for t in label.tokens() {
                if !seen.insert(t) {
                    return Err(SpaceError::DuplicateLabel { token: t.to_string() });
                }
            }
        }
        Ok(FinSpace { labels, leq })
    }

    /// Builds a space from generating arrows, taking the reflexive-transitive
    /// closure.
    pub fn from_arrows(
        labels: Vec<PointLabel>,
        arrows: &[(usize, usize)],
    ) -> Result<Self, SpaceError> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for x in 0..n {
            leq[x][x] = true;
        }
        for &(x, y) in arrows {
            if x >= n {
                return Err(SpaceError::PointOutOfRange { index: x, size: n });
            }
            if y >= n {
                return Err(SpaceError::PointOutOfRange { index: y, size: n });
            }
            leq[x][y] = true;
        }
        transitive_close(&mut leq);
        FinSpace::new(labels, leq)
    }

    pub fn empty() -> Self {
        FinSpace { labels: vec![], leq: vec![] }
    }

    pub fn point(label: impl Into<String>) -> Self {
        FinSpace {
            labels: vec![PointLabel::new(label)],
            leq: vec![vec![true]],
        }
    }

    pub fn discrete<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let labels: Vec<PointLabel> = labels.into_iter().map(PointLabel::new).collect();
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for x in 0..n {
            leq[x][x] = true;
        }
        FinSpace { labels, leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[PointLabel] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &PointLabel {
        &self.labels[i]
    }

    /// The point whose label set contains `token`, if any.
    pub fn point_named(&self, token: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.contains(token))
    }

    /// `leq(x, y)`: `y` lies in the closure of `x`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// Strict specialization: related and distinct.
    pub fn strict(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    fn check_subset(&self, s: PointSet) -> Result<(), SpaceError> {
        if s.subset_of(self.full_set()) {
            Ok(())
        } else {
            Err(SpaceError::SubsetOutOfRange { size: self.len() })
        }
    }

    /// Topological closure of a subset: everything reachable forward.
    pub fn closure(&self, s: PointSet) -> Result<PointSet, SpaceError> {
        self.check_subset(s)?;
        Ok(self.closure_unchecked(s))
    }

    pub(crate) fn closure_unchecked(&self, s: PointSet) -> PointSet {
        let mut out = PointSet::EMPTY;
        for x in s.iter() {
            for y in 0..self.len() {
                if self.leq[x][y] {
                    out = out.with(y);
                }
            }
        }
        out
    }

    pub(crate) fn is_closed_set(&self, s: PointSet) -> bool {
        self.closure_unchecked(s) == s
    }

    pub(crate) fn is_open_set(&self, s: PointSet) -> bool {
        self.is_closed_set(self.full_set().difference(s))
    }

    pub fn subset_status(&self, s: PointSet) -> Result<SubsetStatus, SpaceError> {
        self.check_subset(s)?;
        let open = self.is_open_set(s);
        let closed = self.is_closed_set(s);
        Ok(SubsetStatus {
            open,
            closed,
            clopen: open && closed,
            dense: self.closure_unchecked(s) == self.full_set(),
        })
    }

    /// Minimal open neighbourhood of `x`: all points specializing to `x`.
    pub fn min_open(&self, x: usize) -> PointSet {
        let mut out = PointSet::EMPTY;
        for z in 0..self.len() {
            if self.leq[z][x] {
                out = out.with(z);
            }
        }
        out
    }

    pub fn subsets(&self) -> impl Iterator<Item = PointSet> {
        let n = self.len();
        (0u32..(1u32 << n)).map(PointSet)
    }

    pub fn open_sets(&self) -> Vec<PointSet> {
        self.subsets().filter(|&s| self.is_open_set(s)).collect()
    }

    pub fn closed_sets(&self) -> Vec<PointSet> {
        self.subsets().filter(|&s| self.is_closed_set(s)).collect()
    }

    /// The space with points renumbered by `perm` (`perm[old] = new`). Labels
    /// travel with their points.
    pub fn permuted(&self, perm: &[usize]) -> FinSpace {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let mut labels = vec![PointLabel::new("?"); n];
        let mut leq = vec![vec![false; n]; n];
        for x in 0..n {
            labels[perm[x]] = self.labels[x].clone();
            for y in 0..n {
                leq[perm[x]][perm[y]] = self.leq[x][y];
            }
        }
        FinSpace { labels, leq }
    }

    /// Same relation, fresh labels (`a`, `b`, ...).
    pub fn with_fresh_labels(&self) -> FinSpace {
        FinSpace {
            labels: fresh_labels(self.len()),
            leq: self.leq.clone(),
        }
    }

    /// Product space with its two projections. The point `(x, y)` is stored at
    /// index `x * other.len() + y` and labelled `x*y`; the starred labels are
    /// for display, the renderer substitutes valid identifiers.
    pub fn product(&self, other: &FinSpace) -> Product {
        let n = self.len();
        let m = other.len();
        let mut labels = Vec::with_capacity(n * m);
        for x in 0..n {
            for y in 0..m {
                labels.push(PointLabel::new(format!(
                    "{}*{}",
                    self.labels[x].primary(),
                    other.labels[y].primary()
                )));
            }
        }
        let mut leq = vec![vec![false; n * m]; n * m];
        for x in 0..n {
            for y in 0..m {
                for x2 in 0..n {
                    for y2 in 0..m {
                        leq[x * m + y][x2 * m + y2] = self.leq[x][x2] && other.leq[y][y2];
                    }
                }
            }
        }
        let space = FinSpace { labels, leq };
        let to_left: Vec<usize> = (0..n * m).map(|i| i / m).collect();
        let to_right: Vec<usize> = (0..n * m).map(|i| i % m).collect();
        let proj_left = FinMap::new(space.clone(), self.clone(), to_left)
            .expect("product projection is monotone");
        let proj_right = FinMap::new(space.clone(), other.clone(), to_right)
            .expect("product projection is monotone");
        Product { space, proj_left, proj_right }
    }
}

/// A product space together with its projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub space: FinSpace,
    pub proj_left: FinMap,
    pub proj_right: FinMap,
}

pub(crate) fn transitive_close(leq: &mut [Vec<bool>]) {
    let n = leq.len();
    for k in 0..n {
        for i in 0..n {
            if leq[i][k] {
                for j in 0..n {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
}

/// `a`, `b`, ..., `z`, `a1`, `b1`, ... All distinct, all valid identifiers.
pub(crate) fn fresh_labels(n: usize) -> Vec<PointLabel> {
    (0..n).map(|i| PointLabel::new(fresh_label(i))).collect()
}

pub(crate) fn fresh_label(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", i / 26)
    }
}
