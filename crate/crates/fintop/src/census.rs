//! Exhaustive censuses of finite spaces and maps up to isomorphism.
//!
//! Spaces are enumerated incrementally: a preorder on `k` points is an
//! extension of one on `k - 1` points by a new point with a chosen
//! down-closed set below it and up-closed set above it, subject to the
//! relations between the two sets already holding. Every isomorphism class
//! on `k` points restricts, after removing its last point, to one on
//! `k - 1` points, so extending one representative per class and
//! deduplicating by canonical key reaches every class.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::canon::{
    canonical_form, map_key_from_parts, space_key, space_key_with_labelings, CanonicalKey,
};
use crate::map::{monotone_maps, FinMap};
use crate::space::{fresh_labels, FinSpace};

/// Largest supported bound for space censuses.
pub const MAX_SPACE_CENSUS: usize = 7;

/// Largest supported bound for map censuses.
pub const MAX_MAP_CENSUS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CensusError {
    #[error("census bound {requested} exceeds the supported maximum {max}")]
    BoundTooLarge { requested: usize, max: usize },
}

/// All ways to extend `parent` by one new point, as relation matrices. The
/// new point is related downward to a down-closed subset and upward to an
/// up-closed subset, and every downward point must lie under every upward
/// one.
fn extensions(parent: &FinSpace) -> Vec<Vec<Vec<bool>>> {
    let m = parent.len();
    let k = m + 1;
    let down_ok = |down: u32| {
        (0..m).all(|x| {
            down & (1 << x) == 0
                || (0..m).all(|y| !parent.leq(y, x) || down & (1 << y) != 0)
        })
    };
    let up_ok = |up: u32| {
        (0..m).all(|x| {
            up & (1 << x) == 0
                || (0..m).all(|y| !parent.leq(x, y) || up & (1 << y) != 0)
        })
    };
    let mut out = Vec::new();
    for down in 0u32..(1u32 << m) {
        if !down_ok(down) {
            continue;
        }
        for up in 0u32..(1u32 << m) {
            if !up_ok(up) {
                continue;
            }
            let cross_ok = (0..m).all(|x| {
                down & (1 << x) == 0
                    || (0..m).all(|y| up & (1 << y) == 0 || parent.leq(x, y))
            });
            if !cross_ok {
                continue;
            }
            let mut leq = vec![vec![false; k]; k];
            for x in 0..m {
                for y in 0..m {
                    leq[x][y] = parent.leq(x, y);
                }
            }
            for x in 0..m {
                leq[x][m] = down & (1 << x) != 0;
                leq[m][x] = up & (1 << x) != 0;
            }
            leq[m][m] = true;
            out.push(leq);
        }
    }
    out
}

/// Every preorder on `n` labeled points, each exactly once, built by
/// iterated one-point extension.
pub fn labeled_preorders(n: usize) -> Vec<FinSpace> {
    let mut level = vec![FinSpace::empty()];
    for k in 1..=n {
        let mut next = Vec::new();
        for parent in &level {
            for leq in extensions(parent) {
                next.push(
                    FinSpace::new(fresh_labels(k), leq).expect("extensions are preorders"),
                );
            }
        }
        level = next;
    }
    level
}

/// A census of all finite spaces up to a size bound, one representative per
/// homeomorphism class.
#[derive(Debug, Clone)]
pub struct Census {
    bound: usize,
    spaces: Vec<FinSpace>,
}

impl Census {
    /// Builds the census of spaces with at most `bound` points, including
    /// the empty space, sorted by canonical key. Representatives are in
    /// canonical form with fresh labels.
    pub fn up_to(bound: usize) -> Result<Census, CensusError> {
        if bound > MAX_SPACE_CENSUS {
            return Err(CensusError::BoundTooLarge {
                requested: bound,
                max: MAX_SPACE_CENSUS,
            });
        }
        let mut spaces = vec![FinSpace::empty()];
        let mut level = vec![FinSpace::empty()];
        for k in 1..=bound {
            let mut next: BTreeMap<CanonicalKey, FinSpace> = BTreeMap::new();
            for parent in &level {
                for leq in extensions(parent) {
                    let space = FinSpace::new(fresh_labels(k), leq)
                        .expect("extensions are preorders");
                    next.entry(space_key(&space))
                        .or_insert_with(|| canonical_form(&space));
                }
            }
            level = next.into_values().collect();
            spaces.extend(level.iter().cloned());
        }
        spaces.sort_by_key(space_key);
        Ok(Census { bound, spaces })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn spaces(&self) -> &[FinSpace] {
        &self.spaces
    }

    /// All maps between census spaces, one representative per isomorphism
    /// class of maps (commuting squares of homeomorphisms), sorted by
    /// canonical key.
    pub fn maps(&self) -> Result<Vec<FinMap>, CensusError> {
        Ok((*shared_maps(self.bound)?).clone())
    }

    fn compute_maps(&self) -> Result<Vec<FinMap>, CensusError> {
        if self.bound > MAX_MAP_CENSUS {
            return Err(CensusError::BoundTooLarge {
                requested: self.bound,
                max: MAX_MAP_CENSUS,
            });
        }
        let parts: Vec<(CanonicalKey, Vec<Vec<usize>>)> = self
            .spaces
            .iter()
            .map(space_key_with_labelings)
            .collect();
        let mut by_key: BTreeMap<CanonicalKey, FinMap> = BTreeMap::new();
        for (di, dom) in self.spaces.iter().enumerate() {
            for (ci, cod) in self.spaces.iter().enumerate() {
                for map in monotone_maps(dom, cod) {
                    let key = map_key_from_parts(
                        &parts[di].0,
                        &parts[di].1,
                        &parts[ci].0,
                        &parts[ci].1,
                        map.assign(),
                    );
                    by_key.entry(key).or_insert(map);
                }
            }
        }
        Ok(by_key.into_values().collect())
    }
}

static MAP_CACHE: [OnceLock<Arc<Vec<FinMap>>>; MAX_MAP_CENSUS + 1] =
    [const { OnceLock::new() }; MAX_MAP_CENSUS + 1];

/// The map census up to `bound`, computed once per process and shared.
pub fn shared_maps(bound: usize) -> Result<Arc<Vec<FinMap>>, CensusError> {
    if bound > MAX_MAP_CENSUS {
        return Err(CensusError::BoundTooLarge { requested: bound, max: MAX_MAP_CENSUS });
    }
    if let Some(cached) = MAP_CACHE[bound].get() {
        return Ok(Arc::clone(cached));
    }
    let computed = Arc::new(Census::up_to(bound)?.compute_maps()?);
    Ok(Arc::clone(MAP_CACHE[bound].get_or_init(|| computed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{automorphism_count, map_key};

    #[test]
    fn labeled_counts_match_known_values() {
        assert_eq!(labeled_preorders(0).len(), 1);
        assert_eq!(labeled_preorders(1).len(), 1);
        assert_eq!(labeled_preorders(2).len(), 4);
        assert_eq!(labeled_preorders(3).len(), 29);
        assert_eq!(labeled_preorders(4).len(), 355);
        assert_eq!(labeled_preorders(5).len(), 6942);
    }

    #[test]
    fn census_counts_by_size() {
        let census = Census::up_to(4).unwrap();
        assert_eq!(census.spaces().len(), 47);
        let by_size =
            |n: usize| census.spaces().iter().filter(|s| s.len() == n).count();
        assert_eq!(by_size(0), 1);
        assert_eq!(by_size(1), 1);
        assert_eq!(by_size(2), 3);
        assert_eq!(by_size(3), 9);
        assert_eq!(by_size(4), 33);
    }

    #[test]
    fn census_bound_five_has_all_classes() {
        assert_eq!(Census::up_to(5).unwrap().spaces().len(), 186);
    }

    #[test]
    fn census_bound_guard() {
        assert!(Census::up_to(MAX_SPACE_CENSUS + 1).is_err());
    }

    #[test]
    fn census_keys_are_distinct() {
        let census = Census::up_to(3).unwrap();
        let mut keys: Vec<CanonicalKey> =
            census.spaces().iter().map(space_key).collect();
        let before = keys.len();
        keys.dedup();
        assert_eq!(keys.len(), before);
    }

    #[test]
    fn orbit_sizes_sum_to_labeled_count() {
        for n in 1..=4usize {
            let labeled = labeled_preorders(n).len();
            let factorial: usize = (1..=n).product();
            let total: usize = Census::up_to(n)
                .unwrap()
                .spaces()
                .iter()
                .filter(|s| s.len() == n)
                .map(|s| factorial / automorphism_count(s))
                .sum();
            assert_eq!(total, labeled, "orbit sizes at {n} points");
        }
    }

    #[test]
    fn map_census_bound_one() {
        let maps = Census::up_to(1).unwrap().maps().unwrap();
        assert_eq!(maps.len(), 3);
    }

    #[test]
    fn map_census_keys_are_distinct_and_stable() {
        let maps = Census::up_to(2).unwrap().maps().unwrap();
        let keys: Vec<CanonicalKey> = maps.iter().map(map_key).collect();
        let mut deduped = keys.clone();
        deduped.dedup();
        assert_eq!(deduped.len(), keys.len());
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(sorted, keys);
    }
}
