//! Canonical forms for spaces and maps up to isomorphism.
//!
//! A space key is the lexicographically least relation-matrix encoding over
//! all relabelings compatible with an iterated invariant refinement of the
//! points; two spaces get equal keys exactly when they are homeomorphic. A
//! map key combines the two space keys with the least assignment encoding
//! over all pairs of key-achieving relabelings, which identifies maps up to
//! commuting squares of homeomorphisms.

use std::fmt;

use crate::map::FinMap;
use crate::space::FinSpace;

/// Opaque, totally ordered isomorphism invariant. Displayed as hex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Packs the permuted relation matrix row-major into bytes, prefixed by the
/// point count.
fn encode_matrix(space: &FinSpace, perm: &[usize]) -> Vec<u8> {
    let n = space.len();
    // inv[new] = old
    let mut inv = vec![0usize; n];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    let mut bytes = vec![n as u8];
    let mut acc = 0u8;
    let mut bits = 0u8;
    for i in 0..n {
        for j in 0..n {
            acc <<= 1;
            if space.leq(inv[i], inv[j]) {
                acc |= 1;
            }
            bits += 1;
            if bits == 8 {
                bytes.push(acc);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        bytes.push(acc << (8 - bits));
    }
    bytes
}

/// Iterated invariant refinement: points are coloured by in/out degree of the
/// strict relation and then repeatedly by the sorted colour lists of their
/// strict successors and predecessors, until stable. Colours are
/// relabeling-invariant, so isomorphic points always share a colour.
fn refine_colors(space: &FinSpace) -> Vec<usize> {
    let n = space.len();
    let mut sig: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let out = (0..n).filter(|&y| space.strict(x, y)).count();
            let inn = (0..n).filter(|&y| space.strict(y, x)).count();
            vec![out, inn]
        })
        .collect();
    let mut colors = rank_signatures(&sig);
    loop {
        sig = (0..n)
            .map(|x| {
                let mut s = vec![colors[x]];
                let mut succ: Vec<usize> =
                    (0..n).filter(|&y| space.strict(x, y)).map(|y| colors[y]).collect();
                succ.sort_unstable();
                let mut pred: Vec<usize> =
                    (0..n).filter(|&y| space.strict(y, x)).map(|y| colors[y]).collect();
                pred.sort_unstable();
                s.push(usize::MAX); // separator
                s.extend(succ);
                s.push(usize::MAX);
                s.extend(pred);
                s
            })
            .collect();
        let next = rank_signatures(&sig);
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

fn rank_signatures(sig: &[Vec<usize>]) -> Vec<usize> {
    let mut sorted: Vec<&Vec<usize>> = sig.iter().collect();
    sorted.sort();
    sorted.dedup();
    sig.iter()
        .map(|s| sorted.binary_search(&s).unwrap())
        .collect()
}

/// All permutations (as `perm[old] = new`) that place points in colour order
/// and permute freely inside each colour class.
fn color_respecting_perms(colors: &[usize]) -> Vec<Vec<usize>> {
    let n = colors.len();
    let ncolors = colors.iter().copied().max().map_or(0, |m| m + 1);
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); ncolors];
    for (x, &c) in colors.iter().enumerate() {
        classes[c].push(x);
    }
    let mut base = 0usize;
    let mut perms: Vec<Vec<usize>> = vec![vec![0; n]];
    for class in &classes {
        let arrangements = permutations(class);
        let mut next = Vec::with_capacity(perms.len() * arrangements.len());
        for perm in &perms {
            for arr in &arrangements {
                let mut p = perm.clone();
                for (offset, &old) in arr.iter().enumerate() {
                    p[old] = base + offset;
                }
                next.push(p);
            }
        }
        perms = next;
        base += class.len();
    }
    perms
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest: Vec<usize> = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            let mut v = vec![first];
            v.append(&mut tail);
            out.push(v);
        }
    }
    out
}

/// Canonical key plus every relabeling that achieves it. The achieving set is
/// a coset of the automorphism group, so its size is the automorphism count.
pub(crate) fn space_key_with_labelings(space: &FinSpace) -> (CanonicalKey, Vec<Vec<usize>>) {
    let colors = refine_colors(space);
    let mut best: Option<Vec<u8>> = None;
    let mut achievers: Vec<Vec<usize>> = Vec::new();
    for perm in color_respecting_perms(&colors) {
        let enc = encode_matrix(space, &perm);
        match &best {
            None => {
                best = Some(enc);
                achievers.push(perm);
            }
            Some(b) => {
                if enc < *b {
                    best = Some(enc);
                    achievers.clear();
                    achievers.push(perm);
                } else if enc == *b {
                    achievers.push(perm);
                }
            }
        }
    }
    let mut bytes = vec![b'S'];
    bytes.extend(best.unwrap_or_else(|| vec![0]));
    (CanonicalKey(bytes), achievers)
}

/// Canonical key of a space. Equal keys exactly for homeomorphic spaces.
pub fn space_key(space: &FinSpace) -> CanonicalKey {
    space_key_with_labelings(space).0
}

/// The number of self-homeomorphisms.
pub fn automorphism_count(space: &FinSpace) -> usize {
    space_key_with_labelings(space).1.len()
}

/// A representative with canonical point order and fresh labels `a`, `b`, ...
pub fn canonical_form(space: &FinSpace) -> FinSpace {
    let (_, achievers) = space_key_with_labelings(space);
    space.permuted(&achievers[0]).with_fresh_labels()
}

/// Map-key construction from precomputed space keys and their achieving
/// relabelings, so censuses can amortize the per-space work.
pub(crate) fn map_key_from_parts(
    dom_key: &CanonicalKey,
    dom_achievers: &[Vec<usize>],
    cod_key: &CanonicalKey,
    cod_achievers: &[Vec<usize>],
    assign: &[usize],
) -> CanonicalKey {
    let n = assign.len();
    let mut best: Option<Vec<u8>> = None;
    for sigma in dom_achievers {
        // inv[new] = old
        let mut inv = vec![0usize; n];
        for (old, &new) in sigma.iter().enumerate() {
            inv[new] = old;
        }
        for tau in cod_achievers {
            let enc: Vec<u8> = (0..n)
                .map(|new| tau[assign[inv[new]]] as u8)
                .collect();
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        }
    }
    let mut bytes = vec![b'M'];
    bytes.extend_from_slice(dom_key.as_bytes());
    bytes.extend_from_slice(cod_key.as_bytes());
    bytes.extend(best.unwrap_or_default());
    CanonicalKey(bytes)
}

/// Canonical key of a map. Equal keys exactly when there are homeomorphisms
/// of the domains and codomains forming a commuting square.
pub fn map_key(map: &FinMap) -> CanonicalKey {
    let (dom_key, dom_achievers) = space_key_with_labelings(map.dom());
    let (cod_key, cod_achievers) = space_key_with_labelings(map.cod());
    map_key_from_parts(&dom_key, &dom_achievers, &cod_key, &cod_achievers, map.assign())
}
