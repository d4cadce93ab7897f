#![allow(dead_code)]

use fintop::{FinMap, Square};

/// Unpruned lift search: every function from the bottom-left space to the
/// top-right space is generated and tested against monotonicity and both
/// triangle identities.
pub fn naive_lift_exists(square: &Square) -> bool {
    let b = square.left().cod();
    let x = square.right().dom();
    if b.is_empty() {
        return true;
    }
    if x.is_empty() {
        return false;
    }
    let mut assign = vec![0usize; b.len()];
    loop {
        if is_lift(square, &assign) {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == assign.len() {
                return false;
            }
            assign[pos] += 1;
            if assign[pos] < x.len() {
                break;
            }
            assign[pos] = 0;
            pos += 1;
        }
    }
}

fn is_lift(square: &Square, assign: &[usize]) -> bool {
    let b = square.left().cod();
    let x = square.right().dom();
    for u in 0..b.len() {
        for v in 0..b.len() {
            if b.leq(u, v) && !x.leq(assign[u], assign[v]) {
                return false;
            }
        }
    }
    let i = square.left();
    let f = square.top();
    for a in 0..i.dom().len() {
        if assign[i.apply(a)] != f.apply(a) {
            return false;
        }
    }
    let p = square.right();
    let g = square.bottom();
    for u in 0..b.len() {
        if p.apply(assign[u]) != g.apply(u) {
            return false;
        }
    }
    true
}

/// Checks that a claimed lift closes both triangles of its square.
pub fn lift_closes_square(square: &Square, lift: &FinMap) -> bool {
    let i = square.left();
    let f = square.top();
    let p = square.right();
    let g = square.bottom();
    (0..i.dom().len()).all(|a| lift.apply(i.apply(a)) == f.apply(a))
        && (0..lift.dom().len()).all(|u| p.apply(lift.apply(u)) == g.apply(u))
}

/// Counts reflexive transitive relations on `n` points by filtering all
/// 2^(n*n) boolean matrices.
pub fn brute_force_preorder_count(n: usize) -> usize {
    assert!(n * n <= 20, "matrix filter is meant for tiny n");
    let cells = n * n;
    let mut count = 0usize;
    'matrices: for mask in 0u32..(1u32 << cells) {
        let rel = |i: usize, j: usize| mask >> (i * n + j) & 1 == 1;
        for i in 0..n {
            if !rel(i, i) {
                continue 'matrices;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !rel(i, j) {
                    continue;
                }
                for k in 0..n {
                    if rel(j, k) && !rel(i, k) {
                        continue 'matrices;
                    }
                }
            }
        }
        count += 1;
    }
    count
}
