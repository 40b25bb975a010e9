//! Brute-force reference implementations. They only read the Cayley table.

use std::collections::{BTreeSet, HashSet};

use cdlat_core::{Elem, Group};

/// A subset of the group as a sorted element list.
pub type Set = Vec<Elem>;

fn closure(g: &Group, gens: &[Elem]) -> Set {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut stack = vec![0 as Elem];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y);
            }
        }
    }
    (0..g.order() as Elem).filter(|&x| seen[x as usize]).collect()
}

/// Every subset containing the identity that is closed under products.
/// Only feasible for tiny groups.
pub fn subgroups_by_subsets(g: &Group) -> BTreeSet<Set> {
    let n = g.order();
    assert!(n <= 16, "subset oracle is exponential");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (n - 1)) {
        let set: Set = std::iter::once(0)
            .chain((1..n).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| i as Elem))
            .collect();
        let mut member = vec![false; n];
        for &x in &set {
            member[x as usize] = true;
        }
        if set.iter().all(|&a| set.iter().all(|&b| member[g.mul(a, b) as usize])) {
            out.insert(set);
        }
    }
    out
}

/// Grows subgroups one generator at a time, starting from the trivial one.
/// Every subgroup is reached because any subgroup is generated by a chain
/// of single-element extensions.
pub fn subgroups_by_closure(g: &Group) -> BTreeSet<Set> {
    let mut found: HashSet<Set> = HashSet::new();
    let mut queue: Vec<(Set, Vec<Elem>)> = vec![(vec![0], Vec::new())];
    found.insert(vec![0]);
    while let Some((set, gens)) = queue.pop() {
        let mut member = vec![false; g.order()];
        for &x in &set {
            member[x as usize] = true;
        }
        for x in 0..g.order() as Elem {
            if member[x as usize] {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(x);
            let next = closure(g, &next_gens);
            if found.insert(next.clone()) {
                queue.push((next, next_gens));
            }
        }
    }
    found.into_iter().collect()
}

pub fn centralizer_order(g: &Group, h: &[Elem]) -> u64 {
    (0..g.order() as Elem)
        .filter(|&x| h.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .count() as u64
}

pub fn measure(g: &Group, h: &[Elem]) -> u64 {
    h.len() as u64 * centralizer_order(g, h)
}

pub fn im(g: &Group, subgroups: &BTreeSet<Set>) -> BTreeSet<u64> {
    subgroups.iter().map(|h| measure(g, h)).collect()
}

/// Conjugacy classes of subgroups, counted by brute-force conjugation.
pub fn class_count(g: &Group, subgroups: &BTreeSet<Set>) -> usize {
    let mut seen: HashSet<&Set> = HashSet::new();
    let mut classes = 0;
    for h in subgroups {
        if seen.contains(h) {
            continue;
        }
        classes += 1;
        for x in 0..g.order() as Elem {
            let xi = (0..g.order() as Elem).find(|&y| g.mul(x, y) == 0).unwrap();
            let mut c: Set = h.iter().map(|&y| g.mul(g.mul(xi, y), x)).collect();
            c.sort_unstable();
            if let Some(k) = subgroups.get(&c) {
                seen.insert(k);
            }
        }
    }
    classes
}

pub fn divisors(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |&d| n.is_multiple_of(d))
}
