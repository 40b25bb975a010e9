//! Subgroups, subgroup lattices and conjugation.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use log::debug;

use crate::arith::{factorize, gcd};
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{Elem, Group, GroupHash};
use crate::Limits;

/// A subgroup of a parent group, stored as a membership bitset.
///
/// `gens` always generates the subgroup; it is not part of equality.
#[derive(Clone)]
pub struct Subgroup {
    parent: GroupHash,
    members: Bitset,
    size: usize,
    gens: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.size, self.gens)
    }
}

impl Subgroup {
    /// Validates that `members` is a subgroup of `g` and finds a small
    /// generating set for it.
    pub fn from_members(g: &Group, members: Bitset) -> Result<Subgroup> {
        if members.len() != g.order() || !members.contains(0) {
            return Err(Error::InvalidParameter("member set omits the identity".into()));
        }
        let mut cur = trivial(g);
        // large orders first keeps the generating set short
        let mut candidates: Vec<Elem> = members.iter().map(|x| x as Elem).collect();
        candidates.sort_by_key(|&x| std::cmp::Reverse(g.elt_order(x)));
        for x in candidates {
            if !cur.members.contains(x as usize) {
                cur = extend(g, &cur, x);
                if !cur.members.is_subset(&members) {
                    return Err(Error::InvalidParameter("member set is not closed".into()));
                }
            }
        }
        debug_assert_eq!(cur.members, members);
        Ok(cur)
    }

    pub fn parent(&self) -> GroupHash {
        self.parent
    }

    pub fn members(&self) -> &Bitset {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().map(|x| x as Elem)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn is_abelian(&self, g: &Group) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, &x)| self.gens[i + 1..].iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
    }

    fn check_parent(&self, g: &Group) {
        assert!(
            self.parent == g.hash() && self.members.len() == g.order(),
            "subgroup belongs to a different group"
        );
    }
}

pub fn trivial(g: &Group) -> Subgroup {
    Subgroup {
        parent: g.hash(),
        members: Bitset::from_iter(g.order(), [0]),
        size: 1,
        gens: Vec::new(),
    }
}

pub fn whole(g: &Group) -> Subgroup {
    let mut cur = trivial(g);
    let mut candidates: Vec<Elem> = g.elements().collect();
    candidates.sort_by_key(|&x| std::cmp::Reverse(g.elt_order(x)));
    for x in candidates {
        if !cur.contains(x) {
            cur = extend(g, &cur, x);
        }
    }
    cur
}

/// `⟨base, x⟩`, by worklist closure under right multiplication.
fn extend(g: &Group, base: &Subgroup, x: Elem) -> Subgroup {
    if base.contains(x) {
        return base.clone();
    }
    let mut members = base.members.clone();
    let mut gens = base.gens.clone();
    gens.push(x);
    let mut fresh: Vec<Elem> = Vec::new();
    // elements of the base only need multiplying by the new generator
    for y in base.elements() {
        let z = g.mul(y, x);
        if members.insert(z as usize) {
            fresh.push(z);
        }
    }
    while let Some(y) = fresh.pop() {
        for &s in &gens {
            let z = g.mul(y, s);
            if members.insert(z as usize) {
                fresh.push(z);
            }
        }
    }
    let size = members.count();
    Subgroup {
        parent: base.parent,
        members,
        size,
        gens,
    }
}

/// `extend`, but stops as soon as the closure exceeds `proper_bound`
/// elements, in which case the result can only be the whole group.
fn extend_or_whole(g: &Group, base: &Subgroup, x: Elem, proper_bound: usize) -> Option<Subgroup> {
    let mut members = base.members.clone();
    let mut size = base.size;
    let mut gens = base.gens.clone();
    gens.push(x);
    let mut fresh: Vec<Elem> = Vec::new();
    for y in base.elements() {
        let z = g.mul(y, x);
        if members.insert(z as usize) {
            fresh.push(z);
            size += 1;
        }
    }
    while let Some(y) = fresh.pop() {
        if size > proper_bound {
            return None;
        }
        for &s in &gens {
            let z = g.mul(y, s);
            if members.insert(z as usize) {
                fresh.push(z);
                size += 1;
            }
        }
    }
    Some(Subgroup {
        parent: base.parent,
        members,
        size,
        gens,
    })
}

/// Smallest subgroup containing `seed`.
pub fn generated_subgroup(g: &Group, seed: &[Elem]) -> Subgroup {
    seed.iter().fold(trivial(g), |h, &x| extend(g, &h, x))
}

/// Bitset intersection of two subgroups of the same group.
pub fn meet(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    a.check_parent(g);
    b.check_parent(g);
    Subgroup::from_members(g, a.members.intersection(&b.members))
        .expect("intersection of subgroups is a subgroup")
}

pub fn join(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    a.check_parent(g);
    b.check_parent(g);
    b.gens.iter().fold(a.clone(), |h, &x| extend(g, &h, x))
}

/// `C_G(H)` as the intersection of the element centralizers of a
/// generating set of `H`.
pub fn centralizer(g: &Group, h: &Subgroup) -> Subgroup {
    h.check_parent(g);
    let mut c = Bitset::full(g.order());
    for &x in &h.gens {
        c.intersect_with(g.element_centralizer(x));
    }
    Subgroup::from_members(g, c).expect("centralizer is a subgroup")
}

/// Order of `C_G(H)` without materializing a generating set for it.
pub fn centralizer_order(g: &Group, h: &Subgroup) -> usize {
    let mut c = Bitset::full(g.order());
    for &x in &h.gens {
        c.intersect_with(g.element_centralizer(x));
    }
    c.count()
}

pub fn normalizer(g: &Group, h: &Subgroup) -> Subgroup {
    h.check_parent(g);
    let members = Bitset::from_iter(
        g.order(),
        g.elements()
            .filter(|&x| h.gens.iter().all(|&s| h.contains(g.conjugate(s, x))))
            .map(|x| x as usize),
    );
    Subgroup::from_members(g, members).expect("normalizer is a subgroup")
}

/// `x⁻¹ H x`.
pub fn conjugate_subgroup(g: &Group, h: &Subgroup, x: Elem) -> Subgroup {
    h.check_parent(g);
    Subgroup {
        parent: h.parent,
        members: conjugate_members(g, &h.members, x),
        size: h.size,
        gens: h.gens.iter().map(|&s| g.conjugate(s, x)).collect(),
    }
}

fn conjugate_members(g: &Group, members: &Bitset, x: Elem) -> Bitset {
    let mut out = Bitset::new(g.order());
    for y in members.iter() {
        out.insert(g.conjugate(y as Elem, x) as usize);
    }
    out
}

/// The complete list of subgroups of a group, in canonical order (by
/// order, then by member bitset), with its conjugacy classes.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    parent: GroupHash,
    subgroups: Vec<Subgroup>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    index: HashMap<Bitset, usize>,
}

impl PartialEq for SubgroupLattice {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.subgroups == other.subgroups && self.classes == other.classes
    }
}

impl SubgroupLattice {
    /// Assembles a lattice from an arbitrary list of distinct subgroups:
    /// sorts canonically and computes conjugacy classes.
    pub fn from_subgroups(g: &Group, mut subgroups: Vec<Subgroup>) -> SubgroupLattice {
        subgroups.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| a.members.cmp(&b.members)));
        subgroups.dedup();
        let index: HashMap<Bitset, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members.clone(), i))
            .collect();
        let classes = conjugacy_classes_of(g, &subgroups, &index);
        let mut class_of = vec![0; subgroups.len()];
        for (c, members) in classes.iter().enumerate() {
            for &i in members {
                class_of[i] = c;
            }
        }
        SubgroupLattice {
            parent: g.hash(),
            subgroups,
            classes,
            class_of,
            index,
        }
    }

    /// Reassembles a lattice from stored parts, checking that the subgroups
    /// are in canonical order and that `classes` partitions them into
    /// conjugation orbits.
    pub fn from_parts(
        g: &Group,
        subgroups: Vec<Subgroup>,
        classes: Vec<Vec<usize>>,
    ) -> Result<SubgroupLattice> {
        let bad = |msg: &str| Err(Error::InvalidState(format!("stored lattice: {msg}")));
        if subgroups.iter().any(|s| s.parent != g.hash()) {
            return bad("subgroup of a different group");
        }
        let sorted = subgroups
            .windows(2)
            .all(|w| (w[0].size, &w[0].members) < (w[1].size, &w[1].members));
        if !sorted || subgroups.first().map(|s| s.size) != Some(1) {
            return bad("subgroups out of canonical order");
        }
        if subgroups.last().map(|s| s.size) != Some(g.order()) {
            return bad("whole group missing");
        }
        let index: HashMap<Bitset, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members.clone(), i))
            .collect();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        for (c, members) in classes.iter().enumerate() {
            for &i in members {
                if i >= subgroups.len() || class_of[i] != usize::MAX {
                    return bad("classes are not a partition");
                }
                class_of[i] = c;
            }
        }
        if class_of.contains(&usize::MAX) {
            return bad("classes are not a partition");
        }
        if conjugacy_classes_of(g, &subgroups, &index) != classes {
            return bad("classes are not the conjugacy classes");
        }
        Ok(SubgroupLattice {
            parent: g.hash(),
            subgroups,
            classes,
            class_of,
            index,
        })
    }

    pub fn parent(&self) -> GroupHash {
        self.parent
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    /// Partition of subgroup indices into conjugacy classes, each sorted,
    /// ordered by smallest member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn find(&self, members: &Bitset) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.find(&h.members)
    }

    pub fn whole_index(&self) -> usize {
        self.subgroups.len() - 1
    }
}

/// Orbits of conjugation by a generating set of `g` on a conjugation-closed
/// subgroup list.
fn conjugacy_classes_of(
    g: &Group,
    subgroups: &[Subgroup],
    index: &HashMap<Bitset, usize>,
) -> Vec<Vec<usize>> {
    let ggens = whole(g).gens;
    let mut assigned = vec![false; subgroups.len()];
    let mut classes = Vec::new();
    for start in 0..subgroups.len() {
        if assigned[start] {
            continue;
        }
        assigned[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let cur = &subgroups[orbit[head]];
            for &x in &ggens {
                let conj = conjugate_members(g, &cur.members, x);
                let j = *index
                    .get(&conj)
                    .expect("subgroup list is closed under conjugation");
                if !assigned[j] {
                    assigned[j] = true;
                    orbit.push(j);
                }
            }
            head += 1;
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    classes
}

/// Conjugacy classes of the lattice's subgroups.
pub fn conjugacy_classes(g: &Group, lattice: &SubgroupLattice) -> Vec<Vec<usize>> {
    conjugacy_classes_of(g, &lattice.subgroups, &lattice.index)
}

/// Enumerates every subgroup of `g`.
///
/// Starting from the trivial subgroup, each discovered subgroup `H` is
/// joined with every cyclic subgroup `⟨x⟩` not contained in it until no new
/// subgroup appears. Every subgroup is a join of cyclic subgroups, so the
/// fixed point is the whole lattice. For a given `H`, all `x^k h` with `k`
/// prime to `o(x)` and `h ∈ H` give the same join and are skipped.
pub fn all_subgroups(g: &Group, limits: &Limits) -> Result<SubgroupLattice> {
    if g.order() > limits.max_order {
        return Err(Error::SizeLimit {
            order: g.order(),
            limit: limits.max_order,
        });
    }
    let n = g.order();
    // a proper subgroup has at most n / (smallest prime divisor of n) elements
    let proper_bound = match factorize(n as u64).pairs.first() {
        Some(&(p, _)) => n / p as usize,
        None => 0,
    };
    let whole_group = whole(g);
    let mut subs: Vec<Subgroup> = vec![trivial(g)];
    let mut seen: HashMap<Bitset, usize> = HashMap::from([(subs[0].members.clone(), 0)]);
    let mut head = 0;
    while head < subs.len() {
        let h = subs[head].clone();
        head += 1;
        let mut done = h.members.clone();
        for x in 0..n as Elem {
            if done.contains(x as usize) {
                continue;
            }
            let o = g.elt_order(x) as u64;
            let mut xk = x;
            for k in 1..=o {
                if gcd(k, o) == 1 {
                    for y in h.elements() {
                        done.insert(g.mul(xk, y) as usize);
                    }
                }
                xk = g.mul(xk, x);
            }
            let j = extend_or_whole(g, &h, x, proper_bound).unwrap_or_else(|| whole_group.clone());
            if !seen.contains_key(&j.members) {
                seen.insert(j.members.clone(), subs.len());
                subs.push(j);
                if subs.len() > limits.max_subgroups {
                    return Err(Error::Explosion {
                        cap: limits.max_subgroups,
                        found: subs.len(),
                    });
                }
            }
        }
    }
    debug!("enumerated {} subgroups of a group of order {n}", subs.len());
    Ok(SubgroupLattice::from_subgroups(g, subs))
}
