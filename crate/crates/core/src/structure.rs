//! Structural predicates: center, lower central series, maximal class,
//! uniform elements, abelian maximal subgroups and Sylow decompositions.

use crate::arith::factorize;
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::lattice::{self, generated_subgroup, Subgroup, SubgroupLattice};

pub fn center(g: &Group) -> Subgroup {
    let n = g.order();
    let members = Bitset::from_iter(
        n,
        g.elements()
            .filter(|&x| g.element_centralizer(x).count() == n)
            .map(|x| x as usize),
    );
    Subgroup::from_members(g, members).expect("center is a subgroup")
}

/// `[A, B]`, generated by all `x⁻¹y⁻¹xy` with `x ∈ A`, `y ∈ B`.
pub fn commutator_subgroup(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut comms = Bitset::new(g.order());
    for x in a.elements() {
        for y in b.elements() {
            comms.insert(g.commutator(x, y) as usize);
        }
    }
    let seed: Vec<Elem> = comms.iter().map(|x| x as Elem).collect();
    generated_subgroup(g, &seed)
}

#[derive(Clone, Debug)]
pub struct LowerCentralSeries {
    /// `K_1 = G ⊋ K_2 ⊋ …`, ending at the first term that repeats.
    pub terms: Vec<Subgroup>,
    pub nilpotent: bool,
    /// Nilpotency class, when nilpotent.
    pub class: Option<usize>,
}

impl LowerCentralSeries {
    /// `K_i` with 1-based `i`; terms past the end equal the last term.
    pub fn term(&self, i: usize) -> &Subgroup {
        assert!(i >= 1);
        &self.terms[(i - 1).min(self.terms.len() - 1)]
    }
}

pub fn lower_central_series(g: &Group) -> LowerCentralSeries {
    let whole = lattice::whole(g);
    let mut terms = vec![whole.clone()];
    loop {
        let last = terms.last().unwrap();
        let next = commutator_subgroup(g, last, &whole);
        if next.size() == last.size() {
            break;
        }
        terms.push(next);
    }
    let nilpotent = terms.last().unwrap().is_trivial();
    let class = nilpotent.then(|| terms.len() - 1);
    LowerCentralSeries {
        terms,
        nilpotent,
        class,
    }
}

pub fn is_nilpotent(g: &Group) -> bool {
    lower_central_series(g).nilpotent
}

/// `(p, n)` when `|G| = pⁿ` with `n ≥ 1`.
pub fn prime_power_order(g: &Group) -> Option<(u64, u32)> {
    factorize(g.order() as u64).prime_power()
}

/// Non-abelian of order `pⁿ` with nilpotency class `n - 1`.
pub fn is_maximal_class(g: &Group) -> bool {
    let Some((_, n)) = prime_power_order(g) else {
        return false;
    };
    if g.is_abelian() {
        return false;
    }
    lower_central_series(g).class == Some(n as usize - 1)
}

/// `C_G(K_i/K_{i+2}) = {x : [x, y] ∈ K_{i+2} for all y ∈ K_i}` for
/// `2 ≤ i ≤ n - 2`, where `|G| = pⁿ`.
pub fn section_centralizer(g: &Group, i: usize) -> Result<Subgroup> {
    let (_, n) = prime_power_order(g)
        .ok_or_else(|| Error::InvalidParameter(format!("order {} is not a prime power", g.order())))?;
    let lcs = lower_central_series(g);
    section_centralizer_with(g, &lcs, n as usize, i)
}

fn section_centralizer_with(
    g: &Group,
    lcs: &LowerCentralSeries,
    n: usize,
    i: usize,
) -> Result<Subgroup> {
    if i < 2 || i + 2 > n {
        return Err(Error::InvalidParameter(format!(
            "section index {i} outside 2..={}",
            n as isize - 2
        )));
    }
    let top = lcs.term(i);
    let bottom = lcs.term(i + 2);
    let members = Bitset::from_iter(
        g.order(),
        g.elements()
            .filter(|&x| top.elements().all(|y| bottom.contains(g.commutator(x, y))))
            .map(|x| x as usize),
    );
    Ok(Subgroup::from_members(g, members).expect("section centralizer is a subgroup"))
}

#[derive(Clone, Debug)]
pub struct UniformElements {
    pub elements: Bitset,
    /// False when the group is not of maximal class; the literal definition
    /// is still applied.
    pub standard_context: bool,
}

/// Elements outside every `C_G(K_i/K_{i+2})`, `2 ≤ i ≤ n - 2`. For
/// `n ≤ 3` the range is empty and every element is uniform.
pub fn uniform_elements(g: &Group) -> Result<UniformElements> {
    let (_, n) = prime_power_order(g)
        .ok_or_else(|| Error::InvalidParameter(format!("order {} is not a prime power", g.order())))?;
    let n = n as usize;
    let lcs = lower_central_series(g);
    let mut union = Bitset::new(g.order());
    for i in 2..=n.saturating_sub(2) {
        union.union_with(section_centralizer_with(g, &lcs, n, i)?.members());
    }
    let elements = Bitset::from_iter(
        g.order(),
        (0..g.order()).filter(|&x| !union.contains(x)),
    );
    Ok(UniformElements {
        elements,
        standard_context: is_maximal_class(g),
    })
}

pub fn has_uniform_of_order_p(g: &Group) -> Result<bool> {
    let u = uniform_elements(g)?;
    let (p, _) = prime_power_order(g).expect("checked by uniform_elements");
    Ok(u.elements.iter().any(|x| g.elt_order(x as Elem) as u64 == p))
}

/// Some abelian subgroup of index `p`, if one exists.
pub fn abelian_maximal_subgroup(g: &Group, lattice: &SubgroupLattice) -> Option<Subgroup> {
    let (p, _) = prime_power_order(g)?;
    let target = g.order() / p as usize;
    lattice
        .subgroups()
        .iter()
        .find(|h| h.size() == target && h.is_abelian(g))
        .cloned()
}

/// Sylow subgroups of a nilpotent group, in increasing prime order.
pub fn sylow_decomposition(g: &Group) -> Result<Vec<(u64, Subgroup)>> {
    if !is_nilpotent(g) {
        return Err(Error::InvalidState("sylow_decomposition requires a nilpotent group".into()));
    }
    let primes = factorize(g.order() as u64).pairs;
    primes
        .iter()
        .map(|&(p, _)| {
            let members = Bitset::from_iter(
                g.order(),
                g.elements()
                    .filter(|&x| factorize(g.elt_order(x) as u64).pairs.iter().all(|&(q, _)| q == p))
                    .map(|x| x as usize),
            );
            Ok((p, Subgroup::from_members(g, members)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use crate::lattice::{all_subgroups, centralizer, whole};
    use crate::Limits;

    #[test]
    fn centers() {
        let c6 = cyclic(6).unwrap();
        assert_eq!(center(&c6).size(), 6);
        for two_n in [8, 12, 20, 24] {
            let d = dihedral(two_n).unwrap();
            assert_eq!(center(&d).size(), 2, "D{two_n}");
        }
        assert_eq!(center(&dihedral(10).unwrap()).size(), 1);
        let a5 = alternating(5, 5000).unwrap();
        assert_eq!(center(&a5).size(), 1);
        let g = dihedral(16).unwrap();
        assert_eq!(center(&g), centralizer(&g, &whole(&g)));
    }

    #[test]
    fn derived_subgroups() {
        let d6 = dihedral(6).unwrap();
        let w = whole(&d6);
        let k2 = commutator_subgroup(&d6, &w, &w);
        assert_eq!(k2.size(), 3);
        assert!(k2.contains(1));
        let q8 = dicyclic(8).unwrap();
        let w = whole(&q8);
        assert_eq!(commutator_subgroup(&q8, &w, &w), center(&q8));
        let z = center(&q8);
        assert!(commutator_subgroup(&q8, &z, &w).is_trivial());
    }

    #[test]
    fn series_and_classes() {
        let c = lower_central_series(&cyclic(9).unwrap());
        assert_eq!(c.class, Some(1));
        assert_eq!(c.terms.len(), 2);
        let d16 = lower_central_series(&dihedral(16).unwrap());
        assert_eq!(d16.class, Some(3));
        let s3 = lower_central_series(&dihedral(6).unwrap());
        assert!(!s3.nilpotent);
        assert_eq!(s3.terms.last().unwrap().size(), 3);
        assert!(is_maximal_class(&dihedral(64).unwrap()));
        assert!(!is_maximal_class(&cyclic(27).unwrap()));
        assert!(!is_maximal_class(&dihedral(60).unwrap()));
    }

    #[test]
    fn section_centralizers_of_d32() {
        let g = dihedral(32).unwrap();
        let a = generated_subgroup(&g, &[1]);
        assert_eq!(section_centralizer(&g, 2).unwrap(), a);
        assert_eq!(section_centralizer(&g, 3).unwrap(), a);
        assert!(section_centralizer(&g, 1).is_err());
        assert!(section_centralizer(&g, 4).is_err());
    }

    #[test]
    fn uniform_elements_examples() {
        let d64 = dihedral(64).unwrap();
        let u = uniform_elements(&d64).unwrap();
        assert!(u.standard_context);
        // exactly the reflections
        assert_eq!(u.elements.iter().collect::<Vec<_>>(), (32..64).collect::<Vec<_>>());
        assert!(has_uniform_of_order_p(&d64).unwrap());
        assert!(!has_uniform_of_order_p(&dicyclic(64).unwrap()).unwrap());
        let q8 = dicyclic(8).unwrap();
        assert_eq!(uniform_elements(&q8).unwrap().elements.count(), 8);
        assert!(uniform_elements(&cyclic(6).unwrap()).is_err());
    }

    #[test]
    fn abelian_maximal() {
        let g = dicyclic(8).unwrap();
        let l = all_subgroups(&g, &Limits::default()).unwrap();
        let a = abelian_maximal_subgroup(&g, &l).unwrap();
        assert_eq!(a.size(), 4);
        let d = dihedral(16).unwrap();
        let l = all_subgroups(&d, &Limits::default()).unwrap();
        assert!(abelian_maximal_subgroup(&d, &l).is_some());
    }

    #[test]
    fn sylows() {
        let g = cyclic(60).unwrap();
        let s: Vec<_> = sylow_decomposition(&g).unwrap().iter().map(|(p, h)| (*p, h.size())).collect();
        assert_eq!(s, vec![(2, 4), (3, 3), (5, 5)]);
        assert!(matches!(sylow_decomposition(&dihedral(6).unwrap()), Err(Error::InvalidState(_))));
        assert!(!is_nilpotent(&dihedral(6).unwrap()));
    }
}
