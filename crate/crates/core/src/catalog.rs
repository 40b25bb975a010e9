//! Built-in catalog of groups with known or frozen `|Im(m_G)|` values.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::dsl::{parse_spec, GroupSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// Stated in the literature; the string says where.
    Paper { citation: String },
    /// Computed by brute force and frozen; checked by independent oracles.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub im_count: u64,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: GroupSpec,
    pub expected: Option<Expected>,
    pub tags: BTreeSet<String>,
}

impl CatalogEntry {
    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.contains(tag)
    }

    /// The order-60 list position `1..=11`, if any.
    pub fn ex60_index(&self) -> Option<usize> {
        self.tags.iter().find_map(|t| t.strip_prefix("ex60-")?.parse().ok())
    }
}

enum Exp {
    None,
    Paper(u64, &'static str),
    Derived(u64),
}

struct Raw {
    name: Option<&'static str>,
    spec: String,
    exp: Exp,
    tags: &'static str,
}

fn e(spec: &str, exp: Exp, tags: &'static str) -> Raw {
    Raw { name: None, spec: spec.to_string(), exp, tags }
}

fn named(name: &'static str, spec: &str, exp: Exp, tags: &'static str) -> Raw {
    Raw { name: Some(name), spec: spec.to_string(), exp, tags }
}

use Exp::{Derived, Paper};
const NO: Exp = Exp::None;

const A_P3: &str = "Lemma 3.8";
const A_D: &str = "Lemma 3.10";

fn raw_entries() -> Vec<Raw> {
    let mut v = vec![
        // order 60
        e("A5", Paper(8, "Example 3.11(ii)"), "order60 ex60-1 nonsolvable"),
        e("(C15 : C4 @ 2)", Derived(9), "order60 ex60-2 metacyclic"),
        e("(C15 : C4 @ 14)", Derived(11), "order60 ex60-3 metacyclic"),
        e("C5 x (C3 : C4 @ 2)", Derived(10), "order60 ex60-4"),
        e("C3 x (C5 : C4 @ 2)", Derived(10), "order60 ex60-5"),
        e("C3 x (C5 : C4 @ 4)", Derived(10), "order60 ex60-6"),
        e("C5 x A4", Paper(8, "Example 3.11, group (7)"), "order60 ex60-7"),
        e("C6 x D10", Derived(12), "order60 ex60-8"),
        e("C10 x S3", Derived(12), "order60 ex60-9"),
        e("D60", Paper(14, "Example 3.11(iii)"), "order60 ex60-10 dihedral"),
        e("S3 x D10", Paper(13, "Example 3.11, S3 x D10 table"), "order60 ex60-11"),
        e("Ab(4,15)", Paper(12, "Example 3.11(i)"), "order60 nilpotent abelian"),
        e("Ab(2,2,15)", Derived(12), "order60 nilpotent abelian"),
        // squarefree orders, complete up to isomorphism
        e("C6", Paper(4, "Theorem C"), "sqfree abelian"),
        e("S3", Paper(3, A_D), "sqfree"),
        e("C10", Paper(4, "Theorem C"), "sqfree abelian"),
        e("D10", Paper(3, A_D), "sqfree dihedral"),
        e("C15", Paper(4, "Theorem C"), "sqfree abelian"),
        e("C30", Paper(8, "Theorem C"), "sqfree abelian"),
        e("D30", Paper(7, A_D), "sqfree dihedral"),
        e("C3 x D10", Derived(6), "sqfree"),
        e("C5 x S3", Derived(6), "sqfree"),
        // non-abelian 2-groups
        e("D8", Paper(2, A_P3), "ppower dihedral"),
        e("Q8", Paper(2, A_P3), "ppower"),
        e("D16", NO, "ppower dihedral"),
        e("Q16", NO, "ppower"),
        named("SD16", "(C8 : C2 @ 3)", NO, "ppower semidihedral"),
        named("M16", "(C8 : C2 @ 5)", NO, "ppower modular"),
        e("(C4 : C4 @ 3)", NO, "ppower metacyclic"),
        e("D8 x C2", NO, "ppower"),
        e("Q8 x C2", NO, "ppower"),
        e("D32", Paper(6, "Theorem A(3)"), "ppower dihedral"),
        e("Q32", NO, "ppower"),
        named("SD32", "(C16 : C2 @ 7)", NO, "ppower semidihedral"),
        named("M32", "(C16 : C2 @ 9)", NO, "ppower modular"),
        e("D8 x C4", NO, "ppower"),
        e("Q8 x C4", NO, "ppower"),
        e("D16 x C2", NO, "ppower"),
        e("D64", Paper(8, "Theorem A(2)"), "ppower dihedral"),
        e("Q64", NO, "ppower"),
        named("SD64", "(C32 : C2 @ 15)", NO, "ppower semidihedral"),
        named("M64", "(C32 : C2 @ 17)", NO, "ppower modular"),
        e("D128", Paper(10, "Theorem A(2)"), "ppower dihedral"),
        e("Q128", NO, "ppower"),
        named("SD128", "(C64 : C2 @ 31)", NO, "ppower semidihedral"),
        named("M128", "(C64 : C2 @ 33)", NO, "ppower modular"),
        // non-abelian odd p-groups
        named("Heis27", "Jp(3,2)", Paper(2, A_P3), "ppower heisenberg"),
        named("M27", "(C9 : C3 @ 4)", Paper(2, A_P3), "ppower modular"),
        e("Jp(3,3)", NO, "ppower jordan"),
        e("(C27 : C3 @ 10)", NO, "ppower modular"),
        e("(C9 : C9 @ 4)", NO, "ppower metacyclic"),
        e("Heis27 x C3", NO, "ppower"),
        e("Heis27 x C9", NO, "ppower"),
        named("Heis125", "Jp(5,2)", Paper(2, A_P3), "ppower heisenberg"),
        named("M125", "(C25 : C5 @ 6)", Paper(2, A_P3), "ppower modular"),
        e("Jp(5,4)", NO, "ppower jordan"),
        // nilpotent, composite order
        e("D8 x C3", Derived(4), "nilpotent"),
        e("Q8 x C3", NO, "nilpotent"),
        e("Ab(8,9)", NO, "nilpotent abelian"),
        e("Ab(2,4,9)", NO, "nilpotent abelian"),
        e("Ab(2,2,2,3,3)", NO, "nilpotent abelian"),
        e("D8 x C9", NO, "nilpotent"),
        e("Q8 x Ab(3,3)", NO, "nilpotent"),
        e("D16 x C3", NO, "nilpotent"),
        e("Q16 x C5", NO, "nilpotent"),
        e("D32 x C3", NO, "nilpotent"),
        e("C32 x C3", NO, "nilpotent abelian"),
        e("Ab(2,2,2,2,2) x C3", NO, "nilpotent abelian"),
        e("D64 x C3", NO, "nilpotent"),
        e("Heis27 x C4", NO, "nilpotent"),
        e("D8 x Heis27", NO, "nilpotent"),
        e("Heis125 x C2", NO, "nilpotent"),
        e("SD16 x C9", NO, "nilpotent"),
        // assorted non-nilpotent groups
        e("A4", Paper(4, "Example 3.11(ii)"), "misc"),
        e("S4", NO, "misc"),
        e("(C3 : C4 @ 2)", NO, "metacyclic"),
        e("(C5 : C4 @ 2)", NO, "metacyclic"),
        e("(C5 : C4 @ 4)", NO, "metacyclic"),
        e("(C7 : C3 @ 2)", NO, "metacyclic"),
        e("(C7 : C6 @ 3)", NO, "metacyclic"),
        e("(C21 : C4 @ 20)", NO, "metacyclic"),
        e("(C35 : C3 @ 11)", NO, "metacyclic"),
        e("D12", NO, "dihedral"),
        e("D24", Paper(8, A_D), "dihedral"),
        e("D36", NO, "dihedral"),
        e("Q12 x C5", NO, "misc"),
        e("S3 x S3", NO, "misc"),
        e("A4 x C2", NO, "misc"),
        e("S3 x C4", NO, "misc"),
    ];
    v.extend(abelian_prime_power_entries());
    v
}

/// Every abelian type of order `p^k` for `p = 2, k ≤ 7` and `p = 3, k ≤ 5`.
fn abelian_prime_power_entries() -> Vec<Raw> {
    fn partitions(k: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(acc.clone());
            return;
        }
        for part in (1..=k.min(max)).rev() {
            acc.push(part);
            partitions(k - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for (p, kmax) in [(2usize, 7usize), (3, 5)] {
        for k in 1..=kmax {
            let mut parts = Vec::new();
            partitions(k, k, &mut Vec::new(), &mut parts);
            for part in parts {
                let mut dims: Vec<usize> = part.iter().map(|&e| p.pow(e as u32)).collect();
                dims.sort_unstable();
                let spec = if dims.len() == 1 {
                    format!("C{}", dims[0])
                } else {
                    let s: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                    format!("Ab({})", s.join(","))
                };
                out.push(e(&spec, Paper((k + 1) as u64, "Lemma 3.7"), "ppower abelian"));
            }
        }
    }
    out
}

fn build_catalog() -> Vec<CatalogEntry> {
    raw_entries()
        .into_iter()
        .map(|r| {
            let spec = parse_spec(&r.spec).unwrap_or_else(|e| panic!("catalog spec {}: {e}", r.spec));
            let expected = match r.exp {
                Exp::None => None,
                Exp::Paper(im_count, citation) => Some(Expected {
                    im_count,
                    provenance: Provenance::Paper {
                        citation: citation.to_string(),
                    },
                }),
                Exp::Derived(im_count) => Some(Expected {
                    im_count,
                    provenance: Provenance::Derived,
                }),
            };
            CatalogEntry {
                name: r.name.map(str::to_string).unwrap_or_else(|| spec.render()),
                spec,
                expected,
                tags: r.tags.split_whitespace().map(str::to_string).collect(),
            }
        })
        .collect()
}

/// All catalog entries, in a fixed order.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

/// The entry with this name.
pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    catalog().iter().find(|e| e.name == name)
}

pub fn with_tag(tag: &str) -> impl Iterator<Item = &'static CatalogEntry> + '_ {
    catalog().iter().filter(move |e| e.has_tag(tag))
}
