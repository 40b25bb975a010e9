//! Finite groups stored as explicit Cayley tables.

use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::bitset::Bitset;
use crate::error::{Error, Result};

/// Element id. Ids are dense in `0..order` and the identity is always 0.
pub type Elem = u32;

/// Orders up to this size get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 256;
const SAMPLED_TRIPLES: usize = 1000;

/// SHA-256 of the canonical Cayley-table serialization.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupHash(pub [u8; 32]);

impl GroupHash {
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Option<GroupHash> {
        let bytes = hex::decode(s).ok()?;
        Some(GroupHash(bytes.try_into().ok()?))
    }
}

impl fmt::Debug for GroupHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHash({})", &self.to_hex()[..16])
    }
}

impl fmt::Display for GroupHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// An immutable finite group.
pub struct Group {
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    elt_order: Vec<u32>,
    label: Option<String>,
    hash: OnceLock<GroupHash>,
    centralizers: OnceLock<Vec<Bitset>>,
}

impl Clone for Group {
    fn clone(&self) -> Self {
        Group {
            order: self.order,
            mul: self.mul.clone(),
            inv: self.inv.clone(),
            elt_order: self.elt_order.clone(),
            label: self.label.clone(),
            hash: self.hash.clone(),
            centralizers: OnceLock::new(),
        }
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order)
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl PartialEq for Group {
    /// Two groups are equal when their Cayley tables are; labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for Group {}

impl Group {
    /// Builds a group from a row-major `order × order` table, validating the
    /// group axioms. Associativity is checked exhaustively for small orders
    /// and on a fixed sample of triples above that.
    pub fn from_table(order: usize, mul: Vec<Elem>) -> Result<Group> {
        let g = Group::from_table_unchecked(order, mul)?;
        g.check_associativity()?;
        Ok(g)
    }

    /// Validates identity, inverses and the Latin-square property, but
    /// trusts associativity. Used by constructors whose tables are
    /// associative by construction; `check_invariants` re-checks everything.
    pub(crate) fn from_table_unchecked(order: usize, mul: Vec<Elem>) -> Result<Group> {
        if order == 0 {
            return Err(Error::InvalidParameter("group order must be positive".into()));
        }
        if mul.len() != order * order {
            return Err(Error::InvalidParameter(format!(
                "table has {} entries, expected {}",
                mul.len(),
                order * order
            )));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidParameter("table entry out of range".into()));
        }
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(Error::InvalidParameter(format!(
                    "element 0 is not a two-sided identity (fails at {x})"
                )));
            }
        }
        for r in 0..order {
            let mut seen = Bitset::new(order);
            for c in 0..order {
                if !seen.insert(mul[r * order + c] as usize) {
                    return Err(Error::InvalidParameter(format!("row {r} is not a permutation")));
                }
            }
        }
        for c in 0..order {
            let mut seen = Bitset::new(order);
            for r in 0..order {
                if !seen.insert(mul[r * order + c] as usize) {
                    return Err(Error::InvalidParameter(format!("column {c} is not a permutation")));
                }
            }
        }
        let mut inv = vec![0; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            let y = row.iter().position(|&v| v == 0).expect("latin row contains identity");
            inv[x] = y as Elem;
        }
        for x in 0..order {
            if mul[inv[x] as usize * order + x] != 0 {
                return Err(Error::InvalidParameter(format!("element {x} has no two-sided inverse")));
            }
        }
        let mut elt_order = vec![0u32; order];
        for x in 0..order {
            let mut k = 1u32;
            let mut p = x as Elem;
            while p != 0 {
                p = mul[p as usize * order + x];
                k += 1;
            }
            elt_order[x] = k;
        }
        Ok(Group {
            order,
            mul,
            inv,
            elt_order,
            label: None,
            hash: OnceLock::new(),
            centralizers: OnceLock::new(),
        })
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let bad = |x: usize, y: usize, z: usize| {
            Error::InvalidParameter(format!("associativity fails at ({x}, {y}, {z})"))
        };
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul[x * n + y] as usize;
                    let row_xy = &self.mul[xy * n..(xy + 1) * n];
                    let row_x = &self.mul[x * n..(x + 1) * n];
                    let row_y = &self.mul[y * n..(y + 1) * n];
                    for (z, (&lhs, &yz)) in row_xy.iter().zip(row_y).enumerate() {
                        if lhs != row_x[yz as usize] {
                            return Err(bad(x, y, z));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cd1a7);
            for _ in 0..SAMPLED_TRIPLES {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                let lhs = self.mul(self.mul(x as Elem, y as Elem), z as Elem);
                let rhs = self.mul(x as Elem, self.mul(y as Elem, z as Elem));
                if lhs != rhs {
                    return Err(bad(x, y, z));
                }
            }
        }
        Ok(())
    }

    /// Re-validates every stored table against the group axioms.
    pub fn check_invariants(&self) -> Result<()> {
        let again = Group::from_table_unchecked(self.order, self.mul.clone())?;
        if again.inv != self.inv || again.elt_order != self.elt_order {
            return Err(Error::InvalidState("cached inverse/order tables disagree".into()));
        }
        self.check_associativity()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x as usize * self.order + y as usize]
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inv[x as usize]
    }

    #[inline]
    pub fn elt_order(&self, x: Elem) -> u32 {
        self.elt_order[x as usize]
    }

    pub fn row(&self, x: Elem) -> &[Elem] {
        let n = self.order;
        &self.mul[x as usize * n..(x as usize + 1) * n]
    }

    pub fn table(&self) -> &[Elem] {
        &self.mul
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    pub fn pow(&self, x: Elem, k: i64) -> Elem {
        let o = self.elt_order(x) as i64;
        let e = k.rem_euclid(o);
        let mut r = 0;
        for _ in 0..e {
            r = self.mul(r, x);
        }
        r
    }

    /// `x⁻¹ y⁻¹ x y`.
    #[inline]
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conjugate(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (x + 1..n).all(|y| self.mul[x * n + y] == self.mul[y * n + x]))
    }

    /// Centralizer of a single element, cached for all elements on first use.
    pub fn element_centralizer(&self, x: Elem) -> &Bitset {
        &self.centralizers.get_or_init(|| {
            let n = self.order;
            let mut cs = vec![Bitset::new(n); n];
            for x in 0..n {
                cs[x].insert(x);
                for y in x + 1..n {
                    if self.mul[x * n + y] == self.mul[y * n + x] {
                        cs[x].insert(y);
                        cs[y].insert(x);
                    }
                }
            }
            cs
        })[x as usize]
    }

    /// 8-byte little-endian order followed by the table, row-major, each
    /// entry as a 4-byte little-endian integer.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 4 * self.mul.len());
        out.extend_from_slice(&(self.order as u64).to_le_bytes());
        for &e in &self.mul {
            out.extend_from_slice(&e.to_le_bytes());
        }
        out
    }

    pub fn hash(&self) -> GroupHash {
        *self.hash.get_or_init(|| {
            let mut h = Sha256::new();
            h.update((self.order as u64).to_le_bytes());
            let mut buf = Vec::with_capacity(4 * self.order);
            for row in self.mul.chunks(self.order) {
                buf.clear();
                for &e in row {
                    buf.extend_from_slice(&e.to_le_bytes());
                }
                h.update(&buf);
            }
            GroupHash(h.finalize().into())
        })
    }

    /// The subgroup on `members` as a standalone group. Members are
    /// relabelled in increasing id order, so the identity stays at 0.
    /// Returns the group and the map from new ids to old ids.
    pub fn induced(&self, members: &Bitset) -> Result<(Group, Vec<Elem>)> {
        let old: Vec<Elem> = members.iter().map(|x| x as Elem).collect();
        if old.first() != Some(&0) {
            return Err(Error::InvalidParameter("member set omits the identity".into()));
        }
        let mut new_id = vec![Elem::MAX; self.order];
        for (i, &x) in old.iter().enumerate() {
            new_id[x as usize] = i as Elem;
        }
        let m = old.len();
        let mut mul = Vec::with_capacity(m * m);
        for &x in &old {
            for &y in &old {
                let p = new_id[self.mul(x, y) as usize];
                if p == Elem::MAX {
                    return Err(Error::InvalidParameter("member set is not closed".into()));
                }
                mul.push(p);
            }
        }
        Ok((Group::from_table_unchecked(m, mul)?, old))
    }
}
