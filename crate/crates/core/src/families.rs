//! Constructors for the group families used throughout the crate.
//!
//! Every constructor returns a validated Cayley table with the identity at
//! id 0. The encodings of the generated elements are documented per
//! constructor because downstream code (and tests) address elements by id.

use std::collections::HashMap;

use crate::arith::{gcd, mod_inverse, pow_mod};
use crate::error::{Error, Result};
use crate::group::{Elem, Group};

/// Default refusal threshold for group orders.
pub const DEFAULT_MAX_ORDER: usize = 5000;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn guard(order: usize, limit: usize) -> Result<()> {
    if order > limit {
        Err(Error::SizeLimit { order, limit })
    } else {
        Ok(())
    }
}

/// `C_n`, with `i·j = (i + j) mod n`.
pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(invalid("cyclic group order must be at least 1"));
    }
    let mul = (0..n * n).map(|k| ((k / n + k % n) % n) as Elem).collect();
    Ok(Group::from_table(n, mul)?.with_label(format!("C{n}")))
}

/// `C_{d1} × … × C_{dk}` in mixed radix (last factor varies fastest).
/// An empty type list gives the trivial group.
pub fn abelian(dims: &[usize]) -> Result<Group> {
    if let Some(d) = dims.iter().find(|&&d| d < 2) {
        return Err(invalid(format!("abelian invariant {d} must be at least 2")));
    }
    let n: usize = dims.iter().product();
    let digits = |mut x: usize| {
        let mut out = vec![0; dims.len()];
        for (slot, &d) in out.iter_mut().zip(dims).rev() {
            *slot = x % d;
            x /= d;
        }
        out
    };
    let decoded: Vec<Vec<usize>> = (0..n).map(digits).collect();
    let mut mul = Vec::with_capacity(n * n);
    for x in &decoded {
        for y in &decoded {
            let mut id = 0;
            for ((a, b), &d) in x.iter().zip(y).zip(dims) {
                id = id * d + (a + b) % d;
            }
            mul.push(id as Elem);
        }
    }
    let label = if dims.is_empty() {
        "1".to_string()
    } else {
        format!(
            "Ab({})",
            dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        )
    };
    Ok(Group::from_table(n, mul)?.with_label(label))
}

/// `D_{2n}` of order `two_n`. Ids `0..n` are the rotations `aⁱ`, ids
/// `n..2n` are the reflections `aⁱb`; `bab = a⁻¹`.
pub fn dihedral(two_n: usize) -> Result<Group> {
    if two_n < 4 || !two_n.is_multiple_of(2) {
        return Err(invalid(format!(
            "dihedral order must be even and at least 4, got {two_n}"
        )));
    }
    let n = two_n / 2;
    let decode = |x: usize| (x % n, x >= n);
    let encode = |i: usize, refl: bool| (i + if refl { n } else { 0 }) as Elem;
    let mut mul = Vec::with_capacity(two_n * two_n);
    for x in 0..two_n {
        let (i, s) = decode(x);
        for y in 0..two_n {
            let (j, t) = decode(y);
            // aⁱ bˢ · aʲ bᵗ = a^(i ± j) b^(s+t)
            let k = if s { (i + n - j) % n } else { (i + j) % n };
            mul.push(encode(k, s ^ t));
        }
    }
    Ok(Group::from_table(two_n, mul)?.with_label(format!("D{two_n}")))
}

/// Dicyclic group of order `four_m = 4m`: `⟨a, x | a^{2m}, x² = a^m, x⁻¹ax = a⁻¹⟩`.
/// Ids `0..2m` are `aⁱ`, ids `2m..4m` are `aⁱx`. Generalized quaternion
/// when `four_m` is a power of two.
pub fn dicyclic(four_m: usize) -> Result<Group> {
    if four_m < 8 || !four_m.is_multiple_of(4) {
        return Err(invalid(format!(
            "dicyclic order must be a multiple of 4 and at least 8, got {four_m}"
        )));
    }
    let m = four_m / 4;
    let n = 2 * m;
    let decode = |x: usize| (x % n, x >= n);
    let mut mul = Vec::with_capacity(four_m * four_m);
    for x in 0..four_m {
        let (i, s) = decode(x);
        for y in 0..four_m {
            let (j, t) = decode(y);
            let id = match (s, t) {
                (false, false) => (i + j) % n,
                (false, true) => n + (i + j) % n,
                (true, false) => n + (i + n - j) % n,
                (true, true) => (i + n - j + m) % n,
            };
            mul.push(id as Elem);
        }
    }
    Ok(Group::from_table(four_m, mul)?.with_label(format!("Q{four_m}")))
}

/// `⟨a⟩ ⋊ ⟨b⟩` with `o(a) = m`, `o(b) = n` and `b⁻¹ab = a^r`.
/// The element `aⁱbʲ` has id `i·n + j`, so `r = 1` reproduces the table of
/// `direct_product(C_m, C_n)` exactly.
pub fn semidirect_cyclic(m: usize, n: usize, r: u64) -> Result<Group> {
    if m == 0 || n == 0 {
        return Err(invalid("semidirect factor orders must be positive"));
    }
    let mm = m as u64;
    if m > 1 && (r == 0 || r >= mm) {
        return Err(Error::InvalidAction(format!("exponent r = {r} must satisfy 1 <= r < {m}")));
    }
    if gcd(r % mm.max(1), mm) != 1 && m > 1 {
        return Err(Error::InvalidAction(format!("gcd({r}, {m}) != 1")));
    }
    if pow_mod(r, n as u64, mm) != 1 % mm {
        return Err(Error::InvalidAction(format!("{r}^{n} is not 1 mod {m}")));
    }
    // b a b⁻¹ = a^s with s = r⁻¹, so bʲ aᵏ = a^(k sʲ) bʲ
    let s = mod_inverse(r, mm).unwrap_or(0);
    let spow: Vec<u64> = (0..n).map(|j| pow_mod(s, j as u64, mm)).collect();
    let order = m * n;
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, j) = (x / n, x % n);
        for y in 0..order {
            let (k, l) = (y / n, y % n);
            let a = (i as u64 + k as u64 * spow[j]) % mm.max(1);
            mul.push((a as usize * n + (j + l) % n) as Elem);
        }
    }
    Ok(Group::from_table(order, mul)?.with_label(format!("(C{m} : C{n} @ {r})")))
}

/// `g × h`; the pair `(x, y)` has id `x·|h| + y`.
pub fn direct_product(g: &Group, h: &Group, max_order: usize) -> Result<Group> {
    let (a, b) = (g.order(), h.order());
    let order = a.saturating_mul(b);
    guard(order, max_order)?;
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (x1, x2) = ((x / b) as Elem, (x % b) as Elem);
        for y in 0..order {
            let (y1, y2) = ((y / b) as Elem, (y % b) as Elem);
            mul.push(g.mul(x1, y1) * b as Elem + h.mul(x2, y2));
        }
    }
    let label = format!(
        "{} x {}",
        g.label().unwrap_or("?"),
        h.label().unwrap_or("?")
    );
    Ok(Group::from_table(order, mul)?.with_label(label))
}

/// A permutation of `{0, …, degree-1}` in image form.
pub type Perm = Vec<usize>;

/// Builds a permutation from disjoint-or-not cycles, composed left to right.
pub fn perm_from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
    let mut p: Perm = (0..degree).collect();
    for cycle in cycles {
        if let Some(&bad) = cycle.iter().find(|&&v| v >= degree) {
            return Err(invalid(format!("point {bad} outside degree {degree}")));
        }
        let mut seen = vec![false; degree];
        for &v in cycle {
            if std::mem::replace(&mut seen[v], true) {
                return Err(invalid(format!("cycle repeats point {v}")));
            }
        }
        let mut c: Perm = (0..degree).collect();
        for (k, &v) in cycle.iter().enumerate() {
            c[v] = cycle[(k + 1) % cycle.len()];
        }
        p = p.iter().map(|&i| c[i]).collect();
    }
    Ok(p)
}

/// Closes `generators` under composition (`x·y` applies `x` first) and
/// returns the Cayley table; elements are numbered in breadth-first order
/// from the identity.
pub fn from_permutations(degree: usize, generators: &[Perm], max_order: usize) -> Result<Group> {
    if degree == 0 {
        return Err(invalid("permutation degree must be positive"));
    }
    for g in generators {
        let mut seen = vec![false; degree];
        if g.len() != degree || g.iter().any(|&v| v >= degree || std::mem::replace(&mut seen[v], true)) {
            return Err(invalid(format!("generator {g:?} is not a bijection on 0..{degree}")));
        }
    }
    let identity: Perm = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Perm, usize> = HashMap::from([(identity, 0)]);
    // parent[x] = (y, k) with elements[x] = elements[y] · gens[k]
    let mut parent = vec![(0usize, usize::MAX)];
    let mut head = 0;
    while head < elements.len() {
        for (k, g) in generators.iter().enumerate() {
            let next: Perm = elements[head].iter().map(|&i| g[i]).collect();
            if !index.contains_key(&next) {
                if elements.len() >= max_order {
                    return Err(Error::SizeLimit { order: elements.len() + 1, limit: max_order });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
                parent.push((head, k));
            }
        }
        head += 1;
    }
    let n = elements.len();
    // right multiplication by each generator, as id maps
    let right: Vec<Vec<usize>> = generators
        .iter()
        .map(|g| {
            elements
                .iter()
                .map(|e| index[&e.iter().map(|&i| g[i]).collect::<Perm>()])
                .collect()
        })
        .collect();
    let mut mul = vec![0 as Elem; n * n];
    for x in 0..n {
        mul[x * n] = x as Elem;
        for y in 1..n {
            let (py, k) = parent[y];
            mul[x * n + y] = right[k][mul[x * n + py] as usize] as Elem;
        }
    }
    Group::from_table(n, mul)
}

pub fn alternating(degree: usize, max_order: usize) -> Result<Group> {
    if degree == 0 {
        return Err(invalid("degree must be positive"));
    }
    let mut gens = Vec::new();
    if degree >= 3 {
        gens.push(perm_from_cycles(degree, &[vec![0, 1, 2]])?);
        let long: Vec<usize> = if degree % 2 == 1 {
            (0..degree).collect()
        } else {
            (1..degree).collect()
        };
        gens.push(perm_from_cycles(degree, &[long])?);
    }
    Ok(from_permutations(degree, &gens, max_order)?.with_label(format!("A{degree}")))
}

pub fn symmetric(degree: usize, max_order: usize) -> Result<Group> {
    if degree == 0 {
        return Err(invalid("degree must be positive"));
    }
    let mut gens = Vec::new();
    if degree >= 2 {
        gens.push(perm_from_cycles(degree, &[vec![0, 1]])?);
        gens.push(perm_from_cycles(degree, &[(0..degree).collect()])?);
    }
    Ok(from_permutations(degree, &gens, max_order)?.with_label(format!("S{degree}")))
}

/// `C_p^m ⋊ C_p`, the generator acting as the unipotent single Jordan block.
/// `(v, j)` has id `index(v)·p + j` with `index(v) = Σ v_t p^t`;
/// multiplication is `(v, j)(w, l) = (v + Jʲw, j + l)`.
pub fn jordan_p_group(p: usize, m: usize) -> Result<Group> {
    if !crate::arith::is_prime(p as u64) {
        return Err(invalid(format!("{p} is not prime")));
    }
    if m < 2 || m > p {
        return Err(invalid(format!(
            "Jordan block size m = {m} must satisfy 2 <= m <= p = {p}"
        )));
    }
    let vecs = p.pow(m as u32);
    let order = vecs * p;
    let decode = |mut x: usize| {
        let mut v = vec![0; m];
        for slot in v.iter_mut() {
            *slot = x % p;
            x /= p;
        }
        v
    };
    let encode = |v: &[usize]| v.iter().rev().fold(0, |acc, &c| acc * p + c);
    // J acts as v ↦ v + shift(v): (Jv)_t = v_t + v_{t+1}
    let apply = |v: &[usize]| -> Vec<usize> {
        (0..m)
            .map(|t| (v[t] + if t + 1 < m { v[t + 1] } else { 0 }) % p)
            .collect()
    };
    // action[j][w] = index(Jʲ w)
    let mut action = vec![vec![0usize; vecs]; p];
    for w in 0..vecs {
        let mut v = decode(w);
        for row in action.iter_mut() {
            row[w] = encode(&v);
            v = apply(&v);
        }
    }
    let mut mul = Vec::with_capacity(order * order);
    let vs: Vec<Vec<usize>> = (0..vecs).map(decode).collect();
    for x in 0..order {
        let (vi, j) = (x / p, x % p);
        for y in 0..order {
            let (wi, l) = (y / p, y % p);
            let w = &vs[action[j][wi]];
            let sum: Vec<usize> = vs[vi].iter().zip(w).map(|(a, b)| (a + b) % p).collect();
            mul.push((encode(&sum) * p + (j + l) % p) as Elem);
        }
    }
    Ok(Group::from_table(order, mul)?.with_label(format!("Jp({p},{m})")))
}
