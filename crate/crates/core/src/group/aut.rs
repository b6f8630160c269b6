//! Automorphisms of finite abelian groups and subgroups of the
//! automorphism group.
//!
//! Automorphisms carry full permutation tables, trading memory for O(1)
//! application inside search loops. The full automorphism group is computed
//! by brute force over generator images, split across coprime-order parts of
//! the factor list (automorphisms preserve the primary parts, so the group
//! is the direct product of the parts' automorphism groups).

use super::{AbelianGroup, Elem};
use crate::{Result, SchurError};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

/// Cap on the number of candidate generator-image tuples tried per coprime
/// part when computing the full automorphism group.
const TUPLE_BOUND: u64 = 5_000_000;

/// Bound on `|A|` for full subgroup enumeration of an automorphism group.
pub const AUT_SUBGROUP_ENUM_BOUND: usize = 512;

/// A group automorphism stored as generator images plus the full
/// permutation table.
#[derive(Clone)]
pub struct Automorphism {
    group: Arc<AbelianGroup>,
    gen_images: Vec<Elem>,
    table: Arc<Vec<Elem>>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}
impl Eq for Automorphism {}

impl PartialOrd for Automorphism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Automorphism {
    fn cmp(&self, other: &Self) -> Ordering {
        self.table.cmp(&other.table)
    }
}

impl std::hash::Hash for Automorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.table.hash(state);
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Aut{:?}", self.gen_images)
    }
}

impl Automorphism {
    /// Build from images of the canonical factor generators. Returns `None`
    /// unless the induced map is a bijective homomorphism.
    pub fn from_gen_images(group: &Arc<AbelianGroup>, images: &[Elem]) -> Option<Self> {
        let k = group.num_factors();
        assert_eq!(images.len(), k);
        for (i, &img) in images.iter().enumerate() {
            if group.orders()[i] % group.order_of(img) != 0 {
                return None; // not a well-defined homomorphism
            }
        }
        let n = group.order() as usize;
        let mut table = vec![0 as Elem; n];
        for e in group.elements() {
            let coords = group.coords(e);
            let mut acc = 0 as Elem;
            for i in 0..k {
                acc = group.add(acc, group.mul_int(coords[i], images[i]));
            }
            table[e as usize] = acc;
        }
        let mut seen = vec![false; n];
        for &v in &table {
            if seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(Automorphism {
            group: Arc::clone(group),
            gen_images: images.to_vec(),
            table: Arc::new(table),
        })
    }

    /// Build from a full permutation table, validating the homomorphism
    /// property.
    pub fn from_table(group: &Arc<AbelianGroup>, table: Vec<Elem>) -> Option<Self> {
        let n = group.order() as usize;
        if table.len() != n {
            return None;
        }
        let mut seen = vec![false; n];
        for &v in &table {
            if v as usize >= n || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        for a in group.elements() {
            for b in group.elements() {
                if table[group.add(a, b) as usize]
                    != group.add(table[a as usize], table[b as usize])
                {
                    return None;
                }
            }
        }
        let gen_images = (0..group.num_factors())
            .map(|i| table[group.unit(i) as usize])
            .collect();
        Some(Automorphism {
            group: Arc::clone(group),
            gen_images,
            table: Arc::new(table),
        })
    }

    pub fn identity(group: &Arc<AbelianGroup>) -> Self {
        let table: Vec<Elem> = group.elements().collect();
        Automorphism {
            group: Arc::clone(group),
            gen_images: (0..group.num_factors()).map(|i| group.unit(i)).collect(),
            table: Arc::new(table),
        }
    }

    /// The involution `x -> -x`.
    pub fn inversion(group: &Arc<AbelianGroup>) -> Self {
        let table: Vec<Elem> = group.elements().map(|e| group.neg(e)).collect();
        let gen_images = (0..group.num_factors())
            .map(|i| group.neg(group.unit(i)))
            .collect();
        Automorphism {
            group: Arc::clone(group),
            gen_images,
            table: Arc::new(table),
        }
    }

    /// The power map `x -> m*x`; an automorphism iff `gcd(m, |G|) = 1`.
    pub fn power_map(group: &Arc<AbelianGroup>, m: u32) -> Option<Self> {
        let table: Vec<Elem> = group.elements().map(|e| group.mul_int(m, e)).collect();
        Self::from_table(group, table)
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn gen_images(&self) -> &[Elem] {
        &self.gen_images
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.table[e as usize]
    }

    pub fn apply_set(&self, set: &[Elem]) -> Vec<Elem> {
        let mut out: Vec<Elem> = set.iter().map(|&e| self.apply(e)).collect();
        out.sort_unstable();
        out
    }

    /// `self` after `other`: `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let table: Vec<Elem> = other.table.iter().map(|&v| self.table[v as usize]).collect();
        let gen_images = (0..self.group.num_factors())
            .map(|i| table[self.group.unit(i) as usize])
            .collect();
        Automorphism {
            group: Arc::clone(&self.group),
            gen_images,
            table: Arc::new(table),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let n = self.table.len();
        let mut table = vec![0 as Elem; n];
        for (i, &v) in self.table.iter().enumerate() {
            table[v as usize] = i as Elem;
        }
        let gen_images = (0..self.group.num_factors())
            .map(|i| table[self.group.unit(i) as usize])
            .collect();
        Automorphism {
            group: Arc::clone(&self.group),
            gen_images,
            table: Arc::new(table),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &v)| i as Elem == v)
    }

    pub fn commutes_with(&self, other: &Automorphism) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Setwise stabilization: does this automorphism fix the set?
    pub fn stabilizes(&self, set: &[Elem]) -> bool {
        set.iter().all(|&e| set.binary_search(&self.apply(e)).is_ok())
    }
}

/// A subgroup of `Aut(G)` with generators and the full closed element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutSubgroup {
    group: Arc<AbelianGroup>,
    generators: Vec<Automorphism>,
    elements: Vec<Automorphism>,
}

impl AutSubgroup {
    pub fn from_generators(group: &Arc<AbelianGroup>, generators: Vec<Automorphism>) -> Self {
        let mut seen: BTreeSet<Automorphism> = BTreeSet::new();
        seen.insert(Automorphism::identity(group));
        let mut frontier: Vec<Automorphism> = seen.iter().cloned().collect();
        while let Some(a) = frontier.pop() {
            for g in &generators {
                let b = g.compose(&a);
                if seen.insert(b.clone()) {
                    frontier.push(b);
                }
            }
        }
        AutSubgroup {
            group: Arc::clone(group),
            generators,
            elements: seen.into_iter().collect(),
        }
    }

    pub fn from_elements_unchecked(group: &Arc<AbelianGroup>, mut elements: Vec<Automorphism>) -> Self {
        elements.sort();
        elements.dedup();
        let generators = elements.clone();
        AutSubgroup {
            group: Arc::clone(group),
            generators,
            elements,
        }
    }

    pub fn trivial(group: &Arc<AbelianGroup>) -> Self {
        Self::from_generators(group, Vec::new())
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: &Automorphism) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &AutSubgroup) -> bool {
        self.elements.iter().all(|a| other.contains(a))
    }

    pub fn is_normal_in(&self, other: &AutSubgroup) -> bool {
        other.elements.iter().all(|g| {
            let gi = g.inverse();
            self.elements
                .iter()
                .all(|n| self.contains(&g.compose(n).compose(&gi)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements.iter().any(|a| element_order(a) == n)
    }

    /// A small generating subset found greedily; used to test centrality
    /// without quadratic scans.
    pub fn small_generating_set(&self) -> Vec<Automorphism> {
        let mut gens: Vec<Automorphism> = Vec::new();
        let mut span: BTreeSet<Automorphism> = BTreeSet::new();
        span.insert(Automorphism::identity(&self.group));
        for a in &self.elements {
            if span.contains(a) {
                continue;
            }
            gens.push(a.clone());
            let closure = AutSubgroup::from_generators(&self.group, gens.clone());
            span = closure.elements.iter().cloned().collect();
            if span.len() == self.order() {
                break;
            }
        }
        gens
    }
}

pub fn element_order(a: &Automorphism) -> usize {
    let mut x = a.clone();
    let mut k = 1;
    while !x.is_identity() {
        x = x.compose(a);
        k += 1;
    }
    k
}

fn primes_of(mut n: u32) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.insert(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.insert(n);
    }
    out
}

/// The full automorphism group of `G`.
///
/// Factor indices are grouped into maximal coprime-order parts; the
/// automorphism group is the direct product of the parts' groups, each found
/// by brute force over generator-image tuples.
pub fn automorphism_group(group: &Arc<AbelianGroup>) -> Result<AutSubgroup> {
    let k = group.num_factors();
    if k == 0 {
        return Ok(AutSubgroup::trivial(group));
    }
    // union-find over factor indices sharing a prime
    let mut part_of: Vec<usize> = (0..k).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    let mut prime_owner: HashMap<u32, usize> = HashMap::new();
    for i in 0..k {
        for p in primes_of(group.orders()[i]) {
            match prime_owner.get(&p) {
                Some(&j) => {
                    let (a, b) = (find(&mut part_of, i), find(&mut part_of, j));
                    part_of[a] = b;
                }
                None => {
                    prime_owner.insert(p, i);
                }
            }
        }
    }
    let mut parts: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..k {
        let r = find(&mut part_of, i);
        parts.entry(r).or_default().push(i);
    }
    let mut part_lists: Vec<Vec<usize>> = parts.into_values().collect();
    part_lists.sort();

    // per part: all automorphism tables restricted to the part's coordinates
    let mut per_part: Vec<Vec<Vec<Elem>>> = Vec::new(); // tables over full G, identity off-part
    for part in &part_lists {
        let part_elems: Vec<Elem> = group
            .elements()
            .filter(|&e| {
                group
                    .coords(e)
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| part.contains(&i) || c == 0)
            })
            .collect();
        let mut cand_per_gen: Vec<Vec<Elem>> = Vec::new();
        for &i in part {
            let ni = group.orders()[i];
            let cands: Vec<Elem> = part_elems
                .iter()
                .copied()
                .filter(|&e| ni % group.order_of(e) == 0)
                .collect();
            cand_per_gen.push(cands);
        }
        let tuple_count: u64 = cand_per_gen.iter().map(|c| c.len() as u64).product();
        if tuple_count > TUPLE_BOUND {
            return Err(SchurError::TooLarge(format!(
                "automorphism search would try {tuple_count} generator-image tuples"
            )));
        }
        let mut tables: Vec<Vec<Elem>> = Vec::new();
        let mut stack: Vec<Vec<Elem>> = vec![Vec::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == part.len() {
                // build a table acting on part coordinates, identity elsewhere
                let mut images: Vec<Elem> = (0..k).map(|i| group.unit(i)).collect();
                for (j, &i) in part.iter().enumerate() {
                    images[i] = prefix[j];
                }
                if let Some(a) = Automorphism::from_gen_images(group, &images) {
                    tables.push(a.table.to_vec());
                }
                continue;
            }
            let next = &cand_per_gen[prefix.len()];
            for &c in next.iter().rev() {
                let mut p = prefix.clone();
                p.push(c);
                stack.push(p);
            }
        }
        per_part.push(tables);
    }

    // combine parts by composing one table from each
    let mut combined: Vec<Vec<Elem>> = vec![group.elements().collect()];
    for tables in &per_part {
        let mut next = Vec::with_capacity(combined.len() * tables.len());
        for base in &combined {
            for t in tables {
                let composed: Vec<Elem> = base.iter().map(|&v| t[v as usize]).collect();
                next.push(composed);
            }
        }
        combined = next;
    }
    let mut elements: Vec<Automorphism> = combined
        .into_iter()
        .map(|table| {
            let gen_images = (0..k).map(|i| table[group.unit(i) as usize]).collect();
            Automorphism {
                group: Arc::clone(group),
                gen_images,
                table: Arc::new(table),
            }
        })
        .collect();
    elements.sort();
    elements.dedup();
    let full = AutSubgroup {
        group: Arc::clone(group),
        generators: Vec::new(),
        elements,
    };
    let generators = full.small_generating_set();
    Ok(AutSubgroup { generators, ..full })
}

/// The center of `Aut(G)`; always contains the inversion automorphism.
pub fn center_of_aut(group: &Arc<AbelianGroup>) -> Result<AutSubgroup> {
    let full = automorphism_group(group)?;
    center_of(&full)
}

pub fn center_of(a: &AutSubgroup) -> Result<AutSubgroup> {
    let gens = a.small_generating_set();
    let center: Vec<Automorphism> = a
        .elements()
        .iter()
        .filter(|x| gens.iter().all(|g| x.commutes_with(g)))
        .cloned()
        .collect();
    Ok(AutSubgroup {
        group: Arc::clone(a.group()),
        generators: center.clone(),
        elements: center,
    })
}

/// All subgroups of `a`, up to equality, sorted by (order, element indices).
pub fn enumerate_aut_subgroups(a: &AutSubgroup) -> Result<Vec<AutSubgroup>> {
    let n = a.order();
    if n > AUT_SUBGROUP_ENUM_BOUND {
        return Err(SchurError::TooLarge(format!(
            "subgroup enumeration bounded at {AUT_SUBGROUP_ENUM_BOUND} elements, got {n}"
        )));
    }
    // multiplication table in index space
    let index_of: HashMap<&Automorphism, u32> = a
        .elements()
        .iter()
        .enumerate()
        .map(|(i, x)| (x, i as u32))
        .collect();
    let mut mul = vec![0u32; n * n];
    for (i, x) in a.elements().iter().enumerate() {
        for (j, y) in a.elements().iter().enumerate() {
            mul[i * n + j] = index_of[&x.compose(y)];
        }
    }
    let id_idx = index_of[&Automorphism::identity(a.group())];
    let closure = |gens: &[u32]| -> Vec<u32> {
        let mut seen = vec![false; n];
        seen[id_idx as usize] = true;
        let mut out = vec![id_idx];
        let mut frontier = vec![id_idx];
        while let Some(x) = frontier.pop() {
            for &h in gens {
                for y in [mul[x as usize * n + h as usize], mul[h as usize * n + x as usize]] {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        out.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    };
    let mut known: HashSet<Vec<u32>> = HashSet::new();
    let trivial = vec![id_idx];
    known.insert(trivial.clone());
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for x in 0..n as u32 {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let bigger = closure(&gens);
            if known.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    let mut lists: Vec<Vec<u32>> = known.into_iter().collect();
    lists.sort_unstable_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
    Ok(lists
        .into_iter()
        .map(|idxs| {
            let elements: Vec<Automorphism> = idxs
                .iter()
                .map(|&i| a.elements()[i as usize].clone())
                .collect();
            let sub = AutSubgroup {
                group: Arc::clone(a.group()),
                generators: Vec::new(),
                elements,
            };
            let generators = sub.small_generating_set();
            AutSubgroup { generators, ..sub }
        })
        .collect())
}

/// Orbit partition of an invariant domain under an automorphism subgroup.
/// Classes are sorted by their least representative.
pub fn orbits(m: &AutSubgroup, domain: &[Elem]) -> Result<Vec<Vec<Elem>>> {
    let in_domain = |e: Elem| domain.binary_search(&e).is_ok();
    let mut sorted = domain.to_vec();
    sorted.sort_unstable();
    for g in m.generators() {
        for &e in &sorted {
            if !in_domain(g.apply(e)) {
                return Err(SchurError::NonInvariantDomain);
            }
        }
    }
    let mut seen: HashSet<Elem> = HashSet::new();
    let mut classes = Vec::new();
    for &start in &sorted {
        if seen.contains(&start) {
            continue;
        }
        let mut orbit = vec![start];
        seen.insert(start);
        let mut frontier = vec![start];
        while let Some(x) = frontier.pop() {
            for g in m.generators() {
                let y = g.apply(x);
                if seen.insert(y) {
                    orbit.push(y);
                    frontier.push(y);
                }
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    classes.sort_by_key(|c| c[0]);
    Ok(classes)
}

/// Orbits of the full element list (not just generators); used when the
/// subgroup was assembled element-wise without generators.
pub fn orbits_of_elements(elements: &[Automorphism], domain: &[Elem]) -> Vec<Vec<Elem>> {
    let mut sorted = domain.to_vec();
    sorted.sort_unstable();
    let mut seen: HashSet<Elem> = HashSet::new();
    let mut classes = Vec::new();
    for &start in &sorted {
        if seen.contains(&start) {
            continue;
        }
        let mut orbit: BTreeSet<Elem> = elements.iter().map(|g| g.apply(start)).collect();
        orbit.insert(start);
        for &x in &orbit {
            seen.insert(x);
        }
        classes.push(orbit.into_iter().collect());
    }
    classes.sort_by_key(|c: &Vec<Elem>| c[0]);
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn aut_orders() {
        let e9 = make_group(&[3, 3]).unwrap();
        let a = automorphism_group(&e9).unwrap();
        assert_eq!(a.order(), 48);

        let c5 = make_group(&[5]).unwrap();
        let a5 = automorphism_group(&c5).unwrap();
        assert_eq!(a5.order(), 4);
        assert!(a5.is_cyclic());

        let g = make_group(&[3, 3, 5]).unwrap();
        assert_eq!(automorphism_group(&g).unwrap().order(), 192);
    }

    #[test]
    fn aut_elements_are_bijective_homomorphisms() {
        let g = make_group(&[2, 4]).unwrap();
        let a = automorphism_group(&g).unwrap();
        for x in a.elements() {
            assert!(Automorphism::from_table(&g, x.table().to_vec()).is_some());
        }
        // |Aut(C2 x C4)| = 8
        assert_eq!(a.order(), 8);
    }

    #[test]
    fn center_orders() {
        let e9 = make_group(&[3, 3]).unwrap();
        let z = center_of_aut(&e9).unwrap();
        assert_eq!(z.order(), 2);
        assert!(z.contains(&Automorphism::inversion(&e9)));

        let g = make_group(&[3, 3, 5]).unwrap();
        let z = center_of_aut(&g).unwrap();
        assert_eq!(z.order(), 8);

        let c3 = make_group(&[3]).unwrap();
        assert_eq!(center_of_aut(&c3).unwrap().order(), 2);
    }

    #[test]
    fn center_elements_commute_with_everything() {
        let e9 = make_group(&[3, 3]).unwrap();
        let a = automorphism_group(&e9).unwrap();
        let z = center_of(&a).unwrap();
        for c in z.elements() {
            for x in a.elements() {
                assert!(c.commutes_with(x));
            }
        }
    }

    #[test]
    fn aut_subgroup_counts() {
        let c5 = make_group(&[5]).unwrap();
        let a = automorphism_group(&c5).unwrap();
        assert_eq!(enumerate_aut_subgroups(&a).unwrap().len(), 3);

        let trivial = AutSubgroup::trivial(&c5);
        assert_eq!(enumerate_aut_subgroups(&trivial).unwrap().len(), 1);
    }

    #[test]
    fn singer_subgroup_count() {
        let e9 = make_group(&[3, 3]).unwrap();
        let a = automorphism_group(&e9).unwrap();
        let subs = enumerate_aut_subgroups(&a).unwrap();
        let singer = subs
            .iter()
            .filter(|h| h.order() == 8 && h.is_cyclic())
            .count();
        assert_eq!(singer, 3);
    }

    #[test]
    fn orbit_examples() {
        let e9 = make_group(&[3, 3]).unwrap();
        let tau = AutSubgroup::from_generators(&e9, vec![Automorphism::inversion(&e9)]);
        let all: Vec<Elem> = e9.elements().collect();
        let obs = orbits(&tau, &all).unwrap();
        assert_eq!(obs.len(), 5);
        assert_eq!(obs[0], vec![0]);
        assert!(obs[1..].iter().all(|c| c.len() == 2));

        let full = automorphism_group(&e9).unwrap();
        let obs = orbits(&full, &all).unwrap();
        assert_eq!(obs.len(), 2);
        assert_eq!(obs[1].len(), 8);

        let trivial = AutSubgroup::trivial(&e9);
        assert_eq!(orbits(&trivial, &all).unwrap().len(), 9);

        // non-invariant domain
        let bad = orbits(&full, &[1, 2]);
        assert!(bad.is_err());
    }

    #[test]
    fn composition_closure_via_table() {
        let g = make_group(&[3, 3]).unwrap();
        let a = automorphism_group(&g).unwrap();
        for x in a.elements().iter().take(8) {
            for y in a.elements().iter().take(8) {
                assert!(a.contains(&x.compose(y)));
            }
        }
    }
}
