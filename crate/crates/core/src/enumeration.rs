//! Complete enumeration of S-rings up to Cayley isomorphism, a brute-force
//! oracle for tiny groups, and a seeded random sampler.
//!
//! The enumerator builds the partition depth-first, always completing the
//! class of the least unassigned element. Pruning:
//!
//! * inverse closure: completing an asymmetric class forces its inverse as a
//!   later class;
//! * closure consistency: the coarsest S-ring refining the blocks placed so
//!   far (plus the unassigned remainder) must keep every placed block as a
//!   single class, and every future class lies inside one closure cell;
//! * canonicity: a partial class list is abandoned as soon as some group
//!   automorphism maps it to a lexicographically smaller generatable prefix,
//!   and a completed partition is accepted only if it equals the minimum of
//!   its orbit (so each Cayley class is produced exactly once).

use crate::catalog::{Catalog, CatalogRecord};
use crate::group::aut::{automorphism_group, AutSubgroup, Automorphism};
use crate::group::{AbelianGroup, Elem};
use crate::sring::{
    canonical_form_with, closure, verify_sring, wl_stabilize, PartitionSeed, SRing,
};
use crate::{Result, SchurError};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Guaranteed-complete enumeration bound.
pub const ENUMERATION_ORDER_BOUND: u32 = 63;

/// Bell-number bound for the partition-scan oracle.
pub const ORACLE_ORDER_BOUND: u32 = 10;

pub type ProgressSink = Arc<dyn Fn(u64, usize) + Send + Sync>;

/// Parameters of an enumeration run.
#[derive(Clone)]
pub struct EnumerationTask {
    pub group: Arc<AbelianGroup>,
    pub time_budget: Option<Duration>,
    /// Keep only canonical representatives (one per Cayley class). When
    /// false, every S-ring partition is returned.
    pub canonical_only: bool,
    pub progress: Option<ProgressSink>,
}

impl EnumerationTask {
    pub fn new(group: &Arc<AbelianGroup>) -> Self {
        EnumerationTask {
            group: Arc::clone(group),
            time_budget: None,
            canonical_only: true,
            progress: None,
        }
    }
}

/// Comparison state of one automorphism against the placed class sequence.
#[derive(Clone, Copy)]
struct SigmaEntry {
    id: u32,
    /// Positions before this one compare equal.
    pos: u32,
}

enum Advance {
    Keep,
    Drop,
    Prune,
}

struct Search<'a> {
    g: &'a Arc<AbelianGroup>,
    n: u32,
    tables: Vec<&'a [Elem]>,
    inverses: Vec<Vec<Elem>>,
    canonical_only: bool,
    deadline: Option<Instant>,
    progress: Option<ProgressSink>,
    placed_class: Vec<i32>, // class index per element, -1 = unplaced
    classes: Vec<Vec<Elem>>,
    pending: Vec<Vec<Elem>>,
    results: Vec<Vec<Vec<Elem>>>,
    nodes: u64,
    truncated: bool,
}

impl<'a> Search<'a> {
    fn budget_ok(&mut self) -> bool {
        if self.truncated {
            return false;
        }
        if self.nodes % 256 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.truncated = true;
                    return false;
                }
            }
        }
        if self.nodes % 8192 == 0 {
            if let Some(p) = &self.progress {
                p(self.nodes, self.results.len());
            }
        }
        true
    }

    fn least_unplaced(&self) -> Option<Elem> {
        self.placed_class.iter().position(|&c| c < 0).map(|i| i as Elem)
    }

    fn image_of_class(&self, sigma: u32, class: &[Elem]) -> Vec<Elem> {
        let t = self.tables[sigma as usize];
        let mut img: Vec<Elem> = class.iter().map(|&e| t[e as usize]).collect();
        img.sort_unstable();
        img
    }

    /// Advance one comparison entry over the placed classes.
    fn advance(&self, entry: &mut SigmaEntry) -> Advance {
        while (entry.pos as usize) < self.classes.len() {
            let pos = entry.pos as usize;
            let mex = self.classes[pos][0];
            let w = self.inverses[entry.id as usize][mex as usize];
            let cls = self.placed_class[w as usize];
            if cls < 0 {
                return Advance::Keep; // stuck until w's class is placed
            }
            let t_class = self.image_of_class(entry.id, &self.classes[cls as usize]);
            match t_class.cmp(&self.classes[pos]) {
                Ordering::Less => return Advance::Prune,
                Ordering::Greater => return Advance::Drop,
                Ordering::Equal => entry.pos += 1,
            }
        }
        Advance::Keep
    }

    /// Recompute the closure over (placed, pending, remainder) and check
    /// that no placed or pending block splits. Returns the closure cells on
    /// success.
    fn closure_cells(&self) -> Option<Vec<Vec<Elem>>> {
        let mut blocks: Vec<Vec<Elem>> = self.classes.clone();
        blocks.extend(self.pending.iter().cloned());
        let mut rest: Vec<Elem> = (0..self.n)
            .filter(|&e| {
                self.placed_class[e as usize] < 0
                    && !self.pending.iter().any(|p| p.binary_search(&e).is_ok())
            })
            .collect();
        let fixed = blocks.len();
        if !rest.is_empty() {
            rest.sort_unstable();
            blocks.push(rest);
        }
        let cells = wl_stabilize(self.g, blocks.clone());
        let mut cell_of = vec![0u32; self.n as usize];
        for (i, c) in cells.iter().enumerate() {
            for &e in c {
                cell_of[e as usize] = i as u32;
            }
        }
        for block in blocks.iter().take(fixed) {
            if cells[cell_of[block[0] as usize] as usize] != *block {
                return None;
            }
        }
        Some(cells)
    }

    fn record_leaf(&mut self) {
        self.results.push(self.classes.clone());
        if let Some(p) = &self.progress {
            p(self.nodes, self.results.len());
        }
    }

    fn node(&mut self, cells: &[Vec<Elem>], active: &[SigmaEntry]) {
        self.nodes += 1;
        if !self.budget_ok() {
            return;
        }
        let Some(x) = self.least_unplaced() else {
            self.record_leaf();
            return;
        };
        if let Some(fi) = self
            .pending
            .iter()
            .position(|p| p.binary_search(&x).is_ok())
        {
            let forced = self.pending[fi].clone();
            self.complete_class(forced, Some(fi), active);
            return;
        }
        let cell = cells
            .iter()
            .find(|c| c.binary_search(&x).is_ok())
            .expect("unplaced element lies in some cell");
        let domain: Vec<Elem> = cell.iter().copied().filter(|&e| e > x).collect();
        let growth: Vec<u32> = active
            .iter()
            .filter(|e| e.pos as usize == self.classes.len())
            .map(|e| e.id)
            .collect();
        self.grow(x, vec![x], &domain, 0, &growth, active);
    }

    /// Membership status of an element in the class being grown:
    /// `Some(true/false)` when decided, `None` while still open.
    #[inline]
    fn grow_status(
        &self,
        e: Elem,
        x: Elem,
        part: &[Elem],
        domain: &[Elem],
        idx: usize,
    ) -> Option<bool> {
        if e == x || part.binary_search(&e).is_ok() {
            return Some(true);
        }
        if e < x || self.placed_class[e as usize] >= 0 {
            return Some(false);
        }
        match domain[idx..].binary_search(&e) {
            Ok(_) => None,
            Err(_) => Some(false),
        }
    }

    /// Canonicity walk for one automorphism against the partial class.
    fn grow_walk(
        &self,
        sigma: u32,
        x: Elem,
        part: &[Elem],
        domain: &[Elem],
        idx: usize,
    ) -> Advance {
        let inv = &self.inverses[sigma as usize];
        match self.grow_status(inv[x as usize], x, part, domain, idx) {
            Some(true) => {}
            _ => return Advance::Keep,
        }
        for i in (x + 1)..self.n {
            let ours = self.grow_status(i, x, part, domain, idx);
            let theirs = self.grow_status(inv[i as usize], x, part, domain, idx);
            match (ours, theirs) {
                (Some(a), Some(b)) if a == b => continue,
                (Some(false), Some(true)) => return Advance::Prune,
                (Some(true), Some(false)) => return Advance::Drop,
                _ => return Advance::Keep,
            }
        }
        Advance::Keep
    }

    fn grow(
        &mut self,
        x: Elem,
        part: Vec<Elem>,
        domain: &[Elem],
        idx: usize,
        growth: &[u32],
        active: &[SigmaEntry],
    ) {
        if self.truncated {
            return;
        }
        self.complete_class(part.clone(), None, active);
        for j in idx..domain.len() {
            let y = domain[j];
            let mut next = part.clone();
            next.push(y);
            next.sort_unstable();
            if self.canonical_only {
                let mut surviving = Vec::with_capacity(growth.len());
                let mut pruned = false;
                for &sid in growth {
                    match self.grow_walk(sid, x, &next, domain, j + 1) {
                        Advance::Prune => {
                            pruned = true;
                            break;
                        }
                        Advance::Drop => {}
                        Advance::Keep => surviving.push(sid),
                    }
                }
                if pruned {
                    continue;
                }
                self.grow(x, next, domain, j + 1, &surviving, active);
            } else {
                self.grow(x, next, domain, j + 1, growth, active);
            }
        }
    }

    fn complete_class(&mut self, class: Vec<Elem>, from_pending: Option<usize>, active: &[SigmaEntry]) {
        if self.truncated {
            return;
        }
        let inv: Vec<Elem> = {
            let mut v: Vec<Elem> = class.iter().map(|&e| self.g.neg(e)).collect();
            v.sort_unstable();
            v
        };
        let symmetric = inv == class;
        if from_pending.is_none() && !symmetric {
            // the inverse must be placeable later as its own class
            if inv.iter().any(|&e| {
                self.placed_class[e as usize] >= 0
                    || class.binary_search(&e).is_ok()
                    || self.pending.iter().any(|p| p.binary_search(&e).is_ok())
            }) {
                return;
            }
        }

        // mutate
        let class_idx = self.classes.len() as i32;
        for &e in &class {
            self.placed_class[e as usize] = class_idx;
        }
        self.classes.push(class.clone());
        let mut removed_pending: Option<Vec<Elem>> = None;
        if let Some(fi) = from_pending {
            removed_pending = Some(self.pending.remove(fi));
        } else if !symmetric {
            self.pending.push(inv);
        }

        // closure consistency, then canonicity, then recurse
        if let Some(cells) = self.closure_cells() {
            if self.canonical_only {
                let mut next_active: Vec<SigmaEntry> = Vec::with_capacity(active.len());
                let mut pruned = false;
                for &entry in active {
                    let mut e = entry;
                    match self.advance(&mut e) {
                        Advance::Prune => {
                            pruned = true;
                            break;
                        }
                        Advance::Drop => {}
                        Advance::Keep => next_active.push(e),
                    }
                }
                if !pruned {
                    self.node(&cells, &next_active);
                }
            } else {
                self.node(&cells, active);
            }
        }

        // undo
        for &e in &class {
            self.placed_class[e as usize] = -1;
        }
        self.classes.pop();
        if let Some(fi) = from_pending {
            self.pending.insert(fi, removed_pending.unwrap());
        } else if !symmetric {
            self.pending.pop();
        }
    }
}

/// Enumerate all S-rings over the task's group. With `canonical_only` the
/// catalog holds exactly one representative per Cayley class; otherwise it
/// holds every S-ring partition. A truncated run is returned with
/// `complete = false`.
pub fn enumerate_srings(task: &EnumerationTask) -> Result<Catalog> {
    let g = &task.group;
    if g.order() > ENUMERATION_ORDER_BOUND {
        return Err(SchurError::TooLarge(format!(
            "enumeration is bounded at order {ENUMERATION_ORDER_BOUND}, got {}",
            g.order()
        )));
    }
    let start = Instant::now();
    let aut = automorphism_group(g)?;
    let tables: Vec<&[Elem]> = aut.elements().iter().map(|a| a.table()).collect();
    let inverses: Vec<Vec<Elem>> = aut
        .elements()
        .iter()
        .map(|a| a.inverse().table().to_vec())
        .collect();
    let mut search = Search {
        g,
        n: g.order(),
        tables,
        inverses,
        canonical_only: task.canonical_only,
        deadline: task.time_budget.map(|b| start + b),
        progress: task.progress.clone(),
        placed_class: vec![-1; g.order() as usize],
        classes: Vec::new(),
        pending: Vec::new(),
        results: Vec::new(),
        nodes: 0,
        truncated: false,
    };
    let active: Vec<SigmaEntry> = (0..search.tables.len() as u32)
        .map(|id| SigmaEntry { id, pos: 1 })
        .collect();
    // class 0 is always the identity singleton
    search.complete_class(vec![0], None, &active);
    let complete = !search.truncated;
    let results = std::mem::take(&mut search.results);
    let mut records: Vec<CatalogRecord> = results
        .into_iter()
        .map(|classes| CatalogRecord::new(SRing::trusted(g, classes)))
        .collect();
    records.sort_by(|a, b| {
        (a.ring.rank(), a.ring.basic_sets()).cmp(&(b.ring.rank(), b.ring.basic_sets()))
    });
    Ok(Catalog {
        group: Arc::clone(g),
        records,
        complete,
        elapsed: start.elapsed(),
    })
}

/// All S-ring partitions of `g` (raw, not up to isomorphism) whose classes
/// avoid straddling the given blocks: every block must be a union of
/// classes. Enumeration is a direct scan over set partitions of the
/// non-identity elements; independent of the closure machinery.
pub fn all_sring_partitions_refining(
    g: &Arc<AbelianGroup>,
    blocks: &[Vec<Elem>],
) -> Vec<Vec<Vec<Elem>>> {
    let n = g.order();
    // region id per element: which block it belongs to (usize::MAX = none)
    let mut region = vec![usize::MAX; n as usize];
    for (bi, b) in blocks.iter().enumerate() {
        for &e in b {
            region[e as usize] = bi;
        }
    }
    let mut found = Vec::new();
    let mut classes: Vec<(usize, Vec<Elem>)> = Vec::new(); // (region, members)
    fn rec(
        g: &Arc<AbelianGroup>,
        n: u32,
        region: &[usize],
        e: Elem,
        classes: &mut Vec<(usize, Vec<Elem>)>,
        found: &mut Vec<Vec<Vec<Elem>>>,
    ) {
        if e == n {
            let mut parts: Vec<Vec<Elem>> = vec![vec![0]];
            parts.extend(classes.iter().map(|(_, c)| c.clone()));
            // cheap inverse-closure test before the full axiom check
            let index: BTreeSet<Vec<Elem>> = parts.iter().cloned().collect();
            let s2 = parts.iter().all(|c| {
                let mut inv: Vec<Elem> = c.iter().map(|&x| g.neg(x)).collect();
                inv.sort_unstable();
                index.contains(&inv)
            });
            if s2 && verify_sring(g, &parts).is_ok() {
                let mut sorted = parts;
                sorted.sort_by_key(|c| c[0]);
                found.push(sorted);
            }
            return;
        }
        let r = region[e as usize];
        for i in 0..classes.len() {
            if classes[i].0 == r {
                classes[i].1.push(e);
                rec(g, n, region, e + 1, classes, found);
                classes[i].1.pop();
            }
        }
        classes.push((r, vec![e]));
        rec(g, n, region, e + 1, classes, found);
        classes.pop();
    }
    rec(g, n, &region, 1, &mut classes, &mut found);
    found
}

/// All S-ring partitions of a tiny group.
pub fn all_sring_partitions(g: &Arc<AbelianGroup>) -> Result<Vec<Vec<Vec<Elem>>>> {
    if g.order() > ORACLE_ORDER_BOUND {
        return Err(SchurError::TooLarge(format!(
            "partition scan bounded at order {ORACLE_ORDER_BOUND}, got {}",
            g.order()
        )));
    }
    Ok(all_sring_partitions_refining(g, &[]))
}

/// Independent oracle: scan all set partitions of the non-identity elements,
/// keep those passing the axiom check, and deduplicate by canonical form.
pub fn brute_force_oracle(g: &Arc<AbelianGroup>) -> Result<Catalog> {
    let start = Instant::now();
    let raw = all_sring_partitions(g)?;
    let aut = automorphism_group(g)?;
    let mut seen: BTreeSet<Vec<Vec<Elem>>> = BTreeSet::new();
    let mut records = Vec::new();
    for classes in raw {
        let ring = SRing::trusted(g, classes);
        let canon = canonical_form_with(&ring, &aut);
        if seen.insert(canon.clone()) {
            records.push(CatalogRecord::new(SRing::trusted(g, canon)));
        }
    }
    records.sort_by(|a, b| {
        (a.ring.rank(), a.ring.basic_sets()).cmp(&(b.ring.rank(), b.ring.basic_sets()))
    });
    Ok(Catalog {
        group: Arc::clone(g),
        records,
        complete: true,
        elapsed: start.elapsed(),
    })
}

/// How sampled rings are deduplicated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleDedup {
    CanonicalForm,
    Partition,
}

/// Deterministic sampler: closures of pseudo-random seed families (random
/// subsets, random subgroup unions, random automorphism-orbit unions),
/// deduplicated and reproducible from the seed.
pub fn sample_generated_with(
    g: &Arc<AbelianGroup>,
    count: usize,
    seed: u64,
    dedup: SampleDedup,
) -> Result<Vec<SRing>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let aut = automorphism_group(g)?;
    let subgroups = crate::group::enumerate_subgroups(g);
    let n = g.order();
    let mut seen: BTreeSet<Vec<Vec<Elem>>> = BTreeSet::new();
    let mut out = Vec::new();
    let max_attempts = count.saturating_mul(80).max(400);
    for _ in 0..max_attempts {
        if out.len() >= count {
            break;
        }
        let blocks: Vec<Vec<Elem>> = match rng.gen_range(0..4u8) {
            0 => {
                // one random subset of the non-identity elements
                let size = rng.gen_range(1..=(n as usize - 1).max(1));
                let mut pool: Vec<Elem> = (1..n).collect();
                pool.shuffle(&mut rng);
                pool.truncate(size);
                vec![pool]
            }
            1 => {
                // union of a few random subgroups
                let k = rng.gen_range(1..=2usize);
                let mut union: BTreeSet<Elem> = BTreeSet::new();
                for _ in 0..k {
                    let h = &subgroups[rng.gen_range(0..subgroups.len())];
                    union.extend(h.elements().iter().copied());
                }
                union.remove(&0);
                vec![union.into_iter().collect()]
            }
            2 => {
                // union of orbits of a random automorphism subgroup
                let k = rng.gen_range(1..=2usize);
                let gens: Vec<Automorphism> = (0..k)
                    .map(|_| aut.elements()[rng.gen_range(0..aut.order())].clone())
                    .collect();
                let m = AutSubgroup::from_generators(g, gens);
                let all: Vec<Elem> = g.elements().collect();
                let orbs = crate::group::aut::orbits(&m, &all).expect("whole group invariant");
                let picks = rng.gen_range(1..=orbs.len().min(3));
                let mut chosen: Vec<Vec<Elem>> = Vec::new();
                for _ in 0..picks {
                    let o = orbs[rng.gen_range(0..orbs.len())].clone();
                    if o != vec![0] {
                        chosen.push(o);
                    }
                }
                if chosen.is_empty() {
                    continue;
                }
                chosen
            }
            _ => {
                // two disjoint random subsets
                let mut pool: Vec<Elem> = (1..n).collect();
                pool.shuffle(&mut rng);
                let a = rng.gen_range(1..=(n as usize / 2).max(1));
                let b = rng.gen_range(1..=(n as usize / 2).max(1));
                let first: Vec<Elem> = pool[..a.min(pool.len())].to_vec();
                let second: Vec<Elem> =
                    pool[a.min(pool.len())..(a + b).min(pool.len())].to_vec();
                if second.is_empty() {
                    vec![first]
                } else {
                    vec![first, second]
                }
            }
        };
        let seed_blocks = PartitionSeed::new(g, blocks)?;
        let ring = closure(&seed_blocks);
        let key = match dedup {
            SampleDedup::CanonicalForm => canonical_form_with(&ring, &aut),
            SampleDedup::Partition => ring.basic_sets().to_vec(),
        };
        if seen.insert(key) {
            out.push(ring);
        }
    }
    Ok(out)
}

/// Sampler with the default canonical-form deduplication.
pub fn sample_generated(g: &Arc<AbelianGroup>, count: usize, seed: u64) -> Result<Vec<SRing>> {
    sample_generated_with(g, count, seed, SampleDedup::CanonicalForm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn enumerate_tiny_cyclic() {
        let c3 = make_group(&[3]).unwrap();
        let cat = enumerate_srings(&EnumerationTask::new(&c3)).unwrap();
        assert_eq!(cat.records.len(), 2);
        assert!(cat.complete);

        let c4 = make_group(&[4]).unwrap();
        let cat = enumerate_srings(&EnumerationTask::new(&c4)).unwrap();
        assert_eq!(cat.records.len(), 3);
    }

    #[test]
    fn e9_has_ten_srings() {
        let e9 = make_group(&[3, 3]).unwrap();
        let cat = enumerate_srings(&EnumerationTask::new(&e9)).unwrap();
        assert_eq!(cat.records.len(), 10);
        let mut ranks: Vec<usize> = cat.records.iter().map(|r| r.ring.rank()).collect();
        ranks.sort_unstable();
        assert_eq!(ranks, vec![2, 3, 3, 4, 4, 4, 5, 5, 6, 9]);
    }

    #[test]
    fn oracle_matches_enumerator_small() {
        for orders in [vec![4u32], vec![5], vec![2, 3], vec![8], vec![3, 3]] {
            let g = make_group(&orders).unwrap();
            let fast = enumerate_srings(&EnumerationTask::new(&g)).unwrap();
            let slow = brute_force_oracle(&g).unwrap();
            let fast_sets: Vec<_> = fast.records.iter().map(|r| r.ring.basic_sets()).collect();
            let slow_sets: Vec<_> = slow.records.iter().map(|r| r.ring.basic_sets()).collect();
            assert_eq!(fast_sets, slow_sets, "orders {orders:?}");
        }
    }

    #[test]
    fn raw_enumeration_groups_into_canonical_classes() {
        let g = make_group(&[3, 3]).unwrap();
        let mut task = EnumerationTask::new(&g);
        task.canonical_only = false;
        let raw = enumerate_srings(&task).unwrap();
        let aut = automorphism_group(&g).unwrap();
        let mut canon: BTreeSet<Vec<Vec<Elem>>> = BTreeSet::new();
        for r in &raw.records {
            canon.insert(canonical_form_with(&r.ring, &aut));
        }
        assert_eq!(canon.len(), 10);
        assert!(raw.records.len() >= 10);
    }

    #[test]
    fn closure_fixpoint_on_records() {
        let g = make_group(&[2, 3]).unwrap();
        let cat = enumerate_srings(&EnumerationTask::new(&g)).unwrap();
        for r in &cat.records {
            let seed = PartitionSeed::new(&g, r.ring.basic_sets().to_vec()).unwrap();
            assert_eq!(closure(&seed), r.ring);
        }
    }

    #[test]
    fn sampler_is_deterministic() {
        let c15 = make_group(&[3, 5]).unwrap();
        let a = sample_generated(&c15, 10, 42).unwrap();
        let b = sample_generated(&c15, 10, 42).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
        }
        for ring in &a {
            assert!(verify_sring(&c15, ring.basic_sets()).is_ok());
        }
    }
}
