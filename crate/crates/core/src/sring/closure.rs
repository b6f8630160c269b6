//! The closure operator: the coarsest S-ring partition in which every seed
//! block is a union of classes.
//!
//! The algorithm is the group-ring analogue of Weisfeiler-Leman
//! stabilization: split classes by inverse-compatibility, then for each
//! ordered class pair compute the product of class sums as an integer count
//! vector over the group and split every class by coefficient value; repeat
//! to a fixpoint. Each split preserves the property that any S-ring
//! partition refining the seed refines the current partition, so the
//! fixpoint is the unique coarsest such S-ring.

use super::{normalize_classes, SRing};
use crate::group::{AbelianGroup, Elem};
use crate::{Result, SchurError};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A family of disjoint blocks that the closure must keep as A-sets. Blocks
/// need not cover the group.
#[derive(Debug, Clone)]
pub struct PartitionSeed {
    group: Arc<AbelianGroup>,
    blocks: Vec<Vec<Elem>>,
}

impl PartitionSeed {
    pub fn new(group: &Arc<AbelianGroup>, blocks: Vec<Vec<Elem>>) -> Result<Self> {
        let n = group.order();
        for b in &blocks {
            for &e in b {
                if e >= n {
                    return Err(SchurError::InvalidPartition(format!(
                        "seed element {e} out of range"
                    )));
                }
            }
        }
        Ok(PartitionSeed {
            group: Arc::clone(group),
            blocks,
        })
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn blocks(&self) -> &[Vec<Elem>] {
        &self.blocks
    }

    /// Normalized starting partition: blocks are split into their distinct
    /// overlaps, the identity is split off, and everything not covered forms
    /// one remainder block.
    pub fn normalized(&self) -> Vec<Vec<Elem>> {
        let n = self.group.order() as usize;
        // membership signature per element: which blocks contain it
        let mut sig: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (bi, block) in self.blocks.iter().enumerate() {
            let mut block = block.clone();
            block.sort_unstable();
            block.dedup();
            for &e in &block {
                sig[e as usize].push(bi as u32);
            }
        }
        let mut atoms: BTreeMap<Vec<u32>, Vec<Elem>> = BTreeMap::new();
        for e in 1..n as Elem {
            atoms.entry(sig[e as usize].clone()).or_default().push(e);
        }
        let mut out = vec![vec![0 as Elem]];
        for (_, atom) in atoms {
            out.push(atom);
        }
        normalize_classes(&mut out);
        out
    }
}

/// Stabilize a starting partition to the coarsest S-ring partition refining
/// it. The start must be a partition of the whole group with `{identity}` as
/// a block.
pub fn wl_stabilize(group: &AbelianGroup, start: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let n = group.order() as usize;
    let mut classes = start;
    normalize_classes(&mut classes);
    let mut class_of = vec![0u32; n];
    let rebuild = |classes: &[Vec<Elem>], class_of: &mut Vec<u32>| {
        for (i, c) in classes.iter().enumerate() {
            for &e in c {
                class_of[e as usize] = i as u32;
            }
        }
    };
    rebuild(&classes, &mut class_of);

    // split every class by the given element key; returns true if anything
    // changed (classes are renumbered canonically afterwards)
    fn split_by_key(
        classes: &mut Vec<Vec<Elem>>,
        class_of: &mut Vec<u32>,
        key: &dyn Fn(Elem) -> u32,
    ) -> bool {
        let mut next: Vec<Vec<Elem>> = Vec::with_capacity(classes.len());
        let mut changed = false;
        for class in classes.iter() {
            if class.len() == 1 {
                next.push(class.clone());
                continue;
            }
            let mut groups: BTreeMap<u32, Vec<Elem>> = BTreeMap::new();
            for &e in class {
                groups.entry(key(e)).or_default().push(e);
            }
            if groups.len() > 1 {
                changed = true;
            }
            for (_, sub) in groups {
                next.push(sub);
            }
        }
        if changed {
            normalize_classes(&mut next);
            *classes = next;
            for (i, c) in classes.iter().enumerate() {
                for &e in c {
                    class_of[e as usize] = i as u32;
                }
            }
        }
        changed
    }

    let mut cnt = vec![0u32; n];
    loop {
        // inverse-compatibility split
        {
            let co = class_of.clone();
            if split_by_key(&mut classes, &mut class_of, &|e| {
                co[group.neg(e) as usize]
            }) {
                continue;
            }
        }
        // product splits: find the first ordered pair whose count vector
        // splits any class, apply, and restart the scan
        let r = classes.len();
        let mut changed = false;
        'scan: for i in 0..r {
            for j in 0..r {
                cnt.iter_mut().for_each(|v| *v = 0);
                for &x in &classes[i] {
                    for &y in &classes[j] {
                        cnt[group.add(x, y) as usize] += 1;
                    }
                }
                let needs_split = classes.iter().any(|class| {
                    let v = cnt[class[0] as usize];
                    class.iter().any(|&e| cnt[e as usize] != v)
                });
                if needs_split {
                    let snapshot = cnt.clone();
                    let did = split_by_key(&mut classes, &mut class_of, &|e| {
                        snapshot[e as usize]
                    });
                    debug_assert!(did);
                    changed = true;
                    break 'scan;
                }
            }
        }
        if !changed {
            break;
        }
    }
    classes
}

/// The coarsest S-ring whose basic sets refine the normalized seed.
pub fn closure(seed: &PartitionSeed) -> SRing {
    let start = seed.normalized();
    let classes = wl_stabilize(seed.group(), start);
    SRing::trusted(seed.group(), classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use crate::sring::verify_sring;

    #[test]
    fn closure_extremes() {
        let e9 = make_group(&[3, 3]).unwrap();
        // coarsest possible: seed the complement of the identity
        let rest: Vec<Elem> = e9.elements().skip(1).collect();
        let seed = PartitionSeed::new(&e9, vec![rest]).unwrap();
        assert_eq!(closure(&seed).rank(), 2);

        // all singletons force the group ring
        let singles: Vec<Vec<Elem>> = e9.elements().map(|e| vec![e]).collect();
        let seed = PartitionSeed::new(&e9, singles).unwrap();
        assert_eq!(closure(&seed).rank(), 9);

        // empty seed also gives the rank-2 ring
        let seed = PartitionSeed::new(&e9, vec![]).unwrap();
        assert_eq!(closure(&seed).rank(), 2);
    }

    #[test]
    fn closure_output_is_always_an_sring() {
        let c12 = make_group(&[12]).unwrap();
        for block in [vec![1, 2], vec![3, 7], vec![2, 10], vec![1, 5, 6]] {
            let seed = PartitionSeed::new(&c12, vec![block]).unwrap();
            let a = closure(&seed);
            assert!(verify_sring(&c12, a.basic_sets()).is_ok());
        }
    }

    #[test]
    fn closure_is_idempotent() {
        let c15 = make_group(&[3, 5]).unwrap();
        let seed = PartitionSeed::new(&c15, vec![vec![5, 10]]).unwrap();
        let a = closure(&seed);
        let again = closure(&PartitionSeed::new(&c15, a.basic_sets().to_vec()).unwrap());
        assert_eq!(a, again);
    }

    #[test]
    fn seed_block_stays_a_union_of_classes() {
        let c15 = make_group(&[3, 5]).unwrap();
        let block = vec![c15.elem(&[1, 0]), c15.elem(&[2, 0])];
        let seed = PartitionSeed::new(&c15, vec![block.clone()]).unwrap();
        let a = closure(&seed);
        assert!(a.is_union_of_classes(&block));
    }
}
