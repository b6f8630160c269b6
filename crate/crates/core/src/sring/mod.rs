//! S-rings over finite abelian groups.
//!
//! An S-ring is stored as the partition of the group into basic sets,
//! normalized so that every class is sorted and classes are ordered by their
//! least representative; class 0 is always the identity class.

mod build;
mod canonical;
mod closure;

pub use build::{cyclotomic_sring, dual_sring, generalized_wreath, tensor_product, wreath_product};
pub use canonical::{
    apply_automorphism, canonical_form, canonical_form_with, cayley_isomorphic,
    fixed_isomorphism,
};
pub use closure::{closure, wl_stabilize, PartitionSeed};

use crate::group::aut::{orbits_of_elements, AutSubgroup, Automorphism};
use crate::group::{enumerate_subgroups, generated_elements, AbelianGroup, Elem, Section, Subgroup};
use crate::{Result, SchurError};
use std::fmt;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

/// Which S-ring axiom a partition violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// The identity is a class on its own.
    S1,
    /// The inverse of a class is a class.
    S2,
    /// Products of class sums have constant coefficients on classes.
    S3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::S1 => write!(f, "S1"),
            Axiom::S2 => write!(f, "S2"),
            Axiom::S3 => write!(f, "S3"),
        }
    }
}

/// A failed axiom with witnesses.
#[derive(Debug, Clone, Error)]
#[error("axiom {axiom} violated: {detail}")]
pub struct Violation {
    pub axiom: Axiom,
    pub detail: String,
}

#[derive(Debug, Clone, Error)]
pub enum VerifyError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error(transparent)]
    Axiom(#[from] Violation),
}

/// Structure constants `c[x][y][z]`: the common coefficient on class `z` of
/// the product of the class sums of `x` and `y`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    rank: usize,
    c: Vec<u32>,
}

impl StructureConstants {
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> u32 {
        self.c[(x * self.rank + y) * self.rank + z]
    }
}

/// An S-ring over a finite abelian group.
#[derive(Clone)]
pub struct SRing {
    group: Arc<AbelianGroup>,
    classes: Vec<Vec<Elem>>,
    class_of: Vec<u32>,
    constants: OnceLock<Arc<StructureConstants>>,
}

impl PartialEq for SRing {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.classes == other.classes
    }
}
impl Eq for SRing {}

impl fmt::Debug for SRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SRing(group={}, rank={}, classes={:?})",
            self.group,
            self.rank(),
            self.classes
        )
    }
}

/// Sort each class and order classes by least representative.
pub(crate) fn normalize_classes(classes: &mut Vec<Vec<Elem>>) {
    for c in classes.iter_mut() {
        c.sort_unstable();
        c.dedup();
    }
    classes.retain(|c| !c.is_empty());
    classes.sort_by_key(|c| c[0]);
}

fn partition_check(group: &AbelianGroup, classes: &[Vec<Elem>]) -> std::result::Result<(), String> {
    let n = group.order() as usize;
    let mut seen = vec![false; n];
    for class in classes {
        if class.is_empty() {
            return Err("empty class".into());
        }
        for &e in class {
            if e as usize >= n {
                return Err(format!("element {e} out of range"));
            }
            if seen[e as usize] {
                return Err(format!("element {e} appears twice"));
            }
            seen[e as usize] = true;
        }
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(format!("element {missing} is not covered"));
    }
    Ok(())
}

/// Check the S-ring axioms for a partition of the group. On success the
/// returned ring carries cached structure constants.
pub fn verify_sring(
    group: &Arc<AbelianGroup>,
    classes: &[Vec<Elem>],
) -> std::result::Result<SRing, VerifyError> {
    partition_check(group, classes).map_err(VerifyError::InvalidPartition)?;
    let mut classes = classes.to_vec();
    normalize_classes(&mut classes);
    let ring = SRing::from_normalized(group, classes);
    if ring.classes[ring.class_of[0] as usize].len() != 1 {
        return Err(Violation {
            axiom: Axiom::S1,
            detail: format!(
                "identity lies in the class {:?}",
                ring.classes[ring.class_of[0] as usize]
            ),
        }
        .into());
    }
    for class in &ring.classes {
        let mut inv: Vec<Elem> = class.iter().map(|&e| group.neg(e)).collect();
        inv.sort_unstable();
        let target = &ring.classes[ring.class_of[inv[0] as usize] as usize];
        if target != &inv {
            return Err(Violation {
                axiom: Axiom::S2,
                detail: format!("inverse of {class:?} is {inv:?}, not a class"),
            }
            .into());
        }
    }
    let r = ring.rank();
    let mut c = vec![0u32; r * r * r];
    let mut cnt = vec![0u32; group.order() as usize];
    for i in 0..r {
        for j in 0..r {
            cnt.iter_mut().for_each(|v| *v = 0);
            for &x in &ring.classes[i] {
                for &y in &ring.classes[j] {
                    cnt[group.add(x, y) as usize] += 1;
                }
            }
            for (k, class) in ring.classes.iter().enumerate() {
                let v = cnt[class[0] as usize];
                if class.iter().any(|&e| cnt[e as usize] != v) {
                    return Err(Violation {
                        axiom: Axiom::S3,
                        detail: format!(
                            "product of classes {i} and {j} is not constant on class {k}"
                        ),
                    }
                    .into());
                }
                c[(i * r + j) * r + k] = v;
            }
        }
    }
    let _ = ring
        .constants
        .set(Arc::new(StructureConstants { rank: r, c }));
    Ok(ring)
}

impl SRing {
    fn from_normalized(group: &Arc<AbelianGroup>, classes: Vec<Vec<Elem>>) -> Self {
        let mut class_of = vec![0u32; group.order() as usize];
        for (i, class) in classes.iter().enumerate() {
            for &e in class {
                class_of[e as usize] = i as u32;
            }
        }
        SRing {
            group: Arc::clone(group),
            classes,
            class_of,
            constants: OnceLock::new(),
        }
    }

    /// Construct from classes known to satisfy the axioms (checked in debug
    /// builds).
    pub(crate) fn trusted(group: &Arc<AbelianGroup>, mut classes: Vec<Vec<Elem>>) -> Self {
        normalize_classes(&mut classes);
        debug_assert!(verify_sring(group, &classes).is_ok());
        Self::from_normalized(group, classes)
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn basic_sets(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn class_index_of(&self, e: Elem) -> usize {
        self.class_of[e as usize] as usize
    }

    pub fn class_of(&self, e: Elem) -> &[Elem] {
        &self.classes[self.class_index_of(e)]
    }

    /// Is the given set a union of basic sets?
    pub fn is_union_of_classes(&self, set: &[Elem]) -> bool {
        let mut covered: Vec<Elem> = set
            .iter()
            .flat_map(|&e| self.class_of(e).iter().copied())
            .collect();
        covered.sort_unstable();
        covered.dedup();
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        covered == sorted
    }

    pub fn structure_constants(&self) -> Arc<StructureConstants> {
        Arc::clone(self.constants.get_or_init(|| {
            let r = self.rank();
            let mut c = vec![0u32; r * r * r];
            let mut cnt = vec![0u32; self.group.order() as usize];
            for i in 0..r {
                for j in 0..r {
                    cnt.iter_mut().for_each(|v| *v = 0);
                    for &x in &self.classes[i] {
                        for &y in &self.classes[j] {
                            cnt[self.group.add(x, y) as usize] += 1;
                        }
                    }
                    for (k, class) in self.classes.iter().enumerate() {
                        c[(i * r + j) * r + k] = cnt[class[0] as usize];
                    }
                }
            }
            Arc::new(StructureConstants { rank: r, c })
        }))
    }

    /// The group ring `ZG`: all classes singletons.
    pub fn group_ring(group: &Arc<AbelianGroup>) -> SRing {
        let classes = group.elements().map(|e| vec![e]).collect();
        SRing::from_normalized(group, classes)
    }

    /// The S-ring with classes `{e}` and `G \ {e}` (rank 2, or rank 1 over
    /// the trivial group).
    pub fn rank_two(group: &Arc<AbelianGroup>) -> SRing {
        let mut classes = vec![vec![0 as Elem]];
        let rest: Vec<Elem> = group.elements().skip(1).collect();
        if !rest.is_empty() {
            classes.push(rest);
        }
        SRing::from_normalized(group, classes)
    }

    /// Trivial means rank at most 2.
    pub fn is_trivial(&self) -> bool {
        self.rank() <= 2
    }
}

/// The subgroup generated by a subset.
pub fn span_of(group: &Arc<AbelianGroup>, set: &[Elem]) -> Subgroup {
    Subgroup::from_elements(group, &generated_elements(group, set))
        .expect("closure of a generating set is a subgroup")
}

/// The radical `rad(X) = { g : g + X = X }`.
pub fn radical_of(group: &Arc<AbelianGroup>, set: &[Elem]) -> Subgroup {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let els: Vec<Elem> = group
        .elements()
        .filter(|&g| {
            sorted
                .iter()
                .all(|&x| sorted.binary_search(&group.add(g, x)).is_ok())
        })
        .collect();
    Subgroup::from_elements(group, &els).expect("radical is a subgroup")
}

/// All subgroups of the group that are unions of basic sets.
pub fn a_subgroups(a: &SRing) -> Vec<Subgroup> {
    enumerate_subgroups(a.group())
        .into_iter()
        .filter(|h| a.is_union_of_classes(h.elements()))
        .collect()
}

/// Restriction of the S-ring to an A-section `U/L`: the basic sets are the
/// projections of the basic sets inside `U`.
pub fn restrict_to_section(a: &SRing, section: &Section) -> Result<SRing> {
    let u = section.numerator();
    let l = section.denominator();
    if !a.is_union_of_classes(u.elements()) {
        return Err(SchurError::NotASection(
            "numerator is not an A-subgroup".into(),
        ));
    }
    if !a.is_union_of_classes(l.elements()) {
        return Err(SchurError::NotASection(
            "denominator is not an A-subgroup".into(),
        ));
    }
    let mut images: Vec<Vec<Elem>> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for class in a.basic_sets() {
        if !u.contains(class[0]) {
            continue;
        }
        let mut img: Vec<Elem> = class
            .iter()
            .map(|&x| section.project(x).expect("class inside numerator"))
            .collect();
        img.sort_unstable();
        img.dedup();
        if seen.insert(img.clone()) {
            images.push(img);
        }
    }
    verify_sring(section.quotient(), &images)
        .map_err(|e| SchurError::InvalidPartition(format!("section restriction failed: {e}")))
}

/// Restriction to the subgroup `H`, i.e. to the section `H/1`.
pub fn restrict_to_subgroup(a: &SRing, h: &Subgroup) -> Result<SRing> {
    restrict_to_section(a, &Section::over_trivial(h)?)
}

/// Are both designated coordinate factors A-subgroups? `split` is the number
/// of leading coordinates in the first factor.
pub fn is_dense(a: &SRing, split: usize) -> Result<bool> {
    let g = a.group();
    if split == 0 || split >= g.num_factors() {
        return Err(SchurError::WrongGroupShape(format!(
            "split {split} does not separate two factors of {g}"
        )));
    }
    let first = coordinate_subgroup(g, 0, split);
    let second = coordinate_subgroup(g, split, g.num_factors());
    Ok(a.is_union_of_classes(first.elements()) && a.is_union_of_classes(second.elements()))
}

/// The subgroup of elements supported on the coordinate range `[from, to)`.
pub fn coordinate_subgroup(g: &Arc<AbelianGroup>, from: usize, to: usize) -> Subgroup {
    let gens: Vec<Elem> = (from..to).map(|i| g.unit(i)).collect();
    Subgroup::from_generators(g, &gens)
}

/// The setwise stabilizer of every basic set inside `Aut(G)`. Its orbits
/// always refine the basic sets; the ring is cyclotomic exactly when they
/// coincide.
pub fn class_stabilizer(a: &SRing, aut: &AutSubgroup) -> AutSubgroup {
    let stab: Vec<Automorphism> = aut
        .elements()
        .iter()
        .filter(|s| a.basic_sets().iter().all(|class| s.stabilizes(class)))
        .cloned()
        .collect();
    AutSubgroup::from_elements_unchecked(a.group(), stab)
}

/// If the basic sets are the orbits of some subgroup of `Aut(G)`, return the
/// largest such subgroup.
pub fn is_cyclotomic_with(a: &SRing, aut: &AutSubgroup) -> Option<AutSubgroup> {
    let m_star = class_stabilizer(a, aut);
    let all: Vec<Elem> = a.group().elements().collect();
    let orbs = orbits_of_elements(m_star.elements(), &all);
    if orbs == a.basic_sets() {
        Some(m_star)
    } else {
        None
    }
}

pub fn is_cyclotomic(a: &SRing) -> Result<Option<AutSubgroup>> {
    let aut = crate::group::aut::automorphism_group(a.group())?;
    Ok(is_cyclotomic_with(a, &aut))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn verify_examples() {
        let c3 = make_group(&[3]).unwrap();
        let zg = verify_sring(&c3, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(zg.rank(), 3);
        let r2 = verify_sring(&c3, &[vec![0], vec![1, 2]]).unwrap();
        assert_eq!(r2.rank(), 2);

        let c4 = make_group(&[4]).unwrap();
        let bad = verify_sring(&c4, &[vec![0], vec![1, 2], vec![3]]);
        match bad {
            Err(VerifyError::Axiom(v)) => assert_eq!(v.axiom, Axiom::S2),
            other => panic!("expected an S2 violation, got {other:?}"),
        }

        let not_partition = verify_sring(&c4, &[vec![0], vec![1, 1], vec![2, 3]]);
        assert!(matches!(
            not_partition,
            Err(VerifyError::InvalidPartition(_))
        ));
    }

    #[test]
    fn structure_constant_identities() {
        let c4 = make_group(&[4]).unwrap();
        let a = verify_sring(&c4, &[vec![0], vec![1, 3], vec![2]]).unwrap();
        let sc = a.structure_constants();
        let r = a.rank();
        for x in 0..r {
            for y in 0..r {
                let total: u32 = (0..r)
                    .map(|z| sc.get(x, y, z) * a.basic_sets()[z].len() as u32)
                    .sum();
                assert_eq!(
                    total,
                    (a.basic_sets()[x].len() * a.basic_sets()[y].len()) as u32
                );
            }
        }
        // identity coefficient picks out inverse pairs
        for x in 0..r {
            let inv: Vec<Elem> = a.basic_sets()[x].iter().map(|&e| c4.neg(e)).collect();
            let y = a.class_index_of(inv[0]);
            assert_eq!(sc.get(x, y, 0), a.basic_sets()[x].len() as u32);
            for other in 0..r {
                if other != y {
                    assert_eq!(sc.get(x, other, 0), 0);
                }
            }
        }
    }

    #[test]
    fn a_subgroup_examples() {
        let e9 = make_group(&[3, 3]).unwrap();
        let zg = SRing::group_ring(&e9);
        assert_eq!(a_subgroups(&zg).len(), 6);
        let r2 = SRing::rank_two(&e9);
        assert_eq!(a_subgroups(&r2).len(), 2);
    }

    #[test]
    fn radical_and_span() {
        let e9 = make_group(&[3, 3]).unwrap();
        let c: Vec<Elem> = vec![e9.elem(&[1, 0]), e9.elem(&[2, 0])];
        assert_eq!(span_of(&e9, &c).order(), 3);
        // the complement of a line is saturated by that line
        let outside: Vec<Elem> = e9.elements().filter(|&x| e9.coords(x)[1] != 0).collect();
        assert_eq!(radical_of(&e9, &outside).order(), 3);
        assert_eq!(radical_of(&e9, &c).order(), 1);
    }
}
