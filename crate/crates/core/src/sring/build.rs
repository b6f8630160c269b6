//! Constructions: cyclotomic S-rings, tensor products, generalized wreath
//! products and duals.

use super::{verify_sring, SRing};
use crate::group::aut::{orbits, AutSubgroup};
use crate::group::character::{character_sum, dual_group, Character};
use crate::group::{make_group_bounded, Elem, Section, Subgroup};
use crate::{Result, SchurError};
use std::collections::{BTreeMap, BTreeSet};

/// The S-ring whose basic sets are the orbits of `M <= Aut(G)`.
pub fn cyclotomic_sring(m: &AutSubgroup) -> SRing {
    let g = m.group();
    let all: Vec<Elem> = g.elements().collect();
    let classes = orbits(m, &all).expect("the whole group is invariant");
    SRing::trusted(g, classes)
}

/// The tensor product over the direct product of the two base groups;
/// classes are all products of factor classes.
pub fn tensor_product(a1: &SRing, a2: &SRing) -> Result<SRing> {
    let g1 = a1.group();
    let g2 = a2.group();
    let mut orders = g1.orders().to_vec();
    orders.extend_from_slice(g2.orders());
    let g = make_group_bounded(&orders, crate::group::DEFAULT_MAX_GROUP_ORDER)?;
    let n2 = g2.order();
    let mut classes = Vec::with_capacity(a1.rank() * a2.rank());
    for x1 in a1.basic_sets() {
        for x2 in a2.basic_sets() {
            let mut class = Vec::with_capacity(x1.len() * x2.len());
            for &e1 in x1 {
                for &e2 in x2 {
                    class.push(e1 * n2 + e2);
                }
            }
            classes.push(class);
        }
    }
    Ok(SRing::trusted(&g, classes))
}

/// Generalized wreath product determined by the subgroup chain `L <= U <= G`.
///
/// `inner` is an S-ring over the quotient of the section `U/1` and `outer`
/// an S-ring over the quotient of `G/L`. Inside `U` the basic sets are those
/// of `inner`; outside `U` they are the full preimages of the basic sets of
/// `outer` outside `U/L`. The two inputs must agree on the section `U/L`.
pub fn generalized_wreath(
    u: &Subgroup,
    l: &Subgroup,
    inner: &SRing,
    outer: &SRing,
) -> Result<SRing> {
    if !l.is_subgroup_of(u) {
        return Err(SchurError::IncompatibleSection(
            "denominator not contained in numerator".into(),
        ));
    }
    let g = u.group();
    let su = Section::over_trivial(u)?;
    let sq = Section::of_quotient(l)?;
    if inner.group().orders() != su.quotient().orders() {
        return Err(SchurError::IncompatibleSection(format!(
            "inner ring lives over {}, the section numerator decomposes as {}",
            inner.group(),
            su.quotient()
        )));
    }
    if outer.group().orders() != sq.quotient().orders() {
        return Err(SchurError::IncompatibleSection(format!(
            "outer ring lives over {}, the quotient decomposes as {}",
            outer.group(),
            sq.quotient()
        )));
    }

    // lift the inner classes into U
    let lifted: Vec<Vec<Elem>> = inner
        .basic_sets()
        .iter()
        .map(|class| {
            let mut set: Vec<Elem> = class.iter().map(|&q| su.lift(q)).collect();
            set.sort_unstable();
            set
        })
        .collect();

    // image of U in G/L and the agreement condition on the section U/L
    let mut im_u: Vec<Elem> = u
        .elements()
        .iter()
        .map(|&x| sq.project(x).expect("whole group section"))
        .collect();
    im_u.sort_unstable();
    im_u.dedup();
    let mut images: BTreeSet<Vec<Elem>> = BTreeSet::new();
    for class in &lifted {
        let mut img: Vec<Elem> = class
            .iter()
            .map(|&x| sq.project(x).expect("whole group section"))
            .collect();
        img.sort_unstable();
        img.dedup();
        images.insert(img);
    }
    let mut outer_inside: BTreeSet<Vec<Elem>> = BTreeSet::new();
    for class in outer.basic_sets() {
        let inside = class
            .iter()
            .filter(|&&q| im_u.binary_search(&q).is_ok())
            .count();
        if inside == class.len() {
            outer_inside.insert(class.clone());
        } else if inside > 0 {
            return Err(SchurError::IncompatibleSection(format!(
                "outer class {class:?} straddles the image of the numerator"
            )));
        }
    }
    if images != outer_inside {
        return Err(SchurError::IncompatibleSection(
            "inner and outer rings disagree on the common section".into(),
        ));
    }

    let mut classes = lifted;
    for class in outer.basic_sets() {
        if im_u.binary_search(&class[0]).is_ok() {
            continue;
        }
        let mut pre: Vec<Elem> = class.iter().flat_map(|&q| sq.fiber(q)).collect();
        pre.sort_unstable();
        classes.push(pre);
    }
    verify_sring(g, &classes)
        .map_err(|e| SchurError::IncompatibleSection(format!("wreath product failed: {e}")))
}

/// The wreath product `inner wr outer` along the subgroup `U = L`.
pub fn wreath_product(u: &Subgroup, inner: &SRing, outer: &SRing) -> Result<SRing> {
    generalized_wreath(u, u, inner, outer)
}

/// The dual S-ring on the character group: two characters share a class
/// exactly when their sums agree on every basic set.
pub fn dual_sring(a: &SRing) -> SRing {
    let g = a.group();
    let dual = dual_group(g);
    let mut by_signature: BTreeMap<Vec<Vec<i64>>, Vec<Elem>> = BTreeMap::new();
    for label in dual.elements() {
        let chi = Character::new(g, label);
        let sig: Vec<Vec<i64>> = a
            .basic_sets()
            .iter()
            .map(|class| character_sum(&chi, class).coeffs().to_vec())
            .collect();
        by_signature.entry(sig).or_default().push(label);
    }
    let classes: Vec<Vec<Elem>> = by_signature.into_values().collect();
    SRing::trusted(&dual, classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::aut::{automorphism_group, enumerate_aut_subgroups, Automorphism};
    use crate::group::make_group;
    use crate::sring::{cayley_isomorphic, restrict_to_subgroup};

    #[test]
    fn cyclotomic_ranks_over_e9() {
        let e9 = make_group(&[3, 3]).unwrap();
        let tau = AutSubgroup::from_generators(&e9, vec![Automorphism::inversion(&e9)]);
        assert_eq!(cyclotomic_sring(&tau).rank(), 5);

        let aut = automorphism_group(&e9).unwrap();
        let subs = enumerate_aut_subgroups(&aut).unwrap();
        let singer = subs
            .iter()
            .find(|h| h.order() == 8 && h.is_cyclic())
            .unwrap();
        assert_eq!(cyclotomic_sring(singer).rank(), 2);

        let c4_in_singer = subs
            .iter()
            .find(|h| h.order() == 4 && h.is_cyclic() && h.is_subgroup_of(singer))
            .unwrap();
        assert_eq!(cyclotomic_sring(c4_in_singer).rank(), 3);
    }

    #[test]
    fn tensor_ranks() {
        let c3 = make_group(&[3]).unwrap();
        let r2 = SRing::rank_two(&c3);
        let zg = SRing::group_ring(&c3);
        assert_eq!(tensor_product(&r2, &r2).unwrap().rank(), 4);
        assert_eq!(tensor_product(&r2, &zg).unwrap().rank(), 6);
        let ze9 = tensor_product(&zg, &zg).unwrap();
        assert_eq!(ze9.rank(), 9);
        let e9 = make_group(&[3, 3]).unwrap();
        assert_eq!(ze9, SRing::group_ring(&e9));
    }

    #[test]
    fn wreath_ranks_over_e9() {
        let e9 = make_group(&[3, 3]).unwrap();
        let c = Subgroup::from_generators(&e9, &[e9.elem(&[1, 0])]);
        let c3 = make_group(&[3]).unwrap();
        let r2 = SRing::rank_two(&c3);
        let zg = SRing::group_ring(&c3);
        assert_eq!(wreath_product(&c, &r2, &r2).unwrap().rank(), 3);
        assert_eq!(wreath_product(&c, &zg, &r2).unwrap().rank(), 4);
        assert_eq!(wreath_product(&c, &r2, &zg).unwrap().rank(), 4);
        assert_eq!(wreath_product(&c, &zg, &zg).unwrap().rank(), 5);
    }

    #[test]
    fn wreath_radical_condition() {
        let e9 = make_group(&[3, 3]).unwrap();
        let c = Subgroup::from_generators(&e9, &[e9.elem(&[1, 0])]);
        let c3 = make_group(&[3]).unwrap();
        let a = wreath_product(&c, &SRing::group_ring(&c3), &SRing::rank_two(&c3)).unwrap();
        for class in a.basic_sets() {
            if !c.contains(class[0]) {
                let rad = crate::sring::radical_of(&e9, class);
                assert!(c.is_subgroup_of(&rad));
            }
        }
    }

    #[test]
    fn incompatible_wreath_inputs_rejected() {
        let e9 = make_group(&[3, 3]).unwrap();
        let c = Subgroup::from_generators(&e9, &[e9.elem(&[1, 0])]);
        let c3 = make_group(&[3]).unwrap();
        // proper generalized wreath over E9 with U = C and L = 1 requires the
        // inner and outer rings to agree on C, which fails for these inputs
        let inner = SRing::group_ring(&c3);
        let e9_quot = Section::of_quotient(&Subgroup::trivial(&e9))
            .unwrap()
            .quotient()
            .clone();
        let outer = SRing::rank_two(&e9_quot);
        let err = generalized_wreath(&c, &Subgroup::trivial(&e9), &inner, &outer);
        assert!(err.is_err());
    }

    #[test]
    fn dual_rank_and_involution() {
        let c3 = make_group(&[3]).unwrap();
        let zg = SRing::group_ring(&c3);
        assert_eq!(dual_sring(&zg).rank(), 3);
        let r2 = SRing::rank_two(&c3);
        assert_eq!(dual_sring(&r2).rank(), 2);

        let e9 = make_group(&[3, 3]).unwrap();
        let tau = AutSubgroup::from_generators(&e9, vec![Automorphism::inversion(&e9)]);
        let a = cyclotomic_sring(&tau);
        let dd = dual_sring(&dual_sring(&a));
        assert_eq!(dd.rank(), a.rank());
        assert!(cayley_isomorphic(&a, &dd).unwrap());
    }

    #[test]
    fn tensor_restriction_recovers_factor() {
        let c3 = make_group(&[3]).unwrap();
        let zg = SRing::group_ring(&c3);
        let r2 = SRing::rank_two(&c3);
        let t = tensor_product(&r2, &zg).unwrap();
        let g = t.group().clone();
        let first = crate::sring::coordinate_subgroup(&g, 0, 1);
        let restricted = restrict_to_subgroup(&t, &first).unwrap();
        assert!(cayley_isomorphic(&restricted, &r2).unwrap());
    }
}
