//! Characters of finite abelian groups and duality.
//!
//! The dual group is presented with the same cyclic factor orders; the
//! character labelled by `a` sends `x` to `zeta_m ^ e(x)` where `m` is the
//! exponent of the group and `e(x) = sum_i a_i x_i (m / n_i) mod m`.

use super::cyclotomic::CyclotomicInteger;
use super::{make_group_bounded, AbelianGroup, Elem, Subgroup};
use crate::Result;
use std::sync::Arc;

/// The group dual to `g` (same factor orders, canonical identification).
pub fn dual_group(g: &Arc<AbelianGroup>) -> Arc<AbelianGroup> {
    make_group_bounded(g.orders(), g.order().max(2)).expect("dual of a valid group is valid")
}

/// An irreducible complex character, identified by its dual-group label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    group: Arc<AbelianGroup>,
    label: Elem,
}

impl Character {
    pub fn new(group: &Arc<AbelianGroup>, label: Elem) -> Self {
        Character {
            group: Arc::clone(group),
            label,
        }
    }

    pub fn trivial(group: &Arc<AbelianGroup>) -> Self {
        Self::new(group, 0)
    }

    pub fn label(&self) -> Elem {
        self.label
    }

    /// The exponent `e(x)` with value `zeta_m ^ e(x)`, `m` the group exponent.
    pub fn exponent_at(&self, x: Elem) -> u32 {
        let g = &self.group;
        let m = g.exponent().max(1);
        let la = g.coords(self.label);
        let cx = g.coords(x);
        let mut e: u64 = 0;
        for i in 0..g.num_factors() {
            let w = (m / g.orders()[i]) as u64;
            e += la[i] as u64 * cx[i] as u64 * w;
        }
        (e % m as u64) as u32
    }

    pub fn value_at(&self, x: Elem) -> CyclotomicInteger {
        CyclotomicInteger::root_power(self.group.exponent().max(1), self.exponent_at(x))
    }
}

/// Exact value of the character sum over a subset of the group.
pub fn character_sum(chi: &Character, subset: &[Elem]) -> CyclotomicInteger {
    let m = chi.group.exponent().max(1);
    let mut acc = CyclotomicInteger::zero(m);
    for &x in subset {
        acc.add_root_power(chi.exponent_at(x));
    }
    acc
}

/// The orthogonal subgroup `H^perp = { chi : chi(h) = 1 for all h in H }`,
/// realized inside the dual group.
pub fn orthogonal_subgroup(h: &Subgroup) -> Result<Subgroup> {
    let g = h.group();
    let dual = dual_group(g);
    let labels: Vec<Elem> = dual
        .elements()
        .filter(|&a| {
            let chi = Character::new(g, a);
            h.elements().iter().all(|&x| chi.exponent_at(x) == 0)
        })
        .collect();
    Subgroup::from_elements(&dual, &labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_subgroups, make_group};

    #[test]
    fn character_values_multiply() {
        let g = make_group(&[3, 5]).unwrap();
        for a in g.elements().take(6) {
            let chi = Character::new(&g, a);
            for x in g.elements() {
                for y in g.elements() {
                    let lhs = chi.value_at(g.add(x, y));
                    let rhs = chi.value_at(x).mul(&chi.value_at(y));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn sums_and_orthogonality() {
        let g = make_group(&[3, 3]).unwrap();
        let all: Vec<Elem> = g.elements().collect();
        let trivial = Character::trivial(&g);
        assert_eq!(
            character_sum(&trivial, &all),
            CyclotomicInteger::from_int(g.exponent(), g.order() as i64)
        );
        for a in g.elements().skip(1) {
            let chi = Character::new(&g, a);
            assert!(character_sum(&chi, &all).is_zero());
        }
        // nontrivial character of C3 on the non-identity elements sums to -1
        let c3 = make_group(&[3]).unwrap();
        let chi = Character::new(&c3, 1);
        assert_eq!(
            character_sum(&chi, &[1, 2]),
            CyclotomicInteger::from_int(3, -1)
        );
    }

    #[test]
    fn orthogonal_subgroup_orders() {
        let g = make_group(&[3, 3]).unwrap();
        for h in enumerate_subgroups(&g) {
            let perp = orthogonal_subgroup(&h).unwrap();
            assert_eq!(h.order() * perp.order(), g.order());
        }
        let whole = Subgroup::whole(&g);
        assert_eq!(orthogonal_subgroup(&whole).unwrap().order(), 1);
        let trivial = Subgroup::trivial(&g);
        assert_eq!(orthogonal_subgroup(&trivial).unwrap().order(), 9);
    }

    #[test]
    fn double_orthogonal_is_identity() {
        let g = make_group(&[2, 4, 3]).unwrap();
        for h in enumerate_subgroups(&g) {
            let perp = orthogonal_subgroup(&h).unwrap();
            let back = orthogonal_subgroup(&perp).unwrap();
            assert_eq!(back.elements(), h.elements());
        }
    }

    #[test]
    fn orthogonal_reverses_inclusions() {
        let g = make_group(&[3, 3]).unwrap();
        let subs = enumerate_subgroups(&g);
        for h in &subs {
            for k in &subs {
                if h.is_subgroup_of(k) {
                    let hp = orthogonal_subgroup(h).unwrap();
                    let kp = orthogonal_subgroup(k).unwrap();
                    assert!(kp.is_subgroup_of(&hp));
                }
            }
        }
    }
}
