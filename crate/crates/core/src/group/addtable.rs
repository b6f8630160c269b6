//! Cayley-table view of a small abelian group, used to decompose subgroups
//! and quotients into cyclic factors.

use super::{AbelianGroup, Elem};
use std::collections::BTreeSet;

/// Addition table over indices `0..n` with `0` as the identity.
#[derive(Debug, Clone)]
pub struct AddTable {
    n: u32,
    add: Vec<u32>,
}

impl AddTable {
    pub fn new(add: Vec<u32>, n: u32) -> Self {
        debug_assert_eq!(add.len(), (n as usize) * (n as usize));
        AddTable { n, add }
    }

    /// Table for a subgroup given by its sorted element list.
    pub fn for_subgroup(g: &AbelianGroup, elements: &[Elem]) -> Self {
        let n = elements.len() as u32;
        let pos = |e: Elem| elements.binary_search(&e).unwrap() as u32;
        let mut add = vec![0u32; (n as usize) * (n as usize)];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                add[i * n as usize + j] = pos(g.add(a, b));
            }
        }
        AddTable::new(add, n)
    }

    pub fn size(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a as usize) * (self.n as usize) + b as usize]
    }

    pub fn order_of(&self, a: u32) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    pub fn generated(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.n as usize];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut frontier = vec![0u32];
        while let Some(x) = frontier.pop() {
            for &h in gens {
                let y = self.add(x, h);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                    frontier.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Invariant-factor basis: a list of (element, order) pairs, orders
    /// descending with each dividing the previous, whose cyclic spans give a
    /// direct-sum decomposition of the whole table.
    pub fn basis(&self) -> Vec<(u32, u32)> {
        if self.n == 1 {
            return Vec::new();
        }
        // element of maximal order, least index on ties
        let mut best = 1u32;
        let mut best_ord = self.order_of(1);
        for a in 2..self.n {
            let o = self.order_of(a);
            if o > best_ord {
                best = a;
                best_ord = o;
            }
        }
        let span: BTreeSet<u32> = self.generated(&[best]).into_iter().collect();
        if best_ord == self.n {
            return vec![(best, best_ord)];
        }
        let target = (self.n / best_ord) as usize;
        let comp = self
            .complement(&span, target)
            .expect("a cyclic subgroup of maximal order is a direct summand");
        // recurse on the complement via a reindexed table
        let pos = |e: u32| comp.binary_search(&e).unwrap() as u32;
        let m = comp.len() as u32;
        let mut add = vec![0u32; (m as usize) * (m as usize)];
        for (i, &a) in comp.iter().enumerate() {
            for (j, &b) in comp.iter().enumerate() {
                add[i * m as usize + j] = pos(self.add(a, b));
            }
        }
        let sub = AddTable::new(add, m);
        let mut out = vec![(best, best_ord)];
        for (idx, o) in sub.basis() {
            out.push((comp[idx as usize], o));
        }
        out
    }

    /// Depth-first search for a subgroup of the given order that intersects
    /// `span` trivially. Generators are tried in increasing order, which
    /// reaches every subgroup at least once.
    fn complement(&self, span: &BTreeSet<u32>, target: usize) -> Option<Vec<u32>> {
        fn dfs(
            t: &AddTable,
            span: &BTreeSet<u32>,
            target: usize,
            current: Vec<u32>,
            min_gen: u32,
        ) -> Option<Vec<u32>> {
            if current.len() == target {
                return Some(current);
            }
            for y in min_gen..t.n {
                if current.binary_search(&y).is_ok() {
                    continue;
                }
                let mut gens = current.clone();
                gens.push(y);
                let h = t.generated(&gens);
                if h.len() > target || target % h.len() != 0 {
                    continue;
                }
                if h.iter().any(|e| *e != 0 && span.contains(e)) {
                    continue;
                }
                if let Some(found) = dfs(t, span, target, h, y + 1) {
                    return Some(found);
                }
            }
            None
        }
        dfs(self, span, target, vec![0], 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn basis_of_various_groups() {
        for orders in [
            vec![2u32, 4],
            vec![2, 2, 2],
            vec![3, 3],
            vec![2, 3],
            vec![4, 6],
            vec![8],
        ] {
            let g = make_group(&orders).unwrap();
            let els: Vec<_> = g.elements().collect();
            let t = AddTable::for_subgroup(&g, &els);
            let basis = t.basis();
            let product: u32 = basis.iter().map(|&(_, o)| o).product();
            assert_eq!(product, g.order(), "basis spans {orders:?}");
            for w in basis.windows(2) {
                assert_eq!(w[0].1 % w[1].1, 0, "invariant factors divide");
            }
            for &(e, o) in &basis {
                assert_eq!(t.order_of(e), o);
            }
        }
    }
}
