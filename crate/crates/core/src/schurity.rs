//! Deciding schurity.
//!
//! The Cayley configuration of an S-ring is the complete arc-colored digraph
//! on the group whose color at `(g, h)` is the class index of `h - g`. The
//! ring is schurian exactly when the orbits of the identity-vertex
//! stabilizer of the configuration's color-automorphism group coincide with
//! the basic sets. Orbits are computed by backtracking over images of one
//! vertex at a time, with iterated color-degree partition refinement for
//! pruning and union-find accumulation of discovered automorphisms.

use crate::group::aut::automorphism_group;
use crate::group::Elem;
use crate::sring::{class_stabilizer, SRing};
use crate::{Result, SchurError};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

/// Hard ceiling on the number of vertices.
pub const MAX_VERTICES: u32 = 128;

/// Default per-instance time budget for the stabilizer-orbit search.
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(300);

/// The arc coloring of the complete digraph on the group.
#[derive(Debug, Clone)]
pub struct CayleyConfiguration {
    n: u32,
    num_colors: u32,
    colors: Vec<u32>, // row-major n x n
}

impl CayleyConfiguration {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    #[inline]
    pub fn color(&self, g: u32, h: u32) -> u32 {
        self.colors[(g as usize) * (self.n as usize) + h as usize]
    }

    /// Does the permutation `pi` (as a table) preserve every color?
    pub fn preserved_by(&self, pi: &[u32]) -> bool {
        for g in 0..self.n {
            for h in 0..self.n {
                if self.color(pi[g as usize], pi[h as usize]) != self.color(g, h) {
                    return false;
                }
            }
        }
        true
    }
}

/// Build the configuration with `color(g, h)` the class of `h - g` and check
/// right-translation invariance.
pub fn cayley_configuration(a: &SRing) -> CayleyConfiguration {
    let g = a.group();
    let n = g.order();
    let mut colors = vec![0u32; (n as usize) * (n as usize)];
    for x in 0..n {
        for y in 0..n {
            colors[(x as usize) * (n as usize) + y as usize] =
                a.class_index_of(g.sub(y, x)) as u32;
        }
    }
    let cfg = CayleyConfiguration {
        n,
        num_colors: a.rank() as u32,
        colors,
    };
    for t in 0..n {
        let pi: Vec<u32> = (0..n).map(|x| g.add(x, t)).collect();
        assert!(
            cfg.preserved_by(&pi),
            "right translation must preserve the configuration"
        );
    }
    cfg
}

/// Verdict of the schurity test.
#[derive(Debug, Clone)]
pub struct SchurityVerdict {
    pub schurian: bool,
    pub stabilizer_orbits: Vec<Vec<Elem>>,
    /// A basic set and the orbit family refining it, when they differ.
    pub witness: Option<(Vec<Elem>, Vec<Vec<Elem>>)>,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = x;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }

    fn same(&mut self, a: u32, b: u32) -> bool {
        self.find(a) == self.find(b)
    }
}

/// Paired ordered partitions of the domain and codomain vertex sets. Cells
/// correspond by index; the search maps domain cell k into codomain cell k.
#[derive(Clone)]
struct Coloring {
    dcells: Vec<Vec<u32>>,
    ccells: Vec<Vec<u32>>,
}

impl Coloring {
    fn initial(cfg: &CayleyConfiguration) -> Self {
        // identity vertex individualized, the rest split by color from 0
        let mut by_color: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for v in 1..cfg.n {
            by_color.entry(cfg.color(0, v)).or_default().push(v);
        }
        let mut dcells = vec![vec![0u32]];
        for (_, cell) in by_color {
            dcells.push(cell);
        }
        Coloring {
            ccells: dcells.clone(),
            dcells,
        }
    }

    /// Iterated color-degree refinement of both sides in lockstep. Returns
    /// false when the cell structures become incompatible (no isomorphism of
    /// the partial configurations is possible).
    fn refine(&mut self, cfg: &CayleyConfiguration) -> bool {
        let n = cfg.n as usize;
        loop {
            let k = self.dcells.len();
            if self.ccells.len() != k {
                return false;
            }
            let mut dcell_of = vec![0u32; n];
            let mut ccell_of = vec![0u32; n];
            for (i, cell) in self.dcells.iter().enumerate() {
                for &v in cell {
                    dcell_of[v as usize] = i as u32;
                }
            }
            for (i, cell) in self.ccells.iter().enumerate() {
                for &v in cell {
                    ccell_of[v as usize] = i as u32;
                }
            }
            let sig = |v: u32, cell_of: &[u32]| -> Vec<u32> {
                let mut s: Vec<u32> = (0..cfg.n)
                    .filter(|&u| u != v)
                    .map(|u| {
                        (cell_of[u as usize] * cfg.num_colors + cfg.color(v, u))
                            * cfg.num_colors
                            + cfg.color(u, v)
                    })
                    .collect();
                s.sort_unstable();
                s
            };
            let mut new_d: Vec<Vec<u32>> = Vec::with_capacity(k);
            let mut new_c: Vec<Vec<u32>> = Vec::with_capacity(k);
            let mut changed = false;
            for i in 0..k {
                if self.dcells[i].len() == 1 && self.ccells[i].len() == 1 {
                    new_d.push(self.dcells[i].clone());
                    new_c.push(self.ccells[i].clone());
                    continue;
                }
                if self.dcells[i].len() != self.ccells[i].len() {
                    return false;
                }
                let mut dsplit: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
                for &v in &self.dcells[i] {
                    dsplit.entry(sig(v, &dcell_of)).or_default().push(v);
                }
                let mut csplit: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
                for &v in &self.ccells[i] {
                    csplit.entry(sig(v, &ccell_of)).or_default().push(v);
                }
                if dsplit.len() != csplit.len() {
                    return false;
                }
                for ((dk, dv), (ck, cv)) in dsplit.into_iter().zip(csplit) {
                    if dk != ck || dv.len() != cv.len() {
                        return false;
                    }
                    if dv.len() < self.dcells[i].len() {
                        changed = true;
                    }
                    new_d.push(dv);
                    new_c.push(cv);
                }
            }
            self.dcells = new_d;
            self.ccells = new_c;
            if !changed {
                return true;
            }
        }
    }

    /// Individualize domain vertex `v` (in cell `ci`) to codomain vertex `w`.
    fn individualize(&mut self, ci: usize, v: u32, w: u32) {
        let dcell: Vec<u32> = self.dcells[ci].iter().copied().filter(|&x| x != v).collect();
        let ccell: Vec<u32> = self.ccells[ci].iter().copied().filter(|&x| x != w).collect();
        self.dcells[ci] = vec![v];
        self.ccells[ci] = vec![w];
        self.dcells.insert(ci + 1, dcell);
        self.ccells.insert(ci + 1, ccell);
    }

    fn first_branch_cell(&self) -> Option<usize> {
        self.dcells.iter().position(|c| c.len() > 1)
    }

    fn to_map(&self, n: usize) -> Vec<u32> {
        let mut pi = vec![0u32; n];
        for (d, c) in self.dcells.iter().zip(&self.ccells) {
            pi[d[0] as usize] = c[0];
        }
        pi
    }
}

struct OrbitSearch<'a> {
    cfg: &'a CayleyConfiguration,
    deadline: Option<Instant>,
}

impl<'a> OrbitSearch<'a> {
    fn check_time(&self) -> Result<()> {
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                return Err(SchurError::Timeout(
                    "stabilizer-orbit search exceeded its budget".into(),
                ));
            }
        }
        Ok(())
    }

    /// Exhaustive search for one color automorphism extending the current
    /// coloring; `None` means no extension exists.
    fn extend(&self, coloring: Coloring) -> Result<Option<Vec<u32>>> {
        self.check_time()?;
        let mut coloring = coloring;
        if !coloring.refine(self.cfg) {
            return Ok(None);
        }
        let Some(ci) = coloring.first_branch_cell() else {
            let pi = coloring.to_map(self.cfg.n as usize);
            if self.cfg.preserved_by(&pi) {
                return Ok(Some(pi));
            }
            return Ok(None);
        };
        let v = coloring.dcells[ci][0];
        let targets = coloring.ccells[ci].clone();
        for w in targets {
            let mut child = coloring.clone();
            child.individualize(ci, v, w);
            if let Some(pi) = self.extend(child)? {
                return Ok(Some(pi));
            }
        }
        Ok(None)
    }

    /// Search for an automorphism fixing vertex 0 and sending `b` to `v`.
    fn search_pair(&self, root: &Coloring, b: u32, v: u32) -> Result<Option<Vec<u32>>> {
        let Some(ci) = root
            .dcells
            .iter()
            .position(|c| c.contains(&b))
            .filter(|&ci| root.ccells[ci].contains(&v))
        else {
            return Ok(None);
        };
        if root.dcells[ci].len() == 1 {
            return Ok(None);
        }
        let mut child = root.clone();
        child.individualize(ci, b, v);
        self.extend(child)
    }
}

/// Orbits of the identity-vertex stabilizer of the color-automorphism group.
///
/// `seeds` may carry permutation tables of already-known color automorphisms
/// fixing vertex 0; they accelerate the search but never affect the result.
pub fn stabilizer_orbits_seeded(
    cfg: &CayleyConfiguration,
    seeds: &[Vec<u32>],
    deadline: Option<Instant>,
) -> Result<Vec<Vec<Elem>>> {
    let n = cfg.n;
    if n > MAX_VERTICES {
        return Err(SchurError::TooLarge(format!(
            "configuration has {n} vertices, bound is {MAX_VERTICES}"
        )));
    }
    let mut uf = UnionFind::new(n as usize);
    for pi in seeds {
        debug_assert!(pi[0] == 0 && cfg.preserved_by(pi));
        for i in 0..n {
            uf.union(i, pi[i as usize]);
        }
    }
    let mut root = Coloring::initial(cfg);
    let ok = root.refine(cfg);
    debug_assert!(ok, "a configuration is compatible with itself");
    let search = OrbitSearch { cfg, deadline };
    for b in 1..n {
        let ci = root
            .dcells
            .iter()
            .position(|c| c.contains(&b))
            .expect("vertex in some cell");
        let mut failed: Vec<u32> = Vec::new();
        let candidates: Vec<u32> = root.ccells[ci].clone();
        for v in candidates {
            if v == b || uf.same(b, v) {
                continue;
            }
            if failed.iter().any(|&u| uf.same(u, v)) {
                continue;
            }
            match search.search_pair(&root, b, v)? {
                Some(pi) => {
                    for i in 0..n {
                        uf.union(i, pi[i as usize]);
                    }
                }
                None => failed.push(v),
            }
        }
    }
    let mut orbit_map: BTreeMap<u32, Vec<Elem>> = BTreeMap::new();
    for x in 0..n {
        orbit_map.entry(uf.find(x)).or_default().push(x);
    }
    Ok(orbit_map.into_values().collect())
}

pub fn stabilizer_orbits(
    cfg: &CayleyConfiguration,
    deadline: Option<Instant>,
) -> Result<Vec<Vec<Elem>>> {
    stabilizer_orbits_seeded(cfg, &[], deadline)
}

/// Is the ring schurian? The stabilizer orbits always refine the basic sets;
/// schurity is the equality case.
pub fn is_schurian(a: &SRing, budget: Option<Duration>) -> Result<SchurityVerdict> {
    let cfg = cayley_configuration(a);
    let deadline = budget.map(|b| Instant::now() + b);
    // class-stabilizing group automorphisms are color automorphisms fixing 0
    let seeds: Vec<Vec<u32>> = match automorphism_group(a.group()) {
        Ok(aut) => class_stabilizer(a, &aut)
            .elements()
            .iter()
            .map(|s| s.table().to_vec())
            .collect(),
        Err(_) => Vec::new(),
    };
    let orbits = stabilizer_orbits_seeded(&cfg, &seeds, deadline)?;
    let schurian = orbits == a.basic_sets();
    let witness = if schurian {
        None
    } else {
        a.basic_sets()
            .iter()
            .find(|class| !orbits.contains(class))
            .map(|class| {
                let parts: Vec<Vec<Elem>> = orbits
                    .iter()
                    .filter(|o| class.binary_search(&o[0]).is_ok())
                    .cloned()
                    .collect();
                (class.clone(), parts)
            })
    };
    Ok(SchurityVerdict {
        schurian,
        stabilizer_orbits: orbits,
        witness,
    })
}

/// Brute-force reference: scan all permutations fixing vertex 0 and collect
/// the orbit partition of the color-preserving ones. Exponential; usable for
/// n at most about 10.
pub fn stabilizer_orbits_brute_force(cfg: &CayleyConfiguration) -> Result<Vec<Vec<Elem>>> {
    let n = cfg.n as usize;
    if n > 10 {
        return Err(SchurError::TooLarge(format!(
            "brute-force orbit scan bounded at 10 vertices, got {n}"
        )));
    }
    let mut uf = UnionFind::new(n);
    let mut perm: Vec<u32> = (1..n as u32).collect();
    let mut apply = |perm: &[u32], uf: &mut UnionFind| {
        let mut pi = Vec::with_capacity(n);
        pi.push(0);
        pi.extend_from_slice(perm);
        if cfg.preserved_by(&pi) {
            for (i, &v) in pi.iter().enumerate() {
                uf.union(i as u32, v);
            }
        }
    };
    // Heap's algorithm over the non-identity vertices
    apply(&perm, &mut uf);
    let mut stack = vec![0usize; perm.len()];
    let mut i = 0;
    while i < perm.len() {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            apply(&perm, &mut uf);
            stack[i] += 1;
            i = 0;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
    let mut orbit_map: BTreeMap<u32, Vec<Elem>> = BTreeMap::new();
    for x in 0..n as u32 {
        orbit_map.entry(uf.find(x)).or_default().push(x);
    }
    Ok(orbit_map.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::aut::{AutSubgroup, Automorphism};
    use crate::group::make_group;
    use crate::sring::{cyclotomic_sring, SRing};

    #[test]
    fn configuration_shape() {
        let c5 = make_group(&[5]).unwrap();
        let zg = SRing::group_ring(&c5);
        let cfg = cayley_configuration(&zg);
        for g in 0..5 {
            assert_eq!(cfg.color(g, g), 0);
        }
        assert_eq!(cfg.num_colors(), 5);

        let r2 = SRing::rank_two(&c5);
        assert_eq!(cayley_configuration(&r2).num_colors(), 2);
    }

    #[test]
    fn group_ring_and_rank_two_orbits() {
        let c6 = make_group(&[2, 3]).unwrap();
        let zg = SRing::group_ring(&c6);
        let v = is_schurian(&zg, None).unwrap();
        assert!(v.schurian);
        assert_eq!(v.stabilizer_orbits.len(), 6);

        let r2 = SRing::rank_two(&c6);
        let v = is_schurian(&r2, None).unwrap();
        assert!(v.schurian);
        assert_eq!(v.stabilizer_orbits.len(), 2);
    }

    #[test]
    fn cyclotomic_rings_are_schurian() {
        let e9 = make_group(&[3, 3]).unwrap();
        let tau = AutSubgroup::from_generators(&e9, vec![Automorphism::inversion(&e9)]);
        let a = cyclotomic_sring(&tau);
        assert_eq!(a.rank(), 5);
        let v = is_schurian(&a, None).unwrap();
        assert!(v.schurian);
        assert_eq!(v.stabilizer_orbits, a.basic_sets());
    }

    #[test]
    fn brute_force_agreement_small() {
        for orders in [vec![4u32], vec![5], vec![2, 3], vec![7], vec![2, 2]] {
            let g = make_group(&orders).unwrap();
            let rings = [SRing::group_ring(&g), SRing::rank_two(&g)];
            for a in rings {
                let cfg = cayley_configuration(&a);
                let fast = stabilizer_orbits(&cfg, None).unwrap();
                let slow = stabilizer_orbits_brute_force(&cfg).unwrap();
                assert_eq!(fast, slow, "orders {orders:?}");
            }
        }
    }

    #[test]
    fn orbits_refine_basic_sets() {
        let c8 = make_group(&[8]).unwrap();
        let a =
            crate::sring::verify_sring(&c8, &[vec![0], vec![1, 7], vec![2, 6], vec![3, 5], vec![4]])
                .unwrap();
        let v = is_schurian(&a, None).unwrap();
        for orbit in &v.stabilizer_orbits {
            let class = a.class_of(orbit[0]);
            assert!(orbit.iter().all(|&x| class.binary_search(&x).is_ok()));
        }
    }
}
