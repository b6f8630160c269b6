//! Canonical forms under Cayley isomorphism.
//!
//! The canonical form of an S-ring is the lexicographic minimum, over all
//! group automorphisms, of its sorted-classes encoding. Two S-rings over the
//! same group are Cayley isomorphic exactly when their canonical forms
//! coincide; across different presentations of abstractly isomorphic groups
//! a fixed isomorphism is composed with the automorphisms.

use super::{normalize_classes, SRing};
use crate::group::aut::{automorphism_group, AutSubgroup, Automorphism};
use crate::group::{AbelianGroup, Elem};
use crate::Result;
use std::sync::Arc;

/// The sorted-classes encoding of a ring (its normalized class list).
pub type Encoding = Vec<Vec<Elem>>;

/// Image of the partition under an automorphism, renormalized.
pub fn apply_automorphism(a: &SRing, sigma: &Automorphism) -> SRing {
    let mut classes: Vec<Vec<Elem>> = a
        .basic_sets()
        .iter()
        .map(|class| class.iter().map(|&e| sigma.apply(e)).collect())
        .collect();
    normalize_classes(&mut classes);
    SRing::trusted(a.group(), classes)
}

fn image_encoding(a: &SRing, table: &[Elem]) -> Encoding {
    let mut classes: Vec<Vec<Elem>> = a
        .basic_sets()
        .iter()
        .map(|class| {
            let mut img: Vec<Elem> = class.iter().map(|&e| table[e as usize]).collect();
            img.sort_unstable();
            img
        })
        .collect();
    classes.sort_by_key(|c| c[0]);
    classes
}

/// Lexicographic minimum of the encoding over the given automorphisms.
pub fn canonical_form_with(a: &SRing, aut: &AutSubgroup) -> Encoding {
    let mut best: Option<Encoding> = None;
    for sigma in aut.elements() {
        let enc = image_encoding(a, sigma.table());
        if best.as_ref().map_or(true, |b| &enc < b) {
            best = Some(enc);
        }
    }
    best.expect("automorphism group contains the identity")
}

pub fn canonical_form(a: &SRing) -> Result<Encoding> {
    let aut = automorphism_group(a.group())?;
    Ok(canonical_form_with(a, &aut))
}

fn mod_inverse(a: u32, m: u32) -> u32 {
    // extended euclid; gcd(a, m) must be 1
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i64) as u32
}

fn prime_power_parts(n: u32) -> Vec<(u32, u32)> {
    // (p, q = maximal power of p dividing n)
    let mut out = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut q = 1;
            while rest % p == 0 {
                rest /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if rest > 1 {
        out.push((rest, rest));
    }
    out
}

/// A fixed isomorphism between two presentations of the same abstract group,
/// as an element table, or `None` if the groups are not isomorphic. The map
/// matches up the primary cyclic components of both presentations.
pub fn fixed_isomorphism(g: &Arc<AbelianGroup>, h: &Arc<AbelianGroup>) -> Option<Vec<Elem>> {
    // primary components: (p, q, factor index, generator)
    let parts = |gr: &Arc<AbelianGroup>| -> Vec<(u32, u32, usize)> {
        let mut out = Vec::new();
        for (i, &n) in gr.orders().iter().enumerate() {
            for (p, q) in prime_power_parts(n) {
                out.push((p, q, i));
            }
        }
        out.sort();
        out
    };
    let pg = parts(g);
    let ph = parts(h);
    if pg.iter().map(|&(p, q, _)| (p, q)).collect::<Vec<_>>()
        != ph.iter().map(|&(p, q, _)| (p, q)).collect::<Vec<_>>()
    {
        return None;
    }
    // image of each element: decompose over the primary generators of g and
    // re-assemble over the matching generators of h
    let mut table = vec![0 as Elem; g.order() as usize];
    for e in g.elements() {
        let coords = g.coords(e);
        let mut img = 0 as Elem;
        for (k, &(_p, q, i)) in pg.iter().enumerate() {
            let ni = g.orders()[i];
            let w = ni / q;
            let a = ((coords[i] as u64 * mod_inverse(w % q, q) as u64) % q as u64) as u32;
            let (_hp, hq, hi) = ph[k];
            debug_assert_eq!(hq, q);
            let hgen = h.mul_int(h.orders()[hi] / hq, h.unit(hi));
            img = h.add(img, h.mul_int(a, hgen));
        }
        table[e as usize] = img;
    }
    // bijectivity follows from the matched decompositions
    debug_assert!({
        let mut seen = vec![false; h.order() as usize];
        table.iter().all(|&v| {
            let fresh = !seen[v as usize];
            seen[v as usize] = true;
            fresh
        })
    });
    Some(table)
}

/// Cayley isomorphism test. Rings over non-isomorphic groups compare false;
/// over different presentations the fixed isomorphism is applied first.
pub fn cayley_isomorphic(a: &SRing, b: &SRing) -> Result<bool> {
    if a.group().orders() == b.group().orders() {
        if a.rank() != b.rank() {
            return Ok(false);
        }
        let aut = automorphism_group(a.group())?;
        return Ok(canonical_form_with(a, &aut) == canonical_form_with(b, &aut));
    }
    let Some(table) = fixed_isomorphism(b.group(), a.group()) else {
        return Ok(false);
    };
    if a.rank() != b.rank() {
        return Ok(false);
    }
    let mut moved: Vec<Vec<Elem>> = b
        .basic_sets()
        .iter()
        .map(|class| class.iter().map(|&e| table[e as usize]).collect())
        .collect();
    normalize_classes(&mut moved);
    let b_moved = SRing::trusted(a.group(), moved);
    let aut = automorphism_group(a.group())?;
    Ok(canonical_form_with(a, &aut) == canonical_form_with(&b_moved, &aut))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use crate::sring::{tensor_product, wreath_product, SRing};
    use crate::group::Subgroup;

    #[test]
    fn images_are_isomorphic() {
        let e9 = make_group(&[3, 3]).unwrap();
        let aut = automorphism_group(&e9).unwrap();
        let c = Subgroup::from_generators(&e9, &[e9.elem(&[1, 0])]);
        let c3 = make_group(&[3]).unwrap();
        let a = wreath_product(&c, &SRing::rank_two(&c3), &SRing::group_ring(&c3)).unwrap();
        for sigma in aut.elements().iter().step_by(7) {
            let b = apply_automorphism(&a, sigma);
            assert!(cayley_isomorphic(&a, &b).unwrap());
        }
    }

    #[test]
    fn distinct_rings_are_not_isomorphic() {
        let e9 = make_group(&[3, 3]).unwrap();
        let r2 = SRing::rank_two(&e9);
        let zg = SRing::group_ring(&e9);
        assert!(!cayley_isomorphic(&r2, &zg).unwrap());

        // the two rank-4 wreath products are not Cayley isomorphic
        let c = Subgroup::from_generators(&e9, &[e9.elem(&[1, 0])]);
        let c3 = make_group(&[3]).unwrap();
        let w1 = wreath_product(&c, &SRing::group_ring(&c3), &SRing::rank_two(&c3)).unwrap();
        let w2 = wreath_product(&c, &SRing::rank_two(&c3), &SRing::group_ring(&c3)).unwrap();
        assert_eq!(w1.rank(), 4);
        assert_eq!(w2.rank(), 4);
        assert!(!cayley_isomorphic(&w1, &w2).unwrap());
    }

    #[test]
    fn cross_presentation_isomorphism() {
        // C3 x C5 presented as [3,5] versus [15]
        let a_group = make_group(&[3, 5]).unwrap();
        let b_group = make_group(&[15]).unwrap();
        let a = SRing::rank_two(&a_group);
        let b = SRing::rank_two(&b_group);
        assert!(cayley_isomorphic(&a, &b).unwrap());

        let c3 = make_group(&[3]).unwrap();
        let c5 = make_group(&[5]).unwrap();
        let t = tensor_product(&SRing::rank_two(&c3), &SRing::rank_two(&c5)).unwrap();
        let moved = fixed_isomorphism(t.group(), &b_group).unwrap();
        let mut classes: Vec<Vec<Elem>> = t
            .basic_sets()
            .iter()
            .map(|cl| cl.iter().map(|&e| moved[e as usize]).collect())
            .collect();
        normalize_classes(&mut classes);
        assert!(crate::sring::verify_sring(&b_group, &classes).is_ok());
    }
}
