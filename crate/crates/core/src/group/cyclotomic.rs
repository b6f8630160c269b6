//! Exact arithmetic in `Z[x]/(Phi_m(x))`, the ring of cyclotomic integers
//! of conductor `m`.
//!
//! Values are integer coefficient vectors of length `deg Phi_m`. Equality is
//! decided after reduction modulo the cyclotomic polynomial, so sums of
//! roots of unity compare exactly; no floating tolerance is ever
//! authoritative.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Shared per-conductor data: the cyclotomic polynomial and reduction rows
/// for `x^k`, `0 <= k < 2m`.
#[derive(Debug)]
pub struct CycloRing {
    m: u32,
    degree: usize,
    reductions: Vec<Vec<i64>>,
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials (monic divisor assumed).
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quot[i - dd] = c;
        for j in 0..=dd {
            rem[i - dd + j] -= c * den[j];
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "division must be exact");
    quot
}

fn cyclotomic_poly(m: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by the product of Phi_d over proper divisors d of m
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    let mut den = vec![1i64];
    for d in 1..m {
        if m % d == 0 {
            den = poly_mul(&den, &cyclotomic_poly(d, memo));
        }
    }
    let p = poly_div_exact(&num, &den);
    memo.insert(m, p.clone());
    p
}

impl CycloRing {
    /// Shared handle for the given conductor.
    pub fn get(m: u32) -> Arc<CycloRing> {
        static REGISTRY: OnceLock<Mutex<HashMap<u32, Arc<CycloRing>>>> = OnceLock::new();
        let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = reg.lock().expect("cyclotomic registry poisoned");
        if let Some(r) = guard.get(&m) {
            return Arc::clone(r);
        }
        let mut memo = HashMap::new();
        let phi = cyclotomic_poly(m.max(1), &mut memo);
        let degree = phi.len() - 1;
        // reduction rows: x^k as a vector in the power basis 1..x^(degree-1)
        let mut reductions: Vec<Vec<i64>> = Vec::with_capacity(2 * m as usize);
        for k in 0..(2 * m.max(1)) as usize {
            if k < degree {
                let mut row = vec![0i64; degree];
                row[k] = 1;
                reductions.push(row);
            } else {
                // x^k = x * x^(k-1), then substitute x^degree
                let prev = reductions[k - 1].clone();
                let mut row = vec![0i64; degree + 1];
                row[1..=degree].copy_from_slice(&prev);
                let lead = row[degree];
                let mut reduced = vec![0i64; degree];
                reduced[..degree].copy_from_slice(&row[..degree]);
                if lead != 0 {
                    for j in 0..degree {
                        reduced[j] -= lead * phi[j];
                    }
                }
                reductions.push(reduced);
            }
        }
        let ring = Arc::new(CycloRing {
            m: m.max(1),
            degree,
            reductions,
        });
        guard.insert(m, Arc::clone(&ring));
        ring
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// An element of `Z[x]/(Phi_m(x))`.
#[derive(Clone)]
pub struct CyclotomicInteger {
    ring: Arc<CycloRing>,
    coeffs: Vec<i64>,
}

impl PartialEq for CyclotomicInteger {
    fn eq(&self, other: &Self) -> bool {
        self.ring.m == other.ring.m && self.coeffs == other.coeffs
    }
}
impl Eq for CyclotomicInteger {}

impl fmt::Debug for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}{:?}", self.ring.m, self.coeffs)
    }
}

impl CyclotomicInteger {
    pub fn zero(m: u32) -> Self {
        let ring = CycloRing::get(m);
        let coeffs = vec![0; ring.degree];
        CyclotomicInteger { ring, coeffs }
    }

    pub fn from_int(m: u32, v: i64) -> Self {
        let mut out = Self::zero(m);
        if out.ring.degree > 0 {
            out.coeffs[0] = v;
            // conductor 1: Phi_1 = x - 1, so the basis vector is 1 anyway
        }
        out
    }

    /// The primitive root power `zeta_m^k`.
    pub fn root_power(m: u32, k: u32) -> Self {
        let ring = CycloRing::get(m);
        let coeffs = ring.reductions[(k % ring.m) as usize].clone();
        CyclotomicInteger { ring, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.ring.m
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ring.m, other.ring.m, "conductor mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicInteger {
            ring: Arc::clone(&self.ring),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.ring.m, other.ring.m, "conductor mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CyclotomicInteger {
            ring: Arc::clone(&self.ring),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicInteger {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ring.m, other.ring.m, "conductor mismatch");
        let deg = self.ring.degree;
        let mut coeffs = vec![0i64; deg];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let row = &self.ring.reductions[i + j];
                for t in 0..deg {
                    coeffs[t] += a * b * row[t];
                }
            }
        }
        CyclotomicInteger {
            ring: Arc::clone(&self.ring),
            coeffs,
        }
    }

    /// Add `zeta_m^k` in place; the workhorse for character sums.
    pub fn add_root_power(&mut self, k: u32) {
        let row = &self.ring.reductions[(k % self.ring.m) as usize];
        for (c, r) in self.coeffs.iter_mut().zip(row) {
            *c += r;
        }
    }

    /// Numeric evaluation at `exp(2*pi*i/m)`; used only for sanity checks,
    /// never for equality decisions.
    pub fn eval_f64(&self) -> (f64, f64) {
        let m = self.ring.m as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / m;
                re += c as f64 * theta.cos();
                im += c as f64 * theta.sin();
            }
        }
        (re, im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_polynomials() {
        let mut memo = HashMap::new();
        assert_eq!(cyclotomic_poly(1, &mut memo), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2, &mut memo), vec![1, 1]);
        assert_eq!(cyclotomic_poly(3, &mut memo), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4, &mut memo), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6, &mut memo), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(15, &mut memo).len() - 1, 8);
    }

    #[test]
    fn root_sum_identities() {
        // zeta_3 + zeta_3^2 = -1
        let s = CyclotomicInteger::root_power(3, 1).add(&CyclotomicInteger::root_power(3, 2));
        assert_eq!(s, CyclotomicInteger::from_int(3, -1));
        // sum of all m-th roots is 0
        for m in 2..=12u32 {
            let mut s = CyclotomicInteger::zero(m);
            for k in 0..m {
                s.add_root_power(k);
            }
            assert!(s.is_zero(), "m={m}");
        }
    }

    #[test]
    fn ring_laws_small() {
        let a = CyclotomicInteger::root_power(12, 5);
        let b = CyclotomicInteger::root_power(12, 7);
        let c = CyclotomicInteger::root_power(12, 11);
        assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // zeta^5 * zeta^7 = zeta^12 = 1
        assert_eq!(a.mul(&b), CyclotomicInteger::from_int(12, 1));
    }
}
