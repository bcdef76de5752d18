//! The prime-power family: an omega-periodic graph of bounded degree that
//! contains a rooted binary tree, hence has exponential growth.
//!
//! With `p_i` the i-th prime, `l(m) = prod_{i <= 2^m} p_i^i` and
//! `t(m, j) = p_m^j` for `1 <= j <= 2^(m-1)`, layer `E_m` has period
//! `l(m+1)` and joins each `t(m, j)` to `t(m+1, 2j-1)` and `t(m+1, 2j)`.
//! Left endpoints of `E_m` form `L_m = V_m + Z l(m+1)`, right endpoints
//! `R_m = V_(m+1) + Z l(m+1)`, where `V_m = { t(m, j) }`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::graph::{make_unit_layer, GraphSpec, LayerSpec, Vertex};

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut limit = 32usize;
    loop {
        let mut composite = vec![false; limit + 1];
        let mut out = Vec::with_capacity(count);
        for n in 2..=limit {
            if composite[n] {
                continue;
            }
            out.push(n as u64);
            if out.len() == count {
                return out;
            }
            let mut k = n * n;
            while k <= limit {
                composite[k] = true;
                k += n;
            }
        }
        limit *= 2;
    }
}

/// Precomputed primes and moduli for layers up to `max_m`. Immutable.
#[derive(Clone, Debug)]
pub struct PrimeTables {
    max_m: u32,
    primes: Vec<u64>,
    // moduli[m] = l(m) for 1 <= m <= max_m + 1; moduli[0] unused
    moduli: Vec<BigInt>,
}

impl PrimeTables {
    /// Tables sufficient for `prime_layer(m)` with `m <= max_m`, which needs
    /// `l(max_m + 1)` and therefore the first `2^(max_m + 1)` primes.
    pub fn new(max_m: u32) -> Self {
        let max_m = max_m.max(1);
        let primes = first_primes(1usize << (max_m + 1));
        let mut moduli = vec![BigInt::zero()];
        let mut acc = BigInt::one();
        let mut used = 0usize;
        for m in 1..=max_m + 1 {
            let upto = 1usize << m;
            while used < upto {
                acc *= BigInt::from(primes[used]).pow((used + 1) as u32);
                used += 1;
            }
            moduli.push(acc.clone());
        }
        PrimeTables { max_m, primes, moduli }
    }

    pub fn max_m(&self) -> u32 {
        self.max_m
    }

    /// The i-th prime, `prime(1) = 2`.
    pub fn prime(&self, i: usize) -> u64 {
        assert!(i >= 1 && i <= self.primes.len(), "prime index {i} outside tables");
        self.primes[i - 1]
    }

    pub fn l(&self, m: u32) -> &BigInt {
        assert!(m >= 1 && m <= self.max_m + 1, "l({m}) outside tables");
        &self.moduli[m as usize]
    }

    pub fn t(&self, m: u32, j: u64) -> Result<BigInt> {
        if m == 0 || j == 0 || j > 1u64 << (m - 1) {
            return Err(Error::OutOfDomain {
                what: "t",
                detail: format!("needs m >= 1 and 1 <= j <= 2^(m-1), got m={m}, j={j}"),
            });
        }
        Ok(BigInt::from(self.prime(m as usize)).pow(j as u32))
    }

    /// Layer `E_m`.
    pub fn layer(&self, m: u32) -> LayerSpec {
        assert!(m >= 1 && m <= self.max_m, "layer {m} outside tables");
        let mut templates = Vec::with_capacity(1 << m);
        for j in 1..=1u64 << (m - 1) {
            let left = self.t(m, j).unwrap();
            for child in [2 * j - 1, 2 * j] {
                let right = self.t(m + 1, child).unwrap();
                templates.push((left.clone(), right - &left));
            }
        }
        LayerSpec::new(format!("E_{m}"), self.l(m + 1).clone(), templates)
            .expect("prime layer is well formed")
    }

    /// `E_0` plus `E_1..E_M`.
    pub fn spec(&self, m_max: u32) -> GraphSpec {
        let mut layers = vec![make_unit_layer()];
        layers.extend((1..=m_max).map(|m| self.layer(m)));
        GraphSpec::new(format!("prime(M={m_max})"), layers).expect("prime spec is well formed")
    }

    /// `z in L_m`: `z mod l(m+1)` is `p_m^j` with `1 <= j <= 2^(m-1)`.
    pub fn in_l(&self, z: &Vertex, m: u32) -> bool {
        assert!(m >= 1 && m <= self.max_m);
        let r = z.mod_floor(self.l(m + 1));
        is_prime_power(&r, self.prime(m as usize), 1u64 << (m - 1))
    }

    /// `z in R_m`: `z mod l(m+1)` is `p_(m+1)^j` with `1 <= j <= 2^m`.
    pub fn in_r(&self, z: &Vertex, m: u32) -> bool {
        assert!(m >= 1 && m <= self.max_m);
        let r = z.mod_floor(self.l(m + 1));
        is_prime_power(&r, self.prime(m as usize + 1), 1u64 << m)
    }

    /// Level `m` of the tree rooted at 2: `V_(m+1)` ascending.
    pub fn tree_level(&self, m: u32) -> Vec<Vertex> {
        (1..=1u64 << m).map(|j| self.t(m + 1, j).unwrap()).collect()
    }

    /// Parent-child pairs of the tree down to `depth`, level by level.
    pub fn tree_edges(&self, depth: u32) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for m in 1..=depth {
            for j in 1..=1u64 << (m - 1) {
                let parent = self.t(m, j).unwrap();
                for child in [2 * j - 1, 2 * j] {
                    out.push((parent.clone(), self.t(m + 1, child).unwrap()));
                }
            }
        }
        out
    }

    pub fn degree_decomposition(&self, z: &Vertex, m_max: u32) -> DegreeDecomposition {
        let n_left = (1..=m_max).filter(|&m| self.in_l(z, m)).count() as u32;
        let n_right = (1..=m_max).filter(|&m| self.in_r(z, m)).count() as u32;
        DegreeDecomposition { base: 2, n_left, n_right }
    }

    /// Enumerates `L_m` and `R_m` inside `[lo, hi]` for `m <= M` by stepping
    /// each coset, and reports the first point lying in two different
    /// layers' sets on the same side.
    pub fn check_disjoint(&self, m_max: u32, lo: &Vertex, hi: &Vertex) -> Result<DisjointVerdict> {
        if m_max < 2 {
            return Err(Error::OutOfDomain {
                what: "check_disjoint",
                detail: format!("needs M >= 2, got {m_max}"),
            });
        }
        if lo > hi {
            return Err(Error::EmptyWindow { lo: lo.clone(), hi: hi.clone() });
        }
        let mut verdict = DisjointVerdict { pass: true, left_points: 0, right_points: 0, overlap: None };
        for side in [Side::Left, Side::Right] {
            let mut owner: BTreeMap<BigInt, u32> = BTreeMap::new();
            for m in 1..=m_max {
                let modulus = self.l(m + 1);
                let reps = match side {
                    Side::Left => self.tree_level(m - 1),
                    Side::Right => self.tree_level(m),
                };
                for r in reps {
                    let mut a = lo + (&r - lo).mod_floor(modulus);
                    while &a <= hi {
                        match side {
                            Side::Left => verdict.left_points += 1,
                            Side::Right => verdict.right_points += 1,
                        }
                        if let Some(&prev) = owner.get(&a) {
                            if prev != m && verdict.overlap.is_none() {
                                verdict.pass = false;
                                verdict.overlap =
                                    Some(Overlap { vertex: a.clone(), side, layers: (prev, m) });
                            }
                        } else {
                            owner.insert(a.clone(), m);
                        }
                        a += modulus;
                    }
                }
            }
        }
        Ok(verdict)
    }
}

fn is_prime_power(r: &BigInt, p: u64, max_exp: u64) -> bool {
    if r <= &BigInt::one() {
        return false;
    }
    let p = BigInt::from(p);
    let mut r = r.clone();
    let mut e = 0u64;
    loop {
        let (q, rem) = r.div_rem(&p);
        if !rem.is_zero() {
            break;
        }
        r = q;
        e += 1;
        if e > max_exp {
            return false;
        }
    }
    e >= 1 && r.is_one()
}

/// Incidence count at a vertex: `base + 2 n_left + n_right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeDecomposition {
    pub base: u32,
    /// Number of `m` with `z in L_m`.
    pub n_left: u32,
    /// Number of `m` with `z in R_m`.
    pub n_right: u32,
}

impl DegreeDecomposition {
    pub fn degree(&self) -> u32 {
        self.base + 2 * self.n_left + self.n_right
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub vertex: Vertex,
    pub side: Side,
    pub layers: (u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointVerdict {
    pub pass: bool,
    pub left_points: usize,
    pub right_points: usize,
    pub overlap: Option<Overlap>,
}

pub fn prime(i: usize) -> u64 {
    assert!(i >= 1);
    first_primes(i)[i - 1]
}

pub fn l(m: u32) -> BigInt {
    assert!(m >= 1);
    PrimeTables::new(m.saturating_sub(1).max(1)).l(m).clone()
}

pub fn t(m: u32, j: u64) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::OutOfDomain { what: "t", detail: "needs m >= 1".into() });
    }
    let p = prime(m as usize);
    if j == 0 || j > 1u64 << (m - 1) {
        return Err(Error::OutOfDomain {
            what: "t",
            detail: format!("needs 1 <= j <= 2^(m-1), got m={m}, j={j}"),
        });
    }
    Ok(BigInt::from(p).pow(j as u32))
}

pub fn prime_layer(m: u32) -> LayerSpec {
    PrimeTables::new(m).layer(m)
}

pub fn prime_spec(m_max: u32) -> GraphSpec {
    PrimeTables::new(m_max).spec(m_max)
}

pub fn tree_level(m: u32) -> Vec<Vertex> {
    PrimeTables::new(m.max(1)).tree_level(m)
}
