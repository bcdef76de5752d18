//! The dyadic families.
//!
//! `dyadic_spec(K)` stacks layers `E_1..E_K` on top of `E_0`, where `E_k`
//! joins consecutive odd multiples of `2^(k-1)`. Its balls grow faster than
//! any polynomial and slower than any exponential. `poly_spec(K)` keeps only
//! the layers `E_(2^k)` and grows polynomially.
//!
//! The sequences here are the closed forms for distances and ball bounds in
//! these graphs. Index conventions:
//!
//! * `x(i)` is the distance in `G_i` from 0 to `2^(i-1)`;
//! * `x_tilde(i)` is the distance in the polynomial graph from 0 to
//!   `2^(2^i - 1)`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{make_unit_layer, GraphSpec, LayerSpec};

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// Layer `E_k` for `k >= 1`: period `2^k`, offset `2^(k-1)`, length `2^k`.
pub fn dyadic_layer(k: u32) -> LayerSpec {
    assert!(k >= 1, "dyadic layers start at k = 1");
    let p = pow2(k as u64);
    LayerSpec::new(format!("E_{k}"), p.clone(), [(pow2(k as u64 - 1), p)])
        .expect("dyadic layer is well formed")
}

/// `E_0` plus `E_1..E_K`.
pub fn dyadic_spec(k_max: u32) -> GraphSpec {
    let mut layers = alloc::vec![make_unit_layer()];
    layers.extend((1..=k_max).map(dyadic_layer));
    GraphSpec::new(format!("dyadic(K={k_max})"), layers).expect("dyadic spec is well formed")
}

/// `E_0` plus `E_(2^k)` for `0 <= k <= K`.
pub fn poly_spec(k_max: u32) -> GraphSpec {
    let mut layers = alloc::vec![make_unit_layer()];
    layers.extend((0..=k_max).map(|k| dyadic_layer(1 << k)));
    GraphSpec::new(format!("poly(K={k_max})"), layers).expect("poly spec is well formed")
}

/// `y(n) = (n^2 + 3n + 2) / 2`.
pub fn y(n: u32) -> BigInt {
    let n = BigInt::from(n);
    (&n + 1u32) * (&n + 2u32) / 2u32
}

/// `z(n) = n 2^n + 1`.
pub fn z(n: u32) -> BigInt {
    BigInt::from(n) * pow2(n as u64) + 1u32
}

/// Closed form for `x(i)`: with `y(n) < i <= y(n+1)`,
/// `x(i) = z(n+1) - (y(n+1) - i) 2^n`. `x(1) = z(0) = 1`.
pub fn x_closed(i: u32) -> BigInt {
    assert!(i >= 1, "x is indexed from 1");
    if i == 1 {
        return z(0);
    }
    let i_big = BigInt::from(i);
    let mut n = 0u32;
    while y(n + 1) < i_big {
        n += 1;
    }
    z(n + 1) - (y(n + 1) - i_big) * pow2(n as u64)
}

/// `x(i)` from the min-recursion, memoized from scratch.
pub fn x_recursive(i: u32) -> BigInt {
    DyadicTables::new(i, 0).x(i).clone()
}

/// Distance in `G_i` from 0 to `(2j+1) 2^(i-1)`: `x(i) + |j + 1/2| - 1/2`.
pub fn x_shifted(i: u32, j: i64) -> BigInt {
    let extra = if j >= 0 { j as u64 } else { (-(j + 1)) as u64 };
    x_closed(i) + extra
}

/// `w(i) = max_{1<=k<=i} 2^(k-1) + 2^k ((x(i) - 1)/2 - x(k))`, the largest
/// vertex reachable from 0 in `(x(i) - 1)/2` steps. Defined for `i >= 3`.
pub fn w(i: u32) -> Result<BigInt> {
    if i < 3 {
        return Err(Error::OutOfDomain { what: "w", detail: format!("needs i >= 3, got {i}") });
    }
    Ok(DyadicTables::new(i, 0).w(i))
}

/// `x_tilde(0) = 1`, `x_tilde(i) = 2 x_tilde(i-1) + 2^(2^(i-1) - 1) - 1`.
pub fn x_tilde(i: u32) -> BigInt {
    DyadicTables::new(1, i).x_tilde(i).clone()
}

/// The ball-volume sandwich at radius `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallBounds {
    /// `f(j) = max { n >= 1 : z(n) <= j }`.
    pub f: u32,
    /// `g(j) = 2^(f-1)`.
    pub g: BigInt,
    /// `2 g + 1`.
    pub lower: BigInt,
    /// `16 j^2 (2 g + 1)`.
    pub upper: BigInt,
}

pub fn ball_bounds(j: u64) -> Result<BallBounds> {
    if j < 3 {
        return Err(Error::OutOfDomain {
            what: "ball_bounds",
            detail: format!("needs j >= 3, got {j}"),
        });
    }
    let jb = BigInt::from(j);
    let mut f = 1u32;
    while z(f + 1) <= jb {
        f += 1;
    }
    let g = pow2(f as u64 - 1);
    let lower: BigInt = &g * 2u32 + 1u32;
    let upper = &jb * &jb * 16u32 * &lower;
    Ok(BallBounds { f, g, lower, upper })
}

/// Eagerly built memo tables for `x` (via the min-recursion) and `x_tilde`.
/// Immutable once built.
#[derive(Clone, Debug)]
pub struct DyadicTables {
    // x[i] for 1 <= i <= imax; x[0] unused
    x: Vec<BigInt>,
    xt: Vec<BigInt>,
}

impl DyadicTables {
    pub fn new(imax: u32, itmax: u32) -> Self {
        let imax = imax.max(2) as usize;
        let mut x = Vec::with_capacity(imax + 1);
        x.push(BigInt::zero());
        x.push(BigInt::one());
        x.push(BigInt::from(2));
        for i in 3..=imax {
            // full scan of k; unimodality is tested, not assumed
            let best = (1..i)
                .map(|k| objective_from(&x[k], i as u32, k as u32))
                .min()
                .unwrap();
            x.push(best);
        }
        let mut xt = Vec::with_capacity(itmax as usize + 1);
        xt.push(BigInt::one());
        for i in 1..=itmax {
            let prev: &BigInt = &xt[i as usize - 1];
            let next = prev * 2u32 + pow2((1u64 << (i - 1)) - 1) - 1u32;
            xt.push(next);
        }
        DyadicTables { x, xt }
    }

    pub fn imax(&self) -> u32 {
        (self.x.len() - 1) as u32
    }

    pub fn x(&self, i: u32) -> &BigInt {
        assert!(i >= 1, "x is indexed from 1");
        &self.x[i as usize]
    }

    pub fn x_tilde(&self, i: u32) -> &BigInt {
        &self.xt[i as usize]
    }

    /// `2 x(k) + 2^(i-k-1) - 1`, the path length through level `k`.
    pub fn objective(&self, i: u32, k: u32) -> BigInt {
        assert!(0 < k && k < i);
        objective_from(self.x(k), i, k)
    }

    pub fn w(&self, i: u32) -> BigInt {
        assert!(i >= 3 && i <= self.imax());
        let half: BigInt = (self.x(i) - 1u32) / 2u32;
        (1..=i)
            .map(|k| pow2(k as u64 - 1) + pow2(k as u64) * (&half - self.x(k)))
            .max()
            .unwrap()
    }
}

fn objective_from(xk: &BigInt, i: u32, k: u32) -> BigInt {
    xk * 2u32 + pow2((i - k - 1) as u64) - 1u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{degree, edges_in_window, neighbors};

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn y_and_z() {
        assert_eq!([y(1), y(2), y(3)], [b(3), b(6), b(10)]);
        assert_eq!([z(1), z(2), z(3)], [b(3), b(9), b(25)]);
        assert_eq!(z(5), b(161));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(x_closed(6), b(9));
        assert_eq!(x_closed(4), b(5));
        assert_eq!(x_closed(2), b(2));
        assert_eq!(x_closed(20), b(145));
        assert_eq!(x_closed(22), b(193));
    }

    #[test]
    fn recursion_examples() {
        let t = DyadicTables::new(5, 0);
        assert_eq!(x_recursive(5), b(7));
        assert_eq!(x_recursive(3), b(3));
        // minimum at k = 2 and k = 3
        let vals: Vec<_> = (1..5).map(|k| t.objective(5, k)).collect();
        assert_eq!(vals, [b(9), b(7), b(7), b(10)]);
    }

    #[test]
    fn shifted() {
        assert_eq!(x_shifted(3, 0), b(3));
        assert_eq!(x_shifted(3, -1), b(3));
        assert_eq!(x_shifted(3, 1), b(4));
        assert_eq!(x_shifted(3, -3), b(5));
    }

    #[test]
    fn w_values() {
        assert_eq!(w(4).unwrap(), b(3));
        assert_eq!(w(5).unwrap(), b(6));
        assert!(w(2).is_err());
        for i in 3..=20 {
            assert!(w(i).unwrap() < pow2(i as u64 - 2));
        }
    }

    #[test]
    fn bounds() {
        let bb = ball_bounds(9).unwrap();
        assert_eq!((bb.f, bb.g.clone(), bb.lower.clone(), bb.upper), (2, b(2), b(5), b(6480)));
        let bb = ball_bounds(161).unwrap();
        assert_eq!((bb.f, bb.g.clone(), bb.lower.clone(), bb.upper), (5, b(16), b(33), b(13_686_288)));
        let bb = ball_bounds(3).unwrap();
        assert_eq!((bb.f, bb.g.clone(), bb.lower.clone(), bb.upper), (1, b(1), b(3), b(432)));
        assert!(ball_bounds(2).is_err());
    }

    #[test]
    fn tilde() {
        assert_eq!(x_tilde(0), b(1));
        assert_eq!(x_tilde(1), b(2));
        assert_eq!(x_tilde(2), b(5));
        assert_eq!(x_tilde(3), b(17));
        assert_eq!(x_tilde(4), b(161));
        assert_eq!(x_tilde(5), b(33089));
    }

    #[test]
    fn dyadic_layers() {
        let s1 = dyadic_spec(1);
        let e = edges_in_window(&s1, &b(-3), &b(5)).unwrap();
        assert!(e.contains(&(b(1), b(3))) && e.contains(&(b(-1), b(1))));
        assert!(e.contains(&(b(3), b(5))));
        let s2 = dyadic_spec(2);
        let e = edges_in_window(&s2, &b(-8), &b(8)).unwrap();
        for n in -1..=1 {
            assert!(e.contains(&(b(4 * n - 2), b(4 * n + 2))));
        }
        let s3 = dyadic_spec(3);
        assert_eq!(neighbors(&s3, &b(0)), [b(-1), b(1)]);
        assert_eq!(neighbors(&s3, &b(2)), [b(-2), b(1), b(3), b(6)]);
        assert_eq!(degree(&dyadic_spec(5), &b(6)), 4);
        for k in 0..6 {
            assert_eq!(degree(&dyadic_spec(k), &b(0)), 2);
        }
    }

    #[test]
    fn poly_layers() {
        let labels: Vec<_> = poly_spec(2).layers().iter().map(|l| l.label().into()).collect::<Vec<alloc::string::String>>();
        assert_eq!(labels, ["E_0", "E_1", "E_2", "E_4"]);
        let labels: Vec<_> = poly_spec(0).layers().iter().map(|l| l.label().into()).collect::<Vec<alloc::string::String>>();
        assert_eq!(labels, ["E_0", "E_1"]);
        let nb = neighbors(&poly_spec(2), &b(8));
        for v in [7, 9, -8, 24] {
            assert!(nb.contains(&b(v)));
        }
    }
}
