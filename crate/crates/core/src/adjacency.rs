//! Compiled implicit adjacency.
//!
//! A [`GraphSpec`] keeps its numbers as `BigInt`. Traversals compile it once
//! into an [`Adjacency`] over a concrete [`Label`] type: `i64` when every
//! period, offset and length is small enough, `BigInt` otherwise.

use alloc::vec::Vec;
use core::fmt::Debug;
use core::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::graph::GraphSpec;

/// Magnitude bound for the `i64` fast path. Any label and any step stays at
/// or below this, so `v + length` cannot overflow.
pub const SMALL_LIMIT: i64 = 1 << 61;

/// Integer type a traversal runs on.
pub trait Label: Clone + Ord + Hash + Debug {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    /// Nonnegative residue modulo a positive modulus.
    fn residue(&self, modulus: &Self) -> Self;
    fn plus(&self, d: &Self) -> Self;
    fn minus(&self, d: &Self) -> Self;
}

impl Label for i64 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64().filter(|x| x.unsigned_abs() <= SMALL_LIMIT as u64)
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }

    #[inline]
    fn residue(&self, modulus: &Self) -> Self {
        self.rem_euclid(*modulus)
    }

    #[inline]
    fn plus(&self, d: &Self) -> Self {
        self + d
    }

    #[inline]
    fn minus(&self, d: &Self) -> Self {
        self - d
    }
}

impl Label for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }

    fn residue(&self, modulus: &Self) -> Self {
        self.mod_floor(modulus)
    }

    fn plus(&self, d: &Self) -> Self {
        self + d
    }

    fn minus(&self, d: &Self) -> Self {
        self - d
    }
}

#[derive(Clone, Debug)]
struct Template<L> {
    offset: L,
    // residue of the right endpoint, (offset + length) mod period
    end: L,
    length: L,
}

#[derive(Clone, Debug)]
struct Layer<L> {
    period: L,
    templates: Vec<Template<L>>,
}

/// Neighbour oracle for one spec over label type `L`.
#[derive(Clone, Debug)]
pub struct Adjacency<L> {
    layers: Vec<Layer<L>>,
    max_length: L,
}

impl<L: Label> Adjacency<L> {
    /// Compiles `spec`, or returns `None` if some period, offset or length
    /// does not fit `L`.
    pub fn try_new(spec: &GraphSpec) -> Option<Self> {
        let mut layers = Vec::with_capacity(spec.layers().len());
        for layer in spec.layers() {
            let period = L::from_big(layer.period())?;
            let mut templates = Vec::with_capacity(layer.templates().len());
            for t in layer.templates() {
                let end = (t.offset() + t.length()).mod_floor(layer.period());
                templates.push(Template {
                    offset: L::from_big(t.offset())?,
                    end: L::from_big(&end)?,
                    length: L::from_big(t.length())?,
                });
            }
            layers.push(Layer { period, templates });
        }
        let max_length = L::from_big(&spec.max_length())?;
        Some(Adjacency { layers, max_length })
    }

    pub fn max_length(&self) -> &L {
        &self.max_length
    }

    /// Calls `f` once per edge incidence at `v`, layer by layer. An edge
    /// produced by two layers is reported twice.
    #[inline]
    pub fn for_each_incidence(&self, v: &L, mut f: impl FnMut(L)) {
        for layer in &self.layers {
            let r = v.residue(&layer.period);
            for t in &layer.templates {
                if r == t.offset {
                    f(v.plus(&t.length));
                }
                if r == t.end {
                    f(v.minus(&t.length));
                }
            }
        }
    }

    /// Distinct neighbours, ascending.
    pub fn neighbors(&self, v: &L) -> Vec<L> {
        let mut out = Vec::new();
        self.for_each_incidence(v, |u| out.push(u));
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn degree(&self, v: &L) -> usize {
        self.neighbors(v).len()
    }

    pub fn incidence_degree(&self, v: &L) -> usize {
        let mut n = 0;
        self.for_each_incidence(v, |_| n += 1);
        n
    }

    /// Whether `v` has a neighbour outside `[lo, hi]`.
    pub fn leaves_interval(&self, v: &L, lo: &L, hi: &L) -> bool {
        let mut out = false;
        self.for_each_incidence(v, |u| out |= u < *lo || u > *hi);
        out
    }
}

impl Adjacency<BigInt> {
    pub fn new(spec: &GraphSpec) -> Self {
        Self::try_new(spec).expect("BigInt holds every spec value")
    }
}
