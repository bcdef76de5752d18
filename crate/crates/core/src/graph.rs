//! Periodic edge layers and their finite unions.
//!
//! An [`EdgeTemplate`] `(offset, length)` inside a layer of period `p` stands
//! for the edge family `{(offset + k p, offset + k p + length) : k in Z}`. A
//! [`LayerSpec`] is one periodic graph; a [`GraphSpec`] is a finite stack of
//! layers whose first entry is always the nearest-neighbour layer, so every
//! spec is connected.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::adjacency::Adjacency;
use crate::error::{Error, Result};

/// Vertex labels are arbitrary-precision integers.
pub type Vertex = BigInt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeTemplate {
    offset: BigInt,
    length: BigInt,
}

impl EdgeTemplate {
    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    pub fn length(&self) -> &BigInt {
        &self.length
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerSpec {
    label: String,
    period: BigInt,
    templates: Vec<EdgeTemplate>,
}

impl LayerSpec {
    /// Builds a layer from `(offset, length)` pairs, validating every
    /// template against `period`.
    pub fn new<I>(label: impl Into<String>, period: BigInt, templates: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, BigInt)>,
    {
        let label = label.into();
        if !period.is_positive() {
            return Err(Error::NonPositivePeriod { label });
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (offset, length) in templates {
            if !length.is_positive() {
                return Err(Error::NonPositiveLength { label, length });
            }
            if offset.is_negative() || offset >= period {
                return Err(Error::OffsetOutOfRange { label, offset });
            }
            if !seen.insert((offset.clone(), length.clone())) {
                return Err(Error::DuplicateTemplate { label, offset, length });
            }
            out.push(EdgeTemplate { offset, length });
        }
        if out.is_empty() {
            return Err(Error::EmptyLayer { label });
        }
        Ok(LayerSpec { label, period, templates: out })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn period(&self) -> &BigInt {
        &self.period
    }

    pub fn templates(&self) -> &[EdgeTemplate] {
        &self.templates
    }

    fn is_unit(&self) -> bool {
        self.period.is_one()
            && self.templates.len() == 1
            && self.templates[0].offset.is_zero()
            && self.templates[0].length.is_one()
    }
}

/// The nearest-neighbour layer `E_0 = {(i, i+1)}`.
pub fn make_unit_layer() -> LayerSpec {
    LayerSpec {
        label: "E_0".to_string(),
        period: BigInt::one(),
        templates: alloc::vec![EdgeTemplate { offset: BigInt::zero(), length: BigInt::one() }],
    }
}

/// A finite truncation of an omega-periodic graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSpec {
    name: String,
    layers: Vec<LayerSpec>,
}

impl GraphSpec {
    pub fn new(name: impl Into<String>, layers: Vec<LayerSpec>) -> Result<Self> {
        match layers.first() {
            Some(first) if first.is_unit() => {}
            _ => return Err(Error::MissingUnitLayer),
        }
        let mut labels = BTreeSet::new();
        for layer in &layers {
            if !labels.insert(layer.label.as_str()) {
                return Err(Error::DuplicateLabel(layer.label.clone()));
            }
        }
        Ok(GraphSpec { name: name.into(), layers })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn layers(&self) -> &[LayerSpec] {
        &self.layers
    }

    /// Number of layers above `E_0`.
    pub fn truncation(&self) -> usize {
        self.layers.len() - 1
    }

    /// Returns a copy of this spec with one more layer on top.
    pub fn with_layer(&self, layer: LayerSpec) -> Result<Self> {
        let mut layers = self.layers.clone();
        layers.push(layer);
        GraphSpec::new(format!("{}+{}", self.name, layers.last().unwrap().label), layers)
    }

    /// The overall period: lcm of all layer periods.
    pub fn period(&self) -> BigInt {
        self.layers.iter().fold(BigInt::one(), |acc, l| acc.lcm(&l.period))
    }

    /// Largest edge span over all templates.
    pub fn max_length(&self) -> BigInt {
        self.layers
            .iter()
            .flat_map(|l| l.templates.iter())
            .map(|t| t.length.clone())
            .max()
            .unwrap_or_else(BigInt::one)
    }
}

/// Distinct neighbours of `v`, ascending.
pub fn neighbors(spec: &GraphSpec, v: &Vertex) -> Vec<Vertex> {
    Adjacency::<BigInt>::new(spec).neighbors(v)
}

/// Number of distinct neighbours of `v`.
pub fn degree(spec: &GraphSpec, v: &Vertex) -> usize {
    Adjacency::<BigInt>::new(spec).degree(v)
}

/// Edge incidences at `v` summed over layers, without merging an edge that
/// two layers both generate.
pub fn incidence_degree(spec: &GraphSpec, v: &Vertex) -> usize {
    Adjacency::<BigInt>::new(spec).incidence_degree(v)
}

/// All edges with both endpoints in `[lo, hi]`, smaller endpoint first,
/// sorted and deduplicated.
pub fn edges_in_window(spec: &GraphSpec, lo: &Vertex, hi: &Vertex) -> Result<Vec<(Vertex, Vertex)>> {
    if lo > hi {
        return Err(Error::EmptyWindow { lo: lo.clone(), hi: hi.clone() });
    }
    let mut edges = BTreeSet::new();
    for layer in &spec.layers {
        for t in &layer.templates {
            // first a >= lo with a = offset (mod period)
            let mut a = lo + (&t.offset - lo).mod_floor(&layer.period);
            loop {
                let b = &a + &t.length;
                if &b > hi {
                    break;
                }
                edges.insert((a.clone(), b));
                a += &layer.period;
            }
        }
    }
    Ok(edges.into_iter().collect())
}
