//! Breadth-first search over implicit adjacency, and the measurements built
//! on it: distances, ball volumes, extents, and Følner boundary ratios.
//!
//! Every traversal runs on the unbounded vertex set `Z` with a hash set of
//! visited labels; nothing is windowed. A visited-vertex budget turns
//! runaway balls into [`Error::BudgetExceeded`] instead of a silent cutoff.
//! When the spec and the reachable range fit, traversals run on `i64`
//! labels; otherwise on `BigInt`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};

use crate::adjacency::{Adjacency, Label, SMALL_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{GraphSpec, Vertex};

/// Default visited-vertex budget.
pub const DEFAULT_CAP: u64 = 50_000_000;

/// Exact ball volumes `|B_j(center)|` for `j = 0..=R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthCurve {
    pub center: Vertex,
    pub radii: Vec<u64>,
    pub volumes: Vec<u64>,
    /// `(min, max)` of `B_j(center)` for each radius.
    pub extents: Vec<(Vertex, Vertex)>,
    pub spec_name: String,
    pub truncation: usize,
}

impl GrowthCurve {
    pub fn radius(&self) -> u64 {
        *self.radii.last().unwrap()
    }

    pub fn volume(&self, j: u64) -> u64 {
        self.volumes[j as usize]
    }
}

/// Boundary of `[-n, n]`: vertices inside with a neighbour outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolnerRow {
    pub n: u64,
    pub interval_size: u64,
    pub boundary_count: u64,
    pub ratio: Ratio<u64>,
}

enum Goal<L> {
    Radius(u64),
    Reach(L),
    Cover { lo: L, hi: L, count: u64 },
}

impl<L: Label> Goal<L> {
    fn convert<M: Label>(&self) -> Option<Goal<M>> {
        Some(match self {
            Goal::Radius(r) => Goal::Radius(*r),
            Goal::Reach(t) => Goal::Reach(M::from_big(&t.to_big())?),
            Goal::Cover { lo, hi, count } => Goal::Cover {
                lo: M::from_big(&lo.to_big())?,
                hi: M::from_big(&hi.to_big())?,
                count: *count,
            },
        })
    }
}

struct SweepOut<L> {
    volumes: Vec<u64>,
    extents: Vec<(L, L)>,
    // depth and vertex that completed a Reach or Cover goal
    hit: Option<(u64, L)>,
}

fn sweep<L: Label>(adj: &Adjacency<L>, src: L, goal: &Goal<L>, cap: u64) -> Result<SweepOut<L>> {
    let mut visited: HashSet<L> = HashSet::new();
    visited.insert(src.clone());
    let mut volumes = vec![1u64];
    let mut extents = vec![(src.clone(), src.clone())];

    let mut remaining = 0u64;
    let in_cover = |v: &L| match goal {
        Goal::Cover { lo, hi, .. } => lo <= v && v <= hi,
        _ => false,
    };
    match goal {
        Goal::Reach(t) if *t == src => return Ok(SweepOut { volumes, extents, hit: Some((0, src)) }),
        Goal::Cover { count, .. } => {
            remaining = *count - u64::from(in_cover(&src));
            if remaining == 0 {
                return Ok(SweepOut { volumes, extents, hit: Some((0, src)) });
            }
        }
        _ => {}
    }
    if cap == 0 {
        return Err(Error::BudgetExceeded { cap });
    }

    let mut frontier = vec![src];
    let mut next = Vec::new();
    let mut depth = 0u64;
    loop {
        if let Goal::Radius(r) = goal {
            if depth == *r {
                break;
            }
        }
        depth += 1;
        let (mut lo, mut hi) = extents.last().cloned().unwrap();
        let mut hit = None;
        for u in &frontier {
            adj.for_each_incidence(u, |w| {
                if hit.is_some() || visited.contains(&w) {
                    return;
                }
                match goal {
                    Goal::Reach(t) if *t == w => hit = Some(w.clone()),
                    Goal::Cover { .. } if in_cover(&w) => {
                        remaining -= 1;
                        if remaining == 0 {
                            hit = Some(w.clone());
                        }
                    }
                    _ => {}
                }
                if w < lo {
                    lo = w.clone();
                }
                if w > hi {
                    hi = w.clone();
                }
                visited.insert(w.clone());
                next.push(w);
            });
            if let Some(w) = hit {
                return Ok(SweepOut { volumes, extents, hit: Some((depth, w)) });
            }
            if visited.len() as u64 > cap {
                return Err(Error::BudgetExceeded { cap });
            }
        }
        volumes.push(visited.len() as u64);
        extents.push((lo, hi));
        if next.is_empty() && !matches!(goal, Goal::Radius(_)) {
            // Only possible for a Reach/Cover goal outside a finite component.
            unreachable!("specs always contain E_0 and are connected");
        }
        core::mem::swap(&mut frontier, &mut next);
        next.clear();
    }
    Ok(SweepOut { volumes, extents, hit: None })
}

/// Picks the `i64` engine when every label a `cap`-bounded sweep from any of
/// `anchors` could produce stays within [`SMALL_LIMIT`].
fn small_engine(spec: &GraphSpec, anchors: &[&Vertex], cap: u64) -> Option<Adjacency<i64>> {
    let adj = Adjacency::<i64>::try_new(spec)?;
    let reach = BigInt::from(*adj.max_length()) * (BigInt::from(cap) + 1u32);
    let limit = BigInt::from(SMALL_LIMIT);
    anchors.iter().all(|a| a.abs() + &reach <= limit).then_some(adj)
}

fn run(spec: &GraphSpec, src: &Vertex, goal: Goal<Vertex>, cap: u64) -> Result<SweepOut<Vertex>> {
    let mut anchors = vec![src];
    match &goal {
        Goal::Reach(t) => anchors.push(t),
        Goal::Cover { lo, hi, .. } => {
            anchors.push(lo);
            anchors.push(hi);
        }
        Goal::Radius(_) => {}
    }
    if let Some(adj) = small_engine(spec, &anchors, cap) {
        let small_goal = goal.convert::<i64>().unwrap();
        let out = sweep(&adj, i64::from_big(src).unwrap(), &small_goal, cap)?;
        return Ok(SweepOut {
            volumes: out.volumes,
            extents: out.extents.into_iter().map(|(a, b)| (a.to_big(), b.to_big())).collect(),
            hit: out.hit.map(|(d, v)| (d, v.to_big())),
        });
    }
    sweep(&Adjacency::<BigInt>::new(spec), src.clone(), &goal, cap)
}

/// Exact graph distance from `src` to `dst`.
pub fn bfs_distance(spec: &GraphSpec, src: &Vertex, dst: &Vertex, cap: u64) -> Result<u64> {
    let out = run(spec, src, Goal::Reach(dst.clone()), cap)?;
    Ok(out.hit.expect("reach goal completes or errors").0)
}

/// One BFS sweep to depth `radius`, recording cumulative volumes.
pub fn ball(spec: &GraphSpec, center: &Vertex, radius: u64, cap: u64) -> Result<GrowthCurve> {
    let out = run(spec, center, Goal::Radius(radius), cap)?;
    Ok(GrowthCurve {
        center: center.clone(),
        radii: (0..=radius).collect(),
        volumes: out.volumes,
        extents: out.extents,
        spec_name: spec.name().into(),
        truncation: spec.truncation(),
    })
}

/// Largest vertex within `steps` of `src`.
pub fn farthest_reachable(spec: &GraphSpec, src: &Vertex, steps: u64, cap: u64) -> Result<Vertex> {
    let curve = ball(spec, src, steps, cap)?;
    Ok(curve.extents.last().unwrap().1.clone())
}

/// Largest distance from `center` to a vertex of `[lo, hi]`, with a vertex
/// attaining it. `[lo, hi]` lies in `B_j(center)` iff the distance is `<= j`.
pub fn interval_eccentricity(
    spec: &GraphSpec,
    center: &Vertex,
    lo: &Vertex,
    hi: &Vertex,
    cap: u64,
) -> Result<(u64, Vertex)> {
    if lo > hi {
        return Err(Error::EmptyWindow { lo: lo.clone(), hi: hi.clone() });
    }
    let count = (hi - lo + 1u32)
        .to_u64()
        .filter(|&c| c <= cap)
        .ok_or(Error::BudgetExceeded { cap })?;
    let out = run(spec, center, Goal::Cover { lo: lo.clone(), hi: hi.clone(), count }, cap)?;
    Ok(out.hit.expect("cover goal completes or errors"))
}

/// Boundary ratio of the interval `[-n, n]`.
pub fn folner_ratio(spec: &GraphSpec, n: u64) -> FolnerRow {
    assert!(n >= 1, "interval half-width must be positive");
    let interval_size = 2 * n + 1;
    let boundary_count = match Adjacency::<i64>::try_new(spec) {
        Some(adj) if (n as i128) + (*adj.max_length() as i128) <= SMALL_LIMIT as i128 => {
            let (lo, hi) = (-(n as i64), n as i64);
            (lo..=hi).filter(|v| adj.leaves_interval(v, &lo, &hi)).count() as u64
        }
        _ => {
            let adj = Adjacency::<BigInt>::new(spec);
            let (lo, hi) = (-BigInt::from(n), BigInt::from(n));
            let mut v = lo.clone();
            let mut count = 0u64;
            while v <= hi {
                if adj.leaves_interval(&v, &lo, &hi) {
                    count += 1;
                }
                v += 1u32;
            }
            count
        }
    };
    FolnerRow { n, interval_size, boundary_count, ratio: Ratio::new(boundary_count, interval_size) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::{dyadic_spec, x_closed};
    use crate::graph::make_unit_layer;
    use crate::prime::prime_spec;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn distances() {
        assert_eq!(bfs_distance(&dyadic_spec(4), &b(0), &b(8), DEFAULT_CAP).unwrap(), 5);
        assert_eq!(bfs_distance(&dyadic_spec(4), &b(7), &b(7), DEFAULT_CAP).unwrap(), 0);
        assert_eq!(bfs_distance(&dyadic_spec(6), &b(0), &b(32), DEFAULT_CAP).unwrap(), 9);
        assert_eq!(bfs_distance(&dyadic_spec(3), &b(0), &b(12), DEFAULT_CAP).unwrap(), 4);
    }

    #[test]
    fn big_engine_agrees() {
        let spec = dyadic_spec(6);
        let adj = Adjacency::<BigInt>::new(&spec);
        for target in [-40i64, 17, 32, 63] {
            let small = bfs_distance(&spec, &b(0), &b(target), DEFAULT_CAP).unwrap();
            let big = sweep(&adj, b(0), &Goal::Reach(b(target)), DEFAULT_CAP).unwrap();
            assert_eq!(big.hit.unwrap().0, small);
        }
    }

    #[test]
    fn budget() {
        let err = bfs_distance(&dyadic_spec(10), &b(0), &b(512), 5).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { cap: 5 });
        assert!(ball(&dyadic_spec(10), &b(0), 20, 100).is_err());
    }

    #[test]
    fn small_balls() {
        let c = ball(&dyadic_spec(4), &b(0), 2, DEFAULT_CAP).unwrap();
        assert_eq!(c.volumes, [1, 3, 7]);
        assert_eq!(c.extents[2], (b(-3), b(3)));
        let c = ball(&dyadic_spec(4), &b(0), 0, DEFAULT_CAP).unwrap();
        assert_eq!(c.volumes, [1]);
        assert_eq!(c.truncation, 4);
    }

    #[test]
    fn farthest() {
        assert_eq!(farthest_reachable(&dyadic_spec(4), &b(0), 2, DEFAULT_CAP).unwrap(), b(3));
        assert_eq!(farthest_reachable(&dyadic_spec(5), &b(0), 3, DEFAULT_CAP).unwrap(), b(6));
        assert_eq!(farthest_reachable(&dyadic_spec(5), &b(11), 0, DEFAULT_CAP).unwrap(), b(11));
    }

    #[test]
    fn eccentricity() {
        for i in 1..=8u32 {
            let spec = dyadic_spec(i);
            let (d, _) =
                interval_eccentricity(&spec, &b(0), &b(0), &(BigInt::from(1) << (i - 1)), DEFAULT_CAP)
                    .unwrap();
            assert!(BigInt::from(d) <= x_closed(i));
        }
        let (d, v) = interval_eccentricity(&dyadic_spec(3), &b(0), &b(0), &b(0), 10).unwrap();
        assert_eq!((d, v), (0, b(0)));
    }

    #[test]
    fn folner_unit() {
        let spec = GraphSpec::new("unit", vec![make_unit_layer()]).unwrap();
        for n in [1u64, 5, 100] {
            let row = folner_ratio(&spec, n);
            assert_eq!(row.boundary_count, 2);
            assert_eq!(row.ratio, Ratio::new(2, 2 * n + 1));
        }
    }

    #[test]
    fn folner_big_engine() {
        // huge periods force the BigInt path; compare with a direct count
        let spec = prime_spec(2);
        let row = folner_ratio(&spec, 700);
        let adj = Adjacency::<BigInt>::new(&spec);
        let direct = (-700i64..=700)
            .filter(|&v| {
                adj.neighbors(&b(v)).iter().any(|u| u < &b(-700) || u > &b(700))
            })
            .count() as u64;
        assert_eq!(row.boundary_count, direct);
    }
}
