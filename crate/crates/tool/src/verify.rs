//! Verification suites. Each suite checks one structural claim about the
//! graph families against the BFS oracle or by exhaustive enumeration, and
//! returns a [`Verdict`] carrying the first counterexample on failure.

use std::time::Instant;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::One;
use omega_core::dyadic::{ball_bounds, dyadic_spec, poly_spec, x_closed, y, z, DyadicTables};
use omega_core::fit::{fit_growth, GrowthModel};
use omega_core::metrics::{
    ball, bfs_distance, farthest_reachable, folner_ratio, interval_eccentricity,
};
use omega_core::Ratio;
use omega_core::prime::{PrimeTables, Side};
use omega_core::{neighbors, Adjacency, DEFAULT_CAP};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::ToolError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "lower")]
pub enum Lemma {
    /// Min-recursion for x(i) and the shift law, against BFS.
    Lemma1,
    /// Closed form for x(i) against the recursion.
    Lemma2,
    /// d(0, m) <= x(i) for 0 <= m <= 2^(i-1).
    Right,
    /// Ball-volume sandwich, interval containment and the w-law.
    Growth,
    /// Polynomial family: x_tilde recursion, bounds and interval cover.
    Reader,
    /// j^2 <= |B_j| <= 8 j^2 in the polynomial family at j = x_tilde(4).
    Polyball,
    /// Binary tree rooted at 2 in the prime family.
    Tree,
    /// Left/right coset sets of distinct prime layers never meet.
    Disjoint,
    /// Prime family degree is at most five.
    Degree,
    /// Følner boundary ratios of centred intervals.
    Folner,
    /// Growth-model fits for the three families.
    Regimes,
}

impl Lemma {
    pub fn name(self) -> &'static str {
        match self {
            Lemma::Lemma1 => "lemma1",
            Lemma::Lemma2 => "lemma2",
            Lemma::Right => "right",
            Lemma::Growth => "growth",
            Lemma::Reader => "reader",
            Lemma::Polyball => "polyball",
            Lemma::Tree => "tree",
            Lemma::Disjoint => "disjoint",
            Lemma::Degree => "degree",
            Lemma::Folner => "folner",
            Lemma::Regimes => "regimes",
        }
    }
}

/// Range overrides; `None` means the suite's default.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub imax: Option<u32>,
    pub jmax: Option<u64>,
    pub k: Option<u32>,
    pub m: Option<u32>,
    pub lo: Option<BigInt>,
    pub hi: Option<BigInt>,
    pub depth: Option<u32>,
    pub cap: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { imax: None, jmax: None, k: None, m: None, lo: None, hi: None, depth: None, cap: DEFAULT_CAP }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub lemma: String,
    pub params: Value,
    pub range_checked: String,
    pub pass: bool,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    pub elapsed_ms: u64,
}

#[derive(Default)]
struct Outcome {
    params: Value,
    range: String,
    checked: u64,
    counterexample: Option<Value>,
    // failures that are not tied to a single witness
    failed: bool,
    details: Option<Value>,
}

impl Outcome {
    fn new(params: Value, range: String) -> Self {
        Outcome { params, range, ..Default::default() }
    }

    fn fail(&mut self, witness: Value) {
        self.failed = true;
        if self.counterexample.is_none() {
            self.counterexample = Some(witness);
        }
    }
}

pub fn run(lemma: Lemma, opts: &VerifyOptions) -> Result<Verdict, ToolError> {
    let start = Instant::now();
    let out = match lemma {
        Lemma::Lemma1 => lemma1(opts)?,
        Lemma::Lemma2 => lemma2(opts),
        Lemma::Right => right(opts)?,
        Lemma::Growth => growth(opts)?,
        Lemma::Reader => reader(opts)?,
        Lemma::Polyball => polyball(opts)?,
        Lemma::Tree => tree(opts)?,
        Lemma::Disjoint => disjoint(opts)?,
        Lemma::Degree => degree(opts)?,
        Lemma::Folner => folner(opts),
        Lemma::Regimes => regimes(opts)?,
    };
    Ok(Verdict {
        lemma: lemma.name().to_string(),
        params: out.params,
        range_checked: out.range,
        pass: !out.failed,
        checked: out.checked,
        counterexample: out.counterexample,
        details: out.details,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

fn zero() -> BigInt {
    BigInt::from(0)
}

fn lemma1(opts: &VerifyOptions) -> Result<Outcome, ToolError> {
    let imax = opts.imax.unwrap_or(20).max(1);
    let shift_imax = imax.min(8);
    let mut out = Outcome::new(
        json!({ "imax": imax, "shift_imax": shift_imax, "jrange": 8 }),
        format!("1 <= i <= {imax}; shift law 1 <= i <= {shift_imax}, -8 <= j <= 8"),
    );
    let tables = DyadicTables::new(imax, 0);
    for i in 1..=imax {
        let d = bfs_distance(&dyadic_spec(i), &zero(), &pow2(i as u64 - 1), opts.cap)?;
        out.checked += 1;
        if BigInt::from(d) != *tables.x(i) {
            out.fail(json!({ "i": i, "bfs": d, "recursion": tables.x(i).to_string() }));
        }
    }
    for i in 1..=shift_imax {
        let spec = dyadic_spec(i);
        for j in -8i64..=8 {
            let target = BigInt::from(2 * j + 1) * pow2(i as u64 - 1);
            let d = bfs_distance(&spec, &zero(), &target, opts.cap)?;
            let extra = if j >= 0 { j } else { -j - 1 };
            let expected = tables.x(i) + extra;
            out.checked += 1;
            if BigInt::from(d) != expected {
                out.fail(json!({ "i": i, "j": j, "bfs": d, "formula": expected.to_string() }));
            }
        }
    }
    Ok(out)
}

fn lemma2(opts: &VerifyOptions) -> Outcome {
    let imax = opts.imax.unwrap_or(300).max(1);
    let mut out = Outcome::new(
        json!({ "imax": imax }),
        format!("1 <= i <= {imax}; x(y(n)) = z(n) while y(n) <= {imax}"),
    );
    let tables = DyadicTables::new(imax, 0);
    for i in 1..=imax {
        out.checked += 1;
        let closed = x_closed(i);
        if *tables.x(i) != closed {
            out.fail(json!({ "i": i, "recursion": tables.x(i).to_string(), "closed": closed.to_string() }));
        }
    }
    let mut n = 1u32;
    while y(n) <= BigInt::from(imax) {
        let i = u32::try_from(&y(n)).unwrap();
        out.checked += 1;
        if x_closed(i) != z(n) {
            out.fail(json!({ "n": n, "x_y": x_closed(i).to_string(), "z": z(n).to_string() }));
        }
        n += 1;
    }
    out
}

fn right(opts: &VerifyOptions) -> Result<Outcome, ToolError> {
    let imax = opts.imax.unwrap_or(12).max(1);
    let mut out = Outcome::new(json!({ "imax": imax }), format!("1 <= i <= {imax}, 0 <= m <= 2^(i-1)"));
    for i in 1..=imax {
        let hi = pow2(i as u64 - 1);
        let (d, witness) = interval_eccentricity(&dyadic_spec(i), &zero(), &zero(), &hi, opts.cap)?;
        out.checked += (1u64 << (i - 1)) + 1;
        if BigInt::from(d) > x_closed(i) {
            out.fail(json!({ "i": i, "m": witness.to_string(), "distance": d, "x": x_closed(i).to_string() }));
        }
    }
    Ok(out)
}

fn growth(opts: &VerifyOptions) -> Result<Outcome, ToolError> {
    let jmax = opts.jmax.unwrap_or(161).max(3);
    let k = opts.k.unwrap_or(24).max(3);
    let wmax = opts.imax.unwrap_or(12).max(3);
    let mut out = Outcome::new(
        json!({ "jmax": jmax, "K": k, "K_stability": k - 2, "wmax": wmax }),
        format!("3 <= j <= {jmax} at K = {k} (volumes, containment); w-law 3 <= i <= {wmax}"),
    );
    let spec = dyadic_spec(k);
    let curve = ball(&spec, &zero(), jmax, opts.cap)?;
    let alt = ball(&dyadic_spec(k - 2), &zero(), jmax, opts.cap)?;
    if alt.volumes != curve.volumes {
        let j = curve.volumes.iter().zip(&alt.volumes).position(|(a, b)| a != b).unwrap();
        out.fail(json!({ "check": "stability", "j": j, "volume": curve.volumes[j], "volume_lower_K": alt.volumes[j] }));
    }

    // Eccentricity of [-r, r] from 0, cached per radius.
    let mut ecc_cache: Vec<(BigInt, u64)> = Vec::new();
    let mut ecc = |r: &BigInt| -> Result<u64, ToolError> {
        if let Some(&(_, d)) = ecc_cache.iter().find(|(c, _)| c == r) {
            return Ok(d);
        }
        let (d, _) = interval_eccentricity(&spec, &zero(), &-r, r, opts.cap)?;
        ecc_cache.push((r.clone(), d));
        Ok(d)
    };
    let mut narrow = NarrowRadius::default();
    for j in 3..=jmax {
        let bb = ball_bounds(j)?;
        let vol = BigInt::from(curve.volume(j));
        out.checked += 1;
        if vol < bb.lower || vol > bb.upper {
            out.fail(json!({
                "check": "sandwich", "j": j, "volume": curve.volume(j),
                "lower": bb.lower.to_string(), "upper": bb.upper.to_string(),
            }));
        }
        // [-g, g] and [-g', g'] inside B_j, with g' = 2^(y(f) - 1)
        let y_f = u64::try_from(&y(bb.f)).unwrap();
        let g_wide = pow2(y_f - 1);
        for (name, r) in [("g", &bb.g), ("2^(y(f)-1)", &g_wide)] {
            let d = ecc(r)?;
            if d > j {
                out.fail(json!({ "check": "inner interval", "bound": name, "j": j, "radius": r.to_string(), "eccentricity": d }));
            }
        }
        // B_j inside (-h, h) with h = 2^(y(f+2) - 2), and inside (-16 j^2 g', 16 j^2 g')
        let (lo, hi) = &curve.extents[j as usize];
        let h = pow2(u64::try_from(&y(bb.f + 2)).unwrap() - 2);
        let wide = BigInt::from(16u64 * j * j) * &g_wide;
        for (name, r) in [("h", &h), ("16j^2 2^(y(f)-1)", &wide)] {
            if lo <= &-r || hi >= r {
                out.fail(json!({
                    "check": "outer interval", "bound": name, "j": j, "radius": r.to_string(),
                    "min": lo.to_string(), "max": hi.to_string(),
                }));
            }
        }
        // 16 j^2 g with the small g of the volume bounds: reported, not asserted
        let r = BigInt::from(16u64 * j * j) * &bb.g;
        narrow.observe(j, &r, lo, hi);
    }

    let tables = DyadicTables::new(wmax, 0);
    let mut w_rows = Vec::new();
    for i in 3..=wmax {
        let steps: BigInt = (tables.x(i) - 1u32) / 2u32;
        let steps = u64::try_from(&steps).unwrap();
        let far = farthest_reachable(&dyadic_spec(i), &zero(), steps, opts.cap)?;
        let w = tables.w(i);
        out.checked += 1;
        if far != w || w >= pow2(i as u64 - 2) {
            out.fail(json!({ "check": "w-law", "i": i, "farthest": far.to_string(), "w": w.to_string() }));
        }
        w_rows.push(json!({ "i": i, "w": w.to_string() }));
    }
    out.details = Some(json!({
        "volume_at_jmax": curve.volume(jmax),
        "extent_at_jmax": [curve.extents[jmax as usize].0.to_string(), curve.extents[jmax as usize].1.to_string()],
        "w": w_rows,
        "outer_16j2g": narrow.report(),
    }));
    Ok(out)
}

/// Tracks B_j against the radius 16 j^2 g(j) with g(j) = 2^(f(j)-1).
#[derive(Default)]
struct NarrowRadius {
    holds: u64,
    first_failure: Option<serde_json::Value>,
    failures: u64,
}

impl NarrowRadius {
    fn observe(&mut self, j: u64, r: &BigInt, lo: &BigInt, hi: &BigInt) {
        if lo > &-r && hi < r {
            self.holds += 1;
            return;
        }
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure =
                Some(json!({ "j": j, "radius": r.to_string(), "min": lo.to_string(), "max": hi.to_string() }));
        }
    }

    fn report(&self) -> serde_json::Value {
        json!({ "holds": self.holds, "fails": self.failures, "first_failure": self.first_failure })
    }
}

fn reader(opts: &VerifyOptions) -> Result<Outcome, ToolError> {
    let imax = opts.imax.unwrap_or(4).max(1);
    let mut out = Outcome::new(
        json!({ "imax": imax, "bound_range": [4, 6] }),
        format!("BFS 1 <= i <= {imax}; upper/lower bound 4 <= i <= 6"),
    );
    let tables = DyadicTables::new(1, imax.max(6));
    for i in 1..=imax {
        let spec = poly_spec(i);
        let reach = pow2((1u64 << i) - 1);
        let xt = tables.x_tilde(i);
        let d = bfs_distance(&spec, &zero(), &reach, opts.cap)?;
        out.checked += 1;
        if BigInt::from(d) != *xt {
            out.fail(json!({ "check": "recursion", "i": i, "bfs": d, "x_tilde": xt.to_string() }));
        }
        let (ecc, witness) = interval_eccentricity(&spec, &zero(), &-&reach, &reach, opts.cap)?;
        out.checked += 1;
        if BigInt::from(ecc) > *xt {
            out.fail(json!({ "check": "interval cover", "i": i, "m": witness.to_string(), "distance": ecc }));
        }
    }
    let mut recorded = Vec::new();
    for i in 2..=6u32 {
        let xt = tables.x_tilde(i);
        let lower = pow2((1u64 << (i - 1)) - 1);
        let upper = pow2(1u64 << (i - 1));
        let holds = &lower <= xt && xt <= &upper;
        if i >= 4 {
            out.checked += 1;
            if !holds {
                out.fail(json!({ "check": "bound", "i": i, "x_tilde": xt.to_string() }));
            }
        }
        recorded.push(json!({ "i": i, "x_tilde": xt.to_string(), "upper": upper.to_string(), "holds": holds }));
    }
    out.details = Some(json!({ "bounds": recorded }));
    Ok(out)
}

fn polyball(opts: &VerifyOptions) -> Result<Outcome, ToolError> {
    let j = opts.jmax.unwrap_or(161);
    let k = opts.k.unwrap_or(5);
    let mut out = Outcome::new(json!({ "j": j, "K": k }), format!("j = {j} at K = {k} and K = {}", k + 1));
    let vol = ball(&poly_spec(k), &zero(), j, opts.cap)?.volume(j);
    let alt = ball(&poly_spec(k + 1), &zero(), j, opts.cap)?.volume(j);
    out.checked = 1;
    if vol != alt {
        out.fail(json!({ "check": "stability", "volume": vol, "volume_higher_K": alt }));
    }
    if vol < j * j || vol > 8 * j * j {
        out.fail(json!({ "check": "sandwich", "volume": vol, "lower": j * j, "upper": 8 * j * j }));
    }
    out.details = Some(json!({ "volume": vol, "lower": j * j, "upper": 8 * j * j }));
    Ok(out)
}

fn tree(opts: &VerifyOptions) -> Result<Outcome, ToolError> {
    let depth = opts.depth.unwrap_or(6).max(1);
    let mut out = Outcome::new(json!({ "depth": depth }), format!("levels 0..={depth} in prime(M={})", depth + 1));
    let tables = PrimeTables::new(depth + 1);
    for m in 1..=depth {
        let spec = tables.spec(m + 1);
        for (parent, child) in tables.tree_edges(m).into_iter().skip((1usize << m) - 2) {
            out.checked += 1;
            if !neighbors(&spec, &parent).contains(&child) {
                out.fail(json!({ "check": "edge", "m": m, "parent": parent.to_string(), "child": child.to_string() }));
            }
        }
    }
    let full = tables.spec(depth + 1);
    let root = BigInt::from(2);
    let curve = ball(&full, &root, depth as u64, opts.cap)?;
    for m in 0..=depth {
        out.checked += 1;
        let need = (1u64 << (m + 1)) - 1;
        if curve.volume(m as u64) < need {
            out.fail(json!({ "check": "ball", "m": m, "volume": curve.volume(m as u64), "lower": need }));
        }
        for v in tables.tree_level(m) {
            let d = bfs_distance(&full, &root, &v, opts.cap)?;
            out.checked += 1;
            if d > m as u64 {
                out.fail(json!({ "check": "distance", "m": m, "vertex": v.to_string(), "distance": d }));
            }
        }
    }
    out.details = Some(json!({ "volumes": curve.volumes }));
    Ok(out)
}

fn disjoint(opts: &VerifyOptions) -> Result<Outcome, ToolError> {
    let m = opts.m.unwrap_or(3);
    let lo = opts.lo.clone().unwrap_or_else(BigInt::one);
    let hi = opts.hi.clone().unwrap_or_else(|| BigInt::from(10_000_000u64));
    let mut out = Outcome::new(
        json!({ "M": m, "lo": lo.to_string(), "hi": hi.to_string() }),
        format!("m <= {m}, window [{lo}, {hi}]"),
    );
    let verdict = PrimeTables::new(m.max(2)).check_disjoint(m, &lo, &hi)?;
    out.checked = (verdict.left_points + verdict.right_points) as u64;
    if let Some(o) = &verdict.overlap {
        let side = match o.side {
            Side::Left => "L",
            Side::Right => "R",
        };
        out.fail(json!({ "vertex": o.vertex.to_string(), "side": side, "layers": [o.layers.0, o.layers.1] }));
    }
    out.details = Some(json!({ "left_points": verdict.left_points, "right_points": verdict.right_points }));
    Ok(out)
}

/// Degree statistics of the prime family over a window.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeScan {
    pub max_degree: usize,
    pub max_incidence: usize,
    /// Vertices whose decomposition disagrees with the incidence count.
    pub mismatches: Vec<BigInt>,
    /// Vertices where two layers generate the same edge.
    pub coincident: Vec<BigInt>,
    pub scanned: u64,
}

pub fn scan_degrees(m: u32, lo: &BigInt, hi: &BigInt) -> DegreeScan {
    let tables = PrimeTables::new(m);
    let adj = Adjacency::<BigInt>::new(&tables.spec(m));
    let mut scan = DegreeScan::default();
    let mut v = lo.clone();
    while &v <= hi {
        let deg = adj.degree(&v);
        let inc = adj.incidence_degree(&v);
        scan.max_degree = scan.max_degree.max(deg);
        scan.max_incidence = scan.max_incidence.max(inc);
        if tables.degree_decomposition(&v, m).degree() as usize != inc {
            scan.mismatches.push(v.clone());
        }
        if deg != inc {
            scan.coincident.push(v.clone());
        }
        scan.scanned += 1;
        v += 1u32;
    }
    scan
}

fn degree(opts: &VerifyOptions) -> Result<Outcome, ToolError> {
    let m = opts.m.unwrap_or(4).max(1);
    let lo = opts.lo.clone().unwrap_or_else(BigInt::one);
    let hi = opts.hi.clone().unwrap_or_else(|| BigInt::from(1_000_000u64));
    if lo > hi {
        return Err(omega_core::Error::EmptyWindow { lo, hi }.into());
    }
    let mut out = Outcome::new(
        json!({ "M": m, "lo": lo.to_string(), "hi": hi.to_string() }),
        format!("z in [{lo}, {hi}] at M = {m}"),
    );
    let scan = scan_degrees(m, &lo, &hi);
    out.checked = scan.scanned;
    if scan.max_degree > 5 || scan.max_incidence > 5 {
        out.fail(json!({ "check": "bound", "max_degree": scan.max_degree, "max_incidence": scan.max_incidence }));
    }
    if let Some(v) = scan.mismatches.first() {
        out.fail(json!({ "check": "decomposition", "vertex": v.to_string() }));
    }
    out.details = Some(json!({
        "max_degree": scan.max_degree,
        "max_incidence_degree": scan.max_incidence,
        "coincident_edge_vertices": scan.coincident.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    }));
    Ok(out)
}

fn folner(opts: &VerifyOptions) -> Outcome {
    let k = opts.k.unwrap_or(16);
    let m = opts.m.unwrap_or(3).max(1);
    let n_prime = opts.hi.as_ref().and_then(|h| u64::try_from(h).ok()).unwrap_or(1_000_000);
    let mut out = Outcome::new(
        json!({ "K": k, "s_range": [4, k.max(4)], "M": m, "n_prime": n_prime }),
        format!("dyadic(K={k}) n = 2^4..2^{}; prime(M={m}) n = {n_prime}", k.max(4)),
    );
    let threshold = Ratio::new(1u64, 1000);
    let spec = dyadic_spec(k);
    let rows: Vec<_> = (4..=k.max(4)).map(|s| folner_ratio(&spec, 1 << s)).collect();
    out.checked = rows.len() as u64 + 1;
    for w in rows.windows(2) {
        if w[1].ratio > w[0].ratio {
            out.fail(json!({ "check": "monotone", "n": w[1].n, "ratio": w[1].ratio.to_string(), "previous": w[0].ratio.to_string() }));
        }
    }
    let last = rows.last().unwrap();
    if last.ratio >= threshold {
        out.fail(json!({ "check": "dyadic threshold", "n": last.n, "ratio": last.ratio.to_string() }));
    }
    let prime_row = folner_ratio(&PrimeTables::new(m).spec(m), n_prime);
    if prime_row.ratio >= threshold {
        out.fail(json!({ "check": "prime threshold", "n": n_prime, "ratio": prime_row.ratio.to_string() }));
    }
    out.details = Some(json!({
        "dyadic": rows.iter().map(|r| json!({ "n": r.n, "boundary": r.boundary_count, "ratio": r.ratio.to_string() })).collect::<Vec<_>>(),
        "prime": { "n": n_prime, "boundary": prime_row.boundary_count, "ratio": prime_row.ratio.to_string() },
    }));
    out
}

fn regimes(opts: &VerifyOptions) -> Result<Outcome, ToolError> {
    let jmax = opts.jmax.unwrap_or(161).max(10);
    let k = opts.k.unwrap_or(24);
    let depth = opts.depth.unwrap_or(6).max(4);
    let mut out = Outcome::new(
        json!({ "jmax": jmax, "K": k, "poly_K": 5, "prime_depth": depth }),
        format!("radii 3..={jmax} (dyadic, poly), 1..={depth} (prime)"),
    );
    let g = fit_growth(&ball(&dyadic_spec(k), &zero(), jmax, opts.cap)?, GrowthModel::QuadraticLog)?;
    let p = fit_growth(&ball(&poly_spec(5), &zero(), jmax, opts.cap)?, GrowthModel::Poly)?;
    let tables = PrimeTables::new(depth + 1);
    let e = fit_growth(
        &ball(&tables.spec(depth + 1), &BigInt::from(2), depth as u64, opts.cap)?,
        GrowthModel::Exponential,
    )?;
    out.checked = 3;
    if g.leading() <= 0.0 {
        out.fail(json!({ "check": "dyadic curvature", "value": g.leading() }));
    }
    if !(1.0..=3.0).contains(&p.leading()) {
        out.fail(json!({ "check": "poly slope", "value": p.leading() }));
    }
    if e.leading() <= 0.0 {
        out.fail(json!({ "check": "prime rate", "value": e.leading() }));
    }
    let fit_json = |f: &omega_core::fit::GrowthFit| {
        json!({ "model": f.model.name(), "coefficients": f.coefficients, "residual": f.residual, "points": f.points })
    };
    out.details = Some(json!({ "dyadic": fit_json(&g), "poly": fit_json(&p), "prime": fit_json(&e) }));
    Ok(out)
}
