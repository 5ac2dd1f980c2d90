//! Finite stages of free generalized-polygon constructions: bipartite chamber
//! graphs, pods, bar steps, ball-intersection censuses and slope scans.
//!
//! Distances are read in the limit building: a vertex-to-chamber distance of
//! at least `n − 1` is reported as `n − 1`, and a ball of radius `n − 1` is a
//! whole Grassmannian. Distances below `n − 1` are exact at every stage since
//! stage inclusions are `(n − 1)`-isometric.

use std::collections::VecDeque;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cones::{gen_wti, is_member, ConeGeometry, DominantWeight, InequalitySystem, Tag};
use crate::dihedral::Side;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::prering::{GrassmannianPreRing, Hat};

pub const UNREACHED: u32 = u32::MAX;

/// An edge, stored by its type-1 and type-2 vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Chamber {
    pub one: usize,
    pub two: usize,
}

impl Chamber {
    pub fn vertex(&self, t: Side) -> usize {
        match t {
            Side::One => self.one,
            Side::Two => self.two,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub stage: usize,
    pub op: String,
    pub first_vertex: usize,
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Clone, Debug)]
pub struct ChamberGraph {
    n: u32,
    seed: u64,
    types: Vec<Side>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    stage: usize,
    log: Vec<LogEntry>,
    rng: ChaCha8Rng,
}

fn type_number(t: Side) -> u32 {
    t.number() as u32
}

impl ChamberGraph {
    pub fn new(n: u32, seed: u64) -> Result<ChamberGraph> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
        }
        Ok(ChamberGraph {
            n,
            seed,
            types: Vec::new(),
            adj: Vec::new(),
            edges: Vec::new(),
            stage: 0,
            log: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// A single apartment: the `2n`-cycle with alternating types.
    pub fn apartment(n: u32, seed: u64) -> Result<ChamberGraph> {
        let mut g = Self::new(n, seed)?;
        g.begin("apartment");
        let k = 2 * n as usize;
        for j in 0..k {
            g.add_vertex(if j % 2 == 0 { Side::One } else { Side::Two });
        }
        for j in 0..k {
            g.add_edge(j, (j + 1) % k)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn next_stage(&mut self) {
        self.stage += 1;
    }

    pub fn vertex_count(&self) -> usize {
        self.types.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_type(&self, v: usize) -> Side {
        self.types[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.log
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn begin(&mut self, op: &str) {
        self.log.push(LogEntry {
            stage: self.stage,
            op: op.to_string(),
            first_vertex: self.types.len(),
            vertices: 0,
            edges: 0,
        });
    }

    pub fn add_vertex(&mut self, t: Side) -> usize {
        if let Some(e) = self.log.last_mut() {
            e.vertices += 1;
        }
        self.types.push(t);
        self.adj.push(Vec::new());
        self.types.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a >= self.types.len() || b >= self.types.len() {
            return Err(Error::InvalidParameter(format!("edge ({a}, {b}) has an unknown endpoint")));
        }
        if self.types[a] == self.types[b] {
            return Err(Error::Precondition(format!("edge ({a}, {b}) joins vertices of the same type")));
        }
        if self.adj[a].contains(&b) {
            return Err(Error::Precondition(format!("edge ({a}, {b}) already present")));
        }
        self.adj[a].push(b);
        self.adj[b].push(a);
        self.edges.push((a.min(b), a.max(b)));
        if let Some(e) = self.log.last_mut() {
            e.edges += 1;
        }
        Ok(())
    }

    /// Joins `a` to `b` by a new path of `len` edges.
    pub fn add_path(&mut self, a: usize, b: usize, len: u32) -> Result<Vec<usize>> {
        let parity_ok = (type_number(self.types[a]) + type_number(self.types[b]) + len) % 2 == 0;
        if len == 0 || !parity_ok {
            return Err(Error::Precondition(format!("no path of length {len} can join {a} and {b}")));
        }
        let mut path = vec![a];
        let mut prev = a;
        for _ in 1..len {
            let t = self.types[prev].other();
            let v = self.add_vertex(t);
            self.add_edge(prev, v)?;
            path.push(v);
            prev = v;
        }
        self.add_edge(prev, b)?;
        path.push(b);
        Ok(path)
    }

    /// Adds a fresh vertex adjacent to `v` and returns the new chamber.
    pub fn add_pendant(&mut self, v: usize) -> Result<Chamber> {
        self.begin("pendant");
        let t = self.types[v].other();
        let w = self.add_vertex(t);
        self.add_edge(v, w)?;
        self.chamber(v, w)
    }

    pub fn chamber(&self, a: usize, b: usize) -> Result<Chamber> {
        if !self.adj.get(a).is_some_and(|x| x.contains(&b)) {
            return Err(Error::InvalidParameter(format!("({a}, {b}) is not an edge")));
        }
        Ok(if self.types[a] == Side::One { Chamber { one: a, two: b } } else { Chamber { one: b, two: a } })
    }

    pub fn chambers(&self) -> Vec<Chamber> {
        self.edges.iter().map(|&(a, b)| self.chamber(a, b).expect("edge")).collect()
    }

    pub fn bfs(&self, sources: &[usize]) -> Vec<u32> {
        self.bfs_bounded(sources, UNREACHED)
    }

    /// Distances from a set of sources, explored up to `depth`.
    pub fn bfs_bounded(&self, sources: &[usize], depth: u32) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.types.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v];
            if d >= depth {
                continue;
            }
            for &w in &self.adj[v] {
                if dist[w] == UNREACHED {
                    dist[w] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: usize, b: usize) -> u32 {
        self.bfs(&[a])[b]
    }

    /// Distances from every vertex to the chamber.
    pub fn chamber_distances(&self, c: &Chamber) -> Vec<u32> {
        self.bfs(&[c.one, c.two])
    }

    /// Minimal vertex distance between two chambers.
    pub fn chamber_distance(&self, a: &Chamber, b: &Chamber) -> u32 {
        let d = self.chamber_distances(a);
        d[b.one].min(d[b.two])
    }

    /// Minimal distance exactly `n − 1`.
    pub fn antipodal(&self, a: &Chamber, b: &Chamber) -> bool {
        self.chamber_distance(a, b) == self.n - 1
    }

    pub fn pairwise_antipodal(&self, chambers: &[Chamber]) -> bool {
        let dists: Vec<Vec<u32>> = chambers.iter().map(|c| self.chamber_distances(c)).collect();
        (0..chambers.len()).all(|i| {
            (i + 1..chambers.len()).all(|j| dists[i][chambers[j].one].min(dists[i][chambers[j].two]) == self.n - 1)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "seed": self.seed,
            "vertices": self.types.iter().enumerate().map(|(id, t)| json!({"id": id, "type": t.number()})).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "log": self.log,
        })
    }

    /// Rebuilds a graph from its JSON export. The random state restarts from
    /// the seed.
    pub fn from_json(value: &serde_json::Value) -> Result<ChamberGraph> {
        let bad = |what: &str| Error::InvalidParameter(format!("graph JSON: {what}"));
        let n = value["n"].as_u64().ok_or_else(|| bad("missing n"))? as u32;
        let seed = value["seed"].as_u64().ok_or_else(|| bad("missing seed"))?;
        let mut g = ChamberGraph::new(n, seed)?;
        g.begin("import");
        for (k, v) in value["vertices"].as_array().ok_or_else(|| bad("missing vertices"))?.iter().enumerate() {
            if v["id"].as_u64() != Some(k as u64) {
                return Err(bad("vertex ids must be 0, 1, 2, ..."));
            }
            let t = v["type"].as_u64().and_then(|t| Side::from_number(t as u8)).ok_or_else(|| bad("vertex type"))?;
            g.add_vertex(t);
        }
        for e in value["edges"].as_array().ok_or_else(|| bad("missing edges"))? {
            match e.as_array().map(Vec::as_slice) {
                Some([a, b]) => {
                    let a = a.as_u64().ok_or_else(|| bad("edge endpoint"))? as usize;
                    let b = b.as_u64().ok_or_else(|| bad("edge endpoint"))? as usize;
                    g.add_edge(a, b)?;
                }
                _ => return Err(bad("edges are pairs")),
            }
        }
        if let Some(log) = value.get("log") {
            g.log = serde_json::from_value(log.clone()).map_err(|e| bad(&e.to_string()))?;
        }
        g.stage = g.log.iter().map(|e| e.stage).max().unwrap_or(0);
        Ok(g)
    }
}

/// Length of a shortest cycle, if any.
pub fn girth(g: &ChamberGraph) -> Option<u32> {
    girth_below(g, UNREACHED)
}

/// Shortest cycle of length `< bound`, if any.
fn girth_below(g: &ChamberGraph, bound: u32) -> Option<u32> {
    let v = g.vertex_count();
    let mut best = bound;
    let mut dist = vec![UNREACHED; v];
    let mut parent = vec![usize::MAX; v];
    let mut seen = Vec::new();
    for root in 0..v {
        for &s in &seen {
            dist[s] = UNREACHED;
        }
        seen.clear();
        dist[root] = 0;
        seen.push(root);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] + 1 >= best {
                break;
            }
            for &y in &g.adj[x] {
                if dist[y] == UNREACHED {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    seen.push(y);
                    queue.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    (best < bound).then_some(best)
}

pub fn girth_at_least(g: &ChamberGraph, k: u32) -> bool {
    girth_below(g, k).is_none()
}

/// Largest finite distance, or `None` when disconnected.
pub fn diameter(g: &ChamberGraph) -> Option<u32> {
    let mut best = 0;
    for v in 0..g.vertex_count() {
        for d in g.bfs(&[v]) {
            if d == UNREACHED {
                return None;
            }
            best = best.max(d);
        }
    }
    Some(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub vertices: usize,
    pub edges: usize,
    pub girth: Option<u32>,
    pub diameter: Option<u32>,
    pub min_valence: usize,
    pub max_valence: usize,
}

pub fn graph_metrics(g: &ChamberGraph) -> GraphMetrics {
    let valences = g.adj.iter().map(|a| a.len());
    GraphMetrics {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        girth: girth(g),
        diameter: diameter(g),
        min_valence: valences.clone().min().unwrap_or(0),
        max_valence: valences.max().unwrap_or(0),
    }
}

/// Checks that `f: G → H` preserves types, distances below `n − 1`, and
/// keeps distances of at least `n − 1` at least `n − 1`.
pub fn check_n1_isometric(g: &ChamberGraph, h: &ChamberGraph, f: &[usize]) -> bool {
    let n1 = g.n - 1;
    if (0..g.vertex_count()).any(|v| g.types[v] != h.types[f[v]]) {
        return false;
    }
    (0..g.vertex_count()).all(|x| {
        let dg = g.bfs(&[x]);
        let dh = h.bfs_bounded(&[f[x]], n1);
        (0..g.vertex_count()).all(|y| {
            let a = dg[y];
            let b = dh[f[y]];
            if a < n1 {
                b == a
            } else {
                b == UNREACHED || b >= n1
            }
        })
    })
}

/// The identity embedding of an earlier stage.
pub fn stage_map(earlier: &ChamberGraph) -> Vec<usize> {
    (0..earlier.vertex_count()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarReport {
    pub p_paths: usize,
    pub q_paths: usize,
    pub unprocessed: usize,
}

/// Free-construction step: a path of length `n − 1` for every pair at
/// distance `n + 1` and a path of length `n` for every pair at distance `n`.
/// With more than `cap` pairs, a seeded sample of `cap` pairs is processed
/// when `sample` is set and the step fails otherwise.
pub fn bar_step(g: &mut ChamberGraph, cap: usize, sample: bool) -> Result<BarReport> {
    let n = g.n;
    let mut pairs = Vec::new();
    for a in 0..g.vertex_count() {
        let d = g.bfs_bounded(&[a], n + 1);
        for (b, &dist) in d.iter().enumerate().skip(a + 1) {
            if dist == n + 1 || dist == n {
                pairs.push((a, b, dist));
            }
        }
    }
    let total = pairs.len();
    if total > cap {
        if !sample {
            return Err(Error::BudgetExceeded(format!("{} of {} pairs unprocessed", total - cap, total)));
        }
        let mut idx: Vec<usize> = rand::seq::index::sample(&mut g.rng, total, cap).into_vec();
        idx.sort_unstable();
        pairs = idx.into_iter().map(|i| pairs[i]).collect();
    }
    g.begin("bar");
    let mut report = BarReport { p_paths: 0, q_paths: 0, unprocessed: total - pairs.len() };
    for (a, b, dist) in pairs {
        if dist == n + 1 {
            g.add_path(a, b, n - 1)?;
            report.p_paths += 1;
        } else {
            g.add_path(a, b, n)?;
            report.q_paths += 1;
        }
    }
    g.next_stage();
    Ok(report)
}

/// Attaches a pod with center of type `center` and legs of lengths `radii`
/// to pairwise antipodal chambers; returns the center.
pub fn attach_mpod(g: &mut ChamberGraph, chambers: &[Chamber], radii: &[u32], center: Side) -> Result<usize> {
    let n = g.n;
    if chambers.len() != radii.len() || chambers.is_empty() {
        return Err(Error::InvalidParameter("one radius per chamber is required".into()));
    }
    if let Some(r) = radii.iter().find(|&&r| r == 0 || r > n - 1) {
        return Err(Error::Precondition(format!("leg length {r} outside 1..={}", n - 1)));
    }
    for i in 0..radii.len() {
        for j in i + 1..radii.len() {
            if radii[i] + radii[j] < n {
                return Err(Error::Precondition(format!(
                    "legs {i} and {j} have r_i + r_j = {} < n = {n}",
                    radii[i] + radii[j]
                )));
            }
        }
    }
    for (i, c) in chambers.iter().enumerate() {
        g.chamber(c.one, c.two)?;
        for (j, d) in chambers.iter().enumerate().skip(i + 1) {
            if !g.antipodal(c, d) {
                return Err(Error::Precondition(format!("chambers {i} and {j} are not antipodal")));
            }
        }
    }
    g.begin("pod");
    let z = g.add_vertex(center);
    for (c, &r) in chambers.iter().zip(radii) {
        // r ≡ type(x) + type(z) mod 2
        let x = if (r + type_number(center) + 1) % 2 == 0 { c.one } else { c.two };
        g.add_path(z, x, r)?;
    }
    Ok(z)
}

/// Joins the far vertices of an antipodal pair by a path of length `n − 1`
/// when they are at distance at least `n + 1`, so that the pair lies in an
/// apartment.
pub fn complete_apartment(g: &mut ChamberGraph, a: &Chamber, b: &Chamber) -> Result<bool> {
    let n = g.n;
    let da = g.chamber_distances(a);
    let (xa, xb) = if da[b.one] == n - 1 {
        (if g.distance(a.one, b.one) == n - 1 { a.one } else { a.two }, b.one)
    } else {
        (if g.distance(a.one, b.two) == n - 1 { a.one } else { a.two }, b.two)
    };
    let ya = if xa == a.one { a.two } else { a.one };
    let yb = if xb == b.one { b.two } else { b.one };
    let d = g.distance(ya, yb);
    if d < n + 1 && d != UNREACHED {
        return Ok(false);
    }
    g.begin("apartment completion");
    g.add_path(ya, yb, n - 1)?;
    Ok(true)
}

/// Returns `m` pairwise antipodal chambers, each pair inside an apartment.
/// Existing chambers are tried in a seeded order; missing ones are built as
/// a pendant edge at the center of a pod with legs `n − 1`.
pub fn find_antipodal_tuple(g: &mut ChamberGraph, m: usize) -> Result<Vec<Chamber>> {
    let mut candidates = g.chambers();
    if candidates.is_empty() {
        return Err(Error::Precondition("graph has no chambers".into()));
    }
    candidates.shuffle(&mut g.rng);
    let mut chosen: Vec<Chamber> = Vec::new();
    let mut dists: Vec<Vec<u32>> = Vec::new();
    for c in candidates {
        if chosen.len() == m {
            break;
        }
        if dists.iter().all(|d| d[c.one].min(d[c.two]) == g.n - 1) {
            dists.push(g.chamber_distances(&c));
            chosen.push(c);
        }
    }
    extend_antipodal(g, &mut chosen, m)?;
    Ok(chosen)
}

/// Extends a pairwise antipodal list to length `m` and puts every pair in
/// an apartment.
pub fn extend_antipodal(g: &mut ChamberGraph, chosen: &mut Vec<Chamber>, m: usize) -> Result<()> {
    let n = g.n;
    while chosen.len() < m {
        let radii = vec![n - 1; chosen.len()];
        let z = attach_mpod(g, chosen, &radii, Side::One)?;
        let c = g.add_pendant(z)?;
        chosen.push(c);
    }
    for i in 0..chosen.len() {
        for j in i + 1..chosen.len() {
            complete_apartment(g, &chosen[i], &chosen[j])?;
        }
    }
    if !g.pairwise_antipodal(chosen) {
        return Err(Error::Domain("constructed chambers are not pairwise antipodal".into()));
    }
    Ok(())
}

/// Distance to a chamber as seen in the limit building.
fn effective(d: u32, n: u32) -> u32 {
    d.min(n - 1)
}

/// Vertices of type `l` in `⋂ B_{r_i}(Δ_i)`.
pub fn ball_intersection(g: &ChamberGraph, chambers: &[Chamber], radii: &[u32], l: Side) -> Vec<usize> {
    let n = g.n;
    let dists: Vec<Option<Vec<u32>>> = chambers
        .iter()
        .zip(radii)
        .map(|(c, &r)| (r < n - 1).then(|| g.bfs_bounded(&[c.one, c.two], r)))
        .collect();
    (0..g.vertex_count())
        .filter(|&v| g.types[v] == l)
        .filter(|&v| dists.iter().zip(radii).all(|(d, &r)| d.as_ref().is_none_or(|d| d[v] <= r)))
        .collect()
}

/// Radius vectors admissible for pods on `k` chambers.
pub fn admissible_radii(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for r in 1..n {
            if cur.iter().all(|&s| s + r >= n) {
                cur.push(r);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, k, &mut cur, &mut out);
    out
}

/// One growth round: a pod for every admissible radius vector and both
/// center types. Returns the number of pods.
pub fn growth_round(g: &mut ChamberGraph, chambers: &[Chamber]) -> Result<usize> {
    let mut pods = 0;
    for radii in admissible_radii(g.n, chambers.len()) {
        for t in Side::BOTH {
            attach_mpod(g, chambers, &radii, t)?;
            pods += 1;
        }
    }
    g.next_stage();
    Ok(pods)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusClass {
    Zero,
    One,
    Growing,
    Irregular,
}

impl CensusClass {
    pub fn as_hat(self) -> Option<Hat> {
        match self {
            CensusClass::Zero => Some(Hat::Zero),
            CensusClass::One => Some(Hat::One),
            CensusClass::Growing => Some(Hat::Infinity),
            CensusClass::Irregular => None,
        }
    }
}

/// Rounds of strict growth needed to call a census growing.
pub const GROWTH_FLOOR: usize = 3;

pub fn classify(counts: &[usize]) -> CensusClass {
    if counts.iter().all(|&c| c == 0) {
        CensusClass::Zero
    } else if counts.iter().all(|&c| c == 1) {
        CensusClass::One
    } else if counts.len() > GROWTH_FLOOR && counts.windows(2).all(|w| w[0] < w[1]) {
        CensusClass::Growing
    } else {
        CensusClass::Irregular
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub radii: Vec<u32>,
    /// Counts per type (`[type 1, type 2]`) before growth and after each round.
    pub counts: Vec<[usize; 2]>,
    pub class: [CensusClass; 2],
}

/// Tracks `|⋂ B_{r_i}(Δ_i) ∩ X_l|` for both types over growth rounds.
/// The graph is grown in place.
pub fn census_growth(g: &mut ChamberGraph, chambers: &[Chamber], radii: &[Vec<u32>], rounds: usize) -> Result<Vec<CensusReport>> {
    let count = |g: &ChamberGraph, r: &[u32]| -> [usize; 2] {
        [ball_intersection(g, chambers, r, Side::One).len(), ball_intersection(g, chambers, r, Side::Two).len()]
    };
    let mut history: Vec<Vec<[usize; 2]>> = radii.iter().map(|r| vec![count(g, r)]).collect();
    for _ in 0..rounds {
        growth_round(g, chambers)?;
        if !girth_at_least(g, 2 * g.n) {
            return Err(Error::Domain("growth round reduced the girth".into()));
        }
        for (h, r) in history.iter_mut().zip(radii) {
            h.push(count(g, r));
        }
    }
    Ok(radii
        .iter()
        .zip(history)
        .map(|(r, counts)| {
            let one: Vec<usize> = counts.iter().map(|c| c[0]).collect();
            let two: Vec<usize> = counts.iter().map(|c| c[1]).collect();
            CensusReport { radii: r.clone(), class: [classify(&one), classify(&two)], counts }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusComparison {
    pub radii: Vec<u32>,
    /// Radius on the auxiliary antipodal chamber, when the product has
    /// positive dimension.
    pub dual_radius: Option<u32>,
    pub expected: Hat,
    pub report: CensusReport,
    pub matched: bool,
}

/// Compares the census of `k` antipodal chambers with the Grassmannian
/// product `C_{r_1} ⋯ C_{r_k} = a C_{r}`: when `r > 0` an extra chamber
/// antipodal to all of them carries the ball of radius `n − 1 − r`, and `a`
/// should be the cardinality of the full intersection.
/// Only radius vectors with `Σ r_i ≥ (n − 1)(k − 1)` are compared; below that
/// the product vanishes by degree, but chambers that are not in general
/// position can still share vertices.
pub fn census_against_prering(g: &ChamberGraph, chambers: &[Chamber], rounds: usize) -> Result<Vec<CensusComparison>> {
    let n = g.n;
    let k = chambers.len();
    let ring = GrassmannianPreRing::new(n)?;
    let mut work = g.clone();
    let mut extended = chambers.to_vec();
    extend_antipodal(&mut work, &mut extended, k + 1)?;
    let mut all_radii: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..k {
        all_radii = all_radii
            .into_iter()
            .flat_map(|p| (0..n).map(move |r| [p.clone(), vec![r]].concat()))
            .collect();
    }
    let floor = (n - 1) * (k as u32 - 1);
    let mut jobs = Vec::new();
    for radii in all_radii.into_iter().filter(|r| r.iter().sum::<u32>() >= floor) {
        let product = ring.product(&radii)?;
        let (expected, dual) = match product.terms().next() {
            None => (Hat::Zero, None),
            Some((&0, &a)) => (a, None),
            Some((&r, &a)) => (a, Some(n - 1 - r)),
        };
        let mut full = radii.clone();
        full.push(dual.unwrap_or(n - 1));
        jobs.push((radii, dual, expected, full));
    }
    let fulls: Vec<Vec<u32>> = jobs.iter().map(|j| j.3.clone()).collect();
    let reports = census_growth(&mut work, &extended, &fulls, rounds)?;
    Ok(jobs
        .into_iter()
        .zip(reports)
        .map(|((radii, dual_radius, expected, _), report)| {
            let matched = report.class.iter().all(|c| c.as_hat() == Some(expected));
            CensusComparison { radii, dual_radius, expected, report, matched }
        })
        .collect())
}

/// Weights placed in chambers; `λ = a ζ_1 + b ζ_2` sits in its chamber with
/// `ζ_l` at the type-`l` vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedConfiguration {
    pub entries: Vec<(Chamber, DominantWeight)>,
}

impl WeightedConfiguration {
    pub fn to_json(&self) -> serde_json::Value {
        json!(self
            .entries
            .iter()
            .map(|(c, w)| json!({"chamber": [c.one, c.two], "weight": w.to_json()}))
            .collect::<Vec<_>>())
    }

    /// Reads the format written by `to_json`; every chamber must be an edge of `g`.
    pub fn from_json(g: &ChamberGraph, value: &serde_json::Value) -> Result<WeightedConfiguration> {
        let bad = |what: &str| Error::InvalidParameter(format!("configuration JSON: {what}"));
        let mut entries = Vec::new();
        for e in value.as_array().ok_or_else(|| bad("expected a list"))? {
            let ends: Vec<usize> = e["chamber"]
                .as_array()
                .ok_or_else(|| bad("missing chamber"))?
                .iter()
                .map(|v| v.as_u64().map(|x| x as usize).ok_or_else(|| bad("chamber vertex")))
                .collect::<Result<_>>()?;
            let [a, b] = ends[..] else {
                return Err(bad("a chamber is a pair of vertices"));
            };
            let c = g.chamber(a, b)?;
            entries.push((c, DominantWeight::from_json(&e["weight"])?));
        }
        Ok(WeightedConfiguration { entries })
    }
}

/// Slopes on all vertices of a graph for a fixed configuration.
pub struct SlopeField {
    n: u32,
    /// `⟨λ_k, e_j⟩` for each entry and each vertex direction `j < 2n`.
    pairings: Vec<Vec<FieldElement>>,
    distances: Vec<Vec<u32>>,
    zero: FieldElement,
}

impl SlopeField {
    pub fn new(geometry: &ConeGeometry, g: &ChamberGraph, config: &WeightedConfiguration) -> SlopeField {
        let field = geometry.field();
        let n = geometry.n();
        let pairings = config
            .entries
            .iter()
            .map(|(_, w)| {
                let (a, b) = (field.rational(&w.a), field.rational(&w.b));
                (0..2 * n as i64)
                    .map(|j| &(&a * &field.cos_pi_n(j)) + &(&b * &field.cos_pi_n(j - 1)))
                    .collect()
            })
            .collect();
        SlopeField {
            n,
            pairings,
            distances: config.entries.iter().map(|(c, _)| g.chamber_distances(c)).collect(),
            zero: field.zero(),
        }
    }

    /// `slope(η) = −Σ μ_k cos ∠(η, ξ_k)`.
    pub fn slope(&self, g: &ChamberGraph, eta: usize) -> Result<FieldElement> {
        let n = self.n;
        let mut acc = self.zero.clone();
        for (k, d) in self.distances.iter().enumerate() {
            if d[eta] == UNREACHED {
                return Err(Error::Domain(format!("vertex {eta} is not connected to chamber {k}")));
            }
            let r = effective(d[eta], n);
            // nearest chamber vertex has type type(η) + r
            let near = if (type_number(g.types[eta]) + r) % 2 == 1 { Side::One } else { Side::Two };
            let j = match near {
                Side::One => (2 * n - r) % (2 * n),
                Side::Two => r + 1,
            };
            acc = &acc - &self.pairings[k][j as usize];
        }
        Ok(acc)
    }

    /// Minimizing vertex (smallest id on ties), optionally of one type.
    pub fn min_scan(&self, g: &ChamberGraph, l: Option<Side>) -> Result<Option<(usize, FieldElement)>> {
        let mut best: Option<(usize, FieldElement)> = None;
        for v in 0..g.vertex_count() {
            if l.is_some_and(|l| g.types[v] != l) {
                continue;
            }
            let s = self.slope(g, v)?;
            if best.as_ref().is_none_or(|(_, b)| s.cmp_value(b).is_lt()) {
                best = Some((v, s));
            }
        }
        Ok(best)
    }
}

pub fn slope_at(geometry: &ConeGeometry, g: &ChamberGraph, config: &WeightedConfiguration, eta: usize) -> Result<FieldElement> {
    SlopeField::new(geometry, g, config).slope(g, eta)
}

pub fn min_slope_scan(
    geometry: &ConeGeometry,
    g: &ChamberGraph,
    config: &WeightedConfiguration,
    l: Option<Side>,
) -> Result<Option<(usize, FieldElement)>> {
    SlopeField::new(geometry, g, config).min_scan(g, l)
}

#[derive(Clone, Debug)]
pub struct SemistabilityReport {
    pub member: bool,
    pub configuration: WeightedConfiguration,
    /// Minimal slope before growth and after each round.
    pub min_slopes: Vec<FieldElement>,
    /// Vertex of negative slope, for non-members.
    pub witness: Option<(usize, FieldElement)>,
    pub violated: Option<Tag>,
    pub graph: ChamberGraph,
}

impl SemistabilityReport {
    pub fn semistable(&self) -> bool {
        self.min_slopes.iter().all(|s| s.sign() >= 0)
    }
}

/// Places `λ⃗` on fresh pairwise antipodal chambers and scans slopes over
/// `rounds` growth rounds; for a point outside the cone, locates a vertex of
/// negative slope from the first violated inequality.
pub fn construct_semistable(
    n: u32,
    weights: &[DominantWeight],
    seed: u64,
    rounds: usize,
) -> Result<SemistabilityReport> {
    let m = weights.len();
    if m < 2 {
        return Err(Error::InvalidParameter("at least two weights are required".into()));
    }
    let wti: InequalitySystem = gen_wti(n, m)?.system;
    let geometry = wti.geometry().clone();
    let membership = is_member(weights, &wti)?;
    let mut g = ChamberGraph::apartment(n, seed)?;
    let chambers = find_antipodal_tuple(&mut g, m)?;
    let configuration = WeightedConfiguration {
        entries: chambers
            .iter()
            .zip(weights)
            .filter(|(_, w)| !(w.a.is_zero() && w.b.is_zero()))
            .map(|(c, w)| (*c, w.clone()))
            .collect(),
    };
    let scan = |g: &ChamberGraph| -> Result<FieldElement> {
        Ok(min_slope_scan(&geometry, g, &configuration, None)?.map(|x| x.1).unwrap_or_else(|| geometry.field().zero()))
    };
    let mut min_slopes = vec![scan(&g)?];
    let mut witness = None;
    if membership.member {
        for _ in 0..rounds {
            growth_round(&mut g, &chambers)?;
            min_slopes.push(scan(&g)?);
        }
    } else {
        let tag = membership.violated.clone().expect("violated tag");
        let l = tag.l.expect("WTI tags carry l");
        let (i, j) = tag.slots.expect("WTI tags carry slots");
        let group = geometry.group();
        let radii: Vec<u32> = tag.tuple.iter().map(|w| group.relative_length(w, l)).collect();
        let pair = [chambers[i], chambers[j]];
        let cell = ball_intersection(&g, &pair, &[radii[i], radii[j]], l);
        let eta = *cell
            .first()
            .ok_or_else(|| Error::Domain("no vertex in the Schubert cell intersection".into()))?;
        let field = SlopeField::new(&geometry, &g, &configuration);
        witness = Some((eta, field.slope(&g, eta)?));
    }
    Ok(SemistabilityReport { member: membership.member, configuration, min_slopes, witness, violated: membership.violated, graph: g })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apartment_metrics() {
        for n in 2..=6 {
            let g = ChamberGraph::apartment(n, 0).unwrap();
            let m = graph_metrics(&g);
            assert_eq!(m.girth, Some(2 * n));
            assert_eq!(m.diameter, Some(n));
            assert!(check_n1_isometric(&g, &g, &stage_map(&g)));
            let c = g.chambers();
            assert!(g.antipodal(&c[0], &c[n as usize]));
        }
    }

    #[test]
    fn bar_step_keeps_girth_and_isometry() {
        for n in 3..=4 {
            let g0 = ChamberGraph::apartment(n, 1).unwrap();
            let mut g = g0.clone();
            let rep = bar_step(&mut g, 1000, false).unwrap();
            assert_eq!(rep.p_paths, 0);
            assert_eq!(rep.q_paths, n as usize);
            assert!(girth_at_least(&g, 2 * n));
            assert!(check_n1_isometric(&g0, &g, &stage_map(&g0)));
        }
    }

    #[test]
    fn pod_preconditions() {
        let mut g = ChamberGraph::apartment(4, 0).unwrap();
        let c = g.chambers();
        let (a, b) = (c[0], c[4]);
        assert!(matches!(attach_mpod(&mut g, &[a, b], &[1, 2], Side::One), Err(Error::Precondition(_))));
        let z = attach_mpod(&mut g, &[a, b], &[2, 2], Side::One).unwrap();
        let da = g.chamber_distances(&a);
        let db = g.chamber_distances(&b);
        assert_eq!((da[z], db[z]), (2, 2));
        assert!(girth_at_least(&g, 8));
    }

    #[test]
    fn antipodal_triples_and_lemma_pairs() {
        for n in 2..=5 {
            let mut g = ChamberGraph::apartment(n, 7).unwrap();
            let t = find_antipodal_tuple(&mut g, 3).unwrap();
            assert!(g.pairwise_antipodal(&t));
            assert!(girth_at_least(&g, 2 * n));
            for r in 0..n {
                let pair = [t[0], t[1]];
                let radii = [r, n - 1 - r];
                assert_eq!(ball_intersection(&g, &pair, &radii, Side::One).len(), 1);
                assert_eq!(ball_intersection(&g, &pair, &radii, Side::Two).len(), 1);
            }
        }
    }

    #[test]
    fn single_weight_slopes() {
        let n = 4;
        let geometry = ConeGeometry::new(n).unwrap();
        let g = ChamberGraph::apartment(n, 0).unwrap();
        let c = g.chamber(0, 1).unwrap();
        let config = WeightedConfiguration { entries: vec![(c, DominantWeight::ints(3, 0))] };
        let f = geometry.field();
        assert_eq!(slope_at(&geometry, &g, &config, 0).unwrap(), f.int(-3));
        // opposite vertex of the apartment
        assert_eq!(slope_at(&geometry, &g, &config, 4).unwrap(), f.int(3));
    }

    #[test]
    fn census_matches_prering() {
        for n in 3..=5u32 {
            let mut g = ChamberGraph::apartment(n, 11).unwrap();
            let t = find_antipodal_tuple(&mut g, 4).unwrap();
            for sub in [vec![t[0], t[1]], vec![t[0], t[1], t[2]]] {
                let res = census_against_prering(&g, &sub, 3).unwrap();
                for c in &res {
                    assert!(c.matched, "n={n} {:?}", c);
                }
            }
        }
    }

    #[test]
    fn equilateral_semistable_and_witness() {
        for n in 2..=4u32 {
            let p = vec![DominantWeight::ints(1, 1); 3];
            let r = construct_semistable(n, &p, 3, 3).unwrap();
            assert!(r.member && r.semistable(), "{:?}", r.min_slopes);
            let bad = vec![DominantWeight::ints(5, 1), DominantWeight::ints(1, 0), DominantWeight::ints(0, 1)];
            let r = construct_semistable(n, &bad, 3, 3).unwrap();
            assert!(!r.member);
            assert!(r.witness.as_ref().unwrap().1.sign() < 0);
        }
    }
}
