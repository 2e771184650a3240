//! Balanced regular bipartite graphs with a fixed edge order, their second
//! eigenvalue, and the expansion properties the distance arguments rely on.
//!
//! Edge `j` of left vertex `v` has global id `v * delta + j` ("left-major").
//! Right vertices list their incident edges in increasing id.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const EDGE_ORDER: &str = "left-major";
/// Resampling attempts per permutation when a simple graph is requested.
pub const SIMPLE_RETRIES: usize = 1000;
/// Above this size the second eigenvalue is found by power iteration.
pub const DENSE_SVD_MAX_N: usize = 2000;
pub const DEFAULT_EIG_TOL: f64 = 1e-9;
const POWER_MAX_ITERS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct BipartiteGraph {
    n: usize,
    delta: usize,
    adj: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct GraphFile {
    edge_order: String,
    n: usize,
    delta: usize,
    adj: Vec<Vec<usize>>,
}

impl TryFrom<GraphFile> for BipartiteGraph {
    type Error = Error;

    fn try_from(f: GraphFile) -> Result<Self> {
        if f.edge_order != EDGE_ORDER {
            return Err(Error::Parse(format!(
                "unsupported edge order `{}`",
                f.edge_order
            )));
        }
        BipartiteGraph::from_adj(f.n, f.delta, f.adj)
    }
}

impl From<BipartiteGraph> for GraphFile {
    fn from(g: BipartiteGraph) -> Self {
        GraphFile {
            edge_order: EDGE_ORDER.into(),
            n: g.n,
            delta: g.delta,
            adj: g.adj,
        }
    }
}

impl BipartiteGraph {
    /// Validates a left adjacency list: `n` lists of `delta` right indices,
    /// every right vertex hit exactly `delta` times.
    pub fn from_adj(n: usize, delta: usize, adj: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 || delta == 0 {
            return Err(Error::BadParams(format!(
                "need n >= 1 and delta >= 1, got {n}, {delta}"
            )));
        }
        if adj.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: adj.len(),
            });
        }
        let mut right = vec![Vec::with_capacity(delta); n];
        for (v, nb) in adj.iter().enumerate() {
            if nb.len() != delta {
                return Err(Error::BadParams(format!(
                    "left vertex {v} has degree {}",
                    nb.len()
                )));
            }
            for (j, &w) in nb.iter().enumerate() {
                if w >= n {
                    return Err(Error::BadParams(format!("right index {w} out of range")));
                }
                right[w].push(v * delta + j);
            }
        }
        if let Some(w) = right.iter().position(|r| r.len() != delta) {
            return Err(Error::BadParams(format!(
                "right vertex {w} has degree {}",
                right[w].len()
            )));
        }
        Ok(BipartiteGraph {
            n,
            delta,
            adj,
            right,
        })
    }

    /// Union of `delta` independent uniform perfect matchings.
    pub fn random_regular(n: usize, delta: usize, seed: u64, simple: bool) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_regular_with(n, delta, simple, &mut rng)
    }

    /// As [`BipartiteGraph::random_regular`] with a caller-supplied stream.
    /// With `simple`, each new matching that repeats an existing edge is
    /// redrawn, up to [`SIMPLE_RETRIES`] times per matching.
    pub fn random_regular_with(
        n: usize,
        delta: usize,
        simple: bool,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        if n == 0 || delta == 0 {
            return Err(Error::BadParams(format!(
                "need n >= 1 and delta >= 1, got {n}, {delta}"
            )));
        }
        if simple && delta > n {
            return Err(Error::RetryExhausted(SIMPLE_RETRIES));
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(delta); n];
        let mut perm: Vec<usize> = (0..n).collect();
        for _ in 0..delta {
            let mut attempts = 0;
            loop {
                perm.shuffle(rng);
                if !simple || repair_matching(&mut perm, &adj, rng) {
                    break;
                }
                attempts += 1;
                if attempts >= SIMPLE_RETRIES {
                    return Err(Error::RetryExhausted(SIMPLE_RETRIES));
                }
            }
            for (v, &w) in perm.iter().enumerate() {
                adj[v].push(w);
            }
        }
        Self::from_adj(n, delta, adj)
    }

    /// `K_{n,n}`: left vertex `v` is joined to `0..n` in order.
    pub fn complete(n: usize) -> Result<Self> {
        Self::from_adj(n, n, (0..n).map(|_| (0..n).collect()).collect())
    }

    /// The cycle on `2n` vertices: left `v` is joined to right `v` and `v+1`.
    pub fn cycle(n: usize) -> Result<Self> {
        Self::from_adj(n, 2, (0..n).map(|v| vec![v, (v + 1) % n]).collect())
    }

    /// Disjoint union, `other`'s vertices shifted by `self.n()` on both sides.
    pub fn disjoint_union(&self, other: &BipartiteGraph) -> Result<Self> {
        if self.delta != other.delta {
            return Err(Error::BadParams("degrees differ".into()));
        }
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|nb| nb.iter().map(|w| w + self.n).collect()),
        );
        Self::from_adj(self.n + other.n, self.delta, adj)
    }

    /// Vertices per side.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn adj(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn edge_count(&self) -> usize {
        self.n * self.delta
    }

    pub fn edge_id(&self, v: usize, j: usize) -> usize {
        v * self.delta + j
    }

    /// `(left, right)` endpoints of edge `e`.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let v = e / self.delta;
        (v, self.adj[v][e % self.delta])
    }

    /// Edge ids at left vertex `v`, in local order.
    pub fn left_edges(&self, v: usize) -> std::ops::Range<usize> {
        v * self.delta..(v + 1) * self.delta
    }

    /// Edge ids at right vertex `w`, increasing.
    pub fn right_edges(&self, w: usize) -> &[usize] {
        &self.right[w]
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        self.right.iter().map(Vec::len).collect()
    }

    pub fn is_simple(&self) -> bool {
        self.adj.iter().all(|nb| {
            let mut s = nb.clone();
            s.sort_unstable();
            s.windows(2).all(|p| p[0] != p[1])
        })
    }

    /// `n x n` matrix of edge multiplicities.
    pub fn biadjacency(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (v, nb) in self.adj.iter().enumerate() {
            for &w in nb {
                m[(v, w)] += 1.0;
            }
        }
        m
    }

    /// Number of connected components of the whole `2n`-vertex graph.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..2 * self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (v, nb) in self.adj.iter().enumerate() {
            for &w in nb {
                let (a, b) = (find(&mut parent, v), find(&mut parent, self.n + w));
                parent[a] = b;
            }
        }
        (0..2 * self.n)
            .filter(|&x| find(&mut parent, x) == x)
            .count()
    }

    /// `deg_S(w)` for every right vertex `w`, counting multiplicities.
    pub fn right_degrees_from(&self, s: &[usize]) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &v in s {
            for &w in &self.adj[v] {
                deg[w] += 1;
            }
        }
        deg
    }

    /// `deg_T(v)` for every left vertex `v`.
    pub fn left_degrees_into(&self, t: &[usize]) -> Vec<usize> {
        let mut in_t = vec![false; self.n];
        for &w in t {
            in_t[w] = true;
        }
        self.adj
            .iter()
            .map(|nb| nb.iter().filter(|&&w| in_t[w]).count())
            .collect()
    }
}

/// Swaps entries of a fresh matching until it shares no edge with the
/// existing lists; false if it gets stuck.
fn repair_matching(perm: &mut [usize], adj: &[Vec<usize>], rng: &mut impl Rng) -> bool {
    let n = perm.len();
    let clash = |v: usize, w: usize| adj[v].contains(&w);
    let budget = 64 * n;
    let mut steps = 0;
    for v in 0..n {
        while clash(v, perm[v]) {
            if steps >= budget {
                return false;
            }
            steps += 1;
            let u = rng.gen_range(0..n);
            if u != v && !clash(v, perm[u]) && !clash(u, perm[v]) {
                perm.swap(u, v);
            }
        }
    }
    true
}

/// Graph on `V0 + V1 + V2` whose left vertices have `delta1` edges into
/// `V1` followed by `delta2` edges into `V2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModifiedGraphFile", into = "ModifiedGraphFile")]
pub struct ModifiedGraph {
    g1: BipartiteGraph,
    g2: BipartiteGraph,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct ModifiedGraphFile {
    edge_order: String,
    n: usize,
    delta: usize,
    delta1: usize,
    delta2: usize,
    adj1: Vec<Vec<usize>>,
    adj2: Vec<Vec<usize>>,
}

impl TryFrom<ModifiedGraphFile> for ModifiedGraph {
    type Error = Error;

    fn try_from(f: ModifiedGraphFile) -> Result<Self> {
        if f.edge_order != EDGE_ORDER {
            return Err(Error::Parse(format!(
                "unsupported edge order `{}`",
                f.edge_order
            )));
        }
        if f.delta != f.delta1 + f.delta2 {
            return Err(Error::Parse("delta must equal delta1 + delta2".into()));
        }
        ModifiedGraph::new(
            BipartiteGraph::from_adj(f.n, f.delta1, f.adj1)?,
            BipartiteGraph::from_adj(f.n, f.delta2, f.adj2)?,
        )
    }
}

impl From<ModifiedGraph> for ModifiedGraphFile {
    fn from(g: ModifiedGraph) -> Self {
        ModifiedGraphFile {
            edge_order: EDGE_ORDER.into(),
            n: g.n(),
            delta: g.delta(),
            delta1: g.delta1(),
            delta2: g.delta2(),
            adj1: g.g1.adj,
            adj2: g.g2.adj,
        }
    }
}

impl ModifiedGraph {
    pub fn new(g1: BipartiteGraph, g2: BipartiteGraph) -> Result<Self> {
        if g1.n != g2.n {
            return Err(Error::LengthMismatch {
                expected: g1.n,
                found: g2.n,
            });
        }
        Ok(ModifiedGraph { g1, g2 })
    }

    pub fn n(&self) -> usize {
        self.g1.n
    }

    pub fn delta1(&self) -> usize {
        self.g1.delta
    }

    pub fn delta2(&self) -> usize {
        self.g2.delta
    }

    /// Left degree `delta1 + delta2`.
    pub fn delta(&self) -> usize {
        self.delta1() + self.delta2()
    }

    /// `G1 = (V0 + V1, E1)`.
    pub fn g1(&self) -> &BipartiteGraph {
        &self.g1
    }

    /// `G2 = (V0 + V2, E2)`.
    pub fn g2(&self) -> &BipartiteGraph {
        &self.g2
    }

    pub fn edge_count(&self) -> usize {
        self.n() * self.delta()
    }

    /// Global id of local edge `j` at left vertex `v`; `j < delta1` are the
    /// `E1` edges.
    pub fn edge_id(&self, v: usize, j: usize) -> usize {
        v * self.delta() + j
    }

    /// Global ids of the `E1` edges at right vertex `w` of `V1`, increasing.
    pub fn v1_edges(&self, w: usize) -> Vec<usize> {
        self.g1
            .right_edges(w)
            .iter()
            .map(|&e| self.edge_id(e / self.delta1(), e % self.delta1()))
            .collect()
    }

    /// Global ids of the `E2` edges at right vertex `w` of `V2`, increasing.
    pub fn v2_edges(&self, w: usize) -> Vec<usize> {
        self.g2
            .right_edges(w)
            .iter()
            .map(|&e| self.edge_id(e / self.delta2(), self.delta1() + e % self.delta2()))
            .collect()
    }
}

/// Two independent random regular graphs sharing the left side; `G1` uses
/// stream 1 of the seed and `G2` stream 2.
pub fn split_modified(
    n: usize,
    delta1: usize,
    delta2: usize,
    seed: u64,
    simple: bool,
) -> Result<ModifiedGraph> {
    let mut r1 = ChaCha8Rng::seed_from_u64(seed);
    r1.set_stream(1);
    let mut r2 = ChaCha8Rng::seed_from_u64(seed);
    r2.set_stream(2);
    ModifiedGraph::new(
        BipartiteGraph::random_regular_with(n, delta1, simple, &mut r1)?,
        BipartiteGraph::random_regular_with(n, delta2, simple, &mut r2)?,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenMethod {
    DenseSvd,
    PowerIteration,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralData {
    pub lambda1: f64,
    pub lambda2: f64,
    pub tol: f64,
    pub method: EigenMethod,
}

/// Second largest adjacency eigenvalue, i.e. the second singular value of
/// the biadjacency matrix.
pub fn second_eigenvalue(g: &BipartiteGraph, tol: f64) -> Result<SpectralData> {
    let lambda1 = g.delta as f64;
    if g.n == 1 {
        return Ok(SpectralData {
            lambda1,
            lambda2: 0.0,
            tol,
            method: EigenMethod::DenseSvd,
        });
    }
    if g.n <= DENSE_SVD_MAX_N {
        let mut sv: Vec<f64> = g.biadjacency().singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        return Ok(SpectralData {
            lambda1,
            lambda2: sv[1].max(0.0),
            tol,
            method: EigenMethod::DenseSvd,
        });
    }
    Ok(SpectralData {
        lambda1,
        lambda2: power_second(g, tol)?,
        tol,
        method: EigenMethod::PowerIteration,
    })
}

/// Power iteration on `M^T M` restricted to the complement of the all-ones
/// vector (the top singular vector of a regular graph).
fn power_second(g: &BipartiteGraph, tol: f64) -> Result<f64> {
    let n = g.n;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    let project = |x: &mut Vec<f64>| {
        let mean = x.iter().sum::<f64>() / n as f64;
        x.iter_mut().for_each(|v| *v -= mean);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            x.iter_mut().for_each(|v| *v /= norm);
        }
        norm
    };
    project(&mut x);
    let mut prev = f64::NAN;
    for _ in 0..POWER_MAX_ITERS {
        // y = M x (left side), z = M^T y (right side).
        let y: Vec<f64> = g
            .adj
            .iter()
            .map(|nb| nb.iter().map(|&w| x[w]).sum())
            .collect();
        let mut z = vec![0.0; n];
        for (v, nb) in g.adj.iter().enumerate() {
            for &w in nb {
                z[w] += y[v];
            }
        }
        x = z;
        let sigma = project(&mut x).sqrt();
        if (sigma - prev).abs() <= tol * 0.1 {
            return Ok(sigma);
        }
        prev = sigma;
    }
    Err(Error::NoConvergence(format!(
        "power iteration after {POWER_MAX_ITERS} steps"
    )))
}

/// `lambda2 <= 2 sqrt(delta - 1) + tol`.
pub fn is_ramanujan(g: &BipartiteGraph, spectral: &SpectralData) -> bool {
    let d = g.delta as f64;
    spectral.lambda2 <= 2.0 * (d - 1.0).max(0.0).sqrt() + spectral.tol
}

/// Right-side degree statistics of a left subset `S`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixingQuery {
    pub s: Vec<usize>,
    pub sigma: f64,
    pub alpha: f64,
    pub deg_s: Vec<usize>,
    /// Right vertices with `deg_S >= (1 + alpha) sigma delta`.
    pub u: Vec<usize>,
    /// Right vertices with `deg_S` within a factor `1 +- alpha` of `sigma delta`.
    pub r_alpha: Vec<usize>,
}

impl MixingQuery {
    pub fn new(g: &BipartiteGraph, s: &[usize], alpha: f64) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::BadParams("S must be nonempty".into()));
        }
        if s.iter().any(|&v| v >= g.n) {
            return Err(Error::BadParams("S contains an out-of-range vertex".into()));
        }
        let mut s = s.to_vec();
        s.sort_unstable();
        s.dedup();
        let sigma = s.len() as f64 / g.n as f64;
        let centre = sigma * g.delta as f64;
        let deg_s = g.right_degrees_from(&s);
        let u = (0..g.n)
            .filter(|&w| deg_s[w] as f64 >= (1.0 + alpha) * centre)
            .collect();
        let r_alpha = (0..g.n)
            .filter(|&w| {
                let d = deg_s[w] as f64;
                (1.0 - alpha) * centre <= d && d <= (1.0 + alpha) * centre
            })
            .collect();
        Ok(MixingQuery {
            s,
            sigma,
            alpha,
            deg_s,
            u,
            r_alpha,
        })
    }

    /// `1 - |R_alpha| / n`.
    pub fn atypical_fraction(&self) -> f64 {
        1.0 - self.r_alpha.len() as f64 / self.deg_s.len() as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MixingVerdict {
    pub u_size: usize,
    /// `lambda2 |S| / (2 sigma delta alpha - lambda2)`.
    pub bound: f64,
    pub holds: bool,
}

/// Computes `U` exactly and compares `|U|` with the expander-mixing bound.
pub fn mixing_excess_check(
    g: &BipartiteGraph,
    s: &[usize],
    alpha: f64,
    lambda2: f64,
) -> Result<(MixingQuery, MixingVerdict)> {
    let q = MixingQuery::new(g, s, alpha)?;
    let denom_unit = 2.0 * q.sigma * g.delta as f64;
    let min = lambda2 / denom_unit;
    if !(alpha > min) {
        return Err(Error::AlphaTooSmall { alpha, min });
    }
    let bound = lambda2 * q.s.len() as f64 / (denom_unit * alpha - lambda2);
    let verdict = MixingVerdict {
        u_size: q.u.len(),
        bound,
        holds: q.u.len() as f64 <= bound + 1e-9,
    };
    Ok((q, verdict))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ExpansionVerdict {
    /// Some vertex of `S` or `T` has fewer edges into the other set than
    /// required (or a set is empty).
    HypothesisUnmet,
    Holds {
        s_size: usize,
        bound: f64,
    },
    Violated {
        s_size: usize,
        bound: f64,
    },
}

impl ExpansionVerdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, ExpansionVerdict::Violated { .. })
    }
}

/// Checks `|S| >= alpha1 n (1 - lambda2/(delta alpha0)) (1 - lambda2/(2 delta alpha1))`
/// after verifying the degree hypotheses. The bound is taken as 0 when
/// either factor is non-positive, where it carries no information.
pub fn expansion_check(
    g: &BipartiteGraph,
    s: &[usize],
    t: &[usize],
    alpha0: f64,
    alpha1: f64,
    lambda2: f64,
) -> ExpansionVerdict {
    if s.is_empty()
        || t.is_empty()
        || !(alpha0 > 0.0 && alpha0 <= 1.0 && alpha1 > 0.0 && alpha1 <= 1.0)
    {
        return ExpansionVerdict::HypothesisUnmet;
    }
    let d = g.delta as f64;
    let deg_t = g.left_degrees_into(t);
    let deg_s = g.right_degrees_from(s);
    let eps = 1e-12;
    if s.iter().any(|&v| (deg_t[v] as f64) < alpha0 * d - eps)
        || t.iter().any(|&w| (deg_s[w] as f64) < alpha1 * d - eps)
    {
        return ExpansionVerdict::HypothesisUnmet;
    }
    let f0 = 1.0 - lambda2 / (d * alpha0);
    let f1 = 1.0 - lambda2 / (2.0 * d * alpha1);
    let bound = if f0 > 0.0 && f1 > 0.0 {
        alpha1 * g.n as f64 * f0 * f1
    } else {
        0.0
    };
    let s_size = s.len();
    if s_size as f64 + 1e-9 >= bound {
        ExpansionVerdict::Holds { s_size, bound }
    } else {
        ExpansionVerdict::Violated { s_size, bound }
    }
}

/// Largest `(alpha0, alpha1)` for which the hypotheses hold on `(S, T)`.
pub fn tight_alphas(g: &BipartiteGraph, s: &[usize], t: &[usize]) -> (f64, f64) {
    let d = g.delta as f64;
    let deg_t = g.left_degrees_into(t);
    let deg_s = g.right_degrees_from(s);
    let a0 = s.iter().map(|&v| deg_t[v]).min().unwrap_or(0) as f64 / d;
    let a1 = t.iter().map(|&w| deg_s[w]).min().unwrap_or(0) as f64 / d;
    (a0, a1)
}
