//! Assembly of bipartite-graph codes in the basic, multiple-edge and modified
//! variants, with exact parameters and per-codeword support profiles.
//!
//! Edge `e` carries bits `t*e .. t*e + t - 1`. A left vertex sees its edges in
//! local order, a right vertex in increasing edge id.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVector};
use crate::graph::{second_eigenvalue, BipartiteGraph, ModifiedGraph, DEFAULT_EIG_TOL};
use crate::localcode::{self, information_set_check, LocalCode, LocalCodeFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Basic,
    Multiedge,
    Modified,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CodeGraph {
    Plain(BipartiteGraph),
    Modified(ModifiedGraph),
}

/// Which local code a vertex check applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// Code `A` at a left vertex.
    Left,
    /// Code `B` at a right vertex (of `V1` in the modified variant).
    Right,
    /// Code `A_aux` on the `E1` edges of a left vertex.
    Aux,
}

#[derive(Clone, Debug, PartialEq)]
struct LocalCheck {
    role: Role,
    vertex: usize,
    positions: Vec<usize>,
}

/// An assembled code with its global parity-check matrix and a basis.
#[derive(Clone, Debug)]
pub struct ExpanderCode {
    variant: Variant,
    t: usize,
    graph: CodeGraph,
    a: LocalCode,
    b: LocalCode,
    aux: Option<LocalCode>,
    info_set: Option<Vec<usize>>,
    checks: Vec<LocalCheck>,
    parity: BitMatrix,
    basis: Vec<BitVector>,
}

fn block_positions(edges: impl IntoIterator<Item = usize>, t: usize) -> Vec<usize> {
    edges.into_iter().flat_map(|e| t * e..t * e + t).collect()
}

fn expect_len(code: &LocalCode, expected: usize) -> Result<()> {
    if code.len() == expected {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected,
            found: code.len(),
        })
    }
}

impl ExpanderCode {
    /// `C(G; A, B)` with one bit per edge.
    pub fn build_basic(g: &BipartiteGraph, a: &LocalCode, b: &LocalCode) -> Result<Self> {
        if a.t() != 1 || b.t() != 1 {
            return Err(Error::BadParams(
                "the basic variant needs t = 1 local codes".into(),
            ));
        }
        expect_len(a, g.delta())?;
        expect_len(b, g.delta())?;
        Self::assemble_plain(Variant::Basic, g, a.clone(), b.clone(), 1)
    }

    /// `t` bits per edge: `A` is a binary code of length `t * delta` at the
    /// left vertices, `B` the same length read as a `2^t`-ary code at the
    /// right vertices.
    pub fn build_multiedge(
        g: &BipartiteGraph,
        a: &LocalCode,
        b: &LocalCode,
        t: usize,
    ) -> Result<Self> {
        if t == 0 {
            return Err(Error::BadParams("t must be positive".into()));
        }
        expect_len(a, t * g.delta())?;
        expect_len(b, t * g.delta())?;
        Self::assemble_plain(
            Variant::Multiedge,
            g,
            a.with_symbol_size(t)?,
            b.with_symbol_size(t)?,
            t,
        )
    }

    fn assemble_plain(
        variant: Variant,
        g: &BipartiteGraph,
        a: LocalCode,
        b: LocalCode,
        t: usize,
    ) -> Result<Self> {
        let mut checks = Vec::with_capacity(2 * g.n());
        for v in 0..g.n() {
            checks.push(LocalCheck {
                role: Role::Left,
                vertex: v,
                positions: block_positions(g.left_edges(v), t),
            });
        }
        for w in 0..g.n() {
            checks.push(LocalCheck {
                role: Role::Right,
                vertex: w,
                positions: block_positions(g.right_edges(w).iter().copied(), t),
            });
        }
        Self::finish(
            variant,
            t,
            CodeGraph::Plain(g.clone()),
            a,
            b,
            None,
            None,
            checks,
        )
    }

    /// Modified construction: `A` (length `t * delta`) at every left vertex,
    /// `B` (length `t * delta1`) at every vertex of `V1`, and `A_aux` (length
    /// `t * delta1`) on the `E1` edges of every left vertex. `info` lists the
    /// symbol positions, all among the first `delta1`, that must form an
    /// information set of `A`; one set is shared by all vertices.
    pub fn build_modified(
        mg: &ModifiedGraph,
        a: &LocalCode,
        b: &LocalCode,
        aux: &LocalCode,
        t: usize,
        info: &[usize],
    ) -> Result<Self> {
        if t == 0 {
            return Err(Error::BadParams("t must be positive".into()));
        }
        expect_len(a, t * mg.delta())?;
        expect_len(b, t * mg.delta1())?;
        expect_len(aux, t * mg.delta1())?;
        let a = a.with_symbol_size(t)?;
        if info.iter().any(|&s| s >= mg.delta1()) || !information_set_check(&a, info) {
            return Err(Error::NotAnInformationSet);
        }
        let n = mg.n();
        let mut checks = Vec::with_capacity(3 * n);
        for v in 0..n {
            checks.push(LocalCheck {
                role: Role::Left,
                vertex: v,
                positions: block_positions(mg.edge_id(v, 0)..mg.edge_id(v, mg.delta()), t),
            });
        }
        for w in 0..n {
            checks.push(LocalCheck {
                role: Role::Right,
                vertex: w,
                positions: block_positions(mg.v1_edges(w), t),
            });
        }
        for v in 0..n {
            checks.push(LocalCheck {
                role: Role::Aux,
                vertex: v,
                positions: block_positions(mg.edge_id(v, 0)..mg.edge_id(v, mg.delta1()), t),
            });
        }
        Self::finish(
            Variant::Modified,
            t,
            CodeGraph::Modified(mg.clone()),
            a,
            b.with_symbol_size(t)?,
            Some(aux.with_symbol_size(t)?),
            Some(info.to_vec()),
            checks,
        )
    }

    /// Gallager's low-density codes: single parity checks on the left,
    /// repetition on the right.
    pub fn gallager(g: &BipartiteGraph) -> Result<Self> {
        Self::build_basic(
            g,
            &localcode::single_parity(g.delta())?,
            &localcode::repetition(g.delta())?,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        variant: Variant,
        t: usize,
        graph: CodeGraph,
        a: LocalCode,
        b: LocalCode,
        aux: Option<LocalCode>,
        info_set: Option<Vec<usize>>,
        checks: Vec<LocalCheck>,
    ) -> Result<Self> {
        let len = match &graph {
            CodeGraph::Plain(g) => g.edge_count() * t,
            CodeGraph::Modified(m) => m.edge_count() * t,
        };
        let mut parity = BitMatrix::zeros(0, len);
        for check in &checks {
            let local = match check.role {
                Role::Left => &a,
                Role::Right => &b,
                Role::Aux => aux.as_ref().expect("aux code present"),
            };
            for h in local.parity().row_vectors() {
                parity.push_row(BitVector::from_support(
                    len,
                    h.ones_iter().map(|i| check.positions[i]),
                ))?;
            }
        }
        let basis = gf2::nullspace_basis(&parity);
        Ok(ExpanderCode {
            variant,
            t,
            graph,
            a,
            b,
            aux,
            info_set,
            checks,
            parity,
            basis,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn graph(&self) -> &CodeGraph {
        &self.graph
    }

    pub fn code_a(&self) -> &LocalCode {
        &self.a
    }

    pub fn code_b(&self) -> &LocalCode {
        &self.b
    }

    pub fn code_aux(&self) -> Option<&LocalCode> {
        self.aux.as_ref()
    }

    pub fn info_set(&self) -> Option<&[usize]> {
        self.info_set.as_deref()
    }

    /// Code length in bits.
    pub fn len(&self) -> usize {
        self.parity.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.len() as f64
    }

    /// Global parity-check matrix: `A` rows, then `B` rows, then `A_aux` rows.
    pub fn parity(&self) -> &BitMatrix {
        &self.parity
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    /// Vertices per side.
    pub fn n(&self) -> usize {
        match &self.graph {
            CodeGraph::Plain(g) => g.n(),
            CodeGraph::Modified(m) => m.n(),
        }
    }

    /// Membership through the vertex-local conditions.
    pub fn is_codeword(&self, x: &BitVector) -> Result<bool> {
        if x.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: x.len(),
            });
        }
        for check in &self.checks {
            let local = self.local_code(check.role);
            if !local.contains(&x.gather(&check.positions))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Membership through `H x = 0`.
    pub fn satisfies_parity(&self, x: &BitVector) -> Result<bool> {
        Ok(self.parity.mul_vec(x)?.is_zero())
    }

    fn local_code(&self, role: Role) -> &LocalCode {
        match role {
            Role::Left => &self.a,
            Role::Right => &self.b,
            Role::Aux => self.aux.as_ref().expect("aux code present"),
        }
    }

    /// Exact minimum distance by enumerating all `2^k` codewords.
    pub fn min_distance_bruteforce(&self) -> Result<usize> {
        gf2::min_distance(self.len(), &self.basis)
    }

    /// Minimum distance and up to `limit` codewords attaining it.
    pub fn min_weight_codewords(&self, limit: usize) -> Result<(usize, Vec<BitVector>)> {
        gf2::min_weight_codewords(self.len(), &self.basis, limit)
    }

    /// Uniform random codeword.
    pub fn random_codeword(&self, rng: &mut impl Rng) -> BitVector {
        let mut x = BitVector::zeros(self.len());
        for b in &self.basis {
            if rng.gen::<bool>() {
                x.xor_assign(b);
            }
        }
        x
    }

    /// Second eigenvalue of the graph the distance argument runs on (`G1`
    /// for the modified variant).
    pub fn lambda2(&self) -> Result<f64> {
        let g = match &self.graph {
            CodeGraph::Plain(g) => g,
            CodeGraph::Modified(m) => m.g1(),
        };
        Ok(second_eigenvalue(g, DEFAULT_EIG_TOL)?.lambda2)
    }

    /// Distance guaranteed by the expansion argument for a graph with second
    /// eigenvalue `lambda2`, clamped at 0. With `d0` the binary distance of
    /// `A` over its length and `d1` the `q`-ary distance of `B`:
    /// `N (d0/(t D)) (d1/D_B) (1 - lambda2/a0) (1 - lambda2/(2 d1))`, where
    /// `a0` is the `q`-ary distance of `A` (of `A_aux` in the modified
    /// variant) and `D`, `D_B` the symbol lengths of `A` and `B`.
    pub fn designed_distance(&self, lambda2: f64) -> Result<f64> {
        let delta0 = self.a.distance()? as f64 / self.a.len() as f64;
        let d1 = self.b.qary_distance()? as f64;
        let delta1 = d1 / self.b.symbols() as f64;
        let a0 = match &self.aux {
            Some(aux) => aux.qary_distance()? as f64,
            None => self.a.qary_distance()? as f64,
        };
        let value = self.len() as f64
            * delta0
            * delta1
            * (1.0 - lambda2 / a0)
            * (1.0 - lambda2 / (2.0 * d1));
        Ok(
            if (1.0 - lambda2 / a0) <= 0.0 || (1.0 - lambda2 / (2.0 * d1)) <= 0.0 {
                0.0
            } else {
                value.max(0.0)
            },
        )
    }

    /// Rate guaranteed by counting constraints: `R0 + R1 - 1` for the basic
    /// and multiple-edge variants, `R0 - (delta1/delta)(2 - R1 - R_aux)` for
    /// the modified one (equal to `R0 R1 - R0 (1 - R_aux)` when
    /// `R0 = delta1/delta`).
    pub fn rate_floor(&self) -> f64 {
        let (r0, r1) = (self.a.rate(), self.b.rate());
        match (&self.graph, &self.aux) {
            (CodeGraph::Modified(m), Some(aux)) => {
                r0 - m.delta1() as f64 / m.delta() as f64 * (2.0 - r1 - aux.rate())
            }
            _ => r0 + r1 - 1.0,
        }
    }

    /// Support profile of a nonzero codeword. For the modified variant only
    /// the `E1` edges and the graph `G1` are considered.
    pub fn codeword_profile(&self, x: &BitVector) -> Result<CodewordProfile> {
        if x.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: x.len(),
            });
        }
        if x.is_zero() {
            return Err(Error::ZeroCodeword);
        }
        let t = self.t;
        match &self.graph {
            CodeGraph::Plain(g) => {
                let weights: Vec<usize> =
                    (0..g.edge_count()).map(|e| edge_weight(x, e, t)).collect();
                Ok(profile_from_weights(g, &weights, t, x.weight()))
            }
            CodeGraph::Modified(m) => {
                let g1 = m.g1();
                let weights: Vec<usize> = (0..g1.edge_count())
                    .map(|e| edge_weight(x, m.edge_id(e / m.delta1(), e % m.delta1()), t))
                    .collect();
                Ok(profile_from_weights(g1, &weights, t, x.weight()))
            }
        }
    }

    pub fn to_file(&self) -> CodeFile {
        let graph = match &self.graph {
            CodeGraph::Plain(g) => serde_json::to_value(g),
            CodeGraph::Modified(m) => serde_json::to_value(m),
        }
        .expect("graph serialises");
        CodeFile {
            variant: self.variant,
            t: self.t,
            graph,
            code_a: CodeRef::Inline(self.a.to_file()),
            code_b: CodeRef::Inline(self.b.to_file()),
            code_aux: self.aux.as_ref().map(|c| CodeRef::Inline(c.to_file())),
            info_set: self.info_set.clone(),
        }
    }
}

fn edge_weight(x: &BitVector, e: usize, t: usize) -> usize {
    (t * e..t * e + t).filter(|&i| x.get(i)).count()
}

/// A local code given by catalog name or inline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CodeRef {
    Name(String),
    Inline(LocalCodeFile),
}

impl CodeRef {
    pub fn resolve(&self) -> Result<LocalCode> {
        match self {
            CodeRef::Name(n) => localcode::catalog_lookup(n),
            CodeRef::Inline(f) => f.clone().into_code(),
        }
    }
}

/// On-disk description of an [`ExpanderCode`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeFile {
    pub variant: Variant,
    pub t: usize,
    pub graph: serde_json::Value,
    pub code_a: CodeRef,
    pub code_b: CodeRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code_aux: Option<CodeRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub info_set: Option<Vec<usize>>,
}

impl CodeFile {
    pub fn build(&self) -> Result<ExpanderCode> {
        let a = self.code_a.resolve()?;
        let b = self.code_b.resolve()?;
        match self.variant {
            Variant::Basic | Variant::Multiedge => {
                let g: BipartiteGraph = serde_json::from_value(self.graph.clone())?;
                if self.variant == Variant::Basic {
                    ExpanderCode::build_basic(&g, &a, &b)
                } else {
                    ExpanderCode::build_multiedge(&g, &a, &b, self.t)
                }
            }
            Variant::Modified => {
                let m: ModifiedGraph = serde_json::from_value(self.graph.clone())?;
                let aux = self
                    .code_aux
                    .as_ref()
                    .ok_or_else(|| Error::Parse("modified variant needs code_aux".into()))?
                    .resolve()?;
                let info = self
                    .info_set
                    .as_ref()
                    .ok_or_else(|| Error::Parse("modified variant needs info_set".into()))?;
                ExpanderCode::build_modified(&m, &a, &b, &aux, self.t, info)
            }
        }
    }
}

/// Per-vertex averages of the relative edge weights.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VertexProfile {
    pub vertex: usize,
    /// Edges into the opposite support set (`deg_T(v)` or `deg_S(v)`).
    pub degree: usize,
    /// Nonzero incident edges.
    pub nonzero: usize,
    /// Total binary weight on the incident edges.
    pub weight: usize,
    /// Mean relative weight over all edges into the opposite support set.
    pub gamma_v: f64,
    /// Mean relative weight over the nonzero incident edges.
    pub beta_v: f64,
}

/// Support structure of a codeword: the minimal vertex sets `S`, `T`
/// covering its nonzero edges and the averaged edge weights.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodewordProfile {
    pub s: Vec<usize>,
    pub t_set: Vec<usize>,
    pub sigma: f64,
    pub tau: f64,
    /// `|(S,T)|`.
    pub edges_st: usize,
    /// Total binary weight on `(S,T)`, i.e. of the codeword.
    pub weight_st: usize,
    pub gamma: f64,
    pub left: Vec<VertexProfile>,
    pub right: Vec<VertexProfile>,
    pub binary_weight: usize,
    pub qary_weight: usize,
}

impl CodewordProfile {
    /// `gamma |(S,T)| = sum_{v in T} deg_S(v) gamma_v`, checked on the
    /// integer weight sums.
    pub fn averaging_identity_holds(&self) -> bool {
        let right: usize = self.right.iter().map(|v| v.weight).sum();
        let left: usize = self.left.iter().map(|v| v.weight).sum();
        right == self.weight_st && left == self.weight_st
    }

    /// `|gamma - mean_T gamma_v|`, reported without a threshold.
    pub fn right_average_gap(&self) -> f64 {
        let mean = self.right.iter().map(|v| v.gamma_v).sum::<f64>() / self.right.len() as f64;
        (self.gamma - mean).abs()
    }

    /// `|gamma - mean_S gamma_v|`.
    pub fn left_average_gap(&self) -> f64 {
        let mean = self.left.iter().map(|v| v.gamma_v).sum::<f64>() / self.left.len() as f64;
        (self.gamma - mean).abs()
    }
}

fn profile_from_weights(
    g: &BipartiteGraph,
    w: &[usize],
    t: usize,
    binary_weight: usize,
) -> CodewordProfile {
    let n = g.n();
    let left_nz = |v: usize| g.left_edges(v).any(|e| w[e] > 0);
    let right_nz = |u: usize| g.right_edges(u).iter().any(|&e| w[e] > 0);
    let s: Vec<usize> = (0..n).filter(|&v| left_nz(v)).collect();
    let t_set: Vec<usize> = (0..n).filter(|&u| right_nz(u)).collect();
    let mut in_s = vec![false; n];
    let mut in_t = vec![false; n];
    s.iter().for_each(|&v| in_s[v] = true);
    t_set.iter().for_each(|&u| in_t[u] = true);
    let tf = t as f64;
    let summarize = |vertex: usize, edges: &mut dyn Iterator<Item = (usize, bool)>| {
        let (mut degree, mut nonzero, mut weight) = (0, 0, 0);
        for (e, inside) in edges {
            if inside {
                degree += 1;
            }
            if w[e] > 0 {
                nonzero += 1;
                weight += w[e];
            }
        }
        VertexProfile {
            vertex,
            degree,
            nonzero,
            weight,
            gamma_v: weight as f64 / (tf * degree as f64),
            beta_v: weight as f64 / (tf * nonzero as f64),
        }
    };
    let left: Vec<VertexProfile> = s
        .iter()
        .map(|&v| summarize(v, &mut g.left_edges(v).map(|e| (e, in_t[g.endpoints(e).1]))))
        .collect();
    let right: Vec<VertexProfile> = t_set
        .iter()
        .map(|&u| {
            summarize(
                u,
                &mut g.right_edges(u).iter().map(|&e| (e, in_s[e / g.delta()])),
            )
        })
        .collect();
    let edges_st: usize = right.iter().map(|v| v.degree).sum();
    let weight_st: usize = w.iter().sum();
    CodewordProfile {
        sigma: s.len() as f64 / n as f64,
        tau: t_set.len() as f64 / n as f64,
        s,
        t_set,
        edges_st,
        weight_st,
        gamma: weight_st as f64 / (tf * edges_st as f64),
        left,
        right,
        binary_weight,
        qary_weight: w.iter().filter(|&&x| x > 0).count(),
    }
}
