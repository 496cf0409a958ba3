//! Concrete finite simple graphs: ingestion, generators, distance
//! partitions, distance-regularity detection, local graphs and distance
//! matrices.

mod generators;

pub use generators::{
    complete, complete_bipartite, cycle, folded_hypercube, generate, grassmann_q, hamming, hypercube, johnson,
    path, petersen, star,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact::{rat, rational_roots, IntPolynomial, RationalMatrix};
use crate::params::{Eigenvalue, IntersectionArray, SpectrumEntry};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    adj: Vec<Vec<usize>>,
    connected: bool,
    /// Generator-specific vertex labels, kept for debugging output.
    labels: Option<Vec<String>>,
}

impl Graph {
    /// A simple connected graph on `0..n`.
    pub fn new(n: usize, edges: &[(usize, usize)], name: impl Into<String>) -> Result<Self> {
        let g = Self::build(n, edges, name)?;
        if !g.connected {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Like [`Graph::new`] but accepts disconnected graphs.
    pub fn new_possibly_disconnected(n: usize, edges: &[(usize, usize)], name: impl Into<String>) -> Result<Self> {
        Self::build(n, edges, name)
    }

    fn build(n: usize, edges: &[(usize, usize)], name: impl Into<String>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parse(format!("edge ({u}, {v}) has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(Error::NotSimple(format!("loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::NotSimple(format!("duplicate edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut g = Self {
            name: name.into(),
            adj,
            connected: true,
            labels: None,
        };
        g.connected = n == 0 || g.bfs(0).iter().all(|d| d.is_some());
        Ok(g)
    }

    pub(crate) fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
        self
    }

    /// Parses the edge-list format: first line `n`, then one `u v` pair per
    /// line, 0-indexed and whitespace-separated; `#` starts a comment.
    pub fn from_edge_list(text: &str, name: impl Into<String>) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, first) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::Parse(format!("line {ln}: expected vertex count, got {first:?}")))?;
        let mut edges = Vec::new();
        for (ln, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = fields[..] else {
                return Err(Error::Parse(format!("line {ln}: expected `u v`, got {line:?}")));
            };
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {ln}: bad vertex {s:?}")))
            };
            edges.push((parse(u)?, parse(v)?));
        }
        Self::new(n, &edges, name)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# {}\n{}\n", self.name, self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![None; self.n()];
        for s in 0..self.n() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn bfs(&self, x: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[x] = Some(0);
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn adjacency_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.n(), self.n(), |i, j| {
            if self.has_edge(i, j) {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    /// Induced subgraph on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize], name: impl Into<String>) -> Self {
        let index: std::collections::HashMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for w in &self.adj[v] {
                if let Some(&j) = index.get(w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        let labels = vertices.iter().map(|&v| self.label(v)).collect();
        Self::build(vertices.len(), &edges, name)
            .expect("induced subgraph of a simple graph is simple")
            .with_labels(labels)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistancePartition {
    pub base: usize,
    pub dist: Vec<usize>,
    pub eccentricity: usize,
    /// `cells[i]` lists the vertices at distance `i`, in increasing order.
    pub cells: Vec<Vec<usize>>,
}

/// Breadth-first distances from `x`.
pub fn distances(g: &Graph, x: usize) -> Result<DistancePartition> {
    if x >= g.n() {
        return Err(Error::IndexOutOfRange {
            index: x,
            max: g.n().saturating_sub(1),
        });
    }
    if !g.connected {
        return Err(Error::Disconnected);
    }
    let dist: Vec<usize> = g.bfs(x).into_iter().map(|d| d.expect("connected")).collect();
    let eccentricity = *dist.iter().max().unwrap();
    let mut cells = vec![Vec::new(); eccentricity + 1];
    for (v, &d) in dist.iter().enumerate() {
        cells[d].push(v);
    }
    Ok(DistancePartition {
        base: x,
        dist,
        eccentricity,
        cells,
    })
}

/// All-pairs distance table of a connected graph.
pub fn distance_table(g: &Graph) -> Result<Vec<Vec<usize>>> {
    (0..g.n()).map(|x| distances(g, x).map(|p| p.dist)).collect()
}

pub fn diameter(g: &Graph) -> Result<usize> {
    Ok(distance_table(g)?.iter().flatten().copied().max().unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DrgMode {
    /// Constancy of `c_i`, `a_i`, `b_i` over all vertex pairs.
    #[default]
    Cheap,
    /// Additionally, constancy of every `p^h_ij` over all pairs.
    Full,
}

/// A pair of vertices at which a count differs from the reference value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotDrgWitness {
    pub x: usize,
    pub y: usize,
    pub quantity: String,
    pub value: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DrgCheck {
    Regular(IntersectionArray),
    NotRegular(NotDrgWitness),
}

impl DrgCheck {
    pub fn array(&self) -> Option<&IntersectionArray> {
        match self {
            DrgCheck::Regular(ia) => Some(ia),
            DrgCheck::NotRegular(_) => None,
        }
    }
}

pub fn is_distance_regular(g: &Graph, mode: DrgMode) -> Result<DrgCheck> {
    let table = distance_table(g)?;
    let d = table.iter().flatten().copied().max().unwrap_or(0);
    // expected[i] = (c_i, a_i, b_i) with the pair that fixed it.
    let mut expected: Vec<Option<[usize; 3]>> = vec![None; d + 1];
    for x in 0..g.n() {
        for y in 0..g.n() {
            let i = table[x][y];
            let mut cab = [0usize; 3];
            for &z in g.neighbors(y) {
                let j = table[x][z];
                cab[j + 1 - i] += 1;
            }
            match &expected[i] {
                None => expected[i] = Some(cab),
                Some(e) => {
                    if let Some(k) = (0..3).find(|&k| e[k] != cab[k]) {
                        return Ok(DrgCheck::NotRegular(NotDrgWitness {
                            x,
                            y,
                            quantity: format!("{}_{i}", ["c", "a", "b"][k]),
                            value: cab[k],
                            expected: e[k],
                        }));
                    }
                }
            }
        }
    }
    if mode == DrgMode::Full {
        if let Err(w) = brute_p_table(g, &table, d) {
            return Ok(DrgCheck::NotRegular(w));
        }
    }
    let cab: Vec<[usize; 3]> = expected.into_iter().map(|e| e.expect("every distance occurs")).collect();
    let b: Vec<i64> = (0..d).map(|i| cab[i][2] as i64).collect();
    let c: Vec<i64> = (1..=d).map(|i| cab[i][0] as i64).collect();
    Ok(DrgCheck::Regular(IntersectionArray::from_i64(&b, &c)?))
}

/// `p^h_ij = |Γ_i(x) ∩ Γ_j(y)|` counted at every pair with `∂(x, y) = h`;
/// fails with a witness if any count is not constant.
fn brute_p_table(g: &Graph, table: &[Vec<usize>], d: usize) -> std::result::Result<Vec<Vec<Vec<usize>>>, NotDrgWitness> {
    let mut p: Vec<Option<Vec<Vec<usize>>>> = vec![None; d + 1];
    for x in 0..g.n() {
        for y in 0..g.n() {
            let h = table[x][y];
            let mut counts = vec![vec![0usize; d + 1]; d + 1];
            for z in 0..g.n() {
                counts[table[x][z]][table[y][z]] += 1;
            }
            match &p[h] {
                None => p[h] = Some(counts),
                Some(e) => {
                    for i in 0..=d {
                        for j in 0..=d {
                            if e[i][j] != counts[i][j] {
                                return Err(NotDrgWitness {
                                    x,
                                    y,
                                    quantity: format!("p^{h}_{{{i},{j}}}"),
                                    value: counts[i][j],
                                    expected: e[i][j],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(p.into_iter().map(|t| t.expect("every distance occurs")).collect())
}

/// Brute-force `p^h_ij` table indexed `[h][i][j]`, or `None` when some
/// count is not constant over pairs at distance `h`.
pub fn brute_intersection_numbers(g: &Graph) -> Result<Option<Vec<Vec<Vec<usize>>>>> {
    let table = distance_table(g)?;
    let d = table.iter().flatten().copied().max().unwrap_or(0);
    Ok(brute_p_table(g, &table, d).ok())
}

/// Induced subgraph on the neighbours of `x`; may be disconnected.
pub fn local_graph(g: &Graph, x: usize) -> Result<Graph> {
    if x >= g.n() {
        return Err(Error::IndexOutOfRange {
            index: x,
            max: g.n().saturating_sub(1),
        });
    }
    Ok(g.induced(g.neighbors(x), format!("local({}, {x})", g.name)))
}

/// The 0/1 matrix `A_i` with `(y, z)` entry 1 iff `∂(y, z) = i`.
pub fn distance_matrix(g: &Graph, i: usize) -> Result<RationalMatrix> {
    let table = distance_table(g)?;
    let d = table.iter().flatten().copied().max().unwrap_or(0);
    if i > d {
        return Err(Error::IndexOutOfRange { index: i, max: d });
    }
    Ok(RationalMatrix::from_fn(g.n(), g.n(), |y, z| {
        if table[y][z] == i {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    }))
}

/// Adjacency spectrum from the exact characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteSpectrum {
    pub char_poly: IntPolynomial,
    /// Rational eigenvalues, decreasing, with algebraic multiplicity and
    /// eigenspace dimension.
    pub rational: Vec<(BigRational, usize, usize)>,
    /// Factor of the characteristic polynomial without rational roots.
    pub remainder: IntPolynomial,
}

pub fn adjacency_spectrum(g: &Graph) -> Result<ConcreteSpectrum> {
    let a = g.adjacency_matrix();
    let char_poly = a.char_poly()?;
    let roots = rational_roots(&char_poly)?;
    let n = g.n();
    let rational = roots
        .roots
        .iter()
        .map(|(theta, m)| {
            let shifted = a
                .sub(&RationalMatrix::identity(n).scale(theta))
                .expect("square");
            (theta.clone(), *m, n - shifted.rank())
        })
        .collect();
    Ok(ConcreteSpectrum {
        char_poly,
        rational,
        remainder: roots.remainder,
    })
}

impl ConcreteSpectrum {
    /// Whether this spectrum equals one computed from an intersection array:
    /// the same rational eigenvalues with matching multiplicities and
    /// eigenspace dimensions, and a remainder equal to the product of
    /// `factor^m` over the distinct irrational factors.
    pub fn agrees_with(&self, spectrum: &[SpectrumEntry]) -> bool {
        let mut rational = Vec::new();
        let mut irrational: Vec<(IntPolynomial, BigRational)> = Vec::new();
        for e in spectrum {
            let Some(m) = &e.multiplicity else { return false };
            match &e.theta {
                Eigenvalue::Rational { value } => rational.push((value.clone(), m.clone())),
                Eigenvalue::Irrational { factor, .. } => {
                    if let Some((_, m0)) = irrational.iter().find(|(f, _)| f == factor) {
                        if m0 != m {
                            return false;
                        }
                    } else {
                        irrational.push((factor.clone(), m.clone()));
                    }
                }
            }
        }
        rational.sort_by(|a, b| b.0.cmp(&a.0));
        if rational.len() != self.rational.len() {
            return false;
        }
        for ((theta, m), (t, alg, geo)) in rational.iter().zip(&self.rational) {
            if theta != t || *m != rat(*alg as i64) || alg != geo {
                return false;
            }
        }
        let mut product = IntPolynomial::one();
        for (f, m) in &irrational {
            if !m.is_integer() || m.numer() <= &BigInt::zero() {
                return false;
            }
            let e: usize = match m.numer().try_into() {
                Ok(e) => e,
                Err(_) => return false,
            };
            product = product.mul(&f.pow(e));
        }
        product.primitive() == self.remainder.primitive()
    }
}
