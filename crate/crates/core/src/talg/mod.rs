//! The Terwilliger algebra of a graph with respect to a base vertex.
//!
//! With `E_i*` the projection onto the `i`-th subconstituent, the adjacency
//! matrix splits as `A = L + F + R` where `L` lowers, `F` preserves and `R`
//! raises the distance from the base vertex. In the bipartite quotient mode
//! the flat part is dropped and the algebra is generated by `L`, `R` and the
//! `E_i*` only.

mod modules;

pub use modules::{
    canonical_basis, decompose, irreducibility_test, level_products, local_eigenvalue, tf_isomorphic, thinness_report, CanonicalBasis,
    Decomposition, Irreducibility, TModule, TModuleSummary, ThinnessReport,
};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::RationalMatrix;
use crate::graphs::{distances, DistancePartition, Graph};

pub type Vector = Vec<BigRational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// The algebra `T` generated by `A` and the `E_i*`.
    Full,
    /// The algebra `T_f` of the bipartite graph with adjacency `L + R`.
    BipartiteQuotient,
}

#[derive(Debug, Clone)]
pub struct TerwilligerContext {
    graph: Graph,
    mode: Mode,
    partition: DistancePartition,
    /// Neighbours one step closer to the base vertex.
    down: Vec<Vec<usize>>,
    flat: Vec<Vec<usize>>,
    /// Neighbours one step further from the base vertex.
    up: Vec<Vec<usize>>,
}

impl TerwilligerContext {
    /// Builds the context and checks the defining identities exactly.
    pub fn new(graph: &Graph, base: usize, mode: Mode) -> Result<Self> {
        let partition = distances(graph, base)?;
        let n = graph.n();
        let (mut down, mut flat, mut up) = (vec![Vec::new(); n], vec![Vec::new(); n], vec![Vec::new(); n]);
        for y in 0..n {
            let dy = partition.dist[y];
            for &z in graph.neighbors(y) {
                let dz = partition.dist[z];
                match dz as isize - dy as isize {
                    -1 => down[y].push(z),
                    0 => flat[y].push(z),
                    1 => up[y].push(z),
                    _ => return Err(Error::Invariant(format!("edge {y}-{z} spans distances {dy} and {dz}"))),
                }
            }
        }
        let ctx = Self {
            graph: graph.clone(),
            mode,
            partition,
            down,
            flat,
            up,
        };
        ctx.verify_invariants()?;
        Ok(ctx)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base(&self) -> usize {
        self.partition.base
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn eccentricity(&self) -> usize {
        self.partition.eccentricity
    }

    pub fn partition(&self) -> &DistancePartition {
        &self.partition
    }

    /// Vertices of the `i`-th subconstituent.
    pub fn cell(&self, i: usize) -> &[usize] {
        self.partition.cells.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn level_of(&self, y: usize) -> usize {
        self.partition.dist[y]
    }

    pub fn uses_flat(&self) -> bool {
        self.mode == Mode::Full
    }

    fn apply(&self, lists: &[Vec<usize>], v: &[BigRational]) -> Vector {
        lists
            .iter()
            .map(|l| l.iter().fold(BigRational::zero(), |acc, &z| acc + &v[z]))
            .collect()
    }

    /// `(Lv)_y = sum of v_z over neighbours z of y one step further out`.
    pub fn lower(&self, v: &[BigRational]) -> Vector {
        self.apply(&self.up, v)
    }

    pub fn flat(&self, v: &[BigRational]) -> Vector {
        self.apply(&self.flat, v)
    }

    pub fn raise(&self, v: &[BigRational]) -> Vector {
        self.apply(&self.down, v)
    }

    /// `A v` in full mode and `(L + R) v` in bipartite quotient mode.
    pub fn adjacency(&self, v: &[BigRational]) -> Vector {
        let mut out = self.lower(v);
        for (o, r) in out.iter_mut().zip(self.raise(v)) {
            *o += r;
        }
        if self.uses_flat() {
            for (o, f) in out.iter_mut().zip(self.flat(v)) {
                *o += f;
            }
        }
        out
    }

    /// `E_i* v`.
    pub fn project(&self, i: usize, v: &[BigRational]) -> Vector {
        v.iter()
            .enumerate()
            .map(|(y, x)| if self.level_of(y) == i { x.clone() } else { BigRational::zero() })
            .collect()
    }

    fn matrix_of(&self, lists: &[Vec<usize>]) -> RationalMatrix {
        RationalMatrix::from_fn(self.n(), self.n(), |y, z| {
            if lists[y].contains(&z) {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn l_matrix(&self) -> RationalMatrix {
        self.matrix_of(&self.up)
    }

    /// The flat part of the graph's adjacency; it is not an element of the
    /// algebra in bipartite quotient mode.
    pub fn f_matrix(&self) -> RationalMatrix {
        self.matrix_of(&self.flat)
    }

    pub fn r_matrix(&self) -> RationalMatrix {
        self.matrix_of(&self.down)
    }

    /// `E_i*` as a diagonal 0/1 matrix.
    pub fn dual_idempotent(&self, i: usize) -> RationalMatrix {
        RationalMatrix::from_fn(self.n(), self.n(), |y, z| {
            if y == z && self.level_of(y) == i {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    /// Adjacency of the graph the algebra is built from: `A` or `A_f = L + R`.
    pub fn adjacency_matrix(&self) -> RationalMatrix {
        let lr = self.l_matrix().add(&self.r_matrix()).expect("square");
        match self.mode {
            Mode::Full => lr.add(&self.f_matrix()).expect("square"),
            Mode::BipartiteQuotient => lr,
        }
    }

    /// The bipartite graph `Γ_f` obtained by deleting the flat edges.
    pub fn quotient_graph(&self) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = (0..self.n())
            .flat_map(|y| self.down[y].iter().map(move |&z| (z, y)))
            .collect();
        Graph::new(self.n(), &edges, format!("{}_f", self.graph.name()))
    }

    fn verify_invariants(&self) -> Result<()> {
        let n = self.n();
        let eps = self.eccentricity();
        let fail = |what: &str| Err(Error::Invariant(format!("context for {}: {what}", self.graph.name())));
        let idem: Vec<RationalMatrix> = (0..=eps).map(|i| self.dual_idempotent(i)).collect();
        let sum = idem.iter().fold(RationalMatrix::zeros(n, n), |acc, e| acc.add(e).expect("square"));
        if sum != RationalMatrix::identity(n) {
            return fail("dual idempotents do not sum to I");
        }
        // The E_i* are diagonal 0/1 with disjoint supports, so orthogonality
        // reduces to the supports being disjoint.
        for y in 0..n {
            if (0..=eps).filter(|&i| idem[i].get(y, y).is_one()).count() != 1 {
                return fail("dual idempotents are not orthogonal");
            }
        }
        let (l, f, r) = (self.l_matrix(), self.f_matrix(), self.r_matrix());
        if l.add(&f)?.add(&r)? != self.graph.adjacency_matrix() {
            return fail("A != L + F + R");
        }
        if r != l.transpose() {
            return fail("R is not the transpose of L");
        }
        for y in 0..n {
            for z in 0..n {
                if !l.get(y, z).is_zero() && self.level_of(y) + 1 != self.level_of(z) {
                    return fail("L does not lower by one level");
                }
            }
        }
        if self.mode == Mode::BipartiteQuotient {
            let gf = self.quotient_graph()?;
            if !gf.is_bipartite() || distances(&gf, self.base())?.dist != self.partition.dist {
                return fail("quotient graph changes the distance partition");
            }
        }
        Ok(())
    }
}

pub fn build_context(graph: &Graph, base: usize, mode: Mode) -> Result<TerwilligerContext> {
    TerwilligerContext::new(graph, base, mode)
}
