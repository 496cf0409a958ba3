//! Decomposition of the standard module into irreducible modules.
//!
//! Modules are built as closures of level-homogeneous seeds under the
//! generators, with an exact orthogonal (unnormalized) basis per level. The
//! decomposition runs endpoint by endpoint: once every module with endpoint
//! below `r` has been split off, the orthogonal complement is a module whose
//! lowest nonzero level is `r`, and any vector there generates a module with
//! endpoint `r`. Seeds are chosen as common eigenvectors of a fixed list of
//! symmetric algebra elements, and each closure is shrunk to a minimal
//! submodule before it is accepted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use super::{TerwilligerContext, Vector};
use crate::error::{Error, Result};
use crate::exact::{rational_roots, serde_rational, RationalMatrix};
use crate::graphs::distance_table;

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn is_zero(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Rescales to a coprime integer vector whose first nonzero entry is positive.
fn primitive(v: Vector) -> Vector {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|x| BigRational::from_integer(x / &g)).collect()
}

/// `Some(c)` with `u = c w`, for nonzero `w`.
fn ratio(u: &[BigRational], w: &[BigRational]) -> Option<BigRational> {
    let j = w.iter().position(|x| !x.is_zero())?;
    let c = &u[j] / &w[j];
    u.iter().zip(w).all(|(a, b)| *a == &c * b).then_some(c)
}

/// Mutually orthogonal vectors with cached squared norms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct OrthoBasis {
    vecs: Vec<Vector>,
    norms: Vec<BigRational>,
}

impl OrthoBasis {
    fn reduce(&self, v: &[BigRational]) -> Vector {
        let mut w = v.to_vec();
        for (b, nb) in self.vecs.iter().zip(&self.norms) {
            let c = dot(&w, b) / nb;
            if !c.is_zero() {
                for (x, y) in w.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        w
    }

    /// Adds the component of `v` orthogonal to the span; returns it if new.
    fn absorb(&mut self, v: &[BigRational]) -> Option<Vector> {
        let w = self.reduce(v);
        if is_zero(&w) {
            return None;
        }
        let w = primitive(w);
        self.norms.push(dot(&w, &w));
        self.vecs.push(w.clone());
        Some(w)
    }

    fn len(&self) -> usize {
        self.vecs.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    /// Thin, and every level vector regenerates the module.
    Verified,
    /// No proper submodule was found, but the module is not thin.
    Unverified,
    /// A proper submodule exists.
    Reducible,
}

/// A module of the algebra, stored as an orthogonal basis of each level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TModule {
    levels: Vec<OrthoBasis>,
    irreducibility: Irreducibility,
}

impl TModule {
    /// The module generated by `seeds`. Each seed is split into its level
    /// components first, which lie in the module since every `E_i*` does.
    pub fn closure(ctx: &TerwilligerContext, seeds: &[Vector]) -> Self {
        let mut split = Vec::new();
        for s in seeds {
            for i in 0..=ctx.eccentricity() {
                let p = ctx.project(i, s);
                if !is_zero(&p) {
                    split.push((i, p));
                }
            }
        }
        let mut m = Self::close(ctx, split);
        m.irreducibility = irreducibility_test(ctx, &m);
        m
    }

    fn close(ctx: &TerwilligerContext, seeds: Vec<(usize, Vector)>) -> Self {
        let eps = ctx.eccentricity();
        let mut levels = vec![OrthoBasis::default(); eps + 1];
        let mut work = VecDeque::new();
        for (i, v) in seeds {
            if let Some(w) = levels[i].absorb(&v) {
                work.push_back((i, w));
            }
        }
        while let Some((i, w)) = work.pop_front() {
            let mut next = Vec::with_capacity(3);
            if i > 0 {
                next.push((i - 1, ctx.lower(&w)));
            }
            if ctx.uses_flat() {
                next.push((i, ctx.flat(&w)));
            }
            if i < eps {
                next.push((i + 1, ctx.raise(&w)));
            }
            for (j, u) in next {
                if let Some(x) = levels[j].absorb(&u) {
                    work.push_back((j, x));
                }
            }
        }
        Self {
            levels,
            irreducibility: Irreducibility::Unverified,
        }
    }

    fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.levels.len()).filter(|&i| self.levels[i].len() > 0)
    }

    pub fn endpoint(&self) -> usize {
        self.support().next().unwrap_or(0)
    }

    /// Number of nonzero levels minus one.
    pub fn diameter(&self) -> usize {
        self.support().count().saturating_sub(1)
    }

    /// `dim E_(r+i)* W` for `0 <= i <= d`.
    pub fn level_dims(&self) -> Vec<usize> {
        let r = self.endpoint();
        (r..=r + self.diameter()).map(|i| self.levels[i].len()).collect()
    }

    pub fn dim(&self) -> usize {
        self.levels.iter().map(OrthoBasis::len).sum()
    }

    pub fn is_thin(&self) -> bool {
        self.levels.iter().all(|l| l.len() <= 1)
    }

    /// Nonzero levels are exactly `r..=r+d`.
    pub fn is_contiguous(&self) -> bool {
        let r = self.endpoint();
        self.support().eq(r..=r + self.diameter())
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    /// Orthogonal basis of `E_i* W`.
    pub fn level(&self, i: usize) -> &[Vector] {
        self.levels.get(i).map_or(&[], |l| l.vecs.as_slice())
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vector> + '_ {
        self.levels.iter().flat_map(|l| l.vecs.iter())
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.levels.iter().fold(v.to_vec(), |w, l| l.reduce(&w)).iter().all(Zero::is_zero)
    }

    pub fn summary(&self, ctx: &TerwilligerContext) -> TModuleSummary {
        let thin = self.is_thin();
        TModuleSummary {
            endpoint: self.endpoint(),
            diameter: self.diameter(),
            level_dims: self.level_dims(),
            dimension: self.dim(),
            thin,
            local_eigenvalue: if thin && self.endpoint() == 1 {
                local_eigenvalue(ctx, self).ok()
            } else {
                None
            },
            level_products: if thin { level_products(ctx, self).unwrap_or_default() } else { Vec::new() },
            irreducibility: self.irreducibility,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TModuleSummary {
    pub endpoint: usize,
    pub diameter: usize,
    pub level_dims: Vec<usize>,
    pub dimension: usize,
    pub thin: bool,
    /// Present for thin modules with endpoint 1 when `E_1* W` is an
    /// eigenvector of the local adjacency action.
    #[serde(with = "serde_rational::option")]
    pub local_eigenvalue: Option<BigRational>,
    /// `π_0..π_(d-1)`; empty unless thin.
    #[serde(with = "serde_rational::vec")]
    pub level_products: Vec<BigRational>,
    pub irreducibility: Irreducibility,
}

/// A proper nonzero submodule generated by a level vector, if any. For a
/// thin module every submodule is a sum of level lines, so `None` proves
/// irreducibility.
fn find_proper_submodule(ctx: &TerwilligerContext, w: &TModule) -> Option<TModule> {
    let dim = w.dim();
    for (i, level) in w.levels.iter().enumerate() {
        let mut candidates = level.vecs.clone();
        if level.len() > 1 {
            candidates.push(split_seed(ctx, i, level));
        }
        for c in candidates {
            let u = TModule::close(ctx, vec![(i, c)]);
            if u.dim() < dim {
                return Some(u);
            }
        }
    }
    None
}

impl TModule {
    /// Shrinks to a minimal submodule and records its irreducibility.
    fn minimal(ctx: &TerwilligerContext, mut w: TModule) -> TModule {
        while let Some(u) = find_proper_submodule(ctx, &w) {
            w = u;
        }
        w.irreducibility = if w.is_thin() {
            Irreducibility::Verified
        } else {
            Irreducibility::Unverified
        };
        w
    }
}

/// Re-runs the submodule search on `w`.
pub fn irreducibility_test(ctx: &TerwilligerContext, w: &TModule) -> Irreducibility {
    if find_proper_submodule(ctx, w).is_some() {
        Irreducibility::Reducible
    } else if w.is_thin() {
        Irreducibility::Verified
    } else {
        Irreducibility::Unverified
    }
}

/// Symmetric elements of `E_r* T E_r*` used to split a level, applied to a
/// vector supported on level `r`.
type Operator<'a> = Box<dyn Fn(&Vector) -> Vector + 'a>;

fn level_operators(ctx: &TerwilligerContext, r: usize) -> Vec<Operator<'_>> {
    let eps = ctx.eccentricity();
    let mut ops: Vec<Operator<'_>> = Vec::new();
    // The local adjacency action first; in quotient mode it only steers the
    // choice of seed.
    ops.push(Box::new(move |v| ctx.flat(v)));
    for k in 1..=eps.saturating_sub(r) {
        ops.push(Box::new(move |v| {
            let mut w = v.clone();
            for _ in 0..k {
                w = ctx.raise(&w);
            }
            for _ in 0..k {
                w = ctx.lower(&w);
            }
            w
        }));
        if ctx.uses_flat() {
            ops.push(Box::new(move |v| {
                let mut w = v.clone();
                for _ in 0..k {
                    w = ctx.raise(&w);
                }
                w = ctx.flat(&w);
                for _ in 0..k {
                    w = ctx.lower(&w);
                }
                w
            }));
        }
    }
    if r > 0 {
        ops.push(Box::new(move |v| ctx.raise(&ctx.lower(v))));
    }
    ops
}

/// A vector of `span(space)` that is an eigenvector of the successive
/// compressions of [`level_operators`], taking the largest rational
/// eigenvalue at each step.
fn split_seed(ctx: &TerwilligerContext, r: usize, space: &OrthoBasis) -> Vector {
    let mut y = space.clone();
    for op in level_operators(ctx, r) {
        if y.len() <= 1 {
            break;
        }
        let k = y.len();
        let images: Vec<Vector> = y.vecs.iter().map(op).collect();
        let m = RationalMatrix::from_fn(k, k, |i, j| dot(&y.vecs[i], &images[j]) / &y.norms[i]);
        let Ok(poly) = m.char_poly() else { continue };
        let Ok(roots) = rational_roots(&poly) else { continue };
        let Some((lambda, mult)) = roots.roots.first() else { continue };
        if *mult == k {
            continue;
        }
        let shifted = m.sub(&RationalMatrix::identity(k).scale(lambda)).expect("square");
        let mut next = OrthoBasis::default();
        for c in shifted.nullspace() {
            let mut v = vec![BigRational::zero(); ctx.n()];
            for (cj, yj) in c.iter().zip(&y.vecs) {
                if !cj.is_zero() {
                    for (x, e) in v.iter_mut().zip(yj) {
                        *x += cj * e;
                    }
                }
            }
            next.absorb(&v);
        }
        if next.len() > 0 {
            y = next;
        }
    }
    y.vecs.swap_remove(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub modules: Vec<TModule>,
}

impl Decomposition {
    pub fn summaries(&self, ctx: &TerwilligerContext) -> Vec<TModuleSummary> {
        self.modules.iter().map(|m| m.summary(ctx)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.modules.iter().map(TModule::dim).sum()
    }
}

/// Orthogonal complement, within level `r`, of the modules found so far.
fn complement_at(ctx: &TerwilligerContext, modules: &[TModule], r: usize) -> OrthoBasis {
    let mut taken = OrthoBasis::default();
    for m in modules {
        for v in m.level(r) {
            taken.norms.push(dot(v, v));
            taken.vecs.push(v.clone());
        }
    }
    let mut out = OrthoBasis::default();
    for &y in ctx.cell(r) {
        if taken.len() + out.len() == ctx.cell(r).len() {
            break;
        }
        let mut e = vec![BigRational::zero(); ctx.n()];
        e[y] = BigRational::one();
        let w = taken.reduce(&e);
        if let Some(x) = out.absorb(&w) {
            taken.norms.push(dot(&x, &x));
            taken.vecs.push(x);
        }
    }
    out
}

/// Orthogonal decomposition of the standard module. The first module is the
/// one generated by the base vertex.
pub fn decompose(ctx: &TerwilligerContext) -> Decomposition {
    let mut modules: Vec<TModule> = Vec::new();
    for r in 0..=ctx.eccentricity() {
        loop {
            let comp = complement_at(ctx, &modules, r);
            if comp.len() == 0 {
                break;
            }
            let seed = split_seed(ctx, r, &comp);
            let w = TModule::close(ctx, vec![(r, seed)]);
            modules.push(TModule::minimal(ctx, w));
        }
    }
    Decomposition { modules }
}

/// Eigenvalue of `E_1* A E_1*` on the line `E_1* W`.
pub fn local_eigenvalue(ctx: &TerwilligerContext, w: &TModule) -> Result<BigRational> {
    if w.endpoint() != 1 {
        return Err(Error::NotEndpointOne);
    }
    if !w.is_thin() {
        return Err(Error::NotThin);
    }
    let v = &w.level(1)[0];
    ratio(&ctx.flat(v), v).ok_or_else(|| Error::NotEigenvector("E_1* W under the local adjacency".into()))
}

/// `π_i`, the scalar by which `LR` acts on `E_(r+i)* W`, for `0 <= i < d`.
pub fn level_products(ctx: &TerwilligerContext, w: &TModule) -> Result<Vec<BigRational>> {
    if !w.is_thin() {
        return Err(Error::NotThin);
    }
    let r = w.endpoint();
    (0..w.diameter())
        .map(|i| {
            let v = &w.level(r + i)[0];
            ratio(&ctx.lower(&ctx.raise(v)), v)
                .ok_or_else(|| Error::Invariant(format!("LR does not preserve level {} of a thin module", r + i)))
        })
        .collect()
}

/// Equal endpoints, equal diameters and termwise equal level products.
pub fn tf_isomorphic(ctx: &TerwilligerContext, a: &TModule, b: &TModule) -> Result<bool> {
    let (pa, pb) = (level_products(ctx, a)?, level_products(ctx, b)?);
    Ok(a.endpoint() == b.endpoint() && a.diameter() == b.diameter() && pa == pb)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalBasis {
    #[serde(skip)]
    pub vectors: Vec<Vector>,
    /// Number of nonzero vectors minus one.
    pub diameter: usize,
    /// `β_1..β_d` with `L w_i = β_i w_(i-1)`.
    #[serde(with = "serde_rational::vec")]
    pub beta: Vec<BigRational>,
    /// `γ_0..γ_(d-1)` with `R w_i = γ_i w_(i+1)`.
    #[serde(with = "serde_rational::vec")]
    pub gamma: Vec<BigRational>,
}

/// The vectors `w_i = E_(i+1)* A_i v` for a nonzero `v` in `E_1* W`, and the
/// scalars of the lowering and raising maps in this basis.
pub fn canonical_basis(ctx: &TerwilligerContext, w: &TModule, v: &[BigRational]) -> Result<CanonicalBasis> {
    if w.endpoint() != 1 {
        return Err(Error::NotEndpointOne);
    }
    if !w.is_thin() {
        return Err(Error::NotThin);
    }
    if is_zero(v) || ratio(v, &w.level(1)[0]).is_none() {
        return Err(Error::NotInModule("v must be a nonzero vector of E_1* W".into()));
    }
    let table = distance_table(ctx.graph())?;
    let n = ctx.n();
    let mut vectors = Vec::new();
    for i in 0..ctx.eccentricity() {
        let u: Vector = (0..n)
            .map(|y| {
                if ctx.level_of(y) != i + 1 {
                    return BigRational::zero();
                }
                (0..n)
                    .filter(|&z| table[y][z] == i)
                    .fold(BigRational::zero(), |acc, z| acc + &v[z])
            })
            .collect();
        if is_zero(&u) {
            break;
        }
        vectors.push(u);
    }
    let d = vectors.len() - 1;
    let not_parallel = |what: &str| Error::NotInModule(format!("{what} is not a multiple of the next basis vector"));
    let beta = (1..=d)
        .map(|i| ratio(&ctx.lower(&vectors[i]), &vectors[i - 1]).ok_or_else(|| not_parallel("L w_i")))
        .collect::<Result<_>>()?;
    let gamma = (0..d)
        .map(|i| ratio(&ctx.raise(&vectors[i]), &vectors[i + 1]).ok_or_else(|| not_parallel("R w_i")))
        .collect::<Result<_>>()?;
    Ok(CanonicalBasis {
        vectors,
        diameter: d,
        beta,
        gamma,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinnessReport {
    pub thin: Vec<bool>,
    pub all_thin: bool,
}

pub fn thinness_report(decomposition: &Decomposition) -> ThinnessReport {
    let thin: Vec<bool> = decomposition.modules.iter().map(TModule::is_thin).collect();
    ThinnessReport {
        all_thin: thin.iter().all(|&t| t),
        thin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};
    use crate::graphs::{complete, complete_bipartite, folded_hypercube, grassmann_q, hypercube, local_graph, Graph};
    use crate::params::{local_eig_candidates, ClassicalParams};
    use crate::talg::{build_context, Mode};

    fn check_decomposition(ctx: &TerwilligerContext, dec: &Decomposition) {
        assert_eq!(dec.total_dim(), ctx.n());
        for (a, ma) in dec.modules.iter().enumerate() {
            assert!(ma.is_contiguous());
            for mb in &dec.modules[a + 1..] {
                for u in ma.vectors() {
                    for v in mb.vectors() {
                        assert!(dot(u, v).is_zero());
                    }
                }
            }
            for i in 0..=ctx.eccentricity() {
                for v in ma.level(i) {
                    assert!(v.iter().enumerate().all(|(y, x)| x.is_zero() || ctx.level_of(y) == i));
                    let contained = |u: &Vector, j: usize| u.iter().enumerate().all(|(y, x)| x.is_zero() || ctx.level_of(y) == j);
                    if i > 0 {
                        assert!(contained(&ctx.lower(v), i - 1));
                    }
                    assert!(contained(&ctx.flat(v), i));
                    assert!(contained(&ctx.raise(v), i + 1));
                    assert!(ma.contains(&ctx.lower(v)) && ma.contains(&ctx.raise(v)));
                }
            }
        }
    }

    #[test]
    fn triangle() {
        let ctx = build_context(&complete(3).unwrap(), 0, Mode::Full).unwrap();
        let dec = decompose(&ctx);
        check_decomposition(&ctx, &dec);
        let s = dec.summaries(&ctx);
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].endpoint, s[0].diameter, s[0].dimension), (0, 1, 2));
        assert_eq!((s[1].endpoint, s[1].diameter, s[1].dimension), (1, 0, 1));
        assert_eq!(s[1].local_eigenvalue, Some(rat(-1)));
        assert_eq!(s[1].irreducibility, Irreducibility::Verified);
    }

    #[test]
    fn hypercube_trivial_module() {
        let d = 4;
        let ctx = build_context(&hypercube(d).unwrap(), 0, Mode::Full).unwrap();
        let dec = decompose(&ctx);
        check_decomposition(&ctx, &dec);
        let trivial = &dec.modules[0];
        assert_eq!(trivial.diameter(), 4);
        let pis = level_products(&ctx, trivial).unwrap();
        // Cell indicators: R raises with c_(i+1) = i+1 and L lowers with
        // b_i = D - i, so LR acts on level i by (i+1)(D-i).
        let expect: Vec<_> = (0..d as i64).map(|i| rat((i + 1) * (d as i64 - i))).collect();
        assert_eq!(pis, expect);
        assert!(thinness_report(&dec).all_thin);
    }

    #[test]
    fn folded_cube_quotient_modules() {
        let ctx = build_context(&folded_hypercube(5).unwrap(), 0, Mode::BipartiteQuotient).unwrap();
        let dec = decompose(&ctx);
        check_decomposition(&ctx, &dec);
        assert!(thinness_report(&dec).all_thin);
        let ones: Vec<&TModule> = dec.modules.iter().filter(|m| m.endpoint() == 1).collect();
        assert!(!ones.is_empty());
        for m in &ones {
            assert_eq!(local_eigenvalue(&ctx, m).unwrap(), rat(0));
        }
        for a in &ones {
            for b in &ones {
                if level_products(&ctx, a).unwrap() == level_products(&ctx, b).unwrap() {
                    assert!(tf_isomorphic(&ctx, a, b).unwrap());
                }
            }
        }
        assert!(!tf_isomorphic(&ctx, &dec.modules[0], ones[0]).unwrap());
    }

    #[test]
    fn level_products_ignore_scaling() {
        let ctx = build_context(&hypercube(3).unwrap(), 0, Mode::Full).unwrap();
        let w = &decompose(&ctx).modules[1];
        let scaled: Vector = w.level(1)[0].iter().map(|x| x * frac(-7, 3)).collect();
        let w2 = TModule::closure(&ctx, &[scaled]);
        assert_eq!(level_products(&ctx, w).unwrap(), level_products(&ctx, &w2).unwrap());
    }

    #[test]
    fn grassmann_local_eigenvalues_and_canonical_basis() {
        let g = grassmann_q(4, 2, 2).unwrap();
        let ctx = build_context(&g, 0, Mode::Full).unwrap();
        let dec = decompose(&ctx);
        check_decomposition(&ctx, &dec);
        let cp = ClassicalParams::from_ints(2, 2, 2, 6).unwrap();
        let cands = local_eig_candidates(&cp);
        let local_poly = local_graph(&g, 0).unwrap().adjacency_matrix().char_poly().unwrap();
        let mut saw_minus_one = false;
        for m in dec.modules.iter().filter(|m| m.endpoint() == 1) {
            let eta = local_eigenvalue(&ctx, m).unwrap();
            assert!(local_poly.eval(&eta).is_zero());
            assert!(cands.eta.contains(&eta), "{eta}");
            if eta == rat(-1) {
                saw_minus_one = true;
                let cb = canonical_basis(&ctx, m, &m.level(1)[0]).unwrap();
                assert_eq!(cb.gamma[0], rat(1));
                let pis = level_products(&ctx, m).unwrap();
                for (i, p) in pis.iter().enumerate() {
                    assert_eq!(p, &(&cb.beta[i] * &cb.gamma[i]));
                }
            }
        }
        assert!(saw_minus_one);
    }

    #[test]
    fn canonical_basis_of_trivial_analog() {
        // w_i = E_i* A_i x-hat is the i-th cell indicator.
        let g = hypercube(3).unwrap();
        let ctx = build_context(&g, 0, Mode::Full).unwrap();
        let dec = decompose(&ctx);
        let m = dec.modules.iter().find(|m| m.endpoint() == 1).unwrap();
        let v = m.level(1)[0].clone();
        let cb = canonical_basis(&ctx, m, &v).unwrap();
        assert_eq!(cb.diameter, m.diameter());
        assert!(canonical_basis(&ctx, &dec.modules[0], &v).is_err());
    }

    #[test]
    fn injected_reducible_sum_is_split() {
        // From a vertex on the 3-side of K_(2,3), the level-1 line a - b and
        // the level-2 line u - v are separate diameter-0 modules.
        let g = complete_bipartite(2, 3).unwrap();
        let ctx = build_context(&g, 2, Mode::Full).unwrap();
        let mut a = vec![rat(0); 5];
        a[0] = rat(1);
        a[1] = rat(-1);
        let mut b = vec![rat(0); 5];
        b[3] = rat(1);
        b[4] = rat(-1);
        let sum = TModule::closure(&ctx, &[a.clone(), b.clone()]);
        assert!(sum.is_thin());
        assert_eq!(sum.dim(), 2);
        assert_eq!(sum.irreducibility(), Irreducibility::Reducible);
        assert_eq!(irreducibility_test(&ctx, &sum), Irreducibility::Reducible);
        let single = TModule::closure(&ctx, &[a]);
        assert_eq!(irreducibility_test(&ctx, &single), Irreducibility::Verified);
        let dec = decompose(&ctx);
        check_decomposition(&ctx, &dec);
        assert!(dec.modules.iter().all(|m| m.irreducibility() == Irreducibility::Verified));
    }

    #[test]
    fn tree_smoke() {
        let g = Graph::new(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)], "tree").unwrap();
        for x in 0..6 {
            let ctx = build_context(&g, x, Mode::Full).unwrap();
            let dec = decompose(&ctx);
            check_decomposition(&ctx, &dec);
            let report = thinness_report(&dec);
            assert_eq!(report.thin.len(), dec.modules.len());
        }
    }

    #[test]
    fn deterministic() {
        let g = folded_hypercube(5).unwrap();
        let ctx = build_context(&g, 5, Mode::BipartiteQuotient).unwrap();
        assert_eq!(decompose(&ctx), decompose(&ctx));
    }
}
