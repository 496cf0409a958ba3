//! Named graph families. Every generator returns a connected simple graph
//! with vertex labels describing the underlying objects.

use super::Graph;
use crate::error::{Error, Result};

/// Upper bound on generated vertex counts.
const MAX_VERTICES: usize = 1 << 16;

fn bad(msg: String) -> Error {
    Error::InvalidGenerator(msg)
}

fn check_size(n: usize, what: &str) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(bad(format!("{what} would have {n} vertices (limit {MAX_VERTICES})")));
    }
    Ok(())
}

fn bits(x: usize, width: u32) -> String {
    (0..width).rev().map(|b| if x >> b & 1 == 1 { '1' } else { '0' }).collect()
}

/// The `D`-cube on binary words of length `D`.
pub fn hypercube(d: u32) -> Result<Graph> {
    if !(1..=16).contains(&d) {
        return Err(bad(format!("hypercube dimension {d} outside 1..=16")));
    }
    let n = 1usize << d;
    let edges: Vec<_> = (0..n)
        .flat_map(|x| (0..d).map(move |b| (x, x ^ (1 << b))).filter(|&(x, y)| x < y))
        .collect();
    Ok(Graph::new(n, &edges, format!("hypercube({d})"))?.with_labels((0..n).map(|x| bits(x, d)).collect()))
}

/// The folded `m`-cube: the `(m-1)`-cube plus edges between antipodes.
pub fn folded_hypercube(m: u32) -> Result<Graph> {
    if !(3..=17).contains(&m) {
        return Err(bad(format!("folded hypercube parameter {m} outside 3..=17")));
    }
    let d = m - 1;
    let n = 1usize << d;
    let mut edges: Vec<_> = (0..n)
        .flat_map(|x| (0..d).map(move |b| (x, x ^ (1 << b))).filter(|&(x, y)| x < y))
        .collect();
    edges.extend((0..n).map(|x| (x, x ^ (n - 1))).filter(|&(x, y)| x < y));
    Ok(Graph::new(n, &edges, format!("folded_hypercube({m})"))?.with_labels((0..n).map(|x| bits(x, d)).collect()))
}

/// Words of length `d` over an alphabet of size `q`, adjacent when they
/// differ in one position.
pub fn hamming(d: u32, q: usize) -> Result<Graph> {
    if d < 1 || q < 2 {
        return Err(bad(format!("hamming({d}, {q}) needs d >= 1 and q >= 2")));
    }
    let n = q
        .checked_pow(d)
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or_else(|| bad(format!("hamming({d}, {q}) is too large")))?;
    let digit = |x: usize, k: u32| x / q.pow(k) % q;
    let mut edges = Vec::new();
    for x in 0..n {
        for k in 0..d {
            let base = x - digit(x, k) * q.pow(k);
            for a in digit(x, k) + 1..q {
                edges.push((x, base + a * q.pow(k)));
            }
        }
    }
    let labels = (0..n)
        .map(|x| (0..d).rev().map(|k| char::from_digit(digit(x, k) as u32, 36).unwrap()).collect())
        .collect();
    Ok(Graph::new(n, &edges, format!("hamming({d},{q})"))?.with_labels(labels))
}

fn subsets(n: usize, d: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|s| s.count_ones() as usize == d).collect()
}

fn set_label(s: u64) -> String {
    let items: Vec<String> = (0..64).filter(|i| s >> i & 1 == 1).map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// `d`-subsets of an `n`-set, adjacent when they share `d - 1` elements.
pub fn johnson(n: usize, d: usize) -> Result<Graph> {
    if d < 1 || d >= n || n > 24 {
        return Err(bad(format!("johnson({n}, {d}) needs 1 <= d < n <= 24")));
    }
    let sets = subsets(n, d);
    check_size(sets.len(), "johnson graph")?;
    let mut edges = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate().skip(i + 1) {
            if (a & b).count_ones() as usize == d - 1 {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::new(sets.len(), &edges, format!("johnson({n},{d})"))?.with_labels(sets.iter().map(|&s| set_label(s)).collect()))
}

/// The Kneser graph on 2-subsets of a 5-set.
pub fn petersen() -> Graph {
    let sets = subsets(5, 2);
    let mut edges = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate().skip(i + 1) {
            if a & b == 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(10, &edges, "petersen")
        .expect("Petersen graph is simple and connected")
        .with_labels(sets.iter().map(|&s| set_label(s)).collect())
}

pub fn cycle(n: usize) -> Result<Graph> {
    if !(3..=MAX_VERTICES).contains(&n) {
        return Err(bad(format!("cycle length {n} outside 3..={MAX_VERTICES}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges, format!("cycle({n})"))
}

pub fn path(n: usize) -> Result<Graph> {
    if !(1..=MAX_VERTICES).contains(&n) {
        return Err(bad(format!("path length {n} outside 1..={MAX_VERTICES}")));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges, format!("path({n})"))
}

pub fn complete(n: usize) -> Result<Graph> {
    if !(1..=4096).contains(&n) {
        return Err(bad(format!("complete graph order {n} outside 1..=4096")));
    }
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Graph::new(n, &edges, format!("complete({n})"))
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a < 1 || b < 1 || a + b > 4096 {
        return Err(bad(format!("complete_bipartite({a}, {b}) needs a, b >= 1 and a + b <= 4096")));
    }
    let edges: Vec<_> = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect();
    Graph::new(a + b, &edges, format!("complete_bipartite({a},{b})"))
}

/// `K_(1,m)` with the centre as vertex 0.
pub fn star(m: usize) -> Result<Graph> {
    let g = complete_bipartite(1, m)?;
    Ok(Graph { name: format!("star({m})"), ..g })
}

/// Subspaces of dimension `d` in `GF(q)^n`, adjacent when they meet in
/// dimension `d - 1`. Limited to `q` in `{2, 3}` and `n <= 5`.
pub fn grassmann_q(n: u32, d: u32, q: u32) -> Result<Graph> {
    if !(q == 2 || q == 3) || n > 5 || d < 1 || d >= n {
        return Err(bad(format!("grassmann_q({n}, {d}, {q}) needs q in {{2, 3}} and 1 <= d < n <= 5")));
    }
    let spaces = subspaces(n, d, q);
    let meet = (q as usize).pow(d - 1);
    let mut edges = Vec::new();
    for i in 0..spaces.len() {
        for j in i + 1..spaces.len() {
            if intersection_size(&spaces[i].1, &spaces[j].1) == meet {
                edges.push((i, j));
            }
        }
    }
    let labels = spaces.iter().map(|(l, _)| l.clone()).collect();
    Ok(Graph::new(spaces.len(), &edges, format!("grassmann_q({n},{d},{q})"))?.with_labels(labels))
}

/// Each subspace as (row-reduced basis label, sorted list of its vectors
/// encoded in base `q`).
fn subspaces(n: u32, d: u32, q: u32) -> Vec<(String, Vec<u32>)> {
    let encode = |v: &[u32]| v.iter().rev().fold(0, |acc, &x| acc * q + x);
    let mut out = Vec::new();
    for pivots in subsets(n as usize, d as usize) {
        let pivots: Vec<u32> = (0..n).filter(|i| pivots >> i & 1 == 1).collect();
        // Free slots: row r, column c > pivot r with c not a pivot.
        let free: Vec<(usize, u32)> = (0..d as usize)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        for fill in 0..q.pow(free.len() as u32) {
            let mut rows = vec![vec![0u32; n as usize]; d as usize];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p as usize] = 1;
            }
            let mut f = fill;
            for &(r, c) in &free {
                rows[r][c as usize] = f % q;
                f /= q;
            }
            let mut span = Vec::with_capacity(q.pow(d) as usize);
            for coeffs in 0..q.pow(d) {
                let mut v = vec![0u32; n as usize];
                let mut c = coeffs;
                for row in &rows {
                    let a = c % q;
                    c /= q;
                    for (x, y) in v.iter_mut().zip(row) {
                        *x = (*x + a * y) % q;
                    }
                }
                span.push(encode(&v));
            }
            span.sort_unstable();
            let label = rows
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<String>())
                .collect::<Vec<_>>()
                .join("/");
            out.push((label, span));
        }
    }
    out
}

fn intersection_size(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                k += 1;
                i += 1;
                j += 1;
            }
        }
    }
    k
}

/// Builds a graph from a spec such as `hypercube:4`, `folded-hypercube:5`,
/// `hamming:3,3`, `johnson:5,2`, `cycle:5`, `grassmann:4,2,2`, `petersen`,
/// `complete:4`, `complete-bipartite:2,3`, `path:3` or `star:4`.
pub fn generate(spec: &str) -> Result<Graph> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let args: Vec<usize> = if args.trim().is_empty() {
        Vec::new()
    } else {
        args.split(',')
            .map(|a| a.trim().parse().map_err(|_| bad(format!("bad argument {a:?} in {spec:?}"))))
            .collect::<Result<_>>()?
    };
    let arity = |k: usize| {
        if args.len() == k {
            Ok(())
        } else {
            Err(bad(format!("{name} takes {k} argument(s), got {}", args.len())))
        }
    };
    let small = |x: usize| u32::try_from(x).map_err(|_| bad(format!("argument {x} too large")));
    match name.trim().replace('_', "-").as_str() {
        "hypercube" => arity(1).and_then(|_| hypercube(small(args[0])?)),
        "folded-hypercube" => arity(1).and_then(|_| folded_hypercube(small(args[0])?)),
        "hamming" => arity(2).and_then(|_| hamming(small(args[0])?, args[1])),
        "johnson" => arity(2).and_then(|_| johnson(args[0], args[1])),
        "cycle" => arity(1).and_then(|_| cycle(args[0])),
        "path" => arity(1).and_then(|_| path(args[0])),
        "complete" => arity(1).and_then(|_| complete(args[0])),
        "complete-bipartite" => arity(2).and_then(|_| complete_bipartite(args[0], args[1])),
        "star" => arity(1).and_then(|_| star(args[0])),
        "grassmann" | "grassmann-q" => arity(3).and_then(|_| grassmann_q(small(args[0])?, small(args[1])?, small(args[2])?)),
        "petersen" => arity(0).map(|_| petersen()),
        other => Err(bad(format!("unknown generator {other:?}"))),
    }
}
