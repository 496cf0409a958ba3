//! Integrality sweep of the `k_D` and `f_D` products for family 2 with
//! `D ≡ 0 (mod 6)`.
//!
//! `k_D = q^(D(D+1)/2+1) prod_(i=1)^(D-1) N_i / M_i` with
//! `N_i = q^(D+1) - q^i - q + 1`, `M_i = q^i - 1`, and
//! `f_D = (q^D(q+1) - q) prod_(i=2)^D (q^(i+1)(q^D - 1) + q^i - 1) / (q^i - 1)`.
//! A prime `p` with more factors of `p` in the denominators than in the
//! numerators proves non-integrality without building the product.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::params::{fd_family2, kd_family2};

const SIEVE_LIMIT: u64 = 2000;
const MOD_CAP: u128 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SweepEntry {
    pub q: u64,
    pub d: u32,
    pub kd_integer: bool,
    pub fd_integer: bool,
}

impl SweepEntry {
    fn to_line(self) -> String {
        format!("{}\t{}\t{}\t{}", self.q, self.d, self.kd_integer as u8, self.fd_integer as u8)
    }

    fn from_line(line: &str) -> Option<Self> {
        let mut it = line.trim_end().split('\t');
        let q = it.next()?.parse().ok()?;
        let d = it.next()?.parse().ok()?;
        let flag = |s: Option<&str>| match s? {
            "0" => Some(false),
            "1" => Some(true),
            _ => None,
        };
        let kd_integer = flag(it.next())?;
        let fd_integer = flag(it.next())?;
        if it.next().is_some() {
            return None;
        }
        Some(Self { q, d, kd_integer, fd_integer })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepResult {
    pub q_max: u64,
    pub d_max: u32,
    /// Sorted by `(q, D)`.
    pub entries: Vec<SweepEntry>,
    /// Cells where both `k_D` and `f_D` are integers.
    pub counterexamples_both: Vec<SweepEntry>,
    /// Cells where at least one of them is an integer.
    pub counterexamples_either: Vec<SweepEntry>,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    /// Worker threads; `0` uses the rayon default.
    pub jobs: usize,
    /// Checkpoint directory; `None` disables caching.
    pub store: Option<PathBuf>,
}

/// Content-addressed cache with one file per cell, safe for concurrent
/// writers of distinct cells.
#[derive(Debug, Clone)]
pub struct SweepStore {
    dir: PathBuf,
}

impl SweepStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(dir.join("cells")).map_err(|e| store_err(&dir, e))?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn cell_path(&self, q: u64, d: u32) -> PathBuf {
        let digest = Sha256::digest(format!("drgwb-sweep-v1:{q}:{d}").as_bytes());
        let name: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.dir.join("cells").join(name)
    }

    pub fn get(&self, q: u64, d: u32) -> Option<SweepEntry> {
        let text = fs::read_to_string(self.cell_path(q, d)).ok()?;
        SweepEntry::from_line(&text).filter(|e| e.q == q && e.d == d)
    }

    pub fn put(&self, entry: SweepEntry) -> Result<()> {
        let path = self.cell_path(entry.q, entry.d);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let mut f = fs::File::create(&tmp).map_err(|e| store_err(&tmp, e))?;
        writeln!(f, "{}", entry.to_line()).map_err(|e| store_err(&tmp, e))?;
        drop(f);
        fs::rename(&tmp, &path).map_err(|e| store_err(&path, e))
    }

    /// Writes the sorted checkpoint file `sweep.tsv` and returns its path.
    pub fn finalize(&self, entries: &[SweepEntry]) -> Result<PathBuf> {
        let mut sorted = entries.to_vec();
        sorted.sort();
        let mut text = String::new();
        for e in &sorted {
            text.push_str(&e.to_line());
            text.push('\n');
        }
        let path = self.dir.join("sweep.tsv");
        let tmp = self.dir.join("sweep.tsv.tmp");
        fs::write(&tmp, text).map_err(|e| store_err(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| store_err(&path, e))?;
        Ok(path)
    }
}

fn store_err(path: &Path, e: std::io::Error) -> Error {
    Error::Store(format!("{}: {e}", path.display()))
}

fn primes_up_to(n: u64) -> Vec<u64> {
    let mut sieve = vec![true; n as usize + 1];
    let mut out = Vec::new();
    for i in 2..=n as usize {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn pow_mod(base: u128, mut exp: u64, m: u128) -> u128 {
    let mut result = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result
}

/// A factor as a polynomial expression in `q`, evaluated modulo `m`.
type Expr = fn(q: u128, d: u64, i: u64, m: u128) -> u128;

fn sub_mod(a: u128, b: u128, m: u128) -> u128 {
    (a + m - b % m) % m
}

fn kd_num(q: u128, d: u64, i: u64, m: u128) -> u128 {
    let t = (pow_mod(q, d + 1, m) + 1) % m;
    sub_mod(t, (pow_mod(q, i, m) + q) % m, m)
}

fn fd_num(q: u128, d: u64, i: u64, m: u128) -> u128 {
    let qd1 = sub_mod(pow_mod(q, d, m), 1, m);
    let t = pow_mod(q, i + 1, m) * qd1 % m;
    sub_mod((t + pow_mod(q, i, m)) % m, 1, m)
}

fn fd_prefactor(q: u128, d: u64, _i: u64, m: u128) -> u128 {
    sub_mod(pow_mod(q, d, m) * ((q + 1) % m) % m, q, m)
}

fn den(q: u128, _d: u64, i: u64, m: u128) -> u128 {
    sub_mod(pow_mod(q, i, m), 1, m)
}

/// `v_p(value)` counted up to the largest power of `p` below the modulus
/// cap; the flag is set when the cap was reached.
fn capped_valuation(e: Expr, q: u128, d: u64, i: u64, p: u64) -> (i64, bool) {
    let p = p as u128;
    let mut pk = p;
    let mut v = 0;
    loop {
        if e(q, d, i, pk) != 0 {
            return (v, false);
        }
        v += 1;
        if pk > MOD_CAP / p {
            return (v, true);
        }
        pk *= p;
    }
}

/// Finds a prime whose valuation proves the product non-integral. A capped
/// numerator valuation disqualifies the prime and a capped denominator one
/// is an underestimate, so a returned witness is always genuine.
fn valuation_witness(
    primes: &[u64],
    q: u64,
    d: u64,
    num: &[(Expr, u64)],
    dens: &[(Expr, u64)],
) -> Option<u64> {
    let qq = q as u128;
    'primes: for &p in primes {
        if q.is_multiple_of(p) {
            continue;
        }
        let deficit: i64 = dens.iter().map(|&(e, i)| capped_valuation(e, qq, d, i, p).0).sum();
        if deficit == 0 {
            continue;
        }
        let mut deficit = deficit;
        for &(e, i) in num {
            let (v, capped) = capped_valuation(e, qq, d, i, p);
            deficit -= v;
            if capped || deficit <= 0 {
                continue 'primes;
            }
        }
        return Some(p);
    }
    None
}

/// Numerator and denominator factors, each an expression and its index.
type Factors = (Vec<(Expr, u64)>, Vec<(Expr, u64)>);

fn kd_factors(d: u64) -> Factors {
    let num = (1..d).map(|i| (kd_num as Expr, i)).collect();
    let dens = (1..d).map(|i| (den as Expr, i)).collect();
    (num, dens)
}

fn fd_factors(d: u64) -> Factors {
    let mut num: Vec<(Expr, u64)> = vec![(fd_prefactor as Expr, 0)];
    num.extend((2..=d).map(|i| (fd_num as Expr, i)));
    let dens = (2..=d).map(|i| (den as Expr, i)).collect();
    (num, dens)
}

fn primes() -> &'static [u64] {
    static PRIMES: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(SIEVE_LIMIT))
}

fn kd_is_integer(q: u64, d: u32) -> bool {
    let (num, dens) = kd_factors(d as u64);
    if valuation_witness(primes(), q, d as u64, &num, &dens).is_some() {
        return false;
    }
    kd_family2(q as i64, d).is_integer()
}

fn fd_is_integer(q: u64, d: u32) -> bool {
    let (num, dens) = fd_factors(d as u64);
    if valuation_witness(primes(), q, d as u64, &num, &dens).is_some() {
        return false;
    }
    fd_family2(q as i64, d).is_integer()
}

/// Integrality of `k_D` and `f_D` at one cell.
pub fn sweep_cell(q: u64, d: u32) -> SweepEntry {
    SweepEntry {
        q,
        d,
        kd_integer: kd_is_integer(q, d),
        fd_integer: fd_is_integer(q, d),
    }
}

/// Every `q` in `2..=q_max` and `D` in `6..=d_max` with `D ≡ 0 (mod 6)`.
pub fn conjecture_sweep(q_max: u64, d_max: u32, opts: &SweepOptions) -> Result<SweepResult> {
    if q_max < 2 || d_max < 6 {
        return Err(Error::InvalidParameters(format!(
            "sweep needs q_max >= 2 and D_max >= 6, got {q_max}, {d_max}"
        )));
    }
    if q_max > i64::MAX as u64 {
        return Err(Error::InvalidParameters("q_max too large".into()));
    }
    let store = opts.store.as_ref().map(SweepStore::open).transpose()?;
    let cells: Vec<(u64, u32)> = (2..=q_max)
        .flat_map(|q| (6..=d_max).step_by(6).map(move |d| (q, d)))
        .collect();
    let run = || -> Result<Vec<SweepEntry>> {
        cells
            .par_iter()
            .map(|&(q, d)| {
                if let Some(hit) = store.as_ref().and_then(|s| s.get(q, d)) {
                    return Ok(hit);
                }
                let e = sweep_cell(q, d);
                if let Some(s) = &store {
                    s.put(e)?;
                }
                Ok(e)
            })
            .collect()
    };
    let mut entries = if opts.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?
            .install(run)?
    } else {
        run()?
    };
    entries.sort();
    if let Some(s) = &store {
        s.finalize(&entries)?;
    }
    let counterexamples_both = entries.iter().copied().filter(|e| e.kd_integer && e.fd_integer).collect();
    let counterexamples_either = entries.iter().copied().filter(|e| e.kd_integer || e.fd_integer).collect();
    Ok(SweepResult {
        q_max,
        d_max,
        entries,
        counterexamples_both,
        counterexamples_either,
    })
}
