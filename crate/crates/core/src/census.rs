//! Empirical verification engine: sieve primes up to x, test primitive-root
//! status of g per prime, tally by residue class, and evaluate the heuristic
//! sums the closed-form densities are compared against.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_integer::{Integer, Roots};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    classify, compute_g_invariants, factorize, jacobi_extended, mul_mod, pow_mod, power_index,
    rational_parts_i64, GClass, Rational,
};
use crate::density::{delta_closed_from, format_significant, Progression, ARTIN_CONSTANT};
use crate::error::{Error, Result};

/// Hard cap on the sieve limit: the smallest-prime-factor table costs four
/// bytes per integer, so 10^9 already means a 4 GB allocation.
pub const SIEVE_LIMIT_MAX: u64 = 1_000_000_000;

const CACHE_MAGIC: &[u8; 5] = b"APRS1";
const SEGMENT: u64 = 1 << 20;

/// Smallest-prime-factor table for [2, limit], the workhorse for factoring
/// p - 1 across an entire census.
pub struct SieveTables {
    limit: u64,
    spf: Vec<u32>,
}

impl SieveTables {
    /// Sieve up to `limit` inclusive. Built segment by segment so the only
    /// large allocation is the output table itself.
    pub fn build(limit: u64) -> Result<Self> {
        if !(2..=SIEVE_LIMIT_MAX).contains(&limit) {
            return Err(Error::SieveLimit(limit));
        }
        let mut spf = vec![0u32; (limit + 1) as usize];
        let root = limit.sqrt();
        let base = crate::arith::primes_up_to(root);
        let mut lo = 2u64;
        while lo <= limit {
            let hi = (lo + SEGMENT - 1).min(limit);
            for &p in &base {
                if p * p > hi {
                    break;
                }
                let start = (p * p).max(lo.next_multiple_of(p));
                let mut j = start;
                while j <= hi {
                    if spf[j as usize] == 0 {
                        spf[j as usize] = p as u32;
                    }
                    j += p;
                }
            }
            lo = hi + 1;
        }
        for n in 2..=limit {
            if spf[n as usize] == 0 {
                spf[n as usize] = n as u32;
            }
        }
        let tables = SieveTables { limit, spf };
        if limit >= 100_000 {
            // standard self-check: pi(10^5) = 9592
            assert_eq!(tables.prime_count_up_to(100_000), 9592, "sieve self-check");
        }
        Ok(tables)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of n (2 <= n <= limit).
    #[inline]
    pub fn smallest_factor(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    /// Ascending primes up to `x` (x <= limit).
    pub fn primes_up_to(&self, x: u64) -> impl Iterator<Item = u64> + '_ {
        (2..=x.min(self.limit)).filter(move |&n| self.spf[n as usize] as u64 == n)
    }

    pub fn prime_count_up_to(&self, x: u64) -> u64 {
        self.primes_up_to(x).count() as u64
    }

    /// Euler totient by chained division through the table.
    pub fn phi(&self, n: u64) -> u64 {
        debug_assert!(n >= 1 && n <= self.limit);
        let mut m = n;
        let mut acc = n;
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            acc = acc / p * (p - 1);
            while m % p == 0 {
                m /= p;
            }
        }
        acc
    }

    /// Distinct prime factors of n, smallest first.
    pub fn distinct_primes(&self, n: u64, out: &mut Vec<u64>) {
        out.clear();
        let mut m = n;
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
    }

    /// Write the versioned cache: magic `APRS1`, little-endian u64 limit,
    /// then the raw spf entries as little-endian u32.
    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&self.limit.to_le_bytes())?;
        let mut buf = Vec::with_capacity(4 << 16);
        for chunk in self.spf.chunks(1 << 16) {
            buf.clear();
            for &v in chunk {
                buf.extend_from_slice(&v.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        w.flush()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let io = |e: std::io::Error| Error::SieveCache(e.to_string());
        let mut r = BufReader::new(File::open(path).map_err(io)?);
        let mut magic = [0u8; 5];
        r.read_exact(&mut magic).map_err(io)?;
        if &magic != CACHE_MAGIC {
            return Err(Error::SieveCache("bad magic bytes".into()));
        }
        let mut limit_bytes = [0u8; 8];
        r.read_exact(&mut limit_bytes).map_err(io)?;
        let limit = u64::from_le_bytes(limit_bytes);
        if !(2..=SIEVE_LIMIT_MAX).contains(&limit) {
            return Err(Error::SieveCache(format!("limit {limit} out of range")));
        }
        let mut raw = Vec::new();
        r.read_to_end(&mut raw).map_err(io)?;
        if raw.len() as u64 != 4 * (limit + 1) {
            return Err(Error::SieveCache(format!(
                "expected {} table bytes, found {}",
                4 * (limit + 1),
                raw.len()
            )));
        }
        let spf: Vec<u32> = raw
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        Ok(SieveTables { limit, spf })
    }

    /// Load a cache when it exists and covers `x`; otherwise build (and write
    /// the cache back when a path is given). The cache is an optimization
    /// only — a stale or corrupt file is ignored, never an error.
    pub fn load_or_build(path: Option<&Path>, x: u64) -> Result<Self> {
        if let Some(p) = path {
            if let Ok(t) = Self::load(p) {
                if t.limit >= x {
                    return Ok(t);
                }
            }
        }
        let t = Self::build(x)?;
        if let Some(p) = path {
            let _ = t.save(p);
        }
        Ok(t)
    }
}

/// Is g a generator of (Z/pZ)^*? Reduces g mod p (denominator by modular
/// inverse) and checks g^((p-1)/q) != 1 for every prime q | p - 1.
pub fn is_primitive_root(g: &Rational, p: u64, tables: &SieveTables) -> Result<bool> {
    let (num, den) = rational_parts_i64(g)?;
    assert!(p <= tables.limit(), "p exceeds the sieve limit");
    debug_assert!(tables.is_prime(p));
    primitive_root_reduced(num, den, p, tables, &mut Vec::new())
}

fn primitive_root_reduced(
    num: i64,
    den: u64,
    p: u64,
    tables: &SieveTables,
    scratch: &mut Vec<u64>,
) -> Result<bool> {
    let n = num.rem_euclid(p as i64) as u64;
    let d = den % p;
    if n == 0 || d == 0 {
        return Err(Error::PrimeDividesG { p });
    }
    let x = mul_mod(n, pow_mod(d, p - 2, p), p);
    tables.distinct_primes(p - 1, scratch);
    for &q in scratch.iter() {
        if pow_mod(x, (p - 1) / q, p) == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One residue class of a census.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueRow {
    pub a: u64,
    /// Primes p <= x with p = a (mod f) and g a primitive root mod p.
    pub count: u64,
    /// Exact predicted coefficient of the Artin constant.
    pub predicted_coeff: Rational,
    /// Predicted density delta = coeff * A; compare against count / pi(x).
    pub predicted: f64,
}

/// Prime counts per residue class with predictions attached.
///
/// p = 2 and primes dividing the numerator or denominator of g are excluded
/// from all class counts (they cannot carry a primitive-root condition);
/// they are listed in `excluded_primes`. `pi_x` counts all primes up to x.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusReport {
    pub g: Rational,
    pub f: u64,
    pub x: u64,
    pub pi_x: u64,
    pub excluded_primes: Vec<u64>,
    pub rows: Vec<ResidueRow>,
}

#[derive(Serialize)]
struct RowJson {
    a: u64,
    count: u64,
    predicted_coeff: String,
    predicted: String,
}

#[derive(Serialize)]
struct CensusJson {
    g: String,
    f: u64,
    x: u64,
    pi_x: u64,
    excluded_primes: Vec<u64>,
    rows: Vec<RowJson>,
}

impl CensusReport {
    fn rows_json(&self) -> Vec<RowJson> {
        self.rows
            .iter()
            .map(|r| RowJson {
                a: r.a,
                count: r.count,
                predicted_coeff: crate::arith::format_rational(&r.predicted_coeff),
                predicted: format_significant(r.predicted, 12),
            })
            .collect()
    }

    pub fn to_json_string(&self) -> String {
        let json = CensusJson {
            g: crate::arith::format_rational(&self.g),
            f: self.f,
            x: self.x,
            pi_x: self.pi_x,
            excluded_primes: self.excluded_primes.clone(),
            rows: self.rows_json(),
        };
        serde_json::to_string(&json).expect("census serializes")
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("a,count,predicted_coeff,predicted\n");
        for r in self.rows_json() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.a, r.count, r.predicted_coeff, r.predicted
            ));
        }
        out
    }
}

/// Count primes p <= x per reduced class a (mod f) having g as a primitive
/// root. The prime range is scanned in fixed-size chunks that may run in
/// parallel; per-class tallies are summed, so the result does not depend on
/// the schedule.
pub fn run_census(g: &Rational, f: u64, x: u64, tables: &SieveTables) -> Result<CensusReport> {
    let class = classify(g);
    if class != GClass::InG {
        return Err(Error::NotInG(class));
    }
    if f == 0 {
        return Err(Error::InvalidProgression { a: 0, f });
    }
    if x > tables.limit() {
        return Err(Error::SieveLimit(x));
    }
    let (num, den) = rational_parts_i64(g)?;
    let inv = compute_g_invariants(g)?;

    let classes = Progression::all_mod(f);
    // residues a % f of the reduced classes, ascending (a = f only when f = 1)
    let residue_keys: Vec<u64> = classes.iter().map(|p| p.a() % f).collect();
    debug_assert!(residue_keys.windows(2).all(|w| w[0] < w[1]));

    let n_chunks = x / SEGMENT + 1;
    let (pi_x, counts) = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = (c * SEGMENT).max(2);
            let hi = (c * SEGMENT + SEGMENT - 1).min(x);
            let mut pi = 0u64;
            let mut counts = vec![0u64; classes.len()];
            let mut scratch = Vec::new();
            for p in lo..=hi {
                if tables.spf[p as usize] as u64 != p {
                    continue;
                }
                pi += 1;
                if p == 2 || num.unsigned_abs() % p == 0 || den % p == 0 {
                    continue;
                }
                let row = match residue_keys.binary_search(&(p % f)) {
                    Ok(i) => i,
                    Err(_) => continue, // p divides f: not in any reduced class
                };
                if primitive_root_reduced(num, den, p, tables, &mut scratch)
                    .expect("p excluded above")
                {
                    counts[row] += 1;
                }
            }
            (pi, counts)
        })
        .reduce(
            || (0u64, vec![0u64; classes.len()]),
            |(pa, ca), (pb, cb)| {
                let mut c = ca;
                for (x, y) in c.iter_mut().zip(cb) {
                    *x += y;
                }
                (pa + pb, c)
            },
        );

    let mut rows = Vec::with_capacity(classes.len());
    for (i, prog) in classes.iter().enumerate() {
        let predicted_coeff = delta_closed_from(*prog, &inv)?.coeff;
        let predicted = predicted_coeff.to_f64().unwrap_or(f64::NAN) * ARTIN_CONSTANT;
        rows.push(ResidueRow {
            a: prog.a(),
            count: counts[i],
            predicted_coeff,
            predicted,
        });
    }

    let mut excluded: Vec<u64> = vec![2];
    for part in [factorize(num)?, factorize(den as i64)?] {
        excluded.extend(part.primes());
    }
    excluded.sort_unstable();
    excluded.dedup();
    excluded.retain(|&p| p <= x);

    Ok(CensusReport {
        g: g.clone(),
        f,
        x,
        pi_x,
        excluded_primes: excluded,
        rows,
    })
}

/// The heuristic main term 2 sum phi(p-1)/(p-1) over primes p <= x with
/// (g/p) = -1, p = a (mod f) and gcd(p-1, h) = 1. Requires an integer g
/// outside {-1, 0, 1}.
pub fn heuristic_sum(g: &Rational, f: u64, a: u64, x: u64, tables: &SieveTables) -> Result<f64> {
    let (num, den) = rational_parts_i64(g)?;
    if den != 1 || num.unsigned_abs() <= 1 {
        return Err(Error::NonIntegerBase);
    }
    if f == 0 {
        return Err(Error::InvalidProgression { a, f });
    }
    if x > tables.limit() {
        return Err(Error::SieveLimit(x));
    }
    let h = power_index(g)?;
    let target = a % f;
    let mut sum = 0.0f64;
    for p in tables.primes_up_to(x) {
        if p == 2 || p % f != target {
            continue;
        }
        let pm1 = p - 1;
        if pm1.gcd(&h) != 1 {
            continue;
        }
        if jacobi_extended(num, p)? != -1 {
            continue;
        }
        sum += tables.phi(pm1) as f64 / pm1 as f64;
    }
    Ok(2.0 * sum)
}

/// The naive heuristic sum_{p <= x} phi(p-1)/(p-1), asymptotically
/// A x / log x but blind to the arithmetic of g.
pub fn naive_artin_sum(x: u64, tables: &SieveTables) -> f64 {
    assert!(x <= tables.limit(), "x exceeds the sieve limit");
    let mut sum = 0.0f64;
    for p in tables.primes_up_to(x) {
        let pm1 = p - 1;
        sum += tables.phi(pm1) as f64 / pm1 as f64;
    }
    sum
}
