//! Smallest-prime-factor sieve and the arithmetic functions built on it.
//!
//! Everything downstream — geodesic counts, density estimates, the normalized
//! `omega` statistic — reduces to factoring integers up to some cutoff `x`.
//! A [`FactorTable`] stores the smallest prime factor of every integer up to
//! an inclusive limit (4 bytes per entry), which turns factorization into a
//! short division walk and makes `phi(q)`, `s_q`, `n_q` and `omega` cheap
//! enough to evaluate for every `q <= 10^7` in seconds.
//!
//! The quantity `s_q` is the number of residues `p` in `[1, q)` with
//! `p^2 = -1 (mod q)`, extended by the convention `s_1 = s_2 = 1` (for
//! `q <= 2` the congruence degenerates: `p = 1` counts). It vanishes unless
//! `q` is 1, 2, or of the form `u` or `2u` with every prime factor of `u`
//! congruent to 1 mod 4, in which case it equals `2^k` with `k` the number of
//! distinct primes `p = 1 (mod 4)` dividing `q`. [`brute_force_s`] counts the
//! same thing by direct search and serves as the oracle for that closed form.

use crate::{Error, Result};

/// Largest supported table limit. Entries are stored as `u32`, so the table
/// covers integers up to `2^32 - 1`; beyond that the construction is refused
/// rather than silently truncated.
pub const MAX_LIMIT: u64 = u32::MAX as u64;

/// Everything the scan derives for one denominator `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArithmeticRecord {
    pub q: u64,
    /// Euler's totient `phi(q)`.
    pub phi: u64,
    /// Number of square roots of `-1` modulo `q` (with `s_1 = s_2 = 1`).
    pub s: u64,
    /// Geodesic count `n_q = (phi(q) + s_q) / 2`.
    pub n: u64,
    /// Distinct prime factors of `n_q`.
    pub omega_n: u32,
    /// Distinct prime factors of `phi(q)`.
    pub omega_phi: u32,
}

/// Residue class of a prime, the only thing `s_q` cares about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeClass {
    Two,
    OneMod4,
    ThreeMod4,
}

impl PrimeClass {
    /// Class of a prime `p`. The input must be prime; passing a composite
    /// even number is a caller bug.
    pub fn of(p: u64) -> PrimeClass {
        match p & 3 {
            1 => PrimeClass::OneMod4,
            3 => PrimeClass::ThreeMod4,
            _ => {
                debug_assert_eq!(p, 2, "PrimeClass::of called on non-prime {p}");
                PrimeClass::Two
            }
        }
    }
}

/// Smallest-prime-factor table for `2 <= m <= limit`.
///
/// For every prime `p <= limit` the table stores `p` itself; for every
/// composite `m` it stores the smallest prime dividing `m`. The two
/// construction routines ([`build`](FactorTable::build) and
/// [`build_segmented`](FactorTable::build_segmented)) produce bit-identical
/// tables; the segmented variant works in fixed windows so its inner loops
/// stay cache-resident at large limits.
pub struct FactorTable {
    limit: u64,
    spf: Vec<u32>,
}

/// Window length (in table entries) for the segmented construction: 4 MiB of
/// `u32`, comfortably inside L2/L3 on anything modern.
const SEGMENT_LEN: usize = 1 << 20;

impl FactorTable {
    /// Builds the table by a plain sieve of Eratosthenes over the whole range.
    pub fn build(limit: u64) -> Result<FactorTable> {
        let mut spf = Self::identity_vec(limit)?;
        let lim = limit as usize;
        let mut p = 2usize;
        while (p as u64) * (p as u64) <= limit {
            if spf[p] == p as u32 {
                let mut m = p * p;
                while m <= lim {
                    if spf[m] == m as u32 {
                        spf[m] = p as u32;
                    }
                    m += p;
                }
            }
            p += 1;
        }
        Ok(FactorTable { limit, spf })
    }

    /// Builds the same table windowed: sieve the primes up to `sqrt(limit)`
    /// first, then mark each fixed-size window with all of them before moving
    /// on. The result is identical to [`build`](FactorTable::build) entry for
    /// entry — tests compare the two — only the memory access pattern differs.
    pub fn build_segmented(limit: u64) -> Result<FactorTable> {
        let mut spf = Self::identity_vec(limit)?;
        let root = limit.isqrt();
        let small = primes_up_to(root);
        let lim = limit as usize;
        let mut lo = 2usize;
        while lo <= lim {
            let hi = (lo + SEGMENT_LEN - 1).min(lim);
            for &p in &small {
                let p = p as usize;
                let first_multiple = lo.div_ceil(p) * p;
                let start = first_multiple.max(p * p);
                let mut m = start;
                while m <= hi {
                    if spf[m] == m as u32 {
                        spf[m] = p as u32;
                    }
                    m += p;
                }
            }
            lo = hi + 1;
        }
        Ok(FactorTable { limit, spf })
    }

    /// Allocates the identity-initialized backing vector (`spf[m] = m`),
    /// reporting allocation failure as a resource error instead of aborting.
    fn identity_vec(limit: u64) -> Result<Vec<u32>> {
        if limit < 1 {
            return Err(Error::invalid(format!("table limit must be >= 1, got {limit}")));
        }
        if limit > MAX_LIMIT {
            return Err(Error::invalid(format!(
                "table limit {limit} exceeds the supported maximum {MAX_LIMIT}"
            )));
        }
        let len = limit as usize + 1;
        let mut spf: Vec<u32> = Vec::new();
        spf.try_reserve_exact(len).map_err(|_| {
            Error::Resource(format!(
                "cannot allocate factor table for limit {limit} ({} bytes)",
                len * std::mem::size_of::<u32>()
            ))
        })?;
        spf.extend(0..=limit as u32);
        Ok(spf)
    }

    /// Inclusive upper bound of the table's coverage.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Raw table lookup for `2 <= m <= limit` (callers validate the range).
    pub(crate) fn spf_at(&self, m: u64) -> u64 {
        self.spf[m as usize] as u64
    }

    fn check_in_range(&self, m: u64) -> Result<()> {
        if m < 1 || m > self.limit {
            return Err(Error::invalid(format!(
                "argument {m} outside table range 1..={}",
                self.limit
            )));
        }
        Ok(())
    }

    /// `true` iff `m` is prime (in particular, `is_prime(1)` is `false`).
    pub fn is_prime(&self, m: u64) -> Result<bool> {
        self.check_in_range(m)?;
        Ok(m >= 2 && self.spf[m as usize] == m as u32)
    }

    /// Prime factorization of `m` as `(prime, exponent)` pairs with strictly
    /// increasing primes. `factorize(1)` is the empty product.
    pub fn factorize(&self, m: u64) -> Result<Vec<(u64, u32)>> {
        self.check_in_range(m)?;
        let mut factors = Vec::new();
        let mut m = m;
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        Ok(factors)
    }

    /// Number of distinct prime factors, `omega(m)`; `omega(1) = 0`.
    pub fn omega(&self, m: u64) -> Result<u32> {
        self.check_in_range(m)?;
        Ok(self.omega_unchecked(m))
    }

    pub(crate) fn omega_unchecked(&self, mut m: u64) -> u32 {
        let mut count = 0;
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            count += 1;
            while m % p == 0 {
                m /= p;
            }
        }
        count
    }

    /// Euler's totient `phi(q)`; `phi(1) = 1`.
    pub fn totient(&self, q: u64) -> Result<u64> {
        self.check_in_range(q)?;
        Ok(self.phi_s_unchecked(q).0)
    }

    /// Number of solutions of `p^2 = -1 (mod q)` in `[1, q)`, via the closed
    /// form: `0` as soon as `4 | q` or some prime `p = 3 (mod 4)` divides `q`,
    /// otherwise `2^k` with `k` the number of distinct prime factors
    /// `p = 1 (mod 4)`. Reproduces the conventions `s_1 = s_2 = 1`.
    pub fn s_of_q(&self, q: u64) -> Result<u64> {
        self.check_in_range(q)?;
        Ok(self.phi_s_unchecked(q).1)
    }

    /// One factor walk computing `phi(q)` and `s_q` together.
    pub(crate) fn phi_s_unchecked(&self, q: u64) -> (u64, u64) {
        let mut m = q;
        let mut phi = 1u64;
        let mut ones = 0u32;
        let mut vanishes = false;
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            phi *= (p - 1) * p.pow(e - 1);
            match PrimeClass::of(p) {
                PrimeClass::Two => {
                    if e >= 2 {
                        vanishes = true;
                    }
                }
                PrimeClass::ThreeMod4 => vanishes = true,
                PrimeClass::OneMod4 => ones += 1,
            }
        }
        let s = if vanishes { 0 } else { 1u64 << ones };
        (phi, s)
    }

    /// The full record for one denominator. `n_q <= phi(q) <= limit` always
    /// holds, so the derived values stay inside the table.
    pub fn record(&self, q: u64) -> Result<ArithmeticRecord> {
        self.check_in_range(q)?;
        Ok(self.record_unchecked(q))
    }

    pub(crate) fn record_unchecked(&self, q: u64) -> ArithmeticRecord {
        let (phi, s) = self.phi_s_unchecked(q);
        // phi(q) and s_q are congruent mod 2 for every q, so n_of_q cannot
        // fail here; if it ever does, the sieve itself is broken.
        let n = n_of_q(phi, s).expect("phi(q) + s_q is even for all q");
        ArithmeticRecord {
            q,
            phi,
            s,
            n,
            omega_n: self.omega_unchecked(n),
            omega_phi: self.omega_unchecked(phi),
        }
    }

    /// Iterator over the distinct prime factors of `m`, smallest first.
    pub fn distinct_primes(&self, m: u64) -> Result<DistinctPrimes<'_>> {
        self.check_in_range(m)?;
        Ok(DistinctPrimes { table: self, m })
    }
}

/// See [`FactorTable::distinct_primes`].
pub struct DistinctPrimes<'a> {
    table: &'a FactorTable,
    m: u64,
}

impl Iterator for DistinctPrimes<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.m <= 1 {
            return None;
        }
        let p = self.table.spf[self.m as usize] as u64;
        while self.m % p == 0 {
            self.m /= p;
        }
        Some(p)
    }
}

/// Geodesic count `n_q` from `phi(q)` and `s_q`. The sum is even for every
/// `q` (the involution `p <-> -p^{-1}` pairs up numerators, fixing exactly
/// the `s_q` self-paired ones), so an odd sum means a bug upstream and is
/// reported as an invariant violation rather than rounded over.
pub fn n_of_q(phi: u64, s: u64) -> Result<u64> {
    if (phi + s) % 2 != 0 {
        return Err(Error::InvariantViolation(format!(
            "phi + s = {phi} + {s} is odd; counts of paired and self-paired numerators disagree"
        )));
    }
    Ok((phi + s) / 2)
}

/// Counts solutions of `p^2 = -1 (mod q)` by direct search over `[1, q)`.
/// Linear in `q` and used only as the independent oracle for
/// [`FactorTable::s_of_q`]. For `q = 1` returns 1 by convention.
pub fn brute_force_s(q: u64) -> u64 {
    if q == 1 {
        return 1;
    }
    let target = (q - 1) as u128;
    let q128 = q as u128;
    (1..q)
        .filter(|&p| (p as u128 * p as u128) % q128 == target)
        .count() as u64
}

/// All primes `<= limit`, ascending. Plain boolean sieve; fine for the
/// `sqrt(limit)` base primes of the segmented build and for the prime
/// products in the density constant.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let lim = limit as usize;
    let mut composite = vec![false; lim + 1];
    let mut primes = Vec::new();
    for p in 2..=lim {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= lim {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}
