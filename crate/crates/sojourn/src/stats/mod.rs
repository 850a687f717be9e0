//! Statistics of the geodesic counts: the normalized `omega` statistic and
//! its empirical distribution, plus the density and exceptional-set counts.
//!
//! For each denominator `q <= x` the scan produces the record
//! `(q, phi, s, n, omega(n), omega(phi))`. The central experiment normalizes
//! the number of distinct prime factors as
//!
//! ```text
//!     (omega - f(x)) / g(x),   f(x) = (ln ln x)^2 / 2,
//!                              g(x) = (ln ln x)^(3/2) / sqrt(3)
//! ```
//!
//! and compares the empirical distribution over `q <= x` with the standard
//! normal law — the central-limit normalization appropriate for `omega` of a
//! typical *value* of `n_q` (or of `phi(q)`), whose prime count grows like
//! `(ln ln x)^2 / 2` rather than the `ln ln x` of a typical integer.
//!
//! Alongside the distribution there are two integer counts with independent
//! cross-checks:
//!
//! * `A(x) = #{q <= x : s_q != 0}`, the denominators carrying self-paired
//!   numerators. Computed both from `s_q` directly and from the
//!   characterization `q in O or q/2 in O`, where `O` is the multiplicative
//!   semigroup generated by primes `1 mod 4` (and 1). Its asymptotic density
//!   is `alpha * x / sqrt(ln x)` with `alpha` a convergent prime product.
//! * `E(x) = #{q <= x : |omega(n_q) - omega(phi(q))| > 1}`, the set where the
//!   two omega columns drift apart; outside of `A`-denominators they provably
//!   differ by at most 1 (for `s_q = 0`, `n_q = phi(q)/2` exactly).

pub mod normal;

use crate::sieve::{primes_up_to, ArithmeticRecord, FactorTable};
use crate::{Error, Result};
use serde::Serialize;

/// Which `omega` column of the scan a statistic is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaColumn {
    /// `omega(n_q)` — distinct prime factors of the geodesic count.
    OfN,
    /// `omega(phi(q))` — the companion statistic.
    OfPhi,
}

impl OmegaColumn {
    fn pick(&self, r: &ArithmeticRecord) -> u32 {
        match self {
            OmegaColumn::OfN => r.omega_n,
            OmegaColumn::OfPhi => r.omega_phi,
        }
    }
}

/// Centering and scaling for the normalized statistic at cutoff `x`.
#[derive(Debug, Clone, Copy)]
pub struct EKNormalization {
    pub x: f64,
    /// Centering `f(x) = (ln ln x)^2 / 2`.
    pub f: f64,
    /// Scale `g(x) = (ln ln x)^(3/2) / sqrt(3)`.
    pub g: f64,
}

impl EKNormalization {
    /// Requires `x >= 16`, which keeps `ln ln x > 1` and the scale positive.
    pub fn for_cutoff(x: u64) -> Result<EKNormalization> {
        if x < 16 {
            return Err(Error::invalid(format!(
                "normalization cutoff must be >= 16, got {x}"
            )));
        }
        let loglog = (x as f64).ln().ln();
        Ok(EKNormalization {
            x: x as f64,
            f: 0.5 * loglog * loglog,
            g: loglog.powf(1.5) / 3f64.sqrt(),
        })
    }

    /// `(omega - f) / g`.
    pub fn normalize(&self, omega: u32) -> f64 {
        (omega as f64 - self.f) / self.g
    }
}

/// One normalized observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EKSample {
    pub q: u64,
    pub value: f64,
}

/// Iterator over the records for `q = 1, ..., x`.
pub fn scan(
    t: &FactorTable,
    x: u64,
) -> Result<impl Iterator<Item = ArithmeticRecord> + '_> {
    scan_range(t, 1, x)
}

/// Iterator over the records for `q = lo, ..., hi` — the partitionable form
/// used to split a scan into deterministic blocks.
pub fn scan_range(
    t: &FactorTable,
    lo: u64,
    hi: u64,
) -> Result<impl Iterator<Item = ArithmeticRecord> + '_> {
    if lo < 1 || lo > hi || hi > t.limit() {
        return Err(Error::invalid(format!(
            "scan range {lo}..={hi} not inside 1..={}",
            t.limit()
        )));
    }
    Ok((lo..=hi).map(move |q| t.record_unchecked(q)))
}

/// Normalized samples of one omega column over `q <= x`.
pub fn ek_samples(t: &FactorTable, x: u64, column: OmegaColumn) -> Result<Vec<EKSample>> {
    let norm = EKNormalization::for_cutoff(x)?;
    Ok(scan(t, x)?
        .map(|r| EKSample {
            q: r.q,
            value: norm.normalize(column.pick(&r)),
        })
        .collect())
}

/// Empirical distribution function `F(a) = #{values <= a} / n` (non-strict,
/// so at a sample point the jump is already included). Samples must be
/// non-empty; an empty slice is a caller bug.
pub fn empirical_cdf(samples: &[EKSample], a: f64) -> f64 {
    assert!(!samples.is_empty(), "empirical_cdf over an empty sample set");
    let hits = samples.iter().filter(|s| s.value <= a).count();
    hits as f64 / samples.len() as f64
}

/// Kolmogorov–Smirnov distance between the empirical distribution of the
/// samples and the standard normal law: the supremum of `|F - Phi|` over the
/// real line, attained at a sample jump from one side or the other, so both
/// sides of every jump are inspected (tied samples form a single jump).
pub fn ks_distance(samples: &[EKSample]) -> f64 {
    assert!(!samples.is_empty(), "ks_distance over an empty sample set");
    let mut values: Vec<f64> = samples.iter().map(|s| s.value).collect();
    values.sort_by(f64::total_cmp);
    let n = values.len() as f64;
    let mut d = 0.0f64;
    let mut i = 0;
    while i < values.len() {
        let v = values[i];
        let mut j = i;
        while j < values.len() && values[j] == v {
            j += 1;
        }
        let phi = normal::std_normal_cdf(v);
        let below = i as f64 / n; // F just left of the jump
        let above = j as f64 / n; // F at the jump
        d = d.max((phi - below).abs()).max((above - phi).abs());
        i = j;
    }
    d
}

/// Fixed-width histogram over `[lo, hi)`. Samples outside the range are
/// clamped into the edge bins (and reported separately), so the counts always
/// sum to the number of samples. A value exactly on an interior bin edge
/// belongs to the bin on its right, consistent with the half-open range.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
    pub total: u64,
    /// Samples below `lo`, clamped into the first bin.
    pub clamped_lo: u64,
    /// Samples at or above `hi`, clamped into the last bin.
    pub clamped_hi: u64,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    /// Left edge of bin `i`.
    pub fn bin_lo(&self, i: usize) -> f64 {
        self.lo + i as f64 * self.bin_width()
    }

    /// Right edge of bin `i`.
    pub fn bin_hi(&self, i: usize) -> f64 {
        self.lo + (i + 1) as f64 * self.bin_width()
    }

    /// Probability density per bin: `count / (total * width)`.
    pub fn density(&self, i: usize) -> f64 {
        self.counts[i] as f64 / (self.total as f64 * self.bin_width())
    }

    fn empty(lo: f64, hi: f64, bins: u32) -> Result<Histogram> {
        if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
            return Err(Error::invalid(format!(
                "histogram range [{lo}, {hi}) is not a finite non-empty interval"
            )));
        }
        if bins == 0 {
            return Err(Error::invalid("histogram needs at least one bin"));
        }
        Ok(Histogram {
            lo,
            hi,
            counts: vec![0; bins as usize],
            total: 0,
            clamped_lo: 0,
            clamped_hi: 0,
        })
    }

    fn insert(&mut self, value: f64, weight: u64) {
        let bins = self.counts.len();
        let idx = if value < self.lo {
            self.clamped_lo += weight;
            0
        } else if value >= self.hi {
            self.clamped_hi += weight;
            bins - 1
        } else {
            let width = self.bin_width();
            // floor() sends a value exactly on an edge to the right bin; the
            // min() guards against the one case where rounding of
            // (value - lo) / width lands exactly on `bins`.
            (((value - self.lo) / width).floor() as usize).min(bins - 1)
        };
        self.counts[idx] += weight;
        self.total += weight;
    }
}

/// Histogram of the sample values over `[lo, hi)` with `bins` equal bins.
pub fn histogram(samples: &[EKSample], lo: f64, hi: f64, bins: u32) -> Result<Histogram> {
    let mut h = Histogram::empty(lo, hi, bins)?;
    for s in samples {
        h.insert(s.value, 1);
    }
    Ok(h)
}

/// Exact distribution of one omega column over a scanned range, held as
/// counts per omega value. The normalized statistic takes only a handful of
/// distinct values at any realistic cutoff (omega is tiny), so aggregated
/// counts reproduce the sample-level distribution exactly — the CLI merges
/// these per block instead of materializing ten million samples. The
/// sample-level functions above are the reference; equality of the two routes
/// is pinned down in tests.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OmegaCounts {
    /// `counts[w] = #{q in range : omega = w}`.
    pub counts: Vec<u64>,
    pub total: u64,
}

impl OmegaCounts {
    pub fn new() -> OmegaCounts {
        OmegaCounts::default()
    }

    /// Tallies the column over `q = lo, ..., hi`.
    pub fn from_scan(
        t: &FactorTable,
        lo: u64,
        hi: u64,
        column: OmegaColumn,
    ) -> Result<OmegaCounts> {
        let mut c = OmegaCounts::new();
        for r in scan_range(t, lo, hi)? {
            c.add(column.pick(&r));
        }
        Ok(c)
    }

    pub fn add(&mut self, omega: u32) {
        let w = omega as usize;
        if self.counts.len() <= w {
            self.counts.resize(w + 1, 0);
        }
        self.counts[w] += 1;
        self.total += 1;
    }

    /// Accumulates another tally (used to merge per-block results in order).
    pub fn merge(&mut self, other: &OmegaCounts) {
        if self.counts.len() < other.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (w, &c) in other.counts.iter().enumerate() {
            self.counts[w] += c;
        }
        self.total += other.total;
    }

    /// The normalized values this tally lives on, with their counts,
    /// ascending and restricted to nonzero counts.
    fn jumps<'a>(
        &'a self,
        norm: &'a EKNormalization,
    ) -> impl Iterator<Item = (f64, u64)> + 'a {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(move |(w, &c)| (norm.normalize(w as u32), c))
    }

    /// Same value as [`empirical_cdf`] over the equivalent sample list.
    pub fn empirical_cdf(&self, norm: &EKNormalization, a: f64) -> f64 {
        assert!(self.total > 0, "empirical_cdf over an empty tally");
        let hits: u64 = self
            .jumps(norm)
            .filter(|&(v, _)| v <= a)
            .map(|(_, c)| c)
            .sum();
        hits as f64 / self.total as f64
    }

    /// Same value as [`ks_distance`] over the equivalent sample list.
    pub fn ks_distance(&self, norm: &EKNormalization) -> f64 {
        assert!(self.total > 0, "ks_distance over an empty tally");
        let n = self.total as f64;
        let mut cum = 0u64;
        let mut d = 0.0f64;
        for (v, c) in self.jumps(norm) {
            let phi = normal::std_normal_cdf(v);
            let below = cum as f64 / n;
            let above = (cum + c) as f64 / n;
            d = d.max((phi - below).abs()).max((above - phi).abs());
            cum += c;
        }
        d
    }

    /// Same bins as [`histogram`] over the equivalent sample list.
    pub fn histogram(&self, norm: &EKNormalization, lo: f64, hi: f64, bins: u32) -> Result<Histogram> {
        let mut h = Histogram::empty(lo, hi, bins)?;
        for (v, c) in self.jumps(norm) {
            h.insert(v, c);
        }
        Ok(h)
    }

    /// Mean and (population) standard deviation of the normalized statistic.
    pub fn mean_std(&self, norm: &EKNormalization) -> (f64, f64) {
        assert!(self.total > 0, "moments of an empty tally");
        let n = self.total as f64;
        let mean: f64 = self.jumps(norm).map(|(v, c)| v * c as f64).sum::<f64>() / n;
        let var: f64 = self
            .jumps(norm)
            .map(|(v, c)| (v - mean) * (v - mean) * c as f64)
            .sum::<f64>()
            / n;
        (mean, var.sqrt())
    }
}

/// `A(x) = #{q <= x : s_q != 0}`, counted from the closed form for `s_q`.
#[allow(non_snake_case)]
pub fn count_A(t: &FactorTable, x: u64) -> Result<u64> {
    count_A_range(t, 1, x)
}

/// Block form of [`count_A`].
#[allow(non_snake_case)]
pub fn count_A_range(t: &FactorTable, lo: u64, hi: u64) -> Result<u64> {
    check_range(t, lo, hi)?;
    Ok((lo..=hi).filter(|&q| t.phi_s_unchecked(q).1 != 0).count() as u64)
}

/// `A(x)` again, by the independent route: `s_q != 0` iff `q in O` or
/// `q/2 in O`, where `O` is the set of integers all of whose prime factors
/// are `1 mod 4` (with `1 in O`). Exercises the factorization walk and the
/// residue classes directly, with no reference to the `s_q` formula.
#[allow(non_snake_case)]
pub fn count_A_via_O(t: &FactorTable, x: u64) -> Result<u64> {
    count_A_via_O_range(t, 1, x)
}

/// Block form of [`count_A_via_O`].
#[allow(non_snake_case)]
pub fn count_A_via_O_range(t: &FactorTable, lo: u64, hi: u64) -> Result<u64> {
    check_range(t, lo, hi)?;
    let in_o = |m: u64| {
        let mut m = m;
        while m > 1 {
            let p = t.spf_at(m);
            if p & 3 != 1 {
                return false;
            }
            while m % p == 0 {
                m /= p;
            }
        }
        true
    };
    Ok((lo..=hi)
        .filter(|&q| in_o(q) || (q % 2 == 0 && in_o(q / 2)))
        .count() as u64)
}

/// `E(x) = #{q <= x : |omega(n_q) - omega(phi(q))| > 1}` — the exceptional
/// set where the two columns disagree by more than the provable bound for
/// `s_q = 0` denominators.
#[allow(non_snake_case)]
pub fn count_E(t: &FactorTable, x: u64) -> Result<u64> {
    count_E_range(t, 1, x)
}

/// Block form of [`count_E`].
#[allow(non_snake_case)]
pub fn count_E_range(t: &FactorTable, lo: u64, hi: u64) -> Result<u64> {
    Ok(scan_range(t, lo, hi)?
        .filter(|r| omega_gap_exceeds_one(r))
        .count() as u64)
}

/// The exceptional-set predicate on one record.
pub fn omega_gap_exceeds_one(r: &ArithmeticRecord) -> bool {
    r.omega_n.abs_diff(r.omega_phi) > 1
}

fn check_range(t: &FactorTable, lo: u64, hi: u64) -> Result<()> {
    if lo < 1 || lo > hi || hi > t.limit() {
        return Err(Error::invalid(format!(
            "range {lo}..={hi} not inside 1..={}",
            t.limit()
        )));
    }
    Ok(())
}

/// Truncated value of the density constant
/// `alpha = 3/(2 pi) * prod_{p = 1 (4)} (1 - p^-2)^(-1/2)`
/// together with a rigorous relative tail bound for the omitted primes.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AlphaEstimate {
    pub value: f64,
    pub prime_limit: u64,
    /// Upper bound on `alpha_true / value - 1` (the truncation always
    /// undershoots, every omitted factor being > 1).
    pub tail_bound: f64,
}

/// Computes the density constant over primes up to `prime_limit`, ascending,
/// one factor at a time — deterministic for a given limit.
///
/// Tail bound: for the omitted primes `p > P`,
/// `ln(alpha_true / value) = sum -ln(1 - p^-2)/2 <= sum_{n > P} n^-2 / (2 (1 - P^-2))
///  <= (1/P) / (2 (1 - P^-2)) = 1/(2 (P - 1/P))`,
/// so `alpha_true / value - 1 <= exp(1/(2 (P - 1/P))) - 1`, which is below
/// `1.1 / (2 P)` for every `P >= 5` (checked in tests).
pub fn alpha_constant(prime_limit: u64) -> Result<AlphaEstimate> {
    if prime_limit < 5 {
        return Err(Error::invalid(format!(
            "prime limit must be >= 5 (the first prime 1 mod 4), got {prime_limit}"
        )));
    }
    let mut value = 3.0 / (2.0 * std::f64::consts::PI);
    for p in primes_up_to(prime_limit) {
        if p & 3 == 1 {
            let p2 = (p as f64) * (p as f64);
            value /= (1.0 - 1.0 / p2).sqrt();
        }
    }
    let big_p = prime_limit as f64;
    let tail_bound = (0.5 / (big_p - 1.0 / big_p)).exp_m1();
    Ok(AlphaEstimate {
        value,
        prime_limit,
        tail_bound,
    })
}
