//! Frozen large-scale values. Every number here was produced by this code
//! and cross-checked against independent implementations (direct search for
//! the pairing counts, a separate interpreter implementation for the omega
//! tallies and KS distances) before being pinned. A change in any of them
//! means behavior changed, not that the test is stale.
//!
//! All tests share one factor table to 10^7, built once.

use sojourn::sieve::FactorTable;
use sojourn::stats::{self, EKNormalization, OmegaCounts};
use std::sync::OnceLock;

const LIMIT: u64 = 10_000_000;

fn table() -> &'static FactorTable {
    static TABLE: OnceLock<FactorTable> = OnceLock::new();
    TABLE.get_or_init(|| FactorTable::build(LIMIT).expect("table build"))
}

/// One full scan, tallying everything with checkpoints at powers of ten.
struct Milestones {
    /// (x, A(x), E(x)) at each checkpoint.
    counts: Vec<(u64, u64, u64)>,
    /// omega(n_q) tallies at 10^6 and 10^7.
    n_1e6: OmegaCounts,
    n_1e7: OmegaCounts,
    /// omega(phi(q)) tally at 10^7.
    phi_1e7: OmegaCounts,
    /// q <= 350 with |omega(n_q) - omega(phi(q))| > 1, in order.
    early_exceptions: Vec<u64>,
}

fn milestones() -> &'static Milestones {
    static CELL: OnceLock<Milestones> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = table();
        let checkpoints = [10u64, 20, 25, 100, 1_000, 10_000, 100_000, 1_000_000, LIMIT];
        let mut counts = Vec::new();
        let mut a = 0u64;
        let mut e = 0u64;
        let mut cn = OmegaCounts::new();
        let mut cp = OmegaCounts::new();
        let mut n_1e6 = OmegaCounts::new();
        let mut early_exceptions = Vec::new();
        let mut next = 0usize;
        for r in stats::scan_range(t, 1, LIMIT).unwrap() {
            if r.s != 0 {
                a += 1;
            }
            if stats::omega_gap_exceeds_one(&r) {
                e += 1;
                if r.q <= 350 {
                    early_exceptions.push(r.q);
                }
            }
            cn.add(r.omega_n);
            cp.add(r.omega_phi);
            if r.q == checkpoints[next] {
                counts.push((r.q, a, e));
                if r.q == 1_000_000 {
                    n_1e6 = cn.clone();
                }
                next += 1;
            }
        }
        assert_eq!(next, checkpoints.len());
        Milestones {
            counts,
            n_1e6,
            n_1e7: cn,
            phi_1e7: cp,
            early_exceptions,
        }
    })
}

#[test]
fn solvable_denominator_counts_at_powers_of_ten() {
    let m = milestones();
    let expected_a: &[(u64, u64)] = &[
        (10, 4),
        (20, 6),
        (25, 7),
        (100, 23),
        (1_000, 188),
        (10_000, 1_631),
        (100_000, 14_582),
        (1_000_000, 132_967),
        (10_000_000, 1_230_279),
    ];
    for (&(x, a), &(xe, ae, _)) in expected_a.iter().zip(&m.counts) {
        assert_eq!(x, xe);
        assert_eq!(a, ae, "A({x}) changed");
    }
    // The independent membership route agrees at the full scale.
    let t = table();
    assert_eq!(stats::count_A_via_O(t, LIMIT).unwrap(), 1_230_279);
    // And the public prefix functions match the fused scan.
    assert_eq!(stats::count_A(t, 100_000).unwrap(), 14_582);
}

#[test]
fn exceptional_counts_at_powers_of_ten() {
    let m = milestones();
    let expected_e: &[(u64, u64)] = &[
        (10, 0),
        (20, 0),
        (25, 0),
        (100, 1),
        (1_000, 28),
        (10_000, 324),
        (100_000, 3_927),
        (1_000_000, 43_538),
        (10_000_000, 469_121),
    ];
    for (&(x, e), &(xe, _, ee)) in expected_e.iter().zip(&m.counts) {
        assert_eq!(x, xe);
        assert_eq!(e, ee, "E({x}) changed");
    }
    assert_eq!(
        m.early_exceptions,
        vec![61, 122, 157, 169, 241, 277, 313, 314, 337, 338],
        "first exceptional denominators changed"
    );
    assert_eq!(stats::count_E(table(), 100_000).unwrap(), 3_927);
}

#[test]
fn omega_tallies_at_large_cutoffs() {
    let m = milestones();
    assert_eq!(m.n_1e6.total, 1_000_000);
    assert_eq!(
        m.n_1e6.counts,
        vec![5, 13_917, 111_488, 332_844, 410_017, 125_916, 5_813],
        "omega(n_q) tally at 10^6 changed"
    );
    assert_eq!(m.n_1e7.total, LIMIT);
    assert_eq!(
        m.n_1e7.counts,
        vec![5, 95_805, 774_805, 2_353_817, 4_106_668, 2_348_895, 315_077, 4_928],
        "omega(n_q) tally at 10^7 changed"
    );
    assert_eq!(
        m.phi_1e7.counts,
        vec![2, 280, 321_046, 2_221_522, 4_487_280, 2_613_901, 350_313, 5_656],
        "omega(phi(q)) tally at 10^7 changed"
    );
}

/// Relative comparison against a frozen float; loose enough to survive a
/// libm ulp, tight enough to catch any real change.
fn close(actual: f64, frozen: f64, what: &str) {
    let tol = 1e-14 * frozen.abs().max(1.0);
    assert!(
        (actual - frozen).abs() <= tol,
        "{what}: got {actual:.17e}, frozen {frozen:.17e}"
    );
}

#[test]
fn normalization_constants_at_large_cutoffs() {
    let n6 = EKNormalization::for_cutoff(1_000_000).unwrap();
    close(n6.f, 3.4473915890637974, "f(10^6)");
    close(n6.g, 2.456573896113084, "g(10^6)");
    let n7 = EKNormalization::for_cutoff(LIMIT).unwrap();
    close(n7.f, 3.8640404138107947, "f(10^7)");
    close(n7.g, 2.6760431651304204, "g(10^7)");
}

#[test]
fn ks_and_moments_at_large_cutoffs() {
    let m = milestones();
    let n6 = EKNormalization::for_cutoff(1_000_000).unwrap();
    let n7 = EKNormalization::for_cutoff(LIMIT).unwrap();

    close(m.n_1e6.ks_distance(&n6), 0.30233422065458504, "KS at 10^6");
    close(m.n_1e7.ks_distance(&n7), 0.30360292781666354, "KS at 10^7");
    close(
        m.phi_1e7.ks_distance(&n7),
        0.3412603188042936,
        "companion KS at 10^7",
    );

    let (mean, std) = m.n_1e7.mean_std(&n7);
    close(mean, 0.006074896848090674, "mean at 10^7");
    close(std, 0.37041372473972983, "std at 10^7");

    // Empirical CDF on the integer grid, as fractions of the total.
    let grid = |c: &OmegaCounts, norm: &EKNormalization| -> Vec<f64> {
        (-2..=2).map(|a| c.empirical_cdf(norm, a as f64)).collect()
    };
    assert_eq!(grid(&m.n_1e6, &n6), vec![0.0, 5e-6, 0.458254, 0.994187, 1.0]);
    assert_eq!(
        grid(&m.n_1e7, &n7),
        vec![0.0, 0.009581, 0.3224432, 0.9995072, 1.0]
    );
}

#[test]
fn alpha_constant_frozen_digits() {
    // Pure IEEE arithmetic (division and sqrt over a prime list), so the
    // frozen digits are exact, not approximate.
    assert_eq!(stats::alpha_constant(10_000).unwrap().value, 0.4906928560090674);
    assert_eq!(stats::alpha_constant(100_000).unwrap().value, 0.4906939522424665);
    assert_eq!(stats::alpha_constant(1_000_000).unwrap().value, 0.49069404209303025);
}

#[test]
fn factor_table_handles_large_primes() {
    let t = table();
    assert_eq!(t.factorize(999_983).unwrap(), vec![(999_983, 1)]);
    assert!(t.is_prime(9_999_991).unwrap());
    assert!(!t.is_prime(9_999_993).unwrap()); // 3 | 9999993
    assert_eq!(t.omega(9_999_991).unwrap(), 1);
    // 10^7 = 2^7 * 5^7.
    assert_eq!(t.factorize(LIMIT).unwrap(), vec![(2, 7), (5, 7)]);
    assert_eq!(t.totient(LIMIT).unwrap(), 4_000_000);
}
