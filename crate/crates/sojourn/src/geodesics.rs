//! Scattering geodesics indexed by rational boundary points.
//!
//! A scattering geodesic leaves the cusp, crosses the compact part, and
//! returns to the cusp; it is determined by an ordered pair of boundary
//! points and visits the fundamental domain along rationals `p/q` in lowest
//! terms. For fixed denominator `q` the numerators coprime to `q` come in
//! pairs `p <-> y` with `p * y = -1 (mod q)`: both members lie on the same
//! geodesic. Choosing the smaller member of each pair (self-paired
//! numerators, the square roots of `-1` mod `q`, represent themselves) gives
//! a transversal with exactly `n_q = (phi(q) + s_q) / 2` elements — one per
//! geodesic. All geodesics of the family share the sojourn time
//! `2 ln(q t0)`, where `t0 > 1` is the height at which the cusp
//! neighbourhood is cut off.

use crate::sieve::{n_of_q, FactorTable};
use crate::{Error, Result};

/// A reduced rational `p/q` on the boundary: `0 <= p < q`, `gcd(p, q) = 1`.
/// The cusp at infinity's companion `0/1` is the only numerator-zero case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalCusp {
    p: u64,
    q: u64,
}

impl RationalCusp {
    /// Validates reducedness at construction so that downstream predicates
    /// never see an unreduced fraction.
    pub fn new(p: u64, q: u64) -> Result<RationalCusp> {
        if q == 0 {
            return Err(Error::invalid("cusp denominator must be positive"));
        }
        if p >= q && !(p == 0 && q == 1) {
            return Err(Error::invalid(format!(
                "cusp numerator {p} not in [0, {q})"
            )));
        }
        if gcd(p, q) != 1 {
            return Err(Error::invalid(format!("{p}/{q} is not in lowest terms")));
        }
        Ok(RationalCusp { p, q })
    }

    pub fn numerator(&self) -> u64 {
        self.p
    }

    pub fn denominator(&self) -> u64 {
        self.q
    }
}

/// All geodesics with denominator `q`: the chosen numerators (one per
/// geodesic, ascending) and the common sojourn time `2 ln(q t0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicFamily {
    pub q: u64,
    pub numerators: Vec<u64>,
    pub sojourn: f64,
}

/// Sojourn time of the family with denominator `q`: `2 ln(q t0)`.
/// Callers guarantee `q >= 1` and `t0 > 1`, so the value is positive.
pub fn sojourn_time(q: u64, t0: f64) -> f64 {
    2.0 * (q as f64 * t0).ln()
}

/// The numerator paired with `p` modulo `q`: the unique `y` in `[1, q)` with
/// `p * y = -1 (mod q)`. Requires `1 <= p < q` and `gcd(p, q) = 1`.
pub fn pair_partner(p: u64, q: u64) -> Result<u64> {
    if q < 2 || p == 0 || p >= q {
        return Err(Error::invalid(format!(
            "pair_partner requires 1 <= p < q with q >= 2, got p = {p}, q = {q}"
        )));
    }
    let inv = mod_inverse(p, q).ok_or_else(|| {
        Error::invalid(format!("pair_partner requires gcd(p, q) = 1, got p = {p}, q = {q}"))
    })?;
    // inv is in [1, q), so q - inv is too, and p * (q - inv) = -1 (mod q).
    Ok(q - inv)
}

/// Two boundary points lie on the same scattering geodesic iff they share a
/// denominator and their numerators multiply to `-1 (mod q)`. A point is
/// self-paired (lies on the geodesic "alone") iff `p^2 = -1 (mod q)`.
pub fn same_geodesic(a: &RationalCusp, b: &RationalCusp) -> bool {
    a.q == b.q && (a.p as u128 * b.p as u128 + 1) % (a.q as u128) == 0
}

/// Enumerates the geodesic family for one denominator.
///
/// The returned numerators are exactly those `p` with `p <= pair_partner(p)`;
/// for `q = 1` the family is the single geodesic through `0/1`. The size of
/// the transversal is checked against `n_q` computed independently from
/// `phi(q)` and `s_q`; a mismatch is an invariant violation.
pub fn enumerate_family(t: &FactorTable, q: u64, t0: f64) -> Result<GeodesicFamily> {
    check_t0(t0)?;
    if q < 1 || q > t.limit() {
        return Err(Error::invalid(format!(
            "denominator {q} outside table range 1..={}",
            t.limit()
        )));
    }
    if q == 1 {
        return Ok(GeodesicFamily {
            q,
            numerators: vec![0],
            sojourn: sojourn_time(q, t0),
        });
    }
    let mut numerators = Vec::new();
    for p in 1..q {
        if gcd(p, q) != 1 {
            continue;
        }
        let y = pair_partner(p, q).expect("p coprime to q by construction");
        if p <= y {
            numerators.push(p);
        }
    }
    let (phi, s) = t.phi_s_unchecked(q);
    let expected = n_of_q(phi, s)?;
    if numerators.len() as u64 != expected {
        return Err(Error::InvariantViolation(format!(
            "family for q = {q} has {} numerators, expected n_q = {expected}",
            numerators.len()
        )));
    }
    Ok(GeodesicFamily {
        q,
        numerators,
        sojourn: sojourn_time(q, t0),
    })
}

/// Iterator over the families for `q = 1, 2, ..., q_max` in order.
pub fn enumerate_up_to<'a>(
    t: &'a FactorTable,
    q_max: u64,
    t0: f64,
) -> Result<impl Iterator<Item = GeodesicFamily> + 'a> {
    check_t0(t0)?;
    if q_max < 1 || q_max > t.limit() {
        return Err(Error::invalid(format!(
            "q_max {q_max} outside table range 1..={}",
            t.limit()
        )));
    }
    Ok((1..=q_max).map(move |q| {
        enumerate_family(t, q, t0).expect("family enumeration invariant broken")
    }))
}

fn check_t0(t0: f64) -> Result<()> {
    // `t0 > 1` keeps every sojourn time positive (at q = 1 it is 2 ln t0).
    if !(t0 > 1.0) {
        return Err(Error::invalid(format!("t0 must be > 1, got {t0}")));
    }
    Ok(())
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Inverse of `a` modulo `q` by the extended Euclidean algorithm, or `None`
/// if `gcd(a, q) != 1`. Signed 128-bit intermediates keep every step exact
/// for the full `u64` range.
fn mod_inverse(a: u64, q: u64) -> Option<u64> {
    let (mut r0, mut r1) = (q as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    if r0 != 1 {
        return None;
    }
    let q = q as i128;
    Some(((t0 % q + q) % q) as u64)
}
