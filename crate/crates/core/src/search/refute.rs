use std::collections::BTreeMap;

use num_traits::Zero;

use super::ap::{alternating_projection_solve, ApResult};
use super::gram::parameterize;
use super::{bilinear_basis, SearchConfig};
use crate::biquadratic::{BiIndex, BiquadraticForm, MonomialOrdering};
use crate::dual::DualCertificate;
use crate::error::Result;
use crate::rational::{int, Rational};

const SCALES: [f64; 5] = [10.0, 100.0, 1e3, 1e4, 1e5];
const SHIFTS: [f64; 6] = [0.0, 1e-4, 1e-3, 1e-2, 3e-2, 1e-1];

/// Searches for a functional with PSD moment matrix and negative pairing with `b`.
///
/// Runs alternating projections over the bilinear basis; on a stall, averages the
/// separation direction over each product monomial, rounds it, and adds small multiples
/// of the Gaussian moments (the identity moment matrix) until the exact verifier
/// accepts. Returns `None` when nothing verifies.
pub fn refutation_search(b: &BiquadraticForm, cfg: &SearchConfig) -> Result<Option<DualCertificate>> {
    let n = b.n();
    let pz = parameterize(&b.to_form(), &bilinear_basis(n))?;
    let ApResult::Stalled(stall) = alternating_projection_solve(&pz, cfg) else {
        return Ok(None);
    };
    let basis: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let mut sums: BTreeMap<BiIndex, (f64, usize)> = BTreeMap::new();
    for (r, &(i, j)) in basis.iter().enumerate() {
        for (s, &(k, l)) in basis.iter().enumerate() {
            let e = sums.entry(BiIndex::new(i, k, j, l)).or_insert((0.0, 0));
            e.0 += stall.separation[r][s];
            e.1 += 1;
        }
    }
    let avg: BTreeMap<BiIndex, f64> = sums.into_iter().map(|(k, (s, c))| (k, s / c as f64)).collect();
    let top = avg.values().fold(0.0f64, |a, v| a.max(v.abs()));
    if top == 0.0 || !top.is_finite() {
        return Ok(None);
    }
    let ordering = if n == 3 {
        MonomialOrdering::builtin36()
    } else {
        MonomialOrdering::lex(n)
    };
    for scale in SCALES {
        let rounded: Vec<Rational> = ordering
            .entries()
            .iter()
            .map(|idx| {
                let v = avg.get(idx).copied().unwrap_or(0.0) / top * scale;
                Rational::from_float(v.round()).unwrap_or_else(Rational::zero)
            })
            .collect();
        for shift in SHIFTS {
            let eps = int((shift * scale).round() as i64);
            if shift > 0.0 && eps.is_zero() {
                continue;
            }
            let c: Vec<Rational> = ordering
                .entries()
                .iter()
                .zip(&rounded)
                .map(|(idx, v)| if idx.x.0 == idx.x.1 && idx.y.0 == idx.y.1 { v + &eps } else { v.clone() })
                .collect();
            let cert = DualCertificate::new(ordering.clone(), c)?;
            if cert.verify_refutation(b)?.is_accepted() {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}
