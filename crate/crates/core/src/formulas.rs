//! Closed-form minimum wirelengths and the harness that compares them with
//! the cut-based and distance-based engines.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::embedding::{lex_embedding, wirelength_by_cuts, wirelength_by_distance};
use crate::error::{Error, Result};
use crate::hosts::{build_host, HostKind};
use crate::qcube::build_qcube;

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain {
            n,
            reason: "wirelength formulas hold for n >= 2".into(),
        });
    }
    Ok(())
}

fn checked_pow3(n: u32, what: &'static str) -> Result<u64> {
    3u64.checked_pow(n).ok_or(Error::Overflow(what))
}

/// Small helper so the formulas below read as arithmetic.
fn ck(v: Option<u64>, what: &'static str) -> Result<u64> {
    v.ok_or(Error::Overflow(what))
}

/// `3^{n-1}·(2(3^{n-1} − 1) + 3)`
pub fn wl_cylinder(n: u32) -> Result<u64> {
    const W: &str = "cylinder wirelength";
    check_n(n)?;
    let m = checked_pow3(n - 1, W)?;
    let inner = ck(ck(2u64.checked_mul(m - 1), W)?.checked_add(3), W)?;
    ck(m.checked_mul(inner), W)
}

/// `2·3^{n-1}·(3^{n-1} − 1) + 4n·3^{n-1}`
pub fn wl_caterpillar(n: u32) -> Result<u64> {
    const W: &str = "caterpillar wirelength";
    check_n(n)?;
    let m = checked_pow3(n - 1, W)?;
    let spine = ck(ck(2u64.checked_mul(m), W)?.checked_mul(m - 1), W)?;
    let leaves = ck((4 * n as u64).checked_mul(m), W)?;
    ck(spine.checked_add(leaves), W)
}

/// `2·3^{n-1}·((3^{n-1} − 1) + (2n − 1) + n)`
pub fn wl_firecracker(n: u32) -> Result<u64> {
    const W: &str = "firecracker wirelength";
    check_n(n)?;
    let m = checked_pow3(n - 1, W)?;
    let inner = ck((m - 1).checked_add(3 * n as u64 - 1), W)?;
    ck(ck(2u64.checked_mul(m), W)?.checked_mul(inner), W)
}

/// `4n(⌈3^n/2⌉ − 3) + 4(⌈3^n/2⌉ − 2) + 4(⌈3^n/2⌉ − 1)`
pub fn wl_banana(n: u32) -> Result<u64> {
    const W: &str = "banana wirelength";
    check_n(n)?;
    let half_up = checked_pow3(n, W)? / 2 + 1;
    let leaves = ck((4 * n as u64).checked_mul(half_up - 3), W)?;
    let links = ck(4u64.checked_mul(half_up - 2), W)?;
    let roots = ck(4u64.checked_mul(half_up - 1), W)?;
    ck(ck(leaves.checked_add(links), W)?.checked_add(roots), W)
}

pub fn wl_formula(kind: HostKind, n: u32) -> Result<u64> {
    match kind {
        HostKind::Cylinder => wl_cylinder(n),
        HostKind::Caterpillar => wl_caterpillar(n),
        HostKind::Firecracker => wl_firecracker(n),
        HostKind::Banana => wl_banana(n),
    }
}

/// One row of the engine comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirelengthRecord {
    pub host: HostKind,
    pub n: u32,
    pub formula_value: Option<u64>,
    pub cut_value: Option<u64>,
    pub distance_value: Option<u64>,
    pub agree: bool,
    /// Set when the instance could not be built or an engine refused.
    pub error: Option<String>,
}

impl WirelengthRecord {
    fn from_values(host: HostKind, n: u32, values: [Option<u64>; 3], error: Option<String>) -> Self {
        let present: Vec<u64> = values.iter().flatten().copied().collect();
        let agree = error.is_none() && !present.is_empty() && present.windows(2).all(|w| w[0] == w[1]);
        WirelengthRecord {
            host,
            n,
            formula_value: values[0],
            cut_value: values[1],
            distance_value: values[2],
            agree,
            error,
        }
    }
}

/// Runs all three engines for each host kind at dimension `n`.
/// Failures become records with `agree = false`; nothing is thrown.
pub fn cross_check(n: u32, kinds: &[HostKind]) -> Vec<WirelengthRecord> {
    let guest = build_qcube(n);
    kinds
        .iter()
        .map(|&kind| {
            let run = || -> Result<[Option<u64>; 3]> {
                let host = build_host(kind, n)?;
                let guest = guest.as_ref().map_err(Clone::clone)?;
                let formula = wl_formula(kind, n)?;
                let e = lex_embedding(guest, &host)?;
                let distance = wirelength_by_distance(&e)?;
                let cuts = wirelength_by_cuts(&e, &host.cut_family)?;
                Ok([Some(formula), Some(cuts), Some(distance)])
            };
            match run() {
                Ok(values) => WirelengthRecord::from_values(kind, n, values, None),
                Err(err) => {
                    let formula = wl_formula(kind, n).ok();
                    WirelengthRecord::from_values(kind, n, [formula, None, None], Some(err.to_string()))
                }
            }
        })
        .collect()
}

/// `host,n,formula,cuts,distance,agree`
pub fn records_to_csv(records: &[WirelengthRecord]) -> String {
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut out = String::from("host,n,formula,cuts,distance,agree\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.host,
            r.n,
            opt(r.formula_value),
            opt(r.cut_value),
            opt(r.distance_value),
            r.agree
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcube::iso_closed_form;

    #[test]
    fn values_at_small_n() {
        assert_eq!(wl_cylinder(2).unwrap(), 21);
        assert_eq!(wl_cylinder(3).unwrap(), 171);
        assert_eq!(wl_cylinder(4).unwrap(), 1485);
        assert_eq!(wl_caterpillar(2).unwrap(), 36);
        assert_eq!(wl_caterpillar(3).unwrap(), 252);
        assert_eq!(wl_caterpillar(4).unwrap(), 1836);
        assert_eq!(wl_firecracker(2).unwrap(), 42);
        assert_eq!(wl_firecracker(3).unwrap(), 288);
        assert_eq!(wl_firecracker(4).unwrap(), 1998);
        assert_eq!(wl_banana(2).unwrap(), 44);
        assert_eq!(wl_banana(3).unwrap(), 232);
    }

    #[test]
    fn banana_terms_at_n2() {
        // 4n(⌈9/2⌉−3), 4(⌈9/2⌉−2), 4(⌈9/2⌉−1)
        let half_up = 5u64;
        assert_eq!((8 * (half_up - 3), 4 * (half_up - 2), 4 * (half_up - 1)), (16, 12, 16));
    }

    #[test]
    fn domain_and_overflow() {
        for kind in HostKind::ALL {
            assert!(matches!(wl_formula(kind, 1), Err(Error::Domain { .. })));
            assert!(matches!(wl_formula(kind, 60), Err(Error::Overflow(_))));
        }
    }

    #[test]
    fn formula_level_identities() {
        for n in 2..=10 {
            let cyl = wl_cylinder(n).unwrap();
            let cat = wl_caterpillar(n).unwrap();
            assert!(cat >= cyl, "n={n}");
            // tree totals are even; the cylinder total is odd times odd
            for kind in [HostKind::Caterpillar, HostKind::Firecracker, HostKind::Banana] {
                assert_eq!(wl_formula(kind, n).unwrap() % 2, 0, "{kind} n={n}");
            }
            assert_eq!(cyl % 2, 1, "n={n}");
        }
    }

    #[test]
    fn spine_cut_sum_identity() {
        for n in 2..=6u32 {
            let m = 3u64.pow(n - 1);
            let sum: u64 = (1..m)
                .map(|i| 2 * n as u64 * 3 * i - 2 * iso_closed_form(3 * i, n).unwrap())
                .sum();
            assert_eq!(sum, 2 * m * (m - 1), "n={n}");
        }
    }

    #[test]
    fn cross_check_small() {
        let records = cross_check(2, &HostKind::ALL);
        assert_eq!(records.len(), 4);
        assert!(records.iter().all(|r| r.agree), "{records:?}");
        let refused = cross_check(1, &[HostKind::Banana]);
        assert!(!refused[0].agree);
        assert!(refused[0].error.as_deref().unwrap().contains("banana host requires n >= 2"));
        let csv = records_to_csv(&records);
        assert!(csv.contains("cylinder,2,21,21,21,true\n"));
    }
}
