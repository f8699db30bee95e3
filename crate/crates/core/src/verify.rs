//! Grid verification of the bundle-manifold formulas against the
//! elimination-based computations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bundle_manifold::{construct_with, BundleManifoldSpec};
use crate::certificate::Kodaira;
use crate::circle_bundle::{b1_closed_form, degeneracy_closed_form, EulerTag, PairingRules};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridPoint {
    pub d: u32,
    pub k: u32,
    pub g: u32,
    pub e: EulerTag,
}

/// Every `(d, k, g, e)` with `0 <= d <= k <= g <= max_genus`, `g >= 1` and a
/// valid tag.
pub fn grid(max_genus: u32) -> impl Iterator<Item = GridPoint> {
    (1..=max_genus).flat_map(|g| {
        (0..=g).flat_map(move |k| {
            (0..=k).flat_map(move |d| EulerTag::valid_for(d, k).map(move |e| GridPoint { d, k, g, e }))
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridFailure {
    pub point: GridPoint,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GridReport {
    pub cases: usize,
    pub failures: Vec<GridFailure>,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds every bundle manifold on the grid and compares the rank-based
/// degeneracy and Gysin `b_1` with their closed forms, together with rank
/// parity, the nullity bounds, the Noether-type identity and the genus
/// dichotomy for the Kodaira dimension.
pub fn verify_grid(max_genus: u32, rules: PairingRules) -> GridReport {
    let mut report = GridReport::default();
    for point in grid(max_genus) {
        report.cases += 1;
        if let Err(reason) = check_point(point, rules) {
            report.failures.push(GridFailure { point, reason });
        }
    }
    report
}

fn check_point(p: GridPoint, rules: PairingRules) -> core::result::Result<(), String> {
    let run = || -> Result<core::result::Result<(), String>> {
        let spec = BundleManifoldSpec::new(p.d, p.k, p.g, p.e)?;
        let m = construct_with(&spec, rules)?;
        let c = &m.certificate;
        let mut bad = Vec::new();
        if m.cohomology.b1 != b1_closed_form(p.d, p.k, p.e)? as usize {
            bad.push("b1");
        }
        if m.cohomology.degeneracy_oracle != degeneracy_closed_form(p.d, p.k, p.e)? as usize {
            bad.push("degeneracy");
        }
        if m.cohomology.pairing_rank % 2 != 0 {
            bad.push("rank parity");
        }
        if !m.cohomology.pairing.matrix.is_skew_symmetric() {
            bad.push("skew symmetry");
        }
        if !m.cohomology.nullity.passed {
            bad.push("nullity bounds");
        }
        if 2 * c.chi + 3 * c.sigma != 0 {
            bad.push("2 chi + 3 sigma");
        }
        let expected_kappa = if p.g == 1 { Kodaira::Zero } else { Kodaira::One };
        if c.kappa != expected_kappa {
            bad.push("kappa");
        }
        Ok(if bad.is_empty() { Ok(()) } else { Err(bad.join(", ")) })
    };
    match run() {
        Ok(r) => r,
        Err(e) => Err(format!("{e}")),
    }
}
