//! JSON documents emitted by the command line.

use std::collections::BTreeMap;

use geographer_core::certificate::IdentityCheck;
use geographer_core::geography::{certify, Measure, OpenCase};
use geographer_core::verify::GridReport;
use geographer_core::{Construction, InvariantCertificate, Recipe, Result};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

/// A certified construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: String,
    /// Human-readable recipe, e.g. `B1(1)=B(3,3,3;1)`.
    pub recipe: String,
    pub construction: Construction,
    /// `(sigma, b1, c)` with `c` read off according to `measure`.
    pub triple: (i64, i64, i64),
    pub measure: Measure,
    pub invariants: InvariantCertificate,
    pub checks: Vec<IdentityCheck>,
    /// How each invariant was obtained.
    pub citations: BTreeMap<String, String>,
}

impl CertificateDocument {
    pub fn from_recipe(recipe: &Recipe) -> Self {
        let t = recipe.triple;
        Self::build(recipe.construction, (t.a, t.b, t.c), recipe.measure, recipe.certificate.clone())
    }

    /// Certifies `construction` directly; the triple reports its degeneracy.
    pub fn from_construction(construction: Construction) -> Result<Self> {
        let cert = certify(&construction)?;
        let triple = (cert.sigma, cert.b1, cert.degeneracy);
        Ok(Self::build(construction, triple, Measure::Degeneracy, cert))
    }

    fn build(construction: Construction, triple: (i64, i64, i64), measure: Measure, cert: InvariantCertificate) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            recipe: construction.to_string(),
            construction,
            triple,
            measure,
            checks: cert.identities_checked.clone(),
            invariants: cert,
            citations: sources(&construction),
        }
    }

    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.invariants.all_checks_passed()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenDocument {
    pub schema_version: String,
    pub status: String,
    pub triple: (i64, i64, i64),
    pub note: String,
}

impl From<&OpenCase> for OpenDocument {
    fn from(case: &OpenCase) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            status: "open".to_owned(),
            triple: (case.triple.a, case.triple.b, case.triple.c),
            note: case.note.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyFailure {
    pub d: u32,
    pub k: u32,
    pub g: u32,
    pub e: u8,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub schema_version: String,
    pub grid_max: u32,
    pub cases: usize,
    pub passed: bool,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyDocument {
    pub fn new(grid_max: u32, report: &GridReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            grid_max,
            cases: report.cases,
            passed: report.passed(),
            failures: report
                .failures
                .iter()
                .map(|f| VerifyFailure {
                    d: f.point.d,
                    k: f.point.k,
                    g: f.point.g,
                    e: f.point.e as u8,
                    reason: f.reason.clone(),
                })
                .collect(),
        }
    }
}

fn sources(construction: &Construction) -> BTreeMap<String, String> {
    let entries: &[(&str, &str)] = match construction {
        Construction::BundleFamily { .. } | Construction::Bundle { .. } => &[
            ("sigma", "free circle action: sigma = 0"),
            ("chi", "free circle action: chi = 0"),
            ("b1", "Gysin sequence over the Wang sequence of the monodromy"),
            ("b_plus", "sigma = chi = 0 gives b+ = b- = b1 - 1"),
            ("b_minus", "sigma = chi = 0 gives b+ = b- = b1 - 1"),
            ("k_squared", "2 chi + 3 sigma"),
            ("k_dot_omega", "PD(K) = (2g - 2) T with T the fiber torus"),
            ("kappa", "signs of (K^2, K.omega)"),
            ("degeneracy", "b1 - rank of the skew pairing on H^1, matched against the closed form"),
            ("nullity", "closed form, checked against the annihilator bound"),
            ("minimal", "aspherical total space, so no embedded spheres"),
        ],
        Construction::FiberSum { .. } | Construction::DolgachevSum { .. } => &[
            ("sigma", "additive under gluing along a torus"),
            ("chi", "additive along a torus, matched against the Betti numbers"),
            ("b1", "2k - d: the loops of the gluing torus die in the sum"),
            ("b_plus", "K^2 = 0 solved for b+"),
            ("b_minus", "b+ - sigma"),
            ("k_squared", "K is a multiple of a square-zero torus"),
            ("k_dot_omega", "PD(K) = (n - 2 + 2g) T, or positive for a Dolgachev summand"),
            ("kappa", "signs of (K^2, K.omega)"),
            ("degeneracy", "equal to the degeneracy d of the bundle summand"),
            ("nullity", "bounded by the degeneracy; unknown when d > 0"),
            ("minimal", "fiber sum of minimal manifolds along square-zero tori"),
        ],
        Construction::Elliptic { .. } | Construction::Dolgachev { .. } => &[
            ("sigma", "-8n for an elliptic surface with Euler number 12n"),
            ("chi", "12n"),
            ("b1", "simply connected"),
            ("b_plus", "2n - 1"),
            ("b_minus", "10n - 1"),
            ("k_squared", "K is a multiple of the fiber"),
            ("k_dot_omega", "canonical bundle formula for elliptic surfaces"),
            ("kappa", "signs of (K^2, K.omega)"),
            ("degeneracy", "b1 = 0"),
            ("nullity", "b1 = 0"),
            ("minimal", "E(1) contains exceptional spheres; the others are minimal"),
        ],
    };
    entries.iter().map(|(k, v)| ((*k).to_owned(), (*v).to_owned())).collect()
}
