//! Elliptic surfaces and their fiber sums with trivial-bundle manifolds,
//! `E(n,d,k,g) = E(n) #_{T'=T} B(d,k,g;0)`, plus the variant that uses a
//! Dolgachev surface `E(1)_{p,q}` to reach signature `-8`.

use core::fmt;

use crate::bundle_manifold::{canonical_class, construct, BundleManifoldSpec};
use crate::certificate::{kodaira_classify, InvariantCertificate, KDotOmega, MinimalityBasis, Nullity};
use crate::circle_bundle::{degeneracy_closed_form, EulerTag};
use crate::error::{Error, Result};
use crate::linalg::gcd;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EllipticSurface {
    /// `E(n)`: simply connected, no multiple fibers.
    E { n: u32 },
    /// `E(1)_{p,q}`: two multiple fibers of coprime multiplicities.
    Dolgachev { p: u32, q: u32 },
}

impl EllipticSurface {
    pub fn validate(self) -> Result<Self> {
        match self {
            EllipticSurface::E { n: 0 } => Err(Error::EllipticSurface("n must be at least 1")),
            EllipticSurface::Dolgachev { p, q } if p < 2 || q < 2 => {
                Err(Error::EllipticSurface("multiplicities must be at least 2"))
            }
            EllipticSurface::Dolgachev { p, q } if gcd(i64::from(p), i64::from(q)) != 1 => {
                Err(Error::EllipticSurface("multiplicities must be coprime"))
            }
            s => Ok(s),
        }
    }

    /// The `n` with `sigma = -8n` and `chi = 12n`.
    pub fn euler_number_multiple(self) -> u32 {
        match self {
            EllipticSurface::E { n } => n,
            EllipticSurface::Dolgachev { .. } => 1,
        }
    }
}

impl fmt::Display for EllipticSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EllipticSurface::E { n } => write!(f, "E({n})"),
            EllipticSurface::Dolgachev { p, q } => write!(f, "E(1)_{{{p},{q}}}"),
        }
    }
}

/// Invariants of an elliptic surface. `PD(K_{E(n)}) = (n - 2) F`; the
/// Dolgachev surfaces are minimal with Kodaira dimension one.
pub fn elliptic_invariants(surface: EllipticSurface) -> Result<InvariantCertificate> {
    let surface = surface.validate()?;
    let n = i64::from(surface.euler_number_multiple());
    let (k_dot_omega, minimal, minimality) = match surface {
        EllipticSurface::E { n: 1 } => (KDotOmega::TorusAreaMultiple(-1), false, MinimalityBasis::NotMinimal),
        EllipticSurface::E { n } => (
            KDotOmega::TorusAreaMultiple(i64::from(n) - 2),
            true,
            MinimalityBasis::EllipticSurface,
        ),
        EllipticSurface::Dolgachev { .. } => (KDotOmega::PositiveByCitation, true, MinimalityBasis::EllipticSurface),
    };
    let kappa = kodaira_classify(0, k_dot_omega.signum()).map_err(|e| Error::Consistency(alloc::format!("{e}")))?;
    InvariantCertificate {
        sigma: -8 * n,
        chi: 12 * n,
        b1: 0,
        b_plus: 2 * n - 1,
        b_minus: 10 * n - 1,
        k_squared: 0,
        k_dot_omega,
        kappa,
        degeneracy: 0,
        degeneracy_oracle: None,
        nullity: Nullity::Known(0),
        minimal,
        minimality,
        identities_checked: alloc::vec::Vec::new(),
    }
    .seal()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FiberSumSpec {
    pub base: EllipticSurface,
    pub d: u32,
    pub k: u32,
    pub g: u32,
}

impl FiberSumSpec {
    pub fn new(base: EllipticSurface, d: u32, k: u32, g: u32) -> Result<Self> {
        let base = base.validate()?;
        if let EllipticSurface::E { n: 1 } = base {
            return Err(Error::FiberSum("E(1) is not minimal; use a Dolgachev surface for signature -8"));
        }
        if d > k || k > g {
            return Err(Error::ParameterOrder { d, k, g });
        }
        if g < 2 {
            return Err(Error::FiberSum("the bundle summand needs genus at least 2"));
        }
        Ok(Self { base, d, k, g })
    }

    pub fn summand(&self) -> Result<BundleManifoldSpec> {
        BundleManifoldSpec::new(self.d, self.k, self.g, EulerTag::Zero)
    }
}

impl fmt::Display for FiberSumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            EllipticSurface::E { n } => write!(f, "E({n},{},{},{})", self.d, self.k, self.g),
            base => write!(f, "{base}#B({},{},{};0)", self.d, self.k, self.g),
        }
    }
}

/// The symplectic torus `T = t × s` along which `B(d,k,g;0) = Y × S^1` is
/// summed: `t` a section of `Y → S^1`, `s` the circle factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TorusWitness {
    pub self_intersection: i64,
    pub symplectic: bool,
    /// Coefficient of `T` in the canonical class of the summand.
    pub canonical_coefficient: i64,
}

pub fn torus_witness(summand: &BundleManifoldSpec) -> Result<TorusWitness> {
    if summand.tag() != EulerTag::Zero {
        return Err(Error::FiberSum("only trivial-bundle manifolds carry the product torus"));
    }
    Ok(TorusWitness {
        self_intersection: 0,
        symplectic: true,
        canonical_coefficient: canonical_class(summand.g)?,
    })
}

/// Invariants of the fiber sum.
///
/// The loops `t` and `s` die in the sum, so `b_1 = 2k - d`; signature is
/// additive (Novikov) and the Euler characteristic is additive across a
/// torus. Canonical classes add with the gluing correction `2T`, giving
/// `PD(K) = (n - 2 + 2g) T`.
pub fn fiber_sum_invariants(spec: &FiberSumSpec) -> Result<InvariantCertificate> {
    let spec = FiberSumSpec::new(spec.base, spec.d, spec.k, spec.g)?;
    let base = elliptic_invariants(spec.base)?;
    let summand_spec = spec.summand()?;
    let summand = construct(&summand_spec)?.certificate;
    let witness = torus_witness(&summand_spec)?;

    let n = i64::from(spec.base.euler_number_multiple());
    let sigma = base.sigma + summand.sigma;
    let b1 = summand.b1 - 2;
    let chi_additive = base.chi + summand.chi;
    // K^2 = 0 turns 2 chi + 3 sigma = 4(1 - b1 + b+) + sigma into a formula for b+.
    let b_plus = b1 - 1 - sigma / 4;
    let b_minus = b_plus - sigma;
    let chi_from_betti = 2 - 2 * b1 + b_plus + b_minus;

    let k_dot_omega = match spec.base {
        EllipticSurface::E { n } => {
            KDotOmega::TorusAreaMultiple(i64::from(n) - 2 + witness.canonical_coefficient + 2)
        }
        EllipticSurface::Dolgachev { .. } => KDotOmega::PositiveByCitation,
    };
    let kappa = kodaira_classify(0, k_dot_omega.signum()).map_err(|e| Error::Consistency(alloc::format!("{e}")))?;
    let degeneracy = i64::from(spec.d);
    let summand_degeneracy = i64::from(degeneracy_closed_form(spec.d, spec.k, EulerTag::Zero)?);

    let mut cert = InvariantCertificate {
        sigma,
        chi: chi_additive,
        b1,
        b_plus,
        b_minus,
        k_squared: 0,
        k_dot_omega,
        kappa,
        degeneracy,
        degeneracy_oracle: None,
        // Nullity never exceeds degeneracy, which settles the d = 0 case.
        nullity: if degeneracy == 0 { Nullity::Known(0) } else { Nullity::Unknown },
        minimal: base.minimal && summand.minimal,
        minimality: MinimalityBasis::FiberSumOfMinimal,
        identities_checked: alloc::vec::Vec::new(),
    };
    cert.push_check("sigma additive (Novikov)", sigma == -8 * n);
    cert.push_check("chi additive along torus = chi from Betti numbers", chi_additive == chi_from_betti);
    cert.push_check("b1 = 2k - d", b1 == 2 * i64::from(spec.k) - i64::from(spec.d));
    cert.push_check("gluing torus has T.T = 0", witness.self_intersection == 0);
    cert.push_check("degeneracy equals the summand's", degeneracy == summand_degeneracy);
    cert.push_check("K.omega > 0", k_dot_omega.signum() > 0);
    cert.seal()
}
