//! The bundle manifolds `B(d,k,g;e)`: circle bundles over the mapping
//! torus of [`bundle_monodromy`](crate::surface::bundle_monodromy).

use core::fmt;

use crate::certificate::{kodaira_classify, InvariantCertificate, KDotOmega, MinimalityBasis, Nullity};
use crate::circle_bundle::{
    bundle_cohomology, validate_euler_class, BundleCohomology, EulerClass, EulerClassSpec, EulerTag, PairingRules,
};
use crate::error::{Error, Result};
use crate::mapping_torus::{wang_cohomology, MappingTorus, WangData};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BundleManifoldSpec {
    pub d: u32,
    pub k: u32,
    pub g: u32,
    pub euler: EulerClassSpec,
}

impl BundleManifoldSpec {
    /// Validates `0 <= d <= k <= g`, `g >= 1` and the tag constraints.
    pub fn new(d: u32, k: u32, g: u32, tag: EulerTag) -> Result<Self> {
        Self::with_euler(d, k, g, EulerClassSpec::tagged(tag))
    }

    pub fn with_euler(d: u32, k: u32, g: u32, euler: EulerClassSpec) -> Result<Self> {
        if g == 0 || d > k || k > g {
            return Err(Error::ParameterOrder { d, k, g });
        }
        euler.tag.check(d, k)?;
        Ok(Self { d, k, g, euler })
    }

    pub fn tag(&self) -> EulerTag {
        self.euler.tag
    }
}

impl fmt::Display for BundleManifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({},{},{};{})", self.d, self.k, self.g, self.euler.tag)
    }
}

/// A constructed bundle manifold with its intermediate data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleManifold {
    pub spec: BundleManifoldSpec,
    pub mapping_torus: MappingTorus,
    pub wang: WangData,
    pub euler: EulerClass,
    pub cohomology: BundleCohomology,
    pub certificate: InvariantCertificate,
}

/// Coefficient of the fiber torus `T` in `PD(K)` for `B(d,k,g;0)`: `2g - 2`.
pub fn canonical_class(g: u32) -> Result<i64> {
    if g == 0 {
        return Err(Error::ZeroGenus);
    }
    Ok(2 * i64::from(g) - 2)
}

pub fn construct(spec: &BundleManifoldSpec) -> Result<BundleManifold> {
    construct_with(spec, PairingRules::default())
}

/// Full pipeline: monodromy word, Wang sequence, Euler class validation,
/// Gysin `b_1`, pairing matrix with its rank, closed forms, certificate.
pub fn construct_with(spec: &BundleManifoldSpec, rules: PairingRules) -> Result<BundleManifold> {
    let BundleManifoldSpec { d, k, g, .. } = *spec;
    let spec = BundleManifoldSpec::with_euler(d, k, g, spec.euler.clone())?;
    let mapping_torus = MappingTorus::for_bundle(d, k, g)?;
    let wang = wang_cohomology(&mapping_torus)?;
    let euler = validate_euler_class(&wang, &spec.euler, d, k)?;
    let cohomology = bundle_cohomology(&wang, &euler, d, k, rules)?;

    // A free circle action forces chi = sigma = 0, hence b+ = b- = b1 - 1.
    let b1 = cohomology.b1 as i64;
    let k_coefficient = canonical_class(g)?;
    let k_dot_omega = KDotOmega::TorusAreaMultiple(k_coefficient);
    let kappa = kodaira_classify(0, k_coefficient)
        .map_err(|e| Error::Consistency(alloc::format!("{e}")))?;
    let mut certificate = InvariantCertificate {
        sigma: 0,
        chi: 0,
        b1,
        b_plus: b1 - 1,
        b_minus: b1 - 1,
        k_squared: 0,
        k_dot_omega,
        kappa,
        degeneracy: i64::from(cohomology.degeneracy),
        degeneracy_oracle: Some(cohomology.degeneracy_oracle as i64),
        nullity: Nullity::Known(cohomology.nullity.nullity),
        minimal: true,
        minimality: MinimalityBasis::Aspherical,
        identities_checked: alloc::vec::Vec::new(),
    };
    certificate.push_check("Euler class restricts to zero on the fiber", true);
    certificate.push_check("b1 (Gysin) = closed form", true);
    certificate.push_check("rank Q_M even", cohomology.pairing_rank % 2 == 0);
    certificate.push_check("rank Q_M = b1 - degeneracy", cohomology.pairing_rank as i64 == b1 - certificate.degeneracy);
    certificate.push_check("nullity necessary conditions", cohomology.nullity.passed);
    let certificate = certificate.seal()?;

    Ok(BundleManifold {
        spec,
        mapping_torus,
        wang,
        euler,
        cohomology,
        certificate,
    })
}
