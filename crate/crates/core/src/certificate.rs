//! Invariant certificates and the Kodaira dimension classifier.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Kodaira {
    #[cfg_attr(feature = "serde", serde(rename = "-inf"))]
    NegativeInfinity,
    #[cfg_attr(feature = "serde", serde(rename = "0"))]
    Zero,
    #[cfg_attr(feature = "serde", serde(rename = "1"))]
    One,
    #[cfg_attr(feature = "serde", serde(rename = "2"))]
    Two,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kodaira::NegativeInfinity => "-inf",
            Kodaira::Zero => "0",
            Kodaira::One => "1",
            Kodaira::Two => "2",
        })
    }
}

/// Sign pattern of `(K^2, K·[omega])` that no minimal symplectic
/// 4-manifold exhibits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("(K^2, K.[omega]) = ({k_squared}, {k_dot_omega}) is outside the Kodaira table")]
pub struct OutsideTable {
    pub k_squared: i64,
    pub k_dot_omega: i64,
}

/// Kodaira dimension of a minimal symplectic 4-manifold from the signs of
/// `K^2` and `K·[omega]`.
pub fn kodaira_classify(k_squared: i64, k_dot_omega: i64) -> core::result::Result<Kodaira, OutsideTable> {
    match (k_squared.signum(), k_dot_omega.signum()) {
        (-1, _) | (_, -1) => Ok(Kodaira::NegativeInfinity),
        (0, 0) => Ok(Kodaira::Zero),
        (0, 1) => Ok(Kodaira::One),
        (1, 1) => Ok(Kodaira::Two),
        _ => Err(OutsideTable {
            k_squared,
            k_dot_omega,
        }),
    }
}

/// `K·[omega]`. Canonical classes here are multiples of a square-zero
/// torus `T`, so the pairing is an integer multiple of the symplectic area
/// of `T`, which is positive but otherwise unspecified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum KDotOmega {
    TorusAreaMultiple(i64),
    /// Known to be positive from the literature, no integer formula.
    PositiveByCitation,
}

impl KDotOmega {
    pub fn signum(self) -> i64 {
        match self {
            KDotOmega::TorusAreaMultiple(c) => c.signum(),
            KDotOmega::PositiveByCitation => 1,
        }
    }
}

impl fmt::Display for KDotOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KDotOmega::TorusAreaMultiple(c) => write!(f, "{c}"),
            KDotOmega::PositiveByCitation => f.write_str("+"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Nullity {
    Known(u32),
    Unknown,
}

impl fmt::Display for Nullity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nullity::Known(n) => write!(f, "{n}"),
            Nullity::Unknown => f.write_str("unknown"),
        }
    }
}

/// Why a certificate records the manifold as minimal (or not).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum MinimalityBasis {
    /// Circle bundle over an aspherical mapping torus, so `pi_2 = 0` and
    /// there are no embedded spheres of any kind.
    Aspherical,
    /// Fiber sum of minimal manifolds along square-zero tori.
    FiberSumOfMinimal,
    /// Standard facts about elliptic surfaces.
    EllipticSurface,
    NotMinimal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InvariantCertificate {
    pub sigma: i64,
    pub chi: i64,
    pub b1: i64,
    pub b_plus: i64,
    pub b_minus: i64,
    pub k_squared: i64,
    pub k_dot_omega: KDotOmega,
    pub kappa: Kodaira,
    pub degeneracy: i64,
    /// Degeneracy recomputed as `b_1 - rank Q_M`, when the pairing was built.
    pub degeneracy_oracle: Option<i64>,
    pub nullity: Nullity,
    pub minimal: bool,
    pub minimality: MinimalityBasis,
    pub identities_checked: Vec<IdentityCheck>,
}

impl InvariantCertificate {
    pub fn all_checks_passed(&self) -> bool {
        self.identities_checked.iter().all(|c| c.passed)
    }

    pub(crate) fn push_check(&mut self, name: impl ToString, passed: bool) {
        self.identities_checked.push(IdentityCheck {
            name: name.to_string(),
            passed,
        });
    }

    /// Records the identities every certificate must satisfy and fails on
    /// the first violation.
    pub(crate) fn seal(mut self) -> Result<Self> {
        let s = &self;
        let checks = [
            ("sigma = b+ - b-", s.sigma == s.b_plus - s.b_minus),
            ("chi = 2 - 2 b1 + b+ + b-", s.chi == 2 - 2 * s.b1 + s.b_plus + s.b_minus),
            ("2 chi + 3 sigma = K^2", 2 * s.chi + 3 * s.sigma == s.k_squared),
            (
                "kappa agrees with (K^2, K.omega)",
                kodaira_classify(s.k_squared, s.k_dot_omega.signum()) == Ok(s.kappa),
            ),
            (
                "nullity <= degeneracy <= b1",
                0 <= s.degeneracy
                    && s.degeneracy <= s.b1
                    && match s.nullity {
                        Nullity::Known(n) => i64::from(n) <= s.degeneracy,
                        Nullity::Unknown => true,
                    },
            ),
            ("(b1 - degeneracy) even", (s.b1 - s.degeneracy) % 2 == 0),
            (
                "degeneracy oracle = closed form",
                s.degeneracy_oracle.is_none_or(|o| o == s.degeneracy),
            ),
        ];
        for (name, ok) in checks {
            self.push_check(name, ok);
        }
        if let Some(bad) = self.identities_checked.iter().find(|c| !c.passed) {
            return Err(Error::Consistency(format!("identity failed: {}", bad.name)));
        }
        Ok(self)
    }
}
