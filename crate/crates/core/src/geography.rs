//! Geography of minimal symplectic 4-manifolds with Kodaira dimension one:
//! which `(signature, b_1, degeneracy)` triples occur, and an explicit
//! manifold for each.
//!
//! For signature zero the manifolds are bundle manifolds from three
//! families, with `b = 2l` or `b = 2l + 1`:
//!
//! | family  | manifold                   | `b_1`   | degeneracy |
//! |---------|----------------------------|---------|------------|
//! | `B0(i)` | `B(2i, l-1+i, g; 0)`       | `2l`    | `2i`       |
//! | `B1(i)` | `B(2i+1, l+i, g; 1)`       | `2l`    | `2i+2`     |
//! | `B1(i)` | `B(2i, l+i, g; 1)` (odd b) | `2l+1`  | `2i+1`     |
//! | `B2(i)` | `B(2i, l+i, g; 2)`         | `2l+1`  | `2i+1`     |
//!
//! Negative signatures come from fiber sums with `E(n)` or, at `-8`, with
//! a Dolgachev surface, using `d = c` and `k = (b + c) / 2`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bundle_manifold::{construct, BundleManifoldSpec};
use crate::certificate::{InvariantCertificate, Kodaira, Nullity};
use crate::circle_bundle::{b1_closed_form, nullity_closed_form, EulerTag};
use crate::error::{Error, Result};
use crate::fiber_sum::{elliptic_invariants, fiber_sum_invariants, EllipticSurface, FiberSumSpec};

/// Default Dolgachev multiplicities: the smallest coprime pair.
pub const DOLGACHEV_DEFAULT: (u32, u32) = (2, 3);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Triple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Triple {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn common_violation(t: Triple) -> Option<&'static str> {
    if t.a > 0 || t.a % 8 != 0 {
        return Some("signature must be a non-positive multiple of 8");
    }
    if t.c < 0 || t.c > t.b {
        return Some("need 0 <= c <= b");
    }
    if t.b < (2 + t.a / 4).max(0) {
        return Some("need b >= max(0, 2 + a/4)");
    }
    None
}

/// The first admissibility condition that fails, if any.
pub fn admissibility_violation(t: Triple) -> Option<&'static str> {
    common_violation(t).or(if (t.b - t.c) % 2 != 0 {
        Some("b - c must be even")
    } else {
        None
    })
}

/// `a = 8m` with `m <= 0`, `0 <= c <= b`, `b - c` even, `b >= max(0, 2 + a/4)`.
pub fn is_admissible(a: i64, b: i64, c: i64) -> bool {
    admissibility_violation(Triple::new(a, b, c)).is_none()
}

pub fn null_admissibility_violation(t: Triple) -> Option<&'static str> {
    common_violation(t).or(if t.c == t.b - 1 { Some("c must differ from b - 1") } else { None })
}

/// Like admissibility but with `c != b - 1` in place of the parity condition.
pub fn is_null_admissible(a: i64, b: i64, c: i64) -> bool {
    null_admissibility_violation(Triple::new(a, b, c)).is_none()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Family {
    B0,
    B1,
    B2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::B0 => "B0",
            Family::B1 => "B1",
            Family::B2 => "B2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BundleParams {
    pub d: u32,
    pub k: u32,
    pub g: u32,
    pub e: EulerTag,
}

impl fmt::Display for BundleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({},{},{};{})", self.d, self.k, self.g, self.e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Construction {
    BundleFamily { family: Family, index: u32, bundle: BundleParams },
    Bundle { bundle: BundleParams },
    FiberSum { n: u32, d: u32, k: u32, g: u32 },
    DolgachevSum { p: u32, q: u32, d: u32, k: u32, g: u32 },
    Elliptic { n: u32 },
    Dolgachev { p: u32, q: u32 },
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::BundleFamily { family, index, bundle } => write!(f, "{family}({index})={bundle}"),
            Construction::Bundle { bundle } => write!(f, "{bundle}"),
            Construction::FiberSum { n, d, k, g } => write!(f, "E({n},{d},{k},{g})"),
            Construction::DolgachevSum { p, q, d, k, g } => write!(f, "E(1)_{{{p},{q}}}#B({d},{k},{g};0)"),
            Construction::Elliptic { n } => write!(f, "E({n})"),
            Construction::Dolgachev { p, q } => write!(f, "E(1)_{{{p},{q}}}"),
        }
    }
}

/// What the third coordinate of a realized triple measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Measure {
    Degeneracy,
    Nullity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Recipe {
    pub construction: Construction,
    pub triple: Triple,
    pub measure: Measure,
    pub certificate: InvariantCertificate,
}

impl Recipe {
    /// The triple the certificate actually realizes under `measure`.
    pub fn certified_triple(&self) -> Option<Triple> {
        let c = &self.certificate;
        let third = match self.measure {
            Measure::Degeneracy => c.degeneracy,
            Measure::Nullity => match c.nullity {
                Nullity::Known(n) => i64::from(n),
                Nullity::Unknown => return None,
            },
        };
        Some(Triple::new(c.sigma, c.b1, third))
    }
}

/// Builds the certificate for a construction.
pub fn certify(construction: &Construction) -> Result<InvariantCertificate> {
    match *construction {
        Construction::BundleFamily { bundle, .. } | Construction::Bundle { bundle } => {
            let spec = BundleManifoldSpec::new(bundle.d, bundle.k, bundle.g, bundle.e)?;
            Ok(construct(&spec)?.certificate)
        }
        Construction::FiberSum { n, d, k, g } => {
            fiber_sum_invariants(&FiberSumSpec::new(EllipticSurface::E { n }, d, k, g)?)
        }
        Construction::DolgachevSum { p, q, d, k, g } => {
            fiber_sum_invariants(&FiberSumSpec::new(EllipticSurface::Dolgachev { p, q }, d, k, g)?)
        }
        Construction::Elliptic { n } => elliptic_invariants(EllipticSurface::E { n }),
        Construction::Dolgachev { p, q } => elliptic_invariants(EllipticSurface::Dolgachev { p, q }),
    }
}

fn pick_genus(k: u32, requested: Option<u32>) -> Result<u32> {
    let minimum = k.max(2);
    match requested {
        None => Ok(minimum),
        Some(g) if g >= minimum => Ok(g),
        Some(g) => Err(Error::Genus { requested: g, minimum }),
    }
}

fn to_u32(x: i64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::Overflow)
}

/// The construction chosen for an admissible triple, before certification.
pub fn select_construction(t: Triple, genus: Option<u32>) -> Result<Construction> {
    if let Some(reason) = admissibility_violation(t) {
        return Err(Error::Inadmissible {
            a: t.a,
            b: t.b,
            c: t.c,
            reason,
        });
    }
    let (b, c) = (to_u32(t.b)?, to_u32(t.c)?);
    if t.a == 0 {
        let l = b / 2;
        let (family, index, d, k, e) = match (b % 2 == 0, c == b) {
            (true, false) => (Family::B0, c / 2, c, l - 1 + c / 2, EulerTag::Zero),
            (true, true) => (Family::B1, l - 1, b - 1, b - 1, EulerTag::One),
            (false, true) => (Family::B1, l, 2 * l, 2 * l, EulerTag::One),
            (false, false) => {
                let i = (c - 1) / 2;
                (Family::B2, i, 2 * i, l + i, EulerTag::Two)
            }
        };
        let g = pick_genus(k, genus)?;
        return Ok(Construction::BundleFamily {
            family,
            index,
            bundle: BundleParams { d, k, g, e },
        });
    }
    let k = (b + c) / 2;
    let g = pick_genus(k, genus)?;
    if t.a == -8 {
        let (p, q) = DOLGACHEV_DEFAULT;
        Ok(Construction::DolgachevSum { p, q, d: c, k, g })
    } else {
        Ok(Construction::FiberSum {
            n: to_u32(-t.a / 8)?,
            d: c,
            k,
            g,
        })
    }
}

fn check_recipe(recipe: &Recipe) -> Result<()> {
    let cert = &recipe.certificate;
    let mut problems = Vec::new();
    if recipe.certified_triple() != Some(recipe.triple) {
        problems.push(format!("certificate realizes {:?}", recipe.certified_triple()));
    }
    if cert.kappa != Kodaira::One {
        problems.push(format!("kappa = {}", cert.kappa));
    }
    if !cert.minimal {
        problems.push(String::from("not minimal"));
    }
    if 2 * cert.chi + 3 * cert.sigma != 0 {
        problems.push(String::from("2 chi + 3 sigma != 0"));
    }
    if !cert.all_checks_passed() {
        problems.push(String::from("identity check failed"));
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Consistency(format!(
            "{} for target {}: {}",
            recipe.construction,
            recipe.triple,
            problems.join("; ")
        )))
    }
}

/// A minimal symplectic 4-manifold of Kodaira dimension one with
/// `(sigma, b_1, degeneracy) = (a, b, c)`. `genus` raises the fiber genus
/// above its default `max(k, 2)`.
pub fn realize(a: i64, b: i64, c: i64, genus: Option<u32>) -> Result<Recipe> {
    let triple = Triple::new(a, b, c);
    let construction = select_construction(triple, genus)?;
    let recipe = Recipe {
        construction,
        triple,
        measure: Measure::Degeneracy,
        certificate: certify(&construction)?,
    };
    check_recipe(&recipe)?;
    Ok(recipe)
}

/// A null admissible triple with no known realization.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OpenCase {
    pub triple: Triple,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "status", rename_all = "snake_case"))]
pub enum NullRealization {
    Realized(Recipe),
    Open(OpenCase),
}

const RING_TABLE_031: &str = "a manifold with sigma = 0, b1 = 3 and nullity 1 would need a basis a, b, c of H^1 \
with a∪b != 0 and every other product of distinct basis classes zero; no bundle manifold has this ring and \
its existence is unresolved";

/// Searches bundle manifolds (signature zero) and nullity-zero fiber sums
/// (negative signature) for a manifold whose nullity is `c`.
pub fn realize_null(a: i64, b: i64, c: i64, genus: Option<u32>) -> Result<NullRealization> {
    let triple = Triple::new(a, b, c);
    if let Some(reason) = null_admissibility_violation(triple) {
        return Err(Error::Inadmissible { a, b, c, reason });
    }
    let (bu, cu) = (to_u32(b)?, to_u32(c)?);
    let construction = if a == 0 {
        search_bundle_by_nullity(bu, cu, genus)?
    } else if c == 0 && b % 2 == 0 {
        let k = bu / 2;
        let g = pick_genus(k, genus)?;
        Some(if a == -8 {
            let (p, q) = DOLGACHEV_DEFAULT;
            Construction::DolgachevSum { p, q, d: 0, k, g }
        } else {
            Construction::FiberSum {
                n: to_u32(-a / 8)?,
                d: 0,
                k,
                g,
            }
        })
    } else {
        None
    };
    let Some(construction) = construction else {
        let note = if triple == Triple::new(0, 3, 1) {
            String::from(RING_TABLE_031)
        } else if a == 0 {
            String::from("no bundle manifold has this b1 and nullity")
        } else {
            String::from("nullity of fiber sums is only known when the degeneracy vanishes")
        };
        return Ok(NullRealization::Open(OpenCase { triple, note }));
    };
    let recipe = Recipe {
        construction,
        triple,
        measure: Measure::Nullity,
        certificate: certify(&construction)?,
    };
    check_recipe(&recipe)?;
    Ok(NullRealization::Realized(recipe))
}

/// First `(e, d)` in lexicographic order with `b_1(B(d,k,g;e)) = b` and
/// nullity `c`.
fn search_bundle_by_nullity(b: u32, c: u32, genus: Option<u32>) -> Result<Option<Construction>> {
    for e in EulerTag::ALL {
        let offset = if e.is_zero() { 2 } else { 1 };
        for d in 0..=b {
            // b = 2k - d + offset
            let twice_k = b + d;
            if twice_k < offset || (twice_k - offset) % 2 != 0 {
                continue;
            }
            let k = (twice_k - offset) / 2;
            if d > k || e.check(d, k).is_err() {
                continue;
            }
            debug_assert_eq!(b1_closed_form(d, k, e)?, b);
            if nullity_closed_form(d, k, e)? == c {
                let g = pick_genus(k, genus)?;
                return Ok(Some(Construction::Bundle {
                    bundle: BundleParams { d, k, g, e },
                }));
            }
        }
    }
    Ok(None)
}

/// Admissible triples with `sigma_min <= a <= 0` and `b <= b1_max`, ordered
/// by `a` descending, then `b`, then `c`.
pub fn admissible_triples(sigma_min: i64, b1_max: i64) -> impl Iterator<Item = Triple> {
    let top = 0i64;
    let steps = if sigma_min > 0 { -1 } else { -sigma_min / 8 };
    (0..=steps).flat_map(move |m| {
        let a = top - 8 * m;
        (0..=b1_max.max(-1)).flat_map(move |b| (0..=b).map(move |c| Triple::new(a, b, c)))
    })
    .filter(|t| is_admissible(t.a, t.b, t.c))
}

/// Realizes every admissible triple in the region.
pub fn enumerate(sigma_min: i64, b1_max: i64) -> impl Iterator<Item = Result<Recipe>> {
    admissible_triples(sigma_min, b1_max).map(|t| realize(t.a, t.b, t.c, None))
}

/// A simply connected minimal manifold with the given signature: `E(n)`
/// for `sigma = -8n <= -16` and the Dolgachev surface for `-8`.
pub fn simply_connected_geography(sigma: i64) -> Result<Recipe> {
    if sigma >= 0 || sigma % 8 != 0 {
        return Err(Error::Signature(sigma));
    }
    let construction = if sigma == -8 {
        let (p, q) = DOLGACHEV_DEFAULT;
        Construction::Dolgachev { p, q }
    } else {
        Construction::Elliptic { n: to_u32(-sigma / 8)? }
    };
    let certificate = certify(&construction)?;
    let recipe = Recipe {
        construction,
        triple: Triple::new(sigma, 0, 0),
        measure: Measure::Degeneracy,
        certificate,
    };
    if recipe.certified_triple() != Some(recipe.triple) || !recipe.certificate.minimal {
        return Err(Error::Consistency(format!("{construction} does not realize signature {sigma}")));
    }
    Ok(recipe)
}
