//! Circle bundles `M → Y` over a mapping torus whose Euler class vanishes
//! on the fiber.
//!
//! The symplectic form is `omega = pi^* Omega + pi^* theta ∧ eta`, with
//! `eta` a connection form. Integrating over the circle fiber turns the
//! Lefschetz pairing `Q(a, b) = ∫_M a ∪ b ∪ omega` on pulled-back classes
//! into `∫_Y a ∪ b ∪ theta = (a|Σ)·(b|Σ)`, which gives the evaluation rules
//! used by [`lefschetz_pairing`]:
//!
//! 1. lifted invariant classes pair through the cup form on `H^1(Σ)`;
//! 2. `theta` pairs to zero with every lifted class;
//! 3. for the trivial bundle the extra class `eta` pairs with `theta` to 1
//!    and with every lift to 0;
//! 4. for a nontrivial Euler class there is no `eta`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, EulerClassError, Result};
use crate::linalg::{content, IntMatrix};
use crate::mapping_torus::{DualGenerator, WangData};
use crate::surface::{intersection_form, Generator};

/// Which family of Euler classes a circle bundle uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "u8", into = "u8"))]
pub enum EulerTag {
    /// The trivial bundle `Y × S^1`.
    Zero,
    /// `[alpha_i ∧ theta]` for a twisted handle `i <= d`.
    One,
    /// A primitive class supported on the untouched handles `d < i <= k`.
    Two,
}

impl EulerTag {
    pub const ALL: [EulerTag; 3] = [EulerTag::Zero, EulerTag::One, EulerTag::Two];

    pub fn is_zero(self) -> bool {
        self == EulerTag::Zero
    }

    /// Whether the tag is allowed for the parameters `(d, k)`.
    pub fn check(self, d: u32, k: u32) -> core::result::Result<(), EulerClassError> {
        match self {
            EulerTag::One if d == 0 => Err(EulerClassError::TagOneWithoutTwistedHandles),
            EulerTag::Two if d == k => Err(EulerClassError::TagTwoWithoutFixedHandles),
            _ => Ok(()),
        }
    }

    /// Tags that are valid for `(d, k)`, in increasing order.
    pub fn valid_for(d: u32, k: u32) -> impl Iterator<Item = EulerTag> {
        Self::ALL.into_iter().filter(move |t| t.check(d, k).is_ok())
    }
}

impl TryFrom<u8> for EulerTag {
    type Error = EulerClassError;
    fn try_from(v: u8) -> core::result::Result<Self, Self::Error> {
        match v {
            0 => Ok(EulerTag::Zero),
            1 => Ok(EulerTag::One),
            2 => Ok(EulerTag::Two),
            _ => Err(EulerClassError::UnknownTag),
        }
    }
}

impl From<EulerTag> for u8 {
    fn from(t: EulerTag) -> u8 {
        match t {
            EulerTag::Zero => 0,
            EulerTag::One => 1,
            EulerTag::Two => 2,
        }
    }
}

impl fmt::Display for EulerTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(*self))
    }
}

/// An Euler class request: a tag and, optionally, explicit coordinates.
///
/// `omega` is the coefficient on the fiber volume class and
/// `coefficients` are over the `mu` image basis of the mapping torus.
/// Missing coordinates are filled with the first admissible basis class.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EulerClassSpec {
    pub tag: EulerTag,
    pub omega: i64,
    pub coefficients: Option<Vec<i64>>,
}

impl EulerClassSpec {
    pub fn tagged(tag: EulerTag) -> Self {
        Self {
            tag,
            omega: 0,
            coefficients: None,
        }
    }

    pub fn with_coefficients(tag: EulerTag, coefficients: Vec<i64>) -> Self {
        Self {
            tag,
            omega: 0,
            coefficients: Some(coefficients),
        }
    }
}

/// An Euler class that passed [`validate_euler_class`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EulerClass {
    pub tag: EulerTag,
    /// Coordinates over the `mu` image basis.
    pub coefficients: Vec<i64>,
}

impl EulerClass {
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&x| x == 0)
    }
}

fn handle_of(label: Option<DualGenerator>) -> Option<u32> {
    label.map(|DualGenerator(g)| g.handle())
}

/// Checks an Euler class against its tag for the bundle parameters `(d, k)`.
pub fn validate_euler_class(wang: &WangData, spec: &EulerClassSpec, d: u32, k: u32) -> Result<EulerClass> {
    let width = wang.mu_image_basis.len();
    let mut full = vec![spec.omega];
    match &spec.coefficients {
        Some(c) if c.len() != width => {
            return Err(Error::LengthMismatch {
                expected: width,
                found: c.len(),
            })
        }
        Some(c) => full.extend_from_slice(c),
        None => full.extend(core::iter::repeat_n(0, width)),
    }
    if wang.restriction_to_fiber(&full)? != 0 {
        return Err(EulerClassError::NonzeroFiberRestriction.into());
    }
    spec.tag.check(d, k)?;

    let coefficients = match (&spec.coefficients, spec.tag) {
        (Some(c), _) => c.clone(),
        (None, EulerTag::Zero) => vec![0; width],
        (None, EulerTag::One) => unit(width, wang.mu_index(DualGenerator(Generator::A(1))))?,
        (None, EulerTag::Two) => unit(width, wang.mu_index(DualGenerator(Generator::A(d + 1))))?,
    };

    match spec.tag {
        EulerTag::Zero => {
            if coefficients.iter().any(|&x| x != 0) {
                return Err(EulerClassError::NonzeroForTagZero.into());
            }
        }
        EulerTag::One => {
            let mut nz = coefficients.iter().enumerate().filter(|(_, &x)| x != 0);
            let ok = match (nz.next(), nz.next()) {
                (Some((j, 1)), None) => matches!(
                    wang.mu_image_basis[j].label,
                    Some(DualGenerator(Generator::A(i))) if i >= 1 && i <= d
                ),
                _ => false,
            };
            if !ok {
                return Err(EulerClassError::NotTwistedBasisVector.into());
            }
        }
        EulerTag::Two => {
            let outside = coefficients.iter().zip(&wang.mu_image_basis).any(|(&x, class)| {
                x != 0 && !handle_of(class.label).is_some_and(|i| i > d && i <= k)
            });
            if outside {
                return Err(EulerClassError::OutsideFixedBlock.into());
            }
            if content(&coefficients) != 1 {
                return Err(EulerClassError::NotPrimitive.into());
            }
        }
    }
    Ok(EulerClass {
        tag: spec.tag,
        coefficients,
    })
}

fn unit(width: usize, index: Option<usize>) -> Result<Vec<i64>> {
    let j = index.ok_or(Error::Consistency("expected basis class missing from mu image".into()))?;
    let mut v = vec![0; width];
    v[j] = 1;
    Ok(v)
}

/// `b_1(M)` from the Gysin sequence `0 → H^1(Y) → H^1(M) → H^0(Y) --∪e--> H^2(Y)`.
///
/// Cup with a nonzero non-torsion class is injective on `H^0`, so the
/// circle contributes a class exactly when the Euler class vanishes.
pub fn bundle_b1(wang: &WangData, euler: &EulerClass) -> usize {
    if euler.is_zero() {
        wang.b1 + 1
    } else {
        wang.b1
    }
}

/// `b_1(B(d,k,g;e))`: `2k - d + 2` for the trivial bundle, `2k - d + 1` otherwise.
pub fn b1_closed_form(d: u32, k: u32, tag: EulerTag) -> Result<u32> {
    check_params(d, k, tag)?;
    Ok(if tag.is_zero() { 2 * k - d + 2 } else { 2 * k - d + 1 })
}

fn check_params(d: u32, k: u32, tag: EulerTag) -> Result<()> {
    if d > k {
        return Err(Error::ParameterOrder { d, k, g: k });
    }
    tag.check(d, k)?;
    Ok(())
}

/// A basis class of `H^1(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BundleGenerator {
    Theta,
    Lift(Vec<i64>),
    /// The circle class; present only for the trivial bundle.
    Eta,
}

/// Selects the evaluation rules. `SignFlipTripwire` corrupts the
/// `eta`/`theta` entry so that verification must fail; it exists only to
/// exercise the checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairingRules {
    #[default]
    FiberIntegration,
    SignFlipTripwire,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairingMatrix {
    pub basis: Vec<BundleGenerator>,
    pub matrix: IntMatrix,
}

/// Assembles `Q_M` on the basis `theta, lifts..., [eta]`.
pub fn lefschetz_pairing(wang: &WangData, euler: &EulerClass, rules: PairingRules) -> Result<PairingMatrix> {
    let j = intersection_form(wang.genus)?;
    let lifts = &wang.invariant_basis;
    let restricted = j.restrict_form(lifts)?;
    let with_eta = euler.is_zero();
    let n = 1 + lifts.len() + usize::from(with_eta);
    let mut q = IntMatrix::zeros(n, n);
    for r in 0..lifts.len() {
        for s in 0..lifts.len() {
            q[(1 + r, 1 + s)] = restricted[(r, s)];
        }
    }
    let mut basis = vec![BundleGenerator::Theta];
    basis.extend(lifts.iter().cloned().map(BundleGenerator::Lift));
    if with_eta {
        let eta = n - 1;
        q[(0, eta)] = 1;
        q[(eta, 0)] = match rules {
            PairingRules::FiberIntegration => -1,
            PairingRules::SignFlipTripwire => 1,
        };
        basis.push(BundleGenerator::Eta);
    }
    Ok(PairingMatrix { basis, matrix: q })
}

/// `b_1 - rank(Q)`: the dimension of the kernel of `∪[omega]: H^1 → H^3`.
pub fn degeneracy_oracle(q: &IntMatrix, b1: usize) -> Result<usize> {
    let rank = q.rank()?;
    b1.checked_sub(rank)
        .ok_or_else(|| Error::Consistency(format!("rank {rank} exceeds b1 {b1}")))
}

/// `d` for the trivial bundle, `d + 1` otherwise.
pub fn degeneracy_closed_form(d: u32, k: u32, tag: EulerTag) -> Result<u32> {
    check_params(d, k, tag)?;
    Ok(if tag.is_zero() { d } else { d + 1 })
}

/// Dimension of `{x in H^1 : x ∪ y = 0 for all y}`: `0` for the trivial
/// bundle, `d` when `d != k`, `d + 1` when `d == k`.
pub fn nullity_closed_form(d: u32, k: u32, tag: EulerTag) -> Result<u32> {
    check_params(d, k, tag)?;
    Ok(match tag {
        EulerTag::Zero => 0,
        _ if d != k => d,
        _ => d + 1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NullityCheck {
    pub nullity: u32,
    pub degeneracy: u32,
    /// For the trivial bundle: the dimension of the classes annihilated by
    /// the `H^1(Y) ⊗ H^1(S^1)` Künneth component of the cup product, which
    /// bounds the nullity from above.
    pub kunneth_bound: Option<usize>,
    pub passed: bool,
}

/// Necessary conditions on the nullity: it never exceeds the degeneracy,
/// and on a product `Y × S^1` it vanishes.
pub fn nullity_necessary_check(wang: &WangData, d: u32, k: u32, tag: EulerTag) -> Result<NullityCheck> {
    let nullity = nullity_closed_form(d, k, tag)?;
    let degeneracy = degeneracy_closed_form(d, k, tag)?;
    let kunneth_bound = if tag.is_zero() {
        Some(kunneth_annihilator_dim(wang.b1)?)
    } else {
        None
    };
    let passed = nullity <= degeneracy
        && kunneth_bound.is_none_or(|bound| nullity as usize <= bound && nullity == 0);
    Ok(NullityCheck {
        nullity,
        degeneracy,
        kunneth_bound,
        passed,
    })
}

/// On `H^1(Y × S^1) = H^1(Y) ⊕ <eta>`, the component of `x ∪ y` in
/// `H^1(Y) ⊗ <eta>` is `x_Y · y_eta - y_Y · x_eta`. Returns the dimension
/// of the `x` for which this vanishes against every `y`.
fn kunneth_annihilator_dim(b1_y: usize) -> Result<usize> {
    let n = b1_y + 1;
    let eta = b1_y;
    // Row block for each basis y_j; within a block, one row per H^1(Y) slot.
    let mut rows = Vec::with_capacity(n * b1_y);
    for j in 0..n {
        for slot in 0..b1_y {
            let mut row = vec![0i64; n];
            if j == eta {
                // x ∪ eta contributes x_Y in slot.
                row[slot] = 1;
            } else if j == slot {
                // x ∪ y_j contributes -x_eta in slot j.
                row[eta] = -1;
            }
            rows.push(row);
        }
    }
    let m = IntMatrix::from_rows(&rows)?;
    Ok(n - m.rank()?)
}

/// Everything computed about `H^1` of a circle bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BundleCohomology {
    pub b1: usize,
    pub pairing: PairingMatrix,
    pub pairing_rank: usize,
    pub degeneracy_oracle: usize,
    pub degeneracy: u32,
    pub nullity: NullityCheck,
}

/// Gysin `b_1`, the Lefschetz pairing and its rank, cross-checked
/// against the closed forms. Any disagreement is a [`Error::Consistency`].
pub fn bundle_cohomology(
    wang: &WangData,
    euler: &EulerClass,
    d: u32,
    k: u32,
    rules: PairingRules,
) -> Result<BundleCohomology> {
    let b1 = bundle_b1(wang, euler);
    let expected_b1 = b1_closed_form(d, k, euler.tag)? as usize;
    if b1 != expected_b1 {
        return Err(Error::Consistency(format!(
            "Gysin b1 = {b1} but closed form gives {expected_b1} for (d,k,e)=({d},{k},{})",
            euler.tag
        )));
    }
    let pairing = lefschetz_pairing(wang, euler, rules)?;
    if !pairing.matrix.is_skew_symmetric() {
        return Err(Error::Consistency("pairing matrix is not skew-symmetric".into()));
    }
    let pairing_rank = pairing.matrix.rank()?;
    if pairing_rank % 2 != 0 {
        return Err(Error::Consistency(format!("pairing rank {pairing_rank} is odd")));
    }
    let degeneracy_oracle = degeneracy_oracle(&pairing.matrix, b1)?;
    let degeneracy = degeneracy_closed_form(d, k, euler.tag)?;
    if degeneracy_oracle != degeneracy as usize {
        return Err(Error::Consistency(format!(
            "degeneracy oracle {degeneracy_oracle} != closed form {degeneracy} for (d,k,e)=({d},{k},{})",
            euler.tag
        )));
    }
    let nullity = nullity_necessary_check(wang, d, k, euler.tag)?;
    if !nullity.passed || nullity.degeneracy as usize > b1 {
        return Err(Error::Consistency(format!("nullity bounds violated: {nullity:?}")));
    }
    Ok(BundleCohomology {
        b1,
        pairing,
        pairing_rank,
        degeneracy_oracle,
        degeneracy,
        nullity,
    })
}
