//! The Borel-Weil-Bott dichotomy for parabolic weights.
//!
//! For a weight `lambda`, either `lambda + rho` is singular (orthogonal to
//! some coroot) and all cohomology of the induced bundle vanishes, or it is
//! regular and cohomology is nonzero in exactly one degree: the length of the
//! unique Weyl element moving `lambda + rho` to the dominant chamber, which
//! equals the number of positive roots pairing strictly negatively.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::ratvec::RatVec;
use crate::rootsys::{RootSystem, RootSystemError};
use crate::Rat;

#[derive(Debug, Error)]
pub enum BwbError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("weight is singular; the concentration degree is undefined")]
    SingularInput,
}

/// Outcome of Borel-Weil-Bott for one weight.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum CohomologyProfile {
    /// `lambda + rho` pairs to zero with the witness coroot's root; all
    /// cohomology vanishes.
    Singular { witness: RatVec },
    /// Cohomology concentrates in this degree, the count of positive roots
    /// with negative pairing.
    NonzeroInDegree { degree: usize },
}

impl CohomologyProfile {
    pub fn is_singular(&self) -> bool {
        matches!(self, CohomologyProfile::Singular { .. })
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            CohomologyProfile::Singular { .. } => None,
            CohomologyProfile::NonzeroInDegree { degree } => Some(*degree),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CohomologyProfile::Singular { witness } => format!("singular (witness {witness})"),
            CohomologyProfile::NonzeroInDegree { degree } => format!("nonzero in degree {degree}"),
        }
    }
}

/// Tests whether `Lambda` (already shifted by rho) is singular, returning the
/// first positive root whose coroot pairs to zero. Checking positive coroots
/// suffices since every root is a positive root up to sign.
pub fn is_singular(rs: &RootSystem, lambda: &RatVec) -> Result<Option<RatVec>, BwbError> {
    check_dim(rs, lambda)?;
    for (beta, cov) in rs.positive_roots().iter().zip(rs.positive_coroots()) {
        if lambda.dot(cov).is_zero() {
            return Ok(Some(beta.clone()));
        }
    }
    Ok(None)
}

/// Length of the unique Weyl element sending regular `Lambda` to the dominant
/// chamber: the number of positive roots with strictly negative pairing.
/// Zero exactly for dominant `Lambda`, `|Phi+|` exactly for antidominant.
pub fn weyl_length_to_dominant(rs: &RootSystem, lambda: &RatVec) -> Result<usize, BwbError> {
    check_dim(rs, lambda)?;
    let mut count = 0;
    for cov in rs.positive_coroots() {
        let p = lambda.dot(cov);
        if p.is_zero() {
            return Err(BwbError::SingularInput);
        }
        if p < Rat::zero() {
            count += 1;
        }
    }
    Ok(count)
}

/// Full dichotomy for the weight `lambda` (unshifted): singular if
/// `lambda + rho` is singular, otherwise concentration in the degree given by
/// the negative-pairing count of `lambda + rho`.
pub fn cohomology_profile(rs: &RootSystem, lambda: &RatVec) -> Result<CohomologyProfile, BwbError> {
    check_dim(rs, lambda)?;
    let shifted = lambda + rs.rho();
    if let Some(witness) = is_singular(rs, &shifted)? {
        return Ok(CohomologyProfile::Singular { witness });
    }
    let degree = weyl_length_to_dominant(rs, &shifted)?;
    Ok(CohomologyProfile::NonzeroInDegree { degree })
}

fn check_dim(rs: &RootSystem, v: &RatVec) -> Result<(), BwbError> {
    if v.dim() != rs.ambient_dim() {
        return Err(BwbError::RootSystem(RootSystemError::DimensionMismatch {
            expected: rs.ambient_dim(),
            got: v.dim(),
        }));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratvec::rat;
    use crate::rootsys::{Family, SimpleType};

    fn build(f: Family, r: usize) -> RootSystem {
        RootSystem::build(SimpleType::new(f, r).unwrap()).unwrap()
    }

    #[test]
    fn rho_is_regular_and_dominant() {
        let a2 = build(Family::A, 2);
        assert_eq!(is_singular(&a2, a2.rho()).unwrap(), None);
        assert_eq!(weyl_length_to_dominant(&a2, a2.rho()).unwrap(), 0);
    }

    #[test]
    fn repeated_coordinate_is_singular_with_witness() {
        let a2 = build(Family::A, 2);
        let lam = RatVec::from_ints(&[1, 1, 0]);
        assert_eq!(
            is_singular(&a2, &lam).unwrap(),
            Some(RatVec::from_ints(&[1, -1, 0]))
        );
    }

    #[test]
    fn c2_singular_against_the_long_coroot() {
        let c2 = build(Family::C, 2);
        let lam = RatVec::from_ints(&[1, -1]);
        // pairs to zero with (e1 + e2)^vee among the 4 positive coroots
        assert_eq!(
            is_singular(&c2, &lam).unwrap(),
            Some(RatVec::from_ints(&[1, 1]))
        );
    }

    #[test]
    fn lengths_on_a2() {
        let a2 = build(Family::A, 2);
        assert_eq!(
            weyl_length_to_dominant(&a2, &RatVec::from_ints(&[2, 1, 0])).unwrap(),
            0
        );
        assert_eq!(
            weyl_length_to_dominant(&a2, &RatVec::from_ints(&[0, 1, 2])).unwrap(),
            3
        );
        // brute force over S3: sorting (1, 2, 0) descending is one adjacent
        // transposition
        assert_eq!(
            weyl_length_to_dominant(&a2, &RatVec::from_ints(&[1, 2, 0])).unwrap(),
            1
        );
        assert!(matches!(
            weyl_length_to_dominant(&a2, &RatVec::from_ints(&[1, 1, 0])),
            Err(BwbError::SingularInput)
        ));
    }

    #[test]
    fn profile_of_the_trivial_bundle() {
        let a2 = build(Family::A, 2);
        let zero = RatVec::zero(3);
        assert_eq!(
            cohomology_profile(&a2, &zero).unwrap(),
            CohomologyProfile::NonzeroInDegree { degree: 0 }
        );
    }

    #[test]
    fn profile_singular_example() {
        // lambda + rho = (1, 0, 0) pairs to zero with (e2 - e3)^vee
        let a2 = build(Family::A, 2);
        let lam = RatVec::from_ints(&[0, 0, 1]);
        match cohomology_profile(&a2, &lam).unwrap() {
            CohomologyProfile::Singular { witness } => {
                assert_eq!(witness, RatVec::from_ints(&[0, 1, -1]));
            }
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn g2_antidominant_weight_lands_in_top_degree() {
        // Lambda with pairing -1 against both simple coroots pairs negatively
        // with all six positive coroots.
        let g2 = build(Family::G, 2);
        let a1 = g2.simple_roots()[0].clone();
        let a2 = g2.simple_roots()[1].clone();
        // Lambda = -(w1 + w2) for the G2 fundamental weights; solve directly:
        // -rho works since <rho, a_i^vee> = 1.
        let lambda = &RatVec::zero(3) - &(g2.rho() + g2.rho());
        let shifted = &lambda + g2.rho(); // = -rho
        assert!(shifted.dot(&g2.coroot(&a1).unwrap()) == rat(-1));
        assert!(shifted.dot(&g2.coroot(&a2).unwrap()) == rat(-1));
        match cohomology_profile(&g2, &lambda).unwrap() {
            CohomologyProfile::NonzeroInDegree { degree } => assert_eq!(degree, 6),
            other => panic!("expected degree 6, got {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a2 = build(Family::A, 2);
        assert!(cohomology_profile(&a2, &RatVec::from_ints(&[1, 0])).is_err());
    }
}
