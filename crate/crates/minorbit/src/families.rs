//! Stabilizer weights and the cohomology-controlling weight families.
//!
//! An equivariant sheaf on the minimal orbit comes from an irreducible
//! representation of the highest-root-vector stabilizer, recorded here as a
//! [`StabilizerWeight`]. Pushing the sheaf down to the parabolic quotient
//! splits it into a one-parameter family of summands; the family member at
//! parameter j is an ambient weight, and the Cohen-Macaulay question reduces
//! to the cohomology profiles of the members.
//!
//! The classical families are emitted directly in epsilon-coordinates:
//!
//! * type A: ((lambda - j)/2, lambda_1, ..., lambda_{n-1}, (lambda + j)/2),
//!   j running over lambda's parity class;
//! * type C: (-j, lambda_1, ..., lambda_{n-1}), j in lambda_0's class;
//! * types B/D: ((lambda - j)/2, (-lambda - j)/2, lambda_1, ..., lambda_{n-2}),
//!   with j's class fixed by lambda and the (half-)integrality of the
//!   lambda_i (the Spin sublattice shifts the class by one).
//!
//! Exceptional families are lambda + (j/2) theta with j restricted to the
//! integers making every simple-coroot pairing integral. The two mechanisms
//! are deliberately kept separate; the engine treats them uniformly through
//! the cohomology profile.
//!
//! Outside a finite parameter window every member is regular with all
//! complement-root pairings of one strict sign, so only the window needs
//! scanning. The window is computed from the pairings of the parameter-free
//! part against the complement coroots and the per-unit parameter increments.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::ratvec::{rat, ratio, RatVec};
use crate::rootsys::{Family, LeviData, RootSystem, RootSystemError, SimpleType};
use crate::Rat;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("weight is not a dominant stabilizer weight for {kind}: {reason}")]
    NotDominant { kind: SimpleType, reason: String },
    #[error("parameter {param} outside the admissible class j = {residue} (mod 2)")]
    ParamOutsideClass { param: i64, residue: i64 },
    #[error("{0}")]
    UnsupportedKind(String),
}

/// Dominant weight datum of the stabilizer, per type.
///
/// Type A weights live in Z^n modulo the shift (lambda, lambda_i) ->
/// (lambda + 2t, lambda_i + t); the constructor stores the canonical
/// representative with last Levi entry zero. B/D entries are stored doubled
/// so the Spin sublattice (all Levi entries half-integral) shares the integer
/// code path.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum StabilizerWeight {
    TypeA { lambda: i64, levi: Vec<i64> },
    TypeC { lambda0: u8, levi: Vec<i64> },
    TypeBD { lambda: i64, levi_x2: Vec<i64> },
    Exceptional { coeffs: Vec<i64> },
}

impl StabilizerWeight {
    /// Type A weight, canonicalized so the last Levi entry is zero.
    pub fn type_a(lambda: i64, levi: Vec<i64>) -> StabilizerWeight {
        match levi.last().copied() {
            None | Some(0) => StabilizerWeight::TypeA { lambda, levi },
            Some(t) => StabilizerWeight::TypeA {
                lambda: lambda - 2 * t,
                levi: levi.iter().map(|x| x - t).collect(),
            },
        }
    }

    pub fn type_c(lambda0: u8, levi: Vec<i64>) -> StabilizerWeight {
        StabilizerWeight::TypeC { lambda0, levi }
    }

    /// B/D weight with integer Levi entries.
    pub fn type_bd(lambda: i64, levi: Vec<i64>) -> StabilizerWeight {
        StabilizerWeight::TypeBD {
            lambda,
            levi_x2: levi.iter().map(|x| 2 * x).collect(),
        }
    }

    /// B/D weight with doubled Levi entries (odd entries = Spin sublattice).
    pub fn type_bd_doubled(lambda: i64, levi_x2: Vec<i64>) -> StabilizerWeight {
        StabilizerWeight::TypeBD { lambda, levi_x2 }
    }

    pub fn exceptional(coeffs: Vec<i64>) -> StabilizerWeight {
        StabilizerWeight::Exceptional { coeffs }
    }

    /// True when the Levi entries are genuinely half-integral.
    pub fn is_spin(&self) -> bool {
        match self {
            StabilizerWeight::TypeBD { levi_x2, .. } => levi_x2.first().is_some_and(|x| x % 2 != 0),
            _ => false,
        }
    }
}

impl fmt::Display for StabilizerWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(xs: &[i64]) -> String {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
        match self {
            StabilizerWeight::TypeA { lambda, levi } => {
                if levi.is_empty() {
                    write!(f, "{lambda}")
                } else {
                    write!(f, "{lambda};{}", join(levi))
                }
            }
            StabilizerWeight::TypeC { lambda0, levi } => {
                write!(f, "{lambda0};{}", join(levi))
            }
            StabilizerWeight::TypeBD { lambda, levi_x2 } => {
                let parts: Vec<String> = levi_x2
                    .iter()
                    .map(|&x| {
                        if x % 2 == 0 {
                            (x / 2).to_string()
                        } else {
                            format!("{x}/2")
                        }
                    })
                    .collect();
                write!(f, "{lambda};{}", parts.join(","))
            }
            StabilizerWeight::Exceptional { coeffs } => write!(f, "{}", join(coeffs)),
        }
    }
}

/// Root-system data shared by every per-weight computation of one type.
pub struct FamilyContext {
    kind: SimpleType,
    rs: RootSystem,
    levi: LeviData,
    dim: usize,
}

impl FamilyContext {
    pub fn new(kind: SimpleType) -> Result<FamilyContext, FamilyError> {
        let rs = RootSystem::build(kind)?;
        let levi = rs.levi_subsystem();
        let dim = 1 + rs.num_positive_roots() - levi.positive_roots().len();
        Ok(FamilyContext {
            kind,
            rs,
            levi,
            dim,
        })
    }

    pub fn kind(&self) -> SimpleType {
        self.kind
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn levi(&self) -> &LeviData {
        &self.levi
    }

    /// Dimension of the minimal nilpotent orbit:
    /// d = 1 + |Phi+| - |(Phi_levi)+|.
    pub fn min_orbit_dim(&self) -> usize {
        self.dim
    }

    /// Gate for all downstream operations: the weight has the right shape for
    /// this type and satisfies the dominance conditions.
    pub fn levi_dominant_check(&self, w: &StabilizerWeight) -> bool {
        self.dominance_reason(w).is_none()
    }

    fn dominance_reason(&self, w: &StabilizerWeight) -> Option<String> {
        let n = self.kind.rank();
        match (self.kind.family(), w) {
            (Family::A, StabilizerWeight::TypeA { levi, .. }) => {
                if levi.len() != n - 1 {
                    return Some(format!(
                        "expected {} Levi entries, got {}",
                        n - 1,
                        levi.len()
                    ));
                }
                if levi.windows(2).any(|p| p[0] < p[1]) {
                    return Some("Levi entries must be weakly decreasing".into());
                }
                None
            }
            (Family::C, StabilizerWeight::TypeC { lambda0, levi }) => {
                if *lambda0 > 1 {
                    return Some("lambda0 must be 0 or 1".into());
                }
                if levi.len() != n - 1 {
                    return Some(format!(
                        "expected {} Levi entries, got {}",
                        n - 1,
                        levi.len()
                    ));
                }
                if levi.windows(2).any(|p| p[0] < p[1]) || levi.last().is_some_and(|&x| x < 0) {
                    return Some("need lambda_1 >= ... >= lambda_{n-1} >= 0".into());
                }
                None
            }
            (Family::B | Family::D, StabilizerWeight::TypeBD { lambda, levi_x2 }) => {
                if n < 3 {
                    // so(5) = sp(4) is served by the type C lattice
                    return Some("B/D stabilizer weights need rank >= 3".into());
                }
                if levi_x2.len() != n - 2 {
                    return Some(format!(
                        "expected {} Levi entries, got {}",
                        n - 2,
                        levi_x2.len()
                    ));
                }
                if *lambda < 0 {
                    return Some("lambda must be >= 0".into());
                }
                let parity = levi_x2[0].rem_euclid(2);
                if levi_x2.iter().any(|x| x.rem_euclid(2) != parity) {
                    return Some("Levi entries must be all integral or all half-integral".into());
                }
                let last = *levi_x2.last().unwrap();
                if self.kind.family() == Family::B {
                    // full decreasing chain ending nonnegative
                    if levi_x2.windows(2).any(|p| p[0] < p[1]) {
                        return Some("Levi entries must be weakly decreasing".into());
                    }
                    if last < 0 {
                        return Some("need lambda_{n-2} >= 0 in type B".into());
                    }
                } else {
                    // type D bounds the last entry in absolute value
                    let head = &levi_x2[..levi_x2.len() - 1];
                    if head.windows(2).any(|p| p[0] < p[1]) {
                        return Some("Levi entries must be weakly decreasing".into());
                    }
                    if levi_x2.len() >= 2 && levi_x2[levi_x2.len() - 2] < last.abs() {
                        return Some("need lambda_{n-3} >= |lambda_{n-2}| in type D".into());
                    }
                }
                None
            }
            (Family::E | Family::F | Family::G, StabilizerWeight::Exceptional { coeffs }) => {
                if coeffs.len() != self.levi.rank() {
                    return Some(format!(
                        "expected {} coefficients, got {}",
                        self.levi.rank(),
                        coeffs.len()
                    ));
                }
                if coeffs.iter().any(|&c| c < 0) {
                    return Some("coefficients must be nonnegative".into());
                }
                None
            }
            _ => Some(format!("weight variant does not match type {}", self.kind)),
        }
    }

    /// The family of parabolic weights controlling the Cohen-Macaulay
    /// property of the sheaf attached to `w`, with its finite scan window.
    pub fn family(&self, w: &StabilizerWeight) -> Result<WeightFamily, FamilyError> {
        if let Some(reason) = self.dominance_reason(w) {
            return Err(FamilyError::NotDominant {
                kind: self.kind,
                reason,
            });
        }
        let (base, direction, residue) = match w {
            StabilizerWeight::TypeA { lambda, levi } => {
                let n = self.kind.rank();
                let mut base = Vec::with_capacity(n + 1);
                base.push(ratio(*lambda, 2));
                base.extend(levi.iter().map(|&x| rat(x)));
                base.push(ratio(*lambda, 2));
                let mut dir = vec![Rat::zero(); n + 1];
                dir[0] = ratio(-1, 2);
                dir[n] = ratio(1, 2);
                (RatVec::new(base), RatVec::new(dir), lambda.rem_euclid(2))
            }
            StabilizerWeight::TypeC { lambda0, levi } => {
                let n = self.kind.rank();
                let mut base = vec![Rat::zero()];
                base.extend(levi.iter().map(|&x| rat(x)));
                let mut dir = vec![Rat::zero(); n];
                dir[0] = rat(-1);
                (
                    RatVec::new(base),
                    RatVec::new(dir),
                    i64::from(*lambda0).rem_euclid(2),
                )
            }
            StabilizerWeight::TypeBD { lambda, levi_x2 } => {
                let n = self.kind.rank();
                let mut base = vec![ratio(*lambda, 2), ratio(-lambda, 2)];
                base.extend(levi_x2.iter().map(|&x| ratio(x, 2)));
                let mut dir = vec![Rat::zero(); n];
                dir[0] = ratio(-1, 2);
                dir[1] = ratio(-1, 2);
                (
                    RatVec::new(base),
                    RatVec::new(dir),
                    (lambda + levi_x2[0]).rem_euclid(2),
                )
            }
            StabilizerWeight::Exceptional { coeffs } => {
                let mut base = RatVec::zero(self.rs.ambient_dim());
                for (&c, weight) in coeffs.iter().zip(self.levi.fundamental_weights()) {
                    base = &base + &weight.scale(&rat(c));
                }
                let direction = self.rs.highest_root().scale(&ratio(1, 2));
                // j is admissible when lambda + (j/2) theta pairs integrally
                // with the non-Levi simple coroot (Levi pairings are already
                // the integers a_i).
                let m = self.rs.non_levi_simple_indices();
                assert_eq!(m.len(), 1, "exceptional types have one non-Levi simple");
                let alpha_m_cov = self.rs.coroot(&self.rs.simple_roots()[m[0]].clone())?;
                let twice = &base.dot(&alpha_m_cov) * &rat(2);
                assert!(
                    twice.is_integer(),
                    "Levi-dominant weight must pair half-integrally with alpha_m"
                );
                let twice = twice.to_integer().to_i64().expect("small pairing");
                (base, direction, (-twice).rem_euclid(2))
            }
        };

        let (lo, hi) = self.scan_window(&base, &direction);
        Ok(WeightFamily {
            base,
            direction,
            residue,
            lo,
            hi,
        })
    }

    /// Window [lo, hi] outside which every member is regular with all
    /// complement pairings of one strict sign: |p| * s > P0 forces the sign
    /// of p * slope on every complement root.
    fn scan_window(&self, base: &RatVec, direction: &RatVec) -> (i64, i64) {
        let shifted = base + self.rs.rho();
        let mut p0 = Rat::zero();
        let mut min_slope: Option<Rat> = None;
        let mut sign: Option<bool> = None;
        for beta in self.levi.complement_roots() {
            let cov = self.rs.coroot(beta).expect("complement roots are roots");
            let v = shifted.dot(&cov).abs();
            if v > p0 {
                p0 = v;
            }
            let slope = direction.dot(&cov);
            assert!(
                !slope.is_zero(),
                "complement pairing must vary with the parameter"
            );
            let positive = slope.is_positive();
            match sign {
                None => sign = Some(positive),
                Some(s) => assert_eq!(s, positive, "complement slopes must share a sign"),
            }
            let a = slope.abs();
            if min_slope.as_ref().is_none_or(|m| &a < m) {
                min_slope = Some(a);
            }
        }
        let s = min_slope.expect("complement is nonempty");
        let hi = (&p0 / &s)
            .ceil()
            .to_integer()
            .to_i64()
            .expect("small window")
            + 2;
        (-hi, hi)
    }

    /// Family member at one parameter; errors outside the congruence class.
    pub fn family_member(&self, w: &StabilizerWeight, param: i64) -> Result<RatVec, FamilyError> {
        self.family(w)?.member(param)
    }
}

/// One-parameter family of ambient weights with its finite scan window.
pub struct WeightFamily {
    base: RatVec,
    direction: RatVec,
    residue: i64,
    lo: i64,
    hi: i64,
}

impl WeightFamily {
    /// The member at parameter `j` (named j throughout, matching the
    /// summand index of the pushforward decomposition).
    pub fn member(&self, param: i64) -> Result<RatVec, FamilyError> {
        if param.rem_euclid(2) != self.residue {
            return Err(FamilyError::ParamOutsideClass {
                param,
                residue: self.residue,
            });
        }
        Ok(&self.base + &self.direction.scale(&rat(param)))
    }

    pub fn scan_range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn residue(&self) -> i64 {
        self.residue
    }

    /// Admissible parameters inside the scan window, ascending.
    pub fn scan_params(&self) -> Vec<i64> {
        let first = self.lo + (self.residue - self.lo).rem_euclid(2);
        (first..=self.hi).step_by(2).collect()
    }

    /// The admissible parameters just outside the window on each side.
    pub fn params_beyond(&self) -> (i64, i64) {
        let params = self.scan_params();
        let first = *params.first().expect("window is nonempty");
        let last = *params.last().expect("window is nonempty");
        (first - 2, last + 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(f: Family, r: usize) -> FamilyContext {
        FamilyContext::new(SimpleType::new(f, r).unwrap()).unwrap()
    }

    #[test]
    fn orbit_dimensions_match_the_closed_forms() {
        assert_eq!(ctx(Family::D, 5).min_orbit_dim(), 14);
        assert_eq!(ctx(Family::C, 3).min_orbit_dim(), 6);
        assert_eq!(ctx(Family::E, 8).min_orbit_dim(), 58);
        for n in 2..=8 {
            assert_eq!(ctx(Family::A, n).min_orbit_dim(), 2 * n);
            assert_eq!(ctx(Family::C, n).min_orbit_dim(), 2 * n);
            assert_eq!(ctx(Family::B, n.max(3)).min_orbit_dim(), 4 * n.max(3) - 4);
        }
        for n in 3..=8 {
            assert_eq!(ctx(Family::D, n).min_orbit_dim(), 4 * n - 6);
        }
        assert_eq!(ctx(Family::A, 1).min_orbit_dim(), 2);
        assert_eq!(ctx(Family::E, 6).min_orbit_dim(), 22);
        assert_eq!(ctx(Family::E, 7).min_orbit_dim(), 34);
        assert_eq!(ctx(Family::F, 4).min_orbit_dim(), 16);
        assert_eq!(ctx(Family::G, 2).min_orbit_dim(), 6);
    }

    #[test]
    fn family_members_match_the_per_type_formulas() {
        let a3 = ctx(Family::A, 3);
        let w = StabilizerWeight::type_a(1, vec![1, 0]);
        assert_eq!(
            a3.family_member(&w, 1).unwrap(),
            RatVec::from_ints(&[0, 1, 0, 1])
        );

        let c3 = ctx(Family::C, 3);
        let w = StabilizerWeight::type_c(0, vec![1, 0]);
        assert_eq!(
            c3.family_member(&w, 2).unwrap(),
            RatVec::from_ints(&[-2, 1, 0])
        );

        let g2 = ctx(Family::G, 2);
        let w = StabilizerWeight::exceptional(vec![1]);
        // member at j = 3 is varpi + (3/2) theta
        assert_eq!(
            g2.family_member(&w, 3).unwrap(),
            RatVec::from_ints(&[-1, -2, 3])
        );
        // j = 2 is not in the admissible class for a = 1
        assert!(matches!(
            g2.family_member(&w, 2),
            Err(FamilyError::ParamOutsideClass {
                param: 2,
                residue: 1
            })
        ));
    }

    #[test]
    fn bd_parameter_class_follows_the_spin_shift() {
        let d4 = ctx(Family::D, 4);
        let int = StabilizerWeight::type_bd(1, vec![1, 0]);
        assert_eq!(d4.family(&int).unwrap().residue(), 1);
        let spin = StabilizerWeight::type_bd_doubled(1, vec![1, 1]);
        assert!(spin.is_spin());
        assert_eq!(d4.family(&spin).unwrap().residue(), 0);
        // spin member at j = 0: ((1 - 0)/2, (-1 - 0)/2, 1/2, 1/2)
        assert_eq!(
            d4.family_member(&spin, 0).unwrap(),
            RatVec::from_ratios(&[1, -1, 1, 1], 2)
        );
    }

    #[test]
    fn dominance_gate_examples() {
        let c3 = ctx(Family::C, 3);
        assert!(c3.levi_dominant_check(&StabilizerWeight::type_c(1, vec![2, 1])));
        assert!(!c3.levi_dominant_check(&StabilizerWeight::type_c(0, vec![1, 2])));
        assert!(!c3.levi_dominant_check(&StabilizerWeight::type_c(0, vec![1, -1])));

        let d4 = ctx(Family::D, 4);
        assert!(!d4.levi_dominant_check(&StabilizerWeight::type_bd(1, vec![1, -2])));
        assert!(d4.levi_dominant_check(&StabilizerWeight::type_bd(1, vec![1, -1])));

        let b4 = ctx(Family::B, 4);
        assert!(b4.levi_dominant_check(&StabilizerWeight::type_bd_doubled(0, vec![3, 1])));
        assert!(!b4.levi_dominant_check(&StabilizerWeight::type_bd_doubled(0, vec![3, -1])));
        assert!(!b4.levi_dominant_check(&StabilizerWeight::type_bd(0, vec![1, 5])));
        // mixed integral and half-integral entries are not a weight
        assert!(!b4.levi_dominant_check(&StabilizerWeight::type_bd_doubled(0, vec![3, 2])));

        // wrong variant for the type
        assert!(!b4.levi_dominant_check(&StabilizerWeight::type_c(0, vec![1, 0, 0])));
    }

    #[test]
    fn type_a_canonical_representative() {
        let w = StabilizerWeight::type_a(3, vec![2, 1, 1]);
        assert_eq!(
            w,
            StabilizerWeight::TypeA {
                lambda: 1,
                levi: vec![1, 0, 0]
            }
        );
        // already canonical
        assert_eq!(
            StabilizerWeight::type_a(5, vec![1, 0]),
            StabilizerWeight::TypeA {
                lambda: 5,
                levi: vec![1, 0]
            }
        );
    }

    #[test]
    fn scan_windows_cover_the_expected_ranges() {
        let a2 = ctx(Family::A, 2);
        let fam = a2.family(&StabilizerWeight::type_a(0, vec![0])).unwrap();
        let (lo, hi) = fam.scan_range();
        assert!(lo <= -3 && hi >= 3);

        let g2 = ctx(Family::G, 2);
        let fam = g2.family(&StabilizerWeight::exceptional(vec![0])).unwrap();
        let (lo, hi) = fam.scan_range();
        assert!(lo <= -12 && hi >= 2);
        // zero weight gives a window symmetric about the origin
        assert_eq!(lo, -hi);
    }

    #[test]
    fn levi_pairings_are_constant_along_the_family() {
        for (f, r, w) in [
            (Family::A, 4, StabilizerWeight::type_a(3, vec![2, 1, 0])),
            (Family::C, 4, StabilizerWeight::type_c(1, vec![3, 1, 0])),
            (Family::B, 4, StabilizerWeight::type_bd(2, vec![2, 1])),
            (
                Family::D,
                4,
                StabilizerWeight::type_bd_doubled(2, vec![3, 1]),
            ),
            (Family::F, 4, StabilizerWeight::exceptional(vec![2, 1, 0])),
        ] {
            let ctx = ctx(f, r);
            let fam = ctx.family(&w).unwrap();
            let params = fam.scan_params();
            let reference = fam.member(params[0]).unwrap();
            for &p in &params[1..] {
                let member = fam.member(p).unwrap();
                for beta in ctx.levi().positive_roots() {
                    let cov = ctx.root_system().coroot(beta).unwrap();
                    assert_eq!(member.dot(&cov), reference.dot(&cov));
                }
            }
        }
    }

    #[test]
    fn distinguished_pairing_is_surjective_over_the_class() {
        // For exceptional types the pairing of member(j) + rho with the
        // non-Levi simple coroot walks through consecutive integers.
        for (f, r) in [(Family::G, 2), (Family::F, 4), (Family::E, 6)] {
            let ctx = ctx(f, r);
            let coeffs = vec![1; ctx.levi().rank()];
            let fam = ctx.family(&StabilizerWeight::exceptional(coeffs)).unwrap();
            let m = ctx.root_system().non_levi_simple_indices()[0];
            let cov = ctx
                .root_system()
                .coroot(&ctx.root_system().simple_roots()[m].clone())
                .unwrap();
            let mut values = Vec::new();
            for p in fam.scan_params() {
                let shifted = &fam.member(p).unwrap() + ctx.root_system().rho();
                let v = shifted.dot(&cov);
                assert!(v.is_integer());
                values.push(v.to_integer().to_i64().unwrap());
            }
            for pair in values.windows(2) {
                assert_eq!(pair[1] - pair[0], 1);
            }
        }
    }
}
