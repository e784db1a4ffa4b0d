//! Closed-form Cohen-Macaulay criteria, transcribed literally.
//!
//! Each per-type test is coded from the printed formula with no algebraic
//! simplification, so a transcription bug shows up against the vanishing
//! oracle instead of being masked by shared code. The gap set A of each
//! criterion collects the parameters at which the family weight must be
//! singular; when A is empty the intersection over A is vacuously the full
//! lattice.
//!
//! B/D quantities are doubled throughout so the Spin sublattice (half-integral
//! Levi entries) reuses the integer code path; the doubling is an internal
//! normalization only. The Spin-only set elements (the `k + n - 3/2` branch
//! and the `1/2 - n` exclusion in type B) are included unconditionally: on
//! the integer lattice they compare an odd doubled value against an even one
//! and never fire.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("rank {0} too small: the closed criterion needs n >= {1}")]
    RankTooSmall(usize, usize),
    #[error("not a dominant stabilizer weight: {0}")]
    NotDominant(String),
}

/// Gap set of integer (or half-integer, stored doubled) parameters at which
/// the family weight must be singular.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GapSet {
    /// Sorted elements, doubled; odd entries are genuine half-integers.
    pub elements_x2: Vec<i64>,
}

impl GapSet {
    pub fn is_empty(&self) -> bool {
        self.elements_x2.is_empty()
    }
}

fn check_levi_decreasing(levi: &[i64]) -> Result<(), CriteriaError> {
    if levi.windows(2).any(|p| p[0] < p[1]) {
        return Err(CriteriaError::NotDominant(
            "Levi entries must be weakly decreasing".into(),
        ));
    }
    Ok(())
}

/// Gap set for type A: integers strictly between lambda_{n-1} + 1 and
/// lambda_1 + n - 1, excluding every lambda_i + n - i and (lambda + n)/2.
pub fn gap_set_a(n: usize, lambda: i64, levi: &[i64]) -> GapSet {
    let n = n as i64;
    let lam1 = levi[0];
    let lam_last = levi[levi.len() - 1];
    let mut elements = Vec::new();
    for cand in (lam_last + 2)..(lam1 + n - 1) {
        let excluded = levi
            .iter()
            .enumerate()
            .any(|(idx, &li)| cand == li + n - (idx as i64 + 1))
            || 2 * cand == lambda + n;
        if !excluded {
            elements.push(2 * cand);
        }
    }
    GapSet {
        elements_x2: elements,
    }
}

/// Type A criterion (n >= 2); n = 1 is handled by the vanishing oracle,
/// where the empty intermediate range makes every weight Cohen-Macaulay.
pub fn mcm_closed_a(n: usize, lambda: i64, levi: &[i64]) -> Result<bool, CriteriaError> {
    if n < 2 {
        return Err(CriteriaError::RankTooSmall(n, 2));
    }
    if levi.len() != n - 1 {
        return Err(CriteriaError::NotDominant(format!(
            "expected {} Levi entries, got {}",
            n - 1,
            levi.len()
        )));
    }
    check_levi_decreasing(levi)?;

    let ni = n as i64;
    let lam1 = levi[0];
    let lam_last = levi[levi.len() - 1];

    if lam1 == lam_last {
        let mu = lam1;
        return Ok(2 * mu - ni <= lambda && lambda <= 2 * mu + ni);
    }

    // 1-based indices of the first run of lambda_1 and the last run of
    // lambda_{n-1}
    let big_m = (1..=levi.len())
        .rev()
        .find(|&i| levi[i - 1] == lam1)
        .unwrap() as i64;
    let small_m = (1..=levi.len()).find(|&i| levi[i - 1] == lam_last).unwrap() as i64;

    let lower = lam_last + levi[(big_m - 1) as usize] - big_m;
    let upper = lam1 + levi[(small_m - 1) as usize] + ni - small_m;
    if lambda < lower || lambda > upper {
        return Ok(false);
    }

    let gaps = gap_set_a(n, lambda, levi);
    for &alpha2 in &gaps.elements_x2 {
        let alpha = alpha2 / 2;
        let hit = levi
            .iter()
            .enumerate()
            .any(|(idx, &li)| lambda == li + alpha - (idx as i64 + 1));
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Gap set for type C: integers with |N| < lambda_1 + n - 1, excluding 0 and
/// every +-(lambda_i + n - i).
pub fn gap_set_c(n: usize, levi: &[i64]) -> GapSet {
    let ni = n as i64;
    let bound = levi[0] + ni - 1;
    let mut elements = Vec::new();
    for cand in (-bound + 1)..bound {
        if cand == 0 {
            continue;
        }
        let excluded = levi
            .iter()
            .enumerate()
            .any(|(idx, &li)| cand.abs() == li + ni - (idx as i64 + 1));
        if !excluded {
            elements.push(2 * cand);
        }
    }
    GapSet {
        elements_x2: elements,
    }
}

/// Type C criterion: no gap-set element may be congruent to n - lambda_0
/// mod 2; vacuously true when the gap set is empty.
pub fn mcm_closed_c(n: usize, lambda0: u8, levi: &[i64]) -> Result<bool, CriteriaError> {
    if n < 2 {
        return Err(CriteriaError::RankTooSmall(n, 2));
    }
    if levi.len() != n - 1 {
        return Err(CriteriaError::NotDominant(format!(
            "expected {} Levi entries, got {}",
            n - 1,
            levi.len()
        )));
    }
    check_levi_decreasing(levi)?;
    if levi[levi.len() - 1] < 0 {
        return Err(CriteriaError::NotDominant(
            "need lambda_{n-1} >= 0 in type C".into(),
        ));
    }

    let target = (n as i64 - i64::from(lambda0)).rem_euclid(2);
    let gaps = gap_set_c(n, levi);
    Ok(gaps
        .elements_x2
        .iter()
        .all(|&k2| (k2 / 2).rem_euclid(2) != target))
}

fn check_bd_weight(
    n: usize,
    lambda: i64,
    levi_x2: &[i64],
    last_nonnegative: bool,
) -> Result<(), CriteriaError> {
    if n < 3 {
        return Err(CriteriaError::RankTooSmall(n, 3));
    }
    if levi_x2.len() != n - 2 {
        return Err(CriteriaError::NotDominant(format!(
            "expected {} Levi entries, got {}",
            n - 2,
            levi_x2.len()
        )));
    }
    if lambda < 0 {
        return Err(CriteriaError::NotDominant("lambda must be >= 0".into()));
    }
    let parity = levi_x2[0].rem_euclid(2);
    if levi_x2.iter().any(|x| x.rem_euclid(2) != parity) {
        return Err(CriteriaError::NotDominant(
            "Levi entries must be all integral or all half-integral".into(),
        ));
    }
    let last = levi_x2[levi_x2.len() - 1];
    if last_nonnegative {
        // type B: the full chain decreases and ends nonnegative
        check_levi_decreasing(levi_x2)?;
        if last < 0 {
            return Err(CriteriaError::NotDominant(
                "need lambda_{n-2} >= 0 in type B".into(),
            ));
        }
    } else {
        // type D: the last entry is bounded in absolute value instead
        check_levi_decreasing(&levi_x2[..levi_x2.len() - 1])?;
        if levi_x2.len() >= 2 && levi_x2[levi_x2.len() - 2] < last.abs() {
            return Err(CriteriaError::NotDominant(
                "need lambda_{n-3} >= |lambda_{n-2}| in type D".into(),
            ));
        }
    }
    Ok(())
}

/// Gap set for type D (doubled): N in Z + lambda_1 with
/// -lambda_1 - 2n + 4 <= N <= lambda + lambda_1 - 1, excluding every
/// lambda_i - i - 1 and -lambda_i - 2n + 3 + i.
pub fn gap_set_d(n: usize, lambda: i64, levi_x2: &[i64]) -> GapSet {
    let ni = n as i64;
    let lo = -levi_x2[0] - 2 * (2 * ni - 4);
    let hi = 2 * lambda + levi_x2[0] - 2;
    let mut elements = Vec::new();
    let mut cand = lo;
    while cand <= hi {
        let excluded = levi_x2.iter().enumerate().any(|(idx, &li2)| {
            let i = idx as i64 + 1;
            cand == li2 - 2 * i - 2 || cand == -li2 - 2 * (2 * ni - 3) + 2 * i
        });
        if !excluded {
            elements.push(cand);
        }
        cand += 2;
    }
    GapSet {
        elements_x2: elements,
    }
}

/// Type D criterion: lambda lies in the intersection over the gap set of
/// union_i {k - lambda_i + i, k + 2n - 4 + lambda_i - i} u {2k + 2n - 3}.
/// Spin weights pass half-integral Levi entries (doubled odd).
///
/// At rank 3 the dominance chain is vacuous and lambda_1 may be negative;
/// the criterion is evaluated on the sign-reflected weight, which induces
/// the same sheaf data up to the outer automorphism swapping the spin nodes
/// (the family pairings are symmetric under lambda_{n-2} -> -lambda_{n-2},
/// while the printed gap-set bounds read lambda_1 as a magnitude).
pub fn mcm_closed_d(n: usize, lambda: i64, levi_x2: &[i64]) -> Result<bool, CriteriaError> {
    check_bd_weight(n, lambda, levi_x2, false)?;
    let reflected;
    let levi_x2 = if n == 3 && levi_x2[0] < 0 {
        reflected = [-levi_x2[0]];
        &reflected[..]
    } else {
        levi_x2
    };
    let ni = n as i64;
    let gaps = gap_set_d(n, lambda, levi_x2);
    for &k2 in &gaps.elements_x2 {
        let hit = levi_x2.iter().enumerate().any(|(idx, &li2)| {
            let i = idx as i64 + 1;
            2 * lambda == k2 - li2 + 2 * i || 2 * lambda == k2 + 2 * (2 * ni - 4) + li2 - 2 * i
        }) || 2 * lambda == 2 * k2 + 2 * (2 * ni - 3);
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Gap set for type B (doubled): N in Z + lambda_1 with
/// -lambda_1 - 2n + 3 <= N <= lambda + lambda_1 - 1, excluding every
/// lambda_i - 1 - i, -lambda_i - 2n + 2 + i, and 1/2 - n.
pub fn gap_set_b(n: usize, lambda: i64, levi_x2: &[i64]) -> GapSet {
    let ni = n as i64;
    let lo = -levi_x2[0] - 2 * (2 * ni - 3);
    let hi = 2 * lambda + levi_x2[0] - 2;
    let mut elements = Vec::new();
    let mut cand = lo;
    while cand <= hi {
        let excluded = levi_x2.iter().enumerate().any(|(idx, &li2)| {
            let i = idx as i64 + 1;
            cand == li2 - 2 - 2 * i || cand == -li2 - 2 * (2 * ni - 2) + 2 * i
        }) || cand == 1 - 2 * ni;
        if !excluded {
            elements.push(cand);
        }
        cand += 2;
    }
    GapSet {
        elements_x2: elements,
    }
}

/// Type B criterion: lambda lies in the intersection over the gap set of
/// union_i {k - lambda_i + i, k + lambda_i + 2n - 3 - i} u {2k + 2n - 2,
/// k + n - 3/2}; the last element is the Spin-only branch.
pub fn mcm_closed_b(n: usize, lambda: i64, levi_x2: &[i64]) -> Result<bool, CriteriaError> {
    check_bd_weight(n, lambda, levi_x2, true)?;
    let ni = n as i64;
    let gaps = gap_set_b(n, lambda, levi_x2);
    for &k2 in &gaps.elements_x2 {
        let hit = levi_x2.iter().enumerate().any(|(idx, &li2)| {
            let i = idx as i64 + 1;
            2 * lambda == k2 - li2 + 2 * i || 2 * lambda == k2 + li2 + 2 * (2 * ni - 3) - 2 * i
        }) || 2 * lambda == 2 * k2 + 2 * (2 * ni - 2)
            || 2 * lambda == k2 + 2 * ni - 3;
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Divisor-level criterion on the type A orbit closure: O(mD) is maximal
/// Cohen-Macaulay exactly for -n <= m <= n.
pub fn mcm_divisor_a(n: usize, m: i64) -> Result<bool, CriteriaError> {
    if n < 2 {
        return Err(CriteriaError::RankTooSmall(n, 2));
    }
    let ni = n as i64;
    Ok(-ni <= m && m <= ni)
}

/// Vanishing pattern of the twisted structure sheaf of the cotangent bundle
/// of projective n-space.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CotangentVanishing {
    /// H^i = 0 for 1 <= i <= n-1. The range 1..=n-2 always vanishes; the
    /// boundary degree n-1 vanishes exactly when m >= -n.
    pub h_mid_all_zero: bool,
    /// Whenever the middle range vanishes, H^n vanishes as well.
    pub h_top_zero_when_mid_zero: bool,
    /// First symmetric degree with a forced nonzero H^{n-1}, with its
    /// dimension.
    pub first_mid_nonvanishing: Option<(i64, u128)>,
}

fn binomial(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i as u128 + 1);
    }
    acc
}

/// dim H^n(P^n, O(d)): C(-d-1, n) for d <= -n-1, zero otherwise.
fn top_cohomology_dim(d: i64, n: i64) -> u128 {
    if d < -n {
        binomial(-d - 1, n)
    } else {
        0
    }
}

/// Graded Euler-sequence bookkeeping for H^*(O_{T*P^n}(m)).
///
/// In each symmetric degree j the middle cohomology sits in
///   0 -> H^{n-1}(S^j T(m)) -> H^n(O(j-1+m))^C(j+n-1,n)
///     -> H^n(O(j+m))^C(j+n,n) -> H^n(S^j T(m)) -> 0,
/// so a nonzero source against a zero target forces nonvanishing. The scan
/// terminates at j = max(0, -m) + 1, past which every term is zero.
pub fn cotangent_line_bundle_vanishing(
    n: usize,
    m: i64,
) -> Result<CotangentVanishing, CriteriaError> {
    if n < 2 {
        return Err(CriteriaError::RankTooSmall(n, 2));
    }
    let ni = n as i64;
    let mut first_mid = None;
    let mut top_all_zero = true;
    for j in 0..=((-m).max(0) + 1) {
        let source = binomial(j + ni - 1, ni) * top_cohomology_dim(j - 1 + m, ni);
        let target = binomial(j + ni, ni) * top_cohomology_dim(j + m, ni);
        if source > 0 && target == 0 && first_mid.is_none() {
            first_mid = Some((j, source));
        }
        if target > 0 {
            top_all_zero = false;
        }
    }
    Ok(CotangentVanishing {
        h_mid_all_zero: first_mid.is_none(),
        h_top_zero_when_mid_zero: top_all_zero,
        first_mid_nonvanishing: first_mid,
    })
}
