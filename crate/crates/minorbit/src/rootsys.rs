//! Exact rational realizations of the simple root systems.
//!
//! Every supported type is realized in standard coordinates: the classical
//! families A/B/C/D with roots `e_i - e_j`, `±e_i ± e_j`, `e_i`, `2e_i`;
//! E6 and E7 inside R^8 cut out by `x6 = x7 = -x8` and `x7 = -x8`; E8 in R^8;
//! F4 in R^4; G2 in the plane `x1 + x2 + x3 = 0` of R^3. Simple-root indexing
//! for the exceptional types follows the usual Dynkin-diagram labels, so the
//! entries of classification tables are positionally meaningful.
//!
//! Positive roots are generated from the simple roots by the root-string
//! closure rule and stored sorted by (height, coordinates), which makes every
//! downstream enumeration deterministic. Alongside the ambient coordinates
//! the module keeps the integral expansion of every positive root over the
//! simple roots and of every positive coroot over the simple coroots.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::ratvec::{rat, ratio, solve_linear, RatVec};
use crate::Rat;

#[derive(Debug, Error)]
pub enum RootSystemError {
    #[error("inadmissible type {family}{rank}: {constraint}")]
    InadmissibleType {
        family: Family,
        rank: usize,
        constraint: &'static str,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} is not a root of this system")]
    NotARoot(RatVec),
    #[error("Levi fundamental weight index {index} out of range 1..={rank}")]
    LeviIndexOutOfRange { index: usize, rank: usize },
}

/// One of the seven families of simple root systems.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// An admissible (family, rank) pair.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    /// Validates admissibility: A n>=1, B n>=2, C n>=2, D n>=3, E n in {6,7,8},
    /// F n=4, G n=2.
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let constraint = match family {
            Family::A if rank >= 1 => None,
            Family::A => Some("A requires rank >= 1"),
            Family::B if rank >= 2 => None,
            Family::B => Some("B requires rank >= 2"),
            Family::C if rank >= 2 => None,
            Family::C => Some("C requires rank >= 2"),
            Family::D if rank >= 3 => None,
            Family::D => Some("D requires rank >= 3"),
            Family::E if (6..=8).contains(&rank) => None,
            Family::E => Some("E requires rank in {6, 7, 8}"),
            Family::F if rank == 4 => None,
            Family::F => Some("F requires rank 4"),
            Family::G if rank == 2 => None,
            Family::G => Some("G requires rank 2"),
        };
        match constraint {
            None => Ok(SimpleType { family, rank }),
            Some(constraint) => Err(RootSystemError::InadmissibleType {
                family,
                rank,
                constraint,
            }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self.family, Family::E | Family::F | Family::G)
    }

    pub fn is_classical(&self) -> bool {
        !self.is_exceptional()
    }

    /// Parses labels like "E6", "a3".
    pub fn parse(s: &str) -> Option<SimpleType> {
        let mut chars = s.chars();
        let family = Family::from_letter(chars.next()?)?;
        let rank: usize = chars.as_str().parse().ok()?;
        SimpleType::new(family, rank).ok()
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Pairing of a weight with a covector: the ambient inner product, with a
/// dimension check. Bilinear and exact.
pub fn pair(lambda: &RatVec, covector: &RatVec) -> Result<Rat, RootSystemError> {
    if lambda.dim() != covector.dim() {
        return Err(RootSystemError::DimensionMismatch {
            expected: lambda.dim(),
            got: covector.dim(),
        });
    }
    Ok(lambda.dot(covector))
}

/// Exact realization of a simple root system.
pub struct RootSystem {
    kind: SimpleType,
    ambient_dim: usize,
    simple_roots: Vec<RatVec>,
    /// Positive roots sorted by (height, ambient coordinates).
    positive_roots: Vec<RatVec>,
    positive_coroots: Vec<RatVec>,
    /// Row i: expansion of positive_roots[i] over the simple roots.
    simple_expansion: Vec<Vec<i64>>,
    /// Row i: expansion of positive_roots[i]'s coroot over the simple coroots.
    coroot_matrix: Vec<Vec<i64>>,
    theta_index: usize,
    theta: RatVec,
    theta_covector: RatVec,
    rho: RatVec,
}

impl RootSystem {
    pub fn build(kind: SimpleType) -> Result<RootSystem, RootSystemError> {
        let simple_roots = simple_roots_for(kind);
        let ambient_dim = simple_roots[0].dim();

        let (positive_roots, simple_expansion) = generate_positive_roots(&simple_roots);

        // theta is the unique root of maximal height, and dominates every
        // positive root coefficientwise.
        let heights: Vec<i64> = simple_expansion.iter().map(|e| e.iter().sum()).collect();
        let max_h = *heights.iter().max().expect("nonempty root system");
        let maximal: Vec<usize> = (0..heights.len())
            .filter(|&i| heights[i] == max_h)
            .collect();
        assert_eq!(maximal.len(), 1, "highest root must be unique");
        let theta_index = maximal[0];
        let theta = positive_roots[theta_index].clone();
        for exp in &simple_expansion {
            for (c, t) in exp.iter().zip(&simple_expansion[theta_index]) {
                assert!(c <= t, "highest root must dominate all positive roots");
            }
        }

        let theta_covector = coroot_of(&theta);
        let positive_coroots: Vec<RatVec> = positive_roots.iter().map(coroot_of).collect();

        let mut rho_sum = RatVec::zero(ambient_dim);
        for beta in &positive_roots {
            rho_sum = &rho_sum + beta;
        }
        let rho = rho_sum.scale(&ratio(1, 2));

        // beta^vee = sum_i m_i (alpha_i, alpha_i)/(beta, beta) alpha_i^vee,
        // always with integer coefficients.
        let mut coroot_matrix = Vec::with_capacity(positive_roots.len());
        for (beta, exp) in positive_roots.iter().zip(&simple_expansion) {
            let beta_norm = beta.norm_sq();
            let row: Vec<i64> = exp
                .iter()
                .zip(&simple_roots)
                .map(|(&m, alpha)| {
                    let c = &(rat(m) * alpha.norm_sq()) / &beta_norm;
                    assert!(c.is_integer(), "coroot expansion must be integral");
                    int_value(&c)
                })
                .collect();
            coroot_matrix.push(row);
        }

        Ok(RootSystem {
            kind,
            ambient_dim,
            simple_roots,
            positive_roots,
            positive_coroots,
            simple_expansion,
            coroot_matrix,
            theta_index,
            theta,
            theta_covector,
            rho,
        })
    }

    pub fn kind(&self) -> SimpleType {
        self.kind
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.kind.rank
    }

    pub fn simple_roots(&self) -> &[RatVec] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[RatVec] {
        &self.positive_roots
    }

    /// Coroots of the positive roots, in matching order.
    pub fn positive_coroots(&self) -> &[RatVec] {
        &self.positive_coroots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// The highest root. `theta - beta` is a nonnegative combination of
    /// simple roots for every positive root `beta` (checked at build time).
    pub fn highest_root(&self) -> &RatVec {
        &self.theta
    }

    pub fn theta_covector(&self) -> &RatVec {
        &self.theta_covector
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> &RatVec {
        &self.rho
    }

    /// Expansion of each positive coroot over the simple coroots; row order
    /// matches `positive_roots`.
    pub fn coroot_matrix(&self) -> &[Vec<i64>] {
        &self.coroot_matrix
    }

    /// Expansion of each positive root over the simple roots.
    pub fn simple_expansion(&self) -> &[Vec<i64>] {
        &self.simple_expansion
    }

    pub fn is_root(&self, v: &RatVec) -> bool {
        self.positive_roots.iter().any(|b| b == v) || {
            let neg = -v;
            self.positive_roots.contains(&neg)
        }
    }

    /// The coroot `2 beta / (beta, beta)` of a root of this system.
    pub fn coroot(&self, beta: &RatVec) -> Result<RatVec, RootSystemError> {
        if !self.is_root(beta) {
            return Err(RootSystemError::NotARoot(beta.clone()));
        }
        Ok(coroot_of(beta))
    }

    /// Integral expansion of `theta^vee` over the simple coroots.
    pub fn theta_covector_simple_expansion(&self) -> &[i64] {
        &self.coroot_matrix[self.theta_index]
    }

    /// Indices of the simple roots not orthogonal to theta. A single index
    /// for every type except A_n (n >= 2), where both end nodes pair with
    /// theta.
    pub fn non_levi_simple_indices(&self) -> Vec<usize> {
        self.simple_roots
            .iter()
            .enumerate()
            .filter(|(_, alpha)| !alpha.dot(&self.theta).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// The subsystem orthogonal to the highest root, with classified type and
    /// intrinsic fundamental weights.
    pub fn levi_subsystem(&self) -> LeviData {
        let levi_indices = levi_simple_indices(self);
        let simple_roots_levi: Vec<RatVec> = levi_indices
            .iter()
            .map(|&i| self.simple_roots[i].clone())
            .collect();

        let mut positive_roots_levi = Vec::new();
        let mut complement_roots = Vec::new();
        for beta in &self.positive_roots {
            if beta.dot(&self.theta).is_zero() {
                positive_roots_levi.push(beta.clone());
            } else {
                complement_roots.push(beta.clone());
            }
        }

        let classified_type = classify_components(&simple_roots_levi);
        let fundamental_weights = levi_fundamental_weights(&simple_roots_levi);

        LeviData {
            simple_indices: levi_indices,
            simple_roots_levi,
            positive_roots_levi,
            complement_roots,
            classified_type,
            fundamental_weights,
        }
    }
}

/// The subsystem of roots orthogonal to the highest root.
pub struct LeviData {
    /// Indices into the parent's simple roots, in the order the classification
    /// tables use (ascending diagram order; F4 lists its C3 chain from the
    /// short end).
    simple_indices: Vec<usize>,
    simple_roots_levi: Vec<RatVec>,
    positive_roots_levi: Vec<RatVec>,
    complement_roots: Vec<RatVec>,
    classified_type: Vec<SimpleType>,
    fundamental_weights: Vec<RatVec>,
}

impl LeviData {
    pub fn rank(&self) -> usize {
        self.simple_roots_levi.len()
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple_indices
    }

    pub fn simple_roots(&self) -> &[RatVec] {
        &self.simple_roots_levi
    }

    pub fn positive_roots(&self) -> &[RatVec] {
        &self.positive_roots_levi
    }

    /// Positive roots with strictly positive pairing against theta^vee.
    pub fn complement_roots(&self) -> &[RatVec] {
        &self.complement_roots
    }

    pub fn classified_type(&self) -> &[SimpleType] {
        &self.classified_type
    }

    pub fn classified_type_label(&self) -> String {
        if self.classified_type.is_empty() {
            "trivial".to_string()
        } else {
            self.classified_type
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join("+")
        }
    }

    /// All intrinsic fundamental weights, aligned with `simple_indices`.
    pub fn fundamental_weights(&self) -> &[RatVec] {
        &self.fundamental_weights
    }

    /// The i-th intrinsic fundamental weight, 1-based as in the tables.
    pub fn fundamental_weight(&self, i: usize) -> Result<&RatVec, RootSystemError> {
        if i == 0 || i > self.rank() {
            return Err(RootSystemError::LeviIndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(&self.fundamental_weights[i - 1])
    }
}

fn int_value(r: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    r.to_integer().to_i64().expect("coefficient fits in i64")
}

fn coroot_of(beta: &RatVec) -> RatVec {
    let two_over_norm = &rat(2) / &beta.norm_sq();
    beta.scale(&two_over_norm)
}

fn simple_roots_for(kind: SimpleType) -> Vec<RatVec> {
    let n = kind.rank();
    match kind.family() {
        Family::A => {
            // ambient R^{n+1}, alpha_i = e_i - e_{i+1}
            (0..n).map(|i| unit_diff(n + 1, i, i + 1)).collect()
        }
        Family::B => {
            let mut v: Vec<RatVec> = (0..n - 1).map(|i| unit_diff(n, i, i + 1)).collect();
            v.push(unit(n, n - 1));
            v
        }
        Family::C => {
            let mut v: Vec<RatVec> = (0..n - 1).map(|i| unit_diff(n, i, i + 1)).collect();
            v.push(unit(n, n - 1).scale(&rat(2)));
            v
        }
        Family::D => {
            let mut v: Vec<RatVec> = (0..n - 1).map(|i| unit_diff(n, i, i + 1)).collect();
            v.push(&unit(n, n - 2) + &unit(n, n - 1));
            v
        }
        Family::E => {
            // alpha_1 = (e1 - e2 - ... - e7 + e8)/2, alpha_2 = e1 + e2,
            // alpha_k = e_{k-2} - e_{k-3} for k >= 3 (1-based coordinates).
            let mut v = vec![
                RatVec::from_ratios(&[1, -1, -1, -1, -1, -1, -1, 1], 2),
                &unit(8, 0) + &unit(8, 1),
            ];
            for k in 3..=n {
                v.push(unit_diff(8, k - 2, k - 3));
            }
            v
        }
        Family::F => vec![
            unit_diff(4, 1, 2),
            unit_diff(4, 2, 3),
            unit(4, 3),
            RatVec::from_ratios(&[1, -1, -1, -1], 2),
        ],
        Family::G => vec![unit_diff(3, 0, 1), RatVec::from_ints(&[-2, 1, 1])],
    }
}

fn unit(dim: usize, i: usize) -> RatVec {
    let mut coords = vec![0i64; dim];
    coords[i] = 1;
    RatVec::from_ints(&coords)
}

fn unit_diff(dim: usize, i: usize, j: usize) -> RatVec {
    let mut coords = vec![0i64; dim];
    coords[i] = 1;
    coords[j] = -1;
    RatVec::from_ints(&coords)
}

/// Root-string closure: a positive root of height h+1 is beta + alpha_i for
/// some positive root beta of height h, and beta + alpha_i is a root exactly
/// when the alpha_i-string through beta extends upward, i.e. when
/// p - <beta, alpha_i^vee> > 0 with p the depth of the string below beta.
fn generate_positive_roots(simples: &[RatVec]) -> (Vec<RatVec>, Vec<Vec<i64>>) {
    let rank = simples.len();
    let coroots: Vec<RatVec> = simples.iter().map(coroot_of).collect();

    let mut known: HashMap<RatVec, Vec<i64>> = HashMap::new();
    let mut by_height: Vec<Vec<RatVec>> = vec![Vec::new()];
    for (i, alpha) in simples.iter().enumerate() {
        let mut exp = vec![0i64; rank];
        exp[i] = 1;
        known.insert(alpha.clone(), exp);
        by_height[0].push(alpha.clone());
    }

    let mut h = 0;
    while !by_height[h].is_empty() {
        let mut next = Vec::new();
        let current = by_height[h].clone();
        for beta in &current {
            for (i, alpha) in simples.iter().enumerate() {
                let candidate = beta + alpha;
                if known.contains_key(&candidate) {
                    continue;
                }
                let mut p = 0i64;
                let mut down = beta - alpha;
                while known.contains_key(&down) {
                    p += 1;
                    down = &down - alpha;
                }
                let q = rat(p) - beta.dot(&coroots[i]);
                if q.is_positive() {
                    let mut exp = known[beta].clone();
                    exp[i] += 1;
                    known.insert(candidate.clone(), exp);
                    next.push(candidate);
                }
            }
        }
        by_height.push(next);
        h += 1;
    }

    let mut roots: Vec<(i64, RatVec)> = known
        .iter()
        .map(|(root, exp)| (exp.iter().sum::<i64>(), root.clone()))
        .collect();
    roots.sort();
    let positive: Vec<RatVec> = roots.into_iter().map(|(_, r)| r).collect();
    let expansions: Vec<Vec<i64>> = positive.iter().map(|r| known[r].clone()).collect();
    (positive, expansions)
}

/// Levi simple-root indices in classification-table order.
fn levi_simple_indices(rs: &RootSystem) -> Vec<usize> {
    if rs.kind() == SimpleType::new(Family::F, 4).unwrap() {
        // The tables list the C3 chain from its short end: alpha4, alpha3, alpha2.
        return vec![3, 2, 1];
    }
    rs.simple_roots
        .iter()
        .enumerate()
        .filter(|(_, alpha)| alpha.dot(&rs.theta).is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// Classifies a set of simple roots into connected Dynkin components.
/// Low-rank coincidences are reported canonically: rank-1 components are A1,
/// a simply-laced path is A_n, a rank-2 double edge is B2 when its first
/// listed simple is the long one and C2 otherwise.
fn classify_components(simples: &[RatVec]) -> Vec<SimpleType> {
    let n = simples.len();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut frontier = vec![start];
        while let Some(i) = frontier.pop() {
            for j in 0..n {
                if !seen[j] && !simples[i].dot(&simples[j]).is_zero() {
                    seen[j] = true;
                    comp.push(j);
                    frontier.push(j);
                }
            }
        }
        comp.sort();
        components.push(classify_component(simples, &comp));
    }
    components.sort();
    components
}

fn classify_component(simples: &[RatVec], comp: &[usize]) -> SimpleType {
    let rank = comp.len();
    let ty = |f: Family, r: usize| SimpleType::new(f, r).expect("classified type admissible");
    if rank == 1 {
        return ty(Family::A, 1);
    }

    // bond_ij = <b_i, b_j^vee><b_j, b_i^vee> in {0, 1, 2, 3}
    let bond = |i: usize, j: usize| -> i64 {
        let bi = &simples[comp[i]];
        let bj = &simples[comp[j]];
        let prod = &(&(bi.dot(bj) * bi.dot(bj)) * &rat(4)) / &(bi.norm_sq() * bj.norm_sq());
        assert!(prod.is_integer());
        int_value(&prod)
    };
    let max_bond = (0..rank)
        .flat_map(|i| (i + 1..rank).map(move |j| (i, j)))
        .map(|(i, j)| bond(i, j))
        .max()
        .unwrap();

    if max_bond == 3 {
        assert_eq!(rank, 2);
        return ty(Family::G, 2);
    }
    if max_bond == 2 {
        let max_norm = comp.iter().map(|&i| simples[i].norm_sq()).max().unwrap();
        let long_count = comp
            .iter()
            .filter(|&&i| simples[i].norm_sq() == max_norm)
            .count();
        if rank == 2 {
            return if simples[comp[0]].norm_sq() == max_norm {
                ty(Family::B, 2)
            } else {
                ty(Family::C, 2)
            };
        }
        if rank == 4 && long_count == 2 {
            return ty(Family::F, 4);
        }
        return if long_count == 1 {
            ty(Family::C, rank)
        } else {
            ty(Family::B, rank)
        };
    }

    // Simply laced: a path is A_n, one degree-3 node gives D or E.
    let degree: Vec<usize> = (0..rank)
        .map(|i| (0..rank).filter(|&j| j != i && bond(i, j) > 0).count())
        .collect();
    let branch_nodes: Vec<usize> = (0..rank).filter(|&i| degree[i] == 3).collect();
    if branch_nodes.is_empty() {
        return ty(Family::A, rank);
    }
    assert_eq!(branch_nodes.len(), 1, "unrecognized simply-laced diagram");
    let b = branch_nodes[0];
    let mut arms: Vec<usize> = (0..rank)
        .filter(|&j| j != b && bond(b, j) > 0)
        .map(|j| {
            // walk away from the branch node
            let mut len = 1;
            let mut prev = b;
            let mut cur = j;
            loop {
                let next = (0..rank).find(|&k| k != prev && k != cur && bond(cur, k) > 0);
                match next {
                    Some(k) => {
                        len += 1;
                        prev = cur;
                        cur = k;
                    }
                    None => break,
                }
            }
            len
        })
        .collect();
    arms.sort();
    match arms.as_slice() {
        [1, 1, _] => ty(Family::D, rank),
        [1, 2, k] if (2..=4).contains(k) => ty(Family::E, rank),
        _ => panic!("unrecognized simply-laced diagram with arms {:?}", arms),
    }
}

/// Solves <w_i, b_j^vee> = delta_ij inside the span of the Levi simple roots.
fn levi_fundamental_weights(simples: &[RatVec]) -> Vec<RatVec> {
    let n = simples.len();
    if n == 0 {
        return Vec::new();
    }
    let coroots: Vec<RatVec> = simples.iter().map(coroot_of).collect();
    // matrix[j][k] = <b_k, b_j^vee>
    let matrix: Vec<Vec<Rat>> = (0..n)
        .map(|j| (0..n).map(|k| simples[k].dot(&coroots[j])).collect())
        .collect();
    (0..n)
        .map(|i| {
            let mut rhs = vec![Rat::zero(); n];
            rhs[i] = rat(1);
            let x = solve_linear(&matrix, &rhs).expect("Cartan matrix is invertible");
            let mut w = RatVec::zero(simples[0].dim());
            for (c, b) in x.iter().zip(simples) {
                w = &w + &b.scale(c);
            }
            w
        })
        .collect()
}
