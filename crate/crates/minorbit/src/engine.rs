//! The uniform Cohen-Macaulay decision oracle and the classification tools
//! built on it.
//!
//! A sheaf is maximal Cohen-Macaulay exactly when every member of its weight
//! family has vanishing cohomology in the intermediate range 1..=d-2, d the
//! orbit dimension: each profile must be singular or concentrated in degree 0
//! or d-1. The oracle scans the family's finite window, keeps the full trace,
//! and verifies at both window edges that the profiles have reached the
//! extreme degrees.
//!
//! For exceptional types the same condition reduces to a finite integer
//! check. Writing each complement coroot as c_m alpha_m^vee plus a Levi part,
//! the pairing of the k-th family member is c_m k + t_beta with t_beta a
//! nonnegative integer determined by the coefficient tuple; the family is
//! Cohen-Macaulay exactly when every integer from 1 to floor(max t_beta/c_m)
//! is hit by some exact quotient t_beta/c_m. That kernel drives the bounded
//! enumeration behind the classification tables.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bwb::{cohomology_profile, BwbError, CohomologyProfile};
use crate::criteria::{self, CriteriaError};
use crate::families::{FamilyContext, FamilyError, StabilizerWeight};
use crate::ratvec::RatVec;
use crate::rootsys::Family;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Bwb(#[from] BwbError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error("scan window bug at parameter {param}: {detail}")]
    ScanWindow { param: i64, detail: String },
    #[error("enumeration needs an exceptional type, got {0}")]
    NotExceptional(String),
    #[error("classical enumeration is box-relative; pass an explicit box bound")]
    NeedExplicitBox,
    #[error("coefficient ceiling {ceiling} reached with weight {weight:?} on the boundary shell")]
    CoeffCeiling { weight: Vec<i64>, ceiling: i64 },
    #[error("cross-check needs a classical family, got {0}")]
    NotClassical(String),
    #[error("the Spin sublattice only exists for types B and D")]
    SpinUnsupported,
}

/// One scanned family member.
#[derive(Clone, Debug, Serialize)]
pub struct TraceEntry {
    pub param: i64,
    pub weight: RatVec,
    pub profile: CohomologyProfile,
}

/// Oracle verdict with the full witness trace.
#[derive(Debug)]
pub struct McmVerdict {
    pub is_mcm: bool,
    pub trace: Vec<TraceEntry>,
    /// First parameter whose profile lands strictly inside 1..=d-2.
    pub first_violation: Option<(i64, usize)>,
}

/// Decides the Cohen-Macaulay property by scanning the weight family through
/// the vanishing dichotomy.
pub fn mcm_oracle(ctx: &FamilyContext, w: &StabilizerWeight) -> Result<McmVerdict, EngineError> {
    let family = ctx.family(w)?;
    let d = ctx.min_orbit_dim();
    let rs = ctx.root_system();

    let mut trace = Vec::new();
    let mut first_violation = None;
    for param in family.scan_params() {
        let weight = family.member(param)?;
        let profile = cohomology_profile(rs, &weight)?;
        if first_violation.is_none() {
            if let Some(q) = profile.degree() {
                if q >= 1 && q <= d - 2 {
                    first_violation = Some((param, q));
                }
            }
        }
        trace.push(TraceEntry {
            param,
            weight,
            profile,
        });
    }

    // Beyond the window every profile must already sit at an extreme degree;
    // anything else means the window bound is wrong, which is a bug worth
    // surfacing loudly.
    let (below, above) = family.params_beyond();
    for param in [below, above] {
        let profile = cohomology_profile(rs, &family.member(param)?)?;
        match profile.degree() {
            Some(0) => {}
            Some(q) if q == d - 1 => {}
            other => {
                return Err(EngineError::ScanWindow {
                    param,
                    detail: format!("expected degree 0 or {}, got {:?}", d - 1, other),
                })
            }
        }
    }

    Ok(McmVerdict {
        is_mcm: first_violation.is_none(),
        trace,
        first_violation,
    })
}

/// Matching closed-form verdict, when the type has one (A needs rank >= 2).
pub fn closed_form_verdict(
    ctx: &FamilyContext,
    w: &StabilizerWeight,
) -> Result<Option<bool>, EngineError> {
    let n = ctx.kind().rank();
    let verdict = match (ctx.kind().family(), w) {
        (Family::A, StabilizerWeight::TypeA { lambda, levi }) if n >= 2 => {
            Some(criteria::mcm_closed_a(n, *lambda, levi)?)
        }
        (Family::C, StabilizerWeight::TypeC { lambda0, levi }) => {
            Some(criteria::mcm_closed_c(n, *lambda0, levi)?)
        }
        (Family::B, StabilizerWeight::TypeBD { lambda, levi_x2 }) if n >= 3 => {
            Some(criteria::mcm_closed_b(n, *lambda, levi_x2)?)
        }
        (Family::D, StabilizerWeight::TypeBD { lambda, levi_x2 }) if n >= 3 => {
            Some(criteria::mcm_closed_d(n, *lambda, levi_x2)?)
        }
        _ => None,
    };
    Ok(verdict)
}

/// Closed-form vs oracle comparison over a coordinate box.
#[derive(Debug, Serialize)]
pub struct Disagreement {
    pub rank: usize,
    pub weight: String,
    pub closed_form: bool,
    pub oracle: bool,
}

#[derive(Debug, Serialize)]
pub struct CrosscheckReport {
    pub family: String,
    pub rank_lo: usize,
    pub rank_hi: usize,
    pub box_bound: i64,
    pub spin: bool,
    pub total_weights: usize,
    pub disagreements: Vec<Disagreement>,
}

/// Compares the closed-form criterion with the vanishing oracle on every
/// dominant stabilizer weight with coordinates bounded by `box_bound`.
/// With `spin` set (types B and D) the Levi entries run over the genuinely
/// half-integral coset instead.
pub fn crosscheck(
    family: Family,
    ranks: RangeInclusive<usize>,
    box_bound: i64,
    spin: bool,
) -> Result<CrosscheckReport, EngineError> {
    if !matches!(family, Family::A | Family::B | Family::C | Family::D) {
        return Err(EngineError::NotClassical(family.to_string()));
    }
    if spin && !matches!(family, Family::B | Family::D) {
        return Err(EngineError::SpinUnsupported);
    }
    // the closed forms need rank >= 2 in type A and rank >= 3 in B/D
    let min_rank = match family {
        Family::A | Family::C => 2,
        _ => 3,
    };
    if *ranks.start() < min_rank {
        return Err(EngineError::Family(FamilyError::UnsupportedKind(format!(
            "type {family} cross-checks need rank >= {min_rank}"
        ))));
    }

    let mut total = 0;
    let mut disagreements = Vec::new();
    for rank in ranks.clone() {
        let kind = crate::rootsys::SimpleType::new(family, rank).map_err(FamilyError::from)?;
        let ctx = FamilyContext::new(kind)?;
        let weights = box_weights(family, rank, box_bound, spin);
        total += weights.len();
        let results: Result<Vec<Option<Disagreement>>, EngineError> = weights
            .par_iter()
            .map(|w| {
                let closed = closed_form_verdict(&ctx, w)?
                    .expect("classical weights always have a closed form");
                let oracle = mcm_oracle(&ctx, w)?.is_mcm;
                Ok((closed != oracle).then(|| Disagreement {
                    rank,
                    weight: w.to_string(),
                    closed_form: closed,
                    oracle,
                }))
            })
            .collect();
        disagreements.extend(results?.into_iter().flatten());
    }

    Ok(CrosscheckReport {
        family: family.to_string(),
        rank_lo: *ranks.start(),
        rank_hi: *ranks.end(),
        box_bound,
        spin,
        total_weights: total,
        disagreements,
    })
}

/// Weakly decreasing `len`-tuples over the (descending) value list.
fn decreasing_tuples(len: usize, values: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(
        values: &[i64],
        from: usize,
        len: usize,
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for i in from..values.len() {
            current.push(values[i]);
            rec(values, i, len, current, out);
            current.pop();
        }
    }
    rec(values, 0, len, &mut current, &mut out);
    out
}

/// All dominant stabilizer weights of the given classical type with
/// coordinates bounded by `bound`.
fn box_weights(family: Family, rank: usize, bound: i64, spin: bool) -> Vec<StabilizerWeight> {
    let mut out = Vec::new();
    match family {
        Family::A => {
            let values: Vec<i64> = (-bound..=bound).rev().collect();
            for levi in decreasing_tuples(rank - 1, &values) {
                for lambda in -bound..=bound {
                    out.push(StabilizerWeight::type_a(lambda, levi.clone()));
                }
            }
        }
        Family::C => {
            let values: Vec<i64> = (0..=bound).rev().collect();
            for levi in decreasing_tuples(rank - 1, &values) {
                for lambda0 in 0..=1u8 {
                    out.push(StabilizerWeight::type_c(lambda0, levi.clone()));
                }
            }
        }
        Family::B => {
            let values = doubled_values(bound, spin, false);
            for levi_x2 in decreasing_tuples(rank - 2, &values) {
                for lambda in 0..=bound {
                    out.push(StabilizerWeight::type_bd_doubled(lambda, levi_x2.clone()));
                }
            }
        }
        Family::D => {
            // the last entry may be negative as long as it is dominated in
            // absolute value (unconstrained in rank 3)
            let values = doubled_values(bound, spin, false);
            for head in decreasing_tuples(rank - 3, &values) {
                let cap = head.last().copied().unwrap_or(2 * bound);
                let tail = doubled_values(bound, spin, true);
                for &last in tail.iter().filter(|&&t| t.abs() <= cap) {
                    let mut levi_x2 = head.clone();
                    levi_x2.push(last);
                    for lambda in 0..=bound {
                        out.push(StabilizerWeight::type_bd_doubled(lambda, levi_x2.clone()));
                    }
                }
            }
        }
        _ => unreachable!("guarded by crosscheck"),
    }
    out
}

/// Doubled coordinate values down from the box bound: even for the integer
/// lattice, odd for the Spin coset.
fn doubled_values(bound: i64, spin: bool, signed: bool) -> Vec<i64> {
    let lo = if signed { -2 * bound } else { 0 };
    (lo..=2 * bound)
        .rev()
        .filter(|v| {
            if spin {
                v.rem_euclid(2) == 1
            } else {
                v.rem_euclid(2) == 0
            }
        })
        .collect()
}

/// Classification table of Cohen-Macaulay weights.
#[derive(Debug, Clone, Serialize, serde::Deserialize)]
pub struct McmTable {
    pub schema_version: u32,
    pub r#type: String,
    pub rank: usize,
    pub coeff_bound: i64,
    pub box_relative: bool,
    pub levi_type: String,
    pub count: usize,
    pub weights: Vec<Vec<i64>>,
    #[serde(skip)]
    pub columns: Vec<String>,
}

/// Serialization formats for [`McmTable`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableFormat {
    Json,
    Csv,
    Text,
}

impl TableFormat {
    pub fn parse(s: &str) -> Option<TableFormat> {
        match s {
            "json" => Some(TableFormat::Json),
            "csv" => Some(TableFormat::Csv),
            "text" => Some(TableFormat::Text),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            TableFormat::Json => "json",
            TableFormat::Csv => "csv",
            TableFormat::Text => "txt",
        }
    }
}

/// Integer kernel for the exceptional Cohen-Macaulay check: per complement
/// root, the coefficient on the non-Levi simple coroot and the Levi part of
/// the coroot expansion, in table order.
///
/// Roots are grouped by their non-Levi coefficient c in {1, 2, 3} (bounded by
/// the affine-adjacent mark of theta^vee in the dual system), so the quotient
/// tests need no general division. `cols[k][r]` is the Levi column for
/// coefficient k at root r, with the roots laid out group 1, group 2,
/// group 3.
struct ExceptionalKernel {
    rank: usize,
    n1: usize,
    n2: usize,
    cols: Vec<Vec<i64>>,
}

impl ExceptionalKernel {
    fn new(ctx: &FamilyContext) -> Result<ExceptionalKernel, EngineError> {
        if !ctx.kind().is_exceptional() {
            return Err(EngineError::NotExceptional(ctx.kind().to_string()));
        }
        let rs = ctx.root_system();
        let non_levi = rs.non_levi_simple_indices();
        assert_eq!(non_levi.len(), 1);
        let m = non_levi[0];
        let levi_order = ctx.levi().simple_indices().to_vec();
        let rank = levi_order.len();

        let mut grouped: [Vec<Vec<i64>>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        let theta_cov = rs.theta_covector();
        for (idx, beta) in rs.positive_roots().iter().enumerate() {
            if beta.dot(theta_cov).is_zero() {
                continue;
            }
            let row = &rs.coroot_matrix()[idx];
            let c = row[m];
            assert!((1..=3).contains(&c), "unexpected non-Levi coefficient {c}");
            grouped[(c - 1) as usize].push(levi_order.iter().map(|&i| row[i]).collect());
        }
        let (n1, n2) = (grouped[0].len(), grouped[1].len());
        let total = n1 + n2 + grouped[2].len();
        assert!(total < 64, "coverage bitset assumes fewer than 64 roots");
        let mut cols = vec![vec![0i64; total]; rank];
        for (r, root_cols) in grouped.iter().flatten().enumerate() {
            for k in 0..rank {
                cols[k][r] = root_cols[k];
            }
        }
        Ok(ExceptionalKernel { rank, n1, n2, cols })
    }

    /// t_beta for every complement root at the given coefficient tuple,
    /// in kernel layout.
    fn pairings(&self, coeffs: &[i64]) -> Vec<i64> {
        let total = self.cols[0].len();
        let mut t = vec![0i64; total];
        for (k, col) in self.cols.iter().enumerate() {
            for (tv, c) in t.iter_mut().zip(col) {
                *tv += c * (coeffs[k] + 1);
            }
        }
        t
    }

    /// Every integer 1..=floor(max t/c) must be an exact quotient t/c.
    fn covered(&self, t: &[i64]) -> bool {
        let mut bits: u64 = 0;
        let mut m_floor: i64 = 0;
        for &v in &t[..self.n1] {
            if v > m_floor {
                m_floor = v;
            }
            if (1..64).contains(&v) {
                bits |= 1u64 << v;
            }
        }
        for &v in &t[self.n1..self.n1 + self.n2] {
            let q = v >> 1;
            if q > m_floor {
                m_floor = q;
            }
            if v & 1 == 0 && (1..64).contains(&q) {
                bits |= 1u64 << q;
            }
        }
        for &v in &t[self.n1 + self.n2..] {
            let q = v / 3;
            if q > m_floor {
                m_floor = q;
            }
            if v % 3 == 0 && (1..64).contains(&q) {
                bits |= 1u64 << q;
            }
        }
        if m_floor as usize > t.len() {
            // more targets than there are complement roots; cannot be covered
            return false;
        }
        if m_floor <= 0 {
            return true;
        }
        let mask = (1u64 << (m_floor + 1)) - 2;
        bits & mask == mask
    }

    fn is_mcm(&self, coeffs: &[i64]) -> bool {
        self.covered(&self.pairings(coeffs))
    }

    /// Lexicographic scan of all tuples with entries 0..=bound, keeping the
    /// passing ones. Parallel over the first coordinate; the merge preserves
    /// lexicographic order, so the result is deterministic.
    fn scan(&self, bound: i64) -> Vec<Vec<i64>> {
        let chunks: Vec<Vec<Vec<i64>>> = (0..=bound)
            .into_par_iter()
            .map(|first| self.scan_from(bound, first))
            .collect();
        chunks.into_iter().flatten().collect()
    }

    /// Odometer over levels 1..rank with the first coefficient pinned.
    /// buf[l] holds the pairings with coefficients 0..=l applied and deeper
    /// ones at zero, so bumping level l is one vector add.
    fn scan_from(&self, bound: i64, first: i64) -> Vec<Vec<i64>> {
        let total = self.cols[0].len();
        let mut out = Vec::new();
        let mut a = vec![0i64; self.rank];
        a[0] = first;
        let mut buf = vec![vec![0i64; total]; self.rank];
        for (v, c) in buf[0].iter_mut().zip(&self.cols[0]) {
            *v = c * (first + 1);
        }
        for l in 1..self.rank {
            let (head, tail) = buf.split_at_mut(l);
            for r in 0..total {
                tail[0][r] = head[l - 1][r] + self.cols[l][r];
            }
        }
        if self.rank == 1 {
            if self.covered(&buf[0]) {
                out.push(a.clone());
            }
            return out;
        }
        loop {
            if self.covered(&buf[self.rank - 1]) {
                out.push(a.clone());
            }
            // advance the odometer
            let mut l = self.rank - 1;
            loop {
                if a[l] < bound {
                    a[l] += 1;
                    for (tv, c) in buf[l].iter_mut().zip(&self.cols[l]) {
                        *tv += c;
                    }
                    break;
                }
                if l == 1 {
                    return out;
                }
                a[l] = 0;
                l -= 1;
            }
            // refresh the levels below the bumped one
            for m in l + 1..self.rank {
                let (head, tail) = buf.split_at_mut(m);
                for r in 0..total {
                    tail[0][r] = head[m - 1][r] + self.cols[m][r];
                }
            }
        }
    }
}

/// Reduced integer form of the exceptional Cohen-Macaulay check; equivalent
/// to [`mcm_oracle`] on exceptional weights and fast enough for full box
/// scans.
pub fn mcm_fast_exceptional(ctx: &FamilyContext, coeffs: &[i64]) -> Result<bool, EngineError> {
    let kernel = ExceptionalKernel::new(ctx)?;
    Ok(kernel.is_mcm(coeffs))
}

/// Enumerates all Cohen-Macaulay coefficient tuples of an exceptional type.
///
/// Scans the box 0..=coeff_bound per coefficient; if any passing weight
/// touches the boundary shell, the bound is doubled and the scan rerun, up to
/// `ceiling`.
pub fn enumerate_mcm(
    ctx: &FamilyContext,
    coeff_bound: i64,
    ceiling: i64,
) -> Result<McmTable, EngineError> {
    let kernel = ExceptionalKernel::new(ctx)?;
    let mut bound = coeff_bound;
    loop {
        let weights = kernel.scan(bound);
        let shell = weights.iter().find(|w| w.contains(&bound));
        match shell {
            None => {
                return Ok(make_table(ctx, bound, false, weights));
            }
            Some(w) if bound * 2 > ceiling => {
                return Err(EngineError::CoeffCeiling {
                    weight: w.clone(),
                    ceiling,
                });
            }
            Some(_) => bound *= 2,
        }
    }
}

/// Box-relative enumeration for a classical type over the integer lattice:
/// every dominant weight in the box is run through the oracle.
pub fn enumerate_box(ctx: &FamilyContext, box_bound: i64) -> Result<McmTable, EngineError> {
    let family = ctx.kind().family();
    if !ctx.kind().is_classical() {
        return Err(EngineError::NotExceptional(ctx.kind().to_string()));
    }
    let weights = box_weights(family, ctx.kind().rank(), box_bound, false);
    let rows: Result<Vec<Option<Vec<i64>>>, EngineError> = weights
        .par_iter()
        .map(|w| {
            let verdict = mcm_oracle(ctx, w)?;
            Ok(verdict.is_mcm.then(|| weight_row(w)))
        })
        .collect();
    let dedup: BTreeSet<Vec<i64>> = rows?.into_iter().flatten().collect();
    Ok(make_table(
        ctx,
        box_bound,
        true,
        dedup.into_iter().collect(),
    ))
}

fn weight_row(w: &StabilizerWeight) -> Vec<i64> {
    match w {
        StabilizerWeight::TypeA { lambda, levi } => {
            let mut row = vec![*lambda];
            row.extend(levi);
            row
        }
        StabilizerWeight::TypeC { lambda0, levi } => {
            let mut row = vec![i64::from(*lambda0)];
            row.extend(levi);
            row
        }
        StabilizerWeight::TypeBD { lambda, levi_x2 } => {
            let mut row = vec![*lambda];
            row.extend(levi_x2.iter().map(|x| x / 2));
            row
        }
        StabilizerWeight::Exceptional { coeffs } => coeffs.clone(),
    }
}

fn make_table(
    ctx: &FamilyContext,
    bound: i64,
    box_relative: bool,
    weights: Vec<Vec<i64>>,
) -> McmTable {
    let columns = if ctx.kind().is_exceptional() {
        (1..=ctx.levi().rank()).map(|i| format!("w{i}")).collect()
    } else {
        let mut cols = vec![if ctx.kind().family() == Family::C {
            "lambda0".to_string()
        } else {
            "lambda".to_string()
        }];
        let extra = match ctx.kind().family() {
            Family::A | Family::C => ctx.kind().rank() - 1,
            _ => ctx.kind().rank() - 2,
        };
        cols.extend((1..=extra).map(|i| format!("l{i}")));
        cols
    };
    McmTable {
        schema_version: 1,
        r#type: ctx.kind().family().to_string(),
        rank: ctx.kind().rank(),
        coeff_bound: bound,
        box_relative,
        levi_type: ctx.levi().classified_type_label(),
        count: weights.len(),
        weights,
        columns,
    }
}

/// Serializes a table deterministically: stable ordering, no timestamps.
pub fn emit_table(table: &McmTable, format: TableFormat) -> String {
    match format {
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(table).expect("table serializes");
            s.push('\n');
            s
        }
        TableFormat::Csv => {
            let mut s = format!(
                "# schema_version={} type={}{} levi={} bound={} count={}\n",
                table.schema_version,
                table.r#type,
                table.rank,
                table.levi_type,
                table.coeff_bound,
                table.count
            );
            s.push_str(&table.columns.join(","));
            s.push('\n');
            for row in &table.weights {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
        TableFormat::Text => {
            let mut s = format!(
                "{}{} minimal-orbit equivariant MCM weights (levi {}), count = {}\n",
                table.r#type, table.rank, table.levi_type, table.count
            );
            s.push_str(&format!("columns: {}\n", table.columns.join(" ")));
            if table.columns.len() == 1 {
                for row in &table.weights {
                    s.push_str(&format!("({})\n", row[0]));
                }
            } else {
                // grouped rows: fixed prefix, list of allowed last entries
                let mut i = 0;
                while i < table.weights.len() {
                    let prefix = &table.weights[i][..table.weights[i].len() - 1];
                    let mut lasts = Vec::new();
                    while i < table.weights.len()
                        && &table.weights[i][..table.weights[i].len() - 1] == prefix
                    {
                        lasts.push(table.weights[i][table.weights[i].len() - 1].to_string());
                        i += 1;
                    }
                    let prefix_str: Vec<String> = prefix.iter().map(|x| x.to_string()).collect();
                    s.push_str(&format!(
                        "({}) : {}\n",
                        prefix_str.join(","),
                        lasts.join(" ")
                    ));
                }
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::SimpleType;

    fn ctx(f: Family, r: usize) -> FamilyContext {
        FamilyContext::new(SimpleType::new(f, r).unwrap()).unwrap()
    }

    #[test]
    fn a2_oracle_reproduces_the_divisor_interval() {
        let ctx = ctx(Family::A, 2);
        for lambda in -4..=4 {
            let w = StabilizerWeight::type_a(lambda, vec![0]);
            let verdict = mcm_oracle(&ctx, &w).unwrap();
            assert_eq!(verdict.is_mcm, (-2..=2).contains(&lambda), "{lambda}");
            if lambda == 3 {
                let (_, q) = verdict.first_violation.unwrap();
                assert!((1..=2).contains(&q));
            }
        }
    }

    #[test]
    fn g2_oracle_matches_the_printed_classification() {
        let ctx = ctx(Family::G, 2);
        for a in 0..=6 {
            let w = StabilizerWeight::exceptional(vec![a]);
            assert_eq!(mcm_oracle(&ctx, &w).unwrap().is_mcm, a <= 2, "a = {a}");
        }
    }

    #[test]
    fn trace_extremes_sit_at_the_outer_degrees() {
        for (f, r, w) in [
            (Family::A, 3, StabilizerWeight::type_a(2, vec![1, 0])),
            (Family::C, 3, StabilizerWeight::type_c(1, vec![2, 0])),
            (Family::B, 4, StabilizerWeight::type_bd(1, vec![1, 0])),
            (
                Family::D,
                4,
                StabilizerWeight::type_bd_doubled(1, vec![1, 1]),
            ),
            (Family::F, 4, StabilizerWeight::exceptional(vec![1, 1, 0])),
        ] {
            let ctx = ctx(f, r);
            let d = ctx.min_orbit_dim();
            let verdict = mcm_oracle(&ctx, &w).unwrap();
            let first = verdict.trace.first().unwrap().profile.degree().unwrap();
            let last = verdict.trace.last().unwrap().profile.degree().unwrap();
            assert_eq!((first.min(last), first.max(last)), (0, d - 1), "{f}{r}");
        }
    }

    #[test]
    fn zero_weight_is_mcm_for_every_type_and_rank() {
        let mut cases: Vec<(Family, usize, StabilizerWeight)> = Vec::new();
        for n in 1..=8 {
            cases.push((Family::A, n, StabilizerWeight::type_a(0, vec![0; n - 1])));
        }
        for n in 2..=8 {
            cases.push((Family::C, n, StabilizerWeight::type_c(0, vec![0; n - 1])));
        }
        for n in 3..=8 {
            cases.push((Family::B, n, StabilizerWeight::type_bd(0, vec![0; n - 2])));
            cases.push((Family::D, n, StabilizerWeight::type_bd(0, vec![0; n - 2])));
        }
        for n in 6..=8 {
            cases.push((Family::E, n, StabilizerWeight::exceptional(vec![0; n - 1])));
        }
        cases.push((Family::F, 4, StabilizerWeight::exceptional(vec![0; 3])));
        cases.push((Family::G, 2, StabilizerWeight::exceptional(vec![0])));
        for (f, r, w) in cases {
            let ctx = ctx(f, r);
            assert!(mcm_oracle(&ctx, &w).unwrap().is_mcm, "{f}{r}");
        }
    }

    #[test]
    fn a1_is_always_mcm() {
        let ctx = ctx(Family::A, 1);
        for lambda in -6..=6 {
            let w = StabilizerWeight::type_a(lambda, vec![]);
            assert!(mcm_oracle(&ctx, &w).unwrap().is_mcm);
        }
    }

    #[test]
    fn fast_kernel_agrees_with_the_oracle() {
        for (f, r, boxes) in [
            (
                Family::G,
                2,
                vec![vec![0], vec![1], vec![2], vec![3], vec![5]],
            ),
            (
                Family::F,
                4,
                vec![
                    vec![0, 0, 0],
                    vec![5, 1, 0],
                    vec![4, 1, 0],
                    vec![2, 1, 1],
                    vec![3, 0, 0],
                ],
            ),
            (
                Family::E,
                6,
                vec![
                    vec![0, 0, 0, 0, 0],
                    vec![3, 1, 0, 0, 3],
                    vec![3, 1, 0, 0, 2],
                    vec![1, 1, 1, 0, 0],
                ],
            ),
        ] {
            let ctx = ctx(f, r);
            let kernel = ExceptionalKernel::new(&ctx).unwrap();
            for coeffs in boxes {
                let w = StabilizerWeight::exceptional(coeffs.clone());
                let slow = mcm_oracle(&ctx, &w).unwrap().is_mcm;
                let fast = kernel.is_mcm(&coeffs);
                assert_eq!(slow, fast, "{f}{r} {coeffs:?}");
            }
        }
    }

    #[test]
    fn g2_enumeration_gives_three_weights() {
        let ctx = ctx(Family::G, 2);
        let table = enumerate_mcm(&ctx, 16, 64).unwrap();
        assert_eq!(table.count, 3);
        assert_eq!(table.weights, vec![vec![0], vec![1], vec![2]]);
        let text = emit_table(&table, TableFormat::Text);
        let rows: Vec<&str> = text.lines().filter(|l| l.starts_with('(')).collect();
        assert_eq!(rows, vec!["(0)", "(1)", "(2)"]);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let ctx = ctx(Family::F, 4);
        let a = emit_table(&enumerate_mcm(&ctx, 16, 64).unwrap(), TableFormat::Json);
        let b = emit_table(&enumerate_mcm(&ctx, 16, 64).unwrap(), TableFormat::Json);
        assert_eq!(a, b);
    }

    #[test]
    fn empty_table_serializes_with_count_zero() {
        let ctx = ctx(Family::F, 4);
        let mut table = enumerate_mcm(&ctx, 16, 64).unwrap();
        table.weights.clear();
        table.count = 0;
        let json = emit_table(&table, TableFormat::Json);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["count"], 0);
        assert_eq!(parsed["weights"].as_array().unwrap().len(), 0);
        assert_eq!(parsed["schema_version"], 1);
    }

    #[test]
    fn crosscheck_small_boxes_have_no_disagreements() {
        let report = crosscheck(Family::A, 2..=2, 2, false).unwrap();
        assert!(report.disagreements.is_empty());
        assert!(report.total_weights > 0);

        let report = crosscheck(Family::C, 2..=3, 2, false).unwrap();
        assert!(report.disagreements.is_empty());

        let report = crosscheck(Family::D, 3..=4, 2, true).unwrap();
        assert!(report.disagreements.is_empty());

        let report = crosscheck(Family::A, 2..=2, 0, false).unwrap();
        assert_eq!(report.total_weights, 1);
        assert!(report.disagreements.is_empty());
    }

    #[test]
    fn crosscheck_rejects_bad_inputs() {
        assert!(matches!(
            crosscheck(Family::E, 6..=6, 2, false),
            Err(EngineError::NotClassical(_))
        ));
        assert!(matches!(
            crosscheck(Family::A, 2..=2, 2, true),
            Err(EngineError::SpinUnsupported)
        ));
        // below the closed forms' rank range
        assert!(crosscheck(Family::A, 1..=2, 2, false).is_err());
        assert!(crosscheck(Family::B, 2..=3, 2, false).is_err());
    }

    #[test]
    fn rank_two_bd_weights_are_rejected_cleanly() {
        let b2 = ctx(Family::B, 2);
        let w = StabilizerWeight::type_bd(1, vec![]);
        assert!(!b2.levi_dominant_check(&w));
        assert!(mcm_oracle(&b2, &w).is_err());
    }

    #[test]
    fn classical_box_enumeration_lists_the_divisor_range() {
        let ctx = ctx(Family::A, 2);
        let table = enumerate_box(&ctx, 3).unwrap();
        assert!(table.box_relative);
        // canonical representatives with levi = 0: lambda in -2..=2, plus
        // nothing else at this box since shifts collapse
        let divisors: Vec<i64> = table
            .weights
            .iter()
            .filter(|row| row[1] == 0)
            .map(|row| row[0])
            .collect();
        for m in -2..=2 {
            assert!(divisors.contains(&m), "missing {m}");
        }
        assert!(!divisors.contains(&3));
        assert!(!divisors.contains(&-3));
    }
}
