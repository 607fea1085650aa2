//! Cross-formula identity checks. Every identity the library claims is a
//! named check over a parameter grid; each check computes its two sides by
//! distinct code paths and reports the exact difference on failure.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::chains::enumerate_chains;
use crate::jones::{
    jones_cyclotomic_pm, jones_cyclotomic_pp, jones_display_example, jones_thm1,
    jones_thm2, jones_twist_m1, DisplayExample, TwistSign,
};
use crate::qcomb::MonomialUnit;
use crate::qseries::{
    cal_f_mp, cal_u_mp, f_mp, f_t_torus, u_mp, u_t_torus, EvalMode,
};
use crate::signs::{build_sigma_table, lemma_ik_sigma, TwistFamily, TwoBridgeParams};
use crate::takata::{a_coeff, jones_takata};
use crate::{Error, Int, LaurentPolynomial, QuotientElement, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CheckId {
    MirrorPP,
    MirrorPM,
    TakataVsThm1,
    TakataVsThm2,
    DualityFU,
    DualityCalFCalU,
    TorusDuality,
    RootEvalF,
    RootEvalU,
    RootEvalCalF,
    RootEvalCalU,
    LemmaTables,
    LemmaSums,
    ClosedFormA,
    DisplayKm2m2,
    DisplayKm3p1,
    TwistM1,
    SymmetryMP,
    JonesAtOne,
    StronglyUnimodal,
}

/// Parameter tuple a check runs on. Field names double as the JSON schema.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Mpn { m: u32, p: u32, n: u32 },
    Mp { m: u32, p: u32 },
    Pn { p: u32, n: u32 },
    Tn { t: u32, n: u32 },
    N { n: u32 },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check: CheckId,
    pub cell: Cell,
    pub status: Status,
    /// Canonical form of the difference; "0" exactly when the check passes.
    pub witness: String,
    pub elapsed_ms: u64,
}

fn report(check: CheckId, cell: Cell, diff: LaurentPolynomial, start: Instant) -> VerificationReport {
    VerificationReport {
        check,
        cell,
        status: if diff.is_zero() { Status::Pass } else { Status::Fail },
        witness: diff.to_string(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn report_named(check: CheckId, cell: Cell, failure: Option<String>, start: Instant) -> VerificationReport {
    VerificationReport {
        check,
        cell,
        status: if failure.is_none() { Status::Pass } else { Status::Fail },
        witness: failure.unwrap_or_else(|| "0".into()),
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn quotient_diff(lhs: &QuotientElement, rhs: &QuotientElement) -> LaurentPolynomial {
    (lhs - rhs).to_poly()
}

fn bad_cell(check: CheckId, cell: Cell) -> Error {
    Error::InvalidParameter(format!("cell {cell:?} does not fit check {check:?}"))
}

/// Brute-force count of strongly unimodal sequences (strictly increasing
/// then strictly decreasing, with a unique peak) of each weight up to
/// `max_weight`. Index 0 of the result is unused and stays 0.
pub fn strongly_unimodal_counts(max_weight: u32) -> Vec<u64> {
    fn is_strongly_unimodal(seq: &[u64]) -> bool {
        let peak = seq
            .iter()
            .enumerate()
            .max_by_key(|&(i, v)| (v, std::cmp::Reverse(i)))
            .map(|(i, _)| i)
            .unwrap();
        seq[..=peak].windows(2).all(|w| w[0] < w[1])
            && seq[peak..].windows(2).all(|w| w[0] > w[1])
    }
    let mut counts = vec![0u64; max_weight as usize + 1];
    for weight in 1..=max_weight as u64 {
        // compositions of `weight` via split positions
        for mask in 0u64..(1 << (weight - 1)) {
            let mut parts = Vec::new();
            let mut run = 1u64;
            for bit in 0..weight - 1 {
                if mask & (1 << bit) != 0 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            if is_strongly_unimodal(&parts) {
                counts[weight as usize] += 1;
            }
        }
    }
    counts
}

fn closed_form_a_failure(m: u32, p: u32, n: u32) -> Result<Option<String>> {
    for family in [TwistFamily::MinusMinus, TwistFamily::MinusPlus] {
        let (l, t) = family.two_bridge(m, p);
        let table = build_sigma_table(&TwoBridgeParams::new(l, t)?)?;
        for chain in enumerate_chains(table.p_prime(), n as i64 - 1) {
            let at = |s: i64| if s <= 0 { 0 } else { chain[(s - 1) as usize] };
            let mut alternating = 0i64;
            for j in 1..=(2 * p - 1) as i64 {
                let v = at(m as i64 * j);
                alternating += if j % 2 == 0 { v } else { -v };
            }
            // The alternating closed form for the (4mp-1, 4mp-2p-1) family
            // needs m >= 2; at m = 1 the top entry picks up an extra factor
            // of q^{-N n_top} and the exponent shifts by -n_top.
            let expect = match family {
                TwistFamily::MinusMinus if m == 1 => {
                    alternating - 1 - at(table.p_prime() as i64)
                }
                TwistFamily::MinusMinus => alternating - 1,
                TwistFamily::MinusPlus => -alternating,
            };
            let got = a_coeff(&chain, &table)?;
            if got != expect {
                return Ok(Some(format!(
                    "{family:?} chain {chain:?}: a = {got}, closed form {expect}"
                )));
            }
        }
    }
    Ok(None)
}

fn lemma_tables_failure(m: u32, p: u32) -> Result<Option<String>> {
    for family in [TwistFamily::MinusMinus, TwistFamily::MinusPlus] {
        let (l, t) = family.two_bridge(m, p);
        let direct = build_sigma_table(&TwoBridgeParams::new(l, t)?)?;
        let lemma = lemma_ik_sigma(m, p, family);
        if lemma.table != direct {
            return Ok(Some(format!("{family:?}: interval algorithm table differs")));
        }
        for k in 1..=direct.p_prime() {
            if lemma.sigma_ik[k - 1] != direct.sigma_ik(k) {
                return Ok(Some(format!(
                    "{family:?}: sigma_i_k alternation differs at k = {k}"
                )));
            }
        }
    }
    Ok(None)
}

fn lemma_sums_failure(m: u32, p: u32) -> Result<Option<String>> {
    // MinusMinus family: paired sigma_i_k sums hit ±2 exactly at the
    // multiples of p and the sigma pairs vanish; MinusPlus family swaps the
    // roles.
    let tab = build_sigma_table(&TwoBridgeParams::new(
        4 * m * p - 1,
        4 * m * p - 2 * p - 1,
    )?)?;
    let pp = tab.p_prime();
    for k in 1..=pp {
        let s = tab.sigma_ik(k) + tab.sigma_ik(pp + 1 - k);
        let expect = if k % p as usize == 0 {
            if (k / p as usize) % 2 == 1 { 2 } else { -2 }
        } else {
            0
        };
        if s != expect {
            return Ok(Some(format!("minus-minus sigma_ik pair sum at k = {k}: {s}")));
        }
    }
    for j in 1..pp {
        if tab.sigma(j + 1) + tab.sigma(pp + 1 - j) != 0 {
            return Ok(Some(format!("minus-minus sigma pair sum at j = {j}")));
        }
    }
    let tab = build_sigma_table(&TwoBridgeParams::new(
        4 * m * p + 1,
        4 * m * p - 2 * p + 1,
    )?)?;
    let pp = tab.p_prime();
    for k in 1..=pp {
        if tab.sigma_ik(k) + tab.sigma_ik(pp + 1 - k) != 0 {
            return Ok(Some(format!("minus-plus sigma_ik pair sum at k = {k}")));
        }
    }
    for j in 1..pp {
        let s = tab.sigma(j + 1) + tab.sigma(pp + 1 - j);
        let r = j % (2 * m as usize);
        let expect = if r == 0 {
            2
        } else if r == m as usize {
            -2
        } else {
            0
        };
        if s != expect {
            return Ok(Some(format!("minus-plus sigma pair sum at j = {j}: {s}")));
        }
    }
    Ok(None)
}

pub fn run_check(check: CheckId, cell: Cell) -> Result<VerificationReport> {
    let start = Instant::now();
    let minus_one = MonomialUnit::minus_one();
    match (check, cell) {
        (CheckId::MirrorPP, Cell::Mpn { m, p, n }) => {
            let diff = &jones_cyclotomic_pp(m, p, n).mirror() - &jones_thm1(m, p, n);
            Ok(report(check, cell, diff, start))
        }
        (CheckId::MirrorPM, Cell::Mpn { m, p, n }) => {
            let diff = &jones_cyclotomic_pm(m, p, n).mirror() - &jones_thm2(m, p, n);
            Ok(report(check, cell, diff, start))
        }
        (CheckId::TakataVsThm1, Cell::Mpn { m, p, n }) => {
            let lhs = jones_takata(4 * m * p - 1, 4 * m * p - 2 * p - 1, n)?;
            Ok(report(check, cell, &lhs - &jones_thm1(m, p, n), start))
        }
        (CheckId::TakataVsThm2, Cell::Mpn { m, p, n }) => {
            let lhs = jones_takata(4 * m * p + 1, 4 * m * p - 2 * p + 1, n)?;
            Ok(report(check, cell, &lhs - &jones_thm2(m, p, n), start))
        }
        (CheckId::DualityFU, Cell::Mpn { m, p, n }) => {
            let lhs = f_mp(m, p, n)?;
            let rhs = u_mp(m, p, minus_one, EvalMode::RootOfUnity(n))?
                .unwrap_root()
                .index_reversal();
            Ok(report(check, cell, quotient_diff(&lhs, &rhs), start))
        }
        (CheckId::DualityCalFCalU, Cell::Mpn { m, p, n }) => {
            let lhs = cal_f_mp(m, p, n)?;
            let rhs = cal_u_mp(m, p, minus_one, n)?.index_reversal();
            Ok(report(check, cell, quotient_diff(&lhs, &rhs), start))
        }
        (CheckId::TorusDuality, Cell::Tn { t, n }) => {
            let lhs = f_t_torus(t, n)?;
            let rhs = u_t_torus(t, minus_one, EvalMode::RootOfUnity(n))?
                .unwrap_root()
                .index_reversal();
            Ok(report(check, cell, quotient_diff(&lhs, &rhs), start))
        }
        (CheckId::RootEvalF, Cell::Mpn { m, p, n }) => {
            let lhs = jones_thm1(m, p, n).reduce_mod_qn(n)?;
            Ok(report(check, cell, quotient_diff(&lhs, &f_mp(m, p, n)?), start))
        }
        (CheckId::RootEvalU, Cell::Mpn { m, p, n }) => {
            let lhs = jones_cyclotomic_pp(m, p, n).reduce_mod_qn(n)?;
            let rhs = u_mp(m, p, minus_one, EvalMode::RootOfUnity(n))?.unwrap_root();
            Ok(report(check, cell, quotient_diff(&lhs, &rhs), start))
        }
        (CheckId::RootEvalCalF, Cell::Mpn { m, p, n }) => {
            let lhs = jones_thm2(m, p, n).reduce_mod_qn(n)?;
            Ok(report(check, cell, quotient_diff(&lhs, &cal_f_mp(m, p, n)?), start))
        }
        (CheckId::RootEvalCalU, Cell::Mpn { m, p, n }) => {
            let lhs = jones_cyclotomic_pm(m, p, n).reduce_mod_qn(n)?;
            let rhs = cal_u_mp(m, p, minus_one, n)?;
            Ok(report(check, cell, quotient_diff(&lhs, &rhs), start))
        }
        (CheckId::LemmaTables, Cell::Mp { m, p }) => {
            Ok(report_named(check, cell, lemma_tables_failure(m, p)?, start))
        }
        (CheckId::LemmaSums, Cell::Mp { m, p }) => {
            Ok(report_named(check, cell, lemma_sums_failure(m, p)?, start))
        }
        (CheckId::ClosedFormA, Cell::Mpn { m, p, n }) => {
            Ok(report_named(check, cell, closed_form_a_failure(m, p, n)?, start))
        }
        (CheckId::DisplayKm2m2, Cell::N { n }) => {
            let diff = &jones_display_example(DisplayExample::Km2m2, n)
                - &jones_thm1(2, 2, n);
            Ok(report(check, cell, diff, start))
        }
        (CheckId::DisplayKm3p1, Cell::N { n }) => {
            let diff = &jones_display_example(DisplayExample::Km3p1, n)
                - &jones_thm2(3, 1, n);
            Ok(report(check, cell, diff, start))
        }
        (CheckId::TwistM1, Cell::Pn { p, n }) => {
            let pos = &jones_twist_m1(TwistSign::Pos, p, n) - &jones_thm1(1, p, n);
            let neg = &jones_twist_m1(TwistSign::Neg, p, n) - &jones_thm2(1, p, n);
            let diff = if pos.is_zero() { neg } else { pos };
            Ok(report(check, cell, diff, start))
        }
        (CheckId::SymmetryMP, Cell::Mpn { m, p, n }) => {
            let diff = &jones_cyclotomic_pp(m, p, n) - &jones_cyclotomic_pp(p, m, n);
            Ok(report(check, cell, diff, start))
        }
        (CheckId::JonesAtOne, Cell::Mpn { m, p, n }) => {
            let values = [
                ("cyclotomic-pp", jones_cyclotomic_pp(m, p, n)),
                ("cyclotomic-pm", jones_cyclotomic_pm(m, p, n)),
                ("nested-mm", jones_thm1(m, p, n)),
                ("nested-mp", jones_thm2(m, p, n)),
            ];
            let failure = values.iter().find_map(|(name, v)| {
                let at_one = v.evaluate_at_one();
                (at_one != Int::from(1)).then(|| format!("{name} at q=1 gives {at_one}"))
            });
            Ok(report_named(check, cell, failure, start))
        }
        (CheckId::StronglyUnimodal, Cell::N { n }) => {
            let series = u_mp(1, 1, MonomialUnit::one(), EvalMode::Series(n))?
                .unwrap_series();
            let counts = strongly_unimodal_counts(n);
            let mut diff = LaurentPolynomial::zero();
            for (weight, &count) in counts.iter().enumerate().skip(1) {
                // q * U_{1,1} has the weight-w count at exponent w
                let got = series.coefficient(weight as i64 - 1);
                diff.add_term(weight as i64, got - Int::from(count));
            }
            Ok(report(check, cell, diff, start))
        }
        _ => Err(bad_cell(check, cell)),
    }
}

/// Grid bounds for a suite run; every check uses `n = n_max` (one cell per
/// parameter choice, not one per smaller N).
#[derive(Copy, Clone, Debug)]
pub struct Grid {
    pub m_max: u32,
    pub p_max: u32,
    pub n_max: u32,
    pub t_max: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Mirror,
    Duality,
    Takata,
    Lemmas,
    Displays,
}

impl Suite {
    pub fn checks(self) -> Vec<CheckId> {
        use CheckId::*;
        match self {
            Suite::Mirror => vec![MirrorPP, MirrorPM],
            Suite::Duality => vec![
                DualityFU,
                DualityCalFCalU,
                TorusDuality,
                RootEvalF,
                RootEvalU,
                RootEvalCalF,
                RootEvalCalU,
            ],
            Suite::Takata => vec![TakataVsThm1, TakataVsThm2, ClosedFormA],
            Suite::Lemmas => vec![LemmaTables, LemmaSums],
            Suite::Displays => vec![DisplayKm2m2, DisplayKm3p1, TwistM1],
            Suite::All => vec![
                MirrorPP,
                MirrorPM,
                TakataVsThm1,
                TakataVsThm2,
                DualityFU,
                DualityCalFCalU,
                TorusDuality,
                RootEvalF,
                RootEvalU,
                RootEvalCalF,
                RootEvalCalU,
                LemmaTables,
                LemmaSums,
                ClosedFormA,
                DisplayKm2m2,
                DisplayKm3p1,
                TwistM1,
                SymmetryMP,
                JonesAtOne,
                StronglyUnimodal,
            ],
        }
    }
}

fn cells_for(check: CheckId, grid: &Grid) -> Vec<Cell> {
    use CheckId::*;
    match check {
        MirrorPP | MirrorPM | TakataVsThm1 | TakataVsThm2 | DualityFU
        | DualityCalFCalU | RootEvalF | RootEvalU | RootEvalCalF | RootEvalCalU
        | ClosedFormA | SymmetryMP | JonesAtOne => (1..=grid.m_max)
            .flat_map(|m| {
                (1..=grid.p_max).map(move |p| Cell::Mpn { m, p, n: grid.n_max })
            })
            .collect(),
        LemmaTables | LemmaSums => (1..=grid.m_max)
            .flat_map(|m| (1..=grid.p_max).map(move |p| Cell::Mp { m, p }))
            .collect(),
        TorusDuality => (1..=grid.t_max)
            .map(|t| Cell::Tn { t, n: grid.n_max })
            .collect(),
        TwistM1 => (1..=grid.p_max)
            .map(|p| Cell::Pn { p, n: grid.n_max })
            .collect(),
        DisplayKm2m2 | DisplayKm3p1 | StronglyUnimodal => {
            vec![Cell::N { n: grid.n_max }]
        }
    }
}

/// Run every (check, cell) pair of the suite concurrently and return the
/// reports in deterministic (check, cell) order.
pub fn run_suite(suite: Suite, grid: &Grid) -> Result<Vec<VerificationReport>> {
    if grid.m_max < 1 || grid.p_max < 1 || grid.n_max < 1 || grid.t_max < 1 {
        return Err(Error::InvalidParameter("grid bounds must be >= 1".into()));
    }
    let mut work: Vec<(CheckId, Cell)> = Vec::new();
    for check in suite.checks() {
        for cell in cells_for(check, grid) {
            work.push((check, cell));
        }
    }
    let mut reports = work
        .par_iter()
        .map(|&(check, cell)| run_check(check, cell))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by_key(|r| (r.check, r.cell));
    Ok(reports)
}
