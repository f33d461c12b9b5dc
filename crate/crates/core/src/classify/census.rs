use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use super::{classify_pair, ClassifyError, Condition, Verdict, VerdictTag};
use crate::brunner::GPresentation;
use crate::json::bigint;

pub const MAX_CENSUS_L: u32 = 100;
pub const MAX_CENSUS_K: u32 = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    #[serde(with = "bigint")]
    pub l: BigInt,
    #[serde(with = "bigint")]
    pub m: BigInt,
    #[serde(with = "bigint")]
    pub k1: BigInt,
    #[serde(with = "bigint")]
    pub k2: BigInt,
    pub verdict: Verdict,
}

impl CensusRow {
    /// `|l/m|`, truncated; exact whenever `m | l`.
    pub fn abs_s(&self) -> BigInt {
        (&self.l / &self.m).abs()
    }

    pub fn csv_line(&self) -> String {
        let condition = self.verdict.condition.map(Condition::code).unwrap_or("");
        format!(
            "{},{},{},{},{},{},\"{}\"",
            self.l,
            self.m,
            self.k1,
            self.k2,
            self.verdict.tag,
            condition,
            self.verdict.reason.replace('"', "\"\"")
        )
    }

    // |l| first, then positive l before negative.
    fn l_key(&self) -> (BigInt, bool) {
        (self.l.abs(), self.l.is_negative())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusOrder {
    /// By `|l|`, then `m`, `k1`, `k2`.
    ByL,
    /// By `m`, then `|s| = |l/m|`.
    ByMThenS,
    /// By `k1 + k2`.
    ByKSum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub l_max: u32,
    pub k_max: u32,
    /// Every pair `k1 < k2` sharing `(l,m)` whose verdict is not `k1 = k2`,
    /// sorted by `|l|, l, m, k1, k2`.
    pub rows: Vec<CensusRow>,
}

pub const CSV_HEADER: &str = "l,m,k1,k2,verdict,condition,reason";

impl Census {
    pub fn with_tag(&self, tag: VerdictTag) -> impl Iterator<Item = &CensusRow> {
        self.rows.iter().filter(move |r| r.verdict.tag == tag)
    }

    pub fn mutual_epi_rows(&self, order: CensusOrder) -> Vec<&CensusRow> {
        let mut rows: Vec<_> = self.with_tag(VerdictTag::MutualEpiNotIso).collect();
        sort_rows(&mut rows, order);
        rows
    }

    pub fn to_csv<'a>(rows: impl IntoIterator<Item = &'a CensusRow>) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in rows {
            out.push_str(&r.csv_line());
            out.push('\n');
        }
        out
    }

    pub fn to_json_lines<'a>(rows: impl IntoIterator<Item = &'a CensusRow>) -> String {
        let mut out = String::new();
        for r in rows {
            out.push_str(&serde_json::to_string(r).expect("row serializes"));
            out.push('\n');
        }
        out
    }
}

pub fn sort_rows(rows: &mut [&CensusRow], order: CensusOrder) {
    match order {
        CensusOrder::ByL => rows
            .sort_by(|a, b| (a.l_key(), &a.m, &a.k1, &a.k2).cmp(&(b.l_key(), &b.m, &b.k1, &b.k2))),
        CensusOrder::ByMThenS => rows.sort_by(|a, b| {
            (&a.m, a.abs_s(), a.l_key(), &a.k1, &a.k2).cmp(&(
                &b.m,
                b.abs_s(),
                b.l_key(),
                &b.k1,
                &b.k2,
            ))
        }),
        CensusOrder::ByKSum => rows.sort_by(|a, b| {
            (&a.k1 + &a.k2, a.l_key(), &a.m, &a.k1).cmp(&(&b.k1 + &b.k2, b.l_key(), &b.m, &b.k1))
        }),
    }
}

/// Classifies every unordered pair `k1 < k2 <= k_max` for every valid
/// `(l, m)` with `|l| <= l_max`.
pub fn census(l_max: u32, k_max: u32) -> Result<Census, ClassifyError> {
    if !(1..=MAX_CENSUS_L).contains(&l_max) || !(1..=MAX_CENSUS_K).contains(&k_max) {
        return Err(ClassifyError::CensusBounds {
            l_max,
            k_max,
            max_l: MAX_CENSUS_L,
            max_k: MAX_CENSUS_K,
        });
    }
    let l_max = l_max as i64;
    let k_max = k_max as i64;
    let mut lm = Vec::new();
    for abs_l in 2..=l_max {
        for l in [abs_l, -abs_l] {
            for m in 1..abs_l {
                lm.push((l, m));
            }
        }
    }
    let mut rows: Vec<CensusRow> = lm
        .par_iter()
        .flat_map_iter(|&(l, m)| {
            let pres: Vec<_> = (1..=k_max)
                .map(|k| GPresentation::new(l, m, k).expect("valid census presentation"))
                .collect();
            let mut out = Vec::new();
            for i in 0..pres.len() {
                for j in i + 1..pres.len() {
                    let verdict = classify_pair(&pres[i], &pres[j]).expect("canonical");
                    if verdict.condition != Some(Condition::EqualK) {
                        out.push(CensusRow {
                            l: l.into(),
                            m: m.into(),
                            k1: pres[i].k().clone(),
                            k2: pres[j].k().clone(),
                            verdict,
                        });
                    }
                }
            }
            out
        })
        .collect();
    rows.sort_by(|a, b| (a.l_key(), &a.m, &a.k1, &a.k2).cmp(&(b.l_key(), &b.m, &b.k1, &b.k2)));
    Ok(Census {
        l_max: l_max as u32,
        k_max: k_max as u32,
        rows,
    })
}
