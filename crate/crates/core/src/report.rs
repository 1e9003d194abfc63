//! Serializable report schemas shared by the CLI and the test suites.
//!
//! Permutations serialize as 1-indexed image arrays. All maps are ordered,
//! so a fixed input (including seed and shard layout) produces byte-stable
//! JSON; only the `elapsed_ms` fields vary between runs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::census::{CycleTypeCensus, Witness, WitnessKind};
use crate::centralizer::{build_x, build_y, Ambient, CentralizerDesc};
use crate::conjectures::{Status, Verdict, VerifyMode};
use crate::perm::{PermError, Permutation};
use crate::sylow::{CosetOrderReport, SylowScan, TauEffect};

#[derive(Debug, Clone, Serialize)]
pub struct CensusEntry {
    pub parts: Vec<u32>,
    pub exp: String,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub group: String,
    pub degree: u32,
    pub n: u32,
    pub x: Permutation,
    pub y: Permutation,
    /// Absent when the order overflows 64-bit arithmetic.
    pub centralizer_order: Option<u64>,
    pub census: Vec<CensusEntry>,
    pub orders: Vec<u64>,
    pub all_even: bool,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl CensusReport {
    pub fn build(
        n: u32,
        ambient: Ambient,
        census: &CycleTypeCensus,
        mode: &str,
        samples: Option<u64>,
        seed: Option<u64>,
    ) -> Result<CensusReport, PermError> {
        let desc = CentralizerDesc::standard(n, ambient);
        let entries = census
            .entries()
            .map(|(ty, count)| CensusEntry {
                parts: ty.parts().to_vec(),
                exp: ty.exp_string(),
                count,
            })
            .collect();
        Ok(CensusReport {
            group: ambient.group_name(8 * n),
            degree: 8 * n,
            n,
            x: build_x(n),
            y: build_y(n),
            centralizer_order: desc.order().ok(),
            census: entries,
            orders: census.orders()?.into_iter().collect(),
            all_even: census.all_even_cycles(),
            mode: mode.to_string(),
            samples,
            seed,
        })
    }

    /// Two-column CSV of the census, `exp,count`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("exp,count\n");
        for entry in &self.census {
            out.push_str(&format!("{},{}\n", entry.exp, entry.count));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessEntry {
    pub coset_label: Permutation,
    pub element: Permutation,
    pub order: u64,
    pub kind: WitnessKind,
}

impl From<&Witness> for WitnessEntry {
    fn from(w: &Witness) -> WitnessEntry {
        WitnessEntry {
            coset_label: w.coset_label.clone(),
            element: w.element.clone(),
            order: w.element_order,
            kind: w.kind,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub claim_id: String,
    pub status: Status,
    pub mode: VerifyMode,
    pub cosets_checked: u64,
    pub witnesses: Vec<WitnessEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub longest_odd_cycle_always: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub elapsed_ms: u128,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub stats: BTreeMap<String, serde_json::Value>,
}

impl VerdictReport {
    pub fn new(verdict: &Verdict, elapsed_ms: u128) -> VerdictReport {
        VerdictReport {
            claim_id: verdict.claim_id.clone(),
            status: verdict.status,
            mode: verdict.mode,
            cosets_checked: verdict.cosets_checked,
            witnesses: verdict.witnesses.iter().map(WitnessEntry::from).collect(),
            longest_odd_cycle_always: verdict.longest_odd_cycle_always,
            seed: verdict.seed,
            elapsed_ms,
            stats: verdict.stats.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SylowScanReport {
    pub p: u32,
    pub n: u32,
    pub target: String,
    pub cosets_checked: u64,
    pub violations: Vec<Permutation>,
    pub constructive_vs_brute_agreements: u64,
    pub constructive_runs: u64,
    pub status: Status,
    pub elapsed_ms: u128,
}

impl SylowScanReport {
    pub fn new(scan: &SylowScan, elapsed_ms: u128) -> SylowScanReport {
        SylowScanReport {
            p: scan.p,
            n: scan.n,
            target: scan.target.as_str().to_string(),
            cosets_checked: scan.cosets_checked,
            violations: scan.violations.clone(),
            constructive_vs_brute_agreements: scan.constructive_agreements,
            constructive_runs: scan.constructive_runs,
            status: scan.status,
            elapsed_ms,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TauReport {
    pub p: u32,
    pub n: u32,
    pub x: Permutation,
    pub x_cycles: String,
    pub tau: Permutation,
    pub tau_cycles: String,
    pub product: Permutation,
    pub product_cycle_type: String,
    pub product_order: u64,
    pub effect: TauEffect,
    pub coset_all_p_power: bool,
    pub coset_order_counts: BTreeMap<u64, u64>,
}

impl TauReport {
    pub fn build(
        p: u32,
        n: u32,
        x: &Permutation,
        tau: &Permutation,
        effect: TauEffect,
        coset: &CosetOrderReport,
    ) -> Result<TauReport, PermError> {
        let product = x.compose(tau)?;
        Ok(TauReport {
            p,
            n,
            x: x.clone(),
            x_cycles: x.cycle_string(),
            tau: tau.clone(),
            tau_cycles: tau.cycle_string(),
            product_cycle_type: product.cycle_type().exp_string(),
            product_order: product.order()?,
            product,
            effect,
            coset_all_p_power: coset.all_p_power,
            coset_order_counts: coset.order_counts.clone(),
        })
    }
}
