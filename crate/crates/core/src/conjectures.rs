//! Verdict-level checks on centralizer cosets.
//!
//! Three families of claims are decided here:
//!
//! * the even-order coset family: every element of `y·Z(x)` in degree `8n`
//!   decomposes into even-length cycles only;
//! * centralizer cosets of the central involution of a Sylow 2-subgroup in
//!   `A_4`, `A_8`, `A_16` all contain odd-order elements (`conj13`);
//! * the degree-≤8 scan over every involution class, reporting which
//!   centralizer cosets lack odd-order elements (`conj14`).
//!
//! Coset traversal for a fixed-point-free involution `t` never stores a
//! transversal: left cosets of `Z(t)` correspond bijectively to conjugates
//! `g t g⁻¹`, i.e. to perfect matchings of the point set, so streaming the
//! matchings in canonical order streams the cosets exactly once.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::census::{
    coset_census_exhaustive, CensusError, CycleTypeCensus, Witness, WitnessKind,
};
use crate::centralizer::{
    build_y, definitional_centralizer, enumerate_centralizer, sample_centralizer, sample_rng,
    structural_generators, Ambient, CentralizerDesc, CentralizerError, DEFAULT_ENUM_BUDGET,
};
use crate::perm::{lex, Parity, PermError, Permutation};
use crate::util::{double_factorial, DenseBits};

/// Per-coset budget for sampled witness searches.
pub const PER_COSET_SAMPLE_CAP: u64 = 10_000;

/// How many exemplar witnesses a verdict retains.
const WITNESS_CAP: usize = 8;

#[derive(Debug, Error)]
pub enum ConjectureError {
    #[error(transparent)]
    Centralizer(#[from] CentralizerError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("{0}")]
    BadShape(String),
    #[error("degree {degree} exceeds the exhaustive-scan cap {cap}")]
    DegreeBudget { degree: u32, cap: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Exhaustive,
    GeneratorsPlusClosure,
    Sampled,
}

/// Outcome of one claim-level check. A `Violated` verdict always carries at
/// least one witness; a `Verified` verdict obtained from sampling alone is
/// only emitted for existence claims (a found witness is a proof) or with
/// the generator/closure argument recorded in `stats`.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub claim_id: String,
    pub status: Status,
    pub mode: VerifyMode,
    pub cosets_checked: u64,
    pub witnesses: Vec<Witness>,
    pub longest_odd_cycle_always: Option<bool>,
    pub seed: Option<u64>,
    pub stats: BTreeMap<String, serde_json::Value>,
}

impl Verdict {
    fn new(claim_id: String, mode: VerifyMode) -> Verdict {
        Verdict {
            claim_id,
            status: Status::Verified,
            mode,
            cosets_checked: 0,
            witnesses: Vec::new(),
            longest_odd_cycle_always: None,
            seed: None,
            stats: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// Verdict plus the census it was computed from, when one exists.
#[derive(Debug, Clone)]
pub struct TheoremCheck {
    pub verdict: Verdict,
    pub census: Option<CycleTypeCensus>,
}

/// Decides whether every element of `y·Z(x)` in degree `8n` has all-even
/// cycle type.
///
/// Exhaustive mode streams the whole coset (feasible for `n ≤ 2`). Sampled
/// mode combines two facts: every structural generator of the centralizer
/// maps the support of `x` onto itself (products of setwise-fixing maps fix
/// setwise, so the whole group does — that argument alone already forces
/// all-even cycle types), and a seeded sample of coset elements is checked
/// directly as corroboration.
pub fn verify_all_even_coset(
    n: u32,
    mode: TheoremMode,
    ambient: Ambient,
) -> Result<TheoremCheck, ConjectureError> {
    assert!(n >= 1, "n must be at least 1");
    let desc = CentralizerDesc::standard(n, ambient);
    let y = build_y(n);
    let support = desc.partition.support_points();
    let claim_id = format!("all-even-coset:{}:n={n}", ambient.group_name(8 * n));

    match mode {
        TheoremMode::Exhaustive => {
            let census = coset_census_exhaustive(&y, &desc, DEFAULT_ENUM_BUDGET)?;
            let mut verdict = Verdict::new(claim_id, VerifyMode::Exhaustive);
            verdict.cosets_checked = 1;
            verdict
                .stats
                .insert("coset_size".into(), json!(census.total()));
            verdict
                .stats
                .insert("distinct_cycle_types".into(), json!(census.entries().count()));
            if census.all_even_cycles() {
                verdict.status = Status::Verified;
            } else {
                verdict.status = Status::Violated;
                if let Some(witness) = first_odd_cycle_element(&y, &desc)? {
                    verdict.witnesses.push(witness);
                }
            }
            Ok(TheoremCheck {
                verdict,
                census: Some(census),
            })
        }
        TheoremMode::Sampled { samples, seed } => {
            let generators = structural_generators(&desc);
            let generators_fix_support = generators.iter().all(|g| g.fixes_setwise(&support));

            let blocks = crate::census::sample_blocks(samples);
            let violations: Vec<Witness> = blocks
                .par_iter()
                .map(|&(block, count)| {
                    let mut rng = sample_rng(seed, block);
                    for _ in 0..count {
                        let z = sample_centralizer(&desc, &mut rng);
                        let w = y.compose(&z).expect("equal degrees");
                        let ty = w.cycle_type();
                        if !ty.all_parts_even() {
                            let element_order = ty.order().expect("small degree");
                            return Some(Witness {
                                coset_label: y.clone(),
                                element: w,
                                element_order,
                                kind: WitnessKind::AllEvenViolation,
                            });
                        }
                    }
                    None
                })
                .collect::<Vec<Option<Witness>>>()
                .into_iter()
                .flatten()
                .collect();

            let mut verdict = Verdict::new(claim_id, VerifyMode::GeneratorsPlusClosure);
            verdict.cosets_checked = 1;
            verdict.seed = Some(seed);
            verdict
                .stats
                .insert("generators_checked".into(), json!(generators.len()));
            verdict.stats.insert(
                "generators_fix_support".into(),
                json!(generators_fix_support),
            );
            verdict.stats.insert("samples".into(), json!(samples));
            if generators_fix_support && violations.is_empty() {
                verdict.status = Status::Verified;
            } else {
                verdict.status = Status::Violated;
                verdict.witnesses = violations.into_iter().take(WITNESS_CAP).collect();
                if let Some(bad) = generators.iter().find(|g| !g.fixes_setwise(&support)) {
                    let element_order = bad.order()?;
                    verdict.witnesses.push(Witness {
                        coset_label: y.clone(),
                        element: bad.clone(),
                        element_order,
                        kind: WitnessKind::AllEvenViolation,
                    });
                }
            }
            Ok(TheoremCheck {
                verdict,
                census: None,
            })
        }
    }
}

fn first_odd_cycle_element(
    y: &Permutation,
    desc: &CentralizerDesc,
) -> Result<Option<Witness>, ConjectureError> {
    for z in enumerate_centralizer(desc)? {
        let w = y.compose(&z)?;
        let ty = w.cycle_type();
        if !ty.all_parts_even() {
            let element_order = ty.order()?;
            return Ok(Some(Witness {
                coset_label: y.clone(),
                element: w,
                element_order,
                kind: WitnessKind::AllEvenViolation,
            }));
        }
    }
    Ok(None)
}

/// Random-trial check of the underlying product structure: any `z` that
/// fixes `{1..4n}` setwise (centralizing `x` not required) yields `y∘z`
/// with all-even cycle type. Alternating ambient draws even `z`; symmetric
/// ambient draws either parity.
pub fn check_a_fixing_products(
    n: u32,
    trials: u64,
    ambient: Ambient,
    seed: u64,
) -> Verdict {
    assert!(n >= 1 && trials >= 1);
    let degree = 8 * n;
    let half = 4 * n as usize;
    let y = build_y(n);
    let claim_id = format!(
        "a-fixing-products:{}:n={n}",
        ambient.group_name(degree)
    );

    let blocks = crate::census::sample_blocks(trials);
    let violations: Vec<Witness> = blocks
        .par_iter()
        .map(|&(block, count)| {
            let mut rng = sample_rng(seed, block);
            let mut images: Vec<u32> = (1..=degree).collect();
            for _ in 0..count {
                random_half_preserving(&mut images, half, ambient, &mut rng);
                let z = Permutation::from_images(images.clone()).expect("shuffled halves");
                let w = y.compose(&z).expect("equal degrees");
                let ty = w.cycle_type();
                if !ty.all_parts_even() {
                    let element_order = ty.order().expect("small degree");
                    return Some(Witness {
                        coset_label: y.clone(),
                        element: w,
                        element_order,
                        kind: WitnessKind::AllEvenViolation,
                    });
                }
            }
            None
        })
        .collect::<Vec<Option<Witness>>>()
        .into_iter()
        .flatten()
        .collect();

    let mut verdict = Verdict::new(claim_id, VerifyMode::Sampled);
    verdict.seed = Some(seed);
    verdict.stats.insert("trials".into(), json!(trials));
    if violations.is_empty() {
        verdict.status = Status::Verified;
    } else {
        verdict.status = Status::Violated;
        verdict.witnesses = violations.into_iter().take(WITNESS_CAP).collect();
    }
    verdict
}

/// Shuffles the first `half` and the last `degree-half` entries separately,
/// so the result fixes both point sets setwise. In the alternating ambient
/// an odd outcome is corrected by one swap inside the first half.
fn random_half_preserving(
    images: &mut [u32],
    half: usize,
    ambient: Ambient,
    rng: &mut impl rand::Rng,
) {
    use rand::seq::SliceRandom;
    for (i, v) in images.iter_mut().enumerate() {
        *v = i as u32 + 1;
    }
    images[..half].shuffle(rng);
    images[half..].shuffle(rng);
    if ambient == Ambient::Alternating {
        let p = Permutation::from_images(images.to_vec()).expect("valid shuffle");
        if p.parity() == Parity::Odd {
            images.swap(0, 1);
        }
    }
}

/// Number of perfect matchings of `{1..degree}` = number of left cosets of
/// the centralizer of a fixed-point-free involution.
pub fn matching_count(degree: u32) -> u64 {
    assert!(degree >= 2 && degree.is_multiple_of(2));
    double_factorial(degree as u64 - 1)
}

/// Streams perfect matchings of `{1..degree}` in canonical order: at each
/// step the smallest unmatched point pairs with its partner, partners
/// ordered ascending. Index 0 is the matching `{1,2},{3,4},…`.
pub struct Matchings {
    degree: u32,
    digits: Vec<u32>,
    index: u64,
    total: u64,
}

impl Matchings {
    pub fn new(degree: u32) -> Matchings {
        Matchings::from_index(degree, 0)
    }

    pub fn from_index(degree: u32, index: u64) -> Matchings {
        assert!(degree >= 2 && degree.is_multiple_of(2));
        let total = matching_count(degree);
        let steps = (degree / 2) as usize;
        let mut digits = vec![0u32; steps];
        let mut rem = index.min(total);
        for (i, digit) in digits.iter_mut().enumerate() {
            // Points still unmatched after this step's pair is placed.
            let left_after = degree as u64 - 2 * i as u64 - 2;
            let stride = if left_after >= 2 {
                double_factorial(left_after - 1)
            } else {
                1
            };
            *digit = (rem / stride) as u32;
            rem %= stride;
        }
        Matchings {
            degree,
            digits,
            index,
            total,
        }
    }

    fn materialize(&self) -> Vec<(u32, u32)> {
        let mut remaining: Vec<u32> = (1..=self.degree).collect();
        let mut pairs = Vec::with_capacity(self.digits.len());
        for &digit in &self.digits {
            let a = remaining.remove(0);
            let b = remaining.remove(digit as usize);
            pairs.push((a, b));
        }
        pairs
    }

    fn advance(&mut self) {
        self.index += 1;
        if self.index >= self.total {
            return;
        }
        let steps = self.digits.len();
        for i in (0..steps).rev() {
            let max_digit = self.degree - 2 * i as u32 - 2;
            if self.digits[i] < max_digit {
                self.digits[i] += 1;
                for d in &mut self.digits[i + 1..] {
                    *d = 0;
                }
                return;
            }
        }
    }
}

impl Iterator for Matchings {
    type Item = (u64, Vec<(u32, u32)>);

    fn next(&mut self) -> Option<Self::Item> {
        if self.index >= self.total {
            return None;
        }
        let item = (self.index, self.materialize());
        self.advance();
        Some(item)
    }
}

/// Canonical even conjugator carrying the pairs of `t` onto `target`, pair
/// by pair in order. If the straightforward transport is odd, the first
/// target pair's orientation is swapped, which multiplies by a
/// transposition inside the target's centralizer and restores evenness
/// without changing the conjugate.
pub fn matching_conjugator(
    t_pairs: &[(u32, u32)],
    target: &[(u32, u32)],
    degree: u32,
) -> Permutation {
    let mut images = vec![0u32; degree as usize];
    for (&(a, b), &(ta, tb)) in t_pairs.iter().zip(target) {
        images[(a - 1) as usize] = ta;
        images[(b - 1) as usize] = tb;
    }
    let g = Permutation::from_images(images).expect("matching transport is bijective");
    if g.parity() == Parity::Even {
        return g;
    }
    let mut images = g.images().to_vec();
    let (a0, b0) = t_pairs[0];
    images.swap((a0 - 1) as usize, (b0 - 1) as usize);
    Permutation::from_images(images).expect("swap preserves bijectivity")
}

/// One even representative per left coset of `Z(t)` for a fixed-point-free
/// involution `t`, indexed by perfect matchings. Emits `(degree−1)!!`
/// pairwise inequivalent representatives; index 0 is the trivial coset.
pub fn conjugate_coset_reps(
    t: &Permutation,
) -> Result<impl Iterator<Item = (u64, Permutation)> + '_, ConjectureError> {
    if !t.is_involution() || t.support().len() != t.degree() as usize {
        return Err(ConjectureError::BadShape(
            "expected a fixed-point-free involution".into(),
        ));
    }
    let t_pairs: Vec<(u32, u32)> = t
        .cycle_decompose()
        .into_iter()
        .map(|c| (c[0], c[1]))
        .collect();
    let degree = t.degree();
    Ok(Matchings::new(degree).map(move |(index, target)| {
        (index, matching_conjugator(&t_pairs, &target, degree))
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conj13Group {
    A4,
    A8,
    A16,
}

impl Conj13Group {
    pub fn degree(self) -> u32 {
        match self {
            Conj13Group::A4 => 4,
            Conj13Group::A8 => 8,
            Conj13Group::A16 => 16,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Conj13Group::A4 => "a4",
            Conj13Group::A8 => "a8",
            Conj13Group::A16 => "a16",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conj13Mode {
    /// Exhaustive per-coset sweeps over the full traversal (A_4, A_8).
    Exhaustive,
    /// Full traversal with seeded per-coset sampling (A_16 long run).
    SampledFull { seed: u64 },
    /// Traversal of the first `max_cosets` nontrivial cosets only; the
    /// verdict is at best inconclusive since the claim is universal.
    SampledBudget { seed: u64, max_cosets: u64 },
}

struct CosetOutcome {
    index: u64,
    odd: Option<(Permutation, u64)>,
    long_found: bool,
    stuck: bool,
    rep: Permutation,
}

/// Checks that every nontrivial coset of `Z(t)` contains an odd-order
/// element, for `t` the fixed-point-free involution `(1 2)(3 4)⋯` central
/// in a Sylow 2-subgroup. Also tracks whether each coset contains an
/// element with a cycle of length `degree−1`, the longest odd length.
pub fn conj13_check(group: Conj13Group, mode: Conj13Mode) -> Result<Verdict, ConjectureError> {
    conj13_check_with_budget(group, mode, PER_COSET_SAMPLE_CAP)
}

/// [`conj13_check`] with an explicit per-coset witness-search budget for
/// the sampled modes. A found witness is a proof for its coset; a coset
/// exhausting the budget is only ever inconclusive.
pub fn conj13_check_with_budget(
    group: Conj13Group,
    mode: Conj13Mode,
    budget_per_coset: u64,
) -> Result<Verdict, ConjectureError> {
    assert!(budget_per_coset >= 1);
    let degree = group.degree();
    let pair_cycles: Vec<Vec<u32>> = (1..=degree / 2).map(|i| vec![2 * i - 1, 2 * i]).collect();
    let t = Permutation::from_cycles(degree, &pair_cycles)?;
    let t_pairs: Vec<(u32, u32)> = t.cycle_decompose().into_iter().map(|c| (c[0], c[1])).collect();
    let desc = CentralizerDesc::of_involution(&t, Ambient::Alternating)?;
    let total = matching_count(degree);
    let long_len = degree - 1;

    let (first, last, seed) = match mode {
        Conj13Mode::Exhaustive => (1u64, total, None),
        Conj13Mode::SampledFull { seed } => (1u64, total, Some(seed)),
        Conj13Mode::SampledBudget { seed, max_cosets } => {
            (1u64, total.min(1 + max_cosets), Some(seed))
        }
    };

    // Exhaustive sweeps reuse one collected subgroup table; traversing
    // millions of cosets against a large table is never the right tool.
    const EXHAUSTIVE_TABLE_CAP: u64 = 10_000;
    let table: Option<Vec<Permutation>> = match mode {
        Conj13Mode::Exhaustive => {
            let order = desc.order()?;
            if order > EXHAUSTIVE_TABLE_CAP {
                return Err(ConjectureError::BadShape(format!(
                    "exhaustive per-coset sweeps need |Z| ≤ {EXHAUSTIVE_TABLE_CAP}, got {order}; use a sampled mode"
                )));
            }
            Some(enumerate_centralizer(&desc)?.collect())
        }
        _ => None,
    };

    let shards = shard_ranges(first, last);
    let summaries: Vec<Vec<CosetOutcome>> = shards
        .par_iter()
        .map(|&(lo, hi)| {
            let mut outcomes = Vec::new();
            let iter = Matchings::from_index(degree, lo);
            for (index, target) in iter {
                if index >= hi {
                    break;
                }
                let rep = matching_conjugator(&t_pairs, &target, degree);
                let outcome = match (&table, seed) {
                    (Some(table), _) => sweep_coset(index, &rep, table, long_len),
                    (None, Some(seed)) => {
                        sample_coset(index, &rep, &desc, seed, long_len, budget_per_coset)
                    }
                    (None, None) => unreachable!("sampled modes carry a seed"),
                };
                outcomes.push(outcome);
            }
            outcomes
        })
        .collect();

    let mut verdict = Verdict::new(
        format!("conj13:{}", group.name()),
        match mode {
            Conj13Mode::Exhaustive => VerifyMode::Exhaustive,
            _ => VerifyMode::Sampled,
        },
    );
    verdict.seed = seed;

    let mut cosets_checked = 0u64;
    let mut longest_always = true;
    let mut stuck_count = 0u64;
    let mut violation_count = 0u64;
    let mut stuck_examples = Vec::new();
    for outcome in summaries.into_iter().flatten() {
        cosets_checked += 1;
        longest_always &= outcome.long_found;
        match (&outcome.odd, outcome.stuck) {
            (Some((element, order)), _) => {
                if verdict.witnesses.len() < WITNESS_CAP {
                    let label = crate::census::canonical_coset_label(&outcome.rep, &desc);
                    verdict.witnesses.push(Witness {
                        coset_label: label,
                        element: element.clone(),
                        element_order: *order,
                        kind: WitnessKind::OddOrderFound,
                    });
                }
            }
            (None, true) => {
                // Sampling budget ran out with no odd-order element found;
                // not a proof of absence, so only inconclusive.
                stuck_count += 1;
                if stuck_examples.len() < 4 {
                    let label = crate::census::canonical_coset_label(&outcome.rep, &desc);
                    stuck_examples.push(json!({
                        "matching_index": outcome.index,
                        "coset_label": label,
                    }));
                }
            }
            (None, false) => {
                // An exhaustive sweep found no odd-order element: a proved
                // violation of the claim for this coset.
                violation_count += 1;
                let label = crate::census::canonical_coset_label(&outcome.rep, &desc);
                let element_order = label.order()?;
                verdict.witnesses.insert(
                    0,
                    Witness {
                        coset_label: label.clone(),
                        element: label,
                        element_order,
                        kind: WitnessKind::NoneFound,
                    },
                );
            }
        }
    }

    verdict.cosets_checked = cosets_checked;
    verdict.longest_odd_cycle_always = Some(longest_always);
    verdict
        .stats
        .insert("nontrivial_cosets_total".into(), json!(total - 1));
    verdict
        .stats
        .insert("centralizer_order".into(), json!(desc.order()?));
    verdict
        .stats
        .insert("longest_odd_cycle_length".into(), json!(long_len));
    if seed.is_some() {
        verdict.stats.insert(
            "per_coset_sample_cap".into(),
            json!(budget_per_coset),
        );
        verdict.stats.insert("stuck_cosets".into(), json!(stuck_count));
        if !stuck_examples.is_empty() {
            verdict
                .stats
                .insert("stuck_examples".into(), serde_json::Value::Array(stuck_examples));
        }
    }
    if degree == 4 {
        // Small enough to publish the full per-coset type profile.
        verdict.stats.insert(
            "nontrivial_coset_profiles".into(),
            a4_coset_profiles(&t_pairs, &desc)?,
        );
    }

    verdict.status = if violation_count > 0 {
        Status::Violated
    } else if stuck_count > 0 || cosets_checked < total - 1 {
        Status::Inconclusive
    } else {
        Status::Verified
    };
    if verdict.status == Status::Violated {
        verdict.witnesses.truncate(WITNESS_CAP);
    }
    Ok(verdict)
}

fn sweep_coset(
    index: u64,
    rep: &Permutation,
    table: &[Permutation],
    long_len: u32,
) -> CosetOutcome {
    let mut odd = None;
    let mut long_found = false;
    for z in table {
        let w = rep.compose(z).expect("equal degrees");
        let ty = w.cycle_type();
        if odd.is_none() && ty.is_odd_order() {
            let order = ty.order().expect("small degree");
            odd = Some((w.clone(), order));
        }
        long_found |= ty.has_part(long_len);
        if odd.is_some() && long_found {
            break;
        }
    }
    CosetOutcome {
        index,
        odd,
        long_found,
        stuck: false,
        rep: rep.clone(),
    }
}

fn sample_coset(
    index: u64,
    rep: &Permutation,
    desc: &CentralizerDesc,
    seed: u64,
    long_len: u32,
    budget: u64,
) -> CosetOutcome {
    let mut rng = sample_rng(seed, index);
    let mut odd = None;
    let mut long_found = false;
    for _ in 0..budget {
        let z = sample_centralizer(desc, &mut rng);
        let w = rep.compose(&z).expect("equal degrees");
        let ty = w.cycle_type();
        if odd.is_none() && ty.is_odd_order() {
            let order = ty.order().expect("small degree");
            odd = Some((w, order));
        }
        long_found |= ty.has_part(long_len);
        if odd.is_some() && long_found {
            break;
        }
    }
    let stuck = odd.is_none();
    CosetOutcome {
        index,
        odd,
        long_found,
        stuck,
        rep: rep.clone(),
    }
}

fn a4_coset_profiles(
    t_pairs: &[(u32, u32)],
    desc: &CentralizerDesc,
) -> Result<serde_json::Value, ConjectureError> {
    let table: Vec<Permutation> = enumerate_centralizer(desc)?.collect();
    let mut profiles = Vec::new();
    for (index, target) in Matchings::new(4).skip(1) {
        let rep = matching_conjugator(t_pairs, &target, 4);
        let mut types: BTreeMap<String, u64> = BTreeMap::new();
        for z in &table {
            let ty = rep.compose(z)?.cycle_type();
            *types.entry(ty.exp_string()).or_insert(0) += 1;
        }
        let label = crate::census::canonical_coset_label(&rep, desc);
        profiles.push(json!({
            "index": index,
            "label": label,
            "size": table.len() as u64,
            "types": types,
        }));
    }
    Ok(serde_json::Value::Array(profiles))
}

fn shard_ranges(first: u64, last: u64) -> Vec<(u64, u64)> {
    let size = last.saturating_sub(first);
    crate::census::shard_bounds(size)
        .into_iter()
        .map(|(lo, hi)| (first + lo, first + hi))
        .collect()
}

/// Exhaustive degree-≤8 scan: for each even-involution class representative
/// `t` (one per cycle type `2^k 1^{degree−2k}`, `k` even) partitions the
/// alternating group into cosets of the definitional centralizer and
/// reports every coset with no odd-order element.
pub fn conj14_scan(degree: u32) -> Result<Verdict, ConjectureError> {
    const CAP: u32 = 8;
    if degree > CAP {
        return Err(ConjectureError::DegreeBudget { degree, cap: CAP });
    }
    if degree < 2 {
        return Err(ConjectureError::BadShape(
            "degree must be at least 2".into(),
        ));
    }

    let mut verdict = Verdict::new(format!("conj14:degree-{degree}"), VerifyMode::Exhaustive);
    let group_size = lex::factorial(degree as u64).expect("small degree");
    let mut class_reports = Vec::new();
    let mut total_cosets = 0u64;
    let mut violations: Vec<(Permutation, Witness)> = Vec::new();

    let mut k = 2u32;
    while 2 * k <= degree {
        let cycles: Vec<Vec<u32>> = (1..=k).map(|i| vec![2 * i - 1, 2 * i]).collect();
        let t = Permutation::from_cycles(degree, &cycles)?;
        let table = definitional_centralizer(&t, Ambient::Alternating)?;

        let mut visited = DenseBits::new(group_size);
        let mut cosets = 0u64;
        let mut class_violations = 0u64;
        let mut images: Vec<u32> = (1..=degree).collect();
        let mut parity = Parity::Even;
        loop {
            if parity.is_even() && !visited.get(lex::rank(&images)) {
                let g = Permutation::from_images(images.clone())?;
                cosets += 1;
                let mut any_odd = false;
                for z in &table {
                    let w = g.compose(z)?;
                    visited.set(lex::rank(w.images()));
                    any_odd |= w.cycle_type().is_odd_order();
                }
                if !any_odd {
                    class_violations += 1;
                    let element_order = g.order()?;
                    violations.push((
                        t.clone(),
                        Witness {
                            coset_label: g.clone(),
                            element: g,
                            element_order,
                            kind: WitnessKind::NoneFound,
                        },
                    ));
                }
            }
            if !lex::next_permutation_tracked(&mut images, &mut parity) {
                break;
            }
        }

        total_cosets += cosets;
        class_reports.push(json!({
            "involution": t,
            "cycle_type": t.cycle_type().exp_string(),
            "centralizer_order": table.len() as u64,
            "cosets": cosets,
            "violations": class_violations,
        }));
        k += 2;
    }

    verdict.cosets_checked = total_cosets;
    verdict
        .stats
        .insert("involution_classes".into(), json!(class_reports));
    verdict.stats.insert(
        "violations".into(),
        serde_json::Value::Array(
            violations
                .iter()
                .map(|(t, w)| {
                    json!({
                        "involution": t,
                        "coset_label": w.coset_label,
                        "coset_order": w.element_order,
                    })
                })
                .collect(),
        ),
    );
    verdict.status = if violations.is_empty() {
        Status::Verified
    } else {
        Status::Violated
    };
    verdict.witnesses = violations.into_iter().map(|(_, w)| w).collect();
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn matching_counts_match_coset_indices() {
        assert_eq!(matching_count(4), 3);
        assert_eq!(matching_count(8), 105);
        assert_eq!(matching_count(16), 2_027_025);
        assert_eq!(Matchings::new(4).count(), 3);
        assert_eq!(Matchings::new(8).count(), 105);
    }

    #[test]
    fn matching_index_zero_is_the_standard_pairing() {
        let (index, pairs) = Matchings::new(8).next().unwrap();
        assert_eq!(index, 0);
        assert_eq!(pairs, vec![(1, 2), (3, 4), (5, 6), (7, 8)]);
    }

    #[test]
    fn matching_from_index_agrees_with_walking() {
        let all: Vec<(u64, Vec<(u32, u32)>)> = Matchings::new(8).collect();
        for probe in [0u64, 1, 17, 50, 104] {
            let mut iter = Matchings::from_index(8, probe);
            assert_eq!(iter.next().unwrap(), all[probe as usize]);
        }
    }

    #[test]
    fn conjugators_are_even_and_map_pairs() {
        let t = Permutation::from_cycles(8, &[vec![1, 2], vec![3, 4], vec![5, 6], vec![7, 8]])
            .unwrap();
        for (_, rep) in conjugate_coset_reps(&t).unwrap() {
            assert!(rep.is_even());
            let conj = t.conjugated_by(&rep);
            assert!(conj.is_involution());
            assert_eq!(conj.cycle_type().parts(), &[2, 2, 2, 2]);
        }
    }

    #[test]
    fn conjugates_are_distinct_across_matchings() {
        let t = Permutation::from_cycles(8, &[vec![1, 2], vec![3, 4], vec![5, 6], vec![7, 8]])
            .unwrap();
        let conjugates: BTreeSet<Permutation> = conjugate_coset_reps(&t)
            .unwrap()
            .map(|(_, g)| t.conjugated_by(&g))
            .collect();
        assert_eq!(conjugates.len(), 105);
    }

    #[test]
    fn representatives_are_pairwise_inequivalent_at_degree_8() {
        let t = Permutation::from_cycles(8, &[vec![1, 2], vec![3, 4], vec![5, 6], vec![7, 8]])
            .unwrap();
        let desc = CentralizerDesc::of_involution(&t, Ambient::Alternating).unwrap();
        let reps: Vec<Permutation> = conjugate_coset_reps(&t).unwrap().map(|(_, g)| g).collect();
        for (i, g1) in reps.iter().enumerate() {
            for g2 in &reps[i + 1..] {
                let quotient = g1.inverse().compose(g2).unwrap();
                assert!(!crate::centralizer::is_in_centralizer(&desc, &quotient));
            }
        }
    }

    #[test]
    fn coset_reps_reject_involutions_with_fixed_points() {
        let t = Permutation::from_cycles(8, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert!(conjugate_coset_reps(&t).is_err());
    }

    #[test]
    fn theorem_holds_exhaustively_at_n1() {
        let check =
            verify_all_even_coset(1, TheoremMode::Exhaustive, Ambient::Alternating).unwrap();
        assert_eq!(check.verdict.status, Status::Verified);
        let census = check.census.unwrap();
        assert_eq!(census.total(), 96);
        assert!(census.all_even_cycles());
    }

    #[test]
    fn theorem_sampled_mode_reports_generator_closure() {
        let check = verify_all_even_coset(
            3,
            TheoremMode::Sampled {
                samples: 2_000,
                seed: 9,
            },
            Ambient::Alternating,
        )
        .unwrap();
        assert_eq!(check.verdict.status, Status::Verified);
        assert_eq!(check.verdict.mode, VerifyMode::GeneratorsPlusClosure);
        assert_eq!(
            check.verdict.stats.get("generators_fix_support"),
            Some(&json!(true))
        );
    }

    #[test]
    fn a_fixing_products_have_even_cycles_only() {
        for ambient in [Ambient::Alternating, Ambient::Symmetric] {
            let verdict = check_a_fixing_products(1, 2_000, ambient, 3);
            assert_eq!(verdict.status, Status::Verified, "{ambient:?}");
        }
    }

    #[test]
    fn conj13_a4_profile() {
        let verdict = conj13_check(Conj13Group::A4, Conj13Mode::Exhaustive).unwrap();
        assert_eq!(verdict.status, Status::Verified);
        assert_eq!(verdict.cosets_checked, 2);
        assert_eq!(verdict.longest_odd_cycle_always, Some(true));
        let profiles = verdict.stats.get("nontrivial_coset_profiles").unwrap();
        let profiles = profiles.as_array().unwrap();
        assert_eq!(profiles.len(), 2);
        for profile in profiles {
            let types = profile.get("types").unwrap().as_object().unwrap();
            assert_eq!(types.len(), 1);
            assert_eq!(types.get("1^1 3^1").unwrap().as_u64(), Some(4));
        }
    }

    #[test]
    fn conj13_a4_matches_brute_force_coset_table() {
        let t = Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let desc = CentralizerDesc::of_involution(&t, Ambient::Alternating).unwrap();
        let table: Vec<Permutation> = enumerate_centralizer(&desc).unwrap().collect();

        // Brute force: group the 12 elements of A_4 by coset.
        let mut brute: BTreeSet<BTreeSet<Permutation>> = BTreeSet::new();
        for g in Permutation::all(4).filter(|p| p.is_even()) {
            let coset: BTreeSet<Permutation> =
                table.iter().map(|z| g.compose(z).unwrap()).collect();
            brute.insert(coset);
        }
        assert_eq!(brute.len(), 3);

        let traversed: BTreeSet<BTreeSet<Permutation>> = conjugate_coset_reps(&t)
            .unwrap()
            .map(|(_, rep)| table.iter().map(|z| rep.compose(z).unwrap()).collect())
            .collect();
        assert_eq!(brute, traversed);
    }

    #[test]
    fn conj14_scan_small_degrees() {
        for degree in [5u32, 6] {
            let verdict = conj14_scan(degree).unwrap();
            assert_eq!(verdict.status, Status::Verified, "degree {degree}");
            assert!(verdict.witnesses.is_empty());
        }
        assert!(conj14_scan(9).is_err());
    }
}
