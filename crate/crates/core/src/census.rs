//! Cycle-type censuses over cosets `rep·Z`, and odd-order witness hunting.
//!
//! A census is a mergeable map from cycle type to count; shards own private
//! censuses that are merged in shard order, so the result is independent of
//! thread count.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::centralizer::{
    enumerate_centralizer_range, sample_centralizer, sample_rng, visit_range, CentralizerDesc,
    CentralizerError,
};
use crate::perm::{compose_images_into, sorted_cycle_parts_into, CycleType, PermError, Permutation};

/// Number of logical shards used by parallel streaming. Fixed (not derived
/// from the thread count) so that shard-wise results, and in particular
/// first-hit witnesses, never depend on parallelism.
pub const SHARD_COUNT: u64 = 64;

/// Largest subgroup for which canonical coset labels (lexicographic minimum
/// over the coset) are computed eagerly.
pub const LABEL_BUDGET: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error(transparent)]
    Centralizer(#[from] CentralizerError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Counts of cycle types over some multiset of permutations of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleTypeCensus {
    degree: u32,
    entries: BTreeMap<CycleType, u64>,
    total: u64,
}

impl CycleTypeCensus {
    pub fn new(degree: u32) -> CycleTypeCensus {
        CycleTypeCensus {
            degree,
            entries: BTreeMap::new(),
            total: 0,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn record(&mut self, ty: CycleType) {
        debug_assert_eq!(ty.degree(), self.degree);
        *self.entries.entry(ty).or_insert(0) += 1;
        self.total += 1;
    }

    /// Hot-path variant: `parts` must already be descending-sorted.
    fn record_parts(&mut self, parts: &[u32]) {
        if let Some(count) = self.entries.get_mut(parts) {
            *count += 1;
        } else {
            self.entries.insert(CycleType::new(parts.to_vec()), 1);
        }
        self.total += 1;
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn entries(&self) -> impl Iterator<Item = (&CycleType, u64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn types(&self) -> BTreeSet<CycleType> {
        self.entries.keys().cloned().collect()
    }

    pub fn count_of(&self, ty: &CycleType) -> u64 {
        self.entries.get(ty.parts()).copied().unwrap_or(0)
    }

    /// True iff every part of every recorded type is even; an empty census
    /// is vacuously all-even.
    pub fn all_even_cycles(&self) -> bool {
        self.entries.keys().all(|ty| ty.all_parts_even())
    }

    /// Set of element orders realized by the recorded types.
    pub fn orders(&self) -> Result<BTreeSet<u64>, PermError> {
        self.entries.keys().map(|ty| ty.order()).collect()
    }

    pub fn merge(mut self, other: CycleTypeCensus) -> Result<CycleTypeCensus, CensusError> {
        if self.degree != other.degree {
            return Err(CensusError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        for (ty, count) in other.entries {
            *self.entries.entry(ty).or_insert(0) += count;
        }
        self.total += other.total;
        Ok(self)
    }
}

pub fn all_even_cycles(census: &CycleTypeCensus) -> bool {
    census.all_even_cycles()
}

pub fn orders_from_census(census: &CycleTypeCensus) -> Result<BTreeSet<u64>, PermError> {
    census.orders()
}

pub fn merge_census(
    a: CycleTypeCensus,
    b: CycleTypeCensus,
) -> Result<CycleTypeCensus, CensusError> {
    a.merge(b)
}

/// Census of `cycle_type(rep ∘ z)` over an explicit stream of subgroup
/// elements.
pub fn coset_census_stream(
    rep: &Permutation,
    elements: impl Iterator<Item = Permutation>,
) -> Result<CycleTypeCensus, CensusError> {
    let mut census = CycleTypeCensus::new(rep.degree());
    for z in elements {
        if z.degree() != rep.degree() {
            return Err(CensusError::DegreeMismatch {
                left: rep.degree(),
                right: z.degree(),
            });
        }
        census.record(rep.compose(&z)?.cycle_type());
    }
    Ok(census)
}

/// Exhaustive census of the coset `rep·Z`, streamed over the centralizer's
/// canonical enumeration, sharded over fixed parameter ranges.
pub fn coset_census_exhaustive(
    rep: &Permutation,
    desc: &CentralizerDesc,
    budget: u64,
) -> Result<CycleTypeCensus, CensusError> {
    if rep.degree() != desc.degree() {
        return Err(CensusError::DegreeMismatch {
            left: rep.degree(),
            right: desc.degree(),
        });
    }
    let size = desc
        .param_space_size()
        .ok_or(CentralizerError::OrderOverflow)?;
    if size > budget {
        return Err(CensusError::Centralizer(
            CentralizerError::EnumerationBudget { size, budget },
        ));
    }
    let shards = shard_bounds(size);
    let censuses: Vec<CycleTypeCensus> = shards
        .par_iter()
        .map(|&(start, end)| {
            let mut census = CycleTypeCensus::new(desc.degree());
            let mut composed = vec![0u32; desc.degree() as usize];
            let mut parts: Vec<u32> = Vec::with_capacity(desc.degree() as usize);
            visit_range(desc, start, end, |z_images| {
                compose_images_into(&mut composed, rep.images(), z_images);
                sorted_cycle_parts_into(&composed, &mut parts);
                census.record_parts(&parts);
            });
            census
        })
        .collect();
    let mut merged = CycleTypeCensus::new(desc.degree());
    for census in censuses {
        merged = merged.merge(census)?;
    }
    Ok(merged)
}

/// Sampled census: `samples` uniform draws from the centralizer, sharded
/// into fixed blocks with per-block RNG streams.
pub fn coset_census_sampled(
    rep: &Permutation,
    desc: &CentralizerDesc,
    samples: u64,
    seed: u64,
) -> Result<CycleTypeCensus, CensusError> {
    if rep.degree() != desc.degree() {
        return Err(CensusError::DegreeMismatch {
            left: rep.degree(),
            right: desc.degree(),
        });
    }
    let blocks = sample_blocks(samples);
    let censuses: Vec<CycleTypeCensus> = blocks
        .par_iter()
        .map(|&(block, count)| {
            let mut rng = sample_rng(seed, block);
            let mut census = CycleTypeCensus::new(desc.degree());
            let mut composed = vec![0u32; desc.degree() as usize];
            let mut parts: Vec<u32> = Vec::with_capacity(desc.degree() as usize);
            for _ in 0..count {
                let z = sample_centralizer(desc, &mut rng);
                compose_images_into(&mut composed, rep.images(), z.images());
                sorted_cycle_parts_into(&composed, &mut parts);
                census.record_parts(&parts);
            }
            census
        })
        .collect();
    let mut merged = CycleTypeCensus::new(desc.degree());
    for census in censuses {
        merged = merged.merge(census)?;
    }
    Ok(merged)
}

pub(crate) fn shard_bounds(size: u64) -> Vec<(u64, u64)> {
    let shard_count = SHARD_COUNT.min(size.max(1));
    let per = size / shard_count;
    let extra = size % shard_count;
    let mut bounds = Vec::with_capacity(shard_count as usize);
    let mut start = 0;
    for i in 0..shard_count {
        let len = per + u64::from(i < extra);
        bounds.push((start, start + len));
        start += len;
    }
    bounds
}

pub(crate) fn sample_blocks(samples: u64) -> Vec<(u64, u64)> {
    let block_count = SHARD_COUNT.min(samples.max(1));
    let per = samples / block_count;
    let extra = samples % block_count;
    (0..block_count)
        .map(|i| (i, per + u64::from(i < extra)))
        .collect()
}

/// Record of one fact about one coset: an odd-order element found in it, an
/// all-even violation, or a completed search that found nothing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub coset_label: Permutation,
    pub element: Permutation,
    pub element_order: u64,
    pub kind: WitnessKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    OddOrderFound,
    AllEvenViolation,
    NoneFound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Sweep the centralizer in canonical enumeration order.
    Exhaustive,
    /// Seeded uniform draws; can exhibit witnesses but never prove absence.
    Sampled { seed: u64 },
}

#[derive(Debug, Clone)]
pub struct OddOrderSearch {
    pub witness: Witness,
    pub inspected: u64,
    /// True only when an exhaustive sweep completed: a `NoneFound` witness
    /// with `conclusive` set is a proof that the coset has no odd-order
    /// element. Sampled searches are never conclusive on absence.
    pub conclusive: bool,
}

/// Finds an element of odd order in `rep·Z`, inspecting at most `budget`
/// subgroup elements.
pub fn find_odd_order_element(
    rep: &Permutation,
    desc: &CentralizerDesc,
    mode: SearchMode,
    budget: u64,
) -> Result<OddOrderSearch, CensusError> {
    assert!(budget >= 1, "budget must be positive");
    if rep.degree() != desc.degree() {
        return Err(CensusError::DegreeMismatch {
            left: rep.degree(),
            right: desc.degree(),
        });
    }
    let label = canonical_coset_label(rep, desc);
    let mut inspected = 0u64;
    match mode {
        SearchMode::Exhaustive => {
            let size = desc
                .param_space_size()
                .ok_or(CentralizerError::OrderOverflow)?;
            let subgroup_order = desc.order()?;
            for z in enumerate_centralizer_range(desc, 0, size) {
                if inspected >= budget {
                    break;
                }
                inspected += 1;
                let w = rep.compose(&z)?;
                if w.cycle_type().is_odd_order() {
                    let element_order = w.order()?;
                    return Ok(OddOrderSearch {
                        witness: Witness {
                            coset_label: label,
                            element: w,
                            element_order,
                            kind: WitnessKind::OddOrderFound,
                        },
                        inspected,
                        conclusive: true,
                    });
                }
            }
            let exhausted = inspected == subgroup_order;
            let element_order = label.order()?;
            Ok(OddOrderSearch {
                witness: Witness {
                    coset_label: label.clone(),
                    element: label,
                    element_order,
                    kind: WitnessKind::NoneFound,
                },
                inspected,
                conclusive: exhausted,
            })
        }
        SearchMode::Sampled { seed } => {
            let mut rng = sample_rng(seed, 0);
            while inspected < budget {
                inspected += 1;
                let z = sample_centralizer(desc, &mut rng);
                let w = rep.compose(&z)?;
                if w.cycle_type().is_odd_order() {
                    let element_order = w.order()?;
                    return Ok(OddOrderSearch {
                        witness: Witness {
                            coset_label: label,
                            element: w,
                            element_order,
                            kind: WitnessKind::OddOrderFound,
                        },
                        inspected,
                        conclusive: true,
                    });
                }
            }
            let element_order = label.order()?;
            Ok(OddOrderSearch {
                witness: Witness {
                    coset_label: label.clone(),
                    element: label,
                    element_order,
                    kind: WitnessKind::NoneFound,
                },
                inspected,
                conclusive: false,
            })
        }
    }
}

/// Canonical label of the coset `rep·Z`: the lexicographically smallest
/// image list among its members. Labels are for stable report keys and
/// deduplication; when the subgroup is too large to sweep, the
/// representative itself is used.
pub fn canonical_coset_label(rep: &Permutation, desc: &CentralizerDesc) -> Permutation {
    let Some(size) = desc.param_space_size() else {
        return rep.clone();
    };
    if size > LABEL_BUDGET {
        return rep.clone();
    }
    let mut best = rep.images().to_vec();
    let mut composed = vec![0u32; rep.degree() as usize];
    visit_range(desc, 0, size, |z_images| {
        compose_images_into(&mut composed, rep.images(), z_images);
        if composed.as_slice() < best.as_slice() {
            best.copy_from_slice(&composed);
        }
    });
    Permutation::from_images(best).expect("coset members are permutations")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::{build_y, Ambient};

    fn type_of(parts: &[u32]) -> CycleType {
        CycleType::new(parts.to_vec())
    }

    #[test]
    fn trivial_census() {
        let id = Permutation::identity(8).unwrap();
        let census = coset_census_stream(&id, std::iter::once(id.clone())).unwrap();
        assert_eq!(census.total(), 1);
        assert_eq!(census.types(), [type_of(&[1; 8])].into());
        assert!(!census.all_even_cycles());
        assert_eq!(census.orders().unwrap(), [1].into());
    }

    #[test]
    fn census_of_degree_8_coset() {
        let desc = CentralizerDesc::standard(1, Ambient::Alternating);
        let census = coset_census_exhaustive(&build_y(1), &desc, 1 << 20).unwrap();
        assert_eq!(census.total(), 96);
        let expected = [type_of(&[2, 2, 2, 2]), type_of(&[6, 2]), type_of(&[4, 4])];
        assert_eq!(census.types(), expected.into());
        assert!(census.all_even_cycles());
        assert_eq!(census.orders().unwrap(), [2, 4, 6].into());
    }

    #[test]
    fn exhaustive_census_agrees_with_stream() {
        let desc = CentralizerDesc::standard(1, Ambient::Alternating);
        let y = build_y(1);
        let streamed = coset_census_stream(
            &y,
            crate::centralizer::enumerate_centralizer(&desc).unwrap(),
        )
        .unwrap();
        let sharded = coset_census_exhaustive(&y, &desc, 1 << 20).unwrap();
        assert_eq!(streamed, sharded);
    }

    #[test]
    fn merge_is_commutative_and_partition_independent() {
        let desc = CentralizerDesc::standard(1, Ambient::Alternating);
        let y = build_y(1);
        let size = desc.param_space_size().unwrap();
        let whole = coset_census_exhaustive(&y, &desc, 1 << 20).unwrap();

        let mut left = CycleTypeCensus::new(8);
        let mut right = CycleTypeCensus::new(8);
        let mid = size / 3;
        for (census, range) in [(&mut left, (0, mid)), (&mut right, (mid, size))] {
            for z in enumerate_centralizer_range(&desc, range.0, range.1) {
                census.record(y.compose(&z).unwrap().cycle_type());
            }
        }
        let ab = left.clone().merge(right.clone()).unwrap();
        let ba = right.merge(left).unwrap();
        assert_eq!(ab, ba);
        assert_eq!(ab, whole);

        let empty = CycleTypeCensus::new(8);
        assert_eq!(whole.clone().merge(empty).unwrap(), whole);
    }

    #[test]
    fn merge_rejects_degree_mismatch() {
        let a = CycleTypeCensus::new(8);
        let b = CycleTypeCensus::new(16);
        assert!(matches!(
            a.merge(b),
            Err(CensusError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn sampled_census_is_deterministic_and_all_even() {
        let desc = CentralizerDesc::standard(3, Ambient::Alternating);
        let y = build_y(3);
        let a = coset_census_sampled(&y, &desc, 5_000, 7).unwrap();
        let b = coset_census_sampled(&y, &desc, 5_000, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total(), 5_000);
        assert!(a.all_even_cycles());
    }

    #[test]
    fn no_odd_order_element_in_the_degree_8_coset() {
        let desc = CentralizerDesc::standard(1, Ambient::Alternating);
        let search =
            find_odd_order_element(&build_y(1), &desc, SearchMode::Exhaustive, 1 << 20).unwrap();
        assert_eq!(search.witness.kind, WitnessKind::NoneFound);
        assert!(search.conclusive);
        assert_eq!(search.inspected, 96);
        // The pairing involution is itself the lexicographic minimum.
        assert_eq!(search.witness.coset_label, build_y(1));
    }

    #[test]
    fn trivial_coset_yields_the_identity_witness() {
        let desc = CentralizerDesc::standard(1, Ambient::Alternating);
        let id = Permutation::identity(8).unwrap();
        let search = find_odd_order_element(&id, &desc, SearchMode::Exhaustive, 1 << 20).unwrap();
        assert_eq!(search.witness.kind, WitnessKind::OddOrderFound);
        assert_eq!(search.witness.element, id);
        assert_eq!(search.witness.element_order, 1);
    }

    #[test]
    fn odd_order_witness_in_a4_coset() {
        let t = Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let desc = CentralizerDesc::of_involution(&t, Ambient::Alternating).unwrap();
        let rep = Permutation::from_cycles(4, &[vec![1, 2, 3]]).unwrap();
        let search = find_odd_order_element(&rep, &desc, SearchMode::Exhaustive, 1 << 20).unwrap();
        assert_eq!(search.witness.kind, WitnessKind::OddOrderFound);
        assert_eq!(search.witness.element_order, 3);
        assert_eq!(search.witness.element.cycle_type().parts(), &[3, 1]);
    }

    #[test]
    fn exhaustive_search_matches_direct_scan() {
        let t = Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let desc = CentralizerDesc::of_involution(&t, Ambient::Alternating).unwrap();
        for rep in Permutation::all(4).filter(|p| p.is_even()) {
            let search =
                find_odd_order_element(&rep, &desc, SearchMode::Exhaustive, 1 << 20).unwrap();
            let direct = crate::centralizer::enumerate_centralizer(&desc)
                .unwrap()
                .map(|z| rep.compose(&z).unwrap())
                .find(|w| w.cycle_type().is_odd_order());
            match direct {
                Some(w) => {
                    assert_eq!(search.witness.kind, WitnessKind::OddOrderFound);
                    assert_eq!(search.witness.element, w);
                }
                None => assert_eq!(search.witness.kind, WitnessKind::NoneFound),
            }
        }
    }
}
