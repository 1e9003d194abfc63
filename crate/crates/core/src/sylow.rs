//! Sylow `p`-subgroups of `A_n` for odd `p` with `p ≤ n ≤ 3p−1`, and the
//! constructive procedures showing that no nontrivial coset `x·P` consists
//! entirely of `p`-power-order elements.
//!
//! In this degree range a Sylow `p`-subgroup is `⟨(1 2 ⋯ p)⟩` of order `p`
//! (when `n ≤ 2p−1`) or `⟨(1 2 ⋯ p), (p+1 ⋯ 2p)⟩` of order `p²` (when
//! `2p ≤ n ≤ 3p−1`), and every nonidentity `p`-power-order element is a
//! `p`-cycle or a product of two disjoint `p`-cycles. The τ-finders return
//! an explicit `τ ∈ P` whose product with the given `x` cannot have order
//! `p`; brute-force coset reports cross-check every output.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::conjectures::Status;
use crate::perm::{lex, Parity, PermError, Permutation};
use crate::util::DenseBits;

/// Largest degree accepted by the whole-group exhaustive scan.
pub const SCAN_DEGREE_CAP: u32 = 10;

/// Largest subgroup order accepted by [`coset_order_report`].
pub const COSET_REPORT_CAP: u64 = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SylowError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("degree {n} is outside {p} ≤ n ≤ 3p−1 for p = {p}")]
    DegreeOutOfRange { p: u32, n: u32 },
    #[error("target {target} does not cover p = {p}, n = {n}")]
    TargetMismatch { target: String, p: u32, n: u32 },
    #[error("x lies in the subgroup; only nontrivial cosets are considered")]
    XInSubgroup,
    #[error("expected a {p}-cycle")]
    NotAPCycle { p: u32 },
    #[error("unsupported shape: {0}")]
    WrongShape(String),
    #[error("point {0} is outside the generator's support")]
    PointOutsideSupport(u32),
    #[error("the supports of x and the generator are disjoint")]
    DisjointSupports,
    #[error("degree {degree} exceeds the exhaustive-scan cap {cap}")]
    ScanBudget { degree: u32, cap: u32 },
    #[error("subgroup order {order} exceeds the coset-report cap {cap}")]
    ReportBudget { order: u64, cap: u64 },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A Sylow `p`-subgroup of `A_n`, `p` odd, `p ≤ n ≤ 3p−1`: one or two
/// disjoint `p`-cycle generators.
#[derive(Debug, Clone)]
pub struct SylowDesc {
    p: u32,
    degree: u32,
    generators: Vec<Permutation>,
    order: u64,
}

pub fn build_sylow(p: u32, degree: u32) -> Result<SylowDesc, SylowError> {
    if p < 3 || !is_prime(p) {
        return Err(SylowError::NotOddPrime(p));
    }
    if degree < p || degree > 3 * p - 1 {
        return Err(SylowError::DegreeOutOfRange { p, n: degree });
    }
    let mut generators = vec![Permutation::from_cycles(
        degree,
        &[(1..=p).collect::<Vec<u32>>()],
    )?];
    if degree >= 2 * p {
        generators.push(Permutation::from_cycles(
            degree,
            &[(p + 1..=2 * p).collect::<Vec<u32>>()],
        )?);
    }
    let order = (p as u64).pow(generators.len() as u32);
    Ok(SylowDesc {
        p,
        degree,
        generators,
        order,
    })
}

impl SylowDesc {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All `p` (or `p²`) elements; the generators have disjoint supports,
    /// so products of generator powers cover the subgroup exactly once.
    pub fn elements(&self) -> Vec<Permutation> {
        match self.generators.len() {
            1 => (0..self.p as i64).map(|i| self.generators[0].power(i)).collect(),
            _ => {
                let mut out = Vec::with_capacity((self.p * self.p) as usize);
                for i in 0..self.p as i64 {
                    let a = self.generators[0].power(i);
                    for j in 0..self.p as i64 {
                        out.push(a.compose(&self.generators[1].power(j)).expect("equal degrees"));
                    }
                }
                out
            }
        }
    }

    /// Membership by enumeration; the subgroup has at most `p²` elements.
    pub fn contains(&self, x: &Permutation) -> bool {
        x.degree() == self.degree && self.elements().iter().any(|e| e == x)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn is_p_power(order: u64, p: u32) -> bool {
    let p = p as u64;
    let mut o = order;
    while o.is_multiple_of(p) {
        o /= p;
    }
    o == 1
}

/// The unique exponent `k ∈ {0..len−1}` with `c^k(a) = b`, for `a`, `b` in
/// the support of the cycle `c`: the cyclic group acts regularly on its
/// support.
pub fn power_mapping(c: &Permutation, a: u32, b: u32) -> Result<u32, SylowError> {
    let support = c.support();
    if !support.contains(&a) {
        return Err(SylowError::PointOutsideSupport(a));
    }
    if !support.contains(&b) {
        return Err(SylowError::PointOutsideSupport(b));
    }
    let mut point = a;
    for k in 0..support.len() as u32 {
        if point == b {
            return Ok(k);
        }
        point = c.apply(point);
    }
    unreachable!("a and b lie on the same cycle");
}

/// Which structural feature of `x∘τ` rules out order `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TauEffect {
    /// `x∘τ` fixes a point of the overlap, so it moves fewer points than a
    /// full `p`-cycle (or double `p`-cycle) would.
    CreatesFixedPoint,
    /// `x` and `τ` share exactly one point, so the product is a single
    /// `(|supp x| + |supp τ| − 1)`-cycle.
    SplicesFullCycle,
    /// `x∘τ` acquires a cycle of length strictly between 1 and `p`.
    CutsShortCycle,
}

fn is_p_cycle(x: &Permutation, p: u32) -> bool {
    let parts = x.cycle_type();
    let parts = parts.parts();
    parts.first() == Some(&p) && parts[1..].iter().all(|&q| q == 1)
}

fn is_double_p_cycle(x: &Permutation, p: u32) -> bool {
    let parts = x.cycle_type();
    let parts = parts.parts();
    parts.len() >= 2
        && parts[0] == p
        && parts[1] == p
        && parts[2..].iter().all(|&q| q == 1)
}

/// The nontrivial cycle of a `p`-cycle, min-first.
fn cycle_word(x: &Permutation) -> Vec<u32> {
    x.cycle_decompose()
        .into_iter()
        .find(|c| c.len() > 1)
        .expect("x is not the identity")
}

fn rotate_to_front(word: &mut [u32], position: usize) {
    word.rotate_left(position);
}

/// Case analysis producing `τ ∈ ⟨c⟩` with `x∘τ` not a `p`-cycle, for a
/// `p`-cycle `x` whose support meets `supp(c)`. Writing `A = supp(c)`:
///
/// * `|A ∩ supp x| = p`: pick `τ` carrying the successor of `min A` in `x`
///   back to `min A`; the product fixes that successor.
/// * `|A ∩ supp x| = 1`: the two cycles share one point, and any `τ`
///   carrying a second point of `A` onto the shared point splices them
///   into one `(2p−1)`-cycle.
/// * otherwise: rotate `x` to start at the smallest point outside `A`
///   whose predecessor is in `A`; carrying the first `A`-point after the
///   start onto the last symbol closes a cycle shorter than `p`.
fn tau_against_generator(
    c: &Permutation,
    x: &Permutation,
) -> Result<(Permutation, TauEffect), SylowError> {
    let a_set = c.support();
    let in_a = |pt: u32| a_set.binary_search(&pt).is_ok();
    let mut word = cycle_word(x);
    let p = word.len();
    let overlap = word.iter().filter(|&&pt| in_a(pt)).count();

    if overlap == 0 {
        return Err(SylowError::DisjointSupports);
    }
    if overlap == p {
        // Full overlap: supp(x) = A.
        let m = a_set[0];
        let pos = word.iter().position(|&pt| pt == m).expect("m in word");
        rotate_to_front(&mut word, pos);
        let a1 = word[1];
        let k = power_mapping(c, a1, m)?;
        return Ok((c.power(k as i64), TauEffect::CreatesFixedPoint));
    }
    if overlap == 1 {
        let a = *word.iter().find(|&&pt| in_a(pt)).expect("one shared point");
        let a1 = *a_set.iter().find(|&&pt| pt != a).expect("p ≥ 3");
        let k = power_mapping(c, a1, a)?;
        return Ok((c.power(k as i64), TauEffect::SplicesFullCycle));
    }

    // Partial overlap: 2 ≤ |A ∩ supp x| ≤ p−1.
    let start = (0..p)
        .filter(|&i| !in_a(word[i]) && in_a(word[(i + p - 1) % p]))
        .min_by_key(|&i| word[i])
        .expect("both point kinds occur on the cycle");
    rotate_to_front(&mut word, start);
    let a = word[p - 1];
    debug_assert!(in_a(a));
    let a1 = *word[1..]
        .iter()
        .find(|&&pt| in_a(pt))
        .expect("at least two A-symbols");
    debug_assert_ne!(a1, a);
    let k = power_mapping(c, a1, a)?;
    Ok((c.power(k as i64), TauEffect::CutsShortCycle))
}

/// For an order-`p` Sylow subgroup (`n ≤ 2p−1`) and a `p`-cycle `x ∉ P`,
/// returns `τ ∈ P` such that `x∘τ` is not a `p`-cycle; in this degree
/// range that already forces the order of `x∘τ` away from every power
/// of `p`.
pub fn tau_breaking_p_cycle(
    desc: &SylowDesc,
    x: &Permutation,
) -> Result<(Permutation, TauEffect), SylowError> {
    if desc.generators.len() != 1 {
        return Err(SylowError::WrongShape(
            "expected a single-generator (order p) subgroup".into(),
        ));
    }
    if !is_p_cycle(x, desc.p) {
        return Err(SylowError::NotAPCycle { p: desc.p });
    }
    if desc.contains(x) {
        return Err(SylowError::XInSubgroup);
    }
    tau_against_generator(&desc.generators[0], x)
}

/// For an order-`p²` Sylow subgroup (`2p ≤ n ≤ 3p−1`) and a `p`-cycle
/// `x ∉ P`, returns `τ ∈ P` with `order(x∘τ) ≠ p`. The generator whose
/// support meets `supp(x)` in the fewest points (ties to the smaller
/// minimum) plays the role of `A` in the case analysis.
pub fn tau_breaking_order_p(
    desc: &SylowDesc,
    x: &Permutation,
) -> Result<(Permutation, TauEffect), SylowError> {
    if desc.generators.len() != 2 {
        return Err(SylowError::WrongShape(
            "expected a two-generator (order p²) subgroup".into(),
        ));
    }
    if !is_p_cycle(x, desc.p) {
        return Err(SylowError::NotAPCycle { p: desc.p });
    }
    if desc.contains(x) {
        return Err(SylowError::XInSubgroup);
    }
    let x_support = x.support();
    let generator = desc
        .generators
        .iter()
        .filter_map(|c| {
            let support = c.support();
            let overlap = support
                .iter()
                .filter(|pt| x_support.binary_search(pt).is_ok())
                .count();
            (overlap > 0).then_some((overlap, support[0], c))
        })
        .min_by_key(|&(overlap, min_point, _)| (overlap, min_point))
        .ok_or(SylowError::DisjointSupports)?
        .2;
    tau_against_generator(generator, x)
}

/// For the Sylow `p²`-subgroup of `A_{2p}` and any `p`-power-order
/// `x ∉ P` (a `p`-cycle or a product of two disjoint `p`-cycles), returns
/// `τ ∈ P` with `order(x∘τ) ≠ p` — hence not a power of `p`.
///
/// For double `p`-cycles: a factor cycle of odd length meeting both
/// generator supports must traverse two points of one support
/// consecutively, and undoing that step with a generator power makes the
/// product fix a point. If the damped product happens to be a `p`-cycle,
/// one more application of the `p`-cycle finder settles it.
pub fn tau_breaking_p_power(
    desc: &SylowDesc,
    x: &Permutation,
) -> Result<(Permutation, TauEffect), SylowError> {
    if desc.generators.len() != 2 || desc.degree != 2 * desc.p {
        return Err(SylowError::WrongShape(
            "expected the order-p² subgroup of the degree-2p group".into(),
        ));
    }
    if is_p_cycle(x, desc.p) {
        return tau_breaking_order_p(desc, x);
    }
    if !is_double_p_cycle(x, desc.p) {
        return Err(SylowError::WrongShape(format!(
            "expected a {p}-cycle or a disjoint double {p}-cycle",
            p = desc.p
        )));
    }
    if desc.contains(x) {
        return Err(SylowError::XInSubgroup);
    }

    let factors: Vec<Vec<u32>> = x
        .cycle_decompose()
        .into_iter()
        .filter(|c| c.len() > 1)
        .collect();
    let supports: Vec<Vec<u32>> = factors
        .iter()
        .map(|f| {
            let mut s = f.clone();
            s.sort_unstable();
            s
        })
        .collect();
    let gen_supports: Vec<Vec<u32>> = desc.generators.iter().map(|c| c.support()).collect();

    // Factors aligned with the generator supports: break whichever factor
    // is not already a generator power; its product with τ fixes a point
    // while the untouched factor keeps its own support.
    if supports.contains(&gen_supports[0]) {
        for (gi, generator) in desc.generators.iter().enumerate() {
            let fi = supports
                .iter()
                .position(|s| *s == gen_supports[gi])
                .expect("both factors align when one does");
            let factor =
                Permutation::from_cycles(desc.degree, &[factors[fi].clone()])?;
            let is_power = (1..desc.p as i64).any(|k| generator.power(k) == factor);
            if !is_power {
                let (tau, _) = tau_against_generator(generator, &factor)?;
                return Ok((tau, TauEffect::CreatesFixedPoint));
            }
        }
        unreachable!("x ∉ P, so some aligned factor is not a generator power");
    }

    // Mixed-support factors: scan the factor containing the smallest point
    // for two consecutive symbols inside one generator support.
    let word = &factors[0];
    let p = word.len();
    for (generator, support) in desc.generators.iter().zip(&gen_supports) {
        let in_set = |pt: u32| support.binary_search(&pt).is_ok();
        for i in 0..p {
            let a1 = word[i];
            let a2 = word[(i + 1) % p];
            if in_set(a1) && in_set(a2) {
                let k = power_mapping(generator, a2, a1)?;
                let tau0 = generator.power(k as i64);
                let damped = x.compose(&tau0)?;
                debug_assert_eq!(damped.apply(a2), a2);
                if is_p_cycle(&damped, desc.p) {
                    let (tau1, effect) = tau_breaking_order_p(desc, &damped)?;
                    return Ok((tau0.compose(&tau1)?, effect));
                }
                return Ok((tau0, TauEffect::CreatesFixedPoint));
            }
        }
    }
    unreachable!("an odd cycle meeting both supports has a same-support adjacency");
}

/// Order statistics of the coset `rep·P`, by brute force over the (small)
/// subgroup.
#[derive(Debug, Clone, Serialize)]
pub struct CosetOrderReport {
    pub coset_rep: Permutation,
    pub order_counts: BTreeMap<u64, u64>,
    pub all_p_power: bool,
    pub has_order_p: bool,
    pub tau_used: Option<Permutation>,
}

pub fn coset_order_report(
    desc: &SylowDesc,
    rep: &Permutation,
) -> Result<CosetOrderReport, SylowError> {
    if desc.order > COSET_REPORT_CAP {
        return Err(SylowError::ReportBudget {
            order: desc.order,
            cap: COSET_REPORT_CAP,
        });
    }
    let mut order_counts: BTreeMap<u64, u64> = BTreeMap::new();
    for tau in desc.elements() {
        let order = rep.compose(&tau)?.order()?;
        *order_counts.entry(order).or_insert(0) += 1;
    }
    let all_p_power = order_counts.keys().all(|&o| is_p_power(o, desc.p));
    let has_order_p = order_counts.contains_key(&(desc.p as u64));
    Ok(CosetOrderReport {
        coset_rep: rep.clone(),
        order_counts,
        all_p_power,
        has_order_p,
        tau_used: None,
    })
}

/// Degree regime covered by an exhaustive scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanTarget {
    /// `p ≤ n ≤ 2p−1`: cyclic Sylow subgroup of order `p`.
    Cyclic,
    /// `n = 2p`: order `p²`, the full coset claim.
    N2p,
    /// `2p < n ≤ 3p−1`: order `p²`, `p`-cycle finder only.
    Extended,
}

impl ScanTarget {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanTarget::Cyclic => "cyclic",
            ScanTarget::N2p => "n2p",
            ScanTarget::Extended => "extended",
        }
    }

    fn covers(self, p: u32, n: u32) -> bool {
        match self {
            ScanTarget::Cyclic => n >= p && n < 2 * p,
            ScanTarget::N2p => n == 2 * p,
            ScanTarget::Extended => n > 2 * p && n < 3 * p,
        }
    }
}

impl std::str::FromStr for ScanTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cyclic" => Ok(ScanTarget::Cyclic),
            "n2p" => Ok(ScanTarget::N2p),
            "extended" => Ok(ScanTarget::Extended),
            other => Err(format!("unknown scan target {other:?}")),
        }
    }
}

/// Result of an exhaustive coset scan of `A_n` against its Sylow
/// `p`-subgroup.
#[derive(Debug, Clone, Serialize)]
pub struct SylowScan {
    pub p: u32,
    pub n: u32,
    pub target: ScanTarget,
    pub cosets_checked: u64,
    /// Canonical labels of nontrivial cosets consisting entirely of
    /// `p`-power-order elements.
    pub violations: Vec<Permutation>,
    pub constructive_runs: u64,
    pub constructive_agreements: u64,
    pub status: Status,
}

/// Sweeps every coset of the Sylow `p`-subgroup in `A_n`: cosets are
/// discovered in lexicographic order of their minimal element (so the
/// minimal element is the canonical label), each is checked for the
/// all-`p`-power property, and every admissible member is fed to the
/// matching constructive τ-finder and cross-checked against the coset's
/// brute-force order profile.
pub fn exhaustive_scan(p: u32, n: u32, target: ScanTarget) -> Result<SylowScan, SylowError> {
    if n > SCAN_DEGREE_CAP {
        return Err(SylowError::ScanBudget {
            degree: n,
            cap: SCAN_DEGREE_CAP,
        });
    }
    let desc = build_sylow(p, n)?;
    if !target.covers(p, n) {
        return Err(SylowError::TargetMismatch {
            target: target.as_str().into(),
            p,
            n,
        });
    }
    let table = desc.elements();
    let group_size = lex::factorial(n as u64).expect("small degree");
    let mut visited = DenseBits::new(group_size);
    let mut scan = SylowScan {
        p,
        n,
        target,
        cosets_checked: 0,
        violations: Vec::new(),
        constructive_runs: 0,
        constructive_agreements: 0,
        status: Status::Verified,
    };

    let mut images: Vec<u32> = (1..=n).collect();
    let mut parity = Parity::Even;
    let mut members: Vec<Permutation> = Vec::with_capacity(table.len());
    loop {
        if parity.is_even() && !visited.get(lex::rank(&images)) {
            let g = Permutation::from_images(images.clone())?;
            scan.cosets_checked += 1;
            members.clear();
            let mut all_p_power = true;
            for tau in &table {
                let w = g.compose(tau)?;
                visited.set(lex::rank(w.images()));
                all_p_power &= is_p_power(w.order()?, p);
                members.push(w);
            }
            let trivial = g.is_identity();
            if !trivial && all_p_power {
                scan.violations.push(g.clone());
            }
            if !trivial {
                for w in &members {
                    let finder = match (target, classify(w, p)) {
                        (ScanTarget::Cyclic, Shape::PCycle) => {
                            Some(tau_breaking_p_cycle(&desc, w))
                        }
                        (ScanTarget::N2p, Shape::PCycle)
                        | (ScanTarget::Extended, Shape::PCycle) => {
                            Some(tau_breaking_order_p(&desc, w))
                        }
                        (ScanTarget::N2p, Shape::DoublePCycle) => {
                            Some(tau_breaking_p_power(&desc, w))
                        }
                        _ => None,
                    };
                    if let Some(result) = finder {
                        scan.constructive_runs += 1;
                        let ok = match result {
                            Ok((tau, _)) => {
                                desc.contains(&tau)
                                    && w.compose(&tau)?.order()? != p as u64
                                    && !all_p_power
                            }
                            Err(_) => false,
                        };
                        if ok {
                            scan.constructive_agreements += 1;
                        } else {
                            scan.status = Status::Violated;
                            scan.violations.push(w.clone());
                        }
                    }
                }
            }
        }
        if !lex::next_permutation_tracked(&mut images, &mut parity) {
            break;
        }
    }

    if !scan.violations.is_empty() {
        scan.status = Status::Violated;
    }
    Ok(scan)
}

enum Shape {
    PCycle,
    DoublePCycle,
    Other,
}

fn classify(w: &Permutation, p: u32) -> Shape {
    if is_p_cycle(w, p) {
        Shape::PCycle
    } else if is_double_p_cycle(w, p) {
        Shape::DoublePCycle
    } else {
        Shape::Other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_cycle(degree: u32, points: &[u32]) -> Permutation {
        Permutation::from_cycles(degree, &[points.to_vec()]).unwrap()
    }

    #[test]
    fn build_sylow_shapes() {
        let small = build_sylow(5, 9).unwrap();
        assert_eq!(small.order(), 5);
        assert_eq!(small.generators().len(), 1);
        assert_eq!(small.elements().len(), 5);

        let big = build_sylow(5, 10).unwrap();
        assert_eq!(big.order(), 25);
        assert_eq!(big.generators()[1].cycle_string(), "(6 7 8 9 10)");
        assert_eq!(big.elements().len(), 25);

        let whole = build_sylow(3, 3).unwrap();
        assert_eq!(whole.order(), 3);

        assert!(matches!(build_sylow(4, 8), Err(SylowError::NotOddPrime(4))));
        assert!(matches!(build_sylow(2, 4), Err(SylowError::NotOddPrime(2))));
        assert!(matches!(
            build_sylow(5, 15),
            Err(SylowError::DegreeOutOfRange { .. })
        ));
        assert!(matches!(
            build_sylow(5, 4),
            Err(SylowError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn power_mapping_examples() {
        let c = p_cycle(5, &[1, 2, 3, 4, 5]);
        assert_eq!(power_mapping(&c, 1, 4).unwrap(), 3);
        assert_eq!(power_mapping(&c, 2, 2).unwrap(), 0);
        assert!(matches!(
            power_mapping(&p_cycle(9, &[1, 2, 3, 4, 5]), 6, 1),
            Err(SylowError::PointOutsideSupport(6))
        ));
    }

    #[test]
    fn power_mapping_is_regular() {
        for p in [3u32, 5, 7, 11, 13] {
            let c = p_cycle(p, &(1..=p).collect::<Vec<u32>>());
            for a in 1..=p {
                for b in 1..=p {
                    let k = power_mapping(&c, a, b).unwrap();
                    assert_eq!(c.power(k as i64).apply(a), b);
                    // uniqueness: no other exponent works
                    let hits = (0..p)
                        .filter(|&j| c.power(j as i64).apply(a) == b)
                        .count();
                    assert_eq!(hits, 1);
                }
            }
        }
    }

    #[test]
    fn full_overlap_case_fixes_a_point() {
        let desc = build_sylow(5, 9).unwrap();
        let x = p_cycle(9, &[1, 3, 2, 4, 5]);
        let (tau, effect) = tau_breaking_p_cycle(&desc, &x).unwrap();
        assert_eq!(effect, TauEffect::CreatesFixedPoint);
        assert_eq!(tau, desc.generators()[0].power(3));
        let product = x.compose(&tau).unwrap();
        assert_eq!(product.apply(3), 3);
        assert!(!is_p_cycle(&product, 5));
    }

    #[test]
    fn single_overlap_case_splices_a_9_cycle() {
        let desc = build_sylow(5, 9).unwrap();
        let x = p_cycle(9, &[6, 7, 8, 9, 1]);
        let (tau, effect) = tau_breaking_p_cycle(&desc, &x).unwrap();
        assert_eq!(effect, TauEffect::SplicesFullCycle);
        let product = x.compose(&tau).unwrap();
        assert_eq!(product.cycle_type().parts(), &[9]);
    }

    #[test]
    fn partial_overlap_case_cuts_a_short_cycle() {
        let desc = build_sylow(5, 9).unwrap();
        let x = p_cycle(9, &[6, 1, 7, 2, 3]);
        let (tau, effect) = tau_breaking_p_cycle(&desc, &x).unwrap();
        assert_eq!(effect, TauEffect::CutsShortCycle);
        let product = x.compose(&tau).unwrap();
        // The cycle through the first overlap point is shorter than p.
        let short = product
            .cycle_decompose()
            .into_iter()
            .find(|c| c.contains(&1))
            .unwrap();
        assert!(short.len() > 1 && short.len() < 5, "{short:?}");
        assert!(!is_p_cycle(&product, 5));
    }

    #[test]
    fn finders_reject_subgroup_members_and_bad_shapes() {
        let desc = build_sylow(5, 9).unwrap();
        let c = desc.generators()[0].clone();
        assert!(matches!(
            tau_breaking_p_cycle(&desc, &c.power(2)),
            Err(SylowError::XInSubgroup)
        ));
        let not_cycle = Permutation::from_cycles(9, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert!(matches!(
            tau_breaking_p_cycle(&desc, &not_cycle),
            Err(SylowError::NotAPCycle { .. })
        ));
    }

    #[test]
    fn order_p2_finder_on_spread_out_cycle() {
        let desc = build_sylow(3, 8).unwrap();
        let x = p_cycle(8, &[1, 4, 7]);
        let (tau, _) = tau_breaking_order_p(&desc, &x).unwrap();
        assert!(desc.contains(&tau));
        let product = x.compose(&tau).unwrap();
        assert_ne!(product.order().unwrap(), 3);
    }

    #[test]
    fn p_power_finder_on_double_cycles() {
        let desc = build_sylow(3, 6).unwrap();
        let x = Permutation::from_cycles(6, &[vec![1, 2, 4], vec![3, 5, 6]]).unwrap();
        let (tau, _) = tau_breaking_p_power(&desc, &x).unwrap();
        assert!(desc.contains(&tau));
        let product = x.compose(&tau).unwrap();
        assert_ne!(product.order().unwrap(), 3);
        assert!(product.support().len() < 6);

        let desc = build_sylow(5, 10).unwrap();
        let x = Permutation::from_cycles(10, &[vec![1, 6, 2, 7, 3], vec![4, 8, 5, 9, 10]])
            .unwrap();
        let (tau, _) = tau_breaking_p_power(&desc, &x).unwrap();
        assert!(desc.contains(&tau));
        assert_ne!(x.compose(&tau).unwrap().order().unwrap(), 5);
    }

    #[test]
    fn p_power_finder_delegates_p_cycles() {
        let desc = build_sylow(3, 6).unwrap();
        let x = p_cycle(6, &[1, 4, 2]);
        let (tau, _) = tau_breaking_p_power(&desc, &x).unwrap();
        assert_ne!(x.compose(&tau).unwrap().order().unwrap(), 3);
    }

    #[test]
    fn coset_report_of_trivial_coset() {
        let desc = build_sylow(5, 9).unwrap();
        let id = Permutation::identity(9).unwrap();
        let report = coset_order_report(&desc, &id).unwrap();
        assert_eq!(report.order_counts, [(1, 1), (5, 4)].into());
        assert!(report.all_p_power);
        assert!(report.has_order_p);
    }

    #[test]
    fn coset_report_detects_non_p_power_orders() {
        let desc = build_sylow(5, 9).unwrap();
        let x = p_cycle(9, &[1, 3, 2, 4, 5]);
        let report = coset_order_report(&desc, &x).unwrap();
        assert!(!report.all_p_power);
        let total: u64 = report.order_counts.values().sum();
        assert_eq!(total, desc.order());
    }

    #[test]
    fn scan_small_cyclic_targets() {
        for n in [4u32, 5] {
            let scan = exhaustive_scan(3, n, ScanTarget::Cyclic).unwrap();
            assert_eq!(scan.status, Status::Verified, "n = {n}");
            assert!(scan.violations.is_empty());
            assert!(scan.constructive_runs > 0);
            assert_eq!(scan.constructive_runs, scan.constructive_agreements);
        }
    }

    #[test]
    fn scan_rejects_mismatched_target() {
        assert!(matches!(
            exhaustive_scan(3, 6, ScanTarget::Cyclic),
            Err(SylowError::TargetMismatch { .. })
        ));
        assert!(matches!(
            exhaustive_scan(3, 11, ScanTarget::Extended),
            Err(SylowError::ScanBudget { .. })
        ));
    }

    #[test]
    fn scan_n2p_for_p3() {
        let scan = exhaustive_scan(3, 6, ScanTarget::N2p).unwrap();
        assert_eq!(scan.status, Status::Verified);
        // |A_6| / 9 = 40 cosets, one of them trivial.
        assert_eq!(scan.cosets_checked, 40);
        assert!(scan.violations.is_empty());
        assert_eq!(scan.constructive_runs, scan.constructive_agreements);
    }
}
