//! Structural description of the centralizer `Z(x)` of an involution
//! `x = (a₁ b₁)(a₂ b₂)⋯(aₖ bₖ)` inside `S_N` or `A_N`, with streaming
//! enumeration and uniform sampling.
//!
//! An element commutes with `x` exactly when it permutes the 2-point blocks
//! `{aᵢ, bᵢ}` among themselves (optionally swapping the two points inside a
//! block) and acts arbitrarily on the fixed points of `x`. That gives the
//! bijective parametrization [`WreathParam`]:
//!
//! * `flips`  — per block, whether the two points are swapped on arrival,
//! * `block_perm` — how blocks are transported onto blocks,
//! * `fixed_perm` — the action on the fixed points of `x`.
//!
//! Transporting whole 2-point blocks is always even (each cycle of blocks
//! yields two point cycles of equal length), so the parity of the resulting
//! permutation is `#set flips + parity(fixed_perm)`. `|Z_{S_N}(x)| =
//! 2^k·k!·f!` and the alternating centralizer is exactly half of that.
//!
//! Every parametrized element maps the support of `x` onto itself and the
//! fixed-point set onto itself, by construction. Since products of
//! setwise-fixing permutations fix setwise and the enumeration below is
//! surjective onto `Z(x)`, *every* member of `Z(x)` fixes both sets — the
//! closure argument used by the sampled theorem checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{compose_images_into, lex, Parity, PermError, Permutation};

/// Whole-group enumeration cap for the brute-force oracle.
pub const DEFINITIONAL_DEGREE_CAP: u32 = 10;

/// Default cap on the parameter-space size accepted by the streaming
/// enumerator; larger centralizers must be sampled.
pub const DEFAULT_ENUM_BUDGET: u64 = 20_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CentralizerError {
    #[error("expected an involution (a nonempty product of disjoint 2-cycles)")]
    NotAnInvolution,
    #[error("parameter shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("centralizer order overflows 64-bit arithmetic; use sampling")]
    OrderOverflow,
    #[error("parameter space of size {size} exceeds enumeration budget {budget}; use sampling")]
    EnumerationBudget { size: u64, budget: u64 },
    #[error("degree {degree} exceeds the whole-group enumeration cap {cap}")]
    DegreeBudget { degree: u32, cap: u32 },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Which ambient group the centralizer lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    Alternating,
    Symmetric,
}

impl Ambient {
    pub fn group_name(self, degree: u32) -> String {
        match self {
            Ambient::Alternating => format!("A_{degree}"),
            Ambient::Symmetric => format!("S_{degree}"),
        }
    }

    pub fn admits(self, parity: Parity) -> bool {
        self == Ambient::Symmetric || parity.is_even()
    }
}

/// The block structure of an involution: its 2-cycles and its fixed points.
///
/// For the degree-`8n` family the standard involution is
/// `x = (1 2)(3 4)⋯(4n−1 4n)`, whose support is `A = {1..4n}` and whose
/// fixed-point set is `B = {4n+1..8n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    degree: u32,
    blocks: Vec<(u32, u32)>,
    fixed: Vec<u32>,
}

impl BlockPartition {
    /// Block structure of `(1 2)(3 4)⋯(4n−1 4n)` in degree `8n`.
    pub fn standard(n: u32) -> BlockPartition {
        assert!(n >= 1, "n must be at least 1");
        BlockPartition {
            degree: 8 * n,
            blocks: (1..=2 * n).map(|i| (2 * i - 1, 2 * i)).collect(),
            fixed: (4 * n + 1..=8 * n).collect(),
        }
    }

    pub fn from_involution(x: &Permutation) -> Result<BlockPartition, CentralizerError> {
        if !x.is_involution() {
            return Err(CentralizerError::NotAnInvolution);
        }
        let mut blocks = Vec::new();
        let mut fixed = Vec::new();
        for cycle in x.cycle_decompose() {
            match cycle.len() {
                1 => fixed.push(cycle[0]),
                2 => blocks.push((cycle[0], cycle[1])),
                _ => return Err(CentralizerError::NotAnInvolution),
            }
        }
        Ok(BlockPartition {
            degree: x.degree(),
            blocks,
            fixed,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn fixed_count(&self) -> usize {
        self.fixed.len()
    }

    pub fn blocks(&self) -> &[(u32, u32)] {
        &self.blocks
    }

    pub fn fixed_points(&self) -> &[u32] {
        &self.fixed
    }

    /// Support of the involution (all block points), ascending.
    pub fn support_points(&self) -> Vec<u32> {
        let mut points: Vec<u32> = self
            .blocks
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .collect();
        points.sort_unstable();
        points
    }

    /// Rebuilds the involution itself.
    pub fn involution(&self) -> Permutation {
        let cycles: Vec<Vec<u32>> = self.blocks.iter().map(|&(a, b)| vec![a, b]).collect();
        Permutation::from_cycles(self.degree, &cycles).expect("blocks are disjoint and in range")
    }

    /// `n` when this is the standard degree-`8n` shape.
    pub fn standard_n(&self) -> Option<u32> {
        let degree = self.degree;
        if !degree.is_multiple_of(8) {
            return None;
        }
        let n = degree / 8;
        if *self == BlockPartition::standard(n) {
            Some(n)
        } else {
            None
        }
    }
}

/// A centralizer, described structurally: the involution's block partition
/// plus the ambient group (alternating restricts to even parameters).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerDesc {
    pub partition: BlockPartition,
    pub ambient: Ambient,
}

impl CentralizerDesc {
    pub fn standard(n: u32, ambient: Ambient) -> CentralizerDesc {
        CentralizerDesc {
            partition: BlockPartition::standard(n),
            ambient,
        }
    }

    pub fn of_involution(x: &Permutation, ambient: Ambient) -> Result<CentralizerDesc, CentralizerError> {
        Ok(CentralizerDesc {
            partition: BlockPartition::from_involution(x)?,
            ambient,
        })
    }

    pub fn degree(&self) -> u32 {
        self.partition.degree()
    }

    /// `2^k·k!·f!`, halved for the alternating ambient.
    pub fn order(&self) -> Result<u64, CentralizerError> {
        let size = self
            .param_space_size()
            .ok_or(CentralizerError::OrderOverflow)?;
        Ok(match self.ambient {
            Ambient::Symmetric => size,
            Ambient::Alternating => size / 2,
        })
    }

    /// Size of the full (both-parity) parameter space, `2^k·k!·f!`.
    pub fn param_space_size(&self) -> Option<u64> {
        let k = self.partition.block_count() as u64;
        let f = self.partition.fixed_count() as u64;
        if k >= 63 {
            return None;
        }
        (1u64 << k)
            .checked_mul(lex::factorial(k)?)?
            .checked_mul(lex::factorial(f)?)
    }
}

pub fn centralizer_order(desc: &CentralizerDesc) -> Result<u64, CentralizerError> {
    desc.order()
}

/// `x = (1 2)(3 4)⋯(4n−1 4n)` in degree `8n`: an even involution moving
/// `{1..4n}` and fixing `{4n+1..8n}` pointwise.
///
/// ```
/// # use cosetcheck_core::centralizer::build_x;
/// assert_eq!(build_x(1).cycle_string(), "(1 2)(3 4)");
/// ```
pub fn build_x(n: u32) -> Permutation {
    BlockPartition::standard(n).involution()
}

/// `y = (1 4n+1)(2 4n+2)⋯(4n 8n)` in degree `8n`: the even involution
/// pairing `i ↔ 4n+i`, which swaps `{1..4n}` and `{4n+1..8n}` setwise.
pub fn build_y(n: u32) -> Permutation {
    assert!(n >= 1, "n must be at least 1");
    let cycles: Vec<Vec<u32>> = (1..=4 * n).map(|i| vec![i, 4 * n + i]).collect();
    Permutation::from_cycles(8 * n, &cycles).expect("pairing cycles are disjoint")
}

/// Parameters of one centralizer element: per-block swap flags, the
/// permutation of blocks, and the permutation of the fixed points
/// (one-line, 1-indexed relative to the sorted fixed-point list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathParam {
    pub flips: Vec<bool>,
    pub block_perm: Vec<u32>,
    pub fixed_perm: Vec<u32>,
}

impl WreathParam {
    pub fn identity(block_count: usize, fixed_count: usize) -> WreathParam {
        WreathParam {
            flips: vec![false; block_count],
            block_perm: (1..=block_count as u32).collect(),
            fixed_perm: (1..=fixed_count as u32).collect(),
        }
    }

    /// Parity of the induced permutation: block transport is always even,
    /// so only the flips and the fixed-point action contribute.
    pub fn parity(&self) -> Parity {
        let flips = self.flips.iter().filter(|&&b| b).count() as u64;
        let rho = Permutation::from_images(self.fixed_perm.clone())
            .map(|p| p.parity())
            .unwrap_or(Parity::Even);
        Parity::of_transposition_count(flips).xor(rho)
    }

    /// Group law on parameters, matching composition of the induced
    /// permutations: `self ∘ other` transports block `i` via `other` first.
    pub fn compose(&self, other: &WreathParam) -> WreathParam {
        assert_eq!(self.flips.len(), other.flips.len());
        assert_eq!(self.fixed_perm.len(), other.fixed_perm.len());
        let k = self.flips.len();
        let mut flips = vec![false; k];
        let mut block_perm = vec![0u32; k];
        for i in 0..k {
            let mid = other.block_perm[i] as usize;
            block_perm[i] = self.block_perm[mid - 1];
            flips[i] = other.flips[i] ^ self.flips[mid - 1];
        }
        let mut fixed_perm = vec![0u32; self.fixed_perm.len()];
        compose_images_into(&mut fixed_perm, &self.fixed_perm, &other.fixed_perm);
        WreathParam {
            flips,
            block_perm,
            fixed_perm,
        }
    }
}

pub fn param_parity(param: &WreathParam) -> Parity {
    param.parity()
}

/// Materializes a [`WreathParam`] as a permutation: block `i`'s points land
/// on block `block_perm(i)`'s points, in order, swapped when `flips[i]` is
/// set; fixed points move by `fixed_perm`. The result commutes with the
/// partition's involution.
pub fn wreath_to_perm(
    partition: &BlockPartition,
    param: &WreathParam,
) -> Result<Permutation, CentralizerError> {
    let k = partition.block_count();
    let f = partition.fixed_count();
    if param.flips.len() != k || param.block_perm.len() != k || param.fixed_perm.len() != f {
        return Err(CentralizerError::ShapeMismatch(format!(
            "expected {k} flips, a block permutation of degree {k} and a fixed-point permutation of degree {f}"
        )));
    }
    let mut images = vec![0u32; partition.degree() as usize];
    write_wreath_images(&mut images, partition, &param.flips, &param.block_perm, &param.fixed_perm);
    Permutation::from_images(images).map_err(CentralizerError::from)
}

fn write_wreath_images(
    out: &mut [u32],
    partition: &BlockPartition,
    flips: &[bool],
    block_perm: &[u32],
    fixed_perm: &[u32],
) {
    for (i, &(a, b)) in partition.blocks().iter().enumerate() {
        let (ta, tb) = partition.blocks()[(block_perm[i] - 1) as usize];
        if flips[i] {
            out[(a - 1) as usize] = tb;
            out[(b - 1) as usize] = ta;
        } else {
            out[(a - 1) as usize] = ta;
            out[(b - 1) as usize] = tb;
        }
    }
    let fixed = partition.fixed_points();
    for (j, &p) in fixed.iter().enumerate() {
        out[(p - 1) as usize] = fixed[(fixed_perm[j] - 1) as usize];
    }
}

/// Membership test straight from the definition: commutes with the
/// involution, and is even when the ambient group is alternating.
pub fn is_in_centralizer(desc: &CentralizerDesc, p: &Permutation) -> bool {
    if p.degree() != desc.degree() {
        return false;
    }
    let x = desc.partition.involution();
    for i in 1..=p.degree() {
        if p.apply(x.apply(i)) != x.apply(p.apply(i)) {
            return false;
        }
    }
    desc.ambient.admits(p.parity())
}

/// Brute-force oracle: filters the whole ambient group for elements
/// commuting with `x`. Only for small degrees.
pub fn definitional_centralizer(
    x: &Permutation,
    ambient: Ambient,
) -> Result<Vec<Permutation>, CentralizerError> {
    let degree = x.degree();
    if degree > DEFINITIONAL_DEGREE_CAP {
        return Err(CentralizerError::DegreeBudget {
            degree,
            cap: DEFINITIONAL_DEGREE_CAP,
        });
    }
    Ok(Permutation::all(degree)
        .filter(|g| ambient.admits(g.parity()))
        .filter(|g| g.compose(x).expect("equal degrees") == x.compose(g).expect("equal degrees"))
        .collect())
}

/// A generating set for the centralizer, assembled from three families:
/// per-block pair flips, adjacent block swaps, and generators on the fixed
/// points. In the alternating ambient the odd members are paired up with
/// the first flip so that every emitted generator is even; the generated
/// subgroup is unchanged by that adjustment.
pub fn structural_generators(desc: &CentralizerDesc) -> Vec<Permutation> {
    let partition = &desc.partition;
    let degree = partition.degree();
    let blocks = partition.blocks();
    let fixed = partition.fixed_points();

    let mut even_gens: Vec<Permutation> = Vec::new();
    let mut odd_gens: Vec<Permutation> = Vec::new();

    for &(a, b) in blocks {
        // A pair flip is a single transposition: odd.
        odd_gens.push(Permutation::from_cycles(degree, &[vec![a, b]]).unwrap());
    }
    for w in blocks.windows(2) {
        let ((a1, b1), (a2, b2)) = (w[0], w[1]);
        // Swapping two blocks rigidly is a double transposition: even.
        even_gens.push(
            Permutation::from_cycles(degree, &[vec![a1, a2], vec![b1, b2]]).unwrap(),
        );
    }
    if fixed.len() >= 2 {
        odd_gens.push(Permutation::from_cycles(degree, &[vec![fixed[0], fixed[1]]]).unwrap());
    }
    for i in 2..fixed.len() {
        even_gens.push(
            Permutation::from_cycles(degree, &[vec![fixed[0], fixed[1], fixed[i]]]).unwrap(),
        );
    }

    match desc.ambient {
        Ambient::Symmetric => even_gens.into_iter().chain(odd_gens).collect(),
        Ambient::Alternating => {
            let mut gens = even_gens;
            if let Some((first, rest)) = odd_gens.split_first() {
                for g in rest {
                    gens.push(first.compose(g).expect("equal degrees"));
                }
            }
            gens
        }
    }
}

/// Enumeration order is lexicographic in (flips as a big-endian binary
/// counter, block permutation, fixed-point permutation); odd-parity states
/// are skipped in the alternating ambient. Ranges index the *full*
/// parameter space, so disjoint ranges shard the stream deterministically.
struct ParamCursor {
    k: usize,
    flips: u64,
    sigma: Vec<u32>,
    rho: Vec<u32>,
    rho_parity: Parity,
    index: u64,
    end: u64,
    sigma_states: u64,
    rho_states: u64,
}

impl ParamCursor {
    fn new(desc: &CentralizerDesc, start: u64, end: u64) -> ParamCursor {
        let k = desc.partition.block_count();
        let f = desc.partition.fixed_count();
        let sigma_states = lex::factorial(k as u64).expect("block count fits u64 factorial");
        let rho_states = lex::factorial(f as u64).expect("fixed count fits u64 factorial");
        let per_flip = sigma_states * rho_states;
        let flips = start / per_flip;
        let rem = start % per_flip;
        let (sigma, _) = lex::unrank(k as u32, rem / rho_states);
        let (rho, rho_parity) = lex::unrank(f as u32, rem % rho_states);
        ParamCursor {
            k,
            flips,
            sigma,
            rho,
            rho_parity,
            index: start,
            end,
            sigma_states,
            rho_states,
        }
    }

    fn exhausted(&self) -> bool {
        self.index >= self.end
    }

    /// Parity of the current parameter state.
    fn parity(&self) -> Parity {
        Parity::of_transposition_count(self.flips.count_ones() as u64).xor(self.rho_parity)
    }

    /// Flip flag of block `i` (0-based): bit `k-1-i`, so that the flag
    /// tuple `(ε₁,…,ε_k)` counts up lexicographically.
    fn flip(&self, i: usize) -> bool {
        (self.flips >> (self.k - 1 - i)) & 1 == 1
    }

    fn advance(&mut self) {
        self.index += 1;
        if self.index >= self.end {
            return;
        }
        if lex::next_permutation_tracked(&mut self.rho, &mut self.rho_parity) {
            return;
        }
        debug_assert_eq!(self.rho_parity, Parity::Even);
        if lex::next_permutation(&mut self.sigma) {
            return;
        }
        self.flips += 1;
        debug_assert_eq!(self.index % (self.sigma_states * self.rho_states), 0);
    }

    fn write_images(&self, out: &mut [u32], partition: &BlockPartition) {
        for (i, &(a, b)) in partition.blocks().iter().enumerate() {
            let (ta, tb) = partition.blocks()[(self.sigma[i] - 1) as usize];
            if self.flip(i) {
                out[(a - 1) as usize] = tb;
                out[(b - 1) as usize] = ta;
            } else {
                out[(a - 1) as usize] = ta;
                out[(b - 1) as usize] = tb;
            }
        }
        let fixed = partition.fixed_points();
        for (j, &p) in fixed.iter().enumerate() {
            out[(p - 1) as usize] = fixed[(self.rho[j] - 1) as usize];
        }
    }
}

/// Visits every admissible centralizer element whose parameter index lies
/// in `[start, end)`, passing each image list to the visitor through a
/// reused buffer. This is the allocation-free path the census streaming
/// rides on.
pub fn visit_range(
    desc: &CentralizerDesc,
    start: u64,
    end: u64,
    mut visit: impl FnMut(&[u32]),
) {
    let mut cursor = ParamCursor::new(desc, start, end);
    let mut buf = vec![0u32; desc.degree() as usize];
    while !cursor.exhausted() {
        if desc.ambient.admits(cursor.parity()) {
            cursor.write_images(&mut buf, &desc.partition);
            visit(&buf);
        }
        cursor.advance();
    }
}

/// Iterator form of the centralizer stream over a parameter-index range.
pub struct CentralizerElements {
    desc: CentralizerDesc,
    cursor: ParamCursor,
}

impl Iterator for CentralizerElements {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        while !self.cursor.exhausted() {
            if self.desc.ambient.admits(self.cursor.parity()) {
                let mut images = vec![0u32; self.desc.degree() as usize];
                self.cursor.write_images(&mut images, &self.desc.partition);
                self.cursor.advance();
                return Some(Permutation::from_images(images).expect("wreath images are bijective"));
            }
            self.cursor.advance();
        }
        None
    }
}

/// Streams every centralizer element exactly once, in canonical order,
/// refusing when the parameter space exceeds the default budget.
pub fn enumerate_centralizer(
    desc: &CentralizerDesc,
) -> Result<CentralizerElements, CentralizerError> {
    enumerate_centralizer_with_budget(desc, DEFAULT_ENUM_BUDGET)
}

pub fn enumerate_centralizer_with_budget(
    desc: &CentralizerDesc,
    budget: u64,
) -> Result<CentralizerElements, CentralizerError> {
    let size = desc
        .param_space_size()
        .ok_or(CentralizerError::OrderOverflow)?;
    if size > budget {
        return Err(CentralizerError::EnumerationBudget { size, budget });
    }
    Ok(enumerate_centralizer_range(desc, 0, size))
}

/// Stream restricted to parameter indices `[start, end)` of the full
/// space; concatenating disjoint covering ranges reproduces the whole
/// enumeration in order.
pub fn enumerate_centralizer_range(
    desc: &CentralizerDesc,
    start: u64,
    end: u64,
) -> CentralizerElements {
    CentralizerElements {
        cursor: ParamCursor::new(desc, start, end),
        desc: desc.clone(),
    }
}

/// Deterministic RNG for a (seed, stream) pair; separate streams are
/// independent, which keeps sharded sampling independent of thread count.
pub fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws a parameter uniformly from the admissible class. The triple is
/// drawn uniformly without constraint; when the ambient is alternating and
/// the total parity is odd, the first flip is toggled. Toggling one flip is
/// a parity-reversing bijection of the parameter space, so the result is
/// uniform on the even class, with no rejection.
pub fn sample_param(desc: &CentralizerDesc, rng: &mut impl Rng) -> WreathParam {
    let k = desc.partition.block_count();
    let f = desc.partition.fixed_count();
    let flips: Vec<bool> = (0..k).map(|_| rng.gen::<bool>()).collect();
    let mut block_perm: Vec<u32> = (1..=k as u32).collect();
    block_perm.shuffle(rng);
    let mut fixed_perm: Vec<u32> = (1..=f as u32).collect();
    fixed_perm.shuffle(rng);
    let mut param = WreathParam {
        flips,
        block_perm,
        fixed_perm,
    };
    if desc.ambient == Ambient::Alternating && param.parity() == Parity::Odd {
        param.flips[0] = !param.flips[0];
    }
    param
}

/// Uniform sample from the centralizer, deterministic for a given RNG state.
pub fn sample_centralizer(desc: &CentralizerDesc, rng: &mut impl Rng) -> Permutation {
    let param = sample_param(desc, rng);
    wreath_to_perm(&desc.partition, &param).expect("sampled parameters have the right shape")
}
