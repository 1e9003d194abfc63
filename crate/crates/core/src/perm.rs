//! Exact arithmetic on permutations of `{1..N}`.
//!
//! Conventions, used everywhere in this workspace:
//!
//! * Points are 1-indexed at every public boundary. `[2,1,4,3]` is the
//!   permutation sending 1↦2, 2↦1, 3↦4, 4↦3, i.e. `(1 2)(3 4)`.
//! * Products compose right to left: `p.compose(&q)` applies `q` first,
//!   then `p`. The convention test `(1 2)·(2 3) = (1 2 3)` pins this down.
//! * Cycle decompositions are canonical: every cycle starts at its minimum
//!   point, cycles are listed by increasing minimum, and 1-cycles are kept.

use std::borrow::Borrow;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: u32, degree: u32 },
    #[error("point {0} appears more than once in the cycle list")]
    RepeatedPoint(u32),
    #[error("image list is not a bijection of 1..={0}")]
    NotBijective(u32),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("element order overflows 64-bit arithmetic")]
    OrderOverflow,
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
}

/// Even/odd sign of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_transposition_count(count: u64) -> Parity {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity of a product is the XOR of parities.
    pub fn xor(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(self) -> bool {
        self == Parity::Even
    }

    pub fn flipped(self) -> Parity {
        self.xor(Parity::Odd)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// A permutation of `{1..N}`, stored as its image list.
///
/// `images[i-1]` is the image of point `i`; the list is a bijection of
/// `1..=N`. Ordering and equality are lexicographic on the image list,
/// which makes "lexicographically minimal coset member" well defined.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: u32) -> Result<Permutation, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        Ok(Permutation {
            images: (1..=degree).collect(),
        })
    }

    pub fn from_images(images: Vec<u32>) -> Result<Permutation, PermError> {
        let degree = images.len() as u32;
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v == 0 || v > degree {
                return Err(PermError::PointOutOfRange { point: v, degree });
            }
            if seen[(v - 1) as usize] {
                return Err(PermError::NotBijective(degree));
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles; unlisted points are fixed.
    ///
    /// ```
    /// # use cosetcheck_core::Permutation;
    /// let x = Permutation::from_cycles(8, &[vec![1, 2], vec![3, 4]]).unwrap();
    /// assert_eq!(x.to_string(), "[2,1,4,3,5,6,7,8]");
    /// ```
    pub fn from_cycles(degree: u32, cycles: &[Vec<u32>]) -> Result<Permutation, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut images: Vec<u32> = (1..=degree).collect();
        let mut seen = vec![false; degree as usize];
        for cycle in cycles {
            for &point in cycle {
                if point == 0 || point > degree {
                    return Err(PermError::PointOutOfRange { point, degree });
                }
                if seen[(point - 1) as usize] {
                    return Err(PermError::RepeatedPoint(point));
                }
                seen[(point - 1) as usize] = true;
            }
            for (i, &point) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                images[(point - 1) as usize] = next;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses either an image list (`"[2,1,4,3]"`) or cycle notation
    /// (`"(1 2)(3 4)"`, `"()"` for the identity) at the given degree.
    pub fn parse(input: &str, degree: u32) -> Result<Permutation, PermError> {
        let s = input.trim();
        if s.starts_with('[') {
            let p: Permutation = s.parse()?;
            if p.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: p.degree(),
                    right: degree,
                });
            }
            return Ok(p);
        }
        if s.starts_with('(') {
            let cycles = parse_cycle_notation(s)?;
            return Permutation::from_cycles(degree, &cycles);
        }
        Err(PermError::Parse(input.to_string()))
    }

    pub fn degree(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a point (1-indexed). Panics when the point is out of range.
    pub fn apply(&self, point: u32) -> u32 {
        assert!(
            point >= 1 && point <= self.degree(),
            "point {point} outside 1..={}",
            self.degree()
        );
        self.images[(point - 1) as usize]
    }

    /// `self ∘ other`: applies `other` first, then `self`.
    ///
    /// ```
    /// # use cosetcheck_core::Permutation;
    /// let a = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
    /// let b = Permutation::from_cycles(3, &[vec![2, 3]]).unwrap();
    /// let c = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
    /// assert_eq!(a.compose(&b).unwrap(), c);
    /// ```
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let mut images = vec![0u32; self.images.len()];
        compose_images_into(&mut images, &self.images, &other.images);
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[(v - 1) as usize] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// `k`-fold composition; `k = 0` gives the identity, negative `k`
    /// powers the inverse.
    pub fn power(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut result = Permutation::identity(self.degree()).expect("degree >= 1");
        let mut square = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.compose(&square).expect("equal degrees");
            }
            square = square.compose(&square).expect("equal degrees");
            exp >>= 1;
        }
        result
    }

    /// `g ∘ self ∘ g⁻¹`. Panics on degree mismatch.
    pub fn conjugated_by(&self, g: &Permutation) -> Permutation {
        assert_eq!(self.degree(), g.degree(), "degree mismatch in conjugation");
        g.compose(self)
            .and_then(|gp| gp.compose(&g.inverse()))
            .expect("equal degrees")
    }

    /// Canonical disjoint cycles: min-first per cycle, cycles ordered by
    /// their minimum, 1-cycles included. The cycles partition `{1..N}`.
    pub fn cycle_decompose(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut visited = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut point = start;
            loop {
                visited[point] = true;
                cycle.push(point as u32 + 1);
                point = (self.images[point] - 1) as usize;
                if point == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts = Vec::new();
        sorted_cycle_parts_into(&self.images, &mut parts);
        CycleType { parts }
    }

    /// Order of the element: the lcm of its cycle lengths.
    pub fn order(&self) -> Result<u64, PermError> {
        self.cycle_type().order()
    }

    pub fn parity(&self) -> Parity {
        let n = self.images.len();
        let mut visited = vec![false; n];
        let mut transpositions = 0u64;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut len = 0u64;
            let mut point = start;
            loop {
                visited[point] = true;
                len += 1;
                point = (self.images[point] - 1) as usize;
                if point == start {
                    break;
                }
            }
            transpositions += len - 1;
        }
        Parity::of_transposition_count(transpositions)
    }

    pub fn is_even(&self) -> bool {
        self.parity().is_even()
    }

    /// Points moved by the permutation, ascending.
    pub fn support(&self) -> Vec<u32> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &v)| v != *i as u32 + 1)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    /// True iff the permutation maps the set onto itself (setwise, not
    /// pointwise). Panics when `set` contains out-of-range points.
    pub fn fixes_setwise(&self, set: &[u32]) -> bool {
        let mut member = vec![false; self.images.len()];
        for &s in set {
            assert!(
                s >= 1 && s <= self.degree(),
                "set point {s} outside 1..={}",
                self.degree()
            );
            member[(s - 1) as usize] = true;
        }
        set.iter().all(|&s| member[(self.apply(s) - 1) as usize])
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }

    /// True iff the element has order exactly 2.
    pub fn is_involution(&self) -> bool {
        !self.is_identity()
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, &v)| self.images[(v - 1) as usize] == i as u32 + 1)
    }

    /// Cycle notation with 1-cycles omitted; the identity prints as `"()"`.
    pub fn cycle_string(&self) -> String {
        let cycles: Vec<Vec<u32>> = self
            .cycle_decompose()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for cycle in cycles {
            out.push('(');
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&p.to_string());
            }
            out.push(')');
        }
        out
    }

    /// All permutations of the given degree in lexicographic image-list
    /// order, starting at the identity. Intended for small-degree
    /// brute-force work; callers guard the budget.
    pub fn all(degree: u32) -> AllPermutations {
        AllPermutations {
            next: Some(Permutation::identity(degree).expect("degree >= 1")),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses the canonical image-list form, e.g. `"[2,1,4,3,5,6,7,8]"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| PermError::Parse(s.to_string()))?;
        let mut images = Vec::new();
        for token in inner.split(',') {
            let token = token.trim();
            if token.is_empty() {
                return Err(PermError::Parse(s.to_string()));
            }
            images.push(
                token
                    .parse::<u32>()
                    .map_err(|_| PermError::Parse(s.to_string()))?,
            );
        }
        Permutation::from_images(images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.images.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let images = Vec::<u32>::deserialize(deserializer)?;
        Permutation::from_images(images).map_err(D::Error::custom)
    }
}

fn parse_cycle_notation(s: &str) -> Result<Vec<Vec<u32>>, PermError> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    if rest == "()" {
        return Ok(cycles);
    }
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| PermError::Parse(s.to_string()))?;
        let close = open
            .find(')')
            .ok_or_else(|| PermError::Parse(s.to_string()))?;
        let body = &open[..close];
        let mut cycle = Vec::new();
        for token in body.split([' ', ',']) {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            cycle.push(
                token
                    .parse::<u32>()
                    .map_err(|_| PermError::Parse(s.to_string()))?,
            );
        }
        if cycle.is_empty() {
            return Err(PermError::Parse(s.to_string()));
        }
        cycles.push(cycle);
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Multiset of cycle lengths, a partition of the degree with parts sorted
/// descending. 1-cycles are always included, so the parts sum to the degree
/// of the originating permutation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct CycleType {
    parts: Vec<u32>,
}

impl CycleType {
    pub fn new(mut parts: Vec<u32>) -> CycleType {
        assert!(parts.iter().all(|&p| p > 0), "cycle lengths are positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// lcm of the parts, with an explicit guard against (unreachable for
    /// degree ≤ 64) 64-bit overflow.
    pub fn order(&self) -> Result<u64, PermError> {
        let mut acc: u64 = 1;
        for &p in &self.parts {
            let p = p as u64;
            let g = gcd(acc, p);
            acc = (acc / g).checked_mul(p).ok_or(PermError::OrderOverflow)?;
        }
        Ok(acc)
    }

    pub fn all_parts_even(&self) -> bool {
        self.parts.iter().all(|&p| p % 2 == 0)
    }

    /// A permutation has odd order iff every cycle length is odd.
    pub fn is_odd_order(&self) -> bool {
        self.parts.iter().all(|&p| p % 2 == 1)
    }

    pub fn has_part(&self, len: u32) -> bool {
        self.parts.contains(&len)
    }

    pub fn longest_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Exponent notation with ascending lengths, e.g. `"2^1 6^1"`. Fixed
    /// points print as `"1^c"` only when present, so fixed-point-free types
    /// render as `"2^4"`, `"4^2"`, ...
    pub fn exp_string(&self) -> String {
        let mut out = String::new();
        let mut i = self.parts.len();
        while i > 0 {
            let len = self.parts[i - 1];
            let mut count = 0;
            while i > 0 && self.parts[i - 1] == len {
                count += 1;
                i -= 1;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&format!("{len}^{count}"));
        }
        out
    }
}

impl Borrow<[u32]> for CycleType {
    fn borrow(&self) -> &[u32] {
        &self.parts
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exp_string())
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Iterator over every permutation of a degree in lexicographic order.
pub struct AllPermutations {
    next: Option<Permutation>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut images = current.images.clone();
        if lex::next_permutation(&mut images) {
            self.next = Some(Permutation { images });
        }
        Some(current)
    }
}

/// `out = p ∘ q` on image lists (`q` first). All slices must have equal
/// length; used by enumeration hot loops to avoid reallocation.
pub(crate) fn compose_images_into(out: &mut [u32], p: &[u32], q: &[u32]) {
    debug_assert_eq!(out.len(), p.len());
    debug_assert_eq!(p.len(), q.len());
    for i in 0..out.len() {
        out[i] = p[(q[i] - 1) as usize];
    }
}

/// Descending-sorted cycle lengths of an image list, written into a reused
/// buffer. A u64 visited mask drives the trace for degree ≤ 64 (the common
/// case); larger degrees take a slower generic path.
pub(crate) fn sorted_cycle_parts_into(images: &[u32], parts: &mut Vec<u32>) {
    let n = images.len();
    parts.clear();
    if n > 64 {
        let mut visited = vec![false; n];
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut len = 0u32;
            let mut point = start;
            loop {
                visited[point] = true;
                len += 1;
                point = (images[point] - 1) as usize;
                if point == start {
                    break;
                }
            }
            parts.push(len);
        }
    } else {
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut visited: u64 = 0;
        while visited != full {
            let start = (!visited & full).trailing_zeros() as usize;
            let mut len = 0u32;
            let mut point = start;
            loop {
                visited |= 1u64 << point;
                len += 1;
                point = (images[point] - 1) as usize;
                if point == start {
                    break;
                }
            }
            parts.push(len);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
}

/// Lexicographic walking, ranking and unranking of one-line image lists
/// (values `1..=m`).
pub mod lex {
    use super::Parity;

    /// Advances to the next permutation in lexicographic order; returns
    /// false (leaving the slice reversed back to ascending) at the end.
    pub fn next_permutation(xs: &mut [u32]) -> bool {
        let n = xs.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && xs[i - 1] >= xs[i] {
            i -= 1;
        }
        if i == 0 {
            xs.reverse();
            return false;
        }
        let mut j = n - 1;
        while xs[j] <= xs[i - 1] {
            j -= 1;
        }
        xs.swap(i - 1, j);
        xs[i..].reverse();
        true
    }

    /// Like [`next_permutation`] but also updates the running parity of the
    /// slice. One swap plus a suffix reversal of length L costs
    /// `1 + L/2` transpositions.
    pub fn next_permutation_tracked(xs: &mut [u32], parity: &mut Parity) -> bool {
        let n = xs.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && xs[i - 1] >= xs[i] {
            i -= 1;
        }
        if i == 0 {
            xs.reverse();
            let swaps = (n / 2) as u64;
            if swaps % 2 == 1 {
                *parity = parity.flipped();
            }
            return false;
        }
        let mut j = n - 1;
        while xs[j] <= xs[i - 1] {
            j -= 1;
        }
        xs.swap(i - 1, j);
        xs[i..].reverse();
        let swaps = 1 + ((n - i) / 2) as u64;
        if swaps % 2 == 1 {
            *parity = parity.flipped();
        }
        true
    }

    pub fn factorial(m: u64) -> Option<u64> {
        let mut acc: u64 = 1;
        for k in 2..=m {
            acc = acc.checked_mul(k)?;
        }
        Some(acc)
    }

    /// Rank of a one-line permutation of `1..=m` in lexicographic order.
    pub fn rank(xs: &[u32]) -> u64 {
        let m = xs.len();
        let mut rank = 0u64;
        let mut fact = factorial(m as u64).expect("rank degree fits u64");
        let mut used = vec![false; m];
        for (i, &x) in xs.iter().enumerate() {
            fact /= (m - i) as u64;
            let smaller = used[..(x - 1) as usize].iter().filter(|&&u| !u).count() as u64;
            rank += smaller * fact;
            used[(x - 1) as usize] = true;
        }
        rank
    }

    /// Unranks the `rank`-th permutation of `1..=m` (lexicographic), also
    /// returning its parity (sum of the factorial-base digits mod 2).
    pub fn unrank(m: u32, rank: u64) -> (Vec<u32>, Parity) {
        let mut available: Vec<u32> = (1..=m).collect();
        let mut out = Vec::with_capacity(m as usize);
        let mut rank = rank;
        let mut fact = factorial(m as u64).expect("unrank degree fits u64");
        let mut digit_sum = 0u64;
        for i in 0..m {
            fact /= (m - i) as u64;
            let digit = (rank / fact) as usize;
            rank %= fact;
            digit_sum += digit as u64;
            out.push(available.remove(digit));
        }
        (out, Parity::of_transposition_count(digit_sum))
    }
}
