//! Coherently nested Hall sets on the alphabets `a1 < a2 < ... < ak`.
//!
//! Words are ordered by weight first. Inside one weight the order is the
//! canonical one: maximal letter, then the left subtree, then the right
//! subtree (each compared recursively under the same order). Grouping by
//! maximal letter means the stratum of weight `j` on `k` letters is always an
//! initial segment of the stratum on `k + 1` letters.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of words in a single weight stratum.
pub const DEFAULT_STRATUM_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HallError {
    #[error("stratum of weight {weight} on {letters} letters exceeds the limit of {limit} words")]
    ResourceLimit {
        letters: u32,
        weight: usize,
        limit: usize,
    },
    #[error("invalid grading: {0}")]
    Grading(String),
    #[error("invalid argument: {0}")]
    Argument(String),
}

/// Monotone dimension data `r1 <= r2 <= ...`: an explicit prefix followed by a
/// constant tail. The sphere attached to letter `i` is `S^{r_i + 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradingSequence {
    prefix: Vec<u32>,
    tail: u32,
}

impl GradingSequence {
    pub fn new(prefix: Vec<u32>, tail: u32) -> Result<Self, HallError> {
        if tail == 0 || prefix.contains(&0) {
            return Err(HallError::Grading("entries must be at least 1".into()));
        }
        if prefix.windows(2).any(|w| w[0] > w[1]) {
            return Err(HallError::Grading("prefix must be nondecreasing".into()));
        }
        if let Some(&last) = prefix.last() {
            if tail < last {
                return Err(HallError::Grading(format!(
                    "tail {tail} is smaller than the last prefix entry {last}"
                )));
            }
        }
        Ok(Self { prefix, tail })
    }

    /// `r_i = r` for every letter; `r = m - 1` describes the earring `E_m`.
    pub fn constant(r: u32) -> Result<Self, HallError> {
        Self::new(Vec::new(), r)
    }

    /// Grading of the `m`-dimensional earring.
    pub fn earring(m: u32) -> Result<Self, HallError> {
        if m < 2 {
            return Err(HallError::Grading(format!("earring dimension {m} must be at least 2")));
        }
        Self::constant(m - 1)
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn tail(&self) -> u32 {
        self.tail
    }

    /// `r_i` for a letter index `i >= 1`.
    pub fn r(&self, letter: u32) -> u32 {
        debug_assert!(letter >= 1);
        self.prefix
            .get(letter as usize - 1)
            .copied()
            .unwrap_or(self.tail)
    }

    /// `r_1`, the connectivity of the wedge.
    pub fn first(&self) -> u32 {
        self.r(1)
    }

    pub fn is_constant(&self) -> bool {
        self.prefix.iter().all(|&r| r == self.tail)
    }
}

impl fmt::Display for GradingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            return write!(f, "{}", self.tail);
        }
        let prefix: Vec<String> = self.prefix.iter().map(u32::to_string).collect();
        write!(f, "{};{}", prefix.join(","), self.tail)
    }
}

impl FromStr for GradingSequence {
    type Err = HallError;

    /// Accepts `p1,p2,...,pk;t` or a single constant `t`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |what: &str| HallError::Grading(format!("cannot parse {what:?} in grading {s:?}"));
        let (prefix, tail) = match s.split_once(';') {
            Some((p, t)) => (p.trim(), t.trim()),
            None => ("", s.trim()),
        };
        let tail: u32 = tail.parse().map_err(|_| bad(tail))?;
        let prefix = if prefix.is_empty() {
            Vec::new()
        } else {
            prefix
                .split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| bad(p)))
                .collect::<Result<Vec<_>, _>>()?
        };
        Self::new(prefix, tail)
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum Shape {
    Letter(u32),
    Bracket(HallWord, HallWord),
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Node {
    shape: Shape,
    weight: usize,
    min_letter: u32,
    max_letter: u32,
    /// `(letter, multiplicity)` sorted by letter.
    counts: Vec<(u32, u32)>,
}

/// A nested formal commutator on letters `a_i`, `i >= 1`.
///
/// Cloning is cheap (shared tree). Equality is structural and `Ord` is the
/// canonical Hall order described in the module docs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HallWord(Arc<Node>);

impl HallWord {
    pub fn letter(i: u32) -> Self {
        assert!(i >= 1, "letters are indexed from 1");
        HallWord(Arc::new(Node {
            shape: Shape::Letter(i),
            weight: 1,
            min_letter: i,
            max_letter: i,
            counts: vec![(i, 1)],
        }))
    }

    pub fn bracket(left: HallWord, right: HallWord) -> Self {
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for &(l, c) in left.0.counts.iter().chain(right.0.counts.iter()) {
            *counts.entry(l).or_default() += c;
        }
        HallWord(Arc::new(Node {
            weight: left.weight() + right.weight(),
            min_letter: left.min_letter().min(right.min_letter()),
            max_letter: left.max_letter().max(right.max_letter()),
            counts: counts.into_iter().collect(),
            shape: Shape::Bracket(left, right),
        }))
    }

    /// Weight `L(w)`: number of letters with brackets removed.
    pub fn weight(&self) -> usize {
        self.0.weight
    }

    pub fn min_letter(&self) -> u32 {
        self.0.min_letter
    }

    pub fn max_letter(&self) -> u32 {
        self.0.max_letter
    }

    /// `nu_i(w)`.
    pub fn multiplicity(&self, letter: u32) -> u32 {
        self.0
            .counts
            .binary_search_by_key(&letter, |&(l, _)| l)
            .map(|idx| self.0.counts[idx].1)
            .unwrap_or(0)
    }

    /// Nonzero multiplicities as `(letter, count)` pairs in letter order.
    pub fn multiplicities(&self) -> &[(u32, u32)] {
        &self.0.counts
    }

    pub fn contains_letter(&self, letter: u32) -> bool {
        self.multiplicity(letter) > 0
    }

    pub fn as_letter(&self) -> Option<u32> {
        match self.0.shape {
            Shape::Letter(i) => Some(i),
            Shape::Bracket(..) => None,
        }
    }

    pub fn children(&self) -> Option<(&HallWord, &HallWord)> {
        match &self.0.shape {
            Shape::Letter(_) => None,
            Shape::Bracket(x, y) => Some((x, y)),
        }
    }

    /// Height `h(w) = sum_i r_i nu_i(w)`.
    pub fn height(&self, grading: &GradingSequence) -> u64 {
        self.0
            .counts
            .iter()
            .map(|&(l, c)| u64::from(grading.r(l)) * u64::from(c))
            .sum()
    }
}

impl Ord for HallWord {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.max_letter().cmp(&other.max_letter()))
            .then_with(|| match (&self.0.shape, &other.0.shape) {
                (Shape::Letter(a), Shape::Letter(b)) => a.cmp(b),
                (Shape::Bracket(x1, y1), Shape::Bracket(x2, y2)) => {
                    x1.cmp(x2).then_with(|| y1.cmp(y2))
                }
                // equal weights force equal shapes kinds
                (Shape::Letter(_), Shape::Bracket(..)) => Ordering::Less,
                (Shape::Bracket(..), Shape::Letter(_)) => Ordering::Greater,
            })
    }
}

impl PartialOrd for HallWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HallWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.shape {
            Shape::Letter(i) => write!(f, "a{i}"),
            Shape::Bracket(x, y) => write!(f, "[{x},{y}]"),
        }
    }
}

impl fmt::Debug for HallWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for HallWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for HallWord {
    type Err = HallError;

    /// Parses the bracket syntax `a1`, `[a1,[a2,a3]]`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let word = parse_word(&compact, &mut pos)
            .ok_or_else(|| HallError::Argument(format!("malformed word {s:?}")))?;
        if pos != compact.len() {
            return Err(HallError::Argument(format!("trailing input in word {s:?}")));
        }
        Ok(word)
    }
}

fn parse_word(chars: &[char], pos: &mut usize) -> Option<HallWord> {
    match chars.get(*pos)? {
        'a' => {
            *pos += 1;
            let start = *pos;
            while chars.get(*pos).is_some_and(char::is_ascii_digit) {
                *pos += 1;
            }
            let digits: String = chars[start..*pos].iter().collect();
            let i: u32 = digits.parse().ok()?;
            (i >= 1).then(|| HallWord::letter(i))
        }
        '[' => {
            *pos += 1;
            let x = parse_word(chars, pos)?;
            (chars.get(*pos)? == &',').then_some(())?;
            *pos += 1;
            let y = parse_word(chars, pos)?;
            (chars.get(*pos)? == &']').then_some(())?;
            *pos += 1;
            Some(HallWord::bracket(x, y))
        }
        _ => None,
    }
}

/// The three Hall conditions, checked recursively against the canonical order.
pub fn is_hall(w: &HallWord, k: u32) -> bool {
    match w.children() {
        None => w.max_letter() <= k,
        Some((x, y)) => {
            if !(is_hall(x, k) && is_hall(y, k) && x < y) {
                return false;
            }
            match y.children() {
                Some((a, _)) => a <= x,
                None => true,
            }
        }
    }
}

/// Hall words on `k` letters up to weight `J`, stratified by weight.
#[derive(Debug, Clone)]
pub struct HallSet {
    letters: u32,
    max_weight: usize,
    limit: usize,
    /// `strata[j - 1]` holds the words of weight `j`.
    strata: Vec<Vec<HallWord>>,
}

impl HallSet {
    pub fn letters(&self) -> u32 {
        self.letters
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// Words of weight `j`, in canonical order. Empty when `j` is out of range.
    pub fn stratum(&self, j: usize) -> &[HallWord] {
        if j == 0 {
            return &[];
        }
        self.strata.get(j - 1).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn strata(&self) -> impl Iterator<Item = (usize, &[HallWord])> {
        self.strata.iter().enumerate().map(|(i, s)| (i + 1, s.as_slice()))
    }

    /// All words in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &HallWord> {
        self.strata.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.strata.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, w: &HallWord) -> bool {
        self.stratum(w.weight()).binary_search(w).is_ok()
    }

    /// The Hall set on one more letter. Existing strata are kept verbatim and
    /// only words involving the new letter are appended.
    pub fn extend_letter(&self) -> Result<HallSet, HallError> {
        self.extend_filtered(&|_| true)
    }

    fn extend_filtered(&self, keep: &dyn Fn(&HallWord) -> bool) -> Result<HallSet, HallError> {
        let new_letter = self.letters + 1;
        let mut strata: Vec<Vec<HallWord>> = Vec::with_capacity(self.max_weight);
        for j in 1..=self.max_weight {
            let mut fresh: Vec<HallWord> = Vec::new();
            if j == 1 {
                let a = HallWord::letter(new_letter);
                if keep(&a) {
                    fresh.push(a);
                }
            } else {
                // [x, y] with weight(x) = i, weight(y) = j - i. x < y forces
                // i <= j - i; the weight tie is resolved by position.
                for i in 1..=j / 2 {
                    let xs = &strata[i - 1];
                    let ys = &strata[j - i - 1];
                    for (xi, x) in xs.iter().enumerate() {
                        for (yi, y) in ys.iter().enumerate() {
                            if i == j - i && xi >= yi {
                                continue;
                            }
                            if x.max_letter() != new_letter && y.max_letter() != new_letter {
                                continue;
                            }
                            if let Some((a, _)) = y.children() {
                                if a > x {
                                    continue;
                                }
                            }
                            let w = HallWord::bracket(x.clone(), y.clone());
                            if keep(&w) {
                                fresh.push(w);
                            }
                        }
                    }
                }
                fresh.sort();
            }
            let old = self.stratum(j);
            if old.len() + fresh.len() > self.limit {
                return Err(HallError::ResourceLimit {
                    letters: new_letter,
                    weight: j,
                    limit: self.limit,
                });
            }
            let mut stratum = Vec::with_capacity(old.len() + fresh.len());
            stratum.extend_from_slice(old);
            stratum.extend(fresh);
            strata.push(stratum);
        }
        Ok(HallSet {
            letters: new_letter,
            max_weight: self.max_weight,
            limit: self.limit,
            strata,
        })
    }

    fn empty(max_weight: usize, limit: usize) -> Self {
        HallSet {
            letters: 0,
            max_weight,
            limit,
            strata: vec![Vec::new(); max_weight],
        }
    }
}

/// Builds the Hall set letter by letter, keeping only words accepted by `keep`.
///
/// `keep` must be closed under taking subwords (true of height bounds), or the
/// result is no longer a union of Hall strata.
fn generate_filtered(
    k: u32,
    max_weight: usize,
    limit: usize,
    keep: &dyn Fn(&HallWord) -> bool,
) -> Result<HallSet, HallError> {
    let mut set = HallSet::empty(max_weight, limit);
    for _ in 0..k {
        set = set.extend_filtered(keep)?;
    }
    Ok(set)
}

/// All Hall words on `k` letters of weight at most `max_weight`.
pub fn generate(k: u32, max_weight: usize) -> Result<HallSet, HallError> {
    generate_with_limit(k, max_weight, DEFAULT_STRATUM_LIMIT)
}

pub fn generate_with_limit(k: u32, max_weight: usize, limit: usize) -> Result<HallSet, HallError> {
    if k == 0 || max_weight == 0 {
        return Err(HallError::Argument("need k >= 1 and J >= 1".into()));
    }
    generate_filtered(k, max_weight, limit, &|_| true)
}

/// Möbius function by trial division.
pub fn mobius(mut n: u64) -> i32 {
    assert!(n >= 1);
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Necklace polynomial `M_k(j) = (1/j) sum_{d | j} mu(d) k^{j/d}`.
pub fn necklace_count(k: u32, j: u32) -> BigUint {
    assert!(k >= 1 && j >= 1);
    let mut total = BigInt::zero();
    for d in (1..=j).filter(|d| j.is_multiple_of(*d)) {
        let mu = mobius(u64::from(d));
        if mu != 0 {
            total += BigInt::from(mu) * BigInt::from(k).pow(j / d);
        }
    }
    debug_assert!(!total.is_negative());
    let (q, r) = (total.clone() / BigInt::from(j), total % BigInt::from(j));
    debug_assert!(r.is_zero());
    q.to_biguint().expect("necklace counts are nonnegative")
}

/// Convenience for small arguments.
pub fn necklace_count_u64(k: u32, j: u32) -> Option<u64> {
    necklace_count(k, j).to_u64()
}

/// `H_{n,k}`: Hall words on `k` letters with `h(w) + 1 <= n`, in canonical order.
pub fn dimension_truncation(
    k: u32,
    n: u32,
    grading: &GradingSequence,
) -> Result<Vec<HallWord>, HallError> {
    Ok(height_bounded(k, n, grading)?.iter().cloned().collect())
}

fn height_bounded(k: u32, n: u32, grading: &GradingSequence) -> Result<HallSet, HallError> {
    if n < 2 {
        return Err(HallError::Argument(format!("dimension n = {n} must be at least 2")));
    }
    let bound = u64::from(n - 1);
    // r_i >= 1, so h(w) >= L(w)
    let max_weight = (n - 1) as usize;
    generate_filtered(k, max_weight, DEFAULT_STRATUM_LIMIT, &|w| w.height(grading) <= bound)
}

/// `M_i(j)` restricted to `k` letters: Hall words of weight `j` whose smallest
/// letter is `a_i`.
pub fn min_letter_partition(i: u32, j: usize, k: u32) -> Result<Vec<HallWord>, HallError> {
    if j < 2 {
        return Err(HallError::Argument("M_i(j) is defined for j >= 2".into()));
    }
    let set = generate(k, j)?;
    Ok(set
        .stratum(j)
        .iter()
        .filter(|w| w.min_letter() == i)
        .cloned()
        .collect())
}

/// Number of Hall words in one height class of `H_{n,infinity}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cardinality {
    Finite(u64),
    Countable,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(c) => write!(f, "{c}"),
            Cardinality::Countable => write!(f, "N"),
        }
    }
}

/// Classifies `H_{n,infinity}` by height.
///
/// Only letters with `r_i <= n - 1` can occur. A word of height at most `n - 1`
/// uses at most `D = (n - 1) / t` distinct tail letters (`t` the tail value),
/// and the number of Hall words with a given multidegree depends only on the
/// multiset of exponents. So a height class is infinite exactly when some word
/// in it uses a tail letter, and it suffices to enumerate `p + D` letters.
pub fn height_class_census(
    n: u32,
    grading: &GradingSequence,
) -> Result<BTreeMap<u64, Cardinality>, HallError> {
    if n < 2 {
        return Err(HallError::Argument(format!("dimension n = {n} must be at least 2")));
    }
    let prefix_len = grading.prefix().len() as u32;
    let tail_letters = (n - 1) / grading.tail();
    let k = prefix_len + tail_letters;
    let mut census = BTreeMap::new();
    if k == 0 {
        return Ok(census);
    }
    let set = height_bounded(k, n, grading)?;
    for w in set.iter() {
        let h = w.height(grading);
        let entry = census.entry(h).or_insert(Cardinality::Finite(0));
        if w.max_letter() > prefix_len {
            *entry = Cardinality::Countable;
        } else if let Cardinality::Finite(c) = entry {
            *c += 1;
        }
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> HallWord {
        s.parse().unwrap()
    }

    fn words(v: &[HallWord]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn two_letters_weight_one() {
        let set = generate(2, 1).unwrap();
        assert_eq!(words(set.stratum(1)), ["a1", "a2"]);
    }

    #[test]
    fn two_letters_weight_three_as_sets() {
        let set = generate(2, 3).unwrap();
        assert_eq!(words(set.stratum(2)), ["[a1,a2]"]);
        let mut got = words(set.stratum(3));
        got.sort();
        assert_eq!(got, ["[a1,[a1,a2]]", "[a2,[a1,a2]]"]);
    }

    #[test]
    fn single_letter_has_no_brackets() {
        let set = generate(1, 3).unwrap();
        assert_eq!(words(&set.iter().cloned().collect::<Vec<_>>()), ["a1"]);
    }

    #[test]
    fn hall_conditions() {
        assert!(is_hall(&w("[a2,[a1,a3]]"), 3));
        assert!(!is_hall(&w("[a1,[a2,a3]]"), 3));
        assert!(is_hall(&w("[a1,a2]"), 2));
        assert!(!is_hall(&w("[a2,a1]"), 2));
        assert!(!is_hall(&w("[a1,a1]"), 2));
        assert!(!is_hall(&w("[a1,a3]"), 2));
        let set = generate(3, 3).unwrap();
        assert!(set.contains(&w("[a2,[a1,a3]]")));
        assert!(!set.contains(&w("[a1,[a2,a3]]")));
    }

    #[test]
    fn heights() {
        let one = GradingSequence::constant(1).unwrap();
        assert_eq!(w("[a1,a2]").height(&one), 2);
        let g: GradingSequence = "1,2;2".parse().unwrap();
        assert_eq!(w("[a1,[a1,a2]]").height(&g), 4);
        let g: GradingSequence = "1,1,5;5".parse().unwrap();
        assert_eq!(w("a3").height(&g), 5);
    }

    #[test]
    fn necklace_values() {
        assert_eq!(necklace_count_u64(2, 3), Some(2));
        assert_eq!(necklace_count_u64(1, 1), Some(1));
        assert_eq!(necklace_count_u64(3, 3), Some(8));
        assert_eq!(necklace_count_u64(2, 4), Some(3));
        assert_eq!(necklace_count_u64(1, 5), Some(0));
    }

    #[test]
    fn mobius_small() {
        let got: Vec<i32> = (1..=12).map(mobius).collect();
        assert_eq!(got, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn truncations() {
        let one = GradingSequence::constant(1).unwrap();
        assert_eq!(words(&dimension_truncation(2, 3, &one).unwrap()), ["a1", "a2", "[a1,a2]"]);
        assert_eq!(words(&dimension_truncation(2, 2, &one).unwrap()), ["a1", "a2"]);
        assert_eq!(dimension_truncation(3, 4, &one).unwrap().len(), 14);
    }

    #[test]
    fn min_letter_partitions() {
        assert_eq!(words(&min_letter_partition(1, 2, 3).unwrap()), ["[a1,a2]", "[a1,a3]"]);
        assert_eq!(words(&min_letter_partition(2, 2, 3).unwrap()), ["[a2,a3]"]);
        assert!(min_letter_partition(3, 2, 3).unwrap().is_empty());
    }

    #[test]
    fn census_examples() {
        let one = GradingSequence::constant(1).unwrap();
        let c = height_class_census(3, &one).unwrap();
        assert_eq!(
            c.into_iter().collect::<Vec<_>>(),
            [(1, Cardinality::Countable), (2, Cardinality::Countable)]
        );
        let g: GradingSequence = "1,2;3".parse().unwrap();
        let c = height_class_census(3, &g).unwrap();
        assert_eq!(
            c.into_iter().collect::<Vec<_>>(),
            [(1, Cardinality::Finite(1)), (2, Cardinality::Finite(1))]
        );
        let c = height_class_census(2, &one).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), [(1, Cardinality::Countable)]);
    }

    #[test]
    fn grading_parse_and_validate() {
        let g: GradingSequence = "1,2;3".parse().unwrap();
        assert_eq!((g.r(1), g.r(2), g.r(3), g.r(40)), (1, 2, 3, 3));
        assert_eq!(g.to_string(), "1,2;3");
        assert!("2,1;3".parse::<GradingSequence>().is_err());
        assert!("1,4;3".parse::<GradingSequence>().is_err());
        assert!("0".parse::<GradingSequence>().is_err());
        assert!("x".parse::<GradingSequence>().is_err());
    }

    #[test]
    fn stratum_limit_is_enforced() {
        let err = generate_with_limit(3, 3, 5).unwrap_err();
        assert!(matches!(err, HallError::ResourceLimit { weight: 3, .. }));
    }

    #[test]
    fn word_parse_roundtrip() {
        for s in ["a1", "[a1,a2]", "[a12,[a1,a3]]"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("[a1,a2".parse::<HallWord>().is_err());
        assert!("a0".parse::<HallWord>().is_err());
        assert!("[a1,a2]x".parse::<HallWord>().is_err());
    }
}
