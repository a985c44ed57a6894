//! Finite binary words, slopes, and the exact prefix-sum machinery.
//!
//! Letter weights are kept as integers scaled by the length of the base word,
//! so ω₀ = −|w|₁/|w| becomes `-|w|₁` and ω₁ = |w|₀/|w| becomes `|w|₀`. Every
//! comparison made on prefix sums is therefore exact.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite word over the alphabet {0, 1}.
///
/// Letters are stored as the bytes `0` and `1`. Values are immutable once
/// constructed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BinaryWord {
    letters: Vec<u8>,
}

impl BinaryWord {
    /// The empty word.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        if let Some(position) = letters.iter().position(|&l| l > 1) {
            return Err(Error::InvalidLetter {
                letter: char::from(b'0' + letters[position].min(9)),
                position,
            });
        }
        Ok(Self { letters })
    }

    /// Builds a word from letters already known to be 0 or 1.
    pub(crate) fn from_trusted(letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&l| l <= 1));
        Self { letters }
    }

    /// `letter` repeated `count` times.
    pub fn run(letter: u8, count: usize) -> Self {
        assert!(letter <= 1, "letter must be 0 or 1");
        Self::from_trusted(vec![letter; count])
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    /// |w|₁
    pub fn ones(&self) -> usize {
        self.letters.iter().filter(|&&l| l == 1).count()
    }

    /// |w|₀
    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }

    pub fn contains_both_letters(&self) -> bool {
        let ones = self.ones();
        ones > 0 && ones < self.len()
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Self::from_trusted(letters)
    }

    /// `self` repeated `k` times.
    pub fn pow(&self, k: usize) -> BinaryWord {
        Self::from_trusted(self.letters.repeat(k))
    }

    pub fn reversed(&self) -> BinaryWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        Self::from_trusted(letters)
    }

    /// The factor starting at `start` of length `len`.
    pub fn factor(&self, start: usize, len: usize) -> BinaryWord {
        Self::from_trusted(self.letters[start..start + len].to_vec())
    }

    pub fn prefix(&self, len: usize) -> BinaryWord {
        self.factor(0, len.min(self.len()))
    }

    pub fn is_prefix_of(&self, other: &BinaryWord) -> bool {
        other.letters.starts_with(&self.letters)
    }

    pub fn is_factor_of(&self, other: &BinaryWord) -> bool {
        contains_factor(&other.letters, &self.letters)
    }

    /// The slope π(w) = |w|₁ / |w| in lowest terms.
    pub fn slope(&self) -> Result<Slope> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Slope::new(self.ones() as u64, self.len() as u64))
    }

    /// The map L: exchanges the first two letters. Only defined for |w| ≥ 2.
    pub fn exchange_first_two(&self) -> Result<BinaryWord> {
        if self.len() < 2 {
            return Err(Error::TooShort(self.len()));
        }
        let mut letters = self.letters.clone();
        letters.swap(0, 1);
        Ok(Self::from_trusted(letters))
    }

    /// The unique primitive word `p` and exponent `k` with `self = p^k`.
    pub fn primitive_root(&self) -> Result<(BinaryWord, usize)> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let p = primitive_period(&self.letters);
        Ok((self.prefix(p), self.len() / p))
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.primitive_root()?.1 == 1)
    }
}

/// Length of the primitive root of a nonempty word.
pub(crate) fn primitive_period<T: PartialEq>(letters: &[T]) -> usize {
    let n = letters.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| letters[p..] == letters[..n - p])
        .unwrap_or(n)
}

pub(crate) fn contains_factor(haystack: &[u8], needle: &[u8]) -> bool {
    needle.is_empty() || haystack.windows(needle.len()).any(|w| w == needle)
}

/// True iff some rotation of `u` equals `v`.
pub fn are_conjugate(u: &BinaryWord, v: &BinaryWord) -> bool {
    if u.len() != v.len() {
        return false;
    }
    if u.is_empty() {
        return true;
    }
    let mut doubled = u.letters.clone();
    doubled.extend_from_slice(&u.letters);
    contains_factor(&doubled[..doubled.len() - 1], &v.letters)
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.letters.iter().map(|&l| char::from(b'0' + l)).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(position, letter)| match letter {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidLetter { letter, position }),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Self::from_trusted)
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BinaryWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A nonnegative rational `num/den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    num: u64,
    den: u64,
}

impl Slope {
    /// Reduces `num/den`. Panics if `den` is zero.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = num.gcd(&den);
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (u128::from(self.num) * u128::from(other.den))
            .cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Letter weights of a base word, scaled by its length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScaledWeights {
    pub base_len: i64,
    pub w0: i64,
    pub w1: i64,
}

impl ScaledWeights {
    pub fn from_base(base: &BinaryWord) -> Result<Self> {
        if !base.contains_both_letters() {
            return Err(Error::DegenerateBase);
        }
        Ok(Self {
            base_len: base.len() as i64,
            w0: -(base.ones() as i64),
            w1: base.zeros() as i64,
        })
    }

    pub fn weight(&self, letter: u8) -> i64 {
        if letter == 0 {
            self.w0
        } else {
            self.w1
        }
    }
}

/// |base| · Σ(u), i.e. `|u|₁·|base|₀ − |u|₀·|base|₁`.
pub fn scaled_sum(u: &BinaryWord, base: &BinaryWord) -> Result<i64> {
    let weights = ScaledWeights::from_base(base)?;
    Ok(u.ones() as i64 * weights.w1 + u.zeros() as i64 * weights.w0)
}

/// The prefix sum word psw(u), every entry scaled by `denominator = |base|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixSumWord {
    pub denominator: i64,
    pub values: Vec<i64>,
}

impl PrefixSumWord {
    pub fn max(&self) -> Option<i64> {
        self.values.iter().copied().max()
    }

    pub fn min(&self) -> Option<i64> {
        self.values.iter().copied().min()
    }
}

pub fn prefix_sum_word(u: &BinaryWord, base: &BinaryWord) -> Result<PrefixSumWord> {
    let weights = ScaledWeights::from_base(base)?;
    let values = u
        .letters()
        .iter()
        .scan(0i64, |acc, &l| {
            *acc += weights.weight(l);
            Some(*acc)
        })
        .collect();
    Ok(PrefixSumWord {
        denominator: weights.base_len,
        values,
    })
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn word(max: usize) -> impl Strategy<Value = BinaryWord> {
        proptest::collection::vec(0u8..=1, 0..max).prop_map(BinaryWord::from_trusted)
    }

    fn base() -> impl Strategy<Value = BinaryWord> {
        word(24).prop_filter("both letters", |b| b.contains_both_letters())
    }

    // Trial division over all divisors of |w|, independent of primitive_period.
    fn brute_root(w: &BinaryWord) -> (BinaryWord, usize) {
        for p in 1..=w.len() {
            if w.len().is_multiple_of(p) {
                let root = w.prefix(p);
                if root.pow(w.len() / p) == *w {
                    return (root, w.len() / p);
                }
            }
        }
        unreachable!()
    }

    proptest! {
        #[test]
        fn scaled_sum_is_additive(u in word(30), v in word(30), b in base()) {
            let uv = u.concat(&v);
            prop_assert_eq!(
                scaled_sum(&uv, &b).unwrap(),
                scaled_sum(&u, &b).unwrap() + scaled_sum(&v, &b).unwrap()
            );
        }

        #[test]
        fn weight_slope_identity(u in word(30).prop_filter("nonempty", |u| !u.is_empty()), b in base()) {
            let slope = u.slope().unwrap();
            let (c, d) = (slope.numerator() as i64, slope.denominator() as i64);
            let lhs = scaled_sum(&u, &b).unwrap() * d;
            let rhs = u.len() as i64 * (c * b.len() as i64 - d * b.ones() as i64);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn prefix_sum_steps_are_weights(u in word(30), b in base()) {
            let weights = ScaledWeights::from_base(&b).unwrap();
            prop_assert_eq!(weights.w1 - weights.w0, weights.base_len);
            prop_assert!(weights.w0 <= 0 && 0 <= weights.w1);
            let psw = prefix_sum_word(&u, &b).unwrap();
            let mut prev = 0;
            for &value in &psw.values {
                prop_assert!(value - prev == weights.w0 || value - prev == weights.w1);
                prev = value;
            }
        }

        #[test]
        fn exchange_is_an_involution(u in word(20).prop_filter("len >= 2", |u| u.len() >= 2)) {
            let swapped = u.exchange_first_two().unwrap();
            prop_assert_eq!(swapped.len(), u.len());
            prop_assert_eq!(swapped.ones(), u.ones());
            prop_assert_eq!(swapped.exchange_first_two().unwrap(), u);
        }

        #[test]
        fn primitive_root_matches_trial_division(u in word(21).prop_filter("nonempty", |u| !u.is_empty())) {
            let (root, k) = u.primitive_root().unwrap();
            prop_assert_eq!(root.pow(k), u.clone());
            prop_assert_eq!(root.primitive_root().unwrap().1, 1);
            prop_assert_eq!((root, k), brute_root(&u));
        }

        #[test]
        fn conjugacy_is_an_equivalence(
            (u, r1, r2) in word(12).prop_flat_map(|u| { let n = u.len().max(1); (Just(u), 0..n, 0..n) })
        ) {
            let rotate = |w: &BinaryWord, k: usize| {
                if w.is_empty() { return w.clone(); }
                let k = k % w.len();
                BinaryWord::from_trusted([&w.letters()[k..], &w.letters()[..k]].concat())
            };
            let v = rotate(&u, r1);
            let x = rotate(&v, r2);
            prop_assert!(are_conjugate(&u, &u));
            prop_assert!(are_conjugate(&u, &v) && are_conjugate(&v, &u));
            prop_assert!(are_conjugate(&u, &x));
        }
    }
}
