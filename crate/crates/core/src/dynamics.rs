//! Infinite words given by block generators over the minimal squares, the
//! square root map on their prefixes, and periodicity checks.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::squares::{MinimalRoots, Params, RootIndex};
use crate::standard::natural_params;
use crate::word::{are_conjugate, BinaryWord};

/// Which construction a [`SquareStream`] follows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StreamKind {
    Sl { s: BinaryWord, c: u32 },
    NoSquarePrefix,
    TwoPeriodic,
}

impl fmt::Display for StreamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreamKind::Sl { s, c } => write!(f, "sl(S={s}, c={c})"),
            StreamKind::NoSquarePrefix => f.write_str("no_square_prefix"),
            StreamKind::TwoPeriodic => f.write_str("two_periodic"),
        }
    }
}

/// An infinite product of minimal squares S_i², generated block by block.
///
/// Every block pulled from the iterator is appended to the materialized
/// prefix, so [`SquareStream::word`] always ends at a block boundary.
pub struct SquareStream {
    params: Params,
    kind: StreamKind,
    roots: MinimalRoots,
    blocks: Box<dyn Iterator<Item = RootIndex> + Send>,
    trace: Vec<RootIndex>,
    letters: Vec<u8>,
}

impl fmt::Debug for SquareStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SquareStream")
            .field("params", &self.params)
            .field("kind", &self.kind)
            .field("materialized", &self.letters.len())
            .finish()
    }
}

impl SquareStream {
    fn new(
        params: Params,
        kind: StreamKind,
        blocks: Box<dyn Iterator<Item = RootIndex> + Send>,
    ) -> Self {
        Self {
            params,
            kind,
            roots: MinimalRoots::new(params),
            blocks,
            trace: Vec::new(),
            letters: Vec::new(),
        }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn kind(&self) -> &StreamKind {
        &self.kind
    }

    /// Pulls blocks until at least `min_len` letters are materialized.
    pub fn extend_to(&mut self, min_len: usize) {
        while self.letters.len() < min_len && self.next().is_some() {}
    }

    /// The materialized prefix.
    pub fn word(&self) -> BinaryWord {
        BinaryWord::from_trusted(self.letters.clone())
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// Indices i of the blocks S_i² pulled so far.
    pub fn trace(&self) -> &[RootIndex] {
        &self.trace
    }
}

impl Iterator for SquareStream {
    type Item = RootIndex;

    fn next(&mut self) -> Option<RootIndex> {
        let i = self.blocks.next()?;
        self.trace.push(i);
        self.letters.extend_from_slice(self.roots.square(i));
        Some(i)
    }
}

/// Z₀ = S, Z_{n+1} = L(Z_n) Z_n^{2c}.
#[derive(Debug, Clone)]
pub struct SlIterates {
    current: BinaryWord,
    c: u32,
}

impl Iterator for SlIterates {
    type Item = BinaryWord;

    fn next(&mut self) -> Option<BinaryWord> {
        let z = &self.current;
        let mut next = z.exchange_first_two().expect("iterates have length >= 2");
        next = next.concat(&z.pow(2 * self.c as usize));
        Some(std::mem::replace(&mut self.current, next))
    }
}

fn check_sl_input(s: &BinaryWord, c: u32) -> Result<Params> {
    if c == 0 {
        return Err(Error::PreconditionFailed("c must be at least 1".into()));
    }
    let p = natural_params(s)?;
    if s.len() <= p.s6_len() {
        return Err(Error::PreconditionFailed(format!(
            "|S| = {} does not exceed |S6| = {} at {p}",
            s.len(),
            p.s6_len()
        )));
    }
    Ok(p)
}

/// The iterates Z₀, Z₁, … for a reversed standard S with |S| > |S₆|.
pub fn sl_iterates(s: &BinaryWord, c: u32) -> Result<SlIterates> {
    check_sl_input(s, c)?;
    Ok(SlIterates {
        current: s.clone(),
        c,
    })
}

/// Z_{2k} is a prefix of Z_{2k+2}; blocks come from the greedy parse of a
/// growing even iterate.
struct SlBlocks {
    roots: MinimalRoots,
    iterates: SlIterates,
    parsed: Vec<RootIndex>,
    pos: usize,
}

impl Iterator for SlBlocks {
    type Item = RootIndex;

    fn next(&mut self) -> Option<RootIndex> {
        while self.pos >= self.parsed.len() {
            self.iterates.next();
            let z = self.iterates.next()?;
            let (parsed, _) = self.roots.parse_prefix(z.letters());
            debug_assert!(parsed.starts_with(&self.parsed));
            self.parsed = parsed;
        }
        self.pos += 1;
        Some(self.parsed[self.pos - 1])
    }
}

/// The limit of the even iterates Z_{2k}, a fixed point of the square root map.
pub fn sl_fixed_point(s: &BinaryWord, c: u32) -> Result<SquareStream> {
    let p = check_sl_input(s, c)?;
    let mut iterates = sl_iterates(s, c)?;
    let z0 = iterates.next().expect("iterates are infinite");
    let roots = MinimalRoots::new(p);
    let (parsed, _) = roots.parse_prefix(z0.letters());
    let blocks = SlBlocks {
        roots: roots.clone(),
        iterates,
        parsed,
        pos: 0,
    };
    Ok(SquareStream::new(
        p,
        StreamKind::Sl { s: s.clone(), c },
        Box::new(blocks),
    ))
}

fn repeat(i: RootIndex, count: u64) -> impl Iterator<Item = RootIndex> {
    std::iter::repeat_n(i, count as usize)
}

/// S₅²S₆² ∏_{i≥0} (S₃^{2^i} S₆^{2^i})² at b = 0.
pub fn no_square_prefix_word(a: u32) -> Result<SquareStream> {
    let p = Params::new(a, 0)?;
    // (S₃S₆)² is not itself a product of two minimal squares; it factors as S₂²S₁²S₆².
    let head = [5, 6, 2, 1, 6].into_iter();
    let tail = (1u32..).flat_map(|i| {
        let k = 1u64 << (i - 1).min(62);
        repeat(3, k)
            .chain(repeat(6, k))
            .chain(repeat(3, k))
            .chain(repeat(6, k))
    });
    Ok(SquareStream::new(
        p,
        StreamKind::NoSquarePrefix,
        Box::new(head.chain(tail)),
    ))
}

/// S₂²S₁² ∏_{n≥1} (S₆²)^{r(n)} (S₃²)^{s(n)} at b = 0, where r(1) = s(1) = 2,
/// r(2) = 6, s(2) = 8 and both grow by a factor 4 afterwards.
pub fn two_periodic_word(a: u32) -> Result<SquareStream> {
    let p = Params::new(a, 0)?;
    let head = [2, 1].into_iter();
    let tail = (1u32..).flat_map(|n| {
        let (r, s) = two_periodic_counts(n);
        repeat(6, r).chain(repeat(3, s))
    });
    Ok(SquareStream::new(
        p,
        StreamKind::TwoPeriodic,
        Box::new(head.chain(tail)),
    ))
}

/// (r(n), s(n)) for n ≥ 1.
pub fn two_periodic_counts(n: u32) -> (u64, u64) {
    match n {
        0 | 1 => (2, 2),
        _ => {
            let scale = 4u64.saturating_pow(n - 2);
            (6u64.saturating_mul(scale), 8u64.saturating_mul(scale))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SqrtPrefix {
    pub root: BinaryWord,
    /// Letters dropped after the last complete minimal square.
    pub trimmed: usize,
}

/// √w on a finite word. With `trim`, w is first cut to its longest prefix
/// that is a product of minimal squares.
pub fn sqrt_prefix(w: &BinaryWord, p: Params, trim: bool) -> Result<SqrtPrefix> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let roots = MinimalRoots::new(p);
    let (indices, covered) = roots.parse_prefix(w.letters());
    if !trim && covered != w.len() {
        return Err(Error::NotInPi);
    }
    if covered == 0 {
        return Err(Error::EmptyAfterTrim);
    }
    Ok(SqrtPrefix {
        root: BinaryWord::from_trusted(roots.concat_roots(&indices)),
        trimmed: w.len() - covered,
    })
}

/// Every even ℓ ≤ |w| such that the prefix of length ℓ is a square.
pub fn square_prefixes(w: &BinaryWord) -> Vec<usize> {
    let l = w.letters();
    (1..=l.len() / 2)
        .filter(|&h| l[..h] == l[h..2 * h])
        .map(|h| 2 * h)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodReport {
    pub preperiod: usize,
    pub period: usize,
    pub period_word: BinaryWord,
    pub conjugate_to: Option<BinaryWord>,
}

/// The least (preperiod, period), ordered by preperiod first, such that
/// w[i] = w[i + period] for all i ≥ preperiod, with the periodic part
/// covering at least two periods. `max_period` defaults to |w| / 2.
/// `conjugate_to` is filled when the period word is a rotation of `reference`.
pub fn detect_period(
    w: &BinaryWord,
    max_period: Option<usize>,
    reference: Option<&BinaryWord>,
) -> Option<PeriodReport> {
    let l = w.letters();
    let n = l.len();
    let max_period = max_period.unwrap_or(n / 2).min(n / 2);
    let mut best: Option<(usize, usize)> = None;
    for p in 1..=max_period {
        // Least start of the suffix on which p is a period.
        let mut pre = n - p;
        while pre > 0 && l[pre - 1] == l[pre - 1 + p] {
            pre -= 1;
        }
        if pre + 2 * p <= n && best.is_none_or(|(bp, _)| pre < bp) {
            best = Some((pre, p));
        }
    }
    let (preperiod, period) = best?;
    let period_word = w.factor(preperiod, period);
    let conjugate_to = reference
        .filter(|r| are_conjugate(&period_word, r))
        .cloned();
    Some(PeriodReport {
        preperiod,
        period,
        period_word,
        conjugate_to,
    })
}

/// Result of comparing an iterated square root with the original prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IterationReport {
    pub iterations: usize,
    pub prefix_len: usize,
    /// Length after each square root.
    pub lengths: Vec<usize>,
    /// Letters trimmed before each square root.
    pub discarded: Vec<usize>,
    pub is_prefix: bool,
}

/// Applies the square root `iterations` times to a prefix of at least
/// `target_len` letters, trimming to complete squares in between, and checks
/// that the result is a prefix of the original.
pub fn iterated_root_check(
    stream: &mut SquareStream,
    target_len: usize,
    iterations: usize,
) -> Result<IterationReport> {
    if target_len == 0 || iterations == 0 {
        return Err(Error::PreconditionFailed(
            "target length and iteration count must be positive".into(),
        ));
    }
    stream.extend_to(target_len);
    let original = stream.word();
    let mut current = original.clone();
    let mut lengths = Vec::with_capacity(iterations);
    let mut discarded = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let s = sqrt_prefix(&current, stream.params(), true)?;
        discarded.push(s.trimmed);
        lengths.push(s.root.len());
        current = s.root;
    }
    Ok(IterationReport {
        iterations,
        prefix_len: original.len(),
        lengths,
        discarded,
        is_prefix: current.is_prefix_of(&original),
    })
}

/// True iff √ of a prefix of at least `target_len` letters is a prefix of the word.
pub fn verify_fixed_point(stream: &mut SquareStream, target_len: usize) -> Result<bool> {
    Ok(iterated_root_check(stream, target_len, 1)?.is_prefix)
}

/// What happened at one offset of [`find_periodic_shift`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ShiftOutcome {
    /// The shifted word does not start with a minimal square.
    NoFactorization,
    /// The root is shorter than requested.
    TooShort {
        root_len: usize,
    },
    NotPurelyPeriodic {
        report: Option<PeriodReport>,
    },
    PurelyPeriodic {
        report: PeriodReport,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftScan {
    /// First offset whose root is purely periodic with minimal period
    /// conjugate to S.
    pub found: Option<(usize, PeriodReport)>,
    pub outcomes: Vec<(usize, ShiftOutcome)>,
}

/// Tries offsets 0..=max_offset: drops that many letters from `word`, takes
/// the trimmed square root, and looks for a purely periodic root of length
/// at least `min_root_len` whose minimal period is a rotation of `s`.
pub fn find_periodic_shift(
    word: &BinaryWord,
    p: Params,
    s: &BinaryWord,
    max_offset: usize,
    min_root_len: usize,
) -> ShiftScan {
    let mut outcomes = Vec::new();
    for offset in 0..=max_offset.min(word.len().saturating_sub(1)) {
        let shifted = word.factor(offset, word.len() - offset);
        let outcome = match sqrt_prefix(&shifted, p, true) {
            Err(_) => ShiftOutcome::NoFactorization,
            Ok(r) if r.root.len() < min_root_len => ShiftOutcome::TooShort {
                root_len: r.root.len(),
            },
            Ok(r) => match detect_period(&r.root, Some(s.len()), Some(s)) {
                Some(report)
                    if report.preperiod == 0
                        && report.period == s.len()
                        && report.conjugate_to.is_some() =>
                {
                    ShiftOutcome::PurelyPeriodic { report }
                }
                report => ShiftOutcome::NotPurelyPeriodic { report },
            },
        };
        let hit = match &outcome {
            ShiftOutcome::PurelyPeriodic { report } => Some(report.clone()),
            _ => None,
        };
        outcomes.push((offset, outcome));
        if let Some(report) = hit {
            return ShiftScan {
                found: Some((offset, report)),
                outcomes,
            };
        }
    }
    ShiftScan {
        found: None,
        outcomes,
    }
}

/// Evidence that √ of the no-square-prefix word shifted by |S₆| is not a
/// shift of that word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftedRootCheck {
    /// 01 0^a (1 0^{a+1} 1 0^{a+1} 1 0^a)³ 1
    pub expected_prefix: BinaryWord,
    pub root_starts_with_expected: bool,
    pub prefix_is_factor: bool,
    pub searched_len: usize,
}

pub fn shifted_root_check(a: u32, searched_len: usize) -> Result<ShiftedRootCheck> {
    let mut stream = no_square_prefix_word(a)?;
    let shift = stream.params().s6_len();
    stream.extend_to(searched_len.max(4 * shift) + shift);
    let word = stream.word();
    let shifted = word.factor(shift, word.len() - shift);
    let root = sqrt_prefix(&shifted, stream.params(), true)?.root;

    let zeros = |k: u32| BinaryWord::run(0, k as usize);
    let one = BinaryWord::run(1, 1);
    let unit = one
        .concat(&zeros(a + 1))
        .concat(&one)
        .concat(&zeros(a + 1))
        .concat(&one)
        .concat(&zeros(a));
    let expected_prefix = BinaryWord::from_trusted(vec![0, 1])
        .concat(&zeros(a))
        .concat(&unit.pow(3))
        .concat(&one);
    let searched = word.prefix(searched_len.min(word.len()));
    Ok(ShiftedRootCheck {
        root_starts_with_expected: expected_prefix.is_prefix_of(&root),
        prefix_is_factor: expected_prefix.is_factor_of(&searched),
        expected_prefix,
        searched_len: searched.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn p(a: u32, b: u32) -> Params {
        Params::new(a, b).unwrap()
    }

    #[test]
    fn sl_iterate_examples() {
        let s = w("01010010");
        let z: Vec<BinaryWord> = sl_iterates(&s, 1).unwrap().take(4).collect();
        assert_eq!(z[1], w("10010010").concat(&s.pow(2)));
        assert_eq!(z[1], w("100100100101001001010010"));
        for n in 0..3 {
            assert_eq!(z[n + 1].len(), 3 * z[n].len());
        }
        assert!(z[0].is_prefix_of(&z[2]));
        assert!(z[1].is_prefix_of(&z[3]));
        assert!(!z[0].is_prefix_of(&z[1]));
        assert!(matches!(
            sl_iterates(&w("010"), 1),
            Err(Error::PreconditionFailed(_))
        ));
        assert!(matches!(
            sl_iterates(&s, 0),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn no_square_prefix_head() {
        let mut stream = no_square_prefix_word(1).unwrap();
        stream.extend_to(16);
        assert!(stream.word().to_string().starts_with("1001001001010010"));
        assert_eq!(stream.trace()[..2], [5, 6]);
    }

    #[test]
    fn two_periodic_counts_grow() {
        assert_eq!(two_periodic_counts(1), (2, 2));
        assert_eq!(two_periodic_counts(2), (6, 8));
        assert_eq!(two_periodic_counts(3), (24, 32));
    }

    #[test]
    fn sqrt_prefix_examples() {
        let r = sqrt_prefix(&w("0101001001010010"), p(1, 0), false).unwrap();
        assert_eq!(r.root, w("01010010"));
        let r = sqrt_prefix(&w("010100100101001001"), p(1, 0), true).unwrap();
        assert_eq!((r.root, r.trimmed), (w("01010010"), 2));
        assert_eq!(sqrt_prefix(&w("00"), p(1, 0), false).unwrap().root, w("0"));
        assert_eq!(
            sqrt_prefix(&w("010100100101001001"), p(1, 0), false),
            Err(Error::NotInPi)
        );
        assert_eq!(
            sqrt_prefix(&w("11"), p(1, 0), true),
            Err(Error::EmptyAfterTrim)
        );
        assert_eq!(
            sqrt_prefix(&BinaryWord::empty(), p(1, 0), true),
            Err(Error::EmptyWord)
        );
    }

    #[test]
    fn square_prefix_examples() {
        assert_eq!(square_prefixes(&w("0101")), [4]);
        assert_eq!(square_prefixes(&w("00100")), [2]);
        assert!(square_prefixes(&w("0110")).is_empty());
    }

    #[test]
    fn period_examples() {
        let r = detect_period(&w("010101"), Some(4), None).unwrap();
        assert_eq!((r.preperiod, r.period, r.period_word), (0, 2, w("01")));
        let r = detect_period(&w("0010101"), Some(4), None).unwrap();
        assert_eq!((r.preperiod, r.period), (1, 2));
        let r = detect_period(&w("0010101"), None, Some(&w("10"))).unwrap();
        assert_eq!(r.conjugate_to, Some(w("10")));
        assert_eq!(detect_period(&w("0"), None, None), None);
    }

    #[test]
    fn iterated_root_of_two_periodic_word() {
        let mut stream = two_periodic_word(1).unwrap();
        assert!(!verify_fixed_point(&mut stream, 2000).unwrap());
        let r = iterated_root_check(&mut stream, 2000, 2).unwrap();
        assert!(r.is_prefix);
        assert_eq!(r.discarded[0], 0);
    }
}
