//! Solutions of X₁² ⋯ Xₙ² = (X₁ ⋯ Xₙ)² over the minimal square roots,
//! pattern words and the substitution 𝒫_S, the decomposition of a solution
//! over {S, L(S)}, and the type I / type II classifier.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::squares::{in_language_letters, MinimalRoots, Params};
use crate::standard::{central_word, is_reversed_standard};
use crate::word::{primitive_period, BinaryWord};

/// Inclusive upper bounds for the parameter search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParamBounds {
    pub a_max: u32,
    pub b_max: u32,
}

impl ParamBounds {
    pub fn new(a_max: u32, b_max: u32) -> Self {
        Self { a_max, b_max }
    }

    /// a_max = b_max = 2|w|: a minimal square inside w² is at most 2|w| long.
    pub fn for_len(len: usize) -> Self {
        let bound = u32::try_from(2 * len).unwrap_or(u32::MAX);
        Self::new(bound, bound)
    }
}

pub(crate) fn is_solution_letters(w: &[u8], p: Params) -> bool {
    let doubled = [w, w].concat();
    MinimalRoots::new(p).squares_to_root(&doubled, w) && in_language_letters(&doubled, p, false)
}

/// True iff w² ∈ Π(a, b) and √(w²) = w.
pub fn is_solution(w: &BinaryWord, p: Params) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(is_solution_letters(w.letters(), p))
}

/// Run structure of w²: zero runs between consecutive ones, plus the runs
/// before the first and after the last one.
struct Runs {
    leading: usize,
    interior: Vec<usize>,
    trailing: usize,
}

impl Runs {
    fn of(w: &[u8]) -> Option<Self> {
        let ones: Vec<usize> = (0..w.len()).filter(|&i| w[i] == 1).collect();
        let (&first, &last) = (ones.first()?, ones.last()?);
        Some(Self {
            leading: first,
            interior: ones.windows(2).map(|p| p[1] - p[0] - 1).collect(),
            trailing: w.len() - last - 1,
        })
    }
}

/// Parameters that are not excluded by the run structure of w².
///
/// In Λ(a, b) every zero run between two ones has length a or a + 1, the
/// long runs are separated by b or b + 1 short ones, and no stretch of short
/// runs is longer than b + 1.
fn candidate_params(doubled: &[u8], bounds: ParamBounds) -> Vec<Params> {
    let full_scan = || -> Vec<Params> {
        (1..=bounds.a_max)
            .flat_map(|a| (0..=bounds.b_max).map(move |b| Params::new(a, b).unwrap()))
            .collect()
    };
    let Some(runs) = Runs::of(doubled) else {
        return full_scan();
    };
    let Some(&min_run) = runs.interior.iter().min() else {
        return full_scan();
    };

    let mut out = Vec::new();
    for a in [min_run.saturating_sub(1), min_run] {
        if a == 0 || a > bounds.a_max as usize {
            continue;
        }
        if out.iter().any(|p: &Params| p.a() as usize == a) {
            continue;
        }
        let fits = runs.interior.iter().all(|&r| r == a || r == a + 1)
            && runs.leading <= a + 1
            && runs.trailing <= a + 1;
        if !fits {
            continue;
        }

        let long_positions: Vec<usize> = (0..runs.interior.len())
            .filter(|&i| runs.interior[i] == a + 1)
            .collect();
        let (b_lo, b_hi) = if long_positions.len() >= 2 {
            let mut lo = 0usize;
            let mut hi = usize::MAX;
            for gap in long_positions.windows(2).map(|p| p[1] - p[0] - 1) {
                lo = lo.max(gap.saturating_sub(1));
                hi = hi.min(gap);
            }
            (lo, hi)
        } else {
            let longest_short_stretch = runs
                .interior
                .split(|&r| r == a + 1)
                .map(<[usize]>::len)
                .max()
                .unwrap_or(0);
            (longest_short_stretch.saturating_sub(1), usize::MAX)
        };
        let b_hi = b_hi.min(bounds.b_max as usize);
        for b in b_lo..=b_hi {
            out.push(Params::new(a as u32, b as u32).unwrap());
        }
    }
    out
}

pub(crate) fn find_params_letters(w: &[u8], bounds: ParamBounds) -> Vec<Params> {
    let doubled = [w, w].concat();
    candidate_params(&doubled, bounds)
        .into_iter()
        .filter(|&p| is_solution_letters(w, p))
        .collect()
}

/// All (a, b) within `bounds` for which `w` is a solution, in ascending
/// order. Candidates are pruned by the zero-run structure of w².
pub fn find_params(w: &BinaryWord, bounds: ParamBounds) -> Result<Vec<Params>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(find_params_letters(w.letters(), bounds))
}

/// Reference scan over every (a, b) within `bounds`, without pruning.
pub fn find_params_unpruned(w: &BinaryWord, bounds: ParamBounds) -> Result<Vec<Params>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok((1..=bounds.a_max)
        .flat_map(|a| (0..=bounds.b_max).map(move |b| Params::new(a, b).unwrap()))
        .filter(|&p| is_solution_letters(w.letters(), p))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlLetter {
    S,
    L,
}

impl SlLetter {
    pub fn swapped(self) -> Self {
        match self {
            SlLetter::S => SlLetter::L,
            SlLetter::L => SlLetter::S,
        }
    }
}

/// A word over the alphabet {S, L}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SlWord(Vec<SlLetter>);

impl SlWord {
    pub fn new(letters: Vec<SlLetter>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[SlLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_empty() && primitive_period(&self.0) == self.len()
    }

    /// Exchanges the letters S and L.
    pub fn swapped(&self) -> SlWord {
        SlWord(self.0.iter().map(|l| l.swapped()).collect())
    }
}

impl FromStr for SlWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'S' => Ok(SlLetter::S),
                'L' => Ok(SlLetter::L),
                other => Err(Error::InvalidPatternLetter(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(SlWord)
    }
}

impl fmt::Display for SlWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .0
            .iter()
            .map(|l| match l {
                SlLetter::S => 'S',
                SlLetter::L => 'L',
            })
            .collect();
        f.write_str(&s)
    }
}

impl Serialize for SlWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A nonempty {S, L}-word constant on every orbit of x ↦ 2x mod n.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PatternWord(SlWord);

impl PatternWord {
    pub fn as_sl_word(&self) -> &SlWord {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_nontrivial(&self) -> bool {
        self.len() > 1
    }

    pub fn is_primitive(&self) -> bool {
        self.0.is_primitive()
    }
}

impl TryFrom<SlWord> for PatternWord {
    type Error = Error;

    fn try_from(u: SlWord) -> Result<Self> {
        if is_pattern_word(&u) {
            Ok(PatternWord(u))
        } else {
            Err(Error::NotPatternWord)
        }
    }
}

impl FromStr for PatternWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<SlWord>()?.try_into()
    }
}

impl fmt::Display for PatternWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The orbits of x ↦ 2x mod n, where i and j share an orbit when
/// 2^k₁·i ≡ 2^k₂·j (mod n) for some k₁, k₂. Each orbit is sorted and the
/// orbits are ordered by their least element.
pub fn doubling_orbits(n: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for x in 0..n {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, 2 * x % n));
        if rx != ry {
            parent[rx.max(ry)] = rx.min(ry);
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for x in 0..n {
        let root = find(&mut parent, x);
        if slot[root] == usize::MAX {
            slot[root] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[root]].push(x);
    }
    orbits
}

/// True iff `u` is nonempty and a_i = a_{2i mod n} for every i.
pub fn is_pattern_word(u: &SlWord) -> bool {
    let n = u.len();
    n > 0 && (0..n).all(|i| u.0[i] == u.0[2 * i % n])
}

/// 𝒫_w(u): replaces S by w and L by L(w).
pub fn substitute_pattern(u: &SlWord, w: &BinaryWord) -> Result<BinaryWord> {
    let l = w.exchange_first_two()?;
    let mut letters = Vec::with_capacity(u.len() * w.len());
    for letter in u.letters() {
        letters.extend_from_slice(match letter {
            SlLetter::S => w.letters(),
            SlLetter::L => l.letters(),
        });
    }
    Ok(BinaryWord::from_trusted(letters))
}

/// Writes `w` over the blocks S = 01u and L = 10u, where u is the central
/// word of the slope of `w`.
pub fn decompose_over_sl(w: &BinaryWord) -> Result<(BinaryWord, SlWord)> {
    if !w.contains_both_letters() {
        return Err(Error::PreconditionFailed(
            "decomposition over {S, L} needs both letters".into(),
        ));
    }
    let slope = w.slope()?;
    let central = central_word(slope.numerator(), slope.denominator())?;
    let s = BinaryWord::from_trusted([&[0, 1], central.letters()].concat());
    let l = s.exchange_first_two()?;
    let d = s.len();
    let blocks = w
        .letters()
        .chunks(d)
        .enumerate()
        .map(|(block, chunk)| {
            if chunk == s.letters() {
                Ok(SlLetter::S)
            } else if chunk == l.letters() {
                Ok(SlLetter::L)
            } else {
                Err(Error::NotDecomposable { block })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((s, SlWord(blocks)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    TypeI,
    TypeII,
    PowerOfPrimitive,
    NotSolution,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::TypeI => "TypeI",
            Verdict::TypeII => "TypeII",
            Verdict::PowerOfPrimitive => "PowerOfPrimitive",
            Verdict::NotSolution => "NotSolution",
        })
    }
}

/// Verdict of the classifier together with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// Every (a, b) within `bounds` for which the word is a solution.
    pub params: Vec<Params>,
    #[serde(rename = "S")]
    pub witness_s: Option<BinaryWord>,
    #[serde(rename = "u")]
    pub witness_u: Option<PatternWord>,
    /// Parameters certifying |S| > |S₆| for a type II verdict.
    pub witness_params: Option<Params>,
    pub root: Option<(BinaryWord, usize)>,
    /// The verdict for words such as 0^k depends on these bounds.
    #[serde(flatten)]
    pub bounds: ParamBounds,
}

/// Sorts a solution into type I, type II, or a power of a primitive solution.
///
/// Raises [`Error::ClassificationContradiction`] if a type II candidate
/// fails its structural checks, which no solution is expected to do.
pub fn classify(w: &BinaryWord, bounds: ParamBounds) -> Result<Classification> {
    let params = find_params(w, bounds)?;
    let mut out = Classification {
        verdict: Verdict::NotSolution,
        params,
        witness_s: None,
        witness_u: None,
        witness_params: None,
        root: None,
        bounds,
    };
    if out.params.is_empty() {
        return Ok(out);
    }

    let (root, k) = w.primitive_root()?;
    if k > 1 {
        if out
            .params
            .iter()
            .all(|&p| !is_solution_letters(root.letters(), p))
        {
            return Err(Error::ClassificationContradiction(format!(
                "primitive root {root} of the solution {w} is not a solution"
            )));
        }
        out.verdict = Verdict::PowerOfPrimitive;
        out.root = Some((root, k));
        return Ok(out);
    }

    if is_reversed_standard(w)? {
        out.verdict = Verdict::TypeI;
        return Ok(out);
    }

    let (s, u) = decompose_over_sl(w).map_err(|e| {
        Error::ClassificationContradiction(format!("{w} is not over {{S, L}}: {e}"))
    })?;
    if u.len() < 2 || !u.is_primitive() {
        return Err(Error::ClassificationContradiction(format!(
            "{w} decomposes as {u}, which is not nontrivial and primitive"
        )));
    }
    let pattern = PatternWord::try_from(u.clone()).map_err(|_| {
        Error::ClassificationContradiction(format!("{w} decomposes as {u}, not a pattern word"))
    })?;
    let witness = out
        .params
        .iter()
        .copied()
        .find(|p| s.len() > p.s6_len())
        .ok_or_else(|| {
            Error::ClassificationContradiction(format!(
                "|S| = {} is at most |S6| for every parameter",
                s.len()
            ))
        })?;
    out.verdict = Verdict::TypeII;
    out.witness_s = Some(s);
    out.witness_u = Some(pattern);
    out.witness_params = Some(witness);
    Ok(out)
}
