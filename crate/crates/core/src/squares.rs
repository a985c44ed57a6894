//! The six minimal square roots S₁…S₆ for parameters (a, b), membership in
//! the language Λ(a, b) of factors of (S₅ + S₆)^ω, the greedy factorization
//! into minimal squares, and the square-root map on finite words.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::BinaryWord;

/// The parameter pair (a, b) with a ≥ 1 and b ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "(u32, u32)", try_from = "(u32, u32)")]
pub struct Params {
    a: u32,
    b: u32,
}

impl Params {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidParams { a, b });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// |S₆| = (a + 2) + (b + 1)(a + 1).
    pub fn s6_len(&self) -> usize {
        let (a, b) = (self.a as usize, self.b as usize);
        (a + 2) + (b + 1) * (a + 1)
    }
}

impl From<Params> for (u32, u32) {
    fn from(p: Params) -> Self {
        (p.a, p.b)
    }
}

impl TryFrom<(u32, u32)> for Params {
    type Error = Error;

    fn try_from((a, b): (u32, u32)) -> Result<Self> {
        Params::new(a, b)
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(a={}, b={})", self.a, self.b)
    }
}

/// Index of a minimal square root, 1 through 6.
pub type RootIndex = u8;

/// The six minimal square roots of a parameter pair, with their squares.
#[derive(Debug, Clone)]
pub struct MinimalRoots {
    params: Params,
    roots: [Vec<u8>; 6],
    squares: [Vec<u8>; 6],
}

impl MinimalRoots {
    pub fn new(params: Params) -> Self {
        let (a, b) = (params.a as usize, params.b as usize);
        let zeros = |k: usize| std::iter::repeat_n(0u8, k);
        let one_zeros = |k: usize| std::iter::once(1u8).chain(zeros(k));
        let s1 = vec![0];
        let s2: Vec<u8> = [0, 1].into_iter().chain(zeros(a - 1)).collect();
        let s3: Vec<u8> = [0, 1].into_iter().chain(zeros(a)).collect();
        let s4: Vec<u8> = one_zeros(a).collect();
        let s5: Vec<u8> = one_zeros(a + 1)
            .chain((0..b).flat_map(|_| one_zeros(a)))
            .collect();
        let s6: Vec<u8> = one_zeros(a + 1)
            .chain((0..=b).flat_map(|_| one_zeros(a)))
            .collect();
        let roots = [s1, s2, s3, s4, s5, s6];
        let squares = roots.clone().map(|r| r.repeat(2));
        Self {
            params,
            roots,
            squares,
        }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    /// S_i for `i` in 1..=6.
    pub fn root(&self, i: RootIndex) -> &[u8] {
        &self.roots[usize::from(i) - 1]
    }

    /// S_i² for `i` in 1..=6.
    pub fn square(&self, i: RootIndex) -> &[u8] {
        &self.squares[usize::from(i) - 1]
    }

    pub fn max_square_len(&self) -> usize {
        self.squares[5].len()
    }

    /// The unique minimal square that is a prefix of `rest`, if any.
    pub(crate) fn match_square(&self, rest: &[u8]) -> Option<RootIndex> {
        let first = *rest.first()?;
        // Squares starting with 0 are S1..S3, those starting with 1 are S4..S6.
        let candidates = if first == 0 { 1..=3 } else { 4..=6 };
        candidates
            .into_iter()
            .find(|&i| rest.starts_with(self.square(i)))
    }

    /// Greedy left-to-right parse. Returns the indices and the number of
    /// letters covered; stops at the first position where no square matches.
    pub(crate) fn parse_prefix(&self, w: &[u8]) -> (Vec<RootIndex>, usize) {
        let mut indices = Vec::new();
        let mut pos = 0;
        while let Some(i) = self.match_square(&w[pos..]) {
            indices.push(i);
            pos += self.square(i).len();
        }
        (indices, pos)
    }

    /// Checks `w = X₁² ⋯ Xₙ²` together with `X₁ ⋯ Xₙ = root` in one pass,
    /// without allocating.
    pub(crate) fn squares_to_root(&self, w: &[u8], root: &[u8]) -> bool {
        let mut pos = 0;
        let mut root_pos = 0;
        while pos < w.len() {
            let Some(i) = self.match_square(&w[pos..]) else {
                return false;
            };
            let r = self.root(i);
            if !root[root_pos..].starts_with(r) {
                return false;
            }
            root_pos += r.len();
            pos += 2 * r.len();
        }
        root_pos == root.len()
    }

    pub(crate) fn concat_roots(&self, indices: &[RootIndex]) -> Vec<u8> {
        indices
            .iter()
            .flat_map(|&i| self.root(i).iter().copied())
            .collect()
    }
}

/// S₁ … S₆ for the given parameters.
pub fn minimal_square_roots(p: Params) -> [BinaryWord; 6] {
    MinimalRoots::new(p).roots.map(BinaryWord::from_trusted)
}

/// Node-labelled automaton: a node consumes its letter and moves to any of
/// its successors.
struct FactorAutomaton {
    letters: Vec<u8>,
    successors: Vec<Vec<usize>>,
}

impl FactorAutomaton {
    fn new(p: Params, allow_initial_runs: bool) -> Self {
        let roots = MinimalRoots::new(p);
        let s5 = roots.root(5);
        let s6 = roots.root(6);
        let start5 = 0;
        let start6 = s5.len();
        let block_starts = vec![start5, start6];

        let mut letters = Vec::new();
        let mut successors = Vec::new();
        for block in [s5, s6] {
            let base = letters.len();
            for (offset, &l) in block.iter().enumerate() {
                letters.push(l);
                successors.push(if offset + 1 == block.len() {
                    block_starts.clone()
                } else {
                    vec![base + offset + 1]
                });
            }
        }

        if allow_initial_runs {
            // Preamble 0* (10^a)* before the blocks.
            let zero = letters.len();
            let run = zero + 1;
            let a = p.a as usize;
            letters.push(0);
            successors.push(vec![zero, run, start5, start6]);
            letters.push(1);
            successors.push(vec![run + 1]);
            for k in 1..=a {
                letters.push(0);
                successors.push(if k == a {
                    vec![run, start5, start6]
                } else {
                    vec![run + k + 1]
                });
            }
        }
        Self {
            letters,
            successors,
        }
    }

    fn accepts_factor(&self, w: &[u8]) -> bool {
        let n = self.letters.len();
        let mut active = vec![true; n];
        let mut next = vec![false; n];
        for &l in w {
            next.iter_mut().for_each(|x| *x = false);
            let mut any = false;
            for (node, &on) in active.iter().enumerate() {
                if on && self.letters[node] == l {
                    for &s in &self.successors[node] {
                        next[s] = true;
                        any = true;
                    }
                }
            }
            if !any {
                return false;
            }
            std::mem::swap(&mut active, &mut next);
        }
        true
    }
}

pub(crate) fn in_language_letters(w: &[u8], p: Params, allow_initial_runs: bool) -> bool {
    w.is_empty() || FactorAutomaton::new(p, allow_initial_runs).accepts_factor(w)
}

/// Membership of `w` in Λ(a, b), the factors of (S₅ + S₆)^ω.
///
/// With `allow_initial_runs` the language is widened to the factors of
/// S₁* S₄* (S₅ + S₆)^ω.
pub fn in_language(w: &BinaryWord, p: Params, allow_initial_runs: bool) -> bool {
    in_language_letters(w.letters(), p, allow_initial_runs)
}

/// The factorization of a word as a product of minimal squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFactorization {
    pub params: Params,
    pub indices: Vec<RootIndex>,
}

impl SquareFactorization {
    /// X₁ ⋯ Xₙ.
    pub fn roots_word(&self) -> BinaryWord {
        BinaryWord::from_trusted(MinimalRoots::new(self.params).concat_roots(&self.indices))
    }

    /// X₁² ⋯ Xₙ².
    pub fn squares_word(&self) -> BinaryWord {
        let roots = MinimalRoots::new(self.params);
        BinaryWord::from_trusted(
            self.indices
                .iter()
                .flat_map(|&i| roots.square(i).iter().copied())
                .collect(),
        )
    }
}

impl Serialize for SquareFactorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SquareFactorization", 3)?;
        s.serialize_field("a", &self.params.a)?;
        s.serialize_field("b", &self.params.b)?;
        s.serialize_field("indices", &self.indices)?;
        s.end()
    }
}

/// Greedy factorization of `w` into S₁², …, S₆². No minimal square is a
/// prefix of another, so at most one square matches at each position.
pub fn factor_minimal_squares(w: &BinaryWord, p: Params) -> Result<SquareFactorization> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let roots = MinimalRoots::new(p);
    let (indices, covered) = roots.parse_prefix(w.letters());
    if covered < w.len() {
        return Err(Error::NoSquareMatches(covered));
    }
    Ok(SquareFactorization { params: p, indices })
}

/// Membership in Π(a, b): nonempty, in Λ(a, b), and a product of minimal squares.
pub fn in_pi(w: &BinaryWord, p: Params) -> bool {
    !w.is_empty() && factor_minimal_squares(w, p).is_ok() && in_language(w, p, false)
}

/// The square root √w of a word in Π(a, b).
pub fn sqrt_word(w: &BinaryWord, p: Params) -> Result<BinaryWord> {
    if !in_pi(w, p) {
        return Err(Error::NotInPi);
    }
    Ok(factor_minimal_squares(w, p)?.roots_word())
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

    fn all_params() -> impl Iterator<Item = Params> {
        (1..=6).flat_map(|a| (0..=6).map(move |b| p(a, b)))
    }

    #[test]
    fn params_validation() {
        assert_eq!(Params::new(0, 3), Err(Error::InvalidParams { a: 0, b: 3 }));
        assert_eq!(serde_json::to_string(&p(2, 1)).unwrap(), "[2,1]");
        assert_eq!(serde_json::from_str::<Params>("[2,1]").unwrap(), p(2, 1));
        assert!(serde_json::from_str::<Params>("[0,1]").is_err());
    }

    #[test]
    fn roots_examples() {
        let r = minimal_square_roots(p(1, 0));
        let expected = ["0", "01", "010", "10", "100", "10010"].map(w);
        assert_eq!(r, expected);
        assert_eq!(r[5].len(), 5);
        assert_eq!(p(1, 0).s6_len(), 5);

        let r = minimal_square_roots(p(2, 1));
        assert_eq!(r[4], w("1000100"));
        assert_eq!(r[5], w("1000100100"));
        for q in all_params() {
            assert_eq!(minimal_square_roots(q)[5].len(), q.s6_len());
        }
    }

    #[test]
    fn language_examples() {
        assert!(in_language(&w("0101001001010010"), p(1, 0), false));
        assert!(in_language(&BinaryWord::empty(), p(3, 2), false));
        assert!(in_language(&BinaryWord::empty(), p(3, 2), true));
        assert!(!in_language(&w("0101"), p(2, 0), false));
        assert!(!in_language(&w("11"), p(1, 0), false));
        // 0⁴ needs a + 1 ≥ 4.
        assert!(!in_language(&w("0000"), p(2, 5), false));
        assert!(in_language(&w("0000"), p(3, 0), false));
    }

    #[test]
    fn initial_runs_widen_the_language() {
        let q = p(1, 0);
        // (10)^3 exceeds b + 1 = 1 consecutive short blocks.
        let word = w("101010100");
        assert!(!in_language(&word, q, false));
        assert!(in_language(&word, q, true));
        let zeros = w("000000100");
        assert!(!in_language(&zeros, q, false));
        assert!(in_language(&zeros, q, true));
        // 11 never appears.
        assert!(!in_language(&w("0110"), q, true));
    }

    #[test]
    fn factorization_examples() {
        let f = factor_minimal_squares(&w("0101001001010010"), p(1, 0)).unwrap();
        assert_eq!(f.indices, vec![2, 1, 6]);
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"a":1,"b":0,"indices":[2,1,6]}"#
        );
        assert_eq!(
            factor_minimal_squares(&w("00"), p(1, 0)).unwrap().indices,
            vec![1]
        );
        assert_eq!(
            factor_minimal_squares(&w("01000100"), p(2, 0))
                .unwrap()
                .indices,
            vec![3]
        );
        assert_eq!(
            factor_minimal_squares(&w("00100010"), p(1, 0)),
            Err(Error::NoSquareMatches(2))
        );
        assert_eq!(
            factor_minimal_squares(&BinaryWord::empty(), p(1, 0)),
            Err(Error::EmptyWord)
        );
    }

    #[test]
    fn pi_examples() {
        assert!(in_pi(&w("0101001001010010"), p(1, 0)));
        assert!(!in_pi(&BinaryWord::empty(), p(1, 0)));
        assert!(in_pi(&w("1010"), p(1, 0)));
        // A product of squares that leaves the language: S1^2 S1^2 at a = 1.
        assert!(!in_pi(&w("0000"), p(1, 0)));
    }

    #[test]
    fn sqrt_examples() {
        let q = p(1, 0);
        assert_eq!(sqrt_word(&w("0101001001010010"), q).unwrap(), w("01010010"));
        assert_eq!(sqrt_word(&w("00"), q).unwrap(), w("0"));
        assert_eq!(
            sqrt_word(&w("10100101001001010010"), q).unwrap(),
            w("1001010010")
        );
        assert_eq!(sqrt_word(&w("0010"), q), Err(Error::NotInPi));
    }

    #[test]
    fn squares_are_pairwise_non_prefix() {
        for q in all_params() {
            let roots = MinimalRoots::new(q);
            for i in 1..=6 {
                for j in 1..=6 {
                    if i != j {
                        assert!(
                            !roots.square(j).starts_with(roots.square(i)),
                            "S{i}^2 is a prefix of S{j}^2 at {q}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn each_square_is_in_the_language() {
        for q in all_params() {
            let roots = MinimalRoots::new(q);
            for i in 1..=6 {
                let sq = BinaryWord::from_trusted(roots.square(i).to_vec());
                assert!(in_language(&sq, q, false), "S{i}^2 at {q}");
                assert!(in_pi(&sq, q));
                assert_eq!(sqrt_word(&sq, q).unwrap().letters(), roots.root(i));
            }
        }
    }

    #[test]
    fn six_slope_property() {
        // For x = y10z with y nonempty: π(y) < π(10z); for x = y01z: π(y) > π(01z).
        for q in all_params() {
            for root in minimal_square_roots(q) {
                let x = root.letters();
                for k in 1..x.len().saturating_sub(1) {
                    let (y, rest) = (root.prefix(k), root.factor(k, x.len() - k));
                    if x[k] == 1 && x[k + 1] == 0 {
                        assert!(
                            y.slope().unwrap() < rest.slope().unwrap(),
                            "{root:?} at {k}"
                        );
                    }
                    if x[k] == 0 && x[k + 1] == 1 {
                        assert!(
                            y.slope().unwrap() > rest.slope().unwrap(),
                            "{root:?} at {k}"
                        );
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn params() -> impl Strategy<Value = Params> {
        (1u32..=4, 0u32..=3).prop_map(|(a, b)| Params::new(a, b).unwrap())
    }

    fn block_word(q: Params, blocks: &[bool]) -> Vec<u8> {
        let roots = MinimalRoots::new(q);
        blocks
            .iter()
            .flat_map(|&six| roots.root(if six { 6 } else { 5 }).iter().copied())
            .collect()
    }

    proptest! {
        #[test]
        fn language_is_factor_closed(
            q in params(),
            blocks in proptest::collection::vec(any::<bool>(), 1..8),
            cut in (0usize..100, 0usize..100, 0usize..100, 0usize..100),
        ) {
            let word = block_word(q, &blocks);
            let start = cut.0 % word.len();
            let end = start + cut.1 % (word.len() - start + 1);
            let member = &word[start..end];
            prop_assert!(in_language_letters(member, q, false));
            let inner_start = start + cut.2 % (end - start + 1);
            let inner_end = inner_start + cut.3 % (end - inner_start + 1);
            prop_assert!(in_language_letters(&word[inner_start..inner_end], q, false));
        }

        #[test]
        fn sqrt_is_multiplicative(
            q in params(),
            blocks in proptest::collection::vec(any::<bool>(), 2..10),
            split in 0usize..1000,
            offset in 0usize..1000,
        ) {
            // Take a factor of a block word, trim to complete squares, and split
            // at a square boundary.
            let word = block_word(q, &blocks);
            let roots = MinimalRoots::new(q);
            let start = offset % word.len();
            let (indices, covered) = roots.parse_prefix(&word[start..]);
            prop_assume!(indices.len() >= 2);
            let k = 1 + split % (indices.len() - 1);
            let left_len: usize = indices[..k].iter().map(|&i| roots.square(i).len()).sum();
            let uv = BinaryWord::from_trusted(word[start..start + covered].to_vec());
            let u = uv.prefix(left_len);
            let v = uv.factor(left_len, covered - left_len);
            prop_assert!(in_pi(&u, q) && in_pi(&v, q) && in_pi(&uv, q));
            prop_assert_eq!(
                sqrt_word(&uv, q).unwrap(),
                sqrt_word(&u, q).unwrap().concat(&sqrt_word(&v, q).unwrap())
            );
        }
    }
}
