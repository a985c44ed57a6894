//! Standard words from directive sequences, central words, and recognition
//! of reversed standard words.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::squares::Params;
use crate::word::{BinaryWord, Slope};

/// A finite sequence (d₁, …, d_k) of positive integers.
///
/// The empty sequence designates the base word s₀ = 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct DirectiveSequence {
    terms: Vec<u32>,
}

impl DirectiveSequence {
    pub fn new(terms: Vec<u32>) -> Result<Self> {
        if terms.contains(&0) {
            return Err(Error::InvalidDirective);
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[u32] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for DirectiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// s₋₁ = 1, s₀ = 0, s₁ = s₀^{d₁−1} s₋₁, s_k = s_{k−1}^{d_k} s_{k−2}.
pub fn standard_from_directive(d: &DirectiveSequence) -> Result<BinaryWord> {
    if d.is_empty() {
        return Err(Error::EmptyDirective);
    }
    let mut prev2 = vec![1u8];
    let mut prev = vec![0u8];
    for (k, &dk) in d.terms.iter().enumerate() {
        let cur = if k == 0 {
            let mut s1 = vec![0u8; dk as usize - 1];
            s1.push(1);
            s1
        } else {
            let mut cur = prev.repeat(dk as usize);
            cur.extend_from_slice(&prev2);
            cur
        };
        prev2 = std::mem::replace(&mut prev, cur);
    }
    Ok(BinaryWord::from_trusted(prev))
}

/// The Fibonacci word s_k of the directive (2, 1, 1, …), for k ≥ −1.
pub fn fibonacci_word(k: i64) -> Result<BinaryWord> {
    match k {
        k if k < -1 => Err(Error::PreconditionFailed(format!(
            "Fibonacci index {k} is below -1"
        ))),
        -1 => Ok(BinaryWord::run(1, 1)),
        0 => Ok(BinaryWord::run(0, 1)),
        k => {
            let mut terms = vec![1; k as usize];
            terms[0] = 2;
            standard_from_directive(&DirectiveSequence { terms })
        }
    }
}

/// The central word of slope c/d: a_j = ⌊c(j+1)/d⌋ − ⌊cj/d⌋ for j = 1, …, d − 2.
pub fn central_word(c: u64, d: u64) -> Result<BinaryWord> {
    if d < 2 || c == 0 || c >= d || c.gcd(&d) != 1 {
        return Err(Error::InvalidSlope { c, d });
    }
    Ok(central_letters(c, d))
}

fn central_letters(c: u64, d: u64) -> BinaryWord {
    let (c, d) = (u128::from(c), u128::from(d));
    let letters = (1..d - 1)
        .map(|j| (c * (j + 1) / d - c * j / d) as u8)
        .collect();
    BinaryWord::from_trusted(letters)
}

/// Recognition witness for a reversed standard word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardWordInfo {
    pub word: BinaryWord,
    /// The central word u with `word ∈ {01u, 10u}`; empty when |word| = 1.
    pub central: BinaryWord,
    pub slope: Slope,
}

/// Recognizes reversed standard words through the central-word formula.
pub fn reversed_standard_info(w: &BinaryWord) -> Result<Option<StandardWordInfo>> {
    let slope = w.slope()?;
    if w.len() == 1 {
        return Ok(Some(StandardWordInfo {
            word: w.clone(),
            central: BinaryWord::empty(),
            slope,
        }));
    }
    // Reduced slope with an unchanged denominator means gcd(|w|, |w|₁) = 1.
    if slope.denominator() != w.len() as u64 || slope.numerator() == 0 {
        return Ok(None);
    }
    let central = central_letters(slope.numerator(), slope.denominator());
    let letters = w.letters();
    let matches =
        (letters[..2] == [0, 1] || letters[..2] == [1, 0]) && letters[2..] == *central.letters();
    Ok(matches.then(|| StandardWordInfo {
        word: w.clone(),
        central,
        slope,
    }))
}

pub fn is_reversed_standard(w: &BinaryWord) -> Result<bool> {
    Ok(reversed_standard_info(w)?.is_some())
}

/// The directive that generates the standard word `w`.
///
/// Every standard word other than `0` has exactly one directive under this
/// recursion; `0` maps to the empty sequence (s₀). Words starting with `1`
/// necessarily have d₁ = 1.
pub fn directive_of_standard(w: &BinaryWord) -> Result<DirectiveSequence> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let letters = w.letters();
    if letters == [0] {
        return Ok(DirectiveSequence::default());
    }
    let leading = letters.iter().take_while(|&&l| l == 0).count();
    if leading == letters.len() {
        return Err(Error::NotStandard);
    }
    let s1 = &letters[..=leading];
    let mut terms = vec![leading as u32 + 1];
    if search_directive(letters, s1, &[0], &mut terms) {
        Ok(DirectiveSequence { terms })
    } else {
        Err(Error::NotStandard)
    }
}

fn search_directive(target: &[u8], prev: &[u8], prev2: &[u8], terms: &mut Vec<u32>) -> bool {
    if prev.len() == target.len() {
        return prev == target;
    }
    let mut d = 1;
    loop {
        let len = d * prev.len() + prev2.len();
        if len > target.len() {
            return false;
        }
        // prev^d must already be a prefix of the target.
        if target[(d - 1) * prev.len()..d * prev.len()] != *prev {
            return false;
        }
        if target[d * prev.len()..len] == *prev2 {
            terms.push(d as u32);
            if search_directive(target, &target[..len], prev, terms) {
                return true;
            }
            terms.pop();
        }
        d += 1;
    }
}

/// The parameters (a, b) = (d₁ − 1, d₂ − 1) of a reversed standard word
/// `s` that avoids the factor 11.
pub fn natural_params(s: &BinaryWord) -> Result<Params> {
    if !is_reversed_standard(s)? {
        return Err(Error::NotStandard);
    }
    let directive = directive_of_standard(&s.reversed())?;
    match directive.terms() {
        [d1, d2, ..] if *d1 >= 2 => Params::new(d1 - 1, d2 - 1),
        _ => Err(Error::PreconditionFailed(format!(
            "{s} has directive {directive}; natural parameters need d1 >= 2 and at least two terms"
        ))),
    }
}

/// All standard words of length at most `max_len` generated by nonempty
/// directives, in generation order.
pub fn standard_words_up_to(max_len: usize) -> Vec<(DirectiveSequence, BinaryWord)> {
    fn extend(
        max_len: usize,
        terms: &mut Vec<u32>,
        prev: &[u8],
        prev2: &[u8],
        out: &mut Vec<(DirectiveSequence, BinaryWord)>,
    ) {
        for d in 1.. {
            let mut cur = prev.repeat(d);
            cur.extend_from_slice(prev2);
            if cur.len() > max_len {
                break;
            }
            terms.push(d as u32);
            out.push((
                DirectiveSequence {
                    terms: terms.clone(),
                },
                BinaryWord::from_trusted(cur.clone()),
            ));
            extend(max_len, terms, &cur, prev, out);
            terms.pop();
        }
    }

    let mut out = Vec::new();
    for d1 in 1..=max_len {
        let mut s1 = vec![0u8; d1 - 1];
        s1.push(1);
        let mut terms = vec![d1 as u32];
        out.push((
            DirectiveSequence {
                terms: terms.clone(),
            },
            BinaryWord::from_trusted(s1.clone()),
        ));
        extend(max_len, &mut terms, &s1, &[0], &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn dir(terms: &[u32]) -> DirectiveSequence {
        DirectiveSequence::new(terms.to_vec()).unwrap()
    }

    #[test]
    fn directive_examples() {
        assert_eq!(
            standard_from_directive(&dir(&[2, 1, 1, 1])).unwrap(),
            w("01001010")
        );
        assert_eq!(w("01001010").reversed(), w("01010010"));
        // (a + 1, b + 1) = (2, 1): s2 = (0^a 1)^(b+1) 0.
        assert_eq!(standard_from_directive(&dir(&[2, 1])).unwrap(), w("010"));
        assert_eq!(
            standard_from_directive(&dir(&[3, 2])).unwrap(),
            w("0010010")
        );
        assert_eq!(standard_from_directive(&dir(&[2])).unwrap(), w("01"));
        assert_eq!(standard_from_directive(&dir(&[1])).unwrap(), w("1"));
        assert_eq!(
            standard_from_directive(&DirectiveSequence::default()),
            Err(Error::EmptyDirective)
        );
        assert_eq!(
            DirectiveSequence::new(vec![2, 0]),
            Err(Error::InvalidDirective)
        );
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci_word(4).unwrap(), w("01001010"));
        assert_eq!(fibonacci_word(0).unwrap(), w("0"));
        assert_eq!(fibonacci_word(-1).unwrap(), w("1"));
        assert_eq!(fibonacci_word(1).unwrap(), w("01"));
        assert!(fibonacci_word(-2).is_err());
        let lens: Vec<usize> = (1..10).map(|k| fibonacci_word(k).unwrap().len()).collect();
        assert_eq!(lens, vec![2, 3, 5, 8, 13, 21, 34, 55, 89]);
    }

    #[test]
    fn central_examples() {
        assert_eq!(central_word(3, 8).unwrap(), w("010010"));
        assert_eq!(central_word(1, 2).unwrap(), BinaryWord::empty());
        assert_eq!(central_word(1, 3).unwrap(), w("0"));
        assert_eq!(central_word(2, 4), Err(Error::InvalidSlope { c: 2, d: 4 }));
        assert_eq!(central_word(0, 1), Err(Error::InvalidSlope { c: 0, d: 1 }));
        assert_eq!(central_word(5, 3), Err(Error::InvalidSlope { c: 5, d: 3 }));
    }

    #[test]
    fn recognition_examples() {
        assert!(is_reversed_standard(&w("01010010")).unwrap());
        assert!(!is_reversed_standard(&w("00")).unwrap());
        assert!(is_reversed_standard(&w("10010")).unwrap());
        assert!(is_reversed_standard(&w("0")).unwrap());
        assert!(is_reversed_standard(&w("1")).unwrap());
        assert!(!is_reversed_standard(&w("0110")).unwrap());
        assert!(is_reversed_standard(&w("10010010")).unwrap());
        assert_eq!(
            is_reversed_standard(&BinaryWord::empty()),
            Err(Error::EmptyWord)
        );
        let info = reversed_standard_info(&w("01010010")).unwrap().unwrap();
        assert_eq!(info.central, w("010010"));
        assert_eq!(info.slope.to_string(), "3/8");
    }

    #[test]
    fn directive_inversion_examples() {
        assert_eq!(
            directive_of_standard(&w("01001010")).unwrap(),
            dir(&[2, 1, 1, 1])
        );
        assert!(directive_of_standard(&w("0")).unwrap().is_empty());
        assert_eq!(directive_of_standard(&w("010")).unwrap(), dir(&[2, 1]));
        assert_eq!(directive_of_standard(&w("1")).unwrap(), dir(&[1]));
        assert_eq!(directive_of_standard(&w("10")).unwrap(), dir(&[1, 1]));
        assert_eq!(directive_of_standard(&w("0110")), Err(Error::NotStandard));
        assert_eq!(directive_of_standard(&w("000")), Err(Error::NotStandard));
    }

    #[test]
    fn natural_params_of_roots() {
        assert_eq!(
            natural_params(&w("01010010")).unwrap(),
            Params::new(1, 0).unwrap()
        );
        // Reversal of the standard word with directive (3, 2, 1, 1).
        let s = standard_from_directive(&dir(&[3, 2, 1, 1]))
            .unwrap()
            .reversed();
        assert_eq!(natural_params(&s).unwrap(), Params::new(2, 1).unwrap());
        assert!(matches!(
            natural_params(&w("100")),
            Err(Error::PreconditionFailed(_))
        ));
        assert_eq!(natural_params(&w("0110")), Err(Error::NotStandard));
    }

    #[test]
    fn generated_words_have_coprime_length_and_ones() {
        for (_, word) in standard_words_up_to(60) {
            assert_eq!(word.len().gcd(&word.ones()), 1, "{word:?}");
            assert!(word.is_primitive().unwrap());
        }
    }

    #[test]
    fn central_words_are_palindromes() {
        for d in 2..=200u64 {
            for c in 1..d {
                if c.gcd(&d) == 1 {
                    let u = central_word(c, d).unwrap();
                    assert_eq!(u.reversed(), u, "c={c} d={d}");
                    assert_eq!(u.len() as u64, d - 2);
                }
            }
        }
    }

    #[test]
    fn generator_and_recognizer_agree() {
        const N: usize = 30;
        let mut generated: BTreeSet<BinaryWord> = standard_words_up_to(N)
            .into_iter()
            .map(|(_, w)| w.reversed())
            .collect();
        generated.insert(w("0"));

        let mut recognized = BTreeSet::new();
        for len in 1..=N {
            for bits in 0u64..(1 << len) {
                let word =
                    BinaryWord::from_trusted((0..len).map(|i| ((bits >> i) & 1) as u8).collect());
                if is_reversed_standard(&word).unwrap() {
                    recognized.insert(word);
                }
            }
            if len >= 20 {
                break;
            }
        }
        let generated_short: BTreeSet<_> = generated
            .iter()
            .filter(|w| w.len() <= 20)
            .cloned()
            .collect();
        assert_eq!(generated_short, recognized);

        // Beyond the exhaustive range: the recognizer admits at most two words
        // per coprime numerator, so 2φ(n) generated words that it accepts
        // are all of them.
        for len in 2..=N {
            let count = generated.iter().filter(|w| w.len() == len).count();
            let phi = (1..len).filter(|c| c.gcd(&len) == 1).count();
            assert_eq!(count, 2 * phi, "length {len}");
        }
        for word in &generated {
            assert!(is_reversed_standard(word).unwrap());
        }
    }

    #[test]
    fn directive_inversion_round_trips() {
        for (d, word) in standard_words_up_to(40) {
            assert_eq!(directive_of_standard(&word).unwrap(), d);
        }
    }
}
