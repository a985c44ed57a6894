//! Counting solutions by length: arithmetic helpers, orbit counts of the
//! doubling map, the closed-form count, and a brute-force oracle.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::solutions::{self, ParamBounds};
use crate::word::BinaryWord;

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Number of distinct divisors of `k`.
pub fn divisor_count_sigma(k: u64) -> u64 {
    divisors(k).len() as u64
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Least e ≥ 1 with 2^e ≡ 1 (mod d), and 1 for d = 1.
pub fn mult_order_2(d: u64) -> Result<u64> {
    if d.is_even() {
        return Err(Error::NotCoprime(d));
    }
    if d == 1 {
        return Ok(1);
    }
    let mut x = 2 % d;
    let mut e = 1;
    while x != 1 {
        x = (x * 2) % d;
        e += 1;
    }
    Ok(e)
}

/// 𝒪(ℓ), the number of orbits of x ↦ 2x mod ℓ, as Σ_{d | ℓ'} φ(d) / ord(2, d)
/// where ℓ' is the odd part of ℓ.
pub fn orbit_count(l: u64) -> u64 {
    assert!(l >= 1, "orbit_count needs l >= 1");
    let odd = l >> l.trailing_zeros();
    let count = divisors(odd)
        .into_iter()
        .map(|d| euler_phi(d) / mult_order_2(d).expect("divisor of an odd number is odd"))
        .sum();
    debug_assert!(l > 4096 || count == orbit_count_direct(l));
    count
}

/// 𝒪(ℓ) by building the orbit partition explicitly.
pub fn orbit_count_direct(l: u64) -> u64 {
    solutions::doubling_orbits(l as usize).len() as u64
}

/// ℋ(n, d) = (2^{𝒪(n/d) − 1} − 1)(φ(d)/2 − σ(d − 1) + 1) for d | n, d > 2.
pub fn h_term(n: u64, d: u64) -> Result<u128> {
    if d <= 2 || !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { n, d });
    }
    let exponent = orbit_count(n / d) - 1;
    let first = 1u128
        .checked_shl(u32::try_from(exponent).map_err(|_| Error::Overflow(n))?)
        .ok_or(Error::Overflow(n))?
        - 1;
    let second = i128::from(euler_phi(d) / 2) - i128::from(divisor_count_sigma(d - 1)) + 1;
    // Negative only together with a vanishing first factor.
    if first == 0 {
        return Ok(0);
    }
    let second = u128::try_from(second)
        .map_err(|_| Error::PreconditionFailed(format!("negative second factor of H({n}, {d})")))?;
    first.checked_mul(second).ok_or(Error::Overflow(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: u64,
    pub formula_count: u128,
    pub brute_count: Option<u128>,
    /// ℋ(n, d) for every divisor d > 2 of n.
    pub per_divisor: BTreeMap<u64, u128>,
}

impl CountReport {
    /// Attaches an oracle count computed elsewhere.
    pub fn with_brute_count(mut self, brute: u128) -> Self {
        self.brute_count = Some(brute);
        self
    }

    pub fn agrees(&self) -> Option<bool> {
        self.brute_count.map(|b| b == self.formula_count)
    }
}

/// ⌊n/2⌋ + 1 + Σ_{d | n, d > 2} ℋ(n, d).
pub fn count_solutions(n: u64) -> Result<CountReport> {
    if n == 0 {
        return Err(Error::PreconditionFailed("n must be at least 1".into()));
    }
    let mut per_divisor = BTreeMap::new();
    let mut total = u128::from(n / 2 + 1);
    for d in divisors(n).into_iter().filter(|&d| d > 2) {
        let h = h_term(n, d)?;
        per_divisor.insert(d, h);
        total = total.checked_add(h).ok_or(Error::Overflow(n))?;
    }
    Ok(CountReport {
        n,
        formula_count: total,
        brute_count: None,
        per_divisor,
    })
}

/// Every word of length `n` that starts with 0, avoids 11, and is a
/// solution for some parameters within `bounds`, in lexicographic order.
/// `None` uses [`ParamBounds::for_len`].
pub fn brute_force_solutions(n: usize, bounds: Option<ParamBounds>) -> Vec<BinaryWord> {
    if n == 0 {
        return Vec::new();
    }
    let bounds = bounds.unwrap_or_else(|| ParamBounds::for_len(n));
    let split = n.min(12);
    let mut prefixes = Vec::new();
    extend_11_free(&mut vec![0], split, &mut |p| prefixes.push(p.to_vec()));

    let mut found: Vec<BinaryWord> = prefixes
        .into_par_iter()
        .flat_map_iter(|prefix| {
            let mut local = Vec::new();
            let mut word = prefix;
            extend_11_free(&mut word, n, &mut |w| {
                if !solutions::find_params_letters(w, bounds).is_empty() {
                    local.push(BinaryWord::from_trusted(w.to_vec()));
                }
            });
            local
        })
        .collect();
    found.sort_unstable();
    found
}

/// Calls `visit` on every 11-free extension of `word` to length `n`.
fn extend_11_free(word: &mut Vec<u8>, n: usize, visit: &mut dyn FnMut(&[u8])) {
    if word.len() == n {
        visit(word);
        return;
    }
    for letter in [0, 1] {
        if letter == 1 && word.last() == Some(&1) {
            continue;
        }
        word.push(letter);
        extend_11_free(word, n, visit);
        word.pop();
    }
}
