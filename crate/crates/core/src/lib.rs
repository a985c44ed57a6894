//! Binary words, the minimal squares S₁, …, S₆ of optimal squareful words,
//! and the solutions of X₁² ⋯ Xₙ² = (X₁ ⋯ Xₙ)² over them.

pub mod dynamics;
pub mod enumeration;
pub mod error;
pub mod solutions;
pub mod squares;
pub mod standard;
pub mod word;

pub use dynamics::{
    detect_period, find_periodic_shift, iterated_root_check, no_square_prefix_word,
    shifted_root_check, sl_fixed_point, sl_iterates, sqrt_prefix, square_prefixes,
    two_periodic_word, verify_fixed_point, IterationReport, PeriodReport, ShiftOutcome, ShiftScan,
    SqrtPrefix, SquareStream, StreamKind,
};
pub use enumeration::{
    brute_force_solutions, count_solutions, divisor_count_sigma, euler_phi, h_term, mult_order_2,
    orbit_count, orbit_count_direct, CountReport,
};
pub use error::{Error, Result};
pub use solutions::{
    classify, decompose_over_sl, doubling_orbits, find_params, find_params_unpruned,
    is_pattern_word, is_solution, substitute_pattern, Classification, ParamBounds, PatternWord,
    SlLetter, SlWord, Verdict,
};
pub use squares::{
    factor_minimal_squares, in_language, in_pi, minimal_square_roots, sqrt_word, MinimalRoots,
    Params, RootIndex, SquareFactorization,
};
pub use standard::{
    central_word, directive_of_standard, fibonacci_word, is_reversed_standard, natural_params,
    reversed_standard_info, standard_from_directive, standard_words_up_to, DirectiveSequence,
    StandardWordInfo,
};
pub use word::{
    are_conjugate, prefix_sum_word, scaled_sum, BinaryWord, PrefixSumWord, ScaledWeights, Slope,
};
