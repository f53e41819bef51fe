//! Repetitiveness measures and the parsing algorithms behind them: suffix
//! structures, Lempel-Ziv and lexicographic parses, bidirectional schemes,
//! run-length grammars and internal collage systems, plus brute-force
//! oracles for small inputs.
//!
//! Positions and ranks are 0-based throughout. Every [`Text`] ends with the
//! sentinel byte `0`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod collage;
pub mod error;
pub mod grammar;
pub mod oracle;
pub mod parse;
pub mod rmq;
mod rules;
mod sais;
pub mod scheme;
pub mod suffix;
pub mod text;

pub use collage::{collage_to_scheme, lz_to_collage, CollageSystem};
pub use error::{Error, Result};
pub use grammar::{
    build_rlslp, build_rlslp_traced, grammar_to_parse, lcp_round, lcp_round_with_partition, Rlslp,
};
pub use oracle::{
    min_ordered_parse, naive_suffix_structures, smallest_bidirectional, smallest_rotation,
    SearchBudget,
};
pub use parse::{greedy_naive, greedy_ordered, lex_parse, lz_parse, Method, ParseResult};
pub use rmq::RmqIndex;
pub use rules::{Rule, RuleSink};
pub use sais::suffix_array;
pub use scheme::{
    bwt_scheme, check_ordered, decode, f_map, lemma_bms_scheme, scheme_to_order, validate,
    validate_with_order, Phrase, Scheme, ValidationReport, Violation,
};
pub use suffix::SuffixContext;
pub use text::{
    de_bruijn, fibonacci_number, fibonacci_word, lemma35_text, Family, FamilySpec, FibVariant,
    Text, DEFAULT_BUDGET, FIB_A, FIB_B, MAX_TEXT_LEN, SENTINEL,
};
