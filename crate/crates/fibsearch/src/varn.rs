//! Alphabetic prefix codes over letters of unequal cost.
//!
//! `n` equiprobable words are coded over an `h`-letter alphabet where letter
//! `i` costs `w_i`. Codewords are exactly the outcome sequences of the
//! full-mode search descending to each word index, so the code inherits the
//! search tree's guarantees: it is prefix-free, alphabetic (codeword order
//! matches word order), its maximum cost meets the lower bound for `n`
//! words, and its total cost is minimal. Any single codeword is generated in
//! logarithmic time without materializing the table, which matters when the
//! word domain is huge and only a few words are ever encoded.

use thiserror::Error;

use crate::search::{fib_search, IndexProbe, Mode, Searcher};
use crate::weights::Weights;

/// Explicit code tables refuse to grow beyond this many words.
pub const TABLE_LIMIT: u64 = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VarnError {
    #[error("word index {index} out of range for {n} words")]
    IndexOutOfRange { index: u64, n: u64 },
    #[error("a table of {n} words exceeds the limit of {limit}")]
    TableTooLarge { n: u64, limit: u64 },
    #[error("letter sequence is a proper prefix of a codeword (exhausted after {consumed} letters)")]
    PrefixOfCodeword { consumed: usize },
    #[error("invalid letter {letter} at position {position}: no codeword continues this way")]
    InvalidLetter { position: usize, letter: usize },
    #[error("trailing letters after a complete codeword at position {position}")]
    TrailingLetters { position: usize },
    #[error("a code needs at least one word")]
    NoWords,
}

/// One codeword: its letter indices and total canonical cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub letters: Vec<usize>,
    pub cost: u64,
}

/// Encodes word `index` of an `n`-word code. Logarithmic in `n`.
pub fn encode(n: u64, weights: &Weights, index: u64) -> Result<Codeword, VarnError> {
    if n == 0 {
        return Err(VarnError::NoWords);
    }
    if index >= n {
        return Err(VarnError::IndexOutOfRange { index, n });
    }
    let trace = fib_search(n, weights, &mut IndexProbe { target: index }, Mode::Full)
        .expect("index probes are always consistent");
    Ok(Codeword {
        letters: trace.outcomes(),
        cost: trace.total_cost,
    })
}

fn encode_with(searcher: &mut Searcher, n: u64, index: u64) -> Codeword {
    let trace = searcher
        .search(n, &mut IndexProbe { target: index }, Mode::Full)
        .expect("index probes are always consistent");
    Codeword {
        letters: trace.outcomes(),
        cost: trace.total_cost,
    }
}

/// Decodes a letter sequence back to its word index, rejecting sequences
/// that are proper prefixes of codewords, diverge from the code tree, or
/// continue past a complete codeword.
pub fn decode(n: u64, weights: &Weights, letters: &[usize]) -> Result<u64, VarnError> {
    if n == 0 {
        return Err(VarnError::NoWords);
    }
    let h = weights.arity();
    let w = weights.values().to_vec();
    let mut searcher = Searcher::new(weights.clone());
    let mut budget = searcher.prepare(n, Mode::Full);
    let mut left = 0u64;
    let mut right = n - 1;
    let mut position = 0usize;
    while left < right {
        let parts = searcher.split_for(Mode::Full, budget, right - left + 1);
        let occupied: Vec<usize> = (0..h).filter(|&i| parts[i] > 0).collect();
        if let [only] = occupied[..] {
            budget -= w[only];
            continue;
        }
        let Some(&letter) = letters.get(position) else {
            return Err(VarnError::PrefixOfCodeword { consumed: position });
        };
        if letter >= h || parts[letter] == 0 {
            return Err(VarnError::InvalidLetter { position, letter });
        }
        let new_left = left + parts[..letter].iter().sum::<u64>();
        right = new_left + parts[letter] - 1;
        left = new_left;
        budget -= w[letter];
        position += 1;
    }
    if position < letters.len() {
        return Err(VarnError::TrailingLetters { position });
    }
    Ok(left)
}

/// The full code table in word order.
pub fn code_table(n: u64, weights: &Weights) -> Result<Vec<Codeword>, VarnError> {
    if n == 0 {
        return Err(VarnError::NoWords);
    }
    if n > TABLE_LIMIT {
        return Err(VarnError::TableTooLarge {
            n,
            limit: TABLE_LIMIT,
        });
    }
    let mut searcher = Searcher::new(weights.clone());
    Ok((0..n).map(|j| encode_with(&mut searcher, n, j)).collect())
}
