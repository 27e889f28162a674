//! Prefix codes over letters of unequal cost for equally likely words.
//!
//! Think of a channel where a short pulse costs 1 unit of air time and a
//! long pulse costs 2: the cheapest way to give n words distinct,
//! order-preserving codewords is exactly the search tree for n items, and
//! single codewords can be generated without ever building the table.
//!
//! Run with: cargo run --example varn_code_table

use fibsearch::varn::{code_table, decode, encode};
use fibsearch::Weights;

fn main() {
    let weights = Weights::from_integers(&[1, 2]).unwrap();

    // the full table for 8 words: alphabetic and prefix-free
    println!("word  letters  cost");
    let table = code_table(8, &weights).expect("within table limit");
    for (word, code) in table.iter().enumerate() {
        let letters: String = code
            .letters
            .iter()
            .map(|&l| if l == 0 { '.' } else { '-' })
            .collect();
        println!("{word:>4}  {letters:<7}  {:>4}", code.cost);
    }
    let worst = table.iter().map(|c| c.cost).max().unwrap();
    let total: u64 = table.iter().map(|c| c.cost).sum();
    println!("worst codeword cost {worst}, total {total}\n");

    // the same works for a domain too large to tabulate: one word of a
    // billion-word code, in logarithmic time
    let n = 1_000_000_000u64;
    let word = 123_456_789u64;
    let code = encode(n, &weights, word).expect("index in range");
    println!("word {word} of {n}: {} letters, cost {}", code.letters.len(), code.cost);
    let back = decode(n, &weights, &code.letters).expect("valid codeword");
    assert_eq!(back, word);
    println!("decodes back to {back}");

    // three letters with costs (1,2,2): a wider alphabet, same guarantees
    let wide = Weights::from_integers(&[1, 2, 2]).unwrap();
    let table = code_table(5, &wide).expect("within table limit");
    println!("\nternary alphabet, 5 words:");
    for (word, code) in table.iter().enumerate() {
        let letters: String = code.letters.iter().map(|l| l.to_string()).collect();
        println!("{word:>4}  {letters:<7}  cost {}", code.cost);
    }
}
