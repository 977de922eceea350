use std::sync::OnceLock;

use rust_stemmers::{Algorithm, Stemmer};

/// Lowercased English Snowball stem, iterated until stable so that
/// `stem(stem(w)) == stem(w)` always holds.
pub fn stem(word: &str) -> String {
    static STEMMER: OnceLock<Stemmer> = OnceLock::new();
    let stemmer = STEMMER.get_or_init(|| Stemmer::create(Algorithm::English));
    let mut cur = word.to_lowercase();
    if !cur.chars().any(char::is_alphabetic) {
        return cur;
    }
    for _ in 0..8 {
        let next = stemmer.stem(&cur).into_owned();
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}
