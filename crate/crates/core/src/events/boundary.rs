use std::ops::Range;

use super::PostprocessConfig;
use crate::preproc::Token;

fn phrase(chunk: &str) -> &str {
    chunk.get(2..).unwrap_or("")
}

fn eligible(tok: &Token, cfg: &PostprocessConfig) -> bool {
    cfg.boundary_pos_tags.contains(&tok.pos) && cfg.boundary_chunk_tags.contains(phrase(&tok.chunk))
}

/// Grows a mention (token range) over neighbouring tokens of the same chunk
/// whose POS and chunk type are in the configured sets. Never crosses the
/// sentence range and never shrinks the mention.
pub fn boundary_adjust(
    mention: Range<usize>,
    tokens: &[Token],
    sentence: Range<usize>,
    cfg: &PostprocessConfig,
) -> Range<usize> {
    let (mut start, mut end) = (mention.start, mention.end);
    // a token continues its left neighbour's chunk when tagged I-
    while start > sentence.start
        && tokens[start].chunk.starts_with("I-")
        && eligible(&tokens[start - 1], cfg)
    {
        start -= 1;
    }
    while end < sentence.end && tokens[end].chunk.starts_with("I-") && eligible(&tokens[end], cfg) {
        end += 1;
    }
    start..end
}
