use super::{Sentence, Token};
use crate::corpus::Span;

/// Groups tokens into sentences.
///
/// A sentence ends after a `.`, `!` or `?` token that is followed by a
/// newline, by whitespace and an uppercase letter or digit, or by the end of
/// the text. Blank lines always end a sentence, and so does a newline after a
/// trailing colon (section headers).
pub fn split_sentences(text: &str, tokens: &[Token]) -> Vec<Sentence> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..tokens.len() {
        let tok = &tokens[i];
        let boundary = match tokens.get(i + 1) {
            None => true,
            Some(next) => {
                let gap: String = chars[tok.span.end..next.span.start].iter().collect();
                let newlines = gap.matches('\n').count();
                let terminal = matches!(tok.text.as_str(), "." | "!" | "?");
                let first = next.text.chars().next().unwrap_or(' ');
                newlines >= 2
                    || (newlines >= 1 && (terminal || tok.text == ":"))
                    || (terminal && !gap.is_empty() && (first.is_uppercase() || first.is_ascii_digit()))
            }
        };
        if boundary {
            out.push(Sentence {
                span: Span::new(tokens[start].span.start, tok.span.end),
                tokens: start..i + 1,
            });
            start = i + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preproc::tokenize;

    fn split(s: &str) -> Vec<Sentence> {
        split_sentences(s, &tokenize(s))
    }

    #[test]
    fn two_lines() {
        assert_eq!(split("Pain resolved.\nPatient discharged.").len(), 2);
    }

    #[test]
    fn abbreviation_does_not_split() {
        assert_eq!(split("Dr. Smith noted pain.").len(), 1);
    }

    #[test]
    fn empty() {
        assert!(split("").is_empty());
        assert!(split("   \n ").is_empty());
    }

    #[test]
    fn lowercase_continuation_stays() {
        assert_eq!(split("Given 5 mg. then stopped.").len(), 1);
        assert_eq!(split("Given 5 mg. Then stopped.").len(), 2);
    }

    #[test]
    fn header_line_splits() {
        let s = split("HOSPITAL COURSE:\nThe patient improved.");
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].tokens, 3..7);
    }
}
