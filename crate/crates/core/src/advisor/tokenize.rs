#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Token<'t> {
    pub text: &'t str,
    /// Byte offsets; `&input[start..end] == text`.
    pub start: usize,
    pub end: usize,
}

/// Maximal runs of ASCII letters, joined across single apostrophes that sit
/// between two letters ("don't" is one token, "dogs'" is "dogs").
pub fn tokenize(text: &str) -> Vec<Token<'_>> {
    let b = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < b.len() {
        if !b[i].is_ascii_alphabetic() {
            i += 1;
            continue;
        }
        let start = i;
        loop {
            while i < b.len() && b[i].is_ascii_alphabetic() {
                i += 1;
            }
            if i + 1 < b.len() && b[i] == b'\'' && b[i + 1].is_ascii_alphabetic() {
                i += 1;
            } else {
                break;
            }
        }
        tokens.push(Token {
            text: &text[start..i],
            start,
            end: i,
        });
    }
    tokens
}
