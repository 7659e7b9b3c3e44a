//! The word text format.
//!
//! One word per line, letters as whitespace-separated tokens `+1 -1 +2 -2 ... *`
//! (the names `a a' b b' c c'` are accepted too). `#` starts a comment line.
//! Files holding several codes separate them by blank lines.

use crate::code::Code;
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

fn parse_token(tok: &str, line: usize, column: usize) -> Result<Letter> {
    let bad = |message: &str| Error::Parse {
        line,
        column,
        token: tok.to_string(),
        message: message.to_string(),
    };
    let value: i8 = match tok {
        "*" | "0" => 0,
        "a" => 1,
        "a'" => -1,
        "b" => 2,
        "b'" => -2,
        "c" => 3,
        "c'" => -3,
        _ => {
            let (sign, digits) = match tok.as_bytes().first() {
                Some(b'+') => (1, &tok[1..]),
                Some(b'-') => (-1, &tok[1..]),
                _ => return Err(bad("expected a signed letter or *")),
            };
            let k: i8 = digits.parse().map_err(|_| bad("expected a signed letter or *"))?;
            if k == 0 {
                return Err(bad("zero pair index"));
            }
            sign * k
        }
    };
    Letter::new(value).map_err(|_| bad("letter outside the supported alphabet"))
}

/// Parses a single word from one line of text.
pub fn parse_word(text: &str, line: usize) -> Result<Word> {
    let mut letters = Vec::new();
    let mut col = 0;
    let mut first_col = 1;
    for (idx, tok) in split_with_columns(text) {
        col = idx;
        if letters.is_empty() {
            first_col = idx;
        }
        letters.push(parse_token(tok, line, idx)?);
    }
    Word::new(&letters).map_err(|_| Error::Parse {
        line,
        column: if letters.is_empty() { 1 } else { first_col.max(col) },
        token: text.trim().to_string(),
        message: format!("word length {} outside 1..=8", letters.len()),
    })
}

fn split_with_columns(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out.into_iter()
}

/// Parses every blank-line separated block of a file into a code.
pub fn parse_codes(text: &str) -> Result<Vec<Code>> {
    let mut codes = Vec::new();
    let mut block: Vec<(usize, Word)> = Vec::new();
    let flush = |block: &mut Vec<(usize, Word)>, codes: &mut Vec<Code>| -> Result<()> {
        if block.is_empty() {
            return Ok(());
        }
        let (line0, w0) = block[0];
        let mut seen: Vec<Word> = Vec::with_capacity(block.len());
        for &(line, w) in block.iter() {
            if w.dim() != w0.dim() {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    token: w.to_string(),
                    message: format!("length {} differs from line {line0} ({})", w.dim(), w0.dim()),
                });
            }
            if seen.contains(&w) {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    token: w.to_string(),
                    message: "duplicate word".into(),
                });
            }
            seen.push(w);
        }
        codes.push(Code::new(seen)?);
        block.clear();
        Ok(())
    };
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim();
        if trimmed.starts_with('#') {
            continue;
        }
        if trimmed.is_empty() {
            flush(&mut block, &mut codes)?;
            continue;
        }
        block.push((line, parse_word(raw, line)?));
    }
    flush(&mut block, &mut codes)?;
    Ok(codes)
}

/// Parses a file that must hold exactly one code; blank lines are ignored.
pub fn parse_code(text: &str) -> Result<Code> {
    let joined: String = text
        .lines()
        .map(|l| if l.trim().is_empty() { "# blank" } else { l })
        .collect::<Vec<_>>()
        .join("\n");
    let mut codes = parse_codes(&joined)?;
    match codes.len() {
        0 => Err(Error::EmptyCode),
        _ => Ok(codes.remove(0)),
    }
}

pub fn format_code(code: &Code) -> String {
    code.to_string()
}

pub fn format_codes<'a>(codes: impl IntoIterator<Item = &'a Code>) -> String {
    codes
        .into_iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# example\n+1 +1 +1\n-1 -1 -1\n+2 +1 -1\n-1 +2 +1\n+1 -1 +2\n";
        let c = parse_code(text).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(parse_code(&format_code(&c)).unwrap(), c);
    }

    #[test]
    fn blocks() {
        let text = "+1 *\n-1 +2\n\n# second\n* +1\n";
        let cs = parse_codes(text).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[1].len(), 1);
        assert_eq!(parse_codes(&format_codes(&cs)).unwrap(), cs);
    }

    #[test]
    fn errors_carry_position() {
        match parse_code("+1 +1\n+1 +x\n") {
            Err(Error::Parse {
                line, column, token, ..
            }) => {
                assert_eq!((line, column), (2, 4));
                assert_eq!(token, "+x");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_code("+1 +1\n+1 +1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_code("# nothing\n"), Err(Error::EmptyCode)));
        assert!(matches!(parse_code("+4 +1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn names_accepted() {
        assert_eq!(
            parse_word("a b' *", 1).unwrap(),
            Word::parse_abc("ab'*").unwrap()
        );
    }
}
