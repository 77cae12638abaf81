use super::SourceSpan;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Arrow,
    Colon,
    Equals,
    Ge,
    Le,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("name '{s}'"),
            Tok::Int(i) => format!("integer {i}"),
            Tok::Eof => "end of input".to_string(),
            other => other.symbol().to_string(),
        }
    }

    /// Quoted spelling of a punctuation token.
    pub fn symbol(&self) -> &'static str {
        match self {
            Tok::Arrow => "'->'",
            Tok::Colon => "':'",
            Tok::Equals => "'='",
            Tok::Ge => "'>='",
            Tok::Le => "'<='",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::Comma => "','",
            Tok::Ident(_) => "name",
            Tok::Int(_) => "integer",
            Tok::Eof => "end of input",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub span: SourceSpan,
    pub message: String,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Splits source text into tokens. Comments run from `#` to the end of
/// the line. Columns count characters from 1; spans end exclusively.
pub fn lex(file: &str, src: &str) -> (Vec<Token>, Vec<LexError>) {
    let mut tokens = Vec::new();
    let mut errors = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let span = |a: usize, b: usize| SourceSpan { file: file.to_string(), line: li + 1, start: a + 1, end: b + 1 };
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            let two = chars.get(i + 1).copied();
            let tok = match (c, two) {
                ('-', Some('>')) => {
                    i += 2;
                    Tok::Arrow
                }
                ('>', Some('=')) => {
                    i += 2;
                    Tok::Ge
                }
                ('<', Some('=')) => {
                    i += 2;
                    Tok::Le
                }
                ('-', Some(d)) if d.is_ascii_digit() => {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    number(&chars[start..i], span(start, i), &mut errors)
                }
                (d, _) if d.is_ascii_digit() => {
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    number(&chars[start..i], span(start, i), &mut errors)
                }
                (c, _) if ident_start(c) => {
                    i += 1;
                    loop {
                        while i < chars.len() && ident_char(chars[i]) {
                            i += 1;
                        }
                        if i + 1 < chars.len() && chars[i] == '.' && ident_start(chars[i + 1]) {
                            i += 1;
                        } else {
                            break;
                        }
                    }
                    Tok::Ident(chars[start..i].iter().collect())
                }
                (':', _) | ('=', _) | ('(', _) | (')', _) | (',', _) => {
                    i += 1;
                    match c {
                        ':' => Tok::Colon,
                        '=' => Tok::Equals,
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        _ => Tok::Comma,
                    }
                }
                _ => {
                    i += 1;
                    errors.push(LexError { span: span(start, i), message: format!("unexpected character '{c}'") });
                    continue;
                }
            };
            tokens.push(Token { tok, span: span(start, i) });
        }
    }
    let (last, col) = if src.is_empty() || src.ends_with('\n') {
        (src.lines().count() + 1, 1)
    } else {
        (src.lines().count(), src.lines().last().map_or(0, |l| l.chars().count()) + 1)
    };
    tokens.push(Token { tok: Tok::Eof, span: SourceSpan { file: file.to_string(), line: last, start: col, end: col } });
    (tokens, errors)
}

fn number(digits: &[char], span: SourceSpan, errors: &mut Vec<LexError>) -> Tok {
    let text: String = digits.iter().collect();
    match text.parse() {
        Ok(n) => Tok::Int(n),
        Err(_) => {
            errors.push(LexError { span, message: format!("integer {text} out of range") });
            Tok::Int(0)
        }
    }
}
