use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element label.
///
/// User-supplied labels are atoms. Constructions build structured labels so
/// that every derived element carries its provenance: pullback elements are
/// pairs, exponential elements are value tuples, and pushout classes are
/// tagged with the side (1 or 2) of their least member.
///
/// The textual form is `atom`, `(l,r)`, `[a,b,c]` and `1:l`; it parses back
/// to the same structure.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Label {
    Atom(Arc<str>),
    Pair(Arc<(Label, Label)>),
    Tuple(Arc<[Label]>),
    Tag(u8, Arc<Label>),
}

const RESERVED: &[char] = &['(', ')', '[', ']', ',', ':'];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid label {text:?}: {reason}")]
pub struct LabelError {
    pub text: String,
    pub reason: &'static str,
}

impl Label {
    /// Builds an atom, rejecting empty text, whitespace and the reserved
    /// punctuation `()[],:`.
    pub fn atom(text: &str) -> Result<Label, LabelError> {
        if text.is_empty() {
            return Err(LabelError { text: text.into(), reason: "empty atom" });
        }
        if text.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
            return Err(LabelError { text: text.into(), reason: "atoms may not contain whitespace or ()[],:" });
        }
        Ok(Label::Atom(text.into()))
    }

    pub(crate) fn index(i: usize) -> Label {
        Label::Atom(i.to_string().into())
    }

    pub fn pair(a: Label, b: Label) -> Label {
        Label::Pair(Arc::new((a, b)))
    }

    pub fn tuple(items: Vec<Label>) -> Label {
        Label::Tuple(items.into())
    }

    pub fn tag(side: u8, inner: Label) -> Label {
        Label::Tag(side, Arc::new(inner))
    }

    pub fn parse(text: &str) -> Result<Label, LabelError> {
        let mut p = LabelParser { src: text, pos: 0 };
        let label = p.label()?;
        if p.pos != text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(label)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => f.write_str(s),
            Label::Pair(p) => write!(f, "({},{})", p.0, p.1),
            Label::Tuple(items) => {
                f.write_str("[")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str("]")
            }
            Label::Tag(side, inner) => write!(f, "{side}:{inner}"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<&str> for Label {
    /// Panics on an invalid atom; intended for literals in tests and examples.
    fn from(text: &str) -> Label {
        Label::parse(text).expect("valid label literal")
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Label, D::Error> {
        let text = String::deserialize(deserializer)?;
        Label::parse(&text).map_err(serde::de::Error::custom)
    }
}

struct LabelParser<'a> {
    src: &'a str,
    pos: usize,
}

impl LabelParser<'_> {
    fn error(&self, reason: &'static str) -> LabelError {
        LabelError { text: self.src.to_string(), reason }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), LabelError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error("unexpected character"))
        }
    }

    fn label(&mut self) -> Result<Label, LabelError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let a = self.label()?;
                self.expect(',')?;
                let b = self.label()?;
                self.expect(')')?;
                Ok(Label::pair(a, b))
            }
            Some('[') => {
                self.pos += 1;
                let mut items = Vec::new();
                if self.peek() == Some(']') {
                    self.pos += 1;
                    return Ok(Label::tuple(items));
                }
                loop {
                    items.push(self.label()?);
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some(']') => {
                            self.pos += 1;
                            return Ok(Label::tuple(items));
                        }
                        _ => return Err(self.error("unterminated tuple")),
                    }
                }
            }
            _ => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || RESERVED.contains(&c) {
                        break;
                    }
                    self.pos += c.len_utf8();
                }
                let word = &self.src[start..self.pos];
                if word.is_empty() {
                    return Err(self.error("empty atom"));
                }
                if self.peek() == Some(':') {
                    let side: u8 = word.parse().map_err(|_| self.error("bad tag"))?;
                    self.pos += 1;
                    let inner = self.label()?;
                    return Ok(Label::tag(side, inner));
                }
                Ok(Label::Atom(word.into()))
            }
        }
    }
}
