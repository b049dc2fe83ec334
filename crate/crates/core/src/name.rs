//! Structured generator names.
//!
//! A name is an integer, a symbol, or a tagged node with children. Rendering
//! is `tag(child.child)`, so a tensor pair `(x, y)` prints as `(x.y)` and a
//! join cell prints as `J(x.y)`.

use std::fmt;
use std::sync::Arc;

use crate::error::AdcError;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GeneratorName {
    Int(u64),
    Sym(Arc<str>),
    Node(Arc<str>, Arc<[GeneratorName]>),
}

impl GeneratorName {
    pub fn int(i: u64) -> Self {
        GeneratorName::Int(i)
    }

    /// A symbol. Must be non-empty, built from `[A-Za-z0-9_+-]`, and not all digits.
    pub fn sym(s: &str) -> Self {
        debug_assert!(is_symbol(s), "invalid symbol {s:?}");
        GeneratorName::Sym(Arc::from(s))
    }

    pub fn node(tag: &str, children: Vec<GeneratorName>) -> Self {
        debug_assert!(tag.is_empty() || is_symbol(tag), "invalid tag {tag:?}");
        GeneratorName::Node(Arc::from(tag), Arc::from(children))
    }

    /// Untagged node `(a.b)`: tensor pairs, cube words, oriental subsets.
    pub fn pair(a: GeneratorName, b: GeneratorName) -> Self {
        Self::node("", vec![a, b])
    }

    pub fn tagged(tag: &str, inner: GeneratorName) -> Self {
        Self::node(tag, vec![inner])
    }

    pub fn tag(&self) -> Option<&str> {
        match self {
            GeneratorName::Node(t, _) => Some(t),
            _ => None,
        }
    }

    pub fn children(&self) -> &[GeneratorName] {
        match self {
            GeneratorName::Node(_, c) => c,
            _ => &[],
        }
    }

    pub fn as_int(&self) -> Option<u64> {
        match self {
            GeneratorName::Int(i) => Some(*i),
            _ => None,
        }
    }

    /// If this is `tag(x)` with a single child, return `x`.
    pub fn untag(&self, tag: &str) -> Option<&GeneratorName> {
        match self {
            GeneratorName::Node(t, c) if &**t == tag && c.len() == 1 => Some(&c[0]),
            _ => None,
        }
    }

    /// If this is an untagged pair `(a.b)`, return its halves.
    pub fn as_pair(&self) -> Option<(&GeneratorName, &GeneratorName)> {
        match self {
            GeneratorName::Node(t, c) if t.is_empty() && c.len() == 2 => Some((&c[0], &c[1])),
            _ => None,
        }
    }

    pub fn parse(text: &str) -> Result<GeneratorName, AdcError> {
        let mut p = NameParser { src: text.as_bytes(), pos: 0 };
        let name = p.name()?;
        if p.pos != p.src.len() {
            return Err(p.err("trailing characters"));
        }
        Ok(name)
    }
}

fn is_symbol_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'+' || c == b'-'
}

fn is_symbol(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(is_symbol_char) && !s.bytes().all(|c| c.is_ascii_digit())
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorName::Int(i) => write!(f, "{i}"),
            GeneratorName::Sym(s) => f.write_str(s),
            GeneratorName::Node(tag, children) => {
                f.write_str(tag)?;
                f.write_str("(")?;
                for (k, c) in children.iter().enumerate() {
                    if k > 0 {
                        f.write_str(".")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct NameParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl NameParser<'_> {
    fn err(&self, msg: &str) -> AdcError {
        AdcError::Parse {
            line: 1,
            column: self.pos + 1,
            message: format!("generator name: {msg}"),
        }
    }

    fn name(&mut self) -> Result<GeneratorName, AdcError> {
        let start = self.pos;
        while self.pos < self.src.len() && is_symbol_char(self.src[self.pos]) {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if self.pos < self.src.len() && self.src[self.pos] == b'(' {
            if !word.is_empty() && !is_symbol(word) {
                return Err(self.err("numeric tag"));
            }
            self.pos += 1;
            let mut children = Vec::new();
            if self.src.get(self.pos) == Some(&b')') {
                self.pos += 1;
                return Ok(GeneratorName::node(word, children));
            }
            loop {
                children.push(self.name()?);
                match self.src.get(self.pos) {
                    Some(b'.') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        return Ok(GeneratorName::node(word, children));
                    }
                    _ => return Err(self.err("expected '.' or ')'")),
                }
            }
        }
        if word.is_empty() {
            return Err(self.err("empty name"));
        }
        if word.bytes().all(|c| c.is_ascii_digit()) {
            word.parse::<u64>()
                .map(GeneratorName::Int)
                .map_err(|_| self.err("integer out of range"))
        } else {
            Ok(GeneratorName::sym(word))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse_round_trip() {
        let n = GeneratorName::node(
            "J",
            vec![
                GeneratorName::pair(GeneratorName::int(0), GeneratorName::sym("i")),
                GeneratorName::sym("pt"),
            ],
        );
        assert_eq!(n.to_string(), "J((0.i).pt)");
        assert_eq!(GeneratorName::parse("J((0.i).pt)").unwrap(), n);
        assert_eq!(GeneratorName::parse("()").unwrap(), GeneratorName::node("", vec![]));
    }

    #[test]
    fn order_is_structural() {
        let a = GeneratorName::int(2);
        let b = GeneratorName::int(10);
        assert!(a < b);
        assert!(GeneratorName::int(5) < GeneratorName::sym("a"));
        assert!(GeneratorName::sym("z") < GeneratorName::node("", vec![]));
    }

    #[test]
    fn rejects_garbage() {
        assert!(GeneratorName::parse("(0.").is_err());
        assert!(GeneratorName::parse("a b").is_err());
        assert!(GeneratorName::parse("").is_err());
        assert!(GeneratorName::parse("12(3)").is_err());
    }
}
