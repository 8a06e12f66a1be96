//! Hand-written recursive descent over a character-level lexer.

use super::{HomExpr, ModuleExpr, ParseError, RingExpr};

pub const MAX_INPUT_BYTES: usize = 64 * 1024;
/// Deepest constructor nesting accepted.
pub const MAX_NESTING: usize = 256;

const RING_CONSTRUCTORS: [&str; 7] = ["zmod", "tpa", "product", "quot", "trivext", "dup", "amalg"];
const MODULE_CONSTRUCTORS: [&str; 3] = ["regular", "resfield", "quotmod"];
const HOM_CONSTRUCTORS: [&str; 4] = ["id", "proj", "embed", "compose"];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
    Bad(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("integer {s}"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eof => "end of input".into(),
            Tok::Bad(c) => format!("character {c:?}"),
        }
    }
}

#[derive(Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
    peeked: Option<(Tok, Pos)>,
    depth: usize,
}

fn quoted(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| format!("\"{s}\"")).collect()
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
            peeked: None,
            depth: 0,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn lex(&mut self) -> (Tok, Pos) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
        let pos = Pos {
            line: self.line,
            column: self.column,
        };
        let Some(&c) = self.chars.peek() else {
            return (Tok::Eof, pos);
        };
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = self.chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                self.bump();
            }
            Tok::Int(s)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = self
                .chars
                .peek()
                .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
            {
                s.push(d);
                self.bump();
            }
            Tok::Ident(s)
        } else {
            self.bump();
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                other => Tok::Bad(other),
            }
        };
        (tok, pos)
    }

    fn peek(&mut self) -> &(Tok, Pos) {
        if self.peeked.is_none() {
            let t = self.lex();
            self.peeked = Some(t);
        }
        self.peeked.as_ref().expect("just filled")
    }

    fn next(&mut self) -> (Tok, Pos) {
        self.peek();
        self.peeked.take().expect("just filled")
    }

    fn error(pos: Pos, message: impl Into<String>, expected: Vec<String>) -> ParseError {
        ParseError {
            line: pos.line,
            column: pos.column,
            message: message.into(),
            expected,
        }
    }

    fn unexpected(tok: &Tok, pos: Pos, expected: Vec<String>) -> ParseError {
        Self::error(pos, format!("unexpected {}", tok.describe()), expected)
    }

    fn expect(&mut self, want: Tok, text: &str) -> Result<(), ParseError> {
        let (tok, pos) = self.next();
        if tok == want {
            Ok(())
        } else {
            Err(Self::unexpected(&tok, pos, quoted(&[text])))
        }
    }

    /// A separator between arguments of `name`; a premature `)` is an
    /// arity error.
    fn separator(&mut self, want: Tok, text: &str, name: &str, arity: usize) -> Result<(), ParseError> {
        let (tok, pos) = self.next();
        if tok == want {
            Ok(())
        } else if tok == Tok::RParen {
            Err(Self::error(pos, arity_message(name, arity), quoted(&[text])))
        } else {
            Err(Self::unexpected(&tok, pos, quoted(&[text])))
        }
    }

    /// The closing parenthesis of `name`; an extra argument is an arity
    /// error.
    fn close(&mut self, name: &str, arity: usize) -> Result<(), ParseError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::RParen => Ok(()),
            Tok::Comma | Tok::Semi => Err(Self::error(pos, arity_message(name, arity), quoted(&[")"]))),
            other => Err(Self::unexpected(&other, pos, quoted(&[")"]))),
        }
    }

    fn int(&mut self) -> Result<(u64, Pos), ParseError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Int(s) => s
                .parse::<u64>()
                .map(|v| (v, pos))
                .map_err(|_| Self::error(pos, format!("integer {s} is too large"), vec![])),
            other => Err(Self::unexpected(&other, pos, vec!["INT".into()])),
        }
    }

    fn elems(&mut self) -> Result<Vec<usize>, ParseError> {
        let mut out = Vec::new();
        loop {
            let (v, pos) = self.int()?;
            let v = usize::try_from(v)
                .map_err(|_| Self::error(pos, format!("element {v} is too large"), vec![]))?;
            out.push(v);
            if self.peek().0 == Tok::Comma {
                self.next();
            } else {
                return Ok(out);
            }
        }
    }

    fn enter(&mut self, pos: Pos) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(Self::error(
                pos,
                format!("expression nests deeper than {MAX_NESTING} levels"),
                vec![],
            ));
        }
        Ok(())
    }

    fn constructor(&mut self, allowed: &[&str], what: &str) -> Result<(String, Pos), ParseError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Ident(name) if allowed.contains(&name.as_str()) => Ok((name, pos)),
            Tok::Ident(name) => Err(Self::error(
                pos,
                format!("unknown {what} constructor `{name}`"),
                quoted(allowed),
            )),
            other => Err(Self::unexpected(&other, pos, quoted(allowed))),
        }
    }

    fn ring(&mut self) -> Result<RingExpr, ParseError> {
        let (name, pos) = self.constructor(&RING_CONSTRUCTORS, "ring")?;
        self.enter(pos)?;
        self.expect(Tok::LParen, "(")?;
        let e = match name.as_str() {
            "zmod" => {
                let (n, npos) = self.int()?;
                if n == 0 {
                    return Err(Self::error(npos, "zmod: n must be >= 1", vec![]));
                }
                self.close("zmod", 1)?;
                RingExpr::Zmod(n)
            }
            "tpa" => {
                let (p, _) = self.int()?;
                self.separator(Tok::Comma, ",", "tpa", 3)?;
                let (k, _) = self.int()?;
                self.separator(Tok::Comma, ",", "tpa", 3)?;
                let (t, _) = self.int()?;
                self.close("tpa", 3)?;
                RingExpr::Tpa { p, k, t }
            }
            "product" => {
                let a = self.ring()?;
                self.separator(Tok::Comma, ",", "product", 2)?;
                let b = self.ring()?;
                self.close("product", 2)?;
                RingExpr::Product(Box::new(a), Box::new(b))
            }
            "quot" | "dup" => {
                let a = self.ring()?;
                self.separator(Tok::Semi, ";", &name, 2)?;
                let g = self.elems()?;
                self.close(&name, 2)?;
                if name == "quot" {
                    RingExpr::Quot(Box::new(a), g)
                } else {
                    RingExpr::Dup(Box::new(a), g)
                }
            }
            "trivext" => {
                let a = self.ring()?;
                self.separator(Tok::Semi, ";", "trivext", 2)?;
                let m = self.module()?;
                self.close("trivext", 2)?;
                RingExpr::Trivext(Box::new(a), m)
            }
            "amalg" => {
                let a = self.ring()?;
                self.separator(Tok::Comma, ",", "amalg", 4)?;
                let b = self.ring()?;
                self.separator(Tok::Comma, ",", "amalg", 4)?;
                let hom = self.hom()?;
                self.separator(Tok::Semi, ";", "amalg", 4)?;
                let gens = self.elems()?;
                self.close("amalg", 4)?;
                RingExpr::Amalg {
                    a: Box::new(a),
                    b: Box::new(b),
                    hom,
                    gens,
                }
            }
            _ => unreachable!("filtered by constructor()"),
        };
        self.depth -= 1;
        Ok(e)
    }

    fn module(&mut self) -> Result<ModuleExpr, ParseError> {
        let (name, pos) = self.constructor(&MODULE_CONSTRUCTORS, "module")?;
        if name == "regular" {
            return Ok(ModuleExpr::Regular);
        }
        self.enter(pos)?;
        self.expect(Tok::LParen, "(")?;
        let m = if name == "resfield" {
            let (k, _) = self.int()?;
            self.close("resfield", 1)?;
            ModuleExpr::Resfield(k)
        } else {
            let inner = self.module()?;
            self.separator(Tok::Semi, ";", "quotmod", 2)?;
            let g = self.elems()?;
            self.close("quotmod", 2)?;
            ModuleExpr::Quotmod(Box::new(inner), g)
        };
        self.depth -= 1;
        Ok(m)
    }

    fn hom(&mut self) -> Result<HomExpr, ParseError> {
        let (name, pos) = self.constructor(&HOM_CONSTRUCTORS, "homomorphism")?;
        Ok(match name.as_str() {
            "id" => HomExpr::Id,
            "proj" => HomExpr::Proj,
            "embed" => HomExpr::Embed,
            _ => {
                self.enter(pos)?;
                self.expect(Tok::LParen, "(")?;
                let g = self.hom()?;
                self.separator(Tok::Comma, ",", "compose", 2)?;
                let f = self.hom()?;
                self.close("compose", 2)?;
                self.depth -= 1;
                HomExpr::Compose(Box::new(g), Box::new(f))
            }
        })
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        let (tok, pos) = self.next();
        if tok == Tok::Eof {
            Ok(())
        } else {
            Err(Self::unexpected(&tok, pos, vec!["end of input".into()]))
        }
    }
}

fn arity_message(name: &str, arity: usize) -> String {
    let s = if arity == 1 { "" } else { "s" };
    format!("`{name}` takes {arity} argument{s}")
}

fn check_len(text: &str) -> Result<(), ParseError> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: format!("input is {} bytes, above the {MAX_INPUT_BYTES}-byte limit", text.len()),
            expected: vec![],
        });
    }
    Ok(())
}

pub fn parse(text: &str) -> Result<RingExpr, ParseError> {
    check_len(text)?;
    let mut p = Parser::new(text);
    let e = p.ring()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_module(text: &str) -> Result<ModuleExpr, ParseError> {
    check_len(text)?;
    let mut p = Parser::new(text);
    let m = p.module()?;
    p.finish()?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplication_expression() {
        let e = parse("dup(zmod(4); 2)").unwrap();
        assert_eq!(e, RingExpr::Dup(Box::new(RingExpr::Zmod(4)), vec![2]));
        assert_eq!(e.to_string(), "dup(zmod(4); 2)");
    }

    #[test]
    fn whitespace_is_normalized() {
        let e = parse("amalg( zmod(4) ,\n trivext(zmod(4);resfield(1)),embed ;1,4 )").unwrap();
        assert_eq!(
            e.to_string(),
            "amalg(zmod(4), trivext(zmod(4); resfield(1)), embed; 1, 4)"
        );
        let h = parse("amalg(tpa(2, 1, 2), quot(tpa(2, 1, 2); 1), compose(id, proj); 0)").unwrap();
        assert_eq!(parse(&h.to_string()).unwrap(), h);
    }

    #[test]
    fn zmod_zero_is_rejected() {
        let e = parse("zmod(0)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 6));
        assert!(e.message.contains(">= 1"));
    }

    #[test]
    fn arity_errors() {
        let e = parse("zmod(4, 5)").unwrap_err();
        assert!(e.message.contains("takes 1 argument"), "{e}");
        assert_eq!(e.column, 7);
        let e = parse("product(zmod(2))").unwrap_err();
        assert!(e.message.contains("takes 2 arguments"), "{e}");
        assert_eq!(e.expected, vec!["\",\""]);
    }

    #[test]
    fn unknown_constructor_lists_alternatives() {
        let e = parse("frob(zmod(2))").unwrap_err();
        assert!(e.message.contains("unknown ring constructor `frob`"));
        assert_eq!(e.expected.len(), RING_CONSTRUCTORS.len());
        let e = parse("trivext(zmod(2); free)").unwrap_err();
        assert!(e.message.contains("module"));
    }

    #[test]
    fn positions_span_lines() {
        let e = parse("product(zmod(2),\n  zmod(3)\n  x)").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        assert_eq!(e.expected, vec!["\")\""]);
    }

    #[test]
    fn trailing_input_and_limits() {
        assert!(parse("zmod(2) zmod(3)").is_err());
        assert!(parse("zmod(99999999999999999999999)").is_err());
        let big = format!("zmod({})", "1".repeat(MAX_INPUT_BYTES));
        assert!(parse(&big).unwrap_err().message.contains("limit"));
        let deep = format!("{}zmod(2){}", "product(zmod(2), ".repeat(300), ")".repeat(300));
        assert!(parse(&deep).unwrap_err().message.contains("deeper"));
    }

    #[test]
    fn modules_parse() {
        let m = parse_module("quotmod(resfield(2); 1)").unwrap();
        assert_eq!(m.to_string(), "quotmod(resfield(2); 1)");
    }
}
