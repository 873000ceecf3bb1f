use super::{Formula, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at offset {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(u32),
    Bot,
    Top,
    Not,
    Nec,
    And,
    Or,
    Imp,
    Iff,
    Equiv,
    LParen,
    RParen,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let rest = &text[i..];
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Imp, 2)
        } else if rest.starts_with("==") {
            (Tok::Equiv, 2)
        } else if rest.starts_with("[]") {
            (Tok::Nec, 2)
        } else if rest.starts_with("/\\") {
            (Tok::And, 2)
        } else if rest.starts_with("\\/") {
            (Tok::Or, 2)
        } else if c == b'~' {
            (Tok::Not, 1)
        } else if c == b'(' {
            (Tok::LParen, 1)
        } else if c == b')' {
            (Tok::RParen, 1)
        } else if c.is_ascii_alphabetic() {
            let len = rest
                .bytes()
                .take_while(|b| b.is_ascii_alphanumeric())
                .count();
            let word = &rest[..len];
            let tok = match word {
                "p" => Tok::Var(0),
                "q" => Tok::Var(1),
                "r" => Tok::Var(2),
                "bot" => Tok::Bot,
                "top" => Tok::Top,
                _ => match word.strip_prefix('x').map(str::parse::<u32>) {
                    Some(Ok(n)) if word.len() == 2 || !word[1..].starts_with('0') => Tok::Var(n),
                    _ => return err(i, format!("unknown identifier `{word}`")),
                },
            };
            (tok, len)
        } else {
            let ch = rest.chars().next().unwrap_or('?');
            return err(i, format!("unexpected character `{ch}`"));
        };
        out.push((i, tok));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    // lowest precedence: `<->` and `==`, right-associative
    fn equiv(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.equiv()?;
            Ok(Formula::iff(lhs, rhs))
        } else if self.eat(&Tok::Equiv) {
            let rhs = self.equiv()?;
            Ok(Formula::equiv(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.imp()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return err(pos, "unexpected end of input");
        };
        self.at += 1;
        match tok {
            Tok::Not => Ok(Formula::neg(self.unary()?)),
            Tok::Nec => Ok(Formula::boxed(self.unary()?)),
            Tok::Var(n) => Ok(Formula::Atom(Var(n))),
            Tok::Bot => Ok(Formula::Bot),
            Tok::Top => Ok(Formula::top()),
            Tok::LParen => {
                let inner = self.equiv()?;
                if !self.eat(&Tok::RParen) {
                    return err(self.pos(), "expected `)`");
                }
                Ok(inner)
            }
            other => err(pos, format!("unexpected token {other:?}")),
        }
    }
}

/// Parses the ASCII syntax. Binding strength, tightest first: `~` and `[]`;
/// `/\`; `\/`; `->` (right-associative); `<->` and `==`.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let f = p.equiv()?;
    if p.at != p.toks.len() {
        return err(p.pos(), "trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom(0)
    }

    fn q() -> Formula {
        Formula::atom(1)
    }

    #[test]
    fn spec_examples() {
        assert_eq!(
            parse("bot -> bot").unwrap(),
            Formula::imp(Formula::Bot, Formula::Bot)
        );
        assert_eq!(
            parse("[](p \\/ q) -> ([]p \\/ []q)").unwrap(),
            Formula::imp(
                Formula::boxed(Formula::or(p(), q())),
                Formula::or(Formula::boxed(p()), Formula::boxed(q()))
            )
        );
        assert_eq!(
            parse("~~p").unwrap(),
            Formula::imp(Formula::imp(p(), Formula::Bot), Formula::Bot)
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("p -> q -> p").unwrap(),
            Formula::imp(p(), Formula::imp(q(), p()))
        );
        assert_eq!(
            parse("p \\/ q /\\ p").unwrap(),
            Formula::or(p(), Formula::and(q(), p()))
        );
        assert_eq!(
            parse("p /\\ q /\\ p").unwrap(),
            Formula::and(Formula::and(p(), q()), p())
        );
        assert_eq!(parse("[]~p").unwrap(), Formula::boxed(Formula::neg(p())));
        assert_eq!(parse("x0").unwrap(), p());
        assert_eq!(parse("x17").unwrap(), Formula::atom(17));
        assert_eq!(parse("p <-> q").unwrap(), Formula::iff(p(), q()));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("p -> ").unwrap_err().pos, 5);
        assert_eq!(parse("p & q").unwrap_err().pos, 2);
        assert_eq!(parse("(p").unwrap_err().pos, 2);
        assert_eq!(parse("p q").unwrap_err().pos, 2);
        assert!(parse("s").is_err());
        assert!(parse("x01").is_err());
        assert!(parse("").is_err());
    }
}
