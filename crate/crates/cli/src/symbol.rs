//! The symbol grammar:
//!
//! ```text
//! symbol  := kind ':' factor ('*' factor)*
//! kind    := "radial" | "seprad"
//! factor  := "const(" num ")" | "pow(" num ")"
//!          | "step(" num "," num "," num ")" | "poly(" num ("," num)* ")"
//! ```
//!
//! `radial:` takes exactly one factor, a profile in `s = |z|`. `seprad:`
//! takes one factor per axis, the `j`-th applied to `|z_j|`. Whitespace
//! between tokens is ignored. Positions in errors are 0-based byte offsets.

use toeplitz_core::{Error, Factor, Result, SymbolSpec};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(got) if got == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(got) => self.err(format!("expected '{c}', found '{got}'")),
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'))
        {
            self.pos += 1;
        }
        let token = &self.text[start..self.pos];
        if token.is_empty() {
            self.pos = start;
            return match self.peek() {
                Some(c) => self.err(format!("expected a number, found '{c}'")),
                None => self.err("expected a number, found end of input"),
            };
        }
        match token.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => {
                self.pos = start;
                self.err(format!("'{token}' is not a finite number"))
            }
        }
    }

    fn args(&mut self) -> Result<Vec<f64>> {
        self.expect('(')?;
        let mut out = vec![self.number()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    out.push(self.number()?);
                }
                Some(')') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(c) => return self.err(format!("expected ',' or ')', found '{c}'")),
                None => return self.err("unclosed '('"),
            }
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        self.skip_ws();
        let start = self.pos;
        let name = self.word();
        let arity = |want: usize, got: &[f64], name: &str| -> Result<()> {
            if got.len() == want {
                Ok(())
            } else {
                Err(Error::Parse {
                    pos: start,
                    msg: format!("{name}() takes {want} argument(s), got {}", got.len()),
                })
            }
        };
        match name {
            "const" => {
                let a = self.args()?;
                arity(1, &a, name)?;
                Ok(Factor::Const(a[0]))
            }
            "pow" => {
                let a = self.args()?;
                arity(1, &a, name)?;
                Ok(Factor::Pow(a[0]))
            }
            "step" => {
                let a = self.args()?;
                arity(3, &a, name)?;
                Ok(Factor::Step {
                    threshold: a[0],
                    low: a[1],
                    high: a[2],
                })
            }
            "poly" => Ok(Factor::Poly(self.args()?)),
            "" => {
                self.pos = start;
                match self.peek() {
                    Some(c) => self.err(format!("expected a factor name, found '{c}'")),
                    None => self.err("expected a factor, found end of input"),
                }
            }
            other => {
                self.pos = start;
                self.err(format!(
                    "unknown factor '{other}'; expected const, pow, step or poly"
                ))
            }
        }
    }
}

/// Parses a symbol description into a validated [`SymbolSpec`].
pub fn parse_symbol(text: &str) -> Result<SymbolSpec> {
    let mut cur = Cursor { text, pos: 0 };
    let kind_start = {
        cur.skip_ws();
        cur.pos
    };
    let kind = cur.word();
    let radial = match kind {
        "radial" => true,
        "seprad" => false,
        _ => {
            cur.pos = kind_start;
            return cur.err("symbol must start with 'radial:' or 'seprad:'");
        }
    };
    cur.expect(':')?;
    let mut factors = vec![cur.factor()?];
    while !cur.at_end() {
        cur.expect('*')?;
        if radial {
            cur.pos -= 1;
            return cur.err("radial symbols take a single profile; '*' products need 'seprad:'");
        }
        factors.push(cur.factor()?);
    }
    if radial {
        SymbolSpec::radial(factors.pop().expect("one factor"))
    } else {
        SymbolSpec::separately_radial(factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use toeplitz_core::SymbolKind;

    fn parse_err(text: &str) -> (usize, String) {
        match parse_symbol(text) {
            Err(Error::Parse { pos, msg }) => (pos, msg),
            other => panic!("expected a parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn grammar_examples() {
        let a = parse_symbol("radial:const(1)").unwrap();
        assert_eq!(a.kind(), SymbolKind::Radial);
        assert_eq!(a.factors(), &[Factor::Const(1.0)]);

        let a = parse_symbol("radial:pow(2)").unwrap();
        assert_eq!(a.factors(), &[Factor::Pow(2.0)]);

        let a = parse_symbol("seprad:pow(2)*const(1)").unwrap();
        assert_eq!(a.kind(), SymbolKind::SeparatelyRadial);
        assert_eq!(a.dim(), Some(2));
        assert_eq!(a.eval_radii(&[0.5, 0.9]), 0.25);
    }

    #[test]
    fn all_families_and_whitespace() {
        let a =
            parse_symbol(" seprad : step(0.5, 1, -2e-1) * poly(1,-0.5,0.25) *pow(1.5) ").unwrap();
        assert_eq!(
            a.factors(),
            &[
                Factor::Step {
                    threshold: 0.5,
                    low: 1.0,
                    high: -0.2
                },
                Factor::Poly(vec![1.0, -0.5, 0.25]),
                Factor::Pow(1.5),
            ]
        );
        assert_eq!(a.bound(), 1.75);
    }

    #[test]
    fn display_parses_back() {
        for text in [
            "radial:step(0.7,1,0)",
            "seprad:poly(1,-0.5)*pow(2)",
            "radial:const(-3.25)",
        ] {
            let a = parse_symbol(text).unwrap();
            assert_eq!(a.to_string(), text);
            assert_eq!(parse_symbol(&a.to_string()).unwrap(), a);
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_err("radal:pow(2)").0, 0);
        assert_eq!(parse_err("radial pow(2)").0, 7);
        assert_eq!(parse_err("radial:pwo(2)").0, 7);
        assert_eq!(parse_err("radial:pow(x)").0, 11);
        assert_eq!(parse_err("radial:pow(2").0, 12);
        assert_eq!(parse_err("radial:step(1,2)").0, 7);
        assert_eq!(parse_err("radial:pow(2)*pow(1)").0, 13);
        assert_eq!(parse_err("seprad:pow(2)*").0, 14);
        assert_eq!(parse_err("seprad:pow(2) pow(1)").0, 14);
        assert_eq!(parse_err("radial:const(1e999)").0, 13);
    }

    #[test]
    fn invalid_parameters_are_validation_errors() {
        assert!(matches!(
            parse_symbol("radial:pow(-1)"),
            Err(Error::Validation(_))
        ));
    }
}
