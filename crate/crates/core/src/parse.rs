//! Text syntax for means.
//!
//! ```text
//! expr  := H | G | L | I | A | S | P | T
//!        | holder(num) | lehmer(num) | genlog(num) | lambda(num) | k(num)
//!        | stolarsky(num, num)
//!        | dual(expr) | pow(expr, num)
//! num   := decimal | decimal '/' decimal
//! ```
//!
//! `Display` on [`Mean`] produces text in the same syntax, so printing and
//! parsing round-trip.
//!
//! Families ([`parse_family`]) are named `holder`, `lehmer`, `genlog`,
//! `stolarsky` (the diagonal), `stolarsky-row(num)`, `lambda`, `k`,
//! `pow(expr)`, `delta0`, or given as a finite chain `[expr, expr, ...]`.

use crate::error::{Error, Result};
use crate::families::{gen_log, holder, k_mean, lambda_mean, lehmer, stolarsky, Family};
use crate::mean::{Elementary, Mean};

/// Parses a mean expression such as `pow(dual(S), 1/2)`.
///
/// ```
/// let m = meanlab::parse_mean_expr("stolarsky(1, 2)").unwrap();
/// assert!((m.value(1.0, 3.0).unwrap() - 2.0).abs() < 1e-15);
/// ```
pub fn parse_mean_expr(text: &str) -> Result<Mean> {
    let mut p = Parser { src: text, pos: 0 };
    let m = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(m)
}

/// Parses a family name such as `genlog`, `pow(I)` or `[H, G, A]`.
///
/// ```
/// let f = meanlab::parse_family("stolarsky-row(1)").unwrap();
/// assert_eq!(f.instance(2.0).unwrap(), meanlab::parse_mean_expr("stolarsky(1, 2)").unwrap());
/// assert!((f.instance(2.0).unwrap().value(1.0, 3.0).unwrap() - 2.0).abs() < 1e-15);
/// ```
pub fn parse_family(text: &str) -> Result<Family> {
    let trimmed = text.trim();
    let simple = match trimmed {
        "holder" => Some(Family::holder()),
        "lehmer" => Some(Family::lehmer()),
        "genlog" => Some(Family::gen_log()),
        "stolarsky" => Some(Family::stolarsky_diagonal()),
        "lambda" => Some(Family::lambda()),
        "k" => Some(Family::k()),
        "delta0" => Some(Family::delta0()),
        _ => None,
    };
    if let Some(f) = simple {
        return Ok(f);
    }
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    let f = if p.rest().starts_with('[') {
        p.pos += 1;
        let mut members = vec![p.expr()?];
        loop {
            p.skip_ws();
            match p.peek() {
                Some(',') => {
                    p.pos += 1;
                    members.push(p.expr()?);
                }
                Some(']') => {
                    p.pos += 1;
                    break;
                }
                _ => return Err(p.error("expected ',' or ']'")),
            }
        }
        Family::finite(members)
    } else if p.rest().starts_with("stolarsky-row") {
        p.pos += "stolarsky-row".len();
        p.expect('(')?;
        let r = p.number()?;
        p.expect(')')?;
        Family::stolarsky_row(r)
    } else if p.rest().starts_with("pow") {
        p.pos += 3;
        p.expect('(')?;
        let m = p.expr()?;
        p.expect(')')?;
        Family::power_transform(m)
    } else {
        return Err(p.error(format!("unknown family '{trimmed}'")));
    };
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a mean name"));
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn expr(&mut self) -> Result<Mean> {
        let (start, name) = self.ident()?;
        if let Some(e) = Elementary::from_symbol(name) {
            return Ok(Mean::elementary(e));
        }
        let name = name.to_string();
        let with_pos = |e: Error| match e {
            Error::Syntax { .. } => e,
            other => Error::Syntax {
                pos: start,
                msg: other.to_string(),
            },
        };
        const KNOWN: [&str; 8] = [
            "holder",
            "lehmer",
            "genlog",
            "lambda",
            "k",
            "stolarsky",
            "dual",
            "pow",
        ];
        if !KNOWN.contains(&name.as_str()) {
            return Err(Error::Syntax {
                pos: start,
                msg: format!("unknown mean '{name}'"),
            });
        }
        self.expect('(')?;
        let m = match name.as_str() {
            "holder" => holder(self.number()?).map_err(with_pos)?,
            "lehmer" => lehmer(self.number()?).map_err(with_pos)?,
            "genlog" => gen_log(self.number()?).map_err(with_pos)?,
            "lambda" => lambda_mean(self.number()?).map_err(with_pos)?,
            "k" => k_mean(self.number()?).map_err(with_pos)?,
            "stolarsky" => {
                let r = self.number()?;
                self.expect(',')?;
                let s = self.number()?;
                stolarsky(r, s).map_err(with_pos)?
            }
            "dual" => self.expr()?.dual(),
            "pow" => {
                let m = self.expr()?;
                self.expect(',')?;
                let s = self.number()?;
                m.power(s).map_err(with_pos)?
            }
            _ => unreachable!(),
        };
        self.expect(')')?;
        Ok(m)
    }

    fn number(&mut self) -> Result<f64> {
        let x = self.decimal()?;
        self.skip_ws();
        if self.peek() != Some('/') {
            return Ok(x);
        }
        self.pos += 1;
        let at = self.pos;
        let y = self.decimal()?;
        if y == 0.0 {
            return Err(Error::Syntax {
                pos: at,
                msg: "zero denominator".into(),
            });
        }
        Ok(x / y)
    }

    fn decimal(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        let digits = |i: &mut usize| {
            let s = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            *i > s
        };
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            i += 1;
        }
        let mut any = digits(&mut i);
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            any |= digits(&mut i);
        }
        if !any {
            return Err(self.error("expected a number"));
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            if digits(&mut j) {
                i = j;
            }
        }
        self.pos = i;
        self.src[start..i]
            .parse::<f64>()
            .map_err(|_| Error::Syntax {
                pos: start,
                msg: "malformed number".into(),
            })
    }
}
