//! Set expression grammar.
//!
//! ```text
//! set := "empty" | "line"
//!      | "interval(lo,hi,oo|oc|co|cc)" | "point(p)"
//!      | "chain(limit, c, q [, template] [, closed] [, divergent])"
//!      | "union(set, ...)" | "intersect(set, ...)" | "difference(set, set)"
//!      | "closure(set)" | "complement(set)" | "nested_chain(N)"
//! ```
//!
//! Numbers are exact rationals `p/q`; interval ends also accept `-inf` and `inf`.
//! A chain template is any zero-dimensional set expression, or the bare word `point`
//! for `{0}` (the default).

use super::interval::Interval;
use super::rat::{parse_rat, ExtRat, Rat};
use super::zerodim::{Chain, ZeroDimSet};
use super::{nested_zerodim, Tame1DSet, TameError};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, TameError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(TameError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    /// Raw token up to the next ',' or ')' or '(' at depth zero.
    fn token(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(ch) = self.src[self.pos..].chars().next() {
            if ch == ',' || ch == ')' || ch == '(' {
                break;
            }
            self.pos += ch.len_utf8();
        }
        self.src[start..self.pos].trim()
    }

    fn rational(&mut self) -> PResult<Rat> {
        let at = self.pos;
        let t = self.token();
        parse_rat(t).ok_or(TameError::Parse {
            pos: at,
            msg: format!("expected rational, found '{t}'"),
        })
    }

    fn ext_rational(&mut self) -> PResult<ExtRat> {
        let at = self.pos;
        let t = self.token();
        match t {
            "-inf" => Ok(ExtRat::NegInf),
            "inf" | "+inf" => Ok(ExtRat::PosInf),
            _ => parse_rat(t).map(ExtRat::Fin).ok_or(TameError::Parse {
                pos: at,
                msg: format!("expected rational or ±inf, found '{t}'"),
            }),
        }
    }

    fn set(&mut self) -> PResult<Tame1DSet> {
        self.skip_ws();
        let at = self.pos;
        let name = self.token();
        let wrap = |e: TameError| match e {
            TameError::Parse { .. } => e,
            other => TameError::Parse {
                pos: at,
                msg: other.to_string(),
            },
        };
        match name {
            "empty" => Ok(Tame1DSet::empty()),
            "line" => Ok(Tame1DSet::line()),
            "interval" => {
                self.expect('(')?;
                let lo = self.ext_rational()?;
                self.expect(',')?;
                let hi = self.ext_rational()?;
                self.expect(',')?;
                let kind_at = self.pos;
                let kind = self.token();
                let (lc, hc) = match kind {
                    "oo" => (false, false),
                    "oc" => (false, true),
                    "co" => (true, false),
                    "cc" => (true, true),
                    _ => {
                        self.pos = kind_at;
                        return self.err("interval kind must be one of oo, oc, co, cc");
                    }
                };
                self.expect(')')?;
                if (lc && !lo.is_finite()) || (hc && !hi.is_finite()) {
                    self.pos = at;
                    return self.err("infinite interval ends must be open");
                }
                match Interval::new(lo, hi, lc, hc) {
                    Some(i) => Ok(Tame1DSet::interval(i)),
                    None => {
                        self.pos = at;
                        self.err("interval must satisfy lo < hi")
                    }
                }
            }
            "point" => {
                self.expect('(')?;
                let p = self.rational()?;
                self.expect(')')?;
                Ok(Tame1DSet::point(p))
            }
            "chain" => {
                self.expect('(')?;
                let limit = self.rational()?;
                self.expect(',')?;
                let c = self.rational()?;
                self.expect(',')?;
                let q = self.rational()?;
                let mut template = ZeroDimSet::point(Rat::default());
                let (mut closed, mut divergent) = (false, false);
                while self.eat(',') {
                    self.skip_ws();
                    let save = self.pos;
                    match self.token() {
                        "closed" => closed = true,
                        "divergent" => divergent = true,
                        "point" if !self.src[self.pos..].trim_start().starts_with('(') => {
                            template = ZeroDimSet::point(Rat::default());
                        }
                        _ => {
                            self.pos = save;
                            let t = self.set()?;
                            if !t.intervals().is_empty() || !t.holes().is_empty() {
                                self.pos = save;
                                return self.err("chain template must be zero-dimensional");
                            }
                            template = t.zerodim().clone();
                        }
                    }
                }
                self.expect(')')?;
                let chain = Chain::new(limit, c, q, template, closed, divergent).map_err(wrap)?;
                Ok(Tame1DSet::chain(chain))
            }
            "nested_chain" => {
                self.expect('(')?;
                let n_at = self.pos;
                let n: usize = self.token().parse().or_else(|_| {
                    self.pos = n_at;
                    self.err("expected natural number")
                })?;
                self.expect(')')?;
                if n > 16 {
                    self.pos = n_at;
                    return self.err("nesting depth above 16 is not supported");
                }
                Ok(Tame1DSet::from_zerodim(nested_zerodim(n)))
            }
            "union" | "intersect" => {
                let args = self.args()?;
                let mut acc = args[0].clone();
                for a in &args[1..] {
                    acc = if name == "union" { acc.union(a) } else { acc.intersect(a) }.map_err(wrap)?;
                }
                if args.len() == 1 {
                    acc = acc.union(&Tame1DSet::empty()).map_err(wrap)?;
                }
                Ok(acc)
            }
            "difference" => {
                let args = self.args()?;
                if args.len() != 2 {
                    self.pos = at;
                    return self.err("difference takes exactly two sets");
                }
                args[0].difference(&args[1]).map_err(wrap)
            }
            "closure" | "complement" => {
                let args = self.args()?;
                if args.len() != 1 {
                    self.pos = at;
                    return self.err(format!("{name} takes exactly one set"));
                }
                if name == "closure" { args[0].closure() } else { args[0].complement() }.map_err(wrap)
            }
            "" => self.err("expected set expression"),
            other => {
                self.pos = at;
                self.err(format!("unknown constructor '{other}'"))
            }
        }
    }

    fn args(&mut self) -> PResult<Vec<Tame1DSet>> {
        self.expect('(')?;
        let mut v = vec![self.set()?];
        while self.eat(',') {
            v.push(self.set()?);
        }
        self.expect(')')?;
        Ok(v)
    }
}

/// Parses and normalizes a set expression.
pub fn parse_set(src: &str) -> Result<Tame1DSet, TameError> {
    let mut p = Parser { src, pos: 0 };
    let s = p.set()?;
    p.skip_ws();
    if p.pos != src.len() {
        return p.err("trailing input");
    }
    // normalize leaves built directly from constructors
    s.union(&Tame1DSet::empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_error_positions() {
        match parse_set("union(point(1), pint(2))") {
            Err(TameError::Parse { pos, .. }) => assert_eq!(pos, 16),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_set("interval(1,0,oo)").is_err());
        assert!(parse_set("interval(0,1,ox)").is_err());
        assert!(parse_set("chain(0,1,2)").is_err());
        assert!(parse_set("point(1) junk").is_err());
        assert!(parse_set("chain(0,1,1/2,interval(0,1,oo))").is_err());
    }

    #[test]
    fn accepts_grammar() {
        for e in [
            "empty",
            "line",
            "interval(-inf,0,oc)",
            "chain(0,1,1/2,point,closed)",
            "chain(0, -1, 1/3, point(1/2), closed)",
            "chain(0,1,1/2,divergent)",
            "nested_chain(3)",
            "union(interval(0,1,oo), chain(0,1,1/2,point,closed))",
            "difference(line, nested_chain(1))",
        ] {
            parse_set(e).unwrap_or_else(|err| panic!("{e}: {err}"));
        }
    }
}
