//! S-expression text format for [`ScalarExpr`].
//!
//! ```text
//! (mul (exp (mul (rat -1 2) t)) (cos (mul p t)))
//! ```
//!
//! Rationals are written `(rat n d)` (bare integers are accepted), `t` is
//! the time variable and any other bare symbol is a named parameter whose
//! value is supplied at parse time.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::expr::{Node, ScalarExpr};
use crate::error::{Error, Result};
use crate::linalg::Q;

impl ScalarExpr {
    pub fn to_sexpr(&self) -> String {
        let mut out = String::new();
        write_sexpr(self, &mut out);
        out
    }

    pub fn parse_sexpr(text: &str, params: &BTreeMap<String, f64>) -> Result<ScalarExpr> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let e = parse(&tokens, &mut pos, params)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input after expression in `{text}`")));
        }
        Ok(e)
    }
}

fn write_sexpr(e: &ScalarExpr, out: &mut String) {
    let bin = |op: &str, a: &ScalarExpr, b: &ScalarExpr, out: &mut String| {
        out.push('(');
        out.push_str(op);
        out.push(' ');
        write_sexpr(a, out);
        out.push(' ');
        write_sexpr(b, out);
        out.push(')');
    };
    let un = |op: &str, a: &ScalarExpr, out: &mut String| {
        out.push('(');
        out.push_str(op);
        out.push(' ');
        write_sexpr(a, out);
        out.push(')');
    };
    match e.node() {
        Node::Rat(x) => {
            if x.denom().is_one() {
                out.push_str(&x.numer().to_string());
            } else {
                out.push_str(&format!("(rat {} {})", x.numer(), x.denom()));
            }
        }
        Node::Param(name, _) => out.push_str(name),
        Node::Var => out.push('t'),
        Node::Add(a, b) => bin("add", a, b, out),
        Node::Sub(a, b) => bin("sub", a, b, out),
        Node::Mul(a, b) => bin("mul", a, b, out),
        Node::Div(a, b) => bin("div", a, b, out),
        Node::Neg(a) => un("neg", a, out),
        Node::Pow(a, n) => {
            out.push_str("(pow ");
            write_sexpr(a, out);
            out.push_str(&format!(" {n})"));
        }
        Node::Exp(a) => un("exp", a, out),
        Node::Cos(a) => un("cos", a, out),
        Node::Sin(a) => un("sin", a, out),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

fn tokenize(text: &str) -> Vec<Tok> {
    let mut toks = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, toks: &mut Vec<Tok>| {
        if !cur.is_empty() {
            toks.push(Tok::Atom(std::mem::take(cur)));
        }
    };
    for ch in text.chars() {
        match ch {
            '(' => {
                flush(&mut cur, &mut toks);
                toks.push(Tok::Open);
            }
            ')' => {
                flush(&mut cur, &mut toks);
                toks.push(Tok::Close);
            }
            c if c.is_whitespace() => flush(&mut cur, &mut toks),
            c => cur.push(c),
        }
    }
    flush(&mut cur, &mut toks);
    toks
}

fn parse_int(s: &str) -> Option<BigInt> {
    s.parse::<BigInt>().ok()
}

fn parse(toks: &[Tok], pos: &mut usize, params: &BTreeMap<String, f64>) -> Result<ScalarExpr> {
    let tok = toks.get(*pos).ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
    *pos += 1;
    match tok {
        Tok::Close => Err(Error::Parse("unexpected `)`".into())),
        Tok::Atom(a) => {
            if a == "t" {
                Ok(ScalarExpr::t())
            } else if let Some(n) = parse_int(a) {
                Ok(ScalarExpr::rat(Q::from_integer(n)))
            } else if let Some(&v) = params.get(a.as_str()) {
                Ok(ScalarExpr::param(a, v))
            } else {
                Err(Error::Parse(format!("unbound symbol `{a}`")))
            }
        }
        Tok::Open => {
            let Some(Tok::Atom(op)) = toks.get(*pos) else {
                return Err(Error::Parse("expected operator after `(`".into()));
            };
            *pos += 1;
            let e = match op.as_str() {
                "rat" => {
                    let n = expect_int(toks, pos)?;
                    let d = expect_int(toks, pos)?;
                    if d == BigInt::from(0) {
                        return Err(Error::Parse("zero denominator in rat".into()));
                    }
                    ScalarExpr::rat(Q::new(n, d))
                }
                "pow" => {
                    let base = parse(toks, pos, params)?;
                    let n = expect_int(toks, pos)?;
                    let n = i32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?;
                    base.powi(n)
                }
                "add" | "sub" | "mul" | "div" => {
                    let mut args = vec![parse(toks, pos, params)?];
                    while toks.get(*pos) != Some(&Tok::Close) {
                        args.push(parse(toks, pos, params)?);
                    }
                    if op == "sub" || op == "div" {
                        if args.len() != 2 {
                            return Err(Error::Parse(format!("`{op}` takes two arguments")));
                        }
                    } else if args.len() < 2 {
                        return Err(Error::Parse(format!("`{op}` needs at least two arguments")));
                    }
                    let mut it = args.into_iter();
                    let first = it.next().expect("nonempty");
                    it.fold(first, |acc, x| match op.as_str() {
                        "add" => acc.add(&x),
                        "sub" => acc.sub(&x),
                        "mul" => acc.mul(&x),
                        _ => acc.div(&x),
                    })
                }
                "neg" => parse(toks, pos, params)?.neg(),
                "exp" => parse(toks, pos, params)?.exp(),
                "cos" => parse(toks, pos, params)?.cos(),
                "sin" => parse(toks, pos, params)?.sin(),
                other => return Err(Error::Parse(format!("unknown operator `{other}`"))),
            };
            match toks.get(*pos) {
                Some(Tok::Close) => {
                    *pos += 1;
                    Ok(e)
                }
                _ => Err(Error::Parse(format!("expected `)` to close `{op}`"))),
            }
        }
    }
}

fn expect_int(toks: &[Tok], pos: &mut usize) -> Result<BigInt> {
    match toks.get(*pos) {
        Some(Tok::Atom(a)) => {
            *pos += 1;
            parse_int(a).ok_or_else(|| Error::Parse(format!("expected integer, found `{a}`")))
        }
        _ => Err(Error::Parse("expected integer".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> BTreeMap<String, f64> {
        BTreeMap::from([("p".to_string(), 1.25)])
    }

    #[test]
    fn parses_documented_example() {
        let e = ScalarExpr::parse_sexpr("(mul (exp (mul (rat -1 2) t)) (cos (mul p t)))", &env())
            .unwrap();
        let t: f64 = 0.3;
        let expected = (-0.5 * t).exp() * (1.25 * t).cos();
        assert!((e.eval(t).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn printing_then_parsing_preserves_values() {
        let src = "(div (sub (pow t 3) (rat 2 7)) (add (sin t) 2))";
        let e = ScalarExpr::parse_sexpr(src, &env()).unwrap();
        let back = ScalarExpr::parse_sexpr(&e.to_sexpr(), &env()).unwrap();
        assert_eq!(e, back);
        assert_eq!(e.to_sexpr(), src);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["(add t", "(foo t)", "(rat 1 0)", "q", "(sub t t t)", "t t"] {
            assert!(ScalarExpr::parse_sexpr(bad, &env()).is_err(), "{bad}");
        }
    }
}
