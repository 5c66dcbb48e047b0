//! Text grammar for polynomials:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*
//! power  := atom ['^' ['-'] integer | '^' '(' ['-'] integer ')']
//! atom   := number ['i'|'I'] | 'x' | 'y' | 'i' | 'I' | '(' expr ')'
//! ```
//!
//! Division and negative powers are only allowed for monomials.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{ExponentVector, SparsePoly, DEFAULT_DROP_TOLERANCE};
use crate::error::{Error, Result};

type Table = BTreeMap<ExponentVector, Complex64>;

pub fn parse_poly(text: &str) -> Result<SparsePoly> {
    parse_poly_with_tolerance(text, DEFAULT_DROP_TOLERANCE)
}

pub fn parse_poly_with_tolerance(text: &str, drop_tolerance: f64) -> Result<SparsePoly> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    parser.skip_ws();
    if parser.peek().is_none() {
        return Err(parser.error("empty input"));
    }
    let table = parser.expr()?;
    parser.skip_ws();
    if parser.peek().is_some() {
        return Err(parser.error("unexpected character"));
    }
    for c in table.values() {
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
    }
    SparsePoly::from_table(table, drop_tolerance)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Table> {
        let mut acc = Table::new();
        let mut sign = 1.0;
        if self.eat(b'-') {
            sign = -1.0;
        } else {
            self.eat(b'+');
        }
        loop {
            let term = self.term()?;
            for (e, c) in term {
                *acc.entry(e).or_default() += c * sign;
            }
            if self.eat(b'+') {
                sign = 1.0;
            } else if self.eat(b'-') {
                sign = -1.0;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Table> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.power()?;
                acc = multiply(&acc, &rhs);
            } else if self.eat(b'/') {
                self.skip_ws();
                let at = self.pos;
                let rhs = self.power()?;
                let inv = invert_monomial(&rhs).ok_or(Error::Syntax {
                    position: at,
                    message: "can only divide by a nonzero monomial".into(),
                })?;
                acc = multiply(&acc, &inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Table> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let paren = self.eat(b'(');
        let negative = self.eat(b'-');
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected an integer exponent"));
        }
        let n: i64 = digits.parse().map_err(|_| Error::Syntax {
            position: at,
            message: "exponent out of range".into(),
        })?;
        if paren && !self.eat(b')') {
            return Err(self.error("expected ')'"));
        }
        if negative {
            let inv = invert_monomial(&base).ok_or(Error::Syntax {
                position: at,
                message: "negative powers need a nonzero monomial base".into(),
            })?;
            pow(&inv, n, at)
        } else {
            pow(&base, n, at)
        }
    }

    fn atom(&mut self) -> Result<Table> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(single(ExponentVector::new(1, 0), Complex64::new(1.0, 0.0)))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(single(ExponentVector::new(0, 1), Complex64::new(1.0, 0.0)))
            }
            Some(b'i' | b'I') => {
                self.pos += 1;
                Ok(single(ExponentVector::new(0, 0), Complex64::new(0.0, 1.0)))
            }
            Some(b) if b.is_ascii_digit() || b == b'.' => {
                let value = self.number()?;
                let c = if matches!(self.peek(), Some(b'i' | b'I')) {
                    self.pos += 1;
                    Complex64::new(0.0, value)
                } else {
                    Complex64::new(value, 0.0)
                };
                Ok(single(ExponentVector::new(0, 0), c))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(Error::Syntax {
                position: at,
                message: "unexpected end of input".into(),
            }),
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        self.digits();
        if self.peek() == Some(b'.') {
            self.pos += 1;
            self.digits();
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.digits().is_empty() {
                self.pos = mark;
                return Err(self.error("malformed exponent in number"));
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii number");
        text.parse().map_err(|_| Error::Syntax {
            position: start,
            message: format!("malformed number '{text}'"),
        })
    }
}

fn single(e: ExponentVector, c: Complex64) -> Table {
    Table::from([(e, c)])
}

fn multiply(a: &Table, b: &Table) -> Table {
    let mut out = Table::new();
    for (e, c) in a {
        for (f, d) in b {
            *out.entry(ExponentVector::new(e.i + f.i, e.j + f.j)).or_default() += c * d;
        }
    }
    out
}

fn invert_monomial(t: &Table) -> Option<Table> {
    let mut nonzero = t.iter().filter(|(_, c)| c.norm() > 0.0);
    let (e, c) = nonzero.next()?;
    if nonzero.next().is_some() {
        return None;
    }
    Some(single(ExponentVector::new(-e.i, -e.j), c.inv()))
}

fn pow(base: &Table, n: i64, at: usize) -> Result<Table> {
    if n > 4096 {
        return Err(Error::Syntax {
            position: at,
            message: "exponent too large".into(),
        });
    }
    let mut acc = single(ExponentVector::new(0, 0), Complex64::new(1.0, 0.0));
    for _ in 0..n {
        acc = multiply(&acc, base);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn terms(p: &SparsePoly) -> Vec<(i64, i64, f64, f64)> {
        p.terms().map(|(e, c)| (e.i, e.j, c.re, c.im)).collect()
    }

    #[test]
    fn parses_explicit_products() {
        let p = parse_poly("2*x*y + 9*x*y^2").unwrap();
        assert_eq!(terms(&p), vec![(1, 1, 2.0, 0.0), (1, 2, 9.0, 0.0)]);
        let five = parse_poly("5").unwrap();
        assert_eq!(terms(&five), vec![(0, 0, 5.0, 0.0)]);
    }

    #[test]
    fn parses_rationals_complex_and_products() {
        let p = parse_poly("-2/9 + (1.5 - 2i)*x^3 - I*y").unwrap();
        assert_eq!(
            terms(&p),
            vec![(0, 0, -2.0 / 9.0, 0.0), (0, 1, 0.0, -1.0), (3, 0, 1.5, -2.0)]
        );
        let q = parse_poly("(x + y)*(x - y)").unwrap();
        assert_eq!(terms(&q), vec![(0, 2, -1.0, 0.0), (2, 0, 1.0, 0.0)]);
        let r = parse_poly("x^-2*y^(-1) + 3/x").unwrap();
        assert_eq!(terms(&r), vec![(-2, -1, 1.0, 0.0), (-1, 0, 3.0, 0.0)]);
        let s = parse_poly("1.25e-3*x^2*y").unwrap();
        assert_eq!(terms(&s), vec![(2, 1, 1.25e-3, 0.0)]);
    }

    #[test]
    fn reports_error_positions() {
        match parse_poly("2*x + * y") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("x^") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("x / (x + y)"), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse_poly("x z"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_poly("   "), Err(Error::Syntax { .. })));
    }

    #[test]
    fn rejects_zero() {
        assert_eq!(parse_poly("x - x"), Err(Error::ZeroPolynomial));
        assert_eq!(parse_poly("0"), Err(Error::ZeroPolynomial));
    }

    fn arb_poly() -> impl Strategy<Value = SparsePoly> {
        let coeff = prop_oneof![
            (-1e3f64..1e3).prop_map(|re| Complex64::new(re, 0.0)),
            (-1e3f64..1e3, -1e3f64..1e3).prop_map(|(re, im)| Complex64::new(re, im)),
            (-1e-7f64..1e-7, 1e8f64..1e9).prop_map(|(re, im)| Complex64::new(re, im)),
        ];
        prop::collection::vec(((-5i64..12, -5i64..12), coeff), 1..12).prop_filter_map(
            "nonzero",
            |t| {
                SparsePoly::from_terms(t.into_iter().map(|((i, j), c)| (ExponentVector::new(i, j), c)))
                    .ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn formatted_text_reparses_exactly(p in arb_poly()) {
            let text = p.to_string();
            let back = parse_poly_with_tolerance(&text, 0.0).unwrap();
            prop_assert_eq!(back, p, "text was {}", text);
        }
    }
}
