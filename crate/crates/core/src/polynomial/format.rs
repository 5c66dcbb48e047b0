use std::fmt::{self, Write};

use num_complex::Complex64;

use super::SparsePoly;

/// Shortest text that parses back to exactly the same `f64`.
pub(crate) fn real(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn monomial(out: &mut String, i: i64, j: i64) {
    for (name, e) in [('x', i), ('y', j)] {
        if e == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push(name);
        if e != 1 {
            write!(out, "^{e}").expect("write to string");
        }
    }
}

pub(super) fn write_poly(f: &mut fmt::Formatter<'_>, p: &SparsePoly) -> fmt::Result {
    for (k, (e, c)) in p.terms().enumerate() {
        let mut mono = String::new();
        monomial(&mut mono, e.i, e.j);
        let (negative, coeff) = coefficient(c);
        match (k, negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        match (coeff.as_str(), mono.is_empty()) {
            (_, true) => f.write_str(&coeff)?,
            ("1", false) => f.write_str(&mono)?,
            (_, false) => write!(f, "{coeff}*{mono}")?,
        }
    }
    Ok(())
}

/// Splits off a leading sign for real coefficients; complex ones are
/// parenthesized as `(re+imi)`.
fn coefficient(c: Complex64) -> (bool, String) {
    if c.im == 0.0 {
        (c.re.is_sign_negative(), real(c.re.abs()))
    } else {
        let sign = if c.im.is_sign_negative() { '-' } else { '+' };
        (false, format!("({}{sign}{}i)", real(c.re), real(c.im.abs())))
    }
}

#[cfg(test)]
mod tests {
    use crate::polynomial::parse_poly;

    #[test]
    fn formats_readably() {
        let p = parse_poly("2*x*y + 9*x*y^2").unwrap();
        assert_eq!(p.to_string(), "2*x*y + 9*x*y^2");
        let q = parse_poly("-x^2 + y^-3 - 0.5 + (1-2i)*x*y").unwrap();
        assert_eq!(q.to_string(), "y^-3 - 0.5 + (1-2i)*x*y - x^2");
        let r = parse_poly("1e-20*x + 3e20*y").unwrap();
        assert_eq!(r.to_string(), "3e20*y");
    }
}
