//! Text form of quantics, e.g. `-x1^3 + 3*x1*x2^2`.
//!
//! Terms are `c*x<i>^<e>` factors joined by `+`/`-`; coefficients are printed
//! at 12 significant digits, complex ones as `(re+imj)`. Variables are 1-based.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::combinatorics::{enumerate_exponents, ExponentVector};
use crate::error::{Error, Result};

use super::Quantic;

/// Rounds to 12 significant digits and prints the shortest form of the result.
fn g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded}")
}

/// `re`, `imj` or `(re+imj)`.
pub fn format_coefficient(c: Complex64) -> String {
    match (c.re == 0.0, c.im == 0.0) {
        (_, true) => g12(c.re),
        (true, false) => format!("{}j", g12(c.im)),
        (false, false) => {
            let sign = if c.im < 0.0 { '-' } else { '+' };
            format!("({}{}{}j)", g12(c.re), sign, g12(c.im.abs()))
        }
    }
}

fn render_monomial(p: &ExponentVector) -> String {
    p.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Renders a quantic with ordinary monomial coefficients in graded-lex order.
pub fn render_quantic(f: &Quantic<Complex64>) -> String {
    let mut out = String::new();
    for p in enumerate_exponents(f.degree(), f.nvars()) {
        if !f.terms().contains_key(&p) {
            continue;
        }
        let c = f.monomial_coeff(&p).unwrap_or(Complex64::new(f64::NAN, 0.0));
        let negative = c.im == 0.0 && c.re < 0.0;
        let magnitude = if negative { -c } else { c };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = render_monomial(&p);
        let coef = format_coefficient(magnitude);
        match (mono.is_empty(), coef == "1") {
            (true, _) => out.push_str(&coef),
            (false, true) => out.push_str(&mono),
            (false, false) => {
                out.push_str(&coef);
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Invalid(format!("quantic text: {what} at byte {}", self.pos))
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let s = self.src;
        while self.pos < s.len() && (s[self.pos].is_ascii_digit() || s[self.pos] == b'.') {
            self.pos += 1;
        }
        if self.pos < s.len() && (s[self.pos] == b'e' || s[self.pos] == b'E') {
            let mut look = self.pos + 1;
            if look < s.len() && (s[look] == b'+' || s[look] == b'-') {
                look += 1;
            }
            if look < s.len() && s[look].is_ascii_digit() {
                self.pos = look;
                while self.pos < s.len() && s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
        }
        let text = std::str::from_utf8(&s[start..self.pos]).expect("ascii slice");
        text.parse().map_err(|_| self.err("expected a number"))
    }

    fn integer(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii slice")
            .parse()
            .map_err(|_| self.err("expected an integer"))
    }

    /// `number`, `numberj`, or `(re±imj)`.
    fn coefficient(&mut self) -> Result<Complex64> {
        if self.eat(b'(') {
            let mut sign = 1.0;
            if self.eat(b'-') {
                sign = -1.0;
            } else {
                self.eat(b'+');
            }
            let first = sign * self.number()?;
            let value = if self.eat(b'j') {
                Complex64::new(0.0, first)
            } else if self.peek() == Some(b'+') || self.peek() == Some(b'-') {
                let s = if self.eat(b'-') { -1.0 } else { self.eat(b'+'); 1.0 };
                let im = s * self.number()?;
                if !self.eat(b'j') {
                    return Err(self.err("expected 'j' after imaginary part"));
                }
                Complex64::new(first, im)
            } else {
                Complex64::new(first, 0.0)
            };
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(value);
        }
        let v = self.number()?;
        if self.eat(b'j') {
            Ok(Complex64::new(0.0, v))
        } else {
            Ok(Complex64::new(v, 0.0))
        }
    }

    /// `x<i>` or `x<i>^<e>`, returning (0-based variable, exponent).
    fn factor(&mut self) -> Result<(usize, u32)> {
        if !self.eat(b'x') {
            return Err(self.err("expected a variable x<i>"));
        }
        let var = self.integer()?;
        if var == 0 {
            return Err(self.err("variables are numbered from x1"));
        }
        let exp = if self.eat(b'^') { self.integer()? as u32 } else { 1 };
        Ok((var - 1, exp))
    }

    fn term(&mut self) -> Result<(Complex64, Vec<(usize, u32)>)> {
        let mut coef = Complex64::new(1.0, 0.0);
        let mut factors = Vec::new();
        if self.peek() == Some(b'x') {
            factors.push(self.factor()?);
        } else {
            coef = self.coefficient()?;
        }
        while self.eat(b'*') {
            if self.peek() == Some(b'x') {
                factors.push(self.factor()?);
            } else {
                coef *= self.coefficient()?;
            }
        }
        Ok((coef, factors))
    }
}

/// Parses the text form. `nvars` and `degree` default to what the terms imply;
/// they must be given for the zero polynomial.
pub fn parse_quantic(
    text: &str,
    nvars: Option<usize>,
    degree: Option<usize>,
) -> Result<Quantic<Complex64>> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut raw: Vec<(Complex64, Vec<(usize, u32)>)> = Vec::new();
    let mut sign = if cur.eat(b'-') {
        -1.0
    } else {
        cur.eat(b'+');
        1.0
    };
    loop {
        let (c, f) = cur.term()?;
        raw.push((c * sign, f));
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                sign = 1.0;
            }
            Some(b'-') => {
                cur.pos += 1;
                sign = -1.0;
            }
            Some(_) => return Err(cur.err("unexpected character")),
        }
    }
    // a lone "0" denotes the zero polynomial
    raw.retain(|(c, f)| !(f.is_empty() && *c == Complex64::new(0.0, 0.0)));

    let max_var = raw
        .iter()
        .flat_map(|(_, f)| f.iter().map(|&(v, _)| v + 1))
        .max();
    let n = match (nvars, max_var) {
        (Some(n), Some(m)) if m > n => {
            return Err(Error::Invalid(format!(
                "quantic text uses x{m} but only {n} variables were requested"
            )))
        }
        (Some(n), _) => n,
        (None, Some(m)) => m,
        (None, None) => return Err(Error::Invalid("cannot infer the number of variables of the zero polynomial".into())),
    };
    let mut monomials: BTreeMap<ExponentVector, Complex64> = BTreeMap::new();
    let mut k = degree;
    for (c, factors) in raw {
        let mut exps = vec![0u32; n];
        for (v, e) in factors {
            exps[v] += e;
        }
        let p = ExponentVector::new(exps);
        match k {
            None => k = Some(p.degree() as usize),
            Some(d) if d != p.degree() as usize => {
                return Err(Error::Invalid(format!(
                    "quantic text is not homogeneous: term of degree {} in a degree-{d} form",
                    p.degree()
                )))
            }
            _ => {}
        }
        *monomials.entry(p).or_insert(Complex64::new(0.0, 0.0)) += c;
    }
    let k = k.ok_or_else(|| Error::Invalid("cannot infer the degree of the zero polynomial".into()))?;
    Quantic::from_monomials(k, n, monomials)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    #[test]
    fn renders_real_quantic() {
        let f = parse_quantic("3*x1*x2^2 - x1^3", None, None).unwrap();
        assert_eq!(render_quantic(&f), "-x1^3 + 3*x1*x2^2");
        assert_eq!(f.scaled_coeff(&ev(&[1, 2])), Complex64::new(1.0, 0.0));
        assert_eq!(f.scaled_coeff(&ev(&[3, 0])), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn coefficient_formatting() {
        assert_eq!(format_coefficient(Complex64::new(0.1 + 0.2, 0.0)), "0.3");
        assert_eq!(format_coefficient(Complex64::new(1.5, -2.0)), "(1.5-2j)");
        assert_eq!(format_coefficient(Complex64::new(0.0, 0.5)), "0.5j");
        assert_eq!(format_coefficient(Complex64::new(1.0 / 3.0, 0.0)), "0.333333333333");
    }

    #[test]
    fn complex_round_trip() {
        let text = "(1.5-2j)*x1^2 + 0.5j*x1*x2 - 4*x2^2";
        let f = parse_quantic(text, None, None).unwrap();
        assert_eq!(render_quantic(&f), text);
        assert_eq!(parse_quantic(&render_quantic(&f), None, None).unwrap(), f);
    }

    #[test]
    fn explicit_shape_and_zero() {
        let f = parse_quantic("x1^2", Some(3), None).unwrap();
        assert_eq!(f.nvars(), 3);
        let z = parse_quantic("0", Some(2), Some(3)).unwrap();
        assert!(z.is_zero());
        assert_eq!(render_quantic(&z), "0");
        assert!(parse_quantic("0", None, None).is_err());
    }

    #[test]
    fn rejects_malformed_text() {
        assert!(parse_quantic("x1^2 + x2", None, None).is_err());
        assert!(parse_quantic("x0^2", None, None).is_err());
        assert!(parse_quantic("2*y1", None, None).is_err());
        assert!(parse_quantic("x3^2", Some(2), None).is_err());
        assert!(parse_quantic("(1+2)*x1", None, None).is_err());
        assert!(parse_quantic("x1 x2", None, None).is_err());
    }

    #[test]
    fn like_terms_are_merged() {
        let f = parse_quantic("x1*x2 + 2*x2*x1 - 1e-1*x1^2", None, None).unwrap();
        assert_eq!(render_quantic(&f), "-0.1*x1^2 + 3*x1*x2");
    }
}
