//! Text format for Laurent matrices.
//!
//! A document is a bracketed matrix, rows separated by `;`, entries by `,`.
//! Each entry is a signed sum of terms; a term is a coefficient, a power of
//! `z`, or both (with an optional `*` between them). Coefficients are
//! integers, fractions `n/d`, or decimals, all read exactly; exponents are
//! signed integers, so `z^-1` is valid. Whitespace is insignificant.
//!
//! `parse_matrix` and `render_matrix` round-trip: rendering a parsed matrix
//! and reparsing yields the identical value. Rendering always uses exact
//! integer/fraction coefficients; `render_matrix_approx` writes decimal
//! coefficients instead (shortest form that round-trips through f64) and is
//! meant for numerically derived results.

use std::collections::BTreeMap;
use std::fmt;

use stokern::poly::LaurentPolynomial;
use stokern::rational::{
    rat, rat_from_decimal, rat_from_fraction_str, rat_from_int_str, rat_to_f64, Rational,
};
use stokern::LaurentMatrix;

/// Parse failure with 1-based position and what was expected there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Scanner {
    fn new(text: &str) -> Self {
        Scanner { chars: text.chars().collect(), pos: 0, line: 1, column: 1 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into() }
    }

    fn expect(&mut self, c: char, what: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn digits(&mut self, what: &str) -> Result<String, ParseError> {
        let mut s = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.bump().expect("digit"));
        }
        if s.is_empty() {
            Err(self.error(format!("expected {what}")))
        } else {
            Ok(s)
        }
    }

    /// coeff := decimal | int ('/' int)?
    fn coefficient(&mut self) -> Result<Rational, ParseError> {
        let start = (self.line, self.column);
        let int_part = self.digits("a number")?;
        match self.peek() {
            Some('.') => {
                self.bump();
                let frac = self.digits("digits after the decimal point")?;
                rat_from_decimal(&int_part, &frac).ok_or_else(|| ParseError {
                    line: start.0,
                    column: start.1,
                    message: "invalid decimal".into(),
                })
            }
            Some('/') => {
                self.bump();
                self.skip_ws();
                let den = self.digits("a denominator")?;
                rat_from_fraction_str(&int_part, &den).ok_or_else(|| ParseError {
                    line: start.0,
                    column: start.1,
                    message: "zero denominator".into(),
                })
            }
            _ => rat_from_int_str(&int_part).ok_or_else(|| ParseError {
                line: start.0,
                column: start.1,
                message: "invalid integer".into(),
            }),
        }
    }

    /// zpow := 'z' ('^' signed_int)?  The caller has seen the 'z'.
    fn exponent(&mut self) -> Result<i64, ParseError> {
        self.bump(); // the 'z'
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.bump();
        self.skip_ws();
        let negative = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        self.skip_ws();
        let digits = self.digits("an exponent")?;
        let magnitude: i64 = digits
            .parse()
            .map_err(|_| self.error("exponent out of range"))?;
        Ok(if negative { -magnitude } else { magnitude })
    }

    /// term := coeff | coeff '*'? zpow | zpow
    fn term(&mut self) -> Result<(Rational, i64), ParseError> {
        self.skip_ws();
        if self.peek() == Some('z') {
            return Ok((rat(1, 1), self.exponent()?));
        }
        let c = self.coefficient()?;
        self.skip_ws();
        if self.peek() == Some('*') {
            self.bump();
            self.skip_ws();
            if self.peek() != Some('z') {
                return Err(self.error("expected z after *"));
            }
            return Ok((c, self.exponent()?));
        }
        if self.peek() == Some('z') {
            return Ok((c, self.exponent()?));
        }
        Ok((c, 0))
    }

    /// entry := ('+'|'-')? term (('+'|'-') term)*
    ///
    /// The optional leading sign is a deliberate superset of the grammar so
    /// that rendered entries such as `-z + 1` reparse directly.
    fn entry(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
        let mut sign = rat(1, 1);
        self.skip_ws();
        if self.peek() == Some('-') {
            self.bump();
            sign = rat(-1, 1);
        } else if self.peek() == Some('+') {
            self.bump();
        }
        loop {
            let (c, k) = self.term()?;
            let signed = &sign * &c;
            let slot = acc.entry(k).or_insert_with(|| rat(0, 1));
            *slot = &*slot + &signed;
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    sign = rat(1, 1);
                }
                Some('-') => {
                    self.bump();
                    sign = rat(-1, 1);
                }
                _ => break,
            }
        }
        let acc: BTreeMap<i64, Rational> =
            acc.into_iter().filter(|(_, c)| *c != rat(0, 1)).collect();
        let Some((&low, _)) = acc.iter().next() else {
            return Ok(LaurentPolynomial::zero());
        };
        let high = *acc.keys().next_back().expect("nonempty");
        let mut coeffs = vec![rat(0, 1); (high - low + 1) as usize];
        for (k, c) in acc {
            coeffs[(k - low) as usize] = c;
        }
        Ok(LaurentPolynomial::from_coefficients(low, coeffs))
    }

    fn row(&mut self) -> Result<Vec<LaurentPolynomial>, ParseError> {
        let mut entries = vec![self.entry()?];
        loop {
            self.skip_ws();
            if self.peek() == Some(',') {
                self.bump();
                entries.push(self.entry()?);
            } else {
                return Ok(entries);
            }
        }
    }
}

/// Parses a matrix document. The entire input must be consumed apart from
/// whitespace.
pub fn parse_matrix(text: &str) -> Result<LaurentMatrix, ParseError> {
    let mut s = Scanner::new(text);
    s.expect('[', "[")?;
    let mut rows = vec![s.row()?];
    loop {
        s.skip_ws();
        match s.peek() {
            Some(';') => {
                s.bump();
                let row = s.row()?;
                if row.len() != rows[0].len() {
                    return Err(s.error(format!(
                        "row {} has {} entries, expected {}",
                        rows.len() + 1,
                        row.len(),
                        rows[0].len()
                    )));
                }
                rows.push(row);
            }
            Some(']') => {
                s.bump();
                break;
            }
            _ => return Err(s.error("expected , ; or ]")),
        }
    }
    s.skip_ws();
    if s.peek().is_some() {
        return Err(s.error("expected end of input"));
    }
    LaurentMatrix::from_rows(rows).map_err(|e| ParseError {
        line: 1,
        column: 1,
        message: e.to_string(),
    })
}

fn rational_str(c: &Rational) -> String {
    c.to_string()
}

fn push_term(out: &mut String, first: bool, c: &Rational, k: i64) {
    let negative = *c < rat(0, 1);
    if first {
        if negative {
            out.push('-');
        }
    } else if negative {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    let magnitude = if negative { -c } else { c.clone() };
    let power = match k {
        0 => None,
        1 => Some("z".to_string()),
        _ => Some(format!("z^{k}")),
    };
    match (magnitude == rat(1, 1), power) {
        (_, None) => out.push_str(&rational_str(&magnitude)),
        (true, Some(p)) => out.push_str(&p),
        (false, Some(p)) => {
            out.push_str(&rational_str(&magnitude));
            out.push('*');
            out.push_str(&p);
        }
    }
}

/// One polynomial, exact coefficients, highest power first.
pub fn render_poly(p: &LaurentPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<(i64, Rational)> = p
        .terms()
        .filter(|(_, c)| **c != rat(0, 1))
        .map(|(k, c)| (k, c.clone()))
        .collect();
    let mut out = String::new();
    for (i, (k, c)) in terms.iter().rev().enumerate() {
        push_term(&mut out, i == 0, c, *k);
    }
    out
}

fn render_with(m: &LaurentMatrix, f: impl Fn(&LaurentPolynomial) -> String) -> String {
    let mut out = String::from("[");
    for i in 0..m.rows() {
        if i > 0 {
            out.push_str("; ");
        }
        for j in 0..m.cols() {
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&f(m.entry(i, j)));
        }
    }
    out.push(']');
    out
}

/// Canonical exact document; `parse_matrix(render_matrix(m)) == m`.
pub fn render_matrix(m: &LaurentMatrix) -> String {
    render_with(m, render_poly)
}

/// Decimal-coefficient document for numerically derived matrices: each
/// coefficient is printed as the shortest decimal that recovers the same
/// f64, so the document stays within the input grammar at full precision.
pub fn render_matrix_approx(m: &LaurentMatrix) -> String {
    render_with(m, |p| {
        if p.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<(i64, f64)> = p
            .terms()
            .map(|(k, c)| (k, rat_to_f64(c)))
            .filter(|(_, v)| *v != 0.0)
            .collect();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, v)) in terms.iter().rev().enumerate() {
            let negative = *v < 0.0;
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = v.abs();
            let power = match k {
                0 => None,
                1 => Some("z".to_string()),
                _ => Some(format!("z^{k}")),
            };
            match power {
                None => out.push_str(&format_f64(mag)),
                Some(p) if mag == 1.0 => out.push_str(&p),
                Some(p) => {
                    out.push_str(&format_f64(mag));
                    out.push('*');
                    out.push_str(&p);
                }
            }
        }
        out
    })
}

/// Shortest decimal round-trip form, always with a decimal point or plain
/// integer digits (never exponent notation), so it re-parses as a grammar
/// coefficient.
fn format_f64(v: f64) -> String {
    format!("{v}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str) -> LaurentPolynomial {
        parse_matrix(&format!("[{text}]")).unwrap().entry(0, 0).clone()
    }

    #[test]
    fn parses_the_documented_examples() {
        let m = parse_matrix("[ z^2 - 3/2*z + 0.7 , 1 ; 0 , z - 1/2 ]").unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 2);
        let e = m.entry(0, 0);
        assert_eq!(e.coeff(2), rat(1, 1));
        assert_eq!(e.coeff(1), rat(-3, 2));
        assert_eq!(e.coeff(0), rat(7, 10));
        assert_eq!(m.entry(1, 1).coeff(0), rat(-1, 2));

        let k = parse_matrix("[ z + 0.5 , z + 0.2 ]").unwrap();
        assert_eq!(k.entry(0, 0).coeff(0), rat(1, 2));
        assert_eq!(k.entry(0, 1).coeff(0), rat(1, 5));
    }

    #[test]
    fn reports_positions() {
        let e = parse_matrix("[ z ^ ]").unwrap_err();
        assert_eq!((e.line, e.column), (1, 7));
        assert!(e.message.contains("exponent"));

        let e = parse_matrix("[1, 2; 3]").unwrap_err();
        assert!(e.message.contains("row 2 has 1 entries, expected 2"));

        let e = parse_matrix("[1] trailing").unwrap_err();
        assert!(e.message.contains("end of input"));

        let e = parse_matrix("[1/0]").unwrap_err();
        assert!(e.message.contains("zero denominator"));

        let e = parse_matrix("[z\n+ ?]").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn grammar_details() {
        assert_eq!(poly("3z"), poly("3 * z"));
        assert_eq!(poly("z^-2"), LaurentPolynomial::monomial(rat(1, 1), -2));
        assert_eq!(poly("z^+2"), LaurentPolynomial::monomial(rat(1, 1), 2));
        assert_eq!(poly("z + z"), poly("2*z"));
        assert_eq!(poly("1 - 1"), LaurentPolynomial::zero());
        assert_eq!(poly("-z + 1"), poly("0 - z + 1"));
        assert_eq!(poly("2.25"), poly("9/4"));
    }

    #[test]
    fn rendering_round_trips() {
        for text in [
            "[0]",
            "[z^2 - 3/2*z + 7/10, 1; 0, z - 1/2]",
            "[-z^-3 + 5, 2/7*z]",
            "[1; -1; 22/7]",
        ] {
            let m = parse_matrix(text).unwrap();
            let printed = render_matrix(&m);
            assert_eq!(parse_matrix(&printed).unwrap(), m, "through {printed}");
        }
        assert_eq!(
            render_matrix(&parse_matrix("[ - z - 1/2 , 0.25 ]").unwrap()),
            "[-z - 1/2, 1/4]"
        );
    }

    #[test]
    fn approx_rendering_stays_in_grammar() {
        let m = parse_matrix("[0.1*z - 0.30000000000000004]").unwrap();
        let printed = render_matrix_approx(&m);
        assert_eq!(printed, "[0.1*z - 0.30000000000000004]");
        parse_matrix(&printed).unwrap();
    }
}
