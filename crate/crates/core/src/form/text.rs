//! Text formats.
//!
//! Forms:
//! ```text
//! form n=3 d=4
//! # NUM/DEN e1 ... en
//! 1/12 0 0 4
//! ```
//!
//! Polynomial matrices (upper triangle only, 1-based entry indices):
//! ```text
//! pmat dim=3 n=3 d=2
//! # i j NUM/DEN e1 ... en
//! 1 1 1/1 2 0 0
//! ```
//!
//! Writers emit terms in descending lexicographic exponent order, so
//! `to_text(from_text(s)) == s` for any writer output.

use super::{Form, Monomial, PolyMatrix};
use crate::error::{Error, Result};
use crate::rational::format_rational;
use crate::textio::{content_lines, header_usize, parse_header, rational_at, uint_at};

impl Form {
    pub fn to_text(&self) -> String {
        let mut s = format!("form n={} d={}\n", self.n_vars, self.degree);
        for (m, c) in self.terms.iter().rev() {
            s.push_str(&format_rational(c));
            for e in m.exponents() {
                s.push_str(&format!(" {e}"));
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Form> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty form file"))?;
        let fields = parse_header(hl, header, "form")?;
        let n = header_usize(&fields, "n", hl)?;
        let d = header_usize(&fields, "d", hl)? as u32;
        if n == 0 {
            return Err(Error::parse(hl, "a form needs at least one variable"));
        }
        let mut f = Form::zero(n, d);
        for (ln, line) in lines {
            let (m, c) = parse_term_line(line, ln, n)?;
            if m.degree() != d {
                return Err(Error::parse(
                    ln,
                    format!("term of degree {} in a form of degree {d}", m.degree()),
                ));
            }
            f.add_term(m, c);
        }
        Ok(f)
    }
}

fn parse_term_line(line: &str, ln: usize, n: usize) -> Result<(Monomial, crate::Rational)> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != n + 1 {
        return Err(Error::parse(
            ln,
            format!("expected a coefficient and {n} exponents, found {} fields", toks.len()),
        ));
    }
    let c = rational_at(toks[0], ln)?;
    let e = toks[1..]
        .iter()
        .map(|t| uint_at(t, ln))
        .collect::<Result<Vec<_>>>()?;
    Ok((Monomial::new(e), c))
}

impl PolyMatrix {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "pmat dim={} n={} d={}\n",
            self.dim(),
            self.n_vars(),
            self.degree()
        );
        for i in 0..self.dim() {
            for j in i..self.dim() {
                for (m, c) in self.get(i, j).terms().rev() {
                    s.push_str(&format!("{} {} {}", i + 1, j + 1, format_rational(c)));
                    for e in m.exponents() {
                        s.push_str(&format!(" {e}"));
                    }
                    s.push('\n');
                }
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<PolyMatrix> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty matrix file"))?;
        let fields = parse_header(hl, header, "pmat")?;
        let dim = header_usize(&fields, "dim", hl)?;
        let n = header_usize(&fields, "n", hl)?;
        let d = header_usize(&fields, "d", hl)? as u32;
        let mut entries = vec![vec![Form::zero(n, d); dim]; dim];
        for (ln, line) in lines {
            let (idx, rest) = split_two_indices(line, ln)?;
            let (i, j) = idx;
            if i == 0 || j == 0 || i > dim || j > dim || i > j {
                return Err(Error::parse(
                    ln,
                    format!("entry ({i}, {j}) is not in the upper triangle of a {dim}×{dim} matrix"),
                ));
            }
            let (m, c) = parse_term_line(rest, ln, n)?;
            if m.degree() != d {
                return Err(Error::parse(ln, "entry term has the wrong degree"));
            }
            entries[i - 1][j - 1].add_term(m, c);
        }
        for i in 0..dim {
            for j in 0..i {
                entries[i][j] = entries[j][i].clone();
            }
        }
        PolyMatrix::from_rows(entries)
    }
}

fn split_two_indices(line: &str, ln: usize) -> Result<((usize, usize), &str)> {
    let mut it = line.splitn(3, char::is_whitespace);
    let i = it.next().unwrap_or("");
    let j = it.next().unwrap_or("");
    let rest = it.next().unwrap_or("");
    let p = |t: &str| {
        t.parse::<usize>()
            .map_err(|_| Error::parse(ln, format!("invalid index `{t}`")))
    };
    Ok(((p(i)?, p(j)?), rest))
}
