//! ```text
//! sos-cert n=6 split=3
//! Z: 2
//! 1 0 0 | 1 0 0
//! 0 1 0 | 0 1 0
//! Q: 2
//! 1/1 0/1
//! 0/1 1/1
//! MULTIPLIER:
//! form n=3 d=0
//! 1/1 0 0 0
//! SCALE: 1/1
//! ```
//!
//! `split` is omitted, together with the `|` separators, for single-block bases.

use super::SosCertificate;
use crate::error::{Error, Result};
use crate::form::{Form, Monomial};
use crate::linalg::SymRationalMatrix;
use crate::rational::format_rational;
use crate::textio::{content_lines, header_usize, parse_header, rational_at, uint_at};

impl SosCertificate {
    pub fn to_text(&self) -> String {
        let n = self.z.first().map_or(self.multiplier.n_vars(), Monomial::n_vars);
        let mut s = match self.split {
            Some(k) => format!("sos-cert n={n} split={k}\n"),
            None => format!("sos-cert n={n}\n"),
        };
        s.push_str(&format!("Z: {}\n", self.z.len()));
        for m in &self.z {
            let e: Vec<String> = m.exponents().iter().map(u32::to_string).collect();
            match self.split {
                Some(k) if k < e.len() => {
                    s.push_str(&format!("{} | {}\n", e[..k].join(" "), e[k..].join(" ")))
                }
                _ => s.push_str(&format!("{}\n", e.join(" "))),
            }
        }
        s.push_str(&format!("Q: {}\n", self.q.dim()));
        for i in 0..self.q.dim() {
            let row: Vec<String> = self.q.row(i).iter().map(format_rational).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s.push_str("MULTIPLIER:\n");
        s.push_str(&self.multiplier.to_text());
        s.push_str(&format!("SCALE: {}\n", format_rational(&self.scale)));
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = content_lines(text).collect();
        let Some(&(hl, header)) = lines.first() else {
            return Err(Error::parse(1, "empty certificate file"));
        };
        let fields = parse_header(hl, header, "sos-cert")?;
        let n = header_usize(&fields, "n", hl)?;
        let split = if fields.contains_key("split") {
            Some(header_usize(&fields, "split", hl)?)
        } else {
            None
        };
        let mut pos = 1;

        let zlen = section_count(&lines, pos, "Z:")?;
        pos += 1;
        let mut z = Vec::with_capacity(zlen);
        for _ in 0..zlen {
            let &(ln, line) = lines
                .get(pos)
                .ok_or_else(|| Error::parse(last_line(&lines), "truncated Z: section"))?;
            let e = line
                .split_whitespace()
                .filter(|t| *t != "|")
                .map(|t| uint_at(t, ln))
                .collect::<Result<Vec<_>>>()?;
            if e.len() != n {
                return Err(Error::parse(ln, format!("expected {n} exponents, found {}", e.len())));
            }
            z.push(Monomial::new(e));
            pos += 1;
        }

        let dim = section_count(&lines, pos, "Q:")?;
        let qline = lines[pos].0;
        pos += 1;
        let mut values = Vec::with_capacity(dim * dim);
        while values.len() < dim * dim {
            let &(ln, line) = lines
                .get(pos)
                .ok_or_else(|| Error::parse(last_line(&lines), "truncated Q: section"))?;
            for t in line.split_whitespace() {
                values.push(rational_at(t, ln)?);
            }
            pos += 1;
        }
        if values.len() != dim * dim {
            return Err(Error::parse(qline, "Q: section has too many entries"));
        }
        let rows = values.chunks(dim).map(<[_]>::to_vec).collect();
        let q = SymRationalMatrix::from_rows(rows).map_err(|e| Error::parse(qline, e.to_string()))?;

        match lines.get(pos) {
            Some(&(_, "MULTIPLIER:")) => pos += 1,
            Some(&(ln, _)) => return Err(Error::parse(ln, "expected `MULTIPLIER:`")),
            None => return Err(Error::parse(last_line(&lines), "missing `MULTIPLIER:`")),
        }
        let start = pos;
        while pos < lines.len() && !lines[pos].1.starts_with("SCALE:") {
            pos += 1;
        }
        let body: String = lines[start..pos].iter().map(|(_, l)| format!("{l}\n")).collect();
        let multiplier = Form::from_text(&body).map_err(|e| match e {
            Error::Parse { line, message } => {
                Error::parse(lines.get(start + line - 1).map_or(0, |l| l.0), message)
            }
            other => other,
        })?;

        let &(sl, sline) = lines
            .get(pos)
            .ok_or_else(|| Error::parse(last_line(&lines), "missing `SCALE:`"))?;
        let scale = rational_at(sline["SCALE:".len()..].trim(), sl)?;
        if pos + 1 != lines.len() {
            return Err(Error::parse(lines[pos + 1].0, "unexpected content after SCALE:"));
        }
        let cert = SosCertificate::with_multiplier(z, q, multiplier, scale)
            .map_err(|e| Error::parse(sl, e.to_string()))?;
        Ok(match split {
            Some(k) => cert.with_split(k),
            None => cert,
        })
    }
}

fn section_count(lines: &[(usize, &str)], pos: usize, tag: &str) -> Result<usize> {
    let &(ln, line) = lines
        .get(pos)
        .ok_or_else(|| Error::parse(last_line(lines), format!("missing `{tag}`")))?;
    let rest = line
        .strip_prefix(tag)
        .ok_or_else(|| Error::parse(ln, format!("expected `{tag}`")))?;
    rest.trim()
        .parse()
        .map_err(|_| Error::parse(ln, format!("`{tag}` needs a count")))
}

fn last_line(lines: &[(usize, &str)]) -> usize {
    lines.last().map_or(1, |l| l.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn sample() -> SosCertificate {
        let z = vec![Monomial::new(vec![1, 0, 1, 0]), Monomial::new(vec![0, 1, 0, 1])];
        let q = SymRationalMatrix::from_rows(vec![vec![int(2), rat(1, 2)], vec![rat(1, 2), int(3)]])
            .unwrap();
        let m = &Form::var(2, 0).pow(2) + &Form::var(2, 1).pow(2);
        SosCertificate::with_multiplier(z, q, m, rat(1, 384)).unwrap().with_split(2)
    }

    #[test]
    fn roundtrip_is_bit_exact() {
        let c = sample();
        let text = c.to_text();
        let back = SosCertificate::from_text(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_text(), text);
        assert!(text.contains("1 0 | 1 0\n"));
    }

    #[test]
    fn comments_are_ignored() {
        let text = sample().to_text().replace("Q: 2\n", "# matrix\nQ: 2 # two rows\n");
        assert_eq!(SosCertificate::from_text(&text).unwrap(), sample());
    }

    #[test]
    fn malformed() {
        let good = sample().to_text();
        assert!(SosCertificate::from_text(&good.replace("Z: 2", "Z: 3")).is_err());
        assert!(SosCertificate::from_text(&good.replace("SCALE: 1/384", "SCALE: 0")).is_err());
        assert!(SosCertificate::from_text(&good.replace("1/2 3/1", "1/3 3/1")).is_err());
        assert!(SosCertificate::from_text(&good.replace("MULTIPLIER:", "MULT:")).is_err());
        assert!(SosCertificate::from_text("").is_err());
    }
}
