//! ```text
//! biq n=3
//! # NUM/DEN i j k l   (coefficient of x_i x_j y_k y_l, 1-based, i ≤ j, k ≤ l)
//! 12/1 1 1 1 1
//! ```

use super::{BiIndex, BiquadraticForm};
use crate::error::{Error, Result};
use crate::rational::format_rational;
use crate::textio::{content_lines, header_usize, parse_header, rational_at};

impl BiquadraticForm {
    pub fn to_text(&self) -> String {
        let mut s = format!("biq n={}\n", self.n);
        for (k, c) in &self.coeffs {
            s.push_str(&format!(
                "{} {} {} {} {}\n",
                format_rational(c),
                k.x.0 + 1,
                k.x.1 + 1,
                k.y.0 + 1,
                k.y.1 + 1
            ));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty biquadratic file"))?;
        let fields = parse_header(hl, header, "biq")?;
        let n = header_usize(&fields, "n", hl)?;
        if n == 0 {
            return Err(Error::parse(hl, "block size must be at least 1"));
        }
        let mut b = BiquadraticForm::zero(n);
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 5 {
                return Err(Error::parse(ln, "expected `NUM/DEN i j k l`"));
            }
            let c = rational_at(toks[0], ln)?;
            let mut idx = [0usize; 4];
            for (slot, t) in idx.iter_mut().zip(&toks[1..]) {
                let v: usize = t
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("invalid index `{t}`")))?;
                if v == 0 || v > n {
                    return Err(Error::parse(ln, format!("index {v} outside 1..={n}")));
                }
                *slot = v - 1;
            }
            if idx[0] > idx[1] || idx[2] > idx[3] {
                return Err(Error::parse(ln, "indices must satisfy i ≤ j and k ≤ l"));
            }
            b.add(BiIndex::new(idx[0], idx[1], idx[2], idx[3]), c)?;
        }
        Ok(b)
    }
}
