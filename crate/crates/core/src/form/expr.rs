use super::{Form, Monomial};
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};
use num_traits::One;

/// Parses a homogeneous polynomial written as a sum of terms such as
/// `x1^2 + x2^2`, `-3/2*x1*x2`, or `1/12 x3^4`. No parentheses.
///
/// `names` lists the variable names in index order.
pub fn parse_expression(s: &str, names: &[String]) -> Result<Form> {
    let err = |m: String| Error::parse(1, m);
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut leading_sign = false;
    for ch in s.chars() {
        if ch == '+' || ch == '-' {
            let body = cur.trim();
            if body.is_empty() {
                if !terms.is_empty() || leading_sign {
                    return Err(err(format!("dangling `{ch}` in `{s}`")));
                }
                leading_sign = true;
            } else {
                terms.push((neg, body.to_string()));
            }
            neg = ch == '-';
            cur.clear();
        } else {
            cur.push(if ch.is_whitespace() { ' ' } else { ch });
        }
    }
    let body = cur.trim().to_string();
    if body.is_empty() {
        return Err(err(format!("empty term in `{s}`")));
    }
    terms.push((neg, body));

    let n = names.len();
    let mut out: Option<Form> = None;
    for (neg, body) in terms {
        let mut coef = Rational::one();
        let mut expo = vec![0u32; n];
        for factor in body.split(['*', ' ']).filter(|f| !f.is_empty()) {
            let (base, power) = match factor.split_once('^') {
                Some((b, p)) => (
                    b,
                    p.parse::<u32>()
                        .map_err(|_| err(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            if let Some(i) = names.iter().position(|nm| nm == base) {
                expo[i] += power;
            } else {
                let c = parse_rational(base)
                    .map_err(|_| err(format!("unknown variable or number `{base}`")))?;
                coef *= num_traits::pow(c, power as usize);
            }
        }
        if neg {
            coef = -coef;
        }
        let t = Form::term(Monomial::new(expo), coef);
        out = Some(match out {
            None => t,
            Some(acc) => acc.checked_add(&t).map_err(|_| err(format!("`{s}` is not homogeneous")))?,
        });
    }
    Ok(out.expect("at least one term"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::x_names;
    use crate::rational::{int, rat};

    #[test]
    fn parses_multiplier() {
        let f = parse_expression("x1^2+x2^2", &x_names(3)).unwrap();
        assert_eq!(f, &Form::var(3, 0).pow(2) + &Form::var(3, 1).pow(2));
    }

    #[test]
    fn coefficients_and_signs() {
        let f = parse_expression("-3/2*x1*x2 + 1/12 x3^2", &x_names(3)).unwrap();
        assert_eq!(f.coefficient(&Monomial::new(vec![1, 1, 0])), rat(-3, 2));
        assert_eq!(f.coefficient(&Monomial::new(vec![0, 0, 2])), rat(1, 12));
        let g = parse_expression("2*3*x1", &x_names(1)).unwrap();
        assert_eq!(g.coefficient(&Monomial::new(vec![1])), int(6));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_expression("x1^2 + x2", &x_names(2)).is_err());
        assert!(parse_expression("x1 + z", &x_names(2)).is_err());
        assert!(parse_expression("x1 +", &x_names(2)).is_err());
        assert!(parse_expression("", &x_names(2)).is_err());
    }
}
