//! Dimension counts of biquadratic form spaces.

use crate::error::{Error, Result};
use crate::rational::binomial;

fn check(n: usize) -> Result<u64> {
    if n < 1 {
        return Err(Error::DimensionMismatch {
            what: "block size (at least 1)",
            expected: 1,
            found: n,
        });
    }
    Ok(n as u64)
}

/// All n-ary biquadratic forms: `C(n+1, 2)²`.
pub fn dim_nary(n: usize) -> Result<u64> {
    let t = binomial(check(n)? + 1, 2);
    Ok(t * t)
}

/// Symmetric ones: `(C(n+1, 2)² + C(n+1, 2)) / 2`.
pub fn dim_symmetric(n: usize) -> Result<u64> {
    let t = binomial(check(n)? + 1, 2);
    Ok((t * t + t) / 2)
}

/// Hessian biquadratic forms of quartics: `C(n+3, 4)`.
pub fn dim_hessian(n: usize) -> Result<u64> {
    Ok(binomial(check(n)? + 3, 4))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let all = |n| (dim_nary(n).unwrap(), dim_symmetric(n).unwrap(), dim_hessian(n).unwrap());
        assert_eq!(all(1), (1, 1, 1));
        assert_eq!(all(2), (9, 6, 5));
        assert_eq!(all(3), (36, 21, 15));
        assert!(dim_nary(0).is_err());
    }
}
