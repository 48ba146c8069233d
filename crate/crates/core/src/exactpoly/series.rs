use thiserror::Error;

use super::Polynomial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series inversion needs constant term 1, found {0}")]
    LeadingTerm(String),
}

/// Inverts the power series `sum_d components[d] t^d` through `t^max_degree`.
///
/// Returns `b[0..=max_degree]` with `sum_{i+j=d} components[i] * b[j] = delta_{d,0}`.
/// Missing components are treated as zero.
pub fn series_invert(components: &[Polynomial], max_degree: usize) -> Result<Vec<Polynomial>, SeriesError> {
    match components.first() {
        Some(c0) if c0.is_one() => {}
        Some(c0) => return Err(SeriesError::LeadingTerm(c0.to_string())),
        None => return Err(SeriesError::LeadingTerm("0".into())),
    }
    let mut inverse: Vec<Polynomial> = Vec::with_capacity(max_degree + 1);
    inverse.push(Polynomial::one());
    for d in 1..=max_degree {
        let mut acc = Polynomial::zero();
        for i in 1..=d.min(components.len() - 1) {
            acc += &(&components[i] * &inverse[d - i]);
        }
        inverse.push(-acc);
    }
    Ok(inverse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::VarSymbol;

    fn x(j: u32) -> Polynomial {
        Polynomial::var(VarSymbol::x(j, 0))
    }

    #[test]
    fn geometric_series() {
        let inv = series_invert(&[Polynomial::one(), x(1)], 2).unwrap();
        assert_eq!(inv, vec![Polynomial::one(), -x(1), x(1).pow(2)]);
    }

    #[test]
    fn identity_series() {
        let inv = series_invert(&[Polynomial::one(), Polynomial::zero(), Polynomial::zero()], 2).unwrap();
        assert_eq!(inv, vec![Polynomial::one(), Polynomial::zero(), Polynomial::zero()]);
    }

    #[test]
    fn second_complete_class() {
        let inv = series_invert(&[Polynomial::one(), x(1), x(2)], 2).unwrap();
        assert_eq!(inv[2], &x(1).pow(2) - &x(2));
    }

    #[test]
    fn rejects_bad_constant_term() {
        assert!(series_invert(&[Polynomial::integer(2), x(1)], 3).is_err());
        assert!(series_invert(&[], 3).is_err());
    }
}
