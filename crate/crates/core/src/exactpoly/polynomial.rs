use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{rat, render_abs_rational, Monomial, Rational, VarSymbol};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial has an empty term
/// map and structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

/// Result of a homogeneity query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial is homogeneous of every degree.
    AnyDegree,
    Degree(i64),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn degree(self) -> Option<i64> {
        match self {
            Homogeneity::Degree(d) => Some(d),
            _ => None,
        }
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn integer(c: i64) -> Self {
        Polynomial::constant(rat(c))
    }

    pub fn var(symbol: VarSymbol) -> Self {
        Polynomial::term(rat(1), Monomial::var(symbol))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Polynomial, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn scale_int(&self, factor: i64) -> Polynomial {
        self.scale(&rat(factor))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Graded degree data of the polynomial.
    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Homogeneity::AnyDegree,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    /// All symbols occurring with nonzero exponent.
    pub fn symbols(&self) -> Vec<VarSymbol> {
        let mut out: Vec<VarSymbol> = self.terms.keys().flat_map(|m| m.symbols().copied()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Substitutes every symbol by a polynomial. Symbols for which `image`
    /// returns `None` are kept as they are.
    pub fn substitute(&self, image: &impl Fn(&VarSymbol) -> Option<Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            for &(s, e) in m.factors() {
                let factor = match image(&s) {
                    Some(p) => p.pow(e),
                    None => Polynomial::term(rat(1), Monomial::power(s, e)),
                };
                acc = &acc * &factor;
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc;
        }
        out
    }

    /// Groups terms by the exponent of `symbol`: `p = sum_e symbol^e * out[e]`.
    pub fn collect_by(&self, symbol: &VarSymbol) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(symbol);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::integer(c)
    }
}

impl From<VarSymbol> for Polynomial {
    fn from(s: VarSymbol) -> Self {
        Polynomial::var(s)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    /// Canonical rendering, highest degree first: `x[1]@0^2 - 1/2*x[2]@0 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = render_abs_rational(c);
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::ratio;

    fn x(j: u32) -> Polynomial {
        Polynomial::var(VarSymbol::x(j, 0))
    }

    #[test]
    fn difference_of_squares() {
        let a = &x(1) + &Polynomial::one();
        let b = &x(1) - &Polynomial::one();
        assert_eq!(&a * &b, &(&x(1) * &x(1)) - &Polynomial::one());
    }

    #[test]
    fn additive_identity() {
        let p = &x(1) * &x(2) + Polynomial::integer(3);
        assert_eq!(&p + &Polynomial::zero(), p);
    }

    #[test]
    fn exact_rational_product() {
        let xi = VarSymbol::xi(1);
        let a = Polynomial::term(ratio(1, 2), Monomial::var(xi));
        let b = Polynomial::term(ratio(2, 3), Monomial::var(xi));
        assert_eq!(&a * &b, Polynomial::term(ratio(1, 3), Monomial::power(xi, 2)));
    }

    #[test]
    fn homogeneity_cases() {
        assert_eq!(x(2).homogeneous_degree(), Homogeneity::Degree(4));
        let mixed = &x(1) * &Polynomial::var(VarSymbol::xi(1));
        assert_eq!(mixed.homogeneous_degree(), Homogeneity::Degree(4));
        assert_eq!((&x(1) + &x(2)).homogeneous_degree(), Homogeneity::Inhomogeneous);
        assert_eq!(Polynomial::zero().homogeneous_degree(), Homogeneity::AnyDegree);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &x(1) - &x(1);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn rendering() {
        let p = &(&x(1) * &x(1)) - &x(2);
        assert_eq!(p.to_string(), "x[1]@0^2 - x[2]@0");
        let q = Polynomial::term(ratio(-3, 2), Monomial::var(VarSymbol::xi(2))) + Polynomial::one();
        assert_eq!(q.to_string(), "-3/2*xi{2} + 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn substitution_and_collection() {
        let xi = VarSymbol::xi(1);
        // x1 -> xi + 1 in x1^2
        let p = x(1).pow(2);
        let sub = p.substitute(&|s: &VarSymbol| (*s == VarSymbol::x(1, 0)).then(|| &Polynomial::var(xi) + &Polynomial::one()));
        let parts = sub.collect_by(&xi);
        assert_eq!(parts[&0], Polynomial::one());
        assert_eq!(parts[&1], Polynomial::integer(2));
        assert_eq!(parts[&2], Polynomial::one());
    }
}
