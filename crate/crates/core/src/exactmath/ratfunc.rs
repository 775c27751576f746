use num_rational::BigRational;
use num_traits::One;

use super::{Field, UniPoly};

type Poly = UniPoly<BigRational>;

/// Element of the rational function field `Q(x)`, kept in lowest terms with a
/// monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().unwrap().clone();
        let inv = <BigRational as One>::one() / lead;
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::constant(<BigRational as One>::one()),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::constant(<BigRational as One>::one()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::new(&self.num + &rhs.num, self.den.clone());
        }
        Self::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return <Self as Field>::zero();
        }
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
    fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl RatFunc {
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0) && self.den.coeff(0).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, Matrix};

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn reduces_to_lowest_terms() {
        let f = RatFunc::new(&p(&[-1, 1]) * &p(&[1, 1]), p(&[2, 2]));
        assert_eq!(f.numer(), &p(&[-1, 1]).scale(&crate::exactmath::rat(1, 2)));
        assert_eq!(f.denom(), &p(&[1]));
        assert!(f.is_polynomial());
    }

    #[test]
    fn polynomial_matrix_determinant() {
        // [[1, x], [x, x^2]] is singular over Q(x)
        let m = Matrix::from_rows(vec![
            vec![RatFunc::from(p(&[1])), RatFunc::from(p(&[0, 1]))],
            vec![RatFunc::from(p(&[0, 1])), RatFunc::from(p(&[0, 0, 1]))],
        ]);
        assert!(m.determinant().is_zero());
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(
            ns[0],
            vec![RatFunc::from(p(&[0, -1])), RatFunc::from(p(&[1]))]
        );
    }
}
