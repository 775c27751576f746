use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Scalar;

/// Univariate polynomial, coefficients stored constant term first.
///
/// The representation is canonical: trailing zero coefficients are always
/// stripped, so the zero polynomial is the empty coefficient list and
/// structural equality coincides with polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UniPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(S::one(), 1)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    /// Sign of `p(n)` for all sufficiently large `n`.
    pub fn eventual_sign(&self) -> Ordering {
        match self.leading() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    /// `p(n) > 0` for `n >> 0`.
    pub fn is_positive(&self) -> bool {
        self.eventual_sign() == Ordering::Greater
    }

    /// Asymptotic comparison, see [`poly_order`].
    pub fn order(&self, other: &Self) -> Ordering {
        poly_order(self, other)
    }

    /// Euclidean division by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![S::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone() / lead.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let l = l.clone();
                Self::new(self.coeffs.iter().map(|c| c.clone() / l.clone()).collect())
            }
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// `p ≺ q` iff `p(n) < q(n)` for all `n >> 0`.
///
/// Decided by the sign of the leading coefficient of `p - q`, which is the
/// same as comparing coefficients lexicographically from the top degree down.
pub fn poly_order<S: Scalar>(p: &UniPoly<S>, q: &UniPoly<S>) -> Ordering {
    let top = p.coeffs.len().max(q.coeffs.len());
    for k in (0..top).rev() {
        let (a, b) = (p.coeff(k), q.coeff(k));
        match a.partial_cmp(&b) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    Ordering::Equal
}

impl<S: Scalar> PartialOrd for UniPoly<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(poly_order(self, other))
    }
}

impl<S: Scalar> From<S> for UniPoly<S> {
    fn from(c: S) -> Self {
        Self::constant(c)
    }
}

impl<S: Scalar> Add for &UniPoly<S> {
    type Output = UniPoly<S>;
    fn add(self, rhs: Self) -> UniPoly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for &UniPoly<S> {
    type Output = UniPoly<S>;
    fn sub(self, rhs: Self) -> UniPoly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Mul for &UniPoly<S> {
    type Output = UniPoly<S>;
    fn mul(self, rhs: Self) -> UniPoly<S> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<S: Scalar> Neg for &UniPoly<S> {
    type Output = UniPoly<S>;
    fn neg(self) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for UniPoly<S> {
            type Output = UniPoly<S>;
            fn $m(self, rhs: Self) -> UniPoly<S> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> Neg for UniPoly<S> {
    type Output = UniPoly<S>;
    fn neg(self) -> UniPoly<S> {
        -&self
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}
