//! Canonical fractions over ℚ(ρ, q).
//!
//! Every scalar is stored as `c · ρ^a q^b · N/D` with
//!
//! - `c` a rational number carrying the sign and all rational content,
//! - `(a, b)` integer exponents of the monomial unit,
//! - `N`, `D` primitive integer polynomials, coprime, with minimum degree 0
//!   in both variables and positive leading coefficients.
//!
//! The representation is unique, so equality is structural. Zero is
//! `c = 0, N = D = 1, a = b = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;
use super::ScalarError;

/// An element of ℚ(ρ, q) in canonical fraction form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScalar {
    coeff: BigRational,
    rho_pow: i64,
    q_pow: i64,
    num: IntPoly,
    den: IntPoly,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar {
            coeff: BigRational::zero(),
            rho_pow: 0,
            q_pow: 0,
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from(BigInt::from(n)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExactScalar {
            coeff: c,
            rho_pow: 0,
            q_pow: 0,
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    /// `ρ^a q^b`.
    pub fn monomial(rho_pow: i64, q_pow: i64) -> Self {
        ExactScalar {
            coeff: BigRational::one(),
            rho_pow,
            q_pow,
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    /// δ = (ρ − ρ^{-1})/(q − q^{-1}).
    pub fn delta() -> Self {
        let rho2m1 = IntPoly::monomial(2, 0, BigInt::one()).sub(&IntPoly::one());
        let q2m1 = IntPoly::monomial(0, 2, BigInt::one()).sub(&IntPoly::one());
        Self::reduced(BigRational::one(), -1, 1, rho2m1, q2m1, false)
    }

    /// Canonicalizing constructor. `with_gcd = false` is allowed only when
    /// the caller guarantees numerator and denominator are coprime.
    pub(super) fn reduced(
        mut coeff: BigRational,
        mut rho_pow: i64,
        mut q_pow: i64,
        mut num: IntPoly,
        mut den: IntPoly,
        with_gcd: bool,
    ) -> Self {
        assert!(!den.is_zero(), "zero denominator in scalar construction");
        if coeff.is_zero() || num.is_zero() {
            return Self::zero();
        }
        let cn = num.content();
        let cd = den.content();
        if !cn.is_one() {
            num = num.div_bigint_exact(&cn);
        }
        if !cd.is_one() {
            den = den.div_bigint_exact(&cd);
        }
        coeff *= BigRational::new(cn, cd);
        let (a, b) = num.min_degrees();
        if a > 0 || b > 0 {
            num = num.div_monomial(a, b);
            rho_pow += a as i64;
            q_pow += b as i64;
        }
        let (a, b) = den.min_degrees();
        if a > 0 || b > 0 {
            den = den.div_monomial(a, b);
            rho_pow -= a as i64;
            q_pow -= b as i64;
        }
        if with_gcd && !num.is_one() && !den.is_one() {
            let g = IntPoly::gcd(&num, &den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        if den.leading_is_negative() {
            den = den.neg();
            num = num.neg();
        }
        if num.leading_is_negative() {
            num = num.neg();
            coeff = -coeff;
        }
        ExactScalar {
            coeff,
            rho_pow,
            q_pow,
            num,
            den,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one()
            && self.rho_pow == 0
            && self.q_pow == 0
            && self.num.is_one()
            && self.den.is_one()
    }

    pub(super) fn parts(&self) -> (&BigRational, i64, i64, &IntPoly, &IntPoly) {
        (&self.coeff, self.rho_pow, self.q_pow, &self.num, &self.den)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduced(
            self.coeff.recip(),
            -self.rho_pow,
            -self.q_pow,
            self.den.clone(),
            self.num.clone(),
            false,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Membership in R = ℤ[q^{±1}, ρ^{±1}] localized at q − q^{-1}: true
    /// exactly when the rational content is an integer and the reduced
    /// denominator is a monomial times (q−1)^a (q+1)^b — equivalently, it
    /// divides a unit multiple of a power of q − q^{-1}.
    pub fn is_in_base_ring(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        if !self.coeff.is_integer() {
            return false;
        }
        if self.den.degree_rho().unwrap_or(0) > 0 {
            return false;
        }
        let q_minus_1 = IntPoly::monomial(0, 1, BigInt::one()).sub(&IntPoly::one());
        let q_plus_1 = IntPoly::monomial(0, 1, BigInt::one()).add(&IntPoly::one());
        let mut d = self.den.clone();
        for factor in [q_minus_1, q_plus_1] {
            while let Some(next) = d.div_exact(&factor) {
                d = next;
            }
        }
        d.is_one()
    }

    /// Substitutes ρ = q^n (or ρ = −q^n when `negate` is set), producing an
    /// element of ℚ(q).  Fails when the reduced denominator vanishes under
    /// the substitution.
    pub fn substitute_rho_power(&self, n: i64, negate: bool) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let image = |p: &IntPoly| -> (IntPoly, i64) {
            let shift = p
                .terms()
                .map(|(&(a, b), _)| n * i64::from(a) + i64::from(b))
                .min()
                .expect("non-zero polynomial");
            let poly = IntPoly::from_terms(p.terms().map(|(&(a, b), c)| {
                let e = (n * i64::from(a) + i64::from(b) - shift) as u32;
                let c = if negate && a % 2 == 1 { -c } else { c.clone() };
                ((0, e), c)
            }));
            (poly, shift)
        };
        let (den, den_shift) = image(&self.den);
        if den.is_zero() {
            return Err(ScalarError::SpecializationPole);
        }
        let (num, num_shift) = image(&self.num);
        let coeff = if negate && self.rho_pow.rem_euclid(2) == 1 {
            -self.coeff.clone()
        } else {
            self.coeff.clone()
        };
        Ok(Self::reduced(
            coeff,
            0,
            self.q_pow + n * self.rho_pow + num_shift - den_shift,
            num,
            den,
            true,
        ))
    }

    fn add_impl(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = IntPoly::gcd(&self.den, &other.den);
        let d1g = self.den.div_exact(&g).expect("gcd divides denominator");
        let d2g = other.den.div_exact(&g).expect("gcd divides denominator");
        let ra = self.rho_pow.min(other.rho_pow);
        let qa = self.q_pow.min(other.q_pow);
        let scale1 = self.coeff.numer() * other.coeff.denom();
        let scale2 = other.coeff.numer() * self.coeff.denom();
        let m1 = IntPoly::monomial(
            (self.rho_pow - ra) as u32,
            (self.q_pow - qa) as u32,
            scale1,
        );
        let m2 = IntPoly::monomial(
            (other.rho_pow - ra) as u32,
            (other.q_pow - qa) as u32,
            scale2,
        );
        let n = self.num.mul(&d2g).mul(&m1).add(&other.num.mul(&d1g).mul(&m2));
        let den = self.den.mul(&d2g);
        let coeff = BigRational::new(BigInt::one(), self.coeff.denom() * other.coeff.denom());
        Self::reduced(coeff, ra, qa, n, den, true)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g1 = IntPoly::gcd(&self.num, &other.den);
        let g2 = IntPoly::gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::reduced(
            &self.coeff * &other.coeff,
            self.rho_pow + other.rho_pow,
            self.q_pow + other.q_pow,
            n1.mul(&n2),
            d1.mul(&d2),
            false,
        )
    }

    /// Renders the expanded numerator and denominator as Laurent sums,
    /// terms sorted by (ρ-degree, q-degree) descending.
    fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let num_part = laurent_string(
            self.coeff.numer(),
            self.rho_pow,
            self.q_pow,
            &self.num,
        );
        if self.den.is_one() && self.coeff.denom().is_one() {
            num_part
        } else {
            let den_part = laurent_string(self.coeff.denom(), 0, 0, &self.den);
            format!("({num_part}) / ({den_part})")
        }
    }
}

/// Renders `c · ρ^a q^b · p` as a sum of Laurent monomials.
fn laurent_string(c: &BigInt, rho_shift: i64, q_shift: i64, p: &IntPoly) -> String {
    let mut terms: Vec<((i64, i64), BigInt)> = p
        .terms()
        .map(|(&(a, b), v)| ((a as i64 + rho_shift, b as i64 + q_shift), v * c))
        .collect();
    terms.sort();
    let mut out = String::new();
    for (i, ((a, b), v)) in terms.iter().rev().enumerate() {
        let mag = v.abs();
        if i == 0 {
            if v.is_negative() {
                out.push('-');
            }
        } else if v.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut pieces: Vec<String> = Vec::new();
        if !mag.is_one() || (*a == 0 && *b == 0) {
            pieces.push(mag.to_string());
        }
        if *a != 0 {
            pieces.push(if *a == 1 {
                "rho".to_string()
            } else {
                format!("rho^{a}")
            });
        }
        if *b != 0 {
            pieces.push(if *b == 1 { "q".to_string() } else { format!("q^{b}") });
        }
        out.push_str(&pieces.join("*"));
    }
    out
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                self.$impl_fn(rhs)
            }
        }
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$impl_fn(&rhs)
            }
        }
    };
}

impl ExactScalar {
    fn sub_impl(&self, other: &Self) -> Self {
        self.add_impl(&other.neg_impl())
    }

    fn neg_impl(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = self.clone();
        out.coeff = -out.coeff;
        out
    }
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.neg_impl()
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.neg_impl()
    }
}
