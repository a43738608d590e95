//! Univariate rational functions in an auxiliary variable u with
//! [`ExactScalar`] coefficients.
//!
//! Just enough machinery for the wall-coefficient generating series:
//! arithmetic, gcd reduction over the coefficient field, and residues at
//! simple poles.

use std::fmt;

use super::exact::ExactScalar;
use super::ScalarError;

/// Dense polynomial in u, little-endian coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<ExactScalar>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactScalar) -> Self {
        let mut p = UPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    /// The variable u itself.
    pub fn u() -> Self {
        UPoly {
            coeffs: vec![ExactScalar::zero(), ExactScalar::one()],
        }
    }

    /// u − c.
    pub fn u_minus(c: &ExactScalar) -> Self {
        UPoly {
            coeffs: vec![-c, ExactScalar::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<ExactScalar>) -> Self {
        let mut p = UPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(ExactScalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(ExactScalar::zero);
            let b = other
                .coeffs
                .get(i)
                .cloned()
                .unwrap_or_else(ExactScalar::zero);
            out.push(&a + &b);
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Division with remainder over the coefficient field; divisor nonzero.
    fn divmod(&self, d: &Self) -> (Self, Self) {
        let dl = d.leading().expect("division by zero polynomial");
        let dl_inv = dl.inv().expect("nonzero leading coefficient");
        let dd = d.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![ExactScalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = &(rem.leading().unwrap().clone()) * &dl_inv;
            let shift = rd - dd;
            let mut shifted = vec![ExactScalar::zero(); shift];
            shifted.extend(d.coeffs.iter().map(|a| a * &c));
            rem = rem.sub(&UPoly::from_coeffs(shifted));
            quot[shift] = c;
        }
        (UPoly::from_coeffs(quot), rem)
    }

    /// Monic gcd via the Euclidean algorithm over ℚ(ρ, q).
    ///
    /// Every remainder is rescaled to be monic before the next division:
    /// the scalar canonicalization this triggers keeps the coefficient
    /// growth of the remainder sequence in check, which matters once the
    /// coefficients are themselves sizable rational functions.
    fn gcd(a: &Self, b: &Self) -> Self {
        let monic = |p: UPoly| -> UPoly {
            match p.leading() {
                Some(l) => {
                    let inv = l.inv().expect("nonzero leading coefficient");
                    p.scale(&inv)
                }
                None => p,
            }
        };
        let (mut f, mut g) = (monic(a.clone()), monic(b.clone()));
        while !g.is_zero() {
            let (_, r) = f.divmod(&g);
            f = g;
            g = monic(r);
        }
        f
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{i}")?,
            }
        }
        Ok(())
    }
}

/// A reduced fraction of [`UPoly`]s; the denominator is monic and coprime
/// to the numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionInU {
    num: UPoly,
    den: UPoly,
}

impl RationalFunctionInU {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        if num.is_zero() {
            return RationalFunctionInU {
                num: UPoly::zero(),
                den: UPoly::one(),
            };
        }
        let g = UPoly::gcd(&num, &den);
        let (num, r1) = num.divmod(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.divmod(&g);
        debug_assert!(r2.is_zero());
        let lead_inv = den
            .leading()
            .expect("nonzero denominator")
            .inv()
            .expect("nonzero leading coefficient");
        RationalFunctionInU {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(UPoly::zero())
    }

    pub fn from_poly(p: UPoly) -> Self {
        RationalFunctionInU {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn from_scalar(c: ExactScalar) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Quotient of an exact division (the remainder must vanish).
    fn exact_quot(a: &UPoly, b: &UPoly) -> UPoly {
        let (q, r) = a.divmod(b);
        debug_assert!(r.is_zero(), "division was not exact");
        q
    }

    /// Wraps an already-coprime pair, only normalizing the denominator to
    /// be monic. Both fractions entering the cross-cancelled arithmetic
    /// below are reduced, so the results need no further gcd.
    fn from_reduced(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return RationalFunctionInU { num: UPoly::zero(), den: UPoly::one() };
        }
        let lead_inv = den
            .leading()
            .expect("nonzero denominator")
            .inv()
            .expect("nonzero leading coefficient");
        RationalFunctionInU {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        // Cross-cancelled addition: with both inputs reduced, the only
        // factors the sum can share with the combined denominator divide
        // g = gcd of the denominators.
        let g = UPoly::gcd(&self.den, &other.den);
        let left = Self::exact_quot(&self.den, &g);
        let right = Self::exact_quot(&other.den, &g);
        let num = self.num.mul(&right).add(&other.num.mul(&left));
        if num.is_zero() {
            return Self::zero();
        }
        let h = UPoly::gcd(&num, &g);
        Self::from_reduced(
            Self::exact_quot(&num, &h),
            left.mul(&Self::exact_quot(&other.den, &h)),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunctionInU {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Reduced × reduced: cancellation only happens across the pair, so
        // two small cross-gcds replace one on the full products.
        let g1 = UPoly::gcd(&self.num, &other.den);
        let g2 = UPoly::gcd(&other.num, &self.den);
        Self::from_reduced(
            Self::exact_quot(&self.num, &g1).mul(&Self::exact_quot(&other.num, &g2)),
            Self::exact_quot(&self.den, &g2).mul(&Self::exact_quot(&other.den, &g1)),
        )
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let g1 = UPoly::gcd(&self.num, &other.num);
        let g2 = UPoly::gcd(&self.den, &other.den);
        Ok(Self::from_reduced(
            Self::exact_quot(&self.num, &g1).mul(&Self::exact_quot(&other.den, &g2)),
            Self::exact_quot(&self.den, &g2).mul(&Self::exact_quot(&other.num, &g1)),
        ))
    }

    /// Evaluates at a point where the denominator does not vanish.
    pub fn eval(&self, x: &ExactScalar) -> Result<ExactScalar, ScalarError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        self.num.eval(x).div(&d)
    }
}

impl fmt::Display for RationalFunctionInU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Residue of `f` at `u = c`, which must be a simple pole of the reduced
/// fraction: with D = (u − c) E, the residue is N(c)/E(c) = N(c)/D'(c).
pub fn residue_at(f: &RationalFunctionInU, c: &ExactScalar) -> Result<ExactScalar, ScalarError> {
    if !f.den.eval(c).is_zero() {
        return Err(ScalarError::NotAPole);
    }
    let (quotient, rem) = f.den.divmod(&UPoly::u_minus(c));
    debug_assert!(rem.is_zero(), "root must divide the denominator");
    let e = quotient.eval(c);
    if e.is_zero() {
        return Err(ScalarError::HigherOrderPole);
    }
    f.num.eval(c).div(&e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn reduction_and_arithmetic() {
        // (u² − 1)/(u − 1) reduces to u + 1.
        let num = UPoly::u().mul(&UPoly::u()).sub(&UPoly::one());
        let den = UPoly::u_minus(&int(1));
        let f = RationalFunctionInU::new(num, den);
        assert_eq!(f.den(), &UPoly::one());
        assert_eq!(f.num().eval(&int(4)), int(5));
        // 1/(u−1) + 1/(u+1) = 2u/(u²−1).
        let a = RationalFunctionInU::new(UPoly::one(), UPoly::u_minus(&int(1)));
        let b = RationalFunctionInU::new(UPoly::one(), UPoly::u_minus(&int(-1)));
        let s = a.add(&b);
        let expect = RationalFunctionInU::new(
            UPoly::u().scale(&int(2)),
            UPoly::u().mul(&UPoly::u()).sub(&UPoly::one()),
        );
        assert_eq!(s, expect);
        // Division round-trip.
        let r = s.div(&a).unwrap().mul(&a);
        assert_eq!(r, s);
    }

    #[test]
    fn residues() {
        // Res_{u=1} (u+3)/((u−1)(u+2)) = 4/3.
        let num = UPoly::u_minus(&int(-3));
        let den = UPoly::u_minus(&int(1)).mul(&UPoly::u_minus(&int(-2)));
        let f = RationalFunctionInU::new(num, den);
        let r = residue_at(&f, &int(1)).unwrap();
        assert_eq!(
            r,
            ExactScalar::from_rational(num_rational::BigRational::new(4.into(), 3.into()))
        );
        // Not a pole at u = 5.
        assert_eq!(residue_at(&f, &int(5)), Err(ScalarError::NotAPole));
        // Double pole is rejected.
        let g = RationalFunctionInU::new(
            UPoly::one(),
            UPoly::u_minus(&int(1)).mul(&UPoly::u_minus(&int(1))),
        );
        assert_eq!(residue_at(&g, &int(1)), Err(ScalarError::HigherOrderPole));
        // A removable singularity is not a pole after reduction.
        let h = RationalFunctionInU::new(
            UPoly::u_minus(&int(1)).scale(&int(7)),
            UPoly::u_minus(&int(1)).mul(&UPoly::u_minus(&int(-2))),
        );
        assert_eq!(residue_at(&h, &int(1)), Err(ScalarError::NotAPole));
    }

    #[test]
    fn residue_with_delta_coefficients() {
        // Res_{u=δ} 1/(u−δ) = 1 with symbolic coefficients.
        let dlt = ExactScalar::delta();
        let f = RationalFunctionInU::new(UPoly::one(), UPoly::u_minus(&dlt));
        assert_eq!(residue_at(&f, &dlt).unwrap(), ExactScalar::one());
    }
}
