//! Products of quantum brackets kept in factored form.
//!
//! A [`BracketProduct`] is `±c · q^a · Π_m [m]^{e_m} · Π_n [δ+n]^{f_n}`
//! where `[m] = (q^m − q^{-m})/(q − q^{-1})` and
//! `[δ+n] = (ρ q^n − ρ^{-1} q^{-n})/(q − q^{-1})`. Norm recursions and Gram
//! determinants stay in this form end to end: multiplication and division
//! are exponent arithmetic, never polynomial division, so route-equivalence
//! checks compare canonical factored data.
//!
//! Expansion to an [`ExactScalar`] goes through the coprime factorization
//! `[m] = q^{1−m} Π_{d | 2m, d>2} Φ_d(q)` and
//! `[δ+n] = ρ^{-1} q^{1−|n|·sgn…} Q_n/(Φ_1 Φ_2)` with `Q_n = ρ²q^{2n} − 1`
//! (resp. `ρ² − q^{2|n|}` for negative shifts). Distinct `Φ_d` and `Q_n`
//! are pairwise coprime, so regrouping exponents performs the full exact
//! reduction without a single gcd; this is also what makes specialization
//! immune to cross-bracket cancellation such as `[6]/([2][3])`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::exact::ExactScalar;
use super::poly::IntPoly;

/// Normalization: `zero == true` forces every other field to its default;
/// `[1]` is never stored; `[−m] = −[m]` folds the sign into the
/// coefficient; exponent values are nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketProduct {
    zero: bool,
    coeff: BigRational,
    q_pow: i64,
    qint: BTreeMap<i64, i64>,
    qdelta: BTreeMap<i64, i64>,
}

/// Net coprime factorization of an expanded bracket product.
pub(super) struct FactoredExpansion {
    pub coeff: BigRational,
    pub rho_pow: i64,
    pub q_pow: i64,
    /// Cyclotomic index d ≥ 1 → net exponent of Φ_d(q).
    pub phi: BTreeMap<u64, i64>,
    /// Shift n → net exponent of Q_n.
    pub qn: BTreeMap<i64, i64>,
}

impl BracketProduct {
    pub fn zero() -> Self {
        BracketProduct {
            zero: true,
            coeff: BigRational::zero(),
            q_pow: 0,
            qint: BTreeMap::new(),
            qdelta: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BracketProduct {
            zero: false,
            coeff: c,
            q_pow: 0,
            qint: BTreeMap::new(),
            qdelta: BTreeMap::new(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from(BigInt::from(n)))
    }

    /// The quantum integer [k]; [0] = 0, [−k] = −[k], [1] = 1.
    pub fn qint(k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let mut out = Self::from_int(if k < 0 { -1 } else { 1 });
        if k.abs() >= 2 {
            out.qint.insert(k.abs(), 1);
        }
        out
    }

    /// The shifted bracket [δ+n]; never zero as a formal expression.
    pub fn qdelta(n: i64) -> Self {
        let mut out = Self::one();
        out.qdelta.insert(n, 1);
        out
    }

    /// ⌈n⌉ = 1 + q^{-2} + … + q^{-(2n−2)} = q^{1−n}[n] for n ≥ 1; ⌈0⌉ = 1.
    pub fn qceil(n: u32) -> Self {
        if n <= 1 {
            return Self::one();
        }
        Self::qint(n as i64).mul_q_pow(1 - n as i64)
    }

    /// ⌈n⌉! = ⌈n⌉⌈n−1⌉⋯⌈1⌉.
    pub fn qceil_factorial(n: u32) -> Self {
        let mut acc = Self::one();
        for i in 2..=n {
            acc = acc.mul(&Self::qceil(i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn is_one(&self) -> bool {
        !self.zero
            && self.coeff.is_one()
            && self.q_pow == 0
            && self.qint.is_empty()
            && self.qdelta.is_empty()
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.coeff
    }

    pub fn q_power(&self) -> i64 {
        self.q_pow
    }

    pub fn qint_exponents(&self) -> &BTreeMap<i64, i64> {
        &self.qint
    }

    pub fn qdelta_exponents(&self) -> &BTreeMap<i64, i64> {
        &self.qdelta
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.zero || other.zero {
            return Self::zero();
        }
        let mut out = self.clone();
        out.coeff *= &other.coeff;
        out.q_pow += other.q_pow;
        for (&m, &e) in &other.qint {
            let entry = out.qint.entry(m).or_insert(0);
            *entry += e;
            if *entry == 0 {
                out.qint.remove(&m);
            }
        }
        for (&n, &f) in &other.qdelta {
            let entry = out.qdelta.entry(n).or_insert(0);
            *entry += f;
            if *entry == 0 {
                out.qdelta.remove(&n);
            }
        }
        out
    }

    /// Multiplicative inverse; panics on zero (factored chains are
    /// guaranteed nonzero, a zero here is an internal invariant violation).
    pub fn inv(&self) -> Self {
        assert!(!self.zero, "inverse of the zero bracket product");
        BracketProduct {
            zero: false,
            coeff: self.coeff.recip(),
            q_pow: -self.q_pow,
            qint: self.qint.iter().map(|(&m, &e)| (m, -e)).collect(),
            qdelta: self.qdelta.iter().map(|(&n, &f)| (n, -f)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        if self.zero {
            assert!(e > 0, "negative power of the zero bracket product");
            return Self::zero();
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let e = e.unsigned_abs();
        let mut coeff = BigRational::one();
        let mut b = base.coeff.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                coeff *= &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        BracketProduct {
            zero: false,
            coeff,
            q_pow: base.q_pow * e as i64,
            qint: base.qint.iter().map(|(&m, &x)| (m, x * e as i64)).collect(),
            qdelta: base
                .qdelta
                .iter()
                .map(|(&n, &x)| (n, x * e as i64))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.mul_rational(&BigRational::from(BigInt::from(-1)))
    }

    pub fn mul_rational(&self, c: &BigRational) -> Self {
        if self.zero || c.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.coeff *= c;
        out
    }

    pub fn mul_q_pow(&self, a: i64) -> Self {
        if self.zero {
            return Self::zero();
        }
        let mut out = self.clone();
        out.q_pow += a;
        out
    }

    pub(super) fn factored_expansion(&self) -> FactoredExpansion {
        assert!(!self.zero, "factored expansion of zero");
        let mut phi: BTreeMap<u64, i64> = BTreeMap::new();
        let mut qn: BTreeMap<i64, i64> = BTreeMap::new();
        let mut q_pow = self.q_pow;
        let mut rho_pow = 0i64;
        for (&m, &e) in &self.qint {
            q_pow += (1 - m) * e;
            for d in divisors(2 * m as u64) {
                if d > 2 {
                    *phi.entry(d).or_insert(0) += e;
                }
            }
        }
        for (&n, &f) in &self.qdelta {
            rho_pow -= f;
            q_pow += if n >= 0 { (1 - n) * f } else { (1 + n) * f };
            *qn.entry(n).or_insert(0) += f;
            *phi.entry(1).or_insert(0) -= f;
            *phi.entry(2).or_insert(0) -= f;
        }
        phi.retain(|_, e| *e != 0);
        qn.retain(|_, e| *e != 0);
        FactoredExpansion {
            coeff: self.coeff.clone(),
            rho_pow,
            q_pow,
            phi,
            qn,
        }
    }

    /// Expands into a canonical [`ExactScalar`]. The coprime factorization
    /// means numerator and denominator are born reduced.
    pub fn expand(&self) -> ExactScalar {
        if self.zero {
            return ExactScalar::zero();
        }
        let fx = self.factored_expansion();
        let mut memo: BTreeMap<u64, IntPoly> = BTreeMap::new();
        let mut num = IntPoly::one();
        let mut den = IntPoly::one();
        for (&d, &e) in &fx.phi {
            let base = cyclotomic(d, &mut memo);
            if e > 0 {
                num = num.mul(&base.pow(e as u64));
            } else {
                den = den.mul(&base.pow((-e) as u64));
            }
        }
        for (&n, &e) in &fx.qn {
            let base = qdelta_core_poly(n);
            if e > 0 {
                num = num.mul(&base.pow(e as u64));
            } else {
                den = den.mul(&base.pow((-e) as u64));
            }
        }
        ExactScalar::reduced(fx.coeff, fx.rho_pow, fx.q_pow, num, den, false)
    }

    pub fn to_json(&self) -> Value {
        let qint: serde_json::Map<String, Value> = self
            .qint
            .iter()
            .map(|(m, e)| (m.to_string(), json!(e)))
            .collect();
        let qdelta: serde_json::Map<String, Value> = self
            .qdelta
            .iter()
            .map(|(n, f)| (n.to_string(), json!(f)))
            .collect();
        json!({
            "coeff": self.coeff.to_string(),
            "qpow": self.q_pow,
            "qint": qint,
            "qdelta": qdelta,
            "zero": self.zero,
        })
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let obj = v.as_object()?;
        if obj.get("zero")?.as_bool()? {
            return Some(Self::zero());
        }
        let coeff = BigRational::from_str(obj.get("coeff")?.as_str()?).ok()?;
        let q_pow = obj.get("qpow")?.as_i64()?;
        let mut out = Self::from_rational(coeff).mul_q_pow(q_pow);
        for (k, e) in obj.get("qint")?.as_object()? {
            let m: i64 = k.parse().ok()?;
            let e = e.as_i64()?;
            if m < 2 || e == 0 {
                return None;
            }
            out.qint.insert(m, e);
        }
        for (k, f) in obj.get("qdelta")?.as_object()? {
            let n: i64 = k.parse().ok()?;
            let f = f.as_i64()?;
            if f == 0 {
                return None;
            }
            out.qdelta.insert(n, f);
        }
        if out.coeff.is_zero() {
            return None;
        }
        Some(out)
    }
}

/// Φ_1 Φ_2-free core of [δ+n]: `ρ²q^{2n} − 1` for n ≥ 0, `ρ² − q^{2|n|}`
/// for n < 0 (both primitive with positive leading term).
fn qdelta_core_poly(n: i64) -> IntPoly {
    if n >= 0 {
        IntPoly::monomial(2, 2 * n as u32, BigInt::one()).sub(&IntPoly::one())
    } else {
        IntPoly::monomial(2, 0, BigInt::one()).sub(&IntPoly::monomial(
            0,
            2 * (-n) as u32,
            BigInt::one(),
        ))
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            out.push(d);
        }
    }
    out
}

/// The d-th cyclotomic polynomial in q, by exact division of q^d − 1.
fn cyclotomic(d: u64, memo: &mut BTreeMap<u64, IntPoly>) -> IntPoly {
    if let Some(p) = memo.get(&d) {
        return p.clone();
    }
    let mut p = IntPoly::monomial(0, d as u32, BigInt::one()).sub(&IntPoly::one());
    for e in divisors(d) {
        if e < d {
            let q = cyclotomic(e, memo);
            p = p.div_exact(&q).expect("cyclotomic division is exact");
        }
    }
    memo.insert(d, p.clone());
    p
}

impl fmt::Display for BracketProduct {
    /// Factored text form `±c * q^a * [m]^e * … * [d+n]^f * …`; `[d+0]`
    /// prints as `[d]`, unit exponents are omitted, shifted brackets are
    /// ordered by (|n|, n).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        let mag = self.coeff.abs();
        if !mag.is_one() {
            parts.push(mag.to_string());
        }
        if self.q_pow != 0 {
            parts.push(if self.q_pow == 1 {
                "q".to_string()
            } else {
                format!("q^{}", self.q_pow)
            });
        }
        for (&m, &e) in &self.qint {
            let base = format!("[{m}]");
            parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        let mut shifts: Vec<i64> = self.qdelta.keys().copied().collect();
        shifts.sort_by_key(|&n| (n.abs(), n));
        for n in shifts {
            let e = self.qdelta[&n];
            let base = match n.cmp(&0) {
                std::cmp::Ordering::Equal => "[d]".to_string(),
                std::cmp::Ordering::Greater => format!("[d+{n}]"),
                std::cmp::Ordering::Less => format!("[d{n}]"),
            };
            parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        if parts.is_empty() {
            parts.push(mag.to_string());
        }
        write!(
            f,
            "{}{}",
            if self.coeff.is_negative() { "-" } else { "" },
            parts.join(" * ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(k: i64) -> BracketProduct {
        BracketProduct::qint(k)
    }

    fn d(n: i64) -> BracketProduct {
        BracketProduct::qdelta(n)
    }

    /// Oracle: [m] as an explicit Laurent sum.
    fn qint_oracle(m: i64) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for i in 0..m.abs() {
            acc = &acc + &ExactScalar::monomial(0, m.abs() - 1 - 2 * i);
        }
        if m < 0 {
            acc = -acc;
        }
        acc
    }

    #[test]
    fn qint_normalization() {
        assert!(b(0).is_zero());
        assert!(b(1).is_one());
        assert_eq!(b(-1), BracketProduct::from_int(-1));
        assert_eq!(b(-3), b(3).neg());
        assert_eq!(b(2).mul(&b(2)).div(&b(2)), b(2));
        assert_eq!(b(5).pow(0), BracketProduct::one());
        assert_eq!(d(2).pow(-2), d(2).inv().mul(&d(2).inv()));
    }

    #[test]
    fn expansion_matches_laurent_oracle() {
        for m in [0, 1, 2, 3, 5, -2, -4] {
            assert_eq!(b(m).expand(), qint_oracle(m), "[{m}]");
        }
        // ⌈3⌉ = 1 + q^{-2} + q^{-4}.
        let c3 = BracketProduct::qceil(3).expand();
        let want = &(&ExactScalar::one() + &ExactScalar::monomial(0, -2))
            + &ExactScalar::monomial(0, -4);
        assert_eq!(c3, want);
        // ⌈0⌉ = ⌈1⌉ = 1.
        assert!(BracketProduct::qceil(0).is_one());
        assert!(BracketProduct::qceil(1).is_one());
        // [δ] = δ.
        assert_eq!(d(0).expand(), ExactScalar::delta());
    }

    #[test]
    fn cross_bracket_cancellation() {
        // [6]/([2][3]) expands to a Laurent polynomial.
        let x = b(6).div(&b(2)).div(&b(3));
        assert!(x.expand().is_in_base_ring());
        // [2][3]/[6] also expands without residue in the Φ bookkeeping.
        let y = b(2).mul(&b(3)).div(&b(6));
        assert_eq!(x.expand().inv().unwrap(), y.expand());
    }

    #[test]
    fn shifted_bracket_identities() {
        // [δ+a+1][δ+a−1] = [δ+a]² − 1.
        for a in [-2i64, 0, 1, 3] {
            let lhs = d(a + 1).mul(&d(a - 1)).expand();
            let rhs = &(&d(a).expand() * &d(a).expand()) - &ExactScalar::one();
            assert_eq!(lhs, rhs, "a = {a}");
        }
        // δ − ρ^{-1} q^c [c] = q^c [δ−c].
        for c in [1i64, 2, 4] {
            let lhs = &ExactScalar::delta()
                - &(&ExactScalar::monomial(-1, c) * &b(c).expand());
            let rhs = &ExactScalar::monomial(0, c) * &d(-c).expand();
            assert_eq!(lhs, rhs, "c = {c}");
        }
        // q^{-a}[a] − q^{-b}[b] = q^{-a-b}[a−b].
        for (a, bb) in [(3i64, 1i64), (5, 2), (2, -1)] {
            let lhs = &(&ExactScalar::monomial(0, -a) * &b(a).expand())
                - &(&ExactScalar::monomial(0, -bb) * &b(bb).expand());
            let rhs = &ExactScalar::monomial(0, -a - bb) * &b(a - bb).expand();
            assert_eq!(lhs, rhs, "a = {a}, b = {bb}");
        }
    }

    #[test]
    fn golden_determinant_rendering() {
        // q^{-4} δ² [δ−2] [δ+2].
        let det = d(0)
            .pow(2)
            .mul(&d(-2))
            .mul(&d(2))
            .mul_q_pow(-4);
        assert_eq!(det.to_string(), "q^-4 * [d]^2 * [d-2] * [d+2]");
        assert_eq!(b(2).inv().mul(&d(-1)).to_string(), "[2]^-1 * [d-1]");
        assert_eq!(BracketProduct::zero().to_string(), "0");
        assert_eq!(BracketProduct::one().to_string(), "1");
        assert_eq!(BracketProduct::from_int(-1).to_string(), "-1");
        assert_eq!(b(3).neg().mul_q_pow(1).to_string(), "-q * [3]");
    }

    #[test]
    fn json_round_trip() {
        let x = b(4)
            .pow(2)
            .mul(&d(-3).inv())
            .mul(&BracketProduct::from_rational(BigRational::new(
                BigInt::from(-3),
                BigInt::from(2),
            )))
            .mul_q_pow(-7);
        let j = x.to_json();
        assert_eq!(BracketProduct::from_json(&j).unwrap(), x);
        let z = BracketProduct::zero();
        assert_eq!(BracketProduct::from_json(&z.to_json()).unwrap(), z);
        assert_eq!(
            j.get("coeff").and_then(Value::as_str),
            Some("-3/2")
        );
    }

    #[test]
    fn expansion_of_mixed_product() {
        // A norm-shaped quantity: (q^{-1}+q^{-3}) [δ−1] as ⌈2⌉ q^{-1} [δ−1].
        let x = BracketProduct::qceil(2).mul(&d(-1)).mul_q_pow(-1);
        let expanded = x.expand();
        let oracle = &(&ExactScalar::monomial(0, -1) + &ExactScalar::monomial(0, -3))
            * &d(-1).expand();
        assert_eq!(expanded, oracle);
        // Expansion is multiplicative.
        let y = b(3).mul(&d(2)).mul(&d(-1)).mul_q_pow(5);
        assert_eq!(
            x.mul(&y).expand(),
            &x.expand() * &y.expand()
        );
    }
}
