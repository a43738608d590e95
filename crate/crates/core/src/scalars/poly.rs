//! Sparse integer polynomials in the two ground-ring variables ρ and q.
//!
//! Exponents are nonnegative; Laurent units are tracked by the fraction
//! layer, not here. The gcd is computed classically: integer content and
//! ℤ[ρ]-content are split off, and the primitive parts run through a
//! primitive polynomial remainder sequence in q over ℤ[ρ]. Everything is
//! exact; any inexact division in an "exact" path is a bug and panics.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A univariate ℤ[ρ] polynomial, little-endian, trailing zeros trimmed.
type RhoPoly = Vec<BigInt>;

/// Sparse polynomial in ℤ[ρ, q] with nonnegative exponents.
///
/// Keys are `(ρ-exponent, q-exponent)`; values are nonzero. The map order
/// (lexicographic on the key) doubles as the term order used for sign
/// normalization: the "leading" term is the largest key.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        IntPoly { terms }
    }

    /// `c · ρ^a q^b`.
    pub fn monomial(a: u32, b: u32, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        IntPoly { terms }
    }

    pub fn from_terms(entries: impl IntoIterator<Item = ((u32, u32), BigInt)>) -> Self {
        let mut p = IntPoly::zero();
        for ((a, b), c) in entries {
            p.add_term(a, b, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, a: u32, b: u32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, &(-c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = IntPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, &(c1 * c2));
            }
        }
        out
    }

    pub fn mul_bigint(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut e = e;
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Largest ρ-exponent, or `None` for the zero polynomial.
    pub fn degree_rho(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn degree_q(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    /// Componentwise minimum of exponents over all terms (zero poly → (0,0)).
    pub fn min_degrees(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|&(a, _)| a).min().unwrap_or(0);
        let b = self.terms.keys().map(|&(_, b)| b).min().unwrap_or(0);
        (a, b)
    }

    /// Divides every term by ρ^a q^b; panics if some term has a smaller
    /// exponent.
    pub fn div_monomial(&self, a: u32, b: u32) -> Self {
        IntPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), c)| {
                    assert!(x >= a && y >= b, "monomial division must be exact");
                    ((x - a, y - b), c.clone())
                })
                .collect(),
        }
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides all coefficients by `c` exactly; panics on inexact division.
    pub fn div_bigint_exact(&self, c: &BigInt) -> Self {
        assert!(!c.is_zero(), "division by zero content");
        IntPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, v)| {
                    let (d, r) = v.div_rem(c);
                    assert!(r.is_zero(), "content division must be exact");
                    (k, d)
                })
                .collect(),
        }
    }

    /// Sign of the coefficient on the lexicographically largest term;
    /// `true` when that coefficient is negative. Zero polynomial → `false`.
    pub fn leading_is_negative(&self) -> bool {
        self.terms
            .iter()
            .next_back()
            .is_some_and(|(_, c)| c.is_negative())
    }

    /// Exact division: returns `Some(self / d)` when `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if d.is_one() {
            return Some(self.clone());
        }
        let dv = QView::from_poly(d);
        let mut rem = QView::from_poly(self);
        let dd = dv.degree()?;
        let dl = dv.leading().clone();
        let mut quotient: BTreeMap<u32, RhoPoly> = BTreeMap::new();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                return None;
            }
            let qc = uni_div_exact(rem.leading(), &dl)?;
            let shift = rd - dd;
            quotient.insert(shift, qc.clone());
            rem = rem.sub(&dv.mul_coef_shift(&qc, shift));
            if rem.is_zero() {
                let mut out = QView {
                    coeffs: quotient.into_iter().collect(),
                };
                out.normalize();
                return Some(out.to_poly());
            }
        }
        None
    }

    /// Full gcd over ℤ[ρ, q] including integer content, normalized to have
    /// a nonnegative leading coefficient.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.abs_normalized();
        }
        if b.is_zero() {
            return a.abs_normalized();
        }
        if a.is_one() || b.is_one() {
            return IntPoly::one();
        }
        let av = QView::from_poly(a);
        let bv = QView::from_poly(b);
        let cont_a = av.content_rho();
        let cont_b = bv.content_rho();
        let cont_g = uni_gcd(&cont_a, &cont_b);
        let pp_a = av.div_coef_exact(&cont_a);
        let pp_b = bv.div_coef_exact(&cont_b);
        let pp_g = qview_prs_gcd(pp_a, pp_b);
        let g = pp_g.mul_coef_shift(&cont_g, 0).to_poly();
        g.abs_normalized()
    }

    fn abs_normalized(&self) -> Self {
        if self.leading_is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Renders terms sorted by (ρ-degree, q-degree), highest first.
    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut pieces: Vec<String> = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                pieces.push(mag.to_string());
            }
            if a > 0 {
                pieces.push(if a == 1 {
                    "rho".to_string()
                } else {
                    format!("rho^{a}")
                });
            }
            if b > 0 {
                pieces.push(if b == 1 { "q".to_string() } else { format!("q^{b}") });
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

// ---------------------------------------------------------------------------
// View of an IntPoly as a polynomial in q with ℤ[ρ] coefficients.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct QView {
    /// Sorted ascending by q-exponent; coefficients nonzero.
    coeffs: Vec<(u32, RhoPoly)>,
}

impl QView {
    fn from_poly(p: &IntPoly) -> Self {
        let mut map: BTreeMap<u32, RhoPoly> = BTreeMap::new();
        for (&(a, b), c) in &p.terms {
            let coef = map.entry(b).or_default();
            if coef.len() <= a as usize {
                coef.resize(a as usize + 1, BigInt::zero());
            }
            coef[a as usize] += c;
        }
        let mut view = QView {
            coeffs: map.into_iter().collect(),
        };
        view.normalize();
        view
    }

    fn to_poly(&self) -> IntPoly {
        let mut terms = BTreeMap::new();
        for (b, coef) in &self.coeffs {
            for (a, c) in coef.iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((a as u32, *b), c.clone());
                }
            }
        }
        IntPoly { terms }
    }

    fn normalize(&mut self) {
        for (_, c) in self.coeffs.iter_mut() {
            uni_trim(c);
        }
        self.coeffs.retain(|(_, c)| !c.is_empty());
        self.coeffs.sort_by_key(|&(b, _)| b);
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> Option<u32> {
        self.coeffs.last().map(|&(b, _)| b)
    }

    fn leading(&self) -> &RhoPoly {
        &self.coeffs.last().expect("leading of zero polynomial").1
    }

    fn sub(&self, other: &Self) -> Self {
        let mut map: BTreeMap<u32, RhoPoly> = self.coeffs.iter().cloned().collect();
        for (b, c) in &other.coeffs {
            let entry = map.entry(*b).or_default();
            let negged: RhoPoly = c.iter().map(|x| -x).collect();
            *entry = uni_add(entry, &negged);
        }
        let mut out = QView {
            coeffs: map.into_iter().collect(),
        };
        out.normalize();
        out
    }

    /// Multiplies every coefficient by `c` and shifts q-exponents by `shift`.
    fn mul_coef_shift(&self, c: &RhoPoly, shift: u32) -> Self {
        let mut out = QView {
            coeffs: self
                .coeffs
                .iter()
                .map(|(b, v)| (b + shift, uni_mul(v, c)))
                .collect(),
        };
        out.normalize();
        out
    }

    /// gcd over ℤ[ρ] of all coefficients (this includes integer content).
    fn content_rho(&self) -> RhoPoly {
        let mut g: RhoPoly = Vec::new();
        for (_, c) in &self.coeffs {
            g = uni_gcd(&g, c);
            if g.len() == 1 && g[0].is_one() {
                break;
            }
        }
        g
    }

    fn div_coef_exact(&self, d: &RhoPoly) -> Self {
        QView {
            coeffs: self
                .coeffs
                .iter()
                .map(|(b, v)| {
                    (
                        *b,
                        uni_div_exact(v, d).expect("ℤ[ρ]-content division must be exact"),
                    )
                })
                .collect(),
        }
    }

    fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_rho();
        self.div_coef_exact(&c)
    }
}

/// Pseudo-remainder of `f` by `g` in q over ℤ[ρ] (degrees: f ≥ g required
/// on entry is not assumed; if deg f < deg g the result is f).
fn qview_prem(f: &QView, g: &QView) -> QView {
    let dg = g.degree().expect("pseudo-division by zero");
    let lg = g.leading().clone();
    let mut r = f.clone();
    while let Some(dr) = r.degree() {
        if dr < dg {
            break;
        }
        let lr = r.leading().clone();
        // r ← lg·r − lr·q^{dr−dg}·g ; the leading terms cancel.
        r = r.mul_coef_shift(&lg, 0).sub(&g.mul_coef_shift(&lr, dr - dg));
    }
    r
}

/// gcd of two q-primitive QViews via the primitive PRS, returned primitive.
fn qview_prs_gcd(a: QView, b: QView) -> QView {
    let (mut f, mut g) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    loop {
        if g.is_zero() {
            return f.primitive_part();
        }
        let r = qview_prem(&f, &g);
        f = g;
        g = r.primitive_part();
    }
}

// ---------------------------------------------------------------------------
// Univariate ℤ[x] helpers (used with x = ρ).
// ---------------------------------------------------------------------------

fn uni_trim(p: &mut RhoPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn uni_add(a: &RhoPoly, b: &RhoPoly) -> RhoPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    uni_trim(&mut out);
    out
}

fn uni_mul(a: &RhoPoly, b: &RhoPoly) -> RhoPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    uni_trim(&mut out);
    out
}

fn uni_content(a: &RhoPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Exact division in ℤ[x]; `None` when not divisible.
fn uni_div_exact(a: &RhoPoly, d: &RhoPoly) -> Option<RhoPoly> {
    if d.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < d.len() {
        return None;
    }
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); a.len() - d.len() + 1];
    let dl = d.last().unwrap();
    while rem.len() >= d.len() {
        let rl = rem.last().unwrap();
        let (c, r) = rl.div_rem(dl);
        if r.is_zero() {
            if c.is_zero() {
                return None;
            }
        } else {
            return None;
        }
        let shift = rem.len() - d.len();
        quot[shift] = c.clone();
        for (i, dc) in d.iter().enumerate() {
            rem[shift + i] -= &c * dc;
        }
        uni_trim(&mut rem);
        if rem.is_empty() {
            return Some(quot);
        }
        if rem.len() < d.len() {
            return None;
        }
    }
    None
}

/// Full gcd in ℤ[x] (content × primitive gcd), leading coefficient positive.
fn uni_gcd(a: &RhoPoly, b: &RhoPoly) -> RhoPoly {
    if a.is_empty() {
        let mut out = b.clone();
        if out.last().is_some_and(|c| c.is_negative()) {
            out = out.iter().map(|c| -c).collect();
        }
        return out;
    }
    if b.is_empty() {
        return uni_gcd(b, a);
    }
    let ca = uni_content(a);
    let cb = uni_content(b);
    let cg = ca.gcd(&cb);
    let pa: RhoPoly = uni_div_exact(a, &vec![ca]).unwrap();
    let pb: RhoPoly = uni_div_exact(b, &vec![cb]).unwrap();
    let (mut f, mut g) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    loop {
        if g.is_empty() {
            break;
        }
        // Primitive PRS step.
        let r = uni_prem(&f, &g);
        f = g;
        g = if r.is_empty() {
            Vec::new()
        } else {
            let c = uni_content(&r);
            uni_div_exact(&r, &vec![c]).unwrap()
        };
    }
    let mut out = uni_mul(&f, &vec![cg]);
    if out.last().is_some_and(|c| c.is_negative()) {
        out = out.iter().map(|c| -c).collect();
    }
    out
}

fn uni_prem(a: &RhoPoly, d: &RhoPoly) -> RhoPoly {
    let mut rem = a.clone();
    let dl = d.last().expect("pseudo-division by zero").clone();
    while rem.len() >= d.len() && !rem.is_empty() {
        let rl = rem.last().unwrap().clone();
        let shift = rem.len() - d.len();
        for c in rem.iter_mut() {
            *c *= &dl;
        }
        for (i, dc) in d.iter().enumerate() {
            rem[shift + i] -= &rl * dc;
        }
        uni_trim(&mut rem);
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rho() -> IntPoly {
        IntPoly::monomial(1, 0, BigInt::one())
    }

    fn q() -> IntPoly {
        IntPoly::monomial(0, 1, BigInt::one())
    }

    fn int(n: i64) -> IntPoly {
        IntPoly::constant(BigInt::from(n))
    }

    #[test]
    fn arithmetic_basics() {
        let p = rho().add(&q()); // ρ + q
        let s = p.mul(&p); // ρ² + 2ρq + q²
        assert_eq!(s.num_terms(), 3);
        assert_eq!(s.sub(&s), IntPoly::zero());
        assert_eq!(p.pow(0), IntPoly::one());
        assert_eq!(p.pow(3), p.mul(&p).mul(&p));
        assert!(int(0).is_zero());
        assert_eq!(int(-4).content(), BigInt::from(4));
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = rho().mul(&rho()).sub(&int(1)); // ρ² − 1
        let b = rho().add(&int(1)); // ρ + 1
        let c = a.div_exact(&b).unwrap();
        assert_eq!(c, rho().sub(&int(1)));
        assert_eq!(c.mul(&b), a);
        // Non-divisible cases.
        assert!(a.div_exact(&q()).is_none());
        assert!(rho().add(&int(1)).div_exact(&int(2)).is_none());
    }

    #[test]
    fn gcd_bivariate() {
        // gcd((ρ²q² − 1)(q+1), (q+1)(q−1)) = q + 1
        let q2r2 = IntPoly::monomial(2, 2, BigInt::one()).sub(&int(1));
        let qp1 = q().add(&int(1));
        let qm1 = q().sub(&int(1));
        let a = q2r2.mul(&qp1);
        let b = qp1.mul(&qm1);
        assert_eq!(IntPoly::gcd(&a, &b), qp1);
        // Integer contents participate.
        assert_eq!(IntPoly::gcd(&int(6), &int(10)), int(2));
        let a = qp1.mul_bigint(&BigInt::from(4));
        let b = qp1.mul_bigint(&BigInt::from(6)).mul(&qm1);
        assert_eq!(IntPoly::gcd(&a, &b), qp1.mul_bigint(&BigInt::from(2)));
        // Sign normalization.
        assert_eq!(IntPoly::gcd(&qp1.neg(), &qp1.neg()), qp1);
        // Coprime pair.
        assert_eq!(IntPoly::gcd(&q2r2, &qp1), IntPoly::one());
    }

    #[test]
    fn display_order() {
        // ρ²q² − 1 prints highest (ρ, q) degree first.
        let p = IntPoly::monomial(2, 2, BigInt::one()).sub(&int(1));
        assert_eq!(p.to_string(), "rho^2*q^2 - 1");
        let p = q().mul_bigint(&BigInt::from(-2)).add(&int(3));
        assert_eq!(p.to_string(), "-2*q + 3");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn prop_gcd_divides_both(
            xs in proptest::collection::vec((0u32..3, 0u32..4, -4i64..5), 1..5),
            ys in proptest::collection::vec((0u32..3, 0u32..4, -4i64..5), 1..5),
            zs in proptest::collection::vec((0u32..2, 0u32..3, -3i64..4), 1..4),
        ) {
            let build = |v: &Vec<(u32, u32, i64)>| {
                IntPoly::from_terms(v.iter().map(|&(a, b, c)| ((a, b), BigInt::from(c))))
            };
            let common = build(&zs);
            let a = build(&xs).mul(&common);
            let b = build(&ys).mul(&common);
            let g = IntPoly::gcd(&a, &b);
            if !a.is_zero() || !b.is_zero() {
                prop_assert!(!g.is_zero());
                prop_assert!(a.div_exact(&g).is_some());
                prop_assert!(b.div_exact(&g).is_some());
                if !a.is_zero() && !b.is_zero() && !common.is_zero() {
                    // The common factor divides the gcd.
                    prop_assert!(g.div_exact(&common.abs_normalized()).is_some());
                }
            }
        }

        #[test]
        fn prop_mul_div_roundtrip(
            xs in proptest::collection::vec((0u32..3, 0u32..4, -5i64..6), 1..5),
            ys in proptest::collection::vec((0u32..3, 0u32..4, -5i64..6), 1..5),
        ) {
            let a = IntPoly::from_terms(xs.iter().map(|&(x, y, c)| ((x, y), BigInt::from(c))));
            let b = IntPoly::from_terms(ys.iter().map(|&(x, y, c)| ((x, y), BigInt::from(c))));
            let p = a.mul(&b);
            if !b.is_zero() {
                let q = p.div_exact(&b).unwrap();
                prop_assert_eq!(q, a);
            }
        }
    }
}
