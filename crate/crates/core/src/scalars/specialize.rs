//! Exact specialization of scalars at a root of unity, over an explicitly
//! constructed finite field.
//!
//! A specialization is determined by three choices: the quantum
//! characteristic `e` (the multiplicative order of q², possibly infinite),
//! the characteristic `p` of the target field, and a relation tying ρ to q
//! (either ρ² = q^{2n₀} for a fixed integer n₀, or no relation at all).
//! [`SpecializationParams::new`] realizes the choices concretely:
//!
//! * characteristic zero is emulated in a prime field 𝔽_P with P ≡ 1
//!   (mod 2e) and P larger than every integer the computations compare, with
//!   q mapped to an element of order 2e (so q² has order exactly e);
//! * genuine characteristic p uses the smallest extension 𝔽_{p^k} containing
//!   an element whose square has order e — 𝔽_p itself whenever e divides
//!   p − 1, an extension otherwise;
//! * infinite quantum characteristic is emulated by a q-image of very large
//!   multiplicative order, faithful for every bracket index that any
//!   tractable computation can produce;
//! * a generic ρ is emulated by a ρ-image whose square lies outside the
//!   cyclic group generated by the q-image, so that no relation
//!   ρ²q^{2c} = 1 holds for any integer c.
//!
//! All field and parameter construction is deterministic: prime scans,
//! irreducible-polynomial searches and generator searches walk fixed
//! enumeration orders, so equal parameters always produce identical fields
//! and images.
//!
//! Evaluation itself substitutes the q- and ρ-images into the *reduced
//! expanded* fraction of a scalar. For bracket products this matters: the
//! factored exponents alone cannot be trusted under a specialization,
//! because numerator and denominator brackets can share cyclotomic content
//! that only the exact reduction cancels (e.g. [6]/([2][3]) has a vanishing
//! denominator factor at q⁴ = 1 but is itself a unit there).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::bracket::BracketProduct;
use super::exact::ExactScalar;
use super::poly::IntPoly;
use super::ScalarError;

/// Smallest admissible emulation prime for characteristic zero.
const EMULATION_FLOOR: u64 = 1 << 31;
/// Largest field characteristic accepted (keeps coefficient products in u128).
const MAX_CHARACTERISTIC: u64 = 1 << 31;
/// Largest extension-field size accepted for finite quantum characteristic.
const MAX_FIELD_SIZE: u64 = 1 << 40;
/// Minimal multiplicative order of the q-image when e = ∞ is emulated in
/// positive characteristic; brackets with indices below half this bound are
/// then specialized faithfully.
const INFINITE_ORDER_FLOOR: u64 = 1 << 24;

/// Multiplicative order of q², finite or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuantumChar {
    Finite(u64),
    Infinite,
}

impl fmt::Display for QuantumChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantumChar::Finite(e) => write!(f, "{e}"),
            QuantumChar::Infinite => write!(f, "inf"),
        }
    }
}

/// Characteristic of the target field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldChar {
    Zero,
    Prime(u64),
}

impl fmt::Display for FieldChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChar::Zero => write!(f, "0"),
            FieldChar::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Relation imposed on ρ: none, or ρ² = q^{2n₀}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RhoRelation {
    Generic,
    Power(i64),
}

impl fmt::Display for RhoRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhoRelation::Generic => write!(f, "generic"),
            RhoRelation::Power(n) => write!(f, "{n}"),
        }
    }
}

/// An element of a [`PrimeField`]: coefficients of a residue polynomial,
/// little-endian, always of length equal to the extension degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// The field 𝔽_{p^k}, represented as 𝔽_p[x] modulo a fixed monic
/// irreducible polynomial of degree k (for k = 1 no modulus is ever used and
/// the field is 𝔽_p itself).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    k: u32,
    /// Monic irreducible of degree k, little-endian, length k + 1.
    modulus: Vec<u64>,
}

impl PrimeField {
    fn prime(p: u64) -> Self {
        PrimeField {
            p,
            k: 1,
            modulus: vec![0, 1],
        }
    }

    /// Builds 𝔽_{p^k} with the first monic irreducible of degree k in the
    /// base-p counting order of coefficient vectors.
    fn extension(p: u64, k: u32) -> Self {
        if k == 1 {
            return Self::prime(p);
        }
        let mut counter = 0u64;
        loop {
            let mut modulus = digits_base_p(counter, p, k as usize);
            modulus.push(1);
            if is_irreducible(&modulus, p) {
                return PrimeField { p, k, modulus };
            }
            counter += 1;
            assert!(
                counter < MAX_FIELD_SIZE,
                "irreducible polynomial search must terminate"
            );
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.k
    }

    /// Number of elements p^k.
    pub fn size(&self) -> u64 {
        self.p.checked_pow(self.k).expect("field size fits in u64")
    }

    /// Order p^k − 1 of the multiplicative group.
    pub fn group_order(&self) -> u64 {
        self.size() - 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        let mut coeffs = vec![0; self.k as usize];
        coeffs[0] = n % self.p;
        FieldElement { coeffs }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let r = n.mod_floor(&BigInt::from(self.p));
        self.from_u64(r.to_u64().expect("residue below the characteristic"))
    }

    fn reduce_fp_poly(&self, v: &[u64]) -> FieldElement {
        let mut coeffs = fpp_rem(v, &self.modulus, self.p);
        coeffs.resize(self.k as usize, 0);
        FieldElement { coeffs }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement {
                coeffs: vec![mul_mod(a.coeffs[0], b.coeffs[0], self.p)],
            };
        }
        self.reduce_fp_poly(&fpp_mul(&a.coeffs, &b.coeffs, self.p))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        if self.k == 1 {
            return Some(FieldElement {
                coeffs: vec![pow_mod(a.coeffs[0], self.p - 2, self.p)],
            });
        }
        let v = fpp_inv_mod(&a.coeffs, &self.modulus, self.p)
            .expect("nonzero element of a field is invertible");
        Some(self.reduce_fp_poly(&v))
    }

    pub fn pow_u64(&self, a: &FieldElement, mut n: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// a^n for signed n; negative exponents invert (a must be nonzero then).
    pub fn pow(&self, a: &FieldElement, n: i64) -> FieldElement {
        if n >= 0 {
            self.pow_u64(a, n as u64)
        } else {
            let inv = self.inv(a).expect("negative power of a unit");
            self.pow_u64(&inv, n.unsigned_abs())
        }
    }

    /// Exact multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElement) -> u64 {
        assert!(!a.is_zero(), "order of a nonzero element");
        let n = self.group_order();
        let mut ord = n;
        for (l, _) in factor_u64(n) {
            while ord.is_multiple_of(l) && self.pow_u64(a, ord / l) == self.one() {
                ord /= l;
            }
        }
        ord
    }

    /// First generator of the multiplicative group in the base-p counting
    /// order of coefficient vectors.
    pub fn generator(&self) -> FieldElement {
        let n = self.group_order();
        if n == 1 {
            return self.one();
        }
        let factors = factor_u64(n);
        for counter in 2..self.size() {
            let candidate = FieldElement {
                coeffs: digits_base_p(counter, self.p, self.k as usize),
            };
            if factors
                .iter()
                .all(|&(l, _)| self.pow_u64(&candidate, n / l) != self.one())
            {
                return candidate;
            }
        }
        unreachable!("every finite field has a multiplicative generator")
    }

    /// Renders an element as a residue polynomial in x (plain integer when
    /// the degree is 1).
    pub fn render(&self, a: &FieldElement) -> String {
        if self.k == 1 {
            return a.coeffs[0].to_string();
        }
        let mut pieces = Vec::new();
        for (i, &c) in a.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let piece = match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, _) => format!("{c}*x"),
                (_, 1) => format!("x^{i}"),
                (_, _) => format!("{c}*x^{i}"),
            };
            pieces.push(piece);
        }
        if pieces.is_empty() {
            "0".to_string()
        } else {
            pieces.join(" + ")
        }
    }
}

/// A specialized scalar: the field element together with its vanishing flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialized {
    value: FieldElement,
    is_zero: bool,
}

impl Specialized {
    pub fn is_zero(&self) -> bool {
        self.is_zero
    }

    pub fn value(&self) -> &FieldElement {
        &self.value
    }
}

/// A fully constructed specialization: the abstract parameters (e, p,
/// ρ-relation) plus the concrete field and the images of q and ρ in it.
#[derive(Debug, Clone)]
pub struct SpecializationParams {
    e: QuantumChar,
    p: FieldChar,
    rho: RhoRelation,
    field: PrimeField,
    q_image: FieldElement,
    rho_image: FieldElement,
}

impl SpecializationParams {
    /// Constructs the target field and images for the requested parameters.
    ///
    /// Fails with [`ScalarError::UnsatisfiableParams`] when no field
    /// realizes them: e ≤ 1 (the base ring localizes at q − q^{-1}, which
    /// dies when q² = 1), p not prime, p dividing a finite e, or resource
    /// caps on the field size.
    pub fn new(e: QuantumChar, p: FieldChar, rho: RhoRelation) -> Result<Self, ScalarError> {
        if let QuantumChar::Finite(ev) = e {
            if ev <= 1 {
                return Err(ScalarError::UnsatisfiableParams(format!(
                    "quantum characteristic {ev} forces q^2 = 1, where q - q^-1 is not invertible"
                )));
            }
            if ev > (1 << 32) {
                return Err(ScalarError::UnsatisfiableParams(format!(
                    "quantum characteristic {ev} exceeds the supported range"
                )));
            }
        }
        let (field, q_image) = match p {
            FieldChar::Zero => Self::char_zero_field(e)?,
            FieldChar::Prime(pv) => Self::char_p_field(e, pv, rho)?,
        };
        let rho_image = match rho {
            RhoRelation::Power(n0) => field.pow(&q_image, n0),
            RhoRelation::Generic => Self::generic_rho(&field, e),
        };
        Ok(SpecializationParams {
            e,
            p,
            rho,
            field,
            q_image,
            rho_image,
        })
    }

    /// Characteristic-zero emulation: 𝔽_P for a deterministic large prime P.
    fn char_zero_field(e: QuantumChar) -> Result<(PrimeField, FieldElement), ScalarError> {
        match e {
            QuantumChar::Finite(ev) => {
                let m = 2 * ev;
                let prime = next_prime_one_mod(EMULATION_FLOOR.max(m + 2), m);
                let field = PrimeField::prime(prime);
                let g = field.generator();
                let q = field.pow_u64(&g, (prime - 1) / m);
                debug_assert_eq!(field.multiplicative_order(&q), m);
                Ok((field, q))
            }
            QuantumChar::Infinite => {
                let prime = next_prime(EMULATION_FLOOR);
                let field = PrimeField::prime(prime);
                let q = field.generator();
                Ok((field, q))
            }
        }
    }

    /// Genuine characteristic p: the smallest extension 𝔽_{p^k} with an
    /// element whose square has order e (large-order element for e = ∞).
    fn char_p_field(
        e: QuantumChar,
        p: u64,
        rho: RhoRelation,
    ) -> Result<(PrimeField, FieldElement), ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::UnsatisfiableParams(format!(
                "field characteristic {p} is not prime"
            )));
        }
        if p > MAX_CHARACTERISTIC {
            return Err(ScalarError::UnsatisfiableParams(format!(
                "field characteristic {p} exceeds the supported range"
            )));
        }
        match e {
            QuantumChar::Finite(ev) => {
                if ev % p == 0 {
                    return Err(ScalarError::UnsatisfiableParams(format!(
                        "quantum characteristic {ev} is divisible by the field characteristic {p}; \
                         no element of characteristic-{p} field has q^2 of order {ev}"
                    )));
                }
                // q of order m gives q² of order exactly e: m = 2e in odd
                // characteristic; in characteristic 2 group orders are odd,
                // so m = e (e is odd here since p = 2 does not divide it).
                let m = if p == 2 { ev } else { 2 * ev };
                let base_k = multiplicative_order_mod(p, m);
                let mut k = base_k;
                if rho == RhoRelation::Generic {
                    // Grow until the group is big enough that a generator's
                    // square cannot lie in the order-m subgroup.
                    while checked_group_order(p, k).is_some_and(|n| n <= 2 * m) {
                        k += base_k;
                    }
                }
                let n = checked_group_order(p, k).ok_or_else(|| {
                    ScalarError::UnsatisfiableParams(format!(
                        "realizing quantum characteristic {ev} in characteristic {p} needs the \
                         field of {p}^{k} elements, beyond the supported size"
                    ))
                })?;
                let field = PrimeField::extension(p, k);
                let g = field.generator();
                let q = field.pow_u64(&g, n / m);
                debug_assert_eq!(field.multiplicative_order(&q), m);
                Ok((field, q))
            }
            QuantumChar::Infinite => {
                let mut k = 1;
                while checked_group_order(p, k).is_none_or(|n| n < INFINITE_ORDER_FLOOR) {
                    k += 1;
                    assert!(k <= 64, "field size search must terminate");
                }
                let field = PrimeField::extension(p, k);
                let q = field.generator();
                Ok((field, q))
            }
        }
    }

    /// ρ-image for the generic relation: an element whose square satisfies
    /// no relation ρ²q^{2c} = 1 for any content-sized integer c.
    fn generic_rho(field: &PrimeField, e: QuantumChar) -> FieldElement {
        let g = field.generator();
        match e {
            // The q-image generates the order-m subgroup with m ≪ group
            // order, while g² has order at least half the group order, so
            // g² lies outside ⟨q⟩ entirely: no relation holds for any c.
            QuantumChar::Finite(_) => g,
            // The q-image is g itself; take ρ = g^s with s about a quarter
            // of the group order, so 2s + 2c ≡ 0 (mod group order) has no
            // solution with |c| small.
            QuantumChar::Infinite => field.pow_u64(&g, field.group_order() / 4),
        }
    }

    /// Parses the grammar `e=<int|inf>,p=<prime|0>,n=<int|generic>` and
    /// constructs the parameters.
    pub fn parse(s: &str) -> Result<Self, ScalarError> {
        let bad = |msg: String| ScalarError::UnsatisfiableParams(msg);
        let mut e = None;
        let mut p = None;
        let mut n = None;
        for part in s.split(',') {
            let part = part.trim();
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, found `{part}`")))?;
            match (key.trim(), value.trim()) {
                ("e", "inf") => e = Some(QuantumChar::Infinite),
                ("e", v) => {
                    let ev = v
                        .parse::<u64>()
                        .map_err(|_| bad(format!("invalid quantum characteristic `{v}`")))?;
                    e = Some(QuantumChar::Finite(ev));
                }
                ("p", "0") => p = Some(FieldChar::Zero),
                ("p", v) => {
                    let pv = v
                        .parse::<u64>()
                        .map_err(|_| bad(format!("invalid field characteristic `{v}`")))?;
                    p = Some(FieldChar::Prime(pv));
                }
                ("n", "generic") => n = Some(RhoRelation::Generic),
                ("n", v) => {
                    let nv = v
                        .parse::<i64>()
                        .map_err(|_| bad(format!("invalid rho exponent `{v}`")))?;
                    n = Some(RhoRelation::Power(nv));
                }
                (k, _) => return Err(bad(format!("unknown parameter `{k}`"))),
            }
        }
        match (e, p, n) {
            (Some(e), Some(p), Some(n)) => Self::new(e, p, n),
            _ => Err(bad(
                "parameters must specify e=<int|inf>, p=<prime|0> and n=<int|generic>".to_string(),
            )),
        }
    }

    pub fn quantum_char(&self) -> QuantumChar {
        self.e
    }

    pub fn field_char(&self) -> FieldChar {
        self.p
    }

    pub fn rho_relation(&self) -> RhoRelation {
        self.rho
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    /// The prime actually used for evaluation: the emulation prime P in
    /// characteristic zero, p itself otherwise.
    pub fn eval_prime(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn q_image(&self) -> &FieldElement {
        &self.q_image
    }

    pub fn rho_image(&self) -> &FieldElement {
        &self.rho_image
    }

    fn eval_poly(&self, poly: &IntPoly) -> FieldElement {
        let mut acc = self.field.zero();
        for (&(a, b), c) in poly.terms() {
            let mut term = self.field.from_bigint(c);
            term = self
                .field
                .mul(&term, &self.field.pow_u64(&self.rho_image, u64::from(a)));
            term = self
                .field
                .mul(&term, &self.field.pow_u64(&self.q_image, u64::from(b)));
            acc = self.field.add(&acc, &term);
        }
        acc
    }

    /// Substitutes the q- and ρ-images into a reduced fraction.
    ///
    /// The reduced denominator (and the denominator of the rational
    /// coefficient) must not vanish; otherwise the scalar lies outside the
    /// local ring of the assignment and [`ScalarError::SpecializationPole`]
    /// is returned.
    pub fn specialize(&self, x: &ExactScalar) -> Result<Specialized, ScalarError> {
        let (coeff, rho_pow, q_pow, num, den) = x.parts();
        let den_image = self.eval_poly(den);
        if den_image.is_zero() {
            return Err(ScalarError::SpecializationPole);
        }
        let coeff_den = self.field.from_bigint(coeff.denom());
        if coeff_den.is_zero() {
            return Err(ScalarError::SpecializationPole);
        }
        let mut value = self.field.from_bigint(coeff.numer());
        value = self
            .field
            .mul(&value, &self.field.inv(&coeff_den).expect("nonzero"));
        value = self.field.mul(&value, &self.field.pow(&self.rho_image, rho_pow));
        value = self.field.mul(&value, &self.field.pow(&self.q_image, q_pow));
        value = self.field.mul(&value, &self.eval_poly(num));
        value = self
            .field
            .mul(&value, &self.field.inv(&den_image).expect("nonzero"));
        Ok(Specialized {
            is_zero: value.is_zero(),
            value,
        })
    }

    /// Specializes a bracket product by expanding to the reduced fraction
    /// first and evaluating that.
    ///
    /// Trusting the factored exponents instead would misreport products
    /// whose numerator and denominator brackets share cyclotomic content
    /// under the assignment.
    pub fn specialize_product(&self, b: &BracketProduct) -> Result<Specialized, ScalarError> {
        self.specialize(&b.expand())
    }
}

impl fmt::Display for SpecializationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e={},p={},n={}", self.e, self.p, self.rho)
    }
}

// ---------------------------------------------------------------------------
// u64 number theory
// ---------------------------------------------------------------------------

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn next_prime(start: u64) -> u64 {
    let mut n = start.max(2);
    if n.is_multiple_of(2) {
        if n == 2 {
            return 2;
        }
        n += 1;
    }
    while !is_prime(n) {
        n += 2;
    }
    n
}

/// Smallest prime ≥ start that is ≡ 1 (mod m).
fn next_prime_one_mod(start: u64, m: u64) -> u64 {
    let mut n = start + (m - (start - 1) % m) % m;
    debug_assert_eq!(n % m, 1);
    while !is_prime(n) {
        n += m;
    }
    n
}

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut d = 2;
    while u128::from(d) * u128::from(d) <= u128::from(n) {
        if n.is_multiple_of(d) {
            let mut mult = 0;
            while n.is_multiple_of(d) {
                n /= d;
                mult += 1;
            }
            factors.push((d, mult));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// Multiplicative order of a modulo m, for gcd(a, m) = 1.
fn multiplicative_order_mod(a: u64, m: u64) -> u32 {
    let mut acc = a % m;
    let mut k = 1;
    while acc != 1 {
        acc = mul_mod(acc, a, m);
        k += 1;
        assert!(k <= m as u32, "order search requires gcd(a, m) = 1");
    }
    k
}

/// p^k − 1 when p^k stays within the supported field size.
fn checked_group_order(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k).filter(|&s| s <= MAX_FIELD_SIZE).map(|s| s - 1)
}

fn digits_base_p(mut n: u64, p: u64, len: usize) -> Vec<u64> {
    let mut digits = vec![0; len];
    for d in digits.iter_mut() {
        *d = n % p;
        n /= p;
        if n == 0 {
            break;
        }
    }
    debug_assert_eq!(n, 0, "counter must fit in {len} base-{p} digits");
    digits
}

// ---------------------------------------------------------------------------
// Polynomial arithmetic over 𝔽_p (little-endian coefficient vectors)
// ---------------------------------------------------------------------------

fn fpp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fpp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    fpp_trim(out)
}

fn fpp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    fpp_trim(out)
}

/// Quotient and remainder by an arbitrary nonzero divisor.
fn fpp_divmod(a: &[u64], d: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let d = fpp_trim(d.to_vec());
    assert!(!d.is_empty(), "polynomial division by zero");
    let lead_inv = pow_mod(*d.last().unwrap(), p - 2, p);
    let mut rem = fpp_trim(a.to_vec());
    let mut quot = vec![0u64; rem.len().saturating_sub(d.len() - 1)];
    while rem.len() >= d.len() {
        let shift = rem.len() - d.len();
        let c = mul_mod(*rem.last().unwrap(), lead_inv, p);
        let mut sub = vec![0u64; shift];
        sub.extend(d.iter().map(|&x| mul_mod(x, c, p)));
        rem = fpp_sub(&rem, &sub, p);
        quot[shift] = c;
    }
    (fpp_trim(quot), rem)
}

fn fpp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    fpp_divmod(a, m, p).1
}

fn fpp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut f = fpp_trim(a.to_vec());
    let mut g = fpp_trim(b.to_vec());
    while !g.is_empty() {
        let r = fpp_rem(&f, &g, p);
        f = g;
        g = r;
    }
    f
}

fn fpp_pow_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1];
    let mut base = fpp_rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fpp_rem(&fpp_mul(&acc, &base, p), m, p);
        }
        base = fpp_rem(&fpp_mul(&base, &base, p), m, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a modulo m (m irreducible, a ≢ 0), by the extended Euclidean
/// algorithm.
fn fpp_inv_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = fpp_trim(m.to_vec());
    let mut r1 = fpp_rem(a, m, p);
    let mut t0: Vec<u64> = Vec::new();
    let mut t1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = fpp_divmod(&r0, &r1, p);
        let t = fpp_sub(&t0, &fpp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if r0.len() != 1 {
        return None;
    }
    let scale = pow_mod(r0[0], p - 2, p);
    Some(fpp_trim(
        t0.iter().map(|&c| mul_mod(c, scale, p)).collect(),
    ))
}

/// Irreducibility over 𝔽_p: f (monic, degree k ≥ 2) is irreducible iff
/// x^{p^k} ≡ x (mod f) and gcd(x^{p^{k/l}} − x, f) = 1 for every prime l | k.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    let x = vec![0, 1];
    // x^{p^j} mod f by iterated p-th powers.
    let frobenius_power = |j: usize| -> Vec<u64> {
        let mut h = fpp_rem(&x, f, p);
        for _ in 0..j {
            h = fpp_pow_mod(&h, p, f, p);
        }
        h
    };
    if fpp_sub(&frobenius_power(k), &x, p) != Vec::<u64>::new() {
        return false;
    }
    for (l, _) in factor_u64(k as u64) {
        let h = frobenius_power(k / l as usize);
        let g = fpp_gcd(&fpp_sub(&h, &x, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
