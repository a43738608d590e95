//! Closed-form structure scalars of the orthogonal representation:
//!
//! - the eigenvalue of the central element on a cell module,
//! - the S-coefficients governing the action of the braid-like generators
//!   on the orthogonal basis (diagonal and off-diagonal parts),
//! - the wall coefficients E as hook-content ratios, together with the
//!   generating series W_r(u) whose residues recover them,
//! - quantum dimensions and their principal specialization as Schur
//!   polynomial values,
//! - the coefficient attached to the rectangle-shape homomorphism.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::partitions::{Component, LambdaPoint, Node, Partition};
use crate::scalars::{
    residue_at, BracketProduct, ExactScalar, RationalFunctionInU, ScalarError, UPoly,
};
use crate::tableaux::{content_of_step, precedes, Step, TableauError, UpDownTableau};

/// Errors for coefficient evaluation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoefficientError {
    /// The two box contents coincide, so the pair coefficients with a
    /// content difference in the denominator are undefined.
    #[error("box contents coincide; pair coefficients are undefined")]
    DegenerateContents,
    /// The requested off-diagonal coefficient needs a move that does not
    /// exist.
    #[error("no move exists at this index")]
    NoMove,
    /// The shapes on the two sides of the wall differ.
    #[error("shapes on both sides of the wall differ")]
    WallMismatch,
    /// A principal specialization was requested in fewer variables than the
    /// shape has rows.
    #[error("fewer variables than the shape has rows")]
    TooFewVariables,
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// ω = q − q^{-1}.
fn omega() -> ExactScalar {
    &ExactScalar::monomial(0, 1) - &ExactScalar::monomial(0, -1)
}

fn step_box(step: Step) -> Node {
    match step {
        Step::Add(_, node) | Step::Remove(_, node) => node,
    }
}

/// The scalar through which the central element acts on the cell module
/// indexed by (f, λ): f·δ plus the addition eigenvalue of every box of both
/// components.
pub fn central_scalar(point: &LambdaPoint) -> ExactScalar {
    let mut acc = &ExactScalar::delta() * &ExactScalar::from_int(i64::from(point.f));
    for node in point.shape.first.boxes() {
        acc = &acc + &content_of_step(Step::Add(Component::First, node));
    }
    for node in point.shape.second.boxes() {
        acc = &acc + &content_of_step(Step::Add(Component::Second, node));
    }
    acc
}

/// The four elementary move coefficients built from two box contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPairCoeffs {
    /// q^{c₁−c₂}/[c₁−c₂].
    pub s1: BracketProduct,
    /// [c₁−c₂+1][c₁−c₂−1]/[c₁−c₂]².
    pub s2: BracketProduct,
    /// [δ−c₁−c₂+1][δ−c₁−c₂−1]/[δ−c₁−c₂]².
    pub s1_star: BracketProduct,
    /// Coincides with s2.
    pub s2_star: BracketProduct,
}

pub fn s_pair_coeffs(c1: i64, c2: i64) -> Result<SPairCoeffs, CoefficientError> {
    if c1 == c2 {
        return Err(CoefficientError::DegenerateContents);
    }
    let diff = c1 - c2;
    let sum = c1 + c2;
    let s1 = BracketProduct::qint(diff).inv().mul_q_pow(diff);
    let s2 = BracketProduct::qint(diff + 1)
        .mul(&BracketProduct::qint(diff - 1))
        .mul(&BracketProduct::qint(diff).pow(-2));
    let s1_star = BracketProduct::qdelta(1 - sum)
        .mul(&BracketProduct::qdelta(-1 - sum))
        .mul(&BracketProduct::qdelta(-sum).pow(-2));
    Ok(SPairCoeffs {
        s1,
        s2: s2.clone(),
        s1_star,
        s2_star: s2,
    })
}

/// The off-diagonal coefficient S_{t, t·s_k}(k) of the generator acting at
/// position k on the orthogonal basis vector of t.
pub fn s_offdiag(t: &UpDownTableau, k: u32) -> Result<BracketProduct, CoefficientError> {
    let ts = t.apply_move(k)?.ok_or(CoefficientError::NoMove)?;
    if precedes(&ts, t)? {
        return Ok(BracketProduct::one());
    }
    let c1 = step_box(t.step(k)).content();
    let c2 = step_box(t.step(k + 1)).content();
    if k < t.r() {
        Ok(s_pair_coeffs(c1, c2)?.s2)
    } else if t.shape(k).contains(t.shape(k - 1)) && t.shape(k).contains(t.shape(k + 1)) {
        // Add-then-remove configuration: only the content sum enters, so
        // coinciding contents are harmless here.
        let sum = c1 + c2;
        Ok(BracketProduct::qdelta(1 - sum)
            .mul(&BracketProduct::qdelta(-1 - sum))
            .mul(&BracketProduct::qdelta(-sum).pow(-2)))
    } else {
        Ok(s_pair_coeffs(c1, c2)?.s2_star)
    }
}

/// The diagonal coefficient S_{t,t}(k) of the generator acting at position
/// k: −q^{-1} / q when the move is absent (same row / same column), the
/// content-difference formula before the wall, and the ρ-corrected
/// eigenvalue quotient after it.
pub fn s_diag(t: &UpDownTableau, k: u32) -> Result<ExactScalar, CoefficientError> {
    if k < 1 || k >= t.len() {
        return Err(TableauError::IndexOutOfRange.into());
    }
    if k == t.r() {
        return Err(TableauError::MoveAtWall.into());
    }
    let p1 = step_box(t.step(k));
    let p2 = step_box(t.step(k + 1));
    if t.apply_move(k)?.is_none() {
        return Ok(if p1.row == p2.row {
            -ExactScalar::monomial(0, -1)
        } else {
            ExactScalar::monomial(0, 1)
        });
    }
    if k < t.r() {
        let diff = p1.content() - p2.content();
        Ok(BracketProduct::qint(diff).inv().mul_q_pow(diff).expand())
    } else {
        let ck = t.content(k);
        let ck1 = t.content(k + 1);
        let num = &ExactScalar::monomial(1, 0) - &(&omega() * &ck1);
        Ok(num.div(&(&ck - &ck1))?)
    }
}

/// The quantum dimension ω_α = Π_{p∈[α]} [δ+c(p)]/[h_p] in factored form.
pub fn quantum_dim(alpha: &Partition) -> BracketProduct {
    let mut acc = BracketProduct::one();
    for node in alpha.boxes() {
        let hook = alpha.hook_length(node).expect("box lies in the diagram");
        acc = acc
            .mul(&BracketProduct::qdelta(node.content()))
            .mul(&BracketProduct::qint(i64::from(hook)).inv());
    }
    acc
}

/// The wall coefficient E_{t,t}(r) for a tableau whose shapes one step
/// before and after the wall agree: the quantum-dimension ratio
/// ω_{ν′}/ω_{μ′} of the conjugated wall shapes.
pub fn e_diag(t: &UpDownTableau) -> Result<BracketProduct, CoefficientError> {
    let r = t.r();
    if t.t() == 0 || r == 0 || t.shape(r - 1) != t.shape(r + 1) {
        return Err(CoefficientError::WallMismatch);
    }
    let mu = t.shape(r - 1).first.conjugate();
    let nu = t.shape(r).first.conjugate();
    Ok(quantum_dim(&nu).div(&quantum_dim(&mu)))
}

/// The generating series W_r(u) of wall coefficients, assembled in product
/// form from the first r − 1 content eigenvalues of a tableau prefix.
pub fn w_series(prefix_contents: &[ExactScalar], r: u32) -> RationalFunctionInU {
    assert!(r >= 1, "the series starts at r = 1");
    assert_eq!(
        prefix_contents.len() as u32,
        r - 1,
        "one content per step before the last"
    );
    let omega = omega();
    let rho = ExactScalar::monomial(1, 0);
    let rho_inv = ExactScalar::monomial(-1, 0);
    // ρ^{-1} + ωu, shared by the leading term and every product factor.
    let shifted = UPoly::from_coeffs(vec![rho_inv.clone(), omega.clone()]);
    let leading = RationalFunctionInU::new(
        UPoly::from_coeffs(vec![ExactScalar::zero(), rho.clone()]),
        shifted.clone(),
    );
    let mut tail = RationalFunctionInU::new(
        UPoly::from_coeffs(vec![ExactScalar::delta(), ExactScalar::from_int(-1)]),
        UPoly::from_coeffs(vec![ExactScalar::one(), &rho * &omega]),
    );
    for x in prefix_contents {
        let square = UPoly::u_minus(x).mul(&UPoly::u_minus(x));
        let scale = &(&omega * x) + &rho_inv;
        let den = square.sub(&shifted.scale(&scale));
        tail = tail.mul(&RationalFunctionInU::new(square, den));
    }
    leading.add(&tail)
}

/// The wall coefficient recovered as Res_{u=c_t(r)} W_r(u)/u; agrees with
/// the expansion of [`e_diag`] whenever the latter is defined.
pub fn e_diag_via_residue(t: &UpDownTableau) -> Result<ExactScalar, CoefficientError> {
    let r = t.r();
    if t.t() == 0 || r == 0 || t.shape(r - 1) != t.shape(r + 1) {
        return Err(CoefficientError::WallMismatch);
    }
    let contents: Vec<ExactScalar> = (1..r).map(|k| t.content(k)).collect();
    let over_u = w_series(&contents, r).div(&RationalFunctionInU::from_poly(UPoly::u()))?;
    Ok(residue_at(&over_u, &t.content(r))?)
}

/// The principal specialization s_α(q^{1−n}, q^{3−n}, …, q^{n−1}), summed
/// over semistandard tableaux with entries ≤ n.
pub fn schur_principal(alpha: &Partition, n: u32) -> Result<ExactScalar, CoefficientError> {
    if alpha.rows() > n {
        return Err(CoefficientError::TooFewVariables);
    }
    let widths: Vec<usize> = (1..=alpha.rows()).map(|i| alpha.part(i) as usize).collect();
    // Row offsets into the row-major cell list.
    let offsets: Vec<usize> = widths
        .iter()
        .scan(0, |acc, w| {
            let start = *acc;
            *acc += w;
            Some(start)
        })
        .collect();
    let total: usize = widths.iter().sum();
    let mut values = vec![0u32; total];
    let mut exponents: BTreeMap<i64, i64> = BTreeMap::new();
    fn fill(
        idx: usize,
        exponent: i64,
        n: u32,
        widths: &[usize],
        offsets: &[usize],
        values: &mut Vec<u32>,
        exponents: &mut BTreeMap<i64, i64>,
    ) {
        if idx == values.len() {
            *exponents.entry(exponent).or_insert(0) += 1;
            return;
        }
        let row = (0..offsets.len())
            .rfind(|&r| offsets[r] <= idx)
            .expect("index inside the diagram");
        let col = idx - offsets[row];
        let mut min = 1;
        if col > 0 {
            min = min.max(values[idx - 1]);
        }
        if row > 0 && col < widths[row - 1] {
            min = min.max(values[offsets[row - 1] + col] + 1);
        }
        for v in min..=n {
            values[idx] = v;
            let term = i64::from(2 * v) - 1 - i64::from(n);
            fill(
                idx + 1,
                exponent + term,
                n,
                widths,
                offsets,
                values,
                exponents,
            );
        }
    }
    fill(0, 0, n, &widths, &offsets, &mut values, &mut exponents);
    let mut acc = ExactScalar::zero();
    for (e, count) in exponents {
        acc = &acc + &(&ExactScalar::from_int(count) * &ExactScalar::monomial(0, e));
    }
    Ok(acc)
}

/// The scalar δ + ρq^{m}[m], m = a − b + c − d, attached to the
/// homomorphism between cell modules of rectangular shapes (a^b) and (c^d);
/// it vanishes exactly on the locus ρ² = q^{−2m}.
pub fn rect_hom_coeff(a: u32, b: u32, c: u32, d: u32) -> ExactScalar {
    let m = i64::from(a) - i64::from(b) + i64::from(c) - i64::from(d);
    let bracket = BracketProduct::qint(m).mul_q_pow(m).expand();
    &ExactScalar::delta() + &(&ExactScalar::monomial(1, 0) * &bracket)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_lambda, Bipartition};
    use crate::tableaux::enumerate_updown;

    fn bp(s: &str) -> Bipartition {
        Bipartition::parse(s).unwrap()
    }

    fn path(r: u32, t: u32, shapes: &[&str]) -> UpDownTableau {
        UpDownTableau::new(r, t, shapes.iter().map(|s| bp(s)).collect()).unwrap()
    }

    fn b22_paths() -> [UpDownTableau; 4] {
        [
            path(2, 2, &["-|-", "1|-", "2|-", "1|-", "1|1"]),
            path(2, 2, &["-|-", "1|-", "1,1|-", "1|-", "1|1"]),
            path(2, 2, &["-|-", "1|-", "2|-", "2|1", "1|1"]),
            path(2, 2, &["-|-", "1|-", "1,1|-", "1,1|1", "1|1"]),
        ]
    }

    #[test]
    fn central_scalar_goldens_and_path_independence() {
        let empty = LambdaPoint::new(0, bp("-|-"));
        assert!(central_scalar(&empty).is_zero());
        let one_one = LambdaPoint::new(1, bp("1|1"));
        assert_eq!(central_scalar(&one_one), ExactScalar::delta());

        for r in 0..=2u32 {
            for t in 0..=2u32 {
                for point in enumerate_lambda(r, t) {
                    let expected = central_scalar(&point);
                    for path in enumerate_updown(r, t, &point.shape).unwrap() {
                        let sum = path
                            .content_vector()
                            .into_iter()
                            .fold(ExactScalar::zero(), |a, b| &a + &b);
                        assert_eq!(sum, expected, "content sum at {point}");
                    }
                }
            }
        }
    }

    #[test]
    fn pair_coefficients_match_small_cases() {
        assert_eq!(
            s_pair_coeffs(1, 1),
            Err(CoefficientError::DegenerateContents)
        );
        let c = s_pair_coeffs(1, 0).unwrap();
        assert!(c.s2.is_zero(), "factor [0] kills S2 at content gap 1");
        let c = s_pair_coeffs(2, 0).unwrap();
        assert_eq!(c.s1, BracketProduct::qint(2).inv().mul_q_pow(2));
        assert_eq!(c.s2, c.s2_star);
        assert_eq!(
            c.s1_star,
            BracketProduct::qdelta(-1)
                .mul(&BracketProduct::qdelta(-3))
                .mul(&BracketProduct::qdelta(-2).pow(-2))
        );

        // q^{-a}[a] − q^{-b}[b] = q^{-a-b}[a−b].
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                let lhs = &BracketProduct::qint(a).mul_q_pow(-a).expand()
                    - &BracketProduct::qint(b).mul_q_pow(-b).expand();
                let rhs = BracketProduct::qint(a - b).mul_q_pow(-a - b).expand();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn offdiagonal_coefficients_on_the_four_paths() {
        let [t, s, u, v] = b22_paths();
        // The smaller tableau of each swapped pair carries the coefficient 1.
        assert!(s_offdiag(&t, 3).unwrap().is_one());
        assert!(s_offdiag(&s, 3).unwrap().is_one());
        // u and v are the larger ones; both sit in the add-then-remove
        // configuration, so the shifted brackets appear.
        assert_eq!(
            s_offdiag(&u, 3).unwrap(),
            BracketProduct::qdelta(0)
                .mul(&BracketProduct::qdelta(-2))
                .mul(&BracketProduct::qdelta(-1).pow(-2))
        );
        assert_eq!(
            s_offdiag(&v, 3).unwrap(),
            BracketProduct::qdelta(0)
                .mul(&BracketProduct::qdelta(2))
                .mul(&BracketProduct::qdelta(1).pow(-2))
        );
        assert_eq!(s_offdiag(&t, 1), Err(CoefficientError::NoMove));
        assert!(matches!(
            s_offdiag(&t, 2),
            Err(CoefficientError::Tableau(TableauError::MoveAtWall))
        ));
    }

    #[test]
    fn diagonal_coefficients_and_moveless_values() {
        let [t, s, _, _] = b22_paths();
        assert_eq!(s_diag(&t, 1).unwrap(), -ExactScalar::monomial(0, -1));
        assert_eq!(s_diag(&s, 1).unwrap(), ExactScalar::monomial(0, 1));
        let widen = path(3, 0, &["-|-", "1|-", "2|-", "2,1|-"]);
        assert_eq!(
            s_diag(&widen, 2).unwrap(),
            BracketProduct::qint(2).inv().mul_q_pow(2).expand()
        );
        assert!(matches!(
            s_diag(&t, 2),
            Err(CoefficientError::Tableau(TableauError::MoveAtWall))
        ));
        assert!(matches!(
            s_diag(&t, 4),
            Err(CoefficientError::Tableau(TableauError::IndexOutOfRange))
        ));
    }

    /// The action matrix at one move index on the span of f_t (and f_{ts}
    /// when the move exists) must satisfy the quadratic relation
    /// M² = (q−q^{-1})M + I.
    fn assert_quadratic(t: &UpDownTableau, k: u32) {
        let om = omega();
        let one = ExactScalar::one();
        match t.apply_move(k).unwrap() {
            None => {
                let d = s_diag(t, k).unwrap();
                assert_eq!(&d * &d, &(&om * &d) + &one);
            }
            Some(ts) => {
                let d1 = s_diag(t, k).unwrap();
                let d2 = s_diag(&ts, k).unwrap();
                let o1 = s_offdiag(t, k).unwrap().expand();
                let o2 = s_offdiag(&ts, k).unwrap().expand();
                assert_eq!(&(&d1 * &d1) + &(&o1 * &o2), &(&om * &d1) + &one);
                assert_eq!(&(&d2 * &d2) + &(&o1 * &o2), &(&om * &d2) + &one);
                assert_eq!(&o1 * &(&d1 + &d2), &om * &o1);
            }
        }
    }

    #[test]
    fn quadratic_relation_holds_for_all_small_moves() {
        for r in 0..=2u32 {
            for t in 0..=2u32 {
                for point in enumerate_lambda(r, t) {
                    for path in enumerate_updown(r, t, &point.shape).unwrap() {
                        for k in 1..r + t {
                            if k != r {
                                assert_quadratic(&path, k);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn wall_coefficients_match_hook_content_goldens() {
        let [t, s, u, _] = b22_paths();
        let two_inv = BracketProduct::qint(2).inv();
        assert_eq!(e_diag(&s).unwrap(), BracketProduct::qdelta(1).mul(&two_inv));
        assert_eq!(
            e_diag(&t).unwrap(),
            BracketProduct::qdelta(-1).mul(&two_inv)
        );
        let single = path(1, 1, &["-|-", "1|-", "-|-"]);
        assert_eq!(e_diag(&single).unwrap(), BracketProduct::qdelta(0));
        assert_eq!(e_diag(&u), Err(CoefficientError::WallMismatch));
    }

    #[test]
    fn residue_route_reproduces_wall_coefficients() {
        let col = path(2, 1, &["-|-", "1|-", "1,1|-", "1|-"]);
        let row = path(2, 1, &["-|-", "1|-", "2|-", "1|-"]);
        assert_eq!(
            e_diag_via_residue(&col).unwrap(),
            BracketProduct::qdelta(1).mul(&BracketProduct::qint(2).inv()).expand()
        );
        assert_eq!(
            e_diag_via_residue(&row).unwrap(),
            BracketProduct::qdelta(-1).mul(&BracketProduct::qint(2).inv()).expand()
        );
        // Exhaustive agreement with the hook-content route at small rank.
        for r in 1..=3u32 {
            for point in enumerate_lambda(r, 1) {
                for path in enumerate_updown(r, 1, &point.shape).unwrap() {
                    if path.shape(r - 1) != path.shape(r + 1) {
                        continue;
                    }
                    assert_eq!(
                        e_diag_via_residue(&path).unwrap(),
                        e_diag(&path).unwrap().expand(),
                        "wall coefficient at {point}"
                    );
                }
            }
        }
    }

    #[test]
    fn w_series_base_case_and_recursion() {
        let w1 = w_series(&[], 1);
        assert!(w1
            .sub(&RationalFunctionInU::from_scalar(ExactScalar::delta()))
            .is_zero());

        let omega = omega();
        let rho = ExactScalar::monomial(1, 0);
        let rho_inv = ExactScalar::monomial(-1, 0);
        let shifted = UPoly::from_coeffs(vec![rho_inv.clone(), omega.clone()]);
        let head = RationalFunctionInU::new(
            UPoly::from_coeffs(vec![ExactScalar::zero(), rho]),
            shifted.clone(),
        );
        for r in 1..=3u32 {
            for point in enumerate_lambda(r, 0) {
                for path in enumerate_updown(r, 0, &point.shape).unwrap() {
                    let contents: Vec<ExactScalar> =
                        (1..=r).map(|k| path.content(k)).collect();
                    let wr = w_series(&contents[..(r - 1) as usize], r);
                    let wr1 = w_series(&contents, r + 1);
                    let x = &contents[(r - 1) as usize];
                    let square = UPoly::u_minus(x).mul(&UPoly::u_minus(x));
                    let scale = &(&omega * x) + &rho_inv;
                    let factor = RationalFunctionInU::new(
                        square.clone(),
                        square.sub(&shifted.scale(&scale)),
                    );
                    let lhs = wr1.sub(&head);
                    let rhs = factor.mul(&wr.sub(&head));
                    assert!(lhs.sub(&rhs).is_zero(), "recursion step at r = {r}");
                }
            }
        }
    }

    #[test]
    fn quantum_dimension_and_principal_specialization() {
        assert_eq!(quantum_dim(&Partition::parse("1").unwrap()), BracketProduct::qdelta(0));
        for n in 1..=5u32 {
            assert_eq!(
                schur_principal(&Partition::parse("1").unwrap(), n).unwrap(),
                BracketProduct::qint(i64::from(n)).expand()
            );
        }
        assert_eq!(
            schur_principal(&Partition::parse("1,1,1").unwrap(), 2),
            Err(CoefficientError::TooFewVariables)
        );
        assert!(schur_principal(&Partition::empty(), 0).unwrap().is_one());

        for size in 0..=4u32 {
            for alpha in crate::partitions::partitions_of(size) {
                let dim = quantum_dim(&alpha).expand();
                for n in i64::from(alpha.rows())..=5 {
                    assert_eq!(
                        dim.substitute_rho_power(n, false).unwrap(),
                        schur_principal(&alpha, n as u32).unwrap(),
                        "principal specialization of {alpha} at n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn rectangle_coefficient_and_vanishing_locus() {
        assert_eq!(rect_hom_coeff(1, 1, 2, 2), ExactScalar::delta());
        let golden = rect_hom_coeff(2, 3, 1, 1);
        assert_eq!(
            golden,
            &ExactScalar::delta() - &ExactScalar::monomial(1, -1)
        );
        for (a, b, c, d) in [(2, 3, 1, 1), (3, 1, 2, 2), (1, 2, 3, 4), (4, 1, 1, 3)] {
            let m = i64::from(a) - i64::from(b) + i64::from(c) - i64::from(d);
            let coeff = rect_hom_coeff(a, b, c, d);
            assert!(coeff.substitute_rho_power(-m, false).unwrap().is_zero());
            assert!(coeff.substitute_rho_power(-m, true).unwrap().is_zero());
            assert!(!coeff.substitute_rho_power(-m + 1, false).unwrap().is_zero());
            assert!(!coeff.substitute_rho_power(-m - 1, false).unwrap().is_zero());
            assert!(!coeff.substitute_rho_power(m + 1, false).unwrap().is_zero());
        }
    }
}
