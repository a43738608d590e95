//! Blocks of the walled Brauer algebra at special parameter values, and the
//! criterion for a cell module's Gram determinant to survive specialization.
//!
//! Everything here works relative to a [`SpecializationParams`] assignment —
//! a quantum characteristic e (the multiplicative order of q²), a field
//! characteristic p, and optionally the relation ρ² = q^{2n}:
//!
//! - [`n_paired`] / [`n_balanced`] — the pairing relation on box contents
//!   (a + b ≡ n mod e) and the induced relation on bipartitions, certified
//!   by explicit box pairings.
//! - [`blocks`] — the partition of Λ_{r,t} into n-balanced classes, offered
//!   only in the regime e > max{r, t} where it is the block decomposition.
//! - [`lemma_block_n_set`] — the integers n realized by content-balanced
//!   growths of a fixed shape inside Λ_{r,t}; these are the resonance values
//!   of ρ at which the Gram determinant can vanish.
//! - [`gram_nonzero`] (alias [`is_simple_head`]) — the three-part
//!   nonvanishing criterion: no ρ-resonance, both components e-restricted,
//!   row-constant hook valuations.
//! - [`vanishing_crosscheck`] — an independent consistency check that
//!   specializing the factored determinant agrees with the criterion.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::coefficients::CoefficientError;
use crate::gram::{gram_det, GramError};
use crate::partitions::{
    e_restricted, enumerate_lambda, Bipartition, Component, LambdaPoint, Node, Partition,
};
use crate::scalars::{FieldChar, QuantumChar, RhoRelation, ScalarError, SpecializationParams};

/// Errors from the block-theoretic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    /// The parameters impose no relation ρ² = q^{2n}, so no pairing integer
    /// n is fixed.
    #[error("no relation rho^2 = q^(2n) is imposed, so n-pairing is undefined")]
    GenericRho,
    /// The block classification is only valid for e > max{r, t}; refusing to
    /// extrapolate beyond that regime.
    #[error("block classification requires quantum characteristic e > max(r, t)")]
    PreconditionViolated,
}

fn side(component: Component) -> &'static str {
    match component {
        Component::First => "first",
        Component::Second => "second",
    }
}

/// Whether two box contents a, b satisfy the pairing relation a + b ≡ n
/// (mod e), with exact equality when e is infinite.
pub fn n_paired(a: i64, b: i64, params: &SpecializationParams) -> Result<bool, BlockError> {
    let RhoRelation::Power(n) = params.rho_relation() else {
        return Err(BlockError::GenericRho);
    };
    Ok(match params.quantum_char() {
        QuantumChar::Finite(e) => {
            let e = i64::try_from(e).expect("quantum characteristic fits in i64");
            (a + b - n).rem_euclid(e) == 0
        }
        QuantumChar::Infinite => a + b == n,
    })
}

/// A certificate that two bipartitions are n-balanced: perfect pairings of
/// first-component against second-component boxes, one for each side's
/// complement of the componentwise intersection. Every pair is n-paired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceWitness {
    /// Pairs (first-component box, second-component box) covering the boxes
    /// of λ outside λ ∧ μ.
    pub lambda_pairs: Vec<(Node, Node)>,
    /// The same for the boxes of μ outside λ ∧ μ.
    pub mu_pairs: Vec<(Node, Node)>,
}

/// Kuhn's augmenting-path search: can `u` be matched, displacing earlier
/// matches if necessary?
fn augment(
    u: usize,
    edge: &dyn Fn(usize, usize) -> bool,
    n_right: usize,
    seen: &mut [bool],
    owner: &mut [Option<usize>],
) -> bool {
    for v in 0..n_right {
        if !seen[v] && edge(u, v) {
            seen[v] = true;
            let freed = match owner[v] {
                None => true,
                Some(w) => augment(w, edge, n_right, seen, owner),
            };
            if freed {
                owner[v] = Some(u);
                return true;
            }
        }
    }
    false
}

/// A perfect matching in the bipartite graph on `0..n_left` × `0..n_right`
/// with the given edge predicate, as (left, right) index pairs sorted by the
/// left index; `None` when sizes differ or no perfect matching exists.
fn perfect_matching(
    n_left: usize,
    n_right: usize,
    edge: &dyn Fn(usize, usize) -> bool,
) -> Option<Vec<(usize, usize)>> {
    if n_left != n_right {
        return None;
    }
    let mut owner: Vec<Option<usize>> = vec![None; n_right];
    for u in 0..n_left {
        let mut seen = vec![false; n_right];
        if !augment(u, edge, n_right, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut pairs: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .map(|(v, u)| (u.expect("matching is perfect"), v))
        .collect();
    pairs.sort_unstable();
    Some(pairs)
}

/// Matches the two box lists so that every pair is n-paired.
fn paired_boxes(
    first: &[Node],
    second: &[Node],
    params: &SpecializationParams,
) -> Result<Option<Vec<(Node, Node)>>, BlockError> {
    let mut compatible = vec![vec![false; second.len()]; first.len()];
    for (i, a) in first.iter().enumerate() {
        for (j, b) in second.iter().enumerate() {
            compatible[i][j] = n_paired(a.content(), b.content(), params)?;
        }
    }
    Ok(perfect_matching(first.len(), second.len(), &|i, j| compatible[i][j])
        .map(|pairs| pairs.into_iter().map(|(i, j)| (first[i], second[j])).collect()))
}

/// Whether λ and μ are n-balanced, with a certifying witness when they are.
///
/// Both skew regions of λ against the componentwise intersection λ ∧ μ must
/// admit a perfect first-against-second pairing with every pair n-paired,
/// and likewise for the skew regions of μ. Equal bipartitions are balanced
/// with the empty witness.
pub fn n_balanced(
    lambda: &Bipartition,
    mu: &Bipartition,
    params: &SpecializationParams,
) -> Result<Option<BalanceWitness>, BlockError> {
    if matches!(params.rho_relation(), RhoRelation::Generic) {
        return Err(BlockError::GenericRho);
    }
    let meet_first = lambda.first.meet(&mu.first);
    let meet_second = lambda.second.meet(&mu.second);
    let Some(lambda_pairs) = paired_boxes(
        &lambda.first.skew_boxes(&meet_first),
        &lambda.second.skew_boxes(&meet_second),
        params,
    )?
    else {
        return Ok(None);
    };
    let Some(mu_pairs) = paired_boxes(
        &mu.first.skew_boxes(&meet_first),
        &mu.second.skew_boxes(&meet_second),
        params,
    )?
    else {
        return Ok(None);
    };
    Ok(Some(BalanceWitness { lambda_pairs, mu_pairs }))
}

/// The partition of Λ_{r,t} into n-balanced classes.
#[derive(Debug, Clone)]
pub struct BlockPartition {
    pub r: u32,
    pub t: u32,
    /// The parameters the classes were computed at.
    pub params: SpecializationParams,
    /// Classes in order of their earliest member; members in enumeration
    /// order of Λ_{r,t}.
    pub classes: Vec<Vec<LambdaPoint>>,
}

impl BlockPartition {
    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "t": self.t,
            "params": self.params.to_string(),
            "classes": self
                .classes
                .iter()
                .map(|class| class.iter().map(LambdaPoint::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Partitions Λ_{r,t} into n-balanced classes by union-find over all pairs.
///
/// Requires e > max{r, t}: below that bound the relation no longer computes
/// the blocks, so the call is refused rather than answered unreliably.
pub fn blocks(r: u32, t: u32, params: &SpecializationParams) -> Result<BlockPartition, BlockError> {
    if matches!(params.rho_relation(), RhoRelation::Generic) {
        return Err(BlockError::GenericRho);
    }
    if let QuantumChar::Finite(e) = params.quantum_char() {
        if e <= u64::from(r.max(t)) {
            return Err(BlockError::PreconditionViolated);
        }
    }
    let points = enumerate_lambda(r, t);
    let mut parent: Vec<usize> = (0..points.len()).collect();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if n_balanced(&points[i].shape, &points[j].shape, params)?.is_some() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[b] = a;
            }
        }
    }
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<LambdaPoint>> = Vec::new();
    for (i, point) in points.iter().enumerate() {
        let root = find(&mut parent, i);
        let idx = *class_of_root.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[idx].push(point.clone());
    }
    Ok(BlockPartition { r, t, params: params.clone(), classes })
}

/// One content-balanced growth of a shape: a larger point of Λ_{r,t} whose
/// two skew regions pair off with every pair's content sum equal to `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct GrowthWitness {
    n: i64,
    point: LambdaPoint,
    pairing: Vec<(Node, Node)>,
}

fn growth_witnesses(f: u32, shape: &Bipartition, r: u32, t: u32) -> Vec<GrowthWitness> {
    debug_assert_eq!(f + shape.first.size(), r, "point must lie in its context");
    debug_assert_eq!(f + shape.second.size(), t, "point must lie in its context");
    let mut out = Vec::new();
    for point in enumerate_lambda(r, t) {
        if point.shape == *shape || !point.shape.contains(shape) {
            continue;
        }
        let first = point.shape.first.skew_boxes(&shape.first);
        let second = point.shape.second.skew_boxes(&shape.second);
        if first.len() != second.len() || first.is_empty() {
            continue;
        }
        // All pair sums equal ⟹ k·n is the total skew content, so a single
        // candidate n remains to be checked per growth.
        let total: i64 = first.iter().chain(&second).map(Node::content).sum();
        let k = i64::try_from(first.len()).expect("skew size fits in i64");
        if total.rem_euclid(k) != 0 {
            continue;
        }
        let n = total.div_euclid(k);
        let edge = |i: usize, j: usize| first[i].content() + second[j].content() == n;
        if let Some(pairs) = perfect_matching(first.len(), second.len(), &edge) {
            let pairing = pairs.into_iter().map(|(i, j)| (first[i], second[j])).collect();
            out.push(GrowthWitness { n, point, pairing });
        }
    }
    out
}

/// All integers n realized by some content-balanced growth of (f, shape)
/// inside Λ_{r,t}: a strictly larger point whose skew regions pair off with
/// every pair's content sum exactly n. Modular reduction is the caller's
/// concern.
pub fn lemma_block_n_set(f: u32, shape: &Bipartition, r: u32, t: u32) -> BTreeSet<i64> {
    growth_witnesses(f, shape, r, t).into_iter().map(|w| w.n).collect()
}

/// The valuation v_p(h/e) when e is finite and divides h, and −1 otherwise;
/// characteristic zero uses the convention v(m) = 0.
pub fn v_ep(h: u64, e: QuantumChar, p: FieldChar) -> i64 {
    debug_assert!(h > 0, "hook lengths are positive");
    let QuantumChar::Finite(e) = e else {
        return -1;
    };
    if !h.is_multiple_of(e) {
        return -1;
    }
    match p {
        FieldChar::Zero => 0,
        FieldChar::Prime(p) => {
            let mut m = h / e;
            let mut v = 0;
            while m.is_multiple_of(p) {
                m /= p;
                v += 1;
            }
            v
        }
    }
}

/// Why a specialized Gram determinant vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VanishingCause {
    /// ρ² = q^{2n} for an n realized by a content-balanced growth.
    RhoResonance { n: i64 },
    /// A component has a column difference reaching the quantum
    /// characteristic.
    NotRestricted { component: Component },
    /// A row of a component carries hooks with different valuations.
    UnevenHookValuations { component: Component, row: u32 },
}

impl fmt::Display for VanishingCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanishingCause::RhoResonance { n } => {
                write!(f, "rho resonance: a balanced growth realizes n = {n}")
            }
            VanishingCause::NotRestricted { component } => {
                write!(f, "{} component is not e-restricted", side(*component))
            }
            VanishingCause::UnevenHookValuations { component, row } => {
                write!(f, "uneven hook valuations in row {row} of the {} component", side(*component))
            }
        }
    }
}

/// The verdict of [`gram_nonzero`]: whether the determinant survives, and
/// the first failing condition when it does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonvanishingVerdict {
    pub nonzero: bool,
    pub cause: Option<VanishingCause>,
}

impl NonvanishingVerdict {
    fn vanishing(cause: VanishingCause) -> Self {
        NonvanishingVerdict { nonzero: false, cause: Some(cause) }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nonzero": self.nonzero,
            "cause": self.cause.as_ref().map_or(Value::Null, |c| Value::String(c.to_string())),
        })
    }
}

/// Whether the Gram determinant of the cell module at (f, shape) in B_{r,t}
/// stays nonzero under the given specialization.
///
/// The determinant survives if and only if
///
/// 1. ρ² avoids q^{2n} for every n in [`lemma_block_n_set`] — compared
///    modulo e when e is finite, since q^{2n} only depends on n mod e;
/// 2. both components are e-restricted;
/// 3. within every row of either component, all hook lengths share the same
///    [`v_ep`] valuation.
///
/// A generic ρ satisfies the first condition outright.
pub fn gram_nonzero(
    f: u32,
    shape: &Bipartition,
    r: u32,
    t: u32,
    params: &SpecializationParams,
) -> NonvanishingVerdict {
    let e = params.quantum_char();
    if let RhoRelation::Power(n0) = params.rho_relation() {
        for n in lemma_block_n_set(f, shape, r, t) {
            let resonant = match e {
                QuantumChar::Finite(e) => {
                    let e = i64::try_from(e).expect("quantum characteristic fits in i64");
                    (n - n0).rem_euclid(e) == 0
                }
                QuantumChar::Infinite => n == n0,
            };
            if resonant {
                return NonvanishingVerdict::vanishing(VanishingCause::RhoResonance { n });
            }
        }
    }
    for component in [Component::First, Component::Second] {
        let alone = Bipartition::new(shape.component(component).clone(), Partition::empty());
        if !e_restricted(&alone, e) {
            return NonvanishingVerdict::vanishing(VanishingCause::NotRestricted { component });
        }
    }
    for component in [Component::First, Component::Second] {
        let part = shape.component(component);
        for row in 1..=part.rows() {
            let valuations: Vec<i64> = (1..=part.part(row))
                .map(|col| {
                    let h = part.hook_length(Node::new(row, col)).expect("box of its own diagram");
                    v_ep(u64::from(h), e, params.field_char())
                })
                .collect();
            if valuations.windows(2).any(|w| w[0] != w[1]) {
                return NonvanishingVerdict::vanishing(VanishingCause::UnevenHookValuations {
                    component,
                    row,
                });
            }
        }
    }
    NonvanishingVerdict { nonzero: true, cause: None }
}

/// The cell module at (f, shape) has simple head exactly when its Gram
/// determinant survives specialization; alias of [`gram_nonzero`].
pub fn is_simple_head(
    f: u32,
    shape: &Bipartition,
    r: u32,
    t: u32,
    params: &SpecializationParams,
) -> NonvanishingVerdict {
    gram_nonzero(f, shape, r, t, params)
}

/// Outcome of checking the criterion against the specialized determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Crosscheck {
    /// Both routes returned the same verdict.
    Agree { nonzero: bool },
    /// The routes disagree; reported, never suppressed.
    Disagree { criterion_nonzero: bool, determinant_nonzero: bool },
    /// The determinant could not be evaluated at the assignment (a pole).
    Indeterminate,
}

impl Crosscheck {
    pub fn to_json(&self) -> Value {
        match self {
            Crosscheck::Agree { nonzero } => json!({ "status": "agree", "nonzero": nonzero }),
            Crosscheck::Disagree { criterion_nonzero, determinant_nonzero } => json!({
                "status": "disagree",
                "criterion_nonzero": criterion_nonzero,
                "determinant_nonzero": determinant_nonzero,
            }),
            Crosscheck::Indeterminate => json!({ "status": "indeterminate" }),
        }
    }
}

/// Computes the factored Gram determinant, specializes its expansion, and
/// compares vanishing with the [`gram_nonzero`] verdict.
pub fn vanishing_crosscheck(
    f: u32,
    shape: &Bipartition,
    r: u32,
    t: u32,
    params: &SpecializationParams,
) -> Result<Crosscheck, GramError> {
    let report = gram_det(f, shape, r, t)?;
    let criterion_nonzero = gram_nonzero(f, shape, r, t, params).nonzero;
    match params.specialize(&report.determinant_expanded) {
        Ok(value) => {
            let determinant_nonzero = !value.is_zero();
            if determinant_nonzero == criterion_nonzero {
                Ok(Crosscheck::Agree { nonzero: criterion_nonzero })
            } else {
                Ok(Crosscheck::Disagree { criterion_nonzero, determinant_nonzero })
            }
        }
        Err(ScalarError::SpecializationPole) => Ok(Crosscheck::Indeterminate),
        Err(other) => Err(CoefficientError::from(other).into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::central_scalar;

    fn params(s: &str) -> SpecializationParams {
        SpecializationParams::parse(s).expect("valid parameters")
    }

    fn bip(s: &str) -> Bipartition {
        Bipartition::parse(s).expect("valid bipartition")
    }

    #[test]
    fn paired_contents_follow_the_modular_rule() {
        let p50 = params("e=5,p=0,n=0");
        let p51 = params("e=5,p=0,n=1");
        let inf1 = params("e=inf,p=0,n=1");
        assert_eq!(n_paired(0, 0, &params("e=inf,p=0,n=0")), Ok(true));
        assert_eq!(n_paired(1, 0, &p51), Ok(true));
        assert_eq!(n_paired(3, 3, &p51), Ok(true), "6 is 1 mod 5");
        assert_eq!(n_paired(1, 0, &p50), Ok(false));
        assert_eq!(n_paired(3, 3, &inf1), Ok(false), "no reduction at infinite e");
        assert_eq!(n_paired(-2, 3, &inf1), Ok(true));
        assert_eq!(
            n_paired(0, 0, &params("e=5,p=0,n=generic")),
            Err(BlockError::GenericRho)
        );
    }

    #[test]
    fn balanced_shapes_come_with_checkable_witnesses() {
        let p0 = params("e=5,p=0,n=0");
        let lambda = bip("2,1|1,1");
        let witness = n_balanced(&lambda, &lambda, &p0).unwrap().expect("equal shapes");
        assert!(witness.lambda_pairs.is_empty() && witness.mu_pairs.is_empty());

        let witness = n_balanced(&bip("1|1"), &bip("|"), &p0).unwrap().expect("0 + 0 = 0");
        assert_eq!(witness.lambda_pairs, vec![(Node::new(1, 1), Node::new(1, 1))]);
        assert!(witness.mu_pairs.is_empty());

        let two = bip("2|2");
        let witness = n_balanced(&two, &bip("|"), &params("e=5,p=0,n=1"))
            .unwrap()
            .expect("pair 0 with 1 and 1 with 0");
        let mut firsts: Vec<Node> = witness.lambda_pairs.iter().map(|p| p.0).collect();
        let mut seconds: Vec<Node> = witness.lambda_pairs.iter().map(|p| p.1).collect();
        firsts.sort_unstable();
        seconds.sort_unstable();
        assert_eq!(firsts, two.first.skew_boxes(&Partition::empty()));
        assert_eq!(seconds, two.second.skew_boxes(&Partition::empty()));
        for (a, b) in &witness.lambda_pairs {
            assert_eq!(a.content() + b.content(), 1);
        }
        assert!(n_balanced(&two, &bip("|"), &params("e=5,p=0,n=2")).unwrap().is_none());

        // Skew regions of different sizes can never pair off.
        assert!(n_balanced(&bip("1|"), &bip("|"), &p0).unwrap().is_none());

        for a in enumerate_lambda(2, 2) {
            for b in enumerate_lambda(2, 2) {
                assert_eq!(
                    n_balanced(&a.shape, &b.shape, &p0).unwrap().is_some(),
                    n_balanced(&b.shape, &a.shape, &p0).unwrap().is_some(),
                    "balance is symmetric"
                );
            }
        }
    }

    #[test]
    fn block_partition_matches_hand_counts() {
        let one_block = blocks(1, 1, &params("e=2,p=0,n=0")).unwrap();
        assert_eq!(one_block.classes, vec![enumerate_lambda(1, 1)]);

        let split = blocks(1, 1, &params("e=2,p=0,n=1")).unwrap();
        assert_eq!(
            split.classes,
            enumerate_lambda(1, 1).into_iter().map(|p| vec![p]).collect::<Vec<_>>()
        );
        let json = split.to_json();
        assert_eq!(json["params"], "e=2,p=0,n=1");
        assert_eq!(json["classes"].as_array().unwrap().len(), 2);

        assert_eq!(
            blocks(2, 1, &params("e=2,p=0,n=0")).unwrap_err(),
            BlockError::PreconditionViolated
        );
        assert_eq!(
            blocks(1, 1, &params("e=2,p=0,n=generic")).unwrap_err(),
            BlockError::GenericRho
        );
        // An infinite quantum characteristic always clears the bound.
        assert!(blocks(2, 2, &params("e=inf,p=0,n=0")).is_ok());
    }

    #[test]
    fn computed_blocks_are_equivalence_classes() {
        let samples = [
            (2, 2, "e=5,p=0,n=0"),
            (2, 2, "e=5,p=0,n=1"),
            (3, 1, "e=5,p=0,n=-1"),
            (1, 3, "e=7,p=3,n=2"),
            (3, 3, "e=7,p=0,n=0"),
        ];
        for (r, t, setting) in samples {
            let params = params(setting);
            let partition = blocks(r, t, &params).unwrap();
            let total: usize = partition.classes.iter().map(Vec::len).sum();
            assert_eq!(total, enumerate_lambda(r, t).len());
            for class in &partition.classes {
                for a in class {
                    for b in class {
                        assert!(
                            n_balanced(&a.shape, &b.shape, &params).unwrap().is_some(),
                            "{a} and {b} share a class at {setting} but are not balanced"
                        );
                    }
                }
            }
            for (i, class) in partition.classes.iter().enumerate() {
                for other in partition.classes.iter().skip(i + 1) {
                    assert!(
                        n_balanced(&class[0].shape, &other[0].shape, &params)
                            .unwrap()
                            .is_none(),
                        "representatives of distinct classes at {setting} are balanced"
                    );
                }
            }
        }
    }

    #[test]
    fn growth_integer_sets_match_hand_enumeration() {
        assert_eq!(
            lemma_block_n_set(1, &bip("1|1"), 2, 2),
            BTreeSet::from([-2, 0, 2]),
            "one box on each side lands at contents ±1 or balances to zero"
        );
        assert_eq!(lemma_block_n_set(1, &bip("|"), 1, 1), BTreeSet::from([0]));
        assert_eq!(lemma_block_n_set(0, &bip("3|"), 3, 0), BTreeSet::new());
        assert_eq!(lemma_block_n_set(0, &bip("1|1"), 1, 1), BTreeSet::new());
    }

    #[test]
    fn growth_witnesses_certify_resonances() {
        let shape = bip("1|1");
        let witnesses = growth_witnesses(1, &shape, 2, 2);
        assert_eq!(witnesses.len(), 4, "four one-box-per-side growths");
        let resonant = params("e=inf,p=0,n=0");
        for w in &witnesses {
            assert!(w.point.shape.contains(&shape));
            for (a, b) in &w.pairing {
                assert_eq!(a.content() + b.content(), w.n);
                if w.n == 0 {
                    assert_eq!(n_paired(a.content(), b.content(), &resonant), Ok(true));
                }
            }
        }
    }

    #[test]
    fn hook_valuations_detect_divisibility() {
        let e3 = QuantumChar::Finite(3);
        assert_eq!(v_ep(6, e3, FieldChar::Prime(2)), 1);
        assert_eq!(v_ep(4, e3, FieldChar::Prime(2)), -1);
        assert_eq!(v_ep(4, e3, FieldChar::Zero), -1);
        assert_eq!(v_ep(3, e3, FieldChar::Zero), 0);
        assert_eq!(v_ep(12, e3, FieldChar::Prime(2)), 2);
        assert_eq!(v_ep(5, QuantumChar::Infinite, FieldChar::Prime(3)), -1);
    }

    #[test]
    fn nonvanishing_criterion_matches_known_cases() {
        // The 4×4 example: its determinant carries a factor of δ, which dies
        // at ρ = q⁰.
        let verdict = gram_nonzero(1, &bip("1|1"), 2, 2, &params("e=inf,p=0,n=0"));
        assert!(!verdict.nonzero);
        assert_eq!(verdict.cause, Some(VanishingCause::RhoResonance { n: 0 }));

        let verdict = gram_nonzero(1, &bip("1|1"), 2, 2, &params("e=inf,p=0,n=generic"));
        assert!(verdict.nonzero && verdict.cause.is_none());

        let verdict = gram_nonzero(0, &bip("3|"), 3, 0, &params("e=2,p=0,n=generic"));
        assert_eq!(
            verdict.cause,
            Some(VanishingCause::NotRestricted { component: Component::First })
        );

        // Hooks 3 and 1 share the first row of (2,1); only one is divisible
        // by e = 3.
        let verdict = gram_nonzero(0, &bip("2,1|"), 3, 0, &params("e=3,p=2,n=generic"));
        assert_eq!(
            verdict.cause,
            Some(VanishingCause::UnevenHookValuations { component: Component::First, row: 1 })
        );

        let verdict = gram_nonzero(0, &bip("1,1|"), 2, 0, &params("e=2,p=0,n=generic"));
        assert!(verdict.nonzero, "single-box rows are always row-constant");

        assert_eq!(
            is_simple_head(1, &bip("1|1"), 2, 2, &params("e=inf,p=0,n=0")),
            gram_nonzero(1, &bip("1|1"), 2, 2, &params("e=inf,p=0,n=0"))
        );
    }

    #[test]
    fn criterion_agrees_with_specialized_determinants() {
        assert_eq!(
            vanishing_crosscheck(1, &bip("1|1"), 2, 2, &params("e=inf,p=0,n=0")).unwrap(),
            Crosscheck::Agree { nonzero: false }
        );

        let grid = ["e=7,p=0,n=0", "e=5,p=3,n=1", "e=inf,p=0,n=generic", "e=inf,p=2,n=-1"];
        for setting in grid {
            let params = params(setting);
            for r in 0..=4u32 {
                for t in 0..=4 - r {
                    for point in enumerate_lambda(r, t) {
                        let outcome =
                            vanishing_crosscheck(point.f, &point.shape, r, t, &params).unwrap();
                        assert!(
                            matches!(outcome, Crosscheck::Agree { .. }),
                            "{point} in context ({r},{t}) at {setting}: {outcome:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn verdicts_restrict_to_smaller_contexts() {
        // With ρ generic the verdict only sees the shape, so cutting f
        // columns of boxes off the context changes nothing.
        for setting in ["e=inf,p=0,n=generic", "e=5,p=2,n=generic"] {
            let params = params(setting);
            for r in 0..=3u32 {
                for t in 0..=3u32 {
                    for point in enumerate_lambda(r, t) {
                        let full = gram_nonzero(point.f, &point.shape, r, t, &params);
                        let cut =
                            gram_nonzero(0, &point.shape, r - point.f, t - point.f, &params);
                        assert_eq!(full.nonzero, cut.nonzero, "{point} in ({r},{t}) at {setting}");
                    }
                }
            }
        }
    }

    #[test]
    fn blocks_refine_central_characters() {
        let samples = [(2, 2, "e=5,p=0,n=0"), (2, 2, "e=7,p=0,n=1"), (3, 1, "e=5,p=0,n=0")];
        for (r, t, setting) in samples {
            let params = params(setting);
            for class in blocks(r, t, &params).unwrap().classes {
                let image = |point: &LambdaPoint| {
                    params.specialize(&central_scalar(point)).expect("no pole").value().clone()
                };
                let first = image(&class[0]);
                for point in &class {
                    assert_eq!(image(point), first, "{point} breaks class at {setting}");
                }
            }
        }
    }
}
