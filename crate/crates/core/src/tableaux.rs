//! Up-down tableaux: paths through the branching graph of the posets Λ_{r,t}.
//!
//! An up-down tableau of type (r, t) is a sequence of r + t + 1 bipartitions
//! starting at (∅, ∅): each of the first r steps adds one box to the first
//! component while the second stays empty, and each later step either adds a
//! box to the second component or removes one from the first.  This module
//! provides:
//!
//! - validation with a first-violation diagnosis, and exhaustive enumeration
//!   of the tableaux ending at a given shape,
//! - the total order ≺ on tableaux with a common endpoint,
//! - the distinguished tableaux t^λ (maximal) and t_λ (mirror construction),
//! - simple moves t ↦ t·s_k exchanging the boxes at steps k and k + 1,
//! - content eigenvalue vectors c_t(k),
//! - the prefix surgery (u, ū) behind the removal-step branching factors.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde_json::Value;
use thiserror::Error;

use crate::partitions::{dominance_leq, Bipartition, Component, LambdaPoint, Node, Partition};
use crate::scalars::{BracketProduct, ExactScalar};

/// Errors for tableau construction and path surgery.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableauError {
    /// The operands live in different (r, t) contexts or end at different
    /// shapes.
    #[error("operands belong to different contexts or end at different shapes")]
    ContextMismatch,
    /// The requested shape or step sequence is not valid.
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    /// A move index outside 1 ≤ k < r + t.
    #[error("move index is out of range")]
    IndexOutOfRange,
    /// Moves never exist at the wall position k = r.
    #[error("no move exists at the wall position")]
    MoveAtWall,
    /// The tableau is not in the configuration the operation requires.
    #[error("configuration mismatch: {0}")]
    ConfigurationMismatch(String),
}

/// One step of a path: the box added to, or removed from, one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Add(Component, Node),
    Remove(Component, Node),
}

/// The sequence of content eigenvalues c_t(1), …, c_t(r+t) of a tableau.
pub type ContentVector = Vec<ExactScalar>;

/// A path t_0, …, t_{r+t} in the branching graph, stored as its full shape
/// sequence.  Identity and ordering of tableaux always refer to the whole
/// sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UpDownTableau {
    r: u32,
    t: u32,
    steps: Vec<Bipartition>,
}

/// Index of the first step at which `steps` stops being a valid up-down
/// prefix for wall position r: step k must add a first-component box while
/// the second component is empty when k ≤ r, and either add a
/// second-component box or remove a first-component box when k > r.  Index 0
/// is reported when the sequence does not start at (∅, ∅).
pub fn first_violation(r: u32, steps: &[Bipartition]) -> Option<usize> {
    if steps.first().is_none_or(|s| *s != Bipartition::empty()) {
        return Some(0);
    }
    for k in 1..steps.len() {
        let prev = &steps[k - 1];
        let cur = &steps[k];
        let ok = if k as u32 <= r {
            cur.second.is_empty() && prev.first.added_box_to(&cur.first).is_some()
        } else {
            (prev.first == cur.first && prev.second.added_box_to(&cur.second).is_some())
                || (prev.second == cur.second && cur.first.added_box_to(&prev.first).is_some())
        };
        if !ok {
            return Some(k);
        }
    }
    None
}

/// Whether `from → to` is a legal single step at position k for wall r.
fn legal_step(r: u32, k: u32, from: &Bipartition, to: &Bipartition) -> bool {
    if k <= r {
        to.second.is_empty() && from.first.added_box_to(&to.first).is_some()
    } else {
        (from.first == to.first && from.second.added_box_to(&to.second).is_some())
            || (from.second == to.second && to.first.added_box_to(&from.first).is_some())
    }
}

/// All shapes reachable from `from` by one legal step at position k.
fn legal_successors(r: u32, k: u32, from: &Bipartition) -> Vec<Bipartition> {
    let mut out = Vec::new();
    if k <= r {
        for node in from.first.addable_nodes() {
            let first = from.first.with_box(node).expect("addable node");
            out.push(Bipartition::new(first, Partition::empty()));
        }
    } else {
        for node in from.second.addable_nodes() {
            let second = from.second.with_box(node).expect("addable node");
            out.push(Bipartition::new(from.first.clone(), second));
        }
        for node in from.first.removable_nodes() {
            let first = from.first.without_box(node).expect("removable node");
            out.push(Bipartition::new(first, from.second.clone()));
        }
    }
    out
}

impl UpDownTableau {
    /// Builds a tableau from its full shape sequence, validating every step.
    pub fn new(r: u32, t: u32, steps: Vec<Bipartition>) -> Result<Self, TableauError> {
        let expected = (r + t) as usize + 1;
        if steps.len() != expected {
            return Err(TableauError::InvalidShape(format!(
                "type ({r}, {t}) needs {expected} shapes, got {}",
                steps.len()
            )));
        }
        if let Some(i) = first_violation(r, &steps) {
            return Err(TableauError::InvalidShape(format!(
                "invalid step at index {i}"
            )));
        }
        Ok(UpDownTableau { r, t, steps })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Number of steps r + t.
    pub fn len(&self) -> u32 {
        self.r + self.t
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shapes(&self) -> &[Bipartition] {
        &self.steps
    }

    /// The shape t_k, 0 ≤ k ≤ r + t.
    pub fn shape(&self, k: u32) -> &Bipartition {
        &self.steps[k as usize]
    }

    pub fn final_shape(&self) -> &Bipartition {
        self.steps.last().expect("non-empty shape sequence")
    }

    /// Number of removal steps among the first k, recovered from
    /// k = 2·l + |t_k|.
    pub fn removals_before(&self, k: u32) -> u32 {
        (k - self.shape(k).size()) / 2
    }

    /// The point (l, t_k) of Λ_{min(k,r), max(k−r,0)} the prefix ends at.
    pub fn point_at(&self, k: u32) -> LambdaPoint {
        LambdaPoint::new(self.removals_before(k), self.shape(k).clone())
    }

    pub fn end_point(&self) -> LambdaPoint {
        self.point_at(self.len())
    }

    /// The box moved at step k, 1 ≤ k ≤ r + t.
    pub fn step(&self, k: u32) -> Step {
        assert!(1 <= k && k <= self.len(), "step index {k} out of range");
        let prev = &self.steps[(k - 1) as usize];
        let cur = &self.steps[k as usize];
        if prev.second == cur.second {
            if let Some(node) = prev.first.added_box_to(&cur.first) {
                return Step::Add(Component::First, node);
            }
            if let Some(node) = cur.first.added_box_to(&prev.first) {
                return Step::Remove(Component::First, node);
            }
        }
        if prev.first == cur.first {
            if let Some(node) = prev.second.added_box_to(&cur.second) {
                return Step::Add(Component::Second, node);
            }
            if let Some(node) = cur.second.added_box_to(&prev.second) {
                return Step::Remove(Component::Second, node);
            }
        }
        unreachable!("consecutive shapes of a valid tableau differ by one box")
    }

    /// The content eigenvalue sequence c_t(1), …, c_t(r+t).
    pub fn content_vector(&self) -> ContentVector {
        (1..=self.len()).map(|k| self.content(k)).collect()
    }

    /// The content eigenvalue c_t(k) of step k.
    pub fn content(&self, k: u32) -> ExactScalar {
        content_of_step(self.step(k))
    }

    /// Applies the simple move at position k, exchanging the boxes of steps
    /// k and k + 1.  Returns `None` exactly when the two boxes lie in the
    /// same row or the same column of one component.
    pub fn apply_move(&self, k: u32) -> Result<Option<UpDownTableau>, TableauError> {
        if k < 1 || k >= self.len() {
            return Err(TableauError::IndexOutOfRange);
        }
        if k == self.r {
            return Err(TableauError::MoveAtWall);
        }
        let prev = &self.steps[(k - 1) as usize];
        let mid = &self.steps[k as usize];
        let next = &self.steps[(k + 1) as usize];
        let mut replacement = None;
        for cand in legal_successors(self.r, k, prev) {
            if cand != *mid && legal_step(self.r, k + 1, &cand, next) {
                assert!(
                    replacement.is_none(),
                    "the exchanged intermediate shape is unique"
                );
                replacement = Some(cand);
            }
        }
        Ok(replacement.map(|cand| {
            let mut steps = self.steps.clone();
            steps[k as usize] = cand;
            UpDownTableau::new(self.r, self.t, steps).expect("move produces a valid tableau")
        }))
    }

    /// Drops the last step; the wall stays at r unless the path was purely
    /// pre-wall.
    pub fn hat(&self) -> UpDownTableau {
        assert!(!self.is_empty(), "cannot truncate the empty tableau");
        let (r, t) = if self.t > 0 {
            (self.r, self.t - 1)
        } else {
            (self.r - 1, 0)
        };
        let steps = self.steps[..self.steps.len() - 1].to_vec();
        UpDownTableau::new(r, t, steps).expect("prefix of a valid tableau is valid")
    }

    /// Replaces everything below the final step by the maximal tableau of
    /// the penultimate shape.
    pub fn tilde(&self) -> UpDownTableau {
        let hat = self.hat();
        let point = hat.end_point();
        let mut steps = tableau_max(point.f, &point.shape, hat.r(), hat.t())
            .expect("penultimate point is valid")
            .steps;
        steps.push(self.final_shape().clone());
        UpDownTableau::new(self.r, self.t, steps)
            .expect("maximal prefix admits the same final step")
    }

    /// Serializes as the JSON array of shapes.
    pub fn to_json(&self) -> Value {
        Value::Array(self.steps.iter().map(Bipartition::to_json).collect())
    }
}

impl fmt::Display for UpDownTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.steps.iter().map(ToString::to_string).join("\n"))
    }
}

/// The content eigenvalue attached to one step: additions of a box of
/// content c contribute ρ^{-1}q^{c}[c] on the first component and
/// ρq^{-c}[c] on the second; removing a first-component box contributes the
/// complement q^{c}[δ−c] = δ − ρ^{-1}q^{c}[c].
pub fn content_of_step(step: Step) -> ExactScalar {
    match step {
        Step::Add(Component::First, node) => {
            let c = node.content();
            BracketProduct::qint(c).mul_q_pow(c).expand() * ExactScalar::monomial(-1, 0)
        }
        Step::Add(Component::Second, node) => {
            let c = node.content();
            BracketProduct::qint(c).mul_q_pow(-c).expand() * ExactScalar::monomial(1, 0)
        }
        Step::Remove(Component::First, node) => {
            let c = node.content();
            BracketProduct::qdelta(-c).mul_q_pow(c).expand()
        }
        Step::Remove(Component::Second, _) => {
            unreachable!("valid tableaux never remove second-component boxes")
        }
    }
}

/// Strict comparison of two tableaux with the same endpoint: at the largest
/// index where they differ, compares the pairs (removal count, shape) by
/// removal count first and componentwise dominance second.
fn cmp_precedes(s: &UpDownTableau, t: &UpDownTableau) -> Ordering {
    for k in (0..s.steps.len()).rev() {
        if s.steps[k] == t.steps[k] {
            continue;
        }
        let k = k as u32;
        let (ls, lt) = (s.removals_before(k), t.removals_before(k));
        if ls != lt {
            return ls.cmp(&lt);
        }
        let (a, b) = (s.shape(k), t.shape(k));
        let s_below = dominance_leq(&a.first, &b.first) && dominance_leq(&a.second, &b.second);
        let t_below = dominance_leq(&b.first, &a.first) && dominance_leq(&b.second, &a.second);
        return match (s_below, t_below) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => unreachable!("shapes at a first difference are dominance-comparable"),
        };
    }
    Ordering::Equal
}

/// Whether s ≺ t strictly.  Both tableaux must share (r, t) and the final
/// shape.
pub fn precedes(s: &UpDownTableau, t: &UpDownTableau) -> Result<bool, TableauError> {
    if (s.r, s.t) != (t.r, t.t) || s.final_shape() != t.final_shape() {
        return Err(TableauError::ContextMismatch);
    }
    Ok(cmp_precedes(s, t) == Ordering::Less)
}

/// Checks that (f, shape) with f recovered from the sizes is a point of
/// Λ_{r,t}, returning f.
fn point_of(shape: &Bipartition, r: u32, t: u32) -> Result<u32, TableauError> {
    let (s1, s2) = (shape.first.size(), shape.second.size());
    if s1 > r || s2 > t || r - s1 != t - s2 {
        return Err(TableauError::InvalidShape(format!(
            "{shape} is not the shape of a point of the poset for ({r}, {t})"
        )));
    }
    Ok(r - s1)
}

/// Rowwise maximum of two partitions.
fn join(a: &Partition, b: &Partition) -> Partition {
    let rows = a.rows().max(b.rows());
    Partition::new(
        (1..=rows)
            .map(|i| a.part(i).max(b.part(i)))
            .collect::<Vec<_>>(),
    )
}

/// All up-down tableaux of type (r, t) ending at `shape`, sorted descending
/// under ≺, so the first entry is the maximal tableau t^λ.
pub fn enumerate_updown(
    r: u32,
    t: u32,
    shape: &Bipartition,
) -> Result<Vec<UpDownTableau>, TableauError> {
    point_of(shape, r, t)?;
    fn extend(
        r: u32,
        t: u32,
        target: &Bipartition,
        path: &mut Vec<Bipartition>,
        out: &mut Vec<UpDownTableau>,
    ) {
        let k = path.len() as u32 - 1;
        if k == r + t {
            out.push(
                UpDownTableau::new(r, t, path.clone()).expect("search emits valid paths"),
            );
            return;
        }
        let cur = path.last().expect("non-empty path").clone();
        for cand in legal_successors(r, k + 1, &cur) {
            let feasible = if k < r {
                join(&cand.first, &target.first).size() <= r
            } else {
                cand.first.contains(&target.first) && target.second.contains(&cand.second)
            };
            if feasible {
                path.push(cand);
                extend(r, t, target, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(r, t, shape, &mut vec![Bipartition::empty()], &mut out);
    out.sort_by(|a, b| cmp_precedes(b, a));
    Ok(out)
}

/// Appends the boxes of `p` in row-major order to `steps`, pairing each
/// intermediate first component with `second`.
fn row_fill_first(p: &Partition, steps: &mut Vec<Bipartition>) {
    let mut cur = steps.last().expect("seeded sequence").first.clone();
    for row in 1..=p.rows() {
        for col in 1..=p.part(row) {
            cur = cur.with_box(Node::new(row, col)).expect("row-major fill");
            steps.push(Bipartition::new(cur.clone(), Partition::empty()));
        }
    }
}

/// Appends the boxes of `p` in row-major order to the second component.
fn row_fill_second(p: &Partition, steps: &mut Vec<Bipartition>) {
    let first = steps.last().expect("seeded sequence").first.clone();
    let mut cur = steps.last().expect("seeded sequence").second.clone();
    for row in 1..=p.rows() {
        for col in 1..=p.part(row) {
            cur = cur.with_box(Node::new(row, col)).expect("row-major fill");
            steps.push(Bipartition::new(first.clone(), cur.clone()));
        }
    }
}

/// The maximal tableau t^λ for the point (f, λ) of Λ_{r,t}: row-fills the
/// first component with its first row widened by f, removes the f extra
/// boxes right to left, then row-fills the second component.
pub fn tableau_max(
    f: u32,
    shape: &Bipartition,
    r: u32,
    t: u32,
) -> Result<UpDownTableau, TableauError> {
    if point_of(shape, r, t)? != f {
        return Err(TableauError::InvalidShape(format!(
            "({f}, {shape}) is not a point of the poset for ({r}, {t})"
        )));
    }
    let mut widened = shape.first.parts().to_vec();
    if f > 0 {
        if widened.is_empty() {
            widened.push(f);
        } else {
            widened[0] += f;
        }
    }
    let mut steps = vec![Bipartition::empty()];
    row_fill_first(&Partition::new(widened), &mut steps);
    let base = shape.first.part(1);
    for i in (1..=f).rev() {
        let first = steps
            .last()
            .expect("seeded sequence")
            .first
            .without_box(Node::new(1, base + i))
            .expect("widened boxes are removable");
        steps.push(Bipartition::new(first, Partition::empty()));
    }
    row_fill_second(&shape.second, &mut steps);
    UpDownTableau::new(r, t, steps)
}

/// The mirror tableau t_λ: row-fills the first component padded with f unit
/// rows, mirrors the last f pre-wall shapes as removals, then row-fills the
/// second component.
pub fn tableau_min(
    f: u32,
    shape: &Bipartition,
    r: u32,
    t: u32,
) -> Result<UpDownTableau, TableauError> {
    if point_of(shape, r, t)? != f {
        return Err(TableauError::InvalidShape(format!(
            "({f}, {shape}) is not a point of the poset for ({r}, {t})"
        )));
    }
    let mut padded = shape.first.parts().to_vec();
    padded.extend(std::iter::repeat_n(1, f as usize));
    let mut steps = vec![Bipartition::empty()];
    row_fill_first(&Partition::new(padded), &mut steps);
    for k in 1..=f {
        steps.push(steps[(r - k) as usize].clone());
    }
    row_fill_second(&shape.second, &mut steps);
    UpDownTableau::new(r, t, steps)
}

/// Output of [`build_u_and_bar`]: the straightened prefix u of type (r, 1),
/// the cut position b, the removed-box column h, the endpoint ν of u, and
/// the bar-reduced tableau ū of type (r − b, 1).
#[derive(Debug, Clone)]
pub struct BarReduction {
    pub u: UpDownTableau,
    pub b: u32,
    pub h: u32,
    pub nu: Bipartition,
    pub u_bar: UpDownTableau,
}

/// Prefix surgery for a tableau whose truncation is maximal and whose last
/// step removes the first-component box p = (k, λ^{(1)}_k + 1) with k ≥ 2:
/// conjugates the removal down to position r + 1, straightens the pre-wall
/// chain, cuts the length-(r + 1) prefix u, and deletes the first k − 1
/// first-component rows of its tail to form ū.
pub fn build_u_and_bar(t: &UpDownTableau) -> Result<BarReduction, TableauError> {
    let (r, tt) = (t.r(), t.t());
    let Step::Remove(Component::First, p) = t.step(r + tt) else {
        return Err(TableauError::ConfigurationMismatch(
            "last step must remove a first-component box".to_string(),
        ));
    };
    let k = p.row;
    if k < 2 {
        return Err(TableauError::ConfigurationMismatch(
            "first-row removals use the direct branching formula".to_string(),
        ));
    }
    let hat = t.hat();
    let mu = hat.end_point();
    if hat != tableau_max(mu.f, &mu.shape, hat.r(), hat.t())? {
        return Err(TableauError::ConfigurationMismatch(
            "truncation is not the maximal tableau of its endpoint".to_string(),
        ));
    }
    let lambda = t.final_shape().clone();
    let f = t.end_point().f;
    let a_prev: u32 = (1..k).map(|i| lambda.first.part(i)).sum();
    let a_k = a_prev + lambda.first.part(k);
    let b = a_prev + f - 1;
    let h = lambda.first.part(k) + 1;

    let mut v = t.clone();
    for j in (1..tt).rev() {
        v = v
            .apply_move(r + j)?
            .expect("the removal step commutes past wall-side additions");
    }
    for m in (a_k + f)..r {
        v = v
            .apply_move(m)?
            .expect("the pre-wall straightening chain always moves");
    }
    let u = UpDownTableau::new(r, 1, v.steps[..=(r + 1) as usize].to_vec())
        .expect("length-(r + 1) prefix is a valid tableau");
    assert!(
        matches!(u.step(r + 1), Step::Remove(Component::First, _)),
        "surgery places the removal at position r + 1"
    );
    let nu = u.final_shape().clone();
    let strip = (k - 1) as usize;
    let bar = |p: &Partition| Partition::new(p.parts().get(strip..).unwrap_or(&[]).to_vec());
    let steps: Vec<Bipartition> = (0..=(r - b + 1))
        .map(|i| {
            let s = u.shape(b + i);
            Bipartition::new(bar(&s.first), s.second.clone())
        })
        .collect();
    let u_bar =
        UpDownTableau::new(r - b, 1, steps).expect("bar reduction yields a valid tableau");
    Ok(BarReduction { u, b, h, nu, u_bar })
}
