//! Partitions, bipartitions and the poset Λ_{r,t}.
//!
//! Foundation for everything combinatorial in the crate:
//!
//! - partitions with conjugation, dominance, hooks, contents, and
//!   addable/removable corners;
//! - bipartitions and the points (f, λ) of Λ_{r,t}, with the order
//!   "compare f first, then componentwise dominance";
//! - standard-tableau counts, Littlewood–Richardson coefficients (by direct
//!   enumeration of lattice fillings) and the restriction multiplicities
//!   built from them;
//! - e-restrictedness and the text/JSON grammars used at the CLI boundary
//!   (`3,1` for a partition, `-` for the empty one, `first|second` for a
//!   bipartition).

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::scalars::QuantumChar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("operands belong to different (r, t) contexts")]
    ContextMismatch,
    #[error("node lies outside the Young diagram")]
    NodeOutOfDiagram,
    #[error("invalid shape: {0}")]
    InvalidShape(String),
}

/// An integer partition: weakly decreasing positive parts.
///
/// The derived `Ord` is lexicographic on the part sequences and is used for
/// canonical sorting and map keys only; the dominance order is
/// [`dominance_leq`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// A box position, 1-based: row i, column j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub row: u32,
    pub col: u32,
}

impl Node {
    pub fn new(row: u32, col: u32) -> Self {
        Node { row, col }
    }

    /// Content j − i of the box.
    pub fn content(&self) -> i64 {
        i64::from(self.col) - i64::from(self.row)
    }
}

/// Which component of a bipartition a box belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    First,
    Second,
}

impl Partition {
    /// Builds a partition, accepting (and stripping) trailing zeros.
    ///
    /// Panics on increasing part sequences; user-facing input goes through
    /// [`Partition::parse`] instead.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut parts = parts.into();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.last().is_none_or(|&p| p > 0),
            "parts must be weakly decreasing and positive"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of rows.
    pub fn rows(&self) -> u32 {
        self.parts.len() as u32
    }

    /// The i-th part, 1-based; 0 beyond the last row.
    pub fn part(&self, i: u32) -> u32 {
        if i == 0 {
            panic!("rows are 1-based");
        }
        self.parts.get(i as usize - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1) as usize;
        let mut parts = vec![0u32; cols];
        for &p in &self.parts {
            for q in parts.iter_mut().take(p as usize) {
                *q += 1;
            }
        }
        Partition { parts }
    }

    /// Whether the diagram of `other` fits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.rows()).all(|i| self.part(i) >= other.part(i))
    }

    /// Rowwise minimum: the intersection of the two Young diagrams.
    pub fn meet(&self, other: &Partition) -> Partition {
        let n = self.rows().min(other.rows());
        Partition::new((1..=n).map(|i| self.part(i).min(other.part(i))).collect::<Vec<_>>())
    }

    /// All boxes of the diagram, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = Node> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| Node::new(i as u32 + 1, j)))
    }

    /// Boxes of the skew diagram self/inner (inner must be contained).
    pub fn skew_boxes(&self, inner: &Partition) -> Vec<Node> {
        debug_assert!(self.contains(inner));
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let row = i as u32 + 1;
                (inner.part(row) + 1..=p).map(move |j| Node::new(row, j))
            })
            .collect()
    }

    /// Corners where a box may be added, top to bottom.
    pub fn addable_nodes(&self) -> Vec<Node> {
        let mut nodes = Vec::new();
        for i in 1..=self.rows() + 1 {
            if i == 1 || self.part(i - 1) > self.part(i) {
                nodes.push(Node::new(i, self.part(i) + 1));
            }
        }
        nodes
    }

    /// Corners where a box may be removed, top to bottom.
    pub fn removable_nodes(&self) -> Vec<Node> {
        (1..=self.rows())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .map(|i| Node::new(i, self.part(i)))
            .collect()
    }

    /// Adds a box at an addable corner.
    pub fn with_box(&self, node: Node) -> Result<Partition, PartitionError> {
        if !self.addable_nodes().contains(&node) {
            return Err(PartitionError::NodeOutOfDiagram);
        }
        let mut parts = self.parts.clone();
        if node.row as usize > parts.len() {
            parts.push(1);
        } else {
            parts[node.row as usize - 1] += 1;
        }
        Ok(Partition { parts })
    }

    /// Removes a box at a removable corner.
    pub fn without_box(&self, node: Node) -> Result<Partition, PartitionError> {
        if !self.removable_nodes().contains(&node) {
            return Err(PartitionError::NodeOutOfDiagram);
        }
        let mut parts = self.parts.clone();
        parts[node.row as usize - 1] -= 1;
        Ok(Partition::new(parts))
    }

    /// When `other` is this partition plus exactly one box, that box.
    pub fn added_box_to(&self, other: &Partition) -> Option<Node> {
        if other.size() != self.size() + 1 || !other.contains(self) {
            return None;
        }
        other
            .removable_nodes()
            .into_iter()
            .find(|&n| self.part(n.row) + 1 == n.col)
    }

    /// Hook length h = arm + leg + 1 of a box inside the diagram.
    pub fn hook_length(&self, node: Node) -> Result<u32, PartitionError> {
        if node.row == 0 || node.col == 0 || self.part(node.row) < node.col {
            return Err(PartitionError::NodeOutOfDiagram);
        }
        let arm = self.part(node.row) - node.col;
        let leg = self.conjugate().part(node.col) - node.row;
        Ok(arm + leg + 1)
    }

    /// Parses the comma-separated grammar; `-` is the empty partition.
    pub fn parse(s: &str) -> Result<Partition, PartitionError> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for piece in s.split(',') {
            let p: u32 = piece
                .trim()
                .parse()
                .map_err(|_| PartitionError::InvalidShape(format!("bad part `{piece}`")))?;
            parts.push(p);
        }
        if parts.contains(&0) {
            return Err(PartitionError::InvalidShape("zero part".to_string()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::InvalidShape(format!(
                "parts must be weakly decreasing, got `{s}`"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.parts.iter().map(|&p| json!(p)).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let rendered: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", rendered.join(","))
    }
}

/// Dominance: a ⊴ b, i.e. equal sizes and every prefix sum of a is at most
/// the corresponding prefix sum of b.
pub fn dominance_leq(a: &Partition, b: &Partition) -> bool {
    if a.size() != b.size() {
        return false;
    }
    let rows = a.rows().max(b.rows());
    let mut sa = 0u64;
    let mut sb = 0u64;
    for i in 1..=rows {
        sa += u64::from(a.part(i));
        sb += u64::from(b.part(i));
        if sa > sb {
            return false;
        }
    }
    true
}

/// A pair of partitions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bipartition {
    pub first: Partition,
    pub second: Partition,
}

impl Bipartition {
    pub fn new(first: Partition, second: Partition) -> Self {
        Bipartition { first, second }
    }

    pub fn empty() -> Self {
        Bipartition::default()
    }

    pub fn size(&self) -> u32 {
        self.first.size() + self.second.size()
    }

    pub fn component(&self, c: Component) -> &Partition {
        match c {
            Component::First => &self.first,
            Component::Second => &self.second,
        }
    }

    pub fn contains(&self, other: &Bipartition) -> bool {
        self.first.contains(&other.first) && self.second.contains(&other.second)
    }

    /// Parses `first|second`, each side in partition grammar.
    pub fn parse(s: &str) -> Result<Bipartition, PartitionError> {
        let (a, b) = s.split_once('|').ok_or_else(|| {
            PartitionError::InvalidShape(format!("expected `first|second`, got `{s}`"))
        })?;
        Ok(Bipartition::new(Partition::parse(a)?, Partition::parse(b)?))
    }

    pub fn to_json(&self) -> Value {
        json!([self.first.to_json(), self.second.to_json()])
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.first, self.second)
    }
}

/// A point (f, λ) of Λ_{r,t}; the context is recovered as r = f + |λ^{(1)}|,
/// t = f + |λ^{(2)}|.
///
/// The derived `Ord` (f first, then lexicographic shape) is the enumeration
/// order of [`enumerate_lambda`]; the poset order is [`lambda_order`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LambdaPoint {
    pub f: u32,
    pub shape: Bipartition,
}

impl LambdaPoint {
    pub fn new(f: u32, shape: Bipartition) -> Self {
        LambdaPoint { f, shape }
    }

    pub fn r(&self) -> u32 {
        self.f + self.shape.first.size()
    }

    pub fn t(&self) -> u32 {
        self.f + self.shape.second.size()
    }

    pub fn to_json(&self) -> Value {
        json!({ "f": self.f, "shape": self.shape.to_json() })
    }
}

impl fmt::Display for LambdaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.shape)
    }
}

/// Outcome of comparing two poset elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetOrd {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// The order on Λ_{r,t}: x ⊴ y iff f_x < f_y, or f_x = f_y and both
/// components of x are dominated by those of y.
pub fn lambda_order(x: &LambdaPoint, y: &LambdaPoint) -> Result<PosetOrd, PartitionError> {
    if (x.r(), x.t()) != (y.r(), y.t()) {
        return Err(PartitionError::ContextMismatch);
    }
    if x.f < y.f {
        return Ok(PosetOrd::Less);
    }
    if x.f > y.f {
        return Ok(PosetOrd::Greater);
    }
    if x.shape == y.shape {
        return Ok(PosetOrd::Equal);
    }
    let x_below = dominance_leq(&x.shape.first, &y.shape.first)
        && dominance_leq(&x.shape.second, &y.shape.second);
    let y_below = dominance_leq(&y.shape.first, &x.shape.first)
        && dominance_leq(&y.shape.second, &x.shape.second);
    Ok(match (x_below, y_below) {
        (true, false) => PosetOrd::Less,
        (false, true) => PosetOrd::Greater,
        _ => PosetOrd::Incomparable,
    })
}

/// All partitions of n, in ascending lexicographic order of part sequences.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn fill(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::new(prefix.clone()));
            return;
        }
        for first in 1..=remaining.min(max_part) {
            prefix.push(first);
            fill(remaining - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The poset Λ_{r,t}, sorted by (f ascending, lexicographic shape).
pub fn enumerate_lambda(r: u32, t: u32) -> Vec<LambdaPoint> {
    let mut points = Vec::new();
    for f in 0..=r.min(t) {
        for a in partitions_of(r - f) {
            for b in partitions_of(t - f) {
                points.push(LambdaPoint::new(f, Bipartition::new(a.clone(), b)));
            }
        }
    }
    points.sort();
    points
}

fn factorial(n: u32) -> u64 {
    (1..=u64::from(n)).product()
}

/// Number of standard tableaux of a single shape, by the hook length formula.
fn std_count_partition(p: &Partition) -> u64 {
    let hooks: u64 = p
        .boxes()
        .map(|node| u64::from(p.hook_length(node).expect("box inside diagram")))
        .product();
    let n = factorial(p.size());
    assert_eq!(n % hooks, 0, "hook product divides the factorial");
    n / hooks
}

/// Number of pairs of standard tableaux for a bipartition: the product of
/// the per-component counts.
pub fn std_count(shape: &Bipartition) -> u64 {
    std_count_partition(&shape.first) * std_count_partition(&shape.second)
}

/// Littlewood–Richardson coefficient c^λ_{μ,τ}: the number of
/// Littlewood–Richardson skew tableaux of shape λ/μ and content τ, counted
/// by direct enumeration of semistandard lattice fillings.
pub fn littlewood_richardson(mu: &Partition, tau: &Partition, lambda: &Partition) -> u64 {
    if !lambda.contains(mu) || mu.size() + tau.size() != lambda.size() {
        return 0;
    }
    if tau.is_empty() {
        return 1;
    }
    // Cells in reading-word order: each row right to left, rows top to
    // bottom, so the lattice condition can be checked prefix by prefix.
    let mut cells = Vec::new();
    for i in 1..=lambda.rows() {
        for j in (mu.part(i) + 1..=lambda.part(i)).rev() {
            cells.push(Node::new(i, j));
        }
    }
    let k = tau.rows();
    let mut counts = vec![0u32; k as usize + 1];
    let mut filling = std::collections::HashMap::new();
    fn recurse(
        cells: &[Node],
        pos: usize,
        tau: &Partition,
        mu: &Partition,
        counts: &mut Vec<u32>,
        filling: &mut std::collections::HashMap<Node, u32>,
    ) -> u64 {
        let Some(&cell) = cells.get(pos) else {
            return 1;
        };
        let mut total = 0;
        for v in 1..=tau.rows() {
            if counts[v as usize] >= tau.part(v) {
                continue;
            }
            // Lattice word: after placing v, #v may not exceed #(v−1).
            if v > 1 && counts[v as usize] + 1 > counts[v as usize - 1] {
                continue;
            }
            // Weak increase along the row (the right neighbor is filled
            // earlier in reading order whenever it is a skew cell).
            if cell.col < mu.part(cell.row) + 1 {
                unreachable!("cells start past the inner shape");
            }
            if let Some(&right) = filling.get(&Node::new(cell.row, cell.col + 1)) {
                if v > right {
                    continue;
                }
            }
            // Strict increase down the column.
            if cell.row > 1 {
                if let Some(&above) = filling.get(&Node::new(cell.row - 1, cell.col)) {
                    if v <= above {
                        continue;
                    }
                }
            }
            counts[v as usize] += 1;
            filling.insert(cell, v);
            total += recurse(cells, pos + 1, tau, mu, counts, filling);
            filling.remove(&cell);
            counts[v as usize] -= 1;
        }
        total
    }
    let _ = k;
    recurse(&cells, 0, tau, mu, &mut counts, &mut filling)
}

/// Restriction multiplicity Σ_{τ ⊢ l} c^{λ^{(1)}}_{μ^{(1)},τ} ·
/// c^{λ^{(2)}}_{μ^{(2)},τ}.
///
/// Shapes are taken as given; callers that need the dual-shape version
/// conjugate the inputs themselves.
pub fn restriction_multiplicity(l: u32, mu: &Bipartition, lambda: &Bipartition) -> u64 {
    partitions_of(l)
        .iter()
        .map(|tau| {
            littlewood_richardson(&mu.first, tau, &lambda.first)
                * littlewood_richardson(&mu.second, tau, &lambda.second)
        })
        .sum()
}

/// Whether both components have all row gaps (including the gap to zero
/// after the last row) strictly below e. Always true for infinite e.
pub fn e_restricted(shape: &Bipartition, e: QuantumChar) -> bool {
    let QuantumChar::Finite(e) = e else {
        return true;
    };
    let component_ok = |p: &Partition| {
        (1..=p.rows()).all(|i| u64::from(p.part(i) - p.part(i + 1)) < e)
    };
    component_ok(&shape.first) && component_ok(&shape.second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[4, 2, 1]).conjugate(), p(&[3, 2, 1, 1]));
    }

    #[test]
    fn dominance_examples_and_order_axioms() {
        assert!(dominance_leq(&p(&[2, 2]), &p(&[3, 1])));
        assert!(!dominance_leq(&p(&[3, 1]), &p(&[2, 2])));
        assert!(!dominance_leq(&p(&[2]), &p(&[3])));
        for n in 0..=6 {
            let all = partitions_of(n);
            for a in &all {
                assert!(dominance_leq(a, a));
                for b in &all {
                    if dominance_leq(a, b) && dominance_leq(b, a) {
                        assert_eq!(a, b);
                    }
                    for c in &all {
                        if dominance_leq(a, b) && dominance_leq(b, c) {
                            assert!(dominance_leq(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_order_examples() {
        let x = LambdaPoint::new(0, Bipartition::new(p(&[1]), p(&[1])));
        let y = LambdaPoint::new(1, Bipartition::empty());
        assert_eq!(lambda_order(&x, &y), Ok(PosetOrd::Less));
        assert_eq!(lambda_order(&y, &x), Ok(PosetOrd::Greater));
        assert_eq!(lambda_order(&x, &x), Ok(PosetOrd::Equal));

        let a = LambdaPoint::new(0, Bipartition::new(p(&[2, 2]), p(&[1])));
        let b = LambdaPoint::new(0, Bipartition::new(p(&[3, 1]), p(&[1])));
        assert_eq!(lambda_order(&a, &b), Ok(PosetOrd::Less));

        // Same f, dominance conflicting across components: incomparable.
        let c = LambdaPoint::new(0, Bipartition::new(p(&[2, 2]), p(&[2])));
        let d = LambdaPoint::new(0, Bipartition::new(p(&[3, 1]), p(&[1, 1])));
        assert_eq!(lambda_order(&c, &d), Ok(PosetOrd::Incomparable));

        let other = LambdaPoint::new(0, Bipartition::new(p(&[1]), p(&[2])));
        assert_eq!(lambda_order(&x, &other), Err(PartitionError::ContextMismatch));
    }

    #[test]
    fn nodes_contents_hooks() {
        assert_eq!(Node::new(2, 3).content(), 1);
        assert_eq!(p(&[2, 2]).hook_length(Node::new(1, 1)), Ok(3));
        assert_eq!(p(&[2, 2]).hook_length(Node::new(2, 2)), Ok(1));
        assert_eq!(
            p(&[2, 2]).hook_length(Node::new(1, 3)),
            Err(PartitionError::NodeOutOfDiagram)
        );
        assert_eq!(p(&[2, 2]).removable_nodes(), vec![Node::new(2, 2)]);
        assert_eq!(
            p(&[2, 1]).addable_nodes(),
            vec![Node::new(1, 3), Node::new(2, 2), Node::new(3, 1)]
        );
        // Hook length via the conjugate formula p_i + p'_j + 1 − i − j.
        let shape = p(&[4, 3, 1]);
        let conj = shape.conjugate();
        for node in shape.boxes() {
            let formula =
                shape.part(node.row) + conj.part(node.col) + 1 - node.row - node.col;
            assert_eq!(shape.hook_length(node), Ok(formula));
        }
    }

    #[test]
    fn box_addition_and_removal_round_trip() {
        let shape = p(&[3, 1]);
        for node in shape.addable_nodes() {
            let bigger = shape.with_box(node).unwrap();
            assert_eq!(bigger.without_box(node).unwrap(), shape);
            assert_eq!(shape.added_box_to(&bigger), Some(node));
        }
        assert_eq!(shape.added_box_to(&p(&[3, 2, 1])), None);
        assert!(shape.with_box(Node::new(1, 1)).is_err());
    }

    #[test]
    fn enumerate_lambda_counts_and_order() {
        assert_eq!(enumerate_lambda(0, 0).len(), 1);
        assert_eq!(enumerate_lambda(1, 1).len(), 2);
        let points = enumerate_lambda(2, 2);
        assert_eq!(points.len(), 6);
        // Sorted, duplicate-free, all in context.
        for w in points.windows(2) {
            assert!(w[0] < w[1]);
        }
        for pt in &points {
            assert_eq!((pt.r(), pt.t()), (2, 2));
        }
        assert_eq!(points[0], LambdaPoint::new(0, Bipartition::new(p(&[1, 1]), p(&[1, 1]))));
        assert_eq!(points.last().unwrap(), &LambdaPoint::new(2, Bipartition::empty()));
    }

    #[test]
    fn std_count_examples_and_path_oracle() {
        assert_eq!(std_count(&Bipartition::new(p(&[1]), p(&[1]))), 1);
        assert_eq!(std_count(&Bipartition::new(p(&[2, 1]), Partition::empty())), 2);
        assert_eq!(std_count(&Bipartition::empty()), 1);

        // Independent oracle: count box-adding paths ∅ → shape.
        fn paths(shape: &Partition) -> u64 {
            if shape.is_empty() {
                return 1;
            }
            shape
                .removable_nodes()
                .into_iter()
                .map(|node| paths(&shape.without_box(node).unwrap()))
                .sum()
        }
        for n in 0..=6 {
            for shape in partitions_of(n) {
                assert_eq!(
                    std_count_partition(&shape),
                    paths(&shape),
                    "hook formula vs path count on {shape}"
                );
            }
        }
    }

    #[test]
    fn littlewood_richardson_examples() {
        assert_eq!(littlewood_richardson(&p(&[1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(littlewood_richardson(&p(&[1]), &p(&[1, 1]), &p(&[2, 1])), 1);
        assert_eq!(littlewood_richardson(&p(&[1]), &p(&[1, 1]), &p(&[3])), 0);
        // The classic first multiplicity-2 case.
        assert_eq!(
            littlewood_richardson(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])),
            2
        );
        assert_eq!(littlewood_richardson(&p(&[2]), &p(&[1]), &p(&[2])), 0);
    }

    #[test]
    fn littlewood_richardson_is_symmetric() {
        for n in 0..=6u32 {
            for lambda in partitions_of(n) {
                for m in 0..=n {
                    for mu in partitions_of(m) {
                        for tau in partitions_of(n - m) {
                            assert_eq!(
                                littlewood_richardson(&mu, &tau, &lambda),
                                littlewood_richardson(&tau, &mu, &lambda),
                                "c^{lambda}_{{{mu},{tau}}}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_multiplicity_examples() {
        let lam = Bipartition::new(p(&[1]), p(&[1]));
        assert_eq!(restriction_multiplicity(0, &lam, &lam), 1);
        assert_eq!(restriction_multiplicity(1, &Bipartition::empty(), &lam), 1);
        assert_eq!(
            restriction_multiplicity(1, &Bipartition::empty(), &Bipartition::new(p(&[2]), Partition::empty())),
            0
        );
    }

    #[test]
    fn e_restricted_examples() {
        let one = |a: &Partition| Bipartition::new(a.clone(), Partition::empty());
        assert!(e_restricted(&one(&p(&[3, 1])), QuantumChar::Finite(3)));
        assert!(!e_restricted(&one(&p(&[3])), QuantumChar::Finite(2)));
        assert!(e_restricted(&one(&p(&[9, 4])), QuantumChar::Infinite));
        // The trailing gap counts: a single row of length 2 is not
        // 2-restricted even though it has no internal gaps.
        assert!(!e_restricted(&one(&p(&[2])), QuantumChar::Finite(2)));
        assert!(e_restricted(&Bipartition::empty(), QuantumChar::Finite(2)));
    }

    #[test]
    fn grammar_round_trips() {
        for s in ["-", "1", "3,1", "4,4,2,1"] {
            let parsed = Partition::parse(s).unwrap();
            assert_eq!(parsed.to_string(), s);
        }
        for s in ["3,1|-", "-|-", "2,2|1,1,1"] {
            let parsed = Bipartition::parse(s).unwrap();
            assert_eq!(parsed.to_string(), s);
        }
        assert!(Partition::parse("1,3").is_err());
        assert!(Partition::parse("a").is_err());
        assert!(Partition::parse("1,0").is_err());
        assert!(Bipartition::parse("1,1").is_err());
        assert_eq!(
            Bipartition::parse("3,1|-").unwrap().to_json().to_string(),
            "[[3,1],[]]"
        );
    }

    proptest! {
        #[test]
        fn prop_conjugate_involution(mut parts in proptest::collection::vec(1u32..=8, 0..=8)) {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let shape = Partition::new(parts);
            prop_assert_eq!(shape.conjugate().conjugate(), shape.clone());
            prop_assert_eq!(shape.conjugate().size(), shape.size());
        }

        #[test]
        fn prop_lr_vanishing_outside_support(
            mut a in proptest::collection::vec(1u32..=4, 0..=3),
            mut b in proptest::collection::vec(1u32..=4, 0..=3),
            mut c in proptest::collection::vec(1u32..=4, 0..=4),
        ) {
            a.sort_unstable_by(|x, y| y.cmp(x));
            b.sort_unstable_by(|x, y| y.cmp(x));
            c.sort_unstable_by(|x, y| y.cmp(x));
            let (mu, tau, lambda) = (Partition::new(a), Partition::new(b), Partition::new(c));
            let coeff = littlewood_richardson(&mu, &tau, &lambda);
            if mu.size() + tau.size() != lambda.size() || !lambda.contains(&mu) {
                prop_assert_eq!(coeff, 0);
            }
        }
    }
}
