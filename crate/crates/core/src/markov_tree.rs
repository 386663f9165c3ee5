//! Markov triples, the Markov–Hurwitz tree and the parallel Farey tree.
//!
//! Every vertex carries its ordered triple `(a, b, c)` with `c` maximal, its
//! Farey fraction `p/q`, the period of its minus continued fraction, the
//! integer `k` with `a·k ≡ b (mod c)` and the Markov form
//! `[c, 3c − 2k, (k² + 1)/c − 3k]` of discriminant `9c² − 4`.
//!
//! Vertices are keyed by their tree path, never by `c`, so the data model does
//! not depend on the unicity conjecture. The two tips `(1,1,1) ↔ 0/1 ↔ (3̄)`
//! and `(1,1,2) ↔ 1/2 ↔ (2,4̄)` are boundary vertices on level 0.
//!
//! Triples follow the ordering of the classical Markov tree picture: the left
//! child of `(a, b, c)` is `(c, b, 3bc − a)` and the right child is
//! `(a, c, 3ac − b)`. Swapping `a` and `b` gives `k ↦ c − k`, a form in the
//! mirrored class.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::continued_fractions::{
    conjunction, left_tip_period, leftmost_branch_period, right_tip_period, Period,
};
use crate::error::{Error, Result};
use crate::numeric::ratio_f64;
use crate::tree_path::{NodeKey, Path, Turn};

/// An ordered solution of `a² + b² + c² = 3abc`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkovTriple {
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
}

impl MarkovTriple {
    pub fn new(a: BigUint, b: BigUint, c: BigUint) -> Result<Self> {
        let t = MarkovTriple { a, b, c };
        if t.satisfies_markov_equation() {
            Ok(t)
        } else {
            Err(t.violation())
        }
    }

    pub fn from_u64(a: u64, b: u64, c: u64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn satisfies_markov_equation(&self) -> bool {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        a * a + b * b + c * c == BigUint::from(3u32) * a * b * c
    }

    fn violation(&self) -> Error {
        Error::NotMarkovTriple {
            a: self.a.to_string(),
            b: self.b.to_string(),
            c: self.c.to_string(),
        }
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// The two Vieta involutions: `((c, b, 3bc − a), (a, c, 3ac − b))`.
pub fn vieta_children(t: &MarkovTriple) -> Result<(MarkovTriple, MarkovTriple)> {
    if !t.satisfies_markov_equation() {
        return Err(t.violation());
    }
    let three = BigUint::from(3u32);
    // a ≤ 3bc and b ≤ 3ac follow from the equation, so these never underflow
    let left = MarkovTriple::new(t.c.clone(), t.b.clone(), &three * &t.b * &t.c - &t.a)?;
    let right = MarkovTriple::new(t.a.clone(), t.c.clone(), &three * &t.a * &t.c - &t.b)?;
    Ok((left, right))
}

/// A reduced fraction `p/q` in `[0, 1/2]`.
///
/// Denominators are machine integers: they grow like Fibonacci numbers in the
/// depth, so `u64` holds every tree that fits in memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FareyFraction {
    pub p: u64,
    pub q: u64,
}

impl FareyFraction {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 || p.gcd(&q) != 1 {
            return Err(Error::Config(format!("{p}/{q} is not a reduced fraction")));
        }
        Ok(FareyFraction { p, q })
    }

    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

impl Ord for FareyFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p as u128 * other.q as u128).cmp(&(other.p as u128 * self.q as u128))
    }
}

impl PartialOrd for FareyFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FareyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// `(pₓ + p_y)/(qₓ + q_y)`; an error if the mediant is not already reduced.
pub fn farey_median(x: FareyFraction, y: FareyFraction) -> Result<FareyFraction> {
    let overflow = || Error::Overflow("Farey mediant");
    let p = x.p.checked_add(y.p).ok_or_else(overflow)?;
    let q = x.q.checked_add(y.q).ok_or_else(overflow)?;
    if p.gcd(&q) != 1 {
        return Err(Error::NotFareyNeighbours {
            left: x.to_string(),
            right: y.to_string(),
        });
    }
    Ok(FareyFraction { p, q })
}

/// The unique `k` with `a·k ≡ b (mod c)`, `0 ≤ k < c`.
pub fn markov_k(t: &MarkovTriple) -> Result<BigUint> {
    if t.c.is_zero() {
        return Err(t.violation());
    }
    if t.c.is_one() {
        return Ok(BigUint::zero());
    }
    let a = BigInt::from(t.a.clone());
    let c = BigInt::from(t.c.clone());
    let egcd = a.extended_gcd(&c);
    if !egcd.gcd.is_one() {
        return Err(Error::NotInvertible {
            a: t.a.to_string(),
            c: t.c.to_string(),
        });
    }
    let k = (egcd.x * BigInt::from(t.b.clone())).mod_floor(&c);
    let k = k.to_biguint().expect("mod_floor is nonnegative");
    if !((&k * &k + 1u32) % &t.c).is_zero() {
        return Err(Error::NotMarkovPair {
            c: t.c.to_string(),
            k: k.to_string(),
        });
    }
    Ok(k)
}

/// Integer binary quadratic form `a x² + b xy + c y²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl MarkovForm {
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }
}

impl fmt::Display for MarkovForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// `[c, 3c − 2k, ℓ − 3k]` with `ℓ = (k² + 1)/c`.
pub fn markov_form(c: &BigUint, k: &BigUint) -> Result<MarkovForm> {
    let not_pair = || Error::NotMarkovPair {
        c: c.to_string(),
        k: k.to_string(),
    };
    if c.is_zero() {
        return Err(not_pair());
    }
    let (ell, rem) = (k * k + 1u32).div_rem(c);
    if !rem.is_zero() {
        return Err(not_pair());
    }
    let (c, k, ell) = (BigInt::from(c.clone()), BigInt::from(k.clone()), BigInt::from(ell));
    let form = MarkovForm {
        a: c.clone(),
        b: BigInt::from(3) * &c - BigInt::from(2) * &k,
        c: ell - BigInt::from(3) * &k,
    };
    debug_assert_eq!(form.discriminant(), BigInt::from(9) * &c * &c - 4);
    Ok(form)
}

/// `(3c − 2k + √(9c² − 4)) / (2c)`, the larger root of the Markov form.
///
/// Evaluated as `(3 − 2k/c + √(9 − 4/c²)) / 2`, which stays accurate for
/// Markov numbers far beyond the range of `f64`.
pub fn markov_irrational(c: &BigUint, k: &BigUint) -> f64 {
    let k_over_c = ratio_f64(k, c);
    let inv_c = ratio_f64(&BigUint::one(), c);
    (3.0 - 2.0 * k_over_c + (9.0 - 4.0 * inv_c * inv_c).sqrt()) / 2.0
}

/// `√(9 − 4/c²)`, the Lagrange value attached to `c`.
pub fn markov_constant(c: &BigUint) -> f64 {
    let inv_c = ratio_f64(&BigUint::one(), c);
    (9.0 - 4.0 * inv_c * inv_c).sqrt()
}

#[derive(Debug, Clone)]
pub struct TreeNode {
    pub key: NodeKey,
    pub level: u32,
    pub triple: MarkovTriple,
    pub farey: FareyFraction,
    pub period: Period,
    pub k: BigUint,
    pub markov_form: MarkovForm,
}

impl TreeNode {
    fn new(key: NodeKey, triple: MarkovTriple, farey: FareyFraction, period: Period) -> Result<Self> {
        let k = markov_k(&triple)?;
        let markov_form = markov_form(&triple.c, &k)?;
        Ok(TreeNode {
            level: key.level(),
            key,
            triple,
            farey,
            period,
            k,
            markov_form,
        })
    }

    /// The Markov number.
    pub fn c(&self) -> &BigUint {
        &self.triple.c
    }

    pub fn q(&self) -> u64 {
        self.farey.q
    }

    pub fn markov_irrational(&self) -> f64 {
        markov_irrational(&self.triple.c, &self.k)
    }

    pub fn left_tip() -> Self {
        let triple = MarkovTriple::from_u64(1, 1, 1).expect("(1,1,1)");
        TreeNode::new(
            NodeKey::Tip(Turn::L),
            triple,
            FareyFraction { p: 0, q: 1 },
            left_tip_period(),
        )
        .expect("left tip")
    }

    pub fn right_tip() -> Self {
        let triple = MarkovTriple::from_u64(1, 1, 2).expect("(1,1,2)");
        TreeNode::new(
            NodeKey::Tip(Turn::R),
            triple,
            FareyFraction { p: 1, q: 2 },
            right_tip_period(),
        )
        .expect("right tip")
    }

    pub fn root() -> Self {
        let (triple, _) = vieta_children(&Self::right_tip().triple).expect("(1,1,2) children");
        TreeNode::new(
            NodeKey::root(),
            triple,
            FareyFraction { p: 1, q: 3 },
            leftmost_branch_period(1),
        )
        .expect("root")
    }

    /// Child of `self`, whose Farey neighbours are `left` and `right`.
    pub fn child(&self, left: &TreeNode, right: &TreeNode, turn: Turn) -> Result<TreeNode> {
        let path = match &self.key {
            NodeKey::Path(p) => p.child(turn),
            NodeKey::Tip(_) => return Err(Error::InvalidPath(self.key.to_string())),
        };
        let (l_triple, r_triple) = vieta_children(&self.triple)?;
        let (triple, new_left, new_right) = match turn {
            Turn::L => (l_triple, left, self),
            Turn::R => (r_triple, self, right),
        };
        let farey = farey_median(new_left.farey, new_right.farey)?;
        let period = if path.is_all_left() {
            leftmost_branch_period(path.level() as usize)
        } else {
            conjunction(&new_right.period, &new_left.period)
        };
        TreeNode::new(NodeKey::Path(path), triple, farey, period)
    }
}

/// A vertex together with its two Farey neighbours, used to walk down the tree.
#[derive(Debug, Clone)]
pub struct Bracket {
    pub left: TreeNode,
    pub node: TreeNode,
    pub right: TreeNode,
}

impl Bracket {
    pub fn root() -> Self {
        Bracket {
            left: TreeNode::left_tip(),
            node: TreeNode::root(),
            right: TreeNode::right_tip(),
        }
    }

    pub fn descend(&self, turn: Turn) -> Result<Bracket> {
        let child = self.node.child(&self.left, &self.right, turn)?;
        Ok(match turn {
            Turn::L => Bracket {
                left: self.left.clone(),
                right: self.node.clone(),
                node: child,
            },
            Turn::R => Bracket {
                left: self.node.clone(),
                right: self.right.clone(),
                node: child,
            },
        })
    }
}

/// The vertex at `path`, built along the path only.
pub fn node_at(path: &Path) -> Result<TreeNode> {
    let mut b = Bracket::root();
    for &t in path.turns() {
        b = b.descend(t)?;
    }
    Ok(b.node)
}

/// Any vertex (tip or internal) by key.
pub fn node_for_key(key: &NodeKey) -> Result<TreeNode> {
    match key {
        NodeKey::Tip(Turn::L) => Ok(TreeNode::left_tip()),
        NodeKey::Tip(Turn::R) => Ok(TreeNode::right_tip()),
        NodeKey::Path(p) => node_at(p),
    }
}

/// Finds the vertex carrying `p/q` by Stern–Brocot descent, within `max_depth` levels.
///
/// Fractions that are not reduced, lie outside `[0, 1/2]`, or sit deeper than
/// `max_depth` are rejected with the closest vertices in the error message.
pub fn locate_fraction(p: u64, q: u64, max_depth: u32) -> Result<TreeNode> {
    let shown = format!("{p}/{q}");
    let not_on_tree = |nearest: String| Error::NotOnTree {
        fraction: shown.clone(),
        depth: max_depth,
        nearest,
    };
    if q == 0 {
        return Err(not_on_tree("0/1, 1/2".into()));
    }
    let g = p.gcd(&q);
    if g != 1 {
        return Err(not_on_tree(format!("reduced form {}/{}", p / g, q / g)));
    }
    let target = FareyFraction { p, q };
    let half = FareyFraction { p: 1, q: 2 };
    if target > half {
        return Err(not_on_tree("1/2 (right tip)".into()));
    }
    if p == 0 {
        return Ok(TreeNode::left_tip());
    }
    if target == half {
        return Ok(TreeNode::right_tip());
    }
    let mut b = Bracket::root();
    loop {
        let turn = match target.cmp(&b.node.farey) {
            Ordering::Equal => return Ok(b.node),
            Ordering::Less => Turn::L,
            Ordering::Greater => Turn::R,
        };
        if b.node.level >= max_depth {
            return Err(not_on_tree(format!(
                "{} ({}), {} ({}), {} ({})",
                b.left.farey, b.left.key, b.node.farey, b.node.key, b.right.farey, b.right.key
            )));
        }
        b = b.descend(turn)?;
    }
}

/// Every vertex with level ≤ `depth`, tips included.
///
/// Storage is dominated by the periods (`Σ q` digits) and by the Markov
/// numbers, whose size grows exponentially in `q`: at depth 12 the largest
/// `c` has about 150 decimal digits and the whole tree takes a few megabytes;
/// each further level roughly doubles both node count and memory.
#[derive(Debug, Clone)]
pub struct MarkovTree {
    depth: u32,
    nodes: Vec<TreeNode>,
    neighbours: Vec<Option<(usize, usize)>>,
    index: HashMap<NodeKey, usize>,
}

impl MarkovTree {
    pub const LEFT_TIP: usize = 0;
    pub const RIGHT_TIP: usize = 1;

    pub fn build(depth: u32) -> Result<Self> {
        if depth == 0 {
            return Err(Error::Config("tree depth must be at least 1".into()));
        }
        let mut tree = MarkovTree {
            depth,
            nodes: Vec::new(),
            neighbours: Vec::new(),
            index: HashMap::new(),
        };
        tree.push(TreeNode::left_tip(), None);
        tree.push(TreeNode::right_tip(), None);
        let root = tree.push(TreeNode::root(), Some((Self::LEFT_TIP, Self::RIGHT_TIP)));
        let mut frontier = vec![root];
        for _ in 1..depth {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for &i in &frontier {
                let (l, r) = tree.neighbours[i].expect("internal node");
                for turn in [Turn::L, Turn::R] {
                    let child = tree.nodes[i].child(&tree.nodes[l], &tree.nodes[r], turn)?;
                    let nb = match turn {
                        Turn::L => (l, i),
                        Turn::R => (i, r),
                    };
                    next.push(tree.push(child, Some(nb)));
                }
            }
            frontier = next;
        }
        Ok(tree)
    }

    fn push(&mut self, node: TreeNode, nb: Option<(usize, usize)>) -> usize {
        let i = self.nodes.len();
        self.index.insert(node.key.clone(), i);
        self.nodes.push(node);
        self.neighbours.push(nb);
        i
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Tips first, then level by level, left to right within a level.
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, key: &NodeKey) -> Option<&TreeNode> {
        self.index.get(key).map(|&i| &self.nodes[i])
    }

    pub fn position(&self, key: &NodeKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Left and right Farey neighbours (the two predecessors); `None` for tips.
    pub fn neighbours(&self, key: &NodeKey) -> Option<(&TreeNode, &TreeNode)> {
        let i = self.position(key)?;
        self.neighbours[i].map(|(l, r)| (&self.nodes[l], &self.nodes[r]))
    }

    /// All vertices ordered by `p/q` as real numbers.
    pub fn sorted_by_fraction(&self) -> Vec<&TreeNode> {
        let mut v: Vec<&TreeNode> = self.nodes.iter().collect();
        v.sort_by_key(|n| n.farey);
        v
    }

    pub fn level(&self, level: u32) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(move |n| n.level == level)
    }
}

/// Every vertex for which `keep` holds, provided `keep` is monotone (once it
/// fails at a vertex it fails at all descendants). Tips are always included.
pub fn enumerate_while<F>(keep: F) -> Result<Vec<TreeNode>>
where
    F: Fn(&TreeNode) -> bool,
{
    let mut out = vec![TreeNode::left_tip(), TreeNode::right_tip()];
    let mut stack = vec![Bracket::root()];
    while let Some(b) = stack.pop() {
        if !keep(&b.node) {
            continue;
        }
        stack.push(b.descend(Turn::R)?);
        stack.push(b.descend(Turn::L)?);
        out.push(b.node);
    }
    Ok(out)
}

/// Denominators of every Farey fraction in `[0, 1/2]` with `q ≤ max_q`, tips included, unsorted.
///
/// Walks mediants only, so it is much lighter than [`enumerate_while`].
pub fn farey_denominators_up_to(max_q: u64) -> Vec<u64> {
    let mut out = vec![1, 2];
    // (left q, right q) brackets; the mediant denominator is their sum
    let mut stack = vec![(1u64, 2u64)];
    while let Some((l, r)) = stack.pop() {
        let q = l + r;
        if q > max_q {
            continue;
        }
        out.push(q);
        stack.push((l, q));
        stack.push((q, r));
    }
    out
}

/// Markov numbers `c ≤ bound` counted once per tree vertex, tips included, unsorted.
pub fn markov_numbers_up_to(bound: &BigUint) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = [1u32, 2].iter().map(|&c| BigUint::from(c)).filter(|c| c <= bound).collect();
    let root = TreeNode::root().triple;
    let mut stack = vec![(root.a, root.b, root.c)];
    let three = BigUint::from(3u32);
    while let Some((a, b, c)) = stack.pop() {
        if &c > bound {
            continue;
        }
        let left = (c.clone(), b.clone(), &three * &b * &c - &a);
        let right = (a.clone(), c.clone(), &three * &a * &c - &b);
        stack.push(left);
        stack.push(right);
        out.push(c);
    }
    out
}
