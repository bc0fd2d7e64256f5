//! Generic analyzers for small finite lattices.
//!
//! A [`LatticeView`] holds an indexed element list together with the order
//! relation as bit rows, plus complete join and meet tables. Everything is
//! addressed by element index; [`LatticeView::index_of`] maps values back.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::error::Result;
use crate::perm::{enumerate_permutation_lattice, InversionSet};
use crate::tamari::{enumerate_tamari, BracketingFn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("empty element list")]
    Empty,
    #[error("element {0} is listed twice")]
    Duplicate(usize),
    #[error("order is not reflexive at element {0}")]
    NotReflexive(usize),
    #[error("order is not antisymmetric: elements {0} and {1}")]
    NotAntisymmetric(usize, usize),
    #[error("order is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("elements {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("{0} oracle returned a value outside the element list for ({1}, {2})")]
    OracleEscapes(&'static str, usize, usize),
    #[error("element not in lattice")]
    NotInLattice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn new(len: usize) -> Self {
        BitRow(vec![0; len.div_ceil(64)])
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, other: &BitRow) -> BitRow {
        BitRow(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &BitRow) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }
}

/// A finite lattice given by its elements and order.
#[derive(Debug, Clone)]
pub struct LatticeView<T> {
    elements: Vec<T>,
    index: HashMap<T, usize>,
    /// `up[x]` holds every `y` with `x <= y`.
    up: Vec<BitRow>,
    /// `down[x]` holds every `y` with `y <= x`.
    down: Vec<BitRow>,
    join: Vec<u32>,
    meet: Vec<u32>,
}

impl<T: Clone + Eq + Hash> LatticeView<T> {
    /// Builds the view from an order oracle; joins and meets are derived.
    pub fn from_order<F>(elements: Vec<T>, leq: F) -> Result<Self, LatticeError>
    where
        F: Fn(&T, &T) -> bool,
    {
        let mut view = Self::poset(elements, leq)?;
        let m = view.len();
        view.join = view.derive_bound(&view.up, "join")?;
        view.meet = view.derive_bound(&view.down, "meet")?;
        debug_assert_eq!(view.join.len(), m * m);
        Ok(view)
    }

    /// Builds the view from order, join and meet oracles.
    ///
    /// The oracles are trusted to agree with the order; only closure under
    /// them is checked.
    pub fn with_operations<F, J, M>(
        elements: Vec<T>,
        leq: F,
        join: J,
        meet: M,
    ) -> Result<Self, LatticeError>
    where
        F: Fn(&T, &T) -> bool,
        J: Fn(&T, &T) -> T,
        M: Fn(&T, &T) -> T,
    {
        let mut view = Self::poset(elements, leq)?;
        view.join = view.tabulate(join, "join")?;
        view.meet = view.tabulate(meet, "meet")?;
        Ok(view)
    }

    fn poset<F>(elements: Vec<T>, leq: F) -> Result<Self, LatticeError>
    where
        F: Fn(&T, &T) -> bool,
    {
        let m = elements.len();
        if m == 0 {
            return Err(LatticeError::Empty);
        }
        let mut index = HashMap::with_capacity(m);
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(LatticeError::Duplicate(i));
            }
        }
        let mut up = vec![BitRow::new(m); m];
        let mut down = vec![BitRow::new(m); m];
        for x in 0..m {
            for y in 0..m {
                if leq(&elements[x], &elements[y]) {
                    up[x].set(y);
                    down[y].set(x);
                }
            }
        }
        for x in 0..m {
            if !up[x].get(x) {
                return Err(LatticeError::NotReflexive(x));
            }
            for y in up[x].ones() {
                if y != x && up[y].get(x) {
                    return Err(LatticeError::NotAntisymmetric(x.min(y), x.max(y)));
                }
                if !up[y].is_subset(&up[x]) {
                    let z = up[y].ones().find(|&z| !up[x].get(z)).unwrap();
                    return Err(LatticeError::NotTransitive(x, y, z));
                }
            }
        }
        Ok(LatticeView {
            elements,
            index,
            up,
            down,
            join: Vec::new(),
            meet: Vec::new(),
        })
    }

    /// Least element of `cone[x] ∩ cone[y]` in the direction of `cone`.
    fn derive_bound(&self, cone: &[BitRow], what: &'static str) -> Result<Vec<u32>, LatticeError> {
        let m = self.len();
        let sizes: Vec<usize> = cone.iter().map(BitRow::count).collect();
        (0..m * m)
            .into_par_iter()
            .map(|xy| {
                let (x, y) = (xy / m, xy % m);
                let common = cone[x].and(&cone[y]);
                let best = common
                    .ones()
                    .max_by_key(|&z| (sizes[z], std::cmp::Reverse(z)))
                    .filter(|&z| common.is_subset(&cone[z]))
                    .ok_or(LatticeError::NotALattice(x, y, what))?;
                Ok(best as u32)
            })
            .collect()
    }

    fn tabulate<J>(&self, op: J, what: &'static str) -> Result<Vec<u32>, LatticeError>
    where
        J: Fn(&T, &T) -> T,
    {
        let m = self.len();
        let mut table = Vec::with_capacity(m * m);
        for x in 0..m {
            for y in 0..m {
                let z = op(&self.elements[x], &self.elements[y]);
                let i = *self
                    .index
                    .get(&z)
                    .ok_or(LatticeError::OracleEscapes(what, x, y))?;
                table.push(i as u32);
            }
        }
        Ok(table)
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }
}

impl<T> LatticeView<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].get(y)
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    pub fn bottom(&self) -> usize {
        (0..self.len()).find(|&x| self.down[x].count() == 1).unwrap()
    }

    pub fn top(&self) -> usize {
        (0..self.len()).find(|&x| self.up[x].count() == 1).unwrap()
    }

    /// The same elements with the order reversed.
    pub fn dual(&self) -> LatticeView<T>
    where
        T: Clone + Eq + Hash,
    {
        LatticeView {
            elements: self.elements.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            join: self.meet.clone(),
            meet: self.join.clone(),
        }
    }

    /// Elements sorted so that `x < y` puts `x` first.
    fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.down[x].count(), x));
        order
    }

    /// Cover edges `(x, y)` with `x ≺ y`, sorted by `(x, y)`.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        let mut edges = Vec::new();
        for x in 0..m {
            for y in self.up[x].ones() {
                if y == x {
                    continue;
                }
                let between = self.up[x].and(&self.down[y]);
                if between.count() == 2 {
                    edges.push((x, y));
                }
            }
        }
        edges
    }

    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        self.down[x]
            .ones()
            .filter(|&y| y != x && self.up[y].and(&self.down[x]).count() == 2)
            .collect()
    }

    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        self.up[x]
            .ones()
            .filter(|&y| y != x && self.up[x].and(&self.down[y]).count() == 2)
            .collect()
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.upper_covers(self.bottom())
    }

    /// Longest-chain length from the bottom to every element.
    pub fn heights(&self) -> Vec<usize> {
        let mut height = vec![0usize; self.len()];
        let edges = self.hasse();
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for &(x, y) in &edges {
            above[x].push(y);
        }
        for x in self.linear_extension() {
            for &y in &above[x] {
                height[y] = height[y].max(height[x] + 1);
            }
        }
        height
    }

    pub fn longest_chain_to(&self, x: &T) -> Result<usize, LatticeError>
    where
        T: Clone + Eq + Hash,
    {
        let i = self.index_of(x).ok_or(LatticeError::NotInLattice)?;
        Ok(self.heights()[i])
    }

    /// Graphviz rendering of the Hasse diagram, edges pointing upward.
    pub fn to_dot<L, K>(&self, name: &str, label: L, marked: K) -> String
    where
        L: Fn(&T) -> String,
        K: Fn(&T) -> bool,
    {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{name}\" {{");
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=box];");
        for (i, e) in self.elements.iter().enumerate() {
            let style = if marked(e) {
                ", style=filled, fillcolor=lightblue"
            } else {
                ""
            };
            let _ = writeln!(out, "  n{i} [label=\"{}\"{style}];", label(e).replace('"', "\\\""));
        }
        for (x, y) in self.hasse() {
            let _ = writeln!(out, "  n{x} -> n{y};");
        }
        out.push_str("}\n");
        out
    }

    /// Checks SD∨ and SD∧ over all triples.
    pub fn check_semidistributive(&self) -> SemidistributiveVerdict
    where
        T: Sync,
    {
        let join_law = self.first_sd_failure(|x, y| self.join(x, y), |x, y| self.meet(x, y));
        let meet_law = self.first_sd_failure(|x, y| self.meet(x, y), |x, y| self.join(x, y));
        SemidistributiveVerdict { join_law, meet_law }
    }

    /// First `(x, y, z)` with `x·y = x·z` but `x·y ≠ x·(y∘z)`.
    fn first_sd_failure<A, B>(&self, op: A, dual: B) -> Option<Triple>
    where
        A: Fn(usize, usize) -> usize + Sync,
        B: Fn(usize, usize) -> usize + Sync,
        T: Sync,
    {
        let m = self.len();
        (0..m).into_par_iter().find_map_first(|x| {
            for y in 0..m {
                let xy = op(x, y);
                for z in 0..m {
                    if xy == op(x, z) && xy != op(x, dual(y, z)) {
                        return Some(Triple { x, y, z });
                    }
                }
            }
            None
        })
    }

    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.lower_covers(x).len() == 1)
            .collect()
    }

    /// The join-dependency relation on join-irreducibles: `p D q` when
    /// `p ≠ q` and some `x` has `p <= q ∨ x` but not `p <= q_* ∨ x`.
    pub fn join_dependency(&self) -> Vec<(usize, usize)>
    where
        T: Sync,
    {
        let irreducibles = self.join_irreducibles();
        let lower: HashMap<usize, usize> = irreducibles
            .iter()
            .map(|&q| {
                let covers = self.lower_covers(q);
                assert_eq!(covers.len(), 1, "join-irreducible {q} must have one lower cover");
                (q, covers[0])
            })
            .collect();
        let m = self.len();
        irreducibles
            .par_iter()
            .flat_map_iter(|&p| {
                let lower = &lower;
                irreducibles.iter().filter_map(move |&q| {
                    if p == q {
                        return None;
                    }
                    let q_star = lower[&q];
                    (0..m)
                        .any(|x| self.leq(p, self.join(q, x)) && !self.leq(p, self.join(q_star, x)))
                        .then_some((p, q))
                })
            })
            .collect()
    }

    /// Lower boundedness via acyclicity of the join-dependency relation,
    /// upper boundedness via the same test on the dual.
    pub fn check_bounded(&self) -> BoundedVerdict
    where
        T: Clone + Eq + Hash + Sync,
    {
        let lower_cycle = find_cycle(&self.join_dependency());
        let upper_cycle = find_cycle(&self.dual().join_dependency());
        BoundedVerdict {
            lower_bounded: lower_cycle.is_none(),
            upper_bounded: upper_cycle.is_none(),
            lower_cycle,
            upper_cycle,
        }
    }
}

/// A counterexample triple of element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Triple {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemidistributiveVerdict {
    /// First failure of SD∨, if any.
    pub join_law: Option<Triple>,
    /// First failure of SD∧, if any.
    pub meet_law: Option<Triple>,
}

impl SemidistributiveVerdict {
    pub fn holds(&self) -> bool {
        self.join_law.is_none() && self.meet_law.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedVerdict {
    pub lower_bounded: bool,
    pub upper_bounded: bool,
    /// A cycle of the join-dependency relation, as element indices.
    pub lower_cycle: Option<Vec<usize>>,
    /// A cycle of the dual relation.
    pub upper_cycle: Option<Vec<usize>>,
}

impl BoundedVerdict {
    pub fn is_bounded(&self) -> bool {
        self.lower_bounded && self.upper_bounded
    }
}

/// Some directed cycle of the edge list, starting from its smallest vertex.
fn find_cycle(edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut adjacency: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(p, q) in edges {
        adjacency.entry(p).or_default().push(q);
    }
    let mut vertices: Vec<usize> = adjacency.keys().copied().collect();
    vertices.sort_unstable();
    for list in adjacency.values_mut() {
        list.sort_unstable();
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Fresh,
        Active,
        Done,
    }
    let mut mark: HashMap<usize, Mark> = HashMap::new();
    for &start in &vertices {
        if mark.get(&start).copied().unwrap_or(Mark::Fresh) != Mark::Fresh {
            continue;
        }
        // Iterative DFS keeping the active path.
        let mut path = vec![start];
        let mut cursor = vec![0usize];
        mark.insert(start, Mark::Active);
        while let Some(&v) = path.last() {
            let next = adjacency.get(&v).and_then(|l| l.get(*cursor.last().unwrap()).copied());
            match next {
                Some(w) => {
                    *cursor.last_mut().unwrap() += 1;
                    match mark.get(&w).copied().unwrap_or(Mark::Fresh) {
                        Mark::Active => {
                            let at = path.iter().position(|&u| u == w).unwrap();
                            return Some(path[at..].to_vec());
                        }
                        Mark::Fresh => {
                            mark.insert(w, Mark::Active);
                            path.push(w);
                            cursor.push(0);
                        }
                        Mark::Done => {}
                    }
                }
                None => {
                    mark.insert(v, Mark::Done);
                    path.pop();
                    cursor.pop();
                }
            }
        }
    }
    None
}

/// `S_n` with joins and meets from [`InversionSet`].
pub fn permutation_lattice(n: usize) -> Result<LatticeView<InversionSet>> {
    let elements = enumerate_permutation_lattice(n)?;
    Ok(LatticeView::with_operations(
        elements,
        |a, b| a.as_pair_set().is_subset(b.as_pair_set()),
        |a, b| a.join(b).expect("same n"),
        |a, b| a.meet(b).expect("same n"),
    )?)
}

/// `T_n` with joins and meets from [`BracketingFn`].
pub fn tamari_lattice(n: usize) -> Result<LatticeView<BracketingFn>> {
    let elements: Vec<_> = enumerate_tamari(n)?.collect();
    Ok(LatticeView::with_operations(
        elements,
        |a, b| a.leq(b).expect("same n"),
        |a, b| a.join(b).expect("same n"),
        |a, b| a.meet(b).expect("same n"),
    )?)
}

/// Small reference lattices on `usize` labels.
pub mod small {
    use super::LatticeView;

    /// The chain `0 < 1 < ... < len - 1`.
    pub fn chain(len: usize) -> LatticeView<usize> {
        LatticeView::from_order((0..len).collect(), |a, b| a <= b).unwrap()
    }

    /// Subsets of a `dim`-element set, as bitmasks.
    pub fn boolean(dim: u32) -> LatticeView<usize> {
        LatticeView::from_order((0..1usize << dim).collect(), |a, b| a & !b == 0).unwrap()
    }

    /// `M3`: bottom 0, atoms 1..=3, top 4.
    pub fn diamond() -> LatticeView<usize> {
        LatticeView::from_order((0..5).collect(), |&a, &b| a == b || a == 0 || b == 4).unwrap()
    }

    /// `N5`: `0 < 1 < 2 < 4` and `0 < 3 < 4`.
    pub fn pentagon() -> LatticeView<usize> {
        LatticeView::from_order((0..5).collect(), |&a, &b| {
            a == b || a == 0 || b == 4 || (a == 1 && b == 2)
        })
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::small::*;
    use super::*;

    #[test]
    fn hasse_examples() {
        assert_eq!(chain(3).hasse(), vec![(0, 1), (1, 2)]);
        let s3 = permutation_lattice(3).unwrap();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3.hasse().len(), 6);
        let t3 = tamari_lattice(3).unwrap();
        assert_eq!(t3.len(), 5);
        assert_eq!(t3.hasse().len(), 5);
    }

    #[test]
    fn semidistributive_examples() {
        let m3 = diamond().check_semidistributive();
        assert!(m3.join_law.is_some() && m3.meet_law.is_some());
        assert!(chain(2).check_semidistributive().holds());
        assert!(pentagon().check_semidistributive().holds());
    }

    #[test]
    fn bounded_examples() {
        assert!(boolean(3).check_bounded().is_bounded());
        assert!(chain(2).check_bounded().is_bounded());
        assert!(pentagon().check_bounded().is_bounded());
        let m3 = diamond().check_bounded();
        assert!(!m3.lower_bounded && !m3.upper_bounded);
        assert_eq!(m3.lower_cycle, Some(vec![1, 2]));
    }

    #[test]
    fn longest_chain_examples() {
        let s3 = permutation_lattice(3).unwrap();
        assert_eq!(s3.longest_chain_to(&InversionSet::empty(3).unwrap()), Ok(0));
        assert_eq!(s3.longest_chain_to(&InversionSet::full(3).unwrap()), Ok(3));
        let t3 = tamari_lattice(3).unwrap();
        assert_eq!(t3.longest_chain_to(&BracketingFn::top(3).unwrap()), Ok(3));
        assert_eq!(
            t3.longest_chain_to(&BracketingFn::top(2).unwrap()),
            Err(LatticeError::NotInLattice)
        );
    }

    #[test]
    fn rejects_non_orders_and_non_lattices() {
        assert_eq!(
            LatticeView::from_order(vec![0usize, 1], |a, b| a != b).unwrap_err(),
            LatticeError::NotReflexive(0)
        );
        assert_eq!(
            LatticeView::from_order(vec![0usize, 1], |_, _| true).unwrap_err(),
            LatticeError::NotAntisymmetric(0, 1)
        );
        // Two incomparable elements: no join, no meet.
        assert_eq!(
            LatticeView::from_order(vec![0usize, 1], |a, b| a == b).unwrap_err(),
            LatticeError::NotALattice(0, 1, "join")
        );
        // Bowtie: 0,1 below both 2,3.
        let bowtie = LatticeView::from_order(vec![0usize, 1, 2, 3], |&a, &b| a == b || (a < 2 && b >= 2));
        assert_eq!(bowtie.unwrap_err(), LatticeError::NotALattice(0, 1, "join"));
        assert_eq!(
            LatticeView::from_order(vec![1usize, 1], |a, b| a <= b).unwrap_err(),
            LatticeError::Duplicate(1)
        );
    }

    #[test]
    fn dot_output_is_deterministic() {
        let dot = chain(2).to_dot("c2", |x| x.to_string(), |&x| x == 1);
        assert_eq!(
            dot,
            "digraph \"c2\" {\n  rankdir=BT;\n  node [shape=box];\n  n0 [label=\"0\"];\n  n1 [label=\"1\", style=filled, fillcolor=lightblue];\n  n0 -> n1;\n}\n"
        );
    }

    #[test]
    fn find_cycle_cases() {
        assert_eq!(find_cycle(&[(1, 2), (2, 3)]), None);
        assert_eq!(find_cycle(&[(1, 2), (2, 3), (3, 2)]), Some(vec![2, 3]));
    }
}
