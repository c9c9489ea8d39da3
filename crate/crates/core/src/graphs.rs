//! Interval digraphs `G_u^{v,w}` and `G_{x,y}^{v,w}`, block partitions of
//! `[n]`, transitive reduction and the face and forest tests built on them.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArcKind {
    /// From an upper cover `y ⋖ y·t ≤ w`, drawn `i → j`.
    Up,
    /// From a lower cover `v ≤ x·t ⋖ x`, drawn `j → i`.
    Down,
}

/// An arc between node indices, tagged with the transposition `(i, j)` that
/// produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub t: Transposition,
    pub kind: ArcKind,
}

impl Arc {
    /// Tail and head as elements of `[n]`, before any merging.
    pub fn raw_endpoints(&self) -> (usize, usize) {
        match self.kind {
            ArcKind::Up => (self.t.i, self.t.j),
            ArcKind::Down => (self.t.j, self.t.i),
        }
    }
}

/// A set partition of `[n]` stored canonically: each block sorted, blocks
/// ordered by their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition {
            n,
            blocks: (1..=n).map(|k| vec![k]).collect(),
        }
    }

    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Precondition("empty block".into()));
            }
            for &x in b {
                if x == 0 || x > n {
                    return Err(Error::IndexOutOfRange { index: x, max: n });
                }
                if seen[x] {
                    return Err(Error::RepeatedIndex(x));
                }
                seen[x] = true;
            }
        }
        if let Some(x) = (1..=n).find(|&x| !seen[x]) {
            return Err(Error::Precondition(format!("{x} is not covered by any block")));
        }
        Ok(Self::canonical(n, blocks))
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        Partition { n, blocks }
    }

    fn from_union_find(uf: &mut UnionFind) -> Self {
        let n = uf.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            by_root[uf.find(x)].push(x + 1);
        }
        Self::canonical(n, by_root.into_iter().filter(|b| !b.is_empty()).collect())
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block holding `x ∈ [n]`.
    pub fn block_of(&self, x: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&x))
            .expect("element outside the ground set")
    }

    /// `P * Q`, the finest partition coarser than both.
    pub fn star(&self, other: &Partition) -> Result<Partition> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut uf = UnionFind::new(self.n);
        for b in self.blocks.iter().chain(&other.blocks) {
            for pair in b.windows(2) {
                uf.union(pair[0] - 1, pair[1] - 1);
            }
        }
        Ok(Self::from_union_find(&mut uf))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n > 9 { "," } else { "" };
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            let s: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", s.join(sep))?;
        }
        Ok(())
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalDigraph {
    nodes: Partition,
    arcs: Vec<Arc>,
    /// Arcs whose endpoints fell into the same merged node.
    internal_arcs: Vec<Arc>,
}

impl IntervalDigraph {
    fn assemble(nodes: Partition, raw: Vec<(Transposition, ArcKind)>) -> Self {
        let mut arcs = Vec::new();
        let mut internal_arcs = Vec::new();
        for (t, kind) in raw {
            let (a, b) = match kind {
                ArcKind::Up => (t.i, t.j),
                ArcKind::Down => (t.j, t.i),
            };
            let arc = Arc {
                from: nodes.block_of(a),
                to: nodes.block_of(b),
                t,
                kind,
            };
            if arc.from == arc.to {
                internal_arcs.push(arc);
            } else {
                arcs.push(arc);
            }
        }
        IntervalDigraph {
            nodes,
            arcs,
            internal_arcs,
        }
    }

    pub fn nodes(&self) -> &Partition {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn internal_arcs(&self) -> &[Arc] {
        &self.internal_arcs
    }

    /// Arcs as `(tail block, head block)` pairs.
    pub fn arc_blocks(&self) -> Vec<(&[usize], &[usize])> {
        self.arcs
            .iter()
            .map(|a| {
                (
                    self.nodes.blocks[a.from].as_slice(),
                    self.nodes.blocks[a.to].as_slice(),
                )
            })
            .collect()
    }

    /// Has a directed cycle. An arc inside a merged node counts as a loop.
    pub fn has_cycle(&self) -> bool {
        if !self.internal_arcs.is_empty() {
            return true;
        }
        let k = self.node_count();
        let mut succ = vec![Vec::new(); k];
        for a in &self.arcs {
            succ[a.from].push(a.to);
        }
        // 0 unvisited, 1 on stack, 2 done
        let mut color = vec![0u8; k];
        for start in 0..k {
            if color[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            color[start] = 1;
            while let Some((node, next)) = stack.last_mut() {
                if let Some(&m) = succ[*node].get(*next) {
                    *next += 1;
                    match color[m] {
                        1 => return true,
                        0 => {
                            color[m] = 1;
                            stack.push((m, 0));
                        }
                        _ => {}
                    }
                } else {
                    color[*node] = 2;
                    stack.pop();
                }
            }
        }
        false
    }

    pub fn is_acyclic(&self) -> bool {
        !self.has_cycle()
    }

    /// `reach[a][b]` iff a directed path of length ≥ 0 leads from `a` to `b`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        reach_without(self.node_count(), &self.arcs, None)
    }

    /// Drops every arc `a → b` for which another directed path `a ⇝ b`
    /// remains. Cyclic input is rejected.
    pub fn transitive_reduction(&self) -> Result<IntervalDigraph> {
        if self.has_cycle() {
            return Err(Error::Cyclic);
        }
        let mut kept = self.arcs.clone();
        let mut k = 0;
        while k < kept.len() {
            let a = kept[k];
            if path_exists(self.node_count(), &kept, Some(k), a.from, a.to) {
                kept.remove(k);
            } else {
                k += 1;
            }
        }
        Ok(IntervalDigraph {
            nodes: self.nodes.clone(),
            arcs: kept,
            internal_arcs: Vec::new(),
        })
    }

    /// Weakly connected components, lifted back to `[n]`.
    pub fn partition(&self) -> Partition {
        let n = self.nodes.n;
        let mut uf = UnionFind::new(n);
        for b in &self.nodes.blocks {
            for pair in b.windows(2) {
                uf.union(pair[0] - 1, pair[1] - 1);
            }
        }
        for a in self.arcs.iter().chain(&self.internal_arcs) {
            uf.union(self.nodes.blocks[a.from][0] - 1, self.nodes.blocks[a.to][0] - 1);
        }
        Partition::from_union_find(&mut uf)
    }

    /// Underlying undirected multigraph on the nodes has no cycle.
    pub fn underlying_is_forest(&self) -> bool {
        if !self.internal_arcs.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.node_count());
        self.arcs.iter().all(|a| uf.union(a.from, a.to))
    }

    fn label(&self, node: usize) -> String {
        let s: Vec<String> = self.nodes.blocks[node].iter().map(|x| x.to_string()).collect();
        s.join(",")
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        for k in 0..self.node_count() {
            let _ = writeln!(s, "  n{k} [label=\"{}\"];", self.label(k));
        }
        for a in &self.arcs {
            let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", a.from, a.to, a.t);
        }
        for a in &self.internal_arcs {
            let _ = writeln!(s, "  n{} -> n{} [label=\"{}\", style=dashed];", a.from, a.to, a.t);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Value {
        let arcs: Vec<Value> = self
            .arcs
            .iter()
            .chain(&self.internal_arcs)
            .map(|a| json!([self.label(a.from), self.label(a.to), a.t.to_string()]))
            .collect();
        json!({
            "nodes": (0..self.node_count()).map(|k| self.label(k)).collect::<Vec<_>>(),
            "arcs": arcs,
        })
    }
}

fn reach_without(k: usize, arcs: &[Arc], skip: Option<usize>) -> Vec<Vec<bool>> {
    (0..k)
        .map(|s| {
            let mut seen = vec![false; k];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for (idx, a) in arcs.iter().enumerate() {
                    if Some(idx) != skip && a.from == x && !seen[a.to] {
                        seen[a.to] = true;
                        stack.push(a.to);
                    }
                }
            }
            seen
        })
        .collect()
}

fn path_exists(k: usize, arcs: &[Arc], skip: Option<usize>, from: usize, to: usize) -> bool {
    let mut seen = vec![false; k];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        for (idx, a) in arcs.iter().enumerate() {
            if Some(idx) != skip && a.from == x && !seen[a.to] {
                if a.to == to {
                    return true;
                }
                seen[a.to] = true;
                stack.push(a.to);
            }
        }
    }
    false
}

fn check_chain(chain: &[&Permutation]) -> Result<()> {
    for pair in chain.windows(2) {
        if pair[0].degree() != pair[1].degree() {
            return Err(Error::DegreeMismatch {
                left: pair[0].degree(),
                right: pair[1].degree(),
            });
        }
    }
    for pair in chain.windows(2) {
        if !pair[0].bruhat_le(pair[1]) {
            return Err(Error::NotBelow {
                v: *pair[0],
                w: *pair[1],
            });
        }
    }
    Ok(())
}

/// `G_u^{v,w}` on singleton nodes `1..n`.
pub fn build_g_u(v: &Permutation, w: &Permutation, u: &Permutation) -> Result<IntervalDigraph> {
    check_chain(&[v, u, w])?;
    let mut raw: Vec<(Transposition, ArcKind)> = u
        .covers_up(w)
        .into_iter()
        .map(|(t, _)| (t, ArcKind::Up))
        .collect();
    raw.extend(u.covers_down(v).into_iter().map(|(t, _)| (t, ArcKind::Down)));
    Ok(IntervalDigraph::assemble(Partition::discrete(u.degree()), raw))
}

/// `G_{x,y}^{v,w}`: nodes are the blocks of `B(G_x^{x,y})`, arcs come from
/// the upper covers of `y` and the lower covers of `x` inside `[v, w]`.
pub fn build_g_xy(
    v: &Permutation,
    w: &Permutation,
    x: &Permutation,
    y: &Permutation,
) -> Result<IntervalDigraph> {
    check_chain(&[v, x, y, w])?;
    let nodes = build_g_u(x, y, x)?.partition();
    let mut raw: Vec<(Transposition, ArcKind)> = y
        .covers_up(w)
        .into_iter()
        .map(|(t, _)| (t, ArcKind::Up))
        .collect();
    raw.extend(x.covers_down(v).into_iter().map(|(t, _)| (t, ArcKind::Down)));
    Ok(IntervalDigraph::assemble(nodes, raw))
}

/// `Q_{x,y}` is a face of `Q_{v,w}` when `G_{x,y}^{v,w}` is acyclic.
pub fn is_face(v: &Permutation, w: &Permutation, x: &Permutation, y: &Permutation) -> Result<bool> {
    Ok(build_g_xy(v, w, x, y)?.is_acyclic())
}

pub fn transitive_reduction(g: &IntervalDigraph) -> Result<IntervalDigraph> {
    g.transitive_reduction()
}

pub fn partition_of(g: &IntervalDigraph) -> Partition {
    g.partition()
}

/// `G̃_u^{v,w}`, the transitive reduction of `G_u^{v,w}`.
pub fn reduced_g_u(v: &Permutation, w: &Permutation, u: &Permutation) -> Result<IntervalDigraph> {
    build_g_u(v, w, u)?.transitive_reduction()
}

pub fn is_forest_at(v: &Permutation, w: &Permutation, u: &Permutation) -> Result<bool> {
    Ok(reduced_g_u(v, w, u)?.underlying_is_forest())
}

/// Undirected multigraph with one edge `{a, b}` per step of a saturated
/// chain, where `(a, b) = x_(i)⁻¹ x_(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainGraph {
    n: usize,
    edges: Vec<Transposition>,
}

impl ChainGraph {
    pub fn edges(&self) -> &[Transposition] {
        &self.edges
    }

    pub fn partition(&self) -> Partition {
        let mut uf = UnionFind::new(self.n);
        for t in &self.edges {
            uf.union(t.i - 1, t.j - 1);
        }
        Partition::from_union_find(&mut uf)
    }
}

pub fn chain_graph(chain: &[Permutation]) -> Result<ChainGraph> {
    let first = chain
        .first()
        .ok_or_else(|| Error::Precondition("empty chain".into()))?;
    let n = first.degree();
    let mut edges = Vec::with_capacity(chain.len().saturating_sub(1));
    for (step, pair) in chain.windows(2).enumerate() {
        let step_perm = pair[0].inverse().compose(&pair[1])?;
        match Transposition::from_permutation(&step_perm) {
            Some(t) if pair[1].length() == pair[0].length() + 1 => edges.push(t),
            _ => return Err(Error::NotSaturated { step }),
        }
    }
    Ok(ChainGraph { n, edges })
}

/// `B_{v,w}`, read off `G_v^{v,w}`.
pub fn bvw(v: &Permutation, w: &Permutation) -> Result<Partition> {
    let from_bottom = build_g_u(v, w, v)?.partition();
    debug_assert_eq!(from_bottom, build_g_u(v, w, w)?.partition());
    Ok(from_bottom)
}

/// `n − #B_{v,w}`.
pub fn dim_by_graphs(v: &Permutation, w: &Permutation) -> Result<usize> {
    Ok(v.degree() - bvw(v, w)?.len())
}

/// Arcs of `G_u^{v,w}` as sets of raw `(tail, head)` pairs on `[n]`.
pub fn raw_arc_set(g: &IntervalDigraph) -> BTreeSet<(usize, usize)> {
    g.arcs()
        .iter()
        .chain(g.internal_arcs())
        .map(|a| a.raw_endpoints())
        .collect()
}
