//! Bijections between monotone factorisations and plane trees.
//!
//! A minimal factorisation is encoded by the tree `T1(f)` whose edge
//! labelled `k` joins the vertices named by the `k`-th transposition; the
//! root is the vertex labelled 1 and children are ordered by edge label.
//! Dropping vertex labels is invertible for every minimal factorisation
//! (the `Next` walk recovers them one at a time), and dropping edge labels
//! as well is invertible on the decreasing and increasing families: both
//! admit an explicit relabelling of the bare tree shape, implemented here
//! iteratively so sizes around `10^6` stay off the call stack.

use crate::perm::{monotone_class, Factorisation, Transposition};
use crate::tree::{lukasiewicz_path, PlaneTree};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A plane tree with partial vertex labels in `1..=n` and partial edge
/// labels in `1..=n-1`; zero means unlabeled.
///
/// Vertices are indexed in lexicographic order; an edge is identified by
/// its child endpoint, so `edge_labels[v]` is the label of the edge from
/// `v` to its parent (`edge_labels[0]` is always 0). Full labelings are
/// compatible with the plane order: labels of edges stemming from a common
/// vertex increase left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledTree {
    pub shape: PlaneTree,
    pub vertex_labels: Vec<usize>,
    pub edge_labels: Vec<usize>,
}

impl LabeledTree {
    fn unlabeled(shape: PlaneTree) -> Self {
        let n = shape.n();
        Self { shape, vertex_labels: vec![0; n], edge_labels: vec![0; n] }
    }

    /// Lexicographic index of the vertex labelled `label`, if present.
    pub fn vertex_with_label(&self, label: usize) -> Option<usize> {
        self.vertex_labels.iter().position(|&l| l == label)
    }

    /// Drops every vertex label, keeping shape and edge labels.
    pub fn strip_vertex_labels(&self) -> Self {
        Self {
            shape: self.shape.clone(),
            vertex_labels: vec![0; self.shape.n()],
            edge_labels: self.edge_labels.clone(),
        }
    }

    /// Checks that present edge labels are injective and increase left to
    /// right at every vertex.
    pub fn edge_labels_compatible(&self) -> bool {
        let n = self.shape.n();
        let labels: Vec<usize> = self.edge_labels[1..].iter().copied().filter(|&l| l != 0).collect();
        if labels.iter().any(|&l| l > n - 1) {
            return false;
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        for children in self.shape.children() {
            let present: Vec<usize> = children
                .iter()
                .map(|&c| self.edge_labels[c])
                .filter(|&l| l != 0)
                .collect();
            if present.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
        }
        true
    }

    /// Reads the factorisation off a fully labelled tree: the edge labelled
    /// `k` joining vertex labels `i < j` contributes `τ_k = (i j)`.
    pub fn read_factorisation(&self) -> Result<Factorisation> {
        let n = self.shape.n();
        if self.vertex_labels.contains(&0) {
            return Err(Error::IncompatibleEdgeLabels);
        }
        let parents = self.shape.parents();
        let mut taus = vec![None; n.saturating_sub(1)];
        for v in 1..n {
            let k = self.edge_labels[v];
            if k == 0 || k > n - 1 || taus[k - 1].is_some() {
                return Err(Error::IncompatibleEdgeLabels);
            }
            let p = parents[v].expect("non-root");
            taus[k - 1] = Some(Transposition::new(self.vertex_labels[p], self.vertex_labels[v])?);
        }
        let taus: Vec<Transposition> = taus.into_iter().map(|t| t.expect("all labels placed")).collect();
        Factorisation::new(n, taus)
    }
}

/// `T1`: the EV-labelled plane tree of a minimal factorisation. Rejects
/// input whose transposition graph is not a tree.
pub fn t1_forward(f: &Factorisation) -> Result<LabeledTree> {
    let n = f.n();
    if n == 1 {
        return Ok(LabeledTree {
            shape: PlaneTree::from_children_counts(vec![0]).expect("single vertex"),
            vertex_labels: vec![1],
            edge_labels: vec![0],
        });
    }
    // adjacency by vertex name, each entry (edge label, neighbour name)
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (idx, t) in f.taus().iter().enumerate() {
        adj[t.a()].push((idx + 1, t.b()));
        adj[t.b()].push((idx + 1, t.a()));
    }
    for nbrs in adj.iter_mut().skip(1) {
        nbrs.sort_unstable();
    }
    // Depth-first from the vertex named 1, children in edge-label order.
    // n-1 edges and n vertices: reaching everyone exactly once means the
    // graph is a tree.
    let mut counts = Vec::with_capacity(n);
    let mut vertex_labels = Vec::with_capacity(n);
    let mut edge_labels = Vec::with_capacity(n);
    let mut visited = vec![false; n + 1];
    // stack of (name, incoming edge label); children pushed right-to-left
    let mut stack = vec![(1usize, 0usize)];
    visited[1] = true;
    while let Some((name, in_label)) = stack.pop() {
        vertex_labels.push(name);
        edge_labels.push(in_label);
        let mut child_count = 0;
        for &(label, nbr) in adj[name].iter().rev() {
            if label == in_label {
                continue;
            }
            if visited[nbr] {
                return Err(Error::NotATree);
            }
            visited[nbr] = true;
            child_count += 1;
            stack.push((nbr, label));
        }
        counts.push(child_count);
    }
    if vertex_labels.len() != n {
        return Err(Error::NotATree);
    }
    let shape = PlaneTree::from_children_counts(counts).map_err(|_| Error::NotATree)?;
    Ok(LabeledTree { shape, vertex_labels, edge_labels })
}

/// One application of the `Next` exploration walk, returning the
/// lexicographic index of the vertex that receives label `k + 1`, together
/// with the labels of the edges traversed.
///
/// For `k = 0` the walk is empty and the root receives label 1. For
/// `k >= 1` it starts at the vertex labelled `k`, takes its
/// smallest-labelled incident edge, then repeatedly the successor edge
/// (smallest label at the current vertex exceeding the label just used),
/// as long as one exists.
pub fn next_walk(t: &LabeledTree, k: usize) -> Result<(usize, Vec<usize>)> {
    let n = t.shape.n();
    if k > n - 1 {
        return Err(Error::IndexOutOfRange(k));
    }
    if k == 0 {
        return Ok((0, Vec::new()));
    }
    let mut where_is = vec![None; k + 1];
    for (v, &label) in t.vertex_labels.iter().enumerate() {
        if (1..=k).contains(&label) {
            where_is[label] = Some(v);
        }
    }
    if where_is[1..].iter().any(Option::is_none) {
        return Err(Error::IncompatibleEdgeLabels);
    }
    let incident = incident_edges(t)?;
    let start = where_is[k].expect("checked above");
    let mut ops = 0usize;
    let (end, path) = walk_from(&incident, start, &mut ops);
    Ok((end, path))
}

/// `Next(t, k)` for `k = 0, …, n-1`: the vertex receiving label `k + 1`.
pub fn next_vertex(t: &LabeledTree, k: usize) -> Result<usize> {
    next_walk(t, k).map(|(v, _)| v)
}

/// Incident edge lists sorted by label: `(label, other endpoint)`.
fn incident_edges(t: &LabeledTree) -> Result<Vec<Vec<(usize, usize)>>> {
    if !t.edge_labels_compatible() || t.edge_labels[1..].contains(&0) {
        return Err(Error::IncompatibleEdgeLabels);
    }
    let n = t.shape.n();
    let parents = t.shape.parents();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for v in 1..n {
        let p = parents[v].expect("non-root");
        incident[v].push((t.edge_labels[v], p));
        incident[p].push((t.edge_labels[v], v));
    }
    for list in &mut incident {
        list.sort_unstable();
    }
    Ok(incident)
}

fn walk_from(incident: &[Vec<(usize, usize)>], start: usize, ops: &mut usize) -> (usize, Vec<usize>) {
    let mut path = Vec::new();
    let mut here = start;
    let Some(&(mut last_label, mut next)) = incident[here].first() else {
        return (here, path);
    };
    loop {
        *ops += 1;
        path.push(last_label);
        here = next;
        // smallest label at `here` strictly greater than last_label
        let list = &incident[here];
        let idx = list.partition_point(|&(l, _)| l <= last_label);
        match list.get(idx) {
            Some(&(l, v)) => {
                last_label = l;
                next = v;
            }
            None => return (here, path),
        }
    }
}

/// `T2` inverse: recovers vertex labels of an edge-labelled tree by
/// iterating the `Next` walk, then reads off the factorisation.
///
/// Requires edge labels to be a plane-order compatible bijection onto
/// `1..=n-1`. The result multiplies to the full cycle.
pub fn factorisation_from_edge_labels(t: &LabeledTree) -> Result<Factorisation> {
    let n = t.shape.n();
    if n == 1 {
        return Factorisation::new(1, Vec::new());
    }
    let incident = incident_edges(t)?;
    let mut vertex_labels = vec![0usize; n];
    let mut where_is = vec![0usize; n + 1]; // label -> lex index
    vertex_labels[0] = 1;
    let mut ops = 0usize;
    for k in 1..n {
        let start = where_is[k];
        let (end, _) = walk_from(&incident, start, &mut ops);
        debug_assert_eq!(vertex_labels[end], 0, "Next must land on an unlabeled vertex");
        vertex_labels[end] = k + 1;
        where_is[k + 1] = end;
    }
    // Each edge is crossed at most once per direction over the full pass.
    debug_assert!(ops <= 2 * (n - 1), "Next walk not amortised O(n): {ops} steps");
    let labelled = LabeledTree {
        shape: t.shape.clone(),
        vertex_labels,
        edge_labels: t.edge_labels.clone(),
    };
    labelled.read_factorisation()
}

/// The decreasing labelling of a bare plane tree: vertex `v_i` gets label
/// `i`, and the edges stemming from `v_i` get the labels in the integer
/// interval `(n-1-(S_i+i), n-1-(S_{i-1}+i-1)]`, increasing left to right.
///
/// Reading the edges off in label order yields a decreasing factorisation;
/// this inverts `T3` on the decreasing family.
pub fn decreasing_labels(t: &PlaneTree) -> LabeledTree {
    let n = t.n();
    let counts = t.children_counts();
    let children = t.children();
    let mut out = LabeledTree::unlabeled(t.clone());
    // prefix = S_i + i = number of edges stemming from v_1..v_i
    let mut prefix = 0usize;
    for i in 0..n {
        out.vertex_labels[i] = i + 1;
        let lo = n - 1 - (prefix + counts[i]);
        for (offset, &c) in children[i].iter().enumerate() {
            out.edge_labels[c] = lo + 1 + offset;
        }
        prefix += counts[i];
    }
    out
}

/// Decreasingly labels `t` and reads off the factorisation.
pub fn decreasing_factorisation_of_tree(t: &PlaneTree) -> Factorisation {
    let labelled = decreasing_labels(t);
    let f = labelled.read_factorisation().expect("construction labels fully");
    debug_assert!(monotone_class(&f).is_decreasing());
    f
}

/// Strips a decreasing factorisation to its plane tree; inverse of
/// [`decreasing_factorisation_of_tree`]. Rejects non-decreasing input.
pub fn tree_of_decreasing_factorisation(f: &Factorisation) -> Result<PlaneTree> {
    if !monotone_class(f).is_decreasing() {
        return Err(Error::NotMonotone { expected: "decreasing" });
    }
    Ok(t1_forward(f)?.shape)
}

/// Vertex types for the increasing labelling: type 1 vertices are leaves
/// and vertices at even height, type 2 the rest.
fn type1_flags(t: &PlaneTree) -> Vec<bool> {
    t.heights()
        .iter()
        .zip(t.children_counts())
        .map(|(&h, &c)| c == 0 || h % 2 == 0)
        .collect()
}

/// The increasing labelling of a bare plane tree.
///
/// Stage `t_1` labels the root 1 and its outgoing edges `1..=deg(root)`.
/// Each later stage looks at `u'`, the lexicographic successor of the most
/// recently small-labelled vertex `v`, with parent `u`, writing `ν` and
/// `ε` for the smallest unused vertex and edge labels:
///
/// - if `u'` is a leaf, it gets `ν`, and its parent edge gets `ε` if still
///   unlabeled;
/// - if `u'` is internal and `u` is of type 2, `u'` gets `ν`, its `j`
///   outgoing edges get `ε, …, ε+j-1` and its parent edge gets `ε+j`;
/// - if `u'` is internal and `u` is of type 1, the successor `u''` of `u'`
///   gets `ν` while `u'` gets `ν + |sub(u')| - 1`, the `i` edges stemming
///   from `u''` get `ε, …, ε+i-1` and the edge between `u''` and `u'` gets
///   `ε+i`.
///
/// Reading the edges off in label order yields an increasing
/// factorisation; this inverts `T3` on the increasing family.
pub fn increasing_labels(t: &PlaneTree) -> LabeledTree {
    let mut out = LabeledTree::unlabeled(t.clone());
    run_increasing(t, &mut out, &mut |_| {});
    out
}

/// Every stage `t_0, …, t_m` of the increasing labelling, for inspection
/// and testing; `increasing_labels` returns the final stage only.
pub fn increasing_label_stages(t: &PlaneTree) -> Vec<LabeledTree> {
    let mut stages = vec![LabeledTree::unlabeled(t.clone())];
    let mut current = LabeledTree::unlabeled(t.clone());
    run_increasing(t, &mut current, &mut |snapshot| stages.push(snapshot.clone()));
    stages
}

fn run_increasing(t: &PlaneTree, out: &mut LabeledTree, after_stage: &mut impl FnMut(&LabeledTree)) {
    let n = t.n();
    let counts = t.children_counts();
    let children = t.children();
    let type1 = type1_flags(t);
    let parents = t.parents();
    let sub = t.subtree_sizes();

    let mut vertex_used = vec![false; n + 2];
    let mut nu = 1usize;
    let mut eps = 1usize;
    let claim_vertex = |label: usize, used: &mut Vec<bool>| {
        used[label] = true;
    };

    // stage t_1
    out.vertex_labels[0] = 1;
    claim_vertex(1, &mut vertex_used);
    for (offset, &c) in children[0].iter().enumerate() {
        out.edge_labels[c] = eps + offset;
    }
    eps += counts[0];
    while vertex_used[nu] {
        nu += 1;
    }
    after_stage(out);

    let mut frontier = 0usize; // vertex currently holding the newest small label
    while frontier + 1 < n {
        let u_prime = frontier + 1;
        let u = parents[u_prime].expect("non-root");
        if counts[u_prime] == 0 {
            // Case 1
            out.vertex_labels[u_prime] = nu;
            claim_vertex(nu, &mut vertex_used);
            if out.edge_labels[u_prime] == 0 {
                out.edge_labels[u_prime] = eps;
                eps += 1;
            }
            frontier = u_prime;
        } else if !type1[u] {
            // Case 2
            out.vertex_labels[u_prime] = nu;
            claim_vertex(nu, &mut vertex_used);
            for (offset, &c) in children[u_prime].iter().enumerate() {
                out.edge_labels[c] = eps + offset;
            }
            out.edge_labels[u_prime] = eps + counts[u_prime];
            eps += counts[u_prime] + 1;
            frontier = u_prime;
        } else {
            // Case 3
            let u_second = u_prime + 1; // first child of u', its lex successor
            out.vertex_labels[u_prime] = nu + sub[u_prime] - 1;
            out.vertex_labels[u_second] = nu;
            claim_vertex(nu, &mut vertex_used);
            claim_vertex(nu + sub[u_prime] - 1, &mut vertex_used);
            for (offset, &c) in children[u_second].iter().enumerate() {
                out.edge_labels[c] = eps + offset;
            }
            out.edge_labels[u_second] = eps + counts[u_second];
            eps += counts[u_second] + 1;
            frontier = u_second;
        }
        while vertex_used[nu] {
            nu += 1;
        }
        after_stage(out);
    }
}

/// Increasingly labels `t` and reads off the factorisation.
pub fn increasing_factorisation_of_tree(t: &PlaneTree) -> Factorisation {
    let labelled = increasing_labels(t);
    let f = labelled.read_factorisation().expect("construction labels fully");
    debug_assert!(monotone_class(&f).is_increasing());
    f
}

/// Strips an increasing factorisation to its plane tree; inverse of
/// [`increasing_factorisation_of_tree`]. Rejects non-increasing input.
pub fn tree_of_increasing_factorisation(f: &Factorisation) -> Result<PlaneTree> {
    if !monotone_class(f).is_increasing() {
        return Err(Error::NotMonotone { expected: "increasing" });
    }
    Ok(t1_forward(f)?.shape)
}

/// All decreasing factorisations of size `n`, generated through the tree
/// bijection in tree enumeration order.
pub fn enumerate_decreasing(n: usize) -> Result<Vec<Factorisation>> {
    let mut out = Vec::new();
    crate::tree::for_each_plane_tree(n, |t| out.push(decreasing_factorisation_of_tree(t)))?;
    Ok(out)
}

/// All increasing factorisations of size `n`, generated through the tree
/// bijection in tree enumeration order.
pub fn enumerate_increasing(n: usize) -> Result<Vec<Factorisation>> {
    let mut out = Vec::new();
    crate::tree::for_each_plane_tree(n, |t| out.push(increasing_factorisation_of_tree(t)))?;
    Ok(out)
}

/// The walk excursion of the tree behind a decreasing factorisation,
/// without rebuilding labels: for decreasing input the vertex labelled `w`
/// is the `w`-th vertex in lexicographic order, so children counts are the
/// multiplicities of `w` among the smaller endpoints.
pub fn walk_of_decreasing(f: &Factorisation) -> Result<crate::tree::LukaPath> {
    let t = tree_of_decreasing_factorisation(f)?;
    Ok(lukasiewicz_path(&t))
}
