//! Eggers-Wall trees.
//!
//! The tree of a curve with respect to the smooth reference branch `L_0`
//! carries three functions: the exponent `e`, the index `i` (constant on
//! half-open segments between marked points), and the contact complexity
//! `c`, obtained by integrating `de/i` from the root. Interior marked points
//! are the ramification points and the discontinuities of the index;
//! augmented marks add the attaching points of a second curve.
//!
//! From the renormalized exponent at a point, `e_Q(P) = i(P) (e(P) - e(Q))
//! = m/n` with `Q` the bottom of `P`'s index level, the module derives the
//! `(n_P, m_P)` data, the distinguished points coming from the minimal
//! regularization of the segment cones, and the dual graph of the minimal
//! embedded resolution.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::branch::{contact_exponent, BranchData, Contact};
use crate::lattice::hj_chain;
use crate::rat::{lcm_i64, rat_str, to_i64, Int, Rat};
use crate::{Error, Result};

/// Node identifier inside an [`EwTree`].
pub type NodeId = usize;

/// Value of the exponent or contact-complexity function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ext {
    Fin(Rat),
    Inf,
}

impl Ext {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Ext::Fin(r) => Some(r),
            Ext::Inf => None,
        }
    }
}

impl std::fmt::Display for Ext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ext::Fin(r) => write!(f, "{}", rat_str(r)),
            Ext::Inf => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Root,
    /// Leaf labelled by a branch of the tree curve (index into `branches`).
    Leaf(usize),
    Interior,
}

#[derive(Debug, Clone)]
pub struct Node {
    pub kind: NodeKind,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// Exponent of the point (infinite exactly at leaves).
    pub e: Ext,
    /// Index on the half-open segment `(parent, this]`; 1 at the root.
    pub index: i64,
    /// Contact complexity (infinite exactly at leaves).
    pub c: Ext,
    /// Marked point of the plain tree (ramification or index jump or end).
    pub marked: bool,
    /// Augmented mark: attaching point of an auxiliary curve branch.
    pub augmented: bool,
    /// Names of auxiliary branches attaching here.
    pub attached: Vec<String>,
}

/// Renormalization data of a rational point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenormData {
    /// Bottom of the index level of the point.
    pub q: NodeId,
    pub n: i64,
    pub m: i64,
    /// `i^+ = i * n`.
    pub i_plus: i64,
}

/// The Eggers-Wall tree of `D` (with optional augmented marks from `C`).
#[derive(Debug, Clone)]
pub struct EwTree {
    nodes: Vec<Node>,
    /// The branches labelling the leaves, in input order (`L_1, ..., L_m`).
    branches: Vec<BranchData>,
    /// Leaf node per branch.
    leaf_of: Vec<NodeId>,
}

impl EwTree {
    /// Build the tree of the branches `d` (all distinct from `L_0 = Z(X)`),
    /// then mark the attaching points of the `c` branches as augmented.
    ///
    /// Pairwise contacts come from the conjugate-maximized series walk; the
    /// index profile along each root-to-leaf path comes from that branch's
    /// characteristic exponents.
    pub fn build(d: &[BranchData], c: &[BranchData]) -> Result<EwTree> {
        for b in d.iter().chain(c) {
            if b.is_x_axis() {
                return Err(Error::InvalidBranch(
                    "the reference branch cannot be a tree branch".into(),
                ));
            }
        }
        let m = d.len();
        // pairwise contact exponents
        let mut kappa = vec![vec![Rat::zero(); m]; m];
        for i in 0..m {
            for j in i + 1..m {
                match contact_exponent(&d[i], &d[j])? {
                    Contact::Exponent(e) => {
                        kappa[i][j] = e.clone();
                        kappa[j][i] = e;
                    }
                    Contact::FullAgreement => {
                        return Err(Error::InvalidBranch(format!(
                            "branches {} and {} coincide (or exceed truncation)",
                            d[i].name, d[j].name
                        )));
                    }
                }
            }
        }
        // ultrametric sanity: kappa(i,k) >= min(kappa(i,j), kappa(j,k))
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if i != j && j != k && i != k {
                        let lhs = &kappa[i][k];
                        let rhs = kappa[i][j].clone().min(kappa[j][k].clone());
                        if *lhs < rhs {
                            return Err(Error::InconsistentContacts(format!(
                                "branches {}, {}, {}",
                                d[i].name, d[j].name, d[k].name
                            )));
                        }
                    }
                }
            }
        }

        let mut tree = EwTree {
            nodes: vec![Node {
                kind: NodeKind::Root,
                parent: None,
                children: Vec::new(),
                e: Ext::Fin(Rat::zero()),
                index: 1,
                c: Ext::Fin(Rat::zero()),
                marked: true,
                augmented: true,
                attached: Vec::new(),
            }],
            branches: d.to_vec(),
            leaf_of: vec![usize::MAX; m],
        };

        // Insert leaves one at a time: branch j attaches to the partial tree
        // of branches 0..j at exponent max_i kappa(i, j) along the path of
        // the maximizing branch.
        for j in 0..m {
            let leaf = tree.push_node(Node {
                kind: NodeKind::Leaf(j),
                parent: None,
                children: Vec::new(),
                e: Ext::Inf,
                index: d[j].multiplicity_against_x().unwrap_or(1),
                c: Ext::Inf,
                marked: true,
                augmented: true,
                attached: Vec::new(),
            });
            tree.leaf_of[j] = leaf;
            if j == 0 {
                tree.attach_leaf_chain(0, leaf, j)?;
                continue;
            }
            let (witness, _) = (0..j)
                .map(|i| (i, kappa[i][j].clone()))
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
                .unwrap();
            let at = tree.point_on_path(tree.leaf_of[witness], &kappa[witness][j])?;
            tree.attach_leaf_chain(at, leaf, j)?;
        }
        tree.recompute_marks();
        tree.recompute_contact();

        // augmented marks: attaching points of the auxiliary branches
        for cb in c {
            let mut best: Option<(usize, Rat)> = None;
            for (i, db) in tree.branches.clone().iter().enumerate() {
                match contact_exponent(db, cb)? {
                    Contact::Exponent(e) => {
                        if best.as_ref().map_or(true, |(_, be)| e > *be) {
                            best = Some((i, e));
                        }
                    }
                    Contact::FullAgreement => {
                        return Err(Error::InvalidBranch(format!(
                            "auxiliary branch {} coincides with {}",
                            cb.name, db.name
                        )));
                    }
                }
            }
            let Some((witness, e)) = best else {
                return Err(Error::InvalidBranch("empty tree".into()));
            };
            let at = tree.point_on_path(tree.leaf_of[witness], &e)?;
            tree.nodes[at].augmented = true;
            tree.nodes[at].attached.push(cb.name.clone());
        }
        tree.sort_children();
        tree.recompute_contact();
        Ok(tree)
    }

    fn push_node(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    /// Attach a fresh leaf below `at`, inserting the index-jump marked
    /// points dictated by the branch's characteristic exponents strictly
    /// between the attachment exponent and infinity.
    fn attach_leaf_chain(&mut self, at: NodeId, leaf: NodeId, branch: usize) -> Result<()> {
        let profile = self.branches[branch].index_profile();
        let e_at = match &self.nodes[at].e {
            Ext::Fin(e) => e.clone(),
            Ext::Inf => {
                return Err(Error::InconsistentContacts("attachment at a leaf".into()))
            }
        };
        // index jumps strictly above the attachment point
        let mut cur = at;
        for (e_jump, _idx_after) in profile.iter().skip(1) {
            if *e_jump <= e_at {
                continue;
            }
            let incoming = index_before(&profile, e_jump);
            let node = self.push_node(Node {
                kind: NodeKind::Interior,
                parent: Some(cur),
                children: Vec::new(),
                e: Ext::Fin(e_jump.clone()),
                index: incoming,
                c: Ext::Fin(Rat::zero()),
                marked: true,
                augmented: true,
                attached: Vec::new(),
            });
            self.nodes[cur].children.push(node);
            cur = node;
        }
        self.nodes[leaf].parent = Some(cur);
        self.nodes[leaf].index = profile.last().map(|(_, i)| *i).unwrap_or(1);
        self.nodes[cur].children.push(leaf);
        Ok(())
    }

    /// Node at exponent `e` on the path from the root to `leaf`, splitting
    /// an edge or returning an existing node.
    pub fn point_on_path(&mut self, leaf: NodeId, e: &Rat) -> Result<NodeId> {
        let path = self.path_from_root(leaf);
        for w in path.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let e_lo = self.nodes[lo].e.finite().cloned().expect("interior exponent");
            let e_hi = self.nodes[hi].e.finite().cloned();
            if e_lo == *e {
                return Ok(lo);
            }
            let above = match &e_hi {
                Some(h) => e < h,
                None => true,
            };
            if *e > e_lo && above {
                // split the edge (lo, hi)
                let idx = self.nodes[hi].index;
                let node = self.push_node(Node {
                    kind: NodeKind::Interior,
                    parent: Some(lo),
                    children: vec![hi],
                    e: Ext::Fin(e.clone()),
                    index: idx,
                    c: Ext::Fin(Rat::zero()),
                    marked: false,
                    augmented: false,
                    attached: Vec::new(),
                });
                let pos = self.nodes[lo].children.iter().position(|&c| c == hi).unwrap();
                self.nodes[lo].children[pos] = node;
                self.nodes[hi].parent = Some(node);
                self.recompute_contact();
                return Ok(node);
            }
            if e_hi.as_ref() == Some(e) {
                return Ok(hi);
            }
        }
        Err(Error::InconsistentContacts(format!(
            "exponent {} not on the path",
            rat_str(e)
        )))
    }

    fn path_from_root(&self, node: NodeId) -> Vec<NodeId> {
        let mut path = vec![node];
        let mut cur = node;
        while let Some(p) = self.nodes[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Ramification points, index jumps and ends are marked; pass-through
    /// points are not.
    fn recompute_marks(&mut self) {
        for id in 0..self.nodes.len() {
            let n = &self.nodes[id];
            let marked = match n.kind {
                NodeKind::Root | NodeKind::Leaf(_) => true,
                NodeKind::Interior => {
                    n.children.len() > 1
                        || n.children.iter().any(|&c| self.nodes[c].index != n.index)
                }
            };
            self.nodes[id].marked = marked;
            if marked {
                self.nodes[id].augmented = true;
            }
        }
    }

    /// Integrate `de / i` from the root along every edge.
    fn recompute_contact(&mut self) {
        for id in self.topological_order() {
            let Some(parent) = self.nodes[id].parent else {
                self.nodes[id].c = Ext::Fin(Rat::zero());
                continue;
            };
            let pc = self.nodes[parent].c.finite().cloned().expect("parent contact");
            let pe = self.nodes[parent].e.finite().cloned().expect("parent exponent");
            let idx = Rat::from_integer(self.nodes[id].index.into());
            self.nodes[id].c = match self.nodes[id].e.finite() {
                Some(e) => Ext::Fin(pc + (e.clone() - pe) / idx),
                None => Ext::Inf,
            };
        }
    }

    fn topological_order(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![0];
        while let Some(id) = stack.pop() {
            out.push(id);
            let mut ch = self.nodes[id].children.clone();
            ch.reverse();
            stack.extend(ch);
        }
        out
    }

    /// Deterministic child order: by exponent, then by smallest leaf label.
    fn sort_children(&mut self) {
        let keys: Vec<(Rat, String)> = (0..self.nodes.len())
            .map(|id| {
                let e = self.nodes[id]
                    .e
                    .finite()
                    .cloned()
                    .unwrap_or_else(|| Rat::from_integer(Int::from(1_000_000)));
                (e, self.min_leaf_label(id))
            })
            .collect();
        for id in 0..self.nodes.len() {
            let mut ch = self.nodes[id].children.clone();
            ch.sort_by(|a, b| keys[*a].cmp(&keys[*b]));
            self.nodes[id].children = ch;
        }
    }

    fn min_leaf_label(&self, id: NodeId) -> String {
        match self.nodes[id].kind {
            NodeKind::Leaf(b) => self.branches[b].name.clone(),
            _ => self.nodes[id]
                .children
                .iter()
                .map(|&c| self.min_leaf_label(c))
                .min()
                .unwrap_or_default(),
        }
    }

    // ------------------------------------------------------------------
    // queries

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn branches(&self) -> &[BranchData] {
        &self.branches
    }

    pub fn leaf_of_branch(&self, branch: usize) -> NodeId {
        self.leaf_of[branch]
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        0..self.nodes.len()
    }

    /// Nodes in depth-first order.
    pub fn dfs_order(&self) -> Vec<NodeId> {
        self.topological_order()
    }

    /// `(L_0 . L_j)` of a tree branch: its index at the leaf.
    pub fn leaf_multiplicity(&self, branch: usize) -> i64 {
        self.nodes[self.leaf_of[branch]].index
    }

    pub fn exponent(&self, id: NodeId) -> &Ext {
        &self.nodes[id].e
    }

    pub fn contact(&self, id: NodeId) -> &Ext {
        &self.nodes[id].c
    }

    /// Index on the segment arriving at the node from the root side.
    pub fn index(&self, id: NodeId) -> i64 {
        self.nodes[id].index
    }

    /// Center of the tripod `(root, a, b)`: the deepest common ancestor.
    pub fn tripod(&self, a: NodeId, b: NodeId) -> NodeId {
        let pa = self.path_from_root(a);
        let pb = self.path_from_root(b);
        let mut last = 0;
        for (x, y) in pa.iter().zip(&pb) {
            if x == y {
                last = *x;
            } else {
                break;
            }
        }
        last
    }

    pub fn is_ancestor(&self, anc: NodeId, node: NodeId) -> bool {
        self.path_from_root(node).contains(&anc)
    }

    /// Contact complexity at an arbitrary exponent on the incoming segment
    /// of `hi`.
    pub fn contact_at(&self, hi: NodeId, e: &Rat) -> Rat {
        let parent = self.nodes[hi].parent.expect("not the root");
        let pc = self.nodes[parent].c.finite().cloned().unwrap();
        let pe = self.nodes[parent].e.finite().cloned().unwrap();
        pc + (e.clone() - pe) / Rat::from_integer(self.nodes[hi].index.into())
    }

    /// Renormalization data of a rational interior point.
    ///
    /// `Q` is the minimum of the closure of the index-level component of the
    /// point, `(n, m)` the reduced renormalized exponent
    /// `i(P) (e(P) - e(Q)) = m/n`, and `i_plus = i(P) n`.
    pub fn renorm(&self, id: NodeId) -> Result<RenormData> {
        let Ext::Fin(e) = &self.nodes[id].e else {
            return Err(Error::NotRationalPoint);
        };
        if matches!(self.nodes[id].kind, NodeKind::Root) {
            return Err(Error::NotRationalPoint);
        }
        let idx = self.nodes[id].index;
        let q = self.level_bottom(id);
        let eq = self.nodes[q].e.finite().cloned().expect("level bottom exponent");
        let renorm = Rat::from_integer(idx.into()) * (e.clone() - eq);
        if renorm.is_negative() || renorm.is_zero() {
            return Err(Error::NotRationalPoint);
        }
        let n = to_i64(&Rat::from_integer(renorm.denom().clone())).unwrap();
        let m = to_i64(&Rat::from_integer(renorm.numer().clone())).unwrap();
        let data = RenormData { q, n, m, i_plus: idx * n };
        // cross-check: i^+ = lcm(i(P), denominator of e(P))
        let denom_e = to_i64(&Rat::from_integer(e.denom().clone())).unwrap();
        debug_assert_eq!(data.i_plus, lcm_i64(idx, denom_e));
        Ok(data)
    }

    /// Bottom of the index-level component containing the incoming segment
    /// of `id`: walk rootward while the index stays equal.
    pub fn level_bottom(&self, id: NodeId) -> NodeId {
        let idx = self.nodes[id].index;
        let mut q = id;
        while let Some(p) = self.nodes[q].parent {
            if self.nodes[q].index == idx {
                q = p;
            } else {
                break;
            }
        }
        q
    }

    /// Insert (or find) the point at renormalized coordinates `(n, m)`
    /// relative to `q` on the leafward segment through `p2`.
    fn point_at_renorm(&mut self, p2: NodeId, q: NodeId, n: &Int, m: &Int) -> Result<NodeId> {
        let idx = self.nodes[p2].index;
        let eq = self.nodes[q].e.finite().cloned().unwrap();
        let e = eq + Rat::new(m.clone(), n.clone()) / Rat::from_integer(idx.into());
        // locate a leaf under p2 to reuse point_on_path
        let mut probe = p2;
        while !matches!(self.nodes[probe].kind, NodeKind::Leaf(_)) {
            probe = *self.nodes[probe].children.first().expect("leafward path");
        }
        self.point_on_path(probe, &e)
    }

    /// Augmented marks in depth-first order.
    pub fn augmented_marks(&self) -> Vec<NodeId> {
        self.topological_order()
            .into_iter()
            .filter(|&id| self.nodes[id].augmented)
            .collect()
    }

    /// Consecutive pairs `(P1, P2)` of augmented marks: `P1` is the nearest
    /// augmented ancestor of `P2`.
    pub fn consecutive_augmented_pairs(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for id in self.topological_order() {
            if id == self.root() || !self.nodes[id].augmented {
                continue;
            }
            let mut p = self.nodes[id].parent;
            while let Some(pp) = p {
                if self.nodes[pp].augmented {
                    out.push((pp, id));
                    break;
                }
                p = self.nodes[pp].parent;
            }
        }
        out
    }

    /// The cone `sigma_{P1,P2}` of a consecutive augmented pair, in the
    /// renormalized plane of `Q_{P2}`: rays `(n_{P1}, m_{P1})` and
    /// `(n_{P2}, m_{P2})`, with `(1, 0)` replacing the first when
    /// `P1 = Q_{P2}` and `(0, 1)` replacing the second at a leaf.
    pub fn segment_cone(&self, p1: NodeId, p2: NodeId) -> Result<SegmentCone> {
        let (ray2, q) = match self.nodes[p2].kind {
            NodeKind::Leaf(_) => ((Int::zero(), Int::one()), self.level_bottom(p2)),
            _ => {
                let r = self.renorm(p2)?;
                ((Int::from(r.n), Int::from(r.m)), r.q)
            }
        };
        let ray1 = if p1 == q {
            (Int::one(), Int::zero())
        } else {
            let r1 = self.renorm(p1)?;
            if r1.q != q {
                return Err(Error::InconsistentContacts(format!(
                    "segment ({}, {}) has inconsistent level bottoms",
                    p1, p2
                )));
            }
            (Int::from(r1.n), Int::from(r1.m))
        };
        Ok(SegmentCone { p1, p2, q, ray1, ray2 })
    }

    /// All distinguished points: augmented marks plus the interior points
    /// whose `(n, m)` span the added rays of the minimal regularization of
    /// each segment cone. Interior marks belonging to leaves are excluded
    /// (they are branch points, not divisors). Returns ids in tree order.
    pub fn distinguished_points(&mut self) -> Result<Vec<NodeId>> {
        let pairs = self.consecutive_augmented_pairs();
        let mut extra: Vec<NodeId> = Vec::new();
        for (p1, p2) in pairs {
            let sc = self.segment_cone(p1, p2)?;
            let chain = hj_chain(&sc.ray1, &sc.ray2)?;
            for (n, m) in chain.iter().skip(1).take(chain.len().saturating_sub(2)) {
                let id = self.point_at_renorm(p2, sc.q, n, m)?;
                if !extra.contains(&id) {
                    extra.push(id);
                }
            }
        }
        let mut out: Vec<NodeId> = Vec::new();
        for id in self.topological_order() {
            if id == self.root() || matches!(self.nodes[id].kind, NodeKind::Leaf(_)) {
                continue;
            }
            if self.nodes[id].augmented || extra.contains(&id) {
                out.push(id);
            }
        }
        Ok(out)
    }

    /// Distinguished points with their renormalization data.
    pub fn divisors(&mut self) -> Result<Vec<(NodeId, RenormData)>> {
        let pts = self.distinguished_points()?;
        pts.into_iter().map(|id| Ok((id, self.renorm(id)?))).collect()
    }
}

/// Renormalized cone of a consecutive augmented pair.
#[derive(Debug, Clone)]
pub struct SegmentCone {
    pub p1: NodeId,
    pub p2: NodeId,
    /// Level bottom `Q_{P2}` the renormalization is relative to.
    pub q: NodeId,
    pub ray1: (Int, Int),
    pub ray2: (Int, Int),
}

fn index_before(profile: &[(Rat, i64)], e: &Rat) -> i64 {
    let mut idx = 1;
    for (je, after) in profile.iter().skip(1) {
        if je < e {
            idx = *after;
        }
    }
    idx
}

/// Dual graph of the total transform: distinguished divisors as interior
/// vertices, branch leaves (of the tree curve and the auxiliary curve) as
/// labelled leaf vertices, plus the `L0` leaf vertex.
#[derive(Debug, Clone, Default)]
pub struct DualGraph {
    /// Vertex labels: `E<k>` for divisors, branch names for leaves.
    pub labels: Vec<String>,
    /// For divisor vertices, the tree node they represent.
    pub divisor_node: Vec<Option<NodeId>>,
    pub edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn divisor_count(&self) -> usize {
        self.divisor_node.iter().filter(|d| d.is_some()).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Divisor vertices of valency <= 1 inside the exceptional subgraph.
    pub fn exceptional_ends(&self) -> Vec<String> {
        let mut out = Vec::new();
        for v in 0..self.labels.len() {
            if self.divisor_node[v].is_none() {
                continue;
            }
            let nb: Vec<usize> = self
                .neighbors(v)
                .into_iter()
                .filter(|&w| self.divisor_node[w].is_some())
                .collect();
            if nb.len() <= 1 {
                out.push(self.labels[v].clone());
            }
        }
        out
    }

    /// Vertex index by label.
    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Build the dual graph of the total transform of the tree curve (plus the
/// attached auxiliary branches) under the minimal embedded resolution.
pub fn dual_graph(tree: &mut EwTree) -> Result<DualGraph> {
    let divisors = tree.divisors()?;
    let mut graph = DualGraph::default();
    let mut vertex_of_node: BTreeMap<NodeId, usize> = BTreeMap::new();
    for (k, (id, _)) in divisors.iter().enumerate() {
        vertex_of_node.insert(*id, graph.labels.len());
        graph.labels.push(format!("E{}", k));
        graph.divisor_node.push(Some(*id));
    }
    // leaf vertices for the tree branches
    let mut leaf_vertex: BTreeMap<NodeId, usize> = BTreeMap::new();
    for b in 0..tree.branches().len() {
        let leaf = tree.leaf_of_branch(b);
        leaf_vertex.insert(leaf, graph.labels.len());
        graph.labels.push(tree.branches()[b].name.clone());
        graph.divisor_node.push(None);
    }
    // root vertex for L_0
    let root_vertex = graph.labels.len();
    graph.labels.push("L0".into());
    graph.divisor_node.push(None);

    // edges: every divisor or leaf vertex connects to the nearest vertexed
    // ancestor (the root vertex when none is found)
    for id in tree.dfs_order() {
        if id == tree.root() {
            continue;
        }
        let Some(me) =
            vertex_of_node.get(&id).copied().or_else(|| leaf_vertex.get(&id).copied())
        else {
            continue;
        };
        let mut p = tree.node(id).parent;
        let anc = loop {
            match p {
                None => break root_vertex,
                Some(a) => {
                    if a == tree.root() {
                        break root_vertex;
                    }
                    if let Some(v) = vertex_of_node.get(&a) {
                        break *v;
                    }
                    p = tree.node(a).parent;
                }
            }
        };
        graph.edges.push((anc, me));
    }
    // auxiliary branch leaves attach at their (distinguished) mark
    for id in tree.node_ids().collect::<Vec<_>>() {
        for name in tree.node(id).attached.clone() {
            let v = graph.labels.len();
            graph.labels.push(name);
            graph.divisor_node.push(None);
            let host = vertex_of_node
                .get(&id)
                .copied()
                .ok_or_else(|| Error::InconsistentContacts("mark without divisor".into()))?;
            graph.edges.push((host, v));
        }
    }
    Ok(graph)
}

/// Canonical form of a labelled tree graph rooted at a vertex, for
/// isomorphism checks: sorted nested parenthesizations with labels.
pub fn canonical_tree_form(
    vertex_labels: &[Option<String>],
    edges: &[(usize, usize)],
    root: usize,
) -> String {
    fn enc(
        v: usize,
        parent: Option<usize>,
        labels: &[Option<String>],
        adj: &[Vec<usize>],
    ) -> String {
        let mut parts: Vec<String> = adj[v]
            .iter()
            .filter(|&&w| Some(w) != parent)
            .map(|&w| enc(w, Some(v), labels, adj))
            .collect();
        parts.sort();
        let label = labels[v].clone().unwrap_or_default();
        format!("({}{})", label, parts.join(""))
    }
    let n = vertex_labels.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    enc(root, None, vertex_labels, &adj)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::branch::PuiseuxParam;
    use crate::rat::rat;
    use crate::series::{Series, Trunc};

    pub(crate) fn branch(name: &str, n: i64, terms: &[(i64, i64, i64)]) -> BranchData {
        let t: Vec<(i64, Rat)> = terms.iter().map(|(e, p, q)| (*e, rat(*p, *q))).collect();
        let zeta = Series::from_terms("t", &t, Trunc::Exact);
        BranchData::from_param(name, PuiseuxParam::new(n, zeta).unwrap(), None).unwrap()
    }

    /// The five-branch tree fixture: L1 = Z(Y), zeta2 = x^(5/3),
    /// zeta3 = x^(5/3) + x^2 + x^(5/2), zeta4 = x^(3/2),
    /// zeta5 = x^(3/2) + x^(7/4).
    pub(crate) fn five_branch_tree() -> Vec<BranchData> {
        vec![
            branch("L1", 1, &[]),
            branch("L2", 3, &[(5, 1, 1)]),
            branch("L3", 6, &[(10, 1, 1), (12, 1, 1), (15, 1, 1)]),
            branch("L4", 2, &[(3, 1, 1)]),
            branch("L5", 4, &[(6, 1, 1), (7, 1, 1)]),
        ]
    }

    pub(crate) fn find_marked(tree: &EwTree, e: (i64, i64)) -> Vec<NodeId> {
        tree.node_ids()
            .filter(|&id| {
                tree.node(id).marked
                    && matches!(tree.node(id).kind, NodeKind::Interior)
                    && tree.exponent(id).finite() == Some(&rat(e.0, e.1))
            })
            .collect()
    }

    #[test]
    fn five_branch_fixture_contacts() {
        let d = five_branch_tree();
        let tree = EwTree::build(&d, &[]).unwrap();
        let p1 = find_marked(&tree, (3, 2));
        let p2 = find_marked(&tree, (5, 3));
        let p3 = find_marked(&tree, (5, 2));
        let p4 = find_marked(&tree, (7, 4));
        assert_eq!(p1.len(), 1);
        assert_eq!(p2.len(), 1);
        assert_eq!(p3.len(), 1);
        assert_eq!(p4.len(), 1);
        assert_eq!(tree.contact(p1[0]).finite(), Some(&rat(3, 2)));
        assert_eq!(tree.contact(p2[0]).finite(), Some(&rat(5, 3)));
        assert_eq!(tree.contact(p3[0]).finite(), Some(&rat(35, 18)));
        assert_eq!(tree.contact(p4[0]).finite(), Some(&rat(13, 8)));
        assert_eq!(tree.contact(tree.root()).finite(), Some(&Rat::zero()));

        // index plateaus
        assert_eq!(tree.index(p1[0]), 1);
        assert_eq!(tree.index(p2[0]), 1);
        assert_eq!(tree.index(p3[0]), 3);
        assert_eq!(tree.index(p4[0]), 2);
        assert_eq!(tree.index(tree.leaf_of_branch(4)), 4); // L5
        assert_eq!(tree.index(tree.leaf_of_branch(2)), 6); // L3
        assert_eq!(tree.index(tree.leaf_of_branch(0)), 1); // L1

        // renormalization fixtures
        let r4 = tree.renorm(p4[0]).unwrap();
        assert_eq!((r4.n, r4.m), (2, 1));
        assert_eq!(r4.q, p1[0]);
        assert_eq!(r4.i_plus, 4);
        let r1 = tree.renorm(p1[0]).unwrap();
        assert_eq!((r1.n, r1.m), (2, 3));
        assert_eq!(r1.q, tree.root());
        assert_eq!(r1.i_plus, 2);
    }

    #[test]
    fn single_smooth_branch_tree() {
        let d = vec![branch("L1", 1, &[])];
        let tree = EwTree::build(&d, &[]).unwrap();
        assert!(tree
            .node_ids()
            .all(|id| !matches!(tree.node(id).kind, NodeKind::Interior)));
    }

    #[test]
    fn cusp_distinguished_points() {
        // cross + cusp: distinguished points are E_O (e=1), the tip toward
        // L1 (e=2), and the (2,3)-point (e=3/2)
        let d = vec![branch("L1", 1, &[]), branch("A", 2, &[(3, 1, 1)])];
        let mut tree = EwTree::build(&d, &[]).unwrap();
        let p = find_marked(&tree, (3, 2));
        assert_eq!(p.len(), 1);
        let r = tree.renorm(p[0]).unwrap();
        assert_eq!((r.n, r.m, r.i_plus), (2, 3, 2));
        let pts = tree.distinguished_points().unwrap();
        let exps: Vec<Rat> = pts
            .iter()
            .map(|&id| tree.exponent(id).finite().cloned().unwrap())
            .collect();
        assert_eq!(pts.len(), 3, "expected 3 divisors, got exponents {:?}", exps);
        assert!(exps.contains(&rat(1, 1)));
        assert!(exps.contains(&rat(2, 1)));
        assert!(exps.contains(&rat(3, 2)));
    }

    #[test]
    fn contact_is_strictly_increasing_along_paths() {
        let d = five_branch_tree();
        let tree = EwTree::build(&d, &[]).unwrap();
        for id in tree.node_ids() {
            if let Some(p) = tree.node(id).parent {
                match (tree.contact(p).finite(), tree.contact(id).finite()) {
                    (Some(a), Some(b)) => assert!(a < b),
                    (Some(_), None) => {}
                    _ => panic!("parent contact must be finite"),
                }
            }
        }
    }

    #[test]
    fn dual_graph_of_five_branch_fixture() {
        let d = five_branch_tree();
        let mut tree = EwTree::build(&d, &[]).unwrap();
        let g = dual_graph(&mut tree).unwrap();
        // leaves L0..L5 all present and attached to divisor vertices
        for label in ["L0", "L1", "L2", "L3", "L4", "L5"] {
            let v = g.vertex(label).unwrap();
            let nb = g.neighbors(v);
            assert_eq!(nb.len(), 1, "leaf {} should have one edge", label);
            assert!(g.divisor_node[nb[0]].is_some());
        }
        // the divisor subgraph is connected and a tree
        let dv: Vec<usize> =
            (0..g.vertex_count()).filter(|&v| g.divisor_node[v].is_some()).collect();
        let de: Vec<(usize, usize)> = g
            .edges
            .iter()
            .copied()
            .filter(|(a, b)| g.divisor_node[*a].is_some() && g.divisor_node[*b].is_some())
            .collect();
        assert_eq!(de.len() + 1, dv.len());
    }
}
