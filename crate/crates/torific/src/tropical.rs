//! Local tropicalization of the re-embedded surface.
//!
//! Every point `P` of the Eggers-Wall tree maps to the vector
//! `w^P = (1, (L_0 . L_1) c(<L_0, P, L_1>), ..., (L_0 . L_m) c(<L_0, P, L_m>))`,
//! leaves going to canonical basis vectors. The rays through the `w^P` of
//! the augmented marks, together with the two-dimensional cones spanned by
//! consecutive marks, form the fan whose support is the finite local
//! tropicalization. Each two-dimensional cone is identified with a plane
//! cone through the segment linear map `(p, q) -> (a_j p + b_j q)_j`, which
//! transports the continued-fraction regularization; the added rays are the
//! primitive vectors `i^+(P) w^P` of the distinguished points.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::eggers::{dual_graph, canonical_tree_form, EwTree, NodeId, NodeKind};
use crate::lattice::{ivec_gcd, Cone, Fan, IVec};
use crate::rat::{rat_str, Int, Rat};
use crate::{Error, Result};

/// Label of a tropical ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RayLabel {
    /// Canonical basis vector `e_j` (0 is the reference branch `L_0`).
    Axis(usize),
    /// Interior tree point.
    Point(NodeId),
}

/// A ray of the tropical fan: exact rational `w`-vector plus its primitive
/// integer representative and scale.
#[derive(Debug, Clone)]
pub struct WRay {
    pub label: RayLabel,
    /// Exact `w^P` (normalized so the first coordinate is 1 for interior
    /// points and the root).
    pub w: Vec<Rat>,
    /// Primitive integer vector spanning the same ray.
    pub primitive: IVec,
    /// `primitive = scale * w` (for interior points, `scale = i^+(P)`).
    pub scale: Rat,
}

/// The local tropicalization fan.
#[derive(Debug, Clone)]
pub struct TropFan {
    pub rays: Vec<WRay>,
    /// Two-dimensional cones as index pairs into `rays`, one per pair of
    /// consecutive augmented marks.
    pub cones: Vec<(usize, usize)>,
    /// Tree nodes backing each cone.
    pub segments: Vec<(NodeId, NodeId)>,
}

/// `w`-vector of a tree node (interior, root, or leaf).
pub fn w_vector(tree: &EwTree, id: NodeId) -> Vec<Rat> {
    let m = tree.branches().len();
    match tree.node(id).kind {
        NodeKind::Leaf(b) => {
            let mut v = vec![Rat::zero(); m + 1];
            v[b + 1] = Rat::one();
            v
        }
        NodeKind::Root => {
            let mut v = vec![Rat::zero(); m + 1];
            v[0] = Rat::one();
            v
        }
        NodeKind::Interior => {
            let mut v = vec![Rat::one()];
            for j in 0..m {
                let tri = tree.tripod(id, tree.leaf_of_branch(j));
                let c = tree.contact(tri).finite().cloned().expect("interior contact");
                v.push(Rat::from_integer(tree.leaf_multiplicity(j).into()) * c);
            }
            v
        }
    }
}

/// `w`-vector at an arbitrary exponent on the incoming segment of `hi`.
pub fn w_vector_at(tree: &EwTree, hi: NodeId, e: &Rat) -> Vec<Rat> {
    let m = tree.branches().len();
    let mut v = vec![Rat::one()];
    for j in 0..m {
        let leaf = tree.leaf_of_branch(j);
        let mult = Rat::from_integer(tree.leaf_multiplicity(j).into());
        if tree.is_ancestor(hi, leaf) {
            v.push(mult * tree.contact_at(hi, e));
        } else {
            let tri = tree.tripod(hi, leaf);
            let c = tree.contact(tri).finite().cloned().unwrap();
            v.push(mult * c);
        }
    }
    v
}

fn primitive_form(w: &[Rat]) -> (IVec, Rat) {
    let mut lcm = Int::one();
    for x in w {
        lcm = lcm.lcm(x.denom());
    }
    let ints: IVec = w.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ivec_gcd(&ints);
    let prim: IVec = ints.iter().map(|x| x / &g).collect();
    let scale = Rat::new(lcm, g);
    (prim, scale)
}

fn ray_of(tree: &EwTree, id: NodeId) -> WRay {
    let label = match tree.node(id).kind {
        NodeKind::Root => RayLabel::Axis(0),
        NodeKind::Leaf(b) => RayLabel::Axis(b + 1),
        NodeKind::Interior => RayLabel::Point(id),
    };
    let w = w_vector(tree, id);
    let (primitive, scale) = primitive_form(&w);
    WRay { label, w, primitive, scale }
}

/// Assemble the tropical fan from the augmented marks of the tree and
/// validate it as a fan (rays pairwise distinct, cones meeting in faces).
pub fn build_trop_fan(tree: &EwTree) -> Result<TropFan> {
    let mut rays: Vec<WRay> = Vec::new();
    let mut ray_index: BTreeMap<NodeId, usize> = BTreeMap::new();
    for id in tree.augmented_marks() {
        let ray = ray_of(tree, id);
        // injectivity of P -> w^P
        for other in &rays {
            if other.w == ray.w {
                return Err(Error::NotAFan(format!(
                    "two marks share the ray {:?}",
                    ray.w.iter().map(rat_str).collect::<Vec<_>>()
                )));
            }
        }
        ray_index.insert(id, rays.len());
        rays.push(ray);
    }
    let mut cones = Vec::new();
    let mut segments = Vec::new();
    for (p1, p2) in tree.consecutive_augmented_pairs() {
        cones.push((ray_index[&p1], ray_index[&p2]));
        segments.push((p1, p2));
    }
    let fan = TropFan { rays, cones, segments };
    fan.validate(tree)?;
    Ok(fan)
}

impl TropFan {
    /// Lattice-level fan validation of the two-dimensional cones.
    pub fn validate(&self, _tree: &EwTree) -> Result<()> {
        let rank = self.rays.first().map(|r| r.primitive.len()).unwrap_or(0);
        let mut maximal = Vec::new();
        for (a, b) in &self.cones {
            maximal.push(Cone::new(
                vec![self.rays[*a].primitive.clone(), self.rays[*b].primitive.clone()],
                rank,
            )?);
        }
        Fan::from_cones(maximal, rank)?;
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rays.first().map(|r| r.primitive.len()).unwrap_or(0)
    }

    pub fn ray_by_label(&self, label: RayLabel) -> Option<&WRay> {
        self.rays.iter().find(|r| r.label == label)
    }

    /// JSON dump: rays with exact `w`, primitive coordinates and labels,
    /// plus cones as ray index pairs.
    pub fn to_json(&self, tree: &EwTree) -> serde_json::Value {
        let rays: Vec<serde_json::Value> = self
            .rays
            .iter()
            .map(|r| {
                serde_json::json!({
                    "label": label_string(tree, r.label),
                    "w": r.w.iter().map(rat_str).collect::<Vec<_>>(),
                    "primitive": r.primitive.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "scale": rat_str(&r.scale),
                })
            })
            .collect();
        serde_json::json!({
            "rank": self.rank(),
            "rays": rays,
            "cones": self.cones,
        })
    }
}

pub fn label_string(tree: &EwTree, label: RayLabel) -> String {
    match label {
        RayLabel::Axis(0) => "L0".into(),
        RayLabel::Axis(j) => tree.branches()[j - 1].name.clone(),
        RayLabel::Point(id) => format!(
            "P(e={})",
            tree.exponent(id).finite().map(rat_str).unwrap_or_else(|| "inf".into())
        ),
    }
}

/// The linear map of a consecutive augmented pair: integer rows
/// `(a_j, b_j)` with `nu_{E_P}(L_j) = a_j n_P + b_j m_P` for points on the
/// segment, together with the coprimality certificate of its 2x2 minors.
#[derive(Debug, Clone)]
pub struct SegmentLinearMap {
    pub p1: NodeId,
    pub p2: NodeId,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl SegmentLinearMap {
    pub fn apply(&self, p: &Int, q: &Int) -> IVec {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(aj, bj)| Int::from(*aj) * p + Int::from(*bj) * q)
            .collect()
    }

    /// Rank-two certificate: some 2x2 minor is nonzero and the gcd of all
    /// 2x2 minors is 1, so the map is a lattice isomorphism onto a direct
    /// factor.
    pub fn unimodularity_certificate(&self) -> bool {
        let mut g = Int::zero();
        for i in 0..self.a.len() {
            for j in i + 1..self.a.len() {
                let minor = Int::from(self.a[i]) * Int::from(self.b[j])
                    - Int::from(self.a[j]) * Int::from(self.b[i]);
                g = g.gcd(&minor);
            }
        }
        g.is_one()
    }
}

/// Compute the segment linear map of a consecutive augmented pair.
pub fn segment_linear_map(tree: &EwTree, p1: NodeId, p2: NodeId) -> Result<SegmentLinearMap> {
    let sc = tree.segment_cone(p1, p2)?;
    let q = sc.q;
    let m = tree.branches().len();
    // index of the segment (p1, p2]
    let seg_index = tree.index(p2);
    let cq = tree.contact(q).finite().cloned().expect("level bottom contact");
    let mut a = vec![seg_index];
    let mut b = vec![0i64];
    for j in 0..m {
        let leaf = tree.leaf_of_branch(j);
        let mult = tree.leaf_multiplicity(j);
        if tree.is_ancestor(p2, leaf) || p2 == leaf {
            // b_j = i(L_j) / i(P2), a_j = i(P2) i(L_j) c(Q)
            let idx_leaf = tree.index(leaf);
            if idx_leaf % seg_index != 0 {
                return Err(Error::InconsistentContacts(format!(
                    "leaf index {} not divisible by segment index {}",
                    idx_leaf, seg_index
                )));
            }
            b.push(idx_leaf / seg_index);
            let aj = Rat::from_integer((seg_index * mult).into()) * &cq;
            a.push(rat_to_int(&aj)?);
        } else {
            // constant side: a_j = i(L') i(L_j) c(<L0, L_j, L'>) via any
            // level witness; the tripod with p2 computes the same contact
            let tri = tree.tripod(p2, leaf);
            let c = tree.contact(tri).finite().cloned().unwrap();
            let aj = Rat::from_integer((seg_index * mult).into()) * c;
            a.push(rat_to_int(&aj)?);
            b.push(0);
        }
    }
    let map = SegmentLinearMap { p1, p2, a, b };
    // consistency: the map sends the segment cone rays onto the w-rays
    let img2 = map.apply(&sc.ray2.0, &sc.ray2.1);
    if crate::lattice::primitive(&img2)? != ray_of(tree, p2).primitive {
        return Err(Error::NotAFan(format!(
            "segment map image {:?} does not match the ray of the upper mark",
            img2
        )));
    }
    let img1 = map.apply(&sc.ray1.0, &sc.ray1.1);
    let expected1 = ray_of(tree, if p1 == q { q } else { p1 }).primitive;
    if crate::lattice::primitive(&img1)? != expected1 {
        return Err(Error::NotAFan(
            "segment map image does not match the ray of the lower mark".into(),
        ));
    }
    Ok(map)
}

fn rat_to_int(r: &Rat) -> Result<i64> {
    crate::rat::to_i64(r).ok_or_else(|| {
        Error::NotAFan(format!("segment map coefficient {} is not an integer", rat_str(r)))
    })
}

/// A ray of the regularized fan with its tree dictionary entry.
#[derive(Debug, Clone)]
pub struct RegRay {
    pub label: RayLabel,
    pub primitive: IVec,
    /// For interior points: the exact `w^P` and `i^+(P)`.
    pub w: Option<Vec<Rat>>,
    pub i_plus: Option<i64>,
}

/// Minimal regularization of the tropical fan: every two-dimensional cone is
/// subdivided by transporting the plane continued-fraction chain through the
/// segment linear map; the ray dictionary identifies each ray with a tree
/// point.
#[derive(Debug, Clone)]
pub struct RegularizedFan {
    pub rays: Vec<RegRay>,
    /// Adjacent ray pairs (the regular 2-cones), in chain order per segment.
    pub cones: Vec<(usize, usize)>,
}

impl RegularizedFan {
    pub fn ray_index(&self, v: &IVec) -> Option<usize> {
        self.rays.iter().position(|r| &r.primitive == v)
    }

    /// Exceptional rays: those labelling interior tree points.
    pub fn exceptional_rays(&self) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&i| matches!(self.rays[i].label, RayLabel::Point(_)))
            .collect()
    }

    /// Projectivization as a labelled graph: vertices = rays, edges = cones.
    pub fn graph_canonical_form(&self, tree: &EwTree, root_label: &str) -> String {
        let labels: Vec<Option<String>> = self
            .rays
            .iter()
            .map(|r| match r.label {
                RayLabel::Axis(0) => Some("L0".to_string()),
                RayLabel::Axis(j) => Some(tree.branches()[j - 1].name.clone()),
                RayLabel::Point(_) => None,
            })
            .collect();
        let root = self
            .rays
            .iter()
            .position(|r| match r.label {
                RayLabel::Axis(0) => root_label == "L0",
                RayLabel::Axis(j) => tree.branches()[j - 1].name == root_label,
                _ => false,
            })
            .expect("root label present");
        canonical_tree_form(&labels, &self.cones, root)
    }

    pub fn to_json(&self, tree: &EwTree) -> serde_json::Value {
        let rays: Vec<serde_json::Value> = self
            .rays
            .iter()
            .map(|r| {
                serde_json::json!({
                    "label": label_string(tree, r.label),
                    "primitive": r.primitive.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "w": r.w.as_ref().map(|w| w.iter().map(rat_str).collect::<Vec<_>>()),
                    "i_plus": r.i_plus,
                })
            })
            .collect();
        serde_json::json!({ "rays": rays, "cones": self.cones })
    }
}

/// Regularize the tropical fan minimally: each two-dimensional cone is
/// subdivided by the continued-fraction chain in its saturated plane
/// lattice. Every ray is identified with a tree point by solving the affine
/// relation between the exponent and the `w`-vector along the segment; the
/// corresponding tree nodes are materialized.
pub fn regularize_trop_fan(tree: &mut EwTree) -> Result<RegularizedFan> {
    let pairs = tree.consecutive_augmented_pairs();
    let rank = tree.branches().len() + 1;
    let mut rays: Vec<RegRay> = Vec::new();
    let mut cones: Vec<(usize, usize)> = Vec::new();
    let mut index_of: BTreeMap<IVec, usize> = BTreeMap::new();
    fn push_ray(
        rays: &mut Vec<RegRay>,
        index_of: &mut BTreeMap<IVec, usize>,
        ray: RegRay,
    ) -> usize {
        if let Some(&i) = index_of.get(&ray.primitive) {
            return i;
        }
        index_of.insert(ray.primitive.clone(), rays.len());
        rays.push(ray);
        rays.len() - 1
    }
    for (p1, p2) in pairs {
        let r1 = ray_of(tree, p1);
        let r2 = ray_of(tree, p2);
        let cone = Cone::new(vec![r1.primitive.clone(), r2.primitive.clone()], rank)?;
        let chain = crate::lattice::regularize_2d(&cone)?;
        // regularize_2d returns the chain between the cone's (sorted)
        // generators; orient it from p1 to p2
        let mut chain = chain;
        if chain.first() != Some(&r1.primitive) {
            chain.reverse();
        }
        debug_assert_eq!(chain.first(), Some(&r1.primitive));
        debug_assert_eq!(chain.last(), Some(&r2.primitive));
        let mut prev: Option<usize> = None;
        for v in &chain {
            let node = if v == &r1.primitive {
                p1
            } else if v == &r2.primitive {
                p2
            } else {
                materialize_ray_point(tree, p1, p2, v)?
            };
            let reg = match tree.node(node).kind {
                NodeKind::Root => RegRay {
                    label: RayLabel::Axis(0),
                    primitive: v.clone(),
                    w: None,
                    i_plus: None,
                },
                NodeKind::Leaf(b) => RegRay {
                    label: RayLabel::Axis(b + 1),
                    primitive: v.clone(),
                    w: None,
                    i_plus: None,
                },
                NodeKind::Interior => {
                    let w = w_vector(tree, node);
                    let r = tree.renorm(node)?;
                    RegRay {
                        label: RayLabel::Point(node),
                        primitive: v.clone(),
                        w: Some(w),
                        i_plus: Some(r.i_plus),
                    }
                }
            };
            let idx = push_ray(&mut rays, &mut index_of, reg);
            if let Some(pv) = prev {
                if pv != idx && !cones.contains(&(pv, idx)) {
                    cones.push((pv, idx));
                }
            }
            prev = Some(idx);
        }
    }
    Ok(RegularizedFan { rays, cones })
}

/// Identify (and materialize) the tree point whose `w`-vector spans the ray
/// `v` strictly inside the segment `(p1, p2)`.
fn materialize_ray_point(
    tree: &mut EwTree,
    p1: NodeId,
    p2: NodeId,
    v: &IVec,
) -> Result<NodeId> {
    // normalize: interior points have w_0 = 1
    if v[0].is_zero() {
        return Err(Error::NotAFan(format!(
            "interior ray {:?} has vanishing first coordinate",
            v
        )));
    }
    let w_target: Vec<Rat> = v
        .iter()
        .map(|x| Rat::new(x.clone(), v[0].clone()))
        .collect();
    // solve for the exponent along a moving coordinate: any leaf above p2
    // (or the segment's own leaf) has slope mult/index on the segment
    let seg_index = tree.index(p2);
    let (j, leaf) = (0..tree.branches().len())
        .map(|j| (j, tree.leaf_of_branch(j)))
        .find(|(_, leaf)| tree.is_ancestor(p2, *leaf) || p2 == *leaf)
        .ok_or_else(|| Error::InconsistentContacts("segment without a leaf above".into()))?;
    let mult = tree.leaf_multiplicity(j);
    // invert c along the segment: c(e) = c(p1) + (e - e(p1)) / seg_index
    let e1 = tree.exponent(p1).finite().cloned().ok_or_else(|| {
        Error::InconsistentContacts("segment anchor has no finite exponent".into())
    })?;
    let c1 = tree.contact(p1).finite().cloned().unwrap();
    let target_c = &w_target[j + 1] / Rat::from_integer(mult.into());
    let e = e1 + (target_c - c1) * Rat::from_integer(seg_index.into());
    let node = tree.point_on_path(leaf, &e)?;
    // validate the whole vector
    let w = w_vector(tree, node);
    if w != w_target {
        return Err(Error::NotAFan(format!(
            "ray {:?} does not lie on the tree segment ({} vs {})",
            v,
            w.iter().map(rat_str).collect::<Vec<_>>().join(","),
            w_target.iter().map(rat_str).collect::<Vec<_>>().join(","),
        )));
    }
    Ok(node)
}

/// Graph isomorphism between the projectivized regularized fan and the dual
/// graph of the total transform, preserving branch-leaf labels.
pub fn fan_matches_dual_graph(tree: &mut EwTree) -> Result<bool> {
    let reg = regularize_trop_fan(tree)?;
    let graph = dual_graph(tree)?;
    let fan_form = reg.graph_canonical_form(tree, "L0");
    // dual graph canonical form with unlabelled divisors, restricted to the
    // tree curve's vertices (auxiliary attachments excluded)
    let branch_names: Vec<String> =
        tree.branches().iter().map(|b| b.name.clone()).collect();
    let keep: Vec<bool> = graph
        .labels
        .iter()
        .enumerate()
        .map(|(v, l)| {
            graph.divisor_node[v].is_some() || l == "L0" || branch_names.contains(l)
        })
        .collect();
    let mut remap = vec![usize::MAX; graph.labels.len()];
    let mut labels: Vec<Option<String>> = Vec::new();
    for v in 0..graph.labels.len() {
        if keep[v] {
            remap[v] = labels.len();
            labels.push(if graph.divisor_node[v].is_some() {
                None
            } else {
                Some(graph.labels[v].clone())
            });
        }
    }
    let edges: Vec<(usize, usize)> = graph
        .edges
        .iter()
        .filter(|(a, b)| keep[*a] && keep[*b])
        .map(|(a, b)| (remap[*a], remap[*b]))
        .collect();
    let root = labels.iter().position(|l| l.as_deref() == Some("L0")).unwrap();
    let graph_form = canonical_tree_form(&labels, &edges, root);
    Ok(fan_form == graph_form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eggers::tests::{branch, find_marked, five_branch_tree};
    use crate::rat::rat;

    fn rv(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|(n, d)| rat(*n, *d)).collect()
    }

    #[test]
    fn w_vectors_on_five_branch_fixture() {
        let d = five_branch_tree();
        let tree = EwTree::build(&d, &[]).unwrap();
        let p1 = find_marked(&tree, (3, 2))[0];
        let p2 = find_marked(&tree, (5, 3))[0];
        let p3 = find_marked(&tree, (5, 2))[0];
        let p4 = find_marked(&tree, (7, 4))[0];
        assert_eq!(
            w_vector(&tree, p1),
            rv(&[(1, 1), (3, 2), (9, 2), (9, 1), (3, 1), (6, 1)])
        );
        assert_eq!(
            w_vector(&tree, p2),
            rv(&[(1, 1), (5, 3), (5, 1), (10, 1), (3, 1), (6, 1)])
        );
        // the formula gives (1, 5/3, 16/3, 35/3, 3, 6) at P3: the tripod of
        // P3 with L2 sits at the ramification point of exponent 2, with
        // contact 16/9, and P3 itself has contact 35/18
        assert_eq!(
            w_vector(&tree, p3),
            rv(&[(1, 1), (5, 3), (16, 3), (35, 3), (3, 1), (6, 1)])
        );
        assert_eq!(
            w_vector(&tree, p4),
            rv(&[(1, 1), (3, 2), (9, 2), (9, 1), (13, 4), (13, 2)])
        );
        // leaf rays are canonical basis vectors
        let l2 = tree.leaf_of_branch(1);
        let w = w_vector(&tree, l2);
        assert_eq!(w[2], rat(1, 1));
        assert!(w.iter().enumerate().all(|(i, x)| i == 2 || x.is_zero()));
    }

    #[test]
    fn trop_fan_builds_and_validates() {
        let d = five_branch_tree();
        let tree = EwTree::build(&d, &[]).unwrap();
        let fan = build_trop_fan(&tree).unwrap();
        // rays include all four interior marks plus the six axes
        let interior = fan
            .rays
            .iter()
            .filter(|r| matches!(r.label, RayLabel::Point(_)))
            .count();
        assert_eq!(interior, 5); // P1..P4 and the L2/L3 ramification at e=2
        let axes =
            fan.rays.iter().filter(|r| matches!(r.label, RayLabel::Axis(_))).count();
        assert_eq!(axes, 6);
    }

    #[test]
    fn sampled_point_is_convex_combination() {
        let d = five_branch_tree();
        let tree = EwTree::build(&d, &[]).unwrap();
        // segment (P1, P4): sample at e = 13/8 between 3/2 and 7/4
        let p1 = find_marked(&tree, (3, 2))[0];
        let p4 = find_marked(&tree, (7, 4))[0];
        let e = rat(13, 8);
        let w = w_vector_at(&tree, p4, &e);
        let w1 = w_vector(&tree, p1);
        let w4 = w_vector(&tree, p4);
        let s = (e - rat(3, 2)) / (rat(7, 4) - rat(3, 2));
        for j in 0..w.len() {
            let expect = (Rat::one() - &s) * &w1[j] + &s * &w4[j];
            assert_eq!(w[j], expect, "coordinate {}", j);
        }
    }

    #[test]
    fn segment_maps_unimodular_on_contact_configurations() {
        // cross plus cusp is a maximal contact configuration: every segment
        // map is a lattice isomorphism onto its image
        let d = vec![branch("L1", 1, &[]), branch("L2", 2, &[(3, 1, 1)])];
        let tree = EwTree::build(&d, &[]).unwrap();
        for (p1, p2) in tree.consecutive_augmented_pairs() {
            let map = segment_linear_map(&tree, p1, p2).unwrap();
            assert!(map.unimodularity_certificate());
        }
    }

    #[test]
    fn segment_maps_endpoint_consistency_everywhere() {
        // maps exist and hit the endpoint rays on any tree; unimodularity
        // can fail off maximal-contact configurations (here: the two
        // segments along the branch with exponents (5/3, 2, 5/2), whose
        // index levels have no witness leaf in the configuration)
        let d = five_branch_tree();
        let tree = EwTree::build(&d, &[]).unwrap();
        let mut non_unimodular = 0;
        for (p1, p2) in tree.consecutive_augmented_pairs() {
            let map = segment_linear_map(&tree, p1, p2).unwrap();
            if !map.unimodularity_certificate() {
                non_unimodular += 1;
            }
        }
        assert_eq!(non_unimodular, 2);
    }

    #[test]
    fn segment_map_of_cross() {
        // two smooth transversal branches: trivial segments with identity
        // style maps
        let d = vec![branch("L1", 1, &[])];
        let tree = EwTree::build(&d, &[]).unwrap();
        let pairs = tree.consecutive_augmented_pairs();
        assert_eq!(pairs.len(), 1);
        let map = segment_linear_map(&tree, pairs[0].0, pairs[0].1).unwrap();
        assert_eq!(map.a, vec![1, 0]);
        assert_eq!(map.b, vec![0, 1]);
    }

    #[test]
    fn regularized_fan_matches_dual_graph_on_contact_configuration() {
        let d = vec![branch("L1", 1, &[]), branch("L2", 2, &[(3, 1, 1)])];
        let mut tree = EwTree::build(&d, &[]).unwrap();
        assert!(fan_matches_dual_graph(&mut tree).unwrap());
    }

    #[test]
    fn five_branch_fixture_has_one_extra_regularization_ray() {
        // off maximal-contact configurations the lattice-minimal
        // regularization can be strictly finer than the resolution chain:
        // here exactly one extra ray appears (at exponent 13/6 on the
        // segment between the ramification at 2 and the mark at 5/2)
        let d = five_branch_tree();
        let mut tree = EwTree::build(&d, &[]).unwrap();
        let reg = regularize_trop_fan(&mut tree).unwrap();
        let mut tree2 = EwTree::build(&d, &[]).unwrap();
        let divisors = tree2.divisors().unwrap();
        assert_eq!(reg.exceptional_rays().len(), divisors.len() + 1);
        assert!(!fan_matches_dual_graph(&mut EwTree::build(&d, &[]).unwrap()).unwrap());
        let extra = reg
            .rays
            .iter()
            .find(|r| r.primitive == crate::lattice::ivec(&[3, 5, 16, 33, 9, 18]))
            .expect("extra ray present");
        match extra.label {
            RayLabel::Point(id) => {
                assert_eq!(tree.exponent(id).finite(), Some(&rat(13, 6)));
            }
            _ => panic!("extra ray should be an interior point"),
        }
    }

    #[test]
    fn regularized_rays_are_primitive_iplus_w_on_contact_configuration() {
        let d = vec![branch("L1", 1, &[]), branch("L2", 2, &[(3, 1, 1)])];
        let mut tree = EwTree::build(&d, &[]).unwrap();
        let reg = regularize_trop_fan(&mut tree).unwrap();
        for ray in &reg.rays {
            if let (Some(w), Some(ip)) = (&ray.w, ray.i_plus) {
                let scaled: Vec<Rat> =
                    w.iter().map(|x| x * Rat::from_integer(ip.into())).collect();
                assert!(scaled.iter().all(crate::rat::is_integer));
                let ints: IVec = scaled.iter().map(|x| x.numer().clone()).collect();
                assert_eq!(ivec_gcd(&ints), Int::one(), "ray {:?} not primitive", ints);
                assert_eq!(ints, ray.primitive);
            }
        }
        // renormalized exponents of distinguished points stay coprime
        for id in tree.node_ids() {
            if matches!(tree.node(id).kind, NodeKind::Interior) {
                let r = tree.renorm(id).unwrap();
                assert_eq!(crate::rat::gcd_i64(r.n, r.m), 1);
                assert_eq!(r.i_plus, tree.index(id) * r.n);
            }
        }
    }

    #[test]
    fn w_slope_is_nonzero_on_every_segment() {
        // rationality transfer: w is affine in the exponent with nonzero
        // slope in some coordinate, so irrational exponents give irrational
        // vectors
        let d = five_branch_tree();
        let tree = EwTree::build(&d, &[]).unwrap();
        for (p1, p2) in tree.consecutive_augmented_pairs() {
            if matches!(tree.node(p2).kind, NodeKind::Leaf(_)) {
                continue;
            }
            let w1 = w_vector(&tree, p1);
            let w2 = w_vector(&tree, p2);
            assert!(w1.iter().zip(&w2).any(|(a, b)| a != b));
        }
    }
}
