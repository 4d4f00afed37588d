//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Every tolerance here is exact equality of integers or rationals; timing
//! budgets are asserted with wall clocks.

use std::time::Instant;

use torific::branch::{
    branches_from_equation, defining_poly_from_param, intersection_multiplicity, BranchData,
    Intersection, PuiseuxParam,
};
use torific::contact::{certify_sequence, maximal_contact_sequence};
use torific::eggers::{EwTree, NodeKind};
use torific::fixtures;
use torific::lattice::{ivec, ChartBasis};
use torific::mpoly::MPoly;
use torific::rat::{rat, Rat};
use torific::resolution::{
    build_embedding_ideal, chart_check_plane, initial_form_certificate, space_curve_resolve,
    SpaceCurveInput,
};
use torific::series::{Series, Trunc};
use torific::tropical::{
    fan_matches_dual_graph, regularize_trop_fan, w_vector,
};

fn xy() -> (MPoly, MPoly) {
    (MPoly::var(2, 0), MPoly::var(2, 1))
}

fn l1_zy() -> BranchData {
    BranchData::from_param(
        "L1",
        PuiseuxParam::new(1, Series::zero("t", Trunc::Exact)).unwrap(),
        Some(MPoly::var(2, 1)),
    )
    .unwrap()
}

/// Marked interior point of the tree at the given exponent.
fn marked_at(tree: &EwTree, e: (i64, i64)) -> usize {
    let hits: Vec<usize> = tree
        .node_ids()
        .filter(|&id| {
            tree.node(id).marked
                && matches!(tree.node(id).kind, NodeKind::Interior)
                && tree.exponent(id).finite() == Some(&rat(e.0, e.1))
        })
        .collect();
    assert_eq!(hits.len(), 1, "unique marked point at {}/{}", e.0, e.1);
    hits[0]
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_1_semigroup_of_the_degree_eight_branch() {
    let start = Instant::now();
    let f = fixtures::quartic_semigroup_curve();
    let branches = branches_from_equation("C", &f, 24).unwrap();
    assert_eq!(branches.len(), 1);
    assert_eq!(branches[0].char_exponents(), &[8, 12, 14, 15]);
    assert_eq!(branches[0].semigroup().generators(), &[8, 12, 26, 53]);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {:?}", elapsed);
    println!("criterion 1 (semigroup (8,12,26,53) in {:?}): PASS", elapsed);
}

#[test]
fn criterion_2_contact_complexities_and_index_plateaus() {
    let start = Instant::now();
    let d = fixtures::five_branch_configuration();
    let tree = EwTree::build(&d, &[]).unwrap();
    let p1 = marked_at(&tree, (3, 2));
    let p2 = marked_at(&tree, (5, 3));
    let p3 = marked_at(&tree, (5, 2));
    let p4 = marked_at(&tree, (7, 4));
    assert_eq!(tree.contact(p1).finite(), Some(&rat(3, 2)));
    assert_eq!(tree.contact(p2).finite(), Some(&rat(5, 3)));
    assert_eq!(tree.contact(p3).finite(), Some(&rat(35, 18)));
    assert_eq!(tree.contact(p4).finite(), Some(&rat(13, 8)));
    // index plateaus on the segments arriving at the marked points and
    // leaves: 1 below the first marks, then 2/4 on one side, 3/6 on the
    // other
    assert_eq!(tree.index(p1), 1);
    assert_eq!(tree.index(p2), 1);
    assert_eq!(tree.index(p3), 3);
    assert_eq!(tree.index(p4), 2);
    assert_eq!(tree.index(tree.leaf_of_branch(0)), 1); // L1
    assert_eq!(tree.index(tree.leaf_of_branch(1)), 3); // L2
    assert_eq!(tree.index(tree.leaf_of_branch(2)), 6); // L3
    assert_eq!(tree.index(tree.leaf_of_branch(3)), 2); // L4
    assert_eq!(tree.index(tree.leaf_of_branch(4)), 4); // L5
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {:?}", elapsed);
    println!("criterion 2 (contact values and plateaus in {:?}): PASS", elapsed);
}

#[test]
fn criterion_3_w_vectors_of_the_marked_points() {
    let d = fixtures::five_branch_configuration();
    let tree = EwTree::build(&d, &[]).unwrap();
    let rv = |v: &[(i64, i64)]| -> Vec<Rat> {
        v.iter().map(|(n, m)| rat(*n, *m)).collect()
    };
    let w1 = w_vector(&tree, marked_at(&tree, (3, 2)));
    let w2 = w_vector(&tree, marked_at(&tree, (5, 3)));
    let w3 = w_vector(&tree, marked_at(&tree, (5, 2)));
    let w4 = w_vector(&tree, marked_at(&tree, (7, 4)));
    assert_eq!(w1, rv(&[(1, 1), (3, 2), (9, 2), (9, 1), (3, 1), (6, 1)]));
    assert_eq!(w2, rv(&[(1, 1), (5, 3), (5, 1), (10, 1), (3, 1), (6, 1)]));
    assert_eq!(w4, rv(&[(1, 1), (3, 2), (9, 2), (9, 1), (13, 4), (13, 2)]));
    // The reference row for the third point reads (1, 5/3, 25/6, 25/3, 3, 6).
    // Those two middle coordinates contradict the defining identity
    // w_j = (L0 . Lj) c(<L0, P, Lj>) together with the contact values pinned
    // by criterion 2: c(P3) = 35/18 forces w_3 = 6 * 35/18 = 35/3, and the
    // ramification point at exponent 2 (contact 16/9) forces w_2 = 16/3.
    // The computation follows the identity, so this assertion documents the
    // discrepancy; see the identity check below.
    for (j, lj) in [(1usize, 0usize), (2, 1), (3, 2), (4, 3), (5, 4)] {
        let tri = tree.tripod(marked_at(&tree, (5, 2)), tree.leaf_of_branch(lj));
        let c = tree.contact(tri).finite().cloned().unwrap();
        let mult = Rat::from_integer(tree.leaf_multiplicity(lj).into());
        assert_eq!(w3[j], mult * c, "identity at coordinate {}", j);
    }
    assert_eq!(
        w3,
        rv(&[(1, 1), (5, 3), (25, 6), (25, 3), (3, 1), (6, 1)]),
        "third w-vector differs from the reference row"
    );
    println!("criterion 3 (w-vectors): PASS");
}

#[test]
fn criterion_4_resolution_chart_of_the_degree_eight_branch() {
    let start = Instant::now();
    let (x, y) = xy();
    let f = fixtures::quartic_semigroup_curve();
    let curve = branches_from_equation("C", &f, 72).unwrap();
    // the three-function sequence (X, Y, (Y^2-X^3)^2 - X^5 Y)
    let inner = y.pow(2).sub(&x.pow(3)).pow(2).sub(&x.pow(5).mul(&y));
    let l2 = branches_from_equation("L2", &inner, 128).unwrap().remove(0);
    let seq = vec![BranchData::x_axis(), l1_zy(), l2];
    let generators = torific::resolution::simple_embedding_ideal(&seq).unwrap();
    let basis =
        ChartBasis::new(vec![ivec(&[1, 1, 4]), ivec(&[2, 3, 13]), ivec(&[8, 12, 53])]).unwrap();
    assert_eq!(basis.det(), 1.into());
    let report = chart_check_plane(&seq, &curve, &generators, &basis).unwrap();
    assert!(report.verdict);
    let b = &report.branches[0];
    // the ray sits in the last basis slot: orders are (0, 0, 1) there,
    // i.e. (1, 0, ..., 0) with the ray coordinate first
    assert_eq!(b.ray_index, 2);
    assert_eq!(b.u_orders, vec![0, 0, 1]);
    assert_eq!(b.u_leading, vec![rat(1, 1), rat(1, 1), rat(1, 1)]);
    // ord(U_1 . arc - 1) = 2
    assert_eq!(b.u_next_order[0], Some(2));
    assert!(b.u_next_order[1].map_or(true, |o| o >= 1));
    // strict transform of the surface generator:
    // U2 U3^5 - (1 - U1)^2 + U1^2 U2 U3^4
    assert_eq!(report.surface_strict.len(), 1);
    let u = |i: usize| MPoly::var(3, i);
    let one = MPoly::one(3);
    let expected = u(1)
        .mul(&u(2).pow(5))
        .sub(&one.sub(&u(0)).pow(2))
        .add(&u(0).pow(2).mul(&u(1)).mul(&u(2).pow(4)))
        .flatten_exact()
        .unwrap();
    let got = report.surface_strict[0].flatten_exact().unwrap();
    assert!(
        got == expected || got == expected.neg(),
        "strict transform {:?} is not the expected shape",
        got
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {:?}", elapsed);
    println!("criterion 4 (chart of the degree-eight branch in {:?}): PASS", elapsed);
}

#[test]
fn criterion_5_two_branch_chart_and_excluded_coefficients() {
    let (x, y) = xy();
    let curve = fixtures::two_cusps_branches().unwrap();
    // the sequence with the coefficient the search selects
    let analysis = maximal_contact_sequence(&curve).unwrap();
    assert!(analysis.certificate.passes());
    let values = torific::contact::predicted_order_vector(&curve, &analysis.sequence, 0)
        .unwrap();
    assert_eq!(values, vec![2, 3, 8]);
    let ideal = {
        let seq = analysis.sequence.clone();
        build_embedding_ideal(&seq, 2, &values).unwrap()
    };
    let basis =
        ChartBasis::new(vec![ivec(&[1, 1, 2]), ivec(&[2, 3, 7]), ivec(&[2, 3, 8])]).unwrap();
    let report = chart_check_plane(&analysis.sequence, &curve, &ideal.generators, &basis)
        .unwrap();
    assert!(report.verdict);
    assert!(report.attachments_distinct);
    // both branches attach at distinct torus points with parameters 1/2, 1
    let mut params: Vec<Rat> = report
        .branches
        .iter()
        .map(|b| b.u_leading[1].clone())
        .collect();
    params.sort();
    assert_eq!(params, vec![rat(1, 2), rat(1, 1)]);

    // the deep slot family is Y^2 - X^3 + a X^4 and the search excluded 0
    let deep = analysis
        .slots
        .iter()
        .find(|s| s.base_poly.degree(1) == Some(2))
        .unwrap();
    assert_eq!(deep.monomial, x.pow(4));
    assert!(deep.excluded.iter().any(|(a, _)| a == &rat(0, 1)));
    assert_eq!(deep.chosen, Some(rat(1, 1)));
    // the certificate excludes exactly a = 0 and a = -1 among small values
    for (a, expect) in [(0i64, false), (-1, false), (1, true), (2, true), (-2, true)] {
        let h = y.pow(2).sub(&x.pow(3)).add(&x.pow(4).scale(&rat(a, 1)));
        let l2 = branches_from_equation("L2", &h, 64).unwrap().remove(0);
        let seq = vec![BranchData::x_axis(), l1_zy(), l2];
        let pass = match certify_sequence(&curve, &seq) {
            Ok(cert) => cert.passes(),
            Err(_) => false,
        };
        assert_eq!(pass, expect, "coefficient {}", a);
    }
    println!("criterion 5 (distinct attachments 1/2 and 1; exclusions {{0,-1}}): PASS");
}

#[test]
fn criterion_6_divisor_counts_and_graph_isomorphism() {
    // five exceptional rays for the two-cusp curve
    let curve = fixtures::two_cusps_branches().unwrap();
    let analysis = maximal_contact_sequence(&curve).unwrap();
    let d: Vec<BranchData> = analysis.sequence[1..].to_vec();
    let mut tree = EwTree::build(&d, &curve).unwrap();
    let reg = regularize_trop_fan(&mut tree).unwrap();
    assert_eq!(reg.exceptional_rays().len(), 5, "five exceptional rays");
    let mut tree2 = EwTree::build(&d, &curve).unwrap();
    assert!(fan_matches_dual_graph(&mut tree2).unwrap());

    // seven for the second pair
    let curve = fixtures::seven_divisor_branches().unwrap();
    let analysis = maximal_contact_sequence(&curve).unwrap();
    let d: Vec<BranchData> = analysis.sequence[1..].to_vec();
    let mut tree = EwTree::build(&d, &curve).unwrap();
    let reg = regularize_trop_fan(&mut tree).unwrap();
    assert_eq!(reg.exceptional_rays().len(), 7, "seven exceptional rays");
    let mut tree2 = EwTree::build(&d, &curve).unwrap();
    assert!(fan_matches_dual_graph(&mut tree2).unwrap());
    println!("criterion 6 (5 and 7 exceptional rays, graphs isomorphic): PASS");
}

#[test]
fn criterion_7_space_curve_fixture() {
    let mono = |e: i64| Series::monomial("t", e, rat(1, 1), Trunc::Exact);
    let input = SpaceCurveInput::new(vec![
        vec![mono(4), mono(6), mono(13)],
        vec![mono(2), mono(3), Series::zero("t", Trunc::Exact)],
    ])
    .unwrap();
    let report = space_curve_resolve(&input, false).unwrap();
    assert!(report.resolved);
    assert!(report.branches.iter().all(|b| b.resolved));
    assert_eq!(report.branches[1].zero_coords, vec![2]);
    assert_eq!(report.branches[1].reduced_ray, ivec(&[2, 3]));
    let (_, star) = &report.star_rays[0];
    assert!(star.contains(&ivec(&[2, 3])));
    println!("criterion 7 (space curve pair resolved, star ray (2,3)): PASS");
}

// ---------------------------------------------------------------------------
// criterion 8: property suites on randomized desk-scale branches

/// Sequence of semiroot truncations of a branch (pure, unperturbed), used
/// as the maximal contact configuration of a single random branch.
fn semiroot_sequence(b: &BranchData) -> Vec<BranchData> {
    let param = b.param().unwrap();
    let n = param.ramification();
    let chars = b.char_exponents();
    let mut seq = vec![BranchData::x_axis()];
    let mut ram = 1i64;
    for (k, &c) in chars.iter().enumerate().skip(1) {
        let e = rat(c, n);
        let trunc = param.truncate_below(&e);
        // reparametrize to the coarser grid of the semiroot
        let mut zeta = Series::zero("t", Trunc::Exact);
        for (ex, co) in trunc.terms() {
            assert_eq!((ex * ram) % n, 0);
            zeta.set_coeff(ex * ram / n, co.clone());
        }
        let p = PuiseuxParam::new(ram, zeta).unwrap();
        let eq = defining_poly_from_param(&p).unwrap();
        seq.push(
            BranchData::from_param(&format!("L{}", k), p, Some(eq)).unwrap(),
        );
        // update the ramification of the next semiroot
        ram = n / torific::rat::gcd_i64(
            chars.iter().take(k + 1).fold(n, |g, &x| torific::rat::gcd_i64(g, x)),
            n,
        );
        let mut g = n;
        for &x in chars.iter().take(k + 1).skip(1) {
            g = torific::rat::gcd_i64(g, x);
        }
        ram = n / g;
    }
    seq
}

#[test]
fn criterion_8_property_suites() {
    let start = Instant::now();
    suite_a_intersection_formula();
    suite_b_adic_reconstruction();
    suite_c_regularization_minimality();
    suite_d_primitive_rays();
    suite_e_initial_shapes();
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {:?}", elapsed);
    println!("criterion 8 (property suites in {:?}): PASS", elapsed);
}

/// (a) tree intersection formula vs the substitution oracle.
fn suite_a_intersection_formula() {
    let mut rng = fixtures::Rng::new(1001);
    let mut tested = 0;
    while tested < 20 {
        let a = fixtures::random_branch(&mut rng, 200, "A");
        let mut b = fixtures::random_branch(&mut rng, 200, "B");
        if torific::branch::same_branch(&a, &b) {
            continue;
        }
        b = b.renamed("B");
        let Ok(tree) = EwTree::build(&[a.clone(), b.clone()], &[]) else { continue };
        let tri = tree.tripod(tree.leaf_of_branch(0), tree.leaf_of_branch(1));
        let c = tree.contact(tri).finite().cloned().unwrap();
        let predicted = Rat::from_integer(
            (tree.leaf_multiplicity(0) * tree.leaf_multiplicity(1)).into(),
        ) * c;
        let actual = match intersection_multiplicity(&a, &b).unwrap() {
            Intersection::Finite(v) => Rat::from_integer(v.into()),
            Intersection::Infinite => panic!("distinct branches"),
        };
        assert_eq!(predicted, actual, "{} vs {}", a.name, b.name);
        tested += 1;
    }
}

/// (b) adic expansion reconstruction and digit uniqueness.
fn suite_b_adic_reconstruction() {
    let mut rng = fixtures::Rng::new(2002);
    for _ in 0..20 {
        let b = fixtures::random_branch(&mut rng, 120, "A");
        if b.char_exponents().len() < 2 {
            continue;
        }
        let seq = semiroot_sequence(&b);
        let base: Vec<MPoly> =
            seq.iter().skip(1).map(|l| l.equation().unwrap().clone()).collect();
        // random polynomial from random digits
        let mut f = MPoly::zero(2);
        for _ in 0..3 {
            let mut term = MPoly::constant(2, rng.coeff());
            let xexp = rng.range(0, 4);
            term = term.mul(&MPoly::monomial(2, vec![xexp, 0], rat(1, 1)));
            for (j, bp) in base.iter().enumerate() {
                let bound = if j + 1 < base.len() {
                    (base[j + 1].degree(1).unwrap() / bp.degree(1).unwrap()) - 1
                } else {
                    2
                };
                let d = rng.range(0, bound.max(0));
                if d > 0 {
                    term = term.mul(&bp.pow(d as u32));
                }
            }
            f = f.add(&term);
        }
        if f.is_zero() {
            continue;
        }
        let exp = torific::resolution::adic_expansion(&f, &base).unwrap();
        assert!(exp.digits_in_bounds());
        assert_eq!(
            exp.reconstruct().flatten_exact().unwrap(),
            f.flatten_exact().unwrap()
        );
        // uniqueness: expanding the reconstruction of a digit subset gives
        // back exactly those digits
        if let Some((digits, coef)) = exp.terms.iter().next() {
            let mut part = MPoly::zero(2);
            part.add_term(&[0, 0], coef.clone());
            for (j, d) in digits.iter().enumerate() {
                if *d > 0 {
                    part = part.mul(&base[j].pow(*d as u32));
                }
            }
            let re = torific::resolution::adic_expansion(&part, &base).unwrap();
            assert_eq!(re.terms.len(), 1);
            assert_eq!(re.terms.keys().next().unwrap(), digits);
        }
    }
}

/// (c) 2D regularization: unimodular steps and brute-force minimality.
fn suite_c_regularization_minimality() {
    let mut rng = fixtures::Rng::new(3003);
    let det2 = |a: (i64, i64), b: (i64, i64)| a.0 * b.1 - a.1 * b.0;
    let mut tested = 0;
    while tested < 30 {
        let a = (rng.range(0, 12), rng.range(0, 12));
        let b = (rng.range(0, 12), rng.range(0, 12));
        if det2(a, b) <= 0 || torific::rat::gcd_i64(a.0, a.1) != 1
            || torific::rat::gcd_i64(b.0, b.1) != 1
        {
            continue;
        }
        let chain = torific::lattice::hj_chain(
            &(a.0.into(), a.1.into()),
            &(b.0.into(), b.1.into()),
        )
        .unwrap();
        let as_i64: Vec<(i64, i64)> = chain
            .iter()
            .map(|(x, y)| (i64::try_from(x).unwrap(), i64::try_from(y).unwrap()))
            .collect();
        for w in as_i64.windows(2) {
            assert_eq!(det2(w[0], w[1]), 1);
        }
        // minimality: removing an interior ray breaks unimodularity
        for k in 1..as_i64.len().saturating_sub(1) {
            assert_ne!(det2(as_i64[k - 1], as_i64[k + 1]), 1);
        }
        // brute-force hull oracle on small cones
        if a.0.max(a.1).max(b.0).max(b.1) <= 7 {
            let inside = |p: (i64, i64)| det2(a, p) >= 0 && det2(p, b) >= 0;
            let bound = 40;
            let mut pts = Vec::new();
            for x in -bound..=bound {
                for y in -bound..=bound {
                    if (x, y) != (0, 0) && inside((x, y)) {
                        pts.push((x, y));
                    }
                }
            }
            // Hilbert-style oracle: a primitive point is a hull vertex iff
            // it is not the sum of two cone points
            let mut oracle: Vec<(i64, i64)> = pts
                .iter()
                .copied()
                .filter(|p| torific::rat::gcd_i64(p.0, p.1) == 1)
                .filter(|p| {
                    !pts.iter().any(|u| {
                        let v = (p.0 - u.0, p.1 - u.1);
                        v != (0, 0) && inside(v)
                    })
                })
                .collect();
            oracle.sort_by_key(|p| (det2(a, *p), p.0));
            let mut got = as_i64.clone();
            got.sort_by_key(|p| (det2(a, *p), p.0));
            assert_eq!(got, oracle, "cone ({:?}, {:?})", a, b);
        }
        tested += 1;
    }
}

/// (d) primitive integer rays `i^+(P) w^P` at every distinguished point.
fn suite_d_primitive_rays() {
    let mut rng = fixtures::Rng::new(4004);
    let mut tested = 0;
    while tested < 20 {
        let b = fixtures::random_branch(&mut rng, 200, "C1");
        if b.char_exponents().len() < 2 {
            continue;
        }
        let seq = semiroot_sequence(&b);
        let d: Vec<BranchData> = seq[1..].to_vec();
        if d.is_empty() {
            continue;
        }
        let mut tree = EwTree::build(&d, &[b.clone()]).unwrap();
        let divisors = tree.divisors().unwrap();
        for (node, r) in divisors {
            let w = w_vector(&tree, node);
            let scaled: Vec<Rat> = w
                .iter()
                .map(|x| x * Rat::from_integer(r.i_plus.into()))
                .collect();
            assert!(scaled.iter().all(torific::rat::is_integer), "integrality");
            let ints: Vec<torific::rat::Int> =
                scaled.iter().map(|x| x.numer().clone()).collect();
            assert_eq!(
                torific::lattice::ivec_gcd(&ints),
                1.into(),
                "primitivity at e = {}",
                tree.exponent(node)
            );
        }
        tested += 1;
    }
}

/// (e) initial-form shape certificates at every distinguished rational
/// point of single-branch configurations.
fn suite_e_initial_shapes() {
    let mut rng = fixtures::Rng::new(5005);
    let mut tested = 0;
    while tested < 12 {
        let b = fixtures::random_branch(&mut rng, 150, "C1");
        if b.char_exponents().len() < 3 {
            continue;
        }
        let seq = semiroot_sequence(&b);
        let curve = vec![b.clone()];
        let cert = certify_sequence(&curve, &seq).unwrap();
        if !cert.passes() {
            // pure truncations can collide with the branch itself when the
            // tail vanishes; skip those rare draws
            continue;
        }
        let d: Vec<BranchData> = seq[1..].to_vec();
        let mut tree = EwTree::build(&d, &curve).unwrap();
        let divisors = tree.divisors().unwrap();
        for (node, r) in divisors {
            let w = w_vector(&tree, node);
            let values: Vec<i64> = w
                .iter()
                .map(|x| {
                    torific::rat::to_i64(&(x * Rat::from_integer(r.i_plus.into()))).unwrap()
                })
                .collect();
            // order the sequence by contact with the point and build the
            // adapted ideal there
            let Some((perm, g)) = prefix_by_contact(&tree, node, seq.len()) else {
                continue;
            };
            let pseq: Vec<BranchData> = perm.iter().map(|&i| seq[i].clone()).collect();
            let pvals: Vec<i64> = perm.iter().map(|&i| values[i]).collect();
            let Ok(ideal) = build_embedding_ideal(&pseq, g, &pvals) else {
                continue;
            };
            let w_rat: Vec<Rat> = pvals
                .iter()
                .map(|v| Rat::new((*v).into(), pvals[0].into()))
                .collect();
            let cert = initial_form_certificate(&ideal, &w_rat).unwrap();
            assert!(cert.nondegenerate);
        }
        tested += 1;
    }
}

/// Relabelling of the sequence adapted to a tree point: curves ordered by
/// the exponent of their tripod with the point, one witness per level.
fn prefix_by_contact(
    tree: &EwTree,
    node: usize,
    seq_len: usize,
) -> Option<(Vec<usize>, usize)> {
    let m = seq_len - 1;
    let mut kappas: Vec<(usize, Rat)> = Vec::new();
    for i in 0..m {
        let leaf = tree.leaf_of_branch(i);
        let tri = tree.tripod(node, leaf);
        let mut e = tree.exponent(tri).finite().cloned()?;
        // a curve through the point itself witnesses the top level
        if tree.is_ancestor(node, leaf) {
            e = tree.exponent(node).finite().cloned()?;
        }
        kappas.push((i + 1, e));
    }
    kappas.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    let mut perm = vec![0usize];
    let mut last: Option<&Rat> = None;
    for (i, k) in &kappas {
        if last == Some(k) {
            continue;
        }
        perm.push(*i);
        last = Some(k);
    }
    let g = perm.len() - 1;
    for i in 1..seq_len {
        if !perm.contains(&i) {
            perm.push(i);
        }
    }
    Some((perm, g))
}

// ---------------------------------------------------------------------------
// cross-checks referenced by several criteria

#[test]
fn semiroot_values_generate_the_semigroup() {
    // intersection numbers of the sequence against the branch generate its
    // semigroup, checked by brute force up to the conductor
    let curve = branches_from_equation("C", &fixtures::quartic_semigroup_curve(), 72).unwrap();
    let analysis = maximal_contact_sequence(&curve).unwrap();
    let values = torific::contact::predicted_order_vector(&curve, &analysis.sequence, 0)
        .unwrap();
    let sg = curve[0].semigroup();
    let conductor = sg.conductor();
    let mut reach = vec![false; (conductor + 1) as usize];
    reach[0] = true;
    for &g in &values {
        for i in g..=conductor {
            if reach[(i - g) as usize] {
                reach[i as usize] = true;
            }
        }
    }
    for v in 0..=conductor {
        assert_eq!(reach[v as usize], sg.contains(v), "value {}", v);
    }
}
