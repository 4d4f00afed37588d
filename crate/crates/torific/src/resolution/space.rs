//! Space-curve resolution mode.
//!
//! Branches of a reduced curve in `k^n` are given by monomial-centered arcs
//! (coordinate series, possibly identically zero). Torus branches are
//! resolved by any regular fan containing their primitive order ray;
//! branches lying in coordinate subspaces are handled through the Star fan
//! of the vanishing-coordinate cone. When the coordinates split into shared
//! ones and per-branch markers, the `theta_j` cone fan and its explicit
//! refinement certify resolution of the whole curve at once.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::lattice::{self, build_space_fan, ChartBasis, Cone, Fan, IVec, SpaceFan};
use crate::rat::{rat_str, Int, Rat};
use crate::series::{Series, Trunc};
use crate::{Error, Result};

/// Arcs of the branches of a space curve.
#[derive(Debug, Clone)]
pub struct SpaceCurveInput {
    /// One arc per branch: coordinate series in `t` (entries may be zero).
    pub arcs: Vec<Vec<Series>>,
}

impl SpaceCurveInput {
    pub fn new(arcs: Vec<Vec<Series>>) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::InvalidInput("no arcs".into()));
        }
        let n = arcs[0].len();
        for arc in &arcs {
            if arc.len() != n {
                return Err(Error::InvalidInput("arcs of different ambient rank".into()));
            }
            for s in arc {
                if let Some(o) = s.ord() {
                    if o < 1 {
                        return Err(Error::InvalidBranch(
                            "arc is not centered at the origin".into(),
                        ));
                    }
                }
            }
        }
        Ok(SpaceCurveInput { arcs })
    }

    pub fn ambient_rank(&self) -> usize {
        self.arcs[0].len()
    }
}

/// Verdict for one branch.
#[derive(Debug, Clone)]
pub struct BranchVerdict {
    pub index: usize,
    /// Coordinate orders (`None` for identically zero coordinates).
    pub orders: Vec<Option<i64>>,
    /// Vanishing coordinates (the cone `sigma` of the orbit closure).
    pub zero_coords: Vec<usize>,
    /// Primitive order vector in the quotient (Star) lattice.
    pub reduced_ray: IVec,
    /// Orders of the chart coordinates along the lifted arc.
    pub u_orders: Vec<i64>,
    /// Leading coefficients of the chart coordinates.
    pub u_leading: Vec<Rat>,
    pub resolved: bool,
}

/// Report of the space-curve resolution.
#[derive(Debug, Clone)]
pub struct SpaceReport {
    pub branches: Vec<BranchVerdict>,
    /// Pairwise distinctness of attachment data for branches sharing a ray.
    pub attachments_distinct: bool,
    /// The `theta_j` fan and its refinement, when the coordinate layout
    /// matches the direct-sum construction.
    pub theta_fan: Option<SpaceFan>,
    /// Star-fan rays certified for subspace branches: `(branch, rays)`.
    pub star_rays: Vec<(usize, Vec<IVec>)>,
    pub resolved: bool,
}

/// Resolve the branches of a space curve: order vectors, primitivity,
/// chart checks, Star fans for subspace branches, and the `theta` fan when
/// the input is shaped for it. `separate` enables the order-vector
/// separation repair for plane-shadow branches.
pub fn space_curve_resolve(inp: &SpaceCurveInput, separate: bool) -> Result<SpaceReport> {
    let n = inp.ambient_rank();
    let mut arcs = inp.arcs.clone();

    // order-vector separation repair when two branches share their vector
    if separate {
        arcs = separate_arcs(arcs)?;
    }
    let n_ext = arcs[0].len();

    let mut verdicts = Vec::new();
    for (bi, arc) in arcs.iter().enumerate() {
        let mut orders = Vec::new();
        for s in arc {
            match s.ord() {
                Some(o) => orders.push(Some(o)),
                None => match s.trunc() {
                    Trunc::Exact => orders.push(None),
                    Trunc::At(t) => {
                        return Err(Error::TruncationInsufficient(
                            "space",
                            format!("coordinate zero to t^{} on branch {}", t, bi),
                        ))
                    }
                },
            }
        }
        let zero_coords: Vec<usize> =
            (0..n_ext).filter(|&i| orders[i].is_none()).collect();
        let finite: Vec<i64> = orders.iter().flatten().copied().collect();
        if finite.is_empty() {
            return Err(Error::InvalidBranch(format!("branch {} is the origin", bi)));
        }
        let mut g = 0i64;
        for v in &finite {
            g = crate::rat::gcd_i64(g, *v);
        }
        if g != 1 {
            return Err(Error::SemigroupNotGeneratingZ(g.to_string()));
        }
        // reduced (Star) coordinates: drop the vanishing coordinates
        let reduced: IVec = finite.iter().map(|o| Int::from(*o)).collect();
        let reduced_ray = lattice::primitive(&reduced)?;
        // chart check in the reduced space
        let basis = ChartBasis::from_prefix(&[reduced_ray.clone()], reduced.len())?;
        let keep: Vec<usize> = (0..n_ext).filter(|i| orders[*i].is_some()).collect();
        let reduced_arc: Vec<Series> = keep.iter().map(|&i| arc[i].clone()).collect();
        let (u_orders, u_leading) = lifted_arc(&reduced_arc, &basis)?;
        let resolved = u_orders
            .iter()
            .enumerate()
            .all(|(i, o)| *o == i64::from(i == 0));
        verdicts.push(BranchVerdict {
            index: bi,
            orders,
            zero_coords,
            reduced_ray,
            u_orders,
            u_leading,
            resolved,
        });
    }

    // attachment distinctness for branches with the same vanishing pattern
    // and the same ray
    let mut attachments_distinct = true;
    for i in 0..verdicts.len() {
        for j in i + 1..verdicts.len() {
            let (a, b) = (&verdicts[i], &verdicts[j]);
            if a.zero_coords == b.zero_coords && a.reduced_ray == b.reduced_ray {
                let ta: Vec<&Rat> = a.u_leading.iter().skip(1).collect();
                let tb: Vec<&Rat> = b.u_leading.iter().skip(1).collect();
                if ta == tb {
                    attachments_distinct = false;
                }
            }
        }
    }
    if !attachments_distinct {
        return Err(Error::AttachmentCollision(
            "two branches lift to the same attachment point".into(),
        ));
    }

    // theta fan when the coordinates split into shared and per-branch ones
    let theta_fan = theta_fan_if_shaped(&arcs, &verdicts)?;

    // Star-fan certification for subspace branches: the ambient fan is the
    // quadrant subdivided at the full-support rays; the reduced ray must be
    // a ray of the Star of the vanishing cone
    let mut star_rays = Vec::new();
    for v in &verdicts {
        if v.zero_coords.is_empty() {
            continue;
        }
        let mut fan = quadrant_fan(n_ext)?;
        for w in verdicts.iter().filter(|w| w.zero_coords.is_empty()) {
            let full: IVec = w
                .orders
                .iter()
                .map(|o| Int::from(o.unwrap()))
                .collect();
            let prim = lattice::primitive(&full)?;
            if !fan.rays().contains(&prim) {
                fan = fan.star_subdivide(&prim)?;
            }
        }
        let sigma_gens: Vec<IVec> = v
            .zero_coords
            .iter()
            .map(|&i| {
                let mut e = vec![Int::zero(); n_ext];
                e[i] = Int::from(1);
                e
            })
            .collect();
        let sigma = Cone::new(sigma_gens, n_ext)?;
        if !fan.contains_cone(&sigma) {
            return Err(Error::ConeNotInFan);
        }
        let (star, q) = fan.star(&sigma)?;
        let projected = q.project(
            &v.orders
                .iter()
                .map(|o| Int::from(o.unwrap_or(0)))
                .collect::<IVec>(),
        );
        let prim = lattice::primitive(&projected)?;
        let mut star2 = star.clone();
        if !star2.rays().contains(&prim) {
            star2 = star2.star_subdivide(&prim)?;
        }
        star_rays.push((v.index, star2.rays()));
    }

    let resolved = verdicts.iter().all(|v| v.resolved) && attachments_distinct;
    let _ = n;
    Ok(SpaceReport { branches: verdicts, attachments_distinct, theta_fan, star_rays, resolved })
}

fn quadrant_fan(rank: usize) -> Result<Fan> {
    let gens: Vec<IVec> = (0..rank)
        .map(|i| {
            let mut e = vec![Int::zero(); rank];
            e[i] = Int::from(1);
            e
        })
        .collect();
    Fan::from_cones(vec![Cone::new(gens, rank)?], rank)
}

/// Compose the chart coordinates with the arc: `U_i = prod_j X_j^(inv[i][j])`.
fn lifted_arc(arc: &[Series], basis: &ChartBasis) -> Result<(Vec<i64>, Vec<Rat>)> {
    let inv = basis.u_exponents();
    let mut u_orders = Vec::new();
    let mut u_leading = Vec::new();
    for row in inv {
        let mut ord_acc = 0i64;
        let mut unit_acc: Option<Series> = None;
        for (j, e) in row.iter().enumerate() {
            let e = crate::rat::to_i64(&Rat::from_integer(e.clone())).unwrap();
            if e == 0 {
                continue;
            }
            let s = &arc[j];
            let o = s.ord().ok_or_else(|| {
                Error::TruncationInsufficient("space", "zero coordinate in the torus part".into())
            })?;
            ord_acc += o * e;
            let unit = s.shift(-o);
            let powered = unit.pow(e)?;
            unit_acc = Some(match unit_acc {
                None => powered,
                Some(acc) => acc.mul(&powered)?,
            });
        }
        let unit = unit_acc.unwrap_or_else(|| Series::one("t", Trunc::Exact));
        u_orders.push(ord_acc);
        u_leading.push(unit.coeff(0));
    }
    Ok((u_orders, u_leading))
}

/// Build the `theta_j` fan when every coordinate is either shared (nonzero
/// on all branches) or special to exactly one branch.
fn theta_fan_if_shaped(
    arcs: &[Vec<Series>],
    verdicts: &[BranchVerdict],
) -> Result<Option<SpaceFan>> {
    let n = arcs[0].len();
    let r = arcs.len();
    if r < 2 {
        return Ok(None);
    }
    let mut shared = Vec::new();
    let mut special: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let nonzero: Vec<usize> =
            (0..r).filter(|&j| verdicts[j].orders[i].is_some()).collect();
        if nonzero.len() == r {
            shared.push(i);
        } else if nonzero.len() == 1 {
            special[i] = Some(nonzero[0]);
        } else {
            return Ok(None);
        }
    }
    if shared.is_empty() || special.iter().all(|s| s.is_none()) {
        return Ok(None);
    }
    // w0 collects the special-coordinate orders (each from its owner)
    let mut w0 = vec![Int::zero(); n];
    for i in 0..n {
        if let Some(owner) = special[i] {
            w0[i] = Int::from(verdicts[owner].orders[i].unwrap());
        }
    }
    let mut wj_list = Vec::new();
    let mut sigma_list = Vec::new();
    for j in 0..r {
        let mut wj = vec![Int::zero(); n];
        for &i in &shared {
            wj[i] = Int::from(verdicts[j].orders[i].unwrap());
        }
        wj_list.push(wj);
        let gens: Vec<IVec> = (0..n)
            .filter(|&i| special[i].map_or(false, |o| o != j))
            .map(|i| {
                let mut e = vec![Int::zero(); n];
                e[i] = Int::from(1);
                e
            })
            .collect();
        sigma_list.push(if gens.is_empty() {
            Cone::origin(n)
        } else {
            Cone::new(gens, n)?
        });
    }
    match build_space_fan(&w0, &wj_list, &sigma_list) {
        Ok(f) => Ok(Some(f)),
        Err(Error::ThetaConesCoincide) => Err(Error::ThetaConesCoincide),
        Err(_) => Ok(None),
    }
}

/// Order-vector separation: when two arcs share their order vector, append
/// a coordinate `f_i + x_1^(l_i)` built from a separating plane function, as
/// long as the first two coordinates expose a plane branch shadow.
fn separate_arcs(arcs: Vec<Vec<Series>>) -> Result<Vec<Vec<Series>>> {
    let mut orders: Vec<Vec<Option<i64>>> = Vec::new();
    for arc in &arcs {
        orders.push(arc.iter().map(|s| s.ord()).collect());
    }
    let mut duplicated = BTreeSet::new();
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            if orders[i] == orders[j] {
                duplicated.insert(i);
                duplicated.insert(j);
            }
        }
    }
    if duplicated.is_empty() {
        return Ok(arcs);
    }
    let mut out = arcs.clone();
    // separator for branch i: the defining polynomial of its plane shadow
    let fs: Vec<Option<crate::mpoly::MPoly>> = arcs
        .iter()
        .map(|arc| plane_shadow_poly(arc))
        .collect();
    for &i in duplicated.iter().take(duplicated.len() - 1) {
        let Some(fi) = &fs[i] else {
            return Err(Error::InvalidBranch(format!(
                "branch {} has no plane shadow to separate with",
                i
            )));
        };
        // l_i large enough: bigger than every ord(f_i . eta_j) over the
        // other branches
        let mut bound = 1i64;
        for (j, arc) in arcs.iter().enumerate() {
            if j == i {
                continue;
            }
            let val = fi.substitute(&[arc[0].clone(), arc[1].clone()])?;
            if let Some(o) = val.ord() {
                bound = bound.max(o);
            }
        }
        let x1_ord = orders[i][0].ok_or_else(|| {
            Error::InvalidBranch("first coordinate vanishes on a duplicated branch".into())
        })?;
        let l = bound / x1_ord + 1;
        for (j, arc) in arcs.iter().enumerate() {
            let val = fi.substitute(&[arc[0].clone(), arc[1].clone()])?;
            let extra = val.add(&arc[0].pow(l)?)?;
            out[j].push(extra);
        }
    }
    Ok(out)
}

/// Defining polynomial of the plane shadow `(x_1(t), x_2(t))` when it is a
/// genuine branch.
fn plane_shadow_poly(arc: &[Series]) -> Option<crate::mpoly::MPoly> {
    if arc.len() < 2 {
        return None;
    }
    let x = &arc[0];
    let y = &arc[1];
    let n = x.ord()?;
    // x must be a pure monomial t^n for the shadow to be parametrized
    if x.terms().count() != 1 || x.coeff(n) != Rat::from_integer(1.into()) {
        return None;
    }
    let param = crate::branch::PuiseuxParam::new(n, y.clone()).ok()?;
    crate::branch::defining_poly_from_param(&param).ok()
}

/// JSON rendering of a space report.
pub fn space_report_to_json(report: &SpaceReport) -> serde_json::Value {
    let branches: Vec<serde_json::Value> = report
        .branches
        .iter()
        .map(|b| {
            serde_json::json!({
                "index": b.index,
                "orders": b.orders,
                "zero_coords": b.zero_coords,
                "reduced_ray": b.reduced_ray.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "u_orders": b.u_orders,
                "u_leading": b.u_leading.iter().map(rat_str).collect::<Vec<_>>(),
                "resolved": b.resolved,
            })
        })
        .collect();
    serde_json::json!({
        "branches": branches,
        "attachments_distinct": report.attachments_distinct,
        "theta_fan": report.theta_fan.as_ref().map(|f| {
            serde_json::json!({
                "thetas": f.thetas.iter().map(|c| c.gens().iter().map(|g| g.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "refinement": crate::lattice::fan_to_json(&f.refinement),
            })
        }),
        "star_rays": report.star_rays.iter().map(|(b, rays)| {
            serde_json::json!({
                "branch": b,
                "rays": rays.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        }).collect::<Vec<_>>(),
        "resolved": report.resolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;
    use crate::rat::rat;

    fn mono(e: i64) -> Series {
        Series::monomial("t", e, rat(1, 1), Trunc::Exact)
    }

    fn zero() -> Series {
        Series::zero("t", Trunc::Exact)
    }

    #[test]
    fn single_torus_arc() {
        let inp = SpaceCurveInput::new(vec![vec![mono(2), mono(3)]]).unwrap();
        let report = space_curve_resolve(&inp, false).unwrap();
        assert!(report.resolved);
        assert_eq!(report.branches[0].reduced_ray, ivec(&[2, 3]));
        assert_eq!(report.branches[0].u_orders, vec![1, 0]);
    }

    #[test]
    fn subspace_fixture_with_star_ray() {
        // arcs (t^4, t^6, t^13) and (t^2, t^3, 0)
        let inp = SpaceCurveInput::new(vec![
            vec![mono(4), mono(6), mono(13)],
            vec![mono(2), mono(3), zero()],
        ])
        .unwrap();
        let report = space_curve_resolve(&inp, false).unwrap();
        assert!(report.resolved);
        assert_eq!(report.branches[0].reduced_ray, ivec(&[4, 6, 13]));
        assert_eq!(report.branches[1].zero_coords, vec![2]);
        assert_eq!(report.branches[1].reduced_ray, ivec(&[2, 3]));
        // the Star fan of the vanishing cone contains the ray (2, 3)
        let (_, rays) = &report.star_rays[0];
        assert!(rays.contains(&ivec(&[2, 3])));
        // the theta fan exists: theta_1 the full ray, theta_2 the cone over
        // (2,3,13) and e_3
        let tf = report.theta_fan.as_ref().expect("theta fan");
        assert!(tf.thetas.iter().any(|t| t.gens() == [ivec(&[4, 6, 13])]));
        assert!(tf
            .thetas
            .iter()
            .any(|t| t.gens().contains(&ivec(&[0, 0, 1]))
                && t.gens().contains(&ivec(&[2, 3, 13]))));
    }

    #[test]
    fn gcd_failure_is_reported() {
        let inp = SpaceCurveInput::new(vec![vec![mono(2), mono(4)]]).unwrap();
        assert!(matches!(
            space_curve_resolve(&inp, false),
            Err(Error::SemigroupNotGeneratingZ(_))
        ));
    }

    #[test]
    fn separation_of_equal_order_vectors() {
        // (t^2, t^3) and (t^2, t^3 + t^4): same order vectors; separation
        // appends a coordinate that distinguishes them
        let a1 = vec![mono(2), mono(3)];
        let a2 = vec![
            mono(2),
            Series::from_terms("t", &[(3, rat(1, 1)), (4, rat(1, 1))], Trunc::Exact),
        ];
        let inp = SpaceCurveInput::new(vec![a1, a2]).unwrap();
        // without separation the attachment data must still differ or the
        // call fails; with separation the order vectors become distinct
        let report = space_curve_resolve(&inp, true).unwrap();
        assert!(report.resolved);
        let o1: Vec<Option<i64>> = report.branches[0].orders.clone();
        let o2: Vec<Option<i64>> = report.branches[1].orders.clone();
        assert_ne!(o1, o2);
    }
}
