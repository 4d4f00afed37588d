//! Chart-by-chart verification of the toric resolution.
//!
//! On the chart of a regular cone whose basis contains the primitive order
//! vector of a branch, the lifted arc has coordinate orders `(1, 0, ..., 0)`
//! (up to the position of the ray in the basis), so the strict transform is
//! smooth and transversal to the exceptional orbit. Each `U_i` composed
//! with the lifted arc is an exact Laurent product of the ambient
//! coordinate series, computed through unit-series arithmetic.

use num_traits::{One, Zero};

use crate::branch::BranchData;
use crate::lattice::{self, ChartBasis, IVec};
use crate::mpoly::MPoly;
use crate::rat::{rat_str, Int, Rat};
use crate::series::{Series, Trunc};
use crate::{Error, Result};

/// Lifted-arc data of one branch on a chart.
#[derive(Debug, Clone)]
pub struct BranchChartData {
    pub name: String,
    /// Ambient order vector `(ord(x_0 . eta), ..., ord(x_m . eta))`.
    pub order_vector: Vec<i64>,
    /// Orders of `U_i` composed with the lifted arc.
    pub u_orders: Vec<i64>,
    /// Leading coefficients of `U_i` composed with the lifted arc.
    pub u_leading: Vec<Rat>,
    /// Order of `U_i . lifted arc - leading term` (None when the unit part
    /// is exactly its constant to the tracked bound).
    pub u_next_order: Vec<Option<i64>>,
    /// Position of the ray coordinate in the basis.
    pub ray_index: usize,
    /// Torus coordinates of the attachment point (entries off the ray).
    pub attachment: Vec<Rat>,
}

/// Full report of a chart verification.
#[derive(Debug, Clone)]
pub struct ChartReport {
    pub basis: Vec<IVec>,
    pub det: Int,
    pub branches: Vec<BranchChartData>,
    pub attachments_distinct: bool,
    /// Strict transforms of the ideal generators under the monomial map.
    pub surface_strict: Vec<MPoly>,
    /// The two chart variables that form local coordinates on the strict
    /// surface at each attachment point.
    pub local_coordinates: Vec<(usize, usize)>,
    /// Every branch lifts with orders `(1, 0, ..., 0)` and attachment
    /// points are pairwise distinct: the curve is resolved on this chart.
    pub verdict: bool,
    /// The strict surface carries local coordinates at every attachment
    /// point (fails for non-generating embeddings, where the surface
    /// strict transform may stay singular).
    pub surface_certified: bool,
}

/// Orders and unit parts of the coordinate series of an arc.
fn arc_series(seq: &[BranchData], branch: &BranchData) -> Result<Vec<Series>> {
    let (xs, ys) = branch.arc();
    let mut out = Vec::new();
    for l in seq {
        let f = l.equation_or_compute()?;
        let val = f.substitute(&[xs.clone(), ys.clone()])?;
        if val.ord().is_none() {
            return Err(Error::TruncationInsufficient(
                "chart",
                format!("{} vanishes on {} to the tracked order", l.name, branch.name),
            ));
        }
        out.push(val);
    }
    Ok(out)
}

/// Verify a chart against the branches of the curve whose order vectors lie
/// on one of the chart's basis rays.
pub fn chart_check_plane(
    seq: &[BranchData],
    curve: &[BranchData],
    generators: &[MPoly],
    basis: &ChartBasis,
) -> Result<ChartReport> {
    let m1 = basis.rank();
    assert_eq!(m1, seq.len(), "chart rank must match the sequence length");
    let det = basis.det();
    let mut branches = Vec::new();
    for b in curve {
        let series = arc_series(seq, b)?;
        let orders: Vec<i64> = series.iter().map(|s| s.ord().unwrap()).collect();
        let order_ivec: IVec = orders.iter().map(|o| Int::from(*o)).collect();
        let prim = lattice::primitive(&order_ivec)?;
        // which basis vector carries the ray?
        let Some(ray_index) = basis.vectors().iter().position(|v| *v == prim) else {
            continue;
        };
        // coordinates of the order vector in the basis must be a multiple of
        // the unit vector at ray_index
        let coords = basis.coordinates(&order_ivec);
        if coords
            .iter()
            .enumerate()
            .any(|(i, c)| (i != ray_index && !c.is_zero()) || (i == ray_index && c.is_zero()))
        {
            return Err(Error::OrderVectorMismatch);
        }
        // the order vector must itself be primitive for transversality
        if order_ivec != prim {
            return Err(Error::OrderVectorMismatch);
        }
        // lifted arc: U_i = prod_j (x_j . eta)^(inv[i][j])
        let inv = basis.u_exponents();
        let mut u_orders = Vec::new();
        let mut u_leading = Vec::new();
        let mut u_next_order = Vec::new();
        for row in inv {
            let mut ord_acc = 0i64;
            let mut unit_acc: Option<Series> = None;
            for (j, e) in row.iter().enumerate() {
                let e = crate::rat::to_i64(&Rat::from_integer(e.clone())).unwrap();
                if e == 0 {
                    continue;
                }
                let s = &series[j];
                let o = s.ord().unwrap();
                ord_acc += o * e;
                // unit part: s / t^o
                let unit = s.shift(-o);
                let powered = unit.pow(e)?;
                unit_acc = Some(match unit_acc {
                    None => powered,
                    Some(acc) => acc.mul(&powered)?,
                });
            }
            let unit = unit_acc.unwrap_or_else(|| Series::one("t", Trunc::Exact));
            u_orders.push(ord_acc);
            let head = unit.coeff(0);
            let tail = unit.sub(&Series::constant("t", head.clone(), unit.trunc()))?;
            u_next_order.push(tail.ord());
            u_leading.push(head);
        }
        // transversality: the ray coordinate has order 1, the others 0
        for (i, o) in u_orders.iter().enumerate() {
            let expect = i64::from(i == ray_index);
            if *o != expect {
                return Err(Error::OrderVectorMismatch);
            }
        }
        let attachment: Vec<Rat> = (0..m1)
            .filter(|i| *i != ray_index)
            .map(|i| u_leading[i].clone())
            .collect();
        branches.push(BranchChartData {
            name: b.name.clone(),
            order_vector: orders,
            u_orders,
            u_leading,
            u_next_order,
            ray_index,
            attachment,
        });
    }
    if branches.is_empty() {
        return Err(Error::OrderVectorMismatch);
    }
    // pairwise distinct attachment points for branches on the same ray
    let mut attachments_distinct = true;
    for i in 0..branches.len() {
        for j in i + 1..branches.len() {
            if branches[i].ray_index == branches[j].ray_index
                && branches[i].attachment == branches[j].attachment
            {
                attachments_distinct = false;
            }
        }
    }
    if !attachments_distinct {
        return Err(Error::AttachmentCollision(format!(
            "branches share an attachment point on the chart {:?}",
            basis.vectors()
        )));
    }
    // surface strict transform: substitute the monomial map into each H and
    // strip the exceptional monomial content
    let mat: Vec<Vec<i64>> = basis
        .x_exponents()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| crate::rat::to_i64(&Rat::from_integer(x.clone())).unwrap())
                .collect()
        })
        .collect();
    let mut surface_strict = Vec::new();
    for h in generators {
        let (_, strict) = h.flatten_exact()?.monomial_substitute(&mat)?;
        surface_strict.push(strict);
    }
    // local-coordinate certificate at each attachment point: the Jacobian of
    // the strict generators in the variables off (ray, partner) must be
    // invertible
    let mut local_coordinates = Vec::new();
    let mut surface_certified = true;
    for b in &branches {
        let mut point = vec![Rat::zero(); m1];
        let mut k = 0;
        for i in 0..m1 {
            if i == b.ray_index {
                point[i] = Rat::zero();
            } else {
                point[i] = b.attachment[k].clone();
                k += 1;
            }
        }
        match local_coordinate_pair(&surface_strict, &point, b.ray_index) {
            Some(pair) => local_coordinates.push(pair),
            None => {
                surface_certified = false;
                local_coordinates.push((b.ray_index, b.ray_index));
            }
        }
    }
    Ok(ChartReport {
        basis: basis.vectors().clone(),
        det,
        branches,
        attachments_distinct,
        surface_strict,
        local_coordinates,
        verdict: attachments_distinct,
        surface_certified,
    })
}

/// Find a partner variable so that `(U_ray, U_partner)` are local
/// coordinates on the strict surface at the point: the Jacobian of the
/// strict generators in the remaining variables must be invertible.
fn local_coordinate_pair(
    strict: &[MPoly],
    point: &[Rat],
    ray: usize,
) -> Option<(usize, usize)> {
    let m1 = point.len();
    let rows = strict.len();
    if rows == 0 {
        // plane case: any partner works
        let partner = (0..m1).find(|&i| i != ray)?;
        return Some((ray, partner));
    }
    // generators must vanish at the point
    for h in strict {
        if h.eval_rat(point).ok()? != Rat::zero() {
            return None;
        }
    }
    let jac: Vec<Vec<Rat>> = strict
        .iter()
        .map(|h| {
            (0..m1)
                .map(|v| h.derivative(v).eval_rat(point).unwrap_or_else(|_| Rat::zero()))
                .collect()
        })
        .collect();
    'partner: for partner in 0..m1 {
        if partner == ray {
            continue;
        }
        // square submatrix over columns != ray, partner
        let cols: Vec<usize> = (0..m1).filter(|&c| c != ray && c != partner).collect();
        if cols.len() != rows {
            continue;
        }
        // rational determinant
        let mut msub: Vec<Vec<Rat>> =
            jac.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        // Gaussian elimination determinant
        let n = rows;
        let mut detv = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !msub[r][c].is_zero()) else {
                continue 'partner;
            };
            if p != c {
                msub.swap(p, c);
                detv = -detv;
            }
            detv *= msub[c][c].clone();
            let pivot = msub[c][c].clone();
            for r in c + 1..n {
                if !msub[r][c].is_zero() {
                    let f = &msub[r][c] / &pivot;
                    for cc in c..n {
                        let v = &msub[c][cc] * &f;
                        msub[r][cc] -= v;
                    }
                }
            }
        }
        if !detv.is_zero() {
            return Some((ray, partner));
        }
    }
    None
}

/// JSON rendering of a chart report with exact rationals as strings.
pub fn report_to_json(report: &ChartReport) -> serde_json::Value {
    let branches: Vec<serde_json::Value> = report
        .branches
        .iter()
        .map(|b| {
            serde_json::json!({
                "name": b.name,
                "order_vector": b.order_vector,
                "u_orders": b.u_orders,
                "u_leading": b.u_leading.iter().map(rat_str).collect::<Vec<_>>(),
                "u_next_order": b.u_next_order,
                "ray_index": b.ray_index,
                "attachment": b.attachment.iter().map(rat_str).collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::json!({
        "basis": report.basis.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "det": report.det.to_string(),
        "branches": branches,
        "attachments_distinct": report.attachments_distinct,
        "local_coordinates": report.local_coordinates,
        "surface_strict": report
            .surface_strict
            .iter()
            .map(|h| {
                let names: Vec<String> =
                    (0..report.basis.len()).map(|i| format!("U{}", i + 1)).collect();
                format!("{}", h.display(&names))
            })
            .collect::<Vec<_>>(),
        "verdict": report.verdict,
        "surface_certified": report.surface_certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::{branches_from_equation, BranchData, PuiseuxParam};
    use crate::lattice::ivec;
    use crate::rat::rat;
    use crate::resolution::ideal::build_embedding_ideal;

    fn xy() -> (MPoly, MPoly) {
        (MPoly::var(2, 0), MPoly::var(2, 1))
    }

    fn l1() -> BranchData {
        BranchData::from_param(
            "L1",
            PuiseuxParam::new(1, Series::zero("t", Trunc::Exact)).unwrap(),
            Some(MPoly::var(2, 1)),
        )
        .unwrap()
    }

    #[test]
    fn smooth_branch_blowup_chart() {
        // cross chart for the parabola y = x^2: ray (1, 1)... use the cusp
        // arc (t, t^2) with sequence (X, Y) and basis ((1,1),(0,1))
        let parab = {
            let (x, y) = xy();
            branches_from_equation("C", &y.sub(&x.pow(2)), 24).unwrap().remove(0)
        };
        let seq = vec![BranchData::x_axis(), l1()];
        let ideal = build_embedding_ideal(&seq, 1, &[1, 2]).unwrap();
        let basis = ChartBasis::new(vec![ivec(&[1, 2]), ivec(&[0, 1])]).unwrap();
        let report = chart_check_plane(&seq, &[parab], &ideal.generators, &basis).unwrap();
        assert!(report.verdict);
        assert_eq!(report.branches[0].u_orders, vec![1, 0]);
    }

    #[test]
    fn wrong_ray_is_rejected() {
        let cusp = {
            let (x, y) = xy();
            branches_from_equation("C", &y.pow(2).sub(&x.pow(3)), 24).unwrap().remove(0)
        };
        let seq = vec![BranchData::x_axis(), l1()];
        let ideal = build_embedding_ideal(&seq, 1, &[2, 3]).unwrap();
        let basis = ChartBasis::new(vec![ivec(&[1, 1]), ivec(&[0, 1])]).unwrap();
        assert!(matches!(
            chart_check_plane(&seq, &[cusp], &ideal.generators, &basis),
            Err(Error::OrderVectorMismatch)
        ));
    }
}
