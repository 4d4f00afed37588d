//! Intersection multiplicities and contact exponents.
//!
//! The intersection multiplicity of two distinct branches is the `t`-order
//! of one defining polynomial composed with the other's arc. The contact
//! exponent is the largest order of coincidence of the Puiseux series over
//! all conjugates; over the rationals only the conjugations acting by `+-1`
//! on matching coefficients can preserve equality, which keeps the
//! maximization exact and field-extension free.

use num_traits::Zero;

use crate::rat::{lcm_i64, Rat};
use crate::series::Trunc;
use crate::{Error, Result};

use super::BranchData;

/// Finite intersection number or infinity (equal branches).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Intersection {
    Finite(i64),
    Infinite,
}

impl Intersection {
    pub fn finite(self) -> Option<i64> {
        match self {
            Intersection::Finite(v) => Some(v),
            Intersection::Infinite => None,
        }
    }
}

/// `(A . B)` as the order of `f_B` along the arc of `A`.
pub fn intersection_multiplicity(a: &BranchData, b: &BranchData) -> Result<Intersection> {
    if same_branch(a, b) {
        return Ok(Intersection::Infinite);
    }
    let f_b = b.equation_or_compute()?;
    let (xs, ys) = a.arc();
    let val = f_b.substitute(&[xs, ys])?;
    match val.ord() {
        Some(o) => Ok(Intersection::Finite(o)),
        None => match val.trunc() {
            Trunc::Exact => Ok(Intersection::Infinite),
            Trunc::At(t) => Err(Error::TruncationInsufficient(
                "intersection",
                format!(
                    "{} . {} vanishes to the full tracked order t^{}",
                    a.name, b.name, t
                ),
            )),
        },
    }
}

/// Branch equality over the rationals: equal ramification and equal series
/// up to the rational deck transformations `t -> +-t`.
pub fn same_branch(a: &BranchData, b: &BranchData) -> bool {
    if a.is_x_axis() || b.is_x_axis() {
        return a.is_x_axis() && b.is_x_axis();
    }
    let (pa, pb) = (a.param().unwrap(), b.param().unwrap());
    if pa.ramification() != pb.ramification() {
        return false;
    }
    if pa.zeta() == pb.zeta() {
        return true;
    }
    if pa.ramification() % 2 == 0 {
        // t -> -t fixes x = t^n and flips odd coefficients
        let flipped = flip_odd(pb.zeta());
        if *pa.zeta() == flipped {
            return true;
        }
    }
    false
}

fn flip_odd(s: &crate::series::Series) -> crate::series::Series {
    let mut out = crate::series::Series::zero(s.var(), s.trunc());
    for (e, c) in s.terms() {
        out.set_coeff(e, if e % 2 == 0 { c.clone() } else { -c.clone() });
    }
    out
}

/// Contact data between two branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contact {
    /// Contact exponent in `x`-units (the exponent of the tripod point).
    Exponent(Rat),
    /// The series agree up to the tracked truncation (equal or undecidable).
    FullAgreement,
}

/// Contact exponent `kappa(A, B) = max over conjugates of
/// `ord_x(zeta_A - zeta_B tilde)`, computed by a walk over the common
/// exponent grid.
pub fn contact_exponent(a: &BranchData, b: &BranchData) -> Result<Contact> {
    if a.is_x_axis() || b.is_x_axis() {
        return Err(Error::InvalidBranch(
            "contact exponent against the reference axis is not defined".into(),
        ));
    }
    let pa = a.param().unwrap();
    let pb = b.param().unwrap();
    let (na, nb) = (pa.ramification(), pb.ramification());
    let n = lcm_i64(na, nb);
    // exponents rescaled to the common 1/n grid
    let sa: Vec<(i64, Rat)> = pa.zeta().terms().map(|(e, c)| (e * (n / na), c.clone())).collect();
    let sb: Vec<(i64, Rat)> = pb.zeta().terms().map(|(e, c)| (e * (n / nb), c.clone())).collect();
    let bound_a = pa.zeta().trunc().bound().map(|t| t * (n / na));
    let bound_b = pb.zeta().trunc().bound().map(|t| t * (n / nb));
    let walk_bound = match (bound_a, bound_b) {
        (None, None) => None,
        (x, y) => Some(x.unwrap_or(i64::MAX).min(y.unwrap_or(i64::MAX))),
    };
    let mut exps: Vec<i64> = sa.iter().map(|(e, _)| *e).chain(sb.iter().map(|(e, _)| *e)).collect();
    exps.sort();
    exps.dedup();
    let coeff = |s: &[(i64, Rat)], e: i64| -> Rat {
        s.iter().find(|(ee, _)| *ee == e).map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    };

    let mut best: Option<i64> = None;
    for l in 0..n {
        // first exponent where zeta_A and the l-conjugate of zeta_B differ
        let mut mismatch: Option<i64> = None;
        for &e in &exps {
            if let Some(wb) = walk_bound {
                if e >= wb {
                    break;
                }
            }
            let ca = coeff(&sa, e);
            let cb = coeff(&sb, e);
            // conjugate factor w^(l e) with w a primitive n-th root of unity
            let r = (l * e).rem_euclid(n);
            let matched = if ca.is_zero() && cb.is_zero() {
                true
            } else if cb.is_zero() || ca.is_zero() {
                false
            } else {
                let ratio = &ca / &cb;
                if ratio == Rat::from_integer(1.into()) {
                    r == 0
                } else if ratio == Rat::from_integer((-1).into()) {
                    n % 2 == 0 && r == n / 2
                } else {
                    false
                }
            };
            if !matched {
                mismatch = Some(e);
                break;
            }
        }
        match mismatch {
            Some(e) => {
                best = Some(best.map_or(e, |b: i64| b.max(e)));
            }
            None => return Ok(Contact::FullAgreement),
        }
    }
    let e = best.expect("at least one conjugate");
    Ok(Contact::Exponent(Rat::new(e.into(), n.into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::{branches_from_equation, BranchData, PuiseuxParam};
    use crate::mpoly::MPoly;
    use crate::rat::rat;
    use crate::series::{Series, Trunc};

    fn xy() -> (MPoly, MPoly) {
        (MPoly::var(2, 0), MPoly::var(2, 1))
    }

    /// Branch of `Y^2 - X^3 - X^4`.
    fn branch_a() -> BranchData {
        let (x, y) = xy();
        let f = y.pow(2).sub(&x.pow(3)).sub(&x.pow(4));
        branches_from_equation("C1", &f, 40).unwrap().remove(0)
    }

    #[test]
    fn paper_intersections() {
        let a = branch_a();
        // (L2 . C1) = 8 with L2 = Z(Y^2 - X^3 + X^4)
        let (x, y) = xy();
        let l2eq = y.pow(2).sub(&x.pow(3)).add(&x.pow(4));
        let l2 = branches_from_equation("L2", &l2eq, 40).unwrap().remove(0);
        assert_eq!(
            intersection_multiplicity(&l2, &a).unwrap(),
            Intersection::Finite(8)
        );
        // (L0 . C1) = 2
        let l0 = BranchData::x_axis();
        assert_eq!(
            intersection_multiplicity(&l0, &a).unwrap(),
            Intersection::Finite(2)
        );
        // self-intersection is infinite
        assert_eq!(intersection_multiplicity(&a, &a).unwrap(), Intersection::Infinite);
    }

    #[test]
    fn symmetry_on_fixture_pair() {
        let a = branch_a();
        let (x, y) = xy();
        let f2 = y.pow(2).sub(&x.pow(3)).sub(&x.pow(5));
        let b = branches_from_equation("C2", &f2, 40).unwrap().remove(0);
        let ab = intersection_multiplicity(&a, &b).unwrap();
        let ba = intersection_multiplicity(&b, &a).unwrap();
        assert_eq!(ab, ba);
        assert_eq!(ab, Intersection::Finite(8));
    }

    #[test]
    fn conjugate_equality_detected() {
        // (t^2, t^3) and (t^2, -t^3) are the same branch
        let p1 = PuiseuxParam::new(2, Series::monomial("t", 3, rat(1, 1), Trunc::Exact))
            .unwrap();
        let p2 = PuiseuxParam::new(2, Series::monomial("t", 3, rat(-1, 1), Trunc::Exact))
            .unwrap();
        let b1 = BranchData::from_param("A", p1, None).unwrap();
        let b2 = BranchData::from_param("B", p2, None).unwrap();
        assert!(same_branch(&b1, &b2));
        assert_eq!(intersection_multiplicity(&b1, &b2).unwrap(), Intersection::Infinite);
    }

    #[test]
    fn contact_exponents_on_fixtures() {
        let a = branch_a();
        let (x, y) = xy();
        let f2 = y.pow(2).sub(&x.pow(3)).sub(&x.pow(5));
        let b = branches_from_equation("C2", &f2, 40).unwrap().remove(0);
        // zeta_A = x^(3/2) + x^(5/2)/2 - ..., zeta_B = x^(3/2) + x^(7/2)/2 - ...
        assert_eq!(contact_exponent(&a, &b).unwrap(), Contact::Exponent(rat(5, 2)));

        // contact is maximized over conjugates: (t^2, t^3 + t^5) vs
        // (t^2, -t^3 + t^5): conjugating by t -> -t aligns the cube terms
        // and moves the mismatch to t^5, so the contact is 5/2, not 3/2.
        let pa = PuiseuxParam::new(
            2,
            Series::from_terms("t", &[(3, rat(1, 1)), (5, rat(1, 1))], Trunc::Exact),
        )
        .unwrap();
        let pb = PuiseuxParam::new(
            2,
            Series::from_terms("t", &[(3, rat(-1, 1)), (5, rat(1, 1))], Trunc::Exact),
        )
        .unwrap();
        let ba = BranchData::from_param("A", pa, None).unwrap();
        let bb = BranchData::from_param("B", pb, None).unwrap();
        assert_eq!(contact_exponent(&ba, &bb).unwrap(), Contact::Exponent(rat(5, 2)));
    }
}
