//! Defining polynomial of a parametrized branch.
//!
//! The monic polynomial of degree `n` vanishing on `x = t^n, y = zeta(t)` is
//! the product of `Y - zeta(w t)` over the `n`-th roots of unity `w`. Its
//! coefficients are computed rationally through the power sums of the
//! conjugates: `p_s(x) = n * sum of the coefficients of zeta^s at exponents
//! divisible by n`, followed by Newton's identities.

use crate::mpoly::{Coef, MPoly};
use crate::rat::Rat;
use crate::series::{Series, Trunc};
use crate::Result;

use super::PuiseuxParam;

/// Monic defining polynomial in `(X, Y)` of the branch `x = t^n, y = zeta`.
///
/// Exact input series give an exact polynomial; truncated input gives
/// series-in-`X` coefficients with certified truncation.
pub fn defining_poly_from_param(param: &PuiseuxParam) -> Result<MPoly> {
    let n = param.ramification();
    let zeta = param.zeta();
    // power sums of the conjugates, as series in x
    let mut power_sums: Vec<Series> = Vec::with_capacity(n as usize + 1);
    power_sums.push(Series::constant("x", Rat::from_integer(n.into()), Trunc::Exact));
    let mut zpow = Series::one(zeta.var(), zeta.trunc());
    for _ in 1..=n {
        zpow = zpow.mul(zeta)?;
        let kept = zpow.deflate(n).with_var("x");
        power_sums.push(kept.scale(&Rat::from_integer(n.into())));
    }
    // Newton's identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    let mut elem: Vec<Series> = vec![Series::one("x", Trunc::Exact)];
    for k in 1..=(n as usize) {
        let mut acc: Option<Series> = None;
        for i in 1..=k {
            let term = elem[k - i].mul(&power_sums[i])?;
            let term = if i % 2 == 0 { term.neg() } else { term };
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
        let ek = acc.unwrap().scale(&Rat::new(1.into(), (k as i64).into()));
        elem.push(ek);
    }
    // F(X, Y) = sum_k (-1)^k e_k(X) Y^(n-k)
    let mut out = MPoly::zero(2);
    for (k, ek) in elem.iter().enumerate() {
        let signed = if k % 2 == 1 { ek.neg() } else { ek.clone() };
        if signed.is_exactly_zero() {
            continue;
        }
        let exps = vec![0, n - k as i64];
        if signed.is_zero_to_trunc() && signed.trunc() != Trunc::Exact {
            // keep the uncertainty: a zero-to-truncation coefficient
            out.add_term(&exps, Coef::Ser(signed));
        } else {
            out.add_term(&exps, Coef::Ser(signed));
        }
    }
    // flatten to rational coefficients when everything is exact
    if out.is_exact() {
        out.flatten_exact()
    } else {
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::newton_puiseux;
    use crate::rat::rat;

    #[test]
    fn line() {
        let p = PuiseuxParam::new(1, Series::zero("t", Trunc::Exact)).unwrap();
        let f = defining_poly_from_param(&p).unwrap();
        assert_eq!(f, MPoly::var(2, 1));
    }

    #[test]
    fn cusp() {
        let p = PuiseuxParam::new(2, Series::monomial("t", 3, rat(1, 1), Trunc::Exact))
            .unwrap();
        let f = defining_poly_from_param(&p).unwrap();
        let expect = MPoly::var(2, 1).pow(2).sub(&MPoly::var(2, 0).pow(3));
        assert_eq!(f, expect);
    }

    /// Coefficient of `Y^j` gathered as a series in `X`.
    fn y_coeff(p: &MPoly, j: i64) -> Series {
        let mut out = Series::zero("x", Trunc::Exact);
        for (exps, coef) in p.terms() {
            if exps[1] != j {
                continue;
            }
            let piece = match coef {
                Coef::Rat(r) => Series::monomial("x", exps[0], r.clone(), Trunc::Exact),
                Coef::Ser(s) => s.with_var("x").shift(exps[0]),
            };
            out = out.add(&piece).unwrap();
        }
        out
    }

    #[test]
    fn truncated_round_trip() {
        // zeta of Y^2 - X^3 - X^4, recovered as series coefficients
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let f = y.pow(2).sub(&x.pow(3)).sub(&x.pow(4));
        let params = newton_puiseux(&f, 24).unwrap();
        let g = defining_poly_from_param(&params[0]).unwrap();
        // the X-coefficients of each Y power agree with f to truncation
        for j in 0..=2 {
            let diff = y_coeff(&g, j).sub(&y_coeff(&f, j)).unwrap();
            assert!(diff.is_zero_to_trunc(), "Y^{} residual {}", j, diff);
        }
        // substituting the parametrization kills g to its bound
        let (xs, ys) = params[0].arc();
        let res = g.substitute(&[xs, ys]).unwrap();
        assert!(res.is_zero_to_trunc());
    }

    #[test]
    fn exact_quartic_product() {
        // zeta = t^6 + t^7 with n = 4: exact degree-4 polynomial; the
        // parametrization must satisfy it identically.
        let zeta = Series::from_terms("t", &[(6, rat(1, 1)), (7, rat(1, 1))], Trunc::Exact);
        let p = PuiseuxParam::new(4, zeta).unwrap();
        let f = defining_poly_from_param(&p).unwrap();
        assert!(f.is_exact());
        assert_eq!(f.degree(1), Some(4));
        let (xs, ys) = p.arc();
        let res = f.substitute(&[xs, ys]).unwrap();
        assert!(res.is_exactly_zero(), "residual {}", res);
    }
}
