//! Adic expansions with respect to a ladder of monic polynomials.
//!
//! Given `f_1, ..., f_G` monic in `Y` with `deg_Y f_1 = 1` and
//! `deg_Y f_j = N_1 ... N_{j-1}`, every polynomial `f` in `Y` has a unique
//! finite expansion `f = sum_I c_I(x) f_1^{i_1} ... f_G^{i_G}` with digits
//! `0 <= i_j < N_j` for `j < G` and `i_G` bounded by the degree quotient.
//! The expansion is computed by iterated Euclidean division, innermost by
//! `f_G`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::mpoly::{Coef, MPoly};
use crate::series::Trunc;
use crate::{Error, Result};

/// Expansion of a polynomial in terms of a monic base ladder.
#[derive(Debug, Clone)]
pub struct AdicExpansion {
    /// Base polynomials `f_1, ..., f_G` in `(X, Y)`.
    pub base: Vec<MPoly>,
    /// Digit bounds: `N_j` for `j < G`, then the outer degree bound.
    pub bounds: Vec<i64>,
    /// Terms `I = (i_1, ..., i_G) -> c_I` with `c_I` a coefficient in `X`.
    pub terms: BTreeMap<Vec<i64>, Coef>,
}

/// Expand `f` in the `(x, f_1, ..., f_G)`-adic sense.
pub fn adic_expansion(f: &MPoly, base: &[MPoly]) -> Result<AdicExpansion> {
    assert!(!base.is_empty(), "base ladder must be nonempty");
    let g = base.len();
    // validate the degree ladder
    let mut bounds = Vec::with_capacity(g);
    let mut expected = 1i64;
    for (j, b) in base.iter().enumerate() {
        let d = b.degree(1).unwrap_or(0);
        if j == 0 {
            if d != 1 {
                return Err(Error::DegreeLadderViolation(format!(
                    "first base has Y-degree {}",
                    d
                )));
            }
        } else {
            if d % expected != 0 || d / expected < 2 {
                return Err(Error::DegreeLadderViolation(format!(
                    "base {} has Y-degree {}, previous ladder {}",
                    j, d, expected
                )));
            }
            bounds.push(d / expected);
        }
        expected = d;
    }
    // bounds currently holds N_1..N_{G-1}; the outer bound comes from f
    let outer = f.degree(1).unwrap_or(0) / base[g - 1].degree(1).unwrap_or(1);
    bounds.push(outer.max(0));

    let mut terms = BTreeMap::new();
    expand_rec(f, base, &mut vec![0; g], &mut terms)?;
    let exp = AdicExpansion { base: base.to_vec(), bounds, terms };
    debug_assert!({
        let back = exp.reconstruct().flatten_exact()?;
        back.sub(&f.flatten_exact()?).is_zero()
    });
    Ok(exp)
}

fn expand_rec(
    f: &MPoly,
    base: &[MPoly],
    digits: &mut Vec<i64>,
    terms: &mut BTreeMap<Vec<i64>, Coef>,
) -> Result<()> {
    if f.is_zero() {
        return Ok(());
    }
    if base.is_empty() {
        // pure coefficient in X
        if f.degree(1).unwrap_or(0) != 0 {
            return Err(Error::DegreeLadderViolation(
                "residual coefficient still involves Y".into(),
            ));
        }
        // collapse to a single coefficient in X
        let mut c = Coef::Rat(crate::rat::Rat::zero());
        let mut poly = crate::series::Series::zero("x", Trunc::Exact);
        let mut is_series = false;
        for (exps, coef) in f.terms() {
            match coef {
                Coef::Rat(r) => {
                    let v = poly.coeff(exps[0]) + r;
                    poly.set_coeff(exps[0], v);
                }
                Coef::Ser(s) => {
                    is_series = true;
                    let shifted = s.with_var("x").shift(exps[0]);
                    poly = poly.add(&shifted)?;
                }
            }
        }
        if is_series || poly.terms().count() > 1 || poly.ord().map_or(false, |o| o > 0) {
            c = Coef::Ser(poly);
        } else if let Some((_, v)) = poly.leading() {
            c = Coef::Rat(v);
        }
        if !c.is_zero() {
            terms.insert(digits.clone(), c);
        }
        return Ok(());
    }
    let (head, tail) = base.split_at(base.len() - 1);
    let fg = &tail[0];
    let k = base.len() - 1;
    // peel off powers of f_G
    let mut rem = f.clone();
    let mut power = 0i64;
    loop {
        let (q, r) = rem.div_rem_monic(fg, 1);
        digits[k] = power;
        expand_rec(&r, head, digits, terms)?;
        digits[k] = 0;
        if q.is_zero() {
            break;
        }
        rem = q;
        power += 1;
    }
    Ok(())
}

impl AdicExpansion {
    /// Number of base functions `G`.
    pub fn arity(&self) -> usize {
        self.base.len()
    }

    /// Re-sum the expansion into a polynomial in `(X, Y)`.
    pub fn reconstruct(&self) -> MPoly {
        let mut out = MPoly::zero(2);
        for (digits, coef) in &self.terms {
            let mut term = MPoly::zero(2);
            term.add_term(&[0, 0], coef.clone());
            for (j, d) in digits.iter().enumerate() {
                if *d > 0 {
                    term = term.mul(&self.base[j].pow(*d as u32));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Digit-bound check of the expansion (outer digit unbounded above by
    /// construction).
    pub fn digits_in_bounds(&self) -> bool {
        self.terms.keys().all(|digits| {
            digits
                .iter()
                .enumerate()
                .take(self.arity() - 1)
                .all(|(j, d)| *d >= 0 && *d < self.bounds[j])
        })
    }

    /// The expansion rendered as a polynomial in ambient coordinates
    /// `(X_0, X_1, ..., X_G)`, where `X_0` carries the coefficient series
    /// and `X_{j}` stands for the `j`-th base function.
    pub fn as_ambient_poly(&self, nvars: usize) -> MPoly {
        let g = self.arity();
        assert!(nvars >= g + 1);
        let mut out = MPoly::zero(nvars);
        for (digits, coef) in &self.terms {
            let mut exps = vec![0i64; nvars];
            for (j, d) in digits.iter().enumerate() {
                exps[j + 1] = *d;
            }
            out.add_term(&exps, coef.clone());
        }
        out
    }
}

/// Value of an expansion under the divisorial valuation with the given
/// values on `(x_0, f_1, ..., f_G)`: the minimum over terms of
/// `ord(c_I) v_0 + sum i_j v_j`.
pub fn valuation_from_expansion(exp: &AdicExpansion, values: &[i64]) -> Result<i64> {
    assert_eq!(values.len(), exp.arity() + 1);
    let mut best: Option<i64> = None;
    for (digits, coef) in &exp.terms {
        let ord0 = match coef {
            Coef::Rat(_) => 0,
            Coef::Ser(s) => match s.ord() {
                Some(o) => o,
                None => match s.trunc() {
                    Trunc::Exact => continue,
                    Trunc::At(t) => {
                        return Err(Error::TruncationInsufficient(
                            "valuation",
                            format!("coefficient zero to x^{}", t),
                        ))
                    }
                },
            },
        };
        let mut v = ord0 * values[0];
        for (j, d) in digits.iter().enumerate() {
            v += d * values[j + 1];
        }
        best = Some(best.map_or(v, |b: i64| b.min(v)));
    }
    best.ok_or_else(|| Error::TruncationInsufficient("valuation", "zero expansion".into()))
}
