//! Generators of the re-embedding ideal.
//!
//! With `x_0, ..., x_m` the maximal contact functions, relabelled so the
//! prefix `x_0, ..., x_g` is a minimal generating sequence of the active
//! divisorial valuation, the ideal of the image surface in `k^(m+1)` is
//! generated by
//!
//! - `H_{j+1} = -X_{j+1} + (x_0..x_j)-adic expansion of x_{j+1}` for
//!   `j < g` (whose leading block is `X_j^{n_j} - theta_j X^(I_0)`), and
//! - `H_{j+1} = -X_{j+1} + (x_0..x_g)-adic expansion of x_{j+1}` for
//!   `j >= g`.

use num_traits::Zero;

use crate::branch::BranchData;
use crate::mpoly::{Coef, MPoly};
use crate::rat::Rat;
use crate::{Error, Result};

use super::adic::{adic_expansion, valuation_from_expansion};

/// Expected shape of the initial form of a generator.
#[derive(Debug, Clone)]
pub enum GenShape {
    /// `in(H_{j+1}) = X_j^{n_j} - theta X^(digits)` with the weight balance
    /// `n_j v_j = digits . v`.
    Binomial { j: usize, n_j: i64, theta: Rat, digits: Vec<i64> },
    /// `in(H_{j+1}) = -X_{j+1} + in(expansion part)`.
    Graph { j: usize },
}

/// The re-embedding ideal relative to an active divisor.
#[derive(Debug, Clone)]
pub struct EmbeddingIdeal {
    /// Generators `H_2, ..., H_m`, polynomials in `(X_0, ..., X_m)`.
    pub generators: Vec<MPoly>,
    /// Length `g` of the minimal generating prefix.
    pub prefix_len: usize,
    /// Divisorial values `(nu(x_0), ..., nu(x_m))` of the active divisor.
    pub values: Vec<i64>,
    /// Expected initial-form shapes per generator.
    pub shapes: Vec<GenShape>,
}

/// Build the ideal generators for the sequence (already relabelled so that
/// `seq[0..=g]` is a minimal generating sequence of the active divisor) and
/// its value vector.
pub fn build_embedding_ideal(
    seq: &[BranchData],
    g: usize,
    values: &[i64],
) -> Result<EmbeddingIdeal> {
    let m = seq.len() - 1;
    assert!(g >= 1 && g <= m, "prefix length out of range");
    assert_eq!(values.len(), m + 1);
    if !seq[0].is_x_axis() {
        return Err(Error::InvalidBranch("sequence must start with Z(X)".into()));
    }
    let equations: Vec<MPoly> = seq
        .iter()
        .skip(1)
        .map(|b| b.equation_or_compute())
        .collect::<Result<_>>()?;
    // the prefix values must have gcd 1 and be attainable as a semigroup
    let mut gcd = 0i64;
    for v in &values[..=g] {
        gcd = crate::rat::gcd_i64(gcd, *v);
    }
    if gcd != 1 {
        return Err(Error::PrefixNotGeneratingSequence);
    }
    let mut generators = Vec::new();
    let mut shapes = Vec::new();
    for j in 1..m {
        let target = &equations[j]; // x_{j+1}
        let prefix = j.min(g);
        let base: Vec<MPoly> = equations[..prefix].to_vec();
        let exp = adic_expansion(target, &base)?;
        if !exp.digits_in_bounds() {
            return Err(Error::PrefixNotGeneratingSequence);
        }
        // expansion as a polynomial in (X_0, ..., X_m)
        let ambient = exp.as_ambient_poly(m + 1);
        let mut h = ambient.clone();
        let mut minus_x = vec![0i64; m + 1];
        minus_x[j + 1] = 1;
        h.add_term(&minus_x, Coef::Rat(-Rat::from_integer(1.into())));
        // valuation consistency: the expansion value must match nu(x_{j+1})
        let pref_values: Vec<i64> = values[..=prefix].to_vec();
        let v = valuation_from_expansion(&exp, &pref_values)?;
        if j < g {
            // leading block: the two minimal-weight terms form the binomial
            if v >= values[j + 1] {
                return Err(Error::PrefixNotGeneratingSequence);
            }
            let w: Vec<Rat> =
                values.iter().map(|x| Rat::from_integer((*x).into())).collect();
            let init = ambient.initial_form(&w)?;
            let shape = binomial_shape(&init, j, m)?;
            shapes.push(shape);
        } else {
            if v != values[j + 1] {
                return Err(Error::ShapeViolation(format!(
                    "expansion of x_{} has value {}, expected {}",
                    j + 1,
                    v,
                    values[j + 1]
                )));
            }
            shapes.push(GenShape::Graph { j });
        }
        generators.push(h);
    }
    let ideal = EmbeddingIdeal {
        generators,
        prefix_len: g,
        values: values.to_vec(),
        shapes,
    };
    // sanity: substituting the functions kills every generator
    let mut args: Vec<MPoly> = vec![MPoly::var(2, 0)];
    args.extend(equations.iter().cloned());
    for (k, h) in ideal.generators.iter().enumerate() {
        if h.is_exact() {
            let composed = h.compose(&args)?;
            if !composed.is_zero() {
                return Err(Error::ShapeViolation(format!(
                    "generator H_{} does not vanish on the surface",
                    k + 2
                )));
            }
        }
    }
    Ok(ideal)
}

/// Plain generators of the re-embedding ideal for an arbitrary sequence:
/// `H_{j+1} = -X_{j+1} + (x_0, x_1)-adic expansion of x_{j+1}` for every
/// `j >= 1`. These generate the same ideal as the adapted generators but
/// carry no initial-form shape data.
pub fn simple_embedding_ideal(seq: &[BranchData]) -> Result<Vec<MPoly>> {
    let m = seq.len() - 1;
    if !seq[0].is_x_axis() {
        return Err(Error::InvalidBranch("sequence must start with Z(X)".into()));
    }
    let equations: Vec<MPoly> = seq
        .iter()
        .skip(1)
        .map(|b| b.equation_or_compute())
        .collect::<Result<_>>()?;
    if equations[0].degree(1) != Some(1) {
        return Err(Error::InvalidBranch(
            "the second sequence entry must be monic of degree 1 in Y".into(),
        ));
    }
    let mut out = Vec::new();
    for j in 1..m {
        let exp = adic_expansion(&equations[j], &equations[..1])?;
        let mut h = exp.as_ambient_poly(m + 1);
        let mut minus = vec![0i64; m + 1];
        minus[j + 1] = 1;
        h.add_term(&minus, Coef::Rat(-Rat::from_integer(1.into())));
        let mut args: Vec<MPoly> = vec![MPoly::var(2, 0)];
        args.extend(equations.iter().cloned());
        if h.is_exact() && !h.compose(&args)?.is_zero() {
            return Err(Error::ShapeViolation(format!(
                "generator H_{} does not vanish on the surface",
                j + 1
            )));
        }
        out.push(h);
    }
    Ok(out)
}

/// Extract the binomial shape `X_j^{n_j} - theta X^(digits)` from an
/// initial form.
fn binomial_shape(init: &MPoly, j: usize, m: usize) -> Result<GenShape> {
    let terms: Vec<(Vec<i64>, Coef)> =
        init.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    if terms.len() != 2 {
        return Err(Error::ShapeViolation(format!(
            "initial form of the expansion of x_{} has {} terms",
            j + 1,
            terms.len()
        )));
    }
    // one term is a pure power of X_j
    let pure = terms.iter().position(|(e, _)| {
        e.iter().enumerate().all(|(k, v)| (k == j && *v > 0) || (k != j && *v == 0))
    });
    let Some(p) = pure else {
        return Err(Error::ShapeViolation(format!(
            "no pure X_{} power in the leading block",
            j
        )));
    };
    let (pe, pc) = &terms[p];
    if pc.as_exact_rat() != Some(Rat::from_integer(1.into())) {
        return Err(Error::ShapeViolation("leading power is not monic".into()));
    }
    let (oe, oc) = &terms[1 - p];
    let theta = -oc.as_exact_rat().ok_or_else(|| {
        Error::ShapeViolation("companion term has a series coefficient".into())
    })?;
    if theta.is_zero() {
        return Err(Error::ShapeViolation("vanishing companion coefficient".into()));
    }
    let _ = m;
    Ok(GenShape::Binomial { j, n_j: pe[j], theta, digits: oe.clone() })
}
