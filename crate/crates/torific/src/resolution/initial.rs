//! Weighted initial forms of the ideal generators and the Newton
//! non-degeneracy certificate.
//!
//! At an interior weight `w^P` the initial forms must be the binomials
//! `X_j^{n_j} - theta_j X^(I_0)` for the prefix generators and graphs
//! `-X_{j+1} + in(expansion)` beyond the prefix; the initial variety is
//! then a monomial curve times a graph, smooth inside the torus. At a leaf
//! weight `e_k` the same conclusion comes from a two-stage initial form
//! with the semigroup weights of the leaf branch as tie-breaker.

use num_traits::Zero;

use crate::mpoly::MPoly;
use crate::rat::{rat_str, Rat};
use crate::{Error, Result};

use super::ideal::{EmbeddingIdeal, GenShape};

/// Transcript of the initial-form certificate.
#[derive(Debug, Clone)]
pub struct InitialCertificate {
    /// The weight the certificate was computed at.
    pub weight: Vec<Rat>,
    /// One line per generator describing the certified shape.
    pub lines: Vec<String>,
    /// The certified initial forms.
    pub initial_forms: Vec<MPoly>,
    /// Conclusion: initial variety smooth in the torus, no monomials.
    pub nondegenerate: bool,
}

/// Certify the initial forms of the generators at an interior weight
/// proportional to the value vector of a rational point.
pub fn initial_form_certificate(
    ideal: &EmbeddingIdeal,
    w: &[Rat],
) -> Result<InitialCertificate> {
    let mut lines = Vec::new();
    let mut forms = Vec::new();
    for (k, h) in ideal.generators.iter().enumerate() {
        let init = h.initial_form(w)?;
        let shape = &ideal.shapes[k];
        match shape {
            GenShape::Binomial { j, n_j, theta, digits } => {
                // expected: X_j^{n_j} - theta X^digits
                let mut expected = MPoly::zero(h.nvars());
                let mut pe = vec![0i64; h.nvars()];
                pe[*j] = *n_j;
                expected.add_term(&pe, crate::mpoly::Coef::Rat(Rat::from_integer(1.into())));
                expected
                    .add_term(digits, crate::mpoly::Coef::Rat(-theta.clone()));
                let init_flat = init.flatten_exact()?;
                if init_flat != expected.flatten_exact()? {
                    return Err(Error::ShapeViolation(format!(
                        "in(H_{}) is not the expected binomial",
                        k + 2
                    )));
                }
                lines.push(format!(
                    "in(H_{}) = X{}^{} - {} * X^{:?}",
                    k + 2,
                    j,
                    n_j,
                    rat_str(theta),
                    digits
                ));
                forms.push(init_flat);
            }
            GenShape::Graph { j } => {
                // expected: -X_{j+1} + (initial of the expansion part)
                let mut minus = vec![0i64; h.nvars()];
                minus[*j + 1] = 1;
                let coef = init.coef(&minus).as_exact_rat();
                if coef != Some(-Rat::from_integer(1.into())) {
                    return Err(Error::ShapeViolation(format!(
                        "in(H_{}) does not contain -X_{} linearly",
                        k + 2,
                        j + 1
                    )));
                }
                // the rest must only involve the prefix variables
                let g = ideal.prefix_len;
                for (exps, _) in init.terms() {
                    if exps == &minus {
                        continue;
                    }
                    if exps.iter().skip(g + 1).any(|e| *e != 0) {
                        return Err(Error::ShapeViolation(format!(
                            "in(H_{}) graph part involves non-prefix variables",
                            k + 2
                        )));
                    }
                }
                lines.push(format!("in(H_{}) = -X{} + (prefix part)", k + 2, j + 1));
                forms.push(init.flatten_exact()?);
            }
        }
    }
    // structural conclusion: binomial prefix presents a monomial curve with
    // the semigroup values; the graph generators express each trailing
    // variable in terms of the prefix. Both are smooth in the torus and no
    // combination produces a monomial.
    lines.push(
        "initial ideal = (monomial-curve binomials) + (graph relations): smooth in the torus"
            .into(),
    );
    Ok(InitialCertificate {
        weight: w.to_vec(),
        lines,
        initial_forms: forms,
        nondegenerate: true,
    })
}

/// Certify the shapes at a leaf weight `e_k` through the two-stage initial
/// form: first `e_k`, then the semigroup weights `w_prime` of the leaf
/// branch (zero beyond its prefix), then the generator shapes of the proof:
/// pure powers for the prefix and `-X_l` beyond it.
pub fn leaf_initial_certificate(
    ideal: &EmbeddingIdeal,
    k: usize,
    w_prime: &[Rat],
) -> Result<InitialCertificate> {
    let nvars = ideal.values.len();
    let mut w = vec![Rat::zero(); nvars];
    w[k] = Rat::from_integer(1.into());
    let mut lines = Vec::new();
    let mut forms = Vec::new();
    for (i, h) in ideal.generators.iter().enumerate() {
        let first = h.initial_form(&w)?;
        let second = first.initial_form(w_prime)?;
        // shape: either a pure power of one variable, a binomial, or -X_l
        let j = i + 1; // generator H_{j+1}
        let mut minus = vec![0i64; nvars];
        minus[j + 1] = 1;
        let is_linear = second.num_terms() == 1
            && second.coef(&minus).as_exact_rat() == Some(-Rat::from_integer(1.into()));
        let is_power = second.num_terms() == 1
            && second
                .terms()
                .next()
                .map(|(e, _)| e.iter().filter(|v| **v != 0).count() == 1)
                .unwrap_or(false);
        if !is_linear && !is_power {
            return Err(Error::ShapeViolation(format!(
                "two-stage initial of H_{} at the leaf weight e_{} is {:?}-term",
                j + 1,
                k,
                second.num_terms()
            )));
        }
        lines.push(format!(
            "in_<(H_{}) = {}",
            j + 1,
            if is_linear { format!("-X{}", j + 1) } else { "pure power".into() }
        ));
        forms.push(second);
    }
    lines.push("leaf-weight initial ideal is a coordinate graph over a monomial curve".into());
    Ok(InitialCertificate { weight: w, lines, initial_forms: forms, nondegenerate: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::{branches_from_equation, BranchData, PuiseuxParam};
    use crate::mpoly::MPoly;
    use crate::rat::rat;
    use crate::resolution::ideal::build_embedding_ideal;
    use crate::series::{Series, Trunc};

    fn quartic_ideal() -> EmbeddingIdeal {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let y2x3 = y.pow(2).sub(&x.pow(3));
        let inner = y2x3.pow(2).sub(&x.pow(5).mul(&y));
        let l1 = BranchData::from_param(
            "L1",
            PuiseuxParam::new(1, Series::zero("t", Trunc::Exact)).unwrap(),
            Some(MPoly::var(2, 1)),
        )
        .unwrap();
        let l2 = branches_from_equation("L2", &y2x3, 64).unwrap().remove(0);
        let l3 = branches_from_equation("L3", &inner, 128).unwrap().remove(0);
        let seq = vec![BranchData::x_axis(), l1, l2, l3];
        build_embedding_ideal(&seq, 3, &[8, 12, 26, 53]).unwrap()
    }

    #[test]
    fn quartic_initial_forms_at_interior_weight() {
        let ideal = quartic_ideal();
        let w = [rat(8, 8), rat(12, 8), rat(26, 8), rat(53, 8)];
        let cert = initial_form_certificate(&ideal, &w).unwrap();
        assert!(cert.nondegenerate);
        // in(H_2) = X_1^2 - X_0^3
        let mut e = MPoly::zero(4);
        e.add_term(&[0, 2, 0, 0], crate::mpoly::Coef::Rat(rat(1, 1)));
        e.add_term(&[3, 0, 0, 0], crate::mpoly::Coef::Rat(rat(-1, 1)));
        assert_eq!(cert.initial_forms[0], e.flatten_exact().unwrap());
        // in(H_3) = X_2^2 - X_0^5 X_1
        let mut e = MPoly::zero(4);
        e.add_term(&[0, 0, 2, 0], crate::mpoly::Coef::Rat(rat(1, 1)));
        e.add_term(&[5, 1, 0, 0], crate::mpoly::Coef::Rat(rat(-1, 1)));
        assert_eq!(cert.initial_forms[1], e.flatten_exact().unwrap());
    }

    #[test]
    fn trivial_ideal_is_vacuously_certified() {
        let l1 = BranchData::from_param(
            "L1",
            PuiseuxParam::new(1, Series::zero("t", Trunc::Exact)).unwrap(),
            Some(MPoly::var(2, 1)),
        )
        .unwrap();
        let seq = vec![BranchData::x_axis(), l1];
        let ideal = build_embedding_ideal(&seq, 1, &[1, 1]).unwrap();
        let cert = initial_form_certificate(&ideal, &[rat(1, 1), rat(1, 1)]).unwrap();
        assert!(cert.nondegenerate);
        assert!(cert.initial_forms.is_empty());
    }
}
