//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Exponent vectors all have the same length (the ambient variable count).
//! A coefficient is either an exact rational or a truncated power series in
//! the first variable `X0` — the shape taken by adic-expansion coefficients
//! `c_I(x)` and by re-embedding ideal generators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rat::{rat_str, Rat};
use crate::series::{Series, Trunc};
use crate::{Error, Result};

/// Polynomial coefficient: exact rational or series in the first variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coef {
    Rat(Rat),
    Ser(Series),
}

impl Coef {
    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Rat(r) => r.is_zero(),
            Coef::Ser(s) => s.is_exactly_zero(),
        }
    }

    /// True for a coefficient that is zero up to its tracked bound but not
    /// provably zero.
    pub fn is_zero_to_trunc(&self) -> bool {
        match self {
            Coef::Rat(r) => r.is_zero(),
            Coef::Ser(s) => s.is_zero_to_trunc(),
        }
    }

    pub fn as_exact_rat(&self) -> Option<Rat> {
        match self {
            Coef::Rat(r) => Some(r.clone()),
            Coef::Ser(s) => {
                if s.trunc() == Trunc::Exact && s.terms().all(|(e, _)| e == 0) {
                    Some(s.coeff(0))
                } else {
                    None
                }
            }
        }
    }

    fn promote(&self, var: &str) -> Series {
        match self {
            Coef::Rat(r) => Series::constant(var, r.clone(), Trunc::Exact),
            Coef::Ser(s) => s.clone(),
        }
    }

    fn add(&self, other: &Coef) -> Result<Coef> {
        match (self, other) {
            (Coef::Rat(a), Coef::Rat(b)) => Ok(Coef::Rat(a + b)),
            (a, b) => {
                let var = match (a, b) {
                    (Coef::Ser(s), _) | (_, Coef::Ser(s)) => s.var().to_string(),
                    _ => unreachable!(),
                };
                Ok(Coef::Ser(a.promote(&var).add(&b.promote(&var))?))
            }
        }
    }

    fn mul(&self, other: &Coef) -> Result<Coef> {
        match (self, other) {
            (Coef::Rat(a), Coef::Rat(b)) => Ok(Coef::Rat(a * b)),
            (a, b) => {
                let var = match (a, b) {
                    (Coef::Ser(s), _) | (_, Coef::Ser(s)) => s.var().to_string(),
                    _ => unreachable!(),
                };
                Ok(Coef::Ser(a.promote(&var).mul(&b.promote(&var))?))
            }
        }
    }

    fn neg(&self) -> Coef {
        match self {
            Coef::Rat(r) => Coef::Rat(-r.clone()),
            Coef::Ser(s) => Coef::Ser(s.neg()),
        }
    }
}

/// Sparse multivariate polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Coef>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(&vec![0; nvars], Coef::Rat(c));
        p
    }

    /// The variable `X_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        MPoly::monomial(nvars, exps, Rat::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<i64>, c: Rat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = MPoly::zero(nvars);
        p.add_term(&exps, Coef::Rat(c));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Coef)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every coefficient is an exact rational (or exact series).
    pub fn is_exact(&self) -> bool {
        self.terms.values().all(|c| match c {
            Coef::Rat(_) => true,
            Coef::Ser(s) => s.trunc() == Trunc::Exact,
        })
    }

    pub fn coef(&self, exps: &[i64]) -> Coef {
        self.terms.get(exps).cloned().unwrap_or(Coef::Rat(Rat::zero()))
    }

    pub fn add_term(&mut self, exps: &[i64], c: Coef) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.remove(exps);
        let merged = match entry {
            None => c,
            Some(prev) => prev.add(&c).expect("coefficient merge"),
        };
        if !merged.is_zero() {
            self.terms.insert(exps.to_vec(), merged);
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect();
        MPoly { nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(&e, c1.mul(c2).expect("coefficient product"));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v.mul(&Coef::Rat(c.clone())).unwrap()))
            .collect();
        MPoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut out = MPoly::one(self.nvars);
        let mut sq = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        out
    }

    /// Degree in variable `i`; `None` for the zero polynomial.
    pub fn degree(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Evaluate at a tuple of series, with certified output truncation.
    ///
    /// `args[i]` is substituted for `X_i`; series-in-`X0` coefficients are
    /// composed with `args[0]`.
    pub fn substitute(&self, args: &[Series]) -> Result<Series> {
        assert_eq!(args.len(), self.nvars, "argument count must match variables");
        let var = args[0].var().to_string();
        // Common bound so the sum stays meaningful even if one term's product
        // collapses to an empty series.
        let mut out: Option<Series> = None;
        for (exps, coef) in &self.terms {
            let mut term = match coef {
                Coef::Rat(r) => Series::constant(&var, r.clone(), Trunc::Exact),
                Coef::Ser(s) => s.compose(&args[0])?,
            };
            for (i, e) in exps.iter().enumerate() {
                if *e != 0 {
                    term = term.mul(&args[i].pow(*e)?)?;
                }
            }
            out = Some(match out {
                None => term,
                Some(acc) => acc.add(&term)?,
            });
        }
        Ok(out.unwrap_or_else(|| Series::zero(&var, Trunc::Exact)))
    }

    /// Evaluate at a tuple of series and certify the result order is below
    /// `want_ord`; errors with `TruncationInsufficient` otherwise.
    pub fn substitute_with_ord(&self, args: &[Series], want_ord: i64) -> Result<Series> {
        let s = self.substitute(args)?;
        match s.trunc() {
            Trunc::Exact => Ok(s),
            Trunc::At(t) if t > want_ord || s.ord().map_or(false, |o| o <= want_ord) => Ok(s),
            Trunc::At(t) => Err(Error::TruncationInsufficient(
                "substitute",
                format!("result certified only mod t^{}, needed order <= {}", t, want_ord),
            )),
        }
    }

    /// Polynomial composition `self(args)`; requires exact coefficients.
    pub fn compose(&self, args: &[MPoly]) -> Result<MPoly> {
        assert_eq!(args.len(), self.nvars);
        let out_vars = args[0].nvars;
        let mut out = MPoly::zero(out_vars);
        for (exps, coef) in &self.terms {
            let mut term = match coef {
                Coef::Rat(r) => MPoly::constant(out_vars, r.clone()),
                Coef::Ser(s) => {
                    if s.trunc() != Trunc::Exact {
                        return Err(Error::TruncationInsufficient(
                            "compose",
                            "series coefficient is not exact".into(),
                        ));
                    }
                    let mut p = MPoly::zero(out_vars);
                    for (e, c) in s.terms() {
                        p = p.add(&args[0].pow(e as u32).scale(c));
                    }
                    p
                }
            };
            for (i, e) in exps.iter().enumerate() {
                if *e != 0 {
                    term = term.mul(&args[i].pow(*e as u32));
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (exps, coef) in &self.terms {
            // product-rule part from the monomial
            if exps[i] != 0 {
                let mut e = exps.clone();
                e[i] -= 1;
                let scaled = coef.mul(&Coef::Rat(Rat::from_integer(exps[i].into()))).unwrap();
                out.add_term(&e, scaled);
            }
            // part from a series-in-X0 coefficient when differentiating X0
            if i == 0 {
                if let Coef::Ser(s) = coef {
                    let ds = series_derivative(s);
                    if !ds.is_exactly_zero() {
                        out.add_term(exps, Coef::Ser(ds));
                    }
                }
            }
        }
        out
    }

    /// Exact evaluation at a rational point; requires exact coefficients.
    pub fn eval_rat(&self, point: &[Rat]) -> Result<Rat> {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (exps, coef) in &self.terms {
            let c = coef.as_exact_rat().ok_or_else(|| {
                Error::TruncationInsufficient("eval", "coefficient is not exact".into())
            })?;
            let mut v = c;
            for (i, e) in exps.iter().enumerate() {
                for _ in 0..*e {
                    v *= &point[i];
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Substitute each variable by a Laurent monomial in new variables:
    /// `X_j -> prod_i U_i^(mat[i][j])`. Returns `(shift, poly)` where `shift`
    /// is the common monomial factor extracted so the polynomial part has
    /// non-negative exponents with zero minimum per variable on its support.
    ///
    /// Requires exact coefficients (a truncated series tail has no finite
    /// monomial image).
    pub fn monomial_substitute(&self, mat: &[Vec<i64>]) -> Result<(Vec<i64>, MPoly)> {
        let out_vars = mat.len();
        for row in mat {
            assert_eq!(row.len(), self.nvars);
        }
        let mut image: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (exps, coef) in &self.terms {
            let mut pieces: Vec<(Vec<i64>, Rat)> = Vec::new();
            match coef {
                Coef::Rat(r) => pieces.push((exps.clone(), r.clone())),
                Coef::Ser(s) => {
                    if s.trunc() != Trunc::Exact {
                        return Err(Error::TruncationInsufficient(
                            "monomial_substitute",
                            "series coefficient is not exact".into(),
                        ));
                    }
                    for (e, c) in s.terms() {
                        let mut ee = exps.clone();
                        ee[0] += e;
                        pieces.push((ee, c.clone()));
                    }
                }
            }
            for (e, c) in pieces {
                let u: Vec<i64> = (0..out_vars)
                    .map(|i| (0..self.nvars).map(|j| mat[i][j] * e[j]).sum())
                    .collect();
                let entry = image.entry(u).or_insert_with(Rat::zero);
                *entry += c;
            }
        }
        image.retain(|_, c| !c.is_zero());
        let shift: Vec<i64> = (0..out_vars)
            .map(|i| image.keys().map(|u| u[i]).min().unwrap_or(0))
            .collect();
        let mut out = MPoly::zero(out_vars);
        for (u, c) in image {
            let e: Vec<i64> = u.iter().zip(&shift).map(|(a, s)| a - s).collect();
            out.add_term(&e, Coef::Rat(c));
        }
        Ok((shift, out))
    }

    /// `w`-weight of the polynomial: `min` over terms of `w . alpha`, where a
    /// series coefficient contributes `w_0 * ord` from its leading term.
    ///
    /// Errors when a zero-to-truncation coefficient could hide a smaller
    /// weight than the certified minimum.
    pub fn weight(&self, w: &[Rat]) -> Result<Option<Rat>> {
        let mut best: Option<Rat> = None;
        let mut floor_best: Option<Rat> = None;
        for (exps, coef) in &self.terms {
            let base: Rat = exps
                .iter()
                .zip(w)
                .map(|(e, wi)| Rat::from_integer((*e).into()) * wi)
                .fold(Rat::zero(), |a, b| a + b);
            match coef {
                Coef::Rat(_) => {
                    best = Some(best.map_or(base.clone(), |b| b.min(base.clone())));
                }
                Coef::Ser(s) => {
                    if let Some(o) = s.ord() {
                        let val = base.clone() + Rat::from_integer(o.into()) * &w[0];
                        best = Some(best.map_or(val.clone(), |b| b.min(val)));
                    }
                    if let Trunc::At(t) = s.trunc() {
                        let fl = base + Rat::from_integer(t.into()) * &w[0];
                        floor_best = Some(floor_best.map_or(fl.clone(), |b: Rat| b.min(fl)));
                    }
                }
            }
        }
        // The weight is certified when every unknown tail sits strictly above
        // the attained minimum.
        if let (Some(b), Some(fl)) = (&best, &floor_best) {
            if fl <= b {
                return Err(Error::TruncationInsufficient(
                    "weight",
                    format!("tail floor {} not above attained weight {}", fl, b),
                ));
            }
        }
        if best.is_none() {
            if floor_best.is_some() {
                return Err(Error::TruncationInsufficient(
                    "weight",
                    "all coefficients are zero to truncation".into(),
                ));
            }
            return Ok(None);
        }
        Ok(best)
    }

    /// `w`-initial part: the sum of terms of minimal `w`-weight, with series
    /// coefficients contributing their leading `X0`-monomial.
    pub fn initial_form(&self, w: &[Rat]) -> Result<MPoly> {
        let Some(nu) = self.weight(w)? else {
            return Ok(MPoly::zero(self.nvars));
        };
        let mut out = MPoly::zero(self.nvars);
        for (exps, coef) in &self.terms {
            let base: Rat = exps
                .iter()
                .zip(w)
                .map(|(e, wi)| Rat::from_integer((*e).into()) * wi)
                .fold(Rat::zero(), |a, b| a + b);
            match coef {
                Coef::Rat(r) => {
                    if base == nu {
                        out.add_term(exps, Coef::Rat(r.clone()));
                    }
                }
                Coef::Ser(s) => {
                    for (e, c) in s.terms() {
                        let val = base.clone() + Rat::from_integer(e.into()) * &w[0];
                        if val == nu {
                            let mut ee = exps.clone();
                            ee[0] += e;
                            out.add_term(&ee, Coef::Rat(c.clone()));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Euclidean division by a polynomial monic in variable `v`:
    /// returns `(q, r)` with `self = q * g + r` and `deg_v r < deg_v g`.
    pub fn div_rem_monic(&self, g: &MPoly, v: usize) -> (MPoly, MPoly) {
        let dg = g.degree(v).expect("divisor must be nonzero");
        debug_assert!(is_monic_in(g, v), "divisor must be monic in the division variable");
        let mut q = MPoly::zero(self.nvars);
        let mut r = self.clone();
        loop {
            let Some(dr) = r.degree(v) else { break };
            if dr < dg {
                break;
            }
            // leading coefficient of r in v, as a polynomial
            let mut lead = MPoly::zero(self.nvars);
            for (e, c) in &r.terms {
                if e[v] == dr {
                    let mut ee = e.clone();
                    ee[v] = 0;
                    lead.add_term(&ee, c.clone());
                }
            }
            let mut shift_exp = vec![0; self.nvars];
            shift_exp[v] = dr - dg;
            let shift = MPoly::monomial(self.nvars, shift_exp, Rat::one());
            let qt = lead.mul(&shift);
            q = q.add(&qt);
            r = r.sub(&qt.mul(g));
        }
        (q, r)
    }

    /// Map term coefficients into exact rationals, flattening exact series
    /// coefficients into explicit `X0` monomials. Errors on truncated ones.
    pub fn flatten_exact(&self) -> Result<MPoly> {
        let mut out = MPoly::zero(self.nvars);
        for (exps, coef) in &self.terms {
            match coef {
                Coef::Rat(r) => out.add_term(exps, Coef::Rat(r.clone())),
                Coef::Ser(s) => {
                    if s.trunc() != Trunc::Exact {
                        return Err(Error::TruncationInsufficient(
                            "flatten",
                            "series coefficient is not exact".into(),
                        ));
                    }
                    for (e, c) in s.terms() {
                        let mut ee = exps.clone();
                        ee[0] += e;
                        out.add_term(&ee, Coef::Rat(c.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Insert `extra` new variables at the end (exponent 0 everywhere).
    pub fn extend_vars(&self, extra: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars + extra);
        for (e, c) in &self.terms {
            let mut ee = e.clone();
            ee.extend(std::iter::repeat(0).take(extra));
            out.add_term(&ee, c.clone());
        }
        out
    }

    /// Display with custom variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> MPolyDisplay<'a> {
        MPolyDisplay { poly: self, names }
    }
}

fn is_monic_in(g: &MPoly, v: usize) -> bool {
    let Some(d) = g.degree(v) else { return false };
    let lead: Vec<(&Vec<i64>, &Coef)> = g.terms.iter().filter(|(e, _)| e[v] == d).collect();
    lead.len() == 1
        && lead[0].0.iter().enumerate().all(|(i, e)| i == v || *e == 0)
        && lead[0].1.as_exact_rat().map_or(false, |r| r.is_one())
}

fn series_derivative(s: &Series) -> Series {
    let trunc = match s.trunc() {
        Trunc::Exact => Trunc::Exact,
        Trunc::At(t) => Trunc::At((t - 1).max(0)),
    };
    let mut out = Series::zero(s.var(), trunc);
    for (e, c) in s.terms() {
        if e > 0 {
            out.set_coeff(e - 1, c * Rat::from_integer(e.into()));
        }
    }
    out
}

pub struct MPolyDisplay<'a> {
    poly: &'a MPoly,
    names: &'a [String],
}

impl fmt::Display for MPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, coef) in self.poly.terms.iter().rev() {
            let cs = match coef {
                Coef::Rat(r) => rat_str(r),
                Coef::Ser(s) => format!("({})", s),
            };
            let (sign, mag) = if let Some(st) = cs.strip_prefix('-') {
                ("-", st.to_string())
            } else {
                ("+", cs)
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let vars: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(i, e)| {
                    if *e == 1 {
                        self.names[i].clone()
                    } else {
                        format!("{}^{}", self.names[i], e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag == "1" {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    /// Y^2 - X^3 - X^5 in variables (X, Y).
    fn curve() -> MPoly {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        y.pow(2).sub(&x.pow(3)).sub(&x.pow(5))
    }

    #[test]
    fn substitute_cusp_like_curve() {
        // args = (t^2, t^3 (1+t^2)^(1/2)) -> t^8 - t^10, order 8
        let f = curve();
        let t2 = Series::monomial("t", 2, rat(1, 1), Trunc::At(24));
        let unit =
            Series::from_terms("t", &[(0, rat(1, 1)), (2, rat(1, 1))], Trunc::At(24))
                .nth_root(2)
                .unwrap();
        let zeta = Series::monomial("t", 3, rat(1, 1), Trunc::At(24)).mul(&unit).unwrap();
        let val = f.substitute(&[t2, zeta]).unwrap();
        assert_eq!(val.ord(), Some(8));
        assert_eq!(val.coeff(8), rat(1, 1));
        assert_eq!(val.coeff(10), rat(-1, 1));
    }

    #[test]
    fn substitute_projection() {
        let x = MPoly::var(2, 0);
        let t2 = Series::monomial("t", 2, rat(1, 1), Trunc::At(10));
        let any = Series::monomial("t", 3, rat(1, 1), Trunc::At(10));
        assert_eq!(x.substitute(&[t2.clone(), any]).unwrap(), t2);
    }

    #[test]
    fn substitution_is_ring_hom() {
        let p = curve();
        let q = MPoly::var(2, 0).add(&MPoly::var(2, 1).pow(2));
        let a0 = Series::from_terms("t", &[(2, rat(1, 1)), (3, rat(1, 2))], Trunc::At(20));
        let a1 = Series::from_terms("t", &[(1, rat(2, 1)), (4, rat(-1, 3))], Trunc::At(20));
        let args = [a0, a1];
        let lhs = p.mul(&q).substitute(&args).unwrap();
        let rhs = p.substitute(&args).unwrap().mul(&q.substitute(&args).unwrap()).unwrap();
        let diff = lhs.sub(&rhs).unwrap();
        assert!(diff.is_zero_to_trunc(), "difference {}", diff);
    }

    #[test]
    fn division_by_monic() {
        // divide Y^2 - X^3 - X^5 by Y - X: q = Y + X, r = X^2 - X^3 - X^5
        let f = curve();
        let g = MPoly::var(2, 1).sub(&MPoly::var(2, 0));
        let (q, r) = f.div_rem_monic(&g, 1);
        assert_eq!(f, q.mul(&g).add(&r));
        assert!(r.degree(1).unwrap_or(0) < 1);
    }

    #[test]
    fn monomial_substitution_shifts_out_content() {
        // X -> U0 U1^2, Y -> U0 U1^3 on Y^2 - X^3: U0^2 U1^6 (1 - U0)
        let f = MPoly::var(2, 1).pow(2).sub(&MPoly::var(2, 0).pow(3));
        let mat = vec![vec![1, 1], vec![2, 3]];
        let (shift, p) = f.monomial_substitute(&mat).unwrap();
        assert_eq!(shift, vec![2, 6]);
        let expected = MPoly::one(2).sub(&MPoly::var(2, 0));
        assert_eq!(p, expected);
    }

    #[test]
    fn initial_form_with_weights() {
        let f = curve(); // Y^2 - X^3 - X^5
        let w = [rat(2, 1), rat(3, 1)];
        let inf = f.initial_form(&w).unwrap();
        let expected = MPoly::var(2, 1).pow(2).sub(&MPoly::var(2, 0).pow(3));
        assert_eq!(inf, expected);
        assert_eq!(f.weight(&w).unwrap(), Some(rat(6, 1)));
    }
}
