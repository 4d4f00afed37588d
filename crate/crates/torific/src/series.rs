//! Exact truncated power series in one variable.
//!
//! A [`Series`] is a finite map `exponent -> rational` together with a
//! truncation bound: `Trunc::At(t)` means the value is only known modulo
//! `x^t` (all stored exponents are `< t`), while `Trunc::Exact` marks a
//! polynomial known exactly. Every operation propagates the tightest bound
//! that is provable from its inputs and never extends precision silently.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rat::{nth_root_exact, rat_str, Rat};
use crate::{Error, Result};

/// Truncation bound of a series: exact polynomial, or known modulo `x^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trunc {
    Exact,
    At(i64),
}

impl Trunc {
    pub fn min(self, other: Trunc) -> Trunc {
        match (self, other) {
            (Trunc::Exact, o) => o,
            (s, Trunc::Exact) => s,
            (Trunc::At(a), Trunc::At(b)) => Trunc::At(a.min(b)),
        }
    }

    /// Truncation shifted by `k` (for multiplication by `x^k`).
    pub fn shift(self, k: i64) -> Trunc {
        match self {
            Trunc::Exact => Trunc::Exact,
            Trunc::At(t) => Trunc::At(t + k),
        }
    }

    /// Is exponent `e` below the bound (i.e. a certified coefficient)?
    pub fn admits(self, e: i64) -> bool {
        match self {
            Trunc::Exact => true,
            Trunc::At(t) => e < t,
        }
    }

    pub fn bound(self) -> Option<i64> {
        match self {
            Trunc::Exact => None,
            Trunc::At(t) => Some(t),
        }
    }
}

/// Exact truncated power series with non-negative exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    var: String,
    coeffs: BTreeMap<i64, Rat>,
    trunc: Trunc,
}

impl Series {
    pub fn zero(var: &str, trunc: Trunc) -> Self {
        Series { var: var.to_string(), coeffs: BTreeMap::new(), trunc }
    }

    pub fn one(var: &str, trunc: Trunc) -> Self {
        Series::constant(var, Rat::one(), trunc)
    }

    pub fn constant(var: &str, c: Rat, trunc: Trunc) -> Self {
        let mut s = Series::zero(var, trunc);
        s.set_coeff(0, c);
        s
    }

    /// The variable itself, `x + O(x^t)`.
    pub fn variable(var: &str, trunc: Trunc) -> Self {
        Series::monomial(var, 1, Rat::one(), trunc)
    }

    pub fn monomial(var: &str, exp: i64, c: Rat, trunc: Trunc) -> Self {
        assert!(exp >= 0, "series exponents must be non-negative");
        let mut s = Series::zero(var, trunc);
        s.set_coeff(exp, c);
        s
    }

    /// Build from `(exponent, coefficient)` pairs.
    pub fn from_terms(var: &str, terms: &[(i64, Rat)], trunc: Trunc) -> Self {
        let mut s = Series::zero(var, trunc);
        for (e, c) in terms {
            let prev = s.coeff(*e) + c;
            s.set_coeff(*e, prev);
        }
        s
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Stored terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn set_coeff(&mut self, e: i64, c: Rat) {
        assert!(e >= 0, "series exponents must be non-negative");
        if !self.trunc.admits(e) || c.is_zero() {
            self.coeffs.remove(&e);
            if c.is_zero() {
                return;
            }
            if !self.trunc.admits(e) {
                return;
            }
        }
        self.coeffs.insert(e, c);
    }

    /// True when no coefficient is stored (zero up to the tracked bound).
    pub fn is_zero_to_trunc(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when the series is provably zero (exact and empty).
    pub fn is_exactly_zero(&self) -> bool {
        self.coeffs.is_empty() && self.trunc == Trunc::Exact
    }

    /// Order of the stored part; `None` when zero up to truncation.
    pub fn ord(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Leading (lowest-order) coefficient, if any term is stored.
    pub fn leading(&self) -> Option<(i64, Rat)> {
        self.coeffs.iter().next().map(|(e, c)| (*e, c.clone()))
    }

    /// Is the series a unit (nonzero constant term)?
    pub fn is_unit(&self) -> bool {
        self.ord() == Some(0)
    }

    /// Restrict the bound to `min(current, t)` and drop coefficients at or
    /// above it.
    pub fn truncated(&self, t: Trunc) -> Series {
        let trunc = self.trunc.min(t);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| trunc.admits(**e))
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        Series { var: self.var.clone(), coeffs, trunc }
    }

    fn check_var(&self, other: &Series) -> Result<()> {
        if self.var != other.var {
            return Err(Error::IncompatibleVariableTags(self.var.clone(), other.var.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_var(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = Series::zero(&self.var, trunc);
        for (e, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if trunc.admits(*e) {
                let v = out.coeff(*e) + c;
                out.set_coeff(*e, v);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect();
        Series { var: self.var.clone(), coeffs, trunc: self.trunc }
    }

    pub fn scale(&self, c: &Rat) -> Series {
        if c.is_zero() {
            return Series::zero(&self.var, self.trunc);
        }
        let coeffs = self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect();
        Series { var: self.var.clone(), coeffs, trunc: self.trunc }
    }

    /// Multiply by `x^k` (shifts exponents and the bound).
    pub fn shift(&self, k: i64) -> Series {
        assert!(k >= 0 || self.ord().map_or(true, |o| o + k >= 0));
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e + k, c.clone())).collect();
        Series { var: self.var.clone(), coeffs, trunc: self.trunc.shift(k) }
    }

    /// Product with the tightest provable bound:
    /// `min(t1 + ord(g), t2 + ord(f), t1 + t2)`.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_var(other)?;
        let trunc = mul_trunc(self, other);
        let mut out = Series::zero(&self.var, trunc);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = e1 + e2;
                if trunc.admits(e) {
                    let v = out.coeff(e) + c1 * c2;
                    out.set_coeff(e, v);
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse of a unit, with the same truncation bound.
    pub fn inverse(&self) -> Result<Series> {
        if !self.is_unit() {
            return Err(Error::NegativePowerOfNonUnit);
        }
        let bound = match self.trunc {
            Trunc::Exact => self
                .coeffs
                .keys()
                .next_back()
                .map(|e| {
                    // An exact non-monomial unit has an infinite inverse;
                    // keep enough terms to cover typical downstream use.
                    if self.coeffs.len() == 1 { 1 } else { e * 8 + 32 }
                })
                .unwrap_or(1),
            Trunc::At(t) => t,
        };
        let trunc = match self.trunc {
            Trunc::Exact if self.coeffs.len() == 1 => Trunc::Exact,
            Trunc::Exact => Trunc::At(bound),
            t => t,
        };
        let c0 = self.coeff(0);
        let c0_inv = Rat::one() / c0.clone();
        let mut inv = Series::zero(&self.var, trunc);
        inv.set_coeff(0, c0_inv.clone());
        // coefficient recursion: b_n = -1/c0 * sum_{k=1..n} c_k b_{n-k}
        for n in 1..bound {
            if !trunc.admits(n) {
                break;
            }
            let mut acc = Rat::zero();
            for (k, ck) in self.coeffs.range(1..=n) {
                let b = inv.coeff(n - *k);
                if !b.is_zero() {
                    acc += ck * &b;
                }
            }
            if !acc.is_zero() {
                inv.set_coeff(n, -acc * &c0_inv);
            }
        }
        Ok(inv)
    }

    /// Integer power, including negative powers of units.
    pub fn pow(&self, k: i64) -> Result<Series> {
        if k == 0 {
            // Truncation still limits what is provable about the constant 1.
            let trunc = self.trunc;
            return Ok(Series::one(&self.var, trunc));
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc: Option<Series> = None;
        let mut sq = base;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.mul(&sq)?;
        }
        Ok(acc.unwrap())
    }

    /// `n`-th root of a unit whose constant term is a rational `n`-th power.
    ///
    /// The result `g` satisfies `g^n = self` up to the input bound.
    pub fn nth_root(&self, n: u32) -> Result<Series> {
        assert!(n >= 1);
        if !self.is_unit() {
            return Err(Error::NegativePowerOfNonUnit);
        }
        let c0 = self.coeff(0);
        let r0 = nth_root_exact(&c0, n)
            .ok_or_else(|| Error::ConstantTermNotNthPower(rat_str(&c0), n))?;
        if n == 1 {
            return Ok(self.clone());
        }
        // self = c0 (1 + u), root = r0 * (1 + u)^(1/n) via binomial series.
        let u = self.scale(&(Rat::one() / c0)).sub(&Series::one(&self.var, self.trunc))?;
        let bound = match self.trunc {
            Trunc::Exact => {
                if u.is_zero_to_trunc() {
                    return Ok(Series::constant(&self.var, r0, Trunc::Exact));
                }
                // Roots of exact non-constant units are genuinely infinite
                // series; keep a generous default window.
                u.coeffs.keys().next_back().unwrap() * 8 + 32
            }
            Trunc::At(t) => t,
        };
        let trunc = Trunc::At(bound);
        let u = u.truncated(trunc);
        let ord_u = u.ord().unwrap_or(bound).max(1);
        let mut out = Series::one(&self.var, trunc);
        let mut upow = Series::one(&self.var, trunc);
        let mut binom = Rat::one();
        let alpha = Rat::new(1.into(), (n as i64).into());
        let mut k: i64 = 0;
        while (k + 1) * ord_u < bound {
            k += 1;
            // binom(alpha, k) = binom(alpha, k-1) * (alpha - k + 1) / k
            binom *= (alpha.clone() - Rat::from_integer((k - 1).into()))
                / Rat::from_integer(k.into());
            upow = upow.mul(&u)?;
            out = out.add(&upow.scale(&binom))?;
        }
        Ok(out.scale(&r0))
    }

    /// Composition `self(g)` where `ord(g) >= 1`.
    ///
    /// The result bound accounts for hidden tail terms of `self`: a tail of
    /// order `t` contributes from `t * ord(g)` on.
    pub fn compose(&self, g: &Series) -> Result<Series> {
        assert!(g.ord().map_or(true, |o| o >= 1), "composition needs ord(g) >= 1");
        let og = g.ord().unwrap_or_else(|| g.trunc.bound().unwrap_or(1)).max(1);
        let self_tail = match self.trunc {
            Trunc::Exact => Trunc::Exact,
            Trunc::At(t) => Trunc::At(t.saturating_mul(og)),
        };
        let trunc = self_tail.min(g.trunc);
        let mut out = Series::zero(g.var(), trunc);
        // Horner over the stored exponents, highest first.
        let exps: Vec<i64> = self.coeffs.keys().copied().collect();
        let mut acc = Series::zero(g.var(), trunc);
        let mut prev: Option<i64> = None;
        for &e in exps.iter().rev() {
            if let Some(p) = prev {
                acc = acc.mul(&g.pow(p - e)?)?;
            }
            acc = acc.add(&Series::constant(g.var(), self.coeff(e), trunc))?;
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc = acc.mul(&g.pow(p)?)?;
            out = out.add(&acc)?;
        }
        Ok(out.truncated(trunc))
    }

    /// Rename the series variable.
    pub fn with_var(&self, var: &str) -> Series {
        Series { var: var.to_string(), coeffs: self.coeffs.clone(), trunc: self.trunc }
    }

    /// Substitute `x -> x^k`, scaling all exponents (k >= 1).
    pub fn inflate(&self, k: i64) -> Series {
        assert!(k >= 1);
        let coeffs = self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect();
        let trunc = match self.trunc {
            Trunc::Exact => Trunc::Exact,
            Trunc::At(t) => Trunc::At(t.saturating_mul(k)),
        };
        Series { var: self.var.clone(), coeffs, trunc }
    }

    /// Keep only exponents divisible by `k` and divide them by `k`.
    pub fn deflate(&self, k: i64) -> Series {
        assert!(k >= 1);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| *e % k == 0)
            .map(|(e, c)| (e / k, c.clone()))
            .collect();
        let trunc = match self.trunc {
            Trunc::Exact => Trunc::Exact,
            Trunc::At(t) => Trunc::At(t.div_euclid(k) + i64::from(t % k != 0)),
        };
        Series { var: self.var.clone(), coeffs, trunc }
    }
}

fn mul_trunc(a: &Series, b: &Series) -> Trunc {
    match (a.trunc, b.trunc) {
        (Trunc::Exact, Trunc::Exact) => Trunc::Exact,
        _ => {
            let mut best: Option<i64> = None;
            let mut push = |v: Option<i64>| {
                if let Some(v) = v {
                    best = Some(best.map_or(v, |b: i64| b.min(v)));
                }
            };
            if let Trunc::At(t1) = a.trunc {
                push(b.ord().map(|o| t1 + o));
                if let Trunc::At(t2) = b.trunc {
                    push(Some(t1 + t2));
                }
            }
            if let Trunc::At(t2) = b.trunc {
                push(a.ord().map(|o| t2 + o));
            }
            match best {
                Some(t) => Trunc::At(t),
                // One factor is zero-to-truncation with no order info on the
                // other side: the product is zero to at least the same bound.
                None => a.trunc.min(b.trunc),
            }
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (e, c) in &self.coeffs {
                let cs = rat_str(c);
                let (sign, mag) = if let Some(stripped) = cs.strip_prefix('-') {
                    ("-", stripped.to_string())
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
                match *e {
                    0 => write!(f, "{}", mag)?,
                    1 if mag == "1" => write!(f, "{}", self.var)?,
                    1 => write!(f, "{}*{}", mag, self.var)?,
                    e if mag == "1" => write!(f, "{}^{}", self.var, e)?,
                    e => write!(f, "{}*{}^{}", mag, self.var, e)?,
                }
            }
        }
        if let Trunc::At(t) = self.trunc {
            write!(f, " + O({}^{})", self.var, t)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn t(terms: &[(i64, i64, i64)], trunc: i64) -> Series {
        let v: Vec<(i64, Rat)> = terms.iter().map(|(e, n, d)| (*e, rat(*n, *d))).collect();
        Series::from_terms("t", &v, Trunc::At(trunc))
    }

    #[test]
    fn geometric_series_inverse() {
        // (1 + t)^-1 = 1 - t + t^2 - t^3 + O(t^4)
        let f = t(&[(0, 1, 1), (1, 1, 1)], 4);
        let inv = f.pow(-1).unwrap();
        assert_eq!(inv, t(&[(0, 1, 1), (1, -1, 1), (2, 1, 1), (3, -1, 1)], 4));
    }

    #[test]
    fn cusp_square() {
        // (t^3 + t^5/2)^2 = t^6 + t^8 + t^10/4
        let f = Series::from_terms("t", &[(3, rat(1, 1)), (5, rat(1, 2))], Trunc::Exact);
        let sq = f.mul(&f).unwrap();
        assert_eq!(
            sq,
            Series::from_terms(
                "t",
                &[(6, rat(1, 1)), (8, rat(1, 1)), (10, rat(1, 4))],
                Trunc::Exact
            )
        );
    }

    #[test]
    fn ord_of_difference() {
        let f = t(&[(8, 1, 1), (10, -1, 1)], 16);
        assert_eq!(f.ord(), Some(8));
    }

    #[test]
    fn mul_trunc_is_tightest_bound() {
        // f = t^3 + O(t^5), g = t^2 + O(t^9): fg known mod t^(min(5+2, 9+3, 14)) = t^7
        let f = t(&[(3, 1, 1)], 5);
        let g = t(&[(2, 1, 1)], 9);
        assert_eq!(f.mul(&g).unwrap().trunc(), Trunc::At(7));
    }

    #[test]
    fn sqrt_one_plus_t2() {
        // (1 + t^2)^(1/2) = 1 + t^2/2 - t^4/8 + O(t^6)
        let f = t(&[(0, 1, 1), (2, 1, 1)], 6);
        let r = f.nth_root(2).unwrap();
        assert_eq!(r, t(&[(0, 1, 1), (2, 1, 2), (4, -1, 8)], 6));
        let back = r.mul(&r).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn sqrt_four_plus_four_t() {
        // sqrt(4 + 4t) = 2 sqrt(1 + t) = 2 + t - t^2/4 + O(t^3); squaring back
        // reproduces 4 + 4t exactly to the bound.
        let f = t(&[(0, 4, 1), (1, 4, 1)], 3);
        let r = f.nth_root(2).unwrap();
        assert_eq!(r, t(&[(0, 2, 1), (1, 1, 1), (2, -1, 4)], 3));
        assert_eq!(r.mul(&r).unwrap(), f);
    }

    #[test]
    fn sqrt_of_two_fails() {
        let f = t(&[(0, 2, 1), (1, 1, 1)], 3);
        assert!(matches!(f.nth_root(2), Err(Error::ConstantTermNotNthPower(..))));
    }

    #[test]
    fn variable_tags_must_match() {
        let f = Series::variable("t", Trunc::At(4));
        let g = Series::variable("u", Trunc::At(4));
        assert!(matches!(f.add(&g), Err(Error::IncompatibleVariableTags(..))));
    }

    #[test]
    fn compose_tracks_tail_order() {
        // f = 1 + x + O(x^3), g = t^2: hidden tail enters at t^6.
        let f = t(&[(0, 1, 1), (1, 1, 1)], 3).with_var("x");
        let g = Series::monomial("t", 2, rat(1, 1), Trunc::Exact);
        let c = f.compose(&g).unwrap();
        assert_eq!(c.trunc(), Trunc::At(6));
        assert_eq!(c.coeff(2), rat(1, 1));
    }

    #[test]
    fn root_of_exact_polynomial_unit() {
        let f = Series::from_terms("t", &[(0, rat(1, 1)), (1, rat(2, 1))], Trunc::Exact);
        let r = f.nth_root(2).unwrap();
        let back = r.mul(&r).unwrap();
        // ensure agreement to the root's (finite) bound
        for (e, c) in back.terms() {
            assert_eq!(*c, f.coeff(e), "exponent {}", e);
        }
    }
}
