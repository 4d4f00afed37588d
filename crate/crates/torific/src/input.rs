//! Curve specification input: JSON schema and polynomial parsing.
//!
//! A curve is a list of branches, each given by one of:
//! - `equation`: a polynomial in `X, Y` with integer or rational
//!   coefficients (e.g. `"Y^2 - X^3 - X^4"`),
//! - `puiseux`: a parametrization `{n, terms: [[exp, num, den], ...]}`
//!   meaning `x = t^n, y = sum (num/den) t^exp`,
//! - `char_exponents`: characteristic exponents in `t`-units with optional
//!   `coefficients` (defaults to 1 for each characteristic term).

use serde::Deserialize;

use crate::branch::{branches_from_equation, BranchData, PuiseuxParam};
use crate::mpoly::MPoly;
use crate::rat::{rat_parse, Rat};
use crate::series::{Series, Trunc};
use crate::{Error, Result};

#[derive(Debug, Clone, Deserialize)]
pub struct CurveSpec {
    pub branches: Vec<BranchSpec>,
    /// Optional explicit sequence `x_0, ..., x_m` as polynomial strings
    /// (the first must be `X`); used instead of the genericity search.
    #[serde(default)]
    pub sequence: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct BranchSpec {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub equation: Option<String>,
    #[serde(default)]
    pub puiseux: Option<PuiseuxSpec>,
    #[serde(default)]
    pub char_exponents: Option<Vec<i64>>,
    #[serde(default)]
    pub coefficients: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PuiseuxSpec {
    pub n: i64,
    /// Terms as `[exponent, numerator, denominator]` triples.
    pub terms: Vec<(i64, i64, i64)>,
}

impl CurveSpec {
    pub fn parse(json: &str) -> Result<CurveSpec> {
        let spec: CurveSpec = serde_json::from_str(json)
            .map_err(|e| Error::InvalidInput(format!("curve spec: {}", e)))?;
        if spec.branches.is_empty() {
            return Err(Error::InvalidInput("curve spec has no branches".into()));
        }
        Ok(spec)
    }

    /// Expand an explicit sequence into branch data (`L_0` must be `X`).
    pub fn sequence_branches(&self, t_order: i64) -> Result<Option<Vec<BranchData>>> {
        let Some(strings) = &self.sequence else { return Ok(None) };
        if strings.is_empty() {
            return Err(Error::InvalidInput("empty sequence".into()));
        }
        let first = parse_poly(&strings[0])?;
        if first != MPoly::var(2, 0) {
            return Err(Error::InvalidInput("the sequence must start with X".into()));
        }
        let mut out = vec![BranchData::x_axis()];
        for (k, s) in strings.iter().enumerate().skip(1) {
            let poly = parse_poly(s)?;
            let mut branches =
                branches_from_equation(&format!("L{}", k), &poly, t_order)?;
            if branches.len() != 1 {
                return Err(Error::InvalidInput(format!(
                    "sequence entry {} is not a branch",
                    s
                )));
            }
            out.push(branches.remove(0));
        }
        Ok(Some(out))
    }

    /// Expand the specification into branch data at the given truncation.
    pub fn branches(&self, t_order: i64) -> Result<Vec<BranchData>> {
        let mut out = Vec::new();
        for (k, b) in self.branches.iter().enumerate() {
            let name = b.name.clone().unwrap_or_else(|| format!("C{}", k + 1));
            match (&b.equation, &b.puiseux, &b.char_exponents) {
                (Some(eq), None, None) => {
                    let poly = parse_poly(eq)?;
                    out.extend(branches_from_equation(&name, &poly, t_order)?);
                }
                (None, Some(p), None) => {
                    let terms: Vec<(i64, Rat)> = p
                        .terms
                        .iter()
                        .map(|(e, n, d)| (*e, Rat::new((*n).into(), (*d).into())))
                        .collect();
                    let zeta = Series::from_terms("t", &terms, Trunc::Exact);
                    let param = PuiseuxParam::new(p.n, zeta)?;
                    out.push(BranchData::from_param(&name, param, None)?);
                }
                (None, None, Some(chars)) => {
                    let coeffs: Vec<Rat> = match &b.coefficients {
                        None => vec![Rat::from_integer(1.into()); chars.len().saturating_sub(1)],
                        Some(list) => list
                            .iter()
                            .map(|s| {
                                rat_parse(s).ok_or_else(|| {
                                    Error::InvalidInput(format!("bad coefficient {}", s))
                                })
                            })
                            .collect::<Result<_>>()?,
                    };
                    if coeffs.len() + 1 != chars.len() {
                        return Err(Error::InvalidInput(
                            "one coefficient per characteristic exponent after the first".into(),
                        ));
                    }
                    let mut zeta = Series::zero("t", Trunc::Exact);
                    for (e, c) in chars.iter().skip(1).zip(coeffs) {
                        zeta.set_coeff(*e, c);
                    }
                    let param = PuiseuxParam::new(chars[0], zeta)?;
                    out.push(BranchData::from_param(&name, param, None)?);
                }
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "branch {} must have exactly one of equation/puiseux/char_exponents",
                        name
                    )))
                }
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// polynomial parser

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

/// Parse a polynomial in `X, Y` (case-insensitive variables, `^` powers,
/// optional `*`, parentheses, rational coefficients).
pub fn parse_poly(src: &str) -> Result<MPoly> {
    let mut p = Parser { chars: src.chars().peekable() };
    let poly = p.expr()?;
    p.skip_ws();
    if p.chars.peek().is_some() {
        return Err(Error::InvalidInput(format!(
            "unexpected trailing input in polynomial: {}",
            src
        )));
    }
    Ok(poly)
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        self.skip_ws();
        let mut negate = false;
        if let Some(&c) = self.chars.peek() {
            if c == '-' {
                self.chars.next();
                negate = true;
            } else if c == '+' {
                self.chars.next();
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('+') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('*') => {
                    self.chars.next();
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(c)
                    if c.is_ascii_alphanumeric() || *c == '(' =>
                {
                    // implicit multiplication: 2X, X Y, 3(X+Y)
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some('/') => {
                    self.chars.next();
                    self.skip_ws();
                    let d = self.number()?;
                    acc = acc.scale(&(Rat::from_integer(1.into()) / d));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly> {
        self.skip_ws();
        let base = match self.chars.peek() {
            Some('(') => {
                self.chars.next();
                let inner = self.expr()?;
                self.skip_ws();
                if self.chars.next() != Some(')') {
                    return Err(Error::InvalidInput("missing closing parenthesis".into()));
                }
                inner
            }
            Some(c) if *c == 'x' || *c == 'X' => {
                self.chars.next();
                MPoly::var(2, 0)
            }
            Some(c) if *c == 'y' || *c == 'Y' => {
                self.chars.next();
                MPoly::var(2, 1)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                MPoly::constant(2, n)
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "unexpected character {:?} in polynomial",
                    other
                )))
            }
        };
        self.skip_ws();
        if let Some('^') = self.chars.peek() {
            self.chars.next();
            self.skip_ws();
            let e = self.number()?;
            let e = crate::rat::to_i64(&e)
                .filter(|v| *v >= 0)
                .ok_or_else(|| Error::InvalidInput("exponent must be a non-negative integer".into()))?;
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<Rat> {
        self.skip_ws();
        let mut s = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.chars.next().unwrap());
        }
        if s.is_empty() {
            return Err(Error::InvalidInput("expected a number".into()));
        }
        rat_parse(&s).ok_or_else(|| Error::InvalidInput(format!("bad number {}", s)))
    }
}

/// Arc specifications for the space-curve mode:
/// `{arcs: [[ "t^4", "t^6", "t^13" ], ...]}` where each coordinate is a
/// polynomial in `t` (or `0`).
#[derive(Debug, Clone, Deserialize)]
pub struct ArcSpec {
    pub arcs: Vec<Vec<String>>,
}

impl ArcSpec {
    pub fn parse(json: &str) -> Result<ArcSpec> {
        serde_json::from_str(json)
            .map_err(|e| Error::InvalidInput(format!("arc spec: {}", e)))
    }

    pub fn series(&self) -> Result<Vec<Vec<Series>>> {
        self.arcs
            .iter()
            .map(|arc| arc.iter().map(|s| parse_t_poly(s)).collect())
            .collect()
    }
}

/// Parse a polynomial in `t` into an exact series.
pub fn parse_t_poly(src: &str) -> Result<Series> {
    // reuse the polynomial parser with t in the X slot
    let swapped: String = src
        .chars()
        .map(|c| match c {
            't' | 'T' => 'X',
            'x' | 'X' | 'y' | 'Y' => '?',
            other => other,
        })
        .collect();
    let poly = parse_poly(&swapped)?;
    let mut out = Series::zero("t", Trunc::Exact);
    for (exps, coef) in poly.terms() {
        if exps[1] != 0 {
            return Err(Error::InvalidInput("arc coordinates are polynomials in t".into()));
        }
        let c = coef
            .as_exact_rat()
            .ok_or_else(|| Error::InvalidInput("arc coefficient must be exact".into()))?;
        let prev = out.coeff(exps[0]) + c;
        out.set_coeff(exps[0], prev);
    }
    Ok(out)
}
