//! Plane branches over the rationals.
//!
//! A branch is given by a Puiseux parametrization `x = t^n, y = zeta(t)`
//! with rational coefficients, by a defining polynomial, or both. The module
//! computes:
//!
//! - Newton-Puiseux parametrizations of rational-coefficient branches
//!   ([`newton_puiseux`])
//! - defining polynomials from parametrizations, via power sums of the
//!   conjugates and Newton's identities ([`defining_poly_from_param`])
//! - characteristic exponents and the semigroup of a branch
//! - intersection multiplicities by series substitution
//! - contact exponents between branches (maximized over conjugates)

mod defining;
mod intersect;
mod puiseux;
mod semigroup;

pub use defining::defining_poly_from_param;
pub use intersect::{contact_exponent, intersection_multiplicity, same_branch, Contact, Intersection};
pub use puiseux::{is_squarefree_in_y, newton_puiseux};
pub use semigroup::{char_from_semigroup, semigroup_from_char, Semigroup};

use num_traits::Zero;

use crate::rat::{gcd_i64, Rat};
use crate::series::{Series, Trunc};
use crate::mpoly::MPoly;
use crate::{Error, Result};

/// Puiseux parametrization `x = t^n, y = zeta(t)` of a plane branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxParam {
    n: i64,
    zeta: Series,
}

impl PuiseuxParam {
    /// Validates `ord(zeta) >= 1` (or `zeta = 0` with `n = 1`) and, when the
    /// series is exact, primitivity: `gcd(n, support exponents) = 1`.
    pub fn new(n: i64, zeta: Series) -> Result<PuiseuxParam> {
        if n < 1 {
            return Err(Error::InvalidBranch(format!("ramification {} < 1", n)));
        }
        if let Some(o) = zeta.ord() {
            if o < 1 {
                return Err(Error::InvalidBranch(
                    "parametrization is not centered at the origin".into(),
                ));
            }
        } else if n != 1 {
            return Err(Error::InvalidBranch(
                "zero series needs ramification 1 to be primitive".into(),
            ));
        }
        let mut g = n;
        for (e, _) in zeta.terms() {
            g = gcd_i64(g, e);
        }
        if g != 1 && zeta.trunc() == Trunc::Exact {
            return Err(Error::InvalidBranch(format!(
                "parametrization is not primitive (gcd {})",
                g
            )));
        }
        Ok(PuiseuxParam { n, zeta })
    }

    pub fn ramification(&self) -> i64 {
        self.n
    }

    pub fn zeta(&self) -> &Series {
        &self.zeta
    }

    /// The arc `(x(t), y(t)) = (t^n, zeta(t))`.
    pub fn arc(&self) -> (Series, Series) {
        let x = Series::monomial(self.zeta.var(), self.n, Rat::from_integer(1.into()), Trunc::Exact);
        (x, self.zeta.clone())
    }

    /// Characteristic exponents `(beta_0, ..., beta_g)` in `t`-units:
    /// `beta_0 = n` and the support exponents where the gcd drops.
    pub fn char_exponents(&self) -> Result<Vec<i64>> {
        let mut beta = vec![self.n];
        let mut g = self.n;
        for (e, _) in self.zeta.terms() {
            if g == 1 {
                break;
            }
            let ng = gcd_i64(g, e);
            if ng < g {
                if e < self.n {
                    return Err(Error::NeedsCoordinateSwap);
                }
                beta.push(e);
                g = ng;
            }
        }
        if g != 1 {
            return match self.zeta.trunc() {
                Trunc::Exact => Err(Error::InvalidBranch(
                    "parametrization is not primitive".into(),
                )),
                Trunc::At(t) => Err(Error::TruncationInsufficient(
                    "char_exponents",
                    format!("gcd still {} at truncation t^{}", g, t),
                )),
            };
        }
        Ok(beta)
    }

    /// Truncation of the series strictly below `t`-exponent `bound`, as an
    /// exact series.
    pub fn truncate_below(&self, bound: &Rat) -> Series {
        let mut out = Series::zero(self.zeta.var(), Trunc::Exact);
        for (e, c) in self.zeta.terms() {
            if &Rat::from_integer(e.into()) < &(bound * Rat::from_integer(self.n.into())) {
                out.set_coeff(e, c.clone());
            }
        }
        out
    }
}

/// A plane branch with whatever presentations are available.
#[derive(Debug, Clone)]
pub struct BranchData {
    pub name: String,
    equation: Option<MPoly>,
    kind: BranchKind,
    chars: Vec<i64>,
    semigroup: Semigroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchKind {
    /// The branch `Z(X)`, parametrized by `(0, t)`.
    XAxis,
    /// A branch with parametrization `x = t^n, y = zeta(t)`.
    Param(PuiseuxParam),
}

impl BranchData {
    pub fn from_param(name: &str, param: PuiseuxParam, equation: Option<MPoly>) -> Result<Self> {
        let chars = param.char_exponents()?;
        let semigroup = semigroup_from_char(&chars)?;
        if let Some(eq) = &equation {
            assert_eq!(eq.nvars(), 2);
        }
        Ok(BranchData {
            name: name.to_string(),
            equation,
            kind: BranchKind::Param(param),
            chars,
            semigroup,
        })
    }

    /// The branch `Z(X)` (used as the reference branch `L_0`).
    pub fn x_axis() -> Self {
        BranchData {
            name: "L0".into(),
            equation: Some(MPoly::var(2, 0)),
            kind: BranchKind::XAxis,
            chars: vec![1],
            semigroup: semigroup_from_char(&[1]).unwrap(),
        }
    }

    pub fn is_x_axis(&self) -> bool {
        self.kind == BranchKind::XAxis
    }

    pub fn param(&self) -> Option<&PuiseuxParam> {
        match &self.kind {
            BranchKind::XAxis => None,
            BranchKind::Param(p) => Some(p),
        }
    }

    pub fn equation(&self) -> Option<&MPoly> {
        self.equation.as_ref()
    }

    /// Defining polynomial, computing it from the parametrization if absent.
    pub fn equation_or_compute(&self) -> Result<MPoly> {
        if let Some(eq) = &self.equation {
            return Ok(eq.clone());
        }
        match &self.kind {
            BranchKind::XAxis => Ok(MPoly::var(2, 0)),
            BranchKind::Param(p) => defining_poly_from_param(p),
        }
    }

    /// The arc `(x(t), y(t))` of the branch.
    pub fn arc(&self) -> (Series, Series) {
        match &self.kind {
            BranchKind::XAxis => (
                Series::zero("t", Trunc::Exact),
                Series::variable("t", Trunc::Exact),
            ),
            BranchKind::Param(p) => p.arc(),
        }
    }

    /// Characteristic exponents in `t`-units (`beta_0 = n`).
    pub fn char_exponents(&self) -> &[i64] {
        &self.chars
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    /// `(L_0 . branch)`: the ramification for parametrized branches.
    pub fn multiplicity_against_x(&self) -> Option<i64> {
        match &self.kind {
            BranchKind::XAxis => None,
            BranchKind::Param(p) => Some(p.ramification()),
        }
    }

    /// Index profile along the root-to-leaf segment: the index on the tree
    /// segment `(e_{k}, e_{k+1}]` between consecutive characteristic
    /// `x`-exponents is `n / gcd-chain`. Returns pairs
    /// `(char exponent in x-units, index after passing it)` starting with the
    /// implicit `(0, 1)`.
    pub fn index_profile(&self) -> Vec<(Rat, i64)> {
        let n = match &self.kind {
            BranchKind::XAxis => return vec![(Rat::zero(), 1)],
            BranchKind::Param(p) => p.ramification(),
        };
        let mut out = vec![(Rat::zero(), 1)];
        let mut g = n;
        for &b in &self.chars[1..] {
            g = gcd_i64(g, b);
            out.push((Rat::new(b.into(), n.into()), n / g));
        }
        out
    }

    /// Rename the branch.
    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

/// Rebuild branch data from an equation at a given series truncation.
pub fn branches_from_equation(name: &str, f: &MPoly, t_order: i64) -> Result<Vec<BranchData>> {
    let params = newton_puiseux(f, t_order)?;
    let many = params.len() > 1;
    params
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let label =
                if many { format!("{}.{}", name, i + 1) } else { name.to_string() };
            // the equation of the whole curve is attached only when it is a
            // single branch; factors are recovered per branch when needed
            let eq = if many { None } else { Some(f.clone()) };
            BranchData::from_param(&label, p, eq)
        })
        .collect()
}
