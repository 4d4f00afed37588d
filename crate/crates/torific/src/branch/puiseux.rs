//! Newton-Puiseux expansion over the rationals.
//!
//! Computes the Puiseux parametrizations of the branches of a plane curve
//! germ whose coefficients stay rational; whenever a Newton polygon step
//! would require an irrational root the algorithm aborts with
//! `NeedsFieldExtension` instead of extending the field.
//!
//! Conjugate stems are identified along the way: at a ramified step with
//! even `v` the roots `c` and `-c` of the edge polynomial generate the same
//! branch, so only the canonical (positive) one is followed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{gcd_i64, nth_root_exact, Int, Rat};
use crate::series::{Series, Trunc};
use crate::mpoly::MPoly;
use crate::{Error, Result};

use super::PuiseuxParam;

/// Internal dense-in-Y representation: `coeffs[j]` is the `Q[X]`-coefficient
/// of `Y^j` as an exponent map.
#[derive(Debug, Clone)]
struct Poly2 {
    coeffs: Vec<BTreeMap<i64, Rat>>,
}

impl Poly2 {
    fn from_mpoly(f: &MPoly) -> Result<Poly2> {
        let flat = f.flatten_exact()?;
        assert_eq!(flat.nvars(), 2);
        let dy = flat.degree(1).unwrap_or(0);
        let mut coeffs = vec![BTreeMap::new(); (dy + 1) as usize];
        for (exps, coef) in flat.terms() {
            let c = coef.as_exact_rat().unwrap();
            coeffs[exps[1] as usize].insert(exps[0], c);
        }
        Ok(Poly2 { coeffs })
    }

    fn deg_y(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_empty())
    }

    fn support(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            for (i, v) in c {
                if !v.is_zero() {
                    out.push((*i, j as i64));
                }
            }
        }
        out
    }

    fn coeff(&self, i: i64, j: i64) -> Rat {
        self.coeffs
            .get(j as usize)
            .and_then(|c| c.get(&i))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// `f(0, 0)`.
    fn at_origin(&self) -> Rat {
        self.coeff(0, 0)
    }

    /// Trailing `X` exponent common to all terms.
    fn x_content(&self) -> i64 {
        self.support().iter().map(|(i, _)| *i).min().unwrap_or(0)
    }

    /// True when `Y` divides `f`.
    fn y_divides(&self) -> bool {
        self.coeffs[0].values().all(|v| v.is_zero())
    }

    fn strip_y(&self) -> Poly2 {
        Poly2 { coeffs: self.coeffs[1..].to_vec() }
    }

    /// `f(x1^v, x1^u (c + y1)) / x1^r` where `r` is the minimal valuation.
    fn edge_transform(&self, v: i64, u: i64, c: &Rat) -> Poly2 {
        let dy = self.deg_y();
        let mut acc: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        // binomial expansion (c + y1)^j = sum_k C(j,k) c^(j-k) y1^k
        for (j, xpoly) in self.coeffs.iter().enumerate() {
            let j = j as i64;
            // binomial row for this j
            let mut binom = vec![Rat::one(); (j + 1) as usize];
            for k in 1..=j {
                binom[k as usize] =
                    &binom[(k - 1) as usize] * Rat::new((j - k + 1).into(), k.into());
            }
            for (i, a) in xpoly {
                if a.is_zero() {
                    continue;
                }
                let base = v * i + u * j;
                let mut cpow = Rat::one();
                // k descending so c^(j-k) builds up
                for k in (0..=j).rev() {
                    let coef = a * &binom[k as usize] * &cpow;
                    if !coef.is_zero() {
                        *acc.entry((base, k)).or_insert_with(Rat::zero) += coef;
                    }
                    cpow *= c;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        let r = acc.keys().map(|(i, _)| *i).min().unwrap_or(0);
        let mut coeffs = vec![BTreeMap::new(); (dy + 1) as usize];
        for ((i, k), val) in acc {
            coeffs[k as usize].insert(i - r, val);
        }
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.is_empty()) {
            coeffs.pop();
        }
        Poly2 { coeffs }
    }

    /// Evaluate at `(x, y(x))` with series arithmetic by Horner in `Y`.
    fn eval_series(&self, y: &Series, trunc: Trunc) -> Series {
        let var = y.var();
        let mut acc = Series::zero(var, trunc);
        for xpoly in self.coeffs.iter().rev() {
            acc = acc.mul(y).unwrap();
            let terms: Vec<(i64, Rat)> = xpoly.iter().map(|(e, c)| (*e, c.clone())).collect();
            let cser = Series::from_terms(var, &terms, trunc);
            acc = acc.add(&cser).unwrap();
        }
        acc
    }

    /// `df/dY`.
    fn dy(&self) -> Poly2 {
        if self.coeffs.len() <= 1 {
            return Poly2 { coeffs: vec![BTreeMap::new()] };
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| {
                c.iter()
                    .map(|(i, v)| (*i, v * Rat::from_integer((k as i64 + 1).into())))
                    .collect()
            })
            .collect();
        Poly2 { coeffs }
    }
}

/// Compact edges of the Newton polygon with positive inclination, as vertex
/// pairs `((i1, j1), (i2, j2))` with `j1 > j2`, `i1 < i2`.
fn newton_edges(support: &[(i64, i64)]) -> Vec<((i64, i64), (i64, i64))> {
    // minimal i per j
    let mut min_i: BTreeMap<i64, i64> = BTreeMap::new();
    for (i, j) in support {
        min_i.entry(*j).and_modify(|m| *m = (*m).min(*i)).or_insert(*i);
    }
    // Pareto staircase: iterate j ascending, keep points whose i strictly
    // improves on everything below; then flip to i ascending order.
    let mut stair: Vec<(i64, i64)> = Vec::new();
    let mut best_i = i64::MAX;
    for (j, i) in &min_i {
        if *i < best_i {
            stair.push((*i, *j));
            best_i = *i;
        }
    }
    stair.reverse(); // now i ascending, j descending
    // lower convex hull of the staircase: keep left turns
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| -> i64 {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in stair {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.windows(2).map(|w| ((w[0].0, w[0].1), (w[1].0, w[1].1))).collect()
}

/// Rational roots of an exact rational polynomial (coefficient map), with
/// multiplicities. Returns `(roots, leftover degree)`.
fn rational_roots(poly: &BTreeMap<i64, Rat>) -> (Vec<(Rat, usize)>, i64) {
    // clear denominators and content
    let mut lcm = Int::one();
    for c in poly.values() {
        lcm = lcm.lcm(c.denom());
    }
    let mut zp: BTreeMap<i64, Int> =
        poly.iter().map(|(e, c)| (*e, c.numer() * (&lcm / c.denom()))).collect();
    zp.retain(|_, c| !c.is_zero());
    if zp.is_empty() {
        return (Vec::new(), -1);
    }
    let mut roots = Vec::new();
    loop {
        let deg = *zp.keys().next_back().unwrap();
        let low = *zp.keys().next().unwrap();
        if low > 0 {
            // factor w^low: w = 0 roots are not used by the caller
            let shifted: BTreeMap<i64, Int> =
                zp.iter().map(|(e, c)| (e - low, c.clone())).collect();
            zp = shifted;
            continue;
        }
        if deg == 0 {
            return (roots, 0);
        }
        let a0 = zp.get(&0).unwrap().clone().abs();
        let al = zp.get(&deg).unwrap().clone().abs();
        let mut found = None;
        'cands: for p in divisors(&a0) {
            for q in divisors(&al) {
                for sgn in [1i64, -1] {
                    let cand = Rat::new(&p * BigInt::from(sgn), q.clone());
                    if eval_int_poly(&zp, &cand).is_zero() {
                        found = Some(cand);
                        break 'cands;
                    }
                }
            }
        }
        match found {
            None => return (roots, deg),
            Some(r) => {
                let mut mult = 0;
                while eval_int_poly(&zp, &r).is_zero() {
                    zp = deflate(&zp, &r);
                    mult += 1;
                }
                roots.push((r, mult));
                if zp.keys().next_back().map_or(true, |d| *d == 0) {
                    return (roots, 0);
                }
            }
        }
    }
}

fn divisors(n: &Int) -> Vec<Int> {
    let mut out = Vec::new();
    if n.is_zero() {
        return vec![Int::one()];
    }
    let mut d = Int::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

fn eval_int_poly(p: &BTreeMap<i64, Int>, x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    let deg = *p.keys().next_back().unwrap();
    for e in (0..=deg).rev() {
        acc *= x;
        if let Some(c) = p.get(&e) {
            acc += Rat::from_integer(c.clone());
        }
    }
    acc
}

/// Synthetic division by `(w - r)`, clearing denominators again.
fn deflate(p: &BTreeMap<i64, Int>, r: &Rat) -> BTreeMap<i64, Int> {
    let deg = *p.keys().next_back().unwrap();
    let mut q: BTreeMap<i64, Rat> = BTreeMap::new();
    let mut carry = Rat::zero();
    for e in (1..=deg).rev() {
        let c = p.get(&e).map(|c| Rat::from_integer(c.clone())).unwrap_or_else(Rat::zero);
        let qc = c + &carry;
        if !qc.is_zero() {
            q.insert(e - 1, qc.clone());
        }
        carry = qc * r;
    }
    let mut lcm = Int::one();
    for c in q.values() {
        lcm = lcm.lcm(c.denom());
    }
    q.iter().map(|(e, c)| (*e, c.numer() * (&lcm / c.denom()))).collect()
}

/// Square-freeness of `f` as a polynomial in `Y`: certified by finding a
/// sample line `x = x0` (avoiding leading-coefficient roots) on which
/// `gcd(f, df/dY)` is trivial, or exhausting the degree bound.
pub fn is_squarefree_in_y(f: &MPoly) -> Result<bool> {
    let p = Poly2::from_mpoly(f)?;
    if p.deg_y() == 0 {
        return Ok(true);
    }
    let fy = p.dy();
    let deg_bound = {
        let dx = p.support().iter().map(|(i, _)| *i).max().unwrap_or(0);
        dx * (2 * p.deg_y() - 1) + 1
    };
    let lead = &p.coeffs[p.deg_y() as usize];
    let mut tested = 0i64;
    let mut x0 = Int::one();
    while tested <= deg_bound {
        let x0r = Rat::from_integer(x0.clone());
        let lead_val = eval_map(lead, &x0r);
        if !lead_val.is_zero() {
            let fu = specialize(&p, &x0r);
            let gu = specialize(&fy, &x0r);
            if univariate_gcd_degree(&fu, &gu) == 0 {
                return Ok(true);
            }
            tested += 1;
        }
        x0 += 1;
    }
    Ok(false)
}

fn eval_map(m: &BTreeMap<i64, Rat>, x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    let Some(deg) = m.keys().next_back() else { return acc };
    for e in (0..=*deg).rev() {
        acc *= x;
        if let Some(c) = m.get(&e) {
            acc += c;
        }
    }
    acc
}

fn specialize(p: &Poly2, x0: &Rat) -> Vec<Rat> {
    p.coeffs.iter().map(|c| eval_map(c, x0)).collect()
}

fn univariate_gcd_degree(a: &[Rat], b: &[Rat]) -> usize {
    let trim = |v: &[Rat]| -> Vec<Rat> {
        let mut v = v.to_vec();
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let mut a = trim(a);
    let mut b = trim(b);
    while !b.is_empty() {
        // a mod b
        while a.len() >= b.len() && !a.is_empty() {
            let f = a.last().unwrap() / b.last().unwrap();
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                let v = c * &f;
                a[i + shift] -= v;
            }
            a = trim(&a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// All rational-coefficient Puiseux parametrizations of the branches of `f`
/// through the origin, each certified to `t`-order at least `t_order`.
pub fn newton_puiseux(f: &MPoly, t_order: i64) -> Result<Vec<PuiseuxParam>> {
    let p = Poly2::from_mpoly(f)?;
    if p.is_zero() {
        return Err(Error::InvalidBranch("zero polynomial".into()));
    }
    if !p.at_origin().is_zero() {
        return Err(Error::InvalidBranch("curve does not pass through the origin".into()));
    }
    if p.x_content() > 0 {
        return Err(Error::NeedsCoordinateSwap);
    }
    if !is_squarefree_in_y(f)? {
        return Err(Error::NotSquareFree);
    }
    let stems = expand(&p, t_order.max(4), 0)?;
    let mut out = Vec::new();
    for (n, zeta) in stems {
        out.push(PuiseuxParam::new(n, zeta)?);
    }
    // deterministic order: by ramification, then by series terms
    out.sort_by(|a, b| {
        a.ramification()
            .cmp(&b.ramification())
            .then_with(|| format!("{}", a.zeta()).cmp(&format!("{}", b.zeta())))
    });
    Ok(out)
}

/// Recursive Newton polygon expansion. Returns stems `(n, zeta)` with
/// `x = t^n`, `y = zeta(t)` and `zeta` certified modulo `t^budget` (or
/// exact when the expansion terminates).
fn expand(f: &Poly2, budget: i64, depth: usize) -> Result<Vec<(i64, Series)>> {
    if depth > 64 {
        return Err(Error::InvalidBranch("Newton polygon recursion too deep".into()));
    }
    let mut out = Vec::new();
    let mut f = f.clone();
    // terminating stem: y = 0 is a solution
    if f.y_divides() {
        out.push((1, Series::zero("t", Trunc::Exact)));
        f = f.strip_y();
        if f.y_divides() {
            return Err(Error::NotSquareFree);
        }
    }
    if !f.at_origin().is_zero() {
        // no further branches through the origin
        return Ok(out);
    }
    // regular point: unique series solution by Newton iteration
    if !f.dy().at_origin().is_zero() {
        out.push((1, implicit_series(&f, budget)));
        return Ok(out);
    }
    for ((i1, j1), (i2, j2)) in newton_edges(&f.support()) {
        let du = i2 - i1;
        let dv = j1 - j2;
        debug_assert!(du > 0 && dv > 0);
        let g = gcd_i64(du, dv);
        let (u, v) = (du / g, dv / g);
        // edge polynomial in w = c^v
        let mut psi: BTreeMap<i64, Rat> = BTreeMap::new();
        for (i, j) in f.support() {
            // on the edge segment: (i - i1) * dv == (j1 - j) * du, between the ends
            if j > j1 || j < j2 {
                continue;
            }
            if (i - i1) * dv != (j1 - j) * du {
                continue;
            }
            debug_assert_eq!((j - j2) % v, 0);
            psi.insert((j - j2) / v, f.coeff(i, j));
        }
        let (roots, leftover) = rational_roots(&psi);
        if leftover > 0 {
            return Err(Error::NeedsFieldExtension(format!(
                "edge polynomial has an irrational root (degree {} factor left)",
                leftover
            )));
        }
        for (rho, _mult) in roots {
            if rho.is_zero() {
                continue;
            }
            // c with c^v = rho, canonical choice: positive when v is even
            let c = match nth_root_exact(&rho, v as u32) {
                Some(c) => c,
                None => {
                    return Err(Error::NeedsFieldExtension(format!(
                        "edge root {} is not a rational {}-th power",
                        crate::rat::rat_str(&rho),
                        v
                    )))
                }
            };
            let f1 = f.edge_transform(v, u, &c);
            let stems = expand(&f1, budget, depth + 1)?;
            for (n1, eta) in stems {
                // x = t^(v n1), y = t^(u n1) (c + eta(t))
                let n = v * n1;
                let shift = u * n1;
                let unit = eta
                    .add(&Series::constant(eta.var(), c.clone(), eta.trunc()))
                    .unwrap();
                let zeta = unit.shift(shift);
                out.push((n, zeta));
            }
        }
    }
    Ok(out)
}

/// Series solution of `f(x, y) = 0` with `f(0,0) = 0`, `f_Y(0,0) != 0`,
/// by Newton iteration with progressively doubled precision: each step works
/// at the truncation it can certify, so early iterations stay cheap.
fn implicit_series(f: &Poly2, budget: i64) -> Series {
    let fy = f.dy();
    let mut y = Series::zero("t", Trunc::At(1));
    let mut prec = 1i64;
    while prec < budget {
        let next = (2 * prec).min(budget);
        let trunc = Trunc::At(next);
        let y_lift = lift_to(&y, trunc);
        let val = f.eval_series(&y_lift, trunc);
        let der = fy.eval_series(&y_lift, trunc);
        let step = val.mul(&der.inverse().expect("derivative is a unit")).unwrap();
        y = lift_to(&y_lift.sub(&step).unwrap(), trunc);
        prec = next;
    }
    debug_assert!(f.eval_series(&y, Trunc::At(budget)).is_zero_to_trunc());
    y
}

/// Reinterpret a series at a higher truncation bound (sound only inside the
/// Newton lift, where the dropped tail is about to be recomputed).
fn lift_to(s: &Series, trunc: Trunc) -> Series {
    let terms: Vec<(i64, Rat)> = s.terms().map(|(e, c)| (e, c.clone())).collect();
    Series::from_terms(s.var(), &terms, trunc)
}
