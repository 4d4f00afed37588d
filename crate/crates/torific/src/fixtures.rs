//! Named example curves and deterministic random branch generators.
//!
//! The named fixtures are the worked examples used throughout the test
//! suite and the runnable examples; the random generators produce
//! desk-scale branches from valid characteristic sequences, driven by a
//! small deterministic PRNG so golden outputs stay stable.

use crate::branch::{branches_from_equation, BranchData, PuiseuxParam};
use crate::mpoly::MPoly;
use crate::rat::{gcd_i64, rat, Rat};
use crate::series::{Series, Trunc};
use crate::Result;

fn xy() -> (MPoly, MPoly) {
    (MPoly::var(2, 0), MPoly::var(2, 1))
}

/// `Y^2 - X^3 - X^4` (one branch, semigroup (2, 3)).
pub fn cusp_plus_quartic() -> MPoly {
    let (x, y) = xy();
    y.pow(2).sub(&x.pow(3)).sub(&x.pow(4))
}

/// `Y^2 - X^3 - X^5` (one branch, semigroup (2, 3)).
pub fn cusp_plus_quintic() -> MPoly {
    let (x, y) = xy();
    y.pow(2).sub(&x.pow(3)).sub(&x.pow(5))
}

/// The two-branch curve `(Y^2 - X^3 - X^4)(Y^2 - X^3 - X^5)`.
pub fn two_cusps_curve() -> MPoly {
    cusp_plus_quartic().mul(&cusp_plus_quintic())
}

/// `((Y^2 - X^3)^2 - X^5 Y)^2 - X^10 (Y^2 - X^3)`: one branch with
/// characteristic exponents (8, 12, 14, 15) and semigroup (8, 12, 26, 53).
pub fn quartic_semigroup_curve() -> MPoly {
    let (x, y) = xy();
    let y2x3 = y.pow(2).sub(&x.pow(3));
    let inner = y2x3.pow(2).sub(&x.pow(5).mul(&y));
    inner.pow(2).sub(&x.pow(10).mul(&y2x3))
}

/// `(Y^2-X^3)^2 - X^5 Y` (one branch, semigroup (4, 6, 13)).
pub fn semigroup_4_6_13_curve() -> MPoly {
    let (x, y) = xy();
    y.pow(2).sub(&x.pow(3)).pow(2).sub(&x.pow(5).mul(&y))
}

/// `(Y^2-X^3)^2 - X^6 Y` (one branch, semigroup (4, 6, 15)).
pub fn semigroup_4_6_15_curve() -> MPoly {
    let (x, y) = xy();
    y.pow(2).sub(&x.pow(3)).pow(2).sub(&x.pow(6).mul(&y))
}

/// The two-branch curve of the seven-divisor resolution.
pub fn seven_divisor_curve() -> MPoly {
    semigroup_4_6_13_curve().mul(&semigroup_4_6_15_curve())
}

/// Branches of the two-cusp curve at a sensible truncation.
pub fn two_cusps_branches() -> Result<Vec<BranchData>> {
    let mut out = branches_from_equation("C1", &cusp_plus_quartic(), 64)?;
    out.extend(branches_from_equation("C2", &cusp_plus_quintic(), 64)?);
    Ok(out)
}

/// Branches of the seven-divisor curve.
pub fn seven_divisor_branches() -> Result<Vec<BranchData>> {
    let mut out = branches_from_equation("C1", &semigroup_4_6_13_curve(), 160)?;
    out.extend(branches_from_equation("C2", &semigroup_4_6_15_curve(), 160)?);
    Ok(out)
}

/// The five-branch tree configuration: `L1 = Z(Y)` and the parametrized
/// branches `x^(5/3)`, `x^(5/3) + x^2 + x^(5/2)`, `x^(3/2)`,
/// `x^(3/2) + x^(7/4)`.
pub fn five_branch_configuration() -> Vec<BranchData> {
    let branch = |name: &str, n: i64, terms: &[(i64, i64, i64)]| {
        let t: Vec<(i64, Rat)> = terms.iter().map(|(e, p, q)| (*e, rat(*p, *q))).collect();
        let zeta = Series::from_terms("t", &t, Trunc::Exact);
        BranchData::from_param(name, PuiseuxParam::new(n, zeta).unwrap(), None).unwrap()
    };
    vec![
        branch("L1", 1, &[]),
        branch("L2", 3, &[(5, 1, 1)]),
        branch("L3", 6, &[(10, 1, 1), (12, 1, 1), (15, 1, 1)]),
        branch("L4", 2, &[(3, 1, 1)]),
        branch("L5", 4, &[(6, 1, 1), (7, 1, 1)]),
    ]
}

/// Deterministic splitmix64 PRNG (stable across platforms).
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `[lo, hi]`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }

    /// Small nonzero rational coefficient.
    pub fn coeff(&mut self) -> Rat {
        let num = loop {
            let v = self.range(-4, 4);
            if v != 0 {
                break v;
            }
        };
        let den = self.range(1, 3);
        rat(num, den)
    }
}

/// Random valid characteristic sequence with semigroup generators bounded
/// by `max_gen`.
pub fn random_char_sequence(rng: &mut Rng, max_gen: i64) -> Vec<i64> {
    loop {
        let n = *[2i64, 2, 3, 4, 4, 6, 8].get(rng.range(0, 6) as usize).unwrap();
        let mut beta = vec![n];
        let mut g = n;
        let mut cur = n;
        while g > 1 {
            // pick the next exponent to strictly drop the gcd
            let step = rng.range(1, 3);
            let mut next = cur + step;
            let mut guard = 0;
            while gcd_i64(g, next) == g {
                next += 1;
                guard += 1;
                if guard > 24 {
                    break;
                }
            }
            if gcd_i64(g, next) == g {
                break;
            }
            beta.push(next);
            g = gcd_i64(g, next);
            cur = next;
        }
        if g != 1 {
            continue;
        }
        if let Ok(sg) = crate::branch::semigroup_from_char(&beta) {
            if *sg.generators().last().unwrap() <= max_gen {
                return beta;
            }
        }
    }
}

/// Random branch with the given characteristic sequence: the characteristic
/// terms get nonzero coefficients, plus a few non-characteristic filler
/// terms on the allowed grid.
pub fn random_branch_from_char(rng: &mut Rng, beta: &[i64], name: &str) -> BranchData {
    let n = beta[0];
    let mut zeta = Series::zero("t", Trunc::Exact);
    if beta.len() == 1 {
        // smooth branch: a couple of integer terms
        for k in 0..rng.range(1, 2) {
            zeta.set_coeff(rng.range(1, 3) + k, rng.coeff());
        }
        if zeta.is_zero_to_trunc() {
            zeta.set_coeff(1, rat(1, 1));
        }
        return BranchData::from_param(name, PuiseuxParam::new(1, zeta).unwrap(), None)
            .unwrap();
    }
    let mut g = n;
    for (k, &b) in beta.iter().enumerate().skip(1) {
        zeta.set_coeff(b, rng.coeff());
        // filler terms on the current grid strictly between b and the next
        // characteristic exponent
        let hi = beta.get(k + 1).copied().unwrap_or(b + 2 * g.max(2));
        let mut e = b;
        loop {
            e += g;
            if e >= hi {
                break;
            }
            if rng.range(0, 2) == 0 {
                zeta.set_coeff(e, rng.coeff());
            }
        }
        g = gcd_i64(g, b);
    }
    BranchData::from_param(name, PuiseuxParam::new(n, zeta).unwrap(), None).unwrap()
}

/// Random desk-scale branch (semigroup generators bounded by `max_gen`).
pub fn random_branch(rng: &mut Rng, max_gen: i64, name: &str) -> BranchData {
    let beta = random_char_sequence(rng, max_gen);
    random_branch_from_char(rng, &beta, name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_branches_are_valid() {
        let mut rng = Rng::new(7);
        for k in 0..20 {
            let b = random_branch(&mut rng, 200, &format!("R{}", k));
            let beta = b.char_exponents();
            assert!(*b.semigroup().generators().last().unwrap() <= 200, "{:?}", beta);
        }
    }

    #[test]
    fn named_fixtures_expand() {
        assert_eq!(two_cusps_branches().unwrap().len(), 2);
        assert_eq!(seven_divisor_branches().unwrap().len(), 2);
    }
}
