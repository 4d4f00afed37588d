//! Semigroup of a plane branch from its characteristic exponents.

use crate::rat::gcd_i64;
use crate::{Error, Result};

/// Minimal generators of the semigroup of a branch, together with the gcd
/// chain `e_j` and the quotients `n_j = e_{j-1}/e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semigroup {
    gens: Vec<i64>,
    e: Vec<i64>,
    n: Vec<i64>,
}

impl Semigroup {
    /// Minimal generators `(beta-bar_0, ..., beta-bar_g)`.
    pub fn generators(&self) -> &[i64] {
        &self.gens
    }

    /// gcd chain `e_0 = beta-bar_0, e_j = gcd(e_{j-1}, beta-bar_j)`.
    pub fn gcd_chain(&self) -> &[i64] {
        &self.e
    }

    /// Quotients `n_j = e_{j-1}/e_j` with the convention `n_0 = 0`.
    pub fn quotients(&self) -> &[i64] {
        &self.n
    }

    pub fn genus(&self) -> usize {
        self.gens.len() - 1
    }

    /// Membership by bounded dynamic programming.
    pub fn contains(&self, v: i64) -> bool {
        if v < 0 {
            return false;
        }
        let mut reach = vec![false; (v + 1) as usize];
        reach[0] = true;
        for &g in &self.gens {
            if g == 0 {
                continue;
            }
            for i in g..=v {
                if reach[(i - g) as usize] {
                    reach[i as usize] = true;
                }
            }
        }
        reach[v as usize]
    }

    /// Conductor: every integer `>= c` is in the semigroup.
    pub fn conductor(&self) -> i64 {
        // c = sum (n_j - 1) beta-bar_j - beta-bar_0 + 1
        let mut c = 1 - self.gens[0];
        for j in 1..self.gens.len() {
            c += (self.n[j] - 1) * self.gens[j];
        }
        c.max(0)
    }
}

/// Semigroup generators from characteristic exponents `(beta_0, ..., beta_g)`
/// via `bb_0 = beta_0`, `bb_1 = beta_1`,
/// `bb_j = n_{j-1} bb_{j-1} + beta_j - beta_{j-1}`.
pub fn semigroup_from_char(beta: &[i64]) -> Result<Semigroup> {
    if beta.is_empty() || beta[0] < 1 {
        return Err(Error::NotCharacteristicSequence(
            format!("{:?}", beta),
            "first entry must be a positive ramification".into(),
        ));
    }
    let mut gens = vec![beta[0]];
    let mut e = vec![beta[0]];
    let mut n = vec![0i64];
    for j in 1..beta.len() {
        if beta[j] <= beta[j - 1] {
            return Err(Error::NotCharacteristicSequence(
                format!("{:?}", beta),
                "exponents must be strictly increasing".into(),
            ));
        }
        let ej = gcd_i64(e[j - 1], beta[j]);
        if ej == e[j - 1] {
            return Err(Error::NotCharacteristicSequence(
                format!("{:?}", beta),
                format!("no gcd drop at {}", beta[j]),
            ));
        }
        n.push(e[j - 1] / ej);
        let bb = if j == 1 {
            beta[1]
        } else {
            n[j - 1] * gens[j - 1] + beta[j] - beta[j - 1]
        };
        gens.push(bb);
        e.push(ej);
    }
    if *e.last().unwrap() != 1 {
        return Err(Error::NotCharacteristicSequence(
            format!("{:?}", beta),
            format!("gcd chain ends at {}", e.last().unwrap()),
        ));
    }
    let sg = Semigroup { gens, e, n };
    // n_j >= 2 and n_j bb_j < bb_{j+1}
    for j in 1..sg.gens.len() {
        debug_assert!(sg.n[j] > 1);
        if j + 1 < sg.gens.len() {
            debug_assert!(sg.n[j] * sg.gens[j] < sg.gens[j + 1]);
        }
    }
    Ok(sg)
}

/// Characteristic exponents back from semigroup generators (the inverse
/// recurrence), mainly used for validation.
pub fn char_from_semigroup(sg: &Semigroup) -> Vec<i64> {
    let g = sg.gens.len();
    let mut beta = vec![sg.gens[0]];
    for j in 1..g {
        let prev = *beta.last().unwrap();
        let b = if j == 1 {
            sg.gens[1]
        } else {
            prev + sg.gens[j] - sg.n[j - 1] * sg.gens[j - 1]
        };
        beta.push(b);
    }
    beta
}
