//! Integer lattice linear algebra, cones and fans.
//!
//! Provides:
//! - Hermite/Smith normal forms over the integers, with transforms
//! - primitivity and regularity tests, canonical basis completion
//! - minimal regularization of two-dimensional cones (continued fractions)
//! - Star fans of a cone in a fan, star subdivisions
//! - the fan of `theta_j` cones used to resolve space curves lying in
//!   coordinate subspaces, together with its explicit refinement

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{Int, Rat};
use crate::{Error, Result};

pub type IVec = Vec<Int>;

/// Integer vector from i64 entries.
pub fn ivec(v: &[i64]) -> IVec {
    v.iter().map(|x| Int::from(*x)).collect()
}

pub fn ivec_is_zero(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// gcd of all coordinates (non-negative).
pub fn ivec_gcd(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

/// Divide by the coordinate gcd; errors on the zero vector.
pub fn primitive(v: &[Int]) -> Result<IVec> {
    let g = ivec_gcd(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

pub fn ivec_add(a: &[Int], b: &[Int]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn ivec_scale(a: &[Int], c: &Int) -> IVec {
    a.iter().map(|x| x * c).collect()
}

// ---------------------------------------------------------------------------
// Dense integer matrices (column convention: a matrix is a Vec of rows).

/// Matrix as rows. `mat[i][j]` is the entry in row `i`, column `j`.
pub type IMat = Vec<IVec>;

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).fold(Int::zero(), |s, v| s + v))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IMat, v: &[Int]) -> IVec {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).fold(Int::zero(), |s, t| s + t))
        .collect()
}

/// Determinant by fraction-free Gaussian elimination (Bareiss).
pub fn det(m: &IMat) -> Int {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n));
    let mut a = m.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = &num / &prev;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Inverse of a unimodular matrix via the adjugate.
pub fn inverse_unimodular(m: &IMat) -> IMat {
    let n = m.len();
    let d = det(m);
    assert!(d.clone().abs().is_one(), "matrix must be unimodular");
    let mut adj = vec![vec![Int::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: IMat = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
                .collect();
            let md = if n == 1 { Int::one() } else { det(&minor) };
            let sgn = if (i + j) % 2 == 0 { Int::one() } else { -Int::one() };
            adj[j][i] = sgn * md;
        }
    }
    if d.is_negative() {
        for row in &mut adj {
            for e in row.iter_mut() {
                *e = -e.clone();
            }
        }
    }
    adj
}

/// Column-style Hermite normal form.
///
/// Returns `(h, u)` with `m * u = h`, `u` unimodular, and `h` in column HNF:
/// pivots descend down the columns left to right, entries right of a pivot
/// row are reduced, columns past the rank are zero.
pub fn hnf_columns(m: &IMat) -> (IMat, IMat) {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    let mut h = m.clone();
    let mut u = identity(cols);

    let col_xchg = |h: &mut IMat, u: &mut IMat, a: usize, b: usize| {
        for r in h.iter_mut() {
            r.swap(a, b);
        }
        for r in u.iter_mut() {
            r.swap(a, b);
        }
    };
    // col_j += c * col_k
    let col_add = |h: &mut IMat, u: &mut IMat, j: usize, k: usize, c: &Int| {
        for r in h.iter_mut() {
            let v = &r[k] * c;
            r[j] += v;
        }
        for r in u.iter_mut() {
            let v = &r[k] * c;
            r[j] += v;
        }
    };
    let col_neg = |h: &mut IMat, u: &mut IMat, j: usize| {
        for r in h.iter_mut() {
            r[j] = -r[j].clone();
        }
        for r in u.iter_mut() {
            r[j] = -r[j].clone();
        }
    };

    let mut pivot_col = 0;
    for row in 0..rows {
        if pivot_col >= cols {
            break;
        }
        // gcd-reduce the row entries in columns >= pivot_col
        loop {
            let mut min_col: Option<usize> = None;
            for j in pivot_col..cols {
                if !h[row][j].is_zero() {
                    min_col = match min_col {
                        None => Some(j),
                        Some(k) => {
                            if h[row][j].clone().abs() < h[row][k].clone().abs() {
                                Some(j)
                            } else {
                                Some(k)
                            }
                        }
                    };
                }
            }
            let Some(mc) = min_col else { break };
            if mc != pivot_col {
                col_xchg(&mut h, &mut u, pivot_col, mc);
            }
            if h[row][pivot_col].is_negative() {
                col_neg(&mut h, &mut u, pivot_col);
            }
            let mut done = true;
            let p = h[row][pivot_col].clone();
            for j in pivot_col + 1..cols {
                if !h[row][j].is_zero() {
                    let q = h[row][j].div_floor(&p);
                    col_add(&mut h, &mut u, j, pivot_col, &(-q));
                    if !h[row][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[row][pivot_col].is_zero() {
            continue;
        }
        // reduce entries to the LEFT of the pivot in this row
        let p = h[row][pivot_col].clone();
        for j in 0..pivot_col {
            let q = h[row][j].div_floor(&p);
            if !q.is_zero() {
                col_add(&mut h, &mut u, j, pivot_col, &(-q));
            }
        }
        pivot_col += 1;
    }
    (h, u)
}

/// Elementary divisors (Smith normal form diagonal), all non-negative.
pub fn smith_divisors(m: &IMat) -> Vec<Int> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut divisors = Vec::new();
    let mut top = 0;
    while top < rows.min(cols) {
        // find a nonzero pivot
        let mut piv: Option<(usize, usize)> = None;
        'search: for i in top..rows {
            for j in top..cols {
                if !a[i][j].is_zero() {
                    piv = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        a.swap(top, pi);
        for row in a.iter_mut() {
            row.swap(top, pj);
        }
        loop {
            // clear column
            let mut changed = false;
            for i in top + 1..rows {
                if !a[i][top].is_zero() {
                    let q = a[i][top].div_floor(&a[top][top]);
                    for j in top..cols {
                        let v = &a[top][j] * &q;
                        a[i][j] -= v;
                    }
                    if !a[i][top].is_zero() {
                        a.swap(top, i);
                        changed = true;
                    }
                }
            }
            for j in top + 1..cols {
                if !a[top][j].is_zero() {
                    let q = a[top][j].div_floor(&a[top][top]);
                    for row in a.iter_mut().skip(top) {
                        let v = &row[top] * &q;
                        row[j] -= v;
                    }
                    if !a[top][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(top, j);
                        }
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        // ensure divisibility into the remaining block
        let mut fixed = false;
        'divis: for i in top + 1..rows {
            for j in top + 1..cols {
                if !(&a[i][j] % &a[top][top]).is_zero() {
                    let col: Vec<Int> = (0..rows).map(|r| a[r][j].clone()).collect();
                    for (r, v) in col.iter().enumerate() {
                        a[r][top] += v;
                    }
                    fixed = true;
                    break 'divis;
                }
            }
        }
        if fixed {
            continue;
        }
        divisors.push(a[top][top].clone().abs());
        top += 1;
    }
    divisors
}

/// Do the given vectors extend to a basis of the full lattice?
/// (All Smith divisors equal 1.)
pub fn part_of_basis(vectors: &[IVec]) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let m: IMat = vectors.to_vec();
    let divs = smith_divisors(&m);
    divs.len() == vectors.len() && divs.iter().all(|d| d.is_one())
}

/// Solve `A x = b` exactly over the rationals, `A` square nonsingular.
pub fn solve_rational(a: &IMat, b: &[Int]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            row.iter()
                .map(|v| Rat::from_integer(v.clone()))
                .chain(std::iter::once(Rat::from_integer(bi.clone())))
                .collect()
        })
        .collect();
    for k in 0..n {
        let piv = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, piv);
        let p = m[k][k].clone();
        for j in k..=n {
            m[k][j] = &m[k][j] / &p;
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in k..=n {
                    let v = &m[k][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

// ---------------------------------------------------------------------------
// Basis completion

/// Deterministically complete a prefix of lattice vectors to a basis of
/// `Z^rank`. The output starts with the prefix; the added vectors are HNF
/// canonical representatives, so the completion is reproducible.
pub fn complete_to_basis(prefix: &[IVec], rank: usize) -> Result<IMat> {
    for v in prefix {
        assert_eq!(v.len(), rank);
        if ivec_is_zero(v) {
            return Err(Error::ZeroVector);
        }
    }
    if !part_of_basis(prefix) {
        return Err(Error::NotPartOfBasis);
    }
    let k = prefix.len();
    if k == rank {
        return Ok(prefix.to_vec());
    }
    if k == 0 {
        return Ok(identity(rank));
    }
    // Prefer unit vectors in index order, so quotient and chart coordinates
    // stay aligned with the ambient ones whenever possible.
    let mut basis: Vec<IVec> = prefix.to_vec();
    for i in 0..rank {
        if basis.len() == rank {
            break;
        }
        let mut e = vec![Int::zero(); rank];
        e[i] = Int::one();
        basis.push(e);
        if !part_of_basis(&basis) {
            basis.pop();
        }
    }
    // With P the current rows, compute P * U = [L | 0] in column HNF with U
    // unimodular; then P = [L | 0] * U^{-1}, so the trailing rows of U^{-1}
    // extend P to a basis (the block matrix [[L,0],[0,I]] * U^{-1} is
    // unimodular because |det L| = 1 when P is part of a basis).
    if basis.len() < rank {
        let (_, u) = hnf_columns(&basis);
        let u_inv = inverse_unimodular(&u);
        for row in u_inv.into_iter().skip(basis.len()) {
            basis.push(row);
        }
        basis.truncate(rank);
    }
    // Canonicalize each added vector modulo the lattice spanned by the
    // vectors before it, by reducing against their column HNF.
    for idx in k..rank {
        let before: IMat = transpose(&basis[..idx].to_vec());
        let (h, _) = hnf_columns(&before);
        let reduced = reduce_mod_columns(&basis[idx], &h);
        basis[idx] = reduced;
    }
    let m: IMat = transpose(&basis);
    debug_assert!(det(&m).abs().is_one());
    Ok(basis)
}

fn transpose(rows: &IMat) -> IMat {
    if rows.is_empty() {
        return Vec::new();
    }
    let n = rows[0].len();
    (0..n).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Reduce `v` modulo the column lattice of the column-HNF matrix `h`,
/// producing the unique representative in the fundamental parallelepiped.
fn reduce_mod_columns(v: &[Int], h: &IMat) -> IVec {
    let rows = h.len();
    let cols = if rows > 0 { h[0].len() } else { 0 };
    let mut out = v.to_vec();
    for j in 0..cols {
        // pivot row of column j
        let Some(pr) = (0..rows).find(|&r| !h[r][j].is_zero()) else { continue };
        let q = out[pr].div_floor(&h[pr][j]);
        if !q.is_zero() {
            for r in 0..rows {
                let val = &h[r][j] * &q;
                out[r] -= val;
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Cones and fans

/// Strongly convex rational polyhedral cone, stored by primitive generators
/// sorted lexicographically. Only simplicial cones (linearly independent
/// generators) arise in this crate, and constructors enforce that.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    gens: Vec<IVec>,
    rank: usize,
}

impl Cone {
    /// The zero cone.
    pub fn origin(rank: usize) -> Cone {
        Cone { gens: Vec::new(), rank }
    }

    pub fn new(gens: Vec<IVec>, rank: usize) -> Result<Cone> {
        let mut prim: Vec<IVec> = Vec::new();
        for g in &gens {
            assert_eq!(g.len(), rank);
            let p = primitive(g)?;
            if !prim.contains(&p) {
                prim.push(p);
            }
        }
        prim.sort();
        let c = Cone { gens: prim, rank };
        if c.dim() != c.gens.len() {
            return Err(Error::NotAFan("cone generators are linearly dependent".into()));
        }
        Ok(c)
    }

    pub fn ray(v: &[Int]) -> Result<Cone> {
        Cone::new(vec![v.to_vec()], v.len())
    }

    pub fn gens(&self) -> &[IVec] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        if self.gens.is_empty() {
            return 0;
        }
        let m: IMat = self.gens.clone();
        smith_divisors(&m).iter().filter(|d| !d.is_zero()).count()
    }

    /// Is the cone regular (generators extend to a lattice basis)?
    pub fn is_regular(&self) -> bool {
        part_of_basis(&self.gens)
    }

    /// All faces, including the cone itself and the origin; faces of a
    /// simplicial cone are generated by generator subsets.
    pub fn faces(&self) -> Vec<Cone> {
        let n = self.gens.len();
        let mut out = Vec::new();
        for mask in 0..(1u64 << n) {
            let sub: Vec<IVec> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.gens[i].clone())
                .collect();
            out.push(Cone { gens: sub, rank: self.rank });
        }
        out
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.gens.iter().all(|g| other.gens.contains(g))
    }

    /// Solve for the (unique, by simpliciality) non-negative combination
    /// expressing `v`; `None` when `v` is outside the cone.
    pub fn membership(&self, v: &[Int]) -> Option<Vec<Rat>> {
        if ivec_is_zero(v) {
            return Some(vec![Rat::zero(); self.gens.len()]);
        }
        if self.gens.is_empty() {
            return None;
        }
        // Solve gens^T . lambda = v in the least-squares-free exact sense:
        // build the k x k Gram system after projecting on the generator span.
        let k = self.gens.len();
        let gram: IMat = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        self.gens[i]
                            .iter()
                            .zip(&self.gens[j])
                            .map(|(a, b)| a * b)
                            .fold(Int::zero(), |s, t| s + t)
                    })
                    .collect()
            })
            .collect();
        let rhs: IVec = (0..k)
            .map(|i| {
                self.gens[i].iter().zip(v).map(|(a, b)| a * b).fold(Int::zero(), |s, t| s + t)
            })
            .collect();
        let lambda = solve_rational(&gram, &rhs)?;
        if lambda.iter().any(|l| l < &Rat::zero()) {
            return None;
        }
        // verify the combination reproduces v (v must lie in the span)
        for coord in 0..self.rank {
            let mut acc = Rat::zero();
            for (l, g) in lambda.iter().zip(&self.gens) {
                acc += l * Rat::from_integer(g[coord].clone());
            }
            if acc != Rat::from_integer(v[coord].clone()) {
                return None;
            }
        }
        Some(lambda)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.membership(v).is_some()
    }
}

/// Intersection of two simplicial cones, as a list of primitive generators.
///
/// Solves `A lambda = B mu`, `lambda, mu >= 0`, by enumerating the extreme
/// rays of the solution cone inside the kernel of `[A | -B]`. The kernel
/// dimension must stay small (it always does for the fan shapes used here).
pub fn cone_intersection(a: &Cone, b: &Cone) -> Result<Vec<IVec>> {
    if a.gens.is_empty() || b.gens.is_empty() {
        return Ok(Vec::new());
    }
    let rank = a.rank;
    let ka = a.gens.len();
    let kb = b.gens.len();
    // kernel of the rank x (ka+kb) matrix [A | -B] over Q
    let cols = ka + kb;
    let mut m: Vec<Vec<Rat>> = (0..rank)
        .map(|r| {
            (0..cols)
                .map(|c| {
                    if c < ka {
                        Rat::from_integer(a.gens[c][r].clone())
                    } else {
                        -Rat::from_integer(b.gens[c - ka][r].clone())
                    }
                })
                .collect()
        })
        .collect();
    // row reduce
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rank).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let pv = m[row][col].clone();
        for j in 0..cols {
            m[row][j] = &m[row][j] / &pv;
        }
        for i in 0..rank {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..cols {
                    let v = &m[row][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rank {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kdim = free.len();
    if kdim == 0 {
        return Ok(Vec::new());
    }
    // kernel basis vectors in (lambda, mu) coordinates
    let mut kernel: Vec<Vec<Rat>> = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][f].clone();
        }
        kernel.push(v);
    }
    // Extreme rays of {y in R^kdim : sum y_i kernel_i >= 0 coordinatewise}.
    let ineqs: Vec<Vec<Rat>> = (0..cols)
        .map(|c| kernel.iter().map(|kv| kv[c].clone()).collect())
        .collect();
    let rays = polyhedral_cone_rays(&ineqs, kdim);
    let mut out: BTreeSet<IVec> = BTreeSet::new();
    for ray in rays {
        // image vector = A . lambda part of the ambient (lambda, mu) ray
        let mut v = vec![Rat::zero(); rank];
        for (idx, coef) in ray.iter().enumerate().take(ka) {
            for r in 0..rank {
                v[r] += coef * Rat::from_integer(a.gens[idx][r].clone());
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let scaled = clear_denominators(&v);
        out.insert(primitive(&scaled)?);
    }
    Ok(out.into_iter().collect())
}

/// Extreme rays of the pointed cone `{y in R^dim : ineq . y >= 0}` by the
/// incremental double description method. Rays are returned in the ambient
/// coordinates `(ineq_0 . y, ineq_1 . y, ...)` — the inequality rows are the
/// ambient coordinates of the kernel parametrization used by the caller.
fn polyhedral_cone_rays(ineqs: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    let dot = |a: &[Rat], b: &[Rat]| -> Rat {
        a.iter().zip(b).map(|(x, y)| x * y).fold(Rat::zero(), |s, t| s + t)
    };
    // lineality basis starts as the full space, ray set empty
    let mut lineality: Vec<Vec<Rat>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    let mut rays: Vec<Vec<Rat>> = Vec::new();
    for a in ineqs {
        if a.iter().all(|v| v.is_zero()) {
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            // use the lineality direction to clear the constraint
            let mut lstar = lineality.remove(pos);
            let mut val = dot(a, &lstar);
            if val < Rat::zero() {
                lstar = lstar.iter().map(|v| -v.clone()).collect();
                val = -val;
            }
            for l in lineality.iter_mut() {
                let f = dot(a, l) / &val;
                for (li, si) in l.iter_mut().zip(&lstar) {
                    *li -= &f * si;
                }
            }
            for r in rays.iter_mut() {
                let f = dot(a, r) / &val;
                for (ri, si) in r.iter_mut().zip(&lstar) {
                    *ri -= &f * si;
                }
            }
            rays.push(lstar);
        } else {
            // split rays by sign and combine across the hyperplane
            let vals: Vec<Rat> = rays.iter().map(|r| dot(a, r)).collect();
            let mut next: Vec<Vec<Rat>> = Vec::new();
            for (r, v) in rays.iter().zip(&vals) {
                if *v >= Rat::zero() {
                    next.push(r.clone());
                }
            }
            for (i, (ri, vi)) in rays.iter().zip(&vals).enumerate() {
                if *vi <= Rat::zero() {
                    continue;
                }
                for (rj, vj) in rays.iter().zip(&vals).skip(i + 1) {
                    if *vj >= Rat::zero() {
                        continue;
                    }
                    // w = vi * rj - vj * ri lies on the hyperplane
                    let w: Vec<Rat> = ri
                        .iter()
                        .zip(rj)
                        .map(|(x, y)| vi * y - vj * x)
                        .collect();
                    if w.iter().any(|v| !v.is_zero()) {
                        next.push(w);
                    }
                }
            }
            rays = next;
        }
    }
    debug_assert!(lineality.is_empty(), "intersection cone must be pointed");
    // keep extreme rays only: active constraints must have rank dim - 1
    let mut out: Vec<Vec<Rat>> = Vec::new();
    for r in rays {
        let active: Vec<Vec<Rat>> =
            ineqs.iter().filter(|a| dot(a, &r).is_zero()).cloned().collect();
        if rank_rat(&active, dim) + 1 >= dim && !out_contains(&out, &r, &dot) {
            out.push(r);
        }
    }
    // return rays in ambient coordinates
    out.iter()
        .map(|y| ineqs.iter().map(|a| dot(a, y)).collect())
        .collect()
}

fn rank_rat(rows: &[Vec<Rat>], dim: usize) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..dim {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        let pv = m[rank][col].clone();
        for j in 0..dim {
            m[rank][j] = &m[rank][j] / &pv;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..dim {
                    let v = &m[rank][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn out_contains(
    rays: &[Vec<Rat>],
    cand: &[Rat],
    dot: &impl Fn(&[Rat], &[Rat]) -> Rat,
) -> bool {
    rays.iter().any(|r| {
        // proportional with positive factor: r . cand dense check
        let rr = dot(r, r);
        let rc = dot(r, cand);
        let cc = dot(cand, cand);
        rc > Rat::zero() && &rc * &rc == rr * cc
    })
}

fn clear_denominators(v: &[Rat]) -> IVec {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// A finite collection of cones closed under faces with pairwise
/// intersections along common faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    cones: Vec<Cone>,
    rank: usize,
}

impl Fan {
    /// Build a fan from maximal cones: adds faces and validates pairwise
    /// intersections.
    pub fn from_cones(maximal: Vec<Cone>, rank: usize) -> Result<Fan> {
        let mut set: BTreeSet<Cone> = BTreeSet::new();
        for c in &maximal {
            assert_eq!(c.rank(), rank);
            for f in c.faces() {
                set.insert(f);
            }
        }
        let cones: Vec<Cone> = set.into_iter().collect();
        let fan = Fan { cones, rank };
        fan.validate()?;
        Ok(fan)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.cones.iter().enumerate() {
            for b in self.cones.iter().skip(i + 1) {
                let inter = cone_intersection(a, b)?;
                let f = Cone { gens: inter.clone(), rank: self.rank };
                // Intersection rays must be existing rays forming a face of
                // both cones, and span the whole intersection.
                if !f.is_face_of(a) || !f.is_face_of(b) {
                    return Err(Error::NotAFan(format!(
                        "cones {:?} and {:?} meet in {:?}, not a common face",
                        a.gens, b.gens, inter
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.cones.contains(c)
    }

    /// All rays (1-dimensional cones) of the fan.
    pub fn rays(&self) -> Vec<IVec> {
        let mut out: BTreeSet<IVec> = BTreeSet::new();
        for c in &self.cones {
            if c.gens.len() == 1 {
                out.insert(c.gens[0].clone());
            }
        }
        out.into_iter().collect()
    }

    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.cones
            .iter()
            .filter(|c| {
                !self
                    .cones
                    .iter()
                    .any(|d| d != *c && c.is_face_of(d))
            })
            .collect()
    }

    /// Star fan of `sigma`: images in `N/N_sigma` of the cones containing
    /// `sigma`, with the quotient computed through a saturated basis.
    pub fn star(&self, sigma: &Cone) -> Result<(Fan, QuotientMap)> {
        if !self.contains_cone(sigma) {
            return Err(Error::ConeNotInFan);
        }
        let q = QuotientMap::new(sigma, self.rank)?;
        let mut maximal: Vec<Cone> = Vec::new();
        for c in &self.cones {
            if sigma.is_face_of(c) {
                let imgs: Vec<IVec> = c
                    .gens
                    .iter()
                    .map(|g| q.project(g))
                    .filter(|v| !ivec_is_zero(v))
                    .collect();
                let cone = Cone::new(imgs, q.quotient_rank())?;
                maximal.push(cone);
            }
        }
        let fan = Fan::from_cones(maximal, q.quotient_rank())?;
        Ok((fan, q))
    }

    /// Star subdivision at a primitive vector `v` lying in the fan support:
    /// every cone containing `v` is replaced by the cones spanned by `v`
    /// and the facets not containing `v`.
    pub fn star_subdivide(&self, v: &[Int]) -> Result<Fan> {
        let v = primitive(v)?;
        let mut maximal: Vec<Cone> = Vec::new();
        for c in self.maximal_cones() {
            if !c.contains(&v) {
                maximal.push(c.clone());
                continue;
            }
            if c.gens().contains(&v) {
                maximal.push(c.clone());
                continue;
            }
            // simplicial cone: drop one generator at a time, keep subcones
            // (with v) that still contain... the standard star subdivision
            // replaces c by cone(v, F) for facets F of c not containing v.
            let n = c.gens.len();
            for skip in 0..n {
                let mut gens: Vec<IVec> =
                    (0..n).filter(|&i| i != skip).map(|i| c.gens[i].clone()).collect();
                let facet = Cone::new(gens.clone(), self.rank)?;
                if facet.contains(&v) {
                    continue;
                }
                gens.push(v.clone());
                maximal.push(Cone::new(gens, self.rank)?);
            }
        }
        Fan::from_cones(maximal, self.rank)
    }

    /// Direct (Minkowski) sum with a fan living in complementary coordinates.
    pub fn direct_sum(&self, other: &Fan) -> Result<Fan> {
        let rank = self.rank;
        assert_eq!(rank, other.rank);
        let mut maximal = Vec::new();
        for a in self.maximal_cones() {
            for b in other.maximal_cones() {
                let mut gens = a.gens.clone();
                gens.extend(b.gens.iter().cloned());
                maximal.push(Cone::new(gens, rank)?);
            }
        }
        Fan::from_cones(maximal, rank)
    }
}

/// Projection data for the quotient lattice `N(sigma) = N / N_sigma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    /// Full unimodular basis whose first vectors span the saturation of
    /// `N_sigma`; rows are basis vectors.
    basis: IMat,
    fixed: usize,
    rank: usize,
}

impl QuotientMap {
    pub fn new(sigma: &Cone, rank: usize) -> Result<QuotientMap> {
        // saturated basis of the sublattice spanned by sigma
        let sat = saturation_basis(sigma.gens(), rank)?;
        let fixed = sat.len();
        let basis = complete_to_basis(&sat, rank)?;
        Ok(QuotientMap { basis, fixed, rank })
    }

    pub fn quotient_rank(&self) -> usize {
        self.rank - self.fixed
    }

    /// Image of a lattice vector in the quotient coordinates.
    pub fn project(&self, v: &[Int]) -> IVec {
        // coordinates of v in the full basis, keep the trailing block
        let mat: IMat = transpose(&self.basis);
        let coords = solve_rational(&mat, v).expect("basis is invertible");
        coords[self.fixed..]
            .iter()
            .map(|c| {
                assert!(crate::rat::is_integer(c), "lattice vector must have integer coords");
                c.numer().clone()
            })
            .collect()
    }
}

/// Basis of the saturation of the span of the given vectors.
pub fn saturation_basis(vectors: &[IVec], rank: usize) -> Result<Vec<IVec>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    // Column HNF of the matrix with the vectors as columns gives a basis of
    // the column lattice; dividing Smith-style gives the saturation. We use
    // the rational row space: solve for a primitive basis via HNF of rows,
    // then saturate each pivot.
    let m: IMat = transpose(&vectors.to_vec());
    let (h, _) = hnf_columns(&m);
    // nonzero columns of h span the same lattice; saturate by clearing
    // iterated gcds: compute the Smith decomposition of those columns and
    // keep unit-divisor combinations. Simplest exact route: use the row
    // space: a saturated basis is obtained from the reduced row echelon form
    // over Q, cleared to primitive integer vectors, then HNF'd.
    let cols: Vec<IVec> = (0..h[0].len())
        .map(|j| (0..rank).map(|i| h[i][j].clone()).collect::<IVec>())
        .filter(|c| !ivec_is_zero(c))
        .collect();
    // rational row echelon of the span
    let mut rows: Vec<Vec<Rat>> = cols
        .iter()
        .map(|c| c.iter().map(|v| Rat::from_integer(v.clone())).collect())
        .collect();
    let mut piv_cols = Vec::new();
    let mut r = 0;
    for c in 0..rank {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pv = rows[r][c].clone();
        for j in 0..rank {
            rows[r][j] = &rows[r][j] / &pv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..rank {
                    let v = &rows[r][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        piv_cols.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for i in 0..r {
        out.push(primitive(&clear_denominators(&rows[i]))?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Two-dimensional minimal regularization (Hirzebruch-Jung)

/// Minimal regularization of a cone of dimension <= 2, possibly embedded in
/// a higher-rank lattice. Returns the full ray chain from the first to the
/// second generator; for rays and the origin the cone is returned unchanged.
pub fn regularize_2d(cone: &Cone) -> Result<Vec<IVec>> {
    match cone.gens().len() {
        0 | 1 => Ok(cone.gens().to_vec()),
        2 => {
            let sat = saturation_basis(cone.gens(), cone.rank())?;
            assert_eq!(sat.len(), 2);
            let mat: IMat = transpose(&sat);
            // coordinates of the generators in the saturated plane lattice
            let c0 = plane_coords(&mat, &cone.gens()[0]);
            let c1 = plane_coords(&mat, &cone.gens()[1]);
            let chain = hj_chain(&c0, &c1)?;
            Ok(chain
                .into_iter()
                .map(|(a, b)| {
                    let v: IVec = (0..cone.rank())
                        .map(|i| &sat[0][i] * &a + &sat[1][i] * &b)
                        .collect();
                    primitive(&v).unwrap()
                })
                .collect())
        }
        d => Err(Error::ConeDimensionTooHigh(d)),
    }
}

fn plane_coords(mat: &IMat, v: &[Int]) -> (Int, Int) {
    // Solve the overdetermined exact system mat * (a, b)^T = v using two
    // independent rows.
    let rank = mat.len();
    for i in 0..rank {
        for j in i + 1..rank {
            let m2: IMat = vec![
                vec![mat[i][0].clone(), mat[i][1].clone()],
                vec![mat[j][0].clone(), mat[j][1].clone()],
            ];
            if det(&m2).is_zero() {
                continue;
            }
            let sol = solve_rational(&m2, &[v[i].clone(), v[j].clone()]).unwrap();
            assert!(sol.iter().all(crate::rat::is_integer));
            return (sol[0].numer().clone(), sol[1].numer().clone());
        }
    }
    panic!("saturation basis is degenerate");
}

fn det2(a: &(Int, Int), b: &(Int, Int)) -> Int {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Hirzebruch-Jung ray chain between primitive 2D vectors `a`, `b` with
/// `det(a,b) > 0` after a possible swap. Consecutive output pairs have
/// determinant 1 and the ray set is minimal (boundary of the lattice hull).
pub fn hj_chain(a: &(Int, Int), b: &(Int, Int)) -> Result<Vec<(Int, Int)>> {
    let (a, b) = (a.clone(), b.clone());
    let d = det2(&a, &b);
    if d.is_zero() {
        return Err(Error::NotAFan("2D cone generators are parallel".into()));
    }
    let (a, b, flipped) = if d.is_negative() { (b, a, true) } else { (a, b, false) };
    let mut chain = vec![a.clone()];
    let mut cur = a;
    loop {
        let d = det2(&cur, &b);
        assert!(d.is_positive());
        if d.is_one() {
            chain.push(b);
            break;
        }
        // particular solution v* of det(cur, v) = 1, then shift by t * cur to
        // make det(v, b) minimal non-negative: v is the next hull vertex.
        let e = Int::extended_gcd(&cur.0, &cur.1);
        assert!(e.gcd.is_one(), "generators must be primitive");
        // cur.0 * x + cur.1 * y = 1 -> det(cur, v) = cur.0 v.1 - cur.1 v.0 = 1
        // with v = (-y, x)
        let vstar = (-e.y.clone(), e.x.clone());
        let dv = det2(&vstar, &b);
        // det(vstar + t cur, b) = dv + t d >= 0 minimal
        let t = (-dv).div_ceil(&d);
        let v = (&vstar.0 + &t * &cur.0, &vstar.1 + &t * &cur.1);
        debug_assert!(det2(&cur, &v).is_one());
        debug_assert!(det2(&v, &b).is_positive());
        chain.push(v.clone());
        cur = v;
    }
    if flipped {
        chain.reverse();
    }
    Ok(chain)
}

// ---------------------------------------------------------------------------
// Chart bases

/// Ordered lattice basis of `Z^n` with the matrices needed for monomial
/// coordinate changes on the associated toric chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartBasis {
    /// Basis vectors (rows).
    vectors: IMat,
    /// Inverse of the matrix whose columns are the basis vectors; row `i`
    /// gives the exponents of `U_i` as a Laurent monomial in the `X_j`.
    inverse: IMat,
}

impl ChartBasis {
    pub fn new(vectors: IMat) -> Result<ChartBasis> {
        let n = vectors.len();
        for v in &vectors {
            assert_eq!(v.len(), n);
        }
        let cols = transpose(&vectors);
        let d = det(&cols);
        if !d.clone().abs().is_one() {
            return Err(Error::NotPartOfBasis);
        }
        let inverse = inverse_unimodular(&cols);
        Ok(ChartBasis { vectors, inverse })
    }

    /// Complete a prefix (e.g. a primitive order vector) to a chart basis.
    pub fn from_prefix(prefix: &[IVec], rank: usize) -> Result<ChartBasis> {
        ChartBasis::new(complete_to_basis(prefix, rank)?)
    }

    pub fn vectors(&self) -> &IMat {
        &self.vectors
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn det(&self) -> Int {
        det(&transpose(&self.vectors))
    }

    /// Exponents of `U_i` as a Laurent monomial in the ambient coordinates:
    /// `U_i = prod_j X_j^(m[i][j])`.
    pub fn u_exponents(&self) -> &IMat {
        &self.inverse
    }

    /// Exponents of `X_j` as a monomial in the chart coordinates:
    /// `X_j = prod_i U_i^(v[i][j])` — entry `(i, j)` is coordinate `j` of
    /// basis vector `i`.
    pub fn x_exponents(&self) -> IMat {
        self.vectors.clone()
    }

    /// Coordinates of a lattice vector in this basis.
    pub fn coordinates(&self, v: &[Int]) -> IVec {
        mat_vec(&self.inverse, v)
    }
}

// ---------------------------------------------------------------------------
// Space-curve fan construction

/// Validated fan made of the cones `theta_j = R>=0 (w0 + wj) + sigma_j`,
/// together with an explicit refinement of the ambient quadrant fan that
/// contains every `theta_j` (built from a direct-sum fan by star
/// subdivisions at `w0` and each `w0 + wj`).
#[derive(Debug, Clone)]
pub struct SpaceFan {
    pub thetas: Vec<Cone>,
    pub theta_fan: Fan,
    pub refinement: Fan,
}

/// Build and validate the `theta_j` fan for branches of a space curve.
///
/// `w0` collects the orders on the coordinates that vanish on the other
/// branches, `wj_list[j]` the orders on the shared coordinates, and
/// `sigma_j_list[j]` is spanned by the canonical basis vectors of the
/// coordinates vanishing on branch `j`.
pub fn build_space_fan(
    w0: &[Int],
    wj_list: &[IVec],
    sigma_j_list: &[Cone],
) -> Result<SpaceFan> {
    let rank = w0.len();
    assert_eq!(wj_list.len(), sigma_j_list.len());
    let r = wj_list.len();
    let mut thetas = Vec::new();
    for j in 0..r {
        let spine = ivec_add(w0, &wj_list[j]);
        let mut gens = vec![spine];
        gens.extend(sigma_j_list[j].gens().iter().cloned());
        let theta = Cone::new(gens, rank)?;
        if thetas.contains(&theta) {
            return Err(Error::ThetaConesCoincide);
        }
        thetas.push(theta);
    }
    for i in 0..r {
        for j in i + 1..r {
            if thetas[i] == thetas[j] {
                return Err(Error::ThetaConesCoincide);
            }
        }
    }
    // pairwise common-face validation happens inside Fan::from_cones
    let theta_fan = Fan::from_cones(thetas.clone(), rank)?;

    // Explicit refinement: subdivide the coordinate block containing the
    // w_j's, take the direct sum with the faces of the complementary block,
    // then star subdivide at w0 and at each w0 + wj.
    let shared: BTreeSet<usize> = (0..rank)
        .filter(|&i| wj_list.iter().any(|w| !w[i].is_zero()))
        .collect();
    let others: Vec<usize> = (0..rank).filter(|i| !shared.contains(i)).collect();
    let mut block1 = quadrant_fan_on(&shared.iter().copied().collect::<Vec<_>>(), rank)?;
    for w in wj_list {
        if !ivec_is_zero(w) && !block1.rays().contains(&primitive(w)?) {
            block1 = block1.star_subdivide(w)?;
        }
    }
    let block2 = quadrant_fan_on(&others, rank)?;
    let mut refinement = block1.direct_sum(&block2)?;
    if !ivec_is_zero(w0) {
        refinement = refinement.star_subdivide(w0)?;
    }
    for j in 0..r {
        let spine = ivec_add(w0, &wj_list[j]);
        refinement = refinement.star_subdivide(&spine)?;
    }
    for theta in &thetas {
        if !refinement.contains_cone(theta) {
            return Err(Error::NotAFan(format!(
                "refinement is missing theta cone {:?}",
                theta.gens()
            )));
        }
    }
    Ok(SpaceFan { thetas, theta_fan, refinement })
}

/// Fan of faces of the cone spanned by the listed coordinate axes.
fn quadrant_fan_on(coords: &[usize], rank: usize) -> Result<Fan> {
    let gens: Vec<IVec> = coords
        .iter()
        .map(|&i| {
            let mut e = vec![Int::zero(); rank];
            e[i] = Int::one();
            e
        })
        .collect();
    let top = Cone::new(gens, rank)?;
    Fan::from_cones(vec![top], rank)
}

/// Serialize a fan as `{rank, cones}` with integers as decimal strings.
pub fn fan_to_json(fan: &Fan) -> serde_json::Value {
    let cones: Vec<Vec<Vec<String>>> = fan
        .maximal_cones()
        .iter()
        .map(|c| {
            c.gens()
                .iter()
                .map(|g| g.iter().map(|x| x.to_string()).collect())
                .collect()
        })
        .collect();
    serde_json::json!({ "rank": fan.rank(), "cones": cones })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&ivec(&[8, 12, 53])).unwrap(), ivec(&[8, 12, 53]));
        assert_eq!(primitive(&ivec(&[2, 4, 6])).unwrap(), ivec(&[1, 2, 3]));
        assert!(primitive(&ivec(&[0, 0])).is_err());
    }

    #[test]
    fn regularity_of_cones() {
        let c = Cone::new(vec![ivec(&[1, 0]), ivec(&[2, 3])], 2).unwrap();
        assert!(!c.is_regular());
        let r = Cone::new(vec![ivec(&[1, 0]), ivec(&[0, 1])], 2).unwrap();
        assert!(r.is_regular());
    }

    #[test]
    fn complete_to_basis_cases() {
        let b = complete_to_basis(&[ivec(&[8, 12, 53])], 3).unwrap();
        assert_eq!(b[0], ivec(&[8, 12, 53]));
        let m = transpose(&b);
        assert!(det(&m).abs().is_one());

        let b = complete_to_basis(&[ivec(&[1, 0, 0])], 3).unwrap();
        assert_eq!(b, vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1])]);

        let b = complete_to_basis(&[ivec(&[2, 3])], 2).unwrap();
        let m = transpose(&b);
        assert!(det(&m).abs().is_one());

        assert!(complete_to_basis(&[ivec(&[2, 4])], 2).is_err());
    }

    #[test]
    fn paper_chart_is_unimodular() {
        let m = transpose(&vec![ivec(&[1, 1, 4]), ivec(&[2, 3, 13]), ivec(&[8, 12, 53])]);
        assert!(det(&m).is_one());
    }

    #[test]
    fn hj_chain_examples() {
        let chain = hj_chain(&(Int::from(1), Int::from(0)), &(Int::from(2), Int::from(3)))
            .unwrap();
        let as_i64: Vec<(i64, i64)> = chain
            .iter()
            .map(|(a, b)| (i64::try_from(a).unwrap(), i64::try_from(b).unwrap()))
            .collect();
        assert_eq!(as_i64, vec![(1, 0), (1, 1), (2, 3)]);

        for k in 2..=5 {
            let chain =
                hj_chain(&(Int::from(1), Int::from(0)), &(Int::from(1), Int::from(k))).unwrap();
            let expect: Vec<(i64, i64)> = (0..=k).map(|j| (1, j)).collect();
            let got: Vec<(i64, i64)> = chain
                .iter()
                .map(|(a, b)| (i64::try_from(a).unwrap(), i64::try_from(b).unwrap()))
                .collect();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn regularize_2d_regular_cone_unchanged() {
        let c = Cone::new(vec![ivec(&[1, 0]), ivec(&[0, 1])], 2).unwrap();
        let rays = regularize_2d(&c).unwrap();
        assert_eq!(rays, vec![ivec(&[0, 1]), ivec(&[1, 0])]);
    }

    #[test]
    fn regularize_embedded_cone() {
        // cone((2,3,0),(0,0,1)) in Z^3 is already regular
        let c = Cone::new(vec![ivec(&[2, 3, 0]), ivec(&[0, 0, 1])], 3).unwrap();
        let rays = regularize_2d(&c).unwrap();
        assert_eq!(rays.len(), 2);
    }

    /// Brute-force oracle: primitive lattice points on the boundary of the
    /// convex hull of the cone's nonzero lattice points, within a box.
    fn hull_rays_oracle(a: (i64, i64), b: (i64, i64)) -> Vec<(i64, i64)> {
        let bound = 4 * (a.0.abs() + a.1.abs() + b.0.abs() + b.1.abs());
        let det = |p: (i64, i64), q: (i64, i64)| p.0 * q.1 - p.1 * q.0;
        let inside = |p: (i64, i64)| det(a, p) >= 0 && det(p, b) >= 0;
        let mut pts: Vec<(i64, i64)> = Vec::new();
        for x in -bound..=bound {
            for y in -bound..=bound {
                if (x, y) != (0, 0) && inside((x, y)) && crate::rat::gcd_i64(x, y) == 1 {
                    pts.push((x, y));
                }
            }
        }
        // hull boundary: points p such that no two other points u, v strictly
        // sandwich p inside the cone hull; use the classical criterion that
        // p is a vertex of conv(points) iff it is not a convex combination.
        // For cones it suffices that p is not the sum of two points of the
        // cone lattice (Hilbert basis of a 2D cone = hull boundary).
        let set: std::collections::HashSet<(i64, i64)> = pts.iter().copied().collect();
        let mut all: Vec<(i64, i64)> = Vec::new();
        for x in 0..=bound {
            for y in -bound..=bound {
                if (x, y) != (0, 0) && inside((x, y)) {
                    all.push((x, y));
                }
            }
        }
        let mut hb: Vec<(i64, i64)> = pts
            .iter()
            .copied()
            .filter(|p| {
                !all.iter().any(|u| {
                    let v = (p.0 - u.0, p.1 - u.1);
                    v != (0, 0) && (v.0 != 0 || v.1 != 0) && inside(v) && *u != *p && inside(*u)
                        && set.contains(p) // keep primitive target
                        && (u.0 + v.0, u.1 + v.1) == *p
                })
            })
            .collect();
        hb.sort_by_key(|p| (p.1 * a.0 - p.0 * a.1, p.0, p.1));
        hb
    }

    #[test]
    fn hj_matches_bruteforce_hilbert_basis() {
        for (a, b) in [
            ((1i64, 0i64), (2i64, 3i64)),
            ((1, 0), (1, 4)),
            ((2, 3), (1, 2)),
            ((5, 2), (1, 3)),
            ((3, 1), (2, 5)),
        ] {
            let chain = hj_chain(&(Int::from(a.0), Int::from(a.1)), &(Int::from(b.0), Int::from(b.1)))
                .unwrap();
            let got: Vec<(i64, i64)> = chain
                .iter()
                .map(|(x, y)| (i64::try_from(x).unwrap(), i64::try_from(y).unwrap()))
                .collect();
            let mut oracle = hull_rays_oracle(a, b);
            if !oracle.is_empty() && oracle[0] != got[0] {
                oracle.reverse();
            }
            assert_eq!(got, oracle, "cone ({:?},{:?})", a, b);
            // consecutive determinant-1 and minimality (removing an interior
            // ray breaks regularity)
            for w in got.windows(2) {
                assert_eq!(w[0].0 * w[1].1 - w[0].1 * w[1].0, 1);
            }
            for skip in 1..got.len().saturating_sub(1) {
                let l = got[skip - 1];
                let r = got[skip + 1];
                assert_ne!(l.0 * r.1 - l.1 * r.0, 1, "ray {:?} is removable", got[skip]);
            }
        }
    }

    #[test]
    fn star_fan_of_subdivided_quadrant() {
        // subdivision of R^3_{>=0} at w = (4,6,13); star at ray e3 is the
        // subdivision of R^2_{>=0} along (2,3).
        let e = |i: usize| {
            let mut v = vec![Int::zero(); 3];
            v[i] = Int::one();
            v
        };
        let w = ivec(&[4, 6, 13]);
        let quad = Fan::from_cones(vec![Cone::new(vec![e(0), e(1), e(2)], 3).unwrap()], 3)
            .unwrap();
        let sigma_fan = quad.star_subdivide(&w).unwrap();
        let sigma = Cone::ray(&e(2)).unwrap();
        let (star, _) = sigma_fan.star(&sigma).unwrap();
        let rays = star.rays();
        assert!(rays.contains(&ivec(&[2, 3])));
        assert!(rays.contains(&ivec(&[1, 0])));
        assert!(rays.contains(&ivec(&[0, 1])));
        assert_eq!(rays.len(), 3);
    }

    #[test]
    fn star_over_origin_is_identity() {
        let e = |i: usize| {
            let mut v = vec![Int::zero(); 2];
            v[i] = Int::one();
            v
        };
        let quad =
            Fan::from_cones(vec![Cone::new(vec![e(0), e(1)], 2).unwrap()], 2).unwrap();
        let (star, _) = quad.star(&Cone::origin(2)).unwrap();
        assert_eq!(star.rays(), quad.rays());
    }

    #[test]
    fn star_over_full_cone_is_zero_fan() {
        let e = |i: usize| {
            let mut v = vec![Int::zero(); 2];
            v[i] = Int::one();
            v
        };
        let top = Cone::new(vec![e(0), e(1)], 2).unwrap();
        let quad = Fan::from_cones(vec![top.clone()], 2).unwrap();
        let (star, q) = quad.star(&top).unwrap();
        assert_eq!(q.quotient_rank(), 0);
        assert!(star.rays().is_empty());
    }

    #[test]
    fn space_fan_single_ray() {
        let sf = build_space_fan(&ivec(&[0, 0]), &[ivec(&[2, 3])], &[Cone::origin(2)]).unwrap();
        assert_eq!(sf.thetas.len(), 1);
        assert_eq!(sf.thetas[0].gens(), &[ivec(&[2, 3])]);
    }

    #[test]
    fn space_fan_subspace_example() {
        // branch 1 in the torus with orders (4,6,13); branch 2 in X3 = 0 with
        // orders (2,3): theta_1 = ray(4,6,13), theta_2 = cone((2,3,13), e3).
        let w0 = ivec(&[0, 0, 13]);
        let w1 = ivec(&[4, 6, 0]);
        let w2 = ivec(&[2, 3, 0]);
        let sigma1 = Cone::origin(3);
        let sigma2 = Cone::ray(&ivec(&[0, 0, 1])).unwrap();
        let sf = build_space_fan(&w0, &[w1, w2], &[sigma1, sigma2]).unwrap();
        assert!(sf.thetas.iter().any(|t| t.gens() == [ivec(&[4, 6, 13])]));
        assert!(sf
            .thetas
            .iter()
            .any(|t| t.gens().contains(&ivec(&[0, 0, 1])) && t.gens().contains(&ivec(&[2, 3, 13]))));
        // refinement contains e3 as a cone, so the orbit closure survives
        assert!(sf.refinement.contains_cone(&Cone::ray(&ivec(&[0, 0, 1])).unwrap()));
    }

    #[test]
    fn space_fan_shared_spine_face() {
        // two branches with w_1 = w_2: thetas share the face spanned by
        // w0 + w1.
        let w0 = ivec(&[0, 0, 2, 3]);
        let w1 = ivec(&[2, 3, 0, 0]);
        let sigma1 = Cone::ray(&ivec(&[0, 0, 0, 1])).unwrap();
        let sigma2 = Cone::ray(&ivec(&[0, 0, 1, 0])).unwrap();
        let sf =
            build_space_fan(&w0, &[w1.clone(), w1.clone()], &[sigma1, sigma2]).unwrap();
        let spine = primitive(&ivec_add(&w0, &w1)).unwrap();
        let inter = cone_intersection(&sf.thetas[0], &sf.thetas[1]).unwrap();
        assert_eq!(inter, vec![spine]);
    }

    #[test]
    fn smith_divisors_examples() {
        let m = vec![ivec(&[2, 4]), ivec(&[6, 8])];
        let d = smith_divisors(&m);
        assert_eq!(d, vec![Int::from(2), Int::from(4)]);
        assert!(part_of_basis(&[ivec(&[8, 12, 53])]));
        assert!(!part_of_basis(&[ivec(&[2, 4, 6])]));
    }
}
