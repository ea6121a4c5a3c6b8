//! Exact rationals, vectors, matrices, polyhedral norms and Gaussian elimination.

use std::fmt;
use std::ops::{Deref, DerefMut};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

/// Parses `p`, `-p`, `p/q`. Rejects a zero denominator.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().ok()?;
    let q: BigInt = q.trim().parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Rat::new(p, q))
}

/// Serializes as `p/q`, or `p` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn rat_pow(r: &Rat, e: usize) -> Rat {
    num_traits::pow(r.clone(), e)
}

pub fn ceil_sqrt(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &(&s * &s) == n {
        s
    } else {
        s + 1
    }
}

/// Dense rational vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec(pub Vec<Rat>);

impl Deref for RatVec {
    type Target = [Rat];
    fn deref(&self) -> &[Rat] {
        &self.0
    }
}

impl DerefMut for RatVec {
    fn deref_mut(&mut self) -> &mut [Rat] {
        &mut self.0
    }
}

impl From<Vec<Rat>> for RatVec {
    fn from(v: Vec<Rat>) -> Self {
        RatVec(v)
    }
}

impl FromIterator<Rat> for RatVec {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        RatVec(iter.into_iter().collect())
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().map(fmt_rat).join(" "))
    }
}

impl RatVec {
    pub fn zeros(n: usize) -> Self {
        RatVec(vec![Rat::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        v.iter().map(|&x| int(x)).collect()
    }

    pub fn from_bigints(v: &[BigInt]) -> Self {
        v.iter().map(big).collect()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<Rat> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(is_integer)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn to_ints(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|x| is_integer(x).then(|| x.numer().clone()))
            .collect()
    }

    pub fn add(&self, o: &[Rat]) -> RatVec {
        debug_assert_eq!(self.len(), o.len());
        self.iter().zip(o).map(|(a, b)| a + b).collect()
    }

    pub fn sub(&self, o: &[Rat]) -> RatVec {
        debug_assert_eq!(self.len(), o.len());
        self.iter().zip(o).map(|(a, b)| a - b).collect()
    }

    pub fn scale(&self, c: &Rat) -> RatVec {
        self.iter().map(|a| a * c).collect()
    }

    pub fn neg(&self) -> RatVec {
        self.iter().map(|a| -a).collect()
    }

    pub fn add_assign(&mut self, o: &[Rat]) {
        debug_assert_eq!(self.len(), o.len());
        for (a, b) in self.0.iter_mut().zip(o) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, o: &[Rat]) {
        debug_assert_eq!(self.len(), o.len());
        for (a, b) in self.0.iter_mut().zip(o) {
            *a -= b;
        }
    }

    /// `self += c·o`
    pub fn add_scaled(&mut self, c: &Rat, o: &[Rat]) {
        debug_assert_eq!(self.len(), o.len());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(o) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    pub fn dot(&self, o: &[Rat]) -> Rat {
        dot(self, o)
    }

    pub fn linf(&self) -> Rat {
        NormSpec::Linf.eval(self)
    }

    pub fn l1(&self) -> Rat {
        NormSpec::L1.eval(self)
    }

    /// Componentwise `self ≤ o`.
    pub fn le(&self, o: &[Rat]) -> bool {
        self.iter().zip(o).all(|(a, b)| a <= b)
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// Sum of a list of vectors of dimension `dim`.
pub fn vec_sum<'a, I: IntoIterator<Item = &'a RatVec>>(dim: usize, it: I) -> RatVec {
    let mut s = RatVec::zeros(dim);
    for v in it {
        s.add_assign(v);
    }
    s
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Display for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", self.row(i).iter().map(fmt_rat).join(" "))?;
        }
        Ok(())
    }
}

impl RatMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(RatMat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds from rows; `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: &[Vec<Rat>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    r.len(),
                    cols
                )));
            }
            data.extend(r.iter().cloned());
        }
        Ok(RatMat {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_ints(cols: usize, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(cols, &rows).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> RatVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[Rat]) -> RatVec {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn mul(&self, o: &RatMat) -> RatMat {
        debug_assert_eq!(self.cols, o.rows);
        let mut out = RatMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn neg(&self) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> RatMat {
        let mut m = RatMat::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> RatMat {
        let data = rows
            .iter()
            .flat_map(|&i| self.row(i).iter().cloned())
            .collect();
        RatMat {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Stacks `o` below `self`.
    pub fn vstack(&self, o: &RatMat) -> RatMat {
        assert_eq!(self.cols, o.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        RatMat {
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(is_integer)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn max_abs_entry(&self) -> Rat {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    pub fn to_int_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| is_integer(x).then(|| x.numer().clone()))
                    .collect()
            })
            .collect()
    }
}

/// Polyhedral norm kinds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NormSpec {
    L1,
    Linf,
    /// Maximum of the inner norm over consecutive blocks of the given length.
    BlockMax(Box<NormSpec>, usize),
}

impl NormSpec {
    pub fn block_max(inner: NormSpec, block: usize) -> Self {
        NormSpec::BlockMax(Box::new(inner), block)
    }

    /// Evaluates the norm. Dimensions are assumed compatible; see [`norm_eval`].
    pub fn eval(&self, v: &[Rat]) -> Rat {
        match self {
            NormSpec::L1 => v.iter().fold(Rat::zero(), |acc, x| acc + x.abs()),
            NormSpec::Linf => v.iter().map(|x| x.abs()).max().unwrap_or_else(Rat::zero),
            NormSpec::BlockMax(inner, b) => v
                .chunks(*b)
                .map(|c| inner.eval(c))
                .max()
                .unwrap_or_else(Rat::zero),
        }
    }

    pub fn compatible(&self, dim: usize) -> bool {
        match self {
            NormSpec::L1 | NormSpec::Linf => true,
            NormSpec::BlockMax(inner, b) => *b > 0 && dim % b == 0 && inner.compatible(*b),
        }
    }

    pub fn name(&self) -> String {
        match self {
            NormSpec::L1 => "l1".into(),
            NormSpec::Linf => "linf".into(),
            NormSpec::BlockMax(inner, b) => format!("blockmax({},{})", inner.name(), b),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "l1" => Some(NormSpec::L1),
            "linf" => Some(NormSpec::Linf),
            _ => None,
        }
    }
}

pub fn norm_eval(spec: &NormSpec, v: &[Rat]) -> Result<Rat> {
    if !spec.compatible(v.len()) {
        return Err(Error::Dimension(format!(
            "norm {} cannot evaluate a vector of dimension {}",
            spec.name(),
            v.len()
        )));
    }
    Ok(spec.eval(v))
}

/// Reduced row echelon form with pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Rat>>,
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan elimination on a list of equal-length rows.
pub fn rref_rows(mut a: Vec<Vec<Rat>>, cols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Rref { rows: a, pivots }
}

pub fn rref(m: &RatMat) -> Rref {
    rref_rows(m.row_vecs(), m.cols())
}

pub fn rank(m: &RatMat) -> usize {
    rref(m).pivots.len()
}

/// Rank of a list of vectors of common dimension.
pub fn rank_of(vectors: &[RatVec]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => rref_rows(vectors.iter().map(|x| x.0.clone()).collect(), v.len())
            .pivots
            .len(),
    }
}

/// Some solution of `Mx = b` (free variables set to zero), or `None` if inconsistent.
pub fn solve_linear(m: &RatMat, b: &[Rat]) -> Result<Option<RatVec>> {
    if m.rows() != b.len() {
        return Err(Error::Dimension(format!(
            "system has {} rows but rhs has {} entries",
            m.rows(),
            b.len()
        )));
    }
    let n = m.cols();
    let aug: Vec<Vec<Rat>> = (0..m.rows())
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let red = rref_rows(aug, n + 1);
    if red.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = RatVec::zeros(n);
    for (row, &p) in red.rows.iter().zip(&red.pivots) {
        x[p] = row[n].clone();
    }
    Ok(Some(x))
}

/// Basis of the kernel: one vector per free column, with that column set to 1.
pub fn null_space(m: &RatMat) -> Vec<RatVec> {
    null_space_rows(m.row_vecs(), m.cols())
}

pub fn null_space_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Vec<RatVec> {
    let red = rref_rows(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = RatVec::zeros(cols);
            v[f] = Rat::one();
            for (row, &p) in red.rows.iter().zip(&red.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &RatMat) -> Option<RatMat> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "inverse of a non-square matrix");
    let aug: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let red = rref_rows(aug, 2 * n);
    if red.pivots.len() < n || red.pivots[n - 1] >= n {
        return None;
    }
    let rows: Vec<Vec<Rat>> = red.rows.iter().map(|r| r[n..].to_vec()).collect();
    RatMat::from_rows(n, &rows).ok()
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn det_int(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// lcm of |det D| over all invertible `s × s` column submatrices of the given
/// integer matrices; 1 when none exists. Each determinant is checked against
/// Hadamard's bound `|det D| ≤ Δ^s s^{s/2}`.
pub fn lcm_abs_dets(mats: &[RatMat], s: usize) -> Result<BigInt> {
    let mut g = BigInt::one();
    for m in mats {
        if m.rows() != s {
            return Err(Error::Dimension(format!(
                "matrix has {} rows, expected {}",
                m.rows(),
                s
            )));
        }
        let rows = m
            .to_int_rows()
            .ok_or_else(|| Error::InvalidInput("lcm_abs_dets needs integer entries".into()))?;
        let delta = m.max_abs_entry().numer().clone();
        // Hadamard, squared to stay integral: det² ≤ Δ^{2s} s^s
        let hadamard_sq = num_traits::pow(delta, 2 * s) * num_traits::pow(BigInt::from(s), s);
        for cols in (0..m.cols()).combinations(s) {
            let sub: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
                .collect();
            let d = det_int(&sub).abs();
            if d.is_zero() {
                continue;
            }
            if &d * &d > hadamard_sq {
                return Err(Error::property(
                    "hadamard",
                    format!("|det| = {} exceeds Hadamard's bound", d),
                ));
            }
            g = g.lcm(&d);
        }
    }
    Ok(g)
}

/// Scales a rational vector to the primitive integer vector on its ray.
pub fn primitive_integer(v: &[Rat]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * big(&l)).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Integer matrix product with an integer vector.
pub fn int_mul(rows: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    rows.iter()
        .map(|r| {
            r.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: &[i64]) -> RatVec {
        RatVec::from_ints(x)
    }

    #[test]
    fn norms() {
        assert_eq!(norm_eval(&NormSpec::Linf, &v(&[3, -4])).unwrap(), int(4));
        assert_eq!(
            norm_eval(&NormSpec::L1, &[frac(1, 2), frac(-1, 2)]).unwrap(),
            int(1)
        );
        let bm = NormSpec::block_max(NormSpec::Linf, 2);
        assert_eq!(norm_eval(&bm, &v(&[1, 0, 0, -5])).unwrap(), int(5));
        assert!(norm_eval(&bm, &v(&[1, 2, 3])).is_err());
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rat("-3/6"), Some(frac(-1, 2)));
        assert_eq!(parse_rat("7"), Some(int(7)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
        assert_eq!(fmt_rat(&frac(4, 2)), "2");
        assert_eq!(fmt_rat(&frac(-2, 6)), "-1/3");
    }

    #[test]
    fn solve_examples() {
        let id = RatMat::identity(2);
        assert_eq!(solve_linear(&id, &v(&[3, 7])).unwrap(), Some(v(&[3, 7])));
        let m = RatMat::from_ints(2, &[&[1, 1], &[1, -1]]);
        assert_eq!(solve_linear(&m, &v(&[2, 0])).unwrap(), Some(v(&[1, 1])));
        let m = RatMat::from_ints(1, &[&[1], &[1]]);
        assert_eq!(solve_linear(&m, &v(&[0, 1])).unwrap(), None);
        assert!(solve_linear(&m, &v(&[0])).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(null_space(&RatMat::identity(3)).is_empty());
        let k = null_space(&RatMat::from_ints(2, &[&[1, -1]]));
        assert_eq!(k, vec![v(&[1, 1])]);
        assert_eq!(null_space(&RatMat::zeros(1, 2)).len(), 2);
    }

    #[test]
    fn lcm_examples() {
        let m = |r: &[&[i64]], c| RatMat::from_ints(c, r);
        assert_eq!(lcm_abs_dets(&[m(&[&[2]], 1)], 1).unwrap(), BigInt::from(2));
        assert_eq!(lcm_abs_dets(&[m(&[&[2, 3]], 2)], 1).unwrap(), BigInt::from(6));
        assert_eq!(
            lcm_abs_dets(&[m(&[&[1, 0], &[0, 1]], 2)], 2).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(lcm_abs_dets(&[RatMat::zeros(2, 3)], 2).unwrap(), BigInt::from(1));
        let frac_mat = RatMat::from_rows(1, &[vec![frac(1, 2)]]).unwrap();
        assert!(lcm_abs_dets(&[frac_mat], 1).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let a: Vec<Vec<BigInt>> = [[2, -1, 0], [1, 3, 2], [0, 1, 4]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        // 2(12-2) + 1(4-0) + 0 = 24
        assert_eq!(det_int(&a), BigInt::from(24));
        let z = vec![vec![BigInt::from(0), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(0)]];
        assert_eq!(det_int(&z), BigInt::from(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RatMat::from_ints(2, &[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), RatMat::identity(2));
        assert!(inverse(&RatMat::from_ints(2, &[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn primitive() {
        let p = primitive_integer(&[frac(2, 3), frac(-4, 3), int(0)]);
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(-2), BigInt::from(0)]);
        assert_eq!(ceil_sqrt(&BigInt::from(5)), BigInt::from(3));
        assert_eq!(ceil_sqrt(&BigInt::from(4)), BigInt::from(2));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-20i64..=20, 1i64..=7).prop_map(|(p, q)| frac(p, q))
    }

    fn rvec(n: usize) -> impl Strategy<Value = RatVec> {
        proptest::collection::vec(small_rat(), n).prop_map(RatVec)
    }

    fn rmat(r: usize, c: usize) -> impl Strategy<Value = RatMat> {
        proptest::collection::vec(small_rat(), r * c)
            .prop_map(move |d| RatMat::new(r, c, d).unwrap())
    }

    fn any_norm() -> impl Strategy<Value = NormSpec> {
        prop_oneof![
            Just(NormSpec::L1),
            Just(NormSpec::Linf),
            Just(NormSpec::block_max(NormSpec::L1, 2)),
            Just(NormSpec::block_max(NormSpec::Linf, 3)),
        ]
    }

    proptest! {
        #[test]
        fn norm_axioms(a in rvec(6), b in rvec(6), c in small_rat(), n in any_norm()) {
            let na = n.eval(&a);
            prop_assert_eq!(n.eval(&a.scale(&c)), c.abs() * &na);
            prop_assert!(n.eval(&a.add(&b)) <= &na + n.eval(&b));
            prop_assert_eq!(na.is_zero(), a.is_zero());
        }

        #[test]
        fn solve_reproduces(m in rmat(3, 4), x in rvec(4), consistent in any::<bool>(), y in rvec(3)) {
            let b = if consistent { m.mul_vec(&x) } else { y };
            if let Some(sol) = solve_linear(&m, &b).unwrap() {
                prop_assert_eq!(m.mul_vec(&sol), b);
            } else {
                prop_assert!(!consistent);
            }
        }

        #[test]
        fn kernel_is_kernel(m in rmat(2, 5)) {
            let k = null_space(&m);
            for z in &k {
                prop_assert!(m.mul_vec(z).is_zero());
            }
            prop_assert_eq!(rank_of(&k), k.len());
            prop_assert_eq!(k.len() + rank(&m), 5);
        }

        #[test]
        fn lcm_divisible(entries in proptest::collection::vec(-3i64..=3, 6)) {
            let m = RatMat::new(2, 3, entries.iter().map(|&x| int(x)).collect()).unwrap();
            let g = lcm_abs_dets(std::slice::from_ref(&m), 2).unwrap();
            let rows = m.to_int_rows().unwrap();
            for cols in (0..3).combinations(2) {
                let sub: Vec<Vec<BigInt>> = rows.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
                let d = det_int(&sub);
                if !d.is_zero() {
                    prop_assert!((&g % d.abs()).is_zero());
                }
            }
        }
    }
}
