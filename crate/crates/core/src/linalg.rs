//! Exact Gaussian elimination over the rationals.
//!
//! Every graded piece in this crate is tiny (a handful of monomials), so a
//! dense row-reduction on `BigRational` entries is both fast enough and
//! certifiably exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a rational as `num/den`, or `num` when the denominator is one.
pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `num`, `-num` or `num/den`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, x) in row.into_iter().enumerate() {
                m.data[i * cols + j] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduced row echelon form. Pivots are chosen left-most first, so the
    /// column order decides which coordinates get eliminated.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let x = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Echelon {
            cols: m.cols,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let ech = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Row space of a matrix in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` modulo the row space. The result vanishes on every pivot
    /// column, and two vectors reduce to the same thing iff they differ by an
    /// element of the row space.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }
}

/// Dimension of the span of a list of vectors of common length `cols`.
pub fn span_dim(cols: usize, vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(cols, vectors.to_vec()).rank()
}

/// Dimension of the intersection of two subspaces given by spanning sets.
pub fn intersection_dim(cols: usize, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> usize {
    let da = span_dim(cols, a);
    let db = span_dim(cols, b);
    let both: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    da + db - span_dim(cols, &both)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(m(&[&[1, 1], &[-1, 0]]).rank(), 2);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::zeros(3, 2).rank(), 0);
        assert_eq!(Matrix::zeros(0, 4).rank(), 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn reduce_kills_row_space() {
        let a = m(&[&[1, 1, 1]]);
        let ech = a.echelon();
        let r = ech.reduce(&[rat(1), rat(0), rat(0)]);
        assert_eq!(r, vec![rat(0), rat(-1), rat(-1)]);
        assert!(ech
            .reduce(&[rat(2), rat(2), rat(2)])
            .iter()
            .all(Zero::is_zero));
    }

    #[test]
    fn intersections() {
        let e1 = vec![rat(1), rat(0)];
        let e2 = vec![rat(0), rat(1)];
        let d = vec![rat(1), rat(1)];
        assert_eq!(
            intersection_dim(2, std::slice::from_ref(&e1), std::slice::from_ref(&e2)),
            0
        );
        assert_eq!(intersection_dim(2, &[e1.clone(), e2], &[d]), 1);
    }

    #[test]
    fn rational_text_round_trip() {
        let x = parse_rational("-3/6").unwrap();
        assert_eq!(fmt_rational(&x), "-1/2");
        assert_eq!(fmt_rational(&parse_rational("7").unwrap()), "7");
        assert!(parse_rational("1/0").is_none());
    }
}
