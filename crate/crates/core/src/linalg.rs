//! Exact linear algebra over `Q`: fraction-free determinants, kernels,
//! square solves, determinants of polynomial matrices and Newton interpolation.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::polyops::RationalPoly;
use crate::Rational;

/// Determinant by Bareiss elimination after clearing row denominators.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Rational::new(sign * &a[n - 1][n - 1], scale)
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A basis of `{ x : m x = 0 }` for an `rows x cols` matrix.
pub fn kernel(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Rank of a matrix.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Solve `a x = b` for square nonsingular `a`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// `m v`.
pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// rows, memoized over column subsets.
pub fn poly_det(m: &[Vec<RationalPoly>]) -> RationalPoly {
    let n = m.len();
    assert!(n <= 20, "polynomial determinant too large");
    let mut memo: HashMap<u32, RationalPoly> = HashMap::new();
    memo.insert(0, RationalPoly::one());
    // minor[mask] = det of rows 0..popcount(mask) restricted to columns in mask
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let row = mask.count_ones() as usize - 1;
        let mut acc = RationalPoly::zero();
        for c in (0..n).filter(|c| mask & (1 << c) != 0) {
            let entry = &m[row][c];
            let sub = &memo[&(mask & !(1 << c))];
            if entry.is_zero() || sub.is_zero() {
                continue;
            }
            // expansion along the last row of the minor
            let above = (mask & ((1u32 << c) - 1)).count_ones() as usize;
            let term = entry * sub;
            acc = if (row + above) % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        memo.insert(mask, acc);
    }
    memo.remove(&((1u32 << n) - 1)).unwrap_or_else(RationalPoly::one)
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn newton_interpolate(xs: &[Rational], ys: &[Rational]) -> RationalPoly {
    let n = xs.len();
    assert_eq!(n, ys.len());
    let mut dd: Vec<Rational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = RationalPoly::zero();
    for i in (0..n).rev() {
        p = &(&p * &RationalPoly::linear_root(&xs[i])) + &RationalPoly::constant(dd[i].clone());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn leibniz(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        let mut idx: Vec<usize> = (0..n).collect();
        let mut total = Rational::zero();
        permute(&mut idx, 0, m, &mut total);
        total
    }

    fn permute(idx: &mut Vec<usize>, k: usize, m: &[Vec<Rational>], total: &mut Rational) {
        let n = idx.len();
        if k == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if idx[i] > idx[j] {
                        inv += 1;
                    }
                }
            }
            let mut p = Rational::one();
            for i in 0..n {
                p *= &m[i][idx[i]];
            }
            if inv % 2 == 1 {
                p = -p;
            }
            *total += p;
            return;
        }
        for i in k..n {
            idx.swap(k, i);
            permute(idx, k + 1, m, total);
            idx.swap(k, i);
        }
    }

    #[test]
    fn det_matches_leibniz() {
        let m = vec![
            vec![ratio(1, 2), rat(3), rat(0), ratio(-2, 7)],
            vec![rat(0), rat(0), rat(5), rat(1)],
            vec![ratio(4, 3), rat(-1), rat(2), rat(0)],
            vec![rat(1), rat(1), ratio(1, 5), rat(3)],
        ];
        assert_eq!(det(&m), leibniz(&m));
        let pm: Vec<Vec<RationalPoly>> = m
            .iter()
            .map(|r| r.iter().map(|x| RationalPoly::constant(x.clone())).collect())
            .collect();
        assert_eq!(poly_det(&pm), RationalPoly::constant(leibniz(&m)));
    }

    #[test]
    fn poly_det_vandermonde() {
        // det [[1, t], [1, 2]] = 2 - t
        let m = vec![
            vec![RationalPoly::one(), RationalPoly::monomial(1, rat(1))],
            vec![RationalPoly::one(), RationalPoly::constant(rat(2))],
        ];
        assert_eq!(poly_det(&m), RationalPoly::from_ints(&[2, -1]));
    }

    #[test]
    fn kernel_and_solve() {
        let m = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(|x| x.is_zero()));
        }
        let a = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
        let x = solve(&a, &[rat(3), rat(5)]).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![rat(3), rat(5)]);
        assert!(solve(&[vec![rat(1), rat(2)], vec![rat(2), rat(4)]], &[rat(0), rat(1)]).is_none());
    }

    #[test]
    fn interpolation() {
        let p = RationalPoly::from_coeffs(vec![ratio(1, 3), rat(0), rat(-2), ratio(5, 7)]);
        let xs: Vec<Rational> = (1..=4).map(rat).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(newton_interpolate(&xs, &ys), p);
    }
}
