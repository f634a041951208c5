//! Reference computations that share no code with the library.

#![allow(dead_code)]

use legsurg::arith::Rational;
use legsurg::surgery::{ContactDiagram, DiagramComponent};

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Reduced fraction with positive denominator.
pub fn frac(num: i128, den: i128) -> (i128, i128) {
    assert!(den != 0, "zero denominator");
    let g = gcd(num, den);
    let s = if den < 0 { -1 } else { 1 };
    (s * num / g, s * den / g)
}

/// `a1 - 1/(a2 - 1/(... - 1/an))`, or `None` if an inner tail vanishes.
pub fn eval_cf(entries: &[i64]) -> Option<(i128, i128)> {
    let (&last, rest) = entries.split_last()?;
    let (mut n, mut d) = (last as i128, 1i128);
    for &a in rest.iter().rev() {
        if n == 0 {
            return None;
        }
        // a - d/n
        let (nn, nd) = (a as i128 * n - d, n);
        n = nn;
        d = nd;
    }
    Some(frac(n, d))
}

pub fn rat(r: Rational) -> (i128, i128) {
    (r.numer() as i128, r.denom() as i128)
}

pub type M2 = [[i128; 2]; 2];

pub fn mul(x: M2, y: M2) -> M2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

/// `(1 1; 0 1) * prod (-ri 1; -1 0)`.
pub fn chain_product(rs: &[i64]) -> M2 {
    rs.iter().fold([[1, 1], [0, 1]], |acc, &r| {
        mul(acc, [[-(r as i128), 1], [-1, 0]])
    })
}

/// Surgery coefficients read off a continued fraction.
pub fn shift(cf: &[i64]) -> Vec<i64> {
    let mut rs = cf.to_vec();
    rs[0] -= 1;
    rs
}

/// `[rn, ..., r2, r1 + 1]`.
pub fn reversed_shifted(rs: &[i64]) -> Vec<i64> {
    let mut v: Vec<i64> = rs.iter().rev().copied().collect();
    *v.last_mut().unwrap() += 1;
    v
}

pub fn product_count(rs: &[i64]) -> u128 {
    rs.iter().map(|&r| (r + 1).unsigned_abs() as u128).product()
}

/// All reduced `p/q < 0` with `|p| <= pmax`, `1 <= q <= qmax`.
pub fn negative_rationals(pmax: i64, qmax: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for q in 1..=qmax {
        for p in 1..=pmax {
            if gcd(p as i128, q as i128) == 1 {
                out.push((-p, q));
            }
        }
    }
    out
}

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn single_unknot(tb: i64, rot: i64, r: Rational) -> ContactDiagram {
    ContactDiagram::new(vec![DiagramComponent::abstract_unknot("K", tb, rot, r)])
}

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors and the `k`-th factor is `d_k / d_(k-1)`. Zero factors
/// mark the rank deficiency.
pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut factors = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect())
                    .collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            factors.extend(std::iter::repeat_n(0, rows.min(cols) - k + 1));
            break;
        }
        factors.push(g / prev);
        prev = g;
    }
    factors
}
