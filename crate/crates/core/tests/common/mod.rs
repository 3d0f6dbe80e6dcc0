//! Independent homology oracle: boundary matrices rebuilt from the face
//! formula, ranks over Q by fraction-free elimination and over F_p.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;

pub type Table = Vec<Vec<usize>>;

pub fn three_colour() -> Table {
    (0..3)
        .map(|a| (0..3).map(|b| (2 * b + 3 - a) % 3).collect())
        .collect()
}

pub fn dihedral(n: usize) -> Table {
    (0..n)
        .map(|a| (0..n).map(|b| (2 * b + n - a) % n).collect())
        .collect()
}

pub fn trivial(n: usize) -> Table {
    (0..n).map(|a| vec![a; n]).collect()
}

fn tuples(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn index(t: &[usize], k: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * k + x)
}

/// Dense `d_n` with rows indexed by `(n-1)`-cubes; `extended` adds a leading
/// region coordinate that every `eps = 1` face acts on.
pub fn boundary(table: &Table, n: usize, extended: bool) -> Vec<Vec<i64>> {
    let k = table.len();
    let off = usize::from(extended);
    let rows = k.pow((n - 1 + off) as u32);
    let cols = k.pow((n + off) as u32);
    let mut m = vec![vec![0i64; cols]; rows];
    for (j, x) in tuples(k, n + off).into_iter().enumerate() {
        for i in 1..=n {
            let p = i - 1 + off;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let mut lower: Vec<usize> = x.clone();
            lower.remove(p);
            let mut upper: Vec<usize> = x[..p].iter().map(|&y| table[y][x[p]]).collect();
            upper.extend_from_slice(&x[p + 1..]);
            m[index(&upper, k)][j] += sign;
            m[index(&lower, k)][j] -= sign;
        }
    }
    m
}

pub fn rank_q(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                let v = (&a[r][cc] * &a[rank][c] - &a[r][c] * &a[rank][cc]) / &prev;
                a[r][cc] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

pub fn rank_mod(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|&v| v.rem_euclid(p)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let inv = |x: i64| -> i64 {
        let mut r = 1;
        for _ in 0..p - 2 {
            r = r * x % p;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let s = inv(a[rank][c]);
        for v in a[rank].iter_mut() {
            *v = *v * s % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                let pivot_row = a[rank].clone();
                for (v, q) in a[r].iter_mut().zip(&pivot_row) {
                    *v = (*v - f * q).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti number and, per prime, the number of cyclic p-power summands of H_n.
pub struct OracleGroup {
    pub free_rank: usize,
    pub p_summands: Vec<(i64, usize)>,
}

pub const PRIMES: [i64; 4] = [2, 3, 5, 7];

pub fn oracle_homology(table: &Table, n: usize, extended: bool) -> OracleGroup {
    let k = table.len();
    let off = usize::from(extended);
    let chains = k.pow((n + off) as u32);
    let rank_n = if n == 0 {
        0
    } else {
        rank_q(&boundary(table, n, extended))
    };
    let up = boundary(table, n + 1, extended);
    let rank_up = rank_q(&up);
    OracleGroup {
        free_rank: chains - rank_n - rank_up,
        p_summands: PRIMES
            .iter()
            .map(|&p| (p, rank_up - rank_mod(&up, p)))
            .collect(),
    }
}
