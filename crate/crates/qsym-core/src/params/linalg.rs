//! Dense linear algebra modulo large primes, for indicator-matrix rank and
//! decomposition solving.

pub const P1: u64 = (1 << 61) - 1;
pub const P2: u64 = 2_305_843_009_213_693_921; // 2^61 - 31

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Row echelon form in place; returns the pivot column of each eliminated row.
fn eliminate(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let width = rows.first().map(Vec::len).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..width {
        let Some(pivot) = (next_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(next_row, pivot);
        let scale = inv(rows[next_row][col], p);
        for v in rows[next_row].iter_mut() {
            *v = mulmod(*v, scale, p);
        }
        for r in 0..rows.len() {
            if r != next_row && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..width {
                    let sub = mulmod(factor, rows[next_row][c], p);
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&v| v % p).collect()).collect();
    eliminate(&mut m, p).len()
}

/// Solves rows · x = rhs modulo p (free variables set to zero); None if
/// inconsistent.
pub fn solve(rows: &[Vec<u64>], rhs: &[u64], p: u64) -> Option<Vec<u64>> {
    let unknowns = rows.first().map(Vec::len).unwrap_or(0);
    let mut aug: Vec<Vec<u64>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut row: Vec<u64> = r.iter().map(|&v| v % p).collect();
            row.push(b % p);
            row
        })
        .collect();
    let pivots = eliminate(&mut aug, p);
    if pivots.last() == Some(&unknowns) {
        return None; // a pivot in the rhs column: inconsistent
    }
    let mut x = vec![0u64; unknowns];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug[row][unknowns];
    }
    Some(x)
}

/// Symmetric lift from [0, p) to the signed integers.
pub fn lift(x: u64, p: u64) -> i64 {
    if x > p / 2 {
        -((p - x) as i64)
    } else {
        x as i64
    }
}
