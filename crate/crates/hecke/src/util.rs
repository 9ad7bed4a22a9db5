//! Small exact integer linear algebra helpers: solving `A x = b` over `Z`
//! with a kernel basis, and matrix rank via fraction-free elimination.

use num_bigint::BigInt;

/// Solution of an integer linear system: one particular solution plus a basis
/// of the integer kernel.
pub struct DiophantineSolution {
    pub particular: Vec<i64>,
    pub kernel: Vec<Vec<i64>>,
}

/// Solves `A x = b` over the integers via column reduction with a tracked
/// unimodular transform. Returns `None` when no integer solution exists.
pub fn solve_integer_system(a: &[Vec<i64>], b: &[i64]) -> Option<DiophantineSolution> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    assert_eq!(b.len(), m);
    if n == 0 {
        return if b.iter().all(|&x| x == 0) {
            Some(DiophantineSolution { particular: vec![], kernel: vec![] })
        } else {
            None
        };
    }

    let mut h: Vec<Vec<i64>> = a.to_vec();
    // u: n x n unimodular, columns tracked alongside the columns of h.
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();

    let col_swap = |h: &mut Vec<Vec<i64>>, u: &mut Vec<Vec<i64>>, c1: usize, c2: usize| {
        for row in h.iter_mut() {
            row.swap(c1, c2);
        }
        for row in u.iter_mut() {
            row.swap(c1, c2);
        }
    };

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pc = 0usize;
    for r in 0..m {
        if pc >= n {
            break;
        }
        // gcd-reduce columns pc..n against row r
        loop {
            let mut best: Option<usize> = None;
            for j in pc..n {
                if h[r][j] != 0 && best.map_or(true, |bj| h[r][j].abs() < h[r][bj].abs()) {
                    best = Some(j);
                }
            }
            let Some(j0) = best else { break };
            col_swap(&mut h, &mut u, pc, j0);
            let mut done = true;
            for j in pc + 1..n {
                if h[r][j] != 0 {
                    let q = h[r][j].div_euclid(h[r][pc]);
                    for row in h.iter_mut() {
                        row[j] -= q * row[pc];
                    }
                    for row in u.iter_mut() {
                        row[j] -= q * row[pc];
                    }
                    if h[r][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][pc] != 0 {
            if h[r][pc] < 0 {
                for row in h.iter_mut() {
                    row[pc] = -row[pc];
                }
                for row in u.iter_mut() {
                    row[pc] = -row[pc];
                }
            }
            pivots.push((r, pc));
            pc += 1;
        }
    }

    // Forward-solve H y = b on pivot entries.
    let mut y = vec![0i64; n];
    let mut residual: Vec<i64> = b.to_vec();
    for &(r, c) in &pivots {
        let p = h[r][c];
        if residual[r] % p != 0 {
            return None;
        }
        let q = residual[r] / p;
        y[c] = q;
        for (i, res) in residual.iter_mut().enumerate() {
            *res -= q * h[i][c];
        }
    }
    if residual.iter().any(|&x| x != 0) {
        return None;
    }

    // x = U y
    let particular: Vec<i64> = (0..n).map(|i| (0..n).map(|j| u[i][j] * y[j]).sum()).collect();
    let kernel: Vec<Vec<i64>> = (pc..n).map(|j| (0..n).map(|i| u[i][j]).collect()).collect();

    debug_assert!(matvec(a, &particular) == b);
    debug_assert!(kernel.iter().all(|k| matvec(a, k).iter().all(|&x| x == 0)));
    Some(DiophantineSolution { particular, kernel })
}

fn matvec(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(&c, &v)| c * v).sum())
        .collect()
}

/// Rank of an integer matrix, computed with Bareiss fraction-free elimination
/// over arbitrary-precision integers.
pub fn integer_matrix_rank(rows: &[Vec<i64>]) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let zero = BigInt::from(0);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut row = 0;
    for col in 0..n {
        if row >= m {
            break;
        }
        let Some(p) = (row..m).find(|&i| a[i][col] != zero) else {
            continue;
        };
        a.swap(row, p);
        for i in row + 1..m {
            for j in col + 1..n {
                let num = &a[row][col] * &a[i][j] - &a[i][col] * &a[row][j];
                a[i][j] = num / &prev;
            }
            a[i][col] = zero.clone();
        }
        prev = a[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}
