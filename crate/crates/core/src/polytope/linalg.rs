//! Fraction-free integer linear algebra.

#![allow(clippy::needless_range_loop)]

pub fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn gcd_all(xs: &[i128]) -> i128 {
    xs.iter().fold(0, |g, &x| gcd(g, x))
}

/// Divides out the content of `xs`, leaving it unchanged if it is zero.
pub fn make_primitive(xs: &mut [i128]) {
    let g = gcd_all(xs);
    if g > 1 {
        for x in xs.iter_mut() {
            *x /= g;
        }
    }
}

/// Bareiss elimination on a copy of `rows`. Returns the pivot columns in
/// order; their count is the rank.
pub fn pivot_columns(rows: &[Vec<i128>]) -> Vec<usize> {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut prev = 1i128;
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&k| m[k][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for k in r + 1..m.len() {
            for j in c + 1..cols {
                m[k][j] = (m[r][c] * m[k][j] - m[k][c] * m[r][j]) / prev;
            }
            m[k][c] = 0;
        }
        prev = m[r][c];
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<i128>]) -> usize {
    pivot_columns(rows).len()
}

/// Determinant of a square matrix.
pub fn det(rows: &[Vec<i128>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for c in 0..n {
        let Some(p) = (c..n).find(|&k| m[k][c] != 0) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for k in c + 1..n {
            for j in c + 1..n {
                m[k][j] = (m[c][c] * m[k][j] - m[k][c] * m[c][j]) / prev;
            }
            m[k][c] = 0;
        }
        prev = m[c][c];
    }
    sign * m[n - 1][n - 1]
}

/// Classical adjugate, so that `m · adj(m) = det(m) · I`.
pub fn adjugate(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = sign * det(&minor);
        }
    }
    adj
}

/// gcd of all `d × d` minors of the `n × d` matrix whose columns are `cols`.
/// Zero when the columns are dependent.
pub fn maximal_minor_gcd(cols: &[Vec<i128>]) -> i128 {
    let d = cols.len();
    if d == 0 {
        return 1;
    }
    let n = cols[0].len();
    let mut g = 0;
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        let minor: Vec<Vec<i128>> = subset
            .iter()
            .map(|&r| cols.iter().map(|c| c[r]).collect())
            .collect();
        g = gcd(g, det(&minor));
        if g == 1 {
            return 1;
        }
        if !next_subset(&mut subset, n) {
            return g;
        }
    }
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
