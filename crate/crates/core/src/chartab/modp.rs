//! Dense linear algebra over a prime field `F_q`, for the modular phase of
//! the character table computation.

pub(crate) fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, q: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(q));
    pow_mod(a, q - 2, q)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest generator of the multiplicative group of `F_q`.
pub(crate) fn primitive_root(q: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = q - 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            factors.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..q)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (q - 1) / f, q) != 1))
        .unwrap_or(1)
}

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows,
/// and returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<u64>>, q: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = inv_mod(rows[r][c], q);
        for v in rows[r].iter_mut() {
            *v = *v * inv % q;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + (q - f) * rows[r][j]) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

#[cfg(test)]
pub(crate) fn rank(rows: &[Vec<u64>], q: u64) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, q).len()
}

/// Basis of `{x : A x = 0}` for a square matrix `A` given by rows.
pub(crate) fn nullspace(a: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    let pivots = rref(&mut m, q);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u64; n];
            x[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                x[pc] = (q - row[f]) % q;
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_helpers() {
        assert_eq!(primitive_root(13), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(inv_mod(5, 13) * 5 % 13, 1);
        assert!(is_prime(181) && !is_prime(187));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let q = 7;
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let ns = nullspace(&a, q);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: u64 = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert_eq!(dot % q, 0);
        }
        assert_eq!(rank(&a, q), 2);
    }
}
