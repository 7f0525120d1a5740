use std::fmt;

use super::cyclotomic::gcd;
use crate::error::{Error, Result};

/// A matrix over the residue ring `Z/mZ` with entries reduced into `[0, m)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueMatrix {
    modulus: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

fn reduce(v: i64, m: u32) -> u32 {
    v.rem_euclid(m as i64) as u32
}

/// Inverse of `a` modulo `m`, if it is a unit.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

impl ResidueMatrix {
    pub fn new(modulus: u32, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} residue matrix needs {} entries",
                rows * cols
            )));
        }
        Ok(ResidueMatrix {
            modulus,
            rows,
            cols,
            entries: entries.iter().map(|&v| reduce(v, modulus)).collect(),
        })
    }

    /// Square matrix from rows.
    pub fn from_rows(modulus: u32, rows: &[&[i64]]) -> Result<Self> {
        let n = rows.len();
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new(modulus, n, rows.first().map_or(0, |r| r.len()), &flat)
    }

    pub fn identity(modulus: u32, n: usize) -> Self {
        let mut e = vec![0i64; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        Self::new(modulus, n, n, &e).expect("valid identity")
    }

    pub fn scalar(modulus: u32, n: usize, s: i64) -> Self {
        let mut e = vec![0i64; n * n];
        for i in 0..n {
            e[i * n + i] = s;
        }
        Self::new(modulus, n, n, &e).expect("valid scalar")
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::InvalidInput(format!(
                "modulus mismatch: {} vs {}",
                self.modulus, other.modulus
            )));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch("inner dimensions differ".into()));
        }
        let m = self.modulus as u64;
        let mut entries = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u64 * other.get(k, j) as u64;
                }
                entries[i * other.cols + j] = (acc % m) as u32;
            }
        }
        Ok(ResidueMatrix { modulus: self.modulus, rows: self.rows, cols: other.cols, entries })
    }

    /// Applies the matrix to a column vector of residues.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let m = self.modulus as u64;
        (0..self.rows)
            .map(|i| {
                let acc: u64 = (0..self.cols).map(|k| self.get(i, k) as u64 * v[k] as u64).sum();
                (acc % m) as u32
            })
            .collect()
    }

    /// Determinant reduced modulo `m`, by cofactor expansion (the sizes used
    /// here are tiny).
    pub fn det(&self) -> Result<u32> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let vals: Vec<i64> = self.entries.iter().map(|&v| v as i64).collect();
        let cols: Vec<usize> = (0..n).collect();
        Ok(reduce(cofactor(&vals, n, 0, &cols, self.modulus as i64), self.modulus))
    }

    pub fn is_invertible(&self) -> bool {
        self.det().is_ok_and(|d| gcd(d as u64, self.modulus as u64) == 1)
    }

    /// Inverse via the adjugate; fails unless the determinant is a unit.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det()?;
        let dinv = inverse_mod(d as u64, self.modulus as u64).ok_or(Error::NotInvertible)?;
        let n = self.rows;
        let m = self.modulus as i64;
        let vals: Vec<i64> = self.entries.iter().map(|&v| v as i64).collect();
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                // adj[j][i] = (-1)^{i+j} minor(i, j)
                let minor = if n == 1 {
                    1
                } else {
                    let sub: Vec<i64> = (0..n)
                        .filter(|&r| r != i)
                        .flat_map(|r| (0..n).filter(|&c| c != j).map(move |c| (r, c)))
                        .map(|(r, c)| vals[r * n + c])
                        .collect();
                    let cols: Vec<usize> = (0..n - 1).collect();
                    cofactor(&sub, n - 1, 0, &cols, m)
                };
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                out[j * n + i] = (sign * minor).rem_euclid(m) * dinv as i64 % m;
            }
        }
        Self::new(self.modulus, n, n, &out)
    }

    /// Re-reduces the entries modulo a divisor of the current modulus.
    pub fn reduce_mod(&self, modulus: u32) -> Result<Self> {
        if modulus == 0 || !self.modulus.is_multiple_of(modulus) {
            return Err(Error::InvalidInput(format!("{modulus} does not divide {}", self.modulus)));
        }
        let e: Vec<i64> = self.entries.iter().map(|&v| v as i64).collect();
        Self::new(modulus, self.rows, self.cols, &e)
    }
}

// Laplace expansion along `row` over the remaining columns, reduced mod m.
fn cofactor(vals: &[i64], n: usize, row: usize, cols: &[usize], m: i64) -> i64 {
    if cols.len() == 1 {
        return vals[row * n + cols[0]].rem_euclid(m);
    }
    let mut acc = 0i64;
    for (idx, &c) in cols.iter().enumerate() {
        let a = vals[row * n + c];
        if a == 0 {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = cofactor(vals, n, row + 1, &rest, m);
        let term = a.rem_euclid(m) * sub % m;
        acc = if idx % 2 == 0 { (acc + term) % m } else { (acc - term).rem_euclid(m) };
    }
    acc
}

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "] mod {}", self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_are_reduced() {
        let a = ResidueMatrix::from_rows(4, &[&[-1, 5], &[8, 3]]).unwrap();
        assert_eq!(a.entries(), &[3, 1, 0, 3]);
    }

    #[test]
    fn invertibility_matches_unit_determinant() {
        // exhaustive over 2x2 matrices mod 4
        let mut count = 0;
        for code in 0..256i64 {
            let e = [code % 4, (code / 4) % 4, (code / 16) % 4, code / 64];
            let a = ResidueMatrix::new(4, 2, 2, &e).unwrap();
            let inv = a.inverse();
            assert_eq!(inv.is_ok(), a.is_invertible());
            if let Ok(inv) = inv {
                count += 1;
                assert_eq!(a.mul(&inv).unwrap(), ResidueMatrix::identity(4, 2));
            }
        }
        assert_eq!(count, 96);
    }

    #[test]
    fn three_by_three_inverse() {
        let a = ResidueMatrix::from_rows(5, &[&[1, 2, 0], &[0, 1, 3], &[4, 0, 2]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(inv.mul(&a).unwrap(), ResidueMatrix::identity(5, 3));
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inverse_mod(3, 4), Some(3));
        assert_eq!(inverse_mod(2, 4), None);
        assert_eq!(inverse_mod(7, 61), Some(35));
    }
}
