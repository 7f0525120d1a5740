use std::fmt;

use super::{CyclotomicNumber, Rational};
use crate::error::{Error, Result};

/// A dense matrix over `Q(ζ_m)` with a single conductor shared by every entry.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<CyclotomicNumber>,
}

impl ExactMatrix {
    pub fn from_entries(
        rows: usize,
        cols: usize,
        conductor: u32,
        entries: Vec<CyclotomicNumber>,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.conductor() != conductor) {
            return Err(Error::ConductorMismatch(conductor, bad.conductor()));
        }
        Ok(ExactMatrix { rows, cols, conductor, entries })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        conductor: u32,
        mut f: impl FnMut(usize, usize) -> CyclotomicNumber,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::from_entries(rows, cols, conductor, entries)
    }

    /// Integer matrix given row by row, viewed over conductor `m`.
    pub fn from_ints(conductor: u32, rows: &[&[i64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::from_fn(r, c, conductor, |i, j| CyclotomicNumber::from_int(conductor, rows[i][j]))
    }

    pub fn from_rationals(conductor: u32, rows: usize, cols: usize, vals: &[Rational]) -> Result<Self> {
        if vals.len() != rows * cols {
            return Err(Error::ShapeMismatch("wrong number of rationals".into()));
        }
        Self::from_fn(rows, cols, conductor, |i, j| {
            CyclotomicNumber::from_rational(conductor, vals[i * cols + j].clone())
        })
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        Self::scalar(n, &CyclotomicNumber::one(conductor))
    }

    pub fn zero(rows: usize, cols: usize, conductor: u32) -> Self {
        Self::from_fn(rows, cols, conductor, |_, _| CyclotomicNumber::zero(conductor))
            .expect("nonempty shape")
    }

    pub fn scalar(n: usize, s: &CyclotomicNumber) -> Self {
        let m = s.conductor();
        Self::from_fn(n, n, m, |i, j| if i == j { s.clone() } else { CyclotomicNumber::zero(m) })
            .expect("nonempty shape")
    }

    pub fn diagonal(diag: &[CyclotomicNumber]) -> Result<Self> {
        let m = diag.first().ok_or_else(|| Error::ShapeMismatch("empty diagonal".into()))?.conductor();
        let n = diag.len();
        Self::from_fn(n, n, m, |i, j| if i == j { diag[i].clone() } else { CyclotomicNumber::zero(m) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[CyclotomicNumber] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CyclotomicNumber::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    /// `Some(λ)` when the matrix equals `λ·I`.
    pub fn as_scalar(&self) -> Option<CyclotomicNumber> {
        if !self.is_square() {
            return None;
        }
        let d = self.get(0, 0).clone();
        let ok = (0..self.rows).all(|i| {
            (0..self.cols).all(|j| if i == j { *self.get(i, j) == d } else { self.get(i, j).is_zero() })
        });
        ok.then_some(d)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch(self.conductor, other.conductor));
        }
        let m = self.conductor;
        let mut out = vec![CyclotomicNumber::zero(m); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out[idx] = &out[idx] + &(a * b);
                }
            }
        }
        Ok(ExactMatrix { rows: self.rows, cols: other.cols, conductor: m, entries: out })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&CyclotomicNumber, &CyclotomicNumber) -> CyclotomicNumber,
    ) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("elementwise shapes differ".into()));
        }
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch(self.conductor, other.conductor));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, conductor: self.conductor, entries })
    }

    pub fn scale(&self, s: &CyclotomicNumber) -> Result<Self> {
        if s.conductor() != self.conductor {
            return Err(Error::ConductorMismatch(self.conductor, s.conductor()));
        }
        let entries = self.entries.iter().map(|e| e * s).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, conductor: self.conductor, entries })
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, conductor: self.conductor, entries }
    }

    pub fn trace(&self) -> Result<CyclotomicNumber> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("trace of a non-square matrix".into()));
        }
        let mut t = CyclotomicNumber::zero(self.conductor);
        for i in 0..self.rows {
            t = &t + self.get(i, i);
        }
        Ok(t)
    }

    /// Kronecker product `A ⊗ B`, with `(A⊗B)[(i,k),(j,l)] = A[i,j]·B[k,l]`.
    pub fn kronecker(&self, other: &Self) -> Result<Self> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch(self.conductor, other.conductor));
        }
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        Self::from_fn(r, c, self.conductor, |row, col| {
            let (i, k) = (row / other.rows, row % other.rows);
            let (j, l) = (col / other.cols, col % other.cols);
            self.get(i, j) * other.get(k, l)
        })
    }

    // Gauss–Jordan on [A | I], pivoting on the first nonzero entry of each column.
    fn eliminate(&self, augment: bool) -> (Vec<Vec<CyclotomicNumber>>, CyclotomicNumber, usize) {
        let n = self.rows;
        let m = self.conductor;
        let width = if augment { self.cols + n } else { self.cols };
        let mut rows: Vec<Vec<CyclotomicNumber>> = (0..n)
            .map(|i| {
                (0..width)
                    .map(|j| {
                        if j < self.cols {
                            self.get(i, j).clone()
                        } else if j - self.cols == i {
                            CyclotomicNumber::one(m)
                        } else {
                            CyclotomicNumber::zero(m)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut det = CyclotomicNumber::one(m);
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..n).find(|&r| !rows[r][c].is_zero()) else {
                det = CyclotomicNumber::zero(m);
                continue;
            };
            if p != rank {
                rows.swap(p, rank);
                det = -&det;
            }
            let pivot = rows[rank][c].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for v in rows[rank].iter_mut().skip(c) {
                *v = &*v * &inv;
            }
            for r in 0..n {
                if r != rank && !rows[r][c].is_zero() {
                    let f = rows[r][c].clone();
                    for k in c..width {
                        if rows[rank][k].is_zero() {
                            continue;
                        }
                        let t = &rows[rank][k] * &f;
                        rows[r][k] = &rows[r][k] - &t;
                    }
                }
            }
            rank += 1;
        }
        (rows, det, rank)
    }

    pub fn rank(&self) -> usize {
        self.eliminate(false).2
    }

    pub fn det(&self) -> Result<CyclotomicNumber> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let (_, det, rank) = self.eliminate(false);
        Ok(if rank < self.rows { CyclotomicNumber::zero(self.conductor) } else { det })
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let (rows, _, rank) = self.eliminate(true);
        if rank < self.rows {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        let entries = rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Ok(ExactMatrix { rows: n, cols: n, conductor: self.conductor, entries })
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("power of a non-square matrix".into()));
        }
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::identity(self.rows, self.conductor);
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// The representative `λA` of the projective class of `A` whose first
    /// nonzero entry (row-major) is 1.
    pub fn canonical_projective(&self) -> Result<Self> {
        let lead = self.entries.iter().find(|e| !e.is_zero()).ok_or(Error::ZeroMatrix)?;
        if lead.is_one() {
            return Ok(self.clone());
        }
        self.scale(&lead.inv()?)
    }

    /// Re-expresses every entry over a multiple of the current conductor.
    pub fn lift(&self, target: u32) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.lift(target)).collect::<Result<Vec<_>>>()?;
        Self::from_entries(self.rows, self.cols, target, entries)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fourier3() -> ExactMatrix {
        ExactMatrix::from_fn(3, 3, 3, |i, j| CyclotomicNumber::zeta_pow(3, (i * j) as i64)).unwrap()
    }

    #[test]
    fn identity_products() {
        let i3 = ExactMatrix::identity(3, 1);
        assert_eq!(i3.mul(&i3).unwrap(), i3);
        let i2 = ExactMatrix::identity(2, 1);
        assert_eq!(i2.kronecker(&i2).unwrap(), ExactMatrix::identity(4, 1));
    }

    #[test]
    fn fourier_inverse() {
        let f = fourier3();
        let finv = f.inverse().unwrap();
        assert!(f.mul(&finv).unwrap().is_identity());
        assert!(finv.mul(&f).unwrap().is_identity());
        // F^{-1} = conj(F)/3 for the discrete Fourier matrix
        let expected = ExactMatrix::from_fn(3, 3, 3, |i, j| {
            CyclotomicNumber::zeta_pow(3, -((i * j) as i64)).scale(&Rational::new(1, 3))
        })
        .unwrap();
        assert_eq!(finv, expected);
    }

    #[test]
    fn singular_and_shape_errors() {
        let s = ExactMatrix::from_ints(1, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::NotInvertible));
        assert!(s.det().unwrap().is_zero());
        let r = ExactMatrix::from_ints(1, &[&[1, 2, 3]]).unwrap();
        assert!(matches!(r.mul(&r), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn canonical_projective_examples() {
        let d = ExactMatrix::from_ints(1, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]).unwrap();
        assert!(d.canonical_projective().unwrap().is_identity());
        let a = ExactMatrix::from_ints(1, &[&[0, 3], &[1, 0]]).unwrap();
        let expected = ExactMatrix::from_rationals(
            1,
            2,
            2,
            &[Rational::zero(), Rational::one(), Rational::new(1, 3), Rational::zero()],
        )
        .unwrap();
        assert_eq!(a.canonical_projective().unwrap(), expected);
        assert_eq!(ExactMatrix::zero(2, 2, 1).canonical_projective(), Err(Error::ZeroMatrix));
    }

    #[test]
    fn determinant_of_fourier() {
        // det(F_3)^2 = -27 for the unnormalized 3x3 DFT
        let d = fourier3().det().unwrap();
        assert_eq!(&d * &d, CyclotomicNumber::from_int(3, -27));
    }

    fn arb_entry() -> impl Strategy<Value = CyclotomicNumber> {
        prop::collection::vec((-3i64..4, 1i64..3), 4).prop_map(|v| {
            CyclotomicNumber::from_coeffs(12, v.into_iter().map(|(a, b)| Rational::new(a, b)).collect())
                .unwrap()
        })
    }

    fn arb_matrix() -> impl Strategy<Value = ExactMatrix> {
        prop::collection::vec(arb_entry(), 9)
            .prop_map(|e| ExactMatrix::from_entries(3, 3, 12, e).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn multiplication_is_associative(a in arb_matrix(), b in arb_matrix(), c in arb_matrix()) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        }

        #[test]
        fn inverse_roundtrip(a in arb_matrix()) {
            if let Ok(inv) = a.inverse() {
                prop_assert!(a.mul(&inv).unwrap().is_identity());
            } else {
                prop_assert!(a.det().unwrap().is_zero());
            }
        }

        #[test]
        fn canonical_form_is_scalar_invariant(a in arb_matrix(), s in arb_entry()) {
            prop_assume!(!a.is_zero() && !s.is_zero());
            let c = a.canonical_projective().unwrap();
            prop_assert_eq!(c.canonical_projective().unwrap(), c.clone());
            prop_assert_eq!(a.scale(&s).unwrap().canonical_projective().unwrap(), c);
        }
    }
}
