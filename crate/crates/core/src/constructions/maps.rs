//! Torus point orders, the monomial map ψ and the maps φ_n.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{CyclotomicNumber, ExactMatrix, Rational};
use crate::fingroup::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TorusForm {
    /// `xy = 1`
    Split,
    /// `x^2 + y^2 = 1`
    Circle,
    /// `x^2 + 3y^2 = 1`
    Norm3,
}

/// Points of finite order on these conics have order at most 6; the search
/// stops well past that.
pub const TORUS_ORDER_CAP: u64 = 64;

fn torus_matrix(form: TorusForm, x: &Rational, y: &Rational) -> Result<ExactMatrix> {
    let r = |v: Rational| CyclotomicNumber::from_rational(1, v);
    let (eq, entries) = match form {
        TorusForm::Split => (&(x * y) - &Rational::one(), [x.clone(), Rational::zero(), Rational::zero(), y.clone()]),
        TorusForm::Circle => (&(&(x * x) + &(y * y)) - &Rational::one(), [x.clone(), -y, y.clone(), x.clone()]),
        TorusForm::Norm3 => {
            let three = Rational::from_int(3);
            let y3 = &three * y;
            (&(&(x * x) + &(&y3 * y)) - &Rational::one(), [x.clone(), -y3, y.clone(), x.clone()])
        }
    };
    if !eq.is_zero() {
        return Err(Error::InvalidInput(format!("({x}, {y}) is not on the curve")));
    }
    ExactMatrix::from_entries(2, 2, 1, entries.into_iter().map(r).collect())
}

/// Order of a rational point under the group law of the torus, via its
/// 2×2 matrix model.
pub fn torus_point_order(form: TorusForm, x: &Rational, y: &Rational) -> Result<u64> {
    let m = torus_matrix(form, x, y)?;
    let mut acc = m.clone();
    for k in 1..=TORUS_ORDER_CAP {
        if acc.is_identity() {
            return Ok(k);
        }
        acc = acc.mul(&m)?;
    }
    Err(Error::Verification(format!("point has order exceeding {TORUS_ORDER_CAP}")))
}

/// Index pairs of the off-diagonal matrix units, in the order
/// `E13, E23, E12, E32, E21, E31`.
pub const PSI_BASIS: [(usize, usize); 6] = [(0, 2), (1, 2), (0, 1), (2, 1), (1, 0), (2, 0)];

/// The monomial matrix `diag(λ) · P_σ` with `P_σ e_i = e_σ(i)`.
pub fn monomial_matrix(lambda: &[CyclotomicNumber; 3], sigma: &Perm) -> Result<ExactMatrix> {
    if sigma.degree() != 3 {
        return Err(Error::ShapeMismatch("permutation must have degree 3".into()));
    }
    let m = lambda[0].conductor();
    ExactMatrix::from_fn(3, 3, m, |r, c| {
        if sigma.image(c) == r {
            lambda[r].clone()
        } else {
            CyclotomicNumber::zero(m)
        }
    })
}

/// The action `X ↦ M X M^-1` of a monomial matrix on the span of the
/// off-diagonal matrix units, as a 6×6 matrix in [`PSI_BASIS`].
pub fn monomial_psi(lambda: &[CyclotomicNumber; 3], sigma: &Perm) -> Result<ExactMatrix> {
    if lambda.iter().any(CyclotomicNumber::is_zero) {
        return Err(Error::InvalidInput("scalars must be nonzero".into()));
    }
    let cond = lambda[0].conductor();
    if lambda.iter().any(|l| l.conductor() != cond) {
        return Err(Error::ConductorMismatch(cond, lambda.iter().map(|l| l.conductor()).max().unwrap_or(cond)));
    }
    let mm = monomial_matrix(lambda, sigma)?;
    let inv = mm.inverse()?;
    let mut cols = Vec::with_capacity(6);
    for &(i, j) in &PSI_BASIS {
        let unit = ExactMatrix::from_fn(3, 3, cond, |r, c| {
            if (r, c) == (i, j) {
                CyclotomicNumber::one(cond)
            } else {
                CyclotomicNumber::zero(cond)
            }
        })?;
        let image = mm.mul(&unit)?.mul(&inv)?;
        if (0..3).any(|k| !image.get(k, k).is_zero()) {
            return Err(Error::Verification("conjugate has a diagonal part".into()));
        }
        cols.push(PSI_BASIS.iter().map(|&(r, c)| image.get(r, c).clone()).collect::<Vec<_>>());
    }
    ExactMatrix::from_fn(6, 6, cond, |r, c| cols[c][r].clone())
}

/// Symmetric square of a 2×2 matrix on the basis `x^2, xy, y^2`.
pub fn symmetric_square(a: &ExactMatrix) -> Result<ExactMatrix> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::ShapeMismatch("symmetric square needs a 2x2 matrix".into()));
    }
    let m = a.conductor();
    let (p, q, r, s) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
    let two = Rational::from_int(2);
    let e = |x: &CyclotomicNumber, y: &CyclotomicNumber| x.try_mul(y);
    ExactMatrix::from_entries(
        3,
        3,
        m,
        vec![
            e(p, p)?,
            e(p, q)?,
            e(q, q)?,
            e(p, r)?.scale(&two),
            e(p, s)?.try_add(&e(q, r)?)?,
            e(q, s)?.scale(&two),
            e(r, r)?,
            e(r, s)?,
            e(s, s)?,
        ],
    )
}

/// `φ_n(A, B)`: `det(A)^{(-n-1)/2} (A ⊗ B)` for odd `n` and
/// `det(A)^{-n/2-1} (σ(A) ⊗ B)` for even `n`, with `σ` the symmetric square.
pub fn wps_phi(n: u32, a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    if a.rows() != 2 || a.cols() != 2 || !b.is_square() {
        return Err(Error::ShapeMismatch("need a 2x2 matrix and a square matrix".into()));
    }
    let det = a.det()?;
    if det.is_zero() || b.det()?.is_zero() {
        return Err(Error::NotInvertible);
    }
    let n = n as i64;
    if n % 2 == 1 {
        a.kronecker(b)?.scale(&det.pow((-n - 1) / 2)?)
    } else {
        symmetric_square(a)?.kronecker(b)?.scale(&det.pow(-n / 2 - 1)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn torus_orders() {
        assert_eq!(torus_point_order(TorusForm::Circle, &q(0, 1), &q(1, 1)).unwrap(), 4);
        assert_eq!(torus_point_order(TorusForm::Norm3, &q(1, 2), &q(1, 2)).unwrap(), 6);
        assert_eq!(torus_point_order(TorusForm::Circle, &q(1, 1), &q(0, 1)).unwrap(), 1);
        assert_eq!(torus_point_order(TorusForm::Split, &q(-1, 1), &q(-1, 1)).unwrap(), 2);
        assert!(matches!(torus_point_order(TorusForm::Circle, &q(1, 2), &q(1, 2)), Err(Error::InvalidInput(_))));
        // (3/5, 4/5) lies on the circle but has infinite order
        assert!(matches!(torus_point_order(TorusForm::Circle, &q(3, 5), &q(4, 5)), Err(Error::Verification(_))));
    }

    #[test]
    fn psi_on_diagonal() {
        let l = |x: i64| CyclotomicNumber::from_int(1, x);
        let m = monomial_psi(&[l(2), l(1), l(1)], &Perm::identity(3)).unwrap();
        let h = |a, b| CyclotomicNumber::from_rational(1, q(a, b));
        let want = ExactMatrix::diagonal(&[h(2, 1), h(1, 1), h(2, 1), h(1, 1), h(1, 2), h(1, 2)]).unwrap();
        assert_eq!(m, want);
        assert!(monomial_psi(&[l(5), l(5), l(5)], &Perm::identity(3)).unwrap().is_identity());
        assert!(monomial_psi(&[l(0), l(1), l(1)], &Perm::identity(3)).is_err());
    }

    #[test]
    fn phi_kernel_forms() {
        for t in [2i64, -3, 7] {
            let tt = CyclotomicNumber::from_int(1, t);
            let a = ExactMatrix::scalar(2, &tt);
            for n in 1..=4u32 {
                for m in 1..=2usize {
                    let b = ExactMatrix::scalar(m, &tt.pow(n as i64).unwrap());
                    assert!(wps_phi(n, &a, &b).unwrap().is_identity(), "t={t} n={n} m={m}");
                }
            }
        }
        let sing = ExactMatrix::from_ints(1, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(wps_phi(1, &sing, &ExactMatrix::identity(1, 1)), Err(Error::NotInvertible));
    }

    #[test]
    fn phi_shapes() {
        let a = ExactMatrix::from_ints(1, &[&[1, 1], &[0, 1]]).unwrap();
        let b = ExactMatrix::identity(2, 1);
        assert_eq!(wps_phi(3, &a, &b).unwrap().rows(), 4);
        assert_eq!(wps_phi(2, &a, &b).unwrap().rows(), 6);
    }
}
