//! Action of Dehn twists on first homology.
//!
//! Basis order is `a_1, b_1, .., a_g, b_g, d_1, .., d_{b-1}`. The intersection
//! pairing has `<a_i, b_i> = 1`, `<b_i, a_i> = -1`, and every pairing with a
//! `d_k` vanishes. A twist about a curve of class `c` acts by the
//! transvection `x -> x + <x, c> c`.

use std::ops::Mul;

use num_integer::Integer;
use num_traits::Signed;

use super::{McgError, SurfaceType};

/// Square integer matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T> IntMatrix<T>
where
    T: Integer + Signed + Clone,
{
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(T::zero(), |acc, j| acc + self.get(i, j).clone() * x[j].clone())
            })
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> T {
        let n = self.n;
        if n == 0 {
            return T::one();
        }
        let mut a = self.entries.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return T::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i * n + j].clone() * a[k * n + k].clone()
                        - a[i * n + k].clone() * a[k * n + j].clone();
                    a[i * n + j] = v.div_floor(&prev);
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * a[n * n - 1].clone()
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }
}

impl<T> Mul for &IntMatrix<T>
where
    T: Integer + Signed + Clone,
{
    type Output = IntMatrix<T>;

    fn mul(self, rhs: &IntMatrix<T>) -> IntMatrix<T> {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = IntMatrix::<T>::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j).clone() + a.clone() * rhs.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Intersection pairing matrix for a surface of the given type.
pub fn intersection_form<T>(s: SurfaceType) -> IntMatrix<T>
where
    T: Integer + Signed + Clone,
{
    let mut j = IntMatrix::zeros(s.homology_rank());
    for i in 0..s.genus as usize {
        j.set(2 * i, 2 * i + 1, T::one());
        j.set(2 * i + 1, 2 * i, -T::one());
    }
    j
}

/// `<x, y> = x^T J y`.
pub fn pairing<T>(x: &[T], y: &[T], form: &IntMatrix<T>) -> T
where
    T: Integer + Signed + Clone,
{
    let jy = form.apply(y);
    x.iter()
        .zip(&jy)
        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

fn check_dim<T>(v: &[T], n: usize) -> Result<(), McgError> {
    if v.len() != n {
        return Err(McgError::DimensionMismatch {
            expected: n,
            got: v.len(),
        });
    }
    Ok(())
}

/// `x + <x, c> c`.
pub fn twist_transvection<T>(curve: &[T], x: &[T], form: &IntMatrix<T>) -> Result<Vec<T>, McgError>
where
    T: Integer + Signed + Clone,
{
    check_dim(curve, form.size())?;
    check_dim(x, form.size())?;
    let k = pairing(x, curve, form);
    Ok(x.iter()
        .zip(curve)
        .map(|(xi, ci)| xi.clone() + k.clone() * ci.clone())
        .collect())
}

/// One letter of a twist word: the twist about `class`, raised to `power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistLetter<T> {
    pub class: Vec<T>,
    pub power: i64,
}

/// Matrix of `x -> x + k <x, c> c`, the `k`-th power of the twist about `c`.
pub fn transvection_matrix<T>(class: &[T], power: i64, form: &IntMatrix<T>) -> Result<IntMatrix<T>, McgError>
where
    T: Integer + Signed + Clone + From<i64>,
{
    let n = form.size();
    check_dim(class, n)?;
    let mut m = IntMatrix::<T>::identity(n);
    let k = T::from(power);
    // column j is the image of e_j: e_j + k <e_j, c> c, and <e_j, c> = (J c)_j
    let jc = form.apply(class);
    for j in 0..n {
        let coef = k.clone() * jc[j].clone();
        if coef.is_zero() {
            continue;
        }
        for i in 0..n {
            let v = m.get(i, j).clone() + coef.clone() * class[i].clone();
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Matrix of the word `t_1 t_2 .. t_m`, acting as `M(t_1) M(t_2) .. M(t_m)`
/// (the last letter applies first).
pub fn homology_action<T>(word: &[TwistLetter<T>], s: SurfaceType) -> Result<IntMatrix<T>, McgError>
where
    T: Integer + Signed + Clone + From<i64>,
{
    let form = intersection_form(s);
    let mut acc = IntMatrix::identity(form.size());
    for letter in word {
        let m = transvection_matrix(&letter.class, letter.power, &form)?;
        acc = &acc * &m;
    }
    Ok(acc)
}

/// `H^T J H = J`.
pub fn preserves_form<T>(h: &IntMatrix<T>, form: &IntMatrix<T>) -> bool
where
    T: Integer + Signed + Clone,
{
    &(&h.transpose() * form) * h == *form
}

pub fn is_unimodular<T>(h: &IntMatrix<T>) -> bool
where
    T: Integer + Signed + Clone,
{
    h.determinant().abs().is_one()
}
