//! Exact dense linear algebra over the prime field F_p, plus the univariate
//! polynomial arithmetic needed for Fitting-style splitting: minimal
//! polynomials, complete factorization, and coprime kernel splits.
//!
//! p fits in a machine word; entries are reduced residues. Elimination uses
//! deterministic first-nonzero pivoting so runs are reproducible.

use crate::{Error, Result};
use rand::rngs::StdRng;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            for x in row {
                data.push(x % p);
            }
        }
        FpMatrix {
            p,
            rows: r,
            cols: c,
            data,
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scalar_mul(&self, c: u64) -> FpMatrix {
        let c = c % self.p;
        let data = self.data.iter().map(|&a| a * c % self.p).collect();
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix product, accumulating a full row before reducing. Row sums are
    /// bounded by dim * (p-1)^2 which comfortably fits u64 at desk scale.
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            let out_row_base = i * out.cols;
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                let other_base = k * other.cols;
                for j in 0..other.cols {
                    out.data[out_row_base + j] += a * other.data[other_base + j];
                }
            }
            for j in 0..out.cols {
                out.data[out_row_base + j] %= self.p;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc += self.at(i, j) * v[j];
                }
                acc % self.p
            })
            .collect()
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn take_cols(&self, idx: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.set(i, jj, self.at(i, j));
            }
        }
        out
    }

    pub fn take_rows(&self, idx: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.at(i, j));
            }
        }
        out
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = FpMatrix::zeros(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j));
            }
        }
        out
    }

    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn random(p: u64, rows: usize, cols: usize, rng: &mut StdRng) -> FpMatrix {
        let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
        FpMatrix {
            p,
            rows,
            cols,
            data,
        }
    }

    /// Row reduction in place; returns pivot columns. First-nonzero
    /// pivoting.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut piv = None;
            for i in r..self.rows {
                if self.at(i, c) != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(piv) = piv else { continue };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = mod_inverse(self.at(r, c), p);
            for j in 0..self.cols {
                let v = self.at(r, j) * inv % p;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r {
                    let f = self.at(i, c);
                    if f != 0 {
                        for j in 0..self.cols {
                            let v = (self.at(i, j) + (p - f) * self.at(r, j)) % p;
                            self.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Pivot columns under row reduction: a maximal independent set of
    /// columns, deterministic.
    pub fn pivot_cols(&self) -> Vec<usize> {
        let mut m = self.clone();
        m.rref_in_place()
    }

    /// Basis of the kernel `{x : M x = 0}`, returned as columns.
    pub fn nullspace(&self) -> FpMatrix {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FpMatrix::zeros(p, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                let v = m.at(r, fc);
                if v != 0 {
                    out.set(pc, k, p - v);
                }
            }
        }
        #[cfg(debug_assertions)]
        {
            let chk = self.mul(&out);
            debug_assert!(chk.is_zero(), "nullspace substitution check failed");
        }
        out
    }

    /// Basis of the column space, as columns (the pivot columns of self).
    pub fn image_basis(&self) -> FpMatrix {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        self.take_cols(&pivots)
    }

    /// Solves `M x = b`; returns None if inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(self.rows, b.len());
        let p = self.p;
        let mut aug = FpMatrix::zeros(p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols);
        }
        #[cfg(debug_assertions)]
        {
            let chk = self.mul_vec(&x);
            debug_assert_eq!(chk, b.iter().map(|&v| v % p).collect::<Vec<_>>());
        }
        Some(x)
    }

    /// Solves `M X = B` column by column; None if any column is
    /// inconsistent.
    pub fn solve_matrix(&self, b: &FpMatrix) -> Option<FpMatrix> {
        assert_eq!(self.rows, b.rows);
        let p = self.p;
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = FpMatrix::zeros(p, self.cols, b.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, aug.at(r, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = self.hstack(&FpMatrix::identity(self.p, n));
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(aug.take_cols(&idx))
    }

    /// Horner evaluation `f(M)`.
    pub fn eval_poly(&self, f: &FpPoly) -> FpMatrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = FpMatrix::zeros(self.p, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc.set(i, i, (acc.at(i, i) + c) % self.p);
            }
        }
        acc
    }

    /// Horner evaluation `f(M) v` using only matrix-vector products.
    pub fn eval_poly_vec(&self, f: &FpPoly, v: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; v.len()];
        for &c in f.coeffs().iter().rev() {
            acc = self.mul_vec(&acc);
            for (a, &x) in acc.iter_mut().zip(v.iter()) {
                *a = (*a + c * x) % self.p;
            }
        }
        acc
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows.min(12) {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        if self.rows > 12 {
            writeln!(f, "  ...")?;
        }
        Ok(())
    }
}

pub fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0 mod p.
    mod_pow(a % p, p - 2, p)
}

pub fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// A monomial matrix: column `j` maps to `scal[j] * e_{perm[j]}`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialMatrix {
    pub p: u64,
    pub perm: Vec<usize>,
    pub scal: Vec<u64>,
}

impl MonomialMatrix {
    pub fn identity(p: u64, n: usize) -> Self {
        MonomialMatrix {
            p,
            perm: (0..n).collect(),
            scal: vec![1; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn to_dense(&self) -> FpMatrix {
        let n = self.dim();
        let mut m = FpMatrix::zeros(self.p, n, n);
        for j in 0..n {
            m.set(self.perm[j], j, self.scal[j]);
        }
        m
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; v.len()];
        for j in 0..v.len() {
            out[self.perm[j]] = (out[self.perm[j]] + self.scal[j] * v[j]) % self.p;
        }
        out
    }

    /// `self * other` as monomial matrices.
    pub fn compose(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let n = self.dim();
        let mut perm = vec![0usize; n];
        let mut scal = vec![0u64; n];
        for j in 0..n {
            perm[j] = self.perm[other.perm[j]];
            scal[j] = self.scal[other.perm[j]] * other.scal[j] % self.p;
        }
        MonomialMatrix {
            p: self.p,
            perm,
            scal,
        }
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let n = self.dim();
        let mut perm = vec![0usize; n];
        let mut scal = vec![0u64; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            scal[self.perm[j]] = mod_inverse(self.scal[j], self.p);
        }
        MonomialMatrix {
            p: self.p,
            perm,
            scal,
        }
    }

    /// `self * dense`.
    pub fn mul_dense(&self, dense: &FpMatrix) -> FpMatrix {
        assert_eq!(self.dim(), dense.rows);
        let mut out = FpMatrix::zeros(self.p, dense.rows, dense.cols);
        for k in 0..dense.rows {
            let target = self.perm[k];
            let s = self.scal[k];
            for j in 0..dense.cols {
                out.set(target, j, s * dense.at(k, j) % self.p);
            }
        }
        out
    }

    /// `dense * self`.
    pub fn rmul_dense(&self, dense: &FpMatrix) -> FpMatrix {
        assert_eq!(self.dim(), dense.cols);
        let mut out = FpMatrix::zeros(self.p, dense.rows, dense.cols);
        for i in 0..dense.rows {
            for j in 0..dense.cols {
                out.set(i, j, dense.at(i, self.perm[j]) * self.scal[j] % self.p);
            }
        }
        out
    }
}

impl fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial(dim {})", self.dim())
    }
}

/// Polynomial over F_p, coefficients low to high, leading coefficient
/// nonzero unless zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly {
            p,
            coeffs: vec![1],
        }
    }

    pub fn x(p: u64) -> Self {
        FpPoly {
            p,
            coeffs: vec![0, 1],
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inverse(self.leading(), self.p);
        FpPoly::new(
            self.p,
            self.coeffs.iter().map(|&c| c * inv % self.p).collect(),
        )
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| {
                    (self.coeffs.get(i).copied().unwrap_or(0)
                        + o.coeffs.get(i).copied().unwrap_or(0))
                        % self.p
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| {
                    (self.coeffs.get(i).copied().unwrap_or(0) + self.p
                        - o.coeffs.get(i).copied().unwrap_or(0))
                        % self.p
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        FpPoly::new(self.p, out)
    }

    /// Quotient and remainder.
    pub fn divmod(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.degree() < d.degree() || self.is_zero() {
            return (FpPoly::zero(self.p), self.clone());
        }
        let p = self.p;
        let dinv = mod_inverse(d.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; self.degree() - d.degree() + 1];
        for k in (d.degree()..=self.degree()).rev() {
            let c = rem[k] * dinv % p;
            if c == 0 {
                continue;
            }
            quo[k - d.degree()] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let idx = k - d.degree() + j;
                rem[idx] = (rem[idx] + p - c * dc % p) % p;
            }
        }
        (FpPoly::new(p, quo), FpPoly::new(p, rem))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divmod(d).1
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with `s*self + t*other = g`, g monic.
    pub fn ext_gcd(&self, other: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = mod_inverse(r0.leading(), p);
        let scale = FpPoly::new(p, vec![inv]);
        (r0.mul(&scale), s0.mul(&scale), t0.mul(&scale))
    }

    pub fn lcm(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let g = self.gcd(o);
        self.mul(o).divmod(&g).0.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        FpPoly::new(
            self.p,
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| (i as u64 + 1) % self.p * c % self.p)
                .collect(),
        )
    }

    /// Substitution `self(g) mod m` by Horner.
    fn compose_mod(&self, g: &FpPoly, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).rem(m);
            acc = acc.add(&FpPoly::new(self.p, vec![c]));
        }
        acc.rem(m)
    }

    /// Small power mod m.
    fn pow_mod(&self, mut e: u64, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", c)?,
                1 => {
                    if c == 1 {
                        write!(f, "x")?
                    } else {
                        write!(f, "{}x", c)?
                    }
                }
                _ => {
                    if c == 1 {
                        write!(f, "x^{}", i)?
                    } else {
                        write!(f, "{}x^{}", c, i)?
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Minimal polynomial of a vector under M: the monic generator of the
/// annihilator of the Krylov space of `v`.
fn vector_min_poly(m: &FpMatrix, v: &[u64]) -> FpPoly {
    let p = m.p;
    let n = m.rows;
    let maxlen = n + 2;
    // mutually reduced rows with leading 1, plus the polynomial coordinates
    // expressing each row in terms of v, Mv, M^2 v, ...
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut leads: Vec<usize> = Vec::new();
    let mut reps: Vec<Vec<u64>> = Vec::new();
    let mut cur = v.to_vec();
    for k in 0..=n {
        let mut vec = cur.clone();
        let mut rep = vec![0u64; maxlen];
        rep[k] = 1;
        for idx in 0..rows.len() {
            let f = vec[leads[idx]];
            if f != 0 {
                for (a, &b) in vec.iter_mut().zip(rows[idx].iter()) {
                    *a = (*a + (p - f) * b % p) % p;
                }
                for (a, &b) in rep.iter_mut().zip(reps[idx].iter()) {
                    *a = (*a + (p - f) * b % p) % p;
                }
            }
        }
        if vec.iter().all(|&x| x == 0) {
            return FpPoly::new(p, rep).monic();
        }
        let lead = vec.iter().position(|&x| x != 0).unwrap();
        let inv = mod_inverse(vec[lead], p);
        for a in vec.iter_mut() {
            *a = *a * inv % p;
        }
        for a in rep.iter_mut() {
            *a = *a * inv % p;
        }
        // clear the new leading column from the old rows so a single
        // reduction pass stays sufficient
        for idx in 0..rows.len() {
            let f = rows[idx][lead];
            if f != 0 {
                for j in 0..n {
                    rows[idx][j] = (rows[idx][j] + (p - f) * vec[j] % p) % p;
                }
                for j in 0..maxlen {
                    reps[idx][j] = (reps[idx][j] + (p - f) * rep[j] % p) % p;
                }
            }
        }
        rows.push(vec);
        leads.push(lead);
        reps.push(rep);
        cur = m.mul_vec(&cur);
    }
    unreachable!("Krylov chain longer than the dimension");
}

/// Monic minimal polynomial of a square matrix: lcm of vector annihilators
/// over a deterministic then random sequence of probe vectors, verified
/// exactly for small dimensions and by random probes otherwise.
pub fn min_poly(m: &FpMatrix, rng: &mut StdRng) -> FpPoly {
    assert!(m.is_square());
    let p = m.p;
    let n = m.rows;
    if n == 0 {
        return FpPoly::one(p);
    }
    let mut f = FpPoly::one(p);
    let mut stable = 0;
    let mut probes = 0usize;
    while stable < 3 && probes < 4 * n + 8 {
        let v: Vec<u64> = if probes < n {
            (0..n).map(|i| u64::from(i == probes)).collect()
        } else {
            (0..n).map(|_| rng.gen_range(0..p)).collect()
        };
        probes += 1;
        if m.eval_poly_vec(&f, &v).iter().all(|&x| x == 0) {
            if probes >= n {
                stable += 1;
            }
            continue;
        }
        stable = 0;
        f = f.lcm(&vector_min_poly(m, &v));
        if f.degree() == n {
            break; // cannot grow further
        }
    }
    if n <= 64 {
        debug_assert!(m.eval_poly(&f).is_zero(), "min_poly does not annihilate");
    }
    f
}

/// Squarefree decomposition in characteristic p (Yun adapted to char p).
fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let f = f.monic();
    if f.degree() == 0 {
        return vec![];
    }
    let deriv = f.derivative();
    let mut out = Vec::new();
    if deriv.is_zero() {
        // f = g(x^p) = (g*)^p with g* obtained by contracting exponents
        let mut coeffs = Vec::new();
        for (i, &c) in f.coeffs().iter().enumerate() {
            if i % p as usize == 0 {
                coeffs.push(c);
            } else {
                debug_assert_eq!(c, 0);
            }
        }
        let g = FpPoly::new(p, coeffs);
        for (h, m) in squarefree_decomposition(&g) {
            out.push((h, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.divmod(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.divmod(&y).0;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        c = c.divmod(&y).0;
        w = y;
    }
    if !c.is_one() {
        // the remaining part is a perfect p-th power; the recursion lands in
        // the zero-derivative branch which already scales multiplicities by p
        for (h, m) in squarefree_decomposition(&c) {
            out.push((h, m));
        }
    }
    out
}

/// x^p mod f via exponent spreading (freshman's dream).
fn frobenius_step(h: &FpPoly, xp: &FpPoly, f: &FpPoly) -> FpPoly {
    // h(x)^p = h(x^p), so reduce h(xp) mod f
    h.compose_mod(xp, f)
}

/// Distinct-degree factorization of a squarefree monic f: returns pairs
/// (product of irreducible factors of degree d, d).
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let xp = x.pow_mod(p, f); // x^p mod f (exponent fits u64)
    let mut xpd = x.clone(); // x^{p^d} mod rest, maintained by Frobenius
    let mut d = 0usize;
    while rest.degree() >= 1 {
        d += 1;
        if 2 * d > rest.degree() {
            out.push((rest.clone(), rest.degree()));
            break;
        }
        xpd = frobenius_step(&xpd, &xp, f);
        let g = xpd.sub(&x).gcd(&rest);
        if g.degree() > 0 {
            out.push((g.clone(), d));
            rest = rest.divmod(&g).0;
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting for odd p.
fn equal_degree(f: &FpPoly, d: usize, rng: &mut StdRng, out: &mut Vec<FpPoly>) {
    let p = f.p;
    if f.degree() == d {
        out.push(f.monic());
        return;
    }
    let x = FpPoly::x(p);
    let xp = x.pow_mod(p, f);
    loop {
        // random a, b = a^{(p^d-1)/2} mod f via Frobenius norm chain
        let a = FpPoly::new(p, (0..f.degree()).map(|_| rng.gen_range(0..p)).collect());
        if a.is_zero() {
            continue;
        }
        // t = a^{1 + p + ... + p^{d-1}} mod f
        let mut t = FpPoly::one(p);
        let mut frob = a.rem(f);
        for _ in 0..d {
            t = t.mul(&frob).rem(f);
            frob = frobenius_step(&frob, &xp, f);
        }
        let b = t.pow_mod((p - 1) / 2, f);
        let g = b.sub(&FpPoly::one(p)).gcd(f);
        if g.degree() > 0 && g.degree() < f.degree() {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.divmod(&g).0, d, rng, out);
            return;
        }
    }
}

/// Complete factorization over F_p into monic irreducibles with
/// multiplicities, sorted for determinism.
pub fn factor(f: &FpPoly, rng: &mut StdRng) -> Result<Vec<(FpPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::Invalid("cannot factor the zero polynomial".into()));
    }
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    for (sqfree, mult) in squarefree_decomposition(f) {
        for (prod, d) in distinct_degree(&sqfree) {
            let mut irr = Vec::new();
            equal_degree(&prod, d, rng, &mut irr);
            for g in irr {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    #[cfg(debug_assertions)]
    {
        let mut prod = FpPoly::new(f.p, vec![f.leading()]);
        for (g, m) in &out {
            for _ in 0..*m {
                prod = prod.mul(g);
            }
        }
        debug_assert_eq!(prod, *f, "factorization does not multiply back");
    }
    Ok(out)
}

/// Kernels of `f1(M)` and `f2(M)` for coprime `f1 f2` annihilating `M`:
/// complementary M-invariant subspaces, returned as column bases.
pub fn coprime_split(m: &FpMatrix, f1: &FpPoly, f2: &FpPoly) -> Result<(FpMatrix, FpMatrix)> {
    if !f1.gcd(f2).is_one() {
        return Err(Error::Invalid("factors are not coprime".into()));
    }
    let k1 = m.eval_poly(f1).nullspace();
    let k2 = m.eval_poly(f2).nullspace();
    if k1.cols + k2.cols != m.rows {
        return Err(Error::Internal(format!(
            "coprime split dimensions {} + {} != {} (product does not annihilate?)",
            k1.cols, k2.cols, m.rows
        )));
    }
    Ok((k1, k2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn rank_and_nullspace_basics() {
        let id = FpMatrix::identity(3, 4);
        assert_eq!(id.rank(), 4);
        let z = FpMatrix::zeros(3, 3, 3);
        assert_eq!(z.nullspace().cols, 3);
        let ones = FpMatrix::from_rows(3, vec![vec![1, 1, 1]; 3]);
        assert_eq!(ones.rank(), 1);
        assert_eq!(ones.nullspace().cols, 2);
    }

    #[test]
    fn solve_and_substitute() {
        let m = FpMatrix::from_rows(5, vec![vec![1, 2], vec![3, 4]]);
        let x = m.solve(&[1, 2]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 2]);

        // inconsistent system: no solution signal, not a fault
        let m = FpMatrix::from_rows(3, vec![vec![1, 1], vec![1, 1]]);
        assert!(m.solve(&[1, 2]).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..20 {
            let m = FpMatrix::random(7, 5, 5, &mut rng);
            match m.inverse() {
                Some(inv) => assert_eq!(m.mul(&inv), FpMatrix::identity(7, 5)),
                None => assert!(m.rank() < 5),
            }
        }
    }

    #[test]
    fn monomial_ops() {
        let a = MonomialMatrix {
            p: 3,
            perm: vec![1, 0, 2],
            scal: vec![1, 2, 1],
        };
        let b = MonomialMatrix {
            p: 3,
            perm: vec![2, 1, 0],
            scal: vec![2, 1, 1],
        };
        assert_eq!(
            a.compose(&b).to_dense(),
            a.to_dense().mul(&b.to_dense())
        );
        assert_eq!(
            a.inverse().to_dense(),
            a.to_dense().inverse().unwrap()
        );
        let d = FpMatrix::from_rows(3, vec![vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]);
        assert_eq!(a.mul_dense(&d), a.to_dense().mul(&d));
        assert_eq!(a.rmul_dense(&d), d.mul(&a.to_dense()));
        let v = vec![1, 2, 0];
        assert_eq!(a.mul_vec(&v), a.to_dense().mul_vec(&v));
    }

    #[test]
    fn min_poly_examples() {
        let mut rng = StdRng::seed_from_u64(1);
        // identity: x - 1
        let id = FpMatrix::identity(3, 4);
        assert_eq!(min_poly(&id, &mut rng), FpPoly::new(3, vec![2, 1]));
        // nilpotent Jordan block J_2: x^2
        let j = FpMatrix::from_rows(3, vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(min_poly(&j, &mut rng), FpPoly::new(3, vec![0, 0, 1]));
        // companion of x^2 + 1 over F_3
        let c = FpMatrix::from_rows(3, vec![vec![0, 2], vec![1, 0]]);
        assert_eq!(min_poly(&c, &mut rng), FpPoly::new(3, vec![1, 0, 1]));
    }

    #[test]
    fn min_poly_is_minimal_small_dims() {
        let mut rng = StdRng::seed_from_u64(2);
        for dim in 1..=8usize {
            for _ in 0..10 {
                let m = FpMatrix::random(3, dim, dim, &mut rng);
                let f = min_poly(&m, &mut rng);
                assert!(m.eval_poly(&f).is_zero());
                for (q, _) in factor(&f, &mut rng).unwrap() {
                    let (quo, rem) = f.divmod(&q);
                    assert!(rem.is_zero());
                    assert!(
                        !m.eval_poly(&quo).is_zero(),
                        "proper divisor annihilates: {:?} of {:?}",
                        quo,
                        f
                    );
                }
            }
        }
    }

    #[test]
    fn factor_examples() {
        let mut rng = StdRng::seed_from_u64(3);
        // x^2 - 1 = (x-1)(x+1) over F_3
        let f = FpPoly::new(3, vec![2, 0, 1]);
        let fs = factor(&f, &mut rng).unwrap();
        assert_eq!(
            fs,
            vec![
                (FpPoly::new(3, vec![1, 1]), 1),
                (FpPoly::new(3, vec![2, 1]), 1),
            ]
        );
        // x^2 = (x)^2
        let f = FpPoly::new(3, vec![0, 0, 1]);
        assert_eq!(factor(&f, &mut rng).unwrap(), vec![(FpPoly::x(3), 2)]);
        // x^2 + 1 irreducible over F_3
        let f = FpPoly::new(3, vec![1, 0, 1]);
        assert_eq!(factor(&f, &mut rng).unwrap(), vec![(f.clone(), 1)]);
    }

    #[test]
    fn factor_random_round_trip() {
        let mut rng = StdRng::seed_from_u64(4);
        for p in [3u64, 5, 7] {
            for _ in 0..40 {
                let deg = rng.gen_range(1..=12);
                let mut coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
                coeffs[deg] = rng.gen_range(1..p);
                let f = FpPoly::new(p, coeffs);
                let fs = factor(&f, &mut rng).unwrap();
                let mut prod = FpPoly::new(p, vec![f.leading()]);
                for (g, m) in &fs {
                    assert!(g.leading() == 1);
                    for _ in 0..*m {
                        prod = prod.mul(g);
                    }
                }
                assert_eq!(prod, f, "factorization round trip");
            }
        }
    }

    #[test]
    fn coprime_split_examples() {
        let mut rng = StdRng::seed_from_u64(6);
        // diag(1,2) over F_3 against (x-1)(x-2)
        let m = FpMatrix::from_rows(3, vec![vec![1, 0], vec![0, 2]]);
        let f1 = FpPoly::new(3, vec![2, 1]); // x - 1
        let f2 = FpPoly::new(3, vec![1, 1]); // x + 1 = x - 2
        let (k1, k2) = coprime_split(&m, &f1, &f2).unwrap();
        assert_eq!((k1.cols, k2.cols), (1, 1));

        // nilpotent against (x)(x-1): second kernel is zero
        let j = FpMatrix::from_rows(3, vec![vec![0, 1], vec![0, 0]]);
        let (k1, k2) = coprime_split(
            &j,
            &FpPoly::new(3, vec![0, 0, 1]),
            &FpPoly::new(3, vec![2, 1]),
        )
        .unwrap();
        assert_eq!((k1.cols, k2.cols), (2, 0));

        // non-coprime rejected
        assert!(coprime_split(&j, &FpPoly::x(3), &FpPoly::x(3)).is_err());

        // random matrices: split along the full min poly factorization,
        // dimensions add up and both pieces are invariant
        for _ in 0..10 {
            let m = FpMatrix::random(3, 6, 6, &mut rng);
            let f = min_poly(&m, &mut rng);
            let fs = factor(&f, &mut rng).unwrap();
            if fs.len() < 2 {
                continue;
            }
            let (q, e) = fs[0].clone();
            let mut f1 = FpPoly::one(3);
            for _ in 0..e {
                f1 = f1.mul(&q);
            }
            let f2 = f.divmod(&f1).0;
            let (k1, k2) = coprime_split(&m, &f1, &f2).unwrap();
            assert_eq!(k1.cols + k2.cols, 6);
            for (k, fi) in [(&k1, &f1), (&k2, &f2)] {
                // invariance: M * basis stays in the kernel of fi(M)
                let img = m.mul(k);
                let fi_m = m.eval_poly(fi);
                assert!(fi_m.mul(&img).is_zero());
            }
        }
    }
}
