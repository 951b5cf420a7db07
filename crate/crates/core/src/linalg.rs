//! Exact linear algebra over the prime fields F_2, F_3, F_5 and F_7.
//!
//! Subspaces are kept in a canonical form: the basis vectors are the rows of
//! a reduced row echelon matrix, so two subspaces are equal exactly when
//! their [`Subspace`] values compare equal.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{input_err, resource_err, Result};

/// Largest `p^n` for which [`enumerate_subspaces`] will run.
pub const SUBSPACE_GUARD: u64 = 1 << 20;

/// A prime modulus from the supported set {2, 3, 5, 7}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u8);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        match p {
            2 | 3 | 5 | 7 => Ok(Prime(p as u8)),
            _ => Err(input_err!("unsupported field size {p}: expected one of 2, 3, 5, 7")),
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.get() - b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        self.sub(0, a)
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0);
        // a^(p-2) by repeated multiplication; p is at most 7
        let mut r = 1u8;
        for _ in 0..self.get() - 2 {
            r = self.mul(r, a);
        }
        r
    }

    /// Reduce an arbitrary integer into `[0, p)`.
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.get() as i64) as u8
    }

    /// `p^n`, or `None` on overflow.
    pub fn checked_pow(self, n: usize) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..n {
            acc = acc.checked_mul(self.get() as u64)?;
        }
        Some(acc)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A dense matrix over F_p, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(F_{}, {}x{})[", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from integer rows, reducing every entry mod p.
    pub fn from_rows(p: Prime, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(input_err!("ragged matrix rows"));
        }
        let data = rows.iter().flatten().map(|&v| p.reduce(v)).collect();
        Ok(FpMatrix { p, rows: rows.len(), cols, data })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(p: Prime, rows: usize, columns: &[Vec<u8>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!((v as u32) < self.p.get());
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, p.add(cur, p.mul(a, rhs.get(k, j))));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| self.p.add(a, b)).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u8) -> FpMatrix {
        let data = self.data.iter().map(|&a| self.p.mul(a, s)).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(0u8, |acc, (&a, &b)| self.p.add(acc, self.p.mul(a, b))))
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(found) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if found != row {
                for c in 0..m.cols {
                    m.data.swap(found * m.cols + c, row * m.cols + c);
                }
            }
            let inv = p.inv(m.get(row, col));
            for c in 0..m.cols {
                let v = m.get(row, c);
                m.set(row, c, p.mul(v, inv));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col);
                if f == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let v = p.sub(m.get(r, c), p.mul(f, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank and a basis of the column space (taken from the pivot columns of `self`).
    pub fn rank_and_basis(&self) -> (usize, Vec<Vec<u8>>) {
        let (_, pivots) = self.rref();
        let basis: Vec<Vec<u8>> = pivots.iter().map(|&c| self.column(c)).collect();
        (basis.len(), basis)
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        let p = self.p;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = p.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// A linear subspace of F_p^n in canonical (reduced echelon) form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    p: Prime,
    ambient: usize,
    basis: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(F_{}^{}, {:?})", self.p, self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(p: Prime, ambient: usize) -> Self {
        Subspace { p, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(p: Prime, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0u8; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { p, ambient, basis, pivots: (0..ambient).collect() }
    }

    /// The span of arbitrary vectors, canonicalized.
    pub fn span(p: Prime, ambient: usize, vectors: &[Vec<u8>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(p, ambient);
        }
        let mut m = FpMatrix::zeros(p, vectors.len(), ambient);
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), ambient);
            for (j, &x) in v.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { p, ambient, basis, pivots }
    }

    /// Re-canonicalize this subspace; a no-op on values built by this module.
    pub fn canonicalize(&self) -> Self {
        Self::span(self.p, self.ambient, &self.basis)
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Subtract multiples of basis vectors so that all pivot coordinates vanish.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let p = self.p;
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let f = w[pc];
            if f == 0 {
                continue;
            }
            for (x, &b) in w.iter_mut().zip(row) {
                *x = p.sub(*x, p.mul(f, b));
            }
        }
        w
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Indices of the standard basis vectors spanning a complement (the non-pivot columns).
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the class of `v` in `F_p^n / self` w.r.t. the complement basis.
    pub fn quotient_coordinates(&self, v: &[u8]) -> Vec<u8> {
        let w = self.reduce(v);
        self.complement_indices().into_iter().map(|c| w[c]).collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(self.p, self.ambient, &vs)
    }

    /// Image of this subspace under a linear map `F_p^n -> F_p^m`.
    pub fn image(&self, map: &FpMatrix) -> Subspace {
        assert_eq!(map.cols(), self.ambient);
        let vs: Vec<Vec<u8>> = self.basis.iter().map(|v| map.apply(v)).collect();
        Self::span(self.p, map.rows(), &vs)
    }

    /// Matrix whose columns are the canonical basis vectors (ambient x dim).
    pub fn basis_matrix(&self) -> FpMatrix {
        FpMatrix::from_columns(self.p, self.ambient, &self.basis)
    }
}

/// The Gaussian binomial coefficient `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    (num / den) as u64
}

fn check_guard(n: usize, p: Prime) -> Result<()> {
    match p.checked_pow(n) {
        Some(v) if v <= SUBSPACE_GUARD => Ok(()),
        _ => Err(resource_err!("subspace enumeration of F_{p}^{n} exceeds p^n <= 2^20")),
    }
}

/// Every `k`-dimensional subspace of `F_p^n`, one canonical representative each.
pub fn enumerate_subspaces(n: usize, k: usize, p: Prime) -> Result<Vec<Subspace>> {
    if k > n {
        return Err(input_err!("subspace dimension {k} exceeds ambient dimension {n}"));
    }
    check_guard(n, p)?;
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    pivot_sets(n, k, 0, &mut pivots, &mut |pv| fill_free_entries(n, p, pv, &mut out));
    Ok(out)
}

/// Every subspace of `F_p^n`, ordered by dimension.
pub fn all_subspaces(n: usize, p: Prime) -> Result<Vec<Subspace>> {
    check_guard(n, p)?;
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(enumerate_subspaces(n, k, p)?);
    }
    Ok(out)
}

fn pivot_sets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for c in start..n {
        if n - c < k - cur.len() {
            break;
        }
        cur.push(c);
        pivot_sets(n, k, c + 1, cur, f);
        cur.pop();
    }
}

fn fill_free_entries(n: usize, p: Prime, pivots: &[usize], out: &mut Vec<Subspace>) {
    // free slots: (row, col) with col > pivot of row and col not a pivot column
    let mut is_pivot = vec![false; n];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let slots: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(i, &pc)| ((pc + 1)..n).filter(|&c| !is_pivot[c]).map(move |c| (i, c)))
        .collect();
    let q = p.get() as u8;
    let mut digits = vec![0u8; slots.len()];
    loop {
        let mut basis: Vec<Vec<u8>> = pivots
            .iter()
            .map(|&pc| {
                let mut v = vec![0u8; n];
                v[pc] = 1;
                v
            })
            .collect();
        for (&(i, c), &d) in slots.iter().zip(&digits) {
            basis[i][c] = d;
        }
        out.push(Subspace { p, ambient: n, basis, pivots: pivots.to_vec() });
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return;
            }
            digits[pos] += 1;
            if digits[pos] < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}
