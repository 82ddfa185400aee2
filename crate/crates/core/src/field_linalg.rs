//! Exact arithmetic in a prime field F_p and the dense linear algebra
//! (echelon forms, kernels, solving, subspace lattice) every other layer
//! reduces to.
//!
//! Elements are canonical residues in [0, p). Pivoting is deterministic
//! (first nonzero), so echelon forms and stored bases are reproducible.

use crate::error::{Error, Result};

/// The prime field F_p, 2 <= p < 2^31. Primality is checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on 0.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }
}

/// Dense matrix over F_p, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<u64>,
    field: PrimeField,
}

impl FMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        FMatrix { rows, cols, entries: vec![0; rows * cols], field }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c);
            for &e in row {
                entries.push(e % field.p());
            }
        }
        FMatrix { rows: r, cols: c, entries, field }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: PrimeField, ambient: usize, cols: &[Vec<u64>]) -> Self {
        let mut m = Self::zero(field, ambient, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), ambient);
            for (i, &e) in v.iter().enumerate() {
                m.set(i, j, e % field.p());
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = v % self.field.p();
    }

    pub fn col(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row(&self, r: usize) -> Vec<u64> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> FMatrix {
        let mut t = FMatrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mat_mul(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape");
        let f = self.field;
        let mut out = FMatrix::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "matvec shape");
        let f = self.field;
        let mut out = vec![0u64; self.rows];
        for r in 0..self.rows {
            let mut acc = 0u64;
            for c in 0..self.cols {
                acc = f.add(acc, f.mul(self.get(r, c), v[c]));
            }
            out[r] = acc;
        }
        out
    }

    pub fn add_assign(&mut self, other: &FMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        for i in 0..self.entries.len() {
            self.entries[i] = f.add(self.entries[i], other.entries[i]);
        }
    }

    pub fn scale(&self, s: u64) -> FMatrix {
        let f = self.field;
        let mut m = self.clone();
        for e in &mut m.entries {
            *e = f.mul(*e, s);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = FMatrix::zero(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    /// In-place reduced row-echelon form; returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for pc in 0..self.cols {
            if pr >= self.rows {
                break;
            }
            // first nonzero pivot
            let mut sel = None;
            for r in pr..self.rows {
                if self.get(r, pc) != 0 {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            if sel != pr {
                for c in 0..self.cols {
                    let a = self.get(pr, c);
                    let b = self.get(sel, c);
                    self.set(pr, c, b);
                    self.set(sel, c, a);
                }
            }
            let inv = f.inv(self.get(pr, pc));
            for c in 0..self.cols {
                self.set(pr, c, f.mul(self.get(pr, c), inv));
            }
            for r in 0..self.rows {
                if r != pr {
                    let factor = self.get(r, pc);
                    if factor != 0 {
                        for c in 0..self.cols {
                            let v = f.sub(self.get(r, c), f.mul(factor, self.get(pr, c)));
                            self.set(r, c, v);
                        }
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        pivots
    }

    /// Reduced row-echelon form: rank, the kernel of the matrix, and the
    /// echelon matrix itself. rank + dim kernel = cols.
    pub fn rref(&self) -> (usize, Subspace, FMatrix) {
        let mut e = self.clone();
        let pivots = e.rref_in_place();
        let rank = pivots.len();
        let kernel = self.kernel_from_rref(&e, &pivots);
        (rank, kernel, e)
    }

    fn kernel_from_rref(&self, echelon: &FMatrix, pivots: &[usize]) -> Subspace {
        let f = self.field;
        let piv_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if piv_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(echelon.get(pr, free));
            }
            basis.push(v);
        }
        Subspace::from_vectors(f, self.cols, &basis)
    }

    pub fn rank(&self) -> usize {
        self.rref().0
    }

    pub fn kernel(&self) -> Subspace {
        self.rref().1
    }

    /// Solves Ax = b. Returns the solution with zeros in all free-variable
    /// positions, or None when inconsistent.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows vs rhs of length {}",
                self.rows,
                b.len()
            )));
        }
        let bm = FMatrix::from_cols(self.field, self.rows, &[b.to_vec()]);
        let mut aug = self.hcat(&bm);
        let pivots = aug.rref_in_place();
        // inconsistent iff the rhs column is a pivot
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u64; self.cols];
        for (pr, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(pr, self.cols);
        }
        Ok(Some(x))
    }

    /// Solves AX = B columnwise; None if any column is inconsistent.
    pub fn solve_matrix(&self, b: &FMatrix) -> Result<Option<FMatrix>> {
        let mut cols = Vec::with_capacity(b.cols);
        for c in 0..b.cols {
            match self.solve(&b.col(c))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(FMatrix::from_cols(self.field, self.cols, &cols)))
    }
}

/// A subspace of F_p^n, stored as a reduced column-echelon basis with
/// strictly increasing pivot rows. The representation is canonical, so
/// equality of subspaces is equality of bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: FMatrix,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace { ambient_dim: ambient, basis: FMatrix::zero(field, ambient, 0) }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace { ambient_dim: ambient, basis: FMatrix::identity(field, ambient) }
    }

    /// Canonicalizes a spanning set into the echelon basis.
    pub fn from_vectors(field: PrimeField, ambient: usize, vectors: &[Vec<u64>]) -> Self {
        // row-reduce the vectors as rows, then store nonzero rows as columns
        let mut m = FMatrix::from_rows(field, vectors.to_vec());
        if m.rows == 0 {
            return Self::zero(field, ambient);
        }
        assert_eq!(m.cols, ambient, "ambient mismatch in from_vectors");
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        let mut basis = FMatrix::zero(field, ambient, rank);
        for (r, _) in pivots.iter().enumerate().take(rank) {
            for c in 0..ambient {
                basis.set(c, r, m.get(r, c));
            }
        }
        Subspace { ambient_dim: ambient, basis }
    }

    pub fn from_matrix_columns(m: &FMatrix) -> Self {
        let cols: Vec<Vec<u64>> = (0..m.cols).map(|c| m.col(c)).collect();
        Self::from_vectors(m.field(), m.rows, &cols)
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u64>> {
        (0..self.basis.cols).map(|c| self.basis.col(c)).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    /// Sum of subspaces.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vecs = self.basis_vectors();
        vecs.extend(other.basis_vectors());
        Ok(Subspace::from_vectors(self.field(), self.ambient_dim, &vecs))
    }

    /// Intersection, via the kernel of [U | -V].
    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = self.field();
        let neg = other.basis.scale(f.neg(1));
        let stacked = self.basis.hcat(&neg);
        let ker = stacked.kernel();
        let mut vecs = Vec::new();
        for kv in ker.basis_vectors() {
            // first block of coefficients gives a vector in the intersection
            let mut v = vec![0u64; self.ambient_dim];
            for (j, &coef) in kv.iter().take(self.basis.cols).enumerate() {
                if coef != 0 {
                    let col = self.basis.col(j);
                    for i in 0..self.ambient_dim {
                        v[i] = f.add(v[i], f.mul(coef, col[i]));
                    }
                }
            }
            vecs.push(v);
        }
        Ok(Subspace::from_vectors(f, self.ambient_dim, &vecs))
    }

    /// Annihilator under the standard dot pairing: kernel of basis^T.
    pub fn perp(&self) -> Subspace {
        self.basis.transpose().kernel()
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        matches!(self.basis.solve(v), Ok(Some(_)))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.basis_vectors().iter().all(|v| self.contains_vector(v)))
    }
}

/// Growing span with incremental Gaussian elimination: O(ambient * dim)
/// membership and insertion, for complement extraction in hot loops.
#[derive(Debug, Clone)]
pub struct IncrementalSpan {
    field: PrimeField,
    ambient: usize,
    /// normalized vectors, each with a distinct pivot position
    cols: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl IncrementalSpan {
    pub fn new(field: PrimeField, ambient: usize) -> Self {
        IncrementalSpan { field, ambient, cols: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut v = v.to_vec();
        for (col, &piv) in self.cols.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                for i in 0..self.ambient {
                    v[i] = f.sub(v[i], f.mul(c, col[i]));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&e| e == 0)
    }

    /// Adds v to the span; returns true when v was independent of it.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let mut r = self.reduce(v);
        let Some(piv) = r.iter().position(|&e| e != 0) else { return false };
        let inv = f.inv(r[piv]);
        for e in &mut r {
            *e = f.mul(*e, inv);
        }
        self.cols.push(r);
        self.pivots.push(piv);
        true
    }
}
