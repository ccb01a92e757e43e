//! Exact linear algebra over the residue ring `Z_m`.
//!
//! The central routine is [`snf`], a Smith normal form computed directly in
//! `Z_m` with the transforms `P` and `Q` accumulated along the way. Linear
//! solvability and kernel enumeration are both read off the decomposition.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};

/// The ring modulus `m >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Modulus(m))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u64 {
        a % self.0
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        self.add(a, self.0 - b % self.0)
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        self.sub(0, a)
    }

    /// Reduce a signed integer into `[0, m)`.
    pub fn from_signed(self, a: i128) -> u64 {
        a.rem_euclid(self.0 as i128) as u64
    }

    /// `gcd(a, m)`, with `gcd(0, m) = m`.
    pub fn gcd_class(self, a: u64) -> u64 {
        (a % self.0).gcd(&self.0)
    }

    pub fn is_unit(self, a: u64) -> bool {
        self.gcd_class(a) == 1
    }

    pub fn inverse(self, a: u64) -> Option<u64> {
        let (g, x, _) = ext_gcd(a as i128 % self.0 as i128, self.0 as i128);
        (g == 1).then(|| self.from_signed(x))
    }

    /// Positive divisors of `m` in ascending order.
    pub fn divisors(self) -> Vec<u64> {
        let m = self.0;
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = 1u64;
        while d.saturating_mul(d) <= m {
            if m.is_multiple_of(d) {
                small.push(d);
                if d != m / d {
                    large.push(m / d);
                }
            }
            d += 1;
        }
        small.extend(large.into_iter().rev());
        small
    }

    /// Write `a = u * gcd(a, m)` and return the unit `u`.
    ///
    /// Every residue is a unit multiple of a divisor of `m`; `u` is the
    /// smallest unit in the coset `a / g + (m / g) Z`.
    fn unit_part(self, a: u64) -> u64 {
        let g = self.gcd_class(a);
        if g == self.0 {
            return 1;
        }
        let step = self.0 / g;
        let base = (a % self.0) / g;
        (0..g)
            .map(|j| (base + j * step) % self.0)
            .find(|&u| self.is_unit(u))
            .expect("a unit lift always exists")
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Extended Euclid on integers: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Dense row-major matrix with entries in `[0, m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZmMatrix {
    rows: usize,
    cols: usize,
    modulus: Modulus,
    data: Vec<u64>,
}

impl ZmMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: Modulus) -> Self {
        ZmMatrix {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: Modulus) -> Self {
        let mut id = Self::zeros(n, n, modulus);
        for i in 0..n {
            id.data[i * n + i] = 1;
        }
        id
    }

    /// Build from row-major entries, reducing each one mod `m`.
    pub fn from_rows(rows: usize, cols: usize, modulus: Modulus, entries: &[u64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(ZmMatrix {
            rows,
            cols,
            modulus,
            data: entries.iter().map(|&e| modulus.reduce(e)).collect(),
        })
    }

    /// Build from nested rows of signed integers, reducing mod `m`.
    pub fn from_signed_rows(modulus: Modulus, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&e| modulus.from_signed(e as i128)));
        }
        Ok(ZmMatrix {
            rows: rows.len(),
            cols,
            modulus,
            data,
        })
    }

    /// Square diagonal matrix.
    pub fn diagonal(diag: &[u64], modulus: Modulus) -> Self {
        let n = diag.len();
        let mut d = Self::zeros(n, n, modulus);
        for (i, &e) in diag.iter().enumerate() {
            d.data[i * n + i] = modulus.reduce(e);
        }
        d
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
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = self.modulus.reduce(v);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &ZmMatrix) -> Result<ZmMatrix> {
        self.check_same_modulus(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let m = self.modulus.get() as u128;
        let mut out = Self::zeros(self.rows, rhs.cols, self.modulus);
        let mut acc = vec![0u128; rhs.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (l, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(rhs.row(l)) {
                    *slot = (*slot + a as u128 * b as u128) % m;
                }
            }
            for (j, &a) in acc.iter().enumerate() {
                out.data[i * rhs.cols + j] = a as u64;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let m = self.modulus.get() as u128;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0u128, |acc, (&a, &b)| (acc + a as u128 * (b as u128 % m)) % m)
                    as u64
            })
            .collect())
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kronecker(&self, rhs: &ZmMatrix) -> Result<ZmMatrix> {
        self.check_same_modulus(rhs)?;
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(rows, cols, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.data[(i * rhs.rows + k) * cols + j * rhs.cols + l] =
                            self.modulus.mul(a, rhs.get(k, l));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stack `self` on top of `lower`.
    pub fn vstack(&self, lower: &ZmMatrix) -> Result<ZmMatrix> {
        self.check_same_modulus(lower)?;
        if self.cols != lower.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: lower.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&lower.data);
        Ok(ZmMatrix {
            rows: self.rows + lower.rows,
            cols: self.cols,
            modulus: self.modulus,
            data,
        })
    }

    /// Determinant mod `m`, by Euclidean row reduction (only unimodular
    /// integer row operations and swaps, so no division in `Z_m` is needed).
    pub fn determinant(&self) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let md = self.modulus;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1u64;
        for col in 0..n {
            loop {
                // smallest nonzero entry in the column at or below `col`
                let pivot = (col..n)
                    .filter(|&i| a.get(i, col) != 0)
                    .min_by_key(|&i| a.get(i, col));
                let Some(p) = pivot else {
                    return Ok(0);
                };
                if p != col {
                    a.swap_rows(p, col);
                    det = md.neg(det);
                }
                let pv = a.get(col, col);
                let mut done = true;
                for i in col + 1..n {
                    let e = a.get(i, col);
                    if e != 0 {
                        let q = e / pv;
                        a.add_row_multiple(i, col, md.neg(md.reduce(q)));
                        if a.get(i, col) != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            det = md.mul(det, a.get(col, col));
        }
        Ok(det)
    }

    /// True iff the determinant is a unit mod `m`.
    pub fn is_invertible(&self) -> Result<bool> {
        Ok(self.modulus.is_unit(self.determinant()?))
    }

    fn check_same_modulus(&self, other: &ZmMatrix) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.get(), other.modulus.get()));
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: u64) {
        if c == 0 {
            return;
        }
        let md = self.modulus;
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j];
            if s != 0 {
                let d = &mut self.data[dst * self.cols + j];
                *d = md.add(*d, md.mul(c, s));
            }
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: u64) {
        if c == 0 {
            return;
        }
        let md = self.modulus;
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src];
            if s != 0 {
                let d = &mut self.data[i * self.cols + dst];
                *d = md.add(*d, md.mul(c, s));
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: u64) {
        let md = self.modulus;
        for e in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *e = md.mul(*e, c);
        }
    }

    /// Replace rows (a, b) by [[x, y], [z, w]] · (a, b).
    fn combine_rows(&mut self, a: usize, b: usize, [x, y, z, w]: [u64; 4]) {
        let md = self.modulus;
        for j in 0..self.cols {
            let (ra, rb) = (self.data[a * self.cols + j], self.data[b * self.cols + j]);
            if ra == 0 && rb == 0 {
                continue;
            }
            self.data[a * self.cols + j] = md.add(md.mul(x, ra), md.mul(y, rb));
            self.data[b * self.cols + j] = md.add(md.mul(z, ra), md.mul(w, rb));
        }
    }

    /// Replace columns (a, b) by (a, b) · [[x, z], [y, w]], i.e.
    /// new a = x·a + y·b, new b = z·a + w·b.
    fn combine_cols(&mut self, a: usize, b: usize, [x, y, z, w]: [u64; 4]) {
        let md = self.modulus;
        for i in 0..self.rows {
            let (ca, cb) = (self.data[i * self.cols + a], self.data[i * self.cols + b]);
            if ca == 0 && cb == 0 {
                continue;
            }
            self.data[i * self.cols + a] = md.add(md.mul(x, ca), md.mul(y, cb));
            self.data[i * self.cols + b] = md.add(md.mul(z, ca), md.mul(w, cb));
        }
    }
}

impl fmt::Debug for ZmMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ZmMatrix {}x{} mod {}", self.rows, self.cols, self.modulus)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Ring divisibility in `Z_m`: `d | a` iff `gcd(d, m)` divides the residue `a`.
#[inline]
fn ring_divides(modulus: Modulus, d: u64, a: u64) -> bool {
    a.is_multiple_of(modulus.gcd_class(d))
}

/// `P · B · Q = diag(d_1, …, d_r, 0, …)` over `Z_m`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub p: ZmMatrix,
    pub q: ZmMatrix,
    /// Invariant divisors `d_1 | d_2 | … | d_r`, each a proper divisor of `m`.
    pub divisors: Vec<u64>,
    /// `cols − r`.
    pub zero_rank_deficit: usize,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn modulus(&self) -> Modulus {
        self.p.modulus()
    }

    /// The diagonal form `Λ` with the shape of the original matrix.
    pub fn diagonal_form(&self) -> ZmMatrix {
        let mut lambda = ZmMatrix::zeros(self.p.rows(), self.q.rows(), self.modulus());
        for (i, &d) in self.divisors.iter().enumerate() {
            lambda.set(i, i, d);
        }
        lambda
    }

    /// Re-multiply and check every structural invariant against `b`.
    pub fn verify(&self, b: &ZmMatrix) -> Result<()> {
        let md = b.modulus();
        let fail = |why: String| Err(Error::SnfVerification(why));
        if self.p.rows() != b.rows() || self.q.rows() != b.cols() {
            return fail("transform shapes do not match the input".into());
        }
        if !self.p.is_invertible()? {
            return fail("P is not invertible".into());
        }
        if !self.q.is_invertible()? {
            return fail("Q is not invertible".into());
        }
        let pbq = self.p.mul(b)?.mul(&self.q)?;
        if pbq != self.diagonal_form() {
            return fail("P·B·Q differs from the diagonal form".into());
        }
        for (i, &d) in self.divisors.iter().enumerate() {
            if d == 0 || d >= md.get() || !md.get().is_multiple_of(d) {
                return fail(format!("divisor {d} is not a proper divisor of {md}"));
            }
            if i + 1 < self.divisors.len() && !self.divisors[i + 1].is_multiple_of(d) {
                return fail(format!("divisor chain breaks at position {i}"));
            }
        }
        if self.zero_rank_deficit + self.rank() != b.cols() {
            return fail("rank deficit inconsistent with column count".into());
        }
        Ok(())
    }
}

/// Smith normal form of `b` over `Z_m`.
///
/// Pivot: the entry of smallest `gcd(a, m)`, then smallest row, then smallest
/// column. The pivot is scaled by a unit to exactly `gcd(a, m)`. Entries in the
/// pivot row/column that the pivot does not divide are merged in with a
/// Bezout 2×2 step, which strictly lowers the pivot's gcd class. After the
/// cross is clear, any remaining entry not divisible by the pivot has its row
/// added into the pivot row and the step repeats.
pub fn snf(b: &ZmMatrix) -> SmithDecomposition {
    let md = b.modulus();
    let (rows, cols) = (b.rows(), b.cols());
    let mut a = b.clone();
    let mut p = ZmMatrix::identity(rows, md);
    // Q is tracked transposed so that column operations become row operations.
    let mut qt = ZmMatrix::identity(cols, md);
    let mut divisors = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = select_pivot(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        p.swap_rows(t, pi);
        a.swap_cols(t, pj);
        qt.swap_rows(t, pj);

        loop {
            normalize_pivot(&mut a, &mut p, t);
            if merge_cross(&mut a, &mut p, &mut qt, t) {
                continue;
            }
            clear_cross(&mut a, &mut p, &mut qt, t);
            let g = a.get(t, t);
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !ring_divides(md, g, a.get(i, j))));
            match offender {
                Some(i) => {
                    a.add_row_multiple(t, i, 1);
                    p.add_row_multiple(t, i, 1);
                }
                None => break,
            }
        }

        let g = a.get(t, t);
        if g == 0 {
            break;
        }
        divisors.push(g);
    }

    let zero_rank_deficit = cols - divisors.len();
    SmithDecomposition {
        p,
        q: qt.transpose(),
        divisors,
        zero_rank_deficit,
    }
}

/// Smallest gcd class in the trailing submatrix, ties by row then column.
fn select_pivot(a: &ZmMatrix, t: usize) -> Option<(usize, usize)> {
    let md = a.modulus();
    let mut best: Option<(u64, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let e = a.get(i, j);
            if e == 0 {
                continue;
            }
            let g = md.gcd_class(e);
            if best.is_none_or(|(bg, _, _)| g < bg) {
                best = Some((g, i, j));
                if g == 1 {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn normalize_pivot(a: &mut ZmMatrix, p: &mut ZmMatrix, t: usize) {
    let md = a.modulus();
    let e = a.get(t, t);
    if e == 0 {
        return;
    }
    let u = md.unit_part(e);
    if u != 1 {
        let inv = md.inverse(u).expect("unit part is a unit");
        a.scale_row(t, inv);
        p.scale_row(t, inv);
    }
}

/// If some entry in row `t` or column `t` is not a ring multiple of the
/// pivot, combine it into the pivot with a Bezout step. Returns true if a
/// step was applied (the pivot changed).
fn merge_cross(a: &mut ZmMatrix, p: &mut ZmMatrix, qt: &mut ZmMatrix, t: usize) -> bool {
    let md = a.modulus();
    let g = a.get(t, t);
    if let Some(i) = (t + 1..a.rows()).find(|&i| !ring_divides(md, g, a.get(i, t))) {
        let mat = bezout_step(md, g, a.get(i, t));
        a.combine_rows(t, i, mat);
        p.combine_rows(t, i, mat);
        return true;
    }
    if let Some(j) = (t + 1..a.cols()).find(|&j| !ring_divides(md, g, a.get(t, j))) {
        let mat = bezout_step(md, g, a.get(t, j));
        a.combine_cols(t, j, mat);
        qt.combine_rows(t, j, mat);
        return true;
    }
    false
}

/// Unimodular `[[x, y], [z, w]]` sending `(g, e)` to `(gcd(g, e), 0)`.
fn bezout_step(md: Modulus, g: u64, e: u64) -> [u64; 4] {
    let (h, x, y) = ext_gcd(g as i128, e as i128);
    let z = -(e as i128 / h);
    let w = g as i128 / h;
    [
        md.from_signed(x),
        md.from_signed(y),
        md.from_signed(z),
        md.from_signed(w),
    ]
}

/// Eliminate row `t` and column `t` outside the pivot. Every entry is a ring
/// multiple of the (normalized) pivot at this point.
fn clear_cross(a: &mut ZmMatrix, p: &mut ZmMatrix, qt: &mut ZmMatrix, t: usize) {
    let md = a.modulus();
    let g = a.get(t, t);
    if g == 0 {
        return;
    }
    for i in t + 1..a.rows() {
        let e = a.get(i, t);
        if e != 0 {
            let c = md.neg(e / g);
            a.add_row_multiple(i, t, c);
            p.add_row_multiple(i, t, c);
        }
    }
    for j in t + 1..a.cols() {
        let e = a.get(t, j);
        if e != 0 {
            let c = md.neg(e / g);
            a.add_col_multiple(j, t, c);
            qt.add_row_multiple(j, t, c);
        }
    }
}

/// Solve `B x ≡ b (mod m)`. Returns `None` when no solution exists.
pub fn solve_linear(snf_of_b: &SmithDecomposition, b_mat: &ZmMatrix, rhs: &[u64]) -> Result<Option<Vec<u64>>> {
    if rhs.len() != b_mat.rows() {
        return Err(Error::DimensionMismatch {
            expected: b_mat.rows(),
            found: rhs.len(),
        });
    }
    let md = b_mat.modulus();
    let c = snf_of_b.p.mul_vec(rhs)?;
    let r = snf_of_b.rank();
    let mut y = vec![0u64; b_mat.cols()];
    for (i, &ci) in c.iter().enumerate() {
        if i < r {
            let d = snf_of_b.divisors[i];
            if ci % d != 0 {
                return Ok(None);
            }
            y[i] = ci / d;
        } else if ci != 0 {
            return Ok(None);
        }
    }
    let x = snf_of_b.q.mul_vec(&y)?;
    debug_assert_eq!(b_mat.mul_vec(&x)?, rhs.iter().map(|&e| md.reduce(e)).collect::<Vec<_>>());
    Ok(Some(x))
}

/// Convenience wrapper computing the SNF internally.
pub fn solve(b_mat: &ZmMatrix, rhs: &[u64]) -> Result<Option<Vec<u64>>> {
    solve_linear(&snf(b_mat), b_mat, rhs)
}

/// Abelian-group shape `⊕ Z_{d} ⊕ free_rank · Z_m`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ModuleDecomposition {
    pub cyclic_orders: Vec<u64>,
    pub free_rank: usize,
}

impl ModuleDecomposition {
    /// Drops the trivial `Z_1` summands.
    pub fn from_divisors(divisors: &[u64], free_rank: usize) -> Self {
        ModuleDecomposition {
            cyclic_orders: divisors.iter().copied().filter(|&d| d > 1).collect(),
            free_rank,
        }
    }

    pub fn cardinality(&self, modulus: Modulus) -> BigUint {
        let mut n = BigUint::from(modulus.get()).pow(self.free_rank as u32);
        for &d in &self.cyclic_orders {
            n *= d;
        }
        n
    }

    pub fn is_trivial(&self) -> bool {
        self.cyclic_orders.is_empty() && self.free_rank == 0
    }
}

impl fmt::Display for ModuleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.cyclic_orders.iter().map(|d| format!("Z_{d}")).collect();
        if self.free_rank > 0 {
            parts.push(format!("{}·Z_m", self.free_rank));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

#[derive(Clone, Debug)]
pub struct KernelStructure {
    pub decomposition: ModuleDecomposition,
    pub cardinality: BigUint,
}

/// Structure of `{x : Bx ≡ 0, x_1 = 0}` for a matrix whose rows all sum to
/// zero mod `m` (so the all-ones vector lies in the kernel).
pub fn kernel_structure(b: &ZmMatrix) -> Result<KernelStructure> {
    kernel_structure_with(b, &snf(b))
}

pub fn kernel_structure_with(b: &ZmMatrix, decomposition: &SmithDecomposition) -> Result<KernelStructure> {
    if b.cols() == 0 {
        return Err(Error::EmptyMatrix);
    }
    let ones = vec![1u64; b.cols()];
    if b.mul_vec(&ones)?.iter().any(|&e| e != 0) {
        return Err(Error::ConstantsNotInKernel);
    }
    let free_rank = b.cols() - 1 - decomposition.rank();
    let decomposition = ModuleDecomposition::from_divisors(&decomposition.divisors, free_rank);
    let cardinality = decomposition.cardinality(b.modulus());
    Ok(KernelStructure {
        decomposition,
        cardinality,
    })
}

/// All `x` with `Bx ≡ 0` and `x_1 = 0`, generated from the SNF
/// parametrization `x = Q y`, in lexicographic order of `x`.
pub fn enumerate_kernel(b: &ZmMatrix, cap: usize) -> Result<Vec<Vec<u64>>> {
    let decomposition = snf(b);
    let structure = kernel_structure_with(b, &decomposition)?;
    if structure.cardinality > BigUint::from(cap) {
        return Err(Error::TooLargeToEnumerate {
            cardinality: structure.cardinality,
            cap,
        });
    }
    let md = b.modulus();
    let m = md.get();
    let n = b.cols();
    let r = decomposition.rank();
    // y_i ranges over (m / d_i)·Z_m for i < r and over Z_m beyond.
    let (steps, counts): (Vec<u64>, Vec<u64>) = (0..n)
        .map(|i| if i < r { (m / decomposition.divisors[i], decomposition.divisors[i]) } else { (1, m) })
        .unzip();
    let q = &decomposition.q;
    let qcol = |j: usize| -> Vec<u64> { (0..n).map(|i| q.get(i, j)).collect() };
    let qcols: Vec<Vec<u64>> = (0..n).map(qcol).collect();

    let mut out = Vec::new();
    let mut digits = vec![0u64; n];
    let mut x = vec![0u64; n];
    let total_target = structure.cardinality.clone();
    loop {
        if x[0] == 0 {
            out.push(x.clone());
        }
        // odometer step on y, updating x incrementally
        let mut pos = 0;
        loop {
            if pos == n {
                out.sort_unstable();
                debug_assert_eq!(BigUint::from(out.len()), total_target);
                return Ok(out);
            }
            digits[pos] += 1;
            let delta = steps[pos];
            if digits[pos] == counts[pos] {
                digits[pos] = 0;
                // unwind: subtract (counts-1)·step·q_col, i.e. add step·q_col once (wraps mod m)
                for (xi, &qv) in x.iter_mut().zip(&qcols[pos]) {
                    *xi = md.add(*xi, md.mul(delta, qv));
                }
                pos += 1;
            } else {
                for (xi, &qv) in x.iter_mut().zip(&qcols[pos]) {
                    *xi = md.add(*xi, md.mul(delta, qv));
                }
                break;
            }
        }
    }
}

/// Canonical divisor chain of a diagonal multiset: the SNF of `diag(values)`.
pub fn normalize_divisor_chain(values: &[u64], modulus: Modulus) -> Vec<u64> {
    if values.is_empty() {
        return Vec::new();
    }
    snf(&ZmMatrix::diagonal(values, modulus)).divisors
}

/// `m^e · Π factors`.
pub fn power_times_product(modulus: Modulus, exponent: usize, factors: impl IntoIterator<Item = u64>) -> BigUint {
    factors
        .into_iter()
        .fold(BigUint::from(modulus.get()).pow(exponent as u32), |acc, d| acc * d)
}
