//! Exact matrices over a ring of the class, and Smith normal form.
//!
//! A localization `Z[S^-1]` is Euclidean for the norm that strips inverted
//! primes and signs, so the classical SNF algorithm applies with entries kept
//! as exact rationals. Quotient rings never run SNF directly; linear algebra
//! over them lifts to the covering localization with modulus relations
//! appended (see [`kernel`] and [`solve`]).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ring::{Ring, RingMap};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = |_| Error::InvalidMatrix(format!("cannot parse scalar {t:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(bad)?;
        let den: BigInt = d.trim().parse().map_err(bad)?;
        if den.is_zero() {
            return Err(Error::InvalidMatrix(format!("zero denominator in {t:?}")));
        }
        Ok(BigRational::new(num, den))
    } else {
        let num: BigInt = t.parse().map_err(bad)?;
        Ok(BigRational::from_integer(num))
    }
}

pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl Matrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let entries = entries
            .into_iter()
            .map(|x| ring.canon(&x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: &Ring, rows: &[Vec<BigRational>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidMatrix("ragged rows".into()));
        }
        Matrix::new(ring, r, c, rows.concat())
    }

    /// Convenience constructor from integer literals.
    pub fn from_int_rows(ring: &Ring, rows: &[Vec<i64>]) -> Result<Self> {
        let data: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| BigRational::from_integer(BigInt::from(v)))
                    .collect()
            })
            .collect();
        Matrix::from_rows(ring, &data)
    }

    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            // In the zero ring 1 = 0; canon keeps entries reduced.
            m.entries[i * n + i] = ring.canon(&BigRational::one()).unwrap();
        }
        m
    }

    pub fn scalar(ring: &Ring, n: usize, value: &BigRational) -> Result<Self> {
        let v = ring.canon(value)?;
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = v.clone();
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = self.ring.canon(&v).unwrap();
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn same_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidMatrix("dimension mismatch in add".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.canon(&(a + b)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let entries = self
            .entries
            .iter()
            .map(|a| self.ring.canon(&(-a)).unwrap())
            .collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::InvalidMatrix(format!(
                "dimension mismatch in mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.entries[i * other.cols + j] = self.ring.canon(&acc)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Result<Matrix> {
        let entries = self
            .entries
            .iter()
            .map(|a| self.ring.canon(&(a * c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.rows != other.rows {
            return Err(Error::InvalidMatrix("row mismatch in hstack".into()));
        }
        let mut entries = Vec::with_capacity((self.cols + other.cols) * self.rows);
        for i in 0..self.rows {
            entries.extend_from_slice(&self.entries[i * self.cols..(i + 1) * self.cols]);
            entries.extend_from_slice(&other.entries[i * other.cols..(i + 1) * other.cols]);
        }
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols + other.cols,
            entries,
        })
    }

    /// Vertical concatenation, `self` on top.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.cols != other.cols {
            return Err(Error::InvalidMatrix("column mismatch in vstack".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn block_diag(ring: &Ring, blocks: &[&Matrix]) -> Result<Matrix> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(ring, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            if &b.ring != ring {
                return Err(Error::RingMismatch(ring.to_string(), b.ring.to_string()));
            }
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.entries[(ro + i) * cols + (co + j)] = b.get(i, j).clone();
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        Ok(out)
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns_subset(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zero(&self.ring, self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.entries[i * idx.len() + jj] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn rows_range(&self, start: usize, len: usize) -> Matrix {
        let mut out = Matrix::zero(&self.ring, len, self.cols);
        for i in 0..len {
            for j in 0..self.cols {
                out.entries[i * self.cols + j] = self.get(start + i, j).clone();
            }
        }
        out
    }

    /// Re-interpret the entries over another ring (e.g. lift a quotient-ring
    /// matrix to the covering localization, or push along a canonical map).
    pub fn map_entries(&self, target: &Ring) -> Result<Matrix> {
        Matrix::new(target, self.rows, self.cols, self.entries.clone())
    }

    pub fn map_along(&self, f: &RingMap) -> Result<Matrix> {
        if &self.ring != f.source() {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                f.source().to_string(),
            ));
        }
        self.map_entries(f.target())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_row(&mut self, i: usize, c: &BigRational) {
        for j in 0..self.cols {
            let v = self.get(i, j) * c;
            self.entries[i * self.cols + j] = self.ring.canon(&v).unwrap();
        }
    }

    fn scale_col(&mut self, j: usize, c: &BigRational) {
        for i in 0..self.rows {
            let v = self.get(i, j) * c;
            self.entries[i * self.cols + j] = self.ring.canon(&v).unwrap();
        }
    }

    /// row_i += c * row_j
    fn row_add(&mut self, i: usize, j: usize, c: &BigRational) {
        for k in 0..self.cols {
            let v = self.get(i, k) + c * self.get(j, k);
            self.entries[i * self.cols + k] = self.ring.canon(&v).unwrap();
        }
    }

    /// col_j += c * col_k
    fn col_add(&mut self, j: usize, k: usize, c: &BigRational) {
        for i in 0..self.rows {
            let v = self.get(i, j) + c * self.get(i, k);
            self.entries[i * self.cols + j] = self.ring.canon(&v).unwrap();
        }
    }

    /// Smith normal form over a domain of the class: `u * self * v = d` with
    /// `u`, `v` invertible (unit determinant) and `d` diagonal with a
    /// divisibility chain of unit-free nonnegative integers. Pivots are
    /// chosen by minimal Euclidean norm, ties broken by position, which makes
    /// the output deterministic.
    pub fn snf(&self) -> Result<Snf> {
        if !self.ring.is_domain() {
            return Err(Error::InvalidMatrix(format!(
                "SNF runs over domains only, not {}",
                self.ring
            )));
        }
        let ring = self.ring.clone();
        let mut a = self.clone();
        let mut u = Matrix::identity(&ring, self.rows);
        let mut u_inv = Matrix::identity(&ring, self.rows);
        let mut v = Matrix::identity(&ring, self.cols);
        let mut v_inv = Matrix::identity(&ring, self.cols);

        // Wrapped elementary operations keeping u * self * v = a and
        // u_inv = u^-1, v_inv = v^-1.
        macro_rules! rswap {
            ($x:expr, $y:expr) => {{
                a.swap_rows($x, $y);
                u.swap_rows($x, $y);
                u_inv.swap_cols($x, $y);
            }};
        }
        macro_rules! cswap {
            ($x:expr, $y:expr) => {{
                a.swap_cols($x, $y);
                v.swap_cols($x, $y);
                v_inv.swap_rows($x, $y);
            }};
        }
        macro_rules! radd {
            ($i:expr, $j:expr, $c:expr) => {{
                let c = $c;
                a.row_add($i, $j, &c);
                u.row_add($i, $j, &c);
                u_inv.col_add($j, $i, &(-&c));
            }};
        }
        macro_rules! cadd {
            ($j:expr, $k:expr, $c:expr) => {{
                let c = $c;
                a.col_add($j, $k, &c);
                v.col_add($j, $k, &c);
                v_inv.row_add($k, $j, &(-&c));
            }};
        }

        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            // Minimal-norm nonzero pivot in the trailing submatrix.
            let pivot = {
                let mut best: Option<(BigInt, usize, usize)> = None;
                for i in t..self.rows {
                    for j in t..self.cols {
                        let x = a.get(i, j);
                        if x.is_zero() {
                            continue;
                        }
                        let nm = ring.norm(x);
                        if best.as_ref().map_or(true, |(b, _, _)| nm < *b) {
                            best = Some((nm, i, j));
                        }
                    }
                }
                best
            };
            let Some((_, pi, pj)) = pivot else { break };
            rswap!(t, pi);
            cswap!(t, pj);

            'reduce: loop {
                // Clear column t by Euclidean division against the pivot.
                for i in t + 1..self.rows {
                    if a.get(i, t).is_zero() {
                        continue;
                    }
                    let q = euclid_quotient(&ring, a.get(i, t), a.get(t, t));
                    radd!(i, t, -q);
                    if !a.get(i, t).is_zero() {
                        // Strictly smaller norm: promote and restart.
                        rswap!(t, i);
                        continue 'reduce;
                    }
                }
                for j in t + 1..self.cols {
                    if a.get(t, j).is_zero() {
                        continue;
                    }
                    let q = euclid_quotient(&ring, a.get(t, j), a.get(t, t));
                    cadd!(j, t, -q);
                    if !a.get(t, j).is_zero() {
                        cswap!(t, j);
                        continue 'reduce;
                    }
                }
                // Pivot must divide the rest of the submatrix for the chain
                // condition; pull a violating row in and restart.
                for i in t + 1..self.rows {
                    for j in t + 1..self.cols {
                        if !ring.divides(a.get(t, t), a.get(i, j)) {
                            radd!(t, i, BigRational::one());
                            continue 'reduce;
                        }
                    }
                }
                break;
            }
            // Normalize the pivot to its unit-free positive associate.
            let p = a.get(t, t).clone();
            if !p.is_zero() {
                let target = BigRational::from_integer(ring.norm(&p));
                let w = &target / &p; // unit
                a.scale_row(t, &w);
                u.scale_row(t, &w);
                u_inv.scale_col(t, &(BigRational::one() / &w));
            }
            t += 1;
        }

        Ok(Snf {
            u,
            u_inv,
            d: a,
            v,
            v_inv,
        })
    }

    /// Diagonal invariant factors (nonzero, unit-free) of the SNF.
    pub fn invariant_factors(&self) -> Result<Vec<BigInt>> {
        let snf = self.snf()?;
        Ok(snf.diagonal_nonzero())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} over {}]", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format_rational(self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `u * m * v = d` with tracked inverses.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigRational> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn diagonal_nonzero(&self) -> Vec<BigInt> {
        self.diagonal()
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| x.numer().clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal_nonzero().len()
    }
}

fn euclid_quotient(ring: &Ring, a: &BigRational, b: &BigRational) -> BigRational {
    // a = q*b + r with r the canonical residue in [0, norm(b)).
    let m = ring.norm(b);
    if m.is_zero() {
        return BigRational::zero();
    }
    let r = canonical_residue(a, &m);
    (a - r) / b
}

fn canonical_residue(a: &BigRational, m: &BigInt) -> BigRational {
    use num_integer::Integer;
    if m.is_one() {
        return BigRational::zero();
    }
    // Denominator of a is coprime to the unit-free modulus m.
    let den = a.denom().mod_floor(m);
    let inv = crate::ring::modular_inverse(&den, m).expect("denominator invertible mod norm");
    let v = (a.numer().mod_floor(m) * inv).mod_floor(m);
    BigRational::from_integer(v)
}

/// Solve `A x = b` over any ring of the class; quotient rings lift to the
/// covering localization with modulus columns appended.
pub fn solve(a: &Matrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    let ring = a.ring().clone();
    if b.len() != a.rows() {
        return Err(Error::InvalidMatrix("rhs length mismatch in solve".into()));
    }
    if ring.is_domain() {
        return solve_domain(a, b);
    }
    let cover = ring.cover();
    let lifted = a.map_entries(&cover)?;
    let modulus = Matrix::scalar(
        &cover,
        a.rows(),
        &BigRational::from_integer(BigInt::from(ring.modulus())),
    )?;
    let ext = lifted.hstack(&modulus)?;
    let b_lift: Vec<BigRational> = b.iter().map(|x| cover.canon(x)).collect::<Result<_>>()?;
    match solve_domain(&ext, &b_lift)? {
        None => Ok(None),
        Some(sol) => {
            let xs = sol[..a.cols()]
                .iter()
                .map(|x| ring.canon(x))
                .collect::<Result<Vec<_>>>()?;
            Ok(Some(xs))
        }
    }
}

fn solve_domain(a: &Matrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    let ring = a.ring().clone();
    let snf = a.snf()?;
    let bm = Matrix::new(&ring, b.len(), 1, b.to_vec())?;
    let c = snf.u.mul(&bm)?;
    let n = a.rows().min(a.cols());
    let mut y = vec![BigRational::zero(); a.cols()];
    for i in 0..a.rows() {
        let ci = c.get(i, 0);
        if i < n && !snf.d.get(i, i).is_zero() {
            let q = ci / snf.d.get(i, i);
            if !ring.admits(&q) {
                return Ok(None);
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return Ok(None);
        }
    }
    let ym = Matrix::new(&ring, a.cols(), 1, y)?;
    let x = snf.v.mul(&ym)?;
    Ok(Some(x.column(0)))
}

/// Solve `A X = B` column by column; `None` if any column fails.
pub fn solve_matrix(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    a.same_ring(b)?;
    if a.rows() != b.rows() {
        return Err(Error::InvalidMatrix("row mismatch in solve_matrix".into()));
    }
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        match solve(a, &b.column(j))? {
            None => return Ok(None),
            Some(x) => cols.push(x),
        }
    }
    let mut out = Matrix::zero(a.ring(), a.cols(), b.cols());
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            out.set(i, j, x.clone());
        }
    }
    Ok(Some(out))
}

/// Is `b` in the column span of `a`?
pub fn in_span(a: &Matrix, b: &[BigRational]) -> Result<bool> {
    Ok(solve(a, b)?.is_some())
}

/// Generators of `{x : A x = 0}`. Over a domain these form a basis; over a
/// quotient ring they are the reductions of a lifted solution basis and
/// generate all solutions.
pub fn kernel(a: &Matrix) -> Result<Matrix> {
    let ring = a.ring().clone();
    if ring.is_domain() {
        let snf = a.snf()?;
        let n = a.rows().min(a.cols());
        let free: Vec<usize> = (0..a.cols())
            .filter(|&j| j >= n || snf.d.get(j, j).is_zero())
            .collect();
        return Ok(snf.v.columns_subset(&free));
    }
    let cover = ring.cover();
    let lifted = a.map_entries(&cover)?;
    let modulus = Matrix::scalar(
        &cover,
        a.rows(),
        &BigRational::from_integer(BigInt::from(ring.modulus())),
    )?;
    let ext = lifted.hstack(&modulus)?;
    let big = kernel(&ext)?;
    let head = big.rows_range(0, a.cols()).map_entries(&ring)?;
    // Drop columns that reduce to zero mod the modulus.
    let keep: Vec<usize> = (0..head.cols())
        .filter(|&j| head.column(j).iter().any(|x| !x.is_zero()))
        .collect();
    Ok(head.columns_subset(&keep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn z() -> Ring {
        Ring::integers()
    }

    /// Determinant-divisor oracle: the product d_1 ... d_k equals the gcd of
    /// all k x k minors. Independent of the elimination path.
    pub(crate) fn minor_gcd_invariants(m: &Matrix) -> Vec<BigInt> {
        let rows = m.rows();
        let cols = m.cols();
        let n = rows.min(cols);
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=n {
            let mut g = BigInt::zero();
            for ri in combinations(rows, k) {
                for ci in combinations(cols, k) {
                    let det = minor_det(m, &ri, &ci);
                    g = num_integer::gcd(g, det);
                }
            }
            if g.is_zero() {
                break;
            }
            // g = d_1 ... d_k, so d_k = g / prev.
            out.push(&g / &prev);
            prev = g;
        }
        // Strip units for a ring with inverted primes.
        out.iter()
            .map(|d| m.ring().unit_free_part(d))
            .filter(|d| !d.is_one())
            .collect()
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    fn minor_det(m: &Matrix, ri: &[usize], ci: &[usize]) -> BigInt {
        // Laplace expansion on small integer minors.
        let k = ri.len();
        if k == 0 {
            return BigInt::one();
        }
        let mut det = BigRational::zero();
        for (idx, &c) in ci.iter().enumerate() {
            let sub_r: Vec<usize> = ri[1..].to_vec();
            let sub_c: Vec<usize> = ci.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, &x)| x).collect();
            let sign = if idx % 2 == 0 { BigRational::one() } else { -BigRational::one() };
            let sub = if k == 1 {
                BigRational::one()
            } else {
                BigRational::from_integer(minor_det(m, &sub_r, &sub_c))
            };
            det += sign * m.get(ri[0], c) * sub;
        }
        det.numer() / det.denom()
    }

    #[test]
    fn snf_known_example() {
        let m = Matrix::from_int_rows(&z(), &[vec![2, 4], vec![6, 8]]).unwrap();
        // Oracle: d1 = gcd of entries = 2, d1*d2 = |det| = |16 - 24| = 8.
        let inv = m.invariant_factors().unwrap();
        assert_eq!(inv, vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(minor_gcd_invariants(&m), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn snf_unit_entry_over_localization() {
        let l2 = Ring::localization(&[2]).unwrap();
        let m = Matrix::from_int_rows(&l2, &[vec![2]]).unwrap();
        let snf = m.snf().unwrap();
        assert_eq!(snf.d.get(0, 0), &BigRational::one());
    }

    #[test]
    fn snf_identity() {
        let m = Matrix::identity(&z(), 3);
        let snf = m.snf().unwrap();
        assert_eq!(snf.d, Matrix::identity(&z(), 3));
    }

    #[test]
    fn snf_round_trip_and_unit_transforms() {
        let m = Matrix::from_int_rows(&z(), &[vec![4, -6, 2], vec![0, 3, 9], vec![8, 5, -1]]).unwrap();
        let snf = m.snf().unwrap();
        let lhs = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
        assert_eq!(lhs, snf.d);
        assert_eq!(snf.u.mul(&snf.u_inv).unwrap(), Matrix::identity(&z(), 3));
        assert_eq!(snf.v_inv.mul(&snf.v).unwrap(), Matrix::identity(&z(), 3));
    }

    #[test]
    fn snf_rationals_is_rank_form() {
        let q = Ring::rationals();
        let m = Matrix::from_int_rows(&q, &[vec![2, 4], vec![1, 2]]).unwrap();
        let snf = m.snf().unwrap();
        assert_eq!(snf.rank(), 1);
        assert_eq!(snf.d.get(0, 0), &BigRational::one());
        assert!(snf.d.get(1, 1).is_zero());
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = Matrix::from_int_rows(&z(), &[vec![2, -1]]).unwrap();
        let k = kernel(&m).unwrap();
        assert_eq!(k.cols(), 1);
        let a = k.get(0, 0).to_integer().to_i64().unwrap();
        let b = k.get(1, 0).to_integer().to_i64().unwrap();
        assert_eq!(2 * a - b, 0);
        assert_eq!(a.abs(), 1);
    }

    #[test]
    fn kernel_mod_four() {
        let z4 = Ring::quotient(4).unwrap();
        let m = Matrix::from_int_rows(&z4, &[vec![2]]).unwrap();
        let k = kernel(&m).unwrap();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0), &BigRational::from_integer(BigInt::from(2)));
    }

    #[test]
    fn solve_examples() {
        let m = Matrix::from_int_rows(&z(), &[vec![2, 0], vec![0, 3]]).unwrap();
        let b = vec![
            BigRational::from_integer(BigInt::from(4)),
            BigRational::from_integer(BigInt::from(9)),
        ];
        let x = solve(&m, &b).unwrap().unwrap();
        assert_eq!(x[0], BigRational::from_integer(BigInt::from(2)));
        assert_eq!(x[1], BigRational::from_integer(BigInt::from(3)));
        let b2 = vec![
            BigRational::from_integer(BigInt::from(1)),
            BigRational::from_integer(BigInt::from(0)),
        ];
        assert!(solve(&m, &b2).unwrap().is_none());
    }

    #[test]
    fn solve_mod_four() {
        let z4 = Ring::quotient(4).unwrap();
        let m = Matrix::from_int_rows(&z4, &[vec![2]]).unwrap();
        let two = vec![BigRational::from_integer(BigInt::from(2))];
        let x = solve(&m, &two).unwrap().unwrap();
        // 2x = 2 mod 4 has solutions x in {1, 3}.
        let v = x[0].to_integer().to_i64().unwrap();
        assert!(v == 1 || v == 3);
        let one = vec![BigRational::one()];
        assert!(solve(&m, &one).unwrap().is_none());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/4").unwrap(), BigRational::new(BigInt::from(3), BigInt::from(4)));
        assert_eq!(parse_rational("-7").unwrap(), BigRational::from_integer(BigInt::from(-7)));
        assert_eq!(format_rational(&BigRational::new(BigInt::from(6), BigInt::from(4))), "3/2");
        assert!(parse_rational("1/0").is_err());
    }
}
