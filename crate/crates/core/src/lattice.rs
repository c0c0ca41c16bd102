//! Exact integer lattice linear algebra.
//!
//! Matrices carry arbitrary-precision entries. Sublattices of `Z^r` are kept in
//! row-echelon Hermite form so that equal lattices compare equal entrywise.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn bvec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rdot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() })
    }

    /// Panics when `vals.len() != rows * cols`.
    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols, "entry count");
        IntMatrix { rows, cols, data: bvec(vals) }
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension(format!("column {j} has length {}", c.len())));
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|i| dot(&self.data[i * self.cols..(i + 1) * self.cols], v)).collect())
    }

    pub fn add(&self, other: &IntMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &IntMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Exact rational inverse, `None` when singular.
    pub fn inverse_rational(&self) -> Option<Vec<Vec<BigRational>>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let a: Vec<Vec<BigRational>> = self.row_vecs().iter().map(|r| to_rat(r)).collect();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[j] = BigRational::one();
            cols.push(solve_rational_unique(&a, &e)?);
        }
        Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
    }

    pub fn inverse_unimodular(&self) -> Result<Self> {
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let inv = self.inverse_rational().ok_or(Error::NotUnimodular)?;
        let rows: Vec<Vec<BigInt>> = inv.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect();
        Self::from_rows(&rows).map(|m| if self.rows == 0 { Self::zeros(0, 0) } else { m })
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("power of non-square matrix".into()));
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn hstack(&self, other: &IntMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_columns(self.rows, &cols)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// row[target] += k * row[src]
    fn add_row(&mut self, target: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c] * k;
            self.data[target * self.cols + c] += v;
        }
    }

    /// col[target] += k * col[src]
    fn add_col(&mut self, target: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * k;
            self.data[r * self.cols + target] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self.data[i * self.cols + c];
            self.data[i * self.cols + c] = v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `u * m * v == d`, with `d` diagonal and its diagonal a divisibility chain.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        let Some((pi, pj)) = min_abs_entry(&a, t, |i, j| i >= t && j >= t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if !a.get(i, t).is_zero() {
                    let q = -a.get(i, t).div_floor(a.get(t, t));
                    a.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    dirty |= !a.get(i, t).is_zero();
                }
            }
            for j in t + 1..c {
                if !a.get(t, j).is_zero() {
                    let q = -a.get(t, j).div_floor(a.get(t, t));
                    a.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    dirty |= !a.get(t, j).is_zero();
                }
            }
            if dirty {
                let (pi, pj) = min_abs_entry(&a, t, |i, j| (i == t && j >= t) || (j == t && i >= t))
                    .expect("pivot line is nonzero");
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(a.get(t, t))));
            match bad {
                Some(i) => {
                    a.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { d: a, u, v }
}

fn min_abs_entry(a: &IntMatrix, t: usize, keep: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            if !keep(i, j) || a.get(i, j).is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a.get(i, j).abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Row-style Hermite form of a list of vectors; returns the nonzero rows and their pivot columns.
pub fn hermite_rows(gens: &[Vec<BigInt>], width: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut rows: Vec<Vec<BigInt>> = gens.to_vec();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..width {
        if pr >= rows.len() {
            break;
        }
        let mut found = false;
        loop {
            let k = (pr..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&x, &y| rows[x][col].abs().cmp(&rows[y][col].abs()));
            let Some(k) = k else { break };
            found = true;
            rows.swap(pr, k);
            let mut done = true;
            for i in pr + 1..rows.len() {
                if !rows[i][col].is_zero() {
                    let q = rows[i][col].div_floor(&rows[pr][col]);
                    let sub: Vec<BigInt> = rows[pr].iter().map(|x| x * &q).collect();
                    for (x, s) in rows[i].iter_mut().zip(sub) {
                        *x -= s;
                    }
                    done &= rows[i][col].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if !found {
            continue;
        }
        if rows[pr][col].is_negative() {
            for x in rows[pr].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..pr {
            let q = rows[i][col].div_floor(&rows[pr][col]);
            if !q.is_zero() {
                let sub: Vec<BigInt> = rows[pr].iter().map(|x| x * &q).collect();
                for (x, s) in rows[i].iter_mut().zip(sub) {
                    *x -= s;
                }
            }
        }
        pivots.push(col);
        pr += 1;
    }
    rows.truncate(pr);
    (rows, pivots)
}

/// The lattice `Z^rank` with its standard basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub rank: usize,
}

impl Lattice {
    pub fn new(rank: usize) -> Self {
        Lattice { rank }
    }
}

/// A sublattice of `Z^ambient`, stored in canonical Hermite form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sublattice {
    ambient: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Sublattice {
    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != ambient) {
            return Err(Error::Dimension(format!("generator of length {} in Z^{ambient}", g.len())));
        }
        let (rows, pivots) = hermite_rows(gens, ambient);
        Ok(Sublattice { ambient, rows, pivots })
    }

    /// Columns of `m` generate the sublattice.
    pub fn from_columns(m: &IntMatrix) -> Self {
        Self::from_generators(m.rows(), &m.columns()).expect("columns have matching length")
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_columns(&IntMatrix::identity(ambient))
    }

    pub fn zero(ambient: usize) -> Self {
        Sublattice { ambient, rows: vec![], pivots: vec![] }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis vectors in canonical order.
    pub fn basis_vectors(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Basis as the columns of an `ambient x rank` matrix.
    pub fn basis(&self) -> IntMatrix {
        IntMatrix::from_columns(self.ambient, &self.rows).expect("basis vectors have ambient length")
    }

    /// Coordinates with respect to `basis_vectors`, if `v` lies in the sublattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient {
            return None;
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
            coords.push(q);
        }
        rest.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        self.ambient == other.ambient && other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension("sum of sublattices in different ambients".into()));
        }
        let mut g = self.rows.clone();
        g.extend(other.rows.iter().cloned());
        Self::from_generators(self.ambient, &g)
    }

    pub fn intersect(&self, other: &Sublattice) -> Result<Sublattice> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension("intersection of sublattices in different ambients".into()));
        }
        let (k1, k2) = (self.rank(), other.rank());
        if k1 == 0 || k2 == 0 {
            return Ok(Sublattice::zero(self.ambient));
        }
        let neg: Vec<Vec<BigInt>> = other.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let mut cols = self.rows.clone();
        cols.extend(neg);
        let a = IntMatrix::from_columns(self.ambient, &cols)?;
        let ker = kernel(&a);
        let b1 = self.basis();
        let gens: Vec<Vec<BigInt>> = ker
            .basis_vectors()
            .iter()
            .map(|z| b1.mul_vec(&z[..k1]).expect("shape"))
            .collect();
        Self::from_generators(self.ambient, &gens)
    }

    /// Image under a linear map `Z^ambient -> Z^m`.
    pub fn image(&self, g: &IntMatrix) -> Result<Sublattice> {
        if g.cols() != self.ambient {
            return Err(Error::Dimension("image under map of wrong width".into()));
        }
        let gens: Result<Vec<_>> = self.rows.iter().map(|r| g.mul_vec(r)).collect();
        Self::from_generators(g.rows(), &gens?)
    }

    pub fn scaled(&self, k: &BigInt) -> Sublattice {
        let gens: Vec<Vec<BigInt>> = self.rows.iter().map(|r| r.iter().map(|x| x * k).collect()).collect();
        Self::from_generators(self.ambient, &gens).expect("same ambient")
    }

    /// `(L tensor Q) cap Z^ambient`.
    pub fn saturation(&self) -> Sublattice {
        if self.rank() == 0 {
            return Sublattice::zero(self.ambient);
        }
        let perp = kernel(&self.basis().transpose());
        if perp.rank() == 0 {
            return Sublattice::full(self.ambient);
        }
        kernel(&perp.basis().transpose())
    }

    pub fn is_saturated(&self) -> bool {
        quotient_structure(&Lattice::new(self.ambient), self)
            .map(|g| g.invariant_factors.is_empty())
            .unwrap_or(false)
    }
}

/// Finite abelian group `Z/d_1 x ... x Z/d_k x Z^free_rank`, `d_i | d_{i+1}`, `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup { invariant_factors: vec![], free_rank: 0 }
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion_order())
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "factors": self.invariant_factors.iter().map(crate::json::int_value).collect::<Vec<_>>(),
            "free_rank": self.free_rank,
        })
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{k}")),
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Structure of `L / S`.
pub fn quotient_structure(l: &Lattice, s: &Sublattice) -> Result<FiniteAbelianGroup> {
    if s.ambient != l.rank {
        return Err(Error::Dimension(format!("sublattice of Z^{} in Z^{}", s.ambient, l.rank)));
    }
    if s.rank() == 0 {
        return Ok(FiniteAbelianGroup { invariant_factors: vec![], free_rank: l.rank });
    }
    let snf = smith_normal_form(&s.basis());
    let invariant_factors = snf.diagonal().into_iter().filter(|d| !d.is_one()).collect();
    Ok(FiniteAbelianGroup { invariant_factors, free_rank: l.rank - s.rank() })
}

/// `{ z : a z = 0 }`, a saturated sublattice of `Z^cols`.
pub fn kernel(a: &IntMatrix) -> Sublattice {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let gens: Vec<Vec<BigInt>> = (rank..a.cols()).map(|j| snf.v.column(j)).collect();
    Sublattice::from_generators(a.cols(), &gens).expect("columns of V")
}

/// `{ y : a y = 0 mod n }`.
pub fn solve_congruence(a: &IntMatrix, n: &BigInt) -> Sublattice {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let gens: Vec<Vec<BigInt>> = (0..a.cols())
        .map(|j| {
            let d = diag.get(j).cloned().unwrap_or_else(BigInt::zero);
            let g = if d.is_zero() { n.clone() } else { d.gcd(n) };
            let k = n / g;
            snf.v.column(j).iter().map(|x| x * &k).collect()
        })
        .collect();
    Sublattice::from_generators(a.cols(), &gens).expect("columns of V")
}

/// One integer solution of `a x = b`, if any.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.len() != a.rows() {
        return None;
    }
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b).ok()?;
    let diag = snf.diagonal();
    let mut w = vec![BigInt::zero(); a.cols()];
    for (i, x) in ub.iter().enumerate() {
        match diag.get(i) {
            Some(d) if !d.is_zero() => {
                let (q, r) = x.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                w[i] = q;
            }
            _ => {
                if !x.is_zero() {
                    return None;
                }
            }
        }
    }
    snf.v.mul_vec(&w).ok()
}

/// Order of a unimodular automorphism, up to `cap`.
pub fn automorphism_order(g: &IntMatrix, cap: usize) -> Result<usize> {
    if !g.is_square() {
        return Err(Error::Dimension("automorphism must be square".into()));
    }
    if !g.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let mut p = g.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Ok(k);
        }
        p = p.mul(g)?;
    }
    Err(Error::OrderCap(cap))
}

pub const ORDER_CAP: usize = 24;

/// Kernel of `g - id`, for a finite-order automorphism `g` of `L`.
pub fn fixed_sublattice(l: &Lattice, g: &IntMatrix) -> Result<Sublattice> {
    if g.rows() != l.rank || g.cols() != l.rank {
        return Err(Error::Dimension(format!("{}x{} automorphism of Z^{}", g.rows(), g.cols(), l.rank)));
    }
    automorphism_order(g, ORDER_CAP)?;
    Ok(kernel(&g.sub(&IntMatrix::identity(l.rank))?))
}

/// Solution of a square nonsingular rational system.
pub fn solve_rational_unique(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return None;
    }
    let x = solve_rational(a, b)?;
    let rank = rational_rank(a);
    (rank == n).then_some(x)
}

/// Some solution of `a x = b` (free variables set to zero), or `None` if inconsistent.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigRational>> =
        a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain(std::iter::once(x.clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        let Some(k) = (pr..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(pr, k);
        let p = m[pr][c].clone();
        for x in m[pr].iter_mut() {
            *x /= &p;
        }
        for i in 0..rows {
            if i != pr && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let sub: Vec<BigRational> = m[pr].iter().map(|x| x * &f).collect();
                for (x, s) in m[i].iter_mut().zip(sub) {
                    *x -= s;
                }
            }
        }
        pivots.push(c);
        pr += 1;
        if pr == rows {
            break;
        }
    }
    if m[pr..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

pub fn rational_rank(a: &[Vec<BigRational>]) -> usize {
    let rows: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| {
            let den = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    let width = a.first().map_or(0, |r| r.len());
    hermite_rows(&rows, width).0.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let d = s.diagonal();
        for w in d.windows(2) {
            assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && w[1].is_multiple_of(&w[0]));
        }
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_identity() {
        let s = smith_normal_form(&IntMatrix::identity(2));
        assert!(s.d.is_identity() && s.u.is_identity() && s.v.is_identity());
    }

    #[test]
    fn snf_diag_2_3() {
        let m = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, IntMatrix::from_i64(2, 2, &[1, 0, 0, 6]));
        check_snf(&m);
    }

    #[test]
    fn snf_zero_and_rect() {
        check_snf(&IntMatrix::zeros(2, 3));
        check_snf(&IntMatrix::from_i64(2, 3, &[4, 6, 8, 10, 12, 14]));
        check_snf(&IntMatrix::from_i64(3, 2, &[0, 0, 0, -5, 0, 15]));
    }

    #[test]
    fn quotients() {
        let l = Lattice::new(2);
        let s = Sublattice::from_columns(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        let g = quotient_structure(&l, &s).unwrap();
        assert_eq!(g.invariant_factors, bvec(&[6]));
        assert!(quotient_structure(&l, &Sublattice::full(2)).unwrap().is_trivial());
        let line = Sublattice::from_generators(2, &[bvec(&[1, 0])]).unwrap();
        let g = quotient_structure(&l, &line).unwrap();
        assert_eq!((g.invariant_factors.len(), g.free_rank), (0, 1));
        assert!(quotient_structure(&Lattice::new(3), &line).is_err());
    }

    #[test]
    fn fixed_examples() {
        let l = Lattice::new(2);
        assert_eq!(fixed_sublattice(&l, &IntMatrix::identity(2)).unwrap(), Sublattice::full(2));
        assert_eq!(fixed_sublattice(&l, &IntMatrix::identity(2).scale(&bi(-1))).unwrap(), Sublattice::zero(2));
        let swap = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        assert_eq!(
            fixed_sublattice(&l, &swap).unwrap(),
            Sublattice::from_generators(2, &[bvec(&[1, 1])]).unwrap()
        );
        assert_eq!(fixed_sublattice(&l, &IntMatrix::from_i64(2, 2, &[2, 0, 0, 1])), Err(Error::NotUnimodular));
        assert_eq!(fixed_sublattice(&l, &IntMatrix::from_i64(2, 2, &[1, 1, 0, 1])), Err(Error::OrderCap(24)));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = Sublattice::from_generators(2, &[bvec(&[2, 4]), bvec(&[0, 6])]).unwrap();
        let b = Sublattice::from_generators(2, &[bvec(&[2, -2]), bvec(&[2, 4]), bvec(&[4, 2])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn congruence_and_intersection() {
        let b = IntMatrix::from_i64(2, 2, &[2, -1, -1, 2]);
        let y = solve_congruence(&b, &bi(2));
        assert_eq!(y, Sublattice::full(2).scaled(&bi(2)));
        let a = Sublattice::from_generators(1, &[bvec(&[4])]).unwrap();
        let c = Sublattice::from_generators(1, &[bvec(&[6])]).unwrap();
        assert_eq!(a.intersect(&c).unwrap(), Sublattice::from_generators(1, &[bvec(&[12])]).unwrap());
        assert_eq!(a.sum(&c).unwrap(), Sublattice::from_generators(1, &[bvec(&[2])]).unwrap());
    }

    #[test]
    fn det_and_inverse() {
        let m = IntMatrix::from_i64(3, 3, &[2, 1, 0, 1, 1, 0, 0, 3, 1]);
        assert_eq!(m.det().unwrap(), bi(1));
        let inv = m.inverse_unimodular().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert_eq!(IntMatrix::from_i64(2, 2, &[1, 2, 3, 4]).det().unwrap(), bi(-2));
    }
}
