//! Based root data: construction, validation, Weyl groups, duality and isogeny names.
//!
//! Characters and cocharacters are both `Z^r` with the dot product as pairing.
//! Roots are stored explicitly together with their coroots.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{
    dot, kernel, quotient_structure, solve_integer, solve_rational, to_rat, FiniteAbelianGroup, IntMatrix, Lattice,
    Sublattice,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub family: String,
    pub x_rank: usize,
    pub roots: Vec<Vec<BigInt>>,
    pub coroots: Vec<Vec<BigInt>>,
    pub simple: Vec<usize>,
    /// Finite-order automorphism of Y; acts on X by the inverse transpose.
    pub galois: Option<IntMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    SimplyConnected,
    Adjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Named {
    SL,
    PGL,
    Sp,
    PGSp,
    Spin,
    SO,
    PGO,
    GL,
    GSp,
}

impl Named {
    pub fn prefix(self) -> &'static str {
        match self {
            Named::SL => "SL",
            Named::PGL => "PGL",
            Named::Sp => "Sp",
            Named::PGSp => "PGSp",
            Named::Spin => "Spin",
            Named::SO => "SO",
            Named::PGO => "PGO",
            Named::GL => "GL",
            Named::GSp => "GSp",
        }
    }
}

/// Largest rank accepted when building or reading a datum.
pub const MAX_RANK: usize = 64;

/// Cartan matrix `a_ij = <alpha_i, alpha_j^vee>` in Bourbaki numbering.
pub fn cartan_matrix(family: Family, rank: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::Rank(format!("{}_{rank}", family.letter()));
    let ok = match family {
        Family::A | Family::B | Family::C => (1..=MAX_RANK).contains(&rank),
        Family::D => (3..=MAX_RANK).contains(&rank),
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    };
    if !ok {
        return Err(bad());
    }
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match family {
        Family::A => (0..rank.saturating_sub(1)).for_each(|i| link(i, i + 1, -1, -1)),
        Family::B | Family::C => {
            for i in 0..rank.saturating_sub(2) {
                link(i, i + 1, -1, -1);
            }
            if rank >= 2 {
                let (x, y) = if family == Family::B { (-2, -1) } else { (-1, -2) };
                link(rank - 2, rank - 1, x, y);
            }
        }
        Family::D => {
            for i in 0..rank - 2 {
                link(i, i + 1, -1, -1);
            }
            link(rank - 3, rank - 1, -1, -1);
        }
        Family::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 2..rank - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -2, -1);
            link(2, 3, -1, -1);
        }
        Family::G => link(0, 1, -1, -3),
    }
    Ok(a)
}

fn unit(r: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); r];
    v[i] = BigInt::one();
    v
}

fn sub_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_scaled(a: &[BigInt], k: &BigInt, b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + k * y).collect()
}

impl RootDatum {
    /// Builds a datum from simple roots/coroots, closing up under simple reflections.
    pub fn from_simple(family: &str, x_rank: usize, simple_roots: &[Vec<BigInt>], simple_coroots: &[Vec<BigInt>]) -> Result<Self> {
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::InvalidDatum("simple root and coroot counts differ".into()));
        }
        if simple_roots.iter().chain(simple_coroots).any(|v| v.len() != x_rank) {
            return Err(Error::InvalidDatum("vector length differs from lattice rank".into()));
        }
        let mut roots: Vec<Vec<BigInt>> = simple_roots.to_vec();
        let mut coroots: Vec<Vec<BigInt>> = simple_coroots.to_vec();
        let mut seen: HashSet<Vec<BigInt>> = roots.iter().cloned().collect();
        let mut queue: VecDeque<usize> = (0..roots.len()).collect();
        while let Some(k) = queue.pop_front() {
            for (a, av) in simple_roots.iter().zip(simple_coroots) {
                let c = dot(&roots[k], av);
                let r = add_scaled(&roots[k], &-&c, a);
                if seen.contains(&r) {
                    continue;
                }
                let d = dot(a, &coroots[k]);
                let cr = add_scaled(&coroots[k], &-&d, av);
                seen.insert(r.clone());
                roots.push(r);
                coroots.push(cr);
                queue.push_back(roots.len() - 1);
                if roots.len() > 100_000 {
                    return Err(Error::InvalidDatum("root closure does not terminate".into()));
                }
            }
        }
        Ok(RootDatum {
            family: family.to_string(),
            x_rank,
            roots,
            coroots,
            simple: (0..simple_roots.len()).collect(),
            galois: None,
        })
    }

    pub fn torus(rank: usize) -> Self {
        RootDatum { family: "T".into(), x_rank: rank, roots: vec![], coroots: vec![], simple: vec![], galois: None }
    }

    pub fn with_galois(mut self, g: IntMatrix) -> Result<Self> {
        if g.rows() != self.x_rank || g.cols() != self.x_rank {
            return Err(Error::Dimension("galois action has wrong size".into()));
        }
        self.galois = Some(g);
        Ok(self)
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn simple_roots(&self) -> Vec<Vec<BigInt>> {
        self.simple.iter().map(|&i| self.roots[i].clone()).collect()
    }

    pub fn simple_coroots(&self) -> Vec<Vec<BigInt>> {
        self.simple.iter().map(|&i| self.coroots[i].clone()).collect()
    }

    /// `a_ij = <alpha_i, alpha_j^vee>`.
    pub fn cartan(&self) -> Vec<Vec<BigInt>> {
        let (s, sv) = (self.simple_roots(), self.simple_coroots());
        s.iter().map(|a| sv.iter().map(|c| dot(a, c)).collect()).collect()
    }

    pub fn root_index(&self, r: &[BigInt]) -> Option<usize> {
        self.roots.iter().position(|x| x == r)
    }

    /// Matrix of `y -> y - <alpha, y> alpha^vee` on Y.
    pub fn reflection_y(&self, k: usize) -> IntMatrix {
        let (a, av) = (&self.roots[k], &self.coroots[k]);
        let mut m = IntMatrix::identity(self.x_rank);
        for i in 0..self.x_rank {
            for j in 0..self.x_rank {
                let v = m.get(i, j) - &av[i] * &a[j];
                m.set(i, j, v);
            }
        }
        m
    }

    /// Matrix of `x -> x - <x, alpha^vee> alpha` on X.
    pub fn reflection_x(&self, k: usize) -> IntMatrix {
        let (a, av) = (&self.roots[k], &self.coroots[k]);
        let mut m = IntMatrix::identity(self.x_rank);
        for i in 0..self.x_rank {
            for j in 0..self.x_rank {
                let v = m.get(i, j) - &a[i] * &av[j];
                m.set(i, j, v);
            }
        }
        m
    }

    /// Indices of roots positive with respect to the simple system.
    pub fn positive_roots(&self) -> Vec<usize> {
        if self.simple.is_empty() {
            return vec![];
        }
        let rows: Vec<Vec<BigRational>> = self.simple_roots().iter().map(|a| to_rat(a)).collect();
        let ones = vec![BigRational::one(); rows.len()];
        let y = solve_rational(&rows, &ones).expect("simple roots are linearly independent");
        (0..self.roots.len())
            .filter(|&k| {
                let h: BigRational = to_rat(&self.roots[k]).iter().zip(&y).map(|(a, b)| a * b).sum();
                h.is_positive()
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "rank": self.simple.len(),
            "X_rank": self.x_rank,
            "roots": self.roots.iter().map(|r| json::vec_value(r)).collect::<Vec<_>>(),
            "coroots": self.coroots.iter().map(|r| json::vec_value(r)).collect::<Vec<_>>(),
            "simple": self.simple,
            "galois": self.galois.as_ref().map(json::matrix_value),
        })
    }

    /// Reads the documented JSON shape; structural checks only (see [`validate`]).
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("root datum must be an object".into()))?;
        let field = |k: &str| obj.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
        let family = field("family")?.as_str().ok_or_else(|| Error::Parse("family must be a string".into()))?.to_string();
        let x_rank = field("X_rank")?.as_u64().ok_or_else(|| Error::Parse("X_rank must be a non-negative integer".into()))?;
        if x_rank > MAX_RANK as u64 {
            return Err(Error::Parse("X_rank too large".into()));
        }
        let x_rank = x_rank as usize;
        let roots = json::value_vecs(field("roots")?)?;
        let coroots = json::value_vecs(field("coroots")?)?;
        let simple: Vec<usize> = field("simple")?
            .as_array()
            .ok_or_else(|| Error::Parse("simple must be an array".into()))?
            .iter()
            .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| Error::Parse("simple index must be a non-negative integer".into())))
            .collect::<Result<_>>()?;
        let rank = field("rank")?.as_u64().ok_or_else(|| Error::Parse("rank must be a non-negative integer".into()))?;
        if rank as usize != simple.len() {
            return Err(Error::Parse("rank differs from the number of simple roots".into()));
        }
        let galois = match obj.get("galois") {
            None | Some(Value::Null) => None,
            Some(g) => Some(json::value_matrix(g)?),
        };
        if roots.len() != coroots.len() {
            return Err(Error::Parse("roots and coroots differ in number".into()));
        }
        if roots.iter().chain(&coroots).any(|r| r.len() != x_rank) {
            return Err(Error::Parse("vector length differs from X_rank".into()));
        }
        if simple.iter().any(|&i| i >= roots.len()) {
            return Err(Error::Parse("simple index out of range".into()));
        }
        if let Some(g) = &galois {
            if g.rows() != x_rank || g.cols() != x_rank {
                return Err(Error::Parse("galois matrix has wrong size".into()));
            }
        }
        Ok(RootDatum { family, x_rank, roots, coroots, simple, galois })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

pub fn build_root_datum(family: Family, rank: usize, form: Form) -> Result<RootDatum> {
    let a = cartan_matrix(family, rank)?;
    let name = format!("{}{}", family.letter(), rank);
    let (roots, coroots): (Vec<_>, Vec<_>) = match form {
        Form::SimplyConnected => (0..rank).map(|i| (a[i].iter().map(|&x| BigInt::from(x)).collect(), unit(rank, i))).unzip(),
        Form::Adjoint => (0..rank).map(|j| (unit(rank, j), (0..rank).map(|i| BigInt::from(a[i][j])).collect())).unzip(),
    };
    let mut rd = RootDatum::from_simple(&name, rank, &roots, &coroots)?;
    if form == Form::Adjoint {
        rd.family = format!("{name}ad");
    }
    Ok(rd)
}

/// Standard data by name and subscript, e.g. `(Sp, 6)`, `(Spin, 7)`, `(GL, 2)`.
pub fn build_named(kind: Named, size: usize) -> Result<RootDatum> {
    let bad = || Error::Rank(format!("{}_{size}", kind.prefix()));
    let label = format!("{}_{size}", kind.prefix());
    if size > 2 * MAX_RANK + 1 {
        return Err(bad());
    }
    let mut rd = match kind {
        Named::SL | Named::PGL => {
            if size < 2 {
                return Err(bad());
            }
            let form = if kind == Named::SL { Form::SimplyConnected } else { Form::Adjoint };
            build_root_datum(Family::A, size - 1, form)?
        }
        Named::Sp | Named::PGSp => {
            if size < 2 || size % 2 == 1 {
                return Err(bad());
            }
            let form = if kind == Named::Sp { Form::SimplyConnected } else { Form::Adjoint };
            build_root_datum(Family::C, size / 2, form)?
        }
        Named::Spin | Named::SO | Named::PGO => {
            if size < 3 {
                return Err(bad());
            }
            if size % 2 == 1 {
                match kind {
                    Named::Spin => build_root_datum(Family::B, size / 2, Form::SimplyConnected)?,
                    Named::SO => build_root_datum(Family::B, size / 2, Form::Adjoint)?,
                    _ => return Err(bad()),
                }
            } else {
                let l = size / 2;
                if l < 3 {
                    return Err(bad());
                }
                match kind {
                    Named::Spin => build_root_datum(Family::D, l, Form::SimplyConnected)?,
                    Named::PGO => build_root_datum(Family::D, l, Form::Adjoint)?,
                    _ => {
                        let mut s: Vec<Vec<BigInt>> = (0..l - 1).map(|i| sub_vec(&unit(l, i), &unit(l, i + 1))).collect();
                        s.push(add_scaled(&unit(l, l - 2), &BigInt::one(), &unit(l, l - 1)));
                        RootDatum::from_simple("", l, &s, &s)?
                    }
                }
            }
        }
        Named::GL => {
            if size < 1 {
                return Err(bad());
            }
            let s: Vec<Vec<BigInt>> = (0..size - 1).map(|i| sub_vec(&unit(size, i), &unit(size, i + 1))).collect();
            RootDatum::from_simple("", size, &s, &s)?
        }
        Named::GSp => {
            if size < 2 || size % 2 == 1 {
                return Err(bad());
            }
            let r = size / 2;
            let d = r + 1;
            let mut s: Vec<Vec<BigInt>> = (1..r).map(|i| sub_vec(&unit(d, i), &unit(d, i + 1))).collect();
            let mut sv = s.clone();
            s.push(sub_vec(&unit(d, r).iter().map(|x| x * 2).collect::<Vec<_>>(), &unit(d, 0)));
            sv.push(unit(d, r));
            RootDatum::from_simple("", d, &s, &sv)?
        }
    };
    rd.family = label;
    Ok(rd)
}

/// Parses labels such as `SL_4`, `Spin_7`, `GSp_6`, `E_6`, `F_4`, `G_2`.
pub fn build_from_label(label: &str) -> Result<RootDatum> {
    let (head, tail) = label
        .trim()
        .split_once('_')
        .ok_or_else(|| Error::Parse(format!("group label {label:?} must look like SL_4")))?;
    let size: usize = tail.parse().map_err(|_| Error::Parse(format!("bad subscript in {label:?}")))?;
    let kind = match head {
        "SL" => Named::SL,
        "PGL" => Named::PGL,
        "Sp" => Named::Sp,
        "PGSp" => Named::PGSp,
        "Spin" => Named::Spin,
        "SO" => Named::SO,
        "PGO" => Named::PGO,
        "GL" => Named::GL,
        "GSp" => Named::GSp,
        "E" | "F" | "G" => {
            let f = Family::from_letter(head.chars().next().unwrap_or('?')).expect("letter");
            let mut rd = build_root_datum(f, size, Form::SimplyConnected)?;
            rd.family = format!("{head}_{size}");
            return Ok(rd);
        }
        _ => return Err(Error::Parse(format!("unknown group {label:?}"))),
    };
    build_named(kind, size)
}

/// Direct product of two data; a missing Galois action is read as the identity.
pub fn product(a: &RootDatum, b: &RootDatum) -> RootDatum {
    let (ra, rb) = (a.x_rank, b.x_rank);
    let pad = |v: &[BigInt], left: bool| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); ra + rb];
        let off = if left { 0 } else { ra };
        for (i, x) in v.iter().enumerate() {
            out[off + i] = x.clone();
        }
        out
    };
    let roots = a.roots.iter().map(|r| pad(r, true)).chain(b.roots.iter().map(|r| pad(r, false))).collect();
    let coroots = a.coroots.iter().map(|r| pad(r, true)).chain(b.coroots.iter().map(|r| pad(r, false))).collect();
    let simple = a.simple.iter().copied().chain(b.simple.iter().map(|&i| i + a.roots.len())).collect();
    let galois = if a.galois.is_none() && b.galois.is_none() {
        None
    } else {
        let ga = a.galois.clone().unwrap_or_else(|| IntMatrix::identity(ra));
        let gb = b.galois.clone().unwrap_or_else(|| IntMatrix::identity(rb));
        let mut g = IntMatrix::zeros(ra + rb, ra + rb);
        for i in 0..ra {
            for j in 0..ra {
                g.set(i, j, ga.get(i, j).clone());
            }
        }
        for i in 0..rb {
            for j in 0..rb {
                g.set(ra + i, ra + j, gb.get(i, j).clone());
            }
        }
        Some(g)
    };
    RootDatum { family: format!("{} x {}", a.family, b.family), x_rank: ra + rb, roots, coroots, simple, galois }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Shape,
    Pairing,
    Duplicate,
    Simple,
    Cartan,
    Closure,
    Galois,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ViolationKind::Shape => "shape",
            ViolationKind::Pairing => "pairing ≠ 2",
            ViolationKind::Duplicate => "duplicate root",
            ViolationKind::Simple => "simple roots",
            ViolationKind::Cartan => "Cartan matrix",
            ViolationKind::Closure => "closure",
            ViolationKind::Galois => "galois action",
        };
        write!(f, "{what}: {}", self.witness)
    }
}

fn violation(kind: ViolationKind, witness: String) -> std::result::Result<(), Violation> {
    Err(Violation { kind, witness })
}

fn fmt_vec(v: &[BigInt]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Checks every root datum invariant and returns the first violation found.
pub fn validate(rd: &RootDatum) -> std::result::Result<(), Violation> {
    use ViolationKind::*;
    let r = rd.x_rank;
    if rd.roots.len() != rd.coroots.len() {
        return violation(Shape, format!("{} roots but {} coroots", rd.roots.len(), rd.coroots.len()));
    }
    if let Some(v) = rd.roots.iter().chain(&rd.coroots).find(|v| v.len() != r) {
        return violation(Shape, format!("vector {} in rank {r}", fmt_vec(v)));
    }
    for (k, (a, av)) in rd.roots.iter().zip(&rd.coroots).enumerate() {
        let p = dot(a, av);
        if p != BigInt::from(2) {
            return violation(Pairing, format!("root {k}: <{}, {}> = {p}", fmt_vec(a), fmt_vec(av)));
        }
    }
    let index: HashMap<&Vec<BigInt>, usize> = rd.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
    if index.len() != rd.roots.len() {
        return violation(Duplicate, "roots are not distinct".into());
    }
    let mut seen = HashSet::new();
    for &s in &rd.simple {
        if s >= rd.roots.len() || !seen.insert(s) {
            return violation(Simple, format!("bad simple index {s}"));
        }
    }
    let a = rd.cartan();
    for i in 0..a.len() {
        for j in 0..a.len() {
            if i != j && (a[i][j].is_positive() || (a[i][j].is_zero() != a[j][i].is_zero())) {
                return violation(Cartan, format!("a[{i}][{j}] = {}, a[{j}][{i}] = {}", a[i][j], a[j][i]));
            }
        }
    }
    for &s in &rd.simple {
        let (al, alv) = (&rd.roots[s], &rd.coroots[s]);
        for (k, (x, y)) in rd.roots.iter().zip(&rd.coroots).enumerate() {
            let sx = add_scaled(x, &-dot(x, alv), al);
            let sy = add_scaled(y, &-dot(al, y), alv);
            match index.get(&sx) {
                Some(&m) if rd.coroots[m] == sy => {}
                _ => {
                    return violation(
                        Closure,
                        format!("reflection in simple root {s} sends root {k} to {} / coroot {}", fmt_vec(&sx), fmt_vec(&sy)),
                    )
                }
            }
        }
    }
    if !rd.roots.is_empty() {
        let closed = RootDatum::from_simple("", r, &rd.simple_roots(), &rd.simple_coroots());
        match closed {
            Ok(c) if c.roots.len() == rd.roots.len() => {}
            _ => return violation(Closure, "Weyl orbit of the simple roots is not the full root set".into()),
        }
    }
    if let Some(g) = &rd.galois {
        if g.rows() != r || g.cols() != r {
            return violation(Galois, "wrong size".into());
        }
        if let Err(e) = crate::lattice::automorphism_order(g, crate::lattice::ORDER_CAP) {
            return violation(Galois, e.to_string());
        }
        let gx = g.inverse_unimodular().expect("unimodular").transpose();
        let simple_set: HashSet<usize> = rd.simple.iter().copied().collect();
        for (k, (x, y)) in rd.roots.iter().zip(&rd.coroots).enumerate() {
            let (gx_v, gy_v) = (gx.mul_vec(x).expect("shape"), g.mul_vec(y).expect("shape"));
            match index.get(&gx_v) {
                Some(&m) if rd.coroots[m] == gy_v => {
                    if simple_set.contains(&k) && !simple_set.contains(&m) {
                        return violation(Galois, format!("simple root {k} is not sent to a simple root"));
                    }
                }
                _ => return violation(Galois, format!("root {k} is not sent to a root")),
            }
        }
    }
    Ok(())
}

pub const WEYL_CAP: usize = 10_000_000;

pub fn weyl_group(rd: &RootDatum) -> Result<Vec<IntMatrix>> {
    weyl_group_capped(rd, WEYL_CAP)
}

/// Closure of the simple reflections on Y.
pub fn weyl_group_capped(rd: &RootDatum, cap: usize) -> Result<Vec<IntMatrix>> {
    let gens: Vec<IntMatrix> = rd.simple.iter().map(|&s| rd.reflection_y(s)).collect();
    let id = IntMatrix::identity(rd.x_rank);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let w = out[head].clone();
        head += 1;
        for s in &gens {
            let sw = s.mul(&w)?;
            if seen.insert(sw.clone()) {
                out.push(sw);
                if out.len() > cap {
                    return Err(Error::WeylCap(cap));
                }
            }
        }
    }
    Ok(out)
}

/// The same group acting on X, element by element (inverse transpose).
pub fn weyl_group_on_x(rd: &RootDatum, w_y: &[IntMatrix]) -> Result<Vec<IntMatrix>> {
    let _ = rd;
    w_y.iter().map(|w| Ok(w.inverse_unimodular()?.transpose())).collect()
}

pub fn dual_root_datum(rd: &RootDatum) -> RootDatum {
    let galois = rd.galois.as_ref().map(|g| g.inverse_unimodular().expect("finite-order automorphism").transpose());
    RootDatum {
        family: dual_family(&rd.family),
        x_rank: rd.x_rank,
        roots: rd.coroots.clone(),
        coroots: rd.roots.clone(),
        simple: rd.simple.clone(),
        galois,
    }
}

fn dual_family(f: &str) -> String {
    match f.strip_prefix("dual(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("dual({f})"),
    }
}

/// Connected component of the Dynkin diagram, with its nodes listed in Bourbaki order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub letter: char,
    pub rank: usize,
    /// Positions in the simple-root list.
    pub order: Vec<usize>,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.letter, self.rank)
    }
}

/// Splits a Cartan matrix into irreducible components and names them.
pub fn classify(cartan: &[Vec<BigInt>]) -> Result<Vec<Component>> {
    let n = cartan.len();
    let a = |i: usize, j: usize| cartan[i][j].to_i64().unwrap_or(i64::MIN);
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| j != i && a(i, j) != 0).collect()).collect();
    let mut comp_of = vec![usize::MAX; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let mut nodes = vec![s];
        comp_of[s] = comps.len();
        let mut k = 0;
        while k < nodes.len() {
            for &j in &adj[nodes[k]] {
                if comp_of[j] == usize::MAX {
                    comp_of[j] = comps.len();
                    nodes.push(j);
                }
            }
            k += 1;
        }
        nodes.sort_unstable();
        comps.push(nodes);
    }
    let bad = |nodes: &[usize]| Error::InvalidDatum(format!("nodes {nodes:?} do not form a finite-type Dynkin diagram"));
    let mut out = Vec::new();
    for nodes in comps {
        let m = nodes.len();
        let mult = |i: usize, j: usize| a(i, j) * a(j, i);
        let edges: Vec<(usize, usize)> =
            nodes.iter().flat_map(|&i| adj[i].iter().filter(move |&&j| j > i).map(move |&j| (i, j))).collect();
        if edges.len() + 1 != m || edges.iter().any(|&(i, j)| !(1..=3).contains(&mult(i, j))) {
            return Err(bad(&nodes));
        }
        let max_deg = nodes.iter().map(|&i| adj[i].len()).max().unwrap_or(0);
        let path = || -> Vec<usize> {
            let start = *nodes.iter().find(|&&i| adj[i].len() <= 1).expect("a tree has a leaf");
            let mut p = vec![start];
            while p.len() < m {
                let last = *p.last().unwrap();
                let next = adj[last].iter().copied().find(|j| !p.contains(j)).expect("path");
                p.push(next);
            }
            p
        };
        if m == 1 {
            out.push(Component { letter: 'A', rank: 1, order: nodes });
            continue;
        }
        let heavy: Vec<&(usize, usize)> = edges.iter().filter(|&&(i, j)| mult(i, j) > 1).collect();
        if heavy.len() > 1 || (!heavy.is_empty() && max_deg > 2) {
            return Err(bad(&nodes));
        }
        if let Some(&&(i, j)) = heavy.first() {
            let mu = mult(i, j);
            if mu == 3 {
                if m != 2 {
                    return Err(bad(&nodes));
                }
                let order = if a(i, j) == -1 { vec![i, j] } else { vec![j, i] };
                out.push(Component { letter: 'G', rank: 2, order });
                continue;
            }
            if m == 2 {
                let order = if a(i, j) == -1 { vec![i, j] } else { vec![j, i] };
                out.push(Component { letter: 'C', rank: 2, order });
                continue;
            }
            let mut p = path();
            let pos = |p: &[usize]| p.windows(2).position(|w| mult(w[0], w[1]) == 2).expect("double bond");
            let k = pos(&p);
            if m == 4 && k == 1 {
                if a(p[1], p[2]) != -2 {
                    p.reverse();
                }
                out.push(Component { letter: 'F', rank: 4, order: p });
                continue;
            }
            if k == 0 {
                p.reverse();
            } else if k != m - 2 {
                return Err(bad(&nodes));
            }
            let letter = if a(p[m - 2], p[m - 1]) == -2 { 'B' } else { 'C' };
            out.push(Component { letter, rank: m, order: p });
            continue;
        }
        if max_deg <= 2 {
            out.push(Component { letter: 'A', rank: m, order: path() });
            continue;
        }
        let branch: Vec<usize> = nodes.iter().copied().filter(|&i| adj[i].len() == 3).collect();
        if branch.len() != 1 || max_deg > 3 {
            return Err(bad(&nodes));
        }
        let b = branch[0];
        let mut arms: Vec<Vec<usize>> = adj[b]
            .iter()
            .map(|&first| {
                let mut arm = vec![first];
                let mut prev = b;
                loop {
                    let cur = *arm.last().unwrap();
                    match adj[cur].iter().copied().find(|&j| j != prev) {
                        Some(next) => {
                            prev = cur;
                            arm.push(next);
                        }
                        None => break,
                    }
                }
                arm
            })
            .collect();
        arms.sort_by_key(|arm| (arm.len(), arm[0]));
        let lens: Vec<usize> = arms.iter().map(|x| x.len()).collect();
        if lens[0] == 1 && lens[1] == 1 {
            let long = if m == 4 { 0 } else { 2 };
            let mut order: Vec<usize> = arms[long].iter().rev().copied().collect();
            order.push(b);
            let mut rest: Vec<usize> = (0..3).filter(|&i| i != long).map(|i| arms[i][0]).collect();
            rest.sort_unstable();
            order.extend(rest);
            out.push(Component { letter: 'D', rank: m, order });
        } else if lens[0] == 1 && lens[1] == 2 && (2..=4).contains(&lens[2]) {
            let mut order = vec![arms[1][1], arms[0][0], arms[1][0], b];
            order.extend(arms[2].iter().copied());
            out.push(Component { letter: 'E', rank: m, order });
        } else {
            return Err(bad(&nodes));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyName {
    pub label: String,
    pub center: FiniteAbelianGroup,
    pub cartan_type: String,
}

impl fmt::Display for IsogenyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, center {}", self.label, self.center)
    }
}

fn torus_label(k: usize) -> String {
    match k {
        0 => "trivial group".into(),
        1 => "GL_1".into(),
        k => format!("GL_1^{k}"),
    }
}

fn span(ambient: usize, vs: &[Vec<BigInt>]) -> Sublattice {
    Sublattice::from_generators(ambient, vs).expect("vectors of ambient length")
}

/// Re-expresses the datum on a saturated cocharacter sublattice containing the chosen coroots.
pub fn restrict_to_cocharacters(rd: &RootDatum, sub: &Sublattice, root_indices: &[usize]) -> Result<RootDatum> {
    let basis = sub.basis_vectors().to_vec();
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for &k in root_indices {
        let c = sub
            .coordinates(&rd.coroots[k])
            .ok_or_else(|| Error::InvalidDatum(format!("coroot {k} outside the sublattice")))?;
        coroots.push(c);
        roots.push(basis.iter().map(|b| dot(&rd.roots[k], b)).collect());
    }
    let simple = rd.simple.iter().filter_map(|s| root_indices.iter().position(|k| k == s)).collect();
    Ok(RootDatum { family: rd.family.clone(), x_rank: sub.rank(), roots, coroots, simple, galois: None })
}

/// Derived datum: cocharacters `Y cap Q.Phi^vee`.
pub fn derived_datum(rd: &RootDatum) -> Result<RootDatum> {
    let sub = span(rd.x_rank, &rd.simple_coroots()).saturation();
    restrict_to_cocharacters(rd, &sub, &(0..rd.roots.len()).collect::<Vec<_>>())
}

fn semisimple_label(rd: &RootDatum, comp: &Component, center_order: &BigInt) -> String {
    let c = center_order.to_u64().unwrap_or(0);
    let m = comp.rank;
    let unnamed = || format!("unnamed isogeny of {comp}");
    match comp.letter {
        'A' => {
            let size = (m + 1) as u64;
            if c == size {
                format!("SL_{size}")
            } else if c == 1 {
                format!("PGL_{size}")
            } else if c > 0 && size.is_multiple_of(c) {
                format!("SL_{size}/mu_{}", size / c)
            } else {
                unnamed()
            }
        }
        'B' => match c {
            2 => format!("Spin_{}", 2 * m + 1),
            1 => format!("SO_{}", 2 * m + 1),
            _ => unnamed(),
        },
        'C' => match c {
            2 => format!("Sp_{}", 2 * m),
            1 => format!("PGSp_{}", 2 * m),
            _ => unnamed(),
        },
        'D' => match c {
            4 => format!("Spin_{}", 2 * m),
            1 => format!("PGO_{}", 2 * m),
            2 if m % 2 == 1 => format!("SO_{}", 2 * m),
            2 => {
                let v = comp.order[0];
                let k = IntMatrix::from_rows(&rd.simple_coroots()).expect("rows");
                let target: Vec<BigInt> = (0..rd.simple.len()).map(|i| if i == v { BigInt::one() } else { BigInt::zero() }).collect();
                if solve_integer(&k, &target).is_some() {
                    format!("SO_{}", 2 * m)
                } else {
                    format!("Spin_{}-quotient (unnamed)", 2 * m)
                }
            }
            _ => unnamed(),
        },
        'E' => match (m, c) {
            (6, 3) => "E_6".into(),
            (6, 1) => "E_6/mu_3".into(),
            (7, 2) => "E_7".into(),
            (7, 1) => "E_7/mu_2".into(),
            (8, 1) => "E_8".into(),
            _ => unnamed(),
        },
        'F' if c == 1 => "F_4".into(),
        'G' if c == 1 => "G_2".into(),
        _ => unnamed(),
    }
}

/// Does X have a basis `{x} + simple roots` with `<x, alpha_i^vee> = delta_{i,v}`?
fn extends_by_torus(rd: &RootDatum, v: usize) -> bool {
    let r = rd.x_rank;
    let l = rd.simple.len();
    if r != l + 1 {
        return false;
    }
    let k = IntMatrix::from_rows(&rd.simple_coroots()).expect("rows");
    let target: Vec<BigInt> = (0..l).map(|i| if i == v { BigInt::one() } else { BigInt::zero() }).collect();
    let Some(x0) = solve_integer(&k, &target) else { return false };
    let ker = kernel(&k);
    if ker.rank() != 1 {
        return false;
    }
    let z = ker.basis_vectors()[0].clone();
    let det_with = |first: &[BigInt]| -> BigInt {
        let mut cols = vec![first.to_vec()];
        cols.extend(rd.simple_roots());
        IntMatrix::from_columns(r, &cols).expect("square").det().expect("square")
    };
    let (d0, dz) = (det_with(&x0), det_with(&z));
    if dz.is_zero() {
        return d0.abs().is_one();
    }
    let one = BigInt::one();
    ((&one - &d0) % &dz).is_zero() || ((-&one - &d0) % &dz).is_zero()
}

pub fn identify_isogeny(rd: &RootDatum) -> Result<IsogenyName> {
    let r = rd.x_rank;
    let l = rd.simple.len();
    let comps = classify(&rd.cartan())?;
    let center = quotient_structure(&Lattice::new(r), &span(r, &rd.simple_roots()))?;
    let k = r - l;
    let mut cartan_type = comps.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" x ");
    if k > 0 {
        cartan_type = if l == 0 { format!("T{k}") } else { format!("{cartan_type} x T{k}") };
    }
    let unnamed = || format!("unnamed isogeny of {cartan_type}");
    let label = if l == 0 {
        torus_label(k)
    } else if k == 0 {
        semisimple_product_label(rd, &comps)?.unwrap_or_else(unnamed)
    } else {
        let y_der = span(r, &rd.simple_coroots()).saturation();
        let y_rad = kernel(&IntMatrix::from_rows(&rd.simple_roots())?);
        if y_der.sum(&y_rad)? == Sublattice::full(r) {
            let der = restrict_to_cocharacters(rd, &y_der, &(0..rd.roots.len()).collect::<Vec<_>>())?;
            let der_comps = classify(&der.cartan())?;
            match semisimple_product_label(&der, &der_comps)? {
                Some(s) => format!("{s} x {}", torus_label(k)),
                None => unnamed(),
            }
        } else if comps.len() == 1 && k == 1 && matches!(comps[0].letter, 'A' | 'C') && extends_by_torus(rd, comps[0].order[0]) {
            let m = comps[0].rank;
            if comps[0].letter == 'A' {
                format!("GL_{}", m + 1)
            } else {
                format!("GSp_{}", 2 * m)
            }
        } else {
            unnamed()
        }
    };
    Ok(IsogenyName { label, center, cartan_type })
}

fn semisimple_product_label(rd: &RootDatum, comps: &[Component]) -> Result<Option<String>> {
    let r = rd.x_rank;
    if comps.len() == 1 {
        let center = quotient_structure(&Lattice::new(r), &span(r, &rd.simple_roots()))?;
        return Ok(Some(semisimple_label(rd, &comps[0], &center.torsion_order())));
    }
    let parts: Vec<Sublattice> = comps
        .iter()
        .map(|c| span(r, &c.order.iter().map(|&i| rd.coroots[rd.simple[i]].clone()).collect::<Vec<_>>()).saturation())
        .collect();
    let mut total = Sublattice::zero(r);
    for p in &parts {
        total = total.sum(p)?;
    }
    if total != Sublattice::full(r) {
        return Ok(None);
    }
    let mut labels = Vec::new();
    for p in &parts {
        let idx: Vec<usize> = (0..rd.roots.len()).filter(|&k| p.contains(&rd.coroots[k])).collect();
        let sub = restrict_to_cocharacters(rd, p, &idx)?;
        let c = classify(&sub.cartan())?;
        match semisimple_product_label(&sub, &c)? {
            Some(s) => labels.push(s),
            None => return Ok(None),
        }
    }
    Ok(Some(labels.join(" x ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::bvec;

    #[test]
    fn sl2_datum() {
        let rd = build_named(Named::SL, 2).unwrap();
        assert_eq!(rd.roots, vec![bvec(&[2]), bvec(&[-2])]);
        assert_eq!(rd.coroots, vec![bvec(&[1]), bvec(&[-1])]);
    }

    #[test]
    fn gsp4_simple_roots() {
        let rd = build_named(Named::GSp, 4).unwrap();
        assert_eq!(rd.simple_roots(), vec![bvec(&[0, 1, -1]), bvec(&[-1, 0, 2])]);
        assert_eq!(rd.simple_coroots(), vec![bvec(&[0, 1, -1]), bvec(&[0, 0, 1])]);
        assert!(validate(&rd).is_ok());
    }

    #[test]
    fn c3_root_count() {
        let rd = build_root_datum(Family::C, 3, Form::SimplyConnected).unwrap();
        assert_eq!(rd.roots.len(), 18);
    }

    #[test]
    fn forged_pairing_is_reported() {
        let mut rd = build_named(Named::SL, 2).unwrap();
        rd.roots[0] = bvec(&[1]);
        rd.coroots[0] = bvec(&[1]);
        assert_eq!(validate(&rd).unwrap_err().kind, ViolationKind::Pairing);
    }

    #[test]
    fn mutated_b2_fails_closure() {
        let mut rd = build_root_datum(Family::B, 2, Form::SimplyConnected).unwrap();
        rd.roots.pop();
        rd.coroots.pop();
        assert_eq!(validate(&rd).unwrap_err().kind, ViolationKind::Closure);
    }

    #[test]
    fn weyl_orders() {
        let w = |f, r| weyl_group(&build_root_datum(f, r, Form::SimplyConnected).unwrap()).unwrap().len();
        assert_eq!(w(Family::A, 1), 2);
        assert_eq!(w(Family::G, 2), 12);
        assert_eq!(w(Family::B, 3), 48);
    }

    #[test]
    fn duals() {
        let sp6 = build_named(Named::Sp, 6).unwrap();
        assert_eq!(dual_root_datum(&dual_root_datum(&sp6)), sp6);
        assert_eq!(identify_isogeny(&dual_root_datum(&sp6)).unwrap().label, "SO_7");
        let gl2 = build_named(Named::GL, 2).unwrap();
        let d = dual_root_datum(&gl2);
        assert_eq!(d.roots, gl2.roots);
        assert_eq!(d.coroots, gl2.coroots);
        assert_eq!(identify_isogeny(&d).unwrap().label, "GL_2");
    }

    #[test]
    fn names() {
        let n = |rd: &RootDatum| identify_isogeny(rd).unwrap();
        let sp6 = n(&build_named(Named::Sp, 6).unwrap());
        assert_eq!(sp6.label, "Sp_6");
        assert_eq!(sp6.center.to_string(), "Z/2");
        let pgl4 = n(&build_named(Named::PGL, 4).unwrap());
        assert_eq!((pgl4.label.as_str(), pgl4.center.is_trivial()), ("PGL_4", true));
        let g2 = n(&build_from_label("G_2").unwrap());
        assert_eq!((g2.label.as_str(), g2.cartan_type.as_str()), ("G_2", "G_2"));
        let e7 = n(&build_from_label("E_7").unwrap());
        assert_eq!(e7.label, "E_7");
        let gl3 = n(&build_named(Named::GL, 3).unwrap());
        assert_eq!(gl3.label, "GL_3");
        assert_eq!(gl3.center.to_string(), "Z");
        let gsp4 = n(&build_named(Named::GSp, 4).unwrap());
        assert_eq!(gsp4.label, "GSp_4");
    }

    #[test]
    fn so8_and_half_spin() {
        let so8 = build_named(Named::SO, 8).unwrap();
        assert_eq!(identify_isogeny(&so8).unwrap().label, "SO_8");
        let so10 = build_named(Named::SO, 10).unwrap();
        assert_eq!(identify_isogeny(&so10).unwrap().label, "SO_10");
    }

    #[test]
    fn json_round_trip() {
        let rd = build_named(Named::GSp, 6).unwrap();
        let back = RootDatum::from_json(&rd.to_json()).unwrap();
        assert_eq!(back, rd);
    }
}
