//! Covers of split tori over a tame `p`-adic field, modelled on
//! `F^x / (F^x)^n = Z/n x Z/n` generated by `p` and the least primitive root.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::covers::{lattice_yqn, CoverSpec, FormSpec, QuadraticForm};
use crate::error::{Error, Result};
use crate::json::{matrix_value, vec_value};
use crate::lattice::{automorphism_order, dot, fixed_sublattice, smith_normal_form, solve_congruence, IntMatrix, Lattice, Sublattice, ORDER_CAP};
use crate::localarith::{discrete_log, hilbert2, hilbert_n, hilbert_n_tame, is_prime, primitive_root, LocalElement, Place};
use crate::rootdata::{build_from_label, product, weyl_group, RootDatum};

pub const MODEL_CAP: u64 = 1_000_000;

/// Class `p^a u0^b` in `F^x / (F^x)^n`.
pub type Class = (u64, u64);

fn modn(x: &BigInt, n: u64) -> u64 {
    x.mod_floor(&BigInt::from(n)).to_u64().expect("residue")
}

#[derive(Clone, Debug)]
pub struct TorusCover {
    pub c: IntMatrix,
    pub form: QuadraticForm,
    pub n: u64,
    pub p: u64,
    pub sharp: bool,
    pub root: u64,
    c_mod: Vec<Vec<u64>>,
    symbols: Vec<u64>,
}

impl TorusCover {
    pub fn new(c: IntMatrix, n: u64, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Place(format!("{p} is not prime")));
        }
        if n == 0 || !(p - 1).is_multiple_of(n) {
            return Err(Error::Tame(format!("{n} does not divide {p} - 1")));
        }
        let form = QuadraticForm::new(c.clone())?;
        let r = form.rank();
        let full = solve_congruence(&form.gram(), &BigInt::from(n)) == Sublattice::full(r);
        let sharp = full && (n.is_multiple_of(2) || form.is_even());
        let c_mod = (0..r).map(|i| (0..r).map(|j| modn(c.get(i, j), n)).collect()).collect();
        let root = primitive_root(p);
        let mut cover = TorusCover { c, form, n, p, sharp, root, c_mod, symbols: vec![] };
        let nn = (n * n) as usize;
        let mut symbols = vec![0; nn * nn];
        for s in 0..nn {
            let x = cover.representative(cover.decode(s));
            for t in 0..nn {
                symbols[s * nn + t] = hilbert_n_tame(&x, &cover.representative(cover.decode(t)), n)?;
            }
        }
        cover.symbols = symbols;
        Ok(cover)
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    fn place(&self) -> Place {
        Place::Padic(self.p)
    }

    fn decode(&self, s: usize) -> Class {
        ((s as u64) / self.n, (s as u64) % self.n)
    }

    fn encode(&self, c: Class) -> usize {
        (c.0 * self.n + c.1) as usize
    }

    pub fn representative(&self, (a, b): Class) -> LocalElement {
        let unit = BigInt::from(self.root).modpow(&BigInt::from(b), &BigInt::from(self.p));
        LocalElement::from_parts(self.place(), a as i64, unit, 1).expect("unit")
    }

    pub fn class_of(&self, x: &LocalElement) -> Result<Class> {
        if x.place != self.place() {
            return Err(Error::Place(format!("element at {} on a cover at {}", x.place, self.p)));
        }
        let unit = modn(&x.unit, self.p);
        let b = discrete_log(unit, self.root, self.p) % self.n;
        Ok((x.valuation.rem_euclid(self.n as i64) as u64, b))
    }

    /// Tame symbol on classes.
    pub fn symbol(&self, s: Class, t: Class) -> u64 {
        let nn = (self.n * self.n) as usize;
        self.symbols[self.encode(s) * nn + self.encode(t)]
    }

    /// `theta_C` on the finite model.
    pub fn theta_classes(&self, t1: &[Class], t2: &[Class]) -> u64 {
        let mut acc = 0u64;
        for (i, &a) in t1.iter().enumerate() {
            for (j, &b) in t2.iter().enumerate() {
                acc += self.c_mod[i][j] * self.symbol(a, b);
            }
        }
        acc % self.n
    }

    pub fn classes_of(&self, t: &TorusElement) -> Result<Vec<Class>> {
        if t.coords.len() != self.rank() {
            return Err(Error::Dimension(format!("torus element of rank {} on a rank {} cover", t.coords.len(), self.rank())));
        }
        t.coords.iter().map(|x| self.class_of(x)).collect()
    }

    /// Classes of `u^y`.
    pub fn cocharacter_classes(&self, y: &[BigInt], u: &LocalElement) -> Result<Vec<Class>> {
        if y.len() != self.rank() {
            return Err(Error::Dimension("cocharacter has the wrong length".into()));
        }
        let (a, b) = self.class_of(u)?;
        Ok(y.iter().map(|k| (modn(&(k * a), self.n), modn(&(k * b), self.n))).collect())
    }

    pub fn multiply(&self, x: &ModelElement, y: &ModelElement) -> ModelElement {
        let n = self.n;
        let t = x.t.iter().zip(&y.t).map(|(a, b)| ((a.0 + b.0) % n, (a.1 + b.1) % n)).collect();
        let z = (x.z + y.z + self.theta_classes(&x.t, &y.t)) % n;
        ModelElement { t, z }
    }

    pub fn model_order(&self) -> Option<u64> {
        self.n.checked_pow(2 * self.rank() as u32 + 1)
    }

    fn element_at(&self, mut idx: u64) -> Vec<Class> {
        let nn = self.n * self.n;
        (0..self.rank())
            .map(|_| {
                let s = idx % nn;
                idx /= nn;
                self.decode(s as usize)
            })
            .collect()
    }

    fn index_of(&self, t: &[Class]) -> u64 {
        let nn = self.n * self.n;
        t.iter().rev().fold(0, |acc, &c| acc * nn + self.encode(c) as u64)
    }
}

/// Element of the finite extension: torus classes and a `mu_n` index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelElement {
    pub t: Vec<Class>,
    pub z: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    pub coords: Vec<LocalElement>,
}

impl TorusElement {
    pub fn new(coords: Vec<LocalElement>) -> Result<Self> {
        if let Some(first) = coords.first() {
            if let Some(bad) = coords.iter().find(|x| x.place != first.place) {
                return Err(Error::Place(format!("coordinates at {} and {}", first.place, bad.place)));
            }
        }
        Ok(TorusElement { coords })
    }
}

/// `sum_ij c_ij (x_i(t1), x_j(t2))_n`.
pub fn cocycle_theta(cover: &TorusCover, t1: &TorusElement, t2: &TorusElement) -> Result<u64> {
    let r = cover.rank();
    if t1.coords.len() != r || t2.coords.len() != r {
        return Err(Error::Dimension(format!("torus elements must have {r} coordinates")));
    }
    let n = BigInt::from(cover.n);
    let mut acc = BigInt::zero();
    for (i, a) in t1.coords.iter().enumerate() {
        for (j, b) in t2.coords.iter().enumerate() {
            if a.place != cover.place() || b.place != cover.place() {
                return Err(Error::Place(format!("coordinates must live at {}", cover.p)));
            }
            acc += cover.c.get(i, j) * BigInt::from(hilbert_n_tame(a, b, cover.n)?);
        }
    }
    Ok(modn(&acc, n.to_u64().expect("small")))
}

/// Commutator of `u^{y1}` and `v^{y2}`, checked against `B(y1, y2) (u, v)_n`.
pub fn commutator(cover: &TorusCover, y1: &[BigInt], u: &LocalElement, y2: &[BigInt], v: &LocalElement) -> Result<u64> {
    let t1 = cover.cocharacter_classes(y1, u)?;
    let t2 = cover.cocharacter_classes(y2, v)?;
    let n = cover.n;
    let diff = (cover.theta_classes(&t1, &t2) + n - cover.theta_classes(&t2, &t1)) % n;
    let expected = modn(&(cover.form.bilinear(y1, y2) * BigInt::from(hilbert_n_tame(u, v, n)?)), n);
    if diff != expected {
        return Err(Error::Domain(format!("commutator {diff} differs from B(y1,y2)(u,v) = {expected}")));
    }
    Ok(diff)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterReport {
    pub group_order: u64,
    pub center_order: u64,
    pub predicted_order: u64,
    pub abelian: bool,
    pub agrees: bool,
    pub yqn: Sublattice,
}

impl CenterReport {
    pub fn to_json(&self) -> Value {
        json!({
            "group_order": self.group_order,
            "center_order": self.center_order,
            "predicted_order": self.predicted_order,
            "abelian": self.abelian,
            "agrees": self.agrees,
            "yqn_basis": self.yqn.basis_vectors().iter().map(|v| vec_value(v)).collect::<Vec<_>>(),
        })
    }
}

/// Center of the finite extension, found by testing every element against the
/// generators `p e_i`, `u0 e_i`, and compared with `mu_n` times the classes `u^y`, `y in Y_{Q,n}`.
pub fn center_of_cover(cover: &TorusCover) -> Result<CenterReport> {
    let order = cover.model_order().filter(|&o| o <= MODEL_CAP).ok_or_else(|| {
        Error::ModelSize(format!("n^(2r+1) = {}^{} exceeds {MODEL_CAP}", cover.n, 2 * cover.rank() + 1))
    })?;
    let r = cover.rank();
    let n = cover.n;
    let count = order / n;
    let gens: Vec<Vec<Class>> = (0..r)
        .flat_map(|i| {
            [(1, 0), (0, 1)].into_iter().map(move |c| (0..r).map(|k| if k == i { c } else { (0, 0) }).collect())
        })
        .collect();
    let center: HashSet<u64> = (0..count)
        .into_par_iter()
        .filter(|&idx| {
            let t = cover.element_at(idx);
            gens.iter().all(|s| cover.theta_classes(&t, s) == cover.theta_classes(s, &t))
        })
        .collect();

    let yqn = solve_congruence(&cover.form.gram(), &BigInt::from(n));
    let mut gens_pred: Vec<Vec<Class>> = Vec::new();
    for y in yqn.basis_vectors() {
        for u in [(1u64, 0u64), (0, 1)] {
            gens_pred.push(y.iter().map(|k| (modn(&(k * u.0), n), modn(&(k * u.1), n))).collect());
        }
    }
    let zero: Vec<Class> = vec![(0, 0); r];
    let mut predicted: HashSet<u64> = HashSet::from([cover.index_of(&zero)]);
    let mut frontier = vec![zero];
    while let Some(t) = frontier.pop() {
        for g in &gens_pred {
            let s: Vec<Class> = t.iter().zip(g).map(|(a, b)| ((a.0 + b.0) % n, (a.1 + b.1) % n)).collect();
            if predicted.insert(cover.index_of(&s)) {
                frontier.push(s);
            }
        }
    }
    Ok(CenterReport {
        group_order: order,
        center_order: center.len() as u64 * n,
        predicted_order: predicted.len() as u64 * n,
        abelian: center.len() as u64 == count,
        agrees: center == predicted,
        yqn,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSharpReport {
    pub lhs: Vec<u64>,
    pub rhs: Vec<u64>,
    pub equal: bool,
    pub basis_invariant: Option<bool>,
}

impl ThetaSharpReport {
    pub fn to_json(&self) -> Value {
        json!({ "lhs": self.lhs, "rhs": self.rhs, "equal": self.equal, "basis_invariant": self.basis_invariant })
    }
}

/// `(u,v)_n^{Q(y_i)}` against `tau_Q((u,v)_2)`, both as `mu_n` indices per basis vector.
/// With `g`, also checks that the left side is the same character in the basis `g^{-1} e_i`.
pub fn theta_sharp_compare(cover: &TorusCover, u: &LocalElement, v: &LocalElement, g: Option<&IntMatrix>) -> Result<ThetaSharpReport> {
    if !cover.sharp {
        return Err(Error::Cover("cover is not sharp".into()));
    }
    let n = cover.n;
    let r = cover.rank();
    let h = hilbert_n_tame(u, v, n)?;
    let minus = hilbert2(u, v)? == -1;
    let q_at = |y: &[BigInt]| modn(&cover.form.eval(y), n);
    let unit = |i: usize| (0..r).map(|k| BigInt::from(u8::from(k == i))).collect::<Vec<_>>();
    let lhs: Vec<u64> = (0..r).map(|i| q_at(&unit(i)) * h % n).collect();
    let rhs: Vec<u64> = (0..r).map(|i| if minus { q_at(&unit(i)) } else { 0 }).collect();
    let basis_invariant = match g {
        None => None,
        Some(g) => {
            if !g.is_square() || g.rows() != r {
                return Err(Error::Dimension("basis change has the wrong size".into()));
            }
            let pm = g.inverse_unimodular()?;
            let lhs_big: Vec<BigInt> = lhs.iter().map(|&x| BigInt::from(x)).collect();
            Some((0..r).all(|i| {
                let col = pm.column(i);
                modn(&dot(&col, &lhs_big), n) == q_at(&col) * h % n
            }))
        }
    };
    Ok(ThetaSharpReport { equal: lhs == rhs, lhs, rhs, basis_invariant })
}

/// `C` in the basis with `x'_i = sum_j g_ij x_j`.
pub fn transport_incarnation(c: &IntMatrix, g: &IntMatrix) -> Result<IntMatrix> {
    if !g.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    if c.rows() != g.rows() || !c.is_square() {
        return Err(Error::Dimension("incarnation and basis change differ in size".into()));
    }
    let gi = g.inverse_unimodular()?;
    gi.transpose().mul(c)?.mul(&gi)
}

/// `e_j = sum_i c'_ii g_ij (g_ij - 1)/2 + sum_{k<l} c'_kl g_kj g_lj mod 2`.
pub fn basis_change_exponents(c: &IntMatrix, g: &IntMatrix) -> Result<Vec<u8>> {
    let cp = transport_incarnation(c, g)?;
    let r = g.rows();
    let two = BigInt::from(2);
    Ok((0..r)
        .map(|j| {
            let mut e = BigInt::zero();
            for i in 0..r {
                let gij = g.get(i, j);
                e += cp.get(i, i) * (gij * (gij - 1u8) / &two);
            }
            for k in 0..r {
                for l in k + 1..r {
                    e += cp.get(k, l) * g.get(k, j) * g.get(l, j);
                }
            }
            e.mod_floor(&two).to_u8().expect("bit")
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChangeTwist {
    pub c_prime: IntMatrix,
    pub exponents: Vec<u8>,
    /// `(u, u)_n` as a `mu_n` index.
    pub chi: u64,
    /// `chi^{e_j}` for each `j`.
    pub twist: Vec<u64>,
    pub involutive: bool,
}

impl BasisChangeTwist {
    pub fn to_json(&self) -> Value {
        json!({
            "c_prime": matrix_value(&self.c_prime),
            "exponents": self.exponents,
            "chi": self.chi,
            "twist": self.twist,
            "involutive": self.involutive,
        })
    }
}

pub fn basis_change_twist(c: &IntMatrix, g: &IntMatrix, u: &LocalElement, n: u64) -> Result<BasisChangeTwist> {
    let exponents = basis_change_exponents(c, g)?;
    let chi = hilbert_n(u, u, n)?;
    let twist: Vec<u64> = exponents.iter().map(|&e| u64::from(e) * chi % n).collect();
    let involutive = twist.iter().all(|t| 2 * t % n == 0);
    Ok(BasisChangeTwist { c_prime: transport_incarnation(c, g)?, exponents, chi, twist, involutive })
}

/// Frobenius actions used for the unramified transfer checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobeniusCase {
    /// `SL_2 x SL_2`, trivial action.
    Trivial,
    /// `SL_2 x SL_2`, factors swapped.
    Swap,
    /// `SL_3` with the diagram automorphism.
    UnitaryA2,
}

impl FrobeniusCase {
    pub const ALL: [FrobeniusCase; 3] = [FrobeniusCase::Trivial, FrobeniusCase::Swap, FrobeniusCase::UnitaryA2];

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "trivial" => Ok(FrobeniusCase::Trivial),
            "swap" => Ok(FrobeniusCase::Swap),
            "su3" | "unitary" | "a2" => Ok(FrobeniusCase::UnitaryA2),
            _ => Err(Error::Parse(format!("unknown Frobenius case {s:?} (trivial, swap, su3)"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FrobeniusCase::Trivial => "trivial",
            FrobeniusCase::Swap => "swap",
            FrobeniusCase::UnitaryA2 => "su3",
        }
    }

    pub fn cover(self, n: u64) -> Result<CoverSpec> {
        let rd = match self {
            FrobeniusCase::Trivial | FrobeniusCase::Swap => {
                let sl2 = build_from_label("SL_2")?;
                let rd = product(&sl2, &sl2);
                if self == FrobeniusCase::Swap {
                    let f = swap_on_coroots(&rd)?;
                    rd.with_galois(f)?
                } else {
                    rd
                }
            }
            FrobeniusCase::UnitaryA2 => {
                let rd = build_from_label("SL_3")?;
                let f = swap_on_coroots(&rd)?;
                rd.with_galois(f)?
            }
        };
        let form = crate::covers::weyl_invariant_form(&rd, &FormSpec::ShortCoroot(BigInt::from(1)))?;
        CoverSpec::new(rd, form, n)
    }
}

/// The automorphism of Y exchanging the first two simple coroots.
fn swap_on_coroots(rd: &RootDatum) -> Result<IntMatrix> {
    let k = IntMatrix::from_columns(rd.x_rank, &rd.simple_coroots())?;
    let s = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
    k.mul(&s)?.mul(&k.inverse_unimodular()?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferRow {
    pub target: Vec<u64>,
    pub preimages: usize,
    pub classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTransferReport {
    pub m: u64,
    pub m_prime: u64,
    pub frobenius_order: usize,
    pub fixed_rank: usize,
    pub target_orbits: usize,
    pub source_orbits: usize,
    pub matched: usize,
    pub inconclusive: usize,
    pub non_injective: usize,
    pub rows: Vec<TransferRow>,
}

impl OrbitTransferReport {
    pub fn bijective(&self) -> bool {
        self.inconclusive == 0 && self.non_injective == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "m_prime": self.m_prime,
            "frobenius_order": self.frobenius_order,
            "fixed_rank": self.fixed_rank,
            "target_orbits": self.target_orbits,
            "source_orbits": self.source_orbits,
            "matched": self.matched,
            "inconclusive": self.inconclusive,
            "non_injective": self.non_injective,
            "bijective": self.bijective(),
            "rows": self.rows.iter().map(|r| json!({
                "target": r.target, "preimages": r.preimages, "classes": r.classes
            })).collect::<Vec<_>>(),
        })
    }
}

fn all_vectors(len: usize, modulus: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = modulus.pow(len as u32);
    (0..total).map(move |mut idx| {
        (0..len)
            .map(|_| {
                let d = idx % modulus;
                idx /= modulus;
                d
            })
            .collect()
    })
}

fn act_mod(w: &IntMatrix, v: &[u64], modulus: u64) -> Vec<u64> {
    (0..w.cols())
        .map(|j| {
            let s: BigInt = (0..w.rows()).map(|i| w.get(i, j) * BigInt::from(v[i])).sum();
            modn(&s, modulus)
        })
        .collect()
}

/// Checks that restriction to `Y_{Q,n}^Fr` induces a bijection from `W^Fr`-orbits of
/// Frobenius-twisted classes of characters of `Y_{Q,n}` to `W^Fr`-orbits of characters of
/// `Y_{Q,n}^Fr`, with targets of order dividing `m` and sources of order dividing `m'`.
pub fn unramified_orbit_transfer(cs: &CoverSpec, m: u64, m_prime: Option<u64>) -> Result<OrbitTransferReport> {
    if m == 0 {
        return Err(Error::Domain("denominator must be positive".into()));
    }
    let r = cs.rank();
    let f_y = cs.rd.galois.clone().unwrap_or_else(|| IntMatrix::identity(r));
    let order = automorphism_order(&f_y, ORDER_CAP)?;
    let m_prime = m_prime.unwrap_or(m * order as u64);
    let (yqn, _) = lattice_yqn(cs);
    let basis = yqn.basis();
    let to_qn = |a: &IntMatrix| -> Result<IntMatrix> {
        let cols: Vec<Vec<BigInt>> = yqn
            .basis_vectors()
            .iter()
            .map(|v| {
                yqn.coordinates(&a.mul_vec(v)?)
                    .ok_or_else(|| Error::Cover("automorphism does not preserve Y_Q,n".into()))
            })
            .collect::<Result<_>>()?;
        IntMatrix::from_columns(basis.cols(), &cols)
    };
    let f = to_qn(&f_y)?;
    let s = basis.cols();
    let w_fr: Vec<IntMatrix> = weyl_group(&cs.rd)?
        .into_iter()
        .filter(|w| w.mul(&f_y).ok() == f_y.mul(w).ok())
        .map(|w| to_qn(&w))
        .collect::<Result<_>>()?;

    let fixed = fixed_sublattice(&Lattice::new(s), &f)?;
    let k = fixed.basis();
    let t = fixed.rank();
    // W^Fr on Y^Fr, in the basis of Y^Fr.
    let w_fixed: Vec<IntMatrix> = w_fr
        .iter()
        .map(|w| {
            let cols: Vec<Vec<BigInt>> = fixed
                .basis_vectors()
                .iter()
                .map(|v| fixed.coordinates(&w.mul_vec(v).expect("shape")).expect("W^Fr preserves Y^Fr"))
                .collect();
            IntMatrix::from_columns(t, &cols)
        })
        .collect::<Result<_>>()?;

    // psi - w psi' in (F^T - 1) Q^s + Z^s, tested through a Smith form.
    let a = f.transpose().sub(&IntMatrix::identity(s))?;
    let snf = smith_normal_form(&a);
    let rank = snf.rank();
    let equivalent = |x: &[u64], y: &[u64]| -> bool {
        w_fr.iter().any(|w| {
            let wy = act_mod(w, y, m_prime);
            let delta: Vec<BigInt> = x.iter().zip(&wy).map(|(a, b)| BigInt::from(*a) - BigInt::from(*b)).collect();
            let ud = snf.u.mul_vec(&delta).expect("shape");
            ud[rank..].iter().all(|v| modn(v, m_prime) == 0)
        })
    };

    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut rows = Vec::new();
    let sources: Vec<Vec<u64>> = all_vectors(s, m_prime).collect();
    for chi in all_vectors(t, m) {
        if seen.contains(&chi) {
            continue;
        }
        for w in &w_fixed {
            seen.insert(act_mod(w, &chi, m));
        }
        let pre: Vec<&Vec<u64>> = sources
            .iter()
            .filter(|psi| {
                (0..t).all(|c| {
                    let val: BigInt = (0..s).map(|i| k.get(i, c) * BigInt::from(psi[i])).sum();
                    (val * BigInt::from(m) - BigInt::from(chi[c] * m_prime)).mod_floor(&BigInt::from(m * m_prime)).is_zero()
                })
            })
            .collect();
        let mut reps: Vec<&Vec<u64>> = Vec::new();
        for psi in &pre {
            if !reps.iter().any(|r| equivalent(r, psi)) {
                reps.push(psi);
            }
        }
        rows.push(TransferRow { target: chi, preimages: pre.len(), classes: reps.len() });
    }
    Ok(OrbitTransferReport {
        m,
        m_prime,
        frobenius_order: order,
        fixed_rank: t,
        target_orbits: rows.len(),
        source_orbits: rows.iter().map(|r| r.classes).sum(),
        matched: rows.iter().filter(|r| r.classes == 1).count(),
        inconclusive: rows.iter().filter(|r| r.preimages == 0).count(),
        non_injective: rows.iter().filter(|r| r.classes > 1).count(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::bvec;

    fn el(p: u64, x: i64) -> LocalElement {
        LocalElement::from_int(Place::Padic(p), x).unwrap()
    }

    #[test]
    fn theta_examples() {
        let cover = TorusCover::new(IntMatrix::from_i64(1, 1, &[1]), 2, 5).unwrap();
        let t = |x| TorusElement::new(vec![el(5, x)]).unwrap();
        assert_eq!(cocycle_theta(&cover, &t(5), &t(5)).unwrap(), 0);
        assert_eq!(cocycle_theta(&cover, &t(1), &t(5)).unwrap(), 0);
        assert_eq!(cocycle_theta(&cover, &t(2), &t(3)).unwrap(), 0);
        assert_eq!(cocycle_theta(&cover, &t(5), &t(2)).unwrap(), 1);
    }

    #[test]
    fn commutators() {
        let c3 = TorusCover::new(IntMatrix::from_i64(1, 1, &[1]), 3, 7).unwrap();
        assert_eq!(commutator(&c3, &bvec(&[1]), &el(7, 7), &bvec(&[1]), &el(7, 7)).unwrap(), 0);
        let c2 = TorusCover::new(IntMatrix::identity(2), 2, 5).unwrap();
        assert_eq!(commutator(&c2, &bvec(&[1, 0]), &el(5, 5), &bvec(&[0, 1]), &el(5, 2)).unwrap(), 0);
        assert_eq!(commutator(&c3, &bvec(&[1]), &el(7, 7), &bvec(&[1]), &el(7, 3)).unwrap(), 1);
    }

    #[test]
    fn centers() {
        let c2 = TorusCover::new(IntMatrix::from_i64(1, 1, &[1]), 2, 5).unwrap();
        let rep = center_of_cover(&c2).unwrap();
        assert_eq!((rep.group_order, rep.center_order, rep.abelian, rep.agrees), (8, 8, true, true));
        let c3 = TorusCover::new(IntMatrix::from_i64(1, 1, &[1]), 3, 7).unwrap();
        let rep = center_of_cover(&c3).unwrap();
        assert_eq!((rep.group_order, rep.center_order, rep.agrees), (27, 3, true));
    }

    #[test]
    fn sharp_symbols() {
        let cover = TorusCover::new(IntMatrix::from_i64(1, 1, &[1]), 2, 5).unwrap();
        assert!(cover.sharp);
        let rep = theta_sharp_compare(&cover, &el(5, 5), &el(5, 5), None).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (vec![0], vec![0]));
        let rep = theta_sharp_compare(&cover, &el(5, 5), &el(5, 2), Some(&IntMatrix::from_i64(1, 1, &[-1]))).unwrap();
        assert_eq!((rep.lhs.clone(), rep.equal, rep.basis_invariant), (vec![1], true, Some(true)));
    }

    #[test]
    fn basis_change_examples() {
        let c = IntMatrix::from_i64(1, 1, &[3]);
        assert_eq!(basis_change_exponents(&c, &IntMatrix::identity(1)).unwrap(), vec![0]);
        assert_eq!(basis_change_exponents(&c, &IntMatrix::from_i64(1, 1, &[-1])).unwrap(), vec![1]);
        let tw = basis_change_twist(&c, &IntMatrix::from_i64(1, 1, &[-1]), &el(5, -1), 2).unwrap();
        assert_eq!((tw.chi, tw.twist.clone(), tw.involutive), (0, vec![0], true));
        let tw = basis_change_twist(&c, &IntMatrix::from_i64(1, 1, &[-1]), &el(7, 7), 2).unwrap();
        assert_eq!((tw.chi, tw.twist, tw.involutive), (1, vec![1], true));
    }

    #[test]
    fn transfer_cases() {
        for case in FrobeniusCase::ALL {
            let cs = case.cover(2).unwrap();
            for m in 1..=4 {
                let rep = unramified_orbit_transfer(&cs, m, Some(2 * m)).unwrap();
                assert!(rep.bijective(), "{} m={m}: {rep:?}", case.name());
            }
        }
    }
}
