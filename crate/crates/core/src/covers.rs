//! Dual groups of degree-`n` covers: `Y_{Q,n}`, the modified root datum, the center and `tau_Q(-1)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{dot, fixed_sublattice, solve_congruence, FiniteAbelianGroup, IntMatrix, Lattice, Sublattice};
use crate::rootdata::{build_from_label, identify_isogeny, validate, IsogenyName, RootDatum};

/// Integer quadratic form `Q(y) = y^T C y` on `Y`, stored through an incarnation `C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    pub c: IntMatrix,
}

impl QuadraticForm {
    pub fn new(c: IntMatrix) -> Result<Self> {
        if !c.is_square() {
            return Err(Error::Form("incarnation must be square".into()));
        }
        Ok(QuadraticForm { c })
    }

    /// Upper-triangular incarnation of an even symmetric Gram matrix.
    pub fn from_gram(b: &IntMatrix) -> Result<Self> {
        if !b.is_square() || b.transpose() != *b {
            return Err(Error::Form("Gram matrix must be square and symmetric".into()));
        }
        let r = b.rows();
        let mut c = IntMatrix::zeros(r, r);
        for i in 0..r {
            let (h, rem) = b.get(i, i).div_rem(&BigInt::from(2));
            if !rem.is_zero() {
                return Err(Error::Form(format!("odd diagonal entry {} at {i}", b.get(i, i))));
            }
            c.set(i, i, h);
            for j in i + 1..r {
                c.set(i, j, b.get(i, j).clone());
            }
        }
        Ok(QuadraticForm { c })
    }

    pub fn rank(&self) -> usize {
        self.c.rows()
    }

    pub fn eval(&self, y: &[BigInt]) -> BigInt {
        dot(y, &self.c.mul_vec(y).expect("vector of form rank"))
    }

    /// `B = C + C^T`.
    pub fn gram(&self) -> IntMatrix {
        self.c.add(&self.c.transpose()).expect("square")
    }

    pub fn bilinear(&self, y1: &[BigInt], y2: &[BigInt]) -> BigInt {
        dot(y1, &self.gram().mul_vec(y2).expect("vector of form rank"))
    }

    /// `beta_Q = B / n`.
    pub fn beta(&self, n: &BigInt) -> Vec<Vec<BigRational>> {
        self.gram()
            .row_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(|x| BigRational::new(x, n.clone())).collect())
            .collect()
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        QuadraticForm { c: self.c.scale(k) }
    }

    /// Pullback along `y -> g y`.
    pub fn pullback(&self, g: &IntMatrix) -> Result<Self> {
        Ok(QuadraticForm { c: g.transpose().mul(&self.c)?.mul(g)? })
    }

    /// Even-valued iff every `Q(e_k)` and every `B(e_k, e_l)` is even.
    pub fn is_even(&self) -> bool {
        let b = self.gram();
        let r = self.rank();
        let two = BigInt::from(2);
        (0..r).all(|k| self.c.get(k, k).is_even())
            && (0..r).all(|k| (0..r).all(|l| k == l || (b.get(k, l) % &two).is_zero()))
    }
}

/// How to choose a Weyl-invariant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSpec {
    /// Value `t` on the short coroots of every simple factor (all coroots when simply laced).
    ShortCoroot(BigInt),
    /// `Q(e_1 - e_2) = q`, `Q(e_1) = 1 + c` on `GL_r`.
    GL { q: BigInt, c: BigInt },
    /// `Q(e_0) = kappa`, `Q(e_i) = nu` on `GSp_{2r}`.
    GSp { kappa: BigInt, nu: BigInt },
    Explicit(IntMatrix),
}

fn rat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let k = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..cols).map(|j| (0..k).map(|t| &row[t] * &b[t][j]).sum()).collect())
        .collect()
}

fn rat_transpose(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// `Q(alpha_i^vee)` for the simple coroots, scaled so the minimum on each component is `t`.
pub fn short_coroot_values(rd: &RootDatum, t: &BigInt) -> Result<Vec<BigInt>> {
    let a = rd.cartan();
    let l = a.len();
    let mut q: Vec<Option<BigRational>> = vec![None; l];
    for start in 0..l {
        if q[start].is_some() {
            continue;
        }
        q[start] = Some(BigRational::one());
        let mut comp = vec![start];
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            k += 1;
            for j in 0..l {
                if j == i || a[i][j].is_zero() {
                    continue;
                }
                let qi = q[i].clone().expect("visited");
                let qj = qi * BigRational::new(a[i][j].clone(), a[j][i].clone());
                match &q[j] {
                    None => {
                        q[j] = Some(qj);
                        comp.push(j);
                    }
                    Some(old) if *old != qj => {
                        return Err(Error::Form("Cartan matrix is not symmetrizable".into()));
                    }
                    _ => {}
                }
            }
        }
        let min = comp.iter().map(|&i| q[i].clone().expect("visited")).min().expect("non-empty");
        for &i in &comp {
            q[i] = Some(q[i].clone().expect("visited") / &min * BigRational::from_integer(t.clone()));
        }
    }
    q.into_iter()
        .map(|x| {
            let x = x.expect("all visited");
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::Form(format!("non-integral coroot value {x}")))
            }
        })
        .collect()
}

/// Weyl-invariant form from a specification; the result is checked for invariance.
pub fn weyl_invariant_form(rd: &RootDatum, spec: &FormSpec) -> Result<QuadraticForm> {
    let r = rd.x_rank;
    let form = match spec {
        FormSpec::ShortCoroot(t) => {
            if rd.semisimple_rank() != r {
                return Err(Error::Form("short-coroot normalization needs a semisimple datum".into()));
            }
            let qv = short_coroot_values(rd, t)?;
            let a = rd.cartan();
            let bcor: Vec<Vec<BigRational>> =
                (0..r).map(|i| (0..r).map(|j| BigRational::from_integer(&qv[i] * &a[i][j])).collect()).collect();
            let k = IntMatrix::from_columns(r, &rd.simple_coroots())?;
            let kinv = k.inverse_rational().ok_or_else(|| Error::Form("coroots are dependent".into()))?;
            let g = rat_mul(&rat_transpose(&kinv), &rat_mul(&bcor, &kinv));
            let mut b = IntMatrix::zeros(r, r);
            for (i, row) in g.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if !x.is_integer() {
                        return Err(Error::Form(format!("no integral extension: B[{i}][{j}] = {x}")));
                    }
                    b.set(i, j, x.to_integer());
                }
            }
            QuadraticForm::from_gram(&b)?
        }
        FormSpec::GL { q, c } => {
            let d = BigInt::from(2) * (BigInt::one() + c);
            let off = &d - q;
            let mut b = IntMatrix::zeros(r, r);
            for i in 0..r {
                for j in 0..r {
                    b.set(i, j, if i == j { d.clone() } else { off.clone() });
                }
            }
            QuadraticForm::from_gram(&b)?
        }
        FormSpec::GSp { kappa, nu } => {
            if r < 2 {
                return Err(Error::Form("GSp form needs rank at least 2".into()));
            }
            let mut b = IntMatrix::zeros(r, r);
            b.set(0, 0, BigInt::from(2) * kappa);
            for j in 1..r {
                b.set(0, j, -nu);
                b.set(j, 0, -nu);
                b.set(j, j, BigInt::from(2) * nu);
            }
            QuadraticForm::from_gram(&b)?
        }
        FormSpec::Explicit(c) => {
            if c.rows() != r || c.cols() != r {
                return Err(Error::Form(format!("incarnation must be {r}x{r}")));
            }
            QuadraticForm::new(c.clone())?
        }
    };
    check_invariance(rd, &form)?;
    Ok(form)
}

/// Weyl invariance under simple reflections, and Galois invariance when an action is present.
pub fn check_invariance(rd: &RootDatum, form: &QuadraticForm) -> Result<()> {
    if form.rank() != rd.x_rank {
        return Err(Error::Form("form rank differs from lattice rank".into()));
    }
    let b = form.gram();
    let r = rd.x_rank;
    let check = |g: &IntMatrix, what: &str| -> Result<()> {
        for k in 0..r {
            let e = g.column(k);
            let mut unit = vec![BigInt::zero(); r];
            unit[k] = BigInt::one();
            if form.eval(&e) != form.eval(&unit) {
                return Err(Error::Form(format!("not {what}-invariant: Q(e_{k}) = {} but Q(g e_{k}) = {}", form.eval(&unit), form.eval(&e))));
            }
        }
        let gb = g.transpose().mul(&b)?.mul(g)?;
        if gb != b {
            return Err(Error::Form(format!("not {what}-invariant: B changes to {gb}")));
        }
        Ok(())
    };
    for &s in &rd.simple {
        check(&rd.reflection_y(s), "Weyl")?;
    }
    if let Some(g) = &rd.galois {
        check(g, "Galois")?;
    }
    Ok(())
}

/// A root datum, an invariant form and a degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    pub rd: RootDatum,
    pub form: QuadraticForm,
    pub n: BigInt,
    /// Set when `Q` was replaced by `(n+1)Q` to make it even for odd `n`.
    pub normalized: bool,
}

impl CoverSpec {
    pub fn new(rd: RootDatum, form: QuadraticForm, n: impl Into<BigInt>) -> Result<Self> {
        Self::build(rd, form, n.into(), false)
    }

    /// Like [`CoverSpec::new`] but refuses to normalize.
    pub fn strict(rd: RootDatum, form: QuadraticForm, n: impl Into<BigInt>) -> Result<Self> {
        Self::build(rd, form, n.into(), true)
    }

    fn build(rd: RootDatum, form: QuadraticForm, n: BigInt, strict: bool) -> Result<Self> {
        if !n.is_positive() {
            return Err(Error::Cover(format!("degree must be positive, got {n}")));
        }
        check_invariance(&rd, &form)?;
        if n.is_odd() && !form.is_even() {
            if strict {
                return Err(Error::Cover(format!("odd degree {n} with a form taking odd values")));
            }
            let k = &n + 1;
            return Ok(CoverSpec { rd, form: form.scaled(&k), n, normalized: true });
        }
        Ok(CoverSpec { rd, form, n, normalized: false })
    }

    pub fn rank(&self) -> usize {
        self.rd.x_rank
    }
}

/// `(n_phi, m_phi)` for a coroot with `Q(phi^vee) = q`.
pub fn modified_constants(q: &BigInt, n: &BigInt) -> (BigInt, BigInt) {
    let g = if q.is_zero() { n.clone() } else { q.gcd(n) };
    (n / &g, q / &g)
}

/// `Y_{Q,n}` and `n X_{Q,n}`, both as sublattices of `Z^r`.
pub fn lattice_yqn(cs: &CoverSpec) -> (Sublattice, Sublattice) {
    let y = solve_congruence(&cs.form.gram(), &cs.n);
    let nx = solve_congruence(&y.basis().transpose(), &cs.n);
    (y, nx)
}

fn box_points(r: usize, radius: i64) -> impl Iterator<Item = Vec<BigInt>> {
    let side = (2 * radius + 1) as u64;
    let total = side.checked_pow(r as u32).unwrap_or(u64::MAX);
    (0..total).map(move |mut idx| {
        (0..r)
            .map(|_| {
                let d = (idx % side) as i64;
                idx /= side;
                BigInt::from(d - radius)
            })
            .collect()
    })
}

/// Compares three membership tests for `Y_{Q,n}` on a box: the congruence lattice,
/// `B y = 0 mod n` directly, and `<alpha_i, y> in n_i Z`. Returns the first disagreement.
pub fn sc_characterization_check(cs: &CoverSpec, radius: i64) -> Result<Option<Vec<BigInt>>> {
    let r = cs.rank();
    let rd = &cs.rd;
    let coroots = Sublattice::from_generators(r, &rd.simple_coroots())?;
    if coroots != Sublattice::full(r) {
        return Err(Error::Cover("characterization needs a simply connected datum".into()));
    }
    let (y, _) = lattice_yqn(cs);
    let b = cs.form.gram();
    let ns: Vec<BigInt> =
        rd.simple.iter().map(|&s| modified_constants(&cs.form.eval(&rd.coroots[s]), &cs.n).0).collect();
    let simple = rd.simple_roots();
    for v in box_points(r, radius) {
        let lattice = y.contains(&v);
        let direct = b.mul_vec(&v)?.iter().all(|x| (x % &cs.n).is_zero());
        let roots = simple.iter().zip(&ns).all(|(a, ni)| (dot(a, &v) % ni).is_zero());
        if lattice != direct || direct != roots {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// The dual datum of the cover: characters `Y_{Q,n}`, roots `n_phi phi^vee`,
/// coroots `phi / n_phi`, in coordinates of the canonical basis of `Y_{Q,n}` and its dual.
pub fn modified_root_datum(cs: &CoverSpec) -> Result<RootDatum> {
    let rd = &cs.rd;
    let (y, _) = lattice_yqn(cs);
    let basis = y.basis_vectors().to_vec();
    let mut roots = Vec::with_capacity(rd.roots.len());
    let mut coroots = Vec::with_capacity(rd.roots.len());
    for (phi, phiv) in rd.roots.iter().zip(&rd.coroots) {
        let (nphi, _) = modified_constants(&cs.form.eval(phiv), &cs.n);
        let scaled: Vec<BigInt> = phiv.iter().map(|x| x * &nphi).collect();
        let coords = y
            .coordinates(&scaled)
            .ok_or_else(|| Error::Cover(format!("n_phi phi^vee = {scaled:?} lies outside Y_Q,n")))?;
        roots.push(coords);
        let mut co = Vec::with_capacity(basis.len());
        for m in &basis {
            let (q, rem) = dot(phi, m).div_rem(&nphi);
            if !rem.is_zero() {
                return Err(Error::Cover("phi / n_phi does not pair integrally with Y_Q,n".into()));
            }
            co.push(q);
        }
        coroots.push(co);
    }
    let galois = match &rd.galois {
        None => None,
        Some(g) => {
            let cols: Vec<Vec<BigInt>> = basis
                .iter()
                .map(|m| {
                    y.coordinates(&g.mul_vec(m).expect("shape"))
                        .ok_or_else(|| Error::Cover("Galois action does not preserve Y_Q,n".into()))
                })
                .collect::<Result<_>>()?;
            let gm = IntMatrix::from_columns(basis.len(), &cols)?;
            Some(gm.inverse_unimodular()?.transpose())
        }
    };
    let out = RootDatum {
        family: format!("modified({}, n={})", rd.family, cs.n),
        x_rank: basis.len(),
        roots,
        coroots,
        simple: rd.simple.clone(),
        galois,
    };
    validate(&out).map_err(|v| Error::Cover(format!("modified datum is invalid: {v}")))?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGroupReport {
    pub modified: RootDatum,
    pub name: IsogenyName,
    pub center: FiniteAbelianGroup,
    pub tau_trivial: bool,
    /// `Q(m_i)/n mod 1` on the canonical basis `m_i` of `Y_{Q,n}`; each value is 0 or 1/2.
    pub tau_element: Vec<BigRational>,
    pub yqn: Sublattice,
    pub n: BigInt,
    pub normalized: bool,
}

impl DualGroupReport {
    /// Label with a leading `*` when `tau_Q(-1)` is nontrivial.
    pub fn cell(&self) -> String {
        if self.tau_trivial {
            self.name.label.clone()
        } else {
            format!("*{}", self.name.label)
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.name.label,
            "cartan_type": self.name.cartan_type,
            "n": crate::json::int_value(&self.n),
            "center": self.center.to_json(),
            "tau_trivial": self.tau_trivial,
            "tau_element": self.tau_element.iter().map(crate::json::rational_value).collect::<Vec<_>>(),
            "normalized": self.normalized,
            "Y_Qn": self.yqn.basis_vectors().iter().map(|v| crate::json::vec_value(v)).collect::<Vec<_>>(),
            "modified": self.modified.to_json(),
        })
    }
}

impl fmt::Display for DualGroupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tau = if self.tau_trivial { "trivial" } else { "nontrivial" };
        write!(f, "{}, center {}, tau: {tau}", self.name.label, self.center)
    }
}

fn frac_part(x: BigRational) -> BigRational {
    let f = x.floor();
    x - f
}

pub fn center_and_tau(cs: &CoverSpec) -> Result<DualGroupReport> {
    let modified = modified_root_datum(cs)?;
    let (y, _) = lattice_yqn(cs);
    let n = &cs.n;
    for (k, phiv) in cs.rd.coroots.iter().enumerate() {
        let (nphi, _) = modified_constants(&cs.form.eval(phiv), n);
        let v: Vec<BigInt> = phiv.iter().map(|x| x * &nphi).collect();
        if !(cs.form.eval(&v) % n).is_zero() {
            return Err(Error::Cover(format!("Q of modified coroot {k} is not divisible by n")));
        }
    }
    let mut tau_element = Vec::with_capacity(y.rank());
    for m in y.basis_vectors() {
        let q = cs.form.eval(m);
        if !((&q * BigInt::from(2)) % n).is_zero() {
            return Err(Error::Cover("2Q(y) not divisible by n on Y_Q,n".into()));
        }
        tau_element.push(frac_part(BigRational::new(q, n.clone())));
    }
    let name = identify_isogeny(&modified)?;
    let tau_trivial = tau_element.iter().all(|t| t.is_zero());
    Ok(DualGroupReport {
        center: name.center.clone(),
        modified,
        name,
        tau_trivial,
        tau_element,
        yqn: y,
        n: n.clone(),
        normalized: cs.normalized,
    })
}

/// `true` iff `Q = Q_0 mod n` on basis values and cross terms; in that case the
/// modified data are compared and a mismatch is reported as an error.
pub fn check_mod_n_equivalence(rd: &RootDatum, q: &QuadraticForm, q0: &QuadraticForm, n: &BigInt) -> Result<bool> {
    let r = rd.x_rank;
    if q.rank() != r || q0.rank() != r {
        return Err(Error::Form("form rank differs from lattice rank".into()));
    }
    let (b, b0) = (q.gram(), q0.gram());
    let congruent = (0..r).all(|k| ((q.c.get(k, k) - q0.c.get(k, k)) % n).is_zero())
        && (0..r).all(|k| (0..r).all(|l| ((b.get(k, l) - b0.get(k, l)) % n).is_zero()));
    if congruent {
        let d1 = modified_root_datum(&CoverSpec::new(rd.clone(), q.clone(), n.clone())?)?;
        let d2 = modified_root_datum(&CoverSpec::new(rd.clone(), q0.clone(), n.clone())?)?;
        if d1 != d2 {
            return Err(Error::Cover("congruent forms produced different modified data".into()));
        }
    }
    Ok(congruent)
}

/// Why a lattice map is not well aligned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub condition: u8,
    pub reason: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {} fails: {}", self.condition, self.reason)
    }
}

impl std::error::Error for Rejection {}

/// Lattice shadow of the dual of a well-aligned homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMap {
    /// `Y_{1,Q,n} -> Y_{2,Q,n}` in the canonical bases.
    pub character_map: IntMatrix,
    /// Its transpose: cocharacters of the second dual torus to those of the first.
    pub cocharacter_map: IntMatrix,
}

pub fn well_aligned_dual(iota: &IntMatrix, cs1: &CoverSpec, cs2: &CoverSpec) -> std::result::Result<DualMap, Rejection> {
    let reject = |condition: u8, reason: String| Err(Rejection { condition, reason });
    let (r1, r2) = (cs1.rank(), cs2.rank());
    if iota.rows() != r2 || iota.cols() != r1 {
        return reject(2, format!("map must be {r2}x{r1}"));
    }
    if cs1.n != cs2.n {
        return reject(3, "covers have different degrees".into());
    }
    for (k, cv) in cs1.rd.coroots.iter().enumerate() {
        let img = iota.mul_vec(cv).expect("shape");
        match cs2.rd.coroots.iter().position(|c| *c == img) {
            None => return reject(2, format!("coroot {k} is not sent to a coroot")),
            Some(m) if cs1.rd.simple.contains(&k) && !cs2.rd.simple.contains(&m) => {
                return reject(2, format!("simple coroot {k} is not sent to a simple coroot"))
            }
            _ => {}
        }
    }
    let pulled = cs2.form.pullback(iota).expect("shape");
    let (b1, bp) = (cs1.form.gram(), pulled.gram());
    let values_agree = (0..r1).all(|k| cs1.form.c.get(k, k) == pulled.c.get(k, k));
    if b1 != bp || !values_agree {
        return reject(3, "Q_1 differs from Q_2 composed with the map".into());
    }
    let (y1, _) = lattice_yqn(cs1);
    let (y2, _) = lattice_yqn(cs2);
    let mut cols = Vec::with_capacity(y1.rank());
    for m in y1.basis_vectors() {
        let img = iota.mul_vec(m).expect("shape");
        match y2.coordinates(&img) {
            Some(c) => cols.push(c),
            None => return reject(4, format!("image {img:?} of a Y_Q,n vector leaves Y_Q,n")),
        }
    }
    let character_map = IntMatrix::from_columns(y2.rank(), &cols).expect("shape");
    let n = &cs1.n;
    for m in y1.basis_vectors() {
        let t1 = frac_part(BigRational::new(cs1.form.eval(m), n.clone()));
        let t2 = frac_part(BigRational::new(cs2.form.eval(&iota.mul_vec(m).expect("shape")), n.clone()));
        assert_eq!(t1, t2, "tau compatibility");
    }
    Ok(DualMap { cocharacter_map: character_map.transpose(), character_map })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviReport {
    pub report: DualGroupReport,
    /// Index in the ambient root list of each Levi root.
    pub root_map: Vec<usize>,
}

/// Levi subgroup generated by the simple roots at the given positions of `rd.simple`.
pub fn levi_embedding(cs: &CoverSpec, subset: &[usize]) -> Result<LeviReport> {
    let rd = &cs.rd;
    if let Some(&bad) = subset.iter().find(|&&i| i >= rd.simple.len()) {
        return Err(Error::Cover(format!("simple root position {bad} out of range")));
    }
    let sr: Vec<Vec<BigInt>> = subset.iter().map(|&i| rd.roots[rd.simple[i]].clone()).collect();
    let sc: Vec<Vec<BigInt>> = subset.iter().map(|&i| rd.coroots[rd.simple[i]].clone()).collect();
    let mut levi = if subset.is_empty() {
        RootDatum::torus(rd.x_rank)
    } else {
        RootDatum::from_simple(&format!("Levi of {}", rd.family), rd.x_rank, &sr, &sc)?
    };
    levi.galois = None;
    let root_map = levi
        .roots
        .iter()
        .map(|r| rd.root_index(r).ok_or_else(|| Error::Cover("Levi root is not an ambient root".into())))
        .collect::<Result<Vec<_>>>()?;
    let lcs = CoverSpec { rd: levi, form: cs.form.clone(), n: cs.n.clone(), normalized: cs.normalized };
    let report = center_and_tau(&lcs)?;
    let ambient = center_and_tau(&CoverSpec { rd: RootDatum { galois: None, ..rd.clone() }, ..cs.clone() })?;
    if report.yqn != ambient.yqn || report.tau_element != ambient.tau_element {
        return Err(Error::Cover("Levi tau differs from the ambient tau".into()));
    }
    Ok(LeviReport { report, root_map })
}

/// Exponents `e_i` with the twist `y -> (-1)^{e(y)}` on the canonical basis of `Y_{Q,n}`.
pub fn weyl_splitting_twist(cs: &CoverSpec, orbit: &[usize]) -> Result<Vec<u8>> {
    let rd = &cs.rd;
    if orbit.is_empty() || orbit.iter().any(|&k| k >= rd.roots.len()) {
        return Err(Error::Cover("orbit must list valid root indices".into()));
    }
    for &i in orbit {
        for &j in orbit {
            if i != j && !dot(&rd.roots[i], &rd.coroots[j]).is_zero() {
                return Err(Error::Cover(format!("roots {i} and {j} are not orthogonal")));
            }
        }
    }
    let qb = cs.form.eval(&rd.coroots[orbit[0]]);
    if orbit.iter().any(|&k| cs.form.eval(&rd.coroots[k]) != qb) {
        return Err(Error::Cover("orbit roots have different Q values".into()));
    }
    let (y, _) = lattice_yqn(cs);
    if qb.is_even() {
        return Ok(vec![0; y.rank()]);
    }
    let n = &cs.n;
    let (nb, _) = modified_constants(&qb, n);
    let half = n / 2;
    y.basis_vectors()
        .iter()
        .map(|m| {
            let mut e = BigInt::zero();
            for &k in orbit {
                let (pair, rem) = dot(&rd.roots[k], m).div_rem(&nb);
                if !rem.is_zero() {
                    return Err(Error::Cover("modified root pairs non-integrally".into()));
                }
                e += &half * pair;
            }
            Ok(e.mod_floor(&BigInt::from(2)).to_u8().expect("0 or 1"))
        })
        .collect()
}

/// `Y_{Q,n}` intersected with the Frobenius-fixed cocharacters.
pub fn frobenius_fixed_support(cs: &CoverSpec) -> Result<Sublattice> {
    let g = cs.rd.galois.as_ref().ok_or_else(|| Error::Cover("no Galois action".into()))?;
    let fixed = fixed_sublattice(&Lattice::new(cs.rank()), g)?;
    let (y, _) = lattice_yqn(cs);
    fixed.intersect(&y)
}

/// Dual-group report for a named simply connected group with the standard form.
pub fn standard_report(group: &str, n: u64) -> Result<DualGroupReport> {
    let rd = build_from_label(group)?;
    let form = weyl_invariant_form(&rd, &FormSpec::ShortCoroot(BigInt::one()))?;
    center_and_tau(&CoverSpec::new(rd, form, n)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFamily {
    SL,
    SpinOdd,
    Sp,
    SpinEven,
    Exceptional,
}

impl TableFamily {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "sl" | "a" => TableFamily::SL,
            "spin-odd" | "b" => TableFamily::SpinOdd,
            "sp" | "c" => TableFamily::Sp,
            "spin-even" | "d" => TableFamily::SpinEven,
            "e" | "exceptional" => TableFamily::Exceptional,
            _ => return Err(Error::Parse(format!("unknown table family {s:?}"))),
        })
    }

    /// Column groups; `max_rank` overrides the default upper rank.
    pub fn groups(self, max_rank: Option<usize>) -> Vec<String> {
        match self {
            TableFamily::SL => (1..=max_rank.unwrap_or(5)).map(|l| format!("SL_{}", l + 1)).collect(),
            TableFamily::SpinOdd => (3..=max_rank.unwrap_or(8)).map(|l| format!("Spin_{}", 2 * l + 1)).collect(),
            TableFamily::Sp => (3..=max_rank.unwrap_or(5)).map(|l| format!("Sp_{}", 2 * l)).collect(),
            TableFamily::SpinEven => (4..=max_rank.unwrap_or(9)).map(|l| format!("Spin_{}", 2 * l)).collect(),
            TableFamily::Exceptional => ["E_6", "E_7", "E_8", "F_4", "G_2"].iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub group: String,
    pub n: u64,
    pub label: String,
    pub center: FiniteAbelianGroup,
    pub tau_trivial: bool,
}

impl TableCell {
    pub fn text(&self) -> String {
        if self.tau_trivial {
            self.label.clone()
        } else {
            format!("*{}", self.label)
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.group,
            "n": self.n,
            "label": self.label,
            "center": self.center.to_json(),
            "tau_trivial": self.tau_trivial,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub groups: Vec<String>,
    pub degrees: Vec<u64>,
    /// `cells[row][col]`, one row per degree.
    pub cells: Vec<Vec<TableCell>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = format!("n,{}\n", self.groups.join(","));
        for (n, row) in self.degrees.iter().zip(&self.cells) {
            let cells: Vec<String> = row.iter().map(TableCell::text).collect();
            out.push_str(&format!("{n},{}\n", cells.join(",")));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.cells.iter().flatten().map(TableCell::to_json).collect())
    }
}

/// Evaluates every `(degree, group)` cell in parallel.
pub fn generate_table(groups: &[String], degrees: &[u64]) -> Result<Table> {
    let jobs: Vec<(usize, usize)> = (0..degrees.len()).flat_map(|i| (0..groups.len()).map(move |j| (i, j))).collect();
    let results: Vec<Result<TableCell>> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let rep = standard_report(&groups[j], degrees[i])?;
            Ok(TableCell {
                group: groups[j].clone(),
                n: degrees[i],
                label: rep.name.label.clone(),
                center: rep.center.clone(),
                tau_trivial: rep.tau_trivial,
            })
        })
        .collect();
    let mut flat = results.into_iter();
    let mut cells = Vec::with_capacity(degrees.len());
    for _ in degrees {
        let mut row = Vec::with_capacity(groups.len());
        for _ in groups {
            row.push(flat.next().expect("one result per job")?);
        }
        cells.push(row);
    }
    Ok(Table { groups: groups.to_vec(), degrees: degrees.to_vec(), cells })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TauSurveyRow {
    pub m: usize,
    pub n: u64,
    /// 2-adic valuation of `n`.
    pub e: u32,
    pub observed: bool,
    pub conjectured: bool,
}

/// Nontriviality of `tau_Q(-1)` for `SL_m` against the pattern
/// "nontrivial iff `m = 2^e j`, `j` odd, where `n = 2^e k`, `k` odd".
pub fn sl_tau_survey(max_m: usize, max_n: u64) -> Result<Vec<TauSurveyRow>> {
    let jobs: Vec<(usize, u64)> = (2..=max_m).flat_map(|m| (1..=max_n).map(move |n| (m, n))).collect();
    jobs.par_iter()
        .map(|&(m, n)| {
            let rep = standard_report(&format!("SL_{m}"), n)?;
            let e = n.trailing_zeros();
            let conjectured = (m as u64).trailing_zeros() == e;
            Ok(TauSurveyRow { m, n, e, observed: !rep.tau_trivial, conjectured })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::bvec;
    use crate::rootdata::{build_named, Named};

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn sl2_form_and_lattices() {
        let rd = build_named(Named::SL, 2).unwrap();
        let q = weyl_invariant_form(&rd, &FormSpec::ShortCoroot(bi(1))).unwrap();
        for a in -3..=3 {
            assert_eq!(q.eval(&bvec(&[a])), bi(a * a));
        }
        let y2 = lattice_yqn(&CoverSpec::new(rd.clone(), q.clone(), 2).unwrap()).0;
        assert_eq!(y2, Sublattice::full(1));
        let y3 = lattice_yqn(&CoverSpec::new(rd.clone(), q.clone(), 3).unwrap()).0;
        assert_eq!(y3.basis_vectors(), &[bvec(&[3])]);
        let y1 = lattice_yqn(&CoverSpec::new(rd, q, 1).unwrap()).0;
        assert_eq!(y1, Sublattice::full(1));
    }

    #[test]
    fn gl2_gram() {
        let rd = build_named(Named::GL, 2).unwrap();
        let q = weyl_invariant_form(&rd, &FormSpec::GL { q: bi(1), c: bi(0) }).unwrap();
        assert_eq!(q.gram(), IntMatrix::from_i64(2, 2, &[2, 1, 1, 2]));
    }

    #[test]
    fn sp6_long_coroot() {
        let rd = build_named(Named::Sp, 6).unwrap();
        let q = weyl_invariant_form(&rd, &FormSpec::ShortCoroot(bi(1))).unwrap();
        let vals: Vec<BigInt> = rd.simple_coroots().iter().map(|c| q.eval(c)).collect();
        assert_eq!(vals, vec![bi(2), bi(2), bi(1)]);
    }

    #[test]
    fn constants() {
        assert_eq!(modified_constants(&bi(1), &bi(2)), (bi(2), bi(1)));
        assert_eq!(modified_constants(&bi(2), &bi(2)), (bi(1), bi(1)));
        assert_eq!(modified_constants(&bi(0), &bi(3)), (bi(1), bi(0)));
    }

    #[test]
    fn explicit_noninvariant_form_is_rejected() {
        let rd = build_named(Named::SL, 3).unwrap();
        let c = IntMatrix::from_i64(2, 2, &[1, 0, 0, 0]);
        assert!(matches!(weyl_invariant_form(&rd, &FormSpec::Explicit(c)), Err(Error::Form(_))));
    }

    #[test]
    fn odd_degree_normalization() {
        let rd = build_named(Named::SL, 2).unwrap();
        let q = weyl_invariant_form(&rd, &FormSpec::ShortCoroot(bi(1))).unwrap();
        let cs = CoverSpec::new(rd.clone(), q.clone(), 3).unwrap();
        assert!(cs.normalized);
        assert_eq!(cs.form.eval(&bvec(&[1])), bi(4));
        assert!(CoverSpec::strict(rd, q, 3).is_err());
    }

    #[test]
    fn sp6_degree_two() {
        let rep = standard_report("Sp_6", 2).unwrap();
        assert_eq!(rep.to_string(), "Sp_6, center Z/2, tau: nontrivial");
        assert_eq!(rep.name.cartan_type, "C_3");
    }

    #[test]
    fn weyl_twist_sl2() {
        let rd = build_named(Named::SL, 2).unwrap();
        let q = weyl_invariant_form(&rd, &FormSpec::ShortCoroot(bi(1))).unwrap();
        let cs = CoverSpec::new(rd, q, 2).unwrap();
        assert_eq!(weyl_splitting_twist(&cs, &[0]).unwrap(), vec![1]);
        let cs3 = CoverSpec::new(cs.rd.clone(), cs.form.clone(), 3).unwrap();
        assert_eq!(weyl_splitting_twist(&cs3, &[0]).unwrap(), vec![0]);
    }

    #[test]
    fn csv_shape() {
        let t = generate_table(&["SL_2".to_string()], &[1, 2]).unwrap();
        assert_eq!(t.to_csv(), "n,SL_2\n1,PGL_2\n2,*SL_2\n");
    }
}
