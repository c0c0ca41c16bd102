//! Double covers of compact real tori and genuine discrete series parameters.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::covers::{lattice_yqn, CoverSpec, QuadraticForm};
use crate::error::{Error, Result};
use crate::json::rational_value;
use crate::lattice::{rdot, to_rat, IntMatrix};
use crate::rootdata::{weyl_group, weyl_group_on_x, RootDatum};

pub const ENUMERATION_CAP: u64 = 10_000_000;

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

fn is_half_integral(x: &BigRational) -> bool {
    (x * BigInt::from(2)).is_integer()
}

/// Double cover of the compact torus with cocharacter lattice `Z^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealTorusCover {
    pub form: QuadraticForm,
    /// Values of `eta` on the standard basis, in `{0, 1/2}`.
    pub eta: Vec<BigRational>,
}

impl RealTorusCover {
    pub fn new(form: QuadraticForm, eta: Vec<BigRational>) -> Result<Self> {
        let r = form.rank();
        if eta.len() != r {
            return Err(Error::Dimension(format!("eta has {} values on a rank {r} lattice", eta.len())));
        }
        if let Some(x) = eta.iter().find(|x| !is_half_integral(x)) {
            return Err(Error::Domain(format!("eta value {x} is not in 1/2 Z")));
        }
        let b = form.gram();
        if (0..r).any(|i| (0..r).any(|j| b.get(i, j).is_odd())) {
            return Err(Error::Cover("cover is not sharp: B is not even".into()));
        }
        let eta = eta.iter().map(frac).collect();
        Ok(RealTorusCover { form, eta })
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    /// `eta(y)` mod 1.
    pub fn eta_at(&self, y: &[BigInt]) -> BigRational {
        frac(&rdot(&self.eta, &to_rat(y)))
    }
}

/// `kappa(e_i) = eta(e_i) + Q(e_i)/2` mod 1.
pub fn kappa_from_invariants(cover: &RealTorusCover) -> Vec<BigRational> {
    (0..cover.rank())
        .map(|i| frac(&(&cover.eta[i] + BigRational::from_integer(cover.form.c.get(i, i).clone()) * half())))
        .collect()
}

pub fn kappa_at(kappa: &[BigRational], y: &[BigInt]) -> BigRational {
    frac(&rdot(kappa, &to_rat(y)))
}

/// `Q(sum a_i y_i) = sum 2 kappa(y_i) a_i^2`, the sharp form whose `kappa` is the given one.
pub fn form_from_kappa(kappa: &[BigRational]) -> Result<QuadraticForm> {
    let r = kappa.len();
    let mut c = IntMatrix::zeros(r, r);
    for (i, k) in kappa.iter().enumerate() {
        if !is_half_integral(k) {
            return Err(Error::Domain(format!("kappa value {k} is not in 1/2 Z")));
        }
        c.set(i, i, (frac(k) * BigInt::from(2)).to_integer());
    }
    QuadraticForm::new(c)
}

/// The coset `kappa + X` inside `1/2 X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenuineCoset {
    pub kappa: Vec<BigRational>,
}

impl GenuineCoset {
    pub fn new(kappa: Vec<BigRational>) -> Result<Self> {
        if let Some(k) = kappa.iter().find(|k| !is_half_integral(k)) {
            return Err(Error::Domain(format!("kappa value {k} is not in 1/2 Z")));
        }
        Ok(GenuineCoset { kappa: kappa.iter().map(frac).collect() })
    }

    pub fn contains(&self, xi: &[BigRational]) -> bool {
        xi.len() == self.kappa.len()
            && xi.iter().zip(&self.kappa).all(|(x, k)| is_half_integral(x) && (x - k).is_integer())
    }

    pub fn representatives(&self, lo: i64, hi: i64) -> Vec<BigRational> {
        assert_eq!(self.kappa.len(), 1, "listing is for rank one");
        (lo..=hi).map(|a| &self.kappa[0] + BigRational::from_integer(BigInt::from(a))).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeChoice {
    X,
    Xqn,
}

impl LatticeChoice {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(LatticeChoice::X),
            "xqn" | "x_qn" | "xq" => Ok(LatticeChoice::Xqn),
            _ => Err(Error::Parse(format!("lattice must be x or xqn, got {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LatticeChoice::X => "X",
            LatticeChoice::Xqn => "X_QN",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DiscreteSeriesInput {
    pub rd: RootDatum,
    /// `W` acting on `X`.
    pub weyl_x: Vec<IntMatrix>,
    pub rho: Vec<BigRational>,
    pub kappa: Vec<BigRational>,
    /// Basis of `X_{Q,n}` in `X_Q` coordinates, one vector per entry.
    pub xqn: Vec<Vec<BigRational>>,
    pub radius: BigRational,
    gram: Vec<Vec<BigRational>>,
}

impl DiscreteSeriesInput {
    pub fn new(rd: RootDatum, kappa: Vec<BigRational>, xqn: Vec<Vec<BigRational>>, radius: BigRational) -> Result<Self> {
        let r = rd.x_rank;
        if kappa.len() != r || xqn.len() != r || xqn.iter().any(|v| v.len() != r) {
            return Err(Error::Dimension(format!("kappa and X_Q,n must live in Q^{r}")));
        }
        if !radius.is_positive() {
            return Err(Error::Domain("radius must be positive".into()));
        }
        if let Some(k) = kappa.iter().find(|k| !is_half_integral(k)) {
            return Err(Error::Domain(format!("kappa value {k} is not in 1/2 X")));
        }
        // X must sit inside X_{Q,n}.
        for i in 0..r {
            let e: Vec<BigRational> = (0..r).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }).collect();
            let coords = crate::lattice::solve_rational_unique(&transpose(&xqn), &e)
                .ok_or_else(|| Error::Domain("X_Q,n basis is singular".into()))?;
            if coords.iter().any(|c| !c.is_integer()) {
                return Err(Error::Domain("X is not contained in X_Q,n".into()));
            }
        }
        let weyl_y = weyl_group(&rd)?;
        let weyl_x = weyl_group_on_x(&rd, &weyl_y)?;
        let mut rho = vec![BigRational::zero(); r];
        for k in rd.positive_roots() {
            for (a, x) in rho.iter_mut().zip(&rd.roots[k]) {
                *a += BigRational::from_integer(x.clone()) * half();
            }
        }
        let mut gram = vec![vec![BigRational::zero(); r]; r];
        for w in &weyl_x {
            for i in 0..r {
                for j in 0..r {
                    let s: BigInt = (0..r).map(|k| w.get(k, i) * w.get(k, j)).sum();
                    gram[i][j] += BigRational::from_integer(s);
                }
            }
        }
        let order = BigRational::from_integer(BigInt::from(weyl_x.len()));
        for row in gram.iter_mut() {
            for x in row.iter_mut() {
                *x = &*x / &order;
            }
        }
        let input = DiscreteSeriesInput { rd, weyl_x, rho, kappa, xqn, radius, gram };
        if !input.is_regular(&input.rho) {
            return Err(Error::Domain("rho is singular".into()));
        }
        Ok(input)
    }

    /// Input for a cover: `X_{Q,n}` is the dual of `Y_{Q,n}`.
    pub fn from_cover(cs: &CoverSpec, kappa: Vec<BigRational>, radius: BigRational) -> Result<Self> {
        let (y, _) = lattice_yqn(cs);
        let inv = y
            .basis()
            .inverse_rational()
            .ok_or_else(|| Error::Cover("Y_Q,n has lower rank".into()))?;
        // Columns of M^{-T} are the rows of M^{-1}.
        DiscreteSeriesInput::new(cs.rd.clone(), kappa, inv, radius)
    }

    pub fn norm_squared(&self, xi: &[BigRational]) -> BigRational {
        let gx: Vec<BigRational> = self.gram.iter().map(|row| rdot(row, xi)).collect();
        rdot(xi, &gx)
    }

    pub fn is_regular(&self, xi: &[BigRational]) -> bool {
        self.rd.coroots.iter().all(|c| !rdot(xi, &to_rat(c)).is_zero())
    }

    pub fn is_dominant(&self, xi: &[BigRational]) -> bool {
        self.rd.simple.iter().all(|&s| rdot(xi, &to_rat(&self.rd.coroots[s])).is_positive())
    }

    fn act(&self, w: &IntMatrix, xi: &[BigRational]) -> Vec<BigRational> {
        (0..w.rows())
            .map(|i| (0..w.cols()).map(|j| BigRational::from_integer(w.get(i, j).clone()) * &xi[j]).sum())
            .collect()
    }

    /// The dominant element of the orbit of a regular point.
    pub fn dominant_representative(&self, xi: &[BigRational]) -> Option<Vec<BigRational>> {
        self.weyl_x.iter().map(|w| self.act(w, xi)).find(|v| self.is_dominant(v))
    }

    fn lattice_basis(&self, choice: LatticeChoice) -> Vec<Vec<BigRational>> {
        match choice {
            LatticeChoice::Xqn => self.xqn.clone(),
            LatticeChoice::X => {
                let r = self.rd.x_rank;
                (0..r)
                    .map(|i| (0..r).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }).collect())
                    .collect()
            }
        }
    }

    fn offset(&self) -> Vec<BigRational> {
        self.kappa.iter().zip(&self.rho).map(|(a, b)| a + b).collect()
    }

    /// Whether `xi` lies in `kappa + rho + L`.
    pub fn in_coset(&self, choice: LatticeChoice, xi: &[BigRational]) -> bool {
        let basis = self.lattice_basis(choice);
        let d: Vec<BigRational> = xi.iter().zip(self.offset()).map(|(a, b)| a - b).collect();
        match crate::lattice::solve_rational_unique(&transpose(&basis), &d) {
            Some(c) => c.iter().all(|x| x.is_integer()),
            None => false,
        }
    }

    /// All points of `kappa + rho + L` with norm at most `R`.
    pub fn points(&self, choice: LatticeChoice) -> Result<Vec<Vec<BigRational>>> {
        let basis = self.lattice_basis(choice);
        let r = basis.len();
        let o = self.offset();
        let h: Vec<Vec<f64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let gj: Vec<BigRational> = self.gram.iter().map(|row| rdot(row, &basis[j])).collect();
                        rdot(&basis[i], &gj).to_f64().unwrap_or(f64::INFINITY)
                    })
                    .collect()
            })
            .collect();
        let hinv = invert_f64(&h).ok_or_else(|| Error::Domain("lattice Gram matrix is singular".into()))?;
        let reach = self.radius.to_f64().unwrap_or(f64::INFINITY) + self.norm_squared(&o).to_f64().unwrap_or(0.0).sqrt();
        let bounds: Vec<i64> = (0..r).map(|i| (hinv[i][i].max(0.0).sqrt() * reach).floor() as i64 + 1).collect();
        let total = bounds.iter().try_fold(1u64, |acc, b| acc.checked_mul(2 * *b as u64 + 1));
        if total.is_none_or(|t| t > ENUMERATION_CAP) {
            return Err(Error::ModelSize(format!("enumeration box exceeds {ENUMERATION_CAP} points")));
        }
        let r2 = &self.radius * &self.radius;
        let mut out = Vec::new();
        let mut k: Vec<i64> = bounds.iter().map(|b| -b).collect();
        loop {
            let mut xi = o.clone();
            for (kk, v) in k.iter().zip(&basis) {
                let kk = BigRational::from_integer(BigInt::from(*kk));
                for (a, b) in xi.iter_mut().zip(v) {
                    *a += &kk * b;
                }
            }
            if self.norm_squared(&xi) <= r2 {
                out.push(xi);
            }
            let mut i = 0;
            while i < r {
                k[i] += 1;
                if k[i] <= bounds[i] {
                    break;
                }
                k[i] = -bounds[i];
                i += 1;
            }
            if i == r {
                break;
            }
        }
        Ok(out)
    }
}

fn transpose(cols: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let r = cols.first().map_or(0, |c| c.len());
    (0..r).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

fn invert_f64(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs()))?;
        if m[p][c].abs() < 1e-12 {
            return None;
        }
        m.swap(c, p);
        let d = m[c][c];
        for x in m[c].iter_mut() {
            *x /= d;
        }
        for i in 0..n {
            if i != c {
                let f = m[i][c];
                let pivot = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(pivot) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsOrbit {
    pub rep: Vec<BigRational>,
    pub norm_squared: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsOrbits {
    pub lattice: LatticeChoice,
    pub radius: BigRational,
    pub orbits: Vec<DsOrbit>,
    /// Every dominant representative found lies in the coset itself.
    pub w_stable: bool,
}

fn orbit_value(o: &DsOrbit) -> Value {
    json!({
        "rep": o.rep.iter().map(rational_value).collect::<Vec<_>>(),
        "norm": o.norm_squared.to_f64().map(f64::sqrt),
        "norm_squared": rational_value(&o.norm_squared),
    })
}

impl DsOrbits {
    pub fn to_json(&self) -> Value {
        json!({
            "lattice": self.lattice.name(),
            "R": rational_value(&self.radius),
            "orbits": self.orbits.iter().map(orbit_value).collect::<Vec<_>>(),
            "w_stable": self.w_stable,
        })
    }
}

/// `W`-orbits of regular points of `kappa + rho + L` within `R`, by dominant representative.
pub fn ds_parameter_orbits(input: &DiscreteSeriesInput, choice: LatticeChoice) -> Result<DsOrbits> {
    let mut reps: BTreeSet<(BigRational, Vec<BigRational>)> = BTreeSet::new();
    let mut w_stable = true;
    for xi in input.points(choice)? {
        if !input.is_regular(&xi) {
            continue;
        }
        let dom = input.dominant_representative(&xi).expect("regular points have a dominant conjugate");
        w_stable &= input.in_coset(choice, &dom);
        reps.insert((input.norm_squared(&dom), dom));
    }
    Ok(DsOrbits {
        lattice: choice,
        radius: input.radius.clone(),
        orbits: reps.into_iter().map(|(norm_squared, rep)| DsOrbit { rep, norm_squared }).collect(),
        w_stable,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub base: DsOrbit,
    pub preimages: Vec<DsOrbit>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub radius: BigRational,
    pub fibers: Vec<Fiber>,
}

impl FiberReport {
    pub fn all_singletons(&self) -> bool {
        self.fibers.iter().all(|f| f.preimages.len() == 1)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.fibers.iter().map(|f| f.preimages.len()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "R": rational_value(&self.radius),
            "fibers": self.fibers.iter().map(|f| json!({
                "base_rep": orbit_value(&f.base)["rep"],
                "preimages": f.preimages.iter().map(|p| orbit_value(p)["rep"].clone()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// For each orbit of the `X_{Q,n}` coset, the orbits of the `X` coset over it.
pub fn ds_fiber_report(input: &DiscreteSeriesInput) -> Result<FiberReport> {
    let base = ds_parameter_orbits(input, LatticeChoice::Xqn)?;
    let top = ds_parameter_orbits(input, LatticeChoice::X)?;
    let fibers = base
        .orbits
        .into_iter()
        .map(|b| {
            let preimages = top.orbits.iter().filter(|t| t.rep == b.rep).cloned().collect();
            Fiber { base: b, preimages }
        })
        .collect();
    Ok(FiberReport { radius: input.radius.clone(), fibers })
}
