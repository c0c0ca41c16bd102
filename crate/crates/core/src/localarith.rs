//! Hilbert symbols over `Q_p` and `R`, tame `n`-th power symbols, reciprocity, and the
//! metaGalois cocycle on square classes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Padic(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Place {
    pub fn padic(p: u64) -> Result<Place> {
        if is_prime(p) {
            Ok(Place::Padic(p))
        } else {
            Err(Error::Place(format!("{p} is not prime")))
        }
    }

    /// `inf`, `real`, `R` or a prime.
    pub fn parse(s: &str) -> Result<Place> {
        match s.trim() {
            "inf" | "infinity" | "real" | "R" | "oo" => Ok(Place::Real),
            t => {
                let p: u64 = t.parse().map_err(|_| Error::Place(format!("unrecognized place {t:?}")))?;
                Place::padic(p)
            }
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Padic(p) => write!(f, "{p}"),
        }
    }
}

/// Element of `F^x` for `F = R` or `Q_p`, known to finite `p`-adic precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalElement {
    pub place: Place,
    pub valuation: i64,
    /// Unit part modulo `p^precision`, or the sign `+-1` at the real place.
    pub unit: BigInt,
    pub precision: u32,
    pub exact: Option<BigRational>,
}

fn p_valuation(x: &BigInt, p: &BigInt) -> (i64, BigInt) {
    let mut v = 0;
    let mut x = x.clone();
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return (v, x);
        }
        x = q;
        v += 1;
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

impl LocalElement {
    pub fn from_rational(place: Place, q: &BigRational) -> Result<Self> {
        Self::from_rational_with_precision(place, q, DEFAULT_PRECISION)
    }

    pub fn from_rational_with_precision(place: Place, q: &BigRational, precision: u32) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Domain("zero has no local symbol".into()));
        }
        match place {
            Place::Real => Ok(LocalElement {
                place,
                valuation: 0,
                unit: if q.is_negative() { -BigInt::one() } else { BigInt::one() },
                precision,
                exact: Some(q.clone()),
            }),
            Place::Padic(p) => {
                if precision == 0 {
                    return Err(Error::Precision("precision must be positive".into()));
                }
                let pb = BigInt::from(p);
                let (vn, un) = p_valuation(q.numer(), &pb);
                let (vd, ud) = p_valuation(q.denom(), &pb);
                let modulus = pb.pow(precision);
                let inv = mod_inverse(&ud, &modulus).expect("unit denominator");
                Ok(LocalElement {
                    place,
                    valuation: vn - vd,
                    unit: (un * inv).mod_floor(&modulus),
                    precision,
                    exact: Some(q.clone()),
                })
            }
        }
    }

    pub fn from_int(place: Place, x: i64) -> Result<Self> {
        Self::from_rational(place, &BigRational::from_integer(BigInt::from(x)))
    }

    /// `p^valuation * unit` with the unit given modulo `p^precision`.
    pub fn from_parts(place: Place, valuation: i64, unit: BigInt, precision: u32) -> Result<Self> {
        match place {
            Place::Real => {
                if unit.abs() != BigInt::one() || valuation != 0 {
                    return Err(Error::Domain("real elements are given by a sign".into()));
                }
                Ok(LocalElement { place, valuation, unit, precision, exact: None })
            }
            Place::Padic(p) => {
                if precision == 0 {
                    return Err(Error::Precision("precision must be positive".into()));
                }
                let pb = BigInt::from(p);
                let modulus = pb.pow(precision);
                let unit = unit.mod_floor(&modulus);
                if (&unit % &pb).is_zero() {
                    return Err(Error::Domain(format!("unit part {unit} is divisible by {p}")));
                }
                Ok(LocalElement { place, valuation, unit, precision, exact: None })
            }
        }
    }

    pub fn mul(&self, other: &LocalElement) -> Result<LocalElement> {
        if self.place != other.place {
            return Err(Error::Place(format!("mixed places {} and {}", self.place, other.place)));
        }
        let exact = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        match self.place {
            Place::Real => Ok(LocalElement { unit: &self.unit * &other.unit, exact, ..self.clone() }),
            Place::Padic(p) => {
                let precision = self.precision.min(other.precision);
                let modulus = BigInt::from(p).pow(precision);
                Ok(LocalElement {
                    place: self.place,
                    valuation: self.valuation + other.valuation,
                    unit: (&self.unit * &other.unit).mod_floor(&modulus),
                    precision,
                    exact,
                })
            }
        }
    }

    pub fn neg(&self) -> LocalElement {
        let exact = self.exact.as_ref().map(|q| -q);
        match self.place {
            Place::Real => LocalElement { unit: -&self.unit, exact, ..self.clone() },
            Place::Padic(p) => {
                let modulus = BigInt::from(p).pow(self.precision);
                LocalElement { unit: (-&self.unit).mod_floor(&modulus), exact, ..self.clone() }
            }
        }
    }
}

impl fmt::Display for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.place {
            Place::Real => write!(f, "{}", if self.unit.is_positive() { "+" } else { "-" }),
            Place::Padic(p) => write!(f, "{p}^{} * {} (mod {p}^{})", self.valuation, self.unit, self.precision),
        }
    }
}

fn legendre(u: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let e = (&pb - 1) / 2;
    let r = u.mod_floor(&pb).modpow(&e, &pb);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn sign(even: bool) -> i8 {
    if even {
        1
    } else {
        -1
    }
}

/// Quadratic Hilbert symbol `(u, v)` at the common place of `u` and `v`.
pub fn hilbert2(u: &LocalElement, v: &LocalElement) -> Result<i8> {
    if u.place != v.place {
        return Err(Error::Place(format!("mixed places {} and {}", u.place, v.place)));
    }
    match u.place {
        Place::Real => Ok(if u.unit.is_negative() && v.unit.is_negative() { -1 } else { 1 }),
        Place::Padic(2) => {
            if u.precision < 3 || v.precision < 3 {
                return Err(Error::Precision("dyadic symbols need units modulo 8".into()));
            }
            let eight = BigInt::from(8);
            let (a, b) = (u.valuation, v.valuation);
            let (u8_, v8) = (u.unit.mod_floor(&eight).to_i64().unwrap(), v.unit.mod_floor(&eight).to_i64().unwrap());
            let eps = |x: i64| ((x - 1) / 2) & 1;
            let omega = |x: i64| ((x * x - 1) / 8) & 1;
            let e = eps(u8_) * eps(v8) + a.rem_euclid(2) * omega(v8) + b.rem_euclid(2) * omega(u8_);
            Ok(sign(e % 2 == 0))
        }
        Place::Padic(p) => {
            let (a, b) = (u.valuation, v.valuation);
            let mut s = sign((a * b).rem_euclid(2) == 0 || ((p - 1) / 2) % 2 == 0);
            if b.rem_euclid(2) == 1 {
                s *= legendre(&u.unit, p);
            }
            if a.rem_euclid(2) == 1 {
                s *= legendre(&v.unit, p);
            }
            Ok(s)
        }
    }
}

fn factor_u64(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Least primitive root modulo an odd prime (or 1 for `p = 2`).
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let qs = factor_u64(p - 1);
    let pb = BigInt::from(p);
    (2..p)
        .find(|&g| qs.iter().all(|q| !BigInt::from(g).modpow(&BigInt::from((p - 1) / q), &pb).is_one()))
        .expect("primes have primitive roots")
}

pub(crate) fn discrete_log(x: u64, g: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    for k in 0..p - 1 {
        if acc == x % p {
            return k;
        }
        acc = ((acc as u128 * g as u128) % p as u128) as u64;
    }
    unreachable!("x is a unit mod p")
}

/// Tame symbol as an index `k` mod `n`, meaning the value `zeta^k` with
/// `zeta = g^{(p-1)/n}` for the least primitive root `g`.
pub fn hilbert_n_tame(u: &LocalElement, v: &LocalElement, n: u64) -> Result<u64> {
    if u.place != v.place {
        return Err(Error::Place(format!("mixed places {} and {}", u.place, v.place)));
    }
    let Place::Padic(p) = u.place else {
        return Err(Error::Place("tame symbols live at finite places".into()));
    };
    if n == 0 || (p - 1) % n != 0 {
        return Err(Error::Tame(format!("{n} does not divide {p} - 1")));
    }
    let pb = BigInt::from(p);
    let (a, b) = (u.valuation, v.valuation);
    let uu = u.unit.mod_floor(&pb);
    let vv = v.unit.mod_floor(&pb);
    let pow = |x: &BigInt, e: i64| -> BigInt {
        if e >= 0 {
            x.modpow(&BigInt::from(e), &pb)
        } else {
            mod_inverse(x, &pb).expect("unit").modpow(&BigInt::from(-e), &pb)
        }
    };
    let mut x = pow(&uu, b) * pow(&vv, -a);
    if (a * b).rem_euclid(2) == 1 {
        x = -x;
    }
    let x = x.mod_floor(&pb).to_u64().expect("residue");
    let g = primitive_root(p);
    Ok(discrete_log(x, g, p) % n)
}

/// Degree-`n` symbol index: the quadratic symbol for `n = 2` at any place,
/// the tame symbol otherwise.
pub fn hilbert_n(u: &LocalElement, v: &LocalElement, n: u64) -> Result<u64> {
    match n {
        0 => Err(Error::Tame("degree must be positive".into())),
        1 => Ok(0),
        2 => Ok(u64::from(hilbert2(u, v)? == -1)),
        _ => hilbert_n_tame(u, v, n),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub places: Vec<(Place, i8)>,
    pub product: i8,
}

impl ReciprocityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "places": self.places.iter().map(|(p, s)| json!({"place": p.to_string(), "symbol": s})).collect::<Vec<_>>(),
            "product": self.product,
        })
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

fn prime_divisors(x: &BigInt, out: &mut Vec<u64>) -> Result<()> {
    let mut m = x.abs();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && BigInt::from(d) * BigInt::from(d) <= m {
        let db = BigInt::from(d);
        if (&m % &db).is_zero() {
            out.push(d);
            while (&m % &db).is_zero() {
                m /= &db;
            }
        }
        d += 1;
    }
    if m > BigInt::one() {
        let p = m.to_u64().filter(|&p| is_prime(p)).ok_or_else(|| Error::Domain(format!("cannot factor {x}")))?;
        out.push(p);
    }
    Ok(())
}

/// Symbols at `inf`, `2` and every odd prime dividing `u` or `v`, with their product.
pub fn reciprocity_check(u: &BigRational, v: &BigRational) -> Result<ReciprocityReport> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::Domain("symbols need nonzero arguments".into()));
    }
    let mut primes = vec![2];
    for x in [u.numer(), u.denom(), v.numer(), v.denom()] {
        prime_divisors(x, &mut primes)?;
    }
    primes.sort_unstable();
    primes.dedup();
    let mut places = vec![Place::Real];
    places.extend(primes.into_iter().map(Place::Padic));
    let mut out = Vec::with_capacity(places.len());
    let mut product = 1;
    for place in places {
        let s = hilbert2(&LocalElement::from_rational(place, u)?, &LocalElement::from_rational(place, v)?)?;
        product *= s;
        out.push((place, s));
    }
    Ok(ReciprocityReport { places: out, product })
}

/// Least quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&x| legendre(&BigInt::from(x), p) == -1).expect("odd primes have non-residues")
}

/// Canonical representatives of `F^x / (F^x)^2`.
pub fn square_class_reps(place: Place) -> Vec<LocalElement> {
    let ints: Vec<i64> = match place {
        Place::Real => vec![1, -1],
        Place::Padic(2) => vec![1, -1, 2, -2, 5, -5, 10, -10],
        Place::Padic(p) => {
            let u0 = least_nonresidue(p) as i64;
            vec![1, u0, p as i64, u0 * p as i64]
        }
    };
    ints.into_iter().map(|x| LocalElement::from_int(place, x).expect("nonzero")).collect()
}

/// Index into [`square_class_reps`] of the class of `x`.
pub fn square_class(x: &LocalElement) -> Result<usize> {
    match x.place {
        Place::Real => Ok(if x.unit.is_positive() { 0 } else { 1 }),
        Place::Padic(2) => {
            if x.precision < 3 {
                return Err(Error::Precision("dyadic square classes need units modulo 8".into()));
            }
            let u = x.unit.mod_floor(&BigInt::from(8)).to_i64().unwrap();
            let base = match u {
                1 => 0,
                7 => 1,
                5 => 4,
                3 => 5,
                _ => unreachable!("odd residue"),
            };
            Ok(if x.valuation.rem_euclid(2) == 1 { base + 2 } else { base })
        }
        Place::Padic(p) => {
            let odd = x.valuation.rem_euclid(2) == 1;
            let nonres = legendre(&x.unit, p) == -1;
            Ok(usize::from(nonres) + 2 * usize::from(odd))
        }
    }
}

/// `h(g1, g2) = Hilb_2(g1, g2)`, checked to depend only on square classes.
pub fn metagalois_cocycle(g1: &LocalElement, g2: &LocalElement) -> Result<i8> {
    let h = hilbert2(g1, g2)?;
    let reps = square_class_reps(g1.place);
    let (i, j) = (square_class(g1)?, square_class(g2)?);
    let hr = hilbert2(&reps[i], &reps[j])?;
    if h != hr {
        return Err(Error::Domain("cocycle is not constant on square classes".into()));
    }
    Ok(h)
}

/// Element `(class, eps)` of the extension of `F^x/(F^x)^2` by `+-1` defined by `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetaElement {
    pub class: usize,
    pub eps: i8,
}

/// Multiplication table of the metaGalois extension on square classes.
#[derive(Clone, Debug)]
pub struct MetaGaloisModel {
    pub place: Place,
    pub reps: Vec<LocalElement>,
    /// `class_mul[i][j]` is the class of `rep_i * rep_j`.
    pub class_mul: Vec<Vec<usize>>,
    pub h: Vec<Vec<i8>>,
}

impl MetaGaloisModel {
    pub fn new(place: Place) -> Result<Self> {
        let reps = square_class_reps(place);
        let k = reps.len();
        let mut class_mul = vec![vec![0; k]; k];
        let mut h = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                class_mul[i][j] = square_class(&reps[i].mul(&reps[j])?)?;
                h[i][j] = metagalois_cocycle(&reps[i], &reps[j])?;
            }
        }
        Ok(MetaGaloisModel { place, reps, class_mul, h })
    }

    pub fn mul(&self, a: MetaElement, b: MetaElement) -> MetaElement {
        MetaElement { class: self.class_mul[a.class][b.class], eps: a.eps * b.eps * self.h[a.class][b.class] }
    }

    pub fn identity(&self) -> MetaElement {
        MetaElement { class: 0, eps: 1 }
    }

    pub fn order(&self, a: MetaElement) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// First triple violating `h(a,b) h(ab,c) = h(b,c) h(a,bc)`, if any.
    pub fn cocycle_violation(&self) -> Option<(usize, usize, usize)> {
        let k = self.reps.len();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let l = self.h[a][b] * self.h[self.class_mul[a][b]][c];
                    let r = self.h[b][c] * self.h[a][self.class_mul[b][c]];
                    if l != r {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        let k = self.reps.len();
        (0..k).all(|a| (0..k).all(|b| self.h[a][b] == self.h[b][a]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitCertificate {
    /// Explicit cochain `c(a) = (-1)^{(q-1)/2 * a(a-1)/2}` on Frobenius powers, verified on `0..range`.
    Split { p: u64, range: u32 },
    /// `(sigma, 1)` squares to `(1, -1)`.
    NonSplitReal { witness: MetaElement, order: usize },
    /// Nontrivial dyadic class; `global_check` records the parity argument.
    NonSplitDyadic { local_symbol: i8, global_check: String },
}

impl SplitCertificate {
    pub fn is_split(&self) -> bool {
        matches!(self, SplitCertificate::Split { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            SplitCertificate::Split { p, range } => json!({
                "split": true,
                "place": p,
                "cochain": "c(a) = (-1)^((q-1)/2 * a(a-1)/2)",
                "verified_range": range,
            }),
            SplitCertificate::NonSplitReal { witness, order } => json!({
                "split": false,
                "place": "inf",
                "witness": {"class": witness.class, "eps": witness.eps},
                "order": order,
            }),
            SplitCertificate::NonSplitDyadic { local_symbol, global_check } => json!({
                "split": false,
                "place": 2,
                "local_symbol": local_symbol,
                "global_check": global_check,
            }),
        }
    }
}

impl fmt::Display for SplitCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitCertificate::Split { p, range } => {
                write!(f, "Q_{p}: split by c(a) = (-1)^((q-1)/2 * a(a-1)/2), verified for a, b < {range}")
            }
            SplitCertificate::NonSplitReal { order, .. } => write!(f, "R: non-split, (sigma,1) has order {order}"),
            SplitCertificate::NonSplitDyadic { global_check, .. } => write!(f, "Q_2: non-split ({global_check})"),
        }
    }
}

pub const SPLIT_RANGE: u32 = 12;

fn split_cochain(q: u64, a: i64) -> i8 {
    let e = ((q as i64 - 1) / 2) * (a * (a - 1) / 2);
    sign(e.rem_euclid(2) == 0)
}

pub fn metagalois_split_witness(place: Place) -> Result<SplitCertificate> {
    match place {
        Place::Real => {
            let model = MetaGaloisModel::new(place)?;
            let sigma = MetaElement { class: 1, eps: 1 };
            let sq = model.mul(sigma, sigma);
            if sq != (MetaElement { class: 0, eps: -1 }) {
                return Err(Error::Domain("real metaGalois group unexpectedly split".into()));
            }
            Ok(SplitCertificate::NonSplitReal { witness: sigma, order: model.order(sigma) })
        }
        Place::Padic(2) => {
            let m1 = BigRational::from_integer(-BigInt::one());
            let local = |pl: Place| -> Result<i8> {
                let x = LocalElement::from_rational(pl, &m1)?;
                hilbert2(&x, &x)
            };
            let real = local(Place::Real)?;
            let odd_ok = (3..200u64).filter(|&p| is_prime(p)).all(|p| local(Place::Padic(p)) == Ok(1));
            let dyadic = local(Place::Padic(2))?;
            if real != -1 || !odd_ok || real * dyadic != 1 {
                return Err(Error::Domain("global parity check failed".into()));
            }
            Ok(SplitCertificate::NonSplitDyadic {
                local_symbol: dyadic,
                global_check: "(-1,-1) is -1 at inf, +1 at odd p < 200, so -1 at 2".into(),
            })
        }
        Place::Padic(p) => {
            let pb = BigRational::from_integer(BigInt::from(p));
            let pe = |a: u32| LocalElement::from_rational(place, &pb.pow(a as i32));
            for a in 0..SPLIT_RANGE {
                for b in 0..SPLIT_RANGE {
                    let (ai, bi) = (a as i64, b as i64);
                    let boundary = split_cochain(p, ai) * split_cochain(p, bi) * split_cochain(p, ai + bi);
                    let formula = sign((ai * bi * ((p as i64 - 1) / 2)).rem_euclid(2) == 0);
                    let symbol = hilbert2(&pe(a)?, &pe(b)?)?;
                    if boundary != formula || formula != symbol {
                        return Err(Error::Domain(format!("cochain fails at ({a}, {b})")));
                    }
                }
            }
            Ok(SplitCertificate::Split { p, range: SPLIT_RANGE })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(place: Place, x: i64) -> LocalElement {
        LocalElement::from_int(place, x).unwrap()
    }

    #[test]
    fn examples() {
        let r = Place::Real;
        assert_eq!(hilbert2(&el(r, -1), &el(r, -1)).unwrap(), -1);
        let p5 = Place::Padic(5);
        assert_eq!(hilbert2(&el(p5, 2), &el(p5, 3)).unwrap(), 1);
        let p2 = Place::Padic(2);
        assert_eq!(hilbert2(&el(p2, 2), &el(p2, 5)).unwrap(), -1);
    }

    #[test]
    fn tame_examples() {
        let p7 = Place::Padic(7);
        assert_eq!(hilbert_n_tame(&el(p7, 7), &el(p7, 7), 3).unwrap(), 0);
        let p5 = Place::Padic(5);
        assert_eq!(hilbert_n_tame(&el(p5, 5), &el(p5, 2), 2).unwrap(), 1);
        assert_eq!(hilbert_n_tame(&el(p5, 2), &el(p5, 3), 4).unwrap(), 0);
        assert!(matches!(hilbert_n_tame(&el(p5, 2), &el(p5, 3), 3), Err(Error::Tame(_))));
    }

    #[test]
    fn mixed_places_and_precision() {
        assert!(matches!(hilbert2(&el(Place::Real, 2), &el(Place::Padic(3), 2)), Err(Error::Place(_))));
        let low = LocalElement::from_parts(Place::Padic(2), 0, BigInt::from(3), 2).unwrap();
        assert!(matches!(hilbert2(&low, &low), Err(Error::Precision(_))));
        assert!(Place::padic(9).is_err());
    }

    #[test]
    fn reciprocity_examples() {
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        let rep = reciprocity_check(&q(2), &q(5)).unwrap();
        assert_eq!(rep.places, vec![(Place::Real, 1), (Place::Padic(2), -1), (Place::Padic(5), -1)]);
        let rep = reciprocity_check(&q(-1), &q(-1)).unwrap();
        assert_eq!(rep.places, vec![(Place::Real, -1), (Place::Padic(2), -1)]);
        assert_eq!(rep.product, 1);
    }

    #[test]
    fn square_classes_are_distinct() {
        for place in [Place::Real, Place::Padic(2), Place::Padic(3), Place::Padic(13)] {
            let reps = square_class_reps(place);
            let idx: Vec<usize> = reps.iter().map(|r| square_class(r).unwrap()).collect();
            assert_eq!(idx, (0..reps.len()).collect::<Vec<_>>(), "{place}");
        }
    }

    #[test]
    fn witnesses() {
        assert!(!metagalois_split_witness(Place::Real).unwrap().is_split());
        assert!(metagalois_split_witness(Place::Padic(7)).unwrap().is_split());
        assert!(!metagalois_split_witness(Place::Padic(2)).unwrap().is_split());
        let m = MetaGaloisModel::new(Place::Padic(2)).unwrap();
        assert_eq!(m.h[4][2], -1);
    }
}
