use std::collections::HashSet;

use bdcover::covers::{
    check_mod_n_equivalence, lattice_yqn, modified_constants, weyl_invariant_form, CoverSpec, FormSpec, QuadraticForm,
};
use bdcover::lattice::{
    bvec, fixed_sublattice, quotient_structure, smith_normal_form, IntMatrix, Lattice, Sublattice,
};
use bdcover::localarith::{hilbert2, hilbert_n_tame, square_class_reps, LocalElement, MetaGaloisModel, Place};
use bdcover::realforms::{
    ds_parameter_orbits, kappa_at, kappa_from_invariants, DiscreteSeriesInput, GenuineCoset, LatticeChoice,
    RealTorusCover,
};
use bdcover::rootdata::{
    build_from_label, dual_root_datum, identify_isogeny, weyl_group, RootDatum,
};
use bdcover::torus::{basis_change_exponents, commutator, center_of_cover, transport_incarnation, TorusCover};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

const SMALL_LABELS: &[&str] =
    &["SL_2", "SL_3", "SL_4", "PGL_2", "PGL_3", "Sp_4", "Sp_6", "PGSp_4", "Spin_5", "Spin_7", "SO_5", "SO_7", "Spin_8", "SO_8", "G_2", "GL_2", "GL_3", "GSp_4"];

fn matrix(r: usize, c: usize, vals: &[i64]) -> IntMatrix {
    IntMatrix::from_i64(r, c, vals)
}

fn square(range: std::ops::RangeInclusive<i64>, max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max).prop_flat_map(move |r| prop::collection::vec(range.clone(), r * r).prop_map(move |v| matrix(r, r, &v)))
}

fn unimodular(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max).prop_flat_map(|r| {
        prop::collection::vec((0..r, 0..r, -2i64..=2, any::<bool>()), 0..6).prop_map(move |ops| {
            let mut g = IntMatrix::identity(r);
            for (i, j, k, neg) in ops {
                let mut e = IntMatrix::identity(r);
                if i != j {
                    e.set(i, j, BigInt::from(k));
                } else if neg {
                    e.set(i, i, BigInt::from(-1));
                }
                g = e.mul(&g).unwrap();
            }
            g
        })
    })
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    (-300i64..=300, 1i64..=300).prop_filter_map("nonzero", |(a, b)| (a != 0).then(|| rat(a, b)))
}

fn place() -> impl Strategy<Value = Place> {
    prop::sample::select(vec![Place::Real, Place::Padic(2), Place::Padic(3), Place::Padic(5), Place::Padic(7), Place::Padic(11)])
}

fn datum(label: &str) -> RootDatum {
    build_from_label(label).unwrap()
}

/// A Weyl-invariant form on a labelled datum, scaled until it is integral.
fn some_form(rd: &RootDatum, label: &str, t: i64) -> QuadraticForm {
    if label.starts_with("GL_") {
        return weyl_invariant_form(rd, &FormSpec::GL { q: t.into(), c: (t - 2).into() }).unwrap();
    }
    if label.starts_with("GSp_") {
        return weyl_invariant_form(rd, &FormSpec::GSp { kappa: (t - 2).into(), nu: t.into() }).unwrap();
    }
    (1..=12).find_map(|k| weyl_invariant_form(rd, &FormSpec::ShortCoroot((t * k).into())).ok()).unwrap()
}

// Lattices.

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn smith_form_is_a_factorization(rows in 1usize..=4, cols in 1usize..=4, seed in prop::collection::vec(-9i64..=9, 16)) {
        let m = matrix(rows, cols, &seed[..rows * cols]);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.det().unwrap().abs().is_one());
        prop_assert!(s.v.det().unwrap().abs().is_one());
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let d = s.diagonal();
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn quotient_order_matches_coset_count(m in square(-6..=6, 3)) {
        let r = m.rows();
        let det = m.det().unwrap().abs().to_u64().unwrap();
        prop_assume!(det > 0 && det.pow(r as u32) <= 10_000);
        let sub = Sublattice::from_columns(&m);
        let q = quotient_structure(&Lattice::new(r), &sub).unwrap();
        // det Z^r lies in the sublattice, so cosets are (Z/det)^r modulo the image of the generators.
        let gens: Vec<Vec<u64>> = m.columns().iter()
            .map(|c| c.iter().map(|x| x.mod_floor(&BigInt::from(det)).to_u64().unwrap()).collect())
            .collect();
        let mut seen: HashSet<Vec<u64>> = HashSet::from([vec![0; r]]);
        let mut frontier = vec![vec![0u64; r]];
        while let Some(v) = frontier.pop() {
            for g in &gens {
                let w: Vec<u64> = v.iter().zip(g).map(|(a, b)| (a + b) % det).collect();
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        let cosets = det.pow(r as u32) / seen.len() as u64;
        prop_assert_eq!(q.order(), Some(BigInt::from(cosets)));
        prop_assert_eq!(cosets, det);
    }

    #[test]
    fn fixed_sublattices_are_saturated(idx in 0usize..SMALL_LABELS.len(), pick in any::<prop::sample::Index>()) {
        let rd = datum(SMALL_LABELS[idx]);
        let w = weyl_group(&rd).unwrap();
        let g = pick.get(&w);
        let fixed = fixed_sublattice(&Lattice::new(rd.x_rank), g).unwrap();
        prop_assert!(fixed.is_saturated());
        for v in fixed.basis_vectors() {
            prop_assert_eq!(&g.mul_vec(v).unwrap(), v);
        }
        let q = quotient_structure(&Lattice::new(rd.x_rank), &fixed).unwrap();
        prop_assert!(q.invariant_factors.is_empty());
    }
}

// Root data.

#[test]
fn roots_and_coroots_match_up() {
    for label in SMALL_LABELS.iter().chain(&["F_4", "E_6"]) {
        let rd = datum(label);
        assert_eq!(rd.roots.len(), rd.coroots.len(), "{label}");
        let reflections: Vec<IntMatrix> = rd.simple.iter().map(|&k| rd.reflection_x(k)).collect();
        let mut orbit: HashSet<Vec<BigInt>> = rd.simple_roots().into_iter().collect();
        let mut frontier: Vec<Vec<BigInt>> = orbit.iter().cloned().collect();
        while let Some(a) = frontier.pop() {
            for s in &reflections {
                let b = s.mul_vec(&a).unwrap();
                if orbit.insert(b.clone()) {
                    frontier.push(b);
                }
            }
        }
        let all: HashSet<Vec<BigInt>> = rd.roots.iter().cloned().collect();
        assert_eq!(orbit, all, "{label}");
    }
}

#[test]
fn named_data_round_trip() {
    let mut labels: Vec<String> = Vec::new();
    for r in 1..=8 {
        labels.push(format!("SL_{}", r + 1));
        labels.push(format!("PGL_{}", r + 1));
        if r >= 2 {
            labels.push(format!("Sp_{}", 2 * r));
        }
        labels.push(format!("GL_{r}"));
        if r >= 2 {
            labels.push(format!("PGSp_{}", 2 * r));
            labels.push(format!("GSp_{}", 2 * r));
        }
        if r >= 3 {
            labels.push(format!("Spin_{}", 2 * r + 1));
            labels.push(format!("SO_{}", 2 * r + 1));
        }
        if r >= 4 {
            labels.push(format!("Spin_{}", 2 * r));
            labels.push(format!("SO_{}", 2 * r));
        }
    }
    labels.extend(["G_2", "F_4", "E_6", "E_7", "E_8"].map(String::from));
    for label in labels {
        let name = identify_isogeny(&datum(&label)).unwrap();
        let expected = if label == "GSp_2" { "GL_2" } else { label.as_str() };
        assert_eq!(name.label, expected);
    }
}

#[test]
fn weyl_group_orders() {
    let fact = |k: u64| (1..=k).product::<u64>();
    let mut cases: Vec<(String, u64)> = Vec::new();
    for r in 1..=5u64 {
        cases.push((format!("SL_{}", r + 1), fact(r + 1)));
        if r >= 2 {
            cases.push((format!("Sp_{}", 2 * r), (1 << r) * fact(r)));
            cases.push((format!("Spin_{}", 2 * r + 1), (1 << r) * fact(r)));
        }
        if r >= 4 {
            cases.push((format!("Spin_{}", 2 * r), (1 << (r - 1)) * fact(r)));
        }
    }
    cases.extend([("G_2".into(), 12), ("F_4".into(), 1152), ("E_6".into(), 51840)]);
    for (label, order) in cases {
        assert_eq!(weyl_group(&datum(&label)).unwrap().len() as u64, order, "{label}");
    }
}

#[test]
fn dual_is_an_involution() {
    for label in SMALL_LABELS.iter().chain(&["F_4", "E_6", "E_7"]) {
        let rd = datum(label);
        let dd = dual_root_datum(&dual_root_datum(&rd));
        let set = |v: &[Vec<BigInt>]| v.iter().cloned().collect::<HashSet<_>>();
        assert_eq!(set(&dd.roots), set(&rd.roots), "{label}");
        assert_eq!(set(&dd.coroots), set(&rd.coroots), "{label}");
        assert_eq!(identify_isogeny(&dd).unwrap().label, identify_isogeny(&rd).unwrap().label);
    }
}

// Covers.

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn form_identities_on_roots(idx in 0usize..SMALL_LABELS.len(), t in 1i64..=3, n in 1u64..=8) {
        let label = SMALL_LABELS[idx];
        let rd = datum(label);
        let cs = CoverSpec::new(rd.clone(), some_form(&rd, label, t), n).unwrap();
        let q = &cs.form;
        let nn = BigInt::from(n);
        let r = rd.x_rank;
        for (phi, cophi) in rd.roots.iter().zip(&rd.coroots) {
            let qc = q.eval(cophi);
            let (n_phi, m_phi) = modified_constants(&qc, &nn);
            for i in 0..r {
                let mut y = vec![BigInt::zero(); r];
                y[i] = BigInt::one();
                // B(phi^vee, y) = Q(phi^vee) <phi, y>
                prop_assert_eq!(q.bilinear(cophi, &y), &qc * &phi[i]);
                // B(n_phi phi^vee, y) / n = m_phi <phi, y>
                let lhs = BigRational::new(&n_phi * q.bilinear(cophi, &y), nn.clone());
                prop_assert_eq!(lhs, BigRational::from_integer(&m_phi * &phi[i]));
            }
            let scaled: Vec<BigInt> = cophi.iter().map(|x| x * &n_phi).collect();
            prop_assert_eq!(q.eval(&scaled), &n_phi * &m_phi * &nn);
        }
        let (y, _) = lattice_yqn(&cs);
        for v in y.basis_vectors() {
            prop_assert!((BigInt::from(2) * q.eval(v) % &nn).is_zero());
        }
    }

    #[test]
    fn yqn_is_weyl_stable(idx in 0usize..SMALL_LABELS.len(), t in 1i64..=3, n in 1u64..=8) {
        let label = SMALL_LABELS[idx];
        let rd = datum(label);
        let cs = CoverSpec::new(rd.clone(), some_form(&rd, label, t), n).unwrap();
        let (y, _) = lattice_yqn(&cs);
        let modified: HashSet<Vec<BigInt>> = rd.coroots.iter().map(|c| {
            let (n_phi, _) = modified_constants(&cs.form.eval(c), &cs.n);
            c.iter().map(|x| x * &n_phi).collect()
        }).collect();
        for w in weyl_group(&rd).unwrap() {
            prop_assert_eq!(&y.image(&w).unwrap(), &y);
            let moved: HashSet<Vec<BigInt>> = modified.iter().map(|c| w.mul_vec(c).unwrap()).collect();
            prop_assert_eq!(&moved, &modified);
        }
        for c in &modified {
            prop_assert!(y.contains(c));
        }
    }

    #[test]
    fn congruent_forms_give_equal_dual_data(idx in 0usize..SMALL_LABELS.len(), t in 1i64..=3, s in 1i64..=3, n in 1u64..=6) {
        let label = SMALL_LABELS[idx];
        let rd = datum(label);
        let q = some_form(&rd, label, t);
        let extra = some_form(&rd, label, s);
        let shifted = QuadraticForm::new(q.c.add(&extra.c.scale(&BigInt::from(n))).unwrap()).unwrap();
        prop_assert!(check_mod_n_equivalence(&rd, &q, &shifted, &BigInt::from(n)).unwrap());
    }
}

// Local arithmetic.

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hilbert_symbol_is_bimultiplicative(pl in place(), a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational()) {
        let e = |q: &BigRational| LocalElement::from_rational(pl, q).unwrap();
        let (u, u2, v) = (e(&a), e(&b), e(&c));
        let prod = e(&(&a * &b));
        prop_assert_eq!(hilbert2(&prod, &v).unwrap(), hilbert2(&u, &v).unwrap() * hilbert2(&u2, &v).unwrap());
        prop_assert_eq!(hilbert2(&u, &v).unwrap(), hilbert2(&v, &u).unwrap());
        prop_assert_eq!(hilbert2(&u, &e(&-&a)).unwrap(), 1);
        prop_assume!(!a.is_one());
        prop_assert_eq!(hilbert2(&u, &e(&(BigRational::one() - &a))).unwrap(), 1);
    }
}

#[test]
fn tame_symbol_agrees_with_quadratic_symbol() {
    for p in [3u64, 5, 7, 11, 13] {
        let reps = square_class_reps(Place::Padic(p));
        for u in &reps {
            for v in &reps {
                let tame = hilbert_n_tame(u, v, 2).unwrap();
                let h = hilbert2(u, v).unwrap();
                assert_eq!(if tame == 0 { 1 } else { -1 }, h, "p={p}");
            }
        }
    }
}

#[test]
fn metagalois_cocycle_identity() {
    for place in [Place::Real, Place::Padic(2), Place::Padic(3), Place::Padic(5), Place::Padic(7), Place::Padic(13)] {
        assert_eq!(MetaGaloisModel::new(place).unwrap().cocycle_violation(), None, "{place}");
    }
}

// Tori.

fn small_cover() -> impl Strategy<Value = TorusCover> {
    let params = prop::sample::select(vec![(2u64, 3u64), (2, 5), (3, 7), (2, 7), (3, 13)]);
    (square(-3..=3, 2), params).prop_map(|(c, (n, p))| TorusCover::new(c, n, p).unwrap())
}

fn all_classes(n: u64) -> Vec<(u64, u64)> {
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
}

fn all_elements(cover: &TorusCover) -> Vec<Vec<(u64, u64)>> {
    let mut out: Vec<Vec<(u64, u64)>> = vec![vec![]];
    for _ in 0..cover.rank() {
        out = out.into_iter().flat_map(|t| all_classes(cover.n).into_iter().map(move |c| {
            let mut s = t.clone();
            s.push(c);
            s
        })).collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theta_is_bimultiplicative(cover in small_cover()) {
        let n = cover.n;
        let elems = all_elements(&cover);
        let add = |x: &[(u64, u64)], y: &[(u64, u64)]| -> Vec<(u64, u64)> {
            x.iter().zip(y).map(|(a, b)| ((a.0 + b.0) % n, (a.1 + b.1) % n)).collect()
        };
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    let left = cover.theta_classes(&add(a, b), c);
                    prop_assert_eq!(left, (cover.theta_classes(a, c) + cover.theta_classes(b, c)) % n);
                    let right = cover.theta_classes(c, &add(a, b));
                    prop_assert_eq!(right, (cover.theta_classes(c, a) + cover.theta_classes(c, b)) % n);
                }
            }
        }
    }

    #[test]
    fn commutators_are_antisymmetric(cover in small_cover(), y1 in prop::collection::vec(-3i64..=3, 2), y2 in prop::collection::vec(-3i64..=3, 2), a in nonzero_rational(), b in nonzero_rational()) {
        let r = cover.rank();
        let (y1, y2) = (bvec(&y1[..r]), bvec(&y2[..r]));
        let pl = Place::Padic(cover.p);
        let (u, v) = (LocalElement::from_rational(pl, &a).unwrap(), LocalElement::from_rational(pl, &b).unwrap());
        // `commutator` itself rejects a value different from B(y1, y2) Hilb_n(u, v).
        let c1 = commutator(&cover, &y1, &u, &y2, &v).unwrap();
        let c2 = commutator(&cover, &y2, &v, &y1, &u).unwrap();
        prop_assert_eq!((c1 + c2) % cover.n, 0);
        let b12 = cover.form.bilinear(&y1, &y2);
        if (b12 % BigInt::from(cover.n)).is_zero() {
            prop_assert_eq!(c1, 0);
        }
    }

    #[test]
    fn sharp_covers_are_abelian(base in square(-2..=2, 2), params in prop::sample::select(vec![(2u64, 5u64), (3, 7), (2, 13), (3, 13)])) {
        let (n, p) = params;
        let c = base.scale(&BigInt::from(2 * n));
        let cover = TorusCover::new(c, n, p).unwrap();
        prop_assert!(cover.sharp);
        let report = center_of_cover(&cover).unwrap();
        prop_assert!(report.abelian);
        prop_assert_eq!(report.center_order, report.group_order);
    }

    #[test]
    fn basis_change_composes_on_sharp_incarnations(upper in prop::collection::vec(-3i64..=3, 9), shift in prop::collection::vec(-1i64..=1, 9), g1 in unimodular(3), g2 in unimodular(3)) {
        let r = g1.rows().min(g2.rows());
        prop_assume!(g1.rows() == g2.rows());
        let mut c = IntMatrix::zeros(r, r);
        for k in 0..r {
            for l in k..r {
                c.set(k, l, BigInt::from(upper[3 * k + l]));
                if l > k {
                    c.set(l, k, BigInt::from(upper[3 * k + l] + 2 * shift[3 * k + l]));
                }
            }
        }
        let e1 = basis_change_exponents(&c, &g1).unwrap();
        let e2 = basis_change_exponents(&transport_incarnation(&c, &g1).unwrap(), &g2).unwrap();
        let total = basis_change_exponents(&c, &g2.mul(&g1).unwrap()).unwrap();
        for j in 0..r {
            let s: BigInt = (0..r).map(|i| g1.get(i, j) * BigInt::from(e2[i])).sum();
            prop_assert_eq!((BigInt::from(e1[j]) + s).mod_floor(&BigInt::from(2)), BigInt::from(total[j]));
        }
    }
}

// Real forms.

fn half_integers(len: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(-4i64..=4, len).prop_map(|v| v.into_iter().map(|a| rat(a, 2)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kappa_is_additive(half in prop::collection::vec(-2i64..=2, 4), base in square(-3..=3, 2), eta in half_integers(2), y1 in prop::collection::vec(-4i64..=4, 2), y2 in prop::collection::vec(-4i64..=4, 2)) {
        // Even B: symmetric part of C has an even off-diagonal.
        let r = base.rows();
        let mut c = base.clone();
        if r == 2 {
            c.set(1, 0, base.get(0, 1) + BigInt::from(2 * half[0]));
        }
        let form = QuadraticForm::new(c).unwrap();
        let cover = RealTorusCover::new(form.clone(), eta[..r].to_vec()).unwrap();
        let kappa = kappa_from_invariants(&cover);
        let (y1, y2) = (bvec(&y1[..r]), bvec(&y2[..r]));
        let sum: Vec<BigInt> = y1.iter().zip(&y2).map(|(a, b)| a + b).collect();
        let defect = kappa_at(&kappa, &sum) - kappa_at(&kappa, &y1) - kappa_at(&kappa, &y2);
        prop_assert!(defect.is_integer());
        // kappa(y) = eta(y) + Q(y)/2 mod Z
        let direct = cover.eta_at(&y1) + BigRational::new(form.eval(&y1), BigInt::from(2));
        prop_assert!((direct - kappa_at(&kappa, &y1)).is_integer());
    }

    #[test]
    fn discrete_series_orbits(label in prop::sample::select(vec!["SL_2", "SL_3", "Sp_4", "G_2", "PGL_2"]), n in 1u64..=3, radius in 1i64..=12) {
        let rd = datum(label);
        let cs = CoverSpec::new(rd.clone(), some_form(&rd, label, 1), n).unwrap();
        let r = rd.x_rank;
        let zero = vec![BigRational::zero(); r];
        let input = |rad: i64| DiscreteSeriesInput::from_cover(&cs, zero.clone(), BigRational::from_integer(rad.into())).unwrap();
        let small = input(radius);
        let orbits = ds_parameter_orbits(&small, LatticeChoice::Xqn).unwrap();
        prop_assert!(orbits.w_stable);
        let reps: HashSet<Vec<BigRational>> = orbits.orbits.iter().map(|o| o.rep.clone()).collect();
        prop_assert_eq!(reps.len(), orbits.orbits.len());
        for o in &orbits.orbits {
            prop_assert!(small.is_regular(&o.rep) && small.is_dominant(&o.rep));
            for w in &small.weyl_x {
                let moved: Vec<BigRational> = (0..r).map(|i| (0..r).map(|j| BigRational::from_integer(w.get(i, j).clone()) * &o.rep[j]).sum()).collect();
                let dominant = small.dominant_representative(&moved);
                prop_assert_eq!(dominant.as_ref(), Some(&o.rep));
            }
        }
        let larger = ds_parameter_orbits(&input(radius + 3), LatticeChoice::Xqn).unwrap();
        prop_assert!(larger.orbits.len() >= orbits.orbits.len());
    }

    #[test]
    fn coset_membership_matches_genuine_coset(label in prop::sample::select(vec!["SL_2", "SL_3", "Sp_4", "G_2", "GL_2"]), kappa in half_integers(3), xi in half_integers(3)) {
        let rd = datum(label);
        let r = rd.x_rank;
        let input = DiscreteSeriesInput::from_cover(
            &CoverSpec::new(rd.clone(), some_form(&rd, label, 2), 1).unwrap(),
            kappa[..r].to_vec(),
            BigRational::from_integer(4.into()),
        ).unwrap();
        let coset = GenuineCoset::new(kappa[..r].to_vec()).unwrap();
        let shifted: Vec<BigRational> = xi[..r].iter().zip(&input.rho).map(|(a, b)| a + b).collect();
        prop_assert_eq!(input.in_coset(LatticeChoice::X, &shifted), coset.contains(&xi[..r]));
    }
}

#[test]
fn weyl_invariant_pairing_is_preserved() {
    // Sanity check for the W-averaged norm used in the enumeration.
    let rd = datum("G_2");
    let input = DiscreteSeriesInput::from_cover(
        &CoverSpec::new(rd.clone(), some_form(&rd, "G_2", 1), 1).unwrap(),
        vec![BigRational::zero(); 2],
        BigRational::from_integer(5.into()),
    )
    .unwrap();
    let xi = vec![rat(3, 1), rat(-1, 1)];
    let n0 = input.norm_squared(&xi);
    for w in &input.weyl_x {
        let moved: Vec<BigRational> =
            (0..2).map(|i| (0..2).map(|j| BigRational::from_integer(w.get(i, j).clone()) * &xi[j]).sum()).collect();
        assert_eq!(input.norm_squared(&moved), n0);
    }
}
