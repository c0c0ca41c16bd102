use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use bdcover::covers::{
    center_and_tau, generate_table, weyl_invariant_form, CoverSpec, FormSpec, TableFamily,
};
use bdcover::json::rational_value;
use bdcover::lattice::IntMatrix;
use bdcover::localarith::{
    hilbert_n, metagalois_split_witness, reciprocity_check, MetaElement, MetaGaloisModel, Place,
};
use bdcover::parse::{parse_local_element, parse_matrix, parse_place, parse_rational, parse_rational_vector};
use bdcover::realforms::{
    ds_fiber_report, ds_parameter_orbits, kappa_from_invariants, DiscreteSeriesInput, LatticeChoice, RealTorusCover,
};
use bdcover::rootdata::{build_from_label, validate, RootDatum};
use bdcover::torus::{
    basis_change_twist, center_of_cover, theta_sharp_compare, unramified_orbit_transfer, FrobeniusCase, TorusCover,
};
use bdcover::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "bdcover", version, about = "Dual groups and local arithmetic of covering groups")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dual group of a cover: isogeny label, center and tau.
    DualGroup(DualGroupArgs),
    /// Regenerate one of the dual group tables.
    Tables(TablesArgs),
    /// Local Hilbert symbol.
    Hilbert(HilbertArgs),
    /// Product formula for the quadratic Hilbert symbol over all places.
    Reciprocity(ReciprocityArgs),
    /// Structure of the metaGalois extension at a place.
    Metagalois(MetagaloisArgs),
    /// Center of a torus cover on the finite model.
    TorusCenter(TorusArgs),
    /// Twist attached to a change of basis of an incarnated torus cover.
    BasisChange(BasisChangeArgs),
    /// Compare the sharp cocycle with tau_Q of the quadratic symbol.
    ThetaSharp(ThetaSharpArgs),
    /// Check the unramified orbit bijection for a Frobenius action.
    OrbitTransfer(OrbitTransferArgs),
    /// kappa = eta + Q/2 for a double cover of a compact torus.
    RealKappa(RealKappaArgs),
    /// Discrete series parameter orbits of a double cover.
    DiscreteSeries(DiscreteSeriesArgs),
    /// Validate a root datum given as JSON.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Group label such as SL_4, Sp_6, Spin_7, GL_3, GSp_4, E_6.
    #[arg(long, conflicts_with_all = ["family", "datum"])]
    group: Option<String>,
    /// Family: SL, PGL, Sp, PGSp, spin-odd, spin-even, SO, GL, GSp, or a Cartan letter A-G.
    #[arg(long, requires = "rank")]
    family: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// Root datum as JSON text or a path to a JSON file.
    #[arg(long)]
    datum: Option<String>,
    /// Value of Q on short coroots.
    #[arg(long, default_value_t = 1)]
    t: i64,
    /// GL_r form: Q(e_1 - e_2) = q.
    #[arg(long, requires = "c")]
    q: Option<i64>,
    /// GL_r form: Q(e_1) = 1 + c.
    #[arg(long, requires = "q")]
    c: Option<i64>,
    /// GSp form: Q(e_0) = kappa.
    #[arg(long, requires = "nu")]
    kappa: Option<i64>,
    /// GSp form: Q(e_i) = nu.
    #[arg(long, requires = "kappa")]
    nu: Option<i64>,
    /// Explicit incarnation C with Q(y) = y^T C y, e.g. "1,0;0,1".
    #[arg(long, allow_hyphen_values = true)]
    incarnation: Option<String>,
}

#[derive(Args, Debug)]
struct DualGroupArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, short = 'n')]
    degree: u64,
    /// Reject odd Q with odd n instead of replacing Q by (n+1)Q.
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug)]
struct TablesArgs {
    /// SL, spin-odd, sp, spin-even or E.
    #[arg(long)]
    family: String,
    #[arg(long)]
    max_rank: Option<usize>,
    #[arg(long, default_value_t = 6)]
    max_degree: u64,
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
}

#[derive(Args, Debug)]
struct HilbertArgs {
    /// A prime, or inf for the real place.
    #[arg(long)]
    place: String,
    #[arg(short = 'u', allow_hyphen_values = true)]
    u: String,
    #[arg(short = 'v', allow_hyphen_values = true)]
    v: String,
    #[arg(long, short = 'n', default_value_t = 2)]
    degree: u64,
}

#[derive(Args, Debug)]
struct ReciprocityArgs {
    #[arg(short = 'u', allow_hyphen_values = true)]
    u: String,
    #[arg(short = 'v', allow_hyphen_values = true)]
    v: String,
}

#[derive(Args, Debug)]
struct MetagaloisArgs {
    #[arg(long)]
    place: String,
}

#[derive(Args, Debug)]
struct TorusArgs {
    /// Incarnation C, e.g. "1,0;0,1".
    #[arg(long, allow_hyphen_values = true)]
    incarnation: String,
    #[arg(long, short = 'n')]
    degree: u64,
    #[arg(long, short = 'p')]
    prime: u64,
}

#[derive(Args, Debug)]
struct BasisChangeArgs {
    #[arg(long, allow_hyphen_values = true)]
    incarnation: String,
    /// Unimodular change of basis g with x'_i = sum_j g_ij x_j.
    #[arg(long, allow_hyphen_values = true)]
    change: String,
    #[arg(long, short = 'n', default_value_t = 2)]
    degree: u64,
    /// Place of u; defaults to the real place.
    #[arg(long, default_value = "inf")]
    place: String,
    #[arg(short = 'u', allow_hyphen_values = true)]
    u: String,
}

#[derive(Args, Debug)]
struct ThetaSharpArgs {
    #[arg(long, allow_hyphen_values = true)]
    incarnation: String,
    #[arg(long, short = 'n')]
    degree: u64,
    #[arg(long, short = 'p')]
    prime: u64,
    #[arg(short = 'u', allow_hyphen_values = true)]
    u: String,
    #[arg(short = 'v', allow_hyphen_values = true)]
    v: String,
    /// Optional change of basis to test invariance under.
    #[arg(long, allow_hyphen_values = true)]
    change: Option<String>,
}

#[derive(Args, Debug)]
struct OrbitTransferArgs {
    /// trivial, swap or su3.
    #[arg(long)]
    case: String,
    #[arg(long, short = 'n', default_value_t = 2)]
    degree: u64,
    #[arg(long, short = 'm')]
    m: u64,
    /// Denominator bound for source characters; defaults to m times the Frobenius order.
    #[arg(long)]
    search: Option<u64>,
}

#[derive(Args, Debug)]
struct RealKappaArgs {
    #[arg(long, allow_hyphen_values = true)]
    incarnation: String,
    /// Values of eta on the basis, e.g. "0,1/2".
    #[arg(long, allow_hyphen_values = true)]
    eta: String,
}

#[derive(Args, Debug)]
struct DiscreteSeriesArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, short = 'n')]
    degree: u64,
    /// kappa in X_Q coordinates, e.g. "1/2".
    #[arg(long, allow_hyphen_values = true)]
    kappa_vec: String,
    #[arg(long)]
    radius: String,
    /// x or xqn.
    #[arg(long, default_value = "xqn")]
    lattice: String,
    /// Also report the fibers of the X-orbits over the X_QN-orbits.
    #[arg(long)]
    fibers: bool,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Root datum as JSON text or a path to a JSON file.
    #[arg(long)]
    datum: String,
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, ok: true }
    }
}

fn read_datum(s: &str) -> Result<RootDatum> {
    let text = if Path::new(s).is_file() {
        std::fs::read_to_string(s).map_err(|e| Error::Parse(format!("cannot read {s}: {e}")))?
    } else {
        s.to_string()
    };
    RootDatum::from_json_str(&text)
}

fn family_label(family: &str, r: usize) -> Result<String> {
    let f = family.to_ascii_lowercase();
    Ok(match f.as_str() {
        "sl" | "a" => format!("SL_{}", r + 1),
        "pgl" => format!("PGL_{}", r + 1),
        "sp" | "c" => format!("Sp_{}", 2 * r),
        "pgsp" => format!("PGSp_{}", 2 * r),
        "spin-odd" | "b" => format!("Spin_{}", 2 * r + 1),
        "so" => format!("SO_{}", 2 * r + 1),
        "spin-even" | "d" => format!("Spin_{}", 2 * r),
        "gl" => format!("GL_{r}"),
        "gsp" => format!("GSp_{}", 2 * r),
        "e" | "f" | "g" => format!("{}_{r}", f.to_ascii_uppercase()),
        _ => return Err(Error::Parse(format!("unknown family {family:?}"))),
    })
}

fn cover_from(args: &GroupArgs, degree: u64, strict: bool) -> Result<CoverSpec> {
    let rd = match (&args.group, &args.family, &args.datum) {
        (Some(g), _, _) => build_from_label(g)?,
        (None, Some(f), _) => build_from_label(&family_label(f, args.rank.unwrap_or(0))?)?,
        (None, None, Some(d)) => read_datum(d)?,
        _ => return Err(Error::Parse("give --group, --family with --rank, or --datum".into())),
    };
    let spec = if let Some(m) = &args.incarnation {
        FormSpec::Explicit(parse_matrix(m)?)
    } else if let (Some(q), Some(c)) = (args.q, args.c) {
        FormSpec::GL { q: q.into(), c: c.into() }
    } else if let (Some(kappa), Some(nu)) = (args.kappa, args.nu) {
        FormSpec::GSp { kappa: kappa.into(), nu: nu.into() }
    } else {
        FormSpec::ShortCoroot(args.t.into())
    };
    let form = weyl_invariant_form(&rd, &spec)?;
    if degree == 0 {
        return Err(Error::Cover("degree must be positive".into()));
    }
    if strict {
        CoverSpec::strict(rd, form, degree)
    } else {
        CoverSpec::new(rd, form, degree)
    }
}

fn rat(x: &BigRational) -> Value {
    rational_value(x)
}

fn run(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::DualGroup(a) => {
            let cs = cover_from(&a.group, a.degree, a.strict)?;
            let rep = center_and_tau(&cs)?;
            Ok(Output::new(rep.to_string(), rep.to_json()))
        }
        Command::Tables(a) => {
            let fam = TableFamily::parse(&a.family)?;
            if a.max_degree == 0 {
                return Err(Error::Domain("max degree must be positive".into()));
            }
            let degrees: Vec<u64> = (1..=a.max_degree).collect();
            let table = generate_table(&fam.groups(a.max_rank), &degrees)?;
            let text = if a.format == "json" { table.to_json().to_string() } else { table.to_csv() };
            Ok(Output::new(text.trim_end().to_string(), table.to_json()))
        }
        Command::Hilbert(a) => {
            let place = parse_place(&a.place)?;
            let u = parse_local_element(place, &a.u)?;
            let v = parse_local_element(place, &a.v)?;
            let k = hilbert_n(&u, &v, a.degree)?;
            let text = if a.degree == 2 { if k == 1 { "-1".to_string() } else { "1".to_string() } } else { k.to_string() };
            Ok(Output::new(
                text,
                json!({"place": place.to_string(), "u": a.u, "v": a.v, "n": a.degree, "index": k,
                       "value": if a.degree == 2 { json!(if k == 1 { -1 } else { 1 }) } else { Value::Null }}),
            ))
        }
        Command::Reciprocity(a) => {
            let (u, v) = (parse_rational(&a.u)?, parse_rational(&a.v)?);
            let rep = reciprocity_check(&u, &v)?;
            let mut text: Vec<String> = rep.places.iter().map(|(p, s)| format!("{p}: {s}")).collect();
            text.push(format!("product: {}", rep.product));
            let mut out = Output::new(text.join("\n"), rep.to_json());
            out.ok = rep.product == 1;
            Ok(out)
        }
        Command::Metagalois(a) => {
            let place = parse_place(&a.place)?;
            let model = MetaGaloisModel::new(place)?;
            let cert = metagalois_split_witness(place)?;
            let violation = model.cocycle_violation();
            let orders: Vec<usize> =
                (0..model.reps.len()).map(|c| model.order(MetaElement { class: c, eps: 1 })).collect();
            let text = format!(
                "square classes: {}\ncocycle identity: {}\nelement orders: {:?}\n{cert}",
                model.reps.len(),
                if violation.is_none() { "holds" } else { "fails" },
                orders
            );
            let mut out = Output::new(
                text,
                json!({"place": place.to_string(), "classes": model.reps.len(), "cocycle_ok": violation.is_none(),
                       "orders": orders, "h": model.h, "certificate": cert.to_json()}),
            );
            out.ok = violation.is_none();
            Ok(out)
        }
        Command::TorusCenter(a) => {
            let cover = TorusCover::new(parse_matrix(&a.incarnation)?, a.degree, a.prime)?;
            let rep = center_of_cover(&cover)?;
            let text = format!(
                "group order {}, center order {}, predicted {}, {}{}",
                rep.group_order,
                rep.center_order,
                rep.predicted_order,
                if rep.agrees { "agrees" } else { "DISAGREES" },
                if rep.abelian { ", abelian" } else { "" }
            );
            let mut json = rep.to_json();
            json["sharp"] = json!(cover.sharp);
            let mut out = Output::new(text, json);
            out.ok = rep.agrees;
            Ok(out)
        }
        Command::BasisChange(a) => {
            let c = parse_matrix(&a.incarnation)?;
            let g = parse_matrix(&a.change)?;
            let u = parse_local_element(parse_place(&a.place)?, &a.u)?;
            let tw = basis_change_twist(&c, &g, &u, a.degree)?;
            let text = format!(
                "exponents {:?}, chi(u) = {}, twist {:?}, involutive: {}",
                tw.exponents, tw.chi, tw.twist, tw.involutive
            );
            let mut out = Output::new(text, tw.to_json());
            out.ok = tw.involutive;
            Ok(out)
        }
        Command::ThetaSharp(a) => {
            let cover = TorusCover::new(parse_matrix(&a.incarnation)?, a.degree, a.prime)?;
            let place = Place::padic(a.prime)?;
            let u = parse_local_element(place, &a.u)?;
            let v = parse_local_element(place, &a.v)?;
            let g: Option<IntMatrix> = a.change.as_deref().map(parse_matrix).transpose()?;
            let rep = theta_sharp_compare(&cover, &u, &v, g.as_ref())?;
            let text = format!(
                "lhs {:?}, rhs {:?}, equal: {}{}",
                rep.lhs,
                rep.rhs,
                rep.equal,
                rep.basis_invariant.map_or(String::new(), |b| format!(", basis invariant: {b}"))
            );
            let mut out = Output::new(text, rep.to_json());
            out.ok = rep.equal && rep.basis_invariant != Some(false);
            Ok(out)
        }
        Command::OrbitTransfer(a) => {
            let case = FrobeniusCase::parse(&a.case)?;
            let cs = case.cover(a.degree)?;
            let rep = unramified_orbit_transfer(&cs, a.m, a.search)?;
            let status = if rep.inconclusive > 0 {
                "inconclusive"
            } else if rep.non_injective > 0 {
                "not injective"
            } else {
                "bijection"
            };
            let text = format!(
                "{}: {} target orbits, {} source orbits, m' = {}: {status}",
                case.name(),
                rep.target_orbits,
                rep.source_orbits,
                rep.m_prime
            );
            let mut json = rep.to_json();
            json["case"] = json!(case.name());
            let mut out = Output::new(text, json);
            out.ok = rep.bijective();
            Ok(out)
        }
        Command::RealKappa(a) => {
            let form = bdcover::covers::QuadraticForm::new(parse_matrix(&a.incarnation)?)?;
            let cover = RealTorusCover::new(form, parse_rational_vector(&a.eta)?)?;
            let kappa = kappa_from_invariants(&cover);
            let text = kappa.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
            Ok(Output::new(text, json!({"kappa": kappa.iter().map(rat).collect::<Vec<_>>()})))
        }
        Command::DiscreteSeries(a) => {
            let cs = cover_from(&a.group, a.degree, false)?;
            let kappa = parse_rational_vector(&a.kappa_vec)?;
            let radius = parse_rational(&a.radius)?;
            let input = DiscreteSeriesInput::from_cover(&cs, kappa, radius)?;
            let choice = LatticeChoice::parse(&a.lattice)?;
            let orbits = ds_parameter_orbits(&input, choice)?;
            let reps: Vec<String> = orbits
                .orbits
                .iter()
                .map(|o| format!("({})", o.rep.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            let mut text = format!("{} orbits in kappa + rho + {}: {}", reps.len(), choice.name(), reps.join(" "));
            let mut json = orbits.to_json();
            if a.fibers {
                let fibers = ds_fiber_report(&input)?;
                text.push_str(&format!("\nfiber sizes: {:?}", fibers.sizes()));
                json["fibers"] = fibers.to_json()["fibers"].clone();
            }
            Ok(Output::new(text, json))
        }
        Command::Validate(a) => {
            let rd = read_datum(&a.datum)?;
            match validate(&rd) {
                Ok(()) => Ok(Output::new(
                    format!("valid: {} roots, rank {}", rd.roots.len(), rd.x_rank),
                    json!({"valid": true, "roots": rd.roots.len(), "rank": rd.x_rank}),
                )),
                Err(v) => {
                    let mut out = Output::new(
                        format!("invalid: {v}"),
                        json!({"valid": false, "violation": v.to_string(),
                               "witness": v.witness}),
                    );
                    out.ok = false;
                    Ok(out)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            let text = if cli.json { serde_json::to_string_pretty(&out.json).expect("serializable") } else { out.text };
            // A closed pipe is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
