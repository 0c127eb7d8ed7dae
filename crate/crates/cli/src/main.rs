use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Number, Value};

use quartic_census::counting::{corollary_census, count_classes, ClassCountReport};
use quartic_census::factor::is_irreducible_quartic;
use quartic_census::galois::classify;
use quartic_census::quadarith::{
    fundamental_t, negative_pell_criterion, orthogonal_group_any, pell_least, r_f, reduce_quad,
};
use quartic_census::quadlattice::{default_chart, lattice_basis, lattice_det, predicted_det};
use quartic_census::resolvent::{height, stabilizer_quadratics};
use quartic_census::verify::{run_suite, VerifyConfig, SUITES};
use quartic_census::{Chart, Error, Mat2Z, QuadZ, QuarticZ, Rational};

#[derive(Parser)]
#[command(name = "qc", version, about = "Binary quartic forms with small Galois group")]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "QC_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants, stabilizers and Galois class of a quartic a4 a3 a2 a1 a0
    #[command(allow_negative_numbers = true)]
    Analyze { coeffs: Vec<i64> },
    /// Stabilizing quadratics (omega, f) of a quartic
    #[command(allow_negative_numbers = true)]
    Stabilizers { coeffs: Vec<i64> },
    /// HNF basis of the lattice of quartics stabilized by f = a b c
    #[command(allow_negative_numbers = true)]
    Lattice {
        coeffs: Vec<i64>,
        /// 1 or 2; default picks chart 1 when alpha != 0
        #[arg(long)]
        chart: Option<u8>,
    },
    /// O_f(Z) for f = a b c
    #[command(allow_negative_numbers = true)]
    Orthogonal { coeffs: Vec<i64> },
    /// Least solution of u^2 - D v^2 = +-4
    Pell { d: u64 },
    /// Negative Pell solvability against the divisible-shape criterion
    NegPell { alpha: i64, beta: i64 },
    /// Class counts in S_f(X) for f = a b c
    #[command(allow_negative_numbers = true)]
    Count {
        a: i64,
        b: i64,
        c: i64,
        x: i64,
        #[arg(long, value_enum, default_value = "json")]
        report: Report,
    },
    /// Counts for x^2+y^2, x^2+xy, x^2+2xy against X^{3/2} log X / 9
    Census {
        x: i64,
        #[arg(long, value_enum, default_value = "json")]
        report: Report,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        dmax: Option<u64>,
        #[arg(long)]
        x: Option<i64>,
        /// quadratic form as a,b,c
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        f: Option<Vec<i64>>,
        #[arg(long)]
        samples: Option<usize>,
    },
}

enum Fail {
    Domain(String),
    Usage(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Domain(e.to_string())
    }
}

type Out = Result<Value, Fail>;

fn big(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

fn rat(q: &Rational) -> Value {
    if q.is_integer() {
        big(q.numer())
    } else {
        Value::String(q.to_string())
    }
}

/// Six significant digits.
fn sig6(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(format!("{x:.5e}").parse::<Number>().expect("float literal"))
}

fn quad_json(f: &QuadZ) -> Value {
    json!([big(&f.a), big(&f.b), big(&f.c)])
}

fn mat_json(m: &Mat2Z) -> Value {
    json!([[big(&m.t1), big(&m.t2)], [big(&m.t3), big(&m.t4)]])
}

fn quartic(coeffs: &[i64]) -> Result<QuarticZ, Fail> {
    let c: [i64; 5] = coeffs
        .try_into()
        .map_err(|_| Fail::Usage(format!("expected 5 coefficients, got {}", coeffs.len())))?;
    Ok(QuarticZ::from_i64(c))
}

fn quad(coeffs: &[i64]) -> Result<QuadZ, Fail> {
    let [a, b, c]: [i64; 3] = coeffs
        .try_into()
        .map_err(|_| Fail::Usage(format!("expected 3 coefficients, got {}", coeffs.len())))?;
    Ok(QuadZ::from_i64(a, b, c))
}

fn stabilizer_list(q: &QuarticZ) -> Result<Vec<Value>, Fail> {
    let i3 = BigInt::from(3) * q.invariant_i();
    Ok(stabilizer_quadratics(q)?
        .iter()
        .map(|(w, g)| {
            let k = &i3 - w * w;
            json!({
                "omega": big(w),
                "f": quad_json(g),
                "L": big(w),
                "K": big(&k),
                "H_f": big(&height(w, &k)),
            })
        })
        .collect())
}

fn analyze(coeffs: &[i64]) -> Out {
    let q = quartic(coeffs)?;
    if q.disc().is_zero() {
        return Err(Error::Degenerate.into());
    }
    let bs = Rational::new(q.bs_height_times4(), BigInt::from(4));
    Ok(json!({
        "F": coeffs,
        "I": big(&q.invariant_i()),
        "J": big(&q.invariant_j()),
        "disc": big(&q.disc()),
        "H_BS": rat(&bs),
        "irreducible": is_irreducible_quartic(&q),
        "stabilizers": stabilizer_list(&q)?,
        "galois": classify(&q)?.to_string(),
    }))
}

fn stabilizers(coeffs: &[i64]) -> Out {
    let q = quartic(coeffs)?;
    if q.disc().is_zero() {
        return Err(Error::Degenerate.into());
    }
    Ok(json!({ "F": coeffs, "stabilizers": stabilizer_list(&q)? }))
}

fn lattice(coeffs: &[i64], chart: Option<u8>) -> Out {
    let f = quad(coeffs)?;
    if f.disc().is_zero() {
        return Err(Error::Degenerate.into());
    }
    let w = match chart {
        Some(w) => Chart::from_index(w).map_err(|e| Fail::Usage(e.to_string()))?,
        None => default_chart(&f),
    };
    let basis = lattice_basis(&f, w)?;
    Ok(json!({
        "f": quad_json(&f),
        "chart": w.index(),
        "basis": basis.iter().map(|r| r.iter().map(big).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "det": big(&lattice_det(&f, w)?),
        "predicted_det": rat(&predicted_det(&f, w)?),
    }))
}

fn orthogonal(coeffs: &[i64]) -> Out {
    let f = quad(coeffs)?;
    let g = orthogonal_group_any(&f)?;
    let red = reduce_quad(&f)?;
    Ok(json!({
        "f": quad_json(&f),
        "structure": format!("{:?}", g.structure),
        "finite_elements": g.finite_elements.iter().map(mat_json).collect::<Vec<_>>(),
        "generator": g.infinite_generator.as_ref().map(mat_json),
        "coset": g.coset.as_ref().map(mat_json),
        "canonical": quad_json(&red.form),
        "r_f": r_f(&red.form)?,
    }))
}

fn pell(d: u64) -> Out {
    let db = BigInt::from(d);
    let s = pell_least(&db)?;
    Ok(json!({
        "D": d,
        "u": big(&s.u),
        "v": big(&s.v),
        "norm": s.sign,
        "t_D": sig6(fundamental_t(&db)?),
    }))
}

fn neg_pell(alpha: i64, beta: i64) -> Out {
    let (p, s) = negative_pell_criterion(alpha, beta)?;
    Ok(json!({
        "alpha": alpha,
        "beta": beta,
        "D": beta * beta + 4 * alpha * alpha,
        "negative_pell": p,
        "divisible_shape": s,
        "agree": p == s,
    }))
}

fn report_json(r: &ClassCountReport) -> Value {
    let mut v = serde_json::to_value(r).expect("plain struct");
    let obj = v.as_object_mut().unwrap();
    obj.insert("main_term".into(), sig6(r.main_term));
    obj.insert("ratio".into(), sig6(r.ratio()));
    v
}

fn count(a: i64, b: i64, c: i64, x: i64, report: Report) -> Out {
    let f = QuadZ::from_i64(a, b, c);
    if x < 0 {
        return Err(Fail::Usage(format!("X must be nonnegative, got {x}")));
    }
    if f.disc().is_zero() {
        return Err(Error::Degenerate.into());
    }
    if !f.is_primitive() {
        return Err(Error::NotPrimitive.into());
    }
    let red = reduce_quad(&f)?;
    if red.form != f {
        eprintln!(
            "note: {f} replaced by its canonical form {} (f_T = {} * canonical with T = {})",
            red.form, red.sign, red.transform
        );
    }
    let r = count_classes(&red.form, x)?;
    match report {
        Report::Json => {
            let mut v = report_json(&r);
            if red.form != f {
                let o = v.as_object_mut().unwrap();
                o.insert("input_f".into(), quad_json(&f));
                o.insert("transform".into(), mat_json(&red.transform));
            }
            Ok(v)
        }
        Report::Csv => {
            println!("{}", ClassCountReport::CSV_HEADER);
            println!("{}", r.csv_row());
            Ok(Value::Null)
        }
    }
}

fn census(x: i64, report: Report) -> Out {
    if x < 10 {
        return Err(Fail::Usage(format!("census needs X >= 10, got {x}")));
    }
    let c = corollary_census(x)?;
    match report {
        Report::Json => {
            let mut o = Map::new();
            o.insert("X".into(), json!(c.x));
            o.insert("reports".into(), Value::Array(c.reports.iter().map(report_json).collect()));
            o.insert("total".into(), json!(c.total));
            o.insert("predicted".into(), sig6(c.predicted));
            o.insert("ratio".into(), sig6(c.total as f64 / c.predicted));
            Ok(Value::Object(o))
        }
        Report::Csv => {
            println!("{}", ClassCountReport::CSV_HEADER);
            for r in &c.reports {
                println!("{}", r.csv_row());
            }
            Ok(Value::Null)
        }
    }
}

fn verify(suite: &str, cfg: VerifyConfig) -> Result<(Value, bool), Fail> {
    let rep = run_suite(suite, &cfg)?;
    let passed = rep.passed;
    let mut v = serde_json::to_value(&rep).expect("plain struct");
    if let Some(rs) = v.get_mut("reports") {
        *rs = Value::Array(rep.reports.iter().map(report_json).collect());
    }
    Ok((v, passed))
}

fn run(cli: Cli) -> Result<bool, Fail> {
    let value = match cli.cmd {
        Cmd::Analyze { coeffs } => analyze(&coeffs)?,
        Cmd::Stabilizers { coeffs } => stabilizers(&coeffs)?,
        Cmd::Lattice { coeffs, chart } => lattice(&coeffs, chart)?,
        Cmd::Orthogonal { coeffs } => orthogonal(&coeffs)?,
        Cmd::Pell { d } => pell(d)?,
        Cmd::NegPell { alpha, beta } => neg_pell(alpha, beta)?,
        Cmd::Count { a, b, c, x, report } => count(a, b, c, x, report)?,
        Cmd::Census { x, report } => census(x, report)?,
        Cmd::Verify { suite, seed, dmax, x, f, samples } => {
            let f = match f {
                None => None,
                Some(v) => Some(<[i64; 3]>::try_from(v.as_slice()).map_err(|_| {
                    Fail::Usage("--f takes three comma-separated integers".into())
                })?),
            };
            let (v, passed) = verify(&suite, VerifyConfig { seed, dmax, x, f, samples })?;
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            return Ok(passed);
        }
    };
    if !value.is_null() {
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool");
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail::Domain(msg)) => {
            println!("{}", json!({ "error": msg }));
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
