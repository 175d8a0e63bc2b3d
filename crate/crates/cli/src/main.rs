mod args;
mod output;

use args::{BranchArg, Cli, Command, Direction, F4Mode, Form, Format, KinArgs, SeriesArgs, SuiteArg};
use clap::Parser;
use output::{emit, num, Record};
use serde_json::Value;
use std::process::ExitCode;
use trivertex::checks::{run_suite, CheckConfig, Suite};
use trivertex::oracle::triangle_feynman_param;
use trivertex::resistor::{delta_to_y, y_to_delta, DeltaNetwork, YNetwork};
use trivertex::special::{f4_continue, f4_continue_branch, f4_rows, f4_series};
use trivertex::vertex::{paper_form_on_branch, reduce_four_to_three, triangle_four_term, TriangleValue};
use trivertex::{Branch, Error, F4Params, Kinematics, OmegaParam, Point2, SeriesControl};

const EXIT_INPUT: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_CONVERGENCE: u8 = 3;
const EXIT_SUITE: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    if e.is_domain() {
        EXIT_DOMAIN
    } else if e.is_convergence() {
        EXIT_CONVERGENCE
    } else {
        EXIT_INPUT
    }
}

fn kind(code: u8) -> &'static str {
    match code {
        EXIT_DOMAIN => "domain",
        EXIT_CONVERGENCE => "convergence",
        _ => "input",
    }
}

/// Records to print plus the exit status they imply.
struct Outcome {
    records: Vec<Record>,
    code: u8,
}

impl Outcome {
    fn ok(r: Record) -> Self {
        Outcome { records: vec![r], code: 0 }
    }
}

fn error_record(e: &Error) -> Record {
    let code = exit_code(e);
    let mut r = Record::new();
    r.s("error", kind(code)).s("message", e.to_string());
    r
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    let csv = cli.format == Format::Csv;
    let outcome = match run(cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Err(e) = emit(&outcome.records, csv) {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    ExitCode::from(outcome.code)
}

fn run(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::EvalF4(a) => {
            let p = F4Params::new(a.a, a.b, a.c1, a.c2)?;
            let pt = Point2::new(a.x, a.y)?;
            let ctrl = control(a.series)?;
            eval_f4(p, pt, a.mode, a.branch.map(branch), ctrl).map(Outcome::ok)
        }
        Command::Triangle(a) => {
            let omega = OmegaParam::new(a.omega)?;
            let ctrl = control(a.series)?;
            for_each_kin(&a.kin, |kin| triangle(kin, omega, a.form, branch(a.branch), ctrl))
        }
        Command::Oracle(a) => for_each_kin(&a.kin, |kin| {
            let q = triangle_feynman_param(kin, a.quad_tol)?;
            let mut r = kin_record(kin);
            r.f("value", q.value).f("err", q.err).put("regions", q.regions.into()).put("evals", q.evals.into());
            Ok(r)
        }),
        Command::Ydelta(a) => {
            let [r1, r2, r3] = [a.resistances[0], a.resistances[1], a.resistances[2]];
            let mut r = Record::new();
            match a.to {
                Direction::Delta => {
                    let d = y_to_delta(YNetwork::new(r1, r2, r3)?)?;
                    r.s("to", "delta").f("ra", d.ra).f("rb", d.rb).f("rc", d.rc);
                }
                Direction::Y => {
                    let y = delta_to_y(DeltaNetwork::new(r1, r2, r3)?)?;
                    r.s("to", "y").f("r1", y.r1).f("r2", y.r2).f("r3", y.r3);
                }
            }
            Ok(Outcome::ok(r))
        }
        Command::Check(a) => {
            let mut cfg = CheckConfig::default();
            if let Some(seed) = a.seed {
                cfg.seed = seed;
            }
            let reports = run_suite(suite(a.suite), &cfg);
            let failed = reports.iter().any(|c| !c.passed);
            let records = reports
                .iter()
                .map(|c| {
                    let mut r = Record::new();
                    r.put("criterion", c.id.into())
                        .s("title", c.title)
                        .s("status", if c.passed { "PASS" } else { "FAIL" })
                        .s("summary", c.summary.clone());
                    r
                })
                .collect();
            Ok(Outcome { records, code: if failed { EXIT_SUITE } else { 0 } })
        }
    }
}

fn control(s: SeriesArgs) -> Result<SeriesControl, Error> {
    Ok(SeriesControl::new(s.tol, s.max_terms)?)
}

fn branch(b: BranchArg) -> Branch {
    match b {
        BranchArg::Upper => Branch::Upper,
        BranchArg::Lower => Branch::Lower,
    }
}

fn suite(s: SuiteArg) -> Suite {
    match s {
        SuiteArg::All => Suite::All,
        SuiteArg::Special => Suite::Special,
        SuiteArg::Vertex => Suite::Vertex,
        SuiteArg::Oracle => Suite::Oracle,
        SuiteArg::Chain => Suite::Chain,
        SuiteArg::Network => Suite::Network,
    }
}

fn eval_f4(
    p: F4Params,
    pt: Point2,
    mode: F4Mode,
    br: Option<Branch>,
    ctrl: SeriesControl,
) -> Result<Record, Error> {
    let mut r = Record::new();
    let domain = match mode {
        F4Mode::Series => "series",
        F4Mode::Continued => "continued",
        F4Mode::Rows => "rows",
    };
    match (mode, br) {
        (F4Mode::Series, _) => {
            let v = f4_series(p, pt, ctrl)?;
            r.f("value", v.value).f("err", v.err).put("terms_used", v.terms_used.into());
        }
        (F4Mode::Continued, None) => {
            let v = f4_continue(p, pt, ctrl)?;
            r.f("value", v.value).f("err", v.err).put("terms_used", v.terms_used.into());
        }
        (F4Mode::Continued, Some(b)) => {
            let v = f4_continue_branch(p, pt, b, ctrl)?;
            r.f("value", v.value.re).f("value_im", v.value.im).f("err", v.err);
            r.put("terms_used", v.terms_used.into());
        }
        (F4Mode::Rows, b) => {
            let v = f4_rows(p, pt, b.unwrap_or(Branch::Upper), ctrl)?;
            r.f("value", v.value.re).f("value_im", v.value.im).f("err", v.err);
            r.put("terms_used", v.terms_used.into());
        }
    }
    r.s("domain", domain);
    Ok(r)
}

fn triangle(
    kin: &Kinematics,
    omega: OmegaParam,
    form: Form,
    br: Branch,
    ctrl: SeriesControl,
) -> Result<Record, Error> {
    let (name, v): (&str, TriangleValue) = match form {
        Form::Four => ("four", triangle_four_term(kin, omega, ctrl)?),
        Form::Reduced => ("reduced", reduce_four_to_three(kin, omega, ctrl)?),
        Form::Paper3 => ("paper3", paper_form_on_branch(kin, omega, br, ctrl)?),
    };
    let mut r = kin_record(kin);
    r.f("omega", omega.value()).s("form", name);
    r.f("total", v.value).f("total_im", v.value_im).f("err", v.err).f("pi_factor", v.pi_factor);
    let max_terms = v.terms.iter().map(|t| t.terms_used).max().unwrap_or(0);
    r.put("max_terms_used", max_terms.into());
    let terms: Vec<Value> = v
        .terms
        .iter()
        .map(|t| {
            let mut tr = Record::new();
            tr.s("label", t.term.label)
                .s("scale", t.term.scale.name())
                .f("coeff", t.term.coeff.re)
                .f("coeff_im", t.term.coeff.im)
                .f("weight", t.term.weight)
                .put("f4_params", Value::Array([t.term.f4.a, t.term.f4.b, t.term.f4.c1, t.term.f4.c2].map(num).to_vec()))
                .put("f4_point", Value::Array(vec![num(t.term.point.x), num(t.term.point.y)]))
                .s("evaluation", if t.term.branch.is_some() { "continued" } else { "series" })
                .f("f4_value", t.f4_value.re)
                .f("f4_value_im", t.f4_value.im)
                .f("contribution", t.contribution.re * v.pi_factor)
                .f("contribution_im", t.contribution.im * v.pi_factor)
                .f("err", t.err * v.pi_factor)
                .put("terms_used", t.terms_used.into());
            tr.to_json()
        })
        .collect();
    r.put("n_terms", terms.len().into()).put("terms", Value::Array(terms));
    if form == Form::Paper3 {
        r.put("as_printed", Value::Bool(true));
    }
    Ok(r)
}

fn kin_record(kin: &Kinematics) -> Record {
    let mut r = Record::new();
    r.f("p2", kin.p2()).f("q2", kin.q2()).f("r2", kin.r2()).f("x", kin.x()).f("y", kin.y());
    r
}

fn kin_from_flags(k: &KinArgs) -> Result<Kinematics, Error> {
    let p2 = k.p2.ok_or_else(|| Error::InvalidInput("--p2 is required".into()))?;
    match (k.q2, k.r2, k.x, k.y) {
        (Some(q2), Some(r2), None, None) => Kinematics::new(p2, q2, r2),
        (None, None, Some(x), Some(y)) => Kinematics::from_ratios(p2, x, y),
        _ => Err(Error::InvalidInput("give either --q2 and --r2 or --x and --y".into())),
    }
}

fn kin_from_json(line: &str) -> Result<Kinematics, Error> {
    let v: Value =
        serde_json::from_str(line).map_err(|e| Error::InvalidInput(format!("bad kinematics line: {e}")))?;
    let get = |k: &str| v.get(k).and_then(Value::as_f64);
    let p2 = get("p2").ok_or_else(|| Error::InvalidInput(format!("missing p2 in {line}")))?;
    match (get("q2"), get("r2"), get("x"), get("y")) {
        (Some(q2), Some(r2), None, None) => Kinematics::new(p2, q2, r2),
        (None, None, Some(x), Some(y)) => Kinematics::from_ratios(p2, x, y),
        _ => Err(Error::InvalidInput(format!("need q2, r2 or x, y in {line}"))),
    }
}

/// Run `f` on the flag kinematics, or on every line of --kin-file. With a file,
/// failures become records and the first one sets the exit code.
fn for_each_kin<F>(k: &KinArgs, f: F) -> Result<Outcome, Error>
where
    F: Fn(&Kinematics) -> Result<Record, Error>,
{
    let Some(path) = &k.kin_file else {
        return f(&kin_from_flags(k)?).map(Outcome::ok);
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let mut out = Outcome { records: Vec::new(), code: 0 };
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let res = kin_from_json(line).and_then(|kin| f(&kin));
        match res {
            Ok(mut r) => {
                r.fields.insert(0, ("line".into(), (i + 1).into()));
                out.records.push(r);
            }
            Err(e) => {
                if out.code == 0 {
                    out.code = exit_code(&e);
                }
                let mut r = error_record(&e);
                r.fields.insert(0, ("line".into(), (i + 1).into()));
                out.records.push(r);
            }
        }
    }
    Ok(out)
}
