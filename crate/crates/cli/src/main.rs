//! Command-line frontend: parse workspace files, dispatch computations,
//! emit deterministic JSON or human-readable reports, and run the
//! built-in verification suites.
//!
//! Exit codes: 0 on success, 1 on domain or verification errors, 2 on
//! argument/parse errors.

use std::collections::BTreeMap;
use std::process::ExitCode;

use serde_json::{json, Value};

use superquad::manin;
use superquad::quadratic::Idempotent;
use superquad::schema::{algebra_to_dto, rat_string, SchemaError, Workspace};
use superquad::verify;
use superquad::{Error, QAlgebra, QAlgebraMatrix, Rat, DEFAULT_SIZE_CAP};

const USAGE: &str = "superquad <command> [flags]

commands:
  info        --input FILE [--object NAME]
  hilbert     --input FILE --object NAME --max-degree N [--size-cap N]
  product     --input FILE --op tensor|gtensor|white|black|coproduct --lhs A --rhs B
  dual        --input FILE --object A
  cohom       --input FILE --b B --a A          (computes cohom(B, A) = A • B^!)
  universal   --input FILE --b NAME [--btilde NAME]
  check-manin --input FILE --matrix M --b NAME [--btilde NAME]
  check-mult  --input FILE --matrix M --host H
  verify      [--seed N] [--fixtures N] [--dims N]

flags:
  --output json|text   (default json)
  --input FILE         workspace file
  --seed N             PRNG seed for verify (default 42)
  --max-degree N       highest degree for hilbert (default 4)
  --size-cap N         graded-component ambient cap (default 20000)
";

struct CliError {
    exit: u8,
    message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError {
            exit: 2,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        CliError {
            exit: 1,
            message: message.into(),
        }
    }
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        CliError::parse(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::domain(e.to_string())
    }
}

struct Flags {
    values: BTreeMap<String, String>,
}

impl Flags {
    fn parse(args: &[String]) -> Result<Flags, CliError> {
        let mut values = BTreeMap::new();
        let mut it = args.iter();
        while let Some(arg) = it.next() {
            let Some(key) = arg.strip_prefix("--") else {
                return Err(CliError::parse(format!(
                    "unexpected argument {arg:?}\n\n{USAGE}"
                )));
            };
            let value = it
                .next()
                .ok_or_else(|| CliError::parse(format!("flag --{key} needs a value")))?;
            values.insert(key.to_string(), value.clone());
        }
        Ok(Flags { values })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn require(&self, key: &str) -> Result<&str, CliError> {
        self.get(key)
            .ok_or_else(|| CliError::parse(format!("missing required flag --{key}")))
    }

    fn numeric(&self, key: &str, default: u64) -> Result<u64, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| CliError::parse(format!("flag --{key} expects a number, got {v:?}"))),
        }
    }

    fn text_output(&self) -> Result<bool, CliError> {
        match self.get("output").unwrap_or("json") {
            "json" => Ok(false),
            "text" => Ok(true),
            other => Err(CliError::parse(format!(
                "--output must be json or text, got {other:?}"
            ))),
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit)
        }
    }
}

fn run(args: &[String]) -> Result<(), CliError> {
    let Some(command) = args.first() else {
        return Err(CliError::parse(USAGE));
    };
    let flags = Flags::parse(&args[1..])?;
    match command.as_str() {
        "info" => cmd_info(&flags),
        "hilbert" => cmd_hilbert(&flags),
        "product" => cmd_product(&flags),
        "dual" => cmd_dual(&flags),
        "cohom" => cmd_cohom(&flags),
        "universal" => cmd_universal(&flags),
        "check-manin" => cmd_check_manin(&flags),
        "check-mult" => cmd_check_mult(&flags),
        "verify" => cmd_verify(&flags),
        other => Err(CliError::parse(format!(
            "unknown command {other:?}\n\n{USAGE}"
        ))),
    }
}

fn load_workspace(flags: &Flags) -> Result<Workspace, CliError> {
    let path = flags.require("input")?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {path:?}: {e}")))?;
    Ok(Workspace::from_json(&text)?)
}

fn get_algebra<'w>(ws: &'w Workspace, name: &str) -> Result<&'w QAlgebra, CliError> {
    ws.algebras
        .get(name)
        .ok_or_else(|| CliError::parse(format!("unknown algebra {name:?}")))
}

fn get_idempotent<'w>(ws: &'w Workspace, name: &str) -> Result<&'w Idempotent<Rat>, CliError> {
    ws.idempotents
        .get(name)
        .ok_or_else(|| CliError::parse(format!("unknown idempotent {name:?}")))
}

fn emit(value: Value, text: String, want_text: bool) -> Result<(), CliError> {
    if want_text {
        println!("{text}");
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable output")
        );
    }
    Ok(())
}

fn parity_word(bit: u8) -> &'static str {
    if bit == 0 {
        "even"
    } else {
        "odd"
    }
}

fn relation_display(algebra: &QAlgebra, row: &[Rat]) -> String {
    let names = algebra.names();
    let d = algebra.gen_count();
    let mut out = String::new();
    for (flat, c) in row.iter().enumerate() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let term = format!("{}*{}", names[flat / d], names[flat % d]);
        if out.is_empty() {
            if c == &superquad::rat(1) {
                out = term;
            } else {
                out = format!("{} {}", rat_string(c), term);
            }
        } else if c == &superquad::rat(1) {
            out = format!("{out} + {term}");
        } else if c == &superquad::rat(-1) {
            out = format!("{out} - {term}");
        } else if num_traits::Signed::is_negative(c) {
            out = format!("{out} - {} {}", rat_string(&-c.clone()), term);
        } else {
            out = format!("{out} + {} {}", rat_string(c), term);
        }
    }
    out
}

fn algebra_report(name: &str, algebra: &QAlgebra) -> (Value, String) {
    let dto = algebra_to_dto(algebra);
    let parities: Vec<String> = algebra
        .gen_format()
        .bits()
        .iter()
        .map(|&b| parity_word(b).to_string())
        .collect();
    let mut text = format!(
        "{name}: {} generators ({}), {} relation{}",
        algebra.gen_count(),
        parities.join(", "),
        algebra.relations().dim(),
        if algebra.relations().dim() == 1 {
            ""
        } else {
            "s"
        },
    );
    for r in algebra.relations().basis_rows() {
        text.push_str(&format!("\n  {} = 0", relation_display(algebra, &r)));
    }
    let value = json!({
        "object": name,
        "kind": "algebra",
        "generators": algebra.gen_count(),
        "relation_count": algebra.relations().dim(),
        "presentation": serde_json::to_value(&dto).expect("algebra dto"),
    });
    (value, text)
}

fn cmd_info(flags: &Flags) -> Result<(), CliError> {
    let ws = load_workspace(flags)?;
    let want_text = flags.text_output()?;
    let select = flags.get("object");
    let wants = |name: &str| select.is_none_or(|s| s == name);
    let mut reports: Vec<(Value, String)> = Vec::new();
    for (name, algebra) in &ws.algebras {
        if wants(name) {
            reports.push(algebra_report(name, algebra));
        }
    }
    for (name, b) in &ws.idempotents {
        if wants(name) {
            let value = json!({
                "object": name,
                "kind": "idempotent",
                "format": b.format().bits(),
                "rank": b.matrix().rank(),
            });
            let text = format!(
                "{name}: idempotent on format {:?}, rank {}",
                b.format().bits(),
                b.matrix().rank()
            );
            reports.push((value, text));
        }
    }
    for (name, m) in &ws.matrices {
        if wants(name) {
            let value = json!({
                "object": name,
                "kind": "matrix",
                "row_format": m.row_format,
                "col_format": m.col_format,
                "ambient": m.ambient,
            });
            let text = format!(
                "{name}: matrix {:?} x {:?} over {}",
                m.row_format, m.col_format, m.ambient
            );
            reports.push((value, text));
        }
    }
    for (name, host) in &ws.bialgebras {
        if wants(name) {
            let value = json!({
                "object": name,
                "kind": "bialgebra",
                "generators": host.algebra().gen_count(),
                "relation_count": host.algebra().relations().dim(),
            });
            let text = format!(
                "{name}: bialgebra on {} generators, {} relations",
                host.algebra().gen_count(),
                host.algebra().relations().dim()
            );
            reports.push((value, text));
        }
    }
    for (name, module) in &ws.modules {
        if wants(name) {
            let value = json!({
                "object": name,
                "kind": "module",
                "algebra_dim": module.algebra_format().dim(),
                "space_dim": module.space_format().dim(),
            });
            let text = format!(
                "{name}: module of a {}-dimensional algebra on a {}-dimensional space",
                module.algebra_format().dim(),
                module.space_format().dim()
            );
            reports.push((value, text));
        }
    }
    if reports.is_empty() {
        return Err(CliError::parse(format!(
            "object {:?} not found",
            select.unwrap_or("")
        )));
    }
    let value = Value::Array(reports.iter().map(|(v, _)| v.clone()).collect());
    let text = reports
        .into_iter()
        .map(|(_, t)| t)
        .collect::<Vec<_>>()
        .join("\n");
    emit(value, text, want_text)
}

fn cmd_hilbert(flags: &Flags) -> Result<(), CliError> {
    let ws = load_workspace(flags)?;
    let name = flags.require("object")?;
    let algebra = get_algebra(&ws, name)?;
    let max_degree = flags.numeric("max-degree", 4)? as usize;
    let cap = flags.numeric("size-cap", DEFAULT_SIZE_CAP as u64)? as usize;
    let h = algebra.hilbert(max_degree, cap)?;
    emit(
        json!({ "object": name, "hilbert": h }),
        format!("{name}: h = {h:?}"),
        flags.text_output()?,
    )
}

fn cmd_product(flags: &Flags) -> Result<(), CliError> {
    let ws = load_workspace(flags)?;
    let lhs = get_algebra(&ws, flags.require("lhs")?)?;
    let rhs = get_algebra(&ws, flags.require("rhs")?)?;
    let op = flags.require("op")?;
    let result = match op {
        "tensor" => lhs.tensor(rhs),
        "gtensor" => lhs.graded_tensor(rhs),
        "white" => lhs.white(rhs),
        "black" => lhs.black(rhs),
        "coproduct" => lhs.coproduct(rhs),
        other => return Err(CliError::parse(format!("unknown product op {other:?}"))),
    };
    let (value, text) = algebra_report(&format!("{op}-product"), &result);
    emit(value, text, flags.text_output()?)
}

fn cmd_dual(flags: &Flags) -> Result<(), CliError> {
    let ws = load_workspace(flags)?;
    let name = flags.require("object")?;
    let algebra = get_algebra(&ws, name)?;
    let (value, text) = algebra_report(&format!("{name}!"), &algebra.koszul_dual());
    emit(value, text, flags.text_output()?)
}

fn cmd_cohom(flags: &Flags) -> Result<(), CliError> {
    let ws = load_workspace(flags)?;
    let b = get_algebra(&ws, flags.require("b")?)?;
    let a = get_algebra(&ws, flags.require("a")?)?;
    let (value, text) = algebra_report("cohom", &manin::cohom(b, a));
    emit(value, text, flags.text_output()?)
}

fn cmd_universal(flags: &Flags) -> Result<(), CliError> {
    let ws = load_workspace(flags)?;
    let b = get_idempotent(&ws, flags.require("b")?)?;
    let bt = match flags.get("btilde") {
        Some(name) => get_idempotent(&ws, name)?,
        None => b,
    };
    let u = manin::universal_manin_algebra(b, bt);
    let (value, text) = algebra_report("universal", &u.algebra);
    emit(value, text, flags.text_output()?)
}

fn cmd_check_manin(flags: &Flags) -> Result<(), CliError> {
    let ws = load_workspace(flags)?;
    let b = get_idempotent(&ws, flags.require("b")?)?;
    let bt = match flags.get("btilde") {
        Some(name) => get_idempotent(&ws, name)?,
        None => b,
    };
    let name = flags.require("matrix")?;
    let matrix: QAlgebraMatrix = ws.resolve_matrix(name, Some((b, bt)))?;
    let verdict = manin::is_manin(&matrix, b, bt)?;
    let value = match &verdict.violation {
        None => json!({ "manin": true, "violation": null }),
        Some(v) => json!({
            "manin": false,
            "violation": {
                "s": v.s, "t": v.t, "c": v.c, "d": v.d,
                "residue": v.residue.iter()
                    .map(|(p, q, c)| json!([p, q, rat_string(c)]))
                    .collect::<Vec<_>>(),
            }
        }),
    };
    let text = match &verdict.violation {
        None => "manin: true".to_string(),
        Some(v) => {
            format!(
                "manin: false (first violation at s={} t={} c={} d={})",
                v.s, v.t, v.c, v.d
            )
        }
    };
    emit(value, text, flags.text_output()?)
}

fn cmd_check_mult(flags: &Flags) -> Result<(), CliError> {
    let ws = load_workspace(flags)?;
    let host_name = flags.require("host")?;
    let host = ws
        .bialgebras
        .get(host_name)
        .ok_or_else(|| CliError::parse(format!("unknown bialgebra {host_name:?}")))?;
    let matrix = ws.resolve_matrix(flags.require("matrix")?, None)?;
    let ok = superquad::quantum::check_multiplicative(&matrix, host)?;
    emit(
        json!({ "multiplicative": ok }),
        format!("multiplicative: {ok}"),
        flags.text_output()?,
    )
}

fn cmd_verify(flags: &Flags) -> Result<(), CliError> {
    let seed = flags.numeric("seed", 42)?;
    let fixtures = flags.numeric("fixtures", 50)? as usize;
    let dims = flags.numeric("dims", 2)? as usize;
    let reports = verify::run_all(seed, fixtures, dims);
    let all_passed = reports.iter().all(|r| r.passed());
    let value = json!({
        "seed": seed,
        "fixtures": fixtures,
        "max_dim": dims,
        "suites": reports.iter().map(|r| json!({
            "name": r.name,
            "fixtures": r.fixtures,
            "passed": r.passed(),
            "failures": r.failures,
        })).collect::<Vec<_>>(),
        "passed": all_passed,
    });
    let text = reports
        .iter()
        .map(|r| {
            format!(
                "{}: {} ({} fixtures)",
                r.name,
                if r.passed() { "PASS" } else { "FAIL" },
                r.fixtures
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    emit(value, format!("seed {seed}\n{text}"), flags.text_output()?)?;
    if all_passed {
        Ok(())
    } else {
        Err(CliError::domain("verification suites failed"))
    }
}
