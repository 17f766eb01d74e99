//! Command-line front end; the binary only forwards to [`run`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::circuit::{build_full_ec_circuit, build_gadget, Circuit, Code, EcOptions, GadgetName, GadgetSpec, RoundOrder};
use crate::depth::{depth_profile, derive_ledgers, effective_r, BlockDepth, BlockLedgers, DepthProfile, DEFAULT_GAMMA};
use crate::error::Error;
use crate::faults::{check_flag_conditions, enumerate_single_faults, DecodingTable, FlagReport};
use crate::pauli::Pauli;
use crate::resources::{
    check_permitted_depth, cnot_count, estimate_runtime, gate_cost, DepthCheck, GateCost, LogicalGate, RuntimeEstimate, DEFAULT_CNOT_TIME,
    DEFAULT_DEPTH_LIMIT,
};
use crate::threshold::{curves_csv, format_sci, generate_table, optimize_x, table_csv, GateClass, TableId, ThresholdResult, DEFAULT_X_MAX};
use crate::verify::{self, CheckResult};

/// Default output directory for `tables`.
pub const OUT_DIR_ENV: &str = "STEANE_FT_OUT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "steane-ft", version, about = "Fault-path analysis and threshold estimation for flagged [[7,1,3]] error correction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate single faults through one period and print the decoding table.
    Propagate(PropagateArgs),
    /// Audit the placement of every flag gadget.
    Flags(FlagsArgs),
    /// Assumed-perfect ledgers, per-qubit fault-location counts and R coefficients.
    Depth(DepthArgs),
    /// Threshold search over the period depth x.
    Threshold(ThresholdArgs),
    /// CNOT budgets, runtime and permitted-depth check.
    Resources(ResourcesArgs),
    /// Statevector checks of the builders and the frame-engine oracle.
    Verify(VerifyArgs),
    /// Write threshold tables 1a, 1b, 2a and 2b as CSV files.
    Tables(TablesArgs),
    /// Print a built circuit in the text format.
    Circuit(CircuitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BlockArg {
    Data,
    Aux,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Grouped,
    Interleaved,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CircuitSource {
    #[arg(long, value_enum, default_value_t = BlockArg::Data)]
    pub block: BlockArg,
    /// Leave out the flag gadgets.
    #[arg(long)]
    pub no_flags: bool,
    #[arg(long, value_enum, default_value_t = OrderArg::Grouped)]
    pub order: OrderArg,
    /// Read the circuit from a text file instead of building it.
    #[arg(long, conflicts_with_all = ["block", "no_flags", "order"])]
    pub circuit: Option<PathBuf>,
}

impl CircuitSource {
    fn options(&self) -> EcOptions {
        let mut o = match self.block {
            BlockArg::Data => EcOptions::data(!self.no_flags),
            BlockArg::Aux => EcOptions::auxiliary(!self.no_flags),
        };
        o.order = match self.order {
            OrderArg::Grouped => RoundOrder::Grouped,
            OrderArg::Interleaved => RoundOrder::Interleaved,
        };
        o
    }

    fn load(&self) -> Result<Circuit, Failure> {
        match &self.circuit {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
                Ok(Circuit::parse(&text)?)
            }
            None => Ok(build_full_ec_circuit(self.options())),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct PropagateArgs {
    #[command(flatten)]
    pub source: CircuitSource,
    /// Decoded fault types to enumerate, e.g. X,Z.
    #[arg(long, value_delimiter = ',', default_values_t = vec!['X', 'Z'])]
    pub types: Vec<char>,
    /// Include neutral and non-data-side faults.
    #[arg(long)]
    pub all: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FlagsArgs {
    #[command(flatten)]
    pub source: CircuitSource,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DepthArgs {
    #[command(flatten)]
    pub source: CircuitSource,
    #[arg(long, default_value_t = DEFAULT_GAMMA)]
    pub gamma: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ThresholdArgs {
    #[arg(long, value_enum, default_value_t = BlockArg::Data)]
    pub block: BlockArg,
    /// Concatenation level; all of 1..=10 when omitted.
    #[arg(long)]
    pub k: Option<u32>,
    /// Periods before measurement, a number >= 1 or "inf".
    #[arg(long, value_parser = parse_r, default_value = "inf")]
    pub r: Periods,
    #[arg(long, value_parser = parse_gate_class, default_value = "transversal")]
    pub gate: GateClass,
    #[arg(long, default_value_t = DEFAULT_X_MAX)]
    pub x_max: u32,
    #[arg(long, default_value_t = DEFAULT_GAMMA)]
    pub gamma: u32,
    /// Print one of the standard tables instead.
    #[arg(long, value_parser = parse_table)]
    pub table: Option<TableId>,
    /// Also write p_th against x for every level to this CSV file.
    #[arg(long)]
    pub curves: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ResourcesArgs {
    #[arg(long, value_parser = parse_logical_gate, default_value = "t")]
    pub gate: LogicalGate,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Number of periods of the gate.
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    /// Seconds per CNOT.
    #[arg(long, default_value_t = DEFAULT_CNOT_TIME)]
    pub cnot_time: f64,
    #[arg(long, default_value_t = DEFAULT_DEPTH_LIMIT)]
    pub depth_limit: u64,
    /// Block whose period depth is checked.
    #[arg(long, value_enum, default_value_t = BlockArg::Data)]
    pub block: BlockArg,
    /// Period depth x used for the depth check.
    #[arg(long, default_value_t = 1)]
    pub x: u32,
    #[arg(long, default_value_t = DEFAULT_GAMMA)]
    pub gamma: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Random faults for the frame-engine oracle.
    #[arg(long, default_value_t = verify::DEFAULT_FAULT_SAMPLES)]
    pub faults: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TablesArgs {
    /// Only this table; all four when omitted.
    #[arg(long, value_parser = parse_table)]
    pub table: Option<TableId>,
    /// Output directory; defaults to $STEANE_FT_OUT, then the working directory.
    #[arg(long, env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,
    /// Compare each table against a reference CSV in this directory; relative tolerance 1e-9.
    #[arg(long)]
    pub check: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_X_MAX)]
    pub x_max: u32,
    #[arg(long, default_value_t = DEFAULT_GAMMA)]
    pub gamma: u32,
}

#[derive(Debug, Clone, Args)]
pub struct CircuitArgs {
    #[command(flatten)]
    pub source: CircuitSource,
    /// Print a gadget instead of the error-correction period.
    #[arg(long, value_parser = parse_gadget)]
    pub gadget: Option<GadgetName>,
    #[arg(long, value_enum, default_value_t = CodeArg::Steane)]
    pub code: CodeArg,
    #[arg(long, default_value_t = 2)]
    pub repetitions: u32,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodeArg {
    Trivial,
    Steane,
}

/// `None` is the unbounded limit.
pub type Periods = Option<f64>;

fn parse_r(s: &str) -> Result<Periods, String> {
    if matches!(s.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
        return Ok(None);
    }
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is neither a number nor 'inf'"))?;
    if !(v >= 1.0) || !v.is_finite() {
        return Err(format!("r must be at least 1, got {s}"));
    }
    Ok(Some(v))
}

fn parse_gate_class(s: &str) -> Result<GateClass, String> {
    s.parse()
}

fn parse_logical_gate(s: &str) -> Result<LogicalGate, String> {
    s.parse()
}

fn parse_table(s: &str) -> Result<TableId, String> {
    s.parse()
}

fn parse_gadget(s: &str) -> Result<GadgetName, String> {
    s.parse()
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(m) => Failure::Usage(m),
            e => Failure::Lib(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Parses `argv` (program name first), runs the command, returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Check(m)) | Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            EXIT_FAILED
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            EXIT_FAILED
        }
    }
}

fn dispatch(cmd: Command) -> Result<bool, Failure> {
    match cmd {
        Command::Propagate(a) => propagate(a),
        Command::Flags(a) => flags(a),
        Command::Depth(a) => depth(a),
        Command::Threshold(a) => threshold(a),
        Command::Resources(a) => resources(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Tables(a) => tables(a),
        Command::Circuit(a) => circuit(a),
    }
}

fn emit(out: &OutputArgs, text: String) -> Result<(), Failure> {
    match &out.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| Failure::Io(e.to_string()))
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn syn(v: &[u8]) -> String {
    v.iter().map(|s| format!("{s:03b}")).collect::<Vec<_>>().join("/")
}

#[derive(Serialize)]
struct TableRow {
    z_syn: String,
    x_syn: String,
    meas: String,
    x_flags: String,
    z_flags: String,
    residual: String,
    members: Vec<String>,
}

fn table_rows(t: &DecodingTable, all: bool) -> Vec<TableRow> {
    let mut groups: BTreeMap<(_, String), Vec<String>> = BTreeMap::new();
    for r in t.records.iter().filter(|r| all || (r.data_side && !r.neutral)) {
        groups.entry((r.signature.clone(), r.residual.to_sparse())).or_default().push(r.location.to_string());
    }
    groups
        .into_iter()
        .map(|((s, residual), members)| TableRow {
            z_syn: syn(&s.z_syn),
            x_syn: syn(&s.x_syn),
            meas: bits(&s.meas.iter().map(|m| m.1).collect::<Vec<_>>()),
            x_flags: bits(&s.x_flags),
            z_flags: bits(&s.z_flags),
            residual,
            members,
        })
        .collect()
}

fn propagate(a: PropagateArgs) -> Result<bool, Failure> {
    let c = a.source.load()?;
    let mut types = Vec::new();
    for ch in &a.types {
        match Pauli::parse(ch.to_ascii_uppercase()) {
            Some(p) if p != Pauli::I => types.push(p),
            _ => return Err(Failure::Usage(format!("unknown fault type '{ch}'"))),
        }
    }
    let t = enumerate_single_faults(&c, &types)?;
    let rows = table_rows(&t, a.all);
    let text = match a.output.format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut s = String::from("z_syn,x_syn,meas,x_flags,z_flags,residual,members\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{},{},{},{}", r.z_syn, r.x_syn, r.meas, r.x_flags, r.z_flags, r.residual, r.members.join(" "));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let readout: Vec<String> = c.measured().keys().filter(|q| **q < 7).map(|q| (q + 1).to_string()).collect();
            let _ = writeln!(s, "readout qubits {}", readout.join(","));
            for r in &rows {
                let _ = writeln!(
                    s,
                    "zsyn={} xsyn={} meas={} xflag={} zflag={}  {}  -> {}",
                    r.z_syn,
                    r.x_syn,
                    r.meas,
                    r.x_flags,
                    r.z_flags,
                    r.members.join(" = "),
                    r.residual
                );
            }
            s
        }
    };
    emit(&a.output, text)?;
    Ok(true)
}

fn flags(a: FlagsArgs) -> Result<bool, Failure> {
    let c = a.source.load()?;
    let rep: FlagReport = check_flag_conditions(&c)?;
    let text = match a.output.format {
        Format::Json => json(&rep)?,
        Format::Csv => {
            let mut s = String::from("gadget,kind,data_qubit,condition1,condition2,condition3\n");
            for g in &rep.gadgets {
                let c = &g.conditions;
                let _ = writeln!(s, "{},{:?},{},{},{},{}", g.name(), g.kind, g.data_qubit, c[0].passed, c[1].passed, c[2].passed);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for g in &rep.gadgets {
                let _ = writeln!(s, "{} ({:?} flag on qubit {}): {}", g.name(), g.kind, g.data_qubit, if g.passed() { "pass" } else { "FAIL" });
                for (i, c) in g.conditions.iter().enumerate() {
                    let _ = writeln!(s, "  condition {}: {} - {}", i + 1, if c.passed { "pass" } else { "FAIL" }, c.detail);
                }
            }
            s
        }
    };
    emit(&a.output, text)?;
    Ok(rep.all_passed())
}

#[derive(Serialize)]
struct DepthReport {
    ledgers: BTreeMap<&'static str, Vec<String>>,
    profile: DepthProfile,
    depth: BlockDepth,
}

fn depth_report(c: &Circuit, gamma: u32) -> Result<DepthReport, Failure> {
    let ledgers: BlockLedgers = derive_ledgers(c)?;
    let profile = depth_profile(c, &ledgers)?;
    let depth = effective_r(&profile, gamma);
    let l = BTreeMap::from([("X", ledgers.x.labels()), ("Y", ledgers.y().labels()), ("Z", ledgers.z.labels())]);
    Ok(DepthReport { ledgers: l, profile, depth })
}

fn list(v: &[u32; 7]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn depth(a: DepthArgs) -> Result<bool, Failure> {
    let c = a.source.load()?;
    let d = depth_report(&c, a.gamma)?;
    let text = match a.output.format {
        Format::Json => json(&d)?,
        Format::Csv => {
            let mut s = String::from("row,q1,q2,q3,q4,q5,q6,q7\n");
            for (name, v) in [("r_x", d.profile.r_x), ("r_y", d.profile.r_y), ("r_z", d.profile.r_z), ("R", d.depth.r)] {
                let _ = writeln!(s, "{name},{}", list(&v));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (k, v) in &d.ledgers {
                let _ = writeln!(s, "{k} ledger ({}): {}", v.len(), if v.is_empty() { "-".to_string() } else { v.join(" ") });
            }
            for (name, v) in [("r_x", d.profile.r_x), ("r_y", d.profile.r_y), ("r_z", d.profile.r_z), ("R", d.depth.r)] {
                let _ = writeln!(s, "{name:<4}[{}]", list(&v));
            }
            let _ = writeln!(s, "gamma {}", d.depth.gamma);
            s
        }
    };
    emit(&a.output, text)?;
    Ok(true)
}

/// R coefficients of the flagged data or auxiliary block.
pub fn block_depth(block: BlockArg, gamma: u32) -> crate::Result<BlockDepth> {
    let opts = match block {
        BlockArg::Data => EcOptions::data(true),
        BlockArg::Aux => EcOptions::auxiliary(true),
    };
    let c = build_full_ec_circuit(opts);
    Ok(effective_r(&depth_profile(&c, &derive_ledgers(&c)?)?, gamma))
}

fn r_text(r: Periods) -> String {
    r.map_or("inf".to_string(), |v| format!("{v}"))
}

fn threshold(a: ThresholdArgs) -> Result<bool, Failure> {
    if let Some(id) = a.table {
        let data = block_depth(BlockArg::Data, a.gamma)?;
        let aux = block_depth(BlockArg::Aux, a.gamma)?;
        let rows = generate_table(id, &data, &aux, a.x_max)?;
        let text = match a.output.format {
            Format::Json => json(&rows)?,
            _ => table_csv(id, &rows),
        };
        emit(&a.output, text)?;
        return Ok(true);
    }
    let b = block_depth(a.block, a.gamma)?;
    let levels = match a.k {
        Some(k) => k..=k,
        None => 1..=10,
    };
    let rows: Vec<ThresholdResult> = levels.clone().map(|k| optimize_x(k, a.r, a.gate, &b, a.x_max)).collect::<crate::Result<_>>()?;
    if let Some(p) = &a.curves {
        let csv = curves_csv(&b, levels, a.r, a.gate, a.x_max)?;
        std::fs::write(p, csv).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
    }
    let text = match a.output.format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut s = String::from("k,r,x_star,max_p_th\n");
            for t in &rows {
                let _ = writeln!(s, "{},{},{},{}", t.k, r_text(t.r), t.x_star, format_sci(t.max_p_th));
            }
            s
        }
        Format::Text => {
            let mut s = format!("block {:?}, gate {}, r {}, R [{}], gamma {}\n", a.block, a.gate, r_text(a.r), list(&b.r), b.gamma);
            for t in &rows {
                let _ = writeln!(s, "k={:<3} x*={:<4} c={:<22} p_th={}", t.k, t.x_star, t.c_at_x_star, format_sci(t.max_p_th));
            }
            s
        }
    };
    emit(&a.output, text)?;
    Ok(true)
}

#[derive(Serialize)]
struct ResourceReport {
    cost: GateCost,
    k: u32,
    cnots_per_period: u64,
    runtime: RuntimeEstimate,
    depth: DepthCheck,
}

fn resources(a: ResourcesArgs) -> Result<bool, Failure> {
    let cost = gate_cost(a.gate);
    let per = cnot_count(a.gate, a.k)?;
    let runtime = estimate_runtime(&[(a.gate, a.count)], a.k, a.cnot_time)?;
    let b = block_depth(a.block, a.gamma)?;
    let depth = check_permitted_depth(&b, a.k, a.x, a.depth_limit)?;
    let rep = ResourceReport { cost, k: a.k, cnots_per_period: per, runtime, depth };
    let text = match a.output.format {
        Format::Json => json(&rep)?,
        Format::Csv => {
            let mut s = String::from("gate,k,count,cnots_per_period,total_cnots,seconds,depth_passed,worst_depth,max_admissible_k\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                a.gate,
                a.k,
                a.count,
                per,
                rep.runtime.total_cnots,
                format_sci(rep.runtime.seconds),
                rep.depth.passed,
                rep.depth.worst_depth,
                rep.depth.max_admissible_k.map_or("-".to_string(), |k| k.to_string())
            );
            s
        }
        Format::Text => {
            let mut s = format!("{} period, first level:\n", a.gate);
            for i in &rep.cost.breakdown {
                let _ = writeln!(s, "  {:>2} x {:<28} {:>4}", i.copies, i.component, i.total());
            }
            let _ = writeln!(s, "  total {}", rep.cost.cnots_per_period_k1);
            let _ = writeln!(s, "level {}: {} CNOTs per period (growth {} per level)", a.k, per, rep.cost.growth_factor_per_level);
            let _ = writeln!(s, "{} periods: {} CNOTs, {} s at {} s per CNOT", a.count, rep.runtime.total_cnots, rep.runtime.seconds, a.cnot_time);
            let d = &rep.depth;
            let _ = writeln!(
                s,
                "depth check ({} block, x={}, limit {}): worst {} -> {}; admissible up to k={}",
                match a.block {
                    BlockArg::Data => "data",
                    BlockArg::Aux => "aux",
                },
                d.x,
                d.limit,
                d.worst_depth,
                if d.passed { "pass" } else { "FAIL" },
                d.max_admissible_k.map_or("none".to_string(), |k| k.to_string())
            );
            s
        }
    };
    emit(&a.output, text)?;
    Ok(rep.depth.passed)
}

fn verify_cmd(a: VerifyArgs) -> Result<bool, Failure> {
    let mut checks: Vec<CheckResult> = verify::run_all(a.seed)?;
    if a.faults != verify::DEFAULT_FAULT_SAMPLES {
        checks.pop();
        checks.push(verify::check_propagation_oracle(a.faults, a.seed)?);
    }
    let ok = checks.iter().all(|c| c.passed);
    let text = match a.output.format {
        Format::Json => json(&checks)?,
        Format::Csv => {
            let mut s = String::from("check,passed,max_error,tolerance\n");
            for c in &checks {
                let _ = writeln!(s, "{},{},{:e},{:e}", c.name, c.passed, c.max_error, c.tolerance);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &checks {
                let _ = writeln!(s, "{} {:<42} err {:.2e} (tol {:.0e})  {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.max_error, c.tolerance, c.detail);
            }
            s
        }
    };
    emit(&a.output, text)?;
    Ok(ok)
}

/// Compares two CSV tables cell by cell, numbers to relative `tol`.
pub fn compare_csv(got: &str, want: &str, tol: f64) -> Vec<String> {
    let mut diffs = Vec::new();
    let (g, w): (Vec<&str>, Vec<&str>) = (got.lines().collect(), want.lines().collect());
    if g.len() != w.len() {
        diffs.push(format!("{} rows vs {} reference rows", g.len(), w.len()));
    }
    for (i, (a, b)) in g.iter().zip(&w).enumerate() {
        let (ca, cb): (Vec<&str>, Vec<&str>) = (a.split(',').collect(), b.split(',').collect());
        let same = ca.len() == cb.len()
            && ca.iter().zip(&cb).all(|(x, y)| match (x.trim().parse::<f64>(), y.trim().parse::<f64>()) {
                (Ok(p), Ok(q)) => p == q || ((p - q) / q).abs() <= tol,
                _ => x.trim() == y.trim(),
            });
        if !same {
            diffs.push(format!("line {}: '{a}' vs '{b}'", i + 1));
        }
    }
    diffs
}

fn tables(a: TablesArgs) -> Result<bool, Failure> {
    let dir = a.out_dir.unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    let data = block_depth(BlockArg::Data, a.gamma)?;
    let aux = block_depth(BlockArg::Aux, a.gamma)?;
    let ids: Vec<TableId> = a.table.map_or(TableId::ALL.to_vec(), |t| vec![t]);
    let mut ok = true;
    for id in ids {
        let csv = table_csv(id, &generate_table(id, &data, &aux, a.x_max)?);
        let name = format!("table_{}.csv", id.name());
        let path = dir.join(&name);
        std::fs::write(&path, &csv).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        println!("wrote {}", path.display());
        if let Some(refdir) = &a.check {
            let want = read_reference(&refdir.join(&name))?;
            let diffs = compare_csv(&csv, &want, 1e-9);
            if diffs.is_empty() {
                println!("  matches {}", refdir.join(&name).display());
            } else {
                ok = false;
                for d in diffs {
                    eprintln!("  {name} {d}");
                }
            }
        }
    }
    if !ok {
        return Err(Failure::Check("tables differ from the reference".into()));
    }
    Ok(true)
}

fn read_reference(p: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
}

fn circuit(a: CircuitArgs) -> Result<bool, Failure> {
    let c = match a.gadget {
        Some(name) => {
            let code = match a.code {
                CodeArg::Trivial => Code::Trivial,
                CodeArg::Steane => Code::Steane,
            };
            build_gadget(GadgetSpec::new(name, code).with_repetitions(a.repetitions))
        }
        None => a.source.load()?,
    };
    let text = c.to_text();
    match &a.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(true)
}
