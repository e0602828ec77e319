//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{self, BoundArgs, BOUND_NAMES};
use crate::counting::{count_series, enumerate_class, inequality_scan};
use crate::error::{Error, Result};
use crate::frobenius::{frobenius_number, solve_refined, solve_sylvester};
use crate::injections::{apply, recover, verify_injection, MapId};
use crate::lemmas::{check_comb, check_crucial1};
use crate::pairing;
use crate::partition::{ClassParams, Kind, Partition};
use crate::qseries::{h_series, hdoubleprime_series, hprime_series, sign_scan};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_ASSERTION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "partineq", version, about = "Partition inequality workbench")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Reserved; every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct ClassArgs {
    #[arg(long = "L")]
    l: u64,
    #[arg(long)]
    s: u64,
    /// Comma-separated impermissible parts.
    #[arg(long = "V", value_delimiter = ',', num_args = 0..)]
    v: Vec<u64>,
}

impl ClassArgs {
    fn params(&self, kind: Kind) -> Result<ClassParams> {
        ClassParams::new(self.l, self.s, self.v.clone(), kind)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    I,
    D,
    #[value(name = "DV")]
    Dv,
    E,
    P,
    S,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::I => Kind::I,
            KindArg::D => Kind::D,
            KindArg::Dv => Kind::DV,
            KindArg::E => Kind::E,
            KindArg::P => Kind::P,
            KindArg::S => Kind::S,
        }
    }
}

#[derive(Args, Debug)]
struct MapArgs {
    #[command(flatten)]
    class: ClassArgs,
    /// Partition as JSON, e.g. [["1","28"]].
    #[arg(long)]
    partition: String,
    /// Treat the partition as an image and reconstruct its preimage.
    #[arg(long)]
    recover: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact per-weight counts of a class.
    Count {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, ignore_case = true)]
        kind: KindArg,
        #[arg(long)]
        nmax: usize,
    },
    /// Lists the members of a class of weight n.
    Enumerate {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, ignore_case = true)]
        kind: KindArg,
        #[arg(long)]
        n: u64,
    },
    /// Signs of count_a(n) - count_b(n) for n <= nmax.
    Scan {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long = "kind-a", value_enum, ignore_case = true)]
        kind_a: KindArg,
        #[arg(long = "kind-b", value_enum, ignore_case = true)]
        kind_b: KindArg,
        #[arg(long)]
        nmax: usize,
    },
    /// phi: class I into class D.
    #[command(name = "map-t1")]
    MapT1(MapArgs),
    /// eta: class DV into class I.
    #[command(name = "map-t3")]
    MapT3(MapArgs),
    /// Alternate eta for large impermissible parts.
    #[command(name = "map-alt")]
    MapAlt(MapArgs),
    /// Applies a map to every domain member of weight n.
    Verify {
        #[arg(long, value_enum, ignore_case = true)]
        map: MapArg,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        n: u64,
    },
    /// Coefficients of H, H' or H''.
    Qseries {
        #[arg(long, value_enum, default_value_t = SeriesArg::H)]
        series: SeriesArg,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        nmax: usize,
        /// Print the sign analysis instead of the coefficients.
        #[arg(long)]
        sign_scan: bool,
    },
    /// Rank and unrank for the pairing maps.
    Pairing {
        #[arg(long, value_enum)]
        map: PairingArg,
        /// Comma-separated tuple to rank.
        #[arg(long, value_delimiter = ',', conflicts_with = "unrank")]
        rank: Option<Vec<BigUint>>,
        /// Value to unrank.
        #[arg(long)]
        unrank: Option<BigUint>,
        /// Tuple length for unranking (cns, psi0, psi).
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Frobenius numbers and the two solvers.
    Frobenius {
        #[command(subcommand)]
        op: FrobOp,
    },
    /// Evaluates a named bound.
    Bounds {
        /// One of t1_bound, t3_bound, F_st, F_s, kappa_s, A, B, alt_kt_bound;
        /// omit to list the names.
        #[arg(long)]
        name: Option<String>,
        #[arg(long = "L")]
        l: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        t: Option<u32>,
    },
    /// Exhaustive checks of the two auxiliary inequalities.
    #[command(name = "lemma-check")]
    LemmaCheck {
        #[arg(long, value_enum, default_value_t = LemmaArg::All)]
        lemma: LemmaArg,
        #[arg(long, default_value_t = 5)]
        max_t: u32,
        #[arg(long, default_value_t = 10)]
        max_entry: u64,
        #[arg(long, default_value_t = 12)]
        max_st: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MapArg {
    T1,
    T3,
    Alt,
}

impl From<MapArg> for MapId {
    fn from(m: MapArg) -> MapId {
        match m {
            MapArg::T1 => MapId::T1,
            MapArg::T3 => MapId::T3,
            MapArg::Alt => MapId::Alt,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesArg {
    H,
    Hprime,
    Hdoubleprime,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PairingArg {
    Cantor,
    Cns,
    Spiral,
    Psi0,
    Psi,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum LemmaArg {
    Comb,
    Crucial1,
    All,
}

#[derive(Subcommand, Debug)]
enum FrobOp {
    /// ab - a - b for coprime a, b.
    Number {
        #[arg(long)]
        a: BigUint,
        #[arg(long)]
        b: BigUint,
    },
    /// Least-x solution of ax + by = n.
    Solve {
        #[arg(long)]
        a: BigUint,
        #[arg(long)]
        b: BigUint,
        #[arg(long)]
        n: BigUint,
    },
    /// Solution with bh <= x < b(h+1).
    Refined {
        #[arg(long)]
        a: BigUint,
        #[arg(long)]
        b: BigUint,
        #[arg(long)]
        n: BigUint,
        #[arg(long)]
        h: BigUint,
    },
}

/// What a command produced: a document, plus whether a checked property failed.
struct Output {
    body: String,
    assertion_failed: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, assertion_failed: false }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("values serialize to JSON")
}

fn csv_unavailable(what: &str) -> Error {
    Error::Domain(format!("CSV output is not available for {what}"))
}

fn csv_bytes(write: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> String {
    let mut buf = Vec::new();
    write(&mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV is ASCII")
}

fn run_map(map: MapId, args: &MapArgs, format: Format) -> Result<Output> {
    if format == Format::Csv {
        return Err(csv_unavailable("map output"));
    }
    let kind = if map == MapId::T1 { Kind::I } else { Kind::DV };
    let c = args.class.params(kind)?;
    let p = Partition::from_json(&args.partition)?;
    let body = if args.recover {
        let r = recover(map, &p, &c)?;
        json!({ "preimage": r.preimage, "trace": r.trace })
    } else {
        let m = apply(map, &p, &c)?;
        json!({ "image": m.image, "trace": m.trace })
    };
    Ok(Output::ok(body.to_string()))
}

fn run_pairing(
    map: PairingArg,
    rank: Option<Vec<BigUint>>,
    unrank: Option<BigUint>,
    arity: Option<usize>,
) -> Result<String> {
    let strings = |v: &[BigUint]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let pair = |v: &[BigUint]| -> Result<(BigUint, BigUint)> {
        match v {
            [m, n] => Ok((m.clone(), n.clone())),
            _ => Err(Error::Domain("this map takes exactly two entries".into())),
        }
    };
    let need_arity = || arity.ok_or_else(|| Error::Domain("--arity is required to unrank".into()));
    if let Some(tuple) = rank {
        let value = match map {
            PairingArg::Cantor => {
                let (m, n) = pair(&tuple)?;
                pairing::cantor_pair(&m, &n)?
            }
            PairingArg::Spiral => {
                let (m, n) = pair(&tuple)?;
                pairing::spiral_pair(&m, &n)?
            }
            PairingArg::Cns => pairing::cns_rank(&tuple)?,
            PairingArg::Psi0 => pairing::psi0_rank(&tuple)?,
            PairingArg::Psi => pairing::psi_rank(&tuple)?,
        };
        return Ok(json!({ "tuple": strings(&tuple), "rank": value.to_string() }).to_string());
    }
    let v = unrank.ok_or_else(|| Error::Domain("give --rank or --unrank".into()))?;
    let tuple: Option<Vec<BigUint>> = match map {
        PairingArg::Cantor => {
            let (m, n) = pairing::cantor_unpair(&v)?;
            Some(vec![m, n])
        }
        PairingArg::Spiral => {
            let (m, n) = pairing::spiral_unpair(&v)?;
            Some(vec![m, n])
        }
        PairingArg::Cns => pairing::cns_unrank(&v, need_arity()?)?,
        PairingArg::Psi0 => Some(pairing::psi0_unrank(&v, need_arity()?)?),
        PairingArg::Psi => Some(pairing::psi_unrank(&v, need_arity()?)?),
    };
    Ok(match tuple {
        Some(t) => json!({ "rank": v.to_string(), "tuple": strings(&t) }),
        None => json!({ "rank": v.to_string(), "tuple": null }),
    }
    .to_string())
}

fn execute(cli: Cli) -> Result<Output> {
    let format = cli.format;
    match cli.command {
        Command::Count { class, kind, nmax } => {
            let table = count_series(&class.params(kind.into())?, nmax)?;
            Ok(Output::ok(match format {
                Format::Json => to_json(&table),
                Format::Csv => csv_bytes(|w| table.write_csv(w)),
            }))
        }
        Command::Enumerate { class, kind, n } => {
            let members = enumerate_class(&class.params(kind.into())?, n)?;
            Ok(Output::ok(match format {
                Format::Json => to_json(&members),
                Format::Csv => {
                    let mut s = String::from("index,partition\n");
                    for (i, p) in members.iter().enumerate() {
                        s.push_str(&format!("{i},\"{}\"\n", p.to_json().replace('"', "\"\"")));
                    }
                    s
                }
            }))
        }
        Command::Scan { class, kind_a, kind_b, nmax } => {
            let report = inequality_scan(
                &class.params(kind_a.into())?,
                &class.params(kind_b.into())?,
                nmax,
            )?;
            Ok(Output::ok(match format {
                Format::Json => to_json(&report),
                Format::Csv => csv_bytes(|w| report.write_csv(w)),
            }))
        }
        Command::MapT1(args) => run_map(MapId::T1, &args, format),
        Command::MapT3(args) => run_map(MapId::T3, &args, format),
        Command::MapAlt(args) => run_map(MapId::Alt, &args, format),
        Command::Verify { map, class, n } => {
            if format == Format::Csv {
                return Err(csv_unavailable("verify reports"));
            }
            let map: MapId = map.into();
            let kind = if map == MapId::T1 { Kind::I } else { Kind::DV };
            let report = verify_injection(&class.params(kind)?, map, n)?;
            Ok(Output { body: to_json(&report), assertion_failed: !report.is_clean() })
        }
        Command::Qseries { series, class, nmax, sign_scan: scan } => {
            let build = match series {
                SeriesArg::H => h_series,
                SeriesArg::Hprime => hprime_series,
                SeriesArg::Hdoubleprime => hdoubleprime_series,
            };
            let x = build(class.l, class.s, &class.v, nmax)?;
            Ok(Output::ok(match (scan, format) {
                (true, Format::Json) => to_json(&sign_scan(&x)),
                (true, Format::Csv) => return Err(csv_unavailable("sign scans")),
                (false, Format::Json) => to_json(&x),
                (false, Format::Csv) => csv_bytes(|w| x.write_csv(w)),
            }))
        }
        Command::Pairing { map, rank, unrank, arity } => {
            if format == Format::Csv {
                return Err(csv_unavailable("pairing"));
            }
            Ok(Output::ok(run_pairing(map, rank, unrank, arity)?))
        }
        Command::Frobenius { op } => {
            let (header, row, body) = match op {
                FrobOp::Number { a, b } => {
                    let g = frobenius_number(&a, &b)?;
                    ("g", g.to_string(), json!({ "frobenius_number": g.to_string() }).to_string())
                }
                FrobOp::Solve { a, b, n } => {
                    let sol = solve_sylvester(&a, &b, &n)?;
                    ("x,y", format!("{},{}", sol.x, sol.y), to_json(&sol))
                }
                FrobOp::Refined { a, b, n, h } => {
                    let sol = solve_refined(&a, &b, &n, &h)?;
                    ("x,y", format!("{},{}", sol.x, sol.y), to_json(&sol))
                }
            };
            Ok(Output::ok(match format {
                Format::Json => body,
                Format::Csv => format!("{header}\n{row}\n"),
            }))
        }
        Command::Bounds { name, l, s, t } => {
            let Some(name) = name else {
                let names: Vec<_> = BOUND_NAMES
                    .iter()
                    .map(|(n, args)| json!({ "name": n, "args": args }))
                    .collect();
                return Ok(Output::ok(match format {
                    Format::Json => serde_json::Value::from(names).to_string(),
                    Format::Csv => {
                        let mut out = String::from("name,args\n");
                        for (n, args) in BOUND_NAMES {
                            out.push_str(&format!("{n},{}\n", args.join(" ")));
                        }
                        out
                    }
                }));
            };
            let value = bounds::evaluate(&name, BoundArgs { l, s, t })?;
            Ok(Output::ok(match format {
                Format::Json => json!({ "name": name, "value": value }).to_string(),
                Format::Csv => format!("name,value\n{name},{value}\n"),
            }))
        }
        Command::LemmaCheck { lemma, max_t, max_entry, max_st } => {
            if format == Format::Csv {
                return Err(csv_unavailable("lemma reports"));
            }
            let mut reports = Vec::new();
            if matches!(lemma, LemmaArg::Comb | LemmaArg::All) {
                reports.push(check_comb(max_t, max_entry));
            }
            if matches!(lemma, LemmaArg::Crucial1 | LemmaArg::All) {
                reports.push(check_crucial1(max_st));
            }
            let failed = reports.iter().any(|r| !r.holds());
            Ok(Output { body: to_json(&reports), assertion_failed: failed })
        }
    }
}

/// Runs the command line `args` (including the program name), writing the
/// result to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli) {
        Ok(o) => {
            let _ = write!(out, "{}", o.body);
            if !o.body.ends_with('\n') {
                let _ = writeln!(out);
            }
            if o.assertion_failed {
                let _ = writeln!(err, "assertion failed");
                EXIT_ASSERTION
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}
