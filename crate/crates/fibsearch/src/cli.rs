//! Command-line surface. Every subcommand writes exactly one machine-readable
//! artifact to stdout (TSV, JSON, DOT or CSV), diagnostics go to stderr, and
//! identical invocations produce byte-identical output. Monetary and unit
//! scaling happens only here; the library speaks canonical integer units.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::oracle;
use crate::search::{self, Mode, SearchTrace};
use crate::sequences::FibTable;
use crate::tree::{build_counting_tree, build_search_tree, prune_to_size};
use crate::varn;
use crate::weights::{parse_rational, parse_weights, Weights};

#[derive(Parser)]
#[command(
    name = "fibsearch",
    about = "Cost-asymmetric comparison search: sequences, bounds, searches, trees, codes and oracles",
    version
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WeightsArg {
    /// Comparison costs per outcome: comma-separated positive rationals
    /// (integers, decimals, or p/q)
    #[arg(long, value_name = "W")]
    weights: String,
}

impl WeightsArg {
    fn parse(&self) -> Result<Weights, String> {
        parse_weights(&self.weights).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqKind {
    /// node counts per level
    #[value(name = "g")]
    Count,
    /// leaf capacities per level
    #[value(name = "G")]
    Capacity,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeKindArg {
    Search,
    Counting,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Short,
    Full,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Short => Mode::Short,
            ModeArg::Full => Mode::Full,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a sequence table as TSV lines "k<TAB>value"
    Seq {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long, value_enum)]
        kind: SeqKind,
        /// Highest index to print
        #[arg(long)]
        upto: u64,
    },
    /// Worst-case cost lower bound for n items, as JSON
    Bound {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long)]
        n: u64,
        /// Money (or any unit) per canonical cost unit
        #[arg(long, value_name = "C")]
        unit_cost: Option<String>,
    },
    /// Search a sorted JSON array for a key and print the trace as JSON
    Search {
        #[command(flatten)]
        weights: WeightsArg,
        /// File holding a JSON array of numbers or strings (uniform type)
        #[arg(long)]
        array: std::path::PathBuf,
        #[arg(long)]
        key: String,
        #[arg(long, value_enum, default_value = "short")]
        mode: ModeArg,
        /// Include the per-probe steps in the output
        #[arg(long)]
        trace: bool,
        /// Check the array is sorted before searching (one linear pass)
        #[arg(long)]
        verify_sorted: bool,
    },
    /// Render an explicit decision tree as Graphviz DOT
    Tree {
        #[command(flatten)]
        weights: WeightsArg,
        /// Level budget (search trees) or level cap (counting trees)
        #[arg(long)]
        level: u64,
        #[arg(long, value_enum)]
        kind: TreeKindArg,
        /// Prune the search tree down to this many leaves
        #[arg(long)]
        prune_to: Option<u64>,
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Varn code for n equiprobable words: one word or the whole table, TSV
    Varn {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long)]
        n: u64,
        /// Encode a single word index
        #[arg(long, conflicts_with = "table")]
        index: Option<u64>,
        /// Print the whole table
        #[arg(long)]
        table: bool,
    },
    /// Brute-force DP oracle values, as JSON
    Oracle {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long)]
        n: u64,
        /// Also compute the minimal total cost over equiprobable targets
        #[arg(long)]
        expected: bool,
        /// Level cap for the expected-cost DP
        #[arg(long)]
        level_cap: Option<u64>,
    },
    /// One CSV row comparing this search against binary-search baselines
    Compare {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long)]
        n: u64,
        #[arg(long, value_name = "C")]
        unit_cost: Option<String>,
    },
}

/// Entry point: parses `argv`, runs one command, returns the process exit
/// code. Errors print a single diagnostic line to stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = match CliArgs::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            // clap renders its own help/version output
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(args.command) {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(output.as_bytes());
            0
        }
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    }
}

/// A rational rendered as a bare integer when possible, else "p/q".
fn rational_json(r: Ratio<u128>) -> serde_json::Value {
    if *r.denom() == 1 {
        match r.numer().to_u64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(r.numer().to_string()),
        }
    } else {
        serde_json::Value::from(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn unit_cost_ratio(unit_cost: &Option<String>) -> Result<Ratio<u128>, String> {
    match unit_cost {
        None => Ok(Ratio::from_integer(1)),
        Some(s) => {
            let r = parse_rational(s).ok_or_else(|| format!("invalid unit cost: {s}"))?;
            if *r.numer() == 0 {
                return Err(format!("unit cost must be positive, got {s}"));
            }
            Ok(Ratio::new(*r.numer() as u128, *r.denom() as u128))
        }
    }
}

fn execute(command: Command) -> Result<String, String> {
    match command {
        Command::Seq { weights, kind, upto } => {
            let w = weights.parse()?;
            let mut table = FibTable::new(w);
            let mut out = String::new();
            for k in 0..=upto {
                let value = match kind {
                    SeqKind::Count => table.level_count(k as i64),
                    SeqKind::Capacity => table.leaf_capacity(k as i64),
                };
                out.push_str(&format!("{k}\t{value}\n"));
            }
            Ok(out)
        }
        Command::Bound { weights, n, unit_cost } => {
            let w = weights.parse()?;
            if n == 0 {
                return Err("n must be at least 1".into());
            }
            let unit = unit_cost_ratio(&unit_cost)?;
            let mut table = FibTable::new(w.clone());
            let bound = table.min_level_for(n);
            let cost = w.scale_cost(bound.level as u128) * unit;
            #[derive(Serialize)]
            struct BoundOut {
                k: u64,
                capacity: serde_json::Value,
                cost: serde_json::Value,
            }
            let capacity = match bound.capacity.to_u64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(bound.capacity.to_string()),
            };
            let out = BoundOut {
                k: bound.level,
                capacity,
                cost: rational_json(cost),
            };
            Ok(format!("{}\n", serde_json::to_string(&out).expect("serializable")))
        }
        Command::Search {
            weights,
            array,
            key,
            mode,
            trace,
            verify_sorted,
        } => {
            let w = weights.parse()?;
            let text = std::fs::read_to_string(&array)
                .map_err(|e| format!("cannot read {}: {e}", array.display()))?;
            let parsed: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| format!("invalid JSON array: {e}"))?;
            let items = parsed
                .as_array()
                .ok_or_else(|| "input must be a JSON array".to_string())?;
            run_search(&w, items, &key, mode.into(), trace, verify_sorted)
        }
        Command::Tree {
            weights,
            level,
            kind,
            prune_to,
            format,
        } => {
            let w = weights.parse()?;
            if format != "dot" {
                return Err(format!("unsupported format: {format} (only dot is available)"));
            }
            let tree = match kind {
                TreeKindArg::Search => build_search_tree(&w, level).map_err(|e| e.to_string())?,
                TreeKindArg::Counting => {
                    if prune_to.is_some() {
                        return Err("--prune-to applies to search trees only".into());
                    }
                    build_counting_tree(&w, level).map_err(|e| e.to_string())?
                }
            };
            let tree = match prune_to {
                Some(n) => prune_to_size(&tree, n).map_err(|e| e.to_string())?,
                None => tree,
            };
            Ok(tree.to_dot())
        }
        Command::Varn { weights, n, index, table } => {
            let w = weights.parse()?;
            let line = |j: u64, c: &varn::Codeword| {
                let letters: String = c.letters.iter().map(|l| l.to_string()).collect();
                format!("{j}\t{letters}\t{}\n", c.cost)
            };
            match (index, table) {
                (Some(j), false) => {
                    let c = varn::encode(n, &w, j).map_err(|e| e.to_string())?;
                    Ok(line(j, &c))
                }
                (None, true) => {
                    let table = varn::code_table(n, &w).map_err(|e| e.to_string())?;
                    Ok(table
                        .iter()
                        .enumerate()
                        .map(|(j, c)| line(j as u64, c))
                        .collect())
                }
                _ => Err("pass exactly one of --index J or --table".into()),
            }
        }
        Command::Oracle {
            weights,
            n,
            expected,
            level_cap,
        } => {
            let w = weights.parse()?;
            let worst = oracle::dp_worst(n, &w).map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct OracleOut {
                n: u64,
                weights: Vec<serde_json::Value>,
                dp_worst: u64,
                #[serde(skip_serializing_if = "Option::is_none")]
                dp_expected_total: Option<u128>,
                #[serde(skip_serializing_if = "Option::is_none")]
                level_cap: Option<u64>,
            }
            let dp_expected_total = if expected {
                Some(oracle::dp_expected(n, &w, level_cap).map_err(|e| e.to_string())?)
            } else {
                None
            };
            let out = OracleOut {
                n,
                weights: weights_json(&w),
                dp_worst: worst,
                dp_expected_total,
                level_cap: if expected { level_cap } else { None },
            };
            Ok(format!("{}\n", serde_json::to_string(&out).expect("serializable")))
        }
        Command::Compare { weights, n, unit_cost } => {
            let w = weights.parse()?;
            if w.arity() != 2 {
                return Err("compare needs exactly two outcome weights (the baselines are binary)".into());
            }
            if n == 0 {
                return Err("n must be at least 1".into());
            }
            let unit = unit_cost_ratio(&unit_cost)?;
            let mut table = FibTable::new(w.clone());
            let level = table.min_level_for(n).level;
            let money = |canonical: u128| render_rational(w.scale_cost(canonical) * unit);

            let fib_worst = money(level as u128);
            let fib_total = money(search::total_cost_sum(n, &w, Mode::Full));
            let dp_worst = money(oracle::dp_worst(n, &w).map_err(|e| e.to_string())? as u128);
            let dp_total = money(
                oracle::dp_expected(n, &w, Some(level)).map_err(|e| e.to_string())?,
            );
            // baselines are charged in the caller's units directly:
            // c_true/c_false = unit_cost x raw weight
            let raw = w.raw();
            let c_true = unit * Ratio::new(*raw[0].numer() as u128, *raw[0].denom() as u128);
            let c_false = unit * Ratio::new(*raw[1].numer() as u128, *raw[1].denom() as u128);
            let denom = c_true.denom().lcm(c_false.denom());
            let t = (c_true * Ratio::from_integer(denom)).to_integer();
            let f = (c_false * Ratio::from_integer(denom)).to_integer();
            let midpoint = render_rational(Ratio::new(
                oracle::midpoint_binary_cost(n, (t as u64, f as u64)),
                denom,
            ));
            let packed = render_rational(Ratio::new(
                oracle::packed_binary_cost(n, (t as u64, f as u64)),
                denom,
            ));

            let weights_field = format!("\"{}\"", render_weights(&w));
            Ok(format!(
                "n,weights,fib_worst,fib_total,dp_worst,dp_total,midpoint,packed\n{n},{weights_field},{fib_worst},{fib_total},{dp_worst},{dp_total},{midpoint},{packed}\n"
            ))
        }
    }
}

fn render_rational(r: Ratio<u128>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn render_weights(w: &Weights) -> String {
    w.raw()
        .iter()
        .map(|r| {
            if *r.denom() == 1 {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn weights_json(w: &Weights) -> Vec<serde_json::Value> {
    w.raw()
        .iter()
        .map(|r| {
            if *r.denom() == 1 {
                serde_json::Value::from(*r.numer())
            } else {
                serde_json::Value::from(format!("{}/{}", r.numer(), r.denom()))
            }
        })
        .collect()
}

/// Key type for array searches: every element must parse the same way.
#[derive(Debug, Clone, PartialEq)]
enum Key {
    Number(f64),
    Text(String),
}

impl Eq for Key {}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Key::Number(a), Key::Number(b)) => a.total_cmp(b),
            (Key::Text(a), Key::Text(b)) => a.cmp(b),
            (Key::Number(_), Key::Text(_)) => std::cmp::Ordering::Less,
            (Key::Text(_), Key::Number(_)) => std::cmp::Ordering::Greater,
        }
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn run_search(
    w: &Weights,
    items: &[serde_json::Value],
    key: &str,
    mode: Mode,
    include_steps: bool,
    verify_sorted: bool,
) -> Result<String, String> {
    let all_numbers = items.iter().all(|v| v.is_number());
    let all_strings = items.iter().all(|v| v.is_string());
    let values: Vec<Key> = if all_numbers && !items.is_empty() {
        items
            .iter()
            .map(|v| Key::Number(v.as_f64().expect("checked numeric")))
            .collect()
    } else if all_strings && !items.is_empty() {
        items
            .iter()
            .map(|v| Key::Text(v.as_str().expect("checked string").to_string()))
            .collect()
    } else {
        return Err("array must be nonempty and uniformly numbers or strings".into());
    };
    let key = if all_numbers {
        Key::Number(key.parse::<f64>().map_err(|e| format!("invalid numeric key: {e}"))?)
    } else {
        Key::Text(key.to_string())
    };
    let (trace, found) =
        search_slice_cli(&values, &key, w, mode, verify_sorted).map_err(|e| e.to_string())?;

    #[derive(Serialize)]
    struct StepOut {
        interval: [u64; 2],
        boundaries: Vec<u64>,
        outcome: usize,
        cost: u64,
    }
    #[derive(Serialize)]
    struct SearchOut {
        n: u64,
        weights: Vec<serde_json::Value>,
        mode: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        steps: Option<Vec<StepOut>>,
        total_cost: u64,
        scaled_cost: serde_json::Value,
        result_index: u64,
        found: bool,
    }
    let steps = include_steps.then(|| {
        trace
            .steps
            .iter()
            .map(|s| StepOut {
                interval: [s.request.interval.0, s.request.interval.1],
                boundaries: s.request.cuts.clone(),
                outcome: s.outcome.outcome_index,
                cost: s.outcome.charged_cost,
            })
            .collect()
    });
    let out = SearchOut {
        n: values.len() as u64,
        weights: weights_json(w),
        mode: mode.to_string(),
        steps,
        total_cost: trace.total_cost,
        scaled_cost: rational_json(trace.scaled_cost),
        result_index: trace.result_index,
        found,
    };
    Ok(format!("{}\n", serde_json::to_string(&out).expect("serializable")))
}

fn search_slice_cli(
    values: &[Key],
    key: &Key,
    w: &Weights,
    mode: Mode,
    verify_sorted: bool,
) -> Result<(SearchTrace, bool), search::SearchError> {
    search::search_slice(values, key, w, mode, verify_sorted)
}
