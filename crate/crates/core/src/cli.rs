//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 configuration error, 3 parse failure,
//! 4 verification failure.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::circuit::Circuit;
use crate::code::build_code;
use crate::crumble::{emit_text, export_records, parse_text};
use crate::error::{CodeError, ParseError, VerifyError};
use crate::flow::{verify_encoding_with, verify_growth_stage, EncodingCertificate, VerifyOptions};
use crate::oracle::{depth1_growth_impossible_capped, low_weight_census, DEFAULT_CENSUS_CAP};
use crate::report::{oracle_table, stats_row, stats_table, OracleRow};
use crate::synth::{base_distance, full_encoder};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Inclusive distance range, written `N` or `N..M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceRange {
    pub start: usize,
    pub end: usize,
}

impl DistanceRange {
    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }

    pub fn single(self) -> Option<usize> {
        (self.start == self.end).then_some(self.start)
    }
}

impl FromStr for DistanceRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{t}` is not a distance"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let d = num(s)?;
                (d, d)
            }
        };
        if start > end {
            return Err(format!("range {start}..{end} is empty"));
        }
        Ok(Self { start, end })
    }
}

impl fmt::Display for DistanceRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.single() {
            Some(d) => write!(f, "{d}"),
            None => write!(f, "{}..{}", self.start, self.end),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Canonical Crumble text.
    CircuitText,
    /// Line records (circuits) or JSON (certificates, stats).
    Structured,
    /// Aligned text table.
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "surfgrow",
    version,
    about = "Nearest-neighbor rotated surface code encoders"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the encoder for each distance.
    Generate {
        #[arg(short = 'd', long = "distance")]
        distance: DistanceRange,
        #[arg(long, value_enum, default_value = "circuit-text")]
        format: Format,
        /// Write one file per distance here instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest distance the growth pattern may be used for.
        #[arg(long, default_value_t = 25)]
        max_pattern_d: usize,
    },
    /// Certify generated encoders or a circuit file.
    Verify {
        /// Distances to generate and check; with --file, the target distance.
        #[arg(short = 'd', long = "distance")]
        distance: Option<DistanceRange>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Check tracked-operator invariants after every layer.
        #[arg(long)]
        strict: bool,
        /// Write cert_d<d>.txt and cert_d<d>.json here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 25)]
        max_pattern_d: usize,
    },
    /// Measured gate counts beside closed forms and prior-art counts.
    Stats {
        #[arg(short = 'd', long = "distance")]
        distance: DistanceRange,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long, default_value_t = 25)]
        max_pattern_d: usize,
    },
    /// Low-weight census and depth-1 growth verdicts.
    Oracle {
        /// Code distance(s) to enumerate.
        #[arg(short = 'D', long = "code-distance")]
        code_distance: DistanceRange,
        /// Largest code distance to enumerate exhaustively.
        #[arg(long, default_value_t = DEFAULT_CENSUS_CAP)]
        cap: usize,
    },
    /// Print the canonical form of a circuit file or link.
    Canon {
        #[arg(long)]
        file: PathBuf,
    },
    /// Print the stabilizer generators and logicals of a code.
    Code {
        #[arg(short = 'd', long = "distance")]
        distance: usize,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Exit {
    code: i32,
    message: String,
}

impl Exit {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }

    fn parse(path: &Path, e: ParseError) -> Self {
        Self {
            code: EXIT_PARSE,
            message: format!("{}: {e}", path.display()),
        }
    }

    fn verify(e: impl fmt::Display) -> Self {
        Self {
            code: EXIT_VERIFY,
            message: e.to_string(),
        }
    }
}

impl From<VerifyError> for Exit {
    fn from(e: VerifyError) -> Self {
        Exit::verify(e)
    }
}

impl From<CodeError> for Exit {
    fn from(e: CodeError) -> Self {
        Exit::config(e.to_string())
    }
}

type Outcome = Result<i32, Exit>;

fn check_distances(range: DistanceRange, max_pattern_d: Option<usize>) -> Result<(), Exit> {
    if range.start < 2 {
        return Err(Exit::config(format!(
            "distance must be at least 2, got {}",
            range.start
        )));
    }
    if let Some(max) = max_pattern_d {
        if range.end > max {
            return Err(Exit::config(format!(
                "distance {} exceeds --max-pattern-d {max}",
                range.end
            )));
        }
    }
    Ok(())
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), Exit> {
    fs::create_dir_all(dir).map_err(|e| Exit::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Exit::io(&path, e))
}

fn read_circuit(path: &Path) -> Result<Circuit, Exit> {
    let text = fs::read_to_string(path).map_err(|e| Exit::io(path, e))?;
    parse_text(&text).map_err(|e| Exit::parse(path, e))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Exit> {
    out.write_all(text.as_bytes())
        .map_err(|e| Exit::io(Path::new("<stdout>"), e))
}

/// Stage-local certificates for every growth stage the encoder of `d` contains.
fn certify_stages(d: usize) -> Result<(), Exit> {
    let b = base_distance(d);
    for s in (b..d).step_by(2) {
        let cert = verify_growth_stage(s, false)?;
        if !cert.passes() {
            return Err(Exit::verify(format!(
                "growth stage {s}->{} failed certification",
                s + 2
            )));
        }
    }
    Ok(())
}

fn cmd_generate(
    range: DistanceRange,
    format: Format,
    out_dir: Option<&Path>,
    max_pattern_d: usize,
    out: &mut dyn Write,
) -> Outcome {
    check_distances(range, Some(max_pattern_d))?;
    let (ext, render): (&str, fn(&Circuit) -> String) = match format {
        Format::CircuitText => ("crum.txt", |c| emit_text(c) + "\n"),
        Format::Structured => ("records.txt", export_records),
        Format::Table => {
            return Err(Exit::config(
                "generate supports circuit-text and structured",
            ))
        }
    };
    for d in range.iter() {
        certify_stages(d)?;
        let text = render(&full_encoder(d).map_err(Exit::verify)?);
        match out_dir {
            Some(dir) => write_file(dir, &format!("surface_d{d}.{ext}"), &text)?,
            None => emit(out, &text)?,
        }
    }
    Ok(EXIT_OK)
}

fn summary_line(label: &str, cert: &EncodingCertificate) -> String {
    let frame = cert
        .logical_frame
        .map_or_else(|| "unresolved".into(), |f| f.to_string());
    format!(
        "{label}: {} group_match={} sign_match={} depth={}/{} locality_ok={} cx={} frame={frame}\n",
        if cert.passes() { "PASS" } else { "FAIL" },
        cert.group_match,
        cert.sign_match,
        cert.depth,
        cert.expected_depth,
        cert.locality_ok,
        cert.cx_count,
    )
}

fn write_cert(dir: &Path, cert: &EncodingCertificate) -> Result<(), Exit> {
    let d = cert.distance;
    write_file(dir, &format!("cert_d{d}.txt"), &cert.to_text())?;
    write_file(dir, &format!("cert_d{d}.json"), &(cert.to_json() + "\n"))
}

fn cmd_verify(
    range: Option<DistanceRange>,
    file: Option<&Path>,
    strict: bool,
    out_dir: Option<&Path>,
    max_pattern_d: usize,
    out: &mut dyn Write,
) -> Outcome {
    let options = VerifyOptions { strict };
    if let Some(path) = file {
        let circuit = read_circuit(path)?;
        let d = match range {
            Some(r) => r
                .single()
                .ok_or_else(|| Exit::config("--file takes a single target distance"))?,
            None => {
                let side = (circuit.n() as f64).sqrt().round() as usize;
                if side * side != circuit.n() {
                    return Err(Exit::config(format!(
                        "{} qubits is not a square grid; pass -d",
                        circuit.n()
                    )));
                }
                side
            }
        };
        check_distances(DistanceRange { start: d, end: d }, None)?;
        let cert = verify_encoding_with(&circuit, &build_code(d)?, options)?;
        if let Some(dir) = out_dir {
            write_cert(dir, &cert)?;
        }
        emit(out, &cert.to_text())?;
        return Ok(if cert.passes() { EXIT_OK } else { EXIT_VERIFY });
    }
    let range = range.ok_or_else(|| Exit::config("verify needs -d or --file"))?;
    check_distances(range, Some(max_pattern_d))?;
    let results: Vec<(usize, Result<EncodingCertificate, VerifyError>)> = range
        .iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|d| {
            let run = || -> Result<EncodingCertificate, VerifyError> {
                verify_encoding_with(&full_encoder(d)?, &build_code(d)?, options)
            };
            (d, run())
        })
        .collect();
    let mut passed = 0;
    for (d, res) in &results {
        match res {
            Ok(cert) => {
                if let Some(dir) = out_dir {
                    write_cert(dir, cert)?;
                }
                emit(out, &summary_line(&format!("d={d}"), cert))?;
                if cert.passes() {
                    passed += 1;
                }
            }
            Err(e) => emit(out, &format!("d={d}: ERROR {e}\n"))?,
        }
    }
    emit(out, &format!("{passed}/{} passed\n", results.len()))?;
    Ok(if passed == results.len() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

fn cmd_stats(
    range: DistanceRange,
    format: Format,
    max_pattern_d: usize,
    out: &mut dyn Write,
) -> Outcome {
    check_distances(range, Some(max_pattern_d))?;
    let rows = range
        .iter()
        .map(stats_row)
        .collect::<Result<Vec<_>, _>>()
        .map_err(Exit::verify)?;
    let text = match format {
        Format::Table => stats_table(&rows),
        Format::Structured => {
            let json: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "d": r.d,
                        "depth": r.depth,
                        "expected_depth": r.expected_depth,
                        "total_cx": r.total_cx,
                        "per_stage": r.stage_counts,
                        "last_stage_cx": r.last_stage_cx,
                        "next_stage_cx": r.next_stage_cx,
                        "next_stage_closed_form": r.next_stage_closed_form,
                        "closed_form_mismatch": r.closed_form_mismatch(),
                        "prior_depth": r.prior_depth,
                        "prior_step_cx": r.prior_step_cx,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&json).expect("plain data") + "\n"
        }
        Format::CircuitText => return Err(Exit::config("stats supports table and structured")),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_oracle(range: DistanceRange, cap: usize, out: &mut dyn Write) -> Outcome {
    check_distances(range, None)?;
    let mut rows = Vec::new();
    let mut refused = Vec::new();
    for big in range.iter() {
        let d = big.saturating_sub(2);
        if big > cap {
            refused.push(depth1_growth_impossible_capped(d, cap)?);
            continue;
        }
        let census = low_weight_census(&build_code(big)?).map_err(Exit::verify)?;
        let record = depth1_growth_impossible_capped(d, cap)?;
        rows.push(OracleRow {
            code_distance: big,
            census: Some(census),
            record,
        });
    }
    if !rows.is_empty() {
        emit(out, &oracle_table(&rows))?;
    }
    for r in &refused {
        emit(
            out,
            &format!(
                "D={}: refused, census cap is {cap}; arithmetic verdict: required {} > bound 2(D-1) = {} so depth-1 growth {}->{} is impossible\n",
                r.code_distance, r.required, r.available, r.d, r.code_distance
            ),
        )?;
    }
    Ok(if refused.is_empty() {
        EXIT_OK
    } else {
        EXIT_CONFIG
    })
}

fn dispatch(cfg: RunConfig, out: &mut dyn Write) -> Outcome {
    match cfg.command {
        Command::Generate {
            distance,
            format,
            out: dir,
            max_pattern_d,
        } => cmd_generate(distance, format, dir.as_deref(), max_pattern_d, out),
        Command::Verify {
            distance,
            file,
            strict,
            out: dir,
            max_pattern_d,
        } => cmd_verify(
            distance,
            file.as_deref(),
            strict,
            dir.as_deref(),
            max_pattern_d,
            out,
        ),
        Command::Stats {
            distance,
            format,
            max_pattern_d,
        } => cmd_stats(distance, format, max_pattern_d, out),
        Command::Oracle { code_distance, cap } => cmd_oracle(code_distance, cap, out),
        Command::Canon { file } => {
            let c = read_circuit(&file)?;
            emit(out, &(emit_text(&c) + "\n"))?;
            Ok(EXIT_OK)
        }
        Command::Code { distance } => {
            check_distances(
                DistanceRange {
                    start: distance,
                    end: distance,
                },
                None,
            )?;
            emit(out, &build_code(distance)?.describe())?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cfg, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("surfgrow").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn range_syntax() {
        assert_eq!(
            "5".parse::<DistanceRange>(),
            Ok(DistanceRange { start: 5, end: 5 })
        );
        assert_eq!("2..15".parse::<DistanceRange>().unwrap().iter().count(), 14);
        assert_eq!("2..=4".parse::<DistanceRange>().unwrap().end, 4);
        assert!("7..3".parse::<DistanceRange>().is_err());
        assert!("x".parse::<DistanceRange>().is_err());
    }

    #[test]
    fn generate_rejects_small_distance() {
        let (code, out, err) = call(&["generate", "-d", "1"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(out.is_empty());
        assert!(err.contains("at least 2"));
    }

    #[test]
    fn generate_respects_pattern_bound() {
        let (code, _, err) = call(&["generate", "-d", "9", "--max-pattern-d", "7"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("max-pattern-d"));
    }

    #[test]
    fn generated_text_parses_back() {
        let (code, out, _) = call(&["generate", "-d", "5"]);
        assert_eq!(code, EXIT_OK);
        let c = parse_text(&out).unwrap();
        assert_eq!(c.depth(), 6);
    }

    #[test]
    fn oracle_refuses_above_cap() {
        let (code, out, _) = call(&["oracle", "-D", "20"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(out.contains("refused"));
        assert!(out.contains("impossible"));
        let (code, out, _) = call(&["oracle", "-D", "5"]);
        assert_eq!(code, EXIT_OK);
        let row = out.lines().nth(2).unwrap();
        let cells: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cells[0], "5");
        assert_eq!(cells[4], "8");
        assert_eq!(cells[9], "impossible");
    }

    #[test]
    fn bad_flags_are_config_errors() {
        assert_eq!(call(&["verify"]).0, EXIT_CONFIG);
        assert_eq!(call(&["frobnicate"]).0, EXIT_CONFIG);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn code_listing() {
        let (code, out, _) = call(&["code", "-d", "3"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("# rotated-surface-code d=3"));
    }
}
