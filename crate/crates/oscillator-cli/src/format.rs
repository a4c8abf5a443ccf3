//! Line-oriented text files for signals, coefficient lists, and bases.
//!
//! Every file opens with a header line `p=<prime> kind=<signal|coeffs|basis>`.
//! Complex numbers are printed as `re,im` with 17 significant digits, which
//! round-trips IEEE binary64 exactly, so parsing an emitted file recovers the
//! in-memory values bit for bit. Character-indexed lines are self-describing:
//! they repeat the torus family and its generator matrix so a file stays
//! interpretable even if generator conventions drift.
//!
//! Shapes:
//! - `signal`: header, then `p` lines `re,im` for the points `0..p-1`.
//! - `coeffs`: header, then one line per coefficient:
//!   `chi=<k> [slot=<s>] [lambda=<1|-1|i|-i>] torus=<Tw|A|ns> gen=<a>,<b>,<c>,<d> value=<re>,<im>`.
//! - `basis`: header, then per vector a label line
//!   `vec chi=<k> slot=<s> [lambda=<l>] torus=... gen=...` followed by `p`
//!   component lines `re,im`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use oscillator::tori::TorusKind;
use oscillator::{CVector, Complex64, Eigenvalue, Prime};

use crate::{CliError, CliResult};

/// File kinds named in the header line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Signal,
    Coeffs,
    Basis,
}

impl FileKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FileKind::Signal => "signal",
            FileKind::Coeffs => "coeffs",
            FileKind::Basis => "basis",
        }
    }

    pub fn from_str(s: &str) -> Option<FileKind> {
        match s {
            "signal" => Some(FileKind::Signal),
            "coeffs" => Some(FileKind::Coeffs),
            "basis" => Some(FileKind::Basis),
            _ => None,
        }
    }
}

/// Short label for a torus family, as used in file labels and `--torus`.
pub fn torus_label(kind: TorusKind) -> &'static str {
    match kind {
        TorusKind::WeylCentralizer => "Tw",
        TorusKind::Diagonal => "A",
        TorusKind::NormOne => "ns",
    }
}

fn is_torus_label(s: &str) -> bool {
    matches!(s, "Tw" | "A" | "ns")
}

/// `re,im` with 17 significant digits per part.
pub fn format_complex(z: Complex64) -> String {
    format!("{:.16e},{:.16e}", z.re, z.im)
}

pub fn parse_complex(s: &str) -> CliResult<Complex64> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| usage(format!("expected `re,im`, got `{s}`")))?;
    let re: f64 = re.parse().map_err(|_| usage(format!("bad real part `{re}`")))?;
    let im: f64 = im.parse().map_err(|_| usage(format!("bad imaginary part `{im}`")))?;
    Ok(Complex64::new(re, im))
}

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

fn parse_u64(s: &str, what: &str) -> CliResult<u64> {
    s.parse().map_err(|_| usage(format!("bad {what} `{s}`")))
}

/// Splits a line of `key=value` tokens; duplicate or malformed keys error.
fn token_map<'a>(line: &'a str, context: &str) -> CliResult<BTreeMap<&'a str, &'a str>> {
    let mut map = BTreeMap::new();
    for token in line.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| usage(format!("{context}: expected `key=value`, got `{token}`")))?;
        if map.insert(key, value).is_some() {
            return Err(usage(format!("{context}: duplicate key `{key}`")));
        }
    }
    Ok(map)
}

fn take<'a>(
    map: &mut BTreeMap<&str, &'a str>,
    key: &str,
    context: &str,
) -> CliResult<&'a str> {
    map.remove(key).ok_or_else(|| usage(format!("{context}: missing `{key}=`")))
}

fn expect_empty(map: &BTreeMap<&str, &str>, context: &str) -> CliResult<()> {
    if let Some(key) = map.keys().next() {
        return Err(usage(format!("{context}: unknown key `{key}`")));
    }
    Ok(())
}

fn parse_header(line: &str, expected: FileKind) -> CliResult<Prime> {
    let mut map = token_map(line, "header")?;
    let p = parse_u64(take(&mut map, "p", "header")?, "prime")?;
    let kind = take(&mut map, "kind", "header")?;
    expect_empty(&map, "header")?;
    let kind = FileKind::from_str(kind)
        .ok_or_else(|| usage(format!("header: unknown kind `{kind}`")))?;
    if kind != expected {
        return Err(usage(format!(
            "expected a {} file, found kind={}",
            expected.as_str(),
            kind.as_str()
        )));
    }
    Ok(Prime::new(p)?)
}

fn header_line(p: Prime, kind: FileKind) -> String {
    format!("p={} kind={}", p.get(), kind.as_str())
}

fn parse_gen(s: &str) -> CliResult<[u64; 4]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(usage(format!("gen must be four integers `a,b,c,d`, got `{s}`")));
    }
    Ok([
        parse_u64(parts[0], "gen entry")?,
        parse_u64(parts[1], "gen entry")?,
        parse_u64(parts[2], "gen entry")?,
        parse_u64(parts[3], "gen entry")?,
    ])
}

fn format_gen(g: [u64; 4]) -> String {
    format!("{},{},{},{}", g[0], g[1], g[2], g[3])
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// Signal files
// ---------------------------------------------------------------------------

/// A complex-valued function on the `p` field points, in point order.
#[derive(Debug, Clone)]
pub struct SignalFile {
    pub p: Prime,
    pub values: CVector,
}

impl SignalFile {
    pub fn new(p: Prime, values: CVector) -> CliResult<SignalFile> {
        if values.len() != p.as_usize() {
            return Err(usage(format!(
                "signal must have exactly p = {} values, got {}",
                p.get(),
                values.len()
            )));
        }
        Ok(SignalFile { p, values })
    }

    pub fn to_text(&self) -> String {
        let mut out = header_line(self.p, FileKind::Signal);
        out.push('\n');
        for z in self.values.as_slice() {
            out.push_str(&format_complex(*z));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> CliResult<SignalFile> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| usage("empty signal file".into()))?;
        let p = parse_header(header, FileKind::Signal)?;
        let mut values = Vec::with_capacity(p.as_usize());
        for line in lines {
            values.push(parse_complex(line)?);
        }
        if values.len() != p.as_usize() {
            return Err(usage(format!(
                "signal file for p = {} must list {} values, found {}",
                p.get(),
                p.get(),
                values.len()
            )));
        }
        Ok(SignalFile { p, values: CVector::from_vec(values) })
    }

    pub fn read(path: &Path) -> CliResult<SignalFile> {
        SignalFile::from_text(&read_text(path)?)
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        write_text(path, &self.to_text())
    }
}

// ---------------------------------------------------------------------------
// Coefficient files
// ---------------------------------------------------------------------------

/// One labelled coefficient. `slot` distinguishes the two vectors of a
/// two-dimensional character space; `lambda` is the Fourier eigenvalue when
/// the producing basis carries one.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffLine {
    pub chi: u64,
    pub slot: Option<u64>,
    pub lambda: Option<Eigenvalue>,
    pub value: Complex64,
}

/// A list of coefficients against one torus's characters.
#[derive(Debug, Clone)]
pub struct CoeffsFile {
    pub p: Prime,
    pub torus: String,
    pub gen: [u64; 4],
    pub entries: Vec<CoeffLine>,
}

impl CoeffsFile {
    pub fn to_text(&self) -> String {
        let mut out = header_line(self.p, FileKind::Coeffs);
        out.push('\n');
        for e in &self.entries {
            let _ = write!(out, "chi={}", e.chi);
            if let Some(slot) = e.slot {
                let _ = write!(out, " slot={slot}");
            }
            if let Some(lambda) = e.lambda {
                let _ = write!(out, " lambda={}", lambda.label());
            }
            let _ = writeln!(
                out,
                " torus={} gen={} value={}",
                self.torus,
                format_gen(self.gen),
                format_complex(e.value)
            );
        }
        out
    }

    pub fn from_text(text: &str) -> CliResult<CoeffsFile> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| usage("empty coeffs file".into()))?;
        let p = parse_header(header, FileKind::Coeffs)?;
        let mut torus_gen: Option<(String, [u64; 4])> = None;
        let mut entries = Vec::new();
        for line in lines {
            let mut map = token_map(line, "coeffs line")?;
            let chi = parse_u64(take(&mut map, "chi", "coeffs line")?, "character index")?;
            let slot = match map.remove("slot") {
                Some(s) => Some(parse_u64(s, "slot")?),
                None => None,
            };
            let lambda = match map.remove("lambda") {
                Some(s) => Some(
                    Eigenvalue::from_label(s)
                        .ok_or_else(|| usage(format!("bad lambda `{s}`")))?,
                ),
                None => None,
            };
            let torus = take(&mut map, "torus", "coeffs line")?;
            if !is_torus_label(torus) {
                return Err(usage(format!("unknown torus label `{torus}`")));
            }
            let gen = parse_gen(take(&mut map, "gen", "coeffs line")?)?;
            let value = parse_complex(take(&mut map, "value", "coeffs line")?)?;
            expect_empty(&map, "coeffs line")?;
            match &torus_gen {
                None => torus_gen = Some((torus.to_string(), gen)),
                Some((t, g)) => {
                    if t != torus || *g != gen {
                        return Err(usage(
                            "coeffs file mixes entries from different tori".into(),
                        ));
                    }
                }
            }
            entries.push(CoeffLine { chi, slot, lambda, value });
        }
        let (torus, gen) =
            torus_gen.ok_or_else(|| usage("coeffs file has no entries".into()))?;
        Ok(CoeffsFile { p, torus, gen, entries })
    }

    pub fn read(path: &Path) -> CliResult<CoeffsFile> {
        CoeffsFile::from_text(&read_text(path)?)
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        write_text(path, &self.to_text())
    }
}

// ---------------------------------------------------------------------------
// Basis files
// ---------------------------------------------------------------------------

/// One labelled basis vector of length `p`.
#[derive(Debug, Clone)]
pub struct BasisVector {
    pub chi: u64,
    pub slot: u64,
    pub lambda: Option<Eigenvalue>,
    pub vector: CVector,
}

/// An ordered list of labelled basis vectors for one torus.
#[derive(Debug, Clone)]
pub struct BasisFile {
    pub p: Prime,
    pub torus: String,
    pub gen: [u64; 4],
    pub vectors: Vec<BasisVector>,
}

impl BasisFile {
    pub fn to_text(&self) -> String {
        let mut out = header_line(self.p, FileKind::Basis);
        out.push('\n');
        for v in &self.vectors {
            let _ = write!(out, "vec chi={} slot={}", v.chi, v.slot);
            if let Some(lambda) = v.lambda {
                let _ = write!(out, " lambda={}", lambda.label());
            }
            let _ = writeln!(out, " torus={} gen={}", self.torus, format_gen(self.gen));
            for z in v.vector.as_slice() {
                out.push_str(&format_complex(*z));
                out.push('\n');
            }
        }
        out
    }

    pub fn from_text(text: &str) -> CliResult<BasisFile> {
        let mut lines = text.lines().peekable();
        let header = lines.next().ok_or_else(|| usage("empty basis file".into()))?;
        let p = parse_header(header, FileKind::Basis)?;
        let n = p.as_usize();
        let mut torus_gen: Option<(String, [u64; 4])> = None;
        let mut vectors = Vec::new();
        while let Some(label) = lines.next() {
            let rest = label
                .strip_prefix("vec ")
                .ok_or_else(|| usage(format!("expected `vec ...` label, got `{label}`")))?;
            let mut map = token_map(rest, "basis label")?;
            let chi = parse_u64(take(&mut map, "chi", "basis label")?, "character index")?;
            let slot = parse_u64(take(&mut map, "slot", "basis label")?, "slot")?;
            let lambda = match map.remove("lambda") {
                Some(s) => Some(
                    Eigenvalue::from_label(s)
                        .ok_or_else(|| usage(format!("bad lambda `{s}`")))?,
                ),
                None => None,
            };
            let torus = take(&mut map, "torus", "basis label")?;
            if !is_torus_label(torus) {
                return Err(usage(format!("unknown torus label `{torus}`")));
            }
            let gen = parse_gen(take(&mut map, "gen", "basis label")?)?;
            expect_empty(&map, "basis label")?;
            match &torus_gen {
                None => torus_gen = Some((torus.to_string(), gen)),
                Some((t, g)) => {
                    if t != torus || *g != gen {
                        return Err(usage(
                            "basis file mixes vectors from different tori".into(),
                        ));
                    }
                }
            }
            let mut components = Vec::with_capacity(n);
            for _ in 0..n {
                let line = lines
                    .next()
                    .ok_or_else(|| usage("basis vector truncated".into()))?;
                components.push(parse_complex(line)?);
            }
            vectors.push(BasisVector {
                chi,
                slot,
                lambda,
                vector: CVector::from_vec(components),
            });
        }
        let (torus, gen) =
            torus_gen.ok_or_else(|| usage("basis file has no vectors".into()))?;
        Ok(BasisFile { p, torus, gen, vectors })
    }

    pub fn read(path: &Path) -> CliResult<BasisFile> {
        BasisFile::from_text(&read_text(path)?)
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        write_text(path, &self.to_text())
    }
}
