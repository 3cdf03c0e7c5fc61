//! Loading instance and endomorphism files.
//!
//! Both formats are line-oriented text. An *instance* file poses one
//! divisibility question — a polynomial tuple plus, usually, a modulus:
//!
//! ```text
//! # the worked two-variable pair
//! n = 2
//! f1 = x1
//! f2 = x1*x2
//! g = x1
//! cap = 4
//! ```
//!
//! The header line fixes the ambient ring `Q[x1..xn]`. The `f`-lines must be
//! numbered consecutively from 1; fewer than `n` of them is legal and
//! meaningful (a single `f` exercises the all-partial-derivatives reading of
//! the divisibility side). `g` and `cap` are optional and may follow the
//! `f`-lines in either order. An *endomorphism* file is the same shape with
//! `phi<i> = <poly>` lines — exactly `n` of them, since an endomorphism needs
//! all of its images — and takes `cap` but not `g` (witness searches choose
//! their own modulus). Blank lines and lines starting with `#` are skipped,
//! so shipped catalog files can describe themselves.
//!
//! Every error names the offending file and line (`catalog/e1.inst:3: ...`);
//! the command-line front end forwards these verbatim.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::theorem::Endo;

/// One parsed instance file: a tuple `f1..fm` in `Q[x1..xn]` with `m <= n`,
/// an optional modulus `g`, and an optional per-file degree cap.
#[derive(Debug, Clone)]
pub struct Instance {
    name: String,
    polys: Vec<Poly>,
    modulus: Option<Poly>,
    cap: Option<u32>,
}

impl Instance {
    /// The file stem, used to label catalog rows and reports.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> usize {
        self.polys[0].ambient()
    }

    /// The tuple `f1..fm`, in file order.
    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn modulus(&self) -> Option<&Poly> {
        self.modulus.as_ref()
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }
}

/// One parsed endomorphism file: `phi(x_i) = images[i-1]`, plus an optional
/// per-file degree cap for witness searches.
#[derive(Debug, Clone)]
pub struct EndoInstance {
    name: String,
    endo: Endo,
    cap: Option<u32>,
}

impl EndoInstance {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn endo(&self) -> &Endo {
        &self.endo
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }
}

/// Parse instance-file text. `source` is the label used in error messages,
/// normally the path the text was read from; the instance's name is its stem.
pub fn parse_instance(text: &str, source: &str) -> Result<Instance> {
    let mut lines = significant_lines(text);
    let n = header(&mut lines, source)?;

    let mut polys: Vec<Poly> = Vec::new();
    let mut modulus = None;
    let mut cap = None;
    for (lineno, key, value) in lines {
        let err = |msg: &dyn fmt::Display| line_err(source, lineno, msg);
        match key {
            _ if key == format!("f{}", polys.len() + 1) => {
                if modulus.is_some() || cap.is_some() {
                    return Err(err(&"f-lines must precede g and cap"));
                }
                if polys.len() == n {
                    return Err(err(&format!(
                        "more than n = {n} polynomial lines"
                    )));
                }
                polys.push(parse_value(value, n, source, lineno, key)?);
            }
            "g" => {
                if modulus.is_some() {
                    return Err(err(&"duplicate g line"));
                }
                if polys.is_empty() {
                    return Err(err(&"g must come after the f-lines"));
                }
                modulus = Some(parse_value(value, n, source, lineno, key)?);
            }
            "cap" => {
                if cap.is_some() {
                    return Err(err(&"duplicate cap line"));
                }
                cap = Some(parse_cap(value, source, lineno)?);
            }
            _ => {
                return Err(err(&format!(
                    "unexpected key '{key}' (expected f{}, g, or cap)",
                    polys.len() + 1
                )));
            }
        }
    }
    if polys.is_empty() {
        return Err(line_err(source, 0, &"no polynomial lines"));
    }
    Ok(Instance {
        name: stem_of(source),
        polys,
        modulus,
        cap,
    })
}

/// Parse endomorphism-file text; see [`parse_instance`] for conventions.
pub fn parse_endo(text: &str, source: &str) -> Result<EndoInstance> {
    let mut lines = significant_lines(text);
    let n = header(&mut lines, source)?;

    let mut images: Vec<Poly> = Vec::new();
    let mut cap = None;
    for (lineno, key, value) in lines {
        let err = |msg: &dyn fmt::Display| line_err(source, lineno, msg);
        match key {
            _ if key == format!("phi{}", images.len() + 1) => {
                if cap.is_some() {
                    return Err(err(&"phi-lines must precede cap"));
                }
                if images.len() == n {
                    return Err(err(&format!(
                        "more than n = {n} image lines"
                    )));
                }
                images.push(parse_value(value, n, source, lineno, key)?);
            }
            "g" => {
                return Err(err(
                    &"endomorphism files take no modulus; witness searches pick their own g",
                ));
            }
            "cap" => {
                if cap.is_some() {
                    return Err(err(&"duplicate cap line"));
                }
                cap = Some(parse_cap(value, source, lineno)?);
            }
            _ => {
                return Err(err(&format!(
                    "unexpected key '{key}' (expected phi{} or cap)",
                    images.len() + 1
                )));
            }
        }
    }
    if images.len() != n {
        return Err(line_err(
            source,
            0,
            &format!(
                "an endomorphism of Q[x1..x{n}] needs exactly {n} images, found {}",
                images.len()
            ),
        ));
    }
    Ok(EndoInstance {
        name: stem_of(source),
        endo: Endo::new(images)?,
        cap,
    })
}

/// Read and parse an instance file from disk.
pub fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?, &path.display().to_string())
}

/// Read and parse an endomorphism file from disk.
pub fn load_endo(path: &Path) -> Result<EndoInstance> {
    parse_endo(&std::fs::read_to_string(path)?, &path.display().to_string())
}

/// `(line number, key, value)` for each `key = value` line, skipping blank
/// lines and `#` comments. A line without `=` is reported as its whole text
/// so the caller's "unexpected key" message names it.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        let (key, value) = match line.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => (line, ""),
        };
        Some((i + 1, key, value))
    })
}

/// Consume the mandatory `n = <int>` header.
fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str, &'a str)>,
    source: &str,
) -> Result<usize> {
    let Some((lineno, key, value)) = lines.next() else {
        return Err(line_err(source, 0, &"empty file; expected 'n = <int>'"));
    };
    if key != "n" {
        return Err(line_err(
            source,
            lineno,
            &format!("expected 'n = <int>' first, found '{key}'"),
        ));
    }
    match value.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(line_err(
            source,
            lineno,
            &format!("n must be a positive integer, got '{value}'"),
        )),
    }
}

fn parse_value(
    value: &str,
    ambient: usize,
    source: &str,
    lineno: usize,
    key: &str,
) -> Result<Poly> {
    parse_poly(value, ambient)
        .map_err(|e| line_err(source, lineno, &format!("in {key}: {e}")))
}

fn parse_cap(value: &str, source: &str, lineno: usize) -> Result<u32> {
    match value.parse::<u32>() {
        Ok(c) if c >= 1 => Ok(c),
        _ => Err(line_err(
            source,
            lineno,
            &format!("cap must be a positive integer, got '{value}'"),
        )),
    }
}

fn line_err(source: &str, lineno: usize, msg: &dyn fmt::Display) -> Error {
    if lineno == 0 {
        Error::invalid(format!("{source}: {msg}"))
    } else {
        Error::invalid(format!("{source}:{lineno}: {msg}"))
    }
}

fn stem_of(source: &str) -> String {
    Path::new(source)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| source.to_string())
}
