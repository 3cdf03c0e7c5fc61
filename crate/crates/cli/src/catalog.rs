//! The catalog runner: verify every instance and endomorphism file under a
//! directory and print one summary row per file.
//!
//! Files are discovered recursively, sorted by relative path, parsed up
//! front (a malformed file aborts the run before any verification starts,
//! naming the file), then verified — in parallel when the engine is built
//! with its default `parallel` feature. Output is buffered per row and
//! emitted in path order, so the report is byte-identical no matter how the
//! work was scheduled.
//!
//! Verdict per file kind:
//!
//! * `.inst` — the two-sided divisibility check at the effective cap
//!   (command-line `--cap` wins over the file's `cap`, which wins over 6).
//! * `.endo` with unit jacobian — the square-free image audit over the
//!   deterministic irreducible corpus; a non-square-free image would be a
//!   genuine counterexample.
//! * `.endo` otherwise — the non-square-free witness search; success confirms
//!   the characterization, exhaustion is reported as inconclusive.
//!
//! The process exit is nonzero exactly when some row is a counterexample or
//! a soundness re-check fails.

use std::path::{Path, PathBuf};
use std::time::Instant;

use keller_core::{
    check_jacobian_condition, irreducible_corpus, load_endo, load_instance,
    non_squarefree_witness, par, squarefree_image_audit, verify_theorem2, EngineOptions, Error,
    Result, Verdict,
};

use crate::report::Report;

pub struct CatalogOptions {
    /// Explicit `--cap`, if the user passed one.
    pub cap_override: Option<u32>,
    pub corpus_size: usize,
    pub engine: EngineOptions,
    pub timings: bool,
}

struct Row {
    name: String,
    kind: &'static str,
    verdict: String,
    witness_degree: Option<u32>,
    millis: u128,
}

/// Recursively collect catalog files, sorted by their path relative to the
/// root so the order is stable and readable.
fn collect_files(root: &Path) -> Result<Vec<PathBuf>> {
    fn walk(dir: &Path, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.is_dir() {
                walk(&path, out)?;
            } else if path.extension().is_some_and(|x| x == "inst" || x == "endo") {
                out.push(path);
            }
        }
        Ok(())
    }
    let mut files = Vec::new();
    walk(root, &mut files)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", root.display())))?;
    files.sort();
    Ok(files)
}

fn verdict_counts(rows: &[Row]) -> (usize, usize, usize) {
    let confirmed = rows
        .iter()
        .filter(|r| r.verdict == Verdict::EquivalenceConfirmed.to_string())
        .count();
    let counterexamples = rows
        .iter()
        .filter(|r| r.verdict == Verdict::CounterexampleFound.to_string())
        .count();
    (confirmed, counterexamples, rows.len() - confirmed - counterexamples)
}

fn instance_row(path: &Path, root: &Path, opts: &CatalogOptions) -> Result<Row> {
    let inst = load_instance(path)?;
    let cap = opts.cap_override.or(inst.cap()).unwrap_or(6);
    let g = inst.modulus().ok_or_else(|| {
        Error::InvalidInput(format!(
            "{}: catalog verification needs a g line",
            path.display()
        ))
    })?;
    let started = Instant::now();
    let report = verify_theorem2(inst.polys(), g, cap, &opts.engine)?;
    Ok(Row {
        name: rel_name(path, root),
        kind: "instance",
        verdict: report.verdict.to_string(),
        witness_degree: report.witness_degree,
        millis: started.elapsed().as_millis(),
    })
}

fn endo_row(path: &Path, root: &Path, opts: &CatalogOptions) -> Result<Row> {
    let endo = load_endo(path)?;
    let phi = endo.endo();
    let cap = opts.cap_override.or(endo.cap()).unwrap_or(6);
    let started = Instant::now();
    let condition = check_jacobian_condition(phi)?;
    let (verdict, witness_degree) = if condition.is_keller {
        let corpus = irreducible_corpus(phi.n(), opts.corpus_size)?;
        let audit = squarefree_image_audit(phi, &corpus)?;
        let clean = audit.audit.iter().all(|(_, square_free)| *square_free);
        let verdict = if clean {
            Verdict::EquivalenceConfirmed
        } else {
            Verdict::CounterexampleFound
        };
        (verdict, None)
    } else {
        match non_squarefree_witness(phi, cap, &opts.engine)? {
            Some((w, _)) => (
                Verdict::EquivalenceConfirmed,
                Some(w.degree().finite().expect("nonzero witness")),
            ),
            None => (Verdict::InconclusiveCapReached, None),
        }
    };
    Ok(Row {
        name: rel_name(path, root),
        kind: "endo",
        verdict: verdict.to_string(),
        witness_degree,
        millis: started.elapsed().as_millis(),
    })
}

fn rel_name(path: &Path, root: &Path) -> String {
    path.strip_prefix(root)
        .unwrap_or(path)
        .with_extension("")
        .to_string_lossy()
        .replace('\\', "/")
}

/// Run the whole directory. Returns the report plus the process exit code.
pub fn run_catalog(root: &Path, opts: &CatalogOptions) -> Result<(Report, i32)> {
    let files = collect_files(root)?;
    let rows: Vec<Result<Row>> = par::map_ordered(&files, |path| {
        if path.extension().is_some_and(|x| x == "inst") {
            instance_row(path, root, opts)
        } else {
            endo_row(path, root, opts)
        }
    });
    let mut table = Vec::with_capacity(rows.len());
    for row in rows {
        table.push(row?);
    }

    let mut report = Report::new();
    let name_width = table.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
    let verdict_width = table.iter().map(|r| r.verdict.len()).max().unwrap_or(7).max(7);
    for row in &table {
        let degree = row
            .witness_degree
            .map_or_else(|| "-".to_string(), |d| d.to_string());
        let time = if opts.timings {
            format!("  {} ms", row.millis)
        } else {
            String::new()
        };
        report.note(format!(
            "{:<name_width$}  {:<8}  {:<verdict_width$}  witness-degree {degree}{time}",
            row.name, row.kind, row.verdict
        ));
        let key = &row.name;
        report.field(&format!("{key}.kind"), row.kind);
        report.field(&format!("{key}.verdict"), &row.verdict);
        report.field(&format!("{key}.witness_degree"), degree);
        if opts.timings {
            report.field(&format!("{key}.time_ms"), row.millis);
        }
    }

    let (confirmed, counterexamples, inconclusive) = verdict_counts(&table);
    report.note(format!(
        "{} file(s): {confirmed} confirmed, {inconclusive} inconclusive, \
         {counterexamples} counterexample(s)",
        table.len()
    ));
    report.field("summary.files", table.len());
    report.field("summary.confirmed", confirmed);
    report.field("summary.inconclusive", inconclusive);
    report.field("summary.counterexamples", counterexamples);

    Ok((report, if counterexamples > 0 { 1 } else { 0 }))
}
