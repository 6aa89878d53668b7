//! Text, JSON and CSV renderings. All output is deterministic for a given
//! input so runs can be diffed byte for byte.

use std::fmt::Write;

use clap::ValueEnum;
use serde::Serialize;
use tcone_core::verify::{CheckReport, ConeRecord, ConeSet, DiffReport};
use tcone_core::TangentCone;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn csv(records: &[ConeRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["rank", "w", "one_line", "length", "dimension", "generators", "cone_class_id"])
        .expect("in-memory write");
    for r in records {
        let one_line: Vec<String> = r.one_line.iter().map(|i| i.to_string()).collect();
        w.write_record([
            r.rank.to_string(),
            r.w.clone(),
            one_line.join(" "),
            r.length.to_string(),
            r.dimension.to_string(),
            r.generators.join("; "),
            r.cone_class_id.map(|c| c.to_string()).unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn equations(gens: &[String]) -> String {
    if gens.is_empty() {
        "n*".to_string()
    } else {
        gens.join(", ")
    }
}

pub fn cone(cone: &TangentCone, format: Format) -> String {
    let record = ConeRecord::from_cone(cone, None);
    match format {
        Format::Json => json(&record),
        Format::Csv => csv(&[record]),
        Format::Text => {
            let one_line: Vec<String> = record.one_line.iter().map(|i| i.to_string()).collect();
            let mut s = String::new();
            writeln!(s, "w: {}", record.w).unwrap();
            writeln!(s, "one-line: {}", one_line.join(" ")).unwrap();
            writeln!(s, "length: {}", record.length).unwrap();
            writeln!(s, "dimension: {}", record.dimension).unwrap();
            if !cone.dimension_matches_length() {
                writeln!(s, "warning: dimension differs from length").unwrap();
            }
            writeln!(s, "generators:").unwrap();
            if record.generators.is_empty() {
                writeln!(s, "  (none: the cone is all of n*)").unwrap();
            }
            for g in &record.generators {
                writeln!(s, "  {g}").unwrap();
            }
            s
        }
    }
}

/// Records ordered class by class, members in enumeration order.
fn table_records(set: &ConeSet, classes: &[Vec<usize>]) -> Vec<ConeRecord> {
    classes
        .iter()
        .enumerate()
        .flat_map(|(id, class)| class.iter().map(move |&k| ConeRecord::from_cone(&set.cones[k], Some(id))))
        .collect()
}

pub fn table(set: &ConeSet, classes: &[Vec<usize>], format: Format) -> String {
    match format {
        Format::Json => json(&table_records(set, classes)),
        Format::Csv => csv(&table_records(set, classes)),
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "A{}: {} elements, {} cone classes",
                set.rank,
                set.len(),
                classes.len()
            )
            .unwrap();
            writeln!(s, "w | C(w)").unwrap();
            for class in classes {
                let names: Vec<String> = class.iter().map(|&k| set.cones[k].w.to_string()).collect();
                let rep = &set.cones[class[0]];
                let gens: Vec<String> = rep.generators().iter().map(|g| g.to_string()).collect();
                writeln!(s, "{} | {}", names.join(", "), equations(&gens)).unwrap();
            }
            s
        }
    }
}

#[derive(Serialize)]
struct VerificationJson<'a> {
    pass: bool,
    checks: &'a [CheckReport],
    #[serde(skip_serializing_if = "Option::is_none")]
    corpus: Option<&'a DiffReport>,
}

pub fn verification(checks: &[CheckReport], diff: Option<&DiffReport>, pass: bool, format: Format) -> String {
    match format {
        Format::Json => json(&VerificationJson {
            pass,
            checks,
            corpus: diff,
        }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["check", "rank", "checked", "passed", "status"]).expect("in-memory write");
            let status = |ok: bool| if ok { "PASS" } else { "FAIL" };
            for c in checks {
                w.write_record([
                    c.name.clone(),
                    c.rank.to_string(),
                    c.checked.to_string(),
                    c.passed().to_string(),
                    status(c.is_pass()).to_string(),
                ])
                .expect("in-memory write");
            }
            if let Some(d) = diff {
                w.write_record([
                    "corpus".to_string(),
                    d.rank.to_string(),
                    d.summary.entries.to_string(),
                    d.summary.matched.to_string(),
                    status(d.is_pass()).to_string(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Text => {
            let mut s = String::new();
            for c in checks {
                write!(s, "{c}").unwrap();
            }
            if let Some(d) = diff {
                write!(s, "{d}").unwrap();
            }
            writeln!(s, "{}", if pass { "all checks passed" } else { "verification FAILED" }).unwrap();
            s
        }
    }
}
