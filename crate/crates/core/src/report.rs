//! Rendering of reports as JSON, CSV or Markdown tables.
//!
//! Every renderer is a pure function of its input, so output is
//! byte-identical across runs.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::dsl::GroupSpec;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::harness::{SurveyRow, VerificationReport};
use crate::lattice::SubgroupLattice;
use crate::measure::{ClassRow, SpectrumReport};
use crate::structure::{center, is_maximal_class, lower_central_series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReportFormat {
    Json,
    Csv,
    Md,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "md" => Ok(ReportFormat::Md),
            other => Err(Error::InvalidParameter(format!("unknown format `{other}` (json, csv, md)"))),
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn csv_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("row serializes");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}

/// A Markdown table; cells are taken verbatim.
fn md_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
    for row in rows {
        let _ = writeln!(s, "| {} |", row.join(" | "));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShowReport {
    pub spec: String,
    pub order: u64,
    pub center_order: u64,
    /// Nilpotency class, absent for non-nilpotent groups.
    pub class: Option<usize>,
    pub abelian: bool,
    pub nilpotent: bool,
    pub maximal_class: bool,
}

impl ShowReport {
    pub fn new(spec: &GroupSpec, g: &Group) -> ShowReport {
        let lcs = lower_central_series(g);
        ShowReport {
            spec: spec.render(),
            order: g.order() as u64,
            center_order: center(g).size() as u64,
            class: lcs.class,
            abelian: g.is_abelian(),
            nilpotent: lcs.nilpotent,
            maximal_class: is_maximal_class(g),
        }
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => json(self),
            ReportFormat::Csv => csv_rows([self]),
            ReportFormat::Md => {
                let class = self.class.map_or("-".to_string(), |c| c.to_string());
                md_table(
                    &["property", "value"],
                    [
                        ("spec", self.spec.clone()),
                        ("order", self.order.to_string()),
                        ("center order", self.center_order.to_string()),
                        ("class", class),
                        ("abelian", self.abelian.to_string()),
                        ("nilpotent", self.nilpotent.to_string()),
                        ("maximal class", self.maximal_class.to_string()),
                    ]
                    .into_iter()
                    .map(|(k, v)| vec![k.to_string(), v]),
                )
            }
        }
    }
}

#[derive(Serialize)]
struct SpectrumJson<'a> {
    spec: String,
    order: u64,
    center_order: u64,
    classes: &'a [ClassRow],
    im: &'a [u64],
    im_count: usize,
    cd_measure: u64,
    cd_member_count: usize,
}

pub fn render_spectrum(spec: &GroupSpec, report: &SpectrumReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => json(&SpectrumJson {
            spec: spec.render(),
            order: report.order,
            center_order: report.center_order,
            classes: &report.classes,
            im: &report.im,
            im_count: report.im_count,
            cd_measure: report.max_measure,
            cd_member_count: report.cd_members.len(),
        }),
        ReportFormat::Csv => csv_rows(&report.classes),
        ReportFormat::Md => {
            let im: Vec<String> = report.im.iter().map(|v| v.to_string()).collect();
            let mut s = format!(
                "**{}**: order {}, center order {}, im_count {}, CD measure {} (CD lattice of size {})\n\nIm = {{{}}}\n\n",
                spec.render(),
                report.order,
                report.center_order,
                report.im_count,
                report.max_measure,
                report.cd_members.len(),
                im.join(", ")
            );
            s.push_str(&md_table(
                &["order of H", "class size", "order of C(H)", "measure"],
                report.classes.iter().map(|c| {
                    vec![
                        c.h_order.to_string(),
                        c.class_size.to_string(),
                        c.centralizer_order.to_string(),
                        c.measure.to_string(),
                    ]
                }),
            ));
            s
        }
    }
}

#[derive(Serialize)]
struct LatticeRow {
    index: usize,
    order: usize,
    class: usize,
    generators: String,
    centralizer_order: u64,
    measure: u64,
    cd: bool,
}

#[derive(Serialize)]
struct LatticeJson<'a> {
    spec: String,
    order: u64,
    subgroup_count: usize,
    class_count: usize,
    subgroups: &'a [LatticeRow],
}

pub fn render_lattice(
    spec: &GroupSpec,
    lattice: &SubgroupLattice,
    report: &SpectrumReport,
    format: ReportFormat,
) -> String {
    let rows: Vec<LatticeRow> = lattice
        .subgroups()
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let gens: Vec<String> = h.generators().iter().map(|x| x.to_string()).collect();
            let r = report.records[i];
            LatticeRow {
                index: i,
                order: h.size(),
                class: lattice.class_of(i),
                generators: gens.join(" "),
                centralizer_order: r.centralizer_size,
                measure: r.measure,
                cd: r.measure == report.max_measure,
            }
        })
        .collect();
    match format {
        ReportFormat::Json => json(&LatticeJson {
            spec: spec.render(),
            order: report.order,
            subgroup_count: lattice.len(),
            class_count: lattice.classes().len(),
            subgroups: &rows,
        }),
        ReportFormat::Csv => csv_rows(&rows),
        ReportFormat::Md => {
            let mut s = format!(
                "**{}**: {} subgroups in {} conjugacy classes\n\n",
                spec.render(),
                lattice.len(),
                lattice.classes().len()
            );
            s.push_str(&md_table(
                &["#", "order of H", "class", "generators", "order of C(H)", "measure", "CD"],
                rows.iter().map(|r| {
                    vec![
                        r.index.to_string(),
                        r.order.to_string(),
                        r.class.to_string(),
                        r.generators.clone(),
                        r.centralizer_order.to_string(),
                        r.measure.to_string(),
                        if r.cd { "yes".into() } else { String::new() },
                    ]
                }),
            ));
            s
        }
    }
}

#[derive(Serialize)]
struct VerificationCsvRow<'a> {
    claim_id: &'a str,
    name: &'a str,
    predicted: u64,
    computed: u64,
    pass: bool,
    note: &'a str,
}

pub fn render_verification(report: &VerificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => json(report),
        ReportFormat::Csv => csv_rows(report.instances.iter().map(|i| VerificationCsvRow {
            claim_id: &report.claim_id,
            name: &i.name,
            predicted: i.predicted,
            computed: i.computed,
            pass: i.pass,
            note: &i.note,
        })),
        ReportFormat::Md => {
            let mut s = format!(
                "## {}: {}\n\n",
                report.claim_id,
                if report.overall_pass { "PASS" } else { "FAIL" }
            );
            s.push_str(&md_table(
                &["instance", "predicted", "computed", "pass", "note"],
                report.instances.iter().map(|i| {
                    vec![
                        i.name.clone(),
                        i.predicted.to_string(),
                        i.computed.to_string(),
                        if i.pass { "ok".into() } else { "FAIL".into() },
                        i.note.clone(),
                    ]
                }),
            ));
            for skip in &report.skipped {
                let _ = writeln!(s, "\n- {skip}");
            }
            s
        }
    }
}

pub fn render_survey(rows: &[SurveyRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => json(rows),
        ReportFormat::Csv => {
            if rows.is_empty() {
                // csv only writes a header alongside the first record
                "name,order,im_count,predicted_bound,bound_source,attains\n".to_string()
            } else {
                csv_rows(rows)
            }
        }
        ReportFormat::Md => md_table(
            &["name", "order", "im_count", "predicted_bound", "bound_source", "attains"],
            rows.iter().map(|r| {
                vec![
                    r.name.clone(),
                    r.order.to_string(),
                    r.im_count.to_string(),
                    r.predicted_bound.to_string(),
                    r.bound_source.to_string(),
                    r.attains.to_string(),
                ]
            }),
        ),
    }
}
