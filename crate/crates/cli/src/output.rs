//! Result records and their text and JSON renderings.

use std::fmt::Write as _;

use respcheck_core::verify::VerifyReport;
use respcheck_core::{EvalStats, Game};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Serialize)]
pub struct OutputRecord {
    /// Arguments as given, without the program name.
    pub command: Vec<String>,
    pub game: GameDigest,
    pub result: Payload,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsRecord>,
}

#[derive(Debug, Serialize)]
pub struct GameDigest {
    pub outcomes: usize,
    pub agents: Vec<String>,
}

impl GameDigest {
    pub fn of(game: &Game) -> Self {
        GameDigest { outcomes: game.outcome_count(), agents: game.agents().to_vec() }
    }
}

#[derive(Debug, Serialize)]
pub struct StatsRecord {
    pub node_visits: u64,
    pub set_ops_cost: u64,
}

impl From<EvalStats> for StatsRecord {
    fn from(s: EvalStats) -> Self {
        StatsRecord { node_visits: s.node_visits, set_ops_cost: s.set_ops_cost }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    TruthSet {
        formula: String,
        truth_set: Vec<String>,
    },
    Gap {
        formula: String,
        gap_kind: String,
        order: usize,
        truth_set: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        expansion: Option<String>,
    },
    Vanishing {
        formula: String,
        gap_kind: String,
        /// `None` when the gap is still nonempty at order `bound`.
        vanishing_order: Option<usize>,
        bound: usize,
    },
    Verify {
        passed: bool,
        formulas: usize,
        properties: Vec<PropertyRecord>,
        max_vanishing: Vec<VanishingRecord>,
    },
    Game {
        text: String,
    },
}

#[derive(Debug, Serialize)]
pub struct PropertyRecord {
    pub name: String,
    /// `pass`, `fail` or `skip`.
    pub status: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct VanishingRecord {
    pub gap_kind: String,
    pub max_order: Option<usize>,
}

pub fn verify_payload(report: &VerifyReport, formulas: usize) -> Payload {
    let properties = report
        .properties
        .iter()
        .map(|p| PropertyRecord {
            name: p.name.to_owned(),
            status: match (&p.skipped, p.passed()) {
                (Some(_), _) => "skip",
                (None, true) => "pass",
                (None, false) => "fail",
            },
            checked: p.checked,
            failures: p.failures.clone(),
            skipped: p.skipped.clone(),
        })
        .collect();
    let max_vanishing =
        report.max_vanishing.iter().map(|(k, m)| VanishingRecord { gap_kind: k.to_string(), max_order: *m }).collect();
    Payload::Verify { passed: report.all_passed(), formulas, properties, max_vanishing }
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

impl OutputRecord {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("records serialize");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        match &self.result {
            Payload::TruthSet { truth_set, .. } => writeln!(out, "{}", braces(truth_set)),
            Payload::Gap { truth_set, expansion, .. } => {
                writeln!(out, "{}", braces(truth_set)).and_then(|_| match expansion {
                    Some(e) => writeln!(out, "expansion: {e}"),
                    None => Ok(()),
                })
            }
            Payload::Vanishing { vanishing_order: Some(i), .. } => writeln!(out, "vanishes at order {i}"),
            Payload::Vanishing { vanishing_order: None, bound, .. } => {
                writeln!(out, "does not vanish by order {bound}")
            }
            Payload::Verify { passed, formulas, properties, max_vanishing } => {
                for p in properties {
                    let _ = match &p.skipped {
                        Some(why) => writeln!(out, "SKIP {}: {why}", p.name),
                        None if p.failures.is_empty() => writeln!(out, "PASS {} ({} checked)", p.name, p.checked),
                        None => writeln!(out, "FAIL {} ({} checked)", p.name, p.checked),
                    };
                    for f in &p.failures {
                        let _ = writeln!(out, "  {f}");
                    }
                }
                let orders: Vec<String> = max_vanishing
                    .iter()
                    .map(|v| match v.max_order {
                        Some(i) => format!("{} {i}", v.gap_kind),
                        None => format!("{} -", v.gap_kind),
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    "max vanishing order: {} (bound {})",
                    orders.join(", "),
                    self.game.outcomes.saturating_sub(1)
                );
                let verdict = if *passed { "all properties passed" } else { "some properties failed" };
                writeln!(out, "{verdict} over {formulas} formulae")
            }
            Payload::Game { text } => writeln!(out, "{text}"),
        }
        .expect("writing to a string");
        if let Some(s) = &self.stats {
            let _ = writeln!(out, "node_visits: {}\nset_ops_cost: {}", s.node_visits, s.set_ops_cost);
        }
        out
    }
}
