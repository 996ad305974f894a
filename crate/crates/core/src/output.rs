//! Canonical JSON and aligned text rendering of reports.

use std::fmt::Write;

use serde::Serialize;

use crate::correspondence::IdentityReport;
use crate::fixed_points::NestingOutcome;
use crate::report::PrymReport;

/// Pretty JSON with keys in sorted order. Parsing the output into a
/// `serde_json::Value` and rendering it again reproduces it byte for byte.
pub fn canonical_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let value = serde_json::to_value(value)?;
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    Ok(text)
}

fn row(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "  {key:<26} {value}");
}

pub fn identity_table(kind: &str, param: usize, size: usize, id: &IdentityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{kind} correspondence, parameter {param}, fiber size {size}");
    row(&mut out, "D^2 = aI + bD + cU", format!("a = {}, b = {}, c = {}", id.a, id.b, id.c));
    row(&mut out, "verified entrywise", id.verified);
    row(&mut out, "unique", id.unique);
    row(&mut out, "exponent q", id.q.map_or("-".to_string(), |q| q.to_string()));
    if let Some(d) = &id.diagnostic {
        row(&mut out, "diagnostic", d);
    }
    out
}

pub fn report_table(report: &PrymReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", report.scenario.label());
    row(&mut out, "fiber degree", report.fiber_degree);
    row(&mut out, "bidegree d", report.bidegree);
    if let Some(base) = &report.base_cover {
        row(&mut out, "base cover degree", base.degree);
        row(&mut out, "base cover genus", base.genus);
        row(&mut out, "base cover w_f", base.ramification_degree);
        row(&mut out, "simple branch points", base.simple_branch_points);
    }
    row(
        &mut out,
        "identity (a, b, c)",
        format!("({}, {}, {})", report.identity.a, report.identity.b, report.identity.c),
    );
    row(&mut out, "exponent q", report.q.map_or("-".to_string(), |q| q.to_string()));
    row(
        &mut out,
        "transitive monodromy",
        format!(
            "{}{}",
            report.irreducibility.transitive,
            if report.irreducibility.synthesized { " (synthesized tuple)" } else { "" }
        ),
    );
    for m in &report.models {
        let _ = writeln!(out, "model: {}", m.model.name());
        row(&mut out, "w_h", m.ramification_degree);
        row(&mut out, "g_C", m.genus);
        let indices: Vec<String> = m
            .special_fibers
            .iter()
            .map(|f| format!("{:?}", f.ramification_indices))
            .collect();
        row(&mut out, "special fiber indices", indices.join(" "));
        row(&mut out, "Δ.D", m.fixed_points.delta_dot_d);
        row(&mut out, "dim P", m.dim_p.as_ref().map_or("-".to_string(), ToString::to_string));
        row(&mut out, "deg ε", m.epsilon_degree.map_or("-".to_string(), |e| e.to_string()));
        match &m.nesting {
            NestingOutcome::Certified(c) => {
                let names: Vec<&str> = c.points.iter().map(|p| p.name.as_str()).collect();
                row(&mut out, "nesting certificate", format!("({})", names.join(", ")));
            }
            NestingOutcome::Failed { reason } => row(&mut out, "nesting certificate", format!("none: {reason}")),
        }
        for issue in &m.inconsistencies {
            row(&mut out, "inconsistency", issue);
        }
        row(&mut out, "verdict", &m.verdict);
    }
    if let Some(c) = &report.claimed_genus {
        row(
            &mut out,
            "claimed genus",
            format!(
                "{} (recomputed {}, {})",
                c.claimed,
                c.recomputed,
                if c.consistent { "consistent" } else { "inconsistent" }
            ),
        );
    }
    for note in &report.notes {
        row(&mut out, "note", note);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{assemble, Scenario};

    #[test]
    fn json_reparse_is_stable() {
        let report = assemble(&Scenario::pn_case(3, 1).unwrap()).unwrap();
        let text = canonical_json(&report).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(canonical_json(&value).unwrap(), text);
        fn no_floats(v: &serde_json::Value) -> bool {
            match v {
                serde_json::Value::Number(n) => n.is_i64() || n.is_u64(),
                serde_json::Value::Array(a) => a.iter().all(no_floats),
                serde_json::Value::Object(o) => o.values().all(no_floats),
                _ => true,
            }
        }
        assert!(no_floats(&value));
    }

    #[test]
    fn table_mentions_both_models() {
        let report = assemble(&Scenario::hyperelliptic(3)).unwrap();
        let table = report_table(&report);
        assert!(table.contains("model: paper"));
        assert!(table.contains("model: monodromy"));
        assert!(table.contains("(P_{1,1}, P_{1,2}, P_{1,3})"));
    }
}
