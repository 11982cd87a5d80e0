//! Consistency sweep: recomputes the invariant for every catalog group and
//! compares it against independently known closed forms.

use burnside::catalog::builtin_catalog;
use burnside::formats::format_ranks;
use burnside::galois::{chi_of, cyclic_rank, solvable_rank};
use burnside::group::{make_group, GroupSpec};
use burnside::marks::prime_divisors;
use burnside::pipeline::{analyze_group, GroupAnalysis};
use burnside::Error;

/// Invariants asserted for one analyzed group. Returns the names of the
/// checks that failed.
fn problems(spec: &GroupSpec, analysis: &GroupAnalysis) -> burnside::Result<Vec<&'static str>> {
    let mut failed = Vec::new();
    let ranks = analysis.invariant.ranks();

    let solvable = analysis.group.is_solvable();
    if (analysis.invariant.component_count() == 1) != solvable {
        failed.push("connectedness matches solvability");
    }
    if solvable {
        let expected = solvable_rank(&analysis.tom)?;
        if expected < 0 || ranks != vec![expected as u64] {
            failed.push("rank formula for solvable groups");
        }
    }
    if let GroupSpec::Cyclic(n) = spec {
        if ranks != vec![cyclic_rank(*n)?] {
            failed.push("divisor count formula for cyclic groups");
        }
    }
    if prime_divisors(analysis.tom.group_order())?.len() <= 1 && ranks != vec![0] {
        failed.push("trivial invariant for prime power order");
    }

    let mut chi = 1i64;
    for step in analysis.invariant.steps() {
        chi += 1 - step.primes.len() as i64;
        if chi != chi_of(&step.ranks_after) {
            failed.push("chi recurrence");
            break;
        }
    }
    if chi == analysis.invariant.chi() && analysis.invariant.chi() != chi_of(&ranks) {
        failed.push("chi total");
    }
    Ok(failed)
}

pub fn run(max_order: u64) -> burnside::Result<()> {
    let cap = crate::resolve_cap(max_order)?;
    let entries = builtin_catalog(max_order);
    let name_width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);

    let mut failures: Vec<String> = Vec::new();
    for entry in &entries {
        let group = make_group(&entry.spec, cap)?;
        let analysis = analyze_group(&entry.name, group)?;
        let failed = problems(&entry.spec, &analysis)?;
        let status = if failed.is_empty() {
            "ok".to_owned()
        } else {
            format!("FAIL: {}", failed.join(", "))
        };
        println!(
            "{:<name_width$}  order {:>4}  classes {:>3}  L = {:<12} {status}",
            entry.name,
            entry.order,
            analysis.classes.class_count(),
            format_ranks(&analysis.invariant.ranks()),
        );
        for what in failed {
            failures.push(format!("{} ({what})", entry.name));
        }
    }

    if failures.is_empty() {
        println!("checked {} groups, all invariants hold", entries.len());
        Ok(())
    } else {
        println!(
            "checked {} groups, {} failed",
            entries.len(),
            failures.len()
        );
        Err(Error::Invariant(format!(
            "consistency checks failed: {}",
            failures.join("; ")
        )))
    }
}
