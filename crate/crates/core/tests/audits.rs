use ordsup_core::analysis::AnalysisConfig;
use ordsup_core::audit::{
    audit_family, AuditReport, ClauseOutcome, Family, Params, RowStatus,
};

fn run(family: Family) -> AuditReport {
    audit_family(family, &family.default_source(), &AnalysisConfig::default()).unwrap()
}

fn computed(report: &AuditReport, spec: &str) -> bool {
    report
        .rows
        .iter()
        .find(|r| r.params == Params::Spec(spec.into()))
        .unwrap_or_else(|| panic!("no row for {spec}"))
        .computed
}

#[test]
fn dihedral_family_matches_the_predicate() {
    let report = run(Family::Dihedral);
    assert_eq!(report.rows.len(), 62);
    assert!(report.discrepancies.is_empty());
    let falses: Vec<u64> = report
        .rows
        .iter()
        .filter(|r| !r.computed)
        .map(|r| match r.params {
            Params::N(n) => n,
            _ => unreachable!(),
        })
        .collect();
    assert_eq!(falses, [3, 4, 6, 8, 12, 16, 32, 64]);
}

#[test]
fn dicyclic_family_matches_the_predicate() {
    let report = run(Family::Dicyclic);
    assert_eq!(report.rows.len(), 31);
    assert!(report.discrepancies.is_empty());
    for r in &report.rows {
        let Params::N(n) = r.params else { unreachable!() };
        assert_eq!(r.computed, !n.is_power_of_two(), "n = {n}");
    }
}

#[test]
fn symmetric_and_alternating_families() {
    for family in [Family::Symmetric, Family::Alternating] {
        let report = run(family);
        assert!(report.discrepancies.is_empty(), "{family}");
        let got: Vec<bool> = report.rows.iter().map(|r| r.computed).collect();
        assert_eq!(got, [false, true, true, true, true], "{family}");
    }
}

#[test]
fn catalog_audits_complete_and_hit_the_anchors() {
    let eppo = run(Family::Eppo);
    let nilpotent = run(Family::Nilpotent);
    let epo = run(Family::Epo);
    for report in [&eppo, &nilpotent, &epo] {
        assert!(report.rows.iter().all(|r| r.status == RowStatus::Ok));
        assert!(report.rows.iter().all(|r| r.computed == r.certificate.is_some()));
        for d in &report.discrepancies {
            eprintln!("discrepancy: {} {} predicate={:?} computed={}", d.family, d.params, d.predicate, d.computed);
        }
    }
    assert!(computed(&eppo, "alt:4"));
    assert!(!computed(&eppo, "sym:3"));
    assert!(computed(&eppo, "alt:5"));
    assert!(!computed(&nilpotent, "product:cyclic:2*cyclic:3"));
    assert!(!computed(&nilpotent, "product:cyclic:4*cyclic:3"));
    assert!(computed(&nilpotent, "product:cyclic:8*cyclic:3"));
    assert!(computed(&nilpotent, "product:cyclic:2*cyclic:3*cyclic:5"));
    assert!(!computed(&nilpotent, "product:cyclic:2*cyclic:2*cyclic:3"));
    for r in &nilpotent.rows {
        assert_eq!(r.clauses["(v)"], ClauseOutcome::Vacuous);
    }
}
