//! Audits of the separability characterizations: each row builds a group,
//! decides separability of its order supergraph, evaluates the theorem's
//! predicate and records whether the two agree.

mod catalog;
mod predicates;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use catalog::{eppo_catalog, epo_catalog, nilpotent_catalog};
pub use predicates::{
    alternating_predicate, dicyclic_predicate, dihedral_predicate, eppo_predicate, epo_predicate,
    nilpotent_predicate, symmetric_predicate, ClauseOutcome, Clauses, PredicateOutcome,
    DICYCLIC_CLAUSES, DIHEDRAL_CLAUSES, EPPO_CLAUSES, NILPOTENT_CLAUSES, SYMMETRIC_CLAUSES,
};

use crate::analysis::{Analysis, AnalysisConfig, ComputePath, LabeledCertificate};
use crate::group::GroupError;
use crate::groupspec::{build_group, GroupInstance, GroupSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Dihedral,
    Dicyclic,
    Eppo,
    Epo,
    Nilpotent,
    Symmetric,
    Alternating,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Dihedral,
        Family::Dicyclic,
        Family::Eppo,
        Family::Epo,
        Family::Nilpotent,
        Family::Symmetric,
        Family::Alternating,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Dihedral => "dihedral",
            Family::Dicyclic => "dicyclic",
            Family::Eppo => "eppo",
            Family::Epo => "epo",
            Family::Nilpotent => "nilpotent",
            Family::Symmetric => "symmetric",
            Family::Alternating => "alternating",
        }
    }

    /// Whether rows are indexed by an integer parameter rather than a group.
    pub fn is_parametric(self) -> bool {
        !matches!(self, Family::Eppo | Family::Epo | Family::Nilpotent)
    }

    /// Smallest admissible parameter of a parametric family.
    pub fn min_parameter(self) -> Option<u64> {
        match self {
            Family::Dihedral | Family::Symmetric | Family::Alternating => Some(3),
            Family::Dicyclic => Some(2),
            _ => None,
        }
    }

    /// Parameter range or group list audited when no explicit source is given.
    pub fn default_source(self) -> AuditSource {
        match self {
            Family::Dihedral => AuditSource::Range { from: 3, to: 64 },
            Family::Dicyclic => AuditSource::Range { from: 2, to: 32 },
            Family::Symmetric | Family::Alternating => AuditSource::Range { from: 3, to: 7 },
            Family::Eppo => AuditSource::Specs(eppo_catalog()),
            Family::Epo => AuditSource::Specs(epo_catalog()),
            Family::Nilpotent => AuditSource::Specs(nilpotent_catalog()),
        }
    }

    pub fn clause_labels(self) -> &'static [&'static str] {
        match self {
            Family::Dihedral => &DIHEDRAL_CLAUSES,
            Family::Dicyclic => &DICYCLIC_CLAUSES,
            Family::Eppo | Family::Epo => &EPPO_CLAUSES,
            Family::Nilpotent => &NILPOTENT_CLAUSES,
            Family::Symmetric | Family::Alternating => &SYMMETRIC_CLAUSES,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| format!("unknown family '{s}'"))
    }
}

/// What a row is about: an integer parameter or a group spec.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Params {
    N(u64),
    Spec(String),
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::N(n) => write!(f, "n={n}"),
            Params::Spec(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditSource {
    Range { from: u64, to: u64 },
    Specs(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    HypothesisFailed,
}

/// One audited parameter. `predicate` and `agree` are absent when the group
/// does not satisfy the theorem's hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub family: Family,
    pub params: Params,
    pub group: String,
    pub order: u64,
    pub status: RowStatus,
    pub predicate: Option<bool>,
    pub computed: bool,
    pub agree: Option<bool>,
    pub path: ComputePath,
    pub certificate: Option<LabeledCertificate>,
    pub clauses: Clauses,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TheoremVerdict {
    pub fn is_discrepancy(&self) -> bool {
        self.agree == Some(false)
    }

    fn sort_key(&self) -> (u64, u64, String) {
        match &self.params {
            Params::N(n) => (*n, 0, String::new()),
            Params::Spec(s) => (0, self.order, s.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditMetadata {
    pub tool: String,
    pub version: String,
    pub family: Family,
    pub element_cap: u64,
    pub direct_threshold: u64,
    pub cycle_limit: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub metadata: AuditMetadata,
    pub rows: Vec<TheoremVerdict>,
    pub discrepancies: Vec<TheoremVerdict>,
}

fn predicate_for(
    family: Family,
    params: &Params,
    group: &GroupInstance,
) -> Result<std::result::Result<PredicateOutcome, String>> {
    let profile = group.profile();
    let outcome = match (family, params) {
        (Family::Dihedral, Params::N(n)) => dihedral_predicate(*n),
        (Family::Dicyclic, Params::N(n)) => dicyclic_predicate(*n),
        (Family::Symmetric, Params::N(n)) => symmetric_predicate(*n),
        (Family::Alternating, Params::N(n)) => alternating_predicate(*n),
        (Family::Eppo, _) => eppo_predicate(&profile),
        (Family::Epo, _) => epo_predicate(&profile),
        (Family::Nilpotent, _) => {
            let commuting = group.is_nilpotent();
            if commuting != profile.all_sylows_normal() {
                return Err(Error::PathMismatch(format!(
                    "{}: nilpotency tests disagree",
                    group.name()
                )));
            }
            if commuting {
                nilpotent_predicate(&profile)
            } else {
                Err(Error::Hypothesis("group is not nilpotent".into()))
            }
        }
        _ => unreachable!("parameter kind checked by the caller"),
    };
    match outcome {
        Ok(p) => Ok(Ok(p)),
        Err(Error::Hypothesis(why)) => Ok(Err(why)),
        Err(e) => Err(e),
    }
}

fn family_spec(family: Family, n: u64) -> GroupSpec {
    let n = n as usize;
    match family {
        Family::Dihedral => GroupSpec::Dihedral(n),
        Family::Dicyclic => GroupSpec::Dicyclic(n),
        Family::Symmetric => GroupSpec::Symmetric(n),
        Family::Alternating => GroupSpec::Alternating(n),
        _ => unreachable!("parametric families only"),
    }
}

/// Audits a single row.
pub fn audit_row(family: Family, params: &Params, config: &AnalysisConfig) -> Result<TheoremVerdict> {
    let spec = match (params, family.is_parametric()) {
        (Params::N(n), true) => family_spec(family, *n),
        (Params::Spec(s), false) => s.parse::<GroupSpec>()?,
        _ => {
            return Err(GroupError::InvalidParameter(format!(
                "{family} rows take {}",
                if family.is_parametric() { "an integer" } else { "a group spec" }
            ))
            .into())
        }
    };
    let group = build_group(&spec, &config.limits())?;
    let separability = Analysis::new(&group, *config)?.separability()?;
    let (status, predicate, clauses, note) = match predicate_for(family, params, &group)? {
        Ok(p) => (RowStatus::Ok, Some(p.value), p.clauses, None),
        Err(why) => (RowStatus::HypothesisFailed, None, Clauses::new(), Some(why)),
    };
    Ok(TheoremVerdict {
        family,
        params: params.clone(),
        group: group.name().to_string(),
        order: group.order(),
        status,
        predicate,
        computed: separability.separable,
        agree: predicate.map(|p| p == separability.separable),
        path: separability.path,
        certificate: separability.certificate,
        clauses,
        note,
    })
}

/// Audits every row of `source` on the current rayon pool. Rows come back in
/// parameter order regardless of how many workers ran them.
pub fn audit_family(family: Family, source: &AuditSource, config: &AnalysisConfig) -> Result<AuditReport> {
    let params: Vec<Params> = match (source, family.is_parametric()) {
        (AuditSource::Range { from, to }, true) => {
            let least = family.min_parameter().expect("parametric");
            if from > to || *from < least {
                return Err(GroupError::InvalidParameter(format!(
                    "{family} range {from}..={to} must satisfy {least} <= from <= to"
                ))
                .into());
            }
            (*from..=*to).map(Params::N).collect()
        }
        (AuditSource::Specs(specs), false) => specs.iter().cloned().map(Params::Spec).collect(),
        (AuditSource::Range { .. }, false) => {
            return Err(GroupError::InvalidParameter(format!(
                "{family} audits run over group specs, not an integer range"
            ))
            .into())
        }
        (AuditSource::Specs(_), true) => {
            return Err(GroupError::InvalidParameter(format!(
                "{family} audits run over an integer range"
            ))
            .into())
        }
    };
    let mut rows = params
        .par_iter()
        .map(|p| audit_row(family, p, config))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_cached_key(TheoremVerdict::sort_key);
    let discrepancies = rows.iter().filter(|r| r.is_discrepancy()).cloned().collect();
    Ok(AuditReport {
        metadata: AuditMetadata {
            tool: "ordsup".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            family,
            element_cap: config.element_cap,
            direct_threshold: config.direct_threshold,
            cycle_limit: config.cycle_limit,
            timestamp: None,
        },
        rows,
        discrepancies,
    })
}

impl AuditReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per row: family, params, group, order, status, predicate,
    /// computed, agree, path, and clause bits as `label=value` pairs.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "family", "params", "group", "order", "status", "predicate", "computed", "agree",
            "path", "clauses",
        ])
        .expect("in-memory write");
        let opt = |b: Option<bool>| b.map_or(String::new(), |b| b.to_string());
        for r in &self.rows {
            let clauses: Vec<String> = r.clauses.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let status = match r.status {
                RowStatus::Ok => "ok",
                RowStatus::HypothesisFailed => "hypothesis_failed",
            };
            w.write_record([
                r.family.to_string(),
                r.params.to_string(),
                r.group.clone(),
                r.order.to_string(),
                status.to_string(),
                opt(r.predicate),
                r.computed.to_string(),
                opt(r.agree),
                r.path.to_string(),
                clauses.join(" "),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

/// A recorded disagreement between a theorem predicate and the computation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub family: Family,
    pub params: String,
    pub predicate: bool,
    pub computed: bool,
}

impl LedgerEntry {
    pub fn from_row(row: &TheoremVerdict) -> Option<Self> {
        Some(Self {
            family: row.family,
            params: row.params.to_string(),
            predicate: row.predicate?,
            computed: row.computed,
        })
    }
}

/// Parses newline-delimited JSON entries; blank lines are ignored.
pub fn parse_ledger(text: &str) -> std::result::Result<Vec<LedgerEntry>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| format!("ledger line {}: {e}", i + 1)))
        .collect()
}

pub fn ledger_line(entry: &LedgerEntry) -> String {
    serde_json::to_string(entry).expect("entry serializes")
}

/// Differences between a report's discrepancies and the ledger.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LedgerComparison {
    /// Discrepancies not in the ledger.
    pub new: Vec<LedgerEntry>,
    /// Ledger entries for rows of this report that now agree.
    pub resolved: Vec<LedgerEntry>,
}

pub fn compare_with_ledger(report: &AuditReport, ledger: &[LedgerEntry]) -> LedgerComparison {
    let known: BTreeSet<&LedgerEntry> = ledger.iter().collect();
    let found: BTreeSet<LedgerEntry> = report
        .discrepancies
        .iter()
        .filter_map(LedgerEntry::from_row)
        .collect();
    let audited: BTreeSet<(Family, String)> = report
        .rows
        .iter()
        .map(|r| (r.family, r.params.to_string()))
        .collect();
    LedgerComparison {
        new: found.iter().filter(|e| !known.contains(e)).cloned().collect(),
        resolved: ledger
            .iter()
            .filter(|e| audited.contains(&(e.family, e.params.clone())) && !found.contains(*e))
            .cloned()
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> AnalysisConfig {
        AnalysisConfig::default()
    }

    #[test]
    fn small_dihedral_audit() {
        let report = audit_family(Family::Dihedral, &AuditSource::Range { from: 3, to: 16 }, &config())
            .unwrap();
        assert_eq!(report.rows.len(), 14);
        assert!(report.discrepancies.is_empty());
        let trues: Vec<String> = report
            .rows
            .iter()
            .filter(|r| r.computed)
            .map(|r| r.params.to_string())
            .collect();
        assert_eq!(trues, ["n=5", "n=7", "n=9", "n=10", "n=11", "n=13", "n=14", "n=15"]);
        assert!(report.rows.iter().all(|r| r.computed == r.certificate.is_some()));
    }

    #[test]
    fn dicyclic_and_symmetric_audits() {
        let d = audit_family(Family::Dicyclic, &AuditSource::Range { from: 2, to: 4 }, &config())
            .unwrap();
        let got: Vec<bool> = d.rows.iter().map(|r| r.computed).collect();
        assert_eq!(got, [false, true, false]);
        let s = audit_family(Family::Symmetric, &AuditSource::Range { from: 3, to: 6 }, &config())
            .unwrap();
        assert!(s.discrepancies.is_empty());
        assert_eq!(s.rows.iter().map(|r| r.computed).collect::<Vec<_>>(), [false, true, true, true]);
    }

    #[test]
    fn bad_sources() {
        assert!(audit_family(Family::Dihedral, &AuditSource::Range { from: 2, to: 5 }, &config()).is_err());
        assert!(audit_family(Family::Dihedral, &AuditSource::Range { from: 9, to: 5 }, &config()).is_err());
        assert!(audit_family(Family::Eppo, &AuditSource::Range { from: 3, to: 5 }, &config()).is_err());
    }

    #[test]
    fn hypothesis_failures_become_rows() {
        let report = audit_family(
            Family::Eppo,
            &AuditSource::Specs(vec!["cyclic:6".into(), "sym:3".into()]),
            &config(),
        )
        .unwrap();
        assert_eq!(report.rows.len(), 2);
        let z6 = report.rows.iter().find(|r| r.params == Params::Spec("cyclic:6".into())).unwrap();
        assert_eq!(z6.status, RowStatus::HypothesisFailed);
        assert_eq!(z6.agree, None);
        assert!(report.discrepancies.is_empty());
    }

    #[test]
    fn ledger_round_trip_and_comparison() {
        let entry = LedgerEntry {
            family: Family::Nilpotent,
            params: "product:cyclic:2*cyclic:3".into(),
            predicate: true,
            computed: false,
        };
        let text = format!("{}\n\n", ledger_line(&entry));
        assert_eq!(parse_ledger(&text).unwrap(), vec![entry.clone()]);
        assert!(parse_ledger("{oops").is_err());
        let report = audit_family(
            Family::Nilpotent,
            &AuditSource::Specs(vec!["product:cyclic:2*cyclic:3".into()]),
            &config(),
        )
        .unwrap();
        let cmp = compare_with_ledger(&report, std::slice::from_ref(&entry));
        assert!(cmp.new.is_empty());
        assert_eq!(cmp.resolved, vec![entry]);
    }

    #[test]
    fn csv_has_one_line_per_row() {
        let report = audit_family(Family::Alternating, &AuditSource::Range { from: 3, to: 5 }, &config())
            .unwrap();
        let csv = report.to_csv();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.lines().nth(1).unwrap().starts_with("alternating,n=3,A3,3,ok,false,false,true,both,n>=4=0"));
    }
}
