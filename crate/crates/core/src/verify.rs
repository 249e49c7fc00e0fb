//! Verification suites: closed forms and structural claims checked against
//! exhaustive search.
//!
//! A suite is a row of [`SUITES`]: a name, the claim in words, a default grid
//! bound and the kind of check. Grid points where a closed form is not proven
//! are reported as skipped with the reason, never dropped.

use std::time::Instant;

use serde::Serialize;

use crate::cache::Cache;
use crate::canon::{canonical_key, CanonicalKey};
use crate::constructors::minimal_path_saturated;
use crate::enumerate::{enumerate_regular, scan_all, Generator, SearchOptions, SearchResult};
use crate::error::Result;
use crate::formulas::{
    join_upper_bound, sat_book, sat_generalized_book_b3p2, sat_k1_path, sat_k2_path, sat_kt_minus_p4, sat_path,
    FormulaValue,
};
use crate::graph::Graph;
use crate::pattern::PatternSpec;
use crate::saturation::{saturated, structural_check};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseStatus {
    Pass,
    Fail,
    SkippedOutOfRange,
    /// A disagreement with a conjectured value; reported, not a failure.
    Flagged,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub status: CaseStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Case {
    fn check(description: String, expected: impl ToString, actual: impl ToString) -> Case {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let status = if expected == actual { CaseStatus::Pass } else { CaseStatus::Fail };
        Case { description, expected, actual, status, reason: None }
    }

    fn skipped(description: String, reason: String) -> Case {
        Case {
            description,
            expected: "-".into(),
            actual: "-".into(),
            status: CaseStatus::SkippedOutOfRange,
            reason: Some(reason),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub claim: String,
    pub grid: String,
    pub cases: Vec<Case>,
    pub wall_time: f64,
}

impl VerificationReport {
    pub fn count(&self, status: CaseStatus) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(CaseStatus::Fail) == 0
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("value serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}: {}\ngrid: {}\n", self.suite, self.claim, self.grid);
        for c in &self.cases {
            let tag = match c.status {
                CaseStatus::Pass => "pass",
                CaseStatus::Fail => "FAIL",
                CaseStatus::SkippedOutOfRange => "skip",
                CaseStatus::Flagged => "FLAG",
            };
            match &c.reason {
                Some(r) => out += &format!("  [{tag}] {}: {r}\n", c.description),
                None => out += &format!("  [{tag}] {}: expected {}, got {}\n", c.description, c.expected, c.actual),
            }
        }
        out += &format!(
            "{} pass, {} fail, {} skipped, {} flagged in {:.2}s\n",
            self.count(CaseStatus::Pass),
            self.count(CaseStatus::Fail),
            self.count(CaseStatus::SkippedOutOfRange),
            self.count(CaseStatus::Flagged),
            self.wall_time
        );
        out
    }
}

type Formula = fn(usize, usize) -> Result<FormulaValue>;

#[derive(Clone, Copy, Debug)]
pub enum SuiteKind {
    /// Search value of `K_s ∨ P_k` against a closed form; optionally also the
    /// structural conditions and pruned/unpruned agreement at every point.
    FormulaSearch { s: usize, ks: &'static [usize], formula: Formula, structural: bool },
    /// The minimal `P_k`-saturated classes equal the constructed family.
    PathFamily { k: usize },
    /// Cone/strip equivalence over every class.
    ConeStrip,
    /// Cubic graphs and `K_1 ∨ P_4` saturation.
    Cubic,
    /// Identities between the book-type closed forms.
    TableAlignment,
    /// Exhaustive `K_3 ∨ P_3` scan against the join bound.
    ConjectureProbe,
}

#[derive(Clone, Copy, Debug)]
pub struct Suite {
    pub name: &'static str,
    pub claim: &'static str,
    pub default_n_max: usize,
    pub kind: SuiteKind,
}

pub const SUITES: &[Suite] = &[
    Suite {
        name: "theorem-2.1",
        claim: "sat(n,P_k) closed form for k = 3, 4, 5 and k >= 6",
        default_n_max: 10,
        kind: SuiteKind::FormulaSearch { s: 0, ks: &[3, 4, 5, 6], formula: sat_path, structural: false },
    },
    Suite {
        name: "theorem-3.3",
        claim: "sat(n,K1vP_k) closed form; minimal graphs have diameter 2",
        default_n_max: 8,
        kind: SuiteKind::FormulaSearch { s: 1, ks: &[3, 4, 5], formula: sat_k1_path, structural: true },
    },
    Suite {
        name: "theorem-1.1",
        claim: "sat(n,K2vP_k) closed form; minimal graphs have diameter 2 and two common neighbors per non-adjacent pair",
        default_n_max: 8,
        kind: SuiteKind::FormulaSearch { s: 2, ks: &[3, 4, 5], formula: sat_k2_path, structural: true },
    },
    Suite {
        name: "prop-5.6",
        claim: "the minimal P3-saturated graphs are floor(n/2)K2 plus an isolated vertex for odd n",
        default_n_max: 9,
        kind: SuiteKind::PathFamily { k: 3 },
    },
    Suite {
        name: "prop-5.7",
        claim: "the minimal P4-saturated graphs are (n/2)K2 for even n, K3+((n-3)/2)K2 and K1,4+((n-5)/2)K2 for odd n",
        default_n_max: 9,
        kind: SuiteKind::PathFamily { k: 4 },
    },
    Suite {
        name: "lemma-2.3",
        claim: "K1vG is (K1vH)-saturated iff G is H-saturated",
        default_n_max: 6,
        kind: SuiteKind::ConeStrip,
    },
    Suite {
        name: "lemma-3.4",
        claim: "the only 3-regular K1vP4-saturated graph has order 6",
        default_n_max: 10,
        kind: SuiteKind::Cubic,
    },
    Suite {
        name: "table-1",
        claim: "book and K_t-P4 closed forms agree with the K1vP_k and K2vP3 values",
        default_n_max: 1000,
        kind: SuiteKind::TableAlignment,
    },
    Suite {
        name: "conjecture-probe",
        claim: "sat(n,K3vP3) equals the join bound C(3,2)+3(n-3)+sat(n-3,P3)",
        default_n_max: 8,
        kind: SuiteKind::ConjectureProbe,
    },
];

pub fn suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

/// Runs searches, optionally through a [`Cache`].
#[derive(Clone, Debug, Default)]
pub struct Verifier {
    pub cache: Option<Cache>,
}

impl Verifier {
    pub fn search(&self, n: usize, p: &PatternSpec, use_pruning: bool) -> Result<SearchResult> {
        let options = SearchOptions { use_pruning, sequential: false };
        match &self.cache {
            Some(cache) => Ok(cache.find_saturation_number(n, p, options)?.0),
            None => crate::enumerate::find_saturation_number_with(n, p, options),
        }
    }

    pub fn run(&self, suite: &Suite, n_max: Option<usize>) -> Result<VerificationReport> {
        let n_max = n_max.unwrap_or(suite.default_n_max);
        let start = Instant::now();
        let (grid, cases) = match suite.kind {
            SuiteKind::FormulaSearch { s, ks, formula, structural } => {
                self.formula_search(s, ks, formula, structural, n_max)?
            }
            SuiteKind::PathFamily { k } => self.path_family(k, n_max)?,
            SuiteKind::ConeStrip => cone_strip(n_max)?,
            SuiteKind::Cubic => cubic(n_max)?,
            SuiteKind::TableAlignment => table_alignment(n_max)?,
            SuiteKind::ConjectureProbe => conjecture_probe(n_max)?,
        };
        Ok(VerificationReport {
            suite: suite.name.into(),
            claim: suite.claim.into(),
            grid,
            cases,
            wall_time: start.elapsed().as_secs_f64(),
        })
    }

    fn formula_search(
        &self,
        s: usize,
        ks: &[usize],
        formula: Formula,
        structural: bool,
        n_max: usize,
    ) -> Result<(String, Vec<Case>)> {
        let n_min = s + 3;
        let mut cases = Vec::new();
        let mut patterns = Vec::new();
        for &k in ks {
            let p = PatternSpec::new(s, k)?;
            patterns.push(p.to_string());
            for n in n_min..=n_max {
                let f = formula(n, k)?;
                let description = format!("sat({n},{p})");
                let Some(expected) = f.value else {
                    cases.push(Case::skipped(description, format!("n = {n} is outside the proven range of {}", f.source)));
                    continue;
                };
                let result = self.search(n, &p, false)?;
                cases.push(Case::check(description, expected, result.sat_number));
                if structural {
                    cases.push(structural_case(n, &p, &result)?);
                    let pruned = self.search(n, &p, true)?;
                    cases.push(Case::check(
                        format!("pruned search for {p} at n = {n} (skipped {} classes)", pruned.pruned),
                        summary(&result),
                        summary(&pruned),
                    ));
                }
            }
        }
        Ok((format!("n = {n_min}..={n_max}; patterns {}", patterns.join(", ")), cases))
    }

    fn path_family(&self, k: usize, n_max: usize) -> Result<(String, Vec<Case>)> {
        let p = PatternSpec::path(k)?;
        let n_min = k;
        let mut cases = Vec::new();
        for n in n_min..=n_max {
            let description = format!("minimal {p}-saturated classes at n = {n}");
            let Some(value) = sat_path(n, k)?.value else {
                cases.push(Case::skipped(description, format!("n = {n} is outside the proven range")));
                continue;
            };
            let mut built: Vec<CanonicalKey> = minimal_path_saturated(n, k)?.iter().map(canonical_key).collect();
            built.sort();
            let result = self.search(n, &p, false)?;
            cases.push(Case::check(
                description,
                format!("sat={value} {}", join_keys(&built)),
                summary(&result),
            ));
        }
        Ok((format!("n = {n_min}..={n_max}; pattern {p}"), cases))
    }
}

fn summary(r: &SearchResult) -> String {
    format!("sat={} {}", r.sat_number, join_keys(&r.minimal_graphs))
}

fn join_keys(keys: &[CanonicalKey]) -> String {
    let parts: Vec<&str> = keys.iter().map(CanonicalKey::as_str).collect();
    format!("[{}]", parts.join(","))
}

fn structural_case(n: usize, p: &PatternSpec, result: &SearchResult) -> Result<Case> {
    let total = result.minimal_graphs.len();
    let mut ok = 0;
    for key in &result.minimal_graphs {
        if structural_check(&key.graph()?, p).passes() {
            ok += 1;
        }
    }
    Ok(Case::check(
        format!("structural conditions on minimal {p}-saturated classes at n = {n}"),
        format!("{total} of {total}"),
        format!("{ok} of {total}"),
    ))
}

fn all_classes(n: usize) -> Result<Vec<Graph>> {
    Ok(Generator::new(n)?.levels().flat_map(|(_, level)| level.to_vec()).collect())
}

/// Classes `h` of order `n` where saturation of `h` and of its cone differ.
pub fn cone_strip_exceptions(n: usize, p: &PatternSpec) -> Result<(usize, Vec<Graph>)> {
    let apex = Graph::complete(1)?;
    let classes = all_classes(n)?;
    let mut bad = Vec::new();
    for h in &classes {
        if saturated(h, p)? != saturated(&apex.join(h)?, &p.cone())? {
            bad.push(*h);
        }
    }
    Ok((classes.len(), bad))
}

fn cone_strip(n_max: usize) -> Result<(String, Vec<Case>)> {
    let patterns: Vec<PatternSpec> = ["P3", "P4", "K1vP3"].iter().map(|t| t.parse()).collect::<Result<_>>()?;
    let mut cases = Vec::new();
    for n in 3..=n_max {
        for p in &patterns {
            let (total, bad) = cone_strip_exceptions(n, p)?;
            cases.push(Case::check(
                format!("{p} vs {} over all {total} classes at n = {n}", p.cone()),
                "0 exceptions",
                format!("{} exceptions", bad.len()),
            ));
        }
    }
    Ok((format!("n = 3..={n_max}; patterns P3, P4, K1vP3"), cases))
}

/// Connected cubic graphs on 4, 6, 8, 10 and 12 vertices.
const CONNECTED_CUBIC: [(usize, usize); 5] = [(4, 1), (6, 2), (8, 5), (10, 19), (12, 85)];

fn cubic(n_max: usize) -> Result<(String, Vec<Case>)> {
    let p: PatternSpec = "K1vP4".parse()?;
    let mut cases = Vec::new();
    let orders: Vec<usize> = (6..=n_max.min(12)).step_by(2).collect();
    for &n in &orders {
        let graphs = enumerate_regular(n, 3)?;
        let connected = graphs.iter().filter(|g| g.is_connected()).count();
        let expected = CONNECTED_CUBIC.iter().find(|&&(m, _)| m == n).map(|&(_, c)| c).unwrap_or(0);
        cases.push(Case::check(
            format!("connected cubic classes at n = {n} ({} including disconnected)", graphs.len()),
            expected,
            connected,
        ));
        let mut hits = 0;
        for g in &graphs {
            if saturated(g, &p)? {
                hits += 1;
            }
        }
        cases.push(Case::check(
            format!("{p}-saturated cubic classes at n = {n}"),
            usize::from(n == 6),
            hits,
        ));
    }
    let listed: Vec<String> = orders.iter().map(usize::to_string).collect();
    Ok((format!("n in {{{}}}; pattern {p}", listed.join(", ")), cases))
}

fn agreement(
    description: String,
    range: std::ops::RangeInclusive<usize>,
    left: impl Fn(usize) -> Result<FormulaValue>,
    right: impl Fn(usize) -> Result<FormulaValue>,
) -> Result<Case> {
    let total = range.clone().count();
    let mut agree = 0;
    let mut first_bad = None;
    for n in range {
        let (a, b) = (left(n)?.value, right(n)?.value);
        if a.is_some() && a == b {
            agree += 1;
        } else if first_bad.is_none() {
            first_bad = Some(n);
        }
    }
    let actual = match first_bad {
        None => format!("{agree} of {total} agree"),
        Some(n) => format!("{agree} of {total} agree (first difference at n = {n})"),
    };
    Ok(Case::check(description, format!("{total} of {total} agree"), actual))
}

fn table_alignment(n_max: usize) -> Result<(String, Vec<Case>)> {
    let mut cases = Vec::new();
    if n_max >= 10 {
        cases.push(agreement(
            format!("sat(n,B2) = sat(n,K1vP3) for n = 10..={n_max}"),
            10..=n_max,
            |n| sat_book(n, 2),
            |n| sat_k1_path(n, 3),
        )?);
    }
    if n_max >= 17 {
        cases.push(agreement(
            format!("sat(n,K5-P4) = sat(n,K1vP4) for n = 17..={n_max}"),
            17..=n_max,
            |n| sat_kt_minus_p4(n, 5),
            |n| sat_k1_path(n, 4),
        )?);
    }
    let top = 2048 + n_max;
    cases.push(agreement(
        format!("sat(n,B3,2) = sat(n,K2vP3) for n = 2048..={top}"),
        2048..=top,
        |n| Ok(sat_generalized_book_b3p2(n)),
        |n| sat_k2_path(n, 3),
    )?);
    Ok((format!("n up to {n_max}; B3,2 from 2048 to {top}"), cases))
}

fn conjecture_probe(n_max: usize) -> Result<(String, Vec<Case>)> {
    let n = n_max;
    let p: PatternSpec = "K3vP3".parse()?;
    let mut cases = Vec::new();
    let description = format!("sat({n},{p}) by full scan");
    let Some(bound) = join_upper_bound(n, 3, 3)?.value else {
        cases.push(Case::skipped(description, format!("join bound undefined at n = {n}")));
        return Ok((format!("n = {n}; pattern {p}"), cases));
    };
    let triangle = Graph::complete(3)?;
    for f in minimal_path_saturated(n - 3, 3)? {
        let g = triangle.join(&f)?;
        let ok = saturated(&g, &p)?;
        cases.push(Case::check(
            format!("K3 join minimal P3-saturated graph of order {} is {p}-saturated", n - 3),
            format!("saturated, {bound} edges"),
            format!("{}, {} edges", if ok { "saturated" } else { "not saturated" }, g.edge_count()),
        ));
    }
    let scan = scan_all(n, &p)?;
    let description = format!("{description} over {} classes", scan.scanned);
    let (actual, matches) = match &scan.minimum {
        Some((m, keys)) => (format!("{m} ({} minimal classes)", keys.len()), *m as i64 == bound),
        None => ("no saturated graph".to_string(), false),
    };
    cases.push(Case {
        description,
        expected: bound.to_string(),
        actual,
        status: if matches { CaseStatus::Pass } else { CaseStatus::Flagged },
        reason: (!matches).then(|| format!("conjectured value {bound} differs from the search; reported only")),
    });
    Ok((format!("n = {n}; pattern {p}"), cases))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_table_is_complete() {
        for name in [
            "theorem-2.1",
            "theorem-3.3",
            "theorem-1.1",
            "prop-5.6",
            "prop-5.7",
            "lemma-2.3",
            "lemma-3.4",
            "table-1",
            "conjecture-probe",
        ] {
            assert!(suite(name).is_some(), "{name}");
        }
        assert!(suite("theorem-9.9").is_none());
    }

    #[test]
    fn small_path_suite_passes_and_skips() {
        let report = Verifier::default().run(suite("theorem-2.1").unwrap(), Some(6)).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert!(report.count(CaseStatus::SkippedOutOfRange) > 0);
        assert!(report.cases.iter().any(|c| c.description == "sat(6,P3)" && c.actual == "3"));
    }

    #[test]
    fn report_json_has_sorted_keys() {
        let report = Verifier::default().run(suite("table-1").unwrap(), Some(20)).unwrap();
        let json = report.to_json();
        // Declared as suite, claim, grid; serialized alphabetically.
        let grid = json.find("\"grid\"").unwrap();
        let suite = json.find("\"suite\"").unwrap();
        assert!(grid < suite);
        assert!(report.passed());
    }
}
