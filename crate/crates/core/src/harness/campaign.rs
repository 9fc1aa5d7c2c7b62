use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeCut, Graph};
use crate::graph6::{emit_graph6, parse_graph6};
use crate::mincut::{
    edge_connectivity, edge_connectivity_exhaustive, enumerate_min_cuts,
    is_super_edge_connected_bruteforce, is_vertex_star,
};
use crate::product::{direct_product, fibers_contained, product_connected, ProductLayout};
use crate::theorems::{
    is_exceptional_member, is_super_edge_connected_kn, kappa_formula, kappa_formula_kn, Branch,
    Classifier, CutClass,
};

use super::config::{CampaignConfig, Check, Format, Oracle};
use super::corpus::{generate_corpus, CorpusPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Mismatch,
    Inconclusive,
    Skipped,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub induced: usize,
    pub star: usize,
    pub exceptional: usize,
}

/// The failing factors plus the offending cut, enough to replay a mismatch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub check: Check,
    pub g: String,
    pub h: String,
    /// Product cut in `x,u y,v` lines joined by `; `.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut: Option<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub record: String,
    pub pair_id: usize,
    pub check: Check,
    pub g: String,
    pub h: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<ClassCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl InstanceRecord {
    fn new(pair_id: usize, check: Check, g: &Graph, h: &Graph) -> Self {
        InstanceRecord {
            record: "instance".into(),
            pair_id,
            check,
            g: emit_graph6(g),
            h: emit_graph6(h),
            status: Status::Pass,
            formula: None,
            oracle: None,
            branch: None,
            classes: None,
            detail: None,
            elapsed_ms: None,
            certificate: None,
        }
    }

    fn skip(mut self, why: &str) -> Self {
        self.status = Status::Skipped;
        self.detail = Some(why.into());
        self
    }

    fn fail(mut self, reason: String, cut: Option<String>) -> Self {
        self.status = Status::Mismatch;
        self.certificate = Some(Certificate {
            check: self.check,
            g: self.g.clone(),
            h: self.h.clone(),
            cut,
            reason: reason.clone(),
        });
        self.detail = Some(reason);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub record: String,
    pub instances: usize,
    pub passed: usize,
    pub mismatches: usize,
    pub inconclusive: usize,
    pub skipped: usize,
    /// Minimum cuts classified as exceptional across the run.
    pub exceptional_sightings: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub records: Vec<InstanceRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    fn from_records(records: Vec<InstanceRecord>) -> Self {
        let count = |s: Status| records.iter().filter(|r| r.status == s).count();
        let summary = Summary {
            record: "summary".into(),
            instances: records.len(),
            passed: count(Status::Pass),
            mismatches: count(Status::Mismatch),
            inconclusive: count(Status::Inconclusive),
            skipped: count(Status::Skipped),
            exceptional_sightings: records
                .iter()
                .filter_map(|r| r.classes.as_ref())
                .map(|c| c.exceptional)
                .sum(),
        };
        VerificationReport { records, summary }
    }

    /// 0 when everything passed, 1 on any mismatch, 2 when the only
    /// shortfall is inconclusive checks.
    pub fn exit_code(&self) -> i32 {
        if self.summary.mismatches > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.records.iter().filter_map(|r| r.certificate.as_ref())
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Jsonl => Ok(self.to_jsonl()),
            Format::Csv => self.to_csv(),
        }
    }

    /// One JSON object per line, summary last.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("summary serializes"));
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        for r in &self.records {
            w.serialize(CsvRow::from(r)).map_err(io)?;
        }
        w.serialize(CsvRow::from(&self.summary)).map_err(io)?;
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[derive(Serialize)]
struct CsvRow {
    record: String,
    pair_id: Option<usize>,
    check: Option<Check>,
    g: Option<String>,
    h: Option<String>,
    status: Option<Status>,
    formula: Option<usize>,
    oracle: Option<usize>,
    branch: Option<Branch>,
    induced: Option<usize>,
    star: Option<usize>,
    exceptional: Option<usize>,
    elapsed_ms: Option<u64>,
    detail: Option<String>,
    certificate_cut: Option<String>,
    instances: Option<usize>,
    mismatches: Option<usize>,
    inconclusive: Option<usize>,
    exceptional_sightings: Option<usize>,
}

impl From<&InstanceRecord> for CsvRow {
    fn from(r: &InstanceRecord) -> Self {
        CsvRow {
            record: r.record.clone(),
            pair_id: Some(r.pair_id),
            check: Some(r.check),
            g: Some(r.g.clone()),
            h: Some(r.h.clone()),
            status: Some(r.status),
            formula: r.formula,
            oracle: r.oracle,
            branch: r.branch,
            induced: r.classes.as_ref().map(|c| c.induced),
            star: r.classes.as_ref().map(|c| c.star),
            exceptional: r.classes.as_ref().map(|c| c.exceptional),
            elapsed_ms: r.elapsed_ms,
            detail: r.detail.clone(),
            certificate_cut: r.certificate.as_ref().and_then(|c| c.cut.clone()),
            instances: None,
            mismatches: None,
            inconclusive: None,
            exceptional_sightings: None,
        }
    }
}

impl From<&Summary> for CsvRow {
    fn from(s: &Summary) -> Self {
        CsvRow {
            record: s.record.clone(),
            pair_id: None,
            check: None,
            g: None,
            h: None,
            status: None,
            formula: None,
            oracle: None,
            branch: None,
            induced: None,
            star: None,
            exceptional: None,
            elapsed_ms: None,
            detail: None,
            certificate_cut: None,
            instances: Some(s.instances),
            mismatches: Some(s.mismatches),
            inconclusive: Some(s.inconclusive),
            exceptional_sightings: Some(s.exceptional_sightings),
        }
    }
}

/// Runs every selected check on every corpus pair. Records come out sorted
/// by pair id and check, whatever the worker count.
pub fn run_campaign(config: &CampaignConfig) -> Result<VerificationReport> {
    let pairs = generate_corpus(config)?;
    run_pairs(&pairs, config)
}

pub fn run_pairs(pairs: &[CorpusPair], config: &CampaignConfig) -> Result<VerificationReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let nested: Vec<Vec<InstanceRecord>> = pool.install(|| {
        pairs
            .par_iter()
            .map(|p| {
                config
                    .checks
                    .iter()
                    .map(|&c| run_check(c, p.id, &p.g, &p.h, config))
                    .collect()
            })
            .collect()
    });
    Ok(VerificationReport::from_records(nested.into_iter().flatten().collect()))
}

/// One check on one pair, timed.
pub fn run_check(check: Check, pair_id: usize, g: &Graph, h: &Graph, config: &CampaignConfig) -> InstanceRecord {
    let start = Instant::now();
    let base = InstanceRecord::new(pair_id, check, g, h);
    let outcome = match check {
        Check::KappaFormula => check_kappa_formula(base.clone(), g, h, config.oracle),
        Check::CompleteFactor => check_complete_factor(base.clone(), g, h, config.oracle),
        Check::CutStructure => check_cut_structure(base.clone(), g, h, config.enumeration_budget),
        Check::SuperEdge => check_super_edge(base.clone(), g, h, config.enumeration_budget),
        Check::Connectivity => check_connectivity(base.clone(), g, h),
        Check::FiberContainment => check_fiber_containment(base.clone(), g, h, config, pair_id),
    };
    let mut record = outcome.unwrap_or_else(|e| base.skip(&e.to_string()));
    if config.timings {
        record.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    record
}

/// Re-runs the check named by a certificate on its graph6 payloads.
pub fn replay(cert: &Certificate, config: &CampaignConfig) -> Result<InstanceRecord> {
    let g = parse_graph6(&cert.g)?;
    let h = parse_graph6(&cert.h)?;
    Ok(run_check(cert.check, 0, &g, &h, config))
}

fn oracle_kappa(product: &Graph, oracle: Oracle) -> Result<(usize, EdgeCut)> {
    match oracle {
        Oracle::MaxFlow => {
            let r = edge_connectivity(product)?;
            Ok((r.value, r.witness))
        }
        Oracle::Subset => Ok((edge_connectivity_exhaustive(product)?, EdgeCut::new())),
    }
}

fn cut_text(layout: ProductLayout, cut: &EdgeCut) -> Option<String> {
    (!cut.is_empty()).then(|| layout.format_cut(cut).trim_end().replace('\n', "; "))
}

fn check_kappa_formula(mut rec: InstanceRecord, g: &Graph, h: &Graph, oracle: Oracle) -> Result<InstanceRecord> {
    let formula = kappa_formula(g, h)?;
    let product = direct_product(g, h)?;
    let (value, witness) = oracle_kappa(&product, oracle)?;
    rec.formula = Some(formula.value);
    rec.oracle = Some(value);
    rec.branch = Some(formula.branch);
    if formula.value != value {
        let reason = format!("formula {} != oracle {}", formula.value, value);
        return Ok(rec.fail(reason, cut_text(ProductLayout::of(g, h), &witness)));
    }
    Ok(rec)
}

fn check_complete_factor(mut rec: InstanceRecord, g: &Graph, h: &Graph, oracle: Oracle) -> Result<InstanceRecord> {
    if !h.is_complete() || h.order() < 3 {
        return Ok(rec.skip("H is not complete"));
    }
    let kn = kappa_formula_kn(g, h.order())?;
    let general = kappa_formula(g, h)?;
    let (value, _) = oracle_kappa(&direct_product(g, h)?, oracle)?;
    rec.formula = Some(kn.value);
    rec.oracle = Some(value);
    rec.branch = Some(kn.branch);
    if kn.value != general.value || kn.value != value {
        let reason = format!(
            "K_n form {} vs general form {} vs oracle {}",
            kn.value, general.value, value
        );
        return Ok(rec.fail(reason, None));
    }
    Ok(rec)
}

fn check_cut_structure(mut rec: InstanceRecord, g: &Graph, h: &Graph, budget: u64) -> Result<InstanceRecord> {
    let classifier = Classifier::new(g, h)?;
    let layout = ProductLayout::of(g, h);
    let formula = classifier.formula().clone();
    rec.formula = Some(formula.value);
    rec.branch = Some(formula.branch);

    let cuts = enumerate_min_cuts(classifier.product(), budget)?;
    rec.oracle = Some(cuts.value);
    if cuts.value != formula.value {
        let reason = format!("formula {} != oracle {}", formula.value, cuts.value);
        return Ok(rec.fail(reason, None));
    }

    let mut counts = ClassCounts::default();
    for cut in &cuts.cuts {
        match classifier.classify(cut) {
            Ok(CutClass::InducedByFactorCut { .. }) => counts.induced += 1,
            Ok(CutClass::VertexStar { .. }) => counts.star += 1,
            Ok(CutClass::Exceptional { .. }) => counts.exceptional += 1,
            Err(e) => {
                rec.classes = Some(counts);
                return Ok(rec.fail(e.to_string(), cut_text(layout, cut)));
            }
        }
    }
    rec.classes = Some(counts.clone());
    rec.detail = Some(format!("{} minimum cuts", cuts.cuts.len()));

    if !cuts.exhaustive {
        rec.status = Status::Inconclusive;
        rec.detail = Some(format!(
            "{} minimum cuts found by flow; C(|E|, k) = {} exceeds budget {budget}",
            cuts.cuts.len(),
            cuts.subsets
        ));
        return Ok(rec);
    }

    let exceptional_pair = g.is_k2() && is_exceptional_member(h).is_some();
    if formula.branch == Branch::FactorCut && counts.induced == 0 {
        return Ok(rec.fail("factor-cut branch but no induced minimum cut".into(), None));
    }
    if formula.branch == Branch::DegreeBound && !exceptional_pair && counts.star == 0 {
        return Ok(rec.fail("degree branch but no vertex-star minimum cut".into(), None));
    }
    Ok(rec)
}

fn check_super_edge(mut rec: InstanceRecord, g: &Graph, h: &Graph, budget: u64) -> Result<InstanceRecord> {
    if !h.is_complete() || h.order() < 3 {
        return Ok(rec.skip("H is not complete"));
    }
    let n = h.order();
    let product = direct_product(g, h)?;
    let brute = match is_super_edge_connected_bruteforce(&product, budget) {
        Ok(b) => b,
        Err(Error::BudgetExceeded { needed, budget }) => {
            rec.status = Status::Inconclusive;
            rec.detail = Some(format!("enumeration needs {needed} subsets, budget {budget}"));
            return Ok(rec);
        }
        Err(e) => return Err(e),
    };
    match is_super_edge_connected_kn(g, n) {
        Ok(predicted) if predicted == brute => {
            rec.detail = Some(format!("super = {brute}"));
            Ok(rec)
        }
        Ok(predicted) => Ok(rec.fail(format!("criterion says {predicted}, enumeration says {brute}"), None)),
        Err(Error::ExcludedPair { .. }) if !brute => {
            rec.detail = Some("excluded pair; enumeration confirms not super".into());
            Ok(rec)
        }
        Err(Error::ExcludedPair { .. }) => {
            Ok(rec.fail("excluded pair is super edge connected after all".into(), None))
        }
        Err(e) => Err(e),
    }
}

fn check_connectivity(mut rec: InstanceRecord, g: &Graph, h: &Graph) -> Result<InstanceRecord> {
    let predicted = product_connected(g, h)?;
    let actual = direct_product(g, h)?.is_connected()?;
    rec.detail = Some(format!("connected = {actual}"));
    if predicted != actual {
        return Ok(rec.fail(format!("criterion says {predicted}, traversal says {actual}"), None));
    }
    Ok(rec)
}

/// Fiber containment on random cuts: every cut below `δ(G)δ(H)`, and every
/// non-star cut of exactly `δ(G)δ(H)` outside the exceptional pairs.
fn check_fiber_containment(
    mut rec: InstanceRecord,
    g: &Graph,
    h: &Graph,
    config: &CampaignConfig,
    pair_id: usize,
) -> Result<InstanceRecord> {
    if g.order() < 2 || !g.is_connected()? {
        return Ok(rec.skip("G must be nontrivial and connected"));
    }
    let formula = kappa_formula(g, h)?;
    let bound = g.min_degree()? * h.min_degree()?;
    let product = direct_product(g, h)?;
    let layout = ProductLayout::of(g, h);
    let m = product.edge_count();
    let exceptional_pair = g.is_k2() && is_exceptional_member(h).is_some();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (pair_id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));

    let mut tested = 0;
    for i in 0..config.fiber_samples {
        let size = if i % 2 == 0 || exceptional_pair {
            rng.gen_range(0..bound.max(1)).min(m)
        } else {
            bound.min(m)
        };
        let cut: EdgeCut = sample(&mut rng, m, size)
            .into_iter()
            .map(|k| product.edges()[k])
            .collect();
        if cut.size() == bound && is_vertex_star(&product, &cut).is_some() {
            continue;
        }
        tested += 1;
        if !fibers_contained(g, h, &cut)? {
            return Ok(rec.fail(
                format!("fiber split by a cut of size {} (bound {bound})", cut.size()),
                cut_text(layout, &cut),
            ));
        }
    }
    rec.formula = Some(formula.value);
    rec.detail = Some(format!("{tested} sampled cuts, bound {bound}"));
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn only(check: Check) -> CampaignConfig {
        CampaignConfig {
            checks: [check].into_iter().collect(),
            timings: false,
            ..Default::default()
        }
    }

    #[test]
    fn kappa_record_for_k2_k3() {
        let r = run_check(Check::KappaFormula, 0, &Graph::complete(2), &Graph::complete(3), &only(Check::KappaFormula));
        assert_eq!(r.status, Status::Pass);
        assert_eq!((r.formula, r.oracle), (Some(2), Some(2)));
        assert_eq!(r.branch, Some(Branch::DegreeBound));
    }

    #[test]
    fn cut_structure_on_c6_sees_the_exception() {
        let r = run_check(Check::CutStructure, 0, &Graph::complete(2), &Graph::complete(3), &only(Check::CutStructure));
        assert_eq!(r.status, Status::Pass);
        let c = r.classes.unwrap();
        assert_eq!((c.induced, c.star, c.exceptional), (0, 6, 9));
    }

    #[test]
    fn cut_structure_over_budget_is_inconclusive() {
        let cfg = CampaignConfig { enumeration_budget: 5, ..only(Check::CutStructure) };
        let r = run_check(Check::CutStructure, 0, &Graph::cycle(4).unwrap(), &Graph::complete(3), &cfg);
        assert_eq!(r.status, Status::Inconclusive);
    }

    #[test]
    fn sparse_h_is_skipped_not_failed() {
        let r = run_check(Check::KappaFormula, 0, &Graph::complete(2), &Graph::cycle(5).unwrap(), &only(Check::KappaFormula));
        assert_eq!(r.status, Status::Skipped);
    }

    #[test]
    fn exit_codes() {
        let rec = |s| InstanceRecord { status: s, ..InstanceRecord::new(0, Check::KappaFormula, &Graph::complete(2), &Graph::complete(3)) };
        let rep = VerificationReport::from_records(vec![rec(Status::Pass)]);
        assert_eq!(rep.exit_code(), 0);
        let rep = VerificationReport::from_records(vec![rec(Status::Pass), rec(Status::Inconclusive)]);
        assert_eq!(rep.exit_code(), 2);
        let rep = VerificationReport::from_records(vec![rec(Status::Mismatch), rec(Status::Inconclusive)]);
        assert_eq!(rep.exit_code(), 1);
    }

    #[test]
    fn csv_has_summary_row() {
        let cfg = CampaignConfig { max_g_order: 2, max_h_order: 3, ..only(Check::KappaFormula) };
        let rep = run_campaign(&cfg).unwrap();
        let csv = rep.to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("record,pair_id,check"));
        assert!(lines[2].starts_with("summary,"));
    }
}
