use std::collections::BTreeSet;

use tensor_cut::harness::{
    generate_corpus, replay, run_campaign, run_pairs, CampaignConfig, Certificate, Check, CorpusPair, Format,
    GraphSource, Status,
};
use tensor_cut::theorems::exceptional_member;
use tensor_cut::Graph;

fn checks(list: &[Check]) -> BTreeSet<Check> {
    list.iter().copied().collect()
}

fn quiet(config: CampaignConfig) -> CampaignConfig {
    CampaignConfig { timings: false, ..config }
}

#[test]
fn default_desk_run_has_no_mismatches() {
    let report = run_campaign(&CampaignConfig::default()).unwrap();
    assert_eq!(report.summary.instances, 30 * 5);
    assert_eq!(report.summary.mismatches, 0);
    assert_eq!(report.summary.passed, report.summary.instances);
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn connectivity_run_covers_every_pair() {
    let cfg = quiet(CampaignConfig {
        checks: checks(&[Check::Connectivity]),
        ..Default::default()
    });
    let report = run_campaign(&cfg).unwrap();
    // all classes on 2..=5 vertices for G, 3..=5 for H
    assert_eq!(report.summary.instances, (2 + 4 + 11 + 34) * (4 + 11 + 34));
    assert_eq!(report.summary.mismatches, 0);
    assert_eq!(report.summary.skipped, 0);
}

#[test]
fn every_check_on_the_desk_corpus_is_free_of_mismatches() {
    let cfg = quiet(CampaignConfig {
        checks: Check::ALL.into_iter().collect(),
        max_g_order: 4,
        max_h_order: 4,
        ..Default::default()
    });
    let report = run_campaign(&cfg).unwrap();
    assert_eq!(report.summary.mismatches, 0, "{}", report.to_jsonl());
    assert!(report.certificates().next().is_none());
}

#[test]
fn hexagon_reports_exceptional_cuts() {
    let cfg = quiet(CampaignConfig {
        checks: checks(&[Check::CutStructure]),
        ..Default::default()
    });
    let k2 = Graph::complete(2);
    let pairs = vec![
        CorpusPair { id: 0, g: k2.clone(), h: Graph::complete(3) },
        CorpusPair { id: 1, g: k2.clone(), h: exceptional_member(2).unwrap().graph },
        CorpusPair { id: 2, g: Graph::cycle(4).unwrap(), h: Graph::complete(3) },
    ];
    let report = run_pairs(&pairs, &cfg).unwrap();
    assert_eq!(report.summary.mismatches, 0);
    assert!(report.summary.exceptional_sightings > 9);
    let c4 = &report.records[2];
    assert_eq!(c4.status, Status::Pass);
    assert_eq!(c4.classes.as_ref().unwrap().exceptional, 0);
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let base = quiet(CampaignConfig {
        checks: checks(&[Check::KappaFormula, Check::CutStructure, Check::FiberContainment]),
        max_g_order: 4,
        ..Default::default()
    });
    let one = run_campaign(&CampaignConfig { workers: 1, ..base.clone() }).unwrap();
    let four = run_campaign(&CampaignConfig { workers: 4, ..base.clone() }).unwrap();
    assert_eq!(one.to_jsonl(), four.to_jsonl());
    assert_eq!(one.to_csv().unwrap(), four.to_csv().unwrap());
    assert!(one.to_jsonl().lines().last().unwrap().contains("\"record\":\"summary\""));
}

#[test]
fn random_corpus_is_seeded() {
    let cfg = quiet(CampaignConfig {
        g_source: GraphSource::Random { count: 4, min_degree: None },
        h_source: GraphSource::Random { count: 2, min_degree: None },
        max_g_order: 6,
        max_h_order: 6,
        seed: 7,
        ..Default::default()
    });
    let a = run_campaign(&cfg).unwrap();
    let b = run_campaign(&cfg).unwrap();
    assert_eq!(a.to_jsonl(), b.to_jsonl());
    assert_eq!(a.summary.instances, 8);
    assert_eq!(a.summary.mismatches, 0);
    assert_ne!(generate_corpus(&cfg).unwrap(), generate_corpus(&CampaignConfig { seed: 8, ..cfg }).unwrap());
}

#[test]
fn certificates_replay() {
    let cert = Certificate {
        check: Check::KappaFormula,
        g: "Bw".into(),
        h: "C~".into(),
        cut: None,
        reason: "replay".into(),
    };
    let record = replay(&cert, &quiet(CampaignConfig::default())).unwrap();
    assert_eq!(record.status, Status::Pass);
    assert_eq!((record.formula, record.oracle), (Some(6), Some(6)));

    let bad = Certificate { g: "not graph6".into(), ..cert };
    assert!(replay(&bad, &CampaignConfig::default()).is_err());
}

#[test]
fn config_text_round_trips_through_a_run() {
    let cfg = CampaignConfig::parse(
        "# connectivity only\nchecks = connectivity\nmax_g_order = 3\nmax_h_order = 3\ntimings = off\nformat = csv\n",
    )
    .unwrap();
    assert_eq!(cfg.format, Format::Csv);
    let report = run_campaign(&cfg).unwrap();
    let csv = report.render(cfg.format).unwrap();
    // header, one row per instance, summary row
    assert_eq!(csv.lines().count(), 1 + report.summary.instances + 1);
    assert!(CampaignConfig::parse("checks = theorem1\nmax_h_order = 2\n").is_err());
    assert!(CampaignConfig::parse("colour = blue\n").is_err());
}
