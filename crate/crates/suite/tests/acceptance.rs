use prodmatch::suite::{run_suite, Corpus, SuiteConfig};

const CRITERIA: [&str; 10] = ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10"];

#[test]
fn acceptance_criteria() {
    let corpus = Corpus::builtin(5).expect("builtin corpus");
    assert_eq!(corpus.graphs.len(), 31);
    assert_eq!(corpus.labeled.len(), 772);
    let ledger = run_suite(&corpus, &SuiteConfig::default()).expect("suite runs");

    let mut failed = Vec::new();
    for id in CRITERIA {
        match ledger.get(id) {
            Some(c) => {
                println!(
                    "criterion {id:>2}: {} cases={} failures={} unknown={}  {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.cases,
                    c.failures,
                    c.unknown,
                    c.title
                );
                if !c.pass || c.cases == 0 {
                    failed.push(id.to_string());
                }
            }
            None => {
                println!("criterion {id:>2}: FAIL missing from ledger");
                failed.push(id.to_string());
            }
        }
    }
    for c in ledger.criteria.iter().filter(|c| c.id.starts_with('S')) {
        println!(
            "extra {:>4}: {} cases={} failures={} unknown={}  {}",
            c.id,
            if c.pass { "PASS" } else { "FAIL" },
            c.cases,
            c.failures,
            c.unknown,
            c.title
        );
        if !c.pass {
            failed.push(c.id.clone());
        }
    }
    for (id, ms) in &ledger.timings_ms {
        eprintln!("timing {id}: {ms} ms");
    }
    for c in ledger.criteria.iter().filter(|c| !c.pass) {
        eprintln!("{} counterexamples: {}", c.id, serde_json::to_string(&c.counterexamples).unwrap());
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
