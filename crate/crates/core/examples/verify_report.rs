// JSON reports are self-checking: every entry is re-verified from scratch on load.

use lucas_diophantine::report::{Report, SporadicEntry};
use lucas_diophantine::{find_families, search_paper_example, CoeffDomain, Convention};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let exp = search_paper_example();
    let fams = find_families(&CoeffDomain::Box(1), &exp.bounds);
    let report = Report::from_paper(&exp, Convention::FROZEN, &fams);
    let json = report.to_json()?;
    println!(
        "report: {} bytes, {} sporadic, {} families",
        json.len(),
        report.sporadic.len(),
        report.families.len()
    );

    let back = Report::from_json(&json)?;
    assert_eq!(back.to_json()?, json);
    assert!(back.verify(500).is_empty());

    let mut tampered = back;
    if let Some(SporadicEntry::Canonical { indices, .. }) = tampered.sporadic.first_mut() {
        indices[0] += 1;
    }
    for line in tampered.verify(500) {
        println!("caught: {line}");
    }

    let mut csv = Vec::new();
    report.write_csv(&mut csv)?;
    println!("csv: {} rows", String::from_utf8(csv)?.lines().count() - 1);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
