// Scientific Strength of a small publication list: field-standardized
// citations times the unit's fractional share of each byline.
//
// cargo run --example scientific_strength

use std::error::Error;

use research_efficiency::bibliometrics::{
    fractional_count, positional_weights, standardize, PositionalScheme,
};
use research_efficiency::{scientific_strength, MedianTable, PublicationRecord};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let medians = MedianTable::new()
        .with(2006, "Chemistry, Medicinal", 6.0)?
        .with(2006, "Pharmacology & Pharmacy", 4.0)?
        .with(2007, "Cell Biology", 5.0)?;

    let pubs = vec![
        // two categories: divisor is the mean of both medians
        PublicationRecord::new(
            "p1",
            2006,
            10,
            vec![
                "Chemistry, Medicinal".into(),
                "Pharmacology & Pharmacy".into(),
            ],
            5,
            vec![2, 4],
            false,
        )?,
        // life science, unit holds first and last author
        PublicationRecord::new(
            "p2",
            2007,
            15,
            vec!["Cell Biology".into()],
            6,
            vec![1, 6],
            true,
        )?,
        // life science, unit holds only the first author
        PublicationRecord::new("p3", 2007, 3, vec!["Cell Biology".into()], 6, vec![1], true)?,
    ];

    println!("{:<4} {:>8} {:>8} {:>8}", "pub", "c_bar", "f", "c_bar*f");
    for p in &pubs {
        let s = standardize(p, &medians)?;
        println!(
            "{:<4} {:>8.3} {:>8.3} {:>8.3}",
            s.pub_id, s.c_bar, s.f, s.contribution
        );
        assert_eq!(s.f, fractional_count(p));
    }
    let ss = scientific_strength(&pubs, &medians)?;
    println!("SS = {ss:.3}");

    for scheme in [PositionalScheme::SharedEnds, PositionalScheme::SplitEnds] {
        let w: Vec<String> = positional_weights(6, scheme)
            .iter()
            .map(|x| format!("{x:.3}"))
            .collect();
        println!("{scheme:?} weights for six authors: {}", w.join(" "));
    }
    assert!((ss - (2.0 * 0.4 + 3.0 * 0.8 + 0.6 * 0.3)).abs() < 1e-9);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
