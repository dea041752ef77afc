//! Compare two clustering files, or two built-in fixtures when no paths are given.
//!
//! ```bash
//! cargo run --example compare_files -- a.tsv b.tsv
//! ```

use clustcmp::compare::{compare_labeled, CompareOptions};
use clustcmp::io::{parse_clustering, read_clustering};
use clustcmp::{MiNormalizer, Model, ReferenceSide};

const TRUTH: &str = "# element\tlabel
e1\tcat
e2\tcat
e3\tcat
e4\tdog
e5\tdog
e6\tdog
e7\tbird
e8\tbird
";

const FOUND: &str = "e8\tc2
e1\tc0
e2\tc0
e3\tc1
e4\tc1
e5\tc1
e6\tc1
e7\tc2
";

fn main() -> clustcmp::Result<()> {
    let paths: Vec<String> = std::env::args().skip(1).collect();
    let (a, b) = match paths.as_slice() {
        [pa, pb] => (read_clustering(pa)?, read_clustering(pb)?),
        _ => (parse_clustering(TRUTH)?, parse_clustering(FOUND)?),
    };

    let runs = [
        ("rand, no correction", CompareOptions::rand(Model::None)),
        ("ARI perm", CompareOptions::rand(Model::Perm)),
        ("ARI num", CompareOptions::rand(Model::Num)),
        ("ARI all", CompareOptions::rand(Model::All)),
        (
            "ARI num, a fixed",
            CompareOptions::rand(Model::Num).one_sided(ReferenceSide::A),
        ),
        ("NMI max", CompareOptions::mi(Model::None, MiNormalizer::Max)),
        ("AMI perm", CompareOptions::mi(Model::Perm, MiNormalizer::Max)),
        ("AMI num", CompareOptions::mi(Model::Num, MiNormalizer::Max)),
        ("AMI all", CompareOptions::mi(Model::All, MiNormalizer::Max)),
    ];
    println!("{:<22} {:>9} {:>9} {:>9}", "", "raw", "E", "adjusted");
    for (name, options) in runs {
        let r = compare_labeled(&a, &b, &options)?;
        println!("{name:<22} {:>9.4} {:>9.4} {:>9.4}", r.raw, r.expectation, r.adjusted);
    }
    Ok(())
}
