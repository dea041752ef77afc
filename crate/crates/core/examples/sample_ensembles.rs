//! Draw from the three random models and compare Monte Carlo means with the
//! closed forms.
//!
//! ```bash
//! cargo run --release --example sample_ensembles
//! ```

use clustcmp::random_models::{monte_carlo_expectation, sample_all, sample_num, stream_rng, Ensemble, Measure};
use clustcmp::Clustering;

fn main() -> clustcmp::Result<()> {
    let mut rng = stream_rng(2024, 0);
    let c = sample_num(12, 3, &mut rng)?;
    println!("uniform 3-cluster partition of 12: {:?}", c.membership());
    let c = sample_all(12, &mut rng)?;
    println!("uniform partition of 12:           {:?}", c.membership());

    let reference = Clustering::from_sizes(&[30, 30, 20, 10, 5, 5])?;
    let ensembles = [
        (
            "perm",
            Ensemble::Perm {
                a: reference.clone(),
                b: reference.clone(),
            },
        ),
        ("num K=4,6", Ensemble::Num { n: 100, k_a: 4, k_b: 6 }),
        ("all", Ensemble::All { n: 100 }),
        (
            "num one-sided",
            Ensemble::NumOneSided {
                k_a: 4,
                reference: reference.clone(),
            },
        ),
        ("all one-sided", Ensemble::AllOneSided { reference }),
    ];
    println!(
        "\n{:<14} {:<5} {:>10} {:>10} {:>8}",
        "ensemble", "", "closed", "sampled", "z"
    );
    for (stream, (name, ensemble)) in ensembles.iter().enumerate() {
        for measure in [Measure::Rand, Measure::Mi] {
            let mut rng = stream_rng(7, stream as u64);
            let est = monte_carlo_expectation(measure, ensemble, 2000, &mut rng)?;
            let exact = ensemble.closed_form(measure)?;
            println!(
                "{name:<14} {:<5} {exact:>10.6} {:>10.6} {:>8.2}",
                format!("{measure:?}"),
                est.mean,
                (est.mean - exact) / est.std_error
            );
        }
    }
    Ok(())
}
