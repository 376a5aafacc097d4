use chainsched::algorithms::Algorithm;
use chainsched::experiments::{gap_study, run_experiment, write_csv, ExperimentSpec};
use chainsched::workload::{ChainClass, GeneratorConfig};

fn spec(num_chains: usize) -> ExperimentSpec {
    ExperimentSpec {
        generator: GeneratorConfig {
            seed: 0,
            num_chains,
            processors: 64,
            chain_class: ChainClass::Arbitrary,
            min_len: 5,
            max_len: 20,
            min_req: 1,
            max_req: 64,
            phase_variation: None,
            splitable: false,
        },
        algorithms: Algorithm::HEURISTICS.to_vec(),
        repetitions: 50,
        seed_base: 1000,
        oracle_budget: None,
    }
}

#[test]
fn ratio_shrinks_as_chain_count_grows() {
    let small = run_experiment(&spec(20)).unwrap();
    let large = run_experiment(&spec(200)).unwrap();
    for a in Algorithm::HEURISTICS {
        let s = small.summary(a).unwrap().mean_ratio;
        let l = large.summary(a).unwrap().mean_ratio;
        assert!(l <= s, "{a}: N=200 mean ratio {l} > N=20 mean ratio {s}");
    }
}

#[test]
fn sweeps_are_reproducible() {
    let mut s = spec(30);
    s.repetitions = 10;
    let a = run_experiment(&s).unwrap();
    let b = run_experiment(&s).unwrap();
    assert!(a.same_outcome(&b));
    assert_eq!(write_csv(&a, false, false).unwrap(), write_csv(&b, false, false).unwrap());
}

#[test]
fn gap_study_never_beats_the_oracle() {
    let s = ExperimentSpec {
        generator: GeneratorConfig {
            seed: 0,
            num_chains: 4,
            processors: 8,
            chain_class: ChainClass::Arbitrary,
            min_len: 1,
            max_len: 4,
            min_req: 1,
            max_req: 8,
            phase_variation: None,
            splitable: false,
        },
        algorithms: Algorithm::ALL.to_vec(),
        repetitions: 40,
        seed_base: 0,
        oracle_budget: None,
    };
    let result = gap_study(&s, 1_000_000).unwrap();
    assert_eq!(result.oracle_solved, 40);
    for row in &result.rows {
        let opt = row.oracle_makespan.unwrap();
        assert!(row.lower_bound <= opt && opt <= row.makespan, "{row:?}");
    }
    for summary in &result.summaries {
        assert!(summary.optimal_hits.unwrap() <= 40);
    }
}
