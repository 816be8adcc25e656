use rand::Rng;

use wfc_setcover::baselines::{big_greedy, greedy, tabu_search, wfc_hc_tabu, TabuParams};
use wfc_setcover::generate::small_instance;
use wfc_setcover::hillclimb::{hill_climb, hill_climb_traced, HillClimbParams, TEMPERATURE_DECAY};
use wfc_setcover::oracle::{brute_force_min_cover, exact_min_cover, OracleLimits};
use wfc_setcover::rng::seeded;
use wfc_setcover::wfc::{wfc_solve, WfcParams};
use wfc_setcover::Instance;

fn harmonic(d: usize) -> f64 {
    (1..=d).map(|i| 1.0 / i as f64).sum()
}

fn random_small(rng: &mut impl Rng, seed: u64) -> Instance {
    small_instance(
        rng.gen_range(1..=14),
        rng.gen_range(1..=15),
        rng.gen_range(0.05..0.6),
        seed,
    )
}

#[test]
fn exact_matches_brute_force_and_bounds_heuristics() {
    let mut rng = seeded(77);
    for seed in 0..250 {
        let inst = random_small(&mut rng, seed);
        let brute = brute_force_min_cover(&inst).unwrap();
        let exact = exact_min_cover(&inst, &OracleLimits::default())
            .unwrap()
            .optimal()
            .expect("small instance solves within budget");
        assert_eq!(exact.size(), brute.size(), "seed {seed}");
        assert!(inst.is_cover(&exact).unwrap());
        let opt = exact.size();

        let g = greedy(&inst);
        assert!(g.size() >= opt);
        assert!(
            g.size() as f64 <= opt as f64 * harmonic(inst.max_set_size()) + 1e-9,
            "seed {seed}"
        );

        let heuristics = [
            big_greedy(&inst, 2).unwrap(),
            tabu_search(
                &inst,
                &g,
                &TabuParams {
                    iterations: 50,
                    seed,
                    ..Default::default()
                },
            )
            .unwrap()
            .best,
            wfc_solve(&inst, &WfcParams::plain(seed)).unwrap(),
            hill_climb(
                &inst,
                &HillClimbParams {
                    iterations: 10,
                    seed,
                    ..Default::default()
                },
            )
            .unwrap(),
        ];
        for cover in heuristics {
            assert!(inst.is_cover(&cover).unwrap(), "seed {seed}");
            assert!(cover.size() >= opt, "seed {seed}");
        }
    }
}

#[test]
fn exact_cover_is_lexicographically_smallest_optimum() {
    let mut rng = seeded(5);
    for seed in 0..100 {
        let inst = random_small(&mut rng, seed);
        let brute = brute_force_min_cover(&inst).unwrap();
        let exact = exact_min_cover(&inst, &OracleLimits::default())
            .unwrap()
            .optimal()
            .unwrap();
        assert_eq!(exact.sorted(), brute.sorted(), "seed {seed}");
    }
}

#[test]
fn hill_climb_never_worse_than_its_baseline() {
    let mut rng = seeded(8);
    for seed in 0..40 {
        let inst = small_instance(rng.gen_range(10..=40), rng.gen_range(10..=60), 0.15, seed);
        let params = HillClimbParams {
            iterations: 30,
            seed,
            ..Default::default()
        };
        let outcome = hill_climb_traced(&inst, &params).unwrap();
        assert!(outcome.best.size() <= outcome.baseline_size);
        assert!(outcome.steps.iter().all(|step| step.size >= outcome.best.size()));
    }
}

#[test]
fn hill_climb_result_is_non_increasing_in_iterations() {
    let inst = small_instance(40, 80, 0.1, 3);
    let mut last = usize::MAX;
    for iterations in [0, 5, 20, 60] {
        let size = hill_climb(
            &inst,
            &HillClimbParams {
                iterations,
                seed: 9,
                ..Default::default()
            },
        )
        .unwrap()
        .size();
        assert!(size <= last, "{iterations} iterations gave {size} after {last}");
        last = size;
    }
}

#[test]
fn temperature_follows_geometric_decay() {
    let inst = small_instance(20, 30, 0.2, 1);
    let params = HillClimbParams {
        iterations: 100,
        ..Default::default()
    };
    let outcome = hill_climb_traced(&inst, &params).unwrap();
    for (i, step) in outcome.steps.iter().enumerate() {
        let closed = params.temperature * TEMPERATURE_DECAY.powi(i as i32);
        assert!((step.temperature - closed).abs() <= 1e-12 * closed, "iteration {i}");
    }
    let closed = params.temperature * TEMPERATURE_DECAY.powi(100);
    assert!((outcome.final_temperature - closed).abs() <= 1e-12 * closed);
}

#[test]
fn tabu_improvements_shrink_and_pipeline_beats_hill_climb() {
    let mut rng = seeded(12);
    for seed in 0..30 {
        let inst = small_instance(rng.gen_range(10..=40), rng.gen_range(10..=60), 0.12, seed);
        let initial = greedy(&inst);
        let result = tabu_search(
            &inst,
            &initial,
            &TabuParams {
                iterations: 300,
                seed,
                ..Default::default()
            },
        )
        .unwrap();
        let sizes: Vec<usize> = result.improvements.iter().map(|&(_, k)| k).collect();
        assert!(sizes.windows(2).all(|w| w[1] < w[0]), "{sizes:?}");
        assert!(sizes.first().is_none_or(|&k| k < initial.size()));
        assert_eq!(sizes.last().copied().unwrap_or(initial.size()), result.best.size());

        let hc = HillClimbParams {
            iterations: 15,
            seed,
            ..Default::default()
        };
        let pipeline = wfc_hc_tabu(
            &inst,
            &hc,
            &TabuParams {
                iterations: 100,
                seed,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(inst.is_cover(&pipeline).unwrap());
        assert!(pipeline.size() <= hill_climb(&inst, &hc).unwrap().size());
    }
}
