use proptest::prelude::*;
use rand::Rng;

use wfc_setcover::generate::small_instance;
use wfc_setcover::rng::seeded;
use wfc_setcover::wfc::{wfc_solve, WfcParams, WfcState};
use wfc_setcover::{Instance, TieBreak};

fn instances() -> impl Strategy<Value = Instance> {
    (1usize..=50, 1usize..=100, 0.02f64..0.5, any::<u64>())
        .prop_map(|(n, m, density, seed)| small_instance(n, m, density, seed))
}

/// Everything about the state that must never move backwards.
fn snapshot(state: &WfcState) -> (Vec<usize>, Vec<bool>) {
    let n = state.instance().universe_size();
    (
        state.answer().to_vec(),
        (0..n).map(|x| state.is_elem_active(x)).collect(),
    )
}

fn assert_monotone(before: &(Vec<usize>, Vec<bool>), state: &WfcState) {
    let (ans, active) = snapshot(state);
    assert!(ans.starts_with(&before.0), "answer shrank or was rewritten");
    for (x, (&was, &now)) in before.1.iter().zip(&active).enumerate() {
        assert!(was || !now, "element {x} reactivated");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn audit_holds_under_random_operations(inst in instances(), op_seed in any::<u64>()) {
        let mut ops = seeded(op_seed);
        let mut state = WfcState::init(&inst, &WfcParams::plain(op_seed)).unwrap();
        state.check_invariants().unwrap();
        while state.active_set_count() > 0 {
            let before = snapshot(&state);
            let active: Vec<usize> = (0..inst.num_sets()).filter(|&s| state.is_set_active(s)).collect();
            let count = active.len();
            match ops.gen_range(0..3) {
                0 => {
                    state.step().unwrap();
                }
                1 => {
                    let s = active[ops.gen_range(0..active.len())];
                    state.collapse(s).unwrap();
                }
                _ => {
                    let s = active[ops.gen_range(0..active.len())];
                    state.propagate(s).unwrap();
                }
            }
            state.check_invariants().unwrap();
            prop_assert_eq!(state.recompute_audit(), state.incremental());
            prop_assert!(state.active_set_count() < count);
            assert_monotone(&before, &state);
        }
        prop_assert!(inst.is_cover(&state.into_cover()).unwrap());
    }

    #[test]
    fn solve_terminates_within_m_steps_with_a_cover(inst in instances(), seed in any::<u64>()) {
        let mut state = WfcState::init(&inst, &WfcParams::scored(seed, 1.3, 0.9)).unwrap();
        let mut steps = 0;
        while state.active_set_count() > 0 {
            state.step().unwrap();
            steps += 1;
        }
        prop_assert!(steps <= inst.num_sets());
        prop_assert!(inst.is_cover(&state.into_cover()).unwrap());
    }

    #[test]
    fn solve_is_deterministic(inst in instances(), seed in any::<u64>()) {
        for params in [WfcParams::plain(seed), WfcParams::scored(seed, 0.4, 0.7)] {
            prop_assert_eq!(wfc_solve(&inst, &params).unwrap(), wfc_solve(&inst, &params).unwrap());
        }
    }

    #[test]
    fn unit_scored_observe_matches_average(inst in instances(), seed in any::<u64>()) {
        let mut state = WfcState::init(&inst, &WfcParams::plain(seed)).unwrap();
        while state.active_set_count() > 0 {
            let mut scored = state.clone();
            let expected = state.observe().unwrap();
            prop_assert_eq!(scored.observe_scored(1.0, 1.0).unwrap(), expected);
            state.propagate(expected).unwrap();
        }
    }

    #[test]
    fn lowest_index_mode_ignores_seed(inst in instances(), a in any::<u64>(), b in any::<u64>()) {
        let params = |seed| WfcParams::scored(seed, 1.0, 0.9).with_tie_break(TieBreak::LowestIndex);
        prop_assert_eq!(wfc_solve(&inst, &params(a)).unwrap(), wfc_solve(&inst, &params(b)).unwrap());
    }
}

#[test]
fn feasible_on_a_thousand_random_instances() {
    let mut rng = seeded(2024);
    for i in 0..1000 {
        let inst = small_instance(
            rng.gen_range(1..=50),
            rng.gen_range(1..=100),
            rng.gen_range(0.02..0.5),
            i,
        );
        let cover = wfc_solve(&inst, &WfcParams::plain(i)).unwrap();
        assert!(inst.is_cover(&cover).unwrap(), "instance {i}");
    }
}
