mod common;

use moore_learn::charsample::{characteristic_sample, random_minimal_moore};
use moore_learn::eval::{accuracy, generate_test_set, score_trace, AccuracyPolicy};
use moore_learn::formats::{machine_from_json, machine_to_json, read_traces, write_traces_as, TraceFormat};
use moore_learn::learners::{learn, Algorithm};
use moore_learn::traces::MooreTrace;
use proptest::prelude::*;

use common::*;

fn small_machine() -> impl Strategy<Value = (u64, usize, usize, usize)> {
    (any::<u64>(), 1usize..8, 1usize..4, 1usize..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn learners_complete_and_consistent((seed, n, ni, no) in small_machine(), count in 1usize..15) {
        let mut r = rng(seed);
        let m = random_machine(&mut r, n, ni, no);
        let ts = sample_traces(&m, &mut r, count, 5);
        for algo in Algorithm::ALL {
            let h = learn(&ts, algo).unwrap().machine;
            prop_assert!(h.is_complete());
            prop_assert!(consistent(&h, &ts), "{algo}");
        }
    }

    #[test]
    fn minimize_preserves_behaviour((seed, n, ni, no) in small_machine()) {
        let m = random_machine(&mut rng(seed), n, ni, no);
        let min = m.minimize();
        prop_assert!(min.num_states() <= m.num_states());
        prop_assert!(oracle_equivalent(&m, &min));
        prop_assert!(m.equivalent(&min).unwrap());
    }

    #[test]
    fn equivalence_agrees_with_oracle(s1 in any::<u64>(), s2 in any::<u64>(), n in 1usize..5) {
        let a = random_machine(&mut rng(s1), n, 2, 2);
        let b = random_machine(&mut rng(s2), n, 2, 2);
        prop_assert_eq!(a.equivalent(&b).unwrap(), oracle_equivalent(&a, &b));
        if let Some(w) = a.distinguishing_word(&b).unwrap() {
            prop_assert_ne!(a.run(&w).unwrap(), b.run(&w).unwrap());
        }
    }

    #[test]
    fn accuracy_is_one_for_equivalent_machines(seed in any::<u64>(), n in 1usize..10) {
        let m = random_minimal_moore(seed, n, 2, 1.max(n.min(3))).unwrap();
        let training = characteristic_sample(&m).unwrap().sample;
        let test = generate_test_set(&m, &training, seed).unwrap();
        let relabelled = m.minimize();
        for p in AccuracyPolicy::ALL {
            prop_assert_eq!(accuracy(p, &test, &relabelled).unwrap(), 1.0);
        }
    }

    #[test]
    fn policy_ordering(seed in any::<u64>(), flips in proptest::collection::vec(any::<bool>(), 0..8)) {
        let mut r = rng(seed);
        let m = random_machine(&mut r, 4, 2, 3);
        let w = random_word(&mut r, 2, flips.len().saturating_sub(1));
        let mut y = outputs_from(&m, 0, &w);
        for (o, f) in y.iter_mut().zip(&flips) {
            if *f {
                *o = (*o + 1) % 3;
            }
        }
        let t = MooreTrace::new(w, y).unwrap();
        let [s, md, wk] = AccuracyPolicy::ALL.map(|p| score_trace(p, &t, &m).unwrap());
        prop_assert!(0.0 <= s && s <= md && md <= wk && wk <= 1.0);
    }

    #[test]
    fn formats_round_trip((seed, n, ni, no) in small_machine(), count in 0usize..10) {
        let mut r = rng(seed);
        let m = random_machine(&mut r, n, ni, no);
        prop_assert_eq!(&machine_from_json(&machine_to_json(&m)).unwrap(), &m);
        let mut ts = sample_traces(&m, &mut r, count, 4);
        if ts.is_empty() {
            ts.push(MooreTrace::new(vec![], vec![0]).unwrap()).unwrap();
        }
        for f in [TraceFormat::Line, TraceFormat::Structured] {
            let back = read_traces(&write_traces_as(&ts, f)).unwrap();
            prop_assert_eq!(back.inputs(), ts.inputs());
            prop_assert_eq!(back.outputs(), ts.outputs());
            prop_assert_eq!(back.traces(), ts.traces());
        }
    }
}
