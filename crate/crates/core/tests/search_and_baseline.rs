use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lyndon_reorder::baseline::sample_baseline;
use lyndon_reorder::lyndon::oracle::oracle_factorize;
use lyndon_reorder::strategies::{
    evaluate, exhaustive_search, greedy_backtracking_ordering, greedy_ordering, run_strategy, Direction, Objective,
    Strategy, Target,
};
use lyndon_reorder::{Alphabet, AlphabetOrdering};

fn random_text(rng: &mut ChaCha8Rng, alphabet: &[u8], len: usize) -> Vec<u8> {
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

fn permutations(items: &[u8]) -> Vec<Vec<u8>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Objective value of every ordering, via the definition-level oracle.
fn oracle_values(text: &[u8], objective: Objective) -> Vec<(Vec<u8>, usize, usize)> {
    let alphabet = Alphabet::detect(text).unwrap();
    permutations(alphabet.symbols())
        .into_iter()
        .map(|perm| {
            let o = AlphabetOrdering::from_sequence(&alphabet, &perm).unwrap();
            let f = oracle_factorize(text, &o).unwrap();
            let (k, m) = (f.count(), f.longest());
            let value = match objective.target {
                Target::FactorCount => k,
                Target::LongestFactor => m,
            };
            (perm, value, if objective.target == Target::FactorCount { m } else { k })
        })
        .collect()
}

#[test]
fn exhaustive_matches_independent_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let sigma = rng.gen_range(1..=4);
        let len = rng.gen_range(1..=10);
        let text = random_text(&mut rng, &b"abcd"[..sigma], len);
        for objective in Objective::ALL {
            let result = exhaustive_search(&text, objective, 8).unwrap();
            let all = oracle_values(&text, objective);
            let best = all
                .iter()
                .map(|(_, v, s)| (*v, *s))
                .reduce(|a, b| match objective.direction {
                    Direction::Maximize => a.max(b),
                    Direction::Minimize => a.min(b),
                })
                .unwrap();
            let first_best = all.iter().find(|(_, v, s)| (*v, *s) == best).unwrap();
            assert_eq!(objective.value(&result.stats), best.0);
            assert_eq!(result.ordering.perm(), first_best.0.as_slice(), "{objective} on {text:?}");
            assert_eq!(result.evaluations, all.len() as u64);
            assert!(result.optimal);
        }
    }
}

#[test]
fn strategies_lie_between_exhaustive_extremes() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let sigma = rng.gen_range(2..=6);
        let len = rng.gen_range(1..=200);
        let text = random_text(&mut rng, &b"abcdef"[..sigma], len);
        for target in [Target::FactorCount, Target::LongestFactor] {
            let lo_obj = Objective::new(target, Direction::Minimize);
            let hi_obj = Objective::new(target, Direction::Maximize);
            let lo = lo_obj.value(&exhaustive_search(&text, lo_obj, 8).unwrap().stats);
            let hi = hi_obj.value(&exhaustive_search(&text, hi_obj, 8).unwrap().stats);
            for objective in Objective::ALL {
                for strategy in [
                    Strategy::Identity,
                    Strategy::MostFrequentFirst,
                    Strategy::LeastFrequentFirst,
                    Strategy::Greedy,
                    Strategy::GreedyBacktracking,
                ] {
                    let r = run_strategy(&text, strategy, objective, None, 8).unwrap();
                    let v = lo_obj.value(&r.stats);
                    assert!(lo <= v && v <= hi, "{strategy} {objective}: {v} not in [{lo}, {hi}]");
                }
            }
        }
    }
}

#[test]
fn backtracking_never_worse_than_greedy() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..40 {
        let sigma = rng.gen_range(2..=12);
        let alphabet: Vec<u8> = (b'a'..b'a' + sigma).collect();
        let len = rng.gen_range(20..=400);
        let text = random_text(&mut rng, &alphabet, len);
        for objective in Objective::ALL {
            let g = greedy_ordering(&text, objective).unwrap();
            for budget in [0, 10 * sigma as usize, 1000] {
                let b = greedy_backtracking_ordering(&text, objective, budget).unwrap();
                assert!(!objective.is_better(&g.stats, &b.stats));
                assert_eq!(evaluate(&text, &b.ordering).unwrap(), b.stats);
                assert!(b.evaluations <= g.evaluations + budget as u64);
            }
        }
    }
}

#[test]
fn strategies_are_deterministic() {
    let text = b"it was the best of times, it was the worst of times";
    for objective in Objective::ALL {
        assert_eq!(greedy_ordering(text, objective).unwrap(), greedy_ordering(text, objective).unwrap());
        assert_eq!(
            greedy_backtracking_ordering(text, objective, 200).unwrap(),
            greedy_backtracking_ordering(text, objective, 200).unwrap()
        );
    }
}

#[test]
fn exhaustive_is_independent_of_thread_count() {
    let small = b"abracadabra";
    for objective in Objective::ALL {
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| exhaustive_search(small, objective, 8).unwrap());
        let b = four.install(|| exhaustive_search(small, objective, 8).unwrap());
        assert_eq!(a, b);
    }
}

#[test]
fn baseline_is_independent_of_thread_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let text = random_text(&mut rng, b"ACGTN", 20_000);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| sample_baseline(&text, 100, 42).unwrap());
    let b = four.install(|| sample_baseline(&text, 100, 42).unwrap());
    assert_eq!(a, b);
    assert_eq!(a.csv_string(), b.csv_string());
}

#[test]
fn baseline_samples_match_their_seeds() {
    let text = b"she sells sea shells by the sea shore";
    let alphabet = Alphabet::detect(text).unwrap();
    let d = sample_baseline(text, 25, 1000).unwrap();
    assert_eq!(d.n_samples(), 25);
    for (i, s) in d.samples.iter().enumerate() {
        assert_eq!((s.sample, s.seed), (i, 1000 + i as u64));
        let stats = evaluate(text, &AlphabetOrdering::random(&alphabet, s.seed)).unwrap();
        assert_eq!((s.k, s.m, s.m_pct), (stats.k, stats.m, stats.m_pct()));
    }
}

/// Fibonacci word over {a, b}.
fn fibonacci_word(min_len: usize) -> Vec<u8> {
    let (mut prev, mut cur) = (b"b".to_vec(), b"a".to_vec());
    while cur.len() < min_len {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = cur;
        cur = next;
    }
    cur
}

#[test]
fn binary_baseline_has_at_most_two_outcomes() {
    let text = fibonacci_word(10_000);
    let d = sample_baseline(&text, 100, 42).unwrap();
    let outcomes: HashSet<(usize, usize)> = d.samples.iter().map(|s| (s.k, s.m)).collect();
    assert!(outcomes.len() <= 2);

    let alphabet = Alphabet::detect(&text).unwrap();
    let both: HashSet<(usize, usize)> = [&b"ab"[..], b"ba"]
        .iter()
        .map(|p| {
            let s = evaluate(&text, &AlphabetOrdering::from_sequence(&alphabet, p).unwrap()).unwrap();
            (s.k, s.m)
        })
        .collect();
    assert!(outcomes.is_subset(&both));
}

#[test]
fn single_symbol_baseline_equals_identity() {
    let d = sample_baseline(b"zzzzz", 1, 3).unwrap();
    let id = evaluate(b"zzzzz", &AlphabetOrdering::identity(&Alphabet::detect(b"zzzzz").unwrap())).unwrap();
    assert_eq!((d.samples[0].k, d.samples[0].m), (id.k, id.m));
}
