//! Random instances for tests, examples, and benchmarks.

use rand::seq::index::sample;
use rand::Rng;

use crate::instance::Instance;
use crate::rng::seeded;

/// Random instance in the style of the OR-Library scp4x–scp6x generator:
/// each column covers at least one row and each row is covered by at least
/// two columns, with overall density close to `density`.
pub fn random_instance(rows: usize, cols: usize, density: f64, seed: u64, name: &str) -> Instance {
    assert!(rows >= 1 && cols >= 2, "need at least one row and two columns");
    let mut rng = seeded(seed);
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); cols];
    let target = ((density * cols as f64).round() as usize).clamp(2, cols);
    let widest = (2 * target - 2).clamp(2, cols);
    for row in 1..=rows {
        let count = rng.gen_range(2..=widest);
        for col in sample(&mut rng, cols, count) {
            columns[col].push(row);
        }
    }
    for col in columns.iter_mut().filter(|c| c.is_empty()) {
        col.push(rng.gen_range(1..=rows));
    }
    Instance::build(rows, columns, name).expect("every row has two columns")
}

/// Small instance for property tests: each element joins each set with
/// probability `density`, and uncovered elements are patched into a random set.
pub fn small_instance(universe: usize, sets: usize, density: f64, seed: u64) -> Instance {
    assert!(universe >= 1 && sets >= 1);
    let mut rng = seeded(seed);
    let mut raw: Vec<Vec<usize>> = (0..sets)
        .map(|_| (1..=universe).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    for x in 1..=universe {
        if !raw.iter().any(|s| s.contains(&x)) {
            let s = rng.gen_range(0..sets);
            raw[s].push(x);
        }
    }
    Instance::build(universe, raw, format!("random-{seed}")).expect("patched to cover")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_instance_shape() {
        let inst = random_instance(200, 1000, 0.02, 5, "r");
        assert_eq!(inst.universe_size(), 200);
        assert_eq!(inst.num_sets(), 1000);
        assert!((0..200).all(|x| inst.sets_containing(x).len() >= 2));
        let density = inst.nonzeros() as f64 / (200.0 * 1000.0);
        assert!((0.005..0.03).contains(&density), "{density}");
    }

    #[test]
    fn small_instance_is_deterministic() {
        assert_eq!(small_instance(10, 6, 0.3, 9), small_instance(10, 6, 0.3, 9));
    }
}
