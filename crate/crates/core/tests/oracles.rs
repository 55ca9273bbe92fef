//! The max-flow solver against brute-force enumeration and the exact LP
//! relaxation on random small transportation instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vertiport_safety::oracle::{enumerate_assignments, relaxation_feasible, DEFAULT_LIMIT};
use vertiport_safety::solver::{solve, validate_witness, Certificate, Limit, TransportInstance};

fn random_limit(rng: &mut ChaCha8Rng, max: u64) -> Limit {
    if rng.gen_bool(0.2) {
        Limit::Unbounded
    } else {
        Limit::Finite(rng.gen_range(0..=max))
    }
}

/// Up to 4 rows and 4 columns, small supplies, sparse cells, a few fixed
/// amounts.
fn random_instance(seed: u64) -> TransportInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = rng.gen_range(0..=4);
    let cols = rng.gen_range(1..=4);
    let supplies = (0..rows).map(|_| rng.gen_range(0..=4)).collect();
    let caps = (0..cols).map(|_| random_limit(&mut rng, 4)).collect();
    let mut inst = TransportInstance::new(supplies, caps);
    let mut allowed = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(0.5) {
                let bound = random_limit(&mut rng, 3);
                inst.allow(r, c, bound);
                allowed.push((r, c));
            }
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        let c = rng.gen_range(0..cols);
        if rows > 0 && rng.gen_bool(0.5) {
            let r = rng.gen_range(0..rows);
            if !allowed.contains(&(r, c)) && !inst.fixed().iter().any(|f| f.row == Some(r) && f.col == c) {
                inst.fix(Some(r), c, rng.gen_range(0..=2));
            }
        } else {
            inst.fix(None, c, rng.gen_range(0..=2));
        }
    }
    inst
}

#[test]
fn solver_matches_enumeration_on_1000_instances() {
    let mut infeasible = 0;
    for seed in 0..1000 {
        let inst = random_instance(seed);
        let solved = solve(&inst).unwrap();
        let brute = enumerate_assignments(&inst, DEFAULT_LIMIT).unwrap();
        assert_eq!(solved.is_feasible(), brute.is_some(), "seed {seed}: {inst:?}");
        if let Some(w) = brute {
            assert!(validate_witness(&inst, &w), "seed {seed}: oracle witness rejected");
        }
        match solved.witness() {
            Some(w) => assert!(validate_witness(&inst, w), "seed {seed}: solver witness rejected"),
            None => infeasible += 1,
        }
    }
    // The generator must exercise both verdicts.
    assert!(infeasible > 100 && infeasible < 900, "{infeasible} infeasible");
}

#[test]
fn solver_matches_lp_relaxation_on_1000_instances() {
    for seed in 1000..2000 {
        let inst = random_instance(seed);
        let solved = solve(&inst).unwrap();
        assert_eq!(
            solved.is_feasible(),
            relaxation_feasible(&inst).unwrap(),
            "seed {seed}: {inst:?}"
        );
    }
}

#[test]
fn certificates_are_valid() {
    for seed in 2000..3000 {
        let inst = random_instance(seed);
        if let Some(cert) = solve(&inst).unwrap().certificate() {
            assert!(cert.verify(&inst), "seed {seed}: {cert:?}");
            if let Certificate::Hall { demand, absorbable, .. } = cert {
                assert!(demand > absorbable);
            }
        }
    }
}

#[test]
fn witnesses_are_deterministic() {
    for seed in 3000..3200 {
        let inst = random_instance(seed);
        assert_eq!(solve(&inst).unwrap(), solve(&inst.clone()).unwrap());
    }
}
