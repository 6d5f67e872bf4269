use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::scheme::{fig1_scheme_a, naive_scheme, strassen};

/// Independent tally of what the encoding must produce for `(n, m)`:
/// (variables, clauses).
fn counting_oracle(n: usize, m: usize) -> (usize, usize) {
    let cells = n * n;
    let equations = cells * cells * cells;
    let base = 3 * m * cells;
    let pairs = m * cells * cells;
    let cubes = m * equations;
    let mut width = m;
    let mut chunks_per_eq = 0;
    while width >= 4 {
        width -= 2;
        chunks_per_eq += 1;
    }
    let terminal = 1usize << (width - 1);
    let vars = base + pairs + cubes + chunks_per_eq * equations;
    let clauses = 3 * pairs + 3 * cubes + 8 * chunks_per_eq * equations + terminal * equations;
    (vars, clauses)
}

#[test]
fn oracle_golden_values() {
    assert_eq!(counting_oracle(3, 23), (26541, 117126));
    assert_eq!(counting_oracle(2, 7), (772, 2960));
    assert_eq!(counting_oracle(1, 1), (5, 7));
}

#[test]
fn counts_match_oracle() {
    for (n, m) in [(1, 1), (1, 3), (2, 7), (2, 8), (3, 22), (3, 23)] {
        let f = encode(n, m).unwrap();
        assert_eq!(
            (f.var_count() as usize, f.clauses().len()),
            counting_oracle(n, m),
            "n={n} m={m}"
        );
        assert_eq!(f.groups().len(), n.pow(6));
        // every (l, alpha cell, beta cell) pair gate exists exactly once
        assert_eq!(f.counts().pair_gates, m * n.pow(4));
    }
}

#[test]
fn base_map_sizes_and_bijection() {
    assert_eq!(BaseVarMap::new(3, 23).unwrap().len(), 621);
    assert_eq!(BaseVarMap::new(3, 22).unwrap().len(), 594);
    assert_eq!(BaseVarMap::new(2, 7).unwrap().len(), 84);
    let map = BaseVarMap::new(3, 23).unwrap();
    for (v, b) in map.entries() {
        assert_eq!(map.var(b.role, b.summand, b.row, b.col), v);
    }
    assert_eq!(map.lookup(0), None);
    assert_eq!(map.lookup(622), None);
    assert_eq!(
        map.lookup(1),
        Some(BaseVar {
            role: Role::Alpha,
            summand: 1,
            row: 1,
            col: 1
        })
    );
    assert_eq!(map.lookup(207 + 1).unwrap().role, Role::Beta);
}

#[test]
fn sidecar_roundtrip() {
    let map = BaseVarMap::new(2, 7).unwrap();
    assert_eq!(BaseVarMap::from_sidecar(&map.to_sidecar()).unwrap(), map);
    let broken = map
        .to_sidecar()
        .replacen("1 alpha 1 1 1", "1 beta 1 1 1", 1);
    assert!(BaseVarMap::from_sidecar(&broken).is_err());
}

#[test]
fn base_ids_precede_aux_ids() {
    let f = encode(2, 3).unwrap();
    let nb = f.base().len() as u32;
    for g in f.gates() {
        let out = match *g {
            Gate::And { out, .. } | Gate::Xor3 { out, .. } => out,
        };
        assert!(out > nb);
    }
    assert!(f
        .clauses()
        .iter()
        .all(|c| !c.is_empty() && c.iter().all(|l| l.var() <= f.var_count())));
}

#[test]
fn golden_dimacs_1_1() {
    let f = encode(1, 1).unwrap();
    let expected = "p cnf 5 7\n\
                    -4 1 0\n\
                    -4 2 0\n\
                    4 -1 -2 0\n\
                    -5 4 0\n\
                    -5 3 0\n\
                    5 -4 -3 0\n\
                    5 0\n";
    assert_eq!(to_dimacs(&f), expected);
}

#[test]
fn exhaustive_soundness_n1() {
    let f = encode(1, 1).unwrap();
    let mut sat_count = 0;
    for bits in 0u8..8 {
        let base: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
        let model = f.extend(&base);
        let s = f.scheme_from_model(&model);
        assert_eq!(f.is_satisfied_by(&model), verify(&s), "bits={bits:03b}");
        sat_count += f.is_satisfied_by(&model) as usize;
    }
    assert_eq!(sat_count, 1);
}

#[test]
fn exhaustive_n1_over_all_variables() {
    // only the all-true assignment satisfies encode(1, 1)
    let f = encode(1, 1).unwrap();
    let models: Vec<u32> = (0u32..32)
        .filter(|bits| {
            let m = Model::from_values((0..5).map(|i| bits >> i & 1 == 1).collect());
            f.is_satisfied_by(&m)
        })
        .collect();
    assert_eq!(models, vec![31]);
}

fn random_soundness(n: usize, m: usize, samples: usize, seed: u64) {
    let f = encode(n, m).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nb = f.base().len();
    let start = if n == 2 && m == 7 {
        Some(strassen())
    } else {
        None
    };
    for i in 0..samples {
        let base: Vec<bool> = match (&start, i % 3) {
            // near-valid candidates: a valid scheme with a few flips
            (Some(s), 0) => {
                let mut b = base_assignment(s);
                for _ in 0..rng.gen_range(0..3) {
                    let j = rng.gen_range(0..nb);
                    b[j] = !b[j];
                }
                b
            }
            _ => (0..nb).map(|_| rng.gen_bool(0.3)).collect(),
        };
        let model = f.extend(&base);
        let s = f.scheme_from_model(&model);
        assert_eq!(f.is_satisfied_by(&model), verify(&s), "sample {i}");
    }
}

#[test]
fn random_soundness_n2() {
    random_soundness(2, 7, 1200, 7);
}

#[test]
fn random_soundness_n3() {
    random_soundness(3, 23, 60, 11);
}

#[test]
fn extension_is_unique() {
    // flipping any auxiliary variable of a definitional extension breaks a clause
    let f = encode(2, 7).unwrap();
    let model = f.model_of(&strassen()).unwrap();
    assert!(f.is_satisfied_by(&model));
    for v in f.base().len() as u32 + 1..=f.var_count() {
        let mut m2 = model.clone();
        m2.flip(v);
        assert!(!f.is_satisfied_by(&m2), "aux var {v} is unconstrained");
    }
}

#[test]
fn fix_from_scheme_counts() {
    let a = fig1_scheme_a();
    let f = encode(3, 23)
        .unwrap()
        .fix_from_scheme(&a, 2.0 / 3.0, 1)
        .unwrap();
    assert_eq!(f.assumptions().len(), 414);
    let values = base_assignment(&a);
    assert!(f
        .assumptions()
        .iter()
        .all(|l| values[l.var() as usize - 1] == l.is_positive()));

    let f0 = encode(3, 23).unwrap().fix_from_scheme(&a, 0.0, 1).unwrap();
    assert!(f0.assumptions().is_empty());
    assert_eq!(to_dimacs(&f0), to_dimacs(&encode(3, 23).unwrap()));

    let full = encode(3, 23).unwrap().fix_from_scheme(&a, 1.0, 1).unwrap();
    assert_eq!(full.assumptions().len(), 621);
    let model = full.model_of(&a).unwrap();
    assert_eq!(full.decode(&model).unwrap(), a);
}

#[test]
fn fix_rejects_bad_input() {
    let f = encode(2, 7).unwrap();
    assert!(f.clone().fix_from_scheme(&strassen(), 1.5, 0).is_err());
    assert!(f
        .clone()
        .fix_from_scheme(&naive_scheme(2).unwrap(), 0.5, 0)
        .is_err());
    assert!(f.assume_base(&[Lit::pos(85)]).is_err());
}

#[test]
fn fix_is_seed_deterministic() {
    let a = fig1_scheme_a();
    let f1 = encode(3, 23)
        .unwrap()
        .fix_from_scheme(&a, 2.0 / 3.0, 9)
        .unwrap();
    let f2 = encode(3, 23)
        .unwrap()
        .fix_from_scheme(&a, 2.0 / 3.0, 9)
        .unwrap();
    let f3 = encode(3, 23)
        .unwrap()
        .fix_from_scheme(&a, 2.0 / 3.0, 10)
        .unwrap();
    assert_eq!(f1.assumptions(), f2.assumptions());
    assert_ne!(f1.assumptions(), f3.assumptions());
}

#[test]
fn decode_checks_integrity() {
    let f = encode(2, 7).unwrap();
    let model = f.model_of(&strassen()).unwrap();
    assert_eq!(f.decode(&model).unwrap(), strassen());
    let mut tampered = model.clone();
    tampered.flip(1);
    assert!(matches!(f.decode(&tampered), Err(Error::Integrity(_))));
}

#[test]
fn parity_clause_shapes() {
    assert_eq!(parity_clauses(&[1], true), vec![vec![Lit::pos(1)]]);
    assert_eq!(parity_clauses(&[1], false), vec![vec![Lit::neg(1)]]);
    assert_eq!(parity_clauses(&[1, 2], true).len(), 2);
    assert_eq!(parity_clauses(&[1, 2, 3], true).len(), 4);
    assert_eq!(parity_clauses(&[1, 2, 3, 4], false).len(), 8);
    // brute-force semantics
    for rhs in [false, true] {
        let cl = parity_clauses(&[1, 2, 3], rhs);
        for bits in 0u32..8 {
            let m = Model::from_values((0..3).map(|i| bits >> i & 1 == 1).collect());
            let ok = cl.iter().all(|c| c.iter().any(|&l| m.satisfies(l)));
            assert_eq!(ok, (bits.count_ones() % 2 == 1) == rhs);
        }
    }
}

#[test]
fn dimacs_parse_roundtrip_and_model_lines() {
    let f = encode(2, 7)
        .unwrap()
        .fix_from_scheme(&strassen(), 0.5, 3)
        .unwrap();
    let text = to_dimacs(&f);
    let raw = parse_dimacs(&text).unwrap();
    assert_eq!(raw.var_count, f.var_count());
    assert_eq!(raw.clauses.len(), f.total_clauses());

    let model = f.model_of(&strassen()).unwrap();
    let out = format!("c some solver\ns SATISFIABLE\n{}", model.to_v_lines());
    assert_eq!(parse_model(&out, f.var_count()).unwrap(), model);
    assert_eq!(parse_solver_output("s UNSATISFIABLE\n", 5).unwrap(), None);
    assert!(parse_model("s SATISFIABLE\nv 1 x 0\n", 5).is_err());
    assert!(parse_model("v 1 -9 0\n", 5).is_err());
    assert!(parse_dimacs("1 2 0\n").is_err());
    assert!(parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
}
