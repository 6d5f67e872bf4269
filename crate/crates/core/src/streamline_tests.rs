use super::*;
use crate::encoder::{encode, to_dimacs};
use crate::scheme::{core_signature, fig1_scheme_a, fig1_scheme_b, naive_scheme, strassen, verify};
use crate::sls::unit_propagate;

fn fixes_everything(f: CnfFormula, s: &Scheme) -> CnfFormula {
    f.fix_from_scheme(s, 1.0, 0).unwrap()
}

#[test]
fn random_pairing_shape() {
    for seed in 0..50 {
        let p = random_pairing(3, 23, seed).unwrap();
        let mut expected = vec![1; 19];
        expected.extend([2, 2, 2, 2]);
        assert_eq!(p.sizes(), expected);
        let mut all: Vec<_> = p.entries().iter().flatten().copied().collect();
        all.sort();
        assert_eq!(all, enumerate_type3(3));
    }
}

#[test]
fn random_pairing_is_seeded() {
    assert_eq!(
        random_pairing(3, 23, 4).unwrap(),
        random_pairing(3, 23, 4).unwrap()
    );
    assert_ne!(
        random_pairing(3, 23, 4).unwrap(),
        random_pairing(3, 23, 5).unwrap()
    );
    assert!(random_pairing(3, 13, 0).is_err());
    assert!(random_pairing(2, 9, 0).is_err());
    assert_eq!(
        random_pairing(2, 7, 0).unwrap().sizes(),
        vec![1, 1, 1, 1, 1, 1, 2]
    );
}

#[test]
fn pairing_text_roundtrip() {
    let p = random_pairing(3, 23, 8).unwrap();
    let text = p.to_string();
    assert_eq!(text.lines().count(), 23);
    assert_eq!(parse_pairing(&text).unwrap(), p);
    assert!(parse_pairing("1: a11b11c11 a11b11c11\n").is_err());
    assert!(parse_pairing("1: a11b12c11\n").is_err());
}

#[test]
fn fig1_cores_form_pairings() {
    let a = Pairing::from_scheme_core(&fig1_scheme_a()).unwrap();
    assert_eq!(a.m(), 23);
    assert_eq!(core_signature(&fig1_scheme_a()), vec![2, 2, 2, 2]);
    assert!(
        Pairing::from_scheme_core(&fig1_scheme_b()).is_err(),
        "B's summand 23 has three terms"
    );
}

#[test]
fn hardcode_counts() {
    let p = random_pairing(3, 23, 1).unwrap();
    let base = encode(3, 23).unwrap();
    let plain = base.clauses().len();
    let f = hardcode_pairing(base.clone(), &p, true).unwrap();
    let added = &f.clauses()[plain..];
    assert_eq!(added.iter().filter(|c| c.len() == 1).count(), 81);
    assert_eq!(added.iter().filter(|c| c.len() == 3).count(), 23 * 27 - 27);
    let g = hardcode_pairing(base, &p, false).unwrap();
    assert_eq!(g.clauses().len() - plain, 81);
    assert!(hardcode_pairing(encode(3, 22).unwrap(), &p, true).is_err());
}

#[test]
fn hardcoded_core_of_a_is_consistent_with_a() {
    let a = fig1_scheme_a();
    let p = Pairing::from_scheme_core(&a).unwrap();
    let f = hardcode_pairing(encode(3, 23).unwrap(), &p, true).unwrap();
    let model = f.model_of(&a).unwrap();
    assert!(f.is_satisfied_by(&model));

    let other = random_pairing(3, 23, 2).unwrap();
    let g = hardcode_pairing(encode(3, 23).unwrap(), &other, true).unwrap();
    assert!(!g.is_satisfied_by(&g.model_of(&a).unwrap()));
}

#[test]
fn line_pattern_counts() {
    assert_eq!(line_patterns(3).len(), 3 + 3 + 9);
    assert!(line_patterns(3).iter().take(6).all(|p| p.len() == 6));
    assert!(line_patterns(3).iter().skip(6).all(|p| p.len() == 5));
}

#[test]
fn single_summand_checker() {
    let a = fig1_scheme_a();
    // summand 17: (a23)(b31)(c11 + c12 + c31 + c32)
    assert!(single_summand_structure_holds(&a.summands()[16]));
    // summand 2: three dense factors
    assert!(!single_summand_structure_holds(&a.summands()[1]));
    assert!(naive_scheme(3)
        .unwrap()
        .summands()
        .iter()
        .all(single_summand_structure_holds));
}

#[test]
fn streamliner_cnf_matches_checker() {
    let a = fig1_scheme_a();
    let p = Pairing::from_scheme_core(&a).unwrap();
    let hard = hardcode_pairing(encode(3, 23).unwrap(), &p, true).unwrap();
    for l in p.singletons() {
        let f = fixes_everything(streamline_single_summand(hard.clone(), l).unwrap(), &a);
        let prop = unit_propagate(f.var_count(), f.clauses(), f.assumptions());
        let holds = single_summand_structure_holds(&a.summands()[l - 1]);
        if !holds {
            assert!(
                prop.conflict,
                "summand {l} violates the structure but propagation passes"
            );
        } else {
            let out = crate::sls::solve(&f, &crate::sls::SolverConfig::default());
            assert!(
                out.is_sat(),
                "summand {l} has the structure but no selector witness found"
            );
        }
    }
}

#[test]
fn streamliner_rejects_bad_summands() {
    let a = fig1_scheme_a();
    let p = Pairing::from_scheme_core(&a).unwrap();
    let f = hardcode_pairing(encode(3, 23).unwrap(), &p, true).unwrap();
    let pair_summand = (1..=23).find(|&l| p.entry(l).len() == 2).unwrap();
    assert!(streamline_single_summand(f.clone(), pair_summand).is_err());
    assert!(streamline_single_summand(f, 24).is_err());
    assert!(streamline_single_summand(encode(3, 23).unwrap(), 1).is_err());
}

#[test]
fn streamliners_do_not_contradict_hardcoded_units() {
    for seed in 0..10 {
        let p = random_pairing(3, 23, seed).unwrap();
        let f = streamline_singletons(hardcode_pairing(encode(3, 23).unwrap(), &p, true).unwrap())
            .unwrap();
        let prop = unit_propagate(f.var_count(), f.clauses(), f.assumptions());
        assert!(!prop.conflict, "seed {seed}");
    }
}

#[test]
fn streamliners_are_not_implied() {
    // valid schemes that violate a streamliner exist
    let a = fig1_scheme_a();
    let violators: Vec<usize> = Pairing::from_scheme_core(&a)
        .unwrap()
        .singletons()
        .filter(|&l| !single_summand_structure_holds(&a.summands()[l - 1]))
        .collect();
    assert!(!violators.is_empty());
    assert!(verify(&a));
}

#[test]
fn even_occurrence_checker_and_cnf() {
    let naive = naive_scheme(2).unwrap();
    assert!(even_occurrence_holds(&naive));

    // 4 copies of the same summand produce each of its terms 4 times
    let sm = strassen().summands()[0];
    let quad = Scheme::new(2, vec![sm; 4]).unwrap();
    assert!(!even_occurrence_holds(&quad));
    let f = streamline_even_occurrence(encode(2, 4).unwrap()).unwrap();
    let model = f.model_of(&quad).unwrap();
    let fixed = f.clone().fix_from_scheme(&quad, 1.0, 0).unwrap();
    assert!(unit_propagate(fixed.var_count(), fixed.clauses(), fixed.assumptions()).conflict);
    assert!(!f.is_satisfied_by(&model));

    // Strassen: recorded outcome for the bundled 2x2 scheme
    let s = strassen();
    let g = streamline_even_occurrence(encode(2, 7).unwrap()).unwrap();
    let fixed = g.clone().fix_from_scheme(&s, 1.0, 0).unwrap();
    let conflict = unit_propagate(fixed.var_count(), fixed.clauses(), fixed.assumptions()).conflict;
    assert_eq!(conflict, !even_occurrence_holds(&s));
}

#[test]
fn even_occurrence_on_fig1() {
    let a = fig1_scheme_a();
    let holds = even_occurrence_holds(&a);
    eprintln!("fig1 A even-occurrence: {holds}");
    let f = streamline_even_occurrence(encode(3, 23).unwrap()).unwrap();
    let fixed = f.fix_from_scheme(&a, 1.0, 0).unwrap();
    let conflict = unit_propagate(fixed.var_count(), fixed.clauses(), fixed.assumptions()).conflict;
    assert_eq!(conflict, !holds);
}

#[test]
fn dimacs_is_deterministic_with_streamliners() {
    let build = || {
        let p = random_pairing(3, 23, 6).unwrap();
        streamline_singletons(hardcode_pairing(encode(3, 23).unwrap(), &p, true).unwrap()).unwrap()
    };
    assert_eq!(to_dimacs(&build()), to_dimacs(&build()));
}
