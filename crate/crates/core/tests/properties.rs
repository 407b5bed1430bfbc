use fo3pdl::harness::{path_in, random_fo, random_fo_any, random_path, random_state, FoWeights};
use fo3pdl::parser::{parse_fo, parse_path, parse_state};
use fo3pdl::semantics::{
    all_assignments, eval_fo, eval_path, eval_pbc, Evaluator, FoTableEvaluator,
};
use fo3pdl::structures::{
    is_interval_preserving, is_interval_preserving_naive, random_ip_with, random_structure,
    rng_from_seed, Relation, Structure,
};
use fo3pdl::syntax::{to_prenex, var, Dialect, Fo, Prenex, Signature, Var};
use fo3pdl::transpiler::{
    complement_fragment, fo_to_fo3, fo_to_path_ordered, fo_to_pbc, translation_vars, Options,
};
use proptest::prelude::*;

fn sig() -> Signature {
    Signature::new(["P", "Q"], ["a"]).unwrap()
}

fn structure(seed: u64, n: usize) -> Structure {
    random_structure(&mut rng_from_seed(seed), n, &sig())
}

fn agree(m: &Structure, f: &Fo, g: &Fo, vars: &[Var]) -> bool {
    all_assignments(vars, m.size())
        .all(|nu| eval_fo(m, f, &nu).unwrap() == eval_fo(m, g, &nu).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_then_parsing_is_identity(seed in any::<u64>(), depth in 0usize..5) {
        let mut rng = rng_from_seed(seed);
        let f = random_fo_any(&mut rng, depth, &sig());
        prop_assert_eq!(parse_fo(&f.to_string()).unwrap(), f);
        let s = random_state(&mut rng, depth, &sig());
        prop_assert_eq!(parse_state(&s.to_string()).unwrap(), s);
        let p = random_path(&mut rng, depth, &sig());
        prop_assert_eq!(parse_path(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn prenex_form_is_prenex_and_equivalent(seed in any::<u64>(), n in 1usize..5) {
        let f = random_fo_any(&mut rng_from_seed(seed), 3, &sig());
        let p = Prenex::of(&f);
        prop_assert!(p.matrix.is_quantifier_free());
        let g = to_prenex(&f);
        prop_assert_eq!(g.free_vars(), f.free_vars());
        let vars: Vec<Var> = f.free_vars().into_iter().collect();
        prop_assert!(agree(&structure(seed, n), &f, &g, &vars));
    }

    #[test]
    fn table_evaluation_matches_recursive_evaluation(seed in any::<u64>(), n in 1usize..6) {
        let f = random_fo_any(&mut rng_from_seed(seed), 3, &sig());
        let m = structure(seed ^ 1, n);
        let mut table = FoTableEvaluator::new(&m);
        let vars: Vec<Var> = f.free_vars().into_iter().collect();
        for nu in all_assignments(&vars, n) {
            prop_assert_eq!(table.holds(&f, &nu).unwrap(), eval_fo(&m, &f, &nu).unwrap());
        }
    }

    #[test]
    fn translations_agree_with_the_formula(seed in any::<u64>(), n in 1usize..6) {
        let f = random_fo(&mut rng_from_seed(seed), 2, &sig(), FoWeights::DEFAULT);
        let opts = Options::default();
        let pbc = fo_to_pbc(&f, &opts).unwrap();
        let fo3 = fo_to_fo3(&f, &opts).unwrap();
        prop_assert!(fo3.count_vars() <= 3);
        let m = structure(seed ^ 2, n);
        let vars = translation_vars(&f);
        for nu in all_assignments(&vars, n) {
            let truth = eval_fo(&m, &f, &nu).unwrap();
            prop_assert_eq!(eval_pbc(&m, &pbc, &nu).unwrap(), truth, "pbc of {}", f);
            prop_assert_eq!(eval_fo(&m, &fo3, &nu).unwrap(), truth, "fo3 of {}", f);
        }
    }

    #[test]
    fn swapping_source_and_target_gives_the_converse(seed in any::<u64>(), n in 1usize..6) {
        let (x, y) = (var("x"), var("y"));
        let f = random_fo(&mut rng_from_seed(seed), 2, &sig(), FoWeights::DEFAULT)
            .and(&Fo::le(&x, &x))
            .and(&Fo::le(&y, &y));
        prop_assume!(f.free_vars().len() == 2);
        let opts = Options::default();
        let forward = fo_to_path_ordered(&f, &x, &y, &opts).unwrap();
        let backward = fo_to_path_ordered(&f, &y, &x, &opts).unwrap();
        let m = structure(seed ^ 3, n);
        prop_assert_eq!(eval_path(&m, &forward).unwrap(), eval_path(&m, &backward).unwrap().converse());
    }

    #[test]
    fn ip_relations_are_closed(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = rng_from_seed(seed);
        let (r, s) = (random_ip_with(&mut rng, n), random_ip_with(&mut rng, n));
        for t in [r.converse(), r.intersect(&s), r.compose(&s)] {
            prop_assert!(is_interval_preserving(&t).is_ok(), "{} from {} and {}", t, r, s);
        }
    }

    #[test]
    fn pairwise_checker_matches_definition(n in 0usize..5, bits in any::<u32>()) {
        let r = Relation::from_pairs(n, (0..n * n).filter(|i| bits >> i & 1 == 1).map(|i| (i / n, i % n)));
        prop_assert_eq!(is_interval_preserving(&r).is_ok(), is_interval_preserving_naive(&r));
    }

    #[test]
    fn complement_pieces_cover_the_complement(seed in any::<u64>(), n in 1usize..7) {
        let p = path_in(&mut rng_from_seed(seed), 3, &sig(), Dialect::FragLoop);
        let m = structure(seed ^ 4, n);
        let mut ev = Evaluator::new(&m);
        let union = complement_fragment(&p)
            .unwrap()
            .iter()
            .fold(Relation::empty(n), |acc, q| acc.union(&ev.path(q).unwrap()));
        prop_assert_eq!(union, ev.path(&p).unwrap().complement());
    }

    #[test]
    fn fragment_paths_denote_ip_relations(seed in any::<u64>(), n in 1usize..8) {
        let p = path_in(&mut rng_from_seed(seed), 4, &sig(), Dialect::FragCap);
        let r = eval_path(&structure(seed ^ 5, n), &p).unwrap();
        prop_assert!(is_interval_preserving(&r).is_ok(), "{} denotes {}", p, r);
    }
}
