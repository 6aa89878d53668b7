use super::*;
use crate::groebner::Ideal;
use crate::poly::parse_poly;
use crate::schubert::coordinate_table;
use crate::weyl::parse_cycles;
use std::collections::BTreeMap;

const A2: &str = include_str!("../../../../corpus/tables/a2.json");
const A3: &str = include_str!("../../../../corpus/tables/a3.json");

fn set(rank: usize) -> ConeSet {
    ConeSet::compute(rank, &Direct, 2).unwrap()
}

fn w(s: &str, rank: usize) -> Permutation {
    parse_cycles(s, rank).unwrap()
}

fn no_legend() -> BTreeMap<String, String> {
    BTreeMap::new()
}



#[test]
fn sweep_keeps_enumeration_order() {
    let s = set(2);
    let names: Vec<String> = s.cones.iter().map(|c| c.w.to_string()).collect();
    assert_eq!(names, ["e", "(23)", "(12)", "(123)", "(132)", "(13)"]);
    assert_eq!(s.position(&w("(13)", 2)), Some(5));
    let serial = ConeSet::compute(3, &Direct, 1).unwrap();
    let parallel = ConeSet::compute(3, &Direct, 4).unwrap();
    assert_eq!(serial.cones, parallel.cones);
}

#[test]
fn dimension_checks() {
    let r = check_dimensions(&set(2));
    assert_eq!((r.checked, r.passed()), (6, 6));
    let s3 = set(3);
    let c = s3.get(&w("(13)(24)", 3)).unwrap();
    assert_eq!((c.dimension, c.length), (4, 4));
    assert_eq!(s3.get(&Permutation::identity(4)).unwrap().dimension, 0);
    assert!(check_dimensions(&s3).is_pass());
}

#[test]
fn inverse_pairs() {
    let s3 = set(3);
    let a = s3.get(&w("(134)", 3)).unwrap();
    let b = s3.get(&w("(143)", 3)).unwrap();
    assert!(variety_equal(&a.ideal(), &b.ideal()).unwrap());
    let r = check_conjecture2(&set(2));
    assert!(r.is_pass(), "{r}");
    assert_eq!(r.checked, 6);
    assert!(check_conjecture2(&s3).is_pass());
}

#[test]
fn cone_classes_rank2() {
    let s = set(2);
    let classes = cone_classes(&s).unwrap();
    assert_eq!(classes.len(), 5);
    assert_eq!(classes[0], vec![5]);
    let (a, b) = converse_witness(&s, &classes).unwrap();
    assert_eq!((s.cones[a].w.to_string(), s.cones[b].w.to_string()), ("(23)".into(), "(12)".into()));
    let r = check_conjecture1(&s);
    assert!(r.is_pass(), "{r}");
    assert!(r.notes.iter().any(|n| n.contains("converse fails: (23) and (12)")));
    // the identity is alone in its class
    assert!(classes.contains(&vec![0]));
}

#[test]
fn four_cycles_share_a_cone() {
    let s = set(3);
    let classes = cone_classes(&s).unwrap();
    let names = |c: &Vec<usize>| {
        let mut v: Vec<String> = c.iter().map(|&k| s.cones[k].w.to_string()).collect();
        v.sort();
        v
    };
    assert!(classes.iter().any(|c| names(c) == ["(1234)", "(1243)", "(1342)", "(1432)"]));
    assert!(check_conjecture1(&s).is_pass());
    assert!(check_coxeter(&s).is_pass());
    assert_eq!(check_coxeter(&s).checked, 4);
}

#[test]
fn adstar_rank2() {
    let r = check_adstar(&set(2));
    assert!(r.is_pass(), "{r}");
}

#[test]
fn subsystem_evidence() {
    let (s1, s2, s3) = (set(1), set(2), set(3));
    let r = check_conjecture3_evidence(&s2, &s3);
    assert!(r.is_pass(), "{r}");
    assert_eq!(r.checked, 12);
    assert!(check_conjecture3_evidence(&s1, &s3).is_pass());
    let c = s3.get(&w("(123)", 3)).unwrap();
    let expect = Ideal::parse(&coordinate_table(3), &["x41", "x31", "x42", "x43"]).unwrap();
    assert!(variety_equal(&c.ideal(), &expect).unwrap());
}

#[test]
fn equation_chains() {
    let (g, a) = equations_to_generators("x31=x32=0", 2, &no_legend()).unwrap();
    assert_eq!(g, ["x31", "x32"]);
    assert!(a.is_empty());
    let (g, _) = equations_to_generators("n*", 2, &no_legend()).unwrap();
    assert!(g.is_empty());
    let (g, a) = equations_to_generators("x31=x41=x51=0=x52=0", 4, &no_legend()).unwrap();
    assert_eq!(g, ["x31", "x41", "x51", "x52"]);
    assert_eq!(a, [AnomalyKind::InnerZero]);
    let (g, a) = equations_to_generators("0", 2, &no_legend()).unwrap();
    assert_eq!(g, ["x21", "x31", "x32"]);
    assert_eq!(a, [AnomalyKind::BareZero]);
    let legend = BTreeMap::from([("P".to_string(), "x43*x31 + x42*x21".to_string())]);
    let (g, _) = equations_to_generators("x41=0, P=0", 3, &legend).unwrap();
    assert_eq!(g, ["x41", "(x43*x31 + x42*x21)"]);
    let (g, _) = equations_to_generators("x21 = x31", 2, &no_legend()).unwrap();
    assert_eq!(g, ["(x21) - (x31)"]);
    assert!(equations_to_generators("x21=", 2, &no_legend()).is_err());
}

#[test]
fn corpus_rank2_and_rank3_match() {
    let c = Corpus::merge([load_corpus(A2).unwrap(), load_corpus(A3).unwrap()]);
    let r = compare_corpus(&set(2), &c, &Allowlist::default());
    assert_eq!((r.summary.entries, r.summary.matched), (6, 6), "{r}");
    assert!(r.anomalies.is_empty());
    let r = compare_corpus(&set(3), &c, &Allowlist::default());
    assert_eq!((r.summary.entries, r.summary.matched), (24, 24), "{r}");
    assert!(r.is_pass());
}

#[test]
fn mismatches_carry_checkable_witnesses() {
    let text = r#"[{"rank": 2, "w": "(12)", "gens": ["x31", "x21"]},
                   {"rank": 2, "w": "(12)", "equations": "x31=x32=0"},
                   {"rank": 2, "w": "(17)", "gens": []},
                   {"rank": 2, "w": "(13)", "gens": ["x99"]},
                   {"rank": 2}]"#;
    let corpus = load_corpus(text).unwrap();
    assert_eq!(corpus.errors.len(), 1);
    let s = set(2);
    let r = compare_corpus(&s, &corpus, &Allowlist::default());
    assert!(!r.is_pass());
    let first = r.entries.iter().find(|e| e.w == "(12)").unwrap();
    let Verdict::Mismatch { witness, side, .. } = &first.verdict else {
        panic!("{r}")
    };
    assert_eq!(witness, "x21");
    assert_eq!(*side, WitnessSide::CorpusEquationOffComputed);
    assert!(first.recheck(s.get(&w("(12)", 2)).unwrap()).unwrap());
    assert_eq!(r.anomalies.len(), 1);
    assert_eq!(r.anomalies[0].kind, AnomalyKind::DuplicateLabel);
    assert_eq!(r.summary.bad_entries, 3);
    assert_eq!(r.summary.missing, 4);

    let allow = load_allowlist(r#"[{"rank": 2, "w": "(12)", "reason": "test"}]"#).unwrap();
    let r = compare_corpus(&s, &corpus, &allow);
    assert_eq!(r.summary.allowlisted, 1);
    let first = r.entries.iter().find(|e| e.w == "(12)").unwrap();
    assert!(!first.verdict.is_failure());
}

#[test]
fn computed_side_witness() {
    // corpus claims a smaller ideal than the truth
    let corpus = load_corpus(r#"[{"rank": 2, "w": "e", "gens": ["x21", "x31"]}]"#).unwrap();
    let s = set(2);
    let r = compare_corpus(&s, &corpus, &Allowlist::default());
    let e = &r.entries[0];
    let Verdict::Mismatch { witness, side, .. } = &e.verdict else {
        panic!("{r}")
    };
    assert_eq!(*side, WitnessSide::ComputedEquationOffCorpus);
    assert_eq!(witness, "x32");
    assert!(e.recheck(s.get(&Permutation::identity(3)).unwrap()).unwrap());
    let f = parse_poly(witness, &coordinate_table(2)).unwrap();
    assert!(!radical_member(&f, &Ideal::parse(&coordinate_table(2), &["x21", "x31"]).unwrap()).unwrap());
}

#[test]
fn records_round_trip_through_the_corpus_parser() {
    let s = set(2);
    let records: Vec<ConeRecord> = s.cones.iter().map(|c| ConeRecord::from_cone(c, Some(0))).collect();
    let json = serde_json::to_string(&records).unwrap();
    let corpus = load_corpus(&json).unwrap();
    assert!(corpus.errors.is_empty());
    let r = compare_corpus(&s, &corpus, &Allowlist::default());
    assert_eq!(r.summary.matched, 6);
    let back: Vec<ConeRecord> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, records);
}

#[test]
fn conj2_agrees_with_corpus_rows() {
    // rows listing w and its inverse together match the same computed variety
    let s = set(3);
    let c = load_corpus(A3).unwrap();
    let r = compare_corpus(&s, &c, &Allowlist::default());
    for e in &c.entries {
        let p = parse_cycles(&e.w, 3).unwrap();
        let inv = p.inverse();
        if c.entries.iter().any(|o| o.row == e.row && parse_cycles(&o.w, 3).unwrap() == inv) {
            let a = s.get(&p).unwrap().ideal();
            let b = s.get(&inv).unwrap().ideal();
            assert!(variety_equal(&a, &b).unwrap());
        }
    }
    assert!(r.is_pass());
}
