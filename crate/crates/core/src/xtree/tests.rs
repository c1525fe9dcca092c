use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

const A: Sym = Sym(0);
const B: Sym = Sym(1);

fn word(syms: &[Sym]) -> XTree {
    XTree::from_word(&Word(syms.to_vec()))
}

fn raw_word(syms: &[Sym]) -> RawXTree {
    RawXTree::from_word(&Word(syms.to_vec()))
}

/// All raw trees up to `max_edges`, by leaf attachment from smaller ones.
/// Every raw tree either has a leaf that is neither start nor end, or is a
/// directed path from start to end.
fn brute_force_raw(labels: &[Sym], max_edges: usize, class: TreeClass) -> Vec<RawXTree> {
    let dirs: &[Dir] = match class {
        TreeClass::Ehresmann => &[Dir::Out, Dir::In],
        TreeClass::LeftEhresmann => &[Dir::Out],
    };
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut level = vec![RawXTree::identity()];
    seen.insert(canonical_code(&level[0]));
    let mut all = level.clone();
    for k in 1..=max_edges {
        let mut next = Vec::new();
        let mut add = |t: RawXTree, next: &mut Vec<RawXTree>| {
            if seen.insert(canonical_code(&t)) {
                next.push(t);
            }
        };
        for t in &level {
            for v in 0..t.vertex_count() {
                for &label in labels {
                    for &dir in dirs {
                        let leaf = t.vertex_count();
                        let mut edges = t.edges().to_vec();
                        edges.push(match dir {
                            Dir::Out => Edge { from: v, label, to: leaf },
                            Dir::In => Edge { from: leaf, label, to: v },
                        });
                        add(RawXTree::new(leaf + 1, edges, t.start(), t.end()).unwrap(), &mut next);
                    }
                }
            }
        }
        let mut words: Vec<Vec<Sym>> = vec![Vec::new()];
        for _ in 0..k {
            words =
                words.into_iter().flat_map(|w| labels.iter().map(move |&l| [w.clone(), vec![l]].concat())).collect();
        }
        for w in words {
            add(raw_word(&w), &mut next);
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

fn oracle_pruned(labels: &[Sym], max_edges: usize, class: TreeClass) -> BTreeSet<XTree> {
    brute_force_raw(labels, max_edges, class).iter().map(prune).collect()
}

fn random_tree(seed: u64, max_edges: usize, class: TreeClass) -> XTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    prune(&random_raw_tree(&mut rng, &[A, B], max_edges, class))
}

#[test]
fn identity_encoding_and_product() {
    let one = RawXTree::identity();
    let t = raw_word(&[A, B]);
    assert_eq!(canonical_code(&one.product(&t)), canonical_code(&t));
    assert_eq!(canonical_code(&t.product(&one)), canonical_code(&t));
}

#[test]
fn raw_products_glue() {
    let a = raw_word(&[A]);
    assert_eq!(canonical_code(&a.product(&a)), canonical_code(&raw_word(&[A, A])));
    let glued = a.plus().product(&a);
    // Centre start with two outgoing a-edges, end at the second edge's head.
    let expected =
        RawXTree::new(3, vec![Edge { from: 0, label: A, to: 1 }, Edge { from: 0, label: A, to: 2 }], 0, 2).unwrap();
    assert_eq!(canonical_code(&glued), canonical_code(&expected));
}

#[test]
fn raw_unary_operations() {
    let a = raw_word(&[A]);
    assert_eq!(a.plus().end(), a.plus().start());
    assert_eq!(RawXTree::identity().star(), RawXTree::identity());
    let e = a.plus();
    assert_eq!(e.plus(), e);
}

#[test]
fn pruning_examples() {
    let a = raw_word(&[A]);
    assert_eq!(prune(&a.plus().product(&a)), word(&[A]));
    let t = prune(&a.product(&a.plus()));
    assert_eq!(t.edge_count(), 2);
    assert_eq!(t.trunk(), Word(vec![A]));
    assert_eq!(t.depth_undirected(), 2);
    assert_eq!(prune(t.raw()), t);
}

#[test]
fn multiplication_identities() {
    let x = word(&[A]);
    assert_eq!(x.plus().multiply(&x), x);
    assert_eq!(x.multiply(&x.star()), x);
    let ba = word(&[B, A]);
    let b = word(&[B]);
    assert_eq!(ba.plus().multiply(&ba), ba);
    assert_ne!(ba.plus().multiply(&b), b);
}

#[test]
fn idempotent_and_left_ehresmann() {
    let a = word(&[A]);
    assert!(a.plus().is_idempotent());
    assert!(!a.is_idempotent() && a.is_left_ehresmann());
    assert!(!a.star().is_left_ehresmann());
    assert!(XTree::identity().is_idempotent());
}

#[test]
fn order_relations() {
    let a = word(&[A]);
    let e = a.plus();
    assert!(e.leq_nat(&XTree::identity()).unwrap());
    assert_eq!(a.leq_nat(&e), Err(Error::NotIdempotent));
    assert!(a.leq_ltilde(&a));
    let ba = |i: usize| word(&[vec![B], vec![A; i]].concat());
    for i in 0..=5 {
        for j in 0..=5 {
            if i != j {
                assert!(!ba(i).leq_ltilde(&ba(j)), "{i} {j}");
            }
        }
    }
}

#[test]
fn depth_and_labels() {
    assert_eq!(XTree::identity().depth_undirected(), 0);
    let a = word(&[A]);
    assert_eq!(a.depth_undirected(), 1);
    assert_eq!(a.label_set(), [A].into());
    assert_eq!(a.star().depth_directed(), 0);
    assert_eq!(a.star().depth_undirected(), 1);
}

#[test]
fn small_enumerations() {
    let none = enumerate_trees(&[A], 0, TreeClass::Ehresmann, 1000).unwrap();
    assert_eq!(none, vec![XTree::identity()]);
    let one: BTreeSet<XTree> = enumerate_trees(&[A], 1, TreeClass::Ehresmann, 1000).unwrap().into_iter().collect();
    let a = word(&[A]);
    let expected: BTreeSet<XTree> = [XTree::identity(), a.clone(), a.plus(), a.star()].into();
    assert_eq!(one, expected);
}

#[test]
fn enumeration_matches_oracle() {
    for (labels, max_edges, class) in [
        (&[A][..], 4, TreeClass::Ehresmann),
        (&[A, B][..], 3, TreeClass::Ehresmann),
        (&[A, B][..], 5, TreeClass::LeftEhresmann),
    ] {
        let list = enumerate_trees(labels, max_edges, class, 1_000_000).unwrap();
        let set: BTreeSet<XTree> = list.iter().cloned().collect();
        assert_eq!(set.len(), list.len(), "duplicates at {max_edges}");
        assert_eq!(set, oracle_pruned(labels, max_edges, class), "{labels:?} {max_edges}");
    }
}

#[test]
fn enumeration_guard_trips() {
    assert!(matches!(enumerate_trees(&[A, B], 6, TreeClass::Ehresmann, 100), Err(Error::Budget { budget: 100 })));
}

#[test]
fn depth_enumeration_matches_edge_enumeration() {
    // Pruned trees of directed depth ≤ 2 over two letters have at most 9 edges.
    let by_edges = enumerate_trees(&[A, B], 9, TreeClass::LeftEhresmann, 10_000_000).unwrap();
    for depth in 0..=2 {
        let expected: BTreeSet<XTree> = by_edges.iter().filter(|t| t.depth_directed() <= depth).cloned().collect();
        let got = enumerate_trees_by_depth(&[A, B], depth, 1_000_000).unwrap();
        assert_eq!(got.len(), expected.len());
        assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), expected);
    }
}

#[test]
fn json_and_dot() {
    let alphabet = Alphabet::new(&["a", "b"]).unwrap();
    let t = word(&[A]).multiply(&word(&[B]).plus());
    let json = t.to_json(&alphabet);
    let mut names = alphabet.clone();
    let back = prune(&raw_from_json(&json, &mut names).unwrap());
    assert_eq!(back, t);
    let dot = to_dot(t.raw(), &alphabet);
    assert!(dot.contains("(start)") && dot.contains("(end)") && dot.contains("label=\"b\""));
    let bad = serde_json::json!({"vertices": [0, 1], "edges": [], "start": 0, "end": 1});
    assert!(raw_from_json(&bad, &mut names).is_err());
}

#[test]
fn ltilde_matches_right_identities() {
    let small: Vec<XTree> = enumerate_trees(&[A, B], 2, TreeClass::Ehresmann, 100_000).unwrap();
    let idempotents: Vec<&XTree> = small.iter().filter(|t| t.is_idempotent()).collect();
    for s in &small {
        for t in &small {
            if s.leq_ltilde(t) {
                for e in &idempotents {
                    if t.multiply(e) == *t {
                        assert_eq!(s.multiply(e), *s);
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn variety_identities(s in any::<u64>(), t in any::<u64>()) {
        let s = random_tree(s, 8, TreeClass::Ehresmann);
        let t = random_tree(t, 8, TreeClass::Ehresmann);
        let tp = t.plus();
        prop_assert_eq!(tp.multiply(&tp), tp.clone());
        prop_assert_eq!(tp.multiply(&t), t.clone());
        prop_assert_eq!(t.multiply(&t.star()), t.clone());
        let st = s.multiply(&t);
        prop_assert_eq!(st.plus(), s.multiply(&tp).plus());
        prop_assert!(st.plus().leq_nat(&s.plus()).unwrap());
        let (e, f) = (s.star(), t.plus());
        prop_assert_eq!(e.multiply(&f), f.multiply(&e));
        // e·f ≤ f, so inserting it between s and t can only shrink the plus.
        let lower = s.multiply(&e.multiply(&f)).multiply(&t).plus();
        prop_assert!(lower.leq_nat(&s.multiply(&f).multiply(&t).plus()).unwrap());
    }

    #[test]
    fn associativity(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (random_tree(a, 6, TreeClass::Ehresmann), random_tree(b, 6, TreeClass::Ehresmann), random_tree(c, 6, TreeClass::Ehresmann));
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }

    #[test]
    fn left_ehresmann_closure(a in any::<u64>(), b in any::<u64>()) {
        let a = random_tree(a, 6, TreeClass::LeftEhresmann);
        let b = random_tree(b, 6, TreeClass::LeftEhresmann);
        prop_assert!(a.is_left_ehresmann() && b.is_left_ehresmann());
        prop_assert!(a.multiply(&b).is_left_ehresmann());
        prop_assert!(a.plus().is_left_ehresmann());
    }

    #[test]
    fn pruning_is_confluent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw = random_raw_tree(&mut rng, &[A, B], 10, TreeClass::Ehresmann);
        let reference = prune(&raw);
        prop_assert!(is_pruned(reference.raw()));
        for _ in 0..3 {
            prop_assert_eq!(prune_shuffled(&raw, &mut rng), reference.clone());
        }
    }
}

/// Minimal evaluator for the printed term syntax.
fn eval_term(text: &str, alphabet: &Alphabet) -> XTree {
    fn product(tokens: &[String], i: &mut usize, alphabet: &Alphabet) -> XTree {
        let mut acc = XTree::identity();
        while *i < tokens.len() && tokens[*i] != ")" {
            let mut f = if tokens[*i] == "(" {
                *i += 1;
                let inner = product(tokens, i, alphabet);
                *i += 1;
                inner
            } else if tokens[*i] == "1" {
                *i += 1;
                XTree::identity()
            } else {
                *i += 1;
                XTree::generator(alphabet.sym(&tokens[*i - 1]).unwrap())
            };
            while *i < tokens.len() && tokens[*i].starts_with('^') {
                f = if tokens[*i] == "^+" { f.plus() } else { f.star() };
                *i += 1;
            }
            acc = acc.multiply(&f);
        }
        acc
    }
    let spaced = text.replace('(', " ( ").replace(')', " ) ").replace('^', " ^");
    let tokens: Vec<String> = spaced.split_whitespace().map(str::to_string).collect();
    product(&tokens, &mut 0, alphabet)
}

#[test]
fn terms_round_trip() {
    let alphabet = Alphabet::new(&["a", "b"]).unwrap();
    assert_eq!(XTree::identity().to_term(&alphabet), "1");
    assert_eq!(word(&[A, B]).to_term(&alphabet), "a b");
    assert_eq!(word(&[A]).star().to_term(&alphabet), "(a)^*");
    for t in enumerate_trees(&[A, B], 4, TreeClass::Ehresmann, 1_000_000).unwrap() {
        let term = t.to_term(&alphabet);
        assert_eq!(eval_term(&term, &alphabet), t, "{term}");
    }
}

#[test]
fn trunk_factors_rebuild_the_tree() {
    for class in [TreeClass::Ehresmann, TreeClass::LeftEhresmann] {
        for t in enumerate_trees(&[A, B], 4, class, 1_000_000).unwrap() {
            let factors = t.trunk_factors();
            let trunk = t.trunk();
            assert_eq!(factors.len(), trunk.len() + 1);
            assert!(factors.iter().all(XTree::is_idempotent));
            let mut rebuilt = factors[0].clone();
            for (x, e) in trunk.0.iter().zip(&factors[1..]) {
                rebuilt = rebuilt.multiply(&XTree::generator(*x)).multiply(e);
            }
            assert_eq!(rebuilt, t);
        }
    }
}
