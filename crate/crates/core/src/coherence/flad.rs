//! Principal one-sided ideals of the free (left) Ehresmann monoid: exact
//! divisibility, intersections of principal left and right ideals, and
//! right annihilators.
//!
//! Exact division. Suppose `U = A·T`. The trunk of `T` is a suffix of the
//! trunk of `U`, and the copy of `T` inside `U` starts at the trunk vertex
//! `p` that far from the end. Moving the end of `U` to `p` gives a tree `A'`
//! with a morphism from `A`, and `A'·T` retracts onto `U` (fold the second
//! copy of `T` back onto its image), so `A'·T = U`. Right division is dual,
//! except that in FLAd(X) the cofactor must stay left-Ehresmann: there we
//! take only the part of `U` directed-reachable from `p`, which contains the
//! image of any left-Ehresmann cofactor.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::report::ReportBuilder;
use super::{y_sequence_search, ConfigReport, CongGenSet, Side};
use crate::error::Error;
use crate::normalform::NormalForm;
use crate::words::{Alphabet, Sym};
use crate::xtree::{enumerate_trees, enumerate_trees_by_depth, prune, FreeEhresmann, TreeClass, XTree};

/// Smallest of FLAd(X) and FAd(X) containing both trees.
fn class_of(t: &XTree, u: &XTree) -> TreeClass {
    if t.is_left_ehresmann() && u.is_left_ehresmann() {
        TreeClass::LeftEhresmann
    } else {
        TreeClass::Ehresmann
    }
}

/// A cofactor `A` with `t·A = u` (right) or `A·t = u` (left), taken in the
/// smallest of FLAd(X), FAd(X) containing `t` and `u`; `None` when there is
/// none.
pub fn cofactor(t: &XTree, u: &XTree, side: Side) -> Option<XTree> {
    let (tw, uw) = (t.trunk(), u.trunk());
    let trunk = u.trunk_vertices();
    let a = match side {
        Side::Left => {
            if !tw.is_suffix_of(&uw) {
                return None;
            }
            prune(&u.with_end_raw(trunk[uw.len() - tw.len()]))
        }
        Side::Right => {
            if !tw.is_prefix_of(&uw) {
                return None;
            }
            let p = trunk[tw.len()];
            match class_of(t, u) {
                TreeClass::LeftEhresmann => prune(&u.directed_subtree_raw(p, u.raw().end())),
                TreeClass::Ehresmann => prune(&u.with_start_raw(p)),
            }
        }
    };
    let product = match side {
        Side::Left => a.multiply(t),
        Side::Right => t.multiply(&a),
    };
    (product == *u).then_some(a)
}

/// `u ∈ t·M` (right) or `u ∈ M·t` (left). Exact.
pub fn divides(t: &XTree, u: &XTree, side: Side) -> bool {
    cofactor(t, u, side).is_some()
}

/// Exhaustive search for a cofactor over all trees on the labels of `t` and
/// `u` with at most `max_edges` edges. Used as an independent oracle for
/// [`cofactor`].
pub fn divides_bounded(t: &XTree, u: &XTree, side: Side, max_edges: usize, budget: usize) -> Result<bool, Error> {
    let labels: Vec<Sym> = t.label_set().union(&u.label_set()).copied().collect();
    let candidates = enumerate_trees(&labels, max_edges, class_of(t, u), budget)?;
    Ok(candidates.iter().any(|a| match side {
        Side::Left => a.multiply(t) == *u,
        Side::Right => t.multiply(a) == *u,
    }))
}

/// Why `M·S ∩ M·T` is empty. Both reasons are exact.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EmptyReason {
    /// Neither trunk is a suffix of the other; left multiples of `S` and
    /// `T` have trunks ending differently.
    TrunkSuffix,
    /// Trunks are comparable but the normal forms fall outside every case
    /// with a common left multiple.
    NormalFormCases,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LeftIntersection {
    Empty(EmptyReason),
    /// `M·generator = M·S ∩ M·T`, with `generator = left_s·S = left_t·T`.
    Principal {
        generator: XTree,
        left_s: XTree,
        left_t: XTree,
    },
}

/// `M·S ∩ M·T` in FLAd(X): empty or principal.
///
/// If one of `S`, `T` is a left multiple of the other, the intersection is
/// generated by the larger one. Otherwise a common left multiple exists only
/// when both normal forms have an empty leading word, agree in every word
/// and in every idempotent after the first, and then `e·S = e·T` generates
/// with `e = e₁f₁` the product of the leading idempotents.
pub fn left_ideal_intersection_flad(s: &XTree, t: &XTree) -> LeftIntersection {
    debug_assert!(s.is_left_ehresmann() && t.is_left_ehresmann());
    if let Some(a) = cofactor(s, t, Side::Left) {
        return LeftIntersection::Principal { generator: t.clone(), left_s: a, left_t: XTree::identity() };
    }
    if let Some(a) = cofactor(t, s, Side::Left) {
        return LeftIntersection::Principal { generator: s.clone(), left_s: XTree::identity(), left_t: a };
    }
    let (sw, tw) = (s.trunk(), t.trunk());
    if !sw.is_suffix_of(&tw) && !tw.is_suffix_of(&sw) {
        return LeftIntersection::Empty(EmptyReason::TrunkSuffix);
    }
    let (ns, nt) = (NormalForm::of_tree(s), NormalForm::of_tree(t));
    let shaped = ns.m() >= 1
        && ns.m() == nt.m()
        && ns.words()[0].is_empty()
        && ns.words() == nt.words()
        && ns.idempotents()[1..] == nt.idempotents()[1..];
    if !shaped {
        return LeftIntersection::Empty(EmptyReason::NormalFormCases);
    }
    let e = ns.idempotents()[0].multiply(&nt.idempotents()[0]);
    let generator = e.multiply(t);
    debug_assert_eq!(e.multiply(s), generator);
    LeftIntersection::Principal { generator, left_s: e.clone(), left_t: e }
}

/// Generators of the right annihilator congruence `{(U, V) : T·U = T·V}`
/// of `T` in FLAd(X). Empty means the congruence is equality.
pub fn right_annihilator_flad(t: &XTree) -> Vec<(XTree, XTree)> {
    let nf = NormalForm::of_tree(t);
    match nf.idempotents().last() {
        Some(f) if nf.words().last().unwrap().is_empty() => vec![(XTree::identity(), f.clone())],
        _ => Vec::new(),
    }
}

/// Depth bound for generators of `T·M ∩ S·M`.
pub fn generating_depth(s: &XTree, t: &XTree) -> usize {
    s.depth_directed().max(t.depth_directed())
}

/// All common right multiples of `S` and `T` in FLAd(X) over their labels
/// with directed depth at most `depth`. With `depth` at least
/// [`generating_depth`] these generate `T·M ∩ S·M` as a right ideal.
pub fn right_ideal_intersection_flad(s: &XTree, t: &XTree, depth: usize, budget: usize) -> Result<Vec<XTree>, Error> {
    let labels: Vec<Sym> = s.label_set().union(&t.label_set()).copied().collect();
    Ok(enumerate_trees_by_depth(&labels, depth, budget)?
        .into_iter()
        .filter(|v| divides(t, v, Side::Right) && divides(s, v, Side::Right))
        .collect())
}

/// The members of `z` not strictly below another member in the right-ideal
/// order; they generate the same right ideal as `z`.
pub fn minimal_generators(z: &[XTree]) -> Vec<XTree> {
    let set: BTreeSet<&XTree> = z.iter().collect();
    set.iter()
        .filter(|v| !set.iter().any(|w| w != *v && divides(w, v, Side::Right) && !divides(v, w, Side::Right)))
        .map(|v| (*v).clone())
        .collect()
}

/// A factorization `u = v·w` with `v ∈ z`.
pub fn factor_through(u: &XTree, z: &[XTree]) -> Option<(XTree, XTree)> {
    z.iter().find_map(|v| cofactor(v, u, Side::Right).map(|w| (v.clone(), w)))
}

/// Brute force: every `X·S` with `X` a left-Ehresmann tree over `labels`
/// of at most `max_edges` edges that also equals some `Y·T` of that size.
pub fn common_left_multiples(
    s: &XTree,
    t: &XTree,
    labels: &[Sym],
    max_edges: usize,
    budget: usize,
) -> Result<BTreeSet<XTree>, Error> {
    let pool = enumerate_trees(labels, max_edges, TreeClass::LeftEhresmann, budget)?;
    let left: BTreeSet<XTree> = pool.iter().map(|x| x.multiply(s)).collect();
    Ok(pool.iter().map(|y| y.multiply(t)).filter(|v| left.contains(v)).collect())
}

fn tree_json(t: &XTree) -> Value {
    json!(format!("{:?}", t.code()))
}

/// Checks [`left_ideal_intersection_flad`] against
/// [`common_left_multiples`]: the generator is re-derived from its left
/// factors, and every common left multiple found lies in `M·generator`.
pub fn check_left_intersection(
    s: &XTree,
    t: &XTree,
    labels: &[Sym],
    bound: usize,
    budget: usize,
) -> Result<ConfigReport, Error> {
    let mut r = ReportBuilder::new(bound);
    let common = common_left_multiples(s, t, labels, bound, budget)?;
    match left_ideal_intersection_flad(s, t) {
        LeftIntersection::Empty(reason) => {
            r.require(
                "empty",
                common.is_empty(),
                || json!({"reason": format!("{reason:?}"), "multiple": tree_json(common.iter().next().unwrap())}),
            );
        }
        LeftIntersection::Principal { generator, left_s, left_t } => {
            r.require("generator-left-s", left_s.multiply(s) == generator, || json!({}));
            r.require("generator-left-t", left_t.multiply(t) == generator, || json!({}));
            for v in &common {
                r.require("principal", divides(&generator, v, Side::Left), || json!({"multiple": tree_json(v)}));
            }
        }
    }
    Ok(r.finish())
}

/// Checks [`right_annihilator_flad`] on all pairs of left-Ehresmann trees
/// over `labels` with at most `bound` edges: `TU = TV` iff `U = V` when no
/// generator is returned, iff `f·U = f·V` for the generator `(1, f)`, and in
/// that case a Y-sequence of length at most two witnesses it.
pub fn check_right_annihilator(t: &XTree, labels: &[Sym], bound: usize, budget: usize) -> Result<ConfigReport, Error> {
    let mut r = ReportBuilder::new(bound);
    let gens = right_annihilator_flad(t);
    let pool = enumerate_trees(labels, bound, TreeClass::LeftEhresmann, budget)?;
    let tu: Vec<XTree> = pool.iter().map(|u| t.multiply(u)).collect();
    let model =
        FreeEhresmann { alphabet: Alphabet::standard(labels.iter().map(|s| s.0 as usize + 1).max().unwrap_or(0)) };
    let y = CongGenSet { pairs: gens.clone(), side: Side::Right };
    for (i, u) in pool.iter().enumerate() {
        for (j, v) in pool.iter().enumerate() {
            let equated = tu[i] == tu[j];
            let witness = || json!({"u": tree_json(u), "v": tree_json(v)});
            match gens.first() {
                None => r.require("equality", equated == (i == j), witness),
                Some((_, f)) => {
                    let related = f.multiply(u) == f.multiply(v);
                    r.require("generated", equated == related, witness);
                    if related {
                        let seq = y_sequence_search(&model, &y, u, v, 2, &[u.clone(), v.clone()]);
                        r.require("y-sequence", seq.is_some(), witness);
                    }
                }
            }
        }
    }
    Ok(r.finish())
}

/// Computes `Z` for `S`, `T` at `depth` and checks that every common right
/// multiple over `labels` with at most `bound` edges factors through it.
pub fn check_right_intersection(
    s: &XTree,
    t: &XTree,
    depth: usize,
    labels: &[Sym],
    bound: usize,
    budget: usize,
) -> Result<(Vec<XTree>, ConfigReport), Error> {
    let mut r = ReportBuilder::new(bound);
    let z = right_ideal_intersection_flad(s, t, depth, budget)?;
    let mut members = 0;
    for u in enumerate_trees(labels, bound, TreeClass::LeftEhresmann, budget)? {
        if !(divides(s, &u, Side::Right) && divides(t, &u, Side::Right)) {
            continue;
        }
        members += 1;
        let factored = factor_through(&u, &z).is_some_and(|(v, w)| v.multiply(&w) == u);
        r.require("factors", factored, || json!({"member": tree_json(&u)}));
    }
    r.note(format!("{members} sampled members of the intersection, {} generators", z.len()));
    Ok((z, r.finish()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;
    use proptest::prelude::*;

    const A: Sym = Sym(0);
    const B: Sym = Sym(1);
    const BUDGET: usize = 1_000_000;

    fn w(syms: &[Sym]) -> XTree {
        XTree::from_word(&Word(syms.to_vec()))
    }

    fn trees(edges: usize, class: TreeClass) -> Vec<XTree> {
        enumerate_trees(&[A, B], edges, class, BUDGET).unwrap()
    }

    #[test]
    fn divides_examples() {
        let (a, b) = (w(&[A]), w(&[B]));
        for t in trees(3, TreeClass::Ehresmann) {
            assert_eq!(cofactor(&t, &t, Side::Right).map(|x| t.multiply(&x)), Some(t.clone()));
            assert!(divides(&t, &t, Side::Left));
        }
        assert!(!divides(&a, &b, Side::Right));
        assert!(!divides(&a, &b, Side::Left));
        let (e, f) = (a.plus(), w(&[B, A]).plus());
        assert!(divides(&e, &e.multiply(&f), Side::Right));
        assert!(divides(&f, &e.multiply(&f), Side::Left));
        assert!(divides(&a, &w(&[A, B]), Side::Right));
        assert!(!divides(&a, &w(&[A, B]), Side::Left));
    }

    #[test]
    fn flad_right_division_keeps_cofactor_left_ehresmann() {
        // U = a·(b)⁺ ∈ FLAd; the cofactor of a must be (b)⁺, not a (a)^*-tree.
        let (a, bp) = (w(&[A]), w(&[B]).plus());
        let u = a.multiply(&bp);
        let c = cofactor(&a, &u, Side::Right).unwrap();
        assert!(c.is_left_ehresmann());
        assert_eq!(c, bp);
    }

    #[test]
    fn exact_division_agrees_with_bounded_search() {
        // Extra labels in the candidate pool cannot help: pruning never
        // removes a label, so one shared pool per class is a faithful oracle.
        for class in [TreeClass::Ehresmann, TreeClass::LeftEhresmann] {
            let pool = trees(2, class);
            let candidates = trees(4, class);
            for t in &pool {
                // Every product with a cofactor inside the bound, per side.
                let reach = |side: Side, bound: usize| -> BTreeSet<XTree> {
                    candidates
                        .iter()
                        .filter(|a| a.edge_count() <= bound)
                        .map(|a| match side {
                            Side::Left => a.multiply(t),
                            Side::Right => t.multiply(a),
                        })
                        .collect()
                };
                for side in [Side::Left, Side::Right] {
                    let products: Vec<BTreeSet<XTree>> = (0..=4).map(|b| reach(side, b)).collect();
                    for u in &pool {
                        let found = products[t.edge_count() + u.edge_count()].contains(u);
                        assert_eq!(divides(t, u, side), found, "{t:?} {u:?} {side:?}");
                    }
                }
            }
        }
        let (a, b) = (w(&[A]), w(&[B]));
        assert!(!divides_bounded(&a, &b, Side::Right, 2, BUDGET).unwrap());
        assert!(divides_bounded(&a, &w(&[A, B]), Side::Right, 3, BUDGET).unwrap());
    }

    /// All common left multiples `X·S = Y·T` with `X`, `Y` of at most
    /// `edges` edges.
    fn oracle_common_left_multiples(s: &XTree, t: &XTree, edges: usize) -> BTreeSet<XTree> {
        let pool = trees(edges, TreeClass::LeftEhresmann);
        let left: BTreeSet<XTree> = pool.iter().map(|x| x.multiply(s)).collect();
        pool.iter().map(|y| y.multiply(t)).filter(|v| left.contains(v)).collect()
    }

    fn assert_left_intersection(s: &XTree, t: &XTree, edges: usize) {
        let common = oracle_common_left_multiples(s, t, edges);
        match left_ideal_intersection_flad(s, t) {
            LeftIntersection::Empty(reason) => {
                assert!(common.is_empty(), "{s:?} {t:?} {reason:?} {common:?}")
            }
            LeftIntersection::Principal { generator, left_s, left_t } => {
                assert_eq!(left_s.multiply(s), generator);
                assert_eq!(left_t.multiply(t), generator);
                for v in &common {
                    assert!(divides(&generator, v, Side::Left), "{s:?} {t:?} {v:?}");
                }
            }
        }
    }

    #[test]
    fn left_intersection_examples() {
        let (a, b) = (w(&[A]), w(&[B]));
        let t = w(&[A, B]).multiply(&a.plus());
        assert_eq!(
            left_ideal_intersection_flad(&t, &t),
            LeftIntersection::Principal { generator: t.clone(), left_s: t.plus(), left_t: XTree::identity() }
        );
        assert_eq!(left_ideal_intersection_flad(&a, &b), LeftIntersection::Empty(EmptyReason::TrunkSuffix));
        let (e, f) = (a.plus(), b.plus());
        match left_ideal_intersection_flad(&e, &f) {
            LeftIntersection::Principal { generator, .. } => assert_eq!(generator, e.multiply(&f)),
            other => panic!("{other:?}"),
        }
        assert_left_intersection(&a, &b, 3);
        assert_left_intersection(&e, &f, 3);
    }

    #[test]
    fn left_intersection_against_oracle() {
        let pool = trees(2, TreeClass::LeftEhresmann);
        for s in &pool {
            for t in &pool {
                assert_left_intersection(s, t, 3);
            }
        }
    }

    #[test]
    fn right_annihilator_cases() {
        let (a, b) = (w(&[A]), w(&[B]));
        assert!(right_annihilator_flad(&a).is_empty());
        assert!(right_annihilator_flad(&XTree::identity()).is_empty());
        let t = b.multiply(&a.plus());
        assert_eq!(right_annihilator_flad(&t), vec![(XTree::identity(), a.plus())]);
        assert!(right_annihilator_flad(&a.plus().multiply(&b)).is_empty());
    }

    #[test]
    fn right_annihilator_against_oracle() {
        let pool = trees(2, TreeClass::LeftEhresmann);
        let m = FreeEhresmann { alphabet: Alphabet::new(&["a", "b"]).unwrap() };
        for t in trees(3, TreeClass::LeftEhresmann) {
            let gens = right_annihilator_flad(&t);
            for u in &pool {
                for v in &pool {
                    let equated = t.multiply(u) == t.multiply(v);
                    match gens.first() {
                        None => assert_eq!(equated, u == v, "{t:?} {u:?} {v:?}"),
                        Some((_, f)) => {
                            assert_eq!(equated, f.multiply(u) == f.multiply(v), "{t:?} {u:?} {v:?}");
                            let y = CongGenSet { pairs: gens.clone(), side: Side::Right };
                            let found = y_sequence_search(&m, &y, u, v, 2, &pool).is_some();
                            if found {
                                assert!(equated);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn right_intersection_examples() {
        let (a, b) = (w(&[A]), w(&[B]));
        let z = right_ideal_intersection_flad(&a, &a, 1, BUDGET).unwrap();
        assert!(z.contains(&a));
        assert_eq!(minimal_generators(&z), vec![a.clone()]);
        assert!(right_ideal_intersection_flad(&a, &b, 2, BUDGET).unwrap().is_empty());
        let (e, f) = (a.plus(), b.plus());
        let z = right_ideal_intersection_flad(&e, &f, generating_depth(&e, &f), BUDGET).unwrap();
        assert_eq!(minimal_generators(&z), vec![e.multiply(&f)]);
    }

    #[test]
    fn right_intersection_generates_sampled_members() {
        let pool = trees(3, TreeClass::LeftEhresmann);
        let small = trees(1, TreeClass::LeftEhresmann);
        for s in &small {
            for t in &small {
                let z = right_ideal_intersection_flad(s, t, generating_depth(s, t), BUDGET).unwrap();
                for u in pool.iter().filter(|u| divides(s, u, Side::Right) && divides(t, u, Side::Right)) {
                    let (v, c) = factor_through(u, &z).unwrap_or_else(|| panic!("{s:?} {t:?} {u:?}"));
                    assert_eq!(v.multiply(&c), *u);
                }
            }
        }
    }

    #[test]
    fn public_checkers_pass_on_small_inputs() {
        let (a, b) = (w(&[A]), w(&[B]));
        let (e, f) = (a.plus(), b.plus());
        assert!(check_left_intersection(&e, &f, &[A, B], 3, BUDGET).unwrap().passed());
        assert!(check_left_intersection(&a, &b, &[A, B], 3, BUDGET).unwrap().passed());
        assert!(check_right_annihilator(&b.multiply(&e), &[A, B], 2, BUDGET).unwrap().passed());
        assert!(check_right_annihilator(&a, &[A, B], 2, BUDGET).unwrap().passed());
        let (z, report) = check_right_intersection(&e, &f, 1, &[A, B], 3, BUDGET).unwrap();
        assert!(report.passed() && !z.is_empty());
        assert_eq!(common_left_multiples(&e, &f, &[A, B], 3, BUDGET).unwrap(), oracle_common_left_multiples(&e, &f, 3));
    }

    proptest! {
        #[test]
        fn cofactors_reproduce_products(i in 0usize..200, j in 0usize..200) {
            let pool = trees(3, TreeClass::LeftEhresmann);
            let (t, a) = (&pool[i % pool.len()], &pool[j % pool.len()]);
            let right = t.multiply(a);
            let c = cofactor(t, &right, Side::Right).unwrap();
            prop_assert!(c.is_left_ehresmann());
            prop_assert_eq!(t.multiply(&c), right);
            let left = a.multiply(t);
            prop_assert_eq!(cofactor(t, &left, Side::Left).unwrap().multiply(t), left);
        }
    }
}
