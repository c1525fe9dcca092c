//! Finite certificates for non-coherence: special annihilators, Y-sequences
//! and the forbidden configurations built from them.

use std::collections::{HashMap, VecDeque};

use serde_json::{json, Value};

use super::report::{ConfigReport, ReportBuilder};
use super::{EhresmannContext, Side};
use crate::expansions::{QSet, Qn, QnElement};
use crate::psdp::{BaseMonoid, Group, PSetElement, Sdp};

/// `[1, a, a², …, a^n]`.
fn powers<M: BaseMonoid>(m: &M, a: &M::Elem, n: usize) -> Vec<M::Elem> {
    let mut out = vec![m.identity()];
    for i in 0..n {
        out.push(m.multiply(&out[i], a));
    }
    out
}

/// Least `(m, n)` in lexicographic order with `m, n ≤ depth` and
/// `u·b·aᵐ = v·b·aⁿ`; `None` means unrelated up to `depth`.
pub fn lambda_related<M: BaseMonoid>(
    m: &M,
    u: &M::Elem,
    v: &M::Elem,
    a: &M::Elem,
    b: &M::Elem,
    depth: usize,
) -> Option<(usize, usize)> {
    let pow = powers(m, a, depth);
    let ub = m.multiply(u, b);
    let vb = m.multiply(v, b);
    let right: Vec<M::Elem> = pow.iter().map(|p| m.multiply(&vb, p)).collect();
    (0..=depth).find_map(|i| {
        let left = m.multiply(&ub, &pow[i]);
        right.iter().position(|r| *r == left).map(|j| (i, j))
    })
}

/// Generators of a one-sided congruence.
#[derive(Clone, Debug)]
pub struct CongGenSet<E> {
    pub pairs: Vec<(E, E)>,
    pub side: Side,
}

/// One rewrite `c·t → d·t` (right) or `t·c → t·d` (left).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct YStep<E> {
    pub c: E,
    pub d: E,
    pub t: E,
}

/// Breadth-first search for a Y-sequence from `from` to `to` of at most
/// `max_len` steps, with multipliers drawn from `multipliers` and the
/// identity. `None` is only "not found within the bound".
pub fn y_sequence_search<M: BaseMonoid>(
    m: &M,
    y: &CongGenSet<M::Elem>,
    from: &M::Elem,
    to: &M::Elem,
    max_len: usize,
    multipliers: &[M::Elem],
) -> Option<Vec<YStep<M::Elem>>> {
    let mut ts = vec![m.identity()];
    ts.extend(multipliers.iter().filter(|t| **t != m.identity()).cloned());
    let pairs: Vec<(M::Elem, M::Elem)> =
        y.pairs.iter().flat_map(|(c, d)| [(c.clone(), d.clone()), (d.clone(), c.clone())]).collect();
    let act = |x: &M::Elem, t: &M::Elem| match y.side {
        Side::Right => m.multiply(x, t),
        Side::Left => m.multiply(t, x),
    };
    let mut parent: HashMap<M::Elem, Option<(M::Elem, YStep<M::Elem>)>> = HashMap::new();
    parent.insert(from.clone(), None);
    let mut queue = VecDeque::from([(from.clone(), 0usize)]);
    while let Some((x, len)) = queue.pop_front() {
        if x == *to {
            let mut steps = Vec::new();
            let mut at = x;
            while let Some(Some((prev, step))) = parent.get(&at).cloned() {
                steps.push(step);
                at = prev;
            }
            steps.reverse();
            return Some(steps);
        }
        if len == max_len {
            continue;
        }
        for (c, d) in &pairs {
            for t in &ts {
                if act(c, t) != x {
                    continue;
                }
                let next = act(d, t);
                if !parent.contains_key(&next) {
                    let step = YStep { c: c.clone(), d: d.clone(), t: t.clone() };
                    parent.insert(next.clone(), Some((x.clone(), step)));
                    queue.push_back((next, len + 1));
                }
            }
        }
    }
    None
}

/// Checks the two-condition obstruction: (1) `u·b·aⁿ = v·b·aᵐ` forces
/// `u·b·aⁿ = v·b·aⁿ`, checked on `samples` only, and (2) for `1 ≤ i ≤ depth`
/// the `i`-th witness pair is separated by `b·aⁱ` but not by `b·aⁱ⁻¹`.
/// `Side::Right` is the mirror image: `aⁱ·b·u` in place of `u·b·aⁱ`.
pub fn check_lemma_m_n<M: BaseMonoid>(
    m: &M,
    a: &M::Elem,
    b: &M::Elem,
    witnesses: &[(M::Elem, M::Elem)],
    depth: usize,
    samples: &[M::Elem],
    side: Side,
) -> ConfigReport {
    let mut r = ReportBuilder::new(depth);
    let pow = powers(m, a, depth);
    // The fixed part b·aⁱ (left) or aⁱ·b (right), and how it meets u.
    let core: Vec<M::Elem> = pow
        .iter()
        .map(|p| match side {
            Side::Left => m.multiply(b, p),
            Side::Right => m.multiply(p, b),
        })
        .collect();
    let apply = |u: &M::Elem, i: usize| match side {
        Side::Left => m.multiply(u, &core[i]),
        Side::Right => m.multiply(&core[i], u),
    };
    let js = |x: &M::Elem| m.elem_to_json(x);
    for i in 1..=depth {
        let Some((u, v)) = witnesses.get(i - 1) else {
            r.inconclusive(format!("witnesses supplied only for i ≤ {}", witnesses.len()));
            break;
        };
        r.require("2-equal", apply(u, i) == apply(v, i), || json!({"i": i, "u": js(u), "v": js(v)}));
        r.require("2-separate", apply(u, i - 1) != apply(v, i - 1), || json!({"i": i, "u": js(u), "v": js(v)}));
    }
    let table: Vec<Vec<M::Elem>> = samples.iter().map(|u| (0..=depth).map(|i| apply(u, i)).collect()).collect();
    for (x, u) in samples.iter().zip(&table) {
        for (y, v) in samples.iter().zip(&table) {
            for n in 0..=depth {
                for k in 0..=depth {
                    if u[n] == v[k] {
                        r.require("1-equal-powers", u[n] == v[n], || json!({"u": js(x), "v": js(y), "n": n, "m": k}));
                    }
                }
            }
        }
    }
    r.note(format!("condition 1 checked on {} sample elements only", samples.len()));
    r.finish()
}

/// The right-Ehresmann forbidden configuration for `a`, `b` and projections
/// `e[i-1] = e_i`: the elements `b·aⁱ` are pairwise incomparable under the
/// right-identity preorder, and `e_i` fixes `b·aⁱ` but not `b·aⁱ⁻¹`. Outside
/// E-unitary inverse contexts the identity-transfer condition is also checked
/// on `samples`.
pub fn check_forbidden_config<C: EhresmannContext>(
    ctx: &C,
    a: &C::Elem,
    b: &C::Elem,
    e: &[C::Elem],
    depth: usize,
    samples: &[C::Elem],
) -> ConfigReport {
    let mut r = ReportBuilder::new(depth);
    let js = |x: &C::Elem| ctx.elem_to_json(x);
    let ba: Vec<C::Elem> = powers(ctx, a, depth).iter().map(|p| ctx.multiply(b, p)).collect();
    for i in 0..=depth {
        for j in 0..=depth {
            if i != j {
                r.require("3i-incomparable", !ctx.leq_ltilde(&ba[i], &ba[j]), || json!({"i": i, "j": j}));
            }
        }
    }
    for i in 1..=depth {
        let Some(ei) = e.get(i - 1) else {
            r.inconclusive(format!("projections supplied only for i ≤ {}", e.len()));
            break;
        };
        r.require("3ii-projection", ctx.is_projection(ei), || json!({"i": i, "e": js(ei)}));
        r.require("3ii-fixes", ctx.multiply(ei, &ba[i]) == ba[i], || json!({"i": i, "e": js(ei)}));
        r.require("3ii-separates", ctx.multiply(ei, &ba[i - 1]) != ba[i - 1], || json!({"i": i, "e": js(ei)}));
    }
    if !ctx.is_e_unitary_inverse() {
        let stars: Vec<C::Elem> = samples.iter().map(|x| ctx.star(x)).collect();
        for (i, w) in ba.iter().enumerate() {
            let fixes: Vec<bool> = stars.iter().map(|s| ctx.multiply(s, w) == *w).collect();
            let image: Vec<C::Elem> = samples.iter().map(|x| ctx.multiply(x, w)).collect();
            for (xi, x) in samples.iter().enumerate() {
                for (yi, y) in samples.iter().enumerate() {
                    if fixes[xi] && image[xi] == image[yi] {
                        r.require("3iii-transfer", fixes[yi], || json!({"i": i, "x": js(x), "y": js(y)}));
                    }
                }
            }
        }
        r.note(format!("identity transfer checked on {} sample elements only", samples.len()));
        r.note("the product-of-projections and unitary hypotheses are not checked in this context");
    }
    r.finish()
}

/// The `g, h, e` configuration: a unit pair `g, h` and an idempotent `e`
/// whose conjugates commute but never collapse, checked for exponents up to
/// `depth`.
pub fn check_bgr_config<M: BaseMonoid>(m: &M, g: &M::Elem, h: &M::Elem, e: &M::Elem, depth: usize) -> ConfigReport {
    let mut r = ReportBuilder::new(depth);
    let mul = |xs: &[&M::Elem]| m.product(xs.iter().copied());
    let gp = powers(m, g, depth);
    let hp = powers(m, h, depth);
    // geh[m] = gᵐ e hᵐ and heg[m] = hᵐ e gᵐ.
    let geh: Vec<M::Elem> = (0..=depth).map(|i| mul(&[&gp[i], e, &hp[i]])).collect();
    let heg: Vec<M::Elem> = (0..=depth).map(|i| mul(&[&hp[i], e, &gp[i]])).collect();

    r.require("0", mul(&[e, e]) == *e, || json!("e·e ≠ e"));
    r.require("0", mul(&[g, h]) == mul(&[h, g]), || json!("g·h ≠ h·g"));
    r.require("0", mul(&[g, h, g]) == *g, || json!("g·h·g ≠ g"));
    r.require("0", mul(&[h, g, h]) == *h, || json!("h·g·h ≠ h"));
    r.require("1", mul(&[h, g, e]) == *e, || json!("h·g·e ≠ e"));
    r.require("1", mul(&[e, h, g]) == *e, || json!("e·h·g ≠ e"));
    for n in 1..=depth {
        r.require("2", mul(&[e, &geh[n]]) == mul(&[&geh[n], e]), || json!({"n": n, "form": "e gⁿ e hⁿ"}));
        r.require("2", mul(&[e, &heg[n]]) == mul(&[&heg[n], e]), || json!({"n": n, "form": "e hⁿ e gⁿ"}));
    }
    for i in 1..=depth {
        for n in 1..=depth {
            let both = mul(&[&geh[i], &heg[n]]);
            r.require("3i", geh[i] != both, || json!({"m": i, "n": n, "side": "left"}));
            r.require("3i", both != heg[n], || json!({"m": i, "n": n, "side": "right"}));
        }
    }
    for i in 0..=depth {
        for n in 0..=depth {
            if i != n {
                r.require("3ii", geh[i] != mul(&[&geh[i], &geh[n]]), || json!({"m": i, "n": n, "form": "g e h"}));
                r.require("3ii", heg[i] != mul(&[&heg[i], &heg[n]]), || json!({"m": i, "n": n, "form": "h e g"}));
            }
        }
    }
    for n in 1..=depth {
        let egeh = mul(&[e, &geh[n]]);
        for k in 1..=n {
            if k < n {
                r.require("4i", egeh != mul(&[&egeh, &geh[k]]), || json!({"n": n, "k": k}));
            }
            r.require("4ii", egeh != mul(&[&egeh, &heg[k]]), || json!({"n": n, "k": k}));
        }
    }
    r.finish()
}

/// Non-collapse of the sets `{xᵐ, …}` in the quotient Q_n(G), for indices up
/// to `depth`.
pub fn check_ghe_quotient_conditions<B: Group>(q: &Qn<B>, x: &B::Elem, depth: usize) -> ConfigReport {
    let mut r = ReportBuilder::new(depth);
    let base = &q.base;
    let xinv = base.inverse(x);
    let pow = |k: i64| if k >= 0 { base.power(x, k as usize) } else { base.power(&xinv, k.unsigned_abs() as usize) };
    let elem = |ks: &[i64]| -> QnElement<B::Elem> {
        q.project(&PSetElement::new(ks.iter().map(|&k| pow(k)), base.identity()))
    };
    let set_json = |p: &QnElement<B::Elem>| match &p.set {
        QSet::Finite(s) => Value::Array(s.iter().map(|e| base.elem_to_json(e)).collect()),
        QSet::Top => json!("top"),
    };
    let distinct = |r: &mut ReportBuilder, cond: &str, a: &[i64], b: &[i64]| {
        let (p, s) = (elem(a), elem(b));
        r.require(cond, p != s, || json!({"left": a, "right": b, "image": set_json(&p)}));
    };
    let d = depth as i64;
    for i in -d..=d {
        for j in -d..=d {
            if i != j {
                distinct(&mut r, "1", &[i], &[j]);
            }
        }
    }
    for i in 1..=d {
        for n in 1..=d {
            distinct(&mut r, "2", &[i, -n], &[i]);
            distinct(&mut r, "2", &[i, -n], &[-n]);
        }
    }
    for i in 0..=d {
        for n in 0..=d {
            if i != n {
                distinct(&mut r, "3", &[i, n], &[i]);
                distinct(&mut r, "3", &[-i, -n], &[-i]);
            }
        }
    }
    for n in 1..=d {
        for k in 1..=n {
            if k < n {
                distinct(&mut r, "4", &[0, n], &[k]);
                distinct(&mut r, "4", &[0, n], &[0, k, n]);
            }
            distinct(&mut r, "5", &[0, n], &[-k]);
            distinct(&mut r, "5", &[0, n], &[-k, 0, n]);
        }
    }
    r.finish()
}

/// The first `count` odd triangular numbers: 1, 3, 15, 21, 45, 55, …
pub fn odd_triangular_numbers(count: usize) -> Vec<u64> {
    (1u64..).map(|k| k * (k + 1) / 2).filter(|t| t % 2 == 1).take(count).collect()
}

/// The triangular-number configuration in S(M): `a = (T, x²)` with T the odd
/// triangular powers of `x`, `b = ({1}, x)`, and witnesses
/// `u_i = ({x^(t_{2i+1} − 2i − 1)}, 1)`, `v_i = (∅, 1)`, checked on the right.
///
/// T is infinite; only powers up to `2·depth + 1 + t_{2·depth+2}` can meet the
/// sets compared here, so T is cut off there. Powers of `x` are assumed to
/// form a strictly descending chain in the R-order; this is not verified.
pub fn check_triangle<B: BaseMonoid>(sdp: &Sdp<B>, x: &B::Elem, depth: usize) -> ConfigReport {
    let t = odd_triangular_numbers(2 * depth + 2);
    let window = 2 * depth as u64 + 1 + t[2 * depth + 1];
    let xp = |k: u64| sdp.base.power(x, k as usize);
    let one = sdp.base.identity();
    let a = PSetElement::new(t.iter().filter(|&&k| k <= window).map(|&k| xp(k)), xp(2));
    let b = PSetElement::new([one.clone()], x.clone());
    let witnesses: Vec<_> = (1..=depth)
        .map(|i| {
            let k = t[2 * i] - 2 * i as u64 - 1;
            (PSetElement::new([xp(k)], one.clone()), PSetElement::new([], one.clone()))
        })
        .collect();
    let mut samples = vec![sdp.identity(), b.clone()];
    samples.extend(witnesses.iter().map(|(u, _)| u.clone()));
    samples.extend((0..3).map(|k| PSetElement::new([xp(k)], xp(1))));
    let mut report = check_lemma_m_n(sdp, &a, &b, &witnesses, depth, &samples, Side::Right);
    report.notes.push(format!("triangular set cut off above exponent {window}"));
    report.notes.push("powers of x assumed strictly descending in the R-order".into());
    report
}
