//! `check NAME`: runs one checker and returns its report as JSON.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use ehrmon_core::coherence::flad::{
    check_left_intersection, check_right_annihilator, check_right_intersection, generating_depth,
    left_ideal_intersection_flad, minimal_generators, right_annihilator_flad, LeftIntersection,
};
use ehrmon_core::coherence::instances::{
    bgr_integers, free_ehresmann, margolis_meakin, sdp_single_generator, sdp_two_generators, ForbiddenInstance,
};
use ehrmon_core::coherence::{
    check_bgr_config, check_forbidden_config, check_ghe_quotient_conditions, check_lemma_m_n, check_triangle,
    ConfigReport, EhresmannContext, Side,
};
use ehrmon_core::expansions::{check_mm_fi_iso, Qn};
use ehrmon_core::psdp::{FreeMonoid, Integers};
use ehrmon_core::theta::{check_theta_laws, cx_words};
use ehrmon_core::{Alphabet, BaseMonoid, Sdp, Sym, XTree};

use crate::model::{eval, ModelSpec, TermModel, TreeModel};
use crate::term::parse;
use crate::with_model;

pub const CHECKS: [&str; 10] = [
    "forbidden-config",
    "bgr",
    "ghe",
    "triangle",
    "lemma-m-n",
    "annihilator",
    "left-intersect",
    "right-intersect",
    "mm-fi-iso",
    "theta-morphism",
];

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Example {
    /// S(F_{g,h}) with a = ({1,g},g), b = ({1,h},h).
    Fi,
    /// S(F_x) with a = ({1,x²},x²), b = ({x},1).
    Freemonoid,
    /// M(F_{x,y}) with a = (P_x,x), b = (P_y,y).
    Mm,
    /// FAd({a,b}) with e_i = (baⁱ)⁺.
    Fad,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum)]
pub enum SideArg {
    #[default]
    Left,
    Right,
}

#[derive(Clone, Debug, Default, Args)]
pub struct CheckArgs {
    /// Exponent or size bound of the checker (per-check default).
    #[arg(long)]
    pub depth: Option<usize>,
    /// Edge bound for brute-force oracles (per-check default).
    #[arg(long)]
    pub bound: Option<usize>,
    /// Built-in forbidden configuration.
    #[arg(long, value_enum)]
    pub example: Option<Example>,
    /// Model in which the term parameters are evaluated.
    #[arg(long)]
    pub model: Option<ModelSpec>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    /// Projection e_i; repeat for i = 1, 2, ...
    #[arg(long)]
    pub e: Vec<String>,
    /// Sample element for sampled conditions; repeatable.
    #[arg(long)]
    pub sample: Vec<String>,
    /// Witness pair `u,v`; repeatable.
    #[arg(long)]
    pub witness: Vec<String>,
    #[arg(long, value_enum, default_value = "left")]
    pub side: SideArg,
    /// First tree, in FLAd over the standard letters.
    #[arg(long)]
    pub s: Option<String>,
    /// Second tree, in FLAd over the standard letters.
    #[arg(long)]
    pub t: Option<String>,
    /// Alphabet size for enumerations.
    #[arg(long, default_value_t = 2)]
    pub letters: usize,
}

fn required<'a>(v: &'a Option<String>, flag: &str, check: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| anyhow!("check {check} needs --{flag}"))
}

fn eval_in<M: TermModel>(m: &mut M, text: &str) -> Result<<M::Ctx as BaseMonoid>::Elem> {
    let term = parse(text).with_context(|| format!("in term `{text}`"))?;
    eval(m, &term).with_context(|| format!("in term `{text}`"))
}

/// Runs check `name` with the budget for enumerations, returning the
/// report and any extra fields to merge into the output.
pub fn run_check(name: &str, args: &CheckArgs, budget: usize) -> Result<(ConfigReport, Value)> {
    match name {
        "forbidden-config" => forbidden_config(args),
        "bgr" => bgr(args),
        "ghe" => {
            let n = match args.model.unwrap_or(ModelSpec::Qn(3)) {
                ModelSpec::Qn(n) => n,
                other => bail!("check ghe runs in qn:<n>, not {other}"),
            };
            let report = check_ghe_quotient_conditions(&Qn::new(Integers, n), &1, args.depth.unwrap_or(4));
            Ok((report, json!({"model": format!("qn:{n}")})))
        }
        "triangle" => {
            let sdp = Sdp::new(FreeMonoid { alphabet: Alphabet::standard(1) });
            let x = ehrmon_core::Word(vec![Sym(0)]);
            Ok((check_triangle(&sdp, &x, args.depth.unwrap_or(3)), Value::Null))
        }
        "lemma-m-n" => lemma_m_n(args),
        "annihilator" | "left-intersect" | "right-intersect" => tree_check(name, args, budget),
        "mm-fi-iso" => Ok((check_mm_fi_iso(args.letters, args.bound.unwrap_or(6)), Value::Null)),
        "theta-morphism" => {
            let universe = cx_words(args.letters, args.depth.unwrap_or(3), 1, args.bound.unwrap_or(2), budget)?;
            let report = check_theta_laws(&universe, args.letters);
            Ok((report, json!({"universe": universe.len()})))
        }
        _ => bail!("unknown check `{name}` (expected one of {})", CHECKS.join(", ")),
    }
}

fn instance_report<C: EhresmannContext>(inst: ForbiddenInstance<C>, depth: usize) -> (ConfigReport, Value) {
    let stars: Vec<Value> = (0..=depth).map(|i| inst.ctx.elem_to_json(&inst.ctx.star(&inst.ba(i)))).collect();
    (inst.check(depth), json!({"stars": stars}))
}

fn forbidden_config(args: &CheckArgs) -> Result<(ConfigReport, Value)> {
    let depth = args.depth.unwrap_or(5);
    if let Some(example) = args.example {
        return Ok(match example {
            Example::Fi => instance_report(sdp_two_generators(depth), depth),
            Example::Freemonoid => instance_report(sdp_single_generator(depth), depth),
            Example::Mm => instance_report(margolis_meakin(depth), depth),
            Example::Fad => instance_report(free_ehresmann(depth), depth),
        });
    }
    let spec = args.model.unwrap_or(ModelSpec::Fad);
    let (a, b) = (required(&args.a, "a", "forbidden-config")?, required(&args.b, "b", "forbidden-config")?);
    with_model!(spec, m => {
        let a = eval_in(&mut m, a)?;
        let b = eval_in(&mut m, b)?;
        let e = args.e.iter().map(|t| eval_in(&mut m, t)).collect::<Result<Vec<_>>>()?;
        let samples = args.sample.iter().map(|t| eval_in(&mut m, t)).collect::<Result<Vec<_>>>()?;
        Ok((check_forbidden_config(m.ctx(), &a, &b, &e, depth, &samples), json!({"model": spec.to_string()})))
    })
}

fn bgr(args: &CheckArgs) -> Result<(ConfigReport, Value)> {
    let depth = args.depth.unwrap_or(5);
    let (s, [g, h, e]) = bgr_integers();
    let spec = args.model.unwrap_or(ModelSpec::Sdp(crate::model::GroupBase::Integers));
    let report = match spec {
        ModelSpec::Sdp(crate::model::GroupBase::Integers) => check_bgr_config(&s, &g, &h, &e, depth),
        ModelSpec::Qn(n) => {
            let q = Qn::new(Integers, n);
            check_bgr_config(&q, &q.project(&g), &q.project(&h), &q.project(&e), depth)
        }
        other => bail!("check bgr runs in sdp:Z or qn:<n>, not {other}"),
    };
    Ok((report, json!({"model": spec.to_string()})))
}

fn lemma_m_n(args: &CheckArgs) -> Result<(ConfigReport, Value)> {
    let depth = args.depth.unwrap_or(3);
    let spec = args.model.unwrap_or(ModelSpec::Fad);
    let (a, b) = (required(&args.a, "a", "lemma-m-n")?, required(&args.b, "b", "lemma-m-n")?);
    let side = match args.side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    with_model!(spec, m => {
        let a = eval_in(&mut m, a)?;
        let b = eval_in(&mut m, b)?;
        let mut witnesses = Vec::new();
        for pair in &args.witness {
            let (u, v) = pair.split_once(',').ok_or_else(|| anyhow!("witness `{pair}` is not of the form u,v"))?;
            witnesses.push((eval_in(&mut m, u)?, eval_in(&mut m, v)?));
        }
        let samples = args.sample.iter().map(|t| eval_in(&mut m, t)).collect::<Result<Vec<_>>>()?;
        let report = check_lemma_m_n(m.ctx(), &a, &b, &witnesses, depth, &samples, side);
        Ok((report, json!({"model": spec.to_string()})))
    })
}

fn tree_check(name: &str, args: &CheckArgs, budget: usize) -> Result<(ConfigReport, Value)> {
    let mut m = TreeModel::new(true);
    m.ctx.alphabet = Alphabet::standard(args.letters);
    let t = eval_in(&mut m, required(&args.t, "t", name)?)?;
    let s = match name {
        "annihilator" => None,
        _ => Some(eval_in(&mut m, required(&args.s, "s", name)?)?),
    };
    let labels: Vec<Sym> = m.ctx.alphabet.syms().collect();
    let show = |x: &XTree| json!(m.text(x));
    match (name, s) {
        ("annihilator", _) => {
            let bound = args.bound.unwrap_or(3);
            let report = check_right_annihilator(&t, &labels, bound, budget)?;
            let gens: Vec<Value> = right_annihilator_flad(&t).iter().map(|(u, f)| json!([show(u), show(f)])).collect();
            Ok((report, json!({"generators": gens})))
        }
        ("left-intersect", Some(s)) => {
            let bound = args.bound.unwrap_or(4);
            let report = check_left_intersection(&s, &t, &labels, bound, budget)?;
            let result = match left_ideal_intersection_flad(&s, &t) {
                LeftIntersection::Empty(reason) => json!({"empty": format!("{reason:?}")}),
                LeftIntersection::Principal { generator, left_s, left_t } => {
                    json!({"generator": show(&generator), "left_s": show(&left_s), "left_t": show(&left_t)})
                }
            };
            Ok((report, json!({"intersection": result})))
        }
        (_, Some(s)) => {
            let bound = args.bound.unwrap_or(4);
            let depth = args.depth.unwrap_or_else(|| generating_depth(&s, &t));
            let (z, report) = check_right_intersection(&s, &t, depth, &labels, bound, budget)?;
            let gens: Vec<Value> = minimal_generators(&z).iter().map(show).collect();
            Ok((report, json!({"generating_depth": depth, "generators": gens})))
        }
        _ => unreachable!("tree checks are dispatched by name"),
    }
}
