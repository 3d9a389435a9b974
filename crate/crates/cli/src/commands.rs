//! Single-shot commands.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semistar::classgroup::{class_of, cl_transport_check, cl_v_descriptor, order_class_survey, ClassGroupDescriptor};
use semistar::content::{content, content_inclusion_holds, dedekind_mertens_check, gauss_check, pstarmd_check, FieldPoly};
use semistar::sample::{fg_ideal, val_ideal, SampleBounds};
use semistar::{Domain, Error, Ideal, StarOp, ValIdeal, ValuationDomain};
use serde_json::{json, Value};

use crate::config::{ideal_lit, op_lit, Bounds, Case, Command, IdealLit, JobConfig, OpLit};
use crate::suites::{run_suite, Suite};
use crate::error::ConfigError;
use crate::report::{Report, Witness};

pub const DEFAULT_NORM: u64 = 25;
const CLASS_ORDER_BOUND: u64 = 10_000;

pub fn required<'a>(v: &'a Option<String>, field: &str) -> Result<&'a str, ConfigError> {
    v.as_deref().ok_or_else(|| ConfigError::Missing(format!("{field:?} is required for this command")))
}

pub fn seed_for(cfg: &JobConfig, samples: usize) -> Result<u64, ConfigError> {
    match cfg.seed {
        Some(s) => Ok(s),
        None if samples == 0 => Ok(0),
        None => Err(ConfigError::Missing("\"seed\" is required when bounds.samples > 0".into())),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sample_bounds(b: &Bounds) -> SampleBounds {
    let d = SampleBounds::default();
    SampleBounds {
        level: b.grid_level.unwrap_or(d.level),
        value_box: b.window.map(|w| (w / 3).max(1)).unwrap_or(d.value_box),
        lattice_entries: b.entries.unwrap_or(d.lattice_entries),
        max_degree: b.degree.unwrap_or(d.max_degree),
        height: b.height.unwrap_or(d.height),
    }
}

/// Skeleton of a reproducing config: same backend and command, nothing
/// random.
pub fn minimal(cfg: &JobConfig) -> JobConfig {
    JobConfig::new(cfg.backend.clone(), cfg.command)
}

/// Stores `op` in `target` and returns the name to reference it by.
pub fn op_ref(target: &mut JobConfig, dom: &Domain, op: &StarOp) -> String {
    match op_lit(op, dom, &mut target.ideals) {
        OpLit::Builtin(s) => s,
        lit => {
            target.ops.insert("star".into(), lit);
            "star".into()
        }
    }
}

/// Keeps the smallest failing item; ties go to the earliest.
pub fn smallest<T>(items: Vec<(T, String)>) -> Option<T> {
    items.into_iter().enumerate().min_by_key(|(n, (_, key))| (key.len(), *n)).map(|(_, (t, _))| t)
}

fn poly_pair(cfg: &JobConfig, dom: &Domain) -> Result<(FieldPoly, FieldPoly), ConfigError> {
    let f = cfg.poly_named(dom, required(&cfg.f, "f")?)?;
    let g = cfg.poly_named(dom, required(&cfg.g, "g")?)?;
    Ok((f, g))
}

fn poly_repro(cfg: &JobConfig, f: &FieldPoly, g: &FieldPoly) -> JobConfig {
    let mut m = minimal(cfg);
    m.polys.insert("f".into(), f.to_string());
    m.polys.insert("g".into(), g.to_string());
    m.f = Some("f".into());
    m.g = Some("g".into());
    m
}

fn lit_json(i: &Ideal) -> Value {
    serde_json::to_value(ideal_lit(i)).expect("literals serialize")
}

pub fn run_command(cfg: &JobConfig, dom: &Domain) -> Result<Report, ConfigError> {
    let mut r = Report::new(cfg.command.name(), dom.to_string(), cfg.seed);
    match cfg.command {
        Command::Closure => closure(cfg, dom, &mut r)?,
        Command::Invert => invert(cfg, dom, &mut r)?,
        Command::Gauss => gauss(cfg, dom, &mut r)?,
        Command::Mertens => mertens(cfg, dom, &mut r)?,
        Command::Pstarmd => pstarmd(cfg, dom, &mut r)?,
        Command::Classgroup => classgroup(cfg, dom, &mut r)?,
        Command::Transport => transport(cfg, dom, &mut r)?,
        Command::Survey => survey(cfg, dom, &mut r)?,
        Command::Propsuite => crate::suites::propsuite(cfg, dom, &mut r)?,
    }
    Ok(r)
}

fn closure(cfg: &JobConfig, dom: &Domain, r: &mut Report) -> Result<(), ConfigError> {
    let i = cfg.ideal_named(dom, required(&cfg.ideal, "ideal")?)?;
    let op = cfg.op_named(dom, required(&cfg.op, "op")?)?;
    let c = dom.close_report(&op, &i)?;
    r.input("ideal", c.input.to_string());
    r.input("op", op.to_string());
    r.result("closure", c.output.to_string());
    r.result("closure_literal", lit_json(&c.output));
    r.result("fixed", c.fixed);
    r.result("semistar_only", dom.is_semistar_only(&op)?);
    r.result("finite_type_of", dom.finite_type_of(&op).to_string());
    r.result("stable", dom.is_stable(&op));
    Ok(())
}

fn invert(cfg: &JobConfig, dom: &Domain, r: &mut Report) -> Result<(), ConfigError> {
    let i = dom.adopt(&cfg.ideal_named(dom, required(&cfg.ideal, "ideal")?)?)?;
    let op = cfg.op_named(dom, cfg.op.as_deref().unwrap_or("v"))?;
    let inv = dom.colon(&dom.unit(), &i)?;
    r.input("ideal", i.to_string());
    r.input("op", op.to_string());
    r.result("inverse", inv.to_string());
    r.result("inverse_literal", lit_json(&inv));
    r.result("principal", dom.is_principal(&i)?);
    r.result("invertible", dom.is_invertible(&i)?);
    r.result("v_invertible", dom.is_v_invertible(&i)?);
    r.result("star_invertible", dom.is_star_invertible(&op, &i)?);
    r.result("quasi_star_invertible", dom.is_quasi_star_invertible(&op, &i)?);
    Ok(())
}

fn gauss(cfg: &JobConfig, dom: &Domain, r: &mut Report) -> Result<(), ConfigError> {
    let (f, g) = poly_pair(cfg, dom)?;
    let op = cfg.op.as_deref().map(|o| cfg.op_named(dom, o)).transpose()?;
    let rep = gauss_check(dom, &f, &g, op.as_ref())?;
    let label = op.as_ref().map_or("d".to_string(), ToString::to_string);
    r.input("f", f.to_string());
    r.input("g", g.to_string());
    r.input("op", label.clone());
    r.result("content_f", content(dom, &f)?.to_string());
    r.result("content_g", content(dom, &g)?.to_string());
    r.result("content_fg", content(dom, &f.mul(&g))?.to_string());
    r.result("lhs", rep.lhs.to_string());
    r.result("rhs", rep.rhs.to_string());
    r.result("equal", rep.equal);
    r.check("gauss", rep.equal, format!("c(fg)^{label} = {}, (c(f)c(g))^{label} = {}", rep.lhs, rep.rhs));
    if !rep.equal {
        let case = Case { f: Some(f.to_string()), g: Some(g.to_string()), ..Case::default() };
        r.witnesses.push(Witness { check: "gauss".into(), case, detail: format!("{} != {}", rep.lhs, rep.rhs) });
        let mut m = poly_repro(cfg, &f, &g);
        if let Some(op) = &op {
            m.op = Some(op_ref(&mut m, dom, op));
        }
        r.reproduce = Some(m);
    }
    Ok(())
}

fn mertens(cfg: &JobConfig, dom: &Domain, r: &mut Report) -> Result<(), ConfigError> {
    let (f, g) = poly_pair(cfg, dom)?;
    let rep = dedekind_mertens_check(dom, &f, &g)?;
    let inclusion = content_inclusion_holds(dom, &f, &g)?;
    r.input("f", f.to_string());
    r.input("g", g.to_string());
    r.result("m", rep.m);
    r.result("lhs", rep.lhs.to_string());
    r.result("rhs", rep.rhs.to_string());
    r.result("holds", rep.holds);
    r.check("dedekind-mertens", rep.holds, format!("c(f)^m c(fg) = {}, c(f)^(m+1) c(g) = {}", rep.lhs, rep.rhs));
    r.check("content-inclusion", inclusion, "");
    if !(rep.holds && inclusion) {
        let check = if rep.holds { "content-inclusion" } else { "dedekind-mertens" };
        let case = Case { f: Some(f.to_string()), g: Some(g.to_string()), ..Case::default() };
        r.witnesses.push(Witness { check: check.into(), case, detail: format!("{} vs {}", rep.lhs, rep.rhs) });
        r.reproduce = Some(poly_repro(cfg, &f, &g));
    }
    Ok(())
}

/// Named ideals from `list`, then `bounds.samples` seeded draws.
fn listed_and_sampled(cfg: &JobConfig, dom: &Domain, draw: &mut dyn FnMut(&mut ChaCha8Rng) -> Ideal) -> Result<Vec<Ideal>, ConfigError> {
    let mut out = cfg.list.iter().map(|n| cfg.ideal_named(dom, n)).collect::<Result<Vec<_>, _>>()?;
    let n = cfg.bounds.samples.unwrap_or(0);
    let mut g = rng(seed_for(cfg, n)?);
    out.extend((0..n).map(|_| draw(&mut g)));
    Ok(out)
}

fn vacuous(r: &mut Report, what: &str) {
    r.warnings.push(format!("no {what} were checked; the pass is vacuous"));
}

fn pstarmd(cfg: &JobConfig, dom: &Domain, r: &mut Report) -> Result<(), ConfigError> {
    let op = cfg.op_named(dom, required(&cfg.op, "op")?)?;
    let b = sample_bounds(&cfg.bounds);
    let samples = listed_and_sampled(cfg, dom, &mut |g| fg_ideal(g, dom, &b))?;
    let rep = pstarmd_check(dom, &op, &samples)?;
    r.input("op", op.to_string());
    r.input("samples", samples.len());
    r.result("finite_type_of", dom.finite_type_of(&op).to_string());
    r.result("checked", rep.checked);
    r.result("skipped", rep.skipped);
    r.result("failures", rep.witnesses.len());
    r.check("pstarmd", rep.all_invertible, format!("{} of {} finitely generated samples are not {}-invertible", rep.witnesses.len(), rep.checked, dom.finite_type_of(&op)));
    if rep.checked == 0 {
        vacuous(r, "finitely generated ideals");
    }
    let keyed = rep.witnesses.iter().map(|w| (w.clone(), serde_json::to_string(&ideal_lit(w)).unwrap())).collect();
    if let Some(w) = smallest(keyed) {
        let ft = dom.finite_type_of(&op);
        r.witnesses.push(Witness { check: "pstarmd".into(), case: Case { i: Some(ideal_lit(&w)), ..Case::default() }, detail: format!("{w} is not {ft}-invertible") });
        let mut m = minimal(cfg);
        m.ideals.insert("I".into(), ideal_lit(&w));
        m.list = vec!["I".into()];
        m.op = Some(op_ref(&mut m, dom, &op));
        r.reproduce = Some(m);
    }
    Ok(())
}

fn valuation(dom: &Domain, command: &str) -> Result<ValuationDomain, ConfigError> {
    match dom {
        Domain::Valuation(v) => Ok(v.clone()),
        Domain::Order(_) => Err(ConfigError::Semantic(format!("{command} needs a valuation backend"))),
    }
}

fn val(i: &Ideal) -> &ValIdeal {
    match i {
        Ideal::Val(x) => x,
        Ideal::Lat(_) => unreachable!("valuation backend"),
    }
}

/// Seeded v-invertible divisorial ideals, by rejection.
fn v_ideal_draw<'a>(v: &'a ValuationDomain, b: &'a SampleBounds) -> impl FnMut(&mut ChaCha8Rng) -> Ideal + 'a {
    move |g| loop {
        let i = val_ideal(g, v, b);
        if v.is_divisorial(&i).unwrap_or(false) && v.is_v_invertible(&i).unwrap_or(false) {
            return Ideal::Val(i);
        }
    }
}

fn classgroup(cfg: &JobConfig, dom: &Domain, r: &mut Report) -> Result<(), ConfigError> {
    let v = match dom {
        Domain::Order(_) => return survey(cfg, dom, r),
        Domain::Valuation(v) => v.clone(),
    };
    let d = cl_v_descriptor(&v);
    r.result("descriptor", d.to_string());
    let mut classes = Vec::new();
    for name in &cfg.list {
        let i = val(&cfg.ideal_named(dom, name)?).clone();
        let entry = match class_of(&v, &i) {
            Ok(c) => json!({
                "ideal": i.to_string(),
                "class": format!("{} mod {}", semistar::rational::format_rational(c.rep()), c.modulus()),
                "trivial": c.is_trivial(),
                "order": c.order(CLASS_ORDER_BOUND).map_or(Value::Null, Value::from),
            }),
            Err(Error::NotVInvertible(_)) => json!({ "ideal": i.to_string(), "class": Value::Null }),
            Err(e) => return Err(e.into()),
        };
        classes.push(entry);
    }
    r.result("classes", classes);

    if cfg.bounds.samples.unwrap_or(0) == 0 {
        return Ok(());
    }
    let suite = match d {
        ClassGroupDescriptor::Trivial(_) => Suite::TrivialClassGroup,
        ClassGroupDescriptor::RModG(_) => Suite::ClassMultiplicativity,
    };
    let mut sampled = cfg.clone();
    sampled.cases.clear();
    run_suite(&sampled, dom, suite, r)
}

fn transport(cfg: &JobConfig, dom: &Domain, r: &mut Report) -> Result<(), ConfigError> {
    let v = valuation(dom, "transport")?;
    let k = cfg.k.ok_or_else(|| ConfigError::Missing("\"k\" is required for transport".into()))?;
    let b = sample_bounds(&cfg.bounds);
    let samples: Vec<ValIdeal> = listed_and_sampled(cfg, dom, &mut v_ideal_draw(&v, &b))?.iter().map(|i| val(i).clone()).collect();
    for i in &samples {
        if !(v.is_divisorial(i)? && v.is_v_invertible(i)?) {
            return Err(ConfigError::Semantic(format!("{i} is not a v-invertible v-ideal")));
        }
    }
    if samples.is_empty() {
        vacuous(r, "ideals");
        r.check("transport", true, "");
        return Ok(());
    }
    let rep = cl_transport_check(&v, k, &samples)?;
    r.input("k", k);
    r.input("samples", samples.len());
    r.result("quotient", v.quotient_by_prime(v.prime(k)?)?.to_string());
    r.result("checked", rep.checked);
    r.result("pairs_checked", rep.pairs_checked);
    r.result("consistent", rep.consistent);
    r.result("failures", rep.failures.len());
    r.check("transport", rep.consistent, "");
    if !rep.consistent {
        // shrink to one ideal, then to a neighbouring pair
        let mut subset = samples.clone();
        'shrink: for size in [1, 2] {
            for w in 0..samples.len() {
                let cand: Vec<ValIdeal> = (0..size).map(|d| samples[(w + d) % samples.len()].clone()).collect();
                if !cl_transport_check(&v, k, &cand)?.consistent {
                    subset = cand;
                    break 'shrink;
                }
            }
        }
        let detail = cl_transport_check(&v, k, &subset)?.failures[0].clone();
        let lits: Vec<IdealLit> = subset.iter().map(|i| ideal_lit(&Ideal::Val(i.clone()))).collect();
        let case = Case { i: lits.first().cloned(), j: lits.get(1).cloned(), ..Case::default() };
        r.witnesses.push(Witness { check: "transport".into(), case: if lits.len() <= 2 { case } else { Case::default() }, detail });
        let mut m = minimal(cfg);
        m.k = Some(k);
        for (n, lit) in lits.into_iter().enumerate() {
            let name = format!("I{}", n + 1);
            m.ideals.insert(name.clone(), lit);
            m.list.push(name);
        }
        r.reproduce = Some(m);
    }
    Ok(())
}

fn survey(cfg: &JobConfig, dom: &Domain, r: &mut Report) -> Result<(), ConfigError> {
    let o = match dom {
        Domain::Order(o) => o,
        Domain::Valuation(_) => return Err(ConfigError::Semantic(format!("{} needs an order backend", cfg.command.name()))),
    };
    let bound = cfg.bounds.norm.unwrap_or(DEFAULT_NORM);
    let s = order_class_survey(o, bound)?;
    r.input("norm", bound);
    r.result("ideals_enumerated", s.ideals_enumerated);
    r.result("pic_classes", s.pic_classes.len());
    r.result("pic_representatives", s.pic_classes.iter().map(ToString::to_string).collect::<Vec<_>>());
    r.result("cl_v_classes", s.v_classes.len());
    r.result("cl_t_classes", s.t_classes.len());
    r.result("cl_t_equals_cl_v", s.cl_t_equals_cl_v);
    r.result("every_t_invertible_invertible", s.every_t_invertible_invertible);
    r.result("pic_equals_cl_t", s.cl_t_equals_cl_v && s.every_t_invertible_invertible && s.pic_classes.len() == s.t_classes.len());
    r.result("not_v_invertible", s.not_v_invertible.iter().map(ToString::to_string).collect::<Vec<_>>());
    r.result("exact", s.exact);
    r.check("cl_t_equals_cl_v", s.cl_t_equals_cl_v, "");
    if !s.exact {
        r.warnings.push("principality in real orders is decided by a bounded search".into());
    }
    Ok(())
}
