//! Seeded property suites.
//!
//! A suite draws `bounds.samples` cases from the seed, appends the explicit
//! `cases` of the config, and checks each one. The smallest failing case
//! becomes the witness, and the reproducing config replays exactly that case.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use semistar::classgroup::{class_of, cl_transport_check, cl_v_descriptor, ClassGroupDescriptor};
use semistar::content::{content, content_inclusion_holds, dedekind_mertens_check, gauss_check, Coeff, FieldPoly, MonoSum};
use semistar::groups::RankOne;
use semistar::sample::{cancelling_pair, elem, fg_ideal, hull_point, ideal, lattice_ideal, poly, val_ideal, SampleBounds};
use semistar::star::{axioms_hold, constructible_ops, monotone_on, product_formula_holds};
use semistar::{Domain, Elem, HullPoint, Ideal, LatticeIdeal, QuadraticOrder, Rational, StarOp, ValIdeal, ValuationDomain};
use semistar_oracle::grid::{Factor, GridOracle};
use semistar_oracle::span::{self, Hnf};

use crate::commands::{minimal, op_ref, rng, sample_bounds, seed_for, smallest};
use crate::config::{elem_lit, ideal_lit, op_lit, parse_elem, parse_ideal, Case, JobConfig};
use crate::error::ConfigError;
use crate::report::{OracleSummary, Report, Witness};

pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_WINDOW: i64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    CutOracle,
    LatticeOracle,
    DedekindMertens,
    Gauss,
    Homogeneity,
    StarAxioms,
    Pstarmd,
    ValuationLemmas,
    QuotientLemmas,
    TrivialClassGroup,
    ClassMultiplicativity,
    Transport,
}

pub const SUITES: [(&str, Suite); 12] = [
    ("cut-oracle", Suite::CutOracle),
    ("lattice-oracle", Suite::LatticeOracle),
    ("dedekind-mertens", Suite::DedekindMertens),
    ("gauss", Suite::Gauss),
    ("homogeneity", Suite::Homogeneity),
    ("star-axioms", Suite::StarAxioms),
    ("pstarmd", Suite::Pstarmd),
    ("valuation-lemmas", Suite::ValuationLemmas),
    ("quotient-lemmas", Suite::QuotientLemmas),
    ("trivial-class-group", Suite::TrivialClassGroup),
    ("class-multiplicativity", Suite::ClassMultiplicativity),
    ("transport", Suite::Transport),
];

impl Suite {
    pub fn parse(name: &str) -> Result<Suite, ConfigError> {
        SUITES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s).ok_or_else(|| {
            let known: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
            ConfigError::Missing(format!("unknown suite {name:?}; known suites: {}", known.join(", ")))
        })
    }

    pub fn name(self) -> &'static str {
        SUITES.iter().find(|(_, s)| *s == self).map(|(n, _)| *n).expect("listed")
    }
}

type Outcome = Vec<(&'static str, Option<String>)>;

struct Ctx<'a> {
    cfg: &'a JobConfig,
    dom: &'a Domain,
    op: Option<StarOp>,
    b: SampleBounds,
    grid: Option<GridOracle>,
}

fn valuation(dom: &Domain, suite: Suite) -> Result<&ValuationDomain, ConfigError> {
    match dom {
        Domain::Valuation(v) => Ok(v),
        Domain::Order(_) => Err(ConfigError::Semantic(format!("suite {} needs a valuation backend", suite.name()))),
    }
}

fn order(dom: &Domain, suite: Suite) -> Result<&QuadraticOrder, ConfigError> {
    match dom {
        Domain::Order(o) => Ok(o),
        Domain::Valuation(_) => Err(ConfigError::Semantic(format!("suite {} needs an order backend", suite.name()))),
    }
}

fn grid_factors(v: &ValuationDomain) -> Result<Vec<Factor>, ConfigError> {
    v.group()
        .factors()
        .into_iter()
        .map(|f| match f {
            RankOne::Integers => Ok(Factor::Integers),
            RankOne::Rationals => Ok(Factor::Rationals),
            RankOne::Localized(2) => Ok(Factor::Dyadic),
            RankOne::Localized(p) => Err(ConfigError::Semantic(format!("the grid oracle covers Z, Q and Z[1/2], not Z[1/{p}]"))),
        })
        .collect()
}

fn need<'c, T>(x: &'c Option<T>, field: &str, suite: Suite) -> Result<&'c T, ConfigError> {
    x.as_ref().ok_or_else(|| ConfigError::Missing(format!("cases of suite {} need field {field:?}", suite.name())))
}

fn case_ideal(ctx: &Ctx, lit: &Option<crate::config::IdealLit>, field: &str, suite: Suite) -> Result<Ideal, ConfigError> {
    parse_ideal(ctx.dom, need(lit, field, suite)?).map_err(|e| e.within(&format!("case.{field}")))
}

fn case_poly(ctx: &Ctx, s: &Option<String>, field: &str, suite: Suite) -> Result<FieldPoly, ConfigError> {
    FieldPoly::parse(ctx.dom, need(s, field, suite)?).map_err(|e| ConfigError::from(e).within(&format!("case.{field}")))
}

fn val(i: &Ideal) -> &ValIdeal {
    match i {
        Ideal::Val(x) => x,
        Ideal::Lat(_) => unreachable!("checked valuation backend"),
    }
}

fn lat(i: &Ideal) -> &LatticeIdeal {
    match i {
        Ideal::Lat(x) => x,
        Ideal::Val(_) => unreachable!("checked order backend"),
    }
}

fn ideal_case(i: &Ideal, j: Option<&Ideal>) -> Case {
    Case { i: Some(ideal_lit(i)), j: j.map(ideal_lit), ..Case::default() }
}

fn poly_case(f: &FieldPoly, g: &FieldPoly) -> Case {
    Case { f: Some(f.to_string()), g: Some(g.to_string()), ..Case::default() }
}

fn fail_if(name: &'static str, ok: bool, detail: impl FnOnce() -> String) -> (&'static str, Option<String>) {
    (name, if ok { None } else { Some(detail()) })
}

/// `3·2^k` multiples inside `[−B/3, B/3]` keep every sum, difference and
/// closure point on the oracle's exact grid.
fn in_oracle_range(ctx: &Ctx, i: &ValIdeal) -> bool {
    let k = ctx.b.level;
    let den = BigInt::from(3i64 << k);
    let half = Rational::from_integer(BigInt::from(ctx.b.value_box));
    i.cut().point().coords().iter().all(|c| Integer::is_multiple_of(&den, c.denom()) && c.abs() <= half)
}

fn v_ideal(r: &mut ChaCha8Rng, v: &ValuationDomain, b: &SampleBounds) -> ValIdeal {
    loop {
        let i = val_ideal(r, v, b);
        if v.is_divisorial(&i).unwrap_or(false) && v.is_v_invertible(&i).unwrap_or(false) {
            return i;
        }
    }
}

/// Ideals strictly between `P` and `V_P` for the prime with `k` trailing
/// factors.
fn band_ideal(r: &mut ChaCha8Rng, v: &ValuationDomain, k: usize, b: &SampleBounds) -> ValIdeal {
    let lead = v.rank() - k;
    let mut c = hull_point(r, v.group(), b).coords().to_vec();
    for x in c.iter_mut().take(lead) {
        *x = Rational::from_integer(0.into());
    }
    let depth = r.gen_range(lead + 1..=v.rank());
    v.ideal_with_depth(HullPoint::new(c), r.gen_bool(0.5), depth).expect("coordinates are finite")
}

fn quotient_k(ctx: &Ctx, v: &ValuationDomain, suite: Suite) -> Result<usize, ConfigError> {
    let k = ctx.cfg.k.ok_or_else(|| ConfigError::Missing(format!("suite {} needs \"k\"", suite.name())))?;
    if k == 0 || k >= v.rank() {
        return Err(ConfigError::Semantic(format!("k = {k} must lie in 1..{}", v.rank())));
    }
    Ok(k)
}

fn hnf(i: &LatticeIdeal) -> Hnf {
    let (d, a, b, c) = i.hnf();
    (d.clone(), a.clone(), b.clone(), c.clone())
}

fn scale_coeff(x: &Elem) -> Coeff {
    match x {
        Elem::Quad(q) => Coeff::Quad(q.clone()),
        Elem::Val(g) => Coeff::Mono(MonoSum::monomial(Rational::one(), g.as_hull().clone())),
    }
}

impl Suite {
    fn default_samples(self) -> usize {
        DEFAULT_SAMPLES
    }

    fn prepare(self, ctx: &mut Ctx) -> Result<(), ConfigError> {
        match self {
            Suite::CutOracle => {
                let v = valuation(ctx.dom, self)?;
                let window = ctx.cfg.bounds.window.unwrap_or(DEFAULT_WINDOW);
                ctx.b.value_box = (window / 3).max(1);
                ctx.grid = Some(GridOracle::new(&grid_factors(v)?, ctx.b.level, window));
            }
            Suite::LatticeOracle => {
                order(ctx.dom, self)?;
            }
            Suite::Pstarmd if ctx.op.is_none() => return Err(ConfigError::Missing("suite pstarmd needs \"op\"".into())),
            Suite::ValuationLemmas => {
                let v = valuation(ctx.dom, self)?;
                if v.rank() != 1 {
                    return Err(ConfigError::Semantic("suite valuation-lemmas needs a rank-one group".into()));
                }
            }
            Suite::QuotientLemmas | Suite::Transport => {
                let v = valuation(ctx.dom, self)?;
                quotient_k(ctx, v, self)?;
            }
            Suite::TrivialClassGroup => {
                let v = valuation(ctx.dom, self)?;
                if let ClassGroupDescriptor::RModG(g) = cl_v_descriptor(v) {
                    return Err(ConfigError::Semantic(format!("Cl^v is R/{g} here; use class-multiplicativity")));
                }
            }
            Suite::ClassMultiplicativity => {
                valuation(ctx.dom, self)?;
            }
            _ => {}
        }
        Ok(())
    }

    fn draw(self, ctx: &Ctx, r: &mut ChaCha8Rng, n: usize) -> Result<Vec<Case>, ConfigError> {
        let (dom, b) = (ctx.dom, &ctx.b);
        let mut out = Vec::new();
        match self {
            Suite::CutOracle => {
                let v = valuation(dom, self)?;
                // normalizing a cut can move its point one step out of the box
                let draw = |r: &mut ChaCha8Rng| loop {
                    let i = val_ideal(r, v, b);
                    if in_oracle_range(ctx, &i) {
                        return i;
                    }
                };
                for _ in 0..n {
                    let (i, j) = (draw(r), draw(r));
                    out.push(ideal_case(&Ideal::Val(i), Some(&Ideal::Val(j))));
                }
            }
            Suite::LatticeOracle => {
                let o = order(dom, self)?;
                for _ in 0..n {
                    let (i, j) = (lattice_ideal(r, o, b), lattice_ideal(r, o, b));
                    out.push(ideal_case(&Ideal::Lat(i), Some(&Ideal::Lat(j))));
                }
            }
            Suite::DedekindMertens | Suite::Gauss => {
                // part of the pairs cancel coefficients in the product
                let every = if self == Suite::Gauss { 2 } else { 5 };
                for m in 0..n {
                    let (f, g) = if m % every == 0 { cancelling_pair(r, dom, b) } else { (poly(r, dom, b), poly(r, dom, b)) };
                    out.push(poly_case(&f, &g));
                }
            }
            Suite::Homogeneity => {
                for _ in 0..n {
                    let f = poly(r, dom, b);
                    let x = elem(r, dom, b);
                    out.push(Case { f: Some(f.to_string()), x: Some(elem_lit(&x)), ..Case::default() });
                }
            }
            Suite::StarAxioms => {
                let ops = match &ctx.op {
                    Some(op) => vec![(op.clone(), false)],
                    None => constructible_ops(dom).into_iter().map(|op| (op, true)).collect(),
                };
                for (op, tag) in ops {
                    for _ in 0..n {
                        let (i, j, x) = (ideal(r, dom, b), ideal(r, dom, b), elem(r, dom, b));
                        let mut c = ideal_case(&i, Some(&j));
                        c.x = Some(elem_lit(&x));
                        if tag {
                            c.op = Some(op_lit(&op, dom, &mut Default::default()));
                        }
                        out.push(c);
                    }
                }
            }
            Suite::Pstarmd => {
                for _ in 0..n {
                    out.push(ideal_case(&fg_ideal(r, dom, b), None));
                }
            }
            Suite::ValuationLemmas => {
                let v = valuation(dom, self)?;
                for _ in 0..n {
                    let i = val_ideal(r, v, b);
                    // half the partners share the cut point
                    let j = if r.gen_bool(0.5) { v.ideal(i.cut().point().clone(), r.gen_bool(0.5))? } else { val_ideal(r, v, b) };
                    out.push(ideal_case(&Ideal::Val(i), Some(&Ideal::Val(j))));
                }
            }
            Suite::QuotientLemmas => {
                let v = valuation(dom, self)?;
                let k = quotient_k(ctx, v, self)?;
                for _ in 0..n {
                    out.push(ideal_case(&Ideal::Val(band_ideal(r, v, k, b)), None));
                }
            }
            Suite::TrivialClassGroup => {
                let v = valuation(dom, self)?;
                for _ in 0..n {
                    out.push(ideal_case(&Ideal::Val(val_ideal(r, v, b)), None));
                }
            }
            Suite::ClassMultiplicativity | Suite::Transport => {
                let v = valuation(dom, self)?;
                for _ in 0..n {
                    let (i, j) = (v_ideal(r, v, b), v_ideal(r, v, b));
                    out.push(ideal_case(&Ideal::Val(i), Some(&Ideal::Val(j))));
                }
            }
        }
        Ok(out)
    }

    fn check(self, ctx: &Ctx, case: &Case) -> Result<Outcome, ConfigError> {
        let dom = ctx.dom;
        Ok(match self {
            Suite::CutOracle => {
                let v = valuation(dom, self)?;
                let o = ctx.grid.as_ref().expect("prepared");
                let i = val(&case_ideal(ctx, &case.i, "i", self)?).clone();
                let j = val(&case_ideal(ctx, &case.j, "j", self)?).clone();
                for x in [&i, &j] {
                    if !in_oracle_range(ctx, x) {
                        return Err(ConfigError::Semantic(format!("{x} lies outside the exact range of the grid oracle")));
                    }
                }
                let pred = |x: &ValIdeal| {
                    let x = x.clone();
                    move |p: &[Rational]| x.admits(&HullPoint::new(p.to_vec()))
                };
                let compare = |name: &'static str, got: &ValIdeal, expect: &dyn Fn(&[Rational]) -> bool, what: String| {
                    let bad = o.disagreements(&pred(got), expect);
                    let at = bad.first().map(|p| HullPoint::new(p.clone()).to_string());
                    fail_if(name, bad.is_empty(), || format!("{what} = {got} disagrees with the grid at {}", at.unwrap_or_default()))
                };
                let prod = v.multiply(&i, &j)?;
                let col = v.colon(&i, &j)?;
                let cl = v.v_closure(&i)?;
                vec![
                    compare("multiply", &prod, &o.product(&pred(&i), Box::new(pred(&j))), format!("{i} * {j}")),
                    compare("colon", &col, &o.colon(Box::new(pred(&i)), &pred(&j)), format!("({i} : {j})")),
                    compare("v_closure", &cl, &o.v_closure(&pred(&i)), format!("v({i})")),
                ]
            }
            Suite::LatticeOracle => {
                let o = order(dom, self)?;
                let oracle = span::Order { disc: o.disc() };
                let i = lat(&case_ideal(ctx, &case.i, "i", self)?).clone();
                let j = lat(&case_ideal(ctx, &case.j, "j", self)?).clone();
                let unit = hnf(&LatticeIdeal::unit(o));
                let (hi, hj) = (hnf(&i), hnf(&j));
                let prod = i.multiply(&j)?;
                let col = i.colon(&j)?;
                let inv = i.invert();
                let cl = i.v_closure();
                vec![
                    fail_if("multiply", hnf(&prod) == oracle.product(&hi, &hj), || format!("{i} * {j} = {prod}")),
                    fail_if("colon", oracle.is_colon(&hi, &hj, &hnf(&col)), || format!("({i} : {j}) = {col}")),
                    fail_if("invert", oracle.is_colon(&unit, &hi, &hnf(&inv)), || format!("(O : {i}) = {inv}")),
                    fail_if("v_closure", oracle.is_colon(&unit, &hnf(&inv), &hnf(&cl)), || format!("v({i}) = {cl}")),
                ]
            }
            Suite::DedekindMertens => {
                let (f, g) = (case_poly(ctx, &case.f, "f", self)?, case_poly(ctx, &case.g, "g", self)?);
                let rep = dedekind_mertens_check(dom, &f, &g)?;
                let incl = content_inclusion_holds(dom, &f, &g)?;
                vec![
                    fail_if("dedekind-mertens", rep.holds, || format!("m = {}: {} vs {}", rep.m, rep.lhs, rep.rhs)),
                    fail_if("content-inclusion", incl, || format!("c(fg) = {} is not inside c(f)c(g)", content(dom, &f.mul(&g)).map(|c| c.to_string()).unwrap_or_default())),
                ]
            }
            Suite::Gauss => {
                let (f, g) = (case_poly(ctx, &case.f, "f", self)?, case_poly(ctx, &case.g, "g", self)?);
                let rep = gauss_check(dom, &f, &g, ctx.op.as_ref())?;
                vec![fail_if("gauss", rep.equal, || format!("{} != {}", rep.lhs, rep.rhs))]
            }
            Suite::Homogeneity => {
                let f = case_poly(ctx, &case.f, "f", self)?;
                let x = parse_elem(dom, need(&case.x, "x", self)?)?;
                let lhs = content(dom, &f.scale(&scale_coeff(&x))?)?;
                let rhs = dom.scale(&content(dom, &f)?, &x)?;
                vec![fail_if("homogeneity", lhs == rhs, || format!("c(x f) = {lhs}, x c(f) = {rhs}"))]
            }
            Suite::StarAxioms => {
                let op = match &case.op {
                    Some(lit) => {
                        let op = ctx.cfg.parse_op(dom, lit)?;
                        dom.validate(&op)?;
                        op
                    }
                    None => ctx.op.clone().ok_or_else(|| ConfigError::Missing("star-axioms cases need an op".into()))?,
                };
                let i = case_ideal(ctx, &case.i, "i", self)?;
                let j = case_ideal(ctx, &case.j, "j", self)?;
                let x = parse_elem(dom, need(&case.x, "x", self)?)?;
                let bigger = dom.sum(&i, &j)?;
                let smaller = dom.intersect(&i, &j)?;
                let mono = monotone_on(dom, &op, &i, &bigger)? && monotone_on(dom, &op, &smaller, &j)?;
                let mut out = vec![
                    fail_if("axioms", axioms_hold(dom, &op, &i, &x)?, || format!("{op} on {i} with {x}")),
                    fail_if("product-formula", product_formula_holds(dom, &op, &i, &j)?, || format!("{op} on {i}, {j}")),
                    fail_if("monotone", mono, || format!("{op} on {i}, {j}")),
                ];
                if dom.is_stable(&op) {
                    let lhs = dom.close(&op, &smaller)?;
                    let rhs = dom.intersect(&dom.close(&op, &i)?, &dom.close(&op, &j)?)?;
                    out.push(fail_if("stability", lhs == rhs, || format!("{op} on {i} and {j}: {lhs} vs {rhs}")));
                }
                out
            }
            Suite::Pstarmd => {
                let op = ctx.op.as_ref().expect("prepared");
                let i = dom.adopt(&case_ideal(ctx, &case.i, "i", self)?)?;
                if !dom.is_finitely_generated(&i)? {
                    return Err(ConfigError::Semantic(format!("{i} is not finitely generated")));
                }
                let ft = dom.finite_type_of(op);
                vec![fail_if("pstarmd", dom.is_star_invertible(&ft, &i)?, || format!("{i} is not {ft}-invertible"))]
            }
            Suite::ValuationLemmas => {
                let v = valuation(dom, self)?;
                let i = val(&case_ideal(ctx, &case.i, "i", self)?).clone();
                let j = val(&case_ideal(ctx, &case.j, "j", self)?).clone();
                let same_phi = v.phi(&i)? == v.phi(&j)?;
                let same_v = v.v_closure(&i)? == v.v_closure(&j)?;
                let mut out = vec![
                    fail_if("phi-determines-closure", same_phi == same_v, || format!("{i}, {j}: equal phi {same_phi}, equal closure {same_v}")),
                    fail_if("invertible-iff-principal", v.is_invertible(&i)? == v.is_principal(&i), || format!("{i}")),
                ];
                if v.is_divisorial(&i)? {
                    let phi = v.phi(&i)?;
                    let in_group = v.group().contains(&HullPoint::new(vec![phi.clone()]))?;
                    out.push(fail_if("principal-iff-phi-in-group", in_group == v.is_principal(&i), || format!("{i}: phi = {phi}")));
                    if v.is_divisorial(&j)? {
                        let prod = v.v_closure(&v.multiply(&i, &j)?)?;
                        let (a, b, c) = (v.phi(&prod)?, v.phi(&i)?, v.phi(&j)?);
                        out.push(fail_if("phi-additive", a == &b + &c, || format!("phi((IJ)^v) = {a}, phi(I) + phi(J) = {}", &b + &c)));
                    }
                }
                out
            }
            Suite::QuotientLemmas => {
                let v = valuation(dom, self)?;
                let k = quotient_k(ctx, v, self)?;
                let p = v.prime(k)?;
                let below = v.quotient_by_prime(p)?;
                let i = val(&case_ideal(ctx, &case.i, "i", self)?).clone();
                let pushed = v.push_ideal(&i, p)?;
                let (a, b) = (v.push_ideal(&v.v_closure(&i)?, p)?, below.v_closure(&pushed)?);
                let (c, d) = (v.is_v_invertible(&i)?, below.is_v_invertible(&pushed)?);
                vec![
                    fail_if("v-quot", a == b, || format!("{i}: (I^v)/P = {a}, (I/P)^v = {b}")),
                    fail_if("v-inv-quot", c == d, || format!("{i}: v-invertible {c}, image v-invertible {d}")),
                ]
            }
            Suite::TrivialClassGroup => {
                let v = valuation(dom, self)?;
                let i = val(&case_ideal(ctx, &case.i, "i", self)?).clone();
                let div = v.is_divisorial(&i)?;
                let mut out = vec![fail_if("divisorial", div, || format!("{i} is not divisorial"))];
                if div && v.is_v_invertible(&i)? {
                    let c = class_of(v, &i)?;
                    out.push(fail_if("trivial-class", c.is_trivial(), || format!("{i} has class {} mod {}", c.rep(), c.modulus())));
                }
                out
            }
            Suite::ClassMultiplicativity => {
                let v = valuation(dom, self)?;
                let i = val(&case_ideal(ctx, &case.i, "i", self)?).clone();
                let j = val(&case_ideal(ctx, &case.j, "j", self)?).clone();
                let prod = v.v_closure(&v.multiply(&i, &j)?)?;
                let lhs = class_of(v, &prod)?;
                let rhs = class_of(v, &i)?.mul(&class_of(v, &j)?)?;
                vec![fail_if("class-multiplicativity", lhs == rhs, || format!("[(IJ)^v] = {}, [I][J] = {}", lhs.rep(), rhs.rep()))]
            }
            Suite::Transport => {
                let v = valuation(dom, self)?;
                let k = quotient_k(ctx, v, self)?;
                let i = val(&case_ideal(ctx, &case.i, "i", self)?).clone();
                let j = val(&case_ideal(ctx, &case.j, "j", self)?).clone();
                let rep = cl_transport_check(v, k, &[i, j])?;
                vec![fail_if("transport", rep.consistent, || rep.failures[0].clone())]
            }
        })
    }
}

/// Config used by `--suite NAME` when no config file is given.
pub fn default_config(name: &str) -> Result<JobConfig, ConfigError> {
    use crate::config::{Backend, Command};
    let suite = Suite::parse(name)?;
    let backend = match suite {
        Suite::CutOracle | Suite::ValuationLemmas | Suite::ClassMultiplicativity => Backend::Valuation("Z[1/2]".into()),
        Suite::QuotientLemmas | Suite::Transport => Backend::Valuation("lex(Z, Z[1/2])".into()),
        Suite::TrivialClassGroup => Backend::Valuation("lex(Q, Z)".into()),
        Suite::Pstarmd => Backend::Valuation("Q".into()),
        Suite::Gauss => Backend::Order(-3),
        Suite::LatticeOracle | Suite::DedekindMertens | Suite::Homogeneity | Suite::StarAxioms => Backend::Order(-12),
    };
    let mut cfg = JobConfig::new(backend, Command::Propsuite);
    cfg.suite = Some(name.into());
    if matches!(suite, Suite::Gauss | Suite::Pstarmd) {
        cfg.op = Some("v".into());
    }
    if matches!(suite, Suite::QuotientLemmas | Suite::Transport) {
        cfg.k = Some(1);
    }
    Ok(cfg)
}

pub fn propsuite(cfg: &JobConfig, dom: &Domain, r: &mut Report) -> Result<(), ConfigError> {
    let name = cfg.suite.as_deref().ok_or_else(|| ConfigError::Missing("\"suite\" is required for propsuite".into()))?;
    run_suite(cfg, dom, Suite::parse(name)?, r)
}

/// Runs `suite` with the samples and cases of `cfg`, recording checks,
/// the smallest witness and its reproducing config in `r`.
pub fn run_suite(cfg: &JobConfig, dom: &Domain, suite: Suite, r: &mut Report) -> Result<(), ConfigError> {
    let op = cfg.op.as_deref().map(|o| cfg.op_named(dom, o)).transpose()?;
    let mut ctx = Ctx { cfg, dom, op, b: sample_bounds(&cfg.bounds), grid: None };
    suite.prepare(&mut ctx)?;
    let n = cfg.bounds.samples.unwrap_or(suite.default_samples());
    let mut cases = if n > 0 { suite.draw(&ctx, &mut rng(seed_for(cfg, n)?), n)? } else { Vec::new() };
    cases.extend(cfg.cases.iter().cloned());

    r.input("suite", suite.name());
    r.input("samples", n);
    r.input("explicit_cases", cfg.cases.len());
    if let Some(op) = &ctx.op {
        r.input("op", op.to_string());
    }
    if let Some(k) = cfg.k {
        r.input("k", k);
    }

    let mut tally: Vec<(&'static str, usize, usize)> = Vec::new();
    let mut failures: Vec<((Case, &'static str, String), String)> = Vec::new();
    for (idx, case) in cases.iter().enumerate() {
        let outcome = suite.check(&ctx, case).map_err(|e| e.within(&format!("case {idx}")))?;
        for (check, fail) in outcome {
            let slot = match tally.iter().position(|t| t.0 == check) {
                Some(p) => p,
                None => {
                    tally.push((check, 0, 0));
                    tally.len() - 1
                }
            };
            tally[slot].1 += 1;
            match fail {
                None => tally[slot].2 += 1,
                Some(detail) => {
                    let key = serde_json::to_string(case).expect("cases serialize");
                    failures.push(((case.clone(), check, detail), key));
                }
            }
        }
    }

    r.result("cases", cases.len());
    r.result("failures", failures.len());
    for (check, total, passed) in &tally {
        r.check(check, passed == total, format!("{passed}/{total}"));
    }
    if cases.is_empty() {
        r.warnings.push("empty sample: no cases were checked, so the pass is vacuous".into());
    }
    if matches!(suite, Suite::CutOracle | Suite::LatticeOracle) {
        let (compared, agreed) = tally.iter().fold((0, 0), |(c, a), t| (c + t.1, a + t.2));
        let oracle = if suite == Suite::CutOracle { "grid" } else { "span" };
        r.oracle = Some(OracleSummary { oracle: oracle.into(), compared, agreed });
    }
    if let Some((case, check, detail)) = smallest(failures) {
        let mut m = minimal(cfg);
        m.command = crate::config::Command::Propsuite;
        m.suite = Some(suite.name().into());
        m.k = cfg.k;
        m.bounds = cfg.bounds.clone();
        m.bounds.samples = Some(0);
        if let Some(op) = &ctx.op {
            m.op = Some(op_ref(&mut m, dom, op));
        }
        if let Some(crate::config::OpLit::Compound(crate::config::CompoundOp::W(names))) = &case.op {
            for n in names {
                if let Some(lit) = cfg.ideals.get(n) {
                    m.ideals.insert(n.clone(), lit.clone());
                }
            }
        }
        m.cases = vec![case.clone()];
        r.witnesses.push(Witness { check: check.into(), case, detail });
        r.reproduce = Some(m);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Backend;

    #[test]
    fn suite_names_round_trip() {
        for (n, s) in SUITES {
            assert_eq!(Suite::parse(n).unwrap(), s);
            assert_eq!(s.name(), n);
        }
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn drawn_cases_survive_serialization() {
        for (backend, suite) in [
            (Backend::Order(-12), Suite::Gauss),
            (Backend::Valuation("lex(Z, Z[1/2])".into()), Suite::Gauss),
            (Backend::Valuation("lex(Q, Z)".into()), Suite::Homogeneity),
            (Backend::Order(40), Suite::StarAxioms),
            (Backend::Valuation("Z".into()), Suite::Gauss),
            (Backend::Valuation("Z".into()), Suite::CutOracle),
        ] {
            let cfg = JobConfig::new(backend, crate::config::Command::Propsuite);
            let dom = cfg.domain().unwrap();
            let mut ctx = Ctx { cfg: &cfg, dom: &dom, op: None, b: SampleBounds::default(), grid: None };
            suite.prepare(&mut ctx).unwrap();
            for case in suite.draw(&ctx, &mut rng(5), 30).unwrap() {
                let text = serde_json::to_string(&case).unwrap();
                let back: Case = serde_json::from_str(&text).unwrap();
                assert_eq!(back, case);
                if let Some(f) = &case.f {
                    let p = FieldPoly::parse(&dom, f).unwrap();
                    assert_eq!(&p.to_string(), f, "polynomial text is canonical");
                }
                if let Some(i) = &case.i {
                    assert_eq!(&ideal_lit(&parse_ideal(&dom, i).unwrap()), i);
                }
                if let Some(x) = &case.x {
                    assert_eq!(&elem_lit(&parse_elem(&dom, x).unwrap()), x);
                }
            }
        }
    }

    #[test]
    fn oracle_range_is_enforced() {
        let cfg = JobConfig::new(Backend::Valuation("Q".into()), crate::config::Command::Propsuite);
        let dom = cfg.domain().unwrap();
        let mut ctx = Ctx { cfg: &cfg, dom: &dom, op: None, b: SampleBounds::default(), grid: None };
        Suite::CutOracle.prepare(&mut ctx).unwrap();
        let v = valuation(&dom, Suite::CutOracle).unwrap();
        let ok = v.ideal(HullPoint::new(vec![Rational::new(1.into(), 12.into())]), false).unwrap();
        let off_grid = v.ideal(HullPoint::new(vec![Rational::new(1.into(), 5.into())]), false).unwrap();
        assert!(in_oracle_range(&ctx, &ok));
        assert!(!in_oracle_range(&ctx, &off_grid));
    }
}
