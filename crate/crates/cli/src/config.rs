//! Job configuration: the JSON schema, its caps, and conversion between
//! literals and library values.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use semistar::content::FieldPoly;
use semistar::rational::{format_rational, parse_rational};
use semistar::star::maximal_order_meet;
use semistar::{Domain, Elem, HullPoint, Ideal, LatticeIdeal, OrderedGroup, Overring, QuadraticOrder, StarOp, ValuationDomain};
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

pub const MAX_RANK: usize = 4;
pub const MAX_GRID_LEVEL: u32 = 12;
pub const MAX_BOX: i64 = 8;
pub const MAX_NORM: u64 = 10_000;
pub const MAX_SAMPLES: usize = 100_000;
pub const MAX_DEGREE: usize = 16;
pub const MAX_ENTRIES: i64 = 1_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Closure,
    Invert,
    Gauss,
    Mertens,
    Pstarmd,
    Classgroup,
    Transport,
    Survey,
    Propsuite,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Closure => "closure",
            Command::Invert => "invert",
            Command::Gauss => "gauss",
            Command::Mertens => "mertens",
            Command::Pstarmd => "pstarmd",
            Command::Classgroup => "classgroup",
            Command::Transport => "transport",
            Command::Survey => "survey",
            Command::Propsuite => "propsuite",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Backend {
    /// value group descriptor such as `lex(Z, Z[1/2])`
    Valuation(String),
    /// discriminant
    Order(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CutLit {
    pub point: Vec<String>,
    pub open: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealLit {
    Cut {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        group: Option<String>,
        cut: CutLit,
    },
    Hnf {
        hnf: [i64; 4],
    },
    Generators {
        generators: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemLit {
    Quad(String),
    Value(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum OverringLit {
    Localization(usize),
    Order(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum CompoundOp {
    /// test family given by ideal names
    W(Vec<String>),
    Meet(Vec<OverringLit>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OpLit {
    Builtin(String),
    Compound(CompoundOp),
}

/// One instance of a property suite.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Case {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<IdealLit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<IdealLit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<ElemLit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    /// operation the case was checked under, when the suite covers several
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<OpLit>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    /// norm bound for order enumeration
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<u64>,
    /// grid depth `k` of the cut oracle; sampled cut points have
    /// denominators dividing `3·2^k`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_level: Option<u32>,
    /// half-width `B` of the oracle window
    #[serde(default, rename = "box", skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// coefficient bound for sampled lattice generators
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    /// coefficient height of sampled polynomials
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub backend: Backend,
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ideals: BTreeMap<String, IdealLit>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub polys: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ops: BTreeMap<String, OpLit>,
    /// ideal name for closure and invert
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
    /// op name or builtin (`d`, `v`, `t`, `w`, `meet-max`)
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    /// named ideals checked by pstarmd, classgroup and transport
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub list: Vec<String>,
    /// convex subgroup index for transport and quotient-lemmas
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<Case>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub bounds: Bounds,
}

fn is_default(b: &Bounds) -> bool {
    *b == Bounds::default()
}

impl JobConfig {
    pub fn new(backend: Backend, command: Command) -> JobConfig {
        JobConfig {
            backend,
            command,
            seed: None,
            ideals: BTreeMap::new(),
            polys: BTreeMap::new(),
            ops: BTreeMap::new(),
            ideal: None,
            op: None,
            f: None,
            g: None,
            list: Vec::new(),
            k: None,
            suite: None,
            cases: Vec::new(),
            bounds: Bounds::default(),
        }
    }

    /// Parses JSON text; syntax and schema errors carry line and column.
    pub fn from_json(text: &str) -> Result<JobConfig, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Syntax { line: e.line(), column: e.column(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs serialize")
    }

    pub fn domain(&self) -> Result<Domain, ConfigError> {
        backend_domain(&self.backend)
    }

    pub fn check_caps(&self) -> Result<(), ConfigError> {
        let b = &self.bounds;
        let over = |what: &str, v: String, cap: String| ConfigError::Bound(format!("{what} = {v} exceeds the cap {cap}"));
        if let Some(k) = b.grid_level {
            if k > MAX_GRID_LEVEL {
                return Err(over("bounds.grid_level", k.to_string(), MAX_GRID_LEVEL.to_string()));
            }
        }
        if let Some(w) = b.window {
            if !(1..=MAX_BOX).contains(&w) {
                return Err(ConfigError::Bound(format!("bounds.box = {w} must lie in 1..={MAX_BOX}")));
            }
        }
        if let Some(n) = b.norm {
            if !(2..=MAX_NORM).contains(&n) {
                return Err(ConfigError::Bound(format!("bounds.norm = {n} must lie in 2..={MAX_NORM}")));
            }
        }
        if let Some(n) = b.samples {
            if n > MAX_SAMPLES {
                return Err(over("bounds.samples", n.to_string(), MAX_SAMPLES.to_string()));
            }
        }
        if let Some(d) = b.degree {
            if d > MAX_DEGREE {
                return Err(over("bounds.degree", d.to_string(), MAX_DEGREE.to_string()));
            }
        }
        for (name, v) in [("bounds.entries", b.entries), ("bounds.height", b.height)] {
            if let Some(v) = v {
                if !(1..=MAX_ENTRIES).contains(&v) {
                    return Err(ConfigError::Bound(format!("{name} = {v} must lie in 1..={MAX_ENTRIES}")));
                }
            }
        }
        Ok(())
    }

    pub fn ideal_named(&self, dom: &Domain, name: &str) -> Result<Ideal, ConfigError> {
        let lit = self.ideals.get(name).ok_or_else(|| ConfigError::Missing(format!("ideal {name:?} is not defined in \"ideals\"")))?;
        parse_ideal(dom, lit).map_err(|e| e.within(&format!("ideals.{name}")))
    }

    pub fn poly_named(&self, dom: &Domain, name: &str) -> Result<FieldPoly, ConfigError> {
        // a name missing from "polys" is read as an inline literal
        let (text, field) = match self.polys.get(name) {
            Some(t) => (t.as_str(), format!("polys.{name}")),
            None => (name, "polynomial".to_string()),
        };
        FieldPoly::parse(dom, text).map_err(|e| ConfigError::from(e).within(&field))
    }

    pub fn op_named(&self, dom: &Domain, name: &str) -> Result<StarOp, ConfigError> {
        let op = match self.ops.get(name) {
            Some(lit) => self.parse_op(dom, lit).map_err(|e| e.within(&format!("ops.{name}")))?,
            None => self.parse_op(dom, &OpLit::Builtin(name.to_string()))?,
        };
        dom.validate(&op).map_err(|e| ConfigError::from(e).within(&format!("op {name:?}")))?;
        Ok(op)
    }

    pub fn parse_op(&self, dom: &Domain, lit: &OpLit) -> Result<StarOp, ConfigError> {
        match lit {
            OpLit::Builtin(s) => match s.as_str() {
                "d" => Ok(StarOp::D),
                "v" => Ok(StarOp::V),
                "t" => Ok(StarOp::T),
                "w" => Ok(StarOp::W(vec![dom.unit()])),
                "meet-max" => match dom {
                    Domain::Order(o) => Ok(maximal_order_meet(o)),
                    Domain::Valuation(_) => Err(ConfigError::Semantic("meet-max needs an order backend".into())),
                },
                other => Err(ConfigError::Missing(format!("unknown operation {other:?}; expected d, v, t, w, meet-max or a name from \"ops\""))),
            },
            OpLit::Compound(CompoundOp::W(names)) => {
                let fam = names.iter().map(|n| self.ideal_named(dom, n)).collect::<Result<Vec<_>, _>>()?;
                Ok(StarOp::W(fam))
            }
            OpLit::Compound(CompoundOp::Meet(ts)) => {
                let mut out = Vec::new();
                for t in ts {
                    out.push(match t {
                        OverringLit::Localization(k) => Overring::Localization(*k),
                        OverringLit::Order(d) => Overring::Order(QuadraticOrder::new(*d)?),
                    });
                }
                Ok(StarOp::Meet(out))
            }
        }
    }
}

pub fn backend_domain(b: &Backend) -> Result<Domain, ConfigError> {
    match b {
        Backend::Valuation(g) => {
            let group = OrderedGroup::parse(g).map_err(|e| ConfigError::from(e).within("backend.valuation"))?;
            if group.rank() > MAX_RANK {
                return Err(ConfigError::Bound(format!("rank {} exceeds the cap {MAX_RANK}", group.rank())));
            }
            Ok(Domain::Valuation(ValuationDomain::new(group)))
        }
        Backend::Order(d) => Ok(Domain::Order(QuadraticOrder::new(*d).map_err(|e| ConfigError::from(e).within("backend.order"))?)),
    }
}

pub fn backend_of(dom: &Domain) -> Backend {
    match dom {
        Domain::Valuation(v) => Backend::Valuation(v.group().to_string()),
        Domain::Order(o) => Backend::Order(o.disc()),
    }
}

fn rationals(xs: &[String]) -> Result<Vec<semistar::Rational>, ConfigError> {
    xs.iter().map(|s| parse_rational(s).map_err(ConfigError::from)).collect()
}

pub fn parse_ideal(dom: &Domain, lit: &IdealLit) -> Result<Ideal, ConfigError> {
    match (dom, lit) {
        (Domain::Valuation(v), IdealLit::Cut { group, cut }) => {
            if let Some(g) = group {
                let g = OrderedGroup::parse(g).map_err(|e| ConfigError::from(e).within("group"))?;
                if &g != v.group() {
                    return Err(ConfigError::Semantic(format!("ideal over {g} used with backend {}", v.group())));
                }
            }
            let point = HullPoint::new(rationals(&cut.point)?);
            let depth = cut.depth.unwrap_or(v.rank());
            Ok(Ideal::Val(v.ideal_with_depth(point, cut.open, depth)?))
        }
        (Domain::Order(o), IdealLit::Hnf { hnf: [d, a, b, c] }) => Ok(Ideal::Lat(LatticeIdeal::from_hnf(o, *d, *a, *b, *c)?)),
        (Domain::Order(o), IdealLit::Generators { generators }) => {
            let gens = generators.iter().map(|s| o.parse_elem(s)).collect::<Result<Vec<_>, _>>()?;
            Ok(Ideal::Lat(LatticeIdeal::from_generators(o, &gens)?))
        }
        (Domain::Valuation(_), _) => Err(ConfigError::Semantic("valuation ideals are written {\"cut\": {...}}".into())),
        (Domain::Order(_), _) => Err(ConfigError::Semantic("order ideals are written {\"hnf\": [...]} or {\"generators\": [...]}".into())),
    }
}

pub fn ideal_lit(i: &Ideal) -> IdealLit {
    match i {
        Ideal::Val(x) => {
            let c = x.cut();
            IdealLit::Cut {
                group: None,
                cut: CutLit { point: c.point().coords().iter().map(format_rational).collect(), open: c.is_open(), depth: (c.depth() != c.rank()).then_some(c.depth()) },
            }
        }
        Ideal::Lat(l) => {
            let (d, a, b, c) = l.hnf();
            match (d.to_i64(), a.to_i64(), b.to_i64(), c.to_i64()) {
                (Some(d), Some(a), Some(b), Some(c)) => IdealLit::Hnf { hnf: [d, a, b, c] },
                _ => IdealLit::Generators { generators: l.basis().iter().map(ToString::to_string).collect() },
            }
        }
    }
}

pub fn parse_elem(dom: &Domain, lit: &ElemLit) -> Result<Elem, ConfigError> {
    match (dom, lit) {
        (Domain::Order(o), ElemLit::Quad(s)) => {
            let x = o.parse_elem(s)?;
            if x.is_zero() {
                return Err(ConfigError::Semantic("elements must be nonzero".into()));
            }
            Ok(Elem::Quad(x))
        }
        (Domain::Valuation(v), ElemLit::Value(c)) => Ok(Elem::Val(v.group().element(rationals(c)?)?)),
        (Domain::Order(_), _) => Err(ConfigError::Semantic("order elements are strings such as \"1+sqrt(-3)\"".into())),
        (Domain::Valuation(_), _) => Err(ConfigError::Semantic("valuation elements are value coordinates such as [\"1/2\"]".into())),
    }
}

pub fn elem_lit(x: &Elem) -> ElemLit {
    match x {
        Elem::Quad(q) => ElemLit::Quad(q.to_string()),
        Elem::Val(g) => ElemLit::Value(g.coords().iter().map(format_rational).collect()),
    }
}

/// A literal for `op`; test-family members of `w` are added to `ideals`
/// under fresh names.
pub fn op_lit(op: &StarOp, dom: &Domain, ideals: &mut BTreeMap<String, IdealLit>) -> OpLit {
    match op {
        StarOp::D => OpLit::Builtin("d".into()),
        StarOp::V => OpLit::Builtin("v".into()),
        StarOp::T => OpLit::Builtin("t".into()),
        StarOp::W(fam) if fam.len() == 1 && fam[0] == dom.unit() => OpLit::Builtin("w".into()),
        StarOp::W(fam) => {
            let names = fam
                .iter()
                .enumerate()
                .map(|(n, h)| {
                    let name = format!("H{}", n + 1);
                    ideals.insert(name.clone(), ideal_lit(h));
                    name
                })
                .collect();
            OpLit::Compound(CompoundOp::W(names))
        }
        StarOp::Meet(ts) => OpLit::Compound(CompoundOp::Meet(
            ts.iter()
                .map(|t| match t {
                    Overring::Localization(k) => OverringLit::Localization(*k),
                    Overring::Order(o) => OverringLit::Order(o.disc()),
                })
                .collect(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_round_trip() {
        let text = r#"{
            "backend": {"order": -12},
            "command": "gauss",
            "polys": {"f": "2+(1+sqrt(-3))X", "g": "2+(1-sqrt(-3))X"},
            "f": "f", "g": "g", "op": "v"
        }"#;
        let c = JobConfig::from_json(text).unwrap();
        assert_eq!(c.command, Command::Gauss);
        assert_eq!(JobConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn errors_carry_positions() {
        let err = JobConfig::from_json("{\n  \"backend\": {\"order\": -12},\n  \"command\": \"nonsense\"\n}").unwrap_err();
        match err {
            ConfigError::Syntax { line, .. } => assert_eq!(line, 3),
            e => panic!("{e}"),
        }
        let c = JobConfig::from_json(r#"{"backend": {"valuation": "lex(Z, "}, "command": "classgroup"}"#).unwrap();
        assert!(c.domain().unwrap_err().to_string().contains("position"));
    }

    #[test]
    fn ideal_literals() {
        let dom = Domain::Valuation(ValuationDomain::new(OrderedGroup::parse("Z[1/2]").unwrap()));
        let lit: IdealLit = serde_json::from_str(r#"{"group": "Z[1/2]", "cut": {"point": ["1/3"], "open": false}}"#).unwrap();
        let i = parse_ideal(&dom, &lit).unwrap();
        assert_eq!(parse_ideal(&dom, &ideal_lit(&i)).unwrap(), i);
        let bad: IdealLit = serde_json::from_str(r#"{"group": "Q", "cut": {"point": ["1/3"], "open": false}}"#).unwrap();
        assert!(parse_ideal(&dom, &bad).is_err());
        let o = Domain::Order(QuadraticOrder::new(-12).unwrap());
        let p = parse_ideal(&o, &IdealLit::Generators { generators: vec!["2".into(), "1+sqrt(-3)".into()] }).unwrap();
        assert_eq!(ideal_lit(&p), IdealLit::Hnf { hnf: [1, 2, 1, 1] });
    }

    #[test]
    fn caps_are_enforced() {
        let mut c = JobConfig::new(Backend::Valuation("Z".into()), Command::Propsuite);
        c.bounds.grid_level = Some(13);
        assert!(c.check_caps().is_err());
        c.bounds.grid_level = Some(12);
        c.bounds.window = Some(9);
        assert!(c.check_caps().is_err());
        let c = JobConfig::new(Backend::Valuation("lex(Z, Z, Z, Z, Z)".into()), Command::Classgroup);
        assert!(c.domain().unwrap_err().to_string().contains("rank 5"));
    }
}
