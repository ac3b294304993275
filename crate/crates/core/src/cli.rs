//! Command line front end: JSON input files, reports and exit codes.
//!
//! Integers and rationals in input files are JSON strings (plain JSON
//! integers are accepted too); every number in a report is a string, so
//! reports are exact and byte-for-byte reproducible. Failed consistency
//! verdicts still print their report and then exit with code 3.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::sync::Arc;

use clap::{Arg, ArgAction, ArgMatches, Command};
use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::char_classes::{
    hirzebruch_unnormalized, hirzebruch_via_cotangent, require_polynomial, specialize,
    todd_riemann_roch_count, ClassKind,
};
use crate::genera::{
    chi_y_of_toric, e_from_table, format_e_polynomial, genus_of_degree, parse_e_polynomial,
    GenusPoly, HodgeTable,
};
use crate::hypersurface::{
    hirzebruch_milnor_difference, virtual_class_pushforward, HodgeValue, HypersurfaceSpec,
    StratumDatum,
};
use crate::lattice_geom::{enumerate_lattice_points, Fan, Polytope};
use crate::poly::{fmt_rational, parse_rational};
use crate::sym_products::{signed_sym_power_oracle, symprod_e_series};
use crate::toric_cycles::{chow_ranks, degree, CoeffElem, CycleClass, TDivisor};
use crate::{Error, Rational, Result};

/// An integer written either as a JSON string or a JSON number.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum IntLit {
    Text(String),
    Num(i64),
}

impl IntLit {
    fn value<T: TryFrom<i64>>(&self, what: &str) -> Result<T> {
        let v = match self {
            IntLit::Num(n) => *n,
            IntLit::Text(s) => s
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("{what}: {s:?} is not an integer")))?,
        };
        T::try_from(v).map_err(|_| Error::InvalidInput(format!("{what}: {v} is out of range")))
    }
}

fn ints<T: TryFrom<i64>>(v: &[IntLit], what: &str) -> Result<Vec<T>> {
    v.iter().map(|x| x.value(what)).collect()
}

/// Fan file: `rank`, integer `rays`, and `cones` as ray-index lists. Maximal
/// cones suffice; faces are closed up on load.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanFile {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawFan {
    rank: IntLit,
    rays: Vec<Vec<IntLit>>,
    cones: Vec<Vec<IntLit>>,
}

impl FanFile {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFan = from_json(text)?;
        Ok(FanFile {
            rank: raw.rank.value("rank")?,
            rays: raw
                .rays
                .iter()
                .map(|r| ints(r, "ray"))
                .collect::<Result<_>>()?,
            cones: raw
                .cones
                .iter()
                .map(|c| ints(c, "cone"))
                .collect::<Result<_>>()?,
        })
    }

    /// Canonical text: every integer as a string, one ray or cone per line.
    pub fn to_json(&self) -> String {
        let list = |rows: Vec<String>| format!("[\n    {}\n  ]", rows.join(",\n    "));
        let row = |xs: Vec<String>| {
            let quoted: Vec<String> = xs.iter().map(|x| format!("\"{x}\"")).collect();
            format!("[{}]", quoted.join(", "))
        };
        let rays = self
            .rays
            .iter()
            .map(|r| row(r.iter().map(i64::to_string).collect()));
        let cones = self
            .cones
            .iter()
            .map(|c| row(c.iter().map(usize::to_string).collect()));
        format!(
            "{{\n  \"rank\": \"{}\",\n  \"rays\": {},\n  \"cones\": {}\n}}\n",
            self.rank,
            list(rays.collect()),
            list(cones.collect())
        )
    }

    pub fn to_fan(&self) -> Result<Fan> {
        Fan::from_maximal_cones(self.rank, self.rays.clone(), self.cones.clone())
    }
}

/// Polytope file: `rank` and lattice `vertices`; the convex hull is taken.
#[derive(Deserialize)]
struct RawPolytope {
    rank: IntLit,
    vertices: Vec<Vec<IntLit>>,
}

fn parse_polytope(text: &str) -> Result<Polytope> {
    let raw: RawPolytope = from_json(text)?;
    let points = raw
        .vertices
        .iter()
        .map(|v| ints(v, "vertex"))
        .collect::<Result<_>>()?;
    Polytope::convex_hull(raw.rank.value("rank")?, points)
}

/// Hodge table file: `entries` with keys `p`, `q`, `k`, `dim`.
#[derive(Deserialize)]
struct RawTable {
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    p: IntLit,
    q: IntLit,
    k: IntLit,
    dim: IntLit,
}

fn parse_table(text: &str) -> Result<HodgeTable> {
    let raw: RawTable = from_json(text)?;
    let mut t = HodgeTable::new();
    for e in &raw.entries {
        t.add(
            (e.p.value("p")?, e.q.value("q")?, e.k.value("k")?),
            e.dim.value("dim")?,
        );
    }
    Ok(t)
}

/// A normalized Hirzebruch value: `{"genus": "<poly>"}` or
/// `{"class": {"<cone label>": "<poly>", ...}}`.
#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawValue {
    Genus(String),
    Class(BTreeMap<String, String>),
}

#[derive(Deserialize)]
struct RawStratum {
    label: String,
    closure: RawValue,
    boundary: RawValue,
    milnor: String,
}

/// Strata file: the actual normalized value of the hypersurface and the
/// strata of its singular locus.
#[derive(Deserialize)]
struct RawStrata {
    actual: RawValue,
    strata: Vec<RawStratum>,
}

fn parse_label(fan: &Fan, label: &str) -> Result<crate::lattice_geom::ConeId> {
    let body = label
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| {
            Error::Parse(format!(
                "cone label {label:?} is not of the form {{i,j,..}}"
            ))
        })?;
    let rays: Vec<usize> = body
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("cone label {label:?}")))
        })
        .collect::<Result<_>>()?;
    fan.cone_id(&rays)
        .ok_or_else(|| Error::UnknownCone(label.to_string()))
}

fn to_value(fan: &Arc<Fan>, raw: &RawValue) -> Result<HodgeValue> {
    match raw {
        RawValue::Genus(s) => Ok(HodgeValue::Genus(GenusPoly::parse(s)?)),
        RawValue::Class(terms) => {
            let mut parsed = Vec::with_capacity(terms.len());
            for (label, coeff) in terms {
                let c = GenusPoly::parse(coeff)?.to_coeff().ok_or_else(|| {
                    Error::InvalidInput(format!("coefficient {coeff:?} has negative powers of y"))
                })?;
                parsed.push((parse_label(fan, label)?, c));
            }
            Ok(HodgeValue::Class(CycleClass::from_terms(fan, parsed)?))
        }
    }
}

fn parse_strata(fan: &Arc<Fan>, text: &str) -> Result<(HodgeValue, Vec<StratumDatum>)> {
    let raw: RawStrata = from_json(text)?;
    let actual = to_value(fan, &raw.actual)?;
    let strata = raw
        .strata
        .iter()
        .map(|s| {
            Ok(StratumDatum {
                label: s.label.clone(),
                closure: to_value(fan, &s.closure)?,
                boundary: to_value(fan, &s.boundary)?,
                milnor: GenusPoly::parse(&s.milnor)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok((actual, strata))
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))
}

fn load_fan(path: &str) -> Result<Arc<Fan>> {
    Ok(Arc::new(FanFile::parse(&read(path)?)?.to_fan()?))
}

/// A report body plus the failure, if any, that sets a nonzero exit code
/// after the report is printed.
struct Outcome {
    report: Value,
    failure: Option<(i32, String)>,
}

impl Outcome {
    fn new(computation: &str, input: Value, result: Map<String, Value>) -> Self {
        Outcome {
            report: json!({ "computation": computation, "input": input, "result": result }),
            failure: None,
        }
    }

    fn fail_unless(mut self, ok: bool, what: &str) -> Self {
        if !ok && self.failure.is_none() {
            self.failure = Some((3, what.to_string()));
        }
        self
    }
}

fn class_terms(c: &CycleClass) -> Value {
    let map: Map<String, Value> = c
        .labeled_terms()
        .into_iter()
        .map(|(label, v)| (label, Value::String(v.to_string())))
        .collect();
    Value::Object(map)
}

fn genus_str(g: &GenusPoly) -> Value {
    Value::String(g.to_string())
}

fn rational_str(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

/// Symbolic `y` or a rational value.
fn parse_y(s: &str) -> Result<Option<Rational>> {
    if s == "symbolic" {
        Ok(None)
    } else {
        parse_rational(s).map(Some)
    }
}

/// Degree the class of `kind` must have: `χ_y` for the Hirzebruch classes,
/// its values at `y = 0` and `y = −1` for Todd and Chern, and `χ(ω_X)` for
/// the Todd class of the canonical sheaf.
fn expected_genus(kind: ClassKind, fan: &Fan) -> Result<GenusPoly> {
    let chi = chi_y_of_toric(fan)?;
    let at = |y: i64| {
        GenusPoly::from_coeff(&CoeffElem::rational(
            chi.eval(&Rational::from_integer(y.into()))
                .expect("χ_y is a polynomial"),
        ))
        .expect("constants are polynomial")
    };
    Ok(match kind {
        ClassKind::Hirzebruch | ClassKind::HirzebruchNormalized => chi,
        ClassKind::Todd => at(0),
        ClassKind::Chern => at(-1),
        ClassKind::OmegaTodd => {
            let top = chi.coeff(fan.rank() as i64);
            GenusPoly::from_coeff(&CoeffElem::rational(top)).expect("constants are polynomial")
        }
    })
}

fn cmd_classes(m: &ArgMatches) -> Result<Outcome> {
    let path = m.get_one::<String>("fan").expect("required");
    let kind: ClassKind = m.get_one::<String>("class").expect("defaulted").parse()?;
    let y_arg = m.get_one::<String>("y").expect("defaulted");
    let y0 = parse_y(y_arg)?;
    let cross = m.get_flag("cross-check");
    let fan = load_fan(path)?;

    let class = kind.compute(&fan)?;
    let class = match &y0 {
        None => class,
        Some(y) => {
            require_polynomial(&class, kind.name())?;
            specialize(&class, y)?
        }
    };
    let mut result = Map::new();
    result.insert("class".into(), class_terms(&class));
    let mut ok = true;
    if fan.is_smooth()? && fan.is_complete()? {
        let deg = degree(&class)?;
        let expected = expected_genus(kind, &fan)?;
        let expected = match &y0 {
            None => expected,
            Some(y) => GenusPoly::from_coeff(&CoeffElem::rational(
                expected.eval(y).expect("χ_y is a polynomial"),
            ))
            .expect("constants are polynomial"),
        };
        let matches = genus_of_degree(&deg)? == expected;
        ok &= matches;
        result.insert("degree".into(), Value::String(deg.to_string()));
        result.insert("genus".into(), genus_str(&expected));
        result.insert("degree_matches_genus".into(), Value::Bool(matches));
    }
    if cross {
        let agree = hirzebruch_unnormalized(&fan)?.equivalent(&hirzebruch_via_cotangent(&fan)?)?;
        ok &= agree;
        result.insert("orbit_sum_equals_cotangent".into(), Value::Bool(agree));
    }
    let input = json!({ "fan": path, "class": kind.name(), "y": y_arg, "cross_check": cross });
    Ok(Outcome::new("classes", input, result).fail_unless(ok, "class report is inconsistent"))
}

fn cmd_count_points(m: &ArgMatches) -> Result<Outcome> {
    let path = m.get_one::<String>("polytope").expect("required");
    let p = parse_polytope(&read(path)?)?;
    let brute = enumerate_lattice_points(&p, false)?.count;
    let rr = todd_riemann_roch_count(&p).map_err(|e| match e {
        Error::NotSmooth => Error::Precondition(
            "normal fan is not smooth; the Riemann-Roch count needs a smooth toric variety".into(),
        ),
        e => e,
    })?;
    let matches = rr == Rational::from_integer(brute.into());
    let mut result = Map::new();
    result.insert("enumerated".into(), Value::String(brute.to_string()));
    result.insert("riemann_roch".into(), rational_str(&rr));
    result.insert("match".into(), Value::Bool(matches));
    Ok(
        Outcome::new("count-points", json!({ "polytope": path }), result)
            .fail_unless(matches, "lattice point counts differ"),
    )
}

/// Reads a Hodge table file (`*.json`) or an E-polynomial literal. A literal
/// is lifted to a table with each coefficient in weight parity matching its
/// sign, which has the same E-polynomial.
fn symprod_input(arg: &str) -> Result<HodgeTable> {
    if arg.ends_with(".json") {
        return parse_table(&read(arg)?);
    }
    let e = parse_e_polynomial(arg)?;
    let mut t = HodgeTable::new();
    for ([p, q], c) in e.terms() {
        let k = if c < &Zero::zero() { 1 } else { 0 };
        let dim = u64::try_from(c.magnitude())
            .map_err(|_| Error::InvalidInput(format!("coefficient {c} is too large")))?;
        t.add((*p, *q, k), dim);
    }
    Ok(t)
}

fn cmd_symprod(m: &ArgMatches) -> Result<Outcome> {
    let arg = m.get_one::<String>("input").expect("required");
    let order: usize = *m.get_one::<usize>("order").expect("defaulted");
    let oracle = m.get_flag("oracle");
    let table = symprod_input(arg)?;
    let e = e_from_table(&table);
    let series = symprod_e_series(&e, order)?;
    let mut result = Map::new();
    result.insert(
        "e_polynomial".into(),
        Value::String(format_e_polynomial(&e)),
    );
    let coeffs: Vec<Value> = series
        .coeffs()
        .iter()
        .map(|c| Value::String(format_e_polynomial(c)))
        .collect();
    result.insert("coefficients".into(), Value::Array(coeffs));
    let mut ok = true;
    if oracle {
        let mut flags = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let matches = e_from_table(&signed_sym_power_oracle(&table, n)?) == series.coeff(n);
            ok &= matches;
            flags.push(Value::Bool(matches));
        }
        result.insert("oracle_matches".into(), Value::Array(flags));
    }
    let input = json!({ "input": arg, "order": order.to_string(), "oracle": oracle });
    Ok(Outcome::new("symprod", input, result).fail_unless(ok, "oracle disagrees with the series"))
}

fn cmd_hypersurface(m: &ArgMatches) -> Result<Outcome> {
    let path = m.get_one::<String>("fan").expect("required");
    let divisor = m.get_one::<String>("divisor").expect("required");
    let strata_path = m.get_one::<String>("strata");
    let singular = m.get_flag("singular");
    let fan = load_fan(path)?;
    let coeffs = divisor
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    let h = HypersurfaceSpec::new(TDivisor::new(&fan, coeffs)?)?;

    let virt = virtual_class_pushforward(&h)?;
    let deg = degree(&virt)?;
    let mut result = Map::new();
    result.insert("virtual_class".into(), class_terms(&virt));
    result.insert("virtual_degree".into(), Value::String(deg.to_string()));
    result.insert("virtual_genus".into(), genus_str(&genus_of_degree(&deg)?));
    let mut ok = true;
    match strata_path {
        Some(sp) => {
            let (actual, strata) = parse_strata(&fan, &read(sp)?)?;
            let r = hirzebruch_milnor_difference(&h, &actual, &strata)?;
            let render = |v: &HodgeValue| match v {
                HodgeValue::Class(c) => class_terms(c),
                HodgeValue::Genus(g) => genus_str(g),
            };
            result.insert(
                "mode".into(),
                Value::String(
                    match actual {
                        HodgeValue::Class(_) => "class",
                        HodgeValue::Genus(_) => "genus",
                    }
                    .into(),
                ),
            );
            result.insert("difference".into(), render(&r.difference));
            result.insert("correction".into(), render(&r.correction));
            result.insert("consistent".into(), Value::Bool(r.consistent));
            ok = r.consistent;
        }
        None if singular => {
            result.insert(
                "correction".into(),
                Value::String("correction unknown; virtual class only".into()),
            );
        }
        None => {}
    }
    let input = json!({
        "fan": path,
        "divisor": divisor,
        "strata": strata_path.map_or(Value::Null, |s| Value::String(s.clone())),
        "singular": singular,
    });
    Ok(Outcome::new("hypersurface", input, result).fail_unless(
        ok,
        "virtual class minus actual differs from the Milnor correction",
    ))
}

fn cmd_validate(m: &ArgMatches) -> Result<Outcome> {
    let path = m.get_one::<String>("fan").expect("required");
    let fan = load_fan(path)?;
    let violations: Vec<Value> = fan
        .validate()
        .iter()
        .map(|v| Value::String(v.to_string()))
        .collect();
    let valid = violations.is_empty();
    let mut result = Map::new();
    result.insert("rays".into(), Value::String(fan.num_rays().to_string()));
    result.insert("cones".into(), Value::String(fan.num_cones().to_string()));
    result.insert("valid".into(), Value::Bool(valid));
    result.insert("violations".into(), Value::Array(violations));
    if valid {
        let smooth = fan.is_smooth()?;
        let complete = fan.is_complete()?;
        result.insert("smooth".into(), Value::Bool(smooth));
        result.insert("complete".into(), Value::Bool(complete));
        if smooth && complete {
            let ranks = chow_ranks(&fan)?
                .iter()
                .map(|r| Value::String(r.to_string()))
                .collect();
            result.insert("chow_ranks".into(), Value::Array(ranks));
        }
    }
    let mut o = Outcome::new("validate", json!({ "fan": path }), result);
    if let Some(v) = fan.validate().first() {
        o.failure = Some((2, Error::InvalidFan(v.to_string()).to_string()));
    }
    Ok(o)
}

fn command() -> Command {
    let fan = || {
        Arg::new("fan")
            .required(true)
            .value_name("FAN_FILE")
            .help("Fan file (JSON)")
    };
    let json_flag = Arg::new("json")
        .long("json")
        .global(true)
        .action(ArgAction::SetTrue)
        .help("Print the report as JSON instead of aligned text");
    Command::new("toric-classes")
        .about("Exact characteristic classes of toric varieties and related genera")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg(json_flag)
        .subcommand(
            Command::new("classes")
                .about("Characteristic class of a toric variety as a cycle class")
                .arg(fan())
                .arg(
                    Arg::new("class")
                        .long("class")
                        .value_parser([
                            "hirzebruch",
                            "hirzebruch-normalized",
                            "todd",
                            "chern",
                            "omega-todd",
                        ])
                        .default_value("hirzebruch"),
                )
                .arg(
                    Arg::new("y")
                        .long("y")
                        .value_name("RATIONAL|symbolic")
                        .allow_hyphen_values(true)
                        .default_value("symbolic"),
                )
                .arg(
                    Arg::new("cross-check")
                        .long("cross-check")
                        .action(ArgAction::SetTrue)
                        .help("Compare the orbit sum with the cotangent product"),
                ),
        )
        .subcommand(
            Command::new("count-points")
                .about("Lattice points of a polytope by enumeration and by Riemann-Roch")
                .arg(
                    Arg::new("polytope")
                        .required(true)
                        .value_name("POLYTOPE_FILE"),
                ),
        )
        .subcommand(
            Command::new("symprod")
                .about("Generating series of symmetric products")
                .arg(
                    Arg::new("input")
                        .required(true)
                        .allow_hyphen_values(true)
                        .value_name("E_POLY|TABLE.json"),
                )
                .arg(
                    Arg::new("order")
                        .long("order")
                        .value_parser(clap::value_parser!(usize))
                        .default_value("5"),
                )
                .arg(
                    Arg::new("oracle")
                        .long("oracle")
                        .action(ArgAction::SetTrue)
                        .help("Check each coefficient against a brute-force symmetric power"),
                ),
        )
        .subcommand(
            Command::new("hypersurface")
                .about("Virtual class of a hypersurface and its Milnor correction")
                .arg(fan())
                .arg(
                    Arg::new("divisor")
                        .long("divisor")
                        .required(true)
                        .allow_hyphen_values(true)
                        .value_name("A0,A1,..")
                        .help("Coefficients of the toric divisors, one per ray"),
                )
                .arg(Arg::new("strata").long("strata").value_name("STRATA_FILE"))
                .arg(
                    Arg::new("singular")
                        .long("singular")
                        .action(ArgAction::SetTrue)
                        .help("The hypersurface is singular"),
                ),
        )
        .subcommand(
            Command::new("validate")
                .about("Check the fan axioms, smoothness and completeness")
                .arg(fan()),
        )
}

/// Aligned `key  value` lines, nested keys joined with dots.
fn render_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let key = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(m) if !m.is_empty() => {
                for (k, x) in m {
                    walk(&key(k), x, out);
                }
            }
            Value::Array(a) if !a.is_empty() => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::Object(_) => out.push((prefix.to_string(), "{}".into())),
            Value::Array(_) => out.push((prefix.to_string(), "[]".into())),
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            Value::Null => out.push((prefix.to_string(), "-".into())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut lines = Vec::new();
    walk("", v, &mut lines);
    let width = lines
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    lines
        .into_iter()
        .map(|(k, x)| format!("{k:<width$}  {x}\n"))
        .collect()
}

/// Runs the command line; returns the process exit code.
pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let matches = match command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let as_json = matches.get_flag("json");
    let outcome = match matches.subcommand() {
        Some(("classes", m)) => cmd_classes(m),
        Some(("count-points", m)) => cmd_count_points(m),
        Some(("symprod", m)) => cmd_symprod(m),
        Some(("hypersurface", m)) => cmd_hypersurface(m),
        Some(("validate", m)) => cmd_validate(m),
        _ => unreachable!("a subcommand is required"),
    };
    match outcome {
        Ok(o) => {
            if as_json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&o.report).expect("reports serialize")
                );
            } else {
                print!("{}", render_text(&o.report));
            }
            match o.failure {
                None => 0,
                Some((code, why)) => {
                    eprintln!("error: {why}");
                    code
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_file_round_trips() {
        let text = "{\n  \"rank\": \"2\",\n  \"rays\": [\n    [\"1\", \"0\"],\n    [\"0\", \"1\"],\n    [\"-1\", \"-1\"]\n  ],\n  \"cones\": [\n    [\"0\", \"1\"],\n    [\"1\", \"2\"],\n    [\"0\", \"2\"]\n  ]\n}\n";
        let f = FanFile::parse(text).unwrap();
        assert_eq!(f.to_json(), text);
        assert_eq!(FanFile::parse(&f.to_json()).unwrap(), f);
        assert_eq!(f.to_fan().unwrap().num_cones(), 7);
    }

    #[test]
    fn numbers_may_be_plain_integers() {
        let f = FanFile::parse(r#"{"rank": 1, "rays": [[1], [-1]], "cones": [[0], [1]]}"#).unwrap();
        assert_eq!(f.rays, vec![vec![1], vec![-1]]);
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(FanFile::parse("{"), Err(Error::Parse(_))));
        assert!(matches!(
            FanFile::parse(r#"{"rank": "x", "rays": [], "cones": []}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn literal_lifts_to_a_table_with_the_same_e_polynomial() {
        let t = symprod_input("1-y*x+2*y").unwrap();
        assert_eq!(e_from_table(&t), parse_e_polynomial("1-y*x+2*y").unwrap());
        assert!(t.has_odd_class());
    }

    #[test]
    fn cone_labels_parse() {
        let fan = crate::lattice_geom::standard::projective_space(2);
        let c = parse_label(&fan, "{0, 2}").unwrap();
        assert_eq!(fan.label(c), "{0,2}");
        assert!(matches!(
            parse_label(&fan, "{0,1,2}"),
            Err(Error::UnknownCone(_))
        ));
        assert!(matches!(parse_label(&fan, "0,1"), Err(Error::Parse(_))));
    }

    #[test]
    fn text_reports_align_keys() {
        let v = json!({"a": "1", "bcd": {"x": "2"}, "e": [true]});
        assert_eq!(render_text(&v), "a      1\nbcd.x  2\ne[0]   true\n");
    }
}
