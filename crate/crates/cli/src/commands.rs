use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use toric_syz::complexes::{build_delta, build_nabla, SimplicialComplex};
use toric_syz::field::parse_rational;
use toric_syz::homology::betti_reduced;
use toric_syz::json::{self as js, config_to_json};
use toric_syz::resolution::{Binomial, Engine, ModuleElement, Polynomial, ResolutionFragment, Slot, VerificationReport};
use toric_syz::{Field, FieldKind, Monomial, PrimeField, Rationals, SDegree, Semigroup, TermOrder};

use crate::cache::DiskStore;
use crate::{Cli, Command, Format, Outcome};

pub fn run(cli: &Cli) -> Result<Outcome> {
    let (order, kind, fragment) = match &cli.command {
        Command::Verify { fragment, .. } => {
            let text = fs::read_to_string(fragment).with_context(|| format!("reading {}", fragment.display()))?;
            let v: Value = serde_json::from_str(&text).context("fragment is not valid JSON")?;
            let (order, kind) = js::config_from_json(v.get("config").unwrap_or(&Value::Null))?;
            (order, kind, Some(v))
        }
        _ => (cli.global.order, cli.global.field, None),
    };
    match kind {
        FieldKind::Rational => Runner::new(cli, order, Rationals, fragment).run(),
        FieldKind::Prime(p) => Runner::new(cli, order, PrimeField::new(p)?, fragment).run(),
    }
}

fn load_semigroup(path: &Path) -> Result<Semigroup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Semigroup::new(js::parse_semigroup(&text)?)?)
}

fn parse_degree(s: &Semigroup, text: &str) -> Result<SDegree> {
    let m: SDegree = text.parse()?;
    s.check_degree(&m)?;
    Ok(m)
}

fn parse_exponents(s: &Semigroup, text: &str) -> Result<Monomial> {
    let exps = text
        .trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
        .split(',')
        .map(|t| t.trim().parse::<u32>().with_context(|| format!("invalid exponent `{t}`")))
        .collect::<Result<Vec<_>>>()?;
    let a = Monomial::new(exps);
    s.check_monomial(&a)?;
    Ok(a)
}

fn format_poly<F: Field>(f: &F, order: TermOrder, p: &Polynomial<F::Elem>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.sorted_terms(order).into_iter().enumerate() {
        let mut c = f.format(c);
        let neg = c.starts_with('-');
        if neg {
            c.remove(0);
        }
        if let Some(n) = c.strip_suffix("/1") {
            c = n.to_string();
        }
        out.push_str(match (i, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        });
        match (c == "1", m.is_one()) {
            (true, _) => out.push_str(&m.to_string()),
            (false, true) => out.push_str(&c),
            (false, false) => out.push_str(&format!("{c}*{m}")),
        }
    }
    out
}

fn format_element<F: Field>(f: &F, order: TermOrder, v: &ModuleElement<F::Elem>) -> String {
    let parts: Vec<String> = v
        .entries()
        .map(|(slot, p)| match slot {
            Slot::Ring => format_poly(f, order, p),
            Slot::Gen(id) => format!("({}) {id}", format_poly(f, order, p)),
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn report_json(r: &VerificationReport) -> Value {
    json!({
        "passed": r.passed(),
        "checks": r.checks.iter().map(|c| json!({ "name": c.name, "violations": c.violations })).collect::<Vec<_>>(),
    })
}

struct Runner<'a, F: Field> {
    cli: &'a Cli,
    order: TermOrder,
    f: F,
    fragment: Option<Value>,
}

impl<'a, F: Field> Runner<'a, F> {
    fn new(cli: &'a Cli, order: TermOrder, f: F, fragment: Option<Value>) -> Self {
        Runner { cli, order, f, fragment }
    }

    fn json(&self) -> bool {
        self.cli.global.format == Format::Json
    }

    fn config(&self) -> Value {
        config_to_json(self.order, self.f.kind())
    }

    fn emit(&self, mut v: Value, text: impl FnOnce() -> String) {
        if self.json() {
            if let Value::Object(map) = &mut v {
                map.insert("config".into(), self.config());
            }
            println!("{}", serde_json::to_string_pretty(&v).expect("values serialize"));
        } else {
            print!("{}", text());
        }
    }

    fn engine(&self, s: Semigroup) -> Result<Engine<F>> {
        let e = Engine::new(s, self.order, self.f.clone());
        Ok(match &self.cli.global.cache {
            Some(dir) => {
                let store = DiskStore::open(dir).with_context(|| format!("opening cache {}", dir.display()))?;
                e.with_store(Arc::new(store))
            }
            None => e,
        })
    }

    fn run(self) -> Result<Outcome> {
        match &self.cli.command {
            Command::Validate { file } => self.validate(file),
            Command::Fiber { file, degree } => self.fiber(file, degree),
            Command::Nabla { file, degree } => self.nabla(file, degree),
            Command::Delta { file, degree } => self.delta(file, degree),
            Command::Betti { file, degree, jmax, delta_crosscheck } => self.betti(file, degree, *jmax, *delta_crosscheck),
            Command::Minimalize { file, lead, trail } => self.minimalize(file, lead, trail),
            Command::Harvest { file, degree, max_level } => self.harvest(file, degree, *max_level),
            Command::Scan { file, bound, jmax, delta_crosscheck } => self.scan(file, bound, *jmax, *delta_crosscheck),
            Command::Verify { file, .. } => self.verify(file),
        }
    }

    fn validate(&self, file: &Path) -> Result<Outcome> {
        let s = load_semigroup(file)?;
        let w = s.grading();
        self.emit(
            json!({
                "combinatorially_finite": true,
                "dim": s.dim(),
                "generators": s.nvars(),
                "rank": s.matrix().rank(),
                "grading": w.to_string_list(),
            }),
            || format!("combinatorially finite, w = {w}\n"),
        );
        Ok(Outcome::Ok)
    }

    fn fiber(&self, file: &Path, degree: &str) -> Result<Outcome> {
        let s = load_semigroup(file)?;
        let m = parse_degree(&s, degree)?;
        let fiber = s.fiber(&m, self.order);
        self.emit(
            json!({
                "degree": js::degree_to_json(&m),
                "size": fiber.len(),
                "fiber": fiber.iter().map(js::monomial_to_json).collect::<Vec<_>>(),
            }),
            || fiber.iter().map(|a| format!("{a}\n")).collect(),
        );
        Ok(Outcome::Ok)
    }

    fn nabla(&self, file: &Path, degree: &str) -> Result<Outcome> {
        let s = load_semigroup(file)?;
        let m = parse_degree(&s, degree)?;
        let k = build_nabla(&s, &m, self.order);
        self.emit(js::nabla_to_json(&k), || {
            let mut out = format!("vertices of nabla at {m}:\n");
            for (i, a) in k.vertices().iter().enumerate() {
                out.push_str(&format!("  {i}: {a}\n"));
            }
            out.push_str("facets:\n");
            for face in k.facets() {
                out.push_str(&format!("  {face:?}\n"));
            }
            out
        });
        Ok(Outcome::Ok)
    }

    fn delta(&self, file: &Path, degree: &str) -> Result<Outcome> {
        let s = load_semigroup(file)?;
        let m = parse_degree(&s, degree)?;
        let d = build_delta(&s, &m);
        self.emit(js::delta_to_json(&d), || {
            let mut out = format!("delta at {m} (variables numbered from 1)\n");
            out.push_str(&format!("  empty face: {}\n", d.has_empty_face()));
            for j in 0..d.nvars() {
                for face in d.faces_of_dim(j) {
                    let names: Vec<String> = face.vertices().iter().map(|i| format!("x{}", i + 1)).collect();
                    out.push_str(&format!("  {{{}}}\n", names.join(",")));
                }
            }
            out
        });
        Ok(Outcome::Ok)
    }

    fn betti(&self, file: &Path, degree: &str, jmax: usize, crosscheck: bool) -> Result<Outcome> {
        let s = load_semigroup(file)?;
        let m = parse_degree(&s, degree)?;
        let mut engine = self.engine(s.clone())?;
        let betti: Vec<usize> = (0..=jmax).map(|j| engine.multigraded_betti(&m, j)).collect();
        let delta: Option<Vec<usize>> = crosscheck.then(|| {
            let d = build_delta(&s, &m);
            (0..=jmax).map(|j| betti_reduced(&self.f, &d, j)).collect()
        });
        let agree = delta.as_ref().is_none_or(|d| *d == betti);
        self.emit(
            json!({ "degree": js::degree_to_json(&m), "betti": betti, "delta": delta, "agree": agree }),
            || {
                let mut out = format!("degree {m}\n");
                for (j, b) in betti.iter().enumerate() {
                    match &delta {
                        Some(d) => out.push_str(&format!("  j={j}: {b}  (delta: {})\n", d[j])),
                        None => out.push_str(&format!("  j={j}: {b}\n")),
                    }
                }
                if delta.is_some() {
                    out.push_str(if agree { "crosscheck OK\n" } else { "crosscheck FAILED\n" });
                }
                out
            },
        );
        Ok(if agree { Outcome::Ok } else { Outcome::CheckFailed })
    }

    fn minimalize(&self, file: &Path, lead: &str, trail: &str) -> Result<Outcome> {
        let s = load_semigroup(file)?;
        let g = Binomial::new(&s, parse_exponents(&s, lead)?, parse_exponents(&s, trail)?)?;
        let mut engine = self.engine(s)?;
        let d = engine.minimalize_binomial(&g)?;
        let input = ModuleElement::ring(g.to_polynomial(&self.f));
        let reconstructs = engine.reconstruct(&d)? == input;
        let records: Vec<_> = d.generators().filter_map(|id| engine.registry().get(id)).collect();
        self.emit(
            json!({
                "input": { "lead": js::monomial_to_json(g.lead()), "trail": js::monomial_to_json(g.trail()) },
                "decomposition": js::decomposition_to_json(&self.f, self.order, &d),
                "generators": records.iter().map(|r| js::record_to_json(&self.f, self.order, r)).collect::<Vec<_>>(),
                "reconstructs": reconstructs,
            }),
            || {
                let mut out = format!("{g} =\n");
                for (id, p) in &d.terms {
                    let value = engine.registry().get(id).map(|r| format_element(&self.f, self.order, &r.value));
                    out.push_str(&format!(
                        "  ({}) * [{}]   {id}\n",
                        format_poly(&self.f, self.order, p),
                        value.unwrap_or_default()
                    ));
                }
                out.push_str(if reconstructs { "reconstruction OK\n" } else { "reconstruction FAILED\n" });
                out
            },
        );
        Ok(if reconstructs { Outcome::Ok } else { Outcome::CheckFailed })
    }

    fn print_fragment(&self, frag: &ResolutionFragment<F::Elem>, report: &VerificationReport) {
        let mut v = js::fragment_to_json(&self.f, frag);
        v["verification"] = report_json(report);
        self.emit(v, || {
            let mut out = format!("degree {}, shape {}\n", frag.degree, frag.shape());
            for (j, level) in frag.levels.iter().enumerate() {
                out.push_str(&format!("level {j}: {} generators\n", level.len()));
                for r in level {
                    out.push_str(&format!("  {} = {}\n", r.id, format_element(&self.f, self.order, &r.value)));
                }
            }
            out.push_str(&report.to_string());
            out
        });
    }

    fn harvest(&self, file: &Path, degree: &str, max_level: usize) -> Result<Outcome> {
        let s = load_semigroup(file)?;
        let m = parse_degree(&s, degree)?;
        let mut engine = self.engine(s)?;
        let frag = engine.harvest(&m, max_level)?;
        let report = engine.verify_fragment(&frag);
        self.print_fragment(&frag, &report);
        Ok(if report.passed() { Outcome::Ok } else { Outcome::CheckFailed })
    }

    fn scan(&self, file: &Path, bound: &str, jmax: usize, crosscheck: bool) -> Result<Outcome> {
        let s = load_semigroup(file)?;
        let bound = parse_rational(bound)?;
        let mut engine = self.engine(s)?;
        let report = engine.scan(&bound, jmax, crosscheck);
        let degrees = |v: Vec<&SDegree>| v.into_iter().map(js::degree_to_json).collect::<Vec<_>>();
        let disagreements = report.disagreements();
        let ok = disagreements.is_empty();
        self.emit(
            json!({
                "bound": report.bound.to_string(),
                "jmax": jmax,
                "top_dim": report.top_dim,
                "rows": report.rows.iter().map(|r| json!({
                    "degree": js::degree_to_json(&r.degree),
                    "weight": r.weight.to_string(),
                    "betti": r.betti,
                    "delta": r.delta,
                    "top": r.top,
                })).collect::<Vec<_>>(),
                "minimal_generator_degrees": degrees(report.nonzero(0)),
                "obstructions": degrees(report.obstructions()),
                "disagreements": degrees(disagreements.clone()),
            }),
            || {
                let mut out = format!("degrees with w.m <= {}: {}\n", report.bound, report.rows.len());
                for r in report.rows.iter().filter(|r| r.betti.iter().any(|&b| b > 0) || r.top > 0) {
                    out.push_str(&format!("  {} w={} betti={:?} top={}\n", r.degree, r.weight, r.betti, r.top));
                }
                let obs = report.obstructions();
                if obs.is_empty() {
                    out.push_str(&format!("no nonzero H_{} in range\n", report.top_dim));
                } else {
                    let list: Vec<String> = obs.iter().map(|m| m.to_string()).collect();
                    out.push_str(&format!("nonzero H_{} at {}\n", report.top_dim, list.join(" ")));
                }
                if crosscheck {
                    out.push_str(&format!("crosscheck disagreements: {}\n", disagreements.len()));
                }
                out
            },
        );
        Ok(if ok { Outcome::Ok } else { Outcome::CheckFailed })
    }

    fn verify(&self, file: &Path) -> Result<Outcome> {
        let s = load_semigroup(file)?;
        let Some(v) = &self.fragment else { bail!("no fragment given") };
        let frag = js::fragment_from_json(&self.f, v)?;
        s.check_degree(&frag.degree)?;
        let mut engine = self.engine(s)?;
        let report = engine.verify_fragment(&frag);
        self.emit(json!({ "degree": js::degree_to_json(&frag.degree), "verification": report_json(&report) }), || {
            report.to_string()
        });
        Ok(if report.passed() { Outcome::Ok } else { Outcome::CheckFailed })
    }
}
