//! Command-line front end. Every subcommand prints one JSON document on
//! stdout; errors are JSON too and set the exit code (1 malformed input,
//! 2 domain error, 3 Gröbner budget exceeded).

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactpoly::{format_rational, Polynomial, Ring, RingContext};
use crate::groebner::{
    elimination_ideal, ideal_membership, radical_membership, Budget, Ideal, IdealJson, MonomialOrder,
};
use crate::groupoid::{self, orbit_contains, orbit_description, point_from_json, Point};
use crate::invariants::{ev_map, is_w_invariant, supersymmetry_check, t_element, Setting, Space};
use crate::rootdata::{build_root_system, Family, Root, RootSystem, SuperType};
use crate::selftest;
use crate::sgeom::{orbit_closure_ideal, s_closure, ClosedSet, ZConvention};

#[derive(Parser, Debug)]
#[command(name = "supergeom", version, about = "Supersymmetric invariants, Weyl groupoid orbits and S-closures")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by all subcommands.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Family (`gl`, `sl`, `osp`, `p`, `q`), a name like `gl(2|1)`, or a JSON descriptor.
    #[arg(long = "type", global = true)]
    pub ty: Option<String>,
    /// First index; for `osp` the orthogonal dimension.
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Second index; for `osp` the symplectic rank, so `osp(5|4)` is `--m 5 --n 2`.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// `additive` (the Cartan subalgebra) or `torus`.
    #[arg(long, global = true, default_value = "additive")]
    pub space: Space,
    #[arg(long, global = true, env = "SUPERGEOM_MAX_PAIRS")]
    pub max_pairs: Option<usize>,
    #[arg(long, global = true, env = "SUPERGEOM_MAX_DEGREE")]
    pub max_degree: Option<i64>,
    #[arg(long, global = true, default_value = "beta")]
    pub z_convention: ZConvention,
    /// Write the JSON here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Add wall-clock seconds to the output (breaks byte-identical reruns).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Roots, Weyl group, Ω and defect.
    Describe,
    /// Membership of a polynomial in the supersymmetric invariants.
    Check {
        #[arg(long)]
        poly: String,
        /// Test every root of Ω instead of orbit representatives.
        #[arg(long)]
        strict: bool,
    },
    /// The element T.
    Telem,
    /// The evaluation map into the rank-lowered algebra.
    Ev {
        #[arg(long)]
        poly: String,
    },
    /// Atypicality and maximal iso-set at a point.
    Atyp {
        #[arg(long)]
        point: String,
    },
    /// Orbit description at a point.
    Orbit {
        #[arg(long)]
        point: String,
    },
    /// Whether two points lie in one groupoid orbit.
    Equiv {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Reduced Gröbner basis, membership and elimination.
    Groebner {
        /// Ideal JSON (`{"ring": .., "generators": [..]}`), a file, or `-` for stdin.
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "grevlex")]
        order: String,
        #[arg(long)]
        member: Option<String>,
        #[arg(long)]
        radical: Option<String>,
        /// Comma-separated variables to eliminate.
        #[arg(long)]
        eliminate: Option<String>,
    },
    /// S-closure of a W-invariant closed set.
    Sclosure {
        /// `{"generators": [..]}` in the setting's ring, `{"points": [..]}`, a file, or `-`.
        #[arg(long)]
        ideal: String,
    },
    /// Equations of an orbit closure.
    Orbitideal {
        #[arg(long)]
        point: String,
    },
    /// Runs the acceptance checks.
    Selftest {
        #[arg(long)]
        criterion: Option<u32>,
        /// Plain-text table instead of JSON.
        #[arg(long)]
        table: bool,
    },
}

/// Output of one invocation: exit code and the text for stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl RunConfig {
    pub fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(p) = self.max_pairs {
            b.max_pairs = p;
        }
        if let Some(d) = self.max_degree {
            b.max_degree = d;
        }
        b
    }

    pub fn super_type(&self) -> Result<SuperType> {
        let ty = self.ty.as_deref().ok_or_else(|| Error::InvalidArgument("--type is required".into()))?;
        let t = ty.trim();
        let parsed = if t.starts_with('{') {
            serde_json::from_str::<SuperType>(t)?
        } else if t.contains('(') {
            t.parse()?
        } else {
            let family: Family = serde_json::from_value(json!(t.to_ascii_lowercase()))
                .map_err(|_| Error::InvalidType(format!("unknown family {t:?}")))?;
            let n = self.n.ok_or_else(|| Error::InvalidArgument("--n is required".into()))?;
            let m = match family {
                Family::P | Family::Q => 0,
                _ => self.m.ok_or_else(|| Error::InvalidArgument("--m is required".into()))?,
            };
            SuperType { family, m, n }
        };
        parsed.validate()?;
        Ok(parsed)
    }

    pub fn setting(&self) -> Result<Setting> {
        Setting::new(self.super_type()?, self.space)
    }

    /// Setting for the groupoid commands, which also run on `p(n)` additive.
    pub fn groupoid_setting(&self) -> Result<Setting> {
        Setting::experimental(self.super_type()?, self.space)
    }
}

/// Inline JSON, `-` for stdin, or a file path.
fn payload(arg: &str) -> Result<Value> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        s
    } else if matches!(arg.trim_start().chars().next(), Some('{' | '[' | '"')) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::InvalidArgument(format!("{arg}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

fn point(s: &Setting, arg: &str) -> Result<Point> {
    point_from_json(s, &payload(arg)?)
}

fn labels(rs: &RootSystem, roots: &[Root]) -> Vec<String> {
    roots.iter().map(|r| rs.root_label(r)).collect()
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(Polynomial::to_string).collect()
}

fn order(name: &str, ring: &Ring) -> Result<MonomialOrder> {
    match name {
        "lex" => Ok(MonomialOrder::Lex),
        "grevlex" => Ok(MonomialOrder::Grevlex),
        other => {
            let front = other
                .strip_prefix("block:")
                .ok_or_else(|| Error::InvalidArgument(format!("unknown order {other:?}")))?;
            let idx = front.split(',').map(|v| var_index(ring, v.trim())).collect::<Result<Vec<_>>>()?;
            Ok(MonomialOrder::block(&idx))
        }
    }
}

fn var_index(ring: &Ring, name: &str) -> Result<usize> {
    ring.vars.iter().position(|v| v == name).ok_or_else(|| Error::InvalidArgument(format!("unknown variable {name:?}")))
}

fn describe(s: &SuperType) -> Result<Value> {
    let rs = build_root_system(*s)?;
    let weyl = rs.weyl_group();
    let chain = rs.standard_chain(rs.defect()).unwrap_or_default();
    Ok(json!({
        "type": s,
        "name": s.to_string(),
        "basis": rs.labels,
        "gram": rs.gram,
        "even": labels(&rs, &rs.even),
        "odd": labels(&rs, &rs.odd),
        "iso": labels(&rs, &rs.iso),
        "omega": labels(&rs, &rs.omega),
        "weyl_order": weyl.len(),
        "weyl_kind": weyl_kind(&rs),
        "defect": rs.defect(),
        "standard_chain": labels(&rs, &chain),
        "variables": {"additive": rs.variable_names(false), "torus": rs.variable_names(true)},
        "root_lattice_only": s.family == Family::Sl,
        "paper_ref": "root data, Weyl group and the set of isotropic roots used by the invariance conditions",
    }))
}

fn weyl_kind(rs: &RootSystem) -> String {
    match rs.ty.family {
        Family::Gl | Family::Sl => format!("S{} x S{}", rs.n_eps, rs.n_delta),
        Family::P | Family::Q => format!("S{}", rs.n_eps),
        Family::Osp if rs.ty.m % 2 == 1 => format!("B{} x C{}", rs.n_eps, rs.n_delta),
        Family::Osp => format!("D{} x C{}", rs.n_eps, rs.n_delta),
    }
}

fn closed_set_input(s: &Setting, v: &Value, budget: &Budget) -> Result<ClosedSet> {
    if let Some(points) = v.get("points") {
        let pts = points
            .as_array()
            .ok_or_else(|| Error::Json("points must be an array".into()))?
            .iter()
            .map(|p| point_from_json(s, p))
            .collect::<Result<Vec<_>>>()?;
        return ClosedSet::from_points(s, &pts, budget);
    }
    let gens = v
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("expected \"generators\" or \"points\"".into()))?;
    if let Some(ring) = v.get("ring") {
        let r: RingContext = serde_json::from_value(ring.clone())?;
        if r.vars != s.ring().vars {
            return Err(Error::RingMismatch(format!("ideal ring {:?} is not {:?}", r.vars, s.ring().vars)));
        }
    }
    let polys = gens
        .iter()
        .map(|g| g.as_str().ok_or_else(|| Error::Json("generators must be strings".into())).and_then(|t| s.parse(t)))
        .collect::<Result<Vec<_>>>()?;
    ClosedSet::new(Ideal::new(s.ring(), polys)?, s, budget)
}

fn execute(cfg: &RunConfig, cmd: &Command) -> Result<Value> {
    let budget = cfg.budget();
    let mut out = match cmd {
        Command::Describe => describe(&cfg.super_type()?)?,
        Command::Check { poly, strict } => {
            let s = cfg.setting()?;
            let f = s.parse(poly)?;
            let m = supersymmetry_check(&f, &s, *strict)?;
            json!({
                "member": m.member,
                "witness": m.witness,
                "w_invariant": is_w_invariant(&f, &s)?,
                "paper_ref": "supersymmetric invariants: W-invariant functions whose restriction to each isotropic hyperplane is constant along the root",
            })
        }
        Command::Telem => {
            let s = cfg.setting()?;
            let t = t_element(&s)?;
            let ev = match ev_map(&t.poly, &s) {
                Ok(v) => json!(v.to_string()),
                Err(Error::RankTooSmall(_)) => Value::Null,
                Err(e) => return Err(e),
            };
            json!({
                "t": t.poly.to_string(),
                "ev_t": ev,
                "paper_ref": "the distinguished invariant T whose multiples are the kernel of the evaluation map",
            })
        }
        Command::Ev { poly } => {
            let s = cfg.setting()?;
            let f = s.parse(poly)?;
            let reduced = s.reduced()?;
            json!({
                "value": ev_map(&f, &s)?.to_string(),
                "target": reduced.ty().to_string(),
                "paper_ref": "evaluation map to the invariants of the rank-lowered superalgebra",
            })
        }
        Command::Atyp { point: p } => {
            let s = cfg.groupoid_setting()?;
            let p = point(&s, p)?;
            let (e, f) = groupoid::maximal_isoset_at(&s, &p)?;
            let rs = s.rs();
            json!({
                "atyp": f.len(),
                "E": labels(rs, &e),
                "F": labels(rs, &f),
                "paper_ref": "atypicality is the size of a maximal iso-set of roots whose hyperplanes contain the point",
            })
        }
        Command::Orbit { point: p } => {
            let s = cfg.groupoid_setting()?;
            let p = point(&s, p)?;
            let mut v = orbit_description(&s, &p)?.to_json(&s);
            v["paper_ref"] = json!("groupoid orbits are W-translates of the point moved along a maximal iso-set; their dimension is the atypicality");
            v
        }
        Command::Equiv { a, b } => {
            let s = cfg.groupoid_setting()?;
            let (pa, pb) = (point(&s, a)?, point(&s, b)?);
            let w = orbit_contains(&s, &pa, &pb)?;
            json!({
                "equivalent": w.is_some(),
                "witness": w.map(|w| w.to_json(&s)),
                "paper_ref": "two points lie in one groupoid orbit exactly when every supersymmetric invariant agrees on them",
            })
        }
        Command::Groebner { ideal, order: ord, member, radical, eliminate } => {
            let j: IdealJson = serde_json::from_value(payload(ideal)?)?;
            let i = Ideal::from_json(&j)?;
            let o = order(ord, i.ring())?;
            o.validate(i.ring().arity())?;
            let basis = i.groebner(&o, &budget)?;
            let mut v = json!({
                "ring": i.ring().vars,
                "order": o.to_string(),
                "basis": strings(&basis),
                "is_unit": i.is_unit(&budget)?,
                "paper_ref": "Groebner basis back end for elimination and radical membership",
            });
            if let Some(f) = member {
                let f = Polynomial::parse(i.ring(), f)?;
                v["member"] = json!(ideal_membership(&f, &i, &budget)?);
            }
            if let Some(f) = radical {
                let f = Polynomial::parse(i.ring(), f)?;
                v["radical_member"] = json!(radical_membership(&f, &i, &budget)?);
            }
            if let Some(vars) = eliminate {
                let drop = vars.split(',').map(|x| var_index(i.ring(), x.trim())).collect::<Result<Vec<_>>>()?;
                let e = elimination_ideal(&i, &drop, &budget)?;
                v["elimination"] = json!({"ring": e.ring().vars, "basis": e.canonical_form(&budget)?});
            }
            v
        }
        Command::Sclosure { ideal } => {
            let s = cfg.setting()?;
            let v = closed_set_input(&s, &payload(ideal)?, &budget)?;
            let res = s_closure(&v, &s, cfg.z_convention, &budget)?;
            let levels = res
                .levels
                .iter()
                .enumerate()
                .map(|(q, l)| Ok(json!({"q": q, "generators": l.canonical_form(&budget)?})))
                .collect::<Result<Vec<_>>>()?;
            json!({
                "type": s.ty().to_string(),
                "space": s.space(),
                "z_convention": cfg.z_convention,
                "atyp": res.atyp,
                "levels": levels,
                "closure": res.closure.canonical_form(&budget)?,
                "paper_ref": "the S-closure of a W-invariant closed set is the union of its level sets, computed by elimination",
            })
        }
        Command::Orbitideal { point: p } => {
            let s = cfg.setting()?;
            let p = point(&s, p)?;
            let o = orbit_closure_ideal(&s, &p, &budget)?;
            json!({
                "point": p.iter().map(format_rational).collect::<Vec<_>>(),
                "generators": o.ideal.canonical_form(&budget)?,
                "components": o.components,
                "symmetrized": strings(&o.symmetrized),
                "flagged": o.flagged,
                "paper_ref": "equations of an orbit closure, symmetrized into supersymmetric invariants where possible",
            })
        }
        Command::Selftest { criterion, .. } => {
            let reports = match criterion {
                Some(id) => vec![selftest::run_seeded(*id, &budget, cfg.seed)],
                None => selftest::run_all_seeded(&budget, cfg.seed),
            };
            let reports: Vec<Value> = reports
                .into_iter()
                .map(|r| {
                    let mut v = json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail});
                    if cfg.timing {
                        v["seconds"] = json!(r.seconds);
                    }
                    v
                })
                .collect();
            json!({
                "passed": reports.iter().all(|r| r["passed"] == json!(true)),
                "criteria": reports,
                "paper_ref": "acceptance checks",
            })
        }
    };
    if matches!(cmd, Command::Atyp { .. } | Command::Orbit { .. } | Command::Equiv { .. })
        && cfg.groupoid_setting()?.is_experimental()
    {
        out["experimental"] = json!(true);
    }
    Ok(out)
}

fn error_json(e: &Error) -> Value {
    let kind = format!("{e:?}");
    let kind = kind.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
    json!({"error": kind, "message": e.to_string(), "exit_code": e.exit_code()})
}

fn table(v: &Value) -> String {
    let mut out = String::new();
    for c in v["criteria"].as_array().into_iter().flatten() {
        let tag = if c["passed"] == json!(true) { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{tag}  {:>2}  {}  {}\n",
            c["id"],
            c["name"].as_str().unwrap_or(""),
            c["detail"].as_str().unwrap_or("")
        ));
    }
    out
}

/// Runs one parsed invocation.
pub fn dispatch(cli: &Cli) -> Outcome {
    let start = Instant::now();
    match execute(&cli.config, &cli.command) {
        Ok(mut v) => {
            let failed = v.get("passed") == Some(&json!(false));
            if cli.config.timing {
                v["seconds"] = json!(start.elapsed().as_secs_f64());
            }
            let stdout = match cli.command {
                Command::Selftest { table: true, .. } => table(&v),
                _ => serde_json::to_string_pretty(&v).expect("JSON values serialize") + "\n",
            };
            Outcome { code: if failed { 2 } else { 0 }, stdout }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: serde_json::to_string_pretty(&error_json(&e)).expect("JSON values serialize") + "\n",
        },
    }
}

/// Parses `args` (program name first) and runs. Usage errors exit 1.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli),
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            Outcome { code, stdout: e.render().to_string() }
        }
    }
}

/// Entry point of the binary: parses the process arguments, runs, and
/// writes to `--output` or stdout. Returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<T> = args.into_iter().collect();
    let output = Cli::try_parse_from(args.clone()).ok().and_then(|c| c.config.output);
    let out = run(args);
    let written = match &output {
        Some(path) if out.code == 0 => std::fs::write(path, &out.stdout),
        _ => {
            print!("{}", out.stdout);
            Ok(())
        }
    };
    match written {
        Ok(()) => out.code,
        Err(e) => {
            eprintln!("cannot write output: {e}");
            1
        }
    }
}
