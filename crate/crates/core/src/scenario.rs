//! Scenario files: a field, the split set T, optional pinned constants, and
//! the report combining criteria, the TV solution and the assembled bounds.
//!
//! Every report carries two runs. The pinned run applies the file's pins
//! (extra fixed primes, exclusions, capacity overrides, ε, signature); the
//! derived run uses only what follows from the field and T.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::PrimePower;
use crate::error::{Error, Result};
use crate::fields::{biquadratic_field, FactoredInt, FieldDescriptor, FieldShape, SplitType};
use crate::towers::{critere_real_quadratic, gs_verdict, GsVerdict, Place, PlaceSet, TowerScenario};
use crate::tv::{
    alpha_from_parts, candidates_from_field, mean_exponent_upper, optimize, CapacityOverride,
    FixedPhi, TVProblem, TVSolution,
};

pub const SCHEMA_VERSION: u32 = 1;
const DEFAULT_CANDIDATE_BOUND: u64 = 1000;
const MAX_CANDIDATE_BOUND: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    Quadratic { radicand_factors: Vec<i64> },
    Biquadratic { d1_factors: Vec<i64>, d2_factors: Vec<i64> },
}

impl FieldSpec {
    pub fn build(&self) -> Result<FieldDescriptor> {
        match self {
            FieldSpec::Quadratic { radicand_factors } => {
                FieldDescriptor::quadratic_from_factors(radicand_factors)
            }
            FieldSpec::Biquadratic { d1_factors, d2_factors } => biquadratic_field(
                &FactoredInt::from_factors(d1_factors)?,
                &FactoredInt::from_factors(d2_factors)?,
            ),
        }
    }

    /// The quadratic field `k` the tower is built over (`Q(√d1)`).
    pub fn base(&self) -> Result<Option<FieldDescriptor>> {
        match self {
            FieldSpec::Quadratic { .. } => Ok(None),
            FieldSpec::Biquadratic { d1_factors, .. } => {
                Ok(Some(FieldDescriptor::quadratic_from_factors(d1_factors)?))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceSpec {
    pub norm: u64,
    #[serde(default = "one")]
    pub count: u32,
    #[serde(default)]
    pub split: Option<SplitType>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedSpec {
    pub norm: u64,
    pub x_times_g: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideSpec {
    pub ell: u64,
    pub norm: u64,
    pub epsilon_times_g: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TvSpec {
    pub x0_times_g: Option<f64>,
    pub x1_times_g: Option<f64>,
    #[serde(default)]
    pub fixed: Vec<FixedSpec>,
    /// Primes whose places are fixed at `count/g`, besides those of T.
    #[serde(default)]
    pub extra_fixed_primes: Vec<u64>,
    #[serde(default)]
    pub excluded_norms: Vec<u64>,
    #[serde(default)]
    pub capacity_overrides: Vec<OverrideSpec>,
    pub candidate_bound: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Signature {
    pub r1: u32,
    pub r2: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GsSpec {
    pub d: u64,
    pub r_upper: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub version: u32,
    pub label: String,
    pub p: u64,
    pub field: FieldSpec,
    #[serde(default, rename = "S")]
    pub s: Vec<PlaceSpec>,
    /// Rational primes below the places of T.
    #[serde(default, rename = "T")]
    pub t: Vec<u64>,
    #[serde(default)]
    pub tv: TvSpec,
    pub epsilon_linear: Option<f64>,
    /// Signature used in the archimedean terms of α(B, K, S).
    pub archimedean: Option<Signature>,
    #[serde(rename = "coarse_B")]
    pub coarse_b: Option<f64>,
    #[serde(default)]
    pub a_sigma: f64,
    pub g_override: Option<f64>,
    #[serde(rename = "C0")]
    pub c0: Option<f64>,
    pub gs: Option<GsSpec>,
    /// Printed figures the run is compared against; not used in computation.
    #[serde(default)]
    pub reference_values: BTreeMap<String, f64>,
    /// "pinned" or "derived" for each constant that appears in the file.
    #[serde(default)]
    pub provenance: BTreeMap<String, String>,
}

/// Parses a scenario, reporting the JSON path and position of any error.
pub fn parse_scenario(text: &str) -> Result<ScenarioFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: ScenarioFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        // serde_json's message already ends with the line and column
        Error::Schema(format!("at `{path}`: {inner}"))
    })?;
    if file.version != SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "at `version`: unsupported version {} (expected {SCHEMA_VERSION})",
            file.version
        )));
    }
    for (k, v) in &file.provenance {
        if v != "pinned" && v != "derived" {
            return Err(Error::Schema(format!(
                "at `provenance.{k}`: expected \"pinned\" or \"derived\", found {v:?}"
            )));
        }
    }
    Ok(file)
}

pub const PRESET_NAMES: [&str; 6] = ["1", "2", "3", "4", "5", "intro"];

pub fn preset_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "1" => include_str!("../scenarios/ex1.json"),
        "2" => include_str!("../scenarios/ex2.json"),
        "3" => include_str!("../scenarios/ex3.json"),
        "4" => include_str!("../scenarios/ex4.json"),
        "5" => include_str!("../scenarios/ex5.json"),
        "intro" => include_str!("../scenarios/intro.json"),
        _ => return None,
    })
}

pub fn preset(name: &str) -> Result<ScenarioFile> {
    let text = preset_text(name)
        .ok_or_else(|| Error::Domain(format!("no preset named {name:?}")))?;
    parse_scenario(text)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldReport {
    pub label: String,
    pub degree: u32,
    pub r1: u32,
    pub r2: u32,
    pub abs_disc: String,
    pub abs_disc_factored: String,
    pub genus: f64,
    pub g_used: f64,
    pub root_discriminant: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CritereReport {
    pub rho: i64,
    pub t_dec: i64,
    pub t_total: i64,
    pub holds: bool,
    /// The same test with `|T|` counted as places of `k` instead of rational primes.
    pub t_places_k: i64,
    pub holds_place_count: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GsReport {
    pub d: u64,
    pub r_upper: u64,
    pub verdict: GsVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TvReport {
    pub candidate_bound: u64,
    pub x0: f64,
    pub x1: f64,
    pub fixed_norms: Vec<(u64, f64)>,
    pub budget: f64,
    /// `budget · g`
    pub budget_times_g: f64,
    pub ell_star_0: u64,
    pub alpha: f64,
    pub remainder_times_g: f64,
    pub sum_b_times_g: f64,
    pub sum_b_bound: f64,
    pub b_upper: f64,
    pub prefix_len: usize,
    /// Totally split primes in the prefix.
    pub split_prefix_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub epsilon: f64,
    pub archimedean: Signature,
    pub tv: TvReport,
    pub alpha_value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoarseReport {
    pub b: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pin {
    pub name: String,
    pub value: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub label: String,
    pub p: u64,
    pub field: FieldReport,
    pub t_places: Vec<Place>,
    pub epsilon_derived: f64,
    pub critere: Option<CritereReport>,
    pub gs: Option<GsReport>,
    pub pinned: RunReport,
    pub derived: Option<RunReport>,
    pub derived_error: Option<String>,
    pub coarse: Option<CoarseReport>,
    pub pins: Vec<Pin>,
    pub reference_values: BTreeMap<String, f64>,
}

/// Places of `field` above each rational prime of `primes`.
fn places_above(field: &FieldDescriptor, primes: &[u64]) -> Result<Vec<Place>> {
    let mut out = Vec::new();
    for &ell in primes {
        let dec = field.decomposition(ell)?;
        out.push(Place {
            norm: PrimePower::new(ell, dec.f)?.value,
            split_in_base: None,
            count: dec.g,
        });
    }
    Ok(out)
}

fn sorted_unique(v: &[u64]) -> Vec<u64> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

struct Context {
    field: FieldDescriptor,
    g: f64,
    log_sqrt_disc_s: f64,
    p: u64,
}

struct RunInputs<'a> {
    fixed_primes: Vec<u64>,
    fixed: &'a [FixedSpec],
    excluded: &'a [u64],
    overrides: &'a [OverrideSpec],
    x0: f64,
    x1: f64,
    epsilon: f64,
    archimedean: Signature,
    a_sigma: f64,
    candidate_bound: u64,
}

fn solve(ctx: &Context, inputs: &RunInputs) -> Result<RunReport> {
    let g = ctx.g;
    let mut fixed = Vec::new();
    for pl in places_above(&ctx.field, &inputs.fixed_primes)? {
        fixed.push(FixedPhi {
            q: PrimePower::from_value(pl.norm)?,
            x: pl.count as f64 / g,
        });
    }
    for f in inputs.fixed {
        fixed.push(FixedPhi {
            q: PrimePower::from_value(f.norm)?,
            x: f.x_times_g / g,
        });
    }
    let capacity_overrides = inputs
        .overrides
        .iter()
        .map(|o| {
            let norm = PrimePower::from_value(o.norm)?;
            if norm.ell != o.ell {
                return Err(Error::Domain(format!("override norm {} is not a power of {}", o.norm, o.ell)));
            }
            Ok(CapacityOverride { ell: o.ell, norm, epsilon: o.epsilon_times_g / g })
        })
        .collect::<Result<Vec<_>>>()?;
    let problem = TVProblem {
        x0: inputs.x0,
        x1: inputs.x1,
        fixed,
        capacity_overrides,
        excluded: inputs.excluded.to_vec(),
    };
    let mut bound = inputs.candidate_bound.max(2);
    let sol: TVSolution = loop {
        let cands = candidates_from_field(&ctx.field, &problem, g, bound)?;
        match optimize(&problem, &cands) {
            Ok(sol) => break sol,
            Err(Error::NeedsLargerEnumeration { .. }) if bound < MAX_CANDIDATE_BOUND => {
                bound = (bound * 4).min(MAX_CANDIDATE_BOUND);
            }
            Err(e) => return Err(e),
        }
    };
    let degree = ctx.field.degree as f64;
    let split_prefix_count = sol
        .prefix
        .iter()
        .filter(|c| c.q.m == 1 && (c.weight * g - degree).abs() < 1e-9)
        .count();
    let tv = TvReport {
        candidate_bound: bound,
        x0: problem.x0,
        x1: problem.x1,
        fixed_norms: problem.fixed.iter().map(|f| (f.q.value, f.x * g)).collect(),
        budget: sol.budget,
        budget_times_g: sol.budget * g,
        ell_star_0: sol.ell_star_0.value,
        alpha: sol.alpha,
        remainder_times_g: sol.remainder * g,
        sum_b_times_g: sol.sum_b_bound * g,
        sum_b_bound: sol.sum_b_bound,
        b_upper: sol.b_upper,
        prefix_len: sol.prefix.len(),
        split_prefix_count,
    };
    let alpha_value = alpha_from_parts(
        sol.b_upper,
        ctx.log_sqrt_disc_s,
        inputs.archimedean.r1 as f64,
        inputs.archimedean.r2 as f64,
    );
    let bound = mean_exponent_upper(inputs.epsilon, ctx.p, alpha_value, inputs.a_sigma)?;
    Ok(RunReport {
        epsilon: inputs.epsilon,
        archimedean: inputs.archimedean,
        tv,
        alpha_value,
        bound,
    })
}

/// ε from genus theory along the T-split tower of `k`: one unit per place
/// of `k` in T and per real place of `k` ramified in `K/k`, less the unit
/// rank correction `r1(k) + r2(k)`.
pub fn derived_epsilon(field: &FieldDescriptor, base: Option<&FieldDescriptor>, t: &[u64]) -> Result<f64> {
    let Some(k) = base else {
        return Ok(t.len() as f64);
    };
    let mut t_k = 0u32;
    for &ell in t {
        t_k += k.decomposition(ell)?.g;
    }
    let arch = if k.r1 > 0 && field.r1 == 0 { k.r1 } else { 0 };
    Ok(t_k as f64 + arch as f64 - (k.r1 + k.r2) as f64)
}

pub fn run_scenario(file: &ScenarioFile) -> Result<Report> {
    let field = file.field.build()?;
    let base = file.field.base()?;
    let s_places = PlaceSet::new(
        file.s
            .iter()
            .map(|p| Place { norm: p.norm, split_in_base: p.split, count: p.count })
            .collect(),
    );
    let t_primes = sorted_unique(&file.t);
    let t_places = places_above(&field, &t_primes)?;
    let tower = TowerScenario {
        p: file.p,
        base_field: field.clone(),
        s: s_places.clone(),
        t: PlaceSet::new(t_places.clone()),
        epsilon_linear: file.epsilon_linear,
        label: file.label.clone(),
    };
    tower.validate()?;

    let g = match file.g_override {
        Some(g) if g > 0.0 => g,
        Some(g) => return Err(Error::Domain(format!("g_override = {g} must be positive"))),
        None => field.genus(),
    };
    let log_s: f64 = s_places
        .places
        .iter()
        .map(|p| p.count as f64 * (p.norm as f64).ln())
        .sum();
    // disc(K,S) also rejects S-places above p
    crate::fields::disc_with_tame_conductor(&field, &s_places, file.p)?;
    let log_sqrt_disc_s = g + 0.5 * log_s;
    let ctx = Context {
        field: field.clone(),
        g,
        log_sqrt_disc_s,
        p: file.p,
    };

    let epsilon_derived = derived_epsilon(&field, base.as_ref(), &t_primes)?;
    let field_sig = Signature { r1: field.r1, r2: field.r2 };
    let tv = &file.tv;
    let x0_derived = field.r1 as f64 / g;
    let x1_derived = field.r2 as f64 / g;
    let bound = tv.candidate_bound.unwrap_or(DEFAULT_CANDIDATE_BOUND);

    let mut pinned_fixed = t_primes.clone();
    pinned_fixed.extend(&tv.extra_fixed_primes);
    let pinned_inputs = RunInputs {
        fixed_primes: sorted_unique(&pinned_fixed),
        fixed: &tv.fixed,
        excluded: &tv.excluded_norms,
        overrides: &tv.capacity_overrides,
        x0: tv.x0_times_g.map_or(x0_derived, |x| x / g),
        x1: tv.x1_times_g.map_or(x1_derived, |x| x / g),
        epsilon: file.epsilon_linear.unwrap_or(epsilon_derived),
        archimedean: file.archimedean.unwrap_or(field_sig),
        a_sigma: file.a_sigma,
        candidate_bound: bound,
    };
    let pinned = solve(&ctx, &pinned_inputs)?;

    let derived_ctx = Context {
        g: field.genus(),
        log_sqrt_disc_s: field.genus() + 0.5 * log_s,
        ..ctx
    };
    let derived_inputs = RunInputs {
        fixed_primes: t_primes.clone(),
        fixed: &[],
        excluded: &[],
        overrides: &[],
        x0: field.r1 as f64 / derived_ctx.g,
        x1: field.r2 as f64 / derived_ctx.g,
        epsilon: epsilon_derived,
        archimedean: field_sig,
        a_sigma: file.a_sigma,
        candidate_bound: bound,
    };
    let (derived, derived_error) = if epsilon_derived > 0.0 {
        match solve(&derived_ctx, &derived_inputs) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, Some(format!("derived epsilon {epsilon_derived} is not positive")))
    };

    let coarse = match file.coarse_b {
        Some(b) => {
            let sig = pinned_inputs.archimedean;
            let a = alpha_from_parts(b, log_sqrt_disc_s, sig.r1 as f64, sig.r2 as f64);
            Some(CoarseReport {
                b,
                bound: mean_exponent_upper(pinned_inputs.epsilon, file.p, a, file.a_sigma)?,
            })
        }
        None => None,
    };

    let critere = match &base {
        Some(k) if k.r1 > 0 => {
            let rho = k.abs_disc.factors.len() as i64;
            let mut t_dec = 0;
            for &ell in &t_primes {
                if k.splitting_type(ell)? == SplitType::Split {
                    t_dec += 1;
                }
            }
            let t_total = t_primes.len() as i64;
            let mut t_places_k = 0;
            for &ell in &t_primes {
                t_places_k += k.decomposition(ell)?.g as i64;
            }
            Some(CritereReport {
                rho,
                t_dec,
                t_total,
                holds: critere_real_quadratic(rho, t_dec, t_total)?,
                t_places_k,
                holds_place_count: critere_real_quadratic(rho, t_dec, t_places_k)?,
            })
        }
        _ => None,
    };
    let gs = file.gs.map(|g| GsReport {
        d: g.d,
        r_upper: g.r_upper,
        verdict: gs_verdict(g.d, g.r_upper),
    });

    Ok(Report {
        version: SCHEMA_VERSION,
        label: file.label.clone(),
        p: file.p,
        field: FieldReport {
            label: field.label.clone(),
            degree: field.degree,
            r1: field.r1,
            r2: field.r2,
            abs_disc: field.abs_disc.value().to_string(),
            abs_disc_factored: field.abs_disc.to_string(),
            genus: field.genus(),
            g_used: g,
            root_discriminant: field.root_discriminant(),
        },
        t_places,
        epsilon_derived,
        critere,
        gs,
        pinned,
        derived,
        derived_error,
        coarse,
        pins: pins_of(file),
        reference_values: file.reference_values.clone(),
    })
}

fn pins_of(file: &ScenarioFile) -> Vec<Pin> {
    let mut pins = Vec::new();
    let mut push = |name: &str, value: serde_json::Value| {
        pins.push(Pin { name: name.to_string(), value });
    };
    if let Some(g) = file.g_override {
        push("g_override", g.into());
    }
    if let Some(e) = file.epsilon_linear {
        push("epsilon_linear", e.into());
    }
    if let Some(s) = file.archimedean {
        push("archimedean", serde_json::json!({"r1": s.r1, "r2": s.r2}));
    }
    if let Some(b) = file.coarse_b {
        push("coarse_B", b.into());
    }
    if let Some(c) = file.c0 {
        push("C0", c.into());
    }
    let tv = &file.tv;
    if let Some(x) = tv.x0_times_g {
        push("x0_times_g", x.into());
    }
    if let Some(x) = tv.x1_times_g {
        push("x1_times_g", x.into());
    }
    if !tv.fixed.is_empty() {
        push("fixed", serde_json::to_value(&tv.fixed).unwrap_or_default());
    }
    if !tv.extra_fixed_primes.is_empty() {
        push("extra_fixed_primes", serde_json::to_value(&tv.extra_fixed_primes).unwrap_or_default());
    }
    if !tv.excluded_norms.is_empty() {
        push("excluded_norms", serde_json::to_value(&tv.excluded_norms).unwrap_or_default());
    }
    if !tv.capacity_overrides.is_empty() {
        push("capacity_overrides", serde_json::to_value(&tv.capacity_overrides).unwrap_or_default());
    }
    if let Some(g) = file.gs {
        push("gs", serde_json::json!({"d": g.d, "r_upper": g.r_upper}));
    }
    pins
}

impl Report {
    pub fn to_text(&self, precision: usize) -> String {
        let pr = precision;
        let mut s = String::new();
        let _ = writeln!(s, "{}  (p = {})", self.label, self.p);
        let f = &self.field;
        let _ = writeln!(s, "field      {}", f.label);
        let _ = writeln!(s, "signature  ({}, {}), degree {}", f.r1, f.r2, f.degree);
        let _ = writeln!(s, "|disc|     {} = {}", f.abs_disc_factored, f.abs_disc);
        let _ = writeln!(s, "g          {:.pr$} (used {:.pr$}), Rd = {:.pr$}", f.genus, f.g_used, f.root_discriminant);
        let t: Vec<String> = self.t_places.iter().map(|p| format!("{}x{}", p.count, p.norm)).collect();
        let _ = writeln!(s, "T places   {}", if t.is_empty() { "none".into() } else { t.join(" ") });
        if let Some(c) = &self.critere {
            let _ = writeln!(
                s,
                "critere    rho={} t_dec={} t={} -> {} (with t={} places of k: {})",
                c.rho,
                c.t_dec,
                c.t_total,
                if c.holds { "infinite T-split tower" } else { "inconclusive" },
                c.t_places_k,
                if c.holds_place_count { "infinite" } else { "inconclusive" }
            );
        }
        if let Some(g) = &self.gs {
            let _ = writeln!(s, "GS         d={} r<={} -> {:?}", g.d, g.r_upper, g.verdict);
        }
        if let Some(c) = &self.coarse {
            let _ = writeln!(s, "coarse     B={} bound {:.pr$}", c.b, c.bound);
        }
        let run = |s: &mut String, name: &str, r: &RunReport| {
            let tv = &r.tv;
            let _ = writeln!(s, "[{name}] eps={} signature=({}, {})", r.epsilon, r.archimedean.r1, r.archimedean.r2);
            let _ = writeln!(s, "  budget*g       {:.pr$}", tv.budget_times_g);
            let _ = writeln!(s, "  ell*_0         {}  (alpha {:.pr$}, remainder*g {:.pr$})", tv.ell_star_0, tv.alpha, tv.remainder_times_g);
            let _ = writeln!(s, "  prefix         {} norms, {} totally split", tv.prefix_len, tv.split_prefix_count);
            let _ = writeln!(s, "  sum b*phi*g   <= {:.pr$}", tv.sum_b_times_g);
            let _ = writeln!(s, "  B(L/K)        <= {:.pr$}", tv.b_upper);
            let _ = writeln!(s, "  mean exponent <= {:.pr$}", r.bound);
        };
        run(&mut s, "pinned", &self.pinned);
        match (&self.derived, &self.derived_error) {
            (Some(r), _) => run(&mut s, "derived", r),
            (None, e) => {
                let _ = writeln!(s, "[derived] unavailable: {}", e.as_deref().unwrap_or("?"));
            }
        }
        if !self.pins.is_empty() {
            let _ = writeln!(s, "pins");
            for p in &self.pins {
                let _ = writeln!(s, "  {} = {}", p.name, p.value);
            }
        }
        if !self.reference_values.is_empty() {
            let _ = writeln!(s, "reference values");
            for (k, v) in &self.reference_values {
                let _ = writeln!(s, "  {k} = {v}");
            }
        }
        s
    }
}

/// Whether the field shape allows scenario runs.
pub fn supports(field: &FieldDescriptor) -> bool {
    !matches!(field.shape, FieldShape::Rational)
}
