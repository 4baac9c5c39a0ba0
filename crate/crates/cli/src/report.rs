//! The `report` command: validation, Gale dual, K₀ and simplicial checks.
//!
//! JSON field order follows the struct declarations, maps are sorted, and
//! timings are only recorded on request, so identical invocations produce
//! identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use toric_k0::exactlinalg::is_prime;
use toric_k0::ktheory::{k0_presentation, k0_structure_with, multiplicity_rank, K0Options, KZeroPresentation, Mode, Rank};
use toric_k0::simplicial::{is_cohen_macaulay, is_shellable_with_cap, Coefficients, ShellingVerdict, DEFAULT_SHELL_CAP};
use toric_k0::stackyfan::{gale_dual, multiplicity, reduce_lattice, underlying_complex, validate, StackyFan};

use crate::fanfile::FanFile;

pub const DEFAULT_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// An integer printed as a JSON number when it fits `i64`, else as a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Section<T> {
    Done(T),
    Skipped { skipped: String },
}

impl<T> Section<T> {
    fn skipped(reason: impl Into<String>) -> Self {
        Section::Skipped { skipped: reason.into() }
    }

    pub fn done(&self) -> Option<&T> {
        match self {
            Section::Done(t) => Some(t),
            Section::Skipped { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: String,
    pub validation: Validation,
    pub dg_beta: Section<DgBeta>,
    pub presentation: Section<Presentation>,
    pub k0: Section<KZero>,
    pub simplicial: Section<Simplicial>,
    pub timings: Section<BTreeMap<String, u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub simplicial: bool,
    pub fan_axiom: Section<bool>,
    pub complete: bool,
    pub messages: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DgBeta {
    pub rank: usize,
    pub torsion: Vec<Int>,
    pub beta_vee: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Presentation {
    pub mode: String,
    pub variables: Vec<String>,
    pub ray_classes: Vec<String>,
    pub relation_count: usize,
    pub relations: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum RankValue {
    Finite(usize),
    Infinite(&'static str),
}

#[derive(Clone, Debug, Serialize)]
pub struct KZero {
    pub finite: bool,
    pub rank: RankValue,
    pub rational_rank: Section<usize>,
    pub invariant_factors: Vec<Int>,
    pub free: bool,
    pub complete: bool,
    /// `|torsion(N)| · Σ mult(σ)` over the maximal cones.
    pub multiplicity_rank: Int,
    pub groebner_basis_size: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Shelling {
    Shellable { witness: Vec<Vec<usize>> },
    NotShellable { reason: String },
    Undecided { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Simplicial {
    pub vertices: usize,
    pub facets: usize,
    pub minimal_nonfaces: Vec<Vec<usize>>,
    pub shellable: Section<Shelling>,
    pub cm: BTreeMap<String, bool>,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    /// Replaces the default prime list when set.
    pub primes: Option<Vec<u64>>,
    pub shellability: bool,
    pub mode: Mode,
    pub shell_cap: usize,
    pub timings: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { primes: None, shellability: true, mode: Mode::default(), shell_cap: DEFAULT_SHELL_CAP, timings: false }
    }
}

/// Builds the report. The flag is false when the fan is invalid; every
/// section after validation is then marked skipped.
pub fn build_report(file: &FanFile, fan: &StackyFan, opts: &ReportOptions) -> (Report, bool) {
    let mut clock = Clock::new(opts.timings);
    let diag = validate(fan);
    clock.lap("validate");
    let validation = Validation {
        valid: diag.valid,
        simplicial: diag.simplicial,
        fan_axiom: match diag.fan_axiom {
            Some(b) => Section::Done(b),
            None => Section::skipped(format!("more than {} rays", toric_k0::stackyfan::FAN_AXIOM_RAY_CAP)),
        },
        complete: diag.complete,
        messages: diag.messages.clone(),
    };
    if !diag.valid {
        let why = "fan is invalid";
        let report = Report {
            name: file.name.clone(),
            validation,
            dg_beta: Section::skipped(why),
            presentation: Section::skipped(why),
            k0: Section::skipped(why),
            simplicial: Section::skipped(why),
            timings: clock.finish(),
        };
        return (report, false);
    }

    let dg_beta = match gale_dual(fan) {
        Ok(g) => Section::Done(DgBeta {
            rank: g.group().rank,
            torsion: ints(&g.group().invariant_factors),
            beta_vee: g.beta_vee.iter().map(|b| ints(b)).collect(),
        }),
        Err(e) => Section::skipped(e.to_string()),
    };
    clock.lap("gale_dual");

    let presentation = match k0_presentation(fan, opts.mode) {
        Ok(p) => Section::Done(describe_presentation(&p)),
        Err(e) => Section::skipped(e.to_string()),
    };
    let k0_opts = K0Options { mode: opts.mode, ..K0Options::default() };
    let k0 = match k0_structure_with(fan, k0_opts) {
        Ok(k) => Section::Done(KZero {
            finite: k.is_finite(),
            rank: match k.rank {
                Rank::Finite(r) => RankValue::Finite(r),
                Rank::Infinite => RankValue::Infinite("infinite"),
            },
            rational_rank: match k.rational_rank {
                Some(r) => Section::Done(r),
                None => Section::skipped("K0 tensor Q is infinite-dimensional"),
            },
            invariant_factors: ints(&k.invariant_factors),
            free: k.free,
            complete: k.complete,
            multiplicity_rank: Int(multiplicity_rank(fan).expect("valid fans are simplicial")),
            groebner_basis_size: k.basis.len(),
        }),
        Err(e) => Section::skipped(e.to_string()),
    };
    clock.lap("k0");

    let simplicial = simplicial_section(fan, opts);
    clock.lap("simplicial");
    let report = Report { name: file.name.clone(), validation, dg_beta, presentation, k0, simplicial, timings: clock.finish() };
    (report, true)
}

fn describe_presentation(p: &KZeroPresentation) -> Presentation {
    let ring = &p.ring;
    let variables = (0..ring.laurent_count()).chain(2 * ring.laurent_count()..ring.var_count()).map(|v| ring.var_name(v)).collect();
    let relations: Vec<String> = p.relations().iter().map(|f| ring.display(f).to_string()).collect();
    Presentation {
        mode: p.mode.label().to_string(),
        variables,
        ray_classes: p.ray_classes.iter().map(|f| ring.display(f).to_string()).collect(),
        relation_count: relations.len(),
        relations,
        notes: p.notes.clone(),
    }
}

/// `{2,3,5,7}` together with every prime dividing a cone multiplicity.
pub fn default_primes(fan: &StackyFan) -> Vec<u64> {
    let (reduced, _) = reduce_lattice(fan);
    let mut primes: Vec<u64> = DEFAULT_PRIMES.to_vec();
    for c in reduced.max_cones() {
        if let Some(m) = multiplicity(&reduced, c).ok().and_then(|m| m.to_u64()) {
            primes.extend(prime_factors(m));
        }
    }
    primes.sort_unstable();
    primes.dedup();
    primes
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn simplicial_section(fan: &StackyFan, opts: &ReportOptions) -> Section<Simplicial> {
    let k = match underlying_complex(fan) {
        Ok(k) => k,
        Err(e) => return Section::skipped(e.to_string()),
    };
    let shellable = if !opts.shellability {
        Section::skipped("disabled by --no-shellability")
    } else {
        Section::Done(match is_shellable_with_cap(&k, opts.shell_cap) {
            Ok(ShellingVerdict::Shellable(order)) => Shelling::Shellable { witness: order },
            Ok(ShellingVerdict::NotShellable) => Shelling::NotShellable { reason: "no shelling order exists".into() },
            Ok(ShellingVerdict::Undecided { facets, cap }) => {
                Shelling::Undecided { reason: format!("{facets} facets exceed the search cap {cap}") }
            }
            Err(e) => Shelling::NotShellable { reason: e.to_string() },
        })
    };
    let primes = opts.primes.clone().unwrap_or_else(|| default_primes(fan));
    let mut cm = BTreeMap::new();
    let fields = std::iter::once(Coefficients::Rationals).chain(primes.iter().map(|&p| Coefficients::Prime(p)));
    for field in fields {
        let verdict = is_cohen_macaulay(&k, field).expect("primes are checked before reporting");
        cm.insert(field.label(), verdict);
    }
    Section::Done(Simplicial {
        vertices: k.vertex_count(),
        facets: k.facets().len(),
        minimal_nonfaces: k.minimal_nonfaces(),
        shellable,
        cm,
    })
}

pub fn check_primes(primes: &[u64]) -> Result<(), u64> {
    match primes.iter().find(|&&p| !is_prime(p)) {
        Some(&p) => Err(p),
        None => Ok(()),
    }
}

struct Clock {
    on: bool,
    last: Instant,
    laps: BTreeMap<String, u64>,
}

impl Clock {
    fn new(on: bool) -> Self {
        Clock { on, last: Instant::now(), laps: BTreeMap::new() }
    }

    fn lap(&mut self, stage: &str) {
        if self.on {
            let now = Instant::now();
            self.laps.insert(format!("{stage}_us"), (now - self.last).as_micros() as u64);
            self.last = now;
        }
    }

    fn finish(self) -> Section<BTreeMap<String, u64>> {
        if self.on {
            Section::Done(self.laps)
        } else {
            Section::skipped("not recorded; pass --timings")
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let v = &self.validation;
        let _ = writeln!(s, "fan {}", self.name);
        let _ = writeln!(s, "  valid: {}  simplicial: {}  complete: {}", v.valid, v.simplicial, v.complete);
        for m in &v.messages {
            let _ = writeln!(s, "  note: {m}");
        }
        match &self.dg_beta {
            Section::Done(g) => {
                let tors: Vec<String> = g.torsion.iter().map(|a| format!(" + Z/{}", a.0)).collect();
                let _ = writeln!(s, "  DG(beta) = Z^{}{}", g.rank, tors.concat());
            }
            Section::Skipped { skipped } => {
                let _ = writeln!(s, "  DG(beta): skipped ({skipped})");
            }
        }
        if let Section::Done(p) = &self.presentation {
            let noun = if p.relation_count == 1 { "relation" } else { "relations" };
            let _ = writeln!(s, "  presentation ({}, {} {noun}):", p.mode, p.relation_count);
            for r in &p.relations {
                let _ = writeln!(s, "    {r}");
            }
        }
        match &self.k0 {
            Section::Done(k) => {
                let rank = match k.rank {
                    RankValue::Finite(r) => r.to_string(),
                    RankValue::Infinite(w) => w.to_string(),
                };
                let inv: Vec<String> = k.invariant_factors.iter().map(|a| a.0.to_string()).collect();
                let _ = writeln!(s, "  K0: rank {rank}, invariant factors [{}], free: {}", inv.join(", "), k.free);
            }
            Section::Skipped { skipped } => {
                let _ = writeln!(s, "  K0: skipped ({skipped})");
            }
        }
        if let Section::Done(c) = &self.simplicial {
            let verdict = match &c.shellable {
                Section::Done(Shelling::Shellable { .. }) => "shellable".to_string(),
                Section::Done(Shelling::NotShellable { .. }) => "not shellable".to_string(),
                Section::Done(Shelling::Undecided { reason }) => format!("undecided ({reason})"),
                Section::Skipped { skipped } => format!("skipped ({skipped})"),
            };
            let _ = writeln!(s, "  complex: {} facets, {verdict}", c.facets);
            let cm: Vec<String> = c.cm.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "  Cohen-Macaulay: {}", cm.join(" "));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors() {
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(49), vec![7]);
        assert_eq!(prime_factors(22), vec![2, 11]);
    }

    #[test]
    fn big_integers_fall_back_to_strings() {
        let huge = Int(BigInt::from(i64::MAX) * 4);
        assert_eq!(serde_json::to_string(&huge).unwrap(), format!("\"{}\"", huge.0));
        assert_eq!(serde_json::to_string(&Int(BigInt::from(-3))).unwrap(), "-3");
    }

    #[test]
    fn skipped_sections_carry_reasons() {
        let s: Section<bool> = Section::skipped("why");
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"skipped":"why"}"#);
    }
}
