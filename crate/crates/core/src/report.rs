//! Job files, the analysis report and its JSON and text forms.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::companions::{generic_initial_ideal, inequality_chain, lex_ideal_capped, InequalityChain};
use crate::error::{Error, Result};
use crate::hilbert::hilbert_series;
use crate::invariants::{
    alfa_check_from, depth_from, generic_annihilator_numbers, symmetric_algebra_from, AlfaCheck, DepthReport,
    SymmetricAlgebraReport,
};
use crate::lift::{homogeneous_type_from, implication_check, lift_resolution, minimalize_local, ImplicationCheck};
use crate::linearity::{linearity_defect_graded, linearity_defect_minimal, LinearityReport};
use crate::poly::{Mode, Ring};
use crate::resolution::{is_componentwise_linear, BettiTable};
use crate::scalar::Field;
use crate::stdbasis::{set_reduction_cap, DEFAULT_REDUCTION_CAP};
use crate::tangent::{mu_graded, mu_local, semigroup_defining_ideal, tangent_cone, FilteredIdeal, FiltrationKind};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Analysis {
    TangentCone,
    Betti,
    Gin,
    Lex,
    Ld,
    Alfa,
    Sym,
}

impl Analysis {
    pub const ALL: [Analysis; 7] = [
        Analysis::TangentCone,
        Analysis::Betti,
        Analysis::Gin,
        Analysis::Lex,
        Analysis::Ld,
        Analysis::Alfa,
        Analysis::Sym,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Analysis::TangentCone => "tangent-cone",
            Analysis::Betti => "betti",
            Analysis::Gin => "gin",
            Analysis::Lex => "lex",
            Analysis::Ld => "ld",
            Analysis::Alfa => "alfa",
            Analysis::Sym => "sym",
        }
    }

    /// One word of an `analyze` list; `full` stands for all of them.
    pub fn parse(word: &str) -> Option<Vec<Analysis>> {
        if word == "full" {
            return Some(Analysis::ALL.to_vec());
        }
        Analysis::ALL.iter().find(|a| a.name() == word).map(|a| vec![*a])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Last degree listed for Hilbert functions and homology.
    pub hilbert_degree: i64,
    /// Lex segments are searched at least this far.
    pub lex_degree: u32,
    /// Reduction steps per basis computation (process-wide while a job runs).
    pub reductions: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            hilbert_degree: 64,
            lex_degree: crate::companions::LEX_DEGREE_CAP,
            reductions: DEFAULT_REDUCTION_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Generators(Vec<String>),
    Semigroup(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    /// `None` for ℚ.
    pub modulus: Option<u32>,
    pub variables: Vec<String>,
    pub source: Source,
    /// Sorted, without repeats.
    pub analyses: Vec<Analysis>,
    pub seed: u64,
    pub caps: Caps,
}

impl JobSpec {
    pub fn semigroup(exps: &[u32], analyses: &[Analysis], seed: u64) -> Result<JobSpec> {
        if exps.is_empty() || exps.contains(&0) {
            return Err(Error::Invalid("semigroup exponents must be positive".into()));
        }
        let mut analyses = analyses.to_vec();
        analyses.sort();
        analyses.dedup();
        if analyses.is_empty() {
            return Err(Error::Invalid("no analysis requested".into()));
        }
        Ok(JobSpec {
            modulus: None,
            variables: (1..=exps.len()).map(|i| format!("x{i}")).collect(),
            source: Source::Semigroup(exps.to_vec()),
            analyses,
            seed,
            caps: Caps::default(),
        })
    }

    pub fn field(&self) -> Field {
        match self.modulus {
            None => Field::Rational,
            Some(p) => Field::Prime(p),
        }
    }

    pub fn ring(&self) -> Result<Ring> {
        Ring::new(&self.variables, self.field(), Mode::Local)
    }

    pub fn wants(&self, a: Analysis) -> bool {
        self.analyses.contains(&a)
    }

    /// The ideal of `k[[x]]` the job is about; semigroups are eliminated here.
    pub fn ideal(&self) -> Result<FilteredIdeal> {
        match &self.source {
            Source::Generators(gens) => {
                let ring = self.ring()?;
                let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
                FilteredIdeal::new(&ring, polys, FiltrationKind::Intersection)
            }
            Source::Semigroup(exps) => semigroup_defining_ideal(exps),
        }
    }
}

/// 1-based line and column of a byte position.
pub fn line_col(text: &str, pos: usize) -> (usize, usize) {
    let before = &text.as_bytes()[..pos.min(text.len())];
    let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
    let col = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
    (line, col)
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

/// Words separated by whitespace or commas, with their byte positions.
fn words(s: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, c) in s.char_indices() {
        let sep = c.is_whitespace() || c == ',';
        match (sep, start) {
            (true, Some(b)) => {
                out.push((base + b, &s[b..k]));
                start = None;
            }
            (false, None) => start = Some(k),
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((base + b, &s[b..]));
    }
    out
}

fn parse_field(s: &str, pos: usize) -> Result<Option<u32>> {
    match s {
        "Q" | "QQ" => Ok(None),
        _ => {
            let inner = s
                .strip_prefix("GF(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| perr(pos, format!("unknown field `{s}`, expected Q or GF(p)")))?;
            let p: u64 = inner
                .trim()
                .parse()
                .map_err(|_| perr(pos + 3, format!("bad modulus `{inner}`")))?;
            match Field::prime(p)? {
                Field::Prime(p) => Ok(Some(p)),
                Field::Rational => unreachable!(),
            }
        }
    }
}

/// Parse a job file: `;`-terminated statements, `#` comments.
///
/// ```text
/// ring Q[x,y,z,t]; ideal x^3-y^7, x^2*y-x*t^3-z^6; analyze full;
/// semigroup 9 17 19 39; analyze betti, ld; seed 7; cap lex 80;
/// ```
pub fn parse_job(text: &str) -> Result<JobSpec> {
    let mut bytes = text.as_bytes().to_vec();
    let mut in_comment = false;
    for b in bytes.iter_mut() {
        if *b == b'#' {
            in_comment = true;
        } else if *b == b'\n' {
            in_comment = false;
        }
        if in_comment {
            *b = b' ';
        }
    }
    let clean = String::from_utf8(bytes).expect("comment bytes replaced by ASCII");

    let mut ring: Option<(Ring, usize)> = None;
    let mut source: Option<Source> = None;
    let mut analyses: Vec<Analysis> = Vec::new();
    let mut seed = None;
    let mut caps = Caps::default();
    let mut offset = 0;
    for stmt in clean.split(';') {
        let base = offset;
        offset += stmt.len() + 1;
        let trimmed = stmt.trim_start();
        let start = base + stmt.len() - trimmed.len();
        let body = trimmed.trim_end();
        if body.is_empty() {
            continue;
        }
        let kw_len = body.find(char::is_whitespace).unwrap_or(body.len());
        let (kw, rest) = body.split_at(kw_len);
        let rest_pos = start + kw_len;
        match kw {
            "ring" => {
                if ring.is_some() {
                    return Err(perr(start, "second ring declaration"));
                }
                let open = rest.find('[').ok_or_else(|| perr(rest_pos, "expected `[`"))?;
                let close = rest
                    .rfind(']')
                    .ok_or_else(|| perr(rest_pos + rest.len(), "expected `]`"))?;
                if close < open || !rest[close + 1..].trim().is_empty() {
                    return Err(perr(rest_pos + close, "malformed variable list"));
                }
                let field_text = rest[..open].trim();
                let field_pos = rest_pos + rest[..open].find(field_text).unwrap_or(0);
                let modulus = parse_field(field_text, field_pos)?;
                let names: Vec<String> = rest[open + 1..close].split(',').map(|n| n.trim().to_string()).collect();
                let field = modulus.map_or(Field::Rational, Field::Prime);
                let r = Ring::new(&names, field, Mode::Local).map_err(|e| match e {
                    Error::Invalid(msg) => perr(rest_pos + open + 1, msg),
                    e => e,
                })?;
                ring = Some((r, start));
            }
            "ideal" => {
                if source.is_some() {
                    return Err(perr(start, "second ideal source"));
                }
                let (r, _) = ring
                    .as_ref()
                    .ok_or_else(|| perr(start, "ideal before the ring declaration"))?;
                let polys = r.parse_list(rest).map_err(|e| e.shifted(rest_pos))?;
                let ideal = FilteredIdeal::new(r, polys, FiltrationKind::Intersection).map_err(|e| match e {
                    Error::Invalid(msg) => perr(rest_pos, msg),
                    e => e,
                })?;
                source = Some(Source::Generators(ideal.gens().iter().map(|g| r.fmt_poly(g)).collect()));
            }
            "semigroup" => {
                if source.is_some() {
                    return Err(perr(start, "second ideal source"));
                }
                let mut exps = Vec::new();
                for (p, w) in words(rest, rest_pos) {
                    match w.parse::<u32>() {
                        Ok(a) if a > 0 => exps.push(a),
                        _ => return Err(perr(p, format!("expected a positive integer, found `{w}`"))),
                    }
                }
                if exps.is_empty() {
                    return Err(perr(rest_pos, "semigroup needs exponents"));
                }
                source = Some(Source::Semigroup(exps));
            }
            "analyze" => {
                for (p, w) in words(rest, rest_pos) {
                    let a = Analysis::parse(w).ok_or_else(|| perr(p, format!("unknown analysis `{w}`")))?;
                    analyses.extend(a);
                }
            }
            "seed" => {
                let w = words(rest, rest_pos);
                match w.as_slice() {
                    [(p, v)] => seed = Some(v.parse::<u64>().map_err(|_| perr(*p, format!("bad seed `{v}`")))?),
                    _ => return Err(perr(rest_pos, "seed takes one integer")),
                }
            }
            "cap" => {
                let w = words(rest, rest_pos);
                let [(kp, key), (vp, val)] = w.as_slice() else {
                    return Err(perr(rest_pos, "cap takes a name and a positive integer"));
                };
                let v: u64 = match val.parse() {
                    Ok(v) if v > 0 => v,
                    _ => return Err(perr(*vp, format!("caps must be positive integers, found `{val}`"))),
                };
                match *key {
                    "hilbert" => caps.hilbert_degree = v as i64,
                    "lex" => caps.lex_degree = u32::try_from(v).map_err(|_| perr(*vp, "lex cap too large"))?,
                    "reductions" => caps.reductions = v,
                    _ => return Err(perr(*kp, format!("unknown cap `{key}`"))),
                }
            }
            _ => return Err(perr(start, format!("unknown statement `{kw}`"))),
        }
    }
    let source = source.ok_or_else(|| perr(text.len(), "no ideal or semigroup given"))?;
    let (modulus, variables) = match (&source, &ring) {
        (Source::Semigroup(_), Some((_, p))) => {
            return Err(perr(*p, "a semigroup job fixes its own ring"));
        }
        (Source::Semigroup(exps), None) => (None, (1..=exps.len()).map(|i| format!("x{i}")).collect()),
        (Source::Generators(_), Some((r, _))) => (
            match r.field() {
                Field::Rational => None,
                Field::Prime(p) => Some(p),
            },
            r.names().to_vec(),
        ),
        (Source::Generators(_), None) => unreachable!("ideal statements need a ring"),
    };
    analyses.sort();
    analyses.dedup();
    if analyses.is_empty() {
        return Err(perr(text.len(), "no analysis requested"));
    }
    Ok(JobSpec {
        modulus,
        variables,
        source,
        analyses,
        seed: seed.unwrap_or(0),
        caps,
    })
}

/// A report block that may have been cut short by a resource cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section<T> {
    Ok(T),
    Capped(String),
    Skipped(String),
}

impl<T> Section<T> {
    pub fn ok(&self) -> Option<&T> {
        match self {
            Section::Ok(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_capped(&self) -> bool {
        matches!(self, Section::Capped(_))
    }
}

/// `(i, j, β_ij)` triples of a graded Betti table.
pub type GradedBetti = Vec<(usize, i64, usize)>;

fn graded_entries(b: &BettiTable) -> GradedBetti {
    b.entries().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentConeBlock {
    /// Minimal homogeneous generators of `I*`.
    pub generators: Vec<String>,
    pub standard_basis_size: usize,
    pub mu_local: usize,
    pub mu_tangent_cone: usize,
    pub min_standard_base: bool,
    /// Reduced Hilbert series numerator of `P/I*`.
    pub hilbert_numerator: Vec<i128>,
    pub dimension: usize,
    pub multiplicity: i128,
    /// `HF_{P/I*}(d)` for `d = 0 …` the Hilbert cap.
    pub hilbert_function: Vec<i128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiBlock {
    /// `β_i(I)`.
    pub local: Vec<usize>,
    /// `β_i(I*)`.
    pub tangent_cone: Vec<usize>,
    pub tangent_cone_graded: GradedBetti,
    /// Valuation shifts of the minimal local resolution, per homological degree.
    pub local_shifts: Vec<Vec<i64>>,
    /// Unit cancellations per map of the lifted complex.
    pub cancellations: Vec<usize>,
    pub homogeneous_type: bool,
    pub componentwise_linear: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GinBlock {
    pub generators: Vec<String>,
    pub mu: usize,
    pub betti: Vec<usize>,
    pub graded: GradedBetti,
    pub seed: u64,
    pub attempts: usize,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexBlock {
    pub generators: Vec<String>,
    pub mu: usize,
    pub betti: Vec<usize>,
    pub graded: GradedBetti,
    /// `μ(I*) = μ(Lex)`.
    pub gotzmann: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearityBlock {
    /// `ld(I)` from `lin^R` of the minimal local resolution.
    pub local: LinearityReport,
    /// `ld(I*)`.
    pub tangent_cone: LinearityReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlfaBlock {
    pub alpha: Vec<usize>,
    pub forms: Vec<Vec<i64>>,
    pub attempts: usize,
    pub check: AlfaCheck,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub min_standard_base: Option<bool>,
    pub componentwise_linear: Option<bool>,
    pub homogeneous_type: Option<bool>,
    pub gotzmann: Option<bool>,
    pub koszul: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub name: String,
    pub conditions: Vec<(String, bool)>,
    pub consistent: bool,
}

impl Equivalence {
    fn new(name: &str, conditions: Vec<(&str, bool)>) -> Equivalence {
        let consistent = conditions.windows(2).all(|w| w[0].1 == w[1].1);
        Equivalence {
            name: name.into(),
            conditions: conditions.into_iter().map(|(n, b)| (n.to_string(), b)).collect(),
            consistent,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuBlock {
    pub local: Option<usize>,
    pub tangent_cone: Option<usize>,
    pub gin: Option<usize>,
    pub lex: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub input: JobSpec,
    /// Generators actually analysed (the computed ones for a semigroup).
    pub generators: Vec<String>,
    pub seed: u64,
    pub mu: MuBlock,
    pub tangent_cone: Section<TangentConeBlock>,
    pub betti: Option<Section<BettiBlock>>,
    pub gin: Option<Section<GinBlock>>,
    pub lex: Option<Section<LexBlock>>,
    pub chain: Option<InequalityChain>,
    pub linearity: Option<Section<LinearityBlock>>,
    pub depth: Option<Section<DepthReport>>,
    pub alfa: Option<Section<AlfaBlock>>,
    pub sym: Option<Section<SymmetricAlgebraReport>>,
    pub verdicts: Verdicts,
    pub equivalences: Vec<Equivalence>,
    pub implication: Option<ImplicationCheck>,
    /// Milliseconds per stage; not part of the deterministic content.
    pub timing_ms: BTreeMap<String, u64>,
}

impl AnalysisReport {
    pub fn capped(&self) -> bool {
        self.tangent_cone.is_capped()
            || self.betti.as_ref().is_some_and(Section::is_capped)
            || self.gin.as_ref().is_some_and(Section::is_capped)
            || self.lex.as_ref().is_some_and(Section::is_capped)
            || self.linearity.as_ref().is_some_and(Section::is_capped)
            || self.depth.as_ref().is_some_and(Section::is_capped)
            || self.alfa.as_ref().is_some_and(Section::is_capped)
            || self.sym.as_ref().is_some_and(Section::is_capped)
    }

    pub fn without_timing(&self) -> AnalysisReport {
        AnalysisReport {
            timing_ms: BTreeMap::new(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<AnalysisReport> {
        let r: AnalysisReport = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("report JSON: {e}")))?;
        if r.schema != SCHEMA {
            return Err(Error::Invalid(format!("unsupported report schema {}", r.schema)));
        }
        Ok(r)
    }
}

struct Clock(BTreeMap<String, u64>);

impl Clock {
    /// Time one stage; cap errors become a capped section, all others propagate.
    fn run<T>(&mut self, name: &str, f: impl FnOnce() -> Result<T>) -> Result<Section<T>> {
        let t = Instant::now();
        let out = f();
        self.0.insert(name.into(), t.elapsed().as_millis() as u64);
        log::debug!("{name}: {} ms", self.0[name]);
        match out {
            Ok(v) => Ok(Section::Ok(v)),
            Err(Error::CapExceeded(msg)) => Ok(Section::Capped(msg)),
            Err(e) => Err(e),
        }
    }
}

fn capped<T>(why: &str) -> Option<Section<T>> {
    Some(Section::Capped(why.to_string()))
}

fn upstream<T>(s: &Section<T>) -> String {
    match s {
        Section::Ok(_) => String::new(),
        Section::Capped(m) => format!("upstream stage capped: {m}"),
        Section::Skipped(m) => format!("upstream stage skipped: {m}"),
    }
}

/// Run every requested analysis. Caps leave `capped` sections behind; a
/// failed consistency check is an invariant error.
pub fn run_analysis(spec: &JobSpec) -> Result<AnalysisReport> {
    set_reduction_cap(spec.caps.reductions);
    let mut clock = Clock(BTreeMap::new());
    let i = match clock.run("ideal", || spec.ideal())? {
        Section::Ok(i) => i,
        Section::Capped(m) | Section::Skipped(m) => return Err(Error::CapExceeded(m)),
    };
    let ring = i.ring().clone();
    let n = ring.nvars();
    let seed = spec.seed;
    let caps = &spec.caps;

    let tc = clock.run("tangent_cone", || {
        let tc = tangent_cone(&i)?;
        let ml = mu_local(&i)?;
        let mg = mu_graded(&tc.ideal)?;
        let h = hilbert_series(tc.ideal.gens(), n)?;
        let block = TangentConeBlock {
            generators: tc.ideal.gens().iter().map(|g| ring.fmt_poly(g)).collect(),
            standard_basis_size: tc.standard_basis.len(),
            mu_local: ml,
            mu_tangent_cone: mg,
            min_standard_base: ml == mg,
            hilbert_numerator: h.reduced().0,
            dimension: h.dimension(),
            multiplicity: h.multiplicity(),
            hilbert_function: (0..=caps.hilbert_degree).map(|d| h.value(d)).collect(),
        };
        Ok((tc.ideal, h, block))
    })?;
    let mut report = AnalysisReport {
        schema: SCHEMA,
        input: spec.clone(),
        generators: i.gens().iter().map(|g| ring.fmt_poly(g)).collect(),
        seed,
        mu: MuBlock::default(),
        tangent_cone: Section::Skipped(String::new()),
        betti: None,
        gin: None,
        lex: None,
        chain: None,
        linearity: None,
        depth: None,
        alfa: None,
        sym: None,
        verdicts: Verdicts::default(),
        equivalences: Vec::new(),
        implication: None,
        timing_ms: BTreeMap::new(),
    };
    let (j, h) = match tc {
        Section::Ok((j, h, block)) => {
            report.mu.local = Some(block.mu_local);
            report.mu.tangent_cone = Some(block.mu_tangent_cone);
            report.verdicts.min_standard_base = Some(block.min_standard_base);
            report.tangent_cone = Section::Ok(block);
            (j, h)
        }
        other => {
            let why = upstream(&other);
            report.tangent_cone = match other {
                Section::Capped(m) => Section::Capped(m),
                Section::Skipped(m) => Section::Skipped(m),
                Section::Ok(_) => unreachable!(),
            };
            for a in &spec.analyses {
                match a {
                    Analysis::Betti => report.betti = capped(&why),
                    Analysis::Gin => report.gin = capped(&why),
                    Analysis::Lex => report.lex = capped(&why),
                    Analysis::Ld => report.linearity = capped(&why),
                    Analysis::Alfa => report.alfa = capped(&why),
                    Analysis::Sym => report.sym = capped(&why),
                    Analysis::TangentCone => {}
                }
                if matches!(a, Analysis::Betti | Analysis::Alfa | Analysis::Sym) {
                    report.depth = capped(&why);
                }
            }
            report.timing_ms = clock.0;
            return Ok(report);
        }
    };
    let msb = report.verdicts.min_standard_base.unwrap();

    let need_local = [Analysis::Betti, Analysis::Ld, Analysis::Alfa, Analysis::Sym]
        .iter()
        .any(|a| spec.wants(*a));
    let need_cwl = need_local || spec.wants(Analysis::Gin);
    let cwl = if need_cwl {
        let c = clock.run("componentwise_linear", || {
            Ok(is_componentwise_linear(&j, false)?.componentwise_linear)
        })?;
        if let Section::Ok(c) = c {
            report.verdicts.componentwise_linear = Some(c);
        }
        report.verdicts.componentwise_linear
    } else {
        None
    };

    let local = if need_local {
        clock.run("lift", || {
            let lifted = lift_resolution(&i)?;
            let minimal = minimalize_local(&lifted)?;
            Ok((lifted, minimal))
        })?
    } else {
        Section::Skipped("not requested".into())
    };

    if spec.wants(Analysis::Betti) {
        let s = match (&local, cwl) {
            (Section::Ok((lifted, minimal)), Some(cwl)) => clock.run("betti", || {
                let ht = homogeneous_type_from(lifted, minimal)?;
                Ok(BettiBlock {
                    local: ht.local.clone(),
                    tangent_cone: ht.graded.clone(),
                    tangent_cone_graded: graded_entries(&lifted.graded_betti()?),
                    local_shifts: minimal.complex.shifts[1..].to_vec(),
                    cancellations: minimal.cancellations_per_map(),
                    homogeneous_type: ht.homogeneous_type,
                    componentwise_linear: cwl,
                })
            })?,
            (Section::Ok(_), None) => Section::Capped("componentwise linearity capped".into()),
            (other, _) => Section::Capped(upstream(other)),
        };
        if let Section::Ok(b) = &s {
            report.verdicts.homogeneous_type = Some(b.homogeneous_type);
        }
        report.betti = Some(s);
    }

    let depth = if [Analysis::Betti, Analysis::Alfa, Analysis::Sym]
        .iter()
        .any(|a| spec.wants(*a))
    {
        let s = match &local {
            Section::Ok((_, minimal)) => clock.run("depth", || depth_from(n, &minimal.betti(), &h))?,
            other => Section::Capped(upstream(other)),
        };
        report.depth = Some(s.clone());
        Some(s)
    } else {
        None
    };

    let mut gin_ideal = None;
    let mut lex_ideal = None;
    if spec.wants(Analysis::Gin) {
        let s = if ring.field() != Field::Rational {
            Section::Skipped("generic initial ideals are computed over Q".into())
        } else {
            clock.run("gin", || {
                let g = generic_initial_ideal(&j, seed)?;
                let b = g.ideal.betti()?;
                let block = GinBlock {
                    generators: g.ideal.strings(),
                    mu: g.ideal.mu(),
                    betti: b.totals(),
                    graded: graded_entries(&b),
                    seed: g.seed,
                    attempts: g.attempts,
                    bound: g.bound,
                };
                Ok((g.ideal, block))
            })?
        };
        report.gin = Some(match s {
            Section::Ok((ideal, block)) => {
                report.mu.gin = Some(block.mu);
                gin_ideal = Some(ideal);
                Section::Ok(block)
            }
            Section::Capped(m) => Section::Capped(m),
            Section::Skipped(m) => Section::Skipped(m),
        });
    }

    if spec.wants(Analysis::Lex) {
        let s = clock.run("lex", || {
            let l = lex_ideal_capped(&j, caps.lex_degree)?;
            let b = l.betti()?;
            let block = LexBlock {
                generators: l.strings(),
                mu: l.mu(),
                betti: b.totals(),
                graded: graded_entries(&b),
                gotzmann: report.mu.tangent_cone == Some(l.mu()),
            };
            Ok((l, block))
        })?;
        report.lex = Some(match s {
            Section::Ok((ideal, block)) => {
                report.mu.lex = Some(block.mu);
                report.verdicts.gotzmann = Some(block.gotzmann);
                lex_ideal = Some(ideal);
                Section::Ok(block)
            }
            Section::Capped(m) => Section::Capped(m),
            Section::Skipped(m) => Section::Skipped(m),
        });
    }

    if spec.wants(Analysis::Ld) {
        let s = match &local {
            Section::Ok((_, minimal)) => clock.run("ld", || {
                Ok(LinearityBlock {
                    local: linearity_defect_minimal(minimal)?,
                    tangent_cone: linearity_defect_graded(&j)?,
                })
            })?,
            other => Section::Capped(upstream(other)),
        };
        if let Section::Ok(l) = &s {
            report.verdicts.koszul = Some(l.local.koszul);
            if let Some(c) = cwl {
                if (l.tangent_cone.ld == 0) != c {
                    return Err(Error::Invariant(format!(
                        "ld(I*) = {} but componentwise linear = {c}",
                        l.tangent_cone.ld
                    )));
                }
            }
        }
        report.linearity = Some(s);
    }

    let hypotheses = cwl.map(|c| msb && c);
    if spec.wants(Analysis::Alfa) {
        let s = match (&local, hypotheses) {
            (Section::Ok((_, minimal)), Some(hyp)) => clock.run("alfa", || {
                let a = generic_annihilator_numbers(&j, seed)?;
                let check = alfa_check_from(&minimal.betti(), &a.alpha, hyp)?;
                Ok(AlfaBlock {
                    alpha: a.alpha,
                    forms: a.forms,
                    attempts: a.attempts,
                    check,
                })
            })?,
            (Section::Ok(_), None) => Section::Capped("componentwise linearity capped".into()),
            (other, _) => Section::Capped(upstream(other)),
        };
        report.alfa = Some(s);
    }

    if spec.wants(Analysis::Sym) {
        let s = match (depth.as_ref(), hypotheses) {
            (Some(Section::Ok(d)), Some(hyp)) => {
                if let Some(g) = i.gens().iter().find(|g| g.valuation() < Some(2)) {
                    Section::Skipped(format!("needs I ⊆ n², {} has order 1", ring.fmt_poly(g)))
                } else {
                    clock.run("sym", || symmetric_algebra_from(&i, d, hyp))?
                }
            }
            (Some(Section::Ok(_)), None) => Section::Capped("componentwise linearity capped".into()),
            (Some(other), _) => Section::Capped(upstream(other)),
            (None, _) => unreachable!("depth is computed for sym"),
        };
        report.sym = Some(s);
    }

    let betti = report.betti.as_ref().and_then(|s| s.ok());
    let gin = report.gin.as_ref().and_then(|s| s.ok());
    let lex = report.lex.as_ref().and_then(|s| s.ok());
    if let (Some(b), Some(g), Some(c)) = (betti, gin, cwl) {
        let ml = report.mu.local.unwrap();
        let e = Equivalence::new(
            "tangent cone",
            vec![
                ("mu(I) = mu(Gin)", ml == g.mu),
                (
                    "beta(I) = beta(I*) = beta(Gin)",
                    b.local == b.tangent_cone && b.tangent_cone == g.betti,
                ),
                ("min standard base and componentwise linear", msb && c),
            ],
        );
        if !e.consistent {
            return Err(Error::Invariant(format!("equivalence fails: {e:?}")));
        }
        report.equivalences.push(e);
    }
    if let (Some(b), Some(l)) = (betti, lex) {
        let ml = report.mu.local.unwrap();
        let e = Equivalence::new(
            "lex",
            vec![
                ("mu(I) = mu(Lex)", ml == l.mu),
                (
                    "beta(I) = beta(I*) = beta(Lex)",
                    b.local == b.tangent_cone && b.tangent_cone == l.betti,
                ),
                ("min standard base and Gotzmann", msb && l.gotzmann),
            ],
        );
        if !e.consistent {
            return Err(Error::Invariant(format!("equivalence fails: {e:?}")));
        }
        report.equivalences.push(e);
    }
    if let (Some(b), Some(g), Some(l)) = (betti, &gin_ideal, &lex_ideal) {
        report.chain = Some(inequality_chain(&b.local, &j, g, l)?);
    }
    if let (Some(ht), Some(k), Some(c)) = (report.verdicts.homogeneous_type, report.verdicts.koszul, cwl) {
        let imp = implication_check(msb, c, ht, k);
        if !imp.holds {
            return Err(Error::Invariant(format!("hypotheses hold but {imp:?}")));
        }
        report.implication = Some(imp);
    }
    report.timing_ms = clock.0;
    Ok(report)
}

fn fmt_list<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn fmt_section<T>(out: &mut String, name: &str, s: &Option<Section<T>>, body: impl FnOnce(&mut String, &T)) {
    match s {
        None => {}
        Some(Section::Ok(v)) => body(out, v),
        Some(Section::Capped(m)) => writeln!(out, "{name}: capped ({m})").unwrap(),
        Some(Section::Skipped(m)) => writeln!(out, "{name}: skipped ({m})").unwrap(),
    }
}

fn fmt_bool(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

/// Plain-text rendering for the terminal.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let field = match r.input.modulus {
        None => "Q".to_string(),
        Some(p) => format!("GF({p})"),
    };
    writeln!(out, "ring {field}[[{}]]", r.input.variables.join(",")).unwrap();
    writeln!(out, "I = ({})", r.generators.join(", ")).unwrap();
    fmt_section(&mut out, "tangent cone", &Some(r.tangent_cone.clone()), |o, t| {
        writeln!(o, "I* = ({})", t.generators.join(", ")).unwrap();
        writeln!(o, "mu(I) = {}, mu(I*) = {}", t.mu_local, t.mu_tangent_cone).unwrap();
        writeln!(
            o,
            "dim = {}, multiplicity = {}, h-vector = ({})",
            t.dimension,
            t.multiplicity,
            fmt_list(&t.hilbert_numerator)
        )
        .unwrap();
    });
    fmt_section(&mut out, "betti", &r.betti, |o, b| {
        writeln!(
            o,
            "beta(I) = ({}), beta(I*) = ({})",
            fmt_list(&b.local),
            fmt_list(&b.tangent_cone)
        )
        .unwrap();
        writeln!(o, "cancellations per map: ({})", fmt_list(&b.cancellations)).unwrap();
    });
    fmt_section(&mut out, "gin", &r.gin, |o, g| {
        writeln!(
            o,
            "Gin = ({}), beta = ({}), {} attempt(s)",
            g.generators.join(", "),
            fmt_list(&g.betti),
            g.attempts
        )
        .unwrap();
    });
    fmt_section(&mut out, "lex", &r.lex, |o, l| {
        writeln!(o, "mu(Lex) = {}, beta(Lex) = ({})", l.mu, fmt_list(&l.betti)).unwrap();
    });
    fmt_section(&mut out, "ld", &r.linearity, |o, l| {
        writeln!(o, "ld(I) = {}, ld(I*) = {}", l.local.ld, l.tangent_cone.ld).unwrap();
        for h in &l.local.homology {
            let dims: Vec<String> = h.dims.iter().map(|(d, v)| format!("{d}:{v}")).collect();
            writeln!(o, "  H_{}(lin) dims {}", h.index, dims.join(" ")).unwrap();
        }
    });
    fmt_section(&mut out, "depth", &r.depth, |o, d| {
        writeln!(o, "pd(R/I) = {}, depth = {}, dim = {}", d.pd, d.depth, d.dim).unwrap();
    });
    fmt_section(&mut out, "alfa", &r.alfa, |o, a| {
        writeln!(
            o,
            "alpha = ({}), beta(R/I) = ({}) vs bound ({}), equality {}",
            fmt_list(&a.alpha),
            fmt_list(&a.check.betti),
            fmt_list(&a.check.bound),
            fmt_bool(Some(a.check.equality))
        )
        .unwrap();
    });
    fmt_section(&mut out, "sym", &r.sym, |o, s| {
        let depth = match (s.depth_bound, s.exact) {
            (Some(b), true) => b.to_string(),
            (Some(b), false) => format!(">= {b}"),
            (None, _) => "unknown".into(),
        };
        writeln!(o, "dim S(m) = {}, depth S(m) = {depth}", s.dim).unwrap();
    });
    let v = &r.verdicts;
    writeln!(
        out,
        "min standard base {}, componentwise linear {}, homogeneous type {}, Gotzmann {}, Koszul {}",
        fmt_bool(v.min_standard_base),
        fmt_bool(v.componentwise_linear),
        fmt_bool(v.homogeneous_type),
        fmt_bool(v.gotzmann),
        fmt_bool(v.koszul)
    )
    .unwrap();
    out
}

#[cfg(test)]
mod tests;
