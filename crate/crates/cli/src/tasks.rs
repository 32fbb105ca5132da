use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use loxodrome::action::{
    census_series, classify, displacement_seq, qie_probe, reduced_words, Certainty, ClassifyOptions, GroupWord, Kind, MarkedAction,
};
use loxodrome::axis::{
    coset_cover_check, extend_character, kernel_law, phi_from_central, pseudoaxis, search_picks, AxisError, CharacterOptions, ZCharacter,
};
use loxodrome::distortion::{
    distortion_probe, power_samples, undistortion_certificate, verify_certificate, z4_samples, CertificateOptions, DistortionError, Verdict,
};
use loxodrome::gallery::{self, eigen_report, z4_semidirect_probe, Content, GalleryEntry};
use loxodrome::io::{parse_action_source, ActionSource};
use loxodrome::space::{four_point_delta, grow_ball, DeltaOptions, Point};

use crate::report::{fmt_f, Report};

/// Where the action comes from: a gallery address or a description file.
#[derive(Args, Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct SourceArgs {
    /// Gallery entry, e.g. `bt_tree:q=2` or `lamplighter:p=3`.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gallery: Option<String>,
    /// JSON action description file.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<PathBuf>,
    /// Inline description, only available from a config file.
    #[arg(skip)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inline: Option<ActionSource>,
}

fn d_horizon() -> usize {
    32
}
fn d_radius() -> u32 {
    2
}
fn d_words() -> usize {
    10
}
fn d_delta_radius() -> u32 {
    4
}
fn d_char_horizon() -> usize {
    24
}
fn d_kernel_len() -> usize {
    6
}
fn d_search_radius() -> u32 {
    5
}
fn d_n_max() -> usize {
    40
}
fn d_sample() -> u64 {
    12
}
fn d_rank() -> usize {
    2
}
fn d_depth() -> usize {
    4
}
fn d_pick_len() -> usize {
    2
}
fn d_qie_words() -> usize {
    8
}

#[derive(Args, Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    /// Word to classify; repeat for several.
    #[arg(long)]
    #[serde(default)]
    pub element: Vec<String>,
    #[arg(short = 'N', long = "horizon", default_value_t = d_horizon())]
    #[serde(default = "d_horizon")]
    pub horizon: usize,
    /// Certify that the elements have infinite order.
    #[arg(long)]
    #[serde(default)]
    pub infinite_order: bool,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CensusArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    #[arg(short = 'R', long = "radius", default_value_t = d_radius())]
    #[serde(default = "d_radius")]
    pub radius: u32,
    #[arg(short = 'W', long = "words", default_value_t = d_words())]
    #[serde(default = "d_words")]
    pub words: usize,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct QieArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    #[arg(short = 'W', long = "words", default_value_t = d_qie_words())]
    #[serde(default = "d_qie_words")]
    pub words: usize,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BallArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    #[arg(short = 'R', long = "radius", default_value_t = d_radius())]
    #[serde(default = "d_radius")]
    pub radius: u32,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub factor: usize,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DeltaArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    #[arg(short = 'R', long = "radius", default_value_t = d_delta_radius())]
    #[serde(default = "d_delta_radius")]
    pub radius: u32,
    /// Factor to measure; every factor when omitted.
    #[arg(long)]
    #[serde(default)]
    pub factor: Option<usize>,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AxisArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    #[arg(long)]
    #[serde(default)]
    pub element: Option<String>,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub factor: usize,
    #[arg(short = 'R', long = "radius", default_value_t = d_search_radius())]
    #[serde(default = "d_search_radius")]
    pub radius: u32,
    #[arg(short = 'N', long = "horizon", default_value_t = d_char_horizon())]
    #[serde(default = "d_char_horizon")]
    pub horizon: usize,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CharacterArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    /// Central loxodromic element.
    #[arg(long)]
    #[serde(default)]
    pub central: Option<String>,
    /// Factor on which the central element is used.
    #[arg(long)]
    #[serde(default)]
    pub factor: Option<usize>,
    #[arg(short = 'R', long = "radius", default_value_t = d_search_radius())]
    #[serde(default = "d_search_radius")]
    pub radius: u32,
    #[arg(short = 'N', long = "horizon", default_value_t = d_char_horizon())]
    #[serde(default = "d_char_horizon")]
    pub horizon: usize,
    /// Length of the words on which the kernel law is checked.
    #[arg(short = 'W', long = "words", default_value_t = d_kernel_len())]
    #[serde(default = "d_kernel_len")]
    pub words: usize,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ExtendArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    /// Character on H as `label=value,...`.
    #[arg(long)]
    pub theta: String,
    /// Element of H used for the consistency check; the entry's central element by default.
    #[arg(long)]
    #[serde(default)]
    pub h0: Option<String>,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DistortArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    /// Largest n for the semidirect family.
    #[arg(long = "n-max", default_value_t = d_n_max())]
    #[serde(default = "d_n_max")]
    pub n_max: usize,
    /// Picks as `word@factor`; the entry's picks by default.
    #[arg(long)]
    #[serde(default)]
    pub pick: Vec<String>,
    /// Check the bound on all exponent vectors with sum |n_i| at most this.
    #[arg(long, default_value_t = d_sample())]
    #[serde(default = "d_sample")]
    pub sample: u64,
    /// Probe the cyclic subgroup generated by this element instead.
    #[arg(long)]
    #[serde(default)]
    pub element: Option<String>,
    #[arg(short = 'N', long = "horizon", default_value_t = d_horizon())]
    #[serde(default = "d_horizon")]
    pub horizon: usize,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PicksArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = d_rank())]
    #[serde(default = "d_rank")]
    pub rank: usize,
    /// Longest word examined.
    #[arg(short = 'W', long = "words", default_value_t = d_pick_len())]
    #[serde(default = "d_pick_len")]
    pub words: usize,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CoverArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    #[arg(long)]
    #[serde(default)]
    pub element: Option<String>,
    #[arg(long, default_value_t = d_depth())]
    #[serde(default = "d_depth")]
    pub depth: usize,
    #[arg(short = 'N', long = "horizon", default_value_t = d_char_horizon())]
    #[serde(default = "d_char_horizon")]
    pub horizon: usize,
}

#[derive(Subcommand, Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Task {
    /// Classify elements as elliptic, loxodromic or undetermined.
    Classify(ClassifyArgs),
    /// Displacement sequence and translation length bounds of one element.
    Tau(ClassifyArgs),
    /// Count elements moving the base point at most R, for word bounds up to W.
    Census(CensusArgs),
    /// Minimal and maximal displacement on each sphere of the word metric.
    Qie(QieArgs),
    /// Dump a ball of one factor as JSON.
    Ball(BallArgs),
    /// Four-point hyperbolicity constant of balls in each factor.
    Delta(DeltaArgs),
    /// Pseudoaxis of an element on one factor.
    Axis(AxisArgs),
    /// Integer character from a central loxodromic element.
    Character(CharacterArgs),
    /// Extend a character on a finite-index subgroup.
    Extend(ExtendArgs),
    /// Undistortion certificate or growth probe.
    Distort(DistortArgs),
    /// Search for a character map of a given rank.
    Picks(PicksArgs),
    /// Coset cover check for the centraliser of an element.
    Cover(CoverArgs),
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Classify(_) => "classify",
            Task::Tau(_) => "tau",
            Task::Census(_) => "census",
            Task::Qie(_) => "qie",
            Task::Ball(_) => "ball",
            Task::Delta(_) => "delta",
            Task::Axis(_) => "axis",
            Task::Character(_) => "character",
            Task::Extend(_) => "extend",
            Task::Distort(_) => "distort",
            Task::Picks(_) => "picks",
            Task::Cover(_) => "cover",
        }
    }

    fn source(&self) -> &SourceArgs {
        match self {
            Task::Classify(a) | Task::Tau(a) => &a.source,
            Task::Census(a) => &a.source,
            Task::Qie(a) => &a.source,
            Task::Ball(a) => &a.source,
            Task::Delta(a) => &a.source,
            Task::Axis(a) => &a.source,
            Task::Character(a) => &a.source,
            Task::Extend(a) => &a.source,
            Task::Distort(a) => &a.source,
            Task::Picks(a) => &a.source,
            Task::Cover(a) => &a.source,
        }
    }
}

/// What a source resolves to.
pub struct Target {
    pub entry: Option<GalleryEntry>,
    pub graph: Option<(MarkedAction, Point)>,
}

impl Target {
    fn action(&self) -> Result<(&MarkedAction, &Point)> {
        self.graph.as_ref().map(|(a, p)| (a, p)).ok_or_else(|| anyhow!("this command needs an action on graphs"))
    }

    fn default_element(&self) -> Option<String> {
        self.entry.as_ref().and_then(|e| e.default_element.clone().or_else(|| e.central.as_ref().map(|c| c.0.clone())))
    }
}

pub fn resolve(source: &SourceArgs, fallback: Option<&ActionSource>) -> Result<Target> {
    let chosen = [source.gallery.is_some(), source.action.is_some(), source.inline.is_some()].iter().filter(|b| **b).count();
    if chosen > 1 {
        bail!("give only one of --gallery, --action and an inline description");
    }
    if let Some(g) = &source.gallery {
        let entry = gallery::build(g).with_context(|| format!("gallery entry {g}"))?;
        let graph = entry.action().cloned().zip(entry.base_point());
        return Ok(Target { entry: Some(entry), graph });
    }
    let src = if let Some(p) = &source.action {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        parse_action_source(&text).with_context(|| format!("parsing {}", p.display()))?
    } else if let Some(s) = source.inline.clone().or_else(|| fallback.cloned()) {
        s
    } else {
        bail!("no action given; use --gallery or --action");
    };
    if let ActionSource::Gallery { entry } = &src {
        return resolve(&SourceArgs { gallery: Some(entry.clone()), ..Default::default() }, None);
    }
    Ok(Target { entry: None, graph: Some(src.build()?) })
}

pub fn execute(task: &Task, fallback: Option<&ActionSource>, seed: u64) -> Result<Report> {
    let target = resolve(task.source(), fallback)?;
    match task {
        Task::Classify(a) => run_classify(&target, a),
        Task::Tau(a) => run_tau(&target, a),
        Task::Census(a) => run_census(&target, a),
        Task::Qie(a) => run_qie(&target, a),
        Task::Ball(a) => run_ball(&target, a),
        Task::Delta(a) => run_delta(&target, a, seed),
        Task::Axis(a) => run_axis(&target, a),
        Task::Character(a) => run_character(&target, a),
        Task::Extend(a) => run_extend(&target, a),
        Task::Distort(a) => run_distort(&target, a),
        Task::Picks(a) => run_picks(&target, a),
        Task::Cover(a) => run_cover(&target, a),
    }
}

fn elements(target: &Target, given: &[String]) -> Result<Vec<String>> {
    if !given.is_empty() {
        return Ok(given.to_vec());
    }
    target.default_element().map(|e| vec![e]).ok_or_else(|| anyhow!("no --element given and the entry has no default"))
}

fn one_element(target: &Target, given: &Option<String>) -> Result<String> {
    Ok(elements(target, given.as_slice())?.remove(0))
}

fn run_classify(target: &Target, a: &ClassifyArgs) -> Result<Report> {
    if let Some(Content::Euclidean(wr)) = target.entry.as_ref().map(|e| &e.content) {
        let mut r = Report::new("classify", &["word", "kind", "certainty", "tau", "shift", "plane_translation", "reason"]);
        let mut out = Vec::new();
        for w in elements(target, &a.element)? {
            let t = wr.classify(&wr.gens.parse(&w)?);
            let kind = if t.loxodromic { "Loxodromic" } else { "Elliptic" };
            r.row(vec![
                t.word.clone(),
                kind.into(),
                "Certified".into(),
                fmt_f(t.tau),
                t.line_translation.to_string(),
                format!("({}, {})", fmt_f(t.plane_translation.0), fmt_f(t.plane_translation.1)),
                t.reason.clone(),
            ]);
            r.note(format!("{}: kind={kind}, tau={}", t.word, fmt_f(t.tau)));
            out.push(t);
        }
        return r.with_data(&out);
    }
    let (action, base) = target.action()?;
    let mut cols: Vec<String> = vec!["word".into()];
    cols.extend((1..=a.horizon).map(|n| format!("a_{n}")));
    cols.extend(["tau_upper", "tau_lower", "kind", "certainty"].map(String::from));
    let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut r = Report::new("classify", &col_refs);
    let opts = ClassifyOptions { horizon: a.horizon, infinite_order: a.infinite_order };
    let mut out = Vec::new();
    for w in elements(target, &a.element)? {
        let word = action.parse(&w)?;
        let c = classify(action, &word, base, &opts)?;
        let (upper, lower) = match &c.kind {
            Kind::Loxodromic { tau_upper, tau_lower } => (tau_upper.to_string(), tau_lower.map(|t| t.to_string()).unwrap_or_default()),
            Kind::Elliptic { .. } => ("0".into(), "0".into()),
            Kind::Undetermined => (c.seq.tau_upper.to_string(), String::new()),
        };
        let mut row = vec![action.display(&word)];
        row.extend((1..=a.horizon).map(|n| fmt_f(c.seq.a(n))));
        row.extend([upper.clone(), lower, c.kind.label().to_string(), format!("{:?}", c.certainty)]);
        r.row(row);
        let tau = c.tau().map(|t| t.to_string()).unwrap_or_else(|| format!("<= {upper}"));
        r.note(format!("{}: kind={}, tau={tau}, certainty={:?}", action.display(&word), c.kind.label(), c.certainty));
        if c.certainty != Certainty::Certified {
            r.uncertified(format!("{} not certified: {}", action.display(&word), c.evidence));
        }
        out.push(json!({ "word": action.display(&word), "classification": c }));
    }
    r.with_data(&out)
}

fn run_tau(target: &Target, a: &ClassifyArgs) -> Result<Report> {
    let (action, base) = target.action()?;
    let mut r = Report::new("tau", &["word", "n", "a_n_sq", "a_n", "a_n_over_n"]);
    let mut out = Vec::new();
    for w in elements(target, &a.element)? {
        let word = action.parse(&w)?;
        let seq = displacement_seq(action, &word, base, a.horizon)?;
        for n in 1..=a.horizon {
            r.row(vec![action.display(&word), n.to_string(), seq.a_sq(n).to_string(), fmt_f(seq.a(n)), fmt_f(seq.a(n) / n as f64)]);
        }
        r.note(format!("{}: tau_upper={} ({:.6}) at horizon {}", action.display(&word), seq.tau_upper, seq.tau_upper.value(), a.horizon));
        out.push(seq);
    }
    r.with_data(&out)
}

fn run_census(target: &Target, a: &CensusArgs) -> Result<Report> {
    let (action, base) = target.action()?;
    let bounds: Vec<usize> = (0..=a.words).collect();
    let series = census_series(action, base, &bounds, a.radius)?;
    let mut r = Report::new("census", &["W", "R", "count"]);
    for c in &series {
        r.row(vec![c.word_bound.to_string(), c.radius.to_string(), c.count.to_string()]);
    }
    let counts: Vec<usize> = series.iter().map(|c| c.count).collect();
    r.note(format!("census at R={}: {counts:?}", a.radius));
    if counts.windows(2).any(|w| w[1] < w[0]) {
        r.fail("census decreased in W");
    }
    r.with_data(&series.last())
}

fn run_qie(target: &Target, a: &QieArgs) -> Result<Report> {
    let (action, base) = target.action()?;
    let q = qie_probe(action, base, a.words)?;
    let mut r = Report::new("qie", &["length", "elements", "min_displacement", "max_displacement", "min_over_length"]);
    for row in &q.rows {
        let lo = (row.min_displacement_sq as f64).sqrt();
        r.row(vec![
            row.length.to_string(),
            row.elements.to_string(),
            fmt_f(lo),
            fmt_f((row.max_displacement_sq as f64).sqrt()),
            fmt_f(lo / row.length as f64),
        ]);
    }
    r.note(format!("lower envelope slope {} ({:.6})", q.lower_slope, q.lower_slope.value()));
    r.with_data(&q)
}

fn run_ball(target: &Target, a: &BallArgs) -> Result<Report> {
    let (action, base) = target.action()?;
    let space = action.space.factors.get(a.factor).ok_or_else(|| anyhow!("no factor {}", a.factor))?;
    let ball = grow_ball(space, &base[a.factor], a.radius)?;
    let mut r = Report::new("ball", &["index", "key", "distance", "degree"]);
    for (i, v) in ball.members().iter().enumerate() {
        r.row(vec![i.to_string(), v.to_hex(), ball.dist_from_center(v)?.to_string(), ball.adjacency(i).len().to_string()]);
    }
    r.note(format!("{} vertices and {} edges within radius {} of {}", ball.len(), ball.edge_count(), a.radius, space.describe(&base[a.factor])));
    r.with_data(&ball.dump(&space.name))
}

fn run_delta(target: &Target, a: &DeltaArgs, seed: u64) -> Result<Report> {
    let (action, base) = target.action()?;
    let factors: Vec<usize> = match a.factor {
        Some(f) => vec![f],
        None => (0..action.arity()).collect(),
    };
    let mut r = Report::new("delta", &["factor", "space", "radius", "vertices", "delta", "exhaustive", "tuples"]);
    let opts = DeltaOptions { seed, ..DeltaOptions::default() };
    let mut out = Vec::new();
    for f in factors {
        let space = action.space.factors.get(f).ok_or_else(|| anyhow!("no factor {f}"))?;
        let ball = grow_ball(space, &base[f], a.radius)?;
        let d = four_point_delta(&ball, space, &opts)?;
        r.row(vec![
            f.to_string(),
            space.name.clone(),
            a.radius.to_string(),
            ball.len().to_string(),
            format!("{}", d.delta()),
            d.exhaustive.to_string(),
            d.tuples_scanned.to_string(),
        ]);
        r.note(format!("factor {f} ({}): delta {} at radius {}{}", space.name, d.delta(), a.radius, if d.exhaustive { "" } else { " (sampled lower bound)" }));
        out.push(d);
    }
    r.note(format!("seed {seed}"));
    r.with_data(&out)
}

fn run_axis(target: &Target, a: &AxisArgs) -> Result<Report> {
    let (action, _) = target.action()?;
    let fa = action.factor_action(a.factor)?;
    let w = fa.parse(&one_element(target, &a.element)?)?;
    let pa = pseudoaxis(&fa, &w, a.radius, a.horizon)?;
    let space = &fa.space.factors[0];
    let mut r = Report::new("axis", &["orbit", "representative"]);
    for (i, v) in pa.orbit_reps.iter().enumerate() {
        r.row(vec![i.to_string(), space.describe(v)]);
    }
    r.note(format!("{} on factor {}: min_disp={}, orbit_count={}, members={}", pa.g, a.factor, pa.min_disp, pa.orbit_count, pa.members.len()));
    r.with_data(&pa)
}

fn character_row(r: &mut Report, labels: &[String], phi: &ZCharacter, model: &[loxodrome::axis::SymElem]) {
    for (i, label) in labels.iter().enumerate() {
        r.row(vec![label.clone(), phi.values[i].to_string(), format!("{:?}", model[i].r), format!("{:?}", model[i].pi)]);
    }
}

fn run_character(target: &Target, a: &CharacterArgs) -> Result<Report> {
    let (action, _) = target.action()?;
    let entry_central = target.entry.as_ref().and_then(|e| e.central.clone());
    let central = a.central.clone().or_else(|| entry_central.as_ref().map(|c| c.0.clone())).ok_or_else(|| anyhow!("no --central given"))?;
    let factor = a.factor.or_else(|| entry_central.as_ref().filter(|c| c.0 == central).map(|c| c.1)).unwrap_or(0);
    let fa = action.factor_action(factor)?;
    let g = fa.parse(&central)?;
    let opts = CharacterOptions { search_radius: a.radius, horizon: a.horizon, ..CharacterOptions::default() };
    let ch = phi_from_central(&fa, &g, &opts)?;
    let labels: Vec<String> = (0..fa.gens.rank()).map(|i| fa.gens.label(fa.gens.generator(i)).to_string()).collect();
    let mut r = Report::new("character", &["generator", "phi", "r", "pi"]);
    character_row(&mut r, &labels, &ch.phi, &ch.model);
    let vals: Vec<String> = labels.iter().zip(&ch.phi.values).map(|(l, v)| format!("phi({l})={v}")).collect();
    r.note(format!("central {central} on factor {factor}: l={}, {}", ch.l, vals.join(", ")));
    r.note(format!("pseudoaxis orbit_count={}, centrality probes={}", ch.pseudoaxis.orbit_count, ch.centrality_probes));
    let words = reduced_words(&fa.gens, a.words);
    let rows = kernel_law(&fa, &ch, &words, a.horizon)?;
    let bad: Vec<&str> = rows.iter().filter(|k| !k.holds).map(|k| k.word.as_str()).collect();
    r.note(format!("kernel law on {} words of length <= {}: {} failures", rows.len(), a.words, bad.len()));
    if !bad.is_empty() {
        r.fail(format!("kernel law fails on {}", bad.iter().take(5).copied().collect::<Vec<_>>().join(", ")));
    }
    let heuristic = rows.iter().filter(|k| k.bounded && k.cycle.is_none()).count();
    if heuristic > 0 {
        r.note(format!("{heuristic} bounded orbits judged at the horizon without an exhibited cycle"));
    }
    r.with_data(&json!({ "character": ch, "kernel": rows }))
}

fn parse_theta(gens: &loxodrome::action::GenSet, text: &str) -> Result<ZCharacter> {
    let mut values = vec![0i64; gens.rank()];
    for kv in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| anyhow!("expected label=value, got {kv:?}"))?;
        let l = gens.find(k.trim()).ok_or_else(|| anyhow!("unknown generator {k:?}"))?;
        values[l as usize / 2] = v.trim().parse().with_context(|| format!("value for {k}"))?;
    }
    Ok(ZCharacter::new(gens.clone(), values)?)
}

fn run_extend(target: &Target, a: &ExtendArgs) -> Result<Report> {
    let Some(Content::Extension(ext)) = target.entry.as_ref().map(|e| &e.content) else {
        bail!("extend needs a presented gallery entry such as example_i");
    };
    let theta = parse_theta(&ext.h_gens, &a.theta)?;
    let h0 = match &a.h0 {
        Some(s) => ext.h_gens.parse(s)?,
        None => ext.central.clone(),
    };
    let mut r = Report::new("extend", &["generator", "phi", "r", "pi"]);
    match extend_character(ext, &theta, &h0) {
        Ok(x) => {
            let labels: Vec<String> = (0..ext.g_gens.rank()).map(|i| ext.g_gens.label(ext.g_gens.generator(i)).to_string()).collect();
            character_row(&mut r, &labels, &x.phi, &x.model);
            let vals: Vec<String> = labels.iter().zip(&x.phi.values).map(|(l, v)| format!("phi({l})={v}")).collect();
            r.note(format!("{}: l={}, {}", ext.name, x.l, vals.join(", ")));
            r.note(format!("{} relators checked", x.relators_checked));
            r.with_data(&x)
        }
        Err(AxisError::RejectedCharacter { relator, value }) => {
            r.note(format!("{}: theta rejected, relator {relator} has value {value}", ext.name));
            r.fail(format!("theta does not vanish on {relator}"));
            r.with_data(&json!({ "rejected": relator, "value": value }))
        }
        Err(e) => Err(e.into()),
    }
}

fn run_distort(target: &Target, a: &DistortArgs) -> Result<Report> {
    if let Some(Content::Semidirect { .. }) = target.entry.as_ref().map(|e| &e.content) {
        let rows = z4_semidirect_probe(a.n_max)?;
        let probe = distortion_probe(z4_samples(a.n_max)?)?;
        let eig = eigen_report()?;
        let mut r = Report::new("distort", &["n", "ambient", "alpha", "beta", "gamma", "delta", "norm", "log_norm_over_n"]);
        for z in &rows {
            let [p, q, s, t] = z.coords;
            r.row(vec![z.n.to_string(), z.ambient.to_string(), p.to_string(), q.to_string(), s.to_string(), t.to_string(), z.norm.to_string(), fmt_f(z.log_norm_over_n)]);
        }
        r.note(format!("verdict {:?}, slope {:.4} per n ({:.4} per ambient length)", probe.verdict, probe.slope_per_n, probe.slope_per_ambient));
        r.note(format!("characteristic polynomial {:?} (constant term first), palindromic {}", eig.char_poly, eig.palindromic));
        r.note(format!("lambda {:.6}, log lambda {:.6}, unit pair moduli {:?}", eig.lambda, eig.lambda.ln(), eig.unit_pair_moduli));
        return r.with_data(&json!({ "probe": probe, "eigen": eig }));
    }
    let (action, base) = target.action()?;
    if let Some(e) = &a.element {
        let w = action.parse(e)?;
        let probe = distortion_probe(power_samples(action, &w, base, a.horizon)?)?;
        let mut r = Report::new("distort", &["n", "ambient", "norm", "displacement"]);
        for s in &probe.samples {
            r.row(vec![s.n.to_string(), fmt_f(s.ambient), fmt_f(s.norm), s.displacement.map(fmt_f).unwrap_or_default()]);
        }
        let verdict = match probe.verdict {
            Verdict::Exponential => "Exponential",
            Verdict::LinearCompatible => "Linear-compatible",
        };
        r.note(format!("<{e}>: verdict {verdict}"));
        return r.with_data(&probe);
    }
    let pick_specs: Vec<(String, usize)> = if a.pick.is_empty() {
        target.entry.as_ref().map(|e| e.picks.clone()).unwrap_or_default()
    } else {
        a.pick
            .iter()
            .map(|p| {
                let (w, f) = p.rsplit_once('@').ok_or_else(|| anyhow!("pick {p:?} should look like word@factor"))?;
                Ok((w.to_string(), f.parse().with_context(|| format!("factor in {p:?}"))?))
            })
            .collect::<Result<_>>()?
    };
    if pick_specs.is_empty() {
        bail!("no picks: give --pick word@factor or --element");
    }
    let picks: Vec<(GroupWord, usize)> = pick_specs.iter().map(|(w, f)| Ok((action.parse(w)?, *f))).collect::<Result<_>>()?;
    let m = picks.len();
    let mut cols: Vec<String> = (1..=m).map(|i| format!("n{i}")).collect();
    cols.extend(["bound", "actual_d2", "pass"].map(String::from));
    let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut r = Report::new("distort", &col_refs);
    let opts = CertificateOptions { horizon: a.horizon.max(64), ..CertificateOptions::default() };
    let cert = match undistortion_certificate(action, &picks, base, &opts) {
        Ok(c) => c,
        Err(e @ (DistortionError::EllipticityUncertified { .. } | DistortionError::TauUncertified { .. })) => {
            r.note(format!("certificate refused: {e}"));
            r.uncertified(e.to_string());
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    let rows = verify_certificate(action, &cert, &picks, a.sample)?;
    for b in &rows {
        let mut cells: Vec<String> = b.exponents.iter().map(|n| n.to_string()).collect();
        cells.extend([fmt_f(b.bound), b.actual_sq.to_string(), b.pass.to_string()]);
        r.row(cells);
    }
    let failures = rows.iter().filter(|b| !b.pass).count();
    r.note(format!("K={}, epsilon={}, m={}; {} lattice points with sum |n_i| <= {}, {failures} violations", cert.k, cert.epsilon, cert.m, rows.len(), a.sample));
    if failures > 0 {
        r.fail(format!("{failures} sampled elements violate the bound"));
    }
    r.with_data(&cert)
}

fn run_picks(target: &Target, a: &PicksArgs) -> Result<Report> {
    let (action, _) = target.action()?;
    let mut r = Report::new("picks", &["word", "factor"]);
    match search_picks(action, a.rank, a.words, &CharacterOptions::default()) {
        Ok(s) => {
            for (w, f) in &s.picks {
                r.row(vec![w.clone(), f.to_string()]);
            }
            let rank = s.map.as_ref().map(|m| m.rank).unwrap_or(0);
            r.note(format!("rank {rank} character map from {} picks after {} words", s.picks.len(), s.words_examined));
            r.with_data(&s)
        }
        Err(AxisError::RankDeficient { target, achieved }) => {
            r.note(format!("RankDeficient: target {target}, achieved {achieved} on {} factors", action.arity()));
            r.with_data(&json!({ "rank_deficient": { "target": target, "achieved": achieved } }))
        }
        Err(e) => Err(e.into()),
    }
}

fn run_cover(target: &Target, a: &CoverArgs) -> Result<Report> {
    let (action, _) = target.action()?;
    let w = action.parse(&one_element(target, &a.element)?)?;
    let c = coset_cover_check(action, &w, a.depth, a.horizon)?;
    let mut r = Report::new("cover", &["depth", "samples", "k", "max_offset_sq"]);
    for row in &c.rows {
        r.row(vec![row.depth.to_string(), row.samples.to_string(), row.k.to_string(), row.max_offset_sq.to_string()]);
    }
    r.note(format!("{}: k={}, covered={}", c.g, c.k, c.covered));
    if !c.covered {
        r.uncertified("coset count still growing at the last depth");
    }
    r.with_data(&c)
}
