//! Checkers for the gcd constraints along castling chains, the absence of
//! repeated `SL` factors in bounded orbits, the catalog's dimension
//! identities, and a decomposition proxy for étale modules with
//! one-dimensional centre.
//!
//! Every checker returns a [`Report`]. A report passes when it has no
//! violations and nothing was cut off before a claim could be made.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::castling::{
    castle, enumerate_orbit, is_reduced, reduce, Orbit, OrbitLimits,
};
use crate::catalog::{
    catalog, catalog_instantiate, match_nonregular_family, match_regular_entry, CatalogEntry,
    Flag,
};
use crate::error::{Error, Result};
use crate::expr::format_module;
use crate::lie::{irrep_dim, Family};
use crate::module::Module;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ViolationCode {
    #[serde(rename = "SHAPE")]
    Shape,
    #[serde(rename = "GCD-PAIR")]
    GcdPair,
    #[serde(rename = "GCD-N-EXTRA")]
    GcdNExtra,
    #[serde(rename = "GCD-DRIFT")]
    GcdDrift,
    #[serde(rename = "EQUAL-FACTORS")]
    EqualFactors,
    #[serde(rename = "DIM-MISMATCH")]
    DimMismatch,
    #[serde(rename = "NOT-REDUCED")]
    NotReduced,
    #[serde(rename = "UNMATCHED-COMPONENT")]
    UnmatchedComponent,
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationCode::Shape => "SHAPE",
            ViolationCode::GcdPair => "GCD-PAIR",
            ViolationCode::GcdNExtra => "GCD-N-EXTRA",
            ViolationCode::GcdDrift => "GCD-DRIFT",
            ViolationCode::EqualFactors => "EQUAL-FACTORS",
            ViolationCode::DimMismatch => "DIM-MISMATCH",
            ViolationCode::NotReduced => "NOT-REDUCED",
            ViolationCode::UnmatchedComponent => "UNMATCHED-COMPONENT",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub location: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub checked: usize,
    pub nodes_visited: usize,
    pub truncated_steps: bool,
    pub truncated_dim: bool,
    pub truncated_nodes: bool,
}

impl Stats {
    fn absorb(&mut self, orbit: &Orbit) {
        self.nodes_visited += orbit.members.len();
        self.truncated_steps |= orbit.truncated_steps;
        self.truncated_dim |= orbit.truncated_dim;
        self.truncated_nodes |= orbit.truncated_nodes;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    pub stats: Stats,
    pub notes: Vec<String>,
}

impl Report {
    fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            verdict: Verdict::Pass,
            violations: Vec::new(),
            stats: Stats::default(),
            notes: Vec::new(),
        }
    }

    fn violation(&mut self, code: ViolationCode, location: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            code,
            location: location.into(),
            detail: detail.into(),
        });
    }

    /// Sets the verdict from the violations, the node budget and `undecided`.
    fn finish(mut self, undecided: bool) -> Self {
        self.verdict = if !self.violations.is_empty() {
            Verdict::Fail
        } else if undecided || self.stats.truncated_nodes {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn count(&self, code: ViolationCode) -> usize {
        self.violations.iter().filter(|v| v.code == code).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.subject, self.verdict)?;
        let s = &self.stats;
        let mut cut = Vec::new();
        if s.truncated_steps {
            cut.push("steps");
        }
        if s.truncated_dim {
            cut.push("dim");
        }
        if s.truncated_nodes {
            cut.push("nodes");
        }
        write!(f, "  checked {}, nodes visited {}", s.checked, s.nodes_visited)?;
        if !cut.is_empty() {
            write!(f, ", bounded by {}", cut.join("+"))?;
        }
        writeln!(f)?;
        for v in &self.violations {
            writeln!(f, "  {} at {}: {}", v.code, v.location, v.detail)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    /// One simple factor outside the `ω_1` factors.
    TheoremA,
    /// Every simple factor is an `SL_m` acting by `ω_1`.
    AllStandard,
}

/// An irreducible module split as `L × SL_{m_1} × ... × SL_{m_k}` with the
/// `SL` factors acting by `ω_1` (or its dual).
#[derive(Clone, Debug)]
struct Profile {
    mode: Mode,
    /// Dimension of `L`'s representation.
    n: BigUint,
    /// `(factor index, m_i)` after dropping trivial factors.
    ms: Vec<(usize, u64)>,
}

impl Profile {
    /// Indices into `ms` whose `m_i` shares a factor with `n`.
    fn exceptional(&self) -> Vec<usize> {
        (0..self.ms.len())
            .filter(|&i| !self.n.gcd(&BigUint::from(self.ms[i].1)).is_one())
            .collect()
    }

    fn bad_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.ms.len() {
            for j in i + 1..self.ms.len() {
                if self.ms[i].1.gcd(&self.ms[j].1) != 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `gcd(n, m_{i_0})` at the exceptional index, 1 if there is none.
    fn exceptional_gcd(&self) -> BigUint {
        self.exceptional()
            .first()
            .map_or_else(BigUint::one, |&i| self.n.gcd(&BigUint::from(self.ms[i].1)))
    }
}

fn profile(m: &Module) -> std::result::Result<Profile, String> {
    let m = m.without_trivial_factors();
    let summand = &m.summands()[0];
    let mut ms = Vec::new();
    let mut rest = Vec::new();
    for (i, (f, w)) in m.factors().iter().zip(summand.weights()).enumerate() {
        let standard = f.family() == Family::A && (w.is_fundamental(1) || w.is_fundamental(f.rank()));
        if standard {
            ms.push((i, f.rank() + 1));
        } else {
            rest.push(i);
        }
    }
    match rest.as_slice() {
        [] => Ok(Profile {
            mode: Mode::AllStandard,
            n: BigUint::one(),
            ms,
        }),
        [r] => Ok(Profile {
            mode: Mode::TheoremA,
            n: irrep_dim(&m.factors()[*r], &summand.weights()[*r]).expect("validated module"),
            ms,
        }),
        _ => {
            let names: Vec<String> = rest.iter().map(|&i| m.factors()[i].to_string()).collect();
            Err(format!(
                "{} simple factors act by something other than ω_1: {}",
                rest.len(),
                names.join(", ")
            ))
        }
    }
}

fn describe_ms(p: &Profile, idx: &[usize]) -> String {
    let v: Vec<String> = idx.iter().map(|&i| format!("SL{}", p.ms[i].1)).collect();
    v.join(", ")
}

fn theorem_a_into(report: &mut Report, m: &Module, location: &str) -> Option<Profile> {
    report.stats.checked += 1;
    let p = match profile(m) {
        Ok(p) => p,
        Err(detail) => {
            report.violation(ViolationCode::Shape, location, detail);
            return None;
        }
    };
    let pairs = p.bad_pairs();
    match p.mode {
        Mode::TheoremA => {
            for &(i, j) in &pairs {
                report.violation(
                    ViolationCode::GcdPair,
                    location,
                    format!(
                        "gcd({}, {}) = {}",
                        p.ms[i].1,
                        p.ms[j].1,
                        p.ms[i].1.gcd(&p.ms[j].1)
                    ),
                );
            }
            let exceptional = p.exceptional();
            if exceptional.len() > 1 {
                report.violation(
                    ViolationCode::GcdNExtra,
                    location,
                    format!(
                        "n = {} shares a factor with {} (at most one allowed)",
                        p.n,
                        describe_ms(&p, &exceptional)
                    ),
                );
            }
        }
        Mode::AllStandard if pairs.len() > 1 => {
            let list: Vec<String> = pairs
                .iter()
                .map(|&(i, j)| format!("({}, {})", p.ms[i].1, p.ms[j].1))
                .collect();
            report.violation(
                ViolationCode::GcdPair,
                location,
                format!("{} non-coprime pairs (at most one allowed): {}", pairs.len(), list.join(" ")),
            );
        }
        Mode::AllStandard => {}
    }
    Some(p)
}

fn require_irreducible(m: &Module) -> Result<()> {
    if m.is_irreducible() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "expected an irreducible module, got {} summands",
            m.summands().len()
        )))
    }
}

/// Checks the gcd constraints on one irreducible module.
///
/// ```
/// use phv::{parse_module, verify::theorem_a_check};
///
/// let sk_i_8 = parse_module("GL1 x SL3 x SL2 : 2w1 # w1").unwrap();
/// assert!(theorem_a_check(&sk_i_8).unwrap().passed());
/// ```
pub fn theorem_a_check(m: &Module) -> Result<Report> {
    require_irreducible(m)?;
    let mut report = Report::new(format!("theorem-a {}", format_module(m)));
    if let Some(p) = theorem_a_into(&mut report, m, "module") {
        let mode = match p.mode {
            Mode::TheoremA => "one factor outside the ω_1 factors",
            Mode::AllStandard => "all factors act by ω_1",
        };
        report.notes.push(format!(
            "{mode}; n = {}, m = [{}]",
            p.n,
            p.ms.iter().map(|(_, m)| m.to_string()).collect::<Vec<_>>().join(", ")
        ));
        let exc = p.exceptional();
        if p.mode == Mode::TheoremA && exc.len() == 1 {
            report.notes.push(format!(
                "exceptional index at SL{} with gcd {}",
                p.ms[exc[0]].1,
                p.exceptional_gcd()
            ));
        }
    }
    Ok(report.finish(false))
}

/// Runs [`theorem_a_check`] over a bounded orbit of `seed` and checks that
/// the exceptional gcd stays equal to the seed's along every path.
///
/// The seed must be irreducible with exactly one simple factor outside the
/// `ω_1` factors and at most one `ω_1` factor. When it has no `ω_1` factor
/// (a one-simple seed) no member may have an exceptional index.
pub fn chain_invariant_check(seed: &Module, limits: &OrbitLimits) -> Result<Report> {
    require_irreducible(seed)?;
    let seed_profile = profile(seed).map_err(Error::Precondition)?;
    if seed_profile.mode != Mode::TheoremA || seed_profile.ms.len() > 1 {
        return Err(Error::Precondition(
            "seed must have the shape L × GL_m with σ ⊗ ω_1 and L simple".into(),
        ));
    }
    let one_simple = seed_profile.ms.is_empty();
    let expected = seed_profile.exceptional_gcd();
    let start = canonical_form(seed);
    let mut report = Report::new(format!("chain {}", format_module(&start)));
    let orbit = enumerate_orbit(&start, limits)?;
    report.stats.absorb(&orbit);

    let mut gcd_of: HashMap<Module, Option<BigUint>> = HashMap::new();
    for (k, member) in orbit.members.iter().enumerate() {
        let location = format!("member {} ({})", k + 1, format_module(&member.module));
        if let Some(p) = theorem_a_into(&mut report, &member.module, &location) {
            if one_simple && !p.exceptional().is_empty() {
                report.violation(
                    ViolationCode::GcdNExtra,
                    &location,
                    format!(
                        "one-simple chain, yet n = {} shares a factor with {}",
                        p.n,
                        describe_ms(&p, &p.exceptional())
                    ),
                );
            }
            let g = (!p.ms.is_empty()).then(|| p.exceptional_gcd());
            gcd_of.insert(member.module.clone(), g);
        }
    }

    // replay every path from the seed
    for member in &orbit.members {
        let mut current = start.clone();
        for (step, mv) in member.path.iter().enumerate() {
            current = castle(&current, mv)?;
            let g = match gcd_of.get(&current) {
                Some(g) => g.clone(),
                None => profile(&current).ok().and_then(|p| (!p.ms.is_empty()).then(|| p.exceptional_gcd())),
            };
            if let Some(g) = g {
                if g != expected {
                    report.violation(
                        ViolationCode::GcdDrift,
                        format!("step {} towards {}", step + 1, format_module(&member.module)),
                        format!("exceptional gcd {g}, seed has {expected}"),
                    );
                }
            }
        }
    }
    report
        .notes
        .push(format!("exceptional gcd of the seed: {expected}"));
    Ok(report.finish(false))
}

/// Seeds whose bounded orbits are scanned for repeated simple factors.
pub fn theorem_b_seeds() -> Vec<(String, Module)> {
    let mut out = Vec::new();
    let mut add = |id: &str, params: &[u64]| {
        let m = catalog_instantiate(id, params).expect("catalog seed");
        let label = if params.is_empty() {
            id.to_string()
        } else {
            let p: Vec<String> = params.iter().map(u64::to_string).collect();
            format!("{id}({})", p.join(","))
        };
        out.push((label, m));
    };
    add("SK I-4", &[]);
    add("SK I-8", &[]);
    add("SK I-11", &[]);
    for p in [[1, 2], [1, 3], [2, 4], [2, 5], [3, 7]] {
        add("SK III-2", &p);
    }
    add("SK III-3", &[2]);
    add("SK III-4", &[2]);
    add("SK III-5", &[4, 1]);
    add("SK III-6", &[]);
    out
}

fn equal_factor_violation(m: &Module) -> Option<String> {
    let f = m.factors();
    let mut degrees: Vec<u64> = f.iter().filter_map(|x| x.sl_degree()).collect();
    degrees.sort_unstable();
    if let Some(w) = degrees.windows(2).find(|w| w[0] == w[1]) {
        return Some(format!("two factors SL{}", w[0]));
    }
    if f.len() >= 2 && f.iter().all(|x| *x == f[0]) {
        return Some(format!("all {} simple factors equal {}", f.len(), f[0]));
    }
    None
}

/// Scans bounded orbits of the default seeds.
pub fn theorem_b_scan(limits: &OrbitLimits) -> Result<Report> {
    theorem_b_scan_with_seeds(&theorem_b_seeds(), limits)
}

/// Scans bounded orbits of `seeds` for two equal `SL_m` factors or an
/// all-equal group, and for seeds with a non-`SL` factor that lose it.
pub fn theorem_b_scan_with_seeds(seeds: &[(String, Module)], limits: &OrbitLimits) -> Result<Report> {
    let mut report = Report::new("theorem-b scan");
    for (label, seed) in seeds {
        let orbit = enumerate_orbit(seed, limits)?;
        report.stats.absorb(&orbit);
        let has_other = |m: &Module| m.without_trivial_factors().factors().iter().any(|f| !f.is_type_a());
        let seed_has_other = has_other(seed);
        for member in &orbit.members {
            report.stats.checked += 1;
            let location = format!("{label} orbit: {}", format_module(&member.module));
            if let Some(detail) = equal_factor_violation(&member.module) {
                report.violation(ViolationCode::EqualFactors, &location, detail);
            }
            if seed_has_other && !has_other(&member.module) {
                report.violation(
                    ViolationCode::Shape,
                    &location,
                    "only SL factors left although the seed has another simple factor",
                );
            }
        }
        report
            .notes
            .push(format!("{label}: {} members", orbit.members.len()));
    }
    Ok(report.finish(false))
}

/// Checks every catalog entry, sampling parameters up to 12.
pub fn verify_catalog() -> Report {
    verify_entries(catalog(), 12)
}

/// Catalog consistency: étale identities, flags, reducedness, the one-simple
/// shape of Ks entries, and per-summand dimension bookkeeping.
pub fn verify_entries(entries: &[CatalogEntry], max_param: u64) -> Report {
    let mut report = Report::new("catalog");
    let mut etale_entries = 0;
    for entry in entries {
        let etale = entry.has(Flag::Etale);
        etale_entries += etale as usize;
        if entry.has(Flag::Regular) && entry.has(Flag::Nonregular) {
            report.violation(ViolationCode::Shape, &entry.id, "flagged both regular and nonregular");
        }
        if etale && !entry.has(Flag::Regular) {
            report.violation(ViolationCode::Shape, &entry.id, "étale but not flagged regular");
        }
        for params in entry.sample_params(max_param) {
            let location = entry.label(&params);
            let m = match entry.instantiate(&params) {
                Ok(m) => m,
                Err(e) => {
                    report.violation(ViolationCode::Shape, &location, e.to_string());
                    continue;
                }
            };
            report.stats.checked += 1;
            if etale {
                check_etale_instance(&mut report, entry, &location, &m);
            }
            if entry.has(Flag::Irreducible) && !m.is_irreducible() {
                report.violation(ViolationCode::Shape, &location, "flagged irreducible but reducible");
            }
            if entry.has(Flag::Reduced) && !is_reduced(&m) {
                report.violation(ViolationCode::NotReduced, &location, "a castling transform lowers dim V");
            }
        }
        for alias in entry.aliases.iter().filter(|a| a.variant.is_some()) {
            let m = alias.variant.as_ref().unwrap();
            report.stats.checked += 1;
            if etale {
                check_etale_instance(&mut report, entry, &alias.id, m);
            }
        }
    }
    report.notes.push(format!("{etale_entries} étale entries checked"));
    report.finish(false)
}

fn check_etale_instance(report: &mut Report, entry: &CatalogEntry, location: &str, m: &Module) {
    let (g, v) = (m.group_dim(), m.module_dim());
    if g != v {
        report.violation(
            ViolationCode::DimMismatch,
            location,
            format!("dim G = {g} but dim V = {v}"),
        );
    }
    if m.torus_dim() == 0 {
        report.violation(ViolationCode::Shape, location, "étale entry without a torus");
    }
    if entry.id.starts_with("Ks ") {
        let s = m.without_trivial_factors();
        if s.factors().len() != 1 || !s.factors()[0].is_type_a() {
            report.violation(
                ViolationCode::Shape,
                location,
                "one-simple étale entry whose simple factor is not SL_n",
            );
        }
    }
    // the isotropy of a generic point of V_1 has dimension dim G - dim V_1,
    // which must be at least dim V - dim V_1 for the rest to be étale
    for s in 0..m.summands().len() {
        let vs = m.summand_dim(s);
        if vs > g {
            report.violation(
                ViolationCode::DimMismatch,
                format!("{location}, summand {}", s + 1),
                format!("dim V_{} = {vs} exceeds dim G = {g}", s + 1),
            );
        }
    }
}

/// How a component of a submodule was classified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    NonRegular { id: String, params: Vec<u64> },
    Regular { id: String, params: Vec<u64> },
    Unknown,
}

/// Classifies an irreducible module by matching it, or a member of its
/// bounded castling orbit, against the stored families.
pub fn classify_component(m: &Module, limits: &OrbitLimits) -> Classification {
    let base = reduce(&m.without_trivial_factors().without_idle_torus());
    if let Some((id, params)) = match_nonregular_family(&base) {
        return Classification::NonRegular { id, params };
    }
    if let Some((id, params)) = match_regular_entry(&base) {
        return Classification::Regular { id, params };
    }
    if let Ok(orbit) = enumerate_orbit(&base, limits) {
        for member in &orbit.members {
            if let Some((id, params)) = match_nonregular_family(&member.module) {
                return Classification::NonRegular { id, params };
            }
            if let Some((id, params)) = match_regular_entry(&member.module) {
                return Classification::Regular { id, params };
            }
        }
    }
    Classification::Unknown
}

/// One classified component of one proper submodule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentMatch {
    /// 0-based summands of the submodule.
    pub subset: Vec<usize>,
    pub component: Module,
    pub class: Classification,
}

/// Classifies every irreducible component of every reduced proper submodule.
pub fn decomposition_components(m: &Module, limits: &OrbitLimits) -> Result<Vec<ComponentMatch>> {
    if !m.is_etale_candidate() || m.torus_dim() != 1 {
        return Err(Error::Precondition(format!(
            "needs an étale candidate with one-dimensional torus, got torus dimension {}{}",
            m.torus_dim(),
            if m.is_etale_candidate() { "" } else { " and dim G ≠ dim V" }
        )));
    }
    let s = m.summands().len();
    if s > 16 {
        return Err(Error::Precondition(format!("{s} summands give too many submodules")));
    }
    let mut cache: HashMap<Module, Classification> = HashMap::new();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << s) - 1 {
        let subset: Vec<usize> = (0..s).filter(|&i| mask >> i & 1 == 1).collect();
        let sub = reduce(&m.submodule(&subset)?);
        for c in 0..sub.summands().len() {
            let component = canonical_form(
                &reduce(&sub.submodule(&[c])?.without_trivial_factors().without_idle_torus()),
            );
            let class = cache
                .entry(component.clone())
                .or_insert_with(|| classify_component(&component, limits))
                .clone();
            out.push(ComponentMatch {
                subset: subset.clone(),
                component,
                class,
            });
        }
    }
    Ok(out)
}

/// Every component of a proper submodule should be non-regular. Components
/// equal to a regular catalog entry are violations; components the catalog
/// cannot place make the verdict inconclusive.
pub fn baues_decomposition_check(m: &Module, limits: &OrbitLimits) -> Result<Report> {
    let components = decomposition_components(m, limits)?;
    let mut report = Report::new(format!("decomposition {}", format_module(m)));
    let mut unknown = 0;
    let mut seen: HashMap<Module, ()> = HashMap::new();
    for c in &components {
        report.stats.checked += 1;
        let location = format!(
            "summands {{{}}}",
            c.subset.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
        );
        match &c.class {
            Classification::NonRegular { .. } => {}
            Classification::Regular { id, params } => report.violation(
                ViolationCode::UnmatchedComponent,
                location,
                format!("{} is the regular entry {id}{params:?}", format_module(&c.component)),
            ),
            Classification::Unknown => unknown += 1,
        }
        if seen.insert(c.component.clone(), ()).is_none() {
            let what = match &c.class {
                Classification::NonRegular { id, params } => format!("non-regular {id}{params:?}"),
                Classification::Regular { id, params } => format!("regular {id}{params:?}"),
                Classification::Unknown => "not classified by the catalog".into(),
            };
            report.notes.push(format!("{}: {what}", format_module(&c.component)));
        }
    }
    Ok(report.finish(unknown > 0))
}
