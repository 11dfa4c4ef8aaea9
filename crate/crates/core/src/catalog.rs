//! Tables of classified modules.
//!
//! The étale entries are the étale members of the Sato–Kimura list of
//! irreducible reduced modules (SK I), of Kimura's list of one-simple modules
//! with scalar multiplications (Ks), and of the two-simple type I list of
//! Kimura, Kasai, Inuzuka and Yasukura (KI). The non-regular entries are the
//! reduced irreducible non-regular families SK III-1 to SK III-6.
//!
//! Regularity is recorded as data; nothing here computes it.
//!
//! ```
//! use phv::catalog::{catalog_instantiate, catalog_list, Flag};
//!
//! assert_eq!(catalog_list(&[Flag::Etale]).len(), 13);
//! let m = catalog_instantiate("Ks A-2", &[3]).unwrap();
//! assert!(m.is_etale_candidate());
//! assert!(catalog_instantiate("SK III-2", &[2, 3]).is_err());
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::expr::{format_module, parse_module};
use crate::lie::Family;
use crate::module::Module;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    Etale,
    Regular,
    Nonregular,
    Reduced,
    Irreducible,
}

impl Flag {
    pub const ALL: [Flag; 5] = [
        Flag::Etale,
        Flag::Regular,
        Flag::Nonregular,
        Flag::Reduced,
        Flag::Irreducible,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Etale => "etale",
            Flag::Regular => "regular",
            Flag::Nonregular => "nonregular",
            Flag::Reduced => "reduced",
            Flag::Irreducible => "irreducible",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Flag> {
        Flag::ALL
            .into_iter()
            .find(|f| f.as_str() == s.trim())
            .ok_or_else(|| Error::Precondition(format!("unknown flag {s:?}")))
    }
}

/// Parses a comma-separated flag list; the empty string gives no flags.
pub fn parse_flags(text: &str) -> Result<BTreeSet<Flag>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(Flag::from_str)
        .collect()
}

/// Another name under which an entry appears in the tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alias {
    pub id: String,
    /// Parameters of the main entry this alias denotes.
    pub params: Vec<u64>,
    /// A variant module kept separately from the main entry, if any.
    pub variant: Option<Module>,
}

#[derive(Clone)]
struct FamilySpec {
    params: &'static [&'static str],
    constraint: &'static str,
    valid: fn(&[u64]) -> bool,
    expr: fn(&[u64]) -> String,
}

#[derive(Clone)]
enum Template {
    Fixed(Module),
    Family(FamilySpec),
    Instances(Vec<Module>),
}

#[derive(Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub flags: BTreeSet<Flag>,
    pub source: String,
    pub aliases: Vec<Alias>,
    template: Template,
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("id", &self.id)
            .field("flags", &self.flags)
            .field("params", &self.param_names())
            .finish()
    }
}

impl CatalogEntry {
    /// An entry with a single fixed module.
    pub fn fixed(id: &str, module: Module, flags: &[Flag], source: &str) -> Self {
        CatalogEntry {
            id: id.to_string(),
            flags: flags.iter().copied().collect(),
            source: source.to_string(),
            aliases: Vec::new(),
            template: Template::Fixed(module),
        }
    }

    pub fn has(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn param_names(&self) -> Vec<&'static str> {
        match &self.template {
            Template::Fixed(_) => vec![],
            Template::Family(spec) => spec.params.to_vec(),
            Template::Instances(_) => vec!["k"],
        }
    }

    /// Human-readable parameter range.
    pub fn constraint(&self) -> String {
        match &self.template {
            Template::Fixed(_) => "none".into(),
            Template::Family(spec) => spec.constraint.into(),
            Template::Instances(v) => format!("1 ≤ k ≤ {}", v.len()),
        }
    }

    pub fn is_parametric(&self) -> bool {
        !matches!(self.template, Template::Fixed(_))
    }

    pub fn params_valid(&self, params: &[u64]) -> bool {
        match &self.template {
            Template::Fixed(_) => params.is_empty(),
            Template::Family(spec) => params.len() == spec.params.len() && (spec.valid)(params),
            Template::Instances(v) => matches!(params, [k] if (1..=v.len() as u64).contains(k)),
        }
    }

    pub fn instantiate(&self, params: &[u64]) -> Result<Module> {
        if !self.params_valid(params) {
            return Err(Error::ParamsOutOfRange {
                id: self.id.clone(),
                params: params.to_vec(),
                constraint: self.constraint(),
            });
        }
        match &self.template {
            Template::Fixed(m) => Ok(m.clone()),
            Template::Family(spec) => parse_module(&(spec.expr)(params)),
            Template::Instances(v) => Ok(v[params[0] as usize - 1].clone()),
        }
    }

    /// Label of one instance, e.g. `Ks A-2(3)`.
    pub fn label(&self, params: &[u64]) -> String {
        if params.is_empty() {
            return self.id.clone();
        }
        let p: Vec<String> = params.iter().map(u64::to_string).collect();
        format!("{}({})", self.id, p.join(","))
    }

    /// All in-range parameter tuples with every parameter at most `max`.
    pub fn sample_params(&self, max: u64) -> Vec<Vec<u64>> {
        match &self.template {
            Template::Fixed(_) => vec![vec![]],
            Template::Instances(v) => (1..=v.len() as u64).map(|k| vec![k]).collect(),
            Template::Family(spec) => {
                let mut tuples: Vec<Vec<u64>> = vec![vec![]];
                for _ in spec.params {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            (0..=max).map(move |p| {
                                let mut t = t.clone();
                                t.push(p);
                                t
                            })
                        })
                        .collect();
                }
                tuples.retain(|t| (spec.valid)(t));
                tuples
            }
        }
    }

    /// Parameter tuples that could plausibly give `m`, read off the sizes of
    /// its simple factors.
    fn candidate_params(&self, m: &Module) -> Vec<Vec<u64>> {
        let arity = match &self.template {
            Template::Family(spec) => spec.params.len(),
            _ => return self.sample_params(0),
        };
        let mut sizes: BTreeSet<u64> = [0, 1, 2].into();
        for f in m.factors() {
            let s = match f.family() {
                Family::A => f.rank() + 1,
                _ => f.rank(),
            };
            sizes.extend([s, s / 2, s.saturating_sub(1) / 2]);
        }
        let mut tuples: Vec<Vec<u64>> = vec![vec![]];
        for _ in 0..arity {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    sizes.iter().map(move |&s| {
                        let mut t = t.clone();
                        t.push(s);
                        t
                    })
                })
                .collect();
        }
        tuples.retain(|t| self.params_valid(t));
        tuples
    }

    /// Parameters of an instance canonically equal to `m`, if any.
    pub fn find_instance(&self, m: &Module) -> Option<Vec<u64>> {
        let target = canonical_form(m);
        self.candidate_params(m).into_iter().find(|p| {
            self.instantiate(p)
                .map(|x| x.torus_dim() == target.torus_dim() && canonical_form(&x) == target)
                .unwrap_or(false)
        })
    }
}

const SK: &str = "Sato, Kimura, Nagoya Math. J. 65 (1977)";
const KS: &str = "Kimura, J. Algebra 83 (1983)";
const KI: &str = "Kimura, Kasai, Inuzuka, Yasukura, J. Algebra 114 (1988)";

fn module(text: &str) -> Module {
    parse_module(text).unwrap_or_else(|e| panic!("catalog expression {text:?}: {e}"))
}

fn repeat(rep: &str, count: u64) -> String {
    vec![rep; count as usize].join(" + ")
}

fn build() -> Vec<CatalogEntry> {
    use Flag::*;
    let fixed = |id: &str, text: &str, flags: &[Flag], source: &str| {
        CatalogEntry::fixed(id, module(text), flags, source)
    };
    let family = |id: &str, flags: &[Flag], source: &str, spec: FamilySpec| CatalogEntry {
        id: id.to_string(),
        flags: flags.iter().copied().collect(),
        source: source.to_string(),
        aliases: Vec::new(),
        template: Template::Family(spec),
    };
    let alias = |id: &str, params: Vec<u64>| Alias {
        id: id.to_string(),
        params,
        variant: None,
    };
    let sk_etale = [Etale, Regular, Reduced, Irreducible];
    let etale = [Etale, Regular];
    let nonregular = [Nonregular, Reduced, Irreducible];

    let mut ks_a2 = family(
        "Ks A-2",
        &etale,
        KS,
        FamilySpec {
            params: &["n"],
            constraint: "n ≥ 2",
            valid: |p| p[0] >= 2,
            expr: |p| format!("GL1 x SL{} : {}", p[0], repeat("w1", p[0])),
        },
    );
    ks_a2.aliases.push(alias("Ks A-20(1)", vec![2]));

    let ks_a3 = family(
        "Ks A-3",
        &etale,
        KS,
        FamilySpec {
            params: &["n"],
            constraint: "n ≥ 2",
            valid: |p| p[0] >= 2,
            expr: |p| format!("GL1^{} x SL{} : {}", p[0] + 1, p[0], repeat("w1", p[0] + 1)),
        },
    );

    let mut ks_a4 = family(
        "Ks A-4",
        &etale,
        KS,
        FamilySpec {
            params: &["n"],
            constraint: "n ≥ 2",
            valid: |p| p[0] >= 2,
            expr: |p| {
                format!(
                    "GL1^{} x SL{} : {} + w1*",
                    p[0] + 1,
                    p[0],
                    repeat("w1", p[0])
                )
            },
        },
    );
    ks_a4.aliases.push(alias("Ks A-1(2)", vec![2]));

    let mut ks_a11 = fixed("Ks A-11", "GL1^2 x SL2 : 2w1 + w1", &etale, KS);
    ks_a11.aliases.push(alias("Ks A-12(2)", vec![]));

    let mut ki_i6 = fixed(
        "KI I-6",
        "GL1^3 x SL5 x SL2 : (w2 # w1) + (w1* # 1) + (w1* # 1)",
        &etale,
        KI,
    );
    ki_i6.aliases.push(Alias {
        id: "KI I-6 (w1)".into(),
        params: vec![],
        variant: Some(module("GL1^3 x SL5 x SL2 : (w2 # w1) + (w1* # 1) + (w1 # 1)")),
    });

    let sk_iii_1 = CatalogEntry {
        id: "SK III-1".into(),
        flags: nonregular.into_iter().collect(),
        source: SK.into(),
        aliases: Vec::new(),
        template: Template::Instances(vec![
            module("GL1 x Sp2 x SL6 : w2 # w1"),
            module("GL1 x SL3 x SL7 : 2w1 # w1"),
            module("GL1 x G2 x SL8 : w1 # w1"),
        ]),
    };

    vec![
        fixed("SK I-4", "GL1 x SL2 : 3w1", &sk_etale, SK),
        fixed("SK I-8", "GL1 x SL3 x SL2 : 2w1 # w1", &sk_etale, SK),
        fixed("SK I-11", "GL1 x SL5 x SL4 : w2 # w1", &sk_etale, SK),
        ks_a2,
        ks_a3,
        ks_a4,
        ks_a11,
        fixed(
            "KI I-1",
            "GL1^2 x SL4 x SL2 : (w2 # w1) + (w1 # w1)",
            &etale,
            KI,
        ),
        fixed(
            "KI I-2",
            "GL1^2 x SL4 x SL2 : (w2 # w1) + (w1 # 1) + (w1 # 1)",
            &etale,
            KI,
        ),
        ki_i6,
        fixed(
            "KI I-16",
            "GL1^2 x Sp2 x SL3 : (w1 # w1) + (w2 # 1) + (1 # w1*)",
            &etale,
            KI,
        ),
        fixed(
            "KI I-18",
            "GL1^3 x Sp2 x SL2 : (w2 # w1) + (w1 # 1) + (1 # w1)",
            &etale,
            KI,
        ),
        fixed(
            "KI I-19",
            "GL1^3 x Sp2 x SL4 : (w2 # w1) + (w1 # 1) + (1 # w1*)",
            &etale,
            KI,
        ),
        sk_iii_1,
        family(
            "SK III-2",
            &nonregular,
            SK,
            FamilySpec {
                params: &["n", "m"],
                constraint: "m ≥ 2n, n ≥ 1",
                valid: |p| p[0] >= 1 && p[1] >= 2 * p[0],
                expr: |p| match p[0] {
                    1 => format!("GL1 x SL{} : w1", p[1]),
                    n => format!("GL1 x SL{n} x SL{} : w1 # w1", p[1]),
                },
            },
        ),
        family(
            "SK III-3",
            &nonregular,
            SK,
            FamilySpec {
                params: &["n"],
                constraint: "n ≥ 2",
                valid: |p| p[0] >= 2,
                expr: |p| format!("GL1 x SL{} : w2", 2 * p[0] + 1),
            },
        ),
        family(
            "SK III-4",
            &nonregular,
            SK,
            FamilySpec {
                params: &["n"],
                constraint: "n ≥ 2",
                valid: |p| p[0] >= 2,
                expr: |p| format!("GL1 x SL2 x SL{} : w1 # w2", 2 * p[0] + 1),
            },
        ),
        family(
            "SK III-5",
            &nonregular,
            SK,
            FamilySpec {
                params: &["n", "m"],
                constraint: "n > 2m + 1, m ≥ 0",
                valid: |p| p[0] > 2 * p[1] + 1,
                expr: |p| match p[1] {
                    0 => format!("GL1 x Sp{} : w1", p[0]),
                    m => format!("GL1 x Sp{} x SL{} : w1 # w1", p[0], 2 * m + 1),
                },
            },
        ),
        fixed("SK III-6", "GL1 x Spin10 : w5", &nonregular, SK),
    ]
}

/// The whole catalog, built once.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Entries carrying every flag in `filter`, in table order.
pub fn catalog_list(filter: &[Flag]) -> Vec<&'static CatalogEntry> {
    catalog()
        .iter()
        .filter(|e| filter.iter().all(|f| e.has(*f)))
        .collect()
}

pub fn catalog_entry(id: &str) -> Result<&'static CatalogEntry> {
    catalog()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

/// Instantiates an entry, or an alias when `params` is empty.
pub fn catalog_instantiate(id: &str, params: &[u64]) -> Result<Module> {
    if let Ok(entry) = catalog_entry(id) {
        return entry.instantiate(params);
    }
    for entry in catalog() {
        if let Some(a) = entry.aliases.iter().find(|a| a.id == id) {
            if !params.is_empty() {
                return Err(Error::ParamsOutOfRange {
                    id: id.to_string(),
                    params: params.to_vec(),
                    constraint: "aliases take no parameters".into(),
                });
            }
            return match &a.variant {
                Some(m) => Ok(m.clone()),
                None => entry.instantiate(&a.params),
            };
        }
    }
    Err(Error::UnknownEntry(id.to_string()))
}

/// Resolves a label such as `SK I-8`, `Ks A-2(3)` or `SK III-2(1,4)`.
pub fn resolve_label(label: &str) -> Result<Module> {
    let label = label.trim();
    if catalog_instantiate(label, &[]).is_ok() {
        return catalog_instantiate(label, &[]);
    }
    if let Some(open) = label.rfind('(') {
        if let Some(inner) = label[open + 1..].strip_suffix(')') {
            let params: std::result::Result<Vec<u64>, _> =
                inner.split(',').map(|p| p.trim().parse::<u64>()).collect();
            if let Ok(params) = params {
                return catalog_instantiate(label[..open].trim(), &params);
            }
        }
    }
    catalog_instantiate(label, &[])
}

/// The non-regular family and parameters of an irreducible module, if it is
/// canonically equal to a stored instance.
pub fn match_nonregular_family(m: &Module) -> Option<(String, Vec<u64>)> {
    if !m.is_irreducible() {
        return None;
    }
    catalog_list(&[Flag::Nonregular])
        .into_iter()
        .find_map(|e| e.find_instance(m).map(|p| (e.id.clone(), p)))
}

/// A regular catalog entry canonically equal to `m`, if any.
pub fn match_regular_entry(m: &Module) -> Option<(String, Vec<u64>)> {
    catalog_list(&[Flag::Regular])
        .into_iter()
        .find_map(|e| {
            e.find_instance(m)
                .map(|p| (e.id.clone(), p))
                .or_else(|| {
                    let target = canonical_form(m);
                    e.aliases.iter().find_map(|a| {
                        a.variant
                            .as_ref()
                            .filter(|v| canonical_form(v) == target)
                            .map(|_| (a.id.clone(), vec![]))
                    })
                })
        })
}

/// One line of the tab-separated export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportLine {
    pub id: String,
    pub expr: String,
    pub flags: Vec<Flag>,
    pub source: String,
}

impl fmt::Display for ExportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flags: Vec<&str> = self.flags.iter().map(|f| f.as_str()).collect();
        write!(f, "{}\t{}\t{}\t{}", self.id, self.expr, flags.join(","), self.source)
    }
}

impl FromStr for ExportLine {
    type Err = Error;

    fn from_str(line: &str) -> Result<ExportLine> {
        let cols: Vec<&str> = line.split('\t').collect();
        let [id, expr, flags, source] = cols.as_slice() else {
            return Err(Error::parse(0, format!("expected 4 tab-separated columns, got {}", cols.len())));
        };
        Ok(ExportLine {
            id: id.to_string(),
            expr: expr.to_string(),
            flags: parse_flags(flags)?.into_iter().collect(),
            source: source.to_string(),
        })
    }
}

/// Export lines for the entries matching `filter`; parametric entries are
/// expanded for parameters up to `max_param`, followed by their aliases.
pub fn export(filter: &[Flag], max_param: u64) -> Vec<ExportLine> {
    let mut out = Vec::new();
    for entry in catalog_list(filter) {
        let flags: Vec<Flag> = entry.flags.iter().copied().collect();
        for p in entry.sample_params(max_param) {
            let m = entry.instantiate(&p).expect("sampled parameters are in range");
            out.push(ExportLine {
                id: entry.label(&p),
                expr: format_module(&m),
                flags: flags.clone(),
                source: entry.source.clone(),
            });
        }
        for a in &entry.aliases {
            let m = catalog_instantiate(&a.id, &[]).expect("aliases resolve");
            out.push(ExportLine {
                id: a.id.clone(),
                expr: format_module(&m),
                flags: flags.clone(),
                source: entry.source.clone(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn counts() {
        assert_eq!(catalog_list(&[Flag::Etale]).len(), 13);
        assert_eq!(catalog_list(&[Flag::Nonregular]).len(), 6);
        assert_eq!(catalog_list(&[]).len(), 19);
        for e in catalog() {
            assert!(!(e.has(Flag::Regular) && e.has(Flag::Nonregular)), "{}", e.id);
        }
    }

    #[test]
    fn instantiate_examples() {
        let a2 = catalog_instantiate("Ks A-2", &[3]).unwrap();
        assert_eq!(a2.torus_dim(), 1);
        assert_eq!(a2.summands().len(), 3);
        assert!(a2.summands().iter().all(|s| s.scalar_slots() == &BTreeSet::from([0])));
        let iii5 = catalog_instantiate("SK III-5", &[4, 1]).unwrap();
        assert_eq!(iii5.module_dim(), BigUint::from(24u32));
        assert_eq!(format_module(&iii5), "GL1 x Sp4 x SL3 : w1 # w1");
        // n > 2m + 1 is strict
        assert!(catalog_instantiate("SK III-5", &[3, 1]).is_err());
        assert!(matches!(
            catalog_instantiate("SK III-2", &[2, 3]),
            Err(Error::ParamsOutOfRange { .. })
        ));
        assert!(matches!(
            catalog_instantiate("SK IX-1", &[]),
            Err(Error::UnknownEntry(_))
        ));
    }

    #[test]
    fn aliases_resolve() {
        assert_eq!(
            catalog_instantiate("Ks A-1(2)", &[]).unwrap(),
            catalog_instantiate("Ks A-4", &[2]).unwrap()
        );
        assert_eq!(
            catalog_instantiate("Ks A-20(1)", &[]).unwrap(),
            catalog_instantiate("Ks A-2", &[2]).unwrap()
        );
        assert!(catalog_instantiate("KI I-6 (w1)", &[]).unwrap().is_etale_candidate());
        assert_eq!(
            resolve_label("SK III-2(1,4)").unwrap(),
            catalog_instantiate("SK III-2", &[1, 4]).unwrap()
        );
        assert_eq!(resolve_label("Ks A-12(2)").unwrap(), resolve_label("Ks A-11").unwrap());
    }

    #[test]
    fn nonregular_matching() {
        let gl3 = parse_module("GL1 x SL3 : w1").unwrap();
        assert_eq!(
            match_nonregular_family(&gl3),
            Some(("SK III-2".into(), vec![1, 3]))
        );
        let spin = parse_module("GL1 x Spin10 : w4").unwrap();
        assert_eq!(match_nonregular_family(&spin), Some(("SK III-6".into(), vec![])));
        let sk_i_4 = catalog_instantiate("SK I-4", &[]).unwrap();
        assert_eq!(match_nonregular_family(&sk_i_4), None);
        assert!(match_regular_entry(&sk_i_4).is_some());
        let swapped = parse_module("GL1 x SL8 x SL3 : w1 # w1*").unwrap();
        assert_eq!(
            match_nonregular_family(&swapped),
            Some(("SK III-2".into(), vec![3, 8]))
        );
    }

    #[test]
    fn match_inverts_instantiate() {
        for e in catalog_list(&[Flag::Nonregular]) {
            for p in e.sample_params(10) {
                let m = e.instantiate(&p).unwrap();
                assert_eq!(match_nonregular_family(&m), Some((e.id.clone(), p)));
            }
        }
    }

    #[test]
    fn export_round_trips() {
        for line in export(&[], 4) {
            let text = line.to_string();
            let back: ExportLine = text.parse().unwrap();
            assert_eq!(back, line);
            let m = parse_module(&line.expr).unwrap();
            assert_eq!(format_module(&m), line.expr);
            assert_eq!(resolve_label(&line.id).unwrap(), m, "{}", line.id);
        }
    }

    #[test]
    fn flags_parse() {
        assert_eq!(
            parse_flags("etale, regular").unwrap(),
            BTreeSet::from([Flag::Etale, Flag::Regular])
        );
        assert!(parse_flags("").unwrap().is_empty());
        assert!(parse_flags("shiny").is_err());
    }
}
