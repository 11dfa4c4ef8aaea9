//! Text syntax for modules.
//!
//! ```text
//! module   := group ':' summand ('+' summand)*
//! group    := torus ('x' simple)* | simple ('x' simple)*
//! torus    := 'GL1' ['^' NAT] | 'GL' NAT
//! simple   := ('SL'|'Sp'|'SO'|'Spin') NAT | 'E6'|'E7'|'E8'|'F4'|'G2'
//! summand  := ['('] rep ('#' rep)* [')'] ['@' NAT (',' NAT)*]
//! rep      := '1' | wterm (',' wterm)* ['*']
//! wterm    := [NAT] 'w' NAT
//! ```
//!
//! `GLn` with `n ≥ 2` stands for `GL1 x SLn`.
//! Whitespace is ignored and `×` may stand for `x`. A trailing `*` applies
//! the factor's diagram automorphism. Torus slots are 1-based in the text;
//! `@0` marks a summand on which no scalar acts.
//!
//! Untagged summands get default slots: with no torus, none; with `GL1`,
//! slot 1; with `GL1^k` and `s ≥ k` summands, summand `i` gets slot
//! `min(i, k)`. With `k > s` every summand must be tagged.
//!
//! ```
//! use phv::{format_module, parse_module};
//!
//! let m = parse_module("GL1^2 x SL4 x SL2 : (w2 # w1) + (w1 # 1) + (w1 # 1)").unwrap();
//! assert_eq!(m.module_dim(), 20u32.into());
//! assert_eq!(parse_module(&format_module(&m)).unwrap(), m);
//! ```

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lie::{Family, HighestWeight, SimpleFactor};
use crate::module::{GroupShape, Module, Summand};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Nat(u64),
    Kw(&'static str),
    Sym(char),
}

const KEYWORDS: [&str; 10] = ["Spin", "Sp", "SO", "SL", "GL", "E", "F", "G", "x", "w"];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let rest = &text[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
        } else if c.is_ascii_digit() {
            let end = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            let n = rest[..end]
                .parse::<u64>()
                .map_err(|_| Error::parse(i, "number too large"))?;
            out.push((i, Tok::Nat(n)));
            i += end;
        } else if c == '×' {
            out.push((i, Tok::Kw("x")));
            i += c.len_utf8();
        } else if ":+#()@,*^".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else if let Some(kw) = KEYWORDS.iter().find(|kw| rest.starts_with(**kw)) {
            out.push((i, Tok::Kw(kw)));
            i += kw.len();
        } else {
            return Err(Error::parse(i, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    text: &'a str,
}

/// Byte offset, `(node, coefficient)` terms, dual marker.
type RawRep = (usize, Vec<(u64, u32)>, bool);

struct RawSummand {
    pos: usize,
    reps: Vec<RawRep>,
    slots: Option<Vec<u64>>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.text.len(), |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.offset(), message))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat(&Tok::Sym(c)) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn nat(&mut self, what: &str) -> Result<u64> {
        match self.peek() {
            Some(&Tok::Nat(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn group(&mut self) -> Result<GroupShape> {
        let mut torus = 0;
        let mut factors = Vec::new();
        if self.eat(&Tok::Kw("GL")) {
            let at = self.offset();
            let n = self.nat("size after GL")?;
            torus = if self.eat(&Tok::Sym('^')) {
                if n != 1 {
                    return Err(Error::parse(at, "only GL1 takes an exponent"));
                }
                self.nat("torus exponent")? as usize
            } else {
                1
            };
            if n != 1 {
                factors.push(SimpleFactor::sl(n).map_err(|e| Error::parse(at, e.to_string()))?);
            }
        } else {
            factors.push(self.simple()?);
        }
        while self.eat(&Tok::Kw("x")) {
            factors.push(self.simple()?);
        }
        GroupShape::new(torus, factors)
    }

    fn simple(&mut self) -> Result<SimpleFactor> {
        let at = self.offset();
        let kw = match self.peek() {
            Some(Tok::Kw(kw)) => *kw,
            _ => return self.err("expected a simple factor"),
        };
        self.pos += 1;
        let n = self.nat("factor size")?;
        let located = |e: Error| match e {
            Error::Parse { .. } => e,
            other => Error::parse(at, other.to_string()),
        };
        let f = match (kw, n) {
            ("SL", _) => SimpleFactor::sl(n),
            ("Sp", _) => SimpleFactor::sp(n),
            ("SO" | "Spin", _) => SimpleFactor::spin(n),
            ("E", 6) => SimpleFactor::new(Family::E6, 6),
            ("E", 7) => SimpleFactor::new(Family::E7, 7),
            ("E", 8) => SimpleFactor::new(Family::E8, 8),
            ("F", 4) => SimpleFactor::new(Family::F4, 4),
            ("G", 2) => SimpleFactor::new(Family::G2, 2),
            _ => Err(Error::parse(at, format!("unknown simple factor {kw}{n}"))),
        };
        f.map_err(located)
    }

    fn rep(&mut self) -> Result<RawRep> {
        let at = self.offset();
        let trivial = matches!(self.peek(), Some(Tok::Nat(1)))
            && self.peek_at(1) != Some(&Tok::Kw("w"));
        let mut terms = Vec::new();
        if trivial {
            self.pos += 1;
        } else {
            loop {
                let coefficient = match self.peek() {
                    Some(&Tok::Nat(c)) => {
                        self.pos += 1;
                        u32::try_from(c).map_err(|_| Error::parse(at, "coefficient too large"))?
                    }
                    _ => 1,
                };
                if !self.eat(&Tok::Kw("w")) {
                    return self.err("expected '1' or a weight term like 2w1");
                }
                let node_at = self.offset();
                let node = self.nat("fundamental weight index")?;
                if node == 0 {
                    return Err(Error::parse(node_at, "fundamental weights are numbered from 1"));
                }
                terms.push((node - 1, coefficient));
                // a ',' followed by 'w' or NAT 'w' continues the weight
                let continues = self.peek() == Some(&Tok::Sym(','))
                    && (self.peek_at(1) == Some(&Tok::Kw("w"))
                        || (matches!(self.peek_at(1), Some(Tok::Nat(_)))
                            && self.peek_at(2) == Some(&Tok::Kw("w"))));
                if !continues {
                    break;
                }
                self.pos += 1;
            }
        }
        let dual = self.eat(&Tok::Sym('*'));
        Ok((at, terms, dual))
    }

    fn summand(&mut self) -> Result<RawSummand> {
        let pos = self.offset();
        let paren = self.eat(&Tok::Sym('('));
        let mut reps = vec![self.rep()?];
        while self.eat(&Tok::Sym('#')) {
            reps.push(self.rep()?);
        }
        if paren {
            self.expect_sym(')')?;
        }
        let slots = if self.eat(&Tok::Sym('@')) {
            let mut v = vec![self.nat("torus slot")?];
            while self.eat(&Tok::Sym(',')) {
                v.push(self.nat("torus slot")?);
            }
            Some(v)
        } else {
            None
        };
        Ok(RawSummand { pos, reps, slots })
    }
}

/// Default slot set (0-based) for summand `i` of `count`, if defined.
fn default_slots(torus_dim: usize, count: usize, i: usize) -> Option<BTreeSet<usize>> {
    match torus_dim {
        0 => Some(BTreeSet::new()),
        1 => Some(BTreeSet::from([0])),
        k if count >= k => Some(BTreeSet::from([i.min(k - 1)])),
        _ => None,
    }
}

/// Parses a module expression.
pub fn parse_module(text: &str) -> Result<Module> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        text,
    };
    let group = p.group()?;
    p.expect_sym(':')?;
    let mut raw = vec![p.summand()?];
    while p.eat(&Tok::Sym('+')) {
        raw.push(p.summand()?);
    }
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }

    let factors = group.factors().to_vec();
    let count = raw.len();
    let mut summands = Vec::with_capacity(count);
    for (i, s) in raw.into_iter().enumerate() {
        let weights = if factors.is_empty() {
            match s.reps.as_slice() {
                [(_, terms, _)] if terms.is_empty() => Vec::new(),
                _ => return Err(Error::parse(s.pos, "a group without simple factors takes the rep '1'")),
            }
        } else {
            if s.reps.len() != factors.len() {
                return Err(Error::Arity {
                    summand: i,
                    expected: factors.len(),
                    got: s.reps.len(),
                });
            }
            let mut weights = Vec::with_capacity(factors.len());
            for (f, (at, terms, dual)) in factors.iter().zip(s.reps) {
                let w = HighestWeight::from_terms(f.rank(), terms)
                    .map_err(|e| Error::parse(at, format!("{e} for {f}")))?;
                weights.push(if dual { f.dual_weight(&w) } else { w });
            }
            weights
        };
        let slots = match s.slots {
            Some(tags) if tags == [0] => BTreeSet::new(),
            Some(tags) => {
                let mut set = BTreeSet::new();
                for t in tags {
                    if t == 0 || t as usize > group.torus_dim() {
                        return Err(Error::parse(
                            s.pos,
                            format!("torus slot {t} outside 1..={}", group.torus_dim()),
                        ));
                    }
                    set.insert(t as usize - 1);
                }
                set
            }
            None => default_slots(group.torus_dim(), count, i).ok_or_else(|| {
                Error::parse(
                    s.pos,
                    format!(
                        "GL1^{} with {count} summands needs explicit '@' slot tags",
                        group.torus_dim()
                    ),
                )
            })?,
        };
        summands.push(Summand::new(weights, slots));
    }
    Module::new(group, summands)
}

fn format_weight(w: &HighestWeight) -> String {
    if w.is_zero() {
        return "1".to_string();
    }
    let terms: Vec<String> = w
        .terms()
        .iter()
        .map(|&(i, c)| match c {
            1 => format!("w{}", i + 1),
            _ => format!("{c}w{}", i + 1),
        })
        .collect();
    terms.join(",")
}

fn format_slots(slots: &BTreeSet<usize>) -> String {
    if slots.is_empty() {
        return "@0".to_string();
    }
    let v: Vec<String> = slots.iter().map(|s| (s + 1).to_string()).collect();
    format!("@{}", v.join(","))
}

/// Prints a module so that [`parse_module`] returns it unchanged.
pub fn format_module(m: &Module) -> String {
    let mut group: Vec<String> = Vec::new();
    match m.torus_dim() {
        0 if m.factors().is_empty() => group.push("GL1^0".into()),
        0 => {}
        1 => group.push("GL1".into()),
        k => group.push(format!("GL1^{k}")),
    }
    group.extend(m.factors().iter().map(|f| f.to_string()));

    let count = m.summands().len();
    let defaults_hold = m
        .summands()
        .iter()
        .enumerate()
        .all(|(i, s)| default_slots(m.torus_dim(), count, i).as_ref() == Some(s.scalar_slots()));
    let paren = m.factors().len() >= 2 && count >= 2;

    let summands: Vec<String> = m
        .summands()
        .iter()
        .map(|s| {
            let reps: Vec<String> = if s.weights().is_empty() {
                vec!["1".into()]
            } else {
                s.weights().iter().map(format_weight).collect()
            };
            let mut out = reps.join(" # ");
            if paren {
                out = format!("({out})");
            }
            let all_trivial = s.weights().iter().all(HighestWeight::is_zero);
            if !defaults_hold || (all_trivial && m.torus_dim() > 0) {
                out.push_str(&format_slots(s.scalar_slots()));
            }
            out
        })
        .collect();
    format!("{} : {}", group.join(" x "), summands.join(" + "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::ModuleBuilder;

    fn sl(n: u64) -> SimpleFactor {
        SimpleFactor::sl(n).unwrap()
    }

    #[test]
    fn sk_i_4() {
        let m = parse_module("GL1 x SL2 : 3w1").unwrap();
        let expected = ModuleBuilder::new(1)
            .factor(sl(2))
            .summand(&[&[3]], &[0])
            .build()
            .unwrap();
        assert_eq!(m, expected);
        assert_eq!(format_module(&m), "GL1 x SL2 : 3w1");
    }

    #[test]
    fn ki_i_2_defaults() {
        let m = parse_module("GL1^2 x SL4 x SL2 : (w2 # w1) + (w1 # 1) + (w1 # 1)").unwrap();
        let slots: Vec<Vec<usize>> = m
            .summands()
            .iter()
            .map(|s| s.scalar_slots().iter().copied().collect())
            .collect();
        assert_eq!(slots, vec![vec![0], vec![1], vec![1]]);
        assert_eq!(m.module_dim(), 20u32.into());
    }

    #[test]
    fn bare_torus() {
        let gl = parse_module("GL2 x SL3 : w1 # w1").unwrap();
        assert_eq!(gl, parse_module("GL1 x SL2 x SL3 : w1 # w1").unwrap());
        assert!(parse_module("GL2^2 x SL3 : w1 # w1").is_err());
        assert!(parse_module("GL0 : 1").is_err());

        let m = parse_module("GL1 : 1").unwrap();
        assert_eq!(format_module(&m), "GL1 : 1@1");
        assert_eq!(parse_module("GL1 : 1@1").unwrap(), m);
        let empty = parse_module("GL1 : 1@0").unwrap();
        assert!(empty.summands()[0].scalar_slots().is_empty());
        assert_eq!(format_module(&empty), "GL1 : 1@0");
    }

    #[test]
    fn families_and_duals() {
        let m = parse_module("Spin10 : w5").unwrap();
        assert_eq!(m.factors()[0].family(), Family::D);
        assert_eq!(m.module_dim(), 16u32.into());
        let d = parse_module("SL3 : w1*").unwrap();
        assert_eq!(d.summands()[0].weights()[0].to_coefficients(), vec![0, 1]);
        assert_eq!(parse_module("SO7 : w3").unwrap().module_dim(), 8u32.into());
        assert_eq!(parse_module("Sp2 : w2").unwrap().module_dim(), 5u32.into());
        assert_eq!(parse_module("G2 : w1").unwrap().module_dim(), 7u32.into());
        assert_eq!(parse_module("GL1 × E6 : w1").unwrap().module_dim(), 27u32.into());
        assert_eq!(
            parse_module("SL4 : w1,w3").unwrap().module_dim(),
            15u32.into()
        );
        assert_eq!(
            parse_module("SL3 : 2w1 , w2").unwrap().summands()[0].weights()[0].to_coefficients(),
            vec![2, 1]
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_module("GL1 x SL3 : w1 # w1"),
            Err(Error::Arity { expected: 1, got: 2, .. })
        ));
        for bad in [
            "GL1 x SL0 : w1",
            "GL1 x SL1 : 1",
            "GL2 : w2",
            "GL1 x SL3 : w3",
            "GL1 x SL3 : w0",
            "GL1 x SL3 w1",
            "GL1 x SL3 : (w1",
            "GL1 x SL3 : w1 +",
            "GL1^3 x SL2 : w1 + w1",
            "GL1 x SL2 : w1@2",
            "GL1 x Q2 : w1",
            "GL1 x SL2 : w1 junk",
            "GL1 x E5 : 1",
            "GL1 : w1",
        ] {
            let e = parse_module(bad).unwrap_err();
            assert!(matches!(e, Error::Parse { .. }), "{bad}: {e:?}");
        }
    }

    #[test]
    fn error_positions() {
        match parse_module("GL1 x SL3 : w1 + %") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 17),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn round_trip_with_explicit_tags() {
        let m = ModuleBuilder::new(3)
            .factor(sl(2))
            .factor(SimpleFactor::sp(2).unwrap())
            .summand(&[&[1], &[0, 1]], &[0, 2])
            .summand(&[&[], &[1, 0]], &[])
            .build()
            .unwrap();
        let text = format_module(&m);
        assert_eq!(text, "GL1^3 x SL2 x Sp2 : (w1 # w2)@1,3 + (1 # w1)@0");
        assert_eq!(parse_module(&text).unwrap(), m);
    }

    #[test]
    fn semisimple_only() {
        let m = parse_module("SL2 x SL3 : w1 # w1").unwrap();
        assert_eq!(m.torus_dim(), 0);
        assert_eq!(format_module(&m), "SL2 x SL3 : w1 # w1");
    }
}
