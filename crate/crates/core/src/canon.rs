//! Canonical representatives of module equivalence classes.
//!
//! The symmetries quotiented out are: permuting simple factors, permuting
//! summands, applying a factor's diagram automorphism (in all summands at
//! once) and renumbering torus slots. Dualizing a single summand is *not* a
//! symmetry. The low-rank coincidences `C_1 = A_1`, `B_2 = C_2` and
//! `D_3 = A_3` are normalized first so that e.g. `Spin6` and `SL4` agree.
//!
//! Factor symmetries are searched exhaustively and the lexicographically
//! smallest encoding wins. Torus slots are labelled per connected component
//! of the summand/slot incidence graph.

use std::collections::{BTreeSet, HashMap};

use crate::lie::{Family, HighestWeight, SimpleFactor};
use crate::module::{GroupShape, Module, Summand};

type Color = Vec<HighestWeight>;
type Encoding = Vec<(Color, Vec<usize>)>;
/// Multiset of `(summand colour, slot count)` seen from one torus slot.
type SlotInvariant<'a> = Vec<(&'a Color, usize)>;

pub fn canonical_form(m: &Module) -> Module {
    let m = normalize_low_rank(m);
    let factors = m.factors();
    let summands = m.summands();
    let r = factors.len();

    // weight and dual weight of every (summand, factor)
    let plain: Vec<Vec<HighestWeight>> = summands.iter().map(|s| s.weights().to_vec()).collect();
    let dual: Vec<Vec<HighestWeight>> = summands
        .iter()
        .map(|s| {
            factors
                .iter()
                .zip(s.weights())
                .map(|(f, w)| f.dual_weight(w))
                .collect()
        })
        .collect();
    let dualizable: Vec<bool> = (0..r)
        .map(|i| (0..summands.len()).any(|s| plain[s][i] != dual[s][i]))
        .collect();

    // factors are ordered by type, then by a column invariant that is stable
    // under summand permutation and dualization; only ties are permuted
    let column_key = |i: usize| -> Vec<HighestWeight> {
        let mut col: Vec<HighestWeight> = (0..summands.len())
            .map(|s| plain[s][i].clone().min(dual[s][i].clone()))
            .collect();
        col.sort();
        col
    };
    let mut order: Vec<(SimpleFactor, Vec<HighestWeight>, usize)> =
        (0..r).map(|i| (factors[i], column_key(i), i)).collect();
    order.sort();
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for (k, (f, key, i)) in order.iter().enumerate() {
        if k > 0 && order[k - 1].0 == *f && order[k - 1].1 == *key {
            runs.last_mut().unwrap().push(*i);
        } else {
            runs.push(vec![*i]);
        }
    }
    let sorted_factors: Vec<SimpleFactor> = order.iter().map(|(f, _, _)| *f).collect();

    let slots: Vec<&BTreeSet<usize>> = summands.iter().map(|s| s.scalar_slots()).collect();
    let mut best: Option<Encoding> = None;
    for perm in arrangements(&runs) {
        let flips: Vec<usize> = (0..r).filter(|&p| dualizable[perm[p]]).collect();
        for mask in 0u64..(1u64 << flips.len()) {
            let colors: Vec<Color> = (0..summands.len())
                .map(|s| {
                    (0..r)
                        .map(|p| {
                            let flipped = flips
                                .iter()
                                .position(|&q| q == p)
                                .is_some_and(|bit| mask >> bit & 1 == 1);
                            if flipped {
                                dual[s][perm[p]].clone()
                            } else {
                                plain[s][perm[p]].clone()
                            }
                        })
                        .collect()
                })
                .collect();
            let enc = canonical_slots(&colors, &slots, m.torus_dim());
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        }
    }

    let group = GroupShape::new(m.torus_dim(), sorted_factors).expect("factor count unchanged");
    let summands = best
        .unwrap()
        .into_iter()
        .map(|(weights, slots)| Summand::new(weights, slots))
        .collect();
    Module::from_parts_unchecked(group, summands)
}

/// Whether two modules are equivalent, decided on canonical forms.
pub fn equivalent(a: &Module, b: &Module) -> bool {
    canonical_form(a) == canonical_form(b)
}

impl Module {
    pub fn canonical(&self) -> Module {
        canonical_form(self)
    }
}

/// Every ordering obtained by permuting inside each run, concatenated.
fn arrangements(runs: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for run in runs {
        let perms = permutations(run);
        out = out
            .iter()
            .flat_map(|prefix| {
                perms.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(p);
                    v
                })
            })
            .collect();
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn normalize_low_rank(m: &Module) -> Module {
    let needs = m.factors().iter().any(|f| {
        matches!(
            (f.family(), f.rank()),
            (Family::C, 1) | (Family::B, 2) | (Family::D, 3)
        )
    });
    if !needs {
        return m.clone();
    }
    let (group, summands) = m.clone().into_parts();
    let mut factors = group.factors().to_vec();
    let mut summands = summands;
    for (i, f) in factors.iter_mut().enumerate() {
        // node permutation into the target labelling
        let (target, nodes): (SimpleFactor, &[u64]) = match (f.family(), f.rank()) {
            (Family::C, 1) => (SimpleFactor::sl(2).unwrap(), &[0]),
            (Family::B, 2) => (SimpleFactor::sp(2).unwrap(), &[1, 0]),
            (Family::D, 3) => (SimpleFactor::sl(4).unwrap(), &[1, 0, 2]),
            _ => continue,
        };
        *f = target;
        for s in summands.iter_mut() {
            let w = &s.weights()[i];
            let moved = HighestWeight::from_terms(
                target.rank(),
                w.terms().iter().map(|&(j, c)| (nodes[j as usize], c)),
            )
            .unwrap();
            let mut weights = s.weights().to_vec();
            weights[i] = moved;
            *s = Summand::new(weights, s.scalar_slots().iter().copied());
        }
    }
    let group = GroupShape::new(group.torus_dim(), factors).unwrap();
    Module::from_parts_unchecked(group, summands)
}

/// Sorted `(color, slots)` list with torus slots relabelled canonically.
///
/// Each connected component of the bipartite summand/slot graph is labelled
/// on its own (exhaustively, inside cells of an invariant, skipping twin
/// slots); components are then ordered by their local encodings and given
/// consecutive label ranges. Slots that act on nothing come last.
fn canonical_slots(colors: &[Color], slots: &[&BTreeSet<usize>], torus_dim: usize) -> Encoding {
    let s_count = colors.len();
    // union-find over summands 0..s and slots s..s+k
    let mut parent: Vec<usize> = (0..s_count + torus_dim).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (s, set) in slots.iter().enumerate() {
        for &t in set.iter() {
            let a = find(&mut parent, s);
            let b = find(&mut parent, s_count + t);
            parent[a] = b;
        }
    }
    let mut components: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut index_of_root = HashMap::new();
    for s in 0..s_count {
        let root = find(&mut parent, s);
        let k = *index_of_root.entry(root).or_insert_with(|| {
            components.push((Vec::new(), Vec::new()));
            components.len() - 1
        });
        components[k].0.push(s);
    }
    for t in 0..torus_dim {
        let root = find(&mut parent, s_count + t);
        if let Some(&k) = index_of_root.get(&root) {
            components[k].1.push(t);
        }
    }

    let mut locals: Vec<Encoding> = components
        .iter()
        .map(|(us, ts)| component_encoding(colors, slots, us, ts))
        .collect();
    locals.sort();

    let mut out: Encoding = Vec::with_capacity(s_count);
    let mut offset = 0usize;
    for local in locals {
        let width = local
            .iter()
            .flat_map(|(_, ts)| ts.iter())
            .max()
            .map_or(0, |&t| t + 1);
        for (color, ts) in local {
            out.push((color, ts.into_iter().map(|t| t + offset).collect()));
        }
        offset += width;
    }
    out.sort();
    out
}

fn component_encoding(
    colors: &[Color],
    slots: &[&BTreeSet<usize>],
    summands: &[usize],
    torus: &[usize],
) -> Encoding {
    if torus.is_empty() {
        return summands
            .iter()
            .map(|&s| (colors[s].clone(), Vec::new()))
            .collect();
    }
    let incidence = |t: usize| -> Vec<usize> {
        summands
            .iter()
            .copied()
            .filter(|&s| slots[s].contains(&t))
            .collect()
    };
    let invariant = |t: usize| -> SlotInvariant {
        let mut v: SlotInvariant = incidence(t)
            .into_iter()
            .map(|s| (&colors[s], slots[s].len()))
            .collect();
        v.sort();
        v
    };
    let mut cells: Vec<(SlotInvariant, Vec<usize>)> = Vec::new();
    let mut ordered: Vec<(SlotInvariant, usize)> =
        torus.iter().map(|&t| (invariant(t), t)).collect();
    ordered.sort();
    for (inv, t) in ordered {
        match cells.last_mut() {
            Some((last, members)) if *last == inv => members.push(t),
            _ => cells.push((inv, vec![t])),
        }
    }
    // label position -> cell index
    let cell_of_position: Vec<usize> = cells
        .iter()
        .enumerate()
        .flat_map(|(c, (_, members))| std::iter::repeat_n(c, members.len()))
        .collect();
    let incidences: HashMap<usize, Vec<usize>> =
        torus.iter().map(|&t| (t, incidence(t))).collect();

    struct Search<'a> {
        colors: &'a [Color],
        slots: &'a [&'a BTreeSet<usize>],
        summands: &'a [usize],
        cells: &'a [Vec<usize>],
        cell_of_position: &'a [usize],
        incidences: &'a HashMap<usize, Vec<usize>>,
        label: HashMap<usize, usize>,
        best: Option<Encoding>,
    }
    impl Search<'_> {
        fn run(&mut self, position: usize) {
            if position == self.cell_of_position.len() {
                let mut enc: Encoding = self
                    .summands
                    .iter()
                    .map(|&s| {
                        let mut ts: Vec<usize> =
                            self.slots[s].iter().map(|t| self.label[t]).collect();
                        ts.sort_unstable();
                        (self.colors[s].clone(), ts)
                    })
                    .collect();
                enc.sort();
                if self.best.as_ref().is_none_or(|b| enc < *b) {
                    self.best = Some(enc);
                }
                return;
            }
            let (cells, incidences) = (self.cells, self.incidences);
            // twins (equal incidence) give identical subtrees
            let mut tried: Vec<&Vec<usize>> = Vec::new();
            for &t in &cells[self.cell_of_position[position]] {
                if self.label.contains_key(&t) || tried.contains(&&incidences[&t]) {
                    continue;
                }
                tried.push(&incidences[&t]);
                self.label.insert(t, position);
                self.run(position + 1);
                self.label.remove(&t);
            }
        }
    }

    let cells: Vec<Vec<usize>> = cells.into_iter().map(|(_, m)| m).collect();
    let mut search = Search {
        colors,
        slots,
        summands,
        cells: &cells,
        cell_of_position: &cell_of_position,
        incidences: &incidences,
        label: HashMap::new(),
        best: None,
    };
    search.run(0);
    search.best.unwrap()
}
