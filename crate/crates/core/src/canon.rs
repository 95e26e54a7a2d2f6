//! Canonical keys for presentations. The key folds exactly the AC-moves
//! that normalization can decide cheaply: free/cyclic insertions (ac2'),
//! rotations (ac4), inversions (ac5), internal sign flips (ac6) and
//! internal relabeling. It is a dedup key, not a decision procedure:
//! AC-equivalent presentations may still have different keys.

use crate::pres::{AcMove, RelPresentation};
use crate::words::{Generator, Permutation, ReduceMode, Sign, Word};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Exhaustive relabel/flip search is used while `k! * 2^k` stays within
/// 6! * 2^6 candidates; larger presentations fall back to the refinement
/// heuristic.
const EXHAUSTIVE_INTERNALS: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(pub Vec<u8>);

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let hex = String::deserialize(d)?;
        if hex.len() % 2 != 0 {
            return Err(serde::de::Error::custom("odd-length hex key"));
        }
        let bytes = (0..hex.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&hex[i..i + 2], 16))
            .collect::<std::result::Result<Vec<u8>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(CanonicalKey(bytes))
    }
}

fn sign_bit(s: Sign) -> u32 {
    match s {
        Sign::Plus => 0,
        Sign::Minus => 1,
    }
}

/// Letter order: kind (source < target < internal), then index, then sign.
fn encode_word(w: &Word, relabel: &[u32], flips: &[bool]) -> Vec<u32> {
    w.iter()
        .map(|l| match l.gen {
            Generator::Source(i) => (i << 1) | sign_bit(l.sign),
            Generator::Target(i) => (1 << 30) | (i << 1) | sign_bit(l.sign),
            Generator::Internal(i) => {
                let ni = relabel[i as usize - 1];
                let s = if flips[i as usize - 1] { l.sign.flip() } else { l.sign };
                (2 << 30) | (ni << 1) | sign_bit(s)
            }
        })
        .collect()
}

fn invert_codes(codes: &[u32]) -> Vec<u32> {
    codes.iter().rev().map(|c| c ^ 1).collect()
}

/// Lexicographically least rotation among the word and its inverse.
/// Ties prefer the uninverted form and the smallest offset.
fn min_rotation(codes: &[u32]) -> (Vec<u32>, usize, bool) {
    if codes.is_empty() {
        return (Vec::new(), 0, false);
    }
    let n = codes.len();
    let mut best: Option<(Vec<u32>, usize, bool)> = None;
    for (inverted, base) in [(false, codes.to_vec()), (true, invert_codes(codes))] {
        for off in 0..n {
            let mut cand = Vec::with_capacity(n);
            cand.extend_from_slice(&base[off..]);
            cand.extend_from_slice(&base[..off]);
            if best.as_ref().is_none_or(|(b, _, _)| cand < *b) {
                best = Some((cand, off, inverted));
            }
        }
    }
    best.unwrap()
}

#[derive(Debug, Clone)]
struct Assignment {
    relabel: Vec<u32>,
    flips: Vec<bool>,
}

/// Canonical relator forms under an assignment: sorted (len, codes) list.
fn canonical_relators(relators: &[Word], asg: &Assignment) -> Vec<(usize, Vec<u32>)> {
    let mut items: Vec<(usize, Vec<u32>)> = relators
        .iter()
        .map(|r| {
            let codes = encode_word(r, &asg.relabel, &asg.flips);
            let (min, _, _) = min_rotation(&codes);
            (min.len(), min)
        })
        .collect();
    items.sort();
    items
}

fn fnv(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x100000001b3)
}

/// Label-invariant refinement colors for internal generators, used above
/// the exhaustive cutoff.
fn refinement_order(p: &RelPresentation) -> Vec<u32> {
    let k = p.internals as usize;
    let mut colors: Vec<u64> = (0..k)
        .map(|i| {
            let gen = Generator::Internal(i as u32 + 1);
            let mut profile: Vec<(usize, usize, usize, u64)> = Vec::new();
            for r in &p.relators {
                let plus = r.iter().filter(|l| l.gen == gen && l.sign == Sign::Plus).count();
                let minus = r.iter().filter(|l| l.gen == gen && l.sign == Sign::Minus).count();
                if plus + minus == 0 {
                    continue;
                }
                // fixed-label content of the relator: external letters only
                let mut ext = 0xcbf29ce484222325u64;
                for l in r.iter() {
                    if !l.gen.is_internal() {
                        ext = fnv(ext, encode_word(&Word(vec![*l]), &[], &[])[0] as u64);
                    }
                }
                profile.push((r.len(), plus.max(minus), plus.min(minus), ext));
            }
            profile.sort();
            let mut h = 0xcbf29ce484222325u64;
            for (a, b, c, d) in profile {
                h = fnv(fnv(fnv(fnv(h, a as u64), b as u64), c as u64), d);
            }
            h
        })
        .collect();
    for _ in 0..3 {
        let prev = colors.clone();
        for i in 0..k {
            let gen = Generator::Internal(i as u32 + 1);
            let mut neighbor: Vec<u64> = Vec::new();
            for r in &p.relators {
                if r.count(gen) == 0 {
                    continue;
                }
                let mut cs: Vec<u64> = r
                    .iter()
                    .filter_map(|l| match l.gen {
                        Generator::Internal(j) => Some(prev[j as usize - 1]),
                        _ => None,
                    })
                    .collect();
                cs.sort_unstable();
                let mut h = 0xcbf29ce484222325u64;
                for c in cs {
                    h = fnv(h, c);
                }
                neighbor.push(h);
            }
            neighbor.sort_unstable();
            let mut h = prev[i];
            for x in neighbor {
                h = fnv(h, x);
            }
            colors[i] = h;
        }
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (colors[i], i));
    let mut relabel = vec![0u32; k];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new as u32 + 1;
    }
    relabel
}

fn best_assignment(p: &RelPresentation) -> Assignment {
    let k = p.internals as usize;
    if p.internals <= EXHAUSTIVE_INTERNALS {
        let mut best: Option<(Vec<(usize, Vec<u32>)>, Assignment)> = None;
        for perm in Permutation::all(k) {
            let relabel: Vec<u32> = (1..=k).map(|i| perm.image(i) as u32).collect();
            for mask in 0..(1u32 << k) {
                let asg = Assignment {
                    relabel: relabel.clone(),
                    flips: (0..k).map(|i| mask >> i & 1 == 1).collect(),
                };
                let items = canonical_relators(&p.relators, &asg);
                if best.as_ref().is_none_or(|(b, _)| items < *b) {
                    best = Some((items, asg));
                }
            }
        }
        best.unwrap().1
    } else {
        let relabel = refinement_order(p);
        // greedy per-generator flip decisions in canonical order
        let mut flips = vec![false; k];
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| relabel[i]);
        for &i in &order {
            let keep = canonical_relators(
                &p.relators,
                &Assignment { relabel: relabel.clone(), flips: flips.clone() },
            );
            flips[i] = true;
            let flipped = canonical_relators(
                &p.relators,
                &Assignment { relabel: relabel.clone(), flips: flips.clone() },
            );
            if keep <= flipped {
                flips[i] = false;
            }
        }
        Assignment { relabel, flips }
    }
}

fn key_bytes(p: &RelPresentation, items: &[(usize, Vec<u32>)]) -> Vec<u8> {
    let mut out = Vec::new();
    let empty = items.iter().filter(|(len, _)| *len == 0).count();
    for v in [
        p.arity_in() as u32,
        p.arity_out() as u32,
        p.internals,
        empty as u32,
        items.len() as u32,
    ] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for (len, codes) in items.iter().filter(|(len, _)| *len > 0) {
        out.extend_from_slice(&(*len as u32).to_le_bytes());
        for c in codes {
            out.extend_from_slice(&c.to_le_bytes());
        }
    }
    out
}

/// Deterministic key after normalization: reduce every relator freely and
/// cyclically, take least rotations (folding ac4/ac5), search internal
/// relabelings and sign flips (ac6), and serialize the least sorted
/// relator multiset.
pub fn canonical_key(p: &RelPresentation) -> CanonicalKey {
    let mut reduced = p.clone();
    for r in reduced.relators.iter_mut() {
        *r = r.reduce(ReduceMode::FreeCyclic);
    }
    let asg = best_assignment(&reduced);
    let items = canonical_relators(&reduced.relators, &asg);
    CanonicalKey(key_bytes(&reduced, &items))
}

/// Free+cyclic reduction of one relator as explicit ac2'/ac4 moves.
pub(crate) fn reduce_with_moves(state: &mut RelPresentation, idx: usize, moves: &mut Vec<AcMove>) {
    loop {
        let rel = &state.relators[idx];
        let mut cancelled = false;
        for i in 0..rel.len().saturating_sub(1) {
            let (a, b) = (rel.0[i], rel.0[i + 1]);
            if a.gen == b.gen && a.sign != b.sign {
                let m = AcMove::Ac2Cancel { relator: idx, pos: i };
                *state = state.apply_move(&m).expect("cancel precondition checked");
                moves.push(m);
                cancelled = true;
                break;
            }
        }
        if cancelled {
            continue;
        }
        let rel = &state.relators[idx];
        let n = rel.len();
        if n >= 2 {
            let (first, last) = (rel.0[0], rel.0[n - 1]);
            if first.gen == last.gen && first.sign != last.sign {
                let rot = AcMove::Ac4Rotate { relator: idx, offset: n - 1 };
                *state = state.apply_move(&rot).expect("rotation is total");
                moves.push(rot);
                let m = AcMove::Ac2Cancel { relator: idx, pos: 0 };
                *state = state.apply_move(&m).expect("boundary pair cancels");
                moves.push(m);
                continue;
            }
        }
        break;
    }
}

/// The canonicalization of a presentation together with the AC-moves that
/// realize it. Applying `moves` to the input yields `state`, whose relators
/// carry canonical letters up to the internal relabeling `relabel`;
/// `slots[i]` is the canonical sorted position of relator `i`.
#[derive(Debug, Clone)]
pub struct CanonBridge {
    pub key: CanonicalKey,
    pub state: RelPresentation,
    pub moves: Vec<AcMove>,
    pub relabel: Vec<u32>,
    pub slots: Vec<usize>,
}

pub fn canonicalize_with_moves(p: &RelPresentation) -> CanonBridge {
    let mut state = p.clone();
    let mut moves = Vec::new();
    for idx in 0..state.relators.len() {
        reduce_with_moves(&mut state, idx, &mut moves);
    }
    let asg = best_assignment(&state);
    for (i, &flip) in asg.flips.iter().enumerate() {
        if flip {
            let m = AcMove::Ac6FlipInternal { internal: i as u32 + 1 };
            state = state.apply_move(&m).expect("internal exists");
            moves.push(m);
        }
    }
    // rotations and inversions are decided on the flipped letters
    let no_flips = vec![false; asg.flips.len()];
    let mut canon_forms: Vec<(usize, Vec<u32>, usize)> = Vec::with_capacity(state.relators.len());
    for idx in 0..state.relators.len() {
        let codes = encode_word(&state.relators[idx], &asg.relabel, &no_flips);
        let (min, off, inverted) = min_rotation(&codes);
        if inverted {
            let m = AcMove::Ac5Invert { relator: idx };
            state = state.apply_move(&m).expect("relator exists");
            moves.push(m);
        }
        if !min.is_empty() && off % min.len() != 0 {
            let m = AcMove::Ac4Rotate { relator: idx, offset: off % min.len() };
            state = state.apply_move(&m).expect("relator exists");
            moves.push(m);
        }
        canon_forms.push((min.len(), min, idx));
    }
    let mut by_form = canon_forms.clone();
    by_form.sort();
    let mut slots = vec![0usize; state.relators.len()];
    for (slot, (_, _, idx)) in by_form.iter().enumerate() {
        slots[*idx] = slot;
    }
    let items: Vec<(usize, Vec<u32>)> = by_form.into_iter().map(|(l, c, _)| (l, c)).collect();
    let key = CanonicalKey(key_bytes(&state, &items));
    CanonBridge { key, state, moves, relabel: asg.relabel, slots }
}
