//! Bounded bidirectional search for AC-equivalence, emitting replayable
//! certificates, with invariant-based non-equivalence reporting.
//!
//! The search runs on canonical keys. Since the key folds free insertions,
//! rotations, inversions, internal sign flips and relabeling, those moves
//! are identity in key space; the effective edge set is ac1 additions,
//! ac7 eliminations (which subsume ac1 removal) and relator multiplication
//! generalized over rotations and inversions of both factors, each edge
//! carrying the exact move sequence that realizes it.

use crate::canon::{canonical_key, canonicalize_with_moves, reduce_with_moves, CanonBridge, CanonicalKey};
use crate::error::{Error, Result};
use crate::model::{builtin_groups, hom_oracle};
use crate::pres::{apply_moves, invert_with_frame, transport_moves, AcMove, FrameMap, RelPresentation};
use crate::words::{Generator, Letter, ReduceMode, Sign, Word};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    /// Maximum relator length after free+cyclic reduction.
    pub max_relator_len: usize,
    pub max_relators: usize,
    pub max_internal: u32,
    /// Maximum length of the word added by an ac1 stabilization.
    pub max_ac1_len: usize,
    /// Combined forward+backward edge depth.
    pub depth: usize,
    /// Total visited-state limit across both directions.
    pub nodes: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_relator_len: 8,
            max_relators: 8,
            max_internal: 4,
            max_ac1_len: 2,
            depth: 12,
            nodes: 200_000,
        }
    }
}

/// A replayable witness of AC-equivalence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub moves: Vec<AcMove>,
    pub expected_key: CanonicalKey,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(Certificate),
    ExhaustedBounds { nodes: usize },
    /// A finite-group evaluation separates the presentations; sound
    /// non-equivalence since evaluation is an AC-invariant.
    Distinguished { group: String, row: u64, col: u64, lhs: String, rhs: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Valid,
    MoveFailed { step: usize, reason: String },
    KeyMismatch,
}

impl VerifyOutcome {
    pub fn is_valid(&self) -> bool {
        *self == VerifyOutcome::Valid
    }
}

fn within_bounds(p: &RelPresentation, bounds: &SearchBounds) -> bool {
    p.internals <= bounds.max_internal
        && p.relators.len() <= bounds.max_relators
        && p.relators.iter().all(|r| r.reduce(ReduceMode::FreeCyclic).len() <= bounds.max_relator_len)
}

/// All generators of a presentation in display order.
fn all_generators(p: &RelPresentation) -> Vec<Generator> {
    let mut gens = Vec::new();
    gens.extend((1..=p.arity_in() as u32).map(Generator::Source));
    gens.extend((1..=p.arity_out() as u32).map(Generator::Target));
    gens.extend((1..=p.internals).map(Generator::Internal));
    gens
}

/// Freely reduced words up to `max_len` over the generators of `p`, in
/// length-then-lexicographic order; includes the empty word.
fn reduced_words(p: &RelPresentation, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = all_generators(p)
        .into_iter()
        .flat_map(|g| [Letter::new(g, Sign::Plus), Letter::new(g, Sign::Minus)])
        .collect();
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.0.last().is_some_and(|last| last.gen == l.gen && last.sign != l.sign) {
                    continue;
                }
                let mut letters2 = w.0.clone();
                letters2.push(l);
                next.push(Word(letters2));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The spec-level single-move successor enumeration, deduplicated by
/// canonical key (successors key-equal to the input are dropped, since
/// ac2/ac4/ac5/ac6 are folded into the key).
pub fn neighbors(p: &RelPresentation, bounds: &SearchBounds) -> Vec<(RelPresentation, AcMove)> {
    let own = canonical_key(p);
    let mut seen: BTreeSet<CanonicalKey> = BTreeSet::new();
    seen.insert(own);
    let mut out = Vec::new();
    let mut push = |succ: RelPresentation, m: AcMove| {
        if within_bounds(&succ, bounds) && seen.insert(canonical_key(&succ)) {
            out.push((succ, m));
        }
    };

    if p.internals < bounds.max_internal && p.relators.len() < bounds.max_relators {
        for word in reduced_words(p, bounds.max_ac1_len) {
            let m = AcMove::Ac1Add { word };
            if let Ok(succ) = p.apply_move(&m) {
                push(succ, m);
            }
        }
    }
    for internal in 1..=p.internals {
        for relator in 0..p.relators.len() {
            let m = AcMove::Ac1Remove { internal, relator };
            if let Ok(succ) = p.apply_move(&m) {
                push(succ, m.clone());
            }
            let m = AcMove::Ac7Eliminate { internal, relator };
            if let Ok(succ) = p.apply_move(&m) {
                push(succ, m);
            }
        }
    }
    for dst in 0..p.relators.len() {
        for src in 0..p.relators.len() {
            if dst == src {
                continue;
            }
            let m = AcMove::Ac3LeftMultiply { dst, src };
            if let Ok(succ) = p.apply_move(&m) {
                push(succ, m);
            }
        }
    }
    out
}

/// An edge of the key-space search: the move list realizing it from the
/// parent's concrete presentation, and the resulting state.
#[derive(Debug, Clone)]
struct Edge {
    moves: Vec<AcMove>,
    state: RelPresentation,
}

fn rotated_variant(w: &Word, rot: usize, inverted: bool) -> Word {
    let base = if inverted { w.inverse() } else { w.clone() };
    base.rotate_left(rot)
}

/// Weak per-candidate fingerprint: the relator multiset with every relator
/// in its least rotation-or-inversion form, labels untouched. Equal weak
/// keys imply equal canonical keys.
fn weak_fingerprint(relators: &[Word]) -> Vec<Vec<Letter>> {
    let mut items: Vec<Vec<Letter>> = relators
        .iter()
        .map(|r| {
            let r = r.reduce(ReduceMode::FreeCyclic);
            let mut best: Option<Vec<Letter>> = None;
            for inverted in [false, true] {
                let base = if inverted { r.inverse() } else { r.clone() };
                for off in 0..base.len().max(1) {
                    let cand = base.rotate_left(off).0;
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
            best.unwrap_or_default()
        })
        .collect();
    items.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
    items
}

/// Generate the key-space edges from a state, in deterministic order.
fn expand(p: &RelPresentation, bounds: &SearchBounds) -> Vec<(CanonicalKey, Edge)> {
    let mut weak_seen: BTreeSet<Vec<Vec<Letter>>> = BTreeSet::new();
    weak_seen.insert(weak_fingerprint(&p.relators));
    let mut out: Vec<(CanonicalKey, Edge)> = Vec::new();
    let mut emit = |moves: Vec<AcMove>, state: RelPresentation| {
        out.push((canonical_key(&state), Edge { moves, state }));
    };

    // ac7 eliminations (also covering ac1 removals)
    for internal in 1..=p.internals {
        for pivot in 0..p.relators.len() {
            if p.relators[pivot].count(Generator::Internal(internal)) != 1 {
                continue;
            }
            let m = AcMove::Ac7Eliminate { internal, relator: pivot };
            let state = p.apply_move(&m).expect("ac7 precondition checked");
            if !within_bounds(&state, bounds) {
                continue;
            }
            let mut moves = vec![m];
            let mut reduced = state;
            for idx in 0..reduced.relators.len() {
                reduce_with_moves(&mut reduced, idx, &mut moves);
            }
            if weak_seen.insert(weak_fingerprint(&reduced.relators)) {
                emit(moves, reduced);
            }
        }
    }

    // generalized relator multiplication
    let s = p.relators.len();
    for dst in 0..s {
        for src in 0..s {
            if dst == src {
                continue;
            }
            let src_len = p.relators[src].len();
            let dst_len = p.relators[dst].len();
            for src_inv in [false, true] {
                for src_rot in 0..src_len.max(1) {
                    let u = rotated_variant(&p.relators[src], src_rot, src_inv);
                    for dst_inv in [false, true] {
                        for dst_rot in 0..dst_len.max(1) {
                            let v = rotated_variant(&p.relators[dst], dst_rot, dst_inv);
                            let product = u.concat(&v).reduce(ReduceMode::FreeCyclic);
                            if product.len() > bounds.max_relator_len {
                                continue;
                            }
                            let mut candidate = p.relators.clone();
                            candidate[dst] = product;
                            if !weak_seen.insert(weak_fingerprint(&candidate)) {
                                continue;
                            }
                            let mut moves = Vec::new();
                            if dst_inv {
                                moves.push(AcMove::Ac5Invert { relator: dst });
                            }
                            if dst_len > 0 && dst_rot % dst_len != 0 {
                                moves.push(AcMove::Ac4Rotate { relator: dst, offset: dst_rot });
                            }
                            if src_inv {
                                moves.push(AcMove::Ac5Invert { relator: src });
                            }
                            if src_len > 0 && src_rot % src_len != 0 {
                                moves.push(AcMove::Ac4Rotate { relator: src, offset: src_rot });
                            }
                            moves.push(AcMove::Ac3LeftMultiply { dst, src });
                            // restore src so the state matches the keyed candidate
                            if src_len > 0 && src_rot % src_len != 0 {
                                moves.push(AcMove::Ac4Rotate {
                                    relator: src,
                                    offset: src_len - src_rot,
                                });
                            }
                            if src_inv {
                                moves.push(AcMove::Ac5Invert { relator: src });
                            }
                            let mut state =
                                apply_moves(p, &moves).expect("multiply edge moves apply");
                            reduce_with_moves(&mut state, dst, &mut moves);
                            emit(moves, state);
                        }
                    }
                }
            }
        }
    }

    // ac1 stabilizations
    if p.internals < bounds.max_internal && p.relators.len() < bounds.max_relators {
        for word in reduced_words(p, bounds.max_ac1_len.min(bounds.max_relator_len.saturating_sub(1))) {
            let m = AcMove::Ac1Add { word };
            let state = p.apply_move(&m).expect("ac1 add applies");
            if weak_seen.insert(weak_fingerprint(&state.relators)) {
                emit(vec![m], state);
            }
        }
    }

    out
}

#[derive(Debug, Clone)]
struct Node {
    state: RelPresentation,
    key: CanonicalKey,
    parent: Option<usize>,
    edge_moves: Vec<AcMove>,
}

struct Side {
    nodes: Vec<Node>,
    visited: HashMap<CanonicalKey, usize>,
    frontier: Vec<usize>,
    depth: usize,
}

impl Side {
    fn new(start: &RelPresentation, key: CanonicalKey) -> Side {
        let nodes = vec![Node {
            state: start.clone(),
            key: key.clone(),
            parent: None,
            edge_moves: Vec::new(),
        }];
        let mut visited = HashMap::new();
        visited.insert(key, 0);
        Side { nodes, visited, frontier: vec![0], depth: 0 }
    }

    fn path_moves(&self, mut id: usize) -> Vec<Vec<AcMove>> {
        let mut edges = Vec::new();
        while let Some(parent) = self.nodes[id].parent {
            edges.push(self.nodes[id].edge_moves.clone());
            id = parent;
        }
        edges.reverse();
        edges
    }

}

/// Relator slot correspondence from B's canonical ordering to A's.
fn slot_pairing(a: &CanonBridge, b: &CanonBridge) -> Vec<usize> {
    let mut a_by_slot = vec![0usize; a.slots.len()];
    for (idx, &slot) in a.slots.iter().enumerate() {
        a_by_slot[slot] = idx;
    }
    b.slots.iter().map(|&slot| a_by_slot[slot]).collect()
}

fn internal_pairing(a: &CanonBridge, b: &CanonBridge) -> Vec<u32> {
    let mut a_by_label = vec![0u32; a.relabel.len()];
    for (idx, &label) in a.relabel.iter().enumerate() {
        a_by_label[label as usize - 1] = idx as u32 + 1;
    }
    b.relabel.iter().map(|&label| a_by_label[label as usize - 1]).collect()
}

/// Stitch a certificate from a forward node and a backward node that meet
/// on the same canonical key: forward path, then the forward state's
/// canonicalization, then the inverted backward composite transported onto
/// the forward side's canonical state.
fn stitch_certificate(
    fwd: &Side,
    fwd_id: usize,
    bwd: &Side,
    bwd_id: usize,
    q: &RelPresentation,
    q_key: CanonicalKey,
) -> Result<Certificate> {
    let mut moves: Vec<AcMove> = fwd.path_moves(fwd_id).into_iter().flatten().collect();

    let bridge_a = canonicalize_with_moves(&fwd.nodes[fwd_id].state);
    let bridge_b = canonicalize_with_moves(&bwd.nodes[bwd_id].state);
    debug_assert_eq!(bridge_a.key, bridge_b.key);
    moves.extend(bridge_a.moves.iter().cloned());

    // the whole backward composite q -> q_t -> canonical state, inverted
    // with frame tracking so index drift from removals stays consistent
    let mut backward: Vec<AcMove> = bwd.path_moves(bwd_id).into_iter().flatten().collect();
    backward.extend(bridge_b.moves.iter().cloned());
    let (s2_state, tail, _) = invert_with_frame(q, &backward)?;
    debug_assert_eq!(s2_state, bridge_b.state);

    let pairing = FrameMap {
        internals: internal_pairing(&bridge_a, &bridge_b),
        relators: slot_pairing(&bridge_a, &bridge_b),
    };
    let (_, _, _, mapped) = transport_moves(&bridge_b.state, &bridge_a.state, &pairing, &tail)?;
    moves.extend(mapped);
    Ok(Certificate { moves, expected_key: q_key })
}

/// Bidirectional breadth-first search on canonical keys. Before searching,
/// the built-in group evaluations are compared; any mismatch is returned
/// as sound non-equivalence. Found certificates always verify by replay.
pub fn search_equiv(
    p: &RelPresentation,
    q: &RelPresentation,
    bounds: &SearchBounds,
) -> Result<SearchOutcome> {
    if p.arity_in() != q.arity_in() || p.arity_out() != q.arity_out() {
        return Err(Error::ArityMismatch {
            expected: p.arity_in(),
            got: q.arity_in(),
            context: "search_equiv requires equal source and target arities".into(),
        });
    }

    for group in builtin_groups() {
        let a = hom_oracle(p, &group)?;
        let b = hom_oracle(q, &group)?;
        if let Some((row, col, lhs, rhs)) = a.first_difference(&b) {
            return Ok(SearchOutcome::Distinguished {
                group: group.name,
                row,
                col,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    let p_key = canonical_key(p);
    let q_key = canonical_key(q);
    if p_key == q_key {
        return Ok(SearchOutcome::Found(Certificate { moves: Vec::new(), expected_key: q_key }));
    }

    let mut fwd = Side::new(p, p_key);
    let mut bwd = Side::new(q, q_key.clone());
    let mut nodes_total = 2usize;

    while fwd.depth + bwd.depth < bounds.depth {
        let expand_fwd = fwd.frontier.len() <= bwd.frontier.len();
        let (side, other) = if expand_fwd { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };
        if side.frontier.is_empty() {
            break;
        }

        // deterministic frontier order: lexicographic canonical key
        let mut frontier = side.frontier.clone();
        frontier.sort_by_key(|&id| side.nodes[id].key.clone());

        let nodes_snapshot = &side.nodes;
        let expansions: Vec<(usize, Vec<(CanonicalKey, Edge)>)> = frontier
            .par_iter()
            .map(|&id| (id, expand(&nodes_snapshot[id].state, bounds)))
            .collect();

        let mut next_frontier = Vec::new();
        let mut meet: Option<(usize, usize)> = None;
        'merge: for (parent, edges) in expansions {
            for (key, edge) in edges {
                if side.visited.contains_key(&key) {
                    continue;
                }
                if nodes_total >= bounds.nodes {
                    return Ok(SearchOutcome::ExhaustedBounds { nodes: nodes_total });
                }
                let id = side.nodes.len();
                side.nodes.push(Node {
                    state: edge.state,
                    key: key.clone(),
                    parent: Some(parent),
                    edge_moves: edge.moves,
                });
                side.visited.insert(key.clone(), id);
                nodes_total += 1;
                next_frontier.push(id);
                if let Some(&other_id) = other.visited.get(&key) {
                    meet = Some((id, other_id));
                    break 'merge;
                }
            }
        }
        side.frontier = next_frontier;
        side.depth += 1;

        if let Some((new_id, other_id)) = meet {
            let cert = if expand_fwd {
                stitch_certificate(&fwd, new_id, &bwd, other_id, q, q_key.clone())?
            } else {
                stitch_certificate(&fwd, other_id, &bwd, new_id, q, q_key.clone())?
            };
            // found certificates must replay; a failure here is a bug
            let check = verify_certificate(p, &cert, q);
            if !check.is_valid() {
                return Err(Error::InvalidArgument(format!(
                    "internal: stitched certificate failed verification: {check:?}"
                )));
            }
            return Ok(SearchOutcome::Found(cert));
        }
        if fwd.frontier.is_empty() && bwd.frontier.is_empty() {
            break;
        }
    }
    Ok(SearchOutcome::ExhaustedBounds { nodes: nodes_total })
}

/// Replay a certificate with full precondition checking; valid iff every
/// move applies and the final canonical key matches both the certificate's
/// stated key and the target presentation's key.
pub fn verify_certificate(
    p: &RelPresentation,
    cert: &Certificate,
    q: &RelPresentation,
) -> VerifyOutcome {
    let mut state = p.clone();
    for (step, m) in cert.moves.iter().enumerate() {
        match state.apply_move(m) {
            Ok(next) => state = next,
            Err(e) => return VerifyOutcome::MoveFailed { step, reason: e.to_string() },
        }
    }
    let final_key = canonical_key(&state);
    if final_key == cert.expected_key && final_key == canonical_key(q) {
        VerifyOutcome::Valid
    } else {
        VerifyOutcome::KeyMismatch
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pres::{compose_p, elementary, identity_p};
    use crate::term::GenSym;

    fn closed(k: u32, relators: Vec<Vec<Letter>>) -> RelPresentation {
        RelPresentation::new(vec![], vec![], k, relators.into_iter().map(Word).collect()).unwrap()
    }

    fn c(i: u32) -> Letter {
        Letter::new(Generator::Internal(i), Sign::Plus)
    }

    fn tight_bounds() -> SearchBounds {
        SearchBounds { max_relator_len: 6, max_relators: 6, max_internal: 3, max_ac1_len: 2, depth: 8, nodes: 20_000 }
    }

    #[test]
    fn neighbors_include_ac1_removal() {
        let p = closed(1, vec![vec![c(1)]]);
        let empty = closed(0, vec![]);
        let found = neighbors(&p, &tight_bounds())
            .into_iter()
            .any(|(succ, m)| matches!(m, AcMove::Ac1Remove { .. }) && succ == empty);
        assert!(found);
    }

    #[test]
    fn neighbors_fold_ac5_into_keys() {
        // no successor of id1 is key-equal to id1 itself
        let p = identity_p(1);
        let own = canonical_key(&p);
        for (succ, _) in neighbors(&p, &tight_bounds()) {
            assert_ne!(canonical_key(&succ), own);
        }
    }

    #[test]
    fn neighbor_count_regression() {
        // bounds: relator len 4, 1 relator, 1 internal, ac1 words <= 2, so
        // no ac1 move fits (relator count is already at the limit)
        let bounds = SearchBounds {
            max_relator_len: 4,
            max_relators: 1,
            max_internal: 1,
            max_ac1_len: 2,
            depth: 1,
            nodes: 1000,
        };
        let ns = neighbors(&identity_p(1), &bounds);
        assert_eq!(ns.len(), 0);
        // with room for one more relator the ac1 additions appear
        let bounds = SearchBounds { max_relators: 2, ..bounds };
        let ns = neighbors(&identity_p(1), &bounds);
        assert_eq!(ns.len(), 9, "frozen enumeration fixture");
    }

    #[test]
    fn search_identity_composition() {
        let lhs = compose_p(&identity_p(1), &elementary(GenSym::Cop)).unwrap();
        let rhs = elementary(GenSym::Cop);
        match search_equiv(&lhs, &rhs, &tight_bounds()).unwrap() {
            SearchOutcome::Found(cert) => {
                assert!(verify_certificate(&lhs, &cert, &rhs).is_valid());
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn search_distinguishes_identity_from_antipode() {
        let start = std::time::Instant::now();
        match search_equiv(&identity_p(1), &elementary(GenSym::Ant), &tight_bounds()).unwrap() {
            SearchOutcome::Distinguished { group, .. } => assert_eq!(group, "z3"),
            other => panic!("expected Distinguished, got {other:?}"),
        }
        assert!(start.elapsed().as_secs() < 1);
    }

    #[test]
    fn lone_empty_relator_exhausts_bounds() {
        let sphere = closed(0, vec![vec![]]);
        let bounds = SearchBounds {
            max_relator_len: 3,
            max_relators: 2,
            max_internal: 1,
            max_ac1_len: 1,
            depth: 4,
            nodes: 3000,
        };
        match search_equiv(&sphere, &identity_p(0), &bounds).unwrap() {
            SearchOutcome::ExhaustedBounds { .. } => {}
            other => panic!("expected ExhaustedBounds, got {other:?}"),
        }
    }

    #[test]
    fn empty_certificate_between_key_equal_presentations() {
        let p = identity_p(1);
        let mut q = identity_p(1);
        q.relators[0] = q.relators[0].inverse();
        match search_equiv(&p, &q, &tight_bounds()).unwrap() {
            SearchOutcome::Found(cert) => {
                assert!(cert.moves.is_empty());
                assert!(verify_certificate(&p, &cert, &q).is_valid());
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn broken_certificate_reports_step() {
        let lhs = compose_p(&identity_p(1), &elementary(GenSym::Cop)).unwrap();
        let rhs = elementary(GenSym::Cop);
        let SearchOutcome::Found(cert) = search_equiv(&lhs, &rhs, &tight_bounds()).unwrap() else {
            panic!("expected Found");
        };
        assert!(!cert.moves.is_empty());
        // dropping a move must either fail mid-replay or miss the key
        let mut broken = cert.clone();
        broken.moves.remove(0);
        assert!(!verify_certificate(&lhs, &broken, &rhs).is_valid());
    }

    #[test]
    fn search_is_deterministic() {
        let lhs = compose_p(&elementary(GenSym::Cop), &tensor_once()).unwrap();
        let rhs = identity_p(1);
        let a = search_equiv(&lhs, &rhs, &tight_bounds()).unwrap();
        let b = search_equiv(&lhs, &rhs, &tight_bounds()).unwrap();
        match (a, b) {
            (SearchOutcome::Found(x), SearchOutcome::Found(y)) => {
                assert_eq!(x.moves, y.moves);
            }
            (x, y) => panic!("expected Found twice, got {x:?} / {y:?}"),
        }
    }

    fn tensor_once() -> RelPresentation {
        // (ε ⊗ id1): 2 -> 1
        crate::pres::tensor_p(&elementary(GenSym::Cou), &identity_p(1))
    }

    #[test]
    fn move_scrambled_pair_is_never_distinguished() {
        let p = elementary(GenSym::Mul);
        let mut q = p.clone();
        let scramble = vec![
            AcMove::Ac1Add { word: Word(vec![Letter::new(Generator::Source(1), Sign::Minus)]) },
            AcMove::Ac4Rotate { relator: 0, offset: 2 },
            AcMove::Ac5Invert { relator: 0 },
            AcMove::Ac3LeftMultiply { dst: 0, src: 1 },
        ];
        for m in &scramble {
            q = q.apply_move(m).unwrap();
        }
        match search_equiv(&p, &q, &tight_bounds()).unwrap() {
            SearchOutcome::Distinguished { .. } => panic!("sound pair distinguished"),
            SearchOutcome::Found(cert) => {
                assert!(verify_certificate(&p, &cert, &q).is_valid());
            }
            SearchOutcome::ExhaustedBounds { .. } => {}
        }
    }
}
