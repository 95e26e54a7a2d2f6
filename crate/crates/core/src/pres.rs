//! Relative presentations and the category structure on them: AC-moves,
//! composition by gluing along the shared interface, tensor by disjoint
//! union, identities, braidings and the elementary Hopf morphisms.
//!
//! A presentation `< A1 ; A2 ; B | R >: n -> m` has ordered external
//! generators (source `A1`, target `A2`), internal generators `B` and a
//! relator multiset `R`. External generators are never cancellable.
//! Internal generators are identified positionally (1-based index into the
//! internal list); bijective renaming is the identity, so no names are
//! stored for them.

use crate::error::{Error, Result};
use crate::term::GenSym;
use crate::words::{Generator, Letter, ReduceMode, Sign, Word};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelPresentation {
    /// Display names of the ordered source generators.
    pub source_names: Vec<String>,
    /// Display names of the ordered target generators.
    pub target_names: Vec<String>,
    /// Number of internal generators; they are `Internal(1..=k)`.
    pub internals: u32,
    /// Relator multiset, stored in an arbitrary order.
    pub relators: Vec<Word>,
}

/// Structural equality: arities, internal count and the relator multiset
/// (exact letters; use `canonical_key` to fold AC-invariant differences).
impl PartialEq for RelPresentation {
    fn eq(&self, other: &Self) -> bool {
        if self.arity_in() != other.arity_in()
            || self.arity_out() != other.arity_out()
            || self.internals != other.internals
        {
            return false;
        }
        let mut a = self.relators.clone();
        let mut b = other.relators.clone();
        a.sort();
        b.sort();
        a == b
    }
}

impl Eq for RelPresentation {}

impl RelPresentation {
    pub fn new(
        source_names: Vec<String>,
        target_names: Vec<String>,
        internals: u32,
        relators: Vec<Word>,
    ) -> Result<RelPresentation> {
        let p = RelPresentation { source_names, target_names, internals, relators };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for rel in &self.relators {
            for l in rel.iter() {
                if !self.contains(l.gen) {
                    return Err(Error::UnknownGenerator {
                        context: "relator".into(),
                        name: format!("{:?}", l.gen),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn arity_in(&self) -> usize {
        self.source_names.len()
    }

    pub fn arity_out(&self) -> usize {
        self.target_names.len()
    }

    pub fn contains(&self, gen: Generator) -> bool {
        match gen {
            Generator::Source(i) => i >= 1 && (i as usize) <= self.arity_in(),
            Generator::Target(i) => i >= 1 && (i as usize) <= self.arity_out(),
            Generator::Internal(i) => i >= 1 && i <= self.internals,
        }
    }

    /// Occurrences of `gen` summed over all relators.
    pub fn total_count(&self, gen: Generator) -> usize {
        self.relators.iter().map(|r| r.count(gen)).sum()
    }

    fn map_letters(&self, f: impl Fn(Generator) -> Generator) -> Vec<Word> {
        self.relators
            .iter()
            .map(|r| Word(r.iter().map(|l| Letter::new(f(l.gen), l.sign)).collect()))
            .collect()
    }

    /// Total size (letters over all relators), used by search bounds.
    pub fn letter_count(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }
}

/// The identity morphism `n -> n`: relators `a_i b_i^-1`.
pub fn identity_p(n: usize) -> RelPresentation {
    let relators = (1..=n as u32)
        .map(|i| {
            Word(vec![
                Letter::new(Generator::Source(i), Sign::Plus),
                Letter::new(Generator::Target(i), Sign::Minus),
            ])
        })
        .collect();
    RelPresentation {
        source_names: (1..=n).map(|i| format!("a{i}")).collect(),
        target_names: (1..=n).map(|i| format!("b{i}")).collect(),
        internals: 0,
        relators,
    }
}

/// The braiding `n ⊗ m -> m ⊗ n`: relators `a_i b_{m+i}^-1` and `a_{n+j} b_j^-1`.
pub fn braiding_p(n: usize, m: usize) -> RelPresentation {
    let mut relators = Vec::with_capacity(n + m);
    for i in 1..=n as u32 {
        relators.push(Word(vec![
            Letter::new(Generator::Source(i), Sign::Plus),
            Letter::new(Generator::Target(m as u32 + i), Sign::Minus),
        ]));
    }
    for j in 1..=m as u32 {
        relators.push(Word(vec![
            Letter::new(Generator::Source(n as u32 + j), Sign::Plus),
            Letter::new(Generator::Target(j), Sign::Minus),
        ]));
    }
    RelPresentation {
        source_names: (1..=n + m).map(|i| format!("a{i}")).collect(),
        target_names: (1..=n + m).map(|i| format!("b{i}")).collect(),
        internals: 0,
        relators,
    }
}

/// The elementary Hopf morphisms of the presentation category.
pub fn elementary(kind: GenSym) -> RelPresentation {
    let src = |i: u32| Letter::new(Generator::Source(i), Sign::Plus);
    let tgt = |i: u32| Letter::new(Generator::Target(i), Sign::Plus);
    let tgt_inv = |i: u32| Letter::new(Generator::Target(i), Sign::Minus);
    let names = |items: &[&str]| items.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    match kind {
        GenSym::Id1 => identity_p(1),
        GenSym::Gamma => braiding_p(1, 1),
        // Δ̂ = <(a),(b,c) | a b^-1, a c^-1>
        GenSym::Cop => RelPresentation {
            source_names: names(&["a"]),
            target_names: names(&["b", "c"]),
            internals: 0,
            relators: vec![Word(vec![src(1), tgt_inv(1)]), Word(vec![src(1), tgt_inv(2)])],
        },
        // ε̂ = <(a),() | >
        GenSym::Cou => RelPresentation {
            source_names: names(&["a"]),
            target_names: vec![],
            internals: 0,
            relators: vec![],
        },
        // μ̂ = <(a,b),(c) | a b c^-1>
        GenSym::Mul => RelPresentation {
            source_names: names(&["a", "b"]),
            target_names: names(&["c"]),
            internals: 0,
            relators: vec![Word(vec![src(1), src(2), tgt_inv(1)])],
        },
        // η̂ = <(),(a) | a>
        GenSym::Uni => RelPresentation {
            source_names: vec![],
            target_names: names(&["a"]),
            internals: 0,
            relators: vec![Word(vec![tgt(1)])],
        },
        // Ŝ = <(a),(b) | a b>
        GenSym::Ant => RelPresentation {
            source_names: names(&["a"]),
            target_names: names(&["b"]),
            internals: 0,
            relators: vec![Word(vec![src(1), tgt(1)])],
        },
        // L̂ = <(),(a) | >
        GenSym::Int => RelPresentation {
            source_names: vec![],
            target_names: names(&["a"]),
            internals: 0,
            relators: vec![],
        },
        // l̂ = <(a),() | a>
        GenSym::Coi => RelPresentation {
            source_names: names(&["a"]),
            target_names: vec![],
            internals: 0,
            relators: vec![Word(vec![src(1)])],
        },
    }
}

/// Diagrammatic composition: `compose_p(P, Q)` is "P then Q". The shared
/// interface generators become internal (first in the internal order),
/// followed by P's and then Q's internals.
pub fn compose_p(p: &RelPresentation, q: &RelPresentation) -> Result<RelPresentation> {
    if p.arity_out() != q.arity_in() {
        return Err(Error::ArityMismatch {
            expected: p.arity_out(),
            got: q.arity_in(),
            context: "compose_p: target arity of P vs source arity of Q".into(),
        });
    }
    let m = p.arity_out() as u32;
    let pk = p.internals;
    let mut relators = p.map_letters(|g| match g {
        Generator::Source(i) => Generator::Source(i),
        Generator::Target(j) => Generator::Internal(j),
        Generator::Internal(x) => Generator::Internal(m + x),
    });
    relators.extend(q.map_letters(|g| match g {
        Generator::Source(j) => Generator::Internal(j),
        Generator::Target(t) => Generator::Target(t),
        Generator::Internal(y) => Generator::Internal(m + pk + y),
    }));
    Ok(RelPresentation {
        source_names: p.source_names.clone(),
        target_names: q.target_names.clone(),
        internals: m + pk + q.internals,
        relators,
    })
}

/// Monoidal product: disjoint union with Q's external indices shifted.
pub fn tensor_p(p: &RelPresentation, q: &RelPresentation) -> RelPresentation {
    let n = p.arity_in() as u32;
    let m = p.arity_out() as u32;
    let pk = p.internals;
    let mut relators = p.relators.clone();
    relators.extend(q.map_letters(|g| match g {
        Generator::Source(i) => Generator::Source(n + i),
        Generator::Target(j) => Generator::Target(m + j),
        Generator::Internal(x) => Generator::Internal(pk + x),
    }));
    let mut source_names = p.source_names.clone();
    source_names.extend(q.source_names.iter().cloned());
    let mut target_names = p.target_names.clone();
    target_names.extend(q.target_names.iter().cloned());
    RelPresentation { source_names, target_names, internals: pk + q.internals, relators }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InsertOrder {
    /// insert `g g^-1`
    GFirst,
    /// insert `g^-1 g`
    InverseFirst,
}

/// The AC-moves. Relators are addressed by index into the relator list,
/// internal generators by their 1-based position. Each move carries the
/// data needed to apply it deterministically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum AcMove {
    /// ac1: add a fresh internal generator `b` (index k+1) and the relator `b w`.
    Ac1Add { word: Word },
    /// ac1 inverse: remove the relator `b w` together with `b`, which must
    /// occur nowhere else.
    Ac1Remove { internal: u32, relator: usize },
    /// ac2': insert `g g^-1` or `g^-1 g` at a position in a relator.
    Ac2Insert { relator: usize, pos: usize, gen: Generator, order: InsertOrder },
    /// ac2': cancel the adjacent inverse pair at a position.
    Ac2Cancel { relator: usize, pos: usize },
    /// ac3: replace relator `dst` by its left product with relator `src`.
    Ac3LeftMultiply { dst: usize, src: usize },
    /// ac4: cyclic left rotation of a relator.
    Ac4Rotate { relator: usize, offset: usize },
    /// ac5: replace a relator by its inverse.
    Ac5Invert { relator: usize },
    /// ac6: replace an internal generator by its inverse in all relators.
    Ac6FlipInternal { internal: u32 },
    /// ac7: the pivot relator isolates `internal` (a single occurrence);
    /// substitute it everywhere else, then delete the pivot and the generator.
    Ac7Eliminate { internal: u32, relator: usize },
}

fn check_relator(p: &RelPresentation, idx: usize, what: &str) -> Result<()> {
    if idx >= p.relators.len() {
        return Err(Error::MoveInapplicable(format!(
            "{what}: relator index {idx} out of range (have {})",
            p.relators.len()
        )));
    }
    Ok(())
}

fn check_internal(p: &RelPresentation, b: u32, what: &str) -> Result<()> {
    if b == 0 || b > p.internals {
        return Err(Error::MoveInapplicable(format!(
            "{what}: internal generator {b} out of range (have {})",
            p.internals
        )));
    }
    Ok(())
}

/// Drop internal generator `b`, shifting higher indices down by one.
fn renumber_after_removal(relators: &mut [Word], b: u32) {
    for rel in relators.iter_mut() {
        for l in rel.0.iter_mut() {
            if let Generator::Internal(i) = l.gen {
                debug_assert_ne!(i, b);
                if i > b {
                    l.gen = Generator::Internal(i - 1);
                }
            }
        }
    }
}

/// The word a pivot relator equates `b` with: if the pivot reads `b^ε u`
/// after rotation (with `u` free of `b`), then `b = u^-1` for ε = +1 and
/// `b = u` for ε = -1.
fn ac7_replacement(pivot: &Word, b: u32) -> (usize, Sign, Word) {
    let pos = pivot
        .iter()
        .position(|l| l.gen == Generator::Internal(b))
        .expect("pivot must contain the internal generator");
    let sign = pivot.0[pos].sign;
    let rotated = pivot.rotate_left(pos);
    let rest = Word(rotated.0[1..].to_vec());
    let replacement = match sign {
        Sign::Plus => rest.inverse(),
        Sign::Minus => rest,
    };
    (pos, sign, replacement)
}

fn substitute(word: &Word, b: u32, replacement: &Word) -> Word {
    let mut letters = Vec::with_capacity(word.len());
    for &l in word.iter() {
        if l.gen == Generator::Internal(b) {
            match l.sign {
                Sign::Plus => letters.extend_from_slice(&replacement.0),
                Sign::Minus => letters.extend_from_slice(&replacement.inverse().0),
            }
        } else {
            letters.push(l);
        }
    }
    Word(letters)
}

impl RelPresentation {
    /// Apply a single AC-move, checking its preconditions.
    pub fn apply_move(&self, m: &AcMove) -> Result<RelPresentation> {
        let mut out = self.clone();
        match m {
            AcMove::Ac1Add { word } => {
                for l in word.iter() {
                    if !self.contains(l.gen) {
                        return Err(Error::MoveInapplicable(format!(
                            "ac1 add: word names unknown generator {:?}",
                            l.gen
                        )));
                    }
                }
                out.internals += 1;
                let mut letters = vec![Letter::new(Generator::Internal(out.internals), Sign::Plus)];
                letters.extend_from_slice(&word.0);
                out.relators.push(Word(letters));
            }
            AcMove::Ac1Remove { internal, relator } => {
                check_internal(self, *internal, "ac1 remove")?;
                check_relator(self, *relator, "ac1 remove")?;
                let b = Generator::Internal(*internal);
                let rel = &self.relators[*relator];
                if rel.is_empty() || rel.0[0] != Letter::new(b, Sign::Plus) {
                    return Err(Error::MoveInapplicable(
                        "ac1 remove: relator is not of the form b w with b first and positive".into(),
                    ));
                }
                if Word(rel.0[1..].to_vec()).count(b) != 0 {
                    return Err(Error::MoveInapplicable(
                        "ac1 remove: generator occurs again inside its own relator".into(),
                    ));
                }
                for (i, r) in self.relators.iter().enumerate() {
                    if i != *relator && r.count(b) != 0 {
                        return Err(Error::MoveInapplicable(format!(
                            "ac1 remove: generator occurs in relator {i}"
                        )));
                    }
                }
                out.relators.remove(*relator);
                renumber_after_removal(&mut out.relators, *internal);
                out.internals -= 1;
            }
            AcMove::Ac2Insert { relator, pos, gen, order } => {
                check_relator(self, *relator, "ac2 insert")?;
                if !self.contains(*gen) {
                    return Err(Error::MoveInapplicable(format!(
                        "ac2 insert: unknown generator {gen:?}"
                    )));
                }
                let rel = &mut out.relators[*relator];
                if *pos > rel.len() {
                    return Err(Error::MoveInapplicable(format!(
                        "ac2 insert: position {pos} past relator length {}",
                        rel.len()
                    )));
                }
                let (first, second) = match order {
                    InsertOrder::GFirst => (Sign::Plus, Sign::Minus),
                    InsertOrder::InverseFirst => (Sign::Minus, Sign::Plus),
                };
                rel.0.insert(*pos, Letter::new(*gen, second));
                rel.0.insert(*pos, Letter::new(*gen, first));
            }
            AcMove::Ac2Cancel { relator, pos } => {
                check_relator(self, *relator, "ac2 cancel")?;
                let rel = &mut out.relators[*relator];
                if pos + 1 >= rel.len() {
                    return Err(Error::MoveInapplicable(format!(
                        "ac2 cancel: position {pos} has no adjacent pair"
                    )));
                }
                let (a, b) = (rel.0[*pos], rel.0[*pos + 1]);
                if a.gen != b.gen || a.sign == b.sign {
                    return Err(Error::MoveInapplicable(format!(
                        "ac2 cancel: letters at {pos},{} are not an inverse pair",
                        pos + 1
                    )));
                }
                rel.0.drain(*pos..=*pos + 1);
            }
            AcMove::Ac3LeftMultiply { dst, src } => {
                check_relator(self, *dst, "ac3")?;
                check_relator(self, *src, "ac3")?;
                if dst == src {
                    return Err(Error::MoveInapplicable(
                        "ac3: source and destination relators coincide".into(),
                    ));
                }
                out.relators[*dst] = self.relators[*src].concat(&self.relators[*dst]);
            }
            AcMove::Ac4Rotate { relator, offset } => {
                check_relator(self, *relator, "ac4")?;
                out.relators[*relator] = self.relators[*relator].rotate_left(*offset);
            }
            AcMove::Ac5Invert { relator } => {
                check_relator(self, *relator, "ac5")?;
                out.relators[*relator] = self.relators[*relator].inverse();
            }
            AcMove::Ac6FlipInternal { internal } => {
                check_internal(self, *internal, "ac6")?;
                for rel in out.relators.iter_mut() {
                    for l in rel.0.iter_mut() {
                        if l.gen == Generator::Internal(*internal) {
                            l.sign = l.sign.flip();
                        }
                    }
                }
            }
            AcMove::Ac7Eliminate { internal, relator } => {
                check_internal(self, *internal, "ac7")?;
                check_relator(self, *relator, "ac7")?;
                let pivot = &self.relators[*relator];
                if pivot.count(Generator::Internal(*internal)) != 1 {
                    return Err(Error::MoveInapplicable(format!(
                        "ac7: pivot relator must contain the generator exactly once, found {}",
                        pivot.count(Generator::Internal(*internal))
                    )));
                }
                let (_, _, replacement) = ac7_replacement(pivot, *internal);
                let mut relators = Vec::with_capacity(self.relators.len() - 1);
                for (i, r) in self.relators.iter().enumerate() {
                    if i != *relator {
                        relators.push(substitute(r, *internal, &replacement));
                    }
                }
                renumber_after_removal(&mut relators, *internal);
                out.relators = relators;
                out.internals -= 1;
            }
        }
        Ok(out)
    }

    /// Moves undoing `m`; they apply to `self.apply_move(m)` and restore
    /// `self` up to internal renaming (exactly, for all primitive moves).
    pub fn inverse_moves(&self, m: &AcMove) -> Result<Vec<AcMove>> {
        match m {
            AcMove::Ac1Add { .. } => Ok(vec![AcMove::Ac1Remove {
                internal: self.internals + 1,
                relator: self.relators.len(),
            }]),
            AcMove::Ac1Remove { internal, relator } => {
                check_internal(self, *internal, "ac1 remove inverse")?;
                check_relator(self, *relator, "ac1 remove inverse")?;
                let rel = &self.relators[*relator];
                let word = Word(
                    rel.0[1..]
                        .iter()
                        .map(|l| match l.gen {
                            Generator::Internal(i) if i > *internal => {
                                Letter::new(Generator::Internal(i - 1), l.sign)
                            }
                            _ => *l,
                        })
                        .collect(),
                );
                Ok(vec![AcMove::Ac1Add { word }])
            }
            AcMove::Ac2Insert { relator, pos, .. } => {
                Ok(vec![AcMove::Ac2Cancel { relator: *relator, pos: *pos }])
            }
            AcMove::Ac2Cancel { relator, pos } => {
                check_relator(self, *relator, "ac2 cancel inverse")?;
                let rel = &self.relators[*relator];
                if pos + 1 >= rel.len() {
                    return Err(Error::MoveInapplicable("ac2 cancel inverse: bad position".into()));
                }
                let first = rel.0[*pos];
                let order = match first.sign {
                    Sign::Plus => InsertOrder::GFirst,
                    Sign::Minus => InsertOrder::InverseFirst,
                };
                Ok(vec![AcMove::Ac2Insert {
                    relator: *relator,
                    pos: *pos,
                    gen: first.gen,
                    order,
                }])
            }
            AcMove::Ac3LeftMultiply { dst, src } => {
                check_relator(self, *src, "ac3 inverse")?;
                let len = self.relators[*src].len();
                let mut moves = vec![
                    AcMove::Ac5Invert { relator: *src },
                    AcMove::Ac3LeftMultiply { dst: *dst, src: *src },
                    AcMove::Ac5Invert { relator: *src },
                ];
                for pos in (0..len).rev() {
                    moves.push(AcMove::Ac2Cancel { relator: *dst, pos });
                }
                Ok(moves)
            }
            AcMove::Ac4Rotate { relator, offset } => {
                check_relator(self, *relator, "ac4 inverse")?;
                let len = self.relators[*relator].len().max(1);
                Ok(vec![AcMove::Ac4Rotate { relator: *relator, offset: (len - offset % len) % len }])
            }
            AcMove::Ac5Invert { relator } => Ok(vec![AcMove::Ac5Invert { relator: *relator }]),
            AcMove::Ac6FlipInternal { internal } => {
                Ok(vec![AcMove::Ac6FlipInternal { internal: *internal }])
            }
            AcMove::Ac7Eliminate { .. } => {
                let expansion = self.expand_to_primitives(m)?;
                let (_, inverted, _) = invert_with_frame(self, &expansion)?;
                Ok(inverted)
            }
        }
    }

    /// Expand a (possibly derived) move into primitive moves with the same
    /// end state. Primitive moves expand to themselves; ac6 and ac7 expand
    /// into the ac1-ac5 sequences of their derivations.
    pub fn expand_to_primitives(&self, m: &AcMove) -> Result<Vec<AcMove>> {
        match m {
            AcMove::Ac7Eliminate { internal, relator } => expand_ac7(self, *internal, *relator),
            AcMove::Ac6FlipInternal { internal } => expand_ac6(self, *internal),
            other => Ok(vec![other.clone()]),
        }
    }
}

/// Replay a move list, checking each precondition.
pub fn apply_moves(p: &RelPresentation, moves: &[AcMove]) -> Result<RelPresentation> {
    let mut state = p.clone();
    for m in moves {
        state = state.apply_move(m)?;
    }
    Ok(state)
}

/// An index correspondence between two presentations that differ only by
/// internal renaming and relator reordering: entry `i` gives the actual
/// index of the reference's `i`-th internal generator / relator.
#[derive(Debug, Clone)]
pub struct FrameMap {
    pub internals: Vec<u32>,
    pub relators: Vec<usize>,
}

impl FrameMap {
    pub fn identity(p: &RelPresentation) -> FrameMap {
        FrameMap {
            internals: (1..=p.internals).collect(),
            relators: (0..p.relators.len()).collect(),
        }
    }

    fn map_generator(&self, g: Generator) -> Generator {
        match g {
            Generator::Internal(i) => Generator::Internal(self.internals[i as usize - 1]),
            other => other,
        }
    }

    fn map_word(&self, w: &Word) -> Word {
        Word(w.iter().map(|l| Letter::new(self.map_generator(l.gen), l.sign)).collect())
    }

    pub fn map_move(&self, m: &AcMove) -> AcMove {
        match m {
            AcMove::Ac1Add { word } => AcMove::Ac1Add { word: self.map_word(word) },
            AcMove::Ac1Remove { internal, relator } => AcMove::Ac1Remove {
                internal: self.internals[*internal as usize - 1],
                relator: self.relators[*relator],
            },
            AcMove::Ac2Insert { relator, pos, gen, order } => AcMove::Ac2Insert {
                relator: self.relators[*relator],
                pos: *pos,
                gen: self.map_generator(*gen),
                order: *order,
            },
            AcMove::Ac2Cancel { relator, pos } => {
                AcMove::Ac2Cancel { relator: self.relators[*relator], pos: *pos }
            }
            AcMove::Ac3LeftMultiply { dst, src } => {
                AcMove::Ac3LeftMultiply { dst: self.relators[*dst], src: self.relators[*src] }
            }
            AcMove::Ac4Rotate { relator, offset } => {
                AcMove::Ac4Rotate { relator: self.relators[*relator], offset: *offset }
            }
            AcMove::Ac5Invert { relator } => {
                AcMove::Ac5Invert { relator: self.relators[*relator] }
            }
            AcMove::Ac6FlipInternal { internal } => {
                AcMove::Ac6FlipInternal { internal: self.internals[*internal as usize - 1] }
            }
            AcMove::Ac7Eliminate { internal, relator } => AcMove::Ac7Eliminate {
                internal: self.internals[*internal as usize - 1],
                relator: self.relators[*relator],
            },
        }
    }

    /// `self` then `after`: reference -> mid -> actual.
    fn compose(&self, after: &FrameMap) -> FrameMap {
        FrameMap {
            internals: self.internals.iter().map(|&i| after.internals[i as usize - 1]).collect(),
            relators: self.relators.iter().map(|&j| after.relators[j]).collect(),
        }
    }

    fn note_add(&mut self, actual_internal: u32, actual_relator: usize) {
        self.internals.push(actual_internal);
        self.relators.push(actual_relator);
    }

    fn note_remove(&mut self, ref_internal: u32, ref_relator: usize) {
        let b_act = self.internals[ref_internal as usize - 1];
        self.internals.remove(ref_internal as usize - 1);
        for v in self.internals.iter_mut() {
            if *v > b_act {
                *v -= 1;
            }
        }
        let r_act = self.relators[ref_relator];
        self.relators.remove(ref_relator);
        for v in self.relators.iter_mut() {
            if *v > r_act {
                *v -= 1;
            }
        }
    }
}

/// Apply a reference-frame move list to an isomorphic actual state,
/// remapping indices through `frame` and keeping the correspondence
/// up to date as moves add and remove generators or relators.
pub fn transport_moves(
    reference: &RelPresentation,
    actual: &RelPresentation,
    frame: &FrameMap,
    moves: &[AcMove],
) -> Result<(RelPresentation, RelPresentation, FrameMap, Vec<AcMove>)> {
    let mut reference = reference.clone();
    let mut actual = actual.clone();
    let mut frame = frame.clone();
    let mut mapped_out = Vec::with_capacity(moves.len());
    for m in moves {
        let mapped = frame.map_move(m);
        match m {
            AcMove::Ac1Add { .. } => {
                frame.note_add(actual.internals + 1, actual.relators.len());
            }
            AcMove::Ac1Remove { internal, relator }
            | AcMove::Ac7Eliminate { internal, relator } => {
                frame.note_remove(*internal, *relator);
            }
            _ => {}
        }
        reference = reference.apply_move(m)?;
        actual = actual.apply_move(&mapped)?;
        mapped_out.push(mapped);
    }
    Ok((reference, actual, frame, mapped_out))
}

/// The frame displacement inverting one move introduces: all primitive
/// inverses restore the exact frame except undoing a removal, which
/// re-creates the generator and relator at the end.
fn inverse_psi(p: &RelPresentation, m: &AcMove) -> FrameMap {
    match m {
        AcMove::Ac1Remove { internal, relator } => {
            let k = p.internals;
            let s = p.relators.len();
            FrameMap {
                internals: (1..=k)
                    .map(|a| {
                        if a < *internal {
                            a
                        } else if a == *internal {
                            k
                        } else {
                            a - 1
                        }
                    })
                    .collect(),
                relators: (0..s)
                    .map(|j| {
                        if j < *relator {
                            j
                        } else if j == *relator {
                            s - 1
                        } else {
                            j - 1
                        }
                    })
                    .collect(),
            }
        }
        _ => FrameMap::identity(p),
    }
}

/// Invert a move sequence. Returns the end state, an inverse sequence that
/// applies to the end state, and the frame correspondence from `p` to the
/// state the inverse sequence reaches (`p` up to internal renaming and
/// relator reordering).
pub fn invert_with_frame(
    p: &RelPresentation,
    moves: &[AcMove],
) -> Result<(RelPresentation, Vec<AcMove>, FrameMap)> {
    let mut states = vec![p.clone()];
    for m in moves {
        states.push(states.last().unwrap().apply_move(m)?);
    }
    let end = states.last().unwrap().clone();
    let mut actual = end.clone();
    // frame: current reference state -> actual replay state
    let mut frame = FrameMap::identity(&end);
    let mut out = Vec::new();
    for i in (0..moves.len()).rev() {
        let (inv, psi) = match &moves[i] {
            AcMove::Ac7Eliminate { .. } => {
                let expansion = states[i].expand_to_primitives(&moves[i])?;
                let (_, inv, psi) = invert_with_frame(&states[i], &expansion)?;
                (inv, psi)
            }
            m => (states[i].inverse_moves(m)?, inverse_psi(&states[i], m)),
        };
        // inv is valid on states[i+1]'s frame; transport it onto the replay state
        let (_, new_actual, frame_after, mapped) =
            transport_moves(&states[i + 1], &actual, &frame, &inv)?;
        actual = new_actual;
        out.extend(mapped);
        frame = psi.compose(&frame_after);
    }
    Ok((end, out, frame))
}

fn push_rotate(moves: &mut Vec<AcMove>, relator: usize, offset: usize, len: usize) {
    if len > 0 && offset % len != 0 {
        moves.push(AcMove::Ac4Rotate { relator, offset: offset % len });
    }
}

/// The ac7 derivation as primitive moves: bring the pivot to the form
/// `w^-1 b`, then repeatedly rotate each other occurrence of `b` to the
/// head, left-multiply by the pivot and cancel, and finally delete the
/// pivot with the generator via (the inverse of) ac1.
fn expand_ac7(p: &RelPresentation, b: u32, pivot_idx: usize) -> Result<Vec<AcMove>> {
    check_internal(p, b, "ac7 expansion")?;
    check_relator(p, pivot_idx, "ac7 expansion")?;
    let pivot = &p.relators[pivot_idx];
    if pivot.count(Generator::Internal(b)) != 1 {
        return Err(Error::MoveInapplicable(
            "ac7 expansion: pivot relator must contain the generator exactly once".into(),
        ));
    }
    let bgen = Generator::Internal(b);
    let mut moves = Vec::new();
    let mut state = p.clone();

    // pivot prep: rotate (and invert for a negative occurrence) so that the
    // pivot ends with b^+, i.e. has the form w^-1 b
    let (pos, sign, _) = ac7_replacement(pivot, b);
    let plen = pivot.len();
    match sign {
        Sign::Plus => push_rotate(&mut moves, pivot_idx, pos + 1, plen),
        Sign::Minus => {
            moves.push(AcMove::Ac5Invert { relator: pivot_idx });
            // after inversion b sits at position plen - 1 - pos with sign +
            push_rotate(&mut moves, pivot_idx, plen - pos, plen);
        }
    }
    state = apply_moves(&state, &moves)?;

    for rel_idx in 0..state.relators.len() {
        if rel_idx == pivot_idx {
            continue;
        }
        loop {
            let rel = &state.relators[rel_idx];
            let Some(q) = rel.iter().position(|l| l.gen == bgen) else { break };
            let occ_sign = rel.0[q].sign;
            let len_r = rel.len();
            let plen = state.relators[pivot_idx].len();
            let mut step = Vec::new();
            match occ_sign {
                Sign::Minus => {
                    // α b^-1 β  ->  b^-1 β α  ->  w^-1 β α  ->  α w^-1 β
                    push_rotate(&mut step, rel_idx, q, len_r);
                    step.push(AcMove::Ac3LeftMultiply { dst: rel_idx, src: pivot_idx });
                    step.push(AcMove::Ac2Cancel { relator: rel_idx, pos: plen - 1 });
                    let newlen = len_r + plen - 2;
                    let beta = len_r - q - 1;
                    push_rotate(&mut step, rel_idx, plen - 1 + beta, newlen);
                }
                Sign::Plus => {
                    // α b β -> b β α -> inverted: α^-1 β^-1 b^-1 -> b^-1 α^-1 β^-1
                    // -> w^-1 α^-1 β^-1 -> inverted back: β α w -> α w β
                    push_rotate(&mut step, rel_idx, q, len_r);
                    step.push(AcMove::Ac5Invert { relator: rel_idx });
                    push_rotate(&mut step, rel_idx, len_r - 1, len_r);
                    step.push(AcMove::Ac3LeftMultiply { dst: rel_idx, src: pivot_idx });
                    step.push(AcMove::Ac2Cancel { relator: rel_idx, pos: plen - 1 });
                    step.push(AcMove::Ac5Invert { relator: rel_idx });
                    let newlen = len_r + plen - 2;
                    let beta = len_r - q - 1;
                    push_rotate(&mut step, rel_idx, beta, newlen);
                }
            }
            state = apply_moves(&state, &step)?;
            moves.extend(step);
        }
    }

    // pivot is now w^-1 b with b nowhere else; rotate to b w^-1 and remove
    let plen = state.relators[pivot_idx].len();
    let mut tail = Vec::new();
    push_rotate(&mut tail, pivot_idx, plen - 1, plen);
    tail.push(AcMove::Ac1Remove { internal: b, relator: pivot_idx });
    apply_moves(&state, &tail)?;
    moves.extend(tail);
    Ok(moves)
}

/// ac6 via its derivation: add `c` with relator `c b`, eliminate `b`
/// (substituting `b = c^-1` everywhere), so `c` plays the role of `b^-1`.
fn expand_ac6(p: &RelPresentation, b: u32) -> Result<Vec<AcMove>> {
    check_internal(p, b, "ac6 expansion")?;
    let mut moves = vec![AcMove::Ac1Add {
        word: Word(vec![Letter::new(Generator::Internal(b), Sign::Plus)]),
    }];
    let state = p.apply_move(&moves[0])?;
    let pivot_idx = state.relators.len() - 1;
    let expansion = expand_ac7(&state, b, pivot_idx)?;
    moves.extend(expansion);
    Ok(moves)
}

/// Greedy normalization: repeatedly apply ac7 to any internal generator
/// occurring exactly once in some relator, reducing relators freely and
/// cyclically after each step. Deterministic scan order: internal index
/// ascending, pivot relator ascending, restart after every elimination.
/// Empty relators are preserved.
pub fn eliminate(p: &RelPresentation) -> RelPresentation {
    let mut state = p.clone();
    for rel in state.relators.iter_mut() {
        *rel = rel.reduce(ReduceMode::FreeCyclic);
    }
    'outer: loop {
        for b in 1..=state.internals {
            for pivot in 0..state.relators.len() {
                if state.relators[pivot].count(Generator::Internal(b)) == 1 {
                    state = state
                        .apply_move(&AcMove::Ac7Eliminate { internal: b, relator: pivot })
                        .expect("precondition checked");
                    for rel in state.relators.iter_mut() {
                        *rel = rel.reduce(ReduceMode::FreeCyclic);
                    }
                    continue 'outer;
                }
            }
        }
        break;
    }
    state
}
