//! Morphism expressions of the free symmetric monoidal category on a
//! unimodular cocommutative Hopf algebra, kept as slice-structured terms
//! over the elementary generators.
//!
//! No rewriting-based equality is attempted here; terms are compared
//! externally, either by exact evaluation in a group model or through the
//! presentation functor plus AC search.

use crate::error::{Error, Result};
use crate::words::{Permutation, Sign, Word};
use serde::{Deserialize, Serialize};

/// The elementary generators with their fixed arities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenSym {
    /// identity wire, 1 -> 1
    Id1,
    /// braiding of two wires, 2 -> 2
    Gamma,
    /// comultiplication, 1 -> 2
    Cop,
    /// counit, 1 -> 0
    Cou,
    /// multiplication, 2 -> 1
    Mul,
    /// unit, 0 -> 1
    Uni,
    /// antipode, 1 -> 1
    Ant,
    /// two-sided integral, 0 -> 1
    Int,
    /// two-sided cointegral, 1 -> 0
    Coi,
}

impl GenSym {
    pub fn arity(self) -> (usize, usize) {
        match self {
            GenSym::Id1 => (1, 1),
            GenSym::Gamma => (2, 2),
            GenSym::Cop => (1, 2),
            GenSym::Cou => (1, 0),
            GenSym::Mul => (2, 1),
            GenSym::Uni => (0, 1),
            GenSym::Ant => (1, 1),
            GenSym::Int => (0, 1),
            GenSym::Coi => (1, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GenSym::Id1 => "id",
            GenSym::Gamma => "swap",
            GenSym::Cop => "cop",
            GenSym::Cou => "cou",
            GenSym::Mul => "mul",
            GenSym::Uni => "uni",
            GenSym::Ant => "ant",
            GenSym::Int => "int",
            GenSym::Coi => "coi",
        }
    }

    pub const ALL: [GenSym; 9] = [
        GenSym::Id1,
        GenSym::Gamma,
        GenSym::Cop,
        GenSym::Cou,
        GenSym::Mul,
        GenSym::Uni,
        GenSym::Ant,
        GenSym::Int,
        GenSym::Coi,
    ];
}

/// A morphism `H^⊗n -> H^⊗m` as an ordered list of layers; the input
/// arities of each layer sum to the previous layer's output arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HopfTerm {
    arity_in: usize,
    arity_out: usize,
    slices: Vec<Vec<GenSym>>,
}

fn layer_arity(layer: &[GenSym]) -> (usize, usize) {
    layer.iter().fold((0, 0), |(i, o), g| {
        let (gi, go) = g.arity();
        (i + gi, o + go)
    })
}

impl HopfTerm {
    pub fn identity(n: usize) -> HopfTerm {
        HopfTerm { arity_in: n, arity_out: n, slices: Vec::new() }
    }

    pub fn generator(g: GenSym) -> HopfTerm {
        let (i, o) = g.arity();
        HopfTerm { arity_in: i, arity_out: o, slices: vec![vec![g]] }
    }

    pub fn from_slices(arity_in: usize, slices: Vec<Vec<GenSym>>) -> Result<HopfTerm> {
        let mut width = arity_in;
        for (idx, layer) in slices.iter().enumerate() {
            let (i, o) = layer_arity(layer);
            if i != width {
                return Err(Error::ArityMismatch {
                    expected: width,
                    got: i,
                    context: format!("layer {idx} input arity"),
                });
            }
            width = o;
        }
        Ok(HopfTerm { arity_in, arity_out: width, slices })
    }

    pub fn arity_in(&self) -> usize {
        self.arity_in
    }

    pub fn arity_out(&self) -> usize {
        self.arity_out
    }

    pub fn slices(&self) -> &[Vec<GenSym>] {
        &self.slices
    }

    pub fn is_identity_shape(&self) -> bool {
        self.slices.iter().all(|l| l.iter().all(|&g| g == GenSym::Id1))
    }
}

/// Diagrammatic composition: `f` then `g`.
pub fn then(f: &HopfTerm, g: &HopfTerm) -> Result<HopfTerm> {
    if f.arity_out != g.arity_in {
        return Err(Error::ArityMismatch {
            expected: f.arity_out,
            got: g.arity_in,
            context: "then: output arity of f vs input arity of g".into(),
        });
    }
    let mut slices = f.slices.clone();
    slices.extend(g.slices.iter().cloned());
    Ok(HopfTerm { arity_in: f.arity_in, arity_out: g.arity_out, slices })
}

/// Compose a chain in diagrammatic order.
pub fn then_all(terms: &[HopfTerm]) -> Result<HopfTerm> {
    let mut iter = terms.iter();
    let first = iter.next().expect("then_all needs at least one term").clone();
    iter.try_fold(first, |acc, t| then(&acc, t))
}

/// Monoidal product: layers zipped side by side, the shorter term padded
/// with identity layers at the end.
pub fn tensor_t(f: &HopfTerm, g: &HopfTerm) -> HopfTerm {
    let depth = f.slices.len().max(g.slices.len());
    let mut slices = Vec::with_capacity(depth);
    for i in 0..depth {
        let mut layer = Vec::new();
        match f.slices.get(i) {
            Some(l) => layer.extend_from_slice(l),
            None => layer.extend(std::iter::repeat(GenSym::Id1).take(f.arity_out)),
        }
        match g.slices.get(i) {
            Some(l) => layer.extend_from_slice(l),
            None => layer.extend(std::iter::repeat(GenSym::Id1).take(g.arity_out)),
        }
        slices.push(layer);
    }
    HopfTerm {
        arity_in: f.arity_in + g.arity_in,
        arity_out: f.arity_out + g.arity_out,
        slices,
    }
}

pub fn tensor_all(terms: &[HopfTerm]) -> HopfTerm {
    terms.iter().fold(HopfTerm::identity(0), |acc, t| tensor_t(&acc, t))
}

/// Iterated tensor power.
pub fn tensor_pow(t: &HopfTerm, n: usize) -> HopfTerm {
    let mut acc = HopfTerm::identity(0);
    for _ in 0..n {
        acc = tensor_t(&acc, t);
    }
    acc
}

/// The canonical coherence morphism for a permutation, built from a fixed
/// decomposition into adjacent transpositions. Evaluation is independent
/// of the decomposition.
pub fn upsilon(sigma: &Permutation) -> HopfTerm {
    let n = sigma.size();
    let mut slices = Vec::new();
    for i in sigma.adjacent_transpositions() {
        let mut layer = Vec::with_capacity(n - 1);
        layer.extend(std::iter::repeat(GenSym::Id1).take(i - 1));
        layer.push(GenSym::Gamma);
        layer.extend(std::iter::repeat(GenSym::Id1).take(n - i - 1));
        slices.push(layer);
    }
    HopfTerm { arity_in: n, arity_out: n, slices }
}

/// The block braiding `γ_{n,m}` as the canonical morphism of the rotation
/// sending the first `n` wires past the last `m`.
pub fn gamma_nm(n: usize, m: usize) -> HopfTerm {
    let mut images = Vec::with_capacity(n + m);
    images.extend((1..=n as u32).map(|i| m as u32 + i));
    images.extend(1..=m as u32);
    upsilon(&Permutation::new(images).expect("block rotation is a bijection"))
}

/// `Δ^n : H -> H^(n+1)`, with `Δ^0 = id`, `Δ^-1 = ε`.
pub fn delta_n(n: i64) -> Result<HopfTerm> {
    match n {
        -1 => Ok(HopfTerm::generator(GenSym::Cou)),
        0 => Ok(HopfTerm::identity(1)),
        n if n > 0 => {
            let prev = delta_n(n - 1)?;
            then(
                &HopfTerm::generator(GenSym::Cop),
                &tensor_t(&prev, &HopfTerm::identity(1)),
            )
        }
        _ => Err(Error::InvalidArgument(format!("delta_n: n = {n} < -1"))),
    }
}

/// `μ^n : H^(n+1) -> H`, with `μ^0 = id`, `μ^-1 = η`.
pub fn mu_n(n: i64) -> Result<HopfTerm> {
    match n {
        -1 => Ok(HopfTerm::generator(GenSym::Uni)),
        0 => Ok(HopfTerm::identity(1)),
        n if n > 0 => {
            let prev = mu_n(n - 1)?;
            then(
                &tensor_t(&prev, &HopfTerm::identity(1)),
                &HopfTerm::generator(GenSym::Mul),
            )
        }
        _ => Err(Error::InvalidArgument(format!("mu_n: n = {n} < -1"))),
    }
}

/// `S_w`: identity on positive letters, the antipode on negative ones.
pub fn s_w(w: &Word) -> Result<HopfTerm> {
    if w.is_empty() {
        return Err(Error::InvalidArgument("s_w requires a word of length >= 1".into()));
    }
    let factors: Vec<HopfTerm> = w
        .iter()
        .map(|l| match l.sign {
            Sign::Plus => HopfTerm::identity(1),
            Sign::Minus => HopfTerm::generator(GenSym::Ant),
        })
        .collect();
    Ok(tensor_all(&factors))
}

/// The shuffle `π_n ∈ Σ_2n` with `π_n(2i-1) = i`, `π_n(2i) = n+i`.
pub fn pi_n(n: usize) -> Permutation {
    let mut images = vec![0u32; 2 * n];
    for i in 1..=n {
        images[2 * i - 2] = i as u32;
        images[2 * i - 1] = (n + i) as u32;
    }
    Permutation::new(images).expect("pi_n is a bijection")
}

/// The order reversal `τ_n(i) = n + 1 - i`.
pub fn tau_n(n: usize) -> Permutation {
    Permutation::new((1..=n as u32).rev().collect()).expect("reversal is a bijection")
}

/// The nondegenerate coform and form on `H^⊗n`:
/// `Λ_n = Υ^{π_n} ∘ Δ^⊗n ∘ L^⊗n` and `λ_n = (l∘μ∘(id⋄S))^⊗n ∘ Υ^{π_n^-1}`.
pub fn duality(n: usize) -> Result<(HopfTerm, HopfTerm)> {
    if n == 0 {
        return Err(Error::InvalidArgument("duality requires n >= 1".into()));
    }
    let coform = then_all(&[
        tensor_pow(&HopfTerm::generator(GenSym::Int), n),
        tensor_pow(&HopfTerm::generator(GenSym::Cop), n),
        upsilon(&pi_n(n)),
    ])?;
    let pairing = then_all(&[
        tensor_t(&HopfTerm::identity(1), &HopfTerm::generator(GenSym::Ant)),
        HopfTerm::generator(GenSym::Mul),
        HopfTerm::generator(GenSym::Coi),
    ])?;
    let form = then(&upsilon(&pi_n(n).inverse()), &tensor_pow(&pairing, n))?;
    Ok((coform, form))
}

/// The antipode derived from the integrals:
/// `((l∘μ) ⋄ id) ∘ (id ⋄ γ) ∘ ((Δ∘L) ⋄ id)`.
pub fn antipode_s0() -> HopfTerm {
    let delta_l = then(&HopfTerm::generator(GenSym::Int), &HopfTerm::generator(GenSym::Cop))
        .expect("0 -> 2");
    let l_mu = then(&HopfTerm::generator(GenSym::Mul), &HopfTerm::generator(GenSym::Coi))
        .expect("2 -> 0");
    then_all(&[
        tensor_t(&delta_l, &HopfTerm::identity(1)),
        tensor_t(&HopfTerm::identity(1), &HopfTerm::generator(GenSym::Gamma)),
        tensor_t(&l_mu, &HopfTerm::identity(1)),
    ])
    .expect("antipode composite is well-typed")
}

impl HopfTerm {
    /// Printing-stability normalizer: greedily shifts generators onto the
    /// previous layer when they are fed only by identity wires there, then
    /// drops all-identity layers. Never used for equality claims.
    pub fn normalize_layout(&self) -> HopfTerm {
        let mut slices = self.slices.clone();
        loop {
            let mut changed = false;
            for i in 1..slices.len() {
                let (prev, cur) = {
                    let (a, b) = slices.split_at_mut(i);
                    (&mut a[i - 1], &mut b[0])
                };
                // output offsets of prev entries
                let mut prev_out = Vec::with_capacity(prev.len() + 1);
                let mut off = 0;
                for g in prev.iter() {
                    prev_out.push(off);
                    off += g.arity().1;
                }
                prev_out.push(off);
                let mut in_off = 0;
                for j in 0..cur.len() {
                    let g = cur[j];
                    let (gi, go) = g.arity();
                    if g != GenSym::Id1 && gi > 0 {
                        // find the prev entries covering wires [in_off, in_off+gi)
                        let span: Vec<usize> = (0..prev.len())
                            .filter(|&p| {
                                let s = prev_out[p];
                                let e = prev_out[p + 1];
                                e > in_off && s < in_off + gi
                            })
                            .collect();
                        let all_ids = !span.is_empty()
                            && span.iter().all(|&p| prev[p] == GenSym::Id1)
                            && span.len() == gi;
                        if all_ids {
                            let first = span[0];
                            // replace the ids by g in prev, and g by its output ids in cur
                            prev.splice(first..first + gi, std::iter::once(g));
                            cur.splice(j..j + 1, std::iter::repeat(GenSym::Id1).take(go));
                            changed = true;
                            break;
                        }
                    }
                    in_off += gi;
                }
                if changed {
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        slices.retain(|l| !l.iter().all(|&g| g == GenSym::Id1));
        HopfTerm { arity_in: self.arity_in, arity_out: self.arity_out, slices }
    }
}
