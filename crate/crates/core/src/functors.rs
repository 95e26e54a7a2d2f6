//! The translation functors between Hopf terms and relative presentations.
//!
//! `omega` reads a presentation off a term compositionally: every
//! elementary generator maps to its presentation, layers combine by
//! tensor, slices by composition, and the result is normalized with
//! `eliminate` only, so the output is deterministic.
//!
//! `omega_bar` compiles a presentation into a term: integral wires for the
//! internal generators and a coform for the targets feed comultiplication
//! fan-outs (one per generator, of width equal to its occurrence count),
//! a canonical permutation rearranges the copies into relator order, and
//! each relator is folded by sign corrections, multiplication and the
//! cointegral. Generators that occur in no relator receive the counit.

use crate::error::{Error, Result};
use crate::pres::{compose_p, elementary, eliminate, identity_p, tensor_p, RelPresentation};
use crate::term::{
    delta_n, duality, mu_n, s_w, tensor_pow, tensor_t, then_all, upsilon, GenSym, HopfTerm,
};
use crate::words::{Generator, Permutation, Word};
use serde::{Deserialize, Serialize};

/// Deterministic rule selecting `σ_P` among the valid permutations; they
/// differ by permutations within each generator block, which evaluation
/// cannot see.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaStrategy {
    /// Slot j of a generator block goes to the j-th occurrence in reading order.
    FirstOccurrence,
    /// Slot j goes to the j-th occurrence counted from the right.
    LastOccurrence,
    /// Occurrences shuffled by a seeded deterministic generator.
    Seeded(u64),
}

impl Default for SigmaStrategy {
    fn default() -> Self {
        SigmaStrategy::FirstOccurrence
    }
}

/// The choices entering the definition of `omega_bar`; the result is
/// independent of all of them up to exact evaluation.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OmegaBarChoices {
    /// Total order on internal generators (a permutation of 1..=k, listing
    /// them in the order they take inside the generator tuple).
    #[serde(default)]
    pub internal_order: Option<Vec<u32>>,
    /// Total order on relators (a permutation of 0..s).
    #[serde(default)]
    pub relator_order: Option<Vec<usize>>,
    #[serde(default)]
    pub sigma_strategy: SigmaStrategy,
}

fn xorshift(state: &mut u64) -> u64 {
    let mut x = *state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    *state = x;
    x
}

fn seeded_shuffle<T>(items: &mut [T], state: &mut u64) {
    for i in (1..items.len()).rev() {
        let j = (xorshift(state) % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

struct OrderedData {
    /// Generators in tuple order: sources, internals (chosen order), targets.
    gens: Vec<Generator>,
    /// Relators in chosen order.
    relators: Vec<Word>,
}

fn ordered_data(p: &RelPresentation, choices: &OmegaBarChoices) -> Result<OrderedData> {
    let k = p.internals as usize;
    let internal_order: Vec<u32> = match &choices.internal_order {
        None => (1..=p.internals).collect(),
        Some(ord) => {
            let mut seen = vec![false; k];
            if ord.len() != k
                || ord.iter().any(|&i| {
                    if i == 0 || i as usize > k || seen[i as usize - 1] {
                        true
                    } else {
                        seen[i as usize - 1] = true;
                        false
                    }
                })
            {
                return Err(Error::InvalidArgument(
                    "internal_order must be a permutation of 1..=k".into(),
                ));
            }
            ord.clone()
        }
    };
    let s = p.relators.len();
    let relator_order: Vec<usize> = match &choices.relator_order {
        None => (0..s).collect(),
        Some(ord) => {
            let mut seen = vec![false; s];
            if ord.len() != s
                || ord.iter().any(|&i| {
                    if i >= s || seen[i] {
                        true
                    } else {
                        seen[i] = true;
                        false
                    }
                })
            {
                return Err(Error::InvalidArgument(
                    "relator_order must be a permutation of 0..s".into(),
                ));
            }
            ord.clone()
        }
    };
    let mut gens = Vec::with_capacity(p.arity_in() + k + p.arity_out());
    gens.extend((1..=p.arity_in() as u32).map(Generator::Source));
    gens.extend(internal_order.into_iter().map(Generator::Internal));
    gens.extend((1..=p.arity_out() as u32).map(Generator::Target));
    let relators = relator_order.into_iter().map(|i| p.relators[i].clone()).collect();
    Ok(OrderedData { gens, relators })
}

/// The permutation sending the generator-grouped word `∏ g^e` to the
/// sign-stripped relator concatenation `w_P^+`.
pub fn sigma_p(p: &RelPresentation, choices: &OmegaBarChoices) -> Result<Permutation> {
    let data = ordered_data(p, choices)?;
    sigma_from_data(&data, choices.sigma_strategy)
}

fn sigma_from_data(data: &OrderedData, strategy: SigmaStrategy) -> Result<Permutation> {
    let total: usize = data.relators.iter().map(|w| w.len()).sum();
    // occurrence positions (1-based, reading order) of each generator in w_P^+
    let mut images = Vec::with_capacity(total);
    let mut rng_state = match strategy {
        SigmaStrategy::Seeded(seed) => seed | 1,
        _ => 0,
    };
    for &g in &data.gens {
        let mut occs: Vec<u32> = Vec::new();
        let mut pos = 0u32;
        for w in &data.relators {
            for l in w.iter() {
                pos += 1;
                if l.gen == g {
                    occs.push(pos);
                }
            }
        }
        match strategy {
            SigmaStrategy::FirstOccurrence => {}
            SigmaStrategy::LastOccurrence => occs.reverse(),
            SigmaStrategy::Seeded(_) => seeded_shuffle(&mut occs, &mut rng_state),
        }
        images.extend(occs);
    }
    Permutation::new(images)
}

/// The compositional image of a term in the presentation category,
/// normalized with `eliminate`.
pub fn omega(t: &HopfTerm) -> RelPresentation {
    let mut acc = identity_p(t.arity_in());
    for layer in t.slices() {
        let layer_pres = layer
            .iter()
            .fold(identity_p(0), |acc, &g| tensor_p(&acc, &elementary(g)));
        acc = compose_p(&acc, &layer_pres).expect("term layers are arity-consistent");
    }
    eliminate(&acc)
}

/// Compile a presentation `n -> m` into a term
/// `((⊗_i l∘μ^{l_i-1}∘S_{w_i}) ∘ Υ^{σ_P} ∘ (⊗_j Δ^{e_j-1})) ⊗ id_m)
///  ∘ (id_n ⊗ L^⊗k ⊗ Λ_m)`,
/// with `Δ^{-1} = ε` for generators that occur nowhere and `μ^{-1} = η`
/// for empty relators.
pub fn omega_bar(p: &RelPresentation, choices: &OmegaBarChoices) -> Result<HopfTerm> {
    let n = p.arity_in();
    let m = p.arity_out();
    let k = p.internals as usize;
    let data = ordered_data(p, choices)?;
    let sigma = sigma_from_data(&data, choices.sigma_strategy)?;

    let coform = if m == 0 { HopfTerm::identity(0) } else { duality(m)?.0 };
    let stage_inputs = tensor_t(
        &tensor_t(
            &HopfTerm::identity(n),
            &tensor_pow(&HopfTerm::generator(GenSym::Int), k),
        ),
        &coform,
    );

    let mut fanouts = HopfTerm::identity(0);
    for &g in &data.gens {
        let count: usize = data.relators.iter().map(|w| w.count(g)).sum();
        fanouts = tensor_t(&fanouts, &delta_n(count as i64 - 1)?);
    }
    let stage_fanout = tensor_t(&fanouts, &HopfTerm::identity(m));

    let stage_shuffle = tensor_t(&upsilon(&sigma), &HopfTerm::identity(m));

    let mut blocks = HopfTerm::identity(0);
    for w in &data.relators {
        let block = if w.is_empty() {
            then_all(&[mu_n(-1)?, HopfTerm::generator(GenSym::Coi)])?
        } else {
            then_all(&[s_w(w)?, mu_n(w.len() as i64 - 1)?, HopfTerm::generator(GenSym::Coi)])?
        };
        blocks = tensor_t(&blocks, &block);
    }
    let stage_relators = tensor_t(&blocks, &HopfTerm::identity(m));

    then_all(&[stage_inputs, stage_fanout, stage_shuffle, stage_relators])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_key;
    use crate::model::{builtin_group, builtin_groups, eval_term, hom_oracle};
    use crate::pres::braiding_p;
    use crate::term::then;
    use crate::words::{Letter, Sign};
    use num_bigint::BigUint;

    fn pres(n: usize, m: usize, k: u32, relators: Vec<Vec<Letter>>) -> RelPresentation {
        RelPresentation::new(
            (1..=n).map(|i| format!("a{i}")).collect(),
            (1..=m).map(|i| format!("b{i}")).collect(),
            k,
            relators.into_iter().map(Word).collect(),
        )
        .unwrap()
    }

    fn s(i: u32) -> Letter {
        Letter::new(Generator::Source(i), Sign::Plus)
    }
    fn t_inv(i: u32) -> Letter {
        Letter::new(Generator::Target(i), Sign::Minus)
    }
    fn t(i: u32) -> Letter {
        Letter::new(Generator::Target(i), Sign::Plus)
    }
    fn c(i: u32) -> Letter {
        Letter::new(Generator::Internal(i), Sign::Plus)
    }

    #[test]
    fn omega_of_elementary_generators_is_their_presentation() {
        for g in GenSym::ALL {
            let got = omega(&HopfTerm::generator(g));
            assert_eq!(
                canonical_key(&got),
                canonical_key(&elementary(g)),
                "omega of {g:?}"
            );
        }
    }

    #[test]
    fn omega_of_delta_n() {
        for n in 1..=3i64 {
            let got = omega(&delta_n(n).unwrap());
            let expected = pres(
                1,
                n as usize + 1,
                0,
                (1..=n as u32 + 1).map(|i| vec![s(1), t_inv(i)]).collect(),
            );
            assert_eq!(canonical_key(&got), canonical_key(&expected));
        }
    }

    #[test]
    fn omega_of_mu_n() {
        for n in 1..=3i64 {
            let got = omega(&mu_n(n).unwrap());
            let mut word: Vec<Letter> = (1..=n as u32 + 1).map(s).collect();
            word.push(t_inv(1));
            let expected = pres(n as usize + 1, 1, 0, vec![word]);
            assert_eq!(canonical_key(&got), canonical_key(&expected));
        }
    }

    #[test]
    fn omega_of_unit_then_cointegral_is_the_sphere() {
        let term = then(
            &HopfTerm::generator(GenSym::Uni),
            &HopfTerm::generator(GenSym::Coi),
        )
        .unwrap();
        let got = omega(&term);
        let expected = pres(0, 0, 0, vec![vec![]]);
        assert_eq!(canonical_key(&got), canonical_key(&expected));
    }

    #[test]
    fn omega_of_upsilon_matches_permutation_presentation() {
        for sigma in Permutation::all(4) {
            let got = omega(&upsilon(&sigma));
            let expected = pres(
                4,
                4,
                0,
                (1..=4usize)
                    .map(|i| vec![s(i as u32), t_inv(sigma.image(i) as u32)])
                    .collect(),
            );
            assert_eq!(canonical_key(&got), canonical_key(&expected), "sigma {sigma:?}");
        }
    }

    #[test]
    fn omega_respects_composition_at_key_level() {
        let f = then(&HopfTerm::generator(GenSym::Cop), &tensor_t(&HopfTerm::generator(GenSym::Ant), &HopfTerm::identity(1))).unwrap();
        let g = HopfTerm::generator(GenSym::Mul);
        let composed = then(&f, &g).unwrap();
        let via_pres = eliminate(&compose_p(&omega(&f), &omega(&g)).unwrap());
        assert_eq!(canonical_key(&omega(&composed)), canonical_key(&via_pres));
    }

    #[test]
    fn sigma_examples() {
        // μ̂: relator a b c^-1 over (a, b, c) is already in order
        let mul = elementary(GenSym::Mul);
        let sigma = sigma_p(&mul, &OmegaBarChoices::default()).unwrap();
        assert!(sigma.is_identity());

        // <(a),(b) | b a^-1>: grouped word a·b, relator word b·a
        let p = pres(1, 1, 0, vec![vec![t(1), Letter::new(Generator::Source(1), Sign::Minus)]]);
        let sigma = sigma_p(&p, &OmegaBarChoices::default()).unwrap();
        assert_eq!(sigma, Permutation::new(vec![2, 1]).unwrap());
    }

    #[test]
    fn sigma_strategies_differ_but_evaluate_equal() {
        // relator a^2: two valid permutations differing by the block swap
        let p = pres(1, 0, 0, vec![vec![s(1), s(1)]]);
        let first = OmegaBarChoices::default();
        let last =
            OmegaBarChoices { sigma_strategy: SigmaStrategy::LastOccurrence, ..Default::default() };
        let s_first = sigma_p(&p, &first).unwrap();
        let s_last = sigma_p(&p, &last).unwrap();
        assert_ne!(s_first, s_last);
        for g in builtin_groups() {
            let a = eval_term(&omega_bar(&p, &first).unwrap(), &g).unwrap();
            let b = eval_term(&omega_bar(&p, &last).unwrap(), &g).unwrap();
            assert_eq!(a, b, "sigma choice leaked into evaluation on {}", g.name);
        }
    }

    #[test]
    fn omega_bar_of_identity_evaluates_to_identity() {
        for n in 0..=2 {
            let term = omega_bar(&identity_p(n), &OmegaBarChoices::default()).unwrap();
            for g in builtin_groups() {
                assert!(
                    eval_term(&term, &g).unwrap().is_identity(),
                    "identity_p({n}) on {}",
                    g.name
                );
            }
        }
    }

    #[test]
    fn omega_bar_counts_involutions() {
        let p = pres(0, 0, 1, vec![vec![c(1), c(1)]]);
        let term = omega_bar(&p, &OmegaBarChoices::default()).unwrap();
        let z2 = builtin_group("z2").unwrap();
        let m = eval_term(&term, &z2).unwrap();
        assert_eq!(m.get(0, 0), BigUint::from(2u32));
        let s3 = builtin_group("s3").unwrap();
        let m = eval_term(&term, &s3).unwrap();
        assert_eq!(m.get(0, 0), BigUint::from(4u32));
    }

    #[test]
    fn omega_bar_factors_through_hom_oracle_samples() {
        let samples = vec![
            identity_p(1),
            elementary(GenSym::Mul),
            elementary(GenSym::Cop),
            elementary(GenSym::Ant),
            braiding_p(1, 1),
            pres(0, 0, 0, vec![vec![]]),
            pres(1, 1, 1, vec![vec![s(1), c(1), t_inv(1)], vec![c(1), c(1)]]),
        ];
        for p in samples {
            let term = omega_bar(&p, &OmegaBarChoices::default()).unwrap();
            for g in builtin_groups() {
                let lhs = eval_term(&term, &g).unwrap();
                let rhs = hom_oracle(&p, &g).unwrap();
                assert_eq!(lhs, rhs, "oracle mismatch on {}", g.name);
            }
        }
    }

    #[test]
    fn round_trip_generators_evaluate_unchanged() {
        let z3 = builtin_group("z3").unwrap();
        for g in GenSym::ALL {
            let gen_term = HopfTerm::generator(g);
            let round = omega_bar(&omega(&gen_term), &OmegaBarChoices::default()).unwrap();
            assert_eq!(
                eval_term(&round, &z3).unwrap(),
                eval_term(&gen_term, &z3).unwrap(),
                "round trip of {g:?}"
            );
        }
    }

    #[test]
    fn omega_is_functorial_on_a_random_term_corpus() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(0xfafafa);
        // random slice-built term with the given input arity
        let mut random_term = |arity_in: usize, rng: &mut ChaCha8Rng| -> HopfTerm {
            let mut t = HopfTerm::identity(arity_in);
            for _ in 0..rng.gen_range(0..=6usize) {
                let width = t.arity_out();
                let mut layer: Vec<GenSym> = Vec::new();
                let mut remaining = width;
                while remaining > 0 {
                    let choices: Vec<GenSym> = GenSym::ALL
                        .into_iter()
                        .filter(|g| g.arity().0 <= remaining && g.arity().0 > 0)
                        .collect();
                    let g = choices[rng.gen_range(0..choices.len())];
                    layer.push(g);
                    remaining -= g.arity().0;
                }
                if width == 0 && rng.gen_bool(0.5) {
                    layer.push(if rng.gen_bool(0.5) { GenSym::Uni } else { GenSym::Int });
                }
                let next = layer
                    .iter()
                    .fold(HopfTerm::identity(0), |acc, &g| tensor_t(&acc, &HopfTerm::generator(g)));
                t = then(&t, &next).expect("layer arity matches");
            }
            t
        };
        for _ in 0..20 {
            let f = random_term(rng.gen_range(0..=4), &mut rng);
            let g = random_term(f.arity_out(), &mut rng);
            let composed = then(&f, &g).unwrap();
            let lhs = canonical_key(&omega(&composed));
            let rhs = canonical_key(&eliminate(&compose_p(&omega(&f), &omega(&g)).unwrap()));
            assert_eq!(lhs, rhs, "omega broke functoriality");
        }
    }

    #[test]
    fn choice_orders_are_validated() {
        let p = pres(0, 0, 2, vec![vec![c(1), c(2)]]);
        let bad = OmegaBarChoices { internal_order: Some(vec![1, 1]), ..Default::default() };
        assert!(omega_bar(&p, &bad).is_err());
        let bad = OmegaBarChoices { relator_order: Some(vec![1]), ..Default::default() };
        assert!(omega_bar(&p, &bad).is_err());
        let good = OmegaBarChoices {
            internal_order: Some(vec![2, 1]),
            relator_order: Some(vec![0]),
            sigma_strategy: SigmaStrategy::Seeded(7),
        };
        assert!(omega_bar(&p, &good).is_ok());
    }
}
