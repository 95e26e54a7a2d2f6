//! Exact evaluation of Hopf terms in the group algebra of a finite group,
//! and an independent brute-force homomorphism oracle for presentations.
//!
//! The model sends the Hopf object to the group algebra on basis `{g}`:
//! `Δ(g) = g⊗g`, `ε(g) = 1`, `μ(g⊗h) = gh`, `η = e`, `S(g) = g^-1`,
//! `L = Σ_g g`, `l(g) = [g = e]`, braiding = basis swap. Composition is
//! matrix product and tensor is Kronecker product over exact unbounded
//! integers. A closed presentation evaluates to its homomorphism count.

use crate::error::{Error, Result};
use crate::pres::RelPresentation;
use crate::term::{GenSym, HopfTerm};
use crate::words::{Generator, Sign};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    pub order: u32,
    /// Row-major multiplication table; index 0 is the identity.
    table: Vec<u32>,
    inverse: Vec<u32>,
    pub element_names: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic(u32),
    Symmetric(u32),
    Explicit {
        name: String,
        table: Vec<Vec<u32>>,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
}

impl FiniteGroup {
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[(a * self.order + b) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn is_abelian(&self) -> bool {
        self.non_abelian_witness().is_none()
    }

    /// A pair `(a, b)` with `ab != ba`, if any.
    pub fn non_abelian_witness(&self) -> Option<(u32, u32)> {
        for a in 0..self.order {
            for b in 0..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn validate(name: String, n: u32, table: Vec<u32>, names: Vec<String>) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidArgument("group order must be >= 1".into()));
        }
        if table.len() != (n * n) as usize {
            return Err(Error::InvalidArgument(format!(
                "multiplication table must be {n}x{n}"
            )));
        }
        for (idx, &v) in table.iter().enumerate() {
            if v >= n {
                return Err(Error::NotAGroup {
                    law: "closure".into(),
                    indices: vec![idx / n as usize, idx % n as usize],
                });
            }
        }
        let at = |a: u32, b: u32| table[(a * n + b) as usize];
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::NotAGroup { law: "identity (index 0)".into(), indices: vec![a as usize] });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::NotAGroup {
                            law: "associativity".into(),
                            indices: vec![a as usize, b as usize, c as usize],
                        });
                    }
                }
            }
        }
        let mut inverse = vec![u32::MAX; n as usize];
        for a in 0..n {
            for b in 0..n {
                if at(a, b) == 0 && at(b, a) == 0 {
                    inverse[a as usize] = b;
                    break;
                }
            }
            if inverse[a as usize] == u32::MAX {
                return Err(Error::NotAGroup { law: "inverses".into(), indices: vec![a as usize] });
            }
        }
        Ok(FiniteGroup { name, order: n, table, inverse, element_names: names })
    }
}

fn cyclic_group(n: u32) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group needs n >= 1".into()));
    }
    let mut table = Vec::with_capacity((n * n) as usize);
    for a in 0..n {
        for b in 0..n {
            table.push((a + b) % n);
        }
    }
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            i => format!("g{i}"),
        })
        .collect();
    FiniteGroup::validate(format!("z{n}"), n, table, names)
}

fn perm_cycle_name(perm: &[usize]) -> String {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || perm[start] == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start;
        loop {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = perm[x];
            if x == start {
                break;
            }
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

fn symmetric_group(n: u32) -> Result<FiniteGroup> {
    if n == 0 || n > 6 {
        return Err(Error::InvalidArgument("symmetric group supported for 1 <= n <= 6".into()));
    }
    // permutations of 0..n in lexicographic order; the identity comes first
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = (0..n as usize).collect();
    loop {
        perms.push(cur.clone());
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    let order = perms.len() as u32;
    let index: BTreeMap<Vec<usize>, u32> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
    let mut table = Vec::with_capacity((order * order) as usize);
    for p in &perms {
        for q in &perms {
            // (p * q)(x) = p(q(x))
            let composed: Vec<usize> = (0..n as usize).map(|x| p[q[x]]).collect();
            table.push(index[&composed]);
        }
    }
    let names = perms.iter().map(|p| perm_cycle_name(p)).collect();
    FiniteGroup::validate(format!("s{n}"), order, table, names)
}

pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic(n) => cyclic_group(*n),
        GroupSpec::Symmetric(n) => symmetric_group(*n),
        GroupSpec::Explicit { name, table, names } => {
            let n = table.len() as u32;
            let flat: Vec<u32> = table.iter().flat_map(|row| row.iter().copied()).collect();
            if table.iter().any(|row| row.len() != n as usize) {
                return Err(Error::InvalidArgument("multiplication table must be square".into()));
            }
            let names = match names {
                Some(ns) if ns.len() == n as usize => ns.clone(),
                Some(_) => {
                    return Err(Error::InvalidArgument("element name list has wrong length".into()))
                }
                None => (0..n).map(|i| format!("x{i}")).collect(),
            };
            FiniteGroup::validate(name.clone(), n, flat, names)
        }
    }
}

/// The four groups every verification suite runs over.
pub fn builtin_groups() -> Vec<FiniteGroup> {
    vec![
        make_group(&GroupSpec::Cyclic(2)).unwrap(),
        make_group(&GroupSpec::Cyclic(3)).unwrap(),
        make_group(&GroupSpec::Cyclic(6)).unwrap(),
        make_group(&GroupSpec::Symmetric(3)).unwrap(),
    ]
}

pub fn builtin_group(name: &str) -> Option<FiniteGroup> {
    match name {
        "z2" => Some(make_group(&GroupSpec::Cyclic(2)).unwrap()),
        "z3" => Some(make_group(&GroupSpec::Cyclic(3)).unwrap()),
        "z6" => Some(make_group(&GroupSpec::Cyclic(6)).unwrap()),
        "s3" => Some(make_group(&GroupSpec::Symmetric(3)).unwrap()),
        _ => None,
    }
}

const DENSE_LIMIT: u64 = 256;

#[derive(Debug, Clone)]
enum MapData {
    /// Row-major, used when both dimensions are below `DENSE_LIMIT`.
    Dense(Vec<BigUint>),
    Sparse(BTreeMap<(u64, u64), BigUint>),
}

/// An exact integer matrix; basis vectors are tuples of group elements in
/// lexicographic order with the leftmost tensor factor most significant.
#[derive(Debug, Clone)]
pub struct LinearMap {
    rows: u64,
    cols: u64,
    data: MapData,
}

impl LinearMap {
    pub fn zero(rows: u64, cols: u64) -> LinearMap {
        let data = if rows <= DENSE_LIMIT && cols <= DENSE_LIMIT {
            MapData::Dense(vec![BigUint::default(); (rows * cols) as usize])
        } else {
            MapData::Sparse(BTreeMap::new())
        };
        LinearMap { rows, cols, data }
    }

    pub fn identity(n: u64) -> LinearMap {
        let mut m = LinearMap::zero(n, n);
        for i in 0..n {
            m.add(i, i, BigUint::from(1u32));
        }
        m
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }

    pub fn cols(&self) -> u64 {
        self.cols
    }

    pub fn add(&mut self, row: u64, col: u64, v: BigUint) {
        if v == BigUint::default() {
            return;
        }
        match &mut self.data {
            MapData::Dense(d) => d[(row * self.cols + col) as usize] += v,
            MapData::Sparse(map) => {
                *map.entry((row, col)).or_default() += v;
            }
        }
    }

    pub fn get(&self, row: u64, col: u64) -> BigUint {
        match &self.data {
            MapData::Dense(d) => d[(row * self.cols + col) as usize].clone(),
            MapData::Sparse(map) => map.get(&(row, col)).cloned().unwrap_or_default(),
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> Vec<(u64, u64, BigUint)> {
        match &self.data {
            MapData::Dense(d) => d
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != BigUint::default())
                .map(|(i, v)| (i as u64 / self.cols, i as u64 % self.cols, v.clone()))
                .collect(),
            MapData::Sparse(map) => {
                map.iter().map(|(&(r, c), v)| (r, c, v.clone())).collect()
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == LinearMap::identity(self.rows)
    }

    /// First entry where the two maps differ.
    pub fn first_difference(&self, other: &LinearMap) -> Option<(u64, u64, BigUint, BigUint)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0, self.get(0, 0), other.get(0, 0)));
        }
        let mut coords: Vec<(u64, u64)> = self.entries().iter().map(|&(r, c, _)| (r, c)).collect();
        coords.extend(other.entries().iter().map(|&(r, c, _)| (r, c)));
        coords.sort_unstable();
        coords.dedup();
        for (r, c) in coords {
            let (a, b) = (self.get(r, c), other.get(r, c));
            if a != b {
                return Some((r, c, a, b));
            }
        }
        None
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn matmul(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.cols != other.rows {
            return Err(Error::ArityMismatch {
                expected: self.cols as usize,
                got: other.rows as usize,
                context: "matrix product".into(),
            });
        }
        // index self by column for sparse traversal
        let mut by_col: BTreeMap<u64, Vec<(u64, BigUint)>> = BTreeMap::new();
        for (r, c, v) in self.entries() {
            by_col.entry(c).or_default().push((r, v));
        }
        let mut out = LinearMap::zero(self.rows, other.cols);
        for (j, k, bv) in other.entries() {
            if let Some(col) = by_col.get(&j) {
                for (i, av) in col {
                    out.add(*i, k, av * &bv);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product, leftmost factor most significant.
    pub fn kron(&self, other: &LinearMap) -> LinearMap {
        let mut out = LinearMap::zero(self.rows * other.rows, self.cols * other.cols);
        for (r1, c1, v1) in self.entries() {
            for (r2, c2, v2) in other.entries() {
                out.add(r1 * other.rows + r2, c1 * other.cols + c2, &v1 * &v2);
            }
        }
        out
    }
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries() == other.entries()
    }
}

impl Eq for LinearMap {}

/// JSON form: dims plus a triplet list with decimal-string values.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: u64,
    cols: u64,
    entries: Vec<(u64, u64, String)>,
}

impl Serialize for LinearMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries().into_iter().map(|(r, c, v)| (r, c, v.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        let mut out = LinearMap::zero(raw.rows, raw.cols);
        for (r, c, v) in raw.entries {
            let v: BigUint = v.parse().map_err(serde::de::Error::custom)?;
            out.add(r, c, v);
        }
        Ok(out)
    }
}

fn checked_dim(order: u32, width: usize) -> Result<u64> {
    (order as u64)
        .checked_pow(width as u32)
        .ok_or(Error::DimensionOverflow(order as u64, width as u32))
}

fn encode_tuple(tuple: &[u32], order: u32) -> u64 {
    tuple.iter().fold(0u64, |acc, &x| acc * order as u64 + x as u64)
}

fn decode_tuple(mut idx: u64, order: u32, width: usize) -> Vec<u32> {
    let mut out = vec![0u32; width];
    for slot in out.iter_mut().rev() {
        *slot = (idx % order as u64) as u32;
        idx /= order as u64;
    }
    out
}

/// Outputs of one elementary generator on a basis tuple chunk.
fn gen_apply(g: GenSym, input: &[u32], group: &FiniteGroup) -> Vec<Vec<u32>> {
    match g {
        GenSym::Id1 => vec![vec![input[0]]],
        GenSym::Gamma => vec![vec![input[1], input[0]]],
        GenSym::Cop => vec![vec![input[0], input[0]]],
        GenSym::Cou => vec![vec![]],
        GenSym::Mul => vec![vec![group.mul(input[0], input[1])]],
        GenSym::Uni => vec![vec![group.identity()]],
        GenSym::Ant => vec![vec![group.inv(input[0])]],
        GenSym::Int => (0..group.order).map(|g| vec![g]).collect(),
        GenSym::Coi => {
            if input[0] == group.identity() {
                vec![vec![]]
            } else {
                vec![]
            }
        }
    }
}

/// Monoidal-functor evaluation of a term by propagating basis columns
/// through the layers.
pub fn eval_term(t: &HopfTerm, group: &FiniteGroup) -> Result<LinearMap> {
    let cols = checked_dim(group.order, t.arity_in())?;
    let rows = checked_dim(group.order, t.arity_out())?;
    // widths can exceed the final arities mid-term; check each layer
    let mut width = t.arity_in();
    for layer in t.slices() {
        checked_dim(group.order, width)?;
        width = layer.iter().map(|g| g.arity().1).sum::<usize>();
    }
    checked_dim(group.order, width)?;

    let mut out = LinearMap::zero(rows, cols);
    for col_index in 0..cols {
        let start = decode_tuple(col_index, group.order, t.arity_in());
        let mut states: BTreeMap<Vec<u32>, BigUint> = BTreeMap::new();
        states.insert(start, BigUint::from(1u32));
        for layer in t.slices() {
            let mut next: BTreeMap<Vec<u32>, BigUint> = BTreeMap::new();
            for (tuple, coeff) in &states {
                // branch per generator, cartesian product across the layer
                let mut partial: Vec<Vec<u32>> = vec![Vec::new()];
                let mut off = 0usize;
                for &g in layer {
                    let (gi, _) = g.arity();
                    let outs = gen_apply(g, &tuple[off..off + gi], group);
                    off += gi;
                    if outs.is_empty() {
                        partial.clear();
                        break;
                    }
                    let mut grown = Vec::with_capacity(partial.len() * outs.len());
                    for p in &partial {
                        for o in &outs {
                            let mut q = p.clone();
                            q.extend_from_slice(o);
                            grown.push(q);
                        }
                    }
                    partial = grown;
                }
                for result in partial {
                    *next.entry(result).or_default() += coeff;
                }
            }
            states = next;
        }
        for (tuple, coeff) in states {
            out.add(encode_tuple(&tuple, group.order), col_index, coeff);
        }
    }
    Ok(out)
}

/// Brute-force homomorphism oracle: the entry at (output tuple, input
/// tuple) counts assignments of group elements to the internal generators
/// under which every relator evaluates to the identity. Computed by direct
/// enumeration, independently of the functor evaluation path.
pub fn hom_oracle(p: &RelPresentation, group: &FiniteGroup) -> Result<LinearMap> {
    let n = p.arity_in();
    let m = p.arity_out();
    let k = p.internals as usize;
    let cols = checked_dim(group.order, n)?;
    let rows = checked_dim(group.order, m)?;
    let internal_space = checked_dim(group.order, k)?;

    let mut out = LinearMap::zero(rows, cols);
    for a_idx in 0..cols {
        let a = decode_tuple(a_idx, group.order, n);
        for b_idx in 0..rows {
            let b = decode_tuple(b_idx, group.order, m);
            let mut count = 0u64;
            for c_idx in 0..internal_space {
                let c = decode_tuple(c_idx, group.order, k);
                let assign = |g: Generator| -> u32 {
                    match g {
                        Generator::Source(i) => a[i as usize - 1],
                        Generator::Target(i) => b[i as usize - 1],
                        Generator::Internal(i) => c[i as usize - 1],
                    }
                };
                let ok = p.relators.iter().all(|rel| {
                    let mut acc = group.identity();
                    for l in rel.iter() {
                        let v = match l.sign {
                            Sign::Plus => assign(l.gen),
                            Sign::Minus => group.inv(assign(l.gen)),
                        };
                        acc = group.mul(acc, v);
                    }
                    acc == group.identity()
                });
                if ok {
                    count += 1;
                }
            }
            out.add(b_idx, a_idx, BigUint::from(count));
        }
    }
    Ok(out)
}

/// `|Hom(<internal | relators> -> G)|` for a closed presentation.
pub fn hom_count(p: &RelPresentation, group: &FiniteGroup) -> Result<BigUint> {
    if p.arity_in() != 0 || p.arity_out() != 0 {
        return Err(Error::NotClosed { n: p.arity_in(), m: p.arity_out() });
    }
    Ok(hom_oracle(p, group)?.get(0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pres::{elementary, identity_p, RelPresentation};
    use crate::term::{antipode_s0, tensor_t, then, upsilon, HopfTerm};
    use crate::words::{Letter, Permutation, Word};

    fn gen(g: GenSym) -> HopfTerm {
        HopfTerm::generator(g)
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn cyclic_2_table() {
        let g = make_group(&GroupSpec::Cyclic(2)).unwrap();
        assert_eq!(g.order, 2);
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn symmetric_3_is_nonabelian_of_order_6() {
        let g = make_group(&GroupSpec::Symmetric(3)).unwrap();
        assert_eq!(g.order, 6);
        let (a, b) = g.non_abelian_witness().expect("S3 is non-abelian");
        assert_ne!(g.mul(a, b), g.mul(b, a));
    }

    #[test]
    fn invalid_tables_rejected_with_law() {
        // non-associative: tweak z3 table
        let spec = GroupSpec::Explicit {
            name: "bad".into(),
            table: vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            names: None,
        };
        assert!(make_group(&spec).is_ok());
        let spec = GroupSpec::Explicit {
            name: "bad".into(),
            table: vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]],
            names: None,
        };
        match make_group(&spec) {
            Err(Error::NotAGroup { law, .. }) => assert!(law.contains("assoc") || law.contains("inverses")),
            other => panic!("expected NotAGroup, got {other:?}"),
        }
        // identity must be index 0
        let spec = GroupSpec::Explicit {
            name: "bad".into(),
            table: vec![vec![1, 0], vec![0, 1]],
            names: None,
        };
        assert!(matches!(make_group(&spec), Err(Error::NotAGroup { .. })));
    }

    #[test]
    fn integral_cointegral_normalization() {
        for g in builtin_groups() {
            let t = then(&gen(GenSym::Int), &gen(GenSym::Coi)).unwrap();
            let m = eval_term(&t, &g).unwrap();
            assert_eq!(m.rows(), 1);
            assert_eq!(m.cols(), 1);
            assert_eq!(m.get(0, 0), big(1));
        }
    }

    #[test]
    fn squaring_matrix_on_z2() {
        let z2 = builtin_group("z2").unwrap();
        let t = then(&gen(GenSym::Cop), &gen(GenSym::Mul)).unwrap();
        let m = eval_term(&t, &z2).unwrap();
        // e -> e, g -> g^2 = e
        assert_eq!(m.get(0, 0), big(1));
        assert_eq!(m.get(0, 1), big(1));
        assert_eq!(m.get(1, 0), big(0));
        assert_eq!(m.get(1, 1), big(0));
    }

    #[test]
    fn integral_is_all_ones_column() {
        let z3 = builtin_group("z3").unwrap();
        let m = eval_term(&gen(GenSym::Int), &z3).unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.cols(), 1);
        for r in 0..3 {
            assert_eq!(m.get(r, 0), big(1));
        }
    }

    #[test]
    fn counit_after_cop_is_identity() {
        for g in builtin_groups() {
            let t = then(&gen(GenSym::Cop), &tensor_t(&gen(GenSym::Cou), &HopfTerm::identity(1)))
                .unwrap();
            assert!(eval_term(&t, &g).unwrap().is_identity());
        }
    }

    #[test]
    fn upsilon_matches_tuple_action() {
        let z3 = builtin_group("z3").unwrap();
        for sigma in Permutation::all(3) {
            let m = eval_term(&upsilon(&sigma), &z3).unwrap();
            // expected: basis tuple t maps to tuple with t[i] at position σ(i)
            let mut expected = LinearMap::zero(27, 27);
            for idx in 0..27u64 {
                let t = decode_tuple(idx, 3, 3);
                let mut out = vec![0u32; 3];
                for i in 0..3 {
                    out[sigma.image(i + 1) - 1] = t[i];
                }
                expected.add(encode_tuple(&out, 3), idx, big(1));
            }
            assert_eq!(m, expected, "upsilon disagrees for {sigma:?}");
        }
    }

    #[test]
    fn eval_is_monoidal_on_samples() {
        let s3 = builtin_group("s3").unwrap();
        let f = then(&gen(GenSym::Cop), &tensor_t(&gen(GenSym::Ant), &HopfTerm::identity(1)))
            .unwrap();
        let g = gen(GenSym::Mul);
        // composition -> matrix product (g after f)
        let fg = then(&f, &g).unwrap();
        let lhs = eval_term(&fg, &s3).unwrap();
        let rhs = eval_term(&g, &s3).unwrap().matmul(&eval_term(&f, &s3).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // tensor -> Kronecker product
        let ft = tensor_t(&f, &g);
        let lhs = eval_term(&ft, &s3).unwrap();
        let rhs = eval_term(&f, &s3).unwrap().kron(&eval_term(&g, &s3).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_s0_evaluates_to_inversion() {
        let z2 = builtin_group("z2").unwrap();
        assert!(eval_term(&antipode_s0(), &z2).unwrap().is_identity());

        let z3 = builtin_group("z3").unwrap();
        let m = eval_term(&antipode_s0(), &z3).unwrap();
        assert_eq!(m, eval_term(&gen(GenSym::Ant), &z3).unwrap());
        // the permutation swapping g and g^2
        assert_eq!(m.get(0, 0), big(1));
        assert_eq!(m.get(2, 1), big(1));
        assert_eq!(m.get(1, 2), big(1));

        let double = then(&antipode_s0(), &antipode_s0()).unwrap();
        assert!(eval_term(&double, &z3).unwrap().is_identity());
    }

    #[test]
    fn nonabelian_group_distinguishes_antipode_from_identity() {
        let s3 = builtin_group("s3").unwrap();
        let id = eval_term(&HopfTerm::identity(1), &s3).unwrap();
        let ant = eval_term(&gen(GenSym::Ant), &s3).unwrap();
        assert_ne!(id, ant);
        assert!(id.first_difference(&ant).is_some());
        // while on z2 they agree
        let z2 = builtin_group("z2").unwrap();
        assert_eq!(
            eval_term(&HopfTerm::identity(1), &z2).unwrap(),
            eval_term(&gen(GenSym::Ant), &z2).unwrap()
        );
    }

    #[test]
    fn hom_oracle_of_identity_presentation() {
        for g in builtin_groups() {
            let m = hom_oracle(&identity_p(1), &g).unwrap();
            assert!(m.is_identity());
        }
    }

    #[test]
    fn hom_oracle_matches_elementary_eval() {
        // the presentation of μ̂ counts exactly the multiplication table
        let s3 = builtin_group("s3").unwrap();
        let oracle = hom_oracle(&elementary(GenSym::Mul), &s3).unwrap();
        let direct = eval_term(&gen(GenSym::Mul), &s3).unwrap();
        assert_eq!(oracle, direct);
    }

    fn closed(k: u32, relators: Vec<Vec<Letter>>) -> RelPresentation {
        RelPresentation::new(vec![], vec![], k, relators.into_iter().map(Word).collect()).unwrap()
    }

    #[test]
    fn hom_count_fixtures() {
        let c1 = |s| Letter::new(Generator::Internal(1), s);
        let z3 = builtin_group("z3").unwrap();
        // free group on one generator
        assert_eq!(hom_count(&closed(1, vec![]), &z3).unwrap(), big(3));
        // trivial group
        for g in builtin_groups() {
            assert_eq!(hom_count(&closed(1, vec![vec![c1(Sign::Plus)]]), &g).unwrap(), big(1));
            // empty relator is always satisfied
            assert_eq!(hom_count(&closed(0, vec![vec![]]), &g).unwrap(), big(1));
        }
        // involutions in S3: identity and the three transpositions
        let s3 = builtin_group("s3").unwrap();
        let xx = closed(1, vec![vec![c1(Sign::Plus), c1(Sign::Plus)]]);
        assert_eq!(hom_count(&xx, &s3).unwrap(), big(4));
    }

    #[test]
    fn hom_count_x2_y3_on_s3() {
        let x = |s| Letter::new(Generator::Internal(1), s);
        let y = |s| Letter::new(Generator::Internal(2), s);
        let p = closed(
            2,
            vec![vec![x(Sign::Plus), x(Sign::Plus), y(Sign::Minus), y(Sign::Minus), y(Sign::Minus)]],
        );
        let s3 = builtin_group("s3").unwrap();
        assert_eq!(hom_count(&p, &s3).unwrap(), big(12));
    }

    #[test]
    fn hom_count_requires_closed() {
        assert!(hom_count(&identity_p(1), &builtin_group("z2").unwrap()).is_err());
    }

    #[test]
    fn delta_2_is_grouplike_on_z3() {
        let z3 = builtin_group("z3").unwrap();
        let m = eval_term(&crate::term::delta_n(2).unwrap(), &z3).unwrap();
        // basis g maps to g ⊗ g ⊗ g
        let mut expected = LinearMap::zero(27, 3);
        for g in 0..3u64 {
            expected.add(g * 9 + g * 3 + g, g, big(1));
        }
        assert_eq!(m, expected);
    }

    #[test]
    fn upsilon_respects_composition_in_the_model() {
        // Υ^{σ'} ∘ Υ^{σ} = Υ^{σ'∘σ}, checked in the model on Σ5 samples
        let z2 = builtin_group("z2").unwrap();
        let all = Permutation::all(5);
        for (i, j) in [(1, 17), (43, 77), (99, 111), (60, 5)] {
            let s = &all[i];
            let sp = &all[j];
            let composed = Permutation::compose(sp, s).unwrap();
            let lhs = eval_term(&then(&upsilon(s), &upsilon(sp)).unwrap(), &z2).unwrap();
            let rhs = eval_term(&upsilon(&composed), &z2).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn upsilon_respects_products_in_the_model() {
        // Υ^{σ} ⋄ Υ^{σ'} = Υ^{σ x σ'}
        let z3 = builtin_group("z3").unwrap();
        let s = Permutation::new(vec![2, 3, 1]).unwrap();
        let sp = Permutation::new(vec![2, 1]).unwrap();
        let lhs = eval_term(&tensor_t(&upsilon(&s), &upsilon(&sp)), &z3).unwrap();
        let rhs = eval_term(&upsilon(&s.product(&sp)), &z3).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn interchange_law_in_the_model() {
        // (f ⋄ id) ; (id ⋄ g) evaluates like f ⋄ g
        let s3 = builtin_group("s3").unwrap();
        let f = then(&gen(GenSym::Cop), &tensor_t(&gen(GenSym::Ant), &HopfTerm::identity(1)))
            .unwrap();
        let g = gen(GenSym::Mul);
        let staged = then(
            &tensor_t(&f, &HopfTerm::identity(2)),
            &tensor_t(&HopfTerm::identity(2), &g),
        )
        .unwrap();
        let direct = tensor_t(&f, &g);
        assert_eq!(eval_term(&staged, &s3).unwrap(), eval_term(&direct, &s3).unwrap());
    }

    #[test]
    fn kron_and_matmul_agree_with_dense() {
        let mut a = LinearMap::zero(2, 3);
        a.add(0, 0, big(1));
        a.add(1, 2, big(4));
        let mut b = LinearMap::zero(3, 2);
        b.add(0, 1, big(2));
        b.add(2, 0, big(5));
        let ab = a.matmul(&b).unwrap();
        assert_eq!(ab.get(0, 1), big(2));
        assert_eq!(ab.get(1, 0), big(20));
        let k = a.kron(&b);
        assert_eq!(k.rows(), 6);
        assert_eq!(k.cols(), 6);
        assert_eq!(k.get(0 * 3 + 0, 0 * 2 + 1), big(2));
        assert_eq!(k.get(1 * 3 + 2, 2 * 2 + 0), big(20));
    }

    #[test]
    fn matrix_json_round_trip() {
        let mut a = LinearMap::zero(300, 2);
        a.add(299, 1, big(7));
        a.add(0, 0, BigUint::parse_bytes(b"123456789012345678901234567890", 10).unwrap());
        let s = serde_json::to_string(&a).unwrap();
        let back: LinearMap = serde_json::from_str(&s).unwrap();
        assert_eq!(a, back);
    }
}
