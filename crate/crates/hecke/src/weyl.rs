//! The finite Weyl group of a root datum: element arithmetic through the
//! permutation action on roots, reduced words, Bruhat order, parabolic
//! subgroups, and minimal double-coset representatives.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use crate::error::{input_err, Error, Result};
use crate::root_datum::{RootDatum, SimpleSubset, Weight};

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

const MAX_GROUP_ORDER: usize = 200_000;

/// Signed index of a root: `+(i+1)` is the i-th positive root, `-(i+1)` its
/// negative.
type SignedRoot = i32;

struct EltData {
    /// Image of each positive root under the element, as a signed index.
    perm: Vec<SignedRoot>,
    /// Matrix of the action on `X(T)`: `(w . lam)_i = sum_j m[i][j] lam_j`.
    matrix: Vec<Vec<i64>>,
    length: u32,
    word: Vec<usize>,
    inverse: u32,
}

pub(crate) struct GroupData {
    id: u64,
    datum: Arc<RootDatum>,
    elements: Vec<EltData>,
    index_by_perm: HashMap<Vec<SignedRoot>, u32>,
    /// Reflection element for each positive root.
    reflections: Vec<u32>,
    bruhat_memo: Mutex<HashMap<(u32, u32), bool>>,
    /// Extended-affine state shared between modules (see `ext_affine`).
    pub(crate) affine: crate::ext_affine::AffineData,
}

/// A finite Weyl group, built once per root datum and shared by handle.
/// Handles compare equal exactly when they share the same underlying table.
#[derive(Clone)]
pub struct WeylGroup {
    pub(crate) data: Arc<GroupData>,
}

impl PartialEq for WeylGroup {
    fn eq(&self, other: &Self) -> bool {
        self.data.id == other.data.id
    }
}

impl Eq for WeylGroup {}

/// An element of a [`WeylGroup`]. Equality is canonical: two elements are
/// equal exactly when their actions on all roots agree.
#[derive(Clone)]
pub struct WeylElt {
    group: WeylGroup,
    idx: u32,
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.group.data.id == other.group.data.id && self.idx == other.idx
    }
}

impl Eq for WeylElt {}

impl PartialOrd for WeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.group.data.id, self.idx).cmp(&(other.group.data.id, other.idx))
    }
}

impl std::hash::Hash for WeylElt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.group.data.id.hash(state);
        self.idx.hash(state);
    }
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "e")
        } else {
            for (k, &i) in self.word().iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "s{}", i + 1)?;
            }
            Ok(())
        }
    }
}

impl WeylGroup {
    /// Builds the full multiplication table by closing the simple
    /// reflections.
    pub fn new(datum: Arc<RootDatum>) -> Result<Self> {
        let n_pos = datum.num_positive_roots();
        let rank = datum.rank();
        let ss = datum.ss_rank();

        // Simple reflection data.
        let mut gen_perm: Vec<Vec<SignedRoot>> = Vec::with_capacity(ss);
        let mut gen_matrix: Vec<Vec<Vec<i64>>> = Vec::with_capacity(ss);
        let root_index: HashMap<Vec<i64>, usize> = datum
            .positive_roots()
            .iter()
            .enumerate()
            .map(|(i, rd)| (rd.root.0.clone(), i))
            .collect();
        let signed_lookup = |w: &Weight| -> Result<SignedRoot> {
            if let Some(&i) = root_index.get(&w.0) {
                return Ok(i as SignedRoot + 1);
            }
            if let Some(&i) = root_index.get(&w.neg().0) {
                return Ok(-(i as SignedRoot + 1));
            }
            Err(Error::Internal("reflection image is not a root".into()))
        };
        for i in 0..ss {
            let mut perm = Vec::with_capacity(n_pos);
            for rd in datum.positive_roots() {
                perm.push(signed_lookup(&datum.reflect(i, &rd.root)?)?);
            }
            gen_perm.push(perm);
            let mut m = vec![vec![0i64; rank]; rank];
            for j in 0..rank {
                let mut e = Weight::zero(rank);
                e.0[j] = 1;
                let img = datum.reflect(i, &e)?;
                for (r, row) in m.iter_mut().enumerate() {
                    row[j] = img.0[r];
                }
            }
            gen_matrix.push(m);
        }

        let identity = EltData {
            perm: (0..n_pos).map(|i| i as SignedRoot + 1).collect(),
            matrix: (0..rank)
                .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
                .collect(),
            length: 0,
            word: Vec::new(),
            inverse: 0,
        };

        let mut elements: Vec<EltData> = vec![identity];
        let mut index_by_perm: HashMap<Vec<SignedRoot>, u32> = HashMap::new();
        index_by_perm.insert(elements[0].perm.clone(), 0);

        // BFS over right multiplication by simple reflections; discovery is
        // in length order, so stored words are reduced.
        let mut frontier: Vec<u32> = vec![0];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &e_idx in &frontier {
                for i in 0..ss {
                    // w * s_i acts by w after s_i.
                    let perm: Vec<SignedRoot> = gen_perm[i]
                        .iter()
                        .map(|&img| apply_signed(&elements[e_idx as usize].perm, img))
                        .collect();
                    if index_by_perm.contains_key(&perm) {
                        continue;
                    }
                    let e = &elements[e_idx as usize];
                    let matrix = mat_mul(&e.matrix, &gen_matrix[i]);
                    let mut word = e.word.clone();
                    word.push(i);
                    let length = perm.iter().filter(|&&x| x < 0).count() as u32;
                    debug_assert_eq!(length, e.length + 1);
                    let new_idx = elements.len() as u32;
                    index_by_perm.insert(perm.clone(), new_idx);
                    elements.push(EltData { perm, matrix, length, word, inverse: 0 });
                    next.push(new_idx);
                    if elements.len() > MAX_GROUP_ORDER {
                        return input_err("Weyl group order exceeds bound");
                    }
                }
            }
            frontier = next;
        }

        // Fill inverses.
        for idx in 0..elements.len() {
            let inv_perm = invert_perm(&elements[idx].perm);
            let inv = index_by_perm[&inv_perm];
            elements[idx].inverse = inv;
        }

        // Reflection element per positive root: conjugate of a simple one;
        // identified by its action (fixes the root's hyperplane, negates it).
        let mut reflections = Vec::with_capacity(n_pos);
        for rd in datum.positive_roots() {
            let mut perm = Vec::with_capacity(n_pos);
            for other in datum.positive_roots() {
                let d = rd.coroot.pair(&other.root);
                let img = other.root.sub(&rd.root.scaled(d));
                perm.push(signed_lookup(&img)?);
            }
            let idx = index_by_perm
                .get(&perm)
                .copied()
                .ok_or_else(|| Error::Internal("root reflection not in group table".into()))?;
            reflections.push(idx);
        }

        let data = GroupData {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            datum: datum.clone(),
            elements,
            index_by_perm,
            reflections,
            bruhat_memo: Mutex::new(HashMap::new()),
            affine: crate::ext_affine::AffineData::default(),
        };
        let group = WeylGroup { data: Arc::new(data) };
        crate::ext_affine::init_affine(&group)?;
        Ok(group)
    }

    pub fn for_preset(name: &str) -> Result<Self> {
        Self::new(RootDatum::preset(name)?)
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.data.datum
    }

    pub fn order(&self) -> usize {
        self.data.elements.len()
    }

    pub fn same_group(&self, other: &WeylGroup) -> bool {
        self.data.id == other.data.id
    }

    pub fn identity(&self) -> WeylElt {
        WeylElt { group: self.clone(), idx: 0 }
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElt> {
        if i >= self.datum().ss_rank() {
            return input_err(format!("simple index {} out of range", i + 1));
        }
        Ok(WeylElt { group: self.clone(), idx: self.data.reflections[i] })
    }

    /// Reflection in the `idx`-th positive root.
    pub fn root_reflection(&self, idx: usize) -> WeylElt {
        WeylElt { group: self.clone(), idx: self.data.reflections[idx] }
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElt> {
        let mut w = self.identity();
        for &i in word {
            w = w.multiply(&self.simple_reflection(i)?)?;
        }
        Ok(w)
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElt> + '_ {
        (0..self.order() as u32).map(move |idx| WeylElt { group: self.clone(), idx })
    }

    /// The elements of the standard parabolic subgroup `W_I`.
    pub fn parabolic_elements(&self, subset: &SimpleSubset) -> Vec<WeylElt> {
        self.elements()
            .filter(|w| w.word().iter().all(|&i| subset.contains(i)))
            .collect()
    }

    /// The longest element `w_I` of `W_I`.
    pub fn longest_element(&self, subset: &SimpleSubset) -> WeylElt {
        let mut w = self.identity();
        'ascend: loop {
            for &i in subset.indices() {
                let s = self.simple_reflection(i).expect("validated index");
                let ws = w.multiply(&s).expect("same group");
                if ws.length() > w.length() {
                    w = ws;
                    continue 'ascend;
                }
            }
            return w;
        }
    }

    /// Minimal-length `(W_I, W_J)`-double coset representatives, ordered by a
    /// linear extension of the Bruhat order (length, then discovery index).
    pub fn min_double_coset_reps(&self, i_set: &SimpleSubset, j_set: &SimpleSubset) -> Vec<WeylElt> {
        let mut reps: Vec<WeylElt> = self
            .elements()
            .filter(|w| {
                i_set.indices().iter().all(|&i| !w.has_left_descent(i))
                    && j_set.indices().iter().all(|&j| !w.has_right_descent(j))
            })
            .collect();
        reps.sort_by_key(|w| (w.length(), w.idx));
        reps
    }

    /// Factors `w = w1 * z * w2` with `w1` in `W_I`, `z` the minimal double
    /// coset representative, `w2` in `W_J`, and lengths adding.
    pub fn double_coset_decompose(
        &self,
        w: &WeylElt,
        i_set: &SimpleSubset,
        j_set: &SimpleSubset,
    ) -> Result<(WeylElt, WeylElt, WeylElt)> {
        self.check_elt(w)?;
        let mut w1 = self.identity();
        let mut mid = w.clone();
        let mut w2 = self.identity();
        'peel: loop {
            for &i in i_set.indices() {
                if mid.has_left_descent(i) {
                    let s = self.simple_reflection(i)?;
                    w1 = w1.multiply(&s)?;
                    mid = s.multiply(&mid)?;
                    continue 'peel;
                }
            }
            for &j in j_set.indices() {
                if mid.has_right_descent(j) {
                    let s = self.simple_reflection(j)?;
                    w2 = s.multiply(&w2)?;
                    mid = mid.multiply(&s)?;
                    continue 'peel;
                }
            }
            break;
        }
        debug_assert_eq!(
            w1.length() + mid.length() + w2.length(),
            w.length(),
            "double coset peeling lost length additivity"
        );
        Ok((w1, mid, w2))
    }

    /// For `z` minimal in its `(W_I, W_J)`-double coset, the subset `K` of
    /// simple indices with `Pi_K = Pi_I intersect z(Pi_J)`, so that
    /// `W_K = W_I intersect z W_J z^-1`.
    pub fn parabolic_intersection(
        &self,
        z: &WeylElt,
        i_set: &SimpleSubset,
        j_set: &SimpleSubset,
    ) -> Result<SimpleSubset> {
        self.check_elt(z)?;
        let (_, m, _) = self.double_coset_decompose(z, i_set, j_set)?;
        if &m != z {
            return input_err("element is not a minimal double coset representative");
        }
        let z_inv = z.inverse();
        let mut out = Vec::new();
        for &i in i_set.indices() {
            let image = z_inv.act_on_root(i as i32 + 1);
            if image > 0 {
                let idx = (image - 1) as usize;
                if idx < self.datum().ss_rank() && j_set.contains(idx) {
                    out.push(i);
                }
            }
        }
        SimpleSubset::from_indices(out, self.datum().ss_rank())
    }

    /// Bruhat order via the descent-lifting recurrence, memoized.
    pub fn bruhat_leq(&self, y: &WeylElt, w: &WeylElt) -> bool {
        assert!(self.same_group(&y.group) && self.same_group(&w.group), "mixed groups");
        self.bruhat_leq_idx(y.idx, w.idx)
    }

    fn bruhat_leq_idx(&self, y: u32, w: u32) -> bool {
        if y == w {
            return true;
        }
        let ly = self.data.elements[y as usize].length;
        let lw = self.data.elements[w as usize].length;
        if ly >= lw {
            return false;
        }
        if let Some(&ans) = self.data.bruhat_memo.lock().unwrap().get(&(y, w)) {
            return ans;
        }
        // First letter of the stored reduced word is a left descent of w.
        let s = self.data.elements[w as usize].word[0];
        let s_idx = self.data.reflections[s];
        let sw = self.mul_idx(s_idx, w);
        let sy = self.mul_idx(s_idx, y);
        let ans = if self.data.elements[sy as usize].length < ly {
            self.bruhat_leq_idx(sy, sw)
        } else {
            self.bruhat_leq_idx(y, sw)
        };
        self.data.bruhat_memo.lock().unwrap().insert((y, w), ans);
        ans
    }

    fn mul_idx(&self, a: u32, b: u32) -> u32 {
        let pa = &self.data.elements[a as usize].perm;
        let pb = &self.data.elements[b as usize].perm;
        // (a b) acts by b first, then a.
        let perm: Vec<SignedRoot> = pb.iter().map(|&img| apply_signed(pa, img)).collect();
        self.data.index_by_perm[&perm]
    }

    fn check_elt(&self, w: &WeylElt) -> Result<()> {
        if !self.same_group(&w.group) {
            return input_err("element belongs to a different Weyl group");
        }
        Ok(())
    }

    pub(crate) fn elt(&self, idx: u32) -> WeylElt {
        WeylElt { group: self.clone(), idx }
    }
}

impl WeylElt {
    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub(crate) fn index(&self) -> u32 {
        self.idx
    }

    pub fn is_identity(&self) -> bool {
        self.idx == 0
    }

    pub fn length(&self) -> u32 {
        self.group.data.elements[self.idx as usize].length
    }

    /// A reduced word for the element, in simple indices.
    pub fn word(&self) -> &[usize] {
        &self.group.data.elements[self.idx as usize].word
    }

    pub fn sign(&self) -> i64 {
        if self.length() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn multiply(&self, other: &WeylElt) -> Result<WeylElt> {
        if !self.group.same_group(&other.group) {
            return input_err("cannot multiply elements of different Weyl groups");
        }
        let idx = self.group.mul_idx(self.idx, other.idx);
        Ok(WeylElt { group: self.group.clone(), idx })
    }

    pub fn inverse(&self) -> WeylElt {
        WeylElt {
            group: self.group.clone(),
            idx: self.group.data.elements[self.idx as usize].inverse,
        }
    }

    /// Image of a signed root index under the element.
    pub fn act_on_root(&self, signed: SignedRoot) -> SignedRoot {
        apply_signed(&self.group.data.elements[self.idx as usize].perm, signed)
    }

    /// Action on a weight.
    pub fn apply(&self, lam: &Weight) -> Weight {
        let m = &self.group.data.elements[self.idx as usize].matrix;
        let coords = m
            .iter()
            .map(|row| row.iter().zip(&lam.0).map(|(&a, &b)| a * b).sum())
            .collect();
        Weight(coords)
    }

    /// True iff `l(s_i w) < l(w)`, i.e. `w^-1(alpha_i) < 0`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.inverse().act_on_root(i as SignedRoot + 1) < 0
    }

    /// True iff `l(w s_i) < l(w)`, i.e. `w(alpha_i) < 0`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.act_on_root(i as SignedRoot + 1) < 0
    }

    pub fn bruhat_leq(&self, other: &WeylElt) -> bool {
        self.group.bruhat_leq(self, other)
    }
}

fn apply_signed(perm: &[SignedRoot], signed: SignedRoot) -> SignedRoot {
    let idx = (signed.abs() - 1) as usize;
    let img = perm[idx];
    if signed < 0 {
        -img
    } else {
        img
    }
}

fn invert_perm(perm: &[SignedRoot]) -> Vec<SignedRoot> {
    let mut out = vec![0; perm.len()];
    for (i, &img) in perm.iter().enumerate() {
        let target = (img.abs() - 1) as usize;
        out[target] = if img < 0 { -(i as SignedRoot + 1) } else { i as SignedRoot + 1 };
    }
    out
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::for_preset(name).unwrap()
    }

    /// Ground-truth Bruhat test: y <= w iff y is a subword of a fixed reduced
    /// word of w.
    fn bruhat_subword_oracle(g: &WeylGroup, y: &WeylElt, w: &WeylElt) -> bool {
        let word = w.word().to_vec();
        let n = word.len();
        for mask in 0..(1u32 << n) {
            let sub: Vec<usize> = (0..n).filter(|&k| mask & (1 << k) != 0).map(|k| word[k]).collect();
            if &g.from_word(&sub).unwrap() == y {
                return true;
            }
        }
        false
    }

    #[test]
    fn group_orders() {
        assert_eq!(group("A1").order(), 2);
        assert_eq!(group("A2").order(), 6);
        assert_eq!(group("B2").order(), 8);
        assert_eq!(group("G2").order(), 12);
        assert_eq!(group("GL2").order(), 2);
    }

    #[test]
    fn multiply_examples() {
        let g = group("A2");
        let s1 = g.simple_reflection(0).unwrap();
        let s2 = g.simple_reflection(1).unwrap();
        assert_eq!(s1.multiply(&s1).unwrap(), g.identity());
        // Braid relation in S3.
        let lhs = s1.multiply(&s2).unwrap().multiply(&s1).unwrap();
        let rhs = s2.multiply(&s1).unwrap().multiply(&s2).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.length(), 3);
    }

    #[test]
    fn length_equals_inversion_count() {
        // The stored length is the number of positive roots sent negative;
        // check it against reduced-word length for all elements.
        for name in ["A2", "B2", "G2"] {
            let g = group(name);
            for w in g.elements() {
                assert_eq!(w.length() as usize, w.word().len());
                let inversions = (1..=g.datum().num_positive_roots() as i32)
                    .filter(|&i| w.act_on_root(i) < 0)
                    .count();
                assert_eq!(w.length() as usize, inversions);
            }
        }
    }

    #[test]
    fn mismatched_groups_error() {
        let g1 = group("A2");
        let g2 = group("A2");
        let a = g1.simple_reflection(0).unwrap();
        let b = g2.simple_reflection(0).unwrap();
        assert!(a.multiply(&b).is_err());
    }

    #[test]
    fn bruhat_examples_and_oracle() {
        let g = group("A2");
        let s1 = g.simple_reflection(0).unwrap();
        let s2 = g.simple_reflection(1).unwrap();
        let w0 = g.longest_element(&g.datum().full_subset());
        assert!(g.identity().bruhat_leq(&w0));
        assert!(!s1.bruhat_leq(&s2));
        assert!(s2.bruhat_leq(&w0));
        for name in ["A2", "B2"] {
            let g = group(name);
            for y in g.elements() {
                for w in g.elements() {
                    assert_eq!(
                        y.bruhat_leq(&w),
                        bruhat_subword_oracle(&g, &y, &w),
                        "{name}: bruhat mismatch for {y} vs {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn longest_elements() {
        let g = group("A1");
        assert_eq!(g.longest_element(&SimpleSubset::empty()), g.identity());
        assert_eq!(
            g.longest_element(&g.datum().full_subset()),
            g.simple_reflection(0).unwrap()
        );
        let g = group("A2");
        let w0 = g.longest_element(&g.datum().full_subset());
        assert_eq!(w0.length(), 3);
        assert_eq!(w0, g.from_word(&[0, 1, 0]).unwrap());
        assert_eq!(w0.multiply(&w0).unwrap(), g.identity());
        // Exhaustive: w0 is the unique maximal-length element.
        assert!(g.elements().all(|w| w.length() <= w0.length()));
        // l(w_I) = number of positive roots of the subsystem.
        let g2 = group("G2");
        assert_eq!(g2.longest_element(&g2.datum().full_subset()).length(), 6);
    }

    #[test]
    fn double_coset_reps_examples() {
        let g = group("A2");
        let empty = SimpleSubset::empty();
        let full = g.datum().full_subset();
        assert_eq!(g.min_double_coset_reps(&empty, &empty).len(), 6);
        assert_eq!(g.min_double_coset_reps(&full, &full), vec![g.identity()]);
        let i1 = SimpleSubset::from_indices([0], 2).unwrap();
        let j2 = SimpleSubset::from_indices([1], 2).unwrap();
        let reps = g.min_double_coset_reps(&i1, &j2);
        let s2s1 = g.from_word(&[1, 0]).unwrap();
        assert_eq!(reps, vec![g.identity(), s2s1]);
    }

    #[test]
    fn double_coset_partition_by_brute_force() {
        // Every element lies in exactly one coset W_I z W_J, and coset sizes
        // sum to |W|.
        for name in ["A2", "B2"] {
            let g = group(name);
            let ss = g.datum().ss_rank();
            let i1 = SimpleSubset::from_indices([0], ss).unwrap();
            let j2 = SimpleSubset::from_indices([1], ss).unwrap();
            for (i_set, j_set) in [
                (SimpleSubset::empty(), SimpleSubset::empty()),
                (i1.clone(), j2.clone()),
                (g.datum().full_subset(), j2),
                (g.datum().full_subset(), g.datum().full_subset()),
            ] {
                let reps = g.min_double_coset_reps(&i_set, &j_set);
                let wi = g.parabolic_elements(&i_set);
                let wj = g.parabolic_elements(&j_set);
                let mut covered: HashSet<WeylElt> = HashSet::new();
                let mut total = 0usize;
                for z in &reps {
                    let mut coset = HashSet::new();
                    for a in &wi {
                        for b in &wj {
                            coset.insert(a.multiply(z).unwrap().multiply(b).unwrap());
                        }
                    }
                    // Each coset's minimum is z itself.
                    let min = coset.iter().min_by_key(|w| w.length()).unwrap();
                    assert_eq!(min, z);
                    total += coset.len();
                    for w in coset {
                        assert!(covered.insert(w), "cosets overlap");
                    }
                }
                assert_eq!(total, g.order());
            }
        }
    }

    #[test]
    fn double_coset_decompose_examples() {
        let g = group("A2");
        let i1 = SimpleSubset::from_indices([0], 2).unwrap();
        let j2 = SimpleSubset::from_indices([1], 2).unwrap();
        let s1s2 = g.from_word(&[0, 1]).unwrap();
        let (w1, z, w2) = g.double_coset_decompose(&s1s2, &i1, &j2).unwrap();
        assert_eq!(w1, g.simple_reflection(0).unwrap());
        assert_eq!(z, g.identity());
        assert_eq!(w2, g.simple_reflection(1).unwrap());

        let s1s2s1 = g.from_word(&[0, 1, 0]).unwrap();
        let (w1, z, w2) = g.double_coset_decompose(&s1s2s1, &i1, &j2).unwrap();
        assert_eq!(w1, g.simple_reflection(0).unwrap());
        assert_eq!(z, g.from_word(&[1, 0]).unwrap());
        assert_eq!(w2, g.identity());

        // Lengths always add, and z is a registered minimal rep.
        for name in ["A2", "B2"] {
            let g = group(name);
            let i1 = SimpleSubset::from_indices([0], 2).unwrap();
            let j2 = SimpleSubset::from_indices([1], 2).unwrap();
            let reps = g.min_double_coset_reps(&i1, &j2);
            for w in g.elements() {
                let (w1, z, w2) = g.double_coset_decompose(&w, &i1, &j2).unwrap();
                assert_eq!(w1.multiply(&z).unwrap().multiply(&w2).unwrap(), w);
                assert_eq!(w1.length() + z.length() + w2.length(), w.length());
                assert!(reps.contains(&z));
            }
        }
    }

    #[test]
    fn parabolic_intersection_examples() {
        let g = group("A2");
        let i1 = SimpleSubset::from_indices([0], 2).unwrap();
        let j2 = SimpleSubset::from_indices([1], 2).unwrap();
        assert_eq!(
            g.parabolic_intersection(&g.identity(), &i1, &i1).unwrap(),
            i1
        );
        assert_eq!(
            g.parabolic_intersection(&g.identity(), &i1, &j2).unwrap(),
            SimpleSubset::empty()
        );
        let s2s1 = g.from_word(&[1, 0]).unwrap();
        // z(alpha_2) = alpha_1, so the intersection is {s1}.
        assert_eq!(g.parabolic_intersection(&s2s1, &i1, &j2).unwrap(), i1);
        // Non-minimal input is rejected.
        let s1 = g.simple_reflection(0).unwrap();
        assert!(g.parabolic_intersection(&s1, &i1, &j2).is_err());
    }

    #[test]
    fn parabolic_intersection_generates_the_right_subgroup() {
        for name in ["A2", "B2"] {
            let g = group(name);
            let subsets = [
                SimpleSubset::empty(),
                SimpleSubset::from_indices([0], 2).unwrap(),
                SimpleSubset::from_indices([1], 2).unwrap(),
                g.datum().full_subset(),
            ];
            for i_set in &subsets {
                for j_set in &subsets {
                    for z in g.min_double_coset_reps(i_set, j_set) {
                        let k = g.parabolic_intersection(&z, i_set, j_set).unwrap();
                        let wk: HashSet<WeylElt> =
                            g.parabolic_elements(&k).into_iter().collect();
                        let direct: HashSet<WeylElt> = g
                            .parabolic_elements(i_set)
                            .into_iter()
                            .filter(|w| {
                                let conj = z
                                    .inverse()
                                    .multiply(w)
                                    .unwrap()
                                    .multiply(&z)
                                    .unwrap();
                                g.parabolic_elements(j_set).contains(&conj)
                            })
                            .collect();
                        assert_eq!(wk, direct, "{name}: W_K mismatch at z={z}");
                    }
                }
            }
        }
    }
}
