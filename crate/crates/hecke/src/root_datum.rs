//! Root data: a character lattice `X(T)` with chosen simple roots and
//! coroots, the derived set of positive roots, and the weight-lattice
//! combinatorics (pairings, reflections, dominance cones) everything else is
//! built on.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{input_err, internal_err, Result};
use crate::util::solve_integer_system;

/// An element of the lattice `X(T)`, written in the chosen basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|a| c * a).collect())
    }

    pub fn max_abs_coord(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A covector on `X(T)`: pairs with weights by the dot product.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Coweight(pub Vec<i64>);

impl Coweight {
    pub fn pair(&self, w: &Weight) -> i64 {
        self.0.iter().zip(&w.0).map(|(a, b)| a * b).sum()
    }

    fn sub(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn scaled(&self, c: i64) -> Coweight {
        Coweight(self.0.iter().map(|a| c * a).collect())
    }
}

/// A subset of the simple reflections, kept sorted. Indices are 0-based in
/// the API; the CLI and file formats use the 1-based names `s1, s2, ...`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct SimpleSubset(Vec<usize>);

impl SimpleSubset {
    pub fn empty() -> Self {
        SimpleSubset(Vec::new())
    }

    pub fn full(ss_rank: usize) -> Self {
        SimpleSubset((0..ss_rank).collect())
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>, ss_rank: usize) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if let Some(&bad) = v.iter().find(|&&i| i >= ss_rank) {
            return input_err(format!("simple index {} out of range (rank {ss_rank})", bad + 1));
        }
        Ok(SimpleSubset(v))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for SimpleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, &i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "s{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// A root together with its coroot and both expressed in simple (co)root
/// coordinates. Simple roots occupy the first `ss_rank` slots of
/// [`RootDatum::positive_roots`].
#[derive(Clone, Debug)]
pub struct RootData {
    pub root: Weight,
    pub coroot: Coweight,
    /// Coordinates of the root in the simple-root basis.
    pub root_coords: Vec<i64>,
    /// Coordinates of the coroot in the simple-coroot basis.
    pub coroot_coords: Vec<i64>,
}

impl RootData {
    fn height(&self) -> i64 {
        self.root_coords.iter().sum()
    }

    fn coroot_height(&self) -> i64 {
        self.coroot_coords.iter().sum()
    }
}

/// On-disk description of a root datum.
#[derive(Serialize, Deserialize)]
pub struct RootDatumFile {
    pub name: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub lattice: LatticeSpec,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    /// The fundamental-weight basis: `X(T) = Z^n` with `<e_i, a^v_j> = d_ij`.
    Named(String),
    Explicit {
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    },
}

const MAX_ROOT_CLOSURE: usize = 10_000;

/// The combinatorial skeleton: lattice, simple roots/coroots, Cartan matrix,
/// and the derived positive roots. Immutable once built.
pub struct RootDatum {
    name: String,
    rank: usize,
    ss_rank: usize,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Coweight>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<RootData>,
    /// Connected components of the Dynkin diagram, as sets of simple indices.
    components: Vec<Vec<usize>>,
    /// Per component, the index (into `positive_roots`) of the root whose
    /// coroot is the highest coroot of that component.
    affine_roots: Vec<usize>,
    /// Per simple index, a dominant weight pairing to `d_ij` with the simple
    /// coroots, when the lattice contains one.
    correctors: Option<Vec<Weight>>,
    /// Sum of all positive roots; strictly dominant fallback corrector.
    two_rho: Weight,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootDatum({}, rank {})", self.name, self.rank)
    }
}

impl RootDatum {
    /// Builds a root datum from a Cartan matrix in the fundamental-weight
    /// basis: `X(T) = Z^n`, the i-th simple coroot is the i-th coordinate
    /// functional, and the i-th simple root is the i-th row of the matrix.
    pub fn from_cartan(name: &str, cartan: Vec<Vec<i64>>) -> Result<Arc<Self>> {
        let n = cartan.len();
        let simple_roots = cartan.iter().map(|row| Weight(row.clone())).collect();
        let simple_coroots = (0..n)
            .map(|i| Coweight((0..n).map(|j| i64::from(i == j)).collect()))
            .collect();
        Self::new(name, n, cartan, simple_roots, simple_coroots)
    }

    pub fn new(
        name: &str,
        rank: usize,
        cartan: Vec<Vec<i64>>,
        simple_roots: Vec<Weight>,
        simple_coroots: Vec<Coweight>,
    ) -> Result<Arc<Self>> {
        let ss_rank = cartan.len();
        if simple_roots.len() != ss_rank || simple_coroots.len() != ss_rank {
            return input_err("number of simple roots/coroots must match the Cartan matrix size");
        }
        if rank == 0 && ss_rank > 0 {
            return input_err("rank must be positive");
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != ss_rank {
                return input_err("Cartan matrix must be square");
            }
            if row[i] != 2 {
                return input_err(format!("Cartan diagonal entry ({},{}) must be 2", i + 1, i + 1));
            }
            for (j, &c) in row.iter().enumerate() {
                if i != j && c > 0 {
                    return input_err(format!(
                        "Cartan off-diagonal entry ({},{}) must be <= 0",
                        i + 1,
                        j + 1
                    ));
                }
                if (c == 0) != (cartan[j][i] == 0) {
                    return input_err(format!(
                        "Cartan entries ({i1},{j1}) and ({j1},{i1}) must vanish together",
                        i1 = i + 1,
                        j1 = j + 1
                    ));
                }
            }
        }
        for root in &simple_roots {
            if root.0.len() != rank {
                return input_err("simple root has wrong number of coordinates");
            }
        }
        for coroot in &simple_coroots {
            if coroot.0.len() != rank {
                return input_err("simple coroot has wrong number of coordinates");
            }
        }
        for i in 0..ss_rank {
            for j in 0..ss_rank {
                if simple_coroots[j].pair(&simple_roots[i]) != cartan[i][j] {
                    return input_err(format!(
                        "pairing <alpha_{}, alpha^v_{}> disagrees with the Cartan matrix",
                        i + 1,
                        j + 1
                    ));
                }
            }
        }
        let root_rows: Vec<Vec<i64>> = simple_roots.iter().map(|r| r.0.clone()).collect();
        let coroot_rows: Vec<Vec<i64>> = simple_coroots.iter().map(|c| c.0.clone()).collect();
        if crate::util::integer_matrix_rank(&root_rows) != ss_rank
            || crate::util::integer_matrix_rank(&coroot_rows) != ss_rank
        {
            return input_err("simple roots and coroots must be linearly independent");
        }

        let positive_roots = close_roots(&cartan, &simple_roots, &simple_coroots)?;

        let components = diagram_components(&cartan);
        let affine_roots = components
            .iter()
            .map(|comp| highest_coroot_index(&positive_roots, comp))
            .collect::<Result<Vec<_>>>()?;

        let correctors = solve_correctors(rank, ss_rank, &simple_coroots);
        let mut two_rho = Weight::zero(rank);
        for rd in &positive_roots {
            two_rho = two_rho.add(&rd.root);
        }

        Ok(Arc::new(RootDatum {
            name: name.to_string(),
            rank,
            ss_rank,
            simple_roots,
            simple_coroots,
            cartan,
            positive_roots,
            components,
            affine_roots,
            correctors,
            two_rho,
        }))
    }

    /// Built-in presets: A1, A2, B2, G2 in the fundamental-weight basis, and
    /// GL2 (rank-2 lattice with a single root).
    pub fn preset(name: &str) -> Result<Arc<Self>> {
        let key = name.trim();
        let key = key.strip_suffix("affine").unwrap_or(key);
        match key {
            "A1" => Self::from_cartan("A1", vec![vec![2]]),
            "A2" => Self::from_cartan("A2", vec![vec![2, -1], vec![-1, 2]]),
            "B2" => Self::from_cartan("B2", vec![vec![2, -2], vec![-1, 2]]),
            "G2" => Self::from_cartan("G2", vec![vec![2, -1], vec![-3, 2]]),
            "GL2" => Self::new(
                "GL2",
                2,
                vec![vec![2]],
                vec![Weight(vec![1, -1])],
                vec![Coweight(vec![1, -1])],
            ),
            other => input_err(format!(
                "unknown preset {other:?} (available: A1, A2, B2, G2, GL2)"
            )),
        }
    }

    pub fn from_file_spec(spec: &RootDatumFile) -> Result<Arc<Self>> {
        match &spec.lattice {
            LatticeSpec::Named(kind) if kind == "weight" => {
                if spec.rank != spec.cartan.len() {
                    return input_err("weight-basis lattice requires rank == Cartan size");
                }
                Self::from_cartan(&spec.name, spec.cartan.clone())
            }
            LatticeSpec::Named(other) => input_err(format!("unknown lattice kind {other:?}")),
            LatticeSpec::Explicit { simple_roots, simple_coroots } => Self::new(
                &spec.name,
                spec.rank,
                spec.cartan.clone(),
                simple_roots.iter().cloned().map(Weight).collect(),
                simple_coroots.iter().cloned().map(Coweight).collect(),
            ),
        }
    }

    pub fn load_json(text: &str) -> Result<Arc<Self>> {
        let spec: RootDatumFile = serde_json::from_str(text)?;
        Self::from_file_spec(&spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots (the semisimple rank).
    pub fn ss_rank(&self) -> usize {
        self.ss_rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.simple_roots[i]
    }

    pub fn simple_coroot(&self, i: usize) -> &Coweight {
        &self.simple_coroots[i]
    }

    pub fn positive_roots(&self) -> &[RootData] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Index into `positive_roots` of the affine node root for component `c`
    /// (the root whose coroot is the highest coroot of the component).
    pub fn affine_root_index(&self, c: usize) -> usize {
        self.affine_roots[c]
    }

    pub fn full_subset(&self) -> SimpleSubset {
        SimpleSubset::full(self.ss_rank)
    }

    /// `<lambda, alpha^v_j>` for a simple coroot index.
    pub fn pairing(&self, lam: &Weight, j: usize) -> Result<i64> {
        if j >= self.ss_rank {
            return input_err(format!("coroot index {} out of range", j + 1));
        }
        Ok(self.simple_coroots[j].pair(lam))
    }

    /// `s_i(lambda) = lambda - <lambda, alpha^v_i> alpha_i`.
    pub fn reflect(&self, i: usize, lam: &Weight) -> Result<Weight> {
        if i >= self.ss_rank {
            return input_err(format!("simple index {} out of range", i + 1));
        }
        let d = self.simple_coroots[i].pair(lam);
        Ok(lam.sub(&self.simple_roots[i].scaled(d)))
    }

    /// Reflection in an arbitrary positive root (by index into
    /// `positive_roots`).
    pub fn reflect_root(&self, root_idx: usize, lam: &Weight) -> Weight {
        let rd = &self.positive_roots[root_idx];
        let d = rd.coroot.pair(lam);
        lam.sub(&rd.root.scaled(d))
    }

    /// True iff `<lambda, alpha^v_i> >= 0` for every `i` in `I`.
    pub fn is_dominant_for(&self, lam: &Weight, subset: &SimpleSubset) -> bool {
        subset
            .indices()
            .iter()
            .all(|&i| self.simple_coroots[i].pair(lam) >= 0)
    }

    /// The unique `I`-dominant weight in the `W_I`-orbit of `lam`, together
    /// with an element `w` of `W_I` carrying `lam` onto it (as a word in the
    /// simple reflections, applied right to left).
    pub fn dominant_representative(
        &self,
        lam: &Weight,
        subset: &SimpleSubset,
    ) -> Result<(Weight, Vec<usize>)> {
        let mut cur = lam.clone();
        let mut word: Vec<usize> = Vec::new();
        let cap = 10_000usize;
        for _ in 0..cap {
            match subset
                .indices()
                .iter()
                .find(|&&i| self.simple_coroots[i].pair(&cur) < 0)
            {
                None => {
                    word.reverse();
                    return Ok((cur, word));
                }
                Some(&i) => {
                    cur = self.reflect(i, &cur)?;
                    word.push(i);
                }
            }
        }
        internal_err("dominant_representative did not converge")
    }

    /// Writes `lam = mu - nu` with both `mu` and `nu` dominant.
    pub fn dominant_difference(&self, lam: &Weight) -> (Weight, Weight) {
        if let Some(correctors) = &self.correctors {
            let mut nu = Weight::zero(self.rank);
            for i in 0..self.ss_rank {
                let d = self.simple_coroots[i].pair(lam);
                if d < 0 {
                    nu = nu.add(&correctors[i].scaled(-d));
                }
            }
            (lam.add(&nu), nu)
        } else {
            // Fall back to multiples of the sum of positive roots, which
            // pairs to 2 with every simple coroot.
            let worst = (0..self.ss_rank)
                .map(|i| -self.simple_coroots[i].pair(lam))
                .max()
                .unwrap_or(0);
            let m = if worst > 0 { (worst + 1) / 2 } else { 0 };
            let nu = self.two_rho.scaled(m);
            (lam.add(&nu), nu)
        }
    }

    /// Enumerates all weights with every coordinate in `[-bound, bound]`.
    pub fn weight_box(&self, bound: i64) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut cur = vec![-bound; self.rank];
        if self.rank == 0 {
            return vec![Weight(vec![])];
        }
        loop {
            out.push(Weight(cur.clone()));
            let mut i = 0;
            loop {
                cur[i] += 1;
                if cur[i] <= bound {
                    break;
                }
                cur[i] = -bound;
                i += 1;
                if i == self.rank {
                    return out;
                }
            }
        }
    }
}

/// Closure of the simple roots under simple reflections; returns the positive
/// ones (sorted: simples first, then by height) paired with their coroots.
fn close_roots(
    cartan: &[Vec<i64>],
    simple_roots: &[Weight],
    simple_coroots: &[Coweight],
) -> Result<Vec<RootData>> {
    let n = cartan.len();
    let mut seen: HashMap<Vec<i64>, RootData> = HashMap::new();
    let mut queue: Vec<RootData> = Vec::new();
    for i in 0..n {
        let mut root_coords = vec![0i64; n];
        root_coords[i] = 1;
        let mut coroot_coords = vec![0i64; n];
        coroot_coords[i] = 1;
        let rd = RootData {
            root: simple_roots[i].clone(),
            coroot: simple_coroots[i].clone(),
            root_coords,
            coroot_coords,
        };
        seen.insert(rd.root.0.clone(), rd.clone());
        queue.push(rd);
    }
    while let Some(rd) = queue.pop() {
        for j in 0..n {
            let a = simple_coroots[j].pair(&rd.root);
            let b = rd.coroot.pair(&simple_roots[j]);
            let image = RootData {
                root: rd.root.sub(&simple_roots[j].scaled(a)),
                coroot: rd.coroot.sub(&simple_coroots[j].scaled(b)),
                root_coords: {
                    let mut c = rd.root_coords.clone();
                    c[j] -= a;
                    c
                },
                coroot_coords: {
                    let mut c = rd.coroot_coords.clone();
                    c[j] -= b;
                    c
                },
            };
            if !seen.contains_key(&image.root.0) {
                seen.insert(image.root.0.clone(), image.clone());
                queue.push(image);
                if seen.len() > MAX_ROOT_CLOSURE {
                    return input_err("root closure exceeded bound; Cartan matrix is not of finite type");
                }
            }
        }
    }
    let mut positive: Vec<RootData> = seen
        .into_values()
        .filter(|rd| rd.root_coords.iter().all(|&c| c >= 0))
        .collect();
    positive.sort_by_key(|rd| {
        let first = rd.root_coords.iter().position(|&c| c != 0).unwrap_or(0);
        (rd.height(), first, rd.root_coords.clone())
    });
    // Simple roots must come first, in order.
    for (i, rd) in positive.iter().take(n).enumerate() {
        let is_simple_i = rd.root_coords.iter().enumerate().all(|(j, &c)| c == i64::from(j == i));
        if !is_simple_i {
            return internal_err("positive root ordering lost the simple roots");
        }
    }
    Ok(positive)
}

fn diagram_components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut assigned = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if assigned[start] != usize::MAX {
            continue;
        }
        let c = comps.len();
        let mut stack = vec![start];
        let mut comp = Vec::new();
        assigned[start] = c;
        while let Some(i) = stack.pop() {
            comp.push(i);
            for j in 0..n {
                if assigned[j] == usize::MAX && cartan[i][j] != 0 {
                    assigned[j] = c;
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// The positive root of the component whose coroot has maximal height in the
/// simple-coroot basis.
fn highest_coroot_index(positive: &[RootData], comp: &[usize]) -> Result<usize> {
    let in_comp = |rd: &RootData| {
        rd.root_coords
            .iter()
            .enumerate()
            .all(|(j, &c)| c == 0 || comp.contains(&j))
    };
    let best = positive
        .iter()
        .enumerate()
        .filter(|(_, rd)| in_comp(rd))
        .max_by_key(|(_, rd)| rd.coroot_height());
    match best {
        Some((idx, _)) => Ok(idx),
        None => internal_err("component without roots"),
    }
}

/// Finds, for each simple index i, a dominant weight pairing to `d_ij` with
/// the simple coroots. Exists for weight-basis lattices and GL-type data.
fn solve_correctors(rank: usize, ss_rank: usize, simple_coroots: &[Coweight]) -> Option<Vec<Weight>> {
    let rows: Vec<Vec<i64>> = simple_coroots.iter().map(|c| c.0.clone()).collect();
    let mut out = Vec::with_capacity(ss_rank);
    for i in 0..ss_rank {
        let rhs: Vec<i64> = (0..ss_rank).map(|j| i64::from(i == j)).collect();
        let sol = solve_integer_system(&rows, &rhs)?;
        out.push(Weight(sol.particular));
    }
    debug_assert_eq!(out.iter().map(|w| w.0.len()).max().unwrap_or(rank), rank);
    Some(out)
}

pub fn preset_names() -> &'static [&'static str] {
    &["A1", "A2", "B2", "G2", "GL2"]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> Arc<RootDatum> {
        RootDatum::preset("A1").unwrap()
    }

    fn a2() -> Arc<RootDatum> {
        RootDatum::preset("A2").unwrap()
    }

    #[test]
    fn positive_root_counts_by_type() {
        assert_eq!(a1().num_positive_roots(), 1);
        assert_eq!(a2().num_positive_roots(), 3);
        assert_eq!(RootDatum::preset("B2").unwrap().num_positive_roots(), 4);
        assert_eq!(RootDatum::preset("G2").unwrap().num_positive_roots(), 6);
        assert_eq!(RootDatum::preset("GL2").unwrap().num_positive_roots(), 1);
    }

    #[test]
    fn pairing_examples() {
        let d = a2();
        let alpha1 = d.simple_root(0).clone();
        assert_eq!(d.pairing(&alpha1, 0).unwrap(), 2);
        assert_eq!(d.pairing(&alpha1, 1).unwrap(), -1);
        let d1 = a1();
        let omega = Weight(vec![1]);
        assert_eq!(d1.pairing(&omega, 0).unwrap(), 1);
        assert!(d1.pairing(&omega, 5).is_err());
    }

    #[test]
    fn reflect_examples() {
        let d1 = a1();
        let alpha = d1.simple_root(0).clone();
        assert_eq!(d1.reflect(0, &alpha).unwrap(), alpha.neg());
        let omega = Weight(vec![1]);
        assert_eq!(d1.reflect(0, &omega).unwrap(), omega.neg());
        let d = a2();
        let omega1 = Weight(vec![1, 0]);
        let expected = omega1.sub(d.simple_root(0));
        assert_eq!(d.reflect(0, &omega1).unwrap(), expected);
    }

    #[test]
    fn reflection_is_involutive_on_all_roots() {
        for name in ["A2", "B2", "G2", "GL2"] {
            let d = RootDatum::preset(name).unwrap();
            for idx in 0..d.num_positive_roots() {
                for lam in d.weight_box(2) {
                    let once = d.reflect_root(idx, &lam);
                    assert_eq!(d.reflect_root(idx, &once), lam);
                    // s_beta(lam) = lam - <lam, beta^v> beta
                    let rd = &d.positive_roots()[idx];
                    let expect = lam.sub(&rd.root.scaled(rd.coroot.pair(&lam)));
                    assert_eq!(once, expect);
                }
            }
        }
    }

    #[test]
    fn dominance_examples() {
        let d1 = a1();
        let omega = Weight(vec![1]);
        assert!(d1.is_dominant_for(&omega.neg(), &SimpleSubset::empty()));
        assert!(!d1.is_dominant_for(&omega.neg(), &d1.full_subset()));
        let d = a2();
        let lam = Weight(vec![1, -1]);
        let i1 = SimpleSubset::from_indices([0], 2).unwrap();
        assert_eq!(d.pairing(&lam, 0).unwrap(), 1);
        assert!(d.is_dominant_for(&lam, &i1));
    }

    #[test]
    fn dominant_representative_examples() {
        let d1 = a1();
        let omega = Weight(vec![1]);
        let (mu, word) = d1
            .dominant_representative(&omega.neg(), &d1.full_subset())
            .unwrap();
        assert_eq!(mu, omega);
        assert_eq!(word, vec![0]);

        // Already dominant: empty word.
        let (mu2, word2) = d1.dominant_representative(&omega, &d1.full_subset()).unwrap();
        assert_eq!(mu2, omega);
        assert!(word2.is_empty());

        // A2: brute force over the 6 Weyl images says -omega1 ~ omega2.
        let d = a2();
        let target = Weight(vec![-1, 0]);
        let (mu3, word3) = d.dominant_representative(&target, &d.full_subset()).unwrap();
        assert_eq!(mu3, Weight(vec![0, 1]));
        // The returned word carries lam onto mu (applied right to left).
        let mut cur = target;
        for &i in word3.iter().rev() {
            cur = d.reflect(i, &cur).unwrap();
        }
        assert_eq!(cur, mu3);
    }

    #[test]
    fn dominant_representative_is_idempotent() {
        let d = a2();
        let full = d.full_subset();
        for lam in d.weight_box(3) {
            let (mu, _) = d.dominant_representative(&lam, &full).unwrap();
            let (mu2, word2) = d.dominant_representative(&mu, &full).unwrap();
            assert_eq!(mu, mu2);
            assert!(word2.is_empty());
        }
    }

    #[test]
    fn dominant_difference_examples_and_window() {
        let d1 = a1();
        let omega = Weight(vec![1]);
        assert_eq!(d1.dominant_difference(&omega), (omega.clone(), Weight(vec![0])));
        assert_eq!(d1.dominant_difference(&omega.neg()), (Weight(vec![0]), omega.clone()));
        let d = a2();
        let lam = Weight(vec![1, -1]);
        assert_eq!(
            d.dominant_difference(&lam),
            (Weight(vec![1, 0]), Weight(vec![0, 1]))
        );
        for name in ["A1", "A2", "B2", "G2", "GL2"] {
            let d = RootDatum::preset(name).unwrap();
            let full = d.full_subset();
            for lam in d.weight_box(if d.rank() > 1 { 3 } else { 5 }) {
                let (mu, nu) = d.dominant_difference(&lam);
                assert!(d.is_dominant_for(&mu, &full), "{name}: mu not dominant");
                assert!(d.is_dominant_for(&nu, &full), "{name}: nu not dominant");
                assert_eq!(mu.sub(&nu), lam);
            }
        }
    }

    #[test]
    fn rejects_bad_cartan_matrices() {
        assert!(RootDatum::from_cartan("bad", vec![vec![2, -1], vec![-1, 3]]).is_err());
        assert!(RootDatum::from_cartan("bad", vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(RootDatum::from_cartan("bad", vec![vec![2, -1], vec![0, 2]]).is_err());
        // Affine-type matrix: infinite root system.
        assert!(RootDatum::from_cartan("bad", vec![vec![2, -2], vec![-2, 2]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"name":"B2","rank":2,"cartan":[[2,-2],[-1,2]],"lattice":"weight"}"#;
        let d = RootDatum::load_json(text).unwrap();
        assert_eq!(d.num_positive_roots(), 4);
        let explicit = r#"{
            "name": "GL2", "rank": 2, "cartan": [[2]],
            "lattice": {"simple_roots": [[1,-1]], "simple_coroots": [[1,-1]]}
        }"#;
        let g = RootDatum::load_json(explicit).unwrap();
        assert_eq!(g.num_positive_roots(), 1);
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn affine_node_is_highest_short_root() {
        // In B2 the highest coroot is the coroot of the highest short root
        // alpha1 + alpha2.
        let d = RootDatum::preset("B2").unwrap();
        let idx = d.affine_root_index(0);
        let rd = &d.positive_roots()[idx];
        assert_eq!(rd.root_coords, vec![1, 1]);
        // Simply laced: highest root and highest coroot agree (A2).
        let d = a2();
        let rd = &d.positive_roots()[d.affine_root_index(0)];
        assert_eq!(rd.root_coords, vec![1, 1]);
    }
}
