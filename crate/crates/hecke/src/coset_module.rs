//! The parabolic double-coset modules `C_{w_I} H C_{w_J}` inside the
//! extended affine Hecke algebra: the projection `chi`, the standard basis
//! `T_{lambda,z}`, the Bernstein basis `C_{w_I} theta_lambda T_z C_{w_J}`,
//! the Kazhdan-Lusztig basis `C'_{lambda,z}`, the bar involution, the
//! straightening rewriting onto dominant weights, the filtration by minimal
//! coset representatives, and the `v -> 1` specialization into the
//! sign-twisted group algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use crate::error::{input_err, internal_err, Result};
use crate::ext_affine::{minimal_length_rep, ExtAffElt};
use crate::hecke_alg::{HeckeAlgebra, HeckeElt};
use crate::kl::KlTable;
use crate::laurent::LaurentPoly;
use crate::root_datum::{SimpleSubset, Weight};
use crate::weyl::{WeylElt, WeylGroup};

const DEFAULT_STRAIGHTEN_CAP: usize = 10_000;
const KL_COORDS_CAP: usize = 100_000;

/// Index `(lambda, z)` of the module bases: `z` a minimal double-coset
/// representative and `lambda` dominant for `W_I meet z W_J z^-1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetIndex {
    pub z: WeylElt,
    pub lam: Weight,
}

impl fmt::Display for CosetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.lam, self.z)
    }
}

impl fmt::Debug for CosetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of the module, carried inside the Hecke algebra together with
/// a preimage under the projection.
#[derive(Clone)]
pub struct HijElt {
    carrier: HeckeElt,
    preimage: HeckeElt,
}

impl HijElt {
    pub fn carrier(&self) -> &HeckeElt {
        &self.carrier
    }

    pub fn preimage(&self) -> &HeckeElt {
        &self.preimage
    }

    pub fn is_zero(&self) -> bool {
        self.carrier.is_zero()
    }

    pub fn add(&self, other: &HijElt) -> HijElt {
        HijElt {
            carrier: self.carrier.add(&other.carrier),
            preimage: self.preimage.add(&other.preimage),
        }
    }

    pub fn sub(&self, other: &HijElt) -> HijElt {
        HijElt {
            carrier: self.carrier.sub(&other.carrier),
            preimage: self.preimage.sub(&other.preimage),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> HijElt {
        HijElt { carrier: self.carrier.scale(c), preimage: self.preimage.scale(c) }
    }
}

impl PartialEq for HijElt {
    /// Equality of module elements is equality of carriers; preimages are
    /// auxiliary.
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier
    }
}

impl Eq for HijElt {}

impl fmt::Display for HijElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.carrier)
    }
}

impl fmt::Debug for HijElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.carrier)
    }
}

/// An element of the sign-twisted group algebra `eps_I Z[W_ex] eps_J`, the
/// `v -> 1` image of the module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedGroupAlgebraElt {
    pub terms: BTreeMap<ExtAffElt, i64>,
}

impl SignedGroupAlgebraElt {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: i64) -> SignedGroupAlgebraElt {
        if c == 0 {
            return SignedGroupAlgebraElt { terms: BTreeMap::new() };
        }
        SignedGroupAlgebraElt {
            terms: self.terms.iter().map(|(x, a)| (x.clone(), a * c)).collect(),
        }
    }

    /// Checks the defining invariance: left multiplication by `t` in `I`
    /// negates the element, and likewise on the right for `J`.
    pub fn is_sign_invariant(
        &self,
        group: &WeylGroup,
        i_set: &SimpleSubset,
        j_set: &SimpleSubset,
    ) -> Result<bool> {
        for &i in i_set.indices() {
            let t = ExtAffElt::from_weyl(group.simple_reflection(i)?);
            let mut moved: BTreeMap<ExtAffElt, i64> = BTreeMap::new();
            for (x, c) in &self.terms {
                moved.insert(t.multiply(x)?, -c);
            }
            if moved != self.terms {
                return Ok(false);
            }
        }
        for &j in j_set.indices() {
            let s = ExtAffElt::from_weyl(group.simple_reflection(j)?);
            let mut moved: BTreeMap<ExtAffElt, i64> = BTreeMap::new();
            for (x, c) in &self.terms {
                moved.insert(x.multiply(&s)?, -c);
            }
            if moved != self.terms {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for SignedGroupAlgebraElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (x, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*[{x}]")?;
        }
        Ok(())
    }
}

/// The module `C_{w_I} H C_{w_J}` for a fixed pair of subsets, with its
/// cached projector elements and straightening tables.
pub struct DoubleCosetModule {
    kl: KlTable,
    i_set: SimpleSubset,
    j_set: SimpleSubset,
    c_wi: HeckeElt,
    c_wj: HeckeElt,
    r_ij: LaurentPoly,
    min_reps: Vec<WeylElt>,
    straighten_cap: usize,
    straighten_cache: Mutex<BTreeMap<(Weight, WeylElt), BTreeMap<Weight, LaurentPoly>>>,
    min_elt_cache: Mutex<BTreeMap<CosetIndex, ExtAffElt>>,
    basis_cache: Mutex<BTreeMap<(u8, CosetIndex), HijElt>>,
}

/// The projector `C_{w_K} = (-v)^{l(w_K)} sum_{y in W_K} eps_y v^{-2 l(y)}
/// T_y` for a subset `K` of the simple reflections.
pub fn c_w_subset(alg: &HeckeAlgebra, subset: &SimpleSubset) -> HeckeElt {
    let group = alg.group();
    let w_k = group.longest_element(subset);
    let lead = LaurentPoly::term((-1i64).pow((w_k.length() % 2) as u32), w_k.length() as i32);
    let mut out = HeckeElt::zero(group);
    for y in group.parabolic_elements(subset) {
        let coeff = lead.scale(y.sign()).shift(-2 * y.length() as i32);
        out.add_term(ExtAffElt::from_weyl(y), &coeff);
    }
    out
}

impl DoubleCosetModule {
    pub fn new(kl: KlTable, i_set: SimpleSubset, j_set: SimpleSubset) -> Result<Self> {
        let alg = kl.algebra().clone();
        let group = alg.group().clone();
        let ss = group.datum().ss_rank();
        for &i in i_set.indices().iter().chain(j_set.indices()) {
            if i >= ss {
                return input_err("subset index out of range");
            }
        }
        let c_wi = c_w_subset(&alg, &i_set);
        let c_wj = c_w_subset(&alg, &j_set);
        let r_i = projector_scalar(&alg, &c_wi, &group.longest_element(&i_set))?;
        let r_j = projector_scalar(&alg, &c_wj, &group.longest_element(&j_set))?;
        let r_ij = &r_i * &r_j;
        if r_ij.is_zero() {
            return internal_err("projection scalar r_IJ vanished");
        }
        let min_reps = group.min_double_coset_reps(&i_set, &j_set);
        Ok(DoubleCosetModule {
            kl,
            i_set,
            j_set,
            c_wi,
            c_wj,
            r_ij,
            min_reps,
            straighten_cap: DEFAULT_STRAIGHTEN_CAP,
            straighten_cache: Mutex::new(BTreeMap::new()),
            min_elt_cache: Mutex::new(BTreeMap::new()),
            basis_cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        self.kl.algebra()
    }

    pub fn kl_table(&self) -> &KlTable {
        &self.kl
    }

    pub fn group(&self) -> &WeylGroup {
        self.kl.algebra().group()
    }

    pub fn i_set(&self) -> &SimpleSubset {
        &self.i_set
    }

    pub fn j_set(&self) -> &SimpleSubset {
        &self.j_set
    }

    pub fn c_wi(&self) -> &HeckeElt {
        &self.c_wi
    }

    pub fn c_wj(&self) -> &HeckeElt {
        &self.c_wj
    }

    /// The scalar `r_IJ` with `chi(chi(h)) = r_IJ chi(h)`; always nonzero.
    pub fn r_ij(&self) -> &LaurentPoly {
        &self.r_ij
    }

    /// Minimal double-coset representatives in the finite Weyl group,
    /// ordered by a linear extension of the Bruhat order.
    pub fn min_reps(&self) -> &[WeylElt] {
        &self.min_reps
    }

    pub fn set_straighten_cap(&mut self, cap: usize) {
        self.straighten_cap = cap;
    }

    /// The projection `chi(h) = C_{w_I} h C_{w_J}`, retaining `h` as the
    /// preimage. The descent annihilation conditions are checked on every
    /// construction.
    pub fn chi(&self, h: &HeckeElt) -> Result<HijElt> {
        let alg = self.algebra();
        let carrier = alg.mul(&alg.mul(&self.c_wi, h)?, &self.c_wj)?;
        let elt = HijElt { carrier, preimage: h.clone() };
        self.check_invariant(&elt)?;
        Ok(elt)
    }

    fn check_invariant(&self, e: &HijElt) -> Result<()> {
        let alg = self.algebra();
        let group = self.group();
        for &i in self.i_set.indices() {
            let t = alg.finite_t(&group.simple_reflection(i)?);
            if alg.mul(&t, &e.carrier)? != e.carrier.neg() {
                return internal_err(format!("left annihilation fails at s{}", i + 1));
            }
        }
        for &j in self.j_set.indices() {
            let s = alg.finite_t(&group.simple_reflection(j)?);
            if alg.mul(&e.carrier, &s)? != e.carrier.neg() {
                return internal_err(format!("right annihilation fails at s{}", j + 1));
            }
        }
        Ok(())
    }

    pub fn zero(&self) -> HijElt {
        HijElt {
            carrier: HeckeElt::zero(self.group()),
            preimage: HeckeElt::zero(self.group()),
        }
    }

    /// Validates and builds a basis index.
    pub fn coset_index(&self, lam: Weight, z: WeylElt) -> Result<CosetIndex> {
        if !self.min_reps.contains(&z) {
            return input_err(format!("{z} is not a minimal (I,J) double coset representative"));
        }
        let k_set = self.group().parabolic_intersection(&z, &self.i_set, &self.j_set)?;
        if !self.group().datum().is_dominant_for(&lam, &k_set) {
            return input_err(format!("{lam} is not dominant for {k_set}"));
        }
        Ok(CosetIndex { z, lam })
    }

    /// `m_{lambda,z}`, the minimal-length element of `W_I t_lambda z W_J`.
    pub fn minimal_rep(&self, idx: &CosetIndex) -> Result<ExtAffElt> {
        if let Some(m) = self.min_elt_cache.lock().unwrap().get(idx) {
            return Ok(m.clone());
        }
        let m = minimal_length_rep(self.group(), &idx.lam, &idx.z, &self.i_set, &self.j_set)?;
        self.min_elt_cache.lock().unwrap().insert(idx.clone(), m.clone());
        Ok(m)
    }

    /// `T_{lambda,z} = chi(T_{m_{lambda,z}})`.
    pub fn standard_basis_elt(&self, idx: &CosetIndex) -> Result<HijElt> {
        if let Some(e) = self.basis_cache.lock().unwrap().get(&(0, idx.clone())) {
            return Ok(e.clone());
        }
        let m = self.minimal_rep(idx)?;
        let e = self.chi(&HeckeElt::basis(m))?;
        self.basis_cache.lock().unwrap().insert((0, idx.clone()), e.clone());
        Ok(e)
    }

    /// `chi(theta_lambda T_z)`.
    pub fn bernstein_basis_elt(&self, idx: &CosetIndex) -> Result<HijElt> {
        if let Some(e) = self.basis_cache.lock().unwrap().get(&(1, idx.clone())) {
            return Ok(e.clone());
        }
        let alg = self.algebra();
        let h = alg.mul(&alg.theta(&idx.lam)?, &alg.finite_t(&idx.z))?;
        let e = self.chi(&h)?;
        self.basis_cache.lock().unwrap().insert((1, idx.clone()), e.clone());
        Ok(e)
    }

    /// `C'_{lambda,z} = chi(C'_{m_{lambda,z}})`.
    pub fn kl_basis_elt(&self, idx: &CosetIndex) -> Result<HijElt> {
        if let Some(e) = self.basis_cache.lock().unwrap().get(&(2, idx.clone())) {
            return Ok(e.clone());
        }
        let m = self.minimal_rep(idx)?;
        let e = self.chi(&self.kl.c_prime(&m)?)?;
        self.basis_cache.lock().unwrap().insert((2, idx.clone()), e.clone());
        Ok(e)
    }

    /// `chi(C'_x)`: zero unless `x` is the minimal element of its double
    /// coset, in which case it is the corresponding KL basis element.
    pub fn chi_cprime_vanishing(&self, x: &ExtAffElt) -> Result<HijElt> {
        self.chi(&self.kl.c_prime(x)?)
    }

    /// The bar involution of the module, acting on carrier and preimage.
    pub fn bar(&self, e: &HijElt) -> Result<HijElt> {
        let alg = self.algebra();
        let out = HijElt {
            carrier: alg.bar(&e.carrier)?,
            preimage: alg.bar(&e.preimage)?,
        };
        self.check_invariant(&out)?;
        Ok(out)
    }

    /// Rewrites `chi(theta_mu T_z)` as an `A`-combination of
    /// `chi(theta_lambda T_z)` with every `lambda` dominant for the
    /// parabolic intersection at `z`.
    pub fn straighten(&self, mu: &Weight, z: &WeylElt) -> Result<BTreeMap<Weight, LaurentPoly>> {
        let key = (mu.clone(), z.clone());
        if let Some(hit) = self.straighten_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let group = self.group();
        let datum = group.datum().clone();
        let k_set = group.parabolic_intersection(z, &self.i_set, &self.j_set)?;
        let deficiency = |w: &Weight| -> i64 {
            k_set
                .indices()
                .iter()
                .map(|&k| (-datum.simple_coroot(k).pair(w)).max(0))
                .sum()
        };
        let v2 = LaurentPoly::v_pow(2);
        let v21 = &v2 - &LaurentPoly::one();
        let mut work: BTreeMap<Weight, LaurentPoly> = BTreeMap::new();
        work.insert(mu.clone(), LaurentPoly::one());
        let mut rewrites = 0usize;
        loop {
            // Rewrite the entry with the largest dominance deficiency.
            let pick = work
                .iter()
                .filter(|(w, _)| deficiency(w) > 0)
                .max_by_key(|(w, _)| (deficiency(w), std::cmp::Reverse((*w).clone())))
                .map(|(w, _)| w.clone());
            let Some(nu) = pick else { break };
            rewrites += 1;
            if rewrites > self.straighten_cap {
                return internal_err("straightening exceeded its rewrite cap");
            }
            let c = work.remove(&nu).expect("picked entry");
            let k = *k_set
                .indices()
                .iter()
                .find(|&&k| datum.simple_coroot(k).pair(&nu) < 0)
                .expect("deficient weight has a negative pairing");
            let d = -datum.simple_coroot(k).pair(&nu);
            let alpha = datum.simple_root(k).clone();
            let s_nu = datum.reflect(k, &nu)?;
            add_weight_term(&mut work, s_nu.clone(), &(&c * &v2));
            for j in 1..d {
                add_weight_term(&mut work, s_nu.sub(&alpha.scaled(j)), &(&c * &v21));
            }
        }
        self.straighten_cache.lock().unwrap().insert(key, work.clone());
        Ok(work)
    }

    /// Coordinates of an element in the standard basis `{T_{lambda,z}}`,
    /// read off the preimage through the sign rule
    /// `chi(T_x) = eps_x eps_m T_{lambda,z}` for `x` in `W_I m W_J`.
    pub fn standard_coords(&self, e: &HijElt) -> Result<BTreeMap<CosetIndex, LaurentPoly>> {
        let mut out: BTreeMap<CosetIndex, LaurentPoly> = BTreeMap::new();
        for (x, c) in e.preimage.iter() {
            let (lam, z) = x.canonical_rep(&self.i_set, &self.j_set)?;
            let idx = CosetIndex { z, lam };
            let m = self.minimal_rep(&idx)?;
            let signed = c.scale(x.sign() * m.sign());
            add_index_term(&mut out, idx, &signed);
        }
        Ok(out)
    }

    /// Coordinates in the Bernstein basis, by commuting thetas through the
    /// finite parts, absorbing parabolic factors as signs, and straightening
    /// onto dominant weights.
    pub fn to_bernstein_coords(&self, e: &HijElt) -> Result<BTreeMap<CosetIndex, LaurentPoly>> {
        let alg = self.algebra();
        let group = self.group();
        let b = alg.to_bernstein(&e.preimage)?;
        let mut out: BTreeMap<CosetIndex, LaurentPoly> = BTreeMap::new();
        for ((lam, w), c) in b.iter() {
            let (w1, z, w2) = group.double_coset_decompose(w, &self.i_set, &self.j_set)?;
            let sign_w2 = w2.sign();
            for ((y, mu), ck) in self.theta_right_of_word(lam, w1.word())? {
                let total = c * &ck.scale(y.sign() * sign_w2);
                for (lam_dom, p) in self.straighten(&mu, &z)? {
                    let idx = CosetIndex { z: z.clone(), lam: lam_dom };
                    add_index_term(&mut out, idx, &(&total * &p));
                }
            }
        }
        Ok(out)
    }

    /// `theta_lam T_{word}` written as a combination of `T_y theta_mu` with
    /// `y` inside the parabolic subgroup generated by the word's letters.
    fn theta_right_of_word(
        &self,
        lam: &Weight,
        word: &[usize],
    ) -> Result<BTreeMap<(WeylElt, Weight), LaurentPoly>> {
        let group = self.group();
        let alg = self.algebra();
        let mut out = BTreeMap::new();
        if word.is_empty() {
            out.insert((group.identity(), lam.clone()), LaurentPoly::one());
            return Ok(out);
        }
        let s = word[0];
        let rest = &word[1..];
        let past = alg.theta_past_ts(lam, s)?;
        let refl = group.simple_reflection(s)?;
        let v2 = LaurentPoly::v_pow(2);
        let v21 = &v2 - &LaurentPoly::one();
        // T_s * (theta_{s(lam)} T_rest)
        for ((y, mu), c) in self.theta_right_of_word(&past.reflected, rest)? {
            let sy = refl.multiply(&y)?;
            if sy.length() > y.length() {
                add_pair_term(&mut out, (sy, mu), &c);
            } else {
                add_pair_term(&mut out, (sy, mu.clone()), &(&c * &v2));
                add_pair_term(&mut out, (y, mu), &(&c * &v21));
            }
        }
        // (v^2 - 1) * sum sign * theta_nu T_rest
        for (nu, sign) in &past.geometric {
            for ((y, mu), c) in self.theta_right_of_word(nu, rest)? {
                add_pair_term(&mut out, (y, mu), &(&c * &v21.scale(*sign)));
            }
        }
        Ok(out)
    }

    /// Coordinates in the KL basis `{C'_{lambda,z}}`, by eliminating against
    /// the unitriangular standard-basis expansions.
    pub fn kl_coords(&self, e: &HijElt) -> Result<BTreeMap<CosetIndex, LaurentPoly>> {
        let mut rem = self.standard_coords(e)?;
        let mut out: BTreeMap<CosetIndex, LaurentPoly> = BTreeMap::new();
        let mut rounds = 0usize;
        while !rem.is_empty() {
            rounds += 1;
            if rounds > KL_COORDS_CAP {
                return internal_err("KL coordinate elimination did not terminate");
            }
            // Pivot at a maximal-length minimal representative.
            let (idx, m) = {
                let mut best: Option<(CosetIndex, ExtAffElt)> = None;
                for idx in rem.keys() {
                    let m = self.minimal_rep(idx)?;
                    if best
                        .as_ref()
                        .map_or(true, |(_, bm)| m.length() > bm.length())
                    {
                        best = Some((idx.clone(), m));
                    }
                }
                best.expect("nonempty remainder")
            };
            let c = rem.remove(&idx).expect("pivot exists");
            // C'_{lambda,z} has coefficient v^-l(m) at T_{lambda,z}.
            let klc = c.shift(m.length() as i32);
            let expansion = self.standard_coords(&self.kl_basis_elt(&idx)?)?;
            for (jdx, p) in expansion {
                if jdx == idx {
                    continue;
                }
                add_index_term(&mut rem, jdx, &(&klc * &p).scale(-1));
            }
            add_index_term(&mut out, idx, &klc);
        }
        Ok(out)
    }

    /// Expands coordinates back through the chosen basis.
    pub fn expand_standard(&self, coords: &BTreeMap<CosetIndex, LaurentPoly>) -> Result<HijElt> {
        let mut out = self.zero();
        for (idx, c) in coords {
            out = out.add(&self.standard_basis_elt(idx)?.scale(c));
        }
        Ok(out)
    }

    pub fn expand_bernstein(&self, coords: &BTreeMap<CosetIndex, LaurentPoly>) -> Result<HijElt> {
        let mut out = self.zero();
        for (idx, c) in coords {
            out = out.add(&self.bernstein_basis_elt(idx)?.scale(c));
        }
        Ok(out)
    }

    pub fn expand_kl(&self, coords: &BTreeMap<CosetIndex, LaurentPoly>) -> Result<HijElt> {
        let mut out = self.zero();
        for (idx, c) in coords {
            out = out.add(&self.kl_basis_elt(idx)?.scale(c));
        }
        Ok(out)
    }

    /// Bernstein coordinates regrouped by the graded piece `z`.
    pub fn filtration_coords(
        &self,
        e: &HijElt,
    ) -> Result<BTreeMap<WeylElt, BTreeMap<Weight, LaurentPoly>>> {
        let coords = self.to_bernstein_coords(e)?;
        let mut out: BTreeMap<WeylElt, BTreeMap<Weight, LaurentPoly>> = BTreeMap::new();
        for (idx, c) in coords {
            out.entry(idx.z).or_default().insert(idx.lam, c);
        }
        Ok(out)
    }

    /// Membership in the filtration piece spanned by graded pieces at
    /// representatives `y <= z`.
    pub fn in_filtration_leq(&self, e: &HijElt, z: &WeylElt) -> Result<bool> {
        let groups = self.filtration_coords(e)?;
        for y in groups.keys() {
            if !y.bruhat_leq(z) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The raw `v -> 1` image of the carrier.
    pub fn specialize_v1(&self, e: &HijElt) -> SignedGroupAlgebraElt {
        SignedGroupAlgebraElt { terms: e.carrier.eval_at_one() }
    }

    /// The `v -> 1` image normalized so that `chi(h)` maps onto
    /// `eps_I h|_{v=1} eps_J` exactly (the raw image carries the sign
    /// `(-1)^{l(w_I)+l(w_J)}` from the projectors).
    pub fn specialize_v1_normalized(&self, e: &HijElt) -> SignedGroupAlgebraElt {
        let li = self.group().longest_element(&self.i_set).length();
        let lj = self.group().longest_element(&self.j_set).length();
        let sign = if (li + lj) % 2 == 0 { 1 } else { -1 };
        self.specialize_v1(e).scale(sign)
    }

    /// All valid indices with translation coordinates in `[-bound, bound]`.
    pub fn indices_in_weight_window(&self, bound: i64) -> Result<Vec<CosetIndex>> {
        let group = self.group();
        let datum = group.datum().clone();
        let mut out = Vec::new();
        for z in &self.min_reps {
            let k_set = group.parabolic_intersection(z, &self.i_set, &self.j_set)?;
            for lam in datum.weight_box(bound) {
                if datum.is_dominant_for(&lam, &k_set) {
                    out.push(CosetIndex { z: z.clone(), lam });
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Z-rank of the specialized images of the given elements, computed over
    /// the union of their supports.
    pub fn specialized_rank(&self, elts: &[HijElt]) -> usize {
        let mut columns: Vec<ExtAffElt> = Vec::new();
        let images: Vec<SignedGroupAlgebraElt> =
            elts.iter().map(|e| self.specialize_v1(e)).collect();
        for img in &images {
            for x in img.terms.keys() {
                if !columns.contains(x) {
                    columns.push(x.clone());
                }
            }
        }
        let rows: Vec<Vec<i64>> = images
            .iter()
            .map(|img| {
                columns
                    .iter()
                    .map(|x| img.terms.get(x).copied().unwrap_or(0))
                    .collect()
            })
            .collect();
        crate::util::integer_matrix_rank(&rows)
    }
}

fn projector_scalar(alg: &HeckeAlgebra, c_w: &HeckeElt, w_k: &WeylElt) -> Result<LaurentPoly> {
    let square = alg.mul(c_w, c_w)?;
    let top = ExtAffElt::from_weyl(w_k.clone());
    let denom = c_w.coeff(&top);
    let Some((c, k)) = denom.as_monomial() else {
        return internal_err("projector leading coefficient is not a monomial");
    };
    let r = square
        .coeff(&top)
        .div_monomial(c, k)
        .ok_or_else(|| crate::error::Error::Internal("projector scalar is not exact".into()))?;
    if square != c_w.scale(&r) {
        return internal_err("projector square is not a scalar multiple of the projector");
    }
    Ok(r)
}

fn add_weight_term(map: &mut BTreeMap<Weight, LaurentPoly>, w: Weight, c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(w).or_default();
    *entry += c;
    if entry.is_zero() {
        let dead: Vec<Weight> = map
            .iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(k, _)| k.clone())
            .collect();
        for k in dead {
            map.remove(&k);
        }
    }
}

fn add_index_term(map: &mut BTreeMap<CosetIndex, LaurentPoly>, idx: CosetIndex, c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    match map.entry(idx) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}

fn add_pair_term(
    map: &mut BTreeMap<(WeylElt, Weight), LaurentPoly>,
    key: (WeylElt, Weight),
    c: &LaurentPoly,
) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}
