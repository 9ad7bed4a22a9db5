//! The extended affine Weyl group `W_ex = X(T) x| W`: semidirect-product
//! arithmetic, the Iwahori-Matsumoto length, reduced words over the affine
//! Coxeter generators, the length-zero subgroup, extended Bruhat order, and
//! the double-coset representative calculus used by the coset modules.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::{input_err, internal_err, Result};
use crate::root_datum::{SimpleSubset, Weight};
use crate::weyl::{WeylElt, WeylGroup};

/// A letter of the affine Coxeter generating set: the finite simple
/// reflections plus one affine reflection per irreducible component.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AffLetter {
    Simple(usize),
    Affine(usize),
}

impl fmt::Display for AffLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffLetter::Simple(i) => write!(f, "s{}", i + 1),
            AffLetter::Affine(0) => write!(f, "s0"),
            AffLetter::Affine(c) => write!(f, "s0:{}", c + 1),
        }
    }
}

struct AffLetterData {
    root_idx: usize,
    refl: WeylElt,
}

type EaKey = (Vec<i64>, u32);

#[derive(Default)]
pub(crate) struct AffineData {
    letters: OnceLock<Vec<AffLetterData>>,
    waf_bruhat: Mutex<HashMap<(EaKey, EaKey), bool>>,
}

/// Finishes group construction: realizes the affine letter of each component
/// as `t_theta s_theta` where the coroot of `theta` is the highest coroot,
/// and checks it has length one.
pub(crate) fn init_affine(group: &WeylGroup) -> Result<()> {
    let datum = group.datum().clone();
    let mut letters = Vec::new();
    for c in 0..datum.components().len() {
        let root_idx = datum.affine_root_index(c);
        let refl = group.root_reflection(root_idx);
        letters.push(AffLetterData { root_idx, refl });
    }
    group
        .data
        .affine
        .letters
        .set(letters)
        .map_err(|_| crate::error::Error::Internal("affine data initialized twice".into()))?;
    for c in 0..datum.components().len() {
        let s0 = ExtAffElt::letter(group, AffLetter::Affine(c));
        if s0.length() != 1 {
            return internal_err(format!(
                "affine letter of component {c} has length {}, expected 1",
                s0.length()
            ));
        }
    }
    Ok(())
}

/// An element `t_lambda w` of the extended affine Weyl group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffElt {
    lam: Weight,
    w: WeylElt,
}

impl fmt::Display for ExtAffElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lam.is_zero() {
            write!(f, "{}", self.w)
        } else if self.w.is_identity() {
            write!(f, "t{}", self.lam)
        } else {
            write!(f, "t{} {}", self.lam, self.w)
        }
    }
}

impl fmt::Debug for ExtAffElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl ExtAffElt {
    pub fn identity(group: &WeylGroup) -> Self {
        ExtAffElt { lam: Weight::zero(group.datum().rank()), w: group.identity() }
    }

    pub fn translation(group: &WeylGroup, lam: Weight) -> Self {
        ExtAffElt { lam, w: group.identity() }
    }

    pub fn from_weyl(w: WeylElt) -> Self {
        ExtAffElt { lam: Weight::zero(w.group().datum().rank()), w }
    }

    pub fn new(lam: Weight, w: WeylElt) -> Self {
        ExtAffElt { lam, w }
    }

    /// The affine or finite Coxeter generator as a group element.
    pub fn letter(group: &WeylGroup, letter: AffLetter) -> Self {
        match letter {
            AffLetter::Simple(i) => {
                Self::from_weyl(group.simple_reflection(i).expect("valid simple index"))
            }
            AffLetter::Affine(c) => {
                let data = &group.data.affine.letters.get().expect("affine data")[c];
                let theta = group.datum().positive_roots()[data.root_idx].root.clone();
                ExtAffElt { lam: theta, w: data.refl.clone() }
            }
        }
    }

    /// All Coxeter letters of `S_af`, simple ones first.
    pub fn all_letters(group: &WeylGroup) -> Vec<AffLetter> {
        let mut out: Vec<AffLetter> =
            (0..group.datum().ss_rank()).map(AffLetter::Simple).collect();
        out.extend((0..group.datum().components().len()).map(AffLetter::Affine));
        out
    }

    pub fn group(&self) -> &WeylGroup {
        self.w.group()
    }

    pub fn translation_part(&self) -> &Weight {
        &self.lam
    }

    pub fn finite_part(&self) -> &WeylElt {
        &self.w
    }

    pub fn is_identity(&self) -> bool {
        self.lam.is_zero() && self.w.is_identity()
    }

    /// `(t_lam w)(t_mu u) = t_{lam + w(mu)} (w u)`.
    pub fn multiply(&self, other: &ExtAffElt) -> Result<ExtAffElt> {
        let w = self.w.multiply(&other.w)?;
        let lam = self.lam.add(&self.w.apply(&other.lam));
        Ok(ExtAffElt { lam, w })
    }

    /// `(t_lam w)^-1 = t_{-w^-1(lam)} w^-1`.
    pub fn inverse(&self) -> ExtAffElt {
        let w_inv = self.w.inverse();
        ExtAffElt { lam: w_inv.apply(&self.lam).neg(), w: w_inv }
    }

    /// The Iwahori-Matsumoto length: summed over positive roots `a`,
    /// `|<lam, a^v>|` when `w^-1(a) > 0` and `|<lam, a^v> - 1|` otherwise.
    pub fn length(&self) -> u64 {
        let datum = self.group().datum();
        let w_inv = self.w.inverse();
        let mut total: u64 = 0;
        for (r, rd) in datum.positive_roots().iter().enumerate() {
            let d = rd.coroot.pair(&self.lam);
            if w_inv.act_on_root(r as i32 + 1) > 0 {
                total += d.unsigned_abs();
            } else {
                total += (d - 1).unsigned_abs();
            }
        }
        total
    }

    pub fn sign(&self) -> i64 {
        if self.length() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// True iff the element has length zero (lies in the group `Gamma`).
    pub fn is_gamma(&self) -> bool {
        self.length() == 0
    }

    pub fn left_mul_letter(&self, letter: AffLetter) -> ExtAffElt {
        Self::letter(self.group(), letter)
            .multiply(self)
            .expect("same group")
    }

    pub fn right_mul_letter(&self, letter: AffLetter) -> ExtAffElt {
        self.multiply(&Self::letter(self.group(), letter))
            .expect("same group")
    }

    pub fn has_left_descent(&self, letter: AffLetter) -> bool {
        self.left_mul_letter(letter).length() < self.length()
    }

    pub fn has_right_descent(&self, letter: AffLetter) -> bool {
        self.right_mul_letter(letter).length() < self.length()
    }

    pub fn left_descent_letter(&self) -> Option<AffLetter> {
        Self::all_letters(self.group())
            .into_iter()
            .find(|&l| self.has_left_descent(l))
    }

    /// Writes the element as `y * gamma` with `y` in the affine Weyl group
    /// and `gamma` of length zero, by peeling left descents.
    pub fn waf_gamma_decompose(&self) -> Result<(ExtAffElt, ExtAffElt)> {
        let word = self.reduced_word()?;
        let mut y = ExtAffElt::identity(self.group());
        for &l in &word.letters {
            y = y.right_mul_letter(l);
        }
        Ok((y, word.gamma))
    }

    /// A reduced word over `S_af` followed by the length-zero part:
    /// `self = letters[0] * ... * letters[k-1] * gamma`.
    pub fn reduced_word(&self) -> Result<AffineWord> {
        let mut letters = Vec::new();
        let mut cur = self.clone();
        let mut len = cur.length();
        while len > 0 {
            let Some(l) = cur.left_descent_letter() else {
                return internal_err(format!(
                    "descent peeling stalled at {cur} of length {len}"
                ));
            };
            letters.push(l);
            cur = cur.left_mul_letter(l);
            let new_len = cur.length();
            if new_len != len - 1 {
                return internal_err("left descent did not reduce length by one");
            }
            len = new_len;
        }
        Ok(AffineWord { letters, gamma: cur })
    }

    /// Extended Bruhat order: comparable only within a common `Gamma`-coset,
    /// where it is the Coxeter Bruhat order of the affine Weyl group.
    pub fn bruhat_leq(&self, other: &ExtAffElt) -> Result<bool> {
        if self == other {
            return Ok(true);
        }
        let (ax, gx) = self.waf_gamma_decompose()?;
        let (ay, gy) = other.waf_gamma_decompose()?;
        if gx != gy {
            return Ok(false);
        }
        Ok(waf_bruhat_leq(&ax, &ay))
    }

    fn key(&self) -> EaKey {
        (self.lam.0.clone(), self.w.index())
    }

    /// All elements `u <= self` in the extended Bruhat order, via subwords of
    /// one reduced word.
    pub fn bruhat_ideal(&self) -> Result<Vec<ExtAffElt>> {
        let word = self.reduced_word()?;
        let n = word.letters.len();
        assert!(n <= 24, "bruhat_ideal limited to short elements");
        let mut seen: HashSet<ExtAffElt> = HashSet::new();
        for mask in 0u32..(1 << n) {
            let mut u = ExtAffElt::identity(self.group());
            for (k, &l) in word.letters.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    u = u.right_mul_letter(l);
                }
            }
            seen.insert(u.multiply(&word.gamma)?);
        }
        let mut out: Vec<ExtAffElt> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// The unique representative `t_lambda z` of `W_I self W_J` with `z` a
    /// minimal double-coset representative and `lambda` dominant for the
    /// parabolic intersection `W_I meet z W_J z^-1`.
    pub fn canonical_rep(
        &self,
        i_set: &SimpleSubset,
        j_set: &SimpleSubset,
    ) -> Result<(Weight, WeylElt)> {
        let group = self.group();
        let (w1, z, _) = group.double_coset_decompose(&self.w, i_set, j_set)?;
        let lam = w1.inverse().apply(&self.lam);
        let k_set = group.parabolic_intersection(&z, i_set, j_set)?;
        let (mu, _) = group.datum().dominant_representative(&lam, &k_set)?;
        Ok((mu, z))
    }
}

/// A reduced expression over `S_af` together with the trailing length-zero
/// element.
pub struct AffineWord {
    pub letters: Vec<AffLetter>,
    pub gamma: ExtAffElt,
}

impl AffineWord {
    pub fn evaluate(&self, group: &WeylGroup) -> Result<ExtAffElt> {
        let mut x = ExtAffElt::identity(group);
        for &l in &self.letters {
            x = x.right_mul_letter(l);
        }
        x.multiply(&self.gamma)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for AffineWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        if !self.gamma.is_identity() {
            if !self.letters.is_empty() {
                write!(f, " ")?;
            }
            write!(f, "g:{}", self.gamma)?;
        } else if self.letters.is_empty() {
            write!(f, "e")?;
        }
        Ok(())
    }
}

/// Bruhat order inside the affine Weyl group, by the descent-lifting
/// recurrence with a shared memo table.
fn waf_bruhat_leq(u: &ExtAffElt, w: &ExtAffElt) -> bool {
    if u == w {
        return true;
    }
    let (lu, lw) = (u.length(), w.length());
    if lu >= lw {
        return false;
    }
    let memo = &u.group().data.affine.waf_bruhat;
    let key = (u.key(), w.key());
    if let Some(&ans) = memo.lock().unwrap().get(&key) {
        return ans;
    }
    let l = w.left_descent_letter().expect("positive length has a descent");
    let sw = w.left_mul_letter(l);
    let su = u.left_mul_letter(l);
    let ans = if su.length() < lu {
        waf_bruhat_leq(&su, &sw)
    } else {
        waf_bruhat_leq(u, &sw)
    };
    memo.lock().unwrap().insert(key, ans);
    ans
}

/// The unique minimal-length element of the double coset
/// `W_I t_lambda z W_J`, found by greedy descent.
pub fn minimal_length_rep(
    group: &WeylGroup,
    lam: &Weight,
    z: &WeylElt,
    i_set: &SimpleSubset,
    j_set: &SimpleSubset,
) -> Result<ExtAffElt> {
    let (_, zmin, _) = group.double_coset_decompose(z, i_set, j_set)?;
    if &zmin != z {
        return input_err("z is not a minimal double coset representative");
    }
    let k_set = group.parabolic_intersection(z, i_set, j_set)?;
    if !group.datum().is_dominant_for(lam, &k_set) {
        return input_err(format!(
            "weight {lam} is not dominant for the parabolic intersection {k_set}"
        ));
    }
    let mut m = ExtAffElt::new(lam.clone(), z.clone());
    'descend: loop {
        let len = m.length();
        for &i in i_set.indices() {
            let s = ExtAffElt::from_weyl(group.simple_reflection(i)?);
            let sm = s.multiply(&m)?;
            if sm.length() < len {
                m = sm;
                continue 'descend;
            }
        }
        for &j in j_set.indices() {
            let s = ExtAffElt::from_weyl(group.simple_reflection(j)?);
            let ms = m.multiply(&s)?;
            if ms.length() < len {
                m = ms;
                continue 'descend;
            }
        }
        return Ok(m);
    }
}

/// All length-zero elements. For a lattice with central torus directions the
/// group is infinite and a coordinate bound on the translation part is
/// required; `bound: None` then reports an input error.
pub fn gamma_elements(group: &WeylGroup, bound: Option<i64>) -> Result<Vec<ExtAffElt>> {
    let datum = group.datum();
    let ss = datum.ss_rank();
    let rows: Vec<Vec<i64>> = (0..ss).map(|i| datum.simple_coroot(i).0.clone()).collect();
    let mut out = Vec::new();
    for w in group.elements() {
        let w_inv = w.inverse();
        let rhs: Vec<i64> = (0..ss)
            .map(|i| i64::from(w_inv.act_on_root(i as i32 + 1) < 0))
            .collect();
        let Some(sol) = crate::util::solve_integer_system(&rows, &rhs) else {
            continue;
        };
        if sol.kernel.is_empty() {
            let cand = ExtAffElt::new(Weight(sol.particular), w.clone());
            if cand.is_gamma() {
                out.push(cand);
            }
            continue;
        }
        let Some(bound) = bound else {
            return input_err(
                "the length-zero subgroup is infinite; supply a coordinate bound for its translations",
            );
        };
        // Enumerate kernel combinations landing inside the coordinate box.
        let base = Weight(sol.particular);
        let c = bound + base.max_abs_coord() + 1;
        let dim = sol.kernel.len();
        let mut coeffs = vec![-c; dim];
        loop {
            let mut lam = base.clone();
            for (k, &q) in coeffs.iter().enumerate() {
                lam = lam.add(&Weight(sol.kernel[k].clone()).scaled(q));
            }
            if lam.max_abs_coord() <= bound {
                let cand = ExtAffElt::new(lam, w.clone());
                if cand.is_gamma() {
                    out.push(cand);
                }
            }
            let mut k = 0;
            loop {
                coeffs[k] += 1;
                if coeffs[k] <= c {
                    break;
                }
                coeffs[k] = -c;
                k += 1;
                if k == dim {
                    break;
                }
            }
            if k == dim {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All elements of length at most `max_len`, with the length-zero part
/// ranging over the whole group `Gamma` (which must be finite here; see
/// [`enumerate_window_bounded`] otherwise).
pub fn enumerate_window(group: &WeylGroup, max_len: u64) -> Result<Vec<ExtAffElt>> {
    enumerate_window_impl(group, max_len, None)
}

/// Window enumeration for data with infinite `Gamma`: its translations are
/// restricted to the given coordinate box.
pub fn enumerate_window_bounded(
    group: &WeylGroup,
    max_len: u64,
    gamma_bound: i64,
) -> Result<Vec<ExtAffElt>> {
    enumerate_window_impl(group, max_len, Some(gamma_bound))
}

fn enumerate_window_impl(
    group: &WeylGroup,
    max_len: u64,
    gamma_bound: Option<i64>,
) -> Result<Vec<ExtAffElt>> {
    let gammas = gamma_elements(group, gamma_bound)?;
    let letters = ExtAffElt::all_letters(group);
    let mut ball: Vec<ExtAffElt> = vec![ExtAffElt::identity(group)];
    let mut seen: HashSet<ExtAffElt> = ball.iter().cloned().collect();
    let mut frontier = ball.clone();
    for len in 1..=max_len {
        let mut next = Vec::new();
        for x in &frontier {
            for &l in &letters {
                let y = x.right_mul_letter(l);
                if y.length() == len && !seen.contains(&y) {
                    seen.insert(y.clone());
                    next.push(y);
                }
            }
        }
        ball.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::with_capacity(ball.len() * gammas.len());
    for y in &ball {
        for g in &gammas {
            out.push(y.multiply(g)?);
        }
    }
    out.sort_by_key(|x| (x.length(), x.key()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::RootDatum;

    fn a1() -> WeylGroup {
        WeylGroup::for_preset("A1").unwrap()
    }

    fn a2() -> WeylGroup {
        WeylGroup::for_preset("A2").unwrap()
    }

    fn t(group: &WeylGroup, coords: &[i64]) -> ExtAffElt {
        ExtAffElt::translation(group, Weight(coords.to_vec()))
    }

    #[test]
    fn product_rule_examples() {
        let g = a1();
        let omega = Weight(vec![1]);
        // Translations commute.
        let a = t(&g, &[1]).multiply(&t(&g, &[2])).unwrap();
        assert_eq!(a, t(&g, &[3]));
        // s t_omega = t_{-omega} s.
        let s = ExtAffElt::from_weyl(g.simple_reflection(0).unwrap());
        let lhs = s.multiply(&t(&g, &[1])).unwrap();
        let rhs = ExtAffElt::new(omega.neg(), g.simple_reflection(0).unwrap());
        assert_eq!(lhs, rhs);
        // (t_omega s)^2 = 1.
        let gamma = t(&g, &[1]).multiply(&s).unwrap();
        assert!(gamma.multiply(&gamma).unwrap().is_identity());
        // Inverses.
        for x in enumerate_window(&g, 3).unwrap() {
            assert!(x.multiply(&x.inverse()).unwrap().is_identity());
            assert!(x.inverse().multiply(&x).unwrap().is_identity());
        }
    }

    #[test]
    fn length_examples() {
        let g = a1();
        assert_eq!(ExtAffElt::identity(&g).length(), 0);
        assert_eq!(t(&g, &[1]).length(), 1);
        let s = ExtAffElt::from_weyl(g.simple_reflection(0).unwrap());
        assert_eq!(t(&g, &[1]).multiply(&s).unwrap().length(), 0);
        // A2: the translation by the highest root has length 4.
        let g = a2();
        let theta = Weight(vec![1, 1]);
        assert_eq!(ExtAffElt::translation(&g, theta).length(), 4);
    }

    #[test]
    fn gamma_and_decomposition() {
        let g = a1();
        // Gamma has two elements: 1 and t_omega s.
        let gammas = gamma_elements(&g, None).unwrap();
        assert_eq!(gammas.len(), 2);
        assert!(gammas.iter().any(|x| x.is_identity()));
        let s = ExtAffElt::from_weyl(g.simple_reflection(0).unwrap());
        let gamma = t(&g, &[1]).multiply(&s).unwrap();
        assert!(gammas.contains(&gamma));

        // t_omega = y gamma with y in W_af; recomputing y gamma gives back x.
        let x = t(&g, &[1]);
        let (y, gam) = x.waf_gamma_decompose().unwrap();
        assert_eq!(y.multiply(&gam).unwrap(), x);
        assert_eq!(gam, gamma);
        assert_eq!(gam.length(), 0);

        // t_alpha lies in the affine Weyl group already.
        let x = t(&g, &[2]);
        let (y, gam) = x.waf_gamma_decompose().unwrap();
        assert_eq!(y, x);
        assert!(gam.is_identity());

        // Finite elements decompose trivially.
        let x = ExtAffElt::from_weyl(g.simple_reflection(0).unwrap());
        let (y, gam) = x.waf_gamma_decompose().unwrap();
        assert_eq!(y, x);
        assert!(gam.is_identity());

        // Gamma counts per preset: A2 has 3, B2 has 2, G2 has 1.
        assert_eq!(gamma_elements(&a2(), None).unwrap().len(), 3);
        assert_eq!(gamma_elements(&WeylGroup::for_preset("B2").unwrap(), None).unwrap().len(), 2);
        assert_eq!(gamma_elements(&WeylGroup::for_preset("G2").unwrap(), None).unwrap().len(), 1);
        // GL2: infinite Gamma needs a bound; box of radius 1 holds
        // t_{(k,k)} for k in {-1,0,1} and t_{(k+1,k)}s for k in {-1,0}.
        let gl2 = WeylGroup::new(RootDatum::preset("GL2").unwrap()).unwrap();
        assert!(gamma_elements(&gl2, None).is_err());
        assert_eq!(gamma_elements(&gl2, Some(1)).unwrap().len(), 5);
    }

    #[test]
    fn reduced_word_examples() {
        let g = a1();
        let s = ExtAffElt::from_weyl(g.simple_reflection(0).unwrap());
        let gamma = t(&g, &[1]).multiply(&s).unwrap();
        let w = gamma.reduced_word().unwrap();
        assert!(w.letters.is_empty());
        assert_eq!(w.gamma, gamma);

        // t_alpha = s0 s.
        let x = t(&g, &[2]);
        let w = x.reduced_word().unwrap();
        assert_eq!(w.letters, vec![AffLetter::Affine(0), AffLetter::Simple(0)]);
        assert!(w.gamma.is_identity());
        assert_eq!(w.evaluate(&g).unwrap(), x);

        let g = a2();
        let x = ExtAffElt::from_weyl(g.from_word(&[0, 1]).unwrap());
        let w = x.reduced_word().unwrap();
        assert_eq!(w.letters, vec![AffLetter::Simple(0), AffLetter::Simple(1)]);
        assert!(w.gamma.is_identity());
    }

    #[test]
    fn window_counts() {
        let g = a1();
        assert_eq!(enumerate_window(&g, 0).unwrap().len(), 2);
        assert_eq!(enumerate_window(&g, 1).unwrap().len(), 6);
        // Infinite dihedral W_af has 2k+1 elements of length <= k.
        assert_eq!(enumerate_window(&g, 4).unwrap().len(), 2 * 9);
        // A2 window 0 is exactly Gamma.
        assert_eq!(enumerate_window(&a2(), 0).unwrap().len(), 3);
    }

    #[test]
    fn length_matches_word_length_on_window() {
        for name in ["A1", "A2", "B2"] {
            let g = WeylGroup::for_preset(name).unwrap();
            for x in enumerate_window(&g, 4).unwrap() {
                let w = x.reduced_word().unwrap();
                assert_eq!(w.letters.len() as u64, x.length());
                assert_eq!(w.evaluate(&g).unwrap(), x);
            }
        }
    }

    #[test]
    fn length_steps_by_one_and_gamma_preserves_it() {
        let g = a2();
        let letters = ExtAffElt::all_letters(&g);
        let gammas = gamma_elements(&g, None).unwrap();
        for x in enumerate_window(&g, 3).unwrap() {
            for &l in &letters {
                let d = x.right_mul_letter(l).length() as i64 - x.length() as i64;
                assert!(d == 1 || d == -1);
            }
            for gam in &gammas {
                assert_eq!(x.multiply(gam).unwrap().length(), x.length());
            }
        }
    }

    #[test]
    fn extended_bruhat_examples() {
        let g = a1();
        let s = ExtAffElt::from_weyl(g.simple_reflection(0).unwrap());
        let gamma = t(&g, &[1]).multiply(&s).unwrap();
        assert!(s.bruhat_leq(&s).unwrap());
        // Distinct Gamma-components are incomparable.
        assert!(!gamma.bruhat_leq(&s).unwrap());
        assert!(!s.bruhat_leq(&gamma).unwrap());
        // s <= t_alpha via the subword [s0, s].
        assert!(s.bruhat_leq(&t(&g, &[2])).unwrap());

        // Cross-check against the subword oracle on a window.
        for x in enumerate_window(&g, 5).unwrap() {
            let ideal = x.bruhat_ideal().unwrap();
            for u in enumerate_window(&g, 5).unwrap() {
                assert_eq!(u.bruhat_leq(&x).unwrap(), ideal.contains(&u));
            }
        }
    }

    #[test]
    fn canonical_rep_examples() {
        let g = a1();
        let full = g.datum().full_subset();
        let x = t(&g, &[-1]);
        let (lam, z) = x.canonical_rep(&full, &full).unwrap();
        assert_eq!(lam, Weight(vec![1]));
        assert!(z.is_identity());

        let x = ExtAffElt::identity(&g);
        let (lam, z) = x.canonical_rep(&full, &full).unwrap();
        assert!(lam.is_zero());
        assert!(z.is_identity());

        let g = a2();
        let i1 = SimpleSubset::from_indices([0], 2).unwrap();
        let j2 = SimpleSubset::from_indices([1], 2).unwrap();
        let x = ExtAffElt::from_weyl(g.from_word(&[0, 1, 0]).unwrap());
        let (lam, z) = x.canonical_rep(&i1, &j2).unwrap();
        assert!(lam.is_zero());
        assert_eq!(z, g.from_word(&[1, 0]).unwrap());
    }

    #[test]
    fn canonical_rep_is_constant_on_double_cosets() {
        let g = a2();
        let i1 = SimpleSubset::from_indices([0], 2).unwrap();
        let full = g.datum().full_subset();
        for (i_set, j_set) in [(i1.clone(), full.clone()), (full.clone(), full.clone())] {
            let wi = g.parabolic_elements(&i_set);
            let wj = g.parabolic_elements(&j_set);
            for x in enumerate_window(&g, 3).unwrap() {
                let rep = x.canonical_rep(&i_set, &j_set).unwrap();
                for a in &wi {
                    for b in &wj {
                        let y = ExtAffElt::from_weyl(a.clone())
                            .multiply(&x)
                            .unwrap()
                            .multiply(&ExtAffElt::from_weyl(b.clone()))
                            .unwrap();
                        assert_eq!(y.canonical_rep(&i_set, &j_set).unwrap(), rep);
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_length_rep_examples() {
        let g = a1();
        let full = g.datum().full_subset();
        // lambda = omega: the coset {t_omega, s t_omega, t_omega s, s t_omega s}
        // has minimum t_omega s of length zero.
        let m = minimal_length_rep(&g, &Weight(vec![1]), &g.identity(), &full, &full).unwrap();
        let s = ExtAffElt::from_weyl(g.simple_reflection(0).unwrap());
        assert_eq!(m, t(&g, &[1]).multiply(&s).unwrap());
        assert_eq!(m.length(), 0);
        // lambda = alpha: minimum is s0 = t_alpha s of length 1.
        let m = minimal_length_rep(&g, &Weight(vec![2]), &g.identity(), &full, &full).unwrap();
        assert_eq!(m, ExtAffElt::letter(&g, AffLetter::Affine(0)));
        assert_eq!(m.length(), 1);
        // lambda = 0: the minimal rep of a finite coset is z itself.
        let g = a2();
        let i1 = SimpleSubset::from_indices([0], 2).unwrap();
        let j2 = SimpleSubset::from_indices([1], 2).unwrap();
        for z in g.min_double_coset_reps(&i1, &j2) {
            let m =
                minimal_length_rep(&g, &Weight::zero(2), &z, &i1, &j2).unwrap();
            assert_eq!(m, ExtAffElt::from_weyl(z));
        }
        // Dominance precondition is enforced.
        let g1 = a1();
        let full = g1.datum().full_subset();
        assert!(minimal_length_rep(&g1, &Weight(vec![-1]), &g1.identity(), &full, &full).is_err());
    }

    #[test]
    fn minimal_rep_is_strictly_minimal_in_its_coset() {
        let g = a1();
        let full = g.datum().full_subset();
        let wi = g.parabolic_elements(&full);
        for n in 0..=3 {
            let lam = Weight(vec![n]);
            let m = minimal_length_rep(&g, &lam, &g.identity(), &full, &full).unwrap();
            let x = t(&g, &[n]);
            for a in &wi {
                for b in &wi {
                    let y = ExtAffElt::from_weyl(a.clone())
                        .multiply(&x)
                        .unwrap()
                        .multiply(&ExtAffElt::from_weyl(b.clone()))
                        .unwrap();
                    if y != m {
                        assert!(y.length() > m.length());
                    }
                }
            }
        }
    }
}
