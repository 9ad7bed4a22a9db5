//! The extended affine Hecke algebra over `A = Z[v, v^-1]`: standard-basis
//! arithmetic driven by the quadratic relation
//! `T_s^2 = v^2 T_1 + (v^2 - 1) T_s`, basis-element inversion, the bar
//! involution, the elements `theta_lambda`, and conversion to and from the
//! Bernstein basis `{theta_lambda T_w}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{input_err, internal_err, Result};
use crate::ext_affine::{AffLetter, ExtAffElt};
use crate::laurent::LaurentPoly;
use crate::root_datum::Weight;
use crate::weyl::{WeylElt, WeylGroup};

/// A finitely supported `A`-linear combination of standard basis elements
/// `T_x`, `x` in the extended affine Weyl group.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElt {
    group: WeylGroup,
    terms: BTreeMap<ExtAffElt, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero(group: &WeylGroup) -> Self {
        HeckeElt { group: group.clone(), terms: BTreeMap::new() }
    }

    pub fn basis(x: ExtAffElt) -> Self {
        let group = x.group().clone();
        let mut terms = BTreeMap::new();
        terms.insert(x, LaurentPoly::one());
        HeckeElt { group, terms }
    }

    pub fn one(group: &WeylGroup) -> Self {
        Self::basis(ExtAffElt::identity(group))
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, x: &ExtAffElt) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExtAffElt, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ExtAffElt> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, x: ExtAffElt, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        debug_assert!(self.group.same_group(x.group()));
        match self.terms.entry(x) {
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

    pub fn add(&self, other: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &HeckeElt) -> HeckeElt {
        self.add(&other.scale(&LaurentPoly::int(-1)))
    }

    pub fn neg(&self) -> HeckeElt {
        self.scale(&LaurentPoly::int(-1))
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElt {
        if c.is_zero() {
            return HeckeElt::zero(&self.group);
        }
        let terms = self
            .terms
            .iter()
            .map(|(x, a)| (x.clone(), a * c))
            .collect();
        HeckeElt { group: self.group.clone(), terms }
    }

    /// The element with every coefficient specialized at `v = 1`, as a map
    /// into the group algebra `Z[W_ex]`.
    pub fn eval_at_one(&self) -> BTreeMap<ExtAffElt, i64> {
        self.terms
            .iter()
            .map(|(x, c)| (x.clone(), c.eval_at_one()))
            .filter(|(_, c)| *c != 0)
            .collect()
    }

    /// Serializes as a JSON list of `{element: {lambda, w}, coeff}` records.
    pub fn to_json(&self) -> serde_json::Value {
        let reprs: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(x, c)| TermRepr {
                element: elt_repr(x),
                coeff: c.clone(),
            })
            .collect();
        serde_json::to_value(reprs).expect("serializable")
    }

    pub fn from_json(group: &WeylGroup, value: &serde_json::Value) -> Result<HeckeElt> {
        let reprs: Vec<TermRepr> = serde_json::from_value(value.clone())?;
        let mut out = HeckeElt::zero(group);
        for r in reprs {
            out.add_term(parse_elt_repr(group, &r.element)?, &r.coeff);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct EltRepr {
    lambda: Vec<i64>,
    w: String,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    element: EltRepr,
    coeff: LaurentPoly,
}

fn elt_repr(x: &ExtAffElt) -> EltRepr {
    let word = x
        .finite_part()
        .word()
        .iter()
        .map(|i| format!("s{}", i + 1))
        .collect::<Vec<_>>()
        .join(" ");
    EltRepr { lambda: x.translation_part().0.clone(), w: word }
}

fn parse_elt_repr(group: &WeylGroup, repr: &EltRepr) -> Result<ExtAffElt> {
    if repr.lambda.len() != group.datum().rank() {
        return input_err("element translation has wrong rank");
    }
    let mut word = Vec::new();
    for tok in repr.w.split_whitespace() {
        let idx: usize = tok
            .strip_prefix('s')
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| crate::error::Error::Parse(format!("bad generator {tok:?}")))?;
        if idx == 0 {
            return input_err("finite words use s1..sn");
        }
        word.push(idx - 1);
    }
    Ok(ExtAffElt::new(Weight(repr.lambda.clone()), group.from_word(&word)?))
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (x, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*T[{x}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finitely supported combination in the Bernstein basis
/// `{theta_lambda T_w : lambda in X(T), w in W}`.
#[derive(Clone, PartialEq, Eq)]
pub struct BernsteinForm {
    group: WeylGroup,
    terms: BTreeMap<(Weight, WeylElt), LaurentPoly>,
}

impl BernsteinForm {
    pub fn zero(group: &WeylGroup) -> Self {
        BernsteinForm { group: group.clone(), terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lam: &Weight, w: &WeylElt) -> LaurentPoly {
        self.terms
            .get(&(lam.clone(), w.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Weight, WeylElt), &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, lam: Weight, w: WeylElt, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((lam, w)) {
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
}

impl fmt::Display for BernsteinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((lam, w), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*th{lam}")?;
            if !w.is_identity() {
                write!(f, "*T[{w}]")?;
            }
        }
        Ok(())
    }
}

/// The commutation `theta_lambda T_s = T_s theta_{s(lambda)} + (v^2-1) G`
/// with `G` the finite geometric sum collapsing the Bernstein relation's
/// formal quotient.
pub struct ThetaPastTs {
    pub simple: usize,
    pub reflected: Weight,
    /// Signed weights of `G`: the element equals
    /// `T_s theta_reflected + (v^2-1) * sum sign * theta_nu`.
    pub geometric: Vec<(Weight, i64)>,
}

impl ThetaPastTs {
    /// Evaluates back to a standard-basis element; equals
    /// `theta(lambda) * T_s` exactly.
    pub fn expand(&self, alg: &HeckeAlgebra) -> Result<HeckeElt> {
        let s = alg.group().simple_reflection(self.simple)?;
        let ts = HeckeElt::basis(ExtAffElt::from_weyl(s));
        let mut out = alg.mul(&ts, &alg.theta(&self.reflected)?)?;
        let vv1 = &LaurentPoly::v_pow(2) - &LaurentPoly::one();
        for (nu, sign) in &self.geometric {
            out = out.add(&alg.theta(nu)?.scale(&vv1.scale(*sign)));
        }
        Ok(out)
    }
}

struct AlgCaches {
    theta: Mutex<HashMap<Weight, HeckeElt>>,
    inverse: Mutex<HashMap<ExtAffElt, HeckeElt>>,
    words: Mutex<HashMap<ExtAffElt, (Vec<AffLetter>, ExtAffElt)>>,
    bernstein: Mutex<HashMap<ExtAffElt, BernsteinForm>>,
}

/// The extended affine Hecke algebra attached to a Weyl group. Holds the
/// shared caches; all operations are pure in their arguments.
#[derive(Clone)]
pub struct HeckeAlgebra {
    group: WeylGroup,
    caches: Arc<AlgCaches>,
}

impl HeckeAlgebra {
    pub fn new(group: WeylGroup) -> Self {
        HeckeAlgebra {
            group,
            caches: Arc::new(AlgCaches {
                theta: Mutex::new(HashMap::new()),
                inverse: Mutex::new(HashMap::new()),
                words: Mutex::new(HashMap::new()),
                bernstein: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn for_preset(name: &str) -> Result<Self> {
        Ok(Self::new(WeylGroup::for_preset(name)?))
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn one(&self) -> HeckeElt {
        HeckeElt::one(&self.group)
    }

    /// `T_w` for a finite Weyl group element.
    pub fn finite_t(&self, w: &WeylElt) -> HeckeElt {
        HeckeElt::basis(ExtAffElt::from_weyl(w.clone()))
    }

    fn reduced_word_cached(&self, x: &ExtAffElt) -> Result<(Vec<AffLetter>, ExtAffElt)> {
        if let Some(w) = self.caches.words.lock().unwrap().get(x) {
            return Ok(w.clone());
        }
        let word = x.reduced_word()?;
        let pair = (word.letters, word.gamma);
        self.caches.words.lock().unwrap().insert(x.clone(), pair.clone());
        Ok(pair)
    }

    /// Right multiplication by `T_l` for a Coxeter letter `l`.
    pub fn mul_letter_right(&self, h: &HeckeElt, letter: AffLetter) -> HeckeElt {
        let vv = LaurentPoly::v_pow(2);
        let vv1 = &vv - &LaurentPoly::one();
        let mut out = HeckeElt::zero(&self.group);
        for (x, c) in h.iter() {
            let xs = x.right_mul_letter(letter);
            if xs.length() > x.length() {
                out.add_term(xs, c);
            } else {
                out.add_term(xs, &(c * &vv));
                out.add_term(x.clone(), &(c * &vv1));
            }
        }
        out
    }

    /// Right multiplication by `T_gamma` for a length-zero element.
    pub fn mul_gamma_right(&self, h: &HeckeElt, gamma: &ExtAffElt) -> Result<HeckeElt> {
        if !gamma.is_gamma() {
            return input_err("right factor must have length zero");
        }
        let mut out = HeckeElt::zero(&self.group);
        for (x, c) in h.iter() {
            out.add_term(x.multiply(gamma)?, c);
        }
        Ok(out)
    }

    /// `h * T_x`, expanding `T_x` along a reduced word.
    pub fn mul_basis_right(&self, h: &HeckeElt, x: &ExtAffElt) -> Result<HeckeElt> {
        let (letters, gamma) = self.reduced_word_cached(x)?;
        let mut out = h.clone();
        for l in letters {
            out = self.mul_letter_right(&out, l);
        }
        self.mul_gamma_right(&out, &gamma)
    }

    /// The bilinear product determined by the quadratic relation.
    pub fn mul(&self, h1: &HeckeElt, h2: &HeckeElt) -> Result<HeckeElt> {
        if !self.group.same_group(h1.group()) || !self.group.same_group(h2.group()) {
            return input_err("elements belong to a different Hecke algebra");
        }
        let mut out = HeckeElt::zero(&self.group);
        for (x, c) in h2.iter() {
            out = out.add(&self.mul_basis_right(&h1.scale(c), x)?);
        }
        Ok(out)
    }

    /// `T_x^-1`, built from `T_s^-1 = v^-2 T_s + (v^-2 - 1) T_1` along a
    /// reduced word and `T_gamma^-1 = T_{gamma^-1}`.
    pub fn invert_basis(&self, x: &ExtAffElt) -> Result<HeckeElt> {
        if let Some(h) = self.caches.inverse.lock().unwrap().get(x) {
            return Ok(h.clone());
        }
        let (letters, gamma) = self.reduced_word_cached(x)?;
        let vm2 = LaurentPoly::v_pow(-2);
        let vm21 = &vm2 - &LaurentPoly::one();
        let mut out = HeckeElt::basis(gamma.inverse());
        for &l in letters.iter().rev() {
            // out * (v^-2 T_l + (v^-2 - 1) T_1)
            let t = self.mul_letter_right(&out, l).scale(&vm2);
            out = t.add(&out.scale(&vm21));
        }
        self.caches.inverse.lock().unwrap().insert(x.clone(), out.clone());
        Ok(out)
    }

    /// The bar involution: `v -> v^-1` on coefficients and
    /// `T_x -> T_{x^-1}^-1`.
    pub fn bar(&self, h: &HeckeElt) -> Result<HeckeElt> {
        let mut out = HeckeElt::zero(&self.group);
        for (x, c) in h.iter() {
            out = out.add(&self.invert_basis(&x.inverse())?.scale(&c.bar()));
        }
        Ok(out)
    }

    /// `theta_lambda`, via any decomposition `lambda = mu - nu` into dominant
    /// weights: `v^(l(t_nu) - l(t_mu)) T_{t_mu} T_{t_nu}^-1`. Independent of
    /// the decomposition.
    pub fn theta(&self, lam: &Weight) -> Result<HeckeElt> {
        if let Some(h) = self.caches.theta.lock().unwrap().get(lam) {
            return Ok(h.clone());
        }
        let (mu, nu) = self.group.datum().dominant_difference(lam);
        let out = self.theta_from_difference(&mu, &nu)?;
        self.caches.theta.lock().unwrap().insert(lam.clone(), out.clone());
        Ok(out)
    }

    /// `theta` built from an explicit pair of dominant weights.
    pub fn theta_from_difference(&self, mu: &Weight, nu: &Weight) -> Result<HeckeElt> {
        let full = self.group.datum().full_subset();
        if !self.group.datum().is_dominant_for(mu, &full)
            || !self.group.datum().is_dominant_for(nu, &full)
        {
            return input_err("both weights of the difference must be dominant");
        }
        let t_mu = ExtAffElt::translation(&self.group, mu.clone());
        let t_nu = ExtAffElt::translation(&self.group, nu.clone());
        let shift = LaurentPoly::v_pow(t_nu.length() as i32 - t_mu.length() as i32);
        let prod = self.mul(&HeckeElt::basis(t_mu), &self.invert_basis(&t_nu)?)?;
        Ok(prod.scale(&shift))
    }

    /// Commutes `theta_lambda` past `T_s`, returning the reflected term and
    /// the geometric correction (see [`ThetaPastTs`]).
    pub fn theta_past_ts(&self, lam: &Weight, simple: usize) -> Result<ThetaPastTs> {
        let datum = self.group.datum();
        let d = datum.pairing(lam, simple)?;
        let reflected = datum.reflect(simple, lam)?;
        let alpha = datum.simple_root(simple).clone();
        let mut geometric = Vec::new();
        if d >= 0 {
            for j in 0..d {
                geometric.push((lam.sub(&alpha.scaled(j)), 1));
            }
        } else {
            for j in 0..(-d) {
                geometric.push((reflected.sub(&alpha.scaled(j)), -1));
            }
        }
        Ok(ThetaPastTs { simple, reflected, geometric })
    }

    /// Expands a Bernstein-basis combination into the standard basis.
    pub fn from_bernstein(&self, b: &BernsteinForm) -> Result<HeckeElt> {
        let mut out = HeckeElt::zero(&self.group);
        for ((lam, w), c) in b.iter() {
            let t = self.mul(&self.theta(lam)?, &self.finite_t(w))?;
            out = out.add(&t.scale(c));
        }
        Ok(out)
    }

    /// Bernstein form of `T_w theta_mu` for finite `w`, by commuting the
    /// theta leftward one letter at a time:
    /// `T_s theta_mu = theta_{s(mu)} T_s - (v^2 - 1) G(s(mu))`.
    fn left_commute(&self, w: &WeylElt, mu: &Weight) -> Result<BernsteinForm> {
        if w.is_identity() {
            let mut b = BernsteinForm::zero(&self.group);
            b.add_term(mu.clone(), self.group.identity(), &LaurentPoly::one());
            return Ok(b);
        }
        let word = w.word();
        let s = word[word.len() - 1];
        let w_short = self.group.from_word(&word[..word.len() - 1])?;
        let s_mu = self.group.datum().reflect(s, mu)?;
        let past = self.theta_past_ts(&s_mu, s)?;
        debug_assert_eq!(&past.reflected, mu);
        let mut out = self.bern_mul_finite_letter(&self.left_commute(&w_short, &s_mu)?, s)?;
        let vv1 = &LaurentPoly::v_pow(2) - &LaurentPoly::one();
        for (nu, sign) in &past.geometric {
            let sub = self.left_commute(&w_short, nu)?;
            let c = vv1.scale(-sign);
            for ((lam, u), a) in sub.iter() {
                out.add_term(lam.clone(), u.clone(), &(a * &c));
            }
        }
        Ok(out)
    }

    /// Right multiplication of a Bernstein form by `T_s` for a finite simple
    /// reflection.
    fn bern_mul_finite_letter(&self, b: &BernsteinForm, s: usize) -> Result<BernsteinForm> {
        let refl = self.group.simple_reflection(s)?;
        let vv = LaurentPoly::v_pow(2);
        let vv1 = &vv - &LaurentPoly::one();
        let mut out = BernsteinForm::zero(&self.group);
        for ((lam, w), c) in b.iter() {
            let ws = w.multiply(&refl)?;
            if ws.length() > w.length() {
                out.add_term(lam.clone(), ws, c);
            } else {
                out.add_term(lam.clone(), ws, &(c * &vv));
                out.add_term(lam.clone(), w.clone(), &(c * &vv1));
            }
        }
        Ok(out)
    }

    /// Right multiplication of a Bernstein form by `c * theta_mu T_y`.
    fn bern_mul_term(
        &self,
        b: &BernsteinForm,
        mu: &Weight,
        y: &WeylElt,
        coeff: &LaurentPoly,
    ) -> Result<BernsteinForm> {
        // First push theta_mu through every finite part of b.
        let mut shifted = BernsteinForm::zero(&self.group);
        for ((lam, w), c) in b.iter() {
            let commuted = self.left_commute(w, mu)?;
            let c = c * coeff;
            for ((kappa, u), a) in commuted.iter() {
                shifted.add_term(lam.add(kappa), u.clone(), &(a * &c));
            }
        }
        // Then absorb T_y letter by letter.
        let mut out = shifted;
        for &s in y.word() {
            out = self.bern_mul_finite_letter(&out, s)?;
        }
        Ok(out)
    }

    /// Closed Bernstein form of `T_x` for `x = t_nu u` satisfying
    /// `l(x) = <nu, 2 rho^v> - l(u)`: then `T_x = v^{<nu, 2 rho^v>}
    /// theta_nu T_{u^-1}^-1`. Length-zero elements and the affine letters
    /// both satisfy the hypothesis.
    fn bern_special(&self, x: &ExtAffElt) -> Result<BernsteinForm> {
        let nu = x.translation_part().clone();
        let u = x.finite_part().clone();
        let datum = self.group.datum();
        let signed_sum: i64 = datum
            .positive_roots()
            .iter()
            .map(|rd| rd.coroot.pair(&nu))
            .sum();
        if x.length() as i64 + u.length() as i64 != signed_sum {
            return internal_err(format!("element {x} is not of special Bernstein shape"));
        }
        let inv = self.invert_basis(&ExtAffElt::from_weyl(u.inverse()))?;
        let scalar = LaurentPoly::v_pow(signed_sum as i32);
        let mut out = BernsteinForm::zero(&self.group);
        for (y, c) in inv.iter() {
            debug_assert!(y.translation_part().is_zero());
            out.add_term(nu.clone(), y.finite_part().clone(), &(c * &scalar));
        }
        // The formula is derived, not assumed: check it by expansion.
        let back = self.from_bernstein(&out)?;
        if back != HeckeElt::basis(x.clone()) {
            return internal_err(format!("special Bernstein form failed to verify for {x}"));
        }
        Ok(out)
    }

    /// Bernstein form of a standard basis element: peel the length-zero part
    /// to the left, then absorb the Coxeter letters one at a time.
    fn bern_of_basis(&self, x: &ExtAffElt) -> Result<BernsteinForm> {
        if let Some(b) = self.caches.bernstein.lock().unwrap().get(x) {
            return Ok(b.clone());
        }
        let (_, gamma) = self.reduced_word_cached(x)?;
        // x = gamma * y with y = gamma^-1 x in the affine Weyl group.
        let y = gamma.inverse().multiply(x)?;
        debug_assert_eq!(y.length(), x.length());
        let mut b = self.bern_special(&gamma)?;
        let (letters, tail) = self.reduced_word_cached(&y)?;
        if !tail.is_identity() {
            return internal_err("affine factor has a nontrivial length-zero part");
        }
        for l in letters {
            b = match l {
                AffLetter::Simple(s) => self.bern_mul_finite_letter(&b, s)?,
                AffLetter::Affine(_) => {
                    let s0 = ExtAffElt::letter(&self.group, l);
                    let s0_form = self.bern_of_special_cached(&s0)?;
                    let mut acc = BernsteinForm::zero(&self.group);
                    for ((mu, yy), c) in s0_form.iter() {
                        let part = self.bern_mul_term(&b, mu, yy, c)?;
                        for ((lam, w), a) in part.iter() {
                            acc.add_term(lam.clone(), w.clone(), a);
                        }
                    }
                    acc
                }
            };
        }
        self.caches.bernstein.lock().unwrap().insert(x.clone(), b.clone());
        Ok(b)
    }

    fn bern_of_special_cached(&self, x: &ExtAffElt) -> Result<BernsteinForm> {
        if let Some(b) = self.caches.bernstein.lock().unwrap().get(x) {
            return Ok(b.clone());
        }
        let b = self.bern_special(x)?;
        self.caches.bernstein.lock().unwrap().insert(x.clone(), b.clone());
        Ok(b)
    }

    /// Writes an element in the Bernstein basis. Exact: composing with
    /// [`HeckeAlgebra::from_bernstein`] is the identity.
    pub fn to_bernstein(&self, h: &HeckeElt) -> Result<BernsteinForm> {
        let mut out = BernsteinForm::zero(&self.group);
        for (x, c) in h.iter() {
            let b = self.bern_of_basis(x)?;
            for ((lam, w), a) in b.iter() {
                out.add_term(lam.clone(), w.clone(), &(a * c));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext_affine::enumerate_window;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn alg(name: &str) -> HeckeAlgebra {
        HeckeAlgebra::for_preset(name).unwrap()
    }

    fn v2() -> LaurentPoly {
        LaurentPoly::v_pow(2)
    }

    #[test]
    fn quadratic_relation_for_all_letters() {
        for name in ["A1", "A2", "B2"] {
            let a = alg(name);
            for l in ExtAffElt::all_letters(a.group()) {
                let t = HeckeElt::basis(ExtAffElt::letter(a.group(), l));
                let sq = a.mul(&t, &t).unwrap();
                let expect = a
                    .one()
                    .scale(&v2())
                    .add(&t.scale(&(&v2() - &LaurentPoly::one())));
                assert_eq!(sq, expect, "{name}: T_{l}^2");
            }
        }
    }

    #[test]
    fn gamma_squares_to_one_in_a1() {
        let a = alg("A1");
        let g = a.group().clone();
        let gamma = ExtAffElt::translation(&g, Weight(vec![1]))
            .multiply(&ExtAffElt::from_weyl(g.simple_reflection(0).unwrap()))
            .unwrap();
        let t = HeckeElt::basis(gamma);
        assert_eq!(a.mul(&t, &t).unwrap(), a.one());
    }

    #[test]
    fn product_of_short_elements_concatenates() {
        let a = alg("A2");
        let g = a.group().clone();
        let s1 = a.finite_t(&g.simple_reflection(0).unwrap());
        let s2 = a.finite_t(&g.simple_reflection(1).unwrap());
        let prod = a.mul(&s1, &s2).unwrap();
        assert_eq!(prod, a.finite_t(&g.from_word(&[0, 1]).unwrap()));
    }

    #[test]
    fn braid_relations_in_s_af() {
        for name in ["A1", "A2", "B2", "G2"] {
            let a = alg(name);
            let letters = ExtAffElt::all_letters(a.group());
            for (i, &l1) in letters.iter().enumerate() {
                for &l2 in letters.iter().skip(i + 1) {
                    let x1 = ExtAffElt::letter(a.group(), l1);
                    let x2 = ExtAffElt::letter(a.group(), l2);
                    // Order of x1 x2 (braid exponent); infinite for affine A1.
                    let prod = x1.multiply(&x2).unwrap();
                    let mut m = 0u32;
                    let mut acc = ExtAffElt::identity(a.group());
                    for k in 1..=7 {
                        acc = acc.multiply(&prod).unwrap();
                        if acc.is_identity() {
                            m = k;
                            break;
                        }
                    }
                    if m == 0 {
                        continue;
                    }
                    let mut lhs = a.one();
                    let mut rhs = a.one();
                    for k in 0..m {
                        let (ll, rl) = if k % 2 == 0 { (l1, l2) } else { (l2, l1) };
                        lhs = a.mul_letter_right(&lhs, ll);
                        rhs = a.mul_letter_right(&rhs, rl);
                    }
                    assert_eq!(lhs, rhs, "{name}: braid {l1},{l2} of order {m}");
                }
            }
        }
    }

    fn random_elt(a: &HeckeAlgebra, window: &[ExtAffElt], rng: &mut StdRng) -> HeckeElt {
        let mut h = HeckeElt::zero(a.group());
        for _ in 0..rng.gen_range(1..=2) {
            let x = window[rng.gen_range(0..window.len())].clone();
            let c = LaurentPoly::term(rng.gen_range(-3..=3), rng.gen_range(-2..=2));
            h.add_term(x, &c);
        }
        h
    }

    #[test]
    fn associativity_on_random_triples() {
        for name in ["A1", "A2", "B2"] {
            let a = alg(name);
            let window = enumerate_window(a.group(), 4).unwrap();
            let mut rng = StdRng::seed_from_u64(11);
            for _ in 0..60 {
                let x = random_elt(&a, &window, &mut rng);
                let y = random_elt(&a, &window, &mut rng);
                let z = random_elt(&a, &window, &mut rng);
                let lhs = a.mul(&a.mul(&x, &y).unwrap(), &z).unwrap();
                let rhs = a.mul(&x, &a.mul(&y, &z).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{name}: associativity");
            }
        }
    }

    #[test]
    fn invert_examples() {
        let a = alg("A1");
        let g = a.group().clone();
        assert_eq!(a.invert_basis(&ExtAffElt::identity(&g)).unwrap(), a.one());
        let s = ExtAffElt::from_weyl(g.simple_reflection(0).unwrap());
        let inv = a.invert_basis(&s).unwrap();
        let mut expect = HeckeElt::basis(s.clone()).scale(&LaurentPoly::v_pow(-2));
        expect = expect.add(&a.one().scale(&(&LaurentPoly::v_pow(-2) - &LaurentPoly::one())));
        assert_eq!(inv, expect);
        // gamma = t_omega s is an involution, so its T is its own inverse.
        let gamma = ExtAffElt::translation(&g, Weight(vec![1])).multiply(&s).unwrap();
        assert_eq!(a.invert_basis(&gamma).unwrap(), HeckeElt::basis(gamma.clone()));
        // T_x^-1 T_x = 1 across a window.
        for x in enumerate_window(&g, 4).unwrap() {
            let prod = a
                .mul(&a.invert_basis(&x).unwrap(), &HeckeElt::basis(x.clone()))
                .unwrap();
            assert_eq!(prod, a.one(), "inverse fails at {x}");
        }
    }

    #[test]
    fn bar_examples_and_properties() {
        let a = alg("A1");
        let g = a.group().clone();
        assert_eq!(a.bar(&a.one()).unwrap(), a.one());
        let s = ExtAffElt::from_weyl(g.simple_reflection(0).unwrap());
        let ts = HeckeElt::basis(s);
        let bar_ts = a.bar(&ts).unwrap();
        let expect = ts
            .scale(&LaurentPoly::v_pow(-2))
            .add(&a.one().scale(&(&LaurentPoly::v_pow(-2) - &LaurentPoly::one())));
        assert_eq!(bar_ts, expect);
        assert_eq!(
            a.bar(&a.one().scale(&LaurentPoly::v())).unwrap(),
            a.one().scale(&LaurentPoly::v_pow(-1))
        );

        // Involutive ring automorphism on random pairs.
        for name in ["A1", "A2"] {
            let a = alg(name);
            let window = enumerate_window(a.group(), 3).unwrap();
            let mut rng = StdRng::seed_from_u64(5);
            for _ in 0..25 {
                let x = random_elt(&a, &window, &mut rng);
                let y = random_elt(&a, &window, &mut rng);
                assert_eq!(a.bar(&a.bar(&x).unwrap()).unwrap(), x);
                assert_eq!(
                    a.bar(&a.mul(&x, &y).unwrap()).unwrap(),
                    a.mul(&a.bar(&x).unwrap(), &a.bar(&y).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn theta_examples() {
        let a = alg("A1");
        let g = a.group().clone();
        assert_eq!(a.theta(&Weight(vec![0])).unwrap(), a.one());
        let t_omega = ExtAffElt::translation(&g, Weight(vec![1]));
        assert_eq!(
            a.theta(&Weight(vec![1])).unwrap(),
            HeckeElt::basis(t_omega.clone()).scale(&LaurentPoly::v_pow(-1))
        );
        // theta(-omega) = v^-1 T_{t_-omega} + (v^-1 - v) T_{t_omega s}.
        let t_neg = ExtAffElt::translation(&g, Weight(vec![-1]));
        let s = ExtAffElt::from_weyl(g.simple_reflection(0).unwrap());
        let gamma = t_omega.multiply(&s).unwrap();
        let mut expect = HeckeElt::basis(t_neg).scale(&LaurentPoly::v_pow(-1));
        expect = expect.add(
            &HeckeElt::basis(gamma)
                .scale(&(&LaurentPoly::v_pow(-1) - &LaurentPoly::v())),
        );
        assert_eq!(a.theta(&Weight(vec![-1])).unwrap(), expect);
    }

    #[test]
    fn theta_is_multiplicative_and_decomposition_free() {
        for name in ["A1", "A2", "B2"] {
            let a = alg(name);
            let rank = a.group().datum().rank();
            let mut rng = StdRng::seed_from_u64(23);
            for _ in 0..30 {
                let lam = Weight((0..rank).map(|_| rng.gen_range(-2..=2)).collect());
                let mu = Weight((0..rank).map(|_| rng.gen_range(-2..=2)).collect());
                let lhs = a
                    .mul(&a.theta(&lam).unwrap(), &a.theta(&mu).unwrap())
                    .unwrap();
                assert_eq!(lhs, a.theta(&lam.add(&mu)).unwrap(), "{name}: theta hom");
            }
            // Same theta from a shifted dominant difference.
            let lam = Weight(vec![1; rank].into_iter().map(|c: i64| -c).collect());
            let (mu, nu) = a.group().datum().dominant_difference(&lam);
            let rho2 = {
                let mut t = Weight::zero(rank);
                for rd in a.group().datum().positive_roots() {
                    t = t.add(&rd.root);
                }
                t
            };
            let alt = a
                .theta_from_difference(&mu.add(&rho2), &nu.add(&rho2))
                .unwrap();
            assert_eq!(alt, a.theta(&lam).unwrap(), "{name}: choice independence");
        }
    }

    #[test]
    fn theta_orbit_sums_are_central() {
        for name in ["A1", "A2", "B2"] {
            let a = alg(name);
            let datum = a.group().datum().clone();
            let rank = datum.rank();
            let lam = Weight(vec![1; rank]);
            let mut orbit: Vec<Weight> = Vec::new();
            for w in a.group().elements() {
                let mu = w.apply(&lam);
                if !orbit.contains(&mu) {
                    orbit.push(mu);
                }
            }
            let mut c = HeckeElt::zero(a.group());
            for mu in &orbit {
                c = c.add(&a.theta(mu).unwrap());
            }
            for i in 0..datum.ss_rank() {
                let ts = a.finite_t(&a.group().simple_reflection(i).unwrap());
                assert_eq!(
                    a.mul(&c, &ts).unwrap(),
                    a.mul(&ts, &c).unwrap(),
                    "{name}: orbit sum fails to commute with s{}",
                    i + 1
                );
            }
        }
    }

    #[test]
    fn theta_past_ts_examples() {
        let a = alg("A1");
        // d = 0 commutes: no geometric part.
        let r = a.theta_past_ts(&Weight(vec![0]), 0).unwrap();
        assert!(r.geometric.is_empty());
        // lambda = omega: T_s theta_-omega + (v^2-1) theta_omega.
        let r = a.theta_past_ts(&Weight(vec![1]), 0).unwrap();
        assert_eq!(r.reflected, Weight(vec![-1]));
        assert_eq!(r.geometric, vec![(Weight(vec![1]), 1)]);
        // lambda = -omega: T_s theta_omega - (v^2-1) theta_omega.
        let r = a.theta_past_ts(&Weight(vec![-1]), 0).unwrap();
        assert_eq!(r.reflected, Weight(vec![1]));
        assert_eq!(r.geometric, vec![(Weight(vec![1]), -1)]);

        // Expansion equals direct multiplication everywhere in a box.
        for name in ["A1", "A2", "B2"] {
            let a = alg(name);
            let rank = a.group().datum().rank();
            for lam in crate::root_datum::RootDatum::preset(name)
                .unwrap()
                .weight_box(2)
            {
                for i in 0..a.group().datum().ss_rank() {
                    let r = a.theta_past_ts(&lam, i).unwrap();
                    let direct = a
                        .mul(
                            &a.theta(&lam).unwrap(),
                            &a.finite_t(&a.group().simple_reflection(i).unwrap()),
                        )
                        .unwrap();
                    assert_eq!(r.expand(&a).unwrap(), direct, "{name}: rank {rank} lam {lam}");
                }
            }
        }
    }

    #[test]
    fn bernstein_round_trip_and_examples() {
        let a = alg("A1");
        let g = a.group().clone();
        // T_1 -> theta_0 T_1.
        let b = a.to_bernstein(&a.one()).unwrap();
        assert_eq!(b.coeff(&Weight(vec![0]), &g.identity()), LaurentPoly::one());
        assert_eq!(b.iter().count(), 1);
        // T_{t_omega} = v theta_omega.
        let t_omega = ExtAffElt::translation(&g, Weight(vec![1]));
        let b = a.to_bernstein(&HeckeElt::basis(t_omega.clone())).unwrap();
        assert_eq!(b.coeff(&Weight(vec![1]), &g.identity()), LaurentPoly::v());
        assert_eq!(b.iter().count(), 1);
        // T_gamma = v^-1 theta_omega T_s + (v^-1 - v) theta_omega.
        let s = g.simple_reflection(0).unwrap();
        let gamma = t_omega.multiply(&ExtAffElt::from_weyl(s.clone())).unwrap();
        let b = a.to_bernstein(&HeckeElt::basis(gamma)).unwrap();
        assert_eq!(b.coeff(&Weight(vec![1]), &s), LaurentPoly::v_pow(-1));
        assert_eq!(
            b.coeff(&Weight(vec![1]), &g.identity()),
            &LaurentPoly::v_pow(-1) - &LaurentPoly::v()
        );
        assert_eq!(b.iter().count(), 2);

        // Round trips both ways across windows.
        for name in ["A1", "A2"] {
            let a = alg(name);
            for x in enumerate_window(a.group(), 3).unwrap() {
                let h = HeckeElt::basis(x);
                let b = a.to_bernstein(&h).unwrap();
                assert_eq!(a.from_bernstein(&b).unwrap(), h);
            }
        }
    }

    #[test]
    fn bernstein_triangularity() {
        // theta_lambda T_w always has a unit monomial coefficient at
        // t_lambda w, and for pure translations the rest of the support is
        // strictly below t_lambda in the extended Bruhat order.
        for name in ["A1", "A2"] {
            let a = alg(name);
            let datum = a.group().datum().clone();
            for lam in datum.weight_box(2) {
                for w in a.group().elements() {
                    let h = a
                        .mul(&a.theta(&lam).unwrap(), &a.finite_t(&w))
                        .unwrap();
                    let top = ExtAffElt::new(lam.clone(), w.clone());
                    let lead = h.coeff(&top);
                    let (c, _) = lead.as_monomial().expect("monomial leading term");
                    assert_eq!(c.abs(), 1, "{name}: coefficient at {top} is not a unit");
                }
                let theta = a.theta(&lam).unwrap();
                let top = ExtAffElt::translation(a.group(), lam.clone());
                for x in theta.support() {
                    assert!(
                        x.bruhat_leq(&top).unwrap(),
                        "{name}: theta support {x} not under {top}"
                    );
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let a = alg("A2");
        let g = a.group().clone();
        let mut h = a.finite_t(&g.from_word(&[0, 1]).unwrap());
        h.add_term(
            ExtAffElt::translation(&g, Weight(vec![2, -1])),
            &"v^2 - 3".parse().unwrap(),
        );
        let j = h.to_json();
        let h2 = HeckeElt::from_json(&g, &j).unwrap();
        assert_eq!(h, h2);
        // Byte-exact serialization for a canonical element.
        assert_eq!(serde_json::to_string(&j).unwrap(), serde_json::to_string(&h2.to_json()).unwrap());
    }
}
