//! The property-check suite behind `hecke suite`: every invariant promised
//! by the library modules, registered once, run over configurable windows
//! and subset pairs, with a deterministic JSON report.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::coset_module::{CosetIndex, DoubleCosetModule, HijElt};
use crate::error::Result;
use crate::ext_affine::{enumerate_window, enumerate_window_bounded, gamma_elements, ExtAffElt};
use crate::hecke_alg::{HeckeAlgebra, HeckeElt};
use crate::kl::{c_prime_by_bar_fixed_point, KlTable};
use crate::laurent::LaurentPoly;
use crate::root_datum::{RootDatum, SimpleSubset, Weight};
use crate::weyl::{WeylElt, WeylGroup};

/// Suite configuration. Defaults keep the full run under desk scale.
pub struct SuiteConfig {
    pub datum: Arc<RootDatum>,
    /// Length cap for extended affine windows.
    pub window: u64,
    /// Coordinate cap for weight windows.
    pub weight_window: i64,
    /// Restrict to a single subset pair instead of the standard cells.
    pub i_set: Option<SimpleSubset>,
    pub j_set: Option<SimpleSubset>,
    pub seed: u64,
    pub parallel: bool,
    /// Bound for the length-zero subgroup when it is infinite.
    pub gamma_bound: i64,
}

impl SuiteConfig {
    pub fn new(datum: Arc<RootDatum>) -> Self {
        SuiteConfig {
            datum,
            window: 4,
            weight_window: 2,
            i_set: None,
            j_set: None,
            seed: 2024,
            parallel: true,
            gamma_bound: 2,
        }
    }
}

#[derive(Serialize, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub module: String,
    pub params: String,
    pub status: String,
    pub counterexample: Option<String>,
    pub detail: Option<String>,
    pub millis: u128,
}

#[derive(Serialize)]
pub struct SuiteReport {
    pub datum: String,
    pub window: u64,
    pub weight_window: i64,
    pub cells: Vec<String>,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable report")
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status != "pass").count()
    }
}

/// One registered invariant: a check failure carries a reproducible
/// counterexample; success may carry an informational detail.
type CheckResult = std::result::Result<Option<String>, String>;

pub struct CheckDef {
    pub name: &'static str,
    pub module: &'static str,
    runner: fn(&SuiteCtx) -> CheckResult,
}

/// Shared state for a suite run: the algebra, its KL table, the subset
/// cells with their modules, and the enumerated windows.
pub struct SuiteCtx {
    pub cfg: SuiteConfig,
    pub group: WeylGroup,
    pub alg: HeckeAlgebra,
    pub kl: KlTable,
    pub cells: Vec<(SimpleSubset, SimpleSubset)>,
    pub modules: Vec<DoubleCosetModule>,
    pub gamma_is_finite: bool,
}

impl SuiteCtx {
    pub fn new(cfg: SuiteConfig) -> Result<Self> {
        let group = WeylGroup::new(cfg.datum.clone())?;
        let alg = HeckeAlgebra::new(group.clone());
        let kl = KlTable::new(alg.clone());
        let ss = cfg.datum.ss_rank();
        let cells: Vec<(SimpleSubset, SimpleSubset)> = match (&cfg.i_set, &cfg.j_set) {
            (Some(i), Some(j)) => vec![(i.clone(), j.clone())],
            _ => {
                let empty = SimpleSubset::empty();
                let full = SimpleSubset::full(ss);
                let mut cells = vec![
                    (empty.clone(), empty.clone()),
                    (empty.clone(), full.clone()),
                    (full.clone(), empty),
                    (full.clone(), full),
                ];
                if ss >= 2 {
                    cells.push((
                        SimpleSubset::from_indices([0], ss)?,
                        SimpleSubset::from_indices([1], ss)?,
                    ));
                }
                cells
            }
        };
        let modules = cells
            .iter()
            .map(|(i, j)| DoubleCosetModule::new(kl.clone(), i.clone(), j.clone()))
            .collect::<Result<Vec<_>>>()?;
        let gamma_is_finite = gamma_elements(&group, None).is_ok();
        Ok(SuiteCtx { cfg, group, alg, kl, cells, modules, gamma_is_finite })
    }

    fn window(&self, cap: u64) -> Result<Vec<ExtAffElt>> {
        let len = self.cfg.window.min(cap);
        if self.gamma_is_finite {
            enumerate_window(&self.group, len)
        } else {
            enumerate_window_bounded(&self.group, len, self.cfg.gamma_bound)
        }
    }

    fn rng(&self) -> StdRng {
        StdRng::seed_from_u64(self.cfg.seed)
    }

    fn random_elt(&self, window: &[ExtAffElt], rng: &mut StdRng) -> HeckeElt {
        let mut h = HeckeElt::zero(&self.group);
        for _ in 0..rng.gen_range(1..=2) {
            let x = window[rng.gen_range(0..window.len())].clone();
            let c = LaurentPoly::term(rng.gen_range(-3..=3), rng.gen_range(-2..=2));
            h.add_term(x, &c);
        }
        h
    }
}

fn fail(msg: impl Into<String>) -> CheckResult {
    Err(msg.into())
}

fn ok() -> CheckResult {
    Ok(None)
}

macro_rules! require {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return fail(format!($($arg)*));
        }
    };
}

// ---------------------------------------------------------------------------
// root_datum invariants

fn rd_reflection_involution(ctx: &SuiteCtx) -> CheckResult {
    let d = ctx.group.datum();
    for idx in 0..d.num_positive_roots() {
        for lam in d.weight_box(2) {
            let once = d.reflect_root(idx, &lam);
            let rd = &d.positive_roots()[idx];
            let formula = lam.sub(&rd.root.scaled(rd.coroot.pair(&lam)));
            require!(once == formula, "reflection formula fails at root {idx}, weight {lam}");
            require!(d.reflect_root(idx, &once) == lam, "reflection not involutive at {lam}");
        }
    }
    ok()
}

fn rd_dominant_rep_idempotent(ctx: &SuiteCtx) -> CheckResult {
    let d = ctx.group.datum();
    let full = d.full_subset();
    for lam in d.weight_box(3) {
        let (mu, _) = d.dominant_representative(&lam, &full).map_err(|e| e.to_string())?;
        let (mu2, word2) = d.dominant_representative(&mu, &full).map_err(|e| e.to_string())?;
        require!(mu == mu2 && word2.is_empty(), "dominant representative not idempotent at {lam}");
    }
    ok()
}

fn rd_dominant_difference(ctx: &SuiteCtx) -> CheckResult {
    let d = ctx.group.datum();
    let full = d.full_subset();
    let bound = if d.rank() > 1 { 3 } else { 5 };
    for lam in d.weight_box(bound) {
        let (mu, nu) = d.dominant_difference(&lam);
        require!(d.is_dominant_for(&mu, &full), "mu not dominant at {lam}");
        require!(d.is_dominant_for(&nu, &full), "nu not dominant at {lam}");
        require!(mu.sub(&nu) == lam, "difference mismatch at {lam}");
    }
    ok()
}

// ---------------------------------------------------------------------------
// finite_weyl invariants

fn fw_order_and_coset_sizes(ctx: &SuiteCtx) -> CheckResult {
    let g = &ctx.group;
    let expected = match g.datum().name() {
        "A1" => Some(2),
        "A2" => Some(6),
        "B2" => Some(8),
        "G2" => Some(12),
        "GL2" => Some(2),
        _ => None,
    };
    if let Some(n) = expected {
        require!(g.order() == n, "|W| = {} but expected {n}", g.order());
    }
    for (i_set, j_set) in &ctx.cells {
        let mut total = 0usize;
        let wi = g.parabolic_elements(i_set);
        let wj = g.parabolic_elements(j_set);
        for z in g.min_double_coset_reps(i_set, j_set) {
            let mut coset = HashSet::new();
            for a in &wi {
                for b in &wj {
                    coset.insert(
                        a.multiply(&z)
                            .and_then(|az| az.multiply(b))
                            .map_err(|e| e.to_string())?,
                    );
                }
            }
            total += coset.len();
        }
        require!(
            total == g.order(),
            "cosets for I={i_set}, J={j_set} cover {total} of {} elements",
            g.order()
        );
    }
    ok()
}

fn fw_bruhat_vs_subword(ctx: &SuiteCtx) -> CheckResult {
    let g = &ctx.group;
    let subword = |y: &WeylElt, w: &WeylElt| -> bool {
        let word = w.word().to_vec();
        let n = word.len();
        (0..(1u32 << n)).any(|mask| {
            let sub: Vec<usize> =
                (0..n).filter(|&k| mask & (1 << k) != 0).map(|k| word[k]).collect();
            &g.from_word(&sub).expect("valid letters") == y
        })
    };
    for y in g.elements() {
        for w in g.elements() {
            require!(
                y.bruhat_leq(&w) == subword(&y, &w),
                "Bruhat recurrence disagrees with subword oracle at y={y}, w={w}"
            );
        }
    }
    ok()
}

fn fw_decompose_lengths(ctx: &SuiteCtx) -> CheckResult {
    let g = &ctx.group;
    for (i_set, j_set) in &ctx.cells {
        let reps = g.min_double_coset_reps(i_set, j_set);
        for w in g.elements() {
            let (w1, z, w2) = g
                .double_coset_decompose(&w, i_set, j_set)
                .map_err(|e| e.to_string())?;
            let back = w1.multiply(&z).and_then(|a| a.multiply(&w2)).map_err(|e| e.to_string())?;
            require!(back == w, "decomposition does not reassemble at {w}");
            require!(
                w1.length() + z.length() + w2.length() == w.length(),
                "lengths do not add at {w} for I={i_set}, J={j_set}"
            );
            require!(reps.contains(&z), "middle factor {z} not minimal");
        }
    }
    ok()
}

fn fw_parabolic_intersection_enum(ctx: &SuiteCtx) -> CheckResult {
    let g = &ctx.group;
    for (i_set, j_set) in &ctx.cells {
        for z in g.min_double_coset_reps(i_set, j_set) {
            let k = g.parabolic_intersection(&z, i_set, j_set).map_err(|e| e.to_string())?;
            let wk: HashSet<WeylElt> = g.parabolic_elements(&k).into_iter().collect();
            let wj: Vec<WeylElt> = g.parabolic_elements(j_set);
            let direct: HashSet<WeylElt> = g
                .parabolic_elements(i_set)
                .into_iter()
                .filter(|w| {
                    let conj = z
                        .inverse()
                        .multiply(w)
                        .and_then(|a| a.multiply(&z))
                        .expect("same group");
                    wj.contains(&conj)
                })
                .collect();
            require!(
                wk == direct,
                "W_K differs from W_I meet zW_Jz^-1 at z={z}, I={i_set}, J={j_set}"
            );
        }
    }
    ok()
}

// ---------------------------------------------------------------------------
// ext_affine_weyl invariants

fn ea_length_vs_word(ctx: &SuiteCtx) -> CheckResult {
    for x in ctx.window(6).map_err(|e| e.to_string())? {
        let word = x.reduced_word().map_err(|e| e.to_string())?;
        require!(
            word.letters.len() as u64 == x.length(),
            "length {} vs word length {} at {x}",
            x.length(),
            word.letters.len()
        );
        let back = word.evaluate(&ctx.group).map_err(|e| e.to_string())?;
        require!(back == x, "word fails to evaluate back to {x}");
    }
    ok()
}

fn ea_length_step_and_gamma(ctx: &SuiteCtx) -> CheckResult {
    let letters = ExtAffElt::all_letters(&ctx.group);
    let gammas = if ctx.gamma_is_finite {
        gamma_elements(&ctx.group, None)
    } else {
        gamma_elements(&ctx.group, Some(ctx.cfg.gamma_bound))
    }
    .map_err(|e| e.to_string())?;
    for x in ctx.window(3).map_err(|e| e.to_string())? {
        for &l in &letters {
            let d = x.right_mul_letter(l).length() as i64 - x.length() as i64;
            require!(d.abs() == 1, "length step {d} at {x}");
        }
        for g in &gammas {
            let y = x.multiply(g).map_err(|e| e.to_string())?;
            require!(y.length() == x.length(), "gamma changed length at {x}");
        }
    }
    ok()
}

fn ea_canonical_constant_on_cosets(ctx: &SuiteCtx) -> CheckResult {
    let g = &ctx.group;
    for (i_set, j_set) in &ctx.cells {
        let wi = g.parabolic_elements(i_set);
        let wj = g.parabolic_elements(j_set);
        for x in ctx.window(2).map_err(|e| e.to_string())? {
            let rep = x.canonical_rep(i_set, j_set).map_err(|e| e.to_string())?;
            for a in &wi {
                for b in &wj {
                    let y = ExtAffElt::from_weyl(a.clone())
                        .multiply(&x)
                        .and_then(|ax| ax.multiply(&ExtAffElt::from_weyl(b.clone())))
                        .map_err(|e| e.to_string())?;
                    let rep2 = y.canonical_rep(i_set, j_set).map_err(|e| e.to_string())?;
                    require!(
                        rep2 == rep,
                        "canonical rep not constant on coset of {x} at I={i_set}, J={j_set}"
                    );
                }
            }
        }
    }
    ok()
}

fn ea_distinct_reps_disjoint(ctx: &SuiteCtx) -> CheckResult {
    // Lemma-double uniqueness: over a coordinate window, the canonical-rep
    // fibers coincide with the brute-force double coset partition.
    let g = &ctx.group;
    let n = ctx.cfg.weight_window.min(3);
    for (i_set, j_set) in &ctx.cells {
        let wi = g.parabolic_elements(i_set);
        let wj = g.parabolic_elements(j_set);
        let mut window_elts = Vec::new();
        for lam in g.datum().weight_box(n) {
            for w in g.elements() {
                window_elts.push(ExtAffElt::new(lam.clone(), w));
            }
        }
        let window_set: HashSet<ExtAffElt> = window_elts.iter().cloned().collect();
        let mut fibers: BTreeMap<(Weight, WeylElt), HashSet<ExtAffElt>> = BTreeMap::new();
        for x in &window_elts {
            let (lam, z) = x.canonical_rep(i_set, j_set).map_err(|e| e.to_string())?;
            fibers.entry((lam, z)).or_default().insert(x.clone());
        }
        for x in &window_elts {
            let mut orbit: HashSet<ExtAffElt> = HashSet::new();
            for a in &wi {
                for b in &wj {
                    let y = ExtAffElt::from_weyl(a.clone())
                        .multiply(x)
                        .and_then(|ax| ax.multiply(&ExtAffElt::from_weyl(b.clone())))
                        .map_err(|e| e.to_string())?;
                    if window_set.contains(&y) {
                        orbit.insert(y);
                    }
                }
            }
            let rep = x.canonical_rep(i_set, j_set).map_err(|e| e.to_string())?;
            let fiber = &fibers[&rep];
            require!(
                orbit.is_subset(fiber),
                "orbit of {x} leaks between canonical fibers at I={i_set}, J={j_set}"
            );
        }
        // Fibers are exactly the window traces of double cosets: distinct
        // reps give disjoint fibers by construction, so just check sizes.
        let total: usize = fibers.values().map(|f| f.len()).sum();
        require!(total == window_elts.len(), "fibers do not partition the window");
    }
    ok()
}

fn ea_minimal_rep_strict_min(ctx: &SuiteCtx) -> CheckResult {
    for (cell, module) in ctx.cells.iter().zip(&ctx.modules) {
        let (i_set, j_set) = cell;
        let wi = ctx.group.parabolic_elements(i_set);
        let wj = ctx.group.parabolic_elements(j_set);
        for idx in module.indices_in_weight_window(1).map_err(|e| e.to_string())? {
            let m = module.minimal_rep(&idx).map_err(|e| e.to_string())?;
            let x = ExtAffElt::new(idx.lam.clone(), idx.z.clone());
            let mut seen_m = false;
            for a in &wi {
                for b in &wj {
                    let y = ExtAffElt::from_weyl(a.clone())
                        .multiply(&x)
                        .and_then(|ax| ax.multiply(&ExtAffElt::from_weyl(b.clone())))
                        .map_err(|e| e.to_string())?;
                    if y == m {
                        seen_m = true;
                    } else {
                        require!(
                            y.length() > m.length(),
                            "coset member {y} not longer than minimal {m} at {idx}"
                        );
                    }
                }
            }
            require!(seen_m, "minimal element {m} not in its own coset at {idx}");
        }
    }
    ok()
}

// ---------------------------------------------------------------------------
// laurent_ring invariants

fn lp_ring_axioms(ctx: &SuiteCtx) -> CheckResult {
    let mut rng = ctx.rng();
    let mut random = |rng: &mut StdRng| {
        let mut p = LaurentPoly::zero();
        for _ in 0..rng.gen_range(0..5) {
            p += &LaurentPoly::term(rng.gen_range(-4..=4), rng.gen_range(-5..=5));
        }
        p
    };
    for _ in 0..100 {
        let a = random(&mut rng);
        let b = random(&mut rng);
        let c = random(&mut rng);
        require!(&(&a + &b) + &c == &a + &(&b + &c), "addition not associative");
        require!(&(&a * &b) * &c == &a * &(&b * &c), "multiplication not associative");
        require!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity fails");
        require!(a.bar().bar() == a, "bar not involutive");
        require!((&a * &b).bar() == &a.bar() * &b.bar(), "bar not multiplicative");
        require!(
            (&a * &b).eval_at_one() == a.eval_at_one() * b.eval_at_one(),
            "evaluation at one not multiplicative"
        );
    }
    ok()
}

fn lp_degree_valuation(ctx: &SuiteCtx) -> CheckResult {
    let mut rng = ctx.rng();
    for _ in 0..100 {
        let a = LaurentPoly::term(rng.gen_range(1..=3), rng.gen_range(-4..=4));
        let spread = LaurentPoly::term(rng.gen_range(1..=3), rng.gen_range(-4..=4));
        let p = &a + &spread;
        let q = &LaurentPoly::term(rng.gen_range(1..=2), rng.gen_range(-3..=3)) + &a;
        if p.is_zero() || q.is_zero() {
            continue;
        }
        let prod = &p * &q;
        require!(
            prod.degree() == Some(p.degree().unwrap() + q.degree().unwrap()),
            "degrees do not add"
        );
        require!(
            prod.valuation() == Some(p.valuation().unwrap() + q.valuation().unwrap()),
            "valuations do not add"
        );
    }
    ok()
}

// ---------------------------------------------------------------------------
// hecke_algebra invariants

fn ha_quadratic_and_braid(ctx: &SuiteCtx) -> CheckResult {
    let a = &ctx.alg;
    let v2 = LaurentPoly::v_pow(2);
    let v21 = &v2 - &LaurentPoly::one();
    let letters = ExtAffElt::all_letters(&ctx.group);
    for &l in &letters {
        let t = HeckeElt::basis(ExtAffElt::letter(&ctx.group, l));
        let sq = a.mul(&t, &t).map_err(|e| e.to_string())?;
        let expect = a.one().scale(&v2).add(&t.scale(&v21));
        require!(sq == expect, "quadratic relation fails at {l}");
    }
    for (i, &l1) in letters.iter().enumerate() {
        for &l2 in letters.iter().skip(i + 1) {
            let x1 = ExtAffElt::letter(&ctx.group, l1);
            let x2 = ExtAffElt::letter(&ctx.group, l2);
            let prod = x1.multiply(&x2).map_err(|e| e.to_string())?;
            let mut order = 0u32;
            let mut acc = ExtAffElt::identity(&ctx.group);
            for k in 1..=7 {
                acc = acc.multiply(&prod).map_err(|e| e.to_string())?;
                if acc.is_identity() {
                    order = k;
                    break;
                }
            }
            if order == 0 {
                continue; // infinite braid order: nothing to check
            }
            let mut lhs = a.one();
            let mut rhs = a.one();
            for k in 0..order {
                let (ll, rl) = if k % 2 == 0 { (l1, l2) } else { (l2, l1) };
                lhs = a.mul_letter_right(&lhs, ll);
                rhs = a.mul_letter_right(&rhs, rl);
            }
            require!(lhs == rhs, "braid relation fails for {l1}, {l2} (order {order})");
        }
    }
    ok()
}

fn ha_associativity(ctx: &SuiteCtx) -> CheckResult {
    let window = ctx.window(4).map_err(|e| e.to_string())?;
    let mut rng = ctx.rng();
    for trial in 0..100 {
        let x = ctx.random_elt(&window, &mut rng);
        let y = ctx.random_elt(&window, &mut rng);
        let z = ctx.random_elt(&window, &mut rng);
        let lhs = ctx
            .alg
            .mul(&ctx.alg.mul(&x, &y).map_err(|e| e.to_string())?, &z)
            .map_err(|e| e.to_string())?;
        let rhs = ctx
            .alg
            .mul(&x, &ctx.alg.mul(&y, &z).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        require!(lhs == rhs, "associativity fails on seeded trial {trial}: x={x}, y={y}, z={z}");
    }
    ok()
}

fn ha_bar_automorphism(ctx: &SuiteCtx) -> CheckResult {
    let window = ctx.window(3).map_err(|e| e.to_string())?;
    let mut rng = ctx.rng();
    for trial in 0..25 {
        let x = ctx.random_elt(&window, &mut rng);
        let y = ctx.random_elt(&window, &mut rng);
        let bx = ctx.alg.bar(&x).map_err(|e| e.to_string())?;
        require!(
            ctx.alg.bar(&bx).map_err(|e| e.to_string())? == x,
            "bar not involutive on trial {trial}"
        );
        let lhs = ctx
            .alg
            .bar(&ctx.alg.mul(&x, &y).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let rhs = ctx
            .alg
            .mul(&bx, &ctx.alg.bar(&y).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        require!(lhs == rhs, "bar not multiplicative on trial {trial}: x={x}, y={y}");
    }
    ok()
}

fn ha_theta_homomorphism(ctx: &SuiteCtx) -> CheckResult {
    let rank = ctx.group.datum().rank();
    let mut rng = ctx.rng();
    for trial in 0..50 {
        let lam = Weight((0..rank).map(|_| rng.gen_range(-2..=2)).collect());
        let mu = Weight((0..rank).map(|_| rng.gen_range(-2..=2)).collect());
        let lhs = ctx
            .alg
            .mul(
                &ctx.alg.theta(&lam).map_err(|e| e.to_string())?,
                &ctx.alg.theta(&mu).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
        require!(
            lhs == ctx.alg.theta(&lam.add(&mu)).map_err(|e| e.to_string())?,
            "theta not multiplicative on trial {trial}: {lam} + {mu}"
        );
        // Independence of the dominant decomposition: shift both parts.
        let (m, n) = ctx.group.datum().dominant_difference(&lam);
        let mut rho2 = Weight::zero(rank);
        for rd in ctx.group.datum().positive_roots() {
            rho2 = rho2.add(&rd.root);
        }
        let alt = ctx
            .alg
            .theta_from_difference(&m.add(&rho2), &n.add(&rho2))
            .map_err(|e| e.to_string())?;
        require!(
            alt == ctx.alg.theta(&lam).map_err(|e| e.to_string())?,
            "theta depends on the dominant decomposition at {lam}"
        );
    }
    ok()
}

fn ha_centrality(ctx: &SuiteCtx) -> CheckResult {
    let datum = ctx.group.datum().clone();
    let rank = datum.rank();
    let samples = [Weight(vec![1; rank]), Weight((0..rank).map(|i| (i as i64 % 2) + 1).collect())];
    for lam in samples {
        let mut orbit: Vec<Weight> = Vec::new();
        for w in ctx.group.elements() {
            let mu = w.apply(&lam);
            if !orbit.contains(&mu) {
                orbit.push(mu);
            }
        }
        let mut c = HeckeElt::zero(&ctx.group);
        for mu in &orbit {
            c = c.add(&ctx.alg.theta(mu).map_err(|e| e.to_string())?);
        }
        for i in 0..datum.ss_rank() {
            let ts = ctx
                .alg
                .finite_t(&ctx.group.simple_reflection(i).map_err(|e| e.to_string())?);
            let lhs = ctx.alg.mul(&c, &ts).map_err(|e| e.to_string())?;
            let rhs = ctx.alg.mul(&ts, &c).map_err(|e| e.to_string())?;
            require!(lhs == rhs, "orbit sum of theta({lam}) does not commute with s{}", i + 1);
        }
    }
    ok()
}

fn ha_theta_past_ts(ctx: &SuiteCtx) -> CheckResult {
    let datum = ctx.group.datum().clone();
    for lam in datum.weight_box(2) {
        for s in 0..datum.ss_rank() {
            let past = ctx.alg.theta_past_ts(&lam, s).map_err(|e| e.to_string())?;
            let direct = ctx
                .alg
                .mul(
                    &ctx.alg.theta(&lam).map_err(|e| e.to_string())?,
                    &ctx.alg.finite_t(&ctx.group.simple_reflection(s).map_err(|e| e.to_string())?),
                )
                .map_err(|e| e.to_string())?;
            require!(
                past.expand(&ctx.alg).map_err(|e| e.to_string())? == direct,
                "theta commutation fails at lambda={lam}, s{}",
                s + 1
            );
        }
    }
    ok()
}

fn ha_bernstein_unit_diagonal(ctx: &SuiteCtx) -> CheckResult {
    let datum = ctx.group.datum().clone();
    for lam in datum.weight_box(2) {
        for w in ctx.group.elements() {
            let h = ctx
                .alg
                .mul(&ctx.alg.theta(&lam).map_err(|e| e.to_string())?, &ctx.alg.finite_t(&w))
                .map_err(|e| e.to_string())?;
            let top = ExtAffElt::new(lam.clone(), w.clone());
            let lead = h.coeff(&top);
            let unit = lead.as_monomial().map(|(c, _)| c.abs() == 1).unwrap_or(false);
            require!(unit, "coefficient of theta({lam}) T_{w} at t_lam w is not a unit monomial");
        }
        // Pure thetas are supported inside the Bruhat ideal of t_lambda.
        let theta = ctx.alg.theta(&lam).map_err(|e| e.to_string())?;
        let top = ExtAffElt::translation(&ctx.group, lam.clone());
        for x in theta.support() {
            require!(
                x.bruhat_leq(&top).map_err(|e| e.to_string())?,
                "support of theta({lam}) escapes the ideal of t_lam"
            );
        }
    }
    // Round trip on a window.
    for x in ctx.window(3).map_err(|e| e.to_string())? {
        let h = HeckeElt::basis(x.clone());
        let b = ctx.alg.to_bernstein(&h).map_err(|e| e.to_string())?;
        let back = ctx.alg.from_bernstein(&b).map_err(|e| e.to_string())?;
        require!(back == h, "Bernstein round trip fails at {x}");
    }
    ok()
}

// ---------------------------------------------------------------------------
// kl_basis invariants

fn kl_bar_invariance_and_degrees(ctx: &SuiteCtx) -> CheckResult {
    for x in ctx.window(4).map_err(|e| e.to_string())? {
        let cp = ctx.kl.c_prime(&x).map_err(|e| e.to_string())?;
        require!(
            ctx.alg.bar(&cp).map_err(|e| e.to_string())? == cp,
            "C'_{x} is not bar-invariant"
        );
        let ce = ctx.kl.c_element(&x).map_err(|e| e.to_string())?;
        require!(
            ctx.alg.bar(&ce).map_err(|e| e.to_string())? == ce,
            "C_{x} is not bar-invariant"
        );
        require!(
            cp.coeff(&x) == LaurentPoly::v_pow(-(x.length() as i32)),
            "leading coefficient of C'_{x}"
        );
        for (y, _) in cp.iter() {
            require!(
                y.bruhat_leq(&x).map_err(|e| e.to_string())?,
                "support of C'_{x} above x"
            );
            if y != &x {
                let p = ctx.kl.kl_polynomial(y, &x).map_err(|e| e.to_string())?;
                require!(
                    p.degree().unwrap_or(0) <= x.length() as i32 - y.length() as i32 - 1,
                    "degree bound fails for P at y={y}, x={x}: {p}"
                );
            }
        }
    }
    ok()
}

fn kl_descent_property(ctx: &SuiteCtx) -> CheckResult {
    let v2 = LaurentPoly::v_pow(2);
    for x in ctx.window(3).map_err(|e| e.to_string())? {
        let cp = ctx.kl.c_prime(&x).map_err(|e| e.to_string())?;
        let ce = ctx.kl.c_element(&x).map_err(|e| e.to_string())?;
        for l in ExtAffElt::all_letters(&ctx.group) {
            let t = HeckeElt::basis(ExtAffElt::letter(&ctx.group, l));
            if x.has_left_descent(l) {
                require!(
                    ctx.alg.mul(&t, &ce).map_err(|e| e.to_string())? == ce.neg(),
                    "T C_x != -C_x at {x}, {l}"
                );
                require!(
                    ctx.alg.mul(&t, &cp).map_err(|e| e.to_string())? == cp.scale(&v2),
                    "T C'_x != v^2 C'_x at {x}, {l}"
                );
            }
            if x.has_right_descent(l) {
                require!(
                    ctx.alg.mul(&ce, &t).map_err(|e| e.to_string())? == ce.neg(),
                    "C_x T != -C_x at {x}, {l}"
                );
                require!(
                    ctx.alg.mul(&cp, &t).map_err(|e| e.to_string())? == cp.scale(&v2),
                    "C'_x T != v^2 C'_x at {x}, {l}"
                );
            }
        }
    }
    ok()
}

fn kl_recursion_vs_bar_solver(ctx: &SuiteCtx) -> CheckResult {
    for x in ctx.window(4).map_err(|e| e.to_string())? {
        let by_recursion = ctx.kl.c_prime(&x).map_err(|e| e.to_string())?;
        let by_solver = c_prime_by_bar_fixed_point(&ctx.alg, &x).map_err(|e| e.to_string())?;
        require!(by_recursion == by_solver, "recursion and bar solver disagree at {x}");
    }
    ok()
}

fn kl_gamma_compat(ctx: &SuiteCtx) -> CheckResult {
    let gammas = if ctx.gamma_is_finite {
        gamma_elements(&ctx.group, None)
    } else {
        gamma_elements(&ctx.group, Some(ctx.cfg.gamma_bound))
    }
    .map_err(|e| e.to_string())?;
    let mut all_even = true;
    for x in ctx.window(3).map_err(|e| e.to_string())? {
        for g in &gammas {
            let xg = x.multiply(g).map_err(|e| e.to_string())?;
            let lhs = ctx.kl.c_prime(&xg).map_err(|e| e.to_string())?;
            let rhs = ctx
                .alg
                .mul_gamma_right(&ctx.kl.c_prime(&x).map_err(|e| e.to_string())?, g)
                .map_err(|e| e.to_string())?;
            require!(lhs == rhs, "C'(x gamma) != C'(x) T_gamma at {x}, gamma={g}");
        }
        for (y, _) in ctx.kl.c_prime(&x).map_err(|e| e.to_string())?.iter() {
            if !ctx.kl.kl_polynomial(y, &x).map_err(|e| e.to_string())?.is_even() {
                all_even = false;
            }
        }
    }
    Ok(Some(format!("all computed P lie in Z[v^2]: {all_even}")))
}

// ---------------------------------------------------------------------------
// double_coset_module invariants

fn dc_basis_count(ctx: &SuiteCtx) -> CheckResult {
    let n = ctx.cfg.weight_window.min(3);
    for (cell, module) in ctx.cells.iter().zip(&ctx.modules) {
        let (i_set, j_set) = cell;
        let indices = module.indices_in_weight_window(n).map_err(|e| e.to_string())?;
        let mut reps = HashSet::new();
        for lam in ctx.group.datum().weight_box(n) {
            for w in ctx.group.elements() {
                let x = ExtAffElt::new(lam.clone(), w);
                let (rl, rz) = x.canonical_rep(i_set, j_set).map_err(|e| e.to_string())?;
                if rl.max_abs_coord() <= n {
                    reps.insert((rl, rz));
                }
            }
        }
        require!(
            indices.len() == reps.len(),
            "{} basis indices vs {} canonical fibers at I={i_set}, J={j_set}",
            indices.len(),
            reps.len()
        );
    }
    ok()
}

fn dc_specialized_rank(ctx: &SuiteCtx) -> CheckResult {
    let n = ctx.cfg.weight_window.min(2);
    for module in &ctx.modules {
        let indices = module.indices_in_weight_window(n).map_err(|e| e.to_string())?;
        let elts: Vec<HijElt> = indices
            .iter()
            .map(|idx| module.standard_basis_elt(idx))
            .collect::<Result<_>>()
            .map_err(|e| e.to_string())?;
        let rank = module.specialized_rank(&elts);
        require!(
            rank == indices.len(),
            "specialized rank {rank} below index count {} at I={}, J={}",
            indices.len(),
            module.i_set(),
            module.j_set()
        );
    }
    ok()
}

fn dc_expansion_identity(ctx: &SuiteCtx) -> CheckResult {
    let window = ctx.window(4).map_err(|e| e.to_string())?;
    for module in &ctx.modules {
        for x in &window {
            let e = module.chi(&HeckeElt::basis(x.clone())).map_err(|e| e.to_string())?;
            let coords = module.to_bernstein_coords(&e).map_err(|e| e.to_string())?;
            let back = module.expand_bernstein(&coords).map_err(|e| e.to_string())?;
            require!(
                back == e,
                "Bernstein expansion does not reproduce chi(T_x) at x={x}, I={}, J={}",
                module.i_set(),
                module.j_set()
            );
        }
    }
    ok()
}

fn dc_annihilation(ctx: &SuiteCtx) -> CheckResult {
    for module in &ctx.modules {
        for x in ctx.window(2).map_err(|e| e.to_string())? {
            let e = module.chi(&HeckeElt::basis(x.clone())).map_err(|e| e.to_string())?;
            for &i in module.i_set().indices() {
                let t = ctx
                    .alg
                    .finite_t(&ctx.group.simple_reflection(i).map_err(|e| e.to_string())?);
                let moved = ctx.alg.mul(&t, e.carrier()).map_err(|e| e.to_string())?;
                require!(moved == e.carrier().neg(), "left annihilation fails at {x}");
            }
            for &j in module.j_set().indices() {
                let s = ctx
                    .alg
                    .finite_t(&ctx.group.simple_reflection(j).map_err(|e| e.to_string())?);
                let moved = ctx.alg.mul(e.carrier(), &s).map_err(|e| e.to_string())?;
                require!(moved == e.carrier().neg(), "right annihilation fails at {x}");
            }
        }
    }
    ok()
}

fn dc_kl_unitriangular(ctx: &SuiteCtx) -> CheckResult {
    for module in &ctx.modules {
        for idx in module.indices_in_weight_window(1).map_err(|e| e.to_string())? {
            let e = module.kl_basis_elt(&idx).map_err(|e| e.to_string())?;
            let coords = module.standard_coords(&e).map_err(|e| e.to_string())?;
            let m = module.minimal_rep(&idx).map_err(|e| e.to_string())?;
            require!(
                coords.get(&idx) == Some(&LaurentPoly::v_pow(-(m.length() as i32))),
                "KL leading coefficient wrong at {idx}"
            );
            for (jdx, c) in &coords {
                if jdx == &idx {
                    continue;
                }
                let mj = module.minimal_rep(jdx).map_err(|e| e.to_string())?;
                let below =
                    mj.bruhat_leq(&m).map_err(|e| e.to_string())? && mj != m;
                require!(below, "KL expansion not unitriangular at {idx} (term {jdx})");
                let p = c.shift(m.length() as i32);
                require!(
                    p.is_polynomial()
                        && p.degree().unwrap_or(0) as u64 <= m.length() - mj.length() - 1,
                    "KL expansion degree bound fails at {idx} (term {jdx})"
                );
            }
        }
    }
    ok()
}

fn dc_chi_cprime_vanishing(ctx: &SuiteCtx) -> CheckResult {
    let window = ctx.window(3).map_err(|e| e.to_string())?;
    for (cell, module) in ctx.cells.iter().zip(&ctx.modules) {
        let (i_set, j_set) = cell;
        for x in &window {
            let image = module.chi_cprime_vanishing(x).map_err(|e| e.to_string())?;
            let (lam, z) = x.canonical_rep(i_set, j_set).map_err(|e| e.to_string())?;
            let idx = module.coset_index(lam, z).map_err(|e| e.to_string())?;
            let m = module.minimal_rep(&idx).map_err(|e| e.to_string())?;
            if &m == x {
                require!(
                    image == module.kl_basis_elt(&idx).map_err(|e| e.to_string())?,
                    "chi(C'_x) differs from the KL basis at minimal x={x}"
                );
            } else {
                require!(
                    image.is_zero(),
                    "chi(C'_x) nonzero at non-minimal x={x}, I={i_set}, J={j_set}"
                );
            }
        }
    }
    ok()
}

fn dc_corner_cases(ctx: &SuiteCtx) -> CheckResult {
    // I = J = empty: chi is the identity and the module bases collapse to
    // their algebra counterparts.
    let empty = SimpleSubset::empty();
    let trivial = DoubleCosetModule::new(ctx.kl.clone(), empty.clone(), empty.clone())
        .map_err(|e| e.to_string())?;
    for x in ctx.window(3).map_err(|e| e.to_string())? {
        let e = trivial.chi(&HeckeElt::basis(x.clone())).map_err(|e| e.to_string())?;
        require!(e.carrier() == &HeckeElt::basis(x.clone()), "chi not identity at {x}");
        let (lam, z) = x.canonical_rep(&empty, &empty).map_err(|e| e.to_string())?;
        let idx = trivial.coset_index(lam, z).map_err(|e| e.to_string())?;
        require!(
            trivial.minimal_rep(&idx).map_err(|e| e.to_string())? == x,
            "minimal rep should be x itself at {x}"
        );
        let kl_elt = trivial.kl_basis_elt(&idx).map_err(|e| e.to_string())?;
        require!(
            kl_elt.carrier() == &ctx.kl.c_prime(&x).map_err(|e| e.to_string())?,
            "KL basis element should be C'_x at {x}"
        );
    }
    // I = J = S: indices are dominant translations over z = 1.
    let full = SimpleSubset::full(ctx.group.datum().ss_rank());
    let nilmodule = DoubleCosetModule::new(ctx.kl.clone(), full.clone(), full.clone())
        .map_err(|e| e.to_string())?;
    require!(nilmodule.min_reps().len() == 1, "I=J=S should have a single double coset");
    for idx in nilmodule
        .indices_in_weight_window(ctx.cfg.weight_window.min(3))
        .map_err(|e| e.to_string())?
    {
        require!(idx.z.is_identity(), "full-parabolic index at z = {}", idx.z);
        require!(
            ctx.group.datum().is_dominant_for(&idx.lam, &full),
            "full-parabolic index weight {} not dominant",
            idx.lam
        );
    }
    ok()
}

// ---------------------------------------------------------------------------

/// The full registry; each library invariant appears exactly once.
pub fn registered_checks() -> Vec<CheckDef> {
    vec![
        CheckDef { name: "reflection_involution", module: "root_datum", runner: rd_reflection_involution },
        CheckDef { name: "dominant_representative_idempotent", module: "root_datum", runner: rd_dominant_rep_idempotent },
        CheckDef { name: "dominant_difference_window", module: "root_datum", runner: rd_dominant_difference },
        CheckDef { name: "order_and_coset_sizes", module: "finite_weyl", runner: fw_order_and_coset_sizes },
        CheckDef { name: "bruhat_vs_subword_oracle", module: "finite_weyl", runner: fw_bruhat_vs_subword },
        CheckDef { name: "double_coset_lengths_add", module: "finite_weyl", runner: fw_decompose_lengths },
        CheckDef { name: "parabolic_intersection_enumeration", module: "finite_weyl", runner: fw_parabolic_intersection_enum },
        CheckDef { name: "length_vs_reduced_word", module: "ext_affine_weyl", runner: ea_length_vs_word },
        CheckDef { name: "length_steps_and_gamma", module: "ext_affine_weyl", runner: ea_length_step_and_gamma },
        CheckDef { name: "canonical_rep_constant_on_cosets", module: "ext_affine_weyl", runner: ea_canonical_constant_on_cosets },
        CheckDef { name: "distinct_reps_disjoint_cosets", module: "ext_affine_weyl", runner: ea_distinct_reps_disjoint },
        CheckDef { name: "minimal_rep_strictly_minimal", module: "ext_affine_weyl", runner: ea_minimal_rep_strict_min },
        CheckDef { name: "ring_axioms_bar_eval", module: "laurent_ring", runner: lp_ring_axioms },
        CheckDef { name: "degree_valuation_additivity", module: "laurent_ring", runner: lp_degree_valuation },
        CheckDef { name: "quadratic_and_braid_relations", module: "hecke_algebra", runner: ha_quadratic_and_braid },
        CheckDef { name: "associativity_random_triples", module: "hecke_algebra", runner: ha_associativity },
        CheckDef { name: "bar_ring_automorphism", module: "hecke_algebra", runner: ha_bar_automorphism },
        CheckDef { name: "theta_homomorphism", module: "hecke_algebra", runner: ha_theta_homomorphism },
        CheckDef { name: "central_orbit_sums", module: "hecke_algebra", runner: ha_centrality },
        CheckDef { name: "theta_past_ts_expansion", module: "hecke_algebra", runner: ha_theta_past_ts },
        CheckDef { name: "bernstein_unit_diagonal_round_trip", module: "hecke_algebra", runner: ha_bernstein_unit_diagonal },
        CheckDef { name: "kl_bar_invariance_degree_bounds", module: "kl_basis", runner: kl_bar_invariance_and_degrees },
        CheckDef { name: "kl_descent_property", module: "kl_basis", runner: kl_descent_property },
        CheckDef { name: "kl_recursion_vs_bar_solver", module: "kl_basis", runner: kl_recursion_vs_bar_solver },
        CheckDef { name: "kl_gamma_compatibility", module: "kl_basis", runner: kl_gamma_compat },
        CheckDef { name: "basis_count_bijection", module: "double_coset_module", runner: dc_basis_count },
        CheckDef { name: "specialized_standard_basis_rank", module: "double_coset_module", runner: dc_specialized_rank },
        CheckDef { name: "bernstein_expansion_identity", module: "double_coset_module", runner: dc_expansion_identity },
        CheckDef { name: "descent_annihilation", module: "double_coset_module", runner: dc_annihilation },
        CheckDef { name: "kl_basis_unitriangular", module: "double_coset_module", runner: dc_kl_unitriangular },
        CheckDef { name: "chi_cprime_projection", module: "double_coset_module", runner: dc_chi_cprime_vanishing },
        CheckDef { name: "corner_case_collapse", module: "double_coset_module", runner: dc_corner_cases },
    ]
}

/// Runs every registered check and assembles the report. The report is
/// byte-identical across runs with the same configuration, up to the timing
/// fields.
pub fn run_suite(cfg: SuiteConfig) -> Result<SuiteReport> {
    let parallel = cfg.parallel;
    let ctx = SuiteCtx::new(cfg)?;
    let checks = registered_checks();
    let params = format!(
        "type={} window={} weight_window={} seed={}",
        ctx.group.datum().name(),
        ctx.cfg.window,
        ctx.cfg.weight_window,
        ctx.cfg.seed
    );
    let run_one = |def: &CheckDef| -> CheckOutcome {
        let start = Instant::now();
        let result = (def.runner)(&ctx);
        let millis = start.elapsed().as_millis();
        match result {
            Ok(detail) => CheckOutcome {
                name: def.name.to_string(),
                module: def.module.to_string(),
                params: params.clone(),
                status: "pass".into(),
                counterexample: None,
                detail,
                millis,
            },
            Err(ce) => CheckOutcome {
                name: def.name.to_string(),
                module: def.module.to_string(),
                params: params.clone(),
                status: "fail".into(),
                counterexample: Some(ce),
                detail: None,
                millis,
            },
        }
    };
    let outcomes: Vec<CheckOutcome> = if parallel {
        let slots: Vec<std::sync::Mutex<Option<CheckOutcome>>> =
            checks.iter().map(|_| std::sync::Mutex::new(None)).collect();
        let next = std::sync::atomic::AtomicUsize::new(0);
        std::thread::scope(|scope| {
            let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(2);
            for _ in 0..workers.min(checks.len()) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    if i >= checks.len() {
                        break;
                    }
                    let outcome = run_one(&checks[i]);
                    *slots[i].lock().unwrap() = Some(outcome);
                });
            }
        });
        slots
            .into_iter()
            .map(|s| s.into_inner().unwrap().expect("check completed"))
            .collect()
    } else {
        checks.iter().map(run_one).collect()
    };
    let passed = outcomes.iter().all(|o| o.status == "pass");
    Ok(SuiteReport {
        datum: ctx.group.datum().name().to_string(),
        window: ctx.cfg.window,
        weight_window: ctx.cfg.weight_window,
        cells: ctx
            .cells
            .iter()
            .map(|(i, j)| format!("I={i}, J={j}"))
            .collect(),
        checks: outcomes,
        passed,
    })
}
