//! The element expression grammar used by the command-line tool:
//!
//! ```text
//! EXPR    := FACTOR { "*" FACTOR }
//! FACTOR  := "T" WORD | "theta" WEIGHT | "Cprime" ELT | "chi(" EXPR ")" | LAURENT
//! ELT     := WORD | "t(" WEIGHT ")" [WORD] | "m(" WEIGHT ";" WORD ")"
//! WEIGHT  := int { "," int }
//! WORD    := letter { " " letter }     with letters s1..sn, s0 (or s0:c for
//!            component c) for the affine reflections, g:coords for the
//!            length-zero element with the given translation, and 1 or e for
//!            the identity
//! LAURENT := a Laurent polynomial literal such as "v^2 - 1"
//! ```
//!
//! `m(...)` names the minimal-length double coset representative for the
//! module's pair of subsets.

use crate::coset_module::{DoubleCosetModule, HijElt};
use crate::error::{Error, Result};
use crate::ext_affine::{AffLetter, ExtAffElt};
use crate::hecke_alg::HeckeElt;
use crate::laurent::LaurentPoly;
use crate::root_datum::Weight;
use crate::weyl::WeylGroup;

/// Result of evaluating an expression: either a plain Hecke algebra element
/// or a projected module element.
pub enum Evaluated {
    Hecke(HeckeElt),
    Module(HijElt),
}

pub fn parse_weight(group: &WeylGroup, text: &str) -> Result<Weight> {
    let coords: Vec<i64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight coordinate {t:?}")))
        })
        .collect::<Result<_>>()?;
    if coords.len() != group.datum().rank() {
        return Err(Error::Parse(format!(
            "weight has {} coordinates, expected {}",
            coords.len(),
            group.datum().rank()
        )));
    }
    Ok(Weight(coords))
}

fn parse_letter(group: &WeylGroup, token: &str) -> Result<ExtAffElt> {
    if token == "1" || token == "e" {
        return Ok(ExtAffElt::identity(group));
    }
    if let Some(coords) = token.strip_prefix("g:") {
        let lam = parse_weight(group, coords)?;
        // The length-zero element with this translation, if one exists.
        for w in group.elements() {
            let cand = ExtAffElt::new(lam.clone(), w);
            if cand.is_gamma() {
                return Ok(cand);
            }
        }
        return Err(Error::Parse(format!(
            "no length-zero element has translation {lam}"
        )));
    }
    let rest = token
        .strip_prefix('s')
        .ok_or_else(|| Error::Parse(format!("unknown generator {token:?}")))?;
    if rest == "0" {
        return Ok(ExtAffElt::letter(group, AffLetter::Affine(0)));
    }
    if let Some(comp) = rest.strip_prefix("0:") {
        let c: usize = comp
            .parse()
            .map_err(|_| Error::Parse(format!("bad component in {token:?}")))?;
        if c == 0 || c > group.datum().components().len() {
            return Err(Error::Parse(format!("component out of range in {token:?}")));
        }
        return Ok(ExtAffElt::letter(group, AffLetter::Affine(c - 1)));
    }
    let k: usize = rest
        .parse()
        .map_err(|_| Error::Parse(format!("unknown generator {token:?}")))?;
    if k == 0 || k > group.datum().ss_rank() {
        return Err(Error::Parse(format!("generator {token:?} out of range")));
    }
    Ok(ExtAffElt::letter(group, AffLetter::Simple(k - 1)))
}

pub fn parse_word(group: &WeylGroup, text: &str) -> Result<ExtAffElt> {
    let mut out = ExtAffElt::identity(group);
    for token in text.split_whitespace() {
        out = out.multiply(&parse_letter(group, token)?)?;
    }
    Ok(out)
}

fn parse_element(module: &DoubleCosetModule, text: &str) -> Result<ExtAffElt> {
    let group = module.group();
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("t(") {
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse("missing ')' after t(".into()))?;
        let lam = parse_weight(group, &rest[..close])?;
        let tail = parse_word(group, &rest[close + 1..])?;
        return ExtAffElt::translation(group, lam).multiply(&tail);
    }
    if let Some(rest) = text.strip_prefix("m(") {
        let close = rest
            .rfind(')')
            .ok_or_else(|| Error::Parse("missing ')' after m(".into()))?;
        let inner = &rest[..close];
        let (wt, word) = inner
            .split_once(';')
            .ok_or_else(|| Error::Parse("m(...) takes WEIGHT;WORD".into()))?;
        let lam = parse_weight(group, wt)?;
        let z_ext = parse_word(group, word)?;
        if !z_ext.translation_part().is_zero() {
            return Err(Error::Parse("the z part of m(...) must be finite".into()));
        }
        let idx = module.coset_index(lam, z_ext.finite_part().clone())?;
        return module.minimal_rep(&idx);
    }
    parse_word(group, text)
}

/// Splits on `*` at parenthesis depth zero.
fn split_factors(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '*' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn eval_factor(module: &DoubleCosetModule, text: &str) -> Result<Evaluated> {
    let text = text.trim();
    let group = module.group();
    if let Some(rest) = text.strip_prefix("chi(") {
        if !rest.ends_with(')') {
            return Err(Error::Parse("missing ')' after chi(".into()));
        }
        let inner = evaluate(module, &rest[..rest.len() - 1])?;
        let h = match inner {
            Evaluated::Hecke(h) => h,
            Evaluated::Module(_) => {
                return Err(Error::Parse("chi(...) cannot be nested".into()))
            }
        };
        return Ok(Evaluated::Module(module.chi(&h)?));
    }
    if let Some(word) = text.strip_prefix("T ").or(if text == "T" { Some("") } else { None }) {
        return Ok(Evaluated::Hecke(HeckeElt::basis(parse_word(group, word)?)));
    }
    if let Some(wt) = text.strip_prefix("theta ") {
        return Ok(Evaluated::Hecke(
            module.algebra().theta(&parse_weight(group, wt)?)?,
        ));
    }
    if let Some(elt) = text.strip_prefix("Cprime ") {
        let x = parse_element(module, elt)?;
        return Ok(Evaluated::Hecke(module.kl_table().c_prime(&x)?));
    }
    let p: LaurentPoly = text
        .parse()
        .map_err(|_| Error::Parse(format!("cannot parse factor {text:?}")))?;
    Ok(Evaluated::Hecke(module.algebra().one().scale(&p)))
}

/// Evaluates an expression against a module context. `chi(...)` produces a
/// module element; it may be scaled but not multiplied by further algebra
/// elements.
pub fn evaluate(module: &DoubleCosetModule, text: &str) -> Result<Evaluated> {
    let mut acc: Option<Evaluated> = None;
    for factor in split_factors(text) {
        let f = eval_factor(module, factor)?;
        acc = Some(match (acc, f) {
            (None, f) => f,
            (Some(Evaluated::Hecke(a)), Evaluated::Hecke(b)) => {
                Evaluated::Hecke(module.algebra().mul(&a, &b)?)
            }
            (Some(Evaluated::Hecke(a)), Evaluated::Module(e)) => {
                // Only scalar multiples of module elements make sense.
                if a.num_terms() == 1 && !a.coeff(&ExtAffElt::identity(module.group())).is_zero() {
                    let c = a.coeff(&ExtAffElt::identity(module.group()));
                    Evaluated::Module(e.scale(&c))
                } else {
                    return Err(Error::Parse(
                        "a module element may only be scaled by a Laurent factor".into(),
                    ));
                }
            }
            (Some(Evaluated::Module(e)), Evaluated::Hecke(b)) => {
                if b.num_terms() == 1 && !b.coeff(&ExtAffElt::identity(module.group())).is_zero() {
                    let c = b.coeff(&ExtAffElt::identity(module.group()));
                    Evaluated::Module(e.scale(&c))
                } else {
                    return Err(Error::Parse(
                        "a module element may only be scaled by a Laurent factor".into(),
                    ));
                }
            }
            (Some(Evaluated::Module(_)), Evaluated::Module(_)) => {
                return Err(Error::Parse(
                    "no product is defined between module elements".into(),
                ))
            }
        });
    }
    acc.ok_or_else(|| Error::Parse("empty expression".into()))
}
