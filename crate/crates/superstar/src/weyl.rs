//! Presentation-based Weyl and Clifford algebras via normal-ordering
//! rewriting, used as an independent pipeline against the star product.
//!
//! Words in the generators p_i, q_i, t_i are rewritten into the PBW basis
//! (p-powers, q-powers, ascending odd set) using only the commutation
//! relations of the Heisenberg and Clifford Lie superalgebras:
//! q_i p_i -> p_i q_i - hbar, t_i t_i -> -(hbar/2) eps_i, everything else
//! (anti)commutes. No hbar inverse is ever introduced.

use std::collections::BTreeMap;

use num::{One, Zero};
use rand::Rng;

use crate::algebra::{rat, Coeff, Monomial, Parity, Signature, SuperPolynomial, VarKind, Variable};
use crate::error::{Error, Result};
use crate::star::StarContext;

/// An uninterpreted word in the algebra generators, with a scalar prefactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWord {
    pub letters: Vec<Variable>,
    pub hbar: u32,
    pub coeff: Coeff,
}

impl GeneratorWord {
    pub fn new(sig: &Signature, letters: Vec<Variable>) -> Result<GeneratorWord> {
        for &v in &letters {
            let ok = matches!(v.kind, VarKind::P | VarKind::Q | VarKind::Theta) && sig.admits(v);
            if !ok {
                return Err(Error::UnknownVariable(format!("{v:?}")));
            }
        }
        Ok(GeneratorWord { letters, hbar: 0, coeff: Coeff::one() })
    }

    pub fn empty() -> GeneratorWord {
        GeneratorWord { letters: Vec::new(), hbar: 0, coeff: Coeff::one() }
    }
}

/// An element in the PBW basis. The wrapped polynomial's monomials are basis
/// labels p^a q^b t_S hbar^k, not symbols of the supercommutative algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalOrderedElement {
    pub poly: SuperPolynomial,
}

type Key = (Vec<Variable>, u32);
type WordSum = BTreeMap<Key, Coeff>;

fn add_into(sum: &mut WordSum, key: Key, c: Coeff) {
    if c.is_zero() {
        return;
    }
    let entry = sum.entry(key.clone()).or_insert_with(Coeff::zero);
    *entry += c;
    if entry.is_zero() {
        sum.remove(&key);
    }
}

/// Positions at which a rewrite rule applies.
fn reducible_positions(word: &[Variable]) -> Vec<usize> {
    let mut out = Vec::new();
    for j in 0..word.len().saturating_sub(1) {
        let (x, y) = (word[j], word[j + 1]);
        if x == y {
            if x.parity() == Parity::Odd {
                out.push(j);
            }
        } else if x > y {
            out.push(j);
        }
    }
    out
}

/// Apply the rule at position j, producing one or two summands.
fn apply_rule(sig: &Signature, word: &[Variable], hbar: u32, coeff: &Coeff, j: usize) -> Vec<(Key, Coeff)> {
    let (x, y) = (word[j], word[j + 1]);
    let mut out = Vec::new();
    if x == y && x.parity() == Parity::Odd {
        // t_i t_i -> -(hbar/2) eps_i
        let mut w = word.to_vec();
        w.drain(j..j + 2);
        let c = coeff * rat(-(sig.epsilon(x.index) as i64), 2);
        out.push(((w, hbar + 1), c));
        return out;
    }
    debug_assert!(x > y);
    let mut swapped = word.to_vec();
    swapped.swap(j, j + 1);
    if x.parity() == Parity::Odd && y.parity() == Parity::Odd {
        // distinct odd generators anticommute (diagonal G)
        out.push(((swapped, hbar), -coeff.clone()));
    } else if x.kind == VarKind::Q && y.kind == VarKind::P && x.index == y.index {
        // q_i p_i -> p_i q_i - hbar
        out.push(((swapped, hbar), coeff.clone()));
        let mut dropped = word.to_vec();
        dropped.drain(j..j + 2);
        out.push(((dropped, hbar + 1), -coeff.clone()));
    } else {
        out.push(((swapped, hbar), coeff.clone()));
    }
    out
}

fn word_to_monomial(word: &[Variable], hbar: u32) -> Monomial {
    let mut m = Monomial::hbar_power(hbar);
    for &v in word {
        match v.parity() {
            Parity::Even => *m.even.entry(v).or_insert(0) += 1,
            Parity::Odd => m.odd.push(v),
        }
    }
    m
}

fn monomial_to_word(m: &Monomial) -> (Vec<Variable>, u32) {
    let mut word = Vec::new();
    for (&v, &e) in &m.even {
        word.extend(std::iter::repeat(v).take(e as usize));
    }
    word.extend(m.odd.iter().copied());
    (word, m.hbar)
}

fn rewrite(
    sig: &Signature,
    mut pending: WordSum,
    choose: &mut dyn FnMut(&[usize]) -> usize,
) -> NormalOrderedElement {
    let mut done = SuperPolynomial::zero(sig);
    while let Some(key) = pending.keys().find(|(w, _)| !reducible_positions(w).is_empty()).cloned()
    {
        let coeff = pending.remove(&key).unwrap();
        let (word, hbar) = key;
        let positions = reducible_positions(&word);
        let j = positions[choose(&positions)];
        for (k, c) in apply_rule(sig, &word, hbar, &coeff, j) {
            add_into(&mut pending, k, c);
        }
    }
    for ((word, hbar), c) in pending {
        done.add_term(word_to_monomial(&word, hbar), c);
    }
    NormalOrderedElement { poly: done }
}

/// Rewrite a word to its unique PBW normal form (leftmost-rule strategy).
pub fn normal_order(sig: &Signature, word: &GeneratorWord) -> NormalOrderedElement {
    let mut sum = WordSum::new();
    add_into(&mut sum, (word.letters.clone(), word.hbar), word.coeff.clone());
    rewrite(sig, sum, &mut |_| 0)
}

/// Rewrite with a randomized rule-application order; used to test confluence.
pub fn normal_order_randomized<R: Rng>(
    sig: &Signature,
    word: &GeneratorWord,
    rng: &mut R,
) -> NormalOrderedElement {
    let mut sum = WordSum::new();
    add_into(&mut sum, (word.letters.clone(), word.hbar), word.coeff.clone());
    rewrite(sig, sum, &mut |positions| rng.gen_range(0..positions.len()))
}

/// Multiplication in the enveloping algebra: concatenate basis words
/// term-by-term and renormalize.
pub fn rewrite_mul(
    sig: &Signature,
    x: &NormalOrderedElement,
    y: &NormalOrderedElement,
) -> NormalOrderedElement {
    let mut sum = WordSum::new();
    for (mx, cx) in x.poly.terms() {
        let (wx, hx) = monomial_to_word(mx);
        for (my, cy) in y.poly.terms() {
            let (wy, hy) = monomial_to_word(my);
            let mut w = wx.clone();
            w.extend(wy);
            add_into(&mut sum, (w, hx + hy), cx * cy);
        }
    }
    rewrite(sig, sum, &mut |_| 0)
}

pub fn unit(sig: &Signature) -> NormalOrderedElement {
    NormalOrderedElement { poly: SuperPolynomial::one(sig) }
}

/// Interpret a PBW basis element inside the star-product algebra by folding
/// the star product over the letters of each basis word.
pub fn pbw_to_star(ctx: &StarContext, x: &NormalOrderedElement) -> Result<SuperPolynomial> {
    let sig = ctx.signature();
    let mut acc = SuperPolynomial::zero(sig);
    for (m, c) in x.poly.terms() {
        let (word, hbar) = monomial_to_word(m);
        let mut folded = SuperPolynomial::one(sig);
        for &v in word.iter().rev() {
            let gen = SuperPolynomial::variable(sig, v)?;
            folded = ctx.star(&gen, &folded)?;
        }
        acc = acc.add(&folded.scale(c).mul_hbar(hbar));
    }
    Ok(acc)
}

/// Fold the star product directly over an uninterpreted word, right to left.
pub fn star_fold(ctx: &StarContext, word: &GeneratorWord) -> Result<SuperPolynomial> {
    let sig = ctx.signature();
    let mut folded = SuperPolynomial::one(sig);
    for &v in word.letters.iter().rev() {
        let gen = SuperPolynomial::variable(sig, v)?;
        folded = ctx.star(&gen, &folded)?;
    }
    Ok(folded.scale(&word.coeff).mul_hbar(word.hbar))
}

#[derive(Debug, Clone)]
pub struct IsoMismatch {
    pub word: GeneratorWord,
    pub rewrite_side: SuperPolynomial,
    pub star_side: SuperPolynomial,
}

/// Compare the rewriting pipeline against the star-product pipeline on each
/// word. Mismatches are data, not errors; the contract is an empty report.
pub fn iso_check(ctx: &StarContext, words: &[GeneratorWord]) -> Result<Vec<IsoMismatch>> {
    let sig = ctx.signature();
    let mut mismatches = Vec::new();
    for word in words {
        let normal = normal_order(sig, word);
        let rewrite_side = pbw_to_star(ctx, &normal)?;
        let star_side = star_fold(ctx, word)?;
        if rewrite_side != star_side {
            mismatches.push(IsoMismatch {
                word: word.clone(),
                rewrite_side,
                star_side,
            });
        }
    }
    Ok(mismatches)
}

/// All words over the given alphabet of length <= max_len.
pub fn enumerate_words(
    sig: &Signature,
    alphabet: &[Variable],
    max_len: usize,
) -> Result<Vec<GeneratorWord>> {
    let mut out = vec![GeneratorWord::empty()];
    let mut layer: Vec<Vec<Variable>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in alphabet {
                let mut w2 = w.clone();
                w2.push(g);
                out.push(GeneratorWord::new(sig, w2.clone())?);
                next.push(w2);
            }
        }
        layer = next;
    }
    Ok(out)
}
