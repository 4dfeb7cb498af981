//! Exact Z/2-graded polynomial arithmetic over the rationals.
//!
//! Elements live in the algebra generated by even variables `p_i`, `q_i`,
//! odd (Grassmann) variables `t_i`, an auxiliary odd pool `x_k` used as
//! matrix coefficients, and the distinguished even formal parameter `h`
//! (hbar), which is tracked as an exponent on each monomial rather than as
//! a variable. All products, derivatives and substitutions follow the
//! Koszul sign rule; odd variables square to zero.

use std::collections::BTreeMap;

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Coeff = BigRational;

/// Convenience constructor for small rational coefficients.
pub fn rat(num: i64, den: i64) -> Coeff {
    BigRational::new(num.into(), den.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_len(len: usize) -> Parity {
        if len % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// (-1)^(|a||b|)
    pub fn koszul(self, other: Parity) -> i8 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

/// The canonical order of variable kinds also fixes the canonical order of
/// odd variables inside a monomial: theta pool, then fiber thetas, then the
/// auxiliary xi pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    P,
    Q,
    Theta,
    FiberP,
    FiberQ,
    FiberTheta,
    Xi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub kind: VarKind,
    /// 1-based index.
    pub index: usize,
}

impl Variable {
    pub fn p(i: usize) -> Variable {
        Variable { kind: VarKind::P, index: i }
    }
    pub fn q(i: usize) -> Variable {
        Variable { kind: VarKind::Q, index: i }
    }
    pub fn theta(i: usize) -> Variable {
        Variable { kind: VarKind::Theta, index: i }
    }
    pub fn xi(i: usize) -> Variable {
        Variable { kind: VarKind::Xi, index: i }
    }
    pub fn fiber_p(i: usize) -> Variable {
        Variable { kind: VarKind::FiberP, index: i }
    }
    pub fn fiber_q(i: usize) -> Variable {
        Variable { kind: VarKind::FiberQ, index: i }
    }
    pub fn fiber_theta(i: usize) -> Variable {
        Variable { kind: VarKind::FiberTheta, index: i }
    }

    pub fn parity(&self) -> Parity {
        match self.kind {
            VarKind::P | VarKind::Q | VarKind::FiberP | VarKind::FiberQ => Parity::Even,
            VarKind::Theta | VarKind::FiberTheta | VarKind::Xi => Parity::Odd,
        }
    }

    pub fn is_fiber(&self) -> bool {
        matches!(self.kind, VarKind::FiberP | VarKind::FiberQ | VarKind::FiberTheta)
    }

    /// The fiber partner of a base variable (p_i -> \hat p_i, ...).
    pub fn fiber_partner(&self) -> Option<Variable> {
        match self.kind {
            VarKind::P => Some(Variable::fiber_p(self.index)),
            VarKind::Q => Some(Variable::fiber_q(self.index)),
            VarKind::Theta => Some(Variable::fiber_theta(self.index)),
            _ => None,
        }
    }
}

/// The type (2n|a,b) together with the quadratic form data Q = (eps_1,...,eps_r).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    n: usize,
    epsilons: Vec<i8>,
}

impl Signature {
    pub fn new(n: usize, epsilons: Vec<i8>) -> Result<Signature> {
        if epsilons.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::DimensionMismatch(
                "epsilon entries must be +1 or -1".into(),
            ));
        }
        Ok(Signature { n, epsilons })
    }

    /// The default layout for type (2n|a,b): a plus signs followed by b minus signs.
    pub fn standard(n: usize, a: usize, b: usize) -> Signature {
        let mut epsilons = vec![1i8; a];
        epsilons.extend(std::iter::repeat(-1i8).take(b));
        Signature { n, epsilons }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn a(&self) -> usize {
        self.epsilons.iter().filter(|&&e| e == 1).count()
    }
    pub fn b(&self) -> usize {
        self.epsilons.iter().filter(|&&e| e == -1).count()
    }
    pub fn r(&self) -> usize {
        self.epsilons.len()
    }
    /// 1-based.
    pub fn epsilon(&self, i: usize) -> i8 {
        self.epsilons[i - 1]
    }
    pub fn epsilons(&self) -> &[i8] {
        &self.epsilons
    }

    /// Does this signature admit the given variable? The aux-odd xi pool is
    /// unbounded by design; everything else is range-checked.
    pub fn admits(&self, v: Variable) -> bool {
        if v.index == 0 {
            return false;
        }
        match v.kind {
            VarKind::P | VarKind::Q | VarKind::FiberP | VarKind::FiberQ => v.index <= self.n,
            VarKind::Theta | VarKind::FiberTheta => v.index <= self.r(),
            VarKind::Xi => true,
        }
    }

    /// Base variables in canonical order: p_1..p_n, q_1..q_n, t_1..t_r.
    pub fn base_variables(&self) -> Vec<Variable> {
        let mut vars = Vec::with_capacity(2 * self.n + self.r());
        for i in 1..=self.n {
            vars.push(Variable::p(i));
        }
        for i in 1..=self.n {
            vars.push(Variable::q(i));
        }
        for i in 1..=self.r() {
            vars.push(Variable::theta(i));
        }
        vars
    }
}

/// Truncation bounds modelling the formal completion at finite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TruncationPolicy {
    pub max_degree: Option<u32>,
    pub max_hbar: Option<u32>,
}

impl TruncationPolicy {
    pub fn degree(d: u32) -> TruncationPolicy {
        TruncationPolicy { max_degree: Some(d), max_hbar: None }
    }
    pub fn hbar(k: u32) -> TruncationPolicy {
        TruncationPolicy { max_degree: None, max_hbar: Some(k) }
    }

    pub fn keeps(&self, m: &Monomial) -> bool {
        if let Some(d) = self.max_degree {
            if m.degree() > d {
                return false;
            }
        }
        if let Some(k) = self.max_hbar {
            if m.hbar > k {
                return false;
            }
        }
        true
    }
}

/// A canonical-basis monomial: even exponents, an ascending odd set (each
/// odd variable with implicit exponent one), and the hbar power.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub even: BTreeMap<Variable, u32>,
    pub odd: Vec<Variable>,
    pub hbar: u32,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn variable(v: Variable) -> Monomial {
        let mut m = Monomial::one();
        match v.parity() {
            Parity::Even => {
                m.even.insert(v, 1);
            }
            Parity::Odd => m.odd.push(v),
        }
        m
    }

    pub fn hbar_power(k: u32) -> Monomial {
        Monomial { hbar: k, ..Monomial::one() }
    }

    /// Total polynomial degree, excluding the hbar power.
    pub fn degree(&self) -> u32 {
        self.even.values().sum::<u32>() + self.odd.len() as u32
    }

    pub fn parity(&self) -> Parity {
        Parity::of_len(self.odd.len())
    }

    pub fn contains(&self, v: Variable) -> bool {
        match v.parity() {
            Parity::Even => self.even.contains_key(&v),
            Parity::Odd => self.odd.contains(&v),
        }
    }

    /// Multiply two monomials. Returns None if an odd variable repeats; the
    /// sign is the Koszul sign of interleaving the two odd blocks.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, i8)> {
        let mut even = self.even.clone();
        for (&v, &e) in &other.even {
            *even.entry(v).or_insert(0) += e;
        }
        // Both odd lists are ascending; the sign counts the pairs that must
        // cross when merging, i.e. (x in self, y in other) with x > y.
        let mut crossings = 0usize;
        for y in &other.odd {
            if self.odd.contains(y) {
                return None;
            }
            crossings += self.odd.iter().filter(|x| **x > *y).count();
        }
        let mut odd: Vec<Variable> = self.odd.iter().chain(other.odd.iter()).copied().collect();
        odd.sort();
        let sign = if crossings % 2 == 0 { 1 } else { -1 };
        Some((Monomial { even, odd, hbar: self.hbar + other.hbar }, sign))
    }

    /// Sort an arbitrary odd-variable list into canonical order, returning the
    /// Koszul sign of the permutation; None if a variable repeats.
    pub fn sort_odd(vars: &[Variable]) -> Option<(Vec<Variable>, i8)> {
        let mut out: Vec<Variable> = Vec::with_capacity(vars.len());
        let mut sign = 1i8;
        for &v in vars {
            // insertion, counting the transpositions past larger entries
            let pos = out.partition_point(|&u| u <= v);
            if pos > 0 && out[pos - 1] == v {
                return None;
            }
            let jumps = out.len() - pos;
            if jumps % 2 == 1 {
                sign = -sign;
            }
            out.insert(pos, v);
        }
        Some((out, sign))
    }
}

/// Sparse exact polynomial over a fixed signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperPolynomial {
    sig: Signature,
    terms: BTreeMap<Monomial, Coeff>,
}

impl SuperPolynomial {
    pub fn zero(sig: &Signature) -> SuperPolynomial {
        SuperPolynomial { sig: sig.clone(), terms: BTreeMap::new() }
    }

    pub fn one(sig: &Signature) -> SuperPolynomial {
        SuperPolynomial::constant(sig, Coeff::one())
    }

    pub fn constant(sig: &Signature, c: Coeff) -> SuperPolynomial {
        let mut p = SuperPolynomial::zero(sig);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn hbar(sig: &Signature, k: u32) -> SuperPolynomial {
        let mut p = SuperPolynomial::zero(sig);
        p.add_term(Monomial::hbar_power(k), Coeff::one());
        p
    }

    pub fn variable(sig: &Signature, v: Variable) -> Result<SuperPolynomial> {
        if !sig.admits(v) {
            return Err(Error::UnknownVariable(format!("{v:?}")));
        }
        let mut p = SuperPolynomial::zero(sig);
        p.add_term(Monomial::variable(v), Coeff::one());
        Ok(p)
    }

    pub fn from_terms(
        sig: &Signature,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> SuperPolynomial {
        let mut p = SuperPolynomial::zero(sig);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_same_sig(&self, other: &SuperPolynomial) {
        assert_eq!(self.sig, other.sig, "signature mismatch");
    }

    pub fn check_same_sig(&self, other: &SuperPolynomial) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &SuperPolynomial) -> SuperPolynomial {
        self.assert_same_sig(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SuperPolynomial) -> SuperPolynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SuperPolynomial {
        self.scale(&-Coeff::one())
    }

    pub fn scale(&self, c: &Coeff) -> SuperPolynomial {
        if c.is_zero() {
            return SuperPolynomial::zero(&self.sig);
        }
        SuperPolynomial {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> SuperPolynomial {
        self.scale(&rat(k, 1))
    }

    /// The supercommutative product with Koszul signs.
    pub fn mul(&self, other: &SuperPolynomial) -> SuperPolynomial {
        self.assert_same_sig(other);
        let mut out = SuperPolynomial::zero(&self.sig);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, sign)) = ma.mul(mb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    /// Checked product; errors on signature mismatch.
    pub fn multiply(&self, other: &SuperPolynomial) -> Result<SuperPolynomial> {
        self.check_same_sig(other)?;
        Ok(self.mul(other))
    }

    pub fn pow(&self, e: u32) -> SuperPolynomial {
        let mut out = SuperPolynomial::one(&self.sig);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Formal partial derivative; odd variables use the LEFT derivative.
    pub fn partial(&self, v: Variable) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(&self.sig);
        for (m, c) in &self.terms {
            match v.parity() {
                Parity::Even => {
                    if let Some(&e) = m.even.get(&v) {
                        let mut m2 = m.clone();
                        if e == 1 {
                            m2.even.remove(&v);
                        } else {
                            m2.even.insert(v, e - 1);
                        }
                        out.add_term(m2, c * rat(e as i64, 1));
                    }
                }
                Parity::Odd => {
                    if let Some(pos) = m.odd.iter().position(|&u| u == v) {
                        let mut m2 = m.clone();
                        m2.odd.remove(pos);
                        // move v to the front past `pos` odd variables
                        let c2 = if pos % 2 == 0 { c.clone() } else { -c.clone() };
                        out.add_term(m2, c2);
                    }
                }
            }
        }
        out
    }

    /// Parity-preserving algebra endomorphism determined by variable images.
    /// Variables absent from the map are fixed. hbar is never substituted.
    pub fn substitute_linear(
        &self,
        images: &BTreeMap<Variable, SuperPolynomial>,
    ) -> Result<SuperPolynomial> {
        for (v, img) in images {
            img.check_same_sig(self)?;
            if !img.is_zero() && img.pure_parity() != Some(v.parity()) {
                return Err(Error::ParityViolation(format!(
                    "image of {v:?} must be pure of parity {:?}",
                    v.parity()
                )));
            }
        }
        let mut out = SuperPolynomial::zero(&self.sig);
        for (m, c) in &self.terms {
            let mut acc = SuperPolynomial::constant(&self.sig, c.clone());
            acc = acc.mul(&SuperPolynomial::hbar(&self.sig, m.hbar));
            for (&v, &e) in &m.even {
                let factor = match images.get(&v) {
                    Some(img) => img.pow(e),
                    None => SuperPolynomial::variable(&self.sig, v)?.pow(e),
                };
                acc = acc.mul(&factor);
            }
            for &v in &m.odd {
                let factor = match images.get(&v) {
                    Some(img) => img.clone(),
                    None => SuperPolynomial::variable(&self.sig, v)?,
                };
                acc = acc.mul(&factor);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    pub fn truncate(&self, policy: TruncationPolicy) -> SuperPolynomial {
        SuperPolynomial {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| policy.keeps(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Some(parity) if all monomials share that parity; the zero polynomial
    /// counts as even. None for mixed-parity elements.
    pub fn pure_parity(&self) -> Option<Parity> {
        let mut parities = self.terms.keys().map(|m| m.parity());
        let first = match parities.next() {
            None => return Some(Parity::Even),
            Some(p) => p,
        };
        if parities.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn parity_split(&self) -> (SuperPolynomial, SuperPolynomial) {
        let mut even = SuperPolynomial::zero(&self.sig);
        let mut odd = SuperPolynomial::zero(&self.sig);
        for (m, c) in &self.terms {
            match m.parity() {
                Parity::Even => even.add_term(m.clone(), c.clone()),
                Parity::Odd => odd.add_term(m.clone(), c.clone()),
            }
        }
        (even, odd)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn max_hbar(&self) -> u32 {
        self.terms.keys().map(|m| m.hbar).max().unwrap_or(0)
    }

    pub fn min_hbar(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.hbar).min()
    }

    /// Multiply by hbar^k.
    pub fn mul_hbar(&self, k: u32) -> SuperPolynomial {
        SuperPolynomial {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m2 = m.clone();
                    m2.hbar += k;
                    (m2, c.clone())
                })
                .collect(),
        }
    }

    /// Exact division by hbar^k; errors if any term has a smaller hbar power.
    pub fn div_hbar(&self, k: u32) -> Result<SuperPolynomial> {
        if self.terms.keys().any(|m| m.hbar < k) {
            return Err(Error::HbarDivision(k));
        }
        Ok(SuperPolynomial {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m2 = m.clone();
                    m2.hbar -= k;
                    (m2, c.clone())
                })
                .collect(),
        })
    }

    pub fn divisible_by_hbar(&self, k: u32) -> bool {
        self.terms.keys().all(|m| m.hbar >= k)
    }

    /// The coefficient of hbar^k, as a polynomial with the hbar power removed.
    pub fn hbar_coefficient(&self, k: u32) -> SuperPolynomial {
        SuperPolynomial {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.hbar == k)
                .map(|(m, c)| {
                    let mut m2 = m.clone();
                    m2.hbar = 0;
                    (m2, c.clone())
                })
                .collect(),
        }
    }

    /// Drops every term with hbar power >= 1.
    pub fn classical_limit(&self) -> SuperPolynomial {
        SuperPolynomial {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.hbar == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The constant term (degree zero, hbar zero).
    pub fn constant_term(&self) -> Coeff {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn abs_coeff_sum(&self) -> Coeff {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::standard(1, 2, 0)
    }

    fn var(sig: &Signature, v: Variable) -> SuperPolynomial {
        SuperPolynomial::variable(sig, v).unwrap()
    }

    #[test]
    fn grassmann_anticommutativity() {
        let s = sig();
        let t1 = var(&s, Variable::theta(1));
        let t2 = var(&s, Variable::theta(2));
        let t12 = t1.mul(&t2);
        assert_eq!(t2.mul(&t1), t12.neg());
        assert!(!t12.is_zero());
    }

    #[test]
    fn odd_square_zero() {
        let s = sig();
        let t1 = var(&s, Variable::theta(1));
        assert!(t1.mul(&t1).is_zero());
    }

    #[test]
    fn mixed_product_expansion() {
        // (p1 + t1)(q1 + t2) = p1 q1 + p1 t2 + q1 t1 + t1 t2
        let s = sig();
        let p1 = var(&s, Variable::p(1));
        let q1 = var(&s, Variable::q(1));
        let t1 = var(&s, Variable::theta(1));
        let t2 = var(&s, Variable::theta(2));
        let lhs = p1.add(&t1).mul(&q1.add(&t2));
        let rhs = p1
            .mul(&q1)
            .add(&p1.mul(&t2))
            .add(&q1.mul(&t1))
            .add(&t1.mul(&t2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn even_partial() {
        let s = sig();
        let p1 = var(&s, Variable::p(1));
        let q1 = var(&s, Variable::q(1));
        let f = p1.pow(2).mul(&q1);
        assert_eq!(f.partial(Variable::p(1)), p1.mul(&q1).scale_int(2));
    }

    #[test]
    fn odd_left_derivative_signs() {
        let s = sig();
        let t1 = var(&s, Variable::theta(1));
        let t2 = var(&s, Variable::theta(2));
        let f = t1.mul(&t2);
        assert_eq!(f.partial(Variable::theta(2)), t1.neg());
        assert_eq!(f.partial(Variable::theta(1)), t2);
    }

    #[test]
    fn substitute_symplectic_rotation() {
        // p1 -> q1, q1 -> -p1 applied to p1 q1 gives -p1 q1
        let s = sig();
        let p1 = var(&s, Variable::p(1));
        let q1 = var(&s, Variable::q(1));
        let f = p1.mul(&q1);
        let mut images = BTreeMap::new();
        images.insert(Variable::p(1), q1.clone());
        images.insert(Variable::q(1), p1.neg());
        assert_eq!(f.substitute_linear(&images).unwrap(), f.neg());
    }

    #[test]
    fn substitute_odd_shift_by_aux() {
        let s = sig();
        let t1 = var(&s, Variable::theta(1));
        let x1 = var(&s, Variable::xi(1));
        let mut images = BTreeMap::new();
        images.insert(Variable::theta(1), t1.add(&x1));
        assert_eq!(t1.substitute_linear(&images).unwrap(), t1.add(&x1));
    }

    #[test]
    fn substitute_rejects_parity_violation() {
        let s = sig();
        let t1 = var(&s, Variable::theta(1));
        let p1 = var(&s, Variable::p(1));
        let mut images = BTreeMap::new();
        images.insert(Variable::theta(1), p1);
        assert!(t1.substitute_linear(&images).is_err());
    }

    #[test]
    fn truncate_by_degree_and_hbar() {
        let s = sig();
        let p1 = var(&s, Variable::p(1));
        let q1 = var(&s, Variable::q(1));
        let f = p1.pow(3).add(&p1);
        assert_eq!(f.truncate(TruncationPolicy::degree(2)), p1);
        let g = SuperPolynomial::hbar(&s, 2)
            .mul(&p1)
            .add(&SuperPolynomial::hbar(&s, 1).mul(&q1));
        assert_eq!(
            g.truncate(TruncationPolicy::hbar(1)),
            SuperPolynomial::hbar(&s, 1).mul(&q1)
        );
        let once = f.truncate(TruncationPolicy::degree(2));
        assert_eq!(once.truncate(TruncationPolicy::degree(2)), once);
    }

    #[test]
    fn degenerate_signature_is_hbar_line() {
        let s = Signature::standard(0, 0, 0);
        let h = SuperPolynomial::hbar(&s, 1);
        assert_eq!(h.mul(&h), SuperPolynomial::hbar(&s, 2));
        assert!(SuperPolynomial::variable(&s, Variable::p(1)).is_err());
    }

    #[test]
    fn odd_partials_anticommute_and_square_to_zero() {
        let s = sig();
        let t1 = var(&s, Variable::theta(1));
        let t2 = var(&s, Variable::theta(2));
        let p1 = var(&s, Variable::p(1));
        let f = p1.mul(&t1).mul(&t2).add(&t1.mul(&t2));
        let a = f.partial(Variable::theta(1)).partial(Variable::theta(2));
        let b = f.partial(Variable::theta(2)).partial(Variable::theta(1));
        assert_eq!(a, b.neg());
        assert!(f
            .partial(Variable::theta(1))
            .partial(Variable::theta(1))
            .is_zero());
    }
}
