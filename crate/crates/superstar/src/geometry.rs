//! Formal vector fields as Poisson derivations, the vanishing-at-origin
//! decomposition, and the affine jet/flatness machinery: Taylor prolongation
//! into fiber variables and the connection components d/dz - d/dzhat.

use std::collections::BTreeMap;

use num::Zero;

use crate::algebra::{Coeff, Parity, Signature, SuperPolynomial, Variable};
use crate::error::{Error, Result};
use crate::poisson::PoissonContext;

/// A derivation of the function algebra, recorded by its values on the base
/// coordinates. The coefficient of an even variable has the field's parity;
/// the coefficient of an odd variable has the opposite parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalVectorField {
    sig: Signature,
    parity: Parity,
    coeffs: BTreeMap<Variable, SuperPolynomial>,
}

impl FormalVectorField {
    pub fn new(
        sig: &Signature,
        parity: Parity,
        coeffs: BTreeMap<Variable, SuperPolynomial>,
    ) -> Result<FormalVectorField> {
        for (v, c) in &coeffs {
            c.check_same_sig(&SuperPolynomial::zero(sig))?;
            if c.is_zero() {
                continue;
            }
            let wanted = parity.add(v.parity());
            if c.pure_parity() != Some(wanted) {
                return Err(Error::ParityViolation(format!(
                    "coefficient of {v:?} must be pure of parity {wanted:?}"
                )));
            }
        }
        Ok(FormalVectorField { sig: sig.clone(), parity, coeffs: coeffs })
    }

    pub fn zero(sig: &Signature) -> FormalVectorField {
        FormalVectorField {
            sig: sig.clone(),
            parity: Parity::Even,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn coefficient(&self, v: Variable) -> SuperPolynomial {
        self.coeffs
            .get(&v)
            .cloned()
            .unwrap_or_else(|| SuperPolynomial::zero(&self.sig))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    /// Apply the derivation: v(f) = sum_z c_z d f/d z (left derivatives,
    /// coefficients multiplied on the left).
    pub fn apply(&self, f: &SuperPolynomial) -> SuperPolynomial {
        let mut acc = SuperPolynomial::zero(&self.sig);
        for (&z, c) in &self.coeffs {
            acc = acc.add(&c.mul(&f.partial(z)));
        }
        acc
    }

    pub fn add(&self, other: &FormalVectorField) -> Result<FormalVectorField> {
        if self.parity != other.parity && !self.is_zero() && !other.is_zero() {
            return Err(Error::ParityViolation(
                "cannot add vector fields of different parity".into(),
            ));
        }
        let mut coeffs = self.coeffs.clone();
        for (&v, c) in &other.coeffs {
            let entry = coeffs
                .entry(v)
                .or_insert_with(|| SuperPolynomial::zero(&self.sig));
            *entry = entry.add(c);
        }
        FormalVectorField::new(
            &self.sig,
            if self.is_zero() { other.parity } else { self.parity },
            coeffs,
        )
    }

    /// Graded commutator of derivations, recorded on coordinates:
    /// [v,w](z) = v(w(z)) - (-1)^{|v||w|} w(v(z)).
    pub fn commutator(&self, other: &FormalVectorField) -> Result<FormalVectorField> {
        let sign = self.parity.koszul(other.parity);
        let vars = self.sig.base_variables();
        let mut coeffs = BTreeMap::new();
        for z in vars {
            let zz = SuperPolynomial::variable(&self.sig, z)?;
            let a = self.apply(&other.apply(&zz));
            let b = other.apply(&self.apply(&zz));
            let c = if sign < 0 { a.add(&b) } else { a.sub(&b) };
            if !c.is_zero() {
                coeffs.insert(z, c);
            }
        }
        FormalVectorField::new(&self.sig, self.parity.add(other.parity), coeffs)
    }

    /// Split into the part vanishing at the origin and the constant
    /// translation part; recombination is the identity.
    pub fn split_at_origin(&self) -> (FormalVectorField, BTreeMap<Variable, Coeff>) {
        let mut vanishing = BTreeMap::new();
        let mut constants = BTreeMap::new();
        for (&v, c) in &self.coeffs {
            let constant = c.constant_term();
            let rest = c.sub(&SuperPolynomial::constant(&self.sig, constant.clone()));
            if !rest.is_zero() {
                vanishing.insert(v, rest);
            }
            if !constant.is_zero() {
                constants.insert(v, constant);
            }
        }
        let field = FormalVectorField {
            sig: self.sig.clone(),
            parity: self.parity,
            coeffs: vanishing,
        };
        (field, constants)
    }

    /// Rebuild a field from a (vanishing part, translation part) pair.
    pub fn recombine(
        field: &FormalVectorField,
        constants: &BTreeMap<Variable, Coeff>,
    ) -> Result<FormalVectorField> {
        let mut coeffs = field.coeffs.clone();
        for (&v, c) in constants {
            let entry = coeffs
                .entry(v)
                .or_insert_with(|| SuperPolynomial::zero(&field.sig));
            *entry = entry.add(&SuperPolynomial::constant(&field.sig, c.clone()));
        }
        FormalVectorField::new(&field.sig, field.parity, coeffs)
    }
}

/// The Hamiltonian vector field of a pure-parity function: z -> {h, z}.
pub fn hamiltonian_vf(ctx: &PoissonContext, h: &SuperPolynomial) -> Result<FormalVectorField> {
    let parity = h
        .pure_parity()
        .ok_or_else(|| Error::ParityViolation("hamiltonian must be pure parity".into()))?;
    let sig = ctx.signature().clone();
    let mut coeffs = BTreeMap::new();
    for z in sig.base_variables() {
        let zz = SuperPolynomial::variable(&sig, z)?;
        let c = ctx.bracket(h, &zz)?;
        if !c.is_zero() {
            coeffs.insert(z, c);
        }
    }
    FormalVectorField::new(&sig, parity, coeffs)
}

/// Check the super-Leibniz rule for the bracket on the given sample pairs:
/// v({f,g}) = {v(f), g} + (-1)^{|v||f|} {f, v(g)}. Samples must be pure.
pub fn is_poisson_derivation(
    ctx: &PoissonContext,
    v: &FormalVectorField,
    samples: &[(SuperPolynomial, SuperPolynomial)],
) -> Result<bool> {
    for (f, g) in samples {
        let pf = f
            .pure_parity()
            .ok_or_else(|| Error::ParityViolation("sample must be pure parity".into()))?;
        let lhs = v.apply(&ctx.bracket(f, g)?);
        let mut rhs = ctx.bracket(&v.apply(f), g)?;
        let second = ctx.bracket(f, &v.apply(g))?;
        rhs = if v.parity().koszul(pf) < 0 {
            rhs.sub(&second)
        } else {
            rhs.add(&second)
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An element of the jet algebra: a polynomial in base variables and their
/// fiber partners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetElement {
    pub poly: SuperPolynomial,
}

impl JetElement {
    pub fn fiber_degree(m: &crate::algebra::Monomial) -> u32 {
        let even: u32 = m
            .even
            .iter()
            .filter(|(v, _)| v.is_fiber())
            .map(|(_, &e)| e)
            .sum();
        even + m.odd.iter().filter(|v| v.is_fiber()).count() as u32
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Restrict to the base by setting all fiber variables to zero.
    pub fn base_restriction(&self) -> SuperPolynomial {
        SuperPolynomial::from_terms(
            self.poly.signature(),
            self.poly
                .terms()
                .filter(|(m, _)| Self::fiber_degree(m) == 0)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }
}

/// Taylor prolongation f(x) -> f(x + xhat), truncated at fiber degree k.
/// Odd directions expand by the substitution t -> t + that, which is finite
/// by Grassmann nilpotency and carries the left-derivative signs.
pub fn taylor_jet(f: &SuperPolynomial, order: u32) -> Result<JetElement> {
    let sig = f.signature().clone();
    let mut images = BTreeMap::new();
    for v in sig.base_variables() {
        let partner = v.fiber_partner().expect("base variables have fiber partners");
        let img = SuperPolynomial::variable(&sig, v)?
            .add(&SuperPolynomial::variable(&sig, partner)?);
        images.insert(v, img);
    }
    let expanded = f.substitute_linear(&images)?;
    let poly = SuperPolynomial::from_terms(
        &sig,
        expanded
            .terms()
            .filter(|(m, _)| JetElement::fiber_degree(m) <= order)
            .map(|(m, c)| (m.clone(), c.clone())),
    );
    Ok(JetElement { poly })
}

/// The Grothendieck connection components d/dz - d/dzhat, one per base
/// variable, in canonical order. A jet is flat iff all components vanish.
pub fn jet_flatness_defect(j: &JetElement) -> Vec<(Variable, SuperPolynomial)> {
    let sig = j.poly.signature().clone();
    sig.base_variables()
        .into_iter()
        .map(|v| {
            let partner = v.fiber_partner().expect("base variable");
            let defect = j.poly.partial(v).sub(&j.poly.partial(partner));
            (v, defect)
        })
        .collect()
}

pub fn is_flat(j: &JetElement) -> bool {
    jet_flatness_defect(j).iter().all(|(_, d)| d.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn sig() -> Signature {
        Signature::standard(1, 2, 0)
    }

    fn var(s: &Signature, v: Variable) -> SuperPolynomial {
        SuperPolynomial::variable(s, v).unwrap()
    }

    #[test]
    fn hamiltonian_field_of_p_is_dq() {
        let s = Signature::standard(1, 0, 0);
        let ctx = PoissonContext::new(s.clone());
        let p1 = var(&s, Variable::p(1));
        let v = hamiltonian_vf(&ctx, &p1).unwrap();
        assert_eq!(v.coefficient(Variable::q(1)), SuperPolynomial::one(&s));
        assert!(v.coefficient(Variable::p(1)).is_zero());
    }

    #[test]
    fn hamiltonian_field_of_constant_is_zero() {
        let s = sig();
        let ctx = PoissonContext::new(s.clone());
        let v = hamiltonian_vf(&ctx, &SuperPolynomial::one(&s)).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn hamiltonian_field_of_theta() {
        // {t1, t1} = -eps_1, so the field sends t1 to -1 (positive direction)
        let s = sig();
        let ctx = PoissonContext::new(s.clone());
        let t1 = var(&s, Variable::theta(1));
        let v = hamiltonian_vf(&ctx, &t1).unwrap();
        assert_eq!(v.parity(), Parity::Odd);
        assert_eq!(
            v.coefficient(Variable::theta(1)),
            SuperPolynomial::constant(&s, rat(-1, 1))
        );
        assert!(v.coefficient(Variable::theta(2)).is_zero());
    }

    #[test]
    fn hamiltonian_fields_are_poisson_derivations() {
        let s = sig();
        let ctx = PoissonContext::new(s.clone());
        let p1 = var(&s, Variable::p(1));
        let q1 = var(&s, Variable::q(1));
        let t1 = var(&s, Variable::theta(1));
        let h = p1.pow(2).mul(&q1).add(&t1.mul(&t1).add(&p1));
        let v = hamiltonian_vf(&ctx, &h).unwrap();
        let samples = vec![
            (p1.clone(), q1.clone()),
            (p1.mul(&q1), t1.clone()),
            (t1.clone(), t1.mul(&p1)),
        ];
        assert!(is_poisson_derivation(&ctx, &v, &samples).unwrap());
    }

    #[test]
    fn euler_field_is_not_poisson() {
        let s = Signature::standard(1, 0, 0);
        let ctx = PoissonContext::new(s.clone());
        let p1 = var(&s, Variable::p(1));
        let q1 = var(&s, Variable::q(1));
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Variable::p(1), p1.clone());
        coeffs.insert(Variable::q(1), q1.clone());
        let euler = FormalVectorField::new(&s, Parity::Even, coeffs).unwrap();
        let samples = vec![(p1, q1)];
        assert!(!is_poisson_derivation(&ctx, &euler, &samples).unwrap());
    }

    #[test]
    fn zero_field_is_poisson() {
        let s = sig();
        let ctx = PoissonContext::new(s.clone());
        let samples = vec![(var(&s, Variable::p(1)), var(&s, Variable::q(1)))];
        assert!(is_poisson_derivation(&ctx, &FormalVectorField::zero(&s), &samples).unwrap());
    }

    #[test]
    fn split_constant_field() {
        let s = Signature::standard(1, 0, 0);
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Variable::q(1), SuperPolynomial::one(&s));
        let v = FormalVectorField::new(&s, Parity::Even, coeffs).unwrap();
        let (vanishing, constants) = v.split_at_origin();
        assert!(vanishing.is_zero());
        assert_eq!(constants.get(&Variable::q(1)), Some(&rat(1, 1)));
    }

    #[test]
    fn split_affine_field_and_recombine() {
        let s = Signature::standard(1, 0, 0);
        let q1 = var(&s, Variable::q(1));
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Variable::q(1), q1.add(&SuperPolynomial::one(&s)));
        let v = FormalVectorField::new(&s, Parity::Even, coeffs).unwrap();
        let (vanishing, constants) = v.split_at_origin();
        assert_eq!(vanishing.coefficient(Variable::q(1)), q1);
        assert_eq!(constants.get(&Variable::q(1)), Some(&rat(1, 1)));
        assert_eq!(FormalVectorField::recombine(&vanishing, &constants).unwrap(), v);
    }

    #[test]
    fn taylor_jet_linear_and_binomial() {
        let s = Signature::standard(1, 0, 0);
        let q1 = var(&s, Variable::q(1));
        let qh = var(&s, Variable::fiber_q(1));
        assert_eq!(taylor_jet(&q1, 1).unwrap().poly, q1.add(&qh));

        let p1 = var(&s, Variable::p(1));
        let ph = var(&s, Variable::fiber_p(1));
        let expected = p1
            .pow(2)
            .add(&p1.mul(&ph).scale_int(2))
            .add(&ph.pow(2));
        assert_eq!(taylor_jet(&p1.pow(2), 2).unwrap().poly, expected);
    }

    #[test]
    fn taylor_jet_odd_pair() {
        let s = sig();
        let t1 = var(&s, Variable::theta(1));
        let t2 = var(&s, Variable::theta(2));
        let f1 = var(&s, Variable::fiber_theta(1));
        let f2 = var(&s, Variable::fiber_theta(2));
        let jet = taylor_jet(&t1.mul(&t2), 2).unwrap();
        let expected = t1
            .mul(&t2)
            .add(&t1.mul(&f2))
            .add(&f1.mul(&t2))
            .add(&f1.mul(&f2));
        assert_eq!(jet.poly, expected);
    }

    #[test]
    fn taylor_jets_are_flat() {
        let s = sig();
        let p1 = var(&s, Variable::p(1));
        let q1 = var(&s, Variable::q(1));
        let t1 = var(&s, Variable::theta(1));
        let t2 = var(&s, Variable::theta(2));
        let f = p1
            .pow(3)
            .mul(&q1)
            .add(&t1.mul(&t2).mul(&p1))
            .add(&q1.pow(2));
        let jet = taylor_jet(&f, f.total_degree()).unwrap();
        assert!(is_flat(&jet));
        assert_eq!(jet.base_restriction(), f);
    }

    #[test]
    fn bare_fiber_variable_has_defect() {
        let s = Signature::standard(1, 0, 0);
        let qh = var(&s, Variable::fiber_q(1));
        let jet = JetElement { poly: qh };
        let defects = jet_flatness_defect(&jet);
        let q_defect = defects
            .iter()
            .find(|(v, _)| *v == Variable::q(1))
            .map(|(_, d)| d.clone())
            .unwrap();
        assert_eq!(q_defect, SuperPolynomial::constant(&s, rat(-1, 1)));
    }

    #[test]
    fn constant_jet_is_flat() {
        let s = Signature::standard(1, 0, 0);
        let jet = JetElement { poly: SuperPolynomial::constant(&s, rat(7, 2)) };
        assert!(is_flat(&jet));
    }

    #[test]
    fn hamiltonian_vf_is_lie_map() {
        // [v_f, v_g] = v_{{f,g}} on a nontrivial pure pair
        let s = sig();
        let ctx = PoissonContext::new(s.clone());
        let p1 = var(&s, Variable::p(1));
        let q1 = var(&s, Variable::q(1));
        let t1 = var(&s, Variable::theta(1));
        let t2 = var(&s, Variable::theta(2));
        let f = p1.pow(2).mul(&q1).add(&t1.mul(&t2));
        let g = q1.pow(2).add(&t1.mul(&t2).mul(&q1));
        let vf = hamiltonian_vf(&ctx, &f).unwrap();
        let vg = hamiltonian_vf(&ctx, &g).unwrap();
        let lhs = vf.commutator(&vg).unwrap();
        let rhs = hamiltonian_vf(&ctx, &ctx.bracket(&f, &g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
