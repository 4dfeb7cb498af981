//! The Moyal-Weyl-Clifford star product on the formal super-disk:
//! f * g = m(exp((hbar/2) alpha)(f (x) g)) for the constant bivector alpha
//! attached to H = [[Omega,0],[0,G]]. On polynomial inputs the exponential
//! terminates, so evaluation is exact.

use crate::algebra::{rat, Parity, Signature, SuperPolynomial, TruncationPolicy, Variable};
use crate::error::Result;
use crate::poisson::PoissonContext;

#[derive(Debug, Clone)]
pub struct StarContext {
    poisson: PoissonContext,
    truncation: Option<TruncationPolicy>,
}

impl StarContext {
    pub fn new(poisson: PoissonContext) -> StarContext {
        StarContext { poisson, truncation: None }
    }

    pub fn with_truncation(poisson: PoissonContext, policy: TruncationPolicy) -> StarContext {
        StarContext { poisson, truncation: Some(policy) }
    }

    pub fn poisson(&self) -> &PoissonContext {
        &self.poisson
    }

    pub fn signature(&self) -> &Signature {
        self.poisson.signature()
    }

    /// One application of the bivector contraction to a tensor term whose
    /// left factor is pure of the given parity. The odd contraction carries
    /// the coefficient eps_i (-1)^{|left|}; this matches the generator table
    /// t_i * t_i = -(hbar/2) eps_i and makes the hbar^1 term of the product
    /// equal to (1/2){f,g}.
    fn contract(
        &self,
        left: &SuperPolynomial,
        left_parity: Parity,
        right: &SuperPolynomial,
    ) -> Vec<(SuperPolynomial, Parity, SuperPolynomial)> {
        let sig = self.signature();
        let mut out = Vec::new();
        for i in 1..=sig.n() {
            let (p, q) = (Variable::p(i), Variable::q(i));
            let (lp, rq) = (left.partial(p), right.partial(q));
            if !lp.is_zero() && !rq.is_zero() {
                out.push((lp, left_parity, rq));
            }
            let (lq, rp) = (left.partial(q), right.partial(p));
            if !lq.is_zero() && !rp.is_zero() {
                out.push((lq.neg(), left_parity, rp));
            }
        }
        for j in 1..=sig.r() {
            let t = Variable::theta(j);
            let (lt, rt) = (left.partial(t), right.partial(t));
            if !lt.is_zero() && !rt.is_zero() {
                let sign = sig.epsilon(j) as i64 * left_parity.sign() as i64;
                out.push((lt.scale_int(sign), left_parity.flip(), rt));
            }
        }
        out
    }

    fn star_pure(&self, f: &SuperPolynomial, f_parity: Parity, g: &SuperPolynomial) -> SuperPolynomial {
        let sig = self.signature();
        let mut acc = SuperPolynomial::zero(sig);
        let mut terms = vec![(f.clone(), f_parity, g.clone())];
        let mut k: u32 = 0;
        let mut factorial = rat(1, 1);
        while !terms.is_empty() {
            if k > 0 {
                factorial = factorial * rat(1, 2 * k as i64);
            }
            // (1/k!) (hbar/2)^k m(alpha^k (f (x) g))
            let mut layer = SuperPolynomial::zero(sig);
            for (l, _, r) in &terms {
                layer = layer.add(&l.mul(r));
            }
            acc = acc.add(&layer.scale(&factorial).mul_hbar(k));
            terms = terms
                .iter()
                .flat_map(|(l, lp, r)| self.contract(l, *lp, r))
                .collect();
            k += 1;
        }
        match self.truncation {
            Some(policy) => acc.truncate(policy),
            None => acc,
        }
    }

    /// The star product. Impure left factors are split by parity.
    pub fn star(&self, f: &SuperPolynomial, g: &SuperPolynomial) -> Result<SuperPolynomial> {
        f.check_same_sig(g)?;
        if f.signature() != self.signature() {
            return Err(crate::error::Error::SignatureMismatch);
        }
        let (fe, fo) = f.parity_split();
        let mut acc = SuperPolynomial::zero(self.signature());
        if !fe.is_zero() {
            acc = acc.add(&self.star_pure(&fe, Parity::Even, g));
        }
        if !fo.is_zero() {
            acc = acc.add(&self.star_pure(&fo, Parity::Odd, g));
        }
        Ok(acc)
    }

    /// Graded star commutator f*g - (-1)^{|f||g|} g*f, extended bilinearly
    /// to impure inputs.
    pub fn star_commutator(
        &self,
        f: &SuperPolynomial,
        g: &SuperPolynomial,
    ) -> Result<SuperPolynomial> {
        let (fe, fo) = f.parity_split();
        let (ge, go) = g.parity_split();
        let mut acc = SuperPolynomial::zero(self.signature());
        for (fp, pf) in [(&fe, Parity::Even), (&fo, Parity::Odd)] {
            if fp.is_zero() {
                continue;
            }
            for (gp, pg) in [(&ge, Parity::Even), (&go, Parity::Odd)] {
                if gp.is_zero() {
                    continue;
                }
                let fg = self.star(fp, gp)?;
                let gf = self.star(gp, fp)?;
                let c = if pf.koszul(pg) < 0 { fg.add(&gf) } else { fg.sub(&gf) };
                acc = acc.add(&c);
            }
        }
        Ok(acc)
    }

    /// star_commutator(f,g) - hbar {f,g}. For the Moyal-Clifford product this
    /// is always divisible by hbar^2.
    pub fn bd1_defect(
        &self,
        f: &SuperPolynomial,
        g: &SuperPolynomial,
    ) -> Result<SuperPolynomial> {
        let comm = self.star_commutator(f, g)?;
        let bracket = self.poisson.bracket(f, g)?;
        Ok(comm.sub(&bracket.mul_hbar(1)))
    }
}

/// Sets hbar to zero, recovering the supercommutative product's world.
pub fn classical_limit(f: &SuperPolynomial) -> SuperPolynomial {
    f.classical_limit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn ctx(n: usize, a: usize, b: usize) -> StarContext {
        StarContext::new(PoissonContext::new(Signature::standard(n, a, b)))
    }

    fn var(ctx: &StarContext, v: Variable) -> SuperPolynomial {
        SuperPolynomial::variable(ctx.signature(), v).unwrap()
    }

    fn half_hbar(sig: &Signature) -> SuperPolynomial {
        SuperPolynomial::hbar(sig, 1).scale(&rat(1, 2))
    }

    #[test]
    fn even_generator_products() {
        let c = ctx(1, 1, 1);
        let p1 = var(&c, Variable::p(1));
        let q1 = var(&c, Variable::q(1));
        let pq = p1.mul(&q1);
        assert_eq!(c.star(&p1, &q1).unwrap(), pq.add(&half_hbar(c.signature())));
        assert_eq!(c.star(&q1, &p1).unwrap(), pq.sub(&half_hbar(c.signature())));
    }

    #[test]
    fn odd_generator_products() {
        // signature (2|1,1): eps = (+1, -1)
        let c = ctx(1, 1, 1);
        let t1 = var(&c, Variable::theta(1));
        let t2 = var(&c, Variable::theta(2));
        // off-diagonal: plain Grassmann product
        assert_eq!(c.star(&t1, &t2).unwrap(), t1.mul(&t2));
        // diagonal: t_i * t_i = -(hbar/2) eps_i
        assert_eq!(c.star(&t1, &t1).unwrap(), half_hbar(c.signature()).neg());
        assert_eq!(c.star(&t2, &t2).unwrap(), half_hbar(c.signature()));
    }

    #[test]
    fn unit() {
        let c = ctx(1, 1, 0);
        let s = c.signature();
        let one = SuperPolynomial::one(s);
        let f = var(&c, Variable::p(1))
            .mul(&var(&c, Variable::q(1)))
            .add(&var(&c, Variable::theta(1)));
        assert_eq!(c.star(&one, &f).unwrap(), f);
        assert_eq!(c.star(&f, &one).unwrap(), f);
    }

    #[test]
    fn commutator_table() {
        let c = ctx(1, 1, 1);
        let p1 = var(&c, Variable::p(1));
        let q1 = var(&c, Variable::q(1));
        let t1 = var(&c, Variable::theta(1));
        let h = SuperPolynomial::hbar(c.signature(), 1);
        assert_eq!(c.star_commutator(&p1, &q1).unwrap(), h);
        // odd-odd graded commutator is the anticommutator: [t1,t1] = -hbar eps_1
        assert_eq!(c.star_commutator(&t1, &t1).unwrap(), h.neg());
        assert!(c.star_commutator(&p1, &p1).unwrap().is_zero());
    }

    #[test]
    fn bd1_defect_on_generators() {
        let c = ctx(1, 1, 1);
        let p1 = var(&c, Variable::p(1));
        let q1 = var(&c, Variable::q(1));
        let t1 = var(&c, Variable::theta(1));
        let t2 = var(&c, Variable::theta(2));
        assert!(c.bd1_defect(&p1, &q1).unwrap().is_zero());
        assert!(c.bd1_defect(&t1, &t1).unwrap().is_zero());
        assert!(c.bd1_defect(&t2, &t2).unwrap().is_zero());
    }

    #[test]
    fn bd1_defect_divisible_by_hbar_squared() {
        let c = ctx(1, 0, 0);
        let p1 = var(&c, Variable::p(1));
        let q1 = var(&c, Variable::q(1));
        let f = p1.pow(2).mul(&q1);
        let g = p1.mul(&q1.pow(2));
        let d = c.bd1_defect(&f, &g).unwrap();
        assert!(d.divisible_by_hbar(2));
    }

    #[test]
    fn classical_limit_examples() {
        let c = ctx(1, 0, 0);
        let s = c.signature();
        let p1 = var(&c, Variable::p(1));
        let q1 = var(&c, Variable::q(1));
        let star = c.star(&p1, &q1).unwrap();
        assert_eq!(classical_limit(&star), p1.mul(&q1));
        assert!(classical_limit(&SuperPolynomial::hbar(s, 3)).is_zero());
    }

    #[test]
    fn hbar_filtration_shape() {
        // f*g = fg + (hbar/2){f,g} + O(hbar^2)
        let c = ctx(1, 1, 0);
        let p1 = var(&c, Variable::p(1));
        let q1 = var(&c, Variable::q(1));
        let t1 = var(&c, Variable::theta(1));
        let f = p1.pow(2).add(&t1.mul(&q1));
        let g = q1.pow(2).add(&t1.mul(&p1));
        let star = c.star(&f, &g).unwrap();
        assert_eq!(star.hbar_coefficient(0), f.mul(&g));
        let bracket = c.poisson().bracket(&f, &g).unwrap();
        assert_eq!(star.hbar_coefficient(1), bracket.scale(&rat(1, 2)));
    }

    #[test]
    fn truncation_is_applied() {
        let c = StarContext::with_truncation(
            PoissonContext::new(Signature::standard(1, 0, 0)),
            TruncationPolicy::hbar(0),
        );
        let p1 = var(&c, Variable::p(1));
        let q1 = var(&c, Variable::q(1));
        assert_eq!(c.star(&p1, &q1).unwrap(), p1.mul(&q1));
    }
}
