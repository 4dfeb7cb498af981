//! The Poisson superalgebra structure on the formal super-disk of type
//! (2n|a,b), with bracket determined by the block matrix H = [[Omega,0],[0,G]].
//!
//! On generators: {p_i,q_j} = delta_ij and {t_i,t_j} = -eps_i delta_ij.
//! The odd-odd sign is forced by the star product's generator table
//! (t_i * t_i = -(hbar/2) eps_i) together with the requirement that the
//! hbar-rescaled star commutator reduces to this bracket mod hbar.

use num::Zero;

use crate::algebra::{rat, Coeff, Parity, Signature, SuperPolynomial, Variable};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonContext {
    sig: Signature,
}

impl PoissonContext {
    pub fn new(sig: Signature) -> PoissonContext {
        PoissonContext { sig }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// H = [[Omega, 0], [0, G]] as a (2n+r)-square rational matrix, in the
    /// canonical variable order p_1..p_n, q_1..q_n, t_1..t_r.
    pub fn h_matrix(&self) -> Vec<Vec<Coeff>> {
        let n = self.sig.n();
        let r = self.sig.r();
        let dim = 2 * n + r;
        let mut h = vec![vec![Coeff::zero(); dim]; dim];
        for i in 0..n {
            h[i][n + i] = rat(1, 1);
            h[n + i][i] = rat(-1, 1);
        }
        for j in 0..r {
            h[2 * n + j][2 * n + j] = rat(self.sig.epsilon(j + 1) as i64, 1);
        }
        h
    }

    /// Gradient in canonical variable order (p's, q's, thetas), with odd
    /// slots computed as left derivatives.
    pub fn super_gradient(&self, f: &SuperPolynomial) -> Vec<SuperPolynomial> {
        self.sig
            .base_variables()
            .into_iter()
            .map(|v| f.partial(v))
            .collect()
    }

    /// The super Poisson bracket. Impure inputs are split by parity and
    /// recombined linearly.
    pub fn bracket(
        &self,
        f: &SuperPolynomial,
        g: &SuperPolynomial,
    ) -> Result<SuperPolynomial> {
        f.check_same_sig(g)?;
        if f.signature() != &self.sig {
            return Err(crate::error::Error::SignatureMismatch);
        }
        let mut acc = SuperPolynomial::zero(&self.sig);
        let (fe, fo) = f.parity_split();
        let (ge, go) = g.parity_split();
        for (fp, pf) in [(&fe, Parity::Even), (&fo, Parity::Odd)] {
            if fp.is_zero() {
                continue;
            }
            for gp in [&ge, &go] {
                if gp.is_zero() {
                    continue;
                }
                acc = acc.add(&self.bracket_pure(fp, pf, gp));
            }
        }
        Ok(acc)
    }

    fn bracket_pure(
        &self,
        f: &SuperPolynomial,
        f_parity: Parity,
        g: &SuperPolynomial,
    ) -> SuperPolynomial {
        let mut acc = SuperPolynomial::zero(&self.sig);
        for i in 1..=self.sig.n() {
            let (p, q) = (Variable::p(i), Variable::q(i));
            acc = acc.add(&f.partial(p).mul(&g.partial(q)));
            acc = acc.sub(&f.partial(q).mul(&g.partial(p)));
        }
        for j in 1..=self.sig.r() {
            let t = Variable::theta(j);
            let sign = self.sig.epsilon(j) as i64 * f_parity.sign() as i64;
            acc = acc.add(&f.partial(t).mul(&g.partial(t)).scale_int(sign));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn ctx(n: usize, a: usize, b: usize) -> PoissonContext {
        PoissonContext::new(Signature::standard(n, a, b))
    }

    fn var(ctx: &PoissonContext, v: Variable) -> SuperPolynomial {
        SuperPolynomial::variable(ctx.signature(), v).unwrap()
    }

    #[test]
    fn generator_table() {
        let c = ctx(2, 1, 1);
        let s = c.signature().clone();
        let one = SuperPolynomial::one(&s);
        // {p_i, q_j} = delta_ij
        for i in 1..=2 {
            for j in 1..=2 {
                let b = c
                    .bracket(&var(&c, Variable::p(i)), &var(&c, Variable::q(j)))
                    .unwrap();
                if i == j {
                    assert_eq!(b, one);
                } else {
                    assert!(b.is_zero());
                }
            }
        }
        // {t_i, t_j} = -eps_i delta_ij
        for i in 1..=2 {
            for j in 1..=2 {
                let b = c
                    .bracket(&var(&c, Variable::theta(i)), &var(&c, Variable::theta(j)))
                    .unwrap();
                if i == j {
                    let expected = SuperPolynomial::constant(
                        &s,
                        rat(-(s.epsilon(i) as i64), 1),
                    );
                    assert_eq!(b, expected);
                } else {
                    assert!(b.is_zero());
                }
            }
        }
        // all p-p, q-q, p-t, q-t brackets vanish
        let ps: Vec<_> = (1..=2).map(Variable::p).collect();
        let qs: Vec<_> = (1..=2).map(Variable::q).collect();
        let ts: Vec<_> = (1..=2).map(Variable::theta).collect();
        for &u in ps.iter().chain(&qs) {
            for &w in ps.iter().chain(&qs).chain(&ts) {
                if u.kind != w.kind {
                    continue;
                }
                assert!(c.bracket(&var(&c, u), &var(&c, w)).unwrap().is_zero());
            }
        }
        for &u in ps.iter().chain(&qs) {
            for &t in &ts {
                assert!(c.bracket(&var(&c, u), &var(&c, t)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn leibniz_on_squares() {
        // {p1^2, q1} = 2 p1
        let c = ctx(1, 0, 0);
        let p1 = var(&c, Variable::p(1));
        let q1 = var(&c, Variable::q(1));
        assert_eq!(c.bracket(&p1.pow(2), &q1).unwrap(), p1.scale_int(2));
    }

    #[test]
    fn gradient_order_and_signs() {
        let c = ctx(1, 2, 0);
        let p1 = var(&c, Variable::p(1));
        let q1 = var(&c, Variable::q(1));
        let t1 = var(&c, Variable::theta(1));
        let t2 = var(&c, Variable::theta(2));
        let grad = c.super_gradient(&p1.mul(&q1));
        assert_eq!(grad[0], q1);
        assert_eq!(grad[1], p1);
        assert!(grad[2].is_zero() && grad[3].is_zero());

        let grad = c.super_gradient(&t1.mul(&t2));
        assert_eq!(grad[2], t2);
        assert_eq!(grad[3], t1.neg());

        let one = SuperPolynomial::one(c.signature());
        assert!(c.super_gradient(&one).iter().all(|g| g.is_zero()));
    }

    #[test]
    fn bracket_has_no_hbar_on_hbar_free_inputs() {
        let c = ctx(1, 1, 0);
        let p1 = var(&c, Variable::p(1));
        let q1 = var(&c, Variable::q(1));
        let t1 = var(&c, Variable::theta(1));
        let f = p1.pow(2).mul(&q1).add(&t1.mul(&p1));
        let g = q1.pow(3).add(&t1.mul(&q1));
        let b = c.bracket(&f, &g).unwrap();
        assert_eq!(b.max_hbar(), 0);
    }
}
