//! Seeded random generators for polynomials and group members, shared by the
//! `check` command and the test suites.

use num::Zero;
use rand::Rng;

use crate::algebra::{rat, Coeff, Monomial, Parity, Signature, SuperPolynomial, Variable};
use crate::symplectic::SuperMatrix;

#[derive(Debug, Clone)]
pub struct PolySampler {
    pub sig: Signature,
    pub max_degree: u32,
    pub max_terms: usize,
    pub max_hbar: u32,
}

impl PolySampler {
    pub fn new(sig: Signature, max_degree: u32) -> PolySampler {
        PolySampler { sig, max_degree, max_terms: 4, max_hbar: 0 }
    }

    fn random_coeff<R: Rng>(&self, rng: &mut R) -> Coeff {
        let mut numer = 0i64;
        while numer == 0 {
            numer = rng.gen_range(-9..=9);
        }
        rat(numer, rng.gen_range(1..=3))
    }

    fn random_monomial<R: Rng>(&self, rng: &mut R, parity: Parity) -> Option<Monomial> {
        let r = self.sig.r();
        let mut odd: Vec<Variable> = (1..=r)
            .filter(|_| rng.gen_bool(0.35))
            .map(Variable::theta)
            .collect();
        while odd.len() as u32 > self.max_degree && !odd.is_empty() {
            odd.pop();
        }
        if Parity::of_len(odd.len()) != parity {
            // toggle one theta to fix the parity
            if let Some(extra) = (1..=r).map(Variable::theta).find(|t| !odd.contains(t)) {
                if (odd.len() as u32) < self.max_degree {
                    odd.push(extra);
                } else {
                    odd.pop();
                }
            } else if !odd.is_empty() {
                odd.pop();
            }
        }
        if Parity::of_len(odd.len()) != parity {
            return None;
        }
        odd.sort();
        let mut m = Monomial { odd, ..Monomial::one() };
        let budget = self.max_degree - m.degree();
        let even_total = rng.gen_range(0..=budget);
        for _ in 0..even_total {
            if self.sig.n() == 0 {
                break;
            }
            let idx = rng.gen_range(1..=self.sig.n());
            let v = if rng.gen_bool(0.5) { Variable::p(idx) } else { Variable::q(idx) };
            *m.even.entry(v).or_insert(0) += 1;
        }
        if self.max_hbar > 0 {
            m.hbar = rng.gen_range(0..=self.max_hbar);
        }
        Some(m)
    }

    /// A random polynomial, pure of the requested parity when given.
    pub fn random<R: Rng>(&self, rng: &mut R, parity: Option<Parity>) -> SuperPolynomial {
        let parity = parity.unwrap_or_else(|| {
            if self.sig.r() > 0 && rng.gen_bool(0.5) {
                Parity::Odd
            } else {
                Parity::Even
            }
        });
        let mut poly = SuperPolynomial::zero(&self.sig);
        for _ in 0..rng.gen_range(1..=self.max_terms) {
            if let Some(m) = self.random_monomial(rng, parity) {
                poly.add_term(m, self.random_coeff(rng));
            }
        }
        poly
    }

    /// A random nonzero pure polynomial (retries on the rare zero draw).
    pub fn random_pure<R: Rng>(&self, rng: &mut R) -> SuperPolynomial {
        for _ in 0..32 {
            let p = self.random(rng, None);
            if !p.is_zero() {
                return p;
            }
        }
        SuperPolynomial::one(&self.sig)
    }
}

fn embed_identity(dim: usize) -> Vec<Vec<Coeff>> {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { rat(1, 1) } else { rat(0, 1) })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<Coeff>], b: &[Vec<Coeff>]) -> Vec<Vec<Coeff>> {
    let dim = a.len();
    let mut out = vec![vec![Coeff::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Coeff::zero();
            for k in 0..dim {
                acc += &a[i][k] * &b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// A random even (block-diagonal, numeric) member of Sp(2n|a,b): SL(2,Q)
/// shears acting on each (p_i, q_i) pair and rational rotations/boosts on
/// compatible pairs of odd directions.
pub fn random_even_member<R: Rng>(sig: &Signature, rng: &mut R) -> SuperMatrix {
    let n = sig.n();
    let r = sig.r();
    let dim = 2 * n + r;
    let mut m = embed_identity(dim);

    // symplectic part: a few random elementary shears per pair
    for i in 0..n {
        for _ in 0..rng.gen_range(1..=2) {
            let a = rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
            let mut shear = embed_identity(dim);
            if rng.gen_bool(0.5) {
                // p_i -> p_i, q_i -> q_i + a p_i  (column action)
                shear[i][n + i] = a;
            } else {
                shear[n + i][i] = a;
            }
            m = mat_mul(&m, &shear);
        }
    }

    // orthogonal part on the odd block
    let odd0 = 2 * n;
    for _ in 0..r {
        if r < 2 {
            break;
        }
        let i = rng.gen_range(0..r);
        let mut j = rng.gen_range(0..r);
        if i == j {
            j = (j + 1) % r;
        }
        let (i, j) = (i.min(j), i.max(j));
        let t = rat(rng.gen_range(-3..=3), rng.gen_range(2..=4));
        let t2 = &t * &t;
        let mut block = embed_identity(dim);
        if sig.epsilon(i + 1) == sig.epsilon(j + 1) {
            // rational rotation: ((1-t^2)/(1+t^2), 2t/(1+t^2))
            let den = rat(1, 1) + t2.clone();
            let c = (rat(1, 1) - t2.clone()) / den.clone();
            let s = (rat(2, 1) * t.clone()) / den;
            block[odd0 + i][odd0 + i] = c.clone();
            block[odd0 + i][odd0 + j] = s.clone();
            block[odd0 + j][odd0 + i] = -s;
            block[odd0 + j][odd0 + j] = c;
        } else {
            // rational boost: ((1+t^2)/(1-t^2), 2t/(1-t^2)); skip t^2 = 1
            if t2 == rat(1, 1) {
                continue;
            }
            let den = rat(1, 1) - t2.clone();
            let c = (rat(1, 1) + t2.clone()) / den.clone();
            let s = (rat(2, 1) * t.clone()) / den;
            block[odd0 + i][odd0 + i] = c.clone();
            block[odd0 + i][odd0 + j] = s.clone();
            block[odd0 + j][odd0 + i] = s;
            block[odd0 + j][odd0 + j] = c;
        }
        m = mat_mul(&m, &block);
    }

    SuperMatrix::from_rational(sig, m).expect("constructed member is parity disciplined")
}

/// A random parity-disciplined super matrix (not necessarily a member):
/// rational even blocks with optional xi-pair corrections, odd blocks linear
/// in the aux pool.
pub fn random_disciplined_matrix<R: Rng>(sig: &Signature, rng: &mut R) -> SuperMatrix {
    let n = sig.n();
    let r = sig.r();
    let dim = 2 * n + r;
    let even = 2 * n;
    let xi = |i: usize| SuperPolynomial::variable(sig, Variable::xi(i)).unwrap();
    let mut entries = vec![vec![SuperPolynomial::zero(sig); dim]; dim];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let even_slot = (i < even) == (j < even);
            if even_slot {
                let mut v = SuperPolynomial::constant(
                    sig,
                    rat(rng.gen_range(-4..=4), rng.gen_range(1..=2)),
                );
                if rng.gen_bool(0.3) {
                    let a = rng.gen_range(1..=2);
                    let b = rng.gen_range(3..=4);
                    v = v.add(&xi(a).mul(&xi(b)).scale_int(rng.gen_range(-2..=2)));
                }
                *e = v;
            } else if rng.gen_bool(0.6) {
                *e = xi(rng.gen_range(1..=4)).scale_int(rng.gen_range(-3..=3));
            }
        }
    }
    SuperMatrix::new(sig, entries).expect("parity discipline holds by construction")
}
