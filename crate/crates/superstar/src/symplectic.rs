//! Block super-matrices over the Grassmann coefficient ring and the
//! supergroup Sp(2n|a,b): super-transpose, membership (M^sT H M = H),
//! Lie-algebra membership (X^sT H + H X = 0), inversion, and the induced
//! action on functions.
//!
//! Rows and columns follow the canonical variable order p_1..p_n, q_1..q_n,
//! t_1..t_r. The even blocks A, D carry even entries; the off-diagonal
//! blocks B, C carry odd entries drawn from the aux-odd xi pool.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::algebra::{Coeff, Monomial, Parity, Signature, SuperPolynomial, VarKind, Variable};
use crate::error::{Error, Result};
use crate::geometry::FormalVectorField;
use crate::poisson::PoissonContext;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    sig: Signature,
    /// (2n+r) x (2n+r) entries, row major.
    entries: Vec<Vec<SuperPolynomial>>,
}

impl SuperMatrix {
    pub fn dim(sig: &Signature) -> usize {
        2 * sig.n() + sig.r()
    }

    /// Row/column index parity: even for the 2n symplectic slots, odd for
    /// the r Clifford slots.
    fn slot_parity(sig: &Signature, i: usize) -> Parity {
        if i < 2 * sig.n() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn new(sig: &Signature, entries: Vec<Vec<SuperPolynomial>>) -> Result<SuperMatrix> {
        let dim = Self::dim(sig);
        if entries.len() != dim || entries.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "expected a {dim}x{dim} matrix"
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                e.check_same_sig(&SuperPolynomial::zero(sig))?;
                if e.max_hbar() > 0 {
                    return Err(Error::ParityViolation(
                        "matrix entries may not involve hbar".into(),
                    ));
                }
                if e.terms().any(|(m, _)| {
                    m.even.keys().chain(m.odd.iter()).any(|v| v.kind != VarKind::Xi)
                }) {
                    return Err(Error::ParityViolation(
                        "matrix entries may only use the aux-odd pool".into(),
                    ));
                }
                let wanted = Self::slot_parity(sig, i).add(Self::slot_parity(sig, j));
                if !e.is_zero() && e.pure_parity() != Some(wanted) {
                    return Err(Error::ParityViolation(format!(
                        "entry ({i},{j}) must have parity {wanted:?}"
                    )));
                }
            }
        }
        Ok(SuperMatrix { sig: sig.clone(), entries })
    }

    pub fn from_rational(sig: &Signature, numeric: Vec<Vec<Coeff>>) -> Result<SuperMatrix> {
        let entries = numeric
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| SuperPolynomial::constant(sig, c))
                    .collect()
            })
            .collect();
        SuperMatrix::new(sig, entries)
    }

    pub fn identity(sig: &Signature) -> SuperMatrix {
        let dim = Self::dim(sig);
        let mut entries = vec![vec![SuperPolynomial::zero(sig); dim]; dim];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = SuperPolynomial::one(sig);
        }
        SuperMatrix { sig: sig.clone(), entries }
    }

    pub fn zero(sig: &Signature) -> SuperMatrix {
        let dim = Self::dim(sig);
        SuperMatrix {
            sig: sig.clone(),
            entries: vec![vec![SuperPolynomial::zero(sig); dim]; dim],
        }
    }

    /// H = [[Omega,0],[0,G]] as a SuperMatrix.
    pub fn h_matrix(sig: &Signature) -> SuperMatrix {
        let ctx = PoissonContext::new(sig.clone());
        SuperMatrix::from_rational(sig, ctx.h_matrix()).expect("H is parity disciplined")
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn entry(&self, i: usize, j: usize) -> &SuperPolynomial {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &SuperMatrix) -> SuperMatrix {
        assert_eq!(self.sig, other.sig);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| a.add(b)).collect())
            .collect();
        SuperMatrix { sig: self.sig.clone(), entries }
    }

    pub fn sub(&self, other: &SuperMatrix) -> SuperMatrix {
        assert_eq!(self.sig, other.sig);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| a.sub(b)).collect())
            .collect();
        SuperMatrix { sig: self.sig.clone(), entries }
    }

    pub fn mul(&self, other: &SuperMatrix) -> SuperMatrix {
        assert_eq!(self.sig, other.sig);
        let dim = Self::dim(&self.sig);
        let mut entries = vec![vec![SuperPolynomial::zero(&self.sig); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = SuperPolynomial::zero(&self.sig);
                for k in 0..dim {
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j]));
                }
                entries[i][j] = acc;
            }
        }
        SuperMatrix { sig: self.sig.clone(), entries }
    }

    pub fn scale(&self, c: &Coeff) -> SuperMatrix {
        SuperMatrix {
            sig: self.sig.clone(),
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.scale(c)).collect())
                .collect(),
        }
    }

    /// The super-transpose [[A^T, -C^T], [B^T, D^T]].
    pub fn super_transpose(&self) -> SuperMatrix {
        let dim = Self::dim(&self.sig);
        let even = 2 * self.sig.n();
        let mut entries = vec![vec![SuperPolynomial::zero(&self.sig); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                // target (i,j) takes source (j,i), negated exactly on the
                // former C block, i.e. when the source row is odd and the
                // source column is even.
                let src = &self.entries[j][i];
                entries[i][j] = if j >= even && i < even { src.neg() } else { src.clone() };
            }
        }
        SuperMatrix { sig: self.sig.clone(), entries }
    }

    /// M^sT H M = H, computed exactly over the Grassmann ring.
    pub fn is_sp_member(&self) -> bool {
        let h = Self::h_matrix(&self.sig);
        self.super_transpose().mul(&h).mul(self) == h
    }

    /// X^sT H + H X = 0.
    pub fn is_sp_lie_member(&self) -> bool {
        let h = Self::h_matrix(&self.sig);
        self.super_transpose().mul(&h).add(&h.mul(self)).is_zero()
    }

    /// The constant-term (body) matrix over the rationals.
    pub fn body(&self) -> Vec<Vec<Coeff>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.constant_term()).collect())
            .collect()
    }

    /// Inverse over the Grassmann coefficient ring: invert the rational body
    /// by elimination, then correct by a terminating geometric series in the
    /// nilpotent remainder.
    pub fn inverse(&self) -> Result<SuperMatrix> {
        let body_inv = invert_rational(&self.body()).ok_or(Error::NotInvertible)?;
        let body_inv = SuperMatrix::from_rational(&self.sig, body_inv)?;
        // M = M0 (I + M0^{-1} S); (I + N)^{-1} = sum (-N)^k with N nilpotent.
        let n_mat = body_inv.mul(self).sub(&SuperMatrix::identity(&self.sig));
        let mut series = SuperMatrix::identity(&self.sig);
        let mut power = SuperMatrix::identity(&self.sig);
        let mut sign = -1i64;
        let dim = Self::dim(&self.sig);
        for _ in 0..=dim * 8 {
            power = power.mul(&n_mat);
            if power.is_zero() {
                break;
            }
            let signed = power.scale(&Coeff::from_integer(sign.into()));
            series = series.add(&signed);
            sign = -sign;
        }
        if !power.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(series.mul(&body_inv))
    }

    fn slot_variable(sig: &Signature, i: usize) -> Variable {
        let n = sig.n();
        if i < n {
            Variable::p(i + 1)
        } else if i < 2 * n {
            Variable::q(i - n + 1)
        } else {
            Variable::theta(i - 2 * n + 1)
        }
    }

    /// The substitution images z_j -> sum_i M_ij z_i determined by the
    /// columns of the matrix.
    pub fn images(&self) -> Result<BTreeMap<Variable, SuperPolynomial>> {
        let dim = Self::dim(&self.sig);
        let mut images = BTreeMap::new();
        for j in 0..dim {
            let mut img = SuperPolynomial::zero(&self.sig);
            for i in 0..dim {
                let z = SuperPolynomial::variable(&self.sig, Self::slot_variable(&self.sig, i))?;
                img = img.add(&self.entries[i][j].mul(&z));
            }
            images.insert(Self::slot_variable(&self.sig, j), img);
        }
        Ok(images)
    }

    /// The algebra automorphism of the function algebra induced by a group
    /// member; errors on non-members.
    pub fn act(&self, f: &SuperPolynomial) -> Result<SuperPolynomial> {
        if !self.is_sp_member() {
            return Err(Error::NotSymplectic);
        }
        f.substitute_linear(&self.images()?)
    }

    /// The linear vector field z_j -> sum_i X_ij z_i of a Lie-algebra element.
    pub fn linear_vector_field(&self) -> Result<FormalVectorField> {
        let images = self.images()?;
        let id_images = SuperMatrix::identity(&self.sig).images()?;
        let coeffs: BTreeMap<Variable, SuperPolynomial> = images
            .into_iter()
            .zip(id_images)
            .map(|((v, img), (_, z))| (v, img.sub(&z)))
            .collect();
        // X_ij z_i has the parity of z_j for parity-disciplined X, so this is
        // an even derivation; odd-odd blocks would make it impure and fail
        // construction below.
        FormalVectorField::new(&self.sig, Parity::Even, coeffs)
    }
}

fn invert_rational(m: &[Vec<Coeff>]) -> Option<Vec<Vec<Coeff>>> {
    let dim = m.len();
    let mut a: Vec<Vec<Coeff>> = m.to_vec();
    let mut inv: Vec<Vec<Coeff>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { Coeff::one() } else { Coeff::zero() })
                .collect()
        })
        .collect();
    for col in 0..dim {
        let pivot = (col..dim).find(|&row| !a[row][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..dim {
            a[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for row in 0..dim {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone();
            for j in 0..dim {
                let d = &factor * &a[col][j];
                a[row][j] -= d;
                let d = &factor * &inv[col][j];
                inv[row][j] -= d;
            }
        }
    }
    Some(inv)
}

/// Shared helper for matrices entered blockwise.
pub fn from_blocks(
    sig: &Signature,
    a: Vec<Vec<SuperPolynomial>>,
    b: Vec<Vec<SuperPolynomial>>,
    c: Vec<Vec<SuperPolynomial>>,
    d: Vec<Vec<SuperPolynomial>>,
) -> Result<SuperMatrix> {
    let (even, odd) = (2 * sig.n(), sig.r());
    let check = |name: &str, rows: usize, cols: usize, block: &Vec<Vec<SuperPolynomial>>| {
        if block.len() != rows || block.iter().any(|r| r.len() != cols) {
            Err(Error::DimensionMismatch(format!(
                "block {name} must be {rows}x{cols}"
            )))
        } else {
            Ok(())
        }
    };
    check("A", even, even, &a)?;
    check("B", even, odd, &b)?;
    check("C", odd, even, &c)?;
    check("D", odd, odd, &d)?;
    let mut entries = Vec::with_capacity(even + odd);
    for (ra, rb) in a.into_iter().zip(b) {
        let mut row = ra;
        row.extend(rb);
        entries.push(row);
    }
    for (rc, rd) in c.into_iter().zip(d) {
        let mut row = rc;
        row.extend(rd);
        entries.push(row);
    }
    SuperMatrix::new(sig, entries)
}

pub fn is_monomial_xi_only(m: &Monomial) -> bool {
    m.even.keys().chain(m.odd.iter()).all(|v| v.kind == VarKind::Xi)
}
