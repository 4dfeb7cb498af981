//! The invariant suite behind `superstar check`: randomized exact checks of
//! the algebraic laws across every module.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, Parity, Signature, SuperPolynomial, Variable};
use crate::error::Result;
use crate::expr::{format_expression, parse_expression};
use crate::geometry::{
    hamiltonian_vf, is_flat, is_poisson_derivation, jet_flatness_defect, taylor_jet,
};
use crate::poisson::PoissonContext;
use crate::sample::{random_disciplined_matrix, random_even_member, PolySampler};
use crate::star::StarContext;
use crate::weyl::{enumerate_words, iso_check};

#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub sig: Signature,
    pub degree: u32,
    pub cases: usize,
    pub seed: u64,
    /// Test shim: deliberately corrupt one invariant so the suite must fail.
    pub sabotage: bool,
}

impl CheckConfig {
    pub fn new(sig: Signature) -> CheckConfig {
        CheckConfig { sig, degree: 4, cases: 100, seed: 0, sabotage: false }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &str, passed: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome { name: name.to_string(), passed, detail: detail.into() }
}

pub fn run_checks(cfg: &CheckConfig) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sig = cfg.sig.clone();
    let poisson = PoissonContext::new(sig.clone());
    let star = StarContext::new(poisson.clone());
    let sampler = PolySampler::new(sig.clone(), cfg.degree);
    let low = PolySampler::new(sig.clone(), cfg.degree.min(3));
    let mut results = Vec::new();

    // supercommutativity: fg = (-1)^{|f||g|} gf
    let mut ok = true;
    for _ in 0..cfg.cases {
        let f = sampler.random_pure(&mut rng);
        let g = sampler.random_pure(&mut rng);
        let (pf, pg) = (f.pure_parity().unwrap(), g.pure_parity().unwrap());
        let rhs = if pf.koszul(pg) < 0 { g.mul(&f).neg() } else { g.mul(&f) };
        if f.mul(&g) != rhs {
            ok = false;
            break;
        }
    }
    results.push(outcome("mul-supercommutativity", ok, format!("{} cases", cfg.cases)));

    // associativity of the supercommutative product
    let mut ok = true;
    for _ in 0..cfg.cases {
        let f = sampler.random_pure(&mut rng);
        let g = sampler.random_pure(&mut rng);
        let h = sampler.random_pure(&mut rng);
        if f.mul(&g).mul(&h) != f.mul(&g.mul(&h)) {
            ok = false;
            break;
        }
    }
    results.push(outcome("mul-associativity", ok, format!("{} cases", cfg.cases)));

    // super-Leibniz for odd partials
    let mut ok = true;
    if sig.r() > 0 {
        for _ in 0..cfg.cases {
            let f = sampler.random_pure(&mut rng);
            let g = sampler.random_pure(&mut rng);
            let t = Variable::theta(rng.gen_range(1..=sig.r()));
            let lhs = f.mul(&g).partial(t);
            let mut rhs = f.partial(t).mul(&g);
            let second = f.mul(&g.partial(t));
            rhs = if f.pure_parity() == Some(Parity::Odd) {
                rhs.sub(&second)
            } else {
                rhs.add(&second)
            };
            if lhs != rhs {
                ok = false;
                break;
            }
        }
    }
    results.push(outcome("odd-partial-leibniz", ok, format!("{} cases", cfg.cases)));

    // substitution along a random member is an algebra map
    let mut ok = true;
    for _ in 0..cfg.cases.min(40) {
        let m = random_even_member(&sig, &mut rng);
        let images = m.images()?;
        let f = sampler.random_pure(&mut rng);
        let g = sampler.random_pure(&mut rng);
        let lhs = f.mul(&g).substitute_linear(&images)?;
        let rhs = f
            .substitute_linear(&images)?
            .mul(&g.substitute_linear(&images)?);
        if lhs != rhs {
            ok = false;
            break;
        }
    }
    results.push(outcome("substitution-homomorphism", ok, "random members"));

    // bracket axioms
    let mut anti = true;
    let mut leibniz = true;
    let mut jacobi = true;
    for _ in 0..cfg.cases {
        let f = sampler.random_pure(&mut rng);
        let g = sampler.random_pure(&mut rng);
        let h = sampler.random_pure(&mut rng);
        let (pf, pg) = (f.pure_parity().unwrap(), g.pure_parity().unwrap());
        let fg = poisson.bracket(&f, &g)?;
        let gf = poisson.bracket(&g, &f)?;
        let expect = if pf.koszul(pg) < 0 { gf } else { gf.neg() };
        if fg != expect {
            anti = false;
        }
        // {f, gh} = {f,g}h + (-1)^{|f||g|} g{f,h}
        let lhs = poisson.bracket(&f, &g.mul(&h))?;
        let mut rhs = fg.mul(&h);
        let second = g.mul(&poisson.bracket(&f, &h)?);
        rhs = if pf.koszul(pg) < 0 { rhs.sub(&second) } else { rhs.add(&second) };
        if lhs != rhs {
            leibniz = false;
        }
        // {f,{g,h}} = {{f,g},h} + (-1)^{|f||g|} {g,{f,h}}
        let lhs = poisson.bracket(&f, &poisson.bracket(&g, &h)?)?;
        let mut rhs = poisson.bracket(&fg, &h)?;
        let second = poisson.bracket(&g, &poisson.bracket(&f, &h)?)?;
        rhs = if pf.koszul(pg) < 0 { rhs.sub(&second) } else { rhs.add(&second) };
        if lhs != rhs {
            jacobi = false;
        }
    }
    results.push(outcome("bracket-antisymmetry", anti, format!("{} cases", cfg.cases)));
    results.push(outcome("bracket-leibniz", leibniz, format!("{} cases", cfg.cases)));
    results.push(outcome("bracket-jacobi", jacobi, format!("{} cases", cfg.cases)));

    // star unit
    let one = SuperPolynomial::one(&sig);
    let mut ok = true;
    for _ in 0..cfg.cases.min(20) {
        let f = sampler.random_pure(&mut rng);
        if star.star(&one, &f)? != f || star.star(&f, &one)? != f {
            ok = false;
            break;
        }
    }
    results.push(outcome("star-unit", ok, "unit element"));

    // star associativity (lower degree to keep it quick)
    let mut ok = true;
    for _ in 0..cfg.cases {
        let f = low.random_pure(&mut rng);
        let g = low.random_pure(&mut rng);
        let h = low.random_pure(&mut rng);
        let lhs = star.star(&star.star(&f, &g)?, &h)?;
        let rhs = star.star(&f, &star.star(&g, &h)?)?;
        if lhs != rhs {
            ok = false;
            break;
        }
    }
    results.push(outcome("star-associativity", ok, format!("{} cases", cfg.cases)));

    // hbar filtration: f*g = fg + (hbar/2){f,g} + O(hbar^2)
    let mut ok = true;
    for _ in 0..cfg.cases {
        let f = sampler.random_pure(&mut rng);
        let g = sampler.random_pure(&mut rng);
        let prod = star.star(&f, &g)?;
        if prod.hbar_coefficient(0) != f.mul(&g) {
            ok = false;
            break;
        }
        if prod.hbar_coefficient(1) != poisson.bracket(&f, &g)?.scale(&rat(1, 2)) {
            ok = false;
            break;
        }
    }
    results.push(outcome("star-hbar-filtration", ok, format!("{} cases", cfg.cases)));

    // BD1: [f,g] - hbar{f,g} is divisible by hbar^2
    let mut ok = true;
    for _ in 0..cfg.cases {
        let f = sampler.random_pure(&mut rng);
        let g = sampler.random_pure(&mut rng);
        let mut defect = star.bd1_defect(&f, &g)?;
        if cfg.sabotage {
            defect = defect.add(&SuperPolynomial::hbar(&sig, 1));
        }
        if !defect.divisible_by_hbar(2) {
            ok = false;
            break;
        }
    }
    results.push(outcome(
        "bd1-defect",
        ok,
        if cfg.sabotage { "sabotaged".to_string() } else { format!("{} cases", cfg.cases) },
    ));

    // Sp-invariance of the star product under even members
    let mut ok = true;
    for _ in 0..cfg.cases.min(20) {
        let m = random_even_member(&sig, &mut rng);
        let f = low.random_pure(&mut rng);
        let g = low.random_pure(&mut rng);
        let lhs = m.act(&star.star(&f, &g)?)?;
        let rhs = star.star(&m.act(&f)?, &m.act(&g)?)?;
        if lhs != rhs {
            ok = false;
            break;
        }
    }
    results.push(outcome("sp-invariance", ok, "random even members"));

    // super-transpose has order four
    let mut ok = true;
    for _ in 0..cfg.cases.min(50) {
        let m = random_disciplined_matrix(&sig, &mut rng);
        let st4 = m
            .super_transpose()
            .super_transpose()
            .super_transpose()
            .super_transpose();
        if st4 != m {
            ok = false;
            break;
        }
    }
    results.push(outcome("super-transpose-order-4", ok, "random disciplined matrices"));

    // Hamiltonian fields are Poisson derivations
    let mut ok = true;
    for _ in 0..cfg.cases.min(30) {
        let h = sampler.random_pure(&mut rng);
        let v = hamiltonian_vf(&poisson, &h)?;
        let samples: Vec<_> = (0..4)
            .map(|_| (sampler.random_pure(&mut rng), sampler.random_pure(&mut rng)))
            .collect();
        if !is_poisson_derivation(&poisson, &v, &samples)? {
            ok = false;
            break;
        }
    }
    results.push(outcome("hamiltonian-derivation", ok, "random hamiltonians"));

    // Taylor jets are flat; a corrupted jet is not
    let mut ok = true;
    for _ in 0..cfg.cases.min(50) {
        let f = sampler.random_pure(&mut rng);
        let jet = taylor_jet(&f, f.total_degree())?;
        if !is_flat(&jet) {
            ok = false;
            break;
        }
    }
    {
        let q1 = SuperPolynomial::variable(&sig, Variable::fiber_q(1));
        if let Ok(qh) = q1 {
            let bad = crate::geometry::JetElement { poly: qh };
            if jet_flatness_defect(&bad).iter().all(|(_, d)| d.is_zero()) {
                ok = false;
            }
        }
    }
    results.push(outcome("jet-flatness", ok, "taylor prolongations"));

    // Weyl (x) Clifford against the star product on short words
    let mut alphabet = Vec::new();
    for i in 1..=sig.n().min(1) {
        alphabet.push(Variable::p(i));
        alphabet.push(Variable::q(i));
    }
    for i in 1..=sig.r().min(2) {
        alphabet.push(Variable::theta(i));
    }
    let words = enumerate_words(&sig, &alphabet, 3)?;
    let mismatches = iso_check(&star, &words)?;
    results.push(outcome(
        "weyl-clifford-equivalence",
        mismatches.is_empty(),
        format!("{} words", words.len()),
    ));

    // parser round trip on random polynomials (hbar powers included)
    let mut ok = true;
    let mut roundtrip = PolySampler::new(sig.clone(), cfg.degree);
    roundtrip.max_hbar = 2;
    for _ in 0..cfg.cases {
        let f = roundtrip.random(&mut rng, None);
        let text = format_expression(&f);
        let parsed = parse_expression(&text, &sig)?;
        if parsed.poly != f || format_expression(&parsed.poly) != text {
            ok = false;
            break;
        }
    }
    results.push(outcome("parse-format-roundtrip", ok, format!("{} cases", cfg.cases)));

    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run_passes() {
        let mut cfg = CheckConfig::new(Signature::standard(1, 1, 1));
        cfg.cases = 25;
        cfg.degree = 3;
        let results = run_checks(&cfg).unwrap();
        assert!(results.iter().all(|r| r.passed), "{results:?}");
    }

    #[test]
    fn sabotage_fails() {
        let mut cfg = CheckConfig::new(Signature::standard(1, 1, 0));
        cfg.cases = 5;
        cfg.degree = 2;
        cfg.sabotage = true;
        let results = run_checks(&cfg).unwrap();
        assert!(results.iter().any(|r| !r.passed));
    }
}
