//! Sparse multivariate polynomials over canonical phase-space variables
//! with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A canonical variable: `x_i`, its conjugate momentum `p_i` (indices
/// 1..=n), or the auxiliary conjugate pair `(Q, P)` of the extended
/// phase space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseVar {
    X(usize),
    P(usize),
    AuxQ,
    AuxP,
}

impl PhaseVar {
    /// The canonically conjugate partner; every variable has exactly one.
    pub fn conjugate(self) -> PhaseVar {
        match self {
            PhaseVar::X(i) => PhaseVar::P(i),
            PhaseVar::P(i) => PhaseVar::X(i),
            PhaseVar::AuxQ => PhaseVar::AuxP,
            PhaseVar::AuxP => PhaseVar::AuxQ,
        }
    }

    fn slot(self, n: usize) -> usize {
        match self {
            PhaseVar::X(i) => {
                assert!(i >= 1 && i <= n, "x index {i} out of 1..={n}");
                i - 1
            }
            PhaseVar::P(i) => {
                assert!(i >= 1 && i <= n, "p index {i} out of 1..={n}");
                n + i - 1
            }
            PhaseVar::AuxQ => 2 * n,
            PhaseVar::AuxP => 2 * n + 1,
        }
    }

    fn name(slot: usize, n: usize) -> String {
        if slot < n {
            format!("x{}", slot + 1)
        } else if slot < 2 * n {
            format!("p{}", slot + 1 - n)
        } else if slot == 2 * n {
            "Q".into()
        } else {
            "P".into()
        }
    }
}

/// Exponent vector over the `2n + 2` variable slots, ordered by total
/// degree then lexicographically for deterministic printing.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Monomial(Vec<u32>);

impl Monomial {
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over the phase variables of an `n`-dimensional
/// system extended by `(Q, P)`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhasePoly {
    n: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PhasePoly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, value: BigRational) -> Self {
        let mut poly = Self::zero(n);
        if !value.is_zero() {
            poly.terms.insert(Monomial(vec![0; 2 * n + 2]), value);
        }
        poly
    }

    pub fn from_int(n: usize, value: i64) -> Self {
        Self::constant(n, BigRational::from_integer(BigInt::from(value)))
    }

    pub fn var(n: usize, v: PhaseVar) -> Self {
        let mut exps = vec![0u32; 2 * n + 2];
        exps[v.slot(n)] = 1;
        let mut poly = Self::zero(n);
        poly.terms.insert(Monomial(exps), BigRational::from_integer(BigInt::from(1)));
        poly
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_term(&mut self, mono: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.n);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * factor))
            .collect();
        Self { n: self.n, terms }
    }

    /// Partial derivative with respect to one variable; exact.
    pub fn partial(&self, v: PhaseVar) -> Self {
        let slot = v.slot(self.n);
        let mut out = Self::zero(self.n);
        for (mono, coeff) in &self.terms {
            let e = mono.0[slot];
            if e == 0 {
                continue;
            }
            let mut exps = mono.0.clone();
            exps[slot] -= 1;
            out.insert_term(
                Monomial(exps),
                coeff * BigRational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    /// Evaluate at a phase-space point in double precision.
    pub fn eval(&self, pt: &PhasePoint) -> f64 {
        assert_eq!(pt.dim(), self.n, "point dimension mismatch");
        let mut total = 0.0;
        for (mono, coeff) in &self.terms {
            let mut term = coeff.to_f64().expect("rational representable");
            for (slot, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    term *= pt.slot_value(slot).powi(e as i32);
                }
            }
            total += term;
        }
        total
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest-degree terms first.
        for (mono, coeff) in self.terms.iter().rev() {
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (slot, &e) in mono.0.iter().enumerate() {
                if e == 1 {
                    factors.push(PhaseVar::name(slot, self.n));
                } else if e > 1 {
                    factors.push(format!("{}^{}", PhaseVar::name(slot, self.n), e));
                }
            }
            let one = BigRational::from_integer(BigInt::from(1));
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == one {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &PhasePoly {
    type Output = PhasePoly;
    fn add(self, rhs: &PhasePoly) -> PhasePoly {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (mono, coeff) in &rhs.terms {
            out.insert_term(mono.clone(), coeff.clone());
        }
        out
    }
}

impl Sub for &PhasePoly {
    type Output = PhasePoly;
    fn sub(self, rhs: &PhasePoly) -> PhasePoly {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (mono, coeff) in &rhs.terms {
            out.insert_term(mono.clone(), -coeff.clone());
        }
        out
    }
}

impl Neg for &PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        PhasePoly { n: self.n, terms }
    }
}

impl Mul for &PhasePoly {
    type Output = PhasePoly;
    fn mul(self, rhs: &PhasePoly) -> PhasePoly {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = PhasePoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.insert_term(Monomial(exps), ca * cb);
            }
        }
        out
    }
}

/// Numeric values for every phase variable of an `n`-dimensional system.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePoint {
    pub x: Vec<f64>,
    pub p: Vec<f64>,
    pub aux_q: f64,
    pub aux_p: f64,
}

impl PhasePoint {
    pub fn new(x: Vec<f64>, p: Vec<f64>) -> Self {
        assert_eq!(x.len(), p.len(), "x and p must have the same dimension");
        Self { x, p, aux_q: 0.0, aux_p: 0.0 }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    fn slot_value(&self, slot: usize) -> f64 {
        let n = self.dim();
        if slot < n {
            self.x[slot]
        } else if slot < 2 * n {
            self.p[slot - n]
        } else if slot == 2 * n {
            self.aux_q
        } else {
            self.aux_p
        }
    }
}

/// Canonical Poisson bracket
/// `{f, g} = sum_i (df/dx_i dg/dp_i - df/dp_i dg/dx_i)
///          + df/dQ dg/dP - df/dP dg/dQ`, exact.
pub fn poisson_bracket(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    assert_eq!(f.dim(), g.dim(), "dimension mismatch");
    let n = f.dim();
    let mut out = PhasePoly::zero(n);
    let pairs = (1..=n)
        .map(|i| (PhaseVar::X(i), PhaseVar::P(i)))
        .chain(std::iter::once((PhaseVar::AuxQ, PhaseVar::AuxP)));
    for (q, p) in pairs {
        let fq = f.partial(q);
        let gp = g.partial(p);
        if !fq.is_zero() && !gp.is_zero() {
            out = &out + &(&fq * &gp);
        }
        let fp = f.partial(p);
        let gq = g.partial(q);
        if !fp.is_zero() && !gq.is_zero() {
            out = &out - &(&fp * &gq);
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use crate::numeric::SplitMix64;

    /// Random polynomial of bounded degree with small rational
    /// coefficients; deterministic given the RNG state.
    pub fn random_poly(rng: &mut SplitMix64, n: usize, max_degree: u32, terms: usize) -> PhasePoly {
        let vars: Vec<PhaseVar> = (1..=n)
            .map(PhaseVar::X)
            .chain((1..=n).map(PhaseVar::P))
            .chain([PhaseVar::AuxQ, PhaseVar::AuxP])
            .collect();
        let mut poly = PhasePoly::zero(n);
        for _ in 0..terms {
            let deg = rng.below(max_degree as u64 + 1) as u32;
            let mut term = PhasePoly::constant(
                n,
                BigRational::new(
                    BigInt::from(rng.below(19) as i64 - 9),
                    BigInt::from(rng.below(4) as i64 + 1),
                ),
            );
            for _ in 0..deg {
                let v = vars[rng.below(vars.len() as u64) as usize];
                term = &term * &PhasePoly::var(n, v);
            }
            poly = &poly + &term;
        }
        poly
    }
}

#[cfg(test)]
mod tests {
    use super::testutil::random_poly;
    use super::*;
    use crate::brackets::systems;
    use crate::numeric::SplitMix64;

    #[test]
    fn canonical_pair_brackets_to_one() {
        let n = 3;
        let f = PhasePoly::var(n, PhaseVar::X(1));
        let g = PhasePoly::var(n, PhaseVar::P(1));
        assert_eq!(poisson_bracket(&f, &g), PhasePoly::from_int(n, 1));
        assert_eq!(poisson_bracket(&g, &f), PhasePoly::from_int(n, -1));
        let h = PhasePoly::var(n, PhaseVar::P(2));
        assert!(poisson_bracket(&f, &h).is_zero());
    }

    #[test]
    fn aux_pair_is_canonical() {
        let n = 2;
        let q = PhasePoly::var(n, PhaseVar::AuxQ);
        let p = PhasePoly::var(n, PhaseVar::AuxP);
        assert_eq!(poisson_bracket(&q, &p), PhasePoly::from_int(n, 1));
    }

    #[test]
    fn sphere_constraint_bracket_by_hand() {
        // Oracle: differentiating by hand, {x^2 - R^2, (p, x)} = 2 sum x_i^2.
        let n = 3;
        let (phi1, phi2) = systems::sphere_constraints(n, &systems::rational_from_f64(1.0));
        let bracket = poisson_bracket(&phi1, &phi2);
        let mut expect = PhasePoly::zero(n);
        for i in 1..=n {
            let xi = PhasePoly::var(n, PhaseVar::X(i));
            expect = &expect + &(&xi * &xi).scaled(&BigRational::from_integer(2.into()));
        }
        assert_eq!(bracket, expect);
    }

    #[test]
    fn abelianized_constraints_commute_exactly() {
        for n in [2, 3, 5] {
            let (s1, s2) = systems::abelian_constraints(n, &systems::rational_from_f64(1.5));
            assert!(poisson_bracket(&s1, &s2).is_zero());
        }
    }

    #[test]
    fn antisymmetry_random_pairs() {
        let mut rng = SplitMix64::new(41);
        for _ in 0..50 {
            let f = random_poly(&mut rng, 2, 3, 4);
            let g = random_poly(&mut rng, 2, 3, 4);
            let fg = poisson_bracket(&f, &g);
            let gf = poisson_bracket(&g, &f);
            assert_eq!(fg, -&gf);
        }
    }

    #[test]
    fn jacobi_identity_random_triples() {
        let mut rng = SplitMix64::new(42);
        for _ in 0..20 {
            let f = random_poly(&mut rng, 2, 3, 3);
            let g = random_poly(&mut rng, 2, 3, 3);
            let h = random_poly(&mut rng, 2, 3, 3);
            let total = &(&poisson_bracket(&f, &poisson_bracket(&g, &h))
                + &poisson_bracket(&g, &poisson_bracket(&h, &f)))
                + &poisson_bracket(&h, &poisson_bracket(&f, &g));
            assert!(total.is_zero(), "Jacobi violated: {total}");
        }
    }

    #[test]
    fn leibniz_rule_random_triples() {
        let mut rng = SplitMix64::new(43);
        for _ in 0..20 {
            let f = random_poly(&mut rng, 2, 3, 3);
            let g = random_poly(&mut rng, 2, 3, 3);
            let h = random_poly(&mut rng, 2, 3, 3);
            let lhs = poisson_bracket(&f, &(&g * &h));
            let rhs = &(&poisson_bracket(&f, &g) * &h) + &(&g * &poisson_bracket(&f, &h));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn display_is_canonical() {
        let n = 2;
        let poly = &(&PhasePoly::var(n, PhaseVar::X(1)) * &PhasePoly::var(n, PhaseVar::X(1)))
            - &PhasePoly::from_int(n, 4);
        assert_eq!(poly.to_string(), "x1^2 - 4");
        assert_eq!(PhasePoly::zero(n).to_string(), "0");
    }

    #[test]
    fn eval_matches_hand_computation() {
        let n = 2;
        let (phi1, _) = systems::sphere_constraints(n, &systems::rational_from_f64(2.0));
        let pt = PhasePoint::new(vec![2.0, 0.0], vec![0.0, 0.5]);
        assert_eq!(phi1.eval(&pt), 0.0);
        let pt2 = PhasePoint::new(vec![1.0, 1.0], vec![0.0, 0.0]);
        assert_eq!(phi1.eval(&pt2), 1.0 + 1.0 - 4.0);
    }
}
