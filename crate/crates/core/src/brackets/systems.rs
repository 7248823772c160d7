//! Built-in constraint systems: a particle on the sphere `|x| = R` in
//! `R^n`, and the abelianized pair on the extended phase space.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::poly::{PhasePoint, PhasePoly, PhaseVar};
use crate::numeric::SplitMix64;

/// Exact rational from a finite double (every finite f64 is a dyadic
/// rational, so radii given on the command line stay exact).
pub fn rational_from_f64(x: f64) -> BigRational {
    assert!(x.is_finite(), "radius must be finite");
    let (mantissa, exponent, sign) = {
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        if exp_bits == 0 {
            (frac, -1074i64, sign)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075, sign)
        }
    };
    let mut num = BigInt::from(mantissa) * BigInt::from(sign);
    let mut den = BigInt::one();
    if exponent >= 0 {
        num <<= exponent as u64;
    } else {
        den <<= (-exponent) as u64;
    }
    BigRational::new(num, den)
}

fn radius_squared_sum(n: usize) -> PhasePoly {
    let mut sum = PhasePoly::zero(n);
    for i in 1..=n {
        let xi = PhasePoly::var(n, PhaseVar::X(i));
        sum = &sum + &(&xi * &xi);
    }
    sum
}

/// Second-class pair for the sphere: the surface constraint
/// `sum x_i^2 - R^2` and the transversality constraint `sum p_i x_i`.
pub fn sphere_constraints(n: usize, radius: &BigRational) -> (PhasePoly, PhasePoly) {
    let r2 = radius * radius;
    let phi1 = &radius_squared_sum(n) - &PhasePoly::constant(n, r2);
    let mut phi2 = PhasePoly::zero(n);
    for i in 1..=n {
        phi2 = &phi2 + &(&PhasePoly::var(n, PhaseVar::P(i)) * &PhasePoly::var(n, PhaseVar::X(i)));
    }
    (phi1, phi2)
}

/// Abelianized pair on the extended phase space:
/// `sigma1 = phi1 + P`, `sigma2 = phi2 + 2 (sum x_i^2) Q`.
/// Their Poisson bracket vanishes identically.
pub fn abelian_constraints(n: usize, radius: &BigRational) -> (PhasePoly, PhasePoly) {
    let (phi1, phi2) = sphere_constraints(n, radius);
    let sigma1 = &phi1 + &PhasePoly::var(n, PhaseVar::AuxP);
    let x2 = radius_squared_sum(n);
    let two_x2_q = &x2.scaled(&BigRational::from_integer(2.into()))
        * &PhasePoly::var(n, PhaseVar::AuxQ);
    let sigma2 = &phi2 + &two_x2_q;
    (sigma1, sigma2)
}

/// Deterministic random point on the constraint surface: `x` uniform on
/// the sphere of the given radius, `p` with its radial component removed.
pub fn random_onshell_point(rng: &mut SplitMix64, n: usize, radius: f64) -> PhasePoint {
    loop {
        let mut x: Vec<f64> = (0..n).map(|_| rng.range(-1.0, 1.0)).collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        for v in &mut x {
            *v *= radius / norm;
        }
        let mut p: Vec<f64> = (0..n).map(|_| rng.range(-1.0, 1.0)).collect();
        let radial = p.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() / (radius * radius);
        for (pi, xi) in p.iter_mut().zip(&x) {
            *pi -= radial * xi;
        }
        return PhasePoint::new(x, p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_from_f64_is_exact() {
        let r = rational_from_f64(1.5);
        assert_eq!(r, BigRational::new(3.into(), 2.into()));
        let r = rational_from_f64(0.1);
        // 0.1 is not exactly representable; the rational matches the
        // double, not the decimal.
        use num_traits::ToPrimitive;
        assert_eq!(r.to_f64().unwrap(), 0.1);
    }

    #[test]
    fn onshell_points_satisfy_both_constraints() {
        let n = 3;
        let (phi1, phi2) = sphere_constraints(n, &rational_from_f64(2.0));
        let mut rng = SplitMix64::new(7);
        for _ in 0..25 {
            let pt = random_onshell_point(&mut rng, n, 2.0);
            assert!(phi1.eval(&pt).abs() < 1e-12);
            assert!(phi2.eval(&pt).abs() < 1e-12);
        }
    }
}
