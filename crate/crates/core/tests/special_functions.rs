use hk_core::scalar::{rat, rat_int};
use hk_core::specfun::{
    dim_bihomogeneous, dim_complex, dim_homogeneous, dim_spherical, dim_symplectic_hs, dim_symplectic_r, gegenbauer, jacobi,
    lambda_real, pochhammer, UnivariateExact,
};
use hk_core::ExactScalar;
use num_bigint::BigInt;
use num_rational::BigRational;

fn q(r: BigRational) -> ExactScalar {
    ExactScalar::real(r)
}

fn poly(label: &str, coeffs: &[(i64, i64)]) -> UnivariateExact {
    UnivariateExact::from_rationals(label, coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
}

fn params() -> Vec<BigRational> {
    vec![rat(0, 1), rat(1, 2), rat(1, 1), rat(3, 2), rat(2, 1), rat(7, 3)]
}

#[test]
fn pochhammer_examples() {
    assert_eq!(pochhammer(&rat_int(3), 2), rat_int(12));
    assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
    assert_eq!(pochhammer(&rat(5, 2), 0), rat_int(1));
}

#[test]
fn gegenbauer_low_degrees() {
    let mu = rat(3, 4);
    assert_eq!(gegenbauer(1, &mu).unwrap(), poly("t", &[(0, 1), (3, 2)]));
    assert_eq!(gegenbauer(2, &rat(1, 2)).unwrap(), poly("t", &[(-1, 2), (0, 1), (3, 2)]));
    assert!(gegenbauer(2, &rat_int(0)).is_err());
}

#[test]
fn gegenbauer_three_term_recurrence() {
    let t = poly("t", &[(0, 1), (1, 1)]);
    for mu in params().into_iter().filter(|m| *m > rat_int(0)) {
        for k in 2..=8u32 {
            let kk = rat_int(k as i64);
            let lhs = gegenbauer(k, &mu).unwrap().scale(&q(kk.clone()));
            let a = t.mul(&gegenbauer(k - 1, &mu).unwrap()).scale(&q(rat_int(2) * (&kk + &mu - rat_int(1))));
            let b = gegenbauer(k - 2, &mu).unwrap().scale(&q(&kk + rat_int(2) * &mu - rat_int(2)));
            assert_eq!(lhs, a.sub(&b), "k = {k}, mu = {mu}");
        }
    }
}

#[test]
fn jacobi_degree_one_series() {
    for alpha in params() {
        for beta in params() {
            // (α+1) + (α+β+2)(x−1)/2
            let c1 = (&alpha + &beta + rat_int(2)) / rat_int(2);
            let c0 = &alpha + rat_int(1) - &c1;
            let expected = UnivariateExact::from_rationals("x", vec![c0, c1]);
            assert_eq!(jacobi(1, &alpha, &beta).unwrap(), expected);
        }
    }
    assert_eq!(jacobi(1, &rat_int(0), &rat_int(0)).unwrap(), poly("x", &[(0, 1), (1, 1)]));
}

#[test]
fn jacobi_three_term_recurrence() {
    let x = poly("x", &[(0, 1), (1, 1)]);
    for alpha in params() {
        for beta in params() {
            let s = &alpha + &beta;
            for n in 2..=8u32 {
                let nn = rat_int(n as i64);
                let two_n_s = rat_int(2) * &nn + &s;
                let lhs = jacobi(n, &alpha, &beta)
                    .unwrap()
                    .scale(&q(rat_int(2) * &nn * (&nn + &s) * (&two_n_s - rat_int(2))));
                let linear = x
                    .scale(&q(&two_n_s * (&two_n_s - rat_int(2))))
                    .add(&UnivariateExact::constant("x", q(&alpha * &alpha - &beta * &beta)));
                let a = linear.mul(&jacobi(n - 1, &alpha, &beta).unwrap()).scale(&q(&two_n_s - rat_int(1)));
                let b = jacobi(n - 2, &alpha, &beta).unwrap().scale(&q(
                    rat_int(2) * (&nn + &alpha - rat_int(1)) * (&nn + &beta - rat_int(1)) * &two_n_s,
                ));
                assert_eq!(lhs, a.sub(&b), "n = {n}, alpha = {alpha}, beta = {beta}");
            }
        }
    }
}

#[test]
fn jacobi_reflection() {
    for alpha in params() {
        for beta in params() {
            for nu in 0..=6u32 {
                let lhs = jacobi(nu, &alpha, &beta).unwrap().reflect();
                let sign = if nu % 2 == 0 { 1 } else { -1 };
                let rhs = jacobi(nu, &beta, &alpha).unwrap().scale(&ExactScalar::int(sign));
                assert_eq!(lhs, rhs);
            }
        }
    }
    assert!(jacobi(2, &rat_int(-1), &rat_int(0)).is_err());
}

#[test]
fn dimension_examples() {
    assert_eq!(dim_spherical(3, 2), BigInt::from(5));
    assert_eq!(dim_spherical(4, 3), BigInt::from(16));
    assert_eq!(dim_complex(2, 1, 1), BigInt::from(3));
    // H_2(ℝ⁴) splits into bidegrees (2,0), (1,1), (0,2) of ℂ²
    assert_eq!(dim_complex(2, 2, 0) + dim_complex(2, 1, 1) + dim_complex(2, 0, 2), dim_spherical(4, 2));
}

#[test]
fn fischer_dimension_counts() {
    for m in 3..=6 {
        for k in 0..=8 {
            let sum: BigInt = (0..=k / 2).map(|j| dim_spherical(m, k - 2 * j)).sum();
            assert_eq!(sum, dim_homogeneous(m, k), "m = {m}, k = {k}");
        }
    }
    for n in 2..=4 {
        for p in 0..=4 {
            for qq in 0..=4 {
                let sum: BigInt = (0..=p.min(qq)).map(|j| dim_complex(n, p - j, qq - j)).sum();
                assert_eq!(sum, dim_bihomogeneous(n, p, qq));
            }
        }
    }
    for n in 1..=3 {
        for p in 0..=3 {
            for qq in p..=4 {
                let r: BigInt = (0..=p).map(|j| dim_symplectic_r(n, p - j, qq + j)).sum();
                assert_eq!(r, dim_bihomogeneous(2 * n, p, qq));
                let hs: BigInt = (0..=p).map(|j| dim_symplectic_hs(n, p - j, qq - j)).sum();
                assert_eq!(hs, dim_symplectic_r(n, p, qq));
            }
        }
    }
}

#[test]
fn lambda_is_a_half_integer_binomial() {
    // C(k+μ, μ) with μ = m/2 − 1; for even m it is an ordinary binomial
    assert_eq!(lambda_real(4, 3), rat_int(4));
    assert_eq!(lambda_real(6, 2), rat_int(6));
    assert_eq!(lambda_real(3, 1), rat(3, 2));
}
