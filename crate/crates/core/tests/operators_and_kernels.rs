use std::sync::Arc;

use hk_core::harmonics::{
    decompose, kernel, proj_harmonic_complex, proj_harmonic_real, proj_symplectic, random_poly, standard_system, Flavor,
    KernelKind, RandomFlavor, SympOrientation,
};
use hk_core::operators::{LaplacianVariant, Twist};
use hk_core::scalar::rat;
use hk_core::{parse_poly, ExactScalar, KernelParams, OperatorContext, SparsePolynomial, VariableSystem};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

fn complex(len: usize) -> Arc<VariableSystem> {
    VariableSystem::builder().complex("z", len).complex("u", len).build().unwrap()
}

fn real(m: usize) -> Arc<VariableSystem> {
    VariableSystem::builder().real("x", m).real("y", m).build().unwrap()
}

fn p(sys: &Arc<VariableSystem>, text: &str) -> SparsePolynomial {
    parse_poly(sys, text).unwrap()
}

#[test]
fn real_laplacian_on_a_complex_group() {
    let sys = complex(1);
    let ctx = OperatorContext::new(&sys, "z").unwrap();
    let lap = ctx.laplacian(&p(&sys, "z[1]*zbar[1]"), LaplacianVariant::Real).unwrap();
    assert_eq!(lap, p(&sys, "4"));
}

#[test]
fn twisted_operators_on_the_bilinear_atoms() {
    let sys = complex(2);
    let ctx = OperatorContext::new(&sys, "z").unwrap();
    let a_bar = p(&sys, "zbar[1]*u[1]+zbar[2]*u[2]");
    let c = p(&sys, "z[1]*u[2]-z[2]*u[1]");
    let a = p(&sys, "z[1]*ubar[1]+z[2]*ubar[2]");
    assert_eq!(ctx.twist(&a_bar, Twist::E).unwrap(), c);
    assert_eq!(ctx.twist(&c, Twist::Edag).unwrap(), a_bar);
    assert!(ctx.twist(&a, Twist::E).unwrap().is_zero());
    assert!(ctx.twist(&a_bar, Twist::Edag).unwrap().is_zero());
}

#[test]
fn fischer_adjointness_example() {
    let sys = VariableSystem::builder().real("x", 2).build().unwrap();
    let ctx = OperatorContext::new(&sys, "x").unwrap();
    let r2 = ctx.normsq();
    let q = p(&sys, "x[1]^2+x[2]^2");
    let lhs = ctx.fischer_real(&r2, &q).unwrap();
    let rhs = ctx.fischer_real(&SparsePolynomial::one(&sys), &ctx.delta(&q)).unwrap();
    assert_eq!(lhs, ExactScalar::int(4));
    assert_eq!(rhs, ExactScalar::int(4));
}

#[test]
fn sphere_moments() {
    let sys = VariableSystem::builder().real("x", 3).build().unwrap();
    let ctx = OperatorContext::new(&sys, "x").unwrap();
    assert_eq!(ctx.sphere_mean(&p(&sys, "x[1]^4")), p(&sys, "1/5"));
    assert_eq!(ctx.sphere_mean(&p(&sys, "x[1]^2*x[2]^2")), p(&sys, "1/15"));
    assert!(ctx.sphere_mean(&p(&sys, "x[1]^3")).is_zero());
}

#[test]
fn real_proportionality_example() {
    let sys = VariableSystem::builder().real("x", 3).build().unwrap();
    let ctx = OperatorContext::new(&sys, "x").unwrap();
    let x1 = p(&sys, "x[1]");
    let sphere = ctx.spherical_inner(&x1, &x1);
    assert_eq!(sphere, p(&sys, "1/3"));
    assert_eq!(ctx.fischer_real(&x1, &x1).unwrap(), ExactScalar::one());
}

#[test]
fn fischer_products_are_hermitian_and_positive() {
    for seed in 0..20u64 {
        let params = KernelParams::Complex { n: 2, p: 2, q: 1 };
        let a = random_poly(seed, &params, RandomFlavor::Homogeneous).unwrap();
        let b = random_poly(seed + 100, &params, RandomFlavor::Homogeneous).unwrap();
        let ctx = OperatorContext::new(a.system(), "z").unwrap();
        let ab = ctx.fischer_complex(&a, &b).unwrap();
        let ba = ctx.fischer_complex(&b, &a).unwrap();
        assert_eq!(ab, ba.conj());
        if !a.is_zero() {
            assert!(ctx.fischer_complex(&a, &a).unwrap().is_positive_real());
        }
    }
}

#[test]
fn harmonic_projection_examples() {
    let sys = VariableSystem::builder().real("x", 3).build().unwrap();
    let ctx = OperatorContext::new(&sys, "x").unwrap();
    let projected = proj_harmonic_real(&ctx, &p(&sys, "x[1]^2"), 0).unwrap();
    assert_eq!(projected, p(&sys, "2/3*x[1]^2-1/3*x[2]^2-1/3*x[3]^2"));
    assert!(ctx.delta(&projected).is_zero());
    assert!(proj_harmonic_real(&ctx, &ctx.normsq(), 0).unwrap().is_zero());

    let parts = decompose(&ctx, &p(&sys, "x[1]^2"), Flavor::Real).unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!(parts[0].component, projected);
    assert_eq!(parts[1].component, p(&sys, "1/3*x[1]^2+1/3*x[2]^2+1/3*x[3]^2"));

    let csys = VariableSystem::builder().complex("z", 2).build().unwrap();
    let cctx = OperatorContext::new(&csys, "z").unwrap();
    let projected = proj_harmonic_complex(&cctx, &p(&csys, "z[1]*zbar[1]"), 0).unwrap();
    assert_eq!(projected, p(&csys, "1/2*z[1]*zbar[1]-1/2*z[2]*zbar[2]"));
}

#[test]
fn symplectic_projection_example() {
    let sys = complex(2);
    let ctx = OperatorContext::new(&sys, "z").unwrap();
    let a = p(&sys, "z[1]*ubar[1]+z[2]*ubar[2]");
    let c = p(&sys, "z[1]*u[2]-z[2]*u[1]");
    let a_bar = a.conjugate();
    let c_bar = c.conjugate();
    let got = proj_symplectic(&ctx, &(&a * &a_bar), SympOrientation::Edag).unwrap();
    let expected = (&(&a * &a_bar) + &(&c * &c_bar)).scale(&ExactScalar::ratio(1, 2));
    assert_eq!(got, expected);
    assert!(ctx.twist(&got, Twist::Edag).unwrap().is_zero());

    let zs = kernel(&KernelParams::Symplectic { n: 1, p: 1, q: 1 }, KernelKind::ZS).unwrap();
    let sys = zs.system().clone();
    let a = p(&sys, "z[1]*ubar[1]+z[2]*ubar[2]");
    let c = p(&sys, "z[1]*u[2]-z[2]*u[1]");
    let expected = (&(&a * &a.conjugate()) + &(&c * &c.conjugate())).scale(&ExactScalar::ratio(1, 2));
    assert_eq!(zs, expected);

    let parts = decompose(&ctx, &a_bar, Flavor::Symplectic).unwrap();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[0].component, a_bar);
}

#[test]
fn first_kernels() {
    let k1 = kernel(&KernelParams::Real { m: 3, k: 1 }, KernelKind::K).unwrap();
    assert_eq!(k1.to_string(), "3*x[1]*y[1]+3*x[2]*y[2]+3*x[3]*y[3]");
    let k0 = kernel(&KernelParams::Real { m: 4, k: 0 }, KernelKind::K).unwrap();
    assert_eq!(k0.to_string(), "1");
    assert!(kernel(&KernelParams::Real { m: 2, k: 1 }, KernelKind::K).is_err());
}

/// `R = (I − A)(I + A)^{-1}` for skew `A` is a rational orthogonal matrix.
fn cayley(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let m = a.len();
    let id = |i: usize, j: usize| if i == j { BigRational::one() } else { BigRational::zero() };
    // Gauss-Jordan on [I + A | I]
    let mut aug: Vec<Vec<BigRational>> = (0..m)
        .map(|i| (0..2 * m).map(|j| if j < m { id(i, j) + &a[i][j] } else { id(i, j - m) }).collect())
        .collect();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !aug[r][col].is_zero()).unwrap();
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                let row = aug[col].clone();
                for (x, y) in aug[r].iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
    }
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..m).map(|k| (id(i, k) - &a[i][k]) * &aug[k][j + m]).sum())
                .collect()
        })
        .collect()
}

fn rotate(f: &SparsePolynomial, r: &[Vec<BigRational>]) -> SparsePolynomial {
    let sys = f.system();
    let mut map = FxHashMap::default();
    for group in ["x", "y"] {
        let g = sys.group(group).unwrap();
        for i in 0..g.len {
            let image = SparsePolynomial::from_terms(
                sys,
                (0..g.len).map(|j| (hk_core::Monomial::var(g.sym(j)), ExactScalar::real(r[i][j].clone()))),
            );
            map.insert(g.sym(i), image);
        }
    }
    f.substitute(&map)
}

#[test]
fn kernels_are_rotation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in 3..=4usize {
        for _ in 0..3 {
            let mut a = vec![vec![BigRational::zero(); m]; m];
            for i in 0..m {
                for j in i + 1..m {
                    let v = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
                    a[j][i] = -v.clone();
                    a[i][j] = v;
                }
            }
            let r = cayley(&a);
            for i in 0..m {
                for j in 0..m {
                    let dot: BigRational = (0..m).map(|k| &r[k][i] * &r[k][j]).sum();
                    assert_eq!(dot, if i == j { BigRational::one() } else { BigRational::zero() });
                }
            }
            for k in 0..=3 {
                let kk = kernel(&KernelParams::Real { m: m as u32, k }, KernelKind::K).unwrap();
                let sys = real(m);
                let kk = parse_poly(&sys, &kk.restrict_zero("s").unwrap().restrict_zero("t").unwrap().to_string()).unwrap();
                assert_eq!(rotate(&kk, &r), kk, "m = {m}, k = {k}");
            }
        }
    }
}

#[test]
fn complex_kernel_is_hermitian() {
    for (n, pp, qq) in [(2, 1, 0), (2, 2, 1), (3, 1, 2)] {
        let params = KernelParams::Complex { n, p: pp, q: qq };
        let k = kernel(&params, KernelKind::K).unwrap();
        assert_eq!(k.conjugate(), k.swap_groups("z", "u").unwrap());
        let z = kernel(&params, KernelKind::Z).unwrap();
        assert_eq!(z.conjugate(), z.swap_groups("z", "u").unwrap());
        assert_eq!(standard_system(&params).unwrap().group("z").unwrap().len, n as usize);
    }
}
