use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operators::hermitian;
use crate::poly::{bilinear, SparsePolynomial};
use crate::scalar::ExactScalar;
use crate::system::{Kind, VariableSystem};

/// The invariant bilinear building blocks for two complex groups `z, u` of
/// length `2n`: `A = ⟨z,ū⟩`, `C = ⟨z,u⟩_s = Σ z_ℓ u_{n+ℓ} − z_{n+ℓ} u_ℓ`,
/// their conjugates, both squared norms and `Q = AĀ + CC̄`.
#[derive(Debug, Clone)]
pub struct BilinearAtoms {
    pub a: SparsePolynomial,
    pub a_bar: SparsePolynomial,
    pub c: SparsePolynomial,
    pub c_bar: SparsePolynomial,
    pub normsq_z: SparsePolynomial,
    pub normsq_u: SparsePolynomial,
    pub quat_modsq: SparsePolynomial,
}

impl BilinearAtoms {
    pub fn new(system: &Arc<VariableSystem>, z: &str, u: &str) -> Result<Self> {
        let gz = system.group(z)?;
        let gu = system.group(u)?;
        if gz.kind != Kind::Complex || gu.kind != Kind::Complex {
            return Err(Error::KindMismatch {
                group: format!("{z}/{u}"),
                message: "quaternionic atoms need complex groups".into(),
            });
        }
        if gz.len != gu.len {
            return Err(Error::LengthMismatch(z.into(), u.into()));
        }
        if gz.len % 2 == 1 {
            return Err(Error::OddLength {
                group: z.into(),
                len: gz.len,
            });
        }
        let n = gz.len / 2;
        let a = hermitian(system, z, u)?;
        let a_bar = a.conjugate();
        let pairs = (0..n).flat_map(|l| [(gz.sym(l), gu.sym(n + l)), (gz.sym(n + l), gu.sym(l))]);
        let c = bilinear(system, pairs, |j| ExactScalar::int(if j % 2 == 0 { 1 } else { -1 }));
        let c_bar = c.conjugate();
        let normsq_z = bilinear(system, (0..gz.len).map(|j| (gz.sym(j), gz.bar(j))), |_| ExactScalar::one());
        let normsq_u = bilinear(system, (0..gu.len).map(|j| (gu.sym(j), gu.bar(j))), |_| ExactScalar::one());
        let quat_modsq = &(&a * &a_bar) + &(&c * &c_bar);
        Ok(BilinearAtoms {
            a,
            a_bar,
            c,
            c_bar,
            normsq_z,
            normsq_u,
            quat_modsq,
        })
    }
}
