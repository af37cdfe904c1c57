use super::data::{ClassificationData, KSample};
use crate::error::{Error, Result};
use crate::linalg::{coisotropy_witness, fmt_vec, Mat, Subspace};
use crate::manin::{build_double, DiracManinTriple};
use crate::Scalar;

/// A `K`-invariant coisotropic subalgebra `c` with `c ∩ h = k`; `K` is
/// given by automorphisms of `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RobinsonDatum<F> {
    pub c: Subspace<F>,
    pub k: Subspace<F>,
    pub k_samples: Vec<Mat<F>>,
}

pub fn check_robinson<F: Scalar>(datum: &RobinsonDatum<F>, t: &DiracManinTriple<F>) -> Result<()> {
    let c = &datum.c;
    if c.ambient() != t.dim() || datum.k.ambient() != t.dim() {
        return Err(Error::DimensionMismatch {
            context: "Robinson datum ambient",
            expected: t.dim(),
            found: c.ambient().min(datum.k.ambient()),
        });
    }
    if let Some((i, j)) = t.d.subalgebra_failure(c) {
        return Err(Error::NotSubalgebra(i, j));
    }
    if let Some(mu) = coisotropy_witness(c, &t.beta)? {
        return Err(Error::NotCoisotropic(format!("annihilator vector {}", fmt_vec(&mu))));
    }
    let meet = c.intersect(&t.h)?;
    if meet != datum.k {
        return Err(Error::Invalid(format!("c ∩ h = {meet} but k = {}", datum.k)));
    }
    for (i, a) in datum.k_samples.iter().enumerate() {
        if a.rows() != t.dim() || a.cols() != t.dim() {
            return Err(Error::Invalid(format!("sample {i} has the wrong size")));
        }
        if c.image(a)? != *c {
            return Err(Error::Invalid(format!("sample {i} does not preserve c")));
        }
    }
    Ok(())
}

/// `n = C / C⊥` for `C = c ⋉ d*_beta`, with `u` and `k` the images of `c`
/// and `k`, and `f_n` induced by the target map.
pub fn robinson_build<F: Scalar>(datum: &RobinsonDatum<F>, t: &DiracManinTriple<F>) -> Result<ClassificationData<F>> {
    check_robinson(datum, t)?;
    let double = build_double(&t.d, &t.beta)?;
    let big_c = Subspace::preimage(&double.s_map, &datum.c)?;
    let red = crate::manin::reduce_coisotropic(&double.dtilde, &big_c)?;
    let n_dim = red.quotient.dim();
    if n_dim != 2 * datum.c.dim() {
        return Err(Error::Invalid(format!("dim n = {n_dim}, expected 2 dim c = {}", 2 * datum.c.dim())));
    }
    let f_n = double.t_map.try_mul(red.lift())?;
    let into_n = red.project().try_mul(&double.embed_d())?;
    let u = datum.c.image(&into_n)?;
    let k = datum.k.image(&into_n)?;
    let samples = datum
        .k_samples
        .iter()
        .map(|a| {
            let on_dtilde = Mat::block_diag(a, &a.inverse()?.transpose());
            Ok(KSample {
                on_n: red.project().try_mul(&on_dtilde)?.try_mul(red.lift())?,
                on_d: a.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationData {
        n: red.quotient.algebra.clone(),
        gamma_n: red.quotient.metric.clone(),
        u,
        k,
        f_n,
        samples,
    })
}

/// Inverse direction on `n`: `c = f_n(u)`, `k = c ∩ h`.
pub fn robinson_datum_of<F: Scalar>(data: &ClassificationData<F>, t: &DiracManinTriple<F>) -> Result<RobinsonDatum<F>> {
    let c = data.image_of_u()?;
    Ok(RobinsonDatum {
        k: c.intersect(&t.h)?,
        c,
        k_samples: data.samples.iter().map(|s| s.on_d.clone()).collect(),
    })
}

