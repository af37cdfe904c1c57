use crate::error::{check_dim, Error, Result};
use crate::linalg::{unit_vec, Mat, Subspace, SymBilinearForm};
use crate::Scalar;

/// Lie algebra with basis `e_0..e_{n-1}` and `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra<F> {
    labels: Vec<String>,
    sc: Vec<F>,
}

impl<F: Scalar> LieAlgebra<F> {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            labels: default_labels(dim),
            sc: vec![F::zero(); dim * dim * dim],
        }
    }

    /// Builds from records `(i, j, k, c)` meaning `[e_i, e_j]` has `c` in the
    /// `e_k` slot. The antisymmetric completion is implied; a record that
    /// contradicts an earlier one (or sets `[e_i, e_i]`) is rejected.
    pub fn from_records(labels: Vec<String>, records: &[(usize, usize, usize, F)]) -> Result<Self> {
        let n = labels.len();
        let mut sc = vec![F::zero(); n * n * n];
        let mut seen = vec![false; n * n * n];
        for (i, j, k, c) in records {
            let (i, j, k) = (*i, *j, *k);
            if i >= n || j >= n || k >= n {
                return Err(Error::InconsistentBrackets(format!(
                    "index ({i}, {j}, {k}) out of range for dimension {n}"
                )));
            }
            if i == j {
                if !c.is_zero() {
                    return Err(Error::InconsistentBrackets(format!(
                        "[e{i}, e{i}] must vanish"
                    )));
                }
                continue;
            }
            let a = (i * n + j) * n + k;
            let b = (j * n + i) * n + k;
            if seen[a] && sc[a] != *c {
                return Err(Error::InconsistentBrackets(format!(
                    "conflicting values for [e{i}, e{j}] in slot {k}"
                )));
            }
            seen[a] = true;
            seen[b] = true;
            sc[a] = c.clone();
            sc[b] = -c.clone();
        }
        Ok(LieAlgebra { labels, sc })
    }

    /// Builds from `bracket(i, j)` on basis vectors, evaluated for `i < j`.
    pub fn from_bracket_fn(labels: Vec<String>, mut bracket: impl FnMut(usize, usize) -> Vec<F>) -> Self {
        let n = labels.len();
        let mut sc = vec![F::zero(); n * n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = bracket(i, j);
                assert_eq!(v.len(), n, "bracket vector length");
                for (k, c) in v.into_iter().enumerate() {
                    sc[(j * n + i) * n + k] = -c.clone();
                    sc[(i * n + j) * n + k] = c;
                }
            }
        }
        LieAlgebra { labels, sc }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim(), "label count");
        self.labels = labels;
        self
    }

    pub fn sc(&self, i: usize, j: usize, k: usize) -> &F {
        let n = self.dim();
        &self.sc[(i * n + j) * n + k]
    }

    pub fn is_abelian(&self) -> bool {
        self.sc.iter().all(|c| c.is_zero())
    }

    /// Nonzero structure constants with `i < j`, in lexicographic order.
    pub fn records(&self) -> Vec<(usize, usize, usize, F)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = self.sc(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<F> {
        let n = self.dim();
        self.sc[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
    }

    pub fn try_bracket(&self, x: &[F], y: &[F]) -> Result<Vec<F>> {
        check_dim("bracket argument", self.dim(), x.len())?;
        check_dim("bracket argument", self.dim(), y.len())?;
        Ok(self.bracket(x, y))
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (i, xi) in x.iter().enumerate().take(n) {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate().take(n) {
                if yj.is_zero() {
                    continue;
                }
                let w = xi.clone() * yj.clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.sc(i, j, k);
                    if !c.is_zero() {
                        *o = o.clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// `ad(x)`, with `ad(x) y = [x, y]`.
    pub fn adjoint(&self, x: &[F]) -> Mat<F> {
        let n = self.dim();
        Mat::from_fn(n, n, |k, j| {
            (0..n).fold(F::zero(), |acc, i| acc + x[i].clone() * self.sc(i, j, k).clone())
        })
    }

    pub fn ad_basis(&self, i: usize) -> Mat<F> {
        self.adjoint(&unit_vec(self.dim(), i))
    }

    /// Coadjoint action on the dual, `-ad(x)^T`.
    pub fn coadjoint(&self, x: &[F]) -> Mat<F> {
        -&self.adjoint(x).transpose()
    }

    /// First basis triple `i < j < k` on which the Jacobi identity fails.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit_vec(n, i), unit_vec(n, j), unit_vec(n, k));
                    let a = self.bracket(&self.bracket(&ei, &ej), &ek);
                    let b = self.bracket(&self.bracket(&ej, &ek), &ei);
                    let c = self.bracket(&self.bracket(&ek, &ei), &ej);
                    let s: Vec<F> = (0..n)
                        .map(|m| a[m].clone() + b[m].clone() + c[m].clone())
                        .collect();
                    if !crate::linalg::is_zero_vec(&s) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn check_jacobi(&self) -> Result<()> {
        match self.jacobi_failure() {
            None => Ok(()),
            Some((i, j, k)) => Err(Error::Jacobi(i, j, k)),
        }
    }

    /// First pair of basis vectors of `S` whose bracket leaves `S`.
    pub fn subalgebra_failure(&self, s: &Subspace<F>) -> Option<(usize, usize)> {
        let b = s.basis_vectors();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !s.contains(&self.bracket(&b[i], &b[j])) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First `(algebra basis index, S basis index)` with `[e_i, s_j]` outside `S`.
    pub fn ideal_failure(&self, s: &Subspace<F>) -> Option<(usize, usize)> {
        let b = s.basis_vectors();
        for i in 0..self.dim() {
            for (j, v) in b.iter().enumerate() {
                if !s.contains(&self.bracket(&unit_vec(self.dim(), i), v)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `[S, S] ⊆ S`, or `[L, S] ⊆ S` when `ideal` is set.
    pub fn is_subalgebra(&self, s: &Subspace<F>, ideal: bool) -> bool {
        s.ambient() == self.dim()
            && if ideal {
                self.ideal_failure(s).is_none()
            } else {
                self.subalgebra_failure(s).is_none()
            }
    }

    /// `K(x, y) = tr(ad x ad y)`.
    pub fn killing_form(&self) -> SymBilinearForm<F> {
        let n = self.dim();
        let ads: Vec<Mat<F>> = (0..n).map(|i| self.ad_basis(i)).collect();
        let g = Mat::from_fn(n, n, |i, j| (&ads[i] * &ads[j]).trace());
        SymBilinearForm::new(g).expect("trace pairing is symmetric")
    }

    /// Block-diagonal structure constants on `L1 ⊕ L2`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Self::from_bracket_fn(labels, |i, j| {
            let mut v = vec![F::zero(); n + m];
            if j < n {
                v[..n].clone_from_slice(&self.bracket_basis(i, j));
            } else if i >= n {
                v[n..].clone_from_slice(&other.bracket_basis(i - n, j - n));
            }
            v
        })
    }

    /// Structure constants in the basis given by the columns of `t`.
    pub fn change_basis(&self, t: &Mat<F>) -> Result<Self> {
        check_dim("change of basis", self.dim(), t.rows())?;
        let t_inv = t.inverse()?;
        let cols = t.to_cols();
        Ok(Self::from_bracket_fn(default_labels(self.dim()), |i, j| {
            t_inv.mul_vec(&self.bracket(&cols[i], &cols[j]))
        }))
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from_i64;
    use crate::Q;

    fn sl2() -> LieAlgebra<Q> {
        let q = Q::from_i64;
        LieAlgebra::from_records(
            vec!["e".into(), "f".into(), "H".into()],
            &[(0, 1, 2, q(1)), (0, 2, 0, q(-2)), (1, 2, 1, q(2))],
        )
        .unwrap()
    }

    #[test]
    fn sl2_brackets() {
        let l = sl2();
        assert_eq!(l.bracket(&vec_from_i64(&[1, 0, 0]), &vec_from_i64(&[0, 1, 0])), vec_from_i64(&[0, 0, 1]));
        let x = vec_from_i64(&[1, 2, 3]);
        assert_eq!(l.bracket(&x, &x), vec_from_i64(&[0, 0, 0]));
        assert!(l.check_jacobi().is_ok());
        assert_eq!(l.ad_basis(2), Mat::diag(&vec_from_i64(&[2, -2, 0])));
        assert_eq!(l.coadjoint(&vec_from_i64(&[0, 0, 1])), Mat::diag(&vec_from_i64(&[-2, 2, 0])));
    }

    #[test]
    fn jacobi_failure_detected() {
        let q = Q::from_i64;
        let l = LieAlgebra::from_records(
            default_labels(3),
            &[(0, 1, 2, q(1)), (0, 2, 1, q(1)), (1, 2, 1, q(1))],
        )
        .unwrap();
        assert_eq!(l.check_jacobi(), Err(Error::Jacobi(0, 1, 2)));
    }

    #[test]
    fn rejects_inconsistent_records() {
        let q = Q::from_i64;
        assert!(LieAlgebra::from_records(default_labels(2), &[(0, 1, 0, q(1)), (1, 0, 0, q(1))]).is_err());
        assert!(LieAlgebra::from_records(default_labels(2), &[(0, 1, 0, q(1)), (1, 0, 0, q(-1))]).is_ok());
        assert!(LieAlgebra::from_records(default_labels(2), &[(0, 0, 1, q(1))]).is_err());
    }

    #[test]
    fn subalgebras() {
        let l = sl2();
        let borel = Subspace::span_i64(3, &[&[1, 0, 0], &[0, 0, 1]]).unwrap();
        assert!(l.is_subalgebra(&borel, false));
        assert!(!l.is_subalgebra(&borel, true));
        let ef = Subspace::span_i64(3, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert!(!l.is_subalgebra(&ef, false));
        assert!(l.is_subalgebra(&Subspace::zero(3), true));
        assert!(l.is_subalgebra(&Subspace::full(3), true));
    }

    #[test]
    fn killing_form_of_sl2() {
        let k = sl2().killing_form();
        assert_eq!(k.gram(), &Mat::from_i64(&[&[0, 4, 0], &[4, 0, 0], &[0, 0, 8]]));
    }

    #[test]
    fn direct_sum_cross_brackets_vanish() {
        let s = sl2().direct_sum(&sl2());
        assert_eq!(s.dim(), 6);
        assert!(s.check_jacobi().is_ok());
        assert!(crate::linalg::is_zero_vec(&s.bracket_basis(0, 4)));
        assert_eq!(s.bracket_basis(3, 4), vec_from_i64(&[0, 0, 0, 0, 0, 1]));
        assert!(LieAlgebra::<Q>::abelian(2).direct_sum(&LieAlgebra::abelian(3)).is_abelian());
    }
}
