
use super::{denom_full_for, denom_minus_for, denom_plus_for, interior_momentum, s_full, Matrix2};
use crate::{ComplexCoupling, PotentialSpec, Result, C64};

/// Max-norm residuals of the analyticity relations at one `(k, γ)`.
///
/// Each residual is divided by `max(1, ‖A‖·‖B‖)` of the factors involved, so
/// that points where `|S|` is exponentially large are judged at the
/// precision the arithmetic actually carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationResiduals {
    /// `Sᵗ(k,γ) S(−k,γ) − 1` and `S(k,γ) Sᵗ(−k,γ) − 1`.
    pub reflection: f64,
    /// `S†(k,γ) S(k*,γ*) − 1`.
    pub unitarity: f64,
    /// `S*(−k*,γ*) − S(k,γ)`.
    pub conjugation: f64,
    /// `S₁₁ − S₂₂`.
    pub symmetry: f64,
}

impl RelationResiduals {
    pub fn max(&self) -> f64 {
        self.reflection
            .max(self.unitarity)
            .max(self.conjugation)
            .max(self.symmetry)
    }
}

fn full(k: C64, coupling: ComplexCoupling, spec: &PotentialSpec) -> Result<Matrix2> {
    Ok(s_full(k, coupling, spec)?
        .matrix()
        .expect("s_full returns a matrix"))
}

fn relative(diff: Matrix2, a: &Matrix2, b: &Matrix2) -> f64 {
    diff.max_abs() / (a.max_abs() * b.max_abs()).max(1.0)
}

pub fn verify_relations(
    k: C64,
    coupling: ComplexCoupling,
    spec: &PotentialSpec,
) -> Result<RelationResiduals> {
    let one = Matrix2::identity();
    let s = full(k, coupling, spec)?;
    let s_neg = full(-k, coupling, spec)?;
    let s_conj = full(k.conj(), coupling.conj(), spec)?;
    let s_mirror = full(-k.conj(), coupling.conj(), spec)?;

    let reflection = relative(s.transpose() * s_neg - one, &s, &s_neg)
        .max(relative(s * s_neg.transpose() - one, &s, &s_neg));
    let unitarity = relative(s.adjoint() * s_conj - one, &s, &s_conj);
    let conjugation = (s_mirror.conj() - s).max_abs() / s.max_abs().max(1.0);
    let symmetry = (s.get(0, 0) - s.get(1, 1)).norm();
    Ok(RelationResiduals {
        reflection,
        unitarity,
        conjugation,
        symmetry,
    })
}

/// `|D − 2 D₊ D₋|` relative to `|2kK cos 2Ka| + |(k² + K²) sin 2Ka|`, the
/// size of the two terms whose difference forms `D`.
pub fn factorisation_residual(k: C64, coupling: ComplexCoupling, spec: &PotentialSpec) -> f64 {
    let a = spec.half_width();
    let kint = interior_momentum(k, coupling, spec);
    let big = kint.value();
    let z = big * (2.0 * a);
    let terms = (k * big * 2.0 * z.cos()).norm() + ((k * k + kint.squared()) * z.sin()).norm();
    let full = denom_full_for(k, kint, a);
    let prod = denom_plus_for(k, kint, a) * denom_minus_for(k, kint, a) * 2.0;
    (full - prod).norm() / terms.max(f64::MIN_POSITIVE)
}
