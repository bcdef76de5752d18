//! Least-squares fits of `ln |B_j|` against simple growth models. These are
//! diagnostics for telling growth regimes apart, not exact results.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::metrics::GrowthCurve;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthModel {
    /// `ln V = a + b ln j`; `b` is the polynomial degree.
    Poly,
    /// `ln V = a + b ln j + c (ln j)^2`; `c > 0` means superpolynomial.
    QuadraticLog,
    /// `ln V = a + r j`; `r` is the exponential rate.
    Exponential,
}

impl GrowthModel {
    pub fn name(self) -> &'static str {
        match self {
            GrowthModel::Poly => "poly",
            GrowthModel::QuadraticLog => "quadratic_log",
            GrowthModel::Exponential => "exponential",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "poly" => Some(GrowthModel::Poly),
            "quadratic_log" => Some(GrowthModel::QuadraticLog),
            "exponential" => Some(GrowthModel::Exponential),
            _ => None,
        }
    }

    fn first_radius(self) -> u64 {
        match self {
            GrowthModel::Exponential => 1,
            _ => 3,
        }
    }

    fn min_points(self) -> usize {
        match self {
            GrowthModel::Exponential => 4,
            _ => 8,
        }
    }

    fn regressors(self, j: f64) -> Vec<f64> {
        let lj = libm::log(j);
        match self {
            GrowthModel::Poly => alloc::vec![1.0, lj],
            GrowthModel::QuadraticLog => alloc::vec![1.0, lj, lj * lj],
            GrowthModel::Exponential => alloc::vec![1.0, j],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthFit {
    pub model: GrowthModel,
    /// Intercept first, then the model's slope terms in order.
    pub coefficients: Vec<f64>,
    /// Sum of squared residuals in log space.
    pub residual: f64,
    pub points: usize,
}

impl GrowthFit {
    /// The coefficient that characterizes the regime: degree, curvature or
    /// rate.
    pub fn leading(&self) -> f64 {
        *self.coefficients.last().unwrap()
    }
}

pub fn fit_growth(curve: &GrowthCurve, model: GrowthModel) -> Result<GrowthFit> {
    let rows: Vec<(Vec<f64>, f64)> = curve
        .radii
        .iter()
        .zip(&curve.volumes)
        .filter(|(&j, _)| j >= model.first_radius())
        .map(|(&j, &v)| (model.regressors(j as f64), libm::log(v as f64)))
        .collect();
    if rows.len() < model.min_points() {
        return Err(Error::InsufficientData { needed: model.min_points(), got: rows.len() });
    }
    let k = rows[0].0.len();
    // normal equations (X^T X) beta = X^T y
    let mut a = alloc::vec![alloc::vec![0.0f64; k + 1]; k];
    for (x, y) in &rows {
        for r in 0..k {
            for c in 0..k {
                a[r][c] += x[r] * x[c];
            }
            a[r][k] += x[r] * y;
        }
    }
    let beta = solve(a).ok_or(Error::InsufficientData { needed: k, got: rows.len() })?;
    let residual = rows
        .iter()
        .map(|(x, y)| {
            let fitted: f64 = x.iter().zip(&beta).map(|(xi, bi)| xi * bi).sum();
            (y - fitted) * (y - fitted)
        })
        .sum();
    Ok(GrowthFit { model, coefficients: beta, residual, points: rows.len() })
}

// Gauss-Jordan with partial pivoting on an augmented k x (k+1) matrix.
fn solve(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let k = a.len();
    for col in 0..k {
        let pivot = (col..k).max_by(|&i, &j| libm::fabs(a[i][col]).total_cmp(&libm::fabs(a[j][col])))?;
        if libm::fabs(a[pivot][col]) < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        let pivot_row = a[col].clone();
        for (row, r) in a.iter_mut().enumerate() {
            if row != col {
                let factor = r[col] / pivot_row[col];
                for (x, p) in r[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= factor * p;
                }
            }
        }
    }
    Some((0..k).map(|i| a[i][k] / a[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BigInt;

    fn curve(volumes: Vec<u64>) -> GrowthCurve {
        let n = volumes.len() as u64;
        GrowthCurve {
            center: BigInt::from(0),
            radii: (0..n).collect(),
            extents: (0..n).map(|_| (BigInt::from(0), BigInt::from(0))).collect(),
            volumes,
            spec_name: "synthetic".into(),
            truncation: 0,
        }
    }

    #[test]
    fn exact_power_law() {
        let c = curve((0..40u64).map(|j| (j * j * j).max(1)).collect());
        let f = fit_growth(&c, GrowthModel::Poly).unwrap();
        assert!(libm::fabs(f.leading() - 3.0) < 1e-9);
        assert!(f.residual < 1e-12);
    }

    #[test]
    fn exact_exponential() {
        let c = curve((0..20u32).map(|j| 3u64.pow(j)).collect());
        let f = fit_growth(&c, GrowthModel::Exponential).unwrap();
        assert!(libm::fabs(f.leading() - libm::log(3.0)) < 1e-9);
    }

    #[test]
    fn quadratic_log_curvature() {
        // V = 1000 exp(0.5 (ln j)^2)
        let volume = |j: u64| {
            let lj = libm::log(j as f64);
            libm::round(1000.0 * libm::exp(0.5 * lj * lj)) as u64
        };
        let c = curve((0..60u64).map(|j| if j == 0 { 1 } else { volume(j) }).collect());
        let f = fit_growth(&c, GrowthModel::QuadraticLog).unwrap();
        assert!(libm::fabs(f.leading() - 0.5) < 1e-3);
    }

    #[test]
    fn too_few_points() {
        let c = curve((0..10).map(|j| 2 * j + 1).collect());
        assert_eq!(
            fit_growth(&c, GrowthModel::Poly),
            Err(Error::InsufficientData { needed: 8, got: 7 })
        );
        assert!(fit_growth(&curve(alloc::vec![1, 3, 5, 7]), GrowthModel::Exponential).is_err());
    }

    #[test]
    fn names_round_trip() {
        for m in [GrowthModel::Poly, GrowthModel::QuadraticLog, GrowthModel::Exponential] {
            assert_eq!(GrowthModel::from_name(m.name()), Some(m));
        }
    }
}
