//! Dyadic frequency decomposition, Besov norms, low-frequency truncation
//! and the Bony paraproduct/remainder operators on the periodic grid.
//!
//! The cutoffs follow the standard construction: a smooth radial bump chi
//! equal to 1 on |xi| <= 3/4 and vanishing for |xi| >= 4/3, and
//! phi(xi) = chi(xi/2) - chi(xi), supported in the annulus
//! 3/4 <= |xi| <= 8/3. Then chi + sum_{j>=0} phi(2^{-j} xi) telescopes to 1.

use crate::error::{Error, Result};
use crate::grid::{Field, PeriodicGrid};
use std::sync::Arc;

fn glue(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// C^inf step: 0 for t <= 0, 1 for t >= 1.
fn smooth_step(t: f64) -> f64 {
    let a = glue(t);
    let b = glue(1.0 - t);
    a / (a + b)
}

/// Low-frequency cutoff: 1 on |xi| <= 3/4, 0 for |xi| >= 4/3.
pub fn chi(xi: f64) -> f64 {
    let r = xi.abs();
    if r <= 0.75 {
        1.0
    } else if r >= 4.0 / 3.0 {
        0.0
    } else {
        1.0 - smooth_step((r - 0.75) / (4.0 / 3.0 - 0.75))
    }
}

/// Annular cutoff phi(xi) = chi(xi/2) - chi(xi).
pub fn phi(xi: f64) -> f64 {
    chi(xi / 2.0) - chi(xi)
}

/// The chi/phi cutoff family evaluated at the grid wavenumbers.
#[derive(Debug)]
pub struct DyadicPartition {
    grid: Arc<PeriodicGrid>,
    jmax: i32,
    /// cutoffs[j + 1] holds the block-j multiplier values, j = -1..=jmax.
    cutoffs: Vec<Vec<f64>>,
}

impl DyadicPartition {
    pub fn new(grid: Arc<PeriodicGrid>) -> Self {
        let jmax = grid.k_max().log2().ceil() as i32 + 1;
        let mut cutoffs = Vec::with_capacity((jmax + 2) as usize);
        cutoffs.push(grid.k().iter().map(|&k| chi(k)).collect());
        for j in 0..=jmax {
            let scale = (2.0f64).powi(-j);
            cutoffs.push(grid.k().iter().map(|&k| phi(scale * k)).collect());
        }
        Self {
            grid,
            jmax,
            cutoffs,
        }
    }

    pub fn grid(&self) -> &Arc<PeriodicGrid> {
        &self.grid
    }

    /// Largest block index representable on the grid.
    pub fn jmax(&self) -> i32 {
        self.jmax
    }

    /// max_k |1 - (chi(k) + sum_j phi(2^{-j} k))|.
    pub fn partition_defect(&self) -> f64 {
        let n = self.grid.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            let sum: f64 = self.cutoffs.iter().map(|c| c[i]).sum();
            worst = worst.max((sum - 1.0).abs());
        }
        worst
    }

    /// Range of chi^2 + sum_j phi_j^2 over the grid wavenumbers.
    pub fn squared_sum_range(&self) -> (f64, f64) {
        let n = self.grid.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let sum: f64 = self.cutoffs.iter().map(|c| c[i] * c[i]).sum();
            lo = lo.min(sum);
            hi = hi.max(sum);
        }
        (lo, hi)
    }

    fn check_grid(&self, f: &Field) -> Result<()> {
        if f.grid().len() != self.grid.len() || f.grid().period() != self.grid.period() {
            return Err(Error::GridMismatch(self.grid.len(), f.grid().len()));
        }
        Ok(())
    }

    /// Dyadic block Delta_j f, j = -1 selecting the chi block.
    pub fn block(&self, f: &Field, j: i32) -> Result<Field> {
        self.check_grid(f)?;
        if j < -1 || j > self.jmax {
            return Err(Error::BlockOutOfRange { j, jmax: self.jmax });
        }
        Ok(f.mul_spectrum_by(&self.cutoffs[(j + 1) as usize]))
    }

    /// Low-frequency truncation S_n f = sum_{j < n} Delta_j f. Computed by
    /// the telescoped cutoff chi(2^{-n} k), which the partial block sums are
    /// exactly equal to.
    pub fn low_freq_truncate(&self, f: &Field, n: u32) -> Result<Field> {
        self.check_grid(f)?;
        let scale = (2.0f64).powi(-(n as i32));
        Ok(f.map_spectrum(|k, c| c.scale(chi(scale * k))))
    }

    /// Block L^p norms weighted by 2^{js}: the rows of the Besov norm.
    pub fn weighted_block_norms(&self, f: &Field, params: &BesovParams) -> Result<Vec<(i32, f64)>> {
        self.check_grid(f)?;
        let mut rows = Vec::with_capacity((self.jmax + 2) as usize);
        for j in -1..=self.jmax {
            let b = self.block(f, j)?;
            let lp = match params.p {
                LpExponent::Infinity => b.linf_norm(),
                LpExponent::Finite(p) => b.lp_norm(p),
            };
            rows.push((j, (2.0f64).powf(params.s * j as f64) * lp));
        }
        Ok(rows)
    }

    /// Discrete Besov norm: l^r over j of 2^{js} ||Delta_j f||_{L^p}.
    pub fn besov_norm(&self, f: &Field, params: &BesovParams) -> Result<f64> {
        let rows = self.weighted_block_norms(f, params)?;
        Ok(match params.r {
            LpExponent::Infinity => rows.iter().fold(0.0f64, |m, &(_, v)| m.max(v)),
            LpExponent::Finite(r) => rows
                .iter()
                .map(|&(_, v)| v.powf(r))
                .sum::<f64>()
                .powf(1.0 / r),
        })
    }

    /// Bony paraproduct T_u v = sum_j S_{j-1} u * Delta_j v.
    pub fn paraproduct(&self, u: &Field, v: &Field) -> Result<Field> {
        self.check_grid(u)?;
        self.check_grid(v)?;
        let mut acc = Field::zeros(self.grid.clone());
        // S_{j-1} vanishes for j <= 0, so the sum starts at j = 1.
        for j in 1..=self.jmax {
            let low = self.low_freq_truncate(u, (j - 1) as u32)?;
            let blk = self.block(v, j)?;
            acc = acc.add(&low.mul_pointwise(&blk)?)?;
        }
        Ok(acc)
    }

    /// Bony remainder R(u, v) = sum_{|j-j'| <= 1} Delta_j u * Delta_{j'} v.
    pub fn remainder(&self, u: &Field, v: &Field) -> Result<Field> {
        self.check_grid(u)?;
        self.check_grid(v)?;
        crate::grid_pair_check(u, v)?;
        let blocks_u: Vec<Field> = (-1..=self.jmax)
            .map(|j| self.block(u, j))
            .collect::<Result<_>>()?;
        let blocks_v: Vec<Field> = (-1..=self.jmax)
            .map(|j| self.block(v, j))
            .collect::<Result<_>>()?;
        let mut acc = Field::zeros(self.grid.clone());
        for j in -1..=self.jmax {
            for jp in (j - 1).max(-1)..=(j + 1).min(self.jmax) {
                let prod = blocks_u[(j + 1) as usize].mul_pointwise(&blocks_v[(jp + 1) as usize])?;
                acc = acc.add(&prod)?;
            }
        }
        Ok(acc)
    }
}

/// Lebesgue exponent in [1, inf].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LpExponent {
    Finite(f64),
    Infinity,
}

impl LpExponent {
    pub fn parse(s: &str) -> Option<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Some(Self::Infinity);
        }
        let v: f64 = t.parse().ok()?;
        if v >= 1.0 {
            Some(Self::Finite(v))
        } else {
            None
        }
    }
}

impl std::fmt::Display for LpExponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

/// Regularity/integrability/summation indices of a Besov norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesovParams {
    pub s: f64,
    pub p: LpExponent,
    pub r: LpExponent,
}

impl BesovParams {
    pub fn new(s: f64, p: LpExponent, r: LpExponent) -> Self {
        Self { s, p, r }
    }

    /// "s,p,r" with `inf` allowed for p and r.
    pub fn parse(text: &str) -> Option<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 3 {
            return None;
        }
        let s: f64 = parts[0].trim().parse().ok()?;
        Some(Self {
            s,
            p: LpExponent::parse(parts[1])?,
            r: LpExponent::parse(parts[2])?,
        })
    }
}

impl std::fmt::Display for BesovParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{},{}", self.s, self.p, self.r)
    }
}
