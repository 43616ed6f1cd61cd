//! Dense Jordan-Wigner matrices, used as ground truth for everything else.
//!
//! Mode `p` of a canonical index set is tensor slot `p`; slot 0 is the
//! leftmost factor and therefore the most significant bit of a basis index.
//! Generators follow the usual string construction
//! `e_j = i Z⊗…⊗Z⊗X⊗1⊗…`, `e'_j = i Z⊗…⊗Z⊗Y⊗1⊗…`.

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::clifford::{CliffordElement, GeneratorSet};
use crate::error::{Error, Result};
use crate::scalar::{format_complex, C64, I, ONE, ZERO};
use crate::sq::{reverse_bits, IndexSet, SState};

/// Default cap on the number of modes for dense matrices (`2^6 = 64` rows).
pub const DEFAULT_MAX_M: usize = 6;

/// Environment variable that overrides [`DEFAULT_MAX_M`].
pub const MAX_M_ENV: &str = "FERMISON_MAX_M";

/// The effective dense cap: `FERMISON_MAX_M` if set to an integer, else 6.
/// Values above 20 are clamped to 20.
pub fn dense_cap() -> usize {
    std::env::var(MAX_M_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(DEFAULT_MAX_M, |m| m.min(20))
}

/// Fails with `DenseTooLarge` past the cap.
pub fn check_modes(m: usize) -> Result<()> {
    let max = dense_cap();
    if m > max {
        return Err(Error::DenseTooLarge { m, max });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator(DMatrix<C64>);

#[derive(Debug, Clone, PartialEq)]
pub struct DenseVector(DVector<C64>);

impl DenseOperator {
    pub fn from_matrix(matrix: DMatrix<C64>) -> Result<Self> {
        let dim = matrix.nrows();
        if dim != matrix.ncols() || !dim.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "operator must be square with power-of-two size, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(DenseOperator(matrix))
    }

    pub fn identity(m: usize) -> Self {
        DenseOperator(DMatrix::identity(1 << m, 1 << m))
    }

    pub fn zeros(m: usize) -> Self {
        DenseOperator(DMatrix::zeros(1 << m, 1 << m))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        DenseOperator(self.0.adjoint())
    }

    pub fn mul(&self, other: &Self) -> Self {
        DenseOperator(&self.0 * &other.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        DenseOperator(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        DenseOperator(&self.0 - &other.0)
    }

    pub fn scale(&self, c: C64) -> Self {
        DenseOperator(&self.0 * c)
    }

    /// `self·other + other·self`
    pub fn anticommutator(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self))
    }

    pub fn apply(&self, v: &DenseVector) -> DenseVector {
        DenseVector(&self.0 * &v.0)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.0 - &other.0)
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Largest magnitude among entries outside column 0.
    pub fn max_outside_first_column(&self) -> f64 {
        self.0
            .column_iter()
            .skip(1)
            .flat_map(|col| col.iter().map(|c| c.norm()).collect::<Vec<_>>())
            .fold(0.0, f64::max)
    }

    pub fn first_column(&self) -> DenseVector {
        DenseVector(self.0.column(0).into_owned())
    }

    fn kron(&self, other: &Self) -> Self {
        DenseOperator(self.0.kronecker(&other.0))
    }
}

impl fmt::Display for DenseOperator {
    /// `dim` on the first line, then one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.dim())?;
        for row in self.0.row_iter() {
            let cells: Vec<String> = row.iter().map(|c| format_complex(*c)).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl DenseVector {
    pub fn from_vec(amplitudes: Vec<C64>) -> Result<Self> {
        if !amplitudes.len().is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "vector length {} is not a power of two",
                amplitudes.len()
            )));
        }
        Ok(DenseVector(DVector::from_vec(amplitudes)))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, index: usize) -> C64 {
        self.0[index]
    }

    pub fn as_slice(&self) -> &[C64] {
        self.0.as_slice()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> C64 {
        self.0.dotc(&other.0)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.0 - &other.0)
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }
}

fn two_by_two(entries: [C64; 4]) -> DenseOperator {
    DenseOperator(DMatrix::from_row_slice(2, 2, &entries))
}

pub fn pauli_x() -> DenseOperator {
    two_by_two([ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> DenseOperator {
    two_by_two([ZERO, -I, I, ZERO])
}

pub fn pauli_z() -> DenseOperator {
    two_by_two([ONE, ZERO, ZERO, -ONE])
}

/// `a_a` on `m` modes, entry by entry from
/// `a_a |…, n_a = 1, …⟩ = (-1)^(n_0 + … + n_{a-1}) |…, n_a = 0, …⟩`.
pub fn jw_ladder_matrix(a: usize, m: usize) -> Result<DenseOperator> {
    check_modes(m)?;
    if a >= m {
        return Err(Error::InvalidArgument(format!(
            "mode {a} out of range for m = {m}"
        )));
    }
    let dim = 1usize << m;
    let bit = 1usize << (m - 1 - a);
    let higher = !(bit | (bit - 1));
    let mut out = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        if col & bit != 0 {
            let prefix = (col & higher).count_ones();
            out[(col ^ bit, col)] = if prefix.is_multiple_of(2) { ONE } else { -ONE };
        }
    }
    Ok(DenseOperator(out))
}

/// `a_a†`.
pub fn jw_creation_matrix(a: usize, m: usize) -> Result<DenseOperator> {
    Ok(jw_ladder_matrix(a, m)?.adjoint())
}

/// `e_j` or `e'_j` as a Pauli string.
pub fn jw_generator_matrix(j: usize, primed: bool, m: usize) -> Result<DenseOperator> {
    check_modes(m)?;
    if j >= m {
        return Err(Error::InvalidArgument(format!(
            "mode {j} out of range for m = {m}"
        )));
    }
    let mut out = DenseOperator(DMatrix::identity(1, 1));
    for slot in 0..m {
        let factor = match slot.cmp(&j) {
            std::cmp::Ordering::Less => pauli_z(),
            std::cmp::Ordering::Equal if primed => pauli_y(),
            std::cmp::Ordering::Equal => pauli_x(),
            std::cmp::Ordering::Greater => DenseOperator::identity(1),
        };
        out = out.kron(&factor);
    }
    Ok(out.scale(I))
}

/// Amplitudes in binary occupation order, first label most significant.
pub fn embed_state(psi: &SState) -> Result<DenseVector> {
    let m = psi.index_set().len();
    check_modes(m)?;
    let mut v = DVector::zeros(1 << m);
    for (mask, c) in psi.mask_terms() {
        v[reverse_bits(mask, m) as usize] = c;
    }
    Ok(DenseVector(v))
}

/// Inverse of [`embed_state`].
pub fn state_from_dense(v: &DenseVector, index_set: &IndexSet) -> Result<SState> {
    let m = index_set.len();
    if v.dim() != 1 << m {
        return Err(Error::ShapeMismatch {
            expected: 1 << m,
            found: v.dim(),
        });
    }
    SState::from_mask_amplitudes(
        index_set.clone(),
        v.as_slice()
            .iter()
            .enumerate()
            .map(|(k, c)| (reverse_bits(k as u64, m), *c)),
    )
}

/// Matrix of a Clifford element over the doubled index set of `index_set`.
pub fn embed_clifford(x: &CliffordElement, index_set: &IndexSet) -> Result<DenseOperator> {
    let m = index_set.len();
    check_modes(m)?;
    if *x.generators() != GeneratorSet::doubled(index_set)? {
        return Err(Error::GeneratorSetMismatch);
    }
    // generator position 2p is e_p, 2p+1 is e'_p
    let gens: Vec<DenseOperator> = (0..2 * m)
        .map(|g| jw_generator_matrix(g / 2, g % 2 == 1, m))
        .collect::<Result<_>>()?;
    let mut out = DenseOperator::zeros(m);
    for (blade, c) in x.terms() {
        let mut prod = DenseOperator::identity(m);
        for g in blade.positions() {
            prod = prod.mul(&gens[g]);
        }
        out = out.add(&prod.scale(c));
    }
    Ok(out)
}

/// Matrix exponential by scaling and squaring of the Taylor series.
pub fn expm(op: &DenseOperator) -> DenseOperator {
    let norm: f64 =
        op.0.row_iter()
            .map(|r| r.iter().map(|c| c.norm()).sum::<f64>())
            .fold(0.0, f64::max);
    let mut k = 0;
    let mut scaled = norm;
    while scaled > 0.5 {
        scaled *= 0.5;
        k += 1;
    }
    let y = &op.0 * C64::new(0.5f64.powi(k), 0.0);
    let dim = op.dim();
    let mut sum = DMatrix::<C64>::identity(dim, dim);
    let mut term = DMatrix::<C64>::identity(dim, dim);
    for n in 1..64 {
        term = (&term * &y) * C64::new(1.0 / n as f64, 0.0);
        sum += &term;
        if term.iter().map(|c| c.norm()).sum::<f64>() < 1e-18 {
            break;
        }
    }
    for _ in 0..k {
        sum = &sum * &sum;
    }
    DenseOperator(sum)
}
