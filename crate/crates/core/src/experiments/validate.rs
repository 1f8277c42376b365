use faer::Mat;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::NestedArray;
use crate::hamiltonian::{build_dense, decompose_blocks, eigenbasis_elements, lifted_modes, to_block_order, PhysicalParams};
use crate::spectral::{eigendecompose_with, spectrum_deviation, SpectralDecomposition};

/// Maximum entrywise deviations between three constructions of the same
/// Hamiltonian, in units of γ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockEquivalenceReport {
    /// Block reassembly against the dense matrix.
    pub reassembly: f64,
    /// Eigenbasis elements against the congruence `Ψᵀ H Ψ` of the dense
    /// matrix with the lifted inner modes.
    pub eigenbasis: Option<f64>,
    /// Inverse congruence `Ψ E Ψᵀ` of the eigenbasis elements against the
    /// dense matrix.
    pub congruence: Option<f64>,
    /// Eigenvalue-multiset deviation of the reassembled matrix from the
    /// dense spectrum.
    pub reassembly_spectrum: f64,
    /// Same for the eigenbasis-element matrix.
    pub eigenbasis_spectrum: Option<f64>,
    /// Why the eigenbasis checks were not run.
    pub skipped: Option<String>,
}

impl BlockEquivalenceReport {
    /// Largest residual among the checks that ran.
    pub fn max_residual(&self) -> f64 {
        [
            Some(self.reassembly),
            self.eigenbasis,
            self.congruence,
            Some(self.reassembly_spectrum),
            self.eigenbasis_spectrum,
        ]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max)
    }
}

fn max_abs_diff(a: &Mat<C64>, b: &Mat<C64>) -> f64 {
    let mut m = 0.0f64;
    for c in 0..a.ncols() {
        for r in 0..a.nrows() {
            m = m.max((a[(r, c)] - b[(r, c)]).norm());
        }
    }
    m
}

/// Checks that the block reassembly and the eigenbasis elements of a
/// two-level nesting reproduce its dense Hamiltonian and spectrum.
///
/// The eigenbasis checks need complex-normalizable inner modes; when some
/// are self-orthogonal or the inner spectrum is near-defective they are
/// skipped with a reason.
pub fn verify_block_equivalence(arr: &NestedArray, params: PhysicalParams) -> Result<BlockEquivalenceReport> {
    let blocks = decompose_blocks(arr, params)?;
    let dense = build_dense(arr.composite(), params)?;
    let g = params.gamma1d;

    let reassembled = blocks.reassemble();
    let reassembly = max_abs_diff(&reassembled, dense.matrix()) / g;
    let dense_spec = dense.eigendecompose()?;
    let re_spec = eigendecompose_with(&reassembled, params)?;
    let reassembly_spectrum = spectrum_deviation(dense_spec.eigenvalues(), re_spec.eigenvalues()) / g;

    let report = BlockEquivalenceReport {
        reassembly,
        eigenbasis: None,
        congruence: None,
        reassembly_spectrum,
        eigenbasis_spectrum: None,
        skipped: None,
    };

    let inner = build_dense(&arr.seeds()[0], params)?.eigendecompose()?;
    eigenbasis_checks(arr, params, &inner, dense.matrix(), &dense_spec, report)
}

fn eigenbasis_checks(
    arr: &NestedArray,
    params: PhysicalParams,
    inner: &SpectralDecomposition,
    dense: &Mat<C64>,
    dense_spec: &SpectralDecomposition,
    mut report: BlockEquivalenceReport,
) -> Result<BlockEquivalenceReport> {
    let g = params.gamma1d;
    if inner.near_defective() {
        report.skipped = Some("inner-array spectrum is near-defective".into());
        return Ok(report);
    }
    let elements = match eigenbasis_elements(arr, params, inner) {
        Ok(e) => e,
        Err(e) if e.is_numerical() => {
            report.skipped = Some(e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e),
    };

    let psi = lifted_modes(inner.right_vectors(), arr.seeds()[1].len());
    let h_block = to_block_order(arr, dense);
    let forward = psi.transpose() * &h_block * &psi;
    let inverse = &psi * &elements * psi.transpose();
    report.eigenbasis = Some(max_abs_diff(&elements, &forward) / g);
    report.congruence = Some(max_abs_diff(&inverse, &h_block) / g);
    let e_spec = eigendecompose_with(&elements, params)?;
    report.eigenbasis_spectrum = Some(spectrum_deviation(dense_spec.eigenvalues(), e_spec.eigenvalues()) / g);
    Ok(report)
}
