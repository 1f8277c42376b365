//! Single-excitation effective Hamiltonian of atoms coupled to a 1D waveguide.
//!
//! In the single-excitation sector the Hamiltonian is the `N×N` matrix
//!
//! ```text
//! H[j][k] = ω₀·δ_jk − iγ·exp(i|θ_j − θ_k|)
//! ```
//!
//! over atom basis states, with phases `θ = k_z·x`. It is complex symmetric
//! and non-Hermitian; eigenvalues satisfy `Im ω ≤ 0`.

use faer::Mat;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{NestedArray, PositionSet};
use crate::spectral::SpectralDecomposition;

const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PhysicalParams {
    /// Bare transition frequency; energies are reported relative to it.
    pub omega0: f64,
    /// Single-atom emission rate into the waveguide; the energy unit.
    pub gamma1d: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        PhysicalParams { omega0: 0.0, gamma1d: 1.0 }
    }
}

impl PhysicalParams {
    pub fn new(omega0: f64, gamma1d: f64) -> Result<Self> {
        let p = PhysicalParams { omega0, gamma1d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.omega0.is_finite() {
            return Err(Error::invalid("omega0 must be finite"));
        }
        if !(self.gamma1d.is_finite() && self.gamma1d > 0.0) {
            return Err(Error::invalid(format!("gamma1d must be > 0, got {}", self.gamma1d)));
        }
        Ok(())
    }

    /// Waveguide-mediated coupling `−iγ·exp(i·phase)`.
    #[inline]
    pub fn coupling(&self, phase: f64) -> C64 {
        -I * self.gamma1d * C64::cis(phase)
    }

    /// The common diagonal entry `ω₀ − iγ`.
    pub fn diagonal(&self) -> C64 {
        C64::new(self.omega0, -self.gamma1d)
    }
}

#[derive(Debug, Clone)]
pub struct EffectiveHamiltonian {
    matrix: Mat<C64>,
    params: PhysicalParams,
    positions: PositionSet,
}

impl EffectiveHamiltonian {
    pub fn matrix(&self) -> &Mat<C64> {
        &self.matrix
    }

    pub fn params(&self) -> PhysicalParams {
        self.params
    }

    pub fn positions(&self) -> &PositionSet {
        &self.positions
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Dense effective Hamiltonian of `geometry`. Each off-diagonal pair is
/// computed once and written to both `(j,k)` and `(k,j)`.
pub fn build_dense(geometry: &PositionSet, params: PhysicalParams) -> Result<EffectiveHamiltonian> {
    params.validate()?;
    if geometry.is_empty() {
        return Err(Error::invalid("cannot build a Hamiltonian for zero atoms"));
    }
    let x = geometry.positions();
    let n = x.len();
    let mut matrix = Mat::<C64>::zeros(n, n);
    for j in 0..n {
        matrix[(j, j)] = params.diagonal();
        for k in (j + 1)..n {
            let h = params.coupling((x[j] - x[k]).abs());
            matrix[(j, k)] = h;
            matrix[(k, j)] = h;
        }
    }
    Ok(EffectiveHamiltonian {
        matrix,
        params,
        positions: geometry.clone(),
    })
}

/// Block structure of a two-level nested array.
///
/// With `x_{n,m} = a_n + b_m` the Hamiltonian splits into identical copies
/// of the inner-array block on the diagonal in `m`, the outer-array block
/// acting on atoms with the same `n` in different copies, and a cross term
/// coupling different atoms (`n ≠ n′`) of different copies (`m ≠ m′`).
/// The `n = n′, m = m′` diagonal is carried by the inner block only.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    /// `−iγ·exp(i|a_n − a_n′|)`, `N_A × N_A`.
    pub intra_a: Mat<C64>,
    /// `−iγ·exp(i|b_m − b_m′|)`, `N_B × N_B`; only its `m ≠ m′` entries
    /// enter the reassembly.
    pub intra_b: Mat<C64>,
    cross: Vec<Mat<C64>>,
    omega0: f64,
    atom_of_block: Vec<usize>,
}

impl BlockDecomposition {
    pub fn n_a(&self) -> usize {
        self.intra_a.nrows()
    }

    pub fn n_b(&self) -> usize {
        self.intra_b.nrows()
    }

    /// Cross block between copies `m` (rows) and `m′` (columns), `N_A × N_A`,
    /// with zero diagonal. `None` for `m == m′`.
    pub fn cross(&self, m: usize, m_prime: usize) -> Option<&Mat<C64>> {
        (m != m_prime).then(|| &self.cross[m * self.n_b() + m_prime])
    }

    /// Matrix in block order (`k = n + N_A·m`).
    pub fn reassemble_block_order(&self) -> Mat<C64> {
        let (na, nb) = (self.n_a(), self.n_b());
        Mat::from_fn(na * nb, na * nb, |r, c| {
            let (n, m) = (r % na, r / na);
            let (np, mp) = (c % na, c / na);
            let mut h = C64::new(0.0, 0.0);
            if r == c {
                h += self.omega0;
            }
            if m == mp {
                h += self.intra_a[(n, np)];
            } else {
                if n == np {
                    h += self.intra_b[(m, mp)];
                }
                h += self.cross[m * nb + mp][(n, np)];
            }
            h
        })
    }

    /// Matrix in the composite's (sorted) atom order, directly comparable
    /// with [`build_dense`] of the composite.
    pub fn reassemble(&self) -> Mat<C64> {
        let blocks = self.reassemble_block_order();
        let n = blocks.nrows();
        let mut out = Mat::<C64>::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out[(self.atom_of_block[r], self.atom_of_block[c])] = blocks[(r, c)];
            }
        }
        out
    }
}

fn require_two_levels(arr: &NestedArray) -> Result<()> {
    if arr.depth() != 2 {
        return Err(Error::invalid(format!(
            "block analytics need exactly two seed levels, got {}",
            arr.depth()
        )));
    }
    Ok(())
}

fn coupling_matrix(x: &[f64], params: PhysicalParams) -> Mat<C64> {
    let n = x.len();
    let mut out = Mat::<C64>::zeros(n, n);
    for j in 0..n {
        out[(j, j)] = params.coupling(0.0);
        for k in (j + 1)..n {
            let h = params.coupling((x[j] - x[k]).abs());
            out[(j, k)] = h;
            out[(k, j)] = h;
        }
    }
    out
}

pub fn decompose_blocks(arr: &NestedArray, params: PhysicalParams) -> Result<BlockDecomposition> {
    params.validate()?;
    require_two_levels(arr)?;
    let a = arr.seeds()[0].positions();
    let b = arr.seeds()[1].positions();
    let (na, nb) = (a.len(), b.len());

    let mut cross = Vec::with_capacity(nb * nb);
    for m in 0..nb {
        for mp in 0..nb {
            let block = if m == mp {
                Mat::zeros(na, na)
            } else {
                Mat::from_fn(na, na, |n, np| {
                    if n == np {
                        C64::new(0.0, 0.0)
                    } else {
                        params.coupling(((a[n] + b[m]) - (a[np] + b[mp])).abs())
                    }
                })
            };
            cross.push(block);
        }
    }

    Ok(BlockDecomposition {
        intra_a: coupling_matrix(a, params),
        intra_b: coupling_matrix(b, params),
        cross,
        omega0: params.omega0,
        atom_of_block: (0..arr.len()).map(|k| arr.atom_of_block(k)).collect(),
    })
}

/// Permutes a composite-order matrix of a nested array into block order.
pub fn to_block_order(arr: &NestedArray, matrix: &Mat<C64>) -> Mat<C64> {
    let n = arr.len();
    Mat::from_fn(n, n, |r, c| matrix[(arr.atom_of_block(r), arr.atom_of_block(c))])
}

/// `Ψ ⊗ I_B` in block order: column `(μ, m)` holds mode `μ` of the inner
/// array placed on copy `m`.
pub fn lifted_modes(modes: &Mat<C64>, n_b: usize) -> Mat<C64> {
    let na = modes.nrows();
    Mat::from_fn(na * n_b, na * n_b, |r, c| {
        let (n, m) = (r % na, r / na);
        let (mu, mp) = (c % na, c / na);
        if m == mp {
            modes[(n, mu)]
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Tolerance on the complex orthonormality of the inner-array modes.
pub const MODE_ORTHO_TOL: f64 = 1e-8;

/// Matrix elements `⟨ψ_{ν,m′}|H|ψ_{μ,m}⟩` in the basis of inner-array modes
/// placed on each copy, evaluated term by term from the eigenbasis formula
///
/// ```text
/// ω_ν δ_νμ δ_mm′ − iγ [δ_νμ e^{i|b_m − b_m′|}
///                      + Σ_{n≠n′} ψ_{νn′} e^{i|x_{n,m} − x_{n′,m′}|} ψ_{μn}] (1 − δ_mm′)
/// ```
///
/// Rows are `(ν, m′)` and columns `(μ, m)`, both in block order. The mode
/// products are unconjugated: left eigenvectors of a complex-symmetric
/// matrix are transposes of the right ones.
pub fn eigenbasis_elements(
    arr: &NestedArray,
    params: PhysicalParams,
    seed_modes: &SpectralDecomposition,
) -> Result<Mat<C64>> {
    params.validate()?;
    require_two_levels(arr)?;
    let a = arr.seeds()[0].positions();
    let b = arr.seeds()[1].positions();
    let (na, nb) = (a.len(), b.len());
    if seed_modes.len() != na {
        return Err(Error::invalid(format!(
            "seed decomposition has {} modes, inner array has {na} atoms",
            seed_modes.len()
        )));
    }
    if !seed_modes.quasi_null().is_empty() {
        return Err(Error::InvalidState(format!(
            "inner-array modes {:?} are self-orthogonal and cannot be complex-normalized",
            seed_modes.quasi_null()
        )));
    }
    if seed_modes.ortho_residual() > MODE_ORTHO_TOL {
        return Err(Error::InvalidState(format!(
            "inner-array modes are not complex-orthonormal (residual {:.3e})",
            seed_modes.ortho_residual()
        )));
    }
    let psi = seed_modes.right_vectors();
    let omega = seed_modes.eigenvalues();

    Ok(Mat::from_fn(na * nb, na * nb, |r, c| {
        let (nu, mp) = (r % na, r / na);
        let (mu, m) = (c % na, c / na);
        if m == mp {
            return if nu == mu { omega[nu] } else { C64::new(0.0, 0.0) };
        }
        let mut bracket = C64::new(0.0, 0.0);
        if nu == mu {
            bracket += C64::cis((b[m] - b[mp]).abs());
        }
        for n in 0..na {
            for np in 0..na {
                if n != np {
                    let phase = ((a[n] + b[m]) - (a[np] + b[mp])).abs();
                    bracket += psi[(np, nu)] * C64::cis(phase) * psi[(n, mu)];
                }
            }
        }
        -I * params.gamma1d * bracket
    }))
}

/// Closed-form eigenpairs of a dimer with phase separation `phi`.
#[derive(Debug, Clone, Copy)]
pub struct DimerEigs {
    /// `ω₀ − iγ(1 + e^{iφ})`, symmetric mode.
    pub omega_plus: C64,
    /// `ω₀ − iγ(1 − e^{iφ})`, antisymmetric mode.
    pub omega_minus: C64,
    pub v_plus: [C64; 2],
    pub v_minus: [C64; 2],
}

/// For `0 < φ < π/2` the symmetric mode decays faster than the
/// antisymmetric one; beyond `π/2` the roles swap.
pub fn dimer_analytic_eigs(phi: f64, params: PhysicalParams) -> DimerEigs {
    let e = C64::cis(phi);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    DimerEigs {
        omega_plus: params.omega0 - I * params.gamma1d * (1.0 + e),
        omega_minus: params.omega0 - I * params.gamma1d * (1.0 - e),
        v_plus: [C64::new(h, 0.0), C64::new(h, 0.0)],
        v_minus: [C64::new(h, 0.0), C64::new(-h, 0.0)],
    }
}

/// Inter-copy block of a nested dimer expressed in the dimer eigenbasis
/// `(+, −)`, in the closed form `iγ e^{iφ_B} [[2cos²(φ_A/2), i sin φ_A],
/// [−i sin φ_A, 2sin²(φ_A/2)]]` and its expansion for small `φ_A`.
///
/// This closed form equals `−Mᵀ`, where `M = VᵀH^{(AB)}V` is the
/// unconjugated eigenbasis congruence of the site-basis block obtained from
/// the dense Hamiltonian (copy 0 rows, copy 1 columns). Both the prefactor
/// sign and the placement of the `±i sin φ_A` entries differ from that
/// congruence; the functions below keep the closed form as stated.
#[derive(Debug, Clone)]
pub struct DimerCrossBlock {
    pub exact: Mat<C64>,
    pub small_angle: Mat<C64>,
}

pub fn dimer_cross_block(phi_a: f64, phi_b: f64, params: PhysicalParams) -> Result<DimerCrossBlock> {
    params.validate()?;
    if !(phi_a > 0.0 && phi_b > phi_a && phi_b.is_finite()) {
        return Err(Error::invalid(format!(
            "closed-form cross block requires phi_b > phi_a > 0, got phi_a = {phi_a}, phi_b = {phi_b}"
        )));
    }
    let pre = I * params.gamma1d * C64::cis(phi_b);
    let (s, c2, s2) = (
        phi_a.sin(),
        2.0 * (phi_a / 2.0).cos().powi(2),
        2.0 * (phi_a / 2.0).sin().powi(2),
    );
    let exact = [[C64::from(c2), I * s], [-I * s, C64::from(s2)]];
    let q = phi_a * phi_a / 2.0;
    let small = [[C64::from(2.0 - q), I * phi_a], [-I * phi_a, C64::from(q)]];
    Ok(DimerCrossBlock {
        exact: Mat::from_fn(2, 2, |r, c| pre * exact[r][c]),
        small_angle: Mat::from_fn(2, 2, |r, c| pre * small[r][c]),
    })
}
