//! Hamiltonians of the laser-driven trapped ion over the truncated bare basis.
//!
//! In the frame rotating with the laser and after the optical RWA,
//!
//! ```text
//! H = omega_t (a^dag a + 1/2) - (Delta/2) sigma_z + (omega_r/2) [D(eta) sigma_+ + h.c.]
//! ```
//!
//! with `D(eta) = exp(i eta (a + a^dag))`. All matrices here are in internal
//! units (`hbar = omega_t = 1`).

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::basis::{BareIndex, BasisSpec, PhysicalParams, Scaled};
use crate::error::{Error, Result};

const HERMITICITY_TOL: f64 = 1e-12;

/// `<n| exp(i eta (a + a^dag)) |m>` from the associated-Laguerre closed form
///
/// `e^{-eta^2/2} (i eta)^{|n-m|} sqrt(min! / max!) L_min^{|n-m|}(eta^2)`.
///
/// The factorial ratio is accumulated in log space, so large `n`, `m` do not
/// overflow. The value does not depend on any basis truncation.
pub fn displacement_element(n: usize, m: usize, eta: f64) -> Complex64 {
    let (lo, hi) = if n <= m { (n, m) } else { (m, n) };
    let k = hi - lo;
    if eta == 0.0 {
        return if k == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
    }
    let x = eta * eta;
    let log_ratio: f64 = ((lo + 1)..=hi).map(|j| (j as f64).ln()).sum();
    let magnitude = (k as f64 * eta.abs().ln() - 0.5 * x - 0.5 * log_ratio).exp();
    let sign = if eta < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
    let value = sign * magnitude * laguerre(lo, k as f64, x);
    // i^k
    match k % 4 {
        0 => Complex64::new(value, 0.0),
        1 => Complex64::new(0.0, value),
        2 => Complex64::new(-value, 0.0),
        _ => Complex64::new(0.0, -value),
    }
}

/// Generalised Laguerre polynomial `L_n^{(a)}(x)` by the three-term recurrence.
pub(crate) fn laguerre(n: usize, a: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + a - x) * cur - (jf + a) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Matrix of [`displacement_element`] over levels `0..levels`.
pub fn displacement_matrix(levels: usize, eta: f64) -> DMatrix<Complex64> {
    DMatrix::from_fn(levels, levels, |n, m| displacement_element(n, m, eta))
}

/// Dense Hermitian matrix indexed in [`BareIndex`] flat order.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: DMatrix<Complex64>,
}

impl HermitianOperator {
    /// Wraps a square matrix, rejecting it if `max |H - H^dag| >= 1e-12`.
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Domain(format!(
                "operator must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let op = HermitianOperator { matrix };
        let defect = op.hermiticity_defect();
        if defect >= HERMITICITY_TOL {
            return Err(Error::Domain(format!("operator is not Hermitian (defect {defect:e})")));
        }
        Ok(op)
    }

    pub fn zeros(dimension: usize) -> Self {
        HermitianOperator { matrix: DMatrix::zeros(dimension, dimension) }
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn element(&self, row: BareIndex, col: BareIndex) -> Complex64 {
        self.matrix[(row.flat(), col.flat())]
    }

    /// `max |H - H^dag|` over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dimension();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest entry magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &HermitianOperator) -> f64 {
        (&self.matrix - &other.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Sorted eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> =
            SymmetricEigen::new(self.matrix.clone()).eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }
}

impl std::ops::Add for &HermitianOperator {
    type Output = HermitianOperator;

    fn add(self, rhs: &HermitianOperator) -> HermitianOperator {
        HermitianOperator { matrix: &self.matrix + &rhs.matrix }
    }
}

/// Which light-ion coupling goes into the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HamiltonianKind {
    /// The exact displacement operator `exp(i eta (a + a^dag))`.
    Full,
    /// The expansion to first order in `eta`.
    LambDicke,
}

/// Diagonal energies of the bare states in units of `omega_t`:
/// `eps_{g,n} = n + 1/2 + Delta/2` and `eps_{e,n} = n + 1/2 - Delta/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BareLevels {
    ground: Vec<f64>,
    excited: Vec<f64>,
}

impl BareLevels {
    pub fn ground(&self, n: usize) -> f64 {
        self.ground[n]
    }

    pub fn excited(&self, n: usize) -> f64 {
        self.excited[n]
    }

    pub fn energy(&self, index: BareIndex) -> f64 {
        match index.internal {
            crate::basis::Internal::Ground => self.ground[index.n],
            crate::basis::Internal::Excited => self.excited[index.n],
        }
    }

    pub fn levels(&self) -> usize {
        self.ground.len()
    }
}

pub fn bare_levels(params: &PhysicalParams, basis: &BasisSpec) -> BareLevels {
    bare_levels_scaled(params.scaled().delta, basis.levels())
}

fn bare_levels_scaled(delta: f64, levels: usize) -> BareLevels {
    let ground = (0..levels).map(|n| n as f64 + 0.5 + 0.5 * delta).collect();
    let excited = (0..levels).map(|n| n as f64 + 0.5 - 0.5 * delta).collect();
    BareLevels { ground, excited }
}

/// Assembles the diagonal bare part plus `(omega_r/2) [C sigma_+ + h.c.]`
/// where `coupling(n, m) = C_{nm} = <n|C|m>` acts on the motion.
fn assemble(
    s: Scaled,
    basis: &BasisSpec,
    with_bare: bool,
    coupling: impl Fn(usize, usize) -> Complex64,
) -> HermitianOperator {
    let levels = basis.levels();
    let mut h = DMatrix::<Complex64>::zeros(basis.dimension(), basis.dimension());
    if with_bare {
        let bare = bare_levels_scaled(s.delta, levels);
        for n in 0..levels {
            h[(2 * n, 2 * n)] = bare.ground(n).into();
            h[(2 * n + 1, 2 * n + 1)] = bare.excited(n).into();
        }
    }
    let half = 0.5 * s.omega_r;
    if half != 0.0 {
        for n in 0..levels {
            for m in 0..levels {
                let c = coupling(n, m) * half;
                if c.norm() == 0.0 {
                    continue;
                }
                // <e,n|H|g,m> and its mirror
                h[(2 * n + 1, 2 * m)] += c;
                h[(2 * m, 2 * n + 1)] += c.conj();
            }
        }
    }
    HermitianOperator { matrix: h }
}

/// First-order Lamb-Dicke coupling `i eta <n|(a + a^dag)|m>`.
fn linear_coupling(eta: f64, n: usize, m: usize) -> Complex64 {
    if n + 1 == m {
        Complex64::new(0.0, eta * (m as f64).sqrt())
    } else if m + 1 == n {
        Complex64::new(0.0, eta * (n as f64).sqrt())
    } else {
        Complex64::new(0.0, 0.0)
    }
}

fn identity_coupling(n: usize, m: usize) -> Complex64 {
    if n == m {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

pub fn full_hamiltonian(params: &PhysicalParams, basis: &BasisSpec) -> HermitianOperator {
    full_scaled(params.scaled(), basis)
}

pub(crate) fn full_scaled(s: Scaled, basis: &BasisSpec) -> HermitianOperator {
    let d = displacement_matrix(basis.levels(), s.eta);
    assemble(s, basis, true, |n, m| d[(n, m)])
}

/// Hamiltonian with the displacement operator expanded to first order,
/// `1 + i eta (a + a^dag)`; it couples only neighbouring Fock levels.
pub fn ld_hamiltonian(params: &PhysicalParams, basis: &BasisSpec) -> HermitianOperator {
    ld_scaled(params.scaled(), basis)
}

pub(crate) fn ld_scaled(s: Scaled, basis: &BasisSpec) -> HermitianOperator {
    assemble(s, basis, true, |n, m| identity_coupling(n, m) + linear_coupling(s.eta, n, m))
}

pub(crate) fn build_scaled(kind: HamiltonianKind, s: Scaled, basis: &BasisSpec) -> HermitianOperator {
    match kind {
        HamiltonianKind::Full => full_scaled(s, basis),
        HamiltonianKind::LambDicke => ld_scaled(s, basis),
    }
}

pub fn hamiltonian(kind: HamiltonianKind, params: &PhysicalParams, basis: &BasisSpec) -> HermitianOperator {
    build_scaled(kind, params.scaled(), basis)
}

/// `H_B = H(omega_r = 0)`, diagonal in the bare basis.
pub fn bare_hamiltonian(params: &PhysicalParams, basis: &BasisSpec) -> HermitianOperator {
    let s = params.scaled();
    assemble(Scaled { omega_r: 0.0, ..s }, basis, true, identity_coupling)
}

/// Splits the Lamb-Dicke Hamiltonian into the semidressed part (laser
/// coupling within each Fock level) and the `eta`-linear coupling `V`
/// between neighbouring levels: `H_LD = H_SD + V`.
pub fn semidressed_split(
    params: &PhysicalParams,
    basis: &BasisSpec,
) -> (HermitianOperator, HermitianOperator) {
    let s = params.scaled();
    let h_sd = assemble(s, basis, true, identity_coupling);
    let v = assemble(s, basis, false, |n, m| linear_coupling(s.eta, n, m));
    (h_sd, v)
}

/// `dH/dDelta` in internal units: `+1/2` on ground states, `-1/2` on excited states.
pub(crate) fn detuning_slope_diagonal(dimension: usize) -> Vec<f64> {
    (0..dimension).map(|i| if i % 2 == 0 { 0.5 } else { -0.5 }).collect()
}

/// Sorted eigenvalues of the full Hamiltonian (units of `omega_t`) for each
/// detuning in `delta_grid` (rad/s).
pub fn energy_levels(params: &PhysicalParams, basis: &BasisSpec, delta_grid: &[f64]) -> Vec<Vec<f64>> {
    delta_grid
        .par_iter()
        .map(|&d| full_hamiltonian(&params.with_delta(d), basis).eigenvalues())
        .collect()
}

/// Like [`energy_levels`], but each output column follows one dressed
/// level along the grid: between neighbouring grid points eigenvectors are
/// matched greedily by largest overlap, so level tracks pass through
/// (near-)crossings instead of swapping labels.
pub fn energy_level_tracks(
    params: &PhysicalParams,
    basis: &BasisSpec,
    delta_grid: &[f64],
) -> Vec<Vec<f64>> {
    let decomps: Vec<(Vec<f64>, DMatrix<Complex64>)> = delta_grid
        .par_iter()
        .map(|&d| {
            let eig = SymmetricEigen::new(full_hamiltonian(&params.with_delta(d), basis).matrix.clone());
            let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
            let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
            let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
                eig.eigenvectors[(r, order[c])]
            });
            (values, vectors)
        })
        .collect();

    let mut tracks = Vec::with_capacity(decomps.len());
    let Some((first_values, first_vectors)) = decomps.first() else {
        return tracks;
    };
    let dim = first_values.len();
    tracks.push(first_values.clone());
    let mut prev_vectors = first_vectors.clone();
    for (values, vectors) in decomps.iter().skip(1) {
        let overlaps = prev_vectors.adjoint() * vectors;
        let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                pairs.push((overlaps[(j, k)].norm_sqr(), j, k));
            }
        }
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut assigned = vec![usize::MAX; dim];
        let mut taken = vec![false; dim];
        for (_, j, k) in pairs {
            if assigned[j] == usize::MAX && !taken[k] {
                assigned[j] = k;
                taken[k] = true;
            }
        }
        tracks.push(assigned.iter().map(|&k| values[k]).collect());
        prev_vectors = DMatrix::from_fn(dim, dim, |r, c| vectors[(r, assigned[c])]);
    }
    tracks
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::DVector;
    use proptest::prelude::*;

    /// `exp(i eta (a + a^dag))` by diagonalising the real symmetric matrix
    /// `a + a^dag` in a truncated Fock space.
    fn expm_displacement(levels: usize, eta: f64) -> DMatrix<Complex64> {
        let x = DMatrix::<f64>::from_fn(levels, levels, |i, j| {
            if i + 1 == j {
                (j as f64).sqrt()
            } else if j + 1 == i {
                (i as f64).sqrt()
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(x);
        let phases = DVector::from_iterator(
            levels,
            eig.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, eta * l)),
        );
        let v = eig.eigenvectors.map(|r| Complex64::new(r, 0.0));
        &v * DMatrix::from_diagonal(&phases) * v.adjoint()
    }

    fn params(eta: f64, wr: f64, delta: f64) -> PhysicalParams {
        PhysicalParams::new(eta, 1.0, wr, delta).unwrap()
    }

    #[test]
    fn displacement_at_zero_eta_is_identity() {
        for n in 0..10 {
            for m in 0..10 {
                let expected = if n == m { 1.0 } else { 0.0 };
                assert_eq!(displacement_element(n, m, 0.0), Complex64::new(expected, 0.0));
            }
        }
    }

    #[test]
    fn displacement_low_elements_match_expm() {
        for &eta in &[0.01, 0.1, 0.25, 0.5] {
            let oracle = expm_displacement(30, eta);
            let d00 = displacement_element(0, 0, eta);
            let d01 = displacement_element(0, 1, eta);
            assert!((d00 - oracle[(0, 0)]).norm() < 1e-12);
            assert!((d01 - oracle[(0, 1)]).norm() < 1e-12);
            assert_relative_eq!(d00.re, (-0.5 * eta * eta).exp(), max_relative = 1e-14);
            assert_relative_eq!(d01.im, eta * (-0.5 * eta * eta).exp(), max_relative = 1e-14);
            assert_eq!(d01.re, 0.0);
        }
    }

    #[test]
    fn displacement_matches_expm_up_to_level_20() {
        for &eta in &[0.05, 0.2, 0.5] {
            let oracle = expm_displacement(64, eta);
            for n in 0..=20 {
                for m in 0..=20 {
                    let diff = (displacement_element(n, m, eta) - oracle[(n, m)]).norm();
                    assert!(diff < 1e-10, "eta={eta} n={n} m={m} diff={diff:e}");
                }
            }
        }
    }

    #[test]
    fn displacement_interior_block_is_unitary() {
        let levels = 40;
        let buffer = 15;
        let d = displacement_matrix(levels, 0.5);
        let dd = d.adjoint() * &d;
        for i in 0..levels - buffer {
            for j in 0..levels - buffer {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((dd[(i, j)] - target).norm() < 1e-8, "({i},{j})");
            }
        }
    }

    #[test]
    fn displacement_large_levels_do_not_overflow() {
        let z = displacement_element(300, 310, 0.1);
        assert!(z.norm().is_finite());
        assert!(z.norm() < 1.0);
    }

    #[test]
    fn zero_rabi_frequency_gives_bare_levels() {
        let p = params(0.3, 0.0, 0.17);
        let b = BasisSpec::with_default_truncation(2);
        let h = full_hamiltonian(&p, &b);
        let bare = bare_levels(&p, &b);
        for i in 0..b.dimension() {
            for j in 0..b.dimension() {
                let expected = if i == j { bare.energy(BareIndex::from_flat(i)) } else { 0.0 };
                assert!((h.matrix()[(i, j)] - expected).norm() < 1e-15);
            }
        }
        for n in 0..b.levels() {
            assert_relative_eq!(bare.ground(n) - bare.excited(n), 0.17, max_relative = 1e-12);
        }
    }

    #[test]
    fn zero_eta_decouples_fock_levels() {
        let p = params(0.0, 0.2, 0.05);
        let b = BasisSpec::with_default_truncation(1);
        let h = full_hamiltonian(&p, &b);
        for i in 0..b.dimension() {
            for j in 0..b.dimension() {
                let (bi, bj) = (BareIndex::from_flat(i), BareIndex::from_flat(j));
                let z = h.matrix()[(i, j)];
                if bi.n != bj.n {
                    assert_eq!(z.norm(), 0.0);
                } else if i != j {
                    assert!((z - Complex64::new(0.1, 0.0)).norm() < 1e-15);
                }
            }
        }
        assert_eq!(ld_hamiltonian(&p, &b), h);
    }

    #[test]
    fn ld_element_reads_off_linear_term() {
        let p = params(0.07, 0.3, 0.0);
        let b = BasisSpec::with_default_truncation(3);
        let h = ld_hamiltonian(&p, &b);
        for n in 0..b.n_max() {
            let z = h.element(BareIndex::excited(n + 1), BareIndex::ground(n));
            let expected = Complex64::new(0.0, 0.07 * 0.3 * ((n + 1) as f64).sqrt() / 2.0);
            assert!((z - expected).norm() < 1e-16);
        }
    }

    #[test]
    fn ld_deviation_is_quadratic_in_eta() {
        let b = BasisSpec::with_default_truncation(2);
        let dev = |eta: f64| {
            let p = params(eta, 0.1, 0.01);
            full_hamiltonian(&p, &b).max_abs_diff(&ld_hamiltonian(&p, &b))
        };
        let ratio = dev(0.04) / dev(0.02);
        assert!((ratio - 4.0).abs() < 0.2, "ratio = {ratio}");
    }

    #[test]
    fn semidressed_split_sums_to_ld() {
        let p = params(0.05, 0.2, -0.03);
        let b = BasisSpec::with_default_truncation(2);
        let (h_sd, v) = semidressed_split(&p, &b);
        let sum = &h_sd + &v;
        assert!(sum.max_abs_diff(&ld_hamiltonian(&p, &b)) < 1e-14);

        let (_, v0) = semidressed_split(&params(0.0, 0.2, -0.03), &b);
        assert!(v0.matrix().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn coupling_has_no_diagonal_in_semidressed_basis() {
        let (wr, delta) = (0.2_f64, -0.03_f64);
        let p = params(0.05, wr, delta);
        let b = BasisSpec::with_default_truncation(2);
        let (_, v) = semidressed_split(&p, &b);
        let omega = wr.hypot(delta);
        for n in 0..b.levels() {
            for sign in [1.0, -1.0] {
                let c = (delta + sign * omega) / wr;
                let norm = (c * c + 1.0).sqrt();
                let mut state = DVector::<Complex64>::zeros(b.dimension());
                state[2 * n] = (c / norm).into();
                state[2 * n + 1] = (1.0 / norm).into();
                let diag = state.dotc(&(v.matrix() * &state));
                assert!(diag.norm() < 1e-16);
            }
        }
    }

    #[test]
    fn dressed_pair_splits_by_rabi_frequency() {
        let p = params(0.0, 0.3, 0.0);
        let b = BasisSpec::with_default_truncation(0);
        let levels = energy_levels(&p, &b, &[0.0]);
        let e = &levels[0];
        for n in 0..b.levels() {
            assert_relative_eq!(e[2 * n + 1] - e[2 * n], 0.3, max_relative = 1e-12);
            assert_relative_eq!(0.5 * (e[2 * n + 1] + e[2 * n]), n as f64 + 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn bare_degeneracies_at_integer_detunings() {
        let p = params(0.4, 0.0, 0.0);
        let b = BasisSpec::with_default_truncation(2);
        let grid: Vec<f64> = (-300..=300).map(|i| i as f64 * 0.01).collect();
        let levels = energy_levels(&p, &b, &grid);
        let gaps: Vec<f64> = levels
            .iter()
            .map(|e| e.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min))
            .collect();
        for (i, &delta) in grid.iter().enumerate() {
            let integer = (delta - delta.round()).abs() < 1e-9;
            if integer {
                assert!(gaps[i] < 1e-12, "delta={delta} gap={}", gaps[i]);
            } else {
                assert!(gaps[i] > 1e-3, "delta={delta} gap={}", gaps[i]);
            }
        }
    }

    #[test]
    fn sideband_crossings_become_avoided() {
        let b = BasisSpec::with_default_truncation(4);
        for center in [1.0, -1.0] {
            let grid: Vec<f64> = (0..=400).map(|i| center - 0.2 + 0.4 * i as f64 / 400.0).collect();
            let pair_gap = |wr: f64| {
                energy_levels(&params(0.4, wr, 0.0), &b, &grid)
                    .iter()
                    .map(|e| e[2] - e[1])
                    .fold(f64::INFINITY, f64::min)
            };
            assert!(pair_gap(0.0) < 1e-12);
            let dressed = pair_gap(0.3);
            assert!(dressed > 0.05, "center={center} gap={dressed}");
        }
    }

    #[test]
    fn tracks_follow_bare_lines_through_crossings() {
        let p = params(0.4, 0.0, 0.0);
        let b = BasisSpec::with_default_truncation(0);
        let grid: Vec<f64> = (0..41).map(|i| -1.005 + 2.01 * i as f64 / 40.0).collect();
        let tracks = energy_level_tracks(&p, &b, &grid);
        let step = grid[1] - grid[0];
        for j in 0..b.dimension() {
            let slopes: Vec<f64> =
                tracks.windows(2).map(|w| (w[1][j] - w[0][j]) / step).collect();
            let s0 = slopes[0];
            assert!((s0.abs() - 0.5).abs() < 1e-9);
            assert!(slopes.iter().all(|s| (s - s0).abs() < 1e-9), "track {j} bends");
        }
    }

    proptest! {
        #[test]
        fn assembled_operators_are_hermitian(
            eta in 0.0f64..0.5,
            wr in 0.0f64..1.0,
            delta in -3.0f64..3.0,
            n0 in 0usize..4,
        ) {
            let p = params(eta, wr, delta);
            let b = BasisSpec::with_default_truncation(n0);
            prop_assert!(full_hamiltonian(&p, &b).hermiticity_defect() < 1e-12);
            prop_assert!(ld_hamiltonian(&p, &b).hermiticity_defect() < 1e-12);
            let (h_sd, v) = semidressed_split(&p, &b);
            prop_assert!(h_sd.hermiticity_defect() < 1e-12);
            prop_assert!(v.hermiticity_defect() < 1e-12);
        }

        #[test]
        fn displacement_is_symmetric(n in 0usize..40, m in 0usize..40, eta in 0.0f64..1.0) {
            prop_assert_eq!(displacement_element(n, m, eta), displacement_element(m, n, eta));
        }
    }
}
