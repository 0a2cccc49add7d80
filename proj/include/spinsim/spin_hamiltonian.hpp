#pragma once

// Transverse-field Ising model for a chain of spins, expressed in the x-basis:
// bit i of a configuration index encodes spin i along x (0 = up, 1 = down),
// so the Ising term is diagonal and the FM order parameter is a direct
// population readout.
//
// sigma_y matrix-element convention (used consistently by every module):
//   <c ^ (1<<i) | sigma_y^(i) | c> = -i  when bit i of c is 0,
//                                    +i  when bit i of c is 1.
//
// All couplings and fields are ordinary frequencies in Hz; time-evolution
// phases carry a single explicit 2*pi factor (see dynamics.hpp).

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace spinsim {

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

/// Relative tolerance below which adjacent eigenvalues are treated as one
/// degenerate cluster (eigenvector mixing below this scale is solver noise).
inline constexpr double kDegeneracyRelTol = 1e-8;

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

enum class SpinClass { FM, SymmetricAFM, AsymmetricAFM, Other };

/// One x-basis spin configuration of an N-spin chain.
struct SpinConfiguration {
  int n;
  std::uint64_t index;

  SpinConfiguration(int n_spins, std::uint64_t idx);

  /// +1 for bit 0 (up along x), -1 for bit 1 (down).
  int spin(int i) const { return ((index >> i) & 1u) ? -1 : +1; }

  /// Chain-order taxonomy of the bit pattern: all-equal -> FM, perfectly
  /// alternating -> symmetric AFM, anything else with both values -> asymmetric AFM.
  SpinClass classify() const;
};

/// Symmetric N x N Ising coupling matrix in Hz, zero diagonal.
class CouplingMatrix {
 public:
  explicit CouplingMatrix(Eigen::MatrixXd j);

  /// Symmetric 3-chain: J(0,1) = J(1,2) = j1 (nearest neighbour),
  /// J(0,2) = j2 (next-nearest).
  static CouplingMatrix symmetric_chain3(double j1, double j2);

  /// All-to-all constant coupling.
  static CouplingMatrix uniform(int n, double j);

  int n() const { return static_cast<int>(j_.rows()); }
  double operator()(int i, int k) const { return j_(i, k); }
  const Eigen::MatrixXd& matrix() const { return j_; }

  /// Sum of |J_ik| over pairs i < k; the energy scale of the Ising term.
  double pair_abs_sum() const;
  double max_abs() const;

 private:
  Eigen::MatrixXd j_;
};

struct HamiltonianParams {
  CouplingMatrix couplings;
  double b_y = 0.0;  // transverse field, Hz (may be negative)
};

/// Normalized complex amplitudes over the 2^N x-basis configurations.
/// The global phase is fixed so the first non-negligible amplitude is
/// real and positive.
class StateVector {
 public:
  StateVector(int n_spins, Eigen::VectorXcd amplitudes);

  static StateVector basis_state(int n_spins, std::uint64_t index);

  int n() const { return n_; }
  std::int64_t dim() const { return static_cast<std::int64_t>(amp_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }

  Eigen::VectorXd populations() const;

  void normalize();
  void fix_phase();

 private:
  int n_;
  Eigen::VectorXcd amp_;
};

inline constexpr int kDenseCap = 14;      // largest N for dense 2^N x 2^N work
inline constexpr int kMatrixFreeCap = 24; // largest N for matrix-free applies

/// Sum over pairs i<k of J_ik * s_i * s_k for one configuration (Hz).
double classical_ising_energy(const SpinConfiguration& config,
                              const CouplingMatrix& couplings);

/// Dense 2^N x 2^N Hermitian matrix of the full Hamiltonian (Hz).
Eigen::MatrixXcd build_dense(const HamiltonianParams& params);

/// Matrix-free H*v; O(N 2^N) time, no matrix storage. Result is unnormalized.
Eigen::VectorXcd apply(const HamiltonianParams& params, const Eigen::VectorXcd& v);
Eigen::VectorXcd apply(const HamiltonianParams& params, const StateVector& v);

/// Matrix-free (sum_i sigma_y^(i)) * v under the convention above.
Eigen::VectorXcd apply_sum_sigma_y(int n_spins, const Eigen::VectorXcd& v);

/// Matrix-free global parity (prod_i sigma_y^(i)) * v.
Eigen::VectorXcd apply_parity(int n_spins, const Eigen::VectorXcd& v);

/// P(FM): total population on the two all-equal configurations.
double order_parameter(const StateVector& v);

/// Parity sector (+1/-1) of a state that is an eigenstate of the global
/// sigma_y product within tolerance; throws std::invalid_argument otherwise.
int parity(const StateVector& v, double tol = 1e-8);
int parity(const SpinConfiguration& config, double tol = 1e-8);

/// <v|H|v> in Hz.
double energy_expectation(const HamiltonianParams& params, const StateVector& v);

namespace detail {

/// Diagonal of the Ising term over all 2^N configurations (Hz).
Eigen::VectorXd classical_diagonal(const CouplingMatrix& couplings);

/// Rotated-real form: with U = diag(i^popcount(c)), U^dag H U = D - B*A where
/// A is the hypercube adjacency matrix. Spectra are computed in this basis
/// and rotated back. w_rot -> complex x-basis vector.
Eigen::VectorXcd rotate_from_real(const Eigen::VectorXd& w);

/// (D - B*A) * w for real workspace vectors.
void apply_rotated(const Eigen::VectorXd& diag, double b_y,
                   const Eigen::VectorXd& w, Eigen::VectorXd& out);

}  // namespace detail

}  // namespace spinsim
