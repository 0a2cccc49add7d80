#include "spinsim/spin_hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace spinsim {

using std::complex;

SpinConfiguration::SpinConfiguration(int n_spins, std::uint64_t idx)
    : n(n_spins), index(idx) {
  if (n < 2) throw std::invalid_argument("SpinConfiguration: n must be >= 2");
  if (n > kMatrixFreeCap)
    throw std::invalid_argument("SpinConfiguration: n exceeds cap");
  if (index >= (std::uint64_t{1} << n))
    throw std::invalid_argument("SpinConfiguration: index out of range");
}

SpinClass SpinConfiguration::classify() const {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  if (index == 0 || index == mask) return SpinClass::FM;
  // alternating patterns 0101... / 1010...
  std::uint64_t alt = 0;
  for (int i = 1; i < n; i += 2) alt |= std::uint64_t{1} << i;
  if (index == alt || index == (alt ^ mask)) return SpinClass::SymmetricAFM;
  return SpinClass::AsymmetricAFM;
}

CouplingMatrix::CouplingMatrix(Eigen::MatrixXd j) : j_(std::move(j)) {
  if (j_.rows() != j_.cols() || j_.rows() < 2)
    throw std::invalid_argument("CouplingMatrix: need square matrix, n >= 2");
  for (int i = 0; i < j_.rows(); ++i) {
    if (j_(i, i) != 0.0)
      throw std::invalid_argument("CouplingMatrix: diagonal must be zero");
    for (int k = 0; k < j_.cols(); ++k) {
      if (!std::isfinite(j_(i, k)))
        throw std::invalid_argument("CouplingMatrix: entries must be finite");
      if (j_(i, k) != j_(k, i))
        throw std::invalid_argument("CouplingMatrix: matrix must be symmetric");
    }
  }
}

CouplingMatrix CouplingMatrix::symmetric_chain3(double j1, double j2) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(3, 3);
  j(0, 1) = j(1, 0) = j1;
  j(1, 2) = j(2, 1) = j1;
  j(0, 2) = j(2, 0) = j2;
  return CouplingMatrix(std::move(j));
}

CouplingMatrix CouplingMatrix::uniform(int n, double j) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, j);
  m.diagonal().setZero();
  return CouplingMatrix(std::move(m));
}

double CouplingMatrix::pair_abs_sum() const {
  double s = 0.0;
  for (int i = 0; i < n(); ++i)
    for (int k = i + 1; k < n(); ++k) s += std::abs(j_(i, k));
  return s;
}

double CouplingMatrix::max_abs() const {
  return j_.cwiseAbs().maxCoeff();
}

StateVector::StateVector(int n_spins, Eigen::VectorXcd amplitudes)
    : n_(n_spins), amp_(std::move(amplitudes)) {
  if (n_ < 2 || n_ > kMatrixFreeCap)
    throw std::invalid_argument("StateVector: n out of range");
  if (amp_.size() != (std::int64_t{1} << n_))
    throw std::invalid_argument("StateVector: amplitude count != 2^n");
  normalize();
}

StateVector StateVector::basis_state(int n_spins, std::uint64_t index) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(std::int64_t{1} << n_spins);
  amp(static_cast<std::int64_t>(index)) = 1.0;
  return StateVector(n_spins, std::move(amp));
}

Eigen::VectorXd StateVector::populations() const {
  return amp_.cwiseAbs2();
}

void StateVector::normalize() {
  const double nrm = amp_.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw std::invalid_argument("StateVector: cannot normalize zero/non-finite vector");
  amp_ /= nrm;
  fix_phase();
}

void StateVector::fix_phase() {
  for (std::int64_t c = 0; c < amp_.size(); ++c) {
    const double mag = std::abs(amp_(c));
    if (mag > 1e-12) {
      amp_ *= std::conj(amp_(c)) / mag;
      // keep the anchor exactly real
      amp_(c) = complex<double>(std::abs(amp_(c)), 0.0);
      return;
    }
  }
}

double classical_ising_energy(const SpinConfiguration& config,
                              const CouplingMatrix& couplings) {
  if (config.n != couplings.n())
    throw std::invalid_argument("classical_ising_energy: dimension mismatch");
  double e = 0.0;
  for (int i = 0; i < config.n; ++i)
    for (int k = i + 1; k < config.n; ++k)
      e += couplings(i, k) * config.spin(i) * config.spin(k);
  return e;
}

namespace detail {

Eigen::VectorXd classical_diagonal(const CouplingMatrix& couplings) {
  const int n = couplings.n();
  const std::int64_t dim = std::int64_t{1} << n;
  Eigen::VectorXd d(dim);
  for (std::int64_t c = 0; c < dim; ++c) {
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
      const int si = ((c >> i) & 1) ? -1 : +1;
      for (int k = i + 1; k < n; ++k) {
        const int sk = ((c >> k) & 1) ? -1 : +1;
        e += couplings(i, k) * si * sk;
      }
    }
    d(c) = e;
  }
  return d;
}

Eigen::VectorXcd rotate_from_real(const Eigen::VectorXd& w) {
  static const complex<double> iphase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Eigen::VectorXcd v(w.size());
  for (std::int64_t c = 0; c < w.size(); ++c)
    v(c) = iphase[std::popcount(static_cast<std::uint64_t>(c)) & 3] * w(c);
  return v;
}

void apply_rotated(const Eigen::VectorXd& diag, double b_y,
                   const Eigen::VectorXd& w, Eigen::VectorXd& out) {
  const std::int64_t dim = w.size();
  const int n = std::countr_zero(static_cast<std::uint64_t>(dim));
  out = diag.cwiseProduct(w);
  if (b_y != 0.0) {
    for (int i = 0; i < n; ++i) {
      const std::int64_t bit = std::int64_t{1} << i;
      for (std::int64_t c = 0; c < dim; ++c) out(c) -= b_y * w(c ^ bit);
    }
  }
}

}  // namespace detail

Eigen::MatrixXcd build_dense(const HamiltonianParams& params) {
  const int n = params.couplings.n();
  if (n > kDenseCap)
    throw std::invalid_argument("build_dense: n exceeds dense cap");
  if (!std::isfinite(params.b_y))
    throw std::invalid_argument("build_dense: b_y must be finite");
  const std::int64_t dim = std::int64_t{1} << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  const Eigen::VectorXd d = detail::classical_diagonal(params.couplings);
  for (std::int64_t c = 0; c < dim; ++c) {
    h(c, c) = d(c);
    for (int i = 0; i < n; ++i) {
      const std::int64_t cp = c ^ (std::int64_t{1} << i);
      const bool bit_up = ((c >> i) & 1) == 0;
      h(cp, c) += params.b_y * complex<double>(0.0, bit_up ? -1.0 : +1.0);
    }
  }
  return h;
}

Eigen::VectorXcd apply(const HamiltonianParams& params, const Eigen::VectorXcd& v) {
  const int n = params.couplings.n();
  if (n > kMatrixFreeCap)
    throw std::invalid_argument("apply: n exceeds matrix-free cap");
  const std::int64_t dim = std::int64_t{1} << n;
  if (v.size() != dim) throw std::invalid_argument("apply: dimension mismatch");
  static thread_local Eigen::VectorXd diag_cache;
  // recompute the classical diagonal; callers doing many applies go through
  // the cached paths in spectral/dynamics instead
  const Eigen::VectorXd d = detail::classical_diagonal(params.couplings);
  Eigen::VectorXcd out = d.cwiseProduct(v.real()).cast<complex<double>>();
  for (std::int64_t c = 0; c < dim; ++c) out(c) = d(c) * v(c);
  if (params.b_y != 0.0) {
    for (int i = 0; i < n; ++i) {
      const std::int64_t bit = std::int64_t{1} << i;
      for (std::int64_t c = 0; c < dim; ++c) {
        const bool bit_up = ((c >> i) & 1) == 0;
        // element <c^bit|sigma_y^(i)|c>
        out(c ^ bit) += params.b_y * complex<double>(0.0, bit_up ? -1.0 : +1.0) * v(c);
      }
    }
  }
  return out;
}

Eigen::VectorXcd apply(const HamiltonianParams& params, const StateVector& v) {
  if (v.n() != params.couplings.n())
    throw std::invalid_argument("apply: dimension mismatch");
  return apply(params, v.amplitudes());
}

Eigen::VectorXcd apply_sum_sigma_y(int n_spins, const Eigen::VectorXcd& v) {
  const std::int64_t dim = std::int64_t{1} << n_spins;
  if (v.size() != dim)
    throw std::invalid_argument("apply_sum_sigma_y: dimension mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (int i = 0; i < n_spins; ++i) {
    const std::int64_t bit = std::int64_t{1} << i;
    for (std::int64_t c = 0; c < dim; ++c) {
      const bool bit_up = ((c >> i) & 1) == 0;
      out(c ^ bit) += complex<double>(0.0, bit_up ? -1.0 : +1.0) * v(c);
    }
  }
  return out;
}

Eigen::VectorXcd apply_parity(int n_spins, const Eigen::VectorXcd& v) {
  const std::int64_t dim = std::int64_t{1} << n_spins;
  if (v.size() != dim)
    throw std::invalid_argument("apply_parity: dimension mismatch");
  // <~c|P|c> = (-1)^(#zero bits of c) * i^N
  static const complex<double> iphase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const complex<double> in = iphase[n_spins & 3];
  Eigen::VectorXcd out(dim);
  for (std::int64_t c = 0; c < dim; ++c) {
    const int zeros = n_spins - std::popcount(static_cast<std::uint64_t>(c));
    out((dim - 1) ^ c) = ((zeros & 1) ? -in : in) * v(c);
  }
  return out;
}

double order_parameter(const StateVector& v) {
  const auto& a = v.amplitudes();
  return std::norm(a(0)) + std::norm(a(a.size() - 1));
}

int parity(const StateVector& v, double tol) {
  const Eigen::VectorXcd pv = apply_parity(v.n(), v.amplitudes());
  const complex<double> lambda = v.amplitudes().dot(pv);  // <v|P|v>
  const double resid_plus = (pv - v.amplitudes()).norm();
  const double resid_minus = (pv + v.amplitudes()).norm();
  if (resid_plus <= tol) return +1;
  if (resid_minus <= tol) return -1;
  throw std::invalid_argument(
      "parity: state is not a parity eigenstate (residuals " +
      std::to_string(resid_plus) + ", " + std::to_string(resid_minus) +
      ", <P> = " + std::to_string(lambda.real()) + ")");
}

int parity(const SpinConfiguration& config, double tol) {
  return parity(StateVector::basis_state(config.n, config.index), tol);
}

double energy_expectation(const HamiltonianParams& params, const StateVector& v) {
  return v.amplitudes().dot(apply(params, v)).real();
}

}  // namespace spinsim
