#include "otto/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "otto/errors.hpp"

namespace otto {

namespace {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Largest |z| on the imaginary axis we accept for h*(E_max - E_min)/hbar.
// RK4 is stable up to 2*sqrt(2); beyond ~1 the phase error is already large.
constexpr double kMaxPhasePerStep = 1.0;

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

void check_register(const ComplexMatrix& m, const QubitLabels& labels) {
  if (m.rows() != m.cols()) {
    throw DimensionError(fmt::format("density matrix must be square, got {}x{}", m.rows(), m.cols()));
  }
  if (!is_power_of_two(m.rows())) {
    throw DimensionError(fmt::format("dimension {} is not a power of two", m.rows()));
  }
  if ((Eigen::Index{1} << labels.size()) != m.rows()) {
    throw DimensionError(fmt::format("{} labels do not match dimension {}", labels.size(), m.rows()));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j]) {
        throw LabelError(fmt::format("duplicate qubit label '{}'", labels[i]));
      }
    }
  }
}

}  // namespace

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs(a - b) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_diagonal(const ComplexMatrix& m, double tol) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (r != c && std::abs(m(r, c)) > tol) return false;
    }
  }
  return true;
}

ComplexMatrix spin_z() {
  ComplexMatrix sz = ComplexMatrix::Zero(2, 2);
  sz(0, 0) = 0.5;
  sz(1, 1) = -0.5;
  return sz;
}

ComplexMatrix embed(const ComplexMatrix& op, std::size_t slot, std::size_t num_qubits) {
  if (op.rows() != 2 || op.cols() != 2) {
    throw DimensionError("embed expects a single-qubit operator");
  }
  if (slot >= num_qubits) {
    throw DimensionError(fmt::format("slot {} outside a {}-qubit register", slot, num_qubits));
  }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (std::size_t s = 0; s < num_qubits; ++s) {
    out = kron(out, s == slot ? op : ComplexMatrix::Identity(2, 2));
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix exp_hermitian(const ComplexMatrix& h, Complex factor) {
  if (!is_hermitian(h, kMatrixTolerance * std::max(1.0, max_abs(h)))) {
    throw InputError("exp_hermitian requires a Hermitian matrix");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  Eigen::VectorXcd phases = (factor * eig.eigenvalues().cast<Complex>().array()).exp();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

double expectation(const ComplexMatrix& op, const ComplexMatrix& rho) {
  if (op.rows() != rho.rows() || op.cols() != rho.cols()) {
    throw DimensionError(fmt::format("operator {}x{} does not match state {}x{}", op.rows(), op.cols(),
                                     rho.rows(), rho.cols()));
  }
  return (op * rho).trace().real();
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix matrix, QubitLabels labels)
    : matrix_(std::move(matrix)), labels_(std::move(labels)) {
  check_register(matrix_, labels_);
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kMatrixTolerance) {
    throw InvariantError(fmt::format("density matrix trace is {}{:+}i, expected 1", tr.real(), tr.imag()));
  }
  if (!is_hermitian(matrix_)) {
    throw InvariantError("density matrix is not Hermitian");
  }
  if (otto::is_diagonal(matrix_)) {
    for (Eigen::Index i = 0; i < dim(); ++i) {
      if (matrix_(i, i).real() < -kPositivityTolerance) {
        throw InvariantError(fmt::format("negative population {} in slot {}", matrix_(i, i).real(), i));
      }
    }
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(matrix_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -kPositivityTolerance) {
      throw InvariantError(fmt::format("density matrix has eigenvalue {}", eig.eigenvalues().minCoeff()));
    }
  }
}

DensityMatrix DensityMatrix::maximally_mixed(QubitLabels labels) {
  const Eigen::Index d = Eigen::Index{1} << labels.size();
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d), std::move(labels));
}

DensityMatrix DensityMatrix::from_populations(const Eigen::VectorXd& populations, QubitLabels labels) {
  return DensityMatrix(populations.cast<Complex>().asDiagonal(), std::move(labels));
}

std::size_t DensityMatrix::slot_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw LabelError(fmt::format("qubit '{}' is not in the register", label));
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

bool DensityMatrix::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

Eigen::VectorXd DensityMatrix::populations() const { return matrix_.diagonal().real(); }

bool DensityMatrix::is_diagonal(double tol) const { return otto::is_diagonal(matrix_, tol); }

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  QubitLabels labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return DensityMatrix(kron(a.matrix(), b.matrix()), std::move(labels));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitLabels& keep) {
  if (keep.empty()) {
    throw InputError("partial_trace needs at least one qubit to keep");
  }
  const std::size_t n = rho.num_qubits();
  std::vector<bool> kept(n, false);
  for (const auto& label : keep) kept[rho.slot_of(label)] = true;

  QubitLabels out_labels;
  std::vector<std::size_t> kept_bits;    // bit positions, most significant first
  std::vector<std::size_t> traced_bits;
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t bit = n - 1 - s;
    if (kept[s]) {
      out_labels.push_back(rho.labels()[s]);
      kept_bits.push_back(bit);
    } else {
      traced_bits.push_back(bit);
    }
  }

  auto compress = [](std::size_t index, const std::vector<std::size_t>& bits) {
    std::size_t out = 0;
    for (std::size_t bit : bits) out = (out << 1) | ((index >> bit) & 1U);
    return out;
  };

  const auto d_out = static_cast<Eigen::Index>(std::size_t{1} << kept_bits.size());
  ComplexMatrix out = ComplexMatrix::Zero(d_out, d_out);
  const auto d = static_cast<std::size_t>(rho.dim());
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t env_i = compress(i, traced_bits);
    const auto r = static_cast<Eigen::Index>(compress(i, kept_bits));
    for (std::size_t j = 0; j < d; ++j) {
      if (compress(j, traced_bits) != env_i) continue;
      out(r, static_cast<Eigen::Index>(compress(j, kept_bits))) +=
          rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return DensityMatrix(std::move(out), std::move(out_labels));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionError(fmt::format("fidelity of {}-dim and {}-dim states", rho.dim(), sigma.dim()));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig_rho(rho.matrix());
  const Eigen::VectorXd roots = eig_rho.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix sqrt_rho =
      eig_rho.eigenvectors() * roots.cast<Complex>().asDiagonal() * eig_rho.eigenvectors().adjoint();
  ComplexMatrix inner = sqrt_rho * sigma.matrix() * sqrt_rho;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig_inner(inner, Eigen::EigenvaluesOnly);
  const double root_sum = eig_inner.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

DensityMatrix evolve_lvn(const DensityMatrix& rho0, const HamiltonianFn& hamiltonian_at,
                         TimeSpan span, double dt, double hbar) {
  if (!(dt > 0.0)) throw InputError("evolve_lvn: dt must be positive");
  if (!(hbar > 0.0)) throw InputError("evolve_lvn: hbar must be positive");
  const double length = span.end - span.start;
  if (length < 0.0) throw InputError("evolve_lvn: time span runs backwards");
  if (length == 0.0) return rho0;

  const double ratio = length / dt;
  const double nearest = std::round(ratio);
  const long steps = std::max(
      1L, static_cast<long>(std::abs(ratio - nearest) <= 1e-9 * ratio ? nearest : std::ceil(ratio)));
  const double h = length / static_cast<double>(steps);
  const Complex minus_i_over_hbar{0.0, -1.0 / hbar};

  auto hamiltonian = [&](double t) {
    ComplexMatrix H = hamiltonian_at(t);
    if (H.rows() != rho0.dim() || H.cols() != rho0.dim()) {
      throw DimensionError(fmt::format("H(t) is {}x{}, state is {}-dim", H.rows(), H.cols(), rho0.dim()));
    }
    if (!is_hermitian(H, kMatrixTolerance * max_abs(H))) {
      throw InputError(fmt::format("H(t) is not Hermitian at t = {}", t));
    }
    return H;
  };
  auto rhs = [&](const ComplexMatrix& H, const ComplexMatrix& rho) -> ComplexMatrix {
    return minus_i_over_hbar * commutator(H, rho);
  };

  ComplexMatrix rho = rho0.matrix();
  for (long k = 0; k < steps; ++k) {
    const double t = span.start + static_cast<double>(k) * h;
    const ComplexMatrix H0 = hamiltonian(t);
    const ComplexMatrix Hmid = hamiltonian(t + 0.5 * h);
    const ComplexMatrix H1 = hamiltonian(t + h);

    const ComplexMatrix k1 = rhs(H0, rho);
    if (max_abs(k1) > 0.0) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(H0, Eigen::EigenvaluesOnly);
      const double spread = eig.eigenvalues().maxCoeff() - eig.eigenvalues().minCoeff();
      if (spread * h / hbar > kMaxPhasePerStep) {
        throw InputError(fmt::format(
            "evolve_lvn: step {:.3e} s too coarse for coherences under an energy spread of {:.3e} J", h,
            spread));
      }
    }
    const ComplexMatrix k2 = rhs(Hmid, rho + 0.5 * h * k1);
    const ComplexMatrix k3 = rhs(Hmid, rho + 0.5 * h * k2);
    const ComplexMatrix k4 = rhs(H1, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint()).eval();
  }

  const double drift = std::abs(rho.trace() - rho0.matrix().trace());
  if (drift > 1e-10) {
    throw InvariantError(fmt::format("evolve_lvn: trace drifted by {:.3e}", drift));
  }
  return DensityMatrix(std::move(rho), rho0.labels());
}

}  // namespace otto
