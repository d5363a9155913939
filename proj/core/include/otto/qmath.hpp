#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace otto {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using QubitLabels = std::vector<std::string>;

inline constexpr double kMatrixTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;

bool is_power_of_two(Eigen::Index n);

// Entrywise comparison with an absolute tolerance.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kMatrixTolerance);

bool is_hermitian(const ComplexMatrix& m, double tol = kMatrixTolerance);
bool is_diagonal(const ComplexMatrix& m, double tol = 0.0);

// Spin-1/2 z operator, diag(+1/2, -1/2); basis state |0> is spin-up.
ComplexMatrix spin_z();

// Single-qubit operator placed on `slot` of an n-qubit register.
// Slot 0 is the most significant bit of the basis index.
ComplexMatrix embed(const ComplexMatrix& op, std::size_t slot,
                    std::size_t num_qubits);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// exp(factor * h) for Hermitian h, via eigendecomposition.
ComplexMatrix exp_hermitian(const ComplexMatrix& h, Complex factor);

// Re Tr[op * rho]
double expectation(const ComplexMatrix& op, const ComplexMatrix& rho);

/// Hermitian, unit-trace, positive semidefinite matrix over a labelled
/// qubit register. Every instance is validated on construction and is
/// immutable afterwards.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, QubitLabels labels);

  static DensityMatrix maximally_mixed(QubitLabels labels);
  static DensityMatrix from_populations(const Eigen::VectorXd& populations,
                                        QubitLabels labels);

  const ComplexMatrix& matrix() const { return matrix_; }
  const QubitLabels& labels() const { return labels_; }
  std::size_t num_qubits() const { return labels_.size(); }
  Eigen::Index dim() const { return matrix_.rows(); }

  // Throws LabelError for labels outside the register.
  std::size_t slot_of(const std::string& label) const;
  bool contains(const std::string& label) const;

  Eigen::VectorXd populations() const;
  bool is_diagonal(double tol = 0.0) const;

 private:
  ComplexMatrix matrix_;
  QubitLabels labels_;
};

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);

// Reduced state on `keep`; the result lists the kept qubits in the
// register's original relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitLabels& keep);

// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

using HamiltonianFn = std::function<ComplexMatrix(double)>;

struct TimeSpan {
  double start = 0.0;
  double end = 0.0;
};

/// Integrates d(rho)/dt = -(i/hbar)[H(t), rho] with fixed-step classical RK4.
///
/// The number of steps is (end - start) / dt rounded to the nearest integer
/// when dt divides the span to within 1e-9 relative, otherwise rounded up;
/// the step is then shrunk to cover the span exactly. The state is
/// re-symmetrized after every step. Throws InputError for a non-Hermitian
/// H(t) or a step too coarse to resolve the coherent dynamics that is
/// actually present, and InvariantError if the trace drifts by more than
/// 1e-10.
DensityMatrix evolve_lvn(const DensityMatrix& rho0, const HamiltonianFn& hamiltonian_at,
                         TimeSpan span, double dt, double hbar);

}  // namespace otto
