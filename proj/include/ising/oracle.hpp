#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <utility>

#include "ising/element.hpp"

namespace ising {

inline constexpr int kMaxWindowQubits = 13;  // dense-representation cap 2^13

// Finite-window faithful matrix representation.  Integer sites carry one
// qubit each; the generator at integer x acts as Pauli Z on its qubit and
// the generator at x + 1/2 acts as X (x) X on qubits x and x+1.  Kronecker
// factors are ordered by ascending qubit index, most significant first, so
// qubit 0 (site lo) selects the leading blocks.
class QubitWindow {
  public:
    QubitWindow(int lo, int hi, int max_qubits = kMaxWindowQubits);

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    int qubits() const { return hi_ - lo_ + 1; }
    long dim() const { return 1L << qubits(); }

    bool can_represent(SiteIndex s) const;
    bool can_represent(const Monomial& m) const;
    bool can_represent(const AlgebraElement& x) const;

  private:
    int lo_;
    int hi_;
};

// Smallest window covering the support of x (identity-only and zero elements
// get the degenerate single-qubit window at the origin).
QubitWindow covering_window(const AlgebraElement& x, int max_qubits = kMaxWindowQubits);

Eigen::MatrixXcd rep_generator(SiteIndex s, const QubitWindow& w);
Eigen::MatrixXcd rep_monomial(const Monomial& m, const QubitWindow& w);
Eigen::MatrixXcd rep_element(const AlgebraElement& x, const QubitWindow& w);

// Normalized matrix trace Tr(M)/dim, matching the algebra trace.
cplx normalized_trace(const Eigen::MatrixXcd& m);

// (min, max) eigenvalue of a self-adjoint element on the window.  Throws
// std::invalid_argument when the represented matrix is not Hermitian.
std::pair<double, double> spectrum_bounds(const AlgebraElement& x, const QubitWindow& w,
                                          double hermiticity_tol = kDefaultTol);

// Self-adjoint with spectrum inside [-1-tol, 1+tol], checked on the smallest
// covering window.  Throws std::length_error when the support does not fit a
// representable window.
bool is_selfadjoint_contraction(const AlgebraElement& x, double tol = kDefaultTol);

}  // namespace ising
