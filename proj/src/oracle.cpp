#include "ising/oracle.hpp"

#include <Eigen/Eigenvalues>

namespace ising {

namespace {

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

// kron chain with identity everywhere except the listed (qubit, factor)
// pairs; qubits ascend and the first factor is most significant.
Eigen::MatrixXcd kron_at(const QubitWindow& w,
                         const std::vector<std::pair<int, Eigen::Matrix2cd>>& factors) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < w.qubits(); ++q) {
        Eigen::Matrix2cd f = Eigen::Matrix2cd::Identity();
        for (const auto& [fq, fm] : factors)
            if (fq == q) f = fm;
        Eigen::MatrixXcd next(acc.rows() * 2, acc.cols() * 2);
        next.setZero();
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                if (f(r, c) != cplx{0.0})
                    next.block(r * acc.rows(), c * acc.cols(), acc.rows(), acc.cols()) =
                        f(r, c) * acc;
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

QubitWindow::QubitWindow(int lo, int hi, int max_qubits) : lo_(lo), hi_(hi) {
    if (hi < lo) throw std::invalid_argument("QubitWindow: hi < lo");
    if (hi - lo + 1 > max_qubits)
        throw std::length_error("QubitWindow: window exceeds the representable cap");
}

bool QubitWindow::can_represent(SiteIndex s) const {
    if (s.is_integer()) {
        int x = s.doubled / 2;
        return lo_ <= x && x <= hi_;
    }
    int x = s.floor_int();  // generator at x + 1/2 needs qubits x and x+1
    return lo_ <= x && x + 1 <= hi_;
}

bool QubitWindow::can_represent(const Monomial& m) const {
    for (SiteIndex s : m.sites())
        if (!can_represent(s)) return false;
    return true;
}

bool QubitWindow::can_represent(const AlgebraElement& x) const {
    for (const auto& [m, c] : x.terms())
        if (!can_represent(m)) return false;
    return true;
}

QubitWindow covering_window(const AlgebraElement& x, int max_qubits) {
    auto lo = x.support_min();
    auto hi = x.support_max();
    if (!lo || !hi) return QubitWindow(0, 0, max_qubits);
    return QubitWindow(lo->floor_int(), hi->ceil_int(), max_qubits);
}

Eigen::MatrixXcd rep_generator(SiteIndex s, const QubitWindow& w) {
    if (!w.can_represent(s))
        throw std::invalid_argument("rep_generator: site outside the window");
    if (s.is_integer()) {
        int q = s.doubled / 2 - w.lo();
        return kron_at(w, {{q, pauli_z()}});
    }
    int q = s.floor_int() - w.lo();
    return kron_at(w, {{q, pauli_x()}, {q + 1, pauli_x()}});
}

Eigen::MatrixXcd rep_monomial(const Monomial& m, const QubitWindow& w) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(w.dim(), w.dim());
    for (SiteIndex s : m.sites()) acc = acc * rep_generator(s, w);
    return acc;
}

Eigen::MatrixXcd rep_element(const AlgebraElement& x, const QubitWindow& w) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(w.dim(), w.dim());
    for (const auto& [m, c] : x.terms()) {
        if (!w.can_represent(m))
            throw std::invalid_argument("rep_element: support outside the window");
        acc += c * rep_monomial(m, w);
    }
    return acc;
}

cplx normalized_trace(const Eigen::MatrixXcd& m) {
    return m.trace() / static_cast<double>(m.rows());
}

std::pair<double, double> spectrum_bounds(const AlgebraElement& x, const QubitWindow& w,
                                          double hermiticity_tol) {
    Eigen::MatrixXcd m = rep_element(x, w);
    double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > hermiticity_tol)
        throw std::invalid_argument("spectrum_bounds: element is not self-adjoint");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

bool is_selfadjoint_contraction(const AlgebraElement& x, double tol) {
    if (!x.is_hermitian(tol)) return false;
    QubitWindow w = covering_window(x);
    auto [lo, hi] = spectrum_bounds(x, w, tol);
    return lo >= -1.0 - tol && hi <= 1.0 + tol;
}

}  // namespace ising
