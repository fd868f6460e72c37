#include "ising/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <map>
#include <stdexcept>

namespace ising {

namespace {

// Coefficient matrix with one column per element over the union monomial
// basis (rows ordered by the monomial ordering, hence deterministic).
Eigen::MatrixXcd coefficient_matrix(const std::vector<AlgebraElement>& elements,
                                    std::map<Monomial, int>* index_out = nullptr) {
    std::map<Monomial, int> index;
    for (const auto& x : elements)
        for (const auto& [m, c] : x.terms()) index.emplace(m, 0);
    int row = 0;
    for (auto& [m, i] : index) i = row++;

    Eigen::MatrixXcd mat =
        Eigen::MatrixXcd::Zero(std::max<std::size_t>(index.size(), 1), elements.size());
    for (std::size_t col = 0; col < elements.size(); ++col)
        for (const auto& [m, c] : elements[col].terms()) mat(index.at(m), col) = c;
    if (index_out) *index_out = std::move(index);
    return mat;
}

int svd_rank(const Eigen::MatrixXcd& mat, double cutoff) {
    if (mat.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > cutoff * sv(0)) ++rank;
    return rank;
}

// Orthonormal basis of the nullspace of mat (columns of V past the rank).
std::vector<Eigen::VectorXcd> nullspace(const Eigen::MatrixXcd& mat, double cutoff) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (smax > 0.0 && sv(k) > cutoff * smax) ++rank;
    std::vector<Eigen::VectorXcd> out;
    for (int k = rank; k < svd.matrixV().cols(); ++k)
        out.push_back(svd.matrixV().col(k));
    return out;
}

}  // namespace

int span_dimension(const std::vector<AlgebraElement>& elements, double cutoff) {
    if (elements.empty()) return 0;
    return svd_rank(coefficient_matrix(elements), cutoff);
}

double span_residual(const AlgebraElement& target,
                     const std::vector<AlgebraElement>& spanning) {
    std::vector<AlgebraElement> all = spanning;
    all.push_back(target);
    std::map<Monomial, int> index;
    Eigen::MatrixXcd mat = coefficient_matrix(all, &index);
    Eigen::VectorXcd b = mat.col(mat.cols() - 1);
    if (spanning.empty()) return b.norm();
    Eigen::MatrixXcd a = mat.leftCols(mat.cols() - 1);
    Eigen::VectorXcd x = a.colPivHouseholderQr().solve(b);
    return (a * x - b).norm();
}

std::vector<AlgebraElement> span_basis(const std::vector<AlgebraElement>& elements,
                                       double cutoff) {
    if (elements.empty()) return {};
    Eigen::MatrixXcd mat = coefficient_matrix(elements);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(mat);
    qr.setThreshold(cutoff);
    int rank = static_cast<int>(qr.rank());
    const auto& perm = qr.colsPermutation().indices();
    std::vector<int> picked(perm.data(), perm.data() + rank);
    std::sort(picked.begin(), picked.end());
    std::vector<AlgebraElement> out;
    out.reserve(picked.size());
    for (int i : picked) out.push_back(elements[i]);
    return out;
}

std::vector<Monomial> monomials_in_window(SiteIndex lo, SiteIndex hi, int margin,
                                          int max_sites) {
    int dlo = lo.doubled + 2 * margin;
    int dhi = hi.doubled - 2 * margin;
    if (dhi < dlo) throw std::invalid_argument("monomials_in_window: empty window");
    int n = dhi - dlo + 1;
    if (n > max_sites)
        throw std::length_error("monomials_in_window: too many sites to enumerate");
    std::vector<Monomial> out;
    out.reserve(1u << n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<SiteIndex> sites;
        for (int k = 0; k < n; ++k)
            if (mask & (1u << k)) sites.push_back(SiteIndex::from_doubled(dlo + k));
        out.push_back(Monomial{std::move(sites)});
    }
    return out;
}

std::vector<AlgebraElement> commutant_within_span(
    const std::vector<AlgebraElement>& generators,
    const std::vector<AlgebraElement>& spanning, double cutoff) {
    if (spanning.empty()) return {};

    // Stack the commutators [E_i, g_j] columnwise per candidate basis vector
    // E_i; the commutant corresponds to the nullspace of the stacked map.
    std::vector<AlgebraElement> columns;
    columns.reserve(spanning.size());
    std::map<Monomial, int> index;
    for (const auto& e : spanning)
        for (const auto& g : generators) {
            const AlgebraElement comm = commutator(e, g);
            for (const auto& [m, c] : comm.terms()) index.emplace(m, 0);
        }
    int row = 0;
    for (auto& [m, i] : index) i = row++;
    int rows_per_gen = std::max(row, 1);

    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(
        static_cast<long>(rows_per_gen) * std::max<std::size_t>(generators.size(), 1),
        spanning.size());
    for (std::size_t col = 0; col < spanning.size(); ++col) {
        for (std::size_t j = 0; j < generators.size(); ++j) {
            AlgebraElement comm = commutator(spanning[col], generators[j]);
            for (const auto& [m, c] : comm.terms())
                mat(static_cast<long>(j) * rows_per_gen + index.at(m), col) = c;
        }
    }

    std::vector<AlgebraElement> basis;
    for (const auto& v : nullspace(mat, cutoff)) {
        AlgebraElement x;
        for (std::size_t i = 0; i < spanning.size(); ++i)
            if (std::abs(v(i)) > 0.0) x += spanning[i] * cplx{v(i)};
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<AlgebraElement> relative_commutant_basis(
    const std::vector<AlgebraElement>& generators, SiteIndex window_lo,
    SiteIndex window_hi, int margin, double cutoff) {
    std::vector<AlgebraElement> spanning;
    for (const auto& m : monomials_in_window(window_lo, window_hi, margin))
        spanning.push_back(AlgebraElement::from_monomial(m));
    return commutant_within_span(generators, spanning, cutoff);
}

}  // namespace ising
