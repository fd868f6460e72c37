#pragma once

#include <vector>

#include "ising/element.hpp"

namespace ising {

inline constexpr double kRankCutoff = 1e-8;  // relative singular-value cutoff

// Dimension of the linear span of the given elements (rank of their
// coefficient matrix over the union monomial basis, singular values below
// cutoff * sigma_max treated as zero).
int span_dimension(const std::vector<AlgebraElement>& elements,
                   double cutoff = kRankCutoff);

// Euclidean distance from target to the span of the given elements
// (least-squares residual of its coefficient vector).
double span_residual(const AlgebraElement& target,
                     const std::vector<AlgebraElement>& spanning);

// Subset of the input whose span equals the input span (pivot columns of a
// rank-revealing QR factorization).
std::vector<AlgebraElement> span_basis(const std::vector<AlgebraElement>& elements,
                                       double cutoff = kRankCutoff);

// All monomials supported on sites lo..hi (every half-integer step),
// optionally shrunk by margin whole sites per side.  Throws when the
// shrunken window is empty or has more than max_sites sites.
std::vector<Monomial> monomials_in_window(SiteIndex lo, SiteIndex hi, int margin = 0,
                                          int max_sites = 16);

// Basis of {x in span(monomials on the shrunken window) : [x, g] = 0 for
// every generator g}.  With no generators this is the whole window algebra.
std::vector<AlgebraElement> relative_commutant_basis(
    const std::vector<AlgebraElement>& generators, SiteIndex window_lo,
    SiteIndex window_hi, int margin = 0, double cutoff = kRankCutoff);

// Basis of {x in span(spanning) : [x, g] = 0 for every generator g}.
std::vector<AlgebraElement> commutant_within_span(
    const std::vector<AlgebraElement>& generators,
    const std::vector<AlgebraElement>& spanning, double cutoff = kRankCutoff);

}  // namespace ising
