#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "ising/site.hpp"

namespace ising {

// Canonical monomial U_{i1} U_{i2} ... U_{ip} with strictly ascending sites.
// The empty product is the unit.  Each generator squares to the unit, so no
// exponents are stored; signs produced while reordering are returned by
// mul_monomials and carried by the caller.
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(std::vector<SiteIndex> ascending_sites);
    Monomial(std::initializer_list<SiteIndex> sites);

    static Monomial identity() { return Monomial{}; }
    static Monomial generator(SiteIndex s) { return Monomial{{s}}; }

    bool is_identity() const { return sites_.empty(); }
    int degree() const { return static_cast<int>(sites_.size()); }
    const std::vector<SiteIndex>& sites() const { return sites_; }

    // Normalized trace: 1 for the unit, 0 otherwise.
    int trace() const { return sites_.empty() ? 1 : 0; }

    // Sign of the reversed product: M* = adjoint_sign(M) * M.  Reversal
    // transposes each pair once, so the sign is (-1)^(# adjacent site pairs).
    int adjoint_sign() const;

    bool operator==(const Monomial&) const = default;
    bool operator<(const Monomial& o) const;

    std::string to_string() const;

  private:
    std::vector<SiteIndex> sites_;
};

// Product of two canonical monomials, reduced to canonical form.  Returns
// {sign, product}: equal sites cancel pairwise and every transposition of
// generators at distance 1/2 flips the sign.
std::pair<int, Monomial> mul_monomials(const Monomial& lhs, const Monomial& rhs);

}  // namespace ising
