#include "ising/monomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace ising {

Monomial::Monomial(std::vector<SiteIndex> ascending_sites)
    : sites_(std::move(ascending_sites)) {
    for (std::size_t k = 1; k < sites_.size(); ++k) {
        if (!(sites_[k - 1] < sites_[k]))
            throw std::invalid_argument("Monomial: sites must be strictly ascending");
    }
}

Monomial::Monomial(std::initializer_list<SiteIndex> sites)
    : Monomial(std::vector<SiteIndex>(sites)) {}

int Monomial::adjoint_sign() const {
    int adjacent = 0;
    for (std::size_t k = 1; k < sites_.size(); ++k)
        if (sites_anticommute(sites_[k - 1], sites_[k])) ++adjacent;
    return (adjacent % 2 == 0) ? 1 : -1;
}

bool Monomial::operator<(const Monomial& o) const {
    return std::lexicographical_compare(
        sites_.begin(), sites_.end(), o.sites_.begin(), o.sites_.end(),
        [](SiteIndex a, SiteIndex b) { return a < b; });
}

std::string Monomial::to_string() const {
    if (sites_.empty()) return "1";
    std::string out;
    for (SiteIndex s : sites_) {
        out += "U_{";
        out += ising::to_string(s);
        out += "}";
    }
    return out;
}

std::pair<int, Monomial> mul_monomials(const Monomial& lhs, const Monomial& rhs) {
    std::vector<SiteIndex> acc = lhs.sites();
    acc.reserve(acc.size() + rhs.sites().size());
    int sign = 1;
    for (SiteIndex s : rhs.sites()) {
        // Move s leftward from the end of acc to its sorted position,
        // flipping the sign for each anticommuting transposition.  An equal
        // site annihilates with s once they are adjacent.
        auto pos = acc.end();
        bool annihilated = false;
        while (pos != acc.begin()) {
            SiteIndex left = *(pos - 1);
            if (left < s) break;
            if (left == s) {
                pos = acc.erase(pos - 1);
                annihilated = true;
                break;
            }
            if (sites_anticommute(left, s)) sign = -sign;
            --pos;
        }
        if (!annihilated) acc.insert(pos, s);
    }
    return {sign, Monomial{std::move(acc)}};
}

}  // namespace ising
