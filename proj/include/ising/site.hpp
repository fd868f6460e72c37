#pragma once

#include <compare>
#include <cstdlib>
#include <string>

namespace ising {

// Lattice site index i in (1/2)Z, stored as the doubled value 2i so that
// half-integers stay exact.  Generators at distance 1/2 (doubled distance 1)
// anticommute; all other pairs commute.
struct SiteIndex {
    int doubled = 0;

    static constexpr SiteIndex at_integer(int x) { return SiteIndex{2 * x}; }
    // Site x + 1/2 for integer x.
    static constexpr SiteIndex at_half(int x) { return SiteIndex{2 * x + 1}; }
    static constexpr SiteIndex from_doubled(int d) { return SiteIndex{d}; }

    constexpr bool is_integer() const { return doubled % 2 == 0; }
    constexpr double value() const { return doubled / 2.0; }

    // Integer qubit window [floor(i), ceil(i)] covering this site in the
    // matrix representation.
    constexpr int floor_int() const {
        return (doubled >= 0) ? doubled / 2 : (doubled - 1) / 2;
    }
    constexpr int ceil_int() const {
        return (doubled >= 0) ? (doubled + 1) / 2 : doubled / 2;
    }

    friend constexpr auto operator<=>(SiteIndex a, SiteIndex b) = default;
};

// True iff the generators at a and b anticommute.
constexpr bool sites_anticommute(SiteIndex a, SiteIndex b) {
    int d = a.doubled - b.doubled;
    return d == 1 || d == -1;
}

inline std::string to_string(SiteIndex s) {
    if (s.is_integer()) return std::to_string(s.doubled / 2);
    int num = s.doubled;
    return (num < 0 ? "-" : "") + std::to_string(std::abs(num)) + "/2";
}

}  // namespace ising
