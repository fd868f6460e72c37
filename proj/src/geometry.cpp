#include "ising/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace ising {

MinimalCone MinimalCone::at_site(SiteIndex s) {
    if (s.is_integer()) {
        int x = s.doubled / 2;
        return MinimalCone{x, -x};
    }
    // Site k + 1/2 lives on the t = -1/2 layer: u = t + x = k, v = t - x = -k - 1.
    int k = s.floor_int();
    return MinimalCone{k, -k - 1};
}

MinimalCone MinimalCone::at(double t, double x) {
    double u = t + x;
    double v = t - x;
    if (std::abs(u - std::round(u)) > 1e-9 || std::abs(v - std::round(v)) > 1e-9)
        throw std::invalid_argument("MinimalCone::at: not a lattice cone position");
    return MinimalCone{static_cast<int>(std::lround(u)), static_cast<int>(std::lround(v))};
}

std::optional<SiteIndex> MinimalCone::surface_site() const {
    if (u + v == 0) return SiteIndex::at_integer(u);  // t = 0, x = u
    if (u + v == -1) return SiteIndex::at_half(u);    // t = -1/2, x = u + 1/2
    return std::nullopt;
}

DoubleCone::DoubleCone(int ulo, int uhi, int vlo, int vhi)
    : u_lo(ulo), u_hi(uhi), v_lo(vlo), v_hi(vhi) {
    if (u_hi < u_lo || v_hi < v_lo)
        throw std::invalid_argument("DoubleCone: empty lightlike rectangle");
}

DoubleCone DoubleCone::over_sites(SiteIndex lo, SiteIndex hi) {
    if (hi < lo) throw std::invalid_argument("DoubleCone::over_sites: hi < lo");
    std::vector<MinimalCone> cones;
    for (int d = lo.doubled; d <= hi.doubled; ++d)
        cones.push_back(MinimalCone::at_site(SiteIndex::from_doubled(d)));
    return spanned_by(cones);
}

DoubleCone DoubleCone::spanned_by(const std::vector<MinimalCone>& cones) {
    if (cones.empty()) throw std::invalid_argument("DoubleCone::spanned_by: no cones");
    DoubleCone out = minimal(cones.front());
    for (const auto& c : cones) {
        out.u_lo = std::min(out.u_lo, c.u);
        out.u_hi = std::max(out.u_hi, c.u);
        out.v_lo = std::min(out.v_lo, c.v);
        out.v_hi = std::max(out.v_hi, c.v);
    }
    return out;
}

bool DoubleCone::contains(MinimalCone c) const {
    return u_lo <= c.u && c.u <= u_hi && v_lo <= c.v && c.v <= v_hi;
}

bool DoubleCone::contains(const DoubleCone& o) const {
    return u_lo <= o.u_lo && o.u_hi <= u_hi && v_lo <= o.v_lo && o.v_hi <= v_hi;
}

std::vector<MinimalCone> DoubleCone::cells() const {
    std::vector<MinimalCone> out;
    for (int u = u_lo; u <= u_hi; ++u)
        for (int v = v_lo; v <= v_hi; ++v) out.push_back(MinimalCone{u, v});
    return out;
}

DoubleCone DoubleCone::translated(int dt, double dx) const {
    double du = dt + dx;
    double dv = dt - dx;
    if (std::abs(du - std::round(du)) > 1e-9 || std::abs(dv - std::round(dv)) > 1e-9)
        throw std::invalid_argument("DoubleCone::translated: not a lattice translation");
    int idu = static_cast<int>(std::lround(du));
    int idv = static_cast<int>(std::lround(dv));
    return DoubleCone{u_lo + idu, u_hi + idu, v_lo + idv, v_hi + idv};
}

DoubleCone join(const DoubleCone& a, const DoubleCone& b) {
    return DoubleCone{std::min(a.u_lo, b.u_lo), std::max(a.u_hi, b.u_hi),
                      std::min(a.v_lo, b.v_lo), std::max(a.v_hi, b.v_hi)};
}

bool spacelike_separated(const DoubleCone& a, const DoubleCone& b) {
    // Strictly incomparable in the lightlike order; cones that touch
    // (adjacent sites) are causally related and therefore excluded.
    bool b_right_of_a = b.u_lo > a.u_hi && b.v_hi < a.v_lo;
    bool a_right_of_b = a.u_lo > b.u_hi && a.v_hi < b.v_lo;
    return b_right_of_a || a_right_of_b;
}

PastRegion PastRegion::past_of(const DoubleCone& o) {
    PastRegion r;
    r.quadrants_.push_back({o.u_hi, o.v_hi});
    return r;
}

PastRegion PastRegion::of(Kind kind, const DoubleCone& a, const DoubleCone& b) {
    PastRegion r;
    switch (kind) {
        case Kind::weak:
            r.quadrants_.push_back({a.u_hi, a.v_hi});
            r.quadrants_.push_back({b.u_hi, b.v_hi});
            break;
        case Kind::common:
            r.quadrants_.push_back({std::min(a.u_hi, b.u_hi), std::min(a.v_hi, b.v_hi)});
            break;
        case Kind::strong:
            // Below every point of both cones.
            r.quadrants_.push_back({std::min(a.u_lo, b.u_lo), std::min(a.v_lo, b.v_lo)});
            break;
    }
    return r;
}

bool PastRegion::contains(MinimalCone c) const {
    for (const auto& q : quadrants_)
        if (c.u <= q.u_max && c.v <= q.v_max) return true;
    return false;
}

bool PastRegion::contains(const DoubleCone& o) const {
    for (const auto& c : o.cells())
        if (!contains(c)) return false;
    return true;
}

bool PastRegion::contains(const PastRegion& o) const {
    // Each quadrant of o must sit under some quadrant of this region (a
    // quadrant is contained in a union of quadrants iff it is contained in
    // one of them, since its corner must be covered).
    for (const auto& oq : o.quadrants_) {
        bool covered = false;
        for (const auto& q : quadrants_)
            if (oq.u_max <= q.u_max && oq.v_max <= q.v_max) covered = true;
        if (!covered) return false;
    }
    return true;
}

namespace {

template <typename Region>
bool supported_in_impl(const AlgebraElement& x, const Region& region) {
    for (const auto& [m, c] : x.terms())
        for (SiteIndex s : m.sites())
            if (!region.contains(MinimalCone::at_site(s))) return false;
    return true;
}

}  // namespace

bool supported_in(const AlgebraElement& x, const DoubleCone& region) {
    return supported_in_impl(x, region);
}

bool supported_in(const AlgebraElement& x, const PastRegion& region) {
    return supported_in_impl(x, region);
}

}  // namespace ising
