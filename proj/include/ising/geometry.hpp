#pragma once

#include <optional>
#include <vector>

#include "ising/element.hpp"

namespace ising {

// Minimal double cone of the two-layer lattice, in lightlike coordinates
// u = t + x, v = t - x (both integers on this lattice).  Integer sites sit
// at t = 0, half-integer sites at t = -1/2; the cone at (u, v) can influence
// exactly the cones with u' >= u and v' >= v, and cones that are comparable
// in this order (adjacent sites included) are not spacelike separated.
struct MinimalCone {
    int u = 0;
    int v = 0;

    static MinimalCone at_site(SiteIndex s);       // surface cone of a generator
    static MinimalCone at(double t, double x);     // t + x and t - x must be integers

    double t() const { return (u + v) / 2.0; }
    double x() const { return (u - v) / 2.0; }
    // Surface layer holds integer sites at t = 0 (u + v even) and
    // half-integer sites at t = -1/2 (u + v odd, t = -1/2 requires u+v = -1).
    bool on_surface() const { return u + v == 0 || u + v == -1; }
    std::optional<SiteIndex> surface_site() const;

    friend bool operator==(MinimalCone, MinimalCone) = default;
};

// Double cone spanned by minimal cones: a rectangle [u_lo, u_hi] x [v_lo, v_hi]
// in lightlike coordinates.
struct DoubleCone {
    int u_lo = 0, u_hi = 0, v_lo = 0, v_hi = 0;

    DoubleCone() = default;
    DoubleCone(int ulo, int uhi, int vlo, int vhi);

    static DoubleCone minimal(MinimalCone c) { return {c.u, c.u, c.v, c.v}; }
    // Smallest double cone containing the surface sites lo..hi.
    static DoubleCone over_sites(SiteIndex lo, SiteIndex hi);
    static DoubleCone spanned_by(const std::vector<MinimalCone>& cones);

    int n_plus() const { return u_hi - u_lo + 1; }
    int n_minus() const { return v_hi - v_lo + 1; }
    // n(O): the local algebra over this cone has dimension 2^n.
    int n() const { return n_plus() + n_minus() - 1; }

    bool contains(MinimalCone c) const;
    bool contains(const DoubleCone& o) const;
    std::vector<MinimalCone> cells() const;

    DoubleCone translated(int dt, double dx = 0.0) const;

    friend bool operator==(const DoubleCone&, const DoubleCone&) = default;
};

DoubleCone join(const DoubleCone& a, const DoubleCone& b);
bool spacelike_separated(const DoubleCone& a, const DoubleCone& b);

// Union of at most two backward causal shadows {(u,v) : u <= u_max, v <= v_max}.
class PastRegion {
  public:
    enum class Kind { weak, common, strong };

    static PastRegion past_of(const DoubleCone& o);
    static PastRegion of(Kind kind, const DoubleCone& a, const DoubleCone& b);

    bool contains(MinimalCone c) const;
    bool contains(const DoubleCone& o) const;
    bool contains(const PastRegion& o) const;

  private:
    struct Quadrant {
        int u_max, v_max;
    };
    std::vector<Quadrant> quadrants_;
};

// Every non-scalar term of x is generated from surface sites whose minimal
// cones lie inside the region.  Scalars are supported everywhere.
bool supported_in(const AlgebraElement& x, const DoubleCone& region);
bool supported_in(const AlgebraElement& x, const PastRegion& region);

}  // namespace ising
