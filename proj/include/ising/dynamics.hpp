#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "ising/element.hpp"
#include "ising/geometry.hpp"

namespace ising {

// Parameters of the one-parameter-per-layer family of causal unit-time
// automorphisms: theta in (-pi/2, pi/2], eta in {-1, +1}.  Layer 2 acts on
// half-integer generators, layer 1 on integer ones.
struct DynamicsParams {
    double theta1 = 0.0;
    double theta2 = 0.0;
    int eta1 = 1;
    int eta2 = 1;

    void validate() const;  // throws std::invalid_argument on bad ranges

    friend bool operator==(const DynamicsParams&, const DynamicsParams&) = default;
};

// Unit-time translation automorphism.  Generator images are memoized per
// site; the cache is guarded so const calls are safe from multiple threads.
class Dynamics {
  public:
    explicit Dynamics(DynamicsParams p = {});

    const DynamicsParams& params() const { return params_; }

    // Image of the generator at site s after one time step.  Half-integer
    // images are closed forms; integer images are built from the two
    // neighbouring half-integer images.
    AlgebraElement generator_image(SiteIndex s) const;

    // *-homomorphic extension: monomials map to ordered products of
    // generator images, coefficients are carried along.
    AlgebraElement evolve(const AlgebraElement& x) const;
    AlgebraElement evolve(const AlgebraElement& x, int steps) const;  // steps >= 0

  private:
    AlgebraElement half_site_image(int x) const;  // site x + 1/2

    DynamicsParams params_;
    mutable std::mutex mutex_;
    mutable std::map<int, AlgebraElement> cache_;  // keyed by doubled site
};

// Space translation by k whole sites (an automorphism commuting with the
// dynamics).
AlgebraElement space_shift(const AlgebraElement& x, int k);
Monomial shift_monomial(const Monomial& m, int k);

struct PrimitiveCausalityReport {
    std::vector<double> residuals;  // one per basis element of the event algebra
    double max_residual = 0.0;
    bool pass = false;
};

// Verifies that the algebra generated by the left/right measurement
// generators {U_{-1}, beta(U_{-1/2})} and {U_1, beta(U_{1/2})} lies in the
// time-shifted algebra of the Cauchy-surface piece sites lo..hi, i.e. in the
// span of that window's monomials (the one-step image of the surface algebra
// one unit down).  Shrinking the window below sites -1..1 must fail.
PrimitiveCausalityReport check_primitive_causality(
    const Dynamics& dyn, SiteIndex window_lo = SiteIndex::at_integer(-1),
    SiteIndex window_hi = SiteIndex::at_integer(1), double tol = kDefaultTol);

// Generators attached to the minimal cones of a double cone: the surface
// generator of each cell, evolved by the cell's (integer) height above the
// surface.  Cells below the surface are rejected.
std::vector<AlgebraElement> cone_generators(const DoubleCone& cone, const Dynamics& dyn);

// Dimension of the local algebra of the cone: the span of products of cone
// generators, closed under multiplication until the dimension stabilizes.
// Equals 2^n(O).
int local_algebra_dimension(const DoubleCone& cone, const Dynamics& dyn);

}  // namespace ising
