#pragma once

#include <array>
#include <json.hpp>

#include "ising/dynamics.hpp"
#include "ising/element.hpp"
#include "ising/geometry.hpp"

namespace ising {

// Direction on the Bloch sphere. Must be normalized on input; constructors
// reject non-unit vectors instead of rescaling them.
struct UnitVector3 {
    static constexpr double kUnitTol = 1e-9;

    std::array<double, 3> c{0.0, 0.0, 0.0};

    UnitVector3(double c1, double c2, double c3);

    double operator[](std::size_t i) const { return c[i]; }
};

double dot(const UnitVector3& u, const UnitVector3& v);

// Measurement setup: two directions per side, mixing weight lambda for the
// state, and the dynamics generating the half-step evolution.
struct ScenarioSpec {
    std::array<UnitVector3, 2> a;
    std::array<UnitVector3, 2> b;
    double lambda = 1.0;
    DynamicsParams dynamics{};

    static ScenarioSpec defaults();
    static ScenarioSpec from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;

    // lambda must lie in [0, 1]; dynamics parameters are range-checked too.
    void validate() const;
};

// One-measurement-per-side Bell setup on the doubled chain. The left qubit
// is carried by sites {-1, -1/2, 0} after evolution, the right by {0, 1/2, 1};
// the two commute elementwise.
class Scenario {
  public:
    explicit Scenario(ScenarioSpec spec);

    const ScenarioSpec& spec() const { return spec_; }
    const Dynamics& dynamics() const { return dyn_; }

    // Spin components: left triple (U_-1, b(U_-1/2), i U_-1 b(U_-1/2)),
    // right triple (U_1, b(U_1/2), i U_1 b(U_1/2)), j in {1, 2, 3}.
    AlgebraElement spin_left(int j) const;
    AlgebraElement spin_right(int j) const;

    // Minimal projections 1/2 (1 + a . sigma); the right side flips the signs
    // of the second and third components, matching the singlet convention
    // below. Flipping the third is the same as using i Y X in place of i X Y.
    AlgebraElement event_a(const UnitVector3& a) const;
    AlgebraElement event_b(const UnitVector3& b) const;
    AlgebraElement event_a(int m) const { return event_a(spec_.a.at(m - 1)); }
    AlgebraElement event_b(int n) const { return event_b(spec_.b.at(n - 1)); }

    // 2x2 matrix units of the left/right qubit algebra, indices in {1, 2}:
    // e11 = (1 + Y)/2, e22 = (1 - Y)/2, e12 = e11 X, e21 = e22 X.
    AlgebraElement matrix_unit_left(int j, int k) const;
    AlgebraElement matrix_unit_right(int j, int k) const;

    // Singlet-like density 2 (e11 e11 + e22 e22 - e12 e12 - e21 e21); four
    // times a projection, so positive.
    AlgebraElement singlet_density() const;

    // rho_lambda = lambda rho_s + (1 - lambda) 1.
    AlgebraElement state_density() const;

    // Trace functional value of rho x (coefficient of the identity).
    cplx phi(const AlgebraElement& x) const;

    double probability(const AlgebraElement& event) const;

    // corr(a, b) = phi(rho A B) - phi(rho A) phi(rho B), and its closed form
    // -(lambda / 4) <a, b>.
    double correlation(const UnitVector3& a, const UnitVector3& b) const;
    double correlation_closed(const UnitVector3& a, const UnitVector3& b) const;

    // Clauser-Horne combination p11 + p12 + p21 - p22 - p(A1) - p(B1); the
    // classical range is [-1, 0].
    double ch_value() const;
    double ch_closed() const;
    bool violates_ch(double tol = kDefaultTol) const;

    // CHSH combination E11 + E12 + E21 - E22 with E = 4 corr; classical
    // bound |CHSH| <= 2.
    double chsh_value() const;
    double chsh_closed() const;

    // Self-adjointness, unit trace, and positive spectrum of rho_lambda in
    // the matrix representation.
    bool state_is_valid(double tol = kDefaultTol) const;

  private:
    ScenarioSpec spec_;
    Dynamics dyn_;
    std::array<AlgebraElement, 3> sigma_left_;
    std::array<AlgebraElement, 3> sigma_right_;
};

// Lightlike-rectangle regions of the setup: the left/right measurement
// regions and the cause region sitting in their common past.
DoubleCone event_region_left();   // [-1, 0] x {1}, generators U_-1, b(U_-1/2)
DoubleCone event_region_right();  // {1} x [-1, 0], generators U_1, b(U_1/2)
DoubleCone cause_region();        // [-1, 0] x [-1, 0], sites {-1/2, 0, 1/2}

}  // namespace ising
