#include "ising/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "ising/oracle.hpp"

namespace ising {

UnitVector3::UnitVector3(double c1, double c2, double c3) : c{c1, c2, c3} {
    double norm = std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
    if (std::abs(norm - 1.0) > kUnitTol)
        throw std::invalid_argument("UnitVector3: vector is not normalized");
}

double dot(const UnitVector3& u, const UnitVector3& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

ScenarioSpec ScenarioSpec::defaults() {
    const double s = 1.0 / std::sqrt(2.0);
    return ScenarioSpec{
        {UnitVector3{0.0, 1.0, 0.0}, UnitVector3{1.0, 0.0, 0.0}},
        {UnitVector3{s, s, 0.0}, UnitVector3{-s, s, 0.0}},
        1.0,
        DynamicsParams{},
    };
}

namespace {

UnitVector3 vector_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument("direction: expected an array of 3 numbers");
    return UnitVector3{j.at(0).get<double>(), j.at(1).get<double>(),
                       j.at(2).get<double>()};
}

}  // namespace

ScenarioSpec ScenarioSpec::from_json(const nlohmann::json& j) {
    ScenarioSpec spec = defaults();
    if (j.contains("a")) {
        const auto& a = j.at("a");
        if (!a.is_array() || a.size() != 2)
            throw std::invalid_argument("scenario: \"a\" must hold 2 directions");
        spec.a = {vector_from_json(a.at(0)), vector_from_json(a.at(1))};
    }
    if (j.contains("b")) {
        const auto& b = j.at("b");
        if (!b.is_array() || b.size() != 2)
            throw std::invalid_argument("scenario: \"b\" must hold 2 directions");
        spec.b = {vector_from_json(b.at(0)), vector_from_json(b.at(1))};
    }
    if (j.contains("lambda")) spec.lambda = j.at("lambda").get<double>();
    if (j.contains("dynamics")) {
        const auto& d = j.at("dynamics");
        if (d.contains("theta1")) spec.dynamics.theta1 = d.at("theta1").get<double>();
        if (d.contains("theta2")) spec.dynamics.theta2 = d.at("theta2").get<double>();
        if (d.contains("eta1")) spec.dynamics.eta1 = d.at("eta1").get<double>();
        if (d.contains("eta2")) spec.dynamics.eta2 = d.at("eta2").get<double>();
    }
    spec.validate();
    return spec;
}

nlohmann::ordered_json ScenarioSpec::to_json() const {
    nlohmann::ordered_json j;
    j["a"] = {{a[0][0], a[0][1], a[0][2]}, {a[1][0], a[1][1], a[1][2]}};
    j["b"] = {{b[0][0], b[0][1], b[0][2]}, {b[1][0], b[1][1], b[1][2]}};
    j["lambda"] = lambda;
    j["dynamics"] = {{"theta1", dynamics.theta1},
                     {"theta2", dynamics.theta2},
                     {"eta1", dynamics.eta1},
                     {"eta2", dynamics.eta2}};
    return j;
}

void ScenarioSpec::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("scenario: lambda must lie in [0, 1]");
    dynamics.validate();
}

Scenario::Scenario(ScenarioSpec spec) : spec_(std::move(spec)), dyn_(spec_.dynamics) {
    spec_.validate();
    const cplx i{0.0, 1.0};
    AlgebraElement xl = AlgebraElement::generator(SiteIndex::at_integer(-1));
    AlgebraElement yl = dyn_.generator_image(SiteIndex::at_half(-1));
    AlgebraElement xr = AlgebraElement::generator(SiteIndex::at_integer(1));
    AlgebraElement yr = dyn_.generator_image(SiteIndex::at_half(0));
    sigma_left_ = {xl, yl, (xl * yl) * i};
    sigma_right_ = {xr, yr, (xr * yr) * i};
}

AlgebraElement Scenario::spin_left(int j) const { return sigma_left_.at(j - 1); }

AlgebraElement Scenario::spin_right(int j) const { return sigma_right_.at(j - 1); }

AlgebraElement Scenario::event_a(const UnitVector3& a) const {
    AlgebraElement x = AlgebraElement::identity();
    x += sigma_left_[0] * cplx{a[0]};
    x += sigma_left_[1] * cplx{a[1]};
    x += sigma_left_[2] * cplx{a[2]};
    return x * cplx{0.5};
}

AlgebraElement Scenario::event_b(const UnitVector3& b) const {
    AlgebraElement x = AlgebraElement::identity();
    x += sigma_right_[0] * cplx{b[0]};
    x += sigma_right_[1] * cplx{-b[1]};
    x += sigma_right_[2] * cplx{-b[2]};
    return x * cplx{0.5};
}

namespace {

AlgebraElement matrix_unit(const std::array<AlgebraElement, 3>& sigma, int j, int k) {
    const cplx half{0.5};
    AlgebraElement diag_plus = (AlgebraElement::identity() + sigma[1]) * half;
    AlgebraElement diag_minus = (AlgebraElement::identity() - sigma[1]) * half;
    if (j == 1 && k == 1) return diag_plus;
    if (j == 2 && k == 2) return diag_minus;
    if (j == 1 && k == 2) return diag_plus * sigma[0];
    if (j == 2 && k == 1) return diag_minus * sigma[0];
    throw std::invalid_argument("matrix_unit: indices must lie in {1, 2}");
}

}  // namespace

AlgebraElement Scenario::matrix_unit_left(int j, int k) const {
    return matrix_unit(sigma_left_, j, k);
}

AlgebraElement Scenario::matrix_unit_right(int j, int k) const {
    return matrix_unit(sigma_right_, j, k);
}

AlgebraElement Scenario::singlet_density() const {
    AlgebraElement rho = matrix_unit_left(1, 1) * matrix_unit_right(1, 1);
    rho += matrix_unit_left(2, 2) * matrix_unit_right(2, 2);
    rho -= matrix_unit_left(1, 2) * matrix_unit_right(1, 2);
    rho -= matrix_unit_left(2, 1) * matrix_unit_right(2, 1);
    return rho * cplx{2.0};
}

AlgebraElement Scenario::state_density() const {
    return singlet_density() * cplx{spec_.lambda} +
           AlgebraElement::identity() * cplx{1.0 - spec_.lambda};
}

cplx Scenario::phi(const AlgebraElement& x) const {
    return (state_density() * x).trace();
}

double Scenario::probability(const AlgebraElement& event) const {
    return phi(event).real();
}

double Scenario::correlation(const UnitVector3& a, const UnitVector3& b) const {
    AlgebraElement ea = event_a(a);
    AlgebraElement eb = event_b(b);
    return phi(ea * eb).real() - phi(ea).real() * phi(eb).real();
}

double Scenario::correlation_closed(const UnitVector3& a, const UnitVector3& b) const {
    return -0.25 * spec_.lambda * dot(a, b);
}

double Scenario::ch_value() const {
    double p11 = probability(event_a(1) * event_b(1));
    double p12 = probability(event_a(1) * event_b(2));
    double p21 = probability(event_a(2) * event_b(1));
    double p22 = probability(event_a(2) * event_b(2));
    return p11 + p12 + p21 - p22 - probability(event_a(1)) - probability(event_b(1));
}

double Scenario::ch_closed() const {
    double s = dot(spec_.a[0], spec_.b[0]) + dot(spec_.a[0], spec_.b[1]) +
               dot(spec_.a[1], spec_.b[0]) - dot(spec_.a[1], spec_.b[1]);
    return -0.5 - 0.25 * spec_.lambda * s;
}

bool Scenario::violates_ch(double tol) const { return ch_value() < -1.0 - tol; }

double Scenario::chsh_value() const {
    auto e = [this](int m, int n) {
        AlgebraElement da = event_a(m) * cplx{2.0} - AlgebraElement::identity();
        AlgebraElement db = event_b(n) * cplx{2.0} - AlgebraElement::identity();
        return phi(da * db).real();
    };
    return e(1, 1) + e(1, 2) + e(2, 1) - e(2, 2);
}

double Scenario::chsh_closed() const {
    double s = dot(spec_.a[0], spec_.b[0]) + dot(spec_.a[0], spec_.b[1]) +
               dot(spec_.a[1], spec_.b[0]) - dot(spec_.a[1], spec_.b[1]);
    return -spec_.lambda * s;
}

bool Scenario::state_is_valid(double tol) const {
    AlgebraElement rho = state_density();
    if (!rho.is_hermitian(tol)) return false;
    if (std::abs(rho.trace() - cplx{1.0}) > tol) return false;
    QubitWindow w = covering_window(rho);
    auto [lo, hi] = spectrum_bounds(rho, w, tol);
    (void)hi;
    return lo >= -tol;
}

DoubleCone event_region_left() { return DoubleCone{-1, 0, 1, 1}; }

DoubleCone event_region_right() { return DoubleCone{1, 1, -1, 0}; }

DoubleCone cause_region() { return DoubleCone{-1, 0, -1, 0}; }

}  // namespace ising
