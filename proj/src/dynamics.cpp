#include "ising/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ising/linalg.hpp"

namespace ising {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

AlgebraElement gen(SiteIndex s) { return AlgebraElement::generator(s); }

}  // namespace

void DynamicsParams::validate() const {
    if (!(theta1 > -kHalfPi && theta1 <= kHalfPi))
        throw std::invalid_argument("DynamicsParams: theta1 outside (-pi/2, pi/2]");
    if (!(theta2 > -kHalfPi && theta2 <= kHalfPi))
        throw std::invalid_argument("DynamicsParams: theta2 outside (-pi/2, pi/2]");
    if (eta1 != 1 && eta1 != -1)
        throw std::invalid_argument("DynamicsParams: eta1 must be +1 or -1");
    if (eta2 != 1 && eta2 != -1)
        throw std::invalid_argument("DynamicsParams: eta2 must be +1 or -1");
}

Dynamics::Dynamics(DynamicsParams p) : params_(p) { params_.validate(); }

AlgebraElement Dynamics::half_site_image(int x) const {
    const double s = std::sin(params_.theta2);
    const double c = std::cos(params_.theta2);
    const double eta = params_.eta2;
    SiteIndex mid = SiteIndex::at_half(x);
    SiteIndex left = SiteIndex::at_integer(x);
    SiteIndex right = SiteIndex::at_integer(x + 1);

    AlgebraElement out = gen(mid) * cplx{eta * s * s};
    out += gen(left) * gen(mid) * gen(right) * cplx{eta * c * c};
    out += (gen(left) * gen(mid) - gen(mid) * gen(right)) * cplx{0.0, s * c};
    return out;
}

AlgebraElement Dynamics::generator_image(SiteIndex site) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(site.doubled);
        if (it != cache_.end()) return it->second;
    }

    AlgebraElement image;
    if (!site.is_integer()) {
        image = half_site_image(site.floor_int());
    } else {
        const int x = site.doubled / 2;
        const double s = std::sin(params_.theta1);
        const double c = std::cos(params_.theta1);
        const double eta = params_.eta1;
        AlgebraElement left = half_site_image(x - 1);   // image of U_{x-1/2}
        AlgebraElement right = half_site_image(x);      // image of U_{x+1/2}
        AlgebraElement u = gen(site);

        image = u * cplx{eta * s * s};
        image += left * u * right * cplx{eta * c * c};
        image += (left * u - u * right) * cplx{0.0, s * c};
    }

    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(site.doubled, std::move(image)).first->second;
}

AlgebraElement Dynamics::evolve(const AlgebraElement& x) const {
    AlgebraElement out(x.prune_threshold());
    for (const auto& [m, coeff] : x.terms()) {
        AlgebraElement prod = AlgebraElement::identity(coeff);
        for (SiteIndex s : m.sites()) prod = prod * generator_image(s);
        out += prod;
    }
    return out;
}

AlgebraElement Dynamics::evolve(const AlgebraElement& x, int steps) const {
    if (steps < 0) throw std::invalid_argument("Dynamics::evolve: negative step count");
    AlgebraElement out = x;
    for (int k = 0; k < steps; ++k) out = evolve(out);
    return out;
}

Monomial shift_monomial(const Monomial& m, int k) {
    std::vector<SiteIndex> sites;
    sites.reserve(m.sites().size());
    for (SiteIndex s : m.sites()) sites.push_back(SiteIndex::from_doubled(s.doubled + 2 * k));
    return Monomial{std::move(sites)};
}

AlgebraElement space_shift(const AlgebraElement& x, int k) {
    AlgebraElement out(x.prune_threshold());
    for (const auto& [m, c] : x.terms()) out.add_term(shift_monomial(m, k), c);
    return out;
}

PrimitiveCausalityReport check_primitive_causality(const Dynamics& dyn, SiteIndex window_lo,
                                                   SiteIndex window_hi, double tol) {
    // Basis of the algebra generated by the two measurement pairs.
    AlgebraElement one = AlgebraElement::identity();
    AlgebraElement xl = gen(SiteIndex::at_integer(-1));
    AlgebraElement yl = dyn.generator_image(SiteIndex::at_half(-1));  // site -1/2
    AlgebraElement xr = gen(SiteIndex::at_integer(1));
    AlgebraElement yr = dyn.generator_image(SiteIndex::at_half(0));   // site +1/2

    std::vector<AlgebraElement> left = {one, xl, yl, xl * yl * cplx{0.0, 1.0}};
    std::vector<AlgebraElement> right = {one, xr, yr, yr * xr * cplx{0.0, 1.0}};

    std::vector<AlgebraElement> spanning;
    for (const auto& m : monomials_in_window(window_lo, window_hi))
        spanning.push_back(AlgebraElement::from_monomial(m));

    PrimitiveCausalityReport report;
    for (const auto& l : left) {
        for (const auto& r : right) {
            double res = span_residual(l * r, spanning);
            report.residuals.push_back(res);
            report.max_residual = std::max(report.max_residual, res);
        }
    }
    report.pass = report.max_residual < tol;
    return report;
}

std::vector<AlgebraElement> cone_generators(const DoubleCone& cone, const Dynamics& dyn) {
    std::vector<AlgebraElement> gens;
    for (const MinimalCone& cell : cone.cells()) {
        // Project the cell onto the surface layer of its own parity and
        // evolve by the integer height difference.
        int parity = ((cell.u + cell.v) % 2 + 2) % 2;  // 0: integer layer, 1: half layer
        int surface_sum = parity == 0 ? 0 : -1;
        int steps2 = cell.u + cell.v - surface_sum;    // = 2 * height
        if (steps2 < 0 || steps2 % 2 != 0)
            throw std::invalid_argument("cone_generators: cell below the Cauchy surface");
        int steps = steps2 / 2;
        MinimalCone base{cell.u - steps, cell.v - steps};
        auto site = base.surface_site();
        if (!site)
            throw std::logic_error("cone_generators: base cell not on the surface");
        gens.push_back(dyn.evolve(gen(*site), steps));
    }
    return gens;
}

int local_algebra_dimension(const DoubleCone& cone, const Dynamics& dyn) {
    std::vector<AlgebraElement> gens = cone_generators(cone, dyn);
    std::vector<AlgebraElement> spanning = {AlgebraElement::identity()};
    spanning.insert(spanning.end(), gens.begin(), gens.end());

    // Close under right multiplication, compressing to a basis each round so
    // the working set stays at the current dimension.
    std::vector<AlgebraElement> basis = span_basis(spanning);
    for (;;) {
        std::vector<AlgebraElement> next = basis;
        for (const auto& x : basis)
            for (const auto& g : gens) next.push_back(x * g);
        std::vector<AlgebraElement> next_basis = span_basis(next);
        if (next_basis.size() == basis.size()) return static_cast<int>(basis.size());
        basis = std::move(next_basis);
    }
}

}  // namespace ising
