#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ising/common_cause.hpp"
#include "ising/geometry.hpp"
#include "ising/scenario.hpp"

using namespace ising;

namespace {

Monomial mono(std::initializer_list<int> doubled) {
    std::vector<SiteIndex> sites;
    for (int d : doubled) sites.push_back(SiteIndex::from_doubled(d));
    return Monomial{std::move(sites)};
}

AlgebraElement half_plus(const AlgebraElement& x) {
    return (AlgebraElement::identity() + x) * cplx{0.5};
}

ScenarioSpec spec_with_lambda(double lambda) {
    ScenarioSpec spec = ScenarioSpec::defaults();
    spec.lambda = lambda;
    return spec;
}

}  // namespace

TEST_CASE("partition validation rejects malformed families") {
    AlgebraElement one = AlgebraElement::identity();
    AlgebraElement p = half_plus(AlgebraElement::generator(SiteIndex::at_integer(0)));

    CHECK_NOTHROW(Partition{{one}}.validate());
    CHECK_NOTHROW(Partition{{p, one - p}}.validate());
    // Not a projection.
    CHECK_THROWS_AS((Partition{{one * cplx{0.5}, one * cplx{0.5}}}.validate()),
                    std::invalid_argument);
    // Overlapping members.
    CHECK_THROWS_AS((Partition{{p, p}}.validate()), std::invalid_argument);
    // Sum misses the unit.
    CHECK_THROWS_AS((Partition{{p}}.validate()), std::invalid_argument);
}

TEST_CASE("conditional expectation is a unital idempotent bimodule map") {
    CommonCauseCandidate cand{UnitVector3(0.0, 1.0, 0.0), UnitVector3(0.0, 0.0, 1.0)};
    Partition part = cand.partition();
    AlgebraElement one = AlgebraElement::identity();
    CHECK((conditional_expectation(part, one) - one).max_abs_coeff() < 1e-12);

    AlgebraElement x = AlgebraElement::generator(SiteIndex::at_integer(0)) +
                       AlgebraElement::from_monomial(mono({-1, 1}), cplx{0.0, 2.0}) +
                       AlgebraElement::identity(cplx{0.5, 0.5});
    AlgebraElement ex = conditional_expectation(part, x);
    CHECK((conditional_expectation(part, ex) - ex).max_abs_coeff() < 1e-12);
    CHECK(std::abs(ex.trace() - x.trace()) < 1e-12);
    for (const auto& ck : part.members)
        CHECK(commutator(ex, ck).max_abs_coeff() < 1e-12);
    // E(C_k x C_k) = C_k x C_k for members of the partition.
    AlgebraElement pinched = part.members[0] * x * part.members[0];
    CHECK((conditional_expectation(part, pinched) - pinched).max_abs_coeff() < 1e-12);
}

TEST_CASE("candidate projections live on the cause sites") {
    CommonCauseCandidate cand{UnitVector3(0.0, 1.0, 0.0), UnitVector3(0.0, 0.0, 1.0)};
    AlgebraElement c = cand.projection();
    CHECK(c.is_projection(1e-12));
    CHECK(std::abs(c.trace() - cplx{0.5, 0.0}) < 1e-12);
    CHECK(supported_in(c, cause_region()));
    CHECK((cand.complement() - (AlgebraElement::identity() - c)).max_abs_coeff() <
          1e-12);
    CHECK_NOTHROW(cand.partition().validate());
}

TEST_CASE("conditional densities match the closed expansion on the exemplars") {
    SUBCASE("lambda 0, opposite dials") {
        UnitVector3 c(0.0, 1.0, 0.0);
        UnitVector3 ct(0.0, -1.0, 0.0);
        Scenario sc(spec_with_lambda(0.0));
        AlgebraElement rho1 =
            conditional_density(candidate_projection(c, ct), sc.state_density());
        AlgebraElement expected = AlgebraElement::identity();
        expected.add_term(mono({-1}), 1.0);  // 1 + U_-1/2
        CHECK((rho1 - expected).max_abs_coeff() < 1e-12);
        CHECK((rho1 - conditional_density_closed(c, ct, 0.0, 1)).max_abs_coeff() <
              1e-12);
    }
    SUBCASE("lambda 1, third-axis dials") {
        UnitVector3 c(0.0, 0.0, -1.0);
        UnitVector3 ct(0.0, 0.0, 1.0);
        Scenario sc(spec_with_lambda(1.0));
        AlgebraElement rho1 =
            conditional_density(candidate_projection(c, ct), sc.state_density());
        AlgebraElement expected = AlgebraElement::identity();
        expected.add_term(mono({-1, 1}), 1.0);            // U_-1/2 U_1/2
        expected.add_term(mono({-1, 0}), cplx{0.0, 1.0});  // i U_-1/2 U_0
        expected.add_term(mono({0, 1}), cplx{0.0, -1.0});  // -i U_0 U_1/2
        CHECK((rho1 - expected).max_abs_coeff() < 1e-12);
        CHECK((rho1 - conditional_density_closed(c, ct, 1.0, 1)).max_abs_coeff() <
              1e-12);
    }
    SUBCASE("conditional densities are unit-trace states") {
        UnitVector3 c(0.6, 0.0, 0.8);
        UnitVector3 ct(0.0, 0.8, -0.6);
        Scenario sc(spec_with_lambda(0.7));
        CommonCauseCandidate cand{c, ct};
        for (int k = 1; k <= 2; ++k) {
            AlgebraElement rk = conditional_density(
                k == 1 ? cand.projection() : cand.complement(), sc.state_density());
            CHECK(std::abs(rk.trace() - cplx{1.0, 0.0}) < 1e-12);
            CHECK(rk.is_hermitian(1e-12));
            CHECK((rk - conditional_density_closed(c, ct, 0.7, k)).max_abs_coeff() <
                  1e-9);
        }
    }
}

TEST_CASE("equatorial dials screen off the default correlations") {
    Scenario sc(ScenarioSpec::defaults());
    CommonCauseCandidate cand{UnitVector3(0.0, 1.0, 0.0), UnitVector3(0.0, 0.0, 1.0)};
    JointReport report = joint_cc_check(cand.partition(), sc);
    CHECK(report.pass);
    CHECK(report.criterion.pass);
    CHECK(report.criterion.entries.size() == 8);
    CHECK(report.criterion.max_residual < 1e-9);
    CHECK(report.localized_in_cause_region);
    CHECK(report.cause_region_in_common_past);
    // The witness is genuinely noncommuting: some event commutator is large.
    double best = 0.0;
    for (const auto& [name, value] : report.commutator_norms)
        best = std::max(best, value);
    CHECK(best > 0.1);
}

TEST_CASE("first-axis dials fail against first-axis measurements") {
    ScenarioSpec spec = ScenarioSpec::defaults();
    spec.a[0] = UnitVector3(1.0, 0.0, 0.0);
    spec.b[0] = UnitVector3(1.0, 0.0, 0.0);
    Scenario sc(spec);
    CommonCauseCandidate cand{UnitVector3(1.0, 0.0, 0.0), UnitVector3(1.0, 0.0, 0.0)};
    CriterionReport report = cc_criterion(cand.partition(), sc);
    CHECK_FALSE(report.pass);
    REQUIRE(!report.entries.empty());
    const CriterionEntry& first = report.entries.front();
    CHECK(first.m == 1);
    CHECK(first.n == 1);
    CHECK(first.k == 1);
    CHECK(first.rho_form);
    CHECK(first.residual == doctest::Approx(-0.25).epsilon(1e-9));
    // Four times the trace-form residual reproduces the closed formula.
    double closed = residual_closed_form(spec.a[0], spec.b[0], cand.c, cand.c_tilde,
                                         1.0);
    CHECK(4.0 * first.residual == doctest::Approx(closed).epsilon(1e-9));
}

TEST_CASE("trivial partition does not screen off a correlated pair") {
    Scenario sc(ScenarioSpec::defaults());
    Partition trivial{{AlgebraElement::identity()}};
    CriterionReport report = cc_criterion(trivial, sc);
    CHECK_FALSE(report.pass);
    // With E = id the residual is exactly the correlation.
    const ScenarioSpec& spec = sc.spec();
    CHECK(report.entries.front().residual ==
          doctest::Approx(sc.correlation(spec.a[0], spec.b[0])).epsilon(1e-12));
}

TEST_CASE("noncommuting events are rejected up front") {
    AlgebraElement pa = half_plus(AlgebraElement::generator(SiteIndex::at_integer(0)));
    AlgebraElement pb = half_plus(AlgebraElement::generator(SiteIndex::at_half(0)));
    Partition trivial{{AlgebraElement::identity()}};
    CHECK_THROWS_AS(criterion_entries(trivial, pa, pb, AlgebraElement::identity(),
                                      1e-9),
                    std::invalid_argument);
}

TEST_CASE("general conditional form agrees with the density form") {
    Scenario sc(spec_with_lambda(0.8));
    AlgebraElement rho = sc.state_density();
    CommonCauseCandidate cand{UnitVector3(0.0, 0.6, 0.8), UnitVector3(0.0, 1.0, 0.0)};
    Partition part = cand.partition();
    AlgebraElement a = sc.event_a(1);
    AlgebraElement b = sc.event_b(2);
    AlgebraElement ap = AlgebraElement::identity() - a;
    AlgebraElement bp = AlgebraElement::identity() - b;

    auto entries = criterion_entries(part, a, b, rho, 1e-9, 1, 2);
    REQUIRE(entries.size() == 2);
    for (const auto& e : entries) {
        REQUIRE(e.rho_form);
        const AlgebraElement& ck = part.members[e.k - 1];
        auto phi_e = [&](const AlgebraElement& x) {
            return (rho * conditional_expectation(part, x * ck)).trace().real();
        };
        double lhs = phi_e(a * b) * phi_e(ap * bp);
        double rhs = phi_e(a * bp) * phi_e(ap * b);
        // phi(E(x C_k)) = 1/2 tr(rho_k x), so the products pick up 1/4.
        CHECK(lhs - rhs == doctest::Approx(0.25 * e.residual).epsilon(1e-9));
    }
}

TEST_CASE("four-member refinements run through the general form") {
    Scenario sc(ScenarioSpec::defaults());
    AlgebraElement rho = sc.state_density();
    // P = U_-1/2 U_1/2 commutes with the dial triple; the four products
    // 1/2 (1 +- P) 1/2 (1 +- c . sigma') form a partition of trace-1/4
    // projections.
    AlgebraElement pair = AlgebraElement::from_monomial(mono({-1, 1}), 1.0);
    UnitVector3 c(0.0, 1.0, 0.0);
    AlgebraElement dial = AlgebraElement::generator(SiteIndex::at_half(0));
    std::vector<AlgebraElement> members;
    for (int s : {1, -1})
        for (int t : {1, -1})
            members.push_back(half_plus(pair * cplx{double(s)}) *
                              half_plus(dial * cplx{double(t)}));
    Partition refined{members};
    CHECK_NOTHROW(refined.validate());

    CriterionReport report = cc_criterion(refined, sc);
    CHECK(report.entries.size() == 16);
    for (const auto& e : report.entries) {
        CHECK_FALSE(e.rho_form);
        const AlgebraElement& ck = refined.members[e.k - 1];
        CHECK(std::abs(ck.trace().real() - 0.25) < 1e-12);
        if (e.vacuous) {
            CHECK(std::abs((rho * ck).trace()) <= 1e-9);
            continue;
        }
        AlgebraElement a = sc.event_a(e.m);
        AlgebraElement b = sc.event_b(e.n);
        AlgebraElement ap = AlgebraElement::identity() - a;
        AlgebraElement bp = AlgebraElement::identity() - b;
        auto phi_e = [&](const AlgebraElement& x) {
            return (rho * conditional_expectation(refined, x * ck)).trace().real();
        };
        CHECK(e.lhs == doctest::Approx(phi_e(a * b) * phi_e(ap * bp)).epsilon(1e-12));
        CHECK(e.rhs == doctest::Approx(phi_e(a * bp) * phi_e(ap * b)).epsilon(1e-12));
    }
}

TEST_CASE("residual closed form matches the criterion across couplings") {
    const double grid[] = {0.0, 0.3, 1.0};
    for (double lambda : grid) {
        ScenarioSpec spec = spec_with_lambda(lambda);
        spec.a[0] = UnitVector3(0.0, 0.6, 0.8);
        spec.b[0] = UnitVector3(0.28, 0.0, 0.96);
        Scenario sc(spec);
        UnitVector3 c(0.48, 0.6, 0.64);
        UnitVector3 ct(0.0, 0.0, 1.0);
        CommonCauseCandidate cand{c, ct};
        auto entries = criterion_entries(cand.partition(), sc.event_a(1),
                                         sc.event_b(1), sc.state_density(), 1e-9, 1,
                                         1);
        double closed = residual_closed_form(spec.a[0], spec.b[0], c, ct, lambda);
        for (const auto& e : entries)
            CHECK(4.0 * e.residual == doctest::Approx(closed).epsilon(1e-9));
    }
}

TEST_CASE("sphere grid is deterministic and hits the equator node") {
    auto grid = fibonacci_sphere(41);
    REQUIRE(grid.size() == 41);
    CHECK(grid[20][0] == 0.0);  // odd count puts one node exactly on c1 = 0
    for (const auto& v : grid)
        CHECK(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] == doctest::Approx(1.0));
    CHECK_THROWS_AS(fibonacci_sphere(1), std::invalid_argument);
}

TEST_CASE("search finds exactly the equatorial dial row at full coupling") {
    Scenario sc(ScenarioSpec::defaults());
    auto hits = search_common_causes(sc, 41);
    CHECK(hits.size() == 41);
    for (const auto& hit : hits) {
        CHECK(hit.i == 20);
        CHECK(hit.c[0] == 0.0);
        CHECK(hit.max_residual <= 1e-9);
    }
    auto rerun = search_common_causes(sc, 41);
    REQUIRE(rerun.size() == hits.size());
    for (std::size_t idx = 0; idx < hits.size(); ++idx) {
        CHECK(rerun[idx].i == hits[idx].i);
        CHECK(rerun[idx].j == hits[idx].j);
        CHECK(rerun[idx].max_residual == hits[idx].max_residual);
    }
}

TEST_CASE("search at zero coupling accepts the whole grid") {
    Scenario sc(spec_with_lambda(0.0));
    auto hits = search_common_causes(sc, 15);
    CHECK(hits.size() == 15 * 15);
}

TEST_CASE("third-axis measurements admit no grid candidate at full coupling") {
    ScenarioSpec spec = ScenarioSpec::defaults();
    spec.a[0] = UnitVector3(0.0, 0.0, 1.0);
    spec.b[0] = UnitVector3(0.0, 0.0, 1.0);
    Scenario sc(spec);
    auto hits = search_common_causes(sc, 41);
    // Screening now requires c3^2 = 1 exactly, which the grid never meets.
    CHECK(hits.empty());
}

TEST_CASE("commuting projections rescale the correlations instead of screening") {
    Scenario sc(ScenarioSpec::defaults());
    ObstructionReport report = commuting_jcc_obstruction(sc);
    CHECK(report.commutant_dimension == 1);
    CHECK(report.obstruction_established);
    REQUIRE(report.candidates.size() == 2);
    for (const auto& cand : report.candidates) {
        CHECK(cand.d == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(cand.commutes_with_events);
        CHECK(cand.matches);
        CHECK(cand.max_deviation < 1e-12);
        REQUIRE(cand.pairs.size() == 4);
    }
    // Frozen value: d^2 corr(a1, b1) = -1/(16 sqrt(2)) at lambda = 1.
    const auto& pair = report.candidates.front().pairs.front();
    CHECK(pair.m == 1);
    CHECK(pair.n == 1);
    CHECK(pair.residual == doctest::Approx(-0.04419417382415922).epsilon(1e-12));

    Scenario uncorrelated(spec_with_lambda(0.0));
    ObstructionReport off = commuting_jcc_obstruction(uncorrelated);
    CHECK(off.commutant_dimension == 1);
    CHECK_FALSE(off.obstruction_established);  // nothing left to obstruct
}

TEST_CASE("reports serialize with the expected shape") {
    Scenario sc(ScenarioSpec::defaults());
    CommonCauseCandidate cand{UnitVector3(0.0, 1.0, 0.0), UnitVector3(0.0, 0.0, 1.0)};
    JointReport report = joint_cc_check(cand.partition(), sc);
    nlohmann::ordered_json j = to_json(report, &cand);
    CHECK(j.contains("candidate"));
    CHECK(j["residuals"].size() == 8);
    CHECK(j["commutator_norms"].contains("A1"));
    CHECK(j["commutator_norms"].contains("B2"));
    CHECK(j["localization"]["in_cause_region"].get<bool>());
    CHECK(j["pass"].get<bool>());

    nlohmann::ordered_json obs = to_json(commuting_jcc_obstruction(sc));
    CHECK(obs["commutant_dimension"].get<int>() == 1);
    CHECK(obs["candidates"].size() == 2);
    CHECK(obs["obstruction_established"].get<bool>());
}
