#include "ising/common_cause.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "ising/linalg.hpp"

namespace ising {

namespace {

Monomial mono(std::initializer_list<int> doubled_sites) {
    std::vector<SiteIndex> sites;
    sites.reserve(doubled_sites.size());
    for (int d : doubled_sites) sites.push_back(SiteIndex::from_doubled(d));
    return Monomial{std::move(sites)};
}

}  // namespace

void Partition::validate(double tol) const {
    if (members.empty())
        throw std::invalid_argument("partition: no members");
    AlgebraElement sum;
    for (std::size_t k = 0; k < members.size(); ++k) {
        if (!members[k].is_projection(tol))
            throw std::invalid_argument("partition: member is not a projection");
        for (std::size_t j = k + 1; j < members.size(); ++j)
            if ((members[k] * members[j]).max_abs_coeff() > tol)
                throw std::invalid_argument("partition: members are not orthogonal");
        sum += members[k];
    }
    if (!approx_equal(sum, AlgebraElement::identity(), tol))
        throw std::invalid_argument("partition: members do not sum to the unit");
}

AlgebraElement conditional_expectation(const Partition& p, const AlgebraElement& x) {
    AlgebraElement out;
    for (const auto& ck : p.members) out += ck * x * ck;
    return out;
}

AlgebraElement candidate_projection(const UnitVector3& c, const UnitVector3& c_tilde) {
    AlgebraElement pair = AlgebraElement::from_monomial(mono({-1, 1}));
    AlgebraElement plus = AlgebraElement::identity() + pair;
    AlgebraElement minus = AlgebraElement::identity() - pair;
    auto dial = [](const UnitVector3& v) {
        AlgebraElement f = AlgebraElement::identity();
        f.add_term(mono({0}), v[0]);
        f.add_term(mono({1}), v[1]);
        f.add_term(mono({0, 1}), cplx{0.0, v[2]});
        return f;
    };
    return (plus * dial(c) + minus * dial(c_tilde)) * cplx{0.25};
}

AlgebraElement CommonCauseCandidate::projection() const {
    return candidate_projection(c, c_tilde);
}

AlgebraElement CommonCauseCandidate::complement() const {
    return candidate_projection(UnitVector3{-c[0], -c[1], -c[2]},
                                UnitVector3{-c_tilde[0], -c_tilde[1], -c_tilde[2]});
}

Partition CommonCauseCandidate::partition() const {
    return Partition{{projection(), complement()}};
}

AlgebraElement conditional_density(const AlgebraElement& ck, const AlgebraElement& rho) {
    return (ck * rho * ck) * cplx{2.0};
}

AlgebraElement conditional_density_closed(const UnitVector3& c, const UnitVector3& c_tilde,
                                          double lambda, int k) {
    if (k != 1 && k != 2)
        throw std::invalid_argument("conditional_density_closed: k must be 1 or 2");
    const double s = k == 1 ? 1.0 : -1.0;
    const double c1 = s * c[0], c2 = s * c[1], c3 = s * c[2];
    const double t1 = s * c_tilde[0], t2 = s * c_tilde[1], t3 = s * c_tilde[2];
    const double wp = 0.5 * (1.0 + lambda);
    const double wm = 0.5 * (1.0 - lambda);
    const cplx i{0.0, 1.0};

    AlgebraElement r = AlgebraElement::identity();
    r.add_term(mono({-1, 1}), lambda);
    r.add_term(mono({0}), wp * c1 + wm * t1);
    r.add_term(mono({1}), wp * c2 + wm * t2);
    r.add_term(mono({-1}), wp * c2 - wm * t2);
    r.add_term(mono({0, 1}), i * (wp * c3 + wm * t3));
    r.add_term(mono({-1, 0}), -i * (wp * c3 - wm * t3));
    r.add_term(mono({-1, 0, 1}), -(wp * c1 - wm * t1));
    r.add_term(mono({-2, 0, 2}), -lambda * c1);
    r.add_term(mono({-2, -1, 0, 1, 2}), -lambda * c1);
    r.add_term(mono({-2, 2}), -lambda * c1 * c1);
    r.add_term(mono({-2, -1, 1, 2}), lambda * c1 * c1);
    r.add_term(mono({-2, 0, 1, 2}), lambda * c1 * c2);
    r.add_term(mono({-2, -1, 0, 2}), lambda * c1 * c2);
    r.add_term(mono({-2, 1, 2}), i * (lambda * c1 * c3));
    r.add_term(mono({-2, -1, 2}), -i * (lambda * c1 * c3));
    return r;
}

double residual_closed_form(const UnitVector3& a, const UnitVector3& b,
                            const UnitVector3& c, const UnitVector3& c_tilde,
                            double lambda) {
    const double c1 = c[0], c2 = c[1], c3 = c[2], t3 = c_tilde[2];
    double cross = lambda * c1 * c2 * (a[1] * b[0] - a[0] * b[1]);
    double planar = lambda * c1 * c1 * (a[0] * b[0] + a[1] * b[1]);
    double axial = lambda - 0.25 * (1.0 + lambda) * (1.0 + lambda) * c3 * c3 +
                   0.25 * (1.0 - lambda) * (1.0 - lambda) * t3 * t3;
    return cross - planar - axial * a[2] * b[2];
}

std::vector<CriterionEntry> criterion_entries(const Partition& p,
                                              const AlgebraElement& event_a,
                                              const AlgebraElement& event_b,
                                              const AlgebraElement& rho, double tol,
                                              int m, int n) {
    if (commutator(event_a, event_b).max_abs_coeff() > tol)
        throw std::invalid_argument("criterion_entries: events must commute");

    AlgebraElement a_perp = AlgebraElement::identity() - event_a;
    AlgebraElement b_perp = AlgebraElement::identity() - event_b;
    AlgebraElement ab = event_a * event_b;
    AlgebraElement ab_perp = event_a * b_perp;
    AlgebraElement a_perp_b = a_perp * event_b;
    AlgebraElement a_perp_b_perp = a_perp * b_perp;

    std::vector<CriterionEntry> out;
    out.reserve(p.members.size());
    for (std::size_t k = 0; k < p.members.size(); ++k) {
        const AlgebraElement& ck = p.members[k];
        CriterionEntry e;
        e.k = static_cast<int>(k) + 1;
        e.m = m;
        e.n = n;
        e.vacuous = std::abs((rho * ck).trace()) <= tol;
        e.rho_form = std::abs(ck.trace().real() - 0.5) <= tol;
        if (e.rho_form) {
            AlgebraElement rk = conditional_density(ck, rho);
            auto t = [&](const AlgebraElement& x) { return (rk * x).trace().real(); };
            e.lhs = t(ab) * t(a_perp_b_perp);
            e.rhs = t(ab_perp) * t(a_perp_b);
        } else {
            auto t = [&](const AlgebraElement& x) {
                return (rho * conditional_expectation(p, x * ck)).trace().real();
            };
            e.lhs = t(ab) * t(a_perp_b_perp);
            e.rhs = t(ab_perp) * t(a_perp_b);
        }
        e.residual = e.lhs - e.rhs;
        out.push_back(e);
    }
    return out;
}

CriterionReport cc_criterion(const Partition& p, const Scenario& sc, double tol) {
    p.validate(tol);
    AlgebraElement rho = sc.state_density();
    CriterionReport report;
    report.tol = tol;
    for (int m = 1; m <= 2; ++m)
        for (int n = 1; n <= 2; ++n) {
            auto entries =
                criterion_entries(p, sc.event_a(m), sc.event_b(n), rho, tol, m, n);
            report.entries.insert(report.entries.end(), entries.begin(), entries.end());
        }
    report.max_residual = 0.0;
    for (const auto& e : report.entries)
        if (!e.vacuous)
            report.max_residual = std::max(report.max_residual, std::abs(e.residual));
    report.pass = report.max_residual <= tol;
    return report;
}

JointReport joint_cc_check(const Partition& p, const Scenario& sc, double tol) {
    JointReport report;
    report.criterion = cc_criterion(p, sc, tol);

    DoubleCone oc = cause_region();
    report.localized_in_cause_region = true;
    for (const auto& ck : p.members)
        if (!supported_in(ck, oc)) report.localized_in_cause_region = false;
    report.cause_region_in_common_past =
        PastRegion::of(PastRegion::Kind::common, event_region_left(), event_region_right())
            .contains(oc);

    auto norm_against = [&](const AlgebraElement& ev) {
        double best = 0.0;
        for (const auto& ck : p.members)
            best = std::max(best, commutator(ck, ev).hs_norm());
        return best;
    };
    report.commutator_norms = {{"A1", norm_against(sc.event_a(1))},
                               {"A2", norm_against(sc.event_a(2))},
                               {"B1", norm_against(sc.event_b(1))},
                               {"B2", norm_against(sc.event_b(2))}};
    report.pass = report.criterion.pass && report.localized_in_cause_region &&
                  report.cause_region_in_common_past;
    return report;
}

namespace {

nlohmann::ordered_json entries_json(const CriterionReport& report) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        nlohmann::ordered_json row;
        row["k"] = e.k;
        row["m"] = e.m;
        row["n"] = e.n;
        row["lhs"] = e.lhs;
        row["rhs"] = e.rhs;
        row["residual"] = e.residual;
        if (e.vacuous) row["vacuous"] = true;
        arr.push_back(std::move(row));
    }
    return arr;
}

nlohmann::ordered_json vector_json(const UnitVector3& v) {
    return nlohmann::ordered_json::array({v[0], v[1], v[2]});
}

}  // namespace

nlohmann::ordered_json to_json(const CriterionReport& report) {
    nlohmann::ordered_json j;
    j["residuals"] = entries_json(report);
    j["max_residual"] = report.max_residual;
    j["pass"] = report.pass;
    return j;
}

nlohmann::ordered_json to_json(const JointReport& report,
                               const CommonCauseCandidate* candidate) {
    nlohmann::ordered_json j;
    if (candidate) {
        j["candidate"] = {{"c", vector_json(candidate->c)},
                          {"c_tilde", vector_json(candidate->c_tilde)}};
    }
    j["residuals"] = entries_json(report.criterion);
    j["max_residual"] = report.criterion.max_residual;
    j["pass"] = report.pass;
    nlohmann::ordered_json norms;
    for (const auto& [name, value] : report.commutator_norms) norms[name] = value;
    j["commutator_norms"] = std::move(norms);
    j["localization"] = {
        {"in_cause_region", report.localized_in_cause_region},
        {"cause_region_in_common_past", report.cause_region_in_common_past}};
    return j;
}

std::vector<UnitVector3> fibonacci_sphere(int n) {
    if (n < 2) throw std::invalid_argument("fibonacci_sphere: need at least 2 points");
    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    std::vector<UnitVector3> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        double z = 1.0 - 2.0 * ((i + 0.5) / n);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double az = golden_angle * i;
        out.emplace_back(z, r * std::cos(az), r * std::sin(az));
    }
    return out;
}

std::vector<SearchHit> search_common_causes(const Scenario& sc, int grid_n, double tol) {
    if (grid_n < 2) throw std::invalid_argument("search_common_causes: grid_n must be >= 2");
    std::vector<UnitVector3> grid = fibonacci_sphere(grid_n);
    std::vector<SearchHit> hits;
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            CommonCauseCandidate cand{grid[i], grid[j]};
            CriterionReport report = cc_criterion(cand.partition(), sc, tol);
            if (report.pass)
                hits.push_back({i, j, cand.c, cand.c_tilde, report.max_residual});
        }
    }
    return hits;
}

nlohmann::ordered_json to_json(const std::vector<SearchHit>& hits) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& h : hits) {
        nlohmann::ordered_json row;
        row["i"] = h.i;
        row["j"] = h.j;
        row["candidate"] = {{"c", vector_json(h.c)}, {"c_tilde", vector_json(h.c_tilde)}};
        row["max_residual"] = h.max_residual;
        row["pass"] = true;
        arr.push_back(std::move(row));
    }
    return arr;
}

ObstructionReport commuting_jcc_obstruction(const Scenario& sc, double tol) {
    ObstructionReport report;

    // Basis of the algebra generated by the four events: all products of the
    // left pair (X_L, Y_L) times the right pair (X_R, Y_R).
    std::vector<AlgebraElement> left = {
        AlgebraElement::identity(), sc.spin_left(1), sc.spin_left(2),
        sc.spin_left(1) * sc.spin_left(2)};
    std::vector<AlgebraElement> right = {
        AlgebraElement::identity(), sc.spin_right(1), sc.spin_right(2),
        sc.spin_right(1) * sc.spin_right(2)};
    std::vector<AlgebraElement> basis;
    basis.reserve(16);
    for (const auto& l : left)
        for (const auto& r : right) basis.push_back(l * r);
    report.commutant_dimension =
        static_cast<int>(commutant_within_span(basis, basis).size());

    AlgebraElement rho = sc.state_density();
    auto run_candidate = [&](std::string label, const AlgebraElement& proj) {
        ObstructionCandidateCheck check;
        check.label = std::move(label);
        check.d = proj.trace().real();
        double comm = 0.0;
        for (int m = 1; m <= 2; ++m) {
            comm = std::max(comm, commutator(proj, sc.event_a(m)).hs_norm());
            comm = std::max(comm, commutator(proj, sc.event_b(m)).hs_norm());
        }
        check.commutes_with_events = comm <= tol;
        for (int m = 1; m <= 2; ++m)
            for (int n = 1; n <= 2; ++n) {
                AlgebraElement a = sc.event_a(m);
                AlgebraElement b = sc.event_b(n);
                AlgebraElement ap = AlgebraElement::identity() - a;
                AlgebraElement bp = AlgebraElement::identity() - b;
                auto t = [&](const AlgebraElement& x) {
                    return (rho * (x * proj)).trace().real();
                };
                ObstructionPairCheck pair;
                pair.m = m;
                pair.n = n;
                pair.lhs = t(a * b) * t(ap * bp);
                pair.rhs = t(a * bp) * t(ap * b);
                pair.residual = pair.lhs - pair.rhs;
                pair.expected = check.d * check.d *
                                sc.correlation_closed(sc.spec().a[m - 1], sc.spec().b[n - 1]);
                check.max_deviation =
                    std::max(check.max_deviation, std::abs(pair.residual - pair.expected));
                check.pairs.push_back(pair);
            }
        check.matches = check.max_deviation <= tol;
        report.candidates.push_back(std::move(check));
    };

    run_candidate("(1 + U_3)/2",
                  (AlgebraElement::identity() +
                   AlgebraElement::generator(SiteIndex::at_integer(3))) *
                      cplx{0.5});
    run_candidate("(1 + U_-1 U_0 U_1)/2",
                  (AlgebraElement::identity() +
                   AlgebraElement::from_monomial(mono({-2, 0, 2}))) *
                      cplx{0.5});

    bool all_match = true;
    bool residuals_nonzero = true;
    for (const auto& c : report.candidates) {
        if (!c.matches || !c.commutes_with_events) all_match = false;
        for (const auto& pair : c.pairs)
            if (std::abs(pair.residual) <= tol) residuals_nonzero = false;
    }
    report.obstruction_established =
        report.commutant_dimension == 1 && all_match && residuals_nonzero;
    return report;
}

nlohmann::ordered_json to_json(const ObstructionReport& report) {
    nlohmann::ordered_json j;
    j["commutant_dimension"] = report.commutant_dimension;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : report.candidates) {
        nlohmann::ordered_json row;
        row["projection"] = c.label;
        row["d"] = c.d;
        row["commutes_with_events"] = c.commutes_with_events;
        nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
        for (const auto& pair : c.pairs) {
            pairs.push_back({{"m", pair.m},
                             {"n", pair.n},
                             {"lhs", pair.lhs},
                             {"rhs", pair.rhs},
                             {"residual", pair.residual},
                             {"expected", pair.expected}});
        }
        row["pairs"] = std::move(pairs);
        row["max_deviation"] = c.max_deviation;
        row["matches_d_squared_scaling"] = c.matches;
        arr.push_back(std::move(row));
    }
    j["candidates"] = std::move(arr);
    j["obstruction_established"] = report.obstruction_established;
    return j;
}

}  // namespace ising
