#pragma once

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "ising/element.hpp"
#include "ising/scenario.hpp"

namespace ising {

// Partition of unity: mutually orthogonal projections summing to 1.
struct Partition {
    std::vector<AlgebraElement> members;

    // Throws std::invalid_argument when a member fails the projection test,
    // two members overlap, or the sum misses the unit (all at tol).
    void validate(double tol = kDefaultTol) const;
};

// E(x) = sum_k C_k x C_k; unital, positive, idempotent.
AlgebraElement conditional_expectation(const Partition& p, const AlgebraElement& x);

// Rank-2 projection of the cause algebra on sites {-1/2, 0, 1/2}:
// C(c, c~) = 1/4 (1 + U_-1/2 U_1/2)(1 + c1 U_0 + c2 U_1/2 + c3 i U_0 U_1/2)
//          + 1/4 (1 - U_-1/2 U_1/2)(1 + c~1 U_0 + c~2 U_1/2 + c~3 i U_0 U_1/2).
AlgebraElement candidate_projection(const UnitVector3& c, const UnitVector3& c_tilde);

struct CommonCauseCandidate {
    UnitVector3 c;
    UnitVector3 c_tilde;

    AlgebraElement projection() const;  // C(c, c~)
    AlgebraElement complement() const;  // C(-c, -c~)
    Partition partition() const;        // {C, C_perp}
};

// rho_k = 2 C_k rho C_k; a normalized density exactly when trace(C_k) = 1/2.
AlgebraElement conditional_density(const AlgebraElement& ck, const AlgebraElement& rho);

// Closed-form expansion of 2 C rho_lambda C for the theta = 0 dynamics;
// k = 1 uses (c, c~), k = 2 substitutes (-c, -c~).
AlgebraElement conditional_density_closed(const UnitVector3& c, const UnitVector3& c_tilde,
                                          double lambda, int k);

// Four times the trace-form criterion residual for the candidate family
// under the theta = 0 dynamics:
// lambda c1 c2 (a2 b1 - a1 b2) - lambda c1^2 (a1 b1 + a2 b2)
//   - (lambda - (1+lambda)^2 c3^2 / 4 + (1-lambda)^2 c~3^2 / 4) a3 b3.
double residual_closed_form(const UnitVector3& a, const UnitVector3& b,
                            const UnitVector3& c, const UnitVector3& c_tilde,
                            double lambda);

// One screening-off equation: lhs = t(A B) t(A~B~), rhs = t(A B~) t(A~B)
// where t is the conditional trace for member k and X~ = 1 - X.
struct CriterionEntry {
    int k = 0;
    int m = 0;
    int n = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    bool vacuous = false;   // phi(rho C_k) = 0: satisfied by convention
    bool rho_form = false;  // trace-1/2 member, conditional density used
};

struct CriterionReport {
    std::vector<CriterionEntry> entries;
    double max_residual = 0.0;  // over non-vacuous entries
    double tol = kDefaultTol;
    bool pass = false;
};

// Entries for one event pair, one per partition member.  The conditional
// trace uses rho_k = 2 C_k rho C_k when trace(C_k) = 1/2 and the general
// (phi o E) form otherwise; when both apply they are cross-checked.
std::vector<CriterionEntry> criterion_entries(const Partition& p,
                                              const AlgebraElement& event_a,
                                              const AlgebraElement& event_b,
                                              const AlgebraElement& rho, double tol,
                                              int m = 0, int n = 0);

// All four correlations (m, n) of the scenario against one partition.
CriterionReport cc_criterion(const Partition& p, const Scenario& sc,
                             double tol = kDefaultTol);

struct JointReport {
    CriterionReport criterion;
    bool localized_in_cause_region = false;
    bool cause_region_in_common_past = false;
    // HS norms of [C_1, event], keyed "A1", "A2", "B1", "B2".
    std::vector<std::pair<std::string, double>> commutator_norms;
    bool pass = false;
};

JointReport joint_cc_check(const Partition& p, const Scenario& sc,
                           double tol = kDefaultTol);

nlohmann::ordered_json to_json(const CriterionReport& report);
nlohmann::ordered_json to_json(const JointReport& report,
                               const CommonCauseCandidate* candidate = nullptr);

// Deterministic unit-vector grid with the first component as polar axis;
// odd n places a node exactly on the c1 = 0 equator.
std::vector<UnitVector3> fibonacci_sphere(int n);

struct SearchHit {
    int i = 0;  // grid index of c
    int j = 0;  // grid index of c~
    UnitVector3 c;
    UnitVector3 c_tilde;
    double max_residual = 0.0;
};

// Scans the grid_n^2 candidate pairs in grid order and returns those whose
// eight criterion equations all pass at tol.  grid_n must be at least 2.
std::vector<SearchHit> search_common_causes(const Scenario& sc, int grid_n,
                                            double tol = kDefaultTol);

nlohmann::ordered_json to_json(const std::vector<SearchHit>& hits);

// No commuting partition can screen off the correlations: the relative
// commutant of the event algebra inside its own span is trivial, and any
// projection commuting through its unit component rescales each correlation
// by d^2 = trace(C)^2 instead of cancelling it.
struct ObstructionPairCheck {
    int m = 0;
    int n = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // lhs - rhs
    double expected = 0.0;  // d^2 * corr(a_m, b_n)
};

struct ObstructionCandidateCheck {
    std::string label;
    double d = 0.0;  // trace of the commuting projection
    std::vector<ObstructionPairCheck> pairs;
    double max_deviation = 0.0;  // |residual - expected| over pairs
    bool matches = false;
    bool commutes_with_events = false;
};

struct ObstructionReport {
    int commutant_dimension = 0;
    std::vector<ObstructionCandidateCheck> candidates;
    bool obstruction_established = false;
};

ObstructionReport commuting_jcc_obstruction(const Scenario& sc,
                                            double tol = kDefaultTol);

nlohmann::ordered_json to_json(const ObstructionReport& report);

}  // namespace ising
