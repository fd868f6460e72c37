#pragma once

#include <string>
#include <vector>

namespace ising {

// Outcome of one acceptance check; detail carries the worst observed metric.
struct CheckResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

CheckResult check_correlation_closed_form();  // 1: corr = -lambda/4 <a,b>
CheckResult check_ch_values();                // 2: CH functional values
CheckResult check_chsh_values();              // 3: CHSH values, violation match
CheckResult check_singlet_density_forms();    // 4: matrix-unit expansion
CheckResult check_conditional_density();      // 5: 2 C rho C closed form
CheckResult check_residual_formula();         // 6: closed form = 4x residual
CheckResult check_noncommuting_joint_cause(); // 7: c1 = 0 family passes
CheckResult check_commuting_obstruction();    // 8: trivial commutant, d^2 law
CheckResult check_oracle_agreement();         // 9: symbolic vs matrix algebra
CheckResult check_dynamics_automorphism();    // 10: unitary *-homomorphism
CheckResult check_event_basis_localization(); // 11: event algebra in the shadow
CheckResult check_algebra_dimensions();       // 12: dim A(O) = 2^n(O)

// All twelve in order.
std::vector<CheckResult> run_acceptance_checks();

}  // namespace ising
