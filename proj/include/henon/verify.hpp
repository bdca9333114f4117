#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "henon/morse.hpp"

namespace henon {

/// Every default of the verification battery in one place.
struct VerifyOptions {
    MorseOptions morse;
    std::vector<double> alphas{0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0};
    std::vector<double> ps{2.0, 3.0, 5.0};
    std::vector<int> ns{1, 2, 3};
    std::vector<double> scaling_alphas{2.0, 4.0};
    std::vector<double> form_alphas{0.0, 1.0, 2.0, 4.0};
    std::vector<double> remark_ps{10.0, 20.0, 50.0};
    double transform_tol = 1e-6;    // sup-norm relative
    double scaling_tol = 1e-4;      // relative, per eigenvalue
    double well_tol = 1e-6;
    std::size_t well_intervals = 8192;
    unsigned threads = 0;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool gating = true;
    bool pass = false;
    std::string detail;
};

/// Runs acceptance criteria 1-9 and returns one result per criterion, in order.
/// Progress lines go to `log` when it is non-null.
std::vector<CriterionResult> run_verification(const VerifyOptions& options = {}, std::ostream* log = nullptr);

/// "[PASS] 3 two-route agreement: ..." (non-gating results are tagged).
std::string format_result(const CriterionResult& result);

bool all_gating_pass(const std::vector<CriterionResult>& results);

} // namespace henon
