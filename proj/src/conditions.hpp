#ifndef TAILKIT_CONDITIONS_HPP
#define TAILKIT_CONDITIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "classify.hpp"
#include "conv.hpp"

namespace tailkit {

// ---- liminf shift condition on convolution powers --------------------------
//
// For each power k <= k_max and shift t, evidence for
//   liminf F^{*k}_bar(x - t) / F^{*k}_bar(x) >= e^{gamma t}.

struct LiminfCell {
    int k = 0;
    double t = 0.0;          // effective (possibly snapped) shift
    double target = 0.0;     // e^{gamma t}
    double min_window_inf = 0.0;
    double slack = 0.0;      // min_window_inf - target
    double valid_up_to = 0.0;
    bool pass = false;
};

struct LiminfReport {
    double gamma = 0.0;
    double tolerance = 0.0;
    std::vector<LiminfCell> cells;
    bool all_pass = false;
};

struct LiminfOptions {
    RatioOptions ratio;
    double x_lo = 0.0;
    double tolerance = 1e-9;
    std::size_t power_max_len = kNaturalLength; // clip for the F^{*k} ladder
};

LiminfReport check_condition_liminf(const TailGrid& f, double gamma, int k_max,
                                    const std::vector<double>& t_ladder,
                                    const LiminfOptions& opts = {});

// ---- minimal n0 for the compound domination condition -----------------------
//
// Smallest n0 >= 1 with sum_{k>n0} p_k V-power-tail(x) <= eps * compound-tail(x)
// at every grid x in the valid range, where the truncated sum is padded with
// its exact error bound (the pmf truncation tail).

enum class N0Variant { k_minus_1, k };

enum class N0Status { found, not_found_within_truncation, inconclusive_by_truncation };

struct N0Report {
    N0Status status = N0Status::inconclusive_by_truncation;
    int n0 = -1;
    double epsilon = 0.0;
    N0Variant variant = N0Variant::k_minus_1;
    std::optional<double> local_t;
    double valid_up_to = 0.0;
    double min_slack = 0.0;       // slack of the found n0 (>= 0)
    double pmf_tail_residual = 0.0;
    double min_rhs = 0.0;         // min of eps * compound over the valid range
};

struct N0Options {
    std::optional<double> local_t;
    std::size_t max_len = kNaturalLength;
    double floor = kDenominatorFloor;
};

N0Report find_minimal_n0(const TailGrid& v, const CountingPmf& tau, double epsilon,
                         N0Variant variant, const N0Options& opts = {});

// ---- D* indicator ----------------------------------------------------------

struct DstarResult {
    double value = 1.0;
    double valid_up_to = 0.0;
};

DstarResult dstar(const TailGrid& v, const CountingPmf& tau,
                  std::optional<double> local_t = std::nullopt,
                  std::size_t max_len = kNaturalLength,
                  double floor = kDenominatorFloor);

// ---- equivalence bridge between the two n0 variants ------------------------
//
// When the (k-1)-variant holds at level eps1, the k-variant must hold at
// level eps1 * D* / p1; the check evaluates both sides on the grid with the
// n0 found for eps1.

struct BridgeReport {
    bool checked = false;       // false when the (k-1) search did not complete
    std::string skip_reason;
    int n0 = -1;
    double epsilon1 = 0.0;
    double dstar_value = 1.0;
    double scaled_epsilon = 0.0; // eps1 * D* / p1
    double min_slack = 0.0;
    bool pass = false;
};

BridgeReport lemma21_bridge_check(const TailGrid& v, const CountingPmf& tau,
                                  double epsilon1, const N0Options& opts = {});

} // namespace tailkit

#endif
