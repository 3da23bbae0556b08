#include "conditions.hpp"

#include <algorithm>
#include <cmath>

namespace tailkit {

LiminfReport check_condition_liminf(const TailGrid& f, double gamma, int k_max,
                                    const std::vector<double>& t_ladder,
                                    const LiminfOptions& opts) {
    if (k_max < 1)
        throw InvalidArgument("k_max must be at least 1");
    if (t_ladder.empty())
        throw InvalidArgument("t ladder must be nonempty");
    if (!(gamma >= 0.0))
        throw InvalidArgument("gamma must be nonnegative");

    LiminfReport rep;
    rep.gamma = gamma;
    rep.tolerance = opts.tolerance;
    rep.all_pass = true;

    const std::size_t max_len =
        opts.power_max_len == kNaturalLength ? f.size() : opts.power_max_len;
    TailGrid power = f;
    for (int k = 1; k <= k_max; ++k) {
        if (k > 1)
            power = convolve(power, f, max_len);
        for (double t : t_ladder) {
            RatioSeries s = ratio_shift(power, t, opts.x_lo, opts.ratio);
            LiminfCell cell;
            cell.k = k;
            cell.t = s.t_effective;
            cell.target = std::exp(gamma * s.t_effective);
            cell.valid_up_to = s.valid_up_to;
            double min_inf = std::numeric_limits<double>::infinity();
            for (const WindowSummary& w : s.windows)
                min_inf = std::min(min_inf, w.inf);
            cell.min_window_inf = min_inf;
            cell.slack = min_inf - cell.target;
            cell.pass = cell.slack >= -opts.tolerance;
            rep.all_pass = rep.all_pass && cell.pass;
            rep.cells.push_back(cell);
        }
    }
    return rep;
}

namespace {

struct CompoundLadder {
    CompoundResult result;
    std::vector<double> rhs;       // compound tail/window at each lattice point
    std::vector<double> xs;
    double valid_up_to = 0.0;
    std::size_t valid_count = 0;   // prefix of xs with rhs above the floor
};

// Evaluate tails (or window masses when local_t is set) of the compound and
// mark the valid range. The compound tail is nonincreasing so the live
// prefix is contiguous; window masses need not be, so the scan keeps the
// last live point as valid_up_to and only trusts the prefix up to the first
// dead point.
CompoundLadder build_ladder(const TailGrid& v, const CountingPmf& tau,
                            const N0Options& opts) {
    CompoundLadder lad;
    CompoundOptions copts;
    copts.max_len = opts.max_len;
    copts.keep_powers = true;
    lad.result = compound(v, tau, copts);
    const TailGrid& dist = lad.result.dist;
    const double h = dist.step();
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const double x = static_cast<double>(i) * h;
        const double r = opts.local_t ? dist.window_mass(x, *opts.local_t)
                                      : dist.tail_at(x);
        lad.xs.push_back(x);
        lad.rhs.push_back(r);
    }
    std::size_t n = 0;
    while (n < lad.rhs.size() && lad.rhs[n] > opts.floor)
        ++n;
    lad.valid_count = n;
    lad.valid_up_to = n > 0 ? lad.xs[n - 1] : 0.0;
    return lad;
}

double power_value(const TailGrid& g, double x, const std::optional<double>& local_t) {
    return local_t ? g.window_mass(x, *local_t) : g.tail_at(x);
}

} // namespace

N0Report find_minimal_n0(const TailGrid& v, const CountingPmf& tau, double epsilon,
                         N0Variant variant, const N0Options& opts) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidArgument("epsilon must lie in (0,1)");

    N0Report rep;
    rep.epsilon = epsilon;
    rep.variant = variant;
    rep.local_t = opts.local_t;
    rep.pmf_tail_residual = tau.tail_residual;

    CompoundLadder lad = build_ladder(v, tau, opts);
    rep.valid_up_to = lad.valid_up_to;
    if (lad.valid_count == 0) {
        rep.status = N0Status::inconclusive_by_truncation;
        return rep;
    }

    double min_rhs = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lad.valid_count; ++i)
        min_rhs = std::min(min_rhs, epsilon * lad.rhs[i]);
    rep.min_rhs = min_rhs;
    if (tau.tail_residual > min_rhs) {
        rep.status = N0Status::inconclusive_by_truncation;
        return rep;
    }

    const int k_cap = static_cast<int>(tau.k_max());
    const std::vector<TailGrid>& powers = lad.result.powers;

    // suffix[i] = sum_{k > n0} p_k * power_{k or k-1}(x_i); built from n0 =
    // k_cap downwards so every candidate is evaluated in one pass.
    std::vector<double> suffix(lad.valid_count, 0.0);
    auto feasible = [&](double& min_slack_out) {
        double min_slack = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < lad.valid_count; ++i) {
            const double slack =
                epsilon * lad.rhs[i] - suffix[i] - tau.tail_residual;
            min_slack = std::min(min_slack, slack);
            if (min_slack < 0.0)
                break;
        }
        min_slack_out = min_slack;
        return min_slack >= 0.0;
    };

    int best = -1;
    double best_slack = 0.0;
    for (int n0 = k_cap; n0 >= 1; --n0) {
        double slack = 0.0;
        if (!feasible(slack))
            break; // smaller n0 only adds terms
        best = n0;
        best_slack = slack;
        // extend the suffix with the k = n0 term for the next candidate
        const int power_index = variant == N0Variant::k_minus_1 ? n0 - 1 : n0;
        const double pk = tau.probs[static_cast<std::size_t>(n0)];
        const TailGrid& g = powers[static_cast<std::size_t>(power_index)];
        for (std::size_t i = 0; i < lad.valid_count; ++i)
            suffix[i] += pk * power_value(g, lad.xs[i], opts.local_t);
    }
    if (best < 0) {
        rep.status = N0Status::not_found_within_truncation;
        return rep;
    }
    rep.status = N0Status::found;
    rep.n0 = best;
    rep.min_slack = best_slack;
    return rep;
}

DstarResult dstar(const TailGrid& v, const CountingPmf& tau,
                  std::optional<double> local_t, std::size_t max_len, double floor) {
    CompoundOptions copts;
    copts.max_len = max_len;
    copts.keep_powers = false;
    const TailGrid w = compound(v, tau, copts).dist;
    DstarResult res;
    if (!(w.tail_at(0.0) > floor)) {
        // Degenerate at zero: W*W equals W, the ratio is 1 everywhere it means
        // anything.
        res.value = 1.0;
        res.valid_up_to = 0.0;
        return res;
    }
    const TailGrid w2 = convolve(w, w, w.size());
    const double h = w.step();
    double sup = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double x = static_cast<double>(i) * h;
        const double den = local_t ? w.window_mass(x, *local_t) : w.tail_at(x);
        if (!(den > floor))
            continue;
        const double num = local_t ? w2.window_mass(x, *local_t) : w2.tail_at(x);
        sup = std::max(sup, num / den);
        res.valid_up_to = x;
    }
    res.value = sup;
    return res;
}

BridgeReport lemma21_bridge_check(const TailGrid& v, const CountingPmf& tau,
                                  double epsilon1, const N0Options& opts) {
    BridgeReport rep;
    rep.epsilon1 = epsilon1;
    if (tau.probs.size() < 2 || !(tau.probs[1] > 0.0))
        throw InvalidArgument("bridge check requires p_1 > 0");

    N0Report first = find_minimal_n0(v, tau, epsilon1, N0Variant::k_minus_1, opts);
    if (first.status != N0Status::found) {
        rep.skip_reason = "(k-1)-variant search did not complete at epsilon1";
        return rep;
    }
    rep.n0 = first.n0;

    const DstarResult ds = dstar(v, tau, opts.local_t, opts.max_len, opts.floor);
    rep.dstar_value = ds.value;
    const double p1 = tau.probs[1];
    rep.scaled_epsilon = epsilon1 * ds.value / p1;

    CompoundLadder lad = build_ladder(v, tau, opts);
    if (lad.valid_count == 0) {
        rep.skip_reason = "compound has no live grid range";
        return rep;
    }
    std::vector<double> suffix(lad.valid_count, 0.0);
    for (int k = rep.n0 + 1; k <= static_cast<int>(tau.k_max()); ++k) {
        const double pk = tau.probs[static_cast<std::size_t>(k)];
        const TailGrid& g = lad.result.powers[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < lad.valid_count; ++i)
            suffix[i] += pk * power_value(g, lad.xs[i], opts.local_t);
    }
    double min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lad.valid_count; ++i) {
        const double slack =
            rep.scaled_epsilon * lad.rhs[i] - suffix[i] - tau.tail_residual;
        min_slack = std::min(min_slack, slack);
    }
    rep.checked = true;
    rep.min_slack = min_slack;
    rep.pass = min_slack >= 0.0;
    return rep;
}

} // namespace tailkit
