#include "kesten.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tailkit {

namespace {

// Slack of K M^k G_bar(x) - V^{*k}_bar(x) with the overflow-safe comparison
// done in log space when the product leaves double range.
double slack_value(double k_const, double m, int k, double g_tail, double v_tail) {
    if (g_tail <= 0.0)
        return v_tail > 0.0 ? -v_tail : 0.0;
    const double bound = k_const * std::pow(m, static_cast<double>(k)) * g_tail;
    if (std::isfinite(bound))
        return bound - v_tail;
    // Overflowed: compare logarithms instead.
    const double log_bound =
        std::log(k_const) + static_cast<double>(k) * std::log(m) + std::log(g_tail);
    if (v_tail <= 0.0 || log_bound >= std::log(v_tail))
        return std::numeric_limits<double>::infinity();
    return -v_tail;
}

} // namespace

double kesten_slack_at(const KestenCertificate& cert, const TailGrid& power_k,
                       const TailGrid& g, int k, double x) {
    return slack_value(cert.k_const, cert.m, k, g.tail_at(x), power_k.tail_at(x));
}

KestenCertificate kesten_verify(const TailGrid& v, const TailGrid& g, double gamma,
                                int k_max, std::optional<double> m_choice,
                                const KestenOptions& opts) {
    if (k_max < 1)
        throw InvalidArgument("k_max must be at least 1");
    KestenCertificate cert;
    cert.verified_k_max = k_max;

    if (!(g.tail_at(0.0) > opts.ratio.denominator_floor))
        throw InvalidArgument("G has no tail mass: domination target is degenerate");

    const GammaMoment mv = gamma_moment(v, gamma);
    const GammaMoment mg = gamma_moment(g, gamma);
    if (mv.unbounded || (mv.lower_bound_only && v.residual() > kMassTol)) {
        cert.infeasibility = "M(V,gamma) is not certifiably finite on this grid";
        return cert;
    }
    if (mg.unbounded || (mg.lower_bound_only && g.residual() > kMassTol)) {
        cert.infeasibility = "M(G,gamma) is not certifiably finite on this grid";
        return cert;
    }
    cert.mv = mv.value;
    cert.mg = mg.value;

    if (v.step() != g.step())
        throw InvalidArgument("kesten_verify requires matching lattice steps");

    // A1 = sup V_bar/G_bar over the union of both grids; reject when the
    // ratio blows up or trends upward (V not dominated by G in any usable
    // sense).
    RatioOptions ropts = opts.ratio;
    RatioSeries dom;
    {
        const double h = v.step();
        const std::size_t n = std::max(v.size(), g.size());
        for (std::size_t i = 0; i < n; ++i) {
            const double x = static_cast<double>(i) * h;
            const double den = g.tail_at(x);
            const double num = v.tail_at(x);
            if (den > ropts.denominator_floor) {
                dom.xs.push_back(x);
                dom.values.push_back(num / den);
                dom.flags.push_back(PointFlag::ok);
                dom.valid_up_to = x;
            } else if (num > ropts.denominator_floor) {
                dom.xs.push_back(x);
                dom.values.push_back(std::numeric_limits<double>::quiet_NaN());
                dom.flags.push_back(PointFlag::blowup);
            } else {
                break;
            }
        }
        dom.windows = compute_window_stats(dom, ropts);
    }
    if (dom.valid_count() == 0) {
        cert.infeasibility = "V_bar/G_bar has no valid grid range";
        return cert;
    }
    if (dom.has_blowup()) {
        cert.infeasibility = "tail domination fails: V_bar alive where G_bar underflows";
        return cert;
    }
    bool rising = !dom.windows.empty();
    for (const WindowSummary& w : dom.windows)
        if (!(w.slope > opts.slope_band))
            rising = false;
    if (rising && dom.windows.front().inf > dom.windows.back().inf) {
        cert.infeasibility = "tail domination fails: V_bar/G_bar diverges along the grid";
        return cert;
    }
    double a1 = 0.0;
    for (std::size_t i = 0; i < dom.values.size(); ++i)
        if (dom.flags[i] == PointFlag::ok)
            a1 = std::max(a1, dom.values[i]);
    cert.a1 = a1;

    // Conservative conv2 indicator for G: max of window sups, clamped from
    // below at the theoretical floor 2 M(G,gamma) so the estimate errs toward
    // a larger a, never toward unsoundness.
    RatioSeries conv2 = ratio_conv2(g, opts.x_lo, ropts);
    double cstar = 0.0;
    for (const WindowSummary& w : conv2.windows)
        cstar = std::max(cstar, w.sup);
    cstar = std::max(cstar, 2.0 * cert.mg);
    cert.cstar_g = cstar;

    cert.b = cert.a1 * (cstar - 2.0 * cert.mg);
    cert.a = cert.mv + cert.b;

    if (m_choice) {
        if (!(*m_choice > cert.a && *m_choice < 1.0 + cert.a)) {
            std::ostringstream os;
            os << "M must lie in (a, 1+a) = (" << cert.a << ", " << 1.0 + cert.a
               << "): got " << *m_choice;
            throw InvalidArgument(os.str());
        }
        cert.m = *m_choice;
    } else {
        cert.m = cert.a + 0.5;
    }

    // Largest epsilon with (1+eps)(a + (2+A1) eps) < M, halved: the positive
    // root of (2+A1) e^2 + (a+2+A1) e + (a-M) = 0.
    const double qa = 2.0 + cert.a1;
    const double qb = cert.a + 2.0 + cert.a1;
    const double qc = cert.a - cert.m;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (!(disc > 0.0)) {
        cert.infeasibility = "no admissible epsilon: (1+eps)(a+(2+A1)eps) < M unsolvable";
        return cert;
    }
    const double eps_max = (-qb + std::sqrt(disc)) / (2.0 * qa);
    if (!(eps_max > 0.0)) {
        cert.infeasibility = "no positive epsilon satisfies (1+eps)(a+(2+A1)eps) < M";
        return cert;
    }
    cert.epsilon = 0.5 * eps_max;

    // x0: where the trailing fit window of the conv2 estimate begins.
    cert.x0 = conv2.xs.empty() ? 0.0 : conv2.xs.front();
    if (!conv2.windows.empty()) {
        std::size_t skip = conv2.valid_count() - conv2.windows.back().window;
        for (std::size_t i = 0; i < conv2.values.size(); ++i) {
            if (conv2.flags[i] != PointFlag::ok)
                continue;
            if (skip == 0) {
                cert.x0 = conv2.xs[i];
                break;
            }
            --skip;
        }
    }
    const double g_at_x0 = g.tail_at(cert.x0);
    cert.k_const = std::max(cert.a1 * (cert.m - cert.b) / (cert.m * cert.epsilon),
                            g_at_x0 > 0.0 ? 1.0 / g_at_x0
                                          : std::numeric_limits<double>::infinity());
    if (!std::isfinite(cert.k_const)) {
        cert.infeasibility = "prefactor K overflows: G_bar(x0) underflows to zero";
        return cert;
    }
    cert.feasible = true;

    // Full sweep over the power ladder.
    const std::size_t len = std::min(
        opts.power_max_len,
        (v.size() - 1) * static_cast<std::size_t>(k_max) + 1);
    TailGrid power = v;
    double worst = std::numeric_limits<double>::infinity();
    const double h = v.step();
    const std::size_t sweep_len = std::max(len, g.size());
    cert.sweep_up_to = static_cast<double>(sweep_len - 1) * h;
    for (int k = 1; k <= k_max; ++k) {
        if (k > 1)
            power = convolve(power, v, len);
        for (std::size_t i = 0; i < sweep_len; ++i) {
            const double x = static_cast<double>(i) * h;
            worst = std::min(worst,
                             slack_value(cert.k_const, cert.m, k, g.tail_at(x),
                                         power.tail_at(x)));
        }
    }
    cert.max_violation = worst;
    return cert;
}

} // namespace tailkit
