#include "window_identity.hpp"

#include <algorithm>
#include <cmath>

namespace tailkit {

WindowIdentityReport esscher_window_check(const TailGrid& v, double gamma, double t_len,
                                          const WindowIdentityOptions& opts) {
    if (!(gamma >= 0.0))
        throw InvalidArgument("gamma must be nonnegative");
    if (!(t_len > 0.0))
        throw InvalidArgument("window length must be positive");

    WindowIdentityReport rep;
    rep.gamma = gamma;
    rep.t_len = t_len;
    rep.min_sandwich_slack = std::numeric_limits<double>::infinity();

    const TailGrid w = gamma > 0.0 ? esscher(v, -gamma) : v;
    const double mw = gamma_moment(w, gamma).value;
    const double h = v.step();
    const long steps_per_window =
        std::max<long>(1, lattice_index(t_len, h) + (on_lattice(t_len, h) ? 0 : 1));

    // Stop where the window would spill past the grid so both sides stay
    // fully on-lattice.
    const double grid_lim = v.grid_end() - t_len;
    if (!(grid_lim > 0.0))
        throw InvalidArgument("grid shorter than one window length");
    const double x_max = opts.x_max >= 0.0 ? std::min(opts.x_max, grid_lim) : grid_lim;
    for (long i = 0; static_cast<double>(i) * h <= x_max; ++i) {
        const double x = static_cast<double>(i) * h;
        const double vwin = v.window_mass(x, t_len);
        const double wwin = w.window_mass(x, t_len);
        if (!(vwin > opts.floor) || !(wwin > opts.floor))
            continue;
        const double egx = std::exp(gamma * x);
        if (!std::isfinite(egx))
            break;

        // Left-endpoint quadrature of the inner integral.
        double q = 0.0;
        for (long j = 0; j < steps_per_window; ++j) {
            const double y = static_cast<double>(j) * h;
            if (y >= t_len)
                break;
            const double seg = v.window_mass(x + y, t_len - y);
            q += h * seg * std::exp(-gamma * y);
        }
        q /= vwin;

        const double lhs = wwin;
        const double rhs = mw * std::exp(-gamma * x) * vwin * (1.0 - gamma * q);
        const double resid = std::fabs(lhs - rhs) / lhs;
        rep.max_identity_residual = std::max(rep.max_identity_residual, resid);

        const double mid = egx * wwin / mw;
        const double lower = std::exp(-gamma * t_len) * vwin;
        const double upper = vwin;
        const double slack = std::min(mid - lower, upper - mid) / vwin;
        rep.min_sandwich_slack = std::min(rep.min_sandwich_slack, slack);

        rep.valid_up_to = x;
        ++rep.points_checked;
    }
    if (rep.points_checked == 0)
        throw InvalidArgument("no grid point has live window masses for both laws");
    return rep;
}

} // namespace tailkit
