#include "ratio.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tailkit {

std::size_t RatioSeries::valid_count() const {
    std::size_t n = 0;
    for (PointFlag f : flags)
        if (f == PointFlag::ok)
            ++n;
    return n;
}

bool RatioSeries::has_blowup() const {
    for (PointFlag f : flags)
        if (f == PointFlag::blowup)
            return true;
    return false;
}

std::vector<WindowSummary> compute_window_stats(const RatioSeries& s,
                                                const RatioOptions& opts) {
    std::vector<double> vals;
    vals.reserve(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i)
        if (s.flags[i] == PointFlag::ok)
            vals.push_back(s.values[i]);

    std::vector<WindowSummary> out;
    if (vals.empty())
        return out;
    std::vector<std::size_t> widths;
    for (double f : opts.window_fractions) {
        std::size_t w = static_cast<std::size_t>(
            std::floor(f * static_cast<double>(vals.size())));
        w = std::max(w, std::min(opts.min_window, vals.size()));
        w = std::min(w, vals.size());
        if (std::find(widths.begin(), widths.end(), w) == widths.end())
            widths.push_back(w);
    }
    std::sort(widths.begin(), widths.end());
    for (std::size_t w : widths) {
        WindowSummary ws;
        ws.window = w;
        const std::size_t begin = vals.size() - w;
        double lo = vals[begin], hi = vals[begin];
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (std::size_t i = begin; i < vals.size(); ++i) {
            lo = std::min(lo, vals[i]);
            hi = std::max(hi, vals[i]);
            const double ix = static_cast<double>(i - begin);
            sx += ix;
            sy += vals[i];
            sxx += ix * ix;
            sxy += ix * vals[i];
        }
        ws.inf = lo;
        ws.sup = hi;
        const double n = static_cast<double>(w);
        const double den = n * sxx - sx * sx;
        ws.slope = den > 0.0 ? (n * sxy - sx * sy) / den : 0.0;
        out.push_back(ws);
    }
    return out;
}

namespace {

// Shared skeleton: walk the lattice from x_lo, evaluate numerator and
// denominator, flag underflows, then attach window statistics.
template <typename Num, typename Den>
RatioSeries build_series(const TailGrid& v, double x_lo, const RatioOptions& opts,
                         Num num, Den den, bool denominator_monotone) {
    RatioSeries s;
    const double h = v.step();
    long i0 = lattice_index(std::max(0.0, x_lo), h);
    if (i0 < 0)
        i0 = 0;
    const long i1 = static_cast<long>(v.size()) - 1;
    if (i0 > i1)
        throw InvalidArgument("x_lo lies beyond the grid end");
    bool any_valid = false;
    for (long i = i0; i <= i1; ++i) {
        const double x = static_cast<double>(i) * h;
        const double d = den(x);
        const double nv = num(x);
        if (d > opts.denominator_floor) {
            s.xs.push_back(x);
            s.values.push_back(nv / d);
            s.flags.push_back(PointFlag::ok);
            s.valid_up_to = x;
            any_valid = true;
        } else {
            if (denominator_monotone && nv <= opts.denominator_floor)
                break; // everything past here is dead
            s.xs.push_back(x);
            s.values.push_back(std::numeric_limits<double>::quiet_NaN());
            s.flags.push_back(nv > opts.denominator_floor ? PointFlag::blowup
                                                          : PointFlag::denominator_underflow);
        }
    }
    if (!any_valid) {
        std::ostringstream os;
        os << "ratio series empty: no grid point in [" << static_cast<double>(i0) * h
           << ", " << static_cast<double>(i1) * h
           << "] has a denominator above the floor";
        throw InvalidArgument(os.str());
    }
    s.windows = compute_window_stats(s, opts);
    return s;
}

double snap_shift(const TailGrid& v, double t, bool& snapped) {
    snapped = false;
    if (!(t > 0.0))
        throw InvalidArgument("shift t must be positive");
    if (!v.lattice_span_exact() || on_lattice(t, v.step()))
        return t;
    double snapped_t = std::nearbyint(t / v.step()) * v.step();
    if (snapped_t <= 0.0)
        snapped_t = v.step();
    snapped = true;
    return snapped_t;
}

} // namespace

RatioSeries ratio_shift(const TailGrid& v, double t, double x_lo,
                        const RatioOptions& opts) {
    bool snapped = false;
    const double te = snap_shift(v, t, snapped);
    RatioSeries s = build_series(
        v, x_lo, opts, [&](double x) { return v.tail_at(x - te); },
        [&](double x) { return v.tail_at(x); }, true);
    s.t_effective = te;
    s.t_snapped = snapped;
    return s;
}

RatioSeries ratio_conv2(const TailGrid& v, double x_lo, const RatioOptions& opts) {
    const TailGrid v2 = convolve(v, v, v.size());
    return build_series(
        v, x_lo, opts, [&](double x) { return v2.tail_at(x); },
        [&](double x) { return v.tail_at(x); }, true);
}

RatioSeries local_ratio_shift(const TailGrid& v, double t, double t_len, double x_lo,
                              const RatioOptions& opts) {
    if (!(t_len > 0.0))
        throw InvalidArgument("window length must be positive");
    bool snapped = false;
    const double te = snap_shift(v, t, snapped);
    RatioSeries s = build_series(
        v, x_lo, opts,
        [&](double x) { return x - te < 0.0 ? 1.0 : v.window_mass(x - te, t_len); },
        [&](double x) { return v.window_mass(x, t_len); }, false);
    s.t_effective = te;
    s.t_snapped = snapped;
    // Interior points where only the window mass (not the tail) vanished are
    // dropped-and-reported rather than treated as blowups.
    for (std::size_t i = 0; i < s.xs.size(); ++i)
        if (s.flags[i] != PointFlag::ok && v.tail_at(s.xs[i]) > opts.denominator_floor)
            s.flags[i] = PointFlag::empty_window;
    s.windows = compute_window_stats(s, opts);
    return s;
}

RatioSeries local_ratio_conv2(const TailGrid& v, double t_len, double x_lo,
                              const RatioOptions& opts) {
    if (!(t_len > 0.0))
        throw InvalidArgument("window length must be positive");
    const TailGrid v2 = convolve(v, v, v.size());
    RatioSeries s = build_series(
        v, x_lo, opts, [&](double x) { return v2.window_mass(x, t_len); },
        [&](double x) { return v.window_mass(x, t_len); }, false);
    for (std::size_t i = 0; i < s.xs.size(); ++i)
        if (s.flags[i] != PointFlag::ok && v.tail_at(s.xs[i]) > opts.denominator_floor)
            s.flags[i] = PointFlag::empty_window;
    s.windows = compute_window_stats(s, opts);
    return s;
}

WeakEquivalenceReport weak_equivalence(const TailGrid& a, const TailGrid& b, double x_lo,
                                       const RatioOptions& opts) {
    WeakEquivalenceReport rep;
    rep.series = build_series(
        b, x_lo, opts, [&](double x) { return a.tail_at(x); },
        [&](double x) { return b.tail_at(x); }, true);
    if (rep.series.windows.empty())
        return rep;
    rep.min_window_inf = rep.series.windows.front().inf;
    rep.max_window_sup = rep.series.windows.front().sup;
    rep.max_abs_slope = 0.0;
    for (const WindowSummary& w : rep.series.windows) {
        rep.min_window_inf = std::min(rep.min_window_inf, w.inf);
        rep.max_window_sup = std::max(rep.max_window_sup, w.sup);
        rep.max_abs_slope = std::max(rep.max_abs_slope, std::fabs(w.slope));
    }
    rep.pass = rep.min_window_inf > 0.0 && !rep.series.has_blowup() &&
               std::isfinite(rep.max_window_sup);
    return rep;
}

} // namespace tailkit
