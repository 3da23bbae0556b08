#ifndef TAILKIT_RATIO_HPP
#define TAILKIT_RATIO_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "conv.hpp"
#include "grid.hpp"

namespace tailkit {

enum class PointFlag : std::uint8_t {
    ok = 0,
    denominator_underflow = 1, // denominator below the floor, numerator too
    blowup = 2,                // numerator alive while denominator underflows
    empty_window = 3,          // local variant: window mass vanished
};

// Trailing-window summary over the last `window` valid points.
struct WindowSummary {
    std::size_t window = 0;
    double sup = 0.0;
    double inf = 0.0;
    double slope = 0.0; // least-squares slope per grid step
};

// Sampled values of a tail (or window-mass) ratio along the lattice, with
// the trailing-window statistics every limsup/liminf verdict is built from.
struct RatioSeries {
    std::vector<double> xs;      // strictly increasing abscissae
    std::vector<double> values;  // NaN where flagged
    std::vector<PointFlag> flags;
    double valid_up_to = 0.0;    // largest x with a live denominator
    double t_effective = 0.0;    // shift after lattice snapping (shift ratios)
    bool t_snapped = false;
    std::vector<WindowSummary> windows;

    std::size_t valid_count() const;
    bool has_blowup() const;
};

struct RatioOptions {
    double denominator_floor = kDenominatorFloor;
    // Trailing-window ladder as fractions of the valid series length.
    std::vector<double> window_fractions = {1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0};
    std::size_t min_window = 4;
};

// Recompute the trailing-window statistics from (xs, values); used both by
// the constructors and by tests asserting reproducibility.
std::vector<WindowSummary> compute_window_stats(const RatioSeries& s,
                                                const RatioOptions& opts);

// values[i] = V_bar(x_i - t) / V_bar(x_i). t is snapped to the lattice span
// for lattice-exact grids and the snap recorded.
RatioSeries ratio_shift(const TailGrid& v, double t, double x_lo,
                        const RatioOptions& opts = {});

// values[i] = V2_bar(x_i) / V_bar(x_i) with V2 = V * V.
RatioSeries ratio_conv2(const TailGrid& v, double x_lo, const RatioOptions& opts = {});

// Local (window-mass) variants over windows (x, x + t_len].
RatioSeries local_ratio_shift(const TailGrid& v, double t, double t_len, double x_lo,
                              const RatioOptions& opts = {});
RatioSeries local_ratio_conv2(const TailGrid& v, double t_len, double x_lo,
                              const RatioOptions& opts = {});

// Ratio A_bar/B_bar with two-sided boundedness evidence.
struct WeakEquivalenceReport {
    RatioSeries series;
    double min_window_inf = 0.0;
    double max_window_sup = 0.0;
    double max_abs_slope = 0.0;
    bool pass = false;
};

WeakEquivalenceReport weak_equivalence(const TailGrid& a, const TailGrid& b, double x_lo,
                                       const RatioOptions& opts = {});

} // namespace tailkit

#endif
