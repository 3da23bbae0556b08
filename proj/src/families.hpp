#ifndef TAILKIT_FAMILIES_HPP
#define TAILKIT_FAMILIES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "grid.hpp"

namespace tailkit {

// Parameters of the oscillating two-scale family used as the toolkit's
// stress counterexample. The tail alternates linear descents on [a_n, 2a_n)
// with plateaus on [2a_n, a_{n+1}) over the doubly exponential scales
// a_n = a^{r^n}, optionally multiplied by the exponential factor e^{-gamma x}.
struct Example61Params {
    double alpha = 1.6;   // in (3/2, (sqrt(5)+1)/2)
    double a = 32.0;      // > 1 with a^r > 8a
    double gamma = 1.0;   // >= 0; 0 keeps the heavy-tailed base law
    int n_cycles = 2;     // scales realized on a grid

    double r() const { return (alpha + 1.0) / alpha; }

    // Derived quantities, filled by validate().
    std::vector<double> scales;      // a_0 .. a_last (until the sums converge)
    std::vector<double> scale_sums;  // s_n = sum_{i>=n} a_i^{-alpha}
    double norm_c = 0.0;             // 1 / s_0

    void validate(); // throws InvalidArgument naming the violated constraint
};

Example61Params make_example61_params(double alpha, double a, double gamma,
                                      int n_cycles);

// Closed-form tail of the untilted base law F0.
double example61_base_tail(const Example61Params& p, double x);

// Closed-form tail of the (optionally tilted) law F.
double example61_tail(const Example61Params& p, double x);

// Shift ratio F_bar(x - t) / F_bar(x) with the exponential factor handled
// analytically, so the ratio stays evaluable far past double underflow of
// the tails themselves.
double example61_shift_ratio(const Example61Params& p, double x, double t);

// Lattice sampling of the closed-form tail; residual = tail at grid end.
TailGrid example61_grid(const Example61Params& p, double step, std::size_t n_points);

// Tail tilt: T'[i] = e^{-gamma i h} T[i]. Distinct from the Esscher mass
// tilt; this is the constructor for light-tailed variants of a base law.
TailGrid tilt_tail(const TailGrid& f0, double gamma);

// Standard test families, discretized by tail sampling.
TailGrid exponential_grid(double lambda, double step, std::size_t n_points);
TailGrid pareto_grid(double alpha, double step, std::size_t n_points); // scale 1
TailGrid weibull_grid(double beta, double shape, double step, std::size_t n_points);
TailGrid lognormal_grid(double mu, double sigma, double step, std::size_t n_points);
TailGrid geometric_grid(double q, double step, std::size_t n_points); // lattice-exact
TailGrid point_mass_grid(double c, double step, std::size_t n_points);

// Name-keyed dispatcher used by the CLI config and the C API.
// Supported: exponential(lambda), pareto(alpha), weibull(beta, shape),
// lognormal(mu, sigma), geometric(q), point(c).
TailGrid standard_family(const std::string& name, const std::vector<double>& params,
                         double step, std::size_t n_points);

} // namespace tailkit

#endif
