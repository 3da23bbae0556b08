#ifndef TAILKIT_GRID_HPP
#define TAILKIT_GRID_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "common.hpp"

namespace tailkit {

// A distribution on the lattice {0, h, 2h, ..., Nh} with first-class
// beyond-grid residual mass. The tail cache T[i] = P(X > i*h) is built
// backwards so that T[i] - T[i+1] == m[i+1] holds bit-exactly.
//
// Truncating a law to a grid must not silently distort tail ratios, so the
// residual is carried through every operation instead of being renormalized
// away.
class TailGrid {
public:
    // Construct from point masses; residual = max(0, 1 - sum).
    static TailGrid from_masses(std::vector<double> masses, double step,
                                bool lattice_span_exact = true);

    // Construct from sampled tail values T[i] = P(X > i*h), T nonincreasing,
    // residual = T.back(). Used by family discretizers so that the stored
    // tail equals the closed form at every lattice point exactly.
    static TailGrid from_tails(std::vector<double> tails, double step,
                               bool lattice_span_exact = false);

    // Internal-use constructor where the residual is known exactly.
    static TailGrid from_masses_residual(std::vector<double> masses, double residual,
                                         double step, bool lattice_span_exact);

    double step() const { return step_; }
    std::size_t size() const { return masses_.size(); }   // N + 1 lattice points
    double grid_end() const { return static_cast<double>(masses_.size() - 1) * step_; }
    double mass(std::size_t i) const { return masses_[i]; }
    const std::vector<double>& masses() const { return masses_; }
    const std::vector<double>& tails() const { return tails_; }
    double residual() const { return residual_; }
    bool lattice_span_exact() const { return lattice_span_exact_; }

    double total_mass() const; // sum of masses + residual

    // P(X > x) under the right-continuous step convention; 1 for x < 0,
    // residual for x at or beyond the grid end.
    double tail_at(double x) const;

    // P(x < X <= x + t_len). When x + t_len falls beyond the last lattice
    // point the window degenerates to (x, infinity) and the full tail is
    // returned. t_len = +infinity is accepted for that case directly.
    double window_mass(double x, double t_len) const;

    // Copy with the residual lumped onto the last lattice mass. This is the
    // diagnostics-side extrapolation policy for tiny residuals; the grid
    // itself never does this implicitly.
    TailGrid lump_residual() const;

private:
    TailGrid() = default;
    void rebuild_tails();

    std::vector<double> masses_;
    std::vector<double> tails_;
    double residual_ = 0.0;
    double step_ = 1.0;
    bool lattice_span_exact_ = true;
};

// The exponential moment M(V, gamma) evaluated on the grid. For gamma > 0
// with positive residual the grid sum is only a lower bound; rather than
// extrapolate, that fact is reported and left to callers.
struct GammaMoment {
    double value = 0.0;        // grid sum of e^{gamma*i*h} m[i]
    bool lower_bound_only = false;
    bool unbounded = false;    // overflow while summing
    double residual_slack = 0.0; // max possible residual contribution (finite for gamma <= 0)
};

TailGrid build_lattice(const std::vector<double>& masses, double step);

GammaMoment gamma_moment(const TailGrid& v, double gamma);

// Esscher transform (exponential tilting): m'[i] = e^{gamma*i*h} m[i] / M.
// Requires the grid moment to be trustworthy: for gamma > 0 the residual
// must vanish (<= residual_tol), for gamma < 0 the tilted residual bound
// must be below residual_tol.
TailGrid esscher(const TailGrid& v, double gamma, double residual_tol = 1e-15);

} // namespace tailkit

#endif
