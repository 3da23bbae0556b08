#ifndef TAILKIT_CONV_HPP
#define TAILKIT_CONV_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "counting.hpp"
#include "grid.hpp"

namespace tailkit {

inline constexpr std::size_t kNaturalLength = 0; // "do not clip" marker

// Exact discrete convolution of the mass sequences. Output is clipped to
// max_len lattice points (kNaturalLength keeps everything); clipped mass and
// every product involving a beyond-grid summand land in the residual, so the
// output tail stays exact at every retained lattice point.
TailGrid convolve(const TailGrid& v, const TailGrid& w,
                  std::size_t max_len = kNaturalLength);

// k-fold convolution via binary exponentiation; n = 0 is the unit (point
// mass at zero).
TailGrid nfold(const TailGrid& v, unsigned n, std::size_t max_len = kNaturalLength);

struct CompoundOptions {
    std::size_t max_len = kNaturalLength;
    bool spill_to_residual = false; // move the pmf truncation tail into dist.residual
    bool keep_powers = true;        // retain the V^{*k} ladder
};

struct CompoundResult {
    TailGrid dist;                  // sum_k p_k V^{*k} over the retained k
    int truncation_k = 0;
    double abs_error_bound = 0.0;   // == pmf tail_residual
    std::optional<double> kesten_error_bound; // sum_{k>K} p_k K M^k when certified
    std::vector<TailGrid> powers;   // V^{*0} .. V^{*K} when requested
};

// The pmf-weighted mixture of convolution powers, computed through the
// incremental ladder V^{*k} = V^{*(k-1)} * V so the intermediate powers are
// available to diagnostics that quantify over all k.
CompoundResult compound(const TailGrid& v, const CountingPmf& tau,
                        const CompoundOptions& opts = {});

// Attach sum_{k>K} p_k * cert_K * cert_M^k to an existing result (closed
// forms exist for the poisson and geometric sources).
void attach_kesten_error_bound(CompoundResult& res, const CountingPmf& tau,
                               double cert_k, double cert_m);

// Sampled tail of a Levy spectral measure: x -> nu((x, infinity)) on an
// increasing grid of abscissae over (0, x_max].
struct LevySpectrum {
    std::vector<double> xs;
    std::vector<double> nu_tail;

    double eval(double x) const; // step interpolation, clamped at the ends
    double mu() const { return eval(1.0); }
};

LevySpectrum make_levy_spectrum(std::vector<double> xs, std::vector<double> nu_tail);

// Normalized restriction of the spectrum to jumps beyond 1:
// F_bar(x) = nu((max(x,1), inf)) / mu, discretized by tail sampling.
std::pair<double, TailGrid> levy_to_spectral(const LevySpectrum& spec, double step,
                                             std::size_t n_points);

// H = H1 * H2 with H2 the Poisson(mu) compound of F.
struct IdComposeResult {
    TailGrid h2;
    TailGrid h;
};

IdComposeResult id_compose(const TailGrid& h1, const TailGrid& f, double mu, int k_cap);

} // namespace tailkit

#endif
