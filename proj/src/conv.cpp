#include "conv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tailkit {

TailGrid convolve(const TailGrid& v, const TailGrid& w, std::size_t max_len) {
    if (v.step() != w.step()) {
        std::ostringstream os;
        os << "convolve requires equal lattice steps, got " << v.step() << " and "
           << w.step();
        throw InvalidArgument(os.str());
    }
    const std::size_t natural = v.size() + w.size() - 1;
    const std::size_t out_len = (max_len == kNaturalLength) ? natural
                                                            : std::min(natural, max_len);
    std::vector<double> out(out_len, 0.0);
    double spilled = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double vi = v.mass(i);
        if (vi == 0.0)
            continue;
        const std::size_t j_max = std::min(w.size(), out_len > i ? out_len - i : 0);
        for (std::size_t j = 0; j < j_max; ++j)
            out[i + j] += vi * w.mass(j);
        for (std::size_t j = j_max; j < w.size(); ++j)
            spilled += vi * w.mass(j);
    }
    // Mass with at least one beyond-grid summand is beyond-grid.
    const double residual =
        v.residual() + w.residual() - v.residual() * w.residual() + spilled;
    return TailGrid::from_masses_residual(std::move(out), residual, v.step(),
                                          v.lattice_span_exact() && w.lattice_span_exact());
}

TailGrid nfold(const TailGrid& v, unsigned n, std::size_t max_len) {
    TailGrid acc = TailGrid::from_masses({1.0}, v.step(), v.lattice_span_exact());
    if (n == 0)
        return acc;
    TailGrid base = v;
    unsigned k = n;
    bool acc_is_unit = true;
    while (true) {
        if (k & 1u) {
            acc = acc_is_unit ? base : convolve(acc, base, max_len);
            acc_is_unit = false;
        }
        k >>= 1u;
        if (k == 0)
            break;
        base = convolve(base, base, max_len);
    }
    return acc;
}

CompoundResult compound(const TailGrid& v, const CountingPmf& tau,
                        const CompoundOptions& opts) {
    const int k_cap = static_cast<int>(tau.k_max());
    const std::size_t natural = (v.size() - 1) * static_cast<std::size_t>(k_cap) + 1;
    const std::size_t out_len =
        (opts.max_len == kNaturalLength) ? natural : std::min(natural, opts.max_len);

    std::vector<double> mix(out_len, 0.0);
    double mix_residual = 0.0;
    std::vector<TailGrid> powers;
    if (opts.keep_powers)
        powers.reserve(static_cast<std::size_t>(k_cap) + 1);

    TailGrid power = TailGrid::from_masses({1.0}, v.step(), v.lattice_span_exact());
    for (int k = 0; k <= k_cap; ++k) {
        if (k > 0)
            power = convolve(power, v, out_len);
        const double pk = tau.probs[static_cast<std::size_t>(k)];
        const std::size_t n = std::min(out_len, power.size());
        for (std::size_t i = 0; i < n; ++i)
            mix[i] += pk * power.mass(i);
        mix_residual += pk * power.residual();
        if (opts.keep_powers)
            powers.push_back(power);
    }
    if (opts.spill_to_residual)
        mix_residual += tau.tail_residual;

    CompoundResult res;
    res.dist = TailGrid::from_masses_residual(std::move(mix), mix_residual, v.step(),
                                              v.lattice_span_exact());
    res.truncation_k = k_cap;
    res.abs_error_bound = tau.tail_residual;
    res.powers = std::move(powers);
    return res;
}

void attach_kesten_error_bound(CompoundResult& res, const CountingPmf& tau,
                               double cert_k, double cert_m) {
    const int k_cap = static_cast<int>(tau.k_max());
    double sum = 0.0;
    switch (tau.source) {
    case CountingPmf::Source::poisson: {
        const double mu = tau.param;
        double term = std::exp(-mu);
        for (int k = 1; k <= k_cap + 1; ++k)
            term *= mu * cert_m / static_cast<double>(k);
        // term = e^{-mu} (mu M)^{K+1} / (K+1)!
        int k = k_cap + 1;
        while (term > 0.0 && std::isfinite(term) && k < k_cap + 4000) {
            sum += term;
            term *= mu * cert_m / static_cast<double>(k + 1);
            ++k;
        }
        if (!std::isfinite(term))
            sum = std::numeric_limits<double>::infinity();
        break;
    }
    case CountingPmf::Source::geometric: {
        const double q = tau.param;
        if (q * cert_m >= 1.0) {
            sum = std::numeric_limits<double>::infinity();
        } else {
            sum = (1.0 - q) * std::pow(q * cert_m, static_cast<double>(k_cap) + 1.0) /
                  (1.0 - q * cert_m);
        }
        break;
    }
    case CountingPmf::Source::expl:
        return; // no closed form for the dropped tail
    }
    res.kesten_error_bound = cert_k * sum;
}

double LevySpectrum::eval(double x) const {
    if (xs.empty())
        return 0.0;
    if (x <= xs.front())
        return nu_tail.front();
    if (x >= xs.back())
        return nu_tail.back();
    // largest sample <= x
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    return nu_tail[i];
}

LevySpectrum make_levy_spectrum(std::vector<double> xs, std::vector<double> nu_tail) {
    if (xs.size() != nu_tail.size() || xs.empty())
        throw InvalidArgument("Levy spectrum needs matching nonempty sample vectors");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0))
            throw InvalidArgument("Levy spectrum abscissae must be positive");
        if (i > 0 && xs[i] <= xs[i - 1])
            throw InvalidArgument("Levy spectrum abscissae must be strictly increasing");
        if (!(nu_tail[i] >= 0.0))
            throw InvalidArgument("Levy spectrum tail values must be nonnegative");
        if (i > 0 && nu_tail[i] > nu_tail[i - 1])
            throw InvalidArgument("Levy spectrum tail must be nonincreasing");
    }
    LevySpectrum s;
    s.xs = std::move(xs);
    s.nu_tail = std::move(nu_tail);
    return s;
}

std::pair<double, TailGrid> levy_to_spectral(const LevySpectrum& spec, double step,
                                             std::size_t n_points) {
    const double mu = spec.mu();
    if (!(mu > 0.0))
        throw InvalidArgument("Levy spectrum has no jumps beyond 1 (mu = 0)");
    if (n_points < 2)
        throw InvalidArgument("spectral discretization needs at least 2 lattice points");
    std::vector<double> tails(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double x = static_cast<double>(i) * step;
        const double t = spec.eval(std::max(x, 1.0)) / mu;
        tails[i] = std::min(1.0, t);
    }
    // Enforce monotonicity against rounding at the clamp boundary.
    for (std::size_t i = 1; i < n_points; ++i)
        tails[i] = std::min(tails[i], tails[i - 1]);
    return {mu, TailGrid::from_tails(std::move(tails), step, false)};
}

IdComposeResult id_compose(const TailGrid& h1, const TailGrid& f, double mu, int k_cap) {
    if (h1.step() != f.step())
        throw InvalidArgument("id_compose requires matching lattice steps");
    CompoundOptions opts;
    opts.keep_powers = false;
    CompoundResult h2 = compound(f, poisson_pmf(mu, k_cap), opts);
    IdComposeResult out{h2.dist, convolve(h1, h2.dist)};
    return out;
}

} // namespace tailkit
