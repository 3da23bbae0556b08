#include "families.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace tailkit {

namespace {

constexpr double kScaleSumCutoff = 1e-16; // relative remainder for sum a_i^{-alpha}

} // namespace

void Example61Params::validate() {
    const double golden = (std::sqrt(5.0) + 1.0) / 2.0;
    if (!(alpha > 1.5 && alpha < golden)) {
        std::ostringstream os;
        os << "alpha must lie in (3/2, (sqrt(5)+1)/2): got " << alpha;
        throw InvalidArgument(os.str());
    }
    if (!(a > 1.0)) {
        std::ostringstream os;
        os << "a must exceed 1: got " << a;
        throw InvalidArgument(os.str());
    }
    const double rr = r();
    if (!(std::pow(a, rr) > 8.0 * a)) {
        std::ostringstream os;
        os << "a must satisfy a^r > 8a: a=" << a << ", a^r=" << std::pow(a, rr)
           << ", 8a=" << 8.0 * a;
        throw InvalidArgument(os.str());
    }
    if (!(gamma >= 0.0))
        throw InvalidArgument("gamma must be nonnegative");
    if (n_cycles < 0)
        throw InvalidArgument("n_cycles must be nonnegative");

    // Realize the scales a_n = a^{r^n} until the remaining sum is negligible;
    // the doubly exponential growth makes a handful of terms enough.
    scales.clear();
    double exponent = 1.0; // r^n
    for (int n = 0; n < 64; ++n) {
        const double an = std::pow(a, exponent);
        if (!std::isfinite(an) || an > 1e300)
            break;
        scales.push_back(an);
        const double term = std::pow(an, -alpha);
        if (n > n_cycles + 1 && term < kScaleSumCutoff * std::pow(scales.front(), -alpha))
            break;
        exponent *= rr;
    }
    if (static_cast<int>(scales.size()) < n_cycles + 2) {
        std::ostringstream os;
        os << "requested " << n_cycles << " cycles but only " << scales.size()
           << " scales fit in double range";
        throw InvalidArgument(os.str());
    }
    scale_sums.assign(scales.size() + 1, 0.0);
    for (std::size_t i = scales.size(); i-- > 0;)
        scale_sums[i] = scale_sums[i + 1] + std::pow(scales[i], -alpha);
    norm_c = 1.0 / scale_sums[0];

    for (std::size_t n = 0; n + 1 < scales.size(); ++n) {
        if (!(2.0 * scales[n] < scales[n + 1]))
            throw InvalidArgument("scale growth violated: 2*a_n must stay below a_{n+1}");
    }
}

Example61Params make_example61_params(double alpha, double a, double gamma,
                                      int n_cycles) {
    Example61Params p;
    p.alpha = alpha;
    p.a = a;
    p.gamma = gamma;
    p.n_cycles = n_cycles;
    p.validate();
    return p;
}

double example61_base_tail(const Example61Params& p, double x) {
    if (p.scales.empty())
        throw InvalidArgument("params not validated");
    if (x < p.scales[0])
        return 1.0;
    // locate the cycle with a_n <= x
    std::size_t n = 0;
    while (n + 1 < p.scales.size() && x >= p.scales[n + 1])
        ++n;
    const double an = p.scales[n];
    if (x < 2.0 * an) {
        const double slope = std::pow(an, -p.alpha - 1.0);
        return p.norm_c * (p.scale_sums[n] - slope * (x - an));
    }
    // plateau [2 a_n, a_{n+1})
    return p.norm_c * p.scale_sums[n + 1];
}

double example61_tail(const Example61Params& p, double x) {
    if (x < 0.0)
        return 1.0;
    const double base = example61_base_tail(p, x);
    return p.gamma > 0.0 ? std::exp(-p.gamma * x) * base : base;
}

double example61_shift_ratio(const Example61Params& p, double x, double t) {
    if (!(t > 0.0))
        throw InvalidArgument("shift t must be positive");
    const double num = x - t < 0.0 ? 1.0 : example61_base_tail(p, x - t);
    const double den = example61_base_tail(p, x);
    const double tilt = p.gamma > 0.0 ? std::exp(p.gamma * std::min(t, x)) : 1.0;
    return tilt * num / den;
}

TailGrid example61_grid(const Example61Params& p, double step, std::size_t n_points) {
    if (p.n_cycles >= static_cast<int>(p.scales.size()))
        throw InvalidArgument("params not validated for requested cycles");
    const double needed = 2.0 * p.scales[static_cast<std::size_t>(p.n_cycles)];
    const double end = static_cast<double>(n_points - 1) * step;
    if (end < needed) {
        std::ostringstream os;
        os << "grid end " << end << " does not cover " << p.n_cycles
           << " cycles; need at least " << needed;
        throw InvalidArgument(os.str());
    }
    std::vector<double> tails(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        tails[i] = example61_tail(p, static_cast<double>(i) * step);
    return TailGrid::from_tails(std::move(tails), step, false);
}

TailGrid tilt_tail(const TailGrid& f0, double gamma) {
    if (!(gamma > 0.0))
        throw InvalidArgument("tail tilt rate gamma must be positive");
    std::vector<double> tails(f0.size());
    for (std::size_t i = 0; i < f0.size(); ++i)
        tails[i] = std::exp(-gamma * static_cast<double>(i) * f0.step()) * f0.tails()[i];
    return TailGrid::from_tails(std::move(tails), f0.step(), false);
}

namespace {

TailGrid sample_tail(double step, std::size_t n_points, bool lattice_exact,
                     const std::function<double(double)>& tail) {
    if (n_points < 1)
        throw InvalidArgument("family discretization needs at least one lattice point");
    std::vector<double> tails(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        tails[i] = tail(static_cast<double>(i) * step);
    return TailGrid::from_tails(std::move(tails), step, lattice_exact);
}

} // namespace

TailGrid exponential_grid(double lambda, double step, std::size_t n_points) {
    if (!(lambda > 0.0))
        throw InvalidArgument("exponential rate lambda must be positive");
    return sample_tail(step, n_points, false,
                       [lambda](double x) { return std::exp(-lambda * x); });
}

TailGrid pareto_grid(double alpha, double step, std::size_t n_points) {
    if (!(alpha > 0.0))
        throw InvalidArgument("Pareto index alpha must be positive");
    return sample_tail(step, n_points, false, [alpha](double x) {
        return x <= 1.0 ? 1.0 : std::pow(x, -alpha);
    });
}

TailGrid weibull_grid(double beta, double shape, double step, std::size_t n_points) {
    if (!(beta > 0.0))
        throw InvalidArgument("Weibull scale beta must be positive");
    if (!(shape > 0.0 && shape < 1.0))
        throw InvalidArgument("heavy-tailed Weibull needs shape in (0,1)");
    return sample_tail(step, n_points, false, [beta, shape](double x) {
        return std::exp(-std::pow(x / beta, shape));
    });
}

TailGrid lognormal_grid(double mu, double sigma, double step, std::size_t n_points) {
    if (!(sigma > 0.0))
        throw InvalidArgument("lognormal sigma must be positive");
    return sample_tail(step, n_points, false, [mu, sigma](double x) {
        if (x <= 0.0)
            return 1.0;
        return 0.5 * std::erfc((std::log(x) - mu) / (sigma * std::sqrt(2.0)));
    });
}

TailGrid geometric_grid(double q, double step, std::size_t n_points) {
    if (!(q > 0.0 && q < 1.0))
        throw InvalidArgument("geometric parameter q must lie in (0,1)");
    std::vector<double> tails(n_points);
    double t = 1.0;
    for (std::size_t i = 0; i < n_points; ++i) {
        t *= q;
        tails[i] = t; // T[i] = q^{i+1}
    }
    return TailGrid::from_tails(std::move(tails), step, true);
}

TailGrid point_mass_grid(double c, double step, std::size_t n_points) {
    if (!(c >= 0.0))
        throw InvalidArgument("point mass location must be nonnegative");
    const long idx = std::lround(c / step);
    if (idx >= static_cast<long>(n_points)) {
        std::ostringstream os;
        os << "point mass at " << c << " falls beyond the grid end "
           << static_cast<double>(n_points - 1) * step;
        throw InvalidArgument(os.str());
    }
    std::vector<double> masses(n_points, 0.0);
    masses[static_cast<std::size_t>(idx)] = 1.0;
    return TailGrid::from_masses(std::move(masses), step, true);
}

TailGrid standard_family(const std::string& name, const std::vector<double>& params,
                         double step, std::size_t n_points) {
    auto need = [&](std::size_t n) {
        if (params.size() != n) {
            std::ostringstream os;
            os << "family '" << name << "' expects " << n << " parameter(s), got "
               << params.size();
            throw InvalidArgument(os.str());
        }
    };
    if (name == "exponential") {
        need(1);
        return exponential_grid(params[0], step, n_points);
    }
    if (name == "pareto") {
        need(1);
        return pareto_grid(params[0], step, n_points);
    }
    if (name == "weibull") {
        need(2);
        return weibull_grid(params[0], params[1], step, n_points);
    }
    if (name == "lognormal") {
        need(2);
        return lognormal_grid(params[0], params[1], step, n_points);
    }
    if (name == "geometric") {
        need(1);
        return geometric_grid(params[0], step, n_points);
    }
    if (name == "point") {
        need(1);
        return point_mass_grid(params[0], step, n_points);
    }
    throw InvalidArgument("unknown family '" + name + "'");
}

} // namespace tailkit
