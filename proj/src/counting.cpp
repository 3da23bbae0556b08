#include "counting.hpp"

#include <cmath>
#include <sstream>

namespace tailkit {

bool CountingPmf::all_positive() const {
    for (double p : probs)
        if (!(p > 0.0))
            return false;
    return true;
}

double CountingPmf::total() const {
    double s = tail_residual;
    for (double p : probs)
        s += p;
    return s;
}

CountingPmf poisson_pmf(double mu, int k_cap) {
    if (!(mu > 0.0))
        throw InvalidArgument("Poisson rate mu must be positive");
    if (k_cap < 0)
        throw InvalidArgument("Poisson truncation K must be >= 0");
    CountingPmf pmf;
    pmf.source = CountingPmf::Source::poisson;
    pmf.param = mu;
    pmf.probs.resize(static_cast<std::size_t>(k_cap) + 1);
    double term = std::exp(-mu);
    for (int k = 0; k <= k_cap; ++k) {
        pmf.probs[static_cast<std::size_t>(k)] = term;
        term *= mu / static_cast<double>(k + 1);
    }
    // term now equals p_{K+1}; sum the dropped tail forwards.
    double tail = 0.0;
    int k = k_cap + 1;
    while (term > 0.0 && k < k_cap + 2000) {
        tail += term;
        term *= mu / static_cast<double>(k + 1);
        ++k;
    }
    pmf.tail_residual = tail;
    return pmf;
}

CountingPmf geometric_pmf(double q, int k_cap) {
    if (!(q > 0.0 && q < 1.0))
        throw InvalidArgument("geometric parameter q must lie in (0,1)");
    if (k_cap < 0)
        throw InvalidArgument("geometric truncation K must be >= 0");
    CountingPmf pmf;
    pmf.source = CountingPmf::Source::geometric;
    pmf.param = q;
    pmf.probs.resize(static_cast<std::size_t>(k_cap) + 1);
    const double p = 1.0 - q;
    double term = p;
    for (int k = 0; k <= k_cap; ++k) {
        pmf.probs[static_cast<std::size_t>(k)] = term;
        term *= q;
    }
    pmf.tail_residual = std::pow(q, static_cast<double>(k_cap) + 1.0);
    return pmf;
}

CountingPmf explicit_pmf(std::vector<double> probs) {
    if (probs.empty())
        throw InvalidArgument("explicit pmf must be nonempty");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0))
            throw InvalidArgument("explicit pmf entries must be nonnegative");
        sum += p;
    }
    if (sum > 1.0 + kMassTol) {
        std::ostringstream os;
        os << "explicit pmf sums to " << sum << " > 1";
        throw InvalidArgument(os.str());
    }
    CountingPmf pmf;
    pmf.source = CountingPmf::Source::expl;
    pmf.probs = std::move(probs);
    pmf.tail_residual = std::max(0.0, 1.0 - sum);
    return pmf;
}

int default_poisson_truncation(double mu, double tol, int k_cap_limit) {
    if (!(mu > 0.0))
        throw InvalidArgument("Poisson rate mu must be positive");
    double term = std::exp(-mu);
    double cum = term;
    for (int k = 0; k < k_cap_limit; ++k) {
        if (1.0 - cum < tol && k >= static_cast<int>(mu))
            return k;
        term *= mu / static_cast<double>(k + 1);
        cum += term;
    }
    return k_cap_limit;
}

int default_geometric_truncation(double q, double tol, int k_cap_limit) {
    if (!(q > 0.0 && q < 1.0))
        throw InvalidArgument("geometric parameter q must lie in (0,1)");
    const double k = std::log(tol) / std::log(q) - 1.0;
    const int kk = static_cast<int>(std::ceil(k));
    return std::min(k_cap_limit, std::max(1, kk));
}

} // namespace tailkit
