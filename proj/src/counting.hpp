#ifndef TAILKIT_COUNTING_HPP
#define TAILKIT_COUNTING_HPP

#include <string>
#include <vector>

#include "common.hpp"

namespace tailkit {

// Law of a nonnegative integer count tau, truncated at K with the dropped
// probability tracked exactly.
struct CountingPmf {
    enum class Source { poisson, geometric, expl };

    std::vector<double> probs;   // p[0..K]
    double tail_residual = 0.0;  // sum_{k>K} p_k
    Source source = Source::expl;
    double param = 0.0;          // mu or q for the built-in families

    std::size_t k_max() const { return probs.empty() ? 0 : probs.size() - 1; }
    bool all_positive() const;   // p_k > 0 for every retained k
    double total() const;
};

// p_k = e^{-mu} mu^k / k!, truncated at K; the dropped tail is accumulated
// directly from the recurrence so it stays accurate when 1 - sum would lose
// all digits to cancellation.
CountingPmf poisson_pmf(double mu, int k_cap);

// p_k = (1-q) q^k, truncated at K; tail is q^{K+1} exactly.
CountingPmf geometric_pmf(double q, int k_cap);

CountingPmf explicit_pmf(std::vector<double> probs);

// Smallest K with truncation tail below tol, capped at k_cap_limit.
int default_poisson_truncation(double mu, double tol = 1e-12, int k_cap_limit = 400);
int default_geometric_truncation(double q, double tol = 1e-12, int k_cap_limit = 4000);

} // namespace tailkit

#endif
