#ifndef TAILKIT_KESTEN_HPP
#define TAILKIT_KESTEN_HPP

#include <optional>
#include <string>

#include "classify.hpp"
#include "conv.hpp"

namespace tailkit {

// Constants of the geometric-in-k uniform domination
//   V-power-k tail(x) <= K * M^k * G tail(x)
// together with the grid sweep that checked it.
struct KestenCertificate {
    bool feasible = false;
    std::string infeasibility; // violated constraint when !feasible

    double a1 = 0.0;        // sup_x V_bar(x)/G_bar(x)
    double cstar_g = 0.0;   // conservative estimate of the conv2 indicator of G
    double mv = 0.0;        // M(V, gamma)
    double mg = 0.0;        // M(G, gamma)
    double b = 0.0;         // A1 * (C*(G) - 2 M(G,gamma))
    double a = 0.0;         // M(V,gamma) + b
    double m = 0.0;         // growth base, in (a, 1+a)
    double epsilon = 0.0;   // admissible slack constant
    double k_const = 0.0;   // prefactor K
    double x0 = 0.0;        // threshold point from the window fit

    int verified_k_max = 0;
    double sweep_up_to = 0.0;
    double max_violation = 0.0; // most negative slack found; >= 0 means verified
};

struct KestenOptions {
    RatioOptions ratio;
    double x_lo = 0.0;
    double slope_band = 1e-3;
    std::size_t power_max_len = 1u << 20;
};

// Build the certificate constants from grid estimates, then sweep all
// k <= k_max and every lattice point, recording the worst slack of
// K * M^k * G_bar(x) - V-power-k tail(x).
KestenCertificate kesten_verify(const TailGrid& v, const TailGrid& g, double gamma,
                                int k_max, std::optional<double> m_choice = std::nullopt,
                                const KestenOptions& opts = {});

// Re-evaluate the certified inequality at a single point; used by the
// soundness spot checks.
double kesten_slack_at(const KestenCertificate& cert, const TailGrid& power_k,
                       const TailGrid& g, int k, double x);

} // namespace tailkit

#endif
