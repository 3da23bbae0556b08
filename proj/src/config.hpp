#ifndef TAILKIT_CONFIG_HPP
#define TAILKIT_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace tailkit {

// One distribution specification as it appears in the config vocabulary.
struct DistSpec {
    std::string family;            // exponential|pareto|weibull|lognormal|
                                   // geometric|point|example61|explicit|levy_table
    std::vector<double> params;    // standard-family parameters
    std::vector<double> masses;    // family = explicit
    std::string table;             // family = levy_table (CSV path: x,nu_tail)
    // example61 parameters
    double alpha = 1.6;
    double a = 32.0;
    double gamma = 1.0;
    int cycles = 2;

    bool operator==(const DistSpec&) const = default;
};

struct GridSpec {
    double step = 0.25;
    std::size_t n = 1024;
    double x_lo = 0.0;

    bool operator==(const GridSpec&) const = default;
};

struct ConditionsSpec {
    double liminf_gamma = 0.0;
    int liminf_kmax = 3;
    std::vector<double> t_ladder;          // empty: diagnostics default
    std::vector<double> n0_epsilons = {0.9, 0.5, 0.1};
    std::string n0_variant = "k1";         // "k1" (k-1 powers) or "k"
    std::optional<double> n0_local_t;
    std::string pmf_kind = "poisson";      // poisson|geometric|explicit
    double pmf_param = 1.0;
    std::vector<double> pmf_probs;         // explicit pmf
    std::optional<int> pmf_kmax;
    std::optional<double> bridge_epsilon1;
    std::optional<std::size_t> max_len;    // clip for power ladders

    bool operator==(const ConditionsSpec&) const = default;
};

struct KestenSpec {
    double gamma = 0.0;
    int k_max = 20;
    std::optional<double> m_choice;
    std::string g_kind = "compound_poisson"; // or "family"
    double g_mu = 1.0;                        // compound_poisson rate
    std::string g_family;                     // when g_kind = family
    std::vector<double> g_params;
    std::optional<std::size_t> g_n;           // grid length override for g

    bool operator==(const KestenSpec&) const = default;
};

struct LevySpec {
    double mu = 1.0;                       // Poisson rate when F given directly
    std::string h1_family = "exponential"; // light factor H1
    std::vector<double> h1_params = {5.0};

    bool operator==(const LevySpec&) const = default;
};

struct OutputSpec {
    std::string dir = "out";
    std::string prefix = "tailkit";

    bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
    DistSpec distribution;
    GridSpec grid;
    std::vector<std::string> class_checks; // raw "check =" lines, parsed on use
    ConditionsSpec conditions;
    KestenSpec kesten;
    LevySpec levy;
    OutputSpec output;

    bool operator==(const RunConfig&) const = default;
};

// Parse the sectioned key-value format. Unknown sections or keys are errors;
// every message carries the 1-based line number.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Canonical serialization (all resolved values, defaults included);
// parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

} // namespace tailkit

#endif
