#ifndef TAILKIT_CLASSIFY_HPP
#define TAILKIT_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "ratio.hpp"

namespace tailkit {

// Distribution classes the diagnostics can test. The *_delta variants are
// the local (window-mass) versions over windows of length T; tl_delta is the
// tilted-local class {V : M(V,gamma) finite and V_gamma locally long-tailed}.
enum class ClassTag { l, s, os, ol, l_delta, s_delta, os_delta, ol_delta, tl_delta };

struct ClassSpec {
    ClassTag tag = ClassTag::l;
    double gamma = 0.0; // for l, s, tl_delta
    double t_len = 0.0; // window length for the *_delta classes

    std::string name() const;  // e.g. "L(gamma=1)" / "OSdelta(T=2)"
    std::string slug() const;  // filesystem-safe form
    bool needs_gamma() const;
    bool needs_t_len() const;
};

// Parse "L gamma=1", "OSdelta T=2", "TLdelta gamma=0.5 T=1", ...
ClassSpec parse_class_spec(const std::string& text);

enum class VerdictStatus { consistent_member, consistent_nonmember, inconclusive };

// What a single ratio series contributed to the verdict.
enum class SeriesCall {
    member,
    nonmember_blowup,
    nonmember_divergent,
    nonmember_stabilized_away,
    nonmember_oscillation,
    inconclusive,
};

std::string to_string(VerdictStatus s);
std::string to_string(SeriesCall c);

struct SeriesEvidence {
    std::string label;            // e.g. "shift t=1"
    double target = 0.0;          // limit target; 0 for bounded-type checks
    bool has_target = false;
    SeriesCall call = SeriesCall::inconclusive;
    RatioSeries series;
};

struct DiagConfig {
    RatioOptions ratio;
    std::vector<double> t_ladder;  // empty -> {h, 2h, 5h, 10h}
    double x_lo = 0.0;
    double band = 0.02;            // relative tolerance around the target
    double slope_band = 1e-3;      // per-grid-step flatness band
    double osc_margin = 0.25;      // relative excursion threshold
    double moment_lump_tol = 1e-12; // residual small enough to lump for moments
};

struct Verdict {
    VerdictStatus status = VerdictStatus::inconclusive;
    ClassSpec target;
    std::vector<SeriesEvidence> evidence;
    std::vector<std::string> notes;  // snaps, lumps, rejected tilts, ...
};

// Per-series verdicts, exposed for tests and for the condition checkers.
SeriesCall classify_series_limit(const RatioSeries& s, double target,
                                 const DiagConfig& cfg);
SeriesCall classify_series_bounded(const RatioSeries& s, const DiagConfig& cfg);

// Membership evidence for one class on one grid. Deterministic in
// (v, spec, cfg); verdicts are evidence, never proof.
Verdict classify(const TailGrid& v, const ClassSpec& spec, const DiagConfig& cfg);

} // namespace tailkit

#endif
