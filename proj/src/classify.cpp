#include "classify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace tailkit {

namespace {

const char* tag_name(ClassTag t) {
    switch (t) {
    case ClassTag::l: return "L";
    case ClassTag::s: return "S";
    case ClassTag::os: return "OS";
    case ClassTag::ol: return "OL";
    case ClassTag::l_delta: return "Ldelta";
    case ClassTag::s_delta: return "Sdelta";
    case ClassTag::os_delta: return "OSdelta";
    case ClassTag::ol_delta: return "OLdelta";
    case ClassTag::tl_delta: return "TLdelta";
    }
    return "?";
}

std::string format_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

bool ClassSpec::needs_gamma() const {
    return tag == ClassTag::l || tag == ClassTag::s || tag == ClassTag::tl_delta;
}

bool ClassSpec::needs_t_len() const {
    switch (tag) {
    case ClassTag::l_delta:
    case ClassTag::s_delta:
    case ClassTag::os_delta:
    case ClassTag::ol_delta:
    case ClassTag::tl_delta:
        return true;
    default:
        return false;
    }
}

std::string ClassSpec::name() const {
    std::string s = tag_name(tag);
    std::string args;
    if (needs_gamma())
        args += "gamma=" + format_num(gamma);
    if (needs_t_len()) {
        if (!args.empty())
            args += ",";
        args += "T=" + format_num(t_len);
    }
    if (!args.empty())
        s += "(" + args + ")";
    return s;
}

std::string ClassSpec::slug() const {
    std::string n = name();
    std::string out;
    for (char c : n) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            out += c;
        else if (c == '.')
            out += 'p';
        else if (!out.empty() && out.back() != '_')
            out += '_';
    }
    while (!out.empty() && out.back() == '_')
        out.pop_back();
    return out;
}

ClassSpec parse_class_spec(const std::string& text) {
    std::istringstream is(text);
    std::string tag;
    is >> tag;
    ClassSpec spec;
    if (tag == "L") spec.tag = ClassTag::l;
    else if (tag == "S") spec.tag = ClassTag::s;
    else if (tag == "OS") spec.tag = ClassTag::os;
    else if (tag == "OL") spec.tag = ClassTag::ol;
    else if (tag == "Ldelta") spec.tag = ClassTag::l_delta;
    else if (tag == "Sdelta") spec.tag = ClassTag::s_delta;
    else if (tag == "OSdelta") spec.tag = ClassTag::os_delta;
    else if (tag == "OLdelta") spec.tag = ClassTag::ol_delta;
    else if (tag == "TLdelta") spec.tag = ClassTag::tl_delta;
    else throw InvalidArgument("unknown class tag '" + tag + "'");

    bool has_gamma = false, has_t = false;
    std::string kv;
    while (is >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("bad class parameter '" + kv + "' (expect key=value)");
        const std::string key = kv.substr(0, eq);
        const double val = std::stod(kv.substr(eq + 1));
        if (key == "gamma") {
            spec.gamma = val;
            has_gamma = true;
        } else if (key == "T") {
            spec.t_len = val;
            has_t = true;
        } else {
            throw InvalidArgument("unknown class parameter '" + key + "'");
        }
    }
    if (spec.needs_gamma() && !has_gamma)
        throw InvalidArgument(std::string(tag_name(spec.tag)) + " requires gamma=<value>");
    if (spec.needs_t_len() && !has_t)
        throw InvalidArgument(std::string(tag_name(spec.tag)) + " requires T=<value>");
    if (spec.needs_gamma() && !(spec.gamma >= 0.0))
        throw InvalidArgument("gamma must be nonnegative");
    if (spec.tag == ClassTag::tl_delta && !(spec.gamma > 0.0))
        throw InvalidArgument("TLdelta requires gamma > 0");
    if (spec.needs_t_len() && !(spec.t_len > 0.0))
        throw InvalidArgument("T must be positive");
    return spec;
}

std::string to_string(VerdictStatus s) {
    switch (s) {
    case VerdictStatus::consistent_member: return "consistent-member";
    case VerdictStatus::consistent_nonmember: return "consistent-nonmember";
    case VerdictStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(SeriesCall c) {
    switch (c) {
    case SeriesCall::member: return "member";
    case SeriesCall::nonmember_blowup: return "nonmember-blowup";
    case SeriesCall::nonmember_divergent: return "nonmember-divergent";
    case SeriesCall::nonmember_stabilized_away: return "nonmember-stabilized-away";
    case SeriesCall::nonmember_oscillation: return "nonmember-oscillation";
    case SeriesCall::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

struct ExcursionCount {
    int above = 0;
    int below = 0;
};

// Maximal runs beyond target*(1 +- osc_margin), counted only when separated
// by a return into the +-band. One excursion is ambiguous (a transient); two
// separated excursions are evidence the ratio keeps leaving its putative
// limit.
ExcursionCount count_excursions(const RatioSeries& s, double target,
                                const DiagConfig& cfg) {
    ExcursionCount c;
    bool armed_above = true, armed_below = true;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (s.flags[i] != PointFlag::ok)
            continue;
        const double dev = (s.values[i] - target) / target;
        if (armed_above && dev >= cfg.osc_margin) {
            ++c.above;
            armed_above = false;
        } else if (!armed_above && std::fabs(dev) <= cfg.band) {
            armed_above = true;
        }
        if (armed_below && dev <= -cfg.osc_margin) {
            ++c.below;
            armed_below = false;
        } else if (!armed_below && std::fabs(dev) <= cfg.band) {
            armed_below = true;
        }
    }
    return c;
}

} // namespace

SeriesCall classify_series_limit(const RatioSeries& s, double target,
                                 const DiagConfig& cfg) {
    if (s.has_blowup())
        return SeriesCall::nonmember_blowup;
    if (s.windows.empty() || !(target > 0.0))
        return SeriesCall::inconclusive;

    const ExcursionCount exc = count_excursions(s, target, cfg);
    if (exc.above >= 2 || exc.below >= 2 || (exc.above >= 1 && exc.below >= 1))
        return SeriesCall::nonmember_oscillation;

    bool all_in_band = true, all_flat = true;
    bool all_above = true, all_below = true;
    bool all_rising = true, all_falling = true;
    for (const WindowSummary& w : s.windows) {
        const double dev_sup = (w.sup - target) / target;
        const double dev_inf = (w.inf - target) / target;
        if (std::fabs(dev_sup) > cfg.band || std::fabs(dev_inf) > cfg.band)
            all_in_band = false;
        if (std::fabs(w.slope) > cfg.slope_band)
            all_flat = false;
        if (!(dev_inf > cfg.band))
            all_above = false;
        if (!(dev_sup < -cfg.band))
            all_below = false;
        if (!(w.slope > cfg.slope_band))
            all_rising = false;
        if (!(w.slope < -cfg.slope_band))
            all_falling = false;
    }
    if (all_in_band && all_flat && exc.above == 0 && exc.below == 0)
        return SeriesCall::member;
    if (all_flat && (all_above || all_below))
        return SeriesCall::nonmember_stabilized_away;
    const WindowSummary& recent = s.windows.front(); // smallest window
    if (all_rising && (recent.inf - target) / target > cfg.band)
        return SeriesCall::nonmember_divergent;
    if (all_falling && (recent.sup - target) / target < -cfg.band)
        return SeriesCall::nonmember_divergent;
    return SeriesCall::inconclusive;
}

SeriesCall classify_series_bounded(const RatioSeries& s, const DiagConfig& cfg) {
    if (s.has_blowup())
        return SeriesCall::nonmember_blowup;
    if (s.windows.empty())
        return SeriesCall::inconclusive;
    bool all_flat = true, all_rising = true;
    for (const WindowSummary& w : s.windows) {
        if (std::fabs(w.slope) > cfg.slope_band)
            all_flat = false;
        if (!(w.slope > cfg.slope_band))
            all_rising = false;
    }
    if (all_rising && s.windows.front().inf > s.windows.back().inf)
        return SeriesCall::nonmember_divergent;
    if (all_flat)
        return SeriesCall::member;
    return SeriesCall::inconclusive;
}

namespace {

std::vector<double> effective_t_ladder(const TailGrid& v, const DiagConfig& cfg) {
    if (!cfg.t_ladder.empty())
        return cfg.t_ladder;
    const double h = v.step();
    return {h, 2.0 * h, 5.0 * h, 10.0 * h};
}

void add_series(Verdict& verdict, std::string label, double target, bool has_target,
                RatioSeries series, const DiagConfig& cfg) {
    SeriesEvidence ev;
    ev.label = std::move(label);
    ev.target = target;
    ev.has_target = has_target;
    ev.call = has_target ? classify_series_limit(series, target, cfg)
                         : classify_series_bounded(series, cfg);
    if (series.t_snapped)
        verdict.notes.push_back("shift snapped to lattice span: t=" +
                                format_num(series.t_effective));
    ev.series = std::move(series);
    verdict.evidence.push_back(std::move(ev));
}

void aggregate(Verdict& v) {
    bool any_nonmember = false, all_member = !v.evidence.empty();
    for (const SeriesEvidence& ev : v.evidence) {
        switch (ev.call) {
        case SeriesCall::member:
            break;
        case SeriesCall::inconclusive:
            all_member = false;
            break;
        default:
            any_nonmember = true;
            all_member = false;
            break;
        }
    }
    if (any_nonmember)
        v.status = VerdictStatus::consistent_nonmember;
    else if (all_member)
        v.status = VerdictStatus::consistent_member;
    else
        v.status = VerdictStatus::inconclusive;
}

// Grid moment with the tiny-residual lumping policy; nullopt when the moment
// cannot be certified finite on this grid.
std::optional<double> certified_moment(const TailGrid& v, double gamma,
                                       const DiagConfig& cfg, Verdict& verdict,
                                       TailGrid* lumped_out) {
    const TailGrid* g = &v;
    TailGrid lumped = v;
    if (v.residual() > 0.0 && gamma > 0.0) {
        if (v.residual() > cfg.moment_lump_tol) {
            verdict.notes.push_back("gamma-moment is only a lower bound (residual " +
                                    format_num(v.residual()) + "); cannot certify");
            return std::nullopt;
        }
        lumped = v.lump_residual();
        g = &lumped;
        verdict.notes.push_back("residual " + format_num(v.residual()) +
                                " lumped onto the last lattice point for moments");
    }
    const GammaMoment m = gamma_moment(*g, gamma);
    if (m.unbounded) {
        verdict.notes.push_back("gamma-moment overflows on this grid");
        return std::nullopt;
    }
    if (lumped_out)
        *lumped_out = *g;
    return m.value;
}

} // namespace

Verdict classify(const TailGrid& v, const ClassSpec& spec, const DiagConfig& cfg) {
    Verdict verdict;
    verdict.target = spec;
    const std::vector<double> ladder = effective_t_ladder(v, cfg);

    switch (spec.tag) {
    case ClassTag::l: {
        for (double t : ladder) {
            RatioSeries s = ratio_shift(v, t, cfg.x_lo, cfg.ratio);
            const double target = std::exp(spec.gamma * s.t_effective);
            add_series(verdict, "shift t=" + format_num(s.t_effective), target, true,
                       std::move(s), cfg);
        }
        break;
    }
    case ClassTag::ol: {
        for (double t : ladder) {
            RatioSeries s = ratio_shift(v, t, cfg.x_lo, cfg.ratio);
            add_series(verdict, "shift t=" + format_num(s.t_effective), 0.0, false,
                       std::move(s), cfg);
        }
        break;
    }
    case ClassTag::os: {
        add_series(verdict, "conv2", 0.0, false, ratio_conv2(v, cfg.x_lo, cfg.ratio),
                   cfg);
        break;
    }
    case ClassTag::s: {
        const std::optional<double> m = certified_moment(v, spec.gamma, cfg, verdict,
                                                         nullptr);
        if (!m) {
            verdict.status = VerdictStatus::inconclusive;
            return verdict;
        }
        if (spec.gamma > 0.0) {
            // S(gamma) with gamma > 0 also requires membership in L(gamma).
            for (double t : ladder) {
                RatioSeries s = ratio_shift(v, t, cfg.x_lo, cfg.ratio);
                const double target = std::exp(spec.gamma * s.t_effective);
                add_series(verdict, "shift t=" + format_num(s.t_effective), target, true,
                           std::move(s), cfg);
            }
        }
        add_series(verdict, "conv2", 2.0 * *m, true, ratio_conv2(v, cfg.x_lo, cfg.ratio),
                   cfg);
        break;
    }
    case ClassTag::l_delta: {
        for (double t : ladder) {
            RatioSeries s = local_ratio_shift(v, t, spec.t_len, cfg.x_lo, cfg.ratio);
            add_series(verdict, "local shift t=" + format_num(s.t_effective), 1.0, true,
                       std::move(s), cfg);
        }
        break;
    }
    case ClassTag::ol_delta: {
        for (double t : ladder) {
            RatioSeries s = local_ratio_shift(v, t, spec.t_len, cfg.x_lo, cfg.ratio);
            add_series(verdict, "local shift t=" + format_num(s.t_effective), 0.0, false,
                       std::move(s), cfg);
        }
        break;
    }
    case ClassTag::os_delta: {
        add_series(verdict, "local conv2", 0.0, false,
                   local_ratio_conv2(v, spec.t_len, cfg.x_lo, cfg.ratio), cfg);
        break;
    }
    case ClassTag::s_delta: {
        for (double t : ladder) {
            RatioSeries s = local_ratio_shift(v, t, spec.t_len, cfg.x_lo, cfg.ratio);
            add_series(verdict, "local shift t=" + format_num(s.t_effective), 1.0, true,
                       std::move(s), cfg);
        }
        add_series(verdict, "local conv2", 2.0, true,
                   local_ratio_conv2(v, spec.t_len, cfg.x_lo, cfg.ratio), cfg);
        break;
    }
    case ClassTag::tl_delta: {
        TailGrid base = v;
        const std::optional<double> m = certified_moment(v, spec.gamma, cfg, verdict,
                                                         &base);
        if (!m) {
            verdict.status = VerdictStatus::inconclusive;
            return verdict;
        }
        TailGrid tilted = base;
        try {
            tilted = esscher(base, spec.gamma);
        } catch (const InvalidArgument& e) {
            verdict.notes.push_back(std::string("Esscher tilt unavailable: ") + e.what());
            verdict.status = VerdictStatus::inconclusive;
            return verdict;
        }
        for (double t : ladder) {
            RatioSeries s = local_ratio_shift(tilted, t, spec.t_len, cfg.x_lo, cfg.ratio);
            add_series(verdict, "tilted local shift t=" + format_num(s.t_effective), 1.0,
                       true, std::move(s), cfg);
        }
        break;
    }
    }
    aggregate(verdict);
    return verdict;
}

} // namespace tailkit
