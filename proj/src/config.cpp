#include "config.hpp"

#include <fstream>
#include <sstream>

namespace tailkit {

namespace {

struct Line {
    int number;
    std::string key;
    std::string value;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    std::ostringstream os;
    os << "config line " << line << ": " << msg;
    throw InvalidArgument(os.str());
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const Line& l) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(l.value, &pos);
        if (pos != l.value.size())
            fail(l.number, "trailing characters after number in '" + l.value + "'");
        return v;
    } catch (const std::logic_error&) {
        fail(l.number, "expected a number for '" + l.key + "', got '" + l.value + "'");
    }
}

long parse_int(const Line& l) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(l.value, &pos);
        if (pos != l.value.size())
            fail(l.number, "trailing characters after integer in '" + l.value + "'");
        return v;
    } catch (const std::logic_error&) {
        fail(l.number, "expected an integer for '" + l.key + "', got '" + l.value + "'");
    }
}

std::vector<double> parse_list(const Line& l) {
    std::vector<double> out;
    std::istringstream is(l.value);
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            fail(l.number, "expected numbers for '" + l.key + "', got '" + tok + "'");
        }
    }
    if (out.empty())
        fail(l.number, "empty list for '" + l.key + "'");
    return out;
}

std::vector<std::string> split_words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    bool pmf_seen = false, g_seen = false;

    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(lineno, "malformed section header '" + line + "'");
            section = line.substr(1, line.size() - 2);
            if (section != "distribution" && section != "grid" && section != "classes" &&
                section != "conditions" && section != "kesten" && section != "output")
                fail(lineno, "unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(lineno, "expected key = value, got '" + line + "'");
        Line l{lineno, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
        if (section.empty())
            fail(lineno, "key '" + l.key + "' outside any section");

        if (section == "distribution") {
            if (l.key == "family") cfg.distribution.family = l.value;
            else if (l.key == "params") cfg.distribution.params = parse_list(l);
            else if (l.key == "masses") cfg.distribution.masses = parse_list(l);
            else if (l.key == "table") cfg.distribution.table = l.value;
            else if (l.key == "alpha") cfg.distribution.alpha = parse_double(l);
            else if (l.key == "a") cfg.distribution.a = parse_double(l);
            else if (l.key == "gamma") cfg.distribution.gamma = parse_double(l);
            else if (l.key == "cycles") cfg.distribution.cycles = static_cast<int>(parse_int(l));
            else if (l.key == "mu") cfg.levy.mu = parse_double(l);
            else if (l.key == "h1_family") cfg.levy.h1_family = l.value;
            else if (l.key == "h1_params") cfg.levy.h1_params = parse_list(l);
            else fail(lineno, "unknown key '" + l.key + "' in [distribution]");
        } else if (section == "grid") {
            if (l.key == "step") cfg.grid.step = parse_double(l);
            else if (l.key == "n") cfg.grid.n = static_cast<std::size_t>(parse_int(l));
            else if (l.key == "x_lo") cfg.grid.x_lo = parse_double(l);
            else fail(lineno, "unknown key '" + l.key + "' in [grid]");
        } else if (section == "classes") {
            if (l.key == "check") cfg.class_checks.push_back(l.value);
            else fail(lineno, "unknown key '" + l.key + "' in [classes]");
        } else if (section == "conditions") {
            auto& c = cfg.conditions;
            if (l.key == "liminf_gamma") c.liminf_gamma = parse_double(l);
            else if (l.key == "liminf_kmax") c.liminf_kmax = static_cast<int>(parse_int(l));
            else if (l.key == "t_ladder") c.t_ladder = parse_list(l);
            else if (l.key == "n0_epsilons") c.n0_epsilons = parse_list(l);
            else if (l.key == "n0_variant") {
                if (l.value != "k1" && l.value != "k")
                    fail(lineno, "n0_variant must be 'k1' or 'k'");
                c.n0_variant = l.value;
            } else if (l.key == "n0_local_T") c.n0_local_t = parse_double(l);
            else if (l.key == "pmf") {
                const auto words = split_words(l.value);
                if (words.empty())
                    fail(lineno, "pmf needs a kind");
                c.pmf_kind = words[0];
                if (c.pmf_kind == "poisson" || c.pmf_kind == "geometric") {
                    if (words.size() != 2)
                        fail(lineno, "pmf " + c.pmf_kind + " needs exactly one parameter");
                    c.pmf_param = std::stod(words[1]);
                } else if (c.pmf_kind == "explicit") {
                    if (words.size() < 2)
                        fail(lineno, "pmf explicit needs probabilities");
                    c.pmf_probs.clear();
                    for (std::size_t i = 1; i < words.size(); ++i)
                        c.pmf_probs.push_back(std::stod(words[i]));
                } else {
                    fail(lineno, "unknown pmf kind '" + c.pmf_kind + "'");
                }
                pmf_seen = true;
            } else if (l.key == "pmf_kmax") c.pmf_kmax = static_cast<int>(parse_int(l));
            else if (l.key == "bridge_epsilon1") c.bridge_epsilon1 = parse_double(l);
            else if (l.key == "max_len") c.max_len = static_cast<std::size_t>(parse_int(l));
            else fail(lineno, "unknown key '" + l.key + "' in [conditions]");
        } else if (section == "kesten") {
            auto& k = cfg.kesten;
            if (l.key == "gamma") k.gamma = parse_double(l);
            else if (l.key == "k_max") k.k_max = static_cast<int>(parse_int(l));
            else if (l.key == "m_choice") k.m_choice = parse_double(l);
            else if (l.key == "g") {
                const auto words = split_words(l.value);
                if (words.empty())
                    fail(lineno, "g needs a kind");
                k.g_kind = words[0];
                if (k.g_kind == "compound_poisson") {
                    if (words.size() != 2)
                        fail(lineno, "g compound_poisson needs a rate");
                    k.g_mu = std::stod(words[1]);
                } else if (k.g_kind == "family") {
                    if (words.size() < 2)
                        fail(lineno, "g family needs a family name");
                    k.g_family = words[1];
                    k.g_params.clear();
                    for (std::size_t i = 2; i < words.size(); ++i)
                        k.g_params.push_back(std::stod(words[i]));
                } else {
                    fail(lineno, "unknown g kind '" + k.g_kind + "'");
                }
                g_seen = true;
            } else if (l.key == "g_n") k.g_n = static_cast<std::size_t>(parse_int(l));
            else fail(lineno, "unknown key '" + l.key + "' in [kesten]");
        } else if (section == "output") {
            if (l.key == "dir") cfg.output.dir = l.value;
            else if (l.key == "prefix") cfg.output.prefix = l.value;
            else fail(lineno, "unknown key '" + l.key + "' in [output]");
        }
    }
    (void)pmf_seen;
    (void)g_seen;
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

namespace {

void emit_list(std::ostream& os, const std::string& key,
               const std::vector<double>& vals) {
    os << key << " =";
    for (double v : vals)
        os << " " << to_shortest(v);
    os << "\n";
}

} // namespace

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    os << "[distribution]\n";
    os << "family = " << c.distribution.family << "\n";
    if (!c.distribution.params.empty())
        emit_list(os, "params", c.distribution.params);
    if (!c.distribution.masses.empty())
        emit_list(os, "masses", c.distribution.masses);
    if (!c.distribution.table.empty())
        os << "table = " << c.distribution.table << "\n";
    if (c.distribution.family == "example61") {
        os << "alpha = " << to_shortest(c.distribution.alpha) << "\n";
        os << "a = " << to_shortest(c.distribution.a) << "\n";
        os << "gamma = " << to_shortest(c.distribution.gamma) << "\n";
        os << "cycles = " << c.distribution.cycles << "\n";
    }
    os << "mu = " << to_shortest(c.levy.mu) << "\n";
    os << "h1_family = " << c.levy.h1_family << "\n";
    emit_list(os, "h1_params", c.levy.h1_params);
    os << "\n[grid]\n";
    os << "step = " << to_shortest(c.grid.step) << "\n";
    os << "n = " << c.grid.n << "\n";
    os << "x_lo = " << to_shortest(c.grid.x_lo) << "\n";
    os << "\n[classes]\n";
    for (const std::string& s : c.class_checks)
        os << "check = " << s << "\n";
    os << "\n[conditions]\n";
    os << "liminf_gamma = " << to_shortest(c.conditions.liminf_gamma) << "\n";
    os << "liminf_kmax = " << c.conditions.liminf_kmax << "\n";
    if (!c.conditions.t_ladder.empty())
        emit_list(os, "t_ladder", c.conditions.t_ladder);
    emit_list(os, "n0_epsilons", c.conditions.n0_epsilons);
    os << "n0_variant = " << c.conditions.n0_variant << "\n";
    if (c.conditions.n0_local_t)
        os << "n0_local_T = " << to_shortest(*c.conditions.n0_local_t) << "\n";
    if (c.conditions.pmf_kind == "explicit") {
        os << "pmf = explicit";
        for (double p : c.conditions.pmf_probs)
            os << " " << to_shortest(p);
        os << "\n";
    } else {
        os << "pmf = " << c.conditions.pmf_kind << " "
           << to_shortest(c.conditions.pmf_param) << "\n";
    }
    if (c.conditions.pmf_kmax)
        os << "pmf_kmax = " << *c.conditions.pmf_kmax << "\n";
    if (c.conditions.bridge_epsilon1)
        os << "bridge_epsilon1 = " << to_shortest(*c.conditions.bridge_epsilon1) << "\n";
    if (c.conditions.max_len)
        os << "max_len = " << *c.conditions.max_len << "\n";
    os << "\n[kesten]\n";
    os << "gamma = " << to_shortest(c.kesten.gamma) << "\n";
    os << "k_max = " << c.kesten.k_max << "\n";
    if (c.kesten.m_choice)
        os << "m_choice = " << to_shortest(*c.kesten.m_choice) << "\n";
    if (c.kesten.g_kind == "family") {
        os << "g = family " << c.kesten.g_family;
        for (double v : c.kesten.g_params)
            os << " " << to_shortest(v);
        os << "\n";
    } else {
        os << "g = compound_poisson " << to_shortest(c.kesten.g_mu) << "\n";
    }
    if (c.kesten.g_n)
        os << "g_n = " << *c.kesten.g_n << "\n";
    os << "\n[output]\n";
    os << "dir = " << c.output.dir << "\n";
    os << "prefix = " << c.output.prefix << "\n";
    return os.str();
}

} // namespace tailkit
