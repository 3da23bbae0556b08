#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tailkit {

namespace {

void check_step(double step) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw InvalidArgument("lattice step must be a positive finite real");
}

} // namespace

TailGrid TailGrid::from_masses(std::vector<double> masses, double step,
                               bool lattice_span_exact) {
    check_step(step);
    if (masses.empty())
        throw InvalidArgument("mass sequence must be nonempty");
    double sum = 0.0;
    for (double m : masses) {
        if (!(m >= 0.0))
            throw InvalidArgument("negative mass in lattice construction");
        sum += m;
    }
    if (sum > 1.0 + kMassTol) {
        std::ostringstream os;
        os << "lattice masses sum to " << sum << " > 1";
        throw InvalidArgument(os.str());
    }
    TailGrid g;
    g.masses_ = std::move(masses);
    g.residual_ = std::max(0.0, 1.0 - sum);
    g.step_ = step;
    g.lattice_span_exact_ = lattice_span_exact;
    g.rebuild_tails();
    return g;
}

TailGrid TailGrid::from_masses_residual(std::vector<double> masses, double residual,
                                        double step, bool lattice_span_exact) {
    check_step(step);
    if (masses.empty())
        throw InvalidArgument("mass sequence must be nonempty");
    if (!(residual >= 0.0))
        throw InvalidArgument("negative residual in lattice construction");
    double sum = residual;
    for (double m : masses) {
        if (!(m >= 0.0))
            throw InvalidArgument("negative mass in lattice construction");
        sum += m;
    }
    if (sum > 1.0 + kMassTol) {
        std::ostringstream os;
        os << "lattice masses plus residual sum to " << sum << " > 1";
        throw InvalidArgument(os.str());
    }
    TailGrid g;
    g.masses_ = std::move(masses);
    g.residual_ = residual;
    g.step_ = step;
    g.lattice_span_exact_ = lattice_span_exact;
    g.rebuild_tails();
    return g;
}

TailGrid TailGrid::from_tails(std::vector<double> tails, double step,
                              bool lattice_span_exact) {
    check_step(step);
    if (tails.empty())
        throw InvalidArgument("tail sequence must be nonempty");
    if (!(tails.front() <= 1.0 + kMassTol))
        throw InvalidArgument("tail value exceeds 1");
    for (std::size_t i = 0; i < tails.size(); ++i) {
        if (!(tails[i] >= 0.0) || !std::isfinite(tails[i]))
            throw InvalidArgument("tail values must be finite and nonnegative");
        if (i > 0 && tails[i] > tails[i - 1])
            throw InvalidArgument("tail sequence must be nonincreasing");
    }
    TailGrid g;
    g.step_ = step;
    g.lattice_span_exact_ = lattice_span_exact;
    g.residual_ = tails.back();
    g.masses_.resize(tails.size());
    g.masses_[0] = 1.0 - tails[0];
    for (std::size_t i = 1; i < tails.size(); ++i)
        g.masses_[i] = tails[i - 1] - tails[i];
    g.tails_ = std::move(tails);
    return g;
}

void TailGrid::rebuild_tails() {
    tails_.assign(masses_.size(), 0.0);
    tails_.back() = residual_;
    for (std::size_t i = masses_.size() - 1; i > 0; --i)
        tails_[i - 1] = tails_[i] + masses_[i];
}

double TailGrid::total_mass() const {
    double s = residual_;
    for (double m : masses_)
        s += m;
    return s;
}

double TailGrid::tail_at(double x) const {
    const long i = lattice_index(x, step_);
    if (i < 0)
        return 1.0;
    if (static_cast<std::size_t>(i) >= tails_.size())
        return residual_;
    return tails_[static_cast<std::size_t>(i)];
}

double TailGrid::window_mass(double x, double t_len) const {
    if (!(t_len > 0.0))
        throw InvalidArgument("window length must be positive");
    if (std::isinf(t_len))
        return tail_at(x);
    const long end = lattice_index(x + t_len, step_);
    if (end >= static_cast<long>(tails_.size()))
        return tail_at(x); // window extends past the grid: Delta_infinity convention
    return tail_at(x) - tail_at(x + t_len);
}

TailGrid TailGrid::lump_residual() const {
    TailGrid g = *this;
    g.masses_.back() += g.residual_;
    g.residual_ = 0.0;
    g.rebuild_tails();
    return g;
}

TailGrid build_lattice(const std::vector<double>& masses, double step) {
    return TailGrid::from_masses(masses, step);
}

GammaMoment gamma_moment(const TailGrid& v, double gamma) {
    GammaMoment m;
    const double h = v.step();
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double w = std::exp(gamma * static_cast<double>(i) * h);
        sum += w * v.mass(i);
        if (!std::isfinite(sum)) {
            m.value = std::numeric_limits<double>::infinity();
            m.unbounded = true;
            return m;
        }
    }
    m.value = sum;
    if (v.residual() > 0.0) {
        if (gamma > 0.0) {
            m.lower_bound_only = true;
            m.residual_slack = std::numeric_limits<double>::infinity();
        } else {
            m.residual_slack = v.residual() * std::exp(gamma * v.grid_end());
        }
    }
    return m;
}

TailGrid esscher(const TailGrid& v, double gamma, double residual_tol) {
    if (gamma == 0.0)
        return v;
    const GammaMoment m = gamma_moment(v, gamma);
    if (m.unbounded)
        throw InvalidArgument("Esscher tilt rejected: grid moment M(V,gamma) overflows");
    if (m.lower_bound_only && v.residual() > residual_tol) {
        std::ostringstream os;
        os << "Esscher tilt rejected: M(V,gamma) with gamma=" << gamma
           << " is only a lower bound (residual " << v.residual() << " beyond grid)";
        throw InvalidArgument(os.str());
    }
    const double h = v.step();
    std::vector<double> masses(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        masses[i] = std::exp(gamma * static_cast<double>(i) * h) * v.mass(i) / m.value;
    double residual = 0.0;
    if (v.residual() > 0.0 && gamma < 0.0) {
        // Upper bound on the tilted beyond-grid mass; must be negligible for
        // the tilt to be representable on this grid.
        residual = v.residual() * std::exp(gamma * v.grid_end()) / m.value;
        if (residual > residual_tol) {
            std::ostringstream os;
            os << "Esscher tilt rejected: residual mass " << v.residual()
               << " cannot be placed on the grid (tilted bound " << residual << ")";
            throw InvalidArgument(os.str());
        }
    }
    return TailGrid::from_masses_residual(std::move(masses), residual, h,
                                          v.lattice_span_exact());
}

} // namespace tailkit
