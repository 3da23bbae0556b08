#ifndef TAILKIT_WINDOW_IDENTITY_HPP
#define TAILKIT_WINDOW_IDENTITY_HPP

#include "grid.hpp"

namespace tailkit {

// Checks, at every grid point with live windows, the tilt representation of
// the down-tilted window mass
//   W(x+D_T) = M(W,gamma) e^{-gamma x} V(x+D_T) (1 - gamma Int_0^T
//              V(x+y, x+T] / (e^{gamma y} V(x+D_T)) dy),  W = V tilted by -gamma,
// with the inner integral by left-endpoint lattice quadrature (O(h) bias by
// construction), and the two-sided bound
//   e^{-gamma T} V(x+D_T) <= e^{gamma x} W(x+D_T) / M(W,gamma) <= V(x+D_T).
struct WindowIdentityReport {
    double gamma = 0.0;
    double t_len = 0.0;
    double max_identity_residual = 0.0; // max relative |LHS - RHS|
    double min_sandwich_slack = 0.0;    // min slack of either bound, relative
    double valid_up_to = 0.0;
    std::size_t points_checked = 0;
};

struct WindowIdentityOptions {
    double floor = kDenominatorFloor;
    double x_max = -1.0; // < 0: sweep the whole grid
};

WindowIdentityReport esscher_window_check(const TailGrid& v, double gamma, double t_len,
                                          const WindowIdentityOptions& opts = {});

} // namespace tailkit

#endif
