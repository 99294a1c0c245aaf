#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "amolab/eigensystem.hpp"
#include "amolab/model.hpp"

namespace amolab {

using Mat2 = std::array<std::array<double, 2>, 2>;

// 2x2 matrix with a separately tracked log scale, so cocycle products over
// 1e5+ steps neither overflow nor lose their unimodularity. Rescaling uses
// exact powers of two, so det(m) * 2^(2*scale_pow2) stays 1 up to ordinary
// product rounding.
struct ScaledMatrix {
    Mat2 m{{{1.0, 0.0}, {0.0, 1.0}}};
    double log_scale = 0.0;

    static ScaledMatrix identity() { return {}; }

    void multiply_left(const Mat2& a); // this <- a * this, then rescale
    double max_abs() const;
    double norm2() const;       // spectral norm of m
    double log_norm2() const;   // log_scale + ln ||m||_2
    // ln |det(true matrix)| = ln |det m| + 2 log_scale; meaningful while
    // det(m) has not underflowed (|log_scale * 2| < ~700)
    double log_abs_det() const;
};

// one-step transfer matrix [[E - V(k), -1], [1, 0]]
Mat2 transfer_step(double energy, const ModelParams& p, std::int64_t k);

// product transfer_step(to-1) * ... * transfer_step(from), rescaled each
// step; advances (phi(from), phi(from-1)) to (phi(to), phi(to-1))
ScaledMatrix transfer_product(double energy, const ModelParams& p,
                              std::int64_t from, std::int64_t to);

struct LyapunovEstimate {
    double rate = 0.0;      // (log_scale + ln||m||)/n over the full product
    double tail_rate = 0.0; // same slope measured over the last half
    std::int64_t steps = 0;
};

LyapunovEstimate lyapunov_estimate(double energy, const ModelParams& p, std::int64_t n_steps);

// Checks C e^{-(L+eps)|k1-k2|} ||U(k2)|| <= ||U(k1)|| <= C e^{(L+eps)|k1-k2|} ||U(k2)||
// over all interior pairs at distance >= min_pair_dist and reports the
// smallest C that works.
struct GrowthBoundReport {
    double c_required = 0.0;
    std::int64_t worst_k1 = 0, worst_k2 = 0;
    bool exceeded_cap = false;
    std::size_t pairs = 0;
};

GrowthBoundReport growth_bound_check(std::span<const double> phi, const Window& w,
                                     double lyap, double eps, double c_cap = 1.0e6,
                                     std::int64_t min_pair_dist = 20);

// Geometry for the three-center block decay statement: y1 = 0 (localization
// center frame), y2 = resonance k0, y3 free, block scale k, window fraction
// gamma, slack eps, range constant C >= 1.
struct BlockGeometry {
    std::int64_t k0 = 0;
    std::int64_t y3 = 0;
    std::int64_t k = 0;
    double gamma = 0.02;
    double eps = 0.05;
    double range_const = 1.0;
};

struct BlockDecayReport {
    bool applicable = false;
    std::string reason;       // filled when not applicable
    std::size_t checked = 0;  // admissible y values
    std::size_t passed = 0;
    std::vector<std::int64_t> failures;
};

// Evaluates r_y = max_{|s| <= 10 gamma k} |phi(y+s)| window maxima and checks
// r_y <= max_i r_{y_i} exp(-(L-eps)(|y-y_i| - 3 gamma k)) for every y between
// an admissible pair of centers. phi is given in the frame where its leftmost
// maximum sits at 0.
BlockDecayReport block_decay_check(std::span<const double> phi, const Window& w,
                                   double lyap, const BlockGeometry& g);

struct SingleResonanceReport {
    bool applicable = false;
    std::string reason;
    double t = 0.0;           // measured resonance strength
    double lhs = 0.0;         // ||U(k)||
    double rhs = 0.0;         // max(||U(0)||, ||U(2k)||) e^{-(L-t-eps)|k|}
    bool pass = false;
};

// Statement check of the single-resonance bound ||U(k)|| <=
// max(||U(0)||, ||U(2k)||) e^{-(L-t-eps)|k|} for an eigenfunction given in
// its leftmost-max frame, where |sin pi(2 theta_eff + alpha k)| = e^{-t|k|}.
// theta_eff absorbs the frame shift: theta_eff = theta + n_max * alpha.
SingleResonanceReport single_resonance_check(std::span<const double> phi, const Window& w,
                                             const ModelParams& p, std::int64_t n_max,
                                             std::int64_t k, double t_expected, double eps,
                                             double t_match_rel = 1.0e-6,
                                             std::int64_t min_k = 20);

} // namespace amolab
