#include "devqe/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace devqe {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double max_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

struct CurvaturePair {
    std::vector<double> s;
    std::vector<double> y;
    double rho;
};

// d = -H g via the standard two-loop recursion, scaled with
// gamma = s.y / y.y from the newest pair.
std::vector<double> search_direction(const std::deque<CurvaturePair>& history,
                                     std::span<const double> g) {
    std::vector<double> q(g.begin(), g.end());
    std::vector<double> alpha(history.size());
    for (std::size_t i = history.size(); i-- > 0;) {
        const CurvaturePair& p = history[i];
        alpha[i] = p.rho * dot(p.s, q);
        for (std::size_t d = 0; d < q.size(); ++d) q[d] -= alpha[i] * p.y[d];
    }
    double gamma = 1.0;
    if (!history.empty()) {
        const CurvaturePair& newest = history.back();
        gamma = dot(newest.s, newest.y) / dot(newest.y, newest.y);
    }
    for (double& x : q) x *= gamma;
    for (std::size_t i = 0; i < history.size(); ++i) {
        const CurvaturePair& p = history[i];
        const double beta = p.rho * dot(p.y, q);
        for (std::size_t d = 0; d < q.size(); ++d) q[d] += (alpha[i] - beta) * p.s[d];
    }
    for (double& x : q) x = -x;
    return q;
}

enum class LineSearchStatus { Success, Failed, Budget };

}  // namespace

OptResult lbfgs_minimize(const Objective& objective, const GradientFn& gradient,
                         std::span<const double> x0, const LbfgsConfig& config) {
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("lbfgs: empty start point");
    for (double v : x0) {
        if (!std::isfinite(v)) throw std::invalid_argument("lbfgs: x0 must be finite");
    }
    const long long eval_cap =
        config.max_evaluations > 0 ? config.max_evaluations : 1000LL * static_cast<long long>(n);

    long long evaluations = 0;
    std::vector<double> best_x(x0.begin(), x0.end());
    double best_f = std::numeric_limits<double>::infinity();

    // One evaluation = one combined (f, g) query.
    auto evaluate = [&](std::span<const double> x, std::vector<double>& g_out) {
        const double f = objective(x);
        g_out = gradient(x);
        ++evaluations;
        if (f < best_f) {
            best_f = f;
            best_x.assign(x.begin(), x.end());
        }
        return f;
    };

    std::vector<double> x(x0.begin(), x0.end());
    std::vector<double> g;
    double f = evaluate(x, g);

    OptResult result;
    if (config.record_trace) result.trace.emplace_back(0, f);

    std::deque<CurvaturePair> history;
    std::vector<double> x_trial(n), g_trial(n);
    double f_trial = 0.0;

    // Strong-Wolfe search along d from x; on Success x_trial/g_trial/f_trial
    // hold the accepted point.
    auto line_search = [&](std::span<const double> d, double phi0, double dphi0,
                           double alpha_init, double& alpha_out) -> LineSearchStatus {
        constexpr double kAlphaMax = 1e20;
        const double c1 = config.armijo_c1;
        const double c2 = config.wolfe_c2;

        auto probe = [&](double alpha, double& phi, double& dphi) -> bool {
            if (evaluations >= eval_cap) return false;
            for (std::size_t i = 0; i < n; ++i) x_trial[i] = x[i] + alpha * d[i];
            phi = f_trial = evaluate(x_trial, g_trial);
            dphi = dot(g_trial, d);
            return true;
        };

        auto zoom = [&](double lo, double hi, double phi_lo, double dphi_lo, double phi_hi,
                        double& alpha_out2) -> LineSearchStatus {
            for (int j = 0; j < config.max_linesearch; ++j) {
                const double width = hi - lo;
                if (std::abs(width) < 1e-18 * std::max(1.0, std::abs(hi))) {
                    return LineSearchStatus::Failed;
                }
                // Quadratic model through (lo, phi_lo, dphi_lo) and (hi, phi_hi),
                // bisection when the model is degenerate or too close to an end.
                double alpha = 0.5 * (lo + hi);
                const double denom = phi_hi - phi_lo - dphi_lo * width;
                if (denom != 0.0) {
                    const double candidate = lo - 0.5 * dphi_lo * width * width / denom;
                    const double margin = 0.1 * std::abs(width);
                    const double lo_edge = std::min(lo, hi) + margin;
                    const double hi_edge = std::max(lo, hi) - margin;
                    if (candidate >= lo_edge && candidate <= hi_edge) alpha = candidate;
                }
                double phi_j, dphi_j;
                if (!probe(alpha, phi_j, dphi_j)) return LineSearchStatus::Budget;
                if (phi_j > phi0 + c1 * alpha * dphi0 || phi_j >= phi_lo) {
                    hi = alpha;
                    phi_hi = phi_j;
                } else {
                    if (std::abs(dphi_j) <= -c2 * dphi0) {
                        alpha_out2 = alpha;
                        return LineSearchStatus::Success;
                    }
                    if (dphi_j * (hi - lo) >= 0.0) {
                        hi = lo;
                        phi_hi = phi_lo;
                    }
                    lo = alpha;
                    phi_lo = phi_j;
                    dphi_lo = dphi_j;
                }
            }
            return LineSearchStatus::Failed;
        };

        double alpha_prev = 0.0;
        double phi_prev = phi0;
        double dphi_prev = dphi0;
        double alpha = alpha_init;
        for (int i = 1; i <= config.max_linesearch; ++i) {
            double phi_i, dphi_i;
            if (!probe(alpha, phi_i, dphi_i)) return LineSearchStatus::Budget;
            if (phi_i > phi0 + c1 * alpha * dphi0 || (i > 1 && phi_i >= phi_prev)) {
                return zoom(alpha_prev, alpha, phi_prev, dphi_prev, phi_i, alpha_out);
            }
            if (std::abs(dphi_i) <= -c2 * dphi0) {
                alpha_out = alpha;
                return LineSearchStatus::Success;
            }
            if (dphi_i >= 0.0) {
                return zoom(alpha, alpha_prev, phi_i, dphi_i, phi_prev, alpha_out);
            }
            alpha_prev = alpha;
            phi_prev = phi_i;
            dphi_prev = dphi_i;
            alpha = std::min(2.0 * alpha, kAlphaMax);
        }
        return LineSearchStatus::Failed;
    };

    bool converged = false;
    int iteration = 0;
    while (iteration < config.max_iterations) {
        if (max_norm(g) < config.g_tol) {
            converged = true;
            break;
        }
        if (evaluations >= eval_cap) break;

        std::vector<double> d = search_direction(history, g);
        double dphi0 = dot(d, g);
        if (!(dphi0 < 0.0)) {
            // Not a descent direction; restart from steepest descent.
            history.clear();
            for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
            dphi0 = dot(d, g);
            if (!(dphi0 < 0.0)) break;  // gradient numerically zero
        }

        const double alpha_init =
            iteration == 0 ? std::min(1.0, 1.0 / std::sqrt(dot(g, g))) : 1.0;
        double alpha = 0.0;
        const LineSearchStatus status = line_search(d, f, dphi0, alpha_init, alpha);
        if (status != LineSearchStatus::Success) break;

        ++iteration;
        if (config.record_trace) result.trace.emplace_back(iteration, f_trial);

        CurvaturePair pair;
        pair.s.resize(n);
        pair.y.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            pair.s[i] = x_trial[i] - x[i];
            pair.y[i] = g_trial[i] - g[i];
        }
        const double sy = dot(pair.s, pair.y);
        if (sy > 1e-12 * std::sqrt(dot(pair.s, pair.s)) * std::sqrt(dot(pair.y, pair.y))) {
            pair.rho = 1.0 / sy;
            history.push_back(std::move(pair));
            if (static_cast<int>(history.size()) > config.memory) history.pop_front();
        }

        const double decrease = f - f_trial;
        x = x_trial;
        g = g_trial;
        f = f_trial;
        if (decrease <= config.f_tol * std::max({std::abs(f), std::abs(f_trial), 1.0})) {
            converged = true;
            break;
        }
    }

    result.best_params = std::move(best_x);
    result.best_energy = best_f;
    result.iterations = iteration;
    result.evaluations = evaluations;
    result.converged = converged;
    return result;
}

}  // namespace devqe
