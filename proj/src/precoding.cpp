// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#include "orisvlc/precoding.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "orisvlc/metrics.hpp"

namespace orisvlc {

namespace {

constexpr double kSubgradientFloor = 1e-12;
constexpr double kGammaFloor = 1e-12;

void check_dims(const Eigen::MatrixXd& H, const Eigen::MatrixXd& P) {
    if (H.rows() != P.rows() || H.cols() != P.cols()) {
        throw DimensionError("effective channel matrix and precoder dimensions differ");
    }
    if (P.cols() < 1 || P.rows() < 1) throw DimensionError("precoder must be nonempty");
}

// Interference power of user k: sum_{j!=k} (h_k . p_j)^2, from G = H'P.
double interference(const Eigen::MatrixXd& G, int k) {
    double sum = 0.0;
    for (int j = 0; j < G.cols(); ++j) {
        if (j != k) sum += G(k, j) * G(k, j);
    }
    return sum;
}

} // namespace

void AscentConfig::validate() const {
    if (!(step_size > 0.0)) throw ConfigError("step_size must be > 0");
    if (max_iterations < 1) throw ConfigError("max_ascent_iterations must be >= 1");
    if (!(objective_tolerance > 0.0)) throw ConfigError("objective_tolerance must be > 0");
    if (projection_alternations < 1) throw ConfigError("projection_alternations must be >= 1");
    if (!(projection_tolerance > 0.0)) throw ConfigError("projection_tolerance must be > 0");
    if (max_restarts < 0) throw ConfigError("max_restarts must be >= 0");
}

FeasibilityResiduals feasibility_residuals(const Eigen::MatrixXd& P) {
    const double col_target = static_cast<double>(P.rows()) / static_cast<double>(P.cols());
    FeasibilityResiduals res;
    for (int i = 0; i < P.rows(); ++i) {
        res.rows = std::max(res.rows, std::abs(P.row(i).squaredNorm() - 1.0));
    }
    for (int k = 0; k < P.cols(); ++k) {
        res.cols = std::max(res.cols, std::abs(P.col(k).squaredNorm() - col_target));
    }
    return res;
}

double g_objective(const Eigen::MatrixXd& H, const Eigen::MatrixXd& P,
                   const Eigen::VectorXd& gamma, double noise_variance) {
    check_dims(H, P);
    if (gamma.size() != P.cols()) throw DimensionError("gamma length must equal the user count");
    const Eigen::MatrixXd G = H.transpose() * P;
    double g = 0.0;
    for (int k = 0; k < P.cols(); ++k) {
        const double gk = gamma(k);
        g += 2.0 * gk * std::abs(G(k, k)) - gk * gk * (interference(G, k) + noise_variance);
    }
    return g;
}

Eigen::MatrixXd grad_p(const Eigen::MatrixXd& H, const Eigen::MatrixXd& P,
                       const Eigen::VectorXd& gamma, double noise_variance) {
    (void)noise_variance; // g is linear in sigma^2 through gamma only
    check_dims(H, P);
    if (gamma.size() != P.cols()) throw DimensionError("gamma length must equal the user count");
    const Eigen::MatrixXd G = H.transpose() * P;
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(P.rows(), P.cols());
    for (int k = 0; k < P.cols(); ++k) {
        const double direct = std::abs(G(k, k));
        if (direct >= kSubgradientFloor) {
            grad.col(k) += (2.0 * gamma(k) / direct) * G(k, k) * H.col(k);
        }
        for (int j = 0; j < P.cols(); ++j) {
            if (j == k) continue;
            grad.col(k) -= 2.0 * gamma(j) * gamma(j) * G(j, k) * H.col(j);
        }
    }
    return grad;
}

Eigen::VectorXd grad_gamma(const Eigen::MatrixXd& H, const Eigen::MatrixXd& P,
                           const Eigen::VectorXd& gamma, double noise_variance) {
    check_dims(H, P);
    if (gamma.size() != P.cols()) throw DimensionError("gamma length must equal the user count");
    const Eigen::MatrixXd G = H.transpose() * P;
    Eigen::VectorXd grad(P.cols());
    for (int k = 0; k < P.cols(); ++k) {
        grad(k) = 2.0 * std::abs(G(k, k)) -
                  2.0 * gamma(k) * (interference(G, k) + noise_variance);
    }
    return grad;
}

Eigen::VectorXd closed_form_gamma(const Eigen::MatrixXd& H, const Eigen::MatrixXd& P,
                                  double noise_variance) {
    check_dims(H, P);
    const Eigen::MatrixXd G = H.transpose() * P;
    Eigen::VectorXd gamma(P.cols());
    for (int k = 0; k < P.cols(); ++k) {
        gamma(k) = std::abs(G(k, k)) / (interference(G, k) + noise_variance);
    }
    return gamma;
}

Eigen::MatrixXd project_g1(const Eigen::MatrixXd& P) {
    Eigen::MatrixXd out = P;
    for (int i = 0; i < out.rows(); ++i) {
        const double norm = out.row(i).norm();
        if (norm < std::numeric_limits<double>::min()) {
            throw SingularProjectionError("row " + std::to_string(i) +
                                          " of the precoder is zero; row projection is singular");
        }
        out.row(i) /= norm;
    }
    return out;
}

Eigen::MatrixXd project_g2(const Eigen::MatrixXd& P) {
    const double target = std::sqrt(static_cast<double>(P.rows()) /
                                    static_cast<double>(P.cols()));
    Eigen::MatrixXd out = P;
    for (int k = 0; k < out.cols(); ++k) {
        const double norm = out.col(k).norm();
        if (norm < std::numeric_limits<double>::min()) {
            throw SingularProjectionError("column " + std::to_string(k) +
                                          " of the precoder is zero; column projection is singular");
        }
        out.col(k) *= target / norm;
    }
    return out;
}

ProjectionResult project_intersection(const Eigen::MatrixXd& P,
                                      int max_alternations, double tolerance) {
    if (max_alternations < 1) throw ConfigError("projection_alternations must be >= 1");
    if (!(tolerance > 0.0)) throw ConfigError("projection_tolerance must be > 0");
    ProjectionResult result;
    result.precoder = P;
    result.residuals = feasibility_residuals(result.precoder);
    if (result.residuals.max() <= tolerance) {
        result.converged = true;
        return result;
    }
    for (int it = 1; it <= max_alternations; ++it) {
        result.precoder = project_g1(project_g2(result.precoder));
        result.alternations_used = it;
        result.residuals = feasibility_residuals(result.precoder);
        if (result.residuals.max() <= tolerance) {
            result.converged = true;
            break;
        }
    }
    return result;
}

namespace {

struct AttemptOutcome {
    Eigen::MatrixXd precoder;
    std::vector<AscentIteration> trace;
    bool finite = false;
    bool converged = false;
};

AttemptOutcome run_ascent_attempt(const Eigen::MatrixXd& H, double noise_variance,
                                  const AscentConfig& cfg, const Eigen::MatrixXd& start,
                                  double initial_step) {
    AttemptOutcome out;
    Eigen::MatrixXd P = start;
    Eigen::VectorXd gamma = closed_form_gamma(H, P, noise_variance).cwiseMax(kGammaFloor);
    double mu = initial_step;
    int halvings = 0;
    int decrease_streak = 0;

    double g_prev = g_objective(H, P, gamma, noise_variance);
    FeasibilityResiduals res = feasibility_residuals(P);
    out.trace.push_back({0, g_prev, to_db(mean_sinr(H, P, noise_variance)),
                         res.rows, res.cols, mu});

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        P += mu * grad_p(H, P, gamma, noise_variance);
        gamma = (gamma + mu * grad_gamma(H, P, gamma, noise_variance)).cwiseMax(kGammaFloor);
        ProjectionResult prj;
        try {
            prj = project_intersection(P, cfg.projection_alternations, cfg.projection_tolerance);
        } catch (const SingularProjectionError&) {
            out.precoder = std::move(P);
            return out; // treated like divergence: retry with a smaller step
        }
        P = prj.precoder;

        const double g = g_objective(H, P, gamma, noise_variance);
        out.trace.push_back({it, g, to_db(mean_sinr(H, P, noise_variance)),
                             prj.residuals.rows, prj.residuals.cols, mu});
        if (!std::isfinite(g)) {
            out.precoder = std::move(P);
            return out;
        }
        const double denom = std::max(std::abs(g_prev), std::numeric_limits<double>::min());
        if (std::abs(g - g_prev) <= cfg.objective_tolerance * denom) {
            out.converged = true;
            g_prev = g;
            break;
        }
        if (g < g_prev) {
            if (++decrease_streak >= 10 && halvings < 6) {
                mu *= 0.5;
                ++halvings;
                decrease_streak = 0;
            }
        } else {
            decrease_streak = 0;
        }
        g_prev = g;
    }
    out.precoder = std::move(P);
    out.finite = true;
    return out;
}

} // namespace

AscentResult optimize_precoder(const Eigen::MatrixXd& H, double noise_variance,
                               const AscentConfig& cfg, const Eigen::MatrixXd& init_precoder) {
    cfg.validate();
    check_dims(H, init_precoder);
    if (!(noise_variance > 0.0)) throw ConfigError("noise_variance must be > 0");

    const Eigen::MatrixXd start =
        project_intersection(init_precoder, cfg.projection_alternations,
                             cfg.projection_tolerance).precoder;
    const double initial_sinr = mean_sinr(H, start, noise_variance);

    double mu = cfg.step_size;
    std::vector<AscentIteration> last_trace;
    bool any_attempt_finite = false;
    for (int attempt = 0; attempt <= cfg.max_restarts; ++attempt) {
        AttemptOutcome out = run_ascent_attempt(H, noise_variance, cfg, start, mu);
        last_trace = out.trace;
        any_attempt_finite = any_attempt_finite || out.finite;
        if (out.finite && mean_sinr(H, out.precoder, noise_variance) >= initial_sinr) {
            return AscentResult{std::move(out.precoder), std::move(out.trace),
                                attempt, out.converged, false};
        }
        mu *= 0.5;
    }

    if (!any_attempt_finite) {
        throw AscentFailure("gradient ascent diverged to a non-finite objective on every retry",
                            std::move(last_trace));
    }

    // No retry improved on the start; return the initial feasible point so the
    // final-not-below-initial contract still holds.
    AscentResult fallback;
    fallback.precoder = start;
    FeasibilityResiduals res = feasibility_residuals(start);
    fallback.trace.push_back({0, g_objective(H, start,
                                             closed_form_gamma(H, start, noise_variance)
                                                 .cwiseMax(kGammaFloor),
                                             noise_variance),
                              to_db(initial_sinr), res.rows, res.cols, cfg.step_size});
    fallback.restarts = cfg.max_restarts + 1;
    fallback.fell_back_to_init = true;
    return fallback;
}

namespace {

// Gram = H'H (K x K); LLT detects rank deficiency, a 1e-12 ridge stabilizes it.
Eigen::MatrixXd inverted_gram_times(const Eigen::MatrixXd& H, double diagonal_load,
                                    bool* ridged) {
    const Eigen::MatrixXd gram =
        H.transpose() * H + diagonal_load * Eigen::MatrixXd::Identity(H.cols(), H.cols());
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) {
        if (ridged) *ridged = true;
        const Eigen::MatrixXd loaded =
            gram + 1e-12 * Eigen::MatrixXd::Identity(H.cols(), H.cols());
        return loaded.ldlt().solve(H.transpose()).transpose();
    }
    return llt.solve(H.transpose()).transpose();
}

} // namespace

Eigen::MatrixXd zf_raw(const Eigen::MatrixXd& H, bool* ridged) {
    if (H.rows() < 1 || H.cols() < 1) throw DimensionError("channel matrix must be nonempty");
    return inverted_gram_times(H, 0.0, ridged);
}

Eigen::MatrixXd mmse_raw(const Eigen::MatrixXd& H, double noise_variance) {
    if (H.rows() < 1 || H.cols() < 1) throw DimensionError("channel matrix must be nonempty");
    if (!(noise_variance >= 0.0)) throw ConfigError("noise_variance must be >= 0");
    const double load = static_cast<double>(H.cols()) * noise_variance;
    return inverted_gram_times(H, load, nullptr);
}

ZfResult zf_precoder(const Eigen::MatrixXd& H, int projection_alternations,
                     double projection_tolerance) {
    ZfResult result;
    const Eigen::MatrixXd raw = zf_raw(H, &result.ridged);
    result.precoder =
        project_intersection(raw, projection_alternations, projection_tolerance).precoder;
    return result;
}

Eigen::MatrixXd mmse_precoder(const Eigen::MatrixXd& H, double noise_variance,
                              int projection_alternations, double projection_tolerance) {
    const Eigen::MatrixXd raw = mmse_raw(H, noise_variance);
    return project_intersection(raw, projection_alternations, projection_tolerance).precoder;
}

Eigen::MatrixXd random_feasible_precoder(int num_leds, int num_users, Rng& rng,
                                         int projection_alternations,
                                         double projection_tolerance) {
    if (num_leds < 1 || num_users < 1) {
        throw DimensionError("precoder needs num_leds >= 1 and num_users >= 1");
    }
    for (int tries = 0; tries < 100; ++tries) {
        Eigen::MatrixXd P(num_leds, num_users);
        for (int i = 0; i < num_leds; ++i) {
            for (int k = 0; k < num_users; ++k) P(i, k) = rng.gaussian();
        }
        try {
            return project_intersection(P, projection_alternations, projection_tolerance)
                .precoder;
        } catch (const SingularProjectionError&) {
            // measure-zero draw; redraw
        }
    }
    throw SingularProjectionError("could not draw a projectable random precoder");
}

void write_trace_csv(const std::vector<AscentIteration>& trace, std::ostream& out) {
    out << "iteration,g,mean_sinr_db,residual_g1,residual_g2,step_size\n";
    char buf[160];
    for (const auto& row : trace) {
        std::snprintf(buf, sizeof(buf), "%d,%.10g,%.10g,%.10g,%.10g,%.10g",
                      row.iteration, row.objective, row.mean_sinr_db,
                      row.residual_rows, row.residual_cols, row.step_size);
        out << buf << '\n';
    }
}

} // namespace orisvlc
