// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "orisvlc/errors.hpp"
#include "orisvlc/rng.hpp"

namespace orisvlc {

/// Gradient-ascent and projection knobs for the precoder design loop.
struct AscentConfig {
    double step_size = 5e-4;            // mu, applied to both P and gamma updates
    int max_iterations = 500;
    double objective_tolerance = 1e-6;  // relative |delta g| stop
    int projection_alternations = 500;
    double projection_tolerance = 1e-10;
    int max_restarts = 6;               // step halvings when a run ends below its start

    void validate() const;
};

/// Max deviation of diag(PP') from I (rows) and of diag(P'P) from (N/K)I (cols).
struct FeasibilityResiduals {
    double rows = 0.0;
    double cols = 0.0;
    double max() const { return rows > cols ? rows : cols; }
};

FeasibilityResiduals feasibility_residuals(const Eigen::MatrixXd& precoder);

/// Quadratic-transform surrogate of the SINR sum:
/// sum_k ( 2 gamma_k |h_k' p_k| - gamma_k^2 sum_{j!=k} |h_k' p_j|^2 - gamma_k^2 sigma^2 ).
double g_objective(const Eigen::MatrixXd& effective_channels, const Eigen::MatrixXd& precoder,
                   const Eigen::VectorXd& gamma, double noise_variance);

/// Gradient of g in P. Column k:
/// (2 gamma_k / |h_k' p_k|) h_k h_k' p_k - 2 sum_{j!=k} gamma_j^2 h_j h_j' p_k,
/// with the first term dropped (valid subgradient) when |h_k' p_k| < 1e-12.
Eigen::MatrixXd grad_p(const Eigen::MatrixXd& effective_channels, const Eigen::MatrixXd& precoder,
                       const Eigen::VectorXd& gamma, double noise_variance);

/// Gradient of g in gamma: entry k = 2|h_k' p_k| - 2 gamma_k (interference_k + sigma^2).
Eigen::VectorXd grad_gamma(const Eigen::MatrixXd& effective_channels,
                           const Eigen::MatrixXd& precoder, const Eigen::VectorXd& gamma,
                           double noise_variance);

/// Stationary point of g in gamma: gamma_k = |h_k' p_k| / (interference_k + sigma^2).
/// Used as initializer and as a test oracle (g at this gamma equals the SINR sum).
Eigen::VectorXd closed_form_gamma(const Eigen::MatrixXd& effective_channels,
                                  const Eigen::MatrixXd& precoder, double noise_variance);

/// Row normalization (diag(PP'))^(-1/2) P. Throws SingularProjectionError on a zero row.
Eigen::MatrixXd project_g1(const Eigen::MatrixXd& precoder);

/// Column scaling sqrt(N/K) P (diag(P'P))^(-1/2). Throws on a zero column.
Eigen::MatrixXd project_g2(const Eigen::MatrixXd& precoder);

struct ProjectionResult {
    Eigen::MatrixXd precoder;
    FeasibilityResiduals residuals;
    int alternations_used = 0;
    bool converged = false; // non-convergence is a warning, not an error
};

/// Alternates column scaling then row normalization (innermost first) until
/// both residuals drop below the tolerance or the budget runs out. A point
/// already on the intersection is returned unchanged.
ProjectionResult project_intersection(const Eigen::MatrixXd& precoder,
                                      int max_alternations, double tolerance);

struct AscentIteration {
    int iteration = 0;
    double objective = 0.0;
    double mean_sinr_db = 0.0;
    double residual_rows = 0.0;
    double residual_cols = 0.0;
    double step_size = 0.0;
};

struct AscentResult {
    Eigen::MatrixXd precoder;
    std::vector<AscentIteration> trace;
    int restarts = 0;
    bool converged = false;           // relative-objective stop reached
    bool fell_back_to_init = false;   // every restart ended below the start
};

/// Thrown when the objective turns non-finite on every restart attempt.
class AscentFailure : public std::runtime_error {
  public:
    AscentFailure(const std::string& message, std::vector<AscentIteration> failed_trace)
        : std::runtime_error(message), trace(std::move(failed_trace)) {}

    std::vector<AscentIteration> trace;
};

/// Projected gradient ascent on g: step P and gamma with the same step size,
/// clamp gamma at 1e-12, reproject P onto the constraint intersection, stop on
/// a relative-objective plateau. A run whose final mean SINR falls below the
/// initial one is rejected and restarted with a halved step (max_restarts
/// times); inside a run the step also halves after 10 consecutive objective
/// decreases (at most 6 times).
AscentResult optimize_precoder(const Eigen::MatrixXd& effective_channels, double noise_variance,
                               const AscentConfig& config, const Eigen::MatrixXd& init_precoder);

/// Pre-projection channel inversion H'(HH')^-1 in the stacked-row convention;
/// nulls inter-user interference exactly. A rank-deficient Gram falls back to
/// a 1e-12 ridge and sets *ridged.
Eigen::MatrixXd zf_raw(const Eigen::MatrixXd& effective_channels, bool* ridged = nullptr);

/// Pre-projection regularized inversion H'(HH' + K sigma^2 I)^-1.
Eigen::MatrixXd mmse_raw(const Eigen::MatrixXd& effective_channels, double noise_variance);

struct ZfResult {
    Eigen::MatrixXd precoder;
    bool ridged = false; // rank-deficient Gram stabilized with a 1e-12 ridge
};

/// zf_raw projected onto the constraint intersection.
ZfResult zf_precoder(const Eigen::MatrixXd& effective_channels,
                     int projection_alternations = 500, double projection_tolerance = 1e-10);

/// mmse_raw projected onto the constraint intersection.
Eigen::MatrixXd mmse_precoder(const Eigen::MatrixXd& effective_channels, double noise_variance,
                              int projection_alternations = 500,
                              double projection_tolerance = 1e-10);

/// I.i.d. standard-normal entries projected onto the constraint intersection.
Eigen::MatrixXd random_feasible_precoder(int num_leds, int num_users, Rng& rng,
                                         int projection_alternations = 500,
                                         double projection_tolerance = 1e-10);

/// "iteration,g,mean_sinr_db,residual_g1,residual_g2,step_size" rows.
void write_trace_csv(const std::vector<AscentIteration>& trace, std::ostream& out);

} // namespace orisvlc
