// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "orisvlc/channel.hpp"
#include "orisvlc/errors.hpp"

namespace orisvlc {

/// Binary element-to-user assignment, stored as one owner per element.
///
/// owner(r) in [0, K) means element r serves that user; kUnassigned encodes
/// the all-zero row used by the no-reflector ablation. The storage makes the
/// row-sum-at-most-one invariant structural; a fully assigned matrix
/// additionally has no unassigned rows.
class AlignmentMatrix {
  public:
    static constexpr int kUnassigned = -1;

    AlignmentMatrix() = default;
    AlignmentMatrix(int num_elements, int num_users);

    /// All-zero alignment (every row unassigned); the ablation matrix.
    static AlignmentMatrix zero(int num_elements, int num_users);
    static AlignmentMatrix from_owners(std::vector<int> owners, int num_users);

    int num_elements() const { return static_cast<int>(owner_.size()); }
    int num_users() const { return num_users_; }
    int owner(int element) const { return owner_[static_cast<std::size_t>(element)]; }
    void assign(int element, int user);

    bool fully_assigned() const;
    /// M_k for each user; sums to M when fully assigned.
    std::vector<int> per_user_counts() const;
    /// f_k as a dense 0/1 vector of length M.
    Eigen::VectorXd user_vector(int user) const;
    /// Dense M x K binary matrix.
    Eigen::MatrixXd dense() const;

    bool operator==(const AlignmentMatrix& other) const = default;

  private:
    int num_users_ = 0;
    std::vector<int> owner_;
};

int count_changed_rows(const AlignmentMatrix& a, const AlignmentMatrix& b);

struct GreedyOptions {
    /// Score candidates against the user's accumulated effective channel
    /// instead of the printed single-element form. Off by default.
    bool incremental = false;
};

struct GreedyResult {
    AlignmentMatrix alignment;
    std::uint64_t sinr_evaluations = 0; // candidate scorings; always M(M+1)/2
};

/// Round-robin greedy assignment: users take turns; the visiting user
/// receives the unassigned element maximizing its per-element SINR score,
/// ties broken by lowest element index.
GreedyResult greedy_alignment(const ChannelSet& channels, const Eigen::MatrixXd& precoder,
                              double noise_variance, const GreedyOptions& options = {});

struct ExhaustiveResult {
    AlignmentMatrix alignment;
    double best_mean_sinr = 0.0;
    std::uint64_t assignments_evaluated = 0;
};

/// Brute-force oracle over all K^M row assignments (including unbalanced
/// ones). Refuses with LimitError when K^M exceeds the limit. Ties resolve to
/// the lexicographically smallest owner vector.
ExhaustiveResult exhaustive_alignment(const ChannelSet& channels,
                                      const Eigen::MatrixXd& precoder,
                                      double noise_variance,
                                      std::uint64_t limit = 1'000'000);

/// Each element assigned to a uniformly random user; reproducible by seed.
AlignmentMatrix random_alignment(int num_elements, int num_users, std::uint64_t seed);

/// One "element_index,user_index" row per element (-1 when unassigned).
void write_alignment_csv(const AlignmentMatrix& alignment, std::ostream& out);

} // namespace orisvlc
