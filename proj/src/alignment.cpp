// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#include "orisvlc/alignment.hpp"

#include <limits>
#include <ostream>
#include <utility>

#include "orisvlc/metrics.hpp"
#include "orisvlc/rng.hpp"

namespace orisvlc {

AlignmentMatrix::AlignmentMatrix(int num_elements, int num_users)
    : num_users_(num_users), owner_(static_cast<std::size_t>(num_elements), kUnassigned) {
    if (num_elements < 0) throw DimensionError("alignment needs num_elements >= 0");
    if (num_users < 1) throw DimensionError("alignment needs num_users >= 1");
}

AlignmentMatrix AlignmentMatrix::zero(int num_elements, int num_users) {
    return AlignmentMatrix(num_elements, num_users);
}

AlignmentMatrix AlignmentMatrix::from_owners(std::vector<int> owners, int num_users) {
    AlignmentMatrix out(static_cast<int>(owners.size()), num_users);
    for (std::size_t r = 0; r < owners.size(); ++r) {
        if (owners[r] != kUnassigned) out.assign(static_cast<int>(r), owners[r]);
    }
    return out;
}

void AlignmentMatrix::assign(int element, int user) {
    if (element < 0 || element >= num_elements()) {
        throw DimensionError("element index out of range");
    }
    if (user < 0 || user >= num_users_) throw DimensionError("user index out of range");
    owner_[static_cast<std::size_t>(element)] = user;
}

bool AlignmentMatrix::fully_assigned() const {
    for (int o : owner_) {
        if (o == kUnassigned) return false;
    }
    return true;
}

std::vector<int> AlignmentMatrix::per_user_counts() const {
    std::vector<int> counts(static_cast<std::size_t>(num_users_), 0);
    for (int o : owner_) {
        if (o != kUnassigned) ++counts[static_cast<std::size_t>(o)];
    }
    return counts;
}

Eigen::VectorXd AlignmentMatrix::user_vector(int user) const {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(num_elements());
    for (int r = 0; r < num_elements(); ++r) {
        if (owner_[static_cast<std::size_t>(r)] == user) f(r) = 1.0;
    }
    return f;
}

Eigen::MatrixXd AlignmentMatrix::dense() const {
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(num_elements(), num_users_);
    for (int r = 0; r < num_elements(); ++r) {
        const int o = owner_[static_cast<std::size_t>(r)];
        if (o != kUnassigned) F(r, o) = 1.0;
    }
    return F;
}

int count_changed_rows(const AlignmentMatrix& a, const AlignmentMatrix& b) {
    if (a.num_elements() != b.num_elements()) {
        throw DimensionError("alignment row counts differ");
    }
    int changed = 0;
    for (int r = 0; r < a.num_elements(); ++r) {
        if (a.owner(r) != b.owner(r)) ++changed;
    }
    return changed;
}

GreedyResult greedy_alignment(const ChannelSet& channels, const Eigen::MatrixXd& precoder,
                              double noise_variance, const GreedyOptions& options) {
    const int K = channels.num_users();
    const int M = channels.num_oris();
    if (precoder.cols() != K || precoder.rows() != channels.num_leds()) {
        throw DimensionError("precoder dimensions do not match the channel set");
    }

    GreedyResult result{AlignmentMatrix::zero(M, K), 0};
    if (M == 0) return result;

    // a(k,j) = los_k . p_j ; B[k][j](r) = column r of nlos_k dotted with p_j.
    // Computed column-wise so values match sinr_element exactly.
    Eigen::MatrixXd base(K, K);
    std::vector<std::vector<Eigen::VectorXd>> elem_products(
        static_cast<std::size_t>(K), std::vector<Eigen::VectorXd>(static_cast<std::size_t>(K)));
    for (int k = 0; k < K; ++k) {
        for (int j = 0; j < K; ++j) {
            base(k, j) = channels.los[k].dot(precoder.col(j));
            Eigen::VectorXd b(M);
            for (int r = 0; r < M; ++r) {
                b(r) = channels.nlos[k].col(r).dot(precoder.col(j));
            }
            elem_products[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = std::move(b);
        }
    }

    std::vector<bool> assigned(static_cast<std::size_t>(M), false);
    Eigen::VectorXd a(K), b(K);
    for (int step = 0; step < M; ++step) {
        const int k = step % K;
        a = base.row(k);
        int best_r = -1;
        double best_score = -std::numeric_limits<double>::infinity();
        for (int r = 0; r < M; ++r) {
            if (assigned[static_cast<std::size_t>(r)]) continue;
            for (int j = 0; j < K; ++j) {
                b(j) = elem_products[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)](r);
            }
            const double score = element_sinr_from_products(a, b, k, noise_variance);
            ++result.sinr_evaluations;
            if (score > best_score) {
                best_score = score;
                best_r = r;
            }
        }
        assigned[static_cast<std::size_t>(best_r)] = true;
        result.alignment.assign(best_r, k);
        if (options.incremental) {
            for (int j = 0; j < K; ++j) {
                base(k, j) += elem_products[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)](best_r);
            }
        }
    }
    return result;
}

ExhaustiveResult exhaustive_alignment(const ChannelSet& channels,
                                      const Eigen::MatrixXd& precoder,
                                      double noise_variance, std::uint64_t limit) {
    const int K = channels.num_users();
    const int M = channels.num_oris();
    if (precoder.cols() != K || precoder.rows() != channels.num_leds()) {
        throw DimensionError("precoder dimensions do not match the channel set");
    }

    // K^M with overflow guard against the limit.
    std::uint64_t total = 1;
    for (int r = 0; r < M; ++r) {
        if (total > limit / static_cast<std::uint64_t>(K)) {
            throw LimitError("exhaustive alignment refused: K^M exceeds the enumeration limit");
        }
        total *= static_cast<std::uint64_t>(K);
    }
    if (total > limit) {
        throw LimitError("exhaustive alignment refused: K^M exceeds the enumeration limit");
    }

    std::vector<int> owners(static_cast<std::size_t>(M), 0);
    ExhaustiveResult best;
    best.best_mean_sinr = -std::numeric_limits<double>::infinity();
    for (;;) {
        const AlignmentMatrix candidate = AlignmentMatrix::from_owners(owners, K);
        const double score = mean_sinr(channels, candidate, precoder, noise_variance);
        ++best.assignments_evaluated;
        if (score > best.best_mean_sinr) {
            best.best_mean_sinr = score;
            best.alignment = candidate;
        }
        // next owner vector in lexicographic order (last index fastest)
        int pos = M - 1;
        while (pos >= 0) {
            if (++owners[static_cast<std::size_t>(pos)] < K) break;
            owners[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return best;
}

AlignmentMatrix random_alignment(int num_elements, int num_users, std::uint64_t seed) {
    if (num_elements < 1 || num_users < 1) {
        throw DimensionError("random alignment needs num_elements >= 1 and num_users >= 1");
    }
    Rng rng(seed);
    AlignmentMatrix out(num_elements, num_users);
    for (int r = 0; r < num_elements; ++r) {
        out.assign(r, static_cast<int>(rng.bounded(static_cast<std::uint64_t>(num_users))));
    }
    return out;
}

void write_alignment_csv(const AlignmentMatrix& alignment, std::ostream& out) {
    out << "element_index,user_index\n";
    for (int r = 0; r < alignment.num_elements(); ++r) {
        out << r << ',' << alignment.owner(r) << '\n';
    }
}

} // namespace orisvlc
