// Generalized ranking-and-selection targets: a target rank set A, the
// selection B induced by the posterior means, and the pairwise relation
// rho_AB whose satisfaction characterizes a correct selection.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bayesrs/errors.hpp"

namespace bayesrs {

enum class SchemeKind { Best1, BestM, RankM, Median, Span, Custom };

struct Selection {
  // Solutions occupying the target ranks (B), in rank order.
  std::vector<int> selected;
  // Ordered pairs (i, j) over original solution indices; the selection is
  // correct when t_i <= t_j + delta for every pair.
  std::vector<std::pair<int, int>> rho;
  // Solutions sorted by ascending posterior mean (i_1, ..., i_L).
  std::vector<int> ranked;
};

struct TargetScheme {
  SchemeKind kind = SchemeKind::Best1;
  // Selection size for BestM / RankM.
  int m = 1;
  // Custom schemes supply their own rank set and relation builder over the
  // ranked order; no general construction exists for arbitrary A.
  std::vector<int> custom_ranks;
  std::function<Selection(const std::vector<int>& ranked)> custom_build;
};

TargetScheme best1();
TargetScheme best_m(int m);
TargetScheme rank_m(int m);
TargetScheme median();
TargetScheme span();

// Accepts best1 | best_m:<m> | rank_m:<m> | median | span.
TargetScheme parse_scheme(const std::string& name);
std::string to_string(const TargetScheme& scheme);

// Target rank set A as 0-based ranks into the ascending order.
std::vector<int> target_ranks(const TargetScheme& scheme, int L);

// Sorts nu_hat ascending (ties by ascending index), picks the solutions at
// the target ranks and builds the characterizing relation.
Selection select(const TargetScheme& scheme,
                 const Eigen::Ref<const Eigen::VectorXd>& nu_hat);

// |rho_AB| for the named schemes.
int pair_count(const TargetScheme& scheme, int L);

// True iff every (i, j) in rho satisfies true_mu[i] <= true_mu[j] + delta.
bool is_correct(const Selection& selection,
                const Eigen::Ref<const Eigen::VectorXd>& true_mu,
                double delta);

}  // namespace bayesrs
