// Budget allocation strategies: equal allocation, the greedy OCBA rule and
// dominance probability weighting (plain and filtered), together with
// proportional rounding by the largest remainder method and the
// one-per-solution floor.

#pragma once

#include <Eigen/Dense>
#include <string>

#include "bayesrs/pcs.hpp"
#include "bayesrs/posterior.hpp"

namespace bayesrs {

enum class Strategy { Equal, GreedyOcba, Dpw, DpwPlus };

// Accepts equal | greedy_ocba | dpw | dpw_plus.
Strategy parse_strategy(const std::string& name);
std::string to_string(Strategy strategy);

struct StrategyInputs {
  const PosteriorState& post;
  const DominanceTable& table;
  int budget = 0;
  double alpha = 0.05;
  double delta = 0.0;
};

// q_l = floor(budget * w_l / sum w), remainder by descending fractional
// part (ties by ascending index). With floor_one, zero entries are raised
// to one and the excess is taken from the largest entries (ties by highest
// index). The result always sums exactly to the budget.
Eigen::VectorXi round_largest_remainder(
    const Eigen::Ref<const Eigen::VectorXd>& weights, int budget,
    bool floor_one);

Eigen::VectorXi equal_allocation(int solutions, int budget,
                                 bool floor_one = true);

// Predicted pairwise scale after q_i and q_j additional simulations: the
// variances shrink with the relative sample growth and the covariance is
// scaled by the variance-weighted mean of the two shrink factors.
double gamma_ij(const PosteriorState& post, int i, int j, int qi, int qj);

// Weights each solution by the predicted Bonferroni-bound gain of spending
// the whole budget on it. Costs exactly 2 |rho| t-CDF evaluations beyond
// the table it is given.
Eigen::VectorXi greedy_ocba(const StrategyInputs& inputs,
                            Eigen::VectorXd* weights_out = nullptr);

// Dominance probability weighting. With filtered=true (the DPW+ variant),
// pairs already certified beyond 1 - alpha/|rho| are ignored.
Eigen::VectorXi dpw(const StrategyInputs& inputs, bool filtered,
                    Eigen::VectorXd* weights_out = nullptr);

Eigen::VectorXi dpw_plus(const StrategyInputs& inputs,
                         Eigen::VectorXd* weights_out = nullptr);

Eigen::VectorXi allocate(Strategy strategy, const StrategyInputs& inputs,
                         Eigen::VectorXd* weights_out = nullptr);

}  // namespace bayesrs
