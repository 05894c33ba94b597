// The ragged CRN observation store: per-solution observation rows over a
// shared scenario pool with a monotone missing pattern (rows only ever grow
// at the end).

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "bayesrs/errors.hpp"

namespace bayesrs {

// Observation callback. The scenario index fully determines the common
// random input, so asking for (i, k) twice must yield the same value.
// Both indices are 0-based.
using ObserveFn = std::function<double(int solution, int scenario)>;

class RaggedSample {
 public:
  RaggedSample() = default;

  // All solutions observed on scenarios 0..n0-1. With strict=true the
  // initial size must exceed the number of solutions (n0 >= L+1), which
  // keeps the covariance estimates a.s. nonsingular later on.
  static RaggedSample init(int solutions, int n0, const ObserveFn& observe,
                           bool strict = false);

  // Extends row i by q[i] observations, reusing scenarios already in the
  // pool before drawing new ones. q must be nonnegative; an all-zero q is
  // a no-op.
  void append(const Eigen::Ref<const Eigen::VectorXi>& q,
              const ObserveFn& observe);

  int solutions() const { return static_cast<int>(rows_.size()); }
  int size(int i) const { return static_cast<int>(rows_[check(i)].size()); }
  Eigen::VectorXi sizes() const;
  // Number of scenarios drawn so far; always equals max_i n_i.
  int pool() const { return pool_; }
  long long total() const;

  double operator()(int i, int k) const;
  Eigen::Map<const Eigen::VectorXd> row(int i) const;

  double mean(int i) const;
  // Mean of the first m observations of row i.
  double restricted_mean(int i, int m) const;

  // Debug dump, one line per observation: solution,scenario,value.
  std::string dump_csv() const;

 private:
  int check(int i) const;

  std::vector<std::vector<double>> rows_;
  int pool_ = 0;
};

// Permutation sorting solutions by descending sample size, ties broken by
// ascending original index. perm[r] is the original index of the solution
// at sorted position r.
std::vector<int> ordering(const RaggedSample& sample);

}  // namespace bayesrs
