#include "bayesrs/sample.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace bayesrs {

namespace {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

int RaggedSample::check(int i) const {
  if (i < 0 || i >= solutions()) {
    throw OutOfRange("sample: solution index " + std::to_string(i) +
                     " out of range");
  }
  return i;
}

RaggedSample RaggedSample::init(int solutions, int n0,
                                const ObserveFn& observe, bool strict) {
  if (solutions < 1) {
    throw InvalidParameter("init: need at least one solution");
  }
  if (n0 < 1) {
    throw InitialSampleTooSmall("init: n0 must be >= 1, got " +
                                std::to_string(n0));
  }
  if (strict && n0 <= solutions) {
    throw InitialSampleTooSmall(
        "init: n0 must exceed the number of solutions (n0 >= L+1), got n0=" +
        std::to_string(n0) + " for L=" + std::to_string(solutions));
  }
  RaggedSample s;
  s.rows_.resize(solutions);
  for (int i = 0; i < solutions; ++i) {
    s.rows_[i].reserve(n0);
    for (int k = 0; k < n0; ++k) {
      s.rows_[i].push_back(observe(i, k));
    }
  }
  s.pool_ = n0;
  return s;
}

void RaggedSample::append(const Eigen::Ref<const Eigen::VectorXi>& q,
                          const ObserveFn& observe) {
  if (q.size() != solutions()) {
    throw DimensionMismatch("append: allocation length does not match L");
  }
  if (q.size() > 0 && q.minCoeff() < 0) {
    throw OutOfRange("append: allocation entries must be nonnegative");
  }
  for (int i = 0; i < solutions(); ++i) {
    const int from = size(i);
    for (int k = from; k < from + q[i]; ++k) {
      rows_[i].push_back(observe(i, k));
    }
    pool_ = std::max(pool_, size(i));
  }
}

Eigen::VectorXi RaggedSample::sizes() const {
  Eigen::VectorXi n(solutions());
  for (int i = 0; i < solutions(); ++i) n[i] = size(i);
  return n;
}

long long RaggedSample::total() const {
  long long t = 0;
  for (const auto& r : rows_) t += static_cast<long long>(r.size());
  return t;
}

double RaggedSample::operator()(int i, int k) const {
  check(i);
  if (k < 0 || k >= size(i)) {
    throw OutOfRange("sample: scenario " + std::to_string(k) +
                     " not observed for solution " + std::to_string(i));
  }
  return rows_[i][k];
}

Eigen::Map<const Eigen::VectorXd> RaggedSample::row(int i) const {
  check(i);
  return {rows_[i].data(), static_cast<Eigen::Index>(rows_[i].size())};
}

double RaggedSample::mean(int i) const { return restricted_mean(i, size(i)); }

double RaggedSample::restricted_mean(int i, int m) const {
  check(i);
  if (m < 1 || m > size(i)) {
    throw OutOfRange("restricted_mean: m=" + std::to_string(m) +
                     " outside row of length " + std::to_string(size(i)));
  }
  double sum = 0.0;
  for (int k = 0; k < m; ++k) sum += rows_[i][k];
  return sum / m;
}

std::string RaggedSample::dump_csv() const {
  std::string out = "solution,scenario,value\n";
  for (int i = 0; i < solutions(); ++i) {
    for (int k = 0; k < size(i); ++k) {
      out += std::to_string(i);
      out += ',';
      out += std::to_string(k);
      out += ',';
      out += format_double(rows_[i][k]);
      out += '\n';
    }
  }
  return out;
}

std::vector<int> ordering(const RaggedSample& sample) {
  std::vector<int> perm(sample.solutions());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    return sample.size(a) > sample.size(b);
  });
  return perm;
}

}  // namespace bayesrs
