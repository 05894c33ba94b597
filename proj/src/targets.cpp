#include "bayesrs/targets.hpp"

#include <algorithm>
#include <numeric>

namespace bayesrs {

TargetScheme best1() { return {SchemeKind::Best1, 1, {}, {}}; }

TargetScheme best_m(int m) {
  if (m < 1) throw InvalidScheme("best_m: m must be >= 1");
  return {SchemeKind::BestM, m, {}, {}};
}

TargetScheme rank_m(int m) {
  if (m < 1) throw InvalidScheme("rank_m: m must be >= 1");
  return {SchemeKind::RankM, m, {}, {}};
}

TargetScheme median() { return {SchemeKind::Median, 1, {}, {}}; }

TargetScheme span() { return {SchemeKind::Span, 2, {}, {}}; }

TargetScheme parse_scheme(const std::string& name) {
  if (name == "best1") return best1();
  if (name == "median") return median();
  if (name == "span") return span();
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string head = name.substr(0, colon);
    int m = 0;
    try {
      m = std::stoi(name.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidScheme("parse_scheme: bad selection size in '" + name +
                          "'");
    }
    if (head == "best_m") return best_m(m);
    if (head == "rank_m") return rank_m(m);
  }
  throw InvalidScheme("parse_scheme: unknown scheme '" + name + "'");
}

std::string to_string(const TargetScheme& scheme) {
  switch (scheme.kind) {
    case SchemeKind::Best1:
      return "best1";
    case SchemeKind::BestM:
      return "best_m:" + std::to_string(scheme.m);
    case SchemeKind::RankM:
      return "rank_m:" + std::to_string(scheme.m);
    case SchemeKind::Median:
      return "median";
    case SchemeKind::Span:
      return "span";
    case SchemeKind::Custom:
      return "custom";
  }
  return "custom";
}

std::vector<int> target_ranks(const TargetScheme& scheme, int L) {
  std::vector<int> a;
  switch (scheme.kind) {
    case SchemeKind::Best1:
      a = {0};
      break;
    case SchemeKind::BestM:
    case SchemeKind::RankM:
      if (scheme.m > L) {
        throw InvalidScheme("target_ranks: m exceeds number of solutions");
      }
      a.resize(scheme.m);
      std::iota(a.begin(), a.end(), 0);
      break;
    case SchemeKind::Median:
      a = {(L + 1) / 2 - 1};
      break;
    case SchemeKind::Span:
      a = {0, L - 1};
      break;
    case SchemeKind::Custom:
      a = scheme.custom_ranks;
      break;
  }
  if (a.empty()) throw InvalidScheme("target_ranks: empty rank set");
  for (int r : a) {
    if (r < 0 || r >= L) {
      throw InvalidScheme("target_ranks: rank outside {1..L}");
    }
  }
  return a;
}

Selection select(const TargetScheme& scheme,
                 const Eigen::Ref<const Eigen::VectorXd>& nu_hat) {
  const int L = static_cast<int>(nu_hat.size());
  if (L < 2) throw InvalidScheme("select: need at least two solutions");

  std::vector<int> ranked(L);
  std::iota(ranked.begin(), ranked.end(), 0);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](int a, int b) { return nu_hat[a] < nu_hat[b]; });

  if (scheme.kind == SchemeKind::Custom) {
    if (!scheme.custom_build) {
      throw InvalidScheme("select: custom scheme without a rho builder");
    }
    Selection sel = scheme.custom_build(ranked);
    sel.ranked = ranked;
    return sel;
  }

  const std::vector<int> ranks = target_ranks(scheme, L);
  Selection sel;
  sel.ranked = ranked;
  sel.selected.reserve(ranks.size());
  for (int r : ranks) sel.selected.push_back(ranked[r]);

  std::vector<char> in_b(L, 0);
  for (int i : sel.selected) in_b[i] = 1;

  switch (scheme.kind) {
    case SchemeKind::Best1: {
      const int i1 = ranked[0];
      for (int j = 0; j < L; ++j) {
        if (j != i1) sel.rho.emplace_back(i1, j);
      }
      break;
    }
    case SchemeKind::BestM: {
      for (int l : sel.selected) {
        for (int j = 0; j < L; ++j) {
          if (!in_b[j]) sel.rho.emplace_back(l, j);
        }
      }
      break;
    }
    case SchemeKind::RankM: {
      for (int r = 0; r + 1 < scheme.m; ++r) {
        sel.rho.emplace_back(ranked[r], ranked[r + 1]);
      }
      const int im = ranked[scheme.m - 1];
      for (int j = 0; j < L; ++j) {
        if (!in_b[j]) sel.rho.emplace_back(im, j);
      }
      break;
    }
    case SchemeKind::Median: {
      const int mid = (L + 1) / 2 - 1;
      const int l0 = ranked[mid];
      for (int r = 0; r < mid; ++r) sel.rho.emplace_back(ranked[r], l0);
      for (int r = mid + 1; r < L; ++r) sel.rho.emplace_back(l0, ranked[r]);
      break;
    }
    case SchemeKind::Span: {
      const int lo = ranked[0];
      const int hi = ranked[L - 1];
      for (int j = 0; j < L; ++j) {
        if (!in_b[j]) sel.rho.emplace_back(lo, j);
      }
      for (int j = 0; j < L; ++j) {
        if (!in_b[j]) sel.rho.emplace_back(j, hi);
      }
      break;
    }
    case SchemeKind::Custom:
      break;
  }
  return sel;
}

int pair_count(const TargetScheme& scheme, int L) {
  switch (scheme.kind) {
    case SchemeKind::Best1:
      return L - 1;
    case SchemeKind::BestM:
      return scheme.m * (L - scheme.m);
    case SchemeKind::RankM:
      return (scheme.m - 1) + (L - scheme.m);
    case SchemeKind::Median:
      return L - 1;
    case SchemeKind::Span:
      return 2 * (L - 2);
    case SchemeKind::Custom:
      throw InvalidScheme("pair_count: no closed form for custom schemes");
  }
  throw InvalidScheme("pair_count: unknown scheme");
}

bool is_correct(const Selection& selection,
                const Eigen::Ref<const Eigen::VectorXd>& true_mu,
                double delta) {
  for (const auto& [i, j] : selection.rho) {
    if (!(true_mu[i] <= true_mu[j] + delta)) return false;
  }
  return true;
}

}  // namespace bayesrs
