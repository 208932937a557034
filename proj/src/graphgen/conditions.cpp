#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "drp/graphgen.hpp"

namespace drp {

namespace {

double min_order_energy(const DeliveryContext& ctx, std::vector<int> set) {
  if (set.empty()) return 0.0;
  std::sort(set.begin(), set.end());
  double best = kInf;
  do {
    best = std::min(best, ctx.trip_energy(set));
  } while (std::next_permutation(set.begin(), set.end()));
  return best;
}

void floyd(std::vector<double>& d, int size) {
  for (int k = 0; k < size; ++k)
    for (int i = 0; i < size; ++i) {
      const double dik = d[static_cast<size_t>(i) * size + k];
      for (int j = 0; j < size; ++j) {
        double& dij = d[static_cast<size_t>(i) * size + j];
        dij = std::min(dij, dik + d[static_cast<size_t>(k) * size + j]);
      }
    }
}

}  // namespace

ConditionReport check_conditions_AB(const DeliveryContext& ctx) {
  ConditionReport rep;
  const auto& tt = ctx.tables();
  const int size = tt.size;
  for (int i = 0; i < size && rep.metric; ++i)
    for (int j = 0; j < size && rep.metric; ++j)
      for (int k = 0; k < size; ++k)
        if (tt.time(i, k) > tt.time(i, j) + tt.time(j, k) + 1e-9) {
          rep.metric = false;
          rep.counterexample = fmt::format("t[{}][{}]={} > t[{}][{}]+t[{}][{}]={}", i, k, tt.time(i, k), i, j,
                                           j, k, tt.time(i, j) + tt.time(j, k));
          break;
        }

  if (rep.metric && ctx.model().time_proportional() && !ctx.instance().flight.load_dependent()) {
    rep.monotone = true;
    rep.monotone_by_structure = true;
    return rep;
  }

  // Empirical: serving a set never costs less energy than serving a subset,
  // checked on all capacity-feasible sets of up to three requests.
  const auto& inst = ctx.instance();
  const int n = inst.n();
  std::unordered_map<std::uint64_t, double> best;
  auto key = [](std::vector<int> s) {
    std::sort(s.begin(), s.end());
    std::uint64_t k = 0;
    for (int r : s) k = k * 1024 + static_cast<std::uint64_t>(r);
    return k;
  };
  auto energy_of = [&](const std::vector<int>& s) {
    const auto k = key(s);
    auto it = best.find(k);
    if (it != best.end()) return it->second;
    const double e = min_order_energy(ctx, s);
    best.emplace(k, e);
    return e;
  };
  auto weight = [&](const std::vector<int>& s) {
    double w = 0;
    for (int r : s) w += inst.request(r).q;
    return w;
  };
  bool ok = true;
  std::string why;
  auto check = [&](const std::vector<int>& s) {
    if (!ok || !approx_le(weight(s), inst.capacity)) return;
    const double e = energy_of(s);
    for (size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<int> sub;
      for (size_t k = 0; k < s.size(); ++k)
        if (k != drop) sub.push_back(s[k]);
      const double es = energy_of(sub);
      if (e < es - 1e-9 * std::max(1.0, es)) {
        ok = false;
        why = fmt::format("energy({}) = {} < energy({}) = {}", fmt::join(s, ","), e,
                          sub.empty() ? std::string("{}") : fmt::format("{}", fmt::join(sub, ",")), es);
        return;
      }
    }
  };
  for (int a = 1; a <= n && ok; ++a) {
    check({a});
    for (int b = a + 1; b <= n && ok; ++b) {
      check({a, b});
      for (int c = b + 1; c <= n && ok; ++c) check({a, b, c});
    }
  }
  rep.monotone = ok;
  if (!ok) rep.counterexample = rep.counterexample.empty() ? why : rep.counterexample + "; " + why;
  return rep;
}

CorrectedTables::CorrectedTables(const DeliveryContext& ctx) : ctx_(&ctx), size_(ctx.tables().size) {
  time_ = ctx.tables().t;
  floyd(time_, size_);
}

double CorrectedTables::energy(int i, int j, double payload) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = energy_.find(payload);
  if (it == energy_.end()) {
    std::vector<double> e(static_cast<size_t>(size_) * size_);
    for (int a = 0; a < size_; ++a)
      for (int b = 0; b < size_; ++b)
        e[static_cast<size_t>(a) * size_ + b] = a == b ? 0.0 : ctx_->leg_energy(a, b, payload);
    floyd(e, size_);
    it = energy_.emplace(payload, std::move(e)).first;
  }
  return it->second[static_cast<size_t>(i) * size_ + j];
}

LegOverride CorrectedTables::override() const {
  LegOverride o;
  o.time = [this](int i, int j) { return time(i, j); };
  o.energy = [this](int i, int j, double w) { return energy(i, j, w); };
  return o;
}

}  // namespace drp
