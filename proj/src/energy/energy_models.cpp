#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "drp/energy.hpp"
#include "drp/error.hpp"

namespace drp {

double linear_energy(const LinearParams& p, double w, double t) {
  return t * (p.slope * w + p.base);
}

double convex_energy(const ConvexParams& p, double w, double t) {
  return t * p.alpha * std::pow(p.beta + w, 1.5);
}

std::string LinearEnergy::describe() const {
  return fmt::format("linear(slope={}, base={})", p_.slope, p_.base);
}

std::string ConvexEnergy::describe() const {
  return fmt::format("convex(alpha={}, beta={})", p_.alpha, p_.beta);
}

TabulatedEnergy::TabulatedEnergy(TabulatedParams p) : p_(std::move(p)) {
  if (p_.knots.empty()) throw ConfigError("tabulated energy needs at least one knot");
  for (size_t i = 1; i < p_.knots.size(); ++i) {
    if (!(p_.knots[i].first > p_.knots[i - 1].first))
      throw ConfigError("tabulated knot weights must increase");
    if (p_.knots[i].second < p_.knots[i - 1].second) monotone_ = false;
  }
  for (const auto& k : p_.knots)
    if (k.second < 0) throw ConfigError("tabulated rates must be nonnegative");
}

double TabulatedEnergy::rate(double w) const {
  const auto& k = p_.knots;
  if (w <= k.front().first) return k.front().second;
  if (w >= k.back().first) return k.back().second;
  auto it = std::upper_bound(k.begin(), k.end(), w,
                             [](double v, const auto& knot) { return v < knot.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double s = (w - lo.first) / (hi.first - lo.first);
  return lo.second + s * (hi.second - lo.second);
}

std::string TabulatedEnergy::describe() const {
  return fmt::format("tabulated({} knots)", p_.knots.size());
}

std::shared_ptr<const EnergyModel> make_energy_model(const EnergySpec& spec) {
  switch (spec.kind) {
    case EnergySpec::Kind::Linear:
      return std::make_shared<LinearEnergy>(spec.linear);
    case EnergySpec::Kind::Convex:
      return std::make_shared<ConvexEnergy>(spec.convex);
    case EnergySpec::Kind::Phase:
      return std::make_shared<PhaseEnergy>(spec.phase);
    case EnergySpec::Kind::Tabulated:
      return std::make_shared<TabulatedEnergy>(spec.tabulated);
  }
  throw ConfigError("unknown energy model");
}

}  // namespace drp
