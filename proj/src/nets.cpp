#include "netnorm/nets.hpp"

#include <cmath>
#include <limits>

namespace netnorm {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

void require_delta(double delta, const char* who) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ParameterError(std::string(who) + ": delta must be positive");
}

int clamp_k(double raw) {
  if (raw > static_cast<double>(std::numeric_limits<int>::max() / 2)) return std::numeric_limits<int>::max() / 2;
  return std::max(1, stable_ceil(raw));
}

}  // namespace

int stable_ceil(double x) {
  return static_cast<int>(std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))));
}

RVector NetPoint::probability() const {
  RVector p = RVector::Zero(n);
  for (int i : indices) p(i) += 1.0;
  return p / static_cast<double>(k);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t multiset_count(int n, int k) {
  if (n < 1 || k < 0) return 0;
  return binomial(static_cast<std::uint64_t>(n) + k - 1, static_cast<std::uint64_t>(k));
}

std::uint64_t colex_rank(const NetPoint& pt) {
  std::uint64_t rank = 0;
  for (int j = 0; j < pt.k; ++j) rank += binomial(static_cast<std::uint64_t>(pt.indices[j] + j), j + 1);
  return rank;
}

NetPoint colex_unrank(int n, int k, std::uint64_t rank) {
  NetPoint pt{n, k, std::vector<int>(k)};
  std::uint64_t limit = static_cast<std::uint64_t>(n) + k - 1;  // b_j < limit
  for (int j = k - 1; j >= 0; --j) {
    std::uint64_t b = limit - 1;
    while (binomial(b, j + 1) > rank) --b;
    rank -= binomial(b, j + 1);
    pt.indices[j] = static_cast<int>(b) - j;
    limit = b;
  }
  return pt;
}

bool colex_next(NetPoint& pt) {
  for (int j = 0; j < pt.k; ++j) {
    const bool can_grow = (j + 1 < pt.k) ? pt.indices[j] < pt.indices[j + 1] : pt.indices[j] < pt.n - 1;
    if (!can_grow) continue;
    ++pt.indices[j];
    for (int i = 0; i < j; ++i) pt.indices[i] = 0;
    return true;
  }
  return false;
}

int largest_affordable_k(int n, int k, std::uint64_t budget) {
  while (k > 0 && multiset_count(n, k) > budget) --k;
  return k;
}

NetEnumerator::NetEnumerator(int n, int k, std::uint64_t budget, const std::function<double(int)>& delta_of_k)
    : n_(n), k_(k), count_(multiset_count(n, k)) {
  if (n < 1 || k < 1) throw ParameterError("NetEnumerator: n and k must be positive");
  if (count_ > budget) {
    const int affordable = largest_affordable_k(n, k, budget);
    const double d = (delta_of_k && affordable > 0) ? delta_of_k(affordable) : std::nan("");
    throw BudgetExceeded(count_, affordable, d);
  }
}

NetSpec plan_net(int n, int k_wanted, double delta_requested, std::uint64_t budget,
                 const std::function<double(int)>& delta_of_k, std::optional<int> k_override) {
  NetSpec spec;
  spec.n = n;
  spec.k_requested = k_override.value_or(k_wanted);
  spec.delta_requested = delta_requested;
  if (spec.k_requested < 1) throw ParameterError("plan_net: k must be positive");
  spec.k = largest_affordable_k(n, spec.k_requested, budget);
  if (spec.k < 1) throw BudgetExceeded(multiset_count(n, 1), 0, std::nan(""));
  spec.capped = spec.k < spec.k_requested;
  spec.cardinality = multiset_count(n, spec.k);
  spec.delta_attained = delta_of_k ? delta_of_k(spec.k) : delta_requested;
  return spec;
}

int choose_k_basic(int d2, double delta) {
  require_delta(delta, "choose_k_basic");
  if (d2 < 1) throw ParameterError("choose_k_basic: d2 must be positive");
  return clamp_k(9.0 * std::log(static_cast<double>(d2)) / (delta * delta));
}

int choose_k_general(const BanachDescriptor& desc, double delta, double max_y) {
  require_delta(delta, "choose_k_general");
  if (!(desc.gamma > 1.0)) throw ParameterError("choose_k_general: gamma must exceed 1");
  if (!(max_y > 0.0)) throw ParameterError("choose_k_general: max ||Y_i|| must be positive");
  const double g = desc.gamma;
  const double base = 2.0 * std::pow(desc.type_constant, g) * std::pow(max_y, g) / std::pow(delta, g);
  return clamp_k(std::pow(base, 1.0 / (g - 1.0)));
}

int choose_k_multipartite(int d, int parties, double delta) {
  require_delta(delta, "choose_k_multipartite");
  if (parties < 2) throw ParameterError("choose_k_multipartite: needs at least two parties");
  if (d < 1) throw ParameterError("choose_k_multipartite: d must be positive");
  const double l = parties;
  return clamp_k(9.0 * l * l * std::log(static_cast<double>(d)) / (delta * delta));
}

int choose_k_injective(const BanachDescriptor& desc, double delta) {
  require_delta(delta, "choose_k_injective");
  if (!(desc.gamma > 1.0)) throw ParameterError("choose_k_injective: gamma must exceed 1");
  const double g = desc.gamma;
  return clamp_k(std::pow(2.0 * desc.type_constant / delta, g / (g - 1.0)));
}

double attained_delta_basic(int d2, int k) {
  return std::sqrt(9.0 * std::log(static_cast<double>(d2)) / static_cast<double>(k));
}

double attained_delta_general(const BanachDescriptor& desc, double max_y, int k) {
  const double g = desc.gamma;
  const double v = 2.0 * std::pow(desc.type_constant * max_y, g) / std::pow(static_cast<double>(k), g - 1.0);
  return std::pow(v, 1.0 / g);
}

double attained_delta_multipartite(int d, int parties, int k) {
  const double l = parties;
  return std::sqrt(9.0 * l * l * std::log(static_cast<double>(d)) / static_cast<double>(k));
}

double attained_delta_injective(const BanachDescriptor& desc, int k) {
  const double g = desc.gamma;
  return 2.0 * desc.type_constant / std::pow(static_cast<double>(k), (g - 1.0) / g);
}

}  // namespace netnorm
