#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "netnorm/matlib.hpp"
#include "netnorm/model.hpp"

namespace netnorm {

/// Element of Delta_n(k): a multiset of k indices in [0, n), kept sorted.
/// Its probability vector has p_i = (multiplicity of i) / k.
struct NetPoint {
  int n = 0;
  int k = 0;
  std::vector<int> indices;

  RVector probability() const;
  bool operator==(const NetPoint&) const = default;
};

/// C(n + k - 1, k), saturating at UINT64_MAX.
std::uint64_t multiset_count(int n, int k);

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

/// Colexicographic rank of a multiset (compare from the last entry).
std::uint64_t colex_rank(const NetPoint& pt);

/// Inverse of colex_rank.
NetPoint colex_unrank(int n, int k, std::uint64_t rank);

/// Advances to the colex successor in place; false after the last point.
bool colex_next(NetPoint& pt);

/// Parameters of a (possibly budget-capped) net.
struct NetSpec {
  int n = 0;
  int k = 0;
  int k_requested = 0;
  double delta_requested = 0.0;
  double delta_attained = 0.0;
  std::uint64_t cardinality = 0;
  bool capped = false;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Full colex enumeration of Delta_n(k). Throws BudgetExceeded when the net
/// has more than `budget` points; the exception carries the largest k that
/// fits and, when `delta_of_k` is given, the guarantee at that k.
class NetEnumerator {
 public:
  NetEnumerator(int n, int k, std::uint64_t budget = kDefaultBudget,
                const std::function<double(int)>& delta_of_k = {});

  std::uint64_t size() const { return count_; }
  NetPoint at(std::uint64_t rank) const { return colex_unrank(n_, k_, rank); }

  /// Visits points with ranks in [first, last) in colex order.
  template <typename Fn>
  void for_range(std::uint64_t first, std::uint64_t last, Fn&& fn) const {
    if (first >= last) return;
    NetPoint pt = at(first);
    for (std::uint64_t r = first; r < last; ++r) {
      fn(r, static_cast<const NetPoint&>(pt));
      if (r + 1 < last) colex_next(pt);
    }
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for_range(0, count_, std::forward<Fn>(fn));
  }

 private:
  int n_;
  int k_;
  std::uint64_t count_;
};

/// Largest k' <= k with multiset_count(n, k') <= budget (0 if none).
int largest_affordable_k(int n, int k, std::uint64_t budget);

/// Resolves the k actually scanned: the override if given, else k_wanted,
/// reduced to fit the budget. `delta_of_k` maps k to the attained guarantee.
NetSpec plan_net(int n, int k_wanted, double delta_requested, std::uint64_t budget,
                 const std::function<double(int)>& delta_of_k, std::optional<int> k_override = std::nullopt);

// k formulas (all ceilings, floor 1).

/// ceil(9 ln(d2) / delta^2).
int choose_k_basic(int d2, double delta);
/// ceil((2 C^gamma maxY^gamma / delta^gamma)^(1 / (gamma - 1))).
int choose_k_general(const BanachDescriptor& desc, double delta, double max_y);
/// ceil(9 l^2 ln(d) / delta^2).
int choose_k_multipartite(int d, int parties, double delta);
/// ceil((2 lambda / delta)^(gamma / (gamma - 1))).
int choose_k_injective(const BanachDescriptor& desc, double delta);

/// sqrt(9 ln(d2) / k): covering radius of Delta_n(k) in the ||.||_Y norm.
double attained_delta_basic(int d2, int k);
/// (2 C^gamma maxY^gamma / k^(gamma - 1))^(1/gamma).
double attained_delta_general(const BanachDescriptor& desc, double max_y, int k);
double attained_delta_multipartite(int d, int parties, int k);
double attained_delta_injective(const BanachDescriptor& desc, int k);

/// Ceiling that ignores floating-point noise just above an integer.
int stable_ceil(double x);

}  // namespace netnorm
