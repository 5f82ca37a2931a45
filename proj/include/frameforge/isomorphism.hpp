#ifndef FRAMEFORGE_ISOMORPHISM_HPP
#define FRAMEFORGE_ISOMORPHISM_HPP

#include <optional>
#include <vector>

#include "frameforge/chamber.hpp"

namespace frameforge {

/// A chamber-system isomorphism: chamber c of the source maps to
/// chamber_map[c]; panels of type s map to panels of type type_map[s].
struct Isomorphism {
  std::vector<int> type_map;
  std::vector<int> chamber_map;
};

inline constexpr long kDefaultSearchBudget = 20'000'000;

/// Backtracking search over chamber bijections, trying every relabelling of
/// types that preserves the Coxeter matrix. Throws SearchBudgetExceeded when
/// the node budget runs out before a decision.
std::optional<Isomorphism> find_isomorphism(const ChamberComplex& a, const ChamberComplex& b,
                                            long node_budget = kDefaultSearchBudget);

/// Checks that `iso` is a bijection carrying panels onto panels.
bool is_isomorphism(const ChamberComplex& a, const ChamberComplex& b, const Isomorphism& iso);

}  // namespace frameforge

#endif  // FRAMEFORGE_ISOMORPHISM_HPP
