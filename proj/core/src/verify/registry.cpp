#include "common.hpp"

namespace azr::verify {

namespace {

#define AZR_CLAUSE_NAME(id, name) std::string_view(name),
constexpr std::string_view kListed[] = {AZR_THEOREM_CLAUSES(AZR_CLAUSE_NAME)};
#undef AZR_CLAUSE_NAME

constexpr bool same_clauses() {
  if (std::size(kListed) != kTheoremClauses.size()) return false;
  for (std::size_t i = 0; i < kTheoremClauses.size(); ++i)
    if (kListed[i] != kTheoremClauses[i]) return false;
  return true;
}
static_assert(same_clauses(), "theorem clause factories out of sync with kTheoremClauses");

std::vector<Property> build() {
  using namespace detail;
  std::vector<Property> out;
  add_lemma_properties(out);
  add_divergence_properties(out);
#define AZR_ADD_CLAUSE(id, name) out.push_back(clause_##id());
  AZR_THEOREM_CLAUSES(AZR_ADD_CLAUSE)
#undef AZR_ADD_CLAUSE
  add_derived_properties(out);
  add_channel_properties(out);
  add_exploration_properties(out);
  return out;
}

}  // namespace

const std::vector<Property>& registry() {
  static const std::vector<Property> all = build();
  return all;
}

}  // namespace azr::verify
