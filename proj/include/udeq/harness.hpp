#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "udeq/diagram.hpp"
#include "udeq/field.hpp"
#include "udeq/formula.hpp"
#include "udeq/gluing.hpp"
#include "udeq/parallel.hpp"

namespace udeq {

/// One named structural check. `category` groups checks of the same shape,
/// e.g. the pattern of X/Y elements in a commutativity triple.
struct StructuralCheck {
  std::string name;
  std::string category;
  bool passed = true;
  std::string detail;
};

using CheckList = std::vector<StructuralCheck>;
bool all_passed(const CheckList& checks);
nlohmann::json to_json(const CheckList& checks);

/// The formulas ξ⁺ (from ≤₊ to ≤₋) and ξ⁻ (from ≤₋ to ≤₊) for a gluing.
struct TheoremFormulas {
  GluingPtr gluing;
  GluedOrder plus, minus;
  Formula xi_plus, xi_minus;
  /// ξ_{x,Y_x} over ≤₊ and ξ_{Y_x,x} over ≤₋, as formulas to the two-chain.
  std::vector<Formula> arrow_plus, arrow_minus;
  CheckList checks;
};

/// Throws CommutativityFailure if any restriction or composite fails.
TheoremFormulas build_theorem_formulas(const GluingPtr& g);

struct Epsilons {
  FormulaTransformation eps_pm;  // ξ⁺∘ξ⁻ -> ν over ≤₋
  FormulaTransformation eps_mp;  // ν -> ξ⁻∘ξ⁺ over ≤₊
  CheckList checks;
};

/// Throws NaturalityFailure on a failing component or square.
Epsilons build_epsilons(const TheoremFormulas& t);

struct VerifyOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  Field field = Field::rationals();
  RandomDiagramOptions diagram;
  unsigned jobs = 1;
};

using CohomologyTable = std::vector<std::map<int, std::size_t>>;
nlohmann::json to_json(const CohomologyTable& t, const Poset& p);

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool mp_qis = false;  // ε⁻⁺(K) : K[1] -> R⁻R⁺K
  bool pm_qis = false;  // ε⁺⁻(L) : R⁺R⁻L -> L[1]
  bool euler_ok = false;
  bool composite_ok = false;  // composite formulas evaluate like the sequential functors
  CohomologyTable k_shift, rmrp, l_shift, rprm;
  bool verdict() const { return mp_qis && pm_qis && euler_ok && composite_ok; }
};

struct EquivalenceCertificate {
  GluingPtr gluing;
  TheoremFormulas formulas;
  Epsilons eps;
  CheckList checks;
  std::vector<TrialRecord> trials;
  std::string field;

  bool structural_ok() const { return all_passed(checks); }
  bool trials_ok() const;
  bool valid() const { return structural_ok() && trials_ok(); }
  nlohmann::json to_json() const;
};

EquivalenceCertificate verify_equivalence(const GluingPtr& g, const VerifyOptions& opt);

struct TwoChainTrial {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool pm = false, mp = false, pp = false, mm = false;
  bool cube_ok = false;  // (R⁺)³K and K[1] linked by quasi-isomorphisms with equal tables
  CohomologyTable k_shift, cube;
  bool verdict() const { return pm && mp && pp && mm && cube_ok; }
};

struct TwoChainReport {
  CheckList checks;
  std::vector<TwoChainTrial> trials;
  std::string field;
  bool ok() const;
  nlohmann::json to_json() const;
};

TwoChainReport verify_two_chain(const VerifyOptions& opt);

/// An undirected tree and named orientations of it.
struct TreeSpec {
  std::vector<std::string> vertices;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> orientations;
};

constexpr std::size_t kMaxTreeEdges = 8;

struct ReflectionStep {
  std::string vertex;
  bool source_to_sink = true;
  bool orders_match = false;  // the glued orders are the two orientations
  EquivalenceCertificate certificate;
};

struct BgpReport {
  std::vector<ReflectionStep> steps;
  bool ok() const;
  nlohmann::json to_json() const;
};

/// Orientation poset: a -> b means a < b.
Poset orientation_poset(const std::vector<std::string>& vertices,
                        const std::vector<std::pair<std::string, std::string>>& edges);

/// Shortest sequence of source/sink reflections between two orientations of a
/// tree, each step certified. Throws NotATree or NoPathFound.
BgpReport verify_bgp_path(const std::vector<std::string>& vertices,
                          const std::vector<std::pair<std::string, std::string>>& from,
                          const std::vector<std::pair<std::string, std::string>>& to, const VerifyOptions& opt);

struct X1ZReport {
  bool plus_shape = false, minus_shape = false;
  EquivalenceCertificate certificate;
  bool ok() const { return plus_shape && minus_shape && certificate.valid(); }
  nlohmann::json to_json() const;
};

X1ZReport verify_x1z(const Poset& x, const Poset& z, const VerifyOptions& opt);

/// Random poset on labels prefix1..prefixN with each pair i<j related with
/// probability about 1/3.
Poset random_poset(Rng& rng, std::size_t n, const std::string& prefix);

/// A random validated gluing with |X| + |Y| <= max_total.
GluingData random_gluing(Rng& rng, std::size_t max_total = 8);

/// Label-wise equality of two orders on the same label set.
bool same_order_by_labels(const Poset& a, const Poset& b);

}  // namespace udeq
