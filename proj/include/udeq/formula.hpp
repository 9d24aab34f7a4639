#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "udeq/matrix.hpp"
#include "udeq/poset.hpp"

namespace udeq {

/// One summand (x, m) of an object: a poset element and a cohomological degree.
struct Term {
  Elem x;
  int deg;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Object of the quotient category: an ordered sequence of (x, m) pairs over a
/// base poset. Repetitions are allowed and order indexes matrix rows/columns.
class CObject {
 public:
  CObject() = default;
  CObject(PosetPtr base, std::vector<Term> entries);

  const PosetPtr& base() const { return base_; }
  const std::vector<Term>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const Term& operator[](std::size_t i) const { return entries_[i]; }

  friend bool operator==(const CObject& a, const CObject& b);

 private:
  PosetPtr base_;
  std::vector<Term> entries_;
};

bool same_base(const PosetPtr& a, const PosetPtr& b);

CObject shift(const CObject& o, int n);
CObject concat(const std::vector<CObject>& parts, const PosetPtr& base);

/// Whether an arrow (x_i, m_i) -> (x'_j, m'_j) survives in the quotient:
/// x_i <= x'_j and the degree rises by 0 or 1.
bool supported(const Poset& base, const Term& from, const Term& to);

enum class Strictness { lenient, strict };

/// Morphism of the quotient category: an n' x n integer matrix in canonical
/// form (entries outside the surviving support are zero).
class CMorphism {
 public:
  CMorphism() = default;
  /// Normalizes `matrix`. In strict mode a nonzero entry at a position with
  /// falling degree or incomparable elements raises IllegalSupport; entries
  /// whose degree rises by two or more are always dropped silently.
  CMorphism(CObject source, CObject target, IntMatrix matrix, Strictness mode = Strictness::lenient);

  static CMorphism identity(const CObject& o);
  static CMorphism zero(const CObject& source, const CObject& target);

  const CObject& source() const { return source_; }
  const CObject& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }
  std::int64_t operator()(std::size_t j, std::size_t i) const { return matrix_(j, i); }

  bool is_zero() const { return matrix_.is_zero(); }
  bool is_identity() const { return source_ == target_ && matrix_.is_identity(); }
  /// Every nonzero component keeps the degree.
  bool is_restriction() const;

  friend bool operator==(const CMorphism& a, const CMorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.matrix_ == b.matrix_;
  }
  friend CMorphism operator+(const CMorphism& a, const CMorphism& b);
  friend CMorphism operator-(const CMorphism& a) { return a.scaled(-1); }
  friend CMorphism operator-(const CMorphism& a, const CMorphism& b) { return a + (-b); }
  CMorphism scaled(std::int64_t s) const;

 private:
  CObject source_, target_;
  IntMatrix matrix_;
};

CMorphism normalize(const CMorphism& m, Strictness mode = Strictness::lenient);
/// g ∘ f. Throws ShapeMismatch unless source(g) == target(f).
CMorphism compose(const CMorphism& g, const CMorphism& f);
/// Same matrix between the shifted objects.
CMorphism shift(const CMorphism& m, int n);
/// Sign twist c*_{ji} = (-1)^{m'_j - m_i} c_{ji}.
CMorphism star(const CMorphism& m);

/// Violations found by a structural check; empty means the check passed.
struct CheckReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string v) { violations.push_back(std::move(v)); }
  void merge(const CheckReport& other, const std::string& prefix = {}) {
    for (const auto& v : other.violations) violations.push_back(prefix + v);
  }
};

/// A pair (xi, D) with D : xi -> xi[1] lower triangular, unit differentials on
/// the diagonal and D*[1] D = 0.
struct FormulaToPoint {
  CObject xi;
  CMorphism D;

  /// Builds and checks; throws InvalidFormula on any violation.
  static FormulaToPoint make(CObject xi, IntMatrix d, Strictness mode = Strictness::strict);

  friend bool operator==(const FormulaToPoint& a, const FormulaToPoint& b) { return a.xi == b.xi && a.D == b.D; }
};

CheckReport check_formula(const FormulaToPoint& f);

/// (xi[n], D[n]).
FormulaToPoint shift(const FormulaToPoint& f, int n);
/// (xi[1], -D*[1]): the formula whose value is F(K)[1] as a complex.
FormulaToPoint negated_star_shift(const FormulaToPoint& f);
/// (xi[n], D^{(n)}) where D^{(n)} = D[n] for even n and -D*[n] for odd n; its
/// value on K is the shifted complex F(K)[n].
FormulaToPoint complex_shift(const FormulaToPoint& f, int n);

struct FormulaMorphism {
  FormulaToPoint source, target;
  CMorphism phi;
};

/// Checks that phi is a restriction (unless `allow_non_restriction`) and that
/// phi[1] D = D' phi.
CheckReport check_formula_morphism(const FormulaMorphism& m, bool allow_non_restriction = false);

/// The isomorphism I_xi[1] : (xi[1], D[1]) -> (xi[1], -D*[1]) with diagonal
/// entries (-1)^{m_i}.
FormulaMorphism i_xi(const FormulaToPoint& f);

/// A formula from X to Y: a diagram over Y valued in formulas to a point over X.
/// Restriction morphisms are stored for every pair y <= y' (identities included).
class Formula {
 public:
  Formula() = default;
  Formula(PosetPtr base, PosetPtr target, std::vector<FormulaToPoint> at,
          std::map<std::pair<Elem, Elem>, CMorphism> res);

  /// Restrictions given on Hasse edges only; composites along chains are
  /// filled in (path independence is left to check_formula_diagram).
  static Formula from_covers(PosetPtr base, PosetPtr target, std::vector<FormulaToPoint> at,
                             const std::map<std::pair<Elem, Elem>, CMorphism>& cover_res);

  const PosetPtr& base() const { return base_; }
  const PosetPtr& target() const { return target_; }
  const FormulaToPoint& at(Elem y) const { return at_.at(y); }
  const CMorphism& res(Elem y, Elem y2) const;
  FormulaMorphism res_morphism(Elem y, Elem y2) const { return {at(y), at(y2), res(y, y2)}; }
  const std::map<std::pair<Elem, Elem>, CMorphism>& all_res() const { return res_; }

 private:
  PosetPtr base_, target_;
  std::vector<FormulaToPoint> at_;
  std::map<std::pair<Elem, Elem>, CMorphism> res_;
};

/// Every stalk is a formula, every restriction a formula morphism, and the
/// restrictions form a functor (identities and all composites).
CheckReport check_formula_diagram(const Formula& f);

Formula identity_formula(const PosetPtr& x);
Formula translation_formula(const PosetPtr& x, int n);

/// Substitutes `inner` (a formula from X to P) into an arbitrary morphism over P.
/// Entry (x_i, m_i) expands to the block inner.at(x_i).xi[m_i]; blocks are laid
/// out outer-major. A restriction coefficient c contributes c * res[m], a
/// degree-raising one c * D^{(m)} res[m].
CMorphism substitute(const CMorphism& outer, const Formula& inner);
FormulaToPoint substitute(const FormulaToPoint& outer, const Formula& inner);
FormulaMorphism substitute(const FormulaMorphism& outer, const Formula& inner);

/// Pointwise substitution: the formula of the composite functor F_outer ∘ F_inner.
Formula compose(const Formula& outer, const Formula& inner);

/// A morphism of formulas with the same base and target: one formula morphism
/// per element of the target.
struct FormulaTransformation {
  Formula source, target;
  std::vector<CMorphism> components;
};

/// Every component is a formula morphism and all naturality squares commute.
CheckReport check_transformation(const FormulaTransformation& t);

/// With alpha : xi' -> xi, beta : xi -> xi', h : xi -> xi[-1], D : xi -> xi[1],
/// checks beta alpha = 1 and alpha beta + h[1] D + D*[-1] h = 1.
CheckReport check_homotopy(const CMorphism& alpha, const CMorphism& beta, const CMorphism& h, const CMorphism& D);

std::string describe(const CObject& o);

}  // namespace udeq
