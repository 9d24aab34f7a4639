#pragma once

#include "udeq/diagram.hpp"
#include "udeq/formula.hpp"

namespace udeq {

/// The graded object ⊕ K_{x_i}[m_i] with its diagonal differential. Degree t
/// stacks the blocks K_{x_i}^{t+m_i} in entry order.
VectComplex eval_object(const CObject& xi, const PosetDiagram& k);

/// η_φ(K) between the diagonal complexes of source and target. A restriction
/// entry c contributes c r^{t+m}, a degree-raising one c (-1)^m d^{t+m} r^{t+m}.
ChainMap eval_cmorphism(const CMorphism& phi, const PosetDiagram& k);

/// F_ξ(K): the graded object of eval_object with differential η_D(K). Throws
/// D2NotZero if the result fails d² = 0.
VectComplex eval_point(const FormulaToPoint& f, const PosetDiagram& k);

/// η_φ(K) for a morphism of formulas; checked to be a chain map.
ChainMap eval_point_morphism(const FormulaMorphism& m, const PosetDiagram& k);

/// F_ξ(g) = ⊕ g_{x_i}[m_i].
ChainMap eval_point_map(const FormulaToPoint& f, const DiagramMap& g);

/// F(K) over the target poset of F.
PosetDiagram eval_formula(const Formula& f, const PosetDiagram& k);
DiagramMap eval_formula_map(const Formula& f, const DiagramMap& g);

/// Components η_{t_y}(K) : F(K) -> F'(K).
DiagramMap eval_transformation(const FormulaTransformation& t, const PosetDiagram& k);

/// Σ_i (-1)^{m_i} χ(K_{x_i}).
long predicted_euler_characteristic(const CObject& xi, const PosetDiagram& k);

}  // namespace udeq
