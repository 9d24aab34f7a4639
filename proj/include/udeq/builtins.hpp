#pragma once

#include <map>
#include <string>
#include <vector>

#include "udeq/formula.hpp"
#include "udeq/gluing.hpp"

namespace udeq::builtins {

/// The chain 1 < 2.
PosetPtr two_chain();

// Formulas to a point over the two-chain.
FormulaToPoint xi1();    // ((1,1)), (1)
FormulaToPoint xi2();    // ((2,0)), (1)
FormulaToPoint xi12();   // ((1,1),(2,0)), [[1,0],[1,1]]
FormulaToPoint xi121();  // ((1,2),(2,1),(1,1))
FormulaToPoint xi212();  // ((2,1),(1,1),(2,0))

CMorphism phi1();    // xi12 -> xi1
CMorphism phi2();    // xi2 -> xi12
CMorphism alpha1();  // xi1 -> xi212
CMorphism beta1();   // xi212 -> xi1
CMorphism alpha2();  // xi2[1] -> xi121
CMorphism beta2();   // xi121 -> xi2[1]
CMorphism h1();      // xi212 -> xi212[-1]
CMorphism h2();      // xi121 -> xi121[-1]

/// (xi2 -> xi12) and (xi12 -> xi1) as formulas from the two-chain to itself.
Formula xi_plus();
Formula xi_minus();
/// The translation [1].
Formula nu();

/// ξ⁺∘ξ⁻ -> ν, components (1) and β₂.
FormulaTransformation eps_pm();
/// ν -> ξ⁻∘ξ⁺, components α₁ and (1).
FormulaTransformation eps_mp();
/// ξ⁺∘ξ⁺ -> ξ⁻, components the identity and -β₁.
FormulaTransformation eps_pp();
/// ξ⁺∘[1] -> ξ⁻∘ξ⁻, components α₂ and diag(-1, 1).
FormulaTransformation eps_mm();

/// Names accepted by formula files: xi1, xi2, xi12, xi121, xi212, alpha1,
/// alpha2, beta1, beta2, h, nu.
std::vector<std::string> names();

/// Posets X1..X4 on the labels 1..7.
Poset figure1_poset(int i);

/// Raw gluing input, before validation.
struct GluingInput {
  Poset x, y;
  std::map<std::string, std::vector<std::string>> yx;
};

/// The gluing for the pair (i, j) in {(1,2), (1,3), (3,4)}: X_ij and X_ji as
/// subposets of X_i with Y_x = {f_ij(x)}. Building plus gives X_i and minus X_j.
GluingInput figure1_gluing(int i, int j);
std::vector<std::pair<int, int>> figure1_pairs();

/// X = {1}, Y = {2, 3, 4} with 2 < 4, 3 < 4 and Y_1 = {2, 3}: fails the
/// antichain condition with witness 4.
GluingInput counterexample();

}  // namespace udeq::builtins
