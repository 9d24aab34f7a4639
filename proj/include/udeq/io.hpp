#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "udeq/diagram.hpp"
#include "udeq/formula.hpp"
#include "udeq/gluing.hpp"
#include "udeq/harness.hpp"

namespace udeq {

using nlohmann::json;

/// Reads and parses a JSON file; throws ParseError.
json read_json_file(const std::string& path);
json parse_json(const std::string& text);

/// {"elements": [...], "relations": [[a, b], ...]}; relations are generating
/// pairs on input and Hasse edges on output.
json to_json(const Poset& p);
Poset poset_from_json(const json& j);

/// Accepts three forms:
///   {"X": poset, "Y": poset, "Yx": {"x": ["y", ...]}}
///   {"X": poset, "Y": poset, "f": {"x": "y"}}
///   {"Y": poset, "Y0": ["y", ...], "star": "v"}
GluingData gluing_from_json(const json& j);
json to_json(const GluingData& g);

/// {"dims": {"-1": 2, "0": 1}, "d": {"-1": [[1, 0]]}}
json to_json(const VectComplex& k);
VectComplex complex_from_json(const json& j);

/// {"poset": poset, "stalks": {label: complex}, "maps": [{"from", "to", "f": {deg: matrix}}]}
/// with maps on covering pairs; missing stalks are zero.
json to_json(const PosetDiagram& k);
PosetDiagram diagram_from_json(const json& j);

/// {"vertices": [...], "orientations": {"name": [[a, b], ...]}}
TreeSpec tree_from_json(const json& j);

/// Formula files: {"builtin": name} or
///   {"poset": poset, "xi": [[elem, deg], ...], "D": matrix}
///   {"poset": poset, "source": [[elem, deg], ...], "target": [...], "matrix": matrix}
using FormulaFile = std::variant<FormulaToPoint, CMorphism, Formula>;
FormulaFile formula_from_json(const json& j);

json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols);
json to_json(const CObject& o);
json to_json(const FormulaToPoint& f);

}  // namespace udeq
