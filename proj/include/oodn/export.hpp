// Structured (JSON) and graph (Graphviz DOT) renderings.
//
// JSON schema, keys in this order:
//   network:    {objects, classes, relations, exploiters, modifiers[, plans]}
//   class:      {kind: "homogeneous", name, spec: [member], sig: [member]}
//             | {kind: "heterogeneous", name, core: [member],
//                projections: [{label, depends_on, members}],
//                participants: [{name, entry|null}]}
//   member:     {name, owner, kind: "property"|"method", degree,
//                type, value} | {..., params: [{name, type}], returns|null}
//   value:      {type: "int"|"real"|"text"|"bool"|"fuzzy", value}
//               fuzzy value: [{element, membership}]
//   object:     {name, class, assignments: [{name, value}]}
//   relation:   {kind, label, from, to, degree|null}
//   plan:       {heir, chain, octant, sources: [{name, mode, items: [{name, degree}]}]}
//   diagnostic: {kind, plan, subjects, members, explanation, suggestion|null,
//                alternatives: [{plan, drop_own, note}]}
// Degrees and memberships are canonical rational strings ("0.5", "1/3").

#ifndef OODN_EXPORT_HPP_
#define OODN_EXPORT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "oodn/diagnostics.hpp"
#include "oodn/model.hpp"

namespace oodn {

std::string export_structured(const Network& net);
std::string export_structured(const HetClass& het);
std::string export_structured(const std::vector<Diagnostic>& diagnostics);
std::string export_structured(const MemberSet& members);

/// Inverse of export_structured(Network). Registry names are resolved
/// against the built-in exploiters and modifiers. Throws std::invalid_argument.
Network import_network(std::string_view json);
HetClass import_het(std::string_view json);

/// DOT digraph: classes as boxes, objects as ellipses, relations and plan
/// edges (heir -> source) labelled with octant, weak degrees and selections.
std::string export_graph(const Network& net);

}  // namespace oodn

#endif  // OODN_EXPORT_HPP_
