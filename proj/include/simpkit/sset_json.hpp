// JSON encoding of simplicial sets and maps.
//
// Sets:  {"generators": {"<dim>": [names...]},
//         "faces": {"<name>": [{"gen": "<name>", "word": [i1, ...]}, ...]}}
// Maps:  {"assignment": {"<name>": {"gen": "<name>", "word": [...]}}}
// Names are listed in lexicographic order within each dimension.
#pragma once

#include <json.hpp>

#include "simpkit/category.hpp"

#include "simpkit/simplicial_set.hpp"

namespace sk {

using json = nlohmann::json;

json simplex_to_json(const SimplicialSet& k, const SimplexRef& s);
SimplexRef simplex_from_json(const SimplicialSet& k, const json& j, int dim);

json sset_to_json(const SimplicialSet& k);
// Throws std::invalid_argument with the offending generator name.
SSetPtr sset_from_json(const json& j);

json map_to_json(const SimplicialMap& f);
SimplicialMap map_from_json(const SSetPtr& src, const SSetPtr& tgt, const json& j);

// {"objects": [...], "arrows": [{"name","src","tgt"}], "identity": [...],
// "comp": [[...]]}; validated on read.
json category_to_json(const FiniteCategory& c);
FiniteCategory category_from_json(const json& j);

}  // namespace sk
