#pragma once

#include <json.hpp>

#include "cohen/algebra.hpp"
#include "cohen/group.hpp"
#include "cohen/modules.hpp"

namespace cohen {

using Json = nlohmann::ordered_json;

/// {modulus, n, terms:[{mono:[i1,...,ik], coeff}]} with terms in canonical
/// order; the unit monomial is the empty list.
Json element_to_json(const Element& e);
Element element_from_json(const Json& j);

/// {factors:[{factor, letters, exponent}]} in collected order.
Json factorization_to_json(const Factorization& f);

/// {generators:[{name, degree}], sq1:[[src,dst]], sq2:[[src,dst]],
/// bockstein:[[src,dst,order]]} with 0-based generator indices.
Json module_to_json(const SteenrodModule& m);
SteenrodModule module_from_json(const Json& j);

Json module_map_to_json(const ModuleMap& m);

}  // namespace cohen
