#ifndef CAUSEWAY_TEXT_FORMAT_HPP
#define CAUSEWAY_TEXT_FORMAT_HPP

#include <string>

#include "causeway/model.hpp"
#include "causeway/provenance.hpp"

namespace causeway {

// Model text format: UTF-8, one declaration per line, # comments.
//   domain bool | domain mod <m> [with bottom]
//   exo <name> [<name> ...]
//   var <name> := <expression>     prefix operators, e.g. xor(and(A, B), U1)
//   table <name> (<parent> ...) { <value>... -> <value> ; ... }
// The domain line comes first; references may point forward. Errors are
// ParseError with line and column.
CausalModel parse_model(const std::string& text);

// Prints a model back into the same format (sorted declarations). Lookup
// tables are only printable as table declarations, so a table application
// nested inside another expression is rejected.
std::string model_to_text(const CausalModel& m);

// Interpretation text format, same lexical rules:
//   domain ...
//   fun <name>(<param> ...) := <expression>     body over the parameters
//   table <name> (<param> ...) { ... }          function given extensionally
// Names starting with const_ are reserved for the implicit constants.
Interpretation parse_interpretation(const std::string& text);

std::string interpretation_to_text(const Interpretation& interp);

}  // namespace causeway

#endif
