#pragma once

#include <nlohmann/json.hpp>

#include "ontoform/session.hpp"

namespace ontoform {

// {"form_id","concept","title","fields":[{"id","label","datatype","required"}],
//  "components":[{"property","concept","label"}]}
nlohmann::ordered_json form_to_json(const FormSchema& form);

// Converts client values to typed literals for the given form. Strings are
// taken as lexical forms; numbers and booleans are accepted for numeric and
// boolean fields; null and "" mean "not filled". Throws ValidationError for
// values of the wrong JSON kind and for a non-object `values`.
FormAnswer answer_from_json(const FormSchema& form, const std::string& form_id,
                            const nlohmann::json& values);

nlohmann::ordered_json field_errors_to_json(const std::vector<FieldError>& errors);

}  // namespace ontoform
