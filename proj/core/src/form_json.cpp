#include "ontoform/form_json.hpp"

namespace ontoform {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json form_to_json(const FormSchema& form) {
  ordered_json j;
  j["form_id"] = form.form_id;
  j["concept"] = form.cls;
  j["title"] = form.title;
  j["fields"] = ordered_json::array();
  for (const auto& f : form.fields)
    j["fields"].push_back({{"id", f.id},
                           {"label", f.label},
                           {"datatype", to_string(f.datatype)},
                           {"required", f.required}});
  j["components"] = ordered_json::array();
  for (const auto& c : form.components)
    j["components"].push_back({{"property", c.property}, {"concept", c.cls}, {"label", c.label}});
  return j;
}

FormAnswer answer_from_json(const FormSchema& form, const std::string& form_id,
                            const json& values) {
  FormAnswer answer{form_id, {}};
  if (values.is_null()) return answer;
  if (!values.is_object()) throw ValidationError(std::vector<FieldError>{{"", "values must be a JSON object"}});

  std::vector<FieldError> errors;
  for (const auto& [id, v] : values.items()) {
    if (v.is_null() || (v.is_string() && v.get_ref<const std::string&>().empty())) continue;
    const FormField* f = form.field(id);
    Datatype dt = f ? f->datatype : Datatype::String;
    bool numeric = dt == Datatype::Decimal || dt == Datatype::Integer;
    if (v.is_string()) {
      answer.values[id] = LiteralValue{v.get<std::string>(), dt};
    } else if (v.is_boolean() && dt == Datatype::Boolean) {
      answer.values[id] = LiteralValue{v.get<bool>() ? "true" : "false", dt};
    } else if (v.is_number() && numeric) {
      answer.values[id] = LiteralValue{v.dump(), dt};
    } else {
      errors.push_back({id, "expected " + std::string(to_string(dt)) + ", got JSON " +
                                std::string(v.type_name())});
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return answer;
}

ordered_json field_errors_to_json(const std::vector<FieldError>& errors) {
  ordered_json out = ordered_json::array();
  for (const auto& e : errors) out.push_back({{"field", e.field}, {"message", e.message}});
  return out;
}

}  // namespace ontoform
