#pragma once

#include <initializer_list>
#include <string>

#include <nlohmann/json.hpp>

#include "cyberlang/errors.hpp"

namespace cyberlang {

// Strict parses: reject syntax errors and duplicate object keys (nlohmann
// keeps the last duplicate silently, which would let corrupt files load).
// `what` names the document for error messages ("sign registry", ...).
// Both throw Error(SchemaViolation).
nlohmann::json parse_json_strict(const std::string& text,
                                 const std::string& what);
nlohmann::ordered_json parse_ordered_json_strict(const std::string& text,
                                                 const std::string& what);

// Whole-file helpers; both throw Error(IoError).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

nlohmann::json read_json_file(const std::string& path,
                              const std::string& what);

// Structural accessors that raise SchemaViolation with a useful message
// instead of nlohmann's type_error.
const nlohmann::json& require_field(const nlohmann::json& obj, const char* key,
                                    const std::string& what);
std::string require_string(const nlohmann::json& obj, const char* key,
                           const std::string& what);
double require_number(const nlohmann::json& obj, const char* key,
                      const std::string& what);
void require_object(const nlohmann::json& value, const std::string& what);
void require_only_keys(const nlohmann::json& obj,
                       std::initializer_list<const char*> allowed,
                       const std::string& what);

} // namespace cyberlang
