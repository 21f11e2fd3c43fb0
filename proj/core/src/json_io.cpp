#include "cyberlang/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace cyberlang {

namespace {

// SAX builder that mirrors the default DOM parser but refuses duplicate
// object keys. Pointers into parents stay valid because elements are only
// appended to the innermost open container; ancestors do not grow while a
// child is open.
template <class JsonT>
class StrictBuilder {
public:
    bool null() { return add(JsonT(nullptr)); }
    bool boolean(bool v) { return add(JsonT(v)); }
    bool number_integer(std::int64_t v) { return add(JsonT(v)); }
    bool number_unsigned(std::uint64_t v) { return add(JsonT(v)); }
    bool number_float(double v, const std::string&) { return add(JsonT(v)); }
    bool string(std::string& v) { return add(JsonT(v)); }
    bool binary(typename JsonT::binary_t&) {
        error_ = "binary values are not valid JSON";
        return false;
    }

    bool start_object(std::size_t) {
        JsonT* node = open(JsonT::object());
        if (!node) return false;
        open_.push_back(node);
        keys_.emplace_back();
        return true;
    }

    bool key(std::string& k) {
        if (!keys_.back().insert(k).second) {
            error_ = "duplicate key '" + k + "'";
            return false;
        }
        pending_key_ = k;
        has_key_ = true;
        return true;
    }

    bool end_object() {
        open_.pop_back();
        keys_.pop_back();
        return true;
    }

    bool start_array(std::size_t) {
        JsonT* node = open(JsonT::array());
        if (!node) return false;
        open_.push_back(node);
        return true;
    }

    bool end_array() {
        open_.pop_back();
        return true;
    }

    bool parse_error(std::size_t, const std::string&,
                     const nlohmann::detail::exception& ex) {
        if (error_.empty()) error_ = ex.what();
        return false;
    }

    JsonT take() { return std::move(root_); }
    const std::string& error() const { return error_; }

private:
    JsonT* open(JsonT&& container) {
        if (open_.empty()) {
            root_ = std::move(container);
            return &root_;
        }
        return emplace(std::move(container));
    }

    bool add(JsonT&& v) {
        if (open_.empty()) {
            root_ = std::move(v);
            return true;
        }
        return emplace(std::move(v)) != nullptr;
    }

    JsonT* emplace(JsonT&& v) {
        JsonT& top = *open_.back();
        if (top.is_object()) {
            if (!has_key_) {
                error_ = "value without key";
                return nullptr;
            }
            has_key_ = false;
            top[pending_key_] = std::move(v);
            return &top[pending_key_];
        }
        top.push_back(std::move(v));
        return &top.back();
    }

    JsonT root_;
    std::vector<JsonT*> open_;
    std::vector<std::set<std::string>> keys_;
    std::string pending_key_;
    bool has_key_ = false;
    std::string error_;
};

template <class JsonT>
JsonT parse_strict_impl(const std::string& text, const std::string& what) {
    StrictBuilder<JsonT> builder;
    if (!JsonT::sax_parse(text, &builder)) {
        throw Error(ErrorCode::SchemaViolation,
                    what + ": " +
                        (builder.error().empty() ? "malformed JSON"
                                                 : builder.error()));
    }
    return builder.take();
}

} // namespace

nlohmann::json parse_json_strict(const std::string& text,
                                 const std::string& what) {
    return parse_strict_impl<nlohmann::json>(text, what);
}

nlohmann::ordered_json parse_ordered_json_strict(const std::string& text,
                                                 const std::string& what) {
    return parse_strict_impl<nlohmann::ordered_json>(text, what);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw Error(ErrorCode::IoError, "read failure on '" + path + "'");
    return std::move(buf).str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out)
        throw Error(ErrorCode::IoError, "write failure on '" + path + "'");
}

nlohmann::json read_json_file(const std::string& path,
                              const std::string& what) {
    return parse_json_strict(read_text_file(path), what + " (" + path + ")");
}

const nlohmann::json& require_field(const nlohmann::json& obj, const char* key,
                                    const std::string& what) {
    require_object(obj, what);
    const auto it = obj.find(key);
    if (it == obj.end())
        throw Error(ErrorCode::SchemaViolation,
                    what + ": missing field '" + key + "'");
    return *it;
}

std::string require_string(const nlohmann::json& obj, const char* key,
                           const std::string& what) {
    const auto& field = require_field(obj, key, what);
    if (!field.is_string())
        throw Error(ErrorCode::SchemaViolation,
                    what + ": field '" + key + "' must be a string");
    return field.get<std::string>();
}

double require_number(const nlohmann::json& obj, const char* key,
                      const std::string& what) {
    const auto& field = require_field(obj, key, what);
    if (!field.is_number())
        throw Error(ErrorCode::SchemaViolation,
                    what + ": field '" + key + "' must be a number");
    return field.get<double>();
}

void require_object(const nlohmann::json& value, const std::string& what) {
    if (!value.is_object())
        throw Error(ErrorCode::SchemaViolation, what + ": expected an object");
}

void require_only_keys(const nlohmann::json& obj,
                       std::initializer_list<const char*> allowed,
                       const std::string& what) {
    require_object(obj, what);
    for (const auto& item : obj.items()) {
        const bool known =
            std::any_of(allowed.begin(), allowed.end(),
                        [&](const char* k) { return item.key() == k; });
        if (!known)
            throw Error(ErrorCode::SchemaViolation,
                        what + ": unexpected field '" + item.key() + "'");
    }
}

} // namespace cyberlang
