#pragma once

#include "metavault/instant.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace mv {

enum class ValueKind { Text, TextList, Timestamp };

const char* value_kind_name(ValueKind kind);
ValueKind value_kind_from_name(const std::string& name);

// A satellite attribute value. Absence is first-class: an attribute that is
// absent simply does not appear in an AttributeMap, and an empty text-list
// normalizes to absent at construction.
class AttributeValue {
public:
    using Storage = std::variant<std::string, std::vector<std::string>, Instant>;

    static AttributeValue text(std::string value) { return AttributeValue(Storage(std::move(value))); }
    static AttributeValue timestamp(Instant at) { return AttributeValue(Storage(at)); }

    // Returns std::nullopt when the list is empty (normalizes to absent).
    static std::optional<AttributeValue> text_list(std::vector<std::string> values) {
        if (values.empty()) return std::nullopt;
        return AttributeValue(Storage(std::move(values)));
    }

    bool is_text() const { return std::holds_alternative<std::string>(storage_); }
    bool is_list() const { return std::holds_alternative<std::vector<std::string>>(storage_); }
    bool is_timestamp() const { return std::holds_alternative<Instant>(storage_); }

    ValueKind kind() const {
        if (is_text()) return ValueKind::Text;
        if (is_list()) return ValueKind::TextList;
        return ValueKind::Timestamp;
    }

    const std::string& as_text() const { return std::get<std::string>(storage_); }
    const std::vector<std::string>& as_list() const { return std::get<std::vector<std::string>>(storage_); }
    Instant as_timestamp() const { return std::get<Instant>(storage_); }

    bool operator==(const AttributeValue&) const = default;

private:
    explicit AttributeValue(Storage storage) : storage_(std::move(storage)) {}
    Storage storage_;
};

// Present attributes only; absent attributes are omitted.
using AttributeMap = std::map<std::string, AttributeValue>;

} // namespace mv
