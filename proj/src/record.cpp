#include "metavault/record.hpp"

#include "metavault/document.hpp"
#include "metavault/predicate.hpp"

#include <algorithm>

namespace mv {

const std::string& record_entity(const Record& record) {
    return std::visit(
        [](const auto& r) -> const std::string& {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, HubRecord>) return r.hub;
            else if constexpr (std::is_same_v<T, LinkRecord>) return r.link;
            else return r.satellite;
        },
        record);
}

std::string record_id(const Record& record) {
    return std::visit(
        [](const auto& r) -> std::string {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, HubRecord>) return r.key.hex();
            else if constexpr (std::is_same_v<T, LinkRecord>) return r.id.hex();
            else return r.parent_key.hex() + "_" + std::to_string(r.datetime.ms);
        },
        record);
}

std::string DateBlock::natural_string() const {
    if (deposit_date) return deposit_date->to_iso().substr(0, 10);
    if (!epoch.empty()) return epoch;
    if (update_date) return update_date->to_iso().substr(0, 10);
    return {};
}

namespace {

bool text_contains_fold(const std::string& haystack, const std::string& needle) {
    if (needle.empty()) return true;
    const std::string h = fold_case(haystack);
    const std::string n = fold_case(needle);
    return h.find(n) != std::string::npos;
}

bool text_equals_fold(const std::string& a, const std::string& b) {
    return fold_case(normalize_text(a)) == fold_case(normalize_text(b));
}

} // namespace

bool AttrPredicate::matches(const AttributeValue& value) const {
    switch (op) {
        case Op::ContainsWord:
            if (value.is_text()) return text_contains_fold(value.as_text(), text);
            if (value.is_list()) {
                const auto& list = value.as_list();
                return std::any_of(list.begin(), list.end(), [this](const std::string& item) {
                    return text_contains_fold(item, text);
                });
            }
            return false;
        case Op::Equals:
            if (value.is_text()) return text_equals_fold(value.as_text(), text);
            if (value.is_list()) {
                const auto& list = value.as_list();
                return std::any_of(list.begin(), list.end(), [this](const std::string& item) {
                    return text_equals_fold(item, text);
                });
            }
            return false;
        case Op::YearEquals:
            return value.is_timestamp() && value.as_timestamp().year() == year;
    }
    return false;
}

} // namespace mv
