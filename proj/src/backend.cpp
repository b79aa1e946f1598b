#include "metavault/backend.hpp"

#include "metavault/errors.hpp"

#include <sstream>

namespace mv {

const char* backend_kind_name(BackendKind kind) {
    return kind == BackendKind::Relational ? "relational" : "document";
}

std::optional<BackendKind> backend_kind_from_name(const std::string& name) {
    if (name == "relational") return BackendKind::Relational;
    if (name == "document") return BackendKind::Document;
    return std::nullopt;
}

std::uint64_t StorageReport::total_bytes() const {
    std::uint64_t total = 0;
    for (const auto& e : entities) total += e.total_bytes();
    return total;
}

std::string StorageReport::to_csv() const {
    std::ostringstream out;
    out << "entity,data_bytes,index_bytes,total_bytes\n";
    for (const auto& e : entities) {
        out << e.entity << ',' << e.data_bytes << ',' << e.index_bytes << ','
            << e.total_bytes() << "\n";
    }
    std::uint64_t data = 0, index = 0;
    for (const auto& e : entities) {
        data += e.data_bytes;
        index += e.index_bytes;
    }
    out << "Total," << data << ',' << index << ',' << total_bytes() << "\n";
    return out.str();
}

void validate_filter(const VaultSchema& schema, const EntityFilter& filter) {
    auto kind = schema.entity_kind(filter.entity);
    if (!kind) {
        raise(ErrorCode::Schema, "unknown entity '" + filter.entity + "'");
    }
    for (const auto& pred : filter.predicates) {
        switch (*kind) {
            case EntityKind::Hub:
                if (pred.attribute != "Value") {
                    raise(ErrorCode::Schema, "hub '" + filter.entity +
                                                 "' has no attribute '" + pred.attribute +
                                                 "' (only \"Value\")");
                }
                if (pred.op == AttrPredicate::Op::YearEquals) {
                    raise(ErrorCode::Schema, "year predicate needs a timestamp attribute");
                }
                break;
            case EntityKind::Link:
                raise(ErrorCode::Schema,
                      "link '" + filter.entity + "' records carry no filterable attributes");
            case EntityKind::Satellite: {
                const SatelliteDef* def = schema.find_satellite(filter.entity);
                auto attr_kind = def->attribute_kind(pred.attribute);
                if (!attr_kind) {
                    raise(ErrorCode::Schema, "satellite '" + filter.entity +
                                                 "' has no attribute '" + pred.attribute + "'");
                }
                const bool is_ts = *attr_kind == ValueKind::Timestamp;
                if (pred.op == AttrPredicate::Op::YearEquals && !is_ts) {
                    raise(ErrorCode::Schema,
                          "attribute '" + pred.attribute + "' is not a timestamp");
                }
                if (pred.op != AttrPredicate::Op::YearEquals && is_ts) {
                    raise(ErrorCode::Schema,
                          "attribute '" + pred.attribute + "' is a timestamp; use a year predicate");
                }
                break;
            }
        }
    }
}

bool record_matches_filter(const Record& record, const std::vector<AttrPredicate>& predicates) {
    if (predicates.empty()) return true;
    if (const auto* hub = std::get_if<HubRecord>(&record)) {
        const AttributeValue value = AttributeValue::text(hub->natural_value);
        for (const auto& pred : predicates) {
            if (!pred.matches(value)) return false;
        }
        return true;
    }
    if (const auto* sat = std::get_if<SatelliteRecord>(&record)) {
        for (const auto& pred : predicates) {
            auto it = sat->attributes.find(pred.attribute);
            if (it == sat->attributes.end() || !pred.matches(it->second)) return false;
        }
        return true;
    }
    return false; // links carry no filterable attributes; validate_filter rejects earlier
}

} // namespace mv
