#pragma once

#include "metavault/instant.hpp"
#include "metavault/keys.hpp"
#include "metavault/value.hpp"

#include <map>
#include <string>
#include <variant>

namespace mv {

// Direct reference to a physical file in the lake; the only bridge between
// catalog metadata and payloads.
struct SourceRef {
    std::string uri;

    bool operator==(const SourceRef&) const = default;
    auto operator<=>(const SourceRef&) const = default;
};

struct HubRecord {
    std::string hub;
    BusinessKey key;
    std::string natural_value; // normalized natural key, kept for readability
    Instant datetime;
    SourceRef source;

    bool operator==(const HubRecord&) const = default;
};

struct LinkRecord {
    std::string link;
    LinkId id;
    std::map<std::string, BusinessKey> member_keys; // hub name -> key
    Instant datetime;
    SourceRef source;

    bool operator==(const LinkRecord&) const = default;
};

struct SatelliteRecord {
    std::string satellite;
    Key parent_key; // hub business key, or link surrogate id when parent is a link
    Instant datetime; // part of the identity; carries the history
    AttributeMap attributes;
    SourceRef source;

    bool operator==(const SatelliteRecord&) const = default;
};

using Record = std::variant<HubRecord, LinkRecord, SatelliteRecord>;

// Entity name of any record kind.
const std::string& record_entity(const Record& record);

// Stable per-record identifier used as the document-model object id and in
// exports: hubs use the key, links the surrogate id, satellites
// "<parent>_<datetime ms>".
std::string record_id(const Record& record);

} // namespace mv
