#pragma once

#include "metavault/value.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mv {

struct HubDef {
    std::string name;
    std::string key_source; // name of the natural-key attribute, informational

    bool operator==(const HubDef&) const = default;
};

struct LinkDef {
    std::string name;
    std::vector<std::string> member_hubs; // >= 2, no duplicates, declared order

    bool operator==(const LinkDef&) const = default;
};

struct SatelliteDef {
    std::string name;
    std::string parent; // hub or link name
    std::vector<std::pair<std::string, ValueKind>> attributes; // declared order

    bool has_attribute(const std::string& attr) const;
    std::optional<ValueKind> attribute_kind(const std::string& attr) const;

    bool operator==(const SatelliteDef&) const = default;
};

enum class EntityKind { Hub, Link, Satellite };

// Immutable vault schema. Evolution produces a new value with version+1 and
// strictly more definitions; nothing is ever removed or mutated in place.
class VaultSchema {
public:
    VaultSchema() = default;

    static VaultSchema tectoniq();

    // Text round-trip, stable field order. See docs/FORMATS.md.
    std::string to_text() const;
    static VaultSchema from_text(const std::string& text);

    int version() const { return version_; }
    const std::vector<HubDef>& hubs() const { return hubs_; }
    const std::vector<LinkDef>& links() const { return links_; }
    const std::vector<SatelliteDef>& satellites() const { return satellites_; }
    const std::map<std::string, std::string>& category_dispatch() const { return category_dispatch_; }

    const HubDef* find_hub(const std::string& name) const;
    const LinkDef* find_link(const std::string& name) const;
    const SatelliteDef* find_satellite(const std::string& name) const;
    bool has_entity(const std::string& name) const;
    std::optional<EntityKind> entity_kind(const std::string& name) const;

    // Satellite name registered for a category label, if any.
    std::optional<std::string> dispatch_satellite(const std::string& category_label) const;

    // All entities in stable order: hubs, links, satellites.
    std::vector<std::string> entity_names() const;

    // Additive evolution; each returns a new schema with version+1.
    VaultSchema with_hub(HubDef def) const;
    VaultSchema with_link(LinkDef def) const;
    VaultSchema with_satellite(SatelliteDef def,
                               std::optional<std::string> category_label = std::nullopt) const;

    // True when every definition in `earlier` appears unchanged in *this.
    bool is_additive_evolution_of(const VaultSchema& earlier) const;

    // Referential closure; throws Error(Schema) on violation.
    void validate() const;

    bool operator==(const VaultSchema&) const = default;

private:
    int version_ = 0;
    std::vector<HubDef> hubs_;
    std::vector<LinkDef> links_;
    std::vector<SatelliteDef> satellites_;
    std::map<std::string, std::string> category_dispatch_; // label -> satellite
};

// Entity names of the base schema, in the order the tables are conventionally
// listed (hubs, link, satellites).
namespace tectoniq {
inline constexpr const char* kHubTitle = "Hub_Title";
inline constexpr const char* kHubDate = "Hub_Date";
inline constexpr const char* kHubLocation = "Hub_Location";
inline constexpr const char* kHubCategory = "Hub_Category";
inline constexpr const char* kLinkDocument = "Link_Document";
inline constexpr const char* kSatTitle = "Sat_Title";
inline constexpr const char* kSatDate = "Sat_Date";
inline constexpr const char* kSatLocation = "Sat_Location";
inline constexpr const char* kSatIrhis = "Sat_IRHIS";
inline constexpr const char* kSatVoixDuNord = "Sat_VoixDuNord";
inline constexpr const char* kSatInventory = "Sat_Inventory";
inline constexpr const char* kSatBook = "Sat_Book";
} // namespace tectoniq

} // namespace mv
