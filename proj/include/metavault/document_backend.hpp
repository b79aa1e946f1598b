#pragma once

#include "metavault/backend.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace mv {

// Document-style backend: one collection per entity, each record a nested
// JSON object keyed by its object id. Records serialize compactly (absent
// attributes are omitted) and account byte-for-byte; there is no page
// padding and no separate index cost.
class DocumentBackend final : public Backend {
public:
    using json = nlohmann::ordered_json;

    DocumentBackend() = default;

    BackendKind kind() const override { return BackendKind::Document; }
    void init_schema(const VaultSchema& schema) override;
    const VaultSchema& schema() const override { return schema_; }
    void put(const Record& record) override;
    std::optional<HubRecord> get_hub(const std::string& hub, BusinessKey key) const override;
    std::optional<LinkRecord> get_link(const std::string& link, LinkId id) const override;
    std::vector<SatelliteRecord> satellite_history(const std::string& satellite,
                                                   Key parent_key) const override;
    std::optional<SatelliteRecord> current_satellite(const std::string& satellite, Key parent_key,
                                                     Instant as_of) const override;
    std::vector<Record> scan(const EntityFilter& filter) const override;
    std::uint64_t count(const std::string& entity) const override;
    StorageReport storage_report() const override;
    void save(const std::filesystem::path& dir) const override;
    void load(const std::filesystem::path& dir) override;

    // {"<entity>": {"<id>": {fields...}}} with stable key order, 1-space
    // indent; also the persistence format.
    std::string export_entity_json(const std::string& entity) const;

    // Bulk-replaces one collection from export text. Shape and schema are
    // validated record by record; referential integrity is re-checked with
    // verify_integrity() once dependent collections are in place.
    void import_entity_json(const std::string& entity, const std::string& json_text);

    // Every link member and satellite parent resolves; throws on violation.
    void verify_integrity() const;

private:
    struct Collection {
        EntityKind kind = EntityKind::Hub;
        std::vector<std::pair<std::string, json>> records; // (object id, fields)
        std::unordered_map<std::string, std::size_t> by_id;
        std::map<std::uint64_t, std::size_t> by_key; // hubs and links
        std::map<std::uint64_t, std::vector<std::pair<std::int64_t, std::size_t>>> history;
        std::uint64_t json_bytes = 0;
    };

    Collection& collection(const std::string& entity);
    const Collection& collection(const std::string& entity) const;
    void insert_record(Collection& coll, const std::string& entity, const Record& record,
                       bool check_integrity);
    void reindex(Collection& coll, const std::string& entity);

    VaultSchema schema_;
    bool initialized_ = false;
    std::map<std::string, Collection> collections_;
};

} // namespace mv
