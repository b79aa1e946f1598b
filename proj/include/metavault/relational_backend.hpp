#pragma once

#include "metavault/backend.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mv {

// Relational-style backend: one table per entity, rows kept as encoded byte
// strings (fixed-width header fields plus length-prefixed attributes), with
// storage accounted in fixed-size pages the way a classic row store fills
// them. Constants below mirror a conventional 8 KB page layout and are part
// of the documented on-disk format.
namespace relational {
inline constexpr std::uint64_t kPageSize = 8192;
inline constexpr std::uint64_t kPageHeaderBytes = 24;
inline constexpr std::uint64_t kLinePointerBytes = 4;
inline constexpr std::uint64_t kTupleHeaderBytes = 24;
inline constexpr std::uint64_t kTupleAlign = 8;
inline constexpr std::uint64_t kEntityCatalogHeaderBytes = 128;
inline constexpr std::uint64_t kIndexEntryOverheadBytes = 12;

// Pages needed for rows of the given encoded payload sizes, filled greedily
// in insertion order.
std::uint64_t data_pages_for(const std::vector<std::uint32_t>& row_sizes);

// Page-granular size of a key index holding `entries` entries of
// `key_bytes`-wide keys; 0 when empty.
std::uint64_t index_bytes_for(std::uint64_t entries, std::uint64_t key_bytes);
} // namespace relational

class RelationalBackend final : public Backend {
public:
    RelationalBackend() = default;

    BackendKind kind() const override { return BackendKind::Relational; }
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

    // Encoded row images of one table, insertion order; exposed so tests can
    // check the documented encoding directly.
    const std::vector<std::string>& raw_rows(const std::string& entity) const;

private:
    struct Table {
        EntityKind kind = EntityKind::Hub;
        std::vector<std::string> rows; // encoded row images
        // identity -> row index
        std::map<std::uint64_t, std::size_t> by_key; // hubs and links
        // parent -> (datetime ms, row index), ascending datetime
        std::map<std::uint64_t, std::vector<std::pair<std::int64_t, std::size_t>>> history;
    };

    Table& table(const std::string& entity);
    const Table& table(const std::string& entity) const;
    void put_hub(const HubRecord& rec);
    void put_link(const LinkRecord& rec);
    void put_satellite(const SatelliteRecord& rec);

    VaultSchema schema_;
    bool initialized_ = false;
    std::map<std::string, Table> tables_;
};

} // namespace mv
