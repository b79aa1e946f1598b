#pragma once

#include "metavault/backend.hpp"
#include "metavault/document.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace mv {

// The catalog: one vault schema driven through both physical backends in
// lockstep. Writes are serialized by an internal lock; reads may run
// concurrently and observe only fully applied inserts.
class Catalog {
public:
    explicit Catalog(VaultSchema schema);

    Catalog(const Catalog&) = delete;
    Catalog& operator=(const Catalog&) = delete;

    static std::unique_ptr<Catalog> create(VaultSchema schema);

    // Persistence: schema.mvs plus one subdirectory per backend.
    static std::unique_ptr<Catalog> open(const std::filesystem::path& dir);
    void save(const std::filesystem::path& dir) const;

    VaultSchema schema_snapshot() const;
    int schema_version() const;

    void evolve_add_hub(HubDef def);
    void evolve_add_link(LinkDef def);
    void evolve_add_satellite(SatelliteDef def,
                              std::optional<std::string> category_label = std::nullopt);

    // Inserts one document instance at `at`. Hub records are reused when the
    // business key already exists; a link with an identical member tuple is
    // reused as well, so replaying a document is idempotent at the hub and
    // link level. Satellites append, one record per non-empty block.
    LinkId insert_document(const DocumentMetadata& doc, Instant at);

    // Appends a new satellite version; the prior record is retained.
    SatelliteRecord supersede_satellite(const std::string& satellite, Key parent_key,
                                        const AttributeMap& attributes, Instant at);

    std::optional<SatelliteRecord> current_satellite(const std::string& satellite, Key parent_key,
                                                     Instant as_of = kLatest) const;

    std::vector<SatelliteRecord> satellite_history(const std::string& satellite,
                                                   Key parent_key) const;

    Backend& backend(BackendKind kind);
    const Backend& backend(BackendKind kind) const;

    // Walks every link and satellite on both backends and checks that all
    // referenced records resolve. Throws Error(Integrity) on violation.
    void check_referential_integrity() const;

    // Read lock for multi-call read sequences (queries hold this while they
    // materialize results).
    std::shared_lock<std::shared_mutex> read_lock() const;

private:
    LinkId insert_document_locked(const DocumentMetadata& doc, Instant at);
    BusinessKey ensure_hub_record(const std::string& hub, const std::string& natural_value,
                                  Instant at, const SourceRef& source);
    void put_both(const Record& record);

    VaultSchema schema_;
    std::unique_ptr<Backend> relational_;
    std::unique_ptr<Backend> document_;
    mutable std::shared_mutex mutex_;
};

} // namespace mv
