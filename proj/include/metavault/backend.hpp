#pragma once

#include "metavault/predicate.hpp"
#include "metavault/record.hpp"
#include "metavault/schema.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mv {

enum class BackendKind { Relational, Document };

const char* backend_kind_name(BackendKind kind);
std::optional<BackendKind> backend_kind_from_name(const std::string& name);

// Conjunctive filter over one entity's records. An empty conjunction selects
// every record of the entity. Predicates resolve against satellite attributes
// or, for hubs, the pseudo-attribute "Value" (the natural key text).
struct EntityFilter {
    std::string entity;
    std::vector<AttrPredicate> predicates;
};

struct EntityStorage {
    std::string entity;
    std::uint64_t data_bytes = 0;  // relational: whole pages; document: compact JSON
    std::uint64_t index_bytes = 0; // relational key index; document backend reports 0
    std::uint64_t header_bytes = 0; // fixed per-entity catalog header
    std::uint64_t total_bytes() const { return data_bytes + index_bytes + header_bytes; }
};

struct StorageReport {
    BackendKind backend = BackendKind::Relational;
    std::uint64_t page_size = 0; // relational only, 0 for document
    std::vector<EntityStorage> entities; // schema entity order
    std::uint64_t total_bytes() const;

    // CSV with columns (entity, data_bytes, index_bytes, total_bytes) plus a
    // trailing Total row. header_bytes fold into total_bytes.
    std::string to_csv() const;
};

// Storage backend contract. Implementations must enforce referential
// integrity and identity uniqueness on put; both backends reject exactly the
// same records. put of a record identical to a stored one is a no-op, which
// keeps replayed ingests idempotent.
class Backend {
public:
    virtual ~Backend() = default;

    virtual BackendKind kind() const = 0;

    // Creates entities for a fresh schema or an additive evolution of the
    // current one; existing data is untouched. Non-additive changes are
    // rejected.
    virtual void init_schema(const VaultSchema& schema) = 0;

    virtual const VaultSchema& schema() const = 0;

    virtual void put(const Record& record) = 0;

    virtual std::optional<HubRecord> get_hub(const std::string& hub, BusinessKey key) const = 0;
    virtual std::optional<LinkRecord> get_link(const std::string& link, LinkId id) const = 0;

    // Full history for (satellite, parent_key), ascending datetime.
    virtual std::vector<SatelliteRecord> satellite_history(const std::string& satellite,
                                                           Key parent_key) const = 0;

    // Latest record with datetime <= as_of, resolved without materializing
    // the history.
    virtual std::optional<SatelliteRecord> current_satellite(const std::string& satellite,
                                                             Key parent_key,
                                                             Instant as_of) const = 0;

    // Deterministic order per backend given identical state.
    virtual std::vector<Record> scan(const EntityFilter& filter) const = 0;

    virtual std::uint64_t count(const std::string& entity) const = 0;

    virtual StorageReport storage_report() const = 0;

    virtual void save(const std::filesystem::path& dir) const = 0;
    virtual void load(const std::filesystem::path& dir) = 0;
};

std::unique_ptr<Backend> make_relational_backend();
std::unique_ptr<Backend> make_document_backend();

// Checks the filter against the schema: entity exists, every attribute is
// declared (hubs expose the pseudo-attribute "Value"), operand kinds line up.
void validate_filter(const VaultSchema& schema, const EntityFilter& filter);

// Conjunction evaluation used by both backends' scans.
bool record_matches_filter(const Record& record, const std::vector<AttrPredicate>& predicates);

inline constexpr Instant kLatest{INT64_MAX};

} // namespace mv
