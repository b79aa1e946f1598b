#pragma once

#include "metavault/catalog.hpp"
#include "metavault/document.hpp"
#include "metavault/manifest.hpp"
#include "metavault/oracle.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mv {

// A source file staged for extraction.
struct RawDocument {
    SourceKind kind = SourceKind::Inventory;
    std::filesystem::path path;
    std::string uri; // SourceRef uri, possibly extended with a fragment
};

// Dublin-Core-style sidecar record: lowercase prefix-qualified element names
// mapped to a string or list of strings, exactly as stored in the .dc.json
// sidecar files.
struct DcRecord {
    std::map<std::string, std::vector<std::string>> elements;

    bool has(const std::string& element) const;
    std::string first(const std::string& element) const; // "" when absent
    std::vector<std::string> all(const std::string& element) const;

    static DcRecord from_json_text(const std::string& json_text);
};

struct SourceCounters {
    std::uint64_t documents = 0; // source files processed
    std::uint64_t instances = 0; // metadata instances extracted and inserted
    std::uint64_t failures = 0;
    std::optional<std::uint64_t> expected_instances;
};

struct IngestFailure {
    SourceKind kind = SourceKind::Inventory;
    std::string path;
    std::string message;
};

struct IngestReport {
    std::map<SourceKind, SourceCounters> per_source;
    std::vector<IngestFailure> failures;
    std::vector<std::string> warnings;
    std::uint64_t links_created = 0; // new LinkRecords added by the run
    std::int64_t elapsed_us = 0;     // excluded from machine output

    std::uint64_t total_documents() const;
    std::uint64_t total_instances() const;
    std::uint64_t total_failures() const;

    // Machine-parseable report, no timing fields.
    std::string to_json() const;
};

// Deterministic load clock: hands out strictly increasing instants, one per
// inserted instance.
class LoadClock {
public:
    explicit LoadClock(Instant base) : next_(base) {}
    Instant tick() {
        Instant at = next_;
        next_ = next_.plus_ms(1);
        return at;
    }
    Instant peek() const { return next_; }

private:
    Instant next_;
};

// Per-source extractors. Extraction failures throw Error(Parse/Io); run_etl
// records them and keeps going.
std::vector<DocumentMetadata> extract_inventory(const RawDocument& raw);
std::vector<DocumentMetadata> extract_press(const RawDocument& raw,
                                            std::vector<std::string>* warnings = nullptr);
std::vector<DocumentMetadata> extract_picture(const RawDocument& raw);
DocumentMetadata extract_book(const RawDocument& raw, const DcRecord& dc);

// Date parsing used by every extractor: ISO dates, bare years, and bracketed
// years like "[2008]". Unparseable input yields nullopt.
std::optional<Instant> parse_flexible_date(const std::string& text);

// Splits a delimited keyword string on commas/semicolons/periods and trims.
std::vector<std::string> split_keywords(const std::string& text);

// Runs the whole pipeline: stages files per manifest entry, extracts,
// inserts each instance stamped by `clock`. Failures never abort the run.
// When `flat_out` is given, every inserted instance is appended to it in
// insertion order (the oracle's input).
IngestReport run_etl(const CorpusManifest& manifest, Catalog& catalog, LoadClock& clock,
                     std::vector<FlatInstance>* flat_out = nullptr);

} // namespace mv
