#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mv {

enum class SourceKind { Inventory, VoixDuNord, Irhis, Book };

const char* source_kind_name(SourceKind kind);
std::optional<SourceKind> source_kind_from_name(const std::string& name);

struct ManifestEntry {
    SourceKind kind = SourceKind::Inventory;
    std::filesystem::path path; // file or directory, resolved against the manifest
    std::optional<std::uint64_t> expected_instances;
};

struct CorpusManifest {
    std::filesystem::path base_dir;
    std::vector<ManifestEntry> entries;
};

// Parses the line-structured manifest format (docs/FORMATS.md). Unknown
// source kinds and missing paths are rejected with the offending line number.
CorpusManifest load_manifest(const std::filesystem::path& path);

} // namespace mv
