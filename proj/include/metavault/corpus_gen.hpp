#pragma once

#include "metavault/document.hpp"
#include "metavault/manifest.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mv {

// Deterministic synthetic corpus mirroring the four heterogeneous sources.
// Scale 1 produces 245 source files carrying 274 metadata instances
// (inventory 49/49, press 1/30, pictures 30/30, books 165/165); scale S
// multiplies every per-source count by S. The same seed always produces the
// same corpus, file for file.
//
// Predicate hit fractions are fixed and documented here because the paper's
// five queries filter on them:
//   ~24% of titles contain "factory"; ~30% of present addresses are
//   "Tourcoing"; ~25% of deposit dates fall in 2010; the "book" share is the
//   per-source document share (165/245). Each scale block additionally
//   carries a few pinned documents that satisfy all four filters at once, so
//   the deepest conjunction never comes back empty.
struct CorpusStats {
    std::uint64_t inventory_documents = 0, inventory_instances = 0;
    std::uint64_t press_documents = 0, press_instances = 0;
    std::uint64_t irhis_documents = 0, irhis_instances = 0;
    std::uint64_t book_documents = 0, book_instances = 0;

    std::uint64_t total_documents() const {
        return inventory_documents + press_documents + irhis_documents + book_documents;
    }
    std::uint64_t total_instances() const {
        return inventory_instances + press_instances + irhis_instances + book_instances;
    }
};

struct GeneratedCorpus {
    std::filesystem::path dir;
    std::filesystem::path manifest_path;
    CorpusStats stats;
};

// Writes the corpus files (XML, picture/PDF stubs, DC sidecars) and a
// manifest under `dir`.
GeneratedCorpus generate_corpus_files(const std::filesystem::path& dir, unsigned scale,
                                      std::uint64_t seed);

// The same logical corpus as in-memory instances, in ingest order. Extracting
// the generated files yields exactly this sequence.
std::vector<DocumentMetadata> generate_corpus_instances(unsigned scale, std::uint64_t seed,
                                                        CorpusStats* stats_out = nullptr);

CorpusStats expected_stats(unsigned scale);

} // namespace mv
