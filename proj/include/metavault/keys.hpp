#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mv {

// 64-bit derived identifier used for hub business keys and link surrogate
// ids. Rendered as 16 lowercase hex digits everywhere it crosses a text
// boundary (exports, query results, schema files).
struct Key {
    std::uint64_t value = 0;

    auto operator<=>(const Key&) const = default;

    std::string hex() const;
    static std::optional<Key> from_hex(const std::string& text);
};

using BusinessKey = Key;
using LinkId = Key;

// Trim leading/trailing ASCII whitespace and collapse internal runs to a
// single space. Bytes >= 0x80 pass through untouched.
std::string normalize_text(const std::string& text);

// ASCII-only case fold (A-Z -> a-z).
std::string fold_case(const std::string& text);

std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed);

// Natural value reserved for documents that lack a block entirely; the
// corresponding link member points at this hub record.
inline constexpr const char* kUnknownNaturalValue = "(unknown)";

// Business key derivation: normalize, fold case, then FNV-1a 64 over
// "<hub name>\x1f<folded value>". Deterministic; identical normalized inputs
// yield identical keys. Empty natural values are rejected.
BusinessKey make_business_key(const std::string& hub_name, const std::string& natural_value);

// Link surrogate id: FNV-1a 64 over the link name and the member keys in the
// link's declared member order. Identical member tuples yield the same id,
// which is what makes link loading idempotent.
LinkId make_link_id(const std::string& link_name, const std::vector<Key>& member_keys);

} // namespace mv
