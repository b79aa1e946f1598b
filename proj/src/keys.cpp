#include "metavault/keys.hpp"

#include "metavault/errors.hpp"

#include <cctype>
#include <cstdio>

namespace mv {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Usage: return "usage";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Schema: return "schema";
        case ErrorCode::Integrity: return "integrity";
        case ErrorCode::NotFound: return "not-found";
        case ErrorCode::Io: return "io";
        case ErrorCode::Locked: return "locked";
        case ErrorCode::OracleMismatch: return "oracle-mismatch";
        case ErrorCode::Internal: return "internal";
    }
    return "unknown";
}

std::string Key::hex() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::optional<Key> Key::from_hex(const std::string& text) {
    if (text.size() != 16) return std::nullopt;
    std::uint64_t v = 0;
    for (char c : text) {
        v <<= 4;
        if (c >= '0' && c <= '9') v |= static_cast<std::uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint64_t>(c - 'a' + 10);
        else return std::nullopt;
    }
    return Key{v};
}

std::string normalize_text(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (unsigned char c : text) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(c));
    }
    return out;
}

std::string fold_case(const std::string& text) {
    std::string out = text;
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {
constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
} // namespace

BusinessKey make_business_key(const std::string& hub_name, const std::string& natural_value) {
    const std::string normalized = normalize_text(natural_value);
    if (normalized.empty()) {
        raise(ErrorCode::Usage, "missing key attribute for hub '" + hub_name + "'");
    }
    const std::string folded = fold_case(normalized);
    std::uint64_t h = fnv1a64(hub_name.data(), hub_name.size(), kFnvOffset);
    const char sep = '\x1f';
    h = fnv1a64(&sep, 1, h);
    h = fnv1a64(folded.data(), folded.size(), h);
    return BusinessKey{h};
}

LinkId make_link_id(const std::string& link_name, const std::vector<Key>& member_keys) {
    std::uint64_t h = fnv1a64(link_name.data(), link_name.size(), kFnvOffset);
    for (const Key& key : member_keys) {
        const char sep = '\x1f';
        h = fnv1a64(&sep, 1, h);
        unsigned char bytes[8];
        std::uint64_t v = key.value;
        for (int i = 0; i < 8; ++i) {
            bytes[i] = static_cast<unsigned char>(v & 0xff);
            v >>= 8;
        }
        h = fnv1a64(bytes, sizeof(bytes), h);
    }
    return LinkId{h};
}

} // namespace mv
