#pragma once

#include "metavault/record.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mv {

// Flat per-document record produced by extraction and consumed by insertion.
// One DocumentMetadata describes one metadata instance; the title is the
// document's anchor key and must be non-empty.

struct TitleBlock {
    std::string title;
    std::vector<std::string> authors;
    std::string description;
    std::vector<std::string> keywords;

    bool empty() const { return title.empty(); }
    bool operator==(const TitleBlock&) const = default;
};

struct DateBlock {
    std::string epoch; // free-text period, e.g. "19e siecle"
    std::optional<Instant> deposit_date;
    std::optional<Instant> update_date;

    bool empty() const { return epoch.empty() && !deposit_date && !update_date; }

    // Natural value for Hub_Date: the deposit date as "YYYY-MM-DD" when
    // present, else the epoch text, else the update date. Empty when the
    // whole block is empty.
    std::string natural_string() const;

    bool operator==(const DateBlock&) const = default;
};

struct LocationBlock {
    std::string address;
    std::string additional_info;
    std::string reference;

    bool empty() const { return address.empty() && additional_info.empty() && reference.empty(); }
    bool operator==(const LocationBlock&) const = default;
};

struct DocumentMetadata {
    TitleBlock title;
    DateBlock date;
    LocationBlock location;
    std::string category; // label, e.g. "book"; must have a dispatch entry
    AttributeMap category_attributes; // attributes of the category satellite
    SourceRef source;

    bool operator==(const DocumentMetadata&) const = default;
};

} // namespace mv
