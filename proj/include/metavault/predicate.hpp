#pragma once

#include "metavault/value.hpp"

#include <string>

namespace mv {

// Attribute-level predicate applied to a single satellite attribute (or a
// hub's natural value). Absent attributes never match.
struct AttrPredicate {
    enum class Op { ContainsWord, Equals, YearEquals };

    std::string attribute;
    Op op = Op::ContainsWord;
    std::string text; // operand for ContainsWord / Equals
    int year = 0;     // operand for YearEquals

    static AttrPredicate contains_word(std::string attribute, std::string word) {
        return AttrPredicate{std::move(attribute), Op::ContainsWord, std::move(word), 0};
    }
    static AttrPredicate equals(std::string attribute, std::string value) {
        return AttrPredicate{std::move(attribute), Op::Equals, std::move(value), 0};
    }
    static AttrPredicate year_equals(std::string attribute, int year) {
        return AttrPredicate{std::move(attribute), Op::YearEquals, {}, year};
    }

    // contains_word: case-insensitive substring; on lists, any element.
    // equals: case-insensitive equality after whitespace normalization.
    // year_equals: UTC calendar year of a timestamp.
    bool matches(const AttributeValue& value) const;

    bool operator==(const AttrPredicate&) const = default;
};

} // namespace mv
