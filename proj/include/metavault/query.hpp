#pragma once

#include "metavault/backend.hpp"
#include "metavault/catalog.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mv {

// Query-level predicate: an attribute predicate qualified by the satellite it
// targets, or a category membership test.
struct Predicate {
    enum class Kind { Attribute, CategoryIs };

    Kind kind = Kind::Attribute;
    std::string entity; // satellite name (Attribute only)
    AttrPredicate attr; // Attribute only
    std::string category_label; // CategoryIs only

    static Predicate contains_word(std::string entity, std::string attribute, std::string word) {
        Predicate p;
        p.kind = Kind::Attribute;
        p.entity = std::move(entity);
        p.attr = AttrPredicate::contains_word(std::move(attribute), std::move(word));
        return p;
    }
    static Predicate equals(std::string entity, std::string attribute, std::string value) {
        Predicate p;
        p.kind = Kind::Attribute;
        p.entity = std::move(entity);
        p.attr = AttrPredicate::equals(std::move(attribute), std::move(value));
        return p;
    }
    static Predicate year_equals(std::string entity, std::string attribute, int year) {
        Predicate p;
        p.kind = Kind::Attribute;
        p.entity = std::move(entity);
        p.attr = AttrPredicate::year_equals(std::move(attribute), year);
        return p;
    }
    static Predicate category_is(std::string label) {
        Predicate p;
        p.kind = Kind::CategoryIs;
        p.category_label = std::move(label);
        return p;
    }

    bool operator==(const Predicate&) const = default;
};

// One join leg: a link member hub and the satellite hanging off it, with the
// predicates that satellite must satisfy.
struct JoinLeg {
    std::string hub;
    std::string satellite;
    std::vector<AttrPredicate> predicates;
};

struct QueryPlan {
    int schema_version = 0;
    std::string link; // all joins route through this link
    std::string anchor_hub;
    std::vector<JoinLeg> legs;
    std::vector<std::string> category_labels; // CategoryIs conjuncts
    bool two_phase = false;
    std::optional<Instant> as_of; // satellite resolution instant; latest when absent

    // Entities the plan touches: each leg's hub and satellite, plus the link
    // when more than one entity group participates.
    std::vector<std::string> entities() const;
};

struct ResultRow {
    LinkId link_id;
    SourceRef source;
    std::string category_label;
    std::map<std::string, AttributeMap> satellites; // satellite name -> attributes
    std::vector<std::string> flags; // e.g. "unresolved-category"

    bool operator==(const ResultRow&) const = default;
};

struct ResultSet {
    std::vector<ResultRow> rows; // unique link ids, ascending

    std::vector<LinkId> link_ids() const;
    bool same_link_ids(const ResultSet& other) const;

    // One JSON object per row, stable key order; the CLI's output format.
    std::string to_json_lines() const;

    bool operator==(const ResultSet&) const = default;
};

// Builds a plan for a conjunction. Rejects empty conjunctions and predicates
// naming unknown satellites/attributes or mismatched operand kinds.
QueryPlan plan(const VaultSchema& schema, const std::vector<Predicate>& predicates,
               bool two_phase = false);

// Inner-joins the link with each leg's hub and current satellite, then
// applies the conjunction. Single-pass; rows come out sorted by link id.
ResultSet execute(const QueryPlan& plan, const Catalog& catalog, BackendKind backend);

// Query #5 execution: phase 1 resolves matching documents and their category
// labels, phase 2 runs one dispatch-satellite fetch per document and merges
// the attributes. Rows with an unregistered category are flagged, not
// dropped.
ResultSet execute_two_phase(const Predicate& title_predicate, const Catalog& catalog,
                            BackendKind backend);

// The paper's five benchmark queries over the base schema.
std::vector<std::vector<Predicate>> paper_query_predicates();

// Parses the CLI query grammar: `Entity.Attr contains W`, `Entity.Attr = V`,
// `Entity.Attr year YYYY`, `category is LABEL`, joined with `and`.
std::vector<Predicate> parse_query_expression(const std::string& expression);

} // namespace mv
