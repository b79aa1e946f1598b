#pragma once

#include "metavault/document.hpp"
#include "metavault/query.hpp"

#include <vector>

namespace mv {

// One ingested instance in flat form: what went in, when, and the link id the
// catalog handed back. The oracle treats the id purely as a label.
struct FlatInstance {
    DocumentMetadata doc;
    LinkId link_id;
    Instant at;
};

// Ground-truth evaluator: exhaustive linear scan over the flat corpus with no
// backend, no plan and no shared evaluation code. Reproduces query semantics
// from first principles (latest block per natural grouping, then conjunctive
// match) and is compared against execute() in tests and before every
// benchmark timing is accepted.
ResultSet oracle_scan(const std::vector<FlatInstance>& corpus,
                      const std::vector<Predicate>& predicates, bool two_phase,
                      const VaultSchema& schema);

} // namespace mv
