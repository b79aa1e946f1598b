#include "metavault/schema.hpp"

#include "metavault/errors.hpp"
#include "metavault/keys.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mv {

const char* value_kind_name(ValueKind kind) {
    switch (kind) {
        case ValueKind::Text: return "text";
        case ValueKind::TextList: return "list";
        case ValueKind::Timestamp: return "ts";
    }
    return "text";
}

ValueKind value_kind_from_name(const std::string& name) {
    if (name == "text") return ValueKind::Text;
    if (name == "list") return ValueKind::TextList;
    if (name == "ts") return ValueKind::Timestamp;
    raise(ErrorCode::Parse, "unknown attribute kind '" + name + "'");
}

bool SatelliteDef::has_attribute(const std::string& attr) const {
    return attribute_kind(attr).has_value();
}

std::optional<ValueKind> SatelliteDef::attribute_kind(const std::string& attr) const {
    for (const auto& [name, kind] : attributes) {
        if (name == attr) return kind;
    }
    return std::nullopt;
}

const HubDef* VaultSchema::find_hub(const std::string& name) const {
    for (const auto& h : hubs_) {
        if (h.name == name) return &h;
    }
    return nullptr;
}

const LinkDef* VaultSchema::find_link(const std::string& name) const {
    for (const auto& l : links_) {
        if (l.name == name) return &l;
    }
    return nullptr;
}

const SatelliteDef* VaultSchema::find_satellite(const std::string& name) const {
    for (const auto& s : satellites_) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

bool VaultSchema::has_entity(const std::string& name) const {
    return entity_kind(name).has_value();
}

std::optional<EntityKind> VaultSchema::entity_kind(const std::string& name) const {
    if (find_hub(name)) return EntityKind::Hub;
    if (find_link(name)) return EntityKind::Link;
    if (find_satellite(name)) return EntityKind::Satellite;
    return std::nullopt;
}

std::optional<std::string> VaultSchema::dispatch_satellite(const std::string& label) const {
    auto it = category_dispatch_.find(label);
    if (it == category_dispatch_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> VaultSchema::entity_names() const {
    std::vector<std::string> names;
    names.reserve(hubs_.size() + links_.size() + satellites_.size());
    for (const auto& h : hubs_) names.push_back(h.name);
    for (const auto& l : links_) names.push_back(l.name);
    for (const auto& s : satellites_) names.push_back(s.name);
    return names;
}

void VaultSchema::validate() const {
    std::set<std::string> seen;
    for (const auto& name : entity_names()) {
        if (!seen.insert(name).second) {
            raise(ErrorCode::Schema, "duplicate entity name '" + name + "'");
        }
    }
    for (const auto& link : links_) {
        if (link.member_hubs.size() < 2) {
            raise(ErrorCode::Schema, "link '" + link.name + "' needs at least 2 member hubs");
        }
        std::set<std::string> members;
        for (const auto& hub : link.member_hubs) {
            if (!find_hub(hub)) {
                raise(ErrorCode::Schema,
                      "link '" + link.name + "' references unknown hub '" + hub + "'");
            }
            if (!members.insert(hub).second) {
                raise(ErrorCode::Schema,
                      "link '" + link.name + "' lists hub '" + hub + "' twice");
            }
        }
    }
    for (const auto& sat : satellites_) {
        if (!find_hub(sat.parent) && !find_link(sat.parent)) {
            raise(ErrorCode::Schema,
                  "satellite '" + sat.name + "' has unknown parent '" + sat.parent + "'");
        }
        std::set<std::string> attrs;
        for (const auto& [attr, kind] : sat.attributes) {
            (void)kind;
            if (!attrs.insert(attr).second) {
                raise(ErrorCode::Schema,
                      "satellite '" + sat.name + "' declares attribute '" + attr + "' twice");
            }
        }
    }
    for (const auto& [label, sat] : category_dispatch_) {
        if (!find_satellite(sat)) {
            raise(ErrorCode::Schema,
                  "category '" + label + "' dispatches to unknown satellite '" + sat + "'");
        }
    }
}

VaultSchema VaultSchema::with_hub(HubDef def) const {
    if (has_entity(def.name)) {
        raise(ErrorCode::Schema, "entity '" + def.name + "' already defined");
    }
    VaultSchema next = *this;
    next.hubs_.push_back(std::move(def));
    next.version_ = version_ + 1;
    next.validate();
    return next;
}

VaultSchema VaultSchema::with_link(LinkDef def) const {
    if (has_entity(def.name)) {
        raise(ErrorCode::Schema, "entity '" + def.name + "' already defined");
    }
    VaultSchema next = *this;
    next.links_.push_back(std::move(def));
    next.version_ = version_ + 1;
    next.validate();
    return next;
}

VaultSchema VaultSchema::with_satellite(SatelliteDef def,
                                        std::optional<std::string> category_label) const {
    if (has_entity(def.name)) {
        raise(ErrorCode::Schema, "entity '" + def.name + "' already defined");
    }
    VaultSchema next = *this;
    if (category_label) {
        if (next.category_dispatch_.count(*category_label)) {
            raise(ErrorCode::Schema, "category '" + *category_label + "' already dispatched");
        }
        next.category_dispatch_[*category_label] = def.name;
    }
    next.satellites_.push_back(std::move(def));
    next.version_ = version_ + 1;
    next.validate();
    return next;
}

bool VaultSchema::is_additive_evolution_of(const VaultSchema& earlier) const {
    for (const auto& h : earlier.hubs_) {
        const HubDef* mine = find_hub(h.name);
        if (!mine || !(*mine == h)) return false;
    }
    for (const auto& l : earlier.links_) {
        const LinkDef* mine = find_link(l.name);
        if (!mine || !(*mine == l)) return false;
    }
    for (const auto& s : earlier.satellites_) {
        const SatelliteDef* mine = find_satellite(s.name);
        if (!mine || !(*mine == s)) return false;
    }
    for (const auto& [label, sat] : earlier.category_dispatch_) {
        auto it = category_dispatch_.find(label);
        if (it == category_dispatch_.end() || it->second != sat) return false;
    }
    return version_ >= earlier.version_;
}

VaultSchema VaultSchema::tectoniq() {
    VaultSchema s;
    s.version_ = 1;
    s.hubs_ = {
        {tectoniq::kHubTitle, "Title"},
        {tectoniq::kHubDate, "Date"},
        {tectoniq::kHubLocation, "Location"},
        {tectoniq::kHubCategory, "Category"},
    };
    s.links_ = {
        {tectoniq::kLinkDocument,
         {tectoniq::kHubTitle, tectoniq::kHubLocation, tectoniq::kHubDate,
          tectoniq::kHubCategory}},
    };
    s.satellites_ = {
        {tectoniq::kSatTitle,
         tectoniq::kHubTitle,
         {{"Title", ValueKind::Text},
          {"Authors", ValueKind::TextList},
          {"Description", ValueKind::Text},
          {"Keywords", ValueKind::TextList}}},
        {tectoniq::kSatDate,
         tectoniq::kHubDate,
         {{"Epoch", ValueKind::Text},
          {"DepositDate", ValueKind::Timestamp},
          {"UpdateDate", ValueKind::Timestamp}}},
        {tectoniq::kSatLocation,
         tectoniq::kHubLocation,
         {{"Address", ValueKind::Text},
          {"AdditionalInfo", ValueKind::Text},
          {"Reference", ValueKind::Text}}},
        {tectoniq::kSatIrhis,
         tectoniq::kHubCategory,
         {{"CodePhoto", ValueKind::Text}, {"Provenance", ValueKind::Text}}},
        {tectoniq::kSatVoixDuNord,
         tectoniq::kHubCategory,
         {{"Language", ValueKind::Text}, {"Note", ValueKind::Text}}},
        {tectoniq::kSatInventory,
         tectoniq::kHubCategory,
         {{"Property", ValueKind::Text}, {"Link", ValueKind::Text}}},
        {tectoniq::kSatBook,
         tectoniq::kHubCategory,
         {{"Rights", ValueKind::Text}, {"Publisher", ValueKind::Text}}},
    };
    s.category_dispatch_ = {
        {"inventory", tectoniq::kSatInventory},
        {"voixdunord", tectoniq::kSatVoixDuNord},
        {"irhis", tectoniq::kSatIrhis},
        {"book", tectoniq::kSatBook},
    };
    s.validate();
    return s;
}

std::string VaultSchema::to_text() const {
    std::ostringstream out;
    out << "metavault-schema v1\n";
    out << "schema-version " << version_ << "\n";
    for (const auto& h : hubs_) {
        out << "hub " << h.name << " key=" << h.key_source << "\n";
    }
    for (const auto& l : links_) {
        out << "link " << l.name << " hubs=";
        for (std::size_t i = 0; i < l.member_hubs.size(); ++i) {
            if (i) out << ',';
            out << l.member_hubs[i];
        }
        out << "\n";
    }
    for (const auto& s : satellites_) {
        out << "satellite " << s.name << " parent=" << s.parent << " attrs=";
        for (std::size_t i = 0; i < s.attributes.size(); ++i) {
            if (i) out << ',';
            out << s.attributes[i].first << ':' << value_kind_name(s.attributes[i].second);
        }
        out << "\n";
    }
    for (const auto& [label, sat] : category_dispatch_) {
        out << "category " << label << "=" << sat << "\n";
    }
    return out.str();
}

namespace {

std::vector<std::string> split_on(const std::string& text, char delim) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, delim)) parts.push_back(part);
    return parts;
}

std::string expect_field(const std::string& token, const std::string& field, int line_no) {
    const std::string prefix = field + "=";
    if (token.rfind(prefix, 0) != 0) {
        raise(ErrorCode::Parse, "schema line " + std::to_string(line_no) + ": expected '" +
                                    field + "=...', got '" + token + "'");
    }
    return token.substr(prefix.size());
}

} // namespace

VaultSchema VaultSchema::from_text(const std::string& text) {
    VaultSchema s;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = normalize_text(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (!saw_header) {
            std::string v;
            ls >> v;
            if (word != "metavault-schema" || v != "v1") {
                raise(ErrorCode::Parse, "schema line 1: bad header");
            }
            saw_header = true;
            continue;
        }
        if (word == "schema-version") {
            ls >> s.version_;
            if (s.version_ < 1) raise(ErrorCode::Parse, "schema version must be >= 1");
        } else if (word == "hub") {
            std::string name, keytok;
            ls >> name >> keytok;
            s.hubs_.push_back({name, expect_field(keytok, "key", line_no)});
        } else if (word == "link") {
            std::string name, hubstok;
            ls >> name >> hubstok;
            s.links_.push_back({name, split_on(expect_field(hubstok, "hubs", line_no), ',')});
        } else if (word == "satellite") {
            std::string name, parenttok, attrstok;
            ls >> name >> parenttok >> attrstok;
            SatelliteDef def;
            def.name = name;
            def.parent = expect_field(parenttok, "parent", line_no);
            for (const auto& pair : split_on(expect_field(attrstok, "attrs", line_no), ',')) {
                auto kv = split_on(pair, ':');
                if (kv.size() != 2 || kv[0].empty()) {
                    raise(ErrorCode::Parse,
                          "schema line " + std::to_string(line_no) + ": bad attribute '" +
                              pair + "'");
                }
                def.attributes.emplace_back(kv[0], value_kind_from_name(kv[1]));
            }
            s.satellites_.push_back(std::move(def));
        } else if (word == "category") {
            std::string rest;
            ls >> rest;
            auto kv = split_on(rest, '=');
            if (kv.size() != 2) {
                raise(ErrorCode::Parse,
                      "schema line " + std::to_string(line_no) + ": bad category mapping");
            }
            s.category_dispatch_[kv[0]] = kv[1];
        } else {
            raise(ErrorCode::Parse,
                  "schema line " + std::to_string(line_no) + ": unknown directive '" + word + "'");
        }
    }
    if (!saw_header) raise(ErrorCode::Parse, "empty schema document");
    s.validate();
    return s;
}

} // namespace mv
