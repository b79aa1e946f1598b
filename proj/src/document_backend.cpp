#include "metavault/document_backend.hpp"

#include "metavault/errors.hpp"

#include <algorithm>
#include <fstream>

namespace mv {

namespace {

using json = nlohmann::ordered_json;

// "Hub_Title" -> "Title_id", matching the conventional foreign-key naming.
std::string member_field_name(const std::string& hub) {
    const std::string stem = hub.rfind("Hub_", 0) == 0 ? hub.substr(4) : hub;
    return stem + "_id";
}

json hub_fields(const HubRecord& rec) {
    json fields = json::object();
    fields["Value"] = rec.natural_value;
    fields["Datetime"] = rec.datetime.ms;
    fields["Source"] = rec.source.uri;
    return fields;
}

HubRecord hub_from_fields(const std::string& entity, const std::string& id, const json& fields) {
    HubRecord rec;
    rec.hub = entity;
    auto key = Key::from_hex(id);
    if (!key) raise(ErrorCode::Parse, "bad hub object id '" + id + "' in " + entity);
    rec.key = *key;
    rec.natural_value = fields.at("Value").get<std::string>();
    rec.datetime = Instant{fields.at("Datetime").get<std::int64_t>()};
    rec.source.uri = fields.at("Source").get<std::string>();
    return rec;
}

json link_fields(const LinkDef& def, const LinkRecord& rec) {
    json fields = json::object();
    for (const auto& hub : def.member_hubs) {
        fields[member_field_name(hub)] = rec.member_keys.at(hub).hex();
    }
    fields["Datetime"] = rec.datetime.ms;
    fields["Source"] = rec.source.uri;
    return fields;
}

LinkRecord link_from_fields(const LinkDef& def, const std::string& id, const json& fields) {
    LinkRecord rec;
    rec.link = def.name;
    auto lid = Key::from_hex(id);
    if (!lid) raise(ErrorCode::Parse, "bad link object id '" + id + "' in " + def.name);
    rec.id = *lid;
    for (const auto& hub : def.member_hubs) {
        const std::string field = member_field_name(hub);
        auto key = Key::from_hex(fields.at(field).get<std::string>());
        if (!key) raise(ErrorCode::Parse, "bad member key in " + def.name + "." + field);
        rec.member_keys[hub] = *key;
    }
    rec.datetime = Instant{fields.at("Datetime").get<std::int64_t>()};
    rec.source.uri = fields.at("Source").get<std::string>();
    return rec;
}

json satellite_fields(const SatelliteDef& def, const SatelliteRecord& rec) {
    json fields = json::object();
    for (const auto& [name, kind] : def.attributes) {
        auto it = rec.attributes.find(name);
        if (it == rec.attributes.end()) continue; // absent attributes are omitted
        const AttributeValue& value = it->second;
        switch (kind) {
            case ValueKind::Text:
                fields[name] = value.as_text();
                break;
            case ValueKind::TextList:
                fields[name] = value.as_list();
                break;
            case ValueKind::Timestamp:
                fields[name] = value.as_timestamp().ms;
                break;
        }
    }
    fields["Datetime"] = rec.datetime.ms;
    fields["Source"] = rec.source.uri;
    return fields;
}

SatelliteRecord satellite_from_fields(const SatelliteDef& def, const std::string& id,
                                      const json& fields) {
    SatelliteRecord rec;
    rec.satellite = def.name;
    const auto sep = id.find('_');
    auto parent = sep == std::string::npos ? std::nullopt : Key::from_hex(id.substr(0, sep));
    if (!parent) raise(ErrorCode::Parse, "bad satellite object id '" + id + "' in " + def.name);
    rec.parent_key = *parent;
    rec.datetime = Instant{fields.at("Datetime").get<std::int64_t>()};
    rec.source.uri = fields.at("Source").get<std::string>();
    if (std::to_string(rec.datetime.ms) != id.substr(sep + 1)) {
        raise(ErrorCode::Parse, "object id '" + id + "' disagrees with Datetime in " + def.name);
    }
    for (const auto& [name, kind] : def.attributes) {
        auto it = fields.find(name);
        if (it == fields.end()) continue;
        switch (kind) {
            case ValueKind::Text:
                rec.attributes.emplace(name, AttributeValue::text(it->get<std::string>()));
                break;
            case ValueKind::TextList: {
                auto items = it->get<std::vector<std::string>>();
                if (auto v = AttributeValue::text_list(std::move(items))) {
                    rec.attributes.emplace(name, *v);
                }
                break;
            }
            case ValueKind::Timestamp:
                rec.attributes.emplace(
                    name, AttributeValue::timestamp(Instant{it->get<std::int64_t>()}));
                break;
        }
    }
    return rec;
}

std::uint64_t record_json_bytes(const std::string& id, const json& fields) {
    json wrapper = json::object();
    wrapper[id] = fields;
    return wrapper.dump().size();
}

} // namespace

void DocumentBackend::init_schema(const VaultSchema& schema) {
    schema.validate();
    if (initialized_ && !schema.is_additive_evolution_of(schema_)) {
        raise(ErrorCode::Schema, "non-additive schema change rejected");
    }
    for (const auto& name : schema.entity_names()) {
        if (collections_.count(name)) continue;
        Collection c;
        c.kind = *schema.entity_kind(name);
        collections_.emplace(name, std::move(c));
    }
    schema_ = schema;
    initialized_ = true;
}

DocumentBackend::Collection& DocumentBackend::collection(const std::string& entity) {
    auto it = collections_.find(entity);
    if (it == collections_.end()) raise(ErrorCode::Schema, "unknown entity '" + entity + "'");
    return it->second;
}

const DocumentBackend::Collection& DocumentBackend::collection(const std::string& entity) const {
    auto it = collections_.find(entity);
    if (it == collections_.end()) raise(ErrorCode::Schema, "unknown entity '" + entity + "'");
    return it->second;
}

void DocumentBackend::insert_record(Collection& coll, const std::string& entity,
                                    const Record& record, bool check_integrity) {
    json fields;
    std::uint64_t identity = 0;
    std::int64_t datetime_ms = 0;

    if (const auto* hub = std::get_if<HubRecord>(&record)) {
        if (!schema_.find_hub(entity)) raise(ErrorCode::Schema, "unknown hub '" + entity + "'");
        fields = hub_fields(*hub);
        identity = hub->key.value;
    } else if (const auto* link = std::get_if<LinkRecord>(&record)) {
        const LinkDef* def = schema_.find_link(entity);
        if (!def) raise(ErrorCode::Schema, "unknown link '" + entity + "'");
        if (link->member_keys.size() != def->member_hubs.size()) {
            raise(ErrorCode::Integrity, "link '" + entity + "' member keys must cover exactly " +
                                            std::to_string(def->member_hubs.size()) + " hubs");
        }
        for (const auto& hub : def->member_hubs) {
            auto mk = link->member_keys.find(hub);
            if (mk == link->member_keys.end()) {
                raise(ErrorCode::Integrity,
                      "link '" + entity + "' is missing a key for hub '" + hub + "'");
            }
            if (check_integrity && !collection(hub).by_key.count(mk->second.value)) {
                raise(ErrorCode::Integrity, "link '" + entity + "' references absent " + hub +
                                                " key " + mk->second.hex());
            }
        }
        fields = link_fields(*def, *link);
        identity = link->id.value;
    } else {
        const auto& sat = std::get<SatelliteRecord>(record);
        const SatelliteDef* def = schema_.find_satellite(entity);
        if (!def) raise(ErrorCode::Schema, "unknown satellite '" + entity + "'");
        for (const auto& [attr, value] : sat.attributes) {
            auto kind = def->attribute_kind(attr);
            if (!kind) {
                raise(ErrorCode::Schema,
                      "satellite '" + entity + "' does not declare attribute '" + attr + "'");
            }
            if (*kind != value.kind()) {
                raise(ErrorCode::Schema, "attribute '" + attr + "' of '" + entity +
                                             "' expects kind " + value_kind_name(*kind));
            }
        }
        if (check_integrity && !collection(def->parent).by_key.count(sat.parent_key.value)) {
            raise(ErrorCode::Integrity, "satellite '" + entity + "' references absent parent " +
                                            def->parent + " key " + sat.parent_key.hex());
        }
        fields = satellite_fields(*def, sat);
        identity = sat.parent_key.value;
        datetime_ms = sat.datetime.ms;
    }

    const std::string id = record_id(record);
    auto existing = coll.by_id.find(id);
    if (existing != coll.by_id.end()) {
        if (coll.records[existing->second].second == fields) return; // identical replay
        raise(ErrorCode::Integrity, "duplicate identity " + entity + "/" + id);
    }

    const std::size_t index = coll.records.size();
    coll.by_id.emplace(id, index);
    if (coll.kind == EntityKind::Satellite) {
        auto& hist = coll.history[identity];
        auto pos = std::lower_bound(hist.begin(), hist.end(), datetime_ms,
                                    [](const auto& e, std::int64_t ms) { return e.first < ms; });
        hist.insert(pos, {datetime_ms, index});
    } else {
        coll.by_key.emplace(identity, index);
    }
    coll.json_bytes += record_json_bytes(id, fields);
    coll.records.emplace_back(id, std::move(fields));
}

void DocumentBackend::put(const Record& record) {
    if (!initialized_) raise(ErrorCode::Schema, "schema not initialized");
    const std::string& entity = record_entity(record);
    insert_record(collection(entity), entity, record, /*check_integrity=*/true);
}

std::optional<HubRecord> DocumentBackend::get_hub(const std::string& hub, BusinessKey key) const {
    if (!schema_.find_hub(hub)) raise(ErrorCode::Schema, "unknown hub '" + hub + "'");
    const Collection& c = collection(hub);
    auto it = c.by_key.find(key.value);
    if (it == c.by_key.end()) return std::nullopt;
    const auto& [id, fields] = c.records[it->second];
    return hub_from_fields(hub, id, fields);
}

std::optional<LinkRecord> DocumentBackend::get_link(const std::string& link, LinkId id) const {
    const LinkDef* def = schema_.find_link(link);
    if (!def) raise(ErrorCode::Schema, "unknown link '" + link + "'");
    const Collection& c = collection(link);
    auto it = c.by_key.find(id.value);
    if (it == c.by_key.end()) return std::nullopt;
    const auto& [rid, fields] = c.records[it->second];
    return link_from_fields(*def, rid, fields);
}

std::vector<SatelliteRecord> DocumentBackend::satellite_history(const std::string& satellite,
                                                                Key parent_key) const {
    const SatelliteDef* def = schema_.find_satellite(satellite);
    if (!def) raise(ErrorCode::Schema, "unknown satellite '" + satellite + "'");
    const Collection& c = collection(satellite);
    std::vector<SatelliteRecord> out;
    auto it = c.history.find(parent_key.value);
    if (it == c.history.end()) return out;
    out.reserve(it->second.size());
    for (const auto& [ms, index] : it->second) {
        (void)ms;
        const auto& [id, fields] = c.records[index];
        out.push_back(satellite_from_fields(*def, id, fields));
    }
    return out;
}

std::optional<SatelliteRecord> DocumentBackend::current_satellite(const std::string& satellite,
                                                                  Key parent_key,
                                                                  Instant as_of) const {
    const SatelliteDef* def = schema_.find_satellite(satellite);
    if (!def) raise(ErrorCode::Schema, "unknown satellite '" + satellite + "'");
    const Collection& c = collection(satellite);
    auto it = c.history.find(parent_key.value);
    if (it == c.history.end() || it->second.empty()) return std::nullopt;
    const auto& hist = it->second;
    auto pos = std::upper_bound(hist.begin(), hist.end(), as_of.ms,
                                [](std::int64_t ms, const auto& e) { return ms < e.first; });
    if (pos == hist.begin()) return std::nullopt;
    --pos;
    const auto& [id, fields] = c.records[pos->second];
    return satellite_from_fields(*def, id, fields);
}

std::vector<Record> DocumentBackend::scan(const EntityFilter& filter) const {
    if (!initialized_) raise(ErrorCode::Schema, "schema not initialized");
    validate_filter(schema_, filter);
    const Collection& c = collection(filter.entity);
    std::vector<Record> out;
    for (const auto& [id, fields] : c.records) {
        Record rec;
        switch (c.kind) {
            case EntityKind::Hub:
                rec = hub_from_fields(filter.entity, id, fields);
                break;
            case EntityKind::Link:
                rec = link_from_fields(*schema_.find_link(filter.entity), id, fields);
                break;
            case EntityKind::Satellite:
                rec = satellite_from_fields(*schema_.find_satellite(filter.entity), id, fields);
                break;
        }
        if (record_matches_filter(rec, filter.predicates)) out.push_back(std::move(rec));
    }
    return out;
}

std::uint64_t DocumentBackend::count(const std::string& entity) const {
    return collection(entity).records.size();
}

StorageReport DocumentBackend::storage_report() const {
    if (!initialized_) raise(ErrorCode::Schema, "schema not initialized");
    StorageReport report;
    report.backend = BackendKind::Document;
    report.page_size = 0;
    for (const auto& name : schema_.entity_names()) {
        EntityStorage e;
        e.entity = name;
        e.data_bytes = collection(name).json_bytes;
        report.entities.push_back(std::move(e));
    }
    return report;
}

std::string DocumentBackend::export_entity_json(const std::string& entity) const {
    const Collection& c = collection(entity);
    json root = json::object();
    json& body = root[entity] = json::object();
    for (const auto& [id, fields] : c.records) body[id] = fields;
    return root.dump(1);
}

void DocumentBackend::import_entity_json(const std::string& entity,
                                         const std::string& json_text) {
    if (!initialized_) raise(ErrorCode::Schema, "schema not initialized");
    Collection& c = collection(entity);
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        raise(ErrorCode::Parse, std::string("bad collection JSON: ") + e.what());
    }
    if (!root.is_object() || root.size() != 1 || !root.contains(entity) ||
        !root[entity].is_object()) {
        raise(ErrorCode::Parse, "collection JSON must be {\"" + entity + "\": {...}}");
    }
    Collection fresh;
    fresh.kind = c.kind;
    std::swap(c, fresh);
    try {
        for (const auto& [id, fields] : root[entity].items()) {
            Record rec;
            switch (c.kind) {
                case EntityKind::Hub:
                    rec = hub_from_fields(entity, id, fields);
                    break;
                case EntityKind::Link:
                    rec = link_from_fields(*schema_.find_link(entity), id, fields);
                    break;
                case EntityKind::Satellite:
                    rec = satellite_from_fields(*schema_.find_satellite(entity), id, fields);
                    break;
            }
            if (record_id(rec) != id) {
                raise(ErrorCode::Parse, "object id '" + id + "' disagrees with record identity");
            }
            insert_record(c, entity, rec, /*check_integrity=*/false);
        }
    } catch (const json::exception& e) {
        std::swap(c, fresh);
        raise(ErrorCode::Parse, std::string("bad record in ") + entity + ": " + e.what());
    } catch (...) {
        std::swap(c, fresh); // restore prior contents
        throw;
    }
}

void DocumentBackend::verify_integrity() const {
    for (const auto& [name, c] : collections_) {
        if (c.kind == EntityKind::Link) {
            const LinkDef* def = schema_.find_link(name);
            for (const auto& [id, fields] : c.records) {
                LinkRecord rec = link_from_fields(*def, id, fields);
                for (const auto& [hub, key] : rec.member_keys) {
                    if (!collection(hub).by_key.count(key.value)) {
                        raise(ErrorCode::Integrity, "link '" + name + "' references absent " +
                                                        hub + " key " + key.hex());
                    }
                }
            }
        } else if (c.kind == EntityKind::Satellite) {
            const SatelliteDef* def = schema_.find_satellite(name);
            const Collection& parent = collection(def->parent);
            for (const auto& [identity, hist] : c.history) {
                (void)hist;
                if (!parent.by_key.count(identity)) {
                    raise(ErrorCode::Integrity, "satellite '" + name +
                                                    "' references absent parent " + def->parent +
                                                    " key " + Key{identity}.hex());
                }
            }
        }
    }
}

void DocumentBackend::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    for (const auto& [name, c] : collections_) {
        (void)c;
        std::ofstream out(dir / (name + ".json"), std::ios::binary | std::ios::trunc);
        if (!out) raise(ErrorCode::Io, "cannot write collection file for " + name);
        out << export_entity_json(name) << "\n";
        if (!out) raise(ErrorCode::Io, "short write on collection file for " + name);
    }
}

void DocumentBackend::load(const std::filesystem::path& dir) {
    if (!initialized_) raise(ErrorCode::Schema, "schema not initialized");
    for (const auto& name : schema_.entity_names()) {
        Collection& c = collection(name);
        Collection fresh;
        fresh.kind = c.kind;
        std::swap(c, fresh);
        const auto path = dir / (name + ".json");
        if (!std::filesystem::exists(path)) continue;
        std::ifstream in(path, std::ios::binary);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        import_entity_json(name, text);
    }
    verify_integrity();
}

std::unique_ptr<Backend> make_document_backend() {
    return std::make_unique<DocumentBackend>();
}

// unused helper guard
void DocumentBackend::reindex(Collection&, const std::string&) {}

} // namespace mv
