#include "metavault/relational_backend.hpp"

#include "metavault/errors.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

namespace mv {

namespace {

// --- row codec ------------------------------------------------------------
// Little-endian throughout. Strings are u32 length + bytes.

void put_u8(std::string& buf, std::uint8_t v) { buf.push_back(static_cast<char>(v)); }

void put_u16(std::string& buf, std::uint16_t v) {
    for (int i = 0; i < 2; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_i64(std::string& buf, std::int64_t v) { put_u64(buf, static_cast<std::uint64_t>(v)); }

void put_str(std::string& buf, const std::string& s) {
    put_u32(buf, static_cast<std::uint32_t>(s.size()));
    buf.append(s);
}

class Reader {
public:
    Reader(const std::string& buf, const std::string& context) : buf_(buf), context_(context) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(le(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
    std::uint64_t u64() { return le(8); }
    std::int64_t i64() { return static_cast<std::int64_t>(le(8)); }
    std::string str() {
        const std::uint32_t n = u32();
        return std::string(take(n), n);
    }
    bool done() const { return pos_ == buf_.size(); }

private:
    const char* take(std::size_t n) {
        if (pos_ + n > buf_.size()) {
            raise(ErrorCode::Io, "corrupt row image in " + context_);
        }
        const char* p = buf_.data() + pos_;
        pos_ += n;
        return p;
    }
    std::uint64_t le(std::size_t n) {
        const char* p = take(n);
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < n; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
        }
        return v;
    }
    const std::string& buf_;
    std::string context_;
    std::size_t pos_ = 0;
};

std::string encode_hub(const HubRecord& rec) {
    std::string buf;
    put_u64(buf, rec.key.value);
    put_i64(buf, rec.datetime.ms);
    put_str(buf, rec.natural_value);
    put_str(buf, rec.source.uri);
    return buf;
}

HubRecord decode_hub(const std::string& entity, const std::string& buf) {
    Reader r(buf, entity);
    HubRecord rec;
    rec.hub = entity;
    rec.key = BusinessKey{r.u64()};
    rec.datetime = Instant{r.i64()};
    rec.natural_value = r.str();
    rec.source.uri = r.str();
    return rec;
}

std::string encode_link(const LinkDef& def, const LinkRecord& rec) {
    std::string buf;
    put_u64(buf, rec.id.value);
    put_i64(buf, rec.datetime.ms);
    put_u16(buf, static_cast<std::uint16_t>(def.member_hubs.size()));
    for (const auto& hub : def.member_hubs) {
        put_u64(buf, rec.member_keys.at(hub).value);
    }
    put_str(buf, rec.source.uri);
    return buf;
}

LinkRecord decode_link(const LinkDef& def, const std::string& buf) {
    Reader r(buf, def.name);
    LinkRecord rec;
    rec.link = def.name;
    rec.id = LinkId{r.u64()};
    rec.datetime = Instant{r.i64()};
    const std::uint16_t n = r.u16();
    if (n != def.member_hubs.size()) {
        raise(ErrorCode::Io, "member count mismatch in " + def.name);
    }
    for (const auto& hub : def.member_hubs) {
        rec.member_keys[hub] = BusinessKey{r.u64()};
    }
    rec.source.uri = r.str();
    return rec;
}

enum : std::uint8_t { kTagAbsent = 0, kTagText = 1, kTagList = 2, kTagTimestamp = 3 };

std::string encode_satellite(const SatelliteDef& def, const SatelliteRecord& rec) {
    std::string buf;
    put_u64(buf, rec.parent_key.value);
    put_i64(buf, rec.datetime.ms);
    put_str(buf, rec.source.uri);
    put_u16(buf, static_cast<std::uint16_t>(def.attributes.size()));
    for (const auto& [name, kind] : def.attributes) {
        (void)kind;
        auto it = rec.attributes.find(name);
        if (it == rec.attributes.end()) {
            put_u8(buf, kTagAbsent);
            continue;
        }
        const AttributeValue& value = it->second;
        if (value.is_text()) {
            put_u8(buf, kTagText);
            put_str(buf, value.as_text());
        } else if (value.is_list()) {
            put_u8(buf, kTagList);
            const auto& list = value.as_list();
            put_u16(buf, static_cast<std::uint16_t>(list.size()));
            for (const auto& item : list) put_str(buf, item);
        } else {
            put_u8(buf, kTagTimestamp);
            put_i64(buf, value.as_timestamp().ms);
        }
    }
    return buf;
}

SatelliteRecord decode_satellite(const SatelliteDef& def, const std::string& buf) {
    Reader r(buf, def.name);
    SatelliteRecord rec;
    rec.satellite = def.name;
    rec.parent_key = Key{r.u64()};
    rec.datetime = Instant{r.i64()};
    rec.source.uri = r.str();
    const std::uint16_t n = r.u16();
    if (n != def.attributes.size()) {
        raise(ErrorCode::Io, "attribute count mismatch in " + def.name);
    }
    for (const auto& [name, kind] : def.attributes) {
        (void)kind;
        switch (r.u8()) {
            case kTagAbsent:
                break;
            case kTagText:
                rec.attributes.emplace(name, AttributeValue::text(r.str()));
                break;
            case kTagList: {
                const std::uint16_t count = r.u16();
                std::vector<std::string> items;
                items.reserve(count);
                for (std::uint16_t i = 0; i < count; ++i) items.push_back(r.str());
                if (auto v = AttributeValue::text_list(std::move(items))) {
                    rec.attributes.emplace(name, *v);
                }
                break;
            }
            case kTagTimestamp:
                rec.attributes.emplace(name, AttributeValue::timestamp(Instant{r.i64()}));
                break;
            default:
                raise(ErrorCode::Io, "bad attribute tag in " + def.name);
        }
    }
    return rec;
}

} // namespace

namespace relational {

std::uint64_t data_pages_for(const std::vector<std::uint32_t>& row_sizes) {
    constexpr std::uint64_t usable = kPageSize - kPageHeaderBytes;
    std::uint64_t pages = 0;
    std::uint64_t used = usable; // forces a new page for the first row
    for (std::uint32_t payload : row_sizes) {
        std::uint64_t tuple = kTupleHeaderBytes + payload;
        tuple = (tuple + kTupleAlign - 1) / kTupleAlign * kTupleAlign;
        const std::uint64_t cost = tuple + kLinePointerBytes;
        if (cost > usable) {
            // oversized row: dedicated pages
            pages += (cost + usable - 1) / usable;
            used = usable;
            continue;
        }
        if (used + cost > usable) {
            ++pages;
            used = 0;
        }
        used += cost;
    }
    return pages;
}

std::uint64_t index_bytes_for(std::uint64_t entries, std::uint64_t key_bytes) {
    if (entries == 0) return 0;
    constexpr std::uint64_t usable = kPageSize - kPageHeaderBytes;
    const std::uint64_t total = entries * (key_bytes + kIndexEntryOverheadBytes);
    return (total + usable - 1) / usable * kPageSize;
}

} // namespace relational

void RelationalBackend::init_schema(const VaultSchema& schema) {
    schema.validate();
    if (initialized_ && !schema.is_additive_evolution_of(schema_)) {
        raise(ErrorCode::Schema, "non-additive schema change rejected");
    }
    for (const auto& name : schema.entity_names()) {
        if (tables_.count(name)) continue;
        Table t;
        t.kind = *schema.entity_kind(name);
        tables_.emplace(name, std::move(t));
    }
    schema_ = schema;
    initialized_ = true;
}

RelationalBackend::Table& RelationalBackend::table(const std::string& entity) {
    auto it = tables_.find(entity);
    if (it == tables_.end()) raise(ErrorCode::Schema, "unknown entity '" + entity + "'");
    return it->second;
}

const RelationalBackend::Table& RelationalBackend::table(const std::string& entity) const {
    auto it = tables_.find(entity);
    if (it == tables_.end()) raise(ErrorCode::Schema, "unknown entity '" + entity + "'");
    return it->second;
}

void RelationalBackend::put(const Record& record) {
    if (!initialized_) raise(ErrorCode::Schema, "schema not initialized");
    std::visit(
        [this](const auto& rec) {
            using T = std::decay_t<decltype(rec)>;
            if constexpr (std::is_same_v<T, HubRecord>) put_hub(rec);
            else if constexpr (std::is_same_v<T, LinkRecord>) put_link(rec);
            else put_satellite(rec);
        },
        record);
}

void RelationalBackend::put_hub(const HubRecord& rec) {
    if (!schema_.find_hub(rec.hub)) raise(ErrorCode::Schema, "unknown hub '" + rec.hub + "'");
    Table& t = table(rec.hub);
    std::string row = encode_hub(rec);
    auto it = t.by_key.find(rec.key.value);
    if (it != t.by_key.end()) {
        if (t.rows[it->second] == row) return; // identical replay is a no-op
        raise(ErrorCode::Integrity,
              "duplicate hub identity " + rec.hub + "/" + rec.key.hex());
    }
    t.by_key.emplace(rec.key.value, t.rows.size());
    t.rows.push_back(std::move(row));
}

void RelationalBackend::put_link(const LinkRecord& rec) {
    const LinkDef* def = schema_.find_link(rec.link);
    if (!def) raise(ErrorCode::Schema, "unknown link '" + rec.link + "'");
    if (rec.member_keys.size() != def->member_hubs.size()) {
        raise(ErrorCode::Integrity, "link '" + rec.link + "' member keys must cover exactly " +
                                        std::to_string(def->member_hubs.size()) + " hubs");
    }
    for (const auto& hub : def->member_hubs) {
        auto mk = rec.member_keys.find(hub);
        if (mk == rec.member_keys.end()) {
            raise(ErrorCode::Integrity,
                  "link '" + rec.link + "' is missing a key for hub '" + hub + "'");
        }
        const Table& ht = table(hub);
        if (!ht.by_key.count(mk->second.value)) {
            raise(ErrorCode::Integrity, "link '" + rec.link + "' references absent " + hub +
                                            " key " + mk->second.hex());
        }
    }
    Table& t = table(rec.link);
    std::string row = encode_link(*def, rec);
    auto it = t.by_key.find(rec.id.value);
    if (it != t.by_key.end()) {
        if (t.rows[it->second] == row) return;
        raise(ErrorCode::Integrity, "duplicate link identity " + rec.link + "/" + rec.id.hex());
    }
    t.by_key.emplace(rec.id.value, t.rows.size());
    t.rows.push_back(std::move(row));
}

void RelationalBackend::put_satellite(const SatelliteRecord& rec) {
    const SatelliteDef* def = schema_.find_satellite(rec.satellite);
    if (!def) raise(ErrorCode::Schema, "unknown satellite '" + rec.satellite + "'");
    for (const auto& [attr, value] : rec.attributes) {
        auto kind = def->attribute_kind(attr);
        if (!kind) {
            raise(ErrorCode::Schema,
                  "satellite '" + rec.satellite + "' does not declare attribute '" + attr + "'");
        }
        if (*kind != value.kind()) {
            raise(ErrorCode::Schema, "attribute '" + attr + "' of '" + rec.satellite +
                                         "' expects kind " + value_kind_name(*kind));
        }
    }
    const Table& pt = table(def->parent);
    if (!pt.by_key.count(rec.parent_key.value)) {
        raise(ErrorCode::Integrity, "satellite '" + rec.satellite + "' references absent parent " +
                                        def->parent + " key " + rec.parent_key.hex());
    }
    Table& t = table(rec.satellite);
    std::string row = encode_satellite(*def, rec);
    auto& hist = t.history[rec.parent_key.value];
    auto pos = std::lower_bound(hist.begin(), hist.end(), rec.datetime.ms,
                                [](const auto& e, std::int64_t ms) { return e.first < ms; });
    if (pos != hist.end() && pos->first == rec.datetime.ms) {
        if (t.rows[pos->second] == row) return;
        raise(ErrorCode::Integrity, "duplicate satellite identity " + rec.satellite + "/" +
                                        rec.parent_key.hex() + "@" + rec.datetime.to_iso());
    }
    hist.insert(pos, {rec.datetime.ms, t.rows.size()});
    t.rows.push_back(std::move(row));
}

std::optional<HubRecord> RelationalBackend::get_hub(const std::string& hub,
                                                    BusinessKey key) const {
    if (!schema_.find_hub(hub)) raise(ErrorCode::Schema, "unknown hub '" + hub + "'");
    const Table& t = table(hub);
    auto it = t.by_key.find(key.value);
    if (it == t.by_key.end()) return std::nullopt;
    return decode_hub(hub, t.rows[it->second]);
}

std::optional<LinkRecord> RelationalBackend::get_link(const std::string& link, LinkId id) const {
    const LinkDef* def = schema_.find_link(link);
    if (!def) raise(ErrorCode::Schema, "unknown link '" + link + "'");
    const Table& t = table(link);
    auto it = t.by_key.find(id.value);
    if (it == t.by_key.end()) return std::nullopt;
    return decode_link(*def, t.rows[it->second]);
}

std::vector<SatelliteRecord> RelationalBackend::satellite_history(const std::string& satellite,
                                                                  Key parent_key) const {
    const SatelliteDef* def = schema_.find_satellite(satellite);
    if (!def) raise(ErrorCode::Schema, "unknown satellite '" + satellite + "'");
    const Table& t = table(satellite);
    std::vector<SatelliteRecord> out;
    auto it = t.history.find(parent_key.value);
    if (it == t.history.end()) return out;
    out.reserve(it->second.size());
    for (const auto& [ms, row] : it->second) {
        (void)ms;
        out.push_back(decode_satellite(*def, t.rows[row]));
    }
    return out;
}

std::optional<SatelliteRecord> RelationalBackend::current_satellite(const std::string& satellite,
                                                                    Key parent_key,
                                                                    Instant as_of) const {
    const SatelliteDef* def = schema_.find_satellite(satellite);
    if (!def) raise(ErrorCode::Schema, "unknown satellite '" + satellite + "'");
    const Table& t = table(satellite);
    auto it = t.history.find(parent_key.value);
    if (it == t.history.end() || it->second.empty()) return std::nullopt;
    const auto& hist = it->second;
    auto pos = std::upper_bound(hist.begin(), hist.end(), as_of.ms,
                                [](std::int64_t ms, const auto& e) { return ms < e.first; });
    if (pos == hist.begin()) return std::nullopt;
    --pos;
    return decode_satellite(*def, t.rows[pos->second]);
}

std::vector<Record> RelationalBackend::scan(const EntityFilter& filter) const {
    if (!initialized_) raise(ErrorCode::Schema, "schema not initialized");
    validate_filter(schema_, filter);
    const Table& t = table(filter.entity);
    std::vector<Record> out;
    const EntityKind kind = *schema_.entity_kind(filter.entity);
    for (const auto& row : t.rows) {
        Record rec;
        switch (kind) {
            case EntityKind::Hub:
                rec = decode_hub(filter.entity, row);
                break;
            case EntityKind::Link:
                rec = decode_link(*schema_.find_link(filter.entity), row);
                break;
            case EntityKind::Satellite:
                rec = decode_satellite(*schema_.find_satellite(filter.entity), row);
                break;
        }
        if (record_matches_filter(rec, filter.predicates)) out.push_back(std::move(rec));
    }
    return out;
}

std::uint64_t RelationalBackend::count(const std::string& entity) const {
    return table(entity).rows.size();
}

StorageReport RelationalBackend::storage_report() const {
    if (!initialized_) raise(ErrorCode::Schema, "schema not initialized");
    StorageReport report;
    report.backend = BackendKind::Relational;
    report.page_size = relational::kPageSize;
    for (const auto& name : schema_.entity_names()) {
        const Table& t = table(name);
        std::vector<std::uint32_t> sizes;
        sizes.reserve(t.rows.size());
        for (const auto& row : t.rows) sizes.push_back(static_cast<std::uint32_t>(row.size()));
        EntityStorage e;
        e.entity = name;
        e.data_bytes = relational::data_pages_for(sizes) * relational::kPageSize;
        const std::uint64_t key_bytes = t.kind == EntityKind::Satellite ? 16 : 8;
        e.index_bytes = relational::index_bytes_for(t.rows.size(), key_bytes);
        e.header_bytes = relational::kEntityCatalogHeaderBytes;
        report.entities.push_back(std::move(e));
    }
    return report;
}

const std::vector<std::string>& RelationalBackend::raw_rows(const std::string& entity) const {
    return table(entity).rows;
}

namespace {
constexpr char kTableMagic[4] = {'M', 'V', 'T', 'B'};
} // namespace

void RelationalBackend::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    for (const auto& [name, t] : tables_) {
        std::ofstream out(dir / (name + ".tbl"), std::ios::binary | std::ios::trunc);
        if (!out) raise(ErrorCode::Io, "cannot write table file for " + name);
        std::string buf;
        buf.append(kTableMagic, 4);
        put_u32(buf, 1); // format version
        put_str(buf, name);
        put_u64(buf, t.rows.size());
        for (const auto& row : t.rows) put_str(buf, row);
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (!out) raise(ErrorCode::Io, "short write on table file for " + name);
    }
}

void RelationalBackend::load(const std::filesystem::path& dir) {
    if (!initialized_) raise(ErrorCode::Schema, "schema not initialized");
    for (auto& [name, t] : tables_) {
        t.rows.clear();
        t.by_key.clear();
        t.history.clear();
        const auto path = dir / (name + ".tbl");
        if (!std::filesystem::exists(path)) continue;
        std::ifstream in(path, std::ios::binary);
        std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (buf.size() < 4 || std::memcmp(buf.data(), kTableMagic, 4) != 0) {
            raise(ErrorCode::Io, "bad table file magic: " + path.string());
        }
        Reader r(buf.substr(4), path.string());
        if (r.u32() != 1) raise(ErrorCode::Io, "unsupported table format: " + path.string());
        if (r.str() != name) raise(ErrorCode::Io, "entity name mismatch in " + path.string());
        const std::uint64_t rows = r.u64();
        for (std::uint64_t i = 0; i < rows; ++i) {
            std::string row = r.str();
            // Rebuild identity indexes from the decoded image.
            switch (t.kind) {
                case EntityKind::Hub: {
                    HubRecord rec = decode_hub(name, row);
                    t.by_key.emplace(rec.key.value, t.rows.size());
                    break;
                }
                case EntityKind::Link: {
                    LinkRecord rec = decode_link(*schema_.find_link(name), row);
                    t.by_key.emplace(rec.id.value, t.rows.size());
                    break;
                }
                case EntityKind::Satellite: {
                    SatelliteRecord rec = decode_satellite(*schema_.find_satellite(name), row);
                    auto& hist = t.history[rec.parent_key.value];
                    auto pos = std::lower_bound(
                        hist.begin(), hist.end(), rec.datetime.ms,
                        [](const auto& e, std::int64_t ms) { return e.first < ms; });
                    hist.insert(pos, {rec.datetime.ms, t.rows.size()});
                    break;
                }
            }
            t.rows.push_back(std::move(row));
        }
    }
}

std::unique_ptr<Backend> make_relational_backend() {
    return std::make_unique<RelationalBackend>();
}

} // namespace mv
