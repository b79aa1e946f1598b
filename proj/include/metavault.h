/* metavault.h - C API for the metavault catalog shared library.
 *
 * Opaque-handle, error-code interface. Every function returns an mv_status;
 * on failure mv_last_error() carries a message for the calling thread.
 * Strings returned through out-parameters are heap-allocated and must be
 * released with mv_string_free().
 */

#ifndef METAVAULT_H
#define METAVAULT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef MV_API
#define MV_API __attribute__((visibility("default")))
#endif

typedef struct mv_catalog mv_catalog;

typedef enum mv_status {
    MV_OK = 0,
    MV_ERR_USAGE = 1,     /* bad arguments / malformed request */
    MV_ERR_PARSE = 2,     /* unparseable input file or expression */
    MV_ERR_SCHEMA = 3,    /* schema violation (unknown entity, non-additive change) */
    MV_ERR_INTEGRITY = 4, /* referential integrity / duplicate identity */
    MV_ERR_NOT_FOUND = 5,
    MV_ERR_IO = 6,
    MV_ERR_LOCKED = 7,    /* data directory held by another writer */
    MV_ERR_ORACLE_MISMATCH = 8, /* benchmark result disagreed with the oracle */
    MV_ERR_INTERNAL = 9
} mv_status;

typedef enum mv_open_mode {
    MV_OPEN_READ = 0, /* shared lock; mutating calls are rejected */
    MV_OPEN_WRITE = 1 /* exclusive lock */
} mv_open_mode;

MV_API unsigned mv_abi_version(void);
MV_API const char* mv_status_name(mv_status status);

/* Message for the last failed call on the calling thread; never NULL. */
MV_API const char* mv_last_error(void);

MV_API void mv_string_free(char* text);

/* Creates <dir>, seeds the base vault schema and persists it. */
MV_API mv_status mv_catalog_create(const char* dir, mv_catalog** out);

MV_API mv_status mv_catalog_open(const char* dir, mv_open_mode mode, mv_catalog** out);

MV_API void mv_catalog_close(mv_catalog* catalog);

/* Schema text in the versioned export format. */
MV_API mv_status mv_schema_text(mv_catalog* catalog, char** out_text);

MV_API mv_status mv_schema_add_hub(mv_catalog* catalog, const char* name, const char* key_source);

/* hubs_csv: comma-separated member hub names, declared order. */
MV_API mv_status mv_schema_add_link(mv_catalog* catalog, const char* name, const char* hubs_csv);

/* attrs_csv: "Name:text,Names:list,When:ts". category_label may be NULL; when
 * given, the label dispatches to this satellite. */
MV_API mv_status mv_schema_add_satellite(mv_catalog* catalog, const char* name, const char* parent,
                                         const char* attrs_csv, const char* category_label);

/* Ingests a corpus manifest. base_instant_iso may be NULL (continue after the
 * newest stored instant, or a fixed base on an empty catalog). The report
 * JSON contains per-source counts and carries no timing fields. */
MV_API mv_status mv_ingest_manifest(mv_catalog* catalog, const char* manifest_path,
                                    const char* base_instant_iso, char** out_report_json);

/* expression: conjunctive query grammar (see docs/FORMATS.md).
 * backend: "relational" or "document". Result is JSON lines, one row per
 * matching document, sorted by link id. */
MV_API mv_status mv_query(mv_catalog* catalog, const char* expression, const char* backend,
                          int two_phase, char** out_json_lines);

/* Document-model export of one entity: {"<entity>": {"<id>": {...}}}. */
MV_API mv_status mv_export_entity(mv_catalog* catalog, const char* entity, char** out_json);

/* CSV with columns (entity, data_bytes, index_bytes, total_bytes). */
MV_API mv_status mv_storage_report_csv(mv_catalog* catalog, const char* backend, char** out_csv);

/* Runs the benchmark protocol on a generated corpus. config_json may be NULL
 * for defaults (100 repetitions, scale 1, both backends, queries 1-5). Keys:
 * repetitions, warmup, scale, seed, backends, queries, stress_readers. */
MV_API mv_status mv_bench_run(const char* config_json, char** out_report_csv,
                              char** out_plot_data, char** out_storage_csv);

/* Writes a synthetic fixture corpus plus manifest under dir; stats JSON
 * reports per-source document and instance counts. */
MV_API mv_status mv_corpus_generate(const char* dir, unsigned scale, uint64_t seed,
                                    char** out_stats_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* METAVAULT_H */
