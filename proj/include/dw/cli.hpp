#pragma once
// Command-line layer of the dw binary: configuration, on-disk cache, report rendering.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dw/dw_invariant.hpp"

namespace dw::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidInput = 1,
    kSearchExhausted = 2,
    kTableMismatch = 3,
    kObservationViolated = 4,
};

enum class Format { text, json, csv };

struct RunConfig {
    std::vector<long> primes;
    std::string group = "q8";
    Format format = Format::text;
    std::optional<std::filesystem::path> cache_dir;
    std::optional<unsigned> aux_primes;  // search-bound overrides
    NormSearchRoute route = NormSearchRoute::descent;
    std::optional<unsigned> box_cap;
    unsigned threads = 0;                // 0: OpenMP default
    bool verbose = false;
    std::uint64_t seed = 1;
};

// --- cache ---

constexpr int kCacheSchema = 1;

struct CacheEntry {
    mpz_class d;
    std::vector<long> primes;
    // class group
    std::size_t class_number = 0;
    std::vector<i64> invariants;
    unsigned two_rank = 0;
    bool relation_holds = false;
    std::vector<std::vector<i64>> prime_classes;
    // trace tensor and the witnesses behind its distinct-index entries
    std::vector<std::uint8_t> tensor;
    std::vector<std::string> witnesses;
};

class Cache {
public:
    explicit Cache(std::filesystem::path dir);
    std::filesystem::path path_for(const FieldSpec& f) const;
    // A miss on absent files, other prime orderings and schema mismatch.
    std::optional<CacheEntry> load(const FieldSpec& f) const;
    // Write to a temporary file, then rename.
    void store(const CacheEntry& e) const;

private:
    std::filesystem::path dir_;
};

// Flag wins over DW_CACHE_DIR; nullopt disables the cache.
std::optional<std::filesystem::path> resolve_cache_dir(const std::optional<std::filesystem::path>& flag);

CacheEntry make_cache_entry(const FieldSpec& f, const ClassGroup& cg, const TraceTensor& T);

// --- computation and reports ---

struct Timings {
    double class_group_ms = 0, tensor_ms = 0, invariants_ms = 0, total_ms = 0;
};

struct ComputeResult {
    InvariantReport report;
    Timings timings;
    bool cache_hit = false;
};

EtaleOptions etale_options(const RunConfig& cfg);
ComputeResult compute(const FieldSpec& f, const DualityPreset& preset, const RunConfig& cfg);

std::string rational_string(const mpq_class& q);   // "p/q" or "p"
std::string decimal_string(const mpq_class& q);    // 0.5, 3.5, 8
std::string linking_word(bool symmetric);           // symmetric | non-symmetric
std::string primes_string(const std::vector<long>& primes);

std::string render_json(const ComputeResult& r, bool with_timings = true);
std::string render_text(const ComputeResult& r);
std::string csv_header();
std::string csv_row(const InvariantReport& r);

struct TableRow {
    std::vector<long> primes;
    std::string z_omega, z_omega_hat;  // exact rationals
    bool symmetric;
};
// Expected values of the four reference fields for the q8 preset.
const std::vector<TableRow>& golden_table();

// Entry point of the dw binary.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dw::cli
