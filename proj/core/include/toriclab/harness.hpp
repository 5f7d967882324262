#ifndef TORICLAB_HARNESS_HPP
#define TORICLAB_HARNESS_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toriclab/lfunctions.hpp"

namespace toriclab {

// Deterministic parallel loop: index i is processed by worker i mod T, results
// must be written to caller-owned slots so the output order is fixed.
void parallel_for(i64 n, int threads, const std::function<void(i64)>& body);
int hardware_threads();

// ---------------------------------------------------------------------------
// plain text key=value configuration with [section] headers; unknown keys are
// rejected after the run has consumed what it understands

class Config {
  public:
    static Config load(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key, const std::string& def) const;
    i64 get_int(const std::string& section, const std::string& key, std::optional<i64> def = {}) const;
    double get_double(const std::string& section, const std::string& key, std::optional<double> def = {}) const;
    bool get_bool(const std::string& section, const std::string& key, std::optional<bool> def = {}) const;

    // throws naming the offending line if any key was never consumed
    void ensure_all_consumed() const;
    // resolved (section, key, value) triples for the manifest
    std::vector<std::array<std::string, 3>> entries() const;

  private:
    struct Entry {
        std::string value;
        int line;
        mutable bool consumed = false;
    };
    std::map<std::string, std::map<std::string, Entry>> data_;
};

// ---------------------------------------------------------------------------
// cache: decimal JSON plus a binary sidecar for bit-exact numeric round trips

struct CentralValueKey {
    std::string form;
    i64 D = 0;
    int chi_id = 0;
    i64 cap_factor = 0;
    double gap_tol = 0;
    std::string to_string() const;
};

class CacheStore {
  public:
    CacheStore(std::string dir, bool offline = false);

    const std::string& dir() const { return dir_; }
    bool offline() const { return offline_; }

    std::optional<CentralValueRecord> get_central(const CentralValueKey& key) const;
    void put_central(const CentralValueKey& key, const CentralValueRecord& rec) const;

    std::string eigenvalue_path(const std::string& label) const;
    bool has_eigenvalues(const std::string& label) const;

  private:
    std::string dir_;
    bool offline_;
};

// atomic file write (temp + rename)
void write_file_atomic(const std::string& path, const std::string& content);

// ---------------------------------------------------------------------------
// CSV with deterministic formatting

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<std::string>& cells);
    const std::string& text() const { return text_; }
    void write(const std::string& path) const;
    static std::string num(double v);   // shortest round-trip decimal
    static std::string num(i64 v);

  private:
    std::size_t columns_;
    std::string text_;
};

// ---------------------------------------------------------------------------
// eigenvalue ingestion over HTTP (exchange format of the public modular forms
// database: /ModularForm/GL2/Q/holomorphic/N/k/x/y/download_qexp returns the
// integral q-expansion as a JSON array)

struct LmfdbOptions {
    std::string base_url = "https://www.lmfdb.org";
    int retries = 3;
    int backoff_ms = 250;
};

// fetches (or serves from cache) the eigenvalue file for the labeled newform;
// returns the cache path
std::string lmfdb_fetch(const std::string& label, i64 prime_bound, const CacheStore& cache,
                        const LmfdbOptions& opt = {});
// number of HTTP requests issued so far (for cache tests)
i64 lmfdb_request_count();

}  // namespace toriclab

#endif
