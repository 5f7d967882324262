#include "toriclab/harness.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace toriclab {

void parallel_for(i64 n, int threads, const std::function<void(i64)>& body) {
    if (threads <= 0) threads = hardware_threads();
    threads = static_cast<int>(std::min<i64>(threads, std::max<i64>(1, n)));
    if (threads <= 1) {
        for (i64 i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (i64 i = t; i < n; i += threads) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

int hardware_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 4 : static_cast<int>(n);
}

// ---------------------------------------------------------------------------

namespace {
std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}
}  // namespace

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw std::runtime_error("config line " + std::to_string(lineno) + ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty()) throw std::runtime_error("config line " + std::to_string(lineno) + ": empty section name");
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
        if (cfg.data_[section].count(key))
            throw std::runtime_error("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        cfg.data_[section][key] = Entry{value, lineno};
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return from_string(ss.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
    auto s = data_.find(section);
    if (s == data_.end()) return false;
    auto k = s->second.find(key);
    if (k == s->second.end()) return false;
    k->second.consumed = true;
    return true;
}

std::string Config::get(const std::string& section, const std::string& key) const {
    auto s = data_.find(section);
    if (s != data_.end()) {
        auto k = s->second.find(key);
        if (k != s->second.end()) {
            k->second.consumed = true;
            return k->second.value;
        }
    }
    throw std::runtime_error("config: missing required key [" + section + "] " + key);
}

std::string Config::get_or(const std::string& section, const std::string& key, const std::string& def) const {
    return has(section, key) ? get(section, key) : def;
}

i64 Config::get_int(const std::string& section, const std::string& key, std::optional<i64> def) const {
    if (!has(section, key)) {
        if (def) return *def;
        throw std::runtime_error("config: missing required key [" + section + "] " + key);
    }
    std::string v = get(section, key);
    i64 out{};
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw std::runtime_error("config: key [" + section + "] " + key + " is not an integer: " + v);
    return out;
}

double Config::get_double(const std::string& section, const std::string& key, std::optional<double> def) const {
    if (!has(section, key)) {
        if (def) return *def;
        throw std::runtime_error("config: missing required key [" + section + "] " + key);
    }
    std::string v = get(section, key);
    try {
        std::size_t pos = 0;
        double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key [" + section + "] " + key + " is not a number: " + v);
    }
}

bool Config::get_bool(const std::string& section, const std::string& key, std::optional<bool> def) const {
    if (!has(section, key)) {
        if (def) return *def;
        throw std::runtime_error("config: missing required key [" + section + "] " + key);
    }
    std::string v = get(section, key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::runtime_error("config: key [" + section + "] " + key + " is not a boolean: " + v);
}

void Config::ensure_all_consumed() const {
    for (const auto& [section, entries] : data_)
        for (const auto& [key, entry] : entries)
            if (!entry.consumed)
                throw std::runtime_error("config line " + std::to_string(entry.line) + ": unknown key [" +
                                         section + "] " + key);
}

std::vector<std::array<std::string, 3>> Config::entries() const {
    std::vector<std::array<std::string, 3>> out;
    for (const auto& [section, entries] : data_)
        for (const auto& [key, entry] : entries) out.push_back({section, key, entry.value});
    return out;
}

// ---------------------------------------------------------------------------

namespace {
u64 fnv1a(const std::string& s) {
    u64 h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(u64 v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}
}  // namespace

std::string CentralValueKey::to_string() const {
    std::ostringstream os;
    os << "form=" << form << "|D=" << D << "|chi=" << chi_id << "|cap=" << cap_factor << "|gap_tol=";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", gap_tol);
    os << buf;
    return os.str();
}

CacheStore::CacheStore(std::string dir, bool offline) : dir_(std::move(dir)), offline_(offline) {
    std::filesystem::create_directories(dir_);
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + tmp);
        os << content;
    }
    std::filesystem::rename(tmp, path);
}

std::optional<CentralValueRecord> CacheStore::get_central(const CentralValueKey& key) const {
    const std::string base = dir_ + "/cv_" + hex64(fnv1a(key.to_string()));
    std::ifstream js(base + ".json");
    if (!js) return std::nullopt;
    std::stringstream ss;
    ss << js.rdbuf();
    const std::string text = ss.str();
    // full-input echo guards against hash collisions
    if (text.find("\"key\": \"" + key.to_string() + "\"") == std::string::npos) return std::nullopt;

    std::ifstream bs(base + ".bin", std::ios::binary);
    if (!bs) return std::nullopt;
    CentralValueRecord rec;
    rec.form_id = key.form;
    rec.D = key.D;
    rec.chi_id = key.chi_id;
    double d[5];
    i64 ints[2];
    bs.read(reinterpret_cast<char*>(d), sizeof d);
    bs.read(reinterpret_cast<char*>(ints), sizeof ints);
    if (!bs) return std::nullopt;
    rec.value = d[0];
    rec.epsilon_estimate = d[1];
    rec.consistency_gap = d[2];
    rec.tail_bound = d[3];
    rec.conductor = d[4];
    rec.epsilon = static_cast<int>(ints[0]);
    rec.terms_used = ints[1];
    return rec;
}

void CacheStore::put_central(const CentralValueKey& key, const CentralValueRecord& rec) const {
    const std::string base = dir_ + "/cv_" + hex64(fnv1a(key.to_string()));
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "{\n  \"key\": \"%s\",\n  \"value\": %.17g,\n  \"epsilon\": %d,\n"
                  "  \"epsilon_estimate\": %.17g,\n  \"consistency_gap\": %.17g,\n"
                  "  \"tail_bound\": %.17g,\n  \"conductor\": %.17g,\n  \"terms_used\": %lld\n}\n",
                  key.to_string().c_str(), rec.value, rec.epsilon, rec.epsilon_estimate,
                  rec.consistency_gap, rec.tail_bound, rec.conductor,
                  static_cast<long long>(rec.terms_used));
    write_file_atomic(base + ".json", buf);
    std::string bin;
    double d[5] = {rec.value, rec.epsilon_estimate, rec.consistency_gap, rec.tail_bound, rec.conductor};
    i64 ints[2] = {rec.epsilon, rec.terms_used};
    bin.append(reinterpret_cast<const char*>(d), sizeof d);
    bin.append(reinterpret_cast<const char*>(ints), sizeof ints);
    write_file_atomic(base + ".bin", bin);
}

std::string CacheStore::eigenvalue_path(const std::string& label) const {
    return dir_ + "/eigs_" + label + ".txt";
}

bool CacheStore::has_eigenvalues(const std::string& label) const {
    return std::filesystem::exists(eigenvalue_path(label));
}

// ---------------------------------------------------------------------------

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::logic_error("CsvWriter: wrong number of cells");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
}

void CsvWriter::write(const std::string& path) const { write_file_atomic(path, text_); }

std::string CsvWriter::num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // shortest representation that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        char t[64];
        std::snprintf(t, sizeof t, "%.*g", prec, v);
        if (std::stod(t) == v) return t;
    }
    return buf;
}

std::string CsvWriter::num(i64 v) { return std::to_string(v); }

}  // namespace toriclab
