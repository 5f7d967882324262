#include <atomic>
#include <chrono>
#include <regex>
#include <thread>

#include "toriclab/harness.hpp"

#include "httplib.h"
#include "json.hpp"

namespace toriclab {

namespace {
std::atomic<i64> g_requests{0};

struct Label {
    i64 level;
    int weight;
};

Label parse_label(const std::string& label, std::string& path_out) {
    // N.k.x.y, e.g. 11.2.a.a
    static const std::regex re(R"(^(\d+)\.(\d+)\.([a-z]+)\.([a-z]+)$)");
    std::smatch m;
    if (!std::regex_match(label, m, re))
        throw std::runtime_error("lmfdb: malformed newform label: " + label);
    path_out = "/ModularForm/GL2/Q/holomorphic/" + m[1].str() + "/" + m[2].str() + "/" + m[3].str() +
               "/" + m[4].str() + "/download_qexp";
    return {std::stoll(m[1].str()), std::stoi(m[2].str())};
}
}  // namespace

i64 lmfdb_request_count() { return g_requests.load(); }

std::string lmfdb_fetch(const std::string& label, i64 prime_bound, const CacheStore& cache,
                        const LmfdbOptions& opt) {
    const std::string path = cache.eigenvalue_path(label);
    i64 last_prime = prime_bound;
    while (last_prime > 2 && !is_prime(last_prime)) --last_prime;
    if (cache.has_eigenvalues(label)) {
        EigenvalueFile f = read_eigenvalue_file(path);
        if (!f.ap.empty() && f.ap.rbegin()->first >= last_prime) return path;
        // cached range too short: refetch unless offline
        if (cache.offline())
            throw std::runtime_error("lmfdb: cached eigenvalues for " + label +
                                     " end before the requested bound and offline mode is set");
    } else if (cache.offline()) {
        throw std::runtime_error("lmfdb: cache miss for label " + label + " in offline mode");
    }

    std::string url_path;
    Label lab = parse_label(label, url_path);

    std::string body;
    std::string error;
    for (int attempt = 0; attempt < opt.retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(opt.backoff_ms << (attempt - 1)));
        ++g_requests;
        httplib::Client client(opt.base_url);
        client.set_connection_timeout(10);
        client.set_read_timeout(30);
        auto res = client.Get(url_path);
        if (!res) {
            error = "connection failure (" + httplib::to_string(res.error()) + ")";
            continue;
        }
        if (res->status == 404) throw std::runtime_error("lmfdb: label not found: " + label);
        if (res->status != 200) {
            error = "HTTP status " + std::to_string(res->status);
            continue;
        }
        body = res->body;
        break;
    }
    if (body.empty()) throw std::runtime_error("lmfdb: fetch failed for " + label + ": " + error);

    // strict parse: a JSON array of integral coefficients a_1, a_2, ...
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("lmfdb: response is not valid JSON: ") + e.what());
    }
    if (!j.is_array() || j.empty())
        throw std::runtime_error("lmfdb: response schema drift: expected a JSON array of coefficients");
    std::map<i64, i64> ap;
    for (i64 p = 2; p <= prime_bound && p <= static_cast<i64>(j.size()); ++p) {
        if (!is_prime(p)) continue;
        const auto& cell = j[static_cast<std::size_t>(p - 1)];
        if (!cell.is_number_integer())
            throw std::runtime_error("lmfdb: response schema drift: non-integral coefficient at n = " +
                                     std::to_string(p));
        ap[p] = cell.get<i64>();
    }
    if (ap.empty()) throw std::runtime_error("lmfdb: response contains no prime coefficients");
    write_eigenvalue_file(path, label, lab.level, lab.weight, ap);
    return path;
}

}  // namespace toriclab
