#include <atomic>
#include <filesystem>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "toriclab/experiments.hpp"
#include "toriclab/runner.hpp"

using namespace toriclab;

namespace {
std::string temp_dir(const std::string& tag) {
    auto path = std::filesystem::temp_directory_path() / ("toriclab_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
    return path.string();
}
}  // namespace

TEST_CASE("parallel_for covers every index exactly once") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(1000, 8, [&](i64 i) { hits[static_cast<std::size_t>(i)]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("config parsing: sections, types, strictness") {
    auto cfg = Config::from_string(
        "# comment\n[experiment]\nkind = gauss\nseed = 7\n[range]\nd_min = 5\nd_max = 50\nflag = true\n");
    CHECK(cfg.get("experiment", "kind") == "gauss");
    CHECK(cfg.get_int("experiment", "seed") == 7);
    CHECK(cfg.get_bool("range", "flag") == true);
    CHECK(cfg.get_int("range", "d_min") == 5);
    CHECK(cfg.get_int("range", "d_max") == 50);
    CHECK_NOTHROW(cfg.ensure_all_consumed());

    auto cfg2 = Config::from_string("[a]\nx = 1\nmystery = 2\n");
    CHECK(cfg2.get_int("a", "x") == 1);
    CHECK_THROWS_WITH_AS(cfg2.ensure_all_consumed(), "config line 3: unknown key [a] mystery",
                         std::runtime_error);

    CHECK_THROWS_AS(Config::from_string("[a]\nnonsense line\n"), std::runtime_error);
    CHECK_THROWS_AS(Config::from_string("[a]\nx = 1\nx = 2\n"), std::runtime_error);
    auto cfg3 = Config::from_string("[a]\nx = oops\n");
    CHECK_THROWS_AS(cfg3.get_int("a", "x"), std::runtime_error);
}

TEST_CASE("cache round trip is bit-exact and key-sensitive") {
    CacheStore cache(temp_dir("cache"), false);
    CentralValueKey key{"11a", 23, 1, 30, 1e-6};
    CentralValueRecord rec;
    rec.D = 23;
    rec.chi_id = 1;
    rec.form_id = "11a";
    rec.value = 0.12345678901234567;
    rec.epsilon = 1;
    rec.epsilon_estimate = 1.0 - 3.14e-12;
    rec.terms_used = 7200;
    rec.consistency_gap = 4.5e-9;
    rec.tail_bound = 1e-18;
    rec.conductor = 23.0 * 23.0 * 121.0;
    cache.put_central(key, rec);

    auto back = cache.get_central(key);
    REQUIRE(back.has_value());
    CHECK(back->value == rec.value);  // bit-exact
    CHECK(back->epsilon_estimate == rec.epsilon_estimate);
    CHECK(back->consistency_gap == rec.consistency_gap);
    CHECK(back->terms_used == rec.terms_used);
    CHECK(back->epsilon == rec.epsilon);

    CentralValueKey other = key;
    other.gap_tol = 1e-7;  // tolerance change -> different key
    CHECK_FALSE(cache.get_central(other).has_value());
    CentralValueKey other2 = key;
    other2.chi_id = 2;
    CHECK_FALSE(cache.get_central(other2).has_value());
}

TEST_CASE("experiment outputs are byte-identical across thread counts") {
    ExperimentContext c1, c4, c8;
    c1.threads = 1;
    c4.threads = 4;
    c8.threads = 8;
    auto r1 = gauss_experiment(5, 120, c1);
    auto r4 = gauss_experiment(5, 120, c4);
    auto r8 = gauss_experiment(5, 120, c8);
    REQUIRE(r1.artifacts.size() == 1);
    CHECK(r1.artifacts[0].second == r4.artifacts[0].second);
    CHECK(r1.artifacts[0].second == r8.artifacts[0].second);

    auto j1 = joint_experiment(50, 150, 6, 3, c1);
    auto j8 = joint_experiment(50, 150, 6, 3, c8);
    CHECK(j1.artifacts[0].second == j8.artifacts[0].second);
}

TEST_CASE("runner writes manifest and artifacts, exit code reflects hard checks") {
    std::string out = temp_dir("run_out");
    auto cfg = Config::from_string("[experiment]\nkind = combinatorics\n");
    RunOverrides o;
    o.out_dir = out;
    o.cache_dir = temp_dir("run_cache");
    auto outcome = run_experiment(cfg, o);
    CHECK(outcome.exit_code == 0);
    CHECK(std::filesystem::exists(outcome.manifest_path));
    std::ifstream mf(outcome.manifest_path);
    std::stringstream ss;
    ss << mf.rdbuf();
    CHECK(ss.str().find("\"experiment\": \"combinatorics\"") != std::string::npos);
    CHECK(ss.str().find("\"status\": \"fail\"") == std::string::npos);

    auto bad = Config::from_string("[experiment]\nkind = gauss\n[range]\nd_min = 5\nd_max = 30\ntypo_key = 1\n");
    CHECK_THROWS_WITH_AS(run_experiment(bad, o), "config line 6: unknown key [range] typo_key",
                         std::runtime_error);
}

TEST_CASE("eigenvalue fetch against a local fixture server") {
    // serve a canned q-expansion of the level-11 weight-2 newform
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Get("/ModularForm/GL2/Q/holomorphic/11/2/a/a/download_qexp",
               [&](const httplib::Request&, httplib::Response& res) {
                   ++hits;
                   //  a_1 .. a_20 of 11.2.a.a
                   res.set_content("[1,-2,-1,2,1,2,-2,0,-2,-2,1,-2,4,4,-1,-4,-2,4,0,2]", "application/json");
               });
    server.Get("/ModularForm/GL2/Q/holomorphic/99/2/a/a/download_qexp",
               [&](const httplib::Request&, httplib::Response& res) { res.status = 404; });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread srv([&] { server.listen_after_bind(); });

    CacheStore cache(temp_dir("lmfdb"), false);
    LmfdbOptions opt;
    opt.base_url = "http://127.0.0.1:" + std::to_string(port);

    std::string path = lmfdb_fetch("11.2.a.a", 19, cache, opt);
    FileForm form(path);
    CHECK(form.level() == 11);
    CHECK(form.weight() == 2);
    Ec11aForm builtin;
    for (i64 p : {2, 3, 5, 7, 13, 17, 19})
        CHECK(form.lambda_p(p) == doctest::Approx(builtin.lambda_p(p)).epsilon(1e-14));
    CHECK(hits.load() == 1);

    // repeated fetch is served from the cache with zero network calls
    i64 before = lmfdb_request_count();
    std::string path2 = lmfdb_fetch("11.2.a.a", 19, cache, opt);
    CHECK(path2 == path);
    CHECK(lmfdb_request_count() == before);
    CHECK(hits.load() == 1);

    // bogus label -> not-found error
    CHECK_THROWS_WITH_AS(lmfdb_fetch("99.2.a.a", 19, cache, opt), "lmfdb: label not found: 99.2.a.a",
                         std::runtime_error);
    // malformed label rejected before any request
    CHECK_THROWS_AS(lmfdb_fetch("not-a-label", 19, cache, opt), std::runtime_error);

    // offline + cold cache -> explicit error
    CacheStore cold(temp_dir("lmfdb_cold"), true);
    CHECK_THROWS_WITH_AS(lmfdb_fetch("11.2.a.a", 19, cold, opt),
                         "lmfdb: cache miss for label 11.2.a.a in offline mode", std::runtime_error);

    server.stop();
    srv.join();
}
