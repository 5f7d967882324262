#include "toriclab/runner.hpp"

#include <chrono>
#include <filesystem>
#include <sstream>

#include "json.hpp"

namespace toriclab {

namespace {
std::vector<i64> parse_int_list(const std::string& text) {
    std::vector<i64> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoll(tok));
    }
    if (out.empty()) throw std::runtime_error("empty integer list: " + text);
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw std::runtime_error("empty number list: " + text);
    return out;
}
}  // namespace

RunOutcome run_experiment(const Config& cfg, const RunOverrides& overrides) {
    const auto t0 = std::chrono::steady_clock::now();
    // config values are read unconditionally so that command-line overrides
    // still count as consuming the shadowed keys
    std::string cfg_kind = cfg.get_or("experiment", "kind", "");
    std::string kind = overrides.kind ? *overrides.kind : cfg_kind;
    if (kind.empty()) throw std::runtime_error("config: missing required key [experiment] kind");

    ExperimentContext ctx;
    int cfg_threads = static_cast<int>(cfg.get_int("experiment", "threads", 0));
    ctx.threads = overrides.threads ? *overrides.threads : cfg_threads;
    u64 cfg_seed = static_cast<u64>(cfg.get_int("experiment", "seed", 11712));
    ctx.seed = overrides.seed ? *overrides.seed : cfg_seed;
    ctx.smoothing_X = cfg.get_double("lvalues", "smoothing_x", 2e4);
    ctx.term_cap_factor = cfg.get_int("lvalues", "term_cap_factor", 30);

    std::string cfg_out = cfg.get_or("output", "dir", "out");
    std::string out_dir = overrides.out_dir ? *overrides.out_dir : cfg_out;
    std::string cfg_cache = cfg.get_or("cache", "dir", "cache");
    std::string cache_dir = overrides.cache_dir ? *overrides.cache_dir : cfg_cache;
    bool cfg_offline = cfg.get_bool("cache", "offline", false);
    bool offline = overrides.offline ? *overrides.offline : cfg_offline;
    CacheStore cache(cache_dir, offline);
    ctx.cache = &cache;

    ExperimentResult result;
    if (kind == "gauss") {
        result = gauss_experiment(cfg.get_int("range", "d_min", 4), cfg.get_int("range", "d_max", 200), ctx);
    } else if (kind == "genus_shares") {
        result = genus_share_experiment(static_cast<int>(cfg.get_int("range", "pair", 1)),
                                        cfg.get_int("range", "d_min", 500),
                                        cfg.get_int("range", "d_max", 3000), ctx);
    } else if (kind == "action") {
        result = action_experiment(cfg.get_int("range", "d_max", 500), ctx);
    } else if (kind == "supersingular") {
        result = supersingular_experiment(cfg.get_int("range", "p", 11),
                                          cfg.get_int("range", "d_max", 3000), ctx);
    } else if (kind == "combinatorics") {
        result = combinatorics_experiment(ctx);
    } else if (kind == "orthogonality") {
        std::vector<i64> brute = cfg.has("range", "brute_d_list")
                                     ? parse_int_list(cfg.get("range", "brute_d_list"))
                                     : std::vector<i64>{23, 47, 71, 84};
        result = orthogonality_experiment(cfg.get_int("range", "d_max", 600), brute, ctx);
    } else if (kind == "inequalities") {
        result = inequality_experiment(ctx);
    } else if (kind == "plancherel") {
        std::vector<i64> ds = cfg.has("range", "d_list") ? parse_int_list(cfg.get("range", "d_list"))
                                                         : std::vector<i64>{11, 19, 21, 35, 59};
        result = plancherel_experiment(ds, ctx);
    } else if (kind == "lvalues") {
        std::vector<i64> Ds = cfg.has("range", "d_list") ? parse_int_list(cfg.get("range", "d_list"))
                                                         : std::vector<i64>{23, 47, 71, 103};
        result = lvalue_experiment(cfg.get_or("forms", "form", "11a"), Ds, ctx);
    } else if (kind == "prime_sums") {
        std::vector<i64> Ds = cfg.has("range", "d_list") ? parse_int_list(cfg.get("range", "d_list"))
                                                         : std::vector<i64>{23, 47, 71, 103};
        result = prime_sum_experiment(Ds, ctx);
    } else if (kind == "chandee") {
        std::vector<i64> Ds = cfg.has("range", "d_list") ? parse_int_list(cfg.get("range", "d_list"))
                                                         : std::vector<i64>{23, 47, 71, 103};
        std::vector<double> xs = cfg.has("range", "x_list") ? parse_double_list(cfg.get("range", "x_list"))
                                                            : std::vector<double>{10, 100, 1000};
        result = chandee_experiment(Ds, xs, ctx);
    } else if (kind == "fractional_moments") {
        FractionalMomentParams params;
        params.d_min = cfg.get_int("range", "d_min", 100);
        params.d_max = cfg.get_int("range", "d_max", 3000);
        params.sample = static_cast<std::size_t>(cfg.get_int("range", "sample", 36));
        params.alpha = cfg.get_int("forms", "alpha", 1);
        params.beta = cfg.get_int("forms", "beta", 1);
        params.form1 = cfg.get_or("forms", "form1", "11a");
        params.form2 = cfg.get_or("forms", "form2", "tau");
        result = fractional_moment_experiment(params, ctx);
    } else if (kind == "waldspurger") {
        std::vector<i64> ds = cfg.has("range", "d_list") ? parse_int_list(cfg.get("range", "d_list"))
                                                         : std::vector<i64>{59, 67, 91, 115};
        result = waldspurger_experiment(ds, static_cast<int>(cfg.get_int("range", "l_max", 4)), ctx);
    } else if (kind == "joint") {
        result = joint_experiment(cfg.get_int("range", "d_min", 100), cfg.get_int("range", "d_max", 3000),
                                  static_cast<std::size_t>(cfg.get_int("range", "sample", 40)),
                                  static_cast<int>(cfg.get_int("range", "l_max", 6)), ctx);
    } else {
        throw std::runtime_error("unknown experiment kind: " + kind);
    }
    cfg.ensure_all_consumed();

    std::filesystem::create_directories(out_dir);
    RunOutcome outcome;
    outcome.result = result;

    for (const auto& [name, text] : result.artifacts) {
        std::string path = out_dir + "/" + name;
        write_file_atomic(path, text);
        outcome.artifact_paths.push_back(path);
    }

    nlohmann::ordered_json manifest;
    manifest["tool"] = kToolVersion;
    manifest["experiment"] = kind;
    manifest["seed"] = ctx.seed;
    manifest["threads"] = ctx.threads;
    manifest["smoothing_x"] = ctx.smoothing_X;
    manifest["term_cap_factor"] = ctx.term_cap_factor;
    manifest["offline"] = offline;
    nlohmann::ordered_json cfg_echo = nlohmann::ordered_json::object();
    for (const auto& [section, key, value] : cfg.entries()) cfg_echo[section + "." + key] = value;
    manifest["config"] = cfg_echo;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    bool hard_ok = true;
    for (const auto& c : result.checks) {
        checks.push_back({{"name", c.name},
                          {"kind", c.hard ? "hard" : "soft"},
                          {"status", c.ok ? "pass" : (c.hard ? "fail" : "warn")},
                          {"detail", c.detail}});
        if (c.hard && !c.ok) hard_ok = false;
    }
    manifest["checks"] = checks;
    nlohmann::ordered_json stats = nlohmann::ordered_json::object();
    for (const auto& [k, v] : result.stats) stats[k] = v;
    manifest["stats"] = stats;
    manifest["artifacts"] = outcome.artifact_paths;
    manifest["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    outcome.manifest_path = out_dir + "/manifest.json";
    write_file_atomic(outcome.manifest_path, manifest.dump(2) + "\n");
    outcome.exit_code = hard_ok ? 0 : 1;
    return outcome;
}

}  // namespace toriclab
