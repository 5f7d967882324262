#include <iostream>

#include "CLI11.hpp"
#include "toriclab/runner.hpp"

using namespace toriclab;

namespace {

void print_checks(const ExperimentResult& result) {
    for (const auto& c : result.checks) {
        const char* status = c.ok ? "PASS" : (c.hard ? "FAIL" : "WARN");
        std::cout << "[" << status << "] " << c.name;
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << "\n";
    }
}

BinaryFormClass parse_form_triple(const ClassGroup& group, const std::string& spec) {
    if (spec.find(',') == std::string::npos) {
        int idx = std::stoi(spec);
        return group.elements().at(static_cast<std::size_t>(idx));
    }
    std::stringstream ss(spec);
    std::string tok;
    std::array<i64, 3> v{};
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, tok, ',')) throw std::runtime_error("expected a,b,c");
        v[static_cast<std::size_t>(i)] = std::stoll(tok);
    }
    return reduce_form(v[0], v[1], v[2]);
}

Vec3 parse_vec3(const std::string& spec) {
    std::stringstream ss(spec);
    std::string tok;
    Vec3 v{};
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, tok, ',')) throw std::runtime_error("expected x,y,z");
        v[static_cast<std::size_t>(i)] = std::stoll(tok);
    }
    return v;
}

TernaryForm parse_ternary(const std::string& spec) {
    if (spec == "sum3squares") return sphere_form();
    if (spec.find(',') == std::string::npos) return example_form(spec);
    return TernaryForm::parse(spec);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale laboratory for class group actions, joint toric orbits and twisted central L-values"};
    app.set_version_flag("--version", kToolVersion);

    std::string out_dir, cache_dir = "cache";
    bool offline = false;
    int threads = 0;
    i64 seed = -1;
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--cache", cache_dir, "cache directory");
    app.add_flag("--offline", offline, "never touch the network");
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    app.add_option("--seed", seed, "seed for randomized corpora");
    app.fallthrough(true);
    app.require_subcommand(1);

    auto overrides = [&]() {
        RunOverrides o;
        if (!out_dir.empty()) o.out_dir = out_dir;
        o.cache_dir = cache_dir;
        o.offline = offline;
        if (threads > 0) o.threads = threads;
        if (seed >= 0) o.seed = static_cast<u64>(seed);
        return o;
    };

    // ---- run / moments / combinatorics-check ----
    std::string cfg_path;
    auto* run_cmd = app.add_subcommand("run", "run the experiment named in a config file");
    run_cmd->add_option("config", cfg_path, "config file")->required();
    std::string moments_cfg;
    auto* moments_cmd = app.add_subcommand("moments", "run the fractional-moment experiment from a config");
    moments_cmd->add_option("config", moments_cfg, "config file")->required();
    std::string comb_cfg;
    auto* comb_cmd = app.add_subcommand("combinatorics-check", "run the combinatorial identity checks");
    comb_cmd->add_option("config", comb_cfg, "config file")->required();

    // ---- direct inspection commands ----
    i64 arg_d = 0;
    auto* classgroup_cmd = app.add_subcommand("classgroup", "print the class group of Q(sqrt(-D))");
    classgroup_cmd->add_option("D", arg_d, "positive fundamental |discriminant|")->required();

    std::string reps_form;
    i64 reps_d = 0;
    auto* reps_cmd = app.add_subcommand("reps", "primitive representations of d by a ternary form");
    reps_cmd->add_option("form", reps_form, "builtin name or a11,a22,a33,b12,b13,b23")->required();
    reps_cmd->add_option("d", reps_d, "represented integer")->required();

    std::string gauss_range;
    auto* gauss_cmd = app.add_subcommand("gauss-check", "verify the sphere count formula on a range");
    gauss_cmd->add_option("range", gauss_range, "d range as min:max")->required();

    auto* heegner_cmd = app.add_subcommand("heegner", "print the Heegner points of discriminant -D");
    i64 heegner_d = 0;
    heegner_cmd->add_option("D", heegner_d, "positive fundamental |discriminant|")->required();

    i64 act_d = 0;
    std::string act_class, act_point;
    auto* act_cmd = app.add_subcommand("act", "apply a class to a sphere point (Hurwitz order)");
    act_cmd->add_option("d", act_d, "squarefree admissible d")->required();
    act_cmd->add_option("class", act_class, "class index or form a,b,c")->required();
    act_cmd->add_option("point", act_point, "sphere point x,y,z")->required();

    i64 ideal_p = 0;
    auto* ideal_cmd = app.add_subcommand("ideal-classes", "right ideal class set of B^(p,infty)");
    ideal_cmd->add_option("p", ideal_p, "ramified prime")->required();

    std::string lv_form;
    i64 lv_d = 0;
    int lv_chi = 0;
    auto* lv_cmd = app.add_subcommand("lvalue", "central value L(1/2, pi x chi)");
    lv_cmd->add_option("form", lv_form, "builtin label (11a, tau) or eigenvalue file path")->required();
    lv_cmd->add_option("D", lv_d, "positive fundamental |discriminant|")->required();
    lv_cmd->add_option("chi", lv_chi, "character index")->required();

    std::string fetch_label;
    i64 fetch_bound = 0;
    auto* fetch_cmd = app.add_subcommand("fetch", "fetch an eigenvalue file from the modular forms database");
    fetch_cmd->add_option("label", fetch_label, "newform label N.k.a.x")->required();
    fetch_cmd->add_option("bound", fetch_bound, "prime bound")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd || *moments_cmd || *comb_cmd) {
            std::string path = *run_cmd ? cfg_path : (*moments_cmd ? moments_cfg : comb_cfg);
            RunOverrides o = overrides();
            if (*moments_cmd) o.kind = "fractional_moments";
            if (*comb_cmd) o.kind = "combinatorics";
            RunOutcome outcome = run_experiment(Config::load(path), o);
            print_checks(outcome.result);
            std::cout << "manifest: " << outcome.manifest_path << "\n";
            return outcome.exit_code;
        }
        if (*classgroup_cmd) {
            ClassGroup g{QuadField(arg_d)};
            std::cout << "h = " << g.h() << "\n";
            std::cout << "cycle structure:";
            for (auto [gen, n] : g.cycle_structure())
                std::cout << " " << to_string(g.elements()[static_cast<std::size_t>(gen)]) << "^" << n;
            if (g.cycle_structure().empty()) std::cout << " trivial";
            std::cout << "\nreduced forms:\n";
            for (const auto& f : g.elements()) std::cout << "  " << to_string(f) << "\n";
            return 0;
        }
        if (*reps_cmd) {
            auto set = enumerate_representations(parse_ternary(reps_form), reps_d);
            std::cout << set.points.size() << " primitive representations of " << reps_d << "\n";
            for (const auto& p : set.points)
                std::cout << "  (" << p[0] << ", " << p[1] << ", " << p[2] << ")\n";
            return 0;
        }
        if (*gauss_cmd) {
            auto colon = gauss_range.find(':');
            if (colon == std::string::npos) throw std::runtime_error("range must be min:max");
            i64 lo = std::stoll(gauss_range.substr(0, colon));
            i64 hi = std::stoll(gauss_range.substr(colon + 1));
            for (i64 d : admissible_squarefree_range(lo, hi)) {
                auto r = gauss_check(d);
                std::cout << "d=" << r.d << " count=" << r.count << " h=" << r.h << " ratio=" << r.ratio
                          << " orbits=" << r.orbit_count << "\n";
            }
            return 0;
        }
        if (*heegner_cmd) {
            for (const auto& pt : heegner_points(QuadField(heegner_d)))
                std::cout << to_string(pt.source_form) << " -> " << pt.z.real() << " + " << pt.z.imag()
                          << " i\n";
            return 0;
        }
        if (*act_cmd) {
            i64 D = (act_d % 4 == 3) ? act_d : 4 * act_d;
            QuadField F(D);
            ClassGroup G(F);
            MaximalOrder O = MaximalOrder::create(2);
            auto emb = Embedding::find(O, F);
            if (!emb) throw std::runtime_error("no embedding for this d");
            Vec3 out = class_action(*emb, parse_form_triple(G, act_class), parse_vec3(act_point));
            std::cout << "(" << out[0] << ", " << out[1] << ", " << out[2] << ")\n";
            return 0;
        }
        if (*ideal_cmd) {
            auto cs = ideal_classes(MaximalOrder::create(ideal_p));
            std::cout << "class number " << cs.representatives.size() << ", total mass "
                      << cs.total_mass.num() << "/" << cs.total_mass.den() << "\n";
            for (std::size_t i = 0; i < cs.representatives.size(); ++i)
                std::cout << "  class " << i << ": |units| = " << cs.unit_counts[i] << ", mass weight "
                          << cs.masses[i].num() << "/" << cs.masses[i].den() << "\n";
            return 0;
        }
        if (*lv_cmd) {
            const HeckeForm* form;
            std::unique_ptr<FileForm> file_form;
            if (lv_form == "11a" || lv_form == "tau") {
                form = &builtin_form(lv_form);
            } else {
                file_form = std::make_unique<FileForm>(lv_form);
                form = file_form.get();
            }
            QuadField F(lv_d);
            ClassGroup G(F);
            i64 bound = static_cast<i64>(30.0 * std::sqrt(rankin_selberg_conductor(*form, F))) + 2;
            SplittingTable st(G, bound);
            auto chars = characters(G);
            auto rec = central_value(*form, G, chars.at(static_cast<std::size_t>(lv_chi)), st);
            std::cout << "L(1/2, " << form->label() << " x chi_" << lv_chi << ") = " << rec.value
                      << "\nepsilon = " << rec.epsilon << " (estimate " << rec.epsilon_estimate
                      << ")\nterms_used = " << rec.terms_used
                      << "\nconsistency_gap = " << rec.consistency_gap
                      << "\ntail_bound = " << rec.tail_bound << "\n";
            return 0;
        }
        if (*fetch_cmd) {
            CacheStore cache(cache_dir, offline);
            std::string path = lmfdb_fetch(fetch_label, fetch_bound, cache);
            std::cout << "eigenvalues cached at " << path << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
