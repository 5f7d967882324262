#ifndef TORICLAB_EXPERIMENTS_HPP
#define TORICLAB_EXPERIMENTS_HPP

#include <map>

#include "toriclab/harness.hpp"
#include "toriclab/heegner.hpp"
#include "toriclab/moments.hpp"
#include "toriclab/periods.hpp"
#include "toriclab/venkov.hpp"

namespace toriclab {

struct ExperimentContext {
    int threads = 0;  // 0 = hardware
    u64 seed = 11712;
    double smoothing_X = 2e4;
    i64 term_cap_factor = 30;
    const CacheStore* cache = nullptr;
};

struct CheckLine {
    std::string name;
    bool hard = true;
    bool ok = false;
    std::string detail;
};

struct ExperimentResult {
    std::string kind;
    std::vector<CheckLine> checks;
    std::map<std::string, std::string> stats;
    std::vector<std::pair<std::string, std::string>> artifacts;  // filename -> contents

    bool hard_ok() const;
    void check(const std::string& name, bool ok, const std::string& detail = "", bool hard = true);
};

// squarefree admissible d in (3, d_max], optionally log-spaced subsample
std::vector<i64> admissible_squarefree_range(i64 d_min, i64 d_max);
std::vector<i64> log_spaced_subsample(const std::vector<i64>& values, std::size_t count);

// ---- arithmetic side -------------------------------------------------------

ExperimentResult gauss_experiment(i64 d_min, i64 d_max, const ExperimentContext& ctx);

// pair_id 1: disc 11 pair, pair_id 2: disc 19 pair
ExperimentResult genus_share_experiment(int pair_id, i64 d_min, i64 d_max, const ExperimentContext& ctx);

ExperimentResult action_experiment(i64 d_max, const ExperimentContext& ctx);

ExperimentResult supersingular_experiment(i64 p, i64 d_max, const ExperimentContext& ctx);

// ---- combinatorial / orthogonality side ------------------------------------

ExperimentResult combinatorics_experiment(const ExperimentContext& ctx);

// small-norm ideal orthogonality for all fundamental D <= d_max, plus the
// brute-force character-sum identities on the named discriminants (alpha, beta <= 3)
ExperimentResult orthogonality_experiment(i64 d_max, std::vector<i64> brute_ds,
                                          const ExperimentContext& ctx);

ExperimentResult inequality_experiment(const ExperimentContext& ctx);

ExperimentResult plancherel_experiment(std::vector<i64> ds, const ExperimentContext& ctx);

// ---- analytic side ----------------------------------------------------------

ExperimentResult lvalue_experiment(const std::string& form_label, std::vector<i64> Ds,
                                   const ExperimentContext& ctx);

ExperimentResult prime_sum_experiment(std::vector<i64> Ds, const ExperimentContext& ctx);

ExperimentResult chandee_experiment(std::vector<i64> Ds, std::vector<double> xs,
                                    const ExperimentContext& ctx);

struct FractionalMomentParams {
    i64 d_min = 100;
    i64 d_max = 3000;
    std::size_t sample = 36;
    i64 alpha = 1, beta = 1;
    std::string form1 = "11a", form2 = "tau";
};
ExperimentResult fractional_moment_experiment(const FractionalMomentParams& params,
                                              const ExperimentContext& ctx);

ExperimentResult waldspurger_experiment(std::vector<i64> ds, int l_max, const ExperimentContext& ctx);

ExperimentResult joint_experiment(i64 d_min, i64 d_max, std::size_t sample, int l_max,
                                  const ExperimentContext& ctx);

// helper shared by the analytic experiments: cached central value
CentralValueRecord cached_central_value(const HeckeForm& form, const ClassGroup& group,
                                        const ClassCharacter& chi, const SplittingTable& st,
                                        const ExperimentContext& ctx, const LValueOptions& opt);

// pre-compute (and disk-cache) built-in eigenvalue streams up to the bounds
// the coming experiment will need
void warm_builtin_eigenvalues(const ExperimentContext& ctx, i64 bound_11a, i64 bound_tau);

}  // namespace toriclab

#endif
