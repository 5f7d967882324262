#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "toriclab/experiments.hpp"

namespace toriclab {

bool ExperimentResult::hard_ok() const {
    for (const auto& c : checks)
        if (c.hard && !c.ok) return false;
    return true;
}

void ExperimentResult::check(const std::string& name, bool ok, const std::string& detail, bool hard) {
    checks.push_back({name, hard, ok, detail});
}

std::vector<i64> admissible_squarefree_range(i64 d_min, i64 d_max) {
    std::vector<i64> out;
    for (i64 d = std::max<i64>(d_min, 4); d <= d_max; ++d)
        if (is_squarefree(d) && admissible_sum_of_three_squares(d)) out.push_back(d);
    return out;
}

std::vector<i64> log_spaced_subsample(const std::vector<i64>& values, std::size_t count) {
    if (values.size() <= count || count < 2) return values;
    std::vector<i64> out;
    double lo = std::log(double(values.front()));
    double hi = std::log(double(values.back()));
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < count; ++i) {
        double target = std::exp(lo + (hi - lo) * double(i) / double(count - 1));
        while (cursor + 1 < values.size() && double(values[cursor]) < target) ++cursor;
        if (out.empty() || out.back() != values[cursor]) out.push_back(values[cursor]);
    }
    return out;
}

namespace {
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope: need >= 2 points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(x.size());
    my /= double(x.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}
}  // namespace

ExperimentResult gauss_experiment(i64 d_min, i64 d_max, const ExperimentContext& ctx) {
    ExperimentResult res;
    res.kind = "gauss";
    auto ds = admissible_squarefree_range(d_min, d_max);
    std::vector<GaussReport> reports(ds.size());
    std::vector<std::string> errors(ds.size());
    parallel_for(static_cast<i64>(ds.size()), ctx.threads, [&](i64 i) {
        try {
            reports[static_cast<std::size_t>(i)] = gauss_check(ds[static_cast<std::size_t>(i)]);
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    });
    CsvWriter csv({"d", "count", "h", "ratio", "orbit_count"});
    bool all_ok = true;
    std::string first_error;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (!errors[i].empty()) {
            all_ok = false;
            if (first_error.empty()) first_error = "d=" + std::to_string(ds[i]) + ": " + errors[i];
            continue;
        }
        const auto& r = reports[i];
        csv.add_row({CsvWriter::num(r.d), CsvWriter::num(r.count), CsvWriter::num(r.h),
                     CsvWriter::num(r.ratio), CsvWriter::num(r.orbit_count)});
        i64 expect = (r.d % 8 == 3) ? 24 : 12;
        if (r.ratio != expect || r.count != expect * r.h) {
            all_ok = false;
            if (first_error.empty()) first_error = "d=" + std::to_string(r.d);
        }
    }
    res.check("gauss formula |R_d| = 24h or 12h exactly on " + std::to_string(ds.size()) + " values",
              all_ok, first_error);
    res.stats["d_count"] = std::to_string(ds.size());
    res.artifacts.emplace_back("gauss.csv", csv.text());
    return res;
}

ExperimentResult genus_share_experiment(int pair_id, i64 d_min, i64 d_max, const ExperimentContext& ctx) {
    ExperimentResult res;
    res.kind = "genus_shares";
    TernaryForm f1 = example_form(pair_id == 1 ? "Q1_1" : "Q2_1");
    TernaryForm f2 = example_form(pair_id == 1 ? "Q1_2" : "Q2_2");
    GenusWeights gw = genus_weights({f1, f2});
    const double m1 = gw.weights[0].to_double();

    auto ds = admissible_squarefree_range(d_min, d_max);
    std::vector<std::array<i64, 2>> counts(ds.size());
    parallel_for(static_cast<i64>(ds.size()), ctx.threads, [&](i64 i) {
        i64 d = ds[static_cast<std::size_t>(i)];
        counts[static_cast<std::size_t>(i)] = {representation_count(f1, d), representation_count(f2, d)};
    });

    CsvWriter csv({"d", "r1", "r2", "cumulative_share1", "deviation"});
    // share of the first form among automorphism-weighted representation
    // counts (equivalently Gamma-orbits); raw point counts equalize across the
    // genus instead, so the weights m_i govern the weighted shares
    const double a1 = double(gw.aut_orders[0]), a2 = double(gw.aut_orders[1]);
    i64 tot1 = 0, tot2 = 0;
    std::vector<double> xs, devs;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        tot1 += counts[i][0];
        tot2 += counts[i][1];
        if (tot1 + tot2 == 0) continue;
        double w1 = double(tot1) / a1, w2 = double(tot2) / a2;
        double share = w1 / (w1 + w2);
        double dev = std::abs(share - m1);
        csv.add_row({CsvWriter::num(ds[i]), CsvWriter::num(counts[i][0]), CsvWriter::num(counts[i][1]),
                     CsvWriter::num(share), CsvWriter::num(dev)});
        if (i >= 10) {
            xs.push_back(double(ds[i]));
            devs.push_back(dev);
        }
    }
    double final_share = (double(tot1) / a1) / (double(tot1) / a1 + double(tot2) / a2);
    double slope = least_squares_slope(xs, devs);
    res.check("weights are the printed exact rationals",
              (pair_id == 1 && gw.weights[0] == Rational(3, 5) && gw.weights[1] == Rational(2, 5)) ||
                  (pair_id == 2 && gw.weights[0] == Rational(1, 3) && gw.weights[1] == Rational(2, 3)));
    res.check("empirical share within 0.05 of the weight", std::abs(final_share - m1) <= 0.05,
              "share=" + CsvWriter::num(final_share) + " target=" + CsvWriter::num(m1));
    res.check("cumulative deviation has negative slope", slope < 0, "slope=" + CsvWriter::num(slope));
    res.stats["final_share"] = CsvWriter::num(final_share);
    res.stats["target"] = CsvWriter::num(m1);
    res.stats["deviation_slope"] = CsvWriter::num(slope);
    res.artifacts.emplace_back("genus_shares_" + std::to_string(pair_id) + ".csv", csv.text());
    return res;
}

ExperimentResult action_experiment(i64 d_max, const ExperimentContext& ctx) {
    ExperimentResult res;
    res.kind = "action";
    MaximalOrder O = MaximalOrder::create(2);
    auto ds = admissible_squarefree_range(4, d_max);
    std::vector<std::string> failures(ds.size());
    parallel_for(static_cast<i64>(ds.size()), ctx.threads, [&](i64 idx) {
        i64 d = ds[static_cast<std::size_t>(idx)];
        try {
            i64 D = (d % 4 == 3) ? d : 4 * d;
            QuadField F(D);
            ClassGroup G(F);
            auto emb = Embedding::find(O, F);
            if (!emb) throw std::runtime_error("no embedding");
            auto reps = enumerate_representations(sphere_form(), d);
            std::set<Vec3> orbits;
            for (const auto& x : reps.points) orbits.insert(gamma_canonical(O, x));
            std::map<Vec3, std::vector<Vec3>> act;
            for (const auto& x : orbits) {
                act[x].resize(static_cast<std::size_t>(G.h()));
                for (int t = 0; t < G.h(); ++t)
                    act[x][static_cast<std::size_t>(t)] =
                        gamma_canonical(O, class_action(*emb, G.elements()[static_cast<std::size_t>(t)], x));
            }
            for (const auto& x : orbits) {
                if (act[x][static_cast<std::size_t>(G.identity_index())] != x)
                    throw std::runtime_error("identity law failed");
                for (int t = 0; t < G.h(); ++t)
                    if (t != G.identity_index() && act[x][static_cast<std::size_t>(t)] == x)
                        throw std::runtime_error("action is not free");
            }
            for (int t1 = 0; t1 < G.h(); ++t1)
                for (int t2 = 0; t2 < G.h(); ++t2) {
                    int t12 = G.compose_idx(t1, t2);
                    for (const auto& x : orbits)
                        if (act.at(act.at(x)[static_cast<std::size_t>(t2)])[static_cast<std::size_t>(t1)] !=
                            act.at(x)[static_cast<std::size_t>(t12)])
                            throw std::runtime_error("group law failed");
                }
            i64 expected_orbits = ((d % 8 == 3) ? 2 : 1) * G.h();
            if (static_cast<i64>(orbits.size()) != expected_orbits)
                throw std::runtime_error("orbit count mismatch");
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(idx)] = "d=" + std::to_string(d) + ": " + e.what();
        }
    });
    std::string first;
    i64 bad = 0;
    for (const auto& f : failures)
        if (!f.empty()) {
            ++bad;
            if (first.empty()) first = f;
        }
    res.check("class action free with 1 or 2 orbits, group law exact, " + std::to_string(ds.size()) +
                  " values of d",
              bad == 0, first);
    res.stats["d_count"] = std::to_string(ds.size());
    return res;
}

ExperimentResult supersingular_experiment(i64 p, i64 d_max, const ExperimentContext& ctx) {
    ExperimentResult res;
    res.kind = "supersingular";
    MaximalOrder O = MaximalOrder::create(p);
    IdealClassSet cs = ideal_classes(O);
    const int classes = static_cast<int>(cs.representatives.size());
    res.check("Eichler mass reached: sum 1/|O_l^x| = (p-1)/24", cs.total_mass == Rational(p - 1, 24),
              "mass=" + std::to_string(cs.total_mass.num()) + "/" + std::to_string(cs.total_mass.den()));
    res.stats["class_number"] = std::to_string(classes);
    {
        std::ostringstream os;
        for (std::size_t i = 0; i < cs.unit_counts.size(); ++i) os << (i ? "," : "") << cs.unit_counts[i];
        res.stats["unit_counts"] = os.str();
    }

    // the reduction map over fundamental D with p inert
    std::vector<i64> fields;
    for (i64 D = 5; D <= d_max; ++D) {
        if (!QuadField::is_fundamental(D)) continue;
        if (kronecker(-D, p) != -1) continue;
        fields.push_back(D);
    }
    struct Row {
        i64 D = 0;
        i64 h = 0;
        std::vector<i64> hits;
        bool embedded = false;
    };
    std::vector<Row> rows(fields.size());
    parallel_for(static_cast<i64>(fields.size()), ctx.threads, [&](i64 i) {
        Row& row = rows[static_cast<std::size_t>(i)];
        row.D = fields[static_cast<std::size_t>(i)];
        row.hits.assign(static_cast<std::size_t>(classes), 0);
        QuadField F(row.D);
        auto emb = Embedding::find(O, F);
        if (!emb) return;
        row.embedded = true;
        ClassGroup G(F);
        row.h = G.h();
        for (int t = 0; t < G.h(); ++t) {
            int j = class_set_map(cs, *emb, G.elements()[static_cast<std::size_t>(t)]);
            ++row.hits[static_cast<std::size_t>(j)];
        }
    });

    CsvWriter csv({"D", "h", "class_counts"});
    i64 first_surjective = 0, last_failure = 0;
    i64 embedded = 0, surjective_tail = 0;
    for (const auto& row : rows) {
        if (!row.embedded) continue;
        ++embedded;
        std::ostringstream os;
        for (std::size_t j = 0; j < row.hits.size(); ++j) os << (j ? ";" : "") << row.hits[j];
        csv.add_row({CsvWriter::num(row.D), CsvWriter::num(row.h), os.str()});
        bool surj = std::all_of(row.hits.begin(), row.hits.end(), [](i64 v) { return v > 0; });
        if (first_surjective == 0 && surj) first_surjective = row.D;
        if (!surj) last_failure = row.D;
    }
    for (const auto& row : rows)
        if (row.embedded && row.D > last_failure) ++surjective_tail;
    // finite shadow of the large-discriminant surjectivity: failures are
    // confined to small discriminants (at most 3/4 of the range) and the map
    // is surjective on the whole remaining tail
    res.check("class-set map surjective beyond D = " + std::to_string(last_failure) +
                  " (failures confined to the lower 3/4 of the range)",
              first_surjective > 0 && 4 * last_failure <= 3 * d_max && surjective_tail > 0,
              "first=" + std::to_string(first_surjective) + " last_failure=" +
                  std::to_string(last_failure) + " tail=" + std::to_string(surjective_tail));
    res.stats["last_nonsurjective_D"] = std::to_string(last_failure);

    // distribution over the largest 50 embedded discriminants vs the masses
    std::vector<const Row*> tail;
    for (const auto& row : rows)
        if (row.embedded) tail.push_back(&row);
    if (tail.size() > 50) tail.erase(tail.begin(), tail.end() - 50);
    std::vector<double> pooled(static_cast<std::size_t>(classes), 0);
    double total = 0;
    for (const Row* row : tail)
        for (std::size_t j = 0; j < pooled.size(); ++j) {
            pooled[j] += double(row->hits[j]);
            total += double(row->hits[j]);
        }
    double worst = 0;
    for (std::size_t j = 0; j < pooled.size(); ++j)
        worst = std::max(worst, std::abs(pooled[j] / total - cs.masses[j].to_double()));
    res.check("empirical class distribution within 0.1 of the mass weights on the largest 50",
              worst <= 0.1, "max deviation " + CsvWriter::num(worst));
    res.stats["embedded_fields"] = std::to_string(embedded);
    res.stats["distribution_deviation"] = CsvWriter::num(worst);
    res.artifacts.emplace_back("supersingular_p" + std::to_string(p) + ".csv", csv.text());
    return res;
}

}  // namespace toriclab
