// Acceptance suite: one PASS/FAIL line per criterion, diagnostics indented
// beneath. Exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rankci/app/commands.hpp"
#include "rankci/app/input.hpp"
#include "rankci/criteria.hpp"
#include "rankci/dominance.hpp"
#include "rankci/inference.hpp"
#include "rankci/numerics.hpp"
#include "rankci/simulation.hpp"

using namespace rankci;
namespace sim = rankci::sim;

namespace {

// Tolerances and budgets.
constexpr double kPointRankBudgetSeconds = 1.0;
constexpr double kCoverageBudgetSeconds = 120.0;
constexpr double kTruthDecimals = 5e-5;  // 4 decimal places
constexpr double kCpdpCoverageSlack = 0.02;
constexpr double kCpdpSmallMFloor = 0.93;
constexpr double kMeanSigmaBound = 3.0;
constexpr double kVarianceRelTol = 0.05;
constexpr double kFormulaAgreement = 1e-12;
constexpr double kBinomialAgreement = 1e-12;
constexpr std::size_t kCoverageReps = 1000;
constexpr std::size_t kTheoremReps = 10000;
constexpr int kEquivalenceTrials = 1000;
constexpr std::uint64_t kSeed = 20141123;

int failures = 0;

void verdict(int id, bool pass, const std::string& what) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
    if (!pass) ++failures;
}

void note(const std::string& text) { std::printf("    %s\n", text.c_str()); }

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

RankMatrix nfl() { return app::parse_input(RANKCI_NFL_DATA, Orientation::LowerIsBetter); }

// Published columns of the NFL ranking table, listed in the entity order of
// the ballot table. The ranking table prints the Andy Dalton and Joe Flacco
// rows under each other's labels; the *_as_printed columns keep that, the others
// restore the ballot-table pairing (see criterion 1 evidence).
struct Published {
    std::vector<int> cpdp_as_printed{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 16, 20, 18, 17, 15, 19, 21, 22, 23, 24};
    std::vector<int> cpdp{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 16, 15, 18, 17, 20, 19, 21, 22, 23, 24};
    std::vector<int> ctpdp{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 13, 15, 16, 19, 16, 16, 20, 21, 22, 23, 24};
    std::vector<int> borda_as_printed{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 20, 17, 16, 19, 18, 21, 22, 23, 24};
    std::vector<int> borda{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 19, 17, 16, 20, 18, 21, 22, 23, 24};
    std::vector<int> barcw_as_printed{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 19, 17, 18, 16, 20, 21, 22, 23, 24};
    std::vector<int> barcw{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24};
};

std::vector<int> point_ranks(const app::ResultsDocument& doc, const std::string& criterion) {
    std::vector<int> out;
    for (const auto& r : doc.records) {
        if (r.criterion == criterion) out.push_back(r.point_rank);
    }
    return out;
}

void report_mismatches(const RankMatrix& m, const std::vector<int>& got, const std::vector<int>& want) {
    for (std::size_t i = 0; i < got.size(); ++i) {
        if (got[i] != want[i]) note(m.label(i) + ": computed " + std::to_string(got[i]) + ", table " + std::to_string(want[i]));
    }
}

long long sse_total(const RankMatrix& m, const std::vector<int>& ranks) { return app::cmd_sse(m, "x", ranks).total; }

void criterion_1() {
    const Published pub;
    const auto m = nfl();
    const auto start = std::chrono::steady_clock::now();
    const auto doc = app::cmd_rank(m);
    const double elapsed = seconds_since(start);
    const auto cpdp = point_ranks(doc, "cpdp");
    const auto ctpdp = point_ranks(doc, "ctpdp");

    // The row pairing is settled by the published SSE table: only the
    // restored pairing reproduces the Borda (2634) and BARCW (2590) totals.
    const long long borda_fixed = sse_total(m, pub.borda);
    const long long barcw_fixed = sse_total(m, pub.barcw);
    const long long borda_printed = sse_total(m, pub.borda_as_printed);
    const long long barcw_printed = sse_total(m, pub.barcw_as_printed);
    const bool pairing_confirmed = borda_fixed == 2634 && barcw_fixed == 2590;

    const bool ctpdp_ok = ctpdp == pub.ctpdp;
    const bool cpdp_ok = cpdp == pub.cpdp;
    const bool tie_ok = ctpdp[15] == 16 && ctpdp[17] == 16 && ctpdp[18] == 16;
    verdict(1, ctpdp_ok && cpdp_ok && pairing_confirmed && tie_ok && elapsed < kPointRankBudgetSeconds,
            "NFL point ranks (cpdp " + std::string(cpdp_ok ? "match" : "differ") + ", ctpdp " +
                (ctpdp_ok ? "match" : "differ") + ", three-way tie at 16 " + (tie_ok ? "present" : "absent") + ", " +
                fmt(elapsed * 1000.0, 1) + " ms)");
    note("ranking table prints the Dalton/Flacco rows under swapped labels; checked against the ballot-table pairing");
    note("evidence: SSE with restored pairing borda=" + std::to_string(borda_fixed) + " barcw=" +
         std::to_string(barcw_fixed) + "; as printed borda=" + std::to_string(borda_printed) +
         " barcw=" + std::to_string(barcw_printed) + "; published 2634 / 2590");
    const long long mismatched = std::inner_product(cpdp.begin(), cpdp.end(), pub.cpdp_as_printed.begin(), 0LL,
                                                    std::plus<>(), [](int a, int b) { return a != b ? 1LL : 0LL; });
    note("cpdp against the labels as printed: " + std::to_string(mismatched) + " rows differ");
    report_mismatches(m, cpdp, pub.cpdp);
    report_mismatches(m, ctpdp, pub.ctpdp);
}

void criterion_2() {
    const auto m = nfl();
    const auto cpdp = app::cmd_sse(m, "cpdp", app::method_display_ranks(m, Criterion::Cpdp));
    const auto ctpdp = app::cmd_sse(m, "ctpdp", app::method_display_ranks(m, Criterion::Ctpdp));
    const bool ok = cpdp.total == 2588 && ctpdp.total == 2622;
    verdict(2, ok, "NFL SSE cpdp=" + std::to_string(cpdp.total) + " (published 2588), ctpdp=" +
                       std::to_string(ctpdp.total) + " (published 2622)");
    for (const auto* r : {&cpdp, &ctpdp}) {
        std::string line = r->method + " per ballot:";
        for (std::size_t c = 0; c < r->per_ballot.size(); ++c) {
            line += " " + m.rankers()[c] + "=" + std::to_string(r->per_ballot[c]);
        }
        note(line);
    }
    if (ctpdp.total != 2622) {
        // Diagnostic only: breaking the tied display ranks by entity order.
        auto ranks = app::method_display_ranks(m, Criterion::Ctpdp);
        std::vector<int> strict(ranks.size());
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            strict[i] = 1;
            for (std::size_t j = 0; j < ranks.size(); ++j) {
                if (ranks[j] < ranks[i] || (ranks[j] == ranks[i] && j < i)) ++strict[i];
            }
        }
        note("ctpdp with ties broken by table order (not the documented rule): " + std::to_string(sse_total(m, strict)));
    }
}

void criterion_3() {
    const auto m = nfl();
    const auto sim_doc = app::cmd_ci(m, {.level = 0.95, .mode = IntervalMode::Simultaneous});
    const auto ind_doc = app::cmd_ci(m, {.level = 0.95, .mode = IntervalMode::Individual});
    struct Expect {
        std::string who;
        int lo, hi;
        bool simultaneous;
    };
    const std::vector<Expect> expected{{"Andrew Luck", 1, 2, true},    {"Aaron Rodgers", 1, 3, true},
                                       {"Peyton Manning", 2, 6, true}, {"Tom Brady", 3, 8, true},
                                       {"Tony Romo", 4, 8, true},      {"Andrew Luck", 1, 1, false},
                                       {"Aaron Rodgers", 2, 3, false}, {"Peyton Manning", 2, 3, false}};
    bool ok = true;
    std::string summary;
    for (const auto& e : expected) {
        const auto& doc = e.simultaneous ? sim_doc : ind_doc;
        for (const auto& r : doc.records) {
            if (r.entity != e.who) continue;
            const bool hit = *r.ci_lower == e.lo && *r.ci_upper == e.hi;
            ok = ok && hit;
            note(std::string(e.simultaneous ? "simultaneous " : "individual   ") + e.who + ": [" +
                 std::to_string(*r.ci_lower) + "," + std::to_string(*r.ci_upper) + "] expected [" +
                 std::to_string(e.lo) + "," + std::to_string(e.hi) + "]" + (hit ? "" : "  <-- mismatch"));
            if (!hit) summary += " " + e.who + (e.simultaneous ? " (simultaneous)" : " (individual)");
        }
    }
    verdict(3, ok, "NFL 95% rank intervals" + (ok ? std::string(" all match") : " mismatch:" + summary));
}

void criterion_4() {
    const auto t = sim::true_scores(sim::benchmark_case(3, 10));
    const std::vector<double> cpdp{2.0547, 1.9882, 2.8794, 3.9209, 5.0120, 6.1067, 7.1850, 8.2022, 9.0606, 8.5903};
    const std::vector<int> cpdp_ranks{2, 1, 3, 4, 5, 6, 7, 8, 10, 9};
    const std::vector<int> ctpdp_ranks{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    double worst = 0.0;
    for (std::size_t i = 0; i < 10; ++i) worst = std::max(worst, std::abs(t.cpdp[i] - cpdp[i]));
    const bool ok = worst <= kTruthDecimals && t.cpdp_ranks == cpdp_ranks && t.ctpdp_ranks == ctpdp_ranks;
    verdict(4, ok, "case 3 true scores (max |error| " + fmt(worst, 6) + ", cpdp ranks " +
                       (t.cpdp_ranks == cpdp_ranks ? "match" : "differ") + ", ctpdp ranks " +
                       (t.ctpdp_ranks == ctpdp_ranks ? "match" : "differ") + ")");
}

sim::CoverageReport timed_coverage(int case_id, std::size_t m, Criterion criterion, double& elapsed) {
    const auto start = std::chrono::steady_clock::now();
    auto r = sim::coverage_experiment(sim::benchmark_case(case_id, m, kSeed),
                                      {.reps = kCoverageReps, .level = 0.95, .criterion = criterion});
    elapsed = std::max(elapsed, seconds_since(start));
    note("case " + std::to_string(case_id) + " m=" + std::to_string(m) + " " + to_string(criterion) +
         " simultaneous coverage " + fmt(r.coverage, 3) + " +/- " + fmt(2 * r.mc_stderr, 3));
    return r;
}

void criterion_5() {
    double slowest = 0.0;
    const auto c1_cpdp = timed_coverage(1, 30, Criterion::Cpdp, slowest);
    const auto c1_ctpdp = timed_coverage(1, 30, Criterion::Ctpdp, slowest);
    const auto c1_small = timed_coverage(1, 5, Criterion::Cpdp, slowest);
    const auto c3_small = timed_coverage(3, 5, Criterion::Cpdp, slowest);
    const bool directional = c1_ctpdp.coverage + 2 * c1_ctpdp.mc_stderr >= c1_cpdp.coverage;
    const bool ok = c1_cpdp.coverage >= 0.95 - kCpdpCoverageSlack && c1_ctpdp.coverage >= 0.95 &&
                    c1_small.coverage >= kCpdpSmallMFloor && c3_small.coverage < 0.95 && directional &&
                    slowest < kCoverageBudgetSeconds;
    verdict(5, ok, "coverage behaviour (slowest configuration " + fmt(slowest, 2) + " s)");
}

void criterion_6() {
    const auto scenario = sim::benchmark_case(1, 30, kSeed + 1);
    const auto truth = sim::true_scores(scenario);
    const auto eq_var = sim::theoretical_cpdp_variance(scenario);
    const auto bound = sim::theoretical_ctpdp_bound(scenario);
    const std::size_t n = scenario.entity_count();

    std::vector<double> s_sum(n, 0.0), s_sq(n, 0.0), t_sum(n, 0.0), t_sq(n, 0.0);
    std::vector<double> t_all(kTheoremReps * n);
    for (std::size_t rep = 0; rep < kTheoremReps; ++rep) {
        const auto m = sim::generate(scenario, rep);
        const auto d = dominance_matrix(m);
        const auto s = cpdp_scores(d, m.orientation()).scores;
        const auto t = ctpdp_scores(d, m.orientation()).scores;
        for (std::size_t i = 0; i < n; ++i) {
            s_sum[i] += s[i];
            s_sq[i] += s[i] * s[i];
            t_sum[i] += t[i];
            t_sq[i] += t[i] * t[i];
            t_all[rep * n + i] = t[i];
        }
    }
    const double r = static_cast<double>(kTheoremReps);
    bool a = true, b = true, c = true;
    double worst_z = 0.0, worst_rel = 0.0, worst_excess = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mean = s_sum[i] / r;
        const double var = (s_sq[i] - r * mean * mean) / (r - 1.0);
        const double z = std::abs(mean - truth.cpdp[i]) / std::sqrt(var / r);
        const double rel = std::abs(var - eq_var[i]) / eq_var[i];
        const double t_mean = t_sum[i] / r;
        const double t_var = (t_sq[i] - r * t_mean * t_mean) / (r - 1.0);
        worst_z = std::max(worst_z, z);
        worst_rel = std::max(worst_rel, rel);
        a = a && z <= kMeanSigmaBound;
        b = b && rel <= kVarianceRelTol;
        c = c && t_var <= bound[i];
        // Standard error of the sample variance from the fourth central moment.
        double m4 = 0.0;
        for (std::size_t rep = 0; rep < kTheoremReps; ++rep) m4 += std::pow(t_all[rep * n + i] - t_mean, 4);
        const double var_se = std::sqrt(std::max(0.0, m4 / r - t_var * t_var) / r);
        if (t_var > bound[i] && var_se > 0.0) worst_excess = std::max(worst_excess, (t_var - bound[i]) / var_se);
        note("X" + std::to_string(i + 1) + ": bias/se " + fmt(z, 2) + ", var " + fmt(var, 5) + " vs " +
             fmt(eq_var[i], 5) + ", ctpdp var " + fmt(t_var, 5) + " <= bound " + fmt(bound[i], 5));
    }
    verdict(6, a && b && c, "theorem oracles over " + std::to_string(kTheoremReps) + " replications (unbiased " +
                                (a ? "yes" : "no") + ", max bias/se " + fmt(worst_z, 2) + "; variance " +
                                (b ? "yes" : "no") + ", max rel err " + fmt(worst_rel, 4) + "; ctpdp bound " +
                                (c ? "holds" : "violated") + ")");
    if (!c) {
        note("ctpdp bound is nearly tight in this scenario; largest excess is " + fmt(worst_excess, 2) +
             " standard errors of the sample variance");
    }
}

RankMatrix random_permutations(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    std::vector<std::vector<Cell>> rows(n, std::vector<Cell>(m));
    std::vector<int> perm(n);
    for (std::size_t c = 0; c < m; ++c) {
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < n; ++i) rows[i][c] = perm[i];
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    return RankMatrix(labels, rows, Orientation::LowerIsBetter);
}

void criterion_7() {
    std::mt19937_64 rng(kSeed + 7);
    std::uniform_int_distribution<std::size_t> pick_n(3, 8), pick_m(1, 9);
    int borda_violations = 0, copeland_violations = 0, split_free = 0;
    for (int trial = 0; trial < kEquivalenceTrials; ++trial) {
        const auto n = pick_n(rng);
        const auto m = pick_m(rng);
        const auto mat = random_permutations(n, m, rng);
        const auto d = dominance_matrix(mat);
        if (scores_to_ranks(cpdp_scores(d, mat.orientation())).display != borda_ranks(mat).display) ++borda_violations;
        if (!has_pairwise_split(d)) {
            ++split_free;
            if (scores_to_ranks(ctpdp_scores(d, mat.orientation())).display != copeland_ranks(mat).display) {
                ++copeland_violations;
            }
        }
    }
    verdict(7, borda_violations == 0 && copeland_violations == 0,
            "equivalence over " + std::to_string(kEquivalenceTrials) + " matrices (cpdp/borda violations " +
                std::to_string(borda_violations) + "; ctpdp/copeland violations " +
                std::to_string(copeland_violations) + " on " + std::to_string(split_free) + " split-free instances)");
}

double brute_tail(int n, double q, double p) {
    long double total = 0.0L, coef = 1.0L;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) coef = coef * (n - k + 1) / k;
        if (k > n * q) total += coef * std::pow(static_cast<long double>(p), k) * std::pow(1.0L - p, n - k);
    }
    return static_cast<double>(total);
}

void criterion_8() {
    std::mt19937_64 rng(kSeed + 8);
    std::vector<RankMatrix> inputs{nfl()};
    for (int case_id = 1; case_id <= 4; ++case_id) {
        for (std::uint64_t rep = 0; rep < 25; ++rep) inputs.push_back(sim::generate(sim::benchmark_case(case_id, 7 + rep % 20, kSeed), rep));
    }
    for (int k = 0; k < 50; ++k) inputs.push_back(random_permutations(3 + k % 6, 1 + k % 9, rng));

    int containment = 0, ordering = 0, antisymmetry = 0, invariance = 0, agreement = 0, complete_inputs = 0;
    double worst_gap = 0.0;
    for (const auto& m : inputs) {
        const auto d = dominance_matrix(m);
        const std::size_t n = m.entity_count();
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                if (k != i && d.probability(k, i) + d.probability(i, k) != 1.0) ++antisymmetry;
            }
        }
        for (auto criterion : {Criterion::Cpdp, Criterion::Ctpdp}) {
            const auto model = fit_scores(m, d, criterion);
            auto cis = simultaneous_rank_cis(model, 0.95);
            const auto ind = individual_rank_cis(model, 0.95);
            cis.insert(cis.end(), ind.begin(), ind.end());
            for (const auto& ci : cis) {
                const int point = model.ranks.display[ci.entity];
                if (point < ci.display_lower || point > ci.display_upper) ++containment;
                if (ci.lower > ci.upper || ci.display_lower > ci.display_upper) ++ordering;
            }
        }
        // Strictly increasing recoding of every value.
        std::vector<std::vector<Cell>> rows(n, std::vector<Cell>(m.ranker_count()));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < m.ranker_count(); ++c) {
                if (const auto v = m.value(i, c)) rows[i][c] = 5 * (*v) * (*v) + 11;
            }
        }
        const RankMatrix t(m.entities(), rows, m.orientation(), m.rankers());
        const auto dt = dominance_matrix(t);
        if (cpdp_scores(d, m.orientation()).scores != cpdp_scores(dt, t.orientation()).scores) ++invariance;
        if (ctpdp_scores(d, m.orientation()).scores != ctpdp_scores(dt, t.orientation()).scores) ++invariance;
        if (cpdp_variance(m, d).values != cpdp_variance(t, dt).values) ++invariance;
        if (m.complete()) {
            ++complete_inputs;
            if (borda_ranks(m).display != borda_ranks(t).display) ++invariance;
            if (copeland_ranks(m).display != copeland_ranks(t).display) ++invariance;
            const auto a = cpdp_variance(m, d).values;
            const auto b = cpdp_variance_complete(m, d).values;
            for (std::size_t i = 0; i < n; ++i) {
                worst_gap = std::max(worst_gap, std::abs(a[i] - b[i]));
                if (std::abs(a[i] - b[i]) > kFormulaAgreement) ++agreement;
            }
        }
    }
    int binomial = 0;
    double worst_binom = 0.0;
    for (int n = 0; n <= 12; ++n) {
        for (int j = 0; j <= 40; ++j) {
            const double p = j / 40.0;
            const double gap = std::abs(numerics::binom_tail_gt({n, 0.5, p}) - brute_tail(n, 0.5, p));
            worst_binom = std::max(worst_binom, gap);
            if (gap > kBinomialAgreement) ++binomial;
        }
    }
    const bool ok = containment == 0 && ordering == 0 && antisymmetry == 0 && invariance == 0 && agreement == 0 &&
                    binomial == 0;
    verdict(8, ok, "structural invariants on " + std::to_string(inputs.size()) + " inputs (violations: containment " +
                       std::to_string(containment) + ", ordering " + std::to_string(ordering) + ", antisymmetry " +
                       std::to_string(antisymmetry) + ", monotone invariance " + std::to_string(invariance) +
                       ", variance formulas " + std::to_string(agreement) + ", binomial " + std::to_string(binomial) +
                       ")");
    note("complete inputs " + std::to_string(complete_inputs) + ", max variance formula gap " + fmt(worst_gap, 16) +
         ", max binomial gap " + fmt(worst_binom, 16));
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                      criterion_5, criterion_6, criterion_7, criterion_8};
    for (const auto& run : criteria) {
        try {
            run();
        } catch (const std::exception& e) {
            std::printf("FAIL criterion: unexpected exception: %s\n", e.what());
            ++failures;
        }
        std::fflush(stdout);
    }
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
