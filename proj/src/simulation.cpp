#include "rankci/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "rankci/dominance.hpp"
#include "rankci/numerics.hpp"

namespace rankci::sim {

namespace {

constexpr int kMaxRedraws = 10000;
constexpr int kSimpsonIntervals = 4000;

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void validate(const Scenario& scenario) {
    if (scenario.means.size() < 2) throw std::invalid_argument("scenario needs at least two entities");
    if (scenario.variances.size() != scenario.means.size()) {
        throw std::invalid_argument("scenario means and variances differ in length");
    }
    for (double v : scenario.variances) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("scenario variances must be positive");
    }
    for (double mu : scenario.means) {
        if (!std::isfinite(mu)) throw std::invalid_argument("scenario means must be finite");
    }
    if (scenario.m == 0) throw std::invalid_argument("scenario needs at least one ranker");
    if (scenario.missingness &&
        !(in_unit(scenario.missingness->row_fraction) && in_unit(scenario.missingness->max_cell_fraction))) {
        throw std::invalid_argument("missingness fractions must lie in [0, 1]");
    }
}

Scenario benchmark_case(int id, std::size_t m, std::uint64_t seed) {
    Scenario s;
    s.name = "case" + std::to_string(id);
    s.m = m;
    s.seed = seed;
    s.means.resize(10);
    std::iota(s.means.begin(), s.means.end(), 1.0);
    s.variances.assign(10, 1.0);
    switch (id) {
        case 1: break;
        case 2: s.missingness = Missingness{0.4, 0.4}; break;
        case 3:
            s.variances.front() = 9.0;
            s.variances.back() = 16.0;
            break;
        case 4:
            s.variances.front() = 9.0;
            s.variances.back() = 16.0;
            s.missingness = Missingness{0.4, 0.3};
            break;
        default: throw std::invalid_argument("benchmark case must be 1, 2, 3 or 4");
    }
    return s;
}

double true_pairwise_prob_normal(double mean_k, double var_k, double mean_i, double var_i) {
    if (!(var_k > 0.0) || !(var_i > 0.0)) throw std::invalid_argument("variances must be positive");
    return numerics::norm_cdf((mean_i - mean_k) / std::sqrt(var_i + var_k));
}

double true_joint_prob_normal(double mean_s, double var_s, double mean_t, double var_t, double mean_i,
                              double var_i) {
    if (!(var_s > 0.0) || !(var_t > 0.0) || !(var_i > 0.0)) {
        throw std::invalid_argument("variances must be positive");
    }
    const double sd_s = std::sqrt(var_s);
    const double sd_t = std::sqrt(var_t);
    const double sd_i = std::sqrt(var_i);
    const double lo = -12.0;
    const double h = 24.0 / kSimpsonIntervals;
    auto f = [&](double z) {
        const double x = mean_i + sd_i * z;
        return numerics::norm_pdf(z) * numerics::norm_cdf((x - mean_s) / sd_s) * numerics::norm_cdf((x - mean_t) / sd_t);
    };
    double sum = f(lo) + f(-lo);
    for (int j = 1; j < kSimpsonIntervals; ++j) sum += (j % 2 ? 4.0 : 2.0) * f(lo + j * h);
    return sum * h / 3.0;
}

const std::vector<double>& TruthTable::scores(Criterion criterion) const {
    if (criterion == Criterion::Cpdp) return cpdp;
    if (criterion == Criterion::Ctpdp) return ctpdp;
    throw std::invalid_argument("truth table holds cpdp and ctpdp scores only");
}

const std::vector<int>& TruthTable::ranks(Criterion criterion) const {
    if (criterion == Criterion::Cpdp) return cpdp_ranks;
    if (criterion == Criterion::Ctpdp) return ctpdp_ranks;
    throw std::invalid_argument("truth table holds cpdp and ctpdp ranks only");
}

TruthTable true_scores(const Scenario& scenario) {
    validate(scenario);
    const std::size_t n = scenario.entity_count();
    TruthTable t;
    t.entities = n;
    t.p.assign(n * n, 1.0);
    t.cpdp.assign(n, 0.0);
    t.ctpdp.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (k != i) {
                t.p[k * n + i] = true_pairwise_prob_normal(scenario.means[k], scenario.variances[k],
                                                           scenario.means[i], scenario.variances[i]);
            }
            t.cpdp[i] += t.p[k * n + i];
            if (t.p[k * n + i] > 0.5) t.ctpdp[i] += 1.0;
        }
    }
    t.cpdp_ranks = ascending_min_ranks(t.cpdp);
    t.ctpdp_ranks = ascending_min_ranks(t.ctpdp);
    t.mean_ranks = ascending_min_ranks(scenario.means);
    return t;
}

std::vector<double> theoretical_cpdp_variance(const Scenario& scenario) {
    const auto truth = true_scores(scenario);
    const std::size_t n = truth.entities;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) sum += truth.prob(k, i) * (1.0 - truth.prob(k, i));
        for (std::size_t s = 0; s < n; ++s) {
            if (s == i) continue;
            for (std::size_t t = 0; t < n; ++t) {
                if (t == i || t == s) continue;
                const double joint = true_joint_prob_normal(scenario.means[s], scenario.variances[s], scenario.means[t],
                                                            scenario.variances[t], scenario.means[i],
                                                            scenario.variances[i]);
                sum += joint - truth.prob(s, i) * truth.prob(t, i);
            }
        }
        out[i] = sum / static_cast<double>(scenario.m);
    }
    return out;
}

std::vector<double> theoretical_ctpdp_bound(const Scenario& scenario) {
    const auto truth = true_scores(scenario);
    const std::size_t n = truth.entities;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> tau(n);
        for (std::size_t k = 0; k < n; ++k) {
            tau[k] = numerics::binom_tail_gt({static_cast<std::int64_t>(scenario.m), 0.5, truth.prob(k, i)});
        }
        double bound = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            bound += tau[s] * (1.0 - tau[s]);
            for (std::size_t t = 0; t < n; ++t) {
                if (t != s) bound += std::min(tau[s], tau[t]) - tau[s] * tau[t];
            }
        }
        out[i] = bound;
    }
    return out;
}

std::mt19937_64 replication_stream(std::uint64_t seed, std::uint64_t replication) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replication), static_cast<std::uint32_t>(replication >> 32)};
    return std::mt19937_64(seq);
}

namespace {

using Grid = std::vector<std::vector<std::optional<double>>>;

bool usable(const Grid& x, std::size_t m) {
    const std::size_t n = x.size();
    for (std::size_t c = 0; c < m; ++c) {
        bool any = false;
        for (std::size_t i = 0; i < n && !any; ++i) any = x[i][c].has_value();
        if (!any) return false;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = k + 1; i < n; ++i) {
            bool shared = false;
            for (std::size_t c = 0; c < m && !shared; ++c) shared = x[k][c] && x[i][c];
            if (!shared) return false;
        }
    }
    return true;
}

void delete_cells(Grid& x, std::size_t m, const Missingness& miss, std::mt19937_64& rng) {
    const std::size_t n = x.size();
    const auto rows = static_cast<std::size_t>(std::ceil(miss.row_fraction * static_cast<double>(n) - 1e-9));
    const auto max_cells = static_cast<std::size_t>(std::floor(miss.max_cell_fraction * static_cast<double>(m) + 1e-9));
    if (rows == 0 || max_cells == 0) return;

    std::vector<std::size_t> entity_order(n);
    std::iota(entity_order.begin(), entity_order.end(), std::size_t{0});
    std::shuffle(entity_order.begin(), entity_order.end(), rng);
    std::vector<std::size_t> column_order(m);
    for (std::size_t r = 0; r < std::min(rows, n); ++r) {
        const std::size_t row = entity_order[r];
        std::uniform_int_distribution<std::size_t> count(1, max_cells);
        const std::size_t cells = count(rng);
        std::iota(column_order.begin(), column_order.end(), std::size_t{0});
        std::shuffle(column_order.begin(), column_order.end(), rng);
        for (std::size_t j = 0; j < cells; ++j) x[row][column_order[j]].reset();
    }
}

}  // namespace

RankMatrix generate(const Scenario& scenario, std::mt19937_64& stream) {
    validate(scenario);
    const std::size_t n = scenario.entity_count();
    const std::size_t m = scenario.m;
    std::normal_distribution<double> unit(0.0, 1.0);

    Grid x(n, std::vector<std::optional<double>>(m));
    for (std::size_t i = 0; i < n; ++i) {
        const double sd = std::sqrt(scenario.variances[i]);
        for (std::size_t c = 0; c < m; ++c) x[i][c] = scenario.means[i] + sd * unit(stream);
    }
    if (scenario.missingness) {
        const Grid full = x;
        int attempt = 0;
        do {
            if (++attempt > kMaxRedraws) {
                throw std::runtime_error("missingness pattern keeps emptying a column or a pair overlap");
            }
            x = full;
            delete_cells(x, m, *scenario.missingness, stream);
        } while (!usable(x, m));
    }

    std::vector<std::vector<Cell>> rows(n, std::vector<Cell>(m));
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t c = 0; c < m; ++c) {
        order.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i][c]) order.push_back(i);
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return *x[a][c] < *x[b][c]; });
        for (std::size_t r = 0; r < order.size(); ++r) rows[order[r]][c] = static_cast<std::int64_t>(r + 1);
    }

    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = "X" + std::to_string(i + 1);
    return RankMatrix(std::move(labels), std::move(rows), Orientation::HigherIsBetter);
}

RankMatrix generate(const Scenario& scenario, std::uint64_t replication) {
    auto stream = replication_stream(scenario.seed, replication);
    return generate(scenario, stream);
}

CoverageReport coverage_experiment(const Scenario& scenario, const CoverageConfig& config) {
    if (config.reps == 0) throw std::invalid_argument("coverage_experiment needs at least one replication");
    const auto truth = true_scores(scenario);
    const auto& true_scores_c = truth.scores(config.criterion);
    const auto& true_ranks = truth.ranks(config.criterion);
    for (std::size_t a = 0; a < true_scores_c.size(); ++a) {
        for (std::size_t b = a + 1; b < true_scores_c.size(); ++b) {
            if (scores_tied(true_scores_c[a], true_scores_c[b])) {
                throw std::logic_error("true scores tie; coverage of true ranks is ill-defined");
            }
        }
    }

    const std::size_t n = scenario.entity_count();
    // hits[rep * n + i]: entity i covered in replication rep.
    std::vector<std::uint8_t> hits(config.reps * n, 0);
    auto run = [&](std::size_t rep) {
        const auto matrix = generate(scenario, static_cast<std::uint64_t>(rep));
        const auto model = fit_scores(matrix, config.criterion);
        std::vector<RankInterval> intervals;
        if (config.mode == IntervalMode::Simultaneous) {
            intervals = simultaneous_rank_cis(model, config.level);
        } else {
            intervals = individual_rank_cis(model, config.level, config.convention);
        }
        for (std::size_t i = 0; i < n; ++i) {
            hits[rep * n + i] = intervals[i].lower <= true_ranks[i] && true_ranks[i] <= intervals[i].upper;
        }
    };

    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.reps));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t rep = w; rep < config.reps; rep += threads) run(rep);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    CoverageReport report;
    report.scenario = scenario.name;
    report.criterion = config.criterion;
    report.mode = config.mode;
    report.m = scenario.m;
    report.reps = config.reps;
    report.level = config.level;
    const double reps = static_cast<double>(config.reps);
    if (config.mode == IntervalMode::Simultaneous) {
        std::size_t joint = 0;
        for (std::size_t rep = 0; rep < config.reps; ++rep) {
            bool all = true;
            for (std::size_t i = 0; i < n; ++i) all = all && hits[rep * n + i];
            joint += all ? 1 : 0;
        }
        report.coverage = static_cast<double>(joint) / reps;
    } else {
        report.entity_coverage.assign(n, 0.0);
        for (std::size_t rep = 0; rep < config.reps; ++rep) {
            for (std::size_t i = 0; i < n; ++i) report.entity_coverage[i] += hits[rep * n + i];
        }
        for (double& c : report.entity_coverage) c /= reps;
        report.coverage = std::accumulate(report.entity_coverage.begin(), report.entity_coverage.end(), 0.0) /
                          static_cast<double>(n);
    }
    report.mc_stderr = std::sqrt(report.coverage * (1.0 - report.coverage) / reps);
    return report;
}

}  // namespace rankci::sim
