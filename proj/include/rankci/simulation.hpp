#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rankci/criteria.hpp"
#include "rankci/inference.hpp"
#include "rankci/rank_matrix.hpp"

namespace rankci::sim {

struct Missingness {
    double row_fraction = 0.0;
    double max_cell_fraction = 0.0;
};

/// X_ij ~ N(means[i], variances[i]) independently, m columns.
struct Scenario {
    std::string name = "custom";
    std::size_t m = 10;
    std::vector<double> means;
    std::vector<double> variances;
    std::optional<Missingness> missingness;
    std::uint64_t seed = 1;

    std::size_t entity_count() const noexcept { return means.size(); }
};

/// Throws std::invalid_argument on N < 2, mismatched lengths, a
/// non-positive variance, m == 0 or a fraction outside [0, 1].
void validate(const Scenario& scenario);

/// Cases 1-4 with N = 10 and mu_i = i.
Scenario benchmark_case(int id, std::size_t m, std::uint64_t seed = 1);

/// P(X_k <= X_i) = Phi((mu_i - mu_k) / sqrt(var_i + var_k)) for distinct
/// entities. Throws std::invalid_argument on a non-positive variance.
double true_pairwise_prob_normal(double mean_k, double var_k, double mean_i, double var_i);

/// P(X_s <= X_i, X_t <= X_i) by composite Simpson quadrature over
/// mean_i +/- 12 sd_i.
double true_joint_prob_normal(double mean_s, double var_s, double mean_t, double var_t, double mean_i,
                              double var_i);

struct TruthTable {
    std::size_t entities = 0;
    std::vector<double> p;  ///< row-major [k][i] = P(X_k <= X_i)
    std::vector<double> cpdp;
    std::vector<double> ctpdp;
    std::vector<int> cpdp_ranks;  ///< ascending: 1 = smallest score
    std::vector<int> ctpdp_ranks;
    std::vector<int> mean_ranks;

    double prob(std::size_t k, std::size_t i) const { return p[k * entities + i]; }
    const std::vector<double>& scores(Criterion criterion) const;
    const std::vector<int>& ranks(Criterion criterion) const;
};

TruthTable true_scores(const Scenario& scenario);

/// Complete-data variance of s_hat_i at m columns, from true probabilities.
std::vector<double> theoretical_cpdp_variance(const Scenario& scenario);

/// Variance bound for t_hat_i at m columns, from true probabilities.
std::vector<double> theoretical_ctpdp_bound(const Scenario& scenario);

/// Independent stream for one replication.
std::mt19937_64 replication_stream(std::uint64_t seed, std::uint64_t replication);

/// Draws one N x m matrix of within-column ranks (HigherIsBetter), with
/// missingness injected when configured. Deterministic given the stream.
RankMatrix generate(const Scenario& scenario, std::mt19937_64& stream);
RankMatrix generate(const Scenario& scenario, std::uint64_t replication = 0);

struct CoverageConfig {
    std::size_t reps = 1000;
    double level = 0.95;
    IntervalMode mode = IntervalMode::Simultaneous;
    Criterion criterion = Criterion::Cpdp;
    QuantileConvention convention = QuantileConvention::UpperTail;
    unsigned threads = 0;  ///< 0 = hardware concurrency
};

struct CoverageReport {
    std::string scenario;
    Criterion criterion = Criterion::Cpdp;
    IntervalMode mode = IntervalMode::Simultaneous;
    std::size_t m = 0;
    std::size_t reps = 0;
    double level = 0.95;
    double coverage = 0.0;
    double mc_stderr = 0.0;
    std::vector<double> entity_coverage;  ///< individual mode only
};

/// Empirical coverage of the true ranks. Simultaneous mode counts a hit when
/// every entity is covered; individual mode reports the mean of the
/// per-entity rates. Throws std::logic_error when the true scores tie.
CoverageReport coverage_experiment(const Scenario& scenario, const CoverageConfig& config);

}  // namespace rankci::sim
