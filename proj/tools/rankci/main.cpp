#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <json.hpp>

#include "rankci/app/commands.hpp"
#include "rankci/app/errors.hpp"
#include "rankci/app/input.hpp"
#include "rankci/dominance.hpp"

namespace {

using rankci::app::AppError;
using rankci::app::ErrorCode;

enum class Format { Csv, Structured };

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "structured-text" || name == "json") return Format::Structured;
    throw AppError(ErrorCode::Usage, "unknown format '" + name + "'");
}

rankci::QuantileConvention parse_convention(const std::string& name) {
    if (name == "code") return rankci::QuantileConvention::UpperTail;
    if (name == "two-sided") return rankci::QuantileConvention::TwoSided;
    throw AppError(ErrorCode::Usage, "unknown quantile convention '" + name + "'");
}

rankci::Criterion criterion_or_usage(const std::string& name) {
    try {
        return rankci::parse_criterion(name);
    } catch (const std::invalid_argument& e) {
        throw AppError(ErrorCode::Usage, e.what());
    }
}

rankci::IntervalMode mode_or_usage(const std::string& name) {
    try {
        return rankci::parse_mode(name);
    } catch (const std::invalid_argument& e) {
        throw AppError(ErrorCode::Usage, e.what());
    }
}

int report(ErrorCode code, const std::string& message, Format format) {
    if (format == Format::Structured) {
        std::cerr << nlohmann::json{{"error", {{"code", rankci::app::code_name(code)}, {"message", message}}}}.dump()
                  << '\n';
    } else {
        std::cerr << "rankci: error[" << rankci::app::code_name(code) << "]: " << message << '\n';
    }
    return static_cast<int>(code);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank aggregation with pairwise dominance criteria and rank confidence intervals"};
    app.require_subcommand(1);

    std::string format_name = "csv";
    std::string orientation_name = "lower-better";
    std::string input;
    double level = 0.95;
    std::string mode_name = "simultaneous";
    std::string criterion_name = "cpdp";
    std::string quantile_name = "code";
    std::uint64_t seed = 1;
    std::size_t reps = 1000;
    unsigned threads = 0;
    int case_id = 1;
    std::string scenario_path;
    std::string m_spec = "30";
    bool show_truth = false;
    std::vector<std::string> methods;
    std::string ranks_path;
    std::string ranks_name = "external";
    bool per_ballot = false;

    app.add_option("--format", format_name, "Output format: csv or structured-text")->capture_default_str();

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", input, "Entity-by-ranker CSV (NA or empty = missing)")->required();
        cmd->add_option("--orientation", orientation_name, "lower-better (ballots) or higher-better")
            ->capture_default_str();
    };

    auto* rank = app.add_subcommand("rank", "Point ranks under every criterion");
    add_input(rank);

    auto* ci = app.add_subcommand("ci", "Rank confidence intervals");
    add_input(ci);
    ci->add_option("--level", level, "Confidence level")->capture_default_str();
    ci->add_option("--mode", mode_name, "simultaneous or individual")->capture_default_str();
    ci->add_option("--criterion", criterion_name, "cpdp or ctpdp")->capture_default_str();
    ci->add_option("--individual-quantile", quantile_name, "code (upper-tail) or two-sided")->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo coverage of rank intervals");
    auto* case_opt = simulate->add_option("--case", case_id, "Benchmark case 1-4")->capture_default_str();
    simulate->add_option("--scenario", scenario_path, "JSON scenario file")->excludes(case_opt);
    simulate->add_option("--m", m_spec, "Rankers: a count or an inclusive sweep from:to:step")->capture_default_str();
    simulate->add_option("--reps", reps, "Replications per configuration")->capture_default_str();
    simulate->add_option("--seed", seed, "Base seed")->capture_default_str();
    simulate->add_option("--level", level, "Confidence level")->capture_default_str();
    simulate->add_option("--mode", mode_name, "simultaneous or individual")->capture_default_str();
    simulate->add_option("--criterion", criterion_name, "cpdp or ctpdp")->capture_default_str();
    simulate->add_option("--individual-quantile", quantile_name, "code (upper-tail) or two-sided")
        ->capture_default_str();
    simulate->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
    simulate->add_flag("--show-truth", show_truth, "Print the true scores and ranks instead of running");

    auto* sse = app.add_subcommand("sse", "Squared error of method ranks against every ballot");
    add_input(sse);
    sse->add_option("--method", methods, "Built-in method: cpdp, ctpdp, borda, copeland (repeatable)");
    sse->add_option("--ranks", ranks_path, "CSV of entity,rank for an external method");
    sse->add_option("--ranks-name", ranks_name, "Label for the external method")->capture_default_str();
    sse->add_flag("--per-ballot", per_ballot, "Include the per-ballot breakdown");

    Format format = Format::Csv;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report(ErrorCode::Usage, e.what(), format);
    }

    try {
        format = parse_format(format_name);
        const bool csv = format == Format::Csv;

        if (*rank || *ci || *sse) {
            const auto matrix = rankci::app::parse_input(input, rankci::app::parse_orientation(orientation_name));
            if (*rank) {
                const auto doc = rankci::app::cmd_rank(matrix);
                csv ? rankci::app::write_csv(doc, std::cout) : rankci::app::write_structured(doc, std::cout);
            } else if (*ci) {
                rankci::app::CiOptions options;
                options.level = level;
                options.mode = mode_or_usage(mode_name);
                options.criterion = criterion_or_usage(criterion_name);
                options.convention = parse_convention(quantile_name);
                const auto doc = rankci::app::cmd_ci(matrix, options);
                csv ? rankci::app::write_csv(doc, std::cout) : rankci::app::write_structured(doc, std::cout);
            } else {
                if (methods.empty() && ranks_path.empty()) methods = {"cpdp", "ctpdp"};
                std::vector<rankci::app::SseResult> results;
                for (const auto& name : methods) {
                    const auto ranks = rankci::app::method_display_ranks(matrix, criterion_or_usage(name));
                    results.push_back(rankci::app::cmd_sse(matrix, name, ranks));
                }
                if (!ranks_path.empty()) {
                    std::ifstream in(ranks_path);
                    if (!in) throw AppError(ErrorCode::Io, "cannot open '" + ranks_path + "'");
                    const auto ranks = rankci::app::read_method_ranks(in, matrix);
                    results.push_back(rankci::app::cmd_sse(matrix, ranks_name, ranks));
                }
                csv ? rankci::app::write_sse_csv(matrix, results, per_ballot, std::cout)
                    : rankci::app::write_sse_structured(matrix, results, std::cout);
            }
            return 0;
        }

        rankci::sim::Scenario scenario;
        const auto m_values = rankci::app::parse_m_values(m_spec);
        if (!scenario_path.empty()) {
            std::ifstream in(scenario_path);
            if (!in) throw AppError(ErrorCode::Io, "cannot open '" + scenario_path + "'");
            scenario = rankci::app::load_scenario(in);
            scenario.seed = simulate->count("--seed") ? seed : scenario.seed;
        } else {
            if (case_id < 1 || case_id > 4) throw AppError(ErrorCode::Usage, "--case must be 1, 2, 3 or 4");
            scenario = rankci::sim::benchmark_case(case_id, m_values.front(), seed);
        }
        if (show_truth) {
            rankci::app::write_truth_csv(scenario, rankci::sim::true_scores(scenario), std::cout);
            return 0;
        }
        rankci::sim::CoverageConfig config;
        config.reps = reps;
        config.level = level;
        config.mode = mode_or_usage(mode_name);
        config.criterion = criterion_or_usage(criterion_name);
        config.convention = parse_convention(quantile_name);
        config.threads = threads;
        if (config.criterion != rankci::Criterion::Cpdp && config.criterion != rankci::Criterion::Ctpdp) {
            throw AppError(ErrorCode::Unsupported, "coverage runs support cpdp and ctpdp only");
        }
        if (!(level > 0.0 && level < 1.0)) throw AppError(ErrorCode::Usage, "--level must lie strictly between 0 and 1");
        const auto reports = rankci::app::cmd_simulate(scenario, m_values, config);
        csv ? rankci::app::write_coverage_csv(reports, std::cout)
            : rankci::app::write_coverage_structured(reports, std::cout);
        return 0;
    } catch (const AppError& e) {
        return report(e.code(), e.what(), format);
    } catch (const rankci::NoCommonRanker& e) {
        return report(ErrorCode::NoCommonRanker, e.what(), format);
    } catch (const rankci::InvalidRankMatrix& e) {
        return report(ErrorCode::InvalidMatrix, e.what(), format);
    } catch (const std::exception& e) {
        return report(ErrorCode::Internal, e.what(), format);
    }
}
