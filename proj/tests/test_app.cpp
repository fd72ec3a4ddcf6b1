#include <gtest/gtest.h>

#include <map>
#include <memory>
#include <sstream>

#include "rankci/app/commands.hpp"
#include "rankci/app/csv.hpp"
#include "rankci/app/errors.hpp"
#include "rankci/app/input.hpp"

using namespace rankci;
using namespace rankci::app;

namespace {

RankMatrix parse(const std::string& text, Orientation o = Orientation::LowerIsBetter) {
    std::istringstream in(text);
    return parse_input(in, o);
}

ErrorCode code_of(const std::string& text) {
    try {
        parse(text);
    } catch (const AppError& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

std::string message_of(const std::string& text) {
    try {
        parse(text);
    } catch (const AppError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Csv, QuotesCrlfAndBlankLines) {
    std::istringstream in("\xEF\xBB\xBF" "a,\"b,c\",\"d\"\"e\"\r\n\r\n1,,3\n");
    const auto rows = read_csv(in);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].fields, (std::vector<std::string>{"a", "b,c", "d\"e"}));
    EXPECT_EQ(rows[1].fields, (std::vector<std::string>{"1", "", "3"}));
    EXPECT_EQ(rows[1].line, 3u);
}

TEST(Csv, RejectsUnterminatedQuote) {
    std::istringstream in("a,\"b\n");
    EXPECT_THROW(read_csv(in), AppError);
    EXPECT_EQ(csv_escape("x,y"), "\"x,y\"");
    EXPECT_EQ(csv_escape("plain"), "plain");
}

TEST(ParseInput, NflTableShape) {
    const auto m = parse_input(RANKCI_NFL_DATA, Orientation::LowerIsBetter);
    EXPECT_EQ(m.entity_count(), 24u);
    EXPECT_EQ(m.ranker_count(), 13u);
    EXPECT_EQ(m.missing_count(), 7u);
    EXPECT_EQ(m.label(0), "Andrew Luck");
}

TEST(ParseInput, MissingMarkers) {
    const auto m = parse("entity,a,b\nx,1,NA\ny,2,\nz,3,1\n");
    EXPECT_FALSE(m.observed(0, 1));
    EXPECT_FALSE(m.observed(1, 1));
    EXPECT_EQ(m.rankers(), (std::vector<std::string>{"a", "b"}));
}

TEST(ParseInput, DistinctErrorCodes) {
    EXPECT_EQ(code_of("entity,a\nx,1\nx,2\n"), ErrorCode::DuplicateLabel);
    EXPECT_NE(message_of("entity,a\nx,1\nx,2\n").find("'x'"), std::string::npos);
    EXPECT_EQ(code_of("entity,a,b\nx,1,3\ny,2,3\nz,3,1\n"), ErrorCode::DuplicateRank);
    const auto dup = message_of("entity,a,b\nx,1,3\ny,2,3\nz,3,1\n");
    EXPECT_NE(dup.find("'b'"), std::string::npos);
    EXPECT_NE(dup.find("value 3"), std::string::npos);
    EXPECT_EQ(code_of("entity,a,b\nx,1,NA\ny,2,NA\n"), ErrorCode::EmptyColumn);
    EXPECT_EQ(code_of("entity,a\nx,1\ny,two\n"), ErrorCode::MalformedCsv);
    EXPECT_EQ(code_of("entity,a\nx,1,4\ny,2\n"), ErrorCode::MalformedCsv);
    EXPECT_EQ(code_of("entity,a\nx,1\ny,-2\n"), ErrorCode::InvalidMatrix);
    EXPECT_EQ(code_of(""), ErrorCode::MalformedCsv);
    EXPECT_THROW(parse_input(std::string("/nonexistent/file.csv"), Orientation::LowerIsBetter), AppError);
}

TEST(Results, CsvAndStructuredRoundTrip) {
    const auto m = parse_input(RANKCI_NFL_DATA, Orientation::LowerIsBetter);
    for (const auto& doc : {cmd_rank(m), cmd_ci(m, {.mode = IntervalMode::Individual})}) {
        std::ostringstream csv;
        write_csv(doc, csv);
        std::istringstream csv_in(csv.str());
        const auto back = read_results_csv(csv_in);
        std::ostringstream again;
        write_csv(back, again);
        EXPECT_EQ(csv.str(), again.str());
        EXPECT_EQ(read_results_csv(*std::make_unique<std::istringstream>(again.str())), back);

        std::ostringstream js;
        write_structured(back, js);
        std::istringstream js_in(js.str());
        EXPECT_EQ(read_results_structured(js_in), back);
    }
}

TEST(Results, HeaderIsFixed) {
    std::ostringstream out;
    write_csv({}, out);
    EXPECT_EQ(out.str(), std::string(kResultsHeader) + "\n");
    std::istringstream bad("entity,score\n");
    EXPECT_THROW(read_results_csv(bad), AppError);
    EXPECT_EQ(format_number(-0.0000001), "0.000000");
    EXPECT_EQ(format_number(2.5), "2.500000");
}

TEST(CmdRank, BordaMatchesCpdpOnCompleteData) {
    const auto m = parse("entity,a,b,c\nw,1,2,4\nx,2,1,3\ny,3,4,1\nz,4,3,2\n");
    const auto doc = cmd_rank(m);
    std::map<std::string, std::vector<int>> ranks;
    for (const auto& r : doc.records) ranks[r.criterion].push_back(r.point_rank);
    EXPECT_EQ(ranks.size(), 4u);
    EXPECT_EQ(ranks["cpdp"], ranks["borda"]);
}

TEST(CmdRank, SkipsBordaWithMissingData) {
    const auto m = parse_input(RANKCI_NFL_DATA, Orientation::LowerIsBetter);
    for (const auto& r : cmd_rank(m).records) {
        EXPECT_TRUE(r.criterion == "cpdp" || r.criterion == "ctpdp");
    }
}

TEST(CmdRank, SingleBallotRanksEqualBallot) {
    const auto m = parse("entity,a\nw,3\nx,1\ny,4\nz,2\n");
    for (const auto& r : cmd_rank(m).records) {
        EXPECT_EQ(r.point_rank, *m.value(*m.find_entity(r.entity), 0)) << r.criterion;
    }
}

TEST(CmdCi, RejectsUnsupportedCriterionAndLevel) {
    const auto m = parse("entity,a,b\nx,1,2\ny,2,1\n");
    EXPECT_THROW(cmd_ci(m, {.criterion = Criterion::Borda}), AppError);
    EXPECT_THROW(cmd_ci(m, {.level = 1.0}), AppError);
}

TEST(Sse, ToyBallot) {
    const auto m = parse("entity,a\nx,1\ny,2\nz,3\n");
    EXPECT_EQ(sse_by_ballot(m, {2, 1, 3}), (std::vector<long long>{2}));
    EXPECT_EQ(sse_by_ballot(m, {1, 2, 3}), (std::vector<long long>{0}));
}

TEST(Sse, RestrictsToObservedAndReranks) {
    // Ballot b skips y; method order x < y < z restricted to {x, z} is 1, 2.
    const auto m = parse("entity,a,b\nx,1,2\ny,2,NA\nz,3,1\n");
    EXPECT_EQ(sse_by_ballot(m, {1, 2, 3}), (std::vector<long long>{0, 2}));
    EXPECT_THROW(sse_by_ballot(m, {1, 2}), AppError);
}

TEST(Sse, ExternalRanksFile) {
    const auto m = parse("entity,a\nx,1\ny,2\nz,3\n");
    std::istringstream good("entity,rank\nz,3\nx,2\ny,1\n");
    EXPECT_EQ(read_method_ranks(good, m), (std::vector<int>{2, 1, 3}));
    std::istringstream missing("entity,rank\nx,1\ny,2\n");
    try {
        read_method_ranks(missing, m);
        FAIL();
    } catch (const AppError& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingEntity);
    }
    std::istringstream unknown("entity,rank\nq,1\n");
    EXPECT_THROW(read_method_ranks(unknown, m), AppError);
}

TEST(Simulate, MValueParsing) {
    EXPECT_EQ(parse_m_values("30"), (std::vector<std::size_t>{30}));
    EXPECT_EQ(parse_m_values("5:20:5"), (std::vector<std::size_t>{5, 10, 15, 20}));
    EXPECT_THROW(parse_m_values("5:2:1"), AppError);
    EXPECT_THROW(parse_m_values("abc"), AppError);
    EXPECT_THROW(parse_m_values("0"), AppError);
}

TEST(Simulate, ScenarioFileAndSweepOutput) {
    std::istringstream in(R"({"name":"toy","m":4,"means":[1,2,3],"variances":[1,1,1],
                              "missingness":{"row_fraction":0.3,"max_cell_fraction":0.25},"seed":5})");
    const auto s = load_scenario(in);
    EXPECT_EQ(s.name, "toy");
    ASSERT_TRUE(s.missingness.has_value());
    const auto reports = cmd_simulate(s, {4, 6}, {.reps = 5, .threads = 1});
    std::ostringstream out;
    write_coverage_csv(reports, out);
    std::istringstream back(out.str());
    const auto rows = read_csv(back);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].fields, (std::vector<std::string>{"case", "criterion", "mode", "m", "reps", "coverage", "mc_stderr"}));
    EXPECT_EQ(rows[2].fields[3], "6");

    std::istringstream bad(R"({"means":[1,2],"variances":[1,0]})");
    try {
        load_scenario(bad);
        FAIL();
    } catch (const AppError& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidScenario);
    }
}
