#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <gtest/gtest.h>

#include "ices/report.hpp"

using namespace ices;
using namespace ices::report;

TEST(ConfigText, SectionsCommentsAndQuotes) {
    const auto kv = parse_config_text(
        "cutoff = 12   # per mode\n"
        "\n"
        "[rays]\n"
        "values = \"1 0 0 1; 2 1 1 1\"\n"
        "[labels]\n"
        "q = 0, 0.5\n");
    EXPECT_EQ(kv.at("cutoff"), "12");
    EXPECT_EQ(kv.at("rays.values"), "1 0 0 1; 2 1 1 1");
    EXPECT_EQ(kv.at("labels.q"), "0, 0.5");
    EXPECT_THROW(parse_config_text("[rays\n"), UsageError);
    EXPECT_THROW(parse_config_text("no equals sign\n"), UsageError);
}

TEST(ConfigText, AppliesValues) {
    RunConfig c;
    apply_config(c, parse_config_text("cutoff = 12\nsuites = hermite,schmidt\n[rays]\nvalues = 2 1 1 1\n"
                                      "[labels]\nz = 0.1 0.2; -0.3 0\n[tolerances]\nstandard = 1e-5\n"));
    EXPECT_EQ(c.cutoff, 12);
    ASSERT_EQ(c.suites.size(), 2u);
    EXPECT_EQ(c.suites[1], "schmidt");
    EXPECT_FALSE(c.rays.random);
    ASSERT_EQ(c.rays.explicit_rays.size(), 1u);
    EXPECT_EQ(c.rays.explicit_rays[0].A, 2.0);
    ASSERT_EQ(c.z_values.size(), 2u);
    EXPECT_EQ(c.z_values[0], cplx(0.1, 0.2));
    EXPECT_EQ(c.tolerances.standard, 1e-5);
}

TEST(ConfigText, RejectsUnknownAndMalformedFields) {
    RunConfig c;
    EXPECT_THROW(apply_config(c, {{"cutof", "12"}}), UsageError);
    EXPECT_THROW(apply_config(c, {{"cutoff", "twelve"}}), UsageError);
    EXPECT_THROW(apply_config(c, {{"cutoff", "1.5"}}), UsageError);
    EXPECT_THROW(apply_config(c, {{"rays.values", "1 0 0"}}), UsageError);
    EXPECT_THROW(apply_config(c, {{"format", "xml"}}), UsageError);
}

TEST(Validate, NonUnimodularRayNamesTheDeterminant) {
    RunConfig c;
    c.suites = {"hermite"};
    apply_config(c, {{"rays.values", "1 1 0 2"}});
    try {
        validate(c);
        FAIL() << "expected a usage error";
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("AD-BC = 2"), std::string::npos) << e.what();
    }
}

TEST(Validate, RangeChecks) {
    RunConfig c;
    c.suites = {"nope"};
    EXPECT_THROW(validate(c), UsageError);
    c.suites = {};
    c.k = 16;
    EXPECT_THROW(validate(c), UsageError);
    c.k = -1;
    c.y_values = {0.3};
    EXPECT_THROW(validate(c), UsageError);
    c.y_values = {0.1};
    c.n_values = {7};
    EXPECT_THROW(validate(c), UsageError);
}

TEST(Run, EmptySuiteListPasses) {
    RunConfig c;
    const VerificationReport rep = run_suite(c);
    EXPECT_TRUE(rep.pass);
    EXPECT_TRUE(rep.suites.empty());
    EXPECT_EQ(csv_summary(rep), "suite,claim,residual,tolerance,verdict\n");
}

TEST(Run, ResourceGuardTrips) {
    RunConfig c;
    c.suites = {"hermite"};
    c.cutoff = 200;
    EXPECT_THROW(run_suite(c), ResourceError);
}

TEST(Run, InfoRecordsCountOnlyWhenStrict) {
    verify::ResidualRecord r;
    r.tier = verify::Tier::info;
    EXPECT_FALSE(record_counts(r, false));
    EXPECT_TRUE(record_counts(r, true));
    r.tier = verify::Tier::standard;
    EXPECT_TRUE(record_counts(r, false));
}

TEST(Run, CsvHasOneRowPerRecord) {
    RunConfig c;
    c.suites = {"hermite", "gaussian_integrals"};
    c.gaussian_count = 3;
    const VerificationReport rep = run_suite(c);
    size_t records = 0;
    for (const auto& s : rep.suites) records += s.records.size();
    const std::string csv = csv_summary(rep);
    EXPECT_EQ(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')), records + 1);
    // the validator disagreement makes this run fail
    EXPECT_FALSE(rep.pass);
}

TEST(Run, BodyIsReproducibleAndExcludesTimings) {
    RunConfig c;
    c.suites = {"hermite", "schmidt"};
    c.schmidt_cutoff = 8;
    const std::string a = canonical_dump(report_body(run_suite(c)));
    const std::string b = canonical_dump(report_body(run_suite(c)));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.find("timings"), std::string::npos);
    EXPECT_NE(canonical_dump(report_json(run_suite(c))).find("\"timings\""), std::string::npos);
}

TEST(Canonical, SortedKeysFullPrecisionAndNonFinite) {
    nlohmann::json j = {{"b", 0.1}, {"a", std::numeric_limits<double>::quiet_NaN()},
                        {"c", {{"z", std::numeric_limits<double>::infinity()}, {"y", 1}}}};
    EXPECT_EQ(canonical_dump(j), "{\"a\":\"nan\",\"b\":0.10000000000000001,\"c\":{\"y\":1,\"z\":\"inf\"}}");
}

TEST(Canonical, RoundTripsThroughTheParser) {
    RunConfig c;
    c.suites = {"hermite"};
    const VerificationReport rep = run_suite(c);
    const std::string text = canonical_dump(report_json(rep));
    const nlohmann::json back = nlohmann::json::parse(text);
    EXPECT_EQ(back.at("version"), kVersion);
    EXPECT_EQ(back.at("suites").at(0).at("id"), "hermite");
    EXPECT_EQ(back.at("suites").at(0).at("records").at(0).at("residual").get<double>(),
              rep.suites[0].records[0].residual);
    EXPECT_EQ(canonical_dump(back), text);
}

TEST(Emit, WritesToFile) {
    RunConfig c;
    c.suites = {"hermite"};
    const std::string path = ::testing::TempDir() + "report_emit.csv";
    emit_report(run_suite(c), Format::csv, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "suite,claim,residual,tolerance,verdict");
    std::remove(path.c_str());
}

TEST(Suites, KnownIdsAreUnique) {
    auto ids = known_suites();
    EXPECT_EQ(ids.size(), 25u);
    std::sort(ids.begin(), ids.end());
    EXPECT_EQ(std::adjacent_find(ids.begin(), ids.end()), ids.end());
}
