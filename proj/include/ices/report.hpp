#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ices/params.hpp"
#include "ices/verify.hpp"

namespace ices::report {

constexpr const char* kVersion = "1.0.0";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

struct RaySource {
    bool random = true;
    int count = 5;
    double max_abs_r = 0.8;
    double min_abs_b = 0.0;
    std::vector<RayMatrix> explicit_rays;
};

struct RunConfig {
    std::vector<std::string> suites;
    int cutoff = 16;         // per mode, two-mode suites
    int single_cutoff = 32;  // single-mode suites
    int k = -1;              // inner block; -1 means cutoff / 2
    unsigned long long seed = 20240607;

    RaySource rays;                                      // general-purpose rays
    RaySource fresnel_rays{true, 25, 1.0, 0.0, {}};      // defining property
    RaySource classical_rays{true, 10, 1.5, 0.5, {}};    // kernel cross-check
    RaySource identity_rays{false, 0, 0.0, 0.0, {{1, 0, 0, 1}, {0.8, 0.6, -0.5, 0.875}, {1.2, -0.5, 0.4, 0.8 / 1.2}}};

    std::vector<cplx> z_values{{0.0, 0.0}, {0.5, 0.0}, {-0.3, 0.4}};
    std::vector<double> q_values{0.0, 1.0, -0.6};
    std::vector<double> lambda_values{0.2, -0.5};
    std::vector<double> y_values{0.1, 0.2};
    std::vector<int> n_values{1, 2, 3, 4, 5, 6};

    int identity_cutoff = 20;
    int identity_samples = 9;
    int conjugate_cutoff = 12;
    std::vector<int> nascent_cutoffs{16, 24, 32};
    std::vector<int> convergence_cutoffs{8, 12, 16};

    RayMatrix completeness_ray;
    int completeness_cutoff = 10;
    int completeness_k = 3;
    int completeness_refinements = 3;
    verify::QuadratureScheme scheme;

    int schmidt_cutoff = 12;
    int gaussian_count = 50;

    verify::Tolerances tolerances;
    bool strict = false;
    bool reproducible = true;
    int workers = 1;
    double memory_limit_mb = 4096.0;

    std::string out_path;
    Format format = Format::json;

    int block() const { return k >= 0 ? k : cutoff / 2; }
};

const std::vector<std::string>& known_suites();

// Flat key = value text with [section] headers; keys become "section.key".
std::map<std::string, std::string> parse_config_text(const std::string& text);
// Applies parsed keys onto `cfg`; unknown keys or bad values raise UsageError.
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv);
RunConfig load_config(const std::string& path);
void validate(const RunConfig& cfg);
nlohmann::json config_json(const RunConfig& cfg);

struct SuiteResult {
    std::string id;
    std::vector<verify::ResidualRecord> records;
    double seconds = 0.0;
};

struct VerificationReport {
    RunConfig config;
    std::vector<SuiteResult> suites;
    bool pass = true;
};

// Estimated peak bytes of the largest dense operator the run will build.
double estimated_peak_bytes(const RunConfig& cfg);
std::vector<verify::ResidualRecord> run_one(const std::string& id, const RunConfig& cfg);
VerificationReport run_suite(const RunConfig& cfg);
bool record_counts(const verify::ResidualRecord& r, bool strict);

// Report without timings.
nlohmann::json report_body(const VerificationReport& rep);
nlohmann::json report_json(const VerificationReport& rep);
// Sorted keys, doubles with 17 significant digits, non-finite values as strings.
std::string canonical_dump(const nlohmann::json& j);
std::string csv_summary(const VerificationReport& rep);
void emit_report(const VerificationReport& rep, Format format, const std::string& path);

}  // namespace ices::report
