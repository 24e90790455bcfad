#include "ices/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include "ices/gaussian.hpp"

namespace ices::report {

namespace {

using verify::ResidualRecord;
using verify::StateKind;
using verify::Tier;

// ---- config parsing --------------------------------------------------------

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw UsageError("config field '" + key + "': expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (d != std::floor(d)) throw UsageError("config field '" + key + "': expected an integer, got '" + v + "'");
    return static_cast<int>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw UsageError("config field '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& t : split(v, ',')) out.push_back(to_double(key, t));
    return out;
}

std::vector<int> to_ints(const std::string& key, const std::string& v) {
    std::vector<int> out;
    for (const auto& t : split(v, ',')) out.push_back(to_int(key, t));
    return out;
}

// "re im; re im; ..."
std::vector<cplx> to_complexes(const std::string& key, const std::string& v) {
    std::vector<cplx> out;
    for (const auto& t : split(v, ';')) {
        std::stringstream ss(t);
        std::string a, b, extra;
        ss >> a >> b;
        if (a.empty() || (ss >> extra)) throw UsageError("config field '" + key + "': bad complex value '" + t + "'");
        out.emplace_back(to_double(key, a), b.empty() ? 0.0 : to_double(key, b));
    }
    return out;
}

RayMatrix to_ray(const std::string& key, const std::string& t) {
    std::stringstream ss(t);
    std::vector<double> v;
    std::string w;
    while (ss >> w) v.push_back(to_double(key, w));
    if (v.size() != 4) throw UsageError("config field '" + key + "': a ray needs four numbers A B C D, got '" + t + "'");
    return {v[0], v[1], v[2], v[3]};
}

std::vector<RayMatrix> to_rays(const std::string& key, const std::string& v) {
    std::vector<RayMatrix> out;
    for (const auto& t : split(v, ';')) out.push_back(to_ray(key, t));
    return out;
}

bool apply_ray_key(RaySource& src, const std::string& field, const std::string& key, const std::string& v) {
    if (field == "random") src.random = to_bool(key, v);
    else if (field == "count") src.count = to_int(key, v);
    else if (field == "max_abs_r") src.max_abs_r = to_double(key, v);
    else if (field == "min_abs_b") src.min_abs_b = to_double(key, v);
    else if (field == "values") {
        src.explicit_rays = to_rays(key, v);
        src.random = false;
    } else return false;
    return true;
}

void check_rays(const std::string& what, const std::vector<RayMatrix>& rays) {
    for (const auto& m : rays) {
        if (std::abs(m.det() - 1.0) > gaussian::kParamTolerance) {
            std::ostringstream msg;
            msg.precision(17);
            msg << what << ": ray matrix is not unimodular, AD-BC = " << m.det();
            throw UsageError(msg.str());
        }
    }
}

nlohmann::json ray_source_json(const RaySource& s) {
    nlohmann::json j = {{"random", s.random}, {"count", s.count}, {"max_abs_r", s.max_abs_r}, {"min_abs_b", s.min_abs_b}};
    nlohmann::json v = nlohmann::json::array();
    for (const auto& m : s.explicit_rays) v.push_back(verify::ray_json(m));
    j["values"] = v;
    return j;
}

// ---- suite helpers -----------------------------------------------------------

std::vector<RayMatrix> draw_rays(const RaySource& src, unsigned long long seed, unsigned long long stream) {
    if (!src.random) return src.explicit_rays;
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
    std::vector<RayMatrix> out;
    for (int i = 0; i < src.count; ++i) out.push_back(gaussian::random_ray(rng, src.max_abs_r, src.min_abs_b));
    return out;
}

void append(std::vector<ResidualRecord>& out, std::vector<ResidualRecord> more) {
    for (auto& r : more) out.push_back(std::move(r));
}

std::vector<RayMatrix> with_identity(std::vector<RayMatrix> rays) {
    rays.insert(rays.begin(), RayMatrix{1, 0, 0, 1});
    return rays;
}

std::vector<ResidualRecord> eigen_suite(StateKind kind, const RunConfig& cfg) {
    std::vector<ResidualRecord> out;
    const auto rays = with_identity(draw_rays(cfg.rays, cfg.seed, 0));
    if (kind == StateKind::icms || kind == StateKind::imcs) {
        const auto s1 = fock::make_space(1, cfg.single_cutoff);
        for (const auto& m : rays)
            for (double x : cfg.q_values) append(out, verify::eigen_residual(kind, {{}, x, m}, s1, cfg.single_cutoff / 2));
        return out;
    }
    const auto s2 = fock::make_space(2, cfg.cutoff);
    for (const auto& m : rays)
        for (cplx z : cfg.z_values)
            for (double x : cfg.q_values) append(out, verify::eigen_residual(kind, {z, x, m}, s2, cfg.block()));
    return out;
}

std::vector<ResidualRecord> fresnel_suite(StateKind kind, const RunConfig& cfg) {
    std::vector<ResidualRecord> out;
    for (const auto& m : draw_rays(cfg.fresnel_rays, cfg.seed, 1))
        for (double x : cfg.q_values)
            out.push_back(verify::fresnel_defining(kind, x, m, cfg.single_cutoff, cfg.single_cutoff / 2));
    return out;
}

std::vector<ResidualRecord> methods_suite(StateKind kind, const RunConfig& cfg) {
    std::vector<ResidualRecord> out;
    const auto s2 = fock::make_space(2, cfg.cutoff);
    for (const auto& m : draw_rays(cfg.rays, cfg.seed, 0))
        for (cplx z : cfg.z_values)
            for (double x : cfg.q_values) out.push_back(verify::method_agreement(kind, {z, x, m}, s2, cfg.block()));
    return out;
}

std::vector<ResidualRecord> squeeze_suite(const std::string& id, const RunConfig& cfg) {
    std::vector<ResidualRecord> out;
    const auto s2 = fock::make_space(2, cfg.cutoff);
    const int k = cfg.block();
    std::vector<std::pair<RayMatrix, double>> cases;
    for (const auto& m : draw_rays(cfg.rays, cfg.seed, 0))
        for (double l : cfg.lambda_values) cases.emplace_back(m, l);
    cases.emplace_back(RayMatrix{1, 0, 0, 1}, 0.3);
    for (const auto& [m, l] : cases) {
        if (id == "squeeze_operator") append(out, verify::squeeze_operator_checks(m, l, s2, k));
        else if (id == "squeeze_generator") append(out, verify::squeeze_generator_check(m, l, s2, k));
        else append(out, verify::squeeze_heisenberg_check(m, l, s2, k));
    }
    if (id == "squeeze_operator") out.push_back(verify::squeeze_degenerate(0.4, s2, k));
    return out;
}

std::vector<ResidualRecord> identity_suite(verify::IdentityId id, const RunConfig& cfg) {
    std::vector<ResidualRecord> out;
    const auto s2 = fock::make_space(2, cfg.identity_cutoff);
    const auto probes = verify::default_probes(cfg.identity_samples);
    for (const auto& m : draw_rays(cfg.identity_rays, cfg.seed, 3)) {
        if (id == verify::IdentityId::gaussian_coordinate) {
            for (double y : cfg.y_values)
                out.push_back(verify::identity_check(id, m, {y, 0}, probes, s2, Tier::pinned, 1e-6));
        } else if (id == verify::IdentityId::power_coordinate) {
            for (int n : cfg.n_values)
                out.push_back(verify::identity_check(id, m, {0.0, n}, probes, s2, Tier::pinned, n >= 5 ? 1e-5 : 1e-6));
        } else {
            out.push_back(verify::identity_check(id, m, {}, probes, s2, Tier::pinned, 1e-6));
        }
    }
    return out;
}

std::vector<ResidualRecord> classical_suite(const RunConfig& cfg) {
    std::vector<ResidualRecord> out;
    const verify::FresnelGrids grids;
    for (const auto& m : draw_rays(cfg.classical_rays, cfg.seed, 2)) {
        out.push_back(verify::classical_fresnel_check(m, {verify::FresnelInput::Kind::ground, 0.0}, grids, 1e-3));
        out.push_back(verify::classical_fresnel_check(m, {verify::FresnelInput::Kind::coherent, 0.5}, grids, 1e-3));
    }
    out.push_back(verify::classical_fresnel_check({0, -1, 1, 0}, {verify::FresnelInput::Kind::ground, 0.0}, grids, 1e-4));
    return out;
}

}  // namespace

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> ids = {
        "eigen_residual:icms",   "eigen_residual:imcs",      "eigen_residual:ices",
        "eigen_residual:kappa",  "eigen_convergence",        "fresnel_defining:icms",
        "fresnel_defining:imcs", "ices_methods:zeta",        "ices_methods:kappa",
        "degenerate_limits",     "overlap_factorization",    "nascent_delta",
        "completeness",          "conjugate_commutator",     "squeeze_operator",
        "squeeze_generator",     "squeeze_heisenberg",       "identity:exp_coordinate",
        "identity:exp_momentum", "identity:gaussian_coordinate", "identity:power_coordinate",
        "hermite",               "classical_fresnel",        "schmidt",
        "gaussian_integrals",
    };
    return ids;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::string section;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw UsageError("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
        kv[section.empty() ? key : section + "." + key] = val;
    }
    return kv;
}

void apply_config(RunConfig& c, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, v] : kv) {
        const auto dot = key.find('.');
        const std::string sec = dot == std::string::npos ? "" : key.substr(0, dot);
        const std::string f = dot == std::string::npos ? key : key.substr(dot + 1);
        bool ok = true;
        if (sec.empty()) {
            if (f == "suites") c.suites = v == "all" ? known_suites() : split(v, ',');
            else if (f == "cutoff") c.cutoff = to_int(key, v);
            else if (f == "single_cutoff") c.single_cutoff = to_int(key, v);
            else if (f == "k") c.k = to_int(key, v);
            else if (f == "seed") c.seed = static_cast<unsigned long long>(to_double(key, v));
            else if (f == "strict") c.strict = to_bool(key, v);
            else if (f == "reproducible") c.reproducible = to_bool(key, v);
            else if (f == "workers") c.workers = to_int(key, v);
            else if (f == "memory_limit_mb") c.memory_limit_mb = to_double(key, v);
            else if (f == "out") c.out_path = v;
            else if (f == "format") {
                if (v == "json") c.format = Format::json;
                else if (v == "csv") c.format = Format::csv;
                else throw UsageError("config field 'format': expected json or csv, got '" + v + "'");
            } else ok = false;
        } else if (sec == "rays") ok = apply_ray_key(c.rays, f, key, v);
        else if (sec == "fresnel") ok = apply_ray_key(c.fresnel_rays, f, key, v);
        else if (sec == "classical") ok = apply_ray_key(c.classical_rays, f, key, v);
        else if (sec == "identities") {
            if (f == "cutoff") c.identity_cutoff = to_int(key, v);
            else if (f == "samples") c.identity_samples = to_int(key, v);
            else ok = apply_ray_key(c.identity_rays, f, key, v);
        } else if (sec == "labels") {
            if (f == "z") c.z_values = to_complexes(key, v);
            else if (f == "q") c.q_values = to_doubles(key, v);
            else if (f == "lambda") c.lambda_values = to_doubles(key, v);
            else if (f == "y") c.y_values = to_doubles(key, v);
            else if (f == "n") c.n_values = to_ints(key, v);
            else ok = false;
        } else if (sec == "conjugacy" && f == "cutoff") c.conjugate_cutoff = to_int(key, v);
        else if (sec == "nascent" && f == "cutoffs") c.nascent_cutoffs = to_ints(key, v);
        else if (sec == "convergence" && f == "cutoffs") c.convergence_cutoffs = to_ints(key, v);
        else if (sec == "schmidt" && f == "cutoff") c.schmidt_cutoff = to_int(key, v);
        else if (sec == "gaussian" && f == "count") c.gaussian_count = to_int(key, v);
        else if (sec == "completeness") {
            if (f == "cutoff") c.completeness_cutoff = to_int(key, v);
            else if (f == "k") c.completeness_k = to_int(key, v);
            else if (f == "refinements") c.completeness_refinements = to_int(key, v);
            else if (f == "L") c.scheme.L = to_double(key, v);
            else if (f == "q_order") c.scheme.q_order = to_int(key, v);
            else if (f == "R") c.scheme.R = to_double(key, v);
            else if (f == "n_radial") c.scheme.n_radial = to_int(key, v);
            else if (f == "n_angular") c.scheme.n_angular = to_int(key, v);
            else if (f == "ray") c.completeness_ray = to_ray(key, v);
            else ok = false;
        } else if (sec == "tolerances") {
            if (f == "strict") c.tolerances.strict = to_double(key, v);
            else if (f == "standard") c.tolerances.standard = to_double(key, v);
            else if (f == "quadrature") c.tolerances.quadrature = to_double(key, v);
            else ok = false;
        } else ok = false;
        if (!ok) throw UsageError("unknown config field '" + key + "'");
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    RunConfig c;
    c.suites = known_suites();
    apply_config(c, parse_config_text(ss.str()));
    return c;
}

void validate(const RunConfig& c) {
    for (const auto& s : c.suites)
        if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
            throw UsageError("unknown suite id '" + s + "'");
    auto positive = [](const std::string& name, double v) {
        if (!(v > 0)) throw UsageError("config field '" + name + "' must be positive");
    };
    positive("cutoff", c.cutoff);
    positive("single_cutoff", c.single_cutoff);
    positive("tolerances.strict", c.tolerances.strict);
    positive("tolerances.standard", c.tolerances.standard);
    positive("tolerances.quadrature", c.tolerances.quadrature);
    positive("workers", c.workers);
    positive("memory_limit_mb", c.memory_limit_mb);
    positive("completeness.L", c.scheme.L);
    positive("completeness.R", c.scheme.R);
    positive("completeness.q_order", c.scheme.q_order);
    positive("completeness.n_radial", c.scheme.n_radial);
    positive("completeness.n_angular", c.scheme.n_angular);
    if (c.k >= c.cutoff) throw UsageError("config field 'k' must be below the cutoff");
    for (const auto* src : {&c.rays, &c.fresnel_rays, &c.classical_rays, &c.identity_rays}) {
        if (src->random && src->count < 0) throw UsageError("ray count must be non-negative");
        check_rays("config rays", src->explicit_rays);
    }
    check_rays("completeness.ray", {c.completeness_ray});
    for (const auto& m : c.identity_rays.explicit_rays)
        if (m.D * m.D + m.B * m.B > 4.0) throw UsageError("identities.values: D^2 + B^2 must stay <= 4");
    for (double y : c.y_values)
        if (!(y > 0.0 && y <= 0.2)) throw UsageError("labels.y: values must lie in (0, 0.2]");
    for (int n : c.n_values)
        if (n < 0 || n > 6) throw UsageError("labels.n: values must lie in 0..6");
    for (cplx z : c.z_values)
        if (std::abs(z) > 3.0) throw UsageError("labels.z: |z| must stay <= 3");
}

nlohmann::json config_json(const RunConfig& c) {
    nlohmann::json z = nlohmann::json::array();
    for (cplx v : c.z_values) z.push_back(verify::complex_json(v));
    return {{"suites", c.suites},
            {"cutoff", c.cutoff},
            {"single_cutoff", c.single_cutoff},
            {"k", c.block()},
            {"seed", c.seed},
            {"rays", ray_source_json(c.rays)},
            {"fresnel", ray_source_json(c.fresnel_rays)},
            {"classical", ray_source_json(c.classical_rays)},
            {"identities",
             {{"rays", ray_source_json(c.identity_rays)}, {"cutoff", c.identity_cutoff}, {"samples", c.identity_samples}}},
            {"labels",
             {{"z", z}, {"q", c.q_values}, {"lambda", c.lambda_values}, {"y", c.y_values}, {"n", c.n_values}}},
            {"conjugacy", {{"cutoff", c.conjugate_cutoff}}},
            {"nascent", {{"cutoffs", c.nascent_cutoffs}}},
            {"convergence", {{"cutoffs", c.convergence_cutoffs}}},
            {"schmidt", {{"cutoff", c.schmidt_cutoff}}},
            {"gaussian", {{"count", c.gaussian_count}}},
            {"completeness",
             {{"cutoff", c.completeness_cutoff},
              {"k", c.completeness_k},
              {"refinements", c.completeness_refinements},
              {"scheme", c.scheme.to_json()},
              {"ray", verify::ray_json(c.completeness_ray)}}},
            {"tolerances",
             {{"strict", c.tolerances.strict}, {"standard", c.tolerances.standard}, {"quadrature", c.tolerances.quadrature}}},
            {"strict", c.strict},
            {"reproducible", c.reproducible},
            {"branches", "principal square roots and logarithms"},
            {"hbar", 1}};
}

double estimated_peak_bytes(const RunConfig& c) {
    int n = std::max({c.cutoff, c.identity_cutoff, c.conjugate_cutoff, c.completeness_cutoff, c.schmidt_cutoff,
                      2 * c.block() + 2});
    for (int v : c.nascent_cutoffs) n = std::max(n, v);
    for (int v : c.convergence_cutoffs) n = std::max(n, v);
    const double dim = double(n + 1) * (n + 1);
    // a handful of dense complex operators live at once
    return 8.0 * dim * dim * 16.0;
}

std::vector<ResidualRecord> run_one(const std::string& id, const RunConfig& cfg) {
    std::vector<ResidualRecord> out;
    const unsigned long long seed = cfg.seed;
    if (id == "eigen_residual:icms") out = eigen_suite(StateKind::icms, cfg);
    else if (id == "eigen_residual:imcs") out = eigen_suite(StateKind::imcs, cfg);
    else if (id == "eigen_residual:ices") out = eigen_suite(StateKind::ices, cfg);
    else if (id == "eigen_residual:kappa") out = eigen_suite(StateKind::kappa, cfg);
    else if (id == "eigen_convergence") {
        const auto rays = draw_rays(cfg.rays, seed, 0);
        const RayMatrix m = rays.empty() ? RayMatrix{} : rays.front();
        const cplx z = cfg.z_values.empty() ? 0.0 : cfg.z_values.back();
        const double x = cfg.q_values.empty() ? 0.0 : cfg.q_values.back();
        out.push_back(verify::eigen_convergence(StateKind::ices, {z, x, m}, cfg.convergence_cutoffs));
        out.push_back(verify::eigen_convergence(StateKind::kappa, {z, x, m}, cfg.convergence_cutoffs));
    } else if (id == "fresnel_defining:icms") out = fresnel_suite(StateKind::icms, cfg);
    else if (id == "fresnel_defining:imcs") out = fresnel_suite(StateKind::imcs, cfg);
    else if (id == "ices_methods:zeta") out = methods_suite(StateKind::ices, cfg);
    else if (id == "ices_methods:kappa") out = methods_suite(StateKind::kappa, cfg);
    else if (id == "degenerate_limits") {
        const cplx z = cfg.z_values.empty() ? 0.0 : cfg.z_values.back();
        out = verify::degenerate_limits(0.5, z, cfg.single_cutoff, cfg.cutoff);
    } else if (id == "overlap_factorization") {
        const auto s2 = fock::make_space(2, cfg.cutoff);
        const std::vector<std::tuple<cplx, double, cplx, double>> labels = {
            {0.7, 0.3, 0.7, 0.9}, {0.5, 0.3, cplx(0.0, 0.2), 0.9}, {cplx(-0.3, 0.4), -0.6, 0.5, 0.0}};
        for (const auto& m : with_identity(draw_rays(cfg.rays, seed, 0)))
            for (const auto& [z, q, zp, qp] : labels) out.push_back(verify::overlap_factorization(z, q, zp, qp, m, s2));
    } else if (id == "nascent_delta") {
        append(out, verify::nascent_delta_records({1, 0, 0, 1}, cfg.nascent_cutoffs));
        for (const auto& m : draw_rays(cfg.rays, seed, 0)) {
            append(out, verify::nascent_delta_records(m, cfg.nascent_cutoffs));
            break;
        }
    } else if (id == "completeness") {
        const auto s2 = fock::make_space(2, cfg.completeness_cutoff);
        out.push_back(verify::completeness_check(cfg.completeness_ray, cfg.scheme, s2, cfg.completeness_k));
        out.push_back(verify::completeness_check(cfg.completeness_ray, cfg.scheme, s2, 0));
        out.push_back(verify::completeness_refinement(cfg.completeness_ray, cfg.scheme, s2, cfg.completeness_k,
                                                      cfg.completeness_refinements));
    } else if (id == "conjugate_commutator") {
        const auto s2 = fock::make_space(2, cfg.conjugate_cutoff);
        const int k = cfg.conjugate_cutoff / 2;
        for (const auto& m : with_identity(draw_rays(cfg.rays, seed, 0)))
            out.push_back(verify::conjugate_commutator_check(m, s2, k));
        out.push_back(verify::conjugate_negative_control({1, 0, 0, 2}, s2, k));
    } else if (id == "squeeze_operator" || id == "squeeze_generator" || id == "squeeze_heisenberg") {
        out = squeeze_suite(id, cfg);
    } else if (id == "identity:exp_coordinate") out = identity_suite(verify::IdentityId::exp_coordinate, cfg);
    else if (id == "identity:exp_momentum") out = identity_suite(verify::IdentityId::exp_momentum, cfg);
    else if (id == "identity:gaussian_coordinate") out = identity_suite(verify::IdentityId::gaussian_coordinate, cfg);
    else if (id == "identity:power_coordinate") out = identity_suite(verify::IdentityId::power_coordinate, cfg);
    else if (id == "hermite") out.push_back(verify::hermite_generating_check(12, 20, seed));
    else if (id == "classical_fresnel") out = classical_suite(cfg);
    else if (id == "schmidt") {
        const auto s2 = fock::make_space(2, cfg.schmidt_cutoff);
        out.push_back(verify::schmidt_witness({0.0, 0.0, FresnelParams{}}, s2, 0.1));
        for (const auto& m : draw_rays(cfg.rays, seed, 0))
            out.push_back(verify::schmidt_witness({0.5, 1.0, gaussian::fresnel_params_from_ray(m)}, s2, 0.1));
        out.push_back(verify::schmidt_product(0.5, cplx(0.0, -0.3), s2));
    } else if (id == "gaussian_integrals") {
        out.push_back(verify::gaussian_integral_2d_check(cfg.gaussian_count, seed));
        out.push_back(verify::gaussian_integral_1d_check(cfg.gaussian_count, seed + 1));
        out.push_back(verify::planar_integral_check(cfg.gaussian_count, seed + 2));
        out.push_back(verify::convergence_validator_check());
    } else {
        throw UsageError("unknown suite id '" + id + "'");
    }
    for (auto& r : out) verify::apply_tolerances(r, cfg.tolerances);
    return out;
}

bool record_counts(const ResidualRecord& r, bool strict) { return strict || r.tier != Tier::info; }

VerificationReport run_suite(const RunConfig& cfg) {
    validate(cfg);
    if (estimated_peak_bytes(cfg) > cfg.memory_limit_mb * 1024.0 * 1024.0) {
        std::ostringstream msg;
        msg << "requested dimensions need about " << estimated_peak_bytes(cfg) / (1024.0 * 1024.0)
            << " MB, above memory_limit_mb = " << cfg.memory_limit_mb;
        throw ResourceError(msg.str());
    }
    VerificationReport rep;
    rep.config = cfg;
    rep.suites.resize(cfg.suites.size());
    auto job = [&cfg](const std::string& id) {
        SuiteResult r;
        r.id = id;
        const auto t0 = std::chrono::steady_clock::now();
        r.records = run_one(id, cfg);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };
    const size_t workers = static_cast<size_t>(std::max(1, cfg.workers));
    for (size_t start = 0; start < cfg.suites.size(); start += workers) {
        std::vector<std::future<SuiteResult>> batch;
        for (size_t i = start; i < std::min(cfg.suites.size(), start + workers); ++i)
            batch.push_back(std::async(workers == 1 ? std::launch::deferred : std::launch::async, job, cfg.suites[i]));
        for (size_t i = 0; i < batch.size(); ++i) rep.suites[start + i] = batch[i].get();
    }
    rep.pass = true;
    for (const auto& s : rep.suites)
        for (const auto& r : s.records)
            if (record_counts(r, cfg.strict) && !r.pass) rep.pass = false;
    return rep;
}

nlohmann::json report_body(const VerificationReport& rep) {
    nlohmann::json suites = nlohmann::json::array();
    for (const auto& s : rep.suites) {
        nlohmann::json recs = nlohmann::json::array();
        for (const auto& r : s.records)
            recs.push_back({{"claim", r.claim},
                            {"params", r.params},
                            {"residual", r.residual},
                            {"norm_basis", r.norm_basis},
                            {"tier", verify::tier_name(r.tier)},
                            {"tolerance", r.tolerance},
                            {"verdict", r.pass ? "pass" : "fail"}});
        suites.push_back({{"id", s.id}, {"records", recs}});
    }
    return {{"version", kVersion},
            {"config", config_json(rep.config)},
            {"suites", suites},
            {"verdict", rep.pass ? "pass" : "fail"}};
}

nlohmann::json report_json(const VerificationReport& rep) {
    nlohmann::json j = report_body(rep);
    nlohmann::json t = nlohmann::json::object();
    double total = 0.0;
    for (const auto& s : rep.suites) {
        t[s.id] = s.seconds;
        total += s.seconds;
    }
    t["total"] = total;
    j["timings"] = t;
    return j;
}

std::string canonical_dump(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            std::string out = "{";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // object keys iterate sorted
                if (!first) out += ",";
                first = false;
                out += nlohmann::json(it.key()).dump() + ":" + canonical_dump(it.value());
            }
            return out + "}";
        }
        case nlohmann::json::value_t::array: {
            std::string out = "[";
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",";
                out += canonical_dump(j[i]);
            }
            return out + "]";
        }
        case nlohmann::json::value_t::number_float: {
            const double d = j.get<double>();
            if (std::isnan(d)) return "\"nan\"";
            if (std::isinf(d)) return d > 0 ? "\"inf\"" : "\"-inf\"";
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", d);
            return buf;
        }
        default:
            return j.dump();
    }
}

std::string csv_summary(const VerificationReport& rep) {
    std::string out = "suite,claim,residual,tolerance,verdict\n";
    char buf[64];
    for (const auto& s : rep.suites)
        for (const auto& r : s.records) {
            out += s.id + "," + r.claim + ",";
            std::snprintf(buf, sizeof buf, "%.17g", r.residual);
            out += buf;
            out += ",";
            std::snprintf(buf, sizeof buf, "%.17g", r.tolerance);
            out += buf;
            out += std::string(",") + (r.pass ? "pass" : "fail") + "\n";
        }
    return out;
}

void emit_report(const VerificationReport& rep, Format format, const std::string& path) {
    const std::string text = format == Format::json ? canonical_dump(report_json(rep)) + "\n" : csv_summary(rep);
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open report file '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing report file '" + path + "'");
}

}  // namespace ices::report
