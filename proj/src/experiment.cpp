#include "gwco/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "gwco/complex_text.hpp"
#include "gwco/errors.hpp"
#include "json.hpp"

namespace gwco {

namespace {

using njson = nlohmann::ordered_json;

std::string fmt15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string fmt_short(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

int parse_int_token(const std::string& tok) {
    int out = 0;
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), last, out);
    if (ec != std::errc{} || ptr != last) throw ConfigError("bad integer token '" + tok + "'");
    return out;
}

Verdict worse(Verdict a, Verdict b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

} // namespace

std::string to_string(SymbolSource source) {
    switch (source) {
    case SymbolSource::params: return "params";
    case SymbolSource::explicit_series: return "explicit";
    case SymbolSource::automorphism: return "automorphism";
    }
    return "?";
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
    case Verdict::pass: return "pass";
    case Verdict::indeterminate: return "indeterminate";
    case Verdict::fail: return "fail";
    }
    return "?";
}

std::string to_string(OutputFormat format) {
    return format == OutputFormat::text ? "text" : "json";
}

SymbolSource symbol_source_from_string(const std::string& name) {
    if (name == "params") return SymbolSource::params;
    if (name == "explicit") return SymbolSource::explicit_series;
    if (name == "automorphism") return SymbolSource::automorphism;
    throw ConfigError("source: unknown symbol source '" + name +
                      "' (expected params | explicit | automorphism)");
}

OutputFormat output_format_from_string(const std::string& name) {
    if (name == "text") return OutputFormat::text;
    if (name == "json") return OutputFormat::json;
    throw ConfigError("format: unknown output format '" + name + "' (expected text | json)");
}

const std::vector<std::string>& known_defects() {
    static const std::vector<std::string> names = {"symmetry", "hermitian", "normality",
                                                   "adjoint_kernel"};
    return names;
}

ToleranceBand default_band(const std::string& defect) {
    if (defect == "symmetry" || defect == "hermitian") return {1e-10, 1e-4};
    if (defect == "normality" || defect == "adjoint_kernel") return {1e-8, 1e-4};
    throw ConfigError("defects: unknown defect '" + defect + "'");
}

void ExperimentConfig::validate() {
    if (m < 0 || m > 12) throw ConfigError("m: must lie in [0, 12]");
    if (source != SymbolSource::explicit_series && m < 1)
        throw ConfigError("m: the " + to_string(source) + " source requires m >= 1");
    if (n < m + 4) throw ConfigError("n: must be at least m + 4");
    if (n > 128) throw ConfigError("n: truncation orders above 128 are not supported");

    if (space == SpaceKind::custom) {
        if (custom_betas.empty()) throw ConfigError("custom_betas: required when space = custom");
        if (static_cast<int>(custom_betas.size()) != n + 1)
            throw ConfigError("custom_betas: must list beta(0..N), expected " +
                              std::to_string(n + 1) + " values");
        try {
            make_custom_weights(custom_betas);
        } catch (const Error& e) {
            throw ConfigError(std::string("custom_betas: ") + e.what());
        }
    } else if (!custom_betas.empty()) {
        throw ConfigError("custom_betas: only apply when space = custom");
    }

    if (!is_finite(w)) throw ConfigError("w: must be finite");
    if (std::abs(std::abs(w) - 1.0) > 1e-12)
        throw ConfigError("w must be unimodular (| |w| - 1 | <= 1e-12)");

    switch (source) {
    case SymbolSource::params:
        if (!is_finite(a0) || !is_finite(a1) || !is_finite(a2))
            throw ConfigError("a0/a1/a2: must be finite");
        if (std::abs(a0) >= 1.0) throw ConfigError("a0: must lie in the open unit disc");
        if (a2 == cplx(0.0)) throw ConfigError("a2: must be nonzero");
        if (!phi_coeffs.empty() || !psi_coeffs.empty())
            throw ConfigError("phi/psi: coefficient lists require source = explicit");
        if (auto_lambda.has_value())
            throw ConfigError("lambda: the override applies only to source = automorphism");
        break;
    case SymbolSource::explicit_series: {
        if (phi_coeffs.empty()) throw ConfigError("phi: coefficient list required and nonempty");
        if (psi_coeffs.empty()) throw ConfigError("psi: coefficient list required and nonempty");
        if (static_cast<int>(phi_coeffs.size()) > n + 1 ||
            static_cast<int>(psi_coeffs.size()) > n + 1)
            throw ConfigError("phi/psi: more coefficients than the truncation order admits");
        for (const cplx& c : phi_coeffs)
            if (!is_finite(c)) throw ConfigError("phi: coefficients must be finite");
        for (const cplx& c : psi_coeffs)
            if (!is_finite(c)) throw ConfigError("psi: coefficients must be finite");
        if (std::abs(phi_coeffs.front()) > 1.0 + 1e-12)
            throw ConfigError("phi: constant term must stay in the closed unit disc");
        if (auto_lambda.has_value())
            throw ConfigError("lambda: the override applies only to source = automorphism");
        break;
    }
    case SymbolSource::automorphism:
        if (!is_finite(auto_a)) throw ConfigError("a: must be finite");
        if (std::abs(auto_a) >= 1.0) throw ConfigError("a: must lie in the open unit disc");
        if (!is_finite(a2) || a2 == cplx(0.0)) throw ConfigError("a2: must be finite and nonzero");
        if (auto_lambda.has_value()) {
            if (auto_a != cplx(0.0))
                throw ConfigError("lambda: the override applies only when a = 0");
            if (!is_finite(*auto_lambda) || std::abs(std::abs(*auto_lambda) - 1.0) > 1e-12)
                throw ConfigError("lambda: must be unimodular");
        }
        if (!phi_coeffs.empty() || !psi_coeffs.empty())
            throw ConfigError("phi/psi: coefficient lists require source = explicit");
        break;
    }

    if (!is_finite(alpha)) throw ConfigError("alpha: must be finite");
    if (std::abs(alpha) >= 1.0) throw ConfigError("alpha: must lie in the open unit disc");

    if (defects.empty()) throw ConfigError("defects: at least one defect must be selected");
    for (const std::string& name : defects) {
        if (std::find(known_defects().begin(), known_defects().end(), name) ==
            known_defects().end())
            throw ConfigError("defects: unknown defect '" + name + "'");
        if (std::count(defects.begin(), defects.end(), name) != 1)
            throw ConfigError("defects: '" + name + "' listed more than once");
        if (!bands.count(name)) bands[name] = default_band(name);
        const ToleranceBand& band = bands.at(name);
        if (!(band.pass > 0.0) || !(band.fail > 0.0))
            throw ConfigError("tolerances: bands for '" + name + "' must be positive");
        if (band.pass > band.fail)
            throw ConfigError("tolerances: pass threshold for '" + name +
                              "' exceeds the fail threshold");
    }

    if (margin < 0 || margin >= n) throw ConfigError("margin: must lie in [0, N)");
    if (jobs < 1 || jobs > 256) throw ConfigError("jobs: must lie in [1, 256]");
}

Verdict ExperimentReport::aggregate() const {
    if (!valid()) return Verdict::fail;
    Verdict v = Verdict::pass;
    for (const DefectResult& d : defects) v = worse(v, d.verdict);
    return v;
}

namespace {

struct BuiltSymbols {
    TruncatedSeries phi;
    TruncatedSeries psi;
};

BuiltSymbols build_symbols(const ExperimentConfig& config, const WeightSequence& weights,
                           ExperimentReport& report) {
    switch (config.source) {
    case SymbolSource::params: {
        const SymbolParams params{config.m, config.w, config.a0, config.a1, config.a2};
        SymbolPair pair = symmetric_symbols(params, weights);
        const std::vector<cplx> cs = qp_coefficients(params, weights);
        const int keep = std::min<int>(8, static_cast<int>(cs.size()));
        report.c_coeffs.assign(cs.begin(), cs.begin() + keep);
        report.obstruction = symmetry_obstruction(params, weights);
        report.hermitian_expected = hermitian_conditions(params).all();
        if (config.a1 == cplx(0.0)) report.normal_expected = normal_constant_condition(params);
        return {std::move(pair.phi), std::move(pair.psi)};
    }
    case SymbolSource::explicit_series: {
        TruncatedSeries phi = retruncate(TruncatedSeries(config.phi_coeffs), weights.order());
        TruncatedSeries psi = retruncate(TruncatedSeries(config.psi_coeffs), weights.order());
        return {std::move(phi), std::move(psi)};
    }
    case SymbolSource::automorphism: {
        AutomorphismSymbols aut =
            automorphism_symbols(config.auto_a, config.w, config.m, weights, config.auto_lambda);
        report.lambda = aut.lambda;
        report.lambda_gap = aut.unimodularity_gap;
        // The matching multiplier completes the pair the same way the params
        // source does, seeded with phi(0) = lambda * a and the configured a2.
        const cplx a0 = aut.phi[0];
        const double bm = weights.beta(config.m);
        const double mf = factorial(config.m);
        TruncatedSeries psi = scale(derivative_kernel(config.w * std::conj(a0), config.m, weights).series,
                                    bm * bm * config.a2 / (mf * mf));
        return {std::move(aut.phi), std::move(psi)};
    }
    }
    throw ConfigError("source: unknown symbol source");
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& config_in) {
    ExperimentConfig config = config_in;
    config.validate();

    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.config = config;

    const WeightSequence weights = config.space == SpaceKind::custom
                                       ? make_custom_weights(config.custom_betas)
                                       : make_weights(config.space, config.n);

    BuiltSymbols symbols = build_symbols(config, weights, report);
    const OperatorMatrix matrix = build_matrix(symbols.phi, symbols.psi, config.m, weights);
    report.tail_bound = matrix.meta.tail_bound;
    report.boundary_fixed_point = matrix.meta.boundary_fixed_point;

    for (const std::string& name : config.defects) {
        double value = 0.0;
        if (name == "symmetry") {
            value = symmetry_defect(matrix, Conjugation(config.w));
        } else if (name == "hermitian") {
            value = hermitian_defect(matrix);
        } else if (name == "normality") {
            value = normality_defect(matrix, config.margin);
        } else {
            value = adjoint_kernel_defect(symbols.phi, symbols.psi, config.m, config.alpha, weights);
        }
        if (!std::isfinite(value)) throw NonFiniteError("defect '" + name + "' evaluated non-finite");
        const ToleranceBand band = config.bands.at(name);
        const Verdict verdict = value < band.pass  ? Verdict::pass
                                : value > band.fail ? Verdict::fail
                                                    : Verdict::indeterminate;
        report.defects.push_back({name, value, verdict});
    }

    report.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

namespace {

ExperimentConfig config_for_point(const ExperimentConfig& base, const std::string& axis,
                                  const std::string& value) {
    ExperimentConfig point = base;
    if (axis == "a0") {
        point.a0 = parse_complex(value);
    } else if (axis == "a1") {
        point.a1 = parse_complex(value);
    } else if (axis == "a2") {
        point.a2 = parse_complex(value);
    } else if (axis == "w") {
        point.w = parse_complex(value);
    } else if (axis == "a") {
        point.auto_a = parse_complex(value);
    } else if (axis == "m") {
        point.m = parse_int_token(value);
    } else { // N
        point.n = parse_int_token(value);
    }
    return point;
}

} // namespace

ScanResult scan_grid(const ExperimentConfig& base_in, const std::string& axis,
                     const std::vector<std::string>& values) {
    ExperimentConfig base = base_in;
    base.validate();

    const bool axis_known = axis == "a0" || axis == "a1" || axis == "a2" || axis == "w" ||
                            axis == "m" || axis == "N" || axis == "n" || axis == "a";
    if (!axis_known)
        throw ConfigError("axis: must be one of a0, a1, a2, w, m, N, a");
    const std::string axis_name = axis == "n" ? "N" : axis;
    if ((axis_name == "a0" || axis_name == "a1" || axis_name == "a2") &&
        base.source != SymbolSource::params)
        throw ConfigError("axis: " + axis_name + " varies only under source = params");
    if (axis_name == "a" && base.source != SymbolSource::automorphism)
        throw ConfigError("axis: a varies only under source = automorphism");

    ScanResult scan;
    scan.axis = axis_name;
    scan.point_values = values;
    scan.reports.resize(values.size());

    auto evaluate = [&](size_t i) {
        try {
            scan.reports[i] = run_experiment(config_for_point(base, axis_name, values[i]));
        } catch (const std::exception& e) {
            scan.reports[i] = ExperimentReport{};
            scan.reports[i].error = e.what();
        }
    };

    const int jobs = std::min<int>(base.jobs, static_cast<int>(values.size()) > 0
                                                  ? static_cast<int>(values.size())
                                                  : 1);
    if (jobs <= 1) {
        for (size_t i = 0; i < values.size(); ++i) evaluate(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(jobs));
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < values.size(); i = next.fetch_add(1))
                    evaluate(i);
            });
        for (std::thread& t : pool) t.join();
    }

    scan.summary.axis = axis_name;
    scan.summary.points = static_cast<int>(values.size());
    Verdict verdict = Verdict::pass;
    for (const ExperimentReport& rep : scan.reports) {
        if (!rep.valid()) {
            verdict = Verdict::fail;
            continue;
        }
        ++scan.summary.valid;
        verdict = worse(verdict, rep.aggregate());
        for (const DefectResult& d : rep.defects) {
            auto it = scan.summary.defect_ranges.find(d.name);
            if (it == scan.summary.defect_ranges.end()) {
                scan.summary.defect_ranges.emplace(d.name, std::make_pair(d.value, d.value));
            } else {
                it->second.first = std::min(it->second.first, d.value);
                it->second.second = std::max(it->second.second, d.value);
            }
        }
    }
    scan.summary.verdict = verdict;
    return scan;
}

int exit_code(const ExperimentReport& report) {
    return report.aggregate() == Verdict::pass ? 0 : 1;
}

int exit_code(const ScanResult& scan) {
    return scan.summary.verdict == Verdict::pass ? 0 : 1;
}

namespace {

njson config_to_json(const ExperimentConfig& config) {
    njson j;
    j["space"] = to_string(config.space);
    if (config.space == SpaceKind::custom) j["custom_betas"] = config.custom_betas;
    j["n"] = config.n;
    j["m"] = config.m;
    j["w"] = format_complex(config.w);
    j["source"] = to_string(config.source);
    switch (config.source) {
    case SymbolSource::params:
        j["a0"] = format_complex(config.a0);
        j["a1"] = format_complex(config.a1);
        j["a2"] = format_complex(config.a2);
        break;
    case SymbolSource::explicit_series: {
        njson phi = njson::array();
        for (const cplx& c : config.phi_coeffs) phi.push_back(format_complex(c));
        njson psi = njson::array();
        for (const cplx& c : config.psi_coeffs) psi.push_back(format_complex(c));
        j["phi"] = std::move(phi);
        j["psi"] = std::move(psi);
        break;
    }
    case SymbolSource::automorphism:
        j["a"] = format_complex(config.auto_a);
        if (config.auto_lambda) j["lambda"] = format_complex(*config.auto_lambda);
        j["a2"] = format_complex(config.a2);
        break;
    }
    j["alpha"] = format_complex(config.alpha);
    j["defects"] = config.defects;
    njson tolerances;
    for (const std::string& name : config.defects) {
        const ToleranceBand& band = config.bands.at(name);
        tolerances[name] = {{"pass", band.pass}, {"fail", band.fail}};
    }
    j["tolerances"] = std::move(tolerances);
    j["margin"] = config.margin;
    j["jobs"] = config.jobs;
    return j;
}

njson report_to_json(const ExperimentReport& report) {
    njson j;
    j["schema"] = "gwco-report-v1";
    if (!report.valid()) {
        j["error"] = report.error;
        j["verdict"] = "invalid";
        return j;
    }
    j["config"] = config_to_json(report.config);
    njson defects;
    for (const DefectResult& d : report.defects)
        defects[d.name] = {{"value", d.value}, {"verdict", to_string(d.verdict)}};
    j["defects"] = std::move(defects);
    njson derived;
    derived["tail_bound"] = report.tail_bound;
    derived["boundary_fixed_point"] = report.boundary_fixed_point;
    if (!report.c_coeffs.empty()) {
        njson cs = njson::array();
        for (const cplx& c : report.c_coeffs) cs.push_back(format_complex(c));
        derived["c"] = std::move(cs);
    }
    if (report.obstruction) derived["obstruction"] = format_complex(*report.obstruction);
    if (report.hermitian_expected) derived["hermitian_expected"] = *report.hermitian_expected;
    if (report.normal_expected) derived["normal_expected"] = *report.normal_expected;
    if (report.lambda) derived["lambda"] = format_complex(*report.lambda);
    if (report.lambda_gap) derived["lambda_gap"] = *report.lambda_gap;
    j["derived"] = std::move(derived);
    j["verdict"] = to_string(report.aggregate());
    j["exit_code"] = exit_code(report);
    j["duration_ms"] = report.duration_ms;
    return j;
}

std::string describe_source(const ExperimentConfig& config) {
    std::ostringstream out;
    out << to_string(config.source);
    switch (config.source) {
    case SymbolSource::params:
        out << "  a0=" << format_complex(config.a0) << "  a1=" << format_complex(config.a1)
            << "  a2=" << format_complex(config.a2);
        break;
    case SymbolSource::explicit_series:
        out << "  deg(phi)=" << config.phi_coeffs.size() - 1
            << "  deg(psi)=" << config.psi_coeffs.size() - 1;
        break;
    case SymbolSource::automorphism:
        out << "  a=" << format_complex(config.auto_a) << "  a2=" << format_complex(config.a2);
        if (config.auto_lambda) out << "  lambda=" << format_complex(*config.auto_lambda);
        break;
    }
    return out.str();
}

void append_defect_table(std::ostringstream& out, const ExperimentReport& report) {
    out << "defect            value                      verdict\n";
    for (const DefectResult& d : report.defects) {
        char line[128];
        std::snprintf(line, sizeof line, "%-17s %-26s %s\n", d.name.c_str(),
                      fmt15(d.value).c_str(), to_string(d.verdict).c_str());
        out << line;
    }
}

} // namespace

std::string render_text(const ExperimentReport& report) {
    std::ostringstream out;
    if (!report.valid()) {
        out << "invalid: " << report.error << "\n";
        return out.str();
    }
    const ExperimentConfig& config = report.config;
    out << "space       : " << to_string(config.space) << "  (N=" << config.n
        << ", m=" << config.m << ")\n";
    out << "w           : " << format_complex(config.w) << "\n";
    out << "source      : " << describe_source(config) << "\n";
    out << "alpha       : " << format_complex(config.alpha) << "\n";
    out << "margin      : " << config.margin << "\n";
    out << "tail bound  : " << fmt_short(report.tail_bound) << "\n";
    if (report.boundary_fixed_point) out << "note        : phi fixes a boundary point\n";
    if (!report.c_coeffs.empty()) {
        out << "c           :";
        for (size_t i = 0; i < report.c_coeffs.size(); ++i)
            out << " c" << i + 1 << "=" << format_complex(report.c_coeffs[i]);
        out << "\n";
    }
    if (report.obstruction)
        out << "obstruction : " << format_complex(*report.obstruction) << "\n";
    if (report.hermitian_expected)
        out << "hermitian conditions hold : " << (*report.hermitian_expected ? "yes" : "no") << "\n";
    if (report.normal_expected)
        out << "normal constant condition : " << (*report.normal_expected ? "yes" : "no") << "\n";
    if (report.lambda) {
        out << "lambda      : " << format_complex(*report.lambda);
        if (report.lambda_gap) out << "  | |lambda|-1 | = " << fmt_short(*report.lambda_gap);
        out << "\n";
    }
    out << "\n";
    append_defect_table(out, report);
    out << "\noverall: " << to_string(report.aggregate()) << "\n";
    char dur[64];
    std::snprintf(dur, sizeof dur, "duration: %.3f ms\n", report.duration_ms);
    out << dur;
    return out.str();
}

std::string render_json(const ExperimentReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

std::string render_scan_text(const ScanResult& scan) {
    std::ostringstream out;
    out << "scan axis=" << scan.axis << "  points=" << scan.summary.points
        << "  valid=" << scan.summary.valid << "\n\n";
    const std::vector<std::string>* names = &known_defects();
    for (const ExperimentReport& rep : scan.reports) {
        if (rep.valid()) {
            names = &rep.config.defects;
            break;
        }
    }
    char line[512];
    std::snprintf(line, sizeof line, "%-5s %-14s", "idx", scan.axis.c_str());
    out << line;
    for (const std::string& name : *names) {
        std::snprintf(line, sizeof line, " %-24s", name.c_str());
        out << line;
    }
    out << " verdict\n";
    for (size_t i = 0; i < scan.reports.size(); ++i) {
        const ExperimentReport& rep = scan.reports[i];
        std::snprintf(line, sizeof line, "%-5zu %-14s", i, scan.point_values[i].c_str());
        out << line;
        if (!rep.valid()) {
            out << " invalid: " << rep.error << "\n";
            continue;
        }
        for (const DefectResult& d : rep.defects) {
            std::snprintf(line, sizeof line, " %-24s", fmt15(d.value).c_str());
            out << line;
        }
        out << " " << to_string(rep.aggregate()) << "\n";
    }
    if (scan.summary.valid > 0) {
        out << "\n";
        for (const char* which : {"min", "max"}) {
            std::snprintf(line, sizeof line, "%-5s %-14s", which, "");
            out << line;
            for (const std::string& name : *names) {
                const auto it = scan.summary.defect_ranges.find(name);
                const double v = it == scan.summary.defect_ranges.end() ? 0.0
                                 : std::string(which) == "min"          ? it->second.first
                                                                        : it->second.second;
                std::snprintf(line, sizeof line, " %-24s", fmt15(v).c_str());
                out << line;
            }
            out << "\n";
        }
    }
    out << "\noverall: " << to_string(scan.summary.verdict) << "\n";
    return out.str();
}

std::string render_scan_json(const ScanResult& scan) {
    njson arr = njson::array();
    for (size_t i = 0; i < scan.reports.size(); ++i) {
        njson j = report_to_json(scan.reports[i]);
        njson point;
        point["index"] = i;
        point["value"] = scan.point_values[i];
        j["point"] = std::move(point);
        arr.push_back(std::move(j));
    }
    if (!scan.reports.empty()) {
        njson summary;
        summary["schema"] = "gwco-scan-summary-v1";
        summary["axis"] = scan.axis;
        summary["points"] = scan.summary.points;
        summary["valid"] = scan.summary.valid;
        njson ranges;
        for (const auto& [name, range] : scan.summary.defect_ranges)
            ranges[name] = {{"min", range.first}, {"max", range.second}};
        summary["defects"] = std::move(ranges);
        summary["verdict"] = to_string(scan.summary.verdict);
        summary["exit_code"] = exit_code(scan);
        arr.push_back(std::move(summary));
    }
    return arr.dump(2) + "\n";
}

} // namespace gwco
