#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gwco/complex_text.hpp"
#include "gwco/errors.hpp"
#include "gwco/experiment.hpp"
#include "json.hpp"

namespace {

using gwco::ConfigError;
using gwco::cplx;
using gwco::ExperimentConfig;
using gwco::SymbolSource;
using gwco::ToleranceBand;

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string token;
    for (const char c : text) {
        if (c == ',') {
            out.push_back(token);
            token.clear();
        } else {
            token += c;
        }
    }
    if (!token.empty() || !out.empty()) out.push_back(token);
    // trim entries; an all-whitespace input collapses to an empty list
    for (std::string& t : out) {
        const size_t b = t.find_first_not_of(" \t");
        const size_t e = t.find_last_not_of(" \t");
        t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    }
    while (!out.empty() && out.back().empty()) out.pop_back();
    for (const std::string& t : out)
        if (t.empty()) throw ConfigError("empty entry in comma-separated list '" + text + "'");
    return out;
}

std::vector<cplx> parse_complex_list(const std::string& text) {
    std::vector<cplx> out;
    for (const std::string& tok : split_csv(text)) out.push_back(gwco::parse_complex(tok));
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const std::string& tok : split_csv(text)) {
        const cplx z = gwco::parse_complex(tok);
        if (z.imag() != 0.0) throw ConfigError("expected a real value, got '" + tok + "'");
        out.push_back(z.real());
    }
    return out;
}

std::vector<std::string> parse_defect_list(const std::string& text) {
    if (text == "all") return gwco::known_defects();
    return split_csv(text);
}

cplx complex_from_json(const nlohmann::json& j, const std::string& key) {
    if (j.is_string()) return gwco::parse_complex(j.get<std::string>());
    if (j.is_number()) return {j.get<double>(), 0.0};
    throw ConfigError(key + ": expected a number or a complex literal string");
}

struct FileExtras {
    std::string axis;
    std::vector<std::string> values;
    bool has_axis = false;
};

void apply_config_file(ExperimentConfig& cfg, const std::string& path, bool allow_scan_keys,
                       FileExtras& extras) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigError("config: parse failure in '" + path + "': " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");

    // Symbol source: explicit "source" key wins; otherwise inferred from which
    // parameter group the file mentions.
    const bool file_params = doc.contains("a0") || doc.contains("a1");
    const bool file_explicit = doc.contains("phi") || doc.contains("psi");
    const bool file_auto = doc.contains("a") || doc.contains("lambda");
    if (doc.contains("source")) {
        cfg.source = gwco::symbol_source_from_string(doc.at("source").get<std::string>());
    } else {
        if (file_params + file_explicit + file_auto > 1)
            throw ConfigError("config: exactly one symbol source may be present");
        if (file_params) cfg.source = SymbolSource::params;
        if (file_explicit) cfg.source = SymbolSource::explicit_series;
        if (file_auto) cfg.source = SymbolSource::automorphism;
    }

    for (const auto& [key, value] : doc.items()) {
        if (key == "space") {
            cfg.space = gwco::space_kind_from_string(value.get<std::string>());
        } else if (key == "custom_betas") {
            cfg.custom_betas = value.get<std::vector<double>>();
        } else if (key == "n") {
            cfg.n = value.get<int>();
        } else if (key == "m") {
            cfg.m = value.get<int>();
        } else if (key == "w") {
            cfg.w = complex_from_json(value, key);
        } else if (key == "source") {
            // handled above
        } else if (key == "a0") {
            cfg.a0 = complex_from_json(value, key);
        } else if (key == "a1") {
            cfg.a1 = complex_from_json(value, key);
        } else if (key == "a2") {
            cfg.a2 = complex_from_json(value, key);
        } else if (key == "phi" || key == "psi") {
            std::vector<cplx> coeffs;
            if (!value.is_array()) throw ConfigError(key + ": expected an array of coefficients");
            for (const auto& item : value) coeffs.push_back(complex_from_json(item, key));
            (key == "phi" ? cfg.phi_coeffs : cfg.psi_coeffs) = std::move(coeffs);
        } else if (key == "a") {
            cfg.auto_a = complex_from_json(value, key);
        } else if (key == "lambda") {
            cfg.auto_lambda = complex_from_json(value, key);
        } else if (key == "alpha") {
            cfg.alpha = complex_from_json(value, key);
        } else if (key == "defects") {
            if (value.is_string()) {
                cfg.defects = parse_defect_list(value.get<std::string>());
            } else {
                cfg.defects = value.get<std::vector<std::string>>();
            }
        } else if (key == "tolerances") {
            if (!value.is_object()) throw ConfigError("tolerances: expected an object");
            for (const auto& [name, band] : value.items()) {
                ToleranceBand b = gwco::default_band(name);
                if (band.contains("pass")) b.pass = band.at("pass").get<double>();
                if (band.contains("fail")) b.fail = band.at("fail").get<double>();
                cfg.bands[name] = b;
            }
        } else if (key == "margin") {
            cfg.margin = value.get<int>();
        } else if (key == "format") {
            cfg.format = gwco::output_format_from_string(value.get<std::string>());
        } else if (key == "jobs") {
            cfg.jobs = value.get<int>();
        } else if (key == "axis" && allow_scan_keys) {
            extras.axis = value.get<std::string>();
            extras.has_axis = true;
        } else if (key == "values" && allow_scan_keys) {
            extras.values.clear();
            for (const auto& item : value) {
                if (item.is_string()) {
                    extras.values.push_back(item.get<std::string>());
                } else if (item.is_number()) {
                    extras.values.push_back(item.dump());
                } else {
                    throw ConfigError("values: entries must be numbers or strings");
                }
            }
        } else {
            throw ConfigError("config: unknown field '" + key + "'");
        }
    }
}

struct Raw {
    std::string config_path;
    std::string space;
    std::string custom_betas;
    int n = 0;
    int m = 0;
    std::string w;
    std::string a0, a1, a2;
    std::string phi, psi;
    std::string auto_a, auto_lambda;
    std::string alpha;
    std::string defects;
    int margin = 0;
    double tol_pass = 0.0;
    double tol_fail = 0.0;
    std::string format;
    int jobs = 0;
    std::string axis;
    std::string values;
};

void add_common_options(CLI::App* sub, Raw& raw) {
    sub->add_option("--config", raw.config_path, "JSON config file; flags override its values");
    sub->add_option("--space", raw.space, "hardy | bergman | dirichlet | deriv_hardy | custom");
    sub->add_option("--custom-betas", raw.custom_betas,
                    "comma-separated beta(0..N) for --space custom");
    sub->add_option("--n", raw.n, "truncation order N (default 48)");
    sub->add_option("--m", raw.m, "derivative order m (default 1)");
    sub->add_option("--w", raw.w, "unimodular conjugation parameter, e.g. 1, i, exp:0.5");
    sub->add_option("--a0", raw.a0, "phi(0) for the params source");
    sub->add_option("--a1", raw.a1, "phi'(0) for the params source");
    sub->add_option("--a2", raw.a2, "psi^(m)(0) scale (params and automorphism sources)");
    sub->add_option("--phi", raw.phi, "comma-separated phi coefficients (explicit source)");
    sub->add_option("--psi", raw.psi, "comma-separated psi coefficients (explicit source)");
    sub->add_option("--auto-a", raw.auto_a, "automorphism parameter a, |a| < 1");
    sub->add_option("--auto-lambda", raw.auto_lambda, "unimodular lambda override when a = 0");
    sub->add_option("--alpha", raw.alpha, "kernel probe point for adjoint_kernel (default 0.3)");
    sub->add_option("--defects", raw.defects,
                    "comma-separated subset of symmetry,hermitian,normality,adjoint_kernel or 'all'");
    sub->add_option("--margin", raw.margin, "rows/columns trimmed by the normality defect (default 8)");
    sub->add_option("--tol-pass", raw.tol_pass, "pass threshold applied to every selected defect");
    sub->add_option("--tol-fail", raw.tol_fail, "fail threshold applied to every selected defect");
    sub->add_option("--format", raw.format, "text | json (default text)");
    sub->add_option("--jobs", raw.jobs, "worker threads for scans (default 1)");
}

ExperimentConfig build_config(const CLI::App* sub, const Raw& raw, bool allow_scan_keys,
                              FileExtras& extras) {
    ExperimentConfig cfg;
    if (sub->count("--config"))
        apply_config_file(cfg, raw.config_path, allow_scan_keys, extras);

    const bool flag_params = sub->count("--a0") || sub->count("--a1");
    const bool flag_explicit = sub->count("--phi") || sub->count("--psi");
    const bool flag_auto = sub->count("--auto-a") || sub->count("--auto-lambda");
    if (flag_params + flag_explicit + flag_auto > 1)
        throw ConfigError("flags select more than one symbol source; use exactly one of "
                          "--a0/--a1, --phi/--psi, --auto-a");
    const SymbolSource previous = cfg.source;
    if (flag_params) cfg.source = SymbolSource::params;
    if (flag_explicit) cfg.source = SymbolSource::explicit_series;
    if (flag_auto) cfg.source = SymbolSource::automorphism;
    if (cfg.source != previous) {
        // switching source drops fields that belong to the replaced one
        if (cfg.source != SymbolSource::explicit_series) {
            cfg.phi_coeffs.clear();
            cfg.psi_coeffs.clear();
        }
        if (cfg.source != SymbolSource::automorphism) cfg.auto_lambda.reset();
    }
    if (cfg.source == SymbolSource::explicit_series && sub->count("--a2"))
        throw ConfigError("a2: does not apply to source = explicit");

    if (sub->count("--space")) cfg.space = gwco::space_kind_from_string(raw.space);
    if (sub->count("--custom-betas")) cfg.custom_betas = parse_double_list(raw.custom_betas);
    if (sub->count("--n")) cfg.n = raw.n;
    if (sub->count("--m")) cfg.m = raw.m;
    if (sub->count("--w")) cfg.w = gwco::parse_complex(raw.w);
    if (sub->count("--a0")) cfg.a0 = gwco::parse_complex(raw.a0);
    if (sub->count("--a1")) cfg.a1 = gwco::parse_complex(raw.a1);
    if (sub->count("--a2")) cfg.a2 = gwco::parse_complex(raw.a2);
    if (sub->count("--phi")) cfg.phi_coeffs = parse_complex_list(raw.phi);
    if (sub->count("--psi")) cfg.psi_coeffs = parse_complex_list(raw.psi);
    if (sub->count("--auto-a")) cfg.auto_a = gwco::parse_complex(raw.auto_a);
    if (sub->count("--auto-lambda")) cfg.auto_lambda = gwco::parse_complex(raw.auto_lambda);
    if (sub->count("--alpha")) cfg.alpha = gwco::parse_complex(raw.alpha);
    if (sub->count("--defects")) cfg.defects = parse_defect_list(raw.defects);
    if (sub->count("--margin")) cfg.margin = raw.margin;
    if (sub->count("--format")) cfg.format = gwco::output_format_from_string(raw.format);
    if (sub->count("--jobs")) cfg.jobs = raw.jobs;
    if (sub->count("--tol-pass") || sub->count("--tol-fail")) {
        for (const std::string& name : cfg.defects) {
            ToleranceBand band =
                cfg.bands.count(name) ? cfg.bands.at(name) : gwco::default_band(name);
            if (sub->count("--tol-pass")) band.pass = raw.tol_pass;
            if (sub->count("--tol-fail")) band.fail = raw.tol_fail;
            cfg.bands[name] = band;
        }
    }
    return cfg;
}

int run_verify(const CLI::App* sub, const Raw& raw) {
    FileExtras extras;
    ExperimentConfig cfg = build_config(sub, raw, false, extras);
    const gwco::ExperimentReport report = gwco::run_experiment(cfg);
    std::cout << (cfg.format == gwco::OutputFormat::json ? gwco::render_json(report)
                                                         : gwco::render_text(report));
    return gwco::exit_code(report);
}

int run_scan(const CLI::App* sub, const Raw& raw) {
    FileExtras extras;
    ExperimentConfig cfg = build_config(sub, raw, true, extras);
    std::string axis = extras.has_axis ? extras.axis : std::string();
    std::vector<std::string> values = extras.values;
    if (sub->count("--axis")) axis = raw.axis;
    if (sub->count("--values")) values = split_csv(raw.values);
    if (axis.empty()) throw ConfigError("axis: required for scan");
    const gwco::ScanResult scan = gwco::scan_grid(cfg, axis, values);
    std::cout << (cfg.format == gwco::OutputFormat::json ? gwco::render_scan_json(scan)
                                                         : gwco::render_scan_text(scan));
    return gwco::exit_code(scan);
}

int run_weights(const CLI::App* sub, const Raw& raw) {
    const std::string space_name = sub->count("--space") ? raw.space : "hardy";
    const gwco::SpaceKind kind = gwco::space_kind_from_string(space_name);
    const int order = sub->count("--n") ? raw.n : 16;
    gwco::WeightSequence weights = [&] {
        try {
            if (kind == gwco::SpaceKind::custom) {
                if (!sub->count("--custom-betas"))
                    throw ConfigError("custom_betas: required when space = custom");
                return gwco::make_custom_weights(parse_double_list(raw.custom_betas));
            }
            return gwco::make_weights(kind, order);
        } catch (const ConfigError&) {
            throw;
        } catch (const gwco::Error& e) {
            throw ConfigError(e.what());
        }
    }();
    const bool json_out = sub->count("--format") &&
                          gwco::output_format_from_string(raw.format) == gwco::OutputFormat::json;
    if (json_out) {
        nlohmann::ordered_json j;
        j["schema"] = "gwco-weights-v1";
        j["space"] = to_string(weights.kind());
        j["n"] = weights.order();
        j["beta"] = weights.values();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "space: " << to_string(weights.kind()) << "  N=" << weights.order() << "\n";
        std::cout << "n     beta(n)                  beta(n)^2\n";
        for (int n = 0; n <= weights.order(); ++n) {
            char line[128];
            std::snprintf(line, sizeof line, "%-5d %-24s %s\n", n,
                          gwco::format_double(weights.beta(n)).c_str(),
                          gwco::format_double(weights.beta(n) * weights.beta(n)).c_str());
            std::cout << line;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"defect laboratory for generalized weighted composition operators on weighted "
                 "Hardy spaces"};
    app.require_subcommand(1);
    Raw raw;

    CLI::App* verify = app.add_subcommand(
        "verify", "run one experiment and report the selected defects");
    add_common_options(verify, raw);

    CLI::App* scan = app.add_subcommand("scan", "sweep one parameter across a list of values");
    add_common_options(scan, raw);
    scan->add_option("--axis", raw.axis, "parameter to vary: a0 | a1 | a2 | w | m | N | a");
    scan->add_option("--values", raw.values, "comma-separated axis values");

    CLI::App* weights = app.add_subcommand("weights", "print the beta table of a space");
    weights->add_option("--space", raw.space, "hardy | bergman | dirichlet | deriv_hardy | custom");
    weights->add_option("--custom-betas", raw.custom_betas, "comma-separated beta values");
    weights->add_option("--n", raw.n, "table order (default 16)");
    weights->add_option("--format", raw.format, "text | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return run_verify(verify, raw);
        if (scan->parsed()) return run_scan(scan, raw);
        return run_weights(weights, raw);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gwco::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
