#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwco/operators.hpp"
#include "gwco/symbols.hpp"

namespace gwco {

enum class SymbolSource { params, explicit_series, automorphism };
enum class Verdict { pass, indeterminate, fail };
enum class OutputFormat { text, json };

std::string to_string(SymbolSource source);
std::string to_string(Verdict verdict);
std::string to_string(OutputFormat format);
SymbolSource symbol_source_from_string(const std::string& name);
OutputFormat output_format_from_string(const std::string& name);

/// Verdict bands: value < pass -> pass, value > fail -> fail, else
/// indeterminate. Defaults: symmetry and hermitian 1e-10 / 1e-4,
/// normality and adjoint_kernel 1e-8 / 1e-4.
struct ToleranceBand {
    double pass = 0.0;
    double fail = 0.0;
};

const std::vector<std::string>& known_defects();
ToleranceBand default_band(const std::string& defect);

struct ExperimentConfig {
    SpaceKind space = SpaceKind::hardy;
    std::vector<double> custom_betas; // required exactly when space == custom
    int n = 48;
    int m = 1;
    cplx w = 1.0;

    SymbolSource source = SymbolSource::params;
    cplx a0 = 0.0;
    cplx a1 = 0.0;
    cplx a2 = 1.0;
    std::vector<cplx> phi_coeffs; // explicit_series only
    std::vector<cplx> psi_coeffs;
    cplx auto_a = 0.0; // automorphism only
    std::optional<cplx> auto_lambda;

    cplx alpha = 0.3; // probe point for the adjoint_kernel defect
    std::vector<std::string> defects = known_defects();
    std::map<std::string, ToleranceBand> bands; // filled from defaults in validate()
    int margin = 8;
    OutputFormat format = OutputFormat::text;
    int jobs = 1;

    /// Throws ConfigError naming the offending field. Fills default bands.
    void validate();
};

struct DefectResult {
    std::string name;
    double value = 0.0;
    Verdict verdict = Verdict::pass;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<DefectResult> defects;

    // Derived quantities; presence depends on the symbol source.
    double tail_bound = 0.0;
    bool boundary_fixed_point = false;
    std::vector<cplx> c_coeffs;        // params: c_1..c_8
    std::optional<cplx> obstruction;   // params
    std::optional<bool> hermitian_expected; // params
    std::optional<bool> normal_expected;    // params, a1 = 0 branch
    std::optional<cplx> lambda;        // automorphism
    std::optional<double> lambda_gap;  // automorphism: | |lambda| - 1 |

    double duration_ms = 0.0;
    std::string error; // non-empty when the run aborted (scan points)

    bool valid() const { return error.empty(); }
    Verdict aggregate() const; // worst verdict; fail when invalid
};

/// Deterministic for a deterministic config. Throws ConfigError for invalid
/// configs; other gwco errors indicate evaluation-time domain/numeric
/// failures and carry exit status 3.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct ScanSummary {
    std::string axis;
    int points = 0;
    int valid = 0;
    std::map<std::string, std::pair<double, double>> defect_ranges; // min, max
    Verdict verdict = Verdict::pass;
};

struct ScanResult {
    std::string axis;
    std::vector<std::string> point_values; // axis values as given
    std::vector<ExperimentReport> reports; // parallel to point_values
    ScanSummary summary;
};

/// Axis is one of a0, a1, a2, w, m, N, a. Values are parsed per the axis
/// domain; a point that fails validation or evaluation is reported invalid
/// and the scan continues. Base-level problems (bad axis, axis incompatible
/// with the symbol source) throw ConfigError.
ScanResult scan_grid(const ExperimentConfig& base, const std::string& axis,
                     const std::vector<std::string>& values);

std::string render_text(const ExperimentReport& report);
std::string render_json(const ExperimentReport& report);
std::string render_scan_text(const ScanResult& scan);
std::string render_scan_json(const ScanResult& scan);

/// all pass -> 0; any fail, indeterminate or invalid point -> 1.
int exit_code(const ExperimentReport& report);
int exit_code(const ScanResult& scan);

} // namespace gwco
