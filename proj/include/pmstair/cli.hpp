#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pmstair/forcing.hpp"

namespace pmstair::cli {

enum ExitCode { kOk = 0, kIoError = 1, kValidation = 2, kBudget = 3 };

struct ExperimentConfig {
    std::string command;
    std::string forcing = "affine:1,0";
    int quad_order = 4;
    double beta = 1.0;
    double alpha = 4.0 / 3.0;
    long long n = 1000;
    std::vector<long long> n_list{1000, 10000};
    std::vector<double> L_list{1.0, 2.0, 3.0, 4.0, 6.0, 8.0};
    double center = 0.5;
    long long seed = 0;
    std::string output;  // empty: standard output
    std::string format = "json";

    // solver knobs
    int label_count = 64;
    int refinement_levels = 3;
    int window = 8;
    int shrink = 4;
    int max_sweeps = 30;
    bool dump_minimizer = true;
    int threads = 0;  // 0: hardware concurrency, capped by PMSTAIR_THREADS

    // blowup
    std::string variant = "w";
    // mu-table
    std::vector<double> M{1.0};
    std::vector<double> L{2.0};
    int resolution = 1024;
    long long mu_n = 0;  // 0: skip the rescaled discrete column
    // check-localmin
    std::string source = "canonical";
    double step_scale = 1.0;
    int periods = 4;
    double tol = 1e-9;
};

/// Parses "affine:M,c", "step:base;pos,height;...", "smooth:sin" or "smooth:poly3".
Forcing parse_forcing(const std::string& spec, int quad_order = 4);

/// Applies one `key = value` assignment; throws ValidationError on unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Reads a flat key-value file: one `key = value` per line, `#` starts a comment.
void load_config_file(ExperimentConfig& cfg, const std::string& path);

/// argv without the program name: <command> [--config path] [--set key=value]...
ExperimentConfig parse_args(const std::vector<std::string>& args);

/// RFC-4180 field quoting.
std::string csv_escape(const std::string& field);

/// Runs the command and returns the rendered artifact (CSV or JSON text).
std::string render(const ExperimentConfig& cfg);

/// Full front end: parse, run, write the artifact. Messages go to err.
int run(const std::vector<std::string>& args, std::ostream& err);

}  // namespace pmstair::cli
