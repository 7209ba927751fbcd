// Copyright 2026 The Postsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>

#include "postsel/postsel.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kPrecondition = 2, kInternal = 3 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// How a flag's value is turned into an experiment parameter.
enum class Kind { Value, JsonFile, FunctionOrFile, Flag };

struct FlagSpec {
    const char *flag;
    const char *key;
    const char *help;
    Kind kind = Kind::Value;
};

struct Subcommand {
    const char *name;
    const char *help;
    std::vector<FlagSpec> flags;
};

const std::vector<Subcommand> &subcommands() {
    static const std::vector<Subcommand> table = {
        {"maj-run",
         "Run the postselected majority algorithm (sampled or exact) at one weight or bit string",
         {{"--n", "n", "input length N (default 32)"},
          {"--eps", "eps", "target error in (2^-N, 1/2) (default 0.2)"},
          {"--weight", "weight", "real Hamming weight in [0, N]"},
          {"--bits", "bits", "explicit input bit string (uses the 01-prefix guard)"},
          {"--samples", "samples", "Monte Carlo runs (default 10000)"},
          {"--mode", "mode", "sample | exact (default sample)"},
          {"--t", "t", "override the straddle parameter t (0 = automatic)"}}},
        {"maj-curve",
         "Exact output probability over a weight grid",
         {{"--n", "n", "input length N (default 32)"},
          {"--eps", "eps", "target error (default 0.2)"},
          {"--points", "points", "grid points over [0, N] (default 2N+1)"},
          {"--t", "t", "override t (0 = automatic)"}}},
        {"or-demo",
         "One-query postselected OR algorithm",
         {{"--n", "n", "input length when enumerating all inputs (default 4)"},
          {"--x", "x", "single input bit string"},
          {"--eps0", "eps0", "idle-branch amplitude (default 0.1)"},
          {"--mode", "mode", "exact | sample (default exact)"},
          {"--samples", "samples", "runs per input in sample mode (default 10000)"}}},
        {"extract",
         "Extract (P, Q) from the one-query OR algorithm",
         {{"--algorithm", "algorithm", "or-demo (default)"},
          {"--n", "n", "input length (default 2)"},
          {"--eps0", "eps0", "idle-branch amplitude (default 0.1)"}}},
        {"compile",
         "Compile a rational approximation P/Q into a postselection algorithm and simulate it",
         {{"--p", "p", "polynomial JSON file (or inline JSON)", Kind::JsonFile},
          {"--q", "q", "polynomial JSON file (or inline JSON)", Kind::JsonFile},
          {"--eps", "eps", "target error (default 0.05)"},
          {"--f", "f", "target function: truth-table file, table string or family spec", Kind::FunctionOrFile}}},
        {"roundtrip",
         "compile -> run -> extract -> ratio check",
         {{"--f", "f", "target function: truth-table file, table string or family spec", Kind::FunctionOrFile},
          {"--p", "p", "polynomial JSON file (or inline JSON)", Kind::JsonFile},
          {"--q", "q", "polynomial JSON file (or inline JSON)", Kind::JsonFile},
          {"--eps", "eps", "target error (default 0.05)"}}},
        {"newman",
         "Error grids for the classic Newman approximant or the postselection-derived sign approximant",
         {{"--mode", "mode", "classic | quantum (default classic)"},
          {"--degrees", "degrees", "comma-separated degrees (default 16,36,64,100)"},
          {"--grid", "grid", "uniform grid size (default 10000 classic, 200 quantum)"},
          {"--refine", "refine", "add geometric points between Newman nodes", Kind::Flag},
          {"--eps", "eps", "sign approximant error (default 1/16)"}}},
        {"rdeg",
         "Exact LP feasibility of rational eps-approximation at fixed degree",
         {{"--f", "f", "target function: truth-table file, table string or family spec", Kind::FunctionOrFile},
          {"--eps", "eps", "exact fraction num/den (default 1/10)"},
          {"--d", "d", "test a single degree"},
          {"--d-max", "d_max", "scan degrees 0..d_max (default 4)"},
          {"--symmetric", "symmetric", "symmetric (witness-only) mode", Kind::Flag}}},
        {"report",
         "Run acceptance criteria and aggregate the results",
         {{"--criteria", "criteria", "comma-separated criterion ids (default 1..10)"}}},
        {"verify",
         "Run one acceptance criterion",
         {{"--criterion", "criterion", "criterion id (1..11)"}}},
    };
    return table;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &data) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << data) || !out.flush()) {
        throw IoError("cannot write '" + path + "'");
    }
}

bool file_exists(const std::string &path) {
    std::ifstream in(path);
    return static_cast<bool>(in);
}

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

/// Line-based key=value; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string &path) {
    std::map<std::string, std::string> out;
    std::istringstream in(read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

std::string resolve_value(const FlagSpec &spec, const std::string &raw) {
    switch (spec.kind) {
        case Kind::JsonFile:
            return !raw.empty() && raw.front() == '{' ? raw : read_file(raw);
        case Kind::FunctionOrFile:
            return raw.find(':') == std::string::npos && file_exists(raw) ? trim(read_file(raw)) : raw;
        default:
            return raw;
    }
}

uint64_t parse_seed(const std::string &s, const char *origin) {
    try {
        size_t pos = 0;
        unsigned long long v = std::stoull(s, &pos, 0);
        if (pos != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw UsageError(std::string("invalid seed from ") + origin + ": '" + s + "'");
    }
}

int exit_for(postsel_status st) {
    switch (st) {
        case POSTSEL_OK:
            return kOk;
        case POSTSEL_ERR_STAGE:
            return std::string(postsel_last_error_stage()) == "pre" ? kPrecondition : kInternal;
        case POSTSEL_ERR_THEOREM_VIOLATION:
        case POSTSEL_ERR_IO:
        case POSTSEL_ERR_INTERNAL:
            return kInternal;
        default:
            return kPrecondition;
    }
}

std::string take(char *s) {
    std::string out = s ? s : "";
    postsel_string_free(s);
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Postselection query-complexity experiments"};
    app.set_version_flag("--version", postsel_version());
    app.fallthrough();

    std::string seed_flag, config_path, out_path, csv_path;
    int threads = 1;
    bool timing = false;
    app.add_option("--seed", seed_flag, "master seed (falls back to config, then POSTSEL_SEED, then 0)");
    auto *threads_opt = app.add_option("--threads", threads, "worker threads (explicit; default 1)");
    app.add_option("--config", config_path, "key=value config file; flags take precedence");
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");
    app.add_option("--csv", csv_path, "write report rows as CSV here");
    app.add_flag("--timing", timing, "add wall-clock seconds to the metrics (breaks byte reproducibility)");

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::map<std::string, bool>> flags;
    std::map<std::string, CLI::App *> subs;
    for (const auto &sc : subcommands()) {
        CLI::App *sub = app.add_subcommand(sc.name, sc.help);
        subs[sc.name] = sub;
        for (const auto &f : sc.flags) {
            if (f.kind == Kind::Flag) {
                sub->add_flag(f.flag, flags[sc.name][f.key], f.help);
            } else {
                sub->add_option(f.flag, values[sc.name][f.key], f.help);
            }
        }
    }
    app.require_subcommand(1);

    if (argc <= 1) {
        std::cerr << app.help();
        return kUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const Subcommand *chosen = nullptr;
        for (const auto &sc : subcommands()) {
            if (subs[sc.name]->parsed()) {
                chosen = &sc;
            }
        }
        std::map<std::string, std::string> config;
        if (!config_path.empty()) {
            config = read_config(config_path);
        }

        Json params = Json::object();
        // Lower precedence first: config file, then flags overwrite.
        for (const auto &[key, val] : config) {
            if (key == "seed" || key == "threads" || key == "out" || key == "csv") {
                continue;
            }
            const FlagSpec *spec = nullptr;
            for (const auto &f : chosen->flags) {
                if (key == f.key) {
                    spec = &f;
                }
            }
            if (!spec) {
                throw UsageError("config key '" + key + "' is not a parameter of " + chosen->name);
            }
            params[key] = resolve_value(*spec, val);
        }
        CLI::App *sub = subs[chosen->name];
        for (const auto &f : chosen->flags) {
            if (sub->get_option(f.flag)->count() == 0) {
                continue;
            }
            if (f.kind == Kind::Flag) {
                params[f.key] = flags[chosen->name][f.key];
            } else {
                params[f.key] = resolve_value(f, values[chosen->name][f.key]);
            }
        }

        uint64_t seed = 0;
        if (!seed_flag.empty()) {
            seed = parse_seed(seed_flag, "--seed");
        } else if (config.count("seed")) {
            seed = parse_seed(config["seed"], "config");
        } else if (const char *env = std::getenv("POSTSEL_SEED")) {
            seed = parse_seed(env, "POSTSEL_SEED");
        }
        if (threads_opt->count() == 0 && config.count("threads")) {
            try {
                threads = std::stoi(config["threads"]);
            } catch (const std::exception &) {
                throw UsageError("invalid thread count in config");
            }
        }
        if (threads < 1) {
            throw UsageError("--threads must be at least 1");
        }
        if (out_path.empty() && config.count("out")) {
            out_path = config["out"];
        }
        if (csv_path.empty() && config.count("csv")) {
            csv_path = config["csv"];
        }

        char *report = nullptr;
        postsel_status st =
            postsel_run_experiment(chosen->name, params.dump().c_str(), seed, threads, timing ? 1 : 0, &report);
        if (st != POSTSEL_OK) {
            std::cerr << "error (" << postsel_status_name(st) << "): " << postsel_last_error() << "\n";
            return exit_for(st);
        }
        std::string report_text = take(report);
        if (out_path.empty()) {
            std::cout << report_text;
        } else {
            write_file(out_path, report_text);
        }
        if (!csv_path.empty()) {
            char *csv = nullptr;
            st = postsel_report_to_csv(report_text.c_str(), &csv);
            if (st != POSTSEL_OK) {
                std::cerr << "error (" << postsel_status_name(st) << "): " << postsel_last_error() << "\n";
                return exit_for(st);
            }
            write_file(csv_path, take(csv));
        }
        return kOk;
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError &e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
