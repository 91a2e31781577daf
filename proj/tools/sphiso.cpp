/*
   Copyright 2026 The sphiso Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Command line driver: runs one experiment, writes its CSV and a sidecar
// JSON, and maps the outcome onto the exit code (0 held, 2 failed, 1 error).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sphiso/experiments.hpp"

namespace {

using json = nlohmann::json;
using namespace sphiso;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_failed = 2;

struct Flags
{
    std::string config_path;
    std::string out;
    std::string set_json;
    std::string set_file;
    std::string estimator;
    std::optional<int> m;
    std::optional<double> R;
    std::optional<double> omega;
    std::optional<double> eps;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> stream_id;
    std::optional<std::uint64_t> n_outer;
    std::optional<std::uint64_t> n_inner;
    std::optional<std::uint64_t> samples;
    std::optional<int> grid_n;
    std::optional<int> trials;
    std::optional<unsigned> threads;
};

json read_json_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

template<class T>
void put(json& cfg, char const* key, std::optional<T> const& v)
{
    if (v)
        cfg[key] = *v;
}

//! Config file first, then any explicit flag on top
json merge_config(Flags const& f, std::set<std::string> const& allowed)
{
    json cfg = f.config_path.empty() ? json::object() : read_json_file(f.config_path);
    if (!cfg.is_object())
        throw std::runtime_error("config must be a JSON object");
    put(cfg, "m", f.m);
    put(cfg, "R", f.R);
    put(cfg, "omega", f.omega);
    put(cfg, "eps", f.eps);
    put(cfg, "seed", f.seed);
    put(cfg, "stream_id", f.stream_id);
    put(cfg, "n_outer", f.n_outer);
    put(cfg, "n_inner", f.n_inner);
    put(cfg, "samples", f.samples);
    put(cfg, "grid_n", f.grid_n);
    put(cfg, "trials", f.trials);
    put(cfg, "threads", f.threads);
    if (!f.set_json.empty())
        cfg["set"] = json::parse(f.set_json);
    if (!f.set_file.empty())
        cfg["set"] = read_json_file(f.set_file);
    if (!f.estimator.empty())
        cfg["estimator"] = f.estimator;
    if (!f.out.empty())
        cfg["out"] = f.out;

    for (auto const& [key, value] : cfg.items())
    {
        if (key != "out" && !allowed.count(key))
            throw std::runtime_error("option \"" + key + "\" does not apply to this experiment");
    }
    return cfg;
}

json default_set()
{
    return {{"shape", "cap"}, {"pole_axis", 0}, {"theta", 1.2}};
}

ExperimentRecord dispatch(std::string const& name, json& cfg)
{
    if (name == "concentration")
    {
        ConcentrationConfig c;
        c.m = cfg.value("m", c.m);
        c.R = cfg.value("R", c.R);
        c.eps = cfg.value("eps", c.eps);
        c.samples = cfg.value("samples", c.samples);
        c.seed = cfg.value("seed", c.seed);
        c.stream_id = cfg.value("stream_id", c.stream_id);
        c.threads = cfg.value("threads", c.threads);
        return run_concentration(c);
    }
    if (name == "blowup")
    {
        BlowupConfig c;
        c.m = cfg.value("m", c.m);
        c.R = cfg.value("R", c.R);
        c.eps = cfg.value("eps", c.eps);
        c.set = cfg.value("set", default_set());
        return run_blowup(c);
    }
    if (name == "theorem1")
    {
        Theorem1Config c;
        c.m = cfg.value("m", c.m);
        c.R = cfg.value("R", c.R);
        c.omega = cfg.value("omega", c.omega);
        c.eps = cfg.value("eps", c.eps);
        c.n_outer = cfg.value("n_outer", c.n_outer);
        c.n_inner = cfg.value("n_inner", c.n_inner);
        c.estimator = parse_inner_estimator(cfg.value("estimator", std::string("automatic")));
        c.seed = cfg.value("seed", c.seed);
        c.stream_id = cfg.value("stream_id", c.stream_id);
        c.threads = cfg.value("threads", c.threads);
        c.set = cfg.value("set", default_set());
        return run_theorem1(c);
    }
    if (name == "riesz")
    {
        RieszConfig c;
        c.m = cfg.value("m", c.m);
        c.R = cfg.value("R", c.R);
        c.grid_n = cfg.value("grid_n", c.grid_n);
        c.trials = cfg.value("trials", c.trials);
        c.seed = cfg.value("seed", c.seed);
        c.stream_id = cfg.value("stream_id", c.stream_id);
        c.threads = cfg.value("threads", c.threads);
        return run_riesz(c);
    }
    ProofChainConfig c;
    c.m = cfg.value("m", c.m);
    c.R = cfg.value("R", c.R);
    c.omega = cfg.value("omega", c.omega);
    c.eps = cfg.value("eps", c.eps);
    c.grid_n = cfg.value("grid_n", c.grid_n);
    c.threads = cfg.value("threads", c.threads);
    c.set = cfg.value("set", default_set());
    return run_proof_chain(c);
}

void report(ExperimentRecord const& rec)
{
    for (auto const& w : rec.warnings)
        std::cerr << "warning: " << w << '\n';
    for (auto const& c : rec.checks)
        std::cerr << (c.passed ? "held   " : "FAILED ") << c.name << ": " << c.detail << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Concentration and rearrangement experiments on spheres"};
    app.set_version_flag("--version", std::string(sphiso::version()));
    app.require_subcommand(1);

    Flags flags;
    std::map<std::string, std::set<std::string>> const allowed{
        {"concentration", {"m", "R", "eps", "samples", "seed", "stream_id", "threads"}},
        {"blowup", {"m", "R", "eps", "set"}},
        {"theorem1",
         {"m", "R", "omega", "eps", "n_outer", "n_inner", "estimator", "seed", "stream_id", "threads",
          "set"}},
        {"riesz", {"m", "R", "grid_n", "trials", "seed", "stream_id", "threads"}},
        {"proof-chain", {"m", "R", "omega", "eps", "grid_n", "threads", "set"}},
    };
    std::map<std::string, char const*> const about{
        {"concentration", "Mass of the eps-band about an equator"},
        {"blowup", "Measure of the neighborhood of a set with a given effective angle"},
        {"theorem1", "Monte Carlo distribution of mu(A and Cap(Y, omega + eps))"},
        {"riesz", "Random trials of the rearrangement inequality on a latitude grid"},
        {"proof-chain", "Layer-cake and rearrangement checks on a latitude grid"},
    };

    for (auto const& [name, keys] : allowed)
    {
        auto* sub = app.add_subcommand(name, about.at(name));
        sub->add_option("--config", flags.config_path, "JSON config file")
            ->check(CLI::ExistingFile);
        sub->add_option("--out", flags.out, "Output CSV (sidecar written to <out>.json)");
        sub->add_option("--m", flags.m, "Ambient dimension");
        sub->add_option("--R", flags.R, "Sphere radius");
        if (keys.count("omega"))
            sub->add_option("--omega", flags.omega, "Cap angle omega");
        if (keys.count("eps"))
            sub->add_option("--eps", flags.eps, "Tolerance eps");
        if (keys.count("seed"))
        {
            sub->add_option("--seed", flags.seed, "Random seed");
            sub->add_option("--stream-id", flags.stream_id, "Random stream id");
        }
        if (keys.count("n_outer"))
        {
            sub->add_option("--n-outer", flags.n_outer, "Haar samples Y");
            sub->add_option("--n-inner", flags.n_inner, "Cap samples per Y");
            sub->add_option("--estimator", flags.estimator, "Inner estimator")
                ->check(CLI::IsMember({"automatic", "hits", "conditional"}));
        }
        if (keys.count("samples"))
            sub->add_option("--samples", flags.samples, "Haar samples for the estimate");
        if (keys.count("grid_n"))
            sub->add_option("--grid-n", flags.grid_n, "Latitude grid cells");
        if (keys.count("trials"))
            sub->add_option("--trials", flags.trials, "Random trials");
        if (keys.count("threads"))
            sub->add_option("--threads", flags.threads, "Worker threads (0 = all cores)");
        if (keys.count("set"))
        {
            sub->add_option("--set", flags.set_json, "Set descriptor as a JSON string");
            sub->add_option("--set-file", flags.set_file, "Set descriptor JSON file")
                ->check(CLI::ExistingFile);
        }
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    std::string const name = app.get_subcommands().front()->get_name();
    ExperimentRecord rec;
    json cfg;
    try
    {
        cfg = merge_config(flags, allowed.at(name));
        rec = dispatch(name, cfg);
    }
    catch (std::exception const& e)
    {
        std::cerr << "sphiso " << name << ": " << e.what() << '\n';
        return exit_usage;
    }

    std::string const out = cfg.value("out", std::string());
    if (out.empty())
    {
        rec.table.write(std::cout);
    }
    else
    {
        std::ofstream csv(out, std::ios::binary);
        std::ofstream side(out + ".json");
        if (!csv || !side)
        {
            std::cerr << "sphiso: cannot write " << out << '\n';
            return exit_usage;
        }
        cfg.erase("out");
        rec.table.write(csv);
        side << rec.sidecar(cfg).dump(2) << '\n';
    }
    report(rec);
    return rec.all_passed() ? exit_ok : exit_failed;
}
