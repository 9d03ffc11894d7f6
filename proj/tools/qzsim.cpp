// Copyright 2026 The qzsim Authors
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
//
// qzsim CLI: run compressed out-of-core simulations, verify them against
// the dense oracle, benchmark transfer strategies, and generate circuits.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qzsim/generators.hpp"
#include "qzsim/oracle.hpp"
#include "qzsim/pipeline.hpp"
#include "qzsim/qasm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct RunFlags {
    std::string input;
    std::string out;
    bool explain = false;
    qzsim::PipelineConfig config;
    std::string strategy_name = "buffered";
    bool chunk_qubits_set = false;
    bool batch_qubits_set = false;
    double min_fidelity = 0.999;
    uint32_t oracle_limit = qzsim::kOracleLimit;
};

void add_pipeline_flags(CLI::App *cmd, RunFlags &flags) {
    cmd->add_option("input", flags.input, "OpenQASM 2.0 input file")
        ->required();
    cmd->add_option("-c,--chunk-qubits", flags.config.chunk_qubits,
                    "amplitudes per chunk = 2^c")
        ->envname("QZSIM_CHUNK_QUBITS")
        ->check(CLI::Range(1u, 30u));
    cmd->add_option("-m,--batch-qubits", flags.config.batch_qubits,
                    "device window = 2^m amplitudes")
        ->envname("QZSIM_BATCH_QUBITS")
        ->check(CLI::Range(1u, 34u));
    cmd->add_option("-e,--error-bound", flags.config.error_bound,
                    "absolute per-component error bound (0 = lossless)")
        ->envname("QZSIM_ERROR_BOUND")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("-s,--strategy", flags.strategy_name,
                    "transfer strategy: synchronous|per-element|buffered")
        ->envname("QZSIM_STRATEGY");
    cmd->add_option("--decompress-workers", flags.config.decompress_workers)
        ->envname("QZSIM_DECOMPRESS_WORKERS")
        ->check(CLI::Range(1u, 64u));
    cmd->add_option("--recompress-workers", flags.config.recompress_workers)
        ->envname("QZSIM_RECOMPRESS_WORKERS")
        ->check(CLI::Range(1u, 64u));
    cmd->add_option("--kernel-workers", flags.config.kernel_workers)
        ->envname("QZSIM_KERNEL_WORKERS")
        ->check(CLI::Range(1u, 64u));
    cmd->add_option("-f,--host-fraction", flags.config.host_fraction,
                    "fraction of each stage's batches run on host workers")
        ->envname("QZSIM_HOST_FRACTION")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("-d,--pipeline-depth", flags.config.pipeline_depth,
                    "batches in flight on the device path")
        ->envname("QZSIM_PIPELINE_DEPTH")
        ->check(CLI::Range(1u, 64u));
    cmd->add_flag("--renormalize", flags.config.renormalize,
                  "rescale amplitudes by 1/sqrt(norm) after the final stage")
        ->envname("QZSIM_RENORMALIZE");
    cmd->add_option("--seed", flags.config.seed)->envname("QZSIM_SEED");
    cmd->add_option("--fidelity-oracle-limit", flags.config.oracle_limit,
                    "report fidelity when n <= this")
        ->envname("QZSIM_FIDELITY_ORACLE_LIMIT");
    cmd->add_option("-o,--out", flags.out, "write the JSON report here")
        ->envname("QZSIM_OUT");
}

qzsim::ParsedProgram parse_input(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw qzsim::Error("cannot open input file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return qzsim::parse_qasm(ss.str());
}

// Fits c and m to the circuit when the user did not pin them.
void fit_config(RunFlags &flags, uint32_t num_qubits) {
    auto &cfg = flags.config;
    if (!flags.chunk_qubits_set) {
        if (num_qubits < 3)
            throw qzsim::Error("circuit too small for staged execution "
                               "(need at least 3 qubits)");
        cfg.chunk_qubits = std::min<uint32_t>(16, num_qubits - 2);
    }
    if (!flags.batch_qubits_set)
        cfg.batch_qubits = std::min(cfg.chunk_qubits + 4, num_qubits);
    auto strategy = qzsim::strategy_from_name(flags.strategy_name);
    if (!strategy)
        throw qzsim::Error("unknown strategy: " + flags.strategy_name);
    cfg.strategy = *strategy;
}

void emit_report(const RunFlags &flags, const qzsim::SimulationReport &report) {
    std::string json = qzsim::report_to_json(report);
    if (flags.out.empty()) {
        std::cout << json << "\n";
    } else {
        std::ofstream out(flags.out);
        if (!out) throw qzsim::Error("cannot write report: " + flags.out);
        out << json << "\n";
    }
}

int cmd_run(RunFlags &flags) {
    qzsim::ParsedProgram program;
    try {
        program = parse_input(flags.input);
    } catch (const std::exception &e) {
        std::cerr << "error: " << flags.input << ": " << e.what() << "\n";
        return kExitUsage;
    }
    for (const std::string &w : program.warnings)
        std::cerr << "warning: " << w << "\n";
    try {
        fit_config(flags, program.circuit.num_qubits);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        if (flags.explain) {
            auto p = qzsim::plan(program.circuit, flags.config.chunk_qubits,
                                 flags.config.batch_qubits);
            std::cerr << qzsim::describe_plan(p);
        }
        auto [store, report] = qzsim::run(program.circuit, flags.config);
        emit_report(flags, report);
        return kExitOk;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_verify(RunFlags &flags) {
    qzsim::ParsedProgram program;
    try {
        program = parse_input(flags.input);
    } catch (const std::exception &e) {
        std::cerr << "error: " << flags.input << ": " << e.what() << "\n";
        return kExitUsage;
    }
    uint32_t limit = std::min(flags.oracle_limit, qzsim::kOracleLimit);
    if (program.circuit.num_qubits > limit) {
        std::cerr << "error: " << program.circuit.num_qubits
                  << " qubits exceeds oracle limit (" << limit << ")\n";
        return kExitUsage;
    }
    try {
        fit_config(flags, program.circuit.num_qubits);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        flags.config.oracle_limit = limit;
        auto [store, report] = qzsim::run(program.circuit, flags.config);
        qzsim::DenseState reference = qzsim::simulate_dense(program.circuit);
        if (flags.config.error_bound == 0.0) {
            double max_dev = 0.0;
            for (uint64_t ci = 0; ci < store.chunk_count(); ++ci) {
                auto chunk = store.load_chunk(ci);
                uint64_t base = ci * store.chunk_size();
                for (uint64_t j = 0; j < chunk.size(); ++j) {
                    max_dev = std::max(
                        max_dev,
                        std::abs(chunk[j] - reference.amplitudes[base + j]));
                }
            }
            std::cout << "lossless max deviation: " << max_dev << "\n";
            if (max_dev <= 1e-12) return kExitOk;
            std::cerr << "verify failed: deviation " << max_dev
                      << " > 1e-12\n";
            return kExitRuntime;
        }
        double f = qzsim::fidelity(reference, store);
        std::cout << "fidelity: " << f << "\n";
        if (f >= flags.min_fidelity) return kExitOk;
        std::cerr << "verify failed: fidelity " << f << " < "
                  << flags.min_fidelity << "\n";
        return kExitRuntime;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

struct BenchFlags {
    std::vector<uint32_t> exponents{20};
    std::vector<std::string> strategies{"synchronous", "per-element",
                                        "buffered"};
    uint32_t repetitions = 5;
    uint32_t chunk_qubits = 16;
    uint64_t seed = 1;
    std::string out;
};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int cmd_bench_transfer(const BenchFlags &flags) {
    using namespace qzsim;
    nlohmann::json out;
    out["repetitions"] = flags.repetitions;
    out["chunk_qubits"] = flags.chunk_qubits;
    out["cpu_threads"] = std::thread::hardware_concurrency();
    nlohmann::json rows = nlohmann::json::array();
    try {
        for (uint32_t exponent : flags.exponents) {
            uint32_t c = std::min(flags.chunk_qubits, exponent);
            uint64_t chunk_len = uint64_t(1) << c;
            uint64_t chunks = uint64_t(1) << (exponent - c);

            std::mt19937_64 rng(flags.seed);
            std::uniform_real_distribution<double> dist(-1.0, 1.0);
            std::vector<std::vector<Amplitude>> data(chunks);
            for (auto &chunk : data) {
                chunk.resize(chunk_len);
                for (Amplitude &a : chunk) a = {dist(rng), dist(rng)};
            }

            nlohmann::json row;
            row["amplitude_exponent"] = exponent;
            double sync_h2d = 0.0, sync_d2h = 0.0;
            for (const std::string &name : flags.strategies) {
                auto strategy = strategy_from_name(name);
                if (!strategy) throw Error("unknown strategy: " + name);
                DeviceConfig dc;
                dc.strategy = *strategy;
                dc.memory_limit_bytes = (uint64_t(1) << exponent) * 16 * 2;
                auto device = make_reference_device(dc);

                std::vector<double> h2d, d2h;
                for (uint32_t rep = 0; rep < flags.repetitions; ++rep) {
                    std::vector<const Amplitude *> in_ptrs;
                    std::vector<Amplitude *> out_ptrs;
                    for (auto &chunk : data) {
                        in_ptrs.push_back(chunk.data());
                        out_ptrs.push_back(chunk.data());
                    }
                    TransferStats before = device->stats();
                    device->wait(device->gather(std::move(in_ptrs), chunk_len));
                    TransferStats mid = device->stats();
                    device->wait(
                        device->scatter(std::move(out_ptrs), chunk_len));
                    TransferStats after = device->stats();
                    h2d.push_back(mid.h2d_seconds - before.h2d_seconds);
                    d2h.push_back(after.d2h_seconds - mid.d2h_seconds);
                }
                nlohmann::json cell;
                cell["h2d_median_seconds"] = median(h2d);
                cell["h2d_min_seconds"] = *std::min_element(h2d.begin(), h2d.end());
                cell["h2d_max_seconds"] = *std::max_element(h2d.begin(), h2d.end());
                cell["d2h_median_seconds"] = median(d2h);
                cell["d2h_min_seconds"] = *std::min_element(d2h.begin(), d2h.end());
                cell["d2h_max_seconds"] = *std::max_element(d2h.begin(), d2h.end());
                if (*strategy == Strategy::Synchronous) {
                    sync_h2d = median(h2d);
                    sync_d2h = median(d2h);
                }
                row[std::string(strategy_name(*strategy))] = cell;
            }
            if (sync_h2d > 0.0) {
                for (const std::string &name : flags.strategies) {
                    auto strategy = strategy_from_name(name);
                    auto key = std::string(strategy_name(*strategy));
                    row[key]["h2d_ratio_vs_sync"] =
                        row[key]["h2d_median_seconds"].get<double>() / sync_h2d;
                    row[key]["d2h_ratio_vs_sync"] =
                        row[key]["d2h_median_seconds"].get<double>() / sync_d2h;
                }
            }
            rows.push_back(std::move(row));
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    out["results"] = std::move(rows);
    if (flags.out.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::ofstream f(flags.out);
        f << out.dump(2) << "\n";
    }
    return kExitOk;
}

struct GenFlags {
    std::string kind;
    uint32_t qubits = 4;
    uint32_t depth = 20;
    uint64_t seed = 1;
    std::string out;
};

int cmd_gen(const GenFlags &flags) {
    try {
        qzsim::Circuit circuit;
        if (flags.kind == "ghz") {
            circuit = qzsim::make_ghz(flags.qubits);
        } else if (flags.kind == "qft") {
            circuit = qzsim::make_qft(flags.qubits);
        } else if (flags.kind == "random") {
            circuit = qzsim::make_random(flags.qubits, flags.depth, flags.seed);
        } else {
            std::cerr << "error: unknown circuit kind: " << flags.kind << "\n";
            return kExitUsage;
        }
        std::string text = qzsim::pretty_print(circuit);
        if (flags.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(flags.out);
            if (!f) throw qzsim::Error("cannot write: " + flags.out);
            f << text;
        }
        return kExitOk;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qzsim: compressed out-of-core quantum state-vector "
                 "simulator"};
    app.require_subcommand(1);

    RunFlags run_flags;
    CLI::App *run_cmd = app.add_subcommand(
        "run", "simulate a circuit and emit a JSON report");
    add_pipeline_flags(run_cmd, run_flags);
    run_cmd->add_flag("--explain", run_flags.explain,
                      "print the stage/batch plan table");

    RunFlags verify_flags;
    CLI::App *verify_cmd = app.add_subcommand(
        "verify", "run the pipeline and compare against the dense oracle");
    add_pipeline_flags(verify_cmd, verify_flags);
    verify_cmd
        ->add_option("--min-fidelity", verify_flags.min_fidelity,
                     "lossy acceptance threshold")
        ->envname("QZSIM_MIN_FIDELITY")
        ->check(CLI::Range(0.0, 1.0));
    verify_cmd
        ->add_option("--oracle-limit", verify_flags.oracle_limit,
                     "maximum qubit count for the dense oracle")
        ->envname("QZSIM_ORACLE_LIMIT");

    BenchFlags bench_flags;
    CLI::App *bench_cmd = app.add_subcommand(
        "bench-transfer", "measure H2D/D2H time per transfer strategy");
    bench_cmd
        ->add_option("--exponents", bench_flags.exponents,
                     "amplitude counts as powers of two")
        ->envname("QZSIM_EXPONENTS")
        ->check(CLI::Range(4u, 26u));
    bench_cmd->add_option("--strategies", bench_flags.strategies)
        ->envname("QZSIM_STRATEGIES");
    bench_cmd
        ->add_option("-r,--repetitions", bench_flags.repetitions)
        ->envname("QZSIM_REPETITIONS")
        ->check(CLI::Range(1u, 100u));
    bench_cmd->add_option("-c,--chunk-qubits", bench_flags.chunk_qubits)
        ->envname("QZSIM_CHUNK_QUBITS")
        ->check(CLI::Range(1u, 26u));
    bench_cmd->add_option("--seed", bench_flags.seed)->envname("QZSIM_SEED");
    bench_cmd->add_option("-o,--out", bench_flags.out)->envname("QZSIM_OUT");

    GenFlags gen_flags;
    CLI::App *gen_cmd =
        app.add_subcommand("gen", "generate a benchmark circuit as QASM");
    gen_cmd->add_option("kind", gen_flags.kind, "ghz|qft|random")->required();
    gen_cmd->add_option("-n,--qubits", gen_flags.qubits)
        ->envname("QZSIM_QUBITS")
        ->check(CLI::Range(1u, 40u));
    gen_cmd->add_option("--depth", gen_flags.depth)
        ->envname("QZSIM_DEPTH")
        ->check(CLI::Range(0u, 1000000u));
    gen_cmd->add_option("--seed", gen_flags.seed)->envname("QZSIM_SEED");
    gen_cmd->add_option("-o,--out", gen_flags.out)->envname("QZSIM_OUT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    run_flags.chunk_qubits_set = run_cmd->count("--chunk-qubits") > 0 ||
                                 run_cmd->count("-c") > 0;
    run_flags.batch_qubits_set = run_cmd->count("--batch-qubits") > 0 ||
                                 run_cmd->count("-m") > 0;
    verify_flags.chunk_qubits_set = verify_cmd->count("--chunk-qubits") > 0 ||
                                    verify_cmd->count("-c") > 0;
    verify_flags.batch_qubits_set = verify_cmd->count("--batch-qubits") > 0 ||
                                    verify_cmd->count("-m") > 0;

    if (run_cmd->parsed()) return cmd_run(run_flags);
    if (verify_cmd->parsed()) return cmd_verify(verify_flags);
    if (bench_cmd->parsed()) return cmd_bench_transfer(bench_flags);
    if (gen_cmd->parsed()) return cmd_gen(gen_flags);
    return kExitUsage;
}
