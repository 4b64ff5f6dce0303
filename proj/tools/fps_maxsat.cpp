// fps-maxsat: command-line front end for the fpsmax library.
//
// Solver work goes through the C API in fpsmax.h; result aggregation uses
// the bench reporting helpers.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpsmax/fpsmax.h"
#include "fpsmax/report.hpp"

namespace fs = std::filesystem;
using fpsmax::bench::InstanceRecord;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;

struct FormulaDeleter {
    void operator()(fpsmax_formula* f) const { fpsmax_formula_free(f); }
};
struct ResultDeleter {
    void operator()(fpsmax_result* r) const { fpsmax_result_free(r); }
};
using FormulaPtr = std::unique_ptr<fpsmax_formula, FormulaDeleter>;
using ResultPtr = std::unique_ptr<fpsmax_result, ResultDeleter>;

struct LoadError {
    int exit_code;
    std::string message;
};

FormulaPtr load(const std::string& path) {
    fpsmax_formula* f = nullptr;
    if (fpsmax_formula_load(path.c_str(), &f) != FPSMAX_OK) {
        throw LoadError{kExitParse, path + ": " + fpsmax_last_error()};
    }
    return FormulaPtr(f);
}

struct SolveOptions {
    std::string mode = "fps";
    double time_limit = 300.0;
    std::uint64_t seed = 1;
    std::uint32_t sc_num = 10;
    std::uint32_t sv_num = 50;
    std::uint64_t max_flips = 0;
};

fpsmax_config make_config(const SolveOptions& o) {
    fpsmax_config cfg;
    fpsmax_config_default(&cfg);
    if (fpsmax_mode_from_name(o.mode.c_str(), &cfg.mode) != FPSMAX_OK) {
        throw CLI::ValidationError("--mode", fpsmax_last_error());
    }
    cfg.sc_num = o.sc_num;
    cfg.sv_num = o.sv_num;
    cfg.time_limit_s = o.time_limit;
    cfg.max_flips = o.max_flips;
    cfg.seed = o.seed;
    return cfg;
}

ResultPtr run(const fpsmax_formula* f, const fpsmax_config& cfg, fpsmax_improvement_fn cb = nullptr,
              void* user = nullptr) {
    fpsmax_result* r = nullptr;
    if (fpsmax_solve(f, &cfg, cb, user, &r) != FPSMAX_OK) throw std::runtime_error(fpsmax_last_error());
    return ResultPtr(r);
}

InstanceRecord to_record(const std::string& instance, const std::string& mode, std::uint64_t seed,
                         const fpsmax_result* r) {
    InstanceRecord rec;
    rec.instance = instance;
    rec.mode = mode;
    rec.seed = seed;
    rec.feasible = fpsmax_result_feasible(r) != 0;
    rec.cost = rec.feasible ? fpsmax_result_cost(r) : 0;
    rec.time_to_best_s = fpsmax_result_time_to_best(r);
    rec.flips = fpsmax_result_flips(r);
    return rec;
}

void print_model(const std::vector<std::uint8_t>& model, bool literals) {
    std::string line = "v";
    if (literals) {
        for (std::size_t i = 0; i < model.size(); ++i) {
            line += ' ';
            if (!model[i]) line += '-';
            line += std::to_string(i + 1);
        }
    } else {
        line += ' ';
        for (std::uint8_t b : model) line += b ? '1' : '0';
    }
    std::cout << line << '\n';
}

void on_improvement(std::uint64_t cost, double, void*) { std::cout << "o " << cost << std::endl; }

int cmd_solve(const std::string& path, const SolveOptions& opts, bool json, bool v_literals) {
    FormulaPtr f = load(path);
    const fpsmax_config cfg = make_config(opts);
    ResultPtr r = run(f.get(), cfg, &on_improvement, nullptr);
    if (fpsmax_result_feasible(r.get())) {
        std::cout << "s SATISFIABLE\n";
        std::vector<std::uint8_t> model(fpsmax_result_num_vars(r.get()));
        fpsmax_result_model(r.get(), model.data(), model.size());
        print_model(model, v_literals);
    } else {
        std::cout << "s UNKNOWN\n";
    }
    if (json) {
        const InstanceRecord rec = to_record(path, opts.mode, opts.seed, r.get());
        nlohmann::json doc = {{"instance", rec.instance},
                              {"mode", rec.mode},
                              {"seed", rec.seed},
                              {"status", rec.feasible ? "feasible" : "unknown"},
                              {"cost", rec.feasible ? nlohmann::json(rec.cost) : nlohmann::json(nullptr)},
                              {"time_to_best_s", rec.time_to_best_s},
                              {"flips", rec.flips}};
        std::cout << doc.dump() << '\n';
    }
    std::cout.flush();
    return kExitOk;
}

int cmd_oracle(const std::string& path) {
    FormulaPtr f = load(path);
    int feasible = 0;
    std::uint64_t cost = 0;
    std::vector<std::uint8_t> model(fpsmax_formula_num_vars(f.get()));
    if (fpsmax_exact_solve(f.get(), &feasible, &cost, model.data()) != FPSMAX_OK) {
        std::cerr << "error: " << fpsmax_last_error() << '\n';
        return kExitUsage;
    }
    if (feasible) {
        std::cout << "o " << cost << "\ns OPTIMUM FOUND\n";
        print_model(model, false);
    } else {
        std::cout << "s UNSATISFIABLE\n";
    }
    return kExitOk;
}

std::vector<std::string> list_instances(const std::string& dir) {
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext == ".wcnf") out.push_back(entry.path().string());
    }
    if (ec) throw LoadError{kExitUsage, dir + ": " + ec.message()};
    std::sort(out.begin(), out.end());
    if (out.empty()) throw LoadError{kExitUsage, dir + ": no .wcnf instances"};
    return out;
}

unsigned worker_count(std::size_t cells) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("FPS_MAXSAT_THREADS")) {
        const long v = std::strtol(cap, nullptr, 10);
        if (v > 0) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(cells, 1)));
}

struct Cell {
    std::size_t instance;
    std::string label;
    fpsmax_config cfg;
};

// Runs every cell, each on its own solver state, and returns records in
// cell order.
std::vector<InstanceRecord> run_cells(const std::vector<std::string>& paths, const std::vector<FormulaPtr>& formulas,
                                      const std::vector<Cell>& cells) {
    std::vector<InstanceRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::string error;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
            try {
                const Cell& c = cells[i];
                ResultPtr r = run(formulas[c.instance].get(), c.cfg);
                records[i] = to_record(fs::path(paths[c.instance]).filename().string(), c.label, c.cfg.seed, r.get());
            } catch (const std::exception& e) {
                std::lock_guard lock(err_mu);
                error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = worker_count(cells.size());
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (!error.empty()) throw std::runtime_error(error);
    return records;
}

std::optional<std::map<std::string, std::uint64_t>> load_best_known(const std::string& path) {
    if (path.empty()) return std::nullopt;
    std::ifstream in(path);
    if (!in) throw LoadError{kExitUsage, "cannot open best-known file '" + path + "'"};
    return fpsmax::bench::read_best_known(in);
}

void write_records(const std::string& path, const std::vector<InstanceRecord>& records) {
    if (path.empty() || path == "-") {
        fpsmax::bench::write_csv(records, std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw LoadError{kExitUsage, "cannot write '" + path + "'"};
    fpsmax::bench::write_csv(records, out);
}

int cmd_bench(const std::string& dir, const std::vector<std::string>& modes, const std::vector<std::uint64_t>& seeds,
              const SolveOptions& base, const std::string& best_known_path, const std::string& csv_path) {
    const auto paths = list_instances(dir);
    const auto best_known = load_best_known(best_known_path);
    std::vector<FormulaPtr> formulas;
    for (const auto& p : paths) formulas.push_back(load(p));

    std::vector<Cell> cells;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        for (const auto& m : modes) {
            for (std::uint64_t s : seeds) {
                SolveOptions o = base;
                o.mode = m;
                o.seed = s;
                cells.push_back({i, m, make_config(o)});
            }
        }
    }
    const auto records = run_cells(paths, formulas, cells);
    write_records(csv_path, records);
    const auto report = fpsmax::bench::compare(records, modes, best_known ? &*best_known : nullptr);
    std::ostream& table = (csv_path.empty() || csv_path == "-") ? std::cerr : std::cout;
    fpsmax::bench::print_report(report, table);
    return kExitOk;
}

int cmd_sweep(const std::string& dir, const std::vector<std::uint32_t>& sc_nums,
              const std::vector<std::uint32_t>& sv_nums, const std::vector<std::uint64_t>& seeds,
              const SolveOptions& base, const std::string& best_known_path, const std::string& csv_path) {
    if (sc_nums.empty() || sv_nums.empty()) throw LoadError{kExitUsage, "empty parameter grid"};
    const auto paths = list_instances(dir);
    auto best_known = load_best_known(best_known_path);
    std::vector<FormulaPtr> formulas;
    for (const auto& p : paths) formulas.push_back(load(p));

    std::vector<Cell> cells;
    for (std::uint32_t sc : sc_nums) {
        for (std::uint32_t sv : sv_nums) {
            for (std::size_t i = 0; i < paths.size(); ++i) {
                for (std::uint64_t s : seeds) {
                    SolveOptions o = base;
                    o.sc_num = sc;
                    o.sv_num = sv;
                    o.seed = s;
                    cells.push_back({i, std::to_string(sc) + "x" + std::to_string(sv), make_config(o)});
                }
            }
        }
    }
    const auto records = run_cells(paths, formulas, cells);

    if (!best_known) {
        // Without a table, the best cost found anywhere in the grid stands in.
        best_known.emplace();
        for (const auto& r : records) {
            if (!r.feasible) continue;
            auto [it, inserted] = best_known->emplace(r.instance, r.cost);
            if (!inserted) it->second = std::min(it->second, r.cost);
        }
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!csv_path.empty() && csv_path != "-") {
        file.open(csv_path);
        if (!file) throw LoadError{kExitUsage, "cannot write '" + csv_path + "'"};
        out = &file;
    }
    *out << "sc_num,sv_num,avg_score\n";
    std::size_t k = 0;
    for (std::uint32_t sc : sc_nums) {
        for (std::uint32_t sv : sv_nums) {
            double sum = 0.0;
            std::size_t n = 0;
            for (std::size_t j = 0; j < paths.size() * seeds.size(); ++j, ++k) {
                const auto& r = records[k];
                auto it = best_known->find(r.instance);
                const auto achieved = r.feasible ? std::optional(r.cost) : std::nullopt;
                sum += it == best_known->end() ? 0.0 : fpsmax::bench::mse_score(it->second, achieved);
                ++n;
            }
            *out << sc << ',' << sv << ',' << (n ? sum / static_cast<double>(n) : 0.0) << '\n';
        }
    }
    return kExitOk;
}

int cmd_gen(const fpsmax_generator_params& p, const std::string& out_path, bool legacy) {
    fpsmax_formula* raw = nullptr;
    if (fpsmax_formula_generate(&p, &raw) != FPSMAX_OK) {
        std::cerr << "error: " << fpsmax_last_error() << '\n';
        return kExitUsage;
    }
    FormulaPtr f(raw);
    char* text = nullptr;
    std::size_t len = 0;
    if (fpsmax_formula_write(f.get(), legacy ? FPSMAX_DIALECT_LEGACY : FPSMAX_DIALECT_2022, &text, &len) !=
        FPSMAX_OK) {
        std::cerr << "error: " << fpsmax_last_error() << '\n';
        return kExitUsage;
    }
    std::unique_ptr<char, void (*)(char*)> guard(text, fpsmax_string_free);
    if (out_path.empty() || out_path == "-") {
        std::cout.write(text, static_cast<std::streamsize>(len));
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw LoadError{kExitUsage, "cannot write '" + out_path + "'"};
        out.write(text, static_cast<std::streamsize>(len));
    }
    return kExitOk;
}

void add_search_options(CLI::App* cmd, SolveOptions& o, bool with_mode) {
    if (with_mode) {
        cmd->add_option("--mode", o.mode, "fps | single | fps-rw | fps-always | fps-nostop")
            ->check(CLI::IsMember({"fps", "single", "fps-rw", "fps-always", "fps-nostop"}));
    }
    cmd->add_option("--time-limit", o.time_limit, "Wall-clock limit in seconds")->check(CLI::PositiveNumber);
    cmd->add_option("--sc-num", o.sc_num, "Falsified clauses sampled at a local optimum")->check(CLI::PositiveNumber);
    cmd->add_option("--sv-num", o.sv_num, "BMS draws for the second-level variable")->check(CLI::PositiveNumber);
    cmd->add_option("--max-flips", o.max_flips, "Flip budget (0 = unlimited)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local search for (weighted) partial MaxSAT with farsighted probabilistic sampling"};
    app.require_subcommand(1);

    SolveOptions solve_opts;
    std::string solve_path;
    bool json = false;
    bool v_literals = false;
    auto* solve = app.add_subcommand("solve", "Solve one WCNF instance (anytime o/s/v output)");
    solve->add_option("instance", solve_path, "WCNF file")->required();
    add_search_options(solve, solve_opts, true);
    solve->add_option("--seed", solve_opts.seed, "Random seed");
    solve->add_flag("--json", json, "Also print a JSON run record");
    solve->add_flag("--v-literals", v_literals, "Print the model as signed literals");

    std::string oracle_path;
    auto* oracle = app.add_subcommand("oracle", "Exact optimum by enumeration (at most 26 variables)");
    oracle->add_option("instance", oracle_path, "WCNF file")->required();

    SolveOptions bench_opts;
    bench_opts.time_limit = 60.0;
    std::string bench_dir, best_known, csv_out;
    std::vector<std::string> modes{"fps", "single"};
    std::vector<std::uint64_t> seeds{1};
    auto* bench = app.add_subcommand("bench", "Run modes over a directory of instances and compare them");
    bench->add_option("dir", bench_dir, "Directory of .wcnf files")->required();
    bench->add_option("--modes", modes, "Comma-separated mode labels")
        ->delimiter(',')
        ->check(CLI::IsMember({"fps", "single", "fps-rw", "fps-always", "fps-nostop"}));
    bench->add_option("--seeds", seeds, "Comma-separated seeds")->delimiter(',');
    bench->add_option("--best-known", best_known, "CSV of instance,cost");
    bench->add_option("--csv", csv_out, "Write run records here (default stdout)");
    add_search_options(bench, bench_opts, false);

    SolveOptions sweep_opts;
    sweep_opts.time_limit = 60.0;
    std::string sweep_dir, sweep_best, sweep_csv;
    std::vector<std::uint32_t> sc_nums{5, 10, 20, 50};
    std::vector<std::uint32_t> sv_nums{20, 50, 100};
    std::vector<std::uint64_t> sweep_seeds{1};
    auto* sweep = app.add_subcommand("sweep", "Average MSE score over an sc_num x sv_num grid");
    sweep->add_option("dir", sweep_dir, "Directory of .wcnf files")->required();
    sweep->add_option("--sc-nums", sc_nums, "Comma-separated sc_num values")->delimiter(',');
    sweep->add_option("--sv-nums", sv_nums, "Comma-separated sv_num values")->delimiter(',');
    sweep->add_option("--seeds", sweep_seeds, "Comma-separated seeds")->delimiter(',');
    sweep->add_option("--mode", sweep_opts.mode, "Search mode")
        ->check(CLI::IsMember({"fps", "fps-rw", "fps-always", "fps-nostop"}));
    sweep->add_option("--time-limit", sweep_opts.time_limit, "Wall-clock limit per run")->check(CLI::PositiveNumber);
    sweep->add_option("--max-flips", sweep_opts.max_flips, "Flip budget per run (0 = unlimited)");
    sweep->add_option("--best-known", sweep_best, "CSV of instance,cost");
    sweep->add_option("--csv", sweep_csv, "Write the grid here (default stdout)");

    fpsmax_generator_params gen_params{50, 150, 100, 3, 2, 1, 1, 1};
    bool unplanted = false;
    bool legacy = false;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Write a random (W)PMS instance");
    gen->add_option("--vars", gen_params.num_vars);
    gen->add_option("--hard", gen_params.num_hard);
    gen->add_option("--soft", gen_params.num_soft);
    gen->add_option("--hard-len", gen_params.hard_len);
    gen->add_option("--soft-len", gen_params.soft_len_max);
    gen->add_option("--max-weight", gen_params.max_weight, "1 gives unit weights");
    gen->add_option("--seed", gen_params.seed);
    gen->add_flag("--unplanted", unplanted, "Do not plant a satisfying assignment for the hard part");
    gen->add_flag("--legacy", legacy, "Write the headed pre-2022 dialect");
    gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve) return cmd_solve(solve_path, solve_opts, json, v_literals);
        if (*oracle) return cmd_oracle(oracle_path);
        if (*bench) return cmd_bench(bench_dir, modes, seeds, bench_opts, best_known, csv_out);
        if (*sweep) return cmd_sweep(sweep_dir, sc_nums, sv_nums, sweep_seeds, sweep_opts, sweep_best, sweep_csv);
        if (*gen) {
            gen_params.planted = unplanted ? 0 : 1;
            return cmd_gen(gen_params, gen_out, legacy);
        }
    } catch (const LoadError& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.exit_code;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
