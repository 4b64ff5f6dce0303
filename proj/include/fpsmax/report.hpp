#ifndef FPSMAX_REPORT_HPP
#define FPSMAX_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpsmax::bench {

/// One (instance, mode, seed) run. cost is meaningful only when feasible.
struct InstanceRecord {
    std::string instance;
    std::string mode;
    std::uint64_t seed = 1;
    bool feasible = false;
    std::uint64_t cost = 0;
    double time_to_best_s = 0.0;
    std::uint64_t flips = 0;
};

inline constexpr const char* kCsvHeader = "instance,mode,seed,status,cost,time_to_best_s,flips";

void write_csv(const std::vector<InstanceRecord>& records, std::ostream& out);
std::vector<InstanceRecord> read_csv(std::istream& in);

/// Best-known table: "instance,cost" rows, header optional.
std::map<std::string, std::uint64_t> read_best_known(std::istream& in);

class StaleBestKnown : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// MaxSAT Evaluation incomplete-track score: (best_known + 1) / (cost + 1),
/// zero for an infeasible result. Throws StaleBestKnown when a feasible
/// cost beats best_known.
double mse_score(std::uint64_t best_known, std::optional<std::uint64_t> achieved);

struct ModeSummary {
    std::string mode;
    std::size_t cells = 0;
    std::size_t feasible = 0;
    std::size_t wins = 0;        // best cost, ties broken by lower time_to_best
    std::size_t best_found = 0;  // best cost among all modes, ties credited to every tied mode
    double mean_win_time_s = 0.0;
    double mean_time_s = 0.0;
    std::optional<double> mean_mse;
    std::size_t mse_cells = 0;
};

struct PairwiseRow {
    std::string a;
    std::string b;
    std::size_t a_wins = 0;
    std::size_t b_wins = 0;
    std::size_t ties = 0;
};

struct BenchReport {
    std::vector<ModeSummary> modes;
    std::vector<PairwiseRow> pairwise;
};

/// Comparison cells are (instance, seed). Within a cell a mode wins iff no
/// other mode has strictly lower cost (infeasible loses to any feasible
/// cost) and, among equal best costs, it has the lowest time_to_best.
/// Exactly equal cost and time credits every tied mode.
BenchReport compare(const std::vector<InstanceRecord>& records, const std::vector<std::string>& modes,
                    const std::map<std::string, std::uint64_t>* best_known = nullptr);

void print_report(const BenchReport& report, std::ostream& out);

}  // namespace fpsmax::bench

#endif
