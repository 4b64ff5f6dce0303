#include "fpsmax/report.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

namespace fpsmax::bench {

namespace {

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                fields.back() += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.emplace_back();
        } else if (ch != '\r') {
            fields.back() += ch;
        }
    }
    return fields;
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
    T v{};
    if constexpr (std::is_floating_point_v<T>) {
        try {
            std::size_t used = 0;
            v = std::stod(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
    } else {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc{} && p == s.data() + s.size()) return v;
    }
    throw std::runtime_error(std::string("bad ") + what + " field '" + s + "'");
}

}  // namespace

void write_csv(const std::vector<InstanceRecord>& records, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const InstanceRecord& r : records) {
        out << quote(r.instance) << ',' << quote(r.mode) << ',' << r.seed << ','
            << (r.feasible ? "feasible" : "unknown") << ',';
        if (r.feasible) {
            out << r.cost;
        } else {
            out << "inf";
        }
        out << ',' << std::setprecision(6) << std::fixed << r.time_to_best_s << std::defaultfloat << ','
            << r.flips << '\n';
    }
}

std::vector<InstanceRecord> read_csv(std::istream& in) {
    std::vector<InstanceRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.rfind("instance,", 0) == 0) continue;
        auto f = split_csv(line);
        if (f.size() != 7) throw std::runtime_error("expected 7 CSV fields: " + line);
        InstanceRecord r;
        r.instance = f[0];
        r.mode = f[1];
        r.seed = parse_number<std::uint64_t>(f[2], "seed");
        r.feasible = f[3] == "feasible";
        if (r.feasible) r.cost = parse_number<std::uint64_t>(f[4], "cost");
        r.time_to_best_s = parse_number<double>(f[5], "time");
        r.flips = parse_number<std::uint64_t>(f[6], "flips");
        out.push_back(std::move(r));
    }
    return out;
}

std::map<std::string, std::uint64_t> read_best_known(std::istream& in) {
    std::map<std::string, std::uint64_t> table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.rfind("instance,", 0) == 0) continue;
        auto f = split_csv(line);
        if (f.size() != 2) throw std::runtime_error("expected instance,cost: " + line);
        table[f[0]] = parse_number<std::uint64_t>(f[1], "cost");
    }
    return table;
}

double mse_score(std::uint64_t best_known, std::optional<std::uint64_t> achieved) {
    if (!achieved) return 0.0;
    if (*achieved < best_known) {
        throw StaleBestKnown("achieved cost " + std::to_string(*achieved) + " is below best-known " +
                             std::to_string(best_known));
    }
    return (static_cast<double>(best_known) + 1.0) / (static_cast<double>(*achieved) + 1.0);
}

namespace {

// Orders results: lower cost first (infeasible last), then lower time.
struct Outcome {
    bool feasible;
    std::uint64_t cost;
    double time;

    bool better_cost(const Outcome& o) const {
        if (feasible != o.feasible) return feasible;
        return feasible && cost < o.cost;
    }
    bool same_cost(const Outcome& o) const { return feasible == o.feasible && (!feasible || cost == o.cost); }
};

}  // namespace

BenchReport compare(const std::vector<InstanceRecord>& records, const std::vector<std::string>& modes,
                    const std::map<std::string, std::uint64_t>* best_known) {
    using Cell = std::pair<std::string, std::uint64_t>;
    std::map<Cell, std::map<std::string, Outcome>> cells;
    for (const InstanceRecord& r : records) {
        if (std::find(modes.begin(), modes.end(), r.mode) == modes.end()) continue;
        cells[{r.instance, r.seed}][r.mode] = {r.feasible, r.cost, r.time_to_best_s};
    }

    BenchReport report;
    std::map<std::string, std::size_t> index;
    for (const std::string& m : modes) {
        index[m] = report.modes.size();
        ModeSummary& s = report.modes.emplace_back();
        s.mode = m;
    }
    std::vector<double> win_time(modes.size(), 0.0), all_time(modes.size(), 0.0), mse_sum(modes.size(), 0.0);

    for (const auto& [cell, outcomes] : cells) {
        const Outcome* best = nullptr;
        for (const auto& [mode, o] : outcomes) {
            if (!best || o.better_cost(*best)) best = &o;
        }
        double fastest = std::numeric_limits<double>::infinity();
        for (const auto& [mode, o] : outcomes) {
            if (o.same_cost(*best)) fastest = std::min(fastest, o.time);
        }
        for (const auto& [mode, o] : outcomes) {
            ModeSummary& s = report.modes[index[mode]];
            const std::size_t k = index[mode];
            ++s.cells;
            all_time[k] += o.time;
            if (o.feasible) ++s.feasible;
            if (o.same_cost(*best)) {
                ++s.best_found;
                if (o.time == fastest) {
                    ++s.wins;
                    win_time[k] += o.time;
                }
            }
            if (best_known) {
                auto it = best_known->find(cell.first);
                if (it != best_known->end()) {
                    mse_sum[k] += mse_score(it->second, o.feasible ? std::optional(o.cost) : std::nullopt);
                    ++s.mse_cells;
                }
            }
        }
    }

    for (std::size_t k = 0; k < report.modes.size(); ++k) {
        ModeSummary& s = report.modes[k];
        if (s.wins) s.mean_win_time_s = win_time[k] / static_cast<double>(s.wins);
        if (s.cells) s.mean_time_s = all_time[k] / static_cast<double>(s.cells);
        if (s.mse_cells) s.mean_mse = mse_sum[k] / static_cast<double>(s.mse_cells);
    }

    for (std::size_t i = 0; i < modes.size(); ++i) {
        for (std::size_t j = i + 1; j < modes.size(); ++j) {
            PairwiseRow row{modes[i], modes[j]};
            for (const auto& [cell, outcomes] : cells) {
                auto a = outcomes.find(modes[i]);
                auto b = outcomes.find(modes[j]);
                if (a == outcomes.end() || b == outcomes.end()) continue;
                const Outcome& x = a->second;
                const Outcome& y = b->second;
                if (x.better_cost(y) || (x.same_cost(y) && x.time < y.time)) {
                    ++row.a_wins;
                } else if (y.better_cost(x) || (x.same_cost(y) && y.time < x.time)) {
                    ++row.b_wins;
                } else {
                    ++row.ties;
                }
            }
            report.pairwise.push_back(row);
        }
    }
    return report;
}

void print_report(const BenchReport& report, std::ostream& out) {
    out << std::left << std::setw(14) << "mode" << std::right << std::setw(7) << "cells" << std::setw(7) << "feas"
        << std::setw(7) << "#win" << std::setw(12) << "win-time" << std::setw(7) << "#best" << std::setw(12)
        << "mean-time" << std::setw(10) << "mse" << '\n';
    out << std::fixed << std::setprecision(3);
    for (const ModeSummary& s : report.modes) {
        out << std::left << std::setw(14) << s.mode << std::right << std::setw(7) << s.cells << std::setw(7)
            << s.feasible << std::setw(7) << s.wins << std::setw(12) << s.mean_win_time_s << std::setw(7)
            << s.best_found << std::setw(12) << s.mean_time_s << std::setw(10);
        if (s.mean_mse) {
            out << std::setprecision(4) << *s.mean_mse << std::setprecision(3);
        } else {
            out << "-";
        }
        out << '\n';
    }
    for (const PairwiseRow& p : report.pairwise) {
        out << p.a << " vs " << p.b << ": " << p.a_wins << " - " << p.b_wins << " (ties " << p.ties << ")\n";
    }
    out << std::defaultfloat;
}

}  // namespace fpsmax::bench
