#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <tuple>
#include <vector>

#include "gsieve/verify.hpp"

namespace gsieve {

// One CSV row: a (report, bound) pair.
struct CsvRecord {
    std::string set;
    std::int64_t Q = 0;
    std::int64_t N = 0;
    std::string seq;
    std::uint64_t seed = 0;
    std::int64_t nodes = 0;
    double Z = 0;
    double lhs = 0;
    std::string bound;
    double rhs = 0;
    double ratio = 0;
    double seconds = 0;
};

inline std::string format_sig17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<CsvRecord> to_records(const std::vector<SieveReport>& reports,
                                         bool zero_seconds = false) {
    std::vector<CsvRecord> rows;
    for (const SieveReport& rep : reports)
        for (const BoundOutcome& out : rep.outcomes) {
            CsvRecord row;
            row.set = to_string(rep.config.set);
            row.Q = rep.config.Q;
            row.N = rep.config.N;
            row.seq = to_string(rep.config.seq);
            row.seed = rep.config.seed;
            row.nodes = rep.farey_nodes;
            row.Z = rep.Z;
            row.lhs = rep.lhs;
            row.bound = to_string(out.spec.name);
            row.rhs = out.rhs;
            row.ratio = out.ratio;
            row.seconds = zero_seconds ? 0.0 : rep.seconds;
            rows.push_back(row);
        }
    return rows;
}

// Header + one line per record, sorted by (set, Q, N, bound), floating-point
// fields with 17 significant digits, LF line endings, trailing newline.
inline std::string render_csv(std::vector<CsvRecord> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const CsvRecord& a, const CsvRecord& b) {
        return std::tie(a.set, a.Q, a.N, a.bound) < std::tie(b.set, b.Q, b.N, b.bound);
    });
    std::string out = "set,Q,N,seq,seed,nodes,Z,lhs,bound,rhs,ratio,seconds\n";
    for (const CsvRecord& r : rows) {
        out += r.set + ',' + std::to_string(r.Q) + ',' + std::to_string(r.N) + ',' +
               r.seq + ',' + std::to_string(r.seed) + ',' + std::to_string(r.nodes) +
               ',' + format_sig17(r.Z) + ',' + format_sig17(r.lhs) + ',' + r.bound +
               ',' + format_sig17(r.rhs) + ',' + format_sig17(r.ratio) + ',' +
               format_sig17(r.seconds) + '\n';
    }
    return out;
}

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void emit_csv(const std::vector<SieveReport>& reports, const std::string& path,
                     bool zero_seconds = false) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("emit_csv: cannot open " + path);
    f << render_csv(to_records(reports, zero_seconds));
    if (!f) throw io_error("emit_csv: write failed for " + path);
}

}  // namespace gsieve
