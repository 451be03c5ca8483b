#include <algorithm>
#include <cmath>
#include <ostream>
#include <tuple>

#include "dhg/io.hpp"

namespace dhg {
namespace {

struct Row {
  double time;
  std::size_t vertex;
  bool value;
  int depth;
};

std::vector<Row> sorted_rows(const Execution& exec) {
  std::vector<Row> rows;
  for (std::size_t v = 0; v < exec.records.size(); ++v) {
    for (const auto& r : exec.records[v]) rows.push_back({r.time, v, r.value, r.depth});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.time, a.vertex) < std::tie(b.time, b.vertex);
  });
  return rows;
}

// Printable identifier codes '!'..'~', little-endian base 94.
std::string vcd_code(std::size_t n) {
  std::string code;
  do {
    code.push_back(static_cast<char>('!' + n % 94));
    n /= 94;
  } while (n > 0);
  return code;
}

std::string vcd_name(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    if (c == ' ' || c == '\t' || c == '\n') c = '_';
  }
  return out;
}

}  // namespace

void write_trace_csv(std::ostream& out, const Execution& exec) {
  out << "time_s,vertex,value,causal_depth\n";
  for (const auto& r : sorted_rows(exec)) {
    out << format_double(r.time) << ',' << exec.ids[r.vertex] << ',' << (r.value ? 1 : 0) << ','
        << r.depth << '\n';
  }
}

void write_vcd(std::ostream& out, const Execution& exec) {
  out << "$timescale 1fs $end\n$scope module circuit $end\n";
  for (std::size_t v = 0; v < exec.ids.size(); ++v) {
    out << "$var wire 1 " << vcd_code(v) << ' ' << vcd_name(exec.ids[v]) << " $end\n";
  }
  out << "$upscope $end\n$enddefinitions $end\n#0\n$dumpvars\n";
  for (std::size_t v = 0; v < exec.ids.size(); ++v) {
    out << (exec.initial[v] ? '1' : '0') << vcd_code(v) << '\n';
  }
  out << "$end\n";
  long long current = 0;
  for (const auto& r : sorted_rows(exec)) {
    const long long fs = std::llround(r.time * 1e15);
    if (fs != current) {
      out << '#' << fs << '\n';
      current = fs;
    }
    out << (r.value ? '1' : '0') << vcd_code(r.vertex) << '\n';
  }
}

}  // namespace dhg
