#include "quatlas/report.hpp"

#include "quatlas/io.hpp"

#include <map>
#include <ostream>
#include <sstream>

namespace quatlas {

using nlohmann::json;

namespace {

bool has_quat(const std::vector<ReductionResult>& rows) {
  return !rows.empty() && rows.front().quat.has_value();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out(1);
  for (char c : s) {
    if (c == sep)
      out.emplace_back();
    else if (c != '\r')
      out.back() += c;
  }
  return out;
}

}  // namespace

void write_results_csv(std::ostream& os, const std::vector<ReductionResult>& rows) {
  const bool q = has_quat(rows);
  os << "n,input,reduced" << (q ? ",quat_s3h,quat_h" : "") << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << r.input.hex() << ',' << r.reduced.hex();
    if (q) os << ',' << int(r.quat->s3h) << ',' << int(r.quat->h);
    os << '\n';
  }
}

json results_json(const std::vector<ReductionResult>& rows) {
  json doc;
  doc["schema"] = 1;
  doc["n"] = rows.empty() ? 0 : rows.front().n;
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["n"] = r.n;
    j["input_triple"] = r.input.hex();
    j["reduced_triple"] = r.reduced.hex();
    if (r.quat) {
      j["quat_s3h"] = r.quat->s3h;
      j["quat_h"] = r.quat->h;
    } else {
      j["quat_s3h"] = nullptr;
      j["quat_h"] = nullptr;
    }
    arr.push_back(std::move(j));
  }
  doc["rows"] = std::move(arr);
  return doc;
}

void write_results_text(std::ostream& os, const std::vector<ReductionResult>& rows) {
  if (rows.empty()) return;
  os << "n = " << rows.front().n << ", " << rows.size() << " cells\n";
  std::map<std::pair<int, int>, std::vector<const ReductionResult*>> grid;
  for (const auto& r : rows) grid[{r.input.m[0], r.input.m[1]}].push_back(&r);
  for (const auto& [ij, cells] : grid) {
    os << std::hex << std::uppercase << ij.first << ij.second << std::dec << " |";
    for (const ReductionResult* r : cells) {
      os << ' ' << std::hex << std::uppercase << int(r->input.m[2]) << std::dec << ':';
      if (r->reduced == r->input && r->quat)
        os << r->quat->digits();
      else
        os << r->reduced.hex();
    }
    os << '\n';
  }
}

json counts_json(const CountsReport& c) {
  return json{{"schema", 1},
              {"n", c.n},
              {"total", c.total},
              {"hyperkahler", c.hyperkahler},
              {"lck", c.lck},
              {"distinct_reduced", c.distinct_reduced},
              {"distinct_reduced_with_quat", c.distinct_reduced_with_quat},
              {"unreduced", c.unreduced}};
}

void write_counts_csv(std::ostream& os, const CountsReport& c) {
  os << "n,total,hyperkahler,lck,distinct_reduced,distinct_reduced_with_quat,unreduced\n"
     << c.n << ',' << c.total << ',' << c.hyperkahler << ',' << c.lck << ','
     << c.distinct_reduced << ',' << c.distinct_reduced_with_quat << ',' << c.unreduced << '\n';
}

void write_counts_text(std::ostream& os, const CountsReport& c) {
  os << "n                                   " << c.n << '\n'
     << "cells                               " << c.total << '\n'
     << "hyperKaehler                        " << c.hyperkahler << '\n'
     << "locally conformal hyperKaehler      " << c.lck << '\n'
     << "distinct types (reduced triple)     " << c.distinct_reduced << '\n'
     << "distinct types (triple, quat type)  " << c.distinct_reduced_with_quat << '\n'
     << "cells without reduction             " << c.unreduced << '\n';
}

std::vector<GoldenRow> read_golden_csv(std::istream& is) {
  std::vector<GoldenRow> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line.rfind("n,", 0) == 0) continue;
    auto f = split(line, ',');
    if (f.size() != 3 && f.size() != 5)
      throw SchemaError("golden line " + std::to_string(lineno) + ": expected 3 or 5 fields");
    GoldenRow g;
    try {
      g.n = std::stoi(f[0]);
      g.input = TypeTriple::parse(f[1]);
      g.reduced = TypeTriple::parse(f[2]);
      if (f.size() == 5 && !f[3].empty()) {
        QuatType q;
        q.s3h = std::uint8_t(std::stoi(f[3]));
        q.h = std::uint8_t(std::stoi(f[4]));
        g.quat = q;
      }
    } catch (const std::exception& e) {
      throw SchemaError("golden line " + std::to_string(lineno) + ": " + e.what());
    }
    out.push_back(g);
  }
  return out;
}

std::string GoldenMismatch::describe() const {
  std::ostringstream os;
  os << expected.input.hex() << ": expected " << expected.reduced.hex();
  if (expected.quat) os << " [" << expected.quat->digits() << "]";
  if (got) {
    os << ", got " << got->reduced.hex();
    if (got->quat) os << " [" << got->quat->digits() << "]";
  } else {
    os << ", cell not computed";
  }
  return os.str();
}

std::vector<GoldenMismatch> compare_golden(const std::vector<ReductionResult>& rows,
                                           const std::vector<GoldenRow>& golden) {
  std::map<TypeTriple, const ReductionResult*> idx;
  for (const auto& r : rows) idx[r.input] = &r;
  std::vector<GoldenMismatch> out;
  for (const GoldenRow& g : golden) {
    auto it = idx.find(g.input);
    if (it == idx.end()) {
      out.push_back({g, std::nullopt});
      continue;
    }
    const ReductionResult& r = *it->second;
    bool ok = r.reduced == g.reduced;
    if (g.quat) ok = ok && r.quat && *r.quat == *g.quat;
    if (!ok) out.push_back({g, r});
  }
  return out;
}

}  // namespace quatlas
