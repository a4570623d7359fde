// Acceptance runner: one PASS/FAIL line per criterion, sub-checks indented.
//   acceptance                    all criteria
//   acceptance --criterion 6      a single one (repeatable)
//   acceptance --golden-n3        full n = 3 table against the golden file

#include "quatlas/cli.hpp"
#include "quatlas/report.hpp"
#include "quatlas/suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

using namespace quatlas;

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::uint64_t kSeed = 20260101;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

struct Verdict {
  bool ok = true;
  std::vector<std::string> lines;

  void check(bool pass, const std::string& what) {
    ok = ok && pass;
    lines.push_back(std::string(pass ? "ok   " : "FAIL ") + what);
  }
  void info(const std::string& what) { lines.push_back("info " + what); }
  void clauses(const std::vector<ClauseResult>& cs, const std::string& prefix = "") {
    for (const auto& c : cs) check(c.passed, prefix + c.name + ": " + c.detail);
  }
};

// Lazily built engines and enumerations shared across criteria.
struct Cache {
  std::map<int, std::unique_ptr<Engine>> engines;
  std::map<int, std::vector<ReductionResult>> rows;
  std::map<int, double> build_s, enum_s;

  const Engine& engine(int n) {
    auto& e = engines[n];
    if (!e) {
      const auto t0 = Clock::now();
      e = std::make_unique<Engine>(n);
      build_s[n] = since(t0);
    }
    return *e;
  }
  const std::vector<ReductionResult>& enumeration(int n) {
    auto it = rows.find(n);
    if (it != rows.end()) return it->second;
    const Engine& e = engine(n);
    const auto t0 = Clock::now();
    auto r = e.enumerate();
    enum_s[n] = since(t0);
    return rows.emplace(n, std::move(r)).first->second;
  }
  double regeneration_seconds(int n) { return build_s[n] + enum_s[n]; }
};

std::vector<GoldenRow> golden(const std::string& name) {
  std::ifstream in(std::string(QUATLAS_TEST_DATA) + "/golden/" + name);
  if (!in) throw std::runtime_error("missing golden file " + name);
  return read_golden_csv(in);
}

const ReductionResult* find(const std::vector<ReductionResult>& rows, const TypeTriple& t) {
  for (const auto& r : rows)
    if (r.input == t) return &r;
  return nullptr;
}

std::string show(const ReductionResult& r) {
  std::string s = r.input.hex() + " -> " + r.reduced.hex();
  if (r.quat) s += " quat " + r.quat->digits();
  return s;
}

Verdict c1(Cache&) {
  Verdict v;
  const auto t0 = Clock::now();
  for (int n : {1, 2, 3}) v.clauses(suite_projectors(n), "n=" + std::to_string(n) + " ");
  const double s = since(t0);
  v.check(s < 30.0, "runtime " + fmt(s) + " s (limit 30 s)");
  return v;
}

Verdict c2(Cache&) {
  Verdict v;
  for (int n : {2, 3}) v.clauses(suite_roundtrip(n, kSeed, 200), "n=" + std::to_string(n) + " ");
  return v;
}

Verdict c3(Cache&) {
  Verdict v;
  for (int n : {1, 2, 3}) v.clauses(suite_dimensions(n), "n=" + std::to_string(n) + " ");
  return v;
}

Verdict c4(Cache&) {
  Verdict v;
  const auto t0 = Clock::now();
  v.clauses(suite_oracles(2, kSeed, 100), "n=2 ");
  const double s = since(t0);
  v.check(s < 120.0, "runtime " + fmt(s) + " s (limit 120 s)");
  return v;
}

Verdict c5(Cache&) {
  Verdict v;
  for (int n : {2, 3}) v.clauses(suite_formulas(n, kSeed, 20), "n=" + std::to_string(n) + " ");
  return v;
}

Verdict c6(Cache& cache) {
  Verdict v;
  const auto& rows = cache.enumeration(3);
  const double s = cache.regeneration_seconds(3);
  v.check(s < 600.0, "n=3 enumeration " + fmt(s) + " s (limit 600 s)");
  auto anchor = [&](const char* in, const char* reduced, const char* quat) {
    const ReductionResult* r = find(rows, TypeTriple::parse(in));
    if (!r) {
      v.check(false, std::string("anchor ") + in + ": cell missing");
      return;
    }
    bool ok = r->reduced.hex() == reduced;
    if (quat) ok = ok && r->quat && r->quat->digits() == quat;
    std::string want = std::string(in) + " -> " + reduced + (quat ? std::string(" quat ") + quat : "");
    v.check(ok, "anchor " + want + " (got " + show(*r) + ")");
  };
  anchor("00F", "000", nullptr);
  anchor("12F", "11C", nullptr);
  anchor("0EE", "0EE", "33");
  anchor("444", "444", "07");
  anchor("FFF", "FFF", "77");
  if (const ReductionResult* r = find(rows, TypeTriple::parse("13F"))) v.info("neighbouring cell " + show(*r));
  const CountsReport c = counts(rows);
  v.check(c.total == 816, "cells " + std::to_string(c.total));
  v.check(c.hyperkahler == 276, "hyperKaehler " + std::to_string(c.hyperkahler) + " (expected 276)");
  v.check(c.lck == 44, "locally conformal hyperKaehler " + std::to_string(c.lck) + " (expected 44)");
  v.check(c.distinct_reduced == 167 || c.distinct_reduced_with_quat == 167,
          "distinct types " + std::to_string(c.distinct_reduced) + " (reduced triple) / " +
              std::to_string(c.distinct_reduced_with_quat) + " (with quat type), expected 167");
  const auto bad = compare_golden(rows, golden("table_n3.csv"));
  v.info("golden n=3 table: " + std::to_string(bad.size()) + " mismatching cell(s)");
  return v;
}

Verdict c7(Cache& cache) {
  Verdict v;
  const auto& rows = cache.enumeration(2);
  const double s = cache.regeneration_seconds(2);
  v.check(s < 120.0, "n=2 enumeration " + fmt(s) + " s (limit 120 s)");
  const CountsReport c = counts(rows);
  v.check(c.hyperkahler == 316, "hyperKaehler " + std::to_string(c.hyperkahler) + " (expected 316)");
  v.check(c.lck == 44, "locally conformal hyperKaehler " + std::to_string(c.lck) + " (expected 44)");
  v.check(c.distinct_reduced == 144 || c.distinct_reduced_with_quat == 144,
          "distinct types " + std::to_string(c.distinct_reduced) + " / " +
              std::to_string(c.distinct_reduced_with_quat) + " (expected 144)");
  const auto diff = diff_results(rows, cache.enumeration(3));
  const auto listed = golden("table_n2_diff.csv");
  std::set<TypeTriple> got, want;
  for (const auto& r : diff) got.insert(r.input);
  for (const auto& g : listed) want.insert(g.input);
  std::string extra, missing;
  for (const auto& t : got)
    if (!want.count(t)) extra += t.hex() + " ";
  for (const auto& t : want)
    if (!got.count(t)) missing += t.hex() + " ";
  v.check(got == want, "difference set: " + std::to_string(got.size()) + " cells vs " +
                           std::to_string(want.size()) + " listed" +
                           (extra.empty() ? "" : ", extra " + extra) +
                           (missing.empty() ? "" : ", missing " + missing));
  const auto bad = compare_golden(diff, listed);
  std::string first;
  for (std::size_t k = 0; k < bad.size() && k < 5; ++k) first += bad[k].describe() + "; ";
  v.check(bad.empty(), "listed outcomes: " + std::to_string(bad.size()) + " mismatch(es) " + first);
  const ReductionResult* r = find(rows, TypeTriple(5, 5, 8));
  v.check(r && r->reduced == TypeTriple(5, 5, 8) && r->quat && r->quat->digits() == "10",
          "558 unreduced with quat 10 (got " + (r ? show(*r) : std::string("nothing")) + ")");
  return v;
}

Verdict c8(Cache& cache) {
  Verdict v;
  const auto& rows = cache.enumeration(1);
  const double s = cache.regeneration_seconds(1);
  v.check(s < 1.0, "n=1 enumeration " + fmt(s) + " s (limit 1 s)");
  const CountsReport c = counts(rows);
  v.check(c.distinct_reduced == 7, "distinct types " + std::to_string(c.distinct_reduced));
  const auto bad = compare_golden(rows, golden("table_n1.csv"));
  std::string first;
  for (const auto& m : bad) first += m.describe() + "; ";
  v.check(bad.empty(), "table cells: " + std::to_string(bad.size()) + " mismatch(es) " + first);
  const ReductionResult* a = find(rows, TypeTriple::parse("28A"));
  const ReductionResult* b = find(rows, TypeTriple::parse("0AA"));
  v.check(a && a->reduced.hex() == "282", "28A -> 282 (got " + (a ? show(*a) : "nothing") + ")");
  v.check(b && b->reduced.hex() == "0AA", "0AA unreduced (got " + (b ? show(*b) : "nothing") + ")");
  return v;
}

Verdict c9(Cache& cache) {
  Verdict v;
  for (int n : {2, 3}) v.clauses(verify_theorems(cache.engine(n)), "n=" + std::to_string(n) + " ");
  return v;
}

Verdict c10(Cache&) {
  Verdict v;
  int controls = 0;
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(std::string(QUATLAS_TEST_DATA) + "/fixtures"))
    if (entry.path().filename().string().find("break") != std::string::npos)
      names.push_back(entry.path().string());
  std::sort(names.begin(), names.end());
  for (const auto& path : names) {
    std::ostringstream out, err;
    const int code = run_cli({"classify", path}, out, err);
    ++controls;
    std::string res = out.str();
    if (!res.empty() && res.back() == '\n') res.pop_back();
    v.check(code == kExitAdmissibility, std::filesystem::path(path).filename().string() + " exit " +
                                            std::to_string(code) + ", " + res);
  }
  v.check(controls >= 3, std::to_string(controls) + " negative control fixture(s)");
  return v;
}

Verdict golden_n3(Cache& cache) {
  Verdict v;
  const auto bad = compare_golden(cache.enumeration(3), golden("table_n3.csv"));
  for (const auto& m : bad) v.check(false, m.describe());
  v.check(bad.empty(), std::to_string(bad.size()) + " mismatching cell(s) out of 816");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> which;
  bool golden = false;
  app.add_option("--criterion", which, "criterion number (1-10)")->check(CLI::Range(1, 10));
  app.add_flag("--golden-n3", golden, "compare the full n = 3 table with the golden file");
  CLI11_PARSE(app, argc, argv);

  static const std::map<int, std::pair<const char*, Verdict (*)(Cache&)>> criteria{
      {1, {"projector algebra, n = 1, 2, 3", c1}},
      {2, {"round trip and defining identities, n = 2, 3", c2}},
      {3, {"dimension ledger", c3}},
      {4, {"cross-oracle suite, n = 2", c4}},
      {5, {"closed forms vs projector compositions, n = 2, 3", c5}},
      {6, {"table regeneration, n = 3", c6}},
      {7, {"table regeneration, n = 2", c7}},
      {8, {"table regeneration, n = 1", c8}},
      {9, {"theorem suite, n = 2, 3", c9}},
      {10, {"negative controls rejected with exit 4", c10}},
  };
  Cache cache;
  bool all_ok = true;
  auto report = [&](const std::string& title, const Verdict& v) {
    for (const auto& l : v.lines) std::cout << "    " << l << '\n';
    std::cout << (v.ok ? "PASS " : "FAIL ") << title << '\n' << std::flush;
    all_ok = all_ok && v.ok;
  };
  if (golden) {
    report("golden n = 3 table", golden_n3(cache));
    return all_ok ? 0 : 1;
  }
  if (which.empty())
    for (const auto& [k, _] : criteria) which.push_back(k);
  for (int k : which) {
    const auto& [title, fn] = criteria.at(k);
    Verdict v;
    try {
      v = fn(cache);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    report("criterion " + std::to_string(k) + ": " + title, v);
  }
  return all_ok ? 0 : 1;
}
