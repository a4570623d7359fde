#include <doctest.h>

#include "quatlas/cli.hpp"
#include "quatlas/io.hpp"
#include "quatlas/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace quatlas;

namespace {

std::string fixture(const std::string& name) {
  return std::string(QUATLAS_TEST_DATA) + "/fixtures/" + name;
}

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("quatlas_test_" + name)).string();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("JSON round trip is exact") {
    QuatFrame f(2);
    ParamSpace ps(f);
    std::mt19937_64 rng(77);
    TorsionTriple t = reconstruct(f, ps.random(rng));
    const std::string path = temp_path("roundtrip.json");
    write_triple_file(path, 2, t);
    TripleFile back = read_triple_file(path);
    CHECK(back.n == 2);
    for (int k = 0; k < 3; ++k) CHECK(max_abs_diff(back.triple.nabla_omega[k], t.nabla_omega[k]) == 0.0);
    std::filesystem::remove(path);
  }

  TEST_CASE("schema violations") {
    using nlohmann::json;
    CHECK_THROWS_AS(triple_from_json(json::array()), SchemaError);
    CHECK_THROWS_AS(triple_from_json(json{{"n", 0}}), SchemaError);
    CHECK_THROWS_AS(triple_from_json(json{{"n", 1}}), SchemaError);
    CHECK_THROWS_AS(triple_from_json(json{{"n", 1}, {"schema", 2}}), SchemaError);
    CHECK_THROWS_AS(read_triple_file(fixture("bad_shape.json")), SchemaError);
    CHECK_THROWS_AS(read_triple_file(fixture("bad_syntax.json")), SchemaError);
    CHECK_THROWS_AS(read_triple_file(fixture("does_not_exist.json")), std::runtime_error);
  }

  TEST_CASE("golden CSV reader") {
    std::istringstream in("n,input,reduced,quat_s3h,quat_h\n2,558,558,1,0\n3,12F,000,,\n");
    auto rows = read_golden_csv(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].quat->digits() == "10");
    CHECK(!rows[1].quat);
    std::istringstream bad("3,12F\n");
    CHECK_THROWS_AS(read_golden_csv(bad), SchemaError);
  }

  TEST_CASE("emitters") {
    Engine e(1);
    auto rows = e.enumerate();
    std::ostringstream csv;
    write_results_csv(csv, rows);
    CHECK(csv.str().rfind("n,input,reduced\n", 0) == 0);
    auto j = results_json(rows);
    CHECK(j["schema"] == 1);
    CHECK(j["rows"].size() == 20);
    CHECK(j["rows"][0]["quat_h"].is_null());
    std::ostringstream txt;
    write_results_text(txt, rows);
    CHECK(txt.str().find("28 |") != std::string::npos);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("config precedence: flag over file over environment") {
    Config c;
    ::setenv("QUATLAS_TOL", "1e-6", 1);
    ::setenv("QUATLAS_N", "2", 1);
    apply_environment(c);
    CHECK(c.tol == 1e-6);
    CHECK(c.n == 2);
    apply_config_text(c, "# comment\nn = 1\nformat = \"csv\"\n", "test");
    CHECK(c.n == 1);
    CHECK(c.format == "csv");
    CHECK(c.tol == 1e-6);
    ::unsetenv("QUATLAS_TOL");
    ::unsetenv("QUATLAS_N");
    CHECK_THROWS_AS(apply_config_text(c, "colour = red\n", "test"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(c, "n = two\n", "test"), ConfigError);

    const std::string path = temp_path("cfg.txt");
    std::ofstream(path) << "n = 2\nformat = json\n";
    Run r = cli({"counts", "--config", path, "--n", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"n\": 1") != std::string::npos);
    std::filesystem::remove(path);
  }

  TEST_CASE("validation") {
    Config c;
    c.tol = 0.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = Config{};
    c.format = "xml";
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK(cli({"tables", "--n", "0"}).code == kExitConfig);
    CHECK(cli({"tables", "--n", "1", "--tol", "1"}).code == kExitConfig);
    CHECK(cli({"verify", "--suite", "nope"}).code == kExitConfig);
    CHECK(cli({"frobnicate"}).code == kExitConfig);
    CHECK(cli({"--help"}).code == kExitOk);
  }

  TEST_CASE("tables and counts") {
    Run r = cli({"tables", "--n", "1", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 21);
    CHECK(r.out.find("1,28A,282") != std::string::npos);
    Run c = cli({"counts", "--n", "1"});
    CHECK(c.out.find("7") != std::string::npos);
    // identical runs give identical bytes
    CHECK(cli({"tables", "--n", "1", "--format", "json"}).out ==
          cli({"tables", "--n", "1", "--format", "json"}).out);
  }

  TEST_CASE("classify exit codes") {
    CHECK(cli({"classify", fixture("n2_zero.json")}).code == kExitOk);
    Run z = cli({"classify", fixture("n2_zero.json"), "--format", "json"});
    auto j = nlohmann::json::parse(z.out);
    CHECK(j["masks"] == "000");
    CHECK(j["quat_s3h"] == 0);
    CHECK(j["quat_h"] == 0);
    for (const char* f : {"n2_break-skew.json", "n2_break-type.json", "n2_break-compat.json"}) {
      Run r = cli({"classify", fixture(f)});
      CHECK(r.code == kExitAdmissibility);
      CHECK(r.out.find("admissibility residual") != std::string::npos);
    }
    CHECK(cli({"classify", fixture("bad_shape.json")}).code == kExitSchema);
    CHECK(cli({"classify", fixture("bad_syntax.json")}).code == kExitSchema);
  }

  TEST_CASE("classified masks match the in-process computation") {
    TripleFile tf = read_triple_file(fixture("n2_random.json"));
    Classification c = classify_triple(tf.n, tf.triple, 1e-8);
    QuatFrame f(2);
    ParamSpace ps(f);
    TorsionParams p = extract_params(f, tf.triple);
    for (Structure a : kStructures)
      CHECK(c.masks.m[index_of(a)] == gh_type(GHProjectorSet(f, a), tf.triple[a]));
    CHECK(*c.quat == quat_type(ps, alpha_isotypic(ps), p));
    Run r = cli({"classify", fixture("n2_random.json"), "--format", "json"});
    CHECK(nlohmann::json::parse(r.out)["masks"] == c.masks.hex());
  }

  TEST_CASE("sample writes admissible triples") {
    const std::string path = temp_path("sample.json");
    CHECK(cli({"sample", "--n", "2", "--seed", "3", "--out", path}).code == 0);
    CHECK(cli({"classify", path}).code == 0);
    CHECK(cli({"sample", "--kind", "break-compat", "--n", "2", "--out", path}).code == 0);
    CHECK(cli({"classify", path}).code == kExitAdmissibility);
    std::filesystem::remove(path);
  }
}
