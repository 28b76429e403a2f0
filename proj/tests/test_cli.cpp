#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "grover_qa/cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "grover-qa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = grover_qa::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

std::vector<double> fields(const std::string& line) {
  std::vector<double> v;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) v.push_back(std::stod(f));
  return v;
}

std::string temp_path(const std::string& name) {
  const char* dir = std::getenv("GROVER_QA_TMPDIR");
  return std::string(dir ? dir : ".") + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("evolve writes a self-describing trajectory") {
  const auto r = invoke({"evolve", "--n", "1024", "--tau", "30", "--mode", "it",
                         "--schedule", "linear"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() > 3);
  CHECK(rows[0].rfind("# grover-qa ", 0) == 0);
  CHECK(rows[0].find("command=evolve") != std::string::npos);
  CHECK(rows[0].find("n=1024") != std::string::npos);
  CHECK(rows[1] == "t,s,p_opt,log_norm,gap");
  const auto first = fields(rows[2]);
  REQUIRE(first.size() == 5);
  CHECK(first[0] == 0.0);
  CHECK(first[2] == doctest::Approx(1.0 / 1024).epsilon(1e-12));
  const auto last = fields(rows.back());
  CHECK(last[0] == doctest::Approx(30.0));
  CHECK(last[1] == doctest::Approx(1.0));
  CHECK(last[2] > 0.99);
}

TEST_CASE("outputs are bit-identical across runs") {
  const std::vector<std::string> args{"evolve", "--n", "64", "--tau", "12", "--mode", "rt",
                                      "--schedule", "adiabatic", "--steps", "5000",
                                      "--stride", "7"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const std::string path = temp_path("cli_evolve.csv");
  auto with_out = args;
  with_out.insert(with_out.end(), {"--out", path});
  REQUIRE(invoke(with_out).code == 0);
  CHECK(slurp(path) == a.out);

  const std::string table = temp_path("cli_scaling.csv");
  const std::vector<std::string> scaling{"scaling", "--n-exp", "4:7", "--out", table};
  const auto s1 = invoke(scaling);
  const std::string first = slurp(table);
  const auto s2 = invoke(scaling);
  CHECK(s1.out == s2.out);
  CHECK(first == slurp(table));
}

TEST_CASE("17 significant digits") {
  const auto r = invoke({"gap", "--n", "3", "--points", "4"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[1] == "s,eps0,eps1,gap,p_coeff,q_coeff");
  // s = 1/3 is not exactly representable; it must survive a round trip.
  const std::string s_text = rows[3].substr(0, rows[3].find(','));
  CHECK(std::stod(s_text) == 1.0 / 3.0);
  CHECK(s_text == "0.33333333333333331");
}

TEST_CASE("gap sweep") {
  const auto r = invoke({"gap", "--n", "100"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 103);
  const auto mid = fields(rows[2 + 50]);
  CHECK(mid[0] == 0.5);
  CHECK(mid[3] == doctest::Approx(0.1));
  CHECK(mid[1] + mid[2] == doctest::Approx(1.0));
}

TEST_CASE("bounds report") {
  const auto r = invoke({"bounds", "--n", "1000000", "--tau", "36.841"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.contains("config"));
  CHECK(j["result"]["tau_required"].get<double>() == doctest::Approx(36.841).epsilon(1e-4));
  CHECK(j["config"]["delta"].get<double>() == 0.1);

  const auto t = invoke({"bounds", "--n", "1000000", "--tau", "10", "--target", "0.99",
                         "--quadrature"});
  REQUIRE(t.code == 0);
  const auto k = json::parse(t.out);
  CHECK(k["config"]["delta"].get<double>() == doctest::Approx(0.100504).epsilon(1e-5));
  CHECK(k["result"]["i1_lower_half"]["quadrature"].get<double>() <=
        k["result"]["i1_lower_half"]["bound"].get<double>());
  CHECK(k["result"]["i1_upper_half"]["quadrature"].get<double>() <=
        k["result"]["i1_upper_half"]["bound"].get<double>());
}

TEST_CASE("scan report") {
  const auto r = invoke({"scan", "--n", "1024", "--target", "0.99"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["result"]["tau_star"].get<double>() ==
        doctest::Approx(1.83 * std::log(1024.0) + 5.27).epsilon(0.15));
  CHECK(j["config"]["mode"] == "it");
  CHECK(j["config"]["schedule"] == "linear");
}

TEST_CASE("scaling, asymptote and compare reports") {
  const auto s = invoke({"scaling", "--n", "16", "64", "256", "--mode", "IT"});
  REQUIRE(s.code == 0);
  const auto sj = json::parse(s.out);
  CHECK(sj["result"]["slope"].get<double>() > 1.0);
  CHECK(sj["result"]["points"].size() == 3);

  const auto a = invoke({"asymptote", "--taus", "200,400,800"});
  REQUIRE(a.code == 0);
  const auto aj = json::parse(a.out);
  CHECK(aj["config"]["n"] == 64);
  CHECK(aj["result"]["exponent"].get<double>() == doctest::Approx(-2.0).epsilon(0.05));

  const std::string table = temp_path("cli_compare.csv");
  const auto c = invoke({"compare", "--n-exp", "4:6", "--out", table});
  REQUIRE(c.code == 0);
  const auto cj = json::parse(c.out);
  CHECK(cj["result"].contains("it_linear"));
  CHECK(cj["result"].contains("rt_adiabatic"));
  const auto rows = lines(slurp(table));
  REQUIRE(rows.size() == 5);
  CHECK(rows[1] == "n,tau_it_linear,tau_it_adiabatic,tau_rt_adiabatic");
  CHECK(fields(rows[2])[0] == 16.0);
}

TEST_CASE("validate report") {
  const auto r = invoke({"validate", "--n", "8", "--tau", "5", "--mode", "rt"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["result"]["agree"] == true);
  CHECK(j["result"]["abs_difference"].get<double>() <= 1e-8);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"evolve", "--n", "1", "--tau", "1"}).code == 2);
  CHECK(invoke({"evolve", "--n", "16"}).code == 2);
  CHECK(invoke({"evolve", "--n", "16", "--tau", "-1"}).code == 2);
  CHECK(invoke({"evolve", "--n", "16", "--tau", "1", "--mode", "sideways"}).code == 2);
  CHECK(invoke({"scan", "--n", "16", "--target", "1.5"}).code == 2);
  CHECK(invoke({"scaling", "--n-exp", "4-8"}).code == 2);
  CHECK(invoke({"scaling", "--n-exp", "4:8", "--n", "16"}).code == 2);
  CHECK(invoke({"gap", "--n", "16", "--points", "1"}).code == 2);
  CHECK(invoke({"validate", "--n", "100000", "--tau", "1"}).code == 2);
  CHECK(invoke({"evolve", "--n", "16", "--tau", "1", "--out", "/nonexistent/dir/x.csv"}).code ==
        2);

  const auto capped = invoke({"scan", "--n", "1000000", "--tau-cap", "4"});
  CHECK(capped.code == 3);
  CHECK(capped.err.find("numerical failure") != std::string::npos);
  const auto bad = invoke({"evolve", "--n", "1", "--tau", "1"});
  CHECK(bad.err.find("--n") != std::string::npos);
}
