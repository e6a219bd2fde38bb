#include "collspin/cli.hpp"

#include "doctest.h"
#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace collspin;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "collspin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

std::filesystem::path temp_path(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("configuration errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"bogus"}).code == 2);
  CHECK(invoke({"ground", "--alpha", "1"}).code == 2);
  CHECK(invoke({"ground", "--n", "0", "--alpha", "1"}).code == 2);
  CHECK(invoke({"ground", "--n", "10", "--alpha", "-1"}).code == 2);
  CHECK(invoke({"ground", "--n", "10", "--alpha", "1", "--d-ratio", "0.1"}).code == 2);
  CHECK(invoke({"ground", "--n", "10", "--alpha", "1", "--fig", "1"}).code == 2);
  CHECK(invoke({"ground", "--n", "10", "--alpha", "1", "--format", "xml"}).code == 2);
  CHECK(invoke({"dicke", "--n", "10", "--alpha", "1"}).code == 2);
  CHECK(invoke({"dicke", "--n", "10", "--alpha", "1", "--d-ratio", "0"}).code == 2);
  CHECK(invoke({"dicke", "--n", "10", "--alpha", "1", "--d-ratio", "0.1", "--cutoff", "5"}).code == 2);
  CHECK(invoke({"entangle", "--n", "10", "--alpha", "1", "--block", "10"}).code == 2);
  CHECK(invoke({"scaling", "--observable", "nope"}).code == 2);
  CHECK(invoke({"scaling", "--observable", "tau_n"}).code == 2);
  CHECK(invoke({"scaling", "--alpha", "0.5,1"}).code == 2);
  CHECK(invoke({"scaling", "--nmin", "64", "--ngrid", "8,16,32"}).code == 2);
  CHECK(invoke({"scaling", "--ngrid", "16,8,32"}).code == 2);
  CHECK(invoke({"figures"}).code == 2);
  CHECK(invoke({"figures", "--fig", "5"}).code == 2);
  CHECK(invoke({"figures", "--fig", "2", "--n", "10"}).code == 2);
  CHECK(invoke({"quartic", "--n", "10"}).code == 2);
  CHECK(invoke({"verify", "--criterion", "10"}).code == 2);
  const Outcome o = invoke({"ground", "--n", "10", "--alpha", "1", "--block", "3"});
  CHECK(o.err.find("--block") != std::string::npos);
  CHECK(o.out.empty());
}

TEST_CASE("solver failures exit with 3") {
  const Outcome o = invoke({"ground", "--n", "64", "--alpha", "1", "--tol", "1e-30", "--max-iter", "2"});
  CHECK(o.code == 3);
  CHECK(o.out.empty());
  CHECK(invoke({"scaling", "--ngrid", "16,32,64", "--tol", "1e-30", "--max-iter", "2"}).code == 3);
  CHECK(invoke({"dicke", "--n", "4", "--alpha", "0.5", "--d-ratio", "3", "--oracle", "--cutoff", "2"}).code == 3);
}

TEST_CASE("help and version exit with 0") {
  CHECK(invoke({"--help"}).code == 0);
  const Outcome v = invoke({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(kToolVersion) != std::string::npos);
}

TEST_CASE("ground command") {
  const Outcome o = invoke({"ground", "--n", "8", "--alpha", "1"});
  REQUIRE(o.code == 0);
  const auto l = lines(o.out);
  CHECK(l[0] == "# ground");
  CHECK(l[1] == "alpha,n,energy,energy_per_spin,energy_thermodynamic");
  CHECK(l[2].rfind("1,8,-4.33942139245,", 0) == 0);
  CHECK(o.out.find("# wavefunction\nalpha,m,phi\n") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
  const std::vector<std::string> args{"entangle", "--n", "40", "--alpha", "0.3,1,1.7", "--epsilon", "0.05"};
  CHECK(invoke(args).out == invoke(args).out);
  const std::vector<std::string> sweep{"scaling", "--ngrid", "16,32,64,128", "--observable", "cr"};
  std::vector<std::string> threaded = sweep;
  threaded.insert(threaded.end(), {"--workers", "3"});
  CHECK(invoke(sweep).out == invoke(threaded).out);
}

TEST_CASE("figure 1 data") {
  const Outcome o = invoke({"figures", "--fig", "1", "--n", "20"});
  REQUIRE(o.code == 0);
  const auto l = lines(o.out);
  CHECK(l[0] == "# alpha=0.3");
  CHECK(l[1] == "m,phi_exact,phi_continuum");
  CHECK(l[2].rfind("-20,", 0) == 0);
  CHECK(o.out.find("# alpha=1.3\n") != std::string::npos);
  CHECK(invoke({"figures", "--fig", "1", "--alpha", "1"}).code == 2);
}

TEST_CASE("quartic constants") {
  const Outcome o = invoke({"quartic", "--zeta", "0,1", "--format", "json"});
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["metadata"]["tool"] == "collspin");
  CHECK(j["metadata"]["version"] == kToolVersion);
  CHECK(j["metadata"]["command"] == "quartic");
  CHECK(j["metadata"]["parameters"]["zeta"].size() == 2);
  CHECK(j["metadata"]["tolerances"].contains("rel_tol"));
  CHECK(j["tables"]["constants"][0]["beta0"].get<double>() == doctest::Approx(1.0603621).epsilon(1e-6));
  CHECK(j["tables"]["constants"][0]["beta1"].get<double>() == doctest::Approx(0.3620227).epsilon(1e-5));
  CHECK(j["tables"]["spectrum"][1]["e0"].get<double>() == doctest::Approx(1.392351641268).epsilon(1e-6));
}

TEST_CASE("dicke command with the oracle") {
  const Outcome o = invoke({"dicke", "--n", "2", "--alpha", "0.5", "--d-ratio", "0.05", "--oracle", "--format", "json"});
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  const auto& row = j["tables"]["oracle"][0];
  CHECK(row["energy_relative_error"].get<double>() < 0.01);
  CHECK(j["tables"]["dicke"][0]["adiabatic_regime"] == 1);
}

TEST_CASE("output file and config file") {
  const auto out = temp_path("collspin_cli_test.csv");
  const auto cfg = temp_path("collspin_cli_test.ini");
  {
    std::ofstream f(cfg);
    f << "n=12\nalpha=0.5,1.5\nepsilon=0.1\nout=" << out.string() << "\n";
  }
  const Outcome o = invoke({"moments", "--config", cfg.string()});
  REQUIRE(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(out);
  std::stringstream file;
  file << in.rdbuf();
  const auto l = lines(file.str());
  CHECK(l[0] == "alpha,n,source,sx_n,sz_n,sz2_n2,sx2_n2,sy2_n2,sy2_n");
  CHECK(l.size() == 3);  // analytic rows need epsilon = 0
  CHECK(invoke({"moments", "--n", "12", "--alpha", "0.5,1.5", "--epsilon", "0.1"}).out == file.str());
  std::filesystem::remove(out);
  std::filesystem::remove(cfg);

  const auto bad = temp_path("collspin_cli_bad.ini");
  {
    std::ofstream f(bad);
    f << "n=12\nalpha=1\nfig=2\n";
  }
  CHECK(invoke({"ground", "--config", bad.string()}).code == 2);
  std::filesystem::remove(bad);
}

TEST_CASE("verify runs a chosen criterion") {
  const auto report = temp_path("collspin_verify.csv");
  const Outcome o = invoke({"verify", "--criterion", "1", "--out", report.string()});
  CHECK(o.code == 0);
  CHECK(o.out.rfind("PASS  1", 0) == 0);
  std::ifstream in(report);
  std::stringstream file;
  file << in.rdbuf();
  CHECK(file.str().find("runtime,pass,timed") != std::string::npos);
  std::filesystem::remove(report);
}
