#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the installed command line interface, run as
// subprocesses against the checked-in fixture configs.

namespace {

const std::string kCli = QSW_CLI_PATH;
const std::string kFixtures = QSW_FIXTURE_DIR;

int run_command(const std::string& args, const std::string& log = "/dev/null") {
  const std::string cmd = kCli + " " + args + " > " + log + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("cli: run executes a config and writes a readable container") {
  const auto out = temp_path("qsw_cli_moralise.qswc");
  std::filesystem::remove(out);
  CHECK(run_command("run " + kFixtures + "/gqsw_moralise.json --out " + out.string()) == 0);
  REQUIRE(std::filesystem::exists(out));

  const auto log = temp_path("qsw_cli_inspect.txt");
  CHECK(run_command("inspect " + out.string(), log.string()) == 0);
  std::ifstream in(log);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str().find("populations") != std::string::npos);
  CHECK(buffer.str().find("walk = global") != std::string::npos);
}

TEST_CASE("cli: plot-data matches the expected fixture values") {
  const auto out = temp_path("qsw_cli_moralise.qswc");
  if (!std::filesystem::exists(out)) {
    REQUIRE(run_command("run " + kFixtures + "/gqsw_moralise.json --out " + out.string()) == 0);
  }
  const auto data = temp_path("qsw_cli_pops.txt");
  CHECK(run_command("plot-data " + out.string() + " --quantity populations --out " +
                    data.string()) == 0);

  std::ifstream got(data);
  double t, p1, p2, p3;
  REQUIRE((got >> t >> p1 >> p2 >> p3));
  CHECK(t == 100.0);

  std::ifstream expected(kFixtures + "/expected_gqsw_moralise.txt");
  double e1, e2, e3;
  REQUIRE((expected >> e1 >> e2 >> e3));
  CHECK(std::abs(p1 - e1) <= 1e-6);
  CHECK(std::abs(p2 - e2) <= 1e-6);
  CHECK(std::abs(p3 - e3) <= 1e-6);

  CHECK(run_command("plot-data " + out.string() + " --quantity absent") == 2);
}

TEST_CASE("cli: flag overrides win over the config file") {
  const auto out = temp_path("qsw_cli_series.qswc");
  std::filesystem::remove(out);
  CHECK(run_command("run " + kFixtures + "/gqsw_moralise.json --t1 0 --tq 5 --steps 10 "
                    "--workers 3 --out " +
                    out.string()) == 0);
  const auto log = temp_path("qsw_cli_series_inspect.txt");
  CHECK(run_command("inspect " + out.string(), log.string()) == 0);
  std::ifstream in(log);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str().find("11 x 3") != std::string::npos);
  CHECK(buffer.str().find("workers = 3") != std::string::npos);
}

TEST_CASE("cli: distinct exit codes for config and I/O failures") {
  // missing graph file is a config problem; nothing may be written
  const auto out = temp_path("qsw_cli_missing.qswc");
  std::filesystem::remove(out);
  CHECK(run_command("run " + kFixtures + "/missing_graph.json --out " + out.string()) == 2);
  CHECK_FALSE(std::filesystem::exists(out));

  CHECK(run_command("run " + kFixtures + "/bad_config.json") == 2);
  CHECK(run_command("run " + kFixtures + "/gqsw_moralise.json --omega 2.0") == 2);

  // unreadable container is an I/O problem
  CHECK(run_command("inspect /no/such/container.qswc") == 3);
  const auto junk = temp_path("qsw_cli_junk.qswc");
  std::ofstream(junk) << "not a container";
  CHECK(run_command("inspect " + junk.string()) == 3);
}

TEST_CASE("cli: demoralisation fixture end to end") {
  const auto out = temp_path("qsw_cli_nm.qswc");
  std::filesystem::remove(out);
  CHECK(run_command("run " + kFixtures + "/nm_demoralise.json --out " + out.string()) == 0);
  const auto data = temp_path("qsw_cli_nm_pops.txt");
  CHECK(run_command("plot-data " + out.string() + " --quantity populations --out " +
                    data.string()) == 0);
  std::ifstream got(data);
  double t, p1, p2, p3;
  REQUIRE((got >> t >> p1 >> p2 >> p3));
  std::ifstream expected(kFixtures + "/expected_nm_demoralise.txt");
  double e1, e2, e3;
  REQUIRE((expected >> e1 >> e2 >> e3));
  CHECK(std::abs(p1 - e1) <= 1e-10);
  CHECK(std::abs(p2 - e2) <= 1e-10);
  CHECK(std::abs(p3 - e3) <= 1e-10);
}
