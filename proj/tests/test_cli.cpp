// End-to-end checks of the command-line binary. The binary path and the
// shipped config directory are injected at compile time.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#ifndef FAIRDYN_CLI_PATH
#error "FAIRDYN_CLI_PATH must point at the built binary"
#endif
#ifndef FAIRDYN_CONFIG_DIR
#error "FAIRDYN_CONFIG_DIR must point at the shipped configs"
#endif

namespace {

int run(const std::string& args) {
  const std::string cmd =
      std::string(FAIRDYN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string config_path(const char* name) {
  return std::string(FAIRDYN_CONFIG_DIR) + "/" + name;
}

std::string temp_path(const char* name) {
  return std::string("/tmp/fairdyn_cli_test_") + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

const std::string kBaseConfig =
    "mu = [0.5, 0.5]\n"
    "s0 = [0.6, 0.4]\n"
    "distribution = { family = \"gaussian\", mean0 = -1.0, mean1 = 1.0, "
    "sigma = 1.0 }\n"
    "V = [[0.5, -0.5], [-0.25, 1.0]]\n"
    "U = [[0.1, 5.5], [0.5, 1.0]]\n"
    "dynamics = { model = \"replicator\" }\n";

}  // namespace

TEST_CASE("simulate writes the documented csv layout") {
  const std::string out = temp_path("traj.csv");
  const int code = run("simulate --config " + config_path("setting1.toml") +
                       " --steps 5 --out " + out);
  CHECK(code == 0);
  std::ifstream in(out);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header ==
        "t,s_1,s_2,s_bar,disparity_l1,phi_1,phi_2,acc_1,acc_2,fpr_1,fpr_2,"
        "fnr_1,fnr_2");
  std::string row;
  int rows = 0;
  long first_t = -1;
  while (std::getline(in, row)) {
    if (rows == 0) first_t = std::stol(row.substr(0, row.find(',')));
    ++rows;
  }
  CHECK(first_t == 0);
  CHECK(rows == 6);  // t = 0..5
}

TEST_CASE("simulate is bytewise deterministic") {
  const std::string out1 = temp_path("det1.csv");
  const std::string out2 = temp_path("det2.csv");
  const std::string args = "simulate --config " +
                           config_path("setting1.toml") +
                           " --steps 200 --stride 20 --out ";
  CHECK(run(args + out1) == 0);
  CHECK(run(args + out2) == 0);
  CHECK(read_file(out1) == read_file(out2));
}

TEST_CASE("equilibria reports the stable hyperplane") {
  const std::string out = temp_path("eq.csv");
  CHECK(run("equilibria --config " + config_path("setting1.toml") +
            " --out " + out) == 0);
  const std::string text = read_file(out);
  CHECK(text.find("hyperplane,phi,s_bar,gap_slope,lambda,stability") !=
        std::string::npos);
  CHECK(text.find("plus,") != std::string::npos);
  CHECK(text.find("stable") != std::string::npos);
  CHECK(text.find("minus,") == std::string::npos);
}

TEST_CASE("sweep emits the grid schema") {
  const std::string out = temp_path("grid.csv");
  CHECK(run("sweep --config " + config_path("setting1.toml") +
            " --resolution 4 --out " + out) == 0);
  std::ifstream in(out);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header == "s1,s2,ds1,ds2,acc1,fpr1,fnr1");
  int rows = 0;
  std::string row;
  while (std::getline(in, row)) ++rows;
  CHECK(rows == 16);
}

TEST_CASE("compare summarizes each intervention") {
  const std::string out = temp_path("cmp.csv");
  CHECK(run("compare --config " + config_path("setting1_compare.toml") +
            " --steps 2000 --out " + out) == 0);
  const std::string text = read_file(out);
  CHECK(text.find("intervention,terminal_s_bar,terminal_disparity_l1,"
                  "steps_to_convergence,eo_satisfied,dp_satisfied") !=
        std::string::npos);
  CHECK(text.find("group_independent,") != std::string::npos);
  CHECK(text.find("demographic_parity,") != std::string::npos);
  CHECK(text.find("feedback_control,") != std::string::npos);
  CHECK(text.find("laissez_faire,") != std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
  // Missing s0 for a trajectory run.
  const std::string broken = temp_path("broken.toml");
  write_file(broken,
             "mu = [0.5, 0.5]\n"
             "distribution = { family = \"gaussian\", mean0 = -1.0, "
             "mean1 = 1.0, sigma = 1.0 }\n"
             "V = [[0.5, -0.5], [-0.25, 1.0]]\n"
             "U = [[0.1, 5.5], [0.5, 1.0]]\n"
             "dynamics = { model = \"replicator\" }\n"
             "intervention = { tag = \"group_independent\" }\n");
  CHECK(run("simulate --config " + broken + " --steps 5") == 2);

  // Unknown file.
  CHECK(run("simulate --config /nonexistent.toml") == 2);

  // Sweep needs exactly two groups.
  const std::string three = temp_path("three.toml");
  write_file(three,
             "mu = [0.4, 0.3, 0.3]\n"
             "s0 = [0.6, 0.5, 0.4]\n"
             "distribution = { family = \"gaussian\", mean0 = -1.0, "
             "mean1 = 1.0, sigma = 1.0 }\n"
             "V = [[0.5, -0.5], [-0.25, 1.0]]\n"
             "U = [[0.1, 5.5], [0.5, 1.0]]\n"
             "dynamics = { model = \"replicator\" }\n"
             "intervention = { tag = \"group_independent\" }\n");
  CHECK(run("sweep --config " + three + " --resolution 4") == 2);

  // Compare needs at least two interventions.
  const std::string single = temp_path("single.toml");
  write_file(single, kBaseConfig +
                         "s0 = [0.6, 0.4]\n"
                         "interventions = [ { tag = \"group_independent\" } ]\n");
  CHECK(run("compare --config " + single) == 2);
}

TEST_CASE("three-group simulate widens the csv") {
  const std::string three = temp_path("three.toml");
  write_file(three,
             "mu = [0.4, 0.3, 0.3]\n"
             "s0 = [0.6, 0.5, 0.4]\n"
             "distribution = { family = \"gaussian\", mean0 = -1.0, "
             "mean1 = 1.0, sigma = 1.0 }\n"
             "V = [[0.5, -0.5], [-0.25, 1.0]]\n"
             "U = [[0.1, 5.5], [0.5, 1.0]]\n"
             "dynamics = { model = \"replicator\" }\n"
             "intervention = { tag = \"group_independent\" }\n");
  const std::string out = temp_path("three.csv");
  CHECK(run("simulate --config " + three + " --steps 3 --out " + out) == 0);
  std::ifstream in(out);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header ==
        "t,s_1,s_2,s_3,s_bar,disparity_l1,phi_1,phi_2,phi_3,acc_1,acc_2,"
        "acc_3,fpr_1,fpr_2,fpr_3,fnr_1,fnr_2,fnr_3");
}

TEST_CASE("json output parses as json") {
  const std::string out = temp_path("eq.json");
  CHECK(run("equilibria --config " + config_path("setting2.toml") +
            " --format json --out " + out) == 0);
  const std::string text = read_file(out);
  CHECK(text.find("\"plus\"") != std::string::npos);
  CHECK(text.find("\"minus\"") != std::string::npos);
  CHECK(text.find("\"unstable\"") != std::string::npos);
}
