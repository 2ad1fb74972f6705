#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path log = fs::temp_directory_path() / ("bevholt_cli_" + std::to_string(counter++) + ".log");
  std::string cmd = std::string(BEVHOLT_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::string output((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  fs::remove(log);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, output};
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "bevholt_cli_cfg";
  fs::create_directories(dir);
  fs::path path = dir / name;
  std::ofstream out(path, std::ios::trunc);
  out << text;
  return path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

const char* kHarmonic = R"(
[model]
k = 1
A = constant 1
B = constant 1
[initial]
values = 1
[run]
backend = rational
horizon = 5
)";

}  // namespace

TEST_CASE("cli simulate writes exact csv") {
  auto cfg = write_config("harmonic.cfg", kHarmonic);
  fs::path out = fs::temp_directory_path() / "bevholt_cli_out";
  fs::remove_all(out);
  auto res = run_cli("simulate --config " + cfg.string() + " --out " + out.string());
  CHECK(res.exit_code == 0);
  std::string csv = slurp(out / "harmonic.csv");
  CHECK(csv == "n,z\n0,1\n1,1/2\n2,1/3\n3,1/4\n4,1/5\n");
}

TEST_CASE("cli simulate on a singular run exits 3 and writes the prefix") {
  auto cfg = write_config("singular.cfg", R"(
[model]
k = 1
A = constant 1/2
B = constant -1
[initial]
values = 1/2
[run]
backend = rational
horizon = 10
)");
  fs::path out = fs::temp_directory_path() / "bevholt_cli_out";
  auto res = run_cli("simulate --config " + cfg.string() + " --out " + out.string());
  CHECK(res.exit_code == 3);
  CHECK(res.output.find("truncated at n = 1") != std::string::npos);
  CHECK(slurp(out / "singular.csv") == "n,z\n0,1/2\n");
}

TEST_CASE("cli config errors exit 2") {
  auto cfg = write_config("broken.cfg", "[model]\nk = 0\n");
  auto res = run_cli("simulate --config " + cfg.string());
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("k must be >= 1") != std::string::npos);

  auto missing = run_cli("simulate --config /nonexistent.cfg");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("cli dump-config round trips") {
  auto cfg = write_config("harmonic.cfg", kHarmonic);
  auto first = run_cli("--config " + cfg.string() + " --dump-config");
  REQUIRE(first.exit_code == 0);
  auto dumped = write_config("harmonic_dumped.cfg", first.output);
  auto second = run_cli("--config " + dumped.string() + " --dump-config");
  CHECK(second.exit_code == 0);
  CHECK(second.output == first.output);
}

TEST_CASE("cli compare agrees exactly on a rational run") {
  auto cfg = write_config("harmonic.cfg", kHarmonic);
  auto res = run_cli("compare --config " + cfg.string() + " --horizon 40");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("methods agree exactly") != std::string::npos);
}

TEST_CASE("cli symmetry: zeta2 passes, zeta1 reports inapplicability") {
  auto ok = write_config("sym2.cfg", R"(
[model]
k = 2
A = periodic 1/2, 1/3
B = periodic 1, 2
[run]
backend = rational
horizon = 40
[symmetry]
family = zeta2
)");
  auto res = run_cli("symmetry --config " + ok.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("max |residual| = 0") != std::string::npos);

  auto bad = write_config("sym1.cfg", R"(
[model]
k = 1
A = constant 2
B = constant 1
[run]
backend = rational
horizon = 40
[symmetry]
family = zeta1
)");
  auto res1 = run_cli("symmetry --config " + bad.string());
  CHECK(res1.exit_code == 4);
  CHECK(res1.output.find("not") != std::string::npos);  // inapplicability note
}

TEST_CASE("cli stability prints the classification table") {
  auto cfg = write_config("decay.cfg", R"(
[model]
k = 14
A = constant 14
B = constant -2
[run]
backend = rational
)");
  auto res = run_cli("stability --config " + cfg.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("locally-asymptotically-stable") != std::string::npos);
  CHECK(res.output.find("13/2") != std::string::npos);
  CHECK(res.output.find("unstable") != std::string::npos);
}

TEST_CASE("cli period finds the order-8 two-cycle") {
  auto cfg = write_config("cycle.cfg", R"(
[model]
k = 8
A = constant -1
B = constant 12
[initial]
values = 1, 2, 1, -1/2, 1, 1/2, -1/4, 1/2
[run]
backend = rational
horizon = 96
)");
  auto res = run_cli("period --config " + cfg.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("minimal period: 16") != std::string::npos);
  CHECK(res.output.find("two-cycle") != std::string::npos);
}

TEST_CASE("cli simulate: decay run tail is below 1e-8") {
  auto cfg = write_config("decay.cfg", R"(
[model]
k = 14
A = constant 14
B = constant -2
[initial]
values = 1, 2, 1, -1/2, 1, 1/2, -4, 1/2, 1, 15, 8, 4, -1/2, 1
[run]
backend = float
horizon = 600
)");
  fs::path out = fs::temp_directory_path() / "bevholt_cli_decay";
  REQUIRE(run_cli("simulate --config " + cfg.string() + " --out " + out.string()).exit_code == 0);
  std::istringstream csv(slurp(out / "decay.csv"));
  std::string line;
  std::getline(csv, line);  // header
  int n = 0;
  while (std::getline(csv, line)) {
    double z = std::strtod(line.substr(line.find(',') + 1).c_str(), nullptr);
    if (n >= 500) CHECK(std::abs(z) < 1e-8);
    ++n;
  }
  CHECK(n == 600);
}

TEST_CASE("cli simulate: trigonometric run rows agree one period apart") {
  auto cfg = write_config("trig.cfg", R"(
[model]
k = 16
A = formula 3 + sin(n*pi/8) period 16
B = formula 2 + cos(n*pi/8) period 16
[initial]
values = periodic-seed
[run]
backend = float
horizon = 300
)");
  fs::path out = fs::temp_directory_path() / "bevholt_cli_trig";
  REQUIRE(run_cli("simulate --config " + cfg.string() + " --out " + out.string()).exit_code == 0);
  std::istringstream csv(slurp(out / "trig.csv"));
  std::string line;
  std::getline(csv, line);
  std::vector<double> z;
  while (std::getline(csv, line))
    z.push_back(std::strtod(line.substr(line.find(',') + 1).c_str(), nullptr));
  REQUIRE(z.size() == 300);
  for (std::size_t n = 0; n + 16 < z.size(); ++n) CHECK(std::abs(z[n + 16] - z[n]) < 1e-9);
}

TEST_CASE("cli compare exits 3 when the run hits the forbidden set") {
  auto cfg = write_config("singular2.cfg", R"(
[model]
k = 1
A = constant 1/2
B = constant -1
[initial]
values = 1/2
[run]
backend = rational
horizon = 12
)");
  auto res = run_cli("compare --config " + cfg.string());
  CHECK(res.exit_code == 3);
  CHECK(res.output.find("truncation agreement: yes") != std::string::npos);
}

TEST_CASE("cli figures output is deterministic") {
  fs::path out1 = fs::temp_directory_path() / "bevholt_figs_1";
  fs::path out2 = fs::temp_directory_path() / "bevholt_figs_2";
  fs::remove_all(out1);
  fs::remove_all(out2);
  REQUIRE(run_cli("figures --out " + out1.string()).exit_code == 0);
  REQUIRE(run_cli("figures --out " + out2.string()).exit_code == 0);
  for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"}) {
    for (const char* ext : {".csv", ".dat", ".svg"}) {
      fs::path a = out1 / (std::string(name) + ext);
      fs::path b = out2 / (std::string(name) + ext);
      REQUIRE(fs::exists(a));
      CHECK(slurp(a) == slurp(b));
    }
  }
}

TEST_CASE("cli backend and horizon overrides") {
  auto cfg = write_config("harmonic.cfg", kHarmonic);
  fs::path out = fs::temp_directory_path() / "bevholt_cli_out_f";
  auto res = run_cli("simulate --config " + cfg.string() + " --backend float --horizon 3 --out " +
                     out.string());
  CHECK(res.exit_code == 0);
  CHECK(slurp(out / "harmonic.csv") == "n,z\n0,1\n1,0.5\n2,0.3333333333333333\n");
}
