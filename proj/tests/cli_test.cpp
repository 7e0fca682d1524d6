#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = curvegeo::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("curvegeo_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// "key: yes/no" verdict lines of a classification printout.
std::vector<std::string> verdicts(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto colon = line.find(": ");
    if (colon == std::string::npos) continue;
    const std::string rest = line.substr(colon + 2);
    if (rest.rfind("yes", 0) == 0 || rest.rfind("no", 0) == 0) out.push_back(line.substr(0, colon) + "=" + rest.substr(0, 3));
  }
  return out;
}

}  // namespace

TEST_CASE("unknown subcommand and usage errors exit non-zero") {
  CHECK(cli({"frobnicate"}).code != 0);
  CHECK(cli({}).code != 0);
  CHECK(cli({"trace"}).code != 0);
  CHECK(cli({"trace", "--surface", "torus", "--phi", "0.3"}).code != 0);
  CHECK(cli({"verify", "S99"}).code != 0);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("trace writes a CSV and reports angles in radians and degrees") {
  const fs::path dir = scratch_dir("trace");
  const Run r = cli({"--out", dir.string(), "trace", "--surface", "enneper", "--mode", "isogonal", "--phi", "0.5236",
                     "--start", "0,1"});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "trace.csv"));
  CHECK(slurp(dir / "trace.csv").rfind("s,t,z,x,y,z_pos,kg,kn,taug,phi,theta,kappa,tau\n", 0) == 0);
  CHECK(r.out.find(" rad (") != std::string::npos);
  CHECK(r.out.find(" deg)") != std::string::npos);
}

TEST_CASE("identical configuration gives byte-identical CSV") {
  const fs::path dir = scratch_dir("determinism");
  std::ofstream(dir / "run.cfg") << "trace.surface = bonnet\ntrace.mode = pseudo-geodesic\ntrace.theta = 0.4\n"
                                    "trace.start = 0, 0.3\ntrace.direction = 0.2\nsurface.bonnet.a = 0.4\n";
  const std::string cfg = (dir / "run.cfg").string();
  REQUIRE(cli({"--config", cfg, "--out", dir.string(), "trace", "--name", "a"}).code == 0);
  REQUIRE(cli({"--config", cfg, "--out", dir.string(), "trace", "--name", "b"}).code == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.csv").size() > 1000);
}

TEST_CASE("classify reproduces the verdicts of a trace from its CSV") {
  const fs::path dir = scratch_dir("classify");
  const Run traced = cli({"--out", dir.string(), "trace", "--surface", "crpc", "--phi", "0.6", "--start", "0.5,0",
                          "--s-min", "-0.5", "--s-max", "0.5"});
  REQUIRE(traced.code == 0);
  const Run again = cli({"classify", "--csv", (dir / "trace.csv").string(), "--surface", "crpc"});
  REQUIRE(again.code == 0);
  const std::vector<std::string> a = verdicts(traced.out), b = verdicts(again.out);
  CHECK(a.size() >= 10);
  CHECK(a == b);
  CHECK(cli({"classify", "--csv", (dir / "trace.csv").string()}).code != 0);
}

TEST_CASE("verify runs a single scenario") {
  const Run r = cli({"verify", "S2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("[PASS] S2", 0) == 0);
  CHECK(r.out.find("-1.047197551 rad (-60.000000 deg)") != std::string::npos);
}

TEST_CASE("export writes the figure of two generalized helices on the Enneper surface") {
  const fs::path dir = scratch_dir("export");
  REQUIRE(cli({"--out", dir.string(), "export", "--figure1", "--format", "obj"}).code == 0);
  const std::string obj = slurp(dir / "figure1.obj");
  CHECK(obj.rfind("o surface\n", 0) == 0);
  std::size_t vertices = 0, faces = 0, lines = 0;
  std::istringstream is(obj);
  std::string line;
  while (std::getline(is, line)) {
    vertices += line.rfind("v ", 0) == 0;
    faces += line.rfind("f ", 0) == 0;
    lines += line.rfind("l ", 0) == 0;
  }
  CHECK(faces == 2 * 49 * 49);
  CHECK(lines == 2);
  CHECK(vertices > 2500);
  CHECK(obj.find("o geodesic_m_plus_half\n") != std::string::npos);

  // A trace that leaves the domain is not exported.
  const fs::path bad = scratch_dir("export_bad");
  CHECK(cli({"--out", bad.string(), "export", "--surface", "enneper", "--phi", "0.3", "--start", "0,1", "--s-max", "50"})
            .code != 0);
  CHECK(fs::is_empty(bad));
}
