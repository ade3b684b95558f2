#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "spinmat/io.hpp"
#include "spinmat/sampling.hpp"

using namespace spinmat;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string command = std::string(SPINMAT_CLI) + " " + args + " 2>/dev/null";
  CliRun result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string temp_path(const std::string& name) { return testing::TempDir() + "spinmat_cli_" + name; }

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string read_file(const std::string& path) {
  std::ostringstream s;
  s << std::ifstream(path).rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, GenerateAtZeroAnglesIsDiagonal) {
  const CliRun r = run("generate --angles 0 0 0 0 --spectrum 1 2 3 4 5");
  ASSERT_EQ(r.code, 0);
  const GeneratedMatrix g = io::read_matrix(r.out);
  EXPECT_EQ(g.entries, Matrix5::diagonal({1.0, 2.0, 3.0, 4.0, 5.0}));
  EXPECT_NE(r.out.find("\"diagonal\": true"), std::string::npos);
}

TEST(Cli, GenerateReproducesSpinOperator) {
  const CliRun r = run("generate --angles 0.9 2.1 0 0 --spectrum 2 1 0 -1 -2");
  ASSERT_EQ(r.code, 0);
  EXPECT_LT(max_abs_diff(io::read_matrix(r.out).entries, spin_operator(Direction(0.9, 2.1))), 1e-12);
}

TEST(Cli, DegreesFlagConvertsAngles) {
  const CliRun rad = run("generate --angles 1.5707963267948966 0 0 0 --spectrum 2 1 0 -1 -2");
  const CliRun deg = run("generate --degrees --angles 90 0 0 0 --spectrum 2 1 0 -1 -2");
  ASSERT_EQ(deg.code, 0);
  EXPECT_LT(max_abs_diff(io::read_matrix(rad.out).entries, io::read_matrix(deg.out).entries), 1e-15);
}

TEST(Cli, ComplexSpectrumForms) {
  const CliRun r = run("generate --angles 0 0 0 0 --spectrum 1+2i 0-i 3,4 2.5 0");
  ASSERT_EQ(r.code, 0);
  const Matrix5 m = io::read_matrix(r.out).entries;
  EXPECT_EQ(m(0, 0), Complex(1.0, 2.0));
  EXPECT_EQ(m(1, 1), Complex(0.0, -1.0));
  EXPECT_EQ(m(2, 2), Complex(3.0, 4.0));
}

TEST(Cli, SameSeedGivesIdenticalBytes) {
  const CliRun a = run("generate --seed 17");
  const CliRun b = run("generate --seed 17");
  const CliRun c = run("generate --seed 18");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, CsvOutput) {
  const CliRun r = run("generate --seed 3 --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("section,row,col,re,im\n", 0), 0u);
}

TEST(Cli, MalformedInputIsUsageError) {
  EXPECT_EQ(run("generate --angles 0 0 x 0").code, 2);
  EXPECT_EQ(run("generate --spectrum 1 2 3 4 5z").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("diagonalize /nonexistent/file.json").code, 2);
  const std::string bad = temp_path("bad.json");
  write_file(bad, "{\"n\": 4}");
  EXPECT_EQ(run("diagonalize " + bad).code, 2);
}

TEST(Cli, OutputFileOption) {
  const std::string path = temp_path("out.json");
  ASSERT_EQ(run("generate --seed 5 -o " + path).code, 0);
  EXPECT_EQ(read_file(path), run("generate --seed 5").out);
}

TEST(Cli, BisectRoundTrip) {
  const std::string path = temp_path("bisect.json");
  ASSERT_EQ(run("generate --angles 1.1 0.7 0.4 2.0 --spectrum 5 3 1 -2 -4 -o " + path).code, 0);
  const CliRun r = run("diagonalize " + path + " --mode bisect --free theta");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"verified\": true"), std::string::npos);
  EXPECT_NE(r.out.find("\"agrees\": true"), std::string::npos);
}

TEST(Cli, MultistartOnDiagonalMatrix) {
  const std::string path = temp_path("diag.json");
  ASSERT_EQ(run("generate --angles 0 0 0 0 --spectrum 1 2 3 4 5 -o " + path).code, 0);
  const CliRun r = run("diagonalize " + path + " --mode multistart --grid 6");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"verified\": true"), std::string::npos);
}

TEST(Cli, NonGeneratedMatrixFailsRecovery) {
  Sampler sample(81);
  GeneratedMatrix g;
  Matrix5 a;
  for (auto& z : a.data) z = {sample.uniform(-1.0, 1.0), sample.uniform(-1.0, 1.0)};
  g.entries = a + adjoint(a);
  const std::string path = temp_path("random.json");
  write_file(path, io::write_matrix(g));
  const CliRun r = run("diagonalize " + path + " --mode multistart --grid 5");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("\"error\""), std::string::npos);
  EXPECT_EQ(run("diagonalize " + path + " --mode bisect --free theta_p --angles 1 1 1 1").code, 3);
}

TEST(Cli, ClassifyReportsFamily) {
  const std::string path = temp_path("herm.json");
  ASSERT_EQ(run("generate --angles 0.3 1.0 1.2 2.5 --spectrum 1 2 3 4 5 -o " + path).code, 0);
  const CliRun r = run("classify " + path);
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"hermitian\": true"), std::string::npos);
  EXPECT_NE(r.out.find("\"anti_hermitian\": false"), std::string::npos);
}

TEST(Cli, SelftestExitCodes) {
  EXPECT_EQ(run("selftest --samples 20").code, 0);
  EXPECT_EQ(run("selftest --samples 20 --tol.unitarity 1e-17").code, 4);
}
