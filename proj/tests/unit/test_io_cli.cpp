#include "stochdil/cli.hpp"
#include "stochdil/io.hpp"
#include "stochdil/models.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "oracles.hpp"
#include "reference.hpp"

using namespace stochdil;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) { return std::string(STOCHDIL_TEST_DATA) + "/" + name; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
  nlohmann::json report() const { return nlohmann::json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "stochdil_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

bool all_checks_pass(const nlohmann::json& report) {
  for (const auto& c : report.at("checks"))
    if (!c.at("pass").get<bool>()) return false;
  return true;
}

}  // namespace

TEST(Io, ExactRoundTrip) {
  oracle::Gen gen(71);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix m = gen.rational_stochastic(gen.size(1, 6), gen.integer(1, 1000));
    if (trial % 5 == 0) m.set(0, 0, Scalar::parse_exact("123456789012345678901234567890/7"));
    EXPECT_EQ(io::parse_matrix(io::serialize(m)), m);
  }
}

TEST(Io, FloatRoundTripIsBitIdentical) {
  oracle::Gen gen(72);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = gen.float_stochastic(gen.size(1, 6));
    const Matrix back = io::parse_matrix(io::serialize(m));
    ASSERT_EQ(back.mode(), Mode::Float);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) EXPECT_EQ(back(r, c).to_double(), m(r, c).to_double());
  }
  const Matrix tiny = Matrix::from_doubles({{5e-324, 1.0 / 3.0}});
  EXPECT_EQ(io::parse_matrix(io::serialize(tiny)), tiny);
}

TEST(Io, ReadsDataFiles) {
  EXPECT_EQ(io::matrix_from_json(io::read_json(data("maxwell_T.json"))), models::maxwell_demon());
  EXPECT_EQ(io::matrix_from_json(io::read_json(data("maxwell_R.json"))), reference::maxwell_r());
  EXPECT_EQ(io::probvec_from_json(io::read_json(data("uniform4.json"))), ProbVec::uniform(4));
  EXPECT_EQ(io::partition_from_json(io::read_json(data("pairs_partition.json"))), Partition::consecutive({2, 2}));
  EXPECT_EQ(io::probvec_from_json(nlohmann::json::parse(R"({"mode":"exact","rows":2,"cols":1,"data":["1/3","2/3"]})")),
            ProbVec::exact({"1/3", "2/3"}));
}

TEST(Io, SchemaErrors) {
  const char* bad[] = {
      R"({"rows": 1, "cols": 1, "data": [[1]]})",
      R"({"mode": "exact", "rows": 2, "cols": 1, "data": [[1]]})",
      R"({"mode": "exact", "rows": 1, "cols": 2, "data": [[1]]})",
      R"({"mode": "exact", "rows": 1, "cols": 1, "data": [[0.5]]})",
      R"({"mode": "float", "rows": 1, "cols": 1, "data": [["1/2"]]})",
      R"({"mode": "complex", "rows": 1, "cols": 1, "data": [[1]]})",
      R"({"mode": "exact", "rows": 0, "cols": 0, "data": []})",
      R"([1, 2])",
  };
  for (const char* text : bad) EXPECT_EQ(kind_of([&] { io::parse_matrix(text); }), ErrorKind::Parse) << text;
  EXPECT_EQ(kind_of([] { io::parse_matrix("{not json"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { io::read_json(data("malformed.json")); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { io::read_json(data("does_not_exist.json")); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { io::probvec_from_json(io::read_json(data("identity4.json"))); }), ErrorKind::Parse);
}

TEST(Cli, ValidateReportsFlags) {
  const auto r = run({"validate", data("maxwell_T.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  EXPECT_EQ(j["command"], "validate");
  EXPECT_TRUE(j["result"]["left"].get<bool>());
  EXPECT_FALSE(j["result"]["right"].get<bool>());
  EXPECT_EQ(j["result"]["max_row_defect"], "1/2");
  EXPECT_EQ(j["inputs"][0], data("maxwell_T.json"));
}

TEST(Cli, ModeFlagConvertsInputs) {
  const auto r = run({"--mode", "float", "validate", data("maxwell_T.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["result"]["mode"], "float");
  EXPECT_EQ(run({"validate", data("maxwell_T.json"), "--mode", "exact"}).code, 0);
  EXPECT_EQ(run({"--mode", "double", "validate", data("maxwell_T.json")}).code, cli::kExitUsage);
}

TEST(Cli, FixedPointAndApply) {
  const auto fp = run({"fixed-point", data("maxwell_T.json")});
  ASSERT_EQ(fp.code, 0);
  EXPECT_EQ(fp.report()["result"]["face_dimension"], 1);
  const auto ap = run({"apply", data("maxwell_T.json"), data("uniform4.json")});
  ASSERT_EQ(ap.code, 0);
  EXPECT_EQ(ap.report()["result"]["image"]["data"], nlohmann::json::parse(R"([["3/8"],["1/8"],["1/8"],["3/8"]])"));
}

TEST(Cli, IterateSteps) {
  const auto r = run({"iterate", data("maxwell_T.json"), data("uniform4.json"), "--steps", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["result"]["trajectory"].size(), 4u);
  EXPECT_EQ(r.report()["result"]["trajectory"][1], nlohmann::json::parse(R"(["3/8","1/8","1/8","3/8"])"));
}

TEST(Cli, CoarseGrainShift) {
  const auto r = run({"coarse-grain", data("cyclic_shift4.json"), data("pairs_partition.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(io::matrix_from_json(r.report()["result"]["T"]), Matrix::exact({{"1/2", "1/2"}, {"1/2", "1/2"}}));
}

TEST(Cli, DilateNoisyWritesGoldenMatrix) {
  const fs::path out = scratch("maxwell_R_out.json");
  fs::remove(out);
  const auto r = run({"dilate", "noisy", data("maxwell_T.json"), "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  EXPECT_EQ(j["command"], "dilate noisy");
  EXPECT_TRUE(all_checks_pass(j));
  EXPECT_EQ(j["outputs"][0], out.string());
  EXPECT_EQ(io::parse_matrix(slurp(out)), reference::maxwell_r());

  const auto back = run({"extract", out.string(), "--zero-index", "0"});
  ASSERT_EQ(back.code, 0);
  EXPECT_EQ(io::matrix_from_json(back.report()["result"]["T"]), models::maxwell_demon());
}

TEST(Cli, DilateUniformAndUnistochastic) {
  const auto u = run({"dilate", "uniform", data("two_state_third.json")});
  ASSERT_EQ(u.code, 0) << u.err;
  EXPECT_EQ(u.report()["result"]["d"], 3);
  EXPECT_TRUE(all_checks_pass(u.report()));
  const auto z = run({"dilate", "uniform", data("maxwell_T.json"), data("uniform4.json")});
  EXPECT_EQ(z.code, cli::kExitVerification);
  EXPECT_NE(z.err.find("NotFixedPoint"), std::string::npos);
  const auto zero = run({"dilate", "uniform", data("maxwell_T.json")});
  EXPECT_EQ(zero.code, cli::kExitVerification);
  EXPECT_NE(zero.err.find("ZeroComponent"), std::string::npos);

  const auto w = run({"dilate", "unistochastic", data("float_positive.json")});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_TRUE(all_checks_pass(w.report()));
}

TEST(Cli, VerifyDilation) {
  EXPECT_EQ(run({"verify-dilation", data("maxwell_T.json"), data("maxwell_R.json")}).code, 0);
  const auto wrong = run({"verify-dilation", data("identity4.json"), data("maxwell_R.json")});
  EXPECT_EQ(wrong.code, cli::kExitVerification);
  EXPECT_FALSE(wrong.report()["result"]["valid"].get<bool>());
}

TEST(Cli, EntropyCommands) {
  const auto e = run({"entropy", "--vec", data("uniform4.json")});
  ASSERT_EQ(e.code, 0);
  EXPECT_NEAR(e.report()["result"]["entropy"].get<double>(), 1.38629436112, 1e-11);

  const auto l = run({"ledger", data("maxwell_T.json")});
  ASSERT_EQ(l.code, 0);
  EXPECT_NEAR(l.report()["result"]["marginal_total"].get<double>(), 2.64178, 1e-4);
}

TEST(Cli, EntropyRegionCsv) {
  const fs::path out = scratch("region.csv");
  const auto r = run({"entropy-region", data("maxwell_T.json"), "--grid", "10", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(slurp(out));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t,p0,p1,p2,p3,H(p),H(Tp)");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6);
  }
  EXPECT_EQ(rows, 4 * (11 + 1));

  const auto inline_csv = run({"entropy-region", data("maxwell_T.json"), "--grid", "4"});
  ASSERT_EQ(inline_csv.code, 0);
  EXPECT_EQ(inline_csv.report()["result"]["csv"].get<std::string>().rfind("t,p0", 0), 0u);
}

TEST(Cli, BirkhoffAndSinkhorn) {
  const auto b = run({"birkhoff", data("maxwell_R.json")});
  ASSERT_EQ(b.code, 0);
  EXPECT_LE(b.report()["result"]["count"].get<int>(), 226);
  const auto s = run({"sinkhorn", data("float_positive.json"), "--max-iter", "500"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_TRUE(all_checks_pass(s.report()));
  EXPECT_EQ(run({"sinkhorn", data("maxwell_T.json")}).code, cli::kExitVerification);
}

TEST(Cli, DemoMaxwell) {
  const auto r = run({"demo", "maxwell"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(all_checks_pass(r.report()));
  EXPECT_NO_THROW(io::matrix_from_json(r.report()["result"]["dilation"]));
}

TEST(Cli, DemoNegativeControls) {
  cli::MaxwellReference bad_entropy;
  bad_entropy.h_evolved = 1.74;
  EXPECT_FALSE(cli::demo_maxwell(bad_entropy).passed());
  EXPECT_EQ(cli::demo_maxwell(bad_entropy).first_failure(), "ledger h_evolved");

  cli::MaxwellReference bad_matrix;
  bad_matrix.dilation_24ths[1][4] = 3;
  EXPECT_EQ(cli::demo_maxwell(bad_matrix).first_failure(), "noisy dilation == reference R");

  cli::MaxwellReference bad_image;
  bad_image.one_step_image = {"1/4", "1/4", "1/4", "1/4"};
  EXPECT_EQ(cli::demo_maxwell(bad_image).first_failure(), "one-step image");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"validate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"validate", data("malformed.json")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"validate", data("does_not_exist.json")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--steps", "abc", "iterate", data("maxwell_T.json"), data("uniform4.json")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"dilate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);

  const auto neg = run({"validate", data("negative.json")});
  EXPECT_EQ(neg.code, cli::kExitVerification);
  EXPECT_NE(neg.err.find("NegativeEntry"), std::string::npos);
  EXPECT_EQ(run({"dilate", "noisy", data("not_stochastic.json")}).code, cli::kExitVerification);
  EXPECT_EQ(run({"extract", data("maxwell_R.json"), "--zero-index", "7"}).code, cli::kExitVerification);
}
