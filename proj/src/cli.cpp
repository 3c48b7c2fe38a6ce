#include "stochdil/cli.hpp"

#include "stochdil/coarse_grain.hpp"
#include "stochdil/core.hpp"
#include "stochdil/entropy.hpp"
#include "stochdil/env_dilation.hpp"
#include "stochdil/error.hpp"
#include "stochdil/io.hpp"
#include "stochdil/models.hpp"
#include "stochdil/sinkhorn.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

namespace stochdil::cli {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Report

bool RunReport::passed() const { return !first_failure().has_value(); }

std::optional<std::string> RunReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return c.name;
  return std::nullopt;
}

namespace {

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return json::parse(buf);
}

json scalar_json(const Scalar& s) { return s.is_exact() ? json(s.to_string()) : num(s.to_double()); }

json vector_json(const Vector& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(scalar_json(s));
  return out;
}

json vector_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

}  // namespace

json RunReport::to_json() const {
  json checks_json = json::array();
  for (const auto& c : checks) checks_json.push_back({{"name", c.name}, {"pass", c.passed}, {"defect", num(c.defect)}});
  return {{"command", command}, {"inputs", inputs}, {"outputs", outputs}, {"checks", checks_json}, {"result", result}};
}

// ---------------------------------------------------------------------------
// Maxwell's demon walk-through

Matrix maxwell_dilation_reference(const MaxwellReference& ref) {
  Matrix r(16, 16, Mode::Exact);
  for (std::size_t row = 0; row < 16; ++row)
    for (std::size_t col = 0; col < 16; ++col) r.set(row, col, Scalar::fraction(ref.dilation_24ths[row][col], 24));
  return r;
}

namespace {

void add_check(RunReport& report, std::string name, bool passed, double defect) {
  report.checks.push_back({std::move(name), passed, defect});
}

void add_entropy_check(RunReport& report, const std::string& name, double value, double expected, double tol) {
  const double defect = std::abs(value - expected);
  add_check(report, name, defect <= tol, defect);
}

Vector exact_vector(const std::array<std::string, 4>& entries) {
  Vector v;
  for (const auto& e : entries) v.push_back(Scalar::parse_exact(e));
  return v;
}

}  // namespace

RunReport demo_maxwell(const MaxwellReference& ref) {
  RunReport report;
  report.command = "demo maxwell";
  const Matrix t = models::maxwell_demon();
  const ProbVec uniform = ProbVec::uniform(4);

  const FixedPointResult fp = fixed_point(t);
  const bool face_ok = fp.face_dimension == 1 && fp.vertices.size() == 2 &&
                       fp.vertices[0] == ProbVec::vertex(4, 0) && fp.vertices[1] == ProbVec::vertex(4, 3);
  add_check(report, "fixed-point face {(a,0,0,1-a)}", face_ok, face_ok ? 0.0 : 1.0);

  const ProbVec image = apply(t, uniform);
  const Vector expected_image = exact_vector(ref.one_step_image);
  add_check(report, "one-step image", image.entries() == expected_image, max_abs_diff(image.entries(), expected_image));
  add_entropy_check(report, "H(uniform)", shannon_entropy(uniform), ref.h_uniform, ref.entropy_tolerance);
  add_entropy_check(report, "H(T p)", shannon_entropy(image), ref.h_one_step, ref.entropy_tolerance);

  const Trajectory traj = iterate(t, uniform, 60);
  const Vector limit = exact_vector(ref.limit);
  const double limit_defect = max_abs_diff(traj.states.back().entries(), limit);
  add_check(report, "iterate limit", limit_defect <= 1e-10, limit_defect);
  add_entropy_check(report, "H(p_inf)", shannon_entropy(ProbVec(limit)), ref.h_limit, ref.entropy_tolerance);

  const EnvDilation dil = noisy_dilation(t);
  const Matrix reference = maxwell_dilation_reference(ref);
  add_check(report, "noisy dilation == reference R", dil.r == reference, max_abs_diff(dil.r, reference));

  const EntropyLedger ledger = entropy_ledger(t, uniform);
  add_entropy_check(report, "ledger h_input", ledger.h_input, ref.h_uniform, ref.entropy_tolerance);
  add_entropy_check(report, "ledger h_evolved", ledger.h_evolved, ref.h_evolved, ref.entropy_tolerance);
  add_entropy_check(report, "ledger h_marginal_1", ledger.h_marginal_1, ref.h_one_step, ref.entropy_tolerance);
  add_entropy_check(report, "ledger h_marginal_2", ledger.h_marginal_2, ref.h_uniform, ref.entropy_tolerance);
  add_entropy_check(report, "ledger marginal total", ledger.marginal_total(), ref.h_marginal_total,
                    ref.entropy_tolerance);

  // Environment marginal of R (p (x) delta_0) reproduces p.
  const Vector evolved = dil.r * (product_right_inverse(4, dil.rho).y * uniform.entries());
  Vector env_marginal(4, Scalar::zero(Mode::Exact));
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t i = 0; i < 4; ++i) env_marginal[i] += evolved[flat_index(m, i, 4)];
  add_check(report, "environment marginal == p", env_marginal == uniform.entries(),
            max_abs_diff(env_marginal, uniform.entries()));

  json vertices = json::array();
  for (const auto& v : fp.vertices) vertices.push_back(vector_json(v.entries()));
  report.result = {
      {"fixed_point_face", {{"dimension", fp.face_dimension}, {"vertices", vertices}}},
      {"one_step_image", vector_json(image.entries())},
      {"h_one_step", num(shannon_entropy(image))},
      {"limit", vector_json(traj.states.back().entries())},
      {"h_limit", num(shannon_entropy(traj.states.back()))},
      {"dilation", io::to_json(dil.r)},
      {"evolved", vector_json(evolved)},
      {"ledger",
       {{"h_input", num(ledger.h_input)},
        {"h_lifted", num(ledger.h_lifted)},
        {"h_evolved", num(ledger.h_evolved)},
        {"h_marginal_1", num(ledger.h_marginal_1)},
        {"h_marginal_2", num(ledger.h_marginal_2)},
        {"h_output", num(ledger.h_output)},
        {"marginal_total", num(ledger.marginal_total())}}},
  };
  return report;
}

// ---------------------------------------------------------------------------
// Subcommands

namespace {

struct Options {
  std::optional<std::string> mode;
  double tol = tolerance::kValidation;
  bool tol_given = false;
  std::string out;
  int steps = 10;
  std::size_t zero_index = 0;
  int grid = 20;
  int max_iter = 10000;
  std::string vec;
  std::string anchor;
  std::vector<std::string> files;
};

class Session {
 public:
  Session(const Options& opt, RunReport& report) : opt_(opt), report_(report) {}

  Matrix matrix(const std::string& path) {
    report_.inputs.push_back(path);
    Matrix m = io::matrix_from_json(io::read_json(path));
    return opt_.mode ? m.to_mode(parse_mode(*opt_.mode)) : m;
  }

  ProbVec vec(const std::string& path) {
    report_.inputs.push_back(path);
    ProbVec p = io::probvec_from_json(io::read_json(path));
    return opt_.mode ? ProbVec(p.to_mode(parse_mode(*opt_.mode)).entries()) : p;
  }

  Partition partition(const std::string& path) {
    report_.inputs.push_back(path);
    return io::partition_from_json(io::read_json(path));
  }

  void emit(const std::string& key, const Matrix& m) {
    report_.result[key] = io::to_json(m);
    if (!opt_.out.empty() && report_.outputs.empty()) {
      io::write_text(opt_.out, io::serialize(m));
      report_.outputs.push_back(opt_.out);
    }
  }

  void emit_text(const std::string& key, const std::string& text) {
    if (opt_.out.empty()) {
      report_.result[key] = text;
    } else {
      io::write_text(opt_.out, text);
      report_.outputs.push_back(opt_.out);
    }
  }

  void check(std::string name, bool passed, double defect) { add_check(report_, std::move(name), passed, defect); }

  json& result() { return report_.result; }
  const Options& opt() const { return opt_; }

 private:
  const Options& opt_;
  RunReport& report_;
};

[[noreturn]] void usage(const std::string& msg) { throw CLI::ValidationError(msg); }

void expect_files(const Options& opt, std::size_t min, std::size_t max, const char* synopsis) {
  if (opt.files.size() < min || opt.files.size() > max) usage(std::string("usage: ") + synopsis);
}

json report_json(const StochasticityReport& r) {
  return {{"left", r.left},
          {"right", r.right},
          {"bi", r.bi},
          {"irreducible", r.irreducible},
          {"max_column_defect", scalar_json(r.max_column_defect)},
          {"max_row_defect", scalar_json(r.max_row_defect)}};
}

// Re-validates a produced matrix and records whether it has the claimed flags.
void check_claim(Session& s, const std::string& what, const Matrix& m, bool want_bi, double tol) {
  const StochasticityReport r = validate(m, tol);
  const double defect = std::max(r.max_column_defect.to_double(), want_bi ? r.max_row_defect.to_double() : 0.0);
  s.check(what + (want_bi ? " bi-stochastic" : " left-stochastic"), want_bi ? r.bi : r.left, defect);
}

void cmd_validate(Session& s) {
  expect_files(s.opt(), 1, 1, "validate MATRIX");
  const Matrix m = s.matrix(s.opt().files[0]);
  s.result() = report_json(validate(m, s.opt().tol));
  s.result()["rows"] = m.rows();
  s.result()["cols"] = m.cols();
  s.result()["mode"] = to_string(m.mode());
}

void cmd_fixed_point(Session& s) {
  expect_files(s.opt(), 1, 1, "fixed-point MATRIX");
  const Matrix t = s.matrix(s.opt().files[0]);
  const FixedPointResult fp = fixed_point(t);
  json vertices = json::array(), basis = json::array();
  for (const auto& v : fp.vertices) vertices.push_back(vector_json(v.entries()));
  for (const auto& b : fp.basis) basis.push_back(vector_json(b));
  s.result() = {{"representative", vector_json(fp.representative.entries())},
                {"face_dimension", fp.face_dimension},
                {"is_unique", fp.is_unique},
                {"vertices", vertices},
                {"basis", basis}};
  const double residual = max_abs_diff(t * fp.representative.entries(), fp.representative.entries());
  s.check("T p == p", t.mode() == Mode::Exact ? residual == 0.0 : residual <= 1e-10, residual);
}

void cmd_apply(Session& s) {
  expect_files(s.opt(), 2, 2, "apply MATRIX VECTOR");
  const Matrix t = s.matrix(s.opt().files[0]);
  const ProbVec p = s.vec(s.opt().files[1]);
  const ProbVec q = apply(t, p);
  s.emit("image", Matrix::column_vector(q.entries()));
  s.result()["entropy"] = num(shannon_entropy(q));
}

void cmd_iterate(Session& s) {
  expect_files(s.opt(), 2, 2, "iterate MATRIX VECTOR --steps K");
  const Matrix t = s.matrix(s.opt().files[0]);
  const ProbVec p = s.vec(s.opt().files[1]);
  const Trajectory traj = iterate(t, p, s.opt().steps);
  json states = json::array();
  for (const auto& st : traj.states) states.push_back(vector_json(st.entries()));
  s.result()["trajectory"] = states;
  s.result()["converged"] = traj.converged;
  s.emit("final", Matrix::column_vector(traj.states.back().entries()));
}

void cmd_coarse_grain(Session& s) {
  expect_files(s.opt(), 2, 3, "coarse-grain MATRIX PARTITION [RIGHT_INVERSE]");
  const Matrix sm = s.matrix(s.opt().files[0]);
  const Partition part = s.partition(s.opt().files[1]);
  const RightInverse y = s.opt().files.size() == 3 ? custom_right_inverse(part, s.matrix(s.opt().files[2]))
                                                   : uniform_right_inverse(part, sm.mode());
  const Matrix t = coarse_grain(sm, part, y);
  s.emit("T", t);
  check_claim(s, "T", t, false, s.opt().tol);
}

void cmd_dilate_uniform(Session& s) {
  expect_files(s.opt(), 1, 2, "dilate uniform MATRIX [FIXED_POINT]");
  const Matrix t = s.matrix(s.opt().files[0]);
  const ProbVec p = s.opt().files.size() == 2 ? s.vec(s.opt().files[1]) : fixed_point(t).representative;
  const UniformDilation dil = uniform_dilation(t, p);
  s.result()["d"] = dil.partition.size();
  s.result()["class_sizes"] = dil.partition.class_sizes();
  s.result()["partition"] = io::to_json(dil.partition);
  s.result()["fixed_point"] = vector_json(p.entries());
  s.emit("S", dil.s);
  for (const auto& c : dil.verification) s.check(c.name, c.passed, c.defect);
}

void cmd_dilate_noisy(Session& s) {
  expect_files(s.opt(), 1, 1, "dilate noisy MATRIX");
  const Matrix t = s.matrix(s.opt().files[0]);
  const EnvDilation dil = noisy_dilation(t);
  s.result()["env_size"] = dil.env_size;
  s.result()["rho"] = vector_json(dil.rho.entries());
  s.emit("R", dil.r);
  check_claim(s, "R", dil.r, true, s.opt().tol);
  const Matrix back = extract_dilated(dil.r, 0);
  const double defect = max_abs_diff(back, t);
  s.check("extract_dilated == input", t.mode() == Mode::Exact ? back == t : defect <= s.opt().tol, defect);
  s.check("environment dilation identity", verify_env_dilation(t, dil), 0.0);
}

void cmd_dilate_unistochastic(Session& s) {
  expect_files(s.opt(), 1, 1, "dilate unistochastic MATRIX");
  const Matrix t = s.matrix(s.opt().files[0]);
  const UnitaryDilation dil = unistochastic_dilation(t);
  s.result()["U"] = io::to_json(dil.u);
  s.emit("R", dil.r);
  s.check("U orthogonal", dil.orthogonality_defect <= 1e-12, dil.orthogonality_defect);
  check_claim(s, "R", dil.r, true, 1e-12);
  const double defect = max_abs_diff(extract_dilated(dil.r, 0), t);
  s.check("extract_dilated == input", defect <= 1e-12, defect);
}

void cmd_extract(Session& s) {
  expect_files(s.opt(), 1, 1, "extract MATRIX --zero-index K");
  const Matrix r = s.matrix(s.opt().files[0]);
  const Matrix t = extract_dilated(r, s.opt().zero_index);
  s.emit("T", t);
  check_claim(s, "T", t, false, s.opt().tol);
}

void cmd_verify(Session& s) {
  expect_files(s.opt(), 2, 2, "verify-dilation MATRIX DILATION [--zero-index K]");
  const Matrix t = s.matrix(s.opt().files[0]);
  const Matrix r = s.matrix(s.opt().files[1]);
  if (!t.is_square() || t.rows() == 0 || r.rows() % t.rows() != 0) {
    throw Error(ErrorKind::DimensionMismatch, "dilation size is not a multiple of N");
  }
  const std::size_t env = r.rows() / t.rows();
  const EnvDilation e{t.rows(), env, ProbVec::vertex(env, s.opt().zero_index, r.mode()), r};
  const bool ok = verify_env_dilation(t, e, 32, s.opt().tol);
  s.result()["env_size"] = env;
  s.result()["valid"] = ok;
  s.check("environment dilation identity", ok, 0.0);
}

void cmd_entropy(Session& s) {
  std::string path = s.opt().vec;
  if (path.empty()) {
    expect_files(s.opt(), 1, 1, "entropy --vec VECTOR");
    path = s.opt().files[0];
  }
  const ProbVec p = s.vec(path);
  s.result()["entropy"] = num(shannon_entropy(p));
}

std::string region_csv(const std::vector<RayScan>& scans, std::size_t n) {
  std::ostringstream csv;
  csv << "t";
  for (std::size_t k = 0; k < n; ++k) csv << ",p" << k;
  csv << ",H(p),H(Tp)\n";
  char buf[64];
  auto row = [&](const RaySample& r) {
    std::snprintf(buf, sizeof buf, "%.12g", r.t);
    csv << buf;
    for (double v : r.point) {
      std::snprintf(buf, sizeof buf, ",%.12g", v);
      csv << buf;
    }
    std::snprintf(buf, sizeof buf, ",%.12g,%.12g\n", r.h_point, r.h_image);
    csv << buf;
  };
  for (const auto& scan : scans) {
    for (const auto& sample : scan.samples) row(sample);
    row(scan.boundary);
  }
  return csv.str();
}

void cmd_entropy_region(Session& s) {
  expect_files(s.opt(), 1, 2, "entropy-region MATRIX [DIRECTIONS] [--anchor VECTOR] [--grid G]");
  const Matrix t = s.matrix(s.opt().files[0]);
  const std::size_t n = t.rows();
  const ProbVec anchor = s.opt().anchor.empty() ? ProbVec::uniform(n, t.mode()) : s.vec(s.opt().anchor);
  std::vector<ProbVec> directions;
  if (s.opt().files.size() == 2) {
    // Each column of the directions matrix is one target point.
    const Matrix d = s.matrix(s.opt().files[1]);
    for (std::size_t c = 0; c < d.cols(); ++c) directions.emplace_back(d.column(c));
  } else {
    for (std::size_t k = 0; k < n; ++k) directions.push_back(ProbVec::vertex(n, k, t.mode()));
  }
  const auto scans = region_boundary_scan(t, anchor, directions, s.opt().grid);
  json boundary = json::array();
  double worst = 0.0;
  for (const auto& scan : scans) {
    boundary.push_back({{"t", num(scan.boundary.t)},
                        {"point", vector_json(scan.boundary.point)},
                        {"whole_segment_inside", scan.whole_segment_inside}});
    if (!scan.whole_segment_inside) worst = std::max(worst, std::abs(scan.boundary.h_image - scan.boundary.h_point));
  }
  s.result()["boundary"] = boundary;
  s.emit_text("csv", region_csv(scans, n));
  s.check("boundary |H(Tp) - H(p)|", worst <= 1e-7, worst);
}

void cmd_ledger(Session& s) {
  expect_files(s.opt(), 1, 2, "ledger MATRIX [VECTOR]");
  const Matrix t = s.matrix(s.opt().files[0]);
  const ProbVec p = s.opt().files.size() == 2 ? s.vec(s.opt().files[1]) : ProbVec::uniform(t.rows(), t.mode());
  const EntropyLedger l = entropy_ledger(t, p);
  s.result() = {{"h_input", num(l.h_input)},         {"h_lifted", num(l.h_lifted)},
                {"h_evolved", num(l.h_evolved)},     {"h_marginal_1", num(l.h_marginal_1)},
                {"h_marginal_2", num(l.h_marginal_2)}, {"h_output", num(l.h_output)},
                {"marginal_total", num(l.marginal_total())}};
  s.check("h_lifted == h_input", std::abs(l.h_lifted - l.h_input) <= 1e-12, std::abs(l.h_lifted - l.h_input));
  s.check("h_evolved >= h_lifted", l.h_evolved >= l.h_lifted - 1e-12, std::max(0.0, l.h_lifted - l.h_evolved));
  s.check("h_output == h_marginal_1", std::abs(l.h_output - l.h_marginal_1) <= 1e-12,
          std::abs(l.h_output - l.h_marginal_1));
}

void cmd_birkhoff(Session& s) {
  expect_files(s.opt(), 1, 1, "birkhoff MATRIX");
  const Matrix sm = s.matrix(s.opt().files[0]);
  const BirkhoffDecomposition dec = birkhoff_decompose(sm);
  json terms = json::array();
  for (const auto& term : dec.terms) terms.push_back({{"weight", scalar_json(term.weight)}, {"perm", term.perm}});
  s.result()["terms"] = terms;
  s.result()["count"] = dec.terms.size();
  const std::size_t n = sm.rows();
  const double recon = max_abs_diff(dec.reconstruct(n, sm.mode()), sm);
  const double weight_defect = std::abs(dec.weight_sum(sm.mode()).to_double() - 1.0);
  const bool exact = sm.mode() == Mode::Exact;
  s.check("reconstruction", exact ? recon == 0.0 : recon <= 1e-10, recon);
  s.check("weights sum to 1", exact ? weight_defect == 0.0 : weight_defect <= 1e-12, weight_defect);
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  s.check("term count <= (N-1)^2+1", dec.terms.size() <= bound, static_cast<double>(dec.terms.size()));
}

void cmd_sinkhorn(Session& s) {
  expect_files(s.opt(), 1, 1, "sinkhorn MATRIX [--tol T] [--max-iter K]");
  const Matrix t = s.matrix(s.opt().files[0]);
  const double tol = s.opt().tol_given ? s.opt().tol : 1e-10;
  const SinkhornResult res = sinkhorn_knopp(t, tol, s.opt().max_iter);
  s.result()["d1"] = vector_json(res.d1);
  s.result()["d2"] = vector_json(res.d2);
  s.result()["iterations"] = res.iterations;
  s.result()["final_defect"] = num(res.final_defect);
  s.emit("S", res.s);
  s.check("S bi-stochastic", res.final_defect <= tol, res.final_defect);
  double worst = 0.0;
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t c = 0; c < t.cols(); ++c)
      worst = std::max(worst, std::abs(res.s(r, c).to_double() - res.d1[r] * t(r, c).to_double() * res.d2[c]));
  s.check("S == D1 T D2", worst <= 10 * tol, worst);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dilations of stochastic matrices to bi-stochastic ones", "stochdil"};
  app.fallthrough();
  app.require_subcommand(1);

  Options opt;
  app.add_option("--mode", opt.mode, "Convert inputs to exact or float")->check(CLI::IsMember({"exact", "float"}));
  CLI::Option* tol_opt = app.add_option("--tol", opt.tol, "Float tolerance for stochasticity checks");
  app.add_option("--out", opt.out, "Write the produced matrix or CSV here");
  app.add_option("--steps", opt.steps, "Number of iterations");
  app.add_option("--zero-index", opt.zero_index, "Initial environment state");
  app.add_option("--grid", opt.grid, "Samples per ray for entropy-region");

  using Handler = std::function<void(Session&)>;
  std::vector<std::pair<CLI::App*, Handler>> handlers;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->add_option("files", opt.files, "Input files");
    handlers.emplace_back(sub, std::move(h));
    return sub;
  };

  leaf(&app, "validate", "Classify a matrix as left/right/bi-stochastic", cmd_validate);
  leaf(&app, "fixed-point", "Fixed points of a stochastic matrix", cmd_fixed_point);
  leaf(&app, "apply", "Apply a stochastic matrix to a distribution", cmd_apply);
  leaf(&app, "iterate", "Trajectory p, Tp, ..., T^k p", cmd_iterate);
  leaf(&app, "coarse-grain", "T = X S Y for a partition", cmd_coarse_grain);
  CLI::App* dilate = app.add_subcommand("dilate", "Dilate a stochastic matrix to a bi-stochastic one");
  dilate->require_subcommand(1);
  leaf(dilate, "uniform", "Dilation by uniform coarse graining", cmd_dilate_uniform);
  leaf(dilate, "noisy", "Noisy standard environment dilation", cmd_dilate_noisy);
  leaf(dilate, "unistochastic", "Uni-stochastic dilation via an orthogonal completion", cmd_dilate_unistochastic);
  leaf(&app, "extract", "Recover T from a standard dilation", cmd_extract);
  leaf(&app, "verify-dilation", "Check an environment dilation of T", cmd_verify);
  leaf(&app, "entropy", "Shannon entropy of a distribution", cmd_entropy)
      ->add_option("--vec", opt.vec, "Distribution file");
  leaf(&app, "entropy-region", "Scan the boundary of the entropy-decreasing region", cmd_entropy_region)
      ->add_option("--anchor", opt.anchor, "Ray origin (default: barycenter)");
  leaf(&app, "ledger", "Entropy ledger of the noisy dilation", cmd_ledger);
  leaf(&app, "birkhoff", "Birkhoff-von Neumann decomposition", cmd_birkhoff);
  leaf(&app, "sinkhorn", "Sinkhorn-Knopp balancing", cmd_sinkhorn)
      ->add_option("--max-iter", opt.max_iter, "Maximum number of sweeps");
  CLI::App* demo = app.add_subcommand("demo", "Worked examples");
  demo->require_subcommand(1);
  CLI::App* demo_maxwell_cmd = demo->add_subcommand("maxwell", "Maxwell's demon walk-through");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  opt.tol_given = tol_opt->count() > 0;
  RunReport report;
  try {
    if (demo_maxwell_cmd->parsed()) {
      report = demo_maxwell();
    } else {
      for (auto& [sub, handler] : handlers) {
        if (!sub->parsed()) continue;
        report.command = sub->get_parent() == &app ? sub->get_name()
                                                   : sub->get_parent()->get_name() + " " + sub->get_name();
        Session session(opt, report);
        handler(session);
        break;
      }
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.kind() == ErrorKind::Parse ? kExitUsage : kExitVerification;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  out << report.to_json().dump(2) << "\n";
  if (auto failed = report.first_failure()) {
    err << (report.command == "demo maxwell" ? "DemoMismatch: " : "check failed: ") << *failed << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

}  // namespace stochdil::cli
