#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json_io.hpp"

#include "grassmann/chamber.hpp"
#include "grassmann/convexoid.hpp"
#include "grassmann/errors.hpp"
#include "grassmann/lemmas.hpp"
#include "grassmann/plucker.hpp"
#include "grassmann/sampling.hpp"

namespace grassmann::cli {

namespace {

using json_io::Json;

struct Options {
  std::uint64_t seed = 1;
  int samples = 100;
  int k = 2;
  int n = 4;
  double tol = 1e-6;
  int jobs = 1;
  std::string out;
  std::string csv;
  std::string epsilon_initial = "1/2";
  int epsilon_max_iter = 64;
  bool positive = false;
  bool timing = false;
  std::vector<std::string> inputs;
};

// Input errors: reported with exit code 2.
bool is_input_error(const std::exception& e) {
  return dynamic_cast<const ParseError*>(&e) != nullptr || dynamic_cast<const ValidationError*>(&e) != nullptr ||
         dynamic_cast<const DecomposabilityError*>(&e) != nullptr ||
         dynamic_cast<const NormalizationError*>(&e) != nullptr || dynamic_cast<const GradeError*>(&e) != nullptr ||
         dynamic_cast<const DimensionError*>(&e) != nullptr || dynamic_cast<const DomainError*>(&e) != nullptr ||
         dynamic_cast<const RankError*>(&e) != nullptr || dynamic_cast<const ContainmentError*>(&e) != nullptr;
}

class Report {
 public:
  Report(std::string command, Json parameters) : command_(std::move(command)), parameters_(std::move(parameters)) {}

  void check(const std::string& name, bool pass) {
    if (seen_.count(name) != 0) throw std::logic_error("check '" + name + "' recorded twice");
    seen_[name] = true;
    checks_.push_back(Json{{"name", name}, {"pass", pass}});
    ok_ = ok_ && pass;
  }
  void error(double e) { max_error_ = std::max(max_error_.value_or(0.0), e); }
  void result(Json r) { result_ = std::move(r); }
  [[nodiscard]] bool ok() const { return ok_; }

  [[nodiscard]] Json to_json(std::optional<double> wall) const {
    Json j{{"schema", kReportSchema}, {"command", command_}, {"parameters", parameters_}};
    j["ok"] = ok_;
    j["checks"] = checks_.empty() ? Json::array() : Json(checks_);
    j["max_error"] = max_error_ ? Json(*max_error_) : Json(nullptr);
    j["result"] = result_;
    if (wall) j["wall_time_s"] = *wall;
    return j;
  }

 private:
  std::string command_;
  Json parameters_;
  std::vector<Json> checks_;
  std::map<std::string, bool> seen_;
  std::optional<double> max_error_;
  Json result_ = nullptr;
  bool ok_ = true;
};

std::string read_input(const std::string& spec) {
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (spec[first] == '{' || spec[first] == '[')) return spec;
  std::ostringstream os;
  if (spec == "-") {
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(spec);
  if (!in) throw ParseError("cannot read input '" + spec + "'");
  os << in.rdbuf();
  return os.str();
}

Json input(const Options& o, std::size_t i) {
  if (o.inputs.size() <= i) throw ParseError("missing input argument " + std::to_string(i + 1));
  return json_io::parse(read_input(o.inputs[i]));
}

void require_inputs(const Options& o, std::size_t count) {
  if (o.inputs.size() != count) {
    throw ParseError("expected " + std::to_string(count) + " input argument(s), got " +
                     std::to_string(o.inputs.size()));
  }
}

EpsilonSearch epsilon_search(const Options& o) {
  EpsilonSearch cfg;
  cfg.initial = Rational::parse(o.epsilon_initial);
  cfg.max_iterations = o.epsilon_max_iter;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw ParseError(std::string("invalid epsilon search: ") + e.what());
  }
  return cfg;
}

Json epsilon_log_json(const EpsilonLog& log) {
  Json out = Json::array();
  for (const auto& r : log) {
    out.push_back(Json{{"grade", r.grade}, {"n", r.n}, {"epsilon", r.epsilon.str()}, {"iterations", r.iterations}});
  }
  return out;
}

double norm(const Point& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double max_diff(const DenseForm& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) m = std::max(m, std::abs(a.c[i] - b[i]));
  return m;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next++; i < count; i = next++) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------- algebra

void cmd_wedge(const Options& o, Report& r) {
  if (o.inputs.size() < 2) throw ParseError("wedge needs at least two inputs");
  MultiVector acc = json_io::multivector_from_json(input(o, 0));
  for (std::size_t i = 1; i < o.inputs.size(); ++i) acc = wedge(acc, json_io::multivector_from_json(input(o, i)));
  r.result(json_io::to_json(acc));
}

void cmd_plucker(const Options& o, Report& r) {
  require_inputs(o, 1);
  const Json j = input(o, 0);
  if (j.is_object() && j.contains("rows")) {
    const MultiVector w = plucker_of_matrix(json_io::plane_from_json(j));
    r.result(Json{{"multivector", json_io::to_json(w)}, {"canonical", json_io::to_json(canonical_representative(w))}});
    return;
  }
  const MultiVector w = json_io::multivector_from_json(j);
  const PlaneMatrix m = spanning_vectors(w);
  const MultiVector back = plucker_of_matrix(m);
  r.check("same_plane", same_plane(back, w));
  r.result(json_io::to_json(m));
}

void cmd_check(const Options& o, Report& r) {
  require_inputs(o, 1);
  const MultiVector w = json_io::multivector_from_json(input(o, 0));
  const bool decomposable = !w.is_zero() && is_decomposable(w);
  r.result(Json{{"decomposable", decomposable}, {"sign", to_string(classify_sign(w))}, {"normalized", is_normalized(w)}});
}

void lemma_checks(Report& r, const MultiVector& lower, const MultiVector& upper, const MultiVector& out,
                  bool positive) {
  const SignClass s = classify_sign(out);
  r.check("nonzero", !out.is_zero());
  r.check("decomposable", !out.is_zero() && is_decomposable(out));
  r.check("sign", positive ? s == SignClass::Positive : (s == SignClass::Positive || s == SignClass::Nonnegative));
  if (lower.grade() >= 1) r.check("containment", contains(lower, upper));
}

void cmd_shrink(const Options& o, Report& r) {
  require_inputs(o, 1);
  const MultiVector w = json_io::multivector_from_json(input(o, 0));
  EpsilonLog log;
  const MultiVector eta = o.positive ? shrink_positive(w, epsilon_search(o), true, &log) : shrink_nonneg(w);
  lemma_checks(r, eta, w, eta, o.positive);
  r.result(Json{{"eta", json_io::to_json(eta)}, {"epsilon_log", epsilon_log_json(log)}});
}

void cmd_extend(const Options& o, Report& r) {
  require_inputs(o, 1);
  const MultiVector w = json_io::multivector_from_json(input(o, 0));
  EpsilonLog log;
  const MultiVector eta = o.positive ? extend_positive(w, epsilon_search(o), true, &log) : extend_nonneg(w);
  lemma_checks(r, w, eta, eta, o.positive);
  r.result(Json{{"eta", json_io::to_json(eta)}, {"epsilon_log", epsilon_log_json(log)}});
}

// ---------------------------------------------------------------- chamber

void cmd_split(const Options& o, Report& r) {
  require_inputs(o, 1);
  const ChamberPoint p(json_io::multivector_from_json(input(o, 0)));
  const SplitTriple s = split(p);
  r.check("assemble_roundtrip", assemble(s).rho() == p.rho());
  r.result(json_io::to_json(s));
}

void cmd_assemble(const Options& o, Report& r) {
  require_inputs(o, 1);
  const SplitTriple s = json_io::split_from_json(input(o, 0));
  const ChamberPoint p = assemble(s);
  const SplitTriple back = split(p);
  r.check("split_roundtrip", back.t == s.t && back.eta == s.eta && back.omega == s.omega);
  r.result(json_io::to_json(p.rho()));
}

void cmd_chart(const Options& o, Report& r) {
  require_inputs(o, 1);
  const ChamberPoint p(json_io::multivector_from_json(input(o, 0)));
  const BallChart chart(p.k(), p.n());
  const Point y = chart.forward(p);
  const double err = max_diff(chart.inverse(y), p.rho().dense_double());
  r.error(err);
  r.check("norm_within_ball", norm(y) <= 1.0 + 1e-9);
  r.check("roundtrip", err <= o.tol);
  r.result(Json{{"k", p.k()}, {"n", p.n()}, {"coords", y}, {"norm", norm(y)}});
}

void cmd_chart_inverse(const Options& o, Report& r) {
  require_inputs(o, 1);
  const Json j = input(o, 0);
  if (!j.is_object() || !j.contains("k") || !j.contains("n") || !j.contains("coords")) {
    throw ParseError("chart-inverse input needs 'k', 'n' and 'coords'");
  }
  if (!j["k"].is_number_integer() || !j["n"].is_number_integer() || !j["coords"].is_array()) {
    throw ParseError("chart-inverse input has fields of the wrong type");
  }
  Point c;
  for (const auto& x : j["coords"]) {
    if (!x.is_number()) throw ParseError("coords must be numbers");
    c.push_back(x.get<double>());
  }
  const BallChart chart(j["k"].get<int>(), j["n"].get<int>());
  const DenseForm rho = chart.inverse(c);
  const double lo = rho.c.empty() ? 0.0 : *std::min_element(rho.c.begin(), rho.c.end());
  r.error(std::abs(rho.sum() - 1.0));
  r.check("normalized", std::abs(rho.sum() - 1.0) <= o.tol);
  r.check("nonnegative", lo >= -o.tol);
  r.result(json_io::to_json(rho));
}

struct SweepSample {
  MultiVector rho{1, 0};
  bool positive = true;
  Point coords;
  double error = 0.0;
};

// Every fourth sample lies on the boundary (some zero coefficient).
std::vector<SweepSample> chart_sweep(const Options& o, const BallChart& chart) {
  if (o.samples < 1) throw ParseError("--samples must be positive");
  sampling::Rng rng(o.seed);
  std::vector<SweepSample> out(static_cast<std::size_t>(o.samples));
  const bool has_boundary = o.k >= 1 && o.k < o.n;
  for (int i = 0; i < o.samples; ++i) {
    auto& s = out[static_cast<std::size_t>(i)];
    s.positive = !(has_boundary && i % 4 == 3);
    s.rho = s.positive ? sampling::random_positive_point(rng, o.k, o.n) : sampling::random_boundary_point(rng, o.k, o.n);
  }
  parallel_for(o.samples, o.jobs, [&](int i) {
    auto& s = out[static_cast<std::size_t>(i)];
    s.coords = chart.forward(ChamberPoint(s.rho));
    s.error = max_diff(chart.inverse(s.coords), s.rho.dense_double());
  });
  return out;
}

void summarize_sweep(const Options& o, const std::vector<SweepSample>& samples, Report& r) {
  double worst = 0.0;
  double max_norm = 0.0;
  double max_positive_norm = 0.0;
  double min_boundary_norm = 1e300;
  bool positive_inside = true;
  int boundary = 0;
  for (const auto& s : samples) {
    worst = std::max(worst, s.error);
    const double len = norm(s.coords);
    max_norm = std::max(max_norm, len);
    if (s.positive) {
      positive_inside = positive_inside && len < 1.0;
      max_positive_norm = std::max(max_positive_norm, len);
    } else {
      ++boundary;
      min_boundary_norm = std::min(min_boundary_norm, len);
    }
  }
  double margin = 1e300;
  long pairs = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (samples[i].rho == samples[j].rho) continue;
      ++pairs;
      margin = std::min(margin, distance(samples[i].coords, samples[j].coords));
    }
  }
  r.error(worst);
  r.check("roundtrip", worst <= o.tol);
  r.check("norm_bound", max_norm <= 1.0 + 1e-9);
  r.check("positive_interior", positive_inside);
  r.check("injectivity", pairs == 0 || margin > 0.0);
  Json soft{{"samples", boundary}};
  soft["min_norm"] = boundary > 0 ? Json(min_boundary_norm) : Json(nullptr);
  soft["holds"] = boundary == 0 || min_boundary_norm >= 1.0 - 1e-4;
  r.result(Json{{"samples", samples.size()},
                {"roundtrip_max_error", worst},
                {"max_norm", max_norm},
                {"max_positive_norm", max_positive_norm},
                {"injectivity_pairs", pairs},
                {"injectivity_margin", pairs == 0 ? Json(nullptr) : Json(margin)},
                {"boundary_norm_soft", soft}});
}

// Index-set column names contain commas, so they are quoted.
void write_csv(const std::string& path, const std::vector<SweepSample>& samples) {
  std::ostringstream os;
  os.precision(17);
  os << "index,kind";
  for (const auto& a : k_subsets(samples.front().rho.n(), samples.front().rho.grade())) os << ",\"c" << a.str() << '"';
  for (std::size_t i = 0; i < samples.front().coords.size(); ++i) os << ",y" << i;
  os << ",error\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    os << i << ',' << (s.positive ? "positive" : "boundary");
    for (const auto& x : s.rho.dense()) os << ',' << x.str();
    for (double y : s.coords) os << ',' << y;
    os << ',' << s.error << '\n';
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << os.str();
}

void cmd_roundtrip(const Options& o, Report& r) {
  require_inputs(o, 0);
  const BallChart chart(o.k, o.n);
  const auto samples = chart_sweep(o, chart);
  summarize_sweep(o, samples, r);
  if (!o.csv.empty()) write_csv(o.csv, samples);
}

void cmd_selftest(const Options& o, Report& r) {
  require_inputs(o, 0);
  const BallChart chart(o.k, o.n);
  const auto samples = chart_sweep(o, chart);
  bool exact = true;
  bool lemmas = true;
  for (const auto& s : samples) {
    const ChamberPoint p(s.rho);
    exact = exact && assemble(split(p)).rho() == s.rho;
    if (s.positive && o.k >= 1 && o.k < o.n) {
      const MultiVector down = shrink_positive(s.rho);
      const MultiVector up = extend_positive(s.rho);
      lemmas = lemmas && classify_sign(down) == SignClass::Positive && classify_sign(up) == SignClass::Positive &&
               contains(s.rho, up) && (down.grade() == 0 || contains(down, s.rho));
    }
  }
  r.check("split_assemble_exact", exact);
  r.check("lemmas_positive", lemmas);
  summarize_sweep(o, samples, r);
}

// ---------------------------------------------------------------- convexoid

// Fiber oracle interpolating tabulated offsets multilinearly over a grid on
// Q = [0,1]×[−1,1]^{n_b−1}; normals are shared by every node.
struct GridOracle {
  int base_dim = 1;
  std::vector<int> grid;
  std::vector<Row<double>> normals;
  std::vector<std::vector<double>> offsets;  // per node, last axis fastest

  HPolytope<double> operator()(const Point& p) const {
    std::vector<double> h(normals.size(), 0.0);
    const auto axes = static_cast<std::size_t>(base_dim);
    std::vector<int> lo(axes);
    std::vector<double> frac(axes);
    for (std::size_t a = 0; a < axes; ++a) {
      const double x = a == 0 ? std::clamp(p[a], 0.0, 1.0) : (std::clamp(p[a], -1.0, 1.0) + 1.0) / 2.0;
      const int cells = grid[a] - 1;
      const double pos = x * cells;
      lo[a] = std::min(static_cast<int>(std::floor(pos)), cells - 1);
      frac[a] = pos - lo[a];
    }
    for (std::size_t corner = 0; corner < (std::size_t{1} << axes); ++corner) {
      double w = 1.0;
      std::size_t node = 0;
      for (std::size_t a = 0; a < axes; ++a) {
        const bool up = ((corner >> a) & 1U) != 0;
        w *= up ? frac[a] : 1.0 - frac[a];
        node = node * static_cast<std::size_t>(grid[a]) + static_cast<std::size_t>(lo[a] + (up ? 1 : 0));
      }
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < h.size(); ++i) h[i] += w * offsets[node][i];
    }
    HPolytope<double> out;
    out.dim = static_cast<int>(normals.front().size());
    for (std::size_t i = 0; i < normals.size(); ++i) out.constraints.push_back({normals[i], h[i]});
    return out;
  }
};

std::vector<double> number_array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw ParseError(std::string(what) + " must contain numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void cmd_convexoid_map(const Options& o, Report& r) {
  require_inputs(o, 1);
  const Json j = input(o, 0);
  for (const char* f : {"base_dim", "fiber_dim", "grid", "normals", "offsets", "points"}) {
    if (!j.is_object() || !j.contains(f)) throw ParseError(std::string("convexoid spec is missing '") + f + "'");
  }
  GridOracle oracle;
  if (!j["base_dim"].is_number_integer() || !j["fiber_dim"].is_number_integer()) {
    throw ParseError("base_dim and fiber_dim must be integers");
  }
  oracle.base_dim = j["base_dim"].get<int>();
  const int fiber_dim = j["fiber_dim"].get<int>();
  if (oracle.base_dim < 1 || fiber_dim < 0) throw ParseError("need base_dim ≥ 1 and fiber_dim ≥ 0");
  for (double g : number_array(j["grid"], "grid")) oracle.grid.push_back(static_cast<int>(g));
  if (static_cast<int>(oracle.grid.size()) != oracle.base_dim) throw ParseError("grid needs one size per base axis");
  std::size_t nodes = 1;
  for (int g : oracle.grid) {
    if (g < 2) throw ParseError("each grid axis needs at least 2 nodes");
    nodes *= static_cast<std::size_t>(g);
  }
  if (!j["normals"].is_array() || j["normals"].empty()) throw ParseError("normals must be a nonempty array");
  for (const auto& n : j["normals"]) {
    oracle.normals.push_back(number_array(n, "normal"));
    if (static_cast<int>(oracle.normals.back().size()) != fiber_dim) throw ParseError("normal has the wrong length");
  }
  if (!j["offsets"].is_array() || j["offsets"].size() != nodes) throw ParseError("offsets need one row per grid node");
  for (const auto& row : j["offsets"]) {
    oracle.offsets.push_back(number_array(row, "offsets"));
    if (oracle.offsets.back().size() != oracle.normals.size()) throw ParseError("offset row has the wrong length");
  }
  std::vector<Point> points;
  if (!j["points"].is_array()) throw ParseError("points must be an array");
  for (const auto& p : j["points"]) {
    points.push_back(number_array(p, "point"));
    if (static_cast<int>(points.back().size()) != oracle.base_dim + fiber_dim) {
      throw ParseError("point has the wrong dimension");
    }
  }
  const Convexoid body(ConvexoidSpec{oracle.base_dim, fiber_dim, oracle});
  for (const auto& p : points) {
    if (!body.contains(p)) throw DomainError("point is not in the convexoid");
  }
  std::vector<Point> mapped(points.size());
  std::vector<double> errors(points.size());
  parallel_for(static_cast<int>(points.size()), o.jobs, [&](int i) {
    const auto u = static_cast<std::size_t>(i);
    mapped[u] = body.to_half_ball(points[u]);
    errors[u] = distance(body.from_half_ball(mapped[u]), points[u]);
  });
  double worst = 0.0;
  bool in_ball = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    worst = std::max(worst, errors[i]);
    in_ball = in_ball && norm(mapped[i]) <= 1.0 + 1e-9 && mapped[i][0] >= -1e-9;
  }
  r.error(worst);
  r.check("in_half_ball", in_ball);
  r.check("roundtrip", worst <= o.tol);
  r.result(Json{{"mapped", mapped}, {"roundtrip_max_error", worst}});
}

using Handler = void (*)(const Options&, Report&);

struct Command {
  const char* name;
  Handler handler;
  const char* help;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> table{
      {"wedge", cmd_wedge, "wedge product of two or more multivectors"},
      {"plucker", cmd_plucker, "matrix rows to Plücker coordinates, or a decomposable multivector to rows"},
      {"check", cmd_check, "decomposability, sign class and normalization of a multivector"},
      {"shrink", cmd_shrink, "nonnegative (or --positive) (k-1)-plane inside a k-plane"},
      {"extend", cmd_extend, "nonnegative (or --positive) (k+1)-plane containing a k-plane"},
      {"split", cmd_split, "chamber point to (t, eta, omega)"},
      {"assemble", cmd_assemble, "(t, eta, omega) back to a chamber point"},
      {"chart", cmd_chart, "ball coordinates of a nonnegative normalized decomposable point"},
      {"chart-inverse", cmd_chart_inverse, "point of the closed ball back to Plücker coordinates"},
      {"roundtrip", cmd_roundtrip, "random chart sweep over G(k,n) with round-trip and injectivity checks"},
      {"convexoid-map", cmd_convexoid_map, "half-ball images of points of a gridded convexoid"},
      {"selftest", cmd_selftest, "roundtrip sweep plus exact split and lemma checks"},
  };
  return table;
}

Json parameters(const std::string& command, const Options& o) {
  Json p = Json::object();
  if (command == "roundtrip" || command == "selftest") {
    p["k"] = o.k;
    p["n"] = o.n;
    p["samples"] = o.samples;
    p["seed"] = o.seed;
  }
  if (command == "shrink" || command == "extend") {
    p["positive"] = o.positive;
    p["epsilon_initial"] = o.epsilon_initial;
    p["epsilon_max_iter"] = o.epsilon_max_iter;
  }
  p["tol"] = o.tol;
  p["inputs"] = o.inputs.size();
  return p;
}

void emit(const Options& o, const Json& report, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
    return;
  }
  // write next to the target and rename, so a failure leaves no partial file
  const std::string tmp = o.out + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) throw ParseError("cannot write '" + o.out + "'");
    f << text;
  }
  std::filesystem::rename(tmp, o.out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Computations on the nonnegative Grassmannian", "grassmann"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--samples", o.samples, "number of random samples");
  app.add_option("--k", o.k, "grade k");
  app.add_option("--n", o.n, "ambient dimension n");
  app.add_option("--tol", o.tol, "tolerance for floating-point checks");
  app.add_option("--jobs", o.jobs, "worker threads for sample evaluation")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out, "write the report to this file");
  app.add_option("--csv", o.csv, "write per-sample rows of a sweep to this CSV file");
  app.add_option("--epsilon-initial", o.epsilon_initial, "first ε tried by the positive constructions");
  app.add_option("--epsilon-max-iter", o.epsilon_max_iter, "maximum number of ε values tried");
  app.add_flag("--positive", o.positive, "use the strictly positive constructions");
  app.add_flag("--timing", o.timing, "include wall time in the report");
  std::map<CLI::App*, std::string> names;
  for (const auto& [name, handler, help] : commands()) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("inputs", o.inputs, "JSON inputs: inline text, a file path, or - for stdin");
    names[sub] = name;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string command;
  Handler handler = nullptr;
  for (const auto& [sub, name] : names) {
    if (sub->parsed()) command = name;
  }
  for (const auto& c : commands()) {
    if (c.name == command) handler = c.handler;
  }

  Report report(command, parameters(command, o));
  const auto start = std::chrono::steady_clock::now();
  try {
    handler(o, report);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(o, report.to_json(o.timing ? std::optional<double>(wall) : std::nullopt), out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e) ? 2 : 1;
  }
  return report.ok() ? 0 : 1;
}

}  // namespace grassmann::cli
