// quantconvex command-line front end.
//
// Exit codes: 0 certified success, 1 internal error or failed certification,
// 2 precondition / parse error, 3 budget exhausted.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quantconvex/quantconvex.hpp"

namespace {

using qc::Certificate;
using qc::CertificateKind;
using qc::ErrorCode;
using qc::Instance;
using qc::Scalar;
namespace js = qc::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct Options {
  std::string in;
  std::string out;
  std::string cert;
  std::string epsilon;
  int dim = 0;
  std::size_t parts = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  bool exact = true;
  bool float_report = false;
  // generate
  std::string gen_kind;
  std::size_t count = 0;
  std::size_t families = 0;
  std::size_t n_prime = 0;
  // approx
  std::string body = "disk";
  std::string approx_kind = "inscribed";
  bool emit_csv = false;
  std::string grid = "1/2,1/4,1/10,1/20,1/50,1/100";
};

std::string read_file(const std::string& path) {
  if (path == "-" || path.empty()) {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream f(path, std::ios::binary);
  qc::require(f.good(), ErrorCode::precondition, "cannot open '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  qc::require(f.good(), ErrorCode::precondition, "cannot write '" + path + "'");
  f << text;
}

// Long rationals are abbreviated in the report; the certificate keeps them exact.
std::string show(const Scalar& s, const Options& o) {
  const std::string exact = s.str();
  if (!o.float_report && exact.size() <= 32) return exact;
  std::ostringstream os;
  os.precision(10);
  os << s.to_double();
  return o.float_report ? os.str() : "~" + os.str();
}

Scalar parse_epsilon(const std::string& text) {
  const Scalar e = Scalar::parse(text);
  qc::require(e.sign() > 0, ErrorCode::precondition, "--epsilon must be positive");
  return e;
}

// A bare JSON array of points is accepted as a classic Tverberg instance.
Instance points_instance(const js::Json& j) {
  js::Json wrapped = js::Json::object();
  wrapped["kind"] = "tverberg";
  qc::require(!j.empty() && j[0].is_array(), ErrorCode::parse, "/: expected a list of points");
  wrapped["dim"] = j[0].size();
  wrapped["points"] = j;
  return js::parse_instance(wrapped);
}

Instance load_instance(const Options& o, CertificateKind want) {
  const js::Json j = js::parse_text(read_file(o.in));
  Instance in = j.is_array() && want == CertificateKind::tverberg ? points_instance(j) : js::parse_instance(j);
  const bool helly_pair = (in.kind == CertificateKind::helly_volume || in.kind == CertificateKind::helly_diameter) &&
                          (want == CertificateKind::helly_volume || want == CertificateKind::helly_diameter);
  const bool ball_to_selection = in.kind == CertificateKind::steinitz_ball && want == CertificateKind::caratheodory_selection;
  qc::require(in.kind == want || helly_pair || ball_to_selection, ErrorCode::precondition,
              "instance kind " + std::string(qc::to_string(in.kind)) + " does not fit this subcommand");
  in.kind = want;
  if (!o.epsilon.empty()) in.epsilon = parse_epsilon(o.epsilon);
  if (o.parts) in.parts = o.parts;
  if (o.dim) qc::require(o.dim == in.dim, ErrorCode::dimension, "--dim does not match the instance dimension");
  return in;
}

void report_certificate(const Certificate& c, const qc::oracle::Report& r, const Options& o) {
  std::ostream& e = std::cerr;
  e << "kind: " << qc::to_string(c.kind) << "  dim: " << c.dim << '\n';
  if (!c.witness.points.empty()) e << "witness points: " << c.witness.points.size() << '\n';
  if (!c.witness.halfspaces.empty()) e << "witness half-spaces: " << c.witness.halfspaces.size() << '\n';
  if (!c.witness.parts.empty()) e << "parts: " << c.witness.parts.size() << '\n';
  const qc::Claim& k = c.claim;
  if (k.target) e << "target: " << js::render(*k.target).dump() << '\n';
  if (k.center) e << "center: " << js::render(*k.center).dump() << '\n';
  if (k.radius) e << "radius >= " << show(*k.radius, o) << '\n';
  if (k.ratio) e << "ratio: " << show(*k.ratio, o) << '\n';
  if (k.bound) e << "bound: " << show(*k.bound, o) << (k.bound_met ? (*k.bound_met ? " (met)" : " (not met)") : "") << '\n';
  e << "oracle: " << r.text();
}

int run_pipeline(const Options& o, CertificateKind want, bool classic) {
  const Instance in = load_instance(o, want);
  if (want == CertificateKind::tverberg) {
    qc::require(in.classic_tverberg() == classic, ErrorCode::precondition,
                classic ? "tverberg needs an instance with points; use quant-tverberg for sets"
                        : "quant-tverberg needs an instance with sets; use tverberg for points");
  }
  qc::SolveOptions so;
  so.seed = o.seed;
  if (o.budget) so.budget = o.budget;
  Certificate c = qc::solve(in, so);
  const qc::oracle::Report r = qc::oracle::verify(c, in);
  c.verified = r.ok;
  write_output(js::dump(js::render(c)), o.out);
  report_certificate(c, r, o);
  return r.ok ? kExitOk : kExitFail;
}

int run_certify(const Options& o) {
  qc::require(!o.cert.empty(), ErrorCode::precondition, "certify needs --cert");
  const js::Json j = js::parse_text(read_file(o.in));
  Instance in = j.is_array() ? points_instance(j) : js::parse_instance(j);
  if (o.parts) in.parts = o.parts;
  const Certificate c = js::read_certificate(read_file(o.cert));
  const qc::oracle::Report r = qc::oracle::verify(c, in);
  std::cout << r.text();
  return r.ok ? kExitOk : kExitFail;
}

int run_generate(const Options& o) {
  qc::gen::Params p;
  p.dim = o.dim ? o.dim : 2;
  p.count = o.count;
  p.parts = o.parts ? o.parts : 2;
  p.families = o.families;
  if (!o.epsilon.empty()) p.epsilon = parse_epsilon(o.epsilon);
  p.n_prime = o.n_prime;
  const Instance in = qc::gen::generate(o.gen_kind, p, o.seed);
  write_output(js::dump(js::render(in)), o.out);
  std::cerr << "generated " << *in.construction << " (seed " << o.seed << ")\n";
  return kExitOk;
}

qc::approx::Body approx_body(const Options& o) {
  if (o.body == "disk") {
    qc::require(o.dim == 0 || o.dim == 2, ErrorCode::dimension, "the disk is two-dimensional");
    return qc::Ball(qc::Point::zero(2), Scalar(1));
  }
  const int d = o.dim ? o.dim : 2;
  if (o.body == "ball") return qc::Ball(qc::Point::zero(d), Scalar(1));
  if (o.body == "cube") {
    std::vector<qc::Point> v;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      qc::Point p = qc::Point::zero(d);
      for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = (mask >> i) & 1U ? Scalar(1) : Scalar(-1);
      v.push_back(std::move(p));
    }
    return qc::VPolytope(d, std::move(v));
  }
  qc::fail(ErrorCode::precondition, "unknown body '" + o.body + "' (disk, ball, cube)");
}

js::Json render_approximation(const qc::approx::Approximation& a) {
  js::Json j = js::Json::object();
  j["kind"] = std::string(qc::approx::to_string(a.kind));
  j["dim"] = a.dim;
  j["k"] = a.k;
  j["ratio"] = js::render(a.ratio);
  j["bound"] = js::render(a.bound);
  j["minimal"] = a.minimal;
  j["vertices"] = js::Json::array();
  for (const auto& v : a.vertices) j["vertices"].push_back(js::render(v));
  if (!a.facets.empty()) {
    j["facets"] = js::Json::array();
    for (const auto& h : a.facets) j["facets"].push_back(js::render(h));
  }
  return j;
}

int run_approx(const Options& o) {
  const qc::approx::Body body = approx_body(o);
  const qc::approx::Kind kind = qc::approx::kind_from_string(o.approx_kind);
  const std::size_t budget = o.budget ? static_cast<std::size_t>(o.budget) : qc::approx::kDefaultBudget;
  if (o.emit_csv) {
    std::vector<Scalar> grid;
    std::stringstream ss(o.grid);
    for (std::string item; std::getline(ss, item, ',');) grid.push_back(parse_epsilon(item));
    write_output(qc::approx::curve_csv(body, kind, grid, budget), o.out);
    return kExitOk;
  }
  qc::require(!o.epsilon.empty(), ErrorCode::precondition, "approx needs --epsilon (or --emit-csv)");
  const auto a = qc::approx::approximate({body, kind, parse_epsilon(o.epsilon), budget});
  write_output(js::dump(render_approximation(a)), o.out);
  std::cerr << qc::approx::to_string(a.kind) << " " << o.body << ": k = " << a.k << ", ratio " << show(a.ratio, o)
            << ", bound " << show(a.bound, o) << (a.minimal ? " (minimal)" : "") << '\n';
  return kExitOk;
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::precondition:
    case ErrorCode::dimension:
    case ErrorCode::parse:
    case ErrorCode::unsupported: return kExitInput;
    case ErrorCode::budget: return kExitBudget;
    case ErrorCode::internal: return kExitFail;
  }
  return kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative Caratheodory, Helly and Tverberg witnesses with certificates"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s, bool needs_in) {
    auto* in = s->add_option("--in", o.in, "instance JSON file ('-' for stdin)");
    if (needs_in) in->required();
    s->add_option("--out", o.out, "output file (default stdout)");
    s->add_option("--epsilon", o.epsilon, "rational epsilon, e.g. 1/10");
    s->add_option("--dim", o.dim, "ambient dimension");
    s->add_option("--parts", o.parts, "number of parts m");
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--budget", o.budget, "search budget");
    auto* ex = s->add_flag("--exact", o.exact, "exact rational report values (default)");
    s->add_flag("--float", o.float_report, "report values as decimals; certificates stay exact")->excludes(ex);
  };

  struct Solve {
    const char* name;
    const char* help;
    CertificateKind kind;
    bool classic;
  };
  const std::vector<Solve> solvers{
      {"caratheodory", "rainbow selection whose hull contains the target", CertificateKind::caratheodory_selection, false},
      {"steinitz-ball", "rainbow selection containing a ball", CertificateKind::steinitz_ball, false},
      {"steinitz-volume", "rainbow selection keeping (1-eps) of the body volume", CertificateKind::steinitz_volume, false},
      {"helly-volume", "small subfamily with intersection volume within (1+eps)", CertificateKind::helly_volume, false},
      {"helly-diameter", "small subfamily with intersection diameter within (1+eps)", CertificateKind::helly_diameter, false},
      {"colorful-helly", "rainbow subfamily against the smallest family intersection", CertificateKind::colorful_helly, false},
      {"tverberg", "Tverberg partition of points", CertificateKind::tverberg, true},
      {"quant-tverberg", "Tverberg partition of sets with a common ball", CertificateKind::tverberg, false},
      {"colorful-tverberg", "colorful Tverberg partition with a common ball", CertificateKind::colorful_tverberg, false},
  };
  std::vector<std::pair<CLI::App*, const Solve*>> solve_cmds;
  for (const auto& s : solvers) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub, true);
    solve_cmds.emplace_back(sub, &s);
  }

  CLI::App* approx = app.add_subcommand("approx", "polytope approximation of a convex body");
  common(approx, false);
  approx->add_option("--body", o.body, "disk, ball or cube");
  approx->add_option("--kind", o.approx_kind, "inscribed, circumscribed, sandwich or diameter");
  approx->add_flag("--emit-csv", o.emit_csv, "write epsilon,k rows over --grid instead of one approximation");
  approx->add_option("--grid", o.grid, "comma-separated epsilons for --emit-csv");

  CLI::App* certify = app.add_subcommand("certify", "check a certificate against its instance");
  common(certify, true);
  certify->add_option("--cert", o.cert, "certificate JSON file")->required();

  CLI::App* generate = app.add_subcommand("generate", "seeded instance generation");
  common(generate, false);
  generate->add_option("kind", o.gen_kind, "colored-ball-classes, halfspace-family, tverberg-quant, tverberg-colorful")->required();
  generate->add_option("--count", o.count, "classes or half-spaces per family");
  generate->add_option("--families", o.families, "halfspace-family: number of families (colorful)");
  generate->add_option("--n-prime", o.n_prime, "Tverberg kinds with epsilon: sandwich vertex count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    for (const auto& [sub, s] : solve_cmds) {
      if (sub->parsed()) return run_pipeline(o, s->kind, s->classic);
    }
    if (approx->parsed()) return run_approx(o);
    if (certify->parsed()) return run_certify(o);
    if (generate->parsed()) return run_generate(o);
  } catch (const qc::Error& e) {
    std::cerr << "error (" << qc::to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error (internal): " << e.what() << '\n';
    return kExitFail;
  }
  return kExitFail;
}
