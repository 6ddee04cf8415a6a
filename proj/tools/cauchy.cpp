#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cauchy/cauchy.hpp"
#include "cauchy/verify.hpp"
#include "cli_io.hpp"

namespace {

using namespace cauchy;
using cauchy::cli::Json;
using cauchy::cli::UsageError;

struct Options {
  std::string fn;
  std::vector<std::string> singularities;
  std::string rect, segment, at, loop, point, value, svg;
  std::optional<double> tol;
  unsigned order = 5;
  bool json = false, oracle = false;
  std::size_t steps = 1 << 16;
  double max_diameter = 0.25, min_size = 1e-3;
  unsigned max_depth = kDefaultMaxDepth;
  std::uint64_t seed = 42;
};

// Read once, before any subcommand runs.
std::optional<double> env_tolerance() {
  const char* raw = std::getenv("CAUCHY_TOL");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const auto v = cli::parse_numbers(raw, "CAUCHY_TOL");
  if (v.size() != 1 || !(v[0] > 0.0)) throw UsageError("CAUCHY_TOL must be one positive number");
  return v[0];
}

class Runner {
 public:
  Runner(const Options& o, std::optional<double> env_tol) : o_(o) {
    if (const auto t = o.tol ? o.tol : env_tol) {
      if (!(*t > 0.0)) throw UsageError("--tol must be positive");
      cfg_.abs_tol = cfg_.rel_tol = *t;
    }
  }

  int integrate() {
    const FunctionSpec f = function();
    if (!o_.segment.empty() && !o_.rect.empty())
      throw UsageError("give at most one of --segment and --rect");
    IntegralResult r;
    if (!o_.segment.empty())
      r = segment_integral(f, cli::parse_segment(o_.segment), cfg_);
    else if (!o_.rect.empty())
      r = rectangle_integral(f, cli::parse_rectangle(o_.rect), cfg_);
    else
      r = functional_integral(f, cfg_);
    if (o_.json)
      emit(Json{{"value", cli::to_json(r.value)},
                {"k", r.partitions_used},
                {"est_error", cli::round12(r.est_error)}});
    else
      std::cout << "value " << cli::plain(r.value) << "\nk " << r.partitions_used << "\nest_error "
                << cli::num(r.est_error) << "\n";
    if (!r.converged)
      throw Error(ErrorCode::NoConvergence, "tolerance not met by k = " + std::to_string(r.partitions_used));
    return 0;
  }

  int evaluate(bool derivative) {
    const FunctionSpec f = function();
    const Complex a = cli::parse_complex(require(o_.at, "--at"), "--at");
    const Rectangle r = o_.rect.empty() ? Rectangle::square(a, 1.0) : cli::parse_rectangle(o_.rect);
    const Complex boundary = derivative ? cauchy_derivative(f, a, r, cfg_) : cauchy_value(f, a, r, cfg_);
    const Complex direct = derivative ? eval(differentiate(f), a) : f(a);
    if (o_.json)
      emit(Json{{"value", cli::to_json(boundary)}, {"direct", cli::to_json(direct)}});
    else
      std::cout << "value " << cli::plain(boundary) << "\ndirect " << cli::plain(direct) << "\n";
    return 0;
  }

  int series() {
    const FunctionSpec f = function();
    const Rectangle r = o_.rect.empty() ? Rectangle(-1.0, 1.0, -1.0, 1.0) : cli::parse_rectangle(o_.rect);
    const SeriesResult s = series_coefficients(f, o_.order, r, cfg_);
    if (o_.json) {
      Json coeffs = Json::array();
      for (Complex c : s.coeffs) coeffs.push_back(cli::to_json(c));
      emit(Json{{"coeffs", coeffs}, {"radius_hint", cli::round12(s.radius_hint)}});
    } else {
      for (std::size_t n = 0; n < s.coeffs.size(); ++n)
        std::cout << "a" << n << " " << cli::plain(s.coeffs[n]) << "\n";
      std::cout << "radius_hint " << cli::num(s.radius_hint) << "\n";
    }
    return 0;
  }

  int winding() {
    const Complex p = cli::parse_complex(require(o_.point, "--point"), "--point");
    const LoopPath loop = make_loop();
    const WindingResult w = winding_number(loop, p, cfg_);
    std::optional<long> lifted;
    if (o_.oracle) lifted = winding_number_lifted(loop, p, o_.steps);
    if (o_.json) {
      Json j{{"value", w.value},
             {"partition_size", w.partition_size},
             {"max_arc_step", cli::round12(w.max_arc_step)}};
      if (lifted) j["lifted"] = *lifted;
      emit(j);
    } else {
      std::cout << w.value << "\n";
      if (lifted) std::cout << "lifted " << *lifted << "\n";
    }
    if (lifted && *lifted != w.value)
      throw Error(ErrorCode::NoStabilization, "discrete and lifted winding numbers disagree");
    return 0;
  }

  // Finite cover of the horizontal midline of the square by quadtree squares
  // of diameter below --max-diameter.
  int cover() {
    const Rectangle r = cli::parse_rectangle(require(o_.rect, "--rect"));
    if (!(o_.max_diameter > 0.0)) throw UsageError("--max-diameter must be positive");
    const double mid = r.center().imag(), d = o_.max_diameter;
    const SquarePredicate pred{
        [d](const Rectangle& s) { return s.diameter() < d; },
        [mid](const Rectangle& s) {
          return s.im_lo() <= mid && mid <= s.im_hi() ? SetMeet::Nonempty : SetMeet::Empty;
        }};
    const auto squares = konig_finite_cover(r, pred, o_.max_depth);
    if (o_.json) {
      Json list = Json::array();
      for (const auto& s : squares) list.push_back(cli::to_json(s));
      emit(Json{{"count", squares.size()}, {"squares", list}});
    } else {
      std::cout << squares.size() << " squares\n";
      for (const auto& s : squares)
        std::cout << cli::num(s.re_lo()) << "," << cli::num(s.re_hi()) << "," << cli::num(s.im_lo())
                  << "," << cli::num(s.im_hi()) << "\n";
    }
    if (!o_.svg.empty()) {
      std::vector<cli::SvgCell> cells;
      for (const auto& s : squares) cells.push_back({s, "#9ecae1"});
      const double y = (r.im_hi() - mid) * 512.0 / r.height();
      write_svg(cli::svg_document(r, cells,
                                  "<line x1=\"0\" y1=\"" + cli::num(y) + "\" x2=\"512\" y2=\"" +
                                      cli::num(y) + "\" stroke=\"red\"/>\n"));
    }
    return 0;
  }

  int roots() {
    const FunctionSpec f = function();
    const Rectangle r = cli::parse_rectangle(require(o_.rect, "--rect"));
    const Complex p = o_.value.empty() ? Complex{} : cli::parse_complex(o_.value, "--value");
    const PreimageReport rep = locate_preimages(f, r, p, o_.min_size, cfg_);
    auto cells_json = [](const std::vector<WeightedCell>& cells) {
      Json list = Json::array();
      for (const auto& c : cells) list.push_back(Json{{"rect", cli::to_json(c.rect)}, {"winding", c.winding}});
      return list;
    };
    if (o_.json) {
      emit(Json{{"total_winding", rep.total_winding},
                {"boxes", cells_json(rep.boxes)},
                {"residual", cells_json(rep.residual)}});
    } else {
      std::cout << "total_winding " << rep.total_winding << "\n";
      for (const auto& b : rep.boxes)
        std::cout << "box " << cli::plain(b.rect.center()) << " diameter " << cli::num(b.rect.diameter())
                  << " winding " << b.winding << "\n";
      for (const auto& b : rep.residual)
        std::cout << "residual " << cli::plain(b.rect.center()) << " diameter "
                  << cli::num(b.rect.diameter()) << " winding " << b.winding << "\n";
    }
    if (!o_.svg.empty()) {
      std::vector<cli::SvgCell> cells;
      for (const auto& b : rep.boxes) cells.push_back({b.rect, b.winding > 1 ? "#08519c" : "#6baed6"});
      for (const auto& b : rep.residual) cells.push_back({b.rect, "#fb6a4a"});
      write_svg(cli::svg_document(r, cells));
    }
    return 0;
  }

  int verify() {
    const auto report = verify::run_suite(o_.seed);
    const auto det = verify::determinism(o_.seed);
    std::cout << "seed " << o_.seed << "\n" << report.text();
    std::cout << (det.passed ? "PASS " : "FAIL ") << det.id << " " << det.name << ": " << det.detail
              << "\n";
    return report.passed() && det.passed ? 0 : 1;
  }

 private:
  static const std::string& require(const std::string& v, const char* flag) {
    if (v.empty()) throw UsageError(std::string(flag) + " is required");
    return v;
  }

  FunctionSpec function() const {
    FunctionSpec f = parse(require(o_.fn, "--fn"));
    std::vector<Complex> extra;
    for (const auto& s : o_.singularities) extra.push_back(cli::parse_complex(s, "--singularity"));
    return f.with_singularities(extra);
  }

  LoopPath make_loop() const {
    if (!o_.rect.empty() && !o_.loop.empty()) throw UsageError("give one of --loop and --rect");
    if (!o_.rect.empty()) return boundary_circuit(cli::parse_rectangle(o_.rect));
    const std::string& src = require(o_.loop, "--loop or --rect");
    if (src.rfind("rect ", 0) == 0) return boundary_circuit(cli::parse_rectangle(src.substr(5)));
    const FunctionSpec g = parse(src, "t");
    return LoopPath([g](double t) { return g(Complex(t, 0.0)); });
  }

  void emit(const Json& j) const { std::cout << j.dump() << "\n"; }

  void write_svg(const std::string& doc) const {
    std::ofstream out(o_.svg);
    if (!out) throw UsageError("cannot write " + o_.svg);
    out << doc;
  }

  Options o_;
  RefinementConfig cfg_;
};

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Rectangle-contour complex analysis: integrals, Cauchy formulas, winding numbers"};
  app.require_subcommand(1);

  auto add_fn = [&](CLI::App* sub) {
    sub->add_option("--fn", o.fn, "expression in z, e.g. \"exp(z)/(z-1)\"");
    sub->add_option("--singularity", o.singularities, "extra declared singularity re,im (repeatable)");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "absolute and relative tolerance (default 1e-10, or CAUCHY_TOL)");
    sub->add_flag("--json", o.json, "emit JSON");
  };

  auto* integrate = app.add_subcommand("integrate", "boundary or segment integral of f");
  add_fn(integrate);
  add_common(integrate);
  integrate->add_option("--segment", o.segment, "a_re,a_im,b_re,b_im");
  integrate->add_option("--rect", o.rect, "re_lo,re_hi,im_lo,im_hi (default: enclosure of singularities)");

  CLI::App* value_cmds[2];
  const char* value_names[2] = {"eval", "derivative"};
  const char* value_help[2] = {"f(a) from boundary values", "f'(a) from boundary values"};
  for (int i = 0; i < 2; ++i) {
    auto* sub = value_cmds[i] = app.add_subcommand(value_names[i], value_help[i]);
    add_fn(sub);
    add_common(sub);
    sub->add_option("--at", o.at, "point re,im");
    sub->add_option("--rect", o.rect, "contour (default: square of half-side 1 around the point)");
  }

  auto* series = app.add_subcommand("series", "power series coefficients about 0");
  add_fn(series);
  add_common(series);
  series->add_option("--order", o.order, "highest coefficient index");
  series->add_option("--rect", o.rect, "contour (default: -1,1,-1,1)");

  auto* winding = app.add_subcommand("winding", "discrete winding number of a loop");
  add_common(winding);
  winding->add_option("--loop", o.loop, "expression in t on [0,1], or \"rect re_lo,re_hi,im_lo,im_hi\"");
  winding->add_option("--rect", o.rect, "use the boundary circuit of this rectangle");
  winding->add_option("--point", o.point, "point re,im");
  winding->add_flag("--oracle", o.oracle, "also run the lifting construction");
  winding->add_option("--steps", o.steps, "lifting steps for --oracle");

  auto* cover = app.add_subcommand("cover", "finite quadtree cover of the midline of a square");
  add_common(cover);
  cover->add_option("--rect", o.rect, "root square");
  cover->add_option("--max-diameter", o.max_diameter, "squares must have smaller diameter");
  cover->add_option("--max-depth", o.max_depth, "quadtree depth limit");
  cover->add_option("--svg", o.svg, "write the decomposition as SVG");

  auto* roots = app.add_subcommand("roots", "count and isolate solutions of f(z) = value");
  add_fn(roots);
  add_common(roots);
  roots->add_option("--rect", o.rect, "search rectangle");
  roots->add_option("--value", o.value, "target value re,im (default 0)");
  roots->add_option("--min-size", o.min_size, "stop subdividing at this diameter");
  roots->add_option("--svg", o.svg, "write retained cells as SVG");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--seed", o.seed, "seed for randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Runner run(o, env_tolerance());
    if (*integrate) return run.integrate();
    if (*value_cmds[0]) return run.evaluate(false);
    if (*value_cmds[1]) return run.evaluate(true);
    if (*series) return run.series();
    if (*winding) return run.winding();
    if (*cover) return run.cover();
    if (*roots) return run.roots();
    if (*verify) return run.verify();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DepthExhausted<Rectangle>& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "; witness depth "
              << e.witness().size() - 1 << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
  return 2;
}
