#include "spectraltie/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "spectraltie/discretize.hpp"
#include "spectraltie/model_spectrum.hpp"
#include "spectraltie/os_spectrum.hpp"
#include "spectraltie/parallel.hpp"
#include "spectraltie/validate.hpp"

namespace spectraltie::cli {

namespace {

using json = nlohmann::ordered_json;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::vector<std::string>> csv_records(const std::string& text, std::size_t columns) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != columns) throw DomainError("csv: expected " + std::to_string(columns) + " fields: " + line);
    out.push_back(std::move(f));
  }
  return out;
}

// Plot frame shared by both SVG renderers.
struct Frame {
  double x0 = -1.1, x1 = 1.1, y0 = -1, y1 = 0.1;
  static constexpr double kW = 640, kH = 480, kPad = 40;

  void fit(const std::vector<std::pair<double, double>>& pts) {
    if (pts.empty()) return;
    x0 = y0 = INFINITY;
    x1 = y1 = -INFINITY;
    for (auto [x, y] : pts) {
      x0 = std::min(x0, x), x1 = std::max(x1, x);
      y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    const double mx = std::max(0.05 * (x1 - x0), 1e-3), my = std::max(0.05 * (y1 - y0), 1e-3);
    x0 -= mx, x1 += mx, y0 -= my, y1 += my;
  }
  double sx(double x) const { return kPad + (x - x0) / (x1 - x0) * (kW - 2 * kPad); }
  double sy(double y) const { return kH - kPad - (y - y0) / (y1 - y0) * (kH - 2 * kPad); }

  std::string open(const std::string& title) const {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
      << kW << ' ' << kH << "\">\n<title>" << title << "</title>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // Axes through the origin when it is in view, else along the frame.
    const double ax = (x0 <= 0 && 0 <= x1) ? sx(0) : kPad, ay = (y0 <= 0 && 0 <= y1) ? sy(0) : kH - kPad;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#999\"/>\n"
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#999\"/>\n",
                  kPad, ay, kW - kPad, ay, ax, kPad, ax, kH - kPad);
    s << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\">Re [%.3g, %.3g]  Im [%.3g, %.3g]</text>\n", kPad,
                  kPad - 12, x0, x1, y0, y1);
    s << buf;
    return s.str();
  }
};

struct Config {
  std::string problem = "model";
  std::string method = "all";
  std::string format = "csv";
  std::string regime = "all";
  double reynolds = 0, alpha = 1, epsilon = 0, theta = 0.3;
  int n = 0;
  std::vector<double> window{-1.1, -5.0, 1.1, 0.1};
  std::vector<double> at;
  std::string output;
  int points = 200;

  CLI::App* active = nullptr;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ProblemParams params_of(const Config& c) {
  const bool r = c.active->count("--reynolds") > 0, e = c.active->count("--epsilon") > 0;
  if (r == e) throw UsageError("give exactly one of --reynolds (with --alpha) or --epsilon");
  try {
    return r ? ProblemParams::from_reynolds(c.reynolds, c.alpha, c.theta)
             : ProblemParams::from_epsilon(c.epsilon, c.alpha, c.theta);
  } catch (const Error& ex) {
    throw UsageError(ex.what());
  }
}

std::pair<Complex, Complex> window_of(const Config& c) {
  const auto& w = c.window;
  if (w.size() != 4 || !(w[0] < w[2]) || !(w[1] < w[3]))
    throw UsageError("--window needs re0,im0,re1,im1 with re0 < re1 and im0 < im1");
  return {Complex(w[0], w[1]), Complex(w[2], w[3])};
}

int grid_of(const Config& c) {
  if (c.n == 0) return c.problem == "model" ? 2000 : 320;
  const int min_n = c.problem == "model" ? 8 : 80;
  if (c.n < min_n) throw UsageError("--n must be at least " + std::to_string(min_n) + " for " + c.problem);
  return c.n;
}

bool inside(Complex z, Complex ll, Complex ur) {
  return z.real() >= ll.real() && z.real() <= ur.real() && z.imag() >= ll.imag() && z.imag() <= ur.imag();
}

struct Outcome {
  std::vector<Row> rows;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
  std::vector<Complex> resolved_oracle;
  bool under_resolved = false;
};

bool model_under_resolved(const ProblemParams& p, int n) { return 2.0 / (n + 1) > std::cbrt(p.epsilon) / 10; }

// Fine grid n, coarse 3n/4 (model) or 4n/5 (os). Model values are
// Richardson-extrapolated; the residual is the size of the correction, or the
// distance to the nearest coarse value when unresolved.
void run_oracle(const std::string& problem, const ProblemParams& p, int n, Complex ll, Complex ur, Outcome& o) {
  const bool model = problem == "model";
  const int nc = model ? 3 * n / 4 : 4 * n / 5;
  const auto r = parallel_map(2, [&](std::size_t i) {
    const int m = i ? n : nc;
    return model ? solve_model_fd(p, m) : solve_os_colloc(p, m);
  });
  if (model && model_under_resolved(p, n)) {
    o.under_resolved = true;
    o.warnings.push_back("oracle grid under-resolved: h = " + g17(2.0 / (n + 1)) + " > eps^{1/3}/10");
  }
  const auto out = model ? richardson_extrapolate(r[0], r[1], 1e-2) : filter_spurious(r[0], r[1], 1e-6);
  std::vector<Row> rows;
  for (std::size_t i = 0; i < out.eigenvalues.size(); ++i) {
    const Complex z = out.eigenvalues[i], zf = r[1].eigenvalues[i];
    if (!inside(z, ll, ur)) continue;
    const bool ok = out.resolved[i];
    const double res = (model && ok) ? std::abs(z - zf) : nearest_distance(r[0].eigenvalues, zf);
    rows.push_back({z.real(), z.imag(), to_string(Method::oracle), -1, res, ok});
    if (ok) o.resolved_oracle.push_back(z);
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return im_re_less({a.re, a.im}, {b.re, b.im}); });
  o.rows.insert(o.rows.end(), rows.begin(), rows.end());
}

std::vector<Complex> run_det(const std::string& problem, const ProblemParams& p, Complex ll, Complex ur,
                             const std::vector<Complex>& seeds, Outcome& o) {
  std::vector<Eigenvalue> roots;
  if (problem == "model") {
    ModelRootOptions opt;
    const auto cells = [](double len) { return std::max(3, static_cast<int>(std::lround(100 * len)) + 1); };
    opt.window = {ll, ur, cells(ur.real() - ll.real()), cells(ur.imag() - ll.imag())};
    roots = model_exact_roots(p, opt);
  } else {
    OsRootOptions opt;
    opt.window = {ll, ur, 2, 2};
    roots = os_exact_roots(p, seeds, opt);
  }
  std::vector<Complex> values;
  for (const auto& e : roots) {
    o.rows.push_back({e.value.real(), e.value.imag(), to_string(Method::exact_det), e.index, e.residual, true});
    values.push_back(e.value);
  }
  return values;
}

// Ray indices from the node down to Im = -depth.
int ray_k_max(const ProblemParams& p, double depth) {
  const int k0 = ray_k_min(p);
  if (depth <= -kNode.imag()) return k0 - 1;
  return std::max(k0 - 1, static_cast<int>(std::floor(counting_ray(Complex(0, -depth), p))));
}

void run_asym(const std::string& problem, const ProblemParams& p, Complex ll, Complex ur, Outcome& o) {
  std::vector<Eigenvalue> vals;
  auto keep = [&](const Eigenvalue& e) {
    if (inside(e.value, ll, ur)) vals.push_back(e);
  };
  if (problem == "model") {
    for (const auto& e : segment_eigenvalues(p)) keep(e);
  } else {
    const int kmax = static_cast<int>(std::ceil(os_counting(kNode, p))) + 2;
    const auto seg = os_segment_eigenvalues(p, 1, kmax);
    for (const auto& e : seg.values) {
      keep(e);
      Eigenvalue m = e;
      m.value = -std::conj(e.value);
      keep(m);
    }
    for (const auto& err : seg.errors)
      o.warnings.push_back("segment k = " + std::to_string(err.k) + ": " + err.message);
  }
  const int k0 = ray_k_min(p), k1 = ray_k_max(p, -ll.imag());
  if (k1 >= k0) {
    const auto ray = problem == "model" ? ray_eigenvalues(p, k0, k1) : os_ray_eigenvalues(p, k0, k1);
    for (const auto& e : ray.values) keep(e);
    for (const auto& err : ray.errors) o.failures.push_back("ray k = " + std::to_string(err.k) + ": " + err.message);
  }
  std::stable_sort(vals.begin(), vals.end(),
                   [](const Eigenvalue& a, const Eigenvalue& b) { return im_re_less(a.value, b.value); });
  for (const auto& e : vals)
    o.rows.push_back({e.value.real(), e.value.imag(), to_string(Method::asymptotic), e.index, e.residual, true});
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path + " for writing");
  f << text;
}

void report_warnings(const std::vector<std::string>& w, std::ostream& err) {
  for (const auto& s : w) err << "warning: " << s << '\n';
}

int finish_failures(const Config& c, const std::vector<std::string>& failures, std::ostream& err) {
  if (failures.empty()) return kExitPass;
  std::string manifest;
  for (const auto& s : failures) manifest += s + '\n';
  err << "numerical failures:\n" << manifest;
  if (!c.output.empty()) {
    std::ofstream f(c.output + ".failures.txt", std::ios::binary);
    f << manifest;
  }
  return kExitNumerical;
}

int cmd_spectrum(const Config& c, std::ostream& out, std::ostream& err) {
  const ProblemParams p = params_of(c);
  const auto [ll, ur] = window_of(c);
  const int n = grid_of(c);
  const bool all = c.method == "all";

  Outcome o;
  auto guarded = [&](const char* name, auto&& f) {
    try {
      f();
    } catch (const Error& ex) {
      o.failures.push_back(std::string(name) + ": " + ex.what());
    }
  };
  if (all || c.method == "oracle") guarded("oracle", [&] { run_oracle(c.problem, p, n, ll, ur, o); });
  if (all || c.method == "det") guarded("exact_det", [&] { run_det(c.problem, p, ll, ur, o.resolved_oracle, o); });
  if (all || c.method == "asym") guarded("asymptotic", [&] { run_asym(c.problem, p, ll, ur, o); });
  report_warnings(o.warnings, err);

  std::string text;
  if (c.format == "json")
    text = format_json(p, c.problem, o.rows, {});
  else if (c.format == "svg")
    text = svg_from_csv(format_csv(o.rows));
  else
    text = format_csv(o.rows);
  write_text(c.output, text, out);
  return finish_failures(c, o.failures, err);
}

int cmd_curves(const Config& c, std::ostream& out, std::ostream& err) {
  const ProblemParams p = params_of(c);
  if (c.points < 2) throw UsageError("--points must be at least 2");
  const auto [lo, hi] = curve_window(p);
  std::vector<CurveSample> samples;
  if (!(lo < hi)) {
    err << "warning: curve window [" << g17(lo) << ", " << g17(hi) << "] is empty at eps = " << g17(p.epsilon)
        << '\n';
  } else {
    std::vector<double> grid(c.points);
    for (int i = 0; i < c.points; ++i) grid[i] = lo + (hi - lo) * i / (c.points - 1);
    std::vector<std::string> notes;
    samples = os_curves(p, grid, &notes);
    report_warnings(notes, err);
  }
  std::string text;
  if (c.format == "json")
    text = format_json(p, "os", {}, samples);
  else if (c.format == "svg")
    text = svg_from_curves_csv(format_curves_csv(samples));
  else
    text = format_curves_csv(samples);
  write_text(c.output, text, out);
  return kExitPass;
}

int cmd_count(const Config& c, std::ostream& out, std::ostream& err) {
  const ProblemParams p = params_of(c);
  const auto [ll, ur] = window_of(c);
  std::ostringstream s;
  char buf[160];
  if (c.active->count("--at")) {
    if (c.at.size() != 2) throw UsageError("--at needs re,im");
    const Complex z(c.at[0], c.at[1]);
    const bool on_ray = z.real() == 0 && z.imag() < kNode.imag();
    double v;
    try {
      v = on_ray ? counting_ray(z, p) : (c.problem == "model" ? counting_segment(z, p) : os_counting(z, p));
    } catch (const DomainError& ex) {
      throw UsageError(ex.what());
    }
    std::snprintf(buf, sizeof buf, "%s count at (%s, %s): %.6f\n", on_ray ? "ray" : "segment", g17(z.real()).c_str(),
                  g17(z.imag()).c_str(), v);
    s << buf;
    write_text(c.output, s.str(), out);
    return kExitPass;
  }
  Outcome o;
  std::vector<Complex> roots;
  try {
    roots = run_det(c.problem, p, ll, ur, {}, o);
  } catch (const Error& ex) {
    return finish_failures(c, {std::string("exact_det: ") + ex.what()}, err);
  }
  const double depth = -ll.imag();
  const auto report = c.problem == "model" ? model_count_report(roots, p, depth) : os_count_report(roots, p, depth);
  std::snprintf(buf, sizeof buf, "%-10s %12s %8s %12s\n", "component", "predicted", "actual", "difference");
  s << buf;
  for (const auto& r : report) {
    std::snprintf(buf, sizeof buf, "%-10s %12.4f %8d %12.4f\n", r.component.c_str(), r.predicted, r.actual,
                  r.difference());
    s << buf;
  }
  std::snprintf(buf, sizeof buf, "roots in window: %zu\n", roots.size());
  s << buf;
  write_text(c.output, s.str(), out);
  return kExitPass;
}

int cmd_compare(const Config& c, std::ostream& out, std::ostream& err) {
  const ProblemParams p = params_of(c);
  auto [ll, ur] = window_of(c);
  const int n = grid_of(c);
  const bool model = c.problem == "model";
  const bool all = c.regime == "all";
  // The oracle comparison region: Im >= -3 for the model, the upper
  // Y (|Re| <= 1, Im >= -2) for the OS problem.
  const Complex oll(std::max(ll.real(), model ? -2.0 : -1.0), std::max(ll.imag(), model ? -3.0 : -2.0));
  const Complex our(std::min(ur.real(), model ? 2.0 : 1.0), std::min(ur.imag(), 0.0));
  if (!model) ll = Complex(ll.real(), std::max(ll.imag(), -3.0));

  Outcome o;
  std::vector<RegimeCheck> checks;
  try {
    if (all || c.regime == "oracle") run_oracle(c.problem, p, n, oll, our, o);
    const auto det = run_det(c.problem, p, ll, ur, o.resolved_oracle, o);
    if (all || c.regime == "ray") checks.push_back(model ? check_model_ray(p, det) : check_os_ray(p, det));
    if (all || c.regime == "segment")
      checks.push_back(model ? check_model_segment(p, det) : check_os_splitting(p, det));
    if (all || c.regime == "oracle") {
      auto r = check_oracle(o.resolved_oracle, det, model ? 1e-4 : 1e-3, oll, our);
      if (o.under_resolved) r.detail += "; oracle grid under-resolved (h > eps^{1/3}/10)";
      checks.push_back(r);
    }
  } catch (const Error& ex) {
    return finish_failures(c, {std::string("compare: ") + ex.what()}, err);
  }
  report_warnings(o.warnings, err);

  std::ostringstream s;
  bool pass = true;
  char buf[96];
  for (const auto& r : checks) {
    std::snprintf(buf, sizeof buf, "%-14s %s  worst %.3e  checked %d  ", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                  r.worst, r.checked);
    s << buf << r.detail << '\n';
    pass = pass && r.pass;
  }
  s << (pass ? "overall PASS\n" : "overall FAIL\n");
  write_text(c.output, s.str(), out);
  return pass ? kExitPass : kExitFail;
}

void add_params(CLI::App* sc, Config& c) {
  auto* r = sc->add_option("--reynolds", c.reynolds, "Reynolds number R (eps = 1/(alpha R))");
  r->excludes(sc->add_option("--epsilon", c.epsilon, "small parameter eps"));
  sc->add_option("--alpha", c.alpha, "wavenumber alpha")->capture_default_str();
  sc->add_option("--theta", c.theta, "node cutoff exponent")->capture_default_str();
}

void add_output(CLI::App* sc, Config& c, bool with_format) {
  sc->add_option("--output,-o", c.output, "output file (default stdout)");
  if (with_format)
    sc->add_option("--format", c.format, "csv, json or svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->capture_default_str();
}

void add_problem(CLI::App* sc, Config& c) {
  sc->add_option("--problem", c.problem, "model or os")->check(CLI::IsMember({"model", "os"}))->capture_default_str();
  sc->add_option("--window", c.window, "re0,im0,re1,im1")->delimiter(',')->expected(4);
}

}  // namespace

std::string format_csv(const std::vector<Row>& rows) {
  std::string s = "re,im,method,index,residual,resolved\n";
  for (const auto& r : rows)
    s += g17(r.re) + ',' + g17(r.im) + ',' + r.method + ',' + std::to_string(r.index) + ',' + g17(r.residual) + ',' +
         (r.resolved ? "1" : "0") + '\n';
  return s;
}

std::vector<Row> parse_csv(const std::string& text) {
  std::vector<Row> rows;
  for (const auto& f : csv_records(text, 6))
    rows.push_back({std::stod(f[0]), std::stod(f[1]), f[2], std::stoi(f[3]), std::stod(f[4]), f[5] == "1"});
  return rows;
}

std::string format_curves_csv(const std::vector<CurveSample>& samples) {
  std::string s = "t,gamma,re,im,side\n";
  for (const auto& c : samples)
    s += g17(c.t) + ',' + g17(c.gamma) + ',' + g17(c.lambda.real()) + ',' + g17(c.lambda.imag()) + ',' +
         to_string(c.side) + '\n';
  return s;
}

std::vector<CurveSample> parse_curves_csv(const std::string& text) {
  std::vector<CurveSample> out;
  for (const auto& f : csv_records(text, 5))
    out.push_back({std::stod(f[0]), std::stod(f[1]), Complex(std::stod(f[2]), std::stod(f[3])),
                   f[4] == "plus" ? Side::plus : Side::minus});
  return out;
}

std::string format_json(const ProblemParams& p, const std::string& problem, const std::vector<Row>& rows,
                        const std::vector<CurveSample>& curves) {
  json j;
  j["params"] = {{"problem", problem},
                 {"epsilon", p.epsilon},
                 {"alpha", p.alpha},
                 {"reynolds", p.reynolds},
                 {"theta", p.theta}};
  j["eigenvalues"] = json::array();
  for (const auto& r : rows)
    j["eigenvalues"].push_back({{"re", r.re},
                                {"im", r.im},
                                {"method", r.method},
                                {"index", r.index},
                                {"residual", r.residual},
                                {"resolved", r.resolved}});
  j["curves"] = json::array();
  for (const auto& c : curves)
    j["curves"].push_back({{"t", c.t},
                           {"gamma", c.gamma},
                           {"re", c.lambda.real()},
                           {"im", c.lambda.imag()},
                           {"side", to_string(c.side)}});
  return j.dump(2) + '\n';
}

std::string svg_from_csv(const std::string& csv) {
  const auto rows = parse_csv(csv);
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) pts.emplace_back(r.re, r.im);
  Frame fr;
  fr.fit(pts);
  std::ostringstream s;
  s << fr.open("eigenvalues");
  char buf[256];
  for (const auto& r : rows) {
    const double x = fr.sx(r.re), y = fr.sy(r.im);
    if (r.method == "oracle")
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"none\" stroke=\"%s\"/>\n", x, y,
                    r.resolved ? "#1f77b4" : "#bbbbbb");
    else if (r.method == "exact_det")
      std::snprintf(buf, sizeof buf,
                    "<path d=\"M%.2f %.2fh6M%.2f %.2fv6\" stroke=\"#d62728\" stroke-width=\"1.2\"/>\n", x - 3, y,
                    x, y - 3);
    else
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%.2f\" y=\"%.2f\" width=\"5\" height=\"5\" fill=\"none\" stroke=\"#2ca02c\"/>\n",
                    x - 2.5, y - 2.5);
    s << buf;
  }
  s << "<text x=\"40\" y=\"470\" font-size=\"11\">circle: oracle, cross: exact_det, square: asymptotic</text>\n";
  s << "</svg>\n";
  return s.str();
}

std::string svg_from_curves_csv(const std::string& csv) {
  const auto samples = parse_curves_csv(csv);
  std::vector<std::pair<double, double>> pts;
  for (const auto& c : samples) pts.emplace_back(c.lambda.real(), c.lambda.imag());
  Frame fr;
  fr.fit(pts);
  std::ostringstream s;
  s << fr.open("limit curves");
  for (Side side : {Side::plus, Side::minus}) {
    std::string d;
    char buf[64];
    for (const auto& c : samples) {
      if (c.side != side) continue;
      std::snprintf(buf, sizeof buf, "%s%.2f %.2f", d.empty() ? "M" : " L", fr.sx(c.lambda.real()),
                    fr.sy(c.lambda.imag()));
      d += buf;
    }
    if (d.empty()) continue;
    s << "<path d=\"" << d << "\" fill=\"none\" stroke=\"" << (side == Side::plus ? "#d62728" : "#1f77b4")
      << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of the model and Orr-Sommerfeld problems", "spectraltie"};
  app.require_subcommand(1);
  Config c;

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalue table from the chosen routes");
  add_params(spectrum, c);
  add_problem(spectrum, c);
  spectrum->add_option("--method", c.method, "oracle, det, asym or all")
      ->check(CLI::IsMember({"oracle", "det", "asym", "all"}))
      ->capture_default_str();
  spectrum->add_option("--n", c.n, "fine oracle grid (default 2000 model, 320 os)");
  add_output(spectrum, c, true);

  auto* curves = app.add_subcommand("curves", "the two limit strands along the left segment");
  add_params(curves, c);
  curves->add_option("--points", c.points, "samples of t")->capture_default_str();
  add_output(curves, c, true);

  auto* count = app.add_subcommand("count", "predicted and actual root counts per tie component");
  add_params(count, c);
  add_problem(count, c);
  count->add_option("--at", c.at, "evaluate the counting function at re,im only")
                 ->delimiter(',')
                 ->expected(2);
  add_output(count, c, false);

  auto* compare = app.add_subcommand("compare", "cross-route checks; exit 0 iff all pass");
  add_params(compare, c);
  add_problem(compare, c);
  compare->add_option("--regime", c.regime, "ray, segment, oracle or all")
      ->check(CLI::IsMember({"ray", "segment", "oracle", "all"}))
      ->capture_default_str();
  compare->add_option("--n", c.n, "fine oracle grid (default 2000 model, 320 os)");
  add_output(compare, c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  for (auto* sc : {spectrum, curves, count, compare})
    if (*sc) c.active = sc;
  try {
    if (*spectrum) return cmd_spectrum(c, out, err);
    if (*curves) return cmd_curves(c, out, err);
    if (*count) return cmd_count(c, out, err);
    return cmd_compare(c, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace spectraltie::cli
