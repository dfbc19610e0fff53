// Command-line harness: single integrations, tolerance sweeps over the test
// suite, breadth-first vs sequential comparisons, and static SVG plots.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bfcub/driver.hpp"
#include "bfcub/integrands.hpp"
#include "bfcub/sequential.hpp"

namespace {

using bfcub::Status;

constexpr const char* kCsvHeader =
    "integrand_id,dim,tau_rel,estimate,errorest,reference_value,true_rel_err,"
    "claimed_rel_err,status,iterations,regions_generated,eval_count,wall_ms";

struct BenchRecord {
  std::string id;
  int dim = 0;
  double tau_rel = 0.0;
  double estimate = 0.0;
  double errorest = 0.0;
  double reference_value = 0.0;
  double true_rel_err = 0.0;
  double claimed_rel_err = 0.0;
  std::string status;
  int iterations = 0;
  long long regions_generated = 0;
  long long eval_count = 0;
  double wall_ms = 0.0;
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const BenchRecord& r) {
  std::ostringstream os;
  os << r.id << ',' << r.dim << ',' << fmt_double(r.tau_rel) << ','
     << fmt_double(r.estimate) << ',' << fmt_double(r.errorest) << ','
     << fmt_double(r.reference_value) << ',' << fmt_double(r.true_rel_err)
     << ',' << fmt_double(r.claimed_rel_err) << ',' << r.status << ','
     << r.iterations << ',' << r.regions_generated << ',' << r.eval_count
     << ',' << fmt_double(r.wall_ms);
  return os.str();
}

struct RunOptions {
  double tau_abs = 1e-20;
  long long max_regions = 1ll << 22;
  int it_max = 100;
  int threads = 0;
  bool force_no_rel_filter = false;
};

BenchRecord run_breadth_first(const bfcub::IntegrandSpec& spec, double tau_rel,
                              const RunOptions& opt) {
  bfcub::Config cfg;
  cfg.tau_rel = tau_rel;
  cfg.tau_abs = opt.tau_abs;
  cfg.max_regions = opt.max_regions;
  cfg.it_max = opt.it_max;
  cfg.threads = opt.threads;
  cfg.rel_filtering_enabled = !(opt.force_no_rel_filter ||
                                spec.sign == bfcub::SignProfile::Oscillatory);
  const auto bounds = bfcub::Bounds::unit_cube(spec.dim);

  const auto t0 = std::chrono::steady_clock::now();
  const auto res = bfcub::integrate(spec.callable, bounds, cfg);
  const auto t1 = std::chrono::steady_clock::now();

  BenchRecord r;
  r.id = spec.id;
  r.dim = spec.dim;
  r.tau_rel = tau_rel;
  r.estimate = res.estimate;
  r.errorest = res.errorest;
  r.reference_value = spec.reference_value;
  r.true_rel_err = std::fabs(res.estimate - spec.reference_value) /
                   std::fabs(spec.reference_value);
  r.claimed_rel_err = res.errorest / std::fabs(res.estimate);
  r.status = bfcub::to_string(res.status);
  r.iterations = res.iterations;
  r.regions_generated = res.regions_generated;
  r.eval_count = res.eval_count;
  r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return r;
}

BenchRecord run_sequential(const bfcub::IntegrandSpec& spec, double tau_rel,
                           const RunOptions& opt, long long max_evals) {
  const auto bounds = bfcub::Bounds::unit_cube(spec.dim);
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = bfcub::integrate_sequential(spec.callable, bounds, tau_rel,
                                               opt.tau_abs, max_evals);
  const auto t1 = std::chrono::steady_clock::now();

  BenchRecord r;
  r.id = spec.id;
  r.dim = spec.dim;
  r.tau_rel = tau_rel;
  r.estimate = res.estimate;
  r.errorest = res.errorest;
  r.reference_value = spec.reference_value;
  r.true_rel_err = std::fabs(res.estimate - spec.reference_value) /
                   std::fabs(spec.reference_value);
  r.claimed_rel_err = res.errorest / std::fabs(res.estimate);
  r.status = bfcub::to_string(res.status);
  r.iterations = res.iterations;
  r.regions_generated = res.regions_generated;
  r.eval_count = res.eval_count;
  r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return r;
}

// "f4:5,f6:6" -> specs; empty string -> empty list.
bool parse_subset(const std::string& subset,
                  std::vector<bfcub::IntegrandSpec>& out, std::string& err) {
  out.clear();
  if (subset.empty()) return true;
  std::stringstream ss(subset);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      err = "subset entries must look like f4:5, got '" + item + "'";
      return false;
    }
    const std::string id = item.substr(0, colon);
    const int dim = std::atoi(item.c_str() + colon + 1);
    if (!bfcub::known_integrand(id)) {
      err = "unknown integrand '" + id + "'";
      return false;
    }
    if (dim < 1 || dim > 16) {
      err = "bad dimension in '" + item + "'";
      return false;
    }
    bfcub::IntegrandSpec spec;
    spec.id = id;
    spec.dim = dim;
    spec.callable = bfcub::integrand_by_id(id);
    try {
      spec.reference_value = bfcub::reference_value(id, dim);
    } catch (const std::exception& e) {
      err = e.what();
      return false;
    }
    spec.sign = id == "f1" ? bfcub::SignProfile::Oscillatory
                           : bfcub::SignProfile::OneSigned;
    out.push_back(std::move(spec));
  }
  return true;
}

std::vector<bfcub::IntegrandSpec> headline_specs() {
  std::vector<bfcub::IntegrandSpec> v;
  for (const auto& s : bfcub::suite())
    if (s.headline) v.push_back(s);
  return v;
}

// ---- SVG plotting ----

struct PlotPoint {
  double digits;      // log10(1/tau_rel)
  double y;
  bool converged;
  std::string series; // "id:dim"
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#e377c2",
                          "#7f7f7f", "#bcbd22"};

void write_log_scatter(const std::string& path, const std::string& title,
                       const std::string& y_label,
                       const std::vector<PlotPoint>& pts, bool tau_line) {
  const double W = 760, H = 520, L = 70, R = 180, T = 40, B = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.digits);
    xmax = std::max(xmax, p.digits);
    if (p.y > 0) {
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  if (xmin > xmax) { xmin = 2; xmax = 11; }
  xmin = std::floor(xmin) - 0.5;
  xmax = std::ceil(xmax) + 0.5;
  if (ymin > ymax) { ymin = 1e-12; ymax = 1.0; }
  if (tau_line) {
    ymin = std::min(ymin, std::pow(10.0, -xmax));
    ymax = std::max(ymax, std::pow(10.0, -xmin));
  }
  double ly0 = std::floor(std::log10(ymin)) - 0.5;
  double ly1 = std::ceil(std::log10(ymax)) + 0.5;

  const auto X = [&](double d) { return L + (d - xmin) / (xmax - xmin) * (W - L - R); };
  const auto Y = [&](double v) {
    const double ly = std::log10(std::max(v, 1e-300));
    return H - B - (ly - ly0) / (ly1 - ly0) * (H - T - B);
  };

  std::ofstream os(path);
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='"
     << H << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  os << "<text x='" << W / 2 << "' y='20' text-anchor='middle' font-size='15'>"
     << title << "</text>\n";
  // axes
  os << "<line x1='" << L << "' y1='" << H - B << "' x2='" << W - R << "' y2='"
     << H - B << "' stroke='black'/>\n";
  os << "<line x1='" << L << "' y1='" << T << "' x2='" << L << "' y2='"
     << H - B << "' stroke='black'/>\n";
  for (int d = static_cast<int>(std::ceil(xmin)); d <= xmax; ++d) {
    os << "<line x1='" << X(d) << "' y1='" << H - B << "' x2='" << X(d)
       << "' y2='" << H - B + 5 << "' stroke='black'/>\n<text x='" << X(d)
       << "' y='" << H - B + 18 << "' text-anchor='middle' font-size='11'>" << d
       << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ly0)); e <= ly1; ++e) {
    os << "<line x1='" << L - 5 << "' y1='" << Y(std::pow(10.0, e)) << "' x2='"
       << L << "' y2='" << Y(std::pow(10.0, e))
       << "' stroke='black'/>\n<text x='" << L - 8 << "' y='"
       << Y(std::pow(10.0, e)) + 4
       << "' text-anchor='end' font-size='11'>1e" << e << "</text>\n";
  }
  os << "<text x='" << (L + W - R) / 2 << "' y='" << H - 12
     << "' text-anchor='middle' font-size='12'>digits of precision, "
        "log10(1/tau_rel)</text>\n";
  os << "<text x='18' y='" << (T + H - B) / 2
     << "' text-anchor='middle' font-size='12' transform='rotate(-90 18 "
     << (T + H - B) / 2 << ")'>" << y_label << "</text>\n";

  if (tau_line) {
    os << "<polyline fill='none' stroke='black' stroke-dasharray='5,4' points='";
    for (double d = xmin; d <= xmax + 1e-9; d += (xmax - xmin) / 64.0)
      os << X(d) << ',' << Y(std::pow(10.0, -d)) << ' ';
    os << "'/>\n";
  }

  std::map<std::string, int> series_color;
  for (const auto& p : pts)
    if (!series_color.count(p.series)) {
      const int idx = static_cast<int>(series_color.size());
      series_color[p.series] = idx % 10;
    }
  for (const auto& p : pts) {
    const char* color = kPalette[series_color[p.series]];
    if (p.converged) {
      os << "<circle cx='" << X(p.digits) << "' cy='" << Y(p.y)
         << "' r='4' fill='" << color << "'/>\n";
    } else {
      // non-converged runs are drawn as crosses
      const double cx = X(p.digits), cy = Y(p.y);
      os << "<path d='M" << cx - 4 << ' ' << cy - 4 << " L" << cx + 4 << ' '
         << cy + 4 << " M" << cx - 4 << ' ' << cy + 4 << " L" << cx + 4 << ' '
         << cy - 4 << "' stroke='" << color << "' stroke-width='2'/>\n";
    }
  }
  int row = 0;
  for (const auto& [name, idx] : series_color) {
    const double yy = T + 16 + 18 * row++;
    os << "<circle cx='" << W - R + 18 << "' cy='" << yy << "' r='4' fill='"
       << kPalette[idx] << "'/>\n<text x='" << W - R + 30 << "' y='" << yy + 4
       << "' font-size='12'>" << name << "</text>\n";
  }
  os << "</svg>\n";
}

int cmd_plot(const std::string& csv_path, const std::string& out_dir) {
  std::ifstream is(csv_path);
  if (!is) {
    std::fprintf(stderr, "plot: cannot open %s\n", csv_path.c_str());
    return 2;
  }
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    std::fprintf(stderr, "plot: %s is not a bench CSV\n", csv_path.c_str());
    return 2;
  }
  std::vector<PlotPoint> acc_pts, reg_pts;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 13) {
      std::fprintf(stderr, "plot: malformed row '%s'\n", line.c_str());
      return 2;
    }
    const std::string series = cells[0] + ":" + cells[1];
    const double tau = std::atof(cells[2].c_str());
    const double true_err = std::atof(cells[6].c_str());
    const double regions = std::atof(cells[10].c_str());
    if (!(tau > 0)) {
      std::fprintf(stderr, "plot: bad tau_rel in '%s'\n", line.c_str());
      return 2;
    }
    const bool conv = cells[8] == "converged";
    const double digits = std::log10(1.0 / tau);
    acc_pts.push_back({digits, std::max(true_err, 1e-17), conv, series});
    reg_pts.push_back({digits, std::max(regions, 1.0), conv, series});
  }
  if (acc_pts.empty()) {
    std::fprintf(stderr, "plot: no data rows in %s\n", csv_path.c_str());
    return 2;
  }
  write_log_scatter(out_dir + "/accuracy.svg",
                    "true relative error vs requested precision",
                    "true relative error", acc_pts, true);
  write_log_scatter(out_dir + "/regions.svg",
                    "generated sub-regions vs requested precision",
                    "sub-regions generated", reg_pts, false);
  std::printf("wrote %s/accuracy.svg and %s/regions.svg\n", out_dir.c_str(),
              out_dir.c_str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"breadth-first adaptive cubature over hyperrectangles"};
  app.require_subcommand(1);

  RunOptions opt;

  // integrate
  auto* c_int = app.add_subcommand("integrate", "integrate one suite function");
  std::string id;
  int dim = 0;
  double tau_rel = 1e-3;
  c_int->add_option("id", id, "integrand id (f1..f8)")->required();
  c_int->add_option("dim", dim, "dimension")->required();
  c_int->add_option("tau_rel", tau_rel, "relative error tolerance")->required();
  c_int->add_option("--tau-abs", opt.tau_abs, "absolute error tolerance");
  c_int->add_option("--max-regions", opt.max_regions, "region capacity");
  c_int->add_option("--it-max", opt.it_max, "iteration cap");
  c_int->add_option("--threads", opt.threads, "worker threads (0 = default)");
  c_int->add_flag("--no-rel-filter", opt.force_no_rel_filter,
                  "disable relative-error filtering");

  // bench
  auto* c_bench = app.add_subcommand("bench", "tolerance sweep over the suite");
  std::string subset;
  bool subset_given = false;
  int k_max = 0;
  std::string out_path = "bench.csv";
  c_bench->add_option("--subset", subset, "comma list of id:dim (default: the nine standard configurations)")
      ->each([&](const std::string&) { subset_given = true; });
  c_bench->add_option("--k-max", k_max, "tolerances tau = 1e-3 * 5^-k for k = 0..k_max")
      ->check(CLI::Range(0, 10));
  c_bench->add_option("--out", out_path, "output CSV path");
  c_bench->add_option("--tau-abs", opt.tau_abs, "absolute error tolerance");
  c_bench->add_option("--max-regions", opt.max_regions, "region capacity");
  c_bench->add_option("--it-max", opt.it_max, "iteration cap");
  c_bench->add_option("--threads", opt.threads, "worker threads");

  // compare
  auto* c_cmp = app.add_subcommand("compare",
                                   "breadth-first vs sequential at one tolerance");
  std::string cmp_subset;
  bool cmp_subset_given = false;
  double cmp_tau = 1e-3;
  std::string cmp_out = "compare.csv";
  long long max_evals = 10'000'000;
  c_cmp->add_option("--subset", cmp_subset, "comma list of id:dim")
      ->each([&](const std::string&) { cmp_subset_given = true; });
  c_cmp->add_option("--tau-rel", cmp_tau, "relative error tolerance");
  c_cmp->add_option("--out", cmp_out, "output CSV path");
  c_cmp->add_option("--max-evals", max_evals, "sequential evaluation budget");
  c_cmp->add_option("--tau-abs", opt.tau_abs, "absolute error tolerance");
  c_cmp->add_option("--max-regions", opt.max_regions, "region capacity");
  c_cmp->add_option("--it-max", opt.it_max, "iteration cap");
  c_cmp->add_option("--threads", opt.threads, "worker threads");

  // plot
  auto* c_plot = app.add_subcommand("plot", "render a bench CSV to SVG");
  std::string csv_path, out_dir = ".";
  c_plot->add_option("csv", csv_path, "bench CSV path")->required();
  c_plot->add_option("--out-dir", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? 0 : 2;
  }

  try {
    if (c_int->parsed()) {
      if (!bfcub::known_integrand(id)) {
        std::fprintf(stderr, "unknown integrand '%s'\n", id.c_str());
        return 2;
      }
      if (dim < 1 || dim > 16 || !(tau_rel > 0)) {
        std::fprintf(stderr, "bad dimension or tolerance\n");
        return 2;
      }
      std::string err;
      std::vector<bfcub::IntegrandSpec> one;
      if (!parse_subset(id + ":" + std::to_string(dim), one, err)) {
        std::fprintf(stderr, "%s\n", err.c_str());
        return 2;
      }
      const BenchRecord r = run_breadth_first(one[0], tau_rel, opt);
      std::printf("%s\n%s\n", kCsvHeader, to_csv(r).c_str());
      return r.status == "converged" && r.true_rel_err <= tau_rel ? 0 : 1;
    }

    if (c_bench->parsed()) {
      std::vector<bfcub::IntegrandSpec> specs;
      if (subset_given) {
        std::string err;
        if (!parse_subset(subset, specs, err)) {
          std::fprintf(stderr, "%s\n", err.c_str());
          return 2;
        }
      } else {
        specs = headline_specs();
      }
      std::ofstream os(out_path);
      if (!os) {
        std::fprintf(stderr, "bench: cannot write %s\n", out_path.c_str());
        return 1;
      }
      os << kCsvHeader << '\n';
      for (const auto& spec : specs)
        for (int k = 0; k <= k_max; ++k) {
          const double tau = 1e-3 * std::pow(5.0, -k);
          os << to_csv(run_breadth_first(spec, tau, opt)) << '\n';
        }
      if (!os.good()) {
        std::fprintf(stderr, "bench: write failure on %s\n", out_path.c_str());
        return 1;
      }
      return 0;
    }

    if (c_cmp->parsed()) {
      std::vector<bfcub::IntegrandSpec> specs;
      if (cmp_subset_given) {
        std::string err;
        if (!parse_subset(cmp_subset, specs, err)) {
          std::fprintf(stderr, "%s\n", err.c_str());
          return 2;
        }
      } else {
        specs = headline_specs();
      }
      std::ofstream os(cmp_out);
      if (!os) {
        std::fprintf(stderr, "compare: cannot write %s\n", cmp_out.c_str());
        return 1;
      }
      os << "engine," << kCsvHeader << ",agreement\n";
      for (const auto& spec : specs) {
        const BenchRecord a = run_breadth_first(spec, cmp_tau, opt);
        const BenchRecord b = run_sequential(spec, cmp_tau, opt, max_evals);
        const bool agree =
            std::fabs(a.estimate - b.estimate) <= a.errorest + b.errorest;
        os << "breadth_first," << to_csv(a) << ',' << (agree ? 1 : 0) << '\n';
        os << "sequential," << to_csv(b) << ',' << (agree ? 1 : 0) << '\n';
      }
      if (!os.good()) {
        std::fprintf(stderr, "compare: write failure\n");
        return 1;
      }
      return 0;
    }

    if (c_plot->parsed()) return cmd_plot(csv_path, out_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
