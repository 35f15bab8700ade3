#include "tropnet/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "tropnet/hoffman.hpp"
#include "tropnet/io.hpp"
#include "tropnet/parallel.hpp"
#include "tropnet/regions.hpp"
#include "tropnet/rng.hpp"
#include "tropnet/sampling.hpp"
#include "tropnet/tropicalize.hpp"

namespace tropnet::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

using io::Json;
namespace fs = std::filesystem;

struct Globals {
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::size_t subset_cap = kDefaultSubsetCap;
  std::string out = ".";
};

// Collects output paths and config for the manifest.
struct Run {
  const Globals& g;
  std::string command;
  Json config = Json::object();
  std::vector<std::string> outputs;

  std::string path(const std::string& name) const { return (fs::path(g.out) / name).string(); }

  void write(const std::string& name, const std::string& content) {
    const std::string p = path(name);
    io::write_file(p, content);
    outputs.push_back(p);
  }
  void write_json(const std::string& name, const Json& j) { write(name, j.dump(2) + "\n"); }
};

void write_manifest(Run& run, const std::vector<std::string>& argv, double seconds) {
  Json m;
  m["command"] = run.command;
  m["argv"] = argv;
  m["config"] = run.config;
  m["seed"] = run.g.seed;
  m["threads"] = thread_count();
  m["subset_cap"] = run.g.subset_cap;
  m["version"] = kVersion;
  m["timing"] = {{"elapsed_seconds", seconds}};
  m["outputs"] = run.outputs;
  io::write_file(run.path("manifest.json"), m.dump(2) + "\n");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string arch_string(const std::vector<std::size_t>& arch) {
  std::string s = "[";
  for (std::size_t i = 0; i < arch.size(); ++i) s += (i ? "," : "") + std::to_string(arch[i]);
  return s + "]";
}

std::vector<std::vector<std::size_t>> parse_archs(const std::string& text) {
  std::vector<std::vector<std::size_t>> archs;
  const std::regex list(R"(\[([^\]]*)\])");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), list); it != std::sregex_iterator(); ++it) {
    std::vector<std::size_t> arch;
    std::stringstream ss((*it)[1].str());
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        const long v = std::stol(tok);
        if (v <= 0) throw std::invalid_argument("width");
        arch.push_back(static_cast<std::size_t>(v));
      } catch (const std::exception&) {
        throw std::invalid_argument("--archs: bad width '" + tok + "' in " + (*it)[0].str());
      }
    }
    if (arch.size() < 2) throw std::invalid_argument("--archs: need at least two widths in " + (*it)[0].str());
    archs.push_back(std::move(arch));
  }
  if (archs.empty()) throw std::invalid_argument("--archs: expected lists like \"[6,2,1] [5,3,1]\"");
  return archs;
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TropicalRationalMap scalar_map(const Network& net, const std::string& path) {
  if (net.output_dim() != 1) {
    throw std::invalid_argument(path + ": network has " + std::to_string(net.output_dim()) +
                                " outputs; this command needs a scalar output");
  }
  return tropicalize(net).front();
}

// A Hoffman input: matrix, polynomial, rational map, or model.
using HoffmanInput = std::variant<ExactMatrix, TropicalPolynomial, TropicalRationalMap>;

HoffmanInput load_hoffman_input(const std::string& path) {
  const std::string text = io::read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || (text[first] != '{' && text[first] != '[')) {
    return io::polynomial_from_text(text, path);
  }
  const Json j = io::parse_json(text, path);
  if (j.is_object()) {
    if (j.contains("layers")) return scalar_map(io::network_from_json(j, path), path);
    if (j.contains("numerator")) return io::rational_map_from_json(j, path);
    if (j.contains("monomials")) return io::polynomial_from_json(j, path);
    if (j.contains("matrix")) return io::matrix_from_json(j, path);
    throw io::ParseError(path, "", "unrecognised input; expected a model, polynomial, rational map or matrix");
  }
  if (!j.empty() && j[0].is_object()) return io::polynomial_from_json(j, path);
  try {
    return io::matrix_from_json(j, "");
  } catch (const io::ParseError& e) {
    throw io::ParseError(path, "", std::string(e.what()).substr(2));
  }
}

TropicalRationalMap load_rational_input(const std::string& path) {
  HoffmanInput in = load_hoffman_input(path);
  if (auto* f = std::get_if<TropicalRationalMap>(&in)) return *f;
  if (auto* p = std::get_if<TropicalPolynomial>(&in)) {
    return TropicalRationalMap(*p, TropicalPolynomial::constant(p->nvars(), 0));
  }
  throw std::invalid_argument(path + ": expected a model, polynomial or rational map, not a matrix");
}

RationalVector load_point(const std::string& path) {
  const Json j = io::parse_json(io::read_file(path), path);
  try {
    return io::vector_from_json(j.is_object() && j.contains("x") ? j["x"] : j, "x");
  } catch (const io::ParseError& e) {
    throw io::ParseError(path, "", std::string(e.what()).substr(2));
  }
}

Json opt_rational(const std::optional<Rational>& q) { return q ? io::rational_to_json(*q) : Json(nullptr); }

// ---- subcommands -------------------------------------------------------

struct TropicalizeOpts {
  std::string model;
  bool prune = false;
};

void cmd_tropicalize(Run& run, const TropicalizeOpts& o) {
  const Network net = io::load_network(o.model);
  run.config = {{"model", o.model}, {"prune", o.prune}};
  const Tropicalization t = tropicalize_with_counts(net);
  Json outs = Json::array();
  for (std::size_t k = 0; k < t.maps.size(); ++k) {
    Json entry;
    const auto& f = t.maps[k];
    entry["native_counts"] = {f.numerator.size(), f.denominator.size()};
    entry["formal_terms"] = {t.formal_terms[k].first, t.formal_terms[k].second};
    if (o.prune) {
      const TropicalRationalMap pruned(prune(f.numerator), prune(f.denominator));
      entry["pruned_counts"] = {pruned.numerator.size(), pruned.denominator.size()};
      entry["map"] = io::rational_map_to_json(pruned);
      std::cout << "output " << k << ": native " << f.numerator.size() << "/" << f.denominator.size()
                << " monomials, pruned " << pruned.numerator.size() << "/" << pruned.denominator.size()
                << "\n";
    } else {
      entry["map"] = io::rational_map_to_json(f);
      std::cout << "output " << k << ": native " << f.numerator.size() << "/" << f.denominator.size()
                << " monomials\n";
    }
    outs.push_back(entry);
  }
  run.write_json("tropical.json", {{"outputs", outs}});
}

void report_regions(Run& run, const std::vector<LinearRegion>& regions) {
  run.write_json("regions.json", {{"count", regions.size()}, {"regions", io::regions_to_json(regions)}});
  std::cout << regions.size() << " linear regions\n";
}

void cmd_regions(Run& run, const std::string& model) {
  run.config = {{"model", model}};
  report_regions(run, network_regions(io::load_network(model)));
}

void cmd_regions_trop(Run& run, const std::string& num, const std::string& den) {
  run.config = {{"numerator", num}, {"denominator", den.empty() ? Json(nullptr) : Json(den)}};
  const TropicalPolynomial p = io::load_polynomial(num);
  const TropicalPolynomial q = den.empty() ? TropicalPolynomial::constant(p.nvars(), 0) : io::load_polynomial(den);
  report_regions(run, rational_regions(TropicalRationalMap(p, q)));
}

void cmd_prune(Run& run, const std::string& poly) {
  run.config = {{"polynomial", poly}};
  const TropicalPolynomial f = io::load_polynomial(poly);
  const auto drop = redundant_monomials(f);
  const TropicalPolynomial g = prune(f);
  Json removed = Json::array();
  for (std::size_t i : drop) {
    removed.push_back({{"index", i}, {"coeff", io::rational_to_json(f[i].coeff)}, {"exps", io::vector_to_json(f[i].exps)}});
  }
  run.write_json("pruned.json", {{"polynomial", io::polynomial_to_json(g)}, {"removed", removed}});
  run.write("pruned.txt", io::polynomial_to_text(g));
  std::cout << f.size() << " monomials, " << drop.size() << " redundant, " << g.size() << " kept\n";
}

struct HoffmanOpts {
  std::string input;
  bool exact = false;
  std::optional<std::size_t> lower;
  bool upper = false;
  std::optional<std::size_t> upper_samples;
  std::string at;
  std::size_t samples = 10;
};

void cmd_hoffman(Run& run, const HoffmanOpts& o) {
  const HoffmanInput in = load_hoffman_input(o.input);
  const bool all = !o.exact && !o.lower && !o.upper && !o.upper_samples;
  const std::size_t B = o.lower.value_or(o.samples);
  run.config = {{"input", o.input}, {"exact", o.exact || all}, {"lower_samples", B},
                {"upper", o.upper || all || o.upper_samples.has_value()}};
  Json report = {{"H_exact", nullptr}, {"H_lower", nullptr}, {"H_upper", nullptr},
                 {"witness_subset", Json::array()}, {"radius_bound_at", nullptr}};

  if (const auto* A = std::get_if<ExactMatrix>(&in)) {
    std::optional<HoffmanResult> ex;
    if (o.exact || (all && A->rows() <= run.g.subset_cap)) ex = hoffman_exact(*A, run.g.subset_cap);
    if (ex) {
      report["H_exact"] = io::rational_to_json(ex->value);
      report["witness_subset"] = ex->witness_subset;
    }
    if (o.lower || all) {
      const HoffmanResult lo = hoffman_lower(*A, B, run.g.seed);
      report["H_lower"] = io::rational_to_json(lo.value);
      if (!ex) report["witness_subset"] = lo.witness_subset;
    }
    if (o.upper || o.upper_samples || all) {
      UpperMode mode;
      if (o.upper_samples || (all && A->rows() > run.g.subset_cap)) {
        mode = {false, o.upper_samples.value_or(B), run.g.seed};
      }
      report["H_upper"] = hoffman_upper(*A, mode, run.g.subset_cap).approx;
    }
    if (!o.at.empty()) throw std::invalid_argument("--at needs a polynomial, rational map or model input");
  } else {
    const TropicalRationalMap f = std::holds_alternative<TropicalRationalMap>(in)
                                      ? std::get<TropicalRationalMap>(in)
                                      : TropicalRationalMap(std::get<TropicalPolynomial>(in),
                                                            TropicalPolynomial::constant(std::get<TropicalPolynomial>(in).nvars(), 0));
    TropicalHoffmanOptions opt{run.g.subset_cap, B, run.g.seed};
    const TropicalHoffman h = std::holds_alternative<TropicalPolynomial>(in)
                                  ? hoffman_tropical(std::get<TropicalPolynomial>(in), opt)
                                  : hoffman_tropical(f, opt);
    if (o.exact && !h.exact) {
      throw std::length_error("difference matrices exceed the subset cap " + std::to_string(run.g.subset_cap) +
                              "; raise --subset-cap or use --lower/--upper");
    }
    if (h.exact && (o.exact || all)) {
      report["H_exact"] = io::rational_to_json(h.exact->value);
      report["witness_subset"] = h.exact->witness_subset;
    } else {
      report["witness_subset"] = h.lower.witness_subset;
    }
    if (o.lower || all) report["H_lower"] = io::rational_to_json(h.lower.value);
    if (o.upper || o.upper_samples || all) report["H_upper"] = h.upper.approx;
    report["witness_terms"] = {h.witness_terms.first, h.witness_terms.second};
    if (!o.at.empty()) {
      const RationalVector x = load_point(o.at);
      report["radius_bound_at"] = {{"x", io::vector_to_json(x)}, {"bound", io::rational_to_json(radius_bound(f, x, h))}};
    }
  }
  run.write_json("hoffman.json", report);
  std::cout << report.dump(2) << "\n";
}

void cmd_radius(Run& run, const std::string& input, const std::string& at, std::size_t samples) {
  run.config = {{"input", input}, {"at", at}};
  const TropicalRationalMap f = load_rational_input(input);
  const RationalVector x = load_point(at);
  const TropicalHoffman h = hoffman_tropical(f, {run.g.subset_cap, samples, run.g.seed});
  const Rational H = h.exact ? h.exact->value : h.upper.value;
  const Json report = {{"x", io::vector_to_json(x)},
                       {"bound", io::rational_to_json(radius_bound(f, x, H))},
                       {"H", io::rational_to_json(H)},
                       {"H_kind", h.exact ? "exact" : "upper"}};
  run.write_json("radius.json", report);
  std::cout << report.dump(2) << "\n";
}

struct SampleOpts {
  std::string model;
  double R = 5.0;
  std::size_t N = 1000;
  bool fundamental = false;
  bool grid = false;
  bool timing = false;
};

void cmd_sample(Run& run, const SampleOpts& o) {
  const Network net = io::load_network(o.model);
  SampleConfig cfg;
  cfg.R = o.R;
  cfg.N = o.N;
  cfg.seed = run.g.seed;
  cfg.scheme = o.grid ? SampleScheme::kGrid : SampleScheme::kUniform;
  run.config = {{"model", o.model}, {"R", o.R}, {"N", o.N}, {"scheme", to_string(cfg.scheme)},
                {"fundamental", o.fundamental}};
  const RegionEstimate est = o.fundamental ? estimate_regions_fundamental(net, cfg) : estimate_regions(net, cfg);
  run.config["elapsed_seconds"] = est.elapsed;
  std::string csv = "seed,architecture,R,N,scheme,count,elapsed_seconds\n";
  csv += std::to_string(cfg.seed) + ",\"" + arch_string(net.architecture()) + "\"," + format_double(o.R) + "," +
         std::to_string(o.N) + "," + to_string(cfg.scheme) + (o.fundamental ? "+fundamental" : "") + "," +
         format_double(est.count) + "," + (o.timing ? format_double(est.elapsed) : "NA") + "\n";
  run.write("sample.csv", csv);
  std::cout << csv;
}

struct ExperimentOpts {
  std::string name;
  std::string archs;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> N;
  std::optional<double> R;
  bool linear_output = false;
  bool no_bias = false;
  std::size_t input_dim = 2;
  std::size_t kmin = 2;
  std::optional<std::size_t> kmax;
  std::size_t B = 10;
  std::string configs = "[2,3,6] [3,4,9] [5,4,8] [7,3,12]";
  bool timing = false;
};

std::string timing_cell(bool timing, double seconds) { return timing ? format_double(seconds) : "NA"; }

void exp_symbolic_vs_numerical(Run& run, const ExperimentOpts& o) {
  const auto archs = parse_archs(o.archs.empty() ? "[2,6,1] [3,5,1] [4,4,1] [5,3,1] [6,2,1]" : o.archs);
  const std::size_t trials = o.trials.value_or(25);
  SampleConfig cfg;
  cfg.N = o.N.value_or(1000);
  cfg.R = o.R.value_or(5.0);
  std::string csv = "architecture,trial,seed,symbolic,numerical,symbolic_seconds,numerical_seconds\n";
  Json summary = Json::array();
  for (const auto& arch : archs) {
    std::vector<double> sym(trials), num(trials), tsym(trials), tnum(trials);
    parallel_for(trials, [&](std::size_t t) {
      const Network net = random_network(arch, run.g.seed + t, !o.linear_output, !o.no_bias);
      const auto t0 = std::chrono::steady_clock::now();
      sym[t] = static_cast<double>(network_regions(net).size());
      tsym[t] = seconds_since(t0);
      SampleConfig c = cfg;
      c.seed = run.g.seed + t;
      const RegionEstimate est = estimate_regions(net, c);
      num[t] = est.count;
      tnum[t] = est.elapsed;
    });
    for (std::size_t t = 0; t < trials; ++t) {
      csv += "\"" + arch_string(arch) + "\"," + std::to_string(t) + "," + std::to_string(run.g.seed + t) + "," +
             format_double(sym[t]) + "," + format_double(num[t]) + "," + timing_cell(o.timing, tsym[t]) + "," +
             timing_cell(o.timing, tnum[t]) + "\n";
    }
    Json row = {{"architecture", arch}, {"symbolic_mean", mean(sym)}, {"numerical_mean", mean(num)}};
    if (o.timing) {
      row["symbolic_mean_seconds"] = mean(tsym);
      row["numerical_mean_seconds"] = mean(tnum);
    }
    summary.push_back(row);
    std::cout << arch_string(arch) << ": symbolic mean " << mean(sym) << ", numerical mean " << mean(num) << "\n";
  }
  run.config = {{"archs", o.archs}, {"trials", trials}, {"N", cfg.N}, {"R", cfg.R},
                {"final_activation", !o.linear_output}, {"bias", !o.no_bias}};
  run.write("table_symbolic_vs_numerical.csv", csv);
  run.write_json("table_symbolic_vs_numerical.json", summary);
}

void exp_width_depth(Run& run, const ExperimentOpts& o) {
  const std::size_t trials = o.trials.value_or(10);
  const std::size_t kmax = o.kmax.value_or(7);
  const std::size_t d = o.input_dim;
  std::vector<std::vector<std::size_t>> archs;
  for (std::size_t k = o.kmin; k <= kmax; ++k) archs.push_back({d, k, 1});
  for (std::size_t k = o.kmin; k <= kmax; ++k) archs.push_back({d, 2, k, 1});
  std::string csv = "architecture,depth,k,trial,seed,numerator,denominator,total\n";
  Json summary = Json::array();
  for (const auto& arch : archs) {
    std::vector<std::size_t> num(trials), den(trials);
    parallel_for(trials, [&](std::size_t t) {
      const auto f = tropicalize(random_network(arch, run.g.seed + t, !o.linear_output, !o.no_bias)).front();
      num[t] = f.numerator.size();
      den[t] = f.denominator.size();
    });
    std::vector<double> totals;
    for (std::size_t t = 0; t < trials; ++t) {
      totals.push_back(static_cast<double>(num[t] + den[t]));
      csv += "\"" + arch_string(arch) + "\"," + std::to_string(arch.size() - 2) + "," +
             std::to_string(arch[arch.size() - 2]) + "," + std::to_string(t) + "," + std::to_string(run.g.seed + t) +
             "," + std::to_string(num[t]) + "," + std::to_string(den[t]) + "," + std::to_string(num[t] + den[t]) + "\n";
    }
    summary.push_back({{"architecture", arch}, {"mean_monomials", mean(totals)}});
    std::cout << arch_string(arch) << ": mean monomials " << mean(totals) << "\n";
  }
  run.config = {{"trials", trials}, {"input_dim", d}, {"kmin", o.kmin}, {"kmax", kmax},
                {"final_activation", !o.linear_output}};
  run.write("width_depth.csv", csv);
  run.write_json("width_depth.json", summary);
}

void exp_pruning_rate(Run& run, const ExperimentOpts& o) {
  const std::size_t trials = o.trials.value_or(10);
  const std::size_t kmax = o.kmax.value_or(7);
  std::string csv = "architecture,width,trial,seed,native,pruned,rate\n";
  Json summary = Json::array();
  for (std::size_t w = o.kmin; w <= kmax; ++w) {
    const std::vector<std::size_t> arch{o.input_dim, w, 1};
    std::vector<std::size_t> native(trials), kept(trials);
    parallel_for(trials, [&](std::size_t t) {
      const auto f = tropicalize(random_network(arch, run.g.seed + t, !o.linear_output, !o.no_bias)).front();
      native[t] = f.numerator.size() + f.denominator.size();
      const auto [a, b] = monomial_complexity(f);
      kept[t] = a + b;
    });
    std::vector<double> rates;
    for (std::size_t t = 0; t < trials; ++t) {
      const double rate = 1.0 - static_cast<double>(kept[t]) / static_cast<double>(native[t]);
      rates.push_back(rate);
      csv += "\"" + arch_string(arch) + "\"," + std::to_string(w) + "," + std::to_string(t) + "," +
             std::to_string(run.g.seed + t) + "," + std::to_string(native[t]) + "," + std::to_string(kept[t]) + "," +
             format_double(rate) + "\n";
    }
    summary.push_back({{"architecture", arch}, {"mean_rate", mean(rates)}, {"std_rate", stddev(rates)}});
    std::cout << arch_string(arch) << ": mean pruning rate " << mean(rates) << "\n";
  }
  run.config = {{"trials", trials}, {"input_dim", o.input_dim}, {"kmin", o.kmin}, {"kmax", kmax},
                {"final_activation", !o.linear_output}};
  run.write("pruning_rate.csv", csv);
  run.write_json("pruning_rate.json", summary);
}

void exp_ratio_estimates(Run& run, const ExperimentOpts& o) {
  const std::size_t reps = o.trials.value_or(10);
  const std::size_t kmax = o.kmax.value_or(4);
  const double R = o.R.value_or(20.0);
  std::string csv = "n,rep,seed,lambda,gamma,full_count,fundamental_count,count_ratio,time_ratio\n";
  Json summary = Json::array();
  for (std::size_t n = std::max<std::size_t>(o.kmin, 2); n <= kmax; ++n) {
    const std::size_t N = o.N.value_or(static_cast<std::size_t>(std::llround(std::pow(10.0, static_cast<double>(n)))));
    std::vector<double> ratios, times;
    for (std::size_t r = 0; r < reps; ++r) {
      const std::uint64_t seed = run.g.seed + r;
      Rng rng(seed);
      const double lambda = uniform(rng, -1.0, 1.0);
      const double gamma = uniform(rng, -1.0, 1.0);
      const Network net = build_invariant(n, lambda, gamma);
      SampleConfig cfg;
      cfg.R = R;
      cfg.N = N;
      cfg.seed = seed;
      const RegionEstimate full = estimate_regions(net, cfg);
      const RegionEstimate fund = estimate_regions_fundamental(net, cfg);
      const double ratio = fund.count / full.count;
      const double tr = full.elapsed > 0 ? fund.elapsed / full.elapsed : 0.0;
      ratios.push_back(ratio);
      times.push_back(tr);
      csv += std::to_string(n) + "," + std::to_string(r) + "," + std::to_string(seed) + "," + format_double(lambda) +
             "," + format_double(gamma) + "," + format_double(full.count) + "," + format_double(fund.count) + "," +
             format_double(ratio) + "," + timing_cell(o.timing, tr) + "\n";
    }
    Json row = {{"n", n}, {"N", N}, {"mean_ratio", mean(ratios)}, {"std_ratio", stddev(ratios)}};
    if (o.timing) {
      row["mean_time_ratio"] = mean(times);
      row["std_time_ratio"] = stddev(times);
    }
    summary.push_back(row);
    std::cout << "n=" << n << ": mean estimate ratio " << mean(ratios) << " (sd " << stddev(ratios) << ")\n";
  }
  run.config = {{"reps", reps}, {"kmax", kmax}, {"R", R}};
  run.write("ratio_estimates.csv", csv);
  run.write_json("ratio_estimates.json", summary);
}

void exp_hoffman_tables(Run& run, const ExperimentOpts& o) {
  const auto configs = parse_archs(o.configs);
  const std::size_t reps = o.trials.value_or(8);
  std::string csv = "m_p,m_q,n,rep,seed,H_lower,H_exact,H_upper,lower_seconds,exact_seconds,upper_seconds\n";
  Json summary = Json::array();
  for (const auto& c : configs) {
    if (c.size() != 3) throw std::invalid_argument("--configs: expected triples [m_p,m_q,n]");
    for (std::size_t r = 0; r < reps; ++r) {
      const std::uint64_t seed = run.g.seed + r;
      const TropicalRationalMap f(random_polynomial(c[2], c[0], 2 * seed), random_polynomial(c[2], c[1], 2 * seed + 1));
      std::optional<Rational> ex;
      Rational lo = 0;
      double up = 0.0;
      double t_ex = 0.0, t_lo = 0.0, t_up = 0.0;
      for (std::size_t i = 0; i < f.numerator.size(); ++i) {
        for (std::size_t j = 0; j < f.denominator.size(); ++j) {
          const ExactMatrix A = difference_matrix(f, i, j);
          auto t0 = std::chrono::steady_clock::now();
          const HoffmanResult l = hoffman_lower(A, o.B, seed * 1000003 + i * 101 + j);
          t_lo += seconds_since(t0);
          if (l.value > lo) lo = l.value;
          t0 = std::chrono::steady_clock::now();
          const HoffmanResult u = hoffman_upper(A, {}, run.g.subset_cap);
          t_up += seconds_since(t0);
          up = std::max(up, u.approx);
          t0 = std::chrono::steady_clock::now();
          const HoffmanResult e = hoffman_exact(A, run.g.subset_cap);
          t_ex += seconds_since(t0);
          if (!ex || e.value > *ex) ex = e.value;
        }
      }
      csv += std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + "," + std::to_string(r) +
             "," + std::to_string(seed) + "," + format_double(lo.get_d()) + "," + format_double(ex->get_d()) + "," +
             format_double(up) + "," + timing_cell(o.timing, t_lo) + "," + timing_cell(o.timing, t_ex) + "," +
             timing_cell(o.timing, t_up) + "\n";
      summary.push_back({{"config", c}, {"rep", r}, {"H_lower", opt_rational(lo)}, {"H_exact", opt_rational(ex)}, {"H_upper", up}});
    }
    std::cout << arch_string(c) << ": " << reps << " instances\n";
  }
  run.config = {{"configs", o.configs}, {"reps", reps}, {"B", o.B}};
  run.write("hoffman_tables.csv", csv);
  run.write_json("hoffman_tables.json", summary);
}

void cmd_experiment(Run& run, const ExperimentOpts& o) {
  if (o.name == "table-symbolic-vs-numerical") return exp_symbolic_vs_numerical(run, o);
  if (o.name == "width-depth") return exp_width_depth(run, o);
  if (o.name == "pruning-rate") return exp_pruning_rate(run, o);
  if (o.name == "ratio-estimates") return exp_ratio_estimates(run, o);
  if (o.name == "hoffman-tables") return exp_hoffman_tables(run, o);
  throw std::invalid_argument("unknown experiment '" + o.name + "'");
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Exact tropical analysis of ReLU networks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--threads", g.threads, "Worker threads (default: TROPNET_THREADS or 1)");
  app.add_option("--subset-cap", g.subset_cap, "Max rows for subset enumeration in Hoffman computations");
  app.add_option("--out", g.out, "Output directory");

  TropicalizeOpts trop;
  auto* s_trop = app.add_subcommand("tropicalize", "Tropical rational map of a model");
  s_trop->add_option("model", trop.model, "Model JSON")->required();
  s_trop->add_flag("--prune", trop.prune, "Remove redundant monomials");

  std::string regions_model;
  auto* s_regions = app.add_subcommand("regions", "Exact linear regions of a scalar-output model");
  s_regions->add_option("model", regions_model, "Model JSON")->required();

  std::string rt_num, rt_den;
  auto* s_rt = app.add_subcommand("regions-trop", "Linear regions of p - q for given polynomials");
  s_rt->add_option("numerator", rt_num, "Numerator polynomial")->required();
  s_rt->add_option("denominator", rt_den, "Denominator polynomial (default: constant 0)");

  std::string prune_poly;
  auto* s_prune = app.add_subcommand("prune", "Remove redundant monomials of a polynomial");
  s_prune->add_option("polynomial", prune_poly, "Polynomial file")->required();

  HoffmanOpts hoff;
  auto* s_hoff = app.add_subcommand("hoffman", "Hoffman constant of a matrix, polynomial, rational map or model");
  s_hoff->add_option("input", hoff.input, "Input file")->required();
  s_hoff->add_flag("--exact", hoff.exact, "Exact value by subset enumeration");
  s_hoff->add_option("--lower", hoff.lower, "Lower bound from B random subsets");
  s_hoff->add_flag("--upper", hoff.upper, "Singular-value upper bound over all subsets");
  s_hoff->add_option("--upper-samples", hoff.upper_samples, "Upper bound from B random subsets");
  s_hoff->add_option("--at", hoff.at, "Point file for the radius bound");

  std::string radius_input, radius_at;
  std::size_t radius_samples = 10;
  auto* s_radius = app.add_subcommand("radius", "Radius bound at a point");
  s_radius->add_option("input", radius_input, "Model, polynomial or rational map")->required();
  s_radius->add_option("--at", radius_at, "Point file")->required();
  s_radius->add_option("--samples", radius_samples, "Random subsets when the cap is exceeded");

  SampleOpts samp;
  auto* s_sample = app.add_subcommand("sample", "Numerical region estimate");
  s_sample->add_option("model", samp.model, "Model JSON")->required();
  s_sample->add_option("-R", samp.R, "Box radius");
  s_sample->add_option("-N", samp.N, "Number of points");
  s_sample->add_flag("--fundamental", samp.fundamental, "Sample the sorted cone and weight by multiplicity");
  s_sample->add_flag("--grid", samp.grid, "Regular grid instead of uniform points");
  s_sample->add_flag("--timing", samp.timing, "Write elapsed time into the CSV");

  ExperimentOpts ex;
  auto* s_exp = app.add_subcommand("experiment", "Run a batch experiment");
  s_exp->add_option("name", ex.name, "table-symbolic-vs-numerical | width-depth | pruning-rate | ratio-estimates | hoffman-tables")
      ->required();
  s_exp->add_option("--archs", ex.archs, "Architectures, e.g. \"[6,2,1] [5,3,1]\"");
  s_exp->add_option("--trials", ex.trials, "Networks or repetitions per setting");
  s_exp->add_option("-N", ex.N, "Sample points");
  s_exp->add_option("-R", ex.R, "Box radius");
  s_exp->add_flag("--linear-output", ex.linear_output, "Random networks without the final ReLU");
  s_exp->add_flag("--no-bias", ex.no_bias, "Random networks with zero biases");
  s_exp->add_option("--input-dim", ex.input_dim, "Input dimension (width-depth, pruning-rate)");
  s_exp->add_option("--kmin", ex.kmin, "Smallest width or input size");
  s_exp->add_option("--kmax", ex.kmax, "Largest width or input size");
  s_exp->add_option("-B", ex.B, "Random subsets for Hoffman lower bounds");
  s_exp->add_option("--configs", ex.configs, "Hoffman configurations [m_p,m_q,n] ...");
  s_exp->add_flag("--timing", ex.timing, "Write elapsed times into the CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::vector<std::string> args(argv, argv + argc);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    set_thread_count(g.threads);
    fs::create_directories(g.out);
    Run r{g, app.get_subcommands().front()->get_name(), Json::object(), {}};
    if (*s_trop) cmd_tropicalize(r, trop);
    if (*s_regions) cmd_regions(r, regions_model);
    if (*s_rt) cmd_regions_trop(r, rt_num, rt_den);
    if (*s_prune) cmd_prune(r, prune_poly);
    if (*s_hoff) cmd_hoffman(r, hoff);
    if (*s_radius) cmd_radius(r, radius_input, radius_at, radius_samples);
    if (*s_sample) cmd_sample(r, samp);
    if (*s_exp) cmd_experiment(r, ex);
    write_manifest(r, args, seconds_since(t0));
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace tropnet::cli
