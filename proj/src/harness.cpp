#include "gsample/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gsample/edge_io.hpp"
#include "gsample/error.hpp"
#include "gsample/hashing.hpp"

namespace gsample {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

double parse_double(const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ParseError("line " + std::to_string(line) + ": expected a number, got '" + v + "'",
                   line);
}

std::uint64_t parse_uint(const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    const auto x = std::stoull(v, &used);
    if (used == v.size() && !v.starts_with('-')) return x;
  } catch (const std::exception&) {
  }
  throw ParseError("line " + std::to_string(line) + ": expected a non-negative integer, got '" +
                       v + "'",
                   line);
}

bool parse_bool(const std::string& v, std::size_t line) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ParseError("line " + std::to_string(line) + ": expected true or false, got '" + v + "'",
                   line);
}

const std::vector<std::string> kStatistics = {"degree",     "path_length", "clustering",
                                              "kcore",      "eigenvalues", "network_values"};
const std::vector<std::string> kMeasures = {"ks", "sd", "l1", "l2"};

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::uint64_t name_salt(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base) {
  ExperimentConfig cfg;
  std::string raw;
  std::size_t line = 0;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base.empty() ? base / path : path;
  };
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(std::string_view(raw).substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line) + ": expected key = value", line);
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));

    if (key.starts_with("dataset.")) {
      cfg.datasets.push_back({key.substr(8), resolve(value), nullptr});
    } else if (key == "dataset" || key == "datasets") {
      for (const auto& p : split_list(value)) {
        cfg.datasets.push_back({std::filesystem::path(p).stem().string(), resolve(p), nullptr});
      }
    } else if (key == "methods") {
      cfg.methods = split_list(value);
      for (const auto& m : cfg.methods) {
        if (!is_method(m)) {
          throw ParseError("line " + std::to_string(line) + ": unknown method '" + m + "'",
                           line);
        }
      }
    } else if (key == "phis" || key == "phi") {
      cfg.phis.clear();
      for (const auto& p : split_list(value)) cfg.phis.push_back(parse_double(p, line));
    } else if (key == "trials") {
      cfg.trials = parse_uint(value, line);
    } else if (key == "seed" || key == "base_seed") {
      cfg.base_seed = parse_uint(value, line);
    } else if (key == "permute") {
      cfg.permute = parse_bool(value, line);
    } else if (key == "statistics") {
      cfg.statistics = split_list(value);
      for (const auto& s : cfg.statistics) {
        if (!contains(kStatistics, s)) {
          throw ParseError("line " + std::to_string(line) + ": unknown statistic '" + s + "'",
                           line);
        }
      }
    } else if (key == "measures") {
      cfg.measures = split_list(value);
      for (const auto& s : cfg.measures) {
        if (!contains(kMeasures, s)) {
          throw ParseError("line " + std::to_string(line) + ": unknown measure '" + s + "'",
                           line);
        }
      }
    } else if (key == "burn_probability" || key == "pf") {
      cfg.burn_probability = parse_double(value, line);
    } else if (key == "window") {
      cfg.window = parse_uint(value, line);
    } else if (key == "alpha") {
      cfg.alpha = parse_double(value, line);
    } else if (key == "snapshot_phi") {
      cfg.snapshot_phi = parse_double(value, line);
    } else if (key == "jobs") {
      cfg.jobs = static_cast<unsigned>(parse_uint(value, line));
    } else if (key == "path_exact_limit") {
      cfg.profile.path.exact_limit = parse_uint(value, line);
    } else if (key == "path_sources") {
      cfg.profile.path.sources = parse_uint(value, line);
    } else {
      throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'", line);
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  return parse_config(in, path.parent_path());
}

// ---------------------------------------------------------------------------

const StatisticProfile& ProfileCache::get(const std::string& key, const Graph& g,
                                          const ProfileOptions& opts) {
  std::lock_guard lock(mu_);
  auto it = profiles_.find(key);
  if (it != profiles_.end()) {
    ++hits_;
    return *it->second;
  }
  ++computations_;
  auto p = std::make_unique<StatisticProfile>(compute_profile(g, opts));
  return *profiles_.emplace(key, std::move(p)).first->second;
}

std::size_t ProfileCache::computations() const {
  std::lock_guard lock(mu_);
  return computations_;
}

std::size_t ProfileCache::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

// ---------------------------------------------------------------------------

namespace {

struct Unit {
  std::size_t dataset;
  std::size_t method;
  std::size_t phi;
  std::size_t trial;
};

struct UnitResult {
  std::vector<ResultRow> rows;
  SampleRow sample;
  std::optional<StatisticProfile> profile;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.datasets.empty()) throw InvalidArgument("experiment has no datasets");
  if (cfg.methods.empty()) throw InvalidArgument("experiment has no methods");
  for (const auto& m : cfg.methods) {
    if (!is_method(m)) throw InvalidArgument("unknown method '" + m + "'");
  }

  std::vector<std::shared_ptr<const Graph>> graphs;
  for (const auto& d : cfg.datasets) {
    graphs.push_back(d.graph ? d.graph
                             : std::make_shared<const Graph>(load_edge_list(d.path)));
  }

  ProfileCache cache;
  ExperimentResult result;
  result.snapshot_phi = cfg.snapshot_phi;
  for (std::size_t d = 0; d < graphs.size(); ++d) {
    result.snapshot[cfg.datasets[d].name]["true"].push_back(
        cache.get(cfg.datasets[d].name, *graphs[d], cfg.profile));
  }

  std::vector<Unit> units;
  for (std::size_t d = 0; d < graphs.size(); ++d)
    for (std::size_t m = 0; m < cfg.methods.size(); ++m)
      for (std::size_t p = 0; p < cfg.phis.size(); ++p)
        for (std::size_t t = 0; t < cfg.trials; ++t) units.push_back({d, m, p, t});

  std::vector<UnitResult> out(units.size());
  auto run_unit = [&](std::size_t idx) {
    const Unit& u = units[idx];
    const auto& ds = cfg.datasets[u.dataset];
    const Graph& g = *graphs[u.dataset];
    const std::string& method = cfg.methods[u.method];
    const double phi = cfg.phis[u.phi];
    const std::uint64_t trial_seed = cfg.base_seed + u.trial;

    UnitResult& r = out[idx];
    SampleRow& s = r.sample;
    s.dataset = ds.name;
    s.method = method;
    s.phi = phi;
    s.trial = u.trial;
    s.seed = trial_seed;
    try {
      MethodParams params;
      params.spec.phi = phi;
      params.spec.seed = derive_seed(trial_seed, name_salt(method));
      params.spec.burn_probability = cfg.burn_probability;
      params.window = cfg.window;
      params.stream_seed = trial_seed;
      SampledSubgraph sample;
      if (is_stream_method(method) && !cfg.permute) {
        auto stream = EdgeStream::in_order({g.edges().begin(), g.edges().end()});
        sample = run_stream_method(stream, g.num_nodes(), method, params);
      } else {
        sample = run_method(g, method, params);
      }
      const StatisticProfile& truth = cache.get(ds.name, g, cfg.profile);
      StatisticProfile prof = compute_profile(sample.graph, cfg.profile);
      const DistanceReport rep = compare_profiles(truth, prof, cfg.alpha);

      s.nodes = sample.graph.num_nodes();
      s.edges = sample.graph.num_edges();
      std::size_t isolated = 0;
      for (NodeIndex i = 0; i < sample.graph.num_nodes(); ++i) {
        isolated += sample.graph.degree(i) == 0;
      }
      s.isolated_fraction = static_cast<double>(isolated) / static_cast<double>(s.nodes);
      s.max_core = prof.kcore.max_core;
      s.mean_ks = rep.mean_ks();
      for (const auto& row : rep.rows) {
        if (!contains(cfg.statistics, row.statistic) || !contains(cfg.measures, row.measure)) {
          continue;
        }
        r.rows.push_back({ds.name, method, phi, u.trial, row.statistic, row.measure, row.value});
      }
      if (std::abs(phi - cfg.snapshot_phi) < 1e-9) r.profile = std::move(prof);
    } catch (const std::exception& e) {
      s.error = e.what();
      s.mean_ks = std::numeric_limits<double>::quiet_NaN();
    }
  };

  const unsigned jobs = std::max(1u, cfg.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < units.size(); ++i) run_unit(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < units.size();) run_unit(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < units.size(); ++i) {
    auto& r = out[i];
    result.rows.insert(result.rows.end(), r.rows.begin(), r.rows.end());
    result.samples.push_back(std::move(r.sample));
    if (r.profile) {
      result.snapshot[cfg.datasets[units[i].dataset].name][cfg.methods[units[i].method]]
          .push_back(std::move(*r.profile));
    }
  }
  if (!result.rows.empty()) result.means = mean_rows(result.rows);
  result.profile_computations = cache.computations();
  result.profile_cache_hits = cache.hits();
  return result;
}

std::vector<MeanRow> mean_rows(std::span<const ResultRow> rows) {
  if (rows.empty()) throw InvalidArgument("no result rows to summarize");
  std::vector<MeanRow> out;
  std::map<std::tuple<std::string, std::string, double, std::string, std::string>,
           std::size_t>
      slot;
  for (const auto& r : rows) {
    auto key = std::make_tuple(r.dataset, r.method, r.phi, r.statistic, r.measure);
    auto it = slot.find(key);
    if (it == slot.end()) {
      it = slot.emplace(key, out.size()).first;
      out.push_back({r.dataset, r.method, r.phi, r.statistic, r.measure, 0.0, 0});
    }
    if (std::isnan(r.value)) continue;
    auto& m = out[it->second];
    m.mean += r.value;
    ++m.count;
  }
  for (auto& m : out) {
    m.mean = m.count ? m.mean / static_cast<double>(m.count)
                     : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

std::vector<MeanRow> aggregate_across_datasets(std::span<const MeanRow> means) {
  if (means.empty()) throw InvalidArgument("no means to aggregate");
  std::vector<MeanRow> out;
  std::map<std::tuple<std::string, double, std::string, std::string>, std::size_t> slot;
  for (const auto& r : means) {
    auto key = std::make_tuple(r.method, r.phi, r.statistic, r.measure);
    auto it = slot.find(key);
    if (it == slot.end()) {
      it = slot.emplace(key, out.size()).first;
      out.push_back({"", r.method, r.phi, r.statistic, r.measure, 0.0, 0});
    }
    if (std::isnan(r.mean)) continue;
    auto& m = out[it->second];
    m.mean += r.mean;
    ++m.count;
  }
  for (auto& m : out) {
    m.mean = m.count ? m.mean / static_cast<double>(m.count)
                     : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

namespace {

const Distribution& pick(const StatisticProfile& p, const std::string& statistic) {
  if (statistic == "degree") return p.degree;
  if (statistic == "path_length") return p.path_length.pmf;
  if (statistic == "clustering") return p.clustering.pmf;
  if (statistic == "kcore") return p.kcore.pmf;
  throw InvalidArgument("not a distribution statistic: " + statistic);
}

std::vector<double> averaged_vector(std::span<const StatisticProfile> profiles,
                                    bool eigen) {
  std::vector<double> sum;
  std::vector<std::size_t> count;
  for (const auto& p : profiles) {
    const auto& v = eigen ? p.eigenvalues : p.network_values;
    if (v.size() > sum.size()) {
      sum.resize(v.size(), 0.0);
      count.resize(v.size(), 0);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      sum[i] += v[i];
      ++count[i];
    }
  }
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] /= static_cast<double>(count[i]);
  return sum;
}

}  // namespace

std::vector<CurvePoint> averaged_curve(std::span<const StatisticProfile> profiles,
                                       const std::string& statistic) {
  Distribution avg;
  std::size_t used = 0;
  for (const auto& p : profiles) {
    const auto& d = pick(p, statistic);
    if (d.empty()) continue;
    for (const auto& [k, v] : d) avg[k] += v;
    ++used;
  }
  for (auto& [k, v] : avg) v /= static_cast<double>(used);
  std::vector<CurvePoint> out;
  for (const auto& [k, f] : cdf(avg)) out.push_back({k, f, 1.0 - f});
  return out;
}

void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "plot", ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  auto open = [](const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw IoError("cannot write " + p.string());
    out << std::setprecision(10);
    return out;
  };

  {
    auto out = open(dir / "raw.csv");
    out << "dataset,method,phi,trial,statistic,measure,value\n";
    for (const auto& r : result.rows) {
      out << r.dataset << ',' << r.method << ',' << r.phi << ',' << r.trial << ','
          << r.statistic << ',' << r.measure << ',' << r.value << '\n';
    }
  }
  {
    auto out = open(dir / "samples.csv");
    out << "dataset,method,phi,trial,seed,nodes,edges,isolated_fraction,max_core,mean_ks,"
           "error\n";
    for (const auto& s : result.samples) {
      std::string err = s.error;
      std::replace(err.begin(), err.end(), ',', ';');
      out << s.dataset << ',' << s.method << ',' << s.phi << ',' << s.trial << ','
          << s.seed << ',' << s.nodes << ',' << s.edges << ',' << s.isolated_fraction
          << ',' << s.max_core << ',' << s.mean_ks << ',' << err << '\n';
    }
  }
  {
    auto out = open(dir / "means.csv");
    out << "dataset,method,phi,statistic,measure,mean,trials\n";
    for (const auto& m : result.means) {
      out << m.dataset << ',' << m.method << ',' << m.phi << ',' << m.statistic << ','
          << m.measure << ',' << m.mean << ',' << m.count << '\n';
    }
  }
  {
    auto out = open(dir / "aggregate.csv");
    out << "method,phi,statistic,measure,mean,datasets\n";
    const auto agg = result.means.empty() ? std::vector<MeanRow>{}
                                          : aggregate_across_datasets(result.means);
    for (const auto& m : agg) {
      out << m.method << ',' << m.phi << ',' << m.statistic << ',' << m.measure << ','
          << m.mean << ',' << m.count << '\n';
    }
  }
  {
    nlohmann::json j;
    j["profile_computations"] = result.profile_computations;
    j["profile_cache_hits"] = result.profile_cache_hits;
    j["snapshot_phi"] = result.snapshot_phi;
    j["rows"] = result.rows.size();
    j["samples"] = result.samples.size();
    std::size_t failed = 0;
    for (const auto& s : result.samples) failed += !s.error.empty();
    j["failed_samples"] = failed;
    auto out = open(dir / "run.json");
    out << j.dump(2) << '\n';
  }

  for (const auto& [dataset, by_method] : result.snapshot) {
    const auto pdir = dir / "plot" / dataset;
    std::filesystem::create_directories(pdir, ec);
    if (ec) throw IoError("cannot create " + pdir.string() + ": " + ec.message());
    for (const char* stat : kDistributionStats) {
      auto out = open(pdir / (std::string(stat) + ".csv"));
      out << "series,x,cdf,ccdf\n";
      for (const auto& [method, profiles] : by_method) {
        for (const auto& pt : averaged_curve(profiles, stat)) {
          out << method << ',' << pt.x << ',' << pt.cdf << ',' << pt.ccdf << '\n';
        }
      }
    }
    for (bool eigen : {true, false}) {
      auto out = open(pdir / (eigen ? "eigenvalues.csv" : "network_values.csv"));
      out << "series,rank,value\n";
      for (const auto& [method, profiles] : by_method) {
        const auto v = averaged_vector(profiles, eigen);
        for (std::size_t i = 0; i < v.size(); ++i) {
          out << method << ',' << i + 1 << ',' << v[i] << '\n';
        }
      }
    }
  }
}

}  // namespace gsample
