// Dataset acceptance suite. Needs the CondMAT and HepPH edge lists; each
// criterion prints SKIP when a file is missing. Exit 77 when nothing ran.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsample/edge_io.hpp"
#include "gsample/harness.hpp"

using namespace gsample;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;
int ran = 0;

template <typename F>
void criterion(int id, const char* name, bool available, F&& body) {
  if (!available) {
    std::printf("SKIP  %2d  %-28s dataset not found\n", id, name);
    std::fflush(stdout);
    return;
  }
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s  %2d  %-28s %s  (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), secs);
  std::fflush(stdout);
  ++ran;
  failures += !o.pass;
}

std::optional<std::filesystem::path> locate(const char* env, const char* fallback) {
  if (const char* p = std::getenv(env); p && *p) {
    if (std::filesystem::exists(p)) return std::filesystem::path(p);
    return std::nullopt;
  }
  if (std::filesystem::exists(fallback)) return std::filesystem::path(fallback);
  return std::nullopt;
}

/// Per-method summaries over trials, keyed by method then phi.
struct Summary {
  double max_core = 0.0;
  std::uint32_t max_core_hi = 0;
  double isolated = 0.0;
  double mean_ks = 0.0;
  std::size_t count = 0;
};

struct Run {
  std::map<std::string, std::map<double, Summary>> by;
  const Summary& at(const std::string& m, double phi) const { return by.at(m).at(phi); }
  /// Mean KS averaged over the two sample sizes.
  double ks(const std::string& m) const { return (at(m, 0.2).mean_ks + at(m, 0.3).mean_ks) / 2; }
};

Run run(const std::string& name, const std::filesystem::path& path) {
  std::fprintf(stderr, "loading %s from %s\n", name.c_str(), path.c_str());
  ExperimentConfig cfg;
  cfg.datasets.push_back({name, {}, std::make_shared<const Graph>(load_edge_list(path))});
  cfg.methods = {"ns", "es", "esi", "ffs", "pies", "pies-min", "stream-ns", "stream-bfs"};
  cfg.phis = {0.2, 0.3};
  cfg.trials = 10;
  const auto result = run_experiment(cfg);

  Run r;
  for (const auto& s : result.samples) {
    if (!s.error.empty()) throw std::runtime_error(s.method + ": " + s.error);
    Summary& x = r.by[s.method][s.phi];
    x.max_core += s.max_core;
    x.max_core_hi = std::max(x.max_core_hi, s.max_core);
    x.isolated += s.isolated_fraction;
    x.mean_ks += s.mean_ks;
    ++x.count;
  }
  for (auto& [m, per] : r.by)
    for (auto& [phi, x] : per) {
      const double n = static_cast<double>(x.count);
      x.max_core /= n, x.isolated /= n, x.mean_ks /= n;
    }
  return r;
}

bool within(double x, double lo, double hi) { return x >= lo && x <= hi; }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

}  // namespace

int main() {
  const auto condmat_path = locate("GSAMPLE_CONDMAT", "data/ca-CondMat.txt");
  const auto hepph_path = locate("GSAMPLE_HEPPH", "data/cit-HepPh.txt");
  const bool both = condmat_path && hepph_path;

  std::optional<Run> condmat, hepph;
  if (condmat_path) condmat = run("condmat", *condmat_path);
  if (hepph_path) hepph = run("hepph", *hepph_path);

  criterion(10, "static max-core", both, [&]() -> Outcome {
    bool ok = true;
    std::string detail;
    const std::pair<const char*, const Run*> sets[] = {{"condmat", &*condmat},
                                                       {"hepph", &*hepph}};
    for (const auto& [name, r] : sets) {
      const double esi = r->at("esi", 0.2).max_core, ns = r->at("ns", 0.2).max_core;
      const double es = r->at("es", 0.2).max_core, ffs = r->at("ffs", 0.2).max_core;
      const double target = std::string(name) == "condmat" ? 20.0 : 23.0;
      ok = ok && within(esi, target - 2, target + 2) && within(ns, 6, 9) &&
           within(es, 1, 3) && within(ffs, 3, 7);
      detail += fmt("%s%s esi %.1f ns %.1f es %.1f ffs %.1f", detail.empty() ? "" : "; ",
                    name, esi, ns, es, ffs);
    }
    return {ok, detail};
  });

  criterion(11, "stream max-core", condmat.has_value(), [&]() -> Outcome {
    const double pies = condmat->at("pies", 0.2).max_core;
    const auto bfs_hi = condmat->at("stream-bfs", 0.2).max_core_hi;
    const double bfs = condmat->at("stream-bfs", 0.2).max_core;
    return {within(pies, 5, 9) && bfs_hi == 1 && bfs == 1.0,
            fmt("condmat pies %.1f, bfs mean %.2f max %u", pies, bfs, bfs_hi)};
  });

  criterion(12, "isolated-node fraction", condmat.has_value(), [&]() -> Outcome {
    const double pies = condmat->at("pies", 0.2).isolated;
    const double ns = condmat->at("stream-ns", 0.2).isolated;
    return {within(pies, 0.09, 0.19) && within(ns, 0.31, 0.41),
            fmt("condmat pies %.3f, stream-ns %.3f", pies, ns)};
  });

  criterion(13, "PIES(MIN) on dense graphs", both, [&]() -> Outcome {
    const double c_min = condmat->ks("pies-min"), c = condmat->ks("pies");
    const double h_min = hepph->ks("pies-min"), h = hepph->ks("pies");
    return {c_min < c && h_min < h,
            fmt("mean KS condmat pies-min %.4f pies %.4f; hepph pies-min %.4f pies %.4f", c_min,
                c, h_min, h)};
  });

  criterion(14, "ES-i static ordering", both, [&]() -> Outcome {
    bool ok = true;
    std::string detail;
    const std::pair<const char*, const Run*> sets[] = {{"condmat", &*condmat},
                                                       {"hepph", &*hepph}};
    for (const auto& [name, r] : sets) {
      for (double phi : {0.2, 0.3}) {
        const double esi = r->at("esi", phi).mean_ks;
        const double ns = r->at("ns", phi).mean_ks, es = r->at("es", phi).mean_ks;
        const double ffs = r->at("ffs", phi).mean_ks;
        ok = ok && esi < ns && esi < es && esi < ffs;
        detail += fmt("%s%s@%.0f%% esi %.3f ns %.3f es %.3f ffs %.3f",
                      detail.empty() ? "" : "; ", name, phi * 100, esi, ns, es, ffs);
      }
    }
    return {ok, detail};
  });

  if (ran == 0) {
    std::printf("SKIP: no dataset available (set GSAMPLE_CONDMAT and GSAMPLE_HEPPH)\n");
    return 77;
  }
  std::printf("%s: %d of %d criteria failed\n", failures ? "FAIL" : "PASS", failures, ran);
  return failures ? 1 : 0;
}
