#include "gsample/gsample.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <new>
#include <string>
#include <unordered_set>

#include "gsample/divergence.hpp"
#include "gsample/edge_io.hpp"
#include "gsample/error.hpp"
#include "gsample/graph_stats.hpp"
#include "gsample/harness.hpp"
#include "gsample/relational.hpp"
#include "gsample/samplers.hpp"

struct gs_graph {
  gsample::Graph graph;
};

struct gs_sample {
  gs_graph g;
  gsample::SampleMetadata meta;
  std::string json;
};

struct gs_profile {
  gsample::StatisticProfile p;
};

struct gs_report {
  gsample::DistanceReport r;
};

namespace {

thread_local std::string last_error;

gs_status to_status(gsample::ErrorCode c) {
  return static_cast<gs_status>(static_cast<int>(c));
}

template <typename F>
gs_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return GS_OK;
  } catch (const gsample::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GS_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw gsample::InvalidArgument(std::string(what) + " must not be null");
}

gsample::MethodParams to_params(const gs_sample_params* sp) {
  gs_sample_params def;
  gs_sample_params_init(&def);
  const gs_sample_params& s = sp ? *sp : def;
  gsample::MethodParams p;
  p.spec.phi = s.phi;
  if (s.nodes > 0) p.spec.nodes = s.nodes;
  p.spec.seed = s.seed;
  p.spec.burn_probability = s.burn_probability;
  p.window = s.window;
  p.reservoir_edges = s.reservoir_edges;
  p.stream_seed = s.stream_seed;
  p.order = s.keyed_hash_order ? gsample::StreamOrder::kKeyedHash
                               : gsample::StreamOrder::kShuffle;
  return p;
}

gs_sample* wrap(gsample::SampledSubgraph s) {
  auto* out = new gs_sample{gs_graph{std::move(s.graph)}, std::move(s.meta), {}};
  out->json = gsample::metadata_to_json({out->g.graph, out->meta});
  return out;
}

}  // namespace

extern "C" {

const char* gs_last_error(void) { return last_error.c_str(); }

const char* gs_status_name(gs_status status) {
  switch (status) {
    case GS_OK: return "ok";
    case GS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GS_ERR_IO: return "i/o error";
    case GS_ERR_PARSE: return "parse error";
    case GS_ERR_EMPTY_GRAPH: return "empty graph";
    case GS_ERR_UNKNOWN_NODE: return "unknown node";
    case GS_ERR_UNSUPPORTED: return "unsupported";
    case GS_ERR_CONVERGENCE: return "no convergence";
    case GS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gs_version(void) { return "1.0.0"; }

// ---- graphs ---------------------------------------------------------------

gs_status gs_graph_load(const char* path, int skip_self_loops, int dedupe,
                        gs_graph** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    gsample::LoadOptions opts;
    opts.skip_self_loops = skip_self_loops != 0;
    opts.dedupe = dedupe != 0;
    *out = new gs_graph{gsample::load_edge_list(path, opts)};
  });
}

gs_status gs_graph_load_sample(const char* path, gs_graph** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new gs_graph{gsample::load_graph_with_sidecar(path)};
  });
}

gs_status gs_graph_from_edges(const int64_t* u, const int64_t* v, size_t m,
                              gs_graph** out) {
  return guard([&] {
    require(out, "out");
    if (m > 0) {
      require(u, "u");
      require(v, "v");
    }
    std::vector<gsample::Edge> edges(m);
    for (size_t i = 0; i < m; ++i) edges[i] = {u[i], v[i]};
    *out = new gs_graph{gsample::Graph::from_edges(edges)};
  });
}

void gs_graph_free(gs_graph* g) { delete g; }

size_t gs_graph_num_nodes(const gs_graph* g) { return g ? g->graph.num_nodes() : 0; }
size_t gs_graph_num_edges(const gs_graph* g) { return g ? g->graph.num_edges() : 0; }

gs_status gs_graph_write(const gs_graph* g, const char* path) {
  return guard([&] {
    require(g, "graph");
    require(path, "path");
    gsample::write_edge_list(std::filesystem::path(path), g->graph.edges());
  });
}

// ---- sampling -------------------------------------------------------------

void gs_sample_params_init(gs_sample_params* p) {
  if (!p) return;
  p->phi = 0.2;
  p->nodes = 0;
  p->seed = 1;
  p->burn_probability = 0.7;
  p->window = 100;
  p->reservoir_edges = 0;
  p->stream_seed = 1;
  p->keyed_hash_order = 0;
}

size_t gs_method_count(void) { return gsample::method_names().size(); }

const char* gs_method_name(size_t i) {
  const auto& n = gsample::method_names();
  return i < n.size() ? n[i].c_str() : nullptr;
}

gs_status gs_sample_run(const gs_graph* g, const char* method,
                        const gs_sample_params* params, gs_sample** out) {
  return guard([&] {
    require(g, "graph");
    require(method, "method");
    require(out, "out");
    *out = wrap(gsample::run_method(g->graph, method, to_params(params)));
  });
}

gs_status gs_sample_run_file_stream(const char* path, const char* method,
                                    const gs_sample_params* params, gs_sample** out) {
  return guard([&] {
    require(path, "path");
    require(method, "method");
    require(out, "out");
    if (!gsample::is_stream_method(method)) {
      throw gsample::InvalidArgument(std::string("'") + method +
                                     "' is not a stream method");
    }
    std::ifstream in(path);
    if (!in) throw gsample::IoError(std::string("cannot open edge list ") + path);
    auto edges = gsample::parse_edge_list(in);
    std::unordered_set<gsample::Edge, gsample::EdgeHasher> seen;
    std::erase_if(edges, [&](const gsample::Edge& e) { return !seen.insert(e).second; });
    if (edges.empty()) throw gsample::EmptyGraphError(std::string(path) + " has no edges");
    const auto n = gsample::Graph::from_edges(edges).num_nodes();
    auto stream = gsample::EdgeStream::in_order(std::move(edges));
    *out = wrap(gsample::run_stream_method(stream, n, method, to_params(params)));
  });
}

const gs_graph* gs_sample_graph(const gs_sample* s) { return s ? &s->g : nullptr; }

const char* gs_sample_metadata_json(const gs_sample* s) {
  return s ? s->json.c_str() : nullptr;
}

gs_status gs_sample_write(const gs_sample* s, const char* path) {
  return guard([&] {
    require(s, "sample");
    require(path, "path");
    gsample::write_sample({s->g.graph, s->meta}, path);
  });
}

void gs_sample_free(gs_sample* s) { delete s; }

gs_status gs_permute_write(const gs_graph* g, uint64_t seed, int keyed_hash_order,
                           const char* path) {
  return guard([&] {
    require(g, "graph");
    require(path, "path");
    const auto stream = gsample::EdgeStream::permuted(
        g->graph, seed,
        keyed_hash_order ? gsample::StreamOrder::kKeyedHash : gsample::StreamOrder::kShuffle);
    gsample::write_edge_list(std::filesystem::path(path), stream.order());
  });
}

// ---- statistics -----------------------------------------------------------

void gs_profile_params_init(gs_profile_params* p) {
  if (!p) return;
  const gsample::ProfileOptions d;
  p->path_exact_limit = d.path.exact_limit;
  p->path_sources = d.path.sources;
  p->eigenvalues = d.eigen.k;
  p->network_values = d.network_values;
  p->eigen_tol = d.eigen.tol;
}

gs_status gs_profile_compute(const gs_graph* g, const gs_profile_params* params,
                             gs_profile** out) {
  return guard([&] {
    require(g, "graph");
    require(out, "out");
    gsample::ProfileOptions opts;
    if (params) {
      opts.path.exact_limit = params->path_exact_limit;
      opts.path.sources = params->path_sources;
      opts.eigen.k = params->eigenvalues;
      opts.network_values = params->network_values;
      opts.eigen.tol = params->eigen_tol;
    }
    *out = new gs_profile{gsample::compute_profile(g->graph, opts)};
  });
}

gs_status gs_profile_write(const gs_profile* p, const char* dir) {
  return guard([&] {
    require(p, "profile");
    require(dir, "dir");
    gsample::write_profile(p->p, dir);
  });
}

gs_status gs_profile_read(const char* dir, gs_profile** out) {
  return guard([&] {
    require(dir, "dir");
    require(out, "out");
    *out = new gs_profile{gsample::read_profile(dir)};
  });
}

void gs_profile_free(gs_profile* p) { delete p; }

uint32_t gs_profile_max_core(const gs_profile* p) { return p ? p->p.kcore.max_core : 0; }

double gs_profile_clustering_mean(const gs_profile* p) {
  return p ? p->p.clustering.mean : std::numeric_limits<double>::quiet_NaN();
}

size_t gs_profile_eigenvalues(const gs_profile* p, double* buf, size_t cap) {
  if (!p) return 0;
  const auto& v = p->p.eigenvalues;
  for (size_t i = 0; i < v.size() && i < cap && buf; ++i) buf[i] = v[i];
  return v.size();
}

// ---- comparison -----------------------------------------------------------

gs_status gs_compare(const gs_profile* truth, const gs_profile* sample, double alpha,
                     gs_report** out) {
  return guard([&] {
    require(truth, "truth");
    require(sample, "sample");
    require(out, "out");
    *out = new gs_report{gsample::compare_profiles(truth->p, sample->p, alpha)};
  });
}

double gs_report_value(const gs_report* r, const char* statistic, const char* measure) {
  if (!r || !statistic || !measure) return std::numeric_limits<double>::quiet_NaN();
  return r->r.value(statistic, measure);
}

double gs_report_mean_ks(const gs_report* r) {
  return r ? r->r.mean_ks() : std::numeric_limits<double>::quiet_NaN();
}

gs_status gs_report_write(const gs_report* r, const char* path) {
  return guard([&] {
    require(r, "report");
    require(path, "path");
    std::ofstream out(path);
    if (!out) throw gsample::IoError(std::string("cannot write ") + path);
    gsample::write_report(out, r->r);
  });
}

void gs_report_free(gs_report* r) { delete r; }

// ---- experiments ----------------------------------------------------------

gs_status gs_eval_run(const char* config_path, const char* out_dir, unsigned jobs) {
  return guard([&] {
    require(config_path, "config path");
    require(out_dir, "output directory");
    auto cfg = gsample::load_config(config_path);
    if (jobs) cfg.jobs = jobs;
    gsample::write_experiment(gsample::run_experiment(cfg), out_dir);
  });
}

void gs_classify_params_init(gs_classify_params* p) {
  if (!p) return;
  p->labeled_fracs = nullptr;
  p->num_labeled_fracs = 0;
  p->folds = 5;
  p->trials = 1;
  p->seed = 1;
}

gs_status gs_classify_run(const gs_graph* g, const char* labels_path, const char* method,
                          const gs_sample_params* sample, const gs_classify_params* params,
                          const char* out_path) {
  return guard([&] {
    require(g, "graph");
    require(labels_path, "labels path");
    require(method, "method");
    require(out_path, "output path");
    gs_classify_params def;
    gs_classify_params_init(&def);
    const gs_classify_params& cp = params ? *params : def;

    const auto lg = gsample::make_labeled_graph(g->graph, gsample::load_labels(labels_path));
    gsample::CvConfig cfg;
    cfg.method = method;
    cfg.params = to_params(sample);
    if (cp.labeled_fracs && cp.num_labeled_fracs) {
      cfg.labeled_fracs.assign(cp.labeled_fracs, cp.labeled_fracs + cp.num_labeled_fracs);
    }
    cfg.folds = cp.folds;
    cfg.trials = cp.trials;
    cfg.seed = cp.seed;
    const auto rows = gsample::cv_experiment(lg, cfg);

    std::ofstream out(out_path);
    if (!out) throw gsample::IoError(std::string("cannot write ") + out_path);
    gsample::write_auc_table(out, rows);

    const std::string summary_path = std::string(out_path) + ".summary.csv";
    std::ofstream sum(summary_path);
    if (!sum) throw gsample::IoError("cannot write " + summary_path);
    sum.precision(10);
    sum << "graph,labeled_frac,mean_auc,runs\n";
    for (const auto& s : gsample::summarize_auc(rows)) {
      sum << s.graph << ',' << s.labeled_frac << ',' << s.mean_auc << ',' << s.count << '\n';
    }
  });
}

}  // extern "C"
